//! Integer bookkeeping for the regular block of category O of `gl3^taus`:
//! Jordan–Hölder contents in the Grothendieck group, cycle classes of the
//! patched sheaves attached to Vermas and simples, and the multiplicity
//! formulas that come out of the very critical case.
//!
//! For factors of rank at most two every Verma has multiplicity-one
//! Jordan–Hölder content, `[M(w·λ) : L(w′·λ)] = 1` iff `w ≤ w′`; this is the
//! only representation-theoretic input.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CatOError;
use crate::models::{FlagRelation, PdRPointSpec};
use crate::weyl::{Perm, WeylElem};

/// Largest `n` for which the multiplicity-one content is valid.
pub const MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KBasis {
    /// Classes `[L(w·λ)]`.
    Simple,
    /// Classes `[M(w·λ)]`.
    Verma,
}

/// An element of the Grothendieck group of the block, in one of the two
/// bases indexed by `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    n: usize,
    taus: usize,
    basis: KBasis,
    coeffs: BTreeMap<WeylElem, i64>,
}

fn check_n(n: usize) -> Result<(), CatOError> {
    if n > MAX_N {
        return Err(CatOError::Unsupported(format!(
            "multiplicity-one contents hold for n <= {MAX_N}, got n = {n}"
        )));
    }
    Ok(())
}

impl KClass {
    pub fn zero(n: usize, taus: usize, basis: KBasis) -> Self {
        KClass { n, taus, basis, coeffs: BTreeMap::new() }
    }

    pub fn basis_element(w: &WeylElem, basis: KBasis) -> Self {
        let mut k = KClass::zero(w.n(), w.taus(), basis);
        k.add_term(w, 1);
        k
    }

    pub fn basis(&self) -> KBasis {
        self.basis
    }

    pub fn add_term(&mut self, w: &WeylElem, c: i64) {
        assert!(w.n() == self.n && w.taus() == self.taus, "KClass shape mismatch");
        let entry = self.coeffs.entry(w.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(w);
        }
    }

    pub fn coeff(&self, w: &WeylElem) -> i64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    /// Nonzero terms, in increasing order of the index.
    pub fn terms(&self) -> impl Iterator<Item = (&WeylElem, i64)> {
        self.coeffs.iter().map(|(w, &c)| (w, c))
    }

    pub fn support(&self) -> Vec<WeylElem> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn plus(&self, other: &KClass) -> KClass {
        assert_eq!(self.basis, other.basis, "adding classes in different bases");
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> KClass {
        let mut out = KClass::zero(self.n, self.taus, self.basis);
        for (w, c) in self.terms() {
            out.add_term(w, c * k);
        }
        out
    }

    pub fn minus(&self, other: &KClass) -> KClass {
        self.plus(&other.scale(-1))
    }

    /// External tensor product: the factors of `other` are appended.
    pub fn boxtimes(&self, other: &KClass) -> KClass {
        assert_eq!(self.basis, other.basis, "tensoring classes in different bases");
        assert_eq!(self.n, other.n, "tensoring classes of different rank");
        let mut out = KClass::zero(self.n, self.taus + other.taus, self.basis);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut f = a.factors().to_vec();
                f.extend(b.factors().iter().cloned());
                out.add_term(&WeylElem::new(f).expect("same n"), ca * cb);
            }
        }
        out
    }

    /// Sum of the coefficients in the simple basis: the Jordan–Hölder length.
    pub fn length(&self) -> Result<i64, CatOError> {
        Ok(self.to_simple()?.coeffs.values().sum())
    }

    pub fn to_simple(&self) -> Result<KClass, CatOError> {
        check_n(self.n)?;
        if self.basis == KBasis::Simple {
            return Ok(self.clone());
        }
        let mut out = KClass::zero(self.n, self.taus, KBasis::Simple);
        let all = WeylElem::all(self.n, self.taus);
        for (w, c) in self.terms() {
            for v in all.iter().filter(|v| w.bruhat_leq(v)) {
                out.add_term(v, c);
            }
        }
        Ok(out)
    }

    /// Inverts the unitriangular change of basis by peeling off a term of
    /// minimal length at each step.
    pub fn to_verma(&self) -> Result<KClass, CatOError> {
        check_n(self.n)?;
        if self.basis == KBasis::Verma {
            return Ok(self.clone());
        }
        let mut rest = self.clone();
        let mut out = KClass::zero(self.n, self.taus, KBasis::Verma);
        while let Some((w, c)) = rest
            .terms()
            .min_by_key(|(w, _)| (w.coxeter_length(), (*w).clone()))
            .map(|(w, c)| (w.clone(), c))
        {
            out.add_term(&w, c);
            let m = KClass::basis_element(&w, KBasis::Verma).to_simple()?;
            rest = rest.minus(&m.scale(c));
        }
        Ok(out)
    }

    /// Coefficients keyed by the reduced-word text of the index.
    pub fn to_word_map(&self) -> BTreeMap<String, i64> {
        self.terms().map(|(w, c)| (w.to_word_string(), c)).collect()
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.basis {
            KBasis::Simple => "L",
            KBasis::Verma => "M",
        };
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms().map(|(w, c)| format!("{c}*{sym}({})", w.to_word_string())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Jordan–Hölder content of `M(w·λ)` in the simple basis.
pub fn verma_jh(w: &WeylElem) -> Result<KClass, CatOError> {
    KClass::basis_element(w, KBasis::Verma).to_simple()
}

/// Content of `N(λ) = M(λ)/(M(s1s2·λ) + M(s2s1·λ))` for one `gl3` factor.
pub fn n_lambda_jh() -> KClass {
    let mut k = KClass::zero(3, 1, KBasis::Simple);
    for word in [&[][..], &[1], &[2]] {
        k.add_term(&WeylElem::from_word(3, word), 1);
    }
    k
}

/// The same content by inclusion–exclusion on the submodule lattice:
/// `M(e) − M(s1s2) − M(s2s1) + M(w0)`, with `M(w0) = M(s1s2) ∩ M(s2s1)`.
pub fn n_lambda_by_inclusion_exclusion() -> Result<KClass, CatOError> {
    let e = verma_jh(&WeylElem::identity(3, 1))?;
    let a = verma_jh(&WeylElem::from_word(3, &[1, 2]))?;
    let b = verma_jh(&WeylElem::from_word(3, &[2, 1]))?;
    let top = verma_jh(&WeylElem::longest(3, 1))?;
    Ok(e.minus(&a).minus(&b).plus(&top))
}

/// `w_{x,R}` together with the generic multiplicity `m_x ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementPosition {
    pub w_xr: WeylElem,
    pub m: u64,
}

impl RefinementPosition {
    pub fn new(w_xr: WeylElem, m: u64) -> Result<Self, CatOError> {
        if m == 0 {
            return Err(CatOError::ZeroMultiplicity);
        }
        Ok(RefinementPosition { w_xr, m })
    }

    /// Parses factor words such as `1,s1,w0` for `gl3` factors.
    pub fn parse(words: &str, m: u64) -> Result<Self, CatOError> {
        RefinementPosition::new(WeylElem::parse(words, 3)?, m)
    }

    /// Number of very critical embeddings, `#{τ : w_{x,R,τ} = 1}`.
    pub fn r(&self) -> usize {
        self.w_xr.factors().iter().filter(|p| p.is_identity()).count()
    }

    fn longest(&self) -> WeylElem {
        WeylElem::longest(self.w_xr.n(), self.w_xr.taus())
    }
}

/// One indecomposable factor of a summand of `S(λ, w_R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandFactor {
    Simple(Perm),
    /// The three-step extension `N(λ)`.
    N,
}

impl SummandFactor {
    fn class(&self) -> KClass {
        match self {
            SummandFactor::Simple(p) => {
                KClass::basis_element(&WeylElem::single(p.clone()), KBasis::Simple)
            }
            SummandFactor::N => n_lambda_jh(),
        }
    }
}

impl fmt::Display for SummandFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandFactor::Simple(p) => {
                write!(f, "L({})", WeylElem::single(p.clone()).to_word_string())
            }
            SummandFactor::N => write!(f, "N"),
        }
    }
}

/// `S(λ, w_R)`: its class and its indecomposable summands, each an external
/// tensor product over the embeddings.
#[derive(Clone, Debug)]
pub struct SObject {
    pub class: KClass,
    pub summands: Vec<Vec<SummandFactor>>,
}

/// Summands of `S(λ_τ, w_{R,τ})` for one `gl3` factor.
pub fn s_factor_summands(w_r: &Perm) -> Vec<SummandFactor> {
    let n = w_r.n();
    let all = Perm::all(n);
    if w_r.is_identity() {
        let mut out: Vec<SummandFactor> =
            all.into_iter().filter(|w| w.inversions() != 1).map(SummandFactor::Simple).collect();
        out.push(SummandFactor::N);
        out
    } else {
        let bound = w_r.compose(&Perm::longest(n));
        all.into_iter()
            .filter(|w| WeylElem::single(w.clone()).bruhat_leq(&WeylElem::single(bound.clone())))
            .map(SummandFactor::Simple)
            .collect()
    }
}

pub fn s_lambda_wr(pos: &RefinementPosition) -> Result<SObject, CatOError> {
    if pos.w_xr.n() != 3 {
        return Err(CatOError::Unsupported("S(λ, w_R) is defined for gl3 factors".into()));
    }
    let mut summands: Vec<Vec<SummandFactor>> = vec![Vec::new()];
    for p in pos.w_xr.factors() {
        let choices = s_factor_summands(p);
        summands = summands
            .iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut s = prefix.clone();
                    s.push(c.clone());
                    s
                })
            })
            .collect();
    }
    let mut class = KClass::zero(3, pos.w_xr.taus(), KBasis::Simple);
    for s in &summands {
        let mut k = s[0].class();
        for f in &s[1..] {
            k = k.boxtimes(&f.class());
        }
        class = class.plus(&k);
    }
    Ok(SObject { class, summands })
}

/// Whether the sheaf attached to `M(w·λ)` at the position is nonzero:
/// `w·w0 ≥ w_{x,R}`.
pub fn support_nonzero(w: &WeylElem, pos: &RefinementPosition) -> Result<bool, CatOError> {
    let ww0 = w.mul(&pos.longest())?;
    Ok(pos.w_xr.bruhat_leq(&ww0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CycleBasis {
    /// Components `[X^{qtri, w}]` of the quasi-trianguline space.
    Qtri,
    /// Components `[Z_w]` of the Steinberg fiber.
    Z,
}

/// A nonnegative integer combination of components indexed by `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub basis: CycleBasis,
    pub coeffs: BTreeMap<WeylElem, u64>,
}

impl CycleClass {
    pub fn single(basis: CycleBasis, w: WeylElem, m: u64) -> Self {
        CycleClass { basis, coeffs: BTreeMap::from([(w, m)]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElem, u64)> {
        self.coeffs.iter().map(|(w, &c)| (w, c))
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.basis {
            CycleBasis::Qtri => "X^qtri",
            CycleBasis::Z => "Z",
        };
        let parts: Vec<String> =
            self.terms().map(|(w, c)| format!("{c}*[{sym}_{}]", w.to_word_string())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cycle of the sheaf attached to `M(w·λ)`: `m·[X^{qtri, w·w0}]`.
pub fn cycle_of_verma(w: &WeylElem, pos: &RefinementPosition) -> Result<CycleClass, CatOError> {
    if !support_nonzero(w, pos)? {
        return Err(CatOError::ZeroSheaf);
    }
    Ok(CycleClass::single(CycleBasis::Qtri, w.mul(&pos.longest())?, pos.m))
}

/// Cycle of the sheaf attached to `L(w·λ)`: `m·Σ a_{w,w′}[Z_{w′·w0}]` with
/// `a_{w,w} = 1` and `a_{w,w′} = 0` otherwise, hence a single term.
pub fn cycle_of_simple(w: &WeylElem, pos: &RefinementPosition) -> Result<CycleClass, CatOError> {
    if !support_nonzero(w, pos)? {
        return Err(CatOError::ZeroSheaf);
    }
    Ok(CycleClass::single(CycleBasis::Z, w.mul(&pos.longest())?, pos.m))
}

/// `dim S† / dim S^cl = 2^r`.
pub fn classical_dim_ratio(pos: &RefinementPosition) -> u64 {
    1u64 << pos.r()
}

/// `dim Hom(M_{w,I1,I2}, Π) = 2^{|I2|}·m`.
pub fn hom_dim_count(i2_size: u32, m: u64) -> u64 {
    (1u64 << i2_size) * m
}

/// Homomorphisms modulo those factoring through a strict quotient:
/// `2^{|I2|}·m − Σ_{∅≠J⊆I2} (−1)^{|J|+1}·2^{|I2|−|J|}·m`, summed over the
/// actual subsets `J`.
pub fn inclusion_exclusion_check(i2_size: u32, m: u64) -> i64 {
    let m = m as i64;
    let mut total = hom_dim_count(i2_size, 1) as i64 * m;
    for mask in 1u64..(1u64 << i2_size) {
        let j = mask.count_ones();
        let sign = if j % 2 == 1 { 1 } else { -1 };
        total -= sign * (1i64 << (i2_size - j)) * m;
    }
    total
}

/// The refinement position matching a point spec of the local model: a
/// factor is very critical (`w_{x,R,τ} = 1`) exactly when it sits on the
/// `w0` component with equal flags; every other factor is given the
/// generic position `w0`.
pub fn position_for_spec(spec: &PdRPointSpec, m: u64) -> Result<RefinementPosition, CatOError> {
    let w0 = Perm::longest(3);
    let factors = spec
        .factors
        .iter()
        .map(|f| {
            if f.w == w0 && f.flags != FlagRelation::Distinct {
                Perm::identity(3)
            } else {
                w0.clone()
            }
        })
        .collect();
    RefinementPosition::new(WeylElem::new(factors)?, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> WeylElem {
        WeylElem::parse(text, 3).unwrap()
    }

    fn pos(text: &str, m: u64) -> RefinementPosition {
        RefinementPosition::parse(text, m).unwrap()
    }

    #[test]
    fn verma_contents() {
        assert_eq!(verma_jh(&w("w0")).unwrap().to_word_map().len(), 1);
        let e = verma_jh(&w("e")).unwrap();
        assert_eq!(e.support().len(), 6);
        assert!(e.terms().all(|(_, c)| c == 1));
        assert_eq!(verma_jh(&w("e,w0")).unwrap().support().len(), 6);
        assert_eq!(verma_jh(&w("s1")).unwrap().length().unwrap(), 4);
    }

    #[test]
    fn basis_change_round_trips() {
        for taus in 1..=2 {
            for x in WeylElem::all(3, taus) {
                let l = KClass::basis_element(&x, KBasis::Simple);
                assert_eq!(l.to_verma().unwrap().to_simple().unwrap(), l);
                let m = KClass::basis_element(&x, KBasis::Verma);
                assert_eq!(m.to_simple().unwrap().to_verma().unwrap(), m);
            }
        }
    }

    #[test]
    fn simple_in_verma_basis_is_signed_by_length() {
        // for A2 the inverse of the multiplicity matrix is the Bruhat Möbius
        // function, (−1)^{lg(v) − lg(w)} on every interval
        for x in WeylElem::all(3, 1) {
            let v = KClass::basis_element(&x, KBasis::Simple).to_verma().unwrap();
            for y in WeylElem::all(3, 1) {
                let expect = if x.bruhat_leq(&y) {
                    if (y.coxeter_length() - x.coxeter_length()) % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                };
                assert_eq!(v.coeff(&y), expect, "{x} {y}");
            }
        }
    }

    #[test]
    fn n_lambda() {
        let n = n_lambda_jh();
        assert_eq!(n.to_word_map().keys().cloned().collect::<Vec<_>>(), vec!["e", "s1", "s2"]);
        assert_eq!(n.length().unwrap(), 3);
        assert_eq!(n_lambda_by_inclusion_exclusion().unwrap(), n);
    }

    #[test]
    fn s_objects() {
        // w_R = w0 gives w_R·w0 = e: only L(λ)
        let generic = s_lambda_wr(&pos("w0", 1)).unwrap();
        assert_eq!(generic.summands, vec![vec![SummandFactor::Simple(Perm::identity(3))]]);
        let s1 = s_lambda_wr(&pos("s1", 1)).unwrap();
        assert_eq!(s1.summands.len(), 4);
        assert!(s1.class.terms().all(|(_, c)| c == 1));
        let critical = s_lambda_wr(&pos("1", 1)).unwrap();
        assert_eq!(critical.summands.len(), 5);
        assert_eq!(critical.class.support().len(), 6);
        assert_eq!(critical.class.coeff(&w("e")), 2);
        let two = s_lambda_wr(&pos("1,s1", 1)).unwrap();
        let below = Perm::all(3)
            .into_iter()
            .filter(|v| WeylElem::single(v.clone()).bruhat_leq(&w("s1").mul(&w("w0")).unwrap()))
            .count();
        assert_eq!(below, 4);
        assert_eq!(two.summands.len(), 5 * below);
    }

    #[test]
    fn supports_and_cycles() {
        assert!(support_nonzero(&w("e"), &pos("w0", 1)).unwrap());
        assert!(!support_nonzero(&w("w0"), &pos("w0", 1)).unwrap());
        assert!(support_nonzero(&w("w0"), &pos("1", 1)).unwrap());
        assert_eq!(
            cycle_of_verma(&w("e"), &pos("w0", 3)).unwrap().to_string(),
            "3*[X^qtri_s1s2s1]"
        );
        assert_eq!(cycle_of_verma(&w("s1"), &pos("1", 2)).unwrap().to_string(), "2*[X^qtri_s2s1]");
        assert_eq!(cycle_of_simple(&w("w0"), &pos("1", 2)).unwrap().to_string(), "2*[Z_e]");
        assert_eq!(cycle_of_simple(&w("w0"), &pos("w0", 1)), Err(CatOError::ZeroSheaf));
        assert!(matches!(RefinementPosition::parse("1", 0), Err(CatOError::ZeroMultiplicity)));
    }

    #[test]
    fn ratios_and_counts() {
        assert_eq!(classical_dim_ratio(&pos("w0", 1)), 1);
        assert_eq!(classical_dim_ratio(&pos("1", 1)), 2);
        assert_eq!(classical_dim_ratio(&pos("1,1,s1", 1)), 4);
        assert_eq!(hom_dim_count(0, 5), 5);
        assert_eq!(hom_dim_count(2, 1), 4);
        assert_eq!(inclusion_exclusion_check(0, 5), 5);
        assert_eq!(inclusion_exclusion_check(2, 1), 1);
        assert_eq!(inclusion_exclusion_check(4, 3), 3);
    }
}

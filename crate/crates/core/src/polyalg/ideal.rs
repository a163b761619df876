use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::gb::{self, Vect};
use super::matrix::rank_over_q;
use super::order::{MonomialOrder, TermOrder};
use super::poly::{Poly, Rat, Ring};
use crate::error::AlgebraError;

/// An ideal given by generators, with reduced Gröbner bases cached per order.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<Vec<Poly>>>>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Ideal").field(&self.gens).finish()
    }
}

pub(crate) fn to_vects(polys: &[Poly], ord: &TermOrder) -> Vec<Vect> {
    polys.iter().map(|p| Vect::from_polys(std::slice::from_ref(p), ord)).collect()
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Self {
        for g in &gens {
            assert!(g.ring() == ring, "generator from a different ring");
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::default(),
        }
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Self, AlgebraError> {
        let polys = gens.iter().map(|g| ring.parse(g.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ring, polys))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis for `ord`, computed once and cached.
    pub fn groebner(&self, ord: MonomialOrder) -> Arc<Vec<Poly>> {
        if let Some(gb) = self.cache.lock().unwrap().get(&ord) {
            return gb.clone();
        }
        let gb = Arc::new(
            self.groebner_bounded(ord, None)
                .expect("unbounded Groebner computation cannot hit a degree bound"),
        );
        self.cache.lock().unwrap().insert(ord, gb.clone());
        gb
    }

    /// Like [`Ideal::groebner`] but fails once an S-pair lcm exceeds `bound`.
    pub fn groebner_bounded(
        &self,
        ord: MonomialOrder,
        bound: Option<u32>,
    ) -> Result<Vec<Poly>, AlgebraError> {
        let tord = TermOrder::ideal(ord);
        let basis = gb::groebner(to_vects(&self.gens, &tord), &tord, bound)?;
        Ok(basis.iter().map(|v| v.to_polys(&self.ring, 1).remove(0)).collect())
    }

    /// Default-order reduced basis (graded reverse lexicographic).
    pub fn gb(&self) -> Arc<Vec<Poly>> {
        self.groebner(MonomialOrder::GrevLex)
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let tord = TermOrder::ideal(MonomialOrder::GrevLex);
        let basis = to_vects(&self.gb(), &tord);
        let v = Vect::from_polys(std::slice::from_ref(f), &tord);
        gb::reduce(&v, &basis, &tord).to_polys(&self.ring, 1).remove(0)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(|g| g.as_constant().is_some_and(|c| !c.is_zero()))
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.ring == other.ring && *self.gb() == *other.gb()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Krull dimension from a maximal independent set modulo the leading
    /// term ideal; `-1` for the unit ideal.
    pub fn dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        assert!(n <= 20, "independent-set search is exponential in the variable count");
        let leads: Vec<u32> = self
            .gb()
            .iter()
            .map(|g| {
                let m = g.leading_monomial(&MonomialOrder::GrevLex).unwrap();
                m.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for subset in 0u32..(1 << n) {
            let size = subset.count_ones() as i64;
            if size > best && leads.iter().all(|&l| l & !subset != 0) {
                best = size;
            }
        }
        best
    }

    pub fn codim(&self) -> usize {
        (self.ring.nvars() as i64 - self.dim()) as usize
    }

    /// `I ∩ k[remaining variables]`, returned in the same ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<Ideal, AlgebraError> {
        for v in vars {
            if self.ring.index_of(v).is_none() {
                return Err(AlgebraError::UnknownVariable(v.to_string()));
            }
        }
        let mut names: Vec<&str> = vars.to_vec();
        names.extend(self.ring.names().iter().map(String::as_str).filter(|n| !vars.contains(n)));
        let elim_ring = Ring::new(&names);
        let moved =
            self.gens.iter().map(|g| g.map_to(&elim_ring)).collect::<Result<Vec<_>, _>>()?;
        let gb = Ideal::new(&elim_ring, moved).groebner(MonomialOrder::BlockElim(vars.len()));
        let kept = gb
            .iter()
            .filter(|g| g.support_vars().iter().all(|&i| i >= vars.len()))
            .map(|g| g.map_to(&self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, kept))
    }

    /// `(I : f^∞)`, via eliminating `t` from `I + (1 − t·f)`.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal, AlgebraError> {
        assert!(!f.is_zero(), "saturation by zero");
        let t = self.ring.fresh_name("t");
        let big = self.ring.prepend(&[&t]);
        let mut gens = self.gens.iter().map(|g| g.map_to(&big)).collect::<Result<Vec<_>, _>>()?;
        gens.push(&big.one() - &(&big.var(&t) * &f.map_to(&big)?));
        let elim = Ideal::new(&big, gens).eliminate(&[&t])?;
        let back = elim.gens.iter().map(|g| g.map_to(&self.ring)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, back))
    }

    /// `I ∩ J` through `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch("intersect".into()));
        }
        let t = self.ring.fresh_name("t");
        let big = self.ring.prepend(&[&t]);
        let tv = big.var(&t);
        let one_minus_t = &big.one() - &tv;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&tv * &g.map_to(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.map_to(&big)?);
        }
        let elim = Ideal::new(&big, gens).eliminate(&[&t])?;
        let back = elim.gens.iter().map(|g| g.map_to(&self.ring)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.ring, back))
    }

    /// Moves the generators into another ring by variable name.
    pub fn map_to(&self, ring: &Ring) -> Result<Ideal, AlgebraError> {
        let gens = self.gens.iter().map(|g| g.map_to(ring)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn vanishes_at(&self, point: &[Rat]) -> Result<(), AlgebraError> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::Shape(format!(
                "point has {} coordinates, ring has {}",
                point.len(),
                self.ring.nvars()
            )));
        }
        match self.gens.iter().find(|g| !g.eval(point).is_zero()) {
            Some(g) => Err(AlgebraError::PointNotOnVariety(g.to_string())),
            None => Ok(()),
        }
    }

    /// Zariski tangent space dimension: `#vars − rank J(pt)` for the Jacobian
    /// of the reduced basis.
    pub fn tangent_dim(&self, point: &[Rat]) -> Result<usize, AlgebraError> {
        self.vanishes_at(point)?;
        let n = self.ring.nvars();
        let rows: Vec<Vec<Rat>> = self
            .gb()
            .iter()
            .map(|g| (0..n).map(|i| g.derivative(i).eval(point)).collect())
            .collect();
        Ok(n - rank_over_q(&rows))
    }

    pub fn to_json(&self) -> String {
        let strs: Vec<String> = self.gens.iter().map(Poly::to_string).collect();
        serde_json::to_string(&strs).unwrap()
    }

    pub fn from_json(ring: &Ring, text: &str) -> Result<Ideal, AlgebraError> {
        let strs: Vec<String> =
            serde_json::from_str(text).map_err(|e| AlgebraError::Serde(e.to_string()))?;
        Ideal::parse(ring, &strs)
    }
}

/// `1 ∉ I` helper for callers holding only generators.
pub fn is_proper(ring: &Ring, gens: &[Poly]) -> bool {
    !Ideal::new(ring, gens.to_vec()).is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::rat;

    fn r3() -> Ring {
        Ring::new(&["x", "y", "z"])
    }

    #[test]
    fn dimensions() {
        let r = r3();
        assert_eq!(Ideal::new(&r, vec![]).dim(), 3);
        assert_eq!(Ideal::parse(&r, &["x"]).unwrap().dim(), 2);
        assert_eq!(Ideal::parse(&r, &["x", "y*z"]).unwrap().dim(), 1);
        assert_eq!(Ideal::parse(&r, &["x", "x-1"]).unwrap().dim(), -1);
    }

    #[test]
    fn saturation_examples() {
        let r = Ring::new(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2*y"]).unwrap();
        let s = i.saturate(&r.var("y")).unwrap();
        assert!(s.same_as(&Ideal::parse(&r, &["x^2"]).unwrap()));
        let s = Ideal::parse(&r, &["x"]).unwrap().saturate(&r.var("x")).unwrap();
        assert!(s.is_unit());

        let g = Ring::new(&["x", "u", "d1", "d2"]);
        let inc = Ideal::parse(&g, &["x*(d2-d1) - u*x^2"]).unwrap();
        let s = inc.saturate(&g.var("x")).unwrap();
        assert!(s.same_as(&Ideal::parse(&g, &["d2-d1-u*x"]).unwrap()));
    }

    #[test]
    fn intersection_and_elimination() {
        let r = r3();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        assert!(x.intersect(&y).unwrap().same_as(&Ideal::parse(&r, &["x*y"]).unwrap()));
        let whole = Ideal::parse(&r, &["1"]).unwrap();
        let i = Ideal::parse(&r, &["x^2-y", "x*z"]).unwrap();
        assert!(i.intersect(&whole).unwrap().same_as(&i));

        let rt = Ring::new(&["t", "x"]);
        let e = Ideal::parse(&rt, &["t*x-1"]).unwrap().eliminate(&["t"]).unwrap();
        assert!(e.gens().is_empty());
        // twisted cubic: eliminating t from (x - t, y - t^2, z - t^3)
        let r4 = Ring::new(&["t", "x", "y", "z"]);
        let e = Ideal::parse(&r4, &["x-t", "y-t^2", "z-t^3"]).unwrap().eliminate(&["t"]).unwrap();
        let expected = Ideal::parse(&r4, &["y-x^2", "z-x*y", "x*z-y^2"]).unwrap();
        assert!(e.same_as(&expected));
    }

    #[test]
    fn tangent_spaces() {
        let r = Ring::new(&["x", "y"]);
        let conic = Ideal::parse(&r, &["x^2+y^2-1"]).unwrap();
        assert_eq!(conic.tangent_dim(&[rat(1), rat(0)]).unwrap(), 1);
        let node = Ideal::parse(&r, &["x*y"]).unwrap();
        assert_eq!(node.tangent_dim(&[rat(0), rat(0)]).unwrap(), 2);
        let fat = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert_eq!(fat.tangent_dim(&[rat(0), rat(0)]).unwrap(), 2);
        assert!(matches!(
            conic.tangent_dim(&[rat(0), rat(0)]),
            Err(AlgebraError::PointNotOnVariety(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let r = r3();
        let i = Ideal::parse(&r, &["x*y-1/2*z", "z^3"]).unwrap();
        let j = Ideal::from_json(&r, &i.to_json()).unwrap();
        assert_eq!(i.gens(), j.gens());
        assert_eq!(i.to_json(), r#"["x*y-1/2*z","z^3"]"#);
    }
}

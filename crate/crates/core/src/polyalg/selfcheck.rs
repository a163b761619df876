//! Seeded property suite for the algebra kernel. Each property runs on a
//! corpus drawn from a fixed ChaCha stream, so reruns see the same inputs.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    ext_top, free_resolution, is_exact_at, rat, Ideal, ModMatrix, MonomialOrder, Poly,
    Presentation, Rat, Ring,
};
use crate::error::AlgebraError;

/// Seed of the default corpus.
pub const DEFAULT_SEED: u64 = 0x5e_ed0f_c0de;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random small polynomials and ideals in `Q[x, y, z]`.
pub struct Corpus {
    ring: Ring,
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus { ring: Ring::new(&["x", "y", "z"]), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn coeff(&mut self) -> i64 {
        let c = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            -c
        } else {
            c
        }
    }

    /// One to three terms of total degree at most `max_deg`.
    pub fn poly(&mut self, max_deg: u32) -> Poly {
        loop {
            let mut p = self.ring.zero();
            for _ in 0..self.rng.gen_range(1..=3) {
                let mut exp = vec![0u32; 3];
                let deg = self.rng.gen_range(1..=max_deg);
                for _ in 0..deg {
                    exp[self.rng.gen_range(0..3)] += 1;
                }
                p.add_term(exp, rat(self.coeff()));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn ideal(&mut self, gens: usize, max_deg: u32) -> Ideal {
        let polys = (0..gens).map(|_| self.poly(max_deg)).collect();
        Ideal::new(&self.ring, polys)
    }

    pub fn point(&mut self) -> Vec<Rat> {
        (0..3).map(|_| rat(self.rng.gen_range(-4..=4))).collect()
    }

    pub fn small(&mut self) -> i64 {
        self.rng.gen_range(-2..=2)
    }
}

fn outcome(property: &str, cases: usize, failures: Vec<String>) -> PropertyOutcome {
    PropertyOutcome { property: property.to_string(), cases, failures }
}

/// `gb(gb(I)) = gb(I)` syntactically, for both term orders.
pub fn gb_idempotence(corpus: &mut Corpus, cases: usize) -> PropertyOutcome {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let k = corpus.rng.gen_range(2..=3);
        let ideal = corpus.ideal(k, 2);
        for ord in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let once = ideal.groebner(ord);
            let twice = Ideal::new(corpus.ring(), once.to_vec()).groebner(ord);
            if once != twice {
                failures.push(format!("{:?} {}", ord, ideal.to_json()));
            }
        }
    }
    outcome("gb-idempotence", cases, failures)
}

/// Combinations of generators reduce to zero, and `1` does not reduce to
/// zero modulo a proper ideal.
pub fn membership_soundness(corpus: &mut Corpus, cases: usize) -> PropertyOutcome {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let ideal = corpus.ideal(2, 2);
        let mut f = corpus.ring().zero();
        for g in ideal.gens() {
            f = &f + &(&corpus.poly(2) * g);
        }
        if !ideal.normal_form(&f).is_zero() {
            failures.push(format!("combination {f} of {}", ideal.to_json()));
        }
        let one = corpus.ring().one();
        if !ideal.is_unit() && ideal.normal_form(&one).is_zero() {
            failures.push(format!("1 reduces to 0 modulo proper {}", ideal.to_json()));
        }
        let nf = ideal.normal_form(&f);
        if ideal.normal_form(&nf) != nf {
            failures.push(format!("normal form not idempotent on {}", ideal.to_json()));
        }
    }
    outcome("membership-soundness", cases, failures)
}

/// `(I : f^∞) : f^∞ = I : f^∞`.
pub fn saturation_idempotence(
    corpus: &mut Corpus,
    cases: usize,
) -> Result<PropertyOutcome, AlgebraError> {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let ideal = corpus.ideal(2, 2);
        let f = corpus.poly(1);
        let once = ideal.saturate(&f)?;
        let twice = once.saturate(&f)?;
        if !once.same_as(&twice) {
            failures.push(format!("{} by {f}", ideal.to_json()));
        }
    }
    Ok(outcome("saturation-idempotence", cases, failures))
}

/// Fiber dimensions of a cokernel do not depend on the presentation: adding
/// a redundant relation and applying an invertible column operation leave
/// them unchanged at 10 random points. Includes the dualizing module of
/// `R/(x,y)` presented via the transposed Koszul map and directly.
pub fn fiber_dim_invariance(
    corpus: &mut Corpus,
    cases: usize,
) -> Result<PropertyOutcome, AlgebraError> {
    let mut failures = Vec::new();
    let ring = corpus.ring().clone();
    let koszul = Ideal::parse(&ring, &["x", "y"])?;
    let res = free_resolution(&koszul, 4)?;
    let via_ext = ext_top(&koszul, &res)?;
    let direct = Presentation::new(ModMatrix::parse(&ring, &[vec!["x", "y"]])?);
    for _ in 0..10 {
        let pt = corpus.point();
        if via_ext.fiber_dim(&pt)? != direct.fiber_dim(&pt)? {
            failures.push(format!("omega of R/(x,y) at {pt:?}"));
        }
    }
    for _ in 0..cases {
        let cols: Vec<Vec<Poly>> = (0..3).map(|_| vec![corpus.poly(2), corpus.poly(2)]).collect();
        let m = ModMatrix::from_columns(&ring, 2, &cols);
        let mut alt = cols.clone();
        // redundant column: a polynomial combination of the others
        let (a, b) = (corpus.poly(1), corpus.poly(1));
        alt.push((0..2).map(|r| &(&a * &cols[0][r]) + &(&b * &cols[1][r])).collect());
        // invertible column operation: c2 ← c2 + k·c0
        let k = Poly::constant(&ring, rat(corpus.small()));
        alt[2] = (0..2).map(|r| &alt[2][r] + &(&k * &cols[0][r])).collect();
        alt.swap(0, 1);
        let m2 = ModMatrix::from_columns(&ring, 2, &alt);
        let (p1, p2) = (Presentation::new(m), Presentation::new(m2));
        for _ in 0..10 {
            let pt = corpus.point();
            if p1.fiber_dim(&pt)? != p2.fiber_dim(&pt)? {
                failures.push(format!("{cols:?} at {pt:?}"));
            }
        }
    }
    Ok(outcome("fiber-dim-invariance", cases + 1, failures))
}

/// Every produced resolution is a complex, exact at its interior positions
/// and injective at the end.
pub fn resolution_exactness(
    corpus: &mut Corpus,
    cases: usize,
) -> Result<PropertyOutcome, AlgebraError> {
    let mut failures = Vec::new();
    for _ in 0..cases {
        let k = corpus.rng.gen_range(2..=3);
        let ideal = corpus.ideal(k, 2);
        let res = free_resolution(&ideal, 6)?;
        if !res.is_complex() || !res.is_acyclic()? {
            failures.push(ideal.to_json());
        }
    }
    Ok(outcome("resolution-exactness", cases, failures))
}

/// For complete intersections `(x − p(z), y − q(z))`: the dualized Koszul
/// complex has no cohomology below degree 2, and the top Ext is
/// `R/I` again (presented by the generators of `I`).
pub fn ext_self_duality(
    corpus: &mut Corpus,
    cases: usize,
) -> Result<PropertyOutcome, AlgebraError> {
    let mut failures = Vec::new();
    let ring = corpus.ring().clone();
    let z = ring.var("z");
    for case in 0..=cases {
        let (f, g) = if case == 0 {
            (ring.var("x"), ring.var("y"))
        } else {
            let (a, b, c) = (corpus.small(), corpus.small(), corpus.small());
            let p = &Poly::constant(&ring, rat(a)) + &z.scale(&rat(b));
            let q = (&z * &z).scale(&rat(c));
            (&ring.var("x") - &p, &ring.var("y") - &q)
        };
        let ideal = Ideal::new(&ring, vec![f, g]);
        let res = free_resolution(&ideal, 4)?;
        let d1t = res.maps()[0].transpose();
        let d2t = res.maps()[1].transpose();
        let h0 = d1t.syzygies(MonomialOrder::GrevLex).cols() == 0;
        let h1 = is_exact_at(&d2t, &d1t)?;
        let omega = ext_top(&ideal, &res)?;
        let relations = Ideal::new(
            &ring,
            omega.relations.columns().into_iter().map(|c| c[0].clone()).collect(),
        );
        if !(h0 && h1 && omega.target_rank == 1 && relations.same_as(&ideal)) {
            failures.push(ideal.to_json());
        }
    }
    Ok(outcome("ext-ci-self-duality", cases + 1, failures))
}

/// At a point of a hypersurface `f = 0` where `∇f ≠ 0` the tangent space
/// has dimension `#vars − 1`.
pub fn hypersurface_tangent(corpus: &mut Corpus, cases: usize) -> PropertyOutcome {
    let mut failures = Vec::new();
    let ring = corpus.ring().clone();
    let mut done = 0;
    while done < cases {
        // f(pt) = 0 by subtracting the value at a random point
        let pt = corpus.point();
        let g = corpus.poly(3);
        let f = &g - &Poly::constant(&ring, g.eval(&pt));
        if f.is_zero() || (0..3).all(|i| f.derivative(i).eval(&pt).is_zero()) {
            continue;
        }
        done += 1;
        let ideal = Ideal::new(&ring, vec![f.clone()]);
        if ideal.tangent_dim(&pt) != Ok(2) {
            failures.push(format!("{f} at {pt:?}"));
        }
    }
    outcome("hypersurface-tangent", cases, failures)
}

/// All kernel properties on the corpus of `seed`, `cases` inputs each.
pub fn run_kernel_suite(seed: u64, cases: usize) -> Result<Vec<PropertyOutcome>, AlgebraError> {
    let mut corpus = Corpus::new(seed);
    Ok(vec![
        gb_idempotence(&mut corpus, cases),
        membership_soundness(&mut corpus, cases),
        saturation_idempotence(&mut corpus, cases)?,
        fiber_dim_invariance(&mut corpus, cases)?,
        resolution_exactness(&mut corpus, cases)?,
        ext_self_duality(&mut corpus, cases)?,
        hypersurface_tangent(&mut corpus, cases),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let (mut a, mut b) = (Corpus::new(7), Corpus::new(7));
        for _ in 0..5 {
            assert_eq!(a.poly(3), b.poly(3));
        }
    }

    #[test]
    fn small_suite_passes() {
        for o in run_kernel_suite(1, 3).unwrap() {
            assert!(o.pass(), "{o:?}");
        }
    }
}

//! Local charts of the Grothendieck–Springer Steinberg variety for `GL2` and
//! `GL3` around the standard flag, their irreducible components, the
//! transcribed resolution of the `w0` component, dualizing-sheaf fibers and
//! tangent-space checks.
//!
//! The chart fixes the first flag at the standard one and lets the second
//! flag move: its line is `[1 : x1 : x2]`, its plane is the kernel of
//! `(y0, y1, 1)` with `y0 = −(x1·y1 + x2)`. The universal matrix is upper
//! triangular with diagonal `d1, d2, d3` and off-diagonal `u12, u13, u23`.
//! Cutting by `d = 0` gives the nilpotent chart in the ring
//! `x1, x2, y1, u12, u23, u13`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::polyalg::{
    ext_top, free_resolution, is_exact_at, nullspace_q, rat, rat_frac, resolve_presentation, Ideal,
    ModMatrix, Poly, Presentation, Rat, Resolution, Ring,
};
use crate::weyl::{Perm, WeylElem};

/// Longest resolution the component code will attempt.
pub const MAX_RESOLUTION_LENGTH: usize = 8;

const GL3_FULL: [&str; 9] = ["d1", "d2", "d3", "x1", "x2", "y1", "u12", "u23", "u13"];
const GL3_CUT: [&str; 6] = ["x1", "x2", "y1", "u12", "u23", "u13"];
const GL2_FULL: [&str; 4] = ["d1", "d2", "x", "u"];
const GL2_CUT: [&str; 2] = ["x", "u"];

/// The affine chart `x0 = y2 = 1` of `G/B × b` for `GL_n`, `n ∈ {2, 3}`.
#[derive(Clone, Debug)]
pub struct Chart {
    n: usize,
    ring: Ring,
    cut_ring: Ring,
}

impl Chart {
    pub fn new(n: usize) -> Result<Self, ModelError> {
        match n {
            2 => Ok(Chart { n, ring: Ring::new(&GL2_FULL), cut_ring: Ring::new(&GL2_CUT) }),
            3 => Ok(Chart { n, ring: Ring::new(&GL3_FULL), cut_ring: Ring::new(&GL3_CUT) }),
            _ => Err(ModelError::Unsupported(format!("charts exist for n = 2, 3, not n = {n}"))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ring with the diagonal variables, listed first.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Ring of the `d = 0` cut.
    pub fn cut_ring(&self) -> &Ring {
        &self.cut_ring
    }

    pub fn diagonal_vars(&self) -> Vec<&'static str> {
        ["d1", "d2", "d3"][..self.n].to_vec()
    }

    fn v(&self, name: &str) -> Poly {
        self.ring.var(name)
    }

    /// `y0 = −(x1·y1 + x2)`, the eliminated plane coordinate (`GL3` only).
    pub fn y0(&self) -> Poly {
        -(&(&self.v("x1") * &self.v("y1")) + &self.v("x2"))
    }

    /// Equations of `{(flag, X) : X stabilizes the flag}` in the chart.
    pub fn incidence_ideal(&self) -> Ideal {
        if self.n == 2 {
            let (x, u) = (self.v("x"), self.v("u"));
            let g = &(&x * &(&self.v("d2") - &self.v("d1"))) - &(&u * &x.pow(2));
            return Ideal::new(&self.ring, vec![g]);
        }
        let (x1, x2, y1) = (self.v("x1"), self.v("x2"), self.v("y1"));
        let (d1, d2, d3) = (self.v("d1"), self.v("d2"), self.v("d3"));
        let (u12, u13, u23) = (self.v("u12"), self.v("u13"), self.v("u23"));
        // X·v for v = (1, x1, x2)
        let xv0 = &(&d1 + &(&u12 * &x1)) + &(&u13 * &x2);
        let xv1 = &(&d2 * &x1) + &(&u23 * &x2);
        let xv2 = &d3 * &x2;
        let minor01 = &xv1 - &(&x1 * &xv0);
        let minor02 = &xv2 - &(&x2 * &xv0);
        // X·w2 for w2 = (0, 1, −y1), paired with (y0, y1, 1)
        let xw0 = &u12 - &(&u13 * &y1);
        let xw1 = &d2 - &(&u23 * &y1);
        let xw2 = -(&d3 * &y1);
        let plane = &(&(&self.y0() * &xw0) + &(&y1 * &xw1)) + &xw2;
        Ideal::new(&self.ring, vec![minor01, minor02, plane])
    }

    /// Closed equations and open condition of the Schubert cell of `w`
    /// (relative position of the moving flag to the standard one).
    fn cell(&self, w: &Perm) -> Result<(Vec<Poly>, Poly), ModelError> {
        let one = self.ring.one();
        if self.n == 2 {
            return Ok(if w.is_identity() {
                (vec![self.v("x")], one)
            } else {
                (vec![], self.v("x"))
            });
        }
        let (x1, x2, y1) = (self.v("x1"), self.v("x2"), self.v("y1"));
        let y0 = self.y0();
        let cell = match cell_name(w) {
            "e" => (vec![x1, x2, y1], one),
            "s1" => (vec![x2, y1], x1),
            "s2" => (vec![x1, x2], y1),
            "s1s2" => (vec![x2], &x1 * &y0),
            "s2s1" => (vec![y0], x2),
            _ => (vec![], &x2 * &y0),
        };
        Ok(cell)
    }

    /// Component `Y_w` in the full chart: the incidence ideal plus the closed
    /// cell equations, saturated by the open cell condition.
    pub fn component_with_diagonal(&self, w: &WeylElem) -> Result<Ideal, ModelError> {
        let p = self.single_factor(w)?;
        let (closed, open) = self.cell(&p)?;
        let mut ideal = self.incidence_ideal();
        ideal = ideal.sum(&Ideal::new(&self.ring, closed));
        if open.as_constant().is_none() {
            ideal = ideal.saturate(&open)?;
        }
        Ok(reduced(&ideal))
    }

    /// The `d = 0` cut of `Y_w` in the cut ring: `(d) + Y_w`, with the diagonal
    /// variables eliminated.
    pub fn component_cut(&self, w: &WeylElem) -> Result<Ideal, ModelError> {
        let full = self.component_with_diagonal(w)?;
        let diag = self.diagonal_vars();
        let with_d = full.sum(&Ideal::new(&self.ring, diag.iter().map(|d| self.v(d)).collect()));
        let elim = with_d.eliminate(&diag)?;
        Ok(reduced(&elim.map_to(&self.cut_ring)?))
    }

    fn single_factor(&self, w: &WeylElem) -> Result<Perm, ModelError> {
        if w.taus() != 1 || w.n() != self.n {
            return Err(ModelError::Unsupported(format!(
                "expected a single S{} factor, got {} factors of S{}",
                self.n,
                w.taus(),
                w.n()
            )));
        }
        Ok(w.factor(0).clone())
    }

    /// A rational point of the cut chart with `N = 0` whose flags lie in the
    /// open cell of `w`. `params` feeds the free cell coordinates.
    pub fn cell_point(&self, w: &WeylElem, params: (i64, i64)) -> Result<Vec<Rat>, ModelError> {
        let p = self.single_factor(w)?;
        let (a, b) = params;
        if a == 0 || b == 0 {
            return Err(ModelError::InvalidSpec("cell parameters must be nonzero".into()));
        }
        if self.n == 2 {
            return Ok(vec![rat(if p.is_identity() { 0 } else { a }), rat(0)]);
        }
        // (x1, x2, y1)
        let flags: [Rat; 3] = match cell_name(&p) {
            "e" => [rat(0), rat(0), rat(0)],
            "s1" => [rat(a), rat(0), rat(0)],
            "s2" => [rat(0), rat(0), rat(a)],
            "s1s2" => [rat(a), rat(0), rat(b)],
            "s2s1" => [rat(b), rat(a), rat_frac(-a, b)],
            _ => {
                // x2 ≠ 0 and x1·y1 + x2 ≠ 0
                let x2 = if a + b * b == 0 { 2 * a } else { a };
                [rat(b), rat(x2), rat(b)]
            }
        };
        let mut pt = flags.to_vec();
        pt.extend(std::iter::repeat_n(Rat::zero(), 3));
        Ok(pt)
    }

    /// Whether the flag part of a cut-chart point is the standard flag.
    pub fn flags_equal(&self, point: &[Rat]) -> bool {
        let k = if self.n == 2 { 1 } else { 3 };
        point[..k].iter().all(Zero::is_zero)
    }
}

fn cell_name(p: &Perm) -> &'static str {
    match p.images() {
        [0, 1, 2] => "e",
        [1, 0, 2] => "s1",
        [0, 2, 1] => "s2",
        [1, 2, 0] => "s1s2",
        [2, 0, 1] => "s2s1",
        _ => "w0",
    }
}

fn reduced(ideal: &Ideal) -> Ideal {
    Ideal::new(ideal.ring(), ideal.gb().to_vec())
}

/// One irreducible component of the `d = 0` cut of the Steinberg chart.
#[derive(Clone, Debug)]
pub struct SteinbergComponent {
    pub n: usize,
    pub w: WeylElem,
    pub ideal: Ideal,
    pub resolution: Option<Resolution>,
    pub omega: Option<Presentation>,
}

impl SteinbergComponent {
    pub fn new(n: usize, w: WeylElem, ideal: Ideal) -> Self {
        SteinbergComponent { n, w, ideal, resolution: None, omega: None }
    }

    pub fn dim(&self) -> i64 {
        self.ideal.dim()
    }

    /// Fills in a minimal free resolution and the top Ext presentation.
    pub fn with_omega(mut self) -> Result<Self, ModelError> {
        let res = free_resolution(&self.ideal, MAX_RESOLUTION_LENGTH)?;
        self.omega = Some(ext_top(&self.ideal, &res)?);
        self.resolution = Some(res);
        Ok(self)
    }
}

/// The `w0` component of the `GL3` cut chart with its four printed
/// generators.
pub fn iw0_gl3() -> SteinbergComponent {
    let ring = Ring::new(&GL3_CUT);
    let ideal = Ideal::parse(
        &ring,
        &["u23*x2", "u12*(x2+x1*y1)", "u12*x1+u13*x2", "u23*y1-u13*(x2+x1*y1)"],
    )
    .expect("static generators parse");
    SteinbergComponent::new(3, WeylElem::longest(3, 1), ideal)
}

/// The three printed matrices `A′` (6×2), `A` (5×6), `A″` (1×5), verbatim.
pub fn printed_matrices_gl3() -> (ModMatrix, ModMatrix, ModMatrix) {
    let ring = Ring::new(&GL3_CUT);
    let a_prime = ModMatrix::parse(
        &ring,
        &[
            vec!["y1", "y1*u13-u12"],
            vec!["-x2", "0"],
            vec!["x1", "u23"],
            vec!["0", "-u12*u23"],
            vec!["0", "-x2*u23"],
            vec!["0", "x1*u12+x2*u12"],
        ],
    )
    .expect("static matrix parses");
    let a = ModMatrix::parse(
        &ring,
        &[
            vec!["-x2*u23", "-y1*u23", "0", "x2", "-y1*u13", "0"],
            vec!["x1*u12+x2*u13", "y1*u13", "-y1*u12", "-y1", "0", "-y1*u13+u12"],
            vec!["0", "x1", "x2", "0", "1", "0"],
            vec!["0", "0", "0", "-x2", "u12", "0"],
            vec!["0", "0", "0", "x1", "u13", "u23"],
        ],
    )
    .expect("static matrix parses");
    let a_second = ModMatrix::parse(
        &ring,
        &[vec![
            "x1*u12+x2*u13",
            "x2*u23",
            "y1*u12*u23",
            "x1*y1*u13-y1*u23+x2*u13",
            "x2*y1*u13-x2*u12",
        ]],
    )
    .expect("static matrix parses");
    (a_prime, a, a_second)
}

/// Position and replacement value of the single entry of `A′` that keeps
/// the printed complex from closing up. Row 6, column 2 (1-based) reads
/// `x1·u12 + x2·u12` in print; `x1·u12 + x2·u13` makes `A·A′ = 0`.
pub const A_PRIME_AMENDED_ENTRY: (usize, usize, &str) = (5, 1, "x1*u12+x2*u13");

/// Checks a candidate resolution `A′, A, A″` of `R/I_{w0}`: the augmentation
/// generates `I_{w0}`, both composites vanish, the complex is exact at both
/// interior positions and `A′` is injective.
pub fn validate_gl3_complex(
    a_prime: &ModMatrix,
    a: &ModMatrix,
    a_second: &ModMatrix,
) -> Result<Resolution, ModelError> {
    let mismatch = |what: String| Err(ModelError::TranscriptionMismatch(what));
    let ring = a.ring().clone();
    let target = iw0_gl3().ideal;
    if !Ideal::new(&ring, a_second.columns().into_iter().map(|c| c[0].clone()).collect())
        .same_as(&target)
    {
        return mismatch("the entries of A'' do not generate I_w0".into());
    }
    for (name, left, right) in [("A''*A", a_second, a), ("A*A'", a, a_prime)] {
        let prod = left.mul(right)?;
        if !prod.is_zero() {
            return mismatch(format!("{name} is nonzero: {}", nonzero_entries(&prod)));
        }
    }
    if !is_exact_at(a_second, a)? {
        return mismatch("homology at the rank-5 position".into());
    }
    if !is_exact_at(a, a_prime)? {
        return mismatch("homology at the rank-6 position".into());
    }
    if a_prime.syzygies(Default::default()).cols() != 0 {
        return mismatch("A' is not injective".into());
    }
    Ok(Resolution::new(&ring, vec![a_second.clone(), a.clone(), a_prime.clone()])?)
}

fn nonzero_entries(m: &ModMatrix) -> String {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                out.push(format!("({},{})={}", r + 1, c + 1, m.get(r, c)));
            }
        }
    }
    out.join(", ")
}

/// The printed resolution of `R/I_{w0}`, validated as transcribed. Fails with
/// `TranscriptionMismatch` when the printed matrices do not form a
/// resolution; callers fall back to [`free_resolution`] and compare Betti
/// numbers, or inspect [`amended_resolution_gl3`].
pub fn printed_resolution_gl3() -> Result<Resolution, ModelError> {
    let (ap, a, app) = printed_matrices_gl3();
    validate_gl3_complex(&ap, &a, &app)
}

/// The printed resolution with [`A_PRIME_AMENDED_ENTRY`] replaced; every
/// other entry is verbatim. Validated by the same checks.
pub fn amended_resolution_gl3() -> Result<Resolution, ModelError> {
    let (mut ap, a, app) = printed_matrices_gl3();
    let (r, c, text) = A_PRIME_AMENDED_ENTRY;
    let entry = ap.ring().parse(text)?;
    ap.set(r, c, entry);
    validate_gl3_complex(&ap, &a, &app)
}

/// Resolution of `R/I_{w0}` that keeps the five printed generators and
/// minimalizes every later step.
pub fn resolve_printed_generators() -> Result<Resolution, ModelError> {
    let (_, _, app) = printed_matrices_gl3();
    Ok(resolve_presentation(&app, MAX_RESOLUTION_LENGTH)?)
}

/// The printed simplified ω presentation: the cokernel of the 2×4 matrix
/// with columns `(y1, y1·u13 − u12), (x2, 0), (x1, u12), (0, u12·u23)`.
/// Its third column disagrees with the matching row `(x1, u23)` of `A′`
/// and gives fiber 0 at points of the component; see
/// [`amended_omega_presentation`].
pub fn printed_omega_presentation() -> Presentation {
    omega_presentation_with("u12")
}

/// Position and replacement of the single entry of the printed ω
/// presentation that disagrees with `A′`: row 2, column 3 (1-based).
pub const OMEGA_AMENDED_ENTRY: (usize, usize, &str) = (1, 2, "u23");

/// The printed ω presentation with [`OMEGA_AMENDED_ENTRY`] replaced, i.e.
/// the transpose of the first four rows of `A′` up to column signs.
pub fn amended_omega_presentation() -> Presentation {
    omega_presentation_with(OMEGA_AMENDED_ENTRY.2)
}

fn omega_presentation_with(entry: &str) -> Presentation {
    let ring = Ring::new(&GL3_CUT);
    let m = ModMatrix::parse(
        &ring,
        &[vec!["y1", "x2", "x1", "0"], vec!["y1*u13-u12", "0", entry, "u12*u23"]],
    )
    .expect("static matrix parses");
    Presentation::new(m)
}

/// The component of `Y_w` (cut at `d = 0`) rederived from the incidence
/// equations by saturation. For `n = 3`, `w = w0` the result must equal
/// [`iw0_gl3`] as reduced Gröbner bases, else `ComponentMismatch`.
pub fn rederive_component(n: usize, w: &WeylElem) -> Result<Ideal, ModelError> {
    let chart = Chart::new(n)?;
    let cut = chart.component_cut(w)?;
    if n == 3 && w.factor(0) == &Perm::longest(3) && !cut.same_as(&iw0_gl3().ideal) {
        return Err(ModelError::ComponentMismatch);
    }
    Ok(cut)
}

type ComponentCache = Mutex<HashMap<(usize, Perm), Arc<SteinbergComponent>>>;

/// Component of the cut chart with its resolution and ω presentation,
/// computed once per `(n, w)`. The `GL3` `w0` component uses the printed
/// generators; every other one is rederived.
pub fn component(n: usize, w: &WeylElem) -> Result<Arc<SteinbergComponent>, ModelError> {
    static CACHE: OnceLock<ComponentCache> = OnceLock::new();
    let chart = Chart::new(n)?;
    let p = chart.single_factor(w)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(n, p.clone())) {
        return Ok(c.clone());
    }
    let base = if n == 3 && p == Perm::longest(3) {
        iw0_gl3()
    } else {
        SteinbergComponent::new(n, w.clone(), rederive_component(n, w)?)
    };
    let built = Arc::new(base.with_omega()?);
    cache.lock().unwrap().insert((n, p), built.clone());
    Ok(built)
}

/// `dim ω ⊗ k(pt)` for a point of the component.
pub fn omega_fiber(comp: &SteinbergComponent, pt: &[Rat]) -> Result<usize, ModelError> {
    comp.ideal.vanishes_at(pt)?;
    let owned;
    let omega = match &comp.omega {
        Some(o) => o,
        None => {
            owned = comp.clone().with_omega()?.omega.expect("filled by with_omega");
            &owned
        }
    };
    Ok(omega.fiber_dim(pt)?)
}

/// `dim T X_w` at the point `(B, B, 0)` of the `GL3` Steinberg variety:
/// `9 + lg(w) − ℓ(w)`, using that every `GL3` Schubert variety is smooth.
pub fn tangent_dim_formula(w: &WeylElem) -> Result<usize, ModelError> {
    if w.n() != 3 || w.taus() != 1 {
        return Err(ModelError::Unsupported("tangent formula is for a single S3 factor".into()));
    }
    Ok(9 + w.coxeter_length() - w.reflection_length())
}

/// Jacobian tangent dimension of `Y_w` (diagonal variables kept) at a point
/// of the full chart.
pub fn tangent_dim_with_diagonal(
    n: usize,
    w: &WeylElem,
    point: &[Rat],
) -> Result<usize, ModelError> {
    let ideal = Chart::new(n)?.component_with_diagonal(w)?;
    Ok(ideal.tangent_dim(point)?)
}

/// Tangent dimension of the 6-dimensional `Y_{w0}` at the origin of the
/// 9-variable chart; the formula predicts `11 − 3 = 8`.
pub fn jacobian_crosscheck_w0() -> Result<usize, ModelError> {
    let origin = vec![Rat::zero(); GL3_FULL.len()];
    tangent_dim_with_diagonal(3, &WeylElem::longest(3, 1), &origin)
}

/// Seeded sampler of rational points on components.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn nonzero(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=5);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    fn small(&mut self) -> i64 {
        self.rng.gen_range(-5..=5)
    }

    /// Flags `(x1, x2, y1)` in the open cell of `w` (`GL3`).
    pub fn cell_flags(&mut self, w: &Perm) -> [Rat; 3] {
        let chart = Chart::new(3).expect("n = 3 chart");
        let (a, b) = (self.nonzero(), self.nonzero());
        let mut pt = chart.cell_point(&WeylElem::single(w.clone()), (a, b)).expect("valid cell");
        if cell_name(w) == "w0" {
            loop {
                pt[0] = rat(self.small());
                pt[2] = rat(self.small());
                if !(&(&pt[0] * &pt[2]) + &pt[1]).is_zero() {
                    break;
                }
            }
        }
        [pt[0].clone(), pt[1].clone(), pt[2].clone()]
    }

    /// A point of a variety cut out by equations linear in the trailing
    /// `free` variables once the leading coordinates are fixed: a random
    /// combination of the kernel of that linear system.
    fn fill_linear(&mut self, ideal: &Ideal, lead: &[Rat], free: usize) -> Vec<Rat> {
        let n = ideal.ring().nvars();
        let mut rows = Vec::new();
        for g in ideal.gens() {
            let mut row = Vec::with_capacity(free);
            let mut base = lead.to_vec();
            base.extend(std::iter::repeat_n(Rat::zero(), free));
            for j in 0..free {
                let mut p = base.clone();
                p[n - free + j] = Rat::one();
                row.push(g.eval(&p) - g.eval(&base));
            }
            rows.push(row);
        }
        let ker = nullspace_q(&rows, free);
        let mut tail = vec![Rat::zero(); free];
        for v in &ker {
            let c = rat(self.small());
            for (t, x) in tail.iter_mut().zip(v) {
                *t += &c * x;
            }
        }
        let mut out = lead.to_vec();
        out.extend(tail);
        out
    }

    /// A random point of the `GL3` `w0` cut component lying over flags in
    /// the cell of `w`; `N` ranges over the fiber of the component there.
    pub fn iw0_point_over(&mut self, w: &Perm) -> Vec<Rat> {
        let flags = self.cell_flags(w);
        let ideal = iw0_gl3().ideal;
        let pt = self.fill_linear(&ideal, &flags, 3);
        debug_assert!(ideal.vanishes_at(&pt).is_ok());
        pt
    }

    /// A random point of `Y_w` (diagonal kept) over the open cell of `w`,
    /// in the order of [`Chart::ring`].
    pub fn y_point(&mut self, w: &Perm) -> Vec<Rat> {
        let chart = Chart::new(3).expect("n = 3 chart");
        let flags = self.cell_flags(w);
        // over the open cell the fiber of Y_w is the solution space of the
        // incidence equations, which are linear in (d, u)
        let inc = chart.incidence_ideal();
        let moved = Ring::new(&["x1", "x2", "y1", "d1", "d2", "d3", "u12", "u23", "u13"]);
        let pt = self.fill_linear(&inc.map_to(&moved).expect("same names"), &flags, 6);
        let by_name: HashMap<&str, &Rat> =
            moved.names().iter().map(String::as_str).zip(&pt).collect();
        GL3_FULL.iter().map(|v| by_name[v].clone()).collect()
    }
}

/// How the two flags of one factor compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagRelation {
    Equal,
    Distinct,
    /// Not specified; read as equal flags.
    Na,
}

/// One embedding's data: the component `w_τ` and the flag relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdRFactor {
    pub w: Perm,
    pub flags: FlagRelation,
}

/// A point `x_pdR` of a product of `GL3` Steinberg components, with
/// `N_τ = 0` whenever `w_τ = w0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdRPointSpec {
    pub factors: Vec<PdRFactor>,
}

impl PdRPointSpec {
    pub fn new(factors: Vec<PdRFactor>) -> Result<Self, ModelError> {
        if factors.is_empty() {
            return Err(ModelError::InvalidSpec("at least one factor is required".into()));
        }
        for f in &factors {
            if f.w.n() != 3 {
                return Err(ModelError::InvalidSpec(format!("{} is not in S3", f.w)));
            }
            if f.w.is_identity() && f.flags == FlagRelation::Distinct {
                return Err(ModelError::InvalidSpec(
                    "w = e forces the two flags to be equal".into(),
                ));
            }
        }
        Ok(PdRPointSpec { factors })
    }

    /// Number of factors with `w_τ = w0` and equal flags.
    pub fn r(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.w == Perm::longest(3) && f.flags != FlagRelation::Distinct)
            .count()
    }

    /// The `N = 0` point of each factor's cut chart.
    pub fn factor_points(&self) -> Result<Vec<Vec<Rat>>, ModelError> {
        let chart = Chart::new(3)?;
        self.factors
            .iter()
            .map(|f| match f.flags {
                FlagRelation::Distinct => chart.cell_point(&WeylElem::single(f.w.clone()), (1, 1)),
                _ => Ok(vec![Rat::zero(); GL3_CUT.len()]),
            })
            .collect()
    }
}

impl FromStr for PdRPointSpec {
    type Err = ModelError;

    /// `w0:equal,w0:distinct,s1s2:na`; a missing relation means `na`.
    fn from_str(s: &str) -> Result<Self, ModelError> {
        let mut factors = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (w, rel) = tok.split_once(':').unwrap_or((tok, "na"));
            let w = WeylElem::parse(w, 3).map_err(|e| ModelError::InvalidSpec(e.to_string()))?;
            let flags = match rel.trim() {
                "equal" => FlagRelation::Equal,
                "distinct" => FlagRelation::Distinct,
                "na" => FlagRelation::Na,
                other => {
                    return Err(ModelError::InvalidSpec(format!("unknown flag relation {other:?}")))
                }
            };
            factors.push(PdRFactor { w: w.factor(0).clone(), flags });
        }
        PdRPointSpec::new(factors)
    }
}

impl fmt::Display for PdRPointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|p| {
                let rel = match p.flags {
                    FlagRelation::Equal => "equal",
                    FlagRelation::Distinct => "distinct",
                    FlagRelation::Na => "na",
                };
                format!("{}:{rel}", WeylElem::single(p.w.clone()).to_word_string())
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Per-factor ω fibers at the points of the spec, each computed from that
/// factor's own resolution.
pub fn factor_omega_fibers(spec: &PdRPointSpec) -> Result<Vec<usize>, ModelError> {
    let points = spec.factor_points()?;
    spec.factors
        .iter()
        .zip(&points)
        .map(|(f, pt)| omega_fiber(&*component(3, &WeylElem::single(f.w.clone()))?, pt))
        .collect()
}

/// `dim ω_{X_w} ⊗ k(x_pdR)` as the product of the per-factor fibers.
pub fn product_omega_fiber(spec: &PdRPointSpec) -> Result<usize, ModelError> {
    Ok(factor_omega_fibers(spec)?.into_iter().product())
}

/// Summary of one component used by reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComponentSummary {
    pub component: String,
    pub betti: Vec<usize>,
    pub dim: i64,
    pub omega_fiber_origin: usize,
    pub tangent_dim: usize,
}

pub fn summarize(n: usize, w: &WeylElem) -> Result<ComponentSummary, ModelError> {
    let comp = component(n, w)?;
    let origin = vec![Rat::zero(); comp.ideal.ring().nvars()];
    let full_origin = vec![Rat::zero(); Chart::new(n)?.ring().nvars()];
    Ok(ComponentSummary {
        component: format!("GL{n}:{}", w.to_word_string()),
        betti: comp.resolution.as_ref().map(Resolution::betti).unwrap_or_default(),
        dim: comp.dim(),
        omega_fiber_origin: omega_fiber(&comp, &origin)?,
        tangent_dim: tangent_dim_with_diagonal(n, w, &full_origin)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> WeylElem {
        WeylElem::parse(text, 3).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn chart_incidence_contains_y0_relation() {
        let chart = Chart::new(3).unwrap();
        let r = chart.ring();
        let lhs = &(&chart.y0() + &(&r.var("x1") * &r.var("y1"))) + &r.var("x2");
        assert!(lhs.is_zero());
        assert_eq!(chart.incidence_ideal().gens().len(), 3);
    }

    #[test]
    fn iw0_basics() {
        let c = iw0_gl3();
        assert_eq!(c.ideal.gens().len(), 4);
        assert_eq!(c.dim(), 3);
        let u = Ideal::parse(c.ideal.ring(), &["u12", "u13", "u23"]).unwrap();
        assert!(u.contains_ideal(&c.ideal));
    }

    #[test]
    fn gl2_components() {
        let s = WeylElem::parse("s1", 2).unwrap();
        let e = WeylElem::parse("e", 2).unwrap();
        let r = Ring::new(&GL2_CUT);
        assert!(rederive_component(2, &s).unwrap().same_as(&Ideal::parse(&r, &["u*x"]).unwrap()));
        assert!(rederive_component(2, &e).unwrap().same_as(&Ideal::parse(&r, &["x"]).unwrap()));
        let full = Chart::new(2).unwrap().component_with_diagonal(&s).unwrap();
        let expect = Ideal::parse(full.ring(), &["d2-d1-u*x"]).unwrap();
        assert!(full.same_as(&expect));
        assert_eq!(tangent_dim_with_diagonal(2, &s, &pt(&[0, 0, 0, 0])).unwrap(), 3);
    }

    #[test]
    fn tangent_formula_values() {
        assert_eq!(tangent_dim_formula(&w("e")).unwrap(), 9);
        assert_eq!(tangent_dim_formula(&w("s1s2")).unwrap(), 9);
        assert_eq!(tangent_dim_formula(&w("w0")).unwrap(), 11);
        assert!(tangent_dim_formula(&WeylElem::parse("e", 2).unwrap()).is_err());
    }

    #[test]
    fn verbatim_transcription_is_rejected_and_amendment_validates() {
        let (ap, a, app) = printed_matrices_gl3();
        assert_eq!((ap.shape(), a.shape(), app.shape()), ((6, 2), (5, 6), (1, 5)));
        assert!(app.mul(&a).unwrap().is_zero());
        match printed_resolution_gl3() {
            Err(ModelError::TranscriptionMismatch(msg)) => assert!(msg.contains("A*A'"), "{msg}"),
            other => panic!("expected a mismatch, got {other:?}"),
        }
        let res = amended_resolution_gl3().unwrap();
        assert_eq!(res.betti(), vec![1, 5, 6, 2]);
    }

    #[test]
    fn spec_parsing() {
        let s: PdRPointSpec = "w0:equal,w0:distinct,s1s2:na".parse().unwrap();
        assert_eq!(s.factors.len(), 3);
        assert_eq!(s.r(), 1);
        assert_eq!(s.to_string(), "s1s2s1:equal,s1s2s1:distinct,s1s2:na");
        assert!("e:distinct".parse::<PdRPointSpec>().is_err());
        assert!("w0:sideways".parse::<PdRPointSpec>().is_err());
        assert!("".parse::<PdRPointSpec>().is_err());
    }

    #[test]
    fn cell_points_lie_in_their_cells() {
        let chart = Chart::new(3).unwrap();
        for p in Perm::all(3) {
            let we = WeylElem::single(p.clone());
            let point = chart.cell_point(&we, (2, 3)).unwrap();
            let (closed, open) = chart.cell(&p).unwrap();
            let mut full = vec![Rat::zero(); 3];
            full.extend(point[..3].iter().cloned());
            full.extend(std::iter::repeat_n(Rat::zero(), 3));
            assert!(closed.iter().all(|g| g.eval(&full).is_zero()), "{p}");
            assert!(!open.eval(&full).is_zero(), "{p}");
        }
    }

    #[test]
    fn sampler_lands_on_the_variety() {
        let mut s = PointSampler::new(7);
        let ideal = iw0_gl3().ideal;
        for p in Perm::all(3) {
            let x = s.iw0_point_over(&p);
            assert!(ideal.vanishes_at(&x).is_ok());
        }
    }
}

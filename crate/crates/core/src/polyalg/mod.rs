//! Exact commutative algebra over `Q`: polynomials, Gröbner bases for ideals
//! and submodules of free modules, elimination, saturation, syzygies, free
//! resolutions, top Ext modules and fiber dimensions.

mod gb;
pub mod ideal;
pub mod matrix;
pub mod order;
pub mod poly;
pub mod resolution;
pub mod selfcheck;

pub use ideal::Ideal;
pub use matrix::{nullspace_q, rank_over_q, ColumnModule, ModMatrix};
pub use order::{ModuleOrder, MonomialOrder, TermOrder};
pub use poly::{rat, rat_frac, Poly, Rat, Ring};
pub use resolution::{
    ext_top, free_resolution, is_exact_at, resolve_presentation, Presentation, Resolution,
};

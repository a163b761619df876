//! Exact verification toolkit for GL3 Steinberg local models: Weyl group
//! combinatorics, a rational commutative-algebra kernel, component ideals and
//! dualizing-sheaf fibers, category O multiplicity bookkeeping, and prime
//! splitting checks for the field towers used to build very critical forms.

pub mod cato;
pub mod error;
pub mod models;
pub mod numtheory;
pub mod polyalg;
pub mod weyl;

pub use error::{AlgebraError, CatOError, ModelError, NumberTheoryError, WeylError};
pub use polyalg::{Ideal, ModMatrix, MonomialOrder, Poly, Presentation, Rat, Resolution, Ring};
pub use weyl::{IntWeight, Perm, SimpleSubset, WeylElem};

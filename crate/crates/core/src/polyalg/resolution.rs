use super::ideal::Ideal;
use super::matrix::ModMatrix;
use super::order::MonomialOrder;
use super::poly::{Rat, Ring};
use crate::error::AlgebraError;

/// A complex `F_c → … → F_1 → F_0` stored as its differentials
/// `d_1, …, d_c` with `d_i : F_i → F_{i-1}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Ring,
    maps: Vec<ModMatrix>,
}

impl Resolution {
    pub fn new(ring: &Ring, maps: Vec<ModMatrix>) -> Result<Self, AlgebraError> {
        for w in maps.windows(2) {
            if w[0].cols() != w[1].rows() {
                return Err(AlgebraError::Shape(format!(
                    "differentials {}x{} and {}x{} do not compose",
                    w[0].rows(),
                    w[0].cols(),
                    w[1].rows(),
                    w[1].cols()
                )));
            }
        }
        Ok(Resolution { ring: ring.clone(), maps })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Ranks of `F_0, F_1, …, F_c`.
    pub fn betti(&self) -> Vec<usize> {
        match self.maps.first() {
            None => vec![1],
            Some(d1) => {
                let mut b = vec![d1.rows()];
                b.extend(self.maps.iter().map(ModMatrix::cols));
                b
            }
        }
    }

    /// Every consecutive composite vanishes.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// Exactness at `F_1, …, F_{c-1}` plus injectivity of `d_c`.
    pub fn is_acyclic(&self) -> Result<bool, AlgebraError> {
        for w in self.maps.windows(2) {
            if !is_exact_at(&w[0], &w[1])? {
                return Ok(false);
            }
        }
        Ok(self.maps.last().is_none_or(|d| d.syzygies(MonomialOrder::GrevLex).cols() == 0))
    }
}

fn resolve_from(d1: ModMatrix, max_len: usize) -> Result<Resolution, AlgebraError> {
    let ring = d1.ring().clone();
    let mut maps = vec![d1];
    loop {
        let last = maps.last().unwrap();
        let next = last.syzygies(MonomialOrder::GrevLex).prune_columns();
        if next.cols() == 0 {
            break;
        }
        if maps.len() >= max_len {
            return Err(AlgebraError::LengthExceeded(max_len));
        }
        maps.push(next);
    }
    Resolution::new(&ring, maps)
}

/// Resolution of `R/I`, minimal for (weighted) homogeneous ideals: the
/// generators of `I` and of every syzygy module are pruned to irredundant
/// sets, which removes every constant pivot between consecutive maps.
pub fn free_resolution(ideal: &Ideal, max_len: usize) -> Result<Resolution, AlgebraError> {
    let ring = ideal.ring();
    if ideal.gens().is_empty() {
        return Resolution::new(ring, Vec::new());
    }
    let d1 = ModMatrix::row(ring, ideal.gens().to_vec()).prune_columns();
    resolve_from(d1, max_len)
}

/// Resolution that keeps the given augmentation row verbatim and only
/// minimalizes from the first syzygy module on.
pub fn resolve_presentation(row: &ModMatrix, max_len: usize) -> Result<Resolution, AlgebraError> {
    if row.rows() != 1 {
        return Err(AlgebraError::Shape("augmentation must be a single row".into()));
    }
    resolve_from(row.clone(), max_len)
}

/// Whether `ker(b) = im(c)` for composable `b ∘ c = 0`.
pub fn is_exact_at(b: &ModMatrix, c: &ModMatrix) -> Result<bool, AlgebraError> {
    if !b.mul(c)?.is_zero() {
        return Err(AlgebraError::NotAComplex);
    }
    let kernel = b.syzygies(MonomialOrder::GrevLex);
    let image = c.column_module();
    Ok(kernel.columns().iter().all(|v| image.contains(v)))
}

/// A module given as `coker(relations : R^a → R^b)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub target_rank: usize,
    pub relations: ModMatrix,
}

impl Presentation {
    pub fn new(relations: ModMatrix) -> Self {
        Presentation { target_rank: relations.rows(), relations }
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    /// `dim_k M ⊗ k(pt) = b − rank(relations(pt))`.
    pub fn fiber_dim(&self, point: &[Rat]) -> Result<usize, AlgebraError> {
        if point.len() != self.ring().nvars() {
            return Err(AlgebraError::Shape("point arity does not match the ring".into()));
        }
        Ok(self.target_rank - self.relations.rank_at(point))
    }
}

/// `Ext^c(R/I, R)` for `c = codim I`, as the cokernel of the transposed last
/// differential. Requires the resolution length to equal the codimension.
pub fn ext_top(ideal: &Ideal, res: &Resolution) -> Result<Presentation, AlgebraError> {
    let codim = ideal.codim();
    if res.length() > codim {
        return Err(AlgebraError::NotCM { length: res.length(), codim });
    }
    if res.length() < codim {
        return Err(AlgebraError::Shape(format!(
            "resolution of length {} is shorter than the codimension {codim}",
            res.length()
        )));
    }
    let last = res.maps().last().ok_or_else(|| AlgebraError::Shape("empty resolution".into()))?;
    Ok(Presentation::new(last.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::rat;

    #[test]
    fn hypersurface_and_koszul() {
        let r = Ring::new(&["x", "y", "z"]);
        let hyp = Ideal::parse(&r, &["x"]).unwrap();
        let res = free_resolution(&hyp, 5).unwrap();
        assert_eq!(res.betti(), vec![1, 1]);
        let omega = ext_top(&hyp, &res).unwrap();
        assert_eq!(omega.fiber_dim(&[rat(0), rat(3), rat(1)]).unwrap(), 1);
        assert_eq!(omega.fiber_dim(&[rat(1), rat(0), rat(0)]).unwrap(), 0);

        let ci = Ideal::parse(&r, &["x", "y"]).unwrap();
        let res = free_resolution(&ci, 5).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 1]);
        assert!(res.is_complex());
        assert!(res.is_acyclic().unwrap());
        let omega = ext_top(&ci, &res).unwrap();
        assert_eq!(omega.target_rank, 1);
        assert_eq!(omega.fiber_dim(&[rat(0), rat(0), rat(7)]).unwrap(), 1);
    }

    #[test]
    fn exactness_checks() {
        let r = Ring::new(&["x", "y"]);
        let d1 = ModMatrix::parse(&r, &[vec!["x", "y"]]).unwrap();
        let d2 = ModMatrix::parse(&r, &[vec!["y"], vec!["-x"]]).unwrap();
        assert!(is_exact_at(&d1, &d2).unwrap());
        assert_eq!(is_exact_at(&d1, &d1.transpose()), Err(AlgebraError::NotAComplex));

        let r1 = Ring::new(&["x"]);
        let zero = ModMatrix::zeros(&r1, 1, 1);
        assert!(!is_exact_at(&zero, &zero).unwrap());
    }

    #[test]
    fn non_cm_is_rejected() {
        // two planes meeting in a point: (x,y) ∩ (z,w), depth 1 < dim 2
        let r = Ring::new(&["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["x*z", "x*w", "y*z", "y*w"]).unwrap();
        let res = free_resolution(&i, 6).unwrap();
        assert_eq!(res.betti(), vec![1, 4, 4, 1]);
        assert!(matches!(ext_top(&i, &res), Err(AlgebraError::NotCM { length: 3, codim: 2 })));
    }
}

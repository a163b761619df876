use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gb::{self, Vect};
use super::order::{ModuleOrder, MonomialOrder, TermOrder};
use super::poly::{Poly, Rat, Ring};
use crate::error::AlgebraError;

/// Rank of a rational matrix by fraction-free elimination.
///
/// Rows are cleared to primitive integer vectors first; every elimination
/// step is a cross-multiplication followed by content removal, so no
/// division by a pivot ever happens.
pub fn rank_over_q(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let den = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            r.iter().map(|c| c.numer() * (&den / c.denom())).collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let a = m[rank][col].clone();
            let b = m[r][col].clone();
            let (top, rest) = m.split_at_mut(r);
            let pivot_row = &top[rank];
            let row = &mut rest[0];
            let mut content = BigInt::zero();
            for c in 0..ncols {
                row[c] = &row[c] * &a - &pivot_row[c] * &b;
                content = content.gcd(&row[c]);
            }
            if !content.is_zero() && !content.is_one() {
                for v in row.iter_mut() {
                    *v /= &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right kernel `{v : rows · v = 0}` of a rational matrix with
/// `ncols` columns, read off the reduced row echelon form.
pub fn nullspace_q(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                #[allow(clippy::needless_range_loop)]
                for c in 0..ncols {
                    let t = &m[r][c] * &f;
                    m[i][c] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); ncols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// A matrix over the polynomial ring, read as a map `R^cols → R^rows`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Poly>>,
}

impl ModMatrix {
    pub fn new(ring: &Ring, entries: Vec<Vec<Poly>>) -> Result<Self, AlgebraError> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::Shape("ragged matrix".into()));
        }
        Ok(ModMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        ModMatrix { ring: ring.clone(), rows, cols, entries: vec![vec![ring.zero(); cols]; rows] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i][i] = ring.one();
        }
        m
    }

    /// Builds a `rows × columns.len()` matrix from its columns.
    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vec<Poly>]) -> Self {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, p) in col.iter().enumerate() {
                m.entries[i][j] = p.clone();
            }
        }
        m
    }

    /// A single row `1 × k`.
    pub fn row(ring: &Ring, entries: Vec<Poly>) -> Self {
        let cols = entries.len();
        ModMatrix { ring: ring.clone(), rows: 1, cols, entries: vec![entries] }
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, rows: &[Vec<S>]) -> Result<Self, AlgebraError> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r][c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Poly> {
        self.entries.iter().map(|r| r[c].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> ModMatrix {
        let entries = (0..self.cols).map(|c| self.column(c)).collect();
        ModMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix, AlgebraError> {
        if self.cols != other.rows || self.ring != other.ring {
            return Err(AlgebraError::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                        acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Vec<Rat>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect()
    }

    pub fn rank_at(&self, point: &[Rat]) -> usize {
        rank_over_q(&self.eval(point))
    }

    pub fn map_to(&self, ring: &Ring) -> Result<ModMatrix, AlgebraError> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.map_to(ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        ModMatrix::new(ring, entries).map(|mut m| {
            m.rows = self.rows;
            m.cols = self.cols;
            m
        })
    }

    /// Generators of `ker(self) ⊂ R^cols`, as the columns of a `cols × s` matrix.
    ///
    /// Uses the graph module `{(M v, v)}` in `R^(rows+cols)` under a
    /// position-over-term order with the image components largest: basis
    /// elements whose leads sit in the `v` part vanish in the image part.
    pub fn syzygies(&self, mono: MonomialOrder) -> ModMatrix {
        let ord = TermOrder::new(mono, ModuleOrder::Pot);
        let gens: Vec<Vect> = (0..self.cols)
            .map(|j| {
                let mut v = self.column(j);
                v.extend((0..self.cols).map(|k| {
                    if k == j {
                        self.ring.one()
                    } else {
                        self.ring.zero()
                    }
                }));
                Vect::from_polys(&v, &ord)
            })
            .collect();
        let basis = gb::groebner(gens, &ord, None).expect("unbounded");
        let syz: Vec<Vec<Poly>> = basis
            .iter()
            .filter(|v| v.lead().is_some_and(|t| t.comp >= self.rows))
            .map(|v| v.to_polys(&self.ring, self.rows + self.cols).split_off(self.rows))
            .collect();
        ModMatrix::from_columns(&self.ring, self.cols, &syz)
    }

    /// Gröbner basis of the column module, for repeated membership tests.
    pub fn column_module(&self) -> ColumnModule {
        ColumnModule::new(&self.ring, self.rows, &self.columns())
    }

    /// Drops columns lying in the span of the remaining ones, last first.
    /// For (weighted) homogeneous input the survivors are a minimal
    /// generating set.
    pub fn prune_columns(&self) -> ModMatrix {
        let mut cols: Vec<Vec<Poly>> =
            self.columns().into_iter().filter(|c| c.iter().any(|p| !p.is_zero())).collect();
        let mut k = cols.len();
        while k > 0 {
            k -= 1;
            let others: Vec<Vec<Poly>> =
                cols.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, c)| c.clone()).collect();
            if ColumnModule::new(&self.ring, self.rows, &others).contains(&cols[k]) {
                cols.remove(k);
            }
        }
        ModMatrix::from_columns(&self.ring, self.rows, &cols)
    }

    pub fn to_json(&self) -> String {
        let strs: Vec<Vec<String>> =
            self.entries.iter().map(|r| r.iter().map(Poly::to_string).collect()).collect();
        serde_json::to_string(&strs).unwrap()
    }

    pub fn from_json(ring: &Ring, text: &str) -> Result<ModMatrix, AlgebraError> {
        let strs: Vec<Vec<String>> =
            serde_json::from_str(text).map_err(|e| AlgebraError::Serde(e.to_string()))?;
        Self::parse(ring, &strs)
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(Poly::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}\n{}", self.rows, self.cols, self)
    }
}

/// A submodule of `R^rank` with its Gröbner basis.
pub struct ColumnModule {
    ring: Ring,
    rank: usize,
    ord: TermOrder,
    basis: Vec<Vect>,
}

impl ColumnModule {
    pub fn new(ring: &Ring, rank: usize, gens: &[Vec<Poly>]) -> Self {
        let ord = TermOrder::new(MonomialOrder::GrevLex, ModuleOrder::Pot);
        let vs = gens.iter().map(|g| Vect::from_polys(g, &ord)).collect();
        let basis = gb::groebner(vs, &ord, None).expect("unbounded");
        ColumnModule { ring: ring.clone(), rank, ord, basis }
    }

    pub fn normal_form(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.rank);
        gb::reduce(&Vect::from_polys(v, &self.ord), &self.basis, &self.ord)
            .to_polys(&self.ring, self.rank)
    }

    pub fn contains(&self, v: &[Poly]) -> bool {
        self.normal_form(v).iter().all(Poly::is_zero)
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::{rat, rat_frac};

    #[test]
    fn rational_rank() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat_frac(1, 2), rat(0), rat(1)],
        ];
        assert_eq!(rank_over_q(&m), 2);
        assert_eq!(rank_over_q(&[vec![rat(0), rat(0)]]), 0);
        assert_eq!(rank_over_q(&[]), 0);
    }

    #[test]
    fn nullspace_is_annihilated_and_complementary() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(7)]];
        let ker = nullspace_q(&m, 3);
        assert_eq!(ker.len(), 3 - rank_over_q(&m));
        for v in &ker {
            for row in &m {
                let dot: Rat = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(nullspace_q(&[], 2).len(), 2);
    }

    #[test]
    fn koszul_syzygy() {
        let r = Ring::new(&["x", "y"]);
        let m = ModMatrix::parse(&r, &[vec!["x", "y"]]).unwrap();
        let s = m.syzygies(MonomialOrder::GrevLex).prune_columns();
        assert_eq!(s.shape(), (2, 1));
        let col = s.column(0);
        let expected_a = [r.parse("y").unwrap(), r.parse("-x").unwrap()];
        let expected_b = [r.parse("-y").unwrap(), r.parse("x").unwrap()];
        assert!(col == expected_a || col == expected_b);
        assert!(m.mul(&s).unwrap().is_zero());
    }

    #[test]
    fn identity_has_no_syzygies() {
        let r = Ring::new(&["x", "y"]);
        let s = ModMatrix::identity(&r, 3).syzygies(MonomialOrder::GrevLex);
        assert_eq!(s.cols(), 0);
    }

    #[test]
    fn membership_in_column_module() {
        let r = Ring::new(&["x", "y"]);
        let cm = ColumnModule::new(&r, 2, &[vec![r.parse("x").unwrap(), r.parse("y").unwrap()]]);
        assert!(cm.contains(&[r.parse("x^2").unwrap(), r.parse("x*y").unwrap()]));
        assert!(!cm.contains(&[r.parse("x").unwrap(), r.zero()]));
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::new(&["x", "y"]);
        let m = ModMatrix::parse(&r, &[vec!["x", "0"], vec!["1/3*y^2", "-x*y"]]).unwrap();
        let text = m.to_json();
        assert_eq!(text, r#"[["x","0"],["1/3*y^2","-x*y"]]"#);
        assert_eq!(ModMatrix::from_json(&r, &text).unwrap(), m);
    }
}

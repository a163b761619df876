use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::order::MonomialOrder;
use crate::error::AlgebraError;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An ordered list of variable names. Index 0 is the largest variable in
/// every monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<Vec<String>>);

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate variable {a}");
        }
        Ring(Arc::new(names))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn var(&self, name: &str) -> Poly {
        let i = self.index_of(name).unwrap_or_else(|| panic!("no variable {name}"));
        self.var_at(i)
    }

    pub fn var_at(&self, i: usize) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Poly::monomial(self, e, Rat::one())
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self, Rat::one())
    }

    pub fn parse(&self, text: &str) -> Result<Poly, AlgebraError> {
        Parser { ring: self, src: text.as_bytes(), pos: 0 }.parse_all()
    }

    /// A ring with `extra` prepended, so the new variables are the largest.
    pub fn prepend(&self, extra: &[&str]) -> Ring {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.0.iter().cloned());
        Ring::new(&names)
    }

    /// A name not used by this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0;
        loop {
            let cand = if k == 0 { stem.to_string() } else { format!("{stem}{k}") };
            if self.index_of(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.0.join(","))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn monomial(ring: &Ring, exp: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exp.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Poly::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&vec![0; self.ring.nvars()]).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms.keys().next().unwrap().iter().all(|&e| e == 0) => {
                Some(self.constant_term())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Variables occurring in the polynomial.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    fn check_ring(&self, other: &Poly) {
        assert!(self.ring == other.ring, "ring mismatch: {:?} vs {:?}", self.ring, other.ring);
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * Rat::from_integer(BigInt::from(e[var])));
            }
        }
        out
    }

    /// Substitutes a value for one variable; the ring is unchanged.
    pub fn substitute(&self, var: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            for _ in 0..e[var] {
                coef *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, coef);
        }
        out
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn map_to(&self, target: &Ring) -> Result<Poly, AlgebraError> {
        let map: Vec<Option<usize>> =
            self.ring.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.nvars()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| {
                        AlgebraError::UnknownVariable(self.ring.names()[i].clone())
                    })?;
                    e2[j] = k;
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Terms sorted from largest to smallest in `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Vec<u32>, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<Vec<u32>> {
        self.terms.keys().max_by(|a, b| ord.cmp(a, b)).cloned()
    }

    pub fn leading_coeff(&self, ord: &MonomialOrder) -> Option<Rat> {
        self.leading_monomial(ord).map(|m| self.terms[&m].clone())
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Poly {
        match self.leading_coeff(ord) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    // Exponents add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { std::ops::$tr::$m(&self, &rhs) }
        }
        impl std::ops::$tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { std::ops::$tr::$m(&self, rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Terms in descending graded reverse lexicographic order, no spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.ring.names();
        for (k, (e, c)) in self.sorted_terms(&MonomialOrder::GrevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(
                    |(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) },
                )
                .collect();
            if factors.is_empty() {
                f.write_str(&fmt_rat(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rat(&mag))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recursive-descent reader for `+ - * / ^ ( )`, integer literals and
/// identifiers. Division is only allowed by integer literals.
struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Poly, AlgebraError> {
        let p = self.expr()?;
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&Rat::from_integer(d).recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(self.ring, Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
                Ok(self.ring.var_at(i))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::new(&["x", "y", "z"])
    }

    #[test]
    fn parse_and_print() {
        let r = ring();
        let p = r.parse("u").unwrap_err();
        assert_eq!(p, AlgebraError::UnknownVariable("u".into()));
        let p = r.parse("(x+y)^2 - 2*x*y").unwrap();
        assert_eq!(p.to_string(), "x^2+y^2");
        let q = r.parse("3/2*x^2*y - x + 1").unwrap();
        assert_eq!(q.to_string(), "3/2*x^2*y-x+1");
        assert_eq!(r.parse("-x").unwrap().to_string(), "-x");
        assert_eq!(r.parse("x - x").unwrap().to_string(), "0");
        assert!(r.parse("x +").is_err());
        assert!(r.parse("x/0").is_err());
    }

    #[test]
    fn arithmetic() {
        let r = ring();
        let x = r.var("x");
        let y = r.var("y");
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, r.parse("x^2-y^2").unwrap());
        assert_eq!(p.derivative(0), r.parse("2*x").unwrap());
        assert_eq!(p.eval(&[rat(3), rat(1), rat(0)]), rat(8));
        assert_eq!(p.substitute(1, &rat(2)), r.parse("x^2-4").unwrap());
    }

    fn small_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), -20i64..20, 1i64..6), 0..6)
    }

    proptest! {
        #[test]
        fn printer_output_reparses(terms in small_poly()) {
            let r = ring();
            let p = Poly::from_terms(&r, terms.into_iter().map(|(e, n, d)| (e, rat_frac(n, d))));
            let text = p.to_string();
            let q = r.parse(&text).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), text);
        }
    }
}

//! Prime splitting in the number fields used to build very critical forms:
//! univariate arithmetic over prime fields, totally-split tests, primitive
//! elements of composita, congruence-class searches and the prime
//! conditions imposed on `p` and `ℓ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::NumberTheoryError;
use crate::polyalg::Ring;

/// Largest shift `k` tried when searching for a primitive element `α + k·β`.
pub const MAX_SHIFT: i64 = 20;

/// Largest prime scanned by congruence searches.
pub const PRIME_SEARCH_LIMIT: u64 = 2_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = 17;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&k| is_prime(k)).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// A polynomial with integer coefficients, stored from the constant term up.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    /// Coefficients from the constant term up; degree must be at least 1.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, NumberTheoryError> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(NumberTheoryError::Degenerate);
        }
        Ok(ZPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, NumberTheoryError> {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses text in the variable `x`, e.g. `x^3-x^2-4*x-1`.
    pub fn parse(text: &str) -> Result<Self, NumberTheoryError> {
        let ring = Ring::new(&["x"]);
        let p = ring.parse(text).map_err(|e| NumberTheoryError::Parse(e.to_string()))?;
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (e, c) in p.terms() {
            if !c.is_integer() {
                return Err(NumberTheoryError::Parse(format!("non-integer coefficient {c}")));
            }
            coeffs[e[0] as usize] = c.to_integer();
        }
        ZPoly::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn lead(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Reduction modulo `p`, trimmed.
    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> =
            self.coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        fp::trim(&mut v);
        v
    }

    fn check_prime(&self, p: u64) -> Result<(), NumberTheoryError> {
        if !is_prime(p) || (self.lead() % BigInt::from(p)).is_zero() {
            return Err(NumberTheoryError::BadPrime(p));
        }
        Ok(())
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        write!(f, "{out}")
    }
}

/// Dense polynomials over `F_p`, constant term first, no trailing zeros.
mod fp {
    use super::{inv_mod, mul_mod};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = mul_mod(r[top], inv, p);
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(c, mi, p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = inv_mod(l, p);
                a.iter().map(|&c| mul_mod(c, inv, p)).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> =
            a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
        trim(&mut out);
        out
    }

    /// `base^e mod m` by square-and-multiply.
    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    pub fn x() -> Vec<u64> {
        vec![0, 1]
    }
}

/// Residue of `x^p` in `F_p[x]/(f)`, constant term first.
pub fn frobenius_power(f: &ZPoly, p: u64) -> Result<Vec<u64>, NumberTheoryError> {
    f.check_prime(p)?;
    Ok(fp::pow_rem(&fp::x(), p, &f.mod_p(p), p))
}

/// The same residue by `p` successive multiplications by `x`.
pub fn frobenius_power_naive(f: &ZPoly, p: u64) -> Result<Vec<u64>, NumberTheoryError> {
    f.check_prime(p)?;
    let m = f.mod_p(p);
    let mut r = fp::rem(&[1], &m, p);
    for _ in 0..p {
        r = fp::rem(&fp::mul(&r, &fp::x(), p), &m, p);
    }
    Ok(r)
}

fn squarefree_mod(f: &ZPoly, p: u64) -> bool {
    let m = f.mod_p(p);
    fp::gcd(&m, &fp::derivative(&m, p), p).len() == 1
}

/// `f mod p` is squarefree and `x^p ≡ x`: `f` has `deg f` distinct roots in `F_p`.
pub fn is_totally_split(f: &ZPoly, p: u64) -> Result<bool, NumberTheoryError> {
    let frob = frobenius_power(f, p)?;
    let x = fp::rem(&fp::x(), &f.mod_p(p), p);
    Ok(squarefree_mod(f, p) && frob == x)
}

/// Degrees of the irreducible factors of a squarefree `f mod p`, by
/// distinct-degree factorization; `None` when `f mod p` is not squarefree.
pub fn degree_pattern(f: &ZPoly, p: u64) -> Result<Option<Vec<usize>>, NumberTheoryError> {
    f.check_prime(p)?;
    if !squarefree_mod(f, p) {
        return Ok(None);
    }
    let mut rest = fp::monic(&f.mod_p(p), p);
    let mut pattern = Vec::new();
    let mut frob = fp::x();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            pattern.push(rest.len() - 1);
            break;
        }
        frob = fp::pow_rem(&frob, p, &rest, p);
        let g = fp::gcd(&rest, &fp::sub(&frob, &fp::x(), p), p);
        let k = g.len() - 1;
        if k > 0 {
            pattern.extend(std::iter::repeat_n(d, k / d));
            rest = divide_exact(&rest, &g, p);
            frob = fp::rem(&frob, &rest, p);
        }
    }
    pattern.sort_unstable();
    Ok(Some(pattern))
}

fn divide_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0; a.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul_mod(r[top], inv, p);
        q[top - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[top - db + i] = (r[top - db + i] + p - mul_mod(c, bi, p)) % p;
        }
        fp::trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact division");
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::zero()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn has_rational_root(f: &ZPoly) -> bool {
    let c0 = &f.coeffs[0];
    if c0.is_zero() {
        return true;
    }
    for num in divisors(c0) {
        for den in divisors(f.lead()) {
            for s in [1, -1] {
                // f(num/den)·den^deg = Σ c_i num^i den^(deg−i)
                let n: BigInt = &num * s;
                let deg = f.degree() as u32;
                let v: BigInt = f
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * n.pow(i as u32) * den.pow(deg - i as u32))
                    .sum();
                if v.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether a monic quartic has a monic integer quadratic factor
/// `x² + a·x + b`, searching `b | f(0)` and `a` within twice the root bound.
fn monic_quartic_has_quadratic_factor(f: &ZPoly) -> bool {
    let bound: BigInt = f.coeffs.iter().map(|c| c.abs()).max().unwrap() + 1;
    let bound = bound.to_i64().unwrap_or(i64::MAX / 4).min(1 << 20);
    for b in divisors(&f.coeffs[0]) {
        for b in [b.clone(), -b] {
            for a in -2 * bound..=2 * bound {
                let q = [b.clone(), BigInt::from(a), BigInt::one()];
                if divides_over_z(&q, &f.coeffs) {
                    return true;
                }
            }
        }
    }
    false
}

fn divides_over_z(monic_q: &[BigInt], f: &[BigInt]) -> bool {
    let dq = monic_q.len() - 1;
    let mut r = f.to_vec();
    while r.len() > dq {
        let c = r.pop().unwrap();
        let top = r.len();
        for i in 0..dq {
            r[top - dq + i] -= &c * &monic_q[i];
        }
    }
    r.iter().all(Zero::is_zero)
}

/// Certifies irreducibility over `Q`: an irreducible reduction modulo some
/// small prime, or for degree ≤ 3 the absence of rational roots, or for monic
/// quartics the absence of rational roots and of integer quadratic factors.
pub fn certify_irreducible(f: &ZPoly) -> Result<(), NumberTheoryError> {
    for p in primes_below(200) {
        if f.check_prime(p).is_ok() {
            if let Some(pat) = degree_pattern(f, p)? {
                if pat == [f.degree()] {
                    return Ok(());
                }
            }
        }
    }
    let reducible = || Err(NumberTheoryError::Reducible(f.to_string()));
    if has_rational_root(f) {
        return reducible();
    }
    match f.degree() {
        1..=3 => Ok(()),
        4 if f.lead().is_one() => {
            if monic_quartic_has_quadratic_factor(f) {
                reducible()
            } else {
                Ok(())
            }
        }
        _ => Err(NumberTheoryError::NotCertified(f.to_string())),
    }
}

/// Fraction-free determinant (Bareiss).
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two integer polynomials (constant term first) via the
/// Sylvester matrix.
fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    determinant(s)
}

/// Coefficients in `y` of `f(x0 − k·y)`.
fn shifted(f: &ZPoly, x0: &BigInt, k: i64) -> Vec<BigInt> {
    // Horner in the polynomial ring: acc ← acc·(x0 − k·y) + c
    let lin = [x0.clone(), BigInt::from(-k)];
    let mut acc: Vec<BigInt> = vec![BigInt::zero()];
    for c in f.coeffs.iter().rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] += a * &lin[0];
            next[i + 1] += a * &lin[1];
        }
        next[0] += c;
        acc = next;
    }
    while acc.len() > 1 && acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc
}

fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial ∏_{j≠i} (x − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= b * BigRational::from(xs[j].clone());
            }
            basis = next;
            denom *= BigRational::from(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from(ys[i].clone()) / denom;
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += b * &scale;
        }
    }
    out
}

fn squarefree_over_q(f: &[BigInt]) -> bool {
    let to_q = |v: &[BigInt]| v.iter().cloned().map(BigRational::from).collect::<Vec<_>>();
    let mut a = to_q(f);
    let mut b: Vec<BigRational> =
        f.iter().enumerate().skip(1).map(|(i, c)| BigRational::from(c * BigInt::from(i))).collect();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let mut r = a.clone();
        let db = b.len() - 1;
        while r.len() > db {
            let c = r.last().unwrap() / b.last().unwrap();
            let top = r.len() - 1;
            for (i, bi) in b.iter().enumerate() {
                let t = &c * bi;
                r[top - db + i] -= t;
            }
            trim(&mut r);
        }
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Minimal polynomial of `α + k·β` for the smallest `k ∈ [1, MAX_SHIFT]`
/// making `Res_y(f(x − k·y), g(y))` squarefree. Computed by evaluating the
/// resultant at `deg f·deg g + 1` integers and interpolating.
pub fn compositum_poly(f: &ZPoly, g: &ZPoly) -> Result<ZPoly, NumberTheoryError> {
    let d = f.degree() * g.degree();
    let xs: Vec<BigInt> = (0..=d as i64).map(BigInt::from).collect();
    for k in 1..=MAX_SHIFT {
        let ys: Vec<BigInt> = xs.iter().map(|x| resultant(&shifted(f, x, k), &g.coeffs)).collect();
        let q = interpolate(&xs, &ys);
        if q.iter().any(|c| !c.is_integer()) {
            continue;
        }
        let mut ints: Vec<BigInt> = q.into_iter().map(|c| c.to_integer()).collect();
        while ints.last().is_some_and(Zero::is_zero) {
            ints.pop();
        }
        if ints.len() != d + 1 || !squarefree_over_q(&ints) {
            continue;
        }
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        let ints = ints.into_iter().map(|c| c * sign / &content).collect();
        return ZPoly::new(ints);
    }
    Err(NumberTheoryError::NoShiftFound(MAX_SHIFT))
}

/// A tower of number fields given by one defining polynomial per factor.
/// The first factor is the CM field `E`, the rest generate `F′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub name: String,
    pub polys: Vec<ZPoly>,
    /// Conductor of the compositum when every factor is abelian.
    pub conductor: Option<u64>,
    /// Defining polynomials of `E⁺` (empty for `E⁺ = Q`), when known.
    pub e_plus: Option<Vec<ZPoly>>,
}

/// Names accepted by [`FieldSpec::builtin`].
pub const BUILTIN_FIELD_SETS: [&str; 14] = [
    "Qi",
    "Qsqrt-3",
    "Qsqrt-5",
    "Qi_sqrt3",
    "Qi_sqrt7",
    "zeta7plus",
    "zeta9plus",
    "cubic13",
    "beta43",
    "Qi_cubic13",
    "Qsqrt-3_zeta7plus",
    "Qi_sqrt3_zeta7plus",
    "Qi_sqrt7_beta43",
    "Qsqrt-5_zeta9plus",
];

pub const ZETA7_PLUS: &str = "x^3+x^2-2*x-1";
pub const ZETA9_PLUS: &str = "x^3-3*x+1";
pub const CUBIC13: &str = "x^3-x^2-4*x-1";
pub const BETA43: &str = "x^3-x^2-14*x-8";
pub const QI_SQRT3: &str = "x^4-x^2+1";
pub const QI_SQRT7: &str = "x^4-12*x^2+64";

impl FieldSpec {
    pub fn custom(name: &str, polys: Vec<ZPoly>) -> Result<Self, NumberTheoryError> {
        for f in &polys {
            certify_irreducible(f)?;
        }
        Ok(FieldSpec { name: name.to_string(), polys, conductor: None, e_plus: None })
    }

    pub fn builtin(name: &str) -> Result<Self, NumberTheoryError> {
        let (polys, conductor, e_plus): (&[&str], u64, &[&str]) = match name {
            "Qi" => (&["x^2+1"], 4, &[]),
            "Qsqrt-3" => (&["x^2+3"], 3, &[]),
            "Qsqrt-5" => (&["x^2+5"], 20, &[]),
            "Qi_sqrt3" => (&[QI_SQRT3], 12, &["x^2-3"]),
            "Qi_sqrt7" => (&[QI_SQRT7], 28, &["x^2-7"]),
            "zeta7plus" => (&[ZETA7_PLUS], 7, &[]),
            "zeta9plus" => (&[ZETA9_PLUS], 9, &[]),
            "cubic13" => (&[CUBIC13], 13, &[]),
            "beta43" => (&[BETA43], 43, &[]),
            "Qi_cubic13" => (&["x^2+1", CUBIC13], 52, &[]),
            "Qsqrt-3_zeta7plus" => (&["x^2+3", ZETA7_PLUS], 21, &[]),
            "Qi_sqrt3_zeta7plus" => (&[QI_SQRT3, ZETA7_PLUS], 84, &["x^2-3"]),
            "Qi_sqrt7_beta43" => (&[QI_SQRT7, BETA43], 1204, &["x^2-7"]),
            "Qsqrt-5_zeta9plus" => (&["x^2+5", ZETA9_PLUS], 180, &[]),
            _ => return Err(NumberTheoryError::UnknownFieldSet(name.to_string())),
        };
        let parse = |v: &[&str]| v.iter().map(|t| ZPoly::parse(t)).collect::<Result<Vec<_>, _>>();
        let polys = parse(polys)?;
        for f in &polys {
            certify_irreducible(f)?;
        }
        Ok(FieldSpec {
            name: name.to_string(),
            polys,
            conductor: Some(conductor),
            e_plus: Some(parse(e_plus)?),
        })
    }

    /// `builtin:<name>` or a `;`-separated polynomial list.
    pub fn from_arg(arg: &str) -> Result<Self, NumberTheoryError> {
        match arg.strip_prefix("builtin:") {
            Some(name) => FieldSpec::builtin(name),
            None => {
                let polys = arg
                    .split(';')
                    .map(|t| ZPoly::parse(t.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                FieldSpec::custom(arg, polys)
            }
        }
    }

    /// `[E : Q]`, read off the first factor.
    pub fn e_degree(&self) -> usize {
        self.polys[0].degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Split,
    /// Unramified but not totally split; the factor degrees of `f mod p`.
    InertPattern {
        pattern: Vec<usize>,
    },
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorVerdict {
    pub poly: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub prime: u64,
    pub verdicts: Vec<FactorVerdict>,
    pub totally_split: bool,
}

pub fn is_totally_split_set(spec: &FieldSpec, p: u64) -> Result<SplitReport, NumberTheoryError> {
    if !is_prime(p) {
        return Err(NumberTheoryError::BadPrime(p));
    }
    let mut verdicts = Vec::new();
    for f in &spec.polys {
        let verdict = if (f.lead() % BigInt::from(p)).is_zero() {
            Verdict::Ramified
        } else {
            match degree_pattern(f, p)? {
                None => Verdict::Ramified,
                Some(pat) if pat.iter().all(|&d| d == 1) => Verdict::Split,
                Some(pattern) => Verdict::InertPattern { pattern },
            }
        };
        verdicts.push(FactorVerdict { poly: f.to_string(), verdict });
    }
    let totally_split = verdicts.iter().all(|v| v.verdict == Verdict::Split);
    Ok(SplitReport { prime: p, verdicts, totally_split })
}

fn unramified(spec: &FieldSpec, p: u64) -> Result<bool, NumberTheoryError> {
    Ok(is_totally_split_set(spec, p)?.verdicts.iter().all(|v| v.verdict != Verdict::Ramified))
}

/// Result of a congruence-class search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub field_set: String,
    pub modulus: u64,
    /// Residues whose sampled primes are all totally split.
    pub residues: Vec<u64>,
    /// The first prime in each of those classes.
    pub witnesses: Vec<u64>,
    pub primes_per_class: usize,
    /// `φ(M)`.
    pub units: usize,
    /// The residues form a subgroup of `(Z/M)ˣ`.
    pub subgroup: bool,
    /// `φ(M) / #residues` when they form a subgroup.
    pub index: Option<usize>,
    /// Every class behaved uniformly on its sampled primes.
    pub uniform: bool,
    /// The answer is a theorem: abelian spec whose conductor divides `M`,
    /// and every class uniform.
    pub exact: bool,
}

/// Residues `r` coprime to `M` whose first `k` unramified primes are all
/// totally split in every factor.
pub fn congruence_classes(
    spec: &FieldSpec,
    modulus: u64,
    k: usize,
) -> Result<CongruenceReport, NumberTheoryError> {
    if modulus < 2 || k == 0 {
        return Err(NumberTheoryError::Parse("modulus must be >= 2 and k >= 1".into()));
    }
    let units: Vec<u64> = (1..modulus).filter(|r| r.gcd(&modulus) == 1).collect();
    let mut samples: BTreeMap<u64, Vec<(u64, bool)>> = units.iter().map(|&r| (r, vec![])).collect();
    let mut open = units.len();
    let mut p = 2;
    while open > 0 && p < PRIME_SEARCH_LIMIT {
        p += 1;
        if !is_prime(p) || modulus.is_multiple_of(p) || !unramified(spec, p)? {
            continue;
        }
        let slot = samples.get_mut(&(p % modulus)).expect("p is a unit");
        if slot.len() < k {
            slot.push((p, is_totally_split_set(spec, p)?.totally_split));
            if slot.len() == k {
                open -= 1;
            }
        }
    }
    let uniform = samples.values().all(|v| v.iter().all(|s| s.1 == v[0].1));
    let mut residues = Vec::new();
    let mut witnesses = Vec::new();
    for (&r, v) in &samples {
        if !v.is_empty() && v.iter().all(|s| s.1) {
            residues.push(r);
            witnesses.push(v[0].0);
        }
    }
    let set: BTreeSet<u64> = residues.iter().copied().collect();
    let subgroup = !set.is_empty()
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&(a * b % modulus))));
    let index = subgroup.then(|| units.len() / set.len());
    let exact = uniform && spec.conductor.is_some_and(|c| modulus.is_multiple_of(c));
    Ok(CongruenceReport {
        field_set: spec.name.clone(),
        modulus,
        residues,
        witnesses,
        primes_per_class: k,
        units: units.len(),
        subgroup,
        index,
        uniform,
        exact,
    })
}

/// Verdict on a sample number quoted as a totally split prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub n: u64,
    pub is_prime: bool,
    pub residue: u64,
    pub in_classes: bool,
    pub totally_split: Option<bool>,
}

pub fn check_witnesses(
    spec: &FieldSpec,
    report: &CongruenceReport,
    sample: &[u64],
) -> Result<Vec<WitnessCheck>, NumberTheoryError> {
    sample
        .iter()
        .map(|&n| {
            let residue = n % report.modulus;
            let prime = is_prime(n);
            Ok(WitnessCheck {
                n,
                is_prime: prime,
                residue,
                in_classes: report.residues.contains(&residue),
                totally_split: if prime {
                    Some(is_totally_split_set(spec, n)?.totally_split)
                } else {
                    None
                },
            })
        })
        .collect()
}

/// Whether the primes above `p` in the subfield cut out by `base` split
/// completely in the field cut out by `top`, for abelian fields of conductor
/// dividing `modulus`. With `H_F` the classes of primes split in `F`, the
/// residue degree of `p` in `F` is the least `f` with `p^f ∈ H_F`, and the
/// primes above `p` split completely in `K` iff `p^f ∈ H_K`.
pub fn splits_completely_over(
    base: &[ZPoly],
    top: &[ZPoly],
    p: u64,
    modulus: u64,
) -> Result<bool, NumberTheoryError> {
    let subgroup = |polys: &[ZPoly]| -> Result<BTreeSet<u64>, NumberTheoryError> {
        if polys.is_empty() {
            return Ok((1..modulus).filter(|r| r.gcd(&modulus) == 1).collect());
        }
        let spec = FieldSpec {
            name: String::new(),
            polys: polys.to_vec(),
            conductor: Some(modulus),
            e_plus: None,
        };
        let rep = congruence_classes(&spec, modulus, 2)?;
        if !rep.uniform {
            return Err(NumberTheoryError::NotAbelian(modulus));
        }
        Ok(rep.residues.into_iter().collect())
    };
    if modulus.is_multiple_of(p) {
        return Err(NumberTheoryError::BadPrime(p));
    }
    let h_base = subgroup(base)?;
    let h_top = subgroup(top)?;
    let mut q = p % modulus;
    while !h_base.contains(&q) {
        q = q * p % modulus;
    }
    Ok(h_top.contains(&q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeRole {
    /// The residue characteristic `p` of the eigenforms.
    P,
    /// The auxiliary prime `ℓ`.
    Ell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheckItem {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheckReport {
    pub prime: u64,
    pub role: PrimeRole,
    pub items: Vec<PrimeCheckItem>,
    pub pass: bool,
}

/// The conditions on `p` (resp. `ℓ`) for the field tower `spec`.
///
/// For `p`: `p > 8`, `p − 1 > [E:Q]` (so `ζ_p ∉ E`), `p` unramified, and the
/// primes above `p` in `E⁺` split completely in `K`; the last item uses the
/// abelian criterion when the conductor and `E⁺` are known and total
/// splitting of `p` otherwise. For `ℓ`: `ℓ` totally split in `K`.
pub fn taylor_wiles_prime_check(
    p: u64,
    spec: &FieldSpec,
    role: PrimeRole,
) -> Result<PrimeCheckReport, NumberTheoryError> {
    let mut items = Vec::new();
    let mut item = |check: &str, pass: bool, detail: String| {
        items.push(PrimeCheckItem { check: check.to_string(), pass, detail })
    };
    if !is_prime(p) {
        item("prime", false, format!("{p} is not prime"));
    } else {
        let split = is_totally_split_set(spec, p)?;
        let unram = split.verdicts.iter().all(|v| v.verdict != Verdict::Ramified);
        match role {
            PrimeRole::Ell => {
                item("totally split in K", split.totally_split, format!("{:?}", split.verdicts));
            }
            PrimeRole::P => {
                item("p > 8", p > 8, format!("p = {p}"));
                let e = spec.e_degree() as u64;
                item("zeta_p not in E", p - 1 > e, format!("p - 1 = {}, [E:Q] = {e}", p - 1));
                item("unramified", unram, format!("{:?}", split.verdicts));
                let (pass, detail) = match (spec.conductor, &spec.e_plus) {
                    (Some(m), Some(base)) if unram && m % p != 0 => (
                        splits_completely_over(base, &spec.polys, p, m)?,
                        format!("abelian criterion modulo {m}"),
                    ),
                    _ => (split.totally_split, "absolute total splitting".to_string()),
                };
                item("primes above p in E+ split in K", pass, detail);
            }
        }
    }
    let pass = items.iter().all(|i| i.pass);
    Ok(PrimeCheckReport { prime: p, role, items, pass })
}

/// Checks that `±η` is a root of `f`, where `η = Σ_{h ∈ H} ζ_q^h` is the
/// Gaussian period of the index-`deg f` subgroup `H` of `(Z/q)ˣ`. Arithmetic
/// is in `Z[z]/(z^q − 1)`; an element vanishes in `Q(ζ_q)` iff all its
/// coefficients are equal. Returns the sign that works, if any.
pub fn gaussian_period_root_sign(f: &ZPoly, q: u64) -> Option<i64> {
    let e = f.degree() as u64;
    if !is_prime(q) || !(q - 1).is_multiple_of(e) {
        return None;
    }
    let q = q as usize;
    let subgroup: BTreeSet<u64> = (1..q as u64).map(|a| pow_mod(a, e, q as u64)).collect();
    let mul = |a: &[BigInt], b: &[BigInt]| {
        let mut out = vec![BigInt::zero(); q];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[(i + j) % q] += x * y;
            }
        }
        out
    };
    for sign in [1i64, -1] {
        let mut eta = vec![BigInt::zero(); q];
        for &h in &subgroup {
            eta[h as usize] += sign;
        }
        let mut acc = vec![BigInt::zero(); q];
        for c in f.coeffs.iter().rev() {
            acc = mul(&acc, &eta);
            acc[0] += c;
        }
        if acc.iter().all(|c| c == &acc[0]) {
            return Some(sign);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(text: &str) -> ZPoly {
        ZPoly::parse(text).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_power(&z("x^2+1"), 5).unwrap(), vec![0, 1]);
        assert_eq!(frobenius_power(&z("x^2+1"), 3).unwrap(), vec![0, 2]);
        assert_eq!(frobenius_power(&z("x"), 7).unwrap(), Vec::<u64>::new());
        assert_eq!(frobenius_power(&z("2*x^2+1"), 2), Err(NumberTheoryError::BadPrime(2)));
        assert_eq!(frobenius_power(&z("x^2+1"), 9), Err(NumberTheoryError::BadPrime(9)));
    }

    #[test]
    fn split_examples() {
        assert!(is_totally_split(&z("x^2+1"), 5).unwrap());
        assert!(!is_totally_split(&z("x^2+1"), 7).unwrap());
        assert!(is_totally_split(&z(CUBIC13), 53).unwrap());
        // ramified: x^2+1 = (x+1)^2 mod 2
        assert!(!is_totally_split(&z("x^2+1"), 2).unwrap());
    }

    #[test]
    fn patterns() {
        assert_eq!(degree_pattern(&z("x^2+1"), 7).unwrap(), Some(vec![2]));
        assert_eq!(degree_pattern(&z("x^2+1"), 2).unwrap(), None);
        assert_eq!(degree_pattern(&z(ZETA7_PLUS), 2).unwrap(), Some(vec![3]));
        assert_eq!(degree_pattern(&z("x^4-1"), 3).unwrap(), Some(vec![1, 1, 2]));
    }

    #[test]
    fn irreducibility() {
        for name in BUILTIN_FIELD_SETS {
            FieldSpec::builtin(name).unwrap();
        }
        assert!(matches!(certify_irreducible(&z("x^4+4")), Err(NumberTheoryError::Reducible(_))));
        assert!(matches!(certify_irreducible(&z("x^3-1")), Err(NumberTheoryError::Reducible(_))));
        assert!(certify_irreducible(&z("x^4-10*x^2+1")).is_ok());
    }

    #[test]
    fn composita() {
        assert_eq!(compositum_poly(&z("x^2+1"), &z("x^2-2")).unwrap().to_string(), "x^4-2*x^2+9");
        assert_eq!(compositum_poly(&z("x^2+1"), &z("x-1")).unwrap().to_string(), "x^2-2*x+2");
        assert_eq!(compositum_poly(&z("x"), &z("x")).unwrap().to_string(), "x");
        // Q(i)·Q(√3): a primitive element generates the same field as x^4-x^2+1
        let k = compositum_poly(&z("x^2+1"), &z("x^2-3")).unwrap();
        assert_eq!(k.degree(), 4);
        for p in primes_below(200).into_iter().filter(|&p| p > 3) {
            assert_eq!(is_totally_split(&k, p).unwrap(), p % 12 == 1, "p = {p}");
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        for t in ["x^3-x^2-14*x-8", "2*x^2+3", "-x+1", "x"] {
            assert_eq!(z(t).to_string(), t);
        }
        assert!(ZPoly::parse("x/2+1").is_err());
        assert_eq!(ZPoly::parse("7"), Err(NumberTheoryError::Degenerate));
    }

    #[test]
    fn congruences_mod_52() {
        let spec = FieldSpec::builtin("Qi_cubic13").unwrap();
        let rep = congruence_classes(&spec, 52, 3).unwrap();
        assert_eq!(rep.residues, vec![1, 5, 21, 25]);
        assert!(rep.subgroup && rep.exact);
        assert_eq!(rep.index, Some(6));
    }

    #[test]
    fn periods_identify_the_cubics() {
        assert!(gaussian_period_root_sign(&z(ZETA7_PLUS), 7).is_some());
        assert!(gaussian_period_root_sign(&z(CUBIC13), 13).is_some());
        assert!(gaussian_period_root_sign(&z(BETA43), 43).is_some());
        assert!(gaussian_period_root_sign(&z(ZETA7_PLUS), 13).is_none());
    }

    #[test]
    fn prime_conditions() {
        let s21 = FieldSpec::builtin("Qsqrt-3_zeta7plus").unwrap();
        assert!(taylor_wiles_prime_check(13, &s21, PrimeRole::P).unwrap().pass);
        assert!(!taylor_wiles_prime_check(7, &s21, PrimeRole::P).unwrap().pass);
        let s52 = FieldSpec::builtin("Qi_cubic13").unwrap();
        assert!(taylor_wiles_prime_check(5, &s52, PrimeRole::Ell).unwrap().pass);
        assert!(!taylor_wiles_prime_check(5, &s52, PrimeRole::P).unwrap().pass);
    }
}

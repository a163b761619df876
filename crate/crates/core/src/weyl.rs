//! Weyl groups of type `A_{n-1}` products: `W = S_n × … × S_n`, one factor
//! per embedding.
//!
//! Permutations are stored in one-line notation, 0-based internally and
//! 1-based in every text form. Composition applies the right factor first:
//! `(u * v)(i) = u(v(i))`, so `s1 * s2` is the element with reduced word
//! `s1s2`. A permutation `w` acts on weights by `(w λ)_{w(a)} = λ_a`, which
//! makes the action a left action.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::WeylError;

/// Largest `n` accepted by the exhaustive distinct-simples search.
pub const DISTINCT_SIMPLES_MAX_N: usize = 5;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn longest(n: usize) -> Self {
        Perm((0..n).rev().collect())
    }

    /// The simple transposition `s_i = (i, i+1)`, `i` is 1-based.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection s{i} out of range for S_{n}");
        let mut p = Self::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// Builds a permutation from 0-based one-line images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(WeylError::InvalidPermutation(format!("{:?}", images)));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    /// Product `s_{a_1} s_{a_2} … s_{a_k}` of simple reflections (1-based).
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(n), |acc, &i| acc.compose(&Self::simple(n, i)))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Coxeter length: the number of inversions.
    pub fn inversions(&self) -> usize {
        let p = &self.0;
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut cycles = 0;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
            }
        }
        cycles
    }

    /// A reduced word (1-based simple indices), built by peeling right descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] > w[i + 1] {
                    w.swap(i, i + 1);
                    word.push(i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// Every element of `S_n`, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if current.len() == n {
                out.push(Perm(current.clone()));
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    /// Bruhat comparison through reduced subwords of a fixed reduced word of `w`.
    pub fn bruhat_leq_subword(&self, w: &Perm) -> bool {
        let target_len = self.inversions();
        let word = w.reduced_word();
        if target_len > word.len() {
            return false;
        }
        let n = self.n();
        // choose target_len letters out of the word
        let mut idx: Vec<usize> = (0..target_len).collect();
        loop {
            let sub: Vec<usize> = idx.iter().map(|&k| word[k]).collect();
            let p = Perm::from_word(n, &sub);
            if p == *self && p.inversions() == target_len {
                return true;
            }
            // next combination
            let mut k = target_len;
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                if idx[k] < word.len() - target_len + k {
                    idx[k] += 1;
                    for m in k + 1..target_len {
                        idx[m] = idx[m - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Bruhat comparison through rank matrices (Ehresmann's tableau criterion).
    pub fn bruhat_leq_rank(&self, w: &Perm) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                let cu = (0..=i).filter(|&a| self.0[a] >= j).count();
                let cw = (0..=i).filter(|&a| w.0[a] >= j).count();
                if cu > cw {
                    return false;
                }
            }
        }
        true
    }

    fn is_distinct_simple_product(&self) -> bool {
        let n = self.n();
        let len = self.inversions();
        if len > n.saturating_sub(1) {
            return false;
        }
        let mut word = Vec::with_capacity(len);
        let mut used = vec![false; n];
        fn search(target: &Perm, len: usize, word: &mut Vec<usize>, used: &mut [bool]) -> bool {
            if word.len() == len {
                return Perm::from_word(target.n(), word) == *target;
            }
            for i in 1..target.n() {
                if !used[i] {
                    used[i] = true;
                    word.push(i);
                    let hit = search(target, len, word, used);
                    word.pop();
                    used[i] = false;
                    if hit {
                        return true;
                    }
                }
            }
            false
        }
        search(self, len, &mut word, &mut used)
    }

    /// Applies the permutation to an integer tuple: `(w λ)_{w(a)} = λ_a`.
    pub fn act(&self, weight: &[i64]) -> Vec<i64> {
        let mut out = vec![0; weight.len()];
        for (a, &v) in weight.iter().enumerate() {
            out[self.0[a]] = v;
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.0 {
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

/// An element of `∏_τ S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct WeylElem {
    n: usize,
    factors: Vec<Perm>,
}

impl WeylElem {
    pub fn new(factors: Vec<Perm>) -> Result<Self, WeylError> {
        let n = factors
            .first()
            .map(Perm::n)
            .ok_or_else(|| WeylError::Parse("empty Weyl element".into()))?;
        if n == 0 || factors.iter().any(|p| p.n() != n) {
            return Err(WeylError::ShapeMismatch);
        }
        Ok(WeylElem { n, factors })
    }

    pub fn single(p: Perm) -> Self {
        WeylElem { n: p.n(), factors: vec![p] }
    }

    pub fn identity(n: usize, taus: usize) -> Self {
        WeylElem { n, factors: vec![Perm::identity(n); taus] }
    }

    pub fn longest(n: usize, taus: usize) -> Self {
        WeylElem { n, factors: vec![Perm::longest(n); taus] }
    }

    /// Single-factor element from a simple word, e.g. `[1, 2]` for `s1s2`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        Self::single(Perm::from_word(n, word))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn taus(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Perm] {
        &self.factors
    }

    pub fn factor(&self, tau: usize) -> &Perm {
        &self.factors[tau]
    }

    fn check_shape(&self, other: &WeylElem) -> Result<(), WeylError> {
        if self.n != other.n || self.taus() != other.taus() {
            Err(WeylError::ShapeMismatch)
        } else {
            Ok(())
        }
    }

    pub fn mul(&self, other: &WeylElem) -> Result<WeylElem, WeylError> {
        self.check_shape(other)?;
        Ok(WeylElem {
            n: self.n,
            factors: self.factors.iter().zip(&other.factors).map(|(a, b)| a.compose(b)).collect(),
        })
    }

    pub fn inverse(&self) -> WeylElem {
        WeylElem { n: self.n, factors: self.factors.iter().map(Perm::inverse).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(Perm::is_identity)
    }

    /// Every element of `S_n^taus`.
    pub fn all(n: usize, taus: usize) -> Vec<WeylElem> {
        let base = Perm::all(n);
        let mut out = vec![Vec::new()];
        for _ in 0..taus {
            let mut next = Vec::with_capacity(out.len() * base.len());
            for prefix in &out {
                for p in &base {
                    let mut f: Vec<Perm> = prefix.clone();
                    f.push(p.clone());
                    next.push(f);
                }
            }
            out = next;
        }
        out.into_iter().map(|factors| WeylElem { n, factors }).collect()
    }

    /// Parses comma-separated factors. Each factor is either a one-line
    /// permutation (`231`), a simple word (`s1s2`), `e`/`1`, or `w0`.
    pub fn parse(text: &str, n: usize) -> Result<Self, WeylError> {
        let factors = text
            .split(',')
            .map(|tok| parse_factor(tok.trim(), n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(factors)
    }

    /// Reduced words of every factor, `e` for identities, joined by commas.
    pub fn to_word_string(&self) -> String {
        self.factors
            .iter()
            .map(|p| {
                let w = p.reduced_word();
                if w.is_empty() {
                    "e".to_string()
                } else {
                    w.iter().map(|i| format!("s{i}")).collect()
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coxeter_length(&self) -> usize {
        self.factors.iter().map(Perm::inversions).sum()
    }

    /// Minimal number of reflections whose product is `self`: `Σ (n − #cycles)`.
    pub fn reflection_length(&self) -> usize {
        self.factors.iter().map(|p| self.n - p.cycle_count()).sum()
    }

    /// `dim t^w`, the fixed space of `w` acting on the Cartan `k^n` per factor.
    ///
    /// Computed as the nullity of `w − 1` over `Q` so that the identity
    /// `reflection_length + fixed_space_dim = n·taus` is a genuine check rather
    /// than a restatement of the cycle count.
    pub fn fixed_space_dim(&self) -> usize {
        self.factors
            .iter()
            .map(|p| {
                let n = self.n;
                let mut rows: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        let mut r = vec![0i64; n];
                        // (w − 1) e_i = e_{w(i)} − e_i, stored as column i
                        r[i] -= 1;
                        r[p.0[i]] += 1;
                        r
                    })
                    .collect();
                n - integer_rank(&mut rows)
            })
            .sum()
    }

    /// Componentwise Bruhat order. Both criteria are evaluated per factor and
    /// must agree.
    pub fn bruhat_leq(&self, other: &WeylElem) -> bool {
        assert!(self.check_shape(other).is_ok(), "Bruhat comparison of mismatched shapes");
        self.factors.iter().zip(&other.factors).all(|(u, w)| {
            let by_word = u.bruhat_leq_subword(w);
            let by_rank = u.bruhat_leq_rank(w);
            assert_eq!(by_word, by_rank, "Bruhat criteria disagree on {u} ≤ {w}");
            by_word
        })
    }

    pub fn is_product_of_distinct_simples(&self) -> Result<bool, WeylError> {
        if self.n > DISTINCT_SIMPLES_MAX_N {
            return Err(WeylError::SearchBound { n: self.n, max: DISTINCT_SIMPLES_MAX_N });
        }
        Ok(self.factors.iter().all(Perm::is_distinct_simple_product))
    }

    /// Plain (unshifted) action on a weight.
    pub fn act(&self, weight: &IntWeight) -> Result<IntWeight, WeylError> {
        self.check_weight(weight)?;
        Ok(IntWeight(self.factors.iter().zip(&weight.0).map(|(p, t)| p.act(t)).collect()))
    }

    /// The dot action `w·λ = w(λ + δ_G) − δ_G`.
    pub fn dot_action(&self, lam: &IntWeight) -> Result<IntWeight, WeylError> {
        self.check_weight(lam)?;
        let delta = delta_g(self.n);
        Ok(IntWeight(
            self.factors
                .iter()
                .zip(&lam.0)
                .map(|(p, t)| {
                    let shifted: Vec<i64> = t.iter().zip(&delta).map(|(a, d)| a + d).collect();
                    p.act(&shifted).iter().zip(&delta).map(|(a, d)| a - d).collect()
                })
                .collect(),
        ))
    }

    fn check_weight(&self, weight: &IntWeight) -> Result<(), WeylError> {
        if weight.0.len() != self.taus() || weight.0.iter().any(|t| t.len() != self.n) {
            Err(WeylError::ShapeMismatch)
        } else {
            Ok(())
        }
    }

    /// Minimal and maximal length representatives of the coset `W_I w`.
    pub fn coset_reps(&self, subset: &SimpleSubset) -> Result<(WeylElem, WeylElem), WeylError> {
        if subset.0.len() != self.taus() {
            return Err(WeylError::ShapeMismatch);
        }
        let mut mins = Vec::new();
        let mut maxs = Vec::new();
        for (p, gens) in self.factors.iter().zip(&subset.0) {
            let coset: Vec<Perm> =
                parabolic_subgroup(self.n, gens).iter().map(|u| u.compose(p)).collect();
            let lmin = coset.iter().map(Perm::inversions).min().unwrap();
            let lmax = coset.iter().map(Perm::inversions).max().unwrap();
            let pick = |l: usize| {
                let hits: Vec<&Perm> = coset.iter().filter(|q| q.inversions() == l).collect();
                assert_eq!(hits.len(), 1, "coset extremal representative not unique");
                hits[0].clone()
            };
            mins.push(pick(lmin));
            maxs.push(pick(lmax));
        }
        Ok((WeylElem { n: self.n, factors: mins }, WeylElem { n: self.n, factors: maxs }))
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn parse_factor(tok: &str, n: usize) -> Result<Perm, WeylError> {
    let bad = || WeylError::Parse(format!("cannot read Weyl factor {tok:?} for S_{n}"));
    match tok {
        "e" | "1" | "id" => return Ok(Perm::identity(n)),
        "w0" => return Ok(Perm::longest(n)),
        _ => {}
    }
    if let Some(rest) = tok.strip_prefix('s') {
        let mut word = Vec::new();
        for part in rest.split('s') {
            let i: usize = part.trim_start_matches('*').parse().map_err(|_| bad())?;
            if i == 0 || i >= n {
                return Err(bad());
            }
            word.push(i);
        }
        return Ok(Perm::from_word(n, &word));
    }
    if tok.len() == n && tok.chars().all(|c| c.is_ascii_digit()) {
        let images = tok
            .chars()
            .map(|c| (c as usize).checked_sub('1' as usize).ok_or_else(bad))
            .collect::<Result<Vec<_>, _>>()?;
        return Perm::from_images(images);
    }
    Err(bad())
}

/// The subgroup of `S_n` generated by the simple reflections in `gens`.
fn parabolic_subgroup(n: usize, gens: &[usize]) -> Vec<Perm> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([Perm::identity(n)]);
    seen.insert(Perm::identity(n));
    while let Some(p) = queue.pop_front() {
        for &i in gens {
            let q = Perm::simple(n, i).compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

fn integer_rank(rows: &mut [Vec<i64>]) -> usize {
    // fraction-free elimination, entries stay tiny for permutation matrices
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let (a, b) = (rows[rank][col], rows[r][col]);
                #[allow(clippy::needless_range_loop)]
                for c in 0..ncols {
                    rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                }
                let g = rows[r].iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
                if g > 1 {
                    rows[r].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Integral representative of the half-sum of positive roots, `(1, 0, −1)`
/// for `n = 3`. Any shift by `(c, …, c)` gives the same dot action.
pub fn delta_g(n: usize) -> Vec<i64> {
    let mid = ((n as i64) - 1) / 2;
    (0..n as i64).map(|i| (n as i64 - 1 - i) - mid).collect()
}

/// `δ′_G = (0, −1, …, 1 − n)`.
pub fn delta_prime_g(n: usize) -> Vec<i64> {
    (0..n as i64).map(|i| -i).collect()
}

/// Integer weights, one `n`-tuple per embedding.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IntWeight(pub Vec<Vec<i64>>);

impl IntWeight {
    pub fn zero(n: usize, taus: usize) -> Self {
        IntWeight(vec![vec![0; n]; taus])
    }

    /// Parses `"2,2,2;5,3,2"`.
    pub fn parse(text: &str) -> Result<Self, WeylError> {
        let tuples = text
            .split(';')
            .map(|t| {
                t.split(',')
                    .map(|v| v.trim().parse::<i64>().map_err(|_| WeylError::Parse(text.into())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = tuples.first().map_or(0, Vec::len);
        if n == 0 || tuples.iter().any(|t| t.len() != n) {
            return Err(WeylError::ShapeMismatch);
        }
        Ok(IntWeight(tuples))
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|t| t.windows(2).all(|w| w[0] >= w[1]))
    }

    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|t| t.windows(2).all(|w| w[0] <= w[1]))
    }

    /// `μ = h − δ′_G`.
    pub fn minus_delta_prime(&self) -> IntWeight {
        IntWeight(
            self.0
                .iter()
                .map(|t| t.iter().zip(delta_prime_g(t.len())).map(|(a, d)| a - d).collect())
                .collect(),
        )
    }
}

impl fmt::Display for IntWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| t.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// Hodge–Tate weights to the dominant weight `λ = w₀(h) − δ′_G`.
pub fn hodge_to_lambda(h: &IntWeight) -> Result<IntWeight, WeylError> {
    for t in &h.0 {
        if !t.windows(2).all(|w| w[0] < w[1]) {
            return Err(WeylError::NotRegular(t.clone()));
        }
    }
    Ok(IntWeight(
        h.0.iter()
            .map(|t| {
                let n = t.len();
                let flipped = Perm::longest(n).act(t);
                flipped.iter().zip(delta_prime_g(n)).map(|(a, d)| a - d).collect()
            })
            .collect(),
    ))
}

/// Per-embedding subsets `I_τ` of simple reflection indices (1-based).
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SimpleSubset(pub Vec<Vec<usize>>);

impl SimpleSubset {
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self, WeylError> {
        for s in &sets {
            if s.iter().any(|&i| i == 0 || i >= n) {
                return Err(WeylError::Parse(format!("simple index out of range in {s:?}")));
            }
        }
        Ok(SimpleSubset(sets))
    }

    pub fn empty(taus: usize) -> Self {
        SimpleSubset(vec![Vec::new(); taus])
    }

    pub fn full(n: usize, taus: usize) -> Self {
        SimpleSubset(vec![(1..n).collect(); taus])
    }
}

/// Reflection length of every element of `S_n` by breadth-first search in
/// the Cayley graph generated by all transpositions. Independent of the
/// cycle-count formula.
pub fn reflection_length_bfs(n: usize) -> std::collections::HashMap<Perm, usize> {
    let mut reflections = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(i, j);
            reflections.push(Perm(images));
        }
    }
    let mut dist = std::collections::HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(Perm::identity(n), 0);
    queue.push_back(Perm::identity(n));
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for r in &reflections {
            let q = p.compose(r);
            if !dist.contains_key(&q) {
                dist.insert(q.clone(), d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}

/// Outcome of the exhaustive length and order identities on `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub n: usize,
    pub elements: usize,
    /// `ℓ(w) + dim t^w = n`, with `ℓ` from the Cayley-graph search.
    pub carter: bool,
    /// `ℓ(w) ≤ lg(w)`, with equality exactly for products of distinct simples.
    pub reflection_vs_coxeter: bool,
    /// `ℓ(w·w′⁻¹) = lg(w) − lg(w′)` for `w` a product of distinct simples, `w′ ≤ w`.
    pub claim_ell: bool,
    pub claim_ell_pairs: usize,
    /// `ℓ(w·w′⁻¹) ≥ ℓ(w) − lg(w′)` for every `w` and every product of distinct simples `w′`.
    pub claim_lower_bound: bool,
    pub claim_lower_bound_pairs: usize,
    /// `ℓ(w·s) ≥ ℓ(w) − 1` for every `w` and simple `s`.
    pub simple_step: bool,
    pub simple_step_pairs: usize,
    /// Subword and rank-matrix Bruhat criteria agree on every ordered pair.
    pub bruhat_agree: bool,
    pub bruhat_pairs: usize,
    /// `(w·w0)^min = w^max·w0` for every `w` and every subset of simples.
    pub coset_identity: bool,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.carter
            && self.reflection_vs_coxeter
            && self.claim_ell
            && self.claim_lower_bound
            && self.simple_step
            && self.bruhat_agree
            && self.coset_identity
    }

    /// Pair evaluations across all pairwise identities, Bruhat agreement
    /// included.
    pub fn pairs_checked(&self) -> usize {
        self.claim_ell_pairs
            + self.claim_lower_bound_pairs
            + self.simple_step_pairs
            + self.bruhat_pairs
    }
}

/// Runs every identity of [`ClaimReport`] exhaustively on `S_n`.
pub fn claim_suite(n: usize) -> Result<ClaimReport, WeylError> {
    if n == 0 || n > DISTINCT_SIMPLES_MAX_N {
        return Err(WeylError::SearchBound { n, max: DISTINCT_SIMPLES_MAX_N });
    }
    let ell = reflection_length_bfs(n);
    let all = Perm::all(n);
    let single = |p: &Perm| WeylElem::single(p.clone());
    let distinct: Vec<bool> = all.iter().map(Perm::is_distinct_simple_product).collect();
    let w0 = Perm::longest(n);

    let carter = all.iter().all(|p| {
        let w = single(p);
        ell[p] == w.reflection_length() && ell[p] + w.fixed_space_dim() == n
    });
    let reflection_vs_coxeter = all.iter().zip(&distinct).all(|(p, &d)| {
        let lg = p.inversions();
        ell[p] <= lg && ((ell[p] == lg) == d)
    });

    let (mut claim_ell, mut claim_ell_pairs) = (true, 0);
    let (mut lower, mut lower_pairs) = (true, 0);
    let (mut agree, mut bruhat_pairs) = (true, 0);
    for (w, &wd) in all.iter().zip(&distinct) {
        for (v, &vd) in all.iter().zip(&distinct) {
            let by_word = v.bruhat_leq_subword(w);
            agree &= by_word == v.bruhat_leq_rank(w);
            bruhat_pairs += 1;
            let quotient = w.compose(&v.inverse());
            if wd && by_word {
                claim_ell_pairs += 1;
                let lg_diff = w.inversions() - v.inversions();
                claim_ell &= ell[&quotient] == lg_diff && ell[w] - ell[v] == lg_diff;
            }
            if vd {
                lower_pairs += 1;
                lower &= ell[&quotient] + v.inversions() >= ell[w];
            }
        }
    }

    let (mut simple_step, mut simple_step_pairs) = (true, 0);
    for w in &all {
        for i in 1..n {
            simple_step_pairs += 1;
            simple_step &= ell[&w.compose(&Perm::simple(n, i))] + 1 >= ell[w];
        }
    }

    let mut coset_identity = true;
    for mask in 0u32..(1 << (n - 1)) {
        let gens: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let subset = SimpleSubset(vec![gens]);
        for p in &all {
            let (_, wmax) = single(p).coset_reps(&subset)?;
            let (ww0_min, _) = single(&p.compose(&w0)).coset_reps(&subset)?;
            coset_identity &= ww0_min.factor(0) == &wmax.factor(0).compose(&w0);
        }
    }

    Ok(ClaimReport {
        n,
        elements: all.len(),
        carter,
        reflection_vs_coxeter,
        claim_ell,
        claim_ell_pairs,
        claim_lower_bound: lower,
        claim_lower_bound_pairs: lower_pairs,
        simple_step,
        simple_step_pairs,
        bruhat_agree: agree,
        bruhat_pairs,
        coset_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3(word: &[usize]) -> WeylElem {
        WeylElem::from_word(3, word)
    }

    #[test]
    fn lengths_of_small_elements() {
        assert_eq!(WeylElem::identity(3, 1).coxeter_length(), 0);
        assert_eq!(WeylElem::longest(3, 1).coxeter_length(), 3);
        let pair = WeylElem::new(vec![Perm::longest(3), Perm::simple(3, 1)]).unwrap();
        assert_eq!(pair.coxeter_length(), 4);

        assert_eq!(WeylElem::identity(3, 1).reflection_length(), 0);
        assert_eq!(WeylElem::longest(3, 1).reflection_length(), 1);
        assert_eq!(s3(&[1, 2]).reflection_length(), 2);

        assert_eq!(WeylElem::identity(3, 1).fixed_space_dim(), 3);
        assert_eq!(WeylElem::longest(3, 1).fixed_space_dim(), 2);
        assert_eq!(s3(&[1, 2]).fixed_space_dim(), 1);
    }

    #[test]
    fn composition_convention() {
        // s1s2 sends 1→2, 2→3, 3→1
        assert_eq!(s3(&[1, 2]).to_string(), "231");
        assert_eq!(s3(&[1, 2, 1]), WeylElem::longest(3, 1));
        assert_eq!(Perm::longest(4).reduced_word().len(), 6);
        for p in Perm::all(4) {
            assert_eq!(Perm::from_word(4, &p.reduced_word()), p);
            assert_eq!(p.reduced_word().len(), p.inversions());
        }
    }

    #[test]
    fn bruhat_examples() {
        let e = WeylElem::identity(3, 1);
        for w in WeylElem::all(3, 1) {
            assert!(e.bruhat_leq(&w));
        }
        assert!(s3(&[1]).bruhat_leq(&s3(&[1, 2])));
        assert!(!s3(&[1, 2]).bruhat_leq(&s3(&[2, 1])));
        assert!(!s3(&[2, 1]).bruhat_leq(&s3(&[1, 2])));
    }

    #[test]
    fn distinct_simples() {
        assert!(s3(&[1, 2]).is_product_of_distinct_simples().unwrap());
        assert!(!WeylElem::longest(3, 1).is_product_of_distinct_simples().unwrap());
        let pair = WeylElem::new(vec![Perm::simple(3, 1), Perm::simple(3, 2)]).unwrap();
        assert!(pair.is_product_of_distinct_simples().unwrap());
        assert!(matches!(
            WeylElem::identity(6, 1).is_product_of_distinct_simples(),
            Err(WeylError::SearchBound { .. })
        ));
    }

    #[test]
    fn dot_action_examples() {
        let zero = IntWeight::zero(3, 1);
        assert_eq!(WeylElem::identity(3, 1).dot_action(&zero).unwrap(), zero);
        assert_eq!(s3(&[1]).dot_action(&zero).unwrap().0, vec![vec![-1, 1, 0]]);
        assert_eq!(WeylElem::longest(3, 1).dot_action(&zero).unwrap().0, vec![vec![-2, 0, 2]]);
        let two = IntWeight::zero(3, 2);
        assert_eq!(s3(&[1]).dot_action(&two), Err(WeylError::ShapeMismatch));
    }

    #[test]
    fn coset_examples() {
        let w = s3(&[1, 2, 1]);
        let i1 = SimpleSubset::new(3, vec![vec![1]]).unwrap();
        let (lo, hi) = w.coset_reps(&i1).unwrap();
        assert_eq!(lo, s3(&[2, 1]));
        assert_eq!(hi, s3(&[1, 2, 1]));
        for w in WeylElem::all(3, 1) {
            let (lo, hi) = w.coset_reps(&SimpleSubset::empty(1)).unwrap();
            assert_eq!((&lo, &hi), (&w, &w));
            let (lo, hi) = w.coset_reps(&SimpleSubset::full(3, 1)).unwrap();
            assert!(lo.is_identity());
            assert_eq!(hi, WeylElem::longest(3, 1));
        }
    }

    #[test]
    fn hodge_weights() {
        let h = IntWeight::parse("0,1,2").unwrap();
        assert_eq!(hodge_to_lambda(&h).unwrap().0, vec![vec![2, 2, 2]]);
        let h = IntWeight::parse("0,2,5").unwrap();
        let lam = hodge_to_lambda(&h).unwrap();
        assert_eq!(lam.0, vec![vec![5, 3, 2]]);
        assert!(lam.is_dominant());
        let mu = h.minus_delta_prime();
        assert_eq!(mu.0, vec![vec![0, 3, 7]]);
        assert!(mu.is_antidominant());
        assert!(matches!(
            hodge_to_lambda(&IntWeight::parse("0,0,1").unwrap()),
            Err(WeylError::NotRegular(_))
        ));
    }

    #[test]
    fn text_forms() {
        let w = WeylElem::parse("231,132", 3).unwrap();
        assert_eq!(w.taus(), 2);
        assert_eq!(w.to_string(), "231,132");
        assert_eq!(WeylElem::parse("s1s2", 3).unwrap(), s3(&[1, 2]));
        assert_eq!(WeylElem::parse("w0", 3).unwrap(), WeylElem::longest(3, 1));
        assert_eq!(WeylElem::parse("1,s1,w0", 3).unwrap().to_word_string(), "e,s1,s1s2s1");
        assert!(WeylElem::parse("s3", 3).is_err());
        assert!(WeylElem::parse("221", 3).is_err());
        let lam = IntWeight::parse("2,2,2;5,3,2").unwrap();
        assert_eq!(lam.to_string(), "2,2,2;5,3,2");
    }

    #[test]
    fn claim_suite_holds_on_small_groups() {
        for n in 1..=4 {
            let r = claim_suite(n).unwrap();
            assert!(r.all_hold(), "{r:?}");
        }
        let s3 = claim_suite(3).unwrap();
        assert_eq!(s3.bruhat_pairs, 36);
        assert!(claim_suite(6).is_err());
    }

    #[test]
    fn bfs_reflection_lengths() {
        let d = reflection_length_bfs(3);
        assert_eq!(d.len(), 6);
        assert_eq!(d[&Perm::longest(3)], 1);
        assert_eq!(d[&Perm::from_word(3, &[1, 2])], 2);
    }
}

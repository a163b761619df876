//! Buchberger's algorithm for submodules of free modules `R^r`.
//!
//! Ideals are the case `r = 1`. Vectors are kept as term lists sorted in
//! strictly decreasing [`TermOrder`]. Pair selection follows the normal
//! strategy (smallest lcm first, ties by generator index); pairs are skipped
//! by the coprime-leads criterion (ideals only) and by the chain criterion
//! restricted to strictly smaller lcms.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::order::TermOrder;
use super::poly::{Poly, Rat, Ring};
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub exp: Vec<u32>,
    pub comp: usize,
    pub coef: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vect {
    pub terms: Vec<Term>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn cmp_terms(ord: &TermOrder, a: &Term, b: &Term) -> Ordering {
    ord.cmp((&a.exp, a.comp), (&b.exp, b.comp))
}

impl Vect {
    pub fn from_polys(entries: &[Poly], ord: &TermOrder) -> Self {
        let mut terms: Vec<Term> = entries
            .iter()
            .enumerate()
            .flat_map(|(comp, p)| {
                p.terms().map(move |(e, c)| Term { exp: e.clone(), comp, coef: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| cmp_terms(ord, b, a));
        Vect { terms }
    }

    pub fn to_polys(&self, ring: &Ring, rank: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(ring); rank];
        for t in &self.terms {
            out[t.comp].add_term(t.exp.clone(), t.coef.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    fn make_monic(&mut self) {
        if let Some(c) = self.terms.first().map(|t| t.coef.clone()) {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.coef *= &inv;
                }
            }
        }
    }
}

/// `a − c · x^shift · g`, with both inputs sorted decreasingly.
fn sub_scaled(a: &[Term], c: &Rat, shift: &[u32], g: &[Term], ord: &TermOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    let mut shifted = g.iter().map(|t| Term {
        exp: t.exp.iter().zip(shift).map(|(x, y)| x + y).collect(),
        comp: t.comp,
        coef: -(&t.coef * c),
    });
    let mut next = shifted.next();
    while let Some(t) = next.take() {
        while i < a.len() && cmp_terms(ord, &a[i], &t) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].exp == t.exp && a[i].comp == t.comp {
            let s = &a[i].coef + &t.coef;
            if !s.is_zero() {
                out.push(Term { exp: t.exp, comp: t.comp, coef: s });
            }
            i += 1;
        } else {
            out.push(t);
        }
        next = shifted.next();
    }
    out.extend_from_slice(&a[i..]);
    out
}

fn find_reducer<'a>(t: &Term, basis: &'a [Vect], skip: Option<usize>) -> Option<&'a Vect> {
    basis.iter().enumerate().find_map(|(k, g)| {
        if Some(k) == skip {
            return None;
        }
        let l = g.lead()?;
        (l.comp == t.comp && divides(&l.exp, &t.exp)).then_some(g)
    })
}

/// Full reduction of `f` modulo a list of monic vectors.
pub(crate) fn reduce(f: &Vect, basis: &[Vect], ord: &TermOrder) -> Vect {
    reduce_skipping(f, basis, None, ord)
}

fn reduce_skipping(f: &Vect, basis: &[Vect], skip: Option<usize>, ord: &TermOrder) -> Vect {
    let mut out = Vec::new();
    let mut work = f.terms.clone();
    let mut start = 0;
    while start < work.len() {
        let t = &work[start];
        match find_reducer(t, basis, skip) {
            Some(g) => {
                let l = g.lead().unwrap();
                let shift: Vec<u32> = t.exp.iter().zip(&l.exp).map(|(x, y)| x - y).collect();
                let c = &t.coef / &l.coef;
                work = sub_scaled(&work[start..], &c, &shift, &g.terms, ord);
                start = 0;
            }
            None => {
                out.push(work[start].clone());
                start += 1;
            }
        }
    }
    Vect { terms: out }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    comp: usize,
}

fn s_vector(f: &Vect, g: &Vect, lcm: &[u32], ord: &TermOrder) -> Vect {
    let lf = f.lead().unwrap();
    let lg = g.lead().unwrap();
    let sf: Vec<u32> = lcm.iter().zip(&lf.exp).map(|(x, y)| x - y).collect();
    let sg: Vec<u32> = lcm.iter().zip(&lg.exp).map(|(x, y)| x - y).collect();
    // both monic: x^sf f − x^sg g
    let scaled_f = sub_scaled(&[], &-Rat::one(), &sf, &f.terms, ord);
    Vect { terms: sub_scaled(&scaled_f, &Rat::one(), &sg, &g.terms, ord) }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub(crate) fn groebner(
    gens: Vec<Vect>,
    ord: &TermOrder,
    degree_bound: Option<u32>,
) -> Result<Vec<Vect>, AlgebraError> {
    let module_case = gens.iter().flat_map(|g| g.terms.iter()).any(|t| t.comp > 0);
    let mut basis: Vec<Vect> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |mut v: Vect,
                basis: &mut Vec<Vect>,
                pairs: &mut Vec<Pair>,
                pending: &mut HashSet<(usize, usize)>| {
        v.make_monic();
        let j = basis.len();
        let lj = v.lead().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let li = g.lead().unwrap();
            if li.comp == lj.comp {
                pairs.push(Pair { i, j, lcm: lcm(&li.exp, &lj.exp), comp: lj.comp });
                pending.insert((i, j));
            }
        }
        basis.push(v);
    };

    for g in gens {
        let r = reduce(&g, &basis, ord);
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ord.cmp((&a.lcm, a.comp), (&b.lcm, b.comp))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));
        let (li, lj) = (basis[pair.i].lead().unwrap(), basis[pair.j].lead().unwrap());

        if !module_case && coprime(&li.exp, &lj.exp) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let lk = basis[k].lead().unwrap();
            if lk.comp != pair.comp || !divides(&lk.exp, &pair.lcm) {
                return false;
            }
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let l_ik = lcm(&li.exp, &lk.exp);
            let l_jk = lcm(&lj.exp, &lk.exp);
            l_ik != pair.lcm
                && l_jk != pair.lcm
                && !pending.contains(&key(pair.i, k))
                && !pending.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        if let Some(bound) = degree_bound {
            let degree: u32 = pair.lcm.iter().sum();
            if degree > bound {
                return Err(AlgebraError::DegreeBound { degree, bound });
            }
        }
        let s = s_vector(&basis[pair.i], &basis[pair.j], &pair.lcm, ord);
        let r = reduce(&s, &basis, ord);
        if !r.is_zero() {
            push(r, &mut basis, &mut pairs, &mut pending);
        }
    }

    Ok(interreduce(basis, ord))
}

/// Minimal, fully reduced, monic and sorted (increasing leads).
pub(crate) fn interreduce(basis: Vec<Vect>, ord: &TermOrder) -> Vec<Vect> {
    let mut keep: Vec<Vect> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let l = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            if m == k {
                return false;
            }
            let lh = h.lead().unwrap();
            lh.comp == l.comp && divides(&lh.exp, &l.exp) && (lh.exp != l.exp || m < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out: Vec<Vect> = (0..keep.len())
        .map(|k| {
            let mut r = reduce_skipping(&keep[k], &keep, Some(k), ord);
            r.make_monic();
            r
        })
        .collect();
    out.sort_by(|a, b| cmp_terms(ord, a.lead().unwrap(), b.lead().unwrap()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::order::MonomialOrder;

    fn ideal_gb(ring: &Ring, gens: &[&str], mono: MonomialOrder) -> Vec<String> {
        let ord = TermOrder::ideal(mono);
        let vs = gens.iter().map(|g| Vect::from_polys(&[ring.parse(g).unwrap()], &ord)).collect();
        groebner(vs, &ord, None)
            .unwrap()
            .iter()
            .map(|v| v.to_polys(ring, 1)[0].to_string())
            .collect()
    }

    #[test]
    fn hand_computed_bases() {
        let r = Ring::new(&["x", "y"]);
        assert_eq!(ideal_gb(&r, &["x"], MonomialOrder::GrevLex), vec!["x"]);
        assert_eq!(ideal_gb(&r, &["x*y-1", "y^2-1"], MonomialOrder::Lex), vec!["y^2-1", "x-y"]);
        assert_eq!(ideal_gb(&r, &["x^2", "x*y"], MonomialOrder::GrevLex), vec!["x*y", "x^2"]);
        assert_eq!(ideal_gb(&r, &["x", "x+1"], MonomialOrder::GrevLex), vec!["1"]);
    }

    #[test]
    fn degree_bound_trips() {
        let r = Ring::new(&["x", "y", "z"]);
        let ord = TermOrder::ideal(MonomialOrder::Lex);
        let vs = ["x^3-y*z", "x*y^2-z^3"]
            .iter()
            .map(|g| Vect::from_polys(&[r.parse(g).unwrap()], &ord))
            .collect();
        assert!(matches!(groebner(vs, &ord, Some(3)), Err(AlgebraError::DegreeBound { .. })));
    }

    #[test]
    fn subtraction_merges_in_order() {
        let r = Ring::new(&["x", "y"]);
        let ord = TermOrder::ideal(MonomialOrder::GrevLex);
        let a = Vect::from_polys(&[r.parse("x^2+y").unwrap()], &ord);
        let g = Vect::from_polys(&[r.parse("x+1").unwrap()], &ord);
        let out = sub_scaled(&a.terms, &Rat::one(), &[1, 0], &g.terms, &ord);
        assert_eq!(Vect { terms: out }.to_polys(&r, 1)[0], r.parse("-x+y").unwrap());
    }
}

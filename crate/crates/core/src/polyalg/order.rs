use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Variables `0..k` form an elimination block: compare grevlex on the
    /// block first, then grevlex on the remaining variables.
    BlockElim(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::BlockElim(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

/// How module components are merged with the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrder {
    /// Position over term; component 0 is the largest.
    Pot,
    /// Term over position; ties broken by component, 0 largest.
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub module: ModuleOrder,
}

impl TermOrder {
    pub fn new(mono: MonomialOrder, module: ModuleOrder) -> Self {
        TermOrder { mono, module }
    }

    pub fn ideal(mono: MonomialOrder) -> Self {
        TermOrder { mono, module: ModuleOrder::Pot }
    }

    pub fn cmp(&self, a: (&[u32], usize), b: (&[u32], usize)) -> Ordering {
        match self.module {
            ModuleOrder::Pot => b.1.cmp(&a.1).then_with(|| self.mono.cmp(a.0, b.0)),
            ModuleOrder::Top => self.mono.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_comparisons() {
        use Ordering::*;
        // x > y > z
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0, 0], &[0, 5, 5]), Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&[1, 0, 0], &[0, 5, 5]), Less);
        // grevlex: x*z < y^2 (same degree, z exponent decides)
        assert_eq!(MonomialOrder::GrevLex.cmp(&[1, 0, 1], &[0, 2, 0]), Less);
        assert_eq!(MonomialOrder::GrevLex.cmp(&[1, 1, 0], &[0, 2, 0]), Greater);
        // eliminating x: any power of x beats y^9
        assert_eq!(MonomialOrder::BlockElim(1).cmp(&[1, 0, 0], &[0, 9, 0]), Greater);
        let t = TermOrder::new(MonomialOrder::GrevLex, ModuleOrder::Pot);
        assert_eq!(t.cmp((&[0, 0, 0], 0), (&[3, 0, 0], 1)), Greater);
        let t = TermOrder::new(MonomialOrder::GrevLex, ModuleOrder::Top);
        assert_eq!(t.cmp((&[0, 0, 0], 0), (&[3, 0, 0], 1)), Less);
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrevLex),
            (0usize..4).prop_map(MonomialOrder::BlockElim),
        ]
    }

    fn mono() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..5, 4)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_well_founded(
            ord in orders(), a in mono(), b in mono(), c in mono()
        ) {
            let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&ac, &bc));
            // 1 is the minimum
            prop_assert_ne!(ord.cmp(&a, &[0, 0, 0, 0]), Ordering::Less);
            // antisymmetry / totality
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            if ord.cmp(&a, &b) == Ordering::Equal {
                prop_assert_eq!(&a, &b);
            }
        }

        #[test]
        fn orders_are_transitive(ord in orders(), a in mono(), b in mono(), c in mono()) {
            if ord.cmp(&a, &b) != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}

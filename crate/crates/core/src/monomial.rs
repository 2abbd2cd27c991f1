//! Monomials (exponent vectors) and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector, one entry per ring variable, with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    /// The monomial `x_var^exp`.
    pub fn var(nvars: usize, var: usize, exp: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = exp;
        m.degree = exp as u32;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 16]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit set of variables with a positive exponent.
    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Sum of exponents over the variables in `mask`.
    pub fn degree_in(&self, mask: VarSet) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(i, _)| mask.contains(*i))
            .map(|(_, &e)| e as u32)
            .sum()
    }

    /// Inserts `count` zero exponents at position `at`.
    pub(crate) fn insert_zeros(&self, at: usize, count: usize) -> Monomial {
        let mut exps = self.exps.clone();
        for _ in 0..count {
            exps.insert(at, 0);
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Removes the exponents in `at..at+count`; they must all be zero.
    pub(crate) fn remove_range(&self, at: usize, count: usize) -> Option<Monomial> {
        if self.exps[at..at + count].iter().any(|&e| e != 0) {
            return None;
        }
        let mut exps = self.exps.clone();
        exps.drain(at..at + count);
        Some(Monomial {
            exps,
            degree: self.degree,
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A set of variable indices (at most 64 variables).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSet(pub u64);

impl VarSet {
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VarSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(&self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |i| self.contains(*i))
    }
}

/// Orders usable inside a block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseOrder {
    Lex,
    GrevLex,
}

/// A monomial order. Variable precedence follows the ring's variable list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: compare the parts in `eliminate` first using `inner`,
    /// then break ties on the remaining variables with `inner`.
    Block { eliminate: VarSet, inner: BaseOrder },
}

impl From<BaseOrder> for MonomialOrder {
    fn from(b: BaseOrder) -> Self {
        match b {
            BaseOrder::Lex => MonomialOrder::Lex,
            BaseOrder::GrevLex => MonomialOrder::GrevLex,
        }
    }
}

fn lex_masked(a: &[u16], b: &[u16], mask: u64) -> Ordering {
    for i in 0..a.len() {
        if mask >> i & 1 == 1 && a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

fn grevlex_masked(a: &[u16], b: &[u16], mask: u64) -> Ordering {
    let (mut da, mut db) = (0u32, 0u32);
    for i in 0..a.len() {
        if mask >> i & 1 == 1 {
            da += a[i] as u32;
            db += b[i] as u32;
        }
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if mask >> i & 1 == 1 && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn base_masked(order: BaseOrder, a: &[u16], b: &[u16], mask: u64) -> Ordering {
    match order {
        BaseOrder::Lex => lex_masked(a, b, mask),
        BaseOrder::GrevLex => grevlex_masked(a, b, mask),
    }
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
            MonomialOrder::Block { eliminate, inner } => {
                let all = if a.nvars() >= 64 { u64::MAX } else { (1u64 << a.nvars()) - 1 };
                base_masked(inner, &a.exps, &b.exps, eliminate.0)
                    .then_with(|| base_masked(inner, &a.exps, &b.exps, all & !eliminate.0))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block { eliminate, inner } => {
                format!("block({:#x},{})", eliminate.0, MonomialOrder::from(*inner).name())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_examples() {
        // s^2 vs s*f
        assert_eq!(MonomialOrder::Lex.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 3]), &m(&[1, 3])), Ordering::Equal);
    }

    /// Grevlex from its textbook definition: degree first, then the monomial whose
    /// exponent difference has its last nonzero entry negative is larger.
    fn grevlex_oracle(a: &[u16], b: &[u16]) -> Ordering {
        let da: u32 = a.iter().map(|&x| x as u32).sum();
        let db: u32 = b.iter().map(|&x| x as u32).sum();
        if da != db {
            return da.cmp(&db);
        }
        let diff: Vec<i32> = a.iter().zip(b).map(|(x, y)| *x as i32 - *y as i32).collect();
        match diff.iter().rev().find(|&&v| v != 0) {
            None => Ordering::Equal,
            Some(&v) if v < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn grevlex_matches_definition_on_degree_two_in_three_vars() {
        let mut mons = Vec::new();
        for i in 0..3u16 {
            for j in 0..3u16 {
                for k in 0..3u16 {
                    if i + j + k == 2 {
                        mons.push([i, j, k]);
                    }
                }
            }
        }
        for a in &mons {
            for b in &mons {
                assert_eq!(MonomialOrder::GrevLex.compare(&m(a), &m(b)), grevlex_oracle(a, b));
            }
        }
        // x*z < y^2
        assert_eq!(MonomialOrder::GrevLex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates() {
        let ord = MonomialOrder::Block {
            eliminate: VarSet::from_indices([0]),
            inner: BaseOrder::GrevLex,
        };
        // t beats y^5
        assert_eq!(ord.compare(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[1, 0, 2]), &m(&[1, 2, 0])), Ordering::Less);
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Block {
                eliminate: VarSet::from_indices([1, 3]),
                inner: BaseOrder::GrevLex,
            },
            MonomialOrder::Block {
                eliminate: VarSet::from_indices([0]),
                inner: BaseOrder::Lex,
            },
        ]
    }

    proptest! {
        #[test]
        fn order_laws(a in prop::collection::vec(0u16..4, 4),
                      b in prop::collection::vec(0u16..4, 4),
                      c in prop::collection::vec(0u16..4, 4)) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let one = Monomial::one(4);
            for ord in orders() {
                let ab = ord.compare(&a, &b);
                prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(ord.compare(&one, &a), Ordering::Greater);
            }
        }

        #[test]
        fn block_elimination_property(a in prop::collection::vec(0u16..4, 4),
                                      b in prop::collection::vec(0u16..4, 4)) {
            let elim = VarSet::from_indices([1, 3]);
            let ord = MonomialOrder::Block { eliminate: elim, inner: BaseOrder::GrevLex };
            let (a, b) = (m(&a), m(&b));
            if a.degree_in(elim) > 0 && b.degree_in(elim) == 0 {
                prop_assert_eq!(ord.compare(&a, &b), Ordering::Greater);
            }
        }
    }
}

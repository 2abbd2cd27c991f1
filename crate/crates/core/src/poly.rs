//! Canonical sparse multivariate polynomials.
//!
//! Terms are kept strictly descending under the polynomial's current order with no
//! zero coefficients, so structural equality is ring equality. The order travels with
//! the polynomial; [`Polynomial::with_order`] re-sorts.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder, VarSet};
use crate::ring::{same_ring, Ring};

pub type Term = (Monomial, Coeff);

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    order: MonomialOrder,
    terms: Vec<Term>,
}

/// Per-block degrees of a block-homogeneous polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree(pub Vec<u32>);

impl Bidegree {
    pub fn add(&self, other: &Bidegree) -> Bidegree {
        Bidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when non-negative in every block.
    pub fn checked_sub(&self, other: &Bidegree) -> Option<Bidegree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Bidegree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multidegree {
    Homogeneous(Bidegree),
    NotHomogeneous,
    /// The zero polynomial is homogeneous of every degree.
    Zero,
}

pub(crate) fn block_degrees(m: &Monomial, blocks: &[VarSet]) -> Bidegree {
    Bidegree(blocks.iter().map(|b| m.degree_in(*b)).collect())
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: ring.default_order(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::from_i64(ring, 1)
    }

    pub fn variable(ring: &Ring, var: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), var, 1), ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            order: ring.default_order(),
            terms,
        }
    }

    /// Canonicalizes arbitrary terms under the ring's default order.
    pub fn from_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        Polynomial::from_terms_ordered(ring, ring.default_order(), terms)
    }

    pub fn from_terms_ordered(ring: &Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert!(field.owns(&c), "coefficient from a different field");
            assert_eq!(m.nvars(), ring.nvars(), "monomial from a different ring");
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    /// Builds from terms already strictly descending under `order` with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum total degree over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Bit set of the variables that occur.
    pub fn support(&self) -> VarSet {
        VarSet(self.terms.iter().fold(0, |acc, (m, _)| acc | m.support()))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.field();
        let other = other.with_order(self.order);
        let ord = self.order;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &Coeff| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match ord.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        Polynomial::from_sorted(&self.ring, ord, out)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring).with_order(self.order));
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.with_order(self.order).mul_term(m, c));
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = field.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let ord = self.order;
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| ord.compare(&b.0, &a.0));
        Ok(Polynomial::from_sorted(&self.ring, ord, terms))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring).with_order(self.order);
        }
        let field = self.field();
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), field.mul(x, c))).collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }

    /// Multiplication by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring).with_order(self.order);
        }
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|(t, x)| (t.mul(m), field.mul(x, c)))
            .collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }

    /// `self - c * m * g`, with `g` already sorted in `self`'s order.
    pub(crate) fn sub_mul_term(&self, c: &Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.order, g.order);
        let field = self.field();
        let ord = self.order;
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bm = b.first().map(|t| t.0.mul(m));
        while i < a.len() && j < b.len() {
            let cur = bm.as_ref().expect("pending term");
            match ord.compare(&a[i].0, cur) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm.take().unwrap(), field.neg(&field.mul(c, &b[j].1))));
                    j += 1;
                    bm = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let x = field.sub(&a[i].1, &field.mul(c, &b[j].1));
                    if !x.is_zero() {
                        out.push((a[i].0.clone(), x));
                    }
                    i += 1;
                    j += 1;
                    bm = b.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        while j < b.len() {
            out.push((b[j].0.mul(m), field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        }
        Polynomial::from_sorted(&self.ring, ord, out)
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring).with_order(self.order);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&self.field().inv(c).expect("nonzero")),
        }
    }

    /// Shared per-block degree of every term, if there is one.
    pub fn multidegree(&self, blocks: &[VarSet]) -> Result<Multidegree> {
        let n = self.ring.nvars();
        if blocks.iter().any(|b| b.indices().any(|i| i >= n)) {
            return Err(Error::UnknownVariable("block index out of range".into()));
        }
        for (k, a) in blocks.iter().enumerate() {
            if blocks[k + 1..].iter().any(|b| a.0 & b.0 != 0) {
                return Err(Error::InvalidRing("blocks must be disjoint".into()));
            }
        }
        let mut it = self.terms.iter().map(|(m, _)| block_degrees(m, blocks));
        let Some(first) = it.next() else {
            return Ok(Multidegree::Zero);
        };
        if it.all(|d| d == first) {
            Ok(Multidegree::Homogeneous(first))
        } else {
            Ok(Multidegree::NotHomogeneous)
        }
    }

    /// Multidegree with blocks given by variable names.
    pub fn multidegree_by_name<S: AsRef<str>>(&self, blocks: &[Vec<S>]) -> Result<Multidegree> {
        let sets = blocks
            .iter()
            .map(|b| self.ring.var_set(b))
            .collect::<Result<Vec<_>>>()?;
        self.multidegree(&sets)
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.ring.nvars());
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = field.mul(&t, &field.pow(&point[i], e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let g = g.with_order(self.order);
        let field = self.field();
        let (lm, lc) = g.leading_term().cloned().unwrap();
        let lc_inv = field.inv(&lc).unwrap();
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            let Some(q) = m.div(&lm) else {
                return Ok(None);
            };
            let qc = field.mul(&c, &lc_inv);
            rest = rest.sub_mul_term(&qc, &q, &g);
            quotient.push((q, qc));
        }
        Ok(Some(Polynomial::from_sorted(&self.ring, self.order, quotient)))
    }

    /// Renders with the ring's variable names, terms in the current order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let vars = self.ring.vars();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { self.field().neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        vars[i].clone()
                    } else {
                        format!("{}^{}", vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, mono.join("*")));
            }
        }
        out
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) || self.len() != other.len() {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands come from different rings; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.field().from_i64(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn ring() -> Ring {
        RingSpec::with_vars(&["x", "y", "z"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let r = ring();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let f = &(&x * &y) + &x;
        assert_eq!(&f + &Polynomial::zero(&r), f);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let lhs = &(&x - &y) * &(&x + &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring();
        let b = RingSpec::with_vars(&["x", "y"], FieldSpec::Rationals).unwrap();
        let p = a.var("x").unwrap();
        let q = b.var("x").unwrap();
        assert_eq!(p.checked_add(&q), Err(Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let f = &(&x - &y) * &(&x + &(&y * &y));
        assert_eq!(f.exact_div(&(&x - &y)).unwrap(), Some(&x + &(&y * &y)));
        assert_eq!(f.exact_div(&(&x + &y)).unwrap(), None);
        assert_eq!(f.exact_div(&Polynomial::zero(&r)), Err(Error::ZeroDivisor));
    }

    #[test]
    fn multidegree_examples() {
        let r = ring();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let z = r.var("z").unwrap();
        let blocks = [VarSet::from_indices([0]), VarSet::from_indices([1, 2])];
        let f = &x * &(&y - &z);
        assert_eq!(f.multidegree(&blocks).unwrap(), Multidegree::Homogeneous(Bidegree(vec![1, 1])));
        assert_eq!((&x + &y).multidegree(&blocks).unwrap(), Multidegree::NotHomogeneous);
        assert_eq!(Polynomial::zero(&r).multidegree(&blocks).unwrap(), Multidegree::Zero);
    }
}

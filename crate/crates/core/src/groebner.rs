//! Multivariate division, Buchberger's algorithm, and reduced Gröbner bases.

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// `f = sum(quotients[i] * divisors[i]) + remainder`.
#[derive(Clone, Debug)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division. The first divisor (in list order) whose leading monomial
/// divides the current leading term is used.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], ord: MonomialOrder) -> Result<DivisionResult> {
    let ring = f.ring().clone();
    if divisors.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    if divisors.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroDivisor);
    }
    let field = ring.field();
    let divs: Vec<Polynomial> = divisors.iter().map(|g| g.with_order(ord)).collect();
    let lead_inv: Vec<Coeff> = divs
        .iter()
        .map(|g| field.inv(g.leading_coeff().unwrap()).unwrap())
        .collect();
    let mut quotients: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); divs.len()];
    let mut rem = Vec::new();
    let mut p = f.with_order(ord);
    while let Some((m, c)) = p.leading_term().cloned() {
        match divs
            .iter()
            .position(|g| g.leading_monomial().unwrap().divides(&m))
        {
            Some(k) => {
                let q = m.div(divs[k].leading_monomial().unwrap()).unwrap();
                let qc = field.mul(&c, &lead_inv[k]);
                p = p.sub_mul_term(&qc, &q, &divs[k]);
                quotients[k].push((q, qc));
            }
            None => {
                rem.push((m, c));
                p = drop_leading(p);
            }
        }
    }
    Ok(DivisionResult {
        quotients: quotients
            .into_iter()
            .map(|t| Polynomial::from_terms_ordered(&ring, ord, t))
            .collect(),
        remainder: Polynomial::from_sorted(&ring, ord, rem),
    })
}

fn drop_leading(p: Polynomial) -> Polynomial {
    let ring = p.ring().clone();
    let ord = p.order();
    let mut terms = p.into_terms();
    terms.remove(0);
    Polynomial::from_sorted(&ring, ord, terms)
}

/// `S(f, g) = (L/LT(f)) f - (L/LT(g)) g` with `L` the lcm of the leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: MonomialOrder) -> Result<Polynomial> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let f = f.with_order(ord);
    let g = g.with_order(ord);
    let field = f.field();
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).unwrap(), &field.inv(fc).unwrap());
    Ok(a.sub_mul_term(&field.inv(gc).unwrap(), &l.div(gm).unwrap(), &g))
}

/// A Gröbner basis together with its order; reduced and sorted by descending
/// leading monomial when produced by [`buchberger`].
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    /// `elements[k] = sum_j transformation[k][j] * generators[j]`.
    transformation: Option<Vec<Vec<Polynomial>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairStrategy {
    /// Smallest lcm first (by total degree, then the order).
    #[default]
    Normal,
    /// Pairs in creation order.
    Fifo,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GbOptions {
    pub track: bool,
    pub strategy: PairStrategy,
}

struct Elem {
    poly: Polynomial,
    lm: Monomial,
    mask: u64,
    rep: Option<Vec<Polynomial>>,
}

impl Elem {
    fn new(poly: Polynomial, rep: Option<Vec<Polynomial>>) -> Elem {
        let lm = poly.leading_monomial().expect("nonzero element").clone();
        Elem {
            mask: lm.support(),
            lm,
            poly,
            rep,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    serial: usize,
}

fn find_reducer(m: &Monomial, elems: &[Elem], active: &[usize]) -> Option<usize> {
    let ms = m.support();
    active
        .iter()
        .copied()
        .find(|&k| elems[k].mask & !ms == 0 && elems[k].lm.divides(m))
}

fn sub_rep(rep: &mut [Polynomial], c: &Coeff, m: &Monomial, other: &[Polynomial]) {
    for (a, b) in rep.iter_mut().zip(other) {
        if !b.is_zero() {
            *a = a.sub_mul_term(c, m, b);
        }
    }
}

/// Full reduction of `p` (with optional cofactor vector) by the monic elements `active`.
fn reduce_full(
    mut p: Polynomial,
    mut rep: Option<Vec<Polynomial>>,
    elems: &[Elem],
    active: &[usize],
) -> (Polynomial, Option<Vec<Polynomial>>) {
    let ring = p.ring().clone();
    let ord = p.order();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.leading_term().cloned() {
        match find_reducer(&m, elems, active) {
            Some(k) => {
                let q = m.div(&elems[k].lm).unwrap();
                p = p.sub_mul_term(&c, &q, &elems[k].poly);
                if let (Some(r), Some(o)) = (rep.as_mut(), elems[k].rep.as_ref()) {
                    sub_rep(r, &c, &q, o);
                }
            }
            None => {
                rem.push((m, c));
                p = drop_leading(p);
            }
        }
    }
    (Polynomial::from_sorted(&ring, ord, rem), rep)
}

fn make_monic(p: Polynomial, rep: Option<Vec<Polynomial>>) -> (Polynomial, Option<Vec<Polynomial>>) {
    let field = p.field();
    let lc = p.leading_coeff().expect("nonzero");
    if lc.is_one() {
        return (p, rep);
    }
    let inv = field.inv(lc).unwrap();
    let rep = rep.map(|r| r.iter().map(|x| x.scale(&inv)).collect());
    (p.scale(&inv), rep)
}

struct Builder {
    ring: Ring,
    order: MonomialOrder,
    elems: Vec<Elem>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    serial: usize,
}

impl Builder {
    /// Gebauer-Möller installation of a new monic element.
    fn insert(&mut self, h: Elem) {
        let hi = self.elems.len();
        let hlm = h.lm.clone();
        self.elems.push(h);

        // Candidate pairs (h, g) for g in the current basis.
        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let l = hlm.lcm(&self.elems[g].lm);
                let coprime = hlm.is_coprime(&self.elems[g].lm);
                (g, l, coprime)
            })
            .collect();
        // Chain criterion on the new pairs, then drop the coprime ones.
        let mut kept: Vec<usize> = Vec::new();
        for a in 0..cands.len() {
            let l = &cands[a].1;
            let dominated = !cands[a].2
                && (cands[a + 1..].iter().any(|c| c.1.divides(l))
                    || kept.iter().any(|&b| cands[b].1.divides(l)));
            if !dominated {
                kept.push(a);
            }
        }
        let mut keep = vec![false; cands.len()];
        for a in kept {
            keep[a] = !cands[a].2;
        }
        // Old pairs made redundant by h.
        let elems = &self.elems;
        self.pairs.retain(|p| {
            let li = hlm.lcm(&elems[p.i].lm);
            let lj = hlm.lcm(&elems[p.j].lm);
            !(hlm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        for (k, (g, l, _)) in cands.into_iter().enumerate() {
            if keep[k] {
                self.pairs.push(Pair {
                    i: g,
                    j: hi,
                    lcm: l,
                    serial: self.serial,
                });
                self.serial += 1;
            }
        }
        let elems = &self.elems;
        self.active.retain(|&g| !hlm.divides(&elems[g].lm));
        self.active.push(hi);
    }

    fn pop_pair(&mut self, strategy: PairStrategy) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.order;
        let best = match strategy {
            PairStrategy::Fifo => (0..self.pairs.len()).min_by_key(|&k| self.pairs[k].serial),
            PairStrategy::Normal => (0..self.pairs.len()).min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| ord.compare(&pa.lcm, &pb.lcm))
                    .then_with(|| pa.serial.cmp(&pb.serial))
            }),
        }?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_poly(&self, p: &Pair) -> (Polynomial, Option<Vec<Polynomial>>) {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let ma = p.lcm.div(&a.lm).unwrap();
        let mb = p.lcm.div(&b.lm).unwrap();
        let one = self.ring.field().one();
        let s = a.poly.mul_term(&ma, &one).sub_mul_term(&one, &mb, &b.poly);
        let rep = match (&a.rep, &b.rep) {
            (Some(ra), Some(rb)) => {
                let mut r: Vec<Polynomial> = ra.iter().map(|x| x.mul_term(&ma, &one)).collect();
                sub_rep(&mut r, &one, &mb, rb);
                Some(r)
            }
            _ => None,
        };
        (s, rep)
    }
}

pub fn buchberger(gens: &[Polynomial], ord: MonomialOrder, track: bool) -> Result<GroebnerBasis> {
    buchberger_with(
        gens,
        ord,
        GbOptions {
            track,
            ..Default::default()
        },
    )
}

/// Buchberger's algorithm with the coprime and chain criteria. An empty or all-zero
/// generator list needs the ring, so it is rejected here; see [`GroebnerBasis::zero_ideal`].
pub fn buchberger_with(gens: &[Polynomial], ord: MonomialOrder, opts: GbOptions) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Unsupported("empty generator list has no ring".into()));
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    let ngens = gens.len();
    let mut b = Builder {
        ring: ring.clone(),
        order: ord,
        elems: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        serial: 0,
    };
    let unit_rep = |j: usize| -> Vec<Polynomial> {
        (0..ngens)
            .map(|k| {
                if k == j {
                    Polynomial::one(&ring).with_order(ord)
                } else {
                    Polynomial::zero(&ring).with_order(ord)
                }
            })
            .collect()
    };
    let mut unit: Option<Elem> = None;
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = opts.track.then(|| unit_rep(j));
        let (h, rep) = reduce_full(g.with_order(ord), rep, &b.elems, &b.active);
        if h.is_zero() {
            continue;
        }
        let (h, rep) = make_monic(h, rep);
        let e = Elem::new(h, rep);
        if e.lm.is_one() {
            unit = Some(e);
            break;
        }
        b.insert(e);
    }
    if unit.is_none() {
        while let Some(p) = b.pop_pair(opts.strategy) {
            let (s, rep) = b.s_poly(&p);
            let (h, rep) = reduce_full(s, rep, &b.elems, &b.active);
            if h.is_zero() {
                continue;
            }
            let (h, rep) = make_monic(h, rep);
            let e = Elem::new(h, rep);
            if e.lm.is_one() {
                unit = Some(e);
                break;
            }
            b.insert(e);
        }
    }
    let basis: Vec<Elem> = match unit {
        Some(e) => vec![e],
        None => {
            let mut elems = b.elems;
            b.active.sort_unstable();
            let mut out = Vec::with_capacity(b.active.len());
            for k in b.active.into_iter().rev() {
                out.push(elems.swap_remove(k));
            }
            out
        }
    };
    Ok(finish(ring, ord, basis, opts.track))
}

fn finish(ring: Ring, ord: MonomialOrder, elems: Vec<Elem>, track: bool) -> GroebnerBasis {
    let reduced = interreduce(elems, ord);
    let transformation = if track {
        Some(reduced.iter().map(|e| e.rep.clone().unwrap()).collect())
    } else {
        None
    };
    GroebnerBasis {
        ring,
        order: ord,
        elements: reduced.into_iter().map(|e| e.poly).collect(),
        transformation,
    }
}

/// Minimalizes, tail-reduces, and sorts a set of monic elements of a Gröbner basis.
fn interreduce(mut elems: Vec<Elem>, ord: MonomialOrder) -> Vec<Elem> {
    // Keep elements whose leading monomial is not divisible by another's.
    elems.sort_by(|a, b| ord.compare(&a.lm, &b.lm));
    let mut minimal: Vec<Elem> = Vec::new();
    for e in elems {
        if !minimal.iter().any(|m| m.lm.divides(&e.lm)) {
            minimal.push(e);
        }
    }
    // Tail-reduce each against the others; leading monomials are untouched.
    let n = minimal.len();
    for k in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != k).collect();
        let e = &minimal[k];
        let ring = e.poly.ring().clone();
        let lead = Polynomial::from_sorted(&ring, ord, vec![e.poly.terms()[0].clone()]);
        let tail = Polynomial::from_sorted(&ring, ord, e.poly.terms()[1..].to_vec());
        let tail_rep = e.rep.clone();
        let (tail, rep) = reduce_tail(tail, tail_rep, &minimal, &others);
        let poly = &lead + &tail;
        minimal[k].poly = poly;
        minimal[k].rep = rep;
    }
    minimal.sort_by(|a, b| ord.compare(&b.lm, &a.lm));
    minimal
}

/// Reduces `tail`; the cofactor vector belongs to `lead + tail` and only changes
/// by the subtracted multiples.
fn reduce_tail(
    tail: Polynomial,
    rep: Option<Vec<Polynomial>>,
    elems: &[Elem],
    active: &[usize],
) -> (Polynomial, Option<Vec<Polynomial>>) {
    reduce_full(tail, rep, elems, active)
}

impl GroebnerBasis {
    /// Basis of the zero ideal.
    pub fn zero_ideal(ring: &Ring, ord: MonomialOrder) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            order: ord,
            elements: Vec::new(),
            transformation: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn transformation(&self) -> Option<&[Vec<Polynomial>]> {
        self.transformation.as_deref()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    fn elems(&self) -> Vec<Elem> {
        self.elements.iter().map(|p| Elem::new(p.clone(), None)).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let elems = self.elems();
        let active: Vec<usize> = (0..elems.len()).collect();
        Ok(reduce_full(f.with_order(self.order), None, &elems, &active).0)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every pairwise S-polynomial reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let s = s_polynomial(&self.elements[i], &self.elements[j], self.order).unwrap();
                self.normal_form(&s).unwrap().is_zero()
            })
        })
    }

    /// Monic, minimal, and no term of an element divisible by another leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(Coeff::is_one)
                && g.terms().iter().all(|(m, _)| {
                    lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(m))
                })
        })
    }

    /// Re-expands the transformation matrix against `gens` and compares.
    pub fn check_transformation(&self, gens: &[Polynomial]) -> bool {
        let Some(t) = &self.transformation else {
            return false;
        };
        self.elements.iter().zip(t).all(|(g, row)| {
            let mut acc = Polynomial::zero(&self.ring).with_order(self.order);
            for (c, h) in row.iter().zip(gens) {
                acc = &acc + &(c * h);
            }
            &acc == g
        })
    }
}

/// Reduces an arbitrary Gröbner basis to the canonical reduced one.
pub fn reduce_basis(gb: &GroebnerBasis) -> GroebnerBasis {
    let ord = gb.order;
    let elems: Vec<Elem> = gb
        .elements
        .iter()
        .filter(|p| !p.is_zero())
        .zip(
            gb.transformation
                .as_ref()
                .map(|t| t.iter().map(|r| Some(r.clone())).collect::<Vec<_>>())
                .unwrap_or_else(|| vec![None; gb.elements.len()]),
        )
        .map(|(p, rep)| {
            let (p, rep) = make_monic(p.with_order(ord), rep);
            Elem::new(p, rep)
        })
        .collect();
    if let Some(u) = elems.iter().position(|e| e.lm.is_one()) {
        let mut elems = elems;
        let e = elems.swap_remove(u);
        return GroebnerBasis {
            ring: gb.ring.clone(),
            order: ord,
            elements: vec![Polynomial::one(&gb.ring).with_order(ord)],
            transformation: e.rep.map(|r| vec![r]),
        };
    }
    finish(gb.ring.clone(), ord, elems, gb.transformation.is_some())
}

/// Wraps elements that are already known to form a Gröbner basis.
pub fn from_elements(ring: &Ring, ord: MonomialOrder, elements: Vec<Polynomial>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order: ord,
        elements: elements.into_iter().map(|p| p.with_order(ord)).collect(),
        transformation: None,
    }
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.order == other.order
            && self.elements == other.elements
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::{parse_polynomial, parse_polynomial_list};
    use crate::ring::RingSpec;

    fn ring2() -> Ring {
        RingSpec::with_vars(&["x", "y"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn divide_simple() {
        let r = ring2();
        let f = parse_polynomial("x^2 + x*y", &r).unwrap();
        let x = parse_polynomial("x", &r).unwrap();
        let res = divide(&f, &[x], MonomialOrder::GrevLex).unwrap();
        assert_eq!(res.quotients[0], parse_polynomial("x + y", &r).unwrap());
        assert!(res.remainder.is_zero());
    }

    #[test]
    fn divide_rejects_zero_divisor() {
        let r = ring2();
        let f = parse_polynomial("x", &r).unwrap();
        assert!(matches!(
            divide(&f, &[Polynomial::zero(&r)], MonomialOrder::Lex),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn s_polynomial_examples() {
        let r = ring2();
        let f = parse_polynomial("x^2", &r).unwrap();
        let g = parse_polynomial("x*y", &r).unwrap();
        assert!(s_polynomial(&f, &f, MonomialOrder::Lex).unwrap().is_zero());
        assert!(s_polynomial(&f, &g, MonomialOrder::Lex).unwrap().is_zero());
        assert!(s_polynomial(&f, &Polynomial::zero(&r), MonomialOrder::Lex).is_err());
    }

    #[test]
    fn basis_of_single_generator() {
        let r = ring2();
        let x = parse_polynomial("x", &r).unwrap();
        let gb = buchberger(&[x.clone()], MonomialOrder::GrevLex, false).unwrap();
        assert_eq!(gb.elements(), &[x]);
    }

    #[test]
    fn reduce_basis_examples() {
        let r = ring2();
        let ord = MonomialOrder::Lex;
        let a = from_elements(&r, ord, parse_polynomial_list("x, x^2", &r).unwrap());
        assert_eq!(reduce_basis(&a).elements(), &[parse_polynomial("x", &r).unwrap()]);
        let b = from_elements(&r, ord, parse_polynomial_list("x + y, y", &r).unwrap());
        assert_eq!(
            reduce_basis(&b).elements(),
            parse_polynomial_list("x, y", &r).unwrap().as_slice()
        );
        let red = reduce_basis(&b);
        assert_eq!(reduce_basis(&red), red);
    }

    #[test]
    fn unit_and_zero_ideal() {
        let r = ring2();
        let gens = parse_polynomial_list("x*y - 1, x, 0", &r).unwrap();
        let gb = buchberger(&gens, MonomialOrder::GrevLex, true).unwrap();
        assert!(gb.is_unit());
        assert!(gb.check_transformation(&gens));
        let z = buchberger(&[Polynomial::zero(&r)], MonomialOrder::GrevLex, false).unwrap();
        assert!(z.is_zero_ideal());
        assert!(z.contains(&Polynomial::zero(&r)).unwrap());
    }

    #[test]
    fn tracked_basis_reexpands() {
        let r = RingSpec::with_vars(&["x", "y", "z"], FieldSpec::Rationals).unwrap();
        let gens = parse_polynomial_list("x^2 - y, x*y - z, 2*y^2 - x*z + 1", &r).unwrap();
        for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let gb = buchberger(&gens, ord, true).unwrap();
            assert!(gb.satisfies_criterion());
            assert!(gb.is_reduced());
            assert!(gb.check_transformation(&gens));
        }
    }
}

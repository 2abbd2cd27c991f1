//! Random ideals and property checkers shared by the integration tests.
#![allow(dead_code)]

use mmlab::groebner::{buchberger_with, GbOptions, PairStrategy};
use mmlab::{
    divide, s_polynomial, FieldSpec, GroebnerBasis, Ideal, Monomial, MonomialOrder, Polynomial, Ring, RingSpec,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = Result<(), String>;

pub fn small_ring(field: FieldSpec) -> Ring {
    RingSpec::with_vars(&["x", "y", "z", "w"], field).unwrap()
}

pub fn poly_from(ring: &Ring, terms: &[(Vec<u16>, i64)]) -> Polynomial {
    let field = ring.field();
    terms.iter().fold(Polynomial::zero(ring), |acc, (e, c)| {
        acc + Polynomial::monomial(ring, Monomial::from_exponents(e), field.from_i64(*c))
    })
}

pub fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_deg: u16) -> Polynomial {
    let n = ring.nvars();
    let terms: Vec<(Vec<u16>, i64)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let mut e = vec![0u16; n];
            for _ in 0..rng.gen_range(0..=max_deg) {
                e[rng.gen_range(0..n)] += 1;
            }
            (e, rng.gen_range(-3..=3))
        })
        .collect();
    poly_from(ring, &terms)
}

pub fn random_nonzero<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_deg: u16) -> Polynomial {
    loop {
        let p = random_poly(rng, ring, max_terms, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ideal<R: Rng>(rng: &mut R, ring: &Ring, ngens: usize) -> Ideal {
    let gens = (0..ngens).map(|_| random_nonzero(rng, ring, 3, 3)).collect();
    Ideal::new(ring, gens).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `f = sum q_i g_i + r` with no term of `r` divisible by a leading monomial.
pub fn division_identity(f: &Polynomial, gens: &[Polynomial], ord: MonomialOrder) -> Check {
    let div = divide(f, gens, ord).map_err(err)?;
    let mut sum = div.remainder.clone();
    for (q, g) in div.quotients.iter().zip(gens) {
        sum = sum + q * g;
    }
    ensure(sum == *f, || format!("re-expansion of {f} failed"))?;
    let lms: Vec<Monomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(ord).leading_monomial().unwrap().clone())
        .collect();
    for t in div.remainder.terms() {
        ensure(!lms.iter().any(|m| m.divides(&t.0)), || format!("remainder of {f} is reducible"))?;
    }
    Ok(())
}

/// Every S-polynomial of the basis reduces to zero, and the basis is reduced.
pub fn s_criterion(gb: &GroebnerBasis) -> Check {
    let els = gb.elements();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let s = s_polynomial(&els[i], &els[j], gb.order()).map_err(err)?;
            let r = divide(&s, els, gb.order()).map_err(err)?.remainder;
            ensure(r.is_zero(), || format!("S({}, {}) leaves {r}", els[i], els[j]))?;
        }
    }
    ensure(gb.is_reduced(), || "basis is not reduced".into())
}

/// The reduced basis does not depend on generator order or pair strategy.
pub fn canonical<R: Rng>(rng: &mut R, gens: &[Polynomial], ord: MonomialOrder) -> Check {
    let reference = buchberger_with(gens, ord, GbOptions::default()).map_err(err)?;
    let mut shuffled = gens.to_vec();
    shuffled.shuffle(rng);
    for strategy in [PairStrategy::Normal, PairStrategy::Fifo] {
        let other = buchberger_with(
            &shuffled,
            ord,
            GbOptions {
                strategy,
                ..Default::default()
            },
        )
        .map_err(err)?;
        ensure(other.elements() == reference.elements(), || {
            format!("{strategy:?} basis of shuffled generators differs")
        })?;
    }
    Ok(())
}

/// Membership samples: random polynomials, multiples of each ideal's generators,
/// and products landing in both.
pub fn samples<R: Rng>(rng: &mut R, a: &Ideal, b: &Ideal, n: usize) -> Vec<Polynomial> {
    let ring = a.ring().clone();
    (0..n)
        .map(|k| {
            let h = random_poly(rng, &ring, 2, 2);
            match k % 4 {
                0 => h,
                1 => &h * a.gens().choose(rng).unwrap(),
                2 => &h * b.gens().choose(rng).unwrap(),
                _ => &(&h * a.gens().choose(rng).unwrap()) * b.gens().choose(rng).unwrap(),
            }
        })
        .collect()
}

/// `g in A ∩ B` iff `g in A` and `g in B`; `g in A : f` iff `g f in A`.
pub fn intersect_colon(a: &Ideal, b: &Ideal, f: &Polynomial, gs: &[Polynomial]) -> Check {
    let meet = a.intersect(b).map_err(err)?;
    let quot = a.colon(f).map_err(err)?;
    for g in gs {
        let lhs = meet.contains(g).map_err(err)?;
        let rhs = a.contains(g).map_err(err)? && b.contains(g).map_err(err)?;
        ensure(lhs == rhs, || format!("intersection membership of {g}: {lhs} vs {rhs}"))?;
        let lhs = quot.contains(g).map_err(err)?;
        let rhs = a.contains(&(g * f)).map_err(err)?;
        ensure(lhs == rhs, || format!("colon membership of {g}: {lhs} vs {rhs}"))?;
    }
    Ok(())
}

/// Membership implies radical membership, which implies some power `f^k`,
/// `k <= 32`, is a member. Returns that `k` (0 outside the radical).
pub fn rabinowitsch(i: &Ideal, f: &Polynomial) -> Result<u32, String> {
    let rad = i.radical_member(f).map_err(err)?;
    if i.contains(f).map_err(err)? {
        ensure(rad, || format!("{f} is a member but not in the radical"))?;
        return Ok(1);
    }
    if !rad {
        return Ok(0);
    }
    let mut p = f.clone();
    for k in 2..=32 {
        p = &p * f;
        if i.contains(&p).map_err(err)? {
            return Ok(k);
        }
    }
    Err(format!("{f} is in the radical but no power up to 32 is a member"))
}

pub fn dimension_agrees(i: &Ideal) -> Check {
    let lex = i.dimension_with(MonomialOrder::Lex).map_err(err)?;
    let grevlex = i.dimension_with(MonomialOrder::GrevLex).map_err(err)?;
    ensure(lex == grevlex, || format!("dimension {lex} under lex, {grevlex} under grevlex"))
}

//! Ideals with cached reduced Gröbner bases, and the ideal-level operations built on them.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::monomial::{BaseOrder, Monomial, MonomialOrder, VarSet};
use crate::parse::{parse_polynomial_list, render_ideal};
use crate::poly::Polynomial;
use crate::ring::{extend_ring, fresh_name, same_ring, Position, Ring};

/// The order used for every equality and membership check.
pub const CANONICAL_ORDER: MonomialOrder = MonomialOrder::GrevLex;

/// Largest ring for the exhaustive independent-set dimension search.
const MAX_DIMENSION_VARS: usize = 24;

pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Mutex<Vec<(MonomialOrder, Arc<GroebnerBasis>)>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", render_ideal(&self.gens))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", render_ideal(&self.gens))
    }
}

/// Certificate of membership: `target = sum(coefficients[i] * gens[i])`.
#[derive(Clone, Debug)]
pub struct Membership {
    pub coefficients: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(Vec::new()),
        })
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Ideal> {
        Ideal::new(ring, parse_polynomial_list(text, ring)?)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// An ideal whose reduced basis under `ord` is already known.
    fn with_basis(ring: &Ring, gb: GroebnerBasis) -> Ideal {
        let gens = gb.elements().to_vec();
        Ideal {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(vec![(gb.order(), Arc::new(gb))]),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_ideal(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis under `ord`, computed once and cached.
    pub fn groebner(&self, ord: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some((_, gb)) = self.cache.lock().unwrap().iter().find(|(o, _)| *o == ord) {
            return Ok(gb.clone());
        }
        let nonzero: Vec<Polynomial> = self.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let gb = if nonzero.is_empty() {
            GroebnerBasis::zero_ideal(&self.ring, ord)
        } else {
            groebner::buchberger(&nonzero, ord, false)?
        };
        let gb = Arc::new(gb);
        self.cache.lock().unwrap().push((ord, gb.clone()));
        Ok(gb)
    }

    pub fn gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(CANONICAL_ORDER)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Polynomial::is_zero)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.gb()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ideal(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Expresses `f` in this ideal's generators, when it is a member.
    pub fn membership_certificate(&self, f: &Polynomial) -> Result<Option<Membership>> {
        self.check(f)?;
        let n = self.gens.len();
        let zero = Polynomial::zero(&self.ring);
        if f.is_zero() {
            return Ok(Some(Membership {
                coefficients: vec![zero; n],
            }));
        }
        let idx: Vec<usize> = (0..n).filter(|&i| !self.gens[i].is_zero()).collect();
        if idx.is_empty() {
            return Ok(None);
        }
        let nonzero: Vec<Polynomial> = idx.iter().map(|&i| self.gens[i].clone()).collect();
        let gb = groebner::buchberger(&nonzero, CANONICAL_ORDER, true)?;
        let div = groebner::divide(f, gb.elements(), CANONICAL_ORDER)?;
        if !div.remainder.is_zero() {
            return Ok(None);
        }
        let t = gb.transformation().expect("tracked");
        let mut coeffs = vec![zero.clone(); n];
        for (q, row) in div.quotients.iter().zip(t) {
            for (k, c) in row.iter().enumerate() {
                coeffs[idx[k]] = &coeffs[idx[k]] + &(q * c);
            }
        }
        let coefficients: Vec<Polynomial> = coeffs.into_iter().map(|c| c.with_order(self.ring.default_order())).collect();
        let mut acc = zero;
        for (c, g) in coefficients.iter().zip(&self.gens) {
            acc = &acc + &(c * g);
        }
        if &acc != f {
            return Err(Error::Invariant("membership certificate does not re-expand".into()));
        }
        Ok(Some(Membership { coefficients }))
    }

    /// Equality as ideals: identical reduced bases under the canonical order.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ideal(other)?;
        Ok(*self.gb()? == *other.gb()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut gens = Vec::new();
        for a in self.gens.iter().filter(|g| !g.is_zero()) {
            for b in other.gens.iter().filter(|g| !g.is_zero()) {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J` as the `t`-free part of `t*I + (1-t)*J` under an order eliminating `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let t = fresh_name(&self.ring, "t");
        let (ext, emb) = extend_ring(&self.ring, &[t], Position::Front)?;
        let tv = Polynomial::variable(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &tv;
        let mut gens = Vec::new();
        for g in self.gens.iter().filter(|g| !g.is_zero()) {
            gens.push(&tv * &emb.embed(g)?);
        }
        for g in other.gens.iter().filter(|g| !g.is_zero()) {
            gens.push(&one_minus_t * &emb.embed(g)?);
        }
        let ord = MonomialOrder::Block {
            eliminate: emb.new_vars(),
            inner: BaseOrder::GrevLex,
        };
        let gb = groebner::buchberger(&gens, ord, false)?;
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter_map(|g| emb.restrict(g))
            .collect();
        // The t-free part of a block basis is a reduced basis for the inner order.
        Ok(Ideal::with_basis(
            &self.ring,
            groebner::from_elements(&self.ring, CANONICAL_ORDER, kept),
        ))
    }

    /// `I ∩ K[remaining variables]`.
    pub fn eliminate(&self, vars: VarSet) -> Result<Ideal> {
        if vars.indices().any(|i| i >= self.ring.nvars()) {
            return Err(Error::UnknownVariable("index out of range".into()));
        }
        if vars.is_empty() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ord = MonomialOrder::Block {
            eliminate: vars,
            inner: BaseOrder::GrevLex,
        };
        let gb = self.groebner(ord)?;
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.support().0 & vars.0 == 0)
            .cloned()
            .collect();
        Ok(Ideal::with_basis(
            &self.ring,
            groebner::from_elements(&self.ring, CANONICAL_ORDER, kept),
        ))
    }

    pub fn eliminate_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Ideal> {
        self.eliminate(self.ring.var_set(names)?)
    }

    /// `I : f`, from `I ∩ (f)` by exact division of each generator by `f`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![f.clone()])?)?;
        let mut gens = Vec::with_capacity(inter.gens.len());
        for g in &inter.gens {
            match g.exact_div(f)? {
                Some(q) => gens.push(q),
                None => return Err(Error::Invariant(format!("{f} does not divide {g}"))),
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I : J`, the intersection of `I : g` over the generators of `J`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ideal(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in other.gens.iter().filter(|g| !g.is_zero()) {
            acc = acc.intersect(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 - y f)` with a fresh variable `y`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_unit()? {
            return Ok(true);
        }
        let y = fresh_name(&self.ring, "y");
        let (ext, emb) = extend_ring(&self.ring, &[y], Position::Back)?;
        let yv = Polynomial::variable(&ext, ext.nvars() - 1);
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| emb.embed(g))
            .collect::<Result<_>>()?;
        gens.push(&Polynomial::one(&ext) - &(&yv * &emb.embed(f)?));
        Ok(groebner::buchberger(&gens, CANONICAL_ORDER, false)?.is_unit())
    }

    /// Krull dimension of `R/I`; `-1` for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        self.dimension_with(CANONICAL_ORDER)
    }

    /// Largest set of variables containing the support of no leading monomial.
    pub fn dimension_with(&self, ord: MonomialOrder) -> Result<i64> {
        let n = self.ring.nvars();
        if n > MAX_DIMENSION_VARS {
            return Err(Error::Unsupported(format!(
                "dimension search is limited to {MAX_DIMENSION_VARS} variables"
            )));
        }
        let gb = self.groebner(ord)?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let supports: Vec<u64> = gb.leading_monomials().iter().map(Monomial::support).collect();
        let best = (0u64..1 << n)
            .filter(|s| supports.iter().all(|m| m & !s != 0))
            .map(|s| s.count_ones())
            .max()
            .unwrap_or(0);
        Ok(best as i64)
    }

    /// Minimal generators of the leading-term ideal under `ord`.
    pub fn leading_monomials(&self, ord: MonomialOrder) -> Result<Vec<Monomial>> {
        Ok(self.groebner(ord)?.leading_monomials())
    }
}

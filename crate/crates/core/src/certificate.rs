//! Degree-bounded membership certificates: is `target` an R-linear combination
//! of the generators with every coefficient of total degree ≤ D?
//!
//! Unknowns are (generator, multiplier monomial) slots; equations compare the
//! coefficient of every monomial that can occur.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, Solution, Solver};
use crate::monomial::{Monomial, VarSet};
use crate::poly::{Bidegree, Multidegree, Polynomial};
use crate::ring::{same_ring, Ring};

/// All monomials in `vars` of total degree ≤ `max_deg`, by degree and then
/// lexicographically descending.
pub fn monomial_basis(nvars: usize, vars: VarSet, max_deg: u32) -> Vec<Monomial> {
    let idx: Vec<usize> = vars.indices().filter(|&i| i < nvars).collect();
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        let mut exps = vec![0u16; nvars];
        fill(&idx, 0, deg, &mut exps, &mut out);
    }
    out
}

fn fill(idx: &[usize], k: usize, left: u32, exps: &mut [u16], out: &mut Vec<Monomial>) {
    if k == idx.len() {
        if left == 0 {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    if k + 1 == idx.len() {
        exps[idx[k]] = left as u16;
        out.push(Monomial::from_exponents(exps));
        exps[idx[k]] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[idx[k]] = e as u16;
        fill(idx, k + 1, left - e, exps, out);
    }
    exps[idx[k]] = 0;
}

/// Which multipliers are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Restriction {
    /// Multipliers only in these variables.
    pub subring: Option<VarSet>,
    /// Only products of the target's block degree; generators that are not
    /// block-homogeneous get no slots.
    pub homogeneous: Option<Homogeneity>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneity {
    pub blocks: Vec<VarSet>,
    pub target: Bidegree,
}

impl Restriction {
    pub fn full_ring() -> Self {
        Restriction::default()
    }

    pub fn subring(vars: VarSet) -> Self {
        Restriction {
            subring: Some(vars),
            homogeneous: None,
        }
    }

    pub fn block_homogeneous(blocks: Vec<VarSet>, target: Bidegree) -> Self {
        Restriction {
            subring: None,
            homogeneous: Some(Homogeneity { blocks, target }),
        }
    }

    pub fn and(self, other: Restriction) -> Self {
        Restriction {
            subring: match (self.subring, other.subring) {
                (Some(a), Some(b)) => Some(VarSet(a.0 & b.0)),
                (a, b) => a.or(b),
            },
            homogeneous: self.homogeneous.or(other.homogeneous),
        }
    }

    pub fn is_full_ring(&self) -> bool {
        self.subring.is_none() && self.homogeneous.is_none()
    }

    pub fn name(&self) -> &'static str {
        match (&self.subring, &self.homogeneous) {
            (None, None) => "full-ring",
            (Some(_), None) => "subring",
            (None, Some(_)) => "block-homogeneous",
            (Some(_), Some(_)) => "subring+block-homogeneous",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertificateQuery {
    pub target: Polynomial,
    pub generators: Vec<Polynomial>,
    pub degree_bound: u32,
    pub restriction: Restriction,
    /// Pins coefficient `i` to the given polynomial.
    pub fixed: Vec<(usize, Polynomial)>,
}

impl CertificateQuery {
    pub fn new(target: Polynomial, generators: Vec<Polynomial>, degree_bound: u32) -> Self {
        CertificateQuery {
            target,
            generators,
            degree_bound,
            restriction: Restriction::full_ring(),
            fixed: Vec::new(),
        }
    }

    pub fn restrict(mut self, r: Restriction) -> Self {
        self.restriction = r;
        self
    }

    pub fn fix(mut self, generator: usize, value: Polynomial) -> Self {
        self.fixed.push((generator, value));
        self
    }

    pub fn with_bound(&self, d: u32) -> Self {
        let mut q = self.clone();
        q.degree_bound = d;
        q
    }

    fn ring(&self) -> &Ring {
        self.target.ring()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub coefficients: Vec<Polynomial>,
    pub max_degree: u32,
}

impl Certificate {
    /// `Σ coefficients[i] · generators[i] == target`.
    pub fn verify(&self, target: &Polynomial, generators: &[Polynomial]) -> bool {
        if self.coefficients.len() != generators.len() {
            return false;
        }
        let mut acc = Polynomial::zero(target.ring());
        for (r, g) in self.coefficients.iter().zip(generators) {
            acc = &acc + &(r * g);
        }
        &acc == target
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemStats {
    pub unknowns: usize,
    pub rows: usize,
    pub pruned_unknowns: usize,
    pub pruned_rows: usize,
}

/// The linear system of a query, with the slot of every unknown.
#[derive(Clone, Debug)]
pub struct CertificateSystem {
    pub system: LinearSystem,
    pub unknowns: Vec<(usize, Monomial)>,
}

fn allowed_multipliers(q: &CertificateQuery, gen: &Polynomial) -> Result<Vec<Monomial>> {
    let ring = q.ring();
    let n = ring.nvars();
    if gen.is_zero() {
        return Ok(Vec::new());
    }
    let vars = q.restriction.subring.unwrap_or(VarSet::from_indices(0..n));
    let basis = monomial_basis(n, vars, q.degree_bound);
    let Some(h) = &q.restriction.homogeneous else {
        return Ok(basis);
    };
    let want = match gen.multidegree(&h.blocks)? {
        Multidegree::Homogeneous(b) => match h.target.checked_sub(&b) {
            Some(w) => w,
            None => return Ok(Vec::new()),
        },
        _ => return Ok(Vec::new()),
    };
    Ok(basis
        .into_iter()
        .filter(|m| h.blocks.iter().zip(&want.0).all(|(b, &w)| m.degree_in(*b) == w))
        .collect())
}

pub fn build_system(q: &CertificateQuery) -> Result<CertificateSystem> {
    let ring = q.ring().clone();
    if q.generators.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    if let Some(h) = &q.restriction.homogeneous {
        if h.blocks.len() != h.target.0.len() {
            return Err(Error::Invariant("one target degree per block".into()));
        }
        match q.target.multidegree(&h.blocks)? {
            Multidegree::Homogeneous(b) if b == h.target => {}
            Multidegree::Zero => {}
            _ => return Err(Error::NotHomogeneous),
        }
    }
    for (j, v) in &q.fixed {
        if *j >= q.generators.len() || !same_ring(v.ring(), &ring) {
            return Err(Error::Invariant(format!("bad fixed coefficient for generator {j}")));
        }
    }
    let field = ring.field();
    let mut unknowns = Vec::new();
    for (j, g) in q.generators.iter().enumerate() {
        for m in allowed_multipliers(q, g)? {
            unknowns.push((j, m));
        }
    }
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut entries: Vec<Vec<(usize, crate::field::Coeff)>> = Vec::new();
    let mut row_index = |m: Monomial, entries: &mut Vec<Vec<_>>| {
        let next = row_of.len();
        let r = *row_of.entry(m).or_insert(next);
        if r == entries.len() {
            entries.push(Vec::new());
        }
        r
    };
    for (col, (j, m)) in unknowns.iter().enumerate() {
        for (gm, c) in q.generators[*j].terms() {
            let r = row_index(m.mul(gm), &mut entries);
            entries[r].push((col, c.clone()));
        }
    }
    let mut rhs = vec![field.zero(); entries.len()];
    for (m, c) in q.target.terms() {
        let r = row_index(m.clone(), &mut entries);
        if r == rhs.len() {
            rhs.push(field.zero());
        }
        rhs[r] = c.clone();
    }
    let mut system = LinearSystem::new(field, unknowns.len());
    for (row, b) in entries.into_iter().zip(rhs) {
        system.push_row(row, b);
    }
    for (j, v) in &q.fixed {
        let slots: HashMap<&Monomial, usize> = unknowns
            .iter()
            .enumerate()
            .filter(|(_, (g, _))| g == j)
            .map(|(col, (_, m))| (m, col))
            .collect();
        for (m, &col) in &slots {
            system.push_row(vec![(col, field.one())], v.coeff_of(m));
        }
        for (m, c) in v.terms() {
            if !slots.contains_key(m) {
                // the pinned value needs a slot that does not exist
                system.push_row(Vec::new(), c.clone());
            }
        }
    }
    Ok(CertificateSystem { system, unknowns })
}

#[derive(Clone, Debug)]
pub struct Probe {
    pub degree_bound: u32,
    pub certificate: Option<Certificate>,
    pub stats: SystemStats,
    pub elapsed: Duration,
}

/// Builds and solves the system of one query; a found certificate has been
/// re-expanded against the target.
pub fn solve_query(q: &CertificateQuery) -> Result<Probe> {
    solve_query_with(q, Solver::default())
}

pub fn solve_query_with(q: &CertificateQuery, solver: Solver) -> Result<Probe> {
    let start = Instant::now();
    let CertificateSystem { system, unknowns } = build_system(q)?;
    let (sol, (pr, pc)) = system.solve_reporting(solver);
    let stats = SystemStats {
        unknowns: system.ncols,
        rows: system.nrows(),
        pruned_unknowns: pc,
        pruned_rows: pr,
    };
    let certificate = match sol {
        Solution::Infeasible => None,
        Solution::Feasible(x) => {
            let ring = q.ring();
            let mut terms = vec![Vec::new(); q.generators.len()];
            for ((j, m), v) in unknowns.into_iter().zip(x) {
                if !v.is_zero() {
                    terms[j].push((m, v));
                }
            }
            let coefficients: Vec<Polynomial> =
                terms.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect();
            let max_degree = coefficients.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
            let cert = Certificate {
                coefficients,
                max_degree,
            };
            if !cert.verify(&q.target, &q.generators) {
                return Err(Error::Invariant("certificate does not re-expand to the target".into()));
            }
            for (j, v) in &q.fixed {
                if &cert.coefficients[*j] != v {
                    return Err(Error::Invariant("certificate ignores a pinned coefficient".into()));
                }
            }
            Some(cert)
        }
    };
    Ok(Probe {
        degree_bound: q.degree_bound,
        certificate,
        stats,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// Smallest feasible bound, its certificate, and every probe made.
    Found {
        degree: u32,
        certificate: Certificate,
        probes: Vec<Probe>,
    },
    NoneUpTo {
        max: u32,
        probes: Vec<Probe>,
    },
}

impl SearchOutcome {
    pub fn degree(&self) -> Option<u32> {
        match self {
            SearchOutcome::Found { degree, .. } => Some(*degree),
            SearchOutcome::NoneUpTo { .. } => None,
        }
    }

    pub fn probes(&self) -> &[Probe] {
        match self {
            SearchOutcome::Found { probes, .. } | SearchOutcome::NoneUpTo { probes, .. } => probes,
        }
    }
}

/// Ascends D = 0, 1, … up to `query.degree_bound`.
pub fn min_certificate_degree(query: &CertificateQuery) -> Result<SearchOutcome> {
    let mut probes = Vec::new();
    for d in 0..=query.degree_bound {
        let probe = solve_query(&query.with_bound(d))?;
        let found = probe.certificate.clone();
        probes.push(probe);
        if let Some(certificate) = found {
            return Ok(SearchOutcome::Found {
                degree: d,
                certificate,
                probes,
            });
        }
    }
    Ok(SearchOutcome::NoneUpTo {
        max: query.degree_bound,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::{parse_polynomial, parse_polynomial_list};
    use crate::ring::RingSpec;

    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn basis_sizes() {
        let b = VarSet::from_indices(8..12);
        assert_eq!(monomial_basis(12, b, 0), vec![Monomial::one(12)]);
        assert_eq!(monomial_basis(12, b, 1).len(), 5);
        for d in 0..6 {
            assert_eq!(monomial_basis(12, b, d).len() as u64, binom(4 + d as u64, d as u64));
        }
        let all = monomial_basis(3, VarSet::from_indices(0..3), 4);
        let mut dedup = all.clone();
        dedup.sort_by(|a, b| a.exponents().cmp(b.exponents()));
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    fn ring() -> Ring {
        RingSpec::with_vars(&["x", "y"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn unit_is_never_reached() {
        let r = ring();
        let gens = parse_polynomial_list("x", &r).unwrap();
        let q = CertificateQuery::new(Polynomial::one(&r), gens, 4);
        assert!(matches!(min_certificate_degree(&q).unwrap(), SearchOutcome::NoneUpTo { max: 4, .. }));
    }

    #[test]
    fn simple_multiple() {
        let r = ring();
        let gens = parse_polynomial_list("x", &r).unwrap();
        let q = CertificateQuery::new(parse_polynomial("x*y", &r).unwrap(), gens, 1);
        let probe = solve_query(&q).unwrap();
        let cert = probe.certificate.unwrap();
        assert_eq!(cert.coefficients[0], parse_polynomial("y", &r).unwrap());
        assert_eq!(cert.max_degree, 1);
    }

    #[test]
    fn generator_itself_needs_degree_zero() {
        let r = ring();
        let gens = parse_polynomial_list("x^2 - y, x*y + 1", &r).unwrap();
        let q = CertificateQuery::new(gens[0].clone(), gens.clone(), 3);
        let SearchOutcome::Found { degree, certificate, .. } = min_certificate_degree(&q).unwrap() else {
            panic!("expected a certificate");
        };
        assert_eq!(degree, 0);
        assert_eq!(certificate.coefficients[0], Polynomial::one(&r));
    }

    #[test]
    fn solvers_agree_on_small_queries() {
        let r = ring();
        let gens = parse_polynomial_list("x^2 - y, x*y - 1", &r).unwrap();
        let target = parse_polynomial("y^2 - x", &r).unwrap();
        for d in 0..4 {
            let q = CertificateQuery::new(target.clone(), gens.clone(), d);
            let a = solve_query_with(&q, Solver::Sparse).unwrap().certificate.is_some();
            let b = solve_query_with(&q, Solver::Bareiss).unwrap().certificate.is_some();
            assert_eq!(a, b, "D = {d}");
        }
    }

    #[test]
    fn pinned_coefficients() {
        let r = ring();
        let gens = parse_polynomial_list("x, y", &r).unwrap();
        let target = parse_polynomial("x*y", &r).unwrap();
        let q = CertificateQuery::new(target.clone(), gens.clone(), 1).fix(1, parse_polynomial("x", &r).unwrap());
        let cert = solve_query(&q).unwrap().certificate.unwrap();
        assert!(cert.coefficients[0].is_zero());
        let bad = CertificateQuery::new(target, gens, 1).fix(1, parse_polynomial("x^2", &r).unwrap());
        assert!(solve_query(&bad).unwrap().certificate.is_none());
    }

    #[test]
    fn homogeneous_target_required() {
        let r = ring();
        let gens = parse_polynomial_list("x", &r).unwrap();
        let blocks = vec![VarSet::from_indices([0]), VarSet::from_indices([1])];
        let q = CertificateQuery::new(parse_polynomial("x + y", &r).unwrap(), gens, 1)
            .restrict(Restriction::block_homogeneous(blocks, Bidegree(vec![1, 0])));
        assert_eq!(build_system(&q).unwrap_err(), Error::NotHomogeneous);
    }
}

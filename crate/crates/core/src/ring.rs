//! Polynomial rings over a fixed, ordered variable list.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{MonomialOrder, VarSet};
use crate::poly::Polynomial;

/// Maximum number of variables (bounded by the [`VarSet`] width).
pub const MAX_VARS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<String>,
    field: FieldSpec,
    default_order: MonomialOrder,
}

pub type Ring = Arc<RingSpec>;

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(vars: &[S], field: FieldSpec, default_order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::NameCollision(v.clone()));
            }
        }
        if let FieldSpec::PrimeField(p) = field {
            FieldSpec::prime(p)?;
        }
        Ok(Arc::new(RingSpec {
            vars,
            field,
            default_order,
        }))
    }

    /// Ring with the default (grevlex) order.
    pub fn with_vars<S: AsRef<str>>(vars: &[S], field: FieldSpec) -> Result<Ring> {
        RingSpec::new(vars, field, MonomialOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn default_order(&self) -> MonomialOrder {
        self.default_order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VarSet> {
        names
            .iter()
            .map(|n| {
                self.var_index(n.as_ref())
                    .ok_or_else(|| Error::UnknownVariable(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(VarSet::from_indices)
    }

    /// The variable `name` as a polynomial.
    pub fn var(self: &Arc<Self>, name: &str) -> Result<Polynomial> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::variable(self, i))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Front,
    Back,
}

/// Inclusion of a ring into an extension with extra variables.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Ring,
    pub target: Ring,
    offset: usize,
    count: usize,
}

impl Embedding {
    pub fn embed(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (m.insert_zeros(self.offset, self.count), c.clone()))
            .collect();
        Ok(Polynomial::from_terms(&self.target, terms))
    }

    /// Maps back into the source ring; `None` when `p` involves a new variable.
    pub fn restrict(&self, p: &Polynomial) -> Option<Polynomial> {
        if !same_ring(p.ring(), &self.target) {
            return None;
        }
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| m.remove_range(self.offset, self.count).map(|m| (m, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_terms(&self.source, terms))
    }

    /// Indices of the new variables in the target ring.
    pub fn new_vars(&self) -> VarSet {
        VarSet::from_indices(self.offset..self.offset + self.count)
    }
}

/// Adds fresh variables at the front or back of the variable list.
pub fn extend_ring<S: AsRef<str>>(ring: &Ring, new_vars: &[S], position: Position) -> Result<(Ring, Embedding)> {
    for v in new_vars {
        if ring.var_index(v.as_ref()).is_some() {
            return Err(Error::NameCollision(v.as_ref().to_string()));
        }
    }
    let fresh: Vec<String> = new_vars.iter().map(|v| v.as_ref().to_string()).collect();
    let (vars, offset) = match position {
        Position::Front => (fresh.iter().chain(ring.vars()).cloned().collect::<Vec<_>>(), 0),
        Position::Back => (ring.vars().iter().chain(&fresh).cloned().collect(), ring.nvars()),
    };
    let target = RingSpec::new(&vars, ring.field(), ring.default_order())?;
    Ok((
        target.clone(),
        Embedding {
            source: ring.clone(),
            target,
            offset,
            count: fresh.len(),
        },
    ))
}

/// A fresh variable name not present in `ring`, starting from `base`.
pub fn fresh_name(ring: &RingSpec, base: &str) -> String {
    if ring.var_index(base).is_none() {
        return base.to_string();
    }
    (0..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| ring.var_index(n).is_none())
        .expect("unbounded search")
}

//! The `mmlab-report-v1` JSON report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certificate::SystemStats;
use crate::mayr_meyer::{Mode, Profile};

pub const SCHEMA: &str = "mmlab-report-v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub ring: String,
    pub claims: Vec<ClaimReport>,
}

impl Report {
    pub fn new(ring: impl Into<String>, claims: Vec<ClaimReport>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            ring: ring.into(),
            claims,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The report with every timing zeroed, for byte-level comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.timings = Timings::default();
        }
        r
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A polynomial and its normal form modulo the relevant ideal.
    NormalForm { polynomial: String, normal_form: String },
    /// Coefficients expressing a target in a generator list.
    Certificate {
        degree: u32,
        coefficients: Vec<String>,
        stats: SystemStats,
    },
    /// An element separating two ideals that should be equal.
    Separator {
        polynomial: String,
        member_of: String,
        not_member_of: String,
    },
    /// Observed versus expected values.
    Mismatch { expected: String, observed: String },
    Error { message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    #[serde(flatten)]
    pub steps: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub params: Params,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub checks: Vec<Check>,
    pub timings: Timings,
}

impl ClaimReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One line: `PASS prop4 d=2 Q combined`.
    pub fn summary(&self) -> String {
        let mut s = format!("{} {}", if self.pass { "PASS" } else { "FAIL" }, self.claim);
        if let Some(d) = self.params.d {
            s.push_str(&format!(" d={d}"));
        }
        s.push_str(&format!(" {}", self.params.field));
        if let Some(m) = self.params.mode {
            s.push_str(&format!(" {}", serde_json::to_value(m).unwrap().as_str().unwrap()));
        }
        if let Some(p) = self.params.profile {
            s.push_str(&format!(" {}", serde_json::to_value(p).unwrap().as_str().unwrap()));
        }
        s
    }
}

//! Campaign runner: turns the library's identities into exhaustive or
//! sampled exact checks and produces machine-readable reports.
//!
//! Reports are deterministic: identical campaign inputs (including the seed)
//! produce byte-identical serialized reports modulo the `elapsed_ms` field.
//! Counterexamples always carry exact rational/surd strings, never floats.

mod campaigns;
mod sampler;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub use campaigns::{
    campaign_by_name, verify_be, verify_intersection, verify_kt, verify_leonard,
    verify_w_closed, verify_whipple, Campaign, CampaignConfig, CAMPAIGNS,
};
pub use sampler::{SampleSpec, RNG_ALGORITHM};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("invalid range: {0}")]
    BadRange(String),
    #[error("invalid campaign configuration: {0}")]
    BadConfig(String),
    #[error("cannot merge reports: {0}")]
    MergeConflict(String),
}

/// One counterexample: the parameter tuple that failed, plus the expected
/// and actual values as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub case: BTreeMap<String, String>,
    pub expected: String,
    pub actual: String,
}

/// A recorded (not asserted) equality case, e.g. `|u_i(θ_j)| = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EqualityCase {
    pub case: BTreeMap<String, String>,
    pub value: String,
}

/// Machine-readable outcome of a campaign.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub params: BTreeMap<String, Value>,
    pub checks_run: u64,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_cases: Option<Vec<EqualityCase>>,
    pub elapsed_ms: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
}

impl VerificationReport {
    /// Merge two shard reports of the same campaign. Violations and equality
    /// cases are re-sorted canonically and `passed` is recomputed, so the
    /// merge is associative and commutative (elapsed time aside) and keeps
    /// the `passed ⇔ no violations` invariant.
    pub fn merge(&self, other: &VerificationReport) -> Result<VerificationReport, VerifyError> {
        if self.campaign != other.campaign {
            return Err(VerifyError::MergeConflict(format!(
                "campaign {} vs {}",
                self.campaign, other.campaign
            )));
        }
        if self.rng.is_some() && other.rng.is_some() && self.rng != other.rng {
            return Err(VerifyError::MergeConflict("different rng algorithms".into()));
        }
        let mut params = self.params.clone();
        for (key, val) in &other.params {
            match params.get(key) {
                None => {
                    params.insert(key.clone(), val.clone());
                }
                Some(existing) if existing == val => {}
                Some(existing) => {
                    let merged = merge_param(key, existing, val).ok_or_else(|| {
                        VerifyError::MergeConflict(format!(
                            "param {key}: {existing} vs {val}"
                        ))
                    })?;
                    params.insert(key.clone(), merged);
                }
            }
        }
        let mut violations = self.violations.clone();
        violations.extend(other.violations.iter().cloned());
        violations.sort();
        let equality_cases = match (&self.equality_cases, &other.equality_cases) {
            (None, None) => None,
            (a, b) => {
                let mut all: Vec<EqualityCase> =
                    a.iter().chain(b.iter()).flat_map(|v| v.iter().cloned()).collect();
                all.sort();
                Some(all)
            }
        };
        let passed = violations.is_empty();
        Ok(VerificationReport {
            campaign: self.campaign.clone(),
            params,
            checks_run: self.checks_run + other.checks_run,
            violations,
            equality_cases,
            elapsed_ms: self.elapsed_ms + other.elapsed_ms,
            passed,
            rng: self.rng.clone().or_else(|| other.rng.clone()),
        })
    }
}

/// Range-style parameters merge by widening; anything else must agree.
fn merge_param(key: &str, a: &Value, b: &Value) -> Option<Value> {
    let (x, y) = (a.as_u64()?, b.as_u64()?);
    if key.ends_with("_min") {
        Some(Value::from(x.min(y)))
    } else if key.ends_with("_max") {
        Some(Value::from(x.max(y)))
    } else {
        None
    }
}

/// Accumulates checks and counterexamples for one campaign run, and keeps
/// the `passed ⇔ violations empty` invariant in a single place.
struct ReportBuilder {
    campaign: &'static str,
    params: BTreeMap<String, Value>,
    checks_run: u64,
    violations: Vec<Violation>,
    equality_cases: Option<Vec<EqualityCase>>,
    rng: Option<String>,
    start: Instant,
}

impl ReportBuilder {
    fn new(campaign: &'static str) -> Self {
        ReportBuilder {
            campaign,
            params: BTreeMap::new(),
            checks_run: 0,
            violations: Vec::new(),
            equality_cases: None,
            rng: None,
            start: Instant::now(),
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    fn with_equality_cases(&mut self) {
        self.equality_cases = Some(Vec::new());
    }

    fn rng(&mut self, algorithm: &str) {
        self.rng = Some(algorithm.to_string());
    }

    /// Record one executed check; on failure, file the counterexample.
    fn check(&mut self, ok: bool, case: &[(&str, String)], expected: &str, actual: &str) {
        self.checks_run += 1;
        if !ok {
            self.violations.push(Violation {
                case: to_case(case),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn equality(&mut self, case: &[(&str, String)], value: &str) {
        self.equality_cases
            .get_or_insert_with(Vec::new)
            .push(EqualityCase { case: to_case(case), value: value.to_string() });
    }

    fn finish(mut self) -> VerificationReport {
        self.violations.sort();
        if let Some(eq) = &mut self.equality_cases {
            eq.sort();
        }
        let passed = self.violations.is_empty();
        VerificationReport {
            campaign: self.campaign.to_string(),
            params: self.params,
            checks_run: self.checks_run,
            violations: self.violations,
            equality_cases: self.equality_cases,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            passed,
            rng: self.rng,
        }
    }
}

fn to_case(case: &[(&str, String)]) -> BTreeMap<String, String> {
    case.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

//! Verification reports for the permanent, determinant, cycle-sum and
//! spectral identities, plus a deterministic campaign runner.

mod campaign;
mod cycles;
mod derangements;
mod output;
mod spectra;
mod sun;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use campaign::{item_seed, run_campaign, run_item, CampaignConfig, WorkItem};
pub use cycles::{random_distinct_rationals, verify_eq3_1, verify_lemma3_2};
pub use derangements::{random_deletion_set, verify_thm3_1};
pub use output::{from_csv, from_jsonl, to_csv, to_jsonl, to_table};
pub use spectra::{verify_eei_matrix, verify_eq2_3_liu, verify_eq2_4, verify_thm2_1, LIU_TOL, LAGRANGE_TOL};
pub use sun::{verify_eq1_1, verify_eq1_2, verify_eq1_3};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "eq1_1")]
    Eq1_1,
    #[serde(rename = "eq1_2")]
    Eq1_2,
    #[serde(rename = "eq1_3")]
    Eq1_3,
    #[serde(rename = "lemma3_2")]
    Lemma3_2,
    #[serde(rename = "eq3_1")]
    Eq3_1,
    #[serde(rename = "thm3_1_odd")]
    Thm3_1Odd,
    #[serde(rename = "thm3_1_even")]
    Thm3_1Even,
    #[serde(rename = "eq2_3_liu")]
    Eq2_3Liu,
    #[serde(rename = "thm2_1")]
    Thm2_1,
    #[serde(rename = "eei")]
    Eei,
    #[serde(rename = "eq2_4")]
    Eq2_4,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::Eq1_1,
        IdentityId::Eq1_2,
        IdentityId::Eq1_3,
        IdentityId::Lemma3_2,
        IdentityId::Eq3_1,
        IdentityId::Thm3_1Odd,
        IdentityId::Thm3_1Even,
        IdentityId::Eq2_3Liu,
        IdentityId::Thm2_1,
        IdentityId::Eei,
        IdentityId::Eq2_4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Eq1_1 => "eq1_1",
            IdentityId::Eq1_2 => "eq1_2",
            IdentityId::Eq1_3 => "eq1_3",
            IdentityId::Lemma3_2 => "lemma3_2",
            IdentityId::Eq3_1 => "eq3_1",
            IdentityId::Thm3_1Odd => "thm3_1_odd",
            IdentityId::Thm3_1Even => "thm3_1_even",
            IdentityId::Eq2_3Liu => "eq2_3_liu",
            IdentityId::Thm2_1 => "thm2_1",
            IdentityId::Eei => "eei",
            IdentityId::Eq2_4 => "eq2_4",
        }
    }

    /// Whether a campaign runs several seeded trials per `n`.
    pub fn is_randomized(self) -> bool {
        matches!(
            self,
            IdentityId::Lemma3_2 | IdentityId::Eq3_1 | IdentityId::Thm3_1Odd | IdentityId::Thm3_1Even | IdentityId::Eei
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown identity '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Skipped => "skipped",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: IdentityId,
    pub n: u32,
    pub parameters: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub notes: String,
}

impl VerificationReport {
    fn new(identity_id: IdentityId, n: u32) -> Self {
        VerificationReport {
            identity_id,
            n,
            parameters: BTreeMap::new(),
            lhs: String::new(),
            rhs: String::new(),
            verdict: Verdict::Skipped,
            elapsed_ms: 0,
            notes: String::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn sides(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = lhs.to_string();
        self.rhs = rhs.to_string();
        self
    }

    fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    fn note(mut self, text: &str) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text);
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Report for a check that could not run: precondition and parity
    /// problems are `skipped`, cap overruns `inconclusive`, anything else
    /// `fail`.
    pub fn from_error(identity_id: IdentityId, n: u32, parameters: BTreeMap<String, String>, err: &Error) -> Self {
        let verdict = match err {
            Error::Parity(_) | Error::InvalidArgument(_) => Verdict::Skipped,
            Error::CapExceeded { .. } => Verdict::Inconclusive,
            _ => Verdict::Fail,
        };
        VerificationReport {
            parameters,
            verdict,
            notes: err.to_string(),
            ..VerificationReport::new(identity_id, n)
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

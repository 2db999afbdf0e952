//! Pass/fail outcome of a verification, shared by every module and the report layer.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeff::{SeriesCmp, GradedSeries};
use crate::coeff::rational::fmt_q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Smallest offending location with both sides rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub order: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<Verdict>,
}

impl Verdict {
    pub fn new(id: impl Into<String>, order: impl ToString) -> Verdict {
        Verdict {
            id: id.into(),
            params: BTreeMap::new(),
            order: order.to_string(),
            status: Status::Pass,
            mismatch: None,
            details: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Verdict {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Verdict {
        self.details.push(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn fail(mut self, at: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Verdict {
        self.status = Status::Fail;
        self.mismatch = Some(Mismatch { at: at.into(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Verdict {
        self.status = Status::Skipped;
        self.details.push(reason.into());
        self
    }

    /// Record a series comparison; the first mismatching grade becomes the witness.
    pub fn with_cmp(self, cmp: &SeriesCmp) -> Verdict {
        match cmp {
            SeriesCmp::Equal => self,
            SeriesCmp::Mismatch { grade, lhs, rhs } => self.fail(format!("q^{}", fmt_q(grade)), lhs, rhs),
        }
    }

    /// Compare two series to `order` and record the outcome.
    pub fn compare(self, lhs: &GradedSeries, rhs: &GradedSeries, order: &crate::coeff::Q) -> Verdict {
        match lhs.equal_to_order(rhs, order) {
            Ok(c) => self.with_cmp(&c),
            Err(e) => {
                let prefixes = format!("prefix {} vs {}", lhs.prefix(), rhs.prefix());
                self.fail(prefixes, e, "")
            }
        }
    }

    /// Attach a sub-verdict; the parent fails with the first failing child's witness.
    pub fn push(&mut self, child: Verdict) {
        if child.status == Status::Fail && self.status != Status::Fail {
            self.status = Status::Fail;
            let m = child.mismatch.clone().unwrap_or(Mismatch {
                at: String::new(),
                lhs: String::new(),
                rhs: String::new(),
            });
            self.mismatch = Some(Mismatch { at: format!("{} @ {}", child.id, m.at), lhs: m.lhs, rhs: m.rhs });
        }
        self.children.push(child);
    }

    pub fn with_children(mut self, cs: impl IntoIterator<Item = Verdict>) -> Verdict {
        for c in cs {
            self.push(c);
        }
        self
    }

    /// One-line summary used by the CLI and the acceptance runner.
    pub fn line(&self) -> String {
        let st = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut s = format!("{st} {} (order {})", self.id, self.order);
        if let Some(m) = &self.mismatch {
            s.push_str(&format!(": mismatch at {}: {} != {}", m.at, m.lhs, m.rhs));
        }
        s
    }
}

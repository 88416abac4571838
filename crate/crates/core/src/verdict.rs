//! Pass/fail records for exact checks.
//!
//! Every check compares two exact quantities after both sides have been
//! multiplied by `q^cleared_power_of_q`, so that rational identities become
//! integer (or cyclotomic) ones.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::field::Cyclotomic;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exact {
    Int(i128),
    Cyclotomic(Cyclotomic),
}

impl From<i128> for Exact {
    fn from(n: i128) -> Self {
        Exact::Int(n)
    }
}

impl From<Cyclotomic> for Exact {
    fn from(c: Cyclotomic) -> Self {
        match c.as_integer() {
            Some(n) => Exact::Int(i128::from(n)),
            None => Exact::Cyclotomic(c),
        }
    }
}

impl Exact {
    pub fn as_int(&self) -> Option<i128> {
        match self {
            Exact::Int(n) => Some(*n),
            Exact::Cyclotomic(_) => None,
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Int(n) => write!(f, "{n}"),
            Exact::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Le,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub relation: Relation,
    pub lhs: Exact,
    pub rhs: Exact,
    pub cleared_power_of_q: u32,
    pub pass: bool,
}

impl Verdict {
    /// Exact equality; cyclotomic sides are compared in canonical form.
    pub fn eq(check: &str, lhs: impl Into<Exact>, rhs: impl Into<Exact>, cleared_power_of_q: u32) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = lhs == rhs;
        Self {
            check: check.to_owned(),
            relation: Relation::Eq,
            lhs,
            rhs,
            cleared_power_of_q,
            pass,
        }
    }

    /// `lhs <= rhs`. Fails if either side is not a rational integer.
    pub fn le(check: &str, lhs: impl Into<Exact>, rhs: impl Into<Exact>, cleared_power_of_q: u32) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = matches!((lhs.as_int(), rhs.as_int()), (Some(a), Some(b)) if a <= b);
        Self {
            check: check.to_owned(),
            relation: Relation::Le,
            lhs,
            rhs,
            cleared_power_of_q,
            pass,
        }
    }

    /// `(rhs - lhs) / q^cleared` for integer-valued checks.
    pub fn slack(&self, q: u32) -> Option<Ratio<i128>> {
        let (a, b) = (self.lhs.as_int()?, self.rhs.as_int()?);
        Some(Ratio::new(b - a, i128::from(q).pow(self.cleared_power_of_q)))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Eq => "=",
            Relation::Le => "<=",
        };
        write!(
            f,
            "[{}] {}: {} {} {} (x q^{})",
            if self.pass { "pass" } else { "FAIL" },
            self.check,
            self.lhs,
            rel,
            self.rhs,
            self.cleared_power_of_q
        )
    }
}

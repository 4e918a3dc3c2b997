//! Three-valued check outcomes.

use std::fmt;

/// Outcome of an executable check: passed, failed with a witness, or not
/// decided within budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Unknown(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    /// Pass only when both pass; a failure wins over unknown.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail(a), _) | (_, Verdict::Fail(a)) => Verdict::Fail(a),
            (Verdict::Unknown(a), _) | (_, Verdict::Unknown(a)) => Verdict::Unknown(a),
            (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
        }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(w) => write!(f, "fail: {w}"),
            Verdict::Unknown(w) => write!(f, "unknown: {w}"),
        }
    }
}

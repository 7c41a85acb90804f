use std::fmt;

/// Outcome of comparing the two sides of a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Violated,
    /// One side has no value (a zero divisor, a non-positive logarithm argument, …).
    Undefined,
    /// The estimate exceeds a bound whose hypothesis (non-periodicity) the
    /// finite prefix cannot certify; reported, not counted as a violation.
    ExceedsBoundPrecondition,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Undefined => "undefined",
            Verdict::ExceedsBoundPrecondition => "exceeds-bound-precondition",
        }
    }

    pub fn from_le(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated inequality `left ≤ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub claim: String,
    pub params: Vec<(String, String)>,
    pub interpretation: Option<String>,
    pub left_exact: String,
    pub left_decimal: String,
    pub right_exact: String,
    pub right_decimal: String,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

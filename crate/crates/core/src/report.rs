//! Outcome of a single verification: both sides, margin, status.

use alloc::string::String;
use alloc::vec::Vec;

use crate::Complex;

/// Anchor labels carried by every report for traceability.
pub mod anchor {
    pub const PRELIMINARIES: &str = "Preliminaries";
    pub const EQ1: &str = "Eq. (1)";
    pub const LEMMA1: &str = "Lemma 1";
    pub const LEMMA2: &str = "Lemma 2";
    pub const UPPER_BOUNDS: &str = "Upper bounds";
    pub const LOWER_BOUNDS_AGAIN: &str = "Lower bounds, again";
    pub const THEOREM: &str = "Theorem";
    pub const GENERAL_CASE: &str = "General case";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for inspection; never fails a suite.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

/// A computed side of a check: exact integer, real, or complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckValue {
    Int(i64),
    Real(f64),
    Complex(Complex),
}

impl From<i64> for CheckValue {
    fn from(v: i64) -> Self {
        CheckValue::Int(v)
    }
}
impl From<f64> for CheckValue {
    fn from(v: f64) -> Self {
        CheckValue::Real(v)
    }
}
impl From<Complex> for CheckValue {
    fn from(v: Complex) -> Self {
        CheckValue::Complex(v)
    }
}

/// One verification outcome.
///
/// `margin` is the signed distance in the inequality's natural direction:
/// nonnegative means the claim held, with that much room. Checks that
/// compare against a tolerance fold it into the margin.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub anchor: &'static str,
    pub lhs: CheckValue,
    pub rhs: CheckValue,
    pub margin: f64,
    pub status: Status,
    pub tolerance: f64,
    pub params: Vec<(String, String)>,
}

impl CheckReport {
    /// An asserted check: passes exactly when `pass` is true.
    pub fn asserted(
        name: impl Into<String>,
        anchor: &'static str,
        lhs: impl Into<CheckValue>,
        rhs: impl Into<CheckValue>,
        margin: f64,
        tolerance: f64,
        pass: bool,
    ) -> Self {
        CheckReport {
            name: name.into(),
            anchor,
            lhs: lhs.into(),
            rhs: rhs.into(),
            margin,
            status: if pass { Status::Pass } else { Status::Fail },
            tolerance,
            params: Vec::new(),
        }
    }

    /// An informational record; cannot fail a suite.
    pub fn info(
        name: impl Into<String>,
        anchor: &'static str,
        lhs: impl Into<CheckValue>,
        rhs: impl Into<CheckValue>,
        margin: f64,
    ) -> Self {
        CheckReport {
            name: name.into(),
            anchor,
            lhs: lhs.into(),
            rhs: rhs.into(),
            margin,
            status: Status::Info,
            tolerance: 0.0,
            params: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl core::fmt::Display) -> Self {
        self.params.push((String::from(key), alloc::format!("{value}")));
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

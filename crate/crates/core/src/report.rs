//! Structured outcome of an identity check.

use num_complex::Complex64;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

/// How `residual` is derived from `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualMode {
    /// `|lhs - rhs|`
    Absolute,
    /// `|lhs - rhs| / max(1, |rhs|)`
    Relative,
    /// One-sided: `max(0, lhs - rhs)`, i.e. the check is `lhs <= rhs + tol`.
    Upper,
}

/// A real or complex value; serializes as a bare number when real and as
/// `{"re": .., "im": ..}` otherwise. Non-finite parts serialize as `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar(pub Complex64);

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar(Complex64::new(v, 0.0))
    }
}

impl From<Complex64> for Scalar {
    fn from(v: Complex64) -> Self {
        Scalar(v)
    }
}

fn finite_or_none(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.im == 0.0 {
            finite_or_none(self.0.re).serialize(s)
        } else {
            let mut st = s.serialize_struct("Complex", 2)?;
            st.serialize_field("re", &finite_or_none(self.0.re))?;
            st.serialize_field("im", &finite_or_none(self.0.im))?;
            st.end()
        }
    }
}

/// A parameter value in a report's parameter tuple.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Text(String),
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}
impl From<u32> for Param {
    fn from(v: u32) -> Self {
        Param::Int(i64::from(v))
    }
}
impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}
impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}
impl From<Complex64> for Param {
    fn from(v: Complex64) -> Self {
        if v.im == 0.0 {
            Param::Real(v.re)
        } else {
            Param::Complex(v)
        }
    }
}
impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Int(v) => v.serialize(s),
            Param::Real(v) => finite_or_none(*v).serialize(s),
            Param::Complex(v) => Scalar(*v).serialize(s),
            Param::Text(v) => v.serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(pub Vec<(String, Param)>);

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Params,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub mode: ResidualMode,
    /// `None` only when one side could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    /// Diagnostic reports (e.g. a known misprint, evaluated to show that it
    /// does not hold) are excluded from the overall pass/fail verdict.
    pub gating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    /// Builds a report from the two sides of an identity.
    pub fn compare(
        identity: impl Into<String>,
        lhs: impl Into<Scalar>,
        rhs: impl Into<Scalar>,
        tolerance: f64,
        mode: ResidualMode,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let residual = match mode {
            ResidualMode::Absolute => (lhs.0 - rhs.0).norm(),
            ResidualMode::Relative => (lhs.0 - rhs.0).norm() / rhs.0.norm().max(1.0),
            ResidualMode::Upper => (lhs.0.re - rhs.0.re).max(0.0),
        };
        let residual = residual.is_finite().then_some(residual);
        VerificationReport {
            identity: identity.into(),
            params: Params::default(),
            lhs,
            rhs,
            mode,
            residual,
            tolerance,
            passed: residual.is_some_and(|r| r <= tolerance),
            gating: true,
            note: None,
        }
    }

    /// A report for a check whose evaluation itself failed.
    pub fn failed(
        identity: impl Into<String>,
        tolerance: f64,
        why: impl std::fmt::Display,
    ) -> Self {
        VerificationReport {
            identity: identity.into(),
            params: Params::default(),
            lhs: Scalar::from(f64::NAN),
            rhs: Scalar::from(f64::NAN),
            mode: ResidualMode::Absolute,
            residual: None,
            tolerance,
            passed: false,
            gating: true,
            note: Some(why.to_string()),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.0.push((key.to_string(), value.into()));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn diagnostic(mut self) -> Self {
        self.gating = false;
        self
    }

    /// Re-evaluates `passed` against a new tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.residual.is_some_and(|r| r <= tolerance);
        self
    }
}

//! Approximation-error sweeps for the three operators on a fixed set of test
//! functions.

use std::fmt;
use std::str::FromStr;

use crate::bernstein::operator;
use crate::qbernstein::{phillips_operator, q_operator};
use crate::{Error, QParam, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Builtin {
    Cos,
    Exp,
    /// `|t - 0.4|`
    AbsShift,
    Square,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [
        Builtin::Cos,
        Builtin::Exp,
        Builtin::AbsShift,
        Builtin::Square,
    ];

    pub fn eval(self, t: f64) -> f64 {
        match self {
            Builtin::Cos => t.cos(),
            Builtin::Exp => t.exp(),
            Builtin::AbsShift => (t - 0.4).abs(),
            Builtin::Square => t * t,
        }
    }

    /// Convex on `[0, 1]`.
    pub fn is_convex(self) -> bool {
        !matches!(self, Builtin::Cos)
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Cos => "cos",
            Builtin::Exp => "exp",
            Builtin::AbsShift => "abs-shift",
            Builtin::Square => "square",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown function `{s}` (expected cos, exp, abs-shift or square)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Classical,
    QType,
    Phillips,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Classical => "classical",
            OperatorKind::QType => "q-type",
            OperatorKind::Phillips => "phillips",
        }
    }

    pub fn apply(self, f: Builtin, n: u32, x: f64, q: QParam) -> Result<f64> {
        let g = |t| f.eval(t);
        match self {
            OperatorKind::Classical => operator(&g, n, x),
            OperatorKind::QType => q_operator(&g, n, x, q),
            OperatorKind::Phillips => phillips_operator(&g, n, x, q),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(OperatorKind::Classical),
            "q-type" => Ok(OperatorKind::QType),
            "phillips" => Ok(OperatorKind::Phillips),
            _ => Err(Error::domain(format!(
                "unknown operator `{s}` (expected classical, q-type or phillips)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxRow {
    pub n: u32,
    /// `max_x |L_n f(x) - f(x)|` over the grid.
    pub max_error: f64,
    /// `min_x (beta_n f(x) - f(x))`; Phillips operator on a convex function only.
    pub min_margin: Option<f64>,
    /// `min_x (beta_{n-1} f(x) - beta_n f(x))`; Phillips, convex, `n >= 2` only.
    pub monotone_margin: Option<f64>,
}

pub fn approximation_errors(
    f: Builtin,
    kind: OperatorKind,
    ns: &[u32],
    q: QParam,
    grid: &[f64],
) -> Result<Vec<ApproxRow>> {
    let shape_checks = kind == OperatorKind::Phillips && f.is_convex();
    ns.iter()
        .map(|&n| {
            let mut max_error: f64 = 0.0;
            let mut min_margin = f64::INFINITY;
            let mut monotone = f64::INFINITY;
            for &x in grid {
                let v = kind.apply(f, n, x, q)?;
                max_error = max_error.max((v - f.eval(x)).abs());
                if shape_checks {
                    min_margin = min_margin.min(v - f.eval(x));
                    if n >= 2 {
                        monotone = monotone.min(kind.apply(f, n - 1, x, q)? - v);
                    }
                }
            }
            let has_grid = !grid.is_empty();
            Ok(ApproxRow {
                n,
                max_error,
                min_margin: (shape_checks && has_grid).then_some(min_margin),
                monotone_margin: (shape_checks && has_grid && n >= 2).then_some(monotone),
            })
        })
        .collect()
}

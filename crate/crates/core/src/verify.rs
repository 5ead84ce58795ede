//! Identity-verification sweeps.
//!
//! Each suite evaluates a family of identities over a fixed parameter grid
//! and returns one [`VerificationReport`] per check and parameter tuple.
//! Checks that range over an `x` grid report the worst grid point. Sweeps run
//! in parallel but the output order is fixed: suites in declaration order,
//! parameter tuples in lexicographic order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::approx::Builtin;
use crate::bernstein::{
    basis, basis_derivative, basis_recursive, beta_density, binomial_moment, binomial_pmf,
    operator, operator_as_expectation, simpson,
};
use crate::interp::{
    derivative_at_negative_integers, negative_integer_value_check, s_derivative, s_q_closed,
    s_q_series, InterpPoint,
};
use crate::qbernstein::{
    bernoulli_stirling_identity_check, gen_fun, gen_fun_series, hermite_expansion, hermite_sum,
    hermite_sum_check, phillips_operator, q_operator, vanishing_sum_check, y_derivative_q1,
    y_from_genfun, y_poly, y_poly_sumform, y_poly_sumform_unweighted, GenFunPoint,
};
use crate::qnum::{
    binomial_f64, gauss_binomial, gen_binomial, q_addition_split, q_integer, q_negation, QParam,
};
use crate::report::{ResidualMode, VerificationReport};
use crate::special::{stirling2_over_factorial, SeriesTruncation};
use crate::{factorial_f64, Error, Result};

/// Tolerances used by the suites.
pub mod tol {
    pub const PARTITION_OF_UNITY: f64 = 1e-13;
    pub const SYMMETRY: f64 = 1e-14;
    pub const RECURSION: f64 = 1e-12;
    pub const FINITE_DIFFERENCE: f64 = 1e-6;
    pub const FD_STEP: f64 = 1e-6;
    pub const AFFINE: f64 = 1e-12;
    pub const QUADRATURE: f64 = 1e-8;
    pub const SIMPSON_PANELS: usize = 10_000;
    pub const MOMENTS: f64 = 1e-10;
    pub const EXPECTATION_FORM: f64 = 1e-14;
    pub const Q_ARITHMETIC: f64 = 1e-12;
    pub const GAUSS_LIMIT: f64 = 1e-6;
    pub const DUAL_FORM: f64 = 1e-12;
    pub const GENFUN_COEFFICIENT: f64 = 1e-12;
    pub const GENFUN_SERIES: f64 = 1e-10;
    pub const CLASSICAL_LIMIT: f64 = 1e-4;
    pub const BERNOULLI_STIRLING: f64 = 1e-9;
    pub const HERMITE_SUM: f64 = 1e-8;
    pub const HERMITE_K_INDEPENDENCE: f64 = 1e-10;
    pub const INTERP_SERIES: f64 = 1e-9;
    pub const NEGATIVE_INTEGER_VALUE: f64 = 1e-12;
    pub const INTERP_FD_RELATIVE: f64 = 1e-5;
    pub const INTERP_FD_STEP: f64 = 1e-4;
    pub const PHILLIPS_REDUCTION: f64 = 1e-13;
    pub const CONVEXITY_SLACK: f64 = 1e-12;
}

/// Parameter grids shared by the suites and the acceptance tests.
pub mod grid {
    /// `0, 0.01, ..., 1`
    pub fn unit_101() -> Vec<f64> {
        (0..=100).map(|i| f64::from(i) / 100.0).collect()
    }

    /// `0.1, 0.2, ..., 0.9`
    pub fn interior_9() -> Vec<f64> {
        (1..=9).map(|i| f64::from(i) / 10.0).collect()
    }

    pub const Q_SERIES: [f64; 3] = [0.3, 0.7, 0.99];
    /// `q` values at which 64 terms of the `l`-series of `F_{k,q}` reach a
    /// tail of `1e-14` for every `k <= 4`.
    pub const Q_GENFUN_SERIES: [f64; 2] = [0.3, 0.5];
    pub const K_GENFUN_SERIES: u32 = 4;
    pub const INTERP_Z: [(f64, f64); 5] =
        [(-3.0, 0.0), (-1.0, 0.0), (0.5, 0.0), (2.0, 0.0), (1.0, 1.0)];
    pub const INTERP_X: [f64; 3] = [0.2, 0.5, 0.8];
    pub const INTERP_Q: [f64; 2] = [0.3, 0.7];
    pub const PHILLIPS_Q: [f64; 3] = [0.5, 0.9, 1.0];

    pub fn genfun_t() -> Vec<num_complex::Complex64> {
        use num_complex::Complex64 as C;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        vec![
            C::new(-1.0, 0.0),
            C::new(-0.5, 0.0),
            C::new(0.0, 0.0),
            C::new(0.5, 0.0),
            C::new(1.0, 0.0),
            C::new(0.0, 1.0),
            C::new(s, s),
        ]
    }
}

/// Terms used by the interpolation series sweep. Convergence of the
/// `l`-series is geometric with ratio `q^(1-x)`, which is `0.93` at the
/// slowest grid point; 80 terms leave a tail near `1e-2` there.
pub const INTERP_SERIES_TERMS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Classical,
    QForms,
    Identities,
    Interp,
    Convexity,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [
        Suite::Classical,
        Suite::QForms,
        Suite::Identities,
        Suite::Interp,
        Suite::Convexity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Classical => "classical",
            Suite::QForms => "q-forms",
            Suite::Identities => "identities",
            Suite::Interp => "interp",
            Suite::Convexity => "convexity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::PARTS)
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown suite `{s}` (expected all, classical, q-forms, identities, interp or convexity)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Non-gating reports, not counted in `passed` / `failed`.
    pub diagnostics: usize,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    let mut s = Summary {
        total: reports.len(),
        ..Summary::default()
    };
    for r in reports {
        match (r.gating, r.passed) {
            (false, _) => s.diagnostics += 1,
            (true, true) => s.passed += 1,
            (true, false) => s.failed += 1,
        }
    }
    s
}

/// Runs a suite. `tol_override` replaces every report's tolerance.
pub fn run(suite: Suite, tol_override: Option<f64>) -> Vec<VerificationReport> {
    let reports = match suite {
        Suite::All => Suite::PARTS.iter().flat_map(|s| run(*s, None)).collect(),
        Suite::Classical => classical(),
        Suite::QForms => q_forms(),
        Suite::Identities => identities(),
        Suite::Interp => interp(),
        Suite::Convexity => convexity(),
    };
    match tol_override {
        Some(t) => reports.into_iter().map(|r| r.with_tolerance(t)).collect(),
        None => reports,
    }
}

/// The report with the largest residual; a report that failed to evaluate
/// wins outright.
fn worst(reports: impl IntoIterator<Item = VerificationReport>) -> Option<VerificationReport> {
    reports
        .into_iter()
        .reduce(|a, b| match (a.residual, b.residual) {
            (None, _) => a,
            (_, None) => b,
            (Some(x), Some(y)) => {
                if y > x {
                    b
                } else {
                    a
                }
            }
        })
}

/// Compares `(lhs, rhs)` pairs and keeps the worst.
fn sweep<I>(identity: &str, tol: f64, mode: ResidualMode, points: I) -> VerificationReport
where
    I: IntoIterator<Item = Result<(Complex64, Complex64)>>,
{
    let mut count = 0usize;
    let reports = points.into_iter().map(|p| {
        count += 1;
        match p {
            Ok((l, r)) => VerificationReport::compare(identity, l, r, tol, mode),
            Err(e) => VerificationReport::failed(identity, tol, e),
        }
    });
    let w =
        worst(reports).unwrap_or_else(|| VerificationReport::failed(identity, tol, "empty sweep"));
    let note = match &w.note {
        Some(n) => format!("{n}; worst of {count} points"),
        None => format!("worst of {count} points"),
    };
    w.note(note)
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn pair(l: f64, r: f64) -> Result<(Complex64, Complex64)> {
    Ok((re(l), re(r)))
}

fn q(v: f64) -> QParam {
    QParam::new(v).expect("grid q values are valid")
}

// ---------------------------------------------------------------------------
// classical

fn classical() -> Vec<VerificationReport> {
    let xs = grid::unit_101();
    let mut out = Vec::new();

    let per_n: Vec<Vec<VerificationReport>> = (0..=20u32)
        .into_par_iter()
        .map(|n| {
            let ni = i64::from(n);
            let mut v = Vec::new();
            v.push(
                sweep(
                    "bernstein_partition_of_unity",
                    tol::PARTITION_OF_UNITY,
                    ResidualMode::Absolute,
                    xs.iter()
                        .map(|&x| pair((0..=ni).map(|j| basis(j, n, x)).sum(), 1.0)),
                )
                .param("n", n),
            );
            v.push(
                sweep(
                    "bernstein_symmetry",
                    tol::SYMMETRY,
                    ResidualMode::Absolute,
                    xs.iter().flat_map(|&x| {
                        (0..=ni).map(move |j| pair(basis(j, n, x), basis(ni - j, n, 1.0 - x)))
                    }),
                )
                .param("n", n),
            );
            v.push(
                sweep(
                    "bernstein_endpoints",
                    0.0,
                    ResidualMode::Absolute,
                    (0..=ni).flat_map(|j| {
                        [
                            pair(basis(j, n, 0.0), f64::from(u8::from(j == 0))),
                            pair(basis(j, n, 1.0), f64::from(u8::from(j == ni))),
                        ]
                    }),
                )
                .param("n", n),
            );
            v.push(
                sweep(
                    "bernstein_recursion",
                    tol::RECURSION,
                    ResidualMode::Absolute,
                    xs.iter().flat_map(|&x| {
                        (-1..=ni + 1).map(move |j| pair(basis_recursive(j, n, x), basis(j, n, x)))
                    }),
                )
                .param("n", n),
            );
            if n >= 1 {
                let h = tol::FD_STEP;
                v.push(
                    sweep(
                        "bernstein_derivative_fd",
                        tol::FINITE_DIFFERENCE,
                        ResidualMode::Absolute,
                        xs.iter().flat_map(|&x| {
                            (0..=ni).map(move |k| {
                                let fd = (basis(k, n, x + h) - basis(k, n, x - h)) / (2.0 * h);
                                pair(basis_derivative(k, n, x), fd)
                            })
                        }),
                    )
                    .param("n", n),
                );
                let (a, b) = (2.5, -0.75);
                v.push(
                    sweep(
                        "bernstein_affine_reproduction",
                        tol::AFFINE,
                        ResidualMode::Absolute,
                        xs.iter()
                            .map(|&x| Ok((re(operator(&|t| a * t + b, n, x)?), re(a * x + b)))),
                    )
                    .param("n", n),
                );
                v.push(
                    sweep(
                        "bernstein_expectation_form",
                        tol::EXPECTATION_FORM,
                        ResidualMode::Absolute,
                        xs.iter().map(|&x| {
                            Ok((
                                re(operator_as_expectation(&f64::cos, n, x)?),
                                re(operator(&f64::cos, n, x)?),
                            ))
                        }),
                    )
                    .param("n", n),
                );
            }
            v
        })
        .collect();
    out.extend(per_n.into_iter().flatten());

    let max_err = |n: u32| -> Result<f64> {
        xs.iter()
            .map(|&x| Ok((operator(&f64::cos, n, x)? - x.cos()).abs()))
            .try_fold(0.0f64, |m, e: Result<f64>| Ok(m.max(e?)))
    };
    out.push(match (max_err(100), max_err(10)) {
        (Ok(e100), Ok(e10)) => VerificationReport::compare(
            "bernstein_uniform_convergence_cos",
            e100,
            e10,
            0.0,
            ResidualMode::Upper,
        )
        .param("n_small", 10u32)
        .param("n_large", 100u32)
        .note("lhs = max error at n = 100, rhs = max error at n = 10"),
        (Err(e), _) | (_, Err(e)) => {
            VerificationReport::failed("bernstein_uniform_convergence_cos", 0.0, e)
        }
    });

    let beta: Vec<VerificationReport> = (0..=10u32)
        .into_par_iter()
        .map(|n| {
            sweep(
                "beta_density_normalization",
                tol::QUADRATURE,
                ResidualMode::Absolute,
                (0..=i64::from(n)).map(|j| {
                    let integral = simpson(
                        |x| beta_density(j, n, x).unwrap_or(f64::NAN),
                        0.0,
                        1.0,
                        tol::SIMPSON_PANELS,
                    );
                    pair(integral, 1.0)
                }),
            )
            .param("n", n)
        })
        .collect();
    out.extend(beta);

    let xs10: Vec<f64> = (0..=10).map(|i| f64::from(i) / 10.0).collect();
    let moments: Vec<Vec<VerificationReport>> = (1..=30u32)
        .into_par_iter()
        .map(|n| {
            let nf = f64::from(n);
            vec![
                sweep(
                    "binomial_mean",
                    tol::MOMENTS,
                    ResidualMode::Absolute,
                    xs10.iter().map(|&x| pair(binomial_moment(n, x, 1), nf * x)),
                )
                .param("n", n),
                sweep(
                    "binomial_variance",
                    tol::MOMENTS,
                    ResidualMode::Absolute,
                    xs10.iter().map(|&x| {
                        pair(
                            binomial_moment(n, x, 2) - (nf * x).powi(2),
                            nf * x * (1.0 - x),
                        )
                    }),
                )
                .param("n", n),
                sweep(
                    "binomial_moment_vs_pmf",
                    tol::MOMENTS,
                    ResidualMode::Relative,
                    xs10.iter().flat_map(|&x| {
                        (0..=4u32).map(move |m| {
                            let direct = (0..=n)
                                .map(|k| f64::from(k).powi(m as i32) * binomial_pmf(n, k, x))
                                .sum();
                            pair(binomial_moment(n, x, m), direct)
                        })
                    }),
                )
                .param("n", n),
            ]
        })
        .collect();
    out.extend(moments.into_iter().flatten());
    out
}

// ---------------------------------------------------------------------------
// q-forms

/// Readings of the coefficient formula for `Y_n(k; x; q)` obtained by
/// expanding every factor of the generating function in `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientReading {
    /// Inner weight `C(n-k, k)` and power `q^(l + j(1-x))`.
    FixedBinomial,
    /// Inner weight `C(n-k, j)` and power `q^(l + j(1-x))`.
    BinomialInJ,
    /// Inner weight `C(n-k, j)` and power `q^(l(1-x) + j(1-x))`.
    BinomialInJShiftedL,
}

impl CoefficientReading {
    pub const ALL: [CoefficientReading; 3] = [
        CoefficientReading::FixedBinomial,
        CoefficientReading::BinomialInJ,
        CoefficientReading::BinomialInJShiftedL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoefficientReading::FixedBinomial => "fixed_binomial",
            CoefficientReading::BinomialInJ => "binomial_in_j",
            CoefficientReading::BinomialInJShiftedL => "binomial_in_j_shifted_l",
        }
    }
}

/// `C(n, k) (-1)^k k! / (1-q)^(n-k) * sum_{m,l} sum_{j=0..n-k} C(k+l-1, l) w_j (-1)^j q^(..) S(m, k) (x ln q)^m / m!`
/// under the given reading. The summand factorizes, so each index is summed
/// separately.
pub fn y_coefficient_reading(
    n: u32,
    k: u32,
    x: f64,
    qp: QParam,
    reading: CoefficientReading,
    truncation: SeriesTruncation,
) -> Result<f64> {
    let qv = qp.value();
    if !(qv > 0.0 && qv < 1.0) {
        return Err(Error::domain("coefficient readings need q in (0, 1)"));
    }
    if k > n {
        return Err(Error::index("k <= n"));
    }
    let l_exp = match reading {
        CoefficientReading::BinomialInJShiftedL => 1.0 - x,
        _ => 1.0,
    };
    let mut l_sum = 0.0;
    let mut l_last = 0.0;
    for l in 0..truncation.terms as u32 {
        l_last = gen_binomial(re(f64::from(k)), l).re * qv.powf(f64::from(l) * l_exp);
        l_sum += l_last;
    }
    truncation.check_tail("coefficient reading, sum over l", l_last.abs())?;

    let a = x * qv.ln();
    let mut m_sum = 0.0;
    for (m, s) in stirling2_over_factorial(k, truncation.terms)
        .into_iter()
        .enumerate()
    {
        m_sum += s * a.powi(m as i32);
    }

    let r = n - k;
    let mut j_sum = 0.0;
    for j in 0..=r {
        let w = match reading {
            CoefficientReading::FixedBinomial => binomial_f64(u64::from(r), u64::from(k)),
            _ => binomial_f64(u64::from(r), u64::from(j)),
        };
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        j_sum += w * sign * qv.powf(f64::from(j) * (1.0 - x));
    }

    let sign_k = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let pre = binomial_f64(u64::from(n), u64::from(k)) * sign_k * factorial_f64(k)
        / (1.0 - qv).powi(r as i32);
    Ok(pre * l_sum * j_sum * m_sum)
}

/// `sum_{i=0..n} C(n, i) Y_i(k; x; q) (-[1-x])^(n-i)`, the umbral expansion
/// of `(Y - [1-x])^n`; equals `n! [t^n] ([x] t)^k / k!`.
pub fn umbral_shift(n: u32, k: u32, x: f64, qp: QParam) -> Result<f64> {
    let c = q_integer(1.0 - x, qp)?;
    let mut acc = 0.0;
    for i in k..=n {
        acc += binomial_f64(u64::from(n), u64::from(i))
            * y_poly(i, k, x, qp)?
            * (-c).powi((n - i) as i32);
    }
    Ok(acc)
}

fn q_forms() -> Vec<VerificationReport> {
    let xs = grid::interior_9();
    let mut out = Vec::new();

    for &qv in &grid::Q_SERIES {
        let qp = q(qv);
        out.push(
            sweep(
                "q_integer_geometric_sum",
                tol::Q_ARITHMETIC,
                ResidualMode::Absolute,
                (0..=12).map(|n| {
                    pair(
                        q_integer(f64::from(n), qp)?,
                        (0..n).map(|i| qv.powi(i)).sum(),
                    )
                }),
            )
            .param("q", qv),
        );
        let uv: Vec<f64> = (0..=8).map(|i| f64::from(i) * 0.25).collect();
        out.push(
            sweep(
                "q_addition_rule",
                tol::Q_ARITHMETIC,
                ResidualMode::Absolute,
                uv.iter().flat_map(|&u| {
                    uv.iter().map(move |&v| {
                        let (a, b) = q_addition_split(u, v, qp)?;
                        pair(a + b, q_integer(u + v, qp)?)
                    })
                }),
            )
            .param("q", qv),
        );
        out.push(
            sweep(
                "q_negation_exact",
                tol::Q_ARITHMETIC,
                ResidualMode::Absolute,
                uv.iter()
                    .map(|&u| pair(q_integer(-u, qp)?, q_negation(u, qp)?.exact)),
            )
            .param("q", qv)
            .note("[-u] = -q^(-u) [u]"),
        );
        out.push(
            sweep(
                "q_negation_sign_flipped",
                tol::Q_ARITHMETIC,
                ResidualMode::Absolute,
                uv.iter()
                    .map(|&u| pair(q_integer(-u, qp)?, q_negation(u, qp)?.sign_flipped)),
            )
            .param("q", qv)
            .note("[-u] = -q^u [u]")
            .diagnostic(),
        );
        out.push(
            sweep(
                "gauss_binomial_symmetry",
                tol::Q_ARITHMETIC,
                ResidualMode::Relative,
                (0..=12i64).flat_map(|n| {
                    (0..=n).map(move |r| {
                        pair(gauss_binomial(n, r, qp)?, gauss_binomial(n, n - r, qp)?)
                    })
                }),
            )
            .param("q", qv),
        );
    }

    let near = q(1.0 - 1e-8);
    let limit = |mode, tol| {
        sweep(
            "gauss_binomial_classical_limit",
            tol,
            mode,
            (0..=10i64).flat_map(|n| {
                (0..=n).map(move |r| {
                    pair(
                        gauss_binomial(n, r, near)?,
                        binomial_f64(n as u64, r as u64),
                    )
                })
            }),
        )
        .param("q", near.value())
    };
    out.push(limit(ResidualMode::Relative, tol::GAUSS_LIMIT));
    out.push(
        limit(ResidualMode::Absolute, tol::GAUSS_LIMIT)
            .note("absolute; first-order deviation C(n,r) r(n-r)(1-q)/2")
            .diagnostic(),
    );
    out.push(sweep(
        "gen_binomial_negative_integer",
        tol::Q_ARITHMETIC,
        ResidualMode::Relative,
        (0..=10u32).flat_map(|m| {
            (0..=m).map(move |l| {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let oracle = sign * factorial_f64(m) / (factorial_f64(l) * factorial_f64(m - l));
                pair(gen_binomial(re(-f64::from(m)), l).re, oracle)
            })
        }),
    ));

    let tr = SeriesTruncation::default();
    let per_nq: Vec<Vec<VerificationReport>> = (0..=10u32)
        .flat_map(|n| grid::Q_SERIES.map(|qv| (n, qv)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(n, qv)| {
            let qp = q(qv);
            let pts = || xs.iter().flat_map(move |&x| (0..=n).map(move |k| (k, x)));
            let mut v = vec![sweep(
                "y_sumform_agreement",
                tol::DUAL_FORM,
                ResidualMode::Absolute,
                pts().map(|(k, x)| pair(y_poly_sumform(n, k, x, qp)?, y_poly(n, k, x, qp)?)),
            )
            .param("n", n)
            .param("q", qv)
            .note("binomially weighted alternating sum")];
            if n >= 2 {
                v.push(
                    sweep(
                        "y_sumform_unweighted",
                        tol::DUAL_FORM,
                        ResidualMode::Absolute,
                        pts().map(|(k, x)| {
                            pair(
                                y_poly_sumform_unweighted(n, k, x, qp)?,
                                y_poly(n, k, x, qp)?,
                            )
                        }),
                    )
                    .param("n", n)
                    .param("q", qv)
                    .note("alternating sum without C(n-k, j)")
                    .diagnostic(),
                );
            }
            v.push(
                sweep(
                    "y_genfun_coefficient",
                    tol::GENFUN_COEFFICIENT,
                    ResidualMode::Absolute,
                    pts().map(|(k, x)| pair(y_from_genfun(n, k, x, qp, tr)?, y_poly(n, k, x, qp)?)),
                )
                .param("n", n)
                .param("q", qv),
            );
            v.push(
                sweep(
                    "y_umbral_recurrence",
                    tol::DUAL_FORM,
                    ResidualMode::Absolute,
                    pts().map(|(k, x)| {
                        let want = if k == n {
                            q_integer(x, qp)?.powi(k as i32)
                        } else {
                            0.0
                        };
                        pair(umbral_shift(n, k, x, qp)?, want)
                    }),
                )
                .param("n", n)
                .param("q", qv),
            );
            v
        })
        .collect();
    out.extend(per_nq.into_iter().flatten());

    let ts = grid::genfun_t();
    for k in 0..=grid::K_GENFUN_SERIES {
        for &qv in &grid::Q_GENFUN_SERIES {
            let qp = q(qv);
            out.push(
                sweep(
                    "genfun_series_vs_closed",
                    tol::GENFUN_SERIES,
                    ResidualMode::Absolute,
                    xs.iter().flat_map(|&x| {
                        ts.iter().map(move |&t| {
                            let p = GenFunPoint::new(t, x, qp, tr)?;
                            Ok((gen_fun_series(&p, k)?, gen_fun(&p, k)?))
                        })
                    }),
                )
                .param("k", k)
                .param("q", qv)
                .param("terms", tr.terms),
            );
        }
    }

    let long = SeriesTruncation::with_terms(400).expect("valid truncation");
    for reading in CoefficientReading::ALL {
        for &qv in &grid::Q_GENFUN_SERIES {
            let qp = q(qv);
            let rep = sweep(
                "y_coefficient_formula",
                tol::DUAL_FORM,
                ResidualMode::Absolute,
                (0..=6u32).flat_map(|n| {
                    xs.iter().flat_map(move |&x| {
                        (0..=n).map(move |k| {
                            pair(
                                y_coefficient_reading(n, k, x, qp, reading, long)?,
                                y_poly(n, k, x, qp)?,
                            )
                        })
                    })
                }),
            );
            let verdict = if rep.passed {
                "matches closed form"
            } else {
                "does not match closed form"
            };
            let note = format!("{}; {verdict}", rep.note.clone().unwrap_or_default());
            out.push(
                rep.param("reading", reading.name())
                    .param("q", qv)
                    .note(note)
                    .diagnostic(),
            );
        }
    }

    let near = q(1.0 - 1e-6);
    for n in 0..=10u32 {
        let pts = || xs.iter().flat_map(move |&x| (0..=n).map(move |k| (k, x)));
        out.push(
            sweep(
                "y_classical_limit",
                tol::CLASSICAL_LIMIT,
                ResidualMode::Absolute,
                pts().map(|(k, x)| pair(y_poly(n, k, x, near)?, basis(i64::from(k), n, x))),
            )
            .param("n", n)
            .param("q", near.value()),
        );
        out.push(
            sweep(
                "y_exact_at_q_one",
                0.0,
                ResidualMode::Absolute,
                pts().map(|(k, x)| pair(y_poly(n, k, x, QParam::ONE)?, basis(i64::from(k), n, x))),
            )
            .param("n", n),
        );
    }

    let xs101 = grid::unit_101();
    for n in 1..=10u32 {
        let h = tol::FD_STEP;
        out.push(
            sweep(
                "y_derivative_fd",
                tol::FINITE_DIFFERENCE,
                ResidualMode::Absolute,
                xs.iter().flat_map(|&x| {
                    (0..=n).map(move |k| {
                        let fd = (y_poly(n, k, x + h, QParam::ONE)?
                            - y_poly(n, k, x - h, QParam::ONE)?)
                            / (2.0 * h);
                        pair(y_derivative_q1(n, i64::from(k), x)?, fd)
                    })
                }),
            )
            .param("n", n),
        );
        out.push(
            sweep(
                "q_operator_classical_reduction",
                0.0,
                ResidualMode::Absolute,
                xs101.iter().map(|&x| {
                    let f = |t: f64| (2.0 * t).sin() + t;
                    pair(q_operator(&f, n, x, QParam::ONE)?, operator(&f, n, x)?)
                }),
            )
            .param("n", n),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// identities

fn identities() -> Vec<VerificationReport> {
    let xs = grid::interior_9();
    let mut out = Vec::new();

    let qs = [0.3, 0.7, 0.99, 1.0];
    let tuples: Vec<(u32, u32, f64)> = (0..=8u32)
        .flat_map(|n| (0..=n).flat_map(move |k| qs.map(|qv| (n, k, qv))))
        .collect();
    let bs: Vec<VerificationReport> = tuples
        .into_par_iter()
        .map(|(n, k, qv)| {
            let reps = xs.iter().map(|&x| {
                bernoulli_stirling_identity_check(n, k, x, q(qv), tol::BERNOULLI_STIRLING)
            });
            let count = xs.len();
            let w = worst(reps).expect("nonempty grid");
            let mut w = VerificationReport {
                params: Default::default(),
                ..w
            };
            w = w.param("n", n).param("k", k).param("q", qv);
            w.note(format!("worst of {count} points"))
        })
        .collect();
    out.extend(bs);

    for k in 1..=8u32 {
        out.push(vanishing_sum_check(k, 0.4, q(0.7)));
    }

    let tr40 = SeriesTruncation::with_terms(40).expect("valid truncation");
    for &y in &xs {
        for k in 1..=4u32 {
            out.push(hermite_sum_check(k, y, tr40, tol::HERMITE_SUM));
        }
        out.push(
            match hermite_sum(1, y, tr40) {
                Ok(v) => VerificationReport::compare(
                    "hermite_sum_vs_expansion",
                    v,
                    hermite_expansion(y, 30),
                    tol::HERMITE_SUM,
                    ResidualMode::Absolute,
                )
                .note("rhs = e * sum_{j<=30} H_j(1-y) / j!"),
                Err(e) => {
                    VerificationReport::failed("hermite_sum_vs_expansion", tol::HERMITE_SUM, e)
                }
            }
            .param("y", y),
        );
        out.push(
            sweep(
                "hermite_sum_k_independence",
                tol::HERMITE_K_INDEPENDENCE,
                ResidualMode::Absolute,
                (2..=4u32).map(|k| pair(hermite_sum(k, y, tr40)?, hermite_sum(1, y, tr40)?)),
            )
            .param("y", y),
        );
    }

    for n in 0..=8u32 {
        for &qv in &[0.3, 0.7, 1.0] {
            let reps = (0..=4u32).flat_map(|k| {
                grid::INTERP_X.iter().map(move |&x| {
                    negative_integer_value_check(n, k, x, q(qv), tol::NEGATIVE_INTEGER_VALUE)
                })
            });
            let w = worst(reps).expect("nonempty grid");
            let w = VerificationReport {
                params: Default::default(),
                ..w
            };
            out.push(w.param("n", n).param("q", qv).note("worst of 15 points"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// interp

fn interp() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let tr = SeriesTruncation::with_terms(INTERP_SERIES_TERMS).expect("valid truncation");

    let tuples: Vec<((f64, f64), f64)> = grid::INTERP_Z
        .iter()
        .flat_map(|&z| grid::INTERP_Q.map(|qv| (z, qv)))
        .collect();
    let series: Vec<VerificationReport> = tuples
        .into_par_iter()
        .map(|((zr, zi), qv)| {
            let z = Complex64::new(zr, zi);
            sweep(
                "s_q_series_vs_closed",
                tol::INTERP_SERIES,
                ResidualMode::Absolute,
                (0..=4u32).flat_map(|k| {
                    grid::INTERP_X.iter().map(move |&x| {
                        let p = InterpPoint::new(z, k, x, q(qv));
                        Ok((s_q_series(&p, tr)?, s_q_closed(&p)?))
                    })
                }),
            )
            .param("z", z)
            .param("q", qv)
            .param("terms", tr.terms)
        })
        .collect();
    out.extend(series);

    let near = q(1.0 - 1e-6);
    for &(zr, zi) in &grid::INTERP_Z {
        let z = Complex64::new(zr, zi);
        out.push(
            sweep(
                "s_q_continuity_at_one",
                tol::CLASSICAL_LIMIT,
                ResidualMode::Absolute,
                (0..=4u32).flat_map(|k| {
                    grid::INTERP_X.iter().map(move |&x| {
                        Ok((
                            s_q_closed(&InterpPoint::new(z, k, x, near))?,
                            s_q_closed(&InterpPoint::classical(z, k, x))?,
                        ))
                    })
                }),
            )
            .param("z", z),
        );
    }

    let h = tol::INTERP_FD_STEP;
    for m in 1..=2u32 {
        out.push(
            sweep(
                "s_derivative_fd",
                tol::INTERP_FD_RELATIVE,
                ResidualMode::Relative,
                [-2.0, 0.5, 1.5].into_iter().flat_map(|z: f64| {
                    (0..=3u32).flat_map(move |k| {
                        grid::INTERP_X.iter().map(move |&x| {
                            let s = |zz: f64| {
                                s_q_closed(&InterpPoint::classical(re(zz), k, x)).map(|v| v.re)
                            };
                            let fd = match m {
                                1 => (s(z + h)? - s(z - h)?) / (2.0 * h),
                                _ => (s(z + h)? - 2.0 * s(z)? + s(z - h)?) / (h * h),
                            };
                            // Scale-free comparison: both sides divided by |S(z)|.
                            let scale = s(z)?.abs();
                            pair(s_derivative(m, re(z), k, x)?.re / scale, fd / scale)
                        })
                    })
                }),
            )
            .param("m", m)
            .note("both sides divided by |S(z, k; x)|"),
        );
    }

    out.push(sweep(
        "s_exponential_structure",
        tol::NEGATIVE_INTEGER_VALUE,
        ResidualMode::Relative,
        grid::INTERP_Z.iter().flat_map(|&(zr, zi)| {
            (0..=4u32).flat_map(move |k| {
                grid::INTERP_X.iter().map(move |&x| {
                    let z = Complex64::new(zr, zi);
                    let s = s_q_closed(&InterpPoint::classical(z, k, x))?;
                    let s0 = s_q_closed(&InterpPoint::classical(re(0.0), k, x))?;
                    Ok((s, s0 * (-z * (1.0 - x).ln()).exp()))
                })
            })
        }),
    ));

    out.push(sweep(
        "s_derivative_at_negative_integers",
        tol::NEGATIVE_INTEGER_VALUE,
        ResidualMode::Relative,
        (0..=3u32).flat_map(|m| {
            (0..=8u32).flat_map(move |n| {
                (0..=4u32).flat_map(move |k| {
                    grid::INTERP_X.iter().map(move |&x| {
                        let a = derivative_at_negative_integers(m, n, k, x)?;
                        let b = s_derivative(m, re(-f64::from(n)), k, x)?;
                        Ok((re(a), b))
                    })
                })
            })
        }),
    ));

    let singular = (0..=3u32).all(|k| {
        matches!(
            s_q_closed(&InterpPoint::classical(re(0.5), k, 1.0)),
            Err(Error::Singularity(_))
        ) && matches!(
            s_q_closed(&InterpPoint::new(re(0.5), k, 1.0, q(0.5))),
            Err(Error::Singularity(_))
        )
    });
    out.push(
        VerificationReport::compare(
            "s_singularity_at_one",
            f64::from(u8::from(singular)),
            1.0,
            0.0,
            ResidualMode::Absolute,
        )
        .note("lhs = 1 when every evaluation at x = 1 raises the singularity error"),
    );
    out
}

// ---------------------------------------------------------------------------
// convexity

fn convexity() -> Vec<VerificationReport> {
    let xs = grid::unit_101();
    let convex = [Builtin::Square, Builtin::Exp, Builtin::AbsShift];
    let mut out = Vec::new();

    for n in 1..=10u32 {
        out.push(
            sweep(
                "phillips_classical_reduction",
                tol::PHILLIPS_REDUCTION,
                ResidualMode::Absolute,
                Builtin::ALL.iter().flat_map(|&f| {
                    xs.iter().map(move |&x| {
                        let g = |t| f.eval(t);
                        pair(
                            phillips_operator(&g, n, x, QParam::ONE)?,
                            operator(&g, n, x)?,
                        )
                    })
                }),
            )
            .param("n", n),
        );
    }
    for &qv in &grid::PHILLIPS_Q {
        out.push(
            sweep(
                "phillips_partition_of_unity",
                tol::PARTITION_OF_UNITY,
                ResidualMode::Absolute,
                (1..=10u32).flat_map(|n| {
                    xs.iter()
                        .map(move |&x| pair(phillips_operator(&|_| 1.0, n, x, q(qv))?, 1.0))
                }),
            )
            .param("q", qv),
        );
    }

    let tuples: Vec<(Builtin, f64, u32)> = convex
        .iter()
        .flat_map(|&f| {
            grid::PHILLIPS_Q
                .iter()
                .flat_map(move |&qv| (2..=10u32).map(move |n| (f, qv, n)))
        })
        .collect();
    let shape: Vec<Vec<VerificationReport>> = tuples
        .into_par_iter()
        .map(|(f, qv, n)| {
            let g = |t| f.eval(t);
            let qp = q(qv);
            vec![
                sweep(
                    "phillips_monotone_in_n",
                    tol::CONVEXITY_SLACK,
                    ResidualMode::Upper,
                    xs.iter().map(|&x| {
                        pair(
                            phillips_operator(&g, n, x, qp)?,
                            phillips_operator(&g, n - 1, x, qp)?,
                        )
                    }),
                )
                .param("f", f.name())
                .param("q", qv)
                .param("n", n)
                .note("lhs = beta_n f(x), rhs = beta_{n-1} f(x)"),
                sweep(
                    "phillips_above_convex_function",
                    tol::CONVEXITY_SLACK,
                    ResidualMode::Upper,
                    xs.iter()
                        .map(|&x| pair(f.eval(x), phillips_operator(&g, n, x, qp)?)),
                )
                .param("f", f.name())
                .param("q", qv)
                .param("n", n)
                .note("lhs = f(x), rhs = beta_n f(x)"),
            ]
        })
        .collect();
    out.extend(shape.into_iter().flatten());
    out
}

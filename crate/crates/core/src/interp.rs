//! The interpolation function of the q-Bernstein-type polynomials.
//!
//! ```text
//! S_q(z, k; x) = (1-q)^(z-k) sum_{m,l} C(z+l-1, l) q^(l(1-x)) S(m, k) (x ln q)^m / m!
//!              = (-1)^k / k! [x]^k [1-x]^(-z)
//! ```
//!
//! At `z = -n` it takes the value `(-1)^k n! / (n+k)! * Y_{n+k}(k; x; q)`.
//! `x = 1` is a pole.

use num_complex::Complex64;

use crate::bernstein::basis;
use crate::qbernstein::y_poly;
use crate::qnum::{gen_binomial_seq, q_integer, QParam};
use crate::report::{ResidualMode, VerificationReport};
use crate::special::{stirling2_over_factorial, SeriesTruncation};
use crate::{factorial_f64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpPoint {
    pub z: Complex64,
    pub k: u32,
    pub x: f64,
    pub q: QParam,
}

impl InterpPoint {
    pub fn new(z: Complex64, k: u32, x: f64, q: QParam) -> Self {
        InterpPoint { z, k, x, q }
    }

    /// Classical (`q = 1`) point.
    pub fn classical(z: Complex64, k: u32, x: f64) -> Self {
        InterpPoint {
            z,
            k,
            x,
            q: QParam::ONE,
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if x == 1.0 {
        Err(Error::Singularity("S(z, k; x) has a pole at x = 1".into()))
    } else if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("x = {x} must lie in (0, 1)")))
    }
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^k / k! [x]^k [1-x]^(-z)`, principal branch (the base is positive).
pub fn s_q_closed(p: &InterpPoint) -> Result<Complex64> {
    check_x(p.x)?;
    if !p.q.admits_real_exponents() {
        return Err(Error::domain("S_q needs q in (0, 1]"));
    }
    let xq = q_integer(p.x, p.q)?;
    let yq = q_integer(1.0 - p.x, p.q)?;
    let prefactor = sign(p.k) / factorial_f64(p.k) * xq.powi(p.k as i32);
    Ok(prefactor * (-p.z * yq.ln()).exp())
}

/// The double series, truncated to `truncation.terms` terms in each index.
/// Needs `q` strictly inside `(0, 1)`.
pub fn s_q_series(p: &InterpPoint, truncation: SeriesTruncation) -> Result<Complex64> {
    check_x(p.x)?;
    let qv = p.q.value();
    if !(qv > 0.0 && qv < 1.0) {
        return Err(Error::domain(format!(
            "the series for S_q needs q in (0, 1), got q = {qv}"
        )));
    }
    let w = qv.powf(1.0 - p.x);
    let mut l_sum = Complex64::new(0.0, 0.0);
    let mut l_last = 0.0;
    let mut wl = 1.0;
    for c in gen_binomial_seq(p.z).take(truncation.terms) {
        let term = c * wl;
        l_sum += term;
        l_last = term.norm();
        wl *= w;
    }
    truncation.check_tail("S_q sum over l", l_last)?;

    let a = p.x * qv.ln();
    let mut m_sum = 0.0;
    let mut m_last = 0.0;
    for (m, s) in stirling2_over_factorial(p.k, truncation.terms)
        .into_iter()
        .enumerate()
    {
        m_last = s * a.powi(m as i32);
        m_sum += m_last;
    }
    truncation.check_tail("S_q sum over m", m_last.abs())?;

    let prefactor = ((p.z - f64::from(p.k)) * (1.0 - qv).ln()).exp();
    Ok(prefactor * l_sum * m_sum)
}

/// `d^m/dz^m S(z, k; x) = ln^m(1 / (1 - x)) S(z, k; x)` at `q = 1`.
pub fn s_derivative(m: u32, z: Complex64, k: u32, x: f64) -> Result<Complex64> {
    let s = s_q_closed(&InterpPoint::classical(z, k, x))?;
    Ok(s * (1.0 / (1.0 - x)).ln().powi(m as i32))
}

/// Checks `S_q(-n, k; x) = (-1)^k n! / (n+k)! * Y_{n+k}(k; x; q)`.
pub fn negative_integer_value_check(
    n: u32,
    k: u32,
    x: f64,
    q: QParam,
    tol: f64,
) -> VerificationReport {
    const NAME: &str = "s_q_at_negative_integer";
    let eval = || -> Result<(Complex64, f64)> {
        let lhs = s_q_closed(&InterpPoint::new(
            Complex64::new(-f64::from(n), 0.0),
            k,
            x,
            q,
        ))?;
        let rhs = sign(k) * factorial_f64(n) / factorial_f64(n + k) * y_poly(n + k, k, x, q)?;
        Ok((lhs, rhs))
    };
    let report = match eval() {
        Ok((lhs, rhs)) => VerificationReport::compare(NAME, lhs, rhs, tol, ResidualMode::Absolute),
        Err(e) => VerificationReport::failed(NAME, tol, e),
    };
    report
        .param("n", n)
        .param("k", k)
        .param("x", x)
        .param("q", q.value())
}

/// `d^m/dz^m S(z, k; x)` at `z = -n`:
/// `(-1)^k n! / (n+k)! * B_{k,n+k}(x) * ln^m(1 / (1 - x))`.
pub fn derivative_at_negative_integers(m: u32, n: u32, k: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    let b = basis(i64::from(k), n + k, x);
    Ok(sign(k) * factorial_f64(n) / factorial_f64(n + k)
        * b
        * (1.0 / (1.0 - x)).ln().powi(m as i32))
}

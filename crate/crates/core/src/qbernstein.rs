//! q-Bernstein-type polynomials and their generating function.
//!
//! For a total index `n` and parameter `k <= n`,
//!
//! ```text
//! Y_n(k; x; q) = C(n, k) [x]^k [1-x]^(n-k)
//! ```
//!
//! which reduces to the classical basis `B_{k,n}(x)` at `q = 1`. The
//! polynomials are the Taylor coefficients (`t^n / n!`) of
//!
//! ```text
//! F_{k,q}(t, x) = ([x] t)^k / k! * exp([1-x] t)
//!             = (-1)^k t^k exp([1-x] t) * sum_{m,l} C(k+l-1, l) q^l S(m, k) (x ln q)^m / m!
//! ```
//!
//! Callers always pass the total index `n`; a statement about `Y_{n+k}(k; ..)`
//! corresponds to `y_poly(n + k, k, ..)`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bernstein::{check_degree, check_unit_interval, sample, FunctionSample};
use crate::qnum::{binomial_f64, gauss_binomial, gen_binomial_seq, q_integer, QParam};
use crate::report::{ResidualMode, VerificationReport};
use crate::special::{
    bernoulli_higher, bernoulli_higher_poly, eval_poly_f64, hermite, stirling2,
    stirling2_over_factorial, SeriesTruncation,
};
use crate::{factorial_f64, Error, Result};

fn check_k_le_n(n: u32, k: u32) -> Result<()> {
    if k > n {
        Err(Error::index(format!(
            "Y_n(k; x; q) needs k <= n, got n = {n}, k = {k}"
        )))
    } else {
        Ok(())
    }
}

/// `Y_n(k; x; q) = C(n, k) [x]^k [1-x]^(n-k)`.
pub fn y_poly(n: u32, k: u32, x: f64, q: QParam) -> Result<f64> {
    check_k_le_n(n, k)?;
    check_unit_interval(x)?;
    let xq = q_integer(x, q)?;
    let yq = q_integer(1.0 - x, q)?;
    Ok(binomial_f64(u64::from(n), u64::from(k)) * xq.powi(k as i32) * yq.powi((n - k) as i32))
}

/// `Y` extended by zero outside `0 <= k <= n`.
fn y_or_zero(n: i64, k: i64, x: f64, q: QParam) -> Result<f64> {
    if n < 0 || k < 0 || k > n {
        Ok(0.0)
    } else {
        y_poly(n as u32, k as u32, x, q)
    }
}

/// `Y_n(k; x; q)` expanded through `[1-x] = 1 - q^(1-x) [x]`:
///
/// ```text
/// C(n, k) sum_{j=0..n-k} C(n-k, j) (-1)^j q^(j(1-x)) [x]^(j+k)
/// ```
pub fn y_poly_sumform(n: u32, k: u32, x: f64, q: QParam) -> Result<f64> {
    alternating_sum(n, k, x, q, true)
}

/// The same alternating sum with the binomial weights `C(n-k, j)` left out.
/// Agrees with [`y_poly`] only when `n - k <= 1`; kept for diagnostics.
pub fn y_poly_sumform_unweighted(n: u32, k: u32, x: f64, q: QParam) -> Result<f64> {
    alternating_sum(n, k, x, q, false)
}

fn alternating_sum(n: u32, k: u32, x: f64, q: QParam, weighted: bool) -> Result<f64> {
    check_k_le_n(n, k)?;
    check_unit_interval(x)?;
    if !q.admits_real_exponents() {
        return Err(Error::domain("the alternating-sum form needs q in (0, 1]"));
    }
    let m = n - k;
    let xq = q_integer(x, q)?;
    let mut acc = 0.0;
    for j in 0..=m {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let w = if weighted {
            binomial_f64(u64::from(m), u64::from(j))
        } else {
            1.0
        };
        acc += sign * w * q.pow(f64::from(j) * (1.0 - x))? * xq.powi((j + k) as i32);
    }
    Ok(binomial_f64(u64::from(n), u64::from(k)) * acc)
}

/// Evaluation point of the generating function `F_{k,q}(t, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFunPoint {
    pub t: Complex64,
    pub x: f64,
    pub q: QParam,
    pub truncation: SeriesTruncation,
}

impl GenFunPoint {
    pub fn new(t: Complex64, x: f64, q: QParam, truncation: SeriesTruncation) -> Result<Self> {
        check_unit_interval(x)?;
        Ok(GenFunPoint {
            t,
            x,
            q,
            truncation,
        })
    }
}

/// `F_{k,q}(t, x) = ([x] t)^k / k! * exp([1-x] t)`.
pub fn gen_fun(p: &GenFunPoint, k: u32) -> Result<Complex64> {
    let xq = q_integer(p.x, p.q)?;
    let yq = q_integer(1.0 - p.x, p.q)?;
    Ok((p.t * xq).powi(k as i32) / factorial_f64(k) * (p.t * yq).exp())
}

/// `F_{k,q}(t, x)` from its double-series definition, truncated to
/// `p.truncation.terms` terms in each of `l` and `m`. Needs `q` in `(0, 1)`.
pub fn gen_fun_series(p: &GenFunPoint, k: u32) -> Result<Complex64> {
    let qv = p.q.value();
    if !(qv > 0.0 && qv < 1.0) {
        return Err(Error::domain(format!(
            "the series form needs q in (0, 1), got q = {qv}"
        )));
    }
    let trunc = p.truncation;
    let n_terms = trunc.terms;

    // sum_l C(k+l-1, l) q^l
    let mut l_sum = 0.0;
    let mut l_last = 0.0;
    let kz = Complex64::new(f64::from(k), 0.0);
    for (l, c) in gen_binomial_seq(kz).take(n_terms).enumerate() {
        l_last = c.re * qv.powi(l as i32);
        l_sum += l_last;
    }
    trunc.check_tail("F_{k,q} sum over l", l_last.abs())?;

    // sum_m S(m, k) (x ln q)^m / m!
    let a = p.x * qv.ln();
    let mut m_sum = 0.0;
    let mut m_last = 0.0;
    for (m, s) in stirling2_over_factorial(k, n_terms).into_iter().enumerate() {
        m_last = s * a.powi(m as i32);
        m_sum += m_last;
    }
    trunc.check_tail("F_{k,q} sum over m", m_last.abs())?;

    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let yq = q_integer(1.0 - p.x, p.q)?;
    Ok(sign * p.t.powi(k as i32) * (p.t * yq).exp() * l_sum * m_sum)
}

/// `n! [t^n] F_{k,q}(t, x)`, by multiplying the truncated expansions of
/// `([x] t)^k / k!` and `exp([1-x] t)`.
pub fn y_from_genfun(
    n: u32,
    k: u32,
    x: f64,
    q: QParam,
    truncation: SeriesTruncation,
) -> Result<f64> {
    check_k_le_n(n, k)?;
    check_unit_interval(x)?;
    let len = truncation.terms;
    if n as usize >= len {
        return Err(Error::domain(format!(
            "coefficient t^{n} lies beyond a truncation of {len} terms"
        )));
    }
    let xq = q_integer(x, q)?;
    let yq = q_integer(1.0 - x, q)?;
    let mut left = vec![0.0; len];
    if (k as usize) < len {
        left[k as usize] = xq.powi(k as i32) / factorial_f64(k);
    }
    let right: Vec<f64> = (0..len as u32)
        .map(|i| yq.powi(i as i32) / factorial_f64(i))
        .collect();
    let n = n as usize;
    let coeff: f64 = (0..=n).map(|i| left[i] * right[n - i]).sum();
    Ok(coeff * factorial_f64(n as u32))
}

/// `d/dx Y_n(k; x; 1) = n Y_{n-1}(k-1; x; 1) - n Y_{n-1}(k; x; 1)`.
pub fn y_derivative_q1(n: u32, k: i64, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let n_prev = i64::from(n) - 1;
    let a = y_or_zero(n_prev, k - 1, x, QParam::ONE)?;
    let b = y_or_zero(n_prev, k, x, QParam::ONE)?;
    Ok(f64::from(n) * (a - b))
}

/// The q-Bernstein-type operator `sum_{j=0..n} f([j] / [n]) Y_n(j; x; q)`.
///
/// The weights do not sum to one for `q != 1`:
/// `sum_j Y_n(j; x; q) = ([x] + [1-x])^n`.
pub fn q_operator<F: FunctionSample + ?Sized>(f: &F, n: u32, x: f64, q: QParam) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval(x)?;
    let qn = q_integer(f64::from(n), q)?;
    let mut acc = 0.0;
    for j in 0..=n {
        let node = q_integer(f64::from(j), q)? / qn;
        acc += sample(f, node)? * y_poly(n, j, x, q)?;
    }
    Ok(acc)
}

/// Checks `Y_n(k; x; q) = [x]^k sum_{j=0..n} C(n, j) B_j^(k)([1-x]) S(n-j, k)`.
pub fn bernoulli_stirling_identity_check(
    n: u32,
    k: u32,
    x: f64,
    q: QParam,
    tol: f64,
) -> VerificationReport {
    const NAME: &str = "y_bernoulli_stirling";
    let eval = || -> Result<(f64, f64)> {
        check_unit_interval(x)?;
        // Y is zero below the diagonal.
        let lhs = if k <= n { y_poly(n, k, x, q)? } else { 0.0 };
        let xq = q_integer(x, q)?;
        let yq = q_integer(1.0 - x, q)?;
        let mut sum = 0.0;
        for j in 0..=n {
            let s = stirling2(n - j, k).to_f64().unwrap_or(f64::NAN);
            if s != 0.0 {
                sum += binomial_f64(u64::from(n), u64::from(j)) * bernoulli_higher(j, k, yq) * s;
            }
        }
        Ok((lhs, xq.powi(k as i32) * sum))
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

/// The polynomial `P(z) = sum_{n<k} sum_{j<=n} B_j^(k)(z) S(n-j, k) / (j! (n-j)!)`
/// with exact coefficients.
pub fn vanishing_sum_polynomial(k: u32) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); k as usize + 1];
    for n in 0..k {
        for j in 0..=n {
            let s = stirling2(n - j, k);
            if s.is_zero() {
                continue;
            }
            let denom = crate::qnum::binomial(u64::from(n), u64::from(j));
            let fact_n: num_bigint::BigUint = (2..=u64::from(n)).product();
            // 1 / (j! (n-j)!) = C(n, j) / n!
            let scale = BigRational::new(
                s * num_bigint::BigInt::from(denom),
                num_bigint::BigInt::from(fact_n),
            );
            for (p, c) in bernoulli_higher_poly(j, k).into_iter().enumerate() {
                acc[p] += c * &scale;
            }
        }
    }
    acc
}

/// Checks that `[x]^k P([1-x]) = 0` where `P` is [`vanishing_sum_polynomial`].
///
/// Every Stirling factor `S(n-j, k)` has `n - j < k` and vanishes, so `P` is
/// the zero polynomial; the report's note records whether that holds exactly.
pub fn vanishing_sum_check(k: u32, x: f64, q: QParam) -> VerificationReport {
    const NAME: &str = "vanishing_bernoulli_stirling_sum";
    let poly = vanishing_sum_polynomial(k);
    let exact_zero = poly.iter().all(Zero::is_zero);
    let report = match (q_integer(x, q), q_integer(1.0 - x, q)) {
        (Ok(xq), Ok(yq)) => {
            let lhs = if exact_zero {
                0.0
            } else {
                xq.powi(k as i32) * eval_poly_f64(&poly, yq)
            };
            VerificationReport::compare(NAME, lhs, 0.0, 0.0, ResidualMode::Absolute).note(
                if exact_zero {
                    "polynomial in [1-x] is identically zero in exact arithmetic"
                } else {
                    "polynomial in [1-x] has nonzero exact coefficients"
                },
            )
        }
        (Err(e), _) | (_, Err(e)) => VerificationReport::failed(NAME, 0.0, e),
    };
    report.param("k", k).param("x", x).param("q", q.value())
}

/// `(k! / y^k) sum_{n>=0} Y_{n+k}(k; y; 1) 2^n / (n+k)!`, truncated.
///
/// Substituting the closed form gives `sum_n (2(1-y))^n / n! = exp(2(1-y))`
/// for every `k`.
pub fn hermite_sum(k: u32, y: f64, truncation: SeriesTruncation) -> Result<f64> {
    if !(y > 0.0 && y <= 1.0) {
        return Err(Error::domain(format!(
            "hermite_sum needs y in (0, 1], got {y}"
        )));
    }
    if k == 0 {
        return Err(Error::index("hermite_sum needs k >= 1"));
    }
    let mut acc = 0.0;
    let mut last = 0.0;
    for n in 0..truncation.terms as u32 {
        let y_val = y_poly(n + k, k, y, QParam::ONE)?;
        last = y_val * 2f64.powi(n as i32) / factorial_f64(n + k);
        acc += last;
    }
    truncation.check_tail("Hermite sum", last.abs())?;
    Ok(acc * factorial_f64(k) / y.powi(k as i32))
}

/// `e * sum_{j=0..=terms} H_j(1-y) / j!`, which tends to `exp(2(1-y))`.
pub fn hermite_expansion(y: f64, terms: u32) -> f64 {
    let z = 1.0 - y;
    let s: f64 = (0..=terms).map(|j| hermite(j, z) / factorial_f64(j)).sum();
    std::f64::consts::E * s
}

/// Compares [`hermite_sum`] with its closed value `exp(2(1-y))`.
pub fn hermite_sum_check(
    k: u32,
    y: f64,
    truncation: SeriesTruncation,
    tol: f64,
) -> VerificationReport {
    const NAME: &str = "hermite_sum";
    let report = match hermite_sum(k, y, truncation) {
        Ok(v) => VerificationReport::compare(
            NAME,
            v,
            (2.0 * (1.0 - y)).exp(),
            tol,
            ResidualMode::Absolute,
        ),
        Err(e) => VerificationReport::failed(NAME, tol, e),
    };
    report
        .param("k", k)
        .param("y", y)
        .param("terms", truncation.terms)
        .note("rhs = exp(2(1-y))")
}

/// The Phillips q-Bernstein operator
/// `sum_r f([r]/[n]) [n r]_q x^r prod_{s=0..n-r-1} (1 - q^s x)`.
pub fn phillips_operator<F: FunctionSample + ?Sized>(
    f: &F,
    n: u32,
    x: f64,
    q: QParam,
) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval(x)?;
    let qv = q.value();
    if !(qv > 0.0 && qv <= 1.0) {
        return Err(Error::domain(format!(
            "the Phillips operator needs 0 < q <= 1, got q = {qv}"
        )));
    }
    let qn = q_integer(f64::from(n), q)?;
    let mut acc = 0.0;
    for r in 0..=n {
        let node = q_integer(f64::from(r), q)? / qn;
        let tail: f64 = (0..n - r).map(|s| 1.0 - qv.powi(s as i32) * x).product();
        let w = gauss_binomial(i64::from(n), i64::from(r), q)? * x.powi(r as i32) * tail;
        acc += sample(f, node)? * w;
    }
    Ok(acc)
}

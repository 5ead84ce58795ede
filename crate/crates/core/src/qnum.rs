//! q-calculus primitives.
//!
//! The q-integer of a real `x` is `[x] = [x:q] = (1 - q^x) / (1 - q)` for
//! `q != 1` and `x` itself at `q = 1`. The classical value is a separate
//! branch, never the limit of a `0/0` evaluation.
//!
//! Powers `q^x` with non-integer `x` use the principal real branch
//! `exp(x ln q)` and therefore need `q` in `(0, 1)`. Negative or zero `q`
//! (still with `|q| < 1`) is accepted when every exponent is an integer.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::{Error, Result};

/// The deformation parameter `q`.
///
/// Valid values are `q = 1` (the classical branch) or a finite real with
/// `|q| < 1` (the series regime).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
#[serde(transparent)]
pub struct QParam(f64);

impl QParam {
    pub const ONE: QParam = QParam(1.0);

    pub fn new(q: f64) -> Result<Self> {
        if q == 1.0 || (q.is_finite() && q.abs() < 1.0) {
            Ok(QParam(q))
        } else {
            Err(Error::domain(format!(
                "q = {q} must satisfy |q| < 1 or q = 1"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }

    /// True when `q^x` is defined for every real `x`.
    #[inline]
    pub fn admits_real_exponents(self) -> bool {
        self.is_classical() || self.0 > 0.0
    }

    /// `q^x`, using `powi` for integral exponents and `exp(x ln q)` otherwise.
    pub fn pow(self, x: f64) -> Result<f64> {
        if self.is_classical() {
            return Ok(1.0);
        }
        if let Some(n) = as_small_int(x) {
            if self.0 == 0.0 && n < 0 {
                return Err(Error::domain("0 raised to a negative power"));
            }
            return Ok(self.0.powi(n));
        }
        if self.0 > 0.0 {
            Ok((x * self.0.ln()).exp())
        } else {
            Err(Error::domain(format!(
                "q^x with non-integer x = {x} needs q in (0, 1), got q = {}",
                self.0
            )))
        }
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        QParam::new(q)
    }
}

impl std::fmt::Display for QParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn as_small_int(x: f64) -> Option<i32> {
    if x.fract() == 0.0 && x.abs() <= f64::from(i32::MAX) {
        Some(x as i32)
    } else {
        None
    }
}

/// The q-integer `[x:q]`.
pub fn q_integer(x: f64, q: QParam) -> Result<f64> {
    if q.is_classical() {
        return Ok(x);
    }
    let qv = q.value();
    if qv > 0.0 {
        // expm1 keeps full relative accuracy when q is close to 1.
        return Ok(-(x * qv.ln()).exp_m1() / (1.0 - qv));
    }
    match as_small_int(x) {
        Some(n) => {
            if qv == 0.0 && n < 0 {
                return Err(Error::domain("[x:0] with negative x"));
            }
            Ok((1.0 - qv.powi(n)) / (1.0 - qv))
        }
        None => Err(Error::domain(format!(
            "[x:q] with non-integer x = {x} needs q in (0, 1], got q = {qv}"
        ))),
    }
}

/// `[n:q]` for an integer `n` and complex `q` with `|q| < 1` or `q = 1`.
pub fn q_integer_complex(n: i32, q: Complex64) -> Result<Complex64> {
    if q == Complex64::one() {
        return Ok(Complex64::new(f64::from(n), 0.0));
    }
    if !(q.norm() < 1.0) {
        return Err(Error::domain(format!("|q| = {} must be < 1", q.norm())));
    }
    if q.norm() == 0.0 && n < 0 {
        return Err(Error::domain("[n:0] with negative n"));
    }
    Ok((Complex64::one() - q.powi(n)) / (Complex64::one() - q))
}

/// Splits `[u + v]` as `([u], q^u [v])`; the two parts sum to `[u + v]`.
pub fn q_addition_split(u: f64, v: f64, q: QParam) -> Result<(f64, f64)> {
    Ok((q_integer(u, q)?, q.pow(u)? * q_integer(v, q)?))
}

/// Two candidate right-hand sides for `[-u]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegationReadings {
    /// `-q^(-u) [u]`, the value obtained by direct algebra.
    pub exact: f64,
    /// `-q^u [u]`, the same with the exponent sign flipped; not equal to `[-u]`.
    pub sign_flipped: f64,
}

pub fn q_negation(u: f64, q: QParam) -> Result<NegationReadings> {
    let qu = q_integer(u, q)?;
    Ok(NegationReadings {
        exact: -q.pow(-u)? * qu,
        sign_flipped: -q.pow(u)? * qu,
    })
}

/// Exact binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` computed exactly and rounded once to `f64`.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul(u128::from(n - i)) {
            // Each prefix product divides exactly, so acc stays integral.
            Some(p) => acc = p / u128::from(i + 1),
            None => return binomial(n, k).to_f64().unwrap_or(f64::INFINITY),
        }
    }
    acc as f64
}

/// The Gaussian binomial `[n r]_q = [n][n-1]...[n-r+1] / [r]!`.
///
/// At `q = 1` this is the ordinary binomial coefficient, computed exactly.
pub fn gauss_binomial(n: i64, r: i64, q: QParam) -> Result<f64> {
    if n < 0 || r < 0 || r > n {
        return Err(Error::index(format!(
            "Gaussian binomial needs 0 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    if q.is_classical() {
        return Ok(binomial_f64(n as u64, r as u64));
    }
    let mut acc = 1.0;
    for i in 1..=r {
        acc *= q_integer((n - r + i) as f64, q)? / q_integer(i as f64, q)?;
    }
    Ok(acc)
}

/// The generalized binomial `C(z + l - 1, l) = z (z+1) ... (z+l-1) / l!`.
pub fn gen_binomial(z: Complex64, l: u32) -> Complex64 {
    (0..l).fold(Complex64::one(), |acc, i| {
        acc * (z + f64::from(i)) / f64::from(l - i)
    })
}

/// The values `gen_binomial(z, l)` for `l = 0, 1, 2, ...`, generated by the
/// ratio `C(z+l, l+1) / C(z+l-1, l) = (z + l) / (l + 1)`.
pub fn gen_binomial_seq(z: Complex64) -> impl Iterator<Item = Complex64> {
    let mut cur = Complex64::one();
    let mut l = 0u32;
    std::iter::from_fn(move || {
        let out = cur;
        cur = cur * (z + f64::from(l)) / f64::from(l + 1);
        l += 1;
        Some(out)
    })
}

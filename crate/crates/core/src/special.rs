//! Second-kind Stirling numbers, higher-order Bernoulli polynomials and
//! Hermite polynomials.
//!
//! Each family has a recurrence-based implementation used by the rest of the
//! crate, plus [`series_coefficient`], which expands the defining generating
//! function exactly and serves as an independent oracle:
//!
//! | family | generating function |
//! |--------|---------------------|
//! | `S(n, k)` | `(-1)^k / k! (1 - e^t)^k` |
//! | `B_n^(v)(z)` | `e^(tz) (t / (e^t - 1))^v` |
//! | `H_n(z)` | `e^(2zt - t^2)` |
//!
//! Coefficients are computed exactly over the rationals. Floats appear only
//! when a polynomial is evaluated at a floating argument.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::qnum::binomial;
use crate::series::TruncSeries;
use crate::{Error, Result};

/// Truncation policy for the infinite sums.
///
/// A sum is accepted when the magnitude of its last retained term is at most
/// `tail_tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SeriesTruncation {
    pub terms: usize,
    pub tail_tolerance: f64,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation {
            terms: 64,
            tail_tolerance: 1e-14,
        }
    }
}

impl SeriesTruncation {
    pub fn new(terms: usize, tail_tolerance: f64) -> Result<Self> {
        if terms == 0 {
            return Err(Error::domain("series truncation needs at least one term"));
        }
        if !(tail_tolerance >= 0.0) {
            return Err(Error::domain(format!(
                "tail tolerance must be nonnegative, got {tail_tolerance}"
            )));
        }
        Ok(SeriesTruncation {
            terms,
            tail_tolerance,
        })
    }

    pub fn with_terms(terms: usize) -> Result<Self> {
        Self::new(terms, Self::default().tail_tolerance)
    }

    pub(crate) fn check_tail(&self, series: &'static str, last_term: f64) -> Result<()> {
        if last_term.is_finite() && last_term <= self.tail_tolerance {
            Ok(())
        } else {
            Err(Error::TruncationNotConverged {
                series,
                terms: self.terms,
                last_term,
                tolerance: self.tail_tolerance,
            })
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `S(n, k)`: the number of partitions of an `n`-set into `k` nonempty blocks.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_column(k, n as usize + 1)
        .pop()
        .unwrap_or_default()
}

/// `[S(0, k), S(1, k), ..., S(len - 1, k)]` from
/// `S(m, j) = j S(m-1, j) + S(m-1, j-1)`, `S(0, 0) = 1`.
pub fn stirling2_column(k: u32, len: usize) -> Vec<BigInt> {
    let k = k as usize;
    // row[j] holds S(m, j) for the current m.
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    let mut out = Vec::with_capacity(len);
    for m in 0..len {
        if m > 0 {
            for j in (1..=k).rev() {
                let prev = std::mem::take(&mut row[j]);
                row[j] = prev * j + &row[j - 1];
            }
            row[0] = BigInt::zero();
        }
        out.push(row[k].clone());
    }
    out
}

/// `S(m, k) / m!` for `m < len`, each rounded once from its exact value.
/// Entries past the point where the ratio underflows are zero. Columns are
/// cached per `(k, len)`.
pub fn stirling2_over_factorial(k: u32, len: usize) -> Vec<f64> {
    type Cache = Mutex<HashMap<(u32, usize), Arc<Vec<f64>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(k, len))
    {
        return v.as_ref().clone();
    }

    let k_us = k as usize;
    let mut row = vec![BigInt::zero(); k_us + 1];
    row[0] = BigInt::one();
    let mut fact = BigInt::one();
    let mut out = vec![0.0; len];
    for (m, slot) in out.iter_mut().enumerate() {
        if m > 0 {
            for j in (1..=k_us).rev() {
                let prev = std::mem::take(&mut row[j]);
                row[j] = prev * j + &row[j - 1];
            }
            row[0] = BigInt::zero();
            fact *= m;
        }
        *slot = BigRational::new_raw(row[k_us].clone(), fact.clone())
            .to_f64()
            .unwrap_or(0.0);
        // Once the ratio underflows past m = k it stays below the smallest float.
        if m > k_us && *slot == 0.0 {
            break;
        }
    }
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((k, len), Arc::new(out.clone()));
    out
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `sum_{j=0..m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m as u64 + 1, j as u64).into()) * bj;
        }
        b.push(-acc / rat(m as i64 + 1));
    }
    b
}

/// Coefficients (by ascending power of `z`) of the higher-order Bernoulli
/// polynomial `B_n^(v)(z)`.
///
/// The numbers `B_j^(v) = B_j^(v)(0)` come from the `v`-fold binomial
/// convolution of the ordinary Bernoulli numbers; the polynomial is
/// `sum_j C(n, j) B_j^(v) z^(n-j)`.
pub fn bernoulli_higher_poly(n: u32, v: u32) -> Vec<BigRational> {
    let n = n as usize;
    let b = bernoulli_numbers(n);
    let mut numbers = vec![BigRational::zero(); n + 1];
    numbers[0] = BigRational::one();
    for _ in 0..v {
        let mut next = vec![BigRational::zero(); n + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            for j in 0..=m {
                let c = BigRational::from_integer(binomial(m as u64, j as u64).into());
                *slot += c * &numbers[j] * &b[m - j];
            }
        }
        numbers = next;
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (j, bj) in numbers.iter().enumerate() {
        let c = BigRational::from_integer(binomial(n as u64, j as u64).into());
        coeffs[n - j] = c * bj;
    }
    coeffs
}

/// Horner evaluation of a rational polynomial at an exact point.
pub fn eval_poly_exact(coeffs: &[BigRational], z: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * z + c)
}

/// Horner evaluation of a rational polynomial at a float.
pub fn eval_poly_f64(coeffs: &[BigRational], z: f64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
}

/// `B_n^(v)(z)` at a float.
pub fn bernoulli_higher(n: u32, v: u32, z: f64) -> f64 {
    eval_poly_f64(&bernoulli_higher_poly(n, v), z)
}

pub fn bernoulli_higher_exact(n: u32, v: u32, z: &BigRational) -> BigRational {
    eval_poly_exact(&bernoulli_higher_poly(n, v), z)
}

/// `H_n(z)` from `H_{n+1} = 2z H_n - 2n H_{n-1}`.
pub fn hermite(n: u32, z: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * z);
    if n == 0 {
        return prev;
    }
    for i in 1..n {
        let next = 2.0 * z * cur - 2.0 * f64::from(i) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Integer coefficients of `H_n`, ascending powers, same recurrence.
pub fn hermite_poly(n: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(2)];
    for i in 1..n as usize {
        let mut next = vec![BigInt::zero(); i + 2];
        for (p, c) in cur.iter().enumerate() {
            next[p + 1] += c * 2;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= c * (2 * i);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// One of the three classical generating functions, with fixed parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GenFunSpec {
    /// `(-1)^k / k! (1 - e^t)^k`.
    Stirling2 { k: u32 },
    /// `e^(tz) (t / (e^t - 1))^v`.
    HigherBernoulli { v: u32, z: BigRational },
    /// `e^(2zt - t^2)`.
    Hermite { z: BigRational },
}

impl FromStr for GenFunSpec {
    type Err = Error;

    /// Parses `stirling2:k=2`, `bernoulli:v=1,z=0` or `hermite:z=1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedDescriptor(s.to_string());
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let mut k = None;
        let mut v = None;
        let mut z = None;
        for kv in args.split(',').filter(|a| !a.is_empty()) {
            let (key, val) = kv.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "k" => k = Some(val.trim().parse::<u32>().map_err(|_| bad())?),
                "v" => v = Some(val.trim().parse::<u32>().map_err(|_| bad())?),
                "z" => z = Some(val.trim().parse::<BigRational>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        match (name.trim(), k, v, z) {
            ("stirling2", Some(k), None, None) => Ok(GenFunSpec::Stirling2 { k }),
            ("bernoulli", None, Some(v), Some(z)) => Ok(GenFunSpec::HigherBernoulli { v, z }),
            ("hermite", None, None, Some(z)) => Ok(GenFunSpec::Hermite { z }),
            _ => Err(bad()),
        }
    }
}

impl GenFunSpec {
    /// The generating function expanded through `t^(len-1)`.
    pub fn expand(&self, len: usize) -> TruncSeries {
        match self {
            GenFunSpec::Stirling2 { k } => {
                // 1 - e^t = -(t + t^2/2! + ...)
                let one_minus_exp =
                    TruncSeries::exp_linear(&BigRational::one(), len).scale(&rat(-1));
                let mut c = one_minus_exp.coeffs().to_vec();
                if let Some(c0) = c.first_mut() {
                    *c0 = BigRational::zero();
                }
                let base = TruncSeries::new(c, len);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let kf = BigRational::from_integer(factorial(u64::from(*k)).into());
                base.pow(*k).scale(&(rat(sign) / kf))
            }
            GenFunSpec::HigherBernoulli { v, z } => {
                // (e^t - 1) / t = 1 + t/2! + t^2/3! + ...
                let e = TruncSeries::exp_linear(&BigRational::one(), len + 1);
                let shifted = TruncSeries::new(e.coeffs()[1..].to_vec(), len);
                let kernel = shifted.reciprocal().pow(*v);
                &TruncSeries::exp_linear(z, len) * &kernel
            }
            GenFunSpec::Hermite { z } => {
                let mut c = vec![BigRational::zero(); len.max(3)];
                c[1] = z * rat(2);
                c[2] = rat(-1);
                c.truncate(len);
                TruncSeries::new(c, len).exp()
            }
        }
    }
}

/// `n! [t^n]` of the generating function, exactly.
pub fn series_coefficient(spec: &GenFunSpec, n: u32) -> BigRational {
    let n = n as usize;
    let coeff = spec.expand(n + 1).coeff(n);
    coeff * BigRational::from_integer(factorial(n as u64).into())
}

//! Classical Bernstein basis polynomials and the Bernstein operator.
//!
//! `B_{j,n}(x) = C(n, j) x^j (1 - x)^(n - j)`, with `B_{j,n} = 0` for `j < 0`
//! or `j > n`. Binomial coefficients are exact integers rounded once.

use crate::qnum::binomial_f64;
use crate::special::stirling2;
use crate::{Error, Result};
use num_traits::ToPrimitive;

/// A real function on `[0, 1]` sampled by the approximation operators.
///
/// Implemented for every `Fn(f64) -> f64`. A non-finite sample makes the
/// operator fail with [`Error::NonFiniteSample`].
pub trait FunctionSample {
    fn eval(&self, t: f64) -> f64;
}

impl<F: Fn(f64) -> f64> FunctionSample for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

pub(crate) fn sample<F: FunctionSample + ?Sized>(f: &F, t: f64) -> Result<f64> {
    let v = f.eval(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteSample { t })
    }
}

pub(crate) fn check_unit_interval(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(format!("x = {x} must lie in [0, 1]")))
    }
}

pub(crate) fn check_degree(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::index("operator degree n must be at least 1"))
    } else {
        Ok(())
    }
}

/// `B_{j,n}(x)` from the closed form.
pub fn basis(j: i64, n: u32, x: f64) -> f64 {
    if j < 0 || j > i64::from(n) {
        return 0.0;
    }
    let j = j as u32;
    binomial_f64(u64::from(n), u64::from(j)) * x.powi(j as i32) * (1.0 - x).powi((n - j) as i32)
}

/// `B_{j,n}(x)` from `B_{k,n} = (1 - x) B_{k,n-1} + x B_{k-1,n-1}`,
/// tabulated row by row from `B_{0,0} = 1`.
pub fn basis_recursive(j: i64, n: u32, x: f64) -> f64 {
    if j < 0 || j > i64::from(n) {
        return 0.0;
    }
    let mut row = vec![1.0];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        for k in 0..=row.len() {
            let keep = row.get(k).copied().unwrap_or(0.0);
            let shift = if k > 0 { row[k - 1] } else { 0.0 };
            next.push((1.0 - x) * keep + x * shift);
        }
        row = next;
    }
    row[j as usize]
}

/// `d/dx B_{k,n}(x) = n (B_{k-1,n-1}(x) - B_{k,n-1}(x))`.
pub fn basis_derivative(k: i64, n: u32, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    f64::from(n) * (basis(k - 1, n - 1, x) - basis(k, n - 1, x))
}

/// The Bernstein operator `B_n f(x) = sum_j f(j/n) B_{j,n}(x)`.
pub fn operator<F: FunctionSample + ?Sized>(f: &F, n: u32, x: f64) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval(x)?;
    let mut acc = 0.0;
    for j in 0..=n {
        acc += sample(f, f64::from(j) / f64::from(n))? * basis(i64::from(j), n, x);
    }
    Ok(acc)
}

/// `(n + 1) B_{j,n}(x)`, the density of `Beta(j + 1, n + 1 - j)`.
pub fn beta_density(j: i64, n: u32, x: f64) -> Result<f64> {
    if j < 0 || j > i64::from(n) {
        return Err(Error::index(format!(
            "beta density needs 0 <= j <= n, got j = {j}, n = {n}"
        )));
    }
    Ok(f64::from(n + 1) * basis(j, n, x))
}

/// `P(Y = k)` for `Y ~ Binomial(n, x)`.
pub fn binomial_pmf(n: u32, k: u32, x: f64) -> f64 {
    if k > n {
        return 0.0;
    }
    let c = binomial_f64(u64::from(n), u64::from(k));
    c * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32)
}

/// `E[Y^m]` for `Y ~ Binomial(n, x)`, via
/// `E[Y^m] = sum_j S(m, j) n (n-1) ... (n-j+1) x^j`.
pub fn binomial_moment(n: u32, x: f64, m: u32) -> f64 {
    let mut acc = 0.0;
    let mut falling = 1.0;
    for j in 0..=m.min(n) {
        if j > 0 {
            falling *= f64::from(n - j + 1);
        }
        let s = stirling2(m, j).to_f64().unwrap_or(f64::NAN);
        acc += s * falling * x.powi(j as i32);
    }
    acc
}

/// `E[f(Y / n)]` for `Y ~ Binomial(n, x)`, summed over the pmf.
pub fn operator_as_expectation<F: FunctionSample + ?Sized>(f: &F, n: u32, x: f64) -> Result<f64> {
    check_degree(n)?;
    check_unit_interval(x)?;
    (0..=n).try_fold(0.0, |acc, k| {
        Ok(acc + binomial_pmf(n, k, x) * sample(f, f64::from(k) / f64::from(n))?)
    })
}

/// Composite Simpson rule on `[a, b]` with an even number of panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels + panels % 2;
    let h = (b - a) / panels as f64;
    let inner: f64 = (1..panels)
        .map(|i| {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(a + i as f64 * h)
        })
        .sum();
    (f(a) + inner + f(b)) * h / 3.0
}

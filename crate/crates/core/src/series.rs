//! Truncated formal power series with exact rational coefficients.
//!
//! Used as an oracle: the generating functions of Stirling, Bernoulli and
//! Hermite polynomials are expanded term by term and their coefficients
//! compared against the recurrence-based implementations in [`crate::special`].

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A power series `c_0 + c_1 t + ... + c_{len-1} t^{len-1} + O(t^len)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<BigRational>, len: usize) -> Self {
        coeffs.resize(len, BigRational::zero());
        TruncSeries { coeffs }
    }

    pub fn one(len: usize) -> Self {
        Self::new(vec![BigRational::one()], len)
    }

    /// `exp(a t) = sum a^m t^m / m!`.
    pub fn exp_linear(a: &BigRational, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut term = BigRational::one();
        for m in 0..len {
            coeffs.push(term.clone());
            term = term * a / rat(m as i64 + 1);
        }
        TruncSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(mut self, c: &BigRational) -> Self {
        for x in &mut self.coeffs {
            *x = &*x * c;
        }
        self
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.len()), |acc, _| &acc * self)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Self {
        let n = self.len();
        let c0 = &self.coeffs[0];
        assert!(
            !c0.is_zero(),
            "reciprocal of a series with zero constant term"
        );
        let mut inv = vec![BigRational::zero(); n];
        inv[0] = c0.recip();
        for i in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=i {
                acc += &self.coeffs[j] * &inv[i - j];
            }
            inv[i] = -acc / c0;
        }
        TruncSeries { coeffs: inv }
    }

    /// `exp(self)`; the constant term must be zero.
    ///
    /// Uses `E' = A' E`, i.e. `n e_n = sum_{j=1..n} j a_j e_{n-j}`.
    pub fn exp(&self) -> Self {
        let n = self.len();
        assert!(
            self.coeffs[0].is_zero(),
            "exp of a series with nonzero constant term"
        );
        let mut e = vec![BigRational::zero(); n];
        if n == 0 {
            return TruncSeries { coeffs: e };
        }
        e[0] = BigRational::one();
        for i in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=i {
                acc += &self.coeffs[j] * &e[i - j] * rat(j as i64);
            }
            e[i] = acc / rat(i as i64);
        }
        TruncSeries { coeffs: e }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.len().min(rhs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }
}

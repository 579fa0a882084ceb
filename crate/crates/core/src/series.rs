//! Truncated power series in one variable with exact coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::number::int;
use crate::poly::Coeff;

/// `Σ_{j ≤ order} c_j s^j`; coefficients past `order` are discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The series `s`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &T {
        &self.coeffs[j]
    }

    pub fn add(&self, o: &Self) -> Self {
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.scale_by(r)).collect() }
    }

    pub fn mul_coeff(&self, c: &T) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// Formal derivative, same truncation order (top coefficient becomes 0).
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|j| match self.coeffs.get(j + 1) {
                Some(c) => c.scale_by(&int(j as i64 + 1)),
                None => T::zero(),
            })
            .collect();
        Series { coeffs }
    }

    /// Formal antiderivative vanishing at 0.
    pub fn integral(&self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![T::zero(); n];
        for j in 1..n {
            coeffs[j] = self.coeffs[j - 1].scale_by(&BigRational::new(BigInt::one(), BigInt::from(j)));
        }
        Series { coeffs }
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs a zero constant term");
        let mut term = Self::one(self.order());
        let mut acc = Self::one(self.order());
        for m in 1..=self.order() {
            term = term.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
            acc = acc.add(&term);
        }
        acc
    }

    /// `ln(1 + self)` for a series with zero constant term.
    pub fn log1p(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "log1p needs a zero constant term");
        let mut power = Self::one(self.order());
        let mut acc = Self::zero(self.order());
        for m in 1..=self.order() {
            power = power.mul(self);
            let sign = if m % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(m))));
        }
        acc
    }
}

impl Series<BigRational> {
    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Self {
        let c0 = self.coeffs[0].clone();
        assert!(!c0.is_zero(), "reciprocal needs a unit constant term");
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        out[0] = c0.recip();
        for j in 1..n {
            let mut acc = BigRational::zero();
            for i in 1..=j {
                acc += &self.coeffs[i] * &out[j - i];
            }
            out[j] = -acc / &c0;
        }
        Series { coeffs: out }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.reciprocal())
    }

    /// `sin(a s)` and `cos(a s)` truncated at `order`.
    pub fn sin_cos(a: &BigRational, order: usize) -> (Self, Self) {
        let mut sin = Self::zero(order);
        let mut cos = Self::zero(order);
        let mut term = BigRational::one(); // a^j / j!
        for j in 0..=order {
            if j > 0 {
                term = term * a / int(j as i64);
            }
            match j % 4 {
                0 => cos.coeffs[j] = term.clone(),
                1 => sin.coeffs[j] = term.clone(),
                2 => cos.coeffs[j] = -term.clone(),
                _ => sin.coeffs[j] = -term.clone(),
            }
        }
        (sin, cos)
    }

    /// Lift rational coefficients into another coefficient ring.
    pub fn lift<U: Coeff>(&self, f: impl Fn(&BigRational) -> U) -> Series<U> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

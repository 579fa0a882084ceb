//! Polynomials in the interval measure `μ` with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::number::{rational_to_f64, ComplexRational};

/// Coefficient ring for [`MuPoly`]: a commutative ring that can be scaled by
/// exact rationals.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn scale_by(&self, r: &BigRational) -> Self;
}

impl Coeff for BigRational {
    fn scale_by(&self, r: &BigRational) -> Self {
        self * r
    }
}

impl Coeff for ComplexRational {
    fn scale_by(&self, r: &BigRational) -> Self {
        self.scale(r)
    }
}

/// Dense polynomial `Σ c_i μ^i`, coefficients in ascending degree.
///
/// Canonical: no trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MuPoly<T> {
    coeffs: Vec<T>,
}

/// Real-rational polynomial in `μ`.
pub type MuPolynomial = MuPoly<BigRational>;
/// Complex-rational polynomial in `μ`.
pub type ComplexMuPolynomial = MuPoly<ComplexRational>;

impl<T: Coeff> MuPoly<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        MuPoly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c μ^d`.
    pub fn monomial(c: T, d: usize) -> Self {
        let mut v = vec![T::zero(); d + 1];
        v[d] = c;
        Self::from_coeffs(v)
    }

    /// The polynomial `μ`.
    pub fn mu() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale_by(r)).collect())
    }

    pub fn mul_coeff(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> MuPoly<U> {
        MuPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Exact evaluation at a coefficient-ring value.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl Coeff for MuPoly<BigRational> {
    fn scale_by(&self, r: &BigRational) -> Self {
        self.scale(r)
    }
}

impl MuPoly<BigRational> {
    pub fn to_complex(&self) -> ComplexMuPolynomial {
        self.map(|c| ComplexRational::real(c.clone()))
    }

    pub fn eval_f64(&self, mu: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * mu + rational_to_f64(c))
    }
}

impl MuPoly<ComplexRational> {
    /// The real part, if every imaginary part vanishes.
    pub fn to_real(&self) -> Option<MuPolynomial> {
        self.coeffs
            .iter()
            .all(ComplexRational::is_real)
            .then(|| MuPoly::from_coeffs(self.coeffs.iter().map(|c| c.re.clone()).collect()))
    }

    pub fn conj(&self) -> Self {
        self.map(ComplexRational::conj)
    }

    pub fn eval_c64(&self, mu: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * mu + c.to_c64())
    }
}

impl<T: Coeff> Zero for MuPoly<T> {
    fn zero() -> Self {
        MuPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for MuPoly<T> {
    fn one() -> Self {
        MuPoly { coeffs: vec![T::one()] }
    }
}

impl<T: Coeff> Add for MuPoly<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for MuPoly<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Coeff> Neg for MuPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        MuPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Coeff> Mul for MuPoly<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<T: Coeff> fmt::Display for MuPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}μ")?,
                _ => write!(f, "{c}μ^{i}")?,
            }
        }
        Ok(())
    }
}

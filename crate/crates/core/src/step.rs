//! Finitely supported complex step functions with rational breakpoints.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{rational_to_f64, ComplexRational};

/// The value `value` on the half-open interval `[start, end)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub start: BigRational,
    pub end: BigRational,
    pub value: ComplexRational,
}

impl Piece {
    pub fn new(start: BigRational, end: BigRational, value: ComplexRational) -> Self {
        Piece { start, end, value }
    }

    pub fn length(&self) -> BigRational {
        &self.end - &self.start
    }
}

/// A test function `Σ c_i χ_[a_i, b_i)`.
///
/// Pieces are sorted, pairwise disjoint, of positive length and carry nonzero
/// values. Zero is never an interior point of a piece (test functions vanish
/// at the origin). Adjacent pieces with equal values are merged unless they
/// meet at the origin, so equal functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StepFunction {
    pieces: Vec<Piece>,
}

impl StepFunction {
    pub fn zero() -> Self {
        StepFunction { pieces: Vec::new() }
    }

    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        for p in &pieces {
            if p.start >= p.end {
                return Err(Error::InvalidStepFunction(format!(
                    "interval [{}, {}) has non-positive length",
                    p.start, p.end
                )));
            }
            if p.start.is_negative() && p.end.is_positive() {
                return Err(Error::InvalidStepFunction(format!(
                    "interval [{}, {}) contains the origin",
                    p.start, p.end
                )));
            }
        }
        pieces.sort_by(|a, b| a.start.cmp(&b.start));
        for w in pieces.windows(2) {
            if w[0].end > w[1].start {
                return Err(Error::InvalidStepFunction(format!(
                    "intervals [{}, {}) and [{}, {}) overlap",
                    w[0].start, w[0].end, w[1].start, w[1].end
                )));
            }
        }
        Ok(Self::from_sorted_unchecked(pieces))
    }

    /// `c χ_[a, b)`.
    pub fn constant_on(a: BigRational, b: BigRational, c: ComplexRational) -> Result<Self> {
        Self::new(vec![Piece::new(a, b, c)])
    }

    pub fn indicator(a: BigRational, b: BigRational) -> Result<Self> {
        Self::constant_on(a, b, ComplexRational::from_int(1))
    }

    fn from_sorted_unchecked(pieces: Vec<Piece>) -> Self {
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces.into_iter().filter(|p| !p.value.is_zero()) {
            if let Some(last) = out.last_mut() {
                if last.end == p.start && last.value == p.value && !p.start.is_zero() {
                    last.end = p.end;
                    continue;
                }
            }
            out.push(p);
        }
        StepFunction { pieces: out }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Value at `t`.
    pub fn eval(&self, t: &BigRational) -> ComplexRational {
        self.pieces
            .iter()
            .find(|p| &p.start <= t && t < &p.end)
            .map(|p| p.value.clone())
            .unwrap_or_else(ComplexRational::zero)
    }

    /// Sorted union of all breakpoints of the given functions.
    pub fn breakpoints<'a>(fs: impl IntoIterator<Item = &'a StepFunction>) -> Vec<BigRational> {
        let mut pts: Vec<BigRational> = fs
            .into_iter()
            .flat_map(|f| f.pieces.iter().flat_map(|p| [p.start.clone(), p.end.clone()]))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Cells of the common refinement of `fs` on which at least one function
    /// is nonzero, with each function's value there.
    pub fn refine<'a>(fs: &[&'a StepFunction]) -> Vec<(BigRational, BigRational, Vec<ComplexRational>)> {
        let pts = Self::breakpoints(fs.iter().copied());
        let mut cells = Vec::new();
        for w in pts.windows(2) {
            let values: Vec<ComplexRational> = fs.iter().map(|f| f.eval(&w[0])).collect();
            if values.iter().any(|v| !v.is_zero()) {
                cells.push((w[0].clone(), w[1].clone(), values));
            }
        }
        cells
    }

    fn combine(&self, other: &Self, op: impl Fn(&ComplexRational, &ComplexRational) -> ComplexRational) -> Self {
        let pieces = Self::refine(&[self, other])
            .into_iter()
            .map(|(a, b, v)| Piece::new(a, b, op(&v[0], &v[1])))
            .collect();
        Self::from_sorted_unchecked(pieces)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.combine(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::from_sorted_unchecked(
            self.pieces
                .iter()
                .map(|p| Piece::new(p.start.clone(), p.end.clone(), &p.value * c))
                .collect(),
        )
    }

    pub fn conj(&self) -> Self {
        StepFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(p.start.clone(), p.end.clone(), p.value.conj()))
                .collect(),
        }
    }

    /// `∫ f(t) dt`, exact.
    pub fn integral(&self) -> ComplexRational {
        self.pieces
            .iter()
            .fold(ComplexRational::zero(), |acc, p| acc + p.value.scale(&p.length()))
    }

    /// Lebesgue measure of the support.
    pub fn support_measure(&self) -> BigRational {
        self.pieces.iter().map(Piece::length).sum()
    }

    /// `sup |f|^2`, exact.
    pub fn sup_norm_sqr(&self) -> BigRational {
        self.pieces
            .iter()
            .map(|p| p.value.norm_sqr())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Pieces as `(length, value)` floats.
    pub fn to_f64_pieces(&self) -> Vec<(f64, Complex64)> {
        self.pieces
            .iter()
            .map(|p| (rational_to_f64(&p.length()), p.value.to_c64()))
            .collect()
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·χ[{},{})", p.value, p.start, p.end)?;
        }
        Ok(())
    }
}

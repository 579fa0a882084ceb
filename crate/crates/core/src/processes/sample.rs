//! Inverse-CDF sampling of `X_t` from a tabulated distribution function.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::density::SecantDensity;
use crate::error::{Error, Result};

/// Tail mass left outside the table on each side is below this.
pub const TABLE_TAIL: f64 = 1e-12;

const INITIAL_CELLS: usize = 64;
const MIN_WIDTH: f64 = 1e-6;
/// Bound on `|p(b) - p(a)| (b - a)`, which controls the error of linear
/// interpolation of the CDF inside a cell.
const CELL_TOL: f64 = 1e-7;

/// Piecewise-linear CDF of `X_t` on `[-X, X]`, with `X` chosen so the
/// discarded tails carry less than [`TABLE_TAIL`].
#[derive(Clone, Debug)]
pub struct TabulatedCdf {
    xs: Vec<f64>,
    cdf: Vec<f64>,
}

impl TabulatedCdf {
    pub fn new(t: f64) -> Result<Self> {
        let d = SecantDensity::new(t)?;
        // the tail beyond X has mass about p(X)·2/π
        let x_max = d.tail_cutoff(TABLE_TAIL)?;
        let h = x_max / INITIAL_CELLS as f64;
        let mut right = vec![0.0];
        let mut mass = vec![0.0];
        for i in 0..INITIAL_CELLS {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            refine(&d, a, b, d.pdf(a)?, d.pdf(b)?, &mut right, &mut mass)?;
        }
        let total: f64 = *mass.last().expect("nonempty");
        let mut xs = Vec::with_capacity(2 * right.len() - 1);
        let mut cdf = Vec::with_capacity(2 * right.len() - 1);
        for i in (1..right.len()).rev() {
            xs.push(-right[i]);
            cdf.push(0.5 - 0.5 * mass[i] / total);
        }
        for i in 0..right.len() {
            xs.push(right[i]);
            cdf.push(0.5 + 0.5 * mass[i] / total);
        }
        Ok(TabulatedCdf { xs, cdf })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return 0.0;
        }
        if x >= self.xs[self.xs.len() - 1] {
            return 1.0;
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let w = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.cdf[i] + w * (self.cdf[i + 1] - self.cdf[i])
    }

    /// Inverse of [`Self::cdf`] on `[0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        let i = self.cdf.partition_point(|&v| v < u).clamp(1, self.cdf.len() - 1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let w = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.0 };
        self.xs[i - 1] + w * (self.xs[i] - self.xs[i - 1])
    }
}

/// Appends the right endpoints and cumulative masses of an adaptive
/// subdivision of `[a, b]`.
fn refine(
    d: &SecantDensity,
    a: f64,
    b: f64,
    pa: f64,
    pb: f64,
    right: &mut Vec<f64>,
    mass: &mut Vec<f64>,
) -> Result<()> {
    if (pb - pa).abs() * (b - a) > CELL_TOL && b - a > MIN_WIDTH {
        let m = 0.5 * (a + b);
        let pm = d.pdf(m)?;
        refine(d, a, m, pa, pm, right, mass)?;
        return refine(d, m, b, pm, pb, right, mass);
    }
    let cell = gauss_legendre_5(d, a, b)?;
    let last = *mass.last().expect("nonempty");
    right.push(b);
    mass.push(last + cell);
    Ok(())
}

/// Five-point Gauss–Legendre rule on `[a, b]`.
fn gauss_legendre_5(d: &SecantDensity, a: f64, b: f64) -> Result<f64> {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
        (0.906_179_845_938_664, 0.236_926_885_056_189_08),
    ];
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = 0.0;
    for (x, w) in NODES {
        acc += w * d.pdf(c + h * x)?;
    }
    Ok(h * acc)
}

/// `count` i.i.d. draws of `X_t` from a ChaCha8 stream seeded with `seed`.
pub fn sample_x(t: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("sample count must be ≥ 1".into()));
    }
    let table = TabulatedCdf::new(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| table.quantile(rng.random::<f64>())).collect())
}

/// `sup_x |F_emp(x) - F(x)|` for the given samples.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

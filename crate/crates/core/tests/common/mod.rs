//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rhpwn_core::number::{int, rat};
use rhpwn_core::step::{Piece, StepFunction};
use rhpwn_core::{AlgebraElement, AlgebraTag, ComplexRational, IntervalFn, Word, WordFactor};

pub fn small_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> BigRational {
    rat(rng.random_range(-max_num..=max_num), rng.random_range(1..=max_den))
}

pub fn small_complex(rng: &mut impl Rng) -> ComplexRational {
    ComplexRational::new(small_rational(rng, 5, 4), small_rational(rng, 5, 4))
}

pub fn nonzero_complex(rng: &mut impl Rng) -> ComplexRational {
    loop {
        let c = small_complex(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to three pieces on a grid of halves inside `[-3, 3]`, none straddling 0.
pub fn step_function<R: Rng>(rng: &mut R, mut value: impl FnMut(&mut R) -> ComplexRational) -> StepFunction {
    let count = rng.random_range(1..=3);
    let mut cuts: Vec<i64> = (0..2 * count).map(|_| rng.random_range(-6..=6)).collect();
    cuts.push(0);
    cuts.sort();
    cuts.dedup();
    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        if rng.random_bool(0.6) {
            pieces.push(Piece::new(rat(w[0], 2), rat(w[1], 2), value(rng)));
        }
    }
    if pieces.is_empty() {
        pieces.push(Piece::new(int(0), rat(1, 2), value(rng)));
    }
    StepFunction::new(pieces).expect("generated pieces are disjoint")
}

pub fn rational_step_function(rng: &mut impl Rng) -> StepFunction {
    step_function(rng, nonzero_complex)
}

/// Piece values with `|v|² < 2/(n³(n-1))` for `n ≥ 2`.
pub fn admissible_value(rng: &mut impl Rng, n: i64) -> ComplexRational {
    let bound = if n >= 2 { rat(2, n * n * n * (n - 1)) } else { int(4) };
    loop {
        let den = 100;
        let re = rat(rng.random_range(-60..=60), den);
        let im = rat(rng.random_range(-60..=60), den);
        let v = ComplexRational::new(re, im);
        if v.norm_sqr() < bound && !v.is_zero() {
            return v;
        }
    }
}

pub fn admissible_step_function(rng: &mut impl Rng, n: i64) -> StepFunction {
    step_function(rng, |r| admissible_value(r, n))
}

pub fn random_index(rng: &mut impl Rng, tag: AlgebraTag) -> (i64, i64) {
    match tag {
        AlgebraTag::Rhpwn => (rng.random_range(0..=6), rng.random_range(0..=6)),
        AlgebraTag::Winfty => (rng.random_range(2..=6), rng.random_range(-6..=6)),
    }
}

/// One to three generators with random coefficient functions.
pub fn algebra_element(rng: &mut impl Rng, tag: AlgebraTag) -> AlgebraElement {
    let mut x = AlgebraElement::zero(tag);
    for _ in 0..rng.random_range(1..=3) {
        let (n, k) = random_index(rng, tag);
        let g = AlgebraElement::generator(tag, n, k, rational_step_function(rng)).unwrap();
        x = x.add(&g).unwrap();
    }
    x
}

/// A word over `{B^n_0, B^0_n, B^{n-1}_{n-1}}` with scaled interval indicators.
pub fn truncatable_word(rng: &mut impl Rng, n: i64, max_len: usize) -> Word<IntervalFn> {
    let len = rng.random_range(0..=max_len);
    let alphabet = [(n, 0), (0, n), (n - 1, n - 1)];
    Word::new(
        (0..len)
            .map(|_| {
                let (x, y) = alphabet[rng.random_range(0..3)];
                let scale = if rng.random_bool(0.5) { ComplexRational::from_int(1) } else { nonzero_complex(rng) };
                WordFactor { n: x, k: y, f: IntervalFn::scaled(scale) }
            })
            .collect(),
    )
}

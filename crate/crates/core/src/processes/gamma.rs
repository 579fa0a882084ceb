//! Principal-branch complex log-Gamma on the right half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` for `Re z > 0`, continuous from the positive real axis.
///
/// Uses the Lanczos approximation (g = 7, 9 terms) on `z + 1`, then
/// `ln Γ(z) = ln Γ(z + 1) - ln z`.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::Domain(format!("log-Gamma needs Re z > 0, got {z}")));
    }
    if z.re < 1.0 {
        return Ok(lanczos_log_gamma_shifted(z) - z.ln());
    }
    Ok(lanczos_log_gamma_shifted(z - 1.0))
}

/// `ln Γ(w + 1)`.
fn lanczos_log_gamma_shifted(w: Complex64) -> Complex64 {
    let mut a = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (w + i as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (w + 0.5) * t.ln() - t + a.ln()
}

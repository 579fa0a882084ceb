//! The TRHPWN Fock spaces `F_n`: number-vector kernels, their generating
//! functions, exponential-vector inner products and the represented
//! creation, annihilation and number operators.

mod jet;

pub use jet::{
    apply_annihilator, apply_creator, apply_number, generic_rep_build, jet_inner_product, ExponentialVector,
    FockOperator, FockVector, JetVector, RepresentedOperator,
};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number::{int, rat, rational_to_f64, ComplexRational};
use crate::poly::MuPolynomial;
use crate::step::StepFunction;

/// `c_n = n³(n-1)/2`, the constant in `1 - c_n u`.
pub fn kernel_constant(n: i64) -> BigRational {
    rat(n * n * n * (n - 1), 2)
}

/// Exact bound on `|f|²` for exponential vectors of order `n ≥ 2`:
/// `2/(n³(n-1))`. `None` for `n = 1` (no bound).
pub fn admissibility_bound_sqr(n: i64) -> Option<BigRational> {
    (n >= 2).then(|| rat(2, n * n * n * (n - 1)))
}

fn check_order(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain(format!("Fock order must be ≥ 1, got {n}")));
    }
    Ok(())
}

/// Checks the strict sup-norm condition `|f| < (1/n)√(2/(n(n-1)))` piecewise.
pub fn check_admissible(n: i64, f: &StepFunction) -> Result<()> {
    check_order(n)?;
    let Some(bound) = admissibility_bound_sqr(n) else {
        return Ok(());
    };
    for p in f.pieces() {
        if p.value.norm_sqr() >= bound {
            return Err(Error::Domain(format!(
                "piece [{}, {}) with value {} violates |f|² < {} for order {}",
                p.start, p.end, p.value, bound, n
            )));
        }
    }
    Ok(())
}

/// `(π_{n,k}, h_{n,k})` with `π_{n,k} = k! n^k Π_{i<k}(μ + i n²(n-1)/2)` and
/// `h_{n,k} = π_{n,k}/k!`.
pub fn kernel_values(n: i64, k: usize) -> Result<(MuPolynomial, MuPolynomial)> {
    check_order(n)?;
    let half = rat(n * n * (n - 1), 2);
    let mut h = MuPolynomial::one();
    let mut fact = BigRational::one();
    for i in 0..k {
        let factor = MuPolynomial::from_coeffs(vec![&half * int(i as i64), int(1)]).scale(&int(n));
        h = h * factor;
        fact *= int(i as i64 + 1);
    }
    Ok((h.scale(&fact), h))
}

/// `G_n(u, μ)`: `e^{uμ}` for `n = 1`, else `(1 - c_n u)^{-2μ/(n²(n-1))}`
/// on the principal branch, `|c_n u| < 1`.
pub fn g_eval(n: i64, u: Complex64, mu: f64) -> Result<Complex64> {
    Ok((g_hat_eval(n, u)? * mu).exp())
}

/// `Ĝ_n(u)`: `u` for `n = 1`, else `-2/(n²(n-1)) ln(1 - c_n u)`.
pub fn g_hat_eval(n: i64, u: Complex64) -> Result<Complex64> {
    check_order(n)?;
    if n == 1 {
        return Ok(u);
    }
    let c = rational_to_f64(&kernel_constant(n));
    if (c * u).norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "|c_n u| = {} is outside the unit disc for n = {n}",
            (c * u).norm()
        )));
    }
    let a = 2.0 / (n * n * (n - 1)) as f64;
    Ok(-a * (Complex64::new(1.0, 0.0) - c * u).ln())
}

/// `k!` times the `k`-th Taylor coefficient of `G_n(·, μ)` at `0`, from the
/// binomial series `(1 - x)^{-s} = Σ (s)_k x^k / k!` with `s = 2μ/(n²(n-1))`.
pub fn g_taylor_coeff(n: i64, k: usize) -> Result<MuPolynomial> {
    check_order(n)?;
    if n == 1 {
        return Ok(MuPolynomial::monomial(int(1), k));
    }
    let a = rat(2, n * n * (n - 1));
    let c = kernel_constant(n);
    let mut out = MuPolynomial::one();
    for i in 0..k {
        out = out * MuPolynomial::from_coeffs(vec![int(i as i64), a.clone()]);
    }
    Ok(out.scale(&num_traits::pow(c, k)))
}

/// `⟨ψ_n(f), ψ_n(g)⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    /// For `n = 1` the exponent `∫ f̄ g`, exact.
    pub exact_exponent: Option<ComplexRational>,
}

/// Exponent `Z = ∫ ℓ_n(f̄ g)` of the kernel `e^Z`.
pub(crate) fn kernel_exponent(n: i64, f: &StepFunction, g: &StepFunction) -> Complex64 {
    if n == 1 {
        return f.conj().mul(g).integral().to_c64();
    }
    let c = rational_to_f64(&kernel_constant(n));
    let a = 2.0 / (n * n * (n - 1)) as f64;
    let one = Complex64::new(1.0, 0.0);
    StepFunction::refine(&[f, g])
        .into_iter()
        .map(|(s, e, v)| {
            let w = (v[0].conj() * v[1].clone()).to_c64();
            -a * rational_to_f64(&(e - s)) * (one - c * w).ln()
        })
        .sum()
}

/// `n = 1`: `e^{∫ f̄ g}`; `n ≥ 2`: `exp(-2/(n²(n-1)) ∫ ln(1 - c_n f̄ g))`.
pub fn exp_inner_product(n: i64, f: &StepFunction, g: &StepFunction) -> Result<KernelValue> {
    check_admissible(n, f)?;
    check_admissible(n, g)?;
    let exact_exponent = (n == 1).then(|| f.conj().mul(g).integral());
    Ok(KernelValue { value: kernel_exponent(n, f, g).exp(), exact_exponent })
}

/// Gram matrix of exponential vectors with its smallest eigenvalue.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub matrix: DMatrix<Complex64>,
    pub min_eigenvalue: f64,
    pub psd: bool,
}

/// Gram matrix `⟨ψ_n(f_i), ψ_n(f_j)⟩`; PSD iff the smallest eigenvalue is
/// at least `-tol`.
pub fn gram_psd_check(n: i64, fs: &[StepFunction], tol: f64) -> Result<GramReport> {
    for f in fs {
        check_admissible(n, f)?;
    }
    let m = fs.len();
    let mut matrix = DMatrix::from_element(m, m, Complex64::zero());
    for i in 0..m {
        for j in i..m {
            let v = exp_inner_product(n, &fs[i], &fs[j])?.value;
            matrix[(i, j)] = v;
            matrix[(j, i)] = v.conj();
        }
    }
    let min_eigenvalue = if m == 0 {
        0.0
    } else {
        SymmetricEigen::new(matrix.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    };
    if !min_eigenvalue.is_finite() {
        return Err(Error::Numerical("Gram eigenvalues are not finite".into()));
    }
    Ok(GramReport { matrix, min_eigenvalue, psd: min_eigenvalue >= -tol })
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rhpwn_core::fock::{
    apply_annihilator, apply_creator, apply_number, g_eval, g_hat_eval, g_taylor_coeff,
    gram_psd_check, kernel_constant, kernel_values, ExponentialVector, FockVector, JetVector,
};
use rhpwn_core::nogo::nogo_report;
use rhpwn_core::number::{int, rat, rational_to_f64};
use rhpwn_core::processes::{
    classical_check, density_moment, density_p, ks_statistic, mgf_eval, mgf_numeric_check, mgf_taylor,
    process_element, sample_x, scaled_mgf_numeric_check, splitting_series_check, TabulatedCdf,
};
use rhpwn_core::rewrite::{kernel_recursion, Monomial};
use rhpwn_core::{
    kernel_bruteforce, reduce_truncated, reduce_untruncated, vacuum_expectation, AlgebraElement, AlgebraTag,
    ComplexMuPolynomial, ComplexRational, IntervalFn, MuPolynomial, Word,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn poly(coeffs: &[i64]) -> MuPolynomial {
    MuPolynomial::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Relative difference, `0` when both sides vanish exactly.
fn c_rel_err(a: Complex64, b: Complex64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).norm() / a.norm().max(b.norm())
}

fn algebra_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for tag in [AlgebraTag::Rhpwn, AlgebraTag::Winfty] {
        for i in 0..500 {
            let a = common::algebra_element(&mut rng, tag);
            let b = common::algebra_element(&mut rng, tag);
            let c = common::algebra_element(&mut rng, tag);
            let ab = a.commutator(&b).unwrap();
            let ba = b.commutator(&a).unwrap();
            ensure!(ab.add(&ba).unwrap().is_zero(), "{tag:?} triple {i}: antisymmetry fails for a={a}, b={b}");
            let jacobi = a
                .commutator(&b.commutator(&c).unwrap())
                .unwrap()
                .add(&b.commutator(&c.commutator(&a).unwrap()).unwrap())
                .unwrap()
                .add(&c.commutator(&ab).unwrap())
                .unwrap();
            ensure!(jacobi.is_zero(), "{tag:?} triple {i}: Jacobi sum is {jacobi}");
            let lhs = ab.involution();
            let rhs = b.involution().commutator(&a.involution()).unwrap();
            ensure!(lhs == rhs, "{tag:?} triple {i}: [a,b]* = {lhs} but [b*,a*] = {rhs}");
            ensure!(a.involution().involution() == a, "{tag:?} triple {i}: involution is not an involution");
        }
    }
    Ok("500 triples per tag, exact".into())
}

fn nogo_reproduction() -> Outcome {
    for n in 3..=5i64 {
        let creators = |m: i64, count: usize| -> Monomial<IntervalFn> { vec![(m, IntervalFn::indicator()); count] };
        let moment = |w: Word<IntervalFn>| vacuum_expectation(&w).to_real().unwrap();
        let a11 = moment(Word::power(0, 2 * n, 1).times(&Word::power(2 * n, 0, 1)));
        let a12 = moment(Word::power(0, 2 * n, 1).times(&Word::power(n, 0, 2)));
        let a22 = moment(Word::power(0, n, 2).times(&Word::power(n, 0, 2)));
        ensure!(a11 == poly(&[0, 2 * n]), "n={n}: ⟨B^0_2n B^2n_0⟩ = {a11}");
        ensure!(a12 == poly(&[0, 2 * n.pow(3)]), "n={n}: ⟨B^0_2n (B^n_0)²⟩ = {a12}");
        ensure!(a22 == poly(&[0, n.pow(4) * (n - 1), 2 * n * n]), "n={n}: ⟨(B^0_n)²(B^n_0)²⟩ = {a22}");

        let s = reduce_untruncated(&Word::power(0, n, 1).times(&Word::power(n, 0, 3)));
        let two = ComplexMuPolynomial::from_coeffs(vec![
            ComplexRational::from_int(3 * n.pow(3) * (n - 1)),
            ComplexRational::from_int(3 * n),
        ]);
        let big = ComplexMuPolynomial::constant(ComplexRational::from_int(n.pow(4) * (n - 1) * (n - 2)));
        ensure!(s.coefficient(&creators(n, 2)) == two, "n={n}: (B^n_0)²Φ coefficient {}", s.coefficient(&creators(n, 2)));
        ensure!(s.coefficient(&creators(2 * n, 1)) == big, "n={n}: B^2n_0Φ coefficient {}", s.coefficient(&creators(2 * n, 1)));
        ensure!(s.num_terms() == 2, "n={n}: B^0_n(B^n_0)³Φ has {} terms", s.num_terms());

        // d2 = A11 A22 - A12² = 2n³μ²(2μ - n²(n+1))
        let threshold = rat(n * n * (n + 1), 2);
        let d2 = MuPolynomial::from_coeffs(vec![int(0), int(0), int(-2 * n.pow(5) * (n + 1)), int(4 * n.pow(3))]);
        let report = nogo_report(n, Some(threshold.clone())).unwrap();
        ensure!(report.d2 == d2, "n={n}: d2 = {}", report.d2);
        ensure!(report.threshold == threshold, "n={n}: threshold {}", report.threshold);
        ensure!(report.d2_at_mu == Some(BigRational::zero()), "n={n}: d2 at threshold is {:?}", report.d2_at_mu);
        let eps = rat(1, 1000);
        let below = nogo_report(n, Some(&threshold - &eps)).unwrap();
        let above = nogo_report(n, Some(&threshold + &eps)).unwrap();
        ensure!(below.d2_at_mu.unwrap() < BigRational::zero() && below.psd == Some(false), "n={n}: not negative below threshold");
        ensure!(above.d2_at_mu.unwrap() > BigRational::zero() && above.psd == Some(true), "n={n}: not positive above threshold");
    }
    Ok("n = 3, 4, 5; thresholds 18, 40, 75".into())
}

fn kernel_triple() -> Outcome {
    for n in 1..=5 {
        for k in 0..=8 {
            let (pi, _) = kernel_values(n, k).unwrap();
            // k! n^k Π_{i<k}(μ + i n²(n-1)/2), expanded directly
            let mut closed = MuPolynomial::one();
            for i in 0..k as i64 {
                closed = closed * MuPolynomial::from_coeffs(vec![rat(i * n * n * (n - 1), 2), int(1)]).scale(&int(n * (i + 1)));
            }
            let rec = kernel_recursion(n, k);
            let brute = kernel_bruteforce(n, k).unwrap();
            ensure!(pi == closed && rec == closed && brute == closed, "n={n}, k={k}: {pi} / {rec} / {brute} vs {closed}");
        }
    }
    Ok("n ≤ 5, k ≤ 8".into())
}

fn truncation_vacuity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=2 {
        for i in 0..200 {
            let w = common::truncatable_word(&mut rng, n, 6);
            let truncated = reduce_truncated(n, &w).unwrap();
            let untruncated = reduce_untruncated(&w)
                .to_number_basis(n)
                .ok_or_else(|| format!("n={n}, word {i}: untruncated state leaves the (B^n_0)^k Φ basis"))?;
            ensure!(truncated == untruncated, "n={n}, word {i} ({} factors): states differ", w.len());
        }
    }
    Ok("200 words per n ∈ {1, 2}".into())
}

fn generating_function() -> Outcome {
    for n in 1..=5 {
        for k in 0..=10 {
            let (_, h) = kernel_values(n, k).unwrap();
            let g = g_taylor_coeff(n, k).unwrap();
            ensure!(g == h, "n={n}, k={k}: Taylor coefficient {g} vs h {h}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=5);
        let mu = rng.random_range(0.01..5.0);
        let c = if n == 1 { 1.0 } else { rational_to_f64(&kernel_constant(n)) };
        let r = rng.random_range(0.0..0.95) / c;
        let u = Complex64::from_polar(r, rng.random_range(-PI..PI));
        let g = g_eval(n, u, mu).unwrap();
        let direct = if n == 1 {
            (u * mu).exp()
        } else {
            (Complex64::new(1.0, 0.0) - c * u).powc(Complex64::new(-2.0 * mu / (n * n * (n - 1)) as f64, 0.0))
        };
        let via_hat = (mu * g_hat_eval(n, u).unwrap()).exp();
        worst = worst.max(c_rel_err(g, direct)).max(c_rel_err(via_hat, direct));
    }
    ensure!(worst < 1e-12, "max relative error {worst:.3e}");
    Ok(format!("exact n ≤ 5, k ≤ 10; closed form max rel err {worst:.1e}"))
}

fn gram_positivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = f64::INFINITY;
    for i in 0..100 {
        let n = rng.random_range(2..=4);
        let m = rng.random_range(1..=5);
        let fs: Vec<_> = (0..m).map(|_| common::admissible_step_function(&mut rng, n)).collect();
        let report = gram_psd_check(n, &fs, 1e-10).unwrap();
        worst = worst.min(report.min_eigenvalue);
        ensure!(report.min_eigenvalue >= -1e-10, "family {i} (n={n}): min eigenvalue {:.3e}", report.min_eigenvalue);
        for a in 0..m {
            for b in 0..m {
                let diff = report.matrix[(a, b)] - report.matrix[(b, a)].conj();
                ensure!(diff.norm() == 0.0, "family {i}: Gram matrix not Hermitian");
            }
        }
    }
    Ok(format!("100 families, smallest eigenvalue {worst:.3e}"))
}

fn representation_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut nonzero = 0;
    for i in 0..100 {
        let n = rng.random_range(1..=4);
        let f = common::admissible_step_function(&mut rng, n);
        let g = common::admissible_step_function(&mut rng, n);
        let h = common::admissible_step_function(&mut rng, n);
        let exp = |x: &rhpwn_core::step::StepFunction| ExponentialVector::new(n, x.clone()).unwrap();
        let psi_g = JetVector::exponential(exp(&g));
        let psi_h = JetVector::exponential(exp(&h));

        // ⟨A†(f) ψ(g), ψ(h)⟩ = ⟨ψ(g), A(f̄) ψ(h)⟩
        let lhs = FockVector::from_jet(apply_creator(n, &f, &psi_g).unwrap()).inner(&FockVector::from_jet(psi_h.clone())).unwrap();
        let rhs = FockVector::from_jet(psi_g.clone()).inner(&apply_annihilator(n, &f.conj(), &psi_h).unwrap()).unwrap();
        let e = c_rel_err(lhs, rhs);
        ensure!(e < 1e-8, "triple {i} (n={n}): adjointness rel err {e:.3e}");
        worst = worst.max(e);
        nonzero += usize::from(rhs.norm() > 0.0);

        // [B^0_n(f), B^n_0(g)] ψ(h) = n² B^{n-1}_{n-1}(fg) ψ(h), tested against ψ(g)
        let ah = apply_annihilator(n, &f, &psi_h).unwrap();
        let mut cre_ann = FockVector::zero();
        for (jet, c) in ah.terms() {
            cre_ann.add_term(c.clone(), apply_creator(n, &g, jet).unwrap());
        }
        let ann_cre = apply_annihilator(n, &f, &apply_creator(n, &g, &psi_h).unwrap()).unwrap();
        let bracket = ann_cre.sub(&cre_ann);
        let number = apply_number(n, &f, &g, &psi_h).unwrap().scale(&ComplexRational::from_int(n * n));
        let probe = FockVector::from_jet(psi_g.clone());
        let lhs = probe.inner(&bracket).unwrap();
        let rhs = probe.inner(&number).unwrap();
        let e = c_rel_err(lhs, rhs);
        ensure!(e < 1e-8, "triple {i} (n={n}): commutator identity rel err {e:.3e}");
        worst = worst.max(e);
        nonzero += usize::from(rhs.norm() > 0.0);
    }
    ensure!(nonzero >= 100, "only {nonzero} of 200 comparisons were nonzero");
    Ok(format!("100 triples ({nonzero}/200 nonzero comparisons), max rel err {worst:.1e}"))
}

fn splitting_formula() -> Outcome {
    for n in 1..=4 {
        let report = splitting_series_check(n, 8).unwrap();
        ensure!(report.passed(), "n={n}: mismatch {:?}", report.mismatch);
        let taylor = mgf_taylor(n, 8).unwrap();
        let vac = report.vacuum_series();
        ensure!(vac == taylor, "n={n}: Φ-component {vac:?} vs MGF Taylor {taylor:?}");
        ensure!(taylor[2].scale(&int(2)) == poly(&[0, n]), "n={n}: second moment {}", taylor[2]);
    }
    // Var X_t = t for the normalized law, read from the density and from the MGF
    for t in [0.5, 1.0, 2.0, 5.0] {
        let v = density_moment(t, 2).unwrap();
        ensure!((v - t).abs() < 1e-6, "t={t}: ∫x²p_t = {v}");
        let h = 1e-3;
        let second = (mgf_eval(2, h, t).unwrap() - 2.0 * mgf_eval(2, 0.0, t).unwrap() + mgf_eval(2, -h, t).unwrap()) / (h * h);
        ensure!((second - 2.0 * t).abs() / (2.0 * t) < 1e-5, "t={t}: MGF curvature {second} vs nt = {}", 2.0 * t);
    }
    Ok("order 8 for n = 1..4, MGF bridge exact, Var X_t = t".into())
}

fn density_suite() -> Outcome {
    for t in [0.5, 1.0, 2.0, 5.0] {
        let mass = density_moment(t, 0).unwrap();
        ensure!((mass - 1.0).abs() < 1e-8, "t={t}: total mass {mass}");
    }
    for x in [0.0f64, 1.0, 2.0] {
        let want = 1.0 / (2.0 * (PI * x / 2.0).cosh());
        let got = density_p(1.0, x).unwrap();
        ensure!(rel_err(got, want) < 1e-10, "p_1({x}) = {got} vs {want}");
    }
    let mut worst = 0.0f64;
    for t in [0.5, 1.0, 2.0, 5.0] {
        for s in [0.25, 0.75, 1.3] {
            let check = mgf_numeric_check(t, s).unwrap();
            let want = (1.0 / f64::cos(s)).powf(t);
            let e = rel_err(check.numeric, want);
            ensure!(e < 1e-6, "t={t}, s={s}: numeric MGF {} vs {want}", check.numeric);
            worst = worst.max(e);
        }
    }
    for (n, ss) in [(2, [0.1, 0.4, -0.6]), (3, [0.05, 0.15, -0.25])] {
        for t in [0.5, 1.0, 3.0] {
            for s in ss {
                let check = scaled_mgf_numeric_check(n, t, s).unwrap();
                let e = rel_err(check.numeric, mgf_eval(n, s, t).unwrap());
                ensure!(e < 1e-6, "n={n}, t={t}, s={s}: rescaled density MGF rel err {e:.3e}");
                worst = worst.max(e);
            }
        }
    }
    Ok(format!("mass, p_1, MGF max rel err {worst:.1e}"))
}

/// CDF of `X_2` from `p_2(x) = x / (2 sinh(πx/2))` by Simpson's rule.
fn oracle_cdf_t2() -> impl Fn(f64) -> f64 {
    let (lo, hi, cells) = (-40.0f64, 40.0f64, 16_000usize);
    let h = (hi - lo) / cells as f64;
    let p = |x: f64| if x == 0.0 { 1.0 / PI } else { x / (2.0 * (PI * x / 2.0).sinh()) };
    let mut cum = vec![0.0; cells + 1];
    for i in 0..cells {
        let a = lo + i as f64 * h;
        cum[i + 1] = cum[i] + h / 6.0 * (p(a) + 4.0 * p(a + h / 2.0) + p(a + h));
    }
    move |x: f64| {
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let pos = (x - lo) / h;
        let i = pos.floor() as usize;
        let a = lo + i as f64 * h;
        // Simpson on the partial cell [a, x]
        let d = x - a;
        cum[i] + d / 6.0 * (p(a) + 4.0 * p(a + d / 2.0) + p(x))
    }
}

fn sampler() -> Outcome {
    let count = 100_000;
    let xs = sample_x(2.0, count, 2024).unwrap();
    let critical = 1.628 / (count as f64).sqrt();
    let table = TabulatedCdf::new(2.0).unwrap();
    let ks_table = ks_statistic(&xs, |x| table.cdf(x));
    ensure!(ks_table < critical, "KS vs table {ks_table:.5} ≥ {critical:.5}");
    let oracle = oracle_cdf_t2();
    let ks_oracle = ks_statistic(&xs, oracle);
    ensure!(ks_oracle < critical, "KS vs closed-form CDF {ks_oracle:.5} ≥ {critical:.5}");
    let mean = xs.iter().sum::<f64>() / count as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1) as f64;
    ensure!((var - 2.0).abs() < 0.1, "empirical variance {var}");
    let again = sample_x(2.0, count, 2024).unwrap();
    let same = xs.iter().zip(&again).all(|(a, b)| a.to_bits() == b.to_bits());
    ensure!(same, "same seed gave different samples");
    Ok(format!("KS {ks_table:.5} (table), {ks_oracle:.5} (closed form) < {critical:.5}; variance {var:.4}"))
}

fn classicality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let horizon: Vec<BigRational> = vec![rat(1, 3), int(1), rat(5, 2)];
    for i in 0..50 {
        let mut coeffs: BTreeMap<(i64, i64), ComplexRational> = BTreeMap::new();
        for _ in 0..rng.random_range(1..=4) {
            let (n, k) = (rng.random_range(0..=4), rng.random_range(0..=4));
            let c = common::nonzero_complex(&mut rng);
            if n == k {
                coeffs.insert((n, n), ComplexRational::real(c.re.clone()));
            } else {
                coeffs.insert((n, k), c.clone());
                coeffs.insert((k, n), c.conj());
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        let xs: Vec<AlgebraElement> = horizon.iter().map(|t| process_element(&coeffs, t).unwrap()).collect();
        for (a, x) in xs.iter().enumerate() {
            ensure!(x.involution() == *x, "family {i}: x({}) is not self-adjoint", horizon[a]);
            for y in &xs {
                let c = x.commutator(y).unwrap();
                ensure!(c.is_zero(), "family {i}: [x(t), x(s)] = {c}");
            }
        }
        let verdict = classical_check(&coeffs, &horizon).unwrap();
        ensure!(verdict.classical && verdict.witness.is_none(), "family {i}: reported non-classical {:?}", verdict.witness);

        // break one symmetry
        let mut broken = coeffs.clone();
        let (n, k) = (rng.random_range(0..=4), rng.random_range(0..=4));
        let bump = if n == k { ComplexRational::i() } else { ComplexRational::from_int(1) };
        let e = broken.entry((n, k)).or_insert_with(ComplexRational::zero);
        *e = &*e + &bump;
        broken.retain(|_, c| !c.is_zero());
        let verdict = classical_check(&broken, &horizon).unwrap();
        ensure!(!verdict.classical && verdict.witness.is_some(), "family {i}: broken symmetry at ({n},{k}) not detected");
        let x = process_element(&broken, &horizon[0]).unwrap();
        ensure!(x.involution() != x, "family {i}: broken family still self-adjoint");
    }
    Ok("50 Hermitian families commute; 50 broken ones caught".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("algebra axioms", algebra_axioms),
        ("no-go reproduction", nogo_reproduction),
        ("kernel triple agreement", kernel_triple),
        ("truncation vacuity", truncation_vacuity),
        ("generating function identity", generating_function),
        ("Gram positivity", gram_positivity),
        ("representation duality", representation_duality),
        ("splitting formula", splitting_formula),
        ("density suite", density_suite),
        ("sampler", sampler),
        ("classicality", classicality),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

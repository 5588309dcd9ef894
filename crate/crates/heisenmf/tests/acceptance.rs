//! End-to-end acceptance checks, one test per headline requirement.
//! Every test prints a single PASS or FAIL line naming its criterion.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use heisenmf::logspace::log_sum_exp;
use heisenmf::meanfield::{
    expected_cycle_count, magnetisation_sq_exact, magnetisation_sq_log, mass_term_log,
    partition_function_exact, partition_function_log, rate_argmin, spectral_z_log, tau_grid,
    transition_scan, truncated_residual, weighted_cycle_count_exact, weighted_cycle_count_log,
    weighted_cycle_count_spectral, MassGrid,
};
use heisenmf::oracles::heat::HeatKernel;
use heisenmf::oracles::mc::{simulate_interchange, McConfig};
use heisenmf::oracles::quantum::quantum_observables;
use heisenmf::qpoly::QPoly;
use heisenmf::repnum::{character, class_size, spectral_coefficient};
use heisenmf::symfunc::{
    frobenius_characteristic, monomial_symmetric, power_sum, power_sum_schur_expansion, schur,
    ClassFunction, SymPoly,
};
use heisenmf::young::{partitions, two_row_partitions, Partition};

type BigRational = Ratio<BigInt>;

fn criterion<F: FnOnce()>(name: &str, body: F) {
    let start = Instant::now();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("PASS {} ({:.1}s)", name, start.elapsed().as_secs_f64()),
        Err(e) => {
            println!("FAIL {}", name);
            resume_unwind(e);
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(n: u32) -> BigInt {
    (2..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn criterion_01_exact_routes() {
    criterion(
        "01 weighted cycle counts agree across closed form, strips and characters (n <= 7)",
        || {
            for n in 1..=7u32 {
                let hk = HeatKernel::new(n);
                for k in 1..=n {
                    let closed = weighted_cycle_count_exact(n, k);
                    assert_eq!(
                        closed,
                        weighted_cycle_count_spectral(n, k),
                        "strip route n={} k={}",
                        n,
                        k
                    );
                    assert_eq!(closed, hk.weighted_cycle_count(k), "character route n={} k={}", n, k);
                }
            }
        },
    );
}

#[test]
fn criterion_02_character_inner_products() {
    criterion(
        "02 character inner products of cycle observables take the predicted values (n <= 7)",
        || {
            for n in 1..=7u32 {
                let classes = partitions(n);
                let n_fact = BigRational::from_integer(factorial(n));
                for lambda in partitions(n) {
                    let inner = |f: &dyn Fn(&Partition) -> BigRational| -> BigRational {
                        let mut acc = BigRational::zero();
                        for c in &classes {
                            acc += f(c)
                                * BigRational::from_integer(
                                    class_size(c) * character(&lambda, c),
                                );
                        }
                        acc
                    };
                    let plain = inner(&|c| int(1i64 << c.parts()));
                    let expected = if lambda.parts() <= 2 {
                        let a = lambda.row(1) as i64;
                        let b = lambda.row(2) as i64;
                        int(a - b + 1) * n_fact.clone()
                    } else {
                        BigRational::zero()
                    };
                    assert_eq!(plain, expected, "plain weight, lambda={:?}", lambda);
                    for k in 1..=n {
                        let weighted = inner(&|c| {
                            let count = c.rows().iter().filter(|&&r| r == k).count() as i64;
                            int(count * (1i64 << c.parts()))
                        });
                        let coeff = spectral_coefficient(&lambda, k) * n_fact.clone();
                        assert_eq!(weighted, coeff, "k-weighted, lambda={:?} k={}", lambda, k);
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_03_symmetric_function_decompositions() {
    criterion(
        "03 cycle observables decompose over staircase determinants as predicted (n <= 8)",
        || {
            for n in 1..=8u32 {
                let v = n as usize;
                let two = ClassFunction::cycle_weight(n);
                let mut want = SymPoly::zero(v);
                for mu in two_row_partitions(n) {
                    let w = int(mu.row(1) as i64 - mu.row(2) as i64 + 1);
                    want = want.add(&schur(&mu, v).scale(&w));
                }
                assert_eq!(frobenius_characteristic(&two, v), want, "plain weight n={}", n);
                for k in 1..=n {
                    let f = ClassFunction::weighted_cycle_count(n, k);
                    let mut base = SymPoly::zero(v);
                    for mu in two_row_partitions(n - k) {
                        let w = int(mu.row(1) as i64 - mu.row(2) as i64 + 1);
                        base = base.add(&schur(&mu, v).scale(&w));
                    }
                    let want = power_sum(k, v)
                        .mul(&base)
                        .scale(&BigRational::new(BigInt::from(2), BigInt::from(k)));
                    assert_eq!(
                        frobenius_characteristic(&f, v),
                        want,
                        "k-weighted n={} k={}",
                        n,
                        k
                    );
                    // Straightening of one power sum against each summand.
                    for mu in two_row_partitions(n - k) {
                        let lhs = power_sum(k, v).mul(&schur(&mu, v));
                        let mut rhs = SymPoly::zero(v);
                        for (lambda, sign) in power_sum_schur_expansion(k, &mu) {
                            rhs = rhs.add(&schur(&lambda, v).scale(&int(sign as i64)));
                        }
                        assert_eq!(lhs, rhs, "straightening n={} k={} mu={:?}", n, k, mu);
                    }
                }
                // Row-count weights on monomials match the one-row convolution.
                let mut lhs = SymPoly::zero(v);
                for lambda in partitions(n) {
                    let mut w = 1i64;
                    for &r in lambda.rows() {
                        w *= r as i64 + 1;
                    }
                    lhs = lhs.add(&monomial_symmetric(&lambda, v).scale(&int(w)));
                }
                let mut rhs = SymPoly::zero(v);
                for i in 0..=n {
                    let left =
                        if i == 0 { Partition::empty() } else { Partition::new(vec![i]) };
                    let right = if n - i == 0 {
                        Partition::empty()
                    } else {
                        Partition::new(vec![n - i])
                    };
                    rhs = rhs.add(&schur(&left, v).mul(&schur(&right, v)));
                }
                assert_eq!(lhs, rhs, "row-count convolution n={}", n);
            }
        },
    );
}

#[test]
fn criterion_04_quantum_concordance() {
    criterion(
        "04 spin-system traces match the dynamics under halved time (n <= 6, 1e-8)",
        || {
            for n in 2..=6u32 {
                let (num, den) = magnetisation_sq_exact(n);
                let z = partition_function_exact(n).unwrap();
                for &beta in &[0.1, 0.5, 1.0, 2.0] {
                    let t = beta / 2.0;
                    let obs = quantum_observables(n, beta);
                    let m2 = num.eval_exp(t) / den.eval_exp(t);
                    assert!(
                        rel_close(obs.m_sq, m2, 1e-8),
                        "m2 n={} beta={}: {} vs {}",
                        n,
                        beta,
                        obs.m_sq,
                        m2
                    );
                    // The two partition functions differ by the fixed factor
                    // exp(beta n (n-1) / 8); a 1e-8 relative bound on that
                    // ratio is 1e-8 absolute in log space.
                    let shift = beta * (n * (n - 1)) as f64 / 8.0;
                    let diff = obs.log_z - z.eval_exp(t).ln() - shift;
                    assert!(
                        diff.abs() <= 1e-8,
                        "free energy offset n={} beta={}: residue {}",
                        n,
                        beta,
                        diff
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_05_anchors_and_infinite_temperature() {
    criterion(
        "05 exact small-system values and the t=0 limits up to n=2000 (1e-9)",
        || {
            let q = |pairs: &[(u64, i64)]| QPoly::from_integer_coeffs(pairs);
            assert_eq!(partition_function_exact(2).unwrap(), q(&[(0, 3), (2, 1)]));
            assert_eq!(partition_function_exact(3).unwrap(), q(&[(0, 4), (3, 4)]));
            let (num2, den2) = magnetisation_sq_exact(2);
            assert_eq!(num2, q(&[(0, 8)]));
            assert_eq!(den2, q(&[(0, 3), (2, 1)]));
            let (num3, den3) = magnetisation_sq_exact(3);
            assert_eq!(num3, q(&[(0, 20), (3, 4)]));
            assert_eq!(den3, q(&[(0, 4), (3, 4)]));
            for &n in &[2u32, 3, 10, 137, 1000, 2000] {
                let z = partition_function_log(n, 0.0).unwrap().log_abs();
                assert!(
                    rel_close(z, n as f64 * std::f64::consts::LN_2, 1e-9),
                    "log Z at t=0, n={}: {}",
                    n,
                    z
                );
                let m2 = magnetisation_sq_log(n, 0.0).unwrap();
                assert!(rel_close(m2, n as f64, 1e-9), "m2 at t=0, n={}: {}", n, m2);
            }
        },
    );
}

#[test]
fn criterion_06_mass_identity() {
    criterion(
        "06 k-weighted cycle masses sum to n times the partition function (exact n <= 7; float to n=2000, 1e-9)",
        || {
            for n in 1..=7u32 {
                let mut total = QPoly::zero();
                for k in 1..=n {
                    total += &weighted_cycle_count_exact(n, k).scale(&int(k as i64));
                }
                let z = partition_function_exact(n).unwrap().scale(&int(n as i64));
                assert_eq!(total, z, "exact n={}", n);
            }
            for &n in &[200u32, 1000, 2000] {
                for &tau in &tau_grid(0.2, 4.0, 20) {
                    let t = tau / n as f64;
                    let logs: Vec<f64> = (1..=n)
                        .map(|k| {
                            (k as f64).ln()
                                + weighted_cycle_count_log(n, k, t).unwrap().log_abs()
                        })
                        .collect();
                    let lhs = log_sum_exp(&logs);
                    let rhs = (n as f64).ln() + spectral_z_log(n, t);
                    let rel = (lhs - rhs).exp_m1().abs();
                    assert!(rel <= 1e-9, "float n={} tau={}: rel {}", n, tau, rel);
                }
            }
        },
    );
}

#[test]
fn criterion_07_mass_positivity() {
    criterion(
        "07 signed strip sums stay nonnegative across random times (n in {50, 200})",
        || {
            let mut rng = ChaCha12Rng::seed_from_u64(0xACCE55);
            for &n in &[50u32, 200] {
                for _ in 0..20 {
                    let tau: f64 = 0.2 + rng.gen::<f64>() * 3.8;
                    let t = tau / n as f64;
                    let grid = MassGrid::build(n, t).unwrap();
                    assert!(
                        !grid.log_z_cycle().is_nan(),
                        "negative cell survived, n={} tau={}",
                        n,
                        tau
                    );
                    let frac = grid.clamped_cells as f64 / grid.total_cells as f64;
                    assert!(frac < 1e-3, "clamp fraction {} at n={} tau={}", frac, n, tau);
                }
            }
            // Spot checks on individual cells at fixed parameters.
            for &(n, k, b, tau) in &[(50u32, 3u32, 10u32, 1.0f64), (200, 17, 60, 3.5)] {
                let (cell, _) = mass_term_log(n, b, k, tau / n as f64).unwrap();
                assert!(cell.sign() >= 0);
            }
        },
    );
}

#[test]
fn criterion_08_phase_transition() {
    criterion(
        "08 magnetisation curves separate a shrinking low-time regime from a stable high-time one",
        || {
            let sizes = [250u32, 500, 1000, 2000];
            let taus = tau_grid(1.0, 3.0, 21);
            let scan = transition_scan(&sizes, &taus).unwrap();
            // tau = 1.5 sits at index 5, tau = 3.0 at index 20.
            assert!((scan.taus[5] - 1.5).abs() < 1e-12);
            assert!((scan.taus[20] - 3.0).abs() < 1e-12);
            let low: Vec<f64> = scan.curves.iter().map(|c| c[5].m2_over_n2).collect();
            for w in low.windows(2) {
                assert!(w[0] > w[1], "m2/n^2 must shrink with size below the transition: {:?}", low);
            }
            for c in &scan.curves {
                assert!(
                    c[5].m2_over_n < 10.0,
                    "m2/n stays bounded below the transition, got {}",
                    c[5].m2_over_n
                );
            }
            let high: Vec<f64> = scan.curves.iter().map(|c| c[20].m2_over_n2).collect();
            let max = high.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = high.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(max - min <= 0.2 * max, "high-time values must be stable: {:?}", high);
            assert!(min > 0.01, "high-time values must be macroscopic: {:?}", high);
            let crossing = scan.crossing.expect("a flip must be found");
            assert!(
                (1.8..=2.2).contains(&crossing),
                "crossing estimate {} outside [1.8, 2.2]",
                crossing
            );
        },
    );
}

#[test]
fn criterion_09_rate_function_minimiser() {
    criterion(
        "09 emergence threshold of the macroscopic cycle sits at rescaled time 2",
        || {
            for &tau in &[1.0, 1.5, 1.9] {
                assert_eq!(rate_argmin(tau), 0.5, "tau={}", tau);
            }
            for &tau in &[2.1, 3.0, 5.0] {
                assert!(rate_argmin(tau) < 0.5, "tau={}", tau);
            }
            let b = rate_argmin(3.0);
            assert!((b - 0.0707).abs() <= 1e-3, "argmin at tau=3: {}", b);
        },
    );
}

#[test]
fn criterion_10_monte_carlo_concordance() {
    criterion(
        "10 simulation estimates sit within three sigma of the deterministic values",
        || {
            for &(n, tau, samples, seed) in
                &[(10u32, 1.0f64, 1_000_000u64, 42u64), (20, 3.0, 1_000_000, 42), (30, 2.0, 1_000_000, 42)]
            {
                let t = tau / n as f64;
                let res = simulate_interchange(&McConfig::new(n, t, samples, seed));
                let z_ref = partition_function_log(n, t).unwrap().to_f64();
                let m_ref = magnetisation_sq_log(n, t).unwrap();
                let zp = res.partition_function.z_score(z_ref);
                let zm = res.magnetisation_sq.z_score(m_ref);
                assert!(
                    zp.abs() <= 3.0,
                    "partition function n={} tau={}: {} vs {} ({} sigma)",
                    n,
                    tau,
                    res.partition_function.value,
                    z_ref,
                    zp
                );
                assert!(
                    zm.abs() <= 3.0,
                    "magnetisation n={} tau={}: {} vs {} ({} sigma)",
                    n,
                    tau,
                    res.magnetisation_sq.value,
                    m_ref,
                    zm
                );
                for k in 1..=5u32 {
                    let w_ref = weighted_cycle_count_log(n, k, t).unwrap().to_f64();
                    let zw = res.weighted_cycle_counts[k as usize - 1].z_score(w_ref);
                    assert!(
                        zw.abs() <= 3.0,
                        "weighted {}-cycles n={} tau={}: {} vs {} ({} sigma)",
                        k,
                        n,
                        tau,
                        res.weighted_cycle_counts[k as usize - 1].value,
                        w_ref,
                        zw
                    );
                }
                let fix_ref = expected_cycle_count(n, 1, t).unwrap().to_f64();
                let zf = res.fixed_points.z_score(fix_ref);
                assert!(
                    zf.abs() <= 3.0,
                    "fixed points n={} tau={}: {} vs {} ({} sigma)",
                    n,
                    tau,
                    res.fixed_points.value,
                    fix_ref,
                    zf
                );
            }
        },
    );
}

#[test]
fn criterion_11_truncation_residual() {
    criterion(
        "11 the long-cycle residual is macroscopic only above the transition",
        || {
            let n = 1000u32;
            for &m in &[137u32, 1000] {
                for &tau in &[0.5, 1.5, 3.0] {
                    assert_eq!(
                        truncated_residual(m, 0, tau / m as f64).unwrap(),
                        0.5,
                        "keeping every length must give exactly one half, n={} tau={}",
                        m,
                        tau
                    );
                }
            }
            let above = truncated_residual(n, 50, 3.0 / n as f64).unwrap();
            assert!(above >= 0.01, "residual above the transition: {}", above);
            let below = truncated_residual(n, 50, 1.5 / n as f64).unwrap();
            assert!(below <= 0.005, "residual below the transition: {}", below);
        },
    );
}

//! Partition function, squared magnetisation and cycle observables of the
//! mean-field interchange dynamics, in exact polynomial form (small n) and
//! in log-space floats (n into the thousands).
//!
//! Two independent evaluation routes exist for the partition function and
//! are always cross-checked: a spectral sum over two-row diagrams and a
//! cycle-observable sum assembled from beta-integral closed forms.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::logspace::{log_sum_exp, signed_sum_descending, LogSigned};
use crate::qpoly::QPoly;
use crate::repnum::{dimension, eigenvalue, shifted_eigenvalue, signed_dimension};
use crate::special::{incomplete_beta_upper, ln_binomial, ln_factorial, ln_multinomial3};
use crate::young::{two_row_partitions, Partition};

pub type BigRational = Ratio<BigInt>;

/// Maximum relative disagreement tolerated between the two partition
/// function routes in float mode.
pub const ROUTE_REL_TOL: f64 = 1e-9;

/// A signed cell sum whose magnitude falls below this fraction of its
/// largest contribution is snapped to exact zero.
pub const CLAMP_REL_THRESHOLD: f64 = 1e-12;

/// Largest n accepted by the exact polynomial mode.
pub const EXACT_MODE_MAX_N: u32 = 12;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn binomial_big(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// Exact route: polynomials in q.

/// Integral of x^p (1-x)^(k-1) from y to 1 as an exact polynomial in y.
fn tail_integral_poly(p: u64, k: u64) -> QPoly {
    let mut out = QPoly::zero();
    let mut binom = BigInt::one();
    for j in 0..k {
        if j > 0 {
            binom = &binom * BigInt::from(k - j) / BigInt::from(j);
        }
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let c = BigRational::new(&sign * &binom, BigInt::from(p + 1 + j));
        out.add_term(0, c.clone());
        out.add_term(p + 1 + j, -c);
    }
    out
}

/// (1-y)^m expanded in y.
fn one_minus_y_pow(m: u64) -> QPoly {
    let mut out = QPoly::zero();
    let mut binom = BigInt::one();
    for j in 0..=m {
        if j > 0 {
            binom = &binom * BigInt::from(m + 1 - j) / BigInt::from(j);
        }
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.add_term(j, BigRational::from_integer(&sign * &binom));
    }
    out
}

/// Closed-form spectral sum over the strips added to the two-row diagram
/// [a, b]: exact polynomial in q, with the substitution y = q^k performed
/// at the end. `a + b + k` must equal `n`.
pub fn strip_sum_exact(n: u32, a: u32, b: u32, k: u32) -> QPoly {
    assert!(a >= b, "rows out of order: a={} b={}", a, b);
    assert_eq!(a + b + k, n, "rows plus strip must exhaust n");
    assert!(k >= 1);
    let (n64, a64, b64, k64) = (n as u64, a as u64, b as u64, k as u64);
    let bracket = if b == 0 {
        // y^(a+1) (1-y)^(k-1) + k * int_y^1 x^a (1-x)^(k-1) dx
        let mut t1 = one_minus_y_pow(k64 - 1).shift(a64 + 1);
        let t2 = tail_integral_poly(a64, k64).scale(&int(k64 as i64));
        t1 += &t2;
        t1.scale(&BigRational::from_integer(binomial_big(n64, k64)))
    } else {
        let c1 = a as i64 + 1 - b as i64;
        let t1 = one_minus_y_pow(k64 - 1)
            .shift(a64 + b64 + 2)
            .scale(&BigRational::new(BigInt::from(c1), BigInt::from(k64)));
        let t2 = tail_integral_poly(a64 + 1, k64)
            .shift(b64)
            .scale(&int(c1 + k64 as i64));
        let t3 = tail_integral_poly(b64, k64)
            .shift(a64 + 1)
            .scale(&int(c1 - k64 as i64));
        let mut sum = t1;
        sum += &t2;
        sum += &t3;
        let multinomial = BigRational::new(
            factorial_big(n64),
            factorial_big(k64 - 1) * factorial_big(a64 + 1) * factorial_big(b64),
        );
        sum.scale(&multinomial)
    };
    let stretched = bracket.stretch(k64);
    if b == 0 {
        stretched
    } else {
        stretched.shift(a64 * b64 + b64)
    }
}

fn factorial_big(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Spectral route to the same quantity: signed dimensions times decay
/// exponents over every strip placement on the two-row diagram `mu`.
pub fn strip_sum_spectral(mu: &Partition, k: u32) -> QPoly {
    assert!(mu.parts() <= 2);
    let mut out = QPoly::zero();
    for i in 1..=(k as usize + 2) {
        let d = signed_dimension(mu, k, i);
        if d.is_zero() {
            continue;
        }
        let e = shifted_eigenvalue(mu, k, i);
        assert!(e >= 0, "resolved diagrams decay: {:?} k={} i={}", mu, k, i);
        out.add_term(e as u64, d);
    }
    out
}

/// The (b, k) mass cell: (a+1-b) times the strip sum, a = n-k-b. These are
/// the nonnegative summands behind both Z and the magnetisation.
pub fn mass_term_exact(n: u32, b: u32, k: u32) -> QPoly {
    assert!(k >= 1 && k <= n && b <= (n - k) / 2);
    let a = n - k - b;
    strip_sum_exact(n, a, b, k).scale(&int(a as i64 + 1 - b as i64))
}

/// Expected weighted k-cycle count (cycle count times 2^cycles), exact:
/// (2/k) times the mass column at k.
pub fn weighted_cycle_count_exact(n: u32, k: u32) -> QPoly {
    assert!(k >= 1 && k <= n);
    let mut sum = QPoly::zero();
    for b in 0..=(n - k) / 2 {
        sum += &mass_term_exact(n, b, k);
    }
    sum.scale(&BigRational::new(BigInt::from(2), BigInt::from(k)))
}

/// Same observable through the spectral route, for cross-checking.
pub fn weighted_cycle_count_spectral(n: u32, k: u32) -> QPoly {
    assert!(k >= 1 && k <= n);
    let mut sum = QPoly::zero();
    for mu in two_row_partitions(n - k) {
        let weight = mu.row(1) as i64 - mu.row(2) as i64 + 1;
        sum += &strip_sum_spectral(&mu, k).scale(&int(weight));
    }
    sum.scale(&BigRational::new(BigInt::from(2), BigInt::from(k)))
}

/// Partition function as an exact polynomial: the spectral two-row sum,
/// cross-checked against the cycle-observable route, which must agree
/// coefficient for coefficient.
pub fn partition_function_exact(n: u32) -> Result<QPoly, Error> {
    assert!(n >= 1 && n <= EXACT_MODE_MAX_N, "exact mode holds n <= {}", EXACT_MODE_MAX_N);
    let spectral = spectral_z_exact(n);
    let mut cycle = QPoly::zero();
    for k in 1..=n {
        for b in 0..=(n - k) / 2 {
            cycle += &mass_term_exact(n, b, k);
        }
    }
    let cycle = cycle.scale(&BigRational::new(BigInt::from(2), BigInt::from(n)));
    if spectral != cycle {
        return Err(Error::RouteDisagreement {
            n,
            t: f64::NAN,
            spectral: f64::NAN,
            cycle: f64::NAN,
            rel_err: f64::INFINITY,
        });
    }
    Ok(spectral)
}

fn spectral_z_exact(n: u32) -> QPoly {
    let mut out = QPoly::zero();
    for b in 0..=n / 2 {
        let la = if b == 0 {
            Partition::new(vec![n])
        } else {
            Partition::new(vec![n - b, b])
        };
        let weight = int(n as i64 - 2 * b as i64 + 1) * BigRational::from_integer(dimension(&la));
        out.add_term(eigenvalue(&la) as u64, weight);
    }
    out
}

/// Exact squared magnetisation as a ratio of polynomials (numerator,
/// denominator); the denominator is the partition function.
pub fn magnetisation_sq_exact(n: u32) -> (QPoly, QPoly) {
    assert!(n >= 1 && n <= EXACT_MODE_MAX_N);
    let mut num = QPoly::zero();
    let mut den = QPoly::zero();
    for k in 1..=n {
        for b in 0..=(n - k) / 2 {
            let cell = mass_term_exact(n, b, k);
            num += &cell.scale(&int(2 * k as i64));
            den += &cell;
        }
    }
    (num, den.scale(&BigRational::new(BigInt::from(2), BigInt::from(n))))
}

/// Expected irreducible character under the dynamics: dimension times the
/// decay monomial.
pub fn expected_character_exact(lambda: &Partition) -> QPoly {
    QPoly::monomial(
        eigenvalue(lambda) as u64,
        BigRational::from_integer(dimension(lambda)),
    )
}

pub fn expected_character_log(lambda: &Partition, t: f64) -> LogSigned {
    let hooks = lambda.hook_numbers();
    let mut log_dim = ln_factorial(lambda.size() as u64);
    for w in 0..hooks.len() {
        for s in w + 1..hooks.len() {
            log_dim += ((hooks[w] - hooks[s]) as f64).ln();
        }
    }
    for &h in &hooks {
        log_dim -= ln_factorial(h as u64);
    }
    LogSigned::from_log(1, log_dim - t * eigenvalue(lambda) as f64)
}

// ---------------------------------------------------------------------------
// Float route: log-space evaluation.

/// Bracket of the strip sum in log space, shared by the closed forms.
/// Returns the signed sum and whether it was clamped to zero.
fn bracket_log(n: u32, a: u32, b: u32, k: u32, t: f64) -> Result<(LogSigned, bool), Error> {
    debug_assert_eq!(a + b + k, n);
    let k_f = k as f64;
    let log_y = -t * k_f;
    let log_1my = if log_y == 0.0 {
        f64::NEG_INFINITY
    } else {
        (-log_y.exp_m1()).ln()
    };
    let pow_1my = |m: u32| -> f64 {
        if m == 0 {
            0.0
        } else {
            m as f64 * log_1my
        }
    };
    if b == 0 {
        // Both terms nonnegative; no cancellation possible.
        let t1 = LogSigned::from_log(1, (a as f64 + 1.0) * log_y + pow_1my(k - 1));
        let tail = incomplete_beta_upper(log_y, a as f64 + 1.0, k_f)?;
        let t2 = tail.scale_log(k_f.ln());
        return Ok((t1.add(&t2), false));
    }
    let c1 = a as i64 + 1 - b as i64;
    debug_assert!(c1 >= 1);
    let t1 = LogSigned::from_log(
        1,
        (c1 as f64).ln() - k_f.ln() + (a as f64 + b as f64 + 2.0) * log_y + pow_1my(k - 1),
    );
    let tail_a = incomplete_beta_upper(log_y, a as f64 + 2.0, k_f)?;
    let t2 = tail_a.scale_log(((c1 + k as i64) as f64).ln() + b as f64 * log_y);
    let c3 = c1 - k as i64;
    let t3 = if c3 == 0 {
        LogSigned::ZERO
    } else {
        let tail_b = incomplete_beta_upper(log_y, b as f64 + 1.0, k_f)?;
        let sign = if c3 > 0 { 1 } else { -1 };
        LogSigned::from_log(sign, 0.0)
            .mul(&tail_b)
            .scale_log((c3.abs() as f64).ln() + (a as f64 + 1.0) * log_y)
    };
    let mut terms = [t1, t2, t3];
    let largest = terms
        .iter()
        .map(|x| x.log_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let sum = signed_sum_descending(&mut terms);
    if !sum.is_zero() && sum.log_abs() < largest + CLAMP_REL_THRESHOLD.ln() {
        return Ok((LogSigned::ZERO, true));
    }
    Ok((sum, false))
}

/// Float strip sum for the two-row diagram [a, b].
pub fn strip_sum_log(n: u32, a: u32, b: u32, k: u32, t: f64) -> Result<LogSigned, Error> {
    assert!(a >= b && a + b + k == n && k >= 1);
    let (bracket, _) = bracket_log(n, a, b, k, t)?;
    Ok(bracket.scale_log(prefactor_log(n, a, b, k, t)))
}

fn prefactor_log(n: u32, a: u32, b: u32, k: u32, t: f64) -> f64 {
    if b == 0 {
        ln_binomial(n as u64, k as u64)
    } else {
        ln_multinomial3(n as u64, k as u64 - 1, a as u64 + 1, b as u64)
            - t * (a as f64 * b as f64 + b as f64)
    }
}

/// Float mass cell (b, k); the flag reports a clamp-to-zero event.
pub fn mass_term_log(n: u32, b: u32, k: u32, t: f64) -> Result<(LogSigned, bool), Error> {
    assert!(k >= 1 && k <= n && b <= (n - k) / 2);
    let a = n - k - b;
    let (bracket, clamped) = bracket_log(n, a, b, k, t)?;
    let c1 = (a + 1 - b) as f64;
    Ok((bracket.scale_log(prefactor_log(n, a, b, k, t) + c1.ln()), clamped))
}

/// Grid of log mass cells, row per k, column per b, plus clamp diagnostics.
pub struct MassGrid {
    n: u32,
    log_cells: Vec<Vec<f64>>,
    pub clamped_cells: u64,
    pub total_cells: u64,
}

impl MassGrid {
    pub fn build(n: u32, t: f64) -> Result<MassGrid, Error> {
        assert!(n >= 1);
        let rows: Result<Vec<(Vec<f64>, u64)>, Error> = (1..=n)
            .into_par_iter()
            .map(|k| {
                let mut row = Vec::with_capacity(((n - k) / 2 + 1) as usize);
                let mut clamps = 0u64;
                for b in 0..=(n - k) / 2 {
                    let (cell, clamped) = mass_term_log(n, b, k, t)?;
                    if clamped {
                        clamps += 1;
                    }
                    // Signs are analytically nonnegative; a negative survivor
                    // would poison the log sums into NaN, which the route
                    // check then reports loudly.
                    row.push(if cell.sign() >= 0 { cell.log_abs() } else { f64::NAN });
                }
                Ok((row, clamps))
            })
            .collect();
        let rows = rows?;
        let clamped_cells = rows.iter().map(|(_, c)| *c).sum();
        let total_cells = rows.iter().map(|(r, _)| r.len() as u64).sum();
        Ok(MassGrid {
            n,
            log_cells: rows.into_iter().map(|(r, _)| r).collect(),
            clamped_cells,
            total_cells,
        })
    }

    fn flattened(&self, min_k: u32, weight: impl Fn(u32) -> f64) -> Vec<f64> {
        let mut logs = Vec::new();
        for (idx, row) in self.log_cells.iter().enumerate() {
            let k = idx as u32 + 1;
            if k < min_k {
                continue;
            }
            let w = weight(k);
            logs.extend(row.iter().map(|&l| l + w));
        }
        logs
    }

    /// log of the full mass sum, cells in (k ascending, b ascending) order.
    pub fn log_sum(&self) -> f64 {
        log_sum_exp(&self.flattened(1, |_| 0.0))
    }

    /// log of the k-weighted mass sum.
    pub fn log_weighted_sum(&self) -> f64 {
        log_sum_exp(&self.flattened(1, |k| (k as f64).ln()))
    }

    /// log of the mass sum restricted to k > m_cut.
    pub fn log_tail_sum(&self, m_cut: u32) -> f64 {
        log_sum_exp(&self.flattened(m_cut + 1, |_| 0.0))
    }

    /// log Z through the cycle route.
    pub fn log_z_cycle(&self) -> f64 {
        std::f64::consts::LN_2 - (self.n as f64).ln() + self.log_sum()
    }
}

/// log of the spectral-route partition function.
pub fn spectral_z_log(n: u32, t: f64) -> f64 {
    let logs: Vec<f64> = (0..=n / 2)
        .map(|b| {
            let weight = (n - 2 * b + 1) as f64;
            let log_dim = ln_factorial(n as u64) - ln_factorial((n - b + 1) as u64)
                - ln_factorial(b as u64)
                + weight.ln();
            let e = two_row_eigenvalue(n, b);
            weight.ln() + log_dim - t * e as f64
        })
        .collect();
    log_sum_exp(&logs)
}

fn two_row_eigenvalue(n: u32, b: u32) -> i64 {
    let (n, b) = (n as i64, b as i64);
    let a = n - b;
    n * (n - 1) / 2 - a * (a - 1) / 2 + b * (3 - b) / 2
}

/// Float partition function: evaluates both routes, demands relative
/// agreement within [`ROUTE_REL_TOL`], and returns the spectral value.
pub fn partition_function_log(n: u32, t: f64) -> Result<LogSigned, Error> {
    let grid = MassGrid::build(n, t)?;
    partition_function_from_grid(&grid, t)
}

fn partition_function_from_grid(grid: &MassGrid, t: f64) -> Result<LogSigned, Error> {
    let n = grid.n;
    let cycle = grid.log_z_cycle();
    let spectral = spectral_z_log(n, t);
    let rel_err = (cycle - spectral).exp_m1().abs();
    if !(rel_err <= ROUTE_REL_TOL) {
        return Err(Error::RouteDisagreement { n, t, spectral, cycle, rel_err });
    }
    Ok(LogSigned::from_log(1, spectral))
}

/// Float squared magnetisation: n times the ratio of the k-weighted and
/// plain mass sums.
pub fn magnetisation_sq_log(n: u32, t: f64) -> Result<f64, Error> {
    let grid = MassGrid::build(n, t)?;
    magnetisation_from_grid(&grid, t)
}

fn magnetisation_from_grid(grid: &MassGrid, t: f64) -> Result<f64, Error> {
    let den = grid.log_sum();
    if den == f64::NEG_INFINITY || den.is_nan() {
        return Err(Error::DenominatorUnderflow { n: grid.n, t });
    }
    Ok(grid.n as f64 * (grid.log_weighted_sum() - den).exp())
}

/// Expected plain k-cycle count (no 2^cycles weight).
pub fn expected_cycle_count(n: u32, k: u32, t: f64) -> Result<LogSigned, Error> {
    assert!(k >= 1 && k <= n);
    let a = n - k;
    let (bracket, _) = bracket_log(n, a, 0, k, t)?;
    Ok(bracket.scale_log(ln_binomial(n as u64, k as u64) - (k as f64).ln()))
}

/// Float expected weighted k-cycle count.
pub fn weighted_cycle_count_log(n: u32, k: u32, t: f64) -> Result<LogSigned, Error> {
    assert!(k >= 1 && k <= n);
    let mut logs = Vec::with_capacity(((n - k) / 2 + 1) as usize);
    for b in 0..=(n - k) / 2 {
        let (cell, _) = mass_term_log(n, b, k, t)?;
        logs.push(if cell.sign() >= 0 { cell.log_abs() } else { f64::NAN });
    }
    Ok(LogSigned::from_log(1, log_sum_exp(&logs) + (2.0 / k as f64).ln()))
}

/// Share of the k-weighted mass carried by cycles longer than `m_cut`,
/// normalized so the untruncated value is exactly one half.
pub fn truncated_residual(n: u32, m_cut: u32, t: f64) -> Result<f64, Error> {
    assert!(m_cut <= n);
    let grid = MassGrid::build(n, t)?;
    let all = grid.log_sum();
    if all == f64::NEG_INFINITY || all.is_nan() {
        return Err(Error::DenominatorUnderflow { n, t });
    }
    Ok(0.5 * (grid.log_tail_sum(m_cut) - all).exp())
}

// ---------------------------------------------------------------------------
// Curves and the transition scan.

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub n: u32,
    pub t: f64,
    pub tau: f64,
    pub log_z: f64,
    pub m2: f64,
    pub m2_over_n: f64,
    pub m2_over_n2: f64,
}

fn curve_point_from_grid(grid: &MassGrid, tau: f64, t: f64) -> Result<CurvePoint, Error> {
    let n = grid.n;
    let z = partition_function_from_grid(grid, t)?;
    let m2 = magnetisation_from_grid(grid, t)?;
    Ok(CurvePoint {
        n,
        t,
        tau,
        log_z: z.log_abs(),
        m2,
        m2_over_n: m2 / n as f64,
        m2_over_n2: m2 / (n as f64 * n as f64),
    })
}

/// One float curve point at rescaled time tau = n t.
pub fn curve_point(n: u32, tau: f64) -> Result<CurvePoint, Error> {
    assert!(n >= 1 && tau >= 0.0);
    let t = tau / n as f64;
    let grid = MassGrid::build(n, t)?;
    curve_point_from_grid(&grid, tau, t)
}

/// One exact-mode curve point (n bounded by [`EXACT_MODE_MAX_N`]).
pub fn curve_point_exact(n: u32, tau: f64) -> Result<CurvePoint, Error> {
    assert!(n >= 1 && tau >= 0.0);
    let t = tau / n as f64;
    let z = partition_function_exact(n)?;
    let (num, den) = magnetisation_sq_exact(n);
    let m2 = num.eval_exp(t) / den.eval_exp(t);
    Ok(CurvePoint {
        n,
        t,
        tau,
        log_z: z.eval_exp(t).ln(),
        m2,
        m2_over_n: m2 / n as f64,
        m2_over_n2: m2 / (n as f64 * n as f64),
    })
}

/// Evenly spaced tau grid, inclusive of both ends; a single step collapses
/// to tau_min.
pub fn tau_grid(tau_min: f64, tau_max: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 1 && tau_min <= tau_max);
    if steps == 1 {
        return vec![tau_min];
    }
    (0..steps)
        .map(|i| tau_min + (tau_max - tau_min) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Float curve over a tau grid, parallel across grid points.
pub fn curve(n: u32, taus: &[f64]) -> Result<Vec<CurvePoint>, Error> {
    taus.par_iter().map(|&tau| curve_point(n, tau)).collect()
}

#[derive(Clone, Debug)]
pub struct TransitionScan {
    pub taus: Vec<f64>,
    /// One curve per entry of the n list, same tau grid.
    pub curves: Vec<Vec<CurvePoint>>,
    /// Per tau column: true when the spread across sizes stays small.
    pub stable: Vec<bool>,
    /// Estimated crossing between the shrinking and stable regimes.
    pub crossing: Option<f64>,
}

/// Sweeps m^2/n^2 over the tau grid for each n and locates where the size
/// dependence flips from shrinking in n to stable across n. A column is
/// "stable" when the spread across the n list stays within 20% of its
/// largest value; the crossing is the midpoint of the first flip.
pub fn transition_scan(n_list: &[u32], taus: &[f64]) -> Result<TransitionScan, Error> {
    assert!(n_list.len() >= 2, "need at least two sizes to compare");
    let curves: Result<Vec<Vec<CurvePoint>>, Error> =
        n_list.par_iter().map(|&n| curve(n, taus)).collect();
    let curves = curves?;
    let stable: Vec<bool> = (0..taus.len())
        .map(|j| {
            let vals: Vec<f64> = curves.iter().map(|c| c[j].m2_over_n2).collect();
            let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            max - min <= 0.2 * max
        })
        .collect();
    let crossing = stable
        .windows(2)
        .position(|w| !w[0] && w[1])
        .map(|j| 0.5 * (taus[j] + taus[j + 1]));
    Ok(TransitionScan { taus: taus.to_vec(), curves, stable, crossing })
}

// ---------------------------------------------------------------------------
// Large-deviation rate function for the emergence of a macroscopic cycle.

/// (1-beta) log(1-beta) + beta log beta + tau beta (1-beta), with the
/// x log x limits filled in at the endpoints.
pub fn rate_function(beta: f64, tau: f64) -> f64 {
    assert!((0.0..=1.0).contains(&beta));
    let xlogx = |x: f64| if x <= 0.0 { 0.0 } else { x * x.ln() };
    xlogx(1.0 - beta) + xlogx(beta) + tau * beta * (1.0 - beta)
}

fn rate_derivative(beta: f64, tau: f64) -> f64 {
    (beta / (1.0 - beta)).ln() + tau * (1.0 - 2.0 * beta)
}

/// Global minimiser of the rate function on [0, 1/2]: dense grid scan, then
/// bisection on the derivative. Returns exactly one half whenever the
/// minimum sits at the right endpoint.
pub fn rate_argmin(tau: f64) -> f64 {
    const GRID: usize = 1000;
    let beta_at = |j: usize| 0.5 * j as f64 / GRID as f64;
    let mut best = 0usize;
    let mut best_val = f64::INFINITY;
    for j in 0..=GRID {
        let v = rate_function(beta_at(j), tau);
        if v < best_val {
            best_val = v;
            best = j;
        }
    }
    let mut lo = beta_at(best.saturating_sub(1)).max(1e-12);
    let mut hi = beta_at((best + 1).min(GRID));
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if rate_derivative(mid, tau) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = 0.5 * (lo + hi);
    // At the bifurcation the derivative vanishes quartically, so its
    // floating-point sign is noise within about 1e-6 of the endpoint; any
    // genuine interior minimum sits at least sqrt-of-tau-excess away.
    if 0.5 - c <= 1e-5 {
        0.5
    } else {
        c
    }
}

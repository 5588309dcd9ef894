//! Command line front end: curves, cross-checks, simulation, transition
//! scans and SVG plots for the mean-field interchange thermodynamics.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input or I/O
//! trouble, 3 internal numerical failure.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::bigint::BigInt;
use num::{One, Zero};

use heisenmf::meanfield::{
    self, curve_point_exact, expected_cycle_count, magnetisation_sq_exact, magnetisation_sq_log,
    partition_function_exact, partition_function_log, tau_grid, transition_scan,
    weighted_cycle_count_log, weighted_cycle_count_spectral, BigRational, CurvePoint,
    EXACT_MODE_MAX_N,
};
use heisenmf::oracles::heat::{cycle_type, heat_kernel_matrix, permutations, HeatKernel};
use heisenmf::oracles::mc::{
    simulate_interchange, McConfig, McEstimate, MC_MAX_N, MC_MIN_SAMPLES,
};
use heisenmf::oracles::quantum::quantum_observables;
use heisenmf::qpoly::QPoly;
use heisenmf::repnum::{character, class_size, spectral_coefficient};
use heisenmf::symfunc::{frobenius_characteristic, schur, ClassFunction, SymPoly};
use heisenmf::young::{partitions, two_row_partitions, Partition};
use heisenmf::Error;

#[derive(Parser)]
#[command(name = "heisenmf", version, about = "Mean-field Heisenberg ferromagnet thermodynamics")]
struct Cli {
    /// Worker thread count; overrides the MF_THREADS environment variable.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate log Z and the squared magnetisation over a tau grid.
    Curve(CurveArgs),
    /// Run internal cross-checks between independent computation routes.
    Verify(VerifyArgs),
    /// Monte Carlo simulation compared against the deterministic values.
    Simulate(SimulateArgs),
    /// Locate where magnetisation curves stop shrinking with system size.
    Transition(TransitionArgs),
    /// Plot m^2/n^2 curves from a curve CSV as an SVG document.
    Svg(SvgArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Smallest rescaled time tau = n t.
    #[arg(long, default_value_t = 0.0)]
    tau_min: f64,
    /// Largest rescaled time.
    #[arg(long, default_value_t = 4.0)]
    tau_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 41)]
    steps: usize,
}

#[derive(Args)]
struct CurveArgs {
    /// System size, at least 2; repeat the flag for several sizes.
    #[arg(long = "n", required = true)]
    sizes: Vec<u32>,
    #[command(flatten)]
    grid: GridArgs,
    /// Evaluate through exact rational polynomials (small sizes only).
    #[arg(long)]
    exact: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest size for the exact suites (at most 8).
    #[arg(long, default_value_t = 7)]
    max_n: u32,
    /// "fast" caps the exact suites at n = 5; "full" honours max-n and adds
    /// the large-system route comparison.
    #[arg(long, default_value = "fast")]
    level: String,
    /// Force one check to fail, to exercise the failure path.
    #[cfg(debug_assertions)]
    #[arg(long)]
    inject_failure: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: u32,
    /// Rescaled time tau = n t.
    #[arg(long)]
    tau: f64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Longest cycle length reported on its own; defaults to min(5, n).
    #[arg(long)]
    k_max: Option<u32>,
}

#[derive(Args)]
struct TransitionArgs {
    /// Comma-separated system sizes, at least two.
    #[arg(long = "n-list", required = true, value_delimiter = ',')]
    sizes: Vec<u32>,
    #[command(flatten)]
    grid: GridArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SvgArgs {
    /// Input CSV in the curve format.
    #[arg(long = "in")]
    input: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("MF_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        if t == 0 {
            eprintln!("error: thread count must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {}", e);
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.cmd {
        Cmd::Curve(args) => cmd_curve(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Simulate(args) => cmd_simulate(args),
        Cmd::Transition(args) => cmd_transition(args),
        Cmd::Svg(args) => cmd_svg(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Numerical(e)) => {
            eprintln!("numerical failure: {}", e);
            ExitCode::from(3)
        }
    }
}

enum CliError {
    Input(String),
    Numerical(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => CliError::Input(msg),
            other => CliError::Numerical(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn check_grid(grid: &GridArgs) -> Result<Vec<f64>, CliError> {
    if !(grid.tau_min >= 0.0) || !(grid.tau_max >= grid.tau_min) {
        return Err(CliError::Input(format!(
            "bad tau range [{}, {}]",
            grid.tau_min, grid.tau_max
        )));
    }
    if grid.steps < 1 {
        return Err(CliError::Input("steps must be at least 1".into()));
    }
    if grid.steps > 1 && grid.tau_max == grid.tau_min {
        return Err(CliError::Input("degenerate tau range needs steps = 1".into()));
    }
    Ok(tau_grid(grid.tau_min, grid.tau_max, grid.steps))
}

fn check_sizes(sizes: &[u32], min_allowed: u32) -> Result<Vec<u32>, CliError> {
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sizes.len() {
        return Err(CliError::Input("duplicate sizes".into()));
    }
    if let Some(&bad) = sorted.iter().find(|&&n| n < min_allowed) {
        return Err(CliError::Input(format!("size {} is below {}", bad, min_allowed)));
    }
    Ok(sorted)
}

fn writer_for(out: &Option<String>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Twelve significant digits, trailing zeros stripped, scientific notation
/// for extreme magnitudes.
fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{}", x);
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("numeric exponent");
    if !(-4..12).contains(&exp) {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{}e{}", mant, exp)
    } else {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    }
}

const CURVE_HEADER: &str = "n,t,tau,log_Z,m2,m2_over_n,m2_over_n2";

fn cmd_curve(args: CurveArgs) -> Result<u8, CliError> {
    let taus = check_grid(&args.grid)?;
    let sizes = check_sizes(&args.sizes, 2)?;
    if args.exact {
        if let Some(&bad) = sizes.iter().find(|&&n| n > EXACT_MODE_MAX_N) {
            return Err(CliError::Input(format!(
                "exact mode supports n up to {}, got {}",
                EXACT_MODE_MAX_N, bad
            )));
        }
    }
    let mut rows: Vec<CurvePoint> = Vec::new();
    if args.exact {
        for &n in &sizes {
            for &tau in &taus {
                rows.push(curve_point_exact(n, tau)?);
            }
        }
    } else {
        for &n in &sizes {
            rows.extend(meanfield::curve(n, &taus)?);
        }
    }
    rows.sort_by(|a, b| a.tau.total_cmp(&b.tau).then(a.n.cmp(&b.n)));
    let mut w = writer_for(&args.out)?;
    writeln!(w, "{}", CURVE_HEADER)?;
    for p in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            p.n,
            fmt_g(p.t),
            fmt_g(p.tau),
            fmt_g(p.log_z),
            fmt_g(p.m2),
            fmt_g(p.m2_over_n),
            fmt_g(p.m2_over_n2)
        )?;
    }
    Ok(0)
}

// --------------------------------------------------------------------------
// verify

type CheckResult = Result<(), String>;

struct Verifier {
    failures: u32,
}

impl Verifier {
    fn run(&mut self, name: &str, outcome: CheckResult) {
        match outcome {
            Ok(()) => println!("ok   {}", name),
            Err(detail) => {
                println!("FAIL {}", name);
                println!("     first counterexample: {}", detail);
                self.failures += 1;
            }
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (2..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// First exponent where the two polynomials disagree, as an error string.
fn match_poly(context: &str, expected: &QPoly, got: &QPoly) -> CheckResult {
    if expected == got {
        return Ok(());
    }
    let mut exps: BTreeSet<u64> = expected.terms().map(|(e, _)| e).collect();
    exps.extend(got.terms().map(|(e, _)| e));
    for e in exps {
        let (want, have) = (expected.coeff(e), got.coeff(e));
        if want != have {
            return Err(format!(
                "{} exponent={} expected={} got={}",
                context, e, want, have
            ));
        }
    }
    unreachable!("unequal polynomials differ at some exponent");
}

/// First monomial where the two symmetric polynomials disagree.
fn match_sym(context: &str, expected: &SymPoly, got: &SymPoly) -> CheckResult {
    let diff = got.sub(expected);
    let first = diff.terms().next().map(|(e, _)| e.to_vec());
    match first {
        None => Ok(()),
        Some(expo) => Err(format!(
            "{} monomial={:?} expected={} got={}",
            context,
            expo,
            expected.coeff(&expo),
            got.coeff(&expo)
        )),
    }
}

/// The same weighted cycle observable through the closed form, the border
/// strip route and the summed character table.
fn routes_suite(max_n: u32) -> CheckResult {
    for n in 1..=max_n {
        let hk = HeatKernel::new(n);
        for k in 1..=n {
            let closed = meanfield::weighted_cycle_count_exact(n, k);
            match_poly(
                &format!("route=strips n={} k={}", n, k),
                &closed,
                &weighted_cycle_count_spectral(n, k),
            )?;
            match_poly(
                &format!("route=characters n={} k={}", n, k),
                &closed,
                &hk.weighted_cycle_count(k),
            )?;
        }
    }
    Ok(())
}

/// Hand-checked small polynomials, written out term by term.
fn anchors_suite() -> CheckResult {
    let q = |pairs: &[(u64, i64)]| QPoly::from_integer_coeffs(pairs);
    let z2 = partition_function_exact(2).expect("tiny size");
    match_poly("observable=Z n=2", &q(&[(0, 3), (2, 1)]), &z2)?;
    let z3 = partition_function_exact(3).expect("tiny size");
    match_poly("observable=Z n=3", &q(&[(0, 4), (3, 4)]), &z3)?;
    match_poly(
        "observable=weighted-fixed-points n=3 k=1",
        &q(&[(0, 6), (3, 16), (6, 2)]),
        &meanfield::weighted_cycle_count_exact(3, 1),
    )?;
    let (num, den) = magnetisation_sq_exact(3);
    match_poly("observable=m2-numerator n=3", &q(&[(0, 20), (3, 4)]), &num)?;
    match_poly("observable=m2-denominator n=3", &q(&[(0, 4), (3, 4)]), &den)?;
    Ok(())
}

/// Group-averaged character transforms of the cycle weights: only two-row
/// shapes survive the plain weight, and the k-weighted transform equals the
/// signed strip coefficient.
fn character_transform_suite(max_n: u32) -> CheckResult {
    for n in 1..=max_n {
        let classes = partitions(n);
        let n_fact = BigRational::from_integer(factorial(n));
        for lambda in partitions(n) {
            let inner = |f: &dyn Fn(&Partition) -> BigRational| -> BigRational {
                let mut acc = BigRational::zero();
                for c in &classes {
                    acc += f(c)
                        * BigRational::from_integer(class_size(c) * character(&lambda, c));
                }
                acc
            };
            let plain = inner(&|c| rat(1i64 << c.parts()));
            let expected = if lambda.parts() <= 2 {
                let a = lambda.row(1) as i64;
                let b = lambda.row(2) as i64;
                rat(a - b + 1) * n_fact.clone()
            } else {
                BigRational::zero()
            };
            if plain != expected {
                return Err(format!(
                    "identity=plain n={} lambda={:?} expected={} got={}",
                    n, lambda, expected, plain
                ));
            }
            for k in 1..=n {
                let weighted = inner(&|c| {
                    let count = c.rows().iter().filter(|&&r| r == k).count() as i64;
                    rat(count * (1i64 << c.parts()))
                });
                let coeff = spectral_coefficient(&lambda, k) * n_fact.clone();
                if weighted != coeff {
                    return Err(format!(
                        "identity=k-weighted n={} k={} lambda={:?} expected={} got={}",
                        n, k, lambda, coeff, weighted
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The cycle weight and its k-weighted variants decompose over staircase
/// determinants with the predicted multiplicities.
fn decomposition_suite(max_n: u32) -> CheckResult {
    for n in 1..=max_n {
        let v = n as usize;
        let mut plain = SymPoly::zero(v);
        for mu in two_row_partitions(n) {
            let w = rat(mu.row(1) as i64 - mu.row(2) as i64 + 1);
            plain = plain.add(&schur(&mu, v).scale(&w));
        }
        match_sym(
            &format!("decomposition=plain n={}", n),
            &plain,
            &frobenius_characteristic(&ClassFunction::cycle_weight(n), v),
        )?;
        for k in 1..=n {
            let f = ClassFunction::weighted_cycle_count(n, k);
            let mut base = SymPoly::zero(v);
            for mu in two_row_partitions(n - k) {
                let w = rat(mu.row(1) as i64 - mu.row(2) as i64 + 1);
                base = base.add(&schur(&mu, v).scale(&w));
            }
            let want = heisenmf::symfunc::power_sum(k, v)
                .mul(&base)
                .scale(&BigRational::new(BigInt::from(2), BigInt::from(k)));
            match_sym(
                &format!("decomposition=k-weighted n={} k={}", n, k),
                &want,
                &frobenius_characteristic(&f, v),
            )?;
        }
    }
    Ok(())
}

/// Exact thermal traces of the spin system against the interchange values
/// at halved time.
fn quantum_suite(max_n: u32) -> CheckResult {
    for n in 2..=max_n {
        let (num, den) = magnetisation_sq_exact(n);
        let z = partition_function_exact(n).expect("small size");
        for &beta in &[0.25, 1.0] {
            let t = beta / 2.0;
            let obs = quantum_observables(n, beta);
            let m2 = num.eval_exp(t) / den.eval_exp(t);
            if !((obs.m_sq - m2).abs() <= 1e-8 * m2) {
                return Err(format!(
                    "observable=m2 n={} beta={} expected={} got={}",
                    n, beta, m2, obs.m_sq
                ));
            }
            let shift = beta * (n * (n - 1)) as f64 / 8.0;
            let diff = obs.log_z - z.eval_exp(t).ln() - shift;
            if !(diff.abs() <= 1e-8 * shift.max(1.0)) {
                return Err(format!(
                    "observable=log_Z n={} beta={} residue={}",
                    n, beta, diff
                ));
            }
        }
    }
    Ok(())
}

/// Transposition-walk probabilities from the character sum against the
/// uniformised generator power series.
fn walk_suite(max_n: u32) -> CheckResult {
    for n in 2..=max_n {
        let hk = HeatKernel::new(n);
        let perms = permutations(n);
        for &t in &[0.2, 1.5] {
            let probs = heat_kernel_matrix(n, t);
            for (idx, perm) in perms.iter().enumerate() {
                let class = cycle_type(perm);
                let want = hk.prob_poly(&class).eval_exp(t);
                if !((probs[idx] - want).abs() < 1e-10) {
                    return Err(format!(
                        "n={} t={} class={:?} expected={} got={}",
                        n, t, class, want, probs[idx]
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Log-space pipeline against exact rational evaluation.
fn float_suite() -> CheckResult {
    for &n in &[6u32, 10] {
        let zq = partition_function_exact(n).expect("small size");
        let (num, den) = magnetisation_sq_exact(n);
        for &tau in &[0.3, 1.2, 2.8] {
            let t = tau / n as f64;
            let z = partition_function_log(n, t)
                .map_err(|e| format!("observable=log_Z n={} tau={}: {}", n, tau, e))?
                .log_abs();
            let z_want = zq.eval_exp(t).ln();
            if !((z - z_want).abs() <= 1e-10 * z.abs().max(1.0)) {
                return Err(format!(
                    "observable=log_Z n={} tau={} expected={} got={}",
                    n, tau, z_want, z
                ));
            }
            let m = magnetisation_sq_log(n, t)
                .map_err(|e| format!("observable=m2 n={} tau={}: {}", n, tau, e))?;
            let m_want = num.eval_exp(t) / den.eval_exp(t);
            if !((m - m_want).abs() <= 1e-10 * m_want) {
                return Err(format!(
                    "observable=m2 n={} tau={} expected={} got={}",
                    n, tau, m_want, m
                ));
            }
        }
    }
    Ok(())
}

/// Both float routes at production scale; disagreement surfaces as Err
/// inside the partition function itself.
fn big_system_suite() -> CheckResult {
    for &tau in &[0.5, 2.0, 3.5] {
        let n = 2000u32;
        let z = partition_function_log(n, tau / n as f64)
            .map_err(|e| format!("n={} tau={}: {}", n, tau, e))?;
        if z.sign() != 1 {
            return Err(format!("n={} tau={}: nonpositive partition function", n, tau));
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    if args.max_n > 8 {
        return Err(CliError::Input("max-n must be <= 8".into()));
    }
    let full = match args.level.as_str() {
        "fast" => false,
        "full" => true,
        other => return Err(CliError::Input(format!("unknown level {:?}", other))),
    };
    let exact_n = if full { args.max_n } else { args.max_n.min(5) };
    let mut v = Verifier { failures: 0 };
    v.run("small-system polynomial anchors", anchors_suite());
    v.run(
        "cycle observables via closed form, strips and characters",
        routes_suite(exact_n),
    );
    v.run(
        "character transforms of the cycle weights",
        character_transform_suite(exact_n),
    );
    v.run(
        "staircase decomposition of the cycle weights",
        decomposition_suite(exact_n),
    );
    v.run(
        "thermal traces of the spin system match the dynamics",
        quantum_suite(args.max_n.clamp(2, if full { 6 } else { 4 })),
    );
    v.run(
        "walk probabilities match the uniformised generator",
        walk_suite(if full { 5 } else { 4 }),
    );
    v.run("float pipeline reproduces exact values", float_suite());
    if full {
        v.run("large-system routes agree at tight tolerance", big_system_suite());
    }

    #[cfg(debug_assertions)]
    if args.inject_failure {
        v.run(
            "deliberately injected failure",
            Err("forced by --inject-failure".into()),
        );
    }

    if v.failures == 0 {
        println!("all checks passed");
        Ok(0)
    } else {
        println!("{} check(s) failed", v.failures);
        Ok(1)
    }
}

// --------------------------------------------------------------------------
// simulate

fn report_estimate(w: &mut dyn Write, name: &str, est: &McEstimate, reference: f64) -> io::Result<()> {
    let sigma = if est.std_error == 0.0 && est.value == reference {
        0.0
    } else {
        est.z_score(reference)
    };
    writeln!(
        w,
        "{}: {} +- {} (deterministic {}, deviation {} sigma)",
        name,
        fmt_g(est.value),
        fmt_g(est.std_error),
        fmt_g(reference),
        fmt_g(sigma)
    )
}

fn cmd_simulate(args: SimulateArgs) -> Result<u8, CliError> {
    if args.n < 2 || args.n > MC_MAX_N {
        return Err(CliError::Input(format!(
            "simulation supports 2 <= n <= {}",
            MC_MAX_N
        )));
    }
    if !(args.tau >= 0.0) {
        return Err(CliError::Input("tau must be nonnegative".into()));
    }
    if args.samples < MC_MIN_SAMPLES {
        return Err(CliError::Input(format!(
            "need at least {} samples, got {}",
            MC_MIN_SAMPLES, args.samples
        )));
    }
    let k_max = args.k_max.unwrap_or_else(|| 5.min(args.n));
    if k_max < 1 || k_max > args.n {
        return Err(CliError::Input(format!(
            "k-max must lie in 1..={}, got {}",
            args.n, k_max
        )));
    }
    let t = args.tau / args.n as f64;
    let mut cfg = McConfig::new(args.n, t, args.samples, args.seed);
    cfg.k_max = k_max;
    let res = simulate_interchange(&cfg);
    let out = io::stdout();
    let mut w = out.lock();
    writeln!(w, "n = {}, tau = {}, t = {}", args.n, args.tau, fmt_g(t))?;
    writeln!(
        w,
        "samples = {} over {} replicas, seed = {}",
        res.samples_used, cfg.replicas, res.seed
    )?;
    let z_ref = partition_function_log(args.n, t)?.to_f64();
    report_estimate(&mut w, "partition function", &res.partition_function, z_ref)?;
    let m_ref = magnetisation_sq_log(args.n, t)?;
    report_estimate(&mut w, "squared magnetisation", &res.magnetisation_sq, m_ref)?;
    for k in 1..=k_max {
        let w_ref = weighted_cycle_count_log(args.n, k, t)?.to_f64();
        report_estimate(
            &mut w,
            &format!("weighted {}-cycle count", k),
            &res.weighted_cycle_counts[k as usize - 1],
            w_ref,
        )?;
    }
    let fix_ref = expected_cycle_count(args.n, 1, t)?.to_f64();
    report_estimate(&mut w, "fixed points", &res.fixed_points, fix_ref)?;
    Ok(0)
}

// --------------------------------------------------------------------------
// transition

fn cmd_transition(args: TransitionArgs) -> Result<u8, CliError> {
    let taus = check_grid(&args.grid)?;
    let sizes = check_sizes(&args.sizes, 2)?;
    if sizes.len() < 2 {
        return Err(CliError::Input("need at least two sizes".into()));
    }
    let scan = transition_scan(&sizes, &taus)?;
    let mut w = writer_for(&args.out)?;
    write!(w, "tau")?;
    for &n in &sizes {
        write!(w, ",m2_over_n2[n={}]", n)?;
    }
    writeln!(w, ",regime")?;
    for (j, &tau) in scan.taus.iter().enumerate() {
        write!(w, "{}", fmt_g(tau))?;
        let vals: Vec<f64> = scan.curves.iter().map(|c| c[j].m2_over_n2).collect();
        for &v in &vals {
            write!(w, ",{}", fmt_g(v))?;
        }
        let regime = if scan.stable[j] {
            "stable"
        } else if vals.windows(2).all(|p| p[0] > p[1]) {
            "decreasing"
        } else {
            "mixed"
        };
        writeln!(w, ",{}", regime)?;
    }
    match scan.crossing {
        Some(c) => writeln!(w, "# size dependence flips near tau = {}", fmt_g(c))?,
        None => writeln!(w, "# no flip inside the scanned window")?,
    }
    Ok(0)
}

// --------------------------------------------------------------------------
// svg

const SVG_PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Curve CSV rows grouped by size: (n, sorted (tau, m2_over_n2) pairs).
fn read_curve_file(path: &str) -> Result<Vec<(u32, Vec<(f64, f64)>)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path, e)))?;
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, h)) => h.trim_end_matches('\r'),
        None => return Err(CliError::Input("empty input file".into())),
    };
    if header != CURVE_HEADER {
        return Err(CliError::Input(format!(
            "header must read exactly {:?}",
            CURVE_HEADER
        )));
    }
    let mut groups: BTreeMap<u32, Vec<(f64, f64)>> = BTreeMap::new();
    for (idx, raw) in lines {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(CliError::Input(format!(
                "line {}: expected 7 fields, found {}",
                idx + 1,
                fields.len()
            )));
        }
        let bad = |what: &str| {
            CliError::Input(format!("line {}: unreadable {} field", idx + 1, what))
        };
        let n: u32 = fields[0].parse().map_err(|_| bad("size"))?;
        let mut nums = [0.0f64; 6];
        for (slot, field) in nums.iter_mut().zip(&fields[1..]) {
            *slot = field.parse().map_err(|_| bad("numeric"))?;
        }
        let (tau, m2n2) = (nums[1], nums[5]);
        if !tau.is_finite() || !m2n2.is_finite() {
            return Err(bad("finite"));
        }
        groups.entry(n).or_default().push((tau, m2n2));
    }
    if groups.is_empty() {
        return Err(CliError::Input("no data rows after the header".into()));
    }
    let mut series: Vec<(u32, Vec<(f64, f64)>)> = groups.into_iter().collect();
    for (_, pts) in series.iter_mut() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Ok(series)
}

fn cmd_svg(args: SvgArgs) -> Result<u8, CliError> {
    let series = read_curve_file(&args.input)?;
    let mut w = writer_for(&args.out)?;
    render_svg(&mut w, &series)?;
    Ok(0)
}

fn render_svg(w: &mut dyn Write, series: &[(u32, Vec<(f64, f64)>)]) -> Result<(), CliError> {
    let (width, height) = (800.0, 520.0);
    let (left, right, top, bottom) = (70.0, 20.0, 20.0, 50.0);
    let plot_w = width - left - right;
    let plot_h = height - top - bottom;
    let all = series.iter().flat_map(|(_, pts)| pts.iter());
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_top = 0.0f64;
    for &(tau, v) in all {
        x_min = x_min.min(tau);
        x_max = x_max.max(tau);
        y_top = y_top.max(v);
    }
    if x_min == x_max {
        // A single tau column still gets a nonempty axis.
        x_min -= 0.5;
        x_max += 0.5;
    }
    let y_max = y_top.max(1e-12) * 1.05;
    let sx = |tau: f64| left + (tau - x_min) / (x_max - x_min) * plot_w;
    let sy = |v: f64| top + (1.0 - v / y_max) * plot_h;
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        width, height, width, height
    )?;
    writeln!(w, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>", width, height)?;
    // Axes.
    writeln!(
        w,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        left,
        top + plot_h,
        left + plot_w,
        top + plot_h
    )?;
    writeln!(
        w,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        left, top, left, top + plot_h
    )?;
    for i in 0..=5 {
        let tau = x_min + (x_max - x_min) * i as f64 / 5.0;
        let x = sx(tau);
        writeln!(
            w,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>",
            top + plot_h,
            top + plot_h + 5.0
        )?;
        writeln!(
            w,
            "<text x=\"{x}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            top + plot_h + 20.0,
            fmt_short(tau)
        )?;
        let v = y_max * i as f64 / 5.0;
        let y = sy(v);
        writeln!(
            w,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\"/>",
            left - 5.0,
            left
        )?;
        writeln!(
            w,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            left - 8.0,
            y + 4.0,
            fmt_short(v)
        )?;
    }
    writeln!(
        w,
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">rescaled time tau</text>",
        left + plot_w / 2.0,
        height - 10.0
    )?;
    writeln!(
        w,
        "<text x=\"16\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">m2 / n2</text>",
        top + plot_h / 2.0,
        top + plot_h / 2.0
    )?;
    // Mean-field transition threshold, when it lies inside the window.
    if x_min <= 2.0 && 2.0 <= x_max {
        let x = sx(2.0);
        writeln!(
            w,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>",
            top,
            top + plot_h
        )?;
        writeln!(
            w,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#666666\">tau = 2</text>",
            x + 5.0,
            top + 14.0
        )?;
    }
    for (ci, (n, points)) in series.iter().enumerate() {
        let colour = SVG_PALETTE[ci % SVG_PALETTE.len()];
        if points.len() == 1 {
            let (tau, v) = points[0];
            writeln!(
                w,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{}\"/>",
                sx(tau),
                sy(v),
                colour
            )?;
        } else {
            let path: Vec<String> = points
                .iter()
                .map(|&(tau, v)| format!("{:.2},{:.2}", sx(tau), sy(v)))
                .collect();
            writeln!(
                w,
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\" points=\"{}\"/>",
                colour,
                path.join(" ")
            )?;
        }
        let ly = top + 18.0 + 18.0 * ci as f64;
        writeln!(
            w,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"3\"/>",
            left + plot_w - 120.0,
            ly,
            left + plot_w - 95.0,
            ly,
            colour
        )?;
        writeln!(
            w,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">n = {}</text>",
            left + plot_w - 88.0,
            ly + 4.0,
            n
        )?;
    }
    writeln!(w, "</svg>")?;
    Ok(())
}

fn fmt_short(x: f64) -> String {
    let s = format!("{:.3}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

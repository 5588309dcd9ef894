//! Direct Monte Carlo simulation of the interchange dynamics on the
//! complete graph: exponential clocks on every pair, composition on the
//! left. Estimates carry standard errors from replica means so deviations
//! from the deterministic pipeline can be scored in sigma units.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

/// Simulation plan. Replicas are independent streams seeded from
/// (seed, replica index) and double as the batches for error bars.
#[derive(Clone, Debug)]
pub struct McConfig {
    pub n: u32,
    pub t: f64,
    /// Total sample budget, split evenly across replicas.
    pub samples: u64,
    pub replicas: u32,
    pub seed: u64,
    /// Longest cycle length that gets its own weighted-count estimate.
    pub k_max: u32,
}

impl McConfig {
    pub fn new(n: u32, t: f64, samples: u64, seed: u64) -> McConfig {
        McConfig { n, t, samples, replicas: 50, seed, k_max: 5.min(n) }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// Deviation from a reference value in units of the standard error.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.value - reference) / self.std_error
    }
}

#[derive(Clone, Debug)]
pub struct McResults {
    /// E(2^cycles), the partition function.
    pub partition_function: McEstimate,
    /// Squared magnetisation via per-replica ratio of means.
    pub magnetisation_sq: McEstimate,
    /// E(alpha_k 2^cycles) for k = 1..=k_max; unnormalised, like Z.
    pub weighted_cycle_counts: Vec<McEstimate>,
    /// Plain expected fixed-point count, no cycle weight.
    pub fixed_points: McEstimate,
    pub samples_used: u64,
    pub seed: u64,
}

/// Largest system the simulator accepts; weights 2^cycles stay well within
/// exact f64 range.
pub const MC_MAX_N: u32 = 40;

/// Budget floors: enough samples to be worth reporting, enough replicas for
/// the batch-means error bars to mean something.
pub const MC_MIN_SAMPLES: u64 = 10_000;
pub const MC_MIN_REPLICAS: u32 = 30;

struct ReplicaMeans {
    weight: f64,
    mass: f64,
    weighted_counts: Vec<f64>,
    fix: f64,
}

pub fn simulate_interchange(cfg: &McConfig) -> McResults {
    assert!(cfg.n >= 2 && cfg.n <= MC_MAX_N);
    assert!(cfg.t >= 0.0);
    assert!(cfg.samples >= MC_MIN_SAMPLES, "need at least {} samples", MC_MIN_SAMPLES);
    assert!(cfg.replicas >= MC_MIN_REPLICAS, "need at least {} replicas", MC_MIN_REPLICAS);
    assert!(cfg.k_max >= 1 && cfg.k_max <= cfg.n);
    let per_replica = cfg.samples / cfg.replicas as u64;
    let means: Vec<ReplicaMeans> = (0..cfg.replicas)
        .into_par_iter()
        .map(|r| run_replica(cfg, r, per_replica))
        .collect();
    // Serial merge in replica order keeps results independent of threading.
    let weights: Vec<f64> = means.iter().map(|m| m.weight).collect();
    let ratios: Vec<f64> = means.iter().map(|m| m.mass / m.weight).collect();
    let fixes: Vec<f64> = means.iter().map(|m| m.fix).collect();
    let weighted_cycle_counts = (0..cfg.k_max as usize)
        .map(|i| {
            let col: Vec<f64> = means.iter().map(|m| m.weighted_counts[i]).collect();
            mean_and_error(&col)
        })
        .collect();
    McResults {
        partition_function: mean_and_error(&weights),
        magnetisation_sq: mean_and_error(&ratios),
        weighted_cycle_counts,
        fixed_points: mean_and_error(&fixes),
        samples_used: per_replica * cfg.replicas as u64,
        seed: cfg.seed,
    }
}

fn mean_and_error(xs: &[f64]) -> McEstimate {
    let r = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / r;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (r - 1.0);
    McEstimate { value: mean, std_error: (var / r).sqrt() }
}

fn replica_rng(seed: u64, replica: u32) -> ChaCha12Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..12].copy_from_slice(&replica.to_le_bytes());
    ChaCha12Rng::from_seed(bytes)
}

fn run_replica(cfg: &McConfig, replica: u32, samples: u64) -> ReplicaMeans {
    let n = cfg.n as usize;
    let mut rng = replica_rng(cfg.seed, replica);
    let rate = (cfg.n as f64) * (cfg.n as f64 - 1.0) / 2.0;
    let mut perm: Vec<u32> = Vec::with_capacity(n);
    let mut inv: Vec<u32> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut kcounts = vec![0u64; cfg.k_max as usize];
    let mut weight_sum = 0.0;
    let mut mass_sum = 0.0;
    let mut wk_sums = vec![0.0f64; cfg.k_max as usize];
    let mut fix_sum = 0.0;
    for _ in 0..samples {
        perm.clear();
        perm.extend(0..cfg.n);
        inv.clear();
        inv.extend(0..cfg.n);
        let mut time = 0.0;
        loop {
            // Inverse-CDF exponential clock; 1 - U avoids log of zero.
            let u: f64 = rng.gen();
            time += -(1.0 - u).ln() / rate;
            if time > cfg.t {
                break;
            }
            let i = rng.gen_range(0..cfg.n);
            let j = loop {
                let j = rng.gen_range(0..cfg.n);
                if j != i {
                    break j;
                }
            };
            // Left composition relabels the two values i and j.
            let xi = inv[i as usize] as usize;
            let xj = inv[j as usize] as usize;
            perm[xi] = j;
            perm[xj] = i;
            inv.swap(i as usize, j as usize);
        }
        let (cycles, sq) = cycle_stats(&perm, &mut seen, &mut kcounts);
        let w = (2.0f64).powi(cycles as i32);
        weight_sum += w;
        mass_sum += w * sq as f64;
        for (acc, &c) in wk_sums.iter_mut().zip(kcounts.iter()) {
            *acc += w * c as f64;
        }
        fix_sum += kcounts[0] as f64;
    }
    let s = samples as f64;
    ReplicaMeans {
        weight: weight_sum / s,
        mass: mass_sum / s,
        weighted_counts: wk_sums.iter().map(|x| x / s).collect(),
        fix: fix_sum / s,
    }
}

fn cycle_stats(perm: &[u32], seen: &mut [bool], kcounts: &mut [u64]) -> (u32, u64) {
    seen.iter_mut().for_each(|s| *s = false);
    kcounts.iter_mut().for_each(|c| *c = 0);
    let mut cycles = 0u32;
    let mut sq = 0u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        cycles += 1;
        sq += (len * len) as u64;
        if len <= kcounts.len() {
            kcounts[len - 1] += 1;
        }
    }
    (cycles, sq)
}

//! Dense spin-1/2 computation of the ferromagnet on the complete graph.
//! Exercises none of the symmetric-group machinery: the Hamiltonian is
//! built in the computational basis and its Boltzmann operator formed by
//! scaling and squaring, so thermal traces from here check the whole
//! probabilistic pipeline from one side.

#[derive(Clone, Copy, Debug)]
pub struct QuantumObservables {
    /// log of the canonical partition function at inverse temperature beta.
    pub log_z: f64,
    /// Thermal expectation of the squared z-magnetisation.
    pub m_sq: f64,
}

/// Spin coupling -1/4 on every pair, all three axes; observable is the
/// square of the total z spin (eigenvalue n - 2 popcount on basis states).
pub fn quantum_observables(n: u32, beta: f64) -> QuantumObservables {
    assert!((2..=8).contains(&n), "dense Boltzmann operator kept to 2^8");
    assert!(beta >= 0.0);
    let dim = 1usize << n;
    let mut h = vec![0.0f64; dim * dim];
    for s in 0..dim {
        let mut zz = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let bi = (s >> i) & 1;
                let bj = (s >> j) & 1;
                let zi = 1.0 - 2.0 * bi as f64;
                let zj = 1.0 - 2.0 * bj as f64;
                zz += zi * zj;
                if bi != bj {
                    // x and y couplings contribute only between states
                    // with the pair of bits exchanged.
                    let s2 = s ^ (1 << i) ^ (1 << j);
                    h[s * dim + s2] -= 0.5;
                }
            }
        }
        h[s * dim + s] = -0.25 * zz;
    }
    // Gershgorin lower bound keeps the scaled spectrum in [-width, 0], so
    // the exponential is a contraction and squaring stays well scaled.
    let mut lower = f64::INFINITY;
    for s in 0..dim {
        let mut off = 0.0;
        for s2 in 0..dim {
            if s2 != s {
                off += h[s * dim + s2].abs();
            }
        }
        lower = lower.min(h[s * dim + s] - off);
    }
    let mut x: Vec<f64> = (0..dim * dim)
        .map(|idx| {
            let diag = if idx / dim == idx % dim { lower } else { 0.0 };
            -beta * (h[idx] - diag)
        })
        .collect();
    let norm = inf_norm(&x, dim);
    let squarings = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as u32
    };
    let scale = 0.5f64.powi(squarings as i32);
    x.iter_mut().for_each(|v| *v *= scale);
    let mut boltz = taylor_exp(&x, dim);
    for _ in 0..squarings {
        boltz = matmul(&boltz, &boltz, dim);
    }
    let mut trace = 0.0;
    let mut weighted = 0.0;
    for s in 0..dim {
        let m = n as f64 - 2.0 * (s as u64).count_ones() as f64;
        let p = boltz[s * dim + s];
        trace += p;
        weighted += m * m * p;
    }
    QuantumObservables {
        log_z: trace.ln() - beta * lower,
        m_sq: weighted / trace,
    }
}

fn inf_norm(a: &[f64], dim: usize) -> f64 {
    (0..dim)
        .map(|r| a[r * dim..(r + 1) * dim].iter().map(|v| v.abs()).sum())
        .fold(0.0f64, f64::max)
}

fn matmul(a: &[f64], b: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0f64; dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let v = a[r * dim + k];
            if v != 0.0 {
                let row = &b[k * dim..(k + 1) * dim];
                let dst = &mut out[r * dim..(r + 1) * dim];
                for (d, &s) in dst.iter_mut().zip(row) {
                    *d += v * s;
                }
            }
        }
    }
    out
}

/// Truncated series for exp of a matrix with norm at most one half; the
/// tail beyond twenty terms is far below double precision.
fn taylor_exp(x: &[f64], dim: usize) -> Vec<f64> {
    let mut acc = vec![0.0f64; dim * dim];
    for s in 0..dim {
        acc[s * dim + s] = 1.0;
    }
    let mut term = acc.clone();
    for j in 1..=20u32 {
        term = matmul(&term, x, dim);
        let inv = 1.0 / j as f64;
        term.iter_mut().for_each(|v| *v *= inv);
        for (a, &t) in acc.iter_mut().zip(term.iter()) {
            *a += t;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn two_spins_by_hand() {
        // Triplet at -1/4, singlet at 3/4.
        for &beta in &[0.0, 0.1, 1.0, 2.5] {
            let obs = quantum_observables(2, beta);
            let z = 3.0 * (beta / 4.0).exp() + (-0.75 * beta).exp();
            assert!(close(obs.log_z, z.ln(), 1e-12), "beta={}", beta);
            let m = 8.0 / (3.0 + (-beta).exp());
            assert!(close(obs.m_sq, m, 1e-12), "beta={}: {} vs {}", beta, obs.m_sq, m);
        }
    }

    #[test]
    fn infinite_temperature_moments() {
        for n in 2..=6u32 {
            let obs = quantum_observables(n, 0.0);
            assert!(close(obs.log_z, (n as f64) * 2f64.ln(), 1e-12));
            assert!(close(obs.m_sq, n as f64, 1e-12));
        }
    }

    #[test]
    fn three_spins_match_polynomial_ratio() {
        // (20 + 4 q^3) / (4 + 4 q^3) with q = exp(-beta/2).
        for &beta in &[0.3, 0.7, 1.4] {
            let obs = quantum_observables(3, beta);
            let q3 = (-1.5 * beta).exp();
            let want = (20.0 + 4.0 * q3) / (4.0 + 4.0 * q3);
            assert!(close(obs.m_sq, want, 1e-12), "beta={}", beta);
        }
    }

    #[test]
    fn largest_supported_system_runs() {
        let obs = quantum_observables(8, 1.0);
        assert!(obs.log_z.is_finite());
        assert!(obs.m_sq > 8.0 && obs.m_sq < 64.0);
    }
}

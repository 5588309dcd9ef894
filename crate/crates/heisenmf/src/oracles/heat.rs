//! Heat kernel of the continuous-time random transposition walk on the
//! symmetric group, expanded over irreducible characters. Expectations of
//! cycle observables computed this way exercise the full character table
//! and are independent of both closed-form routes in `meanfield`.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};

use crate::qpoly::QPoly;
use crate::repnum::{character, class_size, dimension, eigenvalue};
use crate::young::{partitions, Partition};

type BigRational = Ratio<BigInt>;

/// Transposition-walk transition probabilities as polynomials in
/// q = exp(-t), one per conjugacy class (the walk is class-invariant).
pub struct HeatKernel {
    n: u32,
    class_polys: Vec<(Partition, QPoly)>,
}

/// Practical ceiling: the character table is computed in full.
pub const HEAT_KERNEL_MAX_N: u32 = 8;

impl HeatKernel {
    pub fn new(n: u32) -> HeatKernel {
        assert!(n >= 1 && n <= HEAT_KERNEL_MAX_N);
        let classes = partitions(n);
        let irreps = partitions(n);
        let n_fact: BigInt = (2..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one());
        let class_polys = classes
            .into_iter()
            .map(|class| {
                let mut poly = QPoly::zero();
                for lambda in &irreps {
                    let w = BigRational::new(
                        dimension(lambda) * character(lambda, &class),
                        n_fact.clone(),
                    );
                    if !w.is_zero() {
                        poly.add_term(eigenvalue(lambda) as u64, w);
                    }
                }
                (class, poly)
            })
            .collect();
        HeatKernel { n, class_polys }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Probability (polynomial in q) of one fixed permutation with the
    /// given cycle type.
    pub fn prob_poly(&self, class: &Partition) -> &QPoly {
        &self
            .class_polys
            .iter()
            .find(|(c, _)| c == class)
            .expect("cycle type of the wrong size")
            .1
    }

    /// Expectation of a cycle-type observable under the walk started from
    /// the identity.
    pub fn expectation_poly<F>(&self, f: F) -> QPoly
    where
        F: Fn(&Partition) -> BigRational,
    {
        let mut out = QPoly::zero();
        for (class, poly) in &self.class_polys {
            let v = f(class);
            if v.is_zero() {
                continue;
            }
            let w = v * BigRational::from_integer(class_size(class));
            out += &poly.scale(&w);
        }
        out
    }

    /// E(2^cycles): the partition function.
    pub fn partition_function(&self) -> QPoly {
        self.expectation_poly(|c| two_pow_cycles(c))
    }

    /// E(count_k 2^cycles) for k-cycles.
    pub fn weighted_cycle_count(&self, k: u32) -> QPoly {
        self.expectation_poly(|c| {
            let count = c.rows().iter().filter(|&&p| p == k).count();
            BigRational::from_integer(BigInt::from(count)) * two_pow_cycles(c)
        })
    }

    /// E((sum of squared cycle lengths) 2^cycles): the magnetisation
    /// numerator before normalisation.
    pub fn squared_cycle_mass(&self) -> QPoly {
        self.expectation_poly(|c| {
            let sq: u64 = c.rows().iter().map(|&p| p as u64 * p as u64).sum();
            BigRational::from_integer(BigInt::from(sq)) * two_pow_cycles(c)
        })
    }
}

fn two_pow_cycles(class: &Partition) -> BigRational {
    BigRational::from_integer(BigInt::one() << class.parts())
}

/// All permutations of 0..n in lexicographic order; entry i is the image
/// of i. The identity sits at index 0.
pub fn permutations(n: u32) -> Vec<Vec<u8>> {
    assert!(n >= 1 && n <= 8);
    fn rec(n: u8, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == n as usize {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v as usize] {
                used[v as usize] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n as u8, &mut Vec::new(), &mut vec![false; n as usize], &mut out);
    out
}

pub fn cycle_type(perm: &[u8]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts)
}

/// Walk probabilities at time t for every permutation (lexicographic
/// order), by uniformisation: condition on the Poisson number of clock
/// rings and walk the explicit transposition graph. Every term is
/// nonnegative, so nothing cancels, and the route shares no character
/// theory with [`HeatKernel`].
pub fn heat_kernel_matrix(n: u32, t: f64) -> Vec<f64> {
    assert!(n >= 1 && n <= 5, "factorial-size state space kept small");
    assert!(t >= 0.0);
    let perms = permutations(n);
    let index: HashMap<&[u8], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let size = perms.len();
    let mut neighbours: Vec<Vec<usize>> = Vec::with_capacity(size);
    let mut swapped = vec![0u8; n as usize];
    for perm in &perms {
        let mut row = Vec::with_capacity((n * (n - 1) / 2) as usize);
        for i in 0..n as u8 {
            for j in i + 1..n as u8 {
                // Left composition: the transposition relabels values.
                for (x, &v) in perm.iter().enumerate() {
                    swapped[x] = if v == i {
                        j
                    } else if v == j {
                        i
                    } else {
                        v
                    };
                }
                row.push(index[swapped.as_slice()]);
            }
        }
        neighbours.push(row);
    }
    let rate = (n * (n - 1) / 2) as f64;
    // term = (t A)^m e_id / m!; its mass is the Poisson weight (t rate)^m / m!.
    let mut term = vec![0.0f64; size];
    term[0] = 1.0;
    let mut acc = term.clone();
    let mut term_mass = 1.0f64;
    let mut acc_mass = 1.0f64;
    let mut next = vec![0.0f64; size];
    for m in 1..100_000u64 {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (s, row) in neighbours.iter().enumerate() {
            let v = term[s];
            if v != 0.0 {
                for &s2 in row {
                    next[s2] += v;
                }
            }
        }
        let scale = t / m as f64;
        for (dst, src) in term.iter_mut().zip(next.iter()) {
            *dst = src * scale;
        }
        for (a, &v) in acc.iter_mut().zip(term.iter()) {
            *a += v;
        }
        term_mass *= t * rate / m as f64;
        acc_mass += term_mass;
        if m as f64 > t * rate && term_mass < 1e-18 * acc_mass {
            break;
        }
    }
    let damp = (-rate * t).exp();
    acc.iter().map(|&x| x * damp).collect()
}

//! Symmetric polynomials in a fixed number of variables with exact rational
//! coefficients, plus the characteristic map sending class functions of the
//! symmetric group into them.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};

use crate::repnum::class_size;
use crate::young::{self, Partition};

pub type BigRational = Ratio<BigInt>;

type Terms = BTreeMap<Vec<u32>, BigRational>;

fn add_term(terms: &mut Terms, expo: Vec<u32>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(expo).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        let key = terms
            .iter()
            .find(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .unwrap();
        terms.remove(&key);
    }
}

/// Polynomial in `v` variables, invariant under permuting them. Stored as a
/// full monomial map; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    v: usize,
    terms: Terms,
}

impl SymPoly {
    pub fn zero(v: usize) -> Self {
        SymPoly { v, terms: Terms::new() }
    }

    pub fn one(v: usize) -> Self {
        let mut terms = Terms::new();
        terms.insert(vec![0; v], BigRational::one());
        SymPoly { v, terms }
    }

    pub fn variables(&self) -> usize {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, expo: &[u32]) -> BigRational {
        debug_assert_eq!(expo.len(), self.v);
        self.terms.get(expo).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Monomials in ascending exponent-vector order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.v, rhs.v);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            add_term(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.v, rhs.v);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            add_term(&mut out.terms, e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.v);
        }
        SymPoly {
            v: self.v,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &SymPoly) -> SymPoly {
        assert_eq!(self.v, rhs.v);
        let mut out = SymPoly::zero(self.v);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let expo: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_term(&mut out.terms, expo, c1 * c2);
            }
        }
        out
    }

    /// Full symmetry audit: every monomial's coefficient must match the one
    /// on the sorted representative of its orbit. Test helper.
    pub fn is_symmetric(&self) -> bool {
        let mut canonical: BTreeMap<Vec<u32>, (BigRational, usize)> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.sort_unstable_by(|a, b| b.cmp(a));
            match canonical.get_mut(&key) {
                Some((c0, count)) => {
                    if c0 != c {
                        return false;
                    }
                    *count += 1;
                }
                None => {
                    canonical.insert(key, (c.clone(), 1));
                }
            }
        }
        // Each orbit must be fully present.
        canonical
            .iter()
            .all(|(key, (_, count))| *count == orbit_size(key))
    }
}

fn orbit_size(sorted_desc: &[u32]) -> usize {
    let mut total = 1usize;
    let mut run = 1usize;
    let factorial = |m: usize| (1..=m).product::<usize>();
    for i in 1..sorted_desc.len() {
        if sorted_desc[i] == sorted_desc[i - 1] {
            run += 1;
        } else {
            total *= factorial(run);
            run = 1;
        }
    }
    total *= factorial(run);
    let full: usize = (1..=sorted_desc.len()).product();
    full / total
}

impl std::fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SymPoly(v={}, {} terms)", self.v, self.terms.len())
    }
}

/// Monomial symmetric polynomial: the orbit sum of x^lambda.
pub fn monomial_symmetric(lambda: &Partition, v: usize) -> SymPoly {
    assert!(lambda.parts() <= v, "{:?} needs more than {} variables", lambda, v);
    let mut expo: Vec<u32> = lambda.rows().to_vec();
    expo.resize(v, 0);
    expo.sort_unstable();
    let mut out = SymPoly::zero(v);
    // March through distinct permutations in lexicographic order.
    loop {
        out.terms.insert(expo.clone(), BigRational::one());
        if !next_permutation(&mut expo) {
            break;
        }
    }
    out
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Power sum x_1^k + ... + x_v^k.
pub fn power_sum(k: u32, v: usize) -> SymPoly {
    assert!(k >= 1);
    let mut out = SymPoly::zero(v);
    for i in 0..v {
        let mut e = vec![0u32; v];
        e[i] = k;
        out.terms.insert(e, BigRational::one());
    }
    out
}

/// Schur polynomial as the ratio of alternants: the staircase-shifted
/// monomial is pushed through the full chain of divided differences, each
/// an exact single-factor division, which performs the alternant division
/// without ever leaving integer coefficients.
pub fn schur(lambda: &Partition, v: usize) -> SymPoly {
    assert!(lambda.parts() <= v, "{:?} needs more than {} variables", lambda, v);
    if v == 0 {
        return SymPoly::one(0);
    }
    let mut expo = vec![0u32; v];
    for (j, e) in expo.iter_mut().enumerate() {
        *e = lambda.row(j + 1) + (v - 1 - j) as u32;
    }
    let mut terms = Terms::new();
    terms.insert(expo, BigRational::one());
    for m in (1..v).rev() {
        for i in 0..m {
            terms = divided_difference(&terms, i);
        }
    }
    SymPoly { v, terms }
}

/// (f - swap_i f) / (x_i - x_{i+1}), exact on each monomial.
fn divided_difference(terms: &Terms, i: usize) -> Terms {
    let mut out = Terms::new();
    for (expo, c) in terms {
        let p = expo[i];
        let q = expo[i + 1];
        if p == q {
            continue;
        }
        let (lo, hi) = (p.min(q), p.max(q));
        let coeff = if p > q { c.clone() } else { -c.clone() };
        for u in lo..hi {
            let mut e = expo.clone();
            e[i] = u;
            e[i + 1] = p + q - 1 - u;
            add_term(&mut out, e, coeff.clone());
        }
    }
    out
}

/// Slow Schur route: sum of content monomials over semistandard tableaux of
/// the given shape with entries in 1..=v. Oracle for [`schur`].
pub fn schur_tableaux(lambda: &Partition, v: usize) -> SymPoly {
    assert!(lambda.parts() <= v);
    let rows: Vec<u32> = lambda.rows().to_vec();
    let mut out = SymPoly::zero(v);
    let mut filling: Vec<Vec<u32>> = rows.iter().map(|&r| vec![0; r as usize]).collect();
    fill_tableau(&rows, v as u32, 0, 0, &mut filling, &mut out);
    out
}

fn fill_tableau(
    rows: &[u32],
    v: u32,
    r: usize,
    c: usize,
    filling: &mut Vec<Vec<u32>>,
    out: &mut SymPoly,
) {
    if r == rows.len() {
        let mut expo = vec![0u32; v as usize];
        for row in filling.iter() {
            for &entry in row {
                expo[(entry - 1) as usize] += 1;
            }
        }
        let terms = &mut out.terms;
        add_term(terms, expo, BigRational::one());
        return;
    }
    if c == rows[r] as usize {
        fill_tableau(rows, v, r + 1, 0, filling, out);
        return;
    }
    let min = {
        let left = if c > 0 { filling[r][c - 1] } else { 1 };
        let above = if r > 0 { filling[r - 1][c] + 1 } else { 1 };
        left.max(above)
    };
    for entry in min..=v {
        filling[r][c] = entry;
        fill_tableau(rows, v, r, c + 1, filling, out);
    }
}

/// Expansion of (power sum of degree k) times S_mu as a signed list of
/// Schur terms: one per diagram reachable by adding a k-box border strip,
/// signed by strip height.
pub fn power_sum_schur_expansion(k: u32, mu: &Partition) -> Vec<(Partition, i8)> {
    young::border_strips(mu, k)
        .into_iter()
        .map(|bs| {
            let sign = if bs.height % 2 == 1 { 1 } else { -1 };
            (bs.diagram, sign)
        })
        .collect()
}

/// Rational-valued class function of a fixed symmetric group, stored on
/// cycle types.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    n: u32,
    values: BTreeMap<Partition, BigRational>,
}

impl ClassFunction {
    pub fn from_fn(n: u32, f: impl Fn(&Partition) -> BigRational) -> Self {
        let values = young::partitions(n)
            .into_iter()
            .map(|ty| {
                let v = f(&ty);
                (ty, v)
            })
            .collect();
        ClassFunction { n, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self, cycle_type: &Partition) -> &BigRational {
        self.values
            .get(cycle_type)
            .unwrap_or_else(|| panic!("{:?} is not a cycle type of S_{}", cycle_type, self.n))
    }

    /// 2^(number of cycles).
    pub fn cycle_weight(n: u32) -> Self {
        ClassFunction::from_fn(n, |ty| {
            BigRational::from_integer(BigInt::from(2).pow(ty.parts() as u32))
        })
    }

    /// (number of k-cycles) * 2^(number of cycles).
    pub fn weighted_cycle_count(n: u32, k: u32) -> Self {
        ClassFunction::from_fn(n, |ty| {
            let count = ty.rows().iter().filter(|&&r| r == k).count();
            BigRational::from_integer(BigInt::from(count) * BigInt::from(2).pow(ty.parts() as u32))
        })
    }

    /// Number of k-cycles.
    pub fn cycle_count(n: u32, k: u32) -> Self {
        ClassFunction::from_fn(n, |ty| {
            let count = ty.rows().iter().filter(|&&r| r == k).count();
            BigRational::from_integer(BigInt::from(count))
        })
    }

    /// Irreducible character as a class function.
    pub fn from_character(lambda: &Partition) -> Self {
        ClassFunction::from_fn(lambda.size(), |ty| {
            BigRational::from_integer(crate::repnum::character(lambda, ty))
        })
    }

    /// Weighted average against the uniform measure: sum of value times
    /// class size over n!.
    pub fn mean(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (ty, v) in &self.values {
            acc += v * BigRational::from_integer(class_size(ty));
        }
        let mut order = BigInt::one();
        for i in 2..=self.n as u64 {
            order *= i;
        }
        acc / BigRational::from_integer(order)
    }
}

/// Characteristic map: sum over partitions lambda of n of the average of
/// `f` over the Young subgroup S_lambda, times the monomial symmetric
/// polynomial M_lambda. Needs v >= n so no monomial collapses.
pub fn frobenius_characteristic(f: &ClassFunction, v: usize) -> SymPoly {
    let n = f.n();
    assert!(v >= n as usize, "need at least {} variables, got {}", n, v);
    let mut out = SymPoly::zero(v);
    for lambda in young::partitions(n) {
        let avg = young_subgroup_average(f, &lambda);
        if avg.is_zero() {
            continue;
        }
        out = out.add(&monomial_symmetric(&lambda, v).scale(&avg));
    }
    out
}

/// Average of `f` over the parabolic subgroup with block sizes `lambda`,
/// computed by composing the per-block cycle type distributions.
fn young_subgroup_average(f: &ClassFunction, lambda: &Partition) -> BigRational {
    // Distribution over cycle types (rows sorted descending) with counts.
    let mut dist: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    dist.insert(Vec::new(), BigInt::one());
    let mut order = BigInt::one();
    for &block in lambda.rows() {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for block_type in young::partitions(block) {
            let size = class_size(&block_type);
            for (ty, count) in &dist {
                let mut merged = ty.clone();
                merged.extend_from_slice(block_type.rows());
                merged.sort_unstable_by(|a, b| b.cmp(a));
                *next.entry(merged).or_insert_with(BigInt::zero) += count * &size;
            }
        }
        dist = next;
        for i in 2..=block as u64 {
            order *= i;
        }
    }
    let mut acc = BigRational::zero();
    for (ty, count) in dist {
        let ty = if ty.is_empty() {
            Partition::empty()
        } else {
            Partition::new(ty)
        };
        acc += f.value(&ty) * BigRational::from_integer(count);
    }
    acc / BigRational::from_integer(order)
}

//! Dimensions, characters and heat-kernel eigenvalues for irreducible
//! representations of the symmetric group, indexed by partitions.

use std::collections::HashMap;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};

use crate::young::{self, Partition};

pub type BigRational = Ratio<BigInt>;

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Dimension of the irreducible representation indexed by `lambda`, from the
/// factorial quotient over first-column hook lengths.
pub fn dimension(lambda: &Partition) -> BigInt {
    let hooks = lambda.hook_numbers();
    let mut num = factorial(lambda.size() as u64);
    for w in 0..hooks.len() {
        for s in w + 1..hooks.len() {
            num *= BigInt::from(hooks[w] - hooks[s]);
        }
    }
    let mut den = BigInt::one();
    for &h in &hooks {
        den *= factorial(h as u64);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Rate at which the representation `lambda` decays under the interchange
/// dynamics: binomial(n,2) plus the content sum of the diagram.
pub fn eigenvalue(lambda: &Partition) -> i64 {
    let n = lambda.size() as i64;
    n * (n - 1) / 2 + lambda.content_sum()
}

/// The eigenvalue of the diagram obtained by appending a k-box strip tail at
/// row `i` of `mu` and wrapping, written without running the wrap:
/// binom(n,2) + content(mu) + k (i - mu_i - (k+1)/2) with n = |mu| + k.
pub fn shifted_eigenvalue(mu: &Partition, k: u32, i: usize) -> i64 {
    assert!(k >= 1 && i >= 1);
    let n = (mu.size() + k) as i64;
    let k = k as i64;
    let mu_i = mu.row(i) as i64;
    let twice_shift = k * (2 * (i as i64 - mu_i) - k - 1);
    debug_assert_eq!(twice_shift % 2, 0);
    n * (n - 1) / 2 + mu.content_sum() + twice_shift / 2
}

/// Signed dimension attached to placing a k-strip tail at row `i` of a
/// diagram with at most two rows: the factorial product over the hook
/// numbers of the shifted shape. Zero exactly when the wrap fails to
/// produce a partition; otherwise +-dimension of the wrapped diagram with
/// sign (-1)^(height+1).
pub fn signed_dimension(mu: &Partition, k: u32, i: usize) -> BigRational {
    assert!(mu.parts() <= 2, "two-row diagrams only: {:?}", mu);
    assert!(
        (1..=k as usize + 2).contains(&i),
        "placement row {} outside [1, {}]",
        i,
        k + 2
    );
    let n = mu.size() + k;
    // Rows below parts(mu)+k can never wrap to a partition; the hook
    // product vanishes there anyway, but place_strip refuses them.
    if i > mu.parts() + k as usize {
        return BigRational::zero();
    }
    let hooks = young::place_strip(mu, k, i).hook_numbers();
    let mut num = factorial(n as u64);
    for w in 0..hooks.len() {
        for s in w + 1..hooks.len() {
            num *= BigInt::from(hooks[w] - hooks[s]);
        }
    }
    let mut den = BigInt::one();
    for &h in &hooks {
        debug_assert!(h >= 0);
        den *= factorial(h as u64);
    }
    BigRational::new(num, den)
}

/// Closed forms for [`signed_dimension`] on mu = [a, b]: explicit factorial
/// quotients for rows 1 and 2 and a binomial expression below them. Test
/// oracle for the hook-product route.
pub fn signed_dimension_closed(a: u32, b: u32, k: u32, i: usize) -> BigRational {
    assert!(a >= b && k >= 1 && (1..=k as usize + 2).contains(&i));
    let n = (a + b + k) as u64;
    let (a, b, k) = (a as i64, b as i64, k as i64);
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    match i {
        1 => {
            // Rows (a+k, b): hooks a+k+1, b.
            BigRational::new(
                factorial(n) * BigInt::from(a + k + 1 - b),
                factorial((a + k + 1) as u64) * factorial(b as u64),
            )
        }
        2 => {
            // Rows (a, b+k): hooks a+1, b+k.
            BigRational::new(
                factorial(n) * BigInt::from(a + 1 - b - k),
                factorial((a + 1) as u64) * factorial((b + k) as u64),
            )
        }
        _ => {
            let i = i as i64;
            let multinomial = BigRational::new(
                factorial(n),
                factorial((k - 1) as u64) * factorial((a + 1) as u64) * factorial(b as u64),
            );
            let binom = binomial(k - 1, i - 3);
            let ratio = BigRational::new(
                BigInt::from((a + i - 1 - k) * (b + i - 2 - k)),
                BigInt::from((a + i - 1) * (b + i - 2)),
            );
            let sign = if i % 2 == 0 { -1 } else { 1 };
            int(a + 1 - b) / int(k) * multinomial * int(sign) * binom * ratio
        }
    }
}

fn binomial(n: i64, k: i64) -> BigRational {
    if k < 0 || k > n {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    BigRational::new(acc, factorial(k as u64))
}

/// One nonzero coefficient of the transform of the weighted k-cycle count.
#[derive(Clone, Debug)]
pub struct SpectralCoefficient {
    pub lambda: Partition,
    pub k: u32,
    pub value: BigRational,
}

/// Coefficient of the representation `lambda` in the transform of the
/// weighted k-cycle count: (2/k) sum of (a-b+1)(-1)^(height+1) over all
/// two-row diagrams [a,b] of n-k that sit inside `lambda` with a border
/// strip as complement. Zero when no such diagram exists.
pub fn spectral_coefficient(lambda: &Partition, k: u32) -> BigRational {
    let n = lambda.size();
    assert!(k >= 1 && k <= n);
    let mut acc = BigInt::zero();
    for inner in young::two_row_partitions(n - k) {
        if let Some(height) = young::skew_border_strip(lambda, &inner) {
            let a = inner.row(1) as i64;
            let b = inner.row(2) as i64;
            let sign = if height % 2 == 1 { 1 } else { -1 };
            acc += BigInt::from((a - b + 1) * sign);
        }
    }
    BigRational::new(BigInt::from(2) * acc, BigInt::from(k))
}

/// The nonzero spectral coefficients over all partitions of `n`.
pub fn spectral_support(n: u32, k: u32) -> Vec<SpectralCoefficient> {
    young::partitions(n)
        .into_iter()
        .filter_map(|lambda| {
            let value = spectral_coefficient(&lambda, k);
            if value.is_zero() {
                None
            } else {
                Some(SpectralCoefficient { lambda, k, value })
            }
        })
        .collect()
}

/// Number of permutations with the given cycle type.
pub fn class_size(cycle_type: &Partition) -> BigInt {
    let n = cycle_type.size() as u64;
    let mut multiplicity: HashMap<u32, u64> = HashMap::new();
    for &part in cycle_type.rows() {
        *multiplicity.entry(part).or_insert(0) += 1;
    }
    let mut den = BigInt::one();
    for (&part, &m) in &multiplicity {
        den *= BigInt::from(part).pow(m as u32);
        den *= factorial(m);
    }
    factorial(n) / den
}

type CharKey = (Vec<u32>, Vec<u32>);

static CHAR_CACHE: Mutex<Option<HashMap<CharKey, BigInt>>> = Mutex::new(None);

/// Irreducible character of `lambda` at the class `cycle_type`, by repeated
/// border-strip removal on the first-column hook set. Memoized; the cache is
/// a process-wide map behind a mutex.
pub fn character(lambda: &Partition, cycle_type: &Partition) -> BigInt {
    assert_eq!(
        lambda.size(),
        cycle_type.size(),
        "character of {:?} evaluated at a class of the wrong group: {:?}",
        lambda,
        cycle_type
    );
    let mut parts = cycle_type.rows().to_vec();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    character_rec(lambda.rows().to_vec(), parts)
}

fn character_rec(lambda: Vec<u32>, remaining: Vec<u32>) -> BigInt {
    if remaining.is_empty() {
        debug_assert!(lambda.is_empty());
        return BigInt::one();
    }
    let key = (lambda.clone(), remaining.clone());
    {
        let guard = CHAR_CACHE.lock().unwrap();
        if let Some(cache) = guard.as_ref() {
            if let Some(v) = cache.get(&key) {
                return v.clone();
            }
        }
    }
    let k = remaining[0] as i64;
    let rest: Vec<u32> = remaining[1..].to_vec();
    // First-column hook set of lambda; strictly decreasing.
    let r = lambda.len() as i64;
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(idx, &len)| len as i64 + r - (idx as i64 + 1))
        .collect();
    let mut total = BigInt::zero();
    for (pos, &h) in beta.iter().enumerate() {
        let target = h - k;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        // Rows crossed by the strip = entries strictly between target and h.
        let crossed = beta.iter().filter(|&&x| target < x && x < h).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut next: Vec<i64> = beta.clone();
        next[pos] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let next_rows: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(idx, &v)| (v - (r - (idx as i64 + 1))) as u32)
            .filter(|&v| v > 0)
            .collect();
        total += BigInt::from(sign) * character_rec(next_rows, rest.clone());
    }
    let mut guard = CHAR_CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert(key, total.clone());
    total
}

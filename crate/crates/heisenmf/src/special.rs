//! Log-factorials, log-gamma and the upper incomplete beta integral in log
//! space. Everything here feeds the float evaluation path, so accuracy
//! targets sit well below the 1e-9 route-agreement budget.

use std::sync::RwLock;

use crate::error::Error;
use crate::logspace::LogSigned;

// Cumulative Kahan-compensated table of ln(n!), grown on demand.
static LN_FACT: RwLock<(Vec<f64>, f64)> = RwLock::new((Vec::new(), 0.0));

pub fn ln_factorial(n: u64) -> f64 {
    let idx = n as usize;
    {
        let guard = LN_FACT.read().unwrap();
        if let Some(&v) = guard.0.get(idx) {
            return v;
        }
    }
    let mut guard = LN_FACT.write().unwrap();
    let (table, comp) = &mut *guard;
    if table.is_empty() {
        table.push(0.0);
    }
    while table.len() <= idx {
        let i = table.len() as f64;
        let sum = *table.last().unwrap();
        // Kahan step: carry the compensation across table growth.
        let y = i.ln() - *comp;
        let t = sum + y;
        *comp = (t - sum) - y;
        table.push(t);
    }
    table[idx]
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n);
    neumaier_sum(&[ln_factorial(n), -ln_factorial(k), -ln_factorial(n - k)])
}

/// ln of n! / (c1! c2! c3!) with c1+c2+c3 = n, compensated.
pub fn ln_multinomial3(n: u64, c1: u64, c2: u64, c3: u64) -> f64 {
    debug_assert_eq!(c1 + c2 + c3, n);
    neumaier_sum(&[
        ln_factorial(n),
        -ln_factorial(c1),
        -ln_factorial(c2),
        -ln_factorial(c3),
    ])
}

fn neumaier_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0. Integer arguments go
/// through the factorial table; the rest through a Lanczos fit.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma domain is x > 0, got {}", x);
    if x.fract() == 0.0 && x <= 1e6 {
        return ln_factorial(x as u64 - 1);
    }
    if x < 0.5 {
        // Reflection; sin stays positive on (0, 0.5).
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

pub fn ln_beta(p: f64, q: f64) -> f64 {
    ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)
}

const BETA_TOL: f64 = 1e-14;
const BETA_MAX_ITER: usize = 300;

/// The tail integral int_y^1 x^(p-1) (1-x)^(q-1) dx for y in [0,1] given as
/// log_y <= 0, evaluated in log space. Continued fraction (modified Lentz)
/// with the usual symmetry switch at y = (p+1)/(p+q+2); the switched branch
/// is a pure product, the direct branch subtracts a regularized value well
/// below 1, so neither loses the tail's leading digits.
pub fn incomplete_beta_upper(log_y: f64, p: f64, q: f64) -> Result<LogSigned, Error> {
    assert!(p >= 1.0 && q >= 1.0, "parameters below 1 unsupported: p={} q={}", p, q);
    assert!(log_y <= 0.0, "log_y must be <= 0, got {}", log_y);
    if log_y == 0.0 {
        return Ok(LogSigned::ZERO);
    }
    let y = log_y.exp();
    let log_1my = if y < 1e-300 {
        // ln(1-y) ~ -y, indistinguishable from 0 here.
        0.0
    } else {
        (-log_y.exp_m1()).ln()
    };
    if y > (p + 1.0) / (p + q + 2.0) {
        // Tail = B(q,p) I_{1-y}(q,p); prefactor (1-y)^q y^p / q times CF.
        let x = -log_y.exp_m1();
        let h = beta_cf(q, p, x)?;
        let log = q * log_1my + p * log_y + (h / q).ln();
        Ok(LogSigned::from_log(1, log))
    } else {
        let h = beta_cf(p, q, y)?;
        let regularized = (p * log_y + q * log_1my - ln_beta(p, q)).exp() * h / p;
        if regularized >= 1.0 {
            // Only reachable by rounding when the tail has no leading digits
            // left; the true value is below the 1e-13 accuracy floor.
            return Ok(LogSigned::ZERO);
        }
        let log = ln_beta(p, q) + (-regularized).ln_1p();
        Ok(LogSigned::from_log(1, log))
    }
}

/// Modified Lentz evaluation of the continued fraction for the regularized
/// incomplete beta, valid for x below the symmetry point.
fn beta_cf(a: f64, b: f64, x: f64) -> Result<f64, Error> {
    const TINY: f64 = 1e-30;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=BETA_MAX_ITER {
        let m_f = m as f64;
        let m2 = 2.0 * m_f;
        let aa = m_f * (b - m_f) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m_f) * (qab + m_f) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < BETA_TOL {
            return Ok(h);
        }
    }
    Err(Error::BetaNonConvergence {
        p: a,
        q: b,
        x,
        iterations: BETA_MAX_ITER,
    })
}

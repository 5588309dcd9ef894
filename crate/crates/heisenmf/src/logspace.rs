//! Signed log-space scalars and the summation helpers used by the float
//! evaluation path. Magnitudes live as natural logs so partition-function
//! scale quantities (log Z ~ n log 2) never overflow.

/// A real number stored as (sign, log of absolute value). Zero has sign 0
/// and log -inf.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSigned {
    sign: i8,
    log_abs: f64,
}

impl LogSigned {
    pub const ZERO: LogSigned = LogSigned { sign: 0, log_abs: f64::NEG_INFINITY };

    pub fn from_log(sign: i8, log_abs: f64) -> Self {
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            return LogSigned::ZERO;
        }
        LogSigned { sign, log_abs }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            LogSigned::ZERO
        } else if x > 0.0 {
            LogSigned { sign: 1, log_abs: x.ln() }
        } else {
            LogSigned { sign: -1, log_abs: (-x).ln() }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }

    pub fn neg(&self) -> Self {
        LogSigned { sign: -self.sign, log_abs: self.log_abs }
    }

    pub fn mul(&self, other: &LogSigned) -> Self {
        if self.sign == 0 || other.sign == 0 {
            return LogSigned::ZERO;
        }
        LogSigned {
            sign: self.sign * other.sign,
            log_abs: self.log_abs + other.log_abs,
        }
    }

    /// Multiplies by exp(shift).
    pub fn scale_log(&self, shift: f64) -> Self {
        if self.sign == 0 {
            return LogSigned::ZERO;
        }
        LogSigned { sign: self.sign, log_abs: self.log_abs + shift }
    }

    /// log(self / other); both must be nonzero and positive.
    pub fn log_ratio(&self, other: &LogSigned) -> f64 {
        debug_assert!(self.sign > 0 && other.sign > 0);
        self.log_abs - other.log_abs
    }

    pub fn add(&self, other: &LogSigned) -> Self {
        if self.sign == 0 {
            return *other;
        }
        if other.sign == 0 {
            return *self;
        }
        let (hi, lo) = if self.log_abs >= other.log_abs {
            (self, other)
        } else {
            (other, self)
        };
        let diff = lo.log_abs - hi.log_abs; // <= 0
        if self.sign == other.sign {
            LogSigned {
                sign: self.sign,
                log_abs: hi.log_abs + diff.exp().ln_1p(),
            }
        } else if diff == 0.0 {
            LogSigned::ZERO
        } else {
            // log(1 - exp(diff)) via expm1 for diff close to 0.
            LogSigned {
                sign: hi.sign,
                log_abs: hi.log_abs + (-diff.exp_m1()).ln(),
            }
        }
    }
}

/// Sum of signed terms taken largest magnitude first, which keeps the
/// running value from being swamped before the cancelling terms arrive.
pub fn signed_sum_descending(terms: &mut [LogSigned]) -> LogSigned {
    terms.sort_by(|a, b| b.log_abs.partial_cmp(&a.log_abs).unwrap());
    let mut acc = LogSigned::ZERO;
    for t in terms.iter() {
        acc = acc.add(t);
    }
    acc
}

/// Two-pass log-sum-exp over nonnegative terms given as logs: first find
/// the maximum, then accumulate shifted exponentials in the order given.
/// Empty input and all -inf input give -inf.
pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for &l in logs {
        if l > max {
            max = l;
        }
    }
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for &l in logs {
        acc += (l - max).exp();
    }
    max + acc.ln()
}

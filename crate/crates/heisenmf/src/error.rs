use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "incomplete beta continued fraction failed to converge after {iterations} iterations \
         (p={p}, q={q}, x={x})"
    )]
    BetaNonConvergence { p: f64, q: f64, x: f64, iterations: usize },

    #[error(
        "partition function routes disagree at n={n}, t={t}: spectral log {spectral}, \
         cycle-sum log {cycle}, relative error {rel_err:e}"
    )]
    RouteDisagreement { n: u32, t: f64, spectral: f64, cycle: f64, rel_err: f64 },

    #[error("magnetisation denominator underflowed at n={n}, t={t}")]
    DenominatorUnderflow { n: u32, t: f64 },

    #[error("{0}")]
    InvalidInput(String),
}

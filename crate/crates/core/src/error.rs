use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested Fock-space cutoff leaves more than the allowed
    /// probability outside the kept basis.
    #[error("truncation insufficient: loss {loss:.3e} at n_max = {n_max} (allowed {allowed:.1e})")]
    TruncationInsufficient {
        n_max: usize,
        loss: f64,
        allowed: f64,
    },

    /// Recurrence-based and closed-form coefficient routes disagree on the
    /// validated low-n range.
    #[error("numerical instability: coefficient routes disagree by {max_rel:.3e} at n = {n}")]
    NumericalInstability { n: usize, max_rel: f64 },

    /// Collapse and revival times diverge where the standing wave vanishes.
    #[error("node position: |cos kx| = {cos_kx:.3e} < 1e-12, collapse/revival times diverge")]
    NodePosition { cos_kx: f64 },

    #[error(
        "grid too coarse: {samples} samples for {expected_fringes} expected fringes \
         (need at least {required})"
    )]
    GridTooCoarse {
        samples: usize,
        expected_fringes: usize,
        required: usize,
    },

    #[error("no fringes: no adjacent extremum pair above the exclusion threshold")]
    NoFringes,

    #[error("grid mismatch: patterns are sampled on different position grids")]
    GridMismatch,

    #[error("no feasible point: no grid point satisfies the mean-photon-number constraint")]
    NoFeasiblePoint,
}

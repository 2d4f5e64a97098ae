use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Inputs describe a matrix that is not a valid density operator.
    #[error("non-physical state: {0}")]
    NonPhysicalState(String),

    /// A measurement outcome has vanishing probability; its conditional
    /// entropy is defined as zero and excluded from the average.
    #[error("measurement outcome {outcome} has vanishing probability {prob:e}")]
    DegenerateOutcome { outcome: usize, prob: f64 },

    #[error("optimizer failed to bracket a maximum")]
    OptimizerStall,

    /// The analytic classical-correlation formula needs c4 = c5 = 0.
    #[error("closed form not applicable: c4={c4:e}, c5={c5:e}")]
    NotApplicable { c4: f64, c5: f64 },

    #[error("argument {name}={value} outside {domain}")]
    DomainError {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("sector {0} is empty for this ring")]
    SectorEmpty(String),

    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    #[error("ground degeneracy changes across the derivative stencil at {param}")]
    NearDegeneracy { param: f64 },

    #[error("grid too coarse: need at least {needed} points, got {got}")]
    GridTooCoarse { needed: usize, got: usize },

    #[error("extremum lies on the grid boundary")]
    ExtremumOnBoundary,

    #[error("rank-deficient fit: {0}")]
    RankDeficient(String),

    #[error("no crossing in range")]
    NoCrossing,

    #[error("multiple crossings in range")]
    MultipleCrossings,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A sweep aborts on the first failing grid point.
    #[error("sweep failed at point {index} (param {param}): {source}")]
    SweepPoint {
        index: usize,
        param: f64,
        #[source]
        source: Box<Error>,
    },
}

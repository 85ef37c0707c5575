use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("coin angle {theta} is excluded (θ = 0 and θ = π give a trivial walk)")]
    ExcludedAngle { theta: f64 },

    #[error("coin state is not normalized: |α|²+|β|²+|γ|² = {norm_sqr}")]
    Unnormalized { norm_sqr: f64 },

    #[error("coin state is the zero vector")]
    ZeroState,

    #[error("G({x},{y},{x1},{y1}) diverges: x1 + y1 must be even")]
    DivergentDifference { x: i64, y: i64, x1: i64, y1: i64 },

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {estimate:e})")]
    QuadratureNonConvergence { subdivisions: usize, estimate: f64 },
}

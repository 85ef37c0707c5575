//! Discrete-time three-state quantum walk on a hexagonal lattice.
//!
//! * [`coin`]: coin angle, coin matrix and initial coin state.
//! * [`lattice`]: integer site indexing and the shift maps.
//! * [`evolution`]: exact real-space evolution from the origin.
//! * [`spectral`]: the two-step momentum-space operator and inverse transform.
//! * [`limit_laws`]: long-time return probability, asymptotic amplitudes and
//!   the weight of the localized point mass.
//! * [`cli_io`]: run configuration, file formats and the command implementations.
//!
//! Numerical code is generic over [`Real`]; the aliases below fix it to `f64` or `f32`.

pub mod cli_io;
pub mod coin;
pub mod error;
pub mod evolution;
pub mod lattice;
mod linalg;
pub mod limit_laws;
pub mod quadrature;
pub mod scalar;
pub mod spectral;

pub use coin::{apply_coin, build_coin, CoinMatrix, CoinParams, CoinState};
pub use error::{Error, Result};
pub use evolution::{
    distribution, evolve, evolve_observed, initial_wavefunction, return_series, step, Distribution,
    WaveFunction,
};
pub use lattice::{
    graph_distance, shift_source, shift_target, support_parity_ok, to_physical, PhysicalPoint, Site,
    Sublattice,
};
pub use limit_laws::{
    a_theta, asymptotic_amplitude, asymptotic_origin_amplitude, delocalization_condition,
    delta_weight, g_difference, limit_return_probability, AsymptoticOriginAmplitude,
};
pub use linalg::Mat3;
pub use quadrature::QuadratureConfig;
pub use scalar::{Real, Triple};
pub use spectral::{
    cos_nu, eigenphases_closed_form, fourier_evolve, inverse_transform_site,
    inverse_transform_sites, r_matrix, two_step_operator, Momentum, TwoStepOperator,
};

pub type CoinParams64 = CoinParams<f64>;
pub type CoinState64 = CoinState<f64>;
pub type CoinMatrix64 = CoinMatrix<f64>;
pub type WaveFunction64 = WaveFunction<f64>;
pub type Distribution64 = Distribution<f64>;
pub type Momentum64 = Momentum<f64>;
pub type TwoStepOperator64 = TwoStepOperator<f64>;
pub type QuadratureConfig64 = QuadratureConfig<f64>;

pub type CoinParams32 = CoinParams<f32>;
pub type CoinState32 = CoinState<f32>;
pub type CoinMatrix32 = CoinMatrix<f32>;
pub type WaveFunction32 = WaveFunction<f32>;
pub type Distribution32 = Distribution<f32>;
pub type Momentum32 = Momentum<f32>;

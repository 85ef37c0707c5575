//! Closed-form long-time limits of the walk.
//!
//! Everything here is driven by `A(θ) = arcsin((1 − c)/(3 + c))`. The origin
//! limit is an explicit linear map of `(α, β, γ)`; amplitudes at other sites
//! need the lattice integrals
//!
//! ```text
//! g(x,y) = (2π)⁻² ∬ e^{i(ax+by)} / (2s²(1 − cos a cos b) + (1−c)² sin²b) da db
//! ```
//!
//! which diverge on their own. Only differences `G(x,y,x₁,y₁) = g(x,y) − g(x−x₁, y−y₁)`
//! are finite, so only differences are exposed.

use num_complex::Complex;

use crate::coin::{CoinParams, CoinState};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
pub use crate::quadrature::QuadratureConfig;
use crate::scalar::{norm_sqr, Real, Triple};

/// `A(θ) = arcsin((1 − c)/(3 + c))`, in `(0, π/2)` for every admitted angle.
pub fn a_theta<T: Real>(params: &CoinParams<T>) -> T {
    let c = params.c();
    ((T::one() - c) / (T::lit(3.0) + c)).asin()
}

/// Limit of `ψ_{2t}(0,0)` as `t → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticOriginAmplitude<T> {
    pub psi0: Complex<T>,
    pub psi1: Complex<T>,
    pub psi2: Complex<T>,
}

impl<T: Real> AsymptoticOriginAmplitude<T> {
    pub fn as_triple(&self) -> Triple<T> {
        [self.psi0, self.psi1, self.psi2]
    }

    pub fn norm_sqr(&self) -> T {
        norm_sqr(&self.as_triple())
    }
}

/// Coefficients shared by the origin formulas.
struct OriginCoefficients<T> {
    /// `1/2 − A/π`
    diag: T,
    /// `√2 s A / (π(1 − c))`
    cross: T,
    /// `(3 + c) A / (π(1 − c)) − 1/2`
    anti: T,
    /// `√2 A / (π(1 − c))`
    middle: T,
}

impl<T: Real> OriginCoefficients<T> {
    fn new(params: &CoinParams<T>) -> Self {
        let (c, s) = (params.c(), params.s());
        let a = a_theta(params);
        let pi = T::PI();
        let half = T::lit(0.5);
        let denom = pi * (T::one() - c);
        Self {
            diag: half - a / pi,
            cross: T::SQRT_2() * s * a / denom,
            anti: (T::lit(3.0) + c) * a / denom - half,
            middle: T::SQRT_2() * a / denom,
        }
    }
}

pub fn asymptotic_origin_amplitude<T: Real>(
    params: &CoinParams<T>,
    state: &CoinState<T>,
) -> AsymptoticOriginAmplitude<T> {
    let k = OriginCoefficients::new(params);
    let (c, s) = (params.c(), params.s());
    let [al, be, ga] = state.amplitudes();
    AsymptoticOriginAmplitude {
        psi0: al * k.diag - be * k.cross + ga * k.anti,
        psi1: -(al * s - be * (T::SQRT_2() * (T::one() - c)) + ga * s) * k.middle,
        psi2: al * k.anti - be * k.cross + ga * k.diag,
    }
}

/// `lim_{t→∞} P[(X_{2t}, Y_{2t}) = (0,0)]`, the sum of the three squared moduli.
pub fn limit_return_probability<T: Real>(params: &CoinParams<T>, state: &CoinState<T>) -> T {
    let k = OriginCoefficients::new(params);
    let (c, s) = (params.c(), params.s());
    let [al, be, ga] = state.amplitudes();
    let first = al * k.diag - be * k.cross + ga * k.anti;
    let second = (al * s - be * (T::SQRT_2() * (T::one() - c)) + ga * s) * k.middle;
    let third = al * k.anti - be * k.cross + ga * k.diag;
    first.norm_sqr() + second.norm_sqr() + third.norm_sqr()
}

/// Whether the initial state satisfies `|α| = √(1−c)/2`, `β = √2(1+c)/s · α`
/// and `γ = α`, each within `T::CONDITION_TOL`.
pub fn delocalization_condition<T: Real>(params: &CoinParams<T>, state: &CoinState<T>) -> bool {
    let (c, s) = (params.c(), params.s());
    let tol = T::lit(T::CONDITION_TOL);
    let [al, be, ga] = state.amplitudes();
    let modulus_ok = (al.norm() - (T::one() - c).sqrt() / T::lit(2.0)).abs() <= tol;
    let beta_ok = (be - al * (T::SQRT_2() * (T::one() + c) / s)).norm() <= tol;
    let gamma_ok = (ga - al).norm() <= tol;
    modulus_ok && beta_ok && gamma_ok
}

/// Weight of the point mass at the origin of the limit distribution of
/// `(2X_t/3t, 2Y_t/(√3 t))`.
pub fn delta_weight<T: Real>(params: &CoinParams<T>, state: &CoinState<T>) -> T {
    let (c, s) = (params.c(), params.s());
    let a = a_theta(params);
    let pi = T::PI();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let [al, be, ga] = state.amplitudes();
    let outer = half - a / pi;
    outer * al.norm_sqr() + two * a / pi * be.norm_sqr() + outer * ga.norm_sqr()
        - two * T::SQRT_2() * s * a / (pi * (T::one() - c)) * ((al + ga) * be.conj()).re
        + (two * (T::lit(3.0) + c) * a / (pi * (T::one() - c)) - T::one()) * (al * ga.conj()).re
}

/// Constants of the reduced one-dimensional integrand of `g`.
#[derive(Clone, Copy)]
struct GKernel<T> {
    one_minus_c_sq: T,
    two_s_sq: T,
    one_minus_c: T,
    three_plus_c_sq: T,
}

impl<T: Real> GKernel<T> {
    fn new(params: &CoinParams<T>) -> Self {
        let (c, s) = (params.c(), params.s());
        Self {
            one_minus_c_sq: (T::one() - c).powi(2),
            two_s_sq: T::lit(2.0) * s * s,
            one_minus_c: T::one() - c,
            three_plus_c_sq: (T::lit(3.0) + c).powi(2),
        }
    }

    /// `(r(b), π·√(P² − Q²))` after integrating out `a` by residues, where
    /// `P = 2s² + (1−c)² sin²b`, `Q = 2s² cos b` and `r = Q / (P + √(P² − Q²))`
    /// is the pole inside the unit circle.
    fn pole_and_root(&self, b: T) -> (T, T) {
        let (sb, cb) = b.sin_cos();
        let p = self.two_s_sq + self.one_minus_c_sq * sb * sb;
        let q = self.two_s_sq * cb;
        let root = self.one_minus_c * sb * (self.three_plus_c_sq - self.one_minus_c_sq * cb * cb).sqrt();
        (q / (p + root), T::PI() * root)
    }
}

/// `G(x, y, x₁, y₁) = g(x, y) − g(x − x₁, y − y₁)`.
///
/// Integrated as one quadrature over `b ∈ (0, π)` of the difference of the
/// two reduced integrands
/// `cos(b|y|) r(b)^{|x|} / (π (1−c) sin b √((3+c)² − (1−c)² cos²b))`.
/// Each one diverges like `1/b` at `b = 0` and like `1/(π − b)` at `b = π`;
/// the difference is bounded at `0` always and at `π` only when `x₁ + y₁` is
/// even. Odd `x₁ + y₁` is rejected as divergent.
pub fn g_difference<T: Real>(
    x: i64,
    y: i64,
    x1: i64,
    y1: i64,
    params: &CoinParams<T>,
    q: &QuadratureConfig<T>,
) -> Result<T> {
    if x1 == 0 && y1 == 0 {
        return Ok(T::zero());
    }
    if (x1 + y1).rem_euclid(2) == 1 {
        return Err(Error::DivergentDifference { x, y, x1, y1 });
    }
    let kernel = GKernel::new(params);
    let (xa, ya) = (x.unsigned_abs() as i32, T::lit(y.unsigned_abs() as f64));
    let (xb, yb) = (
        (x - x1).unsigned_abs() as i32,
        T::lit((y - y1).unsigned_abs() as f64),
    );
    let integrand = |b: T| {
        let (r, denom) = kernel.pole_and_root(b);
        ((b * ya).cos() * r.powi(xa) - (b * yb).cos() * r.powi(xb)) / denom
    };
    integrate(integrand, T::zero(), T::PI(), q).map(|(v, _)| v)
}

/// `W₁(z₁, z₂) = −s z₁ + s z₂`.
fn w1<T: Real>(s: T, z1: Complex<T>, z2: Complex<T>) -> Complex<T> {
    (z2 - z1) * s
}

/// `W₂(z₁, z₂) = s z₁ − (√2/2)(1 − c) z₂`.
fn w2<T: Real>(c: T, s: T, z1: Complex<T>, z2: Complex<T>) -> Complex<T> {
    z1 * s - z2 * (T::SQRT_2() * T::lit(0.5) * (T::one() - c))
}

/// Long-time amplitude `lim ψ_{2t}` at site `A(x, y)` (the flat-band part of
/// the wave function), expressed through `W₁`, `W₂` and nine `G` differences.
pub fn asymptotic_amplitude<T: Real>(
    x: i64,
    y: i64,
    params: &CoinParams<T>,
    state: &CoinState<T>,
    q: &QuadratureConfig<T>,
) -> Result<Triple<T>> {
    let (c, s) = (params.c(), params.s());
    let [al, be, ga] = state.amplitudes();
    let g = |xx: i64, yy: i64, x1: i64, y1: i64| g_difference(xx, yy, x1, y1, params, q);
    let wa = w1(s, al, ga);
    let wb = w2(c, s, al, be);
    let wc = w2(c, s, ga, be);
    let half = T::lit(0.5);

    let row0 = (wa * g(x, y, 1, -1)? + wb * g(x + 1, y - 1, 1, -1)? + wc * g(x, y + 2, -1, 1)?)
        * (-s * half);
    let row1 = (wa * g(x - 1, y + 1, 0, 2)? + wb * g(x, y, 0, 2)? + wc * g(x, y, 0, -2)?)
        * (-T::SQRT_2() / T::lit(4.0) * (T::one() - c));
    let row2 = (wa * g(x, y, 1, 1)? + wb * g(x + 1, y - 1, 1, 1)? + wc * g(x, y, -1, -1)?)
        * (s * half);
    Ok([row0, row1, row2])
}

//! Coin angle, the 3×3 coin matrix and the initial coin state.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{norm_sqr, Real, Triple};

/// Coin angle θ with `c = cos θ` and `s = sin θ` fixed at construction.
///
/// Every module reads `c` and `s` from here so that no two computations
/// disagree by a recomputed `cos`/`sin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams<T> {
    theta: T,
    c: T,
    s: T,
}

impl<T: Real> CoinParams<T> {
    /// Builds the parameters for angle `theta` (radians, reduced into `[0, 2π)`).
    ///
    /// Angles within `T::ANGLE_GUARD` (in `|sin θ|`) of `0` or `π` are rejected.
    pub fn new(theta: T) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteAngle(theta.to_f64_lossy()));
        }
        let two_pi = T::TAU();
        let mut theta = theta - two_pi * (theta / two_pi).floor();
        if theta >= two_pi {
            theta = T::zero();
        }
        let (s, c) = theta.sin_cos();
        if s.abs() < T::lit(T::ANGLE_GUARD) {
            return Err(Error::ExcludedAngle {
                theta: theta.to_f64_lossy(),
            });
        }
        Ok(Self { theta, c, s })
    }

    /// The Grover coin: `c = −1/3`, `s = 2√2/3`, set exactly rather than through `cos(arccos(−1/3))`.
    pub fn grover() -> Self {
        let c = -T::one() / T::lit(3.0);
        let s = T::lit(2.0) * T::SQRT_2() / T::lit(3.0);
        Self {
            theta: c.acos(),
            c,
            s,
        }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// `cos θ`.
    pub fn c(&self) -> T {
        self.c
    }

    /// `sin θ`.
    pub fn s(&self) -> T {
        self.s
    }
}

/// Initial coin amplitudes `(α, β, γ)` with `|α|² + |β|² + |γ|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinState<T> {
    pub(crate) amps: Triple<T>,
}

impl<T: Real> CoinState<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>, gamma: Complex<T>) -> Result<Self> {
        let amps = [alpha, beta, gamma];
        let n = norm_sqr(&amps);
        if !n.is_finite() || (n - T::one()).abs() > T::lit(T::STATE_NORM_TOL) {
            return Err(Error::Unnormalized {
                norm_sqr: n.to_f64_lossy(),
            });
        }
        Ok(Self { amps })
    }

    /// Real amplitudes, checked for normalization.
    pub fn real(alpha: T, beta: T, gamma: T) -> Result<Self> {
        let z = |v| Complex::new(v, T::zero());
        Self::new(z(alpha), z(beta), z(gamma))
    }

    /// Rescales any non-zero triple to unit norm.
    pub fn normalized(alpha: Complex<T>, beta: Complex<T>, gamma: Complex<T>) -> Result<Self> {
        let amps = [alpha, beta, gamma];
        let n = norm_sqr(&amps).sqrt();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amps: amps.map(|z| z / n),
        })
    }

    /// `(1/√3, 1/√3, 1/√3)`.
    pub fn uniform() -> Self {
        let v = Complex::new(T::one() / T::lit(3.0).sqrt(), T::zero());
        Self { amps: [v; 3] }
    }

    /// Basis state `|j⟩`.
    pub fn basis(j: usize) -> Self {
        assert!(j < 3, "coin index {j} out of range");
        let mut amps = [Complex::new(T::zero(), T::zero()); 3];
        amps[j] = Complex::new(T::one(), T::zero());
        Self { amps }
    }

    /// The state with vanishing long-time return probability for `params`:
    /// `|α| = √(1−c)/2`, `β = √2(1+c)/s · α`, `γ = α`, with `α` carrying phase `phase`.
    pub fn delocalized(params: &CoinParams<T>, phase: T) -> Self {
        let (c, s) = (params.c(), params.s());
        let alpha = Complex::from_polar((T::one() - c).sqrt() / T::lit(2.0), phase);
        let beta = alpha * (T::SQRT_2() * (T::one() + c) / s);
        Self {
            amps: [alpha, beta, alpha],
        }
    }

    pub fn alpha(&self) -> Complex<T> {
        self.amps[0]
    }

    pub fn beta(&self) -> Complex<T> {
        self.amps[1]
    }

    pub fn gamma(&self) -> Complex<T> {
        self.amps[2]
    }

    pub fn amplitudes(&self) -> Triple<T> {
        self.amps
    }

    /// Multiplies all amplitudes by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: T) -> Self {
        let w = Complex::from_polar(T::one(), phi);
        Self {
            amps: self.amps.map(|z| z * w),
        }
    }

    /// Exchanges `α` and `γ`.
    pub fn swapped(&self) -> Self {
        let [a, b, g] = self.amps;
        Self { amps: [g, b, a] }
    }
}

/// The real symmetric orthogonal coin
///
/// ```text
/// ⎡ −(1+c)/2   s/√2   (1−c)/2 ⎤
/// ⎢   s/√2       c      s/√2  ⎥
/// ⎣  (1−c)/2   s/√2  −(1+c)/2 ⎦
/// ```
///
/// Symmetric and orthogonal, hence an involution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix<T> {
    m: [[T; 3]; 3],
}

impl<T: Real> CoinMatrix<T> {
    pub fn new(params: &CoinParams<T>) -> Self {
        let (c, s) = (params.c(), params.s());
        let half = T::lit(0.5);
        let d = -(T::one() + c) * half;
        let o = (T::one() - c) * half;
        let e = s / T::SQRT_2();
        Self {
            m: [[d, e, o], [e, c, e], [o, e, d]],
        }
    }

    pub fn entries(&self) -> [[T; 3]; 3] {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.m[row][col]
    }

    /// `M · v`.
    #[inline]
    pub fn apply(&self, v: &Triple<T>) -> Triple<T> {
        let m = &self.m;
        let row = |i: usize| v[0] * m[i][0] + v[1] * m[i][1] + v[2] * m[i][2];
        [row(0), row(1), row(2)]
    }
}

/// Builds the coin matrix for `params`.
pub fn build_coin<T: Real>(params: &CoinParams<T>) -> CoinMatrix<T> {
    CoinMatrix::new(params)
}

/// `matrix · v`; preserves the Euclidean norm.
pub fn apply_coin<T: Real>(matrix: &CoinMatrix<T>, v: &Triple<T>) -> Triple<T> {
    matrix.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn c64(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn grover_preset_gives_grover_matrix() {
        let m = build_coin(&CoinParams::<f64>::grover()).entries();
        let want = [
            [-1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
            [2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0],
            [2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[i][j] - want[i][j]).abs() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn grover_from_angle_matches_preset() {
        let from_angle = CoinParams::new((-1.0f64 / 3.0).acos()).unwrap();
        let a = build_coin(&from_angle).entries();
        let b = build_coin(&CoinParams::<f64>::grover()).entries();
        for i in 0..3 {
            for j in 0..3 {
                assert!((a[i][j] - b[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn quarter_turn_coin() {
        let m = build_coin(&CoinParams::new(FRAC_PI_2).unwrap()).entries();
        let r = 1.0 / SQRT_2;
        let want = [[-0.5, r, 0.5], [r, 0.0, r], [0.5, r, -0.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[i][j] - want[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_degenerate_angles() {
        for theta in [0.0, PI, 2.0 * PI, -PI, 3.0 * PI, 1e-13, PI + 1e-13] {
            assert!(
                matches!(CoinParams::new(theta), Err(Error::ExcludedAngle { .. })),
                "{theta}"
            );
        }
        assert!(matches!(
            CoinParams::new(f64::NAN),
            Err(Error::NonFiniteAngle(_))
        ));
        assert!(CoinParams::new(1e-6).is_ok());
    }

    #[test]
    fn angle_is_reduced_into_one_turn() {
        let p = CoinParams::new(-FRAC_PI_2).unwrap();
        assert!((p.theta() - 1.5 * PI).abs() < 1e-12);
        assert!((p.s() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn involutory_for_sampled_angles() {
        for k in 1..200 {
            let theta = 2.0 * PI * k as f64 / 200.0;
            let Ok(p) = CoinParams::new(theta) else {
                continue;
            };
            let m = build_coin(&p).entries();
            let sq = mat_mul(&m, &m);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(m[i][j], m[j][i]);
                    let id = if i == j { 1.0 } else { 0.0 };
                    assert!((sq[i][j] - id).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn apply_coin_examples() {
        let m = build_coin(&CoinParams::<f64>::grover());
        let out = apply_coin(&m, &[c64(0.0), c64(1.0), c64(0.0)]);
        let want = [2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0];
        for j in 0..3 {
            assert!((out[j] - c64(want[j])).norm() < 1e-15);
        }

        let u = 1.0 / 3f64.sqrt();
        let out = apply_coin(&m, &[c64(u); 3]);
        for z in out {
            assert!((z - c64(u)).norm() < 1e-15);
        }

        let v = [Complex::new(0.3, -0.1), Complex::new(0.2, 0.7), c64(-0.4)];
        let back = apply_coin(&m, &apply_coin(&m, &v));
        for j in 0..3 {
            assert!((back[j] - v[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn state_validation() {
        assert!(CoinState::real(1.0, 0.0, 0.0).is_ok());
        assert!(matches!(
            CoinState::real(1.0, 1.0, 0.0),
            Err(Error::Unnormalized { .. })
        ));
        let z = c64(0.0);
        assert!(matches!(
            CoinState::normalized(z, z, z),
            Err(Error::ZeroState)
        ));
        let s = CoinState::normalized(c64(1.0), c64(1.0), c64(1.0)).unwrap();
        assert!((s.alpha() - CoinState::<f64>::uniform().alpha()).norm() < 1e-15);
    }

    #[test]
    fn delocalized_state_is_normalized() {
        for k in 1..50 {
            let theta = 0.123 * k as f64;
            let Ok(p) = CoinParams::new(theta) else {
                continue;
            };
            let st = CoinState::delocalized(&p, 0.7);
            assert!((norm_sqr(&st.amplitudes()) - 1.0).abs() < 1e-12);
        }
        let g = CoinState::delocalized(&CoinParams::<f64>::grover(), 0.0);
        let u = CoinState::<f64>::uniform();
        for j in 0..3 {
            assert!((g.amplitudes()[j] - u.amplitudes()[j]).norm() < 1e-15);
        }
    }

    #[test]
    fn single_precision_coin() {
        let m = build_coin(&CoinParams::<f32>::grover()).entries();
        assert!((m[0][1] - 2.0 / 3.0).abs() < 1e-6);
    }
}

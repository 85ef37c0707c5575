//! Momentum-space form of the walk.
//!
//! With `ψ̂_t(a,b) = Σ e^{−i(ax+by)} ψ_t(x,y)` the two-step evolution is
//! `ψ̂_{2t+2} = R(−a,−b) C R(a,b) C ψ̂_{2t}` where `R(a,b) = diag(e^{−ib}, e^{ia}, e^{ib})`.
//! Its eigenvalues are `1, e^{iν}, e^{−iν}`; the flat band at `1` is what
//! keeps probability at the origin.

use std::cmp::Ordering;

use num_complex::Complex;

use crate::coin::{CoinMatrix, CoinParams, CoinState};
use crate::linalg::{self, Mat3};
use crate::scalar::{zero_triple, Real, Triple};

/// Momentum `(a, b)` in `[−π, π)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momentum<T> {
    a: T,
    b: T,
}

fn wrap_angle<T: Real>(v: T) -> T {
    let two_pi = T::TAU();
    let w = v + T::PI();
    let r = w - two_pi * (w / two_pi).floor();
    let r = if r >= two_pi { T::zero() } else { r };
    r - T::PI()
}

impl<T: Real> Momentum<T> {
    /// Both components are reduced into `[−π, π)`; everything here is 2π-periodic.
    pub fn new(a: T, b: T) -> Self {
        Self {
            a: wrap_angle(a),
            b: wrap_angle(b),
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Point `(k, l)` of the uniform `n × n` grid `−π + 2πk/n`.
    pub fn grid(n: usize, k: usize, l: usize) -> Self {
        let h = T::TAU() / T::lit(n as f64);
        Self {
            a: -T::PI() + h * T::lit(k as f64),
            b: -T::PI() + h * T::lit(l as f64),
        }
    }
}

/// `diag(e^{−ib}, e^{ia}, e^{ib})`.
pub fn r_matrix<T: Real>(m: &Momentum<T>) -> Mat3<T> {
    let one = T::one();
    linalg::diag([
        Complex::from_polar(one, -m.b),
        Complex::from_polar(one, m.a),
        Complex::from_polar(one, m.b),
    ])
}

/// `R(−a,−b) C R(a,b) C` with its eigen-decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStepOperator<T> {
    pub matrix: Mat3<T>,
    /// `(ν₁, ν₂, ν₃)` with `ν₁ ≈ 0`, `ν₂ ∈ [0, π]` and `ν₃ = 2π − ν₂`.
    pub eigenphases: [T; 3],
    /// Orthonormal eigenvectors, in the order of `eigenphases`.
    pub eigenvectors: [Triple<T>; 3],
}

impl<T: Real> TwoStepOperator<T> {
    pub fn new(m: &Momentum<T>, coin: &CoinMatrix<T>) -> Self {
        let matrix = two_step_matrix(m, &linalg::from_real(&coin.entries()));
        let (vals, vecs) = linalg::unitary_eigen(&matrix);
        let phases = vals.map(|z| z.arg());
        // Flat band: the phase closest to zero. The other two are ±ν.
        let flat = (0..3)
            .min_by(|&i, &j| {
                phases[i]
                    .abs()
                    .partial_cmp(&phases[j].abs())
                    .unwrap_or(Ordering::Equal)
            })
            .unwrap_or(0);
        let (p, q) = match flat {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (hi, lo) = if phases[p] >= phases[q] { (p, q) } else { (q, p) };
        Self {
            matrix,
            eigenphases: [phases[flat], phases[hi].abs(), T::TAU() - phases[lo].abs()],
            eigenvectors: [vecs[flat], vecs[hi], vecs[lo]],
        }
    }

    /// `max |(M M†)_ij − δ_ij|`.
    pub fn unitarity_defect(&self) -> T {
        let mm = linalg::mul(&self.matrix, &linalg::adjoint(&self.matrix));
        linalg::max_abs_diff(&mm, &linalg::identity())
    }

    /// `e^{iν_j}`.
    pub fn eigenvalue(&self, j: usize) -> Complex<T> {
        Complex::from_polar(T::one(), self.eigenphases[j])
    }

    /// `M^t v` through the spectral decomposition.
    pub fn power_apply(&self, t: u64, v: &Triple<T>) -> Triple<T> {
        let mut out = zero_triple();
        for j in 0..3 {
            let phase = reduced_phase(self.eigenphases[j], t);
            let coef = linalg::inner(&self.eigenvectors[j], v) * Complex::from_polar(T::one(), phase);
            for i in 0..3 {
                out[i] = out[i] + self.eigenvectors[j][i] * coef;
            }
        }
        out
    }
}

/// `t · ν mod 2π`, accumulated so large `t` does not swamp the fraction.
fn reduced_phase<T: Real>(nu: T, t: u64) -> T {
    let two_pi = T::TAU();
    let mut acc = T::zero();
    let mut base = nu - two_pi * (nu / two_pi).floor();
    let mut k = t;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base;
            acc = acc - two_pi * (acc / two_pi).floor();
        }
        base = base + base;
        base = base - two_pi * (base / two_pi).floor();
        k >>= 1;
    }
    acc
}

pub fn two_step_operator<T: Real>(m: &Momentum<T>, coin: &CoinMatrix<T>) -> TwoStepOperator<T> {
    TwoStepOperator::new(m, coin)
}

/// `cos ν₂ = c² − ½(1−c)² sin²b + s² cos a cos b`, as written.
pub fn cos_nu<T: Real>(m: &Momentum<T>, params: &CoinParams<T>) -> T {
    let (c, s) = (params.c(), params.s());
    let half = T::lit(0.5);
    let sb = m.b.sin();
    c * c - half * (T::one() - c).powi(2) * sb * sb + s * s * m.a.cos() * m.b.cos()
}

/// `(0, ν, 2π − ν)` with `ν = arccos(cos ν₂)`.
///
/// Evaluated through `1 − cos ν = s²(1 − cos a cos b) + ½(1−c)² sin²b` and
/// `ν = 2·atan2(√((1 − cos ν)/2), √((1 + cos ν)/2))`; the plain `arccos`
/// loses half the digits where `cos ν₂` is close to 1.
pub fn eigenphases_closed_form<T: Real>(m: &Momentum<T>, params: &CoinParams<T>) -> [T; 3] {
    let (c, s) = (params.c(), params.s());
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let sa2 = (m.a * half).sin();
    let sb2 = (m.b * half).sin();
    // 1 − cos a cos b = 2 sin²(a/2) + 2 cos a sin²(b/2)
    let one_minus_cc = two * sa2 * sa2 + two * m.a.cos() * sb2 * sb2;
    let sb = m.b.sin();
    let gap = s * s * one_minus_cc + half * (T::one() - c).powi(2) * sb * sb;
    let sin_half_sq = (gap * half).max(T::zero()).min(T::one());
    let nu = two * sin_half_sq.sqrt().atan2((T::one() - sin_half_sq).sqrt());
    [T::zero(), nu, T::TAU() - nu]
}

/// `ψ̂_{2t}(a,b) = (R(−a,−b) C R(a,b) C)^t (α, β, γ)`.
///
/// Up to `DIRECT_POWER_LIMIT` pairs the matrix is applied directly; beyond
/// that the eigenphases are exponentiated.
pub fn fourier_evolve<T: Real>(
    state: &CoinState<T>,
    t: u64,
    m: &Momentum<T>,
    coin: &CoinMatrix<T>,
) -> Triple<T> {
    let op = TwoStepOperator::new(m, coin);
    fourier_evolve_with(&op, state, t)
}

const DIRECT_POWER_LIMIT: u64 = 64;

fn fourier_evolve_with<T: Real>(op: &TwoStepOperator<T>, state: &CoinState<T>, t: u64) -> Triple<T> {
    let v = state.amplitudes();
    if t <= DIRECT_POWER_LIMIT {
        (0..t).fold(v, |acc, _| linalg::mul_vec(&op.matrix, &acc))
    } else {
        op.power_apply(t, &v)
    }
}

/// Two-step matrix only, without diagonalizing.
fn two_step_matrix<T: Real>(m: &Momentum<T>, c: &Mat3<T>) -> Mat3<T> {
    let forward = r_matrix(m);
    let back = r_matrix(&Momentum { a: -m.a, b: -m.b });
    linalg::mul(&back, &linalg::mul(c, &linalg::mul(&forward, c)))
}

/// `ψ_{2t}` at `A(x, y)` by the uniform-grid inverse transform
/// `n⁻² Σ_{k,l} e^{i(a_k x + b_l y)} ψ̂_{2t}(a_k, b_l)`.
///
/// The integrand is a trigonometric polynomial, so the sum is exact once
/// `grid_n > 2t + |x| + |y|`. Summation runs over `k` then `l`.
pub fn inverse_transform_site<T: Real>(
    state: &CoinState<T>,
    t: u64,
    x: i64,
    y: i64,
    grid_n: usize,
    coin: &CoinMatrix<T>,
) -> Triple<T> {
    inverse_transform_sites(state, t, &[(x, y)], grid_n, coin)[0]
}

/// [`inverse_transform_site`] for many sites sharing one momentum grid.
pub fn inverse_transform_sites<T: Real>(
    state: &CoinState<T>,
    t: u64,
    sites: &[(i64, i64)],
    grid_n: usize,
    coin: &CoinMatrix<T>,
) -> Vec<Triple<T>> {
    assert!(grid_n >= 1, "grid must have at least one point");
    let c = linalg::from_real(&coin.entries());
    let v0 = state.amplitudes();
    let mut out = vec![zero_triple::<T>(); sites.len()];
    for k in 0..grid_n {
        for l in 0..grid_n {
            let m = Momentum::grid(grid_n, k, l);
            let u = two_step_matrix(&m, &c);
            let psi_hat = (0..t).fold(v0, |acc, _| linalg::mul_vec(&u, &acc));
            for (acc, &(x, y)) in out.iter_mut().zip(sites) {
                let phase = m.a * T::lit(x as f64) + m.b * T::lit(y as f64);
                let w = Complex::from_polar(T::one(), phase);
                for i in 0..3 {
                    acc[i] = acc[i] + psi_hat[i] * w;
                }
            }
        }
    }
    let norm = T::lit((grid_n * grid_n) as f64);
    out.into_iter().map(|v| v.map(|z| z / norm)).collect()
}

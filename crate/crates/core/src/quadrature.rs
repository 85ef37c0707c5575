//! Globally adaptive 21-point Gauss–Kronrod quadrature on a finite interval.
//!
//! The rule never evaluates the integrand at the interval endpoints, which is
//! what the `G` integrands need: they are finite limits of differences of
//! terms that individually blow up at `b = 0` and `b = π`.

use crate::error::{Error, Result};
use crate::scalar::Real;

// Kronrod abscissae; odd positions (1, 3, …, 9) are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208745780866,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Tolerances for the adaptive quadrature. Integration stops once the summed
/// error estimate is below `max(abs_tol, rel_tol · |integral|)`; needing more
/// than `max_subdivisions` intervals is a failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10),
            abs_tol: T::lit(1e-12),
            max_subdivisions: 1 << 12,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn gauss_kronrod<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = (lo + hi) * half;
    let half_len = (hi - lo) * half;
    let f_center = f(center);
    let mut kronrod = f_center * T::lit(WGK[10]);
    let mut gauss = T::zero();
    for k in 0..10 {
        let dx = half_len * T::lit(XGK[k]);
        let pair = f(center - dx) + f(center + dx);
        kronrod += T::lit(WGK[k]) * pair;
        if k % 2 == 1 {
            gauss += T::lit(WG[k / 2]) * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half_len,
        error: ((kronrod - gauss) * half_len).abs(),
    }
}

/// `∫_lo^hi f` with its error estimate.
pub fn integrate<T, F>(f: F, lo: T, hi: T, cfg: &QuadratureConfig<T>) -> Result<(T, T)>
where
    T: Real,
    F: Fn(T) -> T,
{
    let mut segments = vec![gauss_kronrod(&f, lo, hi)];
    loop {
        let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let error = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: segments.len(),
                estimate: error.to_f64_lossy(),
            });
        }
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok((value, error));
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, -T::one()), |best, (i, s)| if s.error > best.1 { (i, s.error) } else { best });
        let seg = segments[worst];
        let mid = (seg.lo + seg.hi) * T::lit(0.5);
        if segments.len() >= cfg.max_subdivisions || !(mid > seg.lo && mid < seg.hi) {
            return Err(Error::QuadratureNonConvergence {
                subdivisions: segments.len(),
                estimate: error.to_f64_lossy(),
            });
        }
        segments[worst] = gauss_kronrod(&f, seg.lo, mid);
        segments.push(gauss_kronrod(&f, mid, seg.hi));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        let cfg = QuadratureConfig::default();
        for d in 0..=31 {
            let (v, _) = integrate(|x: f64| x.powi(d), 0.0, 1.0, &cfg).unwrap();
            assert!((v - 1.0 / (d as f64 + 1.0)).abs() < 1e-14, "degree {d}");
        }
    }

    #[test]
    fn oscillatory_and_endpoint_singular() {
        let cfg = QuadratureConfig::default();
        let (v, _) = integrate(|x: f64| (20.0 * x).cos(), 0.0, PI, &cfg).unwrap();
        assert!(v.abs() < 1e-10);
        // ∫_0^1 x^{-1/2} = 2; integrable endpoint singularity needs many bisections.
        let (v, _) = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!((v - 2.0).abs() < 1e-8);
    }

    #[test]
    fn divergent_integral_is_reported() {
        let cfg = QuadratureConfig {
            max_subdivisions: 200,
            ..QuadratureConfig::default()
        };
        let res = integrate(|x: f64| 1.0 / x, 0.0, 1.0, &cfg);
        assert!(matches!(res, Err(Error::QuadratureNonConvergence { .. })));
    }
}

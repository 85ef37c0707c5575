use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign, NumCast};

/// Floating-point scalar the walk is computed over.
///
/// The associated constants are the type-dependent tolerances used by
/// constructors and predicates; everything else is plain `num-traits`.
pub trait Real:
    Float + FloatConst + NumAssign + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Allowed slack on `|α|² + |β|² + |γ|² = 1` for a coin state.
    const STATE_NORM_TOL: f64;
    /// Coin angles with `|sin θ|` below this are rejected.
    const ANGLE_GUARD: f64;
    /// Slack for the equalities of the delocalization condition.
    const CONDITION_TOL: f64;

    /// Converts an `f64` literal. Infallible for the float types implementing this trait.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const STATE_NORM_TOL: f64 = 1e-12;
    const ANGLE_GUARD: f64 = 1e-12;
    const CONDITION_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const STATE_NORM_TOL: f64 = 1e-5;
    const ANGLE_GUARD: f64 = 1e-6;
    const CONDITION_TOL: f64 = 1e-5;
}

/// Amplitudes of the three coin basis states `|0⟩, |1⟩, |2⟩`.
pub type Triple<T> = [Complex<T>; 3];

pub(crate) fn zero_triple<T: Real>() -> Triple<T> {
    [Complex::new(T::zero(), T::zero()); 3]
}

pub(crate) fn norm_sqr<T: Real>(v: &Triple<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

//! Integer indexing of the hexagonal lattice and the two shift maps.
//!
//! Sublattice `A` holds the points `(3x/2, √3·y/2)` and sublattice `B` the
//! points `((3x+1)/2, √3·y/2)`. A site on `A` moves to `B` according to its
//! coin index and vice versa, so every step flips the sublattice.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sublattice {
    A,
    B,
}

/// Lattice vertex. The derived ordering (sublattice, then `x`, then `y`) is
/// the canonical traversal order used everywhere a deterministic order matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub sub: Sublattice,
    pub x: i64,
    pub y: i64,
}

impl Site {
    pub const ORIGIN: Site = Site::a(0, 0);

    pub const fn a(x: i64, y: i64) -> Self {
        Self {
            sub: Sublattice::A,
            x,
            y,
        }
    }

    pub const fn b(x: i64, y: i64) -> Self {
        Self {
            sub: Sublattice::B,
            x,
            y,
        }
    }

    /// Twice the physical abscissa, `3x` on `A` and `3x + 1` on `B`. Exact and
    /// order-preserving, so it is the sort key for physical output.
    pub fn doubled_px(&self) -> i64 {
        match self.sub {
            Sublattice::A => 3 * self.x,
            Sublattice::B => 3 * self.x + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalPoint<T> {
    pub px: T,
    pub py: T,
}

pub fn to_physical<T: Real>(site: Site) -> PhysicalPoint<T> {
    let px = T::lit(site.doubled_px() as f64) / T::lit(2.0);
    let py = T::lit(site.y as f64) * T::lit(3.0).sqrt() / T::lit(2.0);
    PhysicalPoint { px, py }
}

const A_TO_B: [(i64, i64); 3] = [(0, 1), (-1, 0), (0, -1)];
const B_TO_A: [(i64, i64); 3] = [(0, -1), (1, 0), (0, 1)];

/// Where the coin component `coin` of the amplitude at `site` is sent by one step.
///
/// # Panics
/// If `coin > 2`.
#[inline]
pub fn shift_target(site: Site, coin: usize) -> Site {
    match site.sub {
        Sublattice::A => {
            let (dx, dy) = A_TO_B[coin];
            Site::b(site.x + dx, site.y + dy)
        }
        Sublattice::B => {
            let (dx, dy) = B_TO_A[coin];
            Site::a(site.x + dx, site.y + dy)
        }
    }
}

/// The unique site whose `coin` component lands on `site`.
#[inline]
pub fn shift_source(site: Site, coin: usize) -> Site {
    match site.sub {
        Sublattice::A => {
            let (dx, dy) = B_TO_A[coin];
            Site::b(site.x - dx, site.y - dy)
        }
        Sublattice::B => {
            let (dx, dy) = A_TO_B[coin];
            Site::a(site.x - dx, site.y - dy)
        }
    }
}

/// Whether a walker started at `A(0,0)` can have support on `site` after `t` steps.
pub fn support_parity_ok(site: Site, t: u64) -> bool {
    let odd_sum = (site.x + site.y).rem_euclid(2) == 1;
    if t % 2 == 0 {
        site.sub == Sublattice::A && !odd_sum
    } else {
        site.sub == Sublattice::B && odd_sum
    }
}

/// Graph distance from `A(0,0)` along lattice edges, `None` for sites in the
/// other connected component.
///
/// Two steps from an `A` site reach the six triangular neighbours
/// `(±1, ±1)` and `(0, ±2)`, so the distance between `A` sites is twice the
/// triangular distance `max(|x|, (|x| + |y|)/2)`.
pub fn graph_distance(site: Site) -> Option<u64> {
    fn tri(x: i64, y: i64) -> u64 {
        let (ax, ay) = (x.unsigned_abs(), y.unsigned_abs());
        ax.max((ax + ay) / 2)
    }
    if (site.x + site.y).rem_euclid(2) == 1 {
        if site.sub == Sublattice::A {
            return None;
        }
    } else if site.sub == Sublattice::B {
        return None;
    }
    match site.sub {
        Sublattice::A => Some(2 * tri(site.x, site.y)),
        Sublattice::B => (0..3)
            .map(|j| {
                let n = shift_source(site, j);
                2 * tri(n.x, n.y) + 1
            })
            .min(),
    }
}

#![allow(dead_code)]

use std::f64::consts::PI;

use hexwalk::{CoinParams64, CoinState64};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on `(0, 2π)` minus small neighbourhoods of `0`, `π` and `2π`.
pub fn random_theta<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let t = rng.gen_range(0.0..2.0 * PI);
        let d = [t, (t - PI).abs(), 2.0 * PI - t];
        if d.iter().all(|&x| x > 0.05) {
            return t;
        }
    }
}

pub fn random_params<R: Rng>(rng: &mut R) -> CoinParams64 {
    CoinParams64::new(random_theta(rng)).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R) -> CoinState64 {
    let mut z = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    CoinState64::normalized(z(), z(), z()).unwrap()
}

/// Smallest distance between two angles on the circle.
pub fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// `g` summed on an `n × n` uniform grid of `[−π, π)²`, skipping the two
/// grid points where the denominator vanishes, `(0, 0)` and `(−π, −π)`.
/// Only differences of these sums converge as `n` grows.
///
/// Returns a table indexed `[|x|][|y|]` for `|x| ≤ max_x`, `|y| ≤ max_y`.
fn g_grid_table(c: f64, s: f64, n: usize, max_x: usize, max_y: usize) -> Vec<Vec<f64>> {
    let angles: Vec<f64> = (0..n).map(|k| -PI + 2.0 * PI * k as f64 / n as f64).collect();
    let cos: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
    let sin_sq: Vec<f64> = angles.iter().map(|a| a.sin().powi(2)).collect();
    let (zero, minus_pi) = (n / 2, 0);
    let two_s_sq = 2.0 * s * s;
    let omc_sq = (1.0 - c).powi(2);

    // Both kernels are even in a and b, so only cosines survive.
    let cos_x: Vec<Vec<f64>> = (0..=max_x)
        .map(|x| angles.iter().map(|a| (a * x as f64).cos()).collect())
        .collect();
    let cos_y: Vec<Vec<f64>> = (0..=max_y)
        .map(|y| angles.iter().map(|b| (b * y as f64).cos()).collect())
        .collect();

    let mut table = vec![vec![0.0; max_y + 1]; max_x + 1];
    let mut inner = vec![0.0; max_x + 1];
    for l in 0..n {
        inner.iter_mut().for_each(|v| *v = 0.0);
        for k in 0..n {
            if (k == zero && l == zero) || (k == minus_pi && l == minus_pi) {
                continue;
            }
            let w = 1.0 / (two_s_sq * (1.0 - cos[k] * cos[l]) + omc_sq * sin_sq[l]);
            for (x, acc) in inner.iter_mut().enumerate() {
                *acc += cos_x[x][k] * w;
            }
        }
        for (x, row) in table.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell += inner[x] * cos_y[y][l];
            }
        }
    }
    let norm = (n * n) as f64;
    table.iter_mut().flatten().for_each(|v| *v /= norm);
    table
}

/// Brute-force `G(x, y, x₁, y₁)` for every requested tuple from the 2D grid.
///
/// The grid sum of the difference has an `O(h²)` error, so one Richardson
/// step on `n` and `2n` removes it. The extrapolations from `(n, 2n)` and
/// `(2n, 4n)` are both returned so callers can check they agree.
pub struct GridOracle {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
}

impl GridOracle {
    pub fn value(&self, i: usize) -> f64 {
        self.fine[i]
    }

    pub fn spread(&self, i: usize) -> f64 {
        (self.fine[i] - self.coarse[i]).abs()
    }
}

pub fn g_oracle(c: f64, s: f64, tuples: &[(i64, i64, i64, i64)], n: usize) -> GridOracle {
    let max_x = tuples
        .iter()
        .flat_map(|&(x, _, x1, _)| [x.abs(), (x - x1).abs()])
        .max()
        .unwrap_or(0) as usize;
    let max_y = tuples
        .iter()
        .flat_map(|&(_, y, _, y1)| [y.abs(), (y - y1).abs()])
        .max()
        .unwrap_or(0) as usize;
    let tables: Vec<Vec<Vec<f64>>> = [n, 2 * n, 4 * n]
        .iter()
        .map(|&m| g_grid_table(c, s, m, max_x, max_y))
        .collect();
    let diff = |t: &Vec<Vec<f64>>, &(x, y, x1, y1): &(i64, i64, i64, i64)| {
        t[x.unsigned_abs() as usize][y.unsigned_abs() as usize]
            - t[(x - x1).unsigned_abs() as usize][(y - y1).unsigned_abs() as usize]
    };
    let richardson = |lo: &Vec<Vec<f64>>, hi: &Vec<Vec<f64>>| -> Vec<f64> {
        tuples
            .iter()
            .map(|tp| (4.0 * diff(hi, tp) - diff(lo, tp)) / 3.0)
            .collect()
    };
    GridOracle {
        coarse: richardson(&tables[0], &tables[1]),
        fine: richardson(&tables[1], &tables[2]),
    }
}

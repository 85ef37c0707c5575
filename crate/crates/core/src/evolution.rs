//! Real-space evolution `|Ψ_{t+1}⟩ = (S₁ + S₂) C |Ψ_t⟩` on a sparse site map.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::coin::{CoinMatrix, CoinState};
use crate::lattice::{shift_target, Site};
use crate::scalar::{norm_sqr, zero_triple, Real, Triple};

/// Sites whose squared amplitude norm falls below this are dropped after a step.
/// The total norm lost is bounded by `(number of sites) · PRUNE_THRESHOLD`.
pub const PRUNE_THRESHOLD: f64 = 1e-30;

/// Wave function after `t` steps: coin amplitudes at each occupied site.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction<T> {
    amplitudes: BTreeMap<Site, Triple<T>>,
    t: u64,
}

impl<T: Real> WaveFunction<T> {
    /// The walker at `A(0,0)` with coin amplitudes `(α, β, γ)`, `t = 0`.
    pub fn initial(state: &CoinState<T>) -> Self {
        Self {
            amplitudes: BTreeMap::from([(Site::ORIGIN, state.amplitudes())]),
            t: 0,
        }
    }

    pub fn time(&self) -> u64 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Amplitude triple at `site`, zero where unoccupied.
    pub fn amplitude(&self, site: Site) -> Triple<T> {
        self.amplitudes
            .get(&site)
            .copied()
            .unwrap_or_else(zero_triple)
    }

    pub fn amplitudes(&self) -> &BTreeMap<Site, Triple<T>> {
        &self.amplitudes
    }

    /// Occupied sites with their amplitudes, in canonical site order.
    pub fn iter(&self) -> impl Iterator<Item = (&Site, &Triple<T>)> {
        self.amplitudes.iter()
    }

    /// `⟨Ψ_t|Ψ_t⟩`.
    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, v| acc + norm_sqr(v))
    }

    /// Probability of observing the walker at `site`.
    pub fn probability(&self, site: Site) -> T {
        self.amplitudes
            .get(&site)
            .map_or_else(T::zero, |v| norm_sqr(v))
    }

    /// Total probability on sites with `|x| ≤ radius` and `|y| ≤ radius`.
    pub fn window_mass(&self, radius: i64) -> T {
        self.amplitudes
            .iter()
            .filter(|(s, _)| s.x.abs() <= radius && s.y.abs() <= radius)
            .fold(T::zero(), |acc, (_, v)| acc + norm_sqr(v))
    }

    /// One application of `(S₁ + S₂) C`.
    ///
    /// Each target component has exactly one source (`shift_source`), so the
    /// new amplitudes are plain assignments and the result does not depend on
    /// traversal order.
    pub fn step(self, coin: &CoinMatrix<T>) -> Self {
        let n = self.amplitudes.len();
        let mut scattered: Vec<(Site, usize, Complex<T>)> = Vec::with_capacity(3 * n);
        // One sorted run per coin index: translating a sorted run keeps it sorted.
        for j in 0..3 {
            for (site, psi) in &self.amplitudes {
                let phi_j = (0..3).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                    acc + psi[k] * coin.get(j, k)
                });
                scattered.push((shift_target(*site, j), j, phi_j));
            }
        }
        // Stable merge of the three runs.
        scattered.sort_by_key(|&(site, j, _)| (site, j));

        let prune = T::lit(PRUNE_THRESHOLD);
        let mut next: Vec<(Site, Triple<T>)> = Vec::with_capacity(n + n / 2 + 3);
        for (site, j, value) in scattered {
            match next.last_mut() {
                Some((last, amps)) if *last == site => amps[j] = value,
                _ => {
                    let mut amps = zero_triple();
                    amps[j] = value;
                    next.push((site, amps));
                }
            }
        }
        let amplitudes = next
            .into_iter()
            .filter(|(_, amps)| norm_sqr(amps) >= prune)
            .collect();
        Self {
            amplitudes,
            t: self.t + 1,
        }
    }

    /// Probability distribution over sites.
    pub fn distribution(&self) -> Distribution<T> {
        Distribution {
            probs: self
                .amplitudes
                .iter()
                .map(|(s, v)| (*s, norm_sqr(v)))
                .collect(),
            t: self.t,
        }
    }
}

/// `P[(X_t, Y_t) = site]` for every occupied site.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    probs: BTreeMap<Site, T>,
    t: u64,
}

impl<T: Real> Distribution<T> {
    pub fn time(&self) -> u64 {
        self.t
    }

    pub fn get(&self, site: Site) -> T {
        self.probs.get(&site).copied().unwrap_or_else(T::zero)
    }

    pub fn probs(&self) -> &BTreeMap<Site, T> {
        &self.probs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Site, &T)> {
        self.probs.iter()
    }

    pub fn total(&self) -> T {
        self.probs.values().fold(T::zero(), |acc, &p| acc + p)
    }
}

pub fn initial_wavefunction<T: Real>(state: &CoinState<T>) -> WaveFunction<T> {
    WaveFunction::initial(state)
}

pub fn step<T: Real>(wf: WaveFunction<T>, coin: &CoinMatrix<T>) -> WaveFunction<T> {
    wf.step(coin)
}

pub fn distribution<T: Real>(wf: &WaveFunction<T>) -> Distribution<T> {
    wf.distribution()
}

/// State after `t` steps from `A(0,0)`.
pub fn evolve<T: Real>(state: &CoinState<T>, t: u64, coin: &CoinMatrix<T>) -> WaveFunction<T> {
    (0..t).fold(WaveFunction::initial(state), |wf, _| wf.step(coin))
}

/// Runs `t_max` steps, handing every intermediate state (including `t = 0`) to `observe`.
pub fn evolve_observed<T, F>(
    state: &CoinState<T>,
    t_max: u64,
    coin: &CoinMatrix<T>,
    mut observe: F,
) -> WaveFunction<T>
where
    T: Real,
    F: FnMut(&WaveFunction<T>),
{
    let mut wf = WaveFunction::initial(state);
    observe(&wf);
    for _ in 0..t_max {
        wf = wf.step(coin);
        observe(&wf);
    }
    wf
}

/// `(2t, P[(X_{2t}, Y_{2t}) = (0,0)])` for every even time up to `t_max`, from one evolution pass.
pub fn return_series<T: Real>(
    state: &CoinState<T>,
    t_max: u64,
    coin: &CoinMatrix<T>,
) -> Vec<(u64, T)> {
    let mut series = Vec::with_capacity((t_max / 2 + 1) as usize);
    evolve_observed(state, t_max, coin, |wf| {
        if wf.time() % 2 == 0 {
            series.push((wf.time(), wf.probability(Site::ORIGIN)));
        }
    });
    series
}

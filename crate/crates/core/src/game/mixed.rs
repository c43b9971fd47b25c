//! Expected payoffs of mixed quantum profiles.
//!
//! Finite-support mixtures are enumerated exactly. Haar-uniform players are
//! sampled; for each sample the finite players are still enumerated, so only
//! the Haar draws contribute Monte Carlo error. Samples are split into fixed
//! chunks, each with its own ChaCha stream derived from the seed, so the
//! estimate does not depend on how many threads run the chunks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{gmix_payoff, quantum_payoff, Game};
use crate::quantum::{haar_sample, MixedQuantumStrategy, SU2Strategy};
use crate::{Error, Result};

const CHUNK: usize = 2048;

/// Default number of Monte Carlo samples per estimate.
pub const DEFAULT_SAMPLES: usize = 100_000;

/// How Haar-uniform players are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HaarMode {
    /// Monte Carlo sampling with a standard-error estimate.
    #[default]
    MonteCarlo,
    /// Exact: payoffs are quadratic in each player's `(a0, a1, b0, b1)`, and
    /// the uniform mixture over the unit quaternions `1, i, j, k` has the same
    /// second moments as the Haar measure.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub samples: usize,
    pub seed: u64,
    pub haar: HaarMode,
}

impl EvalConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            haar: HaarMode::MonteCarlo,
        }
    }

    pub fn exact(seed: u64) -> Self {
        Self {
            samples: 1,
            seed,
            haar: HaarMode::Exact,
        }
    }
}

/// Per-player expected payoff with its standard error (0 when exact).
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffEstimate {
    pub mean: Vec<f64>,
    pub std_err: Vec<f64>,
    /// Monte Carlo samples drawn; 0 for an exact evaluation.
    pub samples: usize,
}

impl PayoffEstimate {
    pub fn is_exact(&self) -> bool {
        self.samples == 0
    }
}

/// Pure strategies whose uniform mixture matches the Haar second moments.
pub fn haar_design() -> Vec<(f64, SU2Strategy)> {
    [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
        .into_iter()
        .map(|c| (0.25, SU2Strategy::from_coefficients(c).expect("unit")))
        .collect()
}

pub fn mixed_quantum_payoff(game: &Game, profile: &[MixedQuantumStrategy], config: &EvalConfig) -> Result<PayoffEstimate> {
    game.check_arity(profile.len())?;
    if config.samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut supports = Vec::with_capacity(profile.len());
    let mut haar_players = Vec::new();
    for (p, strategy) in profile.iter().enumerate() {
        match strategy {
            MixedQuantumStrategy::Finite(support) => supports.push(support.clone()),
            MixedQuantumStrategy::HaarUniform => match config.haar {
                HaarMode::Exact => supports.push(haar_design()),
                HaarMode::MonteCarlo => {
                    haar_players.push(p);
                    supports.push(vec![(1.0, SU2Strategy::no_flip())]);
                }
            },
        }
    }

    if haar_players.is_empty() {
        return Ok(PayoffEstimate {
            mean: enumerate(game, &supports)?,
            std_err: vec![0.0; game.n_players()],
            samples: 0,
        });
    }

    let n_chunks = config.samples.div_ceil(CHUNK);
    let chunks: Vec<Result<Moments>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(chunk as u64);
            let count = CHUNK.min(config.samples - chunk * CHUNK);
            let mut local = supports.clone();
            let mut moments = Moments::new(game.n_players());
            for _ in 0..count {
                for &p in &haar_players {
                    local[p][0].1 = haar_sample(&mut rng);
                }
                moments.push(&enumerate(game, &local)?);
            }
            Ok(moments)
        })
        .collect();

    let mut total = Moments::new(game.n_players());
    for chunk in chunks {
        total.merge(&chunk?);
    }
    Ok(total.estimate())
}

/// Exact expectation over the product of finite supports.
fn enumerate(game: &Game, supports: &[Vec<(f64, SU2Strategy)>]) -> Result<Vec<f64>> {
    let n = supports.len();
    let mut idx = vec![0usize; n];
    let mut acc = vec![0.0; game.n_players()];
    let mut strategies: Vec<SU2Strategy> = supports.iter().map(|s| s[0].1).collect();
    loop {
        let mut weight = 1.0;
        for p in 0..n {
            let (w, s) = supports[p][idx[p]];
            weight *= w;
            strategies[p] = s;
        }
        if weight != 0.0 {
            for (a, x) in acc.iter_mut().zip(quantum_payoff(game, &strategies)?) {
                *a += weight * x;
            }
        }
        // odometer over the supports, last player fastest
        let mut p = n;
        loop {
            if p == 0 {
                return Ok(acc);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < supports[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Running count, mean and sum of squared deviations per player.
#[derive(Debug, Clone)]
struct Moments {
    count: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(n: usize) -> Self {
        Self {
            count: 0,
            mean: vec![0.0; n],
            m2: vec![0.0; n],
        }
    }

    fn push(&mut self, x: &[f64]) {
        self.count += 1;
        let n = self.count as f64;
        for ((mean, m2), &v) in self.mean.iter_mut().zip(&mut self.m2).zip(x) {
            let delta = v - *mean;
            *mean += delta / n;
            *m2 += delta * (v - *mean);
        }
    }

    fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        for p in 0..self.mean.len() {
            let delta = other.mean[p] - self.mean[p];
            self.mean[p] += delta * nb / n;
            self.m2[p] += other.m2[p] + delta * delta * na * nb / n;
        }
        self.count += other.count;
    }

    fn estimate(&self) -> PayoffEstimate {
        let n = self.count as f64;
        let std_err = self
            .m2
            .iter()
            .map(|m2| if self.count > 1 { (m2 / (n - 1.0) / n).sqrt() } else { 0.0 })
            .collect();
        PayoffEstimate {
            mean: self.mean.clone(),
            std_err,
            samples: self.count,
        }
    }
}

/// Largest gap between the quantized payoff of classical mixtures and the
/// mixed-classical payoff over a grid of flip probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport {
    pub points: usize,
    pub max_deviation: f64,
    /// Flip probabilities at which `max_deviation` occurred.
    pub worst: Vec<f64>,
}

/// Checks `grid_points` evenly spaced flip probabilities in `[0, 1]` per player.
pub fn completeness_check(game: &Game, grid_points: usize) -> Result<CompletenessReport> {
    let n = game.n_players();
    let steps = grid_points.max(2);
    let grid: Vec<f64> = (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect();
    let total = steps.pow(n as u32);
    let config = EvalConfig::exact(0);
    let mut report = CompletenessReport {
        points: 0,
        max_deviation: 0.0,
        worst: vec![0.0; n],
    };
    for flat in 0..total {
        let probs: Vec<f64> = (0..n).map(|p| grid[(flat / steps.pow((n - 1 - p) as u32)) % steps]).collect();
        let profile = probs
            .iter()
            .map(|&r| MixedQuantumStrategy::classical(r, game.eta()))
            .collect::<Result<Vec<_>>>()?;
        let quantum = mixed_quantum_payoff(game, &profile, &config)?;
        let classical = gmix_payoff(game, &probs)?;
        let dev = quantum
            .mean
            .iter()
            .zip(&classical)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        report.points += 1;
        if dev > report.max_deviation {
            report.max_deviation = dev;
            report.worst = probs;
        }
    }
    Ok(report)
}

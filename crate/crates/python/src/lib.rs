//! Python module `ewl`.

use std::path::PathBuf;

use ewl_cli::GameSpecFile;
use ewl_core::algebra::Octonion;
use ewl_core::closed_form;
use ewl_core::ewl::{canonical_eta, EwlInstance};
use ewl_core::game::{self, EvalConfig, SearchConfig};
use ewl_core::quantum::{self, MixedQuantumStrategy};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Pure strategy: an SU(2) matrix with coefficients (a0, a1, b0, b1).
#[pyclass(name = "SU2Strategy", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PySU2 {
    inner: quantum::SU2Strategy,
}

#[pymethods]
impl PySU2 {
    #[new]
    fn new(a0: f64, a1: f64, b0: f64, b1: f64) -> PyResult<Self> {
        let inner = quantum::SU2Strategy::from_coefficients([a0, a1, b0, b1]).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_angles(theta: f64, phi: f64, psi: f64) -> Self {
        Self {
            inner: quantum::SU2Strategy::from_angles(theta, phi, psi),
        }
    }

    /// The classical move N.
    #[staticmethod]
    fn no_flip() -> Self {
        Self {
            inner: quantum::SU2Strategy::no_flip(),
        }
    }

    /// The classical move F for an `n_players` game.
    #[staticmethod]
    #[pyo3(signature = (n_players = 3))]
    fn flip(n_players: usize) -> PyResult<Self> {
        let eta = canonical_eta(n_players).map_err(err)?;
        Ok(Self {
            inner: quantum::SU2Strategy::flip(eta),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (seed, count))]
    fn haar_random(seed: u64, count: usize) -> Vec<Self> {
        use ewl_core::quantum::haar_sample;
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        (0..count).map(|_| Self { inner: haar_sample(&mut rng) }).collect()
    }

    fn coefficients(&self) -> [f64; 4] {
        self.inner.coefficients()
    }

    fn __repr__(&self) -> String {
        let [a0, a1, b0, b1] = self.inner.coefficients();
        format!("SU2Strategy({a0}, {a1}, {b0}, {b1})")
    }
}

/// Mixed quantum strategy: a finite mixture or the Haar measure.
#[pyclass(name = "MixedStrategy", frozen, from_py_object)]
#[derive(Clone)]
struct PyMixed {
    inner: MixedQuantumStrategy,
}

#[pymethods]
impl PyMixed {
    #[staticmethod]
    fn haar() -> Self {
        Self {
            inner: MixedQuantumStrategy::HaarUniform,
        }
    }

    #[staticmethod]
    fn pure(s: PySU2) -> Self {
        Self {
            inner: MixedQuantumStrategy::pure(s.inner),
        }
    }

    /// Flip with probability `flip_prob`, otherwise play N.
    #[staticmethod]
    #[pyo3(signature = (flip_prob, n_players = 3))]
    fn classical(flip_prob: f64, n_players: usize) -> PyResult<Self> {
        let eta = canonical_eta(n_players).map_err(err)?;
        let inner = MixedQuantumStrategy::classical(flip_prob, eta).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn finite(support: Vec<(f64, PySU2)>) -> PyResult<Self> {
        let inner = MixedQuantumStrategy::finite(support.into_iter().map(|(w, s)| (w, s.inner)).collect()).map_err(err)?;
        Ok(Self { inner })
    }

    fn is_haar(&self) -> bool {
        self.inner.is_haar()
    }

    fn __repr__(&self) -> String {
        match &self.inner {
            MixedQuantumStrategy::HaarUniform => "MixedStrategy.haar()".to_string(),
            MixedQuantumStrategy::Finite(s) => format!("MixedStrategy(<{} atoms>)", s.len()),
        }
    }
}

fn unwrap_pure(strategies: &[PySU2]) -> Vec<quantum::SU2Strategy> {
    strategies.iter().map(|s| s.inner).collect()
}

fn unwrap_mixed(profile: &[PyMixed]) -> Vec<MixedQuantumStrategy> {
    profile.iter().map(|s| s.inner.clone()).collect()
}

/// Outcome probabilities from the three-player closed form, indexed by
/// outcome with player 1 as the most significant bit (N = 0, F = 1).
#[pyfunction]
fn theorem1_distribution(s1: PySU2, s2: PySU2, s3: PySU2) -> Vec<f64> {
    closed_form::theorem1_distribution(&s1.inner, &s2.inner, &s3.inner).into_probs()
}

#[pyfunction]
fn landsburg_distribution(p: PySU2, q: PySU2) -> Vec<f64> {
    closed_form::landsburg_distribution(&p.inner, &q.inner).into_probs()
}

/// Closed-form distribution for 2 or 3 players.
#[pyfunction]
fn closed_form_distribution(strategies: Vec<PySU2>) -> PyResult<Vec<f64>> {
    Ok(closed_form::closed_form_distribution(&unwrap_pure(&strategies))
        .map_err(err)?
        .into_probs())
}

/// Outcome probabilities from the state-vector simulation.
#[pyfunction]
fn simulate(strategies: Vec<PySU2>) -> PyResult<Vec<f64>> {
    let inst = EwlInstance::canonical(strategies.len()).map_err(err)?;
    Ok(inst.simulate(&unwrap_pure(&strategies)).map_err(err)?.into_probs())
}

#[pyfunction]
fn outcome_label(index: usize, n_players: usize) -> String {
    quantum::outcome_label(index, n_players)
}

/// Octonion product of two coefficient vectors over (1, i1, ..., i7).
#[pyfunction]
fn octonion_mul(a: [f64; 8], b: [f64; 8]) -> [f64; 8] {
    *(Octonion::new(a) * Octonion::new(b)).coeffs()
}

/// `(confirmed, payoffs, gains, thresholds)`
type EquilibriumTuple = (bool, Vec<f64>, Vec<f64>, Vec<f64>);

#[pyclass(name = "Game", frozen)]
struct PyGame {
    inner: game::Game,
}

#[pymethods]
impl PyGame {
    /// `payoffs[k]` lists every player's payoff for outcome `k`.
    #[new]
    fn new(n_players: usize, payoffs: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Self {
            inner: game::Game::new(n_players, payoffs).map_err(err)?,
        })
    }

    /// Loads a JSON game spec file.
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        let spec = GameSpecFile::load(&path).map_err(err)?;
        Ok(Self {
            inner: spec.to_game().map_err(err)?,
        })
    }

    #[getter]
    fn n_players(&self) -> usize {
        self.inner.n_players()
    }

    fn payoffs(&self) -> Vec<Vec<f64>> {
        self.inner.payoffs().to_vec()
    }

    fn average_payoffs(&self) -> Vec<f64> {
        self.inner.average_payoffs()
    }

    fn quantum_payoff(&self, strategies: Vec<PySU2>) -> PyResult<Vec<f64>> {
        game::quantum_payoff(&self.inner, &unwrap_pure(&strategies)).map_err(err)
    }

    fn classical_payoff(&self, label: &str) -> PyResult<Vec<f64>> {
        let k = quantum::parse_outcome_label(label)
            .filter(|_| label.len() == self.inner.n_players())
            .ok_or_else(|| PyValueError::new_err(format!("bad outcome label {label:?}")))?;
        game::classical_payoff(&self.inner, k).map_err(err)
    }

    fn gmix_payoff(&self, flip_probs: Vec<f64>) -> PyResult<Vec<f64>> {
        game::gmix_payoff(&self.inner, &flip_probs).map_err(err)
    }

    /// Returns `(means, standard errors)`; errors are zero when exact.
    #[pyo3(signature = (profile, samples = 100_000, seed = 0))]
    fn mixed_quantum_payoff(&self, profile: Vec<PyMixed>, samples: usize, seed: u64) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let est = game::mixed_quantum_payoff(&self.inner, &unwrap_mixed(&profile), &EvalConfig::new(samples, seed))
            .map_err(err)?;
        Ok((est.mean, est.std_err))
    }

    /// Largest gap between mixed-quantum and classical-mixture payoffs on a grid.
    #[pyo3(signature = (grid_points = 5))]
    fn completeness_check(&self, grid_points: usize) -> PyResult<f64> {
        Ok(game::completeness_check(&self.inner, grid_points)
            .map_err(err)?
            .max_deviation)
    }

    /// Best-response check for every player. `profile` defaults to all Haar.
    /// Returns `(confirmed, payoffs, gains, thresholds)`.
    #[pyo3(signature = (profile = None, epsilon = 1e-6, samples = 100_000, seed = 0))]
    fn verify_equilibrium(
        &self,
        profile: Option<Vec<PyMixed>>,
        epsilon: f64,
        samples: usize,
        seed: u64,
    ) -> PyResult<EquilibriumTuple> {
        let profile = match profile {
            Some(p) => unwrap_mixed(&p),
            None => vec![MixedQuantumStrategy::HaarUniform; self.inner.n_players()],
        };
        let r = game::verify_equilibrium(&self.inner, &profile, epsilon, &SearchConfig::new(samples, seed))
            .map_err(err)?;
        Ok((
            r.confirmed(),
            r.payoffs.clone(),
            r.players.iter().map(|c| c.gain).collect(),
            r.players.iter().map(|c| c.threshold).collect(),
        ))
    }

    /// Security value reached by `player` (0-based) in a two-player game.
    #[pyo3(signature = (player = 0, restarts = 4, samples = 100_000, seed = 0))]
    fn maximin(&self, player: usize, restarts: usize, samples: usize, seed: u64) -> PyResult<f64> {
        Ok(game::maximin(&self.inner, player, restarts, &SearchConfig::new(samples, seed))
            .map_err(err)?
            .value)
    }
}

#[pymodule]
fn ewl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySU2>()?;
    m.add_class::<PyMixed>()?;
    m.add_class::<PyGame>()?;
    m.add_function(wrap_pyfunction!(theorem1_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(landsburg_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(outcome_label, m)?)?;
    m.add_function(wrap_pyfunction!(octonion_mul, m)?)?;
    Ok(())
}

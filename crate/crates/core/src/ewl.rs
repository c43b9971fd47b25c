//! Direct state-vector simulation of the maximally entangled EWL protocol.
//!
//! The referee prepares `(|0…0⟩ + |1…1⟩)/√2`, each player applies an SU(2)
//! strategy to their qubit, and the referee measures in the basis obtained by
//! applying every classical profile in `{N, F}ⁿ` to the initial state. This is
//! the ground truth the closed forms in [`crate::closed_form`] are checked
//! against.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::quantum::{
    gram_matrix, max_off_diagonal, measure_in_basis, tensor, OutcomeDistribution, SU2Strategy,
    StateVector, ORTHOGONALITY_TOLERANCE,
};
use crate::{Error, Result};

/// The flip phase that makes the outcome states orthogonal:
/// `(1+i)/√2` for two players (η⁸ = 1) and `1/2 + (√3/2) i` for three (η⁶ = 1).
pub fn canonical_eta(n_players: usize) -> Result<Complex64> {
    match n_players {
        2 => Ok(Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)),
        3 => Ok(Complex64::new(0.5, 3f64.sqrt() / 2.0)),
        n => Err(Error::UnsupportedPlayers(n)),
    }
}

/// A referee setup for `n_players` with flip phase `eta`.
#[derive(Debug, Clone)]
pub struct EwlInstance {
    n_players: usize,
    eta: Complex64,
    initial: StateVector,
    outcome_basis: Vec<StateVector>,
}

impl EwlInstance {
    /// Builds the initial state and outcome basis. Orthogonality is not
    /// required here so that non-canonical phases can be probed.
    pub fn new(n_players: usize, eta: Complex64) -> Result<Self> {
        if !(2..=3).contains(&n_players) {
            return Err(Error::UnsupportedPlayers(n_players));
        }
        if (eta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitEta(eta.norm()));
        }
        let dim = 1 << n_players;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amps[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let initial = StateVector::from_slice(&amps)?;

        let no_flip = SU2Strategy::no_flip().matrix();
        let flip = SU2Strategy::flip(eta).matrix();
        let outcome_basis = (0..dim)
            .map(|k| {
                let mats: Vec<Matrix2<Complex64>> = (0..n_players)
                    .map(|p| if (k >> (n_players - 1 - p)) & 1 == 1 { flip } else { no_flip })
                    .collect();
                initial.apply(&tensor(&mats)?).map(|v| v.normalized())
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            n_players,
            eta,
            initial,
            outcome_basis,
        })
    }

    pub fn canonical(n_players: usize) -> Result<Self> {
        Self::new(n_players, canonical_eta(n_players)?)
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn outcome_basis(&self) -> &[StateVector] {
        &self.outcome_basis
    }

    pub fn gram(&self) -> DMatrix<Complex64> {
        gram_matrix(&self.outcome_basis)
    }

    /// Largest off-diagonal Gram magnitude of the outcome basis.
    pub fn orthogonality_defect(&self) -> f64 {
        max_off_diagonal(&self.gram())
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonality_defect() <= ORTHOGONALITY_TOLERANCE
    }

    /// Outcome distribution when player `p` applies `strategies[p]`.
    pub fn simulate(&self, strategies: &[SU2Strategy]) -> Result<OutcomeDistribution> {
        if strategies.len() != self.n_players {
            return Err(Error::Arity {
                expected: self.n_players,
                got: strategies.len(),
            });
        }
        let mats: Vec<_> = strategies.iter().map(SU2Strategy::matrix).collect();
        let psi = self.initial.apply(&tensor(&mats)?)?;
        measure_in_basis(&psi, &self.outcome_basis)
    }

    /// Runs every classical profile and records how far each result is from
    /// the point mass on the matching outcome.
    pub fn classical_restriction_check(&self) -> Result<RestrictionReport> {
        let no_flip = SU2Strategy::no_flip();
        let flip = SU2Strategy::flip(self.eta);
        let mut deviations = Vec::with_capacity(1 << self.n_players);
        for k in 0..(1usize << self.n_players) {
            let profile: Vec<_> = (0..self.n_players)
                .map(|p| if (k >> (self.n_players - 1 - p)) & 1 == 1 { flip } else { no_flip })
                .collect();
            let d = self.simulate(&profile)?;
            deviations.push(d.linf_distance(&OutcomeDistribution::point_mass(self.n_players, k)));
        }
        Ok(RestrictionReport { deviations })
    }
}

/// Per-profile deviation from the classical outcome, indexed like outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionReport {
    pub deviations: Vec<f64>,
}

impl RestrictionReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_deviation() <= tolerance
    }
}

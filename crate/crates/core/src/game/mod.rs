//! Games, expected payoffs and equilibrium search.
//!
//! A [`Game`] assigns each of the `2ⁿ` outcomes a payoff vector. The quantized
//! game evaluates a profile of SU(2) strategies by taking the expectation of
//! those payoffs under the closed-form outcome distribution; mixed quantum
//! profiles are handled in [`mixed`], best responses and equilibria in
//! [`search`].

pub mod mixed;
pub mod search;

use num_complex::Complex64;

use crate::closed_form::closed_form_distribution;
use crate::ewl::canonical_eta;
use crate::quantum::{MixedQuantumStrategy, OutcomeDistribution, SU2Strategy};
use crate::{Error, Result};

pub use mixed::{completeness_check, mixed_quantum_payoff, CompletenessReport, EvalConfig, HaarMode, PayoffEstimate};
pub use search::{
    best_response, maximin, payoff_form, verify_equilibrium, BestResponse, EquilibriumReport, MaximinReport,
    PayoffForm, PlayerCheck, SearchConfig,
};

/// One mixed quantum strategy per player.
pub type Profile = Vec<MixedQuantumStrategy>;

/// A finite two-strategy game for 2 or 3 players.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    n_players: usize,
    payoffs: Vec<Vec<f64>>,
}

impl Game {
    /// `payoffs[outcome][player]`, outcomes in binary order with player 1 as
    /// the most significant bit.
    pub fn new(n_players: usize, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        if !(2..=3).contains(&n_players) {
            return Err(Error::UnsupportedPlayers(n_players));
        }
        if payoffs.len() != 1 << n_players {
            return Err(Error::InvalidGame(format!(
                "expected {} outcomes, got {}",
                1 << n_players,
                payoffs.len()
            )));
        }
        for (k, row) in payoffs.iter().enumerate() {
            if row.len() != n_players {
                return Err(Error::InvalidGame(format!(
                    "outcome {k} has {} payoffs, expected {n_players}",
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidGame(format!("outcome {k} has a non-finite payoff")));
            }
        }
        Ok(Self { n_players, payoffs })
    }

    /// Every outcome pays `values`.
    pub fn constant(values: &[f64]) -> Result<Self> {
        Self::new(values.len(), vec![values.to_vec(); 1 << values.len()])
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn n_outcomes(&self) -> usize {
        1 << self.n_players
    }

    pub fn payoffs(&self) -> &[Vec<f64>] {
        &self.payoffs
    }

    pub fn payoff(&self, outcome: usize) -> Option<&[f64]> {
        self.payoffs.get(outcome).map(Vec::as_slice)
    }

    /// Flip phase used for this player count.
    pub fn eta(&self) -> Complex64 {
        canonical_eta(self.n_players).expect("player count validated on construction")
    }

    pub fn no_flip(&self) -> SU2Strategy {
        SU2Strategy::no_flip()
    }

    pub fn flip(&self) -> SU2Strategy {
        SU2Strategy::flip(self.eta())
    }

    /// Mean of each player's payoff over all outcomes.
    pub fn average_payoffs(&self) -> Vec<f64> {
        let n = self.n_outcomes() as f64;
        (0..self.n_players)
            .map(|p| self.payoffs.iter().map(|row| row[p]).sum::<f64>() / n)
            .collect()
    }

    /// `max − min` of one player's payoffs.
    pub fn payoff_range(&self, player: usize) -> f64 {
        let (lo, hi) = self
            .payoffs
            .iter()
            .map(|row| row[player])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    }

    /// Same game with `player`'s payoffs mapped through `x ↦ scale·x + shift`.
    pub fn with_affine_payoffs(&self, player: usize, scale: f64, shift: f64) -> Result<Self> {
        self.check_player(player)?;
        let mut payoffs = self.payoffs.clone();
        for row in &mut payoffs {
            row[player] = scale * row[player] + shift;
        }
        Self::new(self.n_players, payoffs)
    }

    /// Expected payoff vector under an outcome distribution.
    pub fn expected_payoff(&self, dist: &OutcomeDistribution) -> Result<Vec<f64>> {
        if dist.probs().len() != self.n_outcomes() {
            return Err(Error::Arity {
                expected: self.n_outcomes(),
                got: dist.probs().len(),
            });
        }
        let mut out = vec![0.0; self.n_players];
        for (prob, row) in dist.probs().iter().zip(&self.payoffs) {
            for (acc, x) in out.iter_mut().zip(row) {
                *acc += prob * x;
            }
        }
        Ok(out)
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.n_players {
            return Err(Error::PlayerOutOfRange {
                player,
                n_players: self.n_players,
            });
        }
        Ok(())
    }

    pub(crate) fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.n_players {
            return Err(Error::Arity {
                expected: self.n_players,
                got,
            });
        }
        Ok(())
    }
}

/// Payoffs of the quantized game for pure SU(2) strategies.
pub fn quantum_payoff(game: &Game, strategies: &[SU2Strategy]) -> Result<Vec<f64>> {
    game.check_arity(strategies.len())?;
    game.expected_payoff(&closed_form_distribution(strategies)?)
}

/// Payoff of the classical outcome `outcome`.
pub fn classical_payoff(game: &Game, outcome: usize) -> Result<Vec<f64>> {
    game.payoff(outcome)
        .map(<[f64]>::to_vec)
        .ok_or_else(|| Error::InvalidGame(format!("no outcome {outcome}")))
}

/// Mixed-classical payoff when player `p` flips independently with
/// probability `flip_probs[p]`.
pub fn gmix_payoff(game: &Game, flip_probs: &[f64]) -> Result<Vec<f64>> {
    game.check_arity(flip_probs.len())?;
    if let Some(&bad) = flip_probs.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(Error::ProbabilityOutOfRange(bad));
    }
    let n = game.n_players;
    let probs = (0..game.n_outcomes())
        .map(|k| {
            (0..n)
                .map(|p| {
                    let r = flip_probs[p];
                    if (k >> (n - 1 - p)) & 1 == 1 { r } else { 1.0 - r }
                })
                .product()
        })
        .collect();
    game.expected_payoff(&OutcomeDistribution::from_weights(probs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dilemma() -> Game {
        Game::new(
            3,
            vec![
                vec![4.0, 4.0, 4.0],
                vec![2.0, 2.0, 5.0],
                vec![2.0, 5.0, 2.0],
                vec![0.0, 3.0, 3.0],
                vec![5.0, 2.0, 2.0],
                vec![3.0, 0.0, 3.0],
                vec![3.0, 3.0, 0.0],
                vec![1.0, 1.0, 1.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(Game::new(4, vec![]), Err(Error::UnsupportedPlayers(4)));
        assert!(matches!(Game::new(2, vec![vec![0.0, 0.0]; 3]), Err(Error::InvalidGame(_))));
        assert!(matches!(Game::new(2, vec![vec![0.0]; 4]), Err(Error::InvalidGame(_))));
        assert!(matches!(
            Game::new(2, vec![vec![0.0, f64::NAN]; 4]),
            Err(Error::InvalidGame(_))
        ));
    }

    #[test]
    fn classical_corners() {
        let g = dilemma();
        let (n, f) = (g.no_flip(), g.flip());
        assert_eq!(quantum_payoff(&g, &[n, n, n]).unwrap(), vec![4.0, 4.0, 4.0]);
        let all_f = quantum_payoff(&g, &[f, f, f]).unwrap();
        for x in all_f {
            assert!((x - 1.0).abs() < 1e-12);
        }
        assert_eq!(gmix_payoff(&g, &[0.0; 3]).unwrap(), vec![4.0; 3]);
        assert_eq!(gmix_payoff(&g, &[1.0; 3]).unwrap(), vec![1.0; 3]);
        let half = gmix_payoff(&g, &[0.5; 3]).unwrap();
        for (x, avg) in half.iter().zip(g.average_payoffs()) {
            assert!((x - avg).abs() < 1e-12);
        }
        assert_eq!(classical_payoff(&g, 0b100).unwrap(), vec![5.0, 2.0, 2.0]);
    }

    #[test]
    fn constant_game_ignores_strategies() {
        let g = Game::constant(&[1.0, -2.0, 3.5]).unwrap();
        let s = [
            SU2Strategy::from_angles(0.3, 1.0, 2.0),
            SU2Strategy::from_angles(2.1, -1.0, 0.2),
            SU2Strategy::from_angles(1.4, 0.0, 5.0),
        ];
        for (x, c) in quantum_payoff(&g, &s).unwrap().iter().zip([1.0, -2.0, 3.5]) {
            assert!((x - c).abs() < 1e-12);
        }
    }

    #[test]
    fn error_paths() {
        let g = dilemma();
        let n = g.no_flip();
        assert_eq!(quantum_payoff(&g, &[n, n]), Err(Error::Arity { expected: 3, got: 2 }));
        assert_eq!(gmix_payoff(&g, &[0.5, 1.2, 0.0]), Err(Error::ProbabilityOutOfRange(1.2)));
        assert!(g.with_affine_payoffs(3, 1.0, 0.0).is_err());
    }

    #[test]
    fn averages_and_ranges() {
        let g = dilemma();
        assert_eq!(g.average_payoffs(), vec![2.5; 3]);
        assert_eq!(g.payoff_range(0), 5.0);
    }
}

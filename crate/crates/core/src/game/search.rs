//! Best responses, equilibrium checks and maximin values.
//!
//! With every other player's mixed strategy fixed, a player's expected
//! payoff is a real quadratic form `cᵀ Q c` in their unit coefficient vector
//! `c = (a0, a1, b0, b1)`: the final state is linear in their SU(2) matrix and
//! the measurement basis is orthonormal. [`payoff_form`] recovers `Q` from ten
//! payoff evaluations by polarization; the angle search then runs on `Q`.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix4, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::mixed::{haar_design, mixed_quantum_payoff, EvalConfig, DEFAULT_SAMPLES};
use super::Game;
use crate::quantum::{haar_sample, MixedQuantumStrategy, SU2Strategy};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub eval: EvalConfig,
    /// Grid sizes for `θ ∈ [0, π]`, `φ ∈ [0, 2π)`, `ψ ∈ [0, 2π)`.
    pub grid: [usize; 3],
    /// Number of best grid points refined by coordinate descent.
    pub refine_starts: usize,
    /// Payoff tolerance of the refinement.
    pub tolerance: f64,
}

impl SearchConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            eval: EvalConfig::new(samples, seed),
            grid: [5, 8, 8],
            refine_starts: 8,
            tolerance: 1e-6,
        }
    }

    pub fn with_seed(seed: u64) -> Self {
        Self::new(DEFAULT_SAMPLES, seed)
    }
}

/// `Q` per beneficiary: `payoff[b] = cᵀ Q_b c` when `deviator` plays `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffForm {
    pub deviator: usize,
    pub matrices: Vec<Matrix4<f64>>,
}

impl PayoffForm {
    pub fn value(&self, beneficiary: usize, s: &SU2Strategy) -> f64 {
        quadratic(&self.matrices[beneficiary], &s.coefficients())
    }

    /// Expected value when the deviator plays a mixed strategy.
    pub fn expected(&self, beneficiary: usize, strategy: &MixedQuantumStrategy) -> f64 {
        let q = &self.matrices[beneficiary];
        match strategy {
            MixedQuantumStrategy::Finite(support) => support
                .iter()
                .map(|(w, s)| w * quadratic(q, &s.coefficients()))
                .sum(),
            MixedQuantumStrategy::HaarUniform => q.trace() / 4.0,
        }
    }
}

fn quadratic(q: &Matrix4<f64>, c: &[f64; 4]) -> f64 {
    let mut acc = 0.0;
    for r in 0..4 {
        for k in 0..4 {
            acc += c[r] * q[(r, k)] * c[k];
        }
    }
    acc
}

/// Recovers the payoff forms for `deviator`; the deviator's own entry in
/// `profile` is ignored. Haar opponents share one set of draws across all
/// ten evaluations.
pub fn payoff_form(
    game: &Game,
    profile: &[MixedQuantumStrategy],
    deviator: usize,
    eval: &EvalConfig,
) -> Result<PayoffForm> {
    game.check_arity(profile.len())?;
    game.check_player(deviator)?;
    let mut local = profile.to_vec();
    let mut at = |c: [f64; 4]| -> Result<Vec<f64>> {
        local[deviator] = MixedQuantumStrategy::pure(SU2Strategy::from_coefficients(c)?);
        Ok(mixed_quantum_payoff(game, &local, eval)?.mean)
    };

    let unit = |r: usize| {
        let mut c = [0.0; 4];
        c[r] = 1.0;
        c
    };
    let diag = (0..4).map(|r| at(unit(r))).collect::<Result<Vec<_>>>()?;
    let mut matrices = vec![Matrix4::zeros(); game.n_players()];
    for (b, m) in matrices.iter_mut().enumerate() {
        for r in 0..4 {
            m[(r, r)] = diag[r][b];
        }
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for r in 0..4 {
        for k in (r + 1)..4 {
            let mut c = [0.0; 4];
            c[r] = h;
            c[k] = h;
            let mid = at(c)?;
            for (b, m) in matrices.iter_mut().enumerate() {
                let off = mid[b] - 0.5 * (diag[r][b] + diag[k][b]);
                m[(r, k)] = off;
                m[(k, r)] = off;
            }
        }
    }
    Ok(PayoffForm { deviator, matrices })
}

/// Maximizes `cᵀ Q c` over SU(2) by a grid of angle triples followed by
/// coordinate descent from the best grid points.
pub fn maximize_form(q: &Matrix4<f64>, config: &SearchConfig) -> (SU2Strategy, f64) {
    let f = |a: &[f64; 3]| quadratic(q, &SU2Strategy::from_angles(a[0], a[1], a[2]).coefficients());
    let [nt, np, ns] = config.grid.map(|n| n.max(1));
    let mut starts = Vec::with_capacity(nt * np * ns);
    for t in 0..nt {
        let theta = if nt == 1 { 0.0 } else { PI * t as f64 / (nt - 1) as f64 };
        for p in 0..np {
            for s in 0..ns {
                let a = [theta, TAU * p as f64 / np as f64, TAU * s as f64 / ns as f64];
                starts.push((f(&a), a));
            }
        }
    }
    // stable sort keeps grid order among ties, so the result is deterministic
    starts.sort_by(|x, y| y.0.total_cmp(&x.0));

    let mut best = starts[0];
    for &(value, angles) in starts.iter().take(config.refine_starts.max(1)) {
        let refined = coordinate_ascent(&f, angles, value, config.tolerance);
        if refined.0 > best.0 {
            best = refined;
        }
    }
    let [t, p, s] = best.1;
    (SU2Strategy::from_angles(t, p, s), best.0)
}

fn coordinate_ascent<const N: usize>(
    f: &impl Fn(&[f64; N]) -> f64,
    mut x: [f64; N],
    mut value: f64,
    tolerance: f64,
) -> (f64, [f64; N]) {
    let mut step = 0.5;
    while step > 1e-9 {
        let before = value;
        for k in 0..N {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[k] += dir * step;
                let v = f(&y);
                if v > value {
                    value = v;
                    x = y;
                }
            }
        }
        if value - before <= tolerance * 1e-3 {
            step *= 0.5;
        }
    }
    (value, x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub strategy: SU2Strategy,
    pub payoff: f64,
    pub form: PayoffForm,
}

/// Best pure reply of `player` to the other entries of `profile`.
pub fn best_response(
    game: &Game,
    player: usize,
    profile: &[MixedQuantumStrategy],
    config: &SearchConfig,
) -> Result<BestResponse> {
    let form = payoff_form(game, profile, player, &config.eval)?;
    let (strategy, payoff) = maximize_form(&form.matrices[player], config);
    Ok(BestResponse { strategy, payoff, form })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerCheck {
    pub best_response: SU2Strategy,
    pub best_response_payoff: f64,
    /// The player's current payoff measured on the same draws as the best response.
    pub current_payoff: f64,
    pub gain: f64,
    /// Combined standard error of the current and best-response payoffs.
    pub std_err: f64,
    pub threshold: f64,
}

impl PlayerCheck {
    pub fn improves(&self) -> bool {
        self.gain > self.threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub profile: Vec<MixedQuantumStrategy>,
    pub payoffs: Vec<f64>,
    pub std_errs: Vec<f64>,
    pub players: Vec<PlayerCheck>,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl EquilibriumReport {
    pub fn confirmed(&self) -> bool {
        self.players.iter().all(|p| !p.improves())
    }

    pub fn max_gain(&self) -> f64 {
        self.players.iter().map(|p| p.gain).fold(0.0, f64::max)
    }
}

/// Checks every player for a profitable deviation. A gain counts when it
/// exceeds `max(epsilon_floor, 3 · combined standard error)`.
pub fn verify_equilibrium(
    game: &Game,
    profile: &[MixedQuantumStrategy],
    epsilon_floor: f64,
    config: &SearchConfig,
) -> Result<EquilibriumReport> {
    let current = mixed_quantum_payoff(game, profile, &config.eval)?;
    let mut players = Vec::with_capacity(game.n_players());
    for p in 0..game.n_players() {
        let br = best_response(game, p, profile, config)?;
        let on_same_draws = br.form.expected(p, &profile[p]);
        let mut deviated = profile.to_vec();
        deviated[p] = MixedQuantumStrategy::pure(br.strategy);
        let br_eval = mixed_quantum_payoff(game, &deviated, &config.eval)?;
        let std_err = current.std_err[p].hypot(br_eval.std_err[p]);
        players.push(PlayerCheck {
            best_response: br.strategy,
            best_response_payoff: br.payoff,
            current_payoff: on_same_draws,
            gain: (br.payoff - on_same_draws).max(0.0),
            std_err,
            threshold: epsilon_floor.max(3.0 * std_err),
        });
    }
    Ok(EquilibriumReport {
        profile: profile.to_vec(),
        payoffs: current.mean,
        std_errs: current.std_err,
        players,
        samples: current.samples,
        seed: config.eval.seed,
        tolerance: config.tolerance,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximinReport {
    pub player: usize,
    /// Best guaranteed payoff found.
    pub value: f64,
    pub strategy: MixedQuantumStrategy,
    /// Best security level reached by each candidate family.
    pub candidates: Vec<(String, f64)>,
}

/// Lowest payoff `player` can be held to by the opponent when playing `strategy`.
fn security(
    game: &Game,
    player: usize,
    strategy: &MixedQuantumStrategy,
    config: &SearchConfig,
) -> Result<f64> {
    let opponent = 1 - player;
    let mut profile = vec![MixedQuantumStrategy::pure(SU2Strategy::no_flip()); 2];
    profile[player] = strategy.clone();
    let form = payoff_form(game, &profile, opponent, &config.eval)?;
    // the opponent's best pure reply pins player's payoff at the smallest eigenvalue
    Ok(SymmetricEigen::new(form.matrices[player]).eigenvalues.min())
}

/// Searches mixed quantum strategies of `player` in a two-player game for
/// the highest guaranteed payoff.
///
/// Candidates are classical mixtures, pure quantum strategies on the search
/// grid, the Haar mixture, and equal-weight mixtures of four pure strategies
/// refined by coordinate ascent from seeded random starts.
pub fn maximin(game: &Game, player: usize, restarts: usize, config: &SearchConfig) -> Result<MaximinReport> {
    if game.n_players() != 2 {
        return Err(Error::UnsupportedPlayers(game.n_players()));
    }
    game.check_player(player)?;
    let mut candidates = Vec::new();
    let mut best: (f64, MixedQuantumStrategy) = (f64::NEG_INFINITY, MixedQuantumStrategy::HaarUniform);
    let mut consider = |label: String, value: f64, s: MixedQuantumStrategy, best: &mut (f64, MixedQuantumStrategy)| {
        candidates.push((label, value));
        if value > best.0 {
            *best = (value, s);
        }
    };

    let (mut classical_best, mut classical_s) = (f64::NEG_INFINITY, None);
    for k in 0..=20 {
        let s = MixedQuantumStrategy::classical(k as f64 / 20.0, game.eta())?;
        let v = security(game, player, &s, config)?;
        if v > classical_best {
            (classical_best, classical_s) = (v, Some(s));
        }
    }
    consider("classical mixture".into(), classical_best, classical_s.expect("grid is non-empty"), &mut best);

    let [nt, np, ns] = config.grid;
    let (mut pure_best, mut pure_s) = (f64::NEG_INFINITY, SU2Strategy::no_flip());
    for t in 0..nt {
        for p in 0..np {
            for s in 0..ns {
                let theta = if nt <= 1 { 0.0 } else { PI * t as f64 / (nt - 1) as f64 };
                let cand = SU2Strategy::from_angles(theta, TAU * p as f64 / np as f64, TAU * s as f64 / ns as f64);
                let v = security(game, player, &MixedQuantumStrategy::pure(cand), config)?;
                if v > pure_best {
                    (pure_best, pure_s) = (v, cand);
                }
            }
        }
    }
    consider("pure quantum".into(), pure_best, MixedQuantumStrategy::pure(pure_s), &mut best);

    let haar = security(game, player, &MixedQuantumStrategy::HaarUniform, config)?;
    consider("haar uniform".into(), haar, MixedQuantumStrategy::HaarUniform, &mut best);

    let mixture = |a: &[f64; 12]| -> MixedQuantumStrategy {
        MixedQuantumStrategy::Finite(
            a.chunks(3)
                .map(|t| (0.25, SU2Strategy::from_angles(t[0], t[1], t[2])))
                .collect(),
        )
    };
    let objective = |a: &[f64; 12]| security(game, player, &mixture(a), config).unwrap_or(f64::NEG_INFINITY);
    let mut rng = ChaCha8Rng::seed_from_u64(config.eval.seed);
    let (mut atoms_best, mut atoms_x) = (f64::NEG_INFINITY, [0.0; 12]);
    for _ in 0..restarts {
        let mut x = [0.0; 12];
        for t in x.chunks_mut(3) {
            let s = haar_sample(&mut rng);
            t[0] = 2.0 * s.b().norm().atan2(s.a().norm());
            t[1] = s.a().arg();
            t[2] = s.b().arg();
        }
        let (v, x) = coordinate_ascent(&objective, x, objective(&x), config.tolerance);
        if v > atoms_best {
            (atoms_best, atoms_x) = (v, x);
        }
    }
    if restarts > 0 {
        consider("four-atom mixture".into(), atoms_best, mixture(&atoms_x), &mut best);
    }

    Ok(MaximinReport {
        player,
        value: best.0,
        strategy: best.1,
        candidates,
    })
}

/// The Haar mixture's exact stand-in, exposed for tests and reports.
pub fn haar_equivalent() -> MixedQuantumStrategy {
    MixedQuantumStrategy::Finite(haar_design())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::quantum_payoff;

    fn game3() -> Game {
        Game::new(
            3,
            (0..8)
                .map(|k| vec![(k % 3) as f64, k as f64 * 0.5, ((k * 5) % 7) as f64 - 2.0])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn form_reproduces_direct_payoffs() {
        let g = game3();
        let opp = [SU2Strategy::from_angles(0.4, 1.0, -0.3), SU2Strategy::from_angles(2.0, 0.2, 0.9)];
        let profile = vec![
            MixedQuantumStrategy::HaarUniform,
            MixedQuantumStrategy::pure(opp[0]),
            MixedQuantumStrategy::pure(opp[1]),
        ];
        let form = payoff_form(&g, &profile, 0, &EvalConfig::new(10, 0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let s = haar_sample(&mut rng);
            let direct = quantum_payoff(&g, &[s, opp[0], opp[1]]).unwrap();
            for (b, d) in direct.iter().enumerate() {
                assert!((form.value(b, &s) - d).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn search_reaches_largest_eigenvalue() {
        let config = SearchConfig::new(10, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let a = Matrix4::from_fn(|_, _| haar_sample(&mut rng).a().re);
            let q = a + a.transpose();
            let top = SymmetricEigen::new(q).eigenvalues.max();
            let (s, v) = maximize_form(&q, &config);
            assert!((v - top).abs() < 1e-6, "{v} vs {top}");
            assert!((quadratic(&q, &s.coefficients()) - v).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_game_best_response_is_the_constant() {
        let g = Game::constant(&[2.0, 2.0, 2.0]).unwrap();
        let profile = vec![MixedQuantumStrategy::HaarUniform; 3];
        let br = best_response(&g, 1, &profile, &SearchConfig::new(200, 3)).unwrap();
        assert!((br.payoff - 2.0).abs() < 1e-9);
        let report = verify_equilibrium(&g, &profile, 1e-6, &SearchConfig::new(200, 3)).unwrap();
        assert!(report.confirmed());
        assert!(report.max_gain() < 1e-9);
    }

    #[test]
    fn pure_profile_best_response_is_deterministic() {
        let g = game3();
        let profile = vec![MixedQuantumStrategy::pure(g.no_flip()); 3];
        let a = best_response(&g, 2, &profile, &SearchConfig::new(10, 1)).unwrap();
        let b = best_response(&g, 2, &profile, &SearchConfig::new(10, 1)).unwrap();
        assert_eq!(a, b);
        let best_outcome = (0..2)
            .map(|bit| g.payoff(bit).unwrap()[2])
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(a.payoff >= best_outcome - 1e-9);
    }

    #[test]
    fn maximin_requires_two_players() {
        let g = game3();
        assert_eq!(
            maximin(&g, 0, 0, &SearchConfig::new(10, 0)).unwrap_err(),
            Error::UnsupportedPlayers(3)
        );
    }
}

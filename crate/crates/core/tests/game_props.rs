use ewl_core::game::{
    best_response, gmix_payoff, maximin, mixed_quantum_payoff, quantum_payoff, verify_equilibrium, EvalConfig, Game,
    SearchConfig,
};
use ewl_core::quantum::{haar_sample, MixedQuantumStrategy, SU2Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_game(rng: &mut ChaCha8Rng, n: usize) -> Game {
    let payoffs = (0..1 << n)
        .map(|_| (0..n).map(|_| rng.random_range(-5.0..5.0)).collect())
        .collect();
    Game::new(n, payoffs).unwrap()
}

fn dilemma() -> Game {
    // N: 2 per other cooperator; F: 1 + 2 per other cooperator
    let payoffs = (0..8usize)
        .map(|k| {
            (0..3)
                .map(|p| {
                    let defects = (k >> (2 - p)) & 1 == 1;
                    let others = (0..3).filter(|&q| q != p && (k >> (2 - q)) & 1 == 0).count() as f64;
                    2.0 * others + if defects { 1.0 } else { 0.0 }
                })
                .collect()
        })
        .collect();
    Game::new(3, payoffs).unwrap()
}

#[test]
fn payoff_is_multilinear_in_mixture_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = random_game(&mut rng, 3);
    let atoms: Vec<SU2Strategy> = (0..3).map(|_| haar_sample(&mut rng)).collect();
    let others = [haar_sample(&mut rng), haar_sample(&mut rng)];
    let w = [0.2, 0.5, 0.3];
    let mix = MixedQuantumStrategy::finite(w.iter().copied().zip(atoms.iter().copied()).collect()).unwrap();
    let profile = vec![
        MixedQuantumStrategy::pure(others[0]),
        mix,
        MixedQuantumStrategy::pure(others[1]),
    ];
    let got = mixed_quantum_payoff(&g, &profile, &EvalConfig::new(1, 0)).unwrap().mean;
    let mut want = vec![0.0; 3];
    for (wk, a) in w.iter().zip(&atoms) {
        for (acc, x) in want.iter_mut().zip(quantum_payoff(&g, &[others[0], *a, others[1]]).unwrap()) {
            *acc += wk * x;
        }
    }
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).abs() <= 1e-12);
    }
}

#[test]
fn affine_rescaling_moves_payoff_and_keeps_argmax() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = random_game(&mut rng, 3);
    let h = g.with_affine_payoffs(1, 2.5, -4.0).unwrap();
    let s = [haar_sample(&mut rng), haar_sample(&mut rng), haar_sample(&mut rng)];
    let (pg, ph) = (quantum_payoff(&g, &s).unwrap(), quantum_payoff(&h, &s).unwrap());
    assert!((ph[1] - (2.5 * pg[1] - 4.0)).abs() <= 1e-12);
    assert!((ph[0] - pg[0]).abs() <= 1e-12);

    let profile: Vec<_> = s.iter().map(|x| MixedQuantumStrategy::pure(*x)).collect();
    let config = SearchConfig::new(1, 7);
    let bg = best_response(&g, 1, &profile, &config).unwrap();
    let bh = best_response(&h, 1, &profile, &config).unwrap();
    assert!((bh.payoff - (2.5 * bg.payoff - 4.0)).abs() <= 1e-6);
    let (cg, ch) = (bg.strategy.coefficients(), bh.strategy.coefficients());
    let overlap: f64 = cg.iter().zip(ch).map(|(a, b)| a * b).sum();
    assert!(overlap.abs() >= 1.0 - 1e-6, "best responses differ: {cg:?} vs {ch:?}");
}

#[test]
fn all_haar_pays_the_outcome_average_on_random_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let profile = vec![MixedQuantumStrategy::HaarUniform; 3];
    for game_idx in 0..10 {
        let g = random_game(&mut rng, 3);
        let est = mixed_quantum_payoff(&g, &profile, &EvalConfig::new(100_000, 100 + game_idx)).unwrap();
        let exact = mixed_quantum_payoff(&g, &profile, &EvalConfig::exact(0)).unwrap();
        for (p, avg) in g.average_payoffs().iter().enumerate() {
            assert!((exact.mean[p] - avg).abs() <= 1e-12);
            assert!(
                (est.mean[p] - avg).abs() <= 3.0 * est.std_err[p],
                "game {game_idx} player {p}: {} vs {avg} (se {})",
                est.mean[p],
                est.std_err[p]
            );
        }
    }
}

#[test]
fn no_strategy_beats_the_average_against_haar_opponents() {
    let g = dilemma();
    let profile = vec![MixedQuantumStrategy::HaarUniform; 3];
    let mut config = SearchConfig::new(100, 4);
    config.eval = EvalConfig::exact(4);
    let br = best_response(&g, 0, &profile, &config).unwrap();
    assert!((br.payoff - g.average_payoffs()[0]).abs() <= 1e-9);
}

#[test]
fn classical_defection_is_not_a_quantum_equilibrium() {
    let g = dilemma();
    // FFF is the strict classical equilibrium
    for p in 0..3 {
        let mut k = 0b111usize;
        k &= !(1 << (2 - p));
        assert!(g.payoff(0b111).unwrap()[p] > g.payoff(k).unwrap()[p]);
    }
    let f = MixedQuantumStrategy::pure(g.flip());
    let report = verify_equilibrium(&g, &[f.clone(), f.clone(), f], 1e-6, &SearchConfig::new(1, 0)).unwrap();
    assert!(!report.confirmed());
    assert!(report.max_gain() > 1.0);
}

#[test]
fn zero_sum_maximin_reaches_outcome_average() {
    let g = Game::new(2, vec![vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, 1.0], vec![1.0, -1.0]]).unwrap();
    let report = maximin(&g, 0, 2, &SearchConfig::new(20_000, 11)).unwrap();
    assert!(report.value.abs() <= 1e-2 * 2.0, "value {}", report.value);
    let classical = report.candidates.iter().find(|(l, _)| l == "classical mixture").unwrap().1;
    assert!(classical <= 1e-9);
}

#[test]
fn gmix_matches_exact_classical_mixture() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = random_game(&mut rng, 2);
    let r = [0.3, 0.8];
    let profile: Vec<_> = r
        .iter()
        .map(|&x| MixedQuantumStrategy::classical(x, g.eta()).unwrap())
        .collect();
    let q = mixed_quantum_payoff(&g, &profile, &EvalConfig::new(1, 0)).unwrap();
    for (a, b) in q.mean.iter().zip(gmix_payoff(&g, &r).unwrap()) {
        assert!((a - b).abs() <= 1e-12);
    }
}

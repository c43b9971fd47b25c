use std::f64::consts::PI;
use std::path::Path;

use ewl_core::algebra::{cayley_dickson_mul, Octonion};
use ewl_core::closed_form::{closed_form_distribution, vanishing_projection_report};
use ewl_core::ewl::EwlInstance;
use ewl_core::game::{
    classical_payoff, completeness_check, gmix_payoff, maximin, mixed_quantum_payoff, quantum_payoff,
    verify_equilibrium, EvalConfig, Game, SearchConfig,
};
use ewl_core::quantum::{haar_sample, outcome_label, parse_outcome_label, MixedQuantumStrategy, SU2Strategy};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command, EquilibriumMode, GlobalOpts, VerifyArgs};
use crate::output::*;
use crate::spec_file::GameSpecFile;
use crate::{exit, shipped_games, CliError};

const ALGEBRA_PAIRS: usize = 10_000;
const STRUCTURE_TRIPLES: usize = 1_000;

/// Runs a parsed command line and returns the text to print and the exit code.
pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Simulate {
            game,
            strategies,
            random,
        } => simulate(g, game, strategies, *random),
        Command::Verify(args) => verify(g, args),
        Command::Equilibrium {
            game,
            players,
            mode,
            epsilon,
            maximizer,
            restarts,
        } => equilibrium(g, game, players, *mode, *epsilon, *maximizer, *restarts),
        Command::Payoff {
            game,
            players,
            classical,
            flip_probs,
        } => payoff(g, game, players, classical.as_deref(), flip_probs.as_deref()),
    }
}

fn parse_error(what: &'static str, input: &str, reason: impl ToString) -> CliError {
    CliError::Parse {
        what,
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_floats(what: &'static str, input: &str) -> Result<Vec<f64>, CliError> {
    input
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| parse_error(what, input, e)))
        .collect()
}

/// `N`, `F` or `a0,a1,b0,b1`.
pub fn parse_pure(token: &str, eta: Complex64) -> Result<SU2Strategy, CliError> {
    match token.trim() {
        "N" | "n" => Ok(SU2Strategy::no_flip()),
        "F" | "f" => Ok(SU2Strategy::flip(eta)),
        other => {
            let c = parse_floats("strategy", other)?;
            let c: [f64; 4] = c
                .try_into()
                .map_err(|_| parse_error("strategy", other, "expected N, F or four numbers a0,a1,b0,b1"))?;
            Ok(SU2Strategy::from_coefficients(c)?)
        }
    }
}

/// `haar`, `flip=<prob>`, or anything [`parse_pure`] accepts.
pub fn parse_mixed(token: &str, eta: Complex64) -> Result<MixedQuantumStrategy, CliError> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("haar") {
        return Ok(MixedQuantumStrategy::HaarUniform);
    }
    if let Some(r) = t.strip_prefix("flip=") {
        let r: f64 = r.parse().map_err(|e| parse_error("flip probability", t, e))?;
        return Ok(MixedQuantumStrategy::classical(r, eta)?);
    }
    Ok(MixedQuantumStrategy::pure(parse_pure(t, eta)?))
}

pub fn describe(s: &MixedQuantumStrategy) -> String {
    match s {
        MixedQuantumStrategy::HaarUniform => "haar".to_string(),
        MixedQuantumStrategy::Finite(support) => support
            .iter()
            .map(|(w, s)| {
                let c = s.coefficients();
                format!("{w:.4}*({:.6}, {:.6}, {:.6}, {:.6})", c[0], c[1], c[2], c[3])
            })
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

fn load(path: &Path) -> Result<(GameSpecFile, Game), CliError> {
    let spec = GameSpecFile::load(path)?;
    let game = spec.to_game()?;
    Ok((spec, game))
}

fn check_arity(game: &Game, got: usize) -> Result<(), CliError> {
    if got != game.n_players() {
        return Err(CliError::Invariant(ewl_core::Error::Arity {
            expected: game.n_players(),
            got,
        }));
    }
    Ok(())
}

fn simulate(g: &GlobalOpts, path: &Path, tokens: &[String], random: bool) -> Result<Rendered, CliError> {
    let (spec, game) = load(path)?;
    let strategies: Vec<SU2Strategy> = if random {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        (0..game.n_players()).map(|_| haar_sample(&mut rng)).collect()
    } else {
        check_arity(&game, tokens.len())?;
        tokens
            .iter()
            .map(|t| parse_pure(t, game.eta()))
            .collect::<Result<_, _>>()?
    };
    let closed = closed_form_distribution(&strategies)?;
    let oracle = EwlInstance::canonical(game.n_players())?.simulate(&strategies)?;
    let linf = closed.linf_distance(&oracle);
    let passed = linf <= g.tolerance;
    let report = SimulateReport {
        schema_version: SCHEMA_VERSION,
        command: "simulate",
        payoffs: game.expected_payoff(&closed)?,
        game: spec,
        seed: g.seed,
        strategies: strategies.iter().map(SU2Strategy::coefficients).collect(),
        outcomes: (0..game.n_outcomes()).map(|k| outcome_label(k, game.n_players())).collect(),
        closed_form: closed.into_probs(),
        oracle: oracle.into_probs(),
        linf_distance: linf,
        tolerance: g.tolerance,
        passed,
    };
    Ok(report.render(g.format, if passed { exit::PASS } else { exit::VERIFICATION_FAILED }))
}

fn classical_profile(n: usize, k: usize, eta: Complex64) -> Vec<SU2Strategy> {
    (0..n)
        .map(|p| if (k >> (n - 1 - p)) & 1 == 1 { SU2Strategy::flip(eta) } else { SU2Strategy::no_flip() })
        .collect()
}

pub fn theorem1_check(samples: usize, seed: u64, tolerance: f64) -> Result<Check, CliError> {
    let mut measurements = Vec::new();
    for n in [3, 2] {
        let inst = EwlInstance::canonical(n)?;
        let mut classical: f64 = 0.0;
        for k in 0..(1 << n) {
            let s = classical_profile(n, k, inst.eta());
            classical = classical.max(closed_form_distribution(&s)?.linf_distance(&inst.simulate(&s)?));
        }
        measurements.push(Measurement::at_most(
            format!("{n} players: classical profiles, max L-inf"),
            classical,
            tolerance,
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        let mut total_defect: f64 = 0.0;
        for _ in 0..samples {
            let s: Vec<_> = (0..n).map(|_| haar_sample(&mut rng)).collect();
            let closed = closed_form_distribution(&s)?;
            total_defect = total_defect.max((closed.total() - 1.0).abs());
            worst = worst.max(closed.linf_distance(&inst.simulate(&s)?));
        }
        measurements.push(Measurement::at_most(
            format!("{n} players: {samples} Haar profiles, max L-inf"),
            worst,
            tolerance,
        ));
        measurements.push(Measurement::at_most(
            format!("{n} players: max |sum of probabilities - 1|"),
            total_defect,
            1e-12,
        ));
    }
    Ok(Check::new("theorem1", measurements))
}

pub fn orthogonality_check() -> Result<Check, CliError> {
    let identity_defect = |inst: &EwlInstance| {
        let g = inst.gram();
        let mut worst: f64 = 0.0;
        for r in 0..g.nrows() {
            for c in 0..g.ncols() {
                let want = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((g[(r, c)] - want).norm());
            }
        }
        worst
    };
    let mut m = Vec::new();
    for (n, probe, probe_name) in [(3, PI / 4.0, "e^{i pi/4}"), (2, PI / 3.0, "e^{i pi/3}")] {
        let canonical = EwlInstance::canonical(n)?;
        m.push(Measurement::at_most(
            format!("{n} players, canonical eta: max |G - I|"),
            identity_defect(&canonical),
            1e-12,
        ));
        let bad = EwlInstance::new(n, Complex64::from_polar(1.0, probe))?;
        m.push(Measurement::above(
            format!("{n} players, eta = {probe_name}: max off-diagonal"),
            bad.orthogonality_defect(),
            1e-3,
        ));
        let one = EwlInstance::new(n, Complex64::new(1.0, 0.0))?;
        m.push(Measurement::info(
            format!("{n} players, eta = 1: max off-diagonal"),
            one.orthogonality_defect(),
        ));
    }
    Ok(Check::new("orthogonality", m))
}

pub fn properness_check(games: &[(String, Game)]) -> Result<Check, CliError> {
    let mut m = Vec::new();
    for n in [2, 3] {
        let report = EwlInstance::canonical(n)?.classical_restriction_check()?;
        m.push(Measurement::at_most(
            format!("{n} players: classical profiles vs point masses"),
            report.max_deviation(),
            1e-12,
        ));
    }
    for (name, game) in games {
        let mut worst: f64 = 0.0;
        for k in 0..game.n_outcomes() {
            let q = quantum_payoff(game, &classical_profile(game.n_players(), k, game.eta()))?;
            let c = classical_payoff(game, k)?;
            for (a, b) in q.iter().zip(&c) {
                worst = worst.max((a - b).abs());
            }
        }
        m.push(Measurement::at_most(format!("{name}: quantized vs classical payoffs"), worst, 1e-12));
    }
    Ok(Check::new("properness", m))
}

pub fn completeness_suite(games: &[(String, Game)]) -> Result<Check, CliError> {
    let mut m = Vec::new();
    for (name, game) in games {
        let r = completeness_check(game, 5)?;
        m.push(Measurement::at_most(
            format!("{name}: {} mixtures, max |G^Q - G^mix|", r.points),
            r.max_deviation,
            1e-10,
        ));
    }
    Ok(Check::new("completeness", m))
}

pub fn fano_check(seed: u64) -> Check {
    let i = Octonion::basis;
    let mut basis_dev: f64 = 0.0;
    let mut anti: f64 = 0.0;
    for j in 0..8 {
        for k in 0..8 {
            let (x, y) = (i(j), i(k));
            basis_dev = basis_dev.max(cayley_dickson_mul(&x, &y).max_abs_diff(&(x * y)));
            if j != k && j > 0 && k > 0 {
                anti = anti.max((x * y).max_abs_diff(&-(y * x)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_oct = || Octonion::new(std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
    let (mut cd, mut norm, mut alt, mut conj) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..ALGEBRA_PAIRS {
        let (a, b) = (random_oct(), random_oct());
        let ab = a * b;
        cd = cd.max(cayley_dickson_mul(&a, &b).max_abs_diff(&ab));
        let nn = a.norm() * b.norm();
        norm = norm.max((ab.norm() - nn).abs() / (1.0 + nn));
        alt = alt.max((a * (a * b)).max_abs_diff(&((a * a) * b)));
        conj = conj.max(ab.conj().max_abs_diff(&(b.conj() * a.conj())));
    }
    let left = (i(1) * i(2)) * i(3);
    let right = i(1) * (i(2) * i(3));
    Check::new(
        "fano",
        vec![
            Measurement::at_most("64 basis pairs: Fano vs Cayley-Dickson", basis_dev, 1e-12),
            Measurement::at_most(format!("{ALGEBRA_PAIRS} random pairs: Fano vs Cayley-Dickson"), cd, 1e-12),
            Measurement::at_most("norm multiplicativity (relative)", norm, 1e-10),
            Measurement::at_most("alternativity a(ab) = (aa)b", alt, 1e-10),
            Measurement::at_most("anti-commutation of distinct units", anti, 1e-10),
            Measurement::at_most("conj(ab) = conj(b) conj(a)", conj, 1e-10),
            Measurement::at_most("(i1 i2) i3 = -i6", left.max_abs_diff(&-i(6)), 1e-12),
            Measurement::at_most("i1 (i2 i3) = +i6", right.max_abs_diff(&i(6)), 1e-12),
        ],
    )
}

pub fn vanishing_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut unused, mut para, mut weight) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..STRUCTURE_TRIPLES {
        let s = [haar_sample(&mut rng), haar_sample(&mut rng), haar_sample(&mut rng)];
        let r = vanishing_projection_report(&s[0], &s[1], &s[2]);
        unused = unused.max(r.max_unused());
        para = para.max(r.max_parallelogram_defect());
        weight = weight.max((r.unused_weight - 1.0).abs());
    }
    Check::new(
        "vanishing",
        vec![
            Measurement::at_most(format!("{STRUCTURE_TRIPLES} triples: max unused projection"), unused, 1e-10),
            Measurement::at_most("|X+|^2 + |X-|^2 = |Y+|^2 + |Y-|^2 = 1", para, 1e-10),
            Measurement::info("max |total unused weight - 1|", weight),
        ],
    )
}

fn verify(g: &GlobalOpts, args: &VerifyArgs) -> Result<Rendered, CliError> {
    let [theorem1, orthogonality, properness, completeness, fano, vanishing] = args.selected();
    let games: Vec<(String, Game)> = if args.games.is_empty() {
        shipped_games()
            .into_iter()
            .map(|(name, spec)| Ok((name.to_string(), spec.to_game()?)))
            .collect::<Result<_, CliError>>()?
    } else {
        args.games
            .iter()
            .map(|p| Ok((p.display().to_string(), load(p)?.1)))
            .collect::<Result<_, CliError>>()?
    };

    let mut checks = Vec::new();
    if theorem1 {
        checks.push(theorem1_check(g.samples, g.seed, g.tolerance)?);
    }
    if orthogonality {
        checks.push(orthogonality_check()?);
    }
    if properness {
        checks.push(properness_check(&games)?);
    }
    if completeness {
        checks.push(completeness_suite(&games)?);
    }
    if fano {
        checks.push(fano_check(g.seed));
    }
    if vanishing {
        checks.push(vanishing_check(g.seed));
    }
    let passed = checks.iter().all(|c| c.passed);
    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        seed: g.seed,
        samples: g.samples,
        passed,
        checks,
    };
    Ok(report.render(g.format, if passed { exit::PASS } else { exit::VERIFICATION_FAILED }))
}

fn parse_profile(game: &Game, tokens: &[String]) -> Result<(Vec<MixedQuantumStrategy>, Vec<String>), CliError> {
    if tokens.is_empty() {
        let profile = vec![MixedQuantumStrategy::HaarUniform; game.n_players()];
        return Ok((profile, vec!["haar".to_string(); game.n_players()]));
    }
    check_arity(game, tokens.len())?;
    let profile = tokens
        .iter()
        .map(|t| parse_mixed(t, game.eta()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((profile, tokens.iter().map(|t| t.trim().to_string()).collect()))
}

#[allow(clippy::too_many_arguments)]
fn equilibrium(
    g: &GlobalOpts,
    path: &Path,
    tokens: &[String],
    mode: EquilibriumMode,
    epsilon: f64,
    maximizer: usize,
    restarts: usize,
) -> Result<Rendered, CliError> {
    let (spec, game) = load(path)?;
    let config = SearchConfig::new(g.samples, g.seed);
    let averages = game.average_payoffs();
    match mode {
        EquilibriumMode::Verify => {
            let (profile, names) = parse_profile(&game, tokens)?;
            let report = verify_equilibrium(&game, &profile, epsilon, &config)?;
            let players = report
                .players
                .iter()
                .enumerate()
                .map(|(p, c)| PlayerLine {
                    player: p + 1,
                    payoff: report.payoffs[p],
                    std_err: report.std_errs[p],
                    outcome_average: averages[p],
                    best_response: c.best_response.coefficients(),
                    best_response_payoff: c.best_response_payoff,
                    current_on_same_draws: c.current_payoff,
                    gain: c.gain,
                    combined_std_err: c.std_err,
                    threshold: c.threshold,
                    improves: c.improves(),
                })
                .collect();
            let confirmed = report.confirmed();
            let out = EquilibriumOut {
                schema_version: SCHEMA_VERSION,
                command: "equilibrium",
                mode: "verify",
                game: spec,
                seed: g.seed,
                samples: report.samples,
                profile: names,
                players,
                confirmed,
            };
            Ok(out.render(g.format, if confirmed { exit::PASS } else { exit::VERIFICATION_FAILED }))
        }
        EquilibriumMode::Maximin => {
            if maximizer == 0 || maximizer > game.n_players() {
                return Err(CliError::Invariant(ewl_core::Error::PlayerOutOfRange {
                    player: maximizer,
                    n_players: game.n_players(),
                }));
            }
            let player = maximizer - 1;
            let report = maximin(&game, player, restarts, &config)?;
            let out = MaximinOut {
                schema_version: SCHEMA_VERSION,
                command: "equilibrium",
                mode: "maximin",
                game: spec,
                seed: g.seed,
                samples: g.samples,
                player: maximizer,
                value: report.value,
                outcome_average: averages[player],
                payoff_range: game.payoff_range(player),
                strategy: describe(&report.strategy),
                candidates: report
                    .candidates
                    .into_iter()
                    .map(|(family, security)| Candidate { family, security })
                    .collect(),
            };
            Ok(out.render(g.format, exit::PASS))
        }
    }
}

fn payoff(
    g: &GlobalOpts,
    path: &Path,
    tokens: &[String],
    classical: Option<&str>,
    flip_probs: Option<&str>,
) -> Result<Rendered, CliError> {
    let (spec, game) = load(path)?;
    let n = game.n_players();
    let (payoffs, std_errs, samples, profile, mixed_classical) = if let Some(label) = classical {
        let k = parse_outcome_label(label)
            .filter(|_| label.len() == n)
            .ok_or_else(|| parse_error("outcome label", label, format!("expected {n} letters over N, F")))?;
        (classical_payoff(&game, k)?, vec![0.0; n], 0, label.chars().map(String::from).collect(), None)
    } else if let Some(probs) = flip_probs {
        let r = parse_floats("flip probabilities", probs)?;
        check_arity(&game, r.len())?;
        let gmix = gmix_payoff(&game, &r)?;
        (
            gmix.clone(),
            vec![0.0; n],
            0,
            r.iter().map(|x| format!("flip={x}")).collect(),
            Some(gmix),
        )
    } else {
        let (profile, names) = parse_profile(&game, tokens)?;
        let est = mixed_quantum_payoff(&game, &profile, &EvalConfig::new(g.samples, g.seed))?;
        (est.mean, est.std_err, est.samples, names, None)
    };
    let out = PayoffOut {
        schema_version: SCHEMA_VERSION,
        command: "payoff",
        game: spec,
        seed: g.seed,
        profile,
        payoffs,
        std_errs,
        samples,
        mixed_classical,
        outcome_average: game.average_payoffs(),
    };
    Ok(out.render(g.format, exit::PASS))
}


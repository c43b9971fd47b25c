use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "ewl", version, about = "Three-player maximally entangled EWL quantum games")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GlobalOpts {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo samples (also the size of random verification sweeps).
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: usize,
    /// Tolerance for closed-form vs oracle comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Outcome distribution from the closed form and the state-vector oracle.
    Simulate {
        game: PathBuf,
        /// Per-player strategy: N, F or a0,a1,b0,b1. Repeat once per player.
        #[arg(long = "strategy", short = 's', allow_hyphen_values = true)]
        strategies: Vec<String>,
        /// Draw Haar-random strategies from --seed instead.
        #[arg(long, conflicts_with = "strategies")]
        random: bool,
    },
    /// Run verification suites; with no flags all of the standard suites run.
    Verify(VerifyArgs),
    /// Check a mixed quantum profile for profitable deviations, or search
    /// for a two-player maximin value.
    Equilibrium {
        game: PathBuf,
        /// Per-player strategy: haar, N, F, flip=<prob> or a0,a1,b0,b1.
        /// Defaults to haar for every player.
        #[arg(long = "player", short = 'p', allow_hyphen_values = true)]
        players: Vec<String>,
        #[arg(long, value_enum, default_value_t = EquilibriumMode::Verify)]
        mode: EquilibriumMode,
        /// Smallest gain that counts as an improvement.
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        /// Player whose guaranteed payoff is maximized in maximin mode (1-based).
        #[arg(long, default_value_t = 1)]
        maximizer: usize,
        /// Random restarts of the four-atom mixture search in maximin mode.
        #[arg(long, default_value_t = 4)]
        restarts: usize,
    },
    /// Expected payoffs of a classical outcome, classical mixture or quantum profile.
    Payoff {
        game: PathBuf,
        /// Per-player strategy: haar, N, F, flip=<prob> or a0,a1,b0,b1.
        #[arg(long = "player", short = 'p', allow_hyphen_values = true)]
        players: Vec<String>,
        /// Classical outcome label such as NFN.
        #[arg(long, conflicts_with_all = ["players", "flip_probs"])]
        classical: Option<String>,
        /// Independent flip probabilities, comma separated.
        #[arg(long, conflicts_with = "players")]
        flip_probs: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquilibriumMode {
    Verify,
    Maximin,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Closed form vs oracle on classical profiles and --samples random triples.
    #[arg(long)]
    pub theorem1: bool,
    /// Outcome-basis Gram matrices, including non-canonical phases.
    #[arg(long)]
    pub orthogonality: bool,
    /// Classical profiles reproduce the classical game.
    #[arg(long)]
    pub properness: bool,
    /// Classical mixtures reproduce the mixed-classical game on a 5ⁿ grid.
    #[arg(long)]
    pub completeness: bool,
    /// Fano table vs Cayley–Dickson doubling and the algebra identities.
    #[arg(long)]
    pub fano: bool,
    /// Magnitude of the projections the probabilities never read.
    #[arg(long)]
    pub vanishing: bool,
    /// Game specs for properness/completeness; defaults to the shipped games.
    #[arg(long = "game")]
    pub games: Vec<PathBuf>,
}

impl VerifyArgs {
    /// The standard suites; `vanishing` only runs when asked for.
    pub fn selected(&self) -> [bool; 6] {
        let any = self.theorem1 || self.orthogonality || self.properness || self.completeness || self.fano;
        let all = !any && !self.vanishing;
        [
            self.theorem1 || all,
            self.orthogonality || all,
            self.properness || all,
            self.completeness || all,
            self.fano || all,
            self.vanishing,
        ]
    }
}

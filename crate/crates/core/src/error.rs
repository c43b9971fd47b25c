use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("octonion basis index {0} out of range 0..=7")]
    IndexOutOfRange(usize),

    #[error("strategy is not unit: |A|^2 + |B|^2 = {norm_sqr}")]
    NonUnitStrategy { norm_sqr: f64 },

    #[error("unsupported number of players: {0} (expected 2 or 3)")]
    UnsupportedPlayers(usize),

    #[error("expected {expected} items, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("measurement basis is not orthogonal (max off-diagonal {max_off_diagonal:e})")]
    NonOrthogonalBasis { max_off_diagonal: f64 },

    #[error("state has zero projection onto the measurement basis")]
    ZeroProjection,

    #[error("state vector is zero")]
    ZeroState,

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("mixture weights must be non-negative and sum to 1 (sum = {0})")]
    InvalidMixture(f64),

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("player index {player} out of range for a {n_players}-player game")]
    PlayerOutOfRange { player: usize, n_players: usize },

    #[error("eta must be a unit complex number (|eta| = {0})")]
    NonUnitEta(f64),

    #[error("number of samples must be at least 1")]
    NoSamples,
}

//! Game specification files.
//!
//! A game is a JSON document keyed by outcome labels over `{N, F}`:
//!
//! ```json
//! {
//!   "name": "three-player dilemma",
//!   "players": 3,
//!   "payoffs": { "NNN": [4, 4, 4], "NNF": [2, 2, 5], ... }
//! }
//! ```
//!
//! Every one of the `2ⁿ` labels must appear exactly once with `n` finite payoffs.

use std::fmt;
use std::path::Path;

use ewl_core::game::Game;
use ewl_core::quantum::{outcome_label, parse_outcome_label};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed game spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid game spec: {0}")]
    Invalid(String),
}

/// Outcome-keyed payoff table, kept in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PayoffTable(pub Vec<(String, Vec<f64>)>);

impl Serialize for PayoffTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PayoffTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;

        impl<'de> Visitor<'de> for TableVisitor {
            type Value = PayoffTable;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from outcome labels to payoff arrays")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<PayoffTable, A::Error> {
                let mut entries = Vec::new();
                while let Some(entry) = access.next_entry::<String, Vec<f64>>()? {
                    entries.push(entry);
                }
                Ok(PayoffTable(entries))
            }
        }

        deserializer.deserialize_map(TableVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub players: usize,
    pub payoffs: PayoffTable,
}

impl GameSpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let spec: GameSpecFile = serde_json::from_str(text)?;
        spec.to_game()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SpecError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_game(&self) -> Result<Game, SpecError> {
        let n = self.players;
        if !(2..=3).contains(&n) {
            return Err(SpecError::Invalid(format!("players must be 2 or 3, got {n}")));
        }
        let mut rows: Vec<Option<Vec<f64>>> = vec![None; 1 << n];
        for (label, payoff) in &self.payoffs.0 {
            let idx = parse_outcome_label(label)
                .filter(|_| label.len() == n)
                .ok_or_else(|| SpecError::Invalid(format!("bad outcome label {label:?}")))?;
            if rows[idx].is_some() {
                return Err(SpecError::Invalid(format!("outcome {label} listed twice")));
            }
            rows[idx] = Some(payoff.clone());
        }
        let payoffs = rows
            .into_iter()
            .enumerate()
            .map(|(k, row)| row.ok_or_else(|| SpecError::Invalid(format!("missing outcome {}", outcome_label(k, n)))))
            .collect::<Result<Vec<_>, _>>()?;
        Game::new(n, payoffs).map_err(|e| SpecError::Invalid(e.to_string()))
    }

    /// Payoff table in outcome order with no metadata.
    pub fn from_game(game: &Game) -> Self {
        let n = game.n_players();
        Self {
            name: None,
            description: None,
            players: n,
            payoffs: PayoffTable(
                game.payoffs()
                    .iter()
                    .enumerate()
                    .map(|(k, row)| (outcome_label(k, n), row.clone()))
                    .collect(),
            ),
        }
    }
}

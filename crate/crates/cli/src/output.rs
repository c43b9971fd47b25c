//! Report types. Structured output is the JSON form of these structs; field
//! order is fixed, so equal inputs give byte-identical output.

use std::fmt::Write;

use serde::Serialize;

use crate::args::Format;
use crate::spec_file::GameSpecFile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub game: GameSpecFile,
    pub seed: u64,
    pub strategies: Vec<[f64; 4]>,
    pub outcomes: Vec<String>,
    pub closed_form: Vec<f64>,
    pub oracle: Vec<f64>,
    pub linf_distance: f64,
    pub tolerance: f64,
    pub payoffs: Vec<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    /// `"<="` or `">"`; how `value` must relate to `bound`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl Measurement {
    pub fn at_most(label: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            label: label.into(),
            value,
            relation: Some("<="),
            bound: Some(bound),
        }
    }

    pub fn above(label: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            label: label.into(),
            value,
            relation: Some(">"),
            bound: Some(bound),
        }
    }

    pub fn info(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
            relation: None,
            bound: None,
        }
    }

    pub fn passed(&self) -> bool {
        match (self.relation, self.bound) {
            (Some("<="), Some(b)) => self.value <= b,
            (Some(">"), Some(b)) => self.value > b,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measurements: Vec<Measurement>,
}

impl Check {
    pub fn new(name: &'static str, measurements: Vec<Measurement>) -> Self {
        Self {
            name,
            passed: measurements.iter().all(Measurement::passed),
            measurements,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlayerLine {
    pub player: usize,
    pub payoff: f64,
    pub std_err: f64,
    pub outcome_average: f64,
    pub best_response: [f64; 4],
    pub best_response_payoff: f64,
    pub current_on_same_draws: f64,
    pub gain: f64,
    pub combined_std_err: f64,
    pub threshold: f64,
    pub improves: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumOut {
    pub schema_version: u32,
    pub command: &'static str,
    pub mode: &'static str,
    pub game: GameSpecFile,
    pub seed: u64,
    pub samples: usize,
    pub profile: Vec<String>,
    pub players: Vec<PlayerLine>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub family: String,
    pub security: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MaximinOut {
    pub schema_version: u32,
    pub command: &'static str,
    pub mode: &'static str,
    pub game: GameSpecFile,
    pub seed: u64,
    pub samples: usize,
    pub player: usize,
    pub value: f64,
    pub outcome_average: f64,
    pub payoff_range: f64,
    pub strategy: String,
    pub candidates: Vec<Candidate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PayoffOut {
    pub schema_version: u32,
    pub command: &'static str,
    pub game: GameSpecFile,
    pub seed: u64,
    pub profile: Vec<String>,
    pub payoffs: Vec<f64>,
    pub std_errs: Vec<f64>,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixed_classical: Option<Vec<f64>>,
    pub outcome_average: Vec<f64>,
}

/// Text and exit code of one command.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    pub exit_code: i32,
}

pub trait Report: Serialize {
    fn table(&self) -> String;

    fn render(&self, format: Format, exit_code: i32) -> Rendered {
        let text = match format {
            Format::Table => self.table(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        };
        Rendered { text, exit_code }
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

impl Report for SimulateReport {
    fn table(&self) -> String {
        let mut s = String::new();
        for (p, c) in self.strategies.iter().enumerate() {
            let _ = writeln!(s, "player {}: (a0, a1, b0, b1) = {}", p + 1, fmt_vec(c));
        }
        let _ = writeln!(s, "\n{:<8} {:>14} {:>14}", "outcome", "closed form", "oracle");
        for ((label, c), o) in self.outcomes.iter().zip(&self.closed_form).zip(&self.oracle) {
            let _ = writeln!(s, "{label:<8} {c:>14.10} {o:>14.10}");
        }
        let _ = writeln!(
            s,
            "\nL-inf distance {:.3e} (tolerance {:.1e}) {}",
            self.linf_distance,
            self.tolerance,
            if self.passed { "ok" } else { "FAIL" }
        );
        let _ = writeln!(s, "expected payoffs {}", fmt_vec(&self.payoffs));
        s
    }
}

impl Report for VerifyReport {
    fn table(&self) -> String {
        let mut s = String::new();
        for check in &self.checks {
            let _ = writeln!(s, "[{}] {}", if check.passed { "PASS" } else { "FAIL" }, check.name);
            for m in &check.measurements {
                let cmp = match (m.relation, m.bound) {
                    (Some(r), Some(b)) => format!(" {r} {b:.1e}"),
                    _ => String::new(),
                };
                let mark = if m.passed() { "" } else { "  <-- failed" };
                let _ = writeln!(s, "    {:<52} {:.3e}{cmp}{mark}", m.label, m.value);
            }
        }
        let _ = writeln!(s, "{}", if self.passed { "all checks passed" } else { "verification FAILED" });
        s
    }
}

impl Report for EquilibriumOut {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "profile: {}", self.profile.join(" | "));
        let _ = writeln!(
            s,
            "{:<7} {:>11} {:>10} {:>11} {:>11} {:>10} {:>10}  best response (a0, a1, b0, b1)",
            "player", "payoff", "std err", "average", "br payoff", "gain", "threshold"
        );
        for p in &self.players {
            let _ = writeln!(
                s,
                "{:<7} {:>11.6} {:>10.2e} {:>11.6} {:>11.6} {:>10.2e} {:>10.2e}  {}",
                p.player,
                p.payoff,
                p.std_err,
                p.outcome_average,
                p.best_response_payoff,
                p.gain,
                p.threshold,
                fmt_vec(&p.best_response)
            );
        }
        let _ = writeln!(
            s,
            "{}",
            if self.confirmed {
                "equilibrium confirmed: no player gains more than their threshold"
            } else {
                "NOT an equilibrium: some player has a profitable deviation"
            }
        );
        s
    }
}

impl Report for MaximinOut {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "maximin for player {}", self.player);
        for c in &self.candidates {
            let _ = writeln!(s, "    {:<20} {:>12.6}", c.family, c.security);
        }
        let _ = writeln!(s, "value           {:.6}", self.value);
        let _ = writeln!(s, "outcome average {:.6}", self.outcome_average);
        let _ = writeln!(s, "strategy        {}", self.strategy);
        s
    }
}

impl Report for PayoffOut {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "profile: {}", self.profile.join(" | "));
        let _ = writeln!(s, "payoffs         {}", fmt_vec(&self.payoffs));
        if self.samples > 0 {
            let _ = writeln!(s, "std errors      {} ({} samples)", fmt_vec(&self.std_errs), self.samples);
        }
        if let Some(m) = &self.mixed_classical {
            let _ = writeln!(s, "mixed classical {}", fmt_vec(m));
        }
        let _ = writeln!(s, "outcome average {}", fmt_vec(&self.outcome_average));
        s
    }
}

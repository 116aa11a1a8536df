use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TurnRecord {
    pub turn: u32,
    pub probes: Vec<String>,
    pub distances: Vec<u32>,
    /// Candidates left after the probe; absent on infinite arenas.
    pub belief: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "UPPERCASE", deny_unknown_fields)]
pub enum Outcome {
    Win { vertex: String, turn: u32 },
    Escape { turns: u32 },
    Timeout { turns: u32 },
}

impl Outcome {
    pub fn is_win(&self) -> bool {
        matches!(self, Outcome::Win { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Win { .. } => "WIN",
            Outcome::Escape { .. } => "ESCAPE",
            Outcome::Timeout { .. } => "TIMEOUT",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranscriptError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("transcript has no outcome line")]
    MissingOutcome,
}

/// Turn-by-turn record of one game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub turns: Vec<TurnRecord>,
    pub outcome: Outcome,
}

impl Transcript {
    /// One JSON object per line: the turns in order, then the outcome.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for t in &self.turns {
            out.push_str(&serde_json::to_string(t).expect("record serializes"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.outcome).expect("outcome serializes"));
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, TranscriptError> {
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        let Some((&(last_no, last), body)) = lines.split_last() else {
            return Err(TranscriptError::MissingOutcome);
        };
        let parse_err = |line: usize, e: serde_json::Error| TranscriptError::Parse { line, message: e.to_string() };
        let turns = body
            .iter()
            .map(|&(no, l)| serde_json::from_str(l).map_err(|e| parse_err(no, e)))
            .collect::<Result<Vec<TurnRecord>, _>>()?;
        let outcome = serde_json::from_str(last).map_err(|e| parse_err(last_no, e))?;
        Ok(Self { turns, outcome })
    }

    pub fn turn_count(&self) -> u32 {
        self.turns.len() as u32
    }
}

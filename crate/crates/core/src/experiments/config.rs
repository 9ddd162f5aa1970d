//! Sweep configuration, read from `key = value` lines or from JSON.
//!
//! ```text
//! # comments start with '#'
//! position = combination
//! rows = 1:16, 1.25:16, 1.25:22
//! step = 6
//! scheduler = continuous
//! node_limit = 100000000
//! ```
//!
//! `rows = published` selects the thirty published rows. An escalation run
//! replaces `rows` with `escalation = true` and the optional keys
//! `start_budget`, `budget_increment`, `start_divisor`, `divisor_increment`,
//! `max_divisor` and `max_rows`.

use serde::Deserialize;

use crate::error::ExperimentError;
use crate::search::{SchedulerKind, Value, DEFAULT_MATE_SCORE, DEFAULT_STEP};

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

/// One planned search: how much the reduction term is divided, and the budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub divisor: f64,
    pub virtual_budget: f64,
}

impl GridRow {
    pub fn new(divisor: f64, virtual_budget: f64) -> GridRow {
        GridRow { divisor, virtual_budget }
    }
}

/// The thirty (divisor, budget) pairs of the published sweep, in order.
pub fn published_grid() -> Vec<GridRow> {
    const ROWS: [(f64, f64); 30] = [
        (1.0, 16.0),
        (1.25, 16.0),
        (1.25, 22.0),
        (1.25, 24.0),
        (1.25, 26.0),
        (1.25, 28.0),
        (1.25, 30.0),
        (1.5, 32.0),
        (1.5, 34.0),
        (1.5, 36.0),
        (1.5, 38.0),
        (1.75, 40.0),
        (1.75, 42.0),
        (1.75, 44.0),
        (2.0, 46.0),
        (2.0, 48.0),
        (2.25, 50.0),
        (2.25, 52.0),
        (2.5, 54.0),
        (2.75, 56.0),
        (3.0, 58.0),
        (3.25, 60.0),
        (3.5, 62.0),
        (3.75, 62.0),
        (3.75, 64.0),
        (4.0, 64.0),
        (4.25, 66.0),
        (4.5, 68.0),
        (4.75, 69.0),
        (5.0, 70.0),
    ];
    ROWS.iter().map(|&(d, b)| GridRow::new(d, b)).collect()
}

/// Adaptive sweep: raise the budget until the position is solved, then move
/// to the next divisor keeping the budget that worked.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EscalationPlan {
    pub start_budget: f64,
    pub budget_increment: f64,
    pub start_divisor: f64,
    pub divisor_increment: f64,
    pub max_divisor: f64,
    pub max_rows: usize,
}

impl Default for EscalationPlan {
    fn default() -> Self {
        EscalationPlan {
            start_budget: 16.0,
            budget_increment: 2.0,
            start_divisor: 1.0,
            divisor_increment: 0.25,
            max_divisor: 5.0,
            max_rows: 30,
        }
    }
}

impl EscalationPlan {
    fn validate(&self) -> Result<(), String> {
        let positive = [
            ("budget_increment", self.budget_increment),
            ("divisor_increment", self.divisor_increment),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.start_budget >= 0.0 && self.start_budget.is_finite()) {
            return Err(format!("start_budget must be >= 0, got {}", self.start_budget));
        }
        if !(self.start_divisor >= 1.0 && self.max_divisor >= self.start_divisor && self.max_divisor.is_finite()) {
            return Err("divisors must satisfy 1 <= start_divisor <= max_divisor".into());
        }
        if self.max_rows == 0 {
            return Err("max_rows must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Rows(Vec<GridRow>),
    Escalation(EscalationPlan),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Registry id, FEN or EPD.
    pub position: String,
    pub grid: Grid,
    pub step: f64,
    pub scheduler: SchedulerKind,
    /// Per-row node cap; a row that hits it is reported unsolved.
    pub node_limit: u64,
    /// Scores at or beyond `mate_score - ply_cap` count as solved.
    pub mate_score: Value,
}

impl ExperimentConfig {
    pub fn new(position: impl Into<String>, rows: Vec<GridRow>) -> ExperimentConfig {
        ExperimentConfig {
            position: position.into(),
            grid: Grid::Rows(rows),
            step: DEFAULT_STEP,
            scheduler: SchedulerKind::Continuous,
            node_limit: DEFAULT_NODE_LIMIT,
            mate_score: DEFAULT_MATE_SCORE,
        }
    }

    pub fn escalation(position: impl Into<String>, plan: EscalationPlan) -> ExperimentConfig {
        ExperimentConfig {
            grid: Grid::Escalation(plan),
            ..ExperimentConfig::new(position, Vec::new())
        }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |message: String| Err(ExperimentError::Config { line: 0, message });
        match &self.grid {
            Grid::Rows(rows) if rows.is_empty() => return Err(ExperimentError::NoRows),
            Grid::Rows(_) => {}
            Grid::Escalation(plan) => {
                if let Err(message) = plan.validate() {
                    return bad(message);
                }
            }
        }
        if self.node_limit == 0 {
            return bad("node_limit must be positive".into());
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad(format!("step must be positive, got {}", self.step));
        }
        Ok(())
    }

    /// Parse either format; text whose first non-blank character is `{` is JSON.
    pub fn parse(text: &str) -> Result<ExperimentConfig, ExperimentError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_key_values(text)
        }
    }

    pub fn load(path: &std::path::Path) -> Result<ExperimentConfig, ExperimentError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_key_values(text: &str) -> Result<ExperimentConfig, ExperimentError> {
        let mut cfg = ExperimentConfig::new("", Vec::new());
        let mut rows: Option<Vec<GridRow>> = None;
        let mut plan: Option<EscalationPlan> = None;
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ExperimentError::Config { line: line_no, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, found '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let real = |v: &str| v.parse::<f64>().map_err(|_| err(format!("'{v}' is not a number for {key}")));
            let count = |v: &str| {
                v.replace('_', "")
                    .parse::<u64>()
                    .map_err(|_| err(format!("'{v}' is not a count for {key}")))
            };
            match key {
                "position" => cfg.position = value.to_string(),
                "rows" => rows = Some(parse_rows(value).map_err(err)?),
                "step" => cfg.step = real(value)?,
                "scheduler" => cfg.scheduler = value.parse().map_err(err)?,
                "node_limit" => cfg.node_limit = count(value)?,
                "mate_score" => cfg.mate_score = count(value)? as Value,
                "escalation" => match value {
                    "true" => {
                        plan_mut(&mut plan);
                    }
                    "false" => {}
                    _ => return Err(err(format!("escalation must be true or false, found '{value}'"))),
                },
                "start_budget" => plan_mut(&mut plan).start_budget = real(value)?,
                "budget_increment" => plan_mut(&mut plan).budget_increment = real(value)?,
                "start_divisor" => plan_mut(&mut plan).start_divisor = real(value)?,
                "divisor_increment" => plan_mut(&mut plan).divisor_increment = real(value)?,
                "max_divisor" => plan_mut(&mut plan).max_divisor = real(value)?,
                "max_rows" => plan_mut(&mut plan).max_rows = count(value)? as usize,
                _ => return Err(err(format!("unknown key '{key}'"))),
            }
        }
        let missing = |message: &str| ExperimentError::Config {
            line: last_line,
            message: message.to_string(),
        };
        if cfg.position.is_empty() {
            return Err(missing("missing 'position'"));
        }
        cfg.grid = match (rows, plan) {
            (Some(_), Some(_)) => return Err(missing("'rows' and escalation settings are mutually exclusive")),
            (Some(rows), None) => Grid::Rows(rows),
            (None, Some(plan)) => Grid::Escalation(plan),
            (None, None) => return Err(missing("missing 'rows'")),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<ExperimentConfig, ExperimentError> {
        let raw: JsonConfig = serde_json::from_str(text).map_err(|e| ExperimentError::Json(e.to_string()))?;
        let mut cfg = ExperimentConfig::new(raw.position, Vec::new());
        cfg.grid = match (raw.rows, raw.escalation) {
            (Some(_), Some(_)) => {
                return Err(ExperimentError::Json("'rows' and 'escalation' are mutually exclusive".into()))
            }
            (Some(JsonRows::Named(name)), None) if name == "published" => Grid::Rows(published_grid()),
            (Some(JsonRows::Named(name)), None) => {
                return Err(ExperimentError::Json(format!("unknown row set '{name}'")))
            }
            (Some(JsonRows::Pairs(pairs)), None) => {
                Grid::Rows(pairs.into_iter().map(|(d, b)| GridRow::new(d, b)).collect())
            }
            (Some(JsonRows::Objects(objs)), None) => Grid::Rows(
                objs.into_iter()
                    .map(|o| GridRow::new(o.divisor, o.virtual_budget))
                    .collect(),
            ),
            (None, Some(plan)) => Grid::Escalation(plan),
            (None, None) => return Err(ExperimentError::Json("missing 'rows'".into())),
        };
        if let Some(step) = raw.step {
            cfg.step = step;
        }
        if let Some(s) = raw.scheduler {
            cfg.scheduler = s.parse().map_err(ExperimentError::Json)?;
        }
        if let Some(n) = raw.node_limit {
            cfg.node_limit = n;
        }
        if let Some(m) = raw.mate_score {
            cfg.mate_score = m;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn plan_mut(plan: &mut Option<EscalationPlan>) -> &mut EscalationPlan {
    plan.get_or_insert_with(Default::default)
}

/// `d:b, d:b, ...` or the word `published`.
fn parse_rows(value: &str) -> Result<Vec<GridRow>, String> {
    if value == "published" {
        return Ok(published_grid());
    }
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (d, b) = pair
                .split_once(':')
                .ok_or_else(|| format!("row '{pair}' is not divisor:budget"))?;
            let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("'{s}' in row '{pair}' is not a number"));
            Ok(GridRow::new(num(d)?, num(b)?))
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonConfig {
    position: String,
    rows: Option<JsonRows>,
    escalation: Option<EscalationPlan>,
    step: Option<f64>,
    scheduler: Option<String>,
    node_limit: Option<u64>,
    mate_score: Option<Value>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonRows {
    Named(String),
    Pairs(Vec<(f64, f64)>),
    Objects(Vec<JsonRow>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    divisor: f64,
    #[serde(alias = "budget")]
    virtual_budget: f64,
}

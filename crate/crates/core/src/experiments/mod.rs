//! Parameter sweeps of the partial-depth search over a test position.
//!
//! Each row runs one search and records the seven published columns: row
//! id, nodes searched, divisor, deepest ply reached, virtual budget, solved
//! flag and step.

mod config;
mod output;
mod registry;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub use config::{published_grid, EscalationPlan, ExperimentConfig, Grid, GridRow, DEFAULT_NODE_LIMIT};
pub use output::{emit_csv, emit_plot_series, parse_csv, plot_series, write_csv, PlotSeries, CSV_HEADER};
pub use registry::{PositionRegistry, RegisteredPosition, COMBINATION_ID};

use crate::board::Position;
use crate::error::ExperimentError;
use crate::search::{ers_search, SchedulerKind, SearchParams, Value, DEFAULT_MATE_SCORE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRow {
    pub id: u32,
    pub nodes: u64,
    pub divisor: f64,
    pub max_ply: u32,
    pub virtual_budget: f64,
    pub solved: bool,
    pub step: f64,
}

/// Everything about a row except its id and grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseSettings {
    pub step: f64,
    pub scheduler: SchedulerKind,
    pub node_limit: u64,
    pub mate_score: Value,
}

impl CaseSettings {
    fn of(cfg: &ExperimentConfig) -> CaseSettings {
        CaseSettings {
            step: cfg.step,
            scheduler: cfg.scheduler,
            node_limit: cfg.node_limit,
            mate_score: cfg.mate_score,
        }
    }

    fn params(&self, row: GridRow) -> SearchParams {
        let mut params = SearchParams::new(self.scheduler, row.virtual_budget)
            .with_step(self.step)
            .with_divisor(row.divisor)
            .with_node_limit(self.node_limit);
        params.mate_score = self.mate_score;
        params
    }
}

/// One continuous-scheduler search. Running out of nodes is not an error;
/// the row just comes back unsolved.
pub fn run_case(
    p: &Position,
    divisor: f64,
    virtual_budget: f64,
    step: f64,
    node_limit: u64,
) -> Result<ExperimentRow, ExperimentError> {
    let settings = CaseSettings {
        step,
        scheduler: SchedulerKind::Continuous,
        node_limit,
        mate_score: DEFAULT_MATE_SCORE,
    };
    run_row(p, 1, GridRow::new(divisor, virtual_budget), &settings)
}

pub fn run_row(p: &Position, id: u32, row: GridRow, settings: &CaseSettings) -> Result<ExperimentRow, ExperimentError> {
    let result = ers_search(p, &settings.params(row))?;
    Ok(ExperimentRow {
        id,
        nodes: result.stats.nodes,
        divisor: row.divisor,
        max_ply: result.stats.max_ply_reached,
        virtual_budget: row.virtual_budget,
        solved: result.solved,
        step: settings.step,
    })
}

/// Run every row of the configuration. Explicit rows may run on several
/// threads; the result is always numbered from 1 in configuration order.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, ExperimentError> {
    cfg.validate()?;
    let registry = PositionRegistry::certified()?;
    let p = registry.resolve(&cfg.position)?;
    let settings = CaseSettings::of(cfg);
    match &cfg.grid {
        Grid::Rows(rows) => {
            // Reject bad parameters before any search starts.
            for row in rows {
                settings.params(*row).validate()?;
            }
            run_rows_parallel(&p, rows, &settings)
        }
        Grid::Escalation(plan) => run_escalation(&p, plan, &settings),
    }
}

fn run_rows_parallel(p: &Position, rows: &[GridRow], settings: &CaseSettings) -> Result<Vec<ExperimentRow>, ExperimentError> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(rows.len());
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<ExperimentRow, ExperimentError>>>> =
        Mutex::new((0..rows.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= rows.len() {
                    break;
                }
                let outcome = run_row(p, i as u32 + 1, rows[i], settings);
                slots.lock().expect("no worker panicked")[i] = Some(outcome);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|slot| slot.expect("every row ran"))
        .collect()
}

/// Starting from the plan's first grid point, raise the budget after every
/// failure and advance the divisor (keeping the budget) after every success.
pub fn run_escalation(
    p: &Position,
    plan: &EscalationPlan,
    settings: &CaseSettings,
) -> Result<Vec<ExperimentRow>, ExperimentError> {
    let mut out = Vec::new();
    let mut divisor_steps = 0u32;
    let mut budget_steps = 0u32;
    while out.len() < plan.max_rows {
        let divisor = plan.start_divisor + divisor_steps as f64 * plan.divisor_increment;
        if divisor > plan.max_divisor + 1e-9 {
            break;
        }
        let budget = plan.start_budget + budget_steps as f64 * plan.budget_increment;
        let row = run_row(p, out.len() as u32 + 1, GridRow::new(divisor, budget), settings)?;
        if row.solved {
            divisor_steps += 1;
        } else {
            budget_steps += 1;
        }
        out.push(row);
    }
    Ok(out)
}

/// Divisor in hundredths, usable as a map key.
pub fn divisor_key(divisor: f64) -> i64 {
    (divisor * 100.0).round() as i64
}

/// Fewest nodes among solved rows whose divisor satisfies `select`.
pub fn min_solved_nodes(rows: &[ExperimentRow], select: impl Fn(f64) -> bool) -> Option<u64> {
    rows.iter()
        .filter(|r| r.solved && select(r.divisor))
        .map(|r| r.nodes)
        .min()
}

/// For each divisor with a solved row, the smallest solving budget, in
/// increasing divisor order.
pub fn min_solved_budget_by_divisor(rows: &[ExperimentRow]) -> Vec<(f64, f64)> {
    let mut best: std::collections::BTreeMap<i64, (f64, f64)> = Default::default();
    for r in rows.iter().filter(|r| r.solved) {
        let e = best.entry(divisor_key(r.divisor)).or_insert((r.divisor, r.virtual_budget));
        e.1 = e.1.min(r.virtual_budget);
    }
    best.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::parse_fen;

    #[test]
    fn node_limit_one_is_an_unsolved_row() {
        let p = Position::start();
        let row = run_case(&p, 1.0, 16.0, 6.0, 1).unwrap();
        assert!(!row.solved);
        assert!(row.nodes <= 1 + 20);
    }

    #[test]
    fn mate_in_one_case() {
        let p = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
        let row = run_case(&p, 1.0, 6.0, 6.0, 10_000).unwrap();
        assert!(row.solved);
        assert_eq!(row.id, 1);
        assert_eq!((row.divisor, row.virtual_budget, row.step), (1.0, 6.0, 6.0));
    }

    #[test]
    fn sweep_numbers_rows_in_order() {
        let cfg = ExperimentConfig::new(
            "6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1",
            vec![GridRow::new(1.0, 6.0), GridRow::new(2.0, 0.0), GridRow::new(1.5, 12.0)],
        );
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.iter().map(|r| r.id).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(rows[1].divisor, 2.0);
        assert!(!rows[1].solved);
    }

    #[test]
    fn sweep_errors_before_searching() {
        let cfg = ExperimentConfig::new("no-such-position", vec![GridRow::new(1.0, 6.0)]);
        assert!(matches!(run_sweep(&cfg), Err(ExperimentError::UnknownPosition(_))));
        let cfg = ExperimentConfig::new(COMBINATION_ID, vec![]);
        assert!(matches!(run_sweep(&cfg), Err(ExperimentError::NoRows)));
        let cfg = ExperimentConfig::new(COMBINATION_ID, vec![GridRow::new(0.5, 6.0)]);
        assert!(matches!(run_sweep(&cfg), Err(ExperimentError::Search(_))));
    }

    #[test]
    fn budget_summary() {
        let row = |id, divisor, virtual_budget, solved| ExperimentRow {
            id,
            nodes: 10,
            divisor,
            max_ply: 3,
            virtual_budget,
            solved,
            step: 6.0,
        };
        let rows = [
            row(1, 1.0, 16.0, true),
            row(2, 1.25, 16.0, false),
            row(3, 1.25, 18.0, true),
            row(4, 1.25, 20.0, true),
        ];
        assert_eq!(min_solved_budget_by_divisor(&rows), vec![(1.0, 16.0), (1.25, 18.0)]);
        assert_eq!(min_solved_nodes(&rows, |d| d > 1.0), Some(10));
    }
}

//! Partial-depth negamax alpha-beta.
//!
//! Every child adds a scheduler-chosen increment to the accumulated virtual
//! depth and one to the ply count. A node is a leaf once the virtual depth
//! reaches the budget or the ply count reaches the hard cap. Moves are
//! ordered by the size of the evaluation swing they cause, with checks
//! pushed to the front by a large bonus.

use std::time::{Duration, Instant};

use crate::board::{has_legal_move, legal_successors, Color, Move, MoveList, PieceKind, Position};
use crate::entropy::{classify_move, EntropyModel, MoveCategory};
use crate::error::SearchError;

/// Search values in centipawns; mate scores sit near `±mate_score`.
pub type Value = i32;

pub const DEFAULT_MATE_SCORE: Value = 100_000;
pub const DEFAULT_STEP: f64 = 6.0;
pub const DEFAULT_CHECK_ORDER_BONUS: Value = 10_000;
pub const DEFAULT_CHECK_DEPTH_THRESHOLD: Value = 2_000;

/// How much virtual depth each move consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchedulerKind {
    /// Every move costs one full `step`.
    Uniform,
    /// `step` times the fractional ply of the move's entropy category.
    Categorical,
    /// `step` minus a reduction driven by evaluation swing and branching.
    Continuous,
}

impl SchedulerKind {
    pub fn name(self) -> &'static str {
        match self {
            SchedulerKind::Uniform => "uniform",
            SchedulerKind::Categorical => "categorical",
            SchedulerKind::Continuous => "continuous",
        }
    }
}

impl std::str::FromStr for SchedulerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(SchedulerKind::Uniform),
            "categorical" => Ok(SchedulerKind::Categorical),
            "continuous" => Ok(SchedulerKind::Continuous),
            other => Err(format!("unknown scheduler '{other}'")),
        }
    }
}

impl std::fmt::Display for SchedulerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    pub scheduler: SchedulerKind,
    /// Virtual depth at which a path becomes a leaf.
    pub virtual_budget: f64,
    /// Increment charged to an uninteresting move.
    pub step: f64,
    /// Divides the reduction term of the continuous scheduler.
    pub divisor: f64,
    /// Maximum plies from the root; `None` derives it from the budget.
    pub hard_ply_cap: Option<u32>,
    pub mate_score: Value,
    pub check_order_bonus: Value,
    /// Moves whose ordering key exceeds this get a zero increment under the
    /// continuous scheduler.
    pub check_depth_threshold: Value,
    /// Abort once more than this many nodes have been visited.
    pub node_limit: Option<u64>,
    pub model: EntropyModel,
}

impl SearchParams {
    pub fn new(scheduler: SchedulerKind, virtual_budget: f64) -> SearchParams {
        SearchParams {
            scheduler,
            virtual_budget,
            step: DEFAULT_STEP,
            divisor: 1.0,
            hard_ply_cap: None,
            mate_score: DEFAULT_MATE_SCORE,
            check_order_bonus: DEFAULT_CHECK_ORDER_BONUS,
            check_depth_threshold: DEFAULT_CHECK_DEPTH_THRESHOLD,
            node_limit: None,
            model: EntropyModel::default(),
        }
    }

    /// Uniform scheduler whose budget is exactly `depth` full steps.
    pub fn fixed_depth(depth: u32) -> SearchParams {
        SearchParams::new(SchedulerKind::Uniform, DEFAULT_STEP * depth as f64)
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn with_divisor(mut self, divisor: f64) -> Self {
        self.divisor = divisor;
        self
    }

    pub fn with_hard_ply_cap(mut self, cap: u32) -> Self {
        self.hard_ply_cap = Some(cap);
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn with_model(mut self, model: EntropyModel) -> Self {
        self.model = model;
        self
    }

    /// The hard cap in effect: explicit, or `3 * ceil(budget / step) + 8`.
    pub fn ply_cap(&self) -> u32 {
        self.hard_ply_cap
            .unwrap_or_else(|| 3 * (self.virtual_budget / self.step).ceil() as u32 + 8)
    }

    /// Smallest absolute value that counts as a forced mate.
    pub fn mate_threshold(&self) -> Value {
        self.mate_score - self.ply_cap() as Value
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidParams(msg));
        if !(self.virtual_budget >= 0.0 && self.virtual_budget.is_finite()) {
            return bad(format!("virtual budget must be finite and >= 0, got {}", self.virtual_budget));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad(format!("step must be > 0, got {}", self.step));
        }
        if !(self.divisor >= 1.0 && self.divisor.is_finite()) {
            return bad(format!("divisor must be >= 1, got {}", self.divisor));
        }
        if self.hard_ply_cap == Some(0) {
            return bad("hard ply cap must be >= 1".into());
        }
        if self.ply_cap() > 1000 {
            return bad(format!("hard ply cap {} is too large", self.ply_cap()));
        }
        if self.mate_score <= 2 * (self.ply_cap() as Value) + 10_000 || self.mate_score > Value::MAX / 4 {
            return bad(format!("mate score {} is out of range", self.mate_score));
        }
        if self.check_order_bonus < 0 || self.check_depth_threshold < 0 {
            return bad("ordering bonus and depth threshold must be non-negative".into());
        }
        if self.node_limit == Some(0) {
            return bad("node limit must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub cutoffs: u64,
    pub max_ply_reached: u32,
    /// True when the node limit stopped the search early.
    pub aborted: bool,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub value: Value,
    pub principal_variation: Vec<Move>,
    pub stats: SearchStats,
    pub solved: bool,
}

impl SearchResult {
    /// Equality ignoring wall-clock time.
    pub fn same_outcome(&self, other: &SearchResult) -> bool {
        let strip = |r: &SearchResult| {
            let mut r = r.clone();
            r.stats.elapsed = Duration::ZERO;
            r
        };
        strip(self) == strip(other)
    }
}

fn piece_value(kind: PieceKind) -> Value {
    match kind {
        PieceKind::Pawn => 100,
        PieceKind::Knight => 300,
        PieceKind::Bishop => 300,
        PieceKind::Rook => 500,
        PieceKind::Queen => 900,
        PieceKind::King => 0,
    }
}

/// Material balance from the side to move's point of view.
pub fn material(p: &Position) -> Value {
    let us = p.side_to_move();
    let mut total = 0;
    for kind in PieceKind::ALL {
        let v = piece_value(kind);
        total += v * (p.count(kind, us) as Value - p.count(kind, us.opposite()) as Value);
    }
    total
}

/// Static evaluation for the side to move: material, `-mate_score` when
/// checkmated, `0` when stalemated.
pub fn evaluate(p: &Position, mate_score: Value) -> Value {
    if has_legal_move(p) {
        material(p)
    } else if p.is_in_check(p.side_to_move()) {
        -mate_score
    } else {
        0
    }
}

/// Pull mate scores one point toward zero per ply from the root so that
/// shorter mates score higher.
pub fn mate_distance_adjust(raw: Value, ply: u32, mate_score: Value) -> Value {
    if raw >= mate_score {
        mate_score - ply as Value
    } else if raw <= -mate_score {
        -(mate_score - ply as Value)
    } else {
        raw
    }
}

/// A legal move with its successor and ordering key.
#[derive(Debug, Clone)]
pub struct ScoredMove {
    pub mv: Move,
    pub child: Position,
    /// `|eval after − eval before|` from the mover's side, plus the check bonus.
    pub key: Value,
}

fn score_children(p: &Position, parent_eval: Value, params: &SearchParams) -> Vec<ScoredMove> {
    let mut scored: Vec<ScoredMove> = legal_successors(p)
        .into_iter()
        .map(|(mv, child)| {
            let after = -evaluate(&child, params.mate_score);
            let mut key = (after - parent_eval).abs();
            if mv.gives_check {
                key += params.check_order_bonus;
            }
            ScoredMove { mv, child, key }
        })
        .collect();
    // Stable: ties keep generation order.
    scored.sort_by_key(|s| std::cmp::Reverse(s.key));
    scored
}

/// Sort `moves` by descending ordering key, ties in their given order.
pub fn order_moves(p: &Position, parent_eval: Value, moves: &[Move], params: &SearchParams) -> MoveList {
    let mut keyed: Vec<(Value, Move)> = moves
        .iter()
        .map(|m| {
            let child = crate::board::play(p, m);
            let after = -evaluate(&child, params.mate_score);
            let mut key = (after - parent_eval).abs();
            if m.gives_check {
                key += params.check_order_bonus;
            }
            (key, *m)
        })
        .collect();
    keyed.sort_by_key(|k| std::cmp::Reverse(k.0));
    keyed.into_iter().map(|(_, m)| m).collect()
}

/// Continuous increment: `step − add / divisor`, with
/// `add = log10|0.1 + Δ/100| + 5 / ln(branching + 2)`, clamped to
/// `[0, step]`. Moves whose swing exceeds the check threshold cost nothing.
pub fn depth_increment_continuous(eval_delta: f64, branching: u32, params: &SearchParams) -> f64 {
    if eval_delta > params.check_depth_threshold as f64 {
        return 0.0;
    }
    let add = (0.1 + eval_delta / 100.0).abs().log10() + 5.0 / (branching as f64 + 2.0).ln();
    (params.step - add / params.divisor).clamp(0.0, params.step)
}

/// Categorical increment: `step × fractional_ply(category)`.
pub fn depth_increment_categorical(c: MoveCategory, model: &EntropyModel, params: &SearchParams) -> f64 {
    params.step * model.fractional_ply(c)
}

fn increment(params: &SearchParams, parent: &Position, scored: &ScoredMove, branching: u32) -> f64 {
    match params.scheduler {
        SchedulerKind::Uniform => params.step,
        SchedulerKind::Categorical => {
            depth_increment_categorical(classify_move(parent, &scored.mv), &params.model, params)
        }
        SchedulerKind::Continuous => depth_increment_continuous(scored.key as f64, branching, params),
    }
}

struct Searcher<'a> {
    params: &'a SearchParams,
    cap: u32,
    stats: SearchStats,
    pv: Vec<Vec<Move>>,
}

impl Searcher<'_> {
    fn leaf_value(&self, p: &Position, ply: u32) -> Value {
        mate_distance_adjust(evaluate(p, self.params.mate_score), ply, self.params.mate_score)
    }

    fn negamax(&mut self, p: &Position, mut alpha: Value, beta: Value, ply: u32, virtual_depth: f64) -> Value {
        self.stats.nodes += 1;
        self.stats.max_ply_reached = self.stats.max_ply_reached.max(ply);
        self.pv[ply as usize].clear();
        if self.params.node_limit.is_some_and(|limit| self.stats.nodes > limit) {
            self.stats.aborted = true;
            return 0;
        }
        if virtual_depth >= self.params.virtual_budget || ply >= self.cap {
            return self.leaf_value(p, ply);
        }

        let parent_eval = material(p);
        let children = score_children(p, parent_eval, self.params);
        if children.is_empty() {
            let raw = if p.is_in_check(p.side_to_move()) {
                -self.params.mate_score
            } else {
                0
            };
            return mate_distance_adjust(raw, ply, self.params.mate_score);
        }

        let branching = children.len() as u32;
        let mut best = -Value::MAX;
        for scored in &children {
            let inc = increment(self.params, p, scored, branching);
            let value = -self.negamax(&scored.child, -beta, -alpha, ply + 1, virtual_depth + inc);
            if self.stats.aborted {
                return best.max(value);
            }
            if value > best {
                best = value;
            }
            if value > alpha {
                alpha = value;
                let (head, tail) = self.pv.split_at_mut(ply as usize + 1);
                let line = &mut head[ply as usize];
                line.clear();
                line.push(scored.mv);
                line.extend_from_slice(&tail[0]);
            }
            if alpha >= beta {
                self.stats.cutoffs += 1;
                break;
            }
        }
        best
    }
}

/// Run the partial-depth search from `p` with a full window.
pub fn ers_search(p: &Position, params: &SearchParams) -> Result<SearchResult, SearchError> {
    params.validate()?;
    let start = Instant::now();
    let cap = params.ply_cap();
    let mut searcher = Searcher {
        params,
        cap,
        stats: SearchStats::default(),
        pv: vec![Vec::new(); cap as usize + 2],
    };
    let bound = params.mate_score + 1;
    let value = searcher.negamax(p, -bound, bound, 0, 0.0);
    let mut stats = searcher.stats;
    stats.elapsed = start.elapsed();
    let solved = !stats.aborted && value.abs() >= params.mate_threshold();
    Ok(SearchResult {
        value,
        principal_variation: std::mem::take(&mut searcher.pv[0]),
        stats,
        solved,
    })
}

/// Which side the value of a search favours, if any mate was found.
pub fn mating_side(p: &Position, result: &SearchResult) -> Option<Color> {
    if !result.solved {
        return None;
    }
    let us = p.side_to_move();
    Some(if result.value > 0 { us } else { us.opposite() })
}

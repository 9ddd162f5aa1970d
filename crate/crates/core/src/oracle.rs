//! Brute-force reference searches used to certify the partial-depth
//! searcher and the registered test positions.
//!
//! Nothing here uses fractional depth. The leaf evaluation is written out
//! again from the same material table instead of calling into `search`.

use std::collections::HashMap;

use crate::board::{generate_legal_moves, has_legal_move, legal_successors, play, Move, PieceKind, Position, StateKey};
use crate::search::{Value, DEFAULT_MATE_SCORE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleResult {
    pub value: Value,
    pub nodes: u64,
}

fn worth(kind: PieceKind) -> Value {
    match kind {
        PieceKind::Pawn => 100,
        PieceKind::Knight | PieceKind::Bishop => 300,
        PieceKind::Rook => 500,
        PieceKind::Queen => 900,
        PieceKind::King => 0,
    }
}

fn static_value(p: &Position, ply: u32) -> Value {
    if !has_legal_move(p) {
        return terminal_value(p, ply);
    }
    let us = p.side_to_move();
    p.pieces_iter()
        .map(|(_, pc)| if pc.color == us { worth(pc.kind) } else { -worth(pc.kind) })
        .sum()
}

fn terminal_value(p: &Position, ply: u32) -> Value {
    if p.is_in_check(p.side_to_move()) {
        -(DEFAULT_MATE_SCORE - ply as Value)
    } else {
        0
    }
}

/// Exact fixed-depth negamax value; every node of the tree is visited.
pub fn minimax_value(p: &Position, depth: u32) -> OracleResult {
    fn go(p: &Position, depth: u32, ply: u32, nodes: &mut u64) -> Value {
        *nodes += 1;
        if depth == 0 {
            return static_value(p, ply);
        }
        let children = legal_successors(p);
        if children.is_empty() {
            return terminal_value(p, ply);
        }
        children
            .iter()
            .map(|(_, child)| -go(child, depth - 1, ply + 1, nodes))
            .max()
            .unwrap()
    }
    let mut nodes = 0;
    let value = go(p, depth, 0, &mut nodes);
    OracleResult { value, nodes }
}

/// Fixed-depth alpha-beta over moves in generation order.
pub fn alphabeta_value(p: &Position, depth: u32) -> OracleResult {
    alphabeta_value_ordered(p, depth, |_, moves| moves.to_vec())
}

/// Fixed-depth alpha-beta visiting moves in the order `order` returns.
pub fn alphabeta_value_ordered<F>(p: &Position, depth: u32, order: F) -> OracleResult
where
    F: Fn(&Position, &[Move]) -> Vec<Move>,
{
    fn go<F: Fn(&Position, &[Move]) -> Vec<Move>>(
        p: &Position,
        mut alpha: Value,
        beta: Value,
        depth: u32,
        ply: u32,
        order: &F,
        nodes: &mut u64,
    ) -> Value {
        *nodes += 1;
        if depth == 0 {
            return static_value(p, ply);
        }
        let moves = generate_legal_moves(p);
        if moves.is_empty() {
            return terminal_value(p, ply);
        }
        for m in order(p, &moves) {
            let v = -go(&play(p, &m), -beta, -alpha, depth - 1, ply + 1, order, nodes);
            if v >= beta {
                return beta;
            }
            if v > alpha {
                alpha = v;
            }
        }
        alpha
    }
    let mut nodes = 0;
    let bound = DEFAULT_MATE_SCORE + 1;
    let value = go(p, -bound, bound, depth, 0, &order, &mut nodes);
    OracleResult { value, nodes }
}

/// True iff the side to move can force checkmate within `plies` half-moves.
///
/// Full-width AND/OR search bounded by the remaining distance. The only
/// pruning is that the attacker's final move must give check, which cannot
/// change the answer. Results are memoized per (position, distance) and the
/// defender tries the last reply that refuted a sibling first; neither
/// affects the verdict.
pub fn certify_mate(p: &Position, plies: u32) -> bool {
    MateProver::default().attacker_mates(p, plies)
}

const MEMO_LIMIT: usize = 1 << 22;

#[derive(Default)]
struct MateProver {
    memo: HashMap<(StateKey, u32), bool>,
    refutations: HashMap<u32, Move>,
}

impl MateProver {
    fn remember(&mut self, p: &Position, remaining: u32, verdict: bool) -> bool {
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert((p.state_key(), remaining), verdict);
        verdict
    }

    fn attacker_mates(&mut self, p: &Position, remaining: u32) -> bool {
        if remaining == 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(&(p.state_key(), remaining)) {
            return v;
        }
        let mut moves: Vec<(Move, Position)> = legal_successors(p)
            .into_iter()
            .filter(|(m, _)| remaining > 1 || m.gives_check)
            .collect();
        // Forcing moves first; the verdict does not depend on order.
        moves.sort_by_key(|(m, _)| (!m.gives_check, !m.is_capture()));
        for (m, child) in &moves {
            if m.gives_check && !has_legal_move(child) {
                return self.remember(p, remaining, true);
            }
            if remaining >= 3 && self.defender_loses(child, remaining - 1) {
                return self.remember(p, remaining, true);
            }
        }
        self.remember(p, remaining, false)
    }

    fn defender_loses(&mut self, p: &Position, remaining: u32) -> bool {
        let mut replies = legal_successors(p);
        if replies.is_empty() {
            return p.is_in_check(p.side_to_move());
        }
        if let Some(best) = self.refutations.get(&remaining) {
            if let Some(i) = replies.iter().position(|(m, _)| m == best) {
                replies.swap(0, i);
            }
        }
        for (m, child) in &replies {
            if !self.attacker_mates(child, remaining - 1) {
                self.refutations.insert(remaining, *m);
                return false;
            }
        }
        true
    }
}

/// Shortest forced mate for the side to move, in plies, searching up to
/// `max_plies`.
pub fn mate_distance(p: &Position, max_plies: u32) -> Option<u32> {
    let mut prover = MateProver::default();
    (1..=max_plies).step_by(2).find(|&n| prover.attacker_mates(p, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::parse_fen;

    #[test]
    fn depth_zero_is_static() {
        let p = Position::start();
        assert_eq!(minimax_value(&p, 0), OracleResult { value: 0, nodes: 1 });
        assert_eq!(alphabeta_value(&p, 0), minimax_value(&p, 0));
    }

    #[test]
    fn start_depth_two() {
        let p = Position::start();
        let mm = minimax_value(&p, 2);
        assert_eq!(mm.value, 0);
        assert_eq!(mm.nodes, 421);
        let ab = alphabeta_value(&p, 2);
        assert_eq!(ab.value, 0);
        assert!(ab.nodes < 421);
    }

    #[test]
    fn mate_in_one_found() {
        let p = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
        let r = minimax_value(&p, 1);
        assert_eq!(r.value, DEFAULT_MATE_SCORE - 1);
        assert!(certify_mate(&p, 1));
        assert_eq!(mate_distance(&p, 5), Some(1));
    }

    #[test]
    fn lone_kings_never_mate() {
        let p = parse_fen("8/8/8/8/8/8/8/K6k w - - 0 1").unwrap();
        for plies in [1, 3, 5] {
            assert!(!certify_mate(&p, plies));
        }
    }

    #[test]
    fn mate_in_two_needs_three_plies() {
        // 1. Kg6 Kg8 2. Ra8#
        let p = parse_fen("7k/8/5K2/8/8/8/8/R7 w - - 0 1").unwrap();
        assert!(!certify_mate(&p, 1));
        assert!(certify_mate(&p, 3));
    }

    #[test]
    fn alphabeta_matches_minimax_small() {
        let p = parse_fen("r3k2r/8/8/3q4/8/2N5/8/R3K2R w KQkq - 0 1").unwrap();
        for d in 0..=2 {
            assert_eq!(alphabeta_value(&p, d).value, minimax_value(&p, d).value);
        }
    }
}

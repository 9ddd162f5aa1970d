mod common;

use common::random_positions;
use ers_core::board::parse_fen;
use ers_core::experiments::{PositionRegistry, COMBINATION_ID};
use ers_core::oracle::{alphabeta_value, certify_mate, mate_distance, minimax_value};
use ers_core::search::{ers_search, SearchParams};

#[test]
fn uniform_search_matches_minimax() {
    for p in random_positions(7, 30) {
        for depth in 1..=2 {
            let want = minimax_value(&p, depth).value;
            let got = ers_search(&p, &SearchParams::fixed_depth(depth)).unwrap();
            assert_eq!(got.value, want);
            assert_eq!(alphabeta_value(&p, depth).value, want);
        }
    }
}

#[test]
fn minimax_node_recurrence() {
    for p in random_positions(11, 10) {
        let children = ers_core::board::legal_successors(&p);
        let sum: u64 = children.iter().map(|(_, c)| minimax_value(c, 1).nodes).sum();
        assert_eq!(minimax_value(&p, 2).nodes, 1 + sum);
    }
}

#[test]
fn short_mates_have_exact_distance() {
    let back_rank = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
    assert_eq!(mate_distance(&back_rank, 5), Some(1));
    let rook_two = parse_fen("7k/8/5K2/8/8/8/8/R7 w - - 0 1").unwrap();
    assert_eq!(mate_distance(&rook_two, 5), Some(3));
}

#[test]
fn combination_is_mate_in_exactly_thirteen_plies() {
    let registry = PositionRegistry::builtin();
    let entry = registry.get(COMBINATION_ID).unwrap();
    assert_eq!(entry.mate_plies, Some(13));
    assert!(certify_mate(entry.position(), 13));
    assert!(!certify_mate(entry.position(), 11), "a shorter mate exists");
    entry.certify().unwrap();
}

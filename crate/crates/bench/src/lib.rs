//! Shared fixtures for the benchmarks.

use ers_core::board::{parse_fen, Position};
use ers_core::experiments::{PositionRegistry, COMBINATION_ID};

pub fn combination() -> Position {
    PositionRegistry::builtin()
        .get(COMBINATION_ID)
        .expect("combination is registered")
        .position()
        .clone()
}

pub fn kiwipete() -> Position {
    PositionRegistry::builtin()
        .get("kiwipete")
        .expect("kiwipete is registered")
        .position()
        .clone()
}

/// Mate in two with a single rook: 1. Kg6 Kg8 2. Ra8#.
pub fn rook_mate_in_two() -> Position {
    parse_fen("7k/8/5K2/8/8/8/8/R7 w - - 0 1").expect("valid FEN")
}

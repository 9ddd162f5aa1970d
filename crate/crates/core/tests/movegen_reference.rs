mod common;

use common::{naive_perft, random_positions};
use ers_core::board::{perft, to_fen, Position, START_FEN};
use ers_core::experiments::PositionRegistry;

#[test]
fn start_position_matches_naive_generator() {
    let p = Position::start();
    for depth in 1..=4 {
        assert_eq!(perft(&p, depth), naive_perft(START_FEN, depth), "depth {depth}");
    }
}

#[test]
fn registry_positions_match_naive_generator() {
    for entry in PositionRegistry::builtin().iter() {
        let fen = to_fen(entry.position());
        for depth in 1..=3 {
            assert_eq!(perft(entry.position(), depth), naive_perft(&fen, depth), "{} depth {depth}", entry.id());
        }
    }
}

#[test]
fn random_positions_match_naive_generator() {
    for p in random_positions(0x5eed, 60) {
        let fen = to_fen(&p);
        assert_eq!(perft(&p, 2), naive_perft(&fen, 2), "{fen}");
    }
}

#[test]
fn naive_generator_reproduces_published_counts() {
    // Guards the reference itself against shared mistakes.
    assert_eq!(naive_perft("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", 4), 43_238);
    assert_eq!(
        naive_perft("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", 3),
        97_862
    );
    assert_eq!(naive_perft("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1", 3), 9_467);
}

use ers_core::board::{parse_fen, perft, Position};

// Published reference counts.
const CASES: &[(&str, &[u64])] = &[
    ("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", &[48, 2039, 97862, 4085603]),
    ("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", &[14, 191, 2812, 43238, 674624]),
    ("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1", &[6, 264, 9467, 422333]),
    ("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8", &[44, 1486, 62379, 2103487]),
];

#[test]
fn start_position_reference_counts() {
    let p = Position::start();
    for (depth, want) in [(1, 20), (2, 400), (3, 8902), (4, 197_281), (5, 4_865_609)] {
        assert_eq!(perft(&p, depth), want, "start depth {depth}");
    }
}

#[test]
fn tricky_positions_reference_counts() {
    for (fen, counts) in CASES {
        let p = parse_fen(fen).unwrap();
        for (i, &want) in counts.iter().enumerate() {
            assert_eq!(perft(&p, i as u32 + 1), want, "{fen} depth {}", i + 1);
        }
    }
}

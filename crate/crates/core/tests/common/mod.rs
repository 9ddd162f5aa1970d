//! Helpers shared by the integration tests: a deliberately naive move
//! generator used as a perft reference, and seeded random positions.

#![allow(dead_code)]

use ers_core::board::{generate_legal_moves, parse_fen, play, Position, START_FEN};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const OFF: i8 = 99;
const EMPTY: i8 = 0;
const PAWN: i8 = 1;
const KNIGHT: i8 = 2;
const BISHOP: i8 = 3;
const ROOK: i8 = 4;
const QUEEN: i8 = 5;
const KING: i8 = 6;

const KNIGHT_STEPS: [i32; 8] = [-21, -19, -12, -8, 8, 12, 19, 21];
const KING_STEPS: [i32; 8] = [-11, -10, -9, -1, 1, 9, 10, 11];
const ROOK_DIRS: [i32; 4] = [-10, -1, 1, 10];
const BISHOP_DIRS: [i32; 4] = [-11, -9, 9, 11];

/// 10x12 mailbox board. Squares hold `side * kind`, with white = +1.
#[derive(Clone)]
pub struct Naive {
    board: [i8; 120],
    side: i8,
    /// White short, white long, black short, black long.
    castle: [bool; 4],
    ep: Option<usize>,
}

#[derive(Clone, Copy)]
struct NaiveMove {
    from: usize,
    to: usize,
    promo: i8,
    en_passant: bool,
    castle: bool,
}

fn idx(file: usize, rank: usize) -> usize {
    21 + file + 10 * rank
}

fn off(i: i32) -> usize {
    i as usize
}

impl Naive {
    pub fn from_fen(fen: &str) -> Naive {
        let fields: Vec<&str> = fen.split_whitespace().collect();
        let mut board = [OFF; 120];
        for r in 0..8 {
            for f in 0..8 {
                board[idx(f, r)] = EMPTY;
            }
        }
        for (row, text) in fields[0].split('/').enumerate() {
            let rank = 7 - row;
            let mut file = 0;
            for c in text.chars() {
                if let Some(d) = c.to_digit(10) {
                    file += d as usize;
                    continue;
                }
                let kind = match c.to_ascii_lowercase() {
                    'p' => PAWN,
                    'n' => KNIGHT,
                    'b' => BISHOP,
                    'r' => ROOK,
                    'q' => QUEEN,
                    'k' => KING,
                    _ => panic!("bad piece {c}"),
                };
                board[idx(file, rank)] = if c.is_ascii_uppercase() { kind } else { -kind };
                file += 1;
            }
        }
        let side = if fields[1] == "w" { 1 } else { -1 };
        let rights = fields.get(2).copied().unwrap_or("-");
        let castle = [rights.contains('K'), rights.contains('Q'), rights.contains('k'), rights.contains('q')];
        let ep = fields.get(3).filter(|s| **s != "-").map(|s| {
            let b = s.as_bytes();
            idx((b[0] - b'a') as usize, (b[1] - b'1') as usize)
        });
        Naive { board, side, castle, ep }
    }

    fn king(&self, side: i8) -> usize {
        (0..120).find(|&i| self.board[i] == KING * side).expect("king on board")
    }

    fn attacked(&self, sq: usize, by: i8) -> bool {
        let s = sq as i32;
        let at = |i: i32| self.board[off(i)];
        // A pawn of `by` attacks forward diagonally, so look backwards.
        let back = if by == 1 { -10 } else { 10 };
        if at(s + back - 1) == PAWN * by || at(s + back + 1) == PAWN * by {
            return true;
        }
        if KNIGHT_STEPS.iter().any(|d| at(s + d) == KNIGHT * by) {
            return true;
        }
        if KING_STEPS.iter().any(|d| at(s + d) == KING * by) {
            return true;
        }
        let slides = |dirs: &[i32], kind: i8| {
            dirs.iter().any(|d| {
                let mut t = s + d;
                loop {
                    let v = at(t);
                    if v == EMPTY {
                        t += d;
                        continue;
                    }
                    return v == kind * by || v == QUEEN * by;
                }
            })
        };
        slides(&ROOK_DIRS, ROOK) || slides(&BISHOP_DIRS, BISHOP)
    }

    fn pseudo_moves(&self) -> Vec<NaiveMove> {
        let mut out = Vec::new();
        let us = self.side;
        let plain = |from: usize, to: usize| NaiveMove { from, to, promo: 0, en_passant: false, castle: false };
        for from in 0..120 {
            let piece = self.board[from];
            if piece == OFF || piece == EMPTY || piece.signum() != us {
                continue;
            }
            let f = from as i32;
            match piece.abs() {
                PAWN => {
                    let fwd = 10 * us as i32;
                    let rank = (from - 21) / 10;
                    let start_rank = if us == 1 { 1 } else { 6 };
                    let last_rank = if us == 1 { 7 } else { 0 };
                    let push = |to: usize, out: &mut Vec<NaiveMove>| {
                        if (to - 21) / 10 == last_rank {
                            for promo in [QUEEN, ROOK, BISHOP, KNIGHT] {
                                out.push(NaiveMove { promo, ..plain(from, to) });
                            }
                        } else {
                            out.push(plain(from, to));
                        }
                    };
                    let one = off(f + fwd);
                    if self.board[one] == EMPTY {
                        push(one, &mut out);
                        let two = off(f + 2 * fwd);
                        if rank == start_rank && self.board[two] == EMPTY {
                            out.push(plain(from, two));
                        }
                    }
                    for side_step in [-1, 1] {
                        let to = off(f + fwd + side_step);
                        let target = self.board[to];
                        if target != OFF && target != EMPTY && target.signum() == -us {
                            push(to, &mut out);
                        } else if Some(to) == self.ep {
                            out.push(NaiveMove { en_passant: true, ..plain(from, to) });
                        }
                    }
                }
                KNIGHT | KING => {
                    let steps = if piece.abs() == KNIGHT { KNIGHT_STEPS } else { KING_STEPS };
                    for d in steps {
                        let to = off(f + d);
                        let target = self.board[to];
                        if target != OFF && (target == EMPTY || target.signum() == -us) {
                            out.push(plain(from, to));
                        }
                    }
                }
                kind => {
                    let dirs: Vec<i32> = match kind {
                        BISHOP => BISHOP_DIRS.to_vec(),
                        ROOK => ROOK_DIRS.to_vec(),
                        _ => ROOK_DIRS.iter().chain(BISHOP_DIRS.iter()).copied().collect(),
                    };
                    for d in dirs {
                        let mut t = f + d;
                        loop {
                            let target = self.board[off(t)];
                            if target == OFF || (target != EMPTY && target.signum() == us) {
                                break;
                            }
                            out.push(plain(from, off(t)));
                            if target != EMPTY {
                                break;
                            }
                            t += d;
                        }
                    }
                }
            }
        }
        // Castling: rights, empty path, and no attacked square on the king's way.
        let (home, short, long) = if us == 1 { (idx(4, 0), 0, 1) } else { (idx(4, 7), 2, 3) };
        if self.board[home] == KING * us && !self.attacked(home, -us) {
            if self.castle[short]
                && self.board[home + 3] == ROOK * us
                && self.board[home + 1] == EMPTY
                && self.board[home + 2] == EMPTY
                && !self.attacked(home + 1, -us)
                && !self.attacked(home + 2, -us)
            {
                out.push(NaiveMove { castle: true, ..plain(home, home + 2) });
            }
            if self.castle[long]
                && self.board[home - 4] == ROOK * us
                && self.board[home - 1] == EMPTY
                && self.board[home - 2] == EMPTY
                && self.board[home - 3] == EMPTY
                && !self.attacked(home - 1, -us)
                && !self.attacked(home - 2, -us)
            {
                out.push(NaiveMove { castle: true, ..plain(home, home - 2) });
            }
        }
        out
    }

    fn make(&self, m: NaiveMove) -> Naive {
        let mut n = self.clone();
        let piece = n.board[m.from];
        n.board[m.from] = EMPTY;
        n.board[m.to] = if m.promo != 0 { m.promo * self.side } else { piece };
        if m.en_passant {
            let victim = if self.side == 1 { m.to - 10 } else { m.to + 10 };
            n.board[victim] = EMPTY;
        }
        if m.castle {
            let (rook_from, rook_to) = if m.to > m.from { (m.from + 3, m.from + 1) } else { (m.from - 4, m.from - 1) };
            n.board[rook_to] = n.board[rook_from];
            n.board[rook_from] = EMPTY;
        }
        n.ep = None;
        if piece.abs() == PAWN && (m.to as i32 - m.from as i32).abs() == 20 {
            n.ep = Some((m.from + m.to) / 2);
        }
        for (sq, right) in [
            (idx(4, 0), 0),
            (idx(4, 0), 1),
            (idx(7, 0), 0),
            (idx(0, 0), 1),
            (idx(4, 7), 2),
            (idx(4, 7), 3),
            (idx(7, 7), 2),
            (idx(0, 7), 3),
        ] {
            if m.from == sq || m.to == sq {
                n.castle[right] = false;
            }
        }
        n.side = -self.side;
        n
    }

    fn legal_children(&self) -> Vec<Naive> {
        self.pseudo_moves()
            .into_iter()
            .map(|m| self.make(m))
            .filter(|child| !child.attacked(child.king(self.side), child.side))
            .collect()
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let children = self.legal_children();
        if depth == 1 {
            return children.len() as u64;
        }
        children.iter().map(|c| c.perft(depth - 1)).sum()
    }
}

/// Perft through the naive generator, starting from a FEN string.
pub fn naive_perft(fen: &str, depth: u32) -> u64 {
    Naive::from_fen(fen).perft(depth)
}

/// A position reached by `plies` random legal moves from the start, or
/// earlier if the game ends. Never returns a position without legal moves.
pub fn random_playout(rng: &mut ChaCha8Rng, plies: u32) -> Position {
    let mut p = parse_fen(START_FEN).unwrap();
    for _ in 0..plies {
        let moves = generate_legal_moves(&p);
        let m = *moves.choose(rng).expect("position has moves");
        let next = play(&p, &m);
        if generate_legal_moves(&next).is_empty() {
            break;
        }
        p = next;
    }
    p
}

/// `count` distinct-seeded random positions from playouts of 0 to 60 plies.
pub fn random_positions(seed: u64, count: usize) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let plies = rng.gen_range(0..=60);
            random_playout(&mut rng, plies)
        })
        .collect()
}

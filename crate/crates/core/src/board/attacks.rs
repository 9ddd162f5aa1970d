//! Attack sets for leapers (precomputed) and sliders (ray scan).

use super::types::{Color, Square};

const fn leaper_table(deltas: [(i8, i8); 8]) -> [u64; 64] {
    let mut table = [0u64; 64];
    let mut sq = 0;
    while sq < 64 {
        let file = (sq % 8) as i8;
        let rank = (sq / 8) as i8;
        let mut i = 0;
        while i < 8 {
            let f = file + deltas[i].0;
            let r = rank + deltas[i].1;
            if f >= 0 && f < 8 && r >= 0 && r < 8 {
                table[sq] |= 1u64 << (r * 8 + f);
            }
            i += 1;
        }
        sq += 1;
    }
    table
}

const KNIGHT: [u64; 64] = leaper_table([
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (-1, -2),
    (-2, -1),
    (-2, 1),
    (-1, 2),
]);

const KING: [u64; 64] = leaper_table([
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
]);

const fn pawn_table(dir: i8) -> [u64; 64] {
    let mut table = [0u64; 64];
    let mut sq = 0;
    while sq < 64 {
        let file = (sq % 8) as i8;
        let rank = (sq / 8) as i8 + dir;
        if rank >= 0 && rank < 8 {
            if file > 0 {
                table[sq] |= 1u64 << (rank * 8 + file - 1);
            }
            if file < 7 {
                table[sq] |= 1u64 << (rank * 8 + file + 1);
            }
        }
        sq += 1;
    }
    table
}

const PAWN: [[u64; 64]; 2] = [pawn_table(1), pawn_table(-1)];

pub(crate) const ROOK_DIRS: [(i8, i8); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
pub(crate) const BISHOP_DIRS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

#[inline]
pub(crate) fn knight(sq: Square) -> u64 {
    KNIGHT[sq.index()]
}

#[inline]
pub(crate) fn king(sq: Square) -> u64 {
    KING[sq.index()]
}

/// Squares a pawn of `color` standing on `sq` attacks.
#[inline]
pub(crate) fn pawn(color: Color, sq: Square) -> u64 {
    PAWN[color.index()][sq.index()]
}

#[inline]
fn ray_scan(sq: Square, occupied: u64, dirs: &[(i8, i8); 4]) -> u64 {
    let mut out = 0u64;
    let file = sq.file() as i8;
    let rank = sq.rank() as i8;
    for &(df, dr) in dirs {
        let (mut f, mut r) = (file + df, rank + dr);
        while (0..8).contains(&f) && (0..8).contains(&r) {
            let bit = 1u64 << (r * 8 + f);
            out |= bit;
            if occupied & bit != 0 {
                break;
            }
            f += df;
            r += dr;
        }
    }
    out
}

#[inline]
pub(crate) fn rook(sq: Square, occupied: u64) -> u64 {
    ray_scan(sq, occupied, &ROOK_DIRS)
}

#[inline]
pub(crate) fn bishop(sq: Square, occupied: u64) -> u64 {
    ray_scan(sq, occupied, &BISHOP_DIRS)
}

/// Iterate set bits as squares, lowest first.
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = Square;

    #[inline]
    fn next(&mut self) -> Option<Square> {
        if self.0 == 0 {
            return None;
        }
        let idx = self.0.trailing_zeros() as u8;
        self.0 &= self.0 - 1;
        Some(Square::from_index_unchecked(idx))
    }
}

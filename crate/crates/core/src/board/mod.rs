//! Chess rules: state, FEN/EPD, move generation and application.

mod attacks;
pub mod fen;
pub mod movegen;
pub mod notation;
mod position;
mod types;

pub use fen::{parse_epd, parse_fen, to_epd, to_fen, EpdRecord};
pub use movegen::{
    apply_move, find_legal, generate_legal_moves, has_legal_move, is_checkmate, is_stalemate, legal_successors,
    parse_uci_move, perft,
};
pub(crate) use position::StateKey;
pub use position::{Position, START_FEN};
pub use types::{CastlingRights, Color, Move, MoveList, Piece, PieceKind, Square};

/// Whether `color`'s king is attacked in `p`.
pub fn is_in_check(p: &Position, color: Color) -> bool {
    p.is_in_check(color)
}

/// Successor of a generator-produced move without re-checking legality.
pub fn play(p: &Position, m: &Move) -> Position {
    p.play_unchecked(m)
}

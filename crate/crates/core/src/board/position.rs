use super::attacks::{self, Bits};
use super::types::{CastlingRights, Color, Move, Piece, PieceKind, Square};
use crate::error::BoardError;

pub(crate) type StateKey = ([u64; 2], [u64; 6], Color, CastlingRights, Option<Square>);

/// Full chess state. Immutable once constructed; moves produce new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Position {
    board: [Option<Piece>; 64],
    by_color: [u64; 2],
    by_kind: [u64; 6],
    side_to_move: Color,
    castling: CastlingRights,
    en_passant: Option<Square>,
    halfmove_clock: u32,
    fullmove_number: u32,
}

impl std::fmt::Debug for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Position({})", super::fen::to_fen(self))
    }
}

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

impl Position {
    pub fn start() -> Position {
        super::fen::parse_fen(START_FEN).expect("start FEN is valid")
    }

    pub(crate) fn empty() -> Position {
        Position {
            board: [None; 64],
            by_color: [0; 2],
            by_kind: [0; 6],
            side_to_move: Color::White,
            castling: CastlingRights::none(),
            en_passant: None,
            halfmove_clock: 0,
            fullmove_number: 1,
        }
    }

    /// Build a position from raw parts and check every state invariant.
    pub fn from_parts(
        placement: &[(Square, Piece)],
        side_to_move: Color,
        castling: CastlingRights,
        en_passant: Option<Square>,
        halfmove_clock: u32,
        fullmove_number: u32,
    ) -> Result<Position, BoardError> {
        let mut p = Position::empty();
        for &(sq, piece) in placement {
            if p.board[sq.index()].is_some() {
                return Err(BoardError::SquareOccupiedTwice(sq));
            }
            p.put(sq, piece);
        }
        p.side_to_move = side_to_move;
        p.castling = castling;
        p.en_passant = en_passant;
        p.halfmove_clock = halfmove_clock;
        p.fullmove_number = fullmove_number;
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn validate(&self) -> Result<(), BoardError> {
        for color in Color::ALL {
            let kings = (self.pieces(PieceKind::King, color)).count_ones();
            match kings {
                0 => return Err(BoardError::MissingKing(color)),
                1 => {}
                _ => return Err(BoardError::TooManyKings(color)),
            }
        }
        let back_ranks = 0xFF00_0000_0000_00FFu64;
        if let Some(sq) = Bits(self.by_kind[PieceKind::Pawn.index()] & back_ranks).next() {
            return Err(BoardError::PawnOnBackRank(sq));
        }
        if let Some(ep) = self.en_passant {
            let expected_rank = match self.side_to_move {
                Color::Black => 2,
                Color::White => 5,
            };
            if ep.rank() != expected_rank {
                return Err(BoardError::BadEnPassant(ep));
            }
        }
        if self.fullmove_number == 0 {
            return Err(BoardError::BadFullmove);
        }
        if self.is_in_check(self.side_to_move.opposite()) {
            return Err(BoardError::OpponentInCheck(self.side_to_move.opposite()));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn put(&mut self, sq: Square, piece: Piece) {
        self.board[sq.index()] = Some(piece);
        self.by_color[piece.color.index()] |= sq.bit();
        self.by_kind[piece.kind.index()] |= sq.bit();
    }

    #[inline]
    pub(crate) fn remove(&mut self, sq: Square) -> Option<Piece> {
        let piece = self.board[sq.index()].take()?;
        self.by_color[piece.color.index()] &= !sq.bit();
        self.by_kind[piece.kind.index()] &= !sq.bit();
        Some(piece)
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.board[sq.index()]
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    #[inline]
    pub fn castling_rights(&self) -> CastlingRights {
        self.castling
    }

    #[inline]
    pub fn en_passant(&self) -> Option<Square> {
        self.en_passant
    }

    /// Everything that determines the legal moves from here, minus the clocks.
    pub(crate) fn state_key(&self) -> StateKey {
        (self.by_color, self.by_kind, self.side_to_move, self.castling, self.en_passant)
    }

    #[inline]
    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    #[inline]
    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    #[inline]
    pub(crate) fn occupied(&self) -> u64 {
        self.by_color[0] | self.by_color[1]
    }

    #[inline]
    pub(crate) fn color_bits(&self, color: Color) -> u64 {
        self.by_color[color.index()]
    }

    #[inline]
    pub(crate) fn pieces(&self, kind: PieceKind, color: Color) -> u64 {
        self.by_kind[kind.index()] & self.by_color[color.index()]
    }

    /// Number of pieces of `kind` and `color` on the board.
    pub fn count(&self, kind: PieceKind, color: Color) -> u32 {
        self.pieces(kind, color).count_ones()
    }

    /// Total number of pieces on the board, both colors, kings included.
    pub fn piece_count(&self) -> u32 {
        self.occupied().count_ones()
    }

    /// All pieces in square order.
    pub fn pieces_iter(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        Bits(self.occupied()).map(move |sq| (sq, self.board[sq.index()].unwrap()))
    }

    pub fn king_square(&self, color: Color) -> Square {
        Bits(self.pieces(PieceKind::King, color))
            .next()
            .expect("position invariant: one king per color")
    }

    /// Whether `sq` is attacked by any piece of color `by`.
    pub fn is_attacked(&self, sq: Square, by: Color) -> bool {
        let occ = self.occupied();
        let them = self.by_color[by.index()];
        let kinds = &self.by_kind;
        if attacks::pawn(by.opposite(), sq) & kinds[PieceKind::Pawn.index()] & them != 0 {
            return true;
        }
        if attacks::knight(sq) & kinds[PieceKind::Knight.index()] & them != 0 {
            return true;
        }
        if attacks::king(sq) & kinds[PieceKind::King.index()] & them != 0 {
            return true;
        }
        let queens = kinds[PieceKind::Queen.index()];
        let diag = (kinds[PieceKind::Bishop.index()] | queens) & them;
        if diag != 0 && attacks::bishop(sq, occ) & diag != 0 {
            return true;
        }
        let ortho = (kinds[PieceKind::Rook.index()] | queens) & them;
        ortho != 0 && attacks::rook(sq, occ) & ortho != 0
    }

    /// True iff `color`'s king is attacked.
    pub fn is_in_check(&self, color: Color) -> bool {
        self.is_attacked(self.king_square(color), color.opposite())
    }

    /// Apply a move produced by the generator for this position, without
    /// re-validating it. Passing any other move leaves the result undefined
    /// (but memory-safe).
    pub(crate) fn play_unchecked(&self, m: &Move) -> Position {
        let mut next = self.clone();
        let us = self.side_to_move;
        let moving = next.remove(m.from).expect("move origin holds a piece");
        let mut irreversible = moving.kind == PieceKind::Pawn;

        if moving.kind == PieceKind::Pawn && Some(m.to) == self.en_passant && m.from.file() != m.to.file() {
            let victim = match us {
                Color::White => Square::from_index_unchecked(m.to.index() as u8 - 8),
                Color::Black => Square::from_index_unchecked(m.to.index() as u8 + 8),
            };
            next.remove(victim);
        } else if next.remove(m.to).is_some() {
            irreversible = true;
        }

        let placed = match m.promotion {
            Some(kind) => Piece::new(kind, us),
            None => moving,
        };
        next.put(m.to, placed);

        if moving.kind == PieceKind::King && m.from.file().abs_diff(m.to.file()) == 2 {
            let rank = m.from.rank();
            let (rook_from, rook_to) = if m.to.file() == 6 { (7, 5) } else { (0, 3) };
            let rf = Square::from_coords(rook_from, rank).unwrap();
            let rt = Square::from_coords(rook_to, rank).unwrap();
            if let Some(rook) = next.remove(rf) {
                next.put(rt, rook);
            }
        }

        next.castling.touch(m.from);
        next.castling.touch(m.to);

        next.en_passant = None;
        if moving.kind == PieceKind::Pawn && m.from.rank().abs_diff(m.to.rank()) == 2 {
            let mid = (m.from.index() + m.to.index()) / 2;
            next.en_passant = Some(Square::from_index_unchecked(mid as u8));
        }

        next.halfmove_clock = if irreversible { 0 } else { self.halfmove_clock + 1 };
        if us == Color::Black {
            next.fullmove_number += 1;
        }
        next.side_to_move = us.opposite();
        next
    }
}

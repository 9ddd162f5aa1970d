//! Legal move generation, move application, and perft.
//!
//! Moves are produced pseudo-legally and filtered by playing each one and
//! testing the mover's king. The same play step sets `gives_check`.

use super::attacks::{self, Bits};
use super::position::Position;
use super::types::{Color, Move, MoveList, PieceKind, Square};
use crate::error::BoardError;

fn push_pseudo(out: &mut Vec<Move>, p: &Position, from: Square, to: Square, promotion: Option<PieceKind>) {
    let captured = match p.piece_at(to) {
        Some(victim) => Some(victim.kind),
        None => {
            let is_pawn = p.piece_at(from).map(|pc| pc.kind) == Some(PieceKind::Pawn);
            (is_pawn && Some(to) == p.en_passant() && from.file() != to.file()).then_some(PieceKind::Pawn)
        }
    };
    out.push(Move {
        from,
        to,
        promotion,
        captured,
        gives_check: false,
    });
}

fn pseudo_legal(p: &Position, out: &mut Vec<Move>) {
    let us = p.side_to_move();
    let them = us.opposite();
    let own = p.color_bits(us);
    let enemy = p.color_bits(them);
    let occ = p.occupied();

    for from in Bits(own) {
        let piece = p.piece_at(from).unwrap();
        match piece.kind {
            PieceKind::Pawn => pawn_moves(p, from, us, enemy, occ, out),
            PieceKind::Knight => {
                for to in Bits(attacks::knight(from) & !own) {
                    push_pseudo(out, p, from, to, None);
                }
            }
            PieceKind::Bishop => {
                for to in Bits(attacks::bishop(from, occ) & !own) {
                    push_pseudo(out, p, from, to, None);
                }
            }
            PieceKind::Rook => {
                for to in Bits(attacks::rook(from, occ) & !own) {
                    push_pseudo(out, p, from, to, None);
                }
            }
            PieceKind::Queen => {
                let targets = attacks::rook(from, occ) | attacks::bishop(from, occ);
                for to in Bits(targets & !own) {
                    push_pseudo(out, p, from, to, None);
                }
            }
            PieceKind::King => {
                for to in Bits(attacks::king(from) & !own) {
                    push_pseudo(out, p, from, to, None);
                }
                castling_moves(p, from, us, occ, out);
            }
        }
    }
}

fn pawn_moves(p: &Position, from: Square, us: Color, enemy: u64, occ: u64, out: &mut Vec<Move>) {
    let (dir, start_rank, last_rank): (i8, u8, u8) = match us {
        Color::White => (1, 1, 7),
        Color::Black => (-1, 6, 0),
    };
    let push_with_promotions = |out: &mut Vec<Move>, to: Square| {
        if to.rank() == last_rank {
            for kind in PieceKind::PROMOTIONS {
                push_pseudo(out, p, from, to, Some(kind));
            }
        } else {
            push_pseudo(out, p, from, to, None);
        }
    };

    let mut captures = attacks::pawn(us, from) & enemy;
    if let Some(ep) = p.en_passant() {
        let victim_rank = (ep.rank() as i8 - dir) as u8;
        let victim = Square::from_coords(ep.file(), victim_rank);
        let victim_is_pawn = victim
            .and_then(|v| p.piece_at(v))
            .is_some_and(|pc| pc.kind == PieceKind::Pawn && pc.color != us);
        if victim_is_pawn && p.piece_at(ep).is_none() {
            captures |= attacks::pawn(us, from) & ep.bit();
        }
    }

    let one_rank = from.rank() as i8 + dir;
    if (0..8).contains(&one_rank) {
        let one = Square::from_coords(from.file(), one_rank as u8).unwrap();
        if occ & one.bit() == 0 {
            push_with_promotions(out, one);
            if from.rank() == start_rank {
                let two = Square::from_coords(from.file(), (one_rank + dir) as u8).unwrap();
                if occ & two.bit() == 0 {
                    push_pseudo(out, p, from, two, None);
                }
            }
        }
    }
    for to in Bits(captures) {
        push_with_promotions(out, to);
    }
}

fn castling_moves(p: &Position, from: Square, us: Color, occ: u64, out: &mut Vec<Move>) {
    let rights = p.castling_rights();
    let rank = match us {
        Color::White => 0,
        Color::Black => 7,
    };
    let home = Square::from_coords(4, rank).unwrap();
    if from != home || (!rights.kingside(us) && !rights.queenside(us)) {
        return;
    }
    let them = us.opposite();
    if p.is_attacked(home, them) {
        return;
    }
    let sq = |f: u8| Square::from_coords(f, rank).unwrap();
    let own_rook_on = |f: u8| {
        p.piece_at(sq(f))
            .is_some_and(|pc| pc.kind == PieceKind::Rook && pc.color == us)
    };
    let empty = |files: &[u8]| files.iter().all(|&f| occ & sq(f).bit() == 0);

    if rights.kingside(us) && own_rook_on(7) && empty(&[5, 6]) && !p.is_attacked(sq(5), them) {
        push_pseudo(out, p, from, sq(6), None);
    }
    if rights.queenside(us) && own_rook_on(0) && empty(&[1, 2, 3]) && !p.is_attacked(sq(3), them) {
        push_pseudo(out, p, from, sq(2), None);
    }
}

/// All legal moves, each annotated with capture victim and `gives_check`.
pub fn generate_legal_moves(p: &Position) -> MoveList {
    let mut pseudo = Vec::with_capacity(64);
    pseudo_legal(p, &mut pseudo);
    let us = p.side_to_move();
    let them = us.opposite();
    pseudo
        .into_iter()
        .filter_map(|mut m| {
            let next = p.play_unchecked(&m);
            if next.is_in_check(us) {
                return None;
            }
            m.gives_check = next.is_in_check(them);
            Some(m)
        })
        .collect()
}

/// Legal moves paired with their successor positions.
pub fn legal_successors(p: &Position) -> Vec<(Move, Position)> {
    let mut pseudo = Vec::with_capacity(64);
    pseudo_legal(p, &mut pseudo);
    let us = p.side_to_move();
    let them = us.opposite();
    pseudo
        .into_iter()
        .filter_map(|mut m| {
            let next = p.play_unchecked(&m);
            if next.is_in_check(us) {
                return None;
            }
            m.gives_check = next.is_in_check(them);
            Some((m, next))
        })
        .collect()
}

/// Cheaper than generating the full list: stops at the first legal move.
pub fn has_legal_move(p: &Position) -> bool {
    let mut pseudo = Vec::with_capacity(64);
    pseudo_legal(p, &mut pseudo);
    let us = p.side_to_move();
    pseudo.iter().any(|m| !p.play_unchecked(m).is_in_check(us))
}

pub fn is_checkmate(p: &Position) -> bool {
    p.is_in_check(p.side_to_move()) && !has_legal_move(p)
}

pub fn is_stalemate(p: &Position) -> bool {
    !p.is_in_check(p.side_to_move()) && !has_legal_move(p)
}

/// Play `m` after checking it against the legal move list. Only
/// `from`, `to` and `promotion` are compared; annotations are recomputed.
pub fn apply_move(p: &Position, m: &Move) -> Result<Position, BoardError> {
    let legal = find_legal(p, m.from, m.to, m.promotion).ok_or_else(|| BoardError::IllegalMove(m.uci()))?;
    Ok(p.play_unchecked(&legal))
}

/// Look up the legal move matching the given coordinates.
pub fn find_legal(p: &Position, from: Square, to: Square, promotion: Option<PieceKind>) -> Option<Move> {
    generate_legal_moves(p)
        .into_iter()
        .find(|m| m.from == from && m.to == to && m.promotion == promotion)
}

/// Parse coordinate notation (`e2e4`, `a7a8q`) against the legal moves of `p`.
pub fn parse_uci_move(p: &Position, text: &str) -> Result<Move, BoardError> {
    let bad = || BoardError::IllegalMove(text.to_string());
    if text.len() < 4 || text.len() > 5 || !text.is_ascii() {
        return Err(bad());
    }
    let from = Square::parse(&text[0..2]).ok_or_else(bad)?;
    let to = Square::parse(&text[2..4]).ok_or_else(bad)?;
    let promotion = match text.chars().nth(4) {
        Some(c) => Some(PieceKind::from_letter(c).filter(|k| PieceKind::PROMOTIONS.contains(k)).ok_or_else(bad)?),
        None => None,
    };
    find_legal(p, from, to, promotion).ok_or_else(bad)
}

/// Leaf count of the full legal move tree at exactly `depth`.
pub fn perft(p: &Position, depth: u32) -> u64 {
    match depth {
        0 => 1,
        1 => generate_legal_moves(p).len() as u64,
        _ => legal_successors(p)
            .iter()
            .map(|(_, next)| perft(next, depth - 1))
            .sum(),
    }
}

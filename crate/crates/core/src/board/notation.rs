//! Move rendering: standard algebraic and old-style descriptive notation.

use super::movegen::{generate_legal_moves, has_legal_move};
use super::position::Position;
use super::types::{Color, Move, PieceKind, Square};

fn suffix(p: &Position, m: &Move) -> &'static str {
    if !m.gives_check {
        return "";
    }
    if has_legal_move(&p.play_unchecked(m)) {
        "+"
    } else {
        "#"
    }
}

fn is_castle(p: &Position, m: &Move) -> bool {
    p.piece_at(m.from).is_some_and(|pc| pc.kind == PieceKind::King) && m.from.file().abs_diff(m.to.file()) == 2
}

/// Standard algebraic notation for a legal move of `p`.
pub fn san(p: &Position, m: &Move) -> String {
    let piece = p.piece_at(m.from).expect("move origin holds a piece");
    if is_castle(p, m) {
        let base = if m.to.file() == 6 { "O-O" } else { "O-O-O" };
        return format!("{base}{}", suffix(p, m));
    }
    let mut s = String::new();
    if piece.kind == PieceKind::Pawn {
        if m.is_capture() {
            s.push((b'a' + m.from.file()) as char);
            s.push('x');
        }
        s.push_str(&m.to.to_string());
        if let Some(promo) = m.promotion {
            s.push('=');
            s.push(promo.letter());
        }
    } else {
        s.push(piece.kind.letter());
        let rivals: Vec<Move> = generate_legal_moves(p)
            .into_iter()
            .filter(|o| {
                o.to == m.to && o.from != m.from && p.piece_at(o.from).map(|pc| pc.kind) == Some(piece.kind)
            })
            .collect();
        if !rivals.is_empty() {
            let same_file = rivals.iter().any(|o| o.from.file() == m.from.file());
            let same_rank = rivals.iter().any(|o| o.from.rank() == m.from.rank());
            if !same_file {
                s.push((b'a' + m.from.file()) as char);
            } else if !same_rank {
                s.push((b'1' + m.from.rank()) as char);
            } else {
                s.push_str(&m.from.to_string());
            }
        }
        if m.is_capture() {
            s.push('x');
        }
        s.push_str(&m.to.to_string());
    }
    s.push_str(suffix(p, m));
    s
}

/// Algebraic rendering of a line starting at `p`.
pub fn san_line(p: &Position, line: &[Move]) -> Vec<String> {
    let mut pos = p.clone();
    let mut out = Vec::with_capacity(line.len());
    for m in line {
        out.push(san(&pos, m));
        pos = pos.play_unchecked(m);
    }
    out
}

const DESCRIPTIVE_FILES: [&str; 8] = ["QR", "QN", "QB", "Q", "K", "KB", "KN", "KR"];

fn descriptive_square(sq: Square, mover: Color) -> String {
    let rank = match mover {
        Color::White => sq.rank() + 1,
        Color::Black => 8 - sq.rank(),
    };
    format!("{}{}", DESCRIPTIVE_FILES[sq.file() as usize], rank)
}

/// Descriptive notation, e.g. `Q-QN6ch`, `PxQ`, `R-Q8 mate`.
pub fn descriptive(p: &Position, m: &Move) -> String {
    let mover = p.side_to_move();
    let piece = p.piece_at(m.from).expect("move origin holds a piece");
    let mut s = if is_castle(p, m) {
        if m.to.file() == 6 { "O-O" } else { "O-O-O" }.to_string()
    } else if let Some(victim) = m.captured {
        format!("{}x{}", piece.kind.letter(), victim.letter())
    } else {
        format!("{}-{}", piece.kind.letter(), descriptive_square(m.to, mover))
    };
    if let Some(promo) = m.promotion {
        s.push_str(&format!("={}", promo.letter()));
    }
    match suffix(p, m) {
        "+" => s.push_str("ch"),
        "#" => s.push_str(" mate"),
        _ => {}
    }
    s
}

/// Descriptive rendering of a line starting at `p`.
pub fn descriptive_line(p: &Position, line: &[Move]) -> Vec<String> {
    let mut pos = p.clone();
    let mut out = Vec::with_capacity(line.len());
    for m in line {
        out.push(descriptive(&pos, m));
        pos = pos.play_unchecked(m);
    }
    out
}

/// Join rendered half-moves into numbered move pairs (`1. e4 e5 2. Nf3`).
pub fn numbered(p: &Position, rendered: &[String]) -> String {
    let mut s = String::new();
    let mut number = p.fullmove_number();
    let mut white_turn = p.side_to_move() == Color::White;
    for (i, text) in rendered.iter().enumerate() {
        if white_turn {
            s.push_str(&format!("{number}. "));
        } else if i == 0 {
            s.push_str(&format!("{number}... "));
        }
        s.push_str(text);
        s.push(' ');
        if !white_turn {
            number += 1;
        }
        white_turn = !white_turn;
    }
    s.trim_end().to_string()
}

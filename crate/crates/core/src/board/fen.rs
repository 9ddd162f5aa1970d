//! FEN and EPD text formats.

use std::collections::BTreeMap;

use super::position::Position;
use super::types::{CastlingRights, Color, Piece, Square};
use crate::error::BoardError;

/// Parse a standard six-field FEN record.
pub fn parse_fen(text: &str) -> Result<Position, BoardError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 6 {
        return Err(BoardError::FieldCount {
            expected: 6,
            found: fields.len(),
        });
    }
    let halfmove = fields[4]
        .parse::<u32>()
        .map_err(|_| BoardError::BadClock(fields[4].to_string()))?;
    let fullmove = fields[5]
        .parse::<u32>()
        .map_err(|_| BoardError::BadClock(fields[5].to_string()))?;
    parse_core(&fields[..4], halfmove, fullmove)
}

/// The four position fields shared by FEN and EPD.
fn parse_core(fields: &[&str], halfmove: u32, fullmove: u32) -> Result<Position, BoardError> {
    let placement = parse_placement(fields[0])?;
    let side = match fields[1] {
        "w" => Color::White,
        "b" => Color::Black,
        other => return Err(BoardError::BadSideToMove(other.to_string())),
    };
    let castling = parse_castling(fields[2])?;
    let en_passant = match fields[3] {
        "-" => None,
        s => Some(Square::parse(s).ok_or_else(|| BoardError::BadEnPassantField(s.to_string()))?),
    };
    Position::from_parts(&placement, side, castling, en_passant, halfmove, fullmove)
}

fn parse_placement(text: &str) -> Result<Vec<(Square, Piece)>, BoardError> {
    let ranks: Vec<&str> = text.split('/').collect();
    if ranks.len() != 8 {
        return Err(BoardError::BadPlacement(format!("expected 8 ranks, found {}", ranks.len())));
    }
    let mut out = Vec::with_capacity(32);
    for (i, row) in ranks.iter().enumerate() {
        let rank = 7 - i as u8;
        let mut file = 0u8;
        for c in row.chars() {
            if let Some(d) = c.to_digit(10) {
                if d == 0 || d > 8 {
                    return Err(BoardError::BadPlacement(format!("bad empty-run digit '{c}'")));
                }
                file += d as u8;
            } else {
                let piece = Piece::from_fen_char(c).ok_or(BoardError::BadPieceLetter(c))?;
                if file >= 8 {
                    return Err(BoardError::BadPlacement(format!("rank {} is too long", rank + 1)));
                }
                out.push((Square::from_coords(file, rank).unwrap(), piece));
                file += 1;
            }
            if file > 8 {
                return Err(BoardError::BadPlacement(format!("rank {} is too long", rank + 1)));
            }
        }
        if file != 8 {
            return Err(BoardError::BadPlacement(format!("rank {} has {} squares", rank + 1, file)));
        }
    }
    Ok(out)
}

fn parse_castling(text: &str) -> Result<CastlingRights, BoardError> {
    let mut rights = CastlingRights::none();
    if text == "-" {
        return Ok(rights);
    }
    for c in text.chars() {
        let slot = match c {
            'K' => &mut rights.white_kingside,
            'Q' => &mut rights.white_queenside,
            'k' => &mut rights.black_kingside,
            'q' => &mut rights.black_queenside,
            _ => return Err(BoardError::BadCastling(text.to_string())),
        };
        if *slot {
            return Err(BoardError::BadCastling(text.to_string()));
        }
        *slot = true;
    }
    Ok(rights)
}

fn core_fields(p: &Position) -> String {
    let mut s = String::with_capacity(64);
    for rank in (0..8u8).rev() {
        let mut empty = 0;
        for file in 0..8u8 {
            match p.piece_at(Square::from_coords(file, rank).unwrap()) {
                Some(piece) => {
                    if empty > 0 {
                        s.push(char::from_digit(empty, 10).unwrap());
                        empty = 0;
                    }
                    s.push(piece.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            s.push(char::from_digit(empty, 10).unwrap());
        }
        if rank > 0 {
            s.push('/');
        }
    }
    s.push(' ');
    s.push(match p.side_to_move() {
        Color::White => 'w',
        Color::Black => 'b',
    });
    s.push(' ');
    let c = p.castling_rights();
    if c.is_empty() {
        s.push('-');
    } else {
        for (set, ch) in [
            (c.white_kingside, 'K'),
            (c.white_queenside, 'Q'),
            (c.black_kingside, 'k'),
            (c.black_queenside, 'q'),
        ] {
            if set {
                s.push(ch);
            }
        }
    }
    s.push(' ');
    match p.en_passant() {
        Some(sq) => s.push_str(&sq.to_string()),
        None => s.push('-'),
    }
    s
}

pub fn to_fen(p: &Position) -> String {
    format!("{} {} {}", core_fields(p), p.halfmove_clock(), p.fullmove_number())
}

/// A parsed EPD record: a position plus its opcode operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpdRecord {
    pub position: Position,
    pub annotations: BTreeMap<String, String>,
}

impl EpdRecord {
    pub fn id(&self) -> Option<&str> {
        self.annotations.get("id").map(String::as_str)
    }

    /// Direct-mate depth in moves (`dm` opcode).
    pub fn direct_mate(&self) -> Option<u32> {
        self.annotations.get("dm").and_then(|v| v.parse().ok())
    }
}

/// Parse an EPD line: four position fields followed by `opcode operand;` pairs.
///
/// `hmvc` and `fmvn` opcodes, when present, set the move clocks.
pub fn parse_epd(text: &str) -> Result<EpdRecord, BoardError> {
    let text = text.trim();
    let mut rest = text;
    let mut fields = Vec::with_capacity(4);
    for _ in 0..4 {
        rest = rest.trim_start();
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if end == 0 {
            break;
        }
        fields.push(&rest[..end]);
        rest = &rest[end..];
    }
    if fields.len() != 4 {
        return Err(BoardError::FieldCount {
            expected: 4,
            found: fields.len(),
        });
    }
    let annotations = parse_opcodes(rest)?;
    let clock = |key: &str, default: u32| -> Result<u32, BoardError> {
        match annotations.get(key) {
            Some(v) => v.parse().map_err(|_| BoardError::BadClock(v.clone())),
            None => Ok(default),
        }
    };
    let position = parse_core(&fields, clock("hmvc", 0)?, clock("fmvn", 1)?)?;
    Ok(EpdRecord {
        position,
        annotations,
    })
}

fn parse_opcodes(text: &str) -> Result<BTreeMap<String, String>, BoardError> {
    let mut map = BTreeMap::new();
    let mut chars = text.trim().chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        if chars.peek().is_none() {
            break;
        }
        let mut opcode = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() || c == ';' {
                break;
            }
            opcode.push(c);
            chars.next();
        }
        if opcode.is_empty() || !opcode.chars().next().unwrap().is_ascii_alphabetic() {
            return Err(BoardError::BadEpdOperation(opcode));
        }
        let mut operand = String::new();
        let mut in_quotes = false;
        let mut terminated = false;
        for c in chars.by_ref() {
            match c {
                '"' => in_quotes = !in_quotes,
                ';' if !in_quotes => {
                    terminated = true;
                    break;
                }
                _ => operand.push(c),
            }
        }
        if !terminated {
            return Err(BoardError::BadEpdOperation(format!("{opcode}: missing ';'")));
        }
        map.insert(opcode, operand.trim().to_string());
    }
    Ok(map)
}

/// Render an EPD line (four fields plus sorted opcodes).
pub fn to_epd(record: &EpdRecord) -> String {
    let mut s = core_fields(&record.position);
    for (op, val) in &record.annotations {
        let quoted = val.is_empty() || val.contains(char::is_whitespace) || op == "id" || op == "c0";
        if quoted {
            s.push_str(&format!(" {op} \"{val}\";"));
        } else {
            s.push_str(&format!(" {op} {val};"));
        }
    }
    s
}

//! Named test positions. Every entry that claims a forced mate is checked
//! by the brute-force prover before anything searches it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::board::notation::san;
use crate::board::{generate_legal_moves, parse_epd, parse_fen, play, EpdRecord, Position};
use crate::error::ExperimentError;
use crate::oracle::certify_mate;

/// Id of the mate-in-seven combination used by the sweeps.
pub const COMBINATION_ID: &str = "combination";

const ENTRIES: &[&str] = &[
    "bn1k1r2/pp2R3/2pppPq1/3p4/3Q4/4B3/P7/K7 w - - id \"combination\"; dm 7; bm Qb6+; \
     c0 \"queen sacrifice on b6, then rook and bishop checks to mate on d8\";",
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - id \"kiwipete\"; \
     c0 \"castling, en passant and promotion stress position\";",
    "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - id \"rook-endgame\"; \
     c0 \"sparse endgame with en passant and discovered checks\";",
];

/// A registry entry: the EPD record plus what it promises.
#[derive(Debug, Clone)]
pub struct RegisteredPosition {
    pub record: EpdRecord,
    /// Length of the forced mate in plies, when the entry is a combination.
    pub mate_plies: Option<u32>,
    /// The key move in algebraic notation, when known.
    pub first_move: Option<String>,
}

impl RegisteredPosition {
    pub fn id(&self) -> &str {
        self.record.id().unwrap_or("")
    }

    pub fn position(&self) -> &Position {
        &self.record.position
    }

    /// Prove a forced mate within the advertised length, and that the key
    /// move keeps it.
    pub fn certify(&self) -> Result<(), ExperimentError> {
        let Some(plies) = self.mate_plies else {
            return Ok(());
        };
        let fail = |reason: String| ExperimentError::Uncertified {
            id: self.id().to_string(),
            reason,
        };
        let p = self.position();
        if !certify_mate(p, plies) {
            return Err(fail(format!("no forced mate within {plies} plies")));
        }
        if let Some(key) = &self.first_move {
            let m = generate_legal_moves(p)
                .into_iter()
                .find(|m| &san(p, m) == key)
                .ok_or_else(|| fail(format!("key move {key} is not legal")))?;
            let after = play(p, &m);
            let replies = crate::board::legal_successors(&after);
            let forced = replies.is_empty() && after.is_in_check(after.side_to_move())
                || !replies.is_empty() && replies.iter().all(|(_, c)| certify_mate(c, plies.saturating_sub(2)));
            if !forced {
                return Err(fail(format!("key move {key} does not force mate within {plies} plies")));
            }
        }
        Ok(())
    }
}

/// Test positions keyed by id.
#[derive(Debug, Clone)]
pub struct PositionRegistry {
    entries: BTreeMap<String, RegisteredPosition>,
}

impl PositionRegistry {
    /// The built-in entries, parsed but not yet certified.
    pub fn builtin() -> PositionRegistry {
        let entries = ENTRIES
            .iter()
            .map(|line| {
                let record = parse_epd(line).expect("built-in EPD parses");
                let entry = RegisteredPosition {
                    mate_plies: record.direct_mate().map(|dm| 2 * dm - 1),
                    first_move: record.annotations.get("bm").cloned(),
                    record,
                };
                (entry.id().to_string(), entry)
            })
            .collect();
        PositionRegistry { entries }
    }

    /// The built-in entries after certification. The proof runs once per
    /// process and its outcome is reused.
    pub fn certified() -> Result<&'static PositionRegistry, ExperimentError> {
        static CERTIFIED: OnceLock<Result<PositionRegistry, (String, String)>> = OnceLock::new();
        let outcome = CERTIFIED.get_or_init(|| {
            let registry = PositionRegistry::builtin();
            for entry in registry.entries.values() {
                if let Err(e) = entry.certify() {
                    return Err((entry.id().to_string(), e.to_string()));
                }
            }
            Ok(registry)
        });
        outcome.as_ref().map_err(|(id, reason)| ExperimentError::Uncertified {
            id: id.clone(),
            reason: reason.clone(),
        })
    }

    pub fn get(&self, id: &str) -> Option<&RegisteredPosition> {
        self.entries.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &RegisteredPosition> {
        self.entries.values()
    }

    /// Look up a registry id, or else parse the text as FEN, then as EPD.
    pub fn resolve(&self, id_or_fen: &str) -> Result<Position, ExperimentError> {
        if let Some(entry) = self.get(id_or_fen.trim()) {
            return Ok(entry.position().clone());
        }
        if let Ok(p) = parse_fen(id_or_fen) {
            return Ok(p);
        }
        parse_epd(id_or_fen)
            .map(|r| r.position)
            .map_err(|_| ExperimentError::UnknownPosition(id_or_fen.to_string()))
    }
}

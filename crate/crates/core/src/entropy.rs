//! Information-theoretic quantities: entropy, mutual information, the
//! per-category entropy model and the fractional plies derived from it.
//!
//! All logarithms are base 2 unless a function says otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::board::{Move, PieceKind, Position};
use crate::error::EntropyError;

const NORMALIZATION_TOL: f64 = 1e-9;

/// A discrete probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probabilities: Vec<f64>,
}

impl Distribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Distribution, EntropyError> {
        if probabilities.is_empty() {
            return Err(EntropyError::Empty);
        }
        check_probabilities(probabilities.iter().copied())?;
        Ok(Distribution { probabilities })
    }

    pub fn uniform(outcomes: usize) -> Result<Distribution, EntropyError> {
        if outcomes == 0 {
            return Err(EntropyError::Empty);
        }
        Distribution::new(vec![1.0 / outcomes as f64; outcomes])
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

fn check_probabilities(values: impl Iterator<Item = f64>) -> Result<(), EntropyError> {
    let mut sum = 0.0;
    for p in values {
        // Marginals can overshoot 1 by rounding dust.
        if !(0.0..=1.0 + NORMALIZATION_TOL).contains(&p) {
            return Err(EntropyError::ProbabilityOutOfRange(p));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(EntropyError::NotNormalized(sum));
    }
    Ok(())
}

/// A joint distribution `p(x, y)` stored row-major, rows indexed by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: Vec<Vec<f64>>,
}

impl JointDistribution {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<JointDistribution, EntropyError> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if width == 0 {
            return Err(EntropyError::Empty);
        }
        if rows.iter().any(|r| r.len() != width) {
            return Err(EntropyError::Ragged);
        }
        check_probabilities(rows.iter().flatten().copied())?;
        Ok(JointDistribution { rows })
    }

    /// Joint of two independent variables.
    pub fn product(x: &Distribution, y: &Distribution) -> JointDistribution {
        let rows = x
            .probabilities
            .iter()
            .map(|px| y.probabilities.iter().map(|py| px * py).collect())
            .collect();
        JointDistribution { rows }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        let width = self.rows[0].len();
        (0..width).map(|j| self.rows.iter().map(|r| r[j]).sum()).collect()
    }
}

fn entropy_of(values: impl Iterator<Item = f64>) -> f64 {
    let h: f64 = values.filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum();
    // -0.0 and rounding dust below zero both collapse to 0.
    h.max(0.0)
}

/// Shannon entropy in bits.
pub fn entropy(d: &Distribution) -> f64 {
    entropy_of(d.probabilities.iter().copied())
}

/// Entropy of the joint variable `(x, y)`.
pub fn joint_entropy(j: &JointDistribution) -> f64 {
    entropy_of(j.rows.iter().flatten().copied())
}

/// `I(X; Y) = Σ p(x,y) log p(x,y) / (p(x) p(y))`, in bits.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    let px = j.marginal_x();
    let py = j.marginal_y();
    let mut total = 0.0;
    for (i, row) in j.rows.iter().enumerate() {
        for (k, &pxy) in row.iter().enumerate() {
            if pxy > 0.0 {
                total += pxy * (pxy / (px[i] * py[k])).log2();
            }
        }
    }
    total.max(0.0)
}

/// `H(before) - H(after)`; positive is information gained by the move.
pub fn information_gain(h_before: f64, h_after: f64) -> f64 {
    h_before - h_after
}

/// Information gained per node searched.
pub fn heuristic_efficiency(gain: f64, nodes: u64) -> Result<f64, EntropyError> {
    if nodes == 0 {
        return Err(EntropyError::ZeroNodes);
    }
    Ok(gain / nodes as f64)
}

/// Probability that trajectory `i` is explored, relative to the best one:
/// `(dE_i / dE_best) * (cost_best / cost_i)`, clamped to `[0, 1]`.
pub fn trajectory_probability(
    entropy_gain: f64,
    best_entropy_gain: f64,
    cost: f64,
    best_cost: f64,
) -> Result<f64, EntropyError> {
    for (name, value) in [("best entropy gain", best_entropy_gain), ("cost", cost), ("best cost", best_cost)] {
        if value <= 0.0 || value.is_nan() {
            return Err(EntropyError::NonPositive { name, value });
        }
    }
    Ok(((entropy_gain / best_entropy_gain) * (best_cost / cost)).clamp(0.0, 1.0))
}

/// Fractional ply from a move probability and branching count:
/// `-ln(p) / ln(c)`, so a move of probability `1/c` costs one ply.
pub fn winands_fractional_ply(probability: f64, branching: u32) -> Result<f64, EntropyError> {
    if !(probability > 0.0 && probability <= 1.0) {
        return Err(EntropyError::ProbabilityOutOfRange(probability));
    }
    if branching < 2 {
        return Err(EntropyError::BranchingTooSmall(branching));
    }
    let fp = probability.ln() / (1.0 / branching as f64).ln();
    Ok(fp.max(0.0))
}

/// Log-probability of a path (natural log): `Σ ln p_i`.
pub fn levy_interestingness(path_probabilities: &[f64]) -> Result<f64, EntropyError> {
    let mut total = 0.0;
    for &p in path_probabilities {
        if !(p > 0.0 && p <= 1.0) {
            return Err(EntropyError::ProbabilityOutOfRange(p));
        }
        total += p.ln();
    }
    Ok(total)
}

/// Move categories ordered by classification precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveCategory {
    Check,
    CaptureQueen,
    CaptureRook,
    CaptureBishop,
    CaptureKnight,
    CapturePawn,
    Promotion,
    Quiet,
}

impl MoveCategory {
    pub const ALL: [MoveCategory; 8] = [
        MoveCategory::Check,
        MoveCategory::CaptureQueen,
        MoveCategory::CaptureRook,
        MoveCategory::CaptureBishop,
        MoveCategory::CaptureKnight,
        MoveCategory::CapturePawn,
        MoveCategory::Promotion,
        MoveCategory::Quiet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveCategory::Check => "check",
            MoveCategory::CaptureQueen => "capture_queen",
            MoveCategory::CaptureRook => "capture_rook",
            MoveCategory::CaptureBishop => "capture_bishop",
            MoveCategory::CaptureKnight => "capture_knight",
            MoveCategory::CapturePawn => "capture_pawn",
            MoveCategory::Promotion => "promotion",
            MoveCategory::Quiet => "quiet",
        }
    }

    fn capture_of(kind: PieceKind) -> Option<MoveCategory> {
        match kind {
            PieceKind::Queen => Some(MoveCategory::CaptureQueen),
            PieceKind::Rook => Some(MoveCategory::CaptureRook),
            PieceKind::Bishop => Some(MoveCategory::CaptureBishop),
            PieceKind::Knight => Some(MoveCategory::CaptureKnight),
            PieceKind::Pawn => Some(MoveCategory::CapturePawn),
            PieceKind::King => None,
        }
    }
}

impl fmt::Display for MoveCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveCategory {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveCategory::ALL.into_iter().find(|c| c.name() == s).ok_or(())
    }
}

/// Check first, then capture by victim, then promotion, otherwise quiet.
///
/// The position argument is kept for symmetry with the other move
/// heuristics; every fact needed is already carried on the move.
pub fn classify_move(_p: &Position, m: &Move) -> MoveCategory {
    if m.gives_check {
        return MoveCategory::Check;
    }
    if let Some(cat) = m.captured.and_then(MoveCategory::capture_of) {
        return cat;
    }
    if m.promotion.is_some() {
        return MoveCategory::Promotion;
    }
    MoveCategory::Quiet
}

/// Static entropy rates of pieces and entropy reductions of move categories.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyModel {
    piece_rate: [f64; 6],
    category_reduction: [f64; 8],
    best_gain: f64,
}

impl Default for EntropyModel {
    /// Max-mobility constants: a check is worth `log2 30`, a queen
    /// capture `log2 28`, a rook capture `log2 14`.
    fn default() -> Self {
        let l = |n: f64| n.log2();
        let mut reductions = BTreeMap::new();
        reductions.insert(MoveCategory::Check, l(30.0));
        reductions.insert(MoveCategory::CaptureQueen, l(28.0));
        reductions.insert(MoveCategory::CaptureRook, l(14.0));
        reductions.insert(MoveCategory::CaptureBishop, l(13.0));
        reductions.insert(MoveCategory::CaptureKnight, l(8.0));
        reductions.insert(MoveCategory::CapturePawn, l(4.0));
        reductions.insert(MoveCategory::Promotion, l(28.0));
        reductions.insert(MoveCategory::Quiet, l(2.0));
        let mut rates = BTreeMap::new();
        rates.insert(PieceKind::Pawn, l(4.0));
        rates.insert(PieceKind::Knight, l(8.0));
        rates.insert(PieceKind::Bishop, l(13.0));
        rates.insert(PieceKind::Rook, l(14.0));
        rates.insert(PieceKind::Queen, l(28.0));
        rates.insert(PieceKind::King, l(8.0));
        EntropyModel::new(&rates, &reductions, None).expect("default constants are valid")
    }
}

impl EntropyModel {
    /// Build a model. Missing entries are zero. `best_gain` defaults to the
    /// largest category reduction; an explicit value below any reduction is
    /// rejected.
    // Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(
        piece_rates: &BTreeMap<PieceKind, f64>,
        category_reductions: &BTreeMap<MoveCategory, f64>,
        best_gain: Option<f64>,
    ) -> Result<EntropyModel, EntropyError> {
        let mut piece_rate = [0.0; 6];
        for (&kind, &rate) in piece_rates {
            if !(rate >= 0.0) {
                return Err(EntropyError::NegativeRate {
                    key: kind.name().to_string(),
                    value: rate,
                });
            }
            piece_rate[kind.index()] = rate;
        }
        let mut category_reduction = [0.0; 8];
        for (&cat, &value) in category_reductions {
            if !(value >= 0.0) {
                return Err(EntropyError::NegativeRate {
                    key: cat.name().to_string(),
                    value,
                });
            }
            category_reduction[cat as usize] = value;
        }
        let max = category_reduction.iter().copied().fold(0.0, f64::max);
        let best_gain = match best_gain {
            Some(best) => {
                if let Some(cat) = MoveCategory::ALL.into_iter().find(|&c| category_reduction[c as usize] > best) {
                    return Err(EntropyError::ExceedsBestGain {
                        key: cat.name().to_string(),
                        value: category_reduction[cat as usize],
                        best,
                    });
                }
                best
            }
            None => max,
        };
        if !(best_gain > 0.0) {
            return Err(EntropyError::NonPositive {
                name: "best gain",
                value: best_gain,
            });
        }
        Ok(EntropyModel {
            piece_rate,
            category_reduction,
            best_gain,
        })
    }

    /// Parse `key=value` lines; keys are piece names (`queen`), category
    /// names (`capture_rook`) or `best_gain`. Blank lines and `#` comments are
    /// skipped. Unlisted keys keep their default value.
    pub fn from_config(text: &str) -> Result<EntropyModel, EntropyError> {
        let base = EntropyModel::default();
        let mut rates: BTreeMap<PieceKind, f64> =
            PieceKind::ALL.into_iter().map(|k| (k, base.piece_rate(k))).collect();
        let mut reductions: BTreeMap<MoveCategory, f64> =
            MoveCategory::ALL.into_iter().map(|c| (c, base.category_reduction(c))).collect();
        let mut best = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| EntropyError::Config { line: i + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, found '{line}'")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("'{}' is not a number", value.trim())))?;
            if key == "best_gain" {
                best = Some(value);
            } else if let Some(kind) = PieceKind::from_name(key) {
                rates.insert(kind, value);
            } else if let Ok(cat) = key.parse::<MoveCategory>() {
                reductions.insert(cat, value);
            } else {
                return Err(err(format!("unknown key '{key}'")));
            }
        }
        EntropyModel::new(&rates, &reductions, best)
    }

    /// The model with every piece rate set to zero.
    pub fn without_piece_rates(&self) -> EntropyModel {
        EntropyModel {
            piece_rate: [0.0; 6],
            ..self.clone()
        }
    }

    pub fn piece_rate(&self, kind: PieceKind) -> f64 {
        self.piece_rate[kind.index()]
    }

    pub fn category_reduction(&self, c: MoveCategory) -> f64 {
        self.category_reduction[c as usize]
    }

    pub fn best_gain(&self) -> f64 {
        self.best_gain
    }

    /// Probability that a move of category `c` is executed:
    /// its entropy reduction relative to the best category.
    pub fn category_probability(&self, c: MoveCategory) -> f64 {
        (self.category_reduction(c) / self.best_gain).clamp(0.0, 1.0)
    }

    /// Fraction of a full ply charged to a move of category `c`.
    pub fn fractional_ply(&self, c: MoveCategory) -> f64 {
        (1.0 - self.category_reduction(c) / self.best_gain).clamp(0.0, 1.0)
    }

    /// Sum of the entropy rates of every piece on the board. The
    /// strategic-structure term is taken as zero.
    pub fn position_entropy(&self, p: &Position) -> f64 {
        p.pieces_iter().map(|(_, piece)| self.piece_rate(piece.kind)).sum()
    }
}

pub fn fractional_ply(model: &EntropyModel, c: MoveCategory) -> f64 {
    model.fractional_ply(c)
}

pub fn category_probability(model: &EntropyModel, c: MoveCategory) -> f64 {
    model.category_probability(c)
}

pub fn position_entropy(model: &EntropyModel, p: &Position) -> f64 {
    model.position_entropy(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{parse_fen, parse_uci_move};

    fn dist(v: &[f64]) -> Distribution {
        Distribution::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&dist(&[0.5, 0.5])), 1.0);
        assert_eq!(entropy(&dist(&[1.0])), 0.0);
        for m in [2usize, 3, 7, 30] {
            let h = entropy(&Distribution::uniform(m).unwrap());
            assert!((h - (m as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_probabilities_contribute_nothing() {
        assert_eq!(entropy(&dist(&[0.5, 0.0, 0.5])), 1.0);
    }

    #[test]
    fn invalid_distributions_rejected() {
        assert_eq!(Distribution::new(vec![]), Err(EntropyError::Empty));
        assert!(matches!(
            Distribution::new(vec![0.5, 0.6]),
            Err(EntropyError::NotNormalized(_))
        ));
        assert!(matches!(
            Distribution::new(vec![1.5, -0.5]),
            Err(EntropyError::ProbabilityOutOfRange(_))
        ));
        assert_eq!(JointDistribution::new(vec![vec![0.5], vec![0.25, 0.25]]), Err(EntropyError::Ragged));
    }

    #[test]
    fn mutual_information_examples() {
        let half = dist(&[0.5, 0.5]);
        let indep = JointDistribution::product(&half, &half);
        assert!(mutual_information(&indep).abs() < 1e-12);
        let diag = JointDistribution::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((mutual_information(&diag) - 1.0).abs() < 1e-12);
        let skew = JointDistribution::new(vec![vec![0.4, 0.1], vec![0.2, 0.3]]).unwrap();
        assert!(mutual_information(&skew) >= 0.0);
    }

    #[test]
    fn published_fractional_plies() {
        let m = EntropyModel::default();
        assert_eq!(m.fractional_ply(MoveCategory::Check), 0.0);
        assert!((m.fractional_ply(MoveCategory::CaptureQueen) - 0.02).abs() <= 0.005);
        // 1 - log 14 / log 30 = 0.22408...
        assert!((m.fractional_ply(MoveCategory::CaptureRook) - 0.22408).abs() < 1e-5);
    }

    #[test]
    fn category_probabilities() {
        let m = EntropyModel::default();
        assert_eq!(m.category_probability(MoveCategory::Check), 1.0);
        assert!((m.category_probability(MoveCategory::CaptureRook) - 0.776).abs() <= 0.001);
        let expected = 28f64.ln() / 30f64.ln();
        assert!((m.category_probability(MoveCategory::CaptureQueen) - expected).abs() < 1e-12);
        for c in MoveCategory::ALL {
            assert!((m.fractional_ply(c) + m.category_probability(c) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trajectory_probability_examples() {
        assert_eq!(trajectory_probability(4.0, 4.0, 1.0, 1.0).unwrap(), 1.0);
        assert_eq!(trajectory_probability(2.0, 4.0, 1.0, 1.0).unwrap(), 0.5);
        assert_eq!(trajectory_probability(4.0, 4.0, 2.0, 1.0).unwrap(), 0.5);
        assert!(trajectory_probability(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(trajectory_probability(1.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn gain_and_efficiency() {
        assert_eq!(information_gain(3.0, 1.0), 2.0);
        assert_eq!(information_gain(2.5, 2.5), 0.0);
        assert_eq!(information_gain(1.0, 3.0), -2.0);
        assert_eq!(heuristic_efficiency(2.0, 4).unwrap(), 0.5);
        assert_eq!(heuristic_efficiency(0.0, 17).unwrap(), 0.0);
        assert_eq!(heuristic_efficiency(1.7, 1).unwrap(), 1.7);
        assert_eq!(heuristic_efficiency(1.0, 0), Err(EntropyError::ZeroNodes));
    }

    #[test]
    fn winands_examples() {
        for c in [2u32, 10, 35] {
            let cf = c as f64;
            assert!((winands_fractional_ply(1.0 / cf, c).unwrap() - 1.0).abs() < 1e-12);
            assert_eq!(winands_fractional_ply(1.0, c).unwrap(), 0.0);
            assert!((winands_fractional_ply(1.0 / (cf * cf), c).unwrap() - 2.0).abs() < 1e-12);
        }
        assert!(winands_fractional_ply(0.0, 10).is_err());
        assert!(winands_fractional_ply(0.5, 1).is_err());
    }

    #[test]
    fn levy_examples() {
        assert_eq!(levy_interestingness(&[1.0, 1.0, 1.0]).unwrap(), 0.0);
        assert!((levy_interestingness(&[0.5, 0.5]).unwrap() - 0.25f64.ln()).abs() < 1e-12);
        assert!(levy_interestingness(&[0.5, 0.0]).is_err());
    }

    #[test]
    fn position_entropy_examples() {
        let m = EntropyModel::default();
        let kings = parse_fen("8/8/8/8/8/8/8/K6k w - - 0 1").unwrap();
        assert!((m.position_entropy(&kings) - 6.0).abs() < 1e-12);
        let with_queen = parse_fen("8/8/8/8/8/8/Q7/K6k w - - 0 1").unwrap();
        let delta = m.position_entropy(&with_queen) - m.position_entropy(&kings);
        assert!((delta - 28f64.log2()).abs() < 1e-12);
        assert_eq!(m.without_piece_rates().position_entropy(&Position::start()), 0.0);
    }

    #[test]
    fn classification_precedence() {
        // Qxd8+ is both a capture and a check.
        let p = parse_fen("3qk3/8/8/8/8/8/8/3QK3 w - - 0 1").unwrap();
        let m = parse_uci_move(&p, "d1d8").unwrap();
        assert_eq!(classify_move(&p, &m), MoveCategory::Check);
        let p = parse_fen("7k/8/8/3q4/8/8/8/3QK3 w - - 0 1").unwrap();
        let m = parse_uci_move(&p, "d1d5").unwrap();
        assert_eq!(classify_move(&p, &m), MoveCategory::CaptureQueen);
        let s = Position::start();
        assert_eq!(classify_move(&s, &parse_uci_move(&s, "e2e4").unwrap()), MoveCategory::Quiet);
        let p = parse_fen("8/P7/8/8/8/8/8/K6k w - - 0 1").unwrap();
        assert_eq!(classify_move(&p, &parse_uci_move(&p, "a7a8n").unwrap()), MoveCategory::Promotion);
    }

    #[test]
    fn config_overrides_and_errors() {
        let m = EntropyModel::from_config("# custom\nquiet = 0.5\nqueen=2\n\n").unwrap();
        assert_eq!(m.category_reduction(MoveCategory::Quiet), 0.5);
        assert_eq!(m.piece_rate(PieceKind::Queen), 2.0);
        assert_eq!(m.best_gain(), 30f64.log2());
        assert!(matches!(
            EntropyModel::from_config("bogus=1"),
            Err(EntropyError::Config { line: 1, .. })
        ));
        assert!(matches!(
            EntropyModel::from_config("check=-1"),
            Err(EntropyError::NegativeRate { .. })
        ));
        assert!(matches!(
            EntropyModel::from_config("best_gain=3"),
            Err(EntropyError::ExceedsBestGain { .. })
        ));
        assert!(matches!(
            EntropyModel::from_config("queen 3"),
            Err(EntropyError::Config { .. })
        ));
    }

    #[test]
    fn larger_reduction_means_smaller_ply() {
        let m = EntropyModel::default();
        for a in MoveCategory::ALL {
            for b in MoveCategory::ALL {
                if m.category_reduction(a) > m.category_reduction(b) {
                    assert!(m.fractional_ply(a) < m.fractional_ply(b));
                }
            }
        }
    }
}

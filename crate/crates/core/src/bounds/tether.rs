use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

use super::BoundError;

/// Integer points scanned before the trace keeps only improvements.
pub const TRACE_LIMIT: u64 = 4096;

/// Hard ceiling on the integer scan.
pub const SCAN_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TetheringError {
    #[error("a tethering needs at least one piece")]
    Empty,
    #[error("the first piece must start at 1, not {0}")]
    FirstStart(f64),
    #[error("piece {index} does not start after piece {}", index - 1)]
    Unordered { index: usize },
    #[error("piece {index} has a non-finite or non-positive parameter")]
    BadParameter { index: usize },
    #[error("piece {index} evaluates to {value} at its start {x}")]
    NonPositive { index: usize, x: f64, value: f64 },
    #[error("tethering drops from {left} to {right} at x = {x}")]
    Decreasing { x: f64, left: f64, right: f64 },
}

/// `c`, `a·x`, or `a·⌊(x + shift)/modulus⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", content = "params", rename_all = "kebab-case")]
pub enum PieceForm {
    Constant { c: f64 },
    Linear { a: f64 },
    ScaledFloor { a: f64, shift: f64, modulus: u32 },
}

impl PieceForm {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            PieceForm::Constant { c } => c,
            PieceForm::Linear { a } => a * x,
            PieceForm::ScaledFloor { a, shift, modulus } => a * ((x + shift) / modulus as f64).floor(),
        }
    }

    /// `lim_{y→x⁻}` of the form.
    fn left_limit(&self, x: f64) -> f64 {
        match *self {
            PieceForm::ScaledFloor { a, shift, modulus } => {
                let q = (x + shift) / modulus as f64;
                let below = if q == q.floor() { q - 1.0 } else { q.floor() };
                a * below
            }
            _ => self.eval(x),
        }
    }

    fn parameters_ok(&self) -> bool {
        match *self {
            PieceForm::Constant { c } => c.is_finite() && c > 0.0,
            PieceForm::Linear { a } => a.is_finite() && a > 0.0,
            PieceForm::ScaledFloor { a, shift, modulus } => a.is_finite() && a > 0.0 && shift.is_finite() && modulus > 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    #[serde(flatten)]
    pub form: PieceForm,
}

#[derive(Deserialize)]
struct RawTethering {
    pieces: Vec<Piece>,
}

/// Piecewise lower bound on ball sizes, `|N_r(v)| ≥ f(r)`, defined on
/// `[1, ∞)`. Pieces are half-open intervals `[start_i, start_{i+1})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTethering")]
pub struct Tethering {
    pieces: Vec<Piece>,
}

impl TryFrom<RawTethering> for Tethering {
    type Error = TetheringError;

    fn try_from(raw: RawTethering) -> Result<Self, Self::Error> {
        Tethering::new(raw.pieces)
    }
}

impl Tethering {
    /// Validates positivity and monotonicity, including across piece
    /// boundaries.
    pub fn new(pieces: Vec<Piece>) -> Result<Self, TetheringError> {
        let first = pieces.first().ok_or(TetheringError::Empty)?;
        if first.start != 1.0 {
            return Err(TetheringError::FirstStart(first.start));
        }
        for (index, piece) in pieces.iter().enumerate() {
            if !piece.start.is_finite() || !piece.form.parameters_ok() {
                return Err(TetheringError::BadParameter { index });
            }
            if index > 0 && piece.start <= pieces[index - 1].start {
                return Err(TetheringError::Unordered { index });
            }
            let value = piece.form.eval(piece.start);
            if value.is_nan() || value <= 0.0 {
                return Err(TetheringError::NonPositive { index, x: piece.start, value });
            }
            if index > 0 {
                let left = pieces[index - 1].form.left_limit(piece.start);
                if left > value {
                    return Err(TetheringError::Decreasing { x: piece.start, left, right: value });
                }
            }
        }
        Ok(Tethering { pieces })
    }

    pub fn constant(c: f64) -> Result<Self, TetheringError> {
        Tethering::new(vec![Piece { start: 1.0, form: PieceForm::Constant { c } }])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn piece_at(&self, x: f64) -> usize {
        self.pieces.iter().rposition(|p| p.start <= x).unwrap_or(0)
    }

    /// `f(x)` for `x ≥ 1`; smaller arguments use the first piece.
    pub fn eval(&self, x: f64) -> f64 {
        self.pieces[self.piece_at(x)].form.eval(x)
    }

    fn piece_end(&self, index: usize) -> f64 {
        self.pieces.get(index + 1).map_or(f64::INFINITY, |p| p.start)
    }
}

/// Ball sizes for triangle-free graphs of minimum degree `d`: `d + 1` on
/// `[1, 2)`, then `(d² + 1)·⌊(x + 3)/5⌋`.
pub fn trianglefree_preset(d: u32) -> Tethering {
    let d = d as f64;
    Tethering::new(vec![
        Piece { start: 1.0, form: PieceForm::Constant { c: d + 1.0 } },
        Piece { start: 2.0, form: PieceForm::ScaledFloor { a: d * d + 1.0, shift: 3.0, modulus: 5 } },
    ])
    .expect("preset is valid for d ≥ 1")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub r: u64,
    pub f: f64,
    pub g: f64,
}

/// Minimisation of `g(x) = n/f(x) + 2x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TetherBoundReport {
    pub n: u64,
    pub tethering: Tethering,
    /// Minimiser of `g` over `[1, ∞)`.
    pub minimizer: f64,
    pub minimum: f64,
    /// `max(⌈m⌉, min(g(⌊m⌋), g(⌈m⌉)))`.
    pub theorem_value: f64,
    /// Largest integer scanned: the least `R` with `2R > g(1)`.
    pub scan_limit: u64,
    /// Every scanned point, or only the running-minimum improvements when
    /// the scan is longer than [`TRACE_LIMIT`].
    pub trace: Vec<ScanPoint>,
    pub trace_complete: bool,
    pub best_integer: u64,
    /// `min(theorem_value, g(best_integer))`.
    pub bound: f64,
    /// `⌊bound⌋`, an upper bound on the burning number of every connected
    /// graph on `n` vertices that satisfies the tethering.
    pub rounds: u64,
}

fn g_value(n: u64, t: &Tethering, x: f64) -> Result<f64, BoundError> {
    let f = t.eval(x);
    if f.is_nan() || f <= 0.0 {
        return Err(BoundError::NonPositiveTethering { x, value: f });
    }
    Ok(n as f64 / f + 2.0 * x)
}

/// Candidate minimisers of `g` on each piece. On a step of a floor piece
/// `f` is constant and `g` increases, so only step starts `x = m·j − shift`
/// matter; `g` along those is convex in `j` and the real minimiser
/// `j* = √(n / (2am))` brackets the best one.
fn candidates(n: u64, t: &Tethering) -> Vec<f64> {
    let n = n as f64;
    let mut out = Vec::new();
    for (i, piece) in t.pieces().iter().enumerate() {
        let (s, e) = (piece.start, t.piece_end(i));
        out.push(s);
        match piece.form {
            PieceForm::Constant { .. } => {}
            PieceForm::Linear { a } => {
                let x = (n / (2.0 * a)).sqrt();
                if x > s && x < e {
                    out.push(x);
                }
            }
            PieceForm::ScaledFloor { a, shift, modulus } => {
                let m = modulus as f64;
                let j_star = (n / (2.0 * a * m)).sqrt();
                for j in [j_star.floor(), j_star.ceil()] {
                    let x = m * j - shift;
                    if x > s && x < e {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

pub fn tether_bound(n: u64, tethering: &Tethering) -> Result<TetherBoundReport, BoundError> {
    if n == 0 {
        return Err(BoundError::NoVertices);
    }
    let mut minimizer = 1.0;
    let mut minimum = g_value(n, tethering, 1.0)?;
    for x in candidates(n, tethering) {
        let g = g_value(n, tethering, x)?;
        if g < minimum || (g == minimum && x < minimizer) {
            minimizer = x;
            minimum = g;
        }
    }
    let (lo, hi) = (minimizer.floor(), minimizer.ceil());
    let theorem_value = hi.max(g_value(n, tethering, lo)?.min(g_value(n, tethering, hi)?));

    let g1 = g_value(n, tethering, 1.0)?;
    let scan_limit = (g1 / 2.0).floor() as u64 + 1;
    if scan_limit > SCAN_LIMIT {
        return Err(BoundError::ScanTooLong { limit: scan_limit });
    }
    let trace_complete = scan_limit <= TRACE_LIMIT;
    let mut trace = Vec::new();
    let mut best: Option<ScanPoint> = None;
    for r in 1..=scan_limit {
        let x = r as f64;
        let point = ScanPoint { r, f: tethering.eval(x), g: g_value(n, tethering, x)? };
        let improves = best.is_none_or(|b| point.g < b.g);
        if improves {
            best = Some(point);
        }
        if trace_complete || improves {
            trace.push(point);
        }
    }
    let best = best.expect("scan covers r = 1");
    let bound = theorem_value.min(best.g);
    Ok(TetherBoundReport {
        n,
        tethering: tethering.clone(),
        minimizer,
        minimum,
        theorem_value,
        scan_limit,
        trace,
        trace_complete,
        best_integer: best.r,
        bound,
        rounds: bound.floor() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TetherViolation {
    pub vertex: usize,
    pub radius: usize,
    pub ball_size: usize,
    pub required: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TetherCheck {
    pub holds: bool,
    pub radius: usize,
    /// First failure, vertices in ascending order and radii ascending
    /// within a vertex.
    pub violation: Option<TetherViolation>,
}

/// Checks `|N_r(v)| ≥ f(r)` for every vertex and every `r` in `1..=rad`.
pub fn verify_tethering(graph: &Graph, tethering: &Tethering) -> Result<TetherCheck, BoundError> {
    let ecc = graph.eccentricities()?;
    for v in 0..graph.vertex_count() {
        let profile = graph.distances_from(v);
        let mut size = 1;
        for r in 1..=ecc.radius {
            size += profile.layers.get(r).map_or(0, Vec::len);
            let required = tethering.eval(r as f64);
            if (size as f64) < required {
                let violation = TetherViolation { vertex: v, radius: r, ball_size: size, required };
                return Ok(TetherCheck { holds: false, radius: ecc.radius, violation: Some(violation) });
            }
        }
    }
    Ok(TetherCheck { holds: true, radius: ecc.radius, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn preset_values() {
        let t = trianglefree_preset(12);
        assert_eq!(t.eval(1.0), 13.0);
        assert_eq!(t.eval(1.5), 13.0);
        assert_eq!(t.eval(2.0), 145.0);
        assert_eq!(t.eval(6.9), 145.0);
        assert_eq!(t.eval(7.0), 290.0);
        assert_eq!(t.eval(12.0), 435.0);
    }

    #[test]
    fn validation() {
        assert_eq!(Tethering::new(vec![]), Err(TetheringError::Empty));
        let c = |start, c| Piece { start, form: PieceForm::Constant { c } };
        assert_eq!(Tethering::new(vec![c(2.0, 1.0)]), Err(TetheringError::FirstStart(2.0)));
        assert!(matches!(Tethering::new(vec![c(1.0, 0.0)]), Err(TetheringError::BadParameter { index: 0 })));
        assert!(matches!(Tethering::new(vec![c(1.0, 3.0), c(2.0, 2.0)]), Err(TetheringError::Decreasing { .. })));
        assert!(matches!(Tethering::new(vec![c(1.0, 3.0), c(1.0, 4.0)]), Err(TetheringError::Unordered { index: 1 })));
        let floor = Piece { start: 1.0, form: PieceForm::ScaledFloor { a: 2.0, shift: 0.0, modulus: 5 } };
        assert!(matches!(Tethering::new(vec![floor]), Err(TetheringError::NonPositive { index: 0, .. })));
        // A linear piece ending at 3 reaches 6 from the left.
        let lin = Piece { start: 1.0, form: PieceForm::Linear { a: 2.0 } };
        assert!(Tethering::new(vec![lin, c(3.0, 6.0)]).is_ok());
        assert!(Tethering::new(vec![lin, c(3.0, 5.9)]).is_err());
    }

    #[test]
    fn serde_shape() {
        let t = trianglefree_preset(3);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"pieces":[{"start":1.0,"form":"constant","params":{"c":4.0}},{"start":2.0,"form":"scaled-floor","params":{"a":10.0,"shift":3.0,"modulus":5}}]}"#
        );
        assert_eq!(serde_json::from_str::<Tethering>(&json).unwrap(), t);
        let bad = r#"{"pieces":[{"start":1,"form":"constant","params":{"c":-1}}]}"#;
        assert!(serde_json::from_str::<Tethering>(bad).is_err());
    }

    #[test]
    fn constant_one() {
        let report = tether_bound(4, &Tethering::constant(1.0).unwrap()).unwrap();
        assert_eq!(report.minimizer, 1.0);
        assert_eq!(report.bound, 6.0);
        assert_eq!(report.rounds, 6);
        assert_eq!(report.scan_limit, 4);
        assert_eq!(report.trace.len(), 4);
    }

    #[test]
    fn linear_piece_minimizer() {
        let t = Tethering::new(vec![
            Piece { start: 1.0, form: PieceForm::Constant { c: 1.0 } },
            Piece { start: 2.0, form: PieceForm::Linear { a: 9.0 } },
        ])
        .unwrap();
        let report = tether_bound(72, &t).unwrap();
        assert!(approx(report.minimizer, 2.0));
        assert!(approx(report.bound, 8.0));
    }

    #[test]
    fn preset_bound_large_n() {
        let report = tether_bound(10_000, &trianglefree_preset(12)).unwrap();
        assert_eq!(report.best_integer, 12);
        assert!(approx(report.bound, 10_000.0 / 435.0 + 24.0));
        assert_eq!(report.rounds, 46);
        assert!(report.bound <= report.theorem_value);
    }

    #[test]
    fn verify_examples() {
        let c5 = verify_tethering(&Graph::cycle(5), &Tethering::constant(3.0).unwrap()).unwrap();
        assert!(c5.holds);
        let p5 = verify_tethering(&Graph::path(5), &Tethering::constant(3.0).unwrap()).unwrap();
        assert_eq!(p5.violation, Some(TetherViolation { vertex: 0, radius: 1, ball_size: 2, required: 3.0 }));
        assert!(verify_tethering(&Graph::complete(4), &Tethering::constant(1.0).unwrap()).unwrap().holds);
    }

    #[test]
    fn preset_fails_on_complete_bipartite() {
        // Triangle-free, minimum degree d, radius 2, but |N_2| = 2d.
        for d in 2..=6 {
            let check = verify_tethering(&Graph::complete_bipartite(d, d), &trianglefree_preset(d as u32)).unwrap();
            let violation = check.violation.unwrap();
            assert_eq!((violation.radius, violation.ball_size), (2, 2 * d));
        }
    }

    #[test]
    fn preset_holds_on_petersen() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        assert!(verify_tethering(&petersen, &trianglefree_preset(3)).unwrap().holds);
    }
}

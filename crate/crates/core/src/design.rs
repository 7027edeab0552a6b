//! Materialized designs, weighted distances, and separation formulas.
//!
//! Two design variants are supported for a lattice and span vector: the
//! corner-anchored design with levels `k/(s-1)` that touches the boundary of
//! the unit cube, and the centered variant with levels `(2k+1)/(2s)` that
//! stays strictly inside. The separation distance of the corner variant has
//! a closed form over the code; an O(m^2) pairwise scan is kept alongside as
//! the independent reference.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Code;
use crate::lattice::{Lattice, SpanVector};

/// Default cap on design size for the pairwise separation scan.
pub const PAIRWISE_CAP: usize = 20_000;

/// Strictly positive per-dimension importance weights. No normalization is
/// applied anywhere.
#[derive(Clone, PartialEq, Debug)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidInput("weights must be nonempty".into()));
        }
        if let Some(bad) = w.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "weights must be finite and positive, got {bad}"
            )));
        }
        Ok(Self(w))
    }

    /// Equal unit weights.
    pub fn equal(p: usize) -> Self {
        Self(vec![1.0; p])
    }

    /// Geometric decay `ratio^(k-1)` across dimensions.
    pub fn geometric(p: usize, ratio: f64) -> Result<Self> {
        Self::new((0..p).map(|k| ratio.powi(k as i32)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Corner,
    Centered,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Corner => write!(f, "corner"),
            Variant::Centered => write!(f, "centered"),
        }
    }
}

/// Where a design came from.
#[derive(Clone, Debug)]
pub enum Provenance {
    Lattice {
        code: Code,
        span: SpanVector,
        variant: Variant,
    },
    LatinHypercube {
        iters: u64,
        seed: u64,
    },
    Points,
}

/// A finite point set in the unit cube with its weights and provenance.
/// Rows are lexicographically sorted and distinct.
#[derive(Clone, Debug)]
pub struct Design {
    p: usize,
    points: Vec<Vec<f64>>,
    weights: Weights,
    provenance: Provenance,
}

impl Design {
    /// Builds a design from explicit points, sorting rows and rejecting
    /// duplicates or coordinates outside the unit cube.
    pub fn from_points(
        mut points: Vec<Vec<f64>>,
        weights: Weights,
        provenance: Provenance,
    ) -> Result<Self> {
        let p = weights.len();
        for row in &points {
            if row.len() != p {
                return Err(Error::InvalidInput(format!(
                    "point length {} does not match dimension {p}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::InvalidInput(
                    "design coordinates must lie in [0,1]".into(),
                ));
            }
        }
        points.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate design points".into()));
        }
        Ok(Self {
            p,
            points,
            weights,
            provenance,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Serializes the point matrix as CSV with header `x1,...,xp` and 17
    /// significant digits per coordinate, which round-trips doubles exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.p).map(|k| format!("x{k}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.points {
            let cells: Vec<String> = row.iter().map(|v| format_coord(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Formats a coordinate with 17 significant digits.
pub fn format_coord(v: f64) -> String {
    format!("{v:.16e}")
}

fn check_same_len(x: &[f64], y: &[f64], w: &Weights) -> Result<()> {
    if x.len() != y.len() || x.len() != w.len() {
        return Err(Error::InvalidInput(format!(
            "length mismatch: {} vs {} with {} weights",
            x.len(),
            y.len(),
            w.len()
        )));
    }
    Ok(())
}

pub(crate) fn weighted_distance_sq(x: &[f64], y: &[f64], w: &[f64]) -> f64 {
    let mut acc = 0.0;
    for k in 0..x.len() {
        let d = w[k] * (x[k] - y[k]).abs();
        acc += d * d;
    }
    acc
}

/// Weighted Euclidean distance between two points.
pub fn weighted_distance(x: &[f64], y: &[f64], w: &Weights) -> Result<f64> {
    check_same_len(x, y, w)?;
    Ok(weighted_distance_sq(x, y, w.values()).sqrt())
}

fn check_design_inputs(lat: &Lattice, s: &[u32], w: &Weights) -> Result<()> {
    if !lat.is_standard() {
        return Err(Error::InvalidInput(
            "design construction requires a standard lattice".into(),
        ));
    }
    if s.len() != lat.p() || w.len() != lat.p() {
        return Err(Error::InvalidInput(format!(
            "span/weight length must match dimension {}",
            lat.p()
        )));
    }
    if let Some(bad) = s.iter().find(|&&v| v < 2) {
        return Err(Error::InvalidInput(format!(
            "design spans must be at least 2, got {bad}"
        )));
    }
    Ok(())
}

/// The corner-anchored design: box lattice points scaled by `1/(s_k - 1)`.
/// Dimension `k` takes exactly `s_k` distinct values, and the origin is a
/// design point.
pub fn corner_design(lat: &Lattice, s: &[u32], w: &Weights) -> Result<Design> {
    check_design_inputs(lat, s, w)?;
    let pts = lat.points_in_box(s)?;
    let points: Vec<Vec<f64>> = pts
        .into_iter()
        .map(|row| {
            row.iter()
                .zip(s)
                .map(|(&x, &sk)| x as f64 / (sk - 1) as f64)
                .collect()
        })
        .collect();
    Ok(Design {
        p: lat.p(),
        points,
        weights: w.clone(),
        provenance: Provenance::Lattice {
            code: lat.code().clone(),
            span: SpanVector::new(s.to_vec())?,
            variant: Variant::Corner,
        },
    })
}

/// The centered variant: box lattice points shifted by a half cell and
/// scaled by `1/s_k`, so no point touches the boundary.
pub fn centered_design(lat: &Lattice, s: &[u32], w: &Weights) -> Result<Design> {
    check_design_inputs(lat, s, w)?;
    let pts = lat.points_in_box(s)?;
    let points: Vec<Vec<f64>> = pts
        .into_iter()
        .map(|row| {
            row.iter()
                .zip(s)
                .map(|(&x, &sk)| (2 * x + 1) as f64 / (2 * sk) as f64)
                .collect()
        })
        .collect();
    Ok(Design {
        p: lat.p(),
        points,
        weights: w.clone(),
        provenance: Provenance::Lattice {
            code: lat.code().clone(),
            span: SpanVector::new(s.to_vec())?,
            variant: Variant::Centered,
        },
    })
}

/// Squared closed-form separation distance of the corner design.
///
/// The minimum runs over three families: nonzero inner-sublattice codewords
/// scaled into the cube, unit directions whose unit vector is a codeword,
/// and double steps in dimensions with more than two levels. Comparisons
/// stay squared so ties are exact; callers take the root at reporting time.
pub fn rho_formula_sq(lat: &Lattice, s: &[u32], w: &Weights) -> Result<f64> {
    rho_sq_with_denoms(lat, s, w, false)
}

/// Separation distance of the corner design via the closed form.
pub fn rho_formula(lat: &Lattice, s: &[u32], w: &Weights) -> Result<f64> {
    Ok(rho_formula_sq(lat, s, w)?.sqrt())
}

/// Separation distance of the centered design. Same geometry at a tighter
/// scale: every denominator `s_k - 1` becomes `s_k`.
pub fn rho_formula_centered(lat: &Lattice, s: &[u32], w: &Weights) -> Result<f64> {
    Ok(rho_sq_with_denoms(lat, s, w, true)?.sqrt())
}

fn rho_sq_with_denoms(lat: &Lattice, s: &[u32], w: &Weights, centered: bool) -> Result<f64> {
    check_design_inputs(lat, s, w)?;
    let p = lat.p();
    let wv = w.values();
    let denom = |k: usize| {
        if centered {
            s[k] as f64
        } else {
            (s[k] - 1) as f64
        }
    };
    let step_sq: Vec<f64> = (0..p)
        .map(|k| {
            let t = wv[k] / denom(k);
            t * t
        })
        .collect();
    let mut best = f64::INFINITY;
    for word in lat.l0_codewords()? {
        if word.is_zero() {
            continue;
        }
        let d_sq: f64 = word.support().map(|k| step_sq[k]).sum();
        best = best.min(d_sq);
    }
    for k in 0..p {
        if lat.code().contains_unit(k) {
            best = best.min(step_sq[k]);
        }
        if s[k] > 2 {
            let t = 2.0 * wv[k] / denom(k);
            best = best.min(t * t);
        }
    }
    if best.is_infinite() {
        return Err(Error::InvalidInput(
            "separation undefined: design has fewer than two points".into(),
        ));
    }
    Ok(best)
}

/// Exact minimum pairwise weighted distance by an O(m^2) scan, using the
/// design's own weights.
pub fn brute_force_separation(d: &Design) -> Result<f64> {
    brute_force_separation_capped(d, PAIRWISE_CAP)
}

pub fn brute_force_separation_capped(d: &Design, cap: usize) -> Result<f64> {
    let m = d.m();
    if m < 2 {
        return Err(Error::InvalidInput(
            "separation needs at least two points".into(),
        ));
    }
    if m > cap {
        return Err(Error::ResourceLimit(format!(
            "pairwise scan capped at {cap} points, design has {m}"
        )));
    }
    let w = d.weights().values();
    let pts = d.points();
    let mut best = f64::INFINITY;
    for i in 0..m {
        for j in (i + 1)..m {
            let dist = weighted_distance_sq(&pts[i], &pts[j], w);
            if dist < best {
                best = dist;
            }
        }
    }
    Ok(best.sqrt())
}

/// Metadata emitted next to a generated design file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DesignMetadata {
    pub p: usize,
    pub n_requested: u64,
    pub m: u64,
    pub rho: f64,
    pub variant: Variant,
    pub s: Vec<u32>,
    pub q: usize,
    pub r: usize,
    pub basis: Vec<String>,
    pub weights: Vec<f64>,
    pub algorithm: u8,
    pub runtime_ms: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BitVec, Code};

    fn lat(p: usize, rows: &[&str]) -> Lattice {
        let rows: Vec<BitVec> = rows.iter().map(|s| s.parse().unwrap()).collect();
        Lattice::new(Code::rref(p, &rows).unwrap())
    }

    #[test]
    fn weighted_distance_examples() {
        let w = Weights::equal(2);
        let d = weighted_distance(&[0.0, 0.0], &[1.0, 1.0], &w).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let w = Weights::new(vec![1.0, 0.75]).unwrap();
        let d = weighted_distance(&[0.0, 0.0], &[1.0, 1.0], &w).unwrap();
        assert!((d - 1.25).abs() < 1e-15);
        assert_eq!(weighted_distance(&[0.3], &[0.3], &Weights::equal(1)).unwrap(), 0.0);
        assert!(weighted_distance(&[0.0], &[0.0, 1.0], &Weights::equal(2)).is_err());
    }

    #[test]
    fn corner_design_examples() {
        let full = Lattice::new(Code::full(2));
        let d = corner_design(&full, &[2, 2], &Weights::equal(2)).unwrap();
        assert_eq!(
            d.points(),
            &[
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0]
            ]
        );

        let diag = lat(2, &["11"]);
        let d = corner_design(&diag, &[3, 3], &Weights::equal(2)).unwrap();
        assert_eq!(
            d.points(),
            &[
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![0.5, 0.5],
                vec![1.0, 0.0],
                vec![1.0, 1.0]
            ]
        );

        let rep = lat(3, &["111"]);
        let d = corner_design(&rep, &[2, 2, 2], &Weights::equal(3)).unwrap();
        assert_eq!(d.points(), &[vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]]);
    }

    #[test]
    fn corner_design_rejects_bad_inputs() {
        let nonstandard = lat(2, &["10"]);
        assert!(corner_design(&nonstandard, &[2, 2], &Weights::equal(2)).is_err());
        let full = Lattice::new(Code::full(2));
        assert!(corner_design(&full, &[1, 2], &Weights::equal(2)).is_err());
    }

    #[test]
    fn centered_design_examples() {
        let full = Lattice::new(Code::full(2));
        let d = centered_design(&full, &[2, 2], &Weights::equal(2)).unwrap();
        assert_eq!(
            d.points(),
            &[
                vec![0.25, 0.25],
                vec![0.25, 0.75],
                vec![0.75, 0.25],
                vec![0.75, 0.75]
            ]
        );

        let diag = lat(2, &["11"]);
        let d = centered_design(&diag, &[3, 3], &Weights::equal(2)).unwrap();
        let sixth = 1.0 / 6.0;
        let expected = vec![
            vec![sixth, sixth],
            vec![sixth, 5.0 * sixth],
            vec![0.5, 0.5],
            vec![5.0 * sixth, sixth],
            vec![5.0 * sixth, 5.0 * sixth],
        ];
        for (a, b) in d.points().iter().zip(&expected) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 1e-15);
            }
        }

        let even = Lattice::new(Code::empty(2));
        assert!(centered_design(&even, &[2, 2], &Weights::equal(2)).is_err());
    }

    #[test]
    fn rho_formula_examples() {
        let full = Lattice::new(Code::full(2));
        let rho = rho_formula(&full, &[2, 2], &Weights::equal(2)).unwrap();
        assert!((rho - 1.0).abs() < 1e-15);

        let diag = lat(2, &["11"]);
        let rho = rho_formula(&diag, &[3, 3], &Weights::equal(2)).unwrap();
        assert!((rho - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn brute_force_matches_formula_on_small_designs() {
        let diag = lat(2, &["11"]);
        let w = Weights::equal(2);
        let d = corner_design(&diag, &[3, 3], &w).unwrap();
        let sep = brute_force_separation(&d).unwrap();
        assert!((sep - 2f64.sqrt() / 2.0).abs() < 1e-14);

        let full = Lattice::new(Code::full(2));
        let d = corner_design(&full, &[2, 2], &w).unwrap();
        assert!((brute_force_separation(&d).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn separation_needs_two_points() {
        let even = Lattice::new(Code::full(1));
        let d = corner_design(&even, &[2], &Weights::equal(1)).unwrap();
        assert_eq!(d.m(), 2);
        let single = Design::from_points(
            vec![vec![0.5]],
            Weights::equal(1),
            Provenance::Points,
        )
        .unwrap();
        assert!(brute_force_separation(&single).is_err());
    }

    #[test]
    fn csv_round_trips_exactly() {
        let diag = lat(2, &["11"]);
        let d = corner_design(&diag, &[3, 3], &Weights::equal(2)).unwrap();
        let csv = d.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "x1,x2");
        for (line, row) in lines.zip(d.points()) {
            for (cell, &v) in line.split(',').zip(row) {
                let parsed: f64 = cell.parse().unwrap();
                assert_eq!(parsed.to_bits(), v.to_bits());
            }
        }
    }

    #[test]
    fn scaling_equivariance_of_distance() {
        let w = Weights::new(vec![0.3, 1.7, 0.9]).unwrap();
        let scaled = Weights::new(w.values().iter().map(|v| v * 3.5).collect()).unwrap();
        let x = [0.1, 0.9, 0.4];
        let y = [0.7, 0.2, 0.8];
        let d1 = weighted_distance(&x, &y, &w).unwrap();
        let d2 = weighted_distance(&x, &y, &scaled).unwrap();
        assert!((d2 - 3.5 * d1).abs() < 1e-12);
    }
}

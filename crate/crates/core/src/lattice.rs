//! Interleaved lattices layered on binary codes.
//!
//! A lattice here is a set of integer points sandwiched between the even
//! lattice and the full integer lattice; it is determined by the binary code
//! of its parity classes. The module exposes the lattice invariants used by
//! the search (q, r, standardness, the inner sublattice L0), an exact
//! point-count formula for boxes anchored at the origin, cheap bounds on
//! that count, and box enumeration.

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Code};

/// Default cap on how many integer points a box enumeration may emit.
pub const DEFAULT_POINT_CAP: u128 = 10_000_000;

/// Per-dimension level counts. Every entry is at least one; the search
/// algorithms additionally keep entries at two or more.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanVector(Vec<u32>);

impl SpanVector {
    pub fn new(s: Vec<u32>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidInput("span vector must be nonempty".into()));
        }
        if let Some(bad) = s.iter().find(|&&v| v == 0) {
            return Err(Error::InvalidInput(format!(
                "span entries must be positive, got {bad}"
            )));
        }
        Ok(Self(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

/// An interleaved lattice, represented by its parity-class code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    code: Code,
}

impl Lattice {
    pub fn new(code: Code) -> Self {
        Self { code }
    }

    pub fn p(&self) -> usize {
        self.code.len()
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    /// Log2 of the number of 0/1 lattice points.
    pub fn q(&self) -> usize {
        self.code.dim()
    }

    /// Number of dimensions whose unit vector lies in the lattice.
    pub fn r(&self) -> usize {
        (0..self.p()).filter(|&k| self.code.contains_unit(k)).count()
    }

    /// Standard means every dimension takes value one on some lattice point,
    /// which for the code is full support.
    pub fn is_standard(&self) -> bool {
        self.code.has_full_support()
    }

    /// Codewords supported away from every dimension whose unit vector is a
    /// codeword. Includes the zero vector.
    pub fn l0_codewords(&self) -> Result<Vec<BitVec>> {
        let p = self.p();
        let unit_mask: u64 = (0..p)
            .filter(|&k| self.code.contains_unit(k))
            .fold(0, |acc, k| acc | (1u64 << (p - 1 - k)));
        Ok(self
            .code
            .codewords()?
            .into_iter()
            .filter(|c| c.bits() & unit_mask == 0)
            .collect())
    }

    fn check_span(&self, s: &[u32]) -> Result<()> {
        if s.len() != self.p() {
            return Err(Error::InvalidInput(format!(
                "span length {} does not match dimension {}",
                s.len(),
                self.p()
            )));
        }
        if s.iter().any(|&v| v == 0) {
            return Err(Error::InvalidInput("span entries must be positive".into()));
        }
        Ok(())
    }

    /// Exact number of lattice points in the box `prod_k {0, ..., s_k - 1}`.
    ///
    /// Each lattice point decomposes uniquely into a parity codeword plus an
    /// even offset, and within one dimension the box holds `ceil(s/2)` even
    /// and `floor(s/2)` odd values, so the count is a sum over codewords of
    /// per-dimension products. Arithmetic is checked 128-bit.
    pub fn point_count(&self, s: &[u32]) -> Result<u128> {
        self.check_span(s)?;
        let q = self.q();
        if q > crate::gf2::MAX_CODEWORD_DIM {
            return Err(Error::ResourceLimit(format!(
                "point counting capped at code dimension {}, got {q}",
                crate::gf2::MAX_CODEWORD_DIM
            )));
        }
        let p = self.p();
        let mut total: u128 = 0;
        let mut overflow = false;
        self.code.for_each_codeword(|bits| {
            let mut term: u128 = 1;
            for (k, &sk) in s.iter().enumerate() {
                let odd = (bits >> (p - 1 - k)) & 1 == 1;
                let cnt = if odd { sk / 2 } else { sk / 2 + sk % 2 } as u128;
                term = match term.checked_mul(cnt) {
                    Some(t) => t,
                    None => {
                        overflow = true;
                        return;
                    }
                };
            }
            total = match total.checked_add(term) {
                Some(t) => t,
                None => {
                    overflow = true;
                    0
                }
            };
        });
        if overflow {
            return Err(Error::Overflow("point count exceeds 128 bits".into()));
        }
        Ok(total)
    }

    /// Closed-form sandwich on the point count.
    ///
    /// Both ends are integers: the power of two that survives after pulling
    /// one factor of two out of each non-unit dimension is `2^(q-r) >= 1`.
    pub fn point_count_bounds(&self, s: &[u32]) -> Result<(u128, u128)> {
        self.check_span(s)?;
        let mut lower: u128 = 1u128 << (self.q() - self.r());
        let mut upper = lower;
        for (k, &sk) in s.iter().enumerate() {
            let (lo_f, hi_f) = if self.code.contains_unit(k) {
                (sk as u128, sk as u128)
            } else {
                ((sk / 2) as u128, (sk / 2 + sk % 2) as u128)
            };
            lower = lower
                .checked_mul(lo_f)
                .ok_or_else(|| Error::Overflow("lower bound exceeds 128 bits".into()))?;
            upper = upper
                .checked_mul(hi_f)
                .ok_or_else(|| Error::Overflow("upper bound exceeds 128 bits".into()))?;
        }
        Ok((lower, upper))
    }

    /// All lattice points in the box, lexicographically sorted.
    pub fn points_in_box(&self, s: &[u32]) -> Result<Vec<Vec<u32>>> {
        self.points_in_box_capped(s, DEFAULT_POINT_CAP)
    }

    pub fn points_in_box_capped(&self, s: &[u32], cap: u128) -> Result<Vec<Vec<u32>>> {
        self.check_span(s)?;
        let m = self.point_count(s)?;
        if m > cap {
            return Err(Error::ResourceLimit(format!(
                "box holds {m} lattice points, cap is {cap}"
            )));
        }
        let p = self.p();
        let mut points: Vec<Vec<u32>> = Vec::with_capacity(m as usize);
        for word in self.code.codewords()? {
            // Per dimension the admissible values share the codeword's parity.
            let start: Vec<u32> = (0..p).map(|k| u32::from(word.get(k))).collect();
            if start.iter().zip(s).any(|(&st, &sk)| st >= sk) {
                continue;
            }
            let mut cur = start.clone();
            loop {
                points.push(cur.clone());
                let mut k = p;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    cur[k] += 2;
                    if cur[k] < s[k] {
                        break;
                    }
                    cur[k] = start[k];
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
        }
        points.sort_unstable();
        debug_assert_eq!(points.len() as u128, m);
        Ok(points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn lat(p: usize, rows: &[&str]) -> Lattice {
        let rows: Vec<BitVec> = rows.iter().map(|s| s.parse().unwrap()).collect();
        Lattice::new(Code::rref(p, &rows).unwrap())
    }

    #[test]
    fn q_and_r_examples() {
        assert_eq!(Lattice::new(Code::full(3)).q(), 3);
        assert_eq!(Lattice::new(Code::full(3)).r(), 3);
        let diag = lat(2, &["11"]);
        assert_eq!(diag.q(), 1);
        assert_eq!(diag.r(), 0);
        assert_eq!(lat(3, &["110", "011"]).q(), 2);
        assert_eq!(lat(3, &["100", "011"]).r(), 1);
    }

    #[test]
    fn l0_examples() {
        let diag = lat(2, &["11"]);
        let l0: Vec<String> = diag
            .l0_codewords()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(l0, vec!["00", "11"]);

        let full = Lattice::new(Code::full(2));
        assert_eq!(full.l0_codewords().unwrap(), vec![bv("00")]);

        let mixed = lat(3, &["100", "011"]);
        let mut l0: Vec<String> = mixed
            .l0_codewords()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        l0.sort();
        assert_eq!(l0, vec!["000", "011"]);
    }

    #[test]
    fn point_count_examples() {
        let full = Lattice::new(Code::full(3));
        assert_eq!(full.point_count(&[4, 5, 6]).unwrap(), 120);
        let diag = lat(2, &["11"]);
        assert_eq!(diag.point_count(&[3, 3]).unwrap(), 5);
        let even = Lattice::new(Code::empty(2));
        assert_eq!(even.point_count(&[3, 4]).unwrap(), 4);
    }

    #[test]
    fn point_count_bounds_examples() {
        let full = Lattice::new(Code::full(2));
        assert_eq!(full.point_count_bounds(&[3, 3]).unwrap(), (9, 9));
        let diag = lat(2, &["11"]);
        assert_eq!(diag.point_count_bounds(&[3, 3]).unwrap(), (2, 8));
        assert_eq!(diag.point_count_bounds(&[4, 4]).unwrap(), (8, 8));
        assert_eq!(diag.point_count(&[4, 4]).unwrap(), 8);
    }

    #[test]
    fn points_in_box_examples() {
        let diag = lat(2, &["11"]);
        let pts = diag.points_in_box(&[3, 3]).unwrap();
        assert_eq!(
            pts,
            vec![vec![0, 0], vec![0, 2], vec![1, 1], vec![2, 0], vec![2, 2]]
        );
        let full = Lattice::new(Code::full(2));
        assert_eq!(full.points_in_box(&[2, 2]).unwrap().len(), 4);
        let even = Lattice::new(Code::empty(2));
        assert_eq!(even.points_in_box(&[2, 2]).unwrap(), vec![vec![0, 0]]);
    }

    #[test]
    fn box_cap_is_enforced() {
        let full = Lattice::new(Code::full(2));
        let err = full.points_in_box_capped(&[100, 100], 99).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn standard_counts_for_small_dimensions() {
        let counts: Vec<usize> = (2..=5)
            .map(|p| {
                gf2::enumerate_subspaces(p)
                    .unwrap()
                    .filter(|c| Lattice::new(c.clone()).is_standard())
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![2, 6, 26, 158]);
    }

    #[test]
    fn q_r_law_over_enumeration() {
        for p in 2..=5 {
            for code in gf2::enumerate_subspaces(p).unwrap() {
                let l = Lattice::new(code);
                if !l.is_standard() {
                    continue;
                }
                let (q, r) = (l.q(), l.r());
                assert!(
                    (r == q && q == p) || (r < q && q < p),
                    "q,r law violated at p={p}, q={q}, r={r}"
                );
            }
        }
    }
}

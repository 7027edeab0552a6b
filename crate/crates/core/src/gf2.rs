//! Exact linear algebra over GF(2) on bit-packed vectors.
//!
//! Vectors of length `p <= 64` pack into one `u64`. Dimension 1 occupies the
//! most significant of the low `p` bits, so comparing packed words as
//! integers is the same as comparing bit strings lexicographically. Codes
//! (linear subspaces) are kept in reduced row echelon form with pivots
//! ordered left to right; two codes represent the same subspace exactly when
//! their contents are equal, which makes deduplication and equality trivial.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Vectors are capped at one machine word.
pub const MAX_LEN: usize = 64;
/// Largest length for which all subspaces can be streamed.
pub const MAX_ENUM_LEN: usize = 5;
/// Largest code dimension for which codewords are materialized.
pub const MAX_CODEWORD_DIM: usize = 24;
/// Largest vector length accepted by the constrained-code search.
pub const MAX_FEASIBLE_LEN: usize = 16;

/// A binary vector of fixed length `p <= 64`.
///
/// Bits above position `p` are always zero. The derived ordering compares
/// lengths first, then packed bits, which for equal lengths is lexicographic
/// order on the bit string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: u8,
    bits: u64,
}

impl BitVec {
    /// Builds a vector from packed bits, rejecting stray high bits.
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "bit-vector length must be in 1..={MAX_LEN}, got {len}"
            )));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::InvalidInput(format!(
                "bits 0x{bits:x} exceed length {len}"
            )));
        }
        Ok(Self { len: len as u8, bits })
    }

    /// The zero vector. Panics if `len` is out of range.
    pub fn zero(len: usize) -> Self {
        Self::new(len, 0).expect("valid length")
    }

    /// The unit vector with a one in dimension `k` (zero-based).
    pub fn unit(len: usize, k: usize) -> Self {
        assert!(k < len, "dimension {k} out of range for length {len}");
        Self::new(len, 1u64 << (len - 1 - k)).expect("valid length")
    }

    /// The all-ones vector.
    pub fn ones(len: usize) -> Self {
        Self::new(len, ones_mask(len)).expect("valid length")
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Value of dimension `k` (zero-based).
    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len());
        (self.bits >> (self.len() - 1 - k)) & 1 == 1
    }

    /// Dimensions (zero-based) where the vector is one, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&k| self.get(k))
    }

    pub fn xor(self, other: Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            bits: self.bits ^ other.bits,
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            write!(f, "{}", u8::from(self.get(k)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let len = s.len();
        if len == 0 || len > MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "bit string length must be in 1..={MAX_LEN}, got {len}"
            )));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "bit string may contain only 0 and 1, got {s:?}"
                    )))
                }
            }
        }
        Self::new(len, bits)
    }
}

fn ones_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Incremental reduced-row-echelon accumulator over packed rows.
///
/// Rows are stored fully reduced and sorted by descending pivot bit, so the
/// leftmost pivot column comes first.
#[derive(Clone, Debug)]
pub(crate) struct RrefBuilder {
    rows: Vec<u64>,
}

impl RrefBuilder {
    pub(crate) fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub(crate) fn from_rows(rows: impl IntoIterator<Item = u64>) -> Self {
        let mut b = Self::new();
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub(crate) fn support(&self) -> u64 {
        self.rows.iter().fold(0, |acc, r| acc | r)
    }

    /// Reduces `bits` by the current basis; zero means membership.
    pub(crate) fn reduce(&self, mut bits: u64) -> u64 {
        for &row in &self.rows {
            let pivot = 1u64 << (63 - row.leading_zeros());
            if bits & pivot != 0 {
                bits ^= row;
            }
        }
        bits
    }

    /// Adds a row; returns whether the rank grew.
    pub(crate) fn insert(&mut self, bits: u64) -> bool {
        let r = self.reduce(bits);
        if r == 0 {
            return false;
        }
        let pivot = 1u64 << (63 - r.leading_zeros());
        for row in &mut self.rows {
            if *row & pivot != 0 {
                *row ^= r;
            }
        }
        let pos = self
            .rows
            .partition_point(|row| row.leading_zeros() < r.leading_zeros());
        self.rows.insert(pos, r);
        true
    }
}

/// A binary linear code of length `p`, held in canonical reduced row
/// echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Code {
    len: u8,
    basis: Vec<BitVec>,
}

impl Code {
    /// Canonicalizes the span of `rows` into reduced row echelon form.
    pub fn rref(len: usize, rows: &[BitVec]) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "code length must be in 1..={MAX_LEN}, got {len}"
            )));
        }
        for row in rows {
            if row.len() != len {
                return Err(Error::InvalidInput(format!(
                    "mixed row lengths: expected {len}, got {}",
                    row.len()
                )));
            }
        }
        let builder = RrefBuilder::from_rows(rows.iter().map(BitVec::bits));
        Ok(Self::from_builder(len, &builder))
    }

    pub(crate) fn from_builder(len: usize, builder: &RrefBuilder) -> Self {
        let basis = builder
            .rows()
            .iter()
            .map(|&bits| BitVec::new(len, bits).expect("reduced rows stay in range"))
            .collect();
        Self {
            len: len as u8,
            basis,
        }
    }

    /// The zero code.
    pub fn empty(len: usize) -> Self {
        Self {
            len: len as u8,
            basis: Vec::new(),
        }
    }

    /// The full space GF(2)^p.
    pub fn full(len: usize) -> Self {
        let basis = (0..len).map(|k| BitVec::unit(len, k)).collect();
        Self {
            len: len as u8,
            basis,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub(crate) fn reduce_bits(&self, mut bits: u64) -> u64 {
        for row in &self.basis {
            let pivot = 1u64 << (63 - row.bits().leading_zeros());
            if bits & pivot != 0 {
                bits ^= row.bits();
            }
        }
        bits
    }

    /// Membership test: does `v` lie in the span of the basis?
    pub fn member(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "length mismatch: code has length {}, vector {}",
                self.len(),
                v.len()
            )));
        }
        Ok(self.reduce_bits(v.bits()) == 0)
    }

    /// OR of all codewords, which equals the OR of the basis rows.
    pub fn support_bits(&self) -> u64 {
        self.basis.iter().fold(0, |acc, r| acc | r.bits())
    }

    /// Whether every dimension is touched by some codeword.
    pub fn has_full_support(&self) -> bool {
        self.support_bits() == ones_mask(self.len())
    }

    /// Whether the unit vector of dimension `k` (zero-based) is a codeword.
    pub fn contains_unit(&self, k: usize) -> bool {
        self.reduce_bits(1u64 << (self.len() - 1 - k)) == 0
    }

    /// All `2^dim` codewords, each exactly once.
    ///
    /// The order is fixed: coefficient vectors over the basis rows are
    /// enumerated lexicographically with basis row 0 most significant.
    pub fn codewords(&self) -> Result<Vec<BitVec>> {
        let q = self.dim();
        if q > MAX_CODEWORD_DIM {
            return Err(Error::ResourceLimit(format!(
                "codeword enumeration capped at dimension {MAX_CODEWORD_DIM}, got {q}"
            )));
        }
        let mut out = Vec::with_capacity(1usize << q);
        for mask in 0u64..(1u64 << q) {
            let mut bits = 0u64;
            for (j, row) in self.basis.iter().enumerate() {
                if (mask >> (q - 1 - j)) & 1 == 1 {
                    bits ^= row.bits();
                }
            }
            out.push(BitVec::new(self.len(), bits).expect("codeword in range"));
        }
        Ok(out)
    }

    /// Iterates codeword bit patterns without materializing them.
    ///
    /// Visits all `2^dim` codewords in Gray-code order, which is cheap and
    /// fine wherever the visiting order does not matter.
    pub(crate) fn for_each_codeword(&self, mut f: impl FnMut(u64)) {
        let q = self.dim();
        let mut cur = 0u64;
        f(cur);
        for i in 1u64..(1u64 << q) {
            let j = i.trailing_zeros() as usize;
            cur ^= self.basis[j].bits();
            f(cur);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CodeRepr {
    p: usize,
    q: usize,
    basis: Vec<String>,
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CodeRepr {
            p: self.len(),
            q: self.dim(),
            basis: self.basis.iter().map(|b| b.to_string()).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CodeRepr::deserialize(deserializer)?;
        let rows: Vec<BitVec> = repr
            .basis
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        for row in &rows {
            if row.len() != repr.p {
                return Err(D::Error::custom("basis row length does not match p"));
            }
        }
        let code = Code::rref(repr.p, &rows).map_err(D::Error::custom)?;
        if code.dim() != repr.q {
            return Err(D::Error::custom("stated q does not match basis rank"));
        }
        if code.basis.iter().map(|b| b.to_string()).collect_vec() != repr.basis {
            return Err(D::Error::custom("basis is not in canonical echelon form"));
        }
        Ok(code)
    }
}

/// Streams every linear subspace of GF(2)^p exactly once, in canonical form.
///
/// Subspaces are produced by dimension (ascending), then by pivot-column set
/// (lexicographic), then by the free entries read as a counter. The total
/// count is the Galois number G_p.
pub fn enumerate_subspaces(p: usize) -> Result<Box<dyn Iterator<Item = Code>>> {
    if p == 0 || p > MAX_ENUM_LEN {
        return Err(Error::UnsupportedDimension {
            p,
            detail: "subspace enumeration supports lengths 1..=5",
        });
    }
    let iter = (0..=p).flat_map(move |q| {
        (0..p).combinations(q).flat_map(move |pivots| {
            // Free slots sit to the right of each row's pivot, outside pivot
            // columns; enumerate every 0/1 assignment of those slots.
            let mut slots: Vec<(usize, usize)> = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in (pc + 1)..p {
                    if !pivots.contains(&c) {
                        slots.push((i, c));
                    }
                }
            }
            let pivots = pivots.clone();
            (0u64..(1u64 << slots.len())).map(move |free| {
                let mut rows = vec![0u64; pivots.len()];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i] |= 1u64 << (p - 1 - pc);
                }
                for (t, &(i, c)) in slots.iter().enumerate() {
                    if (free >> t) & 1 == 1 {
                        rows[i] |= 1u64 << (p - 1 - c);
                    }
                }
                let basis = rows
                    .into_iter()
                    .map(|bits| BitVec::new(p, bits).expect("constructed in range"))
                    .collect();
                Code { len: p as u8, basis }
            })
        })
    });
    Ok(Box::new(iter))
}

/// Searches for a code of dimension exactly `q` that contains every
/// `required` vector, contains no `forbidden` vector, and (if asked) has
/// full support. Returns `None` when no such code exists.
///
/// The search is a depth-first basis extension over candidate vectors in
/// lexicographic order, so identical inputs always yield the same code.
pub fn feasible_code(
    p: usize,
    q: usize,
    required: &[BitVec],
    forbidden: &[BitVec],
    full_support: bool,
) -> Result<Option<Code>> {
    if p == 0 || p > MAX_FEASIBLE_LEN {
        return Err(Error::ResourceLimit(format!(
            "constrained-code search capped at length {MAX_FEASIBLE_LEN}, got {p}"
        )));
    }
    if q > p {
        return Err(Error::InvalidInput(format!(
            "dimension {q} exceeds length {p}"
        )));
    }
    for v in required.iter().chain(forbidden) {
        if v.len() != p {
            return Err(Error::InvalidInput(format!(
                "constraint vector length {} does not match p = {p}",
                v.len()
            )));
        }
    }
    let mut base = RrefBuilder::from_rows(required.iter().map(BitVec::bits));
    if base.dim() > q {
        return Ok(None);
    }
    let forbidden_bits: Vec<u64> = forbidden.iter().map(BitVec::bits).collect();
    if forbidden_bits.iter().any(|&f| base.reduce(f) == 0) {
        return Ok(None);
    }
    let found = extend_basis(p, q, &mut base, &forbidden_bits, full_support, 0);
    Ok(if found {
        Some(Code::from_builder(p, &base))
    } else {
        None
    })
}

fn extend_basis(
    p: usize,
    q: usize,
    basis: &mut RrefBuilder,
    forbidden: &[u64],
    full_support: bool,
    last: u64,
) -> bool {
    if basis.dim() == q {
        return !full_support || basis.support() == ones_mask(p);
    }
    // A candidate v keeps the span clean iff its reduction is nonzero and
    // differs from every forbidden vector's reduction.
    let mut blocked: Vec<u64> = forbidden.iter().map(|&f| basis.reduce(f)).collect();
    blocked.sort_unstable();
    let mut candidates: Vec<u64> = Vec::new();
    for v in (last + 1)..(1u64 << p) {
        let red = basis.reduce(v);
        if red != 0 && blocked.binary_search(&red).is_err() {
            candidates.push(v);
        }
    }
    let remaining = q - basis.dim();
    if candidates.len() < remaining {
        return false;
    }
    // Suffix supports let us bail once the all-ones target is unreachable.
    let mut suffix_support = vec![0u64; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        suffix_support[i] = suffix_support[i + 1] | candidates[i];
    }
    for (i, &v) in candidates.iter().enumerate() {
        if candidates.len() - i < remaining {
            return false;
        }
        if full_support && basis.support() | suffix_support[i] != ones_mask(p) {
            return false;
        }
        let snapshot = basis.clone();
        basis.insert(v);
        if extend_basis(p, q, basis, forbidden, full_support, v) {
            return true;
        }
        *basis = snapshot;
    }
    false
}

/// Splits a code into an index-2 subcode and a coset representative.
///
/// `order` must list every nonzero codeword exactly once. A partial linear
/// functional is grown along `order`: each codeword whose value is still
/// undetermined is assigned to the coset, and values forced by linearity are
/// left alone. The kernel of the resulting functional is the subcode.
pub fn halve_code(code: &Code, order: &[BitVec]) -> Result<(Code, BitVec)> {
    let q = code.dim();
    if q == 0 {
        return Err(Error::InvalidInput(
            "cannot halve a zero-dimensional code".into(),
        ));
    }
    let expected = (1usize << q) - 1;
    if order.len() != expected {
        return Err(Error::InvalidInput(format!(
            "order must list all {expected} nonzero codewords, got {}",
            order.len()
        )));
    }
    let mut seen: Vec<u64> = order.iter().map(BitVec::bits).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != expected || seen.first() == Some(&0) {
        return Err(Error::InvalidInput(
            "order contains duplicates or the zero vector".into(),
        ));
    }
    for v in order {
        if v.len() != code.len() || !code.member(v)? {
            return Err(Error::InvalidInput(format!(
                "order entry {v} is not a codeword"
            )));
        }
    }
    // Augment each row with a value column in bit 0; the functional value of
    // a codeword is the reduction's bit 0 once the reduction is determined.
    let mut functional = RrefBuilder::new();
    let mut coset_rep: Option<BitVec> = None;
    for v in order {
        let augmented = v.bits() << 1;
        let red = functional.reduce(augmented);
        match red {
            0 => {}
            1 => {
                coset_rep.get_or_insert(*v);
            }
            _ => {
                functional.insert(red | 1);
                coset_rep.get_or_insert(*v);
            }
        }
    }
    let coset_rep = coset_rep.expect("first codeword is always assigned to the coset");
    let mut sub_rows: Vec<BitVec> = Vec::with_capacity((1usize << q) / 2 - 1);
    for v in order {
        if functional.reduce(v.bits() << 1) == 0 {
            sub_rows.push(*v);
        }
    }
    let sub = Code::rref(code.len(), &sub_rows)?;
    debug_assert_eq!(sub.dim(), q - 1);
    Ok((sub, coset_rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn bitvec_lex_order_matches_string_order() {
        let mut v = vec![bv("100"), bv("001"), bv("011"), bv("010")];
        v.sort();
        let strings: Vec<String> = v.iter().map(|b| b.to_string()).collect();
        assert_eq!(strings, vec!["001", "010", "011", "100"]);
    }

    #[test]
    fn rref_canonicalizes_span() {
        let code = Code::rref(3, &[bv("110"), bv("011"), bv("101")]).unwrap();
        assert_eq!(code.dim(), 2);
        assert_eq!(code.basis(), &[bv("110"), bv("011")]);
    }

    #[test]
    fn rref_empty_and_duplicate_rows() {
        let empty = Code::rref(3, &[]).unwrap();
        assert_eq!(empty.dim(), 0);
        let dup = Code::rref(3, &[bv("111"), bv("111")]).unwrap();
        assert_eq!(dup.dim(), 1);
        assert_eq!(dup.basis(), &[bv("111")]);
    }

    #[test]
    fn rref_rejects_mixed_lengths() {
        let err = Code::rref(3, &[bv("110"), bv("01")]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn member_examples() {
        let code = Code::rref(3, &[bv("110"), bv("011")]).unwrap();
        assert!(code.member(&bv("101")).unwrap());
        assert!(!code.member(&bv("100")).unwrap());
        assert!(code.member(&bv("000")).unwrap());
        assert!(code.member(&bv("00")).is_err());
    }

    #[test]
    fn codewords_of_small_codes() {
        let code = Code::rref(2, &[bv("11")]).unwrap();
        assert_eq!(code.codewords().unwrap(), vec![bv("00"), bv("11")]);
        let zero = Code::empty(2);
        assert_eq!(zero.codewords().unwrap(), vec![bv("00")]);
        let two = Code::rref(3, &[bv("110"), bv("011")]).unwrap();
        let words: Vec<String> = two
            .codewords()
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["000", "011", "110", "101"]);
    }

    #[test]
    fn subspace_counts_match_galois_numbers() {
        assert_eq!(enumerate_subspaces(1).unwrap().count(), 2);
        assert_eq!(enumerate_subspaces(2).unwrap().count(), 5);
        assert_eq!(enumerate_subspaces(3).unwrap().count(), 16);
        assert_eq!(enumerate_subspaces(4).unwrap().count(), 67);
        assert_eq!(enumerate_subspaces(5).unwrap().count(), 374);
        assert!(enumerate_subspaces(6).is_err());
        assert!(enumerate_subspaces(0).is_err());
    }

    #[test]
    fn subspaces_are_distinct_and_canonical() {
        let all: Vec<Code> = enumerate_subspaces(4).unwrap().collect();
        let mut dedup = all.clone();
        dedup.sort_by_key(|c| c.basis().iter().map(|b| b.bits()).collect::<Vec<_>>());
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        for code in &all {
            let re = Code::rref(4, code.basis()).unwrap();
            assert_eq!(&re, code);
        }
    }

    #[test]
    fn feasible_code_examples() {
        let forced = feasible_code(3, 1, &[bv("111")], &[], true).unwrap().unwrap();
        assert_eq!(forced.basis(), &[bv("111")]);

        let diag = feasible_code(2, 1, &[], &[bv("10"), bv("01")], true)
            .unwrap()
            .unwrap();
        assert_eq!(diag.basis(), &[bv("11")]);

        assert!(feasible_code(2, 2, &[], &[bv("11")], false).unwrap().is_none());
    }

    #[test]
    fn feasible_code_contradictions_return_none() {
        // Required span exceeds q.
        assert!(feasible_code(3, 1, &[bv("100"), bv("010")], &[], false)
            .unwrap()
            .is_none());
        // Forbidden vector inside the required span.
        assert!(
            feasible_code(3, 2, &[bv("110"), bv("011")], &[bv("101")], false)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn halve_code_examples() {
        let (sub, rep) = halve_code(&Code::rref(2, &[bv("11")]).unwrap(), &[bv("11")]).unwrap();
        assert_eq!(sub.dim(), 0);
        assert_eq!(rep, bv("11"));

        let full = Code::full(2);
        let (sub, rep) = halve_code(&full, &[bv("01"), bv("10"), bv("11")]).unwrap();
        assert_eq!(sub.basis(), &[bv("11")]);
        assert_eq!(rep, bv("01"));

        let code = Code::rref(3, &[bv("111"), bv("110")]).unwrap();
        let (sub, rep) = halve_code(&code, &[bv("110"), bv("001"), bv("111")]).unwrap();
        assert_eq!(sub.basis(), &[bv("111")]);
        assert_eq!(rep, bv("110"));
    }

    #[test]
    fn halve_code_validates_order() {
        let code = Code::rref(2, &[bv("11")]).unwrap();
        assert!(halve_code(&code, &[]).is_err());
        assert!(halve_code(&code, &[bv("10")]).is_err());
        let full = Code::full(2);
        assert!(halve_code(&full, &[bv("01"), bv("01"), bv("11")]).is_err());
    }

    #[test]
    fn code_json_round_trip() {
        let code = Code::rref(3, &[bv("110"), bv("011")]).unwrap();
        let json = serde_json::to_string(&code).unwrap();
        assert_eq!(json, r#"{"p":3,"q":2,"basis":["110","011"]}"#);
        let back: Code = serde_json::from_str(&json).unwrap();
        assert_eq!(back, code);
        let bad: std::result::Result<Code, _> =
            serde_json::from_str(r#"{"p":3,"q":1,"basis":["110","011"]}"#);
        assert!(bad.is_err());
    }
}

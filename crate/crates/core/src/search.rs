//! The three design-construction algorithms and their dispatcher.
//!
//! Algorithm 1 walks every standard lattice at low dimension. Algorithm 2
//! walks (span, q, r) combinations and synthesizes one promising lattice per
//! combination through a greedy exclusion walk backed by the constrained
//! code search. Algorithm 3 handles high dimension by solving the eight
//! heaviest dimensions with Algorithm 2 and then stacking one two-level
//! dimension at a time via index-2 code halving.
//!
//! All pruning comparisons run on squared distances, the incumbent starts at
//! zero, and updates require strict improvement, so outcomes are fully
//! deterministic including ties.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::time::{Duration, Instant};

use crate::design::{self, Weights};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVec, Code};
use crate::lattice::{Lattice, SpanVector};

/// Which algorithm to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algorithm {
    /// Dispatch on dimension: 1 for p <= 5, 2 for 6 <= p <= 8, 3 for p >= 9.
    Auto,
    One,
    Two,
    Three,
}

/// Which procedure actually produced an outcome.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgorithmId {
    One,
    Two,
    Three,
    Exhaustive,
}

impl AlgorithmId {
    pub fn as_u8(self) -> u8 {
        match self {
            AlgorithmId::One => 1,
            AlgorithmId::Two => 2,
            AlgorithmId::Three => 3,
            AlgorithmId::Exhaustive => 0,
        }
    }
}

/// A design-construction request.
#[derive(Clone, Debug)]
pub struct SearchRequest {
    pub p: usize,
    pub n: u64,
    pub w: Weights,
    pub algorithm: Algorithm,
    pub variant: design::Variant,
    /// Optional wall-clock guard for Algorithm 2 beyond its comfort zone.
    pub budget: Option<Duration>,
}

impl SearchRequest {
    pub fn new(p: usize, n: u64, w: Weights) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidInput(format!(
                "searches need at least two dimensions, got {p}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "searches need at least two points, got {n}"
            )));
        }
        if w.len() != p {
            return Err(Error::InvalidInput(format!(
                "weight vector length {} does not match p = {p}",
                w.len()
            )));
        }
        Ok(Self {
            p,
            n,
            w,
            algorithm: Algorithm::Auto,
            variant: design::Variant::Corner,
            budget: None,
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    pub lattices_tried: u64,
    pub spans_tried: u64,
    pub elapsed: Duration,
}

/// The best lattice, span vector, and separation distance found.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub lattice: Lattice,
    pub span: SpanVector,
    pub rho: f64,
    pub m: u64,
    pub algorithm: AlgorithmId,
    pub stats: SearchStats,
}

/// Runs the request, dispatching on dimension when the algorithm is `Auto`.
pub fn search(req: &SearchRequest) -> Result<SearchOutcome> {
    match req.algorithm {
        Algorithm::One => algorithm1(req),
        Algorithm::Two => algorithm2(req),
        Algorithm::Three => algorithm3(req),
        Algorithm::Auto => {
            if req.p <= 5 {
                algorithm1(req)
            } else if req.p <= 8 {
                algorithm2(req)
            } else {
                algorithm3(req)
            }
        }
    }
}

struct Incumbent {
    lattice: Lattice,
    span: Vec<u32>,
    rho_sq: f64,
    m: u128,
}

fn finish(
    best: Option<Incumbent>,
    algorithm: AlgorithmId,
    stats: SearchStats,
) -> Result<SearchOutcome> {
    let best = best.ok_or_else(|| {
        Error::ResourceLimit("search ended before any candidate was evaluated".into())
    })?;
    let m = u64::try_from(best.m)
        .map_err(|_| Error::Overflow("design size exceeds 64 bits".into()))?;
    Ok(SearchOutcome {
        lattice: best.lattice,
        span: SpanVector::new(best.span)?,
        rho: best.rho_sq.sqrt(),
        m,
        algorithm,
        stats,
    })
}

fn sq(x: f64) -> f64 {
    x * x
}

/// Initial last-coordinate span, shared shape for both span loops.
/// `prefix_product` is the product of the per-dimension factors for
/// dimensions 1..p-1 and must be positive.
fn init_sp(p: usize, q: usize, n: u64, prefix_product: u128) -> u32 {
    // ceil(2^(p-q-1) n / prefix), with the exponent folded into whichever
    // side keeps everything integral.
    let (num, den) = if p > q {
        ((n as u128) << (p - q - 1), prefix_product)
    } else {
        (n as u128, 2 * prefix_product)
    };
    let ceil = num.div_ceil(den);
    let sp = (2 * ceil).saturating_sub(1);
    sp.clamp(2, u32::MAX as u128) as u32
}

fn even_ceil_factor(sk: u32) -> u128 {
    2 * (sk as u128).div_ceil(2)
}

fn init_sp_alg1(lat: &Lattice, s: &[u32], q: usize, n: u64) -> u32 {
    let p = s.len();
    let mut prod: u128 = 1;
    for (k, &sk) in s.iter().enumerate().take(p - 1) {
        let f = if lat.code().contains_unit(k) {
            sk as u128
        } else {
            even_ceil_factor(sk)
        };
        prod = prod.saturating_mul(f);
    }
    init_sp(p, q, n, prod)
}

fn init_sp_alg2(s: &[u32], q: usize, n: u64) -> u32 {
    let p = s.len();
    let prod: u128 = s[..p - 1]
        .iter()
        .fold(1u128, |acc, &sk| acc.saturating_mul(even_ceil_factor(sk)));
    init_sp(p, q, n, prod)
}

/// Smallest last-coordinate value z >= 2 making the box hold at least n
/// lattice points. The count is linear in each parity class of z, so two
/// evaluations pin the whole line.
fn minimal_sp_for(lat: &Lattice, s: &[u32], n: u64) -> Result<u32> {
    let p = s.len();
    let mut probe = s.to_vec();
    probe[p - 1] = 2;
    let m2 = lat.point_count(&probe)?;
    if m2 >= n as u128 {
        return Ok(2);
    }
    probe[p - 1] = 3;
    let m3 = lat.point_count(&probe)?;
    let a = m3 - m2; // even-parity class weight
    let b = 2 * m2 - m3; // odd-parity class weight
    let n = n as u128;
    if a + b == 0 {
        return Err(Error::InvalidInput(
            "degenerate lattice: box count cannot grow".into(),
        ));
    }
    let t_even = n.div_ceil(a + b);
    let z_even = 2 * t_even;
    let z_odd = if a >= n {
        u128::MAX // z = 1 would suffice but spans stay >= 2
    } else {
        let t = (n - a).div_ceil(a + b).max(1);
        2 * t + 1
    };
    let z = z_even.min(z_odd).max(2);
    u32::try_from(z).map_err(|_| Error::Overflow("span component exceeds 32 bits".into()))
}

/// Advances the span odometer one step.
///
/// Finds the largest j with s_j > 2 and the largest k < j whose increment
/// could still beat the incumbent according to `may_improve`; bumps s_k,
/// resets everything after it to 2, and recomputes the last coordinate via
/// `recompute_sp`. Returns false when the walk for this context is over.
fn advance_span(
    s: &mut [u32],
    may_improve: impl Fn(usize, u32) -> bool,
    recompute_sp: impl Fn(&[u32]) -> u32,
) -> bool {
    let p = s.len();
    let Some(j) = (0..p).rev().find(|&j| s[j] > 2) else {
        return false;
    };
    if j == 0 {
        return false;
    }
    let Some(k) = (0..j).rev().find(|&k| may_improve(k, s[k])) else {
        return false;
    };
    s[k] += 1;
    for v in s.iter_mut().take(p - 1).skip(k + 1) {
        *v = 2;
    }
    s[p - 1] = recompute_sp(s);
    true
}

/// One odometer step of the low-dimension walk, exposed for tests.
pub fn next_span_alg1(
    lat: &Lattice,
    s: &SpanVector,
    w: &Weights,
    n: u64,
    rho_incumbent: f64,
) -> Result<Option<SpanVector>> {
    let q = lat.q();
    let rho_sq = sq(rho_incumbent);
    let mut v = s.values().to_vec();
    let wv = w.values().to_vec();
    let unit: Vec<bool> = (0..lat.p()).map(|k| lat.code().contains_unit(k)).collect();
    let advanced = advance_span(
        &mut v,
        |k, sk| {
            sq(wv[k] / sk as f64) > rho_sq || (!unit[k] && sq(2.0 * wv[k] / sk as f64) > rho_sq)
        },
        |s| init_sp_alg1(lat, s, q, n),
    );
    Ok(if advanced { Some(SpanVector::new(v)?) } else { None })
}

/// One odometer step of the per-q walk, exposed for tests.
pub fn next_span_alg2(
    q: usize,
    s: &SpanVector,
    w: &Weights,
    n: u64,
    rho_incumbent: f64,
) -> Result<Option<SpanVector>> {
    let rho_sq = sq(rho_incumbent);
    let mut v = s.values().to_vec();
    let wv = w.values().to_vec();
    let advanced = advance_span(
        &mut v,
        |k, sk| sq(2.0 * wv[k] / sk as f64) > rho_sq,
        |s| init_sp_alg2(s, q, n),
    );
    Ok(if advanced { Some(SpanVector::new(v)?) } else { None })
}

/// Exhaustive search over every standard lattice; exact for p <= 5.
pub fn algorithm1(req: &SearchRequest) -> Result<SearchOutcome> {
    let started = Instant::now();
    let p = req.p;
    if !(2..=gf2::MAX_ENUM_LEN).contains(&p) {
        return Err(Error::UnsupportedDimension {
            p,
            detail: "algorithm 1 enumerates lattices only for 2 <= p <= 5",
        });
    }
    let n = req.n;
    let wv = req.w.values().to_vec();
    let mut best: Option<Incumbent> = None;
    let mut rho_sq_b = 0.0f64;
    let mut stats = SearchStats::default();

    for code in gf2::enumerate_subspaces(p)? {
        let lat = Lattice::new(code);
        if !lat.is_standard() {
            continue;
        }
        stats.lattices_tried += 1;
        let q = lat.q();
        let unit: Vec<bool> = (0..p).map(|k| lat.code().contains_unit(k)).collect();
        let mut s = vec![2u32; p];
        s[p - 1] = init_sp_alg1(&lat, &s, q, n);
        loop {
            let mut m = lat.point_count(&s)?;
            if m < n as u128 {
                s[p - 1] = minimal_sp_for(&lat, &s, n)?.max(s[p - 1]);
                m = lat.point_count(&s)?;
            }
            stats.spans_tried += 1;
            let rho_sq = design::rho_formula_sq(&lat, &s, &req.w)?;
            if rho_sq > rho_sq_b {
                rho_sq_b = rho_sq;
                best = Some(Incumbent {
                    lattice: lat.clone(),
                    span: s.clone(),
                    rho_sq,
                    m,
                });
            }
            let advanced = advance_span(
                &mut s,
                |k, sk| {
                    sq(wv[k] / sk as f64) > rho_sq_b
                        || (!unit[k] && sq(2.0 * wv[k] / sk as f64) > rho_sq_b)
                },
                |s| init_sp_alg1(&lat, s, q, n),
            );
            if !advanced {
                break;
            }
        }
    }
    stats.elapsed = started.elapsed();
    finish(best, AlgorithmId::One, stats)
}

/// Cache of constrained-code feasibility answers keyed by the exact
/// constraint sets; the walks below revisit near-identical queries often.
#[derive(Default)]
struct FeasCache {
    map: HashMap<(usize, bool, Vec<u64>, Vec<u64>), Option<Code>>,
}

impl FeasCache {
    fn query(
        &mut self,
        p: usize,
        q: usize,
        required: &[u64],
        forbidden: &[u64],
        full_support: bool,
    ) -> Result<Option<Code>> {
        let mut req_key = required.to_vec();
        req_key.sort_unstable();
        let mut forb_key = forbidden.to_vec();
        forb_key.sort_unstable();
        if let Some(hit) = self.map.get(&(q, full_support, req_key.clone(), forb_key.clone())) {
            return Ok(hit.clone());
        }
        let required: Vec<BitVec> = required
            .iter()
            .map(|&b| BitVec::new(p, b))
            .collect::<Result<_>>()?;
        let forbidden: Vec<BitVec> = forbidden
            .iter()
            .map(|&b| BitVec::new(p, b))
            .collect::<Result<_>>()?;
        let answer = gf2::feasible_code(p, q, &required, &forbidden, full_support)?;
        self.map
            .insert((q, full_support, req_key, forb_key), answer.clone());
        Ok(answer)
    }
}

/// Streams the 0/1 vectors supported on `allowed` dimensions in increasing
/// order of squared scaled distance, ties broken by bit pattern.
///
/// Subsets are generated lazily: popping a subset pushes the variant with
/// its largest member shifted up and the variant extended by the next
/// member, which visits every subset exactly once.
struct SubsetStream {
    p: usize,
    ranked: Vec<(usize, f64)>,
    heap: BinaryHeap<Reverse<(OrderedF64, u64, u64)>>,
}

#[derive(PartialEq, PartialOrd)]
struct OrderedF64(f64);

impl Eq for OrderedF64 {}

#[allow(clippy::derive_ord_xor_partial_ord)]
impl Ord for OrderedF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl SubsetStream {
    fn new(p: usize, allowed: &[usize], step_sq: &[f64]) -> Self {
        let mut ranked: Vec<(usize, f64)> = allowed.iter().map(|&k| (k, step_sq[k])).collect();
        ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut heap = BinaryHeap::new();
        if !ranked.is_empty() {
            heap.push(Self::item(p, &ranked, 1));
        }
        Self { p, ranked, heap }
    }

    fn item(p: usize, ranked: &[(usize, f64)], mask: u64) -> Reverse<(OrderedF64, u64, u64)> {
        let mut d_sq = 0.0;
        let mut bits = 0u64;
        for (i, &(k, cost)) in ranked.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                d_sq += cost;
                bits |= 1u64 << (p - 1 - k);
            }
        }
        Reverse((OrderedF64(d_sq), bits, mask))
    }

    /// Next subset of size >= 2 as (packed bits, squared distance).
    fn next(&mut self) -> Option<(u64, f64)> {
        while let Some(Reverse((OrderedF64(d_sq), bits, mask))) = self.heap.pop() {
            let top = 63 - mask.leading_zeros() as usize;
            if top + 1 < self.ranked.len() {
                let shifted = (mask ^ (1u64 << top)) | (1u64 << (top + 1));
                self.heap.push(Self::item(self.p, &self.ranked, shifted));
                self.heap.push(Self::item(self.p, &self.ranked, mask | (1u64 << (top + 1))));
            }
            if mask.count_ones() >= 2 {
                return Some((bits, d_sq));
            }
        }
        None
    }
}

/// Ranks dimensions by the scaled distance of their unit vectors,
/// descending, ties by dimension index.
fn rank_units(step_sq: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..step_sq.len()).collect();
    idx.sort_by(|&a, &b| step_sq[b].total_cmp(&step_sq[a]).then(a.cmp(&b)));
    idx
}

fn unit_bits(p: usize, k: usize) -> u64 {
    1u64 << (p - 1 - k)
}

fn best_lattice_impl(
    p: usize,
    s: &[u32],
    q: usize,
    r: usize,
    w: &Weights,
    rho_sq_incumbent: f64,
    cache: &mut FeasCache,
) -> Result<Option<Lattice>> {
    let lawful = (q == p && r == p) || (r < q && q < p);
    if !lawful {
        return Err(Error::InvalidInput(format!(
            "no lattice has q = {q} and r = {r} at dimension {p}"
        )));
    }
    let wv = w.values();
    let step_sq: Vec<f64> = (0..p).map(|k| sq(wv[k] / (s[k] - 1) as f64)).collect();
    let ranked = rank_units(&step_sq);
    if r >= 1 && step_sq[ranked[r - 1]] <= rho_sq_incumbent {
        return Ok(None);
    }
    let required: Vec<u64> = ranked[..r].iter().map(|&k| unit_bits(p, k)).collect();
    let mut forbidden: Vec<u64> = ranked[r..].iter().map(|&k| unit_bits(p, k)).collect();
    let mut span_builder = gf2::RrefBuilder::from_rows(required.iter().copied());
    if cache
        .query(p, q, span_builder.rows(), &forbidden, true)?
        .is_none()
    {
        return Ok(None);
    }
    // Walk candidate inner vectors from nearest to farthest, excluding each
    // one while some valid code still exists; a vector joins the code only
    // when every remaining valid code already contains it.
    let allowed: Vec<usize> = (0..p).filter(|k| !ranked[..r].contains(k)).collect();
    let mut stream = SubsetStream::new(p, &allowed, &step_sq);
    while span_builder.dim() < q {
        let Some((bits, _)) = stream.next() else {
            break;
        };
        forbidden.push(bits);
        if cache
            .query(p, q, span_builder.rows(), &forbidden, true)?
            .is_some()
        {
            continue;
        }
        forbidden.pop();
        span_builder.insert(bits);
    }
    let found = cache.query(p, q, span_builder.rows(), &forbidden, true)?;
    Ok(found.map(Lattice::new))
}

/// Builds the most promising lattice for a (span, q, r) combination, or
/// returns `None` when the combination is inadmissible against the
/// incumbent or no code satisfies the constraints at all.
pub fn best_lattice_for(
    s: &SpanVector,
    q: usize,
    r: usize,
    w: &Weights,
    rho_incumbent: f64,
) -> Result<Option<Lattice>> {
    let p = s.len();
    if w.len() != p {
        return Err(Error::InvalidInput("weight length must match span".into()));
    }
    if s.values().iter().any(|&v| v < 2) {
        return Err(Error::InvalidInput("spans must be at least 2".into()));
    }
    let mut cache = FeasCache::default();
    best_lattice_impl(p, s.values(), q, r, w, sq(rho_incumbent), &mut cache)
}

/// Nonzero 0/1 vectors within squared distance `rho_sq` of the origin after
/// scaling into the cube, in ascending bit order.
fn vectors_within(p: usize, step_sq: &[f64], rho_sq: f64) -> Vec<u64> {
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << p) {
        let mut d = 0.0;
        let mut rest = bits;
        while rest != 0 {
            let pos = rest.trailing_zeros() as usize;
            d += step_sq[p - 1 - pos];
            rest &= rest - 1;
        }
        if d <= rho_sq {
            out.push(bits);
        }
    }
    out
}

/// Per-(s, q, r) search that synthesizes one candidate lattice at a time;
/// exact in practice for moderate dimensions and the workhorse behind
/// Algorithm 3's base case.
pub fn algorithm2(req: &SearchRequest) -> Result<SearchOutcome> {
    let started = Instant::now();
    let p = req.p;
    if p < 2 || p > gf2::MAX_FEASIBLE_LEN {
        return Err(Error::UnsupportedDimension {
            p,
            detail: "algorithm 2 supports 2 <= p <= 16",
        });
    }
    let n = req.n;
    let wv = req.w.values().to_vec();
    let mut best: Option<Incumbent> = None;
    let mut rho_sq_b = 0.0f64;
    let mut stats = SearchStats::default();
    let mut cache = FeasCache::default();
    let mut out_of_time = false;

    'qs: for q in (1..=p).rev() {
        let mut s = vec![2u32; p];
        s[p - 1] = init_sp_alg2(&s, q, n);
        'spans: loop {
            if let Some(budget) = req.budget {
                if started.elapsed() > budget {
                    out_of_time = true;
                    break 'qs;
                }
            }
            stats.spans_tried += 1;
            // Existence gate, then the r sweep; a too-small box bumps the
            // last span coordinate and retries the gate.
            'feasibility: loop {
                let step_sq: Vec<f64> =
                    (0..p).map(|k| sq(wv[k] / (s[k] - 1) as f64)).collect();
                let near = vectors_within(p, &step_sq, rho_sq_b);
                if cache.query(p, q, &[], &near, true)?.is_none() {
                    break 'feasibility;
                }
                let ranked = rank_units(&step_sq);
                let r_candidates: Vec<usize> = if q == p {
                    vec![p]
                } else {
                    (0..q).rev().collect()
                };
                let mut bumped = false;
                for r in r_candidates {
                    if r >= 1 && step_sq[ranked[r - 1]] <= rho_sq_b {
                        continue;
                    }
                    let Some(lat) = best_lattice_impl(p, &s, q, r, &req.w, rho_sq_b, &mut cache)?
                    else {
                        continue;
                    };
                    stats.lattices_tried += 1;
                    let m = lat.point_count(&s)?;
                    if m < n as u128 {
                        s[p - 1] += 1;
                        bumped = true;
                        break;
                    }
                    let rho_sq = design::rho_formula_sq(&lat, &s, &req.w)?;
                    if rho_sq > rho_sq_b {
                        rho_sq_b = rho_sq;
                        best = Some(Incumbent {
                            lattice: lat,
                            span: s.clone(),
                            rho_sq,
                            m,
                        });
                    }
                }
                if !bumped {
                    break 'feasibility;
                }
            }
            let advanced = advance_span(
                &mut s,
                |k, sk| sq(2.0 * wv[k] / sk as f64) > rho_sq_b,
                |s| init_sp_alg2(s, q, n),
            );
            if !advanced {
                break 'spans;
            }
        }
    }
    stats.elapsed = started.elapsed();
    if out_of_time && best.is_none() {
        return Err(Error::ResourceLimit(
            "search budget exhausted before any candidate was evaluated".into(),
        ));
    }
    finish(best, AlgorithmId::Two, stats)
}

/// High-dimension construction: solve the heaviest eight dimensions, then
/// append one two-level dimension at a time by splitting the code into an
/// index-2 subcode and its coset.
pub fn algorithm3(req: &SearchRequest) -> Result<SearchOutcome> {
    let started = Instant::now();
    let p = req.p;
    let wv = req.w.values();
    // Heaviest dimensions first; stable on ties so equal weights keep their
    // original order.
    let mut perm: Vec<usize> = (0..p).collect();
    perm.sort_by(|&a, &b| wv[b].total_cmp(&wv[a]).then(a.cmp(&b)));
    let sorted_w: Vec<f64> = perm.iter().map(|&k| wv[k]).collect();

    let base_p = p.min(8);
    let mut sub_req = SearchRequest::new(base_p, req.n, Weights::new(sorted_w[..base_p].to_vec())?)?;
    sub_req.algorithm = Algorithm::Two;
    sub_req.budget = req.budget;
    let base = algorithm2(&sub_req)?;
    let mut stats = base.stats;

    let mut code = base.lattice.code().clone();
    let mut s = base.span.values().to_vec();
    for j in base_p..p {
        let mut words: Vec<BitVec> = code
            .codewords()?
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect();
        let step_sq: Vec<f64> = (0..j)
            .map(|k| sq(sorted_w[k] / (s[k] - 1) as f64))
            .collect();
        let d_sq = |v: &BitVec| -> f64 { v.support().map(|k| step_sq[k]).sum() };
        words.sort_by(|a, b| d_sq(a).total_cmp(&d_sq(b)).then(a.bits().cmp(&b.bits())));
        let (sub, coset_rep) = gf2::halve_code(&code, &words)?;
        // Stack: subcode points keep parity 0 in the new dimension, coset
        // points take parity 1.
        let mut rows: Vec<BitVec> = sub
            .basis()
            .iter()
            .map(|row| BitVec::new(j + 1, row.bits() << 1))
            .collect::<Result<_>>()?;
        rows.push(BitVec::new(j + 1, (coset_rep.bits() << 1) | 1)?);
        code = Code::rref(j + 1, &rows)?;
        s.push(2);
        stats.lattices_tried += 1;
    }

    // Undo the weight permutation on both the code and the span.
    let mut final_s = vec![0u32; p];
    for (i, &orig) in perm.iter().enumerate() {
        final_s[orig] = s[i];
    }
    let rows: Vec<BitVec> = code
        .basis()
        .iter()
        .map(|row| {
            let mut bits = 0u64;
            for (i, &orig) in perm.iter().enumerate() {
                if row.get(i) {
                    bits |= unit_bits(p, orig);
                }
            }
            BitVec::new(p, bits)
        })
        .collect::<Result<_>>()?;
    let lattice = Lattice::new(Code::rref(p, &rows)?);

    let m = lattice.point_count(&final_s)?;
    let rho_sq = design::rho_formula_sq(&lattice, &final_s, &req.w)?;
    stats.elapsed = started.elapsed();
    finish(
        Some(Incumbent {
            lattice,
            span: final_s,
            rho_sq,
            m,
        }),
        AlgorithmId::Three,
        stats,
    )
}

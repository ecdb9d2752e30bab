//! Codeword enumeration kernels: weight distribution, exhaustive minimum
//! distance and information-set (Brouwer–Zimmermann) minimum distance.
//!
//! Vectors are packed as GF(p) digit planes: a GF(p^r) symbol is split into
//! its r base-p digits, and each plane stores one digit of every symbol in
//! 8- or 16-bit lanes of `u64` words. Addition is lane-wise mod p, the
//! weight is the popcount of the OR of per-plane nonzero masks.

use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::matq::FqMatrix;

/// Default enumeration cap (number of codewords visited).
pub const DEFAULT_ENUM_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationPolicy {
    pub cap: u64,
    /// Stop the information-set search after this message weight.
    pub max_weight: Option<usize>,
}

impl Default for EnumerationPolicy {
    fn default() -> Self {
        EnumerationPolicy {
            cap: DEFAULT_ENUM_CAP,
            max_weight: None,
        }
    }
}

impl EnumerationPolicy {
    pub fn with_cap(cap: u64) -> Self {
        EnumerationPolicy { cap, max_weight: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceAlgorithm {
    Auto,
    Enumerate,
    InformationSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceStatus {
    Exact,
    LowerBound,
}

impl std::fmt::Display for DistanceStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceStatus::Exact => "EXACT",
            DistanceStatus::LowerBound => "LOWER_BOUND",
        })
    }
}

/// Minimum-distance result. `lower == upper` when exact; `upper` is the
/// weight of `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub lower: usize,
    pub upper: usize,
    pub status: DistanceStatus,
    pub witness: Vec<u8>,
    /// Codewords visited.
    pub visited: u64,
}

impl Distance {
    /// The certified distance, if exact.
    pub fn exact(&self) -> Option<usize> {
        (self.status == DistanceStatus::Exact).then_some(self.upper)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Packer {
    p: u64,
    r: usize,
    n: usize,
    bits: u32,
    lanes: usize,
    chunks: usize,
    low: u64,
    high: u64,
}

impl Packer {
    pub(crate) fn new(field: &Field, n: usize) -> Self {
        let p = field.characteristic() as u64;
        let bits = if p <= 64 { 8 } else { 16 };
        let lanes = 64 / bits as usize;
        let mut low = 0u64;
        for l in 0..lanes {
            low |= 1 << (l as u32 * bits);
        }
        Packer {
            p,
            r: field.degree() as usize,
            n,
            bits,
            lanes,
            chunks: n.div_ceil(lanes).max(1),
            low,
            high: low << (bits - 1),
        }
    }

    pub(crate) fn words(&self) -> usize {
        self.r * self.chunks
    }

    pub(crate) fn pack(&self, v: &[u8]) -> Vec<u64> {
        let mut out = vec![0u64; self.words()];
        for (i, &s) in v.iter().enumerate() {
            let mut s = s as u64;
            for d in 0..self.r {
                let digit = s % self.p;
                s /= self.p;
                let w = d * self.chunks + i / self.lanes;
                out[w] |= digit << ((i % self.lanes) as u32 * self.bits);
            }
        }
        out
    }

    pub(crate) fn unpack(&self, words: &[u64]) -> Vec<u8> {
        let mask = (1u64 << self.bits) - 1;
        (0..self.n)
            .map(|i| {
                let mut s = 0u64;
                for d in (0..self.r).rev() {
                    let w = words[d * self.chunks + i / self.lanes];
                    s = s * self.p + ((w >> ((i % self.lanes) as u32 * self.bits)) & mask);
                }
                s as u8
            })
            .collect()
    }

    #[inline]
    fn add_word(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        let half = 1u64 << (self.bits - 1);
        let ge = ((s + (half - self.p) * self.low) & self.high) >> (self.bits - 1);
        s - ge * self.p
    }

    #[inline]
    pub(crate) fn add_into(&self, acc: &mut [u64], row: &[u64]) {
        for (a, &b) in acc.iter_mut().zip(row) {
            *a = self.add_word(*a, b);
        }
    }

    #[inline]
    pub(crate) fn add_to(&self, out: &mut [u64], a: &[u64], b: &[u64]) {
        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
            *o = self.add_word(x, y);
        }
    }

    #[inline]
    pub(crate) fn weight(&self, v: &[u64]) -> u32 {
        let half = 1u64 << (self.bits - 1);
        let bias = (half - 1) * self.low;
        let mut total = 0;
        for c in 0..self.chunks {
            let mut nz = 0u64;
            for d in 0..self.r {
                nz |= (v[d * self.chunks + c] + bias) & self.high;
            }
            total += nz.count_ones();
        }
        total
    }
}

/// Checked number of projective messages `(q^k - 1)/(q - 1)`, saturating.
pub fn projective_count(q: u32, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 0..k {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(q as u128);
    }
    total
}

/// Visits every codeword whose first nonzero message coordinate is 1.
/// `visit` receives the packed codeword.
fn enumerate_projective(basis: &FqMatrix, packer: &Packer, mut visit: impl FnMut(&[u64])) {
    let field = basis.field();
    let (k, p, r) = (basis.rows(), field.characteristic() as usize, field.degree() as usize);
    // row (i, j) adds X^j · g_i, i.e. bumps digit j of message symbol i
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k * r);
    for i in 0..k {
        let mut beta = 1u8;
        for _ in 0..r {
            let scaled: Vec<u8> = basis.row(i).iter().map(|&x| field.mul_u8(beta, x)).collect();
            rows.push(packer.pack(&scaled));
            beta = (beta as usize * p) as u8;
        }
    }
    let mut acc = vec![0u64; packer.words()];
    for lead in 0..k {
        acc.copy_from_slice(&rows[lead * r]);
        visit(&acc);
        let free = &rows[(lead + 1) * r..];
        let mut counter = vec![0usize; free.len()];
        loop {
            let mut m = 0;
            while m < counter.len() && counter[m] == p - 1 {
                counter[m] = 0;
                m += 1;
            }
            if m == counter.len() {
                break;
            }
            counter[m] += 1;
            packer.add_into(&mut acc, &free[m]);
            visit(&acc);
        }
    }
}

/// Exact weight distribution `[A_0, …, A_n]` by full enumeration.
pub fn weight_distribution(basis: &FqMatrix, cap: u64) -> Result<Vec<u64>> {
    let (k, n) = basis.shape();
    let q = basis.field().order();
    let needed = projective_count(q, k);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    let packer = Packer::new(basis.field(), n);
    let mut counts = vec![0u64; n + 1];
    enumerate_projective(basis, &packer, |v| counts[packer.weight(v) as usize] += 1);
    for c in counts.iter_mut() {
        *c *= (q - 1) as u64;
    }
    counts[0] += 1;
    Ok(counts)
}

/// Minimum distance by full enumeration.
pub fn min_distance_enumerate(basis: &FqMatrix, cap: u64) -> Result<Distance> {
    let (k, n) = basis.shape();
    if k == 0 {
        return Err(Error::InvalidArgument("minimum distance of the zero code".into()));
    }
    let needed = projective_count(basis.field().order(), k);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    let packer = Packer::new(basis.field(), n);
    let mut best = u32::MAX;
    let mut witness = Vec::new();
    let mut visited = 0u64;
    enumerate_projective(basis, &packer, |v| {
        visited += 1;
        let w = packer.weight(v);
        if w < best {
            best = w;
            witness = v.to_vec();
        }
    });
    Ok(Distance {
        lower: best as usize,
        upper: best as usize,
        status: DistanceStatus::Exact,
        witness: packer.unpack(&witness),
        visited,
    })
}

/// Systematic generators on greedily chosen information sets, with the
/// number of columns each set adds to the union of its predecessors.
fn information_sets(basis: &FqMatrix) -> Vec<(FqMatrix, usize)> {
    let n = basis.cols();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let order: Vec<usize> = (0..n).filter(|&c| !used[c]).chain((0..n).filter(|&c| used[c])).collect();
        let ech = basis.echelon_with_order(&order);
        let fresh = ech.pivots.iter().filter(|&&c| !used[c]).count();
        if fresh == 0 {
            break;
        }
        for &c in &ech.pivots {
            used[c] = true;
        }
        out.push((ech.matrix, fresh));
        if used.iter().all(|&u| u) {
            break;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

struct CombSearch<'a> {
    packer: &'a Packer,
    /// `scaled[i][c-1]` = packed `c · g_i`.
    scaled: Vec<Vec<Vec<u64>>>,
    stack: Vec<Vec<u64>>,
    best: u32,
    witness: Vec<u64>,
    visited: u64,
}

impl CombSearch<'_> {
    fn run(&mut self, depth: usize, start: usize, w: usize) {
        let k = self.scaled.len();
        for i in start..=k - (w - depth) {
            let coeffs = if depth == 0 { 1 } else { self.scaled[i].len() };
            for c in 0..coeffs {
                let (head, tail) = self.stack.split_at_mut(depth + 1);
                if depth == 0 {
                    tail[0].copy_from_slice(&self.scaled[i][c]);
                } else {
                    self.packer.add_to(&mut tail[0], &head[depth], &self.scaled[i][c]);
                }
                if depth + 1 == w {
                    self.visited += 1;
                    let wt = self.packer.weight(&self.stack[depth + 1]);
                    if wt < self.best {
                        self.best = wt;
                        self.witness = self.stack[depth + 1].clone();
                    }
                } else {
                    self.run(depth + 1, i + 1, w);
                }
            }
        }
    }
}

/// Information-set minimum distance with certified termination.
pub fn min_distance_information_set(basis: &FqMatrix, policy: &EnumerationPolicy) -> Result<Distance> {
    let (k, n) = basis.shape();
    if k == 0 {
        return Err(Error::InvalidArgument("minimum distance of the zero code".into()));
    }
    let field = basis.field();
    let q = field.order() as usize;
    let packer = Packer::new(field, n);
    let sets = information_sets(basis);
    let mut searches: Vec<CombSearch> = sets
        .iter()
        .map(|(g, _)| CombSearch {
            packer: &packer,
            scaled: (0..k)
                .map(|i| {
                    (1..q as u8)
                        .map(|c| packer.pack(&g.row(i).iter().map(|&x| field.mul_u8(c, x)).collect::<Vec<_>>()))
                        .collect()
                })
                .collect(),
            stack: vec![vec![0u64; packer.words()]; k + 1],
            best: u32::MAX,
            witness: Vec::new(),
            visited: 0,
        })
        .collect();
    let defects: Vec<usize> = sets.iter().map(|(_, fresh)| k - fresh).collect();
    let bound = |w_done: usize, j_done: usize| -> usize {
        // matrices 0..=j_done have finished weight w_done, the rest w_done - 1
        defects
            .iter()
            .enumerate()
            .map(|(j, &def)| {
                let w = if j <= j_done { w_done } else { w_done - 1 };
                (w + 1).saturating_sub(def)
            })
            .sum()
    };
    let mut best = u32::MAX;
    let mut witness: Vec<u64> = Vec::new();
    let mut visited = 0u64;
    let mut lower = 1usize;
    let max_w = policy.max_weight.unwrap_or(k).min(k);
    'outer: for w in 1..=max_w {
        let level_cost = binomial(k, w).saturating_mul((q as u128 - 1).saturating_pow(w as u32 - 1));
        for (j, s) in searches.iter_mut().enumerate() {
            if visited as u128 + level_cost > policy.cap as u128 {
                break 'outer;
            }
            s.best = best;
            s.run(0, 0, w);
            visited += std::mem::take(&mut s.visited);
            if s.best < best {
                best = s.best;
                witness = s.witness.clone();
            }
            lower = lower.max(bound(w, j));
            if w == k && j == 0 {
                // every message of one generator has been seen
                lower = best as usize;
            }
            if lower >= best as usize {
                break 'outer;
            }
        }
    }
    let upper = best as usize;
    let exact = lower >= upper;
    Ok(Distance {
        lower: lower.min(upper),
        upper,
        status: if exact { DistanceStatus::Exact } else { DistanceStatus::LowerBound },
        witness: packer.unpack(&witness),
        visited,
    })
}

//! Permutation automorphisms, orbit decomposition and orbit matrices.
//!
//! A generator `(σ, τ)` is an automorphism of `M` when
//! `M[σ(i)][τ(j)] == M[i][j]` for all `i, j`. Permutations are 0-based image
//! lists internally; files use 1-based images.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::construct::WeighingMatrix;
use crate::error::{Error, Result};
use crate::matq::{FqMatrix, IntMatrix, RationalMatrix};

/// Default size bound for [`paut_search`].
pub const PAUT_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermAutGenerator {
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

fn check_perm(p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return Err(Error::InvalidArgument(format!("{p:?} is not a permutation")));
        }
        seen[v] = true;
    }
    Ok(())
}

impl PermAutGenerator {
    pub fn new(row_perm: Vec<usize>, col_perm: Vec<usize>) -> Result<Self> {
        if row_perm.len() != col_perm.len() {
            return Err(Error::InvalidArgument(format!(
                "row and column permutations have degrees {} and {}",
                row_perm.len(),
                col_perm.len()
            )));
        }
        check_perm(&row_perm)?;
        check_perm(&col_perm)?;
        Ok(PermAutGenerator { row_perm, col_perm })
    }

    pub fn identity(n: usize) -> Self {
        PermAutGenerator {
            row_perm: (0..n).collect(),
            col_perm: (0..n).collect(),
        }
    }

    /// Same permutation on rows and columns.
    pub fn diagonal(perm: Vec<usize>) -> Result<Self> {
        Self::new(perm.clone(), perm)
    }

    pub fn degree(&self) -> usize {
        self.row_perm.len()
    }

    pub fn row_perm(&self) -> &[usize] {
        &self.row_perm
    }

    pub fn col_perm(&self) -> &[usize] {
        &self.col_perm
    }

    pub fn is_identity(&self) -> bool {
        self.row_perm.iter().enumerate().all(|(i, &v)| i == v)
            && self.col_perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        PermAutGenerator {
            row_perm: other.row_perm.iter().map(|&i| self.row_perm[i]).collect(),
            col_perm: other.col_perm.iter().map(|&i| self.col_perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = |p: &[usize]| {
            let mut out = vec![0; p.len()];
            for (i, &v) in p.iter().enumerate() {
                out[v] = i;
            }
            out
        };
        PermAutGenerator {
            row_perm: inv(&self.row_perm),
            col_perm: inv(&self.col_perm),
        }
    }

    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut k = 1;
        while !g.is_identity() {
            g = g.compose(self);
            k += 1;
        }
        k
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.degree()), |acc, _| acc.compose(self))
    }
}

fn degree_check(rows: usize, cols: usize, g: &PermAutGenerator) -> Result<()> {
    if rows != cols {
        return Err(Error::NotSquare(rows, cols));
    }
    if g.degree() != rows {
        return Err(Error::InvalidArgument(format!(
            "generator of degree {} on a matrix of order {rows}",
            g.degree()
        )));
    }
    Ok(())
}

fn violation<T: PartialEq>(n: usize, get: impl Fn(usize, usize) -> T, g: &PermAutGenerator) -> Option<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| get(g.row_perm[i], g.col_perm[j]) != get(i, j))
}

fn preserves<T: PartialEq>(n: usize, get: impl Fn(usize, usize) -> T, g: &PermAutGenerator) -> bool {
    violation(n, get, g).is_none()
}

/// True iff `M[σ(i)][τ(j)] == M[i][j]` everywhere.
pub fn verify_generator(m: &IntMatrix, g: &PermAutGenerator) -> Result<bool> {
    degree_check(m.rows(), m.cols(), g)?;
    Ok(preserves(m.rows(), |i, j| m.get(i, j), g))
}

pub fn verify_generator_rational(m: &RationalMatrix, g: &PermAutGenerator) -> Result<bool> {
    degree_check(m.rows(), m.cols(), g)?;
    Ok(preserves(m.rows(), |i, j| m.get(i, j).clone(), g))
}

pub fn verify_generator_fq(m: &FqMatrix, g: &PermAutGenerator) -> Result<bool> {
    degree_check(m.rows(), m.cols(), g)?;
    Ok(preserves(m.rows(), |i, j| m.get(i, j), g))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of the group generated by `perms`, each sorted, ordered by their
/// smallest element.
pub fn orbits<'a>(n: usize, perms: impl IntoIterator<Item = &'a [usize]>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    for p in perms {
        for (i, &v) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        let k = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(i);
    }
    groups
}

/// Row and column orbits with the integer orbit matrices `Γ` (block row
/// sums) and `γ` (block column sums).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStructure {
    row_orbits: Vec<Vec<usize>>,
    col_orbits: Vec<Vec<usize>>,
    row_matrix: IntMatrix,
    col_matrix: IntMatrix,
}

/// Block sums of one matrix over a fixed orbit partition.
type Grid<T> = Vec<Vec<T>>;

fn block_sums<T: Clone + PartialEq>(
    get: impl Fn(usize, usize) -> T,
    add: impl Fn(&T, &T) -> T,
    zero: T,
    row_orbits: &[Vec<usize>],
    col_orbits: &[Vec<usize>],
) -> Result<(Grid<T>, Grid<T>)> {
    let (tr, tc) = (row_orbits.len(), col_orbits.len());
    let mut rows = vec![vec![zero.clone(); tc]; tr];
    let mut cols = vec![vec![zero.clone(); tc]; tr];
    for (i, ro) in row_orbits.iter().enumerate() {
        for (j, co) in col_orbits.iter().enumerate() {
            let row_sum = |r: usize| co.iter().fold(zero.clone(), |acc, &c| add(&acc, &get(r, c)));
            let col_sum = |c: usize| ro.iter().fold(zero.clone(), |acc, &r| add(&acc, &get(r, c)));
            let first = row_sum(ro[0]);
            if ro[1..].iter().any(|&r| row_sum(r) != first) {
                return Err(Error::Validation(format!("row sums of block ({i}, {j}) are not constant")));
            }
            let firstc = col_sum(co[0]);
            if co[1..].iter().any(|&c| col_sum(c) != firstc) {
                return Err(Error::Validation(format!("column sums of block ({i}, {j}) are not constant")));
            }
            rows[i][j] = first;
            cols[i][j] = firstc;
        }
    }
    Ok((rows, cols))
}

fn check_generators<T: PartialEq>(n: usize, gens: &[PermAutGenerator], get: impl Fn(usize, usize) -> T) -> Result<()> {
    for (k, g) in gens.iter().enumerate() {
        if g.degree() != n {
            return Err(Error::InvalidArgument(format!(
                "generator {k} has degree {}, matrix has order {n}",
                g.degree()
            )));
        }
        if let Some((i, j)) = violation(n, &get, g) {
            return Err(Error::Validation(format!(
                "generator {k} is not an automorphism: entry ({}, {}) differs from entry ({i}, {j})",
                g.row_perm[i], g.col_perm[j]
            )));
        }
    }
    Ok(())
}

fn generator_orbits(n: usize, gens: &[PermAutGenerator]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    (
        orbits(n, gens.iter().map(|g| g.row_perm())),
        orbits(n, gens.iter().map(|g| g.col_perm())),
    )
}

/// Orbit decomposition of `m` under the group generated by `gens`.
pub fn orbit_structure(m: &IntMatrix, gens: &[PermAutGenerator]) -> Result<OrbitStructure> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    check_generators(n, gens, |i, j| m.get(i, j))?;
    let (row_orbits, col_orbits) = generator_orbits(n, gens);
    let (rs, cs) = block_sums(|i, j| m.get(i, j), |a, b| a + b, 0i64, &row_orbits, &col_orbits)?;
    let (tr, tc) = (row_orbits.len(), col_orbits.len());
    Ok(OrbitStructure {
        row_matrix: IntMatrix::from_fn(tr, tc, |i, j| rs[i][j]),
        col_matrix: IntMatrix::from_fn(tr, tc, |i, j| cs[i][j]),
        row_orbits,
        col_orbits,
    })
}

impl OrbitStructure {
    pub fn row_orbits(&self) -> &[Vec<usize>] {
        &self.row_orbits
    }

    pub fn col_orbits(&self) -> &[Vec<usize>] {
        &self.col_orbits
    }

    /// `R = [Γ_ij]`.
    pub fn row_matrix(&self) -> &IntMatrix {
        &self.row_matrix
    }

    /// `C = [γ_ij]`.
    pub fn col_matrix(&self) -> &IntMatrix {
        &self.col_matrix
    }

    pub fn num_orbits(&self) -> usize {
        self.row_orbits.len()
    }

    pub fn row_orbit_sizes(&self) -> Vec<usize> {
        self.row_orbits.iter().map(Vec::len).collect()
    }

    pub fn col_orbit_sizes(&self) -> Vec<usize> {
        self.col_orbits.iter().map(Vec::len).collect()
    }

    /// All orbits (rows and columns) share one length.
    pub fn has_equal_orbit_lengths(&self) -> bool {
        let first = self.row_orbits.first().map(Vec::len);
        self.row_orbits.iter().chain(&self.col_orbits).all(|o| Some(o.len()) == first)
    }

    /// Row orbit `i` and column orbit `i` are the same index set for all `i`.
    pub fn is_aligned(&self) -> bool {
        self.row_orbits == self.col_orbits
    }

    /// `Ω_i Γ_ij = ω_j γ_ij` for every block.
    pub fn double_count_holds(&self) -> bool {
        let (tr, tc) = self.row_matrix.shape();
        (0..tr).all(|i| {
            (0..tc).all(|j| {
                self.row_orbits[i].len() as i64 * self.row_matrix.get(i, j)
                    == self.col_orbits[j].len() as i64 * self.col_matrix.get(i, j)
            })
        })
    }

    /// Replaces `Γ`; used to test that the identities detect corruption.
    pub fn with_row_matrix(mut self, r: IntMatrix) -> Result<Self> {
        if r.shape() != self.row_matrix.shape() {
            return Err(Error::ShapeMismatch {
                op: "with_row_matrix",
                left: self.row_matrix.shape(),
                right: r.shape(),
            });
        }
        self.row_matrix = r;
        Ok(self)
    }
}

/// Column orbit matrix of a rational matrix over given orbits.
fn rational_col_matrix(n_mat: &RationalMatrix, s: &OrbitStructure) -> Result<RationalMatrix> {
    let (_, cs) = block_sums(
        |i, j| n_mat.get(i, j).clone(),
        |a, b| a + b,
        BigRational::zero(),
        &s.row_orbits,
        &s.col_orbits,
    )?;
    Ok(RationalMatrix::from_fn(s.row_orbits.len(), s.col_orbits.len(), |i, j| cs[i][j].clone()))
}

/// `N = (M⁻¹)ᵀ` over ℚ.
pub fn inverse_transpose(m: &IntMatrix) -> Result<RationalMatrix> {
    Ok(m.rational_inverse()?.transpose())
}

/// Checks `Σ_j Γ_ij γ'_sj = δ_is`, where `γ'` is the column orbit matrix of
/// `(M⁻¹)ᵀ` over the same orbits.
pub fn verify_delta_identity(m: &IntMatrix, s: &OrbitStructure) -> Result<bool> {
    let n_mat = inverse_transpose(m)?;
    let cprime = rational_col_matrix(&n_mat, s)?;
    let r = RationalMatrix::from_int(&s.row_matrix);
    Ok(r.matmul(&cprime.transpose())?.is_identity())
}

/// `R` is nonsingular and `R⁻¹` equals the transpose of the column orbit
/// matrix of `(M⁻¹)ᵀ`.
pub fn verify_inverse_relation(m: &IntMatrix, s: &OrbitStructure) -> Result<bool> {
    let n_mat = inverse_transpose(m)?;
    let cprime = rational_col_matrix(&n_mat, s)?;
    let r = RationalMatrix::from_int(&s.row_matrix);
    if r.rows() != r.cols() || r.det()?.is_zero() {
        return Ok(false);
    }
    Ok(r.inverse()? == cprime.transpose())
}

/// Checks `Σ_j (Ω_s / ω_j) Γ_ij Γ_sj = δ_is m` in exact rationals.
pub fn verify_weighted_orthogonality(w: &WeighingMatrix, s: &OrbitStructure) -> Result<bool> {
    if s.row_orbits.iter().flatten().count() != w.order() {
        return Err(Error::InvalidArgument("orbit structure does not match the matrix order".into()));
    }
    let (tr, tc) = s.row_matrix.shape();
    let m = BigRational::from_integer(BigInt::from(w.weight()));
    for i in 0..tr {
        for t in 0..tr {
            let mut acc = BigRational::zero();
            for j in 0..tc {
                let num = BigInt::from(s.row_orbits[t].len() as i64 * s.row_matrix.get(i, j) * s.row_matrix.get(t, j));
                acc += BigRational::new(num, BigInt::from(s.col_orbits[j].len()));
            }
            let expected = if i == t { m.clone() } else { BigRational::zero() };
            if acc != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Rᵀ = -R` for a skew `W` with aligned, equal-length orbits.
pub fn skew_orbit_check(w: &WeighingMatrix, s: &OrbitStructure) -> Result<bool> {
    if !w.is_skew() {
        return Err(Error::Validation("matrix is not skew".into()));
    }
    if !s.is_aligned() {
        return Err(Error::Validation("row and column orbits are not aligned".into()));
    }
    if !s.has_equal_orbit_lengths() {
        return Err(Error::Validation("orbits have unequal lengths".into()));
    }
    Ok(s.row_matrix.transpose() == s.row_matrix.neg())
}

/// Row orbit matrix over GF(q), used by the Hermitian variant.
pub fn fq_row_orbit_matrix(m: &FqMatrix, gens: &[PermAutGenerator]) -> Result<(FqMatrix, Vec<Vec<usize>>)> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    check_generators(n, gens, |i, j| m.get(i, j))?;
    let (row_orbits, col_orbits) = generator_orbits(n, gens);
    let f = m.field().clone();
    let (rs, _) = block_sums(|i, j| m.get(i, j), |a, b| f.add_u8(*a, *b), 0u8, &row_orbits, &col_orbits)?;
    let r = FqMatrix::from_fn(m.field(), row_orbits.len(), col_orbits.len(), |i, j| rs[i][j]);
    Ok((r, row_orbits))
}

/// Every permutation automorphism of a nonsingular matrix of order at most
/// `max_n`, sorted.
pub fn paut_search(w: &IntMatrix, max_n: usize) -> Result<Vec<PermAutGenerator>> {
    if !w.is_square() {
        return Err(Error::NotSquare(w.rows(), w.cols()));
    }
    let n = w.rows();
    if n > max_n {
        return Err(Error::InvalidArgument(format!("order {n} exceeds the search bound {max_n}")));
    }
    if w.rank() < n {
        return Err(Error::Singular);
    }
    let column = |rows: &[usize], j: usize| -> Vec<i64> { rows.iter().map(|&r| w.get(r, j)).collect() };
    let identity: Vec<usize> = (0..n).collect();
    let col_index: HashMap<Vec<i64>, usize> = (0..n).map(|j| (column(&identity, j), j)).collect();

    let mut found = Vec::new();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(w, n, &mut sigma, &mut used, &col_index, &mut found);
    found.sort();
    Ok(found)
}

/// Sorted restricted columns of `w` over `rows`.
fn column_profile(w: &IntMatrix, rows: &[usize]) -> Vec<Vec<i64>> {
    let mut prof: Vec<Vec<i64>> = (0..w.cols()).map(|j| rows.iter().map(|&r| w.get(r, j)).collect()).collect();
    prof.sort();
    prof
}

fn search(
    w: &IntMatrix,
    n: usize,
    sigma: &mut Vec<usize>,
    used: &mut [bool],
    col_index: &HashMap<Vec<i64>, usize>,
    found: &mut Vec<PermAutGenerator>,
) {
    let depth = sigma.len();
    if depth == n {
        // column τ(j) of the row-permuted matrix must equal column j of w
        let mut tau = vec![usize::MAX; n];
        for k in 0..n {
            let col: Vec<i64> = sigma.iter().map(|&r| w.get(r, k)).collect();
            match col_index.get(&col) {
                Some(&j) => tau[j] = k,
                None => return,
            }
        }
        if let Ok(g) = PermAutGenerator::new(sigma.clone(), tau) {
            found.push(g);
        }
        return;
    }
    let prefix: Vec<usize> = (0..=depth).collect();
    let target = column_profile(w, &prefix);
    for r in 0..n {
        if used[r] {
            continue;
        }
        sigma.push(r);
        if column_profile(w, sigma) == target {
            used[r] = true;
            search(w, n, sigma, used, col_index, found);
            used[r] = false;
        }
        sigma.pop();
    }
}

/// Every element of the group generated by `gens` (breadth-first closure).
pub fn group_closure(gens: &[PermAutGenerator], n: usize) -> Vec<PermAutGenerator> {
    let id = PermAutGenerator::identity(n);
    let mut seen: std::collections::BTreeSet<PermAutGenerator> = [id.clone()].into();
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let c = h.compose(&g);
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// One generator per distinct cyclic subgroup among `elements`.
pub fn cyclic_subgroups(elements: &[PermAutGenerator]) -> Vec<PermAutGenerator> {
    let mut seen: std::collections::BTreeSet<Vec<PermAutGenerator>> = Default::default();
    let mut out = Vec::new();
    for g in elements {
        let mut sub: Vec<PermAutGenerator> = (0..g.order()).map(|e| g.pow(e)).collect();
        sub.sort();
        if seen.insert(sub) {
            out.push(g.clone());
        }
    }
    out
}

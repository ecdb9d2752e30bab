//! Ingredient matrices: weighing matrices, Paley constructions, design
//! incidence matrices and GF(q)-weighing matrices, with validators.
//!
//! All weighing-matrix identities are checked over ℤ before any reduction
//! mod p.

use crate::error::{Error, Result};
use crate::gfq::{Field, FieldCtx};
use crate::matq::{FqMatrix, IntMatrix};

/// A validated weighing matrix `W(n, m)`: entries in {0, ±1}, `W Wᵀ = m I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeighingMatrix {
    matrix: IntMatrix,
    weight: i64,
    is_skew: bool,
    is_hadamard: bool,
    is_skew_type_hadamard: bool,
    is_conference: bool,
}

impl WeighingMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// `Wᵀ = -W`.
    pub fn is_skew(&self) -> bool {
        self.is_skew
    }

    pub fn is_hadamard(&self) -> bool {
        self.is_hadamard
    }

    /// `H + Hᵀ = 2I` for a Hadamard matrix.
    pub fn is_skew_type_hadamard(&self) -> bool {
        self.is_skew_type_hadamard
    }

    /// `m = n - 1` with zero diagonal.
    pub fn is_conference(&self) -> bool {
        self.is_conference
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }
}

/// Incidence matrix (points × blocks) of an (r, λ)-design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignIncidence {
    matrix: IntMatrix,
    r: i64,
    lambda: i64,
}

impl DesignIncidence {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn points(&self) -> usize {
        self.matrix.rows()
    }

    pub fn blocks(&self) -> usize {
        self.matrix.cols()
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    /// The `(1, 0)`-design with incidence matrix `I_n`.
    pub fn identity(n: usize) -> Self {
        DesignIncidence {
            matrix: IntMatrix::identity(n),
            r: 1,
            lambda: 0,
        }
    }

    /// The first `t` points; the Gram identity is inherited and re-checked.
    pub fn row_subset(&self, t: usize) -> Result<DesignIncidence> {
        if t == 0 || t > self.points() {
            return Err(Error::InvalidArgument(format!(
                "row subset of size {t} from a design on {} points",
                self.points()
            )));
        }
        validate_design(&self.matrix.top_rows(t)?, self.r, self.lambda)
    }
}

/// A validated GF(q)-weighing matrix `W(n, m; F_q)`: `m` nonzero entries per
/// row and column and `W W* = m I` over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqWeighingMatrix {
    matrix: FqMatrix,
    weight: usize,
}

impl FqWeighingMatrix {
    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
}

/// Quadratic character table of GF(π), indexed by canonical encoding:
/// 0 at 0, 1 on nonzero squares, -1 elsewhere.
pub fn quadratic_character_table(field: &Field) -> Result<Vec<i8>> {
    let q = field.order();
    if field.characteristic() == 2 {
        return Err(Error::InvalidArgument(format!(
            "quadratic character needs odd order, got {q}"
        )));
    }
    let mut chi = vec![-1i8; q as usize];
    chi[0] = 0;
    for x in 1..q as u8 {
        chi[field.mul_u8(x, x) as usize] = 1;
    }
    Ok(chi)
}

/// χ(x) in GF(π).
pub fn quadratic_character(field: &Field, x: u8) -> Result<i8> {
    let table = quadratic_character_table(field)?;
    table
        .get(x as usize)
        .copied()
        .ok_or(Error::OutOfRange {
            value: x as i64,
            q: field.order(),
        })
}

/// Jacobsthal matrix `A = [χ(y - x)]` with rows/columns in encoding order.
fn jacobsthal(field: &Field) -> Result<IntMatrix> {
    let chi = quadratic_character_table(field)?;
    let q = field.order() as usize;
    Ok(IntMatrix::from_fn(q, q, |x, y| {
        chi[field.sub_u8(y as u8, x as u8) as usize] as i64
    }))
}

fn paley_field(pi: u32, residue: u32) -> Result<Field> {
    if pi % 4 != residue {
        return Err(Error::InvalidArgument(format!(
            "π = {pi} is not ≡ {residue} (mod 4)"
        )));
    }
    FieldCtx::new(pi).map_err(|_| Error::InvalidArgument(format!("π = {pi} is not a supported prime power")))
}

/// Paley type I Hadamard matrix of order π + 1 for a prime power π ≡ 3
/// (mod 4): `[[1, -jᵀ], [j, I - A]]`.
pub fn paley_type_one(pi: u32) -> Result<WeighingMatrix> {
    let field = paley_field(pi, 3)?;
    let a = jacobsthal(&field)?;
    let n = pi as usize + 1;
    let h = IntMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => 1,
        (0, _) => -1,
        (_, 0) => 1,
        _ => (i == j) as i64 - a.get(i - 1, j - 1),
    });
    validate_weighing(&h, Some(n as i64))
}

/// Symmetric conference matrix `W(π + 1, π)` for a prime power π ≡ 1
/// (mod 4): zero corner, first row `(0, 1, …, 1)`, first column of ones
/// below the corner, and the Jacobsthal core `A`.
pub fn paley_conference(pi: u32) -> Result<WeighingMatrix> {
    let field = paley_field(pi, 1)?;
    let a = jacobsthal(&field)?;
    let n = pi as usize + 1;
    let w = IntMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => 0,
        (0, _) | (_, 0) => 1,
        _ => a.get(i - 1, j - 1),
    });
    validate_weighing(&w, Some(pi as i64))
}

/// Skew-weighing core `H - I` of a skew-type Hadamard matrix, a `W(n, n-1)`.
pub fn skew_core(h: &WeighingMatrix) -> Result<WeighingMatrix> {
    if !h.is_skew_type_hadamard() {
        return Err(Error::Validation("not a skew-type Hadamard matrix".into()));
    }
    let core = h.matrix().sub(&IntMatrix::identity(h.order()))?;
    validate_weighing(&core, Some(h.order() as i64 - 1))
}

/// Checks entries, nonzero counts and `W Wᵀ = m I` over ℤ.
pub fn validate_weighing(w: &IntMatrix, expect_m: Option<i64>) -> Result<WeighingMatrix> {
    if !w.is_square() {
        return Err(Error::NotSquare(w.rows(), w.cols()));
    }
    let n = w.rows();
    if n == 0 {
        return Err(Error::Validation("empty matrix".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if !(-1..=1).contains(&w.get(i, j)) {
                return Err(Error::Validation(format!(
                    "entry ({i}, {j}) = {} is not in {{0, ±1}}",
                    w.get(i, j)
                )));
            }
        }
    }
    let m = w.row(0).iter().filter(|&&x| x != 0).count() as i64;
    if let Some(e) = expect_m {
        if e != m {
            return Err(Error::Validation(format!("row 0 has weight {m}, expected {e}")));
        }
    }
    let gram = w.gram();
    for i in 0..n {
        for j in i..n {
            let expected = if i == j { m } else { 0 };
            if gram.get(i, j) != expected {
                return Err(Error::Validation(if i == j {
                    format!("row {i} has weight {}, expected {m}", gram.get(i, i))
                } else {
                    format!("rows {i} and {j} have inner product {}", gram.get(i, j))
                }));
            }
        }
    }
    for j in 0..n {
        let c = (0..n).filter(|&i| w.get(i, j) != 0).count() as i64;
        if c != m {
            return Err(Error::Validation(format!("column {j} has {c} nonzero entries, expected {m}")));
        }
    }
    let t = w.transpose();
    let is_skew = t == w.neg();
    let is_hadamard = m == n as i64;
    let is_skew_type_hadamard =
        is_hadamard && w.add(&t)? == IntMatrix::identity(n).scale(2);
    let is_conference = m == n as i64 - 1 && (0..n).all(|i| w.get(i, i) == 0);
    Ok(WeighingMatrix {
        matrix: w.clone(),
        weight: m,
        is_skew,
        is_hadamard,
        is_skew_type_hadamard,
        is_conference,
    })
}

/// Checks a 0/1 incidence matrix for row sums `r` and
/// `B Bᵀ = (r - λ) I + λ J` (points × points).
pub fn validate_design(b: &IntMatrix, r: i64, lambda: i64) -> Result<DesignIncidence> {
    if let Some(&bad) = b.entries().iter().find(|&&x| x != 0 && x != 1) {
        return Err(Error::Validation(format!("incidence entry {bad} is not 0/1")));
    }
    let gram = b.gram();
    for i in 0..b.rows() {
        if gram.get(i, i) != r {
            return Err(Error::Validation(format!(
                "point {i} lies on {} blocks, expected {r}",
                gram.get(i, i)
            )));
        }
        for j in i + 1..b.rows() {
            if gram.get(i, j) != lambda {
                return Err(Error::Validation(format!(
                    "points {i} and {j} share {} blocks, expected {lambda}",
                    gram.get(i, j)
                )));
            }
        }
    }
    Ok(DesignIncidence {
        matrix: b.clone(),
        r,
        lambda,
    })
}

/// Reads `(r, λ)` off the Gram matrix and validates.
pub fn infer_design(b: &IntMatrix) -> Result<DesignIncidence> {
    if b.rows() == 0 {
        return Err(Error::Validation("design without points".into()));
    }
    let gram = b.gram();
    let r = gram.get(0, 0);
    let lambda = if b.rows() > 1 { gram.get(0, 1) } else { 0 };
    validate_design(b, r, lambda)
}

/// Checks nonzero counts and `W W* = (m mod p) I` over GF(q), q ∈ {2, 3, 4}.
pub fn validate_fq_weighing(w: &FqMatrix, expect_m: Option<usize>) -> Result<FqWeighingMatrix> {
    let q = w.field().order();
    if !matches!(q, 2..=4) {
        return Err(Error::UnsupportedField(q));
    }
    if !w.is_square() {
        return Err(Error::NotSquare(w.rows(), w.cols()));
    }
    let n = w.rows();
    if n == 0 {
        return Err(Error::Validation("empty matrix".into()));
    }
    let m = w.row(0).iter().filter(|&&x| x != 0).count();
    if let Some(e) = expect_m {
        if e != m {
            return Err(Error::Validation(format!("row 0 has weight {m}, expected {e}")));
        }
    }
    for i in 0..n {
        let rc = w.row(i).iter().filter(|&&x| x != 0).count();
        let cc = (0..n).filter(|&k| w.get(k, i) != 0).count();
        if rc != m || cc != m {
            return Err(Error::Validation(format!(
                "row/column {i} has {rc}/{cc} nonzero entries, expected {m}"
            )));
        }
    }
    let f = w.field();
    let mm = f.embed_u8(m as i64);
    let gram = w.hermitian_gram();
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { mm } else { 0 };
            if gram.get(i, j) != expected {
                return Err(Error::Validation(format!(
                    "entry ({i}, {j}) of W W* is {}, expected {expected}",
                    gram.get(i, j)
                )));
            }
        }
    }
    Ok(FqWeighingMatrix {
        matrix: w.clone(),
        weight: m,
    })
}

//! Dense exact matrices over the integers and over GF(q).
//!
//! Matrices are immutable values: every operation returns a fresh matrix.
//! Integer determinants and ranks use fraction-free (Bareiss) elimination
//! over arbitrary precision integers; GF(q) matrices use plain Gaussian
//! elimination on the field tables.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gfq::{Field, FieldElement};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// `I_n`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| (i == j) as i64)
    }

    /// `J_n`, the all-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![1; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = vec![0i64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// `M Mᵀ`.
    pub fn gram(&self) -> IntMatrix {
        self.matmul(&self.transpose()).expect("shapes agree")
    }

    fn zip_with(&self, other: &IntMatrix, op: &'static str, f: impl Fn(i64, i64) -> i64) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn scale(&self, c: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn hstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// The first `t` rows.
    pub fn top_rows(&self, t: usize) -> Result<Self> {
        if t > self.rows {
            return Err(Error::InvalidArgument(format!(
                "{t} rows requested from a {}-row matrix",
                self.rows
            )));
        }
        Ok(IntMatrix {
            rows: t,
            cols: self.cols,
            data: self.data[..t * self.cols].to_vec(),
        })
    }

    /// Is every entry in {0, 1, -1}?
    pub fn is_ternary(&self) -> bool {
        self.data.iter().all(|&x| (-1..=1).contains(&x))
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return Ok(BigInt::one());
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(piv, rank);
            for i in rank + 1..self.rows {
                for j in col + 1..self.cols {
                    let v = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse over the rationals.
    pub fn rational_inverse(&self) -> Result<RationalMatrix> {
        RationalMatrix::from_int(self).inverse()
    }

    /// Embeds entries into GF(q) by reduction mod p.
    pub fn reduce(&self, field: &Field) -> FqMatrix {
        FqMatrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| field.embed_u8(z)).collect(),
        }
    }
}

/// Dense rational matrix, used for the orbit-matrix identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        RationalMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .fold(BigRational::zero(), |a, b| a + b)
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Gauss-Jordan inverse.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(piv, c);
            let inv = a[c][c].recip();
            for v in a[c].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..2 * n {
                        let d = &f * &a[c][j];
                        a[i][j] = &a[i][j] - d;
                    }
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| a[i][n + j].clone()))
    }

    /// Rational determinant by elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if piv != c {
                a.swap(piv, c);
                det = -det;
            }
            det = &det * &a[c][c];
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] = &a[i][j] - d;
                }
            }
        }
        Ok(det)
    }

    /// Returns the integer matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|v| {
                if v.is_integer() {
                    i64::try_from(v.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn max_abs_denominator(&self) -> BigInt {
        self.data
            .iter()
            .map(|v| v.denom().abs())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

/// Dense row-major matrix over GF(q); entries are canonical encodings.
#[derive(Clone)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for FqMatrix {}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix over GF({}) {}x{}", self.field.order(), self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Solution of a linear system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinSolveResult {
    /// A particular solution, or `None` when the system is inconsistent.
    pub solution: Option<Vec<u8>>,
    /// Dimension of the solution space of the homogeneous system.
    pub free_variables: usize,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FqMatrix,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v as u32 >= field.order()) {
            return Err(Error::OutOfRange {
                value: bad as i64,
                q: field.order(),
            });
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    /// `f` must return canonical encodings.
    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        debug_assert!(data.iter().all(|&v| (v as u32) < field.order()));
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| (i == j) as u8)
    }

    /// `c · I_n`.
    pub fn scalar(field: &Field, n: usize, c: u8) -> Self {
        Self::from_fn(field, n, n, |i, j| if i == j { c } else { 0 })
    }

    pub fn ones(field: &Field, rows: usize, cols: usize) -> Self {
        Self::from_fn(field, rows, cols, |_, _| 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn element(&self, i: usize, j: usize) -> FieldElement {
        self.field.elem(self.get(i, j) as u32).expect("entries are canonical")
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn same_field(&self, other: &FqMatrix, op: &'static str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DomainMismatch(op));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// `M* = [m_ji†]`.
    pub fn conj_transpose(&self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.cols, self.rows, |i, j| f.dagger_u8(self.get(j, i)))
    }

    /// Entry-wise `†` without transposing.
    pub fn dagger(&self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows, self.cols, |i, j| f.dagger_u8(self.get(i, j)))
    }

    pub fn matmul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.same_field(other, "matmul")?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = &self.field;
        let mut out = vec![0u8; self.rows * other.cols];
        for i in 0..self.rows {
            let dst = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for (d, &b) in dst.iter_mut().zip(other.row(k)) {
                    *d = f.add_u8(*d, f.mul_u8(a, b));
                }
            }
        }
        Ok(FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// `M Mᵀ`.
    pub fn gram(&self) -> FqMatrix {
        self.matmul(&self.transpose()).expect("shapes agree")
    }

    /// `M M*`.
    pub fn hermitian_gram(&self) -> FqMatrix {
        self.matmul(&self.conj_transpose()).expect("shapes agree")
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch {
                op: "vec_mul",
                left: (1, v.len()),
                right: self.shape(),
            });
        }
        let f = &self.field;
        let mut out = vec![0u8; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(k)) {
                *d = f.add_u8(*d, f.mul_u8(a, b));
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &FqMatrix, op: &'static str, g: impl Fn(u8, u8) -> u8) -> Result<Self> {
        self.same_field(other, op)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| g(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &FqMatrix) -> Result<Self> {
        let f = self.field.clone();
        self.zip_with(other, "add", |a, b| f.add_u8(a, b))
    }

    pub fn sub(&self, other: &FqMatrix) -> Result<Self> {
        let f = self.field.clone();
        self.zip_with(other, "sub", |a, b| f.sub_u8(a, b))
    }

    pub fn scale(&self, c: u8) -> Self {
        let f = &self.field;
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul_u8(a, c)).collect(),
        }
    }

    pub fn hstack(&self, other: &FqMatrix) -> Result<Self> {
        self.same_field(other, "hstack")?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, other: &FqMatrix) -> Result<Self> {
        self.same_field(other, "vstack")?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FqMatrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Reduced row echelon form; pivots are sought in the column order given
    /// by `order` (all columns, each once).
    pub fn echelon_with_order(&self, order: &[usize]) -> Echelon {
        let f = &self.field;
        let n = self.cols;
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| a[i * n + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..n {
                    a.swap(p * n + j, r * n + j);
                }
            }
            let inv = f.inv_u8(a[r * n + c]).expect("pivot is nonzero");
            for j in 0..n {
                a[r * n + j] = f.mul_u8(a[r * n + j], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = a[i * n + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg_u8(factor);
                for j in 0..n {
                    let v = a[r * n + j];
                    if v != 0 {
                        a[i * n + j] = f.add_u8(a[i * n + j], f.mul_u8(neg, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            matrix: FqMatrix {
                field: f.clone(),
                rows: self.rows,
                cols: n,
                data: a,
            },
            pivots,
        }
    }

    pub fn echelon(&self) -> Echelon {
        let order: Vec<usize> = (0..self.cols).collect();
        self.echelon_with_order(&order)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u8;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a[i * n + c] != 0) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg_u8(det);
            }
            let pv = a[c * n + c];
            det = f.mul_u8(det, pv);
            let inv = f.inv_u8(pv)?;
            for i in c + 1..n {
                let factor = a[i * n + c];
                if factor == 0 {
                    continue;
                }
                let m = f.neg_u8(f.mul_u8(factor, inv));
                for j in c..n {
                    a[i * n + j] = f.add_u8(a[i * n + j], f.mul_u8(m, a[c * n + j]));
                }
            }
        }
        Ok(f.wrap(det))
    }

    pub fn inverse(&self) -> Result<FqMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = self.hstack(&FqMatrix::identity(&self.field, n))?;
        let order: Vec<usize> = (0..2 * n).collect();
        let ech = aug.echelon_with_order(&order);
        if ech.pivots.len() < n || ech.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(ech.matrix.select_cols(&idx))
    }

    /// Basis (as rows) of the right null space `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> FqMatrix {
        let f = &self.field;
        let ech = self.echelon();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut data = Vec::with_capacity(free.len() * n);
        for &fc in &free {
            let mut v = vec![0u8; n];
            v[fc] = 1;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg_u8(ech.matrix.get(r, fc));
            }
            data.extend(v);
        }
        FqMatrix {
            field: f.clone(),
            rows: free.len(),
            cols: n,
            data,
        }
    }

    /// Solves `self · x = b`.
    pub fn solve(&self, b: &[u8]) -> Result<LinSolveResult> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch {
                op: "solve",
                left: self.shape(),
                right: (b.len(), 1),
            });
        }
        let bcol = FqMatrix::new(&self.field, b.len(), 1, b.to_vec())?;
        let aug = self.hstack(&bcol)?;
        let order: Vec<usize> = (0..=self.cols).collect();
        let ech = aug.echelon_with_order(&order);
        let free_variables = self.cols - ech.pivots.iter().filter(|&&p| p < self.cols).count();
        if ech.pivots.contains(&self.cols) {
            return Ok(LinSolveResult {
                solution: None,
                free_variables,
            });
        }
        let mut x = vec![0u8; self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.matrix.get(r, self.cols);
        }
        Ok(LinSolveResult {
            solution: Some(x),
            free_variables,
        })
    }
}

/// Scalar domain of a [`Matrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Integer,
    Gf(u32),
}

/// A matrix in either scalar domain, as read from or written to files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix {
    Int(IntMatrix),
    Fq(FqMatrix),
}

impl Matrix {
    pub fn domain(&self) -> Domain {
        match self {
            Matrix::Int(_) => Domain::Integer,
            Matrix::Fq(m) => Domain::Gf(m.field().order()),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            Matrix::Int(m) => m.shape(),
            Matrix::Fq(m) => m.shape(),
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        match (self, other) {
            (Matrix::Int(a), Matrix::Int(b)) => a.matmul(b).map(Matrix::Int),
            (Matrix::Fq(a), Matrix::Fq(b)) => a.matmul(b).map(Matrix::Fq),
            _ => Err(Error::DomainMismatch("matmul")),
        }
    }

    pub fn as_int(&self) -> Result<&IntMatrix> {
        match self {
            Matrix::Int(m) => Ok(m),
            Matrix::Fq(_) => Err(Error::DomainMismatch("expected an integer matrix")),
        }
    }

    pub fn as_fq(&self) -> Result<&FqMatrix> {
        match self {
            Matrix::Fq(m) => Ok(m),
            Matrix::Int(_) => Err(Error::DomainMismatch("expected a GF(q) matrix")),
        }
    }

    /// Integer matrices are reduced mod p; GF(q) matrices must already be
    /// over `field`.
    pub fn to_field(&self, field: &Field) -> Result<FqMatrix> {
        match self {
            Matrix::Int(m) => Ok(m.reduce(field)),
            Matrix::Fq(m) if m.field() == field => Ok(m.clone()),
            Matrix::Fq(_) => Err(Error::DomainMismatch("field conversion")),
        }
    }
}

/// `det(a J_n + x I_n) = (x + n a) x^(n-1)` over a field.
pub fn rank_one_shift_det(field: &Field, a: FieldElement, x: FieldElement, n: usize) -> Result<FieldElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let na = field.mul(field.embed_integer(n as i64), a)?;
    let first = field.add(x, na)?;
    field.mul(first, field.pow(x, (n - 1) as u64)?)
}

/// Integer form of [`rank_one_shift_det`].
pub fn rank_one_shift_det_int(a: i64, x: i64, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let first = BigInt::from(x) + BigInt::from(n as i64) * BigInt::from(a);
    Ok(first * num_traits::pow(BigInt::from(x), n - 1))
}

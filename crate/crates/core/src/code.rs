//! Linear codes over GF(q): duals, hulls, LCD and self-duality predicates,
//! distance, weight distribution and formal self-duality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::distance::{self, Distance, DistanceAlgorithm, EnumerationPolicy};
use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::matq::FqMatrix;

/// A linear code, stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    basis: FqMatrix,
    pivots: Vec<usize>,
    dual_basis: FqMatrix,
}

fn rref_basis(g: &FqMatrix) -> (FqMatrix, Vec<usize>) {
    let ech = g.echelon();
    let k = ech.pivots.len();
    (ech.matrix.select_rows(&(0..k).collect::<Vec<_>>()), ech.pivots)
}

/// Hermitian-capable fields, where `†` is a field automorphism.
fn check_hermitian(field: &Field) -> Result<()> {
    if matches!(field.order(), 2..=4) {
        Ok(())
    } else {
        Err(Error::UnsupportedField(field.order()))
    }
}

impl LinearCode {
    /// Row-reduces `g`; rejects the zero matrix.
    pub fn from_generator(g: &FqMatrix) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidArgument("generator matrix is zero".into()));
        }
        Ok(Self::from_span(g))
    }

    /// The code spanned by the rows of `g`, possibly `{0}`.
    pub fn from_span(g: &FqMatrix) -> Self {
        let (basis, pivots) = rref_basis(g);
        let dual_basis = if basis.rows() == 0 {
            FqMatrix::identity(g.field(), g.cols())
        } else {
            basis.kernel_basis()
        };
        LinearCode {
            basis,
            pivots,
            dual_basis,
        }
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Self::from_span(&FqMatrix::zeros(field, 0, n))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn length(&self) -> usize {
        self.basis.cols()
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    /// Reduced row echelon basis.
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rows spanning `C⊥`.
    pub fn dual_basis(&self) -> &FqMatrix {
        &self.dual_basis
    }

    pub fn dual(&self) -> LinearCode {
        Self::from_span(&self.dual_basis)
    }

    /// Dual under `⟨u, v⟩ = Σ u_i v_i†`, for q ∈ {2, 3, 4}.
    pub fn hermitian_dual(&self) -> Result<LinearCode> {
        check_hermitian(self.field())?;
        // v ∈ C^H iff v† ∈ C⊥, and † is additive on these fields
        Ok(Self::from_span(&self.dual_basis.dagger()))
    }

    pub fn contains(&self, word: &[u8]) -> Result<bool> {
        if word.len() != self.length() {
            return Err(Error::InvalidArgument(format!(
                "word of length {} for a code of length {}",
                word.len(),
                self.length()
            )));
        }
        let f = self.field();
        Ok((0..self.dual_basis.rows()).all(|i| {
            self.dual_basis
                .row(i)
                .iter()
                .zip(word)
                .fold(0u8, |acc, (&a, &b)| f.add_u8(acc, f.mul_u8(a, b)))
                == 0
        }))
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        self.basis.vec_mul(message)
    }

    /// `k - rank(G Gᵀ)`, or `k - rank(G G*)` when `hermitian`.
    pub fn hull_dimension(&self, hermitian: bool) -> Result<usize> {
        let gram = if hermitian {
            check_hermitian(self.field())?;
            self.basis.hermitian_gram()
        } else {
            self.basis.gram()
        };
        Ok(self.dimension() - gram.rank())
    }

    /// `C ∩ C⊥` computed as a row-space meet.
    pub fn hull(&self) -> LinearCode {
        self.intersection(&self.dual())
    }

    pub fn hermitian_hull(&self) -> Result<LinearCode> {
        Ok(self.intersection(&self.hermitian_dual()?))
    }

    /// `A ∩ B = (A⊥ + B⊥)⊥`.
    pub fn intersection(&self, other: &LinearCode) -> LinearCode {
        let sum = self
            .dual_basis
            .vstack(&other.dual_basis)
            .expect("codes of equal length");
        if sum.rows() == 0 {
            return Self::from_span(&FqMatrix::identity(self.field(), self.length()));
        }
        Self::from_span(&sum.kernel_basis())
    }

    pub fn same_span(&self, other: &LinearCode) -> bool {
        self.basis == other.basis
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dimension(false).map(|h| h == 0).unwrap_or(false)
    }

    pub fn is_hermitian_lcd(&self) -> Result<bool> {
        Ok(self.hull_dimension(true)? == 0)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.basis.gram().is_zero()
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length() && self.is_self_orthogonal()
    }

    pub fn min_distance(&self, policy: &EnumerationPolicy, algorithm: DistanceAlgorithm) -> Result<Distance> {
        match algorithm {
            DistanceAlgorithm::Enumerate => distance::min_distance_enumerate(&self.basis, policy.cap),
            DistanceAlgorithm::InformationSet => distance::min_distance_information_set(&self.basis, policy),
            DistanceAlgorithm::Auto => {
                let count = distance::projective_count(self.field().order(), self.dimension());
                if count <= 1 << 12 && count <= policy.cap as u128 {
                    distance::min_distance_enumerate(&self.basis, policy.cap)
                } else {
                    distance::min_distance_information_set(&self.basis, policy)
                }
            }
        }
    }

    pub fn weight_distribution(&self, cap: u64) -> Result<Vec<u64>> {
        distance::weight_distribution(&self.basis, cap)
    }

    /// Checks the `[M | I]` / `[M | αI]` pairing: the generator has an
    /// identity right block and `C⊥` is spanned by `[M | αI]` for some
    /// nonzero α. Scaling the last block by α is then a monomial map from
    /// `C` onto `C⊥`.
    pub fn structural_dual_scalar(generator: &FqMatrix) -> Option<u8> {
        let (k, n) = generator.shape();
        if n != 2 * k {
            return None;
        }
        let right: Vec<usize> = (k..n).collect();
        let left: Vec<usize> = (0..k).collect();
        if generator.select_cols(&right) != FqMatrix::identity(generator.field(), k) {
            return None;
        }
        let code = LinearCode::from_span(generator);
        let dual = code.dual();
        let m = generator.select_cols(&left);
        (1..generator.field().order() as u8).find(|&a| {
            let cand = m.hstack(&FqMatrix::scalar(generator.field(), k, a)).expect("matching rows");
            LinearCode::from_span(&cand).same_span(&dual)
        })
    }

    /// Formal self-duality in the requested mode.
    pub fn formally_self_dual(&self, generator: &FqMatrix, mode: FsdMode, cap: u64) -> Result<FsdStatus> {
        match mode {
            FsdMode::Structural => Ok(match Self::structural_dual_scalar(generator) {
                Some(_) => FsdStatus::Structural(true),
                None => FsdStatus::Unknown,
            }),
            FsdMode::Exact => {
                if 2 * self.dimension() != self.length() {
                    return Ok(FsdStatus::Exact(false));
                }
                let a = self.weight_distribution(cap)?;
                let b = self.dual().weight_distribution(cap)?;
                Ok(FsdStatus::Exact(a == b))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsdMode {
    Structural,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsdStatus {
    Exact(bool),
    Structural(bool),
    Unknown,
}

impl FsdStatus {
    pub fn holds(self) -> Option<bool> {
        match self {
            FsdStatus::Exact(b) | FsdStatus::Structural(b) => Some(b),
            FsdStatus::Unknown => None,
        }
    }
}

impl fmt::Display for FsdStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FsdStatus::Exact(b) => write!(f, "{}[EXACT]", yes_no(*b)),
            FsdStatus::Structural(b) => write!(f, "{}[STRUCTURAL]", yes_no(*b)),
            FsdStatus::Unknown => f.write_str("unknown[UNKNOWN]"),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Krawtchouk polynomial `K_j(i)` for length `n` over GF(q).
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> BigInt {
    let binom = |a: usize, b: usize| -> BigInt {
        if b > a {
            return BigInt::zero();
        }
        (0..b).fold(BigInt::one(), |acc, t| acc * BigInt::from(a - t) / BigInt::from(t + 1))
    };
    let qm1 = BigInt::from(q - 1);
    (0..=j)
        .map(|s| {
            let term = binom(i, s) * binom(n - i, j - s) * num_traits::pow(qm1.clone(), j - s);
            if s % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .fold(BigInt::zero(), |a, b| a + b)
}

/// Weight distribution of `C⊥` from that of `C`.
pub fn macwilliams_transform(dist: &[u64], q: u32) -> Result<Vec<BigInt>> {
    let n = dist.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty distribution".into()))?;
    let size: BigInt = dist.iter().map(|&a| BigInt::from(a)).sum();
    if size.is_zero() {
        return Err(Error::InvalidArgument("empty distribution".into()));
    }
    (0..=n)
        .map(|j| {
            let s: BigInt = (0..=n).map(|i| BigInt::from(dist[i]) * krawtchouk(n, q, j, i)).sum();
            if (&s % &size).is_zero() {
                Ok(s / &size)
            } else {
                Err(Error::Validation(format!("MacWilliams coefficient {j} is not integral")))
            }
        })
        .collect()
}

/// Line-oriented code report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub distance: Option<Distance>,
    pub q: u32,
    pub hull: usize,
    pub lcd: bool,
    pub self_dual: bool,
    pub self_orthogonal: bool,
    pub fsd: FsdStatus,
    pub weight_distribution: Option<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub distance: bool,
    pub weight_distribution: bool,
    pub hermitian: bool,
    pub policy: EnumerationPolicy,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            distance: true,
            weight_distribution: false,
            hermitian: false,
            policy: EnumerationPolicy::default(),
        }
    }
}

impl CodeReport {
    /// Builds a report; formal self-duality is EXACT when both enumerations
    /// fit the cap, else STRUCTURAL when the generator has the `[M | I]`
    /// pairing, else UNKNOWN.
    pub fn new(generator: &FqMatrix, opts: &ReportOptions) -> Result<Self> {
        let code = LinearCode::from_generator(generator)?;
        let hull = code.hull_dimension(opts.hermitian)?;
        let distance = if opts.distance {
            Some(code.min_distance(&opts.policy, DistanceAlgorithm::Auto)?)
        } else {
            None
        };
        let fsd = match code.formally_self_dual(generator, FsdMode::Exact, opts.policy.cap) {
            Ok(s) => s,
            Err(Error::CapExceeded { .. }) => code.formally_self_dual(generator, FsdMode::Structural, 0)?,
            Err(e) => return Err(e),
        };
        let weight_distribution = if opts.weight_distribution {
            Some(code.weight_distribution(opts.policy.cap)?)
        } else {
            None
        };
        let (self_dual, self_orthogonal) = if opts.hermitian {
            let h = code.hermitian_dual()?;
            (code.same_span(&h), code.hermitian_hull()?.dimension() == code.dimension())
        } else {
            (code.is_self_dual(), code.is_self_orthogonal())
        };
        Ok(CodeReport {
            n: code.length(),
            k: code.dimension(),
            distance,
            q: code.field().order(),
            hull,
            lcd: hull == 0,
            self_dual,
            self_orthogonal,
            fsd,
            weight_distribution,
        })
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ", self.n, self.k)?;
        match &self.distance {
            Some(d) if d.status == distance::DistanceStatus::Exact => write!(f, "{}[EXACT]", d.upper)?,
            Some(d) => write!(f, "{}[LOWER_BOUND]", d.lower)?,
            None => f.write_str("-[SKIPPED]")?,
        }
        write!(f, " {} {} lcd={}", self.q, self.hull, yes_no(self.lcd))?;
        if self.self_dual {
            f.write_str(" self_dual=yes")?;
        }
        write!(f, " fsd={}", self.fsd)?;
        if let Some(w) = &self.weight_distribution {
            let items: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            write!(f, "\nwdist: {}", items.join(" "))?;
        }
        Ok(())
    }
}

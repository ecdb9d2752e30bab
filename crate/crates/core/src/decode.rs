//! Massey-style decoding for LCD codes generated by `G = [M | I]` with
//! `C⊥` spanned by `Ḡ = [M | αI]`.
//!
//! A received word splits uniquely as `w = λG + μḠ` because `F_q^{2n} =
//! C ⊕ C⊥`. The map `φ(μḠ) = μG` sends a dual component to its nearest
//! codeword whenever `μ` has at most `t` nonzero coefficients. The radius
//! test uses this coefficient weight, which is not the Hamming weight of
//! the error: a single error in the left block spreads over many
//! coefficients of `μ`. [`DecodeMode::Strict`] stops there;
//! [`DecodeMode::Complete`] extends `φ` by an exhaustive nearest-codeword
//! search, which makes the decoder a true nearest-codeword decoder.

use crate::build::{BuildResult, Predicted};
use crate::code::LinearCode;
use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::matq::FqMatrix;

/// Largest `q^k` for the exhaustive nearest-codeword search.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeMode {
    /// Only the partial map `φ` on coefficient weight `≤ t`.
    Strict,
    /// Falls back to the nearest codeword of the dual component.
    Complete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(Vec<u8>),
    /// The dual component lies outside the domain of `φ`.
    BeyondRadius { weight: usize, radius: usize },
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&[u8]> {
        match self {
            DecodeOutcome::Decoded(c) => Some(c),
            DecodeOutcome::BeyondRadius { .. } => None,
        }
    }
}

/// Decomposition `w = c + e` with `c = λG ∈ C` and `e = μḠ ∈ C⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub codeword: Vec<u8>,
    pub dual_part: Vec<u8>,
    pub lambda: Vec<u8>,
    pub mu: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct DecoderContext {
    g: FqMatrix,
    gbar: FqMatrix,
    /// Inverse of the stacked matrix `[G; Ḡ]`.
    stacked_inverse: FqMatrix,
    distance: usize,
    radius: usize,
    /// Row i of `Ḡ` differs from row i of `G` only in the right block.
    paired: bool,
}

/// `G = [M | I]` and row i of `Ḡ` is row i of `G` off by a multiple of `e_{n+i}`.
fn rows_paired(g: &FqMatrix, gbar: &FqMatrix) -> bool {
    let n = g.rows();
    (0..n).all(|i| {
        (0..n).all(|j| g.get(i, j) == gbar.get(i, j))
            && (0..n).all(|j| g.get(i, n + j) == u8::from(i == j) && (i == j || gbar.get(i, n + j) == 0))
    })
}

fn hamming_weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

impl DecoderContext {
    /// Checks `G Ḡᵀ = 0` and that `[G; Ḡ]` is nonsingular. `Ḡ` may be any
    /// basis of `C⊥`; without the row pairing of [`Self::is_paired`] the
    /// closed form of `φ` only covers `μ = 0`.
    pub fn new(g: &FqMatrix, gbar: &FqMatrix, distance: usize) -> Result<Self> {
        if g.shape() != gbar.shape() || g.cols() != 2 * g.rows() {
            return Err(Error::ShapeMismatch {
                op: "decoder context",
                left: g.shape(),
                right: gbar.shape(),
            });
        }
        if g.field() != gbar.field() {
            return Err(Error::FieldMismatch {
                left: g.field().order(),
                right: gbar.field().order(),
            });
        }
        if distance == 0 {
            return Err(Error::InvalidArgument("minimum distance must be positive".into()));
        }
        if !g.matmul(&gbar.transpose())?.is_zero() {
            return Err(Error::Validation("rows of Ḡ are not orthogonal to rows of G".into()));
        }
        let stacked_inverse = g
            .vstack(gbar)?
            .inverse()
            .map_err(|_| Error::Validation("[G; Ḡ] is singular, so the code is not LCD".into()))?;
        Ok(DecoderContext {
            g: g.clone(),
            gbar: gbar.clone(),
            stacked_inverse,
            distance,
            radius: (distance - 1) / 2,
            paired: rows_paired(g, gbar),
        })
    }

    /// Context for an LCD identity-case build with a certified distance.
    pub fn from_build(result: &BuildResult, distance: &Distance) -> Result<Self> {
        if result.predicted != Predicted::Lcd {
            return Err(Error::Validation(format!("build predicted {}, not LCD", result.predicted)));
        }
        let gbar = result
            .dual_generator
            .as_ref()
            .ok_or_else(|| Error::Validation("build has no dual generator (design case)".into()))?;
        let d = distance
            .exact()
            .ok_or_else(|| Error::Validation("minimum distance is not certified exact".into()))?;
        if result.has_full_dual_generator() {
            Self::new(&result.generator, gbar, d)
        } else {
            let dual = LinearCode::from_generator(&result.generator)?.dual_basis().clone();
            Self::new(&result.generator, &dual, d)
        }
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.g
    }

    pub fn dual_generator(&self) -> &FqMatrix {
        &self.gbar
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    /// `t = ⌊(d - 1)/2⌋`.
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Whether `Ḡ` is the row-paired dual generator `[M | βI]`.
    pub fn is_paired(&self) -> bool {
        self.paired
    }

    pub fn length(&self) -> usize {
        self.g.cols()
    }

    pub fn dimension(&self) -> usize {
        self.g.rows()
    }

    fn check_word(&self, w: &[u8]) -> Result<()> {
        if w.len() != self.length() {
            return Err(Error::InvalidArgument(format!(
                "word of length {} for a code of length {}",
                w.len(),
                self.length()
            )));
        }
        let q = self.g.field().order();
        if let Some(&bad) = w.iter().find(|&&x| x as u32 >= q) {
            return Err(Error::OutOfRange { value: bad as i64, q });
        }
        Ok(())
    }

    pub fn project(&self, w: &[u8]) -> Result<Projection> {
        self.check_word(w)?;
        let coeffs = self.stacked_inverse.vec_mul(w)?;
        let k = self.dimension();
        let lambda = coeffs[..k].to_vec();
        let mu = coeffs[k..].to_vec();
        Ok(Projection {
            codeword: self.g.vec_mul(&lambda)?,
            dual_part: self.gbar.vec_mul(&mu)?,
            lambda,
            mu,
        })
    }

    /// `φ(μḠ) = μG` for coefficient weight at most `t`.
    pub fn phi(&self, mu: &[u8]) -> Result<Vec<u8>> {
        if mu.len() != self.dimension() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for dimension {}",
                mu.len(),
                self.dimension()
            )));
        }
        let weight = hamming_weight(mu);
        if weight > self.radius || (!self.paired && weight > 0) {
            return Err(Error::BeyondRadius {
                weight,
                radius: self.radius,
            });
        }
        self.g.vec_mul(mu)
    }

    /// Strict decoding with the partial map `φ`.
    pub fn decode(&self, w: &[u8]) -> Result<DecodeOutcome> {
        self.decode_with(w, DecodeMode::Strict)
    }

    pub fn decode_with(&self, w: &[u8], mode: DecodeMode) -> Result<DecodeOutcome> {
        let proj = self.project(w)?;
        let f = self.g.field();
        let phi = match self.phi(&proj.mu) {
            Ok(c) => c,
            Err(Error::BeyondRadius { weight, radius }) => match mode {
                DecodeMode::Strict => return Ok(DecodeOutcome::BeyondRadius { weight, radius }),
                DecodeMode::Complete => self.nearest_codeword_exhaustive(&proj.dual_part)?,
            },
            Err(e) => return Err(e),
        };
        Ok(DecodeOutcome::Decoded(
            proj.codeword.iter().zip(&phi).map(|(&a, &b)| f.add_u8(a, b)).collect(),
        ))
    }

    /// Nearest codeword by scanning all of `C`; ties go to the first found
    /// in message order. Limited to `q^k ≤ 2^16`.
    pub fn nearest_codeword_exhaustive(&self, w: &[u8]) -> Result<Vec<u8>> {
        self.check_word(w)?;
        let f = self.g.field();
        let q = f.order() as u64;
        let k = self.dimension();
        let total = q.checked_pow(k as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT).ok_or(Error::CapExceeded {
            needed: (q as u128).saturating_pow(k as u32),
            cap: EXHAUSTIVE_LIMIT,
        })?;
        let mut best: Option<(usize, Vec<u8>)> = None;
        let mut msg = vec![0u8; k];
        for idx in 0..total {
            let mut x = idx;
            for m in msg.iter_mut() {
                *m = (x % q) as u8;
                x /= q;
            }
            let c = self.g.vec_mul(&msg)?;
            let dist = c.iter().zip(w).filter(|(a, b)| a != b).count();
            if best.as_ref().is_none_or(|(bd, _)| dist < *bd) {
                best = Some((dist, c));
            }
        }
        Ok(best.map(|(_, c)| c).unwrap_or_default())
    }
}

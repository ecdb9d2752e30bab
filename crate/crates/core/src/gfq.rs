//! Exact arithmetic in small finite fields GF(p^r).
//!
//! Elements are identified by their canonical encoding `c0 + c1·p + c2·p²`,
//! where `c0 + c1·X + c2·X²` is the residue modulo the defining polynomial.
//! Prime-subfield elements therefore encode as themselves and `-1` is always
//! `p - 1`.
//!
//! Defining polynomials are fixed so that encodings are stable across runs
//! and file formats:
//!
//! | q  | polynomial  |
//! |----|-------------|
//! | 4  | X² + X + 1  |
//! | 9  | X² + 1      |
//! | 25 | X² + X + 1  |
//!
//! Any other extension field uses the first monic irreducible polynomial in
//! encoding order of its lower coefficients (GF(27): X³ + 2X + 1,
//! GF(49): X² + 1, GF(121): X² + 1, GF(8): X³ + X + 1, ...).
//!
//! All supported fields have at most [`MAX_ORDER`] elements, so addition,
//! multiplication and inversion are table driven.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 3;

/// Shared handle to an immutable field context.
pub type Field = Arc<FieldCtx>;

/// An element of GF(q), tagged with the order of the field it belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u8,
    order: u16,
}

impl FieldElement {
    /// Canonical encoding in `[0, q)`.
    pub fn value(self) -> u8 {
        self.value
    }

    /// Order of the owning field.
    pub fn order(self) -> u32 {
        self.order as u32
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.order)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The field GF(q), q = p^r, with precomputed operation tables.
pub struct FieldCtx {
    p: u32,
    degree: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        // one defining polynomial per order
        self.q == other.q
    }
}

impl Eq for FieldCtx {}

/// Splits `q` as `p^r`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn digits(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    (0..r)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Evaluates the monic polynomial `X^r + Σ low[i] X^i` at `x` mod `p`.
fn monic_eval(low: &[u32], x: u32, p: u32) -> u32 {
    let mut acc = 1;
    for &c in low.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Root-free test; sufficient for irreducibility at degree 2 and 3.
fn root_free(low: &[u32], p: u32) -> bool {
    (0..p).all(|x| monic_eval(low, x, p) != 0)
}

fn default_modulus(q: u32, p: u32, r: u32) -> Vec<u32> {
    match q {
        4 => vec![1, 1],
        9 => vec![1, 0],
        25 => vec![1, 1],
        _ => (0..p.pow(r))
            .map(|c| digits(c, p, r))
            .find(|low| root_free(low, p))
            .expect("an irreducible polynomial of degree 2 or 3 exists"),
    }
}

impl FieldCtx {
    /// Builds GF(q). `q` must be a prime power `p^r` with `r <= 3` and
    /// `q <= 256`.
    pub fn new(q: u32) -> Result<Field> {
        let (p, r) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        if q > MAX_ORDER || r > MAX_DEGREE {
            return Err(Error::UnsupportedField(q));
        }
        let low = if r == 1 {
            Vec::new()
        } else {
            default_modulus(q, p, r)
        };
        if r > 1 && !root_free(&low, p) {
            return Err(Error::UnsupportedField(q));
        }
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let da = digits(a, p, r);
            for b in 0..q {
                let db = digits(b, p, r);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum, p) as u8;
                mul[(a * q + b) as usize] = Self::poly_mul(&da, &db, &low, p, r) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8;
            }
        }
        let modulus = if r == 1 {
            Vec::new()
        } else {
            let mut m = low.clone();
            m.push(1);
            m
        };
        Ok(Arc::new(FieldCtx {
            p,
            degree: r,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }))
    }

    fn poly_mul(a: &[u32], b: &[u32], low: &[u32], p: u32, r: u32) -> u32 {
        let r = r as usize;
        let mut prod = vec![0u32; 2 * r - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // X^r ≡ -Σ low[i] X^i
        for d in (r..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, m) in low.iter().enumerate() {
                prod[d - r + i] = (prod[d - r + i] + (p - c) * m) % p;
            }
        }
        encode(&prod[..r], p)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients (low to high, including the leading 1) of the defining
    /// polynomial; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    /// Wraps a canonical encoding.
    pub fn elem(&self, value: u32) -> Result<FieldElement> {
        if value >= self.q {
            return Err(Error::OutOfRange {
                value: value as i64,
                q: self.q,
            });
        }
        Ok(self.wrap(value as u8))
    }

    #[inline]
    pub(crate) fn wrap(&self, value: u8) -> FieldElement {
        FieldElement {
            value,
            order: self.q as u16,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| self.wrap(v as u8))
    }

    fn check(&self, a: FieldElement) -> Result<u8> {
        if a.order() != self.q {
            return Err(Error::FieldMismatch {
                left: self.q,
                right: a.order(),
            });
        }
        Ok(a.value)
    }

    fn check2(&self, a: FieldElement, b: FieldElement) -> Result<(u8, u8)> {
        if a.order != b.order {
            return Err(Error::FieldMismatch {
                left: a.order(),
                right: b.order(),
            });
        }
        Ok((self.check(a)?, self.check(b)?))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check2(a, b)?;
        Ok(self.wrap(self.add_u8(a, b)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check2(a, b)?;
        Ok(self.wrap(self.sub_u8(a, b)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        Ok(self.wrap(self.neg_u8(a)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check2(a, b)?;
        Ok(self.wrap(self.mul_u8(a, b)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        self.inv_u8(a).map(|v| self.wrap(v))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let (a, b) = self.check2(a, b)?;
        let bi = self.inv_u8(b)?;
        Ok(self.wrap(self.mul_u8(a, bi)))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        let a = self.check(a)?;
        Ok(self.wrap(self.pow_u8(a, e)))
    }

    /// The transposition `0 ↦ 0`, `x ↦ x⁻¹` used for conjugate transposes.
    pub fn dagger(&self, a: FieldElement) -> Result<FieldElement> {
        let a = self.check(a)?;
        Ok(self.wrap(self.dagger_u8(a)))
    }

    /// Reduces an integer into the prime subfield.
    pub fn embed_integer(&self, z: i64) -> FieldElement {
        self.wrap(self.embed_u8(z))
    }

    /// Interprets an element of the prime subfield as the integer in `[0, p)`.
    pub fn to_integer(&self, a: FieldElement) -> Option<i64> {
        (a.order() == self.q && (a.value as u32) < self.p).then_some(a.value as i64)
    }

    #[inline]
    pub fn add_u8(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub_u8(&self, a: u8, b: u8) -> u8 {
        self.add_u8(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg_u8(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul_u8(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn inv_u8(&self, a: u8) -> Result<u8> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    #[inline]
    pub fn dagger_u8(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow_u8(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_u8(acc, base);
            }
            base = self.mul_u8(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn embed_u8(&self, z: i64) -> u8 {
        z.rem_euclid(self.p as i64) as u8
    }

    /// Row-major addition table, `q × q`.
    pub fn add_table(&self) -> &[u8] {
        &self.add
    }

    /// Row-major multiplication table, `q × q`.
    pub fn mul_table(&self) -> &[u8] {
        &self.mul
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        FieldCtx::new(q).unwrap()
    }

    /// Independent polynomial arithmetic over GF(p) for oracle checks.
    fn oracle_mul(a: u32, b: u32, f: &FieldCtx) -> u32 {
        let p = f.characteristic();
        let r = f.degree() as usize;
        let da = digits(a, p, r as u32);
        let db = digits(b, p, r as u32);
        let m = f.modulus();
        let mut prod = vec![0u32; 2 * r];
        for i in 0..r {
            for j in 0..r {
                prod[i + j] += da[i] * db[j];
            }
        }
        // long division by the monic modulus
        for d in (r..2 * r).rev() {
            let c = prod[d] % p;
            for i in 0..=r {
                prod[d - r + i] += (p - c) * m[i];
            }
            prod[d] = 0;
        }
        let low: Vec<u32> = prod[..r].iter().map(|c| c % p).collect();
        encode(&low, p)
    }

    #[test]
    fn supported_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49, 121, 127, 251] {
            let f = gf(q);
            assert_eq!(f.order(), q);
        }
        for q in [0, 1, 6, 10, 12, 16, 81, 243, 257, 1024] {
            assert!(FieldCtx::new(q).is_err(), "q = {q}");
        }
    }

    #[test]
    fn fixed_moduli() {
        assert_eq!(gf(4).modulus(), &[1, 1, 1]);
        assert_eq!(gf(9).modulus(), &[1, 0, 1]);
        assert_eq!(gf(25).modulus(), &[1, 1, 1]);
        assert_eq!(gf(27).modulus(), &[1, 2, 0, 1]);
        assert_eq!(gf(49).modulus(), &[1, 0, 1]);
        assert!(gf(7).modulus().is_empty());
    }

    #[test]
    fn small_examples() {
        let f3 = gf(3);
        assert_eq!(f3.add(f3.elem(2).unwrap(), f3.elem(2).unwrap()).unwrap().value(), 1);
        let f4 = gf(4);
        let w = f4.elem(2).unwrap();
        assert_eq!(f4.add(w, w).unwrap(), f4.zero());
        assert_eq!(f4.mul(w, w).unwrap().value(), 3);
        let f5 = gf(5);
        assert_eq!(f5.mul(f5.elem(3).unwrap(), f5.elem(4).unwrap()).unwrap().value(), 2);
        let f7 = gf(7);
        assert_eq!(f7.inv(f7.elem(3).unwrap()).unwrap().value(), 5);
        let w2 = f4.mul(w, w).unwrap();
        assert_eq!(f4.inv(w).unwrap(), w2);
        assert_eq!(f4.dagger(w).unwrap(), w2);
        assert_eq!(f3.dagger(f3.elem(2).unwrap()).unwrap().value(), 2);
        assert_eq!(f5.embed_integer(-1).value(), 4);
        assert_eq!(gf(2).embed_integer(-1).value(), 1);
        assert_eq!(gf(9).embed_integer(6).value(), 0);
        assert_eq!(gf(25).embed_integer(-1).value(), 4);
    }

    #[test]
    fn errors() {
        let f3 = gf(3);
        let f5 = gf(5);
        assert!(matches!(
            f3.add(f3.one(), f5.one()),
            Err(Error::FieldMismatch { .. })
        ));
        assert_eq!(f5.inv(f5.zero()), Err(Error::DivisionByZero));
        assert!(f3.elem(3).is_err());
        for q in [2, 3, 4, 9, 25] {
            let f = gf(q);
            assert_eq!(f.dagger(f.zero()).unwrap(), f.zero());
        }
    }

    #[test]
    fn tables_match_polynomial_oracle() {
        for q in [4, 8, 9, 25, 27, 49] {
            let f = gf(q);
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.mul_u8(a as u8, b as u8) as u32, oracle_mul(a, b, &f));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 25] {
            let f = gf(q);
            let els: Vec<u8> = (0..q as u8).collect();
            for &a in &els {
                assert_eq!(f.add_u8(a, 0), a);
                assert_eq!(f.mul_u8(a, 1), a);
                assert_eq!(f.add_u8(a, f.neg_u8(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul_u8(a, f.inv_u8(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(f.add_u8(a, b), f.add_u8(b, a));
                    assert_eq!(f.mul_u8(a, b), f.mul_u8(b, a));
                    // dagger is multiplicative
                    assert_eq!(
                        f.dagger_u8(f.mul_u8(a, b)),
                        f.mul_u8(f.dagger_u8(a), f.dagger_u8(b))
                    );
                    for &c in &els {
                        assert_eq!(f.add_u8(f.add_u8(a, b), c), f.add_u8(a, f.add_u8(b, c)));
                        assert_eq!(f.mul_u8(f.mul_u8(a, b), c), f.mul_u8(a, f.mul_u8(b, c)));
                        assert_eq!(
                            f.mul_u8(a, f.add_u8(b, c)),
                            f.add_u8(f.mul_u8(a, b), f.mul_u8(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [4, 5, 7, 9, 25, 27] {
            let f = gf(q);
            let has_generator = (1..q as u8).any(|g| {
                let mut x = 1u8;
                let mut order = 0;
                loop {
                    x = f.mul_u8(x, g);
                    order += 1;
                    if x == 1 {
                        break;
                    }
                }
                order == q - 1
            });
            assert!(has_generator, "GF({q})");
        }
    }

    #[test]
    fn frobenius_fixes_everything() {
        let f9 = gf(9);
        for a in f9.elements() {
            assert_eq!(f9.pow(a, 9).unwrap(), a);
        }
    }

    #[test]
    fn gf25_inverse_exhaustive() {
        let f = gf(25);
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), f.one());
        }
    }

    #[test]
    fn dagger_is_frobenius_over_gf4() {
        let f = gf(4);
        for a in f.elements() {
            assert_eq!(f.dagger(a).unwrap(), f.mul(a, a).unwrap());
            assert_eq!(f.dagger(f.dagger(a).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn gf25_associativity_sampled() {
        use rand::{Rng, SeedableRng};
        let f = gf(25);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(25);
        for _ in 0..10_000 {
            let (a, b, c) = (rng.gen_range(0..25u32), rng.gen_range(0..25u32), rng.gen_range(0..25u32));
            let (a, b, c) = (f.elem(a).unwrap(), f.elem(b).unwrap(), f.elem(c).unwrap());
            let lhs = f.add(f.add(a, b).unwrap(), c).unwrap();
            let rhs = f.add(a, f.add(b, c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

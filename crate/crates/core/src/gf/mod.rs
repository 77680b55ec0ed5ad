//! Exact arithmetic in F_{p^m} with the relative Frobenius for F_p ⊆ F_q ⊆ F_{q^n}.
//!
//! The ambient field F_{q^n} (q = p^e) is realized once, as F_p[x]/(m(x)) with
//! m the smallest monic irreducible of degree e·n in the order described on
//! [`FieldSpec`]. The subfield F_q is never built separately: it is the fixed
//! set of the q-power map.
//!
//! Elements are stored as the integer Σ c_i p^i of their polynomial-basis
//! coordinates. For fields with at most [`TABLE_LIMIT`] elements,
//! multiplication and addition go through exponent / logarithm / Zech tables;
//! the results are identical to the polynomial-basis path.

mod fp_poly;
mod tables;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use tables::Tables;

/// Largest field (in elements) accepted by [`Field::new`].
pub const FIELD_SIZE_LIMIT: u64 = 1 << 24;

/// Largest field for which log/Zech tables are precomputed.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Parameters of F_{q^n}, q = p^e, and its defining modulus.
///
/// `modulus` holds all e·n + 1 coefficients over F_p, constant term first;
/// the last one is the leading 1. Among all monic irreducibles of that
/// degree it minimizes Σ c_i p^i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// The integer Σ c_i p^i of the full modulus (leading term included).
    pub fn modulus_code(&self) -> BigUint {
        self.modulus
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &c| acc * self.p + c)
    }
}

/// An element of a [`Field`], in polynomial-basis encoding. Serializes as
/// its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    /// The integer Σ c_i p^i of the coordinates.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

struct Inner {
    spec: FieldSpec,
    q: u64,
    order: u32,
    degree: usize,
    /// p^i for i in 0..degree.
    place: Vec<u32>,
    /// Coordinates of x^(degree + k) mod m, for k in 0..degree - 1.
    overflow: Vec<Vec<u32>>,
    tables: Option<Tables>,
}

/// The field F_{q^n}. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.0.spec).finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into (p, e). Returns `None` for anything else.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1 && p <= u32::MAX as u64).then_some((p as u32, e))
}

/// Searches the smallest monic irreducible of the given degree.
fn minimal_modulus(p: u32, degree: usize) -> Vec<u32> {
    let mut code = 0u64;
    loop {
        let candidate = fp_poly::monic_from_code(code, p, degree);
        if fp_poly::is_irreducible(&candidate, p) {
            return candidate;
        }
        code += 1;
    }
}

impl Field {
    /// Builds F_{q^n} with q = p^e, including lookup tables when small enough.
    pub fn new(p: u32, e: u32, n: u32) -> Result<Field> {
        Self::build(p, e, n, FIELD_SIZE_LIMIT, true)
    }

    /// Same as [`Field::new`] with a caller-chosen size bound.
    pub fn with_size_limit(p: u32, e: u32, n: u32, limit: u64) -> Result<Field> {
        Self::build(p, e, n, limit.min(FIELD_SIZE_LIMIT), true)
    }

    /// Polynomial-basis arithmetic only, never tables.
    pub fn without_tables(p: u32, e: u32, n: u32) -> Result<Field> {
        Self::build(p, e, n, FIELD_SIZE_LIMIT, false)
    }

    fn build(p: u32, e: u32, n: u32, limit: u64, want_tables: bool) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "extension degrees must be positive (e = {e}, n = {n})"
            )));
        }
        let degree = e.checked_mul(n).ok_or(Error::Overflow("field degree"))? as usize;
        let order = BigUint::from(p).pow(degree as u32);
        if order > BigUint::from(limit) {
            return Err(Error::BoundExceeded {
                what: "field size",
                needed: order.to_string(),
                bound: limit,
            });
        }
        let order = order.to_u32().ok_or(Error::Overflow("field size"))?;
        let q = (p as u64).pow(e);

        let modulus = minimal_modulus(p, degree);
        let mut place = Vec::with_capacity(degree);
        let mut acc = 1u32;
        for _ in 0..degree {
            place.push(acc);
            acc = acc.wrapping_mul(p);
        }
        // x^degree = -(m_0 + ... + m_{d-1} x^{d-1}); build higher powers by shifting.
        let mut overflow = Vec::with_capacity(degree.saturating_sub(1));
        let mut cur: Vec<u32> = modulus[..degree].iter().map(|&c| (p - c) % p).collect();
        for _ in 0..degree.saturating_sub(1) {
            overflow.push(cur.clone());
            let top = cur[degree - 1];
            let mut next = vec![0u32; degree];
            next[1..degree].copy_from_slice(&cur[..degree - 1]);
            for i in 0..degree {
                next[i] = ((next[i] as u64 + top as u64 * ((p - modulus[i]) % p) as u64) % p as u64)
                    as u32;
            }
            cur = next;
        }

        let mut inner = Inner {
            spec: FieldSpec { p, e, n, modulus },
            q,
            order,
            degree,
            place,
            overflow,
            tables: None,
        };
        if want_tables && order as u64 <= TABLE_LIMIT && order > 2 {
            inner.tables = Some(Tables::build(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn e(&self) -> u32 {
        self.0.spec.e
    }

    pub fn n(&self) -> u32 {
        self.0.spec.n
    }

    /// Size of the distinguished subfield F_q.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Number of elements, q^n.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree e·n over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p() as i64) as u32)
    }

    /// Element from its integer encoding, range-checked.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order() as u64 {
            return Err(Error::ElementOutOfRange(index));
        }
        Ok(FieldElement(index as u32))
    }

    /// Element from polynomial-basis coordinates (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let p = self.p();
        if coeffs.len() > self.degree() || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector {coeffs:?} is not an element of F_{}^{}",
                p,
                self.degree()
            )));
        }
        Ok(FieldElement(
            coeffs.iter().zip(&self.0.place).map(|(&c, &w)| c * w).sum(),
        ))
    }

    /// Polynomial-basis coordinates, constant term first, length e·n.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.p();
        let mut v = a.0;
        (0..self.degree())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Bracketed coordinate list, e.g. `[1,0,1]`.
    pub fn render(&self, a: FieldElement) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(FieldElement)
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.0 >= self.order() {
            Err(Error::ElementOutOfRange(a.0 as u64))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p() == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(t) = &self.0.tables {
            return FieldElement(t.add(a.0, b.0));
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p();
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &self.0.place {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p();
        if p == 2 || a.0 == 0 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &self.0.place {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.mul(a.0, b.0));
        }
        self.mul_basis(a, b)
    }

    /// Schoolbook multiplication in the polynomial basis, reduced by the modulus.
    pub(crate) fn mul_basis(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let p = self.p() as u64;
        let d = self.degree();
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        let mut low: Vec<u64> = prod[..d].iter().map(|c| c % p).collect();
        for (k, &c) in prod[d..].iter().enumerate() {
            let c = c % p;
            if c == 0 {
                continue;
            }
            for (slot, &r) in low.iter_mut().zip(&self.0.overflow[k]) {
                *slot = (*slot + c * r as u64) % p;
            }
        }
        FieldElement(
            low.iter()
                .zip(&self.0.place)
                .map(|(&c, &w)| c as u32 * w)
                .sum(),
        )
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        Some(self.pow_u64(a, self.order() as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow_u64(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return self.zero();
        }
        let group = self.order() as u64 - 1;
        let e = match e % group {
            // a^(k(q^n - 1)) = 1 for k >= 1
            0 => group,
            r => r,
        };
        if let Some(t) = &self.0.tables {
            return FieldElement(t.pow(a.0, e));
        }
        self.pow_basis(a, e)
    }

    pub(crate) fn pow_basis(&self, a: FieldElement, e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_basis(acc, base);
            }
            base = self.mul_basis(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^e for an exponent of any size.
    pub fn pow(&self, a: FieldElement, e: &BigUint) -> FieldElement {
        if e.is_zero() {
            return self.one();
        }
        if a.0 == 0 {
            return self.zero();
        }
        let group = self.order() as u64 - 1;
        let r = (e % group).to_u64().expect("residue fits");
        self.pow_u64(a, if r == 0 { group } else { r })
    }

    /// Range-checked binary operation; `Pow` reads `b` as the integer index.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Pow => self.pow_u64(a, b.0 as u64),
        })
    }

    /// q^k as an unbounded integer.
    pub fn q_pow(&self, k: u32) -> BigUint {
        BigUint::from(self.q()).pow(k)
    }

    /// The relative Frobenius a ↦ a^(q^k).
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        // a^(q^n) = a, so only k mod n matters.
        let k = k % self.n();
        self.pow_u64(a, self.q().pow(k))
    }

    /// a^(p^j), the absolute Frobenius iterated j times.
    pub fn p_power(&self, a: FieldElement, j: u32) -> FieldElement {
        let j = j % self.degree() as u32;
        self.pow_u64(a, (self.p() as u64).pow(j))
    }

    /// a + a^q + ... + a^(q^(k-1)); zero for k = 0.
    pub fn partial_trace(&self, a: FieldElement, k: u32) -> Result<FieldElement> {
        if k > self.n() {
            return Err(Error::TraceOutOfRange { k, n: self.n() });
        }
        let mut sum = self.zero();
        let mut term = a;
        for _ in 0..k {
            sum = self.add(sum, term);
            term = self.frobenius(term, 1);
        }
        Ok(sum)
    }

    /// True when a lies in F_q.
    pub fn in_base_field(&self, a: FieldElement) -> bool {
        self.frobenius(a, 1) == a
    }

    /// The subfield F_{q^d}, i.e. all a with a^(q^d) = a, in index order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<FieldElement>> {
        if d == 0 || !self.n().is_multiple_of(d) {
            return Err(Error::NotADivisor { d, n: self.n() });
        }
        Ok(self
            .elements()
            .filter(|&a| self.frobenius(a, d) == a)
            .collect())
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{render_coeff, render_power, SparsePoly};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Bivariate polynomial: (a, b) ↦ coefficient of x^a y^b, zeros never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(BigUint, BigUint), FieldElement>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> Self {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, 0u32, 0u32, field.one())
    }

    pub fn monomial(
        field: &Field,
        a: impl Into<BigUint>,
        b: impl Into<BigUint>,
        coeff: FieldElement,
    ) -> Self {
        let mut p = Self::zero(field);
        p.add_term(a.into(), b.into(), coeff);
        p
    }

    /// x^a with coefficient one.
    pub fn x_pow(field: &Field, a: impl Into<BigUint>) -> Self {
        Self::monomial(field, a, 0u32, field.one())
    }

    /// y^b with coefficient one.
    pub fn y_pow(field: &Field, b: impl Into<BigUint>) -> Self {
        Self::monomial(field, 0u32, b, field.one())
    }

    /// Embeds P(x).
    pub fn from_x(p: &SparsePoly) -> Self {
        let mut out = Self::zero(p.field());
        for (e, c) in p.terms() {
            out.add_term(e.clone(), BigUint::zero(), c);
        }
        out
    }

    /// Embeds P(y).
    pub fn from_y(p: &SparsePoly) -> Self {
        let mut out = Self::zero(p.field());
        for (e, c) in p.terms() {
            out.add_term(BigUint::zero(), e.clone(), c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, a: BigUint, b: BigUint, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(c) => {
                let s = self.field.add(*c, coeff);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &BigUint, b: &BigUint) -> FieldElement {
        self.terms
            .get(&(a.clone(), b.clone()))
            .copied()
            .unwrap_or_default()
    }

    /// Terms as ((a, b), coefficient), ordered by (a, b).
    pub fn terms(&self) -> impl Iterator<Item = (&(BigUint, BigUint), FieldElement)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub(crate) fn into_terms(self) -> BTreeMap<(BigUint, BigUint), FieldElement> {
        self.terms
    }

    pub(crate) fn from_map(
        field: &Field,
        terms: BTreeMap<(BigUint, BigUint), FieldElement>,
    ) -> Self {
        BiPoly {
            field: field.clone(),
            terms,
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut out = self.clone();
        for ((a, b), &c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let mut out = Self::zero(f);
        for ((a1, b1), &c1) in &self.terms {
            for ((a2, b2), &c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for ((a, b), &v) in &self.terms {
            out.add_term(a.clone(), b.clone(), self.field.mul(v, c));
        }
        out
    }

    fn raise(&self, m: &BigUint, coeff: impl Fn(FieldElement) -> FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for ((a, b), &c) in &self.terms {
            out.add_term(a * m, b * m, coeff(c));
        }
        out
    }

    /// G^(q^k), computed termwise (exact in characteristic p).
    pub fn frobenius_power(&self, k: u32) -> Self {
        let f = self.field.clone();
        self.raise(&self.field.q_pow(k), |c| f.frobenius(c, k))
    }

    /// G^(p^j).
    pub fn p_power(&self, j: u32) -> Self {
        let f = self.field.clone();
        let m = BigUint::from(self.field.p()).pow(j);
        self.raise(&m, |c| f.p_power(c, j))
    }

    /// T_k(G) = G + G^q + ... + G^(q^(k-1)).
    pub fn trace_compose(&self, k: u32) -> Self {
        (0..k).fold(Self::zero(&self.field), |acc, i| {
            &acc + &self.frobenius_power(i)
        })
    }

    /// Partial derivative with respect to y.
    pub fn derivative_y(&self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for ((a, b), &c) in &self.terms {
            if b.is_zero() {
                continue;
            }
            let m = (b % f.p()).to_u32().unwrap();
            out.add_term(a.clone(), b - 1u32, f.mul(c, f.from_int(m as i64)));
        }
        out
    }

    pub fn evaluate(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, ((a, b), &c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, a), f.pow(y, b))))
        })
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        // Decreasing total degree, then decreasing x-degree.
        keys.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2, a2).cmp(&(a1 + b1, a1)));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|((a, b), &c)| {
                let mono: Vec<String> = [render_power("x", a), render_power("y", b)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                render_coeff(&self.field, c, &mono.join("*"))
            })
            .collect();
        write!(out, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.checked_add(rhs)
            .expect("polynomials over different fields")
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.checked_sub(rhs)
            .expect("polynomials over different fields")
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.checked_mul(rhs)
            .expect("polynomials over different fields")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let f = &self.field;
        BiPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| (k.clone(), f.neg(c)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_display() {
        let f = Field::new(2, 1, 1).unwrap();
        let x = BiPoly::x_pow(&f, 1u32);
        let y = BiPoly::y_pow(&f, 2u32);
        let s = &x * &y;
        assert_eq!(s.to_string(), "x*y^2");
        // (x y^2)^2 - x y^2 = x^2 y^4 + x y^2 in characteristic 2
        let lhs = &s.frobenius_power(1) - &s;
        assert_eq!(lhs.to_string(), "x^2*y^4 + x*y^2");
        assert_eq!(lhs, &s.pow(2) + &s);
    }

    #[test]
    fn derivative_in_y() {
        let f = Field::new(3, 1, 1).unwrap();
        // y^9 + y^3 + y - x^4: derivative 1
        let g = &(&(&BiPoly::y_pow(&f, 9u32) + &BiPoly::y_pow(&f, 3u32))
            + &BiPoly::y_pow(&f, 1u32))
            - &BiPoly::x_pow(&f, 4u32);
        assert_eq!(g.derivative_y(), BiPoly::one(&f));
    }
}

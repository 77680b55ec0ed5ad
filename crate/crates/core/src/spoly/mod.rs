//! Sparse univariate and bivariate polynomials over a [`Field`].
//!
//! Exponents are unbounded integers. Nothing is reduced implicitly: reduction
//! modulo x^(q^n) - x only happens through [`SparsePoly::reduce_exponents`] or
//! the `reduce` flag of the Frobenius helpers.

mod bipoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

pub use bipoly::BiPoly;

/// Univariate polynomial as a map exponent → nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: Field,
    terms: BTreeMap<BigUint, FieldElement>,
}

pub(crate) fn render_coeff(field: &Field, c: FieldElement, monomial: &str) -> String {
    match (monomial.is_empty(), c == field.one()) {
        (true, true) => "1".to_string(),
        (true, false) => field.render(c),
        (false, true) => monomial.to_string(),
        (false, false) => format!("{}*{}", field.render(c), monomial),
    }
}

pub(crate) fn render_power(var: &str, e: &BigUint) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// The rule e ↦ ((e - 1) mod (q^n - 1)) + 1 for e >= 1, fixing 0.
pub(crate) fn reduce_exponent(e: &BigUint, group: u64) -> BigUint {
    if e.is_zero() {
        return BigUint::zero();
    }
    (e - 1u32) % group + 1u32
}

impl SparsePoly {
    pub fn zero(field: &Field) -> Self {
        SparsePoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, BigUint::zero(), field.one())
    }

    /// The polynomial x.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, BigUint::one(), field.one())
    }

    pub fn monomial(field: &Field, exp: impl Into<BigUint>, coeff: FieldElement) -> Self {
        let mut p = Self::zero(field);
        p.add_term(exp.into(), coeff);
        p
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms<E: Into<BigUint>>(
        field: &Field,
        terms: impl IntoIterator<Item = (E, FieldElement)>,
    ) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e.into(), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exp: BigUint, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&exp) {
            Some(c) => {
                let s = f.add(*c, coeff);
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent; `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.terms.values().next_back().copied()
    }

    pub fn coeff(&self, exp: &BigUint) -> FieldElement {
        self.terms.get(exp).copied().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BigUint, FieldElement)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = &BigUint> {
        self.terms.keys()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(self.field.one())
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
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
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
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                out.add_term(e1 + e2, f.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Ring power by square-and-multiply.
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
        let f = &self.field;
        Self::from_terms(f, self.terms.iter().map(|(e, &a)| (e.clone(), f.mul(a, c))))
    }

    /// Multiplies by x^shift.
    pub fn shift(&self, shift: &BigUint) -> Self {
        SparsePoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, &c)| (e + shift, c)).collect(),
        }
    }

    /// Reduction modulo x^(q^n) - x: exponents e >= 1 become
    /// ((e - 1) mod (q^n - 1)) + 1, colliding coefficients are summed.
    pub fn reduce_exponents(&self) -> Self {
        let group = self.field.order() as u64 - 1;
        Self::from_terms(
            &self.field,
            self.terms
                .iter()
                .map(|(e, &c)| (reduce_exponent(e, group), c)),
        )
    }

    fn raise(&self, multiplier: &BigUint, coeff: impl Fn(FieldElement) -> FieldElement) -> Self {
        Self::from_terms(
            &self.field,
            self.terms.iter().map(|(e, &c)| (e * multiplier, coeff(c))),
        )
    }

    /// P^(q^k): coefficients to the q^k, exponents times q^k.
    pub fn frobenius_power(&self, k: u32, reduce: bool) -> Self {
        let f = self.field.clone();
        let out = self.raise(&self.field.q_pow(k), |c| f.frobenius(c, k));
        if reduce {
            out.reduce_exponents()
        } else {
            out
        }
    }

    /// P^(p^j) for the characteristic p.
    pub fn p_power(&self, j: u32) -> Self {
        let f = self.field.clone();
        let m = BigUint::from(self.field.p()).pow(j);
        self.raise(&m, |c| f.p_power(c, j))
    }

    /// T_k(P) = P + P^q + ... + P^(q^(k-1)); zero for k = 0.
    pub fn trace_compose(&self, k: u32, reduce: bool) -> Self {
        let mut sum = Self::zero(&self.field);
        for i in 0..k {
            sum = &sum + &self.frobenius_power(i, reduce);
        }
        if reduce {
            sum.reduce_exponents()
        } else {
            sum
        }
    }

    pub fn evaluate(&self, a: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms
            .iter()
            .fold(f.zero(), |acc, (e, &c)| f.add(acc, f.mul(c, f.pow(a, e))))
    }

    /// Pre-reduced form for evaluating many points.
    pub fn evaluator(&self) -> Evaluator<'_> {
        let group = self.field.order() as u64 - 1;
        Evaluator {
            field: &self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| {
                    let r = reduce_exponent(e, group)
                        .to_u64()
                        .expect("reduced exponent fits");
                    (r, c)
                })
                .collect(),
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let p = f.p();
        Self::from_terms(
            f,
            self.terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, &c)| {
                    let m = (e % p).to_u32().unwrap();
                    (e - 1u32, f.mul(c, f.from_int(m as i64)))
                }),
        )
    }

    /// Dense coefficient vector, constant term first.
    pub fn to_dense(&self) -> Result<Vec<FieldElement>> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        let deg = deg
            .to_usize()
            .filter(|&d| d < (1 << 28))
            .ok_or(Error::Overflow("dense polynomial length"))?;
        let mut out = vec![self.field.zero(); deg + 1];
        for (e, &c) in &self.terms {
            out[e.to_usize().unwrap()] = c;
        }
        Ok(out)
    }
}

/// Evaluates a polynomial with exponents reduced once up front.
pub struct Evaluator<'a> {
    field: &'a Field,
    terms: Vec<(u64, FieldElement)>,
}

impl Evaluator<'_> {
    pub fn eval(&self, a: FieldElement) -> FieldElement {
        let f = self.field;
        self.terms.iter().fold(f.zero(), |acc, &(e, c)| {
            f.add(acc, f.mul(c, f.pow_u64(a, e)))
        })
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, &c)| render_coeff(&self.field, c, &render_power("x", e)))
            .collect();
        write!(out, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs)
            .expect("polynomials over different fields")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs)
            .expect("polynomials over different fields")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs)
            .expect("polynomials over different fields")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let f = &self.field;
        SparsePoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), f.neg(c)))
                .collect(),
        }
    }
}

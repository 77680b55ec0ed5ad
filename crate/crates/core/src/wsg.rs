//! Pole orders at the point at infinity Q of T_n(y) = f(x), witness
//! functions for the semigroup at Q of the (0, r) curves, and two exact
//! polynomial identities behind them.
//!
//! On curves with gcd(δ, n) = 1, a monomial x^a y^b has
//! v_Q = -(a·q^(n-1) + b·deg f). When the smallest
//! value is attained once it is v_Q of the sum. Otherwise the function is
//! raised to the q^n, every y^(c·q^n + d) is rewritten as y^d (y + h)^c with
//! h = f^q - f (since y^(q^n) - y = f^q - f on the curve) and the test is
//! repeated, dividing the answer by q^(n·k) after k rounds.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::curve::CurveInstance;
use crate::error::{Error, Result};
use crate::gf::{prime_power, Field};
use crate::spoly::{BiPoly, SparsePoly};

pub const DEFAULT_MAX_ITERS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Valuation {
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    /// Rewriting rounds needed before a unique extreme term appeared.
    pub iterations: u32,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

impl Valuation {
    /// -v_Q.
    pub fn pole_order(&self) -> BigInt {
        -&self.value
    }
}

/// Valuation engine bound to one curve.
pub struct PoleEngine {
    field: Field,
    wx: BigUint,
    wy: BigUint,
    qn: BigUint,
    h: BiPoly,
}

impl PoleEngine {
    pub fn new(c: &CurveInstance) -> Result<Self> {
        if c.gcd_cert() != 1 {
            return Err(Error::InvalidParameter(format!(
                "gcd(delta, n) = {} != 1: pole orders at Q are not certified",
                c.gcd_cert()
            )));
        }
        let field = c.field().clone();
        let n = c.profile().n();
        let wx = field.q_pow(n - 1);
        let wy = c.f().degree().cloned().unwrap_or_default();
        let f = c.f();
        let h = BiPoly::from_x(&(&f.frobenius_power(1, false) - f));
        Ok(PoleEngine {
            qn: field.q_pow(n),
            field,
            wx,
            wy,
            h,
        })
    }

    /// (y + h)^c, expanded one base-p digit of c at a time.
    fn y_plus_h_pow(&self, c: &BigUint) -> BiPoly {
        let p = self.field.p();
        let base = &BiPoly::y_pow(&self.field, 1u32) + &self.h;
        let mut acc = BiPoly::one(&self.field);
        let mut rest = c.clone();
        let mut j = 0u32;
        while !rest.is_zero() {
            let (quot, digit) = rest.div_rem(&BigUint::from(p));
            let digit = digit.to_u64().unwrap();
            if digit > 0 {
                acc = &acc * &base.p_power(j).pow(digit);
            }
            rest = quot;
            j += 1;
        }
        acc
    }

    /// Replaces y^(q^n) by y + h until every y-exponent is below q^n.
    pub fn rewrite(&self, g: &BiPoly) -> BiPoly {
        let mut cur = g.clone();
        let mut cache: HashMap<BigUint, BiPoly> = HashMap::new();
        while cur.terms().any(|((_, b), _)| b >= &self.qn) {
            let mut out: BTreeMap<(BigUint, BigUint), _> = BTreeMap::new();
            let mut next = BiPoly::zero(&self.field);
            for ((a, b), coeff) in cur.into_terms() {
                if b < self.qn {
                    out.insert((a, b), coeff);
                    continue;
                }
                let (c, d) = b.div_rem(&self.qn);
                let expansion = cache
                    .entry(c.clone())
                    .or_insert_with(|| self.y_plus_h_pow(&c));
                let mono = BiPoly::monomial(&self.field, a, d, coeff);
                next = &next + &(&mono * expansion);
            }
            cur = &BiPoly::from_map(&self.field, out) + &next;
        }
        cur
    }

    fn weight(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * &self.wx + b * &self.wy
    }

    /// The largest weight if it is attained by exactly one term.
    fn unique_top(&self, g: &BiPoly) -> std::result::Result<BigUint, (BigUint, usize)> {
        let mut best = BigUint::zero();
        let mut count = 0;
        for ((a, b), _) in g.terms() {
            let w = self.weight(a, b);
            match w.cmp(&best) {
                std::cmp::Ordering::Greater => {
                    best = w;
                    count = 1;
                }
                std::cmp::Ordering::Equal => count += 1,
                std::cmp::Ordering::Less => {}
            }
        }
        if count == 1 {
            Ok(best)
        } else {
            Err((best, count))
        }
    }

    pub fn valuation(&self, g: &BiPoly, max_iters: u32) -> Result<Valuation> {
        if g.is_zero() {
            return Err(Error::ZeroInput);
        }
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let mut cur = g.clone();
        let mut scale = BigUint::one();
        for iterations in 0..=max_iters {
            if iterations > 0 {
                cur = self.rewrite(&cur.frobenius_power(self.field.n()));
                scale *= &self.qn;
            }
            match self.unique_top(&cur) {
                Ok(w) => {
                    let (v, rem) = w.div_rem(&scale);
                    if !rem.is_zero() {
                        return Err(Error::AmbiguousValuation {
                            iterations,
                            detail: format!("weight {w} not divisible by {scale}"),
                        });
                    }
                    return Ok(Valuation {
                        value: -BigInt::from(v),
                        iterations,
                    });
                }
                Err((w, count)) if iterations == max_iters => {
                    return Err(Error::AmbiguousValuation {
                        iterations,
                        detail: format!("{count} terms share weight {w}"),
                    });
                }
                Err(_) => {}
            }
        }
        unreachable!("loop returns on its last iteration")
    }
}

pub fn valuation_at_infinity(g: &BiPoly, c: &CurveInstance, max_iters: u32) -> Result<Valuation> {
    PoleEngine::new(c)?.valuation(g, max_iters)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct W1Branch {
    /// 1 or 2.
    pub branch: u8,
    /// Upper summation limit; -1 means the sum is empty.
    pub limit: i64,
    #[serde(skip)]
    pub poly: BiPoly,
}

#[derive(Debug, Clone)]
pub struct WitnessSet {
    pub q: u64,
    pub n: u32,
    pub r: u32,
    pub s: BiPoly,
    pub w0: BiPoly,
    /// Every admissible construction of w1, in branch order.
    pub w1: Vec<W1Branch>,
    /// Built from the first w1 branch.
    pub w2: BiPoly,
}

fn branch_limit(num: i64, den: i64) -> Option<i64> {
    (num % den == 0 && num / den >= -1).then_some(num / den)
}

pub fn make_witnesses(c: &CurveInstance) -> Result<WitnessSet> {
    let hp = c
        .h_params()
        .ok_or_else(|| Error::InvalidParameter("witnesses need a (0, r(n)) instance".into()))?;
    let (q, n, r) = (hp.q, hp.n, hp.r);
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    let field = c.field();
    let qp = |k: u32| field.q_pow(k);
    let x = |e: BigUint| BiPoly::x_pow(field, e);
    let y = |e: BigUint| BiPoly::y_pow(field, e);
    let e = 2 * r - n;

    let x_qe_qr = x(qp(e) + qp(r));
    let x_1_qr = x(qp(r) + 1u32);
    let s = &(&(&(&x(qp(e) - 1u32) * &y(BigUint::one())) - &x_1_qr) + &y(qp(r))) - &x_qe_qr;
    let w0 = &(&(&y(BigUint::one()) + &y(qp(r))) - &x_1_qr) - &x_qe_qr;

    let (n_i, r_i, e_i) = (n as i64, r as i64, e as i64);
    let mut w1 = Vec::new();
    if let Some(limit) = branch_limit(2 * n_i - 3 * r_i - 1, e_i) {
        let mut poly = &y(qp(n - r)) - &x(qp(n - r) + 1u32);
        for i in 0..=limit {
            poly = &poly + &w0.frobenius_power(1 + e * i as u32);
        }
        w1.push(W1Branch {
            branch: 1,
            limit,
            poly,
        });
    }
    if let Some(limit) = branch_limit(2 * n_i - 3 * r_i + 1, e_i) {
        let mut poly = &y(qp(n - r + 1)) - &x(qp(n - r + 1) + q);
        for i in 0..=limit {
            poly = &poly + &w0.frobenius_power(e * i as u32);
        }
        w1.push(W1Branch {
            branch: 2,
            limit,
            poly,
        });
    }
    let Some(first) = w1.first() else {
        return Err(Error::NoAdmissibleBranch { q, n, r });
    };
    let w2 = &(&(&x(qp(e + 1) - q) * &first.poly) - &s.frobenius_power(1))
        + &(&x(qp(e + 1) - qp(e) - q + 1u32) * &s);
    Ok(WitnessSet {
        q,
        n,
        r,
        s,
        w0,
        w1,
        w2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleEntry {
    pub function: String,
    #[serde(serialize_with = "ser_bigint")]
    pub pole_order: BigInt,
    #[serde(serialize_with = "crate::bigser::big")]
    pub expected: BigUint,
    pub iterations: u32,
}

impl PoleEntry {
    pub fn passed(&self) -> bool {
        self.pole_order == BigInt::from(self.expected.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    pub q: u64,
    pub n: u32,
    pub r: u32,
    pub entries: Vec<PoleEntry>,
}

impl PoleReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(PoleEntry::passed)
    }

    pub fn max_iterations(&self) -> u32 {
        self.entries.iter().map(|e| e.iterations).max().unwrap_or(0)
    }

    pub fn pole_orders(&self) -> Vec<BigInt> {
        self.entries.iter().map(|e| e.pole_order.clone()).collect()
    }
}

/// Pole orders of x, y, w1 (every branch), s and w2 against
/// q^(n-1), q^(n-1) + q^(r-1), q^n + q^(n-r), q^(2r-1) + q^(n-r-1) and
/// q^(2r) - q^n + q^r + 1.
pub fn verify_pole_orders(c: &CurveInstance, max_iters: u32) -> Result<PoleReport> {
    let ws = make_witnesses(c)?;
    let engine = PoleEngine::new(c)?;
    let field = c.field();
    let qp = |k: u32| field.q_pow(k);
    let (n, r) = (ws.n, ws.r);
    let mut targets = vec![
        ("x".to_string(), BiPoly::x_pow(field, 1u32), qp(n - 1)),
        (
            "y".to_string(),
            BiPoly::y_pow(field, 1u32),
            qp(n - 1) + qp(r - 1),
        ),
    ];
    for b in &ws.w1 {
        targets.push((
            format!("w1[{}]", b.branch),
            b.poly.clone(),
            qp(n) + qp(n - r),
        ));
    }
    targets.push(("s".into(), ws.s.clone(), qp(2 * r - 1) + qp(n - r - 1)));
    targets.push(("w2".into(), ws.w2.clone(), qp(2 * r) - qp(n) + qp(r) + 1u32));
    let entries = targets
        .into_iter()
        .map(|(function, g, expected)| {
            let v = engine.valuation(&g, max_iters)?;
            Ok(PoleEntry {
                function,
                pole_order: v.pole_order(),
                expected,
                iterations: v.iterations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoleReport {
        q: ws.q,
        n,
        r,
        entries,
    })
}

fn field_of_size(q: u64) -> Result<Field> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("q = {q} is not a prime power")))?;
    Field::new(p, e, 1)
}

/// S^q - S = y^(q^n) T_{m+1}(x) - x T_{m+1}(y^(q^(n-m))) for
/// S = Σ_{i<m} y^(q^(n-1-i)) T_{m-i}(x), over F_q. S^q is taken as a ring
/// power.
pub fn check_snm_identity(m: u32, n: u32, q: u64) -> Result<bool> {
    if m >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let field = field_of_size(q)?;
    let qp = |k: u32| BigUint::from(q).pow(k);
    let x = BiPoly::x_pow(&field, 1u32);
    let s = (0..m).fold(BiPoly::zero(&field), |acc, i| {
        &acc + &(&BiPoly::y_pow(&field, qp(n - 1 - i)) * &x.trace_compose(m - i))
    });
    let lhs = &s.pow(q) - &s;
    let rhs = &(&BiPoly::y_pow(&field, qp(n)) * &x.trace_compose(m + 1))
        - &(&x * &BiPoly::y_pow(&field, qp(n - m)).trace_compose(m + 1));
    Ok(lhs == rhs)
}

/// f^q - f = -x^(q^(n-r)+1) - x^(q^r+1) + x^(q^(n-r)+q^n) + x^(q^n+q^r) on a
/// (0, r(n)) instance, with f^q taken as a ring power.
pub fn check_yqn_identity(c: &CurveInstance) -> Result<bool> {
    let hp = c
        .h_params()
        .ok_or_else(|| Error::InvalidParameter("identity needs a (0, r(n)) instance".into()))?;
    let field = c.field();
    let (n, r) = (hp.n, hp.r);
    let qp = |k: u32| field.q_pow(k);
    let mono = |e: BigUint| SparsePoly::monomial(field, e, field.one());
    let lhs = &c.f().pow(hp.q) - c.f();
    let rhs = &(&(&mono(qp(n - r) + qp(n)) + &mono(qp(n) + qp(r))) - &mono(qp(n - r) + 1u32))
        - &mono(qp(r) + 1u32);
    Ok(lhs == rhs)
}

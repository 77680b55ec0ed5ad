//! Curves T_n(y) = y^(q^(n-1)) + ... + y^q + y = f(x) over F_{q^n} and the
//! enumeration oracles that certify them.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::gf::{prime_power, Field, FieldElement};
use crate::mvsp::{build_f, uv_decompose, Profile};
use crate::spoly::{BiPoly, SparsePoly};

/// Enumeration limits: `direct` bounds the number of (α, β) pairs visited
/// by the double loop, `fiber` bounds q^n for single loops over F_{q^n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumBounds {
    pub direct: u64,
    pub fiber: u64,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds {
            direct: 1 << 26,
            fiber: 1 << 20,
        }
    }
}

impl EnumBounds {
    /// Both bounds derived from a single limit on q^n.
    pub fn from_max_enum(max: u64) -> Self {
        let d = EnumBounds::default();
        EnumBounds {
            direct: d.direct.min(max.saturating_mul(max)),
            fiber: max,
        }
    }

    fn fiber_ok(&self, field: &Field) -> Result<()> {
        if field.order() as u64 > self.fiber {
            return Err(Error::BoundExceeded {
                what: "q^n",
                needed: field.order().to_string(),
                bound: self.fiber,
            });
        }
        Ok(())
    }
}

/// Parameters of the instance y^(q^(n-1)) + ... + y = T_{n-r}(x^(q^r + 1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HParams {
    pub q: u64,
    pub n: u32,
    pub r: u32,
}

/// The smallest r >= n/2 coprime to n.
pub fn h_exponent(n: u32) -> Result<u32> {
    match n {
        0 | 1 => Err(Error::InvalidParameter(format!("n = {n}, need n >= 2"))),
        2 => Ok(1),
        n if n % 2 == 1 => Ok(n.div_ceil(2)),
        n if n % 4 == 0 => Ok(n / 2 + 1),
        n => Ok(n / 2 + 2),
    }
}

#[derive(Debug, Clone)]
pub struct CurveInstance {
    profile: Profile,
    f: SparsePoly,
    u: SparsePoly,
    v: SparsePoly,
    n_formula: BigUint,
    genus_formula: Option<BigUint>,
    gcd_cert: u32,
    h_params: Option<HParams>,
}

impl CurveInstance {
    pub fn new(profile: Profile) -> Self {
        let f = build_f(&profile);
        let (u, v) = uv_decompose(&profile);
        let q = BigUint::from(profile.q());
        let n = profile.n();
        let n_formula = q.pow(2 * n - 1) + 1u32;
        let gcd_cert = profile.delta_min().gcd(&n);
        let genus_formula = (gcd_cert == 1).then(|| {
            let deg_u = u.degree().cloned().unwrap_or_default();
            let num = (q.pow(n - 1) - 1u32) * (deg_u - 1u32);
            debug_assert!(num.is_even());
            num / 2u32
        });
        let h_params = match profile.r_list() {
            &[0, r] if h_exponent(n).ok() == Some(r) => Some(HParams {
                q: profile.q(),
                n,
                r,
            }),
            _ => None,
        };
        CurveInstance {
            profile,
            f,
            u,
            v,
            n_formula,
            genus_formula,
            gcd_cert,
            h_params,
        }
    }

    pub fn field(&self) -> &Field {
        self.profile.field()
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn f(&self) -> &SparsePoly {
        &self.f
    }

    pub fn u(&self) -> &SparsePoly {
        &self.u
    }

    pub fn v(&self) -> &SparsePoly {
        &self.v
    }

    /// q^(2n-1) + 1.
    pub fn n_formula(&self) -> &BigUint {
        &self.n_formula
    }

    /// (q^(n-1) - 1)(deg u - 1)/2, present only when gcd(δ, n) = 1.
    pub fn genus_formula(&self) -> Option<&BigUint> {
        self.genus_formula.as_ref()
    }

    /// gcd(δ, n).
    pub fn gcd_cert(&self) -> u32 {
        self.gcd_cert
    }

    /// Set when the profile is (0, r(n)).
    pub fn h_params(&self) -> Option<HParams> {
        self.h_params
    }

    pub fn deg_f(&self) -> u64 {
        self.f.degree().and_then(ToPrimitive::to_u64).unwrap_or(0)
    }

    /// T_n(y) - f(x).
    pub fn defining_poly(&self) -> BiPoly {
        let field = self.field();
        let ty = BiPoly::y_pow(field, 1u32).trace_compose(self.profile.n());
        &ty - &BiPoly::from_x(&self.f)
    }

    /// The top-degree homogeneous part of the defining polynomial must be a
    /// single power of x. The t = 0 instance T_n(y) = T_n(x) is exempt.
    pub fn infinity_check(&self) -> Check {
        const NAME: &str = "single_point_at_infinity";
        if self.profile.t() == 0 {
            return Check::skipped(NAME, "t = 0: top form is (y - x)^(q^(n-1))");
        }
        let g = self.defining_poly();
        let top = g.terms().map(|((a, b), _)| a + b).max().unwrap_or_default();
        let lead: Vec<String> = g
            .terms()
            .filter(|((a, b), _)| a + b == top)
            .map(|((a, b), _)| format!("x^{a}*y^{b}"))
            .collect();
        let ok = lead.len() == 1 && g.terms().any(|((a, b), _)| *a == top && b.is_zero());
        Check::new(NAME, ok, format!("top form: {}", lead.join(" + ")))
    }

    /// ∂/∂y of the defining polynomial is the constant 1.
    pub fn smoothness_check(&self) -> Check {
        let d = self.defining_poly().derivative_y();
        Check::new(
            "affine_smooth",
            d == BiPoly::one(self.field()),
            format!("d/dy = {d}"),
        )
    }
}

/// The profile (0, r(n)) over F_{q^n}.
pub fn h_family(q: u64, n: u32) -> Result<CurveInstance> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("q = {q} is not a prime power")))?;
    let r = h_exponent(n)?;
    let field = Field::new(p, e, n)?;
    let profile = Profile::new(n, &[0, r], &field)?;
    Ok(CurveInstance::new(profile))
}

/// Affine point counts by two independent routes. `direct` is absent when
/// the double loop exceeds its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub direct: Option<u64>,
    pub fiber: u64,
}

impl PointCount {
    /// Projective total: affine points plus the single point at infinity.
    pub fn total(&self) -> u64 {
        self.fiber + 1
    }

    pub fn agree(&self) -> bool {
        self.direct.is_none_or(|d| d == self.fiber)
    }
}

fn elements(field: &Field) -> impl ParallelIterator<Item = FieldElement> + '_ {
    (0..field.order() as u64)
        .into_par_iter()
        .map(move |i| field.element(i).expect("index within field"))
}

pub fn count_points(c: &CurveInstance, bounds: &EnumBounds) -> Result<PointCount> {
    let field = c.field();
    bounds.fiber_ok(field)?;
    let n = c.profile.n();
    let eval = c.f.evaluator();
    let fiber_size = field.q().pow(n - 1);
    let fiber = elements(field)
        .filter(|&a| field.in_base_field(eval.eval(a)))
        .count() as u64
        * fiber_size;

    let order = field.order() as u64;
    let direct = if order.saturating_mul(order) <= bounds.direct {
        let traces: Vec<FieldElement> = elements(field)
            .map(|b| field.partial_trace(b, n).expect("n <= n"))
            .collect();
        let hits = elements(field)
            .map(|a| {
                let fa = c.f.evaluate(a);
                traces.iter().filter(|&&t| t == fa).count() as u64
            })
            .sum();
        Some(hits)
    } else {
        None
    };
    Ok(PointCount { direct, fiber })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueSetReport {
    pub values: Vec<FieldElement>,
    pub equals_base_field: bool,
    /// floor((q^n - 1)/deg f) + 1.
    pub expected_size: u64,
}

impl ValueSetReport {
    pub fn passed(&self) -> bool {
        self.equals_base_field && self.values.len() as u64 == self.expected_size
    }
}

pub fn value_set_check(c: &CurveInstance, bounds: &EnumBounds) -> Result<ValueSetReport> {
    let field = c.field();
    bounds.fiber_ok(field)?;
    let eval = c.f.evaluator();
    let mut values: Vec<FieldElement> = elements(field).map(|a| eval.eval(a)).collect();
    values.par_sort_unstable();
    values.dedup();
    let base = field.subfield_elements(1)?;
    let deg = c.deg_f().max(1);
    Ok(ValueSetReport {
        equals_base_field: values == base,
        expected_size: (field.order() as u64 - 1) / deg + 1,
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    pub root: FieldElement,
    pub multiplicity: u64,
    pub in_base_field: bool,
}

/// Roots of f - γ inside F_{q^n}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub gamma: FieldElement,
    pub roots: Vec<Root>,
    pub total_multiplicity: u64,
    pub degree: u64,
    /// deg f minus the multiplicity found in F_{q^n}.
    pub deficit: u64,
    /// Whether the cofactor left after removing every root in F_{q^n} is a
    /// p-th power. `None` when the division was too large to attempt.
    pub residual_p_power: Option<bool>,
}

impl FiberReport {
    pub fn has_simple_root(&self) -> bool {
        self.roots.iter().any(|r| r.multiplicity == 1)
    }

    /// Roots in F_{q^n} have multiplicity prime to p and roots outside it
    /// have multiplicity divisible by p.
    pub fn multiplicities_ok(&self, p: u32) -> bool {
        let p = p as u64;
        self.roots.iter().all(|r| r.multiplicity % p != 0)
            && self.deficit.is_multiple_of(p)
            && self.residual_p_power != Some(false)
    }
}

const RESIDUAL_WORK: u64 = 1 << 28;

fn binom_small(n: u64, k: u64, p: u64) -> u64 {
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    let mut inv = 1u64;
    let (mut b, mut e) = (den, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    num * inv % p
}

/// C(n, k) mod p by Lucas' theorem.
fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1;
    while k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * binom_small(ni, ki, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Order of vanishing of g at α: the first nonvanishing Hasse derivative.
fn multiplicity(field: &Field, terms: &[(u64, FieldElement)], alpha: FieldElement) -> u64 {
    let p = field.p() as u64;
    let top = terms.last().map_or(0, |t| t.0);
    (0..=top)
        .find(|&k| {
            let v = terms
                .iter()
                .filter(|&&(e, _)| e >= k)
                .fold(field.zero(), |acc, &(e, c)| {
                    let b = binom_mod_p(e, k, p);
                    if b == 0 {
                        return acc;
                    }
                    let t = field.mul(
                        c,
                        field.mul(field.from_int(b as i64), field.pow_u64(alpha, e - k)),
                    );
                    field.add(acc, t)
                });
            !v.is_zero()
        })
        .unwrap_or(top)
}

/// Divides by (x - α) in place and returns the remainder.
fn divide_linear(field: &Field, poly: &mut Vec<FieldElement>, alpha: FieldElement) -> FieldElement {
    let d = poly.len();
    if d == 0 {
        return field.zero();
    }
    let mut carry = field.zero();
    for i in (0..d).rev() {
        let cur = field.add(poly[i], field.mul(alpha, carry));
        poly[i] = carry;
        carry = cur;
    }
    poly.pop();
    carry
}

pub fn fiber_analysis(
    c: &CurveInstance,
    gamma: FieldElement,
    bounds: &EnumBounds,
) -> Result<FiberReport> {
    let field = c.field();
    if gamma.index() >= field.order() {
        return Err(Error::ElementOutOfRange(gamma.index() as u64));
    }
    if !field.in_base_field(gamma) {
        return Err(Error::NotInSubfield);
    }
    bounds.fiber_ok(field)?;
    let g = &c.f - &SparsePoly::monomial(field, 0u32, gamma);
    let terms: Vec<(u64, FieldElement)> = g
        .terms()
        .map(|(e, c)| (e.to_u64().expect("exponent below q^n"), c))
        .collect();
    let eval = g.evaluator();
    let mut roots: Vec<Root> = elements(field)
        .filter(|&a| eval.eval(a).is_zero())
        .map(|a| Root {
            root: a,
            multiplicity: multiplicity(field, &terms, a),
            in_base_field: field.in_base_field(a),
        })
        .collect();
    roots.sort_by_key(|r| r.root);

    let degree = c.deg_f();
    let total: u64 = roots.iter().map(|r| r.multiplicity).sum();
    let residual_p_power = if degree.saturating_mul(total + 1) <= RESIDUAL_WORK {
        let mut dense = g.to_dense()?;
        for r in &roots {
            for _ in 0..r.multiplicity {
                let rem = divide_linear(field, &mut dense, r.root);
                debug_assert!(rem.is_zero());
            }
        }
        let p = field.p() as usize;
        Some(
            dense
                .iter()
                .enumerate()
                .all(|(i, c)| i % p == 0 || c.is_zero()),
        )
    } else {
        None
    };
    Ok(FiberReport {
        gamma,
        roots,
        total_multiplicity: total,
        degree,
        deficit: degree - total,
        residual_p_power,
    })
}

/// All fibers over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSweep {
    pub fibers: Vec<FiberReport>,
    /// Values γ for which f - γ has no simple root; at most one is allowed.
    pub without_simple_root: Vec<FieldElement>,
    pub multiplicities_ok: bool,
}

impl FiberSweep {
    pub fn passed(&self) -> bool {
        self.without_simple_root.len() <= 1 && self.multiplicities_ok
    }
}

pub fn fiber_sweep(c: &CurveInstance, bounds: &EnumBounds) -> Result<FiberSweep> {
    let field = c.field();
    let fibers = field
        .subfield_elements(1)?
        .into_iter()
        .map(|g| fiber_analysis(c, g, bounds))
        .collect::<Result<Vec<_>>>()?;
    let without_simple_root = fibers
        .iter()
        .filter(|f| !f.has_simple_root())
        .map(|f| f.gamma)
        .collect();
    let multiplicities_ok = fibers.iter().all(|f| f.multiplicities_ok(field.p()));
    Ok(FiberSweep {
        fibers,
        without_simple_root,
        multiplicities_ok,
    })
}

/// Point counts and genera of the three comparison families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceFormulas {
    #[serde(serialize_with = "crate::bigser::big")]
    pub n_nt: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub g_nt: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub n_gs: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub g_gs: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub n_h: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub g_h: BigUint,
}

pub fn reference_formulas(q: u64, n: u32) -> Result<ReferenceFormulas> {
    let r = h_exponent(n)?;
    let q = BigUint::from(q);
    let qn1 = q.pow(n - 1);
    let count = q.pow(2 * n - 1) + 1u32;
    let geometric: BigUint = (1..n).map(|i| q.pow(i)).sum();
    Ok(ReferenceFormulas {
        n_nt: count.clone(),
        g_nt: (&qn1 - 1u32) * geometric / 2u32,
        n_gs: count.clone(),
        g_gs: (&qn1 - 1u32) * &qn1 / 2u32,
        n_h: count,
        g_h: q.pow(r) * (&qn1 - 1u32) / 2u32,
    })
}

/// One row of the certification summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub q: u64,
    pub n: u32,
    pub r_list: Vec<u32>,
    #[serde(serialize_with = "crate::bigser::big")]
    pub deg_f: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub deg_u: BigUint,
    #[serde(rename = "N_formula", serialize_with = "crate::bigser::big")]
    pub n_formula: BigUint,
    #[serde(rename = "N_bruteforce")]
    pub n_bruteforce: Option<u64>,
    #[serde(serialize_with = "crate::bigser::opt_big")]
    pub genus_formula: Option<BigUint>,
    pub mvsp_ok: Option<bool>,
    pub value_set_ok: Option<bool>,
    pub fibers_ok: Option<bool>,
}

impl CurveRecord {
    /// Formula fields only; the oracle fields start out unset.
    pub fn new(c: &CurveInstance) -> Self {
        CurveRecord {
            q: c.profile.q(),
            n: c.profile.n(),
            r_list: c.profile.r_list().to_vec(),
            deg_f: c.f.degree().cloned().unwrap_or_default(),
            deg_u: c.u.degree().cloned().unwrap_or_default(),
            n_formula: c.n_formula.clone(),
            n_bruteforce: None,
            genus_formula: c.genus_formula.clone(),
            mvsp_ok: None,
            value_set_ok: None,
            fibers_ok: None,
        }
    }
}

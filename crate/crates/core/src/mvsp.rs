//! The canonical minimal value set polynomial f_r attached to a tuple
//! r = (0 = r_0 < r_1 < ... < r_t < n), and the combinatorics around it.
//!
//! Starting from f_0 = x^(1 + q^r_1 + ... + q^r_t), the orbit is
//! f_i = f_{i-1}^(q^δ_{i-1}) mod (x^(q^n) - x) where δ_i = r_{t+1-i} - r_{t-i}
//! and r_{t+1} = n. Then
//!
//! ```text
//! f = Σ_{e ∈ I} T_{δ_e}(f_e),    f̃ = T_n(f_0) mod (x^(q^n) - x) = η·f,
//! f = T_δ(u) + v^(q^δ),          u = Σ_{e ∈ I} f_e,  v = Σ_{e ∈ I} T_{δ_e - δ}(f_e),
//! ```
//!
//! with I the first index of each distinct f_i, η the multiplicity of each
//! orbit element and δ = min δ_i.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::spoly::SparsePoly;

/// A validated tuple r and everything derived from it.
#[derive(Debug, Clone)]
pub struct Profile {
    field: Field,
    n: u32,
    r_list: Vec<u32>,
    delta: Vec<u32>,
    delta_min: u32,
    delta_matrix: Vec<Vec<u32>>,
    orbit: Vec<SparsePoly>,
    i_sets: Vec<Vec<usize>>,
    index_set: Vec<usize>,
    eta: usize,
    m: usize,
}

fn validate_r_list(n: u32, r_list: &[u32]) -> Result<()> {
    if r_list.first() != Some(&0) || r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidProfile(
            "r_list not strictly increasing from 0".into(),
        ));
    }
    if *r_list.last().unwrap() >= n {
        return Err(Error::InvalidProfile(format!(
            "largest entry {} must be below n = {n}",
            r_list.last().unwrap()
        )));
    }
    Ok(())
}

/// Compares from the last entry backwards, which is the order in which
/// Σ_j q^(s_j - 1) compares for increasing sequences ending in n.
fn colex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

impl Profile {
    pub fn new(n: u32, r_list: &[u32], field: &Field) -> Result<Profile> {
        validate_r_list(n, r_list)?;
        if field.n() != n {
            return Err(Error::InvalidProfile(format!(
                "field is F_(q^{}) but n = {n}",
                field.n()
            )));
        }
        let t = r_list.len() - 1;
        let r_at = |i: usize| if i == t + 1 { n } else { r_list[i] };
        let delta: Vec<u32> = (0..=t).map(|i| r_at(t + 1 - i) - r_at(t - i)).collect();
        let delta_min = *delta.iter().min().unwrap();
        let len = t + 1;
        let delta_matrix: Vec<Vec<u32>> = (0..len)
            .map(|i| {
                let mut acc = 0;
                (0..len)
                    .map(|j| {
                        acc += delta[(i + 2 * len - 1 - j) % len];
                        acc
                    })
                    .collect()
            })
            .collect();

        let q = field.q();
        let f0_exp = r_list[1..]
            .iter()
            .fold(BigUint::one(), |acc, &r| acc + BigUint::from(q).pow(r));
        let mut orbit = vec![SparsePoly::monomial(field, f0_exp, field.one())];
        for i in 1..len {
            let next = orbit[i - 1].frobenius_power(delta[i - 1], true);
            orbit.push(next);
        }
        let i_sets: Vec<Vec<usize>> = (0..len)
            .map(|i| (0..len).filter(|&j| orbit[j] == orbit[i]).collect())
            .collect();
        let mut index_set: Vec<usize> = i_sets.iter().map(|s| s[0]).collect();
        index_set.sort_unstable();
        index_set.dedup();
        let eta = i_sets[0].len();

        let mut best = index_set[0];
        let mut tied = Vec::new();
        for &e in &index_set[1..] {
            match colex(&delta_matrix[e], &delta_matrix[best]) {
                std::cmp::Ordering::Greater => {
                    best = e;
                    tied.clear();
                }
                std::cmp::Ordering::Equal => tied.push(e),
                std::cmp::Ordering::Less => {}
            }
        }
        if !tied.is_empty() {
            tied.push(best);
            return Err(Error::LexicographicTie(tied));
        }

        Ok(Profile {
            field: field.clone(),
            n,
            r_list: r_list.to_vec(),
            delta,
            delta_min,
            delta_matrix,
            orbit,
            i_sets,
            index_set,
            eta,
            m: best,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// t, the number of nonzero entries of r.
    pub fn t(&self) -> usize {
        self.r_list.len() - 1
    }

    pub fn r_list(&self) -> &[u32] {
        &self.r_list
    }

    pub fn delta(&self) -> &[u32] {
        &self.delta
    }

    pub fn delta_min(&self) -> u32 {
        self.delta_min
    }

    /// Δ_{i,j} = Σ_{λ=0}^{j} δ_{(i-1-λ) mod (t+1)}.
    pub fn delta_matrix(&self) -> &[Vec<u32>] {
        &self.delta_matrix
    }

    /// S_i = (Δ_{i,0}, ..., Δ_{i,t}).
    pub fn s_seq(&self, i: usize) -> &[u32] {
        &self.delta_matrix[i]
    }

    /// The monomials f_0, ..., f_t.
    pub fn orbit(&self) -> &[SparsePoly] {
        &self.orbit
    }

    pub fn i_sets(&self) -> &[Vec<usize>] {
        &self.i_sets
    }

    /// I, sorted ascending.
    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    pub fn eta(&self) -> usize {
        self.eta
    }

    /// M: the index in I whose S sequence is largest, comparing entries from
    /// the last one backwards. f_M has the largest degree among the f_i.
    pub fn m(&self) -> usize {
        self.m
    }

    /// True when δ_0 <= ... <= δ_t.
    pub fn delta_sorted(&self) -> bool {
        self.delta.windows(2).all(|w| w[0] <= w[1])
    }
}

/// f = Σ_{e ∈ I} T_{δ_e}(f_e).
pub fn build_f(pr: &Profile) -> SparsePoly {
    pr.index_set
        .iter()
        .fold(SparsePoly::zero(&pr.field), |acc, &e| {
            &acc + &pr.orbit[e].trace_compose(pr.delta[e], false)
        })
}

/// f̃ = T_n(f_0) mod (x^(q^n) - x).
pub fn build_f_tilde(pr: &Profile) -> SparsePoly {
    pr.orbit[0].trace_compose(pr.n, true)
}

/// (u, v) with f = T_δ(u) + v^(q^δ).
pub fn uv_decompose(pr: &Profile) -> (SparsePoly, SparsePoly) {
    let zero = SparsePoly::zero(&pr.field);
    let mut u = zero.clone();
    let mut v = zero;
    for &e in &pr.index_set {
        u = &u + &pr.orbit[e];
        v = &v + &pr.orbit[e].trace_compose(pr.delta[e] - pr.delta_min, false);
    }
    (u, v)
}

/// deg f = Σ_j q^(Δ_{M,j} - 1).
pub fn predicted_degree(pr: &Profile) -> BigUint {
    let q = BigUint::from(pr.q());
    pr.delta_matrix[pr.m].iter().map(|&d| q.pow(d - 1)).sum()
}

/// q^(r_1 - 1) + ... + q^(r_t - 1) + q^(n - 1), valid when δ is nondecreasing.
pub fn sorted_delta_degree(pr: &Profile) -> Option<BigUint> {
    if !pr.delta_sorted() {
        return None;
    }
    let q = BigUint::from(pr.q());
    Some(
        pr.r_list[1..]
            .iter()
            .chain(std::iter::once(&pr.n))
            .map(|&r| q.pow(r - 1))
            .sum(),
    )
}

/// deg f_i in the explicit form
/// 1 + q^δ_{i-1} + ... + q^(δ_{i-1} + ... + δ_1) + q^(δ_{i-1} + ... + δ_0)(1 + q^r_1 + ... + q^r_{t-i}).
pub fn orbit_degree_formula(pr: &Profile, i: usize) -> BigUint {
    let q = BigUint::from(pr.q());
    let t = pr.t();
    let tail: BigUint = std::iter::once(BigUint::one())
        .chain(pr.r_list[1..=t - i].iter().map(|&r| q.pow(r)))
        .sum();
    if i == 0 {
        return tail;
    }
    let mut total = BigUint::zero();
    let mut shift = 0u32;
    // k = 0 contributes q^0; k-th term uses δ_{i-1} + ... + δ_{i-k}.
    for k in 0..i {
        if k > 0 {
            shift += pr.delta[i - k];
        }
        total += q.pow(shift);
    }
    shift += pr.delta[0];
    total + q.pow(shift) * tail
}

/// Serialized profile summary.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ProfileRecord {
    pub q: u64,
    pub n: u32,
    pub r_list: Vec<u32>,
    pub delta: Vec<u32>,
    pub eta: usize,
    #[serde(rename = "I")]
    pub index_set: Vec<usize>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(serialize_with = "crate::bigser::big")]
    pub deg_f: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub deg_u: BigUint,
    #[serde(serialize_with = "crate::bigser::opt_big")]
    pub deg_v: Option<BigUint>,
}

impl ProfileRecord {
    pub fn new(pr: &Profile) -> Self {
        let f = build_f(pr);
        let (u, v) = uv_decompose(pr);
        ProfileRecord {
            q: pr.q(),
            n: pr.n,
            r_list: pr.r_list.clone(),
            delta: pr.delta.clone(),
            eta: pr.eta,
            index_set: pr.index_set.clone(),
            m: pr.m,
            deg_f: f.degree().cloned().unwrap_or_default(),
            deg_u: u.degree().cloned().unwrap_or_default(),
            deg_v: v.degree().cloned(),
        }
    }
}

/// One asserted clause of [`check_structure`].
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StructureReport {
    pub clauses: Vec<Clause>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.clauses.push(Clause {
            name,
            passed,
            detail,
        });
    }
}

fn deg_str(p: &SparsePoly) -> String {
    p.degree().map_or("-inf".into(), |d| d.to_string())
}

/// Re-derives every structural claim about the profile from the constructed objects.
pub fn check_structure(pr: &Profile) -> StructureReport {
    let mut rep = StructureReport {
        clauses: Vec::new(),
    };
    let field = &pr.field;
    let len = pr.t() + 1;
    let q = BigUint::from(pr.q());
    let qn = q.pow(pr.n);

    let sum: u32 = pr.delta.iter().sum();
    rep.push(
        "delta_sum",
        sum == pr.n,
        format!("sum delta = {sum}, n = {}", pr.n),
    );

    let s_ok = pr
        .delta_matrix
        .iter()
        .all(|s| s.windows(2).all(|w| w[0] < w[1]) && s.last() == Some(&pr.n));
    rep.push("s_sequences", s_ok, format!("{:?}", pr.delta_matrix));

    // (i) orbit degrees, in both closed forms
    let mut bad = Vec::new();
    // Δ_{i+1,0} = δ_i, so every exponent below is nonnegative.
    for i in 0..len {
        let actual = pr.orbit[i].degree().cloned().unwrap_or_default();
        let by_sum = orbit_degree_formula(pr, i);
        let by_shift: BigUint = pr.delta_matrix[(i + 1) % len]
            .iter()
            .map(|&d| q.pow(d - pr.delta[i]))
            .sum();
        if actual != by_sum || actual != by_shift || pr.orbit[i].len() != 1 {
            bad.push(format!(
                "f_{i}: actual {actual}, by_sum {by_sum}, by_shift {by_shift}"
            ));
        }
    }
    rep.push("orbit_degrees", bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for i in 0..len {
        let next = pr.orbit[i].frobenius_power(pr.delta[i], true);
        if next != pr.orbit[(i + 1) % len] {
            bad.push(format!("f_{i}^(q^delta_{i}) = {next}"));
        }
    }
    rep.push("orbit_closure", bad.is_empty(), bad.join("; "));

    // (ii) η
    let sizes: Vec<usize> = pr.i_sets.iter().map(Vec::len).collect();
    let eta_ok = sizes.iter().all(|&s| s == pr.eta) && (pr.n as usize).is_multiple_of(pr.eta);
    rep.push("eta", eta_ok, format!("eta_i = {sizes:?}, n = {}", pr.n));

    let f = build_f(pr);
    let f_tilde = build_f_tilde(pr);
    let eta_f = f.scale(field.from_int(pr.eta as i64));
    rep.push(
        "f_tilde_is_eta_f",
        f_tilde == eta_f,
        format!("f~ = {f_tilde}; eta*f = {eta_f}"),
    );

    let below_qn = f.exponents().all(|e| e < &qn);
    rep.push(
        "f_monic_reduced",
        f.is_monic() && below_qn,
        format!("f = {f}"),
    );

    let predicted = predicted_degree(pr);
    let deg_f = f.degree().cloned().unwrap_or_default();
    rep.push(
        "degree_from_m",
        deg_f == predicted,
        format!("deg f = {deg_f}, predicted {predicted}"),
    );
    if let Some(sorted) = sorted_delta_degree(pr) {
        rep.push(
            "degree_sorted_delta",
            sorted == deg_f,
            format!("deg f = {deg_f}, closed form {sorted}"),
        );
    }

    let max_orbit = (0..len)
        .max_by_key(|&i| pr.orbit[i].degree().cloned())
        .unwrap();
    rep.push(
        "max_orbit_degree_has_min_delta",
        pr.delta[max_orbit] == pr.delta_min,
        format!("argmax deg f_i = {max_orbit}, delta = {:?}", pr.delta),
    );

    // (iv), (v)
    let (u, v) = uv_decompose(pr);
    let deg_u = u.degree().cloned().unwrap_or_default();
    let m_ok = pr.delta[pr.m] == pr.delta_min && Some(&deg_u) == pr.orbit[pr.m].degree();
    rep.push(
        "m_attains_delta",
        m_ok,
        format!(
            "M = {}, delta_M = {}, deg u = {deg_u}",
            pr.m, pr.delta[pr.m]
        ),
    );

    let rebuilt = &u.trace_compose(pr.delta_min, false) + &v.frobenius_power(pr.delta_min, false);
    rep.push(
        "uv_identity",
        rebuilt.reduce_exponents() == f.reduce_exponents(),
        format!("T_delta(u) + v^(q^delta) = {rebuilt}"),
    );
    rep.push(
        "deg_u_mod_p",
        deg_u.mod_floor(&BigUint::from(field.p())).is_one(),
        format!("deg u = {deg_u}, p = {}", field.p()),
    );
    rep.push(
        "deg_v_below_deg_u",
        v.degree().is_none_or(|d| d < &deg_u),
        format!("deg v = {}, deg u = {deg_u}", deg_str(&v)),
    );
    rep
}

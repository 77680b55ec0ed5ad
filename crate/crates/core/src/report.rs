//! Full certification of one instance and parameter sweeps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::{Check, Status};
use crate::curve::{
    count_points, fiber_sweep, h_exponent, reference_formulas, value_set_check, CurveInstance,
    CurveRecord, EnumBounds,
};
use crate::error::{Error, Result};
use crate::gf::{prime_power, Field, FieldSpec};
use crate::mvsp::{check_structure, Profile, ProfileRecord};
use crate::nsg::{
    castle_check, is_telescopic, telescopic_genus, weierstrass_generators, NumericalSemigroup,
    SemigroupRecord,
};
use crate::wsg::{check_snm_identity, check_yqn_identity, verify_pole_orders, PoleReport};

/// Instances whose S_{m,n} identity is also checked during certification.
const SNM_MAX_Q: u64 = 4;
const SNM_MAX_N: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertifyOptions {
    pub bounds: EnumBounds,
    pub max_iters: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            bounds: EnumBounds::default(),
            max_iters: crate::wsg::DEFAULT_MAX_ITERS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing failed but some checks were skipped.
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldHeader {
    pub q: u64,
    #[serde(flatten)]
    pub spec: FieldSpec,
}

/// The genus expression q^r(q^(n-1) + 1)/2, kept next to the gap count so
/// the two can be compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusVariant {
    pub expression: &'static str,
    #[serde(serialize_with = "crate::bigser::big")]
    pub value: BigUint,
    pub equals_gap_count: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupSection {
    #[serde(flatten)]
    pub record: SemigroupRecord,
    pub telescopic_genus: Option<u64>,
    pub castle: Option<bool>,
    pub genus_plus_one_variant: GenusVariant,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertReport {
    pub field: FieldHeader,
    pub profile: ProfileRecord,
    pub curve: CurveRecord,
    pub valuations: Option<PoleReport>,
    pub semigroup: Option<SemigroupSection>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    /// Wall-clock per phase; the only nondeterministic part of the report.
    pub timings_ms: BTreeMap<&'static str, f64>,
}

impl CertReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON with the timing block removed.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let f = &self.field.spec;
        let c = &self.curve;
        let _ = writeln!(
            out,
            "field      p={} e={} n={} q={} modulus={:?}",
            f.p, f.e, f.n, self.field.q, f.modulus
        );
        let _ = writeln!(
            out,
            "profile    r={:?} delta={:?} eta={} I={:?} M={}",
            self.profile.r_list,
            self.profile.delta,
            self.profile.eta,
            self.profile.index_set,
            self.profile.m
        );
        let _ = writeln!(
            out,
            "degrees    f={} u={} v={}",
            c.deg_f,
            c.deg_u,
            self.profile
                .deg_v
                .as_ref()
                .map_or("-inf".into(), ToString::to_string)
        );
        let _ = writeln!(
            out,
            "points     formula={} bruteforce={}",
            c.n_formula,
            opt(&c.n_bruteforce)
        );
        let _ = writeln!(out, "genus      formula={}", opt(&c.genus_formula));
        if let Some(sg) = &self.semigroup {
            let r = &sg.record;
            let _ = writeln!(
                out,
                "semigroup  gens={:?} m2={} F={} genus={} symmetric={} telescopic={} castle={} redundant={:?}",
                r.gens, r.m_2, r.frobenius, r.genus, r.symmetric, r.telescopic, opt(&sg.castle), r.redundant_gens
            );
        }
        if let Some(v) = &self.valuations {
            let orders: Vec<String> = v
                .entries
                .iter()
                .map(|e| format!("{}={}", e.function, e.pole_order))
                .collect();
            let _ = writeln!(out, "poles      {}", orders.join(" "));
        }
        for ch in &self.checks {
            let tag = match ch.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "{tag} {}: {}", ch.name, ch.detail);
        }
        let _ = writeln!(out, "verdict    {:?}", self.verdict);
        out
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), ToString::to_string)
}

fn timed<T>(
    timings: &mut BTreeMap<&'static str, f64>,
    phase: &'static str,
    f: impl FnOnce() -> T,
) -> T {
    let t = Instant::now();
    let out = f();
    timings.insert(phase, t.elapsed().as_secs_f64() * 1e3);
    out
}

/// Runs every applicable oracle on `c`.
pub fn certify(c: &CurveInstance, opts: &CertifyOptions) -> CertReport {
    let mut checks = Vec::new();
    let mut timings = BTreeMap::new();
    let field = c.field();
    let pr = c.profile();
    let mut curve = CurveRecord::new(c);
    let (q, n) = (pr.q(), pr.n());

    let structure = timed(&mut timings, "structure", || check_structure(pr));
    for cl in &structure.clauses {
        checks.push(Check::new(
            format!("structure.{}", cl.name),
            cl.passed,
            cl.detail.clone(),
        ));
    }
    checks.push(c.infinity_check());
    checks.push(c.smoothness_check());

    timed(&mut timings, "value_set", || {
        match value_set_check(c, &opts.bounds) {
            Ok(vs) => {
                let size_ok = vs.values.len() as u64 == vs.expected_size;
                curve.value_set_ok = Some(vs.equals_base_field);
                curve.mvsp_ok = Some(size_ok);
                checks.push(Check::new(
                    "value_set",
                    vs.equals_base_field,
                    format!("#V_f = {}", vs.values.len()),
                ));
                checks.push(Check::new(
                    "mvsp_cardinality",
                    size_ok,
                    format!(
                        "#V_f = {}, floor((q^n-1)/deg f)+1 = {}",
                        vs.values.len(),
                        vs.expected_size
                    ),
                ));
            }
            Err(e) => {
                checks.push(Check::skipped("value_set", e.to_string()));
                checks.push(Check::skipped("mvsp_cardinality", e.to_string()));
            }
        }
    });

    timed(&mut timings, "fibers", || {
        match fiber_sweep(c, &opts.bounds) {
            Ok(sw) => {
                curve.fibers_ok = Some(sw.passed());
                let deficits: Vec<u64> = sw.fibers.iter().map(|f| f.deficit).collect();
                checks.push(Check::new(
                    "fibers",
                    sw.passed(),
                    format!(
                        "values without a simple root: {}, deficits {deficits:?}",
                        sw.without_simple_root.len()
                    ),
                ));
            }
            Err(e) => checks.push(Check::skipped("fibers", e.to_string())),
        }
    });

    let points = timed(&mut timings, "points", || count_points(c, &opts.bounds));
    match &points {
        Ok(pc) => {
            curve.n_bruteforce = Some(pc.total());
            match pc.direct {
                Some(d) => checks.push(Check::new(
                    "points.methods_agree",
                    pc.agree(),
                    format!("direct {d}, fiber {}", pc.fiber),
                )),
                None => checks.push(Check::skipped(
                    "points.methods_agree",
                    "direct double loop exceeds its bound",
                )),
            }
            checks.push(Check::new(
                "points.formula",
                BigUint::from(pc.total()) == *c.n_formula(),
                format!("counted {}, q^(2n-1)+1 = {}", pc.total(), c.n_formula()),
            ));
        }
        Err(e) => {
            checks.push(Check::skipped("points.methods_agree", e.to_string()));
            checks.push(Check::skipped("points.formula", e.to_string()));
        }
    }

    if c.genus_formula().is_none() {
        checks.push(Check::skipped(
            "genus",
            format!("gcd(delta, n) = {}: genus not certified", c.gcd_cert()),
        ));
    }

    let mut semigroup = None;
    let mut valuations = None;
    if let Some(hp) = c.h_params().filter(|hp| hp.n >= 3) {
        let r = hp.r;
        let qb = BigUint::from(q);
        let qn1 = qb.pow(n - 1);
        let g_prop = qb.pow(r) * (&qn1 - 1u32) / 2u32;
        let g_thm = c.genus_formula().cloned();
        checks.push(Check::new(
            "genus.formulas_agree",
            g_thm.as_ref() == Some(&g_prop),
            format!(
                "(q^(n-1)-1)(deg u-1)/2 = {}, q^r(q^(n-1)-1)/2 = {g_prop}",
                opt(&g_thm)
            ),
        ));
        timed(
            &mut timings,
            "semigroup",
            || match weierstrass_generators(q, n, r).and_then(|g| NumericalSemigroup::new(&g)) {
                Ok(s) => {
                    let record = SemigroupRecord::new(&s);
                    checks.push(Check::new(
                        "genus.gap_count",
                        g_thm.as_ref() == Some(&BigUint::from(s.genus())),
                        format!("gaps {}, formula {}", s.genus(), opt(&g_thm)),
                    ));
                    checks.push(Check::new(
                        "semigroup.symmetric",
                        s.is_symmetric(),
                        format!("F = {}, g = {}", s.frobenius(), s.genus()),
                    ));
                    let tele = is_telescopic(s.gens()).unwrap_or(false);
                    checks.push(Check::new(
                        "semigroup.telescopic",
                        tele,
                        format!("{:?}", s.gens()),
                    ));
                    let tg = telescopic_genus(s.gens()).ok();
                    checks.push(Check::new(
                        "semigroup.telescopic_genus",
                        tg == Some(s.genus()),
                        format!("ladder formula {}, gaps {}", opt(&tg), s.genus()),
                    ));
                    let castle = points
                        .as_ref()
                        .ok()
                        .map(|pc| castle_check(pc.total(), field.order() as u64, &s));
                    match castle {
                        Some(ok) => checks.push(Check::new(
                            "castle",
                            ok,
                            format!(
                                "q^n m_2 + 1 = {}",
                                field.order() as u64 * s.multiplicity() + 1
                            ),
                        )),
                        None => checks.push(Check::skipped("castle", "point count skipped")),
                    }
                    let variant = qb.pow(r) * (&qn1 + 1u32) / 2u32;
                    semigroup = Some(SemigroupSection {
                        record,
                        telescopic_genus: tg,
                        castle,
                        genus_plus_one_variant: GenusVariant {
                            expression: "q^r(q^(n-1)+1)/2",
                            equals_gap_count: variant == BigUint::from(s.genus()),
                            value: variant,
                        },
                    });
                }
                Err(e) => checks.push(Check::new("semigroup", false, e.to_string())),
            },
        );

        timed(&mut timings, "poles", || {
            match verify_pole_orders(c, opts.max_iters) {
                Ok(rep) => {
                    for e in &rep.entries {
                        checks.push(Check::new(
                            format!("pole.{}", e.function),
                            e.passed(),
                            format!(
                                "{} (expected {}, {} rounds)",
                                e.pole_order, e.expected, e.iterations
                            ),
                        ));
                    }
                    valuations = Some(rep);
                }
                Err(e) => checks.push(Check::new("pole", false, e.to_string())),
            }
        });

        timed(&mut timings, "identities", || {
            match check_yqn_identity(c) {
                Ok(ok) => checks.push(Check::new("identity.yqn", ok, "f^q - f")),
                Err(e) => checks.push(Check::new("identity.yqn", false, e.to_string())),
            }
            if q <= SNM_MAX_Q && n <= SNM_MAX_N {
                let bad: Vec<u32> = (0..n)
                    .filter(|&m| check_snm_identity(m, n, q) != Ok(true))
                    .collect();
                checks.push(Check::new(
                    "identity.snm",
                    bad.is_empty(),
                    format!("failing m: {bad:?}"),
                ));
            } else {
                checks.push(Check::skipped(
                    "identity.snm",
                    format!("only run for q <= {SNM_MAX_Q}, n <= {SNM_MAX_N}"),
                ));
            }
        });
    }

    let verdict = if checks.iter().any(Check::failed) {
        Verdict::Fail
    } else if checks.iter().any(|c| c.status == Status::Skipped) {
        Verdict::Incomplete
    } else {
        Verdict::Pass
    };
    CertReport {
        field: FieldHeader {
            q,
            spec: field.spec().clone(),
        },
        profile: ProfileRecord::new(pr),
        curve,
        valuations,
        semigroup,
        checks,
        verdict,
        timings_ms: timings,
    }
}

/// Splits q into (p, e) and builds F_{q^n}.
pub fn field_for(q: u64, n: u32) -> Result<Field> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("q = {q} is not a prime power")))?;
    Field::new(p, e, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileSet {
    All,
    HFamily,
}

/// A CSV cell that may be empty (not applicable) or skipped (over a bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell<T> {
    Value(T),
    Empty,
    Skipped,
}

impl<T: ToString> Cell<T> {
    fn render(&self) -> String {
        match self {
            Cell::Value(v) => v.to_string(),
            Cell::Empty => String::new(),
            Cell::Skipped => "skipped".into(),
        }
    }
}

impl<T> From<Option<T>> for Cell<T> {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Cell::Value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub q: u64,
    pub n: u32,
    pub r_list: Vec<u32>,
    pub deg_f: Cell<BigUint>,
    pub deg_u: Cell<BigUint>,
    pub n_formula: BigUint,
    pub n_bruteforce: Cell<u64>,
    pub genus_formula: Cell<BigUint>,
    pub genus_semigroup: Cell<u64>,
    pub mvsp_ok: Cell<bool>,
    pub symmetric: Cell<bool>,
    pub telescopic: Cell<bool>,
    pub castle: Cell<bool>,
    pub n_gs: Cell<BigUint>,
    pub genus_gs: Cell<BigUint>,
    /// Reasons for every skipped cell.
    pub skipped: Vec<String>,
}

pub const CSV_HEADER: &str = "q,n,r_list,deg_f,deg_u,N_formula,N_bruteforce,genus_formula,genus_semigroup,mvsp_ok,symmetric,telescopic,castle,ratio_N_over_g,N_gs,genus_gs,ratio_N_over_g_gs";

fn ratio(num: &BigUint, den: &Cell<BigUint>) -> Cell<f64> {
    match den {
        Cell::Value(d) if d.to_f64().is_some_and(|d| d > 0.0) => {
            Cell::Value(num.to_f64().unwrap() / d.to_f64().unwrap())
        }
        Cell::Skipped => Cell::Skipped,
        _ => Cell::Empty,
    }
}

/// [a;b;c]
pub fn render_list(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(";"))
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        let ratio_h = ratio(&self.n_formula, &self.genus_formula);
        let n_ref = match &self.n_gs {
            Cell::Value(v) => v.clone(),
            _ => self.n_formula.clone(),
        };
        let ratio_gs = match &self.n_gs {
            Cell::Value(_) => ratio(&n_ref, &self.genus_gs),
            _ => Cell::Empty,
        };
        [
            self.q.to_string(),
            self.n.to_string(),
            render_list(&self.r_list),
            self.deg_f.render(),
            self.deg_u.render(),
            self.n_formula.to_string(),
            self.n_bruteforce.render(),
            self.genus_formula.render(),
            self.genus_semigroup.render(),
            self.mvsp_ok.render(),
            self.symmetric.render(),
            self.telescopic.render(),
            self.castle.render(),
            ratio_h.render(),
            self.n_gs.render(),
            self.genus_gs.render(),
            ratio_gs.render(),
        ]
        .join(",")
    }
}

fn sweep_row(
    q: u64,
    n: u32,
    r_list: &[u32],
    field: &std::result::Result<Field, Error>,
    bounds: &EnumBounds,
) -> SweepRow {
    let qb = BigUint::from(q);
    let refs = (n >= 2).then(|| reference_formulas(q, n).ok()).flatten();
    let mut row = SweepRow {
        q,
        n,
        r_list: r_list.to_vec(),
        deg_f: Cell::Skipped,
        deg_u: Cell::Skipped,
        n_formula: qb.pow(2 * n - 1) + 1u32,
        n_bruteforce: Cell::Skipped,
        genus_formula: Cell::Skipped,
        genus_semigroup: Cell::Empty,
        mvsp_ok: Cell::Skipped,
        symmetric: Cell::Empty,
        telescopic: Cell::Empty,
        castle: Cell::Empty,
        n_gs: refs.as_ref().map(|r| r.n_gs.clone()).into(),
        genus_gs: refs.as_ref().map(|r| r.g_gs.clone()).into(),
        skipped: Vec::new(),
    };
    let field = match field {
        Ok(f) => f,
        Err(e) => {
            row.skipped.push(format!("field: {e}"));
            return row;
        }
    };
    let c = match Profile::new(n, r_list, field) {
        Ok(pr) => CurveInstance::new(pr),
        Err(e) => {
            row.skipped.push(format!("profile: {e}"));
            return row;
        }
    };
    row.deg_f = c.f().degree().cloned().into();
    row.deg_u = c.u().degree().cloned().into();
    row.genus_formula = c.genus_formula().cloned().into();
    match value_set_check(&c, bounds) {
        Ok(vs) => row.mvsp_ok = Cell::Value(vs.passed()),
        Err(e) => row.skipped.push(format!("mvsp_ok: {e}")),
    }
    let points = count_points(&c, bounds);
    match &points {
        Ok(pc) if pc.agree() => row.n_bruteforce = Cell::Value(pc.total()),
        Ok(pc) => row
            .skipped
            .push(format!("N_bruteforce: methods disagree {pc:?}")),
        Err(e) => row.skipped.push(format!("N_bruteforce: {e}")),
    }
    if let Some(hp) = c.h_params().filter(|hp| hp.n >= 3) {
        if let Ok(s) = weierstrass_generators(q, n, hp.r).and_then(|g| NumericalSemigroup::new(&g))
        {
            row.genus_semigroup = Cell::Value(s.genus());
            row.symmetric = Cell::Value(s.is_symmetric());
            row.telescopic = Cell::Value(is_telescopic(s.gens()).unwrap_or(false));
            row.castle = match &points {
                Ok(pc) => Cell::Value(castle_check(pc.total(), field.order() as u64, &s)),
                Err(_) => Cell::Skipped,
            };
        }
    }
    row
}

/// One row per (q, n, r) in the requested ranges, ordered by (q, n, r_list).
pub fn sweep(
    q_list: &[u64],
    n_values: &[u32],
    profiles: ProfileSet,
    bounds: &EnumBounds,
) -> Result<Vec<SweepRow>> {
    for &q in q_list {
        if prime_power(q).is_none() {
            return Err(Error::InvalidParameter(format!(
                "q = {q} is not a prime power"
            )));
        }
    }
    let mut jobs: Vec<(u64, u32, Vec<u32>)> = Vec::new();
    for &q in q_list {
        for &n in n_values {
            if n == 0 {
                continue;
            }
            match profiles {
                ProfileSet::HFamily => {
                    if let Ok(r) = h_exponent(n) {
                        jobs.push((q, n, vec![0, r]));
                    }
                }
                ProfileSet::All => {
                    if n > 20 {
                        return Err(Error::InvalidParameter(format!(
                            "n = {n} too large to list every profile"
                        )));
                    }
                    for mask in 0..(1u32 << (n - 1)) {
                        let mut r = vec![0];
                        r.extend((1..n).filter(|i| mask >> (i - 1) & 1 == 1));
                        jobs.push((q, n, r));
                    }
                }
            }
        }
    }
    jobs.sort();
    jobs.dedup();
    let mut fields: BTreeMap<(u64, u32), std::result::Result<Field, Error>> = BTreeMap::new();
    for (q, n, _) in &jobs {
        fields.entry((*q, *n)).or_insert_with(|| field_for(*q, *n));
    }
    Ok(jobs
        .par_iter()
        .map(|(q, n, r)| sweep_row(*q, *n, r, &fields[&(*q, *n)], bounds))
        .collect())
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::h_family;

    #[test]
    fn certify_h_2_5() {
        let rep = certify(&h_family(2, 5).unwrap(), &CertifyOptions::default());
        assert_eq!(
            rep.verdict,
            Verdict::Pass,
            "{:?}",
            rep.failures().collect::<Vec<_>>()
        );
        assert_eq!(rep.curve.n_bruteforce, Some(513));
        assert_eq!(rep.curve.genus_formula, Some(60u32.into()));
        let sg = rep.semigroup.as_ref().unwrap();
        assert_eq!(sg.record.genus, 60);
        assert!(!sg.genus_plus_one_variant.equals_gap_count);
    }

    #[test]
    fn certify_tuple_0_2_is_the_h_instance() {
        let field = Field::new(2, 1, 3).unwrap();
        let c = CurveInstance::new(Profile::new(3, &[0, 2], &field).unwrap());
        let rep = certify(&c, &CertifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.curve.n_bruteforce, Some(33));
        assert_eq!(rep.semigroup.unwrap().castle, Some(true));
    }

    #[test]
    fn certify_h_3_3() {
        let rep = certify(&h_family(3, 3).unwrap(), &CertifyOptions::default());
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.curve.n_bruteforce, Some(244));
        assert_eq!(rep.curve.genus_formula, Some(36u32.into()));
        assert_eq!(rep.semigroup.unwrap().record.gens, vec![9, 12, 30, 28, 64]);
    }

    #[test]
    fn tight_bounds_give_incomplete() {
        let opts = CertifyOptions {
            bounds: EnumBounds::from_max_enum(8),
            ..Default::default()
        };
        let rep = certify(&h_family(2, 5).unwrap(), &opts);
        assert_eq!(rep.verdict, Verdict::Incomplete);
        assert_eq!(rep.check("points.formula").unwrap().status, Status::Skipped);
        assert_eq!(rep.curve.n_bruteforce, None);
    }

    #[test]
    fn uncertified_genus_is_reported() {
        let field = Field::new(2, 1, 4).unwrap();
        let c = CurveInstance::new(Profile::new(4, &[0, 2], &field).unwrap());
        let rep = certify(&c, &CertifyOptions::default());
        assert_eq!(rep.check("genus").unwrap().status, Status::Skipped);
        assert!(rep.failures().next().is_none());
    }

    #[test]
    fn sweep_rows_and_ratios() {
        let rows = sweep(
            &[2],
            &[3, 4, 5],
            ProfileSet::HFamily,
            &EnumBounds::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.castle == Cell::Value(true)));
        let line = rows[2].to_csv();
        assert_eq!(
            line,
            "2,5,[0;3],20,9,513,513,60,60,true,true,true,true,8.55,513,120,4.275"
        );
        let csv = sweep_csv(&[]);
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn sweep_all_profiles_is_sorted() {
        let rows = sweep(&[3, 2], &[4, 3], ProfileSet::All, &EnumBounds::default()).unwrap();
        assert_eq!(rows.len(), 2 * (4 + 8));
        let keys: Vec<_> = rows.iter().map(|r| (r.q, r.n, r.r_list.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(rows.iter().all(|r| r.mvsp_ok == Cell::Value(true)));
    }
}

//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion does.

use mvsp_core::curve::{count_points, h_family, value_set_check, CurveInstance, EnumBounds};
use mvsp_core::mvsp::{check_structure, Profile};
use mvsp_core::nsg::{
    castle_check, is_telescopic, telescopic_genus, weierstrass_generators, NumericalSemigroup,
};
use mvsp_core::report::{field_for, sweep, Cell, ProfileSet};
use mvsp_core::wsg::{check_snm_identity, check_yqn_identity, verify_pole_orders};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H_INSTANCES: [(u64, u32); 6] = [(2, 3), (2, 4), (2, 5), (2, 7), (3, 3), (4, 3)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn h(q: u64, n: u32) -> Result<CurveInstance, String> {
    h_family(q, n).map_err(|e| format!("({q},{n}): {e}"))
}

fn point_counts() -> Outcome {
    let bounds = EnumBounds::default();
    let mut seen = Vec::new();
    for (q, n) in H_INSTANCES {
        let c = h(q, n)?;
        let pc = count_points(&c, &bounds).map_err(|e| e.to_string())?;
        let expected = pow(q, 2 * n - 1) + 1u32;
        ensure(BigUint::from(pc.total()) == expected, || {
            format!("({q},{n}): counted {}, expected {expected}", pc.total())
        })?;
        ensure(pc.agree(), || {
            format!("({q},{n}): enumeration methods disagree {pc:?}")
        })?;
        seen.push(format!("({q},{n})={}", pc.total()));
    }
    Ok(seen.join(" "))
}

fn genus_triple() -> Outcome {
    let mut seen = Vec::new();
    for (q, n) in H_INSTANCES {
        let c = h(q, n)?;
        let r = c.h_params().unwrap().r;
        let from_u = c.genus_formula().cloned().ok_or("genus not certified")?;
        let deg_u = c.u().degree().cloned().unwrap();
        ensure(
            from_u == (pow(q, n - 1) - 1u32) * (deg_u - 1u32) / 2u32,
            || "deg u form".into(),
        )?;
        let closed_form = pow(q, r) * (pow(q, n - 1) - 1u32) / 2u32;
        let s =
            NumericalSemigroup::new(&weierstrass_generators(q, n, r).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let gaps = BigUint::from(s.genus());
        ensure(from_u == closed_form && closed_form == gaps, || {
            format!("({q},{n}): {from_u} / {closed_form} / {gaps}")
        })?;
        let plus = pow(q, r) * (pow(q, n - 1) + 1u32) / 2u32;
        ensure(plus != gaps, || {
            format!("({q},{n}): q^r(q^(n-1)+1)/2 = {plus} matches the gap count")
        })?;
        seen.push(format!("({q},{n})={gaps}"));
    }
    Ok(format!(
        "{}; q^r(q^(n-1)+1)/2 never equals the gap count",
        seen.join(" ")
    ))
}

fn mvsp_certification() -> Outcome {
    let bounds = EnumBounds::default();
    let mut curves = Vec::new();
    for (q, n) in H_INSTANCES {
        curves.push(h(q, n)?);
    }
    for q in [2u64, 3] {
        curves.push(h(q, 2)?);
        for n in 2..=4u32 {
            let field = field_for(q, n).map_err(|e| e.to_string())?;
            let r: Vec<u32> = (0..n).collect();
            curves.push(CurveInstance::new(
                Profile::new(n, &r, &field).map_err(|e| e.to_string())?,
            ));
        }
    }
    for c in &curves {
        let vs = value_set_check(c, &bounds).map_err(|e| e.to_string())?;
        let qn = c.field().order() as u64;
        let expected = (qn - 1) / c.deg_f() + 1;
        let tag = format!(
            "({},{},{:?})",
            c.profile().q(),
            c.profile().n(),
            c.profile().r_list()
        );
        ensure(vs.equals_base_field, || format!("{tag}: V_f != F_q"))?;
        ensure(vs.values.len() as u64 == expected, || {
            format!("{tag}: #V_f = {}, expected {expected}", vs.values.len())
        })?;
    }
    Ok(format!("{} instances", curves.len()))
}

fn pole_orders() -> Outcome {
    let mut seen = Vec::new();
    for (q, n, r) in [(2u64, 3u32, 2u32), (2, 5, 3), (3, 3, 2)] {
        let c = h(q, n)?;
        ensure(c.h_params().unwrap().r == r, || "unexpected r".into())?;
        let rep = verify_pole_orders(&c, 3).map_err(|e| format!("({q},{n},{r}): {e}"))?;
        ensure(rep.passed(), || format!("({q},{n},{r}): {:?}", rep.entries))?;
        let names: std::collections::BTreeSet<&str> = rep
            .entries
            .iter()
            .map(|e| e.function.split('[').next().unwrap())
            .collect();
        ensure(names.len() == 5, || {
            format!("({q},{n},{r}): functions {names:?}")
        })?;
        let orders: Vec<String> = rep.pole_orders().iter().map(ToString::to_string).collect();
        seen.push(format!(
            "({q},{n},{r})=[{}] rounds<={}",
            orders.join(","),
            rep.max_iterations()
        ));
    }
    Ok(seen.join(" "))
}

fn identities() -> Outcome {
    let mut count = 0;
    for q in [2u64, 3, 4] {
        for n in 1..=5u32 {
            for m in 0..n {
                ensure(check_snm_identity(m, n, q) == Ok(true), || {
                    format!("S_(m,n) fails at q={q} m={m} n={n}")
                })?;
                count += 1;
            }
        }
    }
    for (q, n) in H_INSTANCES {
        ensure(check_yqn_identity(&h(q, n)?) == Ok(true), || {
            format!("y^(q^n) identity fails at ({q},{n})")
        })?;
    }
    Ok(format!(
        "{count} (m,n,q) triples, {} curves",
        H_INSTANCES.len()
    ))
}

fn semigroup_structure() -> Outcome {
    let bounds = EnumBounds::default();
    for (q, n) in H_INSTANCES {
        let c = h(q, n)?;
        let gens =
            weierstrass_generators(q, n, c.h_params().unwrap().r).map_err(|e| e.to_string())?;
        let s = NumericalSemigroup::new(&gens).map_err(|e| e.to_string())?;
        let points = count_points(&c, &bounds)
            .map_err(|e| e.to_string())?
            .total();
        ensure(is_telescopic(&gens) == Ok(true), || {
            format!("({q},{n}): {gens:?} not telescopic")
        })?;
        ensure(s.is_symmetric(), || format!("({q},{n}): not symmetric"))?;
        ensure(telescopic_genus(&gens) == Ok(s.genus()), || {
            format!("({q},{n}): telescopic genus")
        })?;
        ensure(castle_check(points, c.field().order() as u64, &s), || {
            format!("({q},{n}): castle")
        })?;
    }
    Ok(format!("{} instances", H_INSTANCES.len()))
}

fn random_profile(rng: &mut ChaCha8Rng) -> (u64, u32, Vec<u32>) {
    let q = [2u64, 3][rng.gen_range(0..2)];
    let n = rng.gen_range(1..=7u32);
    let mut r = vec![0];
    r.extend((1..n).filter(|_| rng.gen_bool(0.5)));
    (q, n, r)
}

fn structure_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut t_seen = std::collections::BTreeSet::new();
    for _ in 0..200 {
        let (q, n, r) = random_profile(&mut rng);
        let field = field_for(q, n).map_err(|e| e.to_string())?;
        let pr = Profile::new(n, &r, &field).map_err(|e| e.to_string())?;
        t_seen.insert(pr.t());
        let rep = check_structure(&pr);
        ensure(rep.passed(), || {
            let bad: Vec<_> = rep.failures().map(|c| c.name).collect();
            format!("q={q} n={n} r={r:?}: {bad:?}")
        })?;
    }
    Ok(format!("200 profiles, t in {t_seen:?}"))
}

/// d_0 > d_1 > ... > d_k = 1 with each dividing the previous; a_i = d_i b_i
/// where b_i lies in the semigroup spanned by a_j / d_(i-1) and is prime to
/// d_(i-1) / d_i.
fn random_telescopic(rng: &mut ChaCha8Rng) -> Vec<u64> {
    let k = rng.gen_range(1..=4);
    let factors: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=5)).collect();
    let mut d = vec![factors.iter().product::<u64>()];
    for f in &factors {
        d.push(d.last().unwrap() / f);
    }
    let mut a = vec![d[0]];
    for i in 1..=k {
        let ratio = d[i - 1] / d[i];
        loop {
            let b: u64 = a
                .iter()
                .map(|&x| x / d[i - 1] * rng.gen_range(0..=3u64))
                .sum();
            if b > 0 && b.gcd(&ratio) == 1 {
                a.push(d[i] * b);
                break;
            }
        }
    }
    a
}

fn gap_count(gens: &[u64]) -> u64 {
    let s = NumericalSemigroup::new(gens).unwrap();
    let conductor = s.conductor();
    let mut member = vec![false; conductor as usize + 1];
    member[0] = true;
    for x in 1..=conductor as usize {
        member[x] = gens
            .iter()
            .any(|&g| g as usize <= x && member[x - g as usize]);
    }
    member.iter().filter(|m| !**m).count() as u64
}

fn telescopic_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..100 {
        let gens = random_telescopic(&mut rng);
        ensure(is_telescopic(&gens) == Ok(true), || {
            format!("{gens:?} not telescopic")
        })?;
        let g = gap_count(&gens);
        ensure(telescopic_genus(&gens) == Ok(g), || {
            format!("{gens:?}: formula {:?}, gaps {g}", telescopic_genus(&gens))
        })?;
    }
    for q in 2..=9u64 {
        ensure(telescopic_genus(&[q, q + 1]) == Ok(q * (q - 1) / 2), || {
            format!("({q},{})", q + 1)
        })?;
    }
    Ok("100 random sequences and (q,q+1) for q=2..9".into())
}

fn comparison_table() -> Outcome {
    let rows = sweep(&[2], &[5], ProfileSet::HFamily, &EnumBounds::default())
        .map_err(|e| e.to_string())?;
    let row = rows.first().ok_or("no row")?;
    let v = |c: &Cell<BigUint>| match c {
        Cell::Value(x) => x.to_string(),
        _ => "missing".into(),
    };
    let got = (
        row.n_formula.to_string(),
        row.n_bruteforce.clone(),
        v(&row.n_gs),
        v(&row.genus_formula),
        v(&row.genus_gs),
    );
    let want = (
        "513".to_string(),
        Cell::Value(513),
        "513".to_string(),
        "60".to_string(),
        "120".to_string(),
    );
    ensure(got == want, || format!("{got:?}"))?;
    let line = row.to_csv();
    ensure(line.ends_with(",8.55,513,120,4.275"), || line.clone())?;
    Ok(format!("N_H = N_GS = 513, g_H = 60, g_GS = 120: {line}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 point counts", point_counts),
        ("2 genus triple", genus_triple),
        ("3 minimal value sets", mvsp_certification),
        ("4 pole orders", pole_orders),
        ("5 identities", identities),
        ("6 semigroup structure", semigroup_structure),
        ("7 structure sweep", structure_sweep),
        ("8 telescopic genus oracle", telescopic_oracle),
        ("9 comparison table", comparison_table),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

use std::process::{Command, Output};

fn mvsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvsp"))
        .args(args)
        .env_remove("MVSP_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn construct_tuple_0_2() {
    let o = mvsp(&["construct", "--q", "2", "--n", "3", "--r-tuple", "0,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let f_line = out.lines().find(|l| l.starts_with("f = ")).unwrap();
    assert_eq!(f_line.replace(' ', ""), "f=x^6+x^5+x^3");
    let rec: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(rec["deg_f"], 6);
    assert_eq!(rec["delta"], serde_json::json!([1, 2]));
}

#[test]
fn construct_h_family_2_5() {
    let o = mvsp(&["construct", "--q", "2", "--n", "5", "--h-family"]);
    assert_eq!(o.status.code(), Some(0));
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(rec["r_list"], serde_json::json!([0, 3]));
    assert_eq!(rec["deg_f"], 20);
}

#[test]
fn construct_rejects_unsorted_tuple() {
    let o = mvsp(&["construct", "--q", "2", "--n", "3", "--r-tuple", "2,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r_list not strictly increasing from 0"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["construct", "--q", "2", "--n", "3"][..],
        &[
            "construct",
            "--q",
            "2",
            "--n",
            "3",
            "--r-tuple",
            "0,2",
            "--h-family",
        ],
        &["construct", "--q", "x", "--n", "3", "--h-family"],
        &["sweep", "--q-list", "2", "--n-range", "a..b"],
        &[
            "certify",
            "--q",
            "2",
            "--n",
            "3",
            "--h-family",
            "--out",
            "xml",
        ],
    ] {
        assert_eq!(mvsp(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn invalid_field_exits_1() {
    let o = mvsp(&["construct", "--q", "6", "--n", "3", "--h-family"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn certify_h_2_5() {
    let o = mvsp(&["certify", "--q", "2", "--n", "5", "--h-family"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["curve"]["N_bruteforce"], 513);
    assert_eq!(v["curve"]["genus_formula"], 60);
    assert_eq!(v["semigroup"]["genus"], 60);
}

#[test]
fn certify_tuple_0_2() {
    let o = mvsp(&["certify", "--q", "2", "--n", "3", "--r-tuple", "0,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["curve"]["N_bruteforce"], 33);
    assert_eq!(v["curve"]["genus_formula"], 6);
    assert_eq!(v["semigroup"]["castle"], true);
}

#[test]
fn certify_h_3_3() {
    let o = mvsp(&["certify", "--q", "3", "--n", "3", "--h-family"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["curve"]["N_bruteforce"], 244);
    assert_eq!(v["curve"]["genus_formula"], 36);
    assert_eq!(
        v["semigroup"]["gens"],
        serde_json::json!([9, 12, 30, 28, 64])
    );
}

#[test]
fn certify_is_deterministic_apart_from_timings() {
    let args = ["certify", "--q", "2", "--n", "4", "--h-family"];
    let mut a = json(&mvsp(&args));
    let mut b = json(&mvsp(&args));
    assert!(a.as_object_mut().unwrap().remove("timings_ms").is_some());
    b.as_object_mut().unwrap().remove("timings_ms");
    assert_eq!(a, b);
}

#[test]
fn certify_text_output() {
    let o = mvsp(&[
        "certify",
        "--q",
        "2",
        "--n",
        "3",
        "--h-family",
        "--out",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS points.formula"));
    assert!(out.trim_end().ends_with("verdict    Pass"));
}

#[test]
fn small_bound_is_incomplete() {
    let o = mvsp(&[
        "certify",
        "--q",
        "2",
        "--n",
        "5",
        "--h-family",
        "--max-enum",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "incomplete");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "skipped"));
}

#[test]
fn env_bound_applies_and_flag_wins() {
    let run = |flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_mvsp"));
        cmd.args(["certify", "--q", "2", "--n", "4", "--h-family"])
            .env("MVSP_MAX_ENUM", "4");
        if let Some(f) = flag {
            cmd.args(["--max-enum", f]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None), Some(1));
    assert_eq!(run(Some("100000")), Some(0));
}

#[test]
fn sweep_h_family_2() {
    let o = mvsp(&[
        "sweep",
        "--q-list",
        "2",
        "--n-range",
        "3..5",
        "--profiles",
        "h-family",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    let header: Vec<&str> = lines[0].split(',').collect();
    let castle = header.iter().position(|h| *h == "castle").unwrap();
    for l in &lines[1..] {
        assert_eq!(l.split(',').nth(castle), Some("true"));
    }
    let row: Vec<&str> = lines[3].split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("N_formula"), "513");
    assert_eq!(col("N_gs"), "513");
    assert_eq!(col("genus_formula"), "60");
    assert_eq!(col("genus_gs"), "120");
    assert_eq!(col("ratio_N_over_g"), "8.55");
    assert_eq!(col("ratio_N_over_g_gs"), "4.275");
}

#[test]
fn sweep_empty_range_is_header_only() {
    let o = mvsp(&["sweep", "--q-list", "2", "--n-range", "5..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn sweep_dash_range_matches_dot_range() {
    let a = mvsp(&[
        "sweep",
        "--q-list",
        "2,3",
        "--n-range",
        "3-4",
        "--profiles",
        "all",
    ]);
    let b = mvsp(&[
        "sweep",
        "--q-list",
        "3,2",
        "--n-range",
        "3..4",
        "--profiles",
        "all",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 2 * (4 + 8));
}

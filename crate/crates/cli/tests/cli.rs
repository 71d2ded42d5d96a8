use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kakeya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kakeya"))
        .args(args)
        .env_remove("KAKEYA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn bound_ceiling_and_csv() {
    let o = kakeya(&["bound", "--q", "5", "--n", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ceiling=29"), "{}", stdout(&o));

    let o = kakeya(&["bound", "--q", "5", "--n", "3", "--m", "2", "--csv"]);
    assert_eq!(stdout(&o), "q,n,m,N,denom,bound_ceiling\n5,3,2,115,4,29\n");

    let o = kakeya(&[
        "bound",
        "--q",
        "3",
        "--n",
        "2",
        "--optimize",
        "--m-cap",
        "4",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["best"]["m"], 1);
    assert_eq!(v["best"]["ceiling"], "6");
    assert_eq!(v["scan"].as_array().unwrap().len(), 4);
}

#[test]
fn construct_verify_round_trip_every_variant() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (2, "even"),
        (4, "even"),
        (8, "even"),
        (3, "odd"),
        (5, "odd"),
        (9, "odd"),
        (5, "recursive-odd"),
        (7, "even-style-odd"),
    ];
    for (q, variant) in cases {
        for n in ["2", "3"] {
            let set = dir.path().join(format!("{variant}-{q}-{n}.json"));
            let wit = dir.path().join(format!("{variant}-{q}-{n}-w.json"));
            let qs = q.to_string();
            let o = kakeya(&[
                "construct",
                "--q",
                &qs,
                "--n",
                n,
                "--variant",
                variant,
                "--out",
                set.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0), "{variant} q={q}");
            let o = kakeya(&[
                "verify",
                "--in",
                set.to_str().unwrap(),
                "--witnesses",
                wit.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0), "{variant} q={q}: {}", stdout(&o));
            let v = read_json(&wit);
            assert_eq!(v["format"], 1);
            assert_eq!(v["kakeya"], true);
            let dirs = if n == "2" { q + 1 } else { q * q + q + 1 };
            assert_eq!(v["witnesses"].as_array().unwrap().len(), dirs);
        }
    }
}

#[test]
fn verify_negative_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("line.json");
    std::fs::write(
        &p,
        r#"{"format":1,"q":3,"n":2,"points":[[0,0],[1,0],[2,0]]}"#,
    )
    .unwrap();
    let w = dir.path().join("w.json");
    let o = kakeya(&[
        "verify",
        "--in",
        p.to_str().unwrap(),
        "--witnesses",
        w.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("[0, 1]"));
    let v = read_json(&w);
    assert_eq!(v["kakeya"], false);
    assert_eq!(v["failing_direction"], serde_json::json!([0, 1]));
}

#[test]
fn usage_and_data_errors_exit_1() {
    assert_eq!(kakeya(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        kakeya(&["bound", "--q", "5", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        kakeya(&["construct", "--q", "6", "--n", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        kakeya(&["construct", "--q", "4", "--n", "2", "--variant", "odd"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        kakeya(&["verify", "--in", "/nonexistent/set.json"])
            .status
            .code(),
        Some(1)
    );
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"format":1,"q":3,"n":2,"points":[[0,3]]}"#).unwrap();
    assert_eq!(
        kakeya(&["verify", "--in", p.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn vanish_success_and_precondition() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    std::fs::write(
        &pts,
        r#"{"format":1,"q":3,"n":2,"points":[[0,0],[1,1],[2,0]]}"#,
    )
    .unwrap();
    let out = dir.path().join("g.json");
    let o = kakeya(&[
        "vanish",
        "--q",
        "3",
        "--n",
        "2",
        "--m",
        "1",
        "--points",
        pts.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let g = read_json(&out);
    assert_eq!(g["q"], 3);
    assert!(!g["terms"].as_array().unwrap().is_empty());

    let set = dir.path().join("k.json");
    kakeya(&[
        "construct",
        "--q",
        "5",
        "--n",
        "2",
        "--out",
        set.to_str().unwrap(),
    ]);
    let o = kakeya(&[
        "vanish",
        "--q",
        "5",
        "--n",
        "2",
        "--m",
        "1",
        "--points",
        set.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("precondition unmet"));

    let o = kakeya(&[
        "vanish",
        "--q",
        "5",
        "--n",
        "3",
        "--m",
        "1",
        "--points",
        pts.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn minsearch_writes_verifiable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("min.json");
    let o = kakeya(&[
        "minsearch",
        "--q",
        "5",
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("minimum |K| = 17"));
    assert_eq!(read_json(&out)["points"].as_array().unwrap().len(), 17);
    let o = kakeya(&["verify", "--in", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        kakeya(&["minsearch", "--q", "5", "--n", "3"]).status.code(),
        Some(1)
    );
}

#[test]
fn report_contains_preset_rows_and_is_deterministic() {
    let a = kakeya(&["report"]);
    let b = kakeya(&["--threads", "2", "report"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    for needle in [
        "c1=1/4 preset",
        "c1=1/2.6 preset",
        "n=3: 5/24·q³",
        "even-style-odd",
    ] {
        assert!(text.contains(needle), "missing {needle}");
    }
    assert!(text.contains("all presets hold: yes"));
}

#[test]
fn asym_json_and_seeded_monte_carlo() {
    let args = [
        "asym",
        "--alpha",
        "0.398",
        "--n-probe",
        "64",
        "--mc-samples",
        "2000",
        "--seed",
        "7",
        "--json",
    ];
    let a = kakeya(&args);
    let b = kakeya(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let c = v["exact"]["c_alpha"].as_f64().unwrap();
    assert!((1.0 / 2.51..=1.0 / 2.41).contains(&c));
    assert_eq!(v["monte_carlo"]["method"], "monte-carlo");
    assert_eq!(kakeya(&["asym", "--alpha", "1.5"]).status.code(), Some(1));
}

#[test]
fn construct_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    let o = kakeya(&["construct", "--q", "4", "--n", "2", "--variant", "even"]);
    kakeya(&[
        "construct",
        "--q",
        "4",
        "--n",
        "2",
        "--variant",
        "even",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.stdout, std::fs::read(&p).unwrap());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["provenance"], "even-construction");
}

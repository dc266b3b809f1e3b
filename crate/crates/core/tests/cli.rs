//! End-to-end runs of the `sgk` binary: report contents, exit codes, byte
//! stability against golden files, the tables command and the result cache.
//! Set `SGK_UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn sgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgk")).args(args).env_remove("SGK_CACHE_DIR").output().expect("run sgk")
}

fn json(args: &[&str]) -> Value {
    let out = sgk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("catalog_list.json", &["catalog", "list"]),
    ("classify_sklyanin_special.json", &["classify", "sklyanin_special"]),
    ("classify_skew3_2.csv", &["classify", "skew3_2", "--out", "csv"]),
    ("hilbert_quantum_plane.json", &["hilbert", "quantum_plane", "--degree", "6", "--check-closed-form"]),
    (
        "hilbert_heisenberg_weighted.json",
        &["hilbert", "heisenberg", "--degree", "6", "--weights", "1,1,2", "--check-closed-form"],
    ),
    ("koszul_non_sk_example.json", &["koszul", "non_sk_example", "--jmax", "4"]),
    ("koszul_quantum_plane.csv", &["koszul", "quantum_plane", "--jmax", "3", "--out", "csv"]),
    ("poincare_polynomial_3.json", &["poincare", "polynomial_3", "--degree", "8"]),
];

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("SGK_UPDATE_GOLDEN").is_some();
    for (file, args) in GOLDEN {
        let out = sgk(args);
        assert!(out.status.success(), "{args:?}");
        let again = sgk(args);
        assert_eq!(out.stdout, again.stdout, "{args:?}: output differs between runs");
        let path = golden_dir().join(file);
        if update {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(out.stdout == want, "{args:?} differs from {}", path.display());
    }
}

#[test]
fn hilbert_report_for_quantum_plane() {
    let r = json(&["hilbert", "quantum_plane", "--degree", "6", "--check-closed-form"]);
    assert_eq!(r["results"]["coefficients"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));
    assert_eq!(r["results"]["closed_form"]["message"], "matches 1/(1-t)^2");
}

#[test]
fn classify_reports_flags_without_failing() {
    let r = json(&["classify", "sklyanin_special"]);
    assert_eq!(r["results"]["pbw_shape"], false);
    let csv = sgk(&["classify", "sklyanin_special", "--out", "csv"]);
    assert!(csv.status.success());
}

#[test]
fn negative_koszul_findings_exit_zero() {
    let r = json(&["koszul", "non_sk_example", "--jmax", "4"]);
    assert_eq!(r["results"]["verdict"], "not_SK");
    assert_eq!(r["results"]["failing_j"], 4);
    let degrees = r["results"]["degrees"].as_array().unwrap();
    assert_eq!(degrees[2]["verdict"], "not_distributive");
    assert_eq!(degrees[2]["witness"].as_array().unwrap().len(), 3);

    // L_3 is generated by two subspaces and one containing both.
    let r = json(&["koszul", "non_sk_example", "--jmax", "3"]);
    assert_eq!(r["results"]["verdict"], "SK_up_to");
    let dims = &r["results"]["degrees"][1]["generator_dims"];
    let dim_of = |s: u64, g: u64, h: u64| {
        dims.as_array().unwrap().iter().find(|d| d["s"] == s && d["g"] == g && d["h"] == h).unwrap()["dim"].clone()
    };
    assert_eq!(dim_of(1, 2, 0), 4);
    assert_eq!(dim_of(0, 2, 1), 4);
}

#[test]
fn fail_fast_and_cap_hint() {
    let r = json(&["koszul", "non_sk_example", "--jmax", "5", "--fail-fast"]);
    assert_eq!(r["results"]["failing_j"], 4);
    let r = json(&["koszul", "pbw_qc_3", "--jmax", "4", "--cap", "3"]);
    assert_eq!(r["results"]["verdict"], "inconclusive");
    assert!(r["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("--cap")));
}

#[test]
fn operational_errors_exit_nonzero() {
    for args in [
        &["classify", "no_such_algebra"][..],
        &["--field", "Fp:4", "classify", "weyl"],
        &["--param", "q", "hilbert", "quantum_plane", "--degree", "3"],
        &["koszul", "weyl", "--jmax", "3"],
        &["hilbert", "quantum_plane", "--degree", "3", "--weights", "1,0"],
        &["tables", "/nonexistent/dir/for/tables", "--supply", "bogus=x.json"],
    ] {
        let out = sgk(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} should explain");
    }
    let out = sgk(&["classify", "no_such_algebra"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("catalog list"));
}

#[test]
fn overrides_and_presentation_files() {
    let r = json(&["--param", "q=3", "hilbert", "quantum_plane", "--degree", "4"]);
    assert_eq!(r["presentation"]["params"]["q"], "3");
    assert_eq!(r["presentation"]["relations"][0], "y*x - 3*x*y");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plane.json");
    std::fs::write(
        &file,
        r#"{"name": "plane", "generators": ["a", "b"], "field": {"kind": "Fp", "p": 7}, "relations": ["b*a - 3*a*b"]}"#,
    )
    .unwrap();
    let r = json(&["hilbert", file.to_str().unwrap(), "--degree", "5", "--check-closed-form"]);
    assert_eq!(r["presentation"]["field"], "Fp:7");
    assert_eq!(r["results"]["closed_form"]["matches"], true);
    let r = json(&["--field", "Q", "classify", file.to_str().unwrap()]);
    assert_eq!(r["results"]["quasi_commutative"], true);
}

#[test]
fn tables_are_written_and_supply_files_are_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgk(&["tables", dir.path().to_str().unwrap(), "--jmax", "3", "--degree", "6"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(dir.path().join("table1.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 26);
    let find = |key: &str| rows.iter().find(|r| &r[0] == key).unwrap().clone();
    assert_eq!(&find("jordan")[7], "MATCH");
    assert_eq!(&find("jordan")[3], "yes");
    assert_eq!(&find("jordan")[4], "yes");
    assert!(find("u_so3")[7].starts_with("relations not printed"));
    assert!(rows.iter().all(|r| &r[7] != "MISMATCH"));

    let mut rdr = csv::Reader::from_path(dir.path().join("table2.csv")).unwrap();
    let t2: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let poly = t2.iter().find(|r| &r[0] == "polynomial").unwrap();
    assert_eq!(&poly[4], "3");
    assert!(poly[5].starts_with("true"));

    let supplied = dir.path().join("so3_like.json");
    std::fs::write(
        &supplied,
        r#"{"name": "so3_like", "generators": ["x", "y", "z"],
            "relations": ["y*x - 2*x*y - z", "z*x - 1/2*x*z + y", "z*y - 2*y*z - x"]}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("with_supply");
    let out = sgk(&[
        "tables",
        out_dir.to_str().unwrap(),
        "--jmax",
        "3",
        "--supply",
        &format!("u_so3={}", supplied.display()),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(out_dir.join("table1.csv")).unwrap();
    let row = rdr.records().map(Result::unwrap).find(|r| &r[0] == "u_so3").unwrap();
    assert_eq!(&row[2], "so3_like");
    assert!(row[6].starts_with("SK_up_to"));
    assert_eq!(&row[7], "MATCH");
}

#[test]
fn cache_directory_memoizes_series() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_sgk"))
            .args(["hilbert", "heisenberg", "--degree", "6"])
            .env("SGK_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let cached: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(cached.len(), 1);
    let name = cached[0].to_string_lossy().into_owned();
    assert!(name.starts_with("hilbert-") && name.ends_with("-6.json"), "{name}");
    let parse = |o: &Output| serde_json::from_slice::<Value>(&o.stdout).unwrap();
    let (first, second) = (parse(&first), parse(&run()));
    assert_eq!(first["results"], second["results"]);
    assert_eq!(first["results"]["coefficients"], serde_json::json!([1, 3, 6, 10, 15, 21, 28]));
    assert!(second["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("SGK_CACHE_DIR")));
    assert_eq!(first, json(&["hilbert", "heisenberg", "--degree", "6"]));
}

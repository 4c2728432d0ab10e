use std::process::{Command, Output};

use symgen::cli::MatricesFile;
use symgen::exact::ExactMatrix;
use symgen::matrix_reps::sym_gen_matrix;
use symgen::perm::KSubset;
use symgen::progenitor::{Family, FamilySpec};

fn symgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_e6_prints_totals() {
    let o = symgen(&["enumerate", "--family", "E", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Index: 72, Rank: 5"), "{s}");
    assert!(s.contains("Coset Stabilizing subgroup order"));
    assert!(s.contains("[t{1,2,3} t{4,5,6} t{1,2,3}]"));
}

#[test]
fn enumerate_d5_json() {
    let o = symgen(&["enumerate", "--family", "D", "--n", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["index"], 16);
    assert_eq!(v["report"]["rank"], 3);
    assert_eq!(v["report"]["records"][2]["rep_word"], "t{1,2} t{3,4}");
    assert!(v["report"]["elapsed_ms"].is_number());
}

#[test]
fn experimental_e9_hits_the_cap() {
    let o = symgen(&["enumerate", "--family", "E", "--n", "9", "--experimental", "--cap", "100000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn bad_configs_exit_3() {
    for args in [
        &["enumerate", "--family", "E", "--n", "9"][..],
        &["enumerate", "--family", "E", "--n", "9", "--experimental"],
        &["verify", "--family", "D", "--n", "3"],
        &["enumerate", "--family", "A", "--n", "3", "--cap", "0"],
    ] {
        assert_eq!(symgen(args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn small_cap_exits_2() {
    let o = symgen(&["enumerate", "--family", "E", "--n", "6", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_e7_mod2() {
    let o = symgen(&["verify", "--family", "E", "--n", "7", "--mod2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[PASS] common fixed space is span{1^7}: span{1111111}"), "{s}");
    assert!(s.contains("[PASS] restricted form is symplectic"));
    assert!(s.contains("[PASS] 6-dim module is irreducible"));
    assert!(!s.contains("[FAIL]"));
}

#[test]
fn verify_a5_and_d4() {
    let o = symgen(&["verify", "--family", "A", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] t_i = (i,6)"));
    let o = symgen(&["verify", "--family", "D", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] e_ij e_ik = e_jk"));
}

#[test]
fn matrices_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e6.json");
    let o = symgen(&[
        "matrices", "--family", "E", "--n", "6", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let file = MatricesFile::load(&path).unwrap();
    assert_eq!((file.dim, file.generators.len(), file.control.len()), (6, 20, 5));
    let spec = FamilySpec::new(Family::E, 6).unwrap();
    let read = file.generator_matrices().unwrap();
    for (s, m) in KSubset::all(6, 3).unwrap().iter().zip(&read) {
        assert_eq!(m, &sym_gen_matrix(&spec, s).unwrap());
    }
    assert_eq!(file.generators[0].label, "t{1,2,3}");
    assert_eq!(file.generators[0].matrix.rows[0], vec!["1/3", "-2/3", "-2/3", "1/3", "1/3", "1/3"]);
    let again = ExactMatrix::from_json(&read[0].to_json()).unwrap();
    assert_eq!(again, read[0]);
}

#[test]
fn matrices_d4_mod2_are_permutations() {
    let o = symgen(&["matrices", "--family", "D", "--n", "4", "--mod2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let file: MatricesFile = serde_json::from_slice(&o.stdout).unwrap();
    let m2 = file.mod2.unwrap();
    assert_eq!(m2[0].label, "t{1,2}");
    assert_eq!(m2[0].rows, vec!["0100", "1000", "0010", "0001"]);
    for m in &m2 {
        assert!(m.rows.iter().all(|r| r.matches('1').count() == 1), "{}", m.label);
    }
}

#[test]
fn matrices_a3_text() {
    let o = symgen(&["matrices", "--family", "A", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("A_3 (dimension 4)"), "{s}");
    assert!(s.contains("t{1}"));
}

#[test]
fn all_is_deterministic_for_a_seed() {
    let run = || {
        let o = symgen(&["all", "--family", "D", "--n", "5", "--format", "json", "--seed", "7"]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["enumerate"]["report"]["elapsed_ms"] = serde_json::Value::Null;
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["passed"], true);
}

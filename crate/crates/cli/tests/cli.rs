use std::process::{Command, Output};

fn scd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scd")).args(args).env_remove("SCD_THREADS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn dot_for_b4_of_2() {
    let out = scd(&["crystal", "--n", "2", "--r", "4", "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 10);
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 8);
}

#[test]
fn json_for_b6_of_3() {
    let out = scd(&["crystal", "--n", "3", "--r", "6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 35);
    assert_eq!(nodes.iter().filter(|n| n["is_hw"] == true).count(), 5);
}

#[test]
fn missing_seed_is_a_usage_error() {
    let out = scd(&["crystal", "--n", "5", "--r", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no builtin seed"));
}

#[test]
fn character_of_b6_of_3() {
    let out = scd(&["character", "--n", "3", "--r", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[13] + [9] + [7] + [5] + [1]\n");
}

#[test]
fn recursions_hold_for_n4() {
    let out = scd(&["verify", "recursions", "--n", "4", "--r-max", "100"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn claims_for_n3_pass_with_two_warnings() {
    let out = scd(&["verify", "paper-claims", "--n", "3", "--r-max", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("warning:")).count(), 2);
    assert!(text.ends_with("pass (2 warning(s))\n"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["character", "--n", "4", "--r-max", "30"][..],
        &["constituents", "--n", "3", "--r-max", "25", "--format", "csv"][..],
        &["crystal", "--n", "4", "--r", "12", "--format", "json"][..],
    ] {
        let one = scd(&[&["--threads", "1"], args].concat());
        let four = scd(&[&["--threads", "4"], args].concat());
        assert!(one.status.success());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn malformed_seed_file_is_a_usage_error() {
    let path = fixture("zero_modulus.seed");
    let out = scd(&["crystal", "--n", "3", "--r", "5", "--seed-file", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 26"));
}

#[test]
fn shipped_seed_file_matches_builtin() {
    let path = format!("{}/../../seeds/s3.seed", env!("CARGO_MANIFEST_DIR"));
    let with_file = scd(&["crystal", "--n", "3", "--r", "9", "--seed-file", &path, "--format", "json"]);
    let builtin = scd(&["crystal", "--n", "3", "--r", "9", "--format", "json"]);
    assert!(with_file.status.success());
    assert_eq!(with_file.stdout, builtin.stdout);
}

#[test]
fn seed_file_for_another_n_is_rejected() {
    let path = format!("{}/../../seeds/s3.seed", env!("CARGO_MANIFEST_DIR"));
    let out = scd(&["crystal", "--n", "4", "--r", "9", "--seed-file", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scd_chains_cover_the_lattice() {
    let out = scd(&["scd", "--n", "3", "--m", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let chains = v["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 5);
    let total: usize = chains.iter().map(|c| c.as_array().unwrap().len()).sum();
    assert_eq!(total, 35);
}

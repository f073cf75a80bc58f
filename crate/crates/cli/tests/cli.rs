use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn brauerlift(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_brauerlift"));
    cmd.args(args).env_remove("BRAUERLIFT_CACHE");
    if let Some(dir) = cache {
        cmd.env("BRAUERLIFT_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn psl27_has_two_blocks() {
    let v = json_of(&brauerlift(&["blocks", "--group", "psl27", "--p", "7"], None));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "blocks");
    let blocks = v["result"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[0]["is_principal"], true);
    assert_eq!(blocks[0]["defect"], 1);
    assert_eq!(blocks[1]["defect"], 0);
    assert_eq!(blocks[1]["characters"], serde_json::json!(["7"]));
}

#[test]
fn principal_tree_of_psl27_is_a_path() {
    let v = json_of(&brauerlift(&["brauer-tree", "--group", "psl27", "--p", "7", "--block", "principal"], None));
    let r = &v["result"];
    assert_eq!(r["shape"], "path");
    assert_eq!(r["edges"].as_array().unwrap().len(), 3);
    assert_eq!(r["multiplicity"], 2);
    assert!(r["dot"].as_str().unwrap().contains("graph"));
}

#[test]
fn trivial_group_has_one_block() {
    let v = json_of(&brauerlift(&["blocks", "--group", "trivial", "--p", "5"], None));
    assert_eq!(v["result"]["blocks"].as_array().unwrap().len(), 1);
}

#[test]
fn q_override_changes_the_ring() {
    let v = json_of(&brauerlift(&["blocks", "--group", "psl27", "--p", "7", "--q-override", "7"], None));
    assert_eq!(v["result"]["ring"]["q"], 7);
    assert_eq!(v["result"]["blocks"].as_array().unwrap().len(), 2);
    let v = json_of(&brauerlift(&["blocks", "--group", "psl27", "--p", "7"], None));
    assert_eq!(v["result"]["ring"]["q"], 49);
}

#[test]
fn identical_runs_give_identical_bytes() {
    for args in [
        &["brauer-tree", "--group", "borel21", "--p", "7", "--seed", "9"][..],
        &["burnside", "idempotents", "--group", "a4", "--p", "2", "--prec", "3"][..],
        &["witness", "--group", "s3", "--p", "3", "--prec", "4"][..],
    ] {
        let a = brauerlift(args, None);
        let b = brauerlift(args, None);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["brauer-tree", "--group", "psl27", "--p", "7"];
    let fresh = brauerlift(&args, None);
    let first = brauerlift(&args, Some(dir.path()));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = brauerlift(&args, Some(dir.path()));
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    let text = ["brauer-tree", "--group", "psl27", "--p", "7", "--format", "text"];
    assert_eq!(brauerlift(&text, None).stdout, brauerlift(&text, Some(dir.path())).stdout);

    // a different configuration is a different entry
    brauerlift(&["brauer-tree", "--group", "psl27", "--p", "7", "--seed", "2"], Some(dir.path()));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);

    // the explicit directory wins over the environment
    let other = tempfile::tempdir().unwrap();
    let mut with_flag = args.to_vec();
    let path = other.path().to_str().unwrap();
    with_flag.extend(["--cache-dir", path]);
    assert_eq!(brauerlift(&with_flag, Some(dir.path())).stdout, fresh.stdout);
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["blocks", "--group", "s3", "--p", "3"];
    let first = brauerlift(&args, Some(dir.path()));
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, b"{ not json").unwrap();
    let second = brauerlift(&args, Some(dir.path()));
    assert_eq!(first.stdout, second.stdout);
    assert!(serde_json::from_slice::<Value>(&std::fs::read(&entry).unwrap()).is_ok());
}

#[test]
fn parse_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    std::fs::write(&g, "degree=3\n(1 2 3)\n\n(1 2 7)\n").unwrap();
    let out = brauerlift(&["blocks", "--group", g.to_str().unwrap(), "--p", "3"], None);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("g.txt:4"), "{err}");

    std::fs::write(&g, "degree=3\n(1 2 3)\n(1 2)\n").unwrap();
    std::fs::write(dir.path().join("g.csv"), "conductor=1,degree,1A|1|(),2A|3|(1 2),3A|2|(1 2 3)\n1,1,1,1,1\nsgn,1,1,-1\n").unwrap();
    let out = brauerlift(&["blocks", "--group", g.to_str().unwrap(), "--p", "3"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g.csv:3"));
}

#[test]
fn errors_exit_with_one() {
    for args in [
        &["blocks", "--group", "psl27", "--p", "8"][..],
        &["blocks", "--group", "psl27", "--p", "7", "--q-override", "50"][..],
        &["blocks", "--group", "no-such-group", "--p", "7"][..],
        &["blocks", "--p", "7"][..],
        &["defect-group", "--group", "psl27", "--p", "7", "--block", "5"][..],
        &["rouquier", "verify", "--group", "s3", "--p", "3", "--strategy", "explicit"][..],
    ] {
        let out = brauerlift(args, None);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn failed_verdicts_exit_with_two() {
    let out = brauerlift(&["rouquier", "verify", "--group", "psl27", "--p", "7", "--prec", "1", "--strategy", "trivial"], None);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], false);
    assert_eq!(v["result"]["report"]["verdict"], false);
}

#[test]
fn small_verifications_pass() {
    for g in ["a4", "s3"] {
        let v = json_of(&brauerlift(&["rouquier", "verify", "--group", g, "--p", "3", "--prec", "3"], None));
        assert_eq!(v["result"]["verdict"], true);
        assert_eq!(v["result"]["report"]["big_side"]["h0_is_block"], true);
    }
    let text = brauerlift(&["rouquier", "verify", "--group", "c7", "--p", "7", "--prec", "2", "--format", "text"], None);
    assert!(String::from_utf8_lossy(&text.stdout).starts_with("TILTING"));
}

#[test]
fn burnside_commands() {
    let v = json_of(&brauerlift(&["burnside", "marks", "--group", "s3", "--p", "3"], None));
    assert_eq!(v["result"]["matrix"][0], serde_json::json!([6, 0, 0, 0]));
    let v = json_of(&brauerlift(&["burnside", "basis", "--group", "s3", "--p", "3"], None));
    assert_eq!(v["result"]["rank"], 2);
    let v = json_of(&brauerlift(&["burnside", "idempotents", "--group", "s3", "--p", "3"], None));
    assert_eq!(v["result"]["orthogonal"], true);
    assert_eq!(v["result"]["sum_is_one"], true);
    assert_eq!(v["result"]["p_integral"], true);
    // [S3/C2]·[S3/C3] = [S3/1] in the Burnside ring
    let v = json_of(&brauerlift(
        &["burnside", "compose", "--group", "s3", "--p", "3", "--left", "0,1,0,0", "--right", "0,0,1,0"],
        None,
    ));
    assert_eq!(v["result"]["coefficients"], serde_json::json!([1, 0, 0, 0]));
    assert_eq!(v["result"]["linearization_commutes"], true);
    let v = json_of(&brauerlift(
        &["burnside", "compose", "--group", "s3", "--p", "3", "--set", "regular", "--completed", "--left", "1,-1,2,0,1", "--right", "0,2,1,1,-3"],
        None,
    ));
    assert_eq!(v["result"]["linearization_commutes"], true);
}

#[test]
fn witnesses_round_trip() {
    let v = json_of(&brauerlift(&["witness", "--group", "a4", "--p", "3", "--prec", "4"], None));
    let ws = v["result"]["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 2);
    for w in ws {
        assert_eq!(w["round_trip"], true);
        assert_eq!(w["idempotent"], true);
        assert_eq!(w["orthogonal"], true);
    }
}

/// Upper triangular 2×2 matrices over Z/9 onto the diagonal.
const TRIANGULAR: &str = r#"{
  "ring": { "p": 3, "precision": 2, "f": [] },
  "source": {
    "dim": 3,
    "structure_constants": [1,0,0, 0,1,0, 0,0,0,  0,0,0, 0,0,0, 0,1,0,  0,0,0, 0,0,0, 0,0,1],
    "unit": [1, 0, 1]
  },
  "target": { "dim": 2, "structure_constants": [1,0, 0,0, 0,0, 0,1], "unit": [1, 1] },
  "map": [[1, 0, 0], [0, 0, 1]],
  "idempotent": [0, 1]
}"#;

#[test]
fn lift_idem_reads_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lift.json");
    std::fs::write(&path, TRIANGULAR).unwrap();
    let v = json_of(&brauerlift(&["lift-idem", "--input", path.to_str().unwrap(), "--primitive"], None));
    assert_eq!(v["result"]["is_idempotent"], true);
    assert_eq!(v["result"]["maps_to_target"], true);
    let e = v["result"]["idempotent"].as_array().unwrap();
    assert_eq!(e[2], serde_json::json!([1]));

    let bad = TRIANGULAR.replace(r#""map": [[1, 0, 0], [0, 0, 1]]"#, r#""map": [[1, 0, 0], [0, 0, 3]]"#);
    std::fs::write(&path, bad).unwrap();
    let out = brauerlift(&["lift-idem", "--input", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&path, "{\n  \"ring\": {\n    \"p\": 3,\n    oops\n}").unwrap();
    let out = brauerlift(&["lift-idem", "--input", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lift.json:4"));
}

#[test]
fn fixtures_list_and_check() {
    let v = json_of(&brauerlift(&["fixtures", "list"], None));
    let names: Vec<&str> = v["result"]["fixtures"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a4", "borel21", "c7", "psl27", "s3", "trivial"]);
    let v = json_of(&brauerlift(&["fixtures", "check"], None));
    assert!(v["result"]["fixtures"].as_array().unwrap().iter().all(|f| f["ok"] == true));
}

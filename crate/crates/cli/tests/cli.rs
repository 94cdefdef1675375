use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (Option<i32>, Value, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_sl3canon"))
        .args(args)
        .env_remove("SL3CANON_CACHE_DIR")
        .output()
        .unwrap();
    let json = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (
        status.code(),
        json,
        String::from_utf8_lossy(&stderr).into_owned(),
    )
}

#[test]
fn module_dump() {
    let (code, j, _) = run(&["module", "--weight", "1,0"]);
    assert_eq!(code, Some(0));
    assert_eq!(j["schema"], 1);
    assert_eq!(j["module"]["dimension"], 3);
    assert_eq!(j["module"]["basis"].as_array().unwrap().len(), 3);
    let (code, j, _) = run(&["module", "--weight", "2,1", "--lowest"]);
    assert_eq!(code, Some(0));
    assert_eq!(j["module"]["dimension"], 15);
}

#[test]
fn psi_of_a_single_module_is_the_identity() {
    let (code, j, _) = run(&["psi", "--params", "0,0,1,0"]);
    assert_eq!(code, Some(0));
    assert_eq!(j["check"]["failures"].as_array().unwrap().len(), 0);
    for block in j["psi"].as_array().unwrap() {
        for entry in block["rho"].as_array().unwrap() {
            assert_eq!(entry[0], entry[1], "off-diagonal entry {entry}");
        }
    }
}

#[test]
fn canbasis_of_trivial_space() {
    let (code, j, _) = run(&["canbasis", "--params", "0,0,0,0"]);
    assert_eq!(code, Some(0));
    let elements = j["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 1);
    assert_eq!(elements[0]["vector"], serde_json::json!([[0, [[0, "1"]]]]));
}

#[test]
fn identities_default_empty_and_corrupted() {
    let (code, j, _) = run(&["identities"]);
    assert_eq!(code, Some(0));
    assert_eq!(j["failed"], 0);
    assert!(j["checked"].as_u64().unwrap() > 2000);

    let empty = [
        "--a",
        "n=1..0,r=0..0,m=0..0",
        "--b",
        "m=1..0,k=0..0,delta=0..0",
        "--c",
        "a=0..0,c=0..0,u=0..0,r=0..0,b=1..0",
    ];
    let (code, j, _) = run(&[&["identities"][..], &empty[..]].concat());
    assert_eq!(code, Some(0));
    assert_eq!(j["checked"], 0);

    let (code, j, _) = run(&[
        "identities",
        "--inject-failure",
        "--a",
        "n=1..1,r=1..1,m=2..2",
    ]);
    assert_eq!(code, Some(1));
    let first = &j["results"][0];
    assert_eq!(first["holds"], false);
    assert!(first["lhs"].is_string() && first["rhs"].is_string());
}

#[test]
fn verify_single_members() {
    let (code, j, _) = run(&[
        "verify",
        "--family",
        "1",
        "--exps",
        "0,1,0,0,1,0",
        "--weight",
        "-2,0",
        "--window",
        "3",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(j["report"]["admissible"], true);
    let (code, j, _) = run(&[
        "verify",
        "--family",
        "m2'",
        "--exps",
        "0,2,1,1,2,0",
        "--weight",
        "1,2",
        "--window",
        "3",
    ]);
    assert_eq!(code, Some(0), "{j}");
    let (code, _, _) = run(&["verify", "--expr", "(v)*e1^1 1[(-1,0)]", "--window", "2"]);
    assert_eq!(
        code,
        Some(1),
        "v times a canonical element is not canonical"
    );
    let (code, _, _) = run(&[
        "sigma-check",
        "--family",
        "6",
        "--exps",
        "1,2,1,1,2,1",
        "--weight",
        "-4,-4",
        "--window",
        "3",
    ]);
    assert_eq!(code, Some(0));
}

#[test]
fn verify_all_small_configurations() {
    let (code, j, _) = run(&[
        "verify-all",
        "--max-exp",
        "0",
        "--window",
        "2",
        "--jobs",
        "2",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(j["mismatches"], 0);
    let (code, j, _) = run(&[
        "verify-all",
        "--max-exp",
        "1",
        "--window",
        "3",
        "--families",
        "1",
    ]);
    assert_eq!(code, Some(0));
    assert!(j["canonical"].as_u64().unwrap() > 0);
    assert_eq!(j["families"].as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify-all",
        "--max-exp",
        "1",
        "--window",
        "2",
        "--families",
        "2,8'",
    ];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["psi", "--params", "1,2"][..],
        &["module", "--weight", "-1,0"],
        &[
            "verify",
            "--family",
            "14",
            "--exps",
            "0,0,0,0,0,0",
            "--weight",
            "0,0",
        ],
        &["verify", "--family", "1", "--exps", "0,0,0,0,0,0"],
        &["verify", "--expr", "e3 1[(0,0)]"],
        &["identities", "--a", "n=0..1"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).0, Some(2), "{args:?}");
    }
}

#[test]
fn cache_directory_round_trip() {
    let dir = std::env::temp_dir().join(format!("sl3canon-cli-test-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let (code, first, _) = run(&["canbasis", "--params", "1,0,1,0", "--cache-dir", d]);
    assert_eq!(code, Some(0));
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    let (code, second, _) = run(&["canbasis", "--params", "1,0,1,0", "--cache-dir", d]);
    assert_eq!(code, Some(0));
    assert_eq!(first, second);
    for entry in std::fs::read_dir(&dir).unwrap() {
        std::fs::write(entry.unwrap().path(), "{ not json").unwrap();
    }
    let (code, third, stderr) = run(&["canbasis", "--params", "1,0,1,0", "--cache-dir", d]);
    assert_eq!(code, Some(0));
    assert_eq!(first, third);
    assert!(stderr.contains("rebuilt"), "{stderr}");
    std::fs::remove_dir_all(&dir).unwrap();
}

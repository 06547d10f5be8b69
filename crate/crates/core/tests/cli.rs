use std::path::Path;
use std::process::Command;

use multitile::cli::{run, CliOutcome};
use serde_json::Value;

fn emit(dir: &Path) {
    let out = run(["multitile", "fixtures", "--emit", dir.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

fn cli(dir: &Path, args: &[&str]) -> (CliOutcome, Value) {
    let full: Vec<String> = std::iter::once("multitile".to_string())
        .chain(args.iter().map(|a| {
            if a.ends_with(".json") {
                dir.join(a).display().to_string()
            } else {
                a.to_string()
            }
        }))
        .collect();
    let out = run(full);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out, json)
}

#[test]
fn octagon_verify_sampled_and_exact() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    let (out, j) = cli(
        dir.path(),
        &[
            "verify",
            "oct7.json",
            "--lambda",
            "z2.json",
            "--trials",
            "1000",
            "--seed",
            "42",
        ],
    );
    assert_eq!(out.code, 0);
    assert_eq!(j["result"]["verdict"]["kind"], "verified");
    assert_eq!(j["result"]["verdict"]["k"], 7);
    assert_eq!(j["manifest"]["seed"], 42);
    assert_eq!(j["manifest"]["inputs"].as_array().unwrap().len(), 2);

    let (out, j) = cli(
        dir.path(),
        &["verify", "oct7.json", "--lambda", "z2.json", "--exact-2d"],
    );
    assert_eq!(out.code, 0);
    assert_eq!(j["result"]["verdict"]["kind"], "exactVerified");
    assert_eq!(j["result"]["verdict"]["k"], 7);
}

#[test]
fn refutation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    let (out, j) = cli(dir.path(), &["verify", "triangle.json", "--exact-2d"]);
    assert_eq!(out.code, 1);
    assert_eq!(j["result"]["verdict"]["kind"], "refuted");
}

#[test]
fn symmetry_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    let (out, j) = cli(dir.path(), &["check-symmetry", "octahedron.json"]);
    assert_eq!(out.code, 1);
    assert!(j["result"]["overall"]["FailFacet"].is_array());
    let (out, j) = cli(dir.path(), &["check-symmetry", "cube.json"]);
    assert_eq!(out.code, 0);
    assert_eq!(j["result"]["overall"], "Pass");
}

#[test]
fn compute_k_reports_lattice_and_multiplicity() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    let (out, j) = cli(dir.path(), &["compute-k", "oct7.json"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        (j["result"]["N"].as_u64(), j["result"]["k"].as_u64()),
        (Some(2), Some(28))
    );
    let (out, _) = cli(dir.path(), &["compute-k", "triangle.json"]);
    assert_eq!(out.code, 1);
}

#[test]
fn boundary_angle_and_fourier_commands() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    let (out, j) = cli(
        dir.path(),
        &[
            "boundary-check",
            "square.json",
            "--lambda",
            "z2.json",
            "--frame",
            "1,0;0,1",
            "--trials",
            "10",
        ],
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(j["result"]["frames"][0]["signedVolume"], "0");
    assert_eq!(
        j["result"]["frames"][0]["sums"].as_array().unwrap().len(),
        10
    );

    let (out, _) = cli(
        dir.path(),
        &[
            "boundary-check",
            "simplex3.json",
            "--frame",
            "1,0,0",
            "--trials",
            "3",
        ],
    );
    assert_eq!(out.code, 1);

    let (out, j) = cli(
        dir.path(),
        &[
            "angle-sum",
            "oct7.json",
            "--lambda",
            "z2.json",
            "--v",
            "0,0",
        ],
    );
    assert_eq!(out.code, 0);
    assert!((j["result"]["sum"].as_f64().unwrap() - 7.0).abs() < 1e-9);

    let (out, j) = cli(
        dir.path(),
        &[
            "fourier",
            "square.json",
            "--xi",
            "-1/2,0",
            "--oracle",
            "--tol",
            "1e-8",
        ],
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(j["result"]["oracle"]["agrees"], true);
}

#[test]
fn malformed_input_exits_two_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","0.5"]]}"#,
    )
    .unwrap();
    let out = run(["multitile", "check-symmetry", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("vertices[2][1]"), "{}", out.stderr);

    emit(dir.path());
    let (out, _) = cli(dir.path(), &["fourier", "square.json", "--xi", "1,2,3"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--xi"));
    let (out, _) = cli(
        dir.path(),
        &["verify", "square.json", "--lambda", "z3.json"],
    );
    assert_eq!(out.code, 2);
    let (out, _) = cli(
        dir.path(),
        &["boundary-check", "square.json", "--frame", "1,1;1,0"],
    );
    assert_eq!(out.code, 2);
    assert_eq!(run(["multitile", "no-such-command"]).code, 2);
    assert_eq!(run(["multitile", "verify", "missing.json"]).code, 2);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    for args in [
        &["verify", "oct7.json", "--trials", "200", "--seed", "7"][..],
        &["boundary-check", "cube.json", "--trials", "5"][..],
        &[
            "angle-sum",
            "cell24.json",
            "--v",
            "1/3,0,0,0",
            "--mc-samples",
            "20000",
        ][..],
    ] {
        let (a, _) = cli(dir.path(), args);
        let (b, _) = cli(dir.path(), args);
        assert_eq!(a, b);
        assert!(!a.stdout.contains("timing"));
    }
}

#[test]
fn fixtures_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    for f in multitile::fixtures::all() {
        let path = dir.path().join(format!("{}.json", f.name));
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = multitile::io::parse_polytope(&text).unwrap();
        assert_eq!(parsed.vertices(), f.polytope.vertices());
        let again = multitile::io::to_pretty(&multitile::io::polytope_json(&parsed));
        assert_eq!(again, text);
    }
    let listing: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fixtures.json")).unwrap())
            .unwrap();
    let oct = listing
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "oct7")
        .unwrap();
    assert_eq!(oct["expected"]["kIntegerLattice"], 7);
}

#[test]
fn binary_writes_svg_and_uses_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    emit(dir.path());
    let svg = dir.path().join("oct7.svg");
    let status = Command::new(env!("CARGO_BIN_EXE_multitile"))
        .args(["verify", "--exact-2d", "--svg"])
        .arg(&svg)
        .arg(dir.path().join("oct7.json"))
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polygon"));
    let status = Command::new(env!("CARGO_BIN_EXE_multitile"))
        .args(["check-symmetry"])
        .arg(dir.path().join("triangle.json"))
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
}

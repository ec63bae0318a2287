use std::path::Path;
use std::process::{Command, Output};

use moduli_cli::json::classification_from;
use moduli_core::{reassemble, ChernData, Error};
use serde_json::Value;

fn moduli(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_moduli"));
    cmd.args(args);
    match cache {
        Some(path) => cmd.env("MODULI_CACHE", path),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn classify_exceptional_plus_json() {
    let o = moduli(&["classify", "8", "-4", "11", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["variant"], "exceptional_plus");
    assert_eq!(v["residual"], serde_json::json!([4, -2, 4]));
}

#[test]
fn trivial_bundle_is_semistable() {
    let o = moduli(&["classify", "1", "0", "0", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["variant"], "semistable_exists");
}

#[test]
fn locate_prints_slope_and_rank() {
    let o = moduli(&["exceptional", "locate", "-59/100"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("slope -3/5"));
    assert!(text.contains("rank 5"));
}

#[test]
fn classify_json_reassembles_to_input() {
    let inputs = [(2, -1, 0), (8, -4, 11), (5, 0, 1), (7, 3, 9), (3, -8, 25), (12, 5, 11), (4, 1, 2)];
    for (r, c1, c2) in inputs {
        let args = [r.to_string(), c1.to_string(), c2.to_string()];
        let o = moduli(&["classify", &args[0], &args[1], &args[2], "--json"], None);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let parsed = classification_from(&json_of(&o));
        let Ok(c) = parsed else { continue };
        match reassemble(&c) {
            Ok(y) => assert_eq!(y, ChernData::new(r, c1, c2)),
            Err(Error::NotDecomposed) => {}
            Err(e) => panic!("{args:?}: {e}"),
        }
    }
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("tree.json");
    let commands: [&[&str]; 5] = [
        &["exceptional", "locate", "-1234/2001"],
        &["classify", "11", "-5", "17", "--json"],
        &["series", "--slope", "-3/5", "--count", "6"],
        &["delta-prime", "-7/11", "--json"],
        &["curves", "--min", "-1", "--max", "0", "--steps", "21"],
    ];
    for args in commands {
        let cold = moduli(args, None);
        let first = moduli(args, Some(&cache));
        let warm = moduli(args, Some(&cache));
        assert_eq!(cold.status.code(), Some(0), "{args:?}");
        assert_eq!(cold.stdout, first.stdout, "{args:?}");
        assert_eq!(cold.stdout, warm.stdout, "{args:?}");
    }
    assert!(cache.exists());
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("tree.json");
    std::fs::write(&cache, r#"{"version":1,"entries":[{"address":[-1,1],"chern":[5,-3,6]}]}"#).unwrap();
    let o = moduli(&["exceptional", "eps", "-1/2"], Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank 2"));
    std::fs::write(&cache, "garbage").unwrap();
    assert_eq!(moduli(&["exceptional", "eps", "-1/2"], Some(&cache)).stdout, o.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(moduli(&["classify", "0", "1", "1"], None).status.code(), Some(2));
    assert_eq!(moduli(&["classify", "two", "1", "1"], None).status.code(), Some(1));
    assert_eq!(moduli(&["delta", "1/0"], None).status.code(), Some(1));
    assert_eq!(moduli(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(moduli(&["curves", "--min", "0", "--max", "-1"], None).status.code(), Some(1));
    assert_eq!(moduli(&["exceptional", "eps", "-1/2^40"], None).status.code(), Some(3));
    assert_eq!(moduli(&["series", "--slope", "-1/3"], None).status.code(), Some(2));
    assert_eq!(moduli(&["kronecker", "dim", "2", "1", "1"], None).status.code(), Some(2));
    assert_eq!(moduli(&["kronecker", "check", "--file", "/nonexistent/m.json"], None).status.code(), Some(4));
    assert_eq!(moduli(&["--help"], None).status.code(), Some(0));
}

#[test]
fn curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let o = moduli(&["curves", "--min", "-1", "--max", "0", "--steps", "3", "--format", "csv", "--out", csv.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mu,delta,delta_prime_approx,exceptional_slope");
    let first: Vec<_> = lines[1..].iter().map(|l| l.split(',').take(2).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(first, ["-1,1", "-1/2,5/8", "0,1"]);

    let svg = dir.path().join("c.svg");
    let o = moduli(&["curves", "--min", "-1", "--max", "0", "--steps", "60", "--format", "svg", "--width", "300", "--height", "200", "--out", svg.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 2);
    assert!(text.contains("width=\"300\""));

    let unwritable = dir.path().join("missing").join("c.csv");
    let o = moduli(&["curves", "--min", "-1", "--max", "0", "--out", unwritable.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn kronecker_commands() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    std::fs::write(&file, r#"{"q":3,"m":2,"n":3,"field":{"p":2},
        "entries":[[[1,0,0],[1,0,0]],[[0,0,0],[0,1,0]],[[1,0,0],[0,0,1]]]}"#).unwrap();
    let o = moduli(&["kronecker", "check", "--file", file.to_str().unwrap(), "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["status"], "unstable");
    assert_eq!(v["certificate"]["subspace_dim"], 1);
    assert_eq!(v["certificate"]["image_dim"], 1);

    let o = moduli(&["kronecker", "check", "--file", file.to_str().unwrap(), "--budget", "2"], None);
    assert_eq!(o.status.code(), Some(3));

    let v = json_of(&moduli(&["kronecker", "walls", "--m", "2", "--n", "1", "--p", "7", "--json"], None));
    assert!(v.as_array().unwrap().iter().any(|w| w["triple"] == serde_json::json!([1, 1, 0]) && w["rho"] == "7"));

    let v = json_of(&moduli(&["kronecker", "family", "--kind", "ideal-length", "--n", "2", "--json"], None));
    assert_eq!(v["cokernel"], serde_json::json!([1, 0, 3]));
    assert_eq!(v["dim_match"], true);
    assert_eq!(stdout(&moduli(&["kronecker", "dim", "3", "3", "4"], None)), "12\n");
}

#[test]
fn chi_of_pairs() {
    assert_eq!(stdout(&moduli(&["chi", "1,0,0", "6,-3,8"], None)), "-2\n");
    assert_eq!(stdout(&moduli(&["chi", "2,-1,1", "2,-1,1"], None)), "1\n");
    assert_eq!(moduli(&["chi", "1,0", "1,0,0"], None).status.code(), Some(1));
}

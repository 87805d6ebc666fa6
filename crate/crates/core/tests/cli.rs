use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ndalg"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/scenarios").join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("spawn ndalg")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_golden_scenario() {
    let out = run(bin().arg("verify").arg(scenario("square_single.json")));
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["decision"], "certified");
    assert_eq!(report["witness"]["gamma"], serde_json::json!([0.5]));
    assert_eq!(report["probes"][0]["jump"], 1.5);
}

#[test]
fn verify_rejects_non_solution() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        r#"{"equation":{"rhs":{"op":"poly","coeffs":[0,2]}},"solution":{"op":"poly","coeffs":[0,0,0,1]}}"#,
    );
    let out = run(bin().arg("verify").arg(&p));
    assert_eq!(out.status.code(), Some(65));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["error"], "not_a_solution");
}

#[test]
fn verify_inconclusive_when_cap_too_small() {
    let out = run(bin().arg("verify").arg(scenario("zero_single.json")).env("NDALG_INDEX_CAP", "2"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_inputs_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", r#"{"equation":{"rhs":{"op":"x"}},"solution":{"op":"nope"}}"#);
    let out = run(bin().arg("verify").arg(&p));
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("solution"));

    assert_eq!(run(bin().arg("frobnicate")).status.code(), Some(64));
    assert_eq!(run(bin().args(["compose", "not json"])).status.code(), Some(64));
    assert_eq!(run(bin().args(["rho-table", "--grid", "0", "1", "x"])).status.code(), Some(64));
    assert_eq!(run(bin().arg("verify").arg(scenario("zero_single.json")).env("NDALG_INDEX_CAP", "-3")).status.code(), Some(64));
    assert_eq!(run(bin().arg("--help")).status.code(), Some(0));
}

#[test]
fn compose_round_trips_through_json() {
    let out = run(bin().args(["compose", r#"{"type":"jump","a":0,"h":1}"#, r#"{"type":"jump","a":0,"h":2}"#]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "{\"jumps\":[[0.0,3.0]],\"type\":\"multi\"}\n");

    let out = run(bin().args([
        "compose",
        r#"{"type":"multi","jumps":[[0,1]]}"#,
        r#"{"type":"vertical","epsilon":0.5}"#,
        r#"{"type":"multi","jumps":[[0,2],[1,5]]}"#,
    ]));
    assert_eq!(out.status.code(), Some(0));
    let composed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let arr = composed.as_array().expect("multi and vertical parts");
    assert_eq!(arr[0]["jumps"], serde_json::json!([[0.0, 3.0], [1.0, 5.0]]));
    assert_eq!(arr[1]["epsilon"], 0.5);

    // feeding the output back in is a fixed point
    let again = run(bin().args(["compose", std::str::from_utf8(&out.stdout).unwrap().trim()]));
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn export_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["cubic_composed.json", "zero_multi.json"] {
        let (a, b) = (dir.path().join("a"), dir.path().join("b"));
        assert_eq!(run(bin().arg("export").arg(scenario(name)).arg("-o").arg(&a)).status.code(), Some(0));
        assert_eq!(run(bin().arg("export").arg(scenario(name)).arg("--output").arg(&b)).status.code(), Some(0));
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let text = std::fs::read_to_string(dir.path().join("a")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 3 * 49);
}

#[test]
fn export_without_block_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "s.json", r#"{"equation":{"rhs":{"op":"const","value":0}},"solution":{"op":"x","value":1}}"#);
    assert_eq!(run(bin().arg("export").arg(&p).arg("-o").arg(dir.path().join("o"))).status.code(), Some(64));
    let p = write(dir.path(), "t.json", r#"{"equation":{"rhs":{"op":"const","value":0}},"solution":{"op":"const","value":1}}"#);
    assert_eq!(run(bin().arg("export").arg(&p).arg("-o").arg(dir.path().join("o"))).status.code(), Some(64));
}

#[test]
fn rho_table_prints_cutoff() {
    let out = run(bin().args(["rho-table", "--grid", "-2", "2", "17"]));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (x, r) = l.split_once(',').unwrap();
            (x.parse().unwrap(), r.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 17);
    for (x, r) in rows {
        if x.abs() <= 0.5 {
            assert_eq!(r, 0.0);
        } else if x.abs() >= 1.0 {
            assert_eq!(r, 1.0);
        }
    }
}

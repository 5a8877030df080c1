use std::process::Command;

use tmodel::cli::{parse_group, run_command, Object, Workspace};
use tmodel::exactalg::{FgAbGroup, RingTag};

const MOORE: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/workspaces/moore.json"));

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tmodel"))
}

fn moore_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/workspaces/moore.json").to_string()
}

#[test]
fn golden_workspace_round_trips() {
    let ws = Workspace::parse(MOORE).unwrap();
    assert_eq!(ws.serialize(), MOORE);
    let m2 = ws.complex("M2").unwrap();
    assert_eq!(m2, &tmodel::chain::ChainComplex::moore(2, 0));
    assert!(matches!(ws.get("twice").unwrap(), Object::Map(_)));
    assert!(matches!(ws.get("Halving").unwrap(), Object::Tower(_)));
}

#[test]
fn commands_are_deterministic() {
    let ws = Workspace::parse(MOORE).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = vec!["M2".to_string(), "M2".to_string()];
    let ra = run_command(&ws, "ahss", &args, a.path(), 0).unwrap();
    let rb = run_command(&ws, "ahss", &args, b.path(), 0).unwrap();
    assert_eq!(ra.stdout, rb.stdout);
    assert!(!ra.files.is_empty());
    for f in &ra.files {
        let name = f.file_name().unwrap();
        assert_eq!(std::fs::read(f).unwrap(), std::fs::read(b.path().join(name)).unwrap());
    }
}

#[test]
fn group_syntax() {
    let z = RingTag::Integers;
    let g = parse_group("Z^2 + Z/4", z).unwrap();
    assert_eq!(g, FgAbGroup::free(z, 2).direct_sum(&FgAbGroup::cyclic(4)));
    assert!(parse_group("0", z).unwrap().is_zero());
    assert!(parse_group("Q", z).is_err());
}

#[test]
fn binary_exit_codes() {
    let out = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        bin()
            .args(["--workspace", &moore_path(), "--out", out.path().to_str().unwrap()])
            .args(args)
            .output()
            .unwrap()
    };
    let ok = run(&["homology", "M2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("0: Z/2"));

    let unknown = run(&["prohom", "Halving", "ConstP", "0"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stdout).contains("UNKNOWN"));

    let missing = run(&["homology", "Nope"]);
    assert_eq!(missing.status.code(), Some(1));

    let canon = bin().args(["--workspace", &moore_path(), "--canonicalize"]).output().unwrap();
    assert_eq!(canon.status.code(), Some(0));
    assert_eq!(String::from_utf8(canon.stdout).unwrap(), MOORE);
}

#[test]
fn malformed_workspace_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"ring\": \"Z\",\n  \"objects\": {\n    \"complexes\": {\"A\": {\"ranks\": {\"0\": 1, \"1\": 1}, \"diffs\": {\"1\": [[\"x\"]]}}}\n  }\n}\n").unwrap();
    let out = bin().args(["--workspace", path.to_str().unwrap(), "homology", "A"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

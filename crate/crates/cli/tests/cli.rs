use std::process::{Command, Output};

fn mck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn normalize_collapses_diagonal_against_point() {
    let o = mck(&["compute", "normalize", "--expr", "D(1,2)*o(1)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "o(1)*o(2)");
}

#[test]
fn parse_error_reports_location() {
    let o = mck(&["compute", "normalize", "--expr", "D(1,2)*"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 8"));
}

#[test]
fn normalize_reads_files() {
    let dir = std::env::temp_dir().join(format!("mck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.txt");
    std::fs::write(&path, "h(1,1)*h(1,1)").unwrap();
    let o = mck(&["compute", "normalize", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "2*o(1)");
}

#[test]
fn betti_and_euler() {
    let o = mck(&["compute", "betti", "--n", "2", "--degree", "2"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "23".to_string()));
    let o = mck(&["compute", "euler", "--n", "5"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "176256".to_string()));
    let o = mck(&["compute", "euler", "--n", "3", "--surface", "abelian"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "0".to_string()));
    let o = mck(&["compute", "betti", "--n", "2", "--degree", "9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn decomposition_lists_summands() {
    let o = mck(&["compute", "decomposition", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("h(S^[2]) = h(S^(2)) ⊕ h(S)(-1)"));
}

#[test]
fn projectors_on_square_run_fifteen_composition_checks() {
    let o = mck(&["verify", "projectors", "--power", "2", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["compositionInstances"], 15);
    let checks = v["checks"].as_array().unwrap();
    let compositions = checks
        .iter()
        .filter(|c| {
            let id = c["id"].as_str().unwrap();
            id.starts_with("idempotent") || id.starts_with("orthogonal")
        })
        .count();
    assert_eq!(compositions, 15);
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn zero_budget_skips() {
    let o = mck(&["verify", "projectors", "--budget", "0"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("SKIPPED"));
    let o = mck(&["verify", "multiplicativity", "--power", "2", "--budget", "0terms"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn multiplicativity_structured_output() {
    let o = mck(&["verify", "multiplicativity", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let triples = v["triples"].as_array().unwrap();
    assert_eq!(triples.len(), 27);
    let t = triples
        .iter()
        .find(|t| t["i"] == 0 && t["j"] == 4 && t["k"] == 4)
        .unwrap();
    assert_eq!(t["required"], false);
    assert_eq!(t["chowVanishes"], false);
    let o = mck(&["verify", "multiplicativity", "--power", "2", "--symmetry-reduce"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn abelian_checks_are_cohomological() {
    let o = mck(&["verify", "multiplicativity", "--surface", "abelian"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[-1]^* on H^1"));
    let o = mck(&["verify", "projectors", "--surface", "abelian"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn config_errors_are_usage_errors() {
    let dir = std::env::temp_dir().join(format!("mck-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "gram = [[1").unwrap();
    let o = mck(&["verify", "projectors", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = mck(&["compute", "euler", "--n", "2", "--surface", "generic"]);
    assert_eq!(code(&o), 2);
    let o = mck(&["verify", "projectors", "--power", "7"]);
    assert_eq!(code(&o), 2);
    let o = mck(&["verify", "projectors", "--budget", "-1"]);
    assert_eq!(code(&o), 2);
    let o = mck(&["compute", "normalize", "--expr", "h(3,1)"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bigrading_of_point_class() {
    let o = mck(&["compute", "bigrading", "--expr", "o(1)", "--format", "structured"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let comps: Vec<_> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["class"] != "0")
        .collect();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["s"], 0);
    assert_eq!(comps[0]["projector"], 4);
}

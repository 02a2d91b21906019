use std::io::Write;
use std::process::{Command, Output};

fn ucfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucfam")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn family_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn density_of_chain() {
    let o = ucfam(&["density", "--construct", "chain", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "density=5 s=4 bound_tight=true\n");
}

#[test]
fn odd_path_has_no_root() {
    let o = ucfam(&["root", "--construct", "path-upset", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("has_root=false\n"));
}

#[test]
fn even_path_root_agrees_with_search() {
    let o = ucfam(&["root", "--construct", "up-set", "--gens", "1 2, 3 4", "--n", "4", "--brute"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("brute_force_roots="));
}

#[test]
fn verify_paper_passes() {
    let o = ucfam(&["verify-paper", "--all", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verify-paper: PASS\n"));
}

#[test]
fn verify_paper_selected_checks() {
    let o = ucfam(&["verify-paper", "lift", "path", "--max-n", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["report"]["outcomes"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_file_round_trip() {
    let file = family_file("universe 3\n1\n1 2\n1 2 3\n");
    let o = ucfam(&["iso", "--input", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "universe 3\n1\n1 2\n1 2 3\n");
}

#[test]
fn missing_universe_is_a_validation_error() {
    let file = family_file("universe 3\n1\n1 2\n");
    let o = ucfam(&["closure", "--input", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("not a member"), "{err}");
}

#[test]
fn zero_element_is_a_parse_error() {
    let file = family_file("universe 2\n0\n1 2\n");
    let o = ucfam(&["closure", "--input", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn non_union_closed_input_is_rejected() {
    let file = family_file("universe 3\n1\n2\n1 2 3\n");
    let o = ucfam(&["density", "--input", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not union-closed"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(ucfam(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(ucfam(&["density"]).status.code(), Some(64));
    assert_eq!(ucfam(&["density", "--construct", "chain"]).status.code(), Some(64));
    assert_eq!(ucfam(&["--help"]).status.code(), Some(0));
}

#[test]
fn closure_then_closure_matches_trace() {
    let once = ucfam(&["closure", "--construct", "chain", "--n", "4"]);
    let file = family_file(&stdout(&once));
    let twice = ucfam(&["closure", "--input", file.path().to_str().unwrap()]);
    let trace = stdout(&ucfam(&["trace", "--construct", "chain", "--n", "4"]));
    let level2: String = trace
        .split("--- level ")
        .find(|chunk| chunk.starts_with("2\n"))
        .map(|chunk| chunk["2\n".len()..].to_string())
        .unwrap();
    assert_eq!(stdout(&twice), level2);
    assert_eq!(stdout(&ucfam(&["closure", "--construct", "chain", "--n", "4", "--times", "2"])), level2);
}

#[test]
fn json_output_is_stable() {
    let args = ["census", "--n", "3", "--format", "json"];
    let a = ucfam(&args);
    let b = ucfam(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["total"], 45);
}

#[test]
fn tree_edges_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.txt");
    let o = ucfam(&["tree", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("depth=2"));
    let edges = std::fs::read_to_string(path).unwrap();
    assert_eq!(edges.lines().count(), 45);
    let self_loops = edges
        .lines()
        .filter(|l| {
            let mut it = l.split(' ');
            it.next() == it.next()
        })
        .count();
    assert_eq!(self_loops, 1);
}

#[test]
fn frankl_and_constructions() {
    let o = ucfam(&["frankl", "--construct", "chain", "--n", "3"]);
    assert_eq!(stdout(&o), "element=1 count=3 size=3 satisfied=true\n");
    let o = ucfam(&["s-param", "--construct", "loose-bound", "--n", "6"]);
    assert_eq!(stdout(&o), "s=1\n");
    let o = ucfam(&["density", "--construct", "interval-chain", "--c", "2", "--k", "4", "--n", "6"]);
    assert_eq!(stdout(&o), "density=4 s=2 bound_tight=false\n");
    let o = ucfam(&["construct", "--construct", "cube-plus-universe", "--n", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["expected_density"], 3);
    assert_eq!(ucfam(&["census", "--n", "5"]).status.code(), Some(1));
}

#[test]
fn lifted_from_base_file() {
    let base = family_file("universe 2\n1\n2\n1 2\n");
    let o = ucfam(&["density", "--construct", "lifted", "--base", base.path().to_str().unwrap(), "--n", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("density=3 "));
}

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeskel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("treeskel-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn skeleton_dot_for_mst4() {
    let o = run(&["skeleton", "--family", "mst", "--n", "4", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("// treeskel "));
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 16);
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 54);
    let stats = String::from_utf8_lossy(&o.stderr);
    assert!(stats.contains("vertices 16 edges 54 min_degree 6 max_degree 7"), "{stats}");
}

#[test]
fn skeleton_json_for_constrained_family() {
    let o = run(&["skeleton", "--family", "lcmst", "--n", "5", "--k", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc = stdout_json(&o);
    // Hamiltonian paths of K_5
    assert_eq!(doc["num_vertices"], 60);
    assert_eq!(doc["family"]["family"], "lcmst");
    assert!(doc["provenance"]["tool"].as_str().unwrap().starts_with("treeskel"));
}

#[test]
fn skeleton_above_cap_is_resource_error() {
    let o = run(&["skeleton", "--family", "mst", "--n", "40"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
}

#[test]
fn skeleton_csv_edge_list_to_file() {
    let path = scratch("k3.csv");
    let o = run(&[
        "skeleton",
        "--family",
        "mst",
        "--n",
        "3",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, vec!["i,j", "0,1", "0,2", "1,2"]);
}

#[test]
fn exchange_oracle_rejected_for_subfamily() {
    let o = run(&["skeleton", "--family", "dcmst", "--n", "4", "--k", "2", "--oracle", "edge-exchange"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn clique_rows() {
    let o = run(&["clique", "--family", "mst", "--n", "5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let row = stdout(&o).lines().last().unwrap().to_string();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[0], "mst");
    assert_eq!(cols[5], "6");

    let k3 = run(&["clique", "--family", "mst", "--n", "3", "--format", "csv"]);
    assert!(stdout(&k3).lines().last().unwrap().starts_with("mst,3,,3,3,3,"));

    let dc = run(&["clique", "--family", "dcmst", "--n", "5", "--k", "2", "--format", "json"]);
    assert_eq!(code(&dc), 0);
    let doc = stdout_json(&dc);
    assert_eq!(doc["num_vertices"], 60);
    assert!(doc["clique_number"].as_u64().unwrap() >= 2);
}

#[test]
fn missing_parameter_is_argument_error() {
    assert_eq!(code(&run(&["clique", "--family", "lcmst", "--n", "5"])), 2);
    assert_eq!(code(&run(&["skeleton", "--family", "mst"])), 2);
    assert_eq!(code(&run(&["bogus"])), 2);
}

#[test]
fn solve_both_methods_agree() {
    let o = run(&["solve", "--variant", "dcmst", "--n", "4", "--k", "2", "--unit-weights"]);
    assert_eq!(code(&o), 0);
    let doc = stdout_json(&o);
    assert_eq!(doc["weight"], "3");
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["method"], "bnb");
    assert_eq!(doc["enumerate"]["weight"], "3");

    let r = run(&["solve", "--variant", "lcmst", "--n", "6", "--k", "2", "--seed", "7"]);
    assert_eq!(code(&r), 0);
    let doc = stdout_json(&r);
    assert_eq!(doc["agreement"], true);
    assert_eq!(doc["provenance"]["seed"], 7);
}

#[test]
fn solve_is_deterministic() {
    let args = ["solve", "--variant", "rlsmst", "--n", "6", "--k", "1", "--subset", "0,1,2", "--seed", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn infeasible_solve_has_own_exit_code() {
    let o = run(&["solve", "--variant", "svmst", "--n", "4", "--subset", "0", "--unit-weights"]);
    assert_eq!(code(&o), 5);
    assert_eq!(stdout_json(&o)["status"], "infeasible");
}

#[test]
fn random_weights_need_a_seed() {
    assert_eq!(code(&run(&["solve", "--variant", "mst", "--n", "5"])), 2);
}

#[test]
fn solve_from_instance_file() {
    let path = scratch("inst.json");
    fs::write(
        &path,
        r#"{"n": 4, "weights": [[0,1,1],[1,2,1],[2,3,1],[0,2,10],[0,3,10],[1,3,"21/2"]]}"#,
    )
    .unwrap();
    let o = run(&["solve", "--variant", "lcmst", "--k", "2", "--instance", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let doc = stdout_json(&o);
    assert_eq!(doc["weight"], "3");
    assert_eq!(doc["edges"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));

    let bad = scratch("bad.json");
    fs::write(&bad, r#"{"n": 3, "weights": [[0,1,1]]}"#).unwrap();
    assert_eq!(code(&run(&["solve", "--variant", "mst", "--instance", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["solve", "--variant", "mst", "--instance", "/nonexistent/x.json"])), 4);
}

#[test]
fn verify_checks() {
    let o = run(&["verify", "--check", "mst-clique", "--n", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["clique_number"], 4);

    let o = run(&["verify", "--check", "lc-adjacency", "--n", "7", "--k", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["pairs_checked"], 15);

    let o = run(&["verify", "--check", "hrep", "--n", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["report"]["candidates"], 210);

    assert_eq!(code(&run(&["verify", "--check", "dc-projection", "--n", "6", "--k", "2"])), 0);
    assert_eq!(code(&run(&["verify", "--check", "lc-projection", "--n", "5"])), 0);
    assert_eq!(code(&run(&["verify", "--check", "dc-adjacency", "--n", "7", "--k", "2"])), 0);
    assert_eq!(code(&run(&["verify", "--check", "hp-tsp-merge", "--n", "5"])), 0);
}

#[test]
fn verify_reports_counterexamples_with_exit_1() {
    let o = run(&["verify", "--check", "ip-feasible-set", "--n", "4", "--variant", "lcmst", "--k", "2", "--no-repair"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["report"]["extra"].as_array().unwrap().len(), 4);
    let ok = run(&["verify", "--check", "ip-feasible-set", "--n", "4", "--variant", "lcmst", "--k", "2"]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn bounds() {
    let tsp = stdout(&run(&["bound", "--theorem", "tsp", "--n", "242"]));
    assert!(tsp.contains("2^(1) = 2.000000"), "{tsp}");
    let lc = stdout(&run(&["bound", "--theorem", "lcmst", "--n", "206", "--k", "5"]));
    assert!(lc.contains("2^(1/2) = 1.414214"), "{lc}");
    let dc = stdout(&run(&["bound", "--theorem", "dcmst", "--n", "6", "--k", "3"]));
    assert!(dc.contains("vacuous at this scale"), "{dc}");
    assert_eq!(code(&run(&["bound", "--theorem", "lcmst", "--n", "5", "--k", "5"])), 2);
}

#[test]
fn thread_flag() {
    let o = run(&["--threads", "2", "clique", "--family", "mst", "--n", "4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["--threads", "0", "bound", "--theorem", "tsp", "--n", "10"])), 2);
}

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclelemma")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["reduce", "AbBABa", "--n", "2"]), "AABa");
    assert_eq!(stdout(&["good-rotations", "aaaAA", "--n", "1"]), "k=1 rotations=[0]");
    assert_eq!(stdout(&["count", "--n", "6", "--k", "2", "--gens", "2"]), "135");
}

#[test]
fn word_commands() {
    assert_eq!(stdout(&["cyclic-reduce", "AbBABa"]), "AB");
    assert_eq!(stdout(&["reduce", "aA"]), "e");
    assert_eq!(stdout(&["reduce", "[1,-2,2]", "--gens", "2"]), "a");
    assert_eq!(stdout(&["decompose", "aaAbbBAA"]), "x=aa core=Ab y=bBAA");
    assert_eq!(stdout(&["good-rotations", "aaAbbBAA"]), "k=2 rotations=[2,3]");
    let profile = stdout(&["profile", "aaAbbBAA"]);
    assert!(profile.starts_with("n=8 k=2 bound=40 horizon=96 period_start=3\nt: 1 2 1 2 3 2 3 4 3 2"));
    assert_eq!(stdout(&["dots", "aaaAA"]), "WBBWW");
    assert_eq!(stdout(&["dots", "--decode", "WWWWBB"]), "1—6, 2—5, |3, |4");
    let pairing = stdout(&["pairing", "AbBABa"]);
    assert!(pairing.contains("1—6, 2—5, |3, |4") && pairing.ends_with("standard reduction: BA"));
}

#[test]
fn json_output() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "good-rotations", "aaaAA"])).unwrap();
    assert_eq!(v["k"], 1);
    assert_eq!(v["rotations"], serde_json::json!([0]));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["poly", "--len", "4", "--gens", "2", "--json"])).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([20, 0, -12, 0, 1]));
}

#[test]
fn counting_commands() {
    assert_eq!(stdout(&["kesten", "--len", "6", "--gens", "2"]), "232");
    let census = stdout(&["census", "--len", "4", "--gens", "2", "--threads", "2"]);
    assert!(census.starts_with("len=4 gens=2 total=256\ne 28\n"));
    assert!(stdout(&["verify-xtoq", "--len", "6", "--gens", "2"]).starts_with("PASS"));
    assert!(stdout(&["enumerate-pairings", "--len", "6", "--k", "2"]).ends_with("total=15"));
    assert_eq!(stdout(&["poly", "--len", "3", "--gens", "2"]), "x^3 - 9x");
    assert!(stdout(&["verify-poly", "--len", "5", "--gens", "2"]).starts_with("PASS"));
}

#[test]
fn csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let census = dir.path().join("census.csv");
    let table = dir.path().join("table.csv");
    stdout(&["census", "--len", "3", "--gens", "1", "--csv", census.to_str().unwrap()]);
    stdout(&["kesten", "--len", "2", "--gens", "2", "--csv", table.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(census).unwrap(), "reduction,length,count\nA,1,3\nAAA,3,1\na,1,3\naaa,3,1\n");
    assert_eq!(std::fs::read_to_string(table).unwrap(), "n,k,s\n0,0,1\n1,0,0\n1,1,1\n2,0,4\n2,1,0\n2,2,1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nope"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "c", "--gens", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--len", "4", "--k", "0", "--gens", "2"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--len", "12", "--gens", "2", "--budget", "1000"]).status.code(), Some(2));
    assert_eq!(run(&["good-rotations", "aA"]).status.code(), Some(0));
    assert_eq!(run(&["pairing", "aA"]).status.code(), Some(2));
    let not_admissible = r#"{"n":5,"pairs":[[1,5],[3,4]],"singletons":[2]}"#;
    assert_eq!(run(&["pairing", "aaaAA", "--check", not_admissible]).status.code(), Some(1));
    let admissible = r#"{"n":5,"pairs":[[2,5],[3,4]],"singletons":[1]}"#;
    assert_eq!(run(&["pairing", "aaaAA", "--check", admissible]).status.code(), Some(0));
    let out = run(&["verify-poly", "--len", "3", "--gens", "2", "--method", "recurrence", "--r1", "as-printed"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn rmt_echoes_seed_and_is_reproducible() {
    let args = ["rmt", "--size", "8", "--trials", "20", "--max-power", "2", "--seed", "5", "--json"];
    let a: serde_json::Value = serde_json::from_str(&String::from_utf8(run(&args).stdout).unwrap()).unwrap();
    let b: serde_json::Value = serde_json::from_str(&String::from_utf8(run(&args).stdout).unwrap()).unwrap();
    assert_eq!(a["seed"], 5);
    assert_eq!(a["moments"], b["moments"]);

    let generated = run(&["rmt", "--size", "4", "--trials", "3", "--max-power", "1"]);
    let text = String::from_utf8(generated.stdout).unwrap();
    assert!(text.starts_with("seed="), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sim.json");
    std::fs::write(&config, r#"{"matrix_size": 6, "trials": 5, "max_power": 2, "seed": 8}"#).unwrap();
    let out = run(&["rmt", "--config", config.to_str().unwrap(), "--trials", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["config"]["trials"], 6);
    assert_eq!(v["config"]["matrix_size"], 6);
    assert_eq!(v["seed"], 8);
    assert_eq!(run(&["rmt", "--size", "1", "--seed", "1"]).status.code(), Some(2));
}

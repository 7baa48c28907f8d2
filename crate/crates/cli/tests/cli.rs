use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use burnkit::burn::{verify_schedule, BurningSchedule};
use burnkit::graph::{parse_graph, GraphFormat};
use serde_json::Value;
use tempfile::TempDir;

fn burnkit(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnkit")).args(args).current_dir(cwd).output().unwrap()
}

fn payload(out: &Output) -> Value {
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {:?}, stderr {:?}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    report["payload"].clone()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn workdir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let path: String = (0..8).map(|i| format!("{i} {}\n", i + 1)).collect();
    fs::write(dir.path().join("p9.txt"), path).unwrap();
    fs::write(dir.path().join("k1.txt"), "0\n").unwrap();
    fs::write(dir.path().join("split.txt"), "0 1\n2 3\n").unwrap();
    fs::write(dir.path().join("loop.txt"), "0 1\n1 1\n").unwrap();
    fs::write(dir.path().join("spider.txt"), "0 1\n1 2\n0 3\n3 4\n0 5\n5 6\n").unwrap();
    let k33: String = (0..3).flat_map(|u| (3..6).map(move |v| format!("{u} {v}\n"))).collect();
    fs::write(dir.path().join("k33.txt"), k33).unwrap();
    fs::write(dir.path().join("c5.g6"), "Dhc\n").unwrap();
    dir
}

#[test]
fn exact_path_with_verified_witness() {
    let dir = workdir();
    let out = burnkit(&["exact", "p9.txt"], dir.path());
    assert_eq!(code(&out), 0);
    let p = payload(&out);
    assert_eq!(p["burning_number"], 3);
    assert_eq!(p["well_burnable"], true);
    let sources: Vec<usize> = serde_json::from_value(p["witness"]["sources"].clone()).unwrap();
    let graph = parse_graph(&fs::read_to_string(dir.path().join("p9.txt")).unwrap(), GraphFormat::EdgeList).unwrap().graph;
    assert!(verify_schedule(&graph, &BurningSchedule::new(sources).unwrap()).unwrap());
}

#[test]
fn exact_small_cases_and_solvers() {
    let dir = workdir();
    assert_eq!(payload(&burnkit(&["exact", "k1.txt"], dir.path()))["burning_number"], 1);
    let c5 = burnkit(&["exact", "c5.g6"], dir.path());
    assert_eq!(code(&c5), 0);
    assert_eq!(payload(&c5)["vertex_count"], 5);
    assert_eq!(payload(&c5)["burning_number"], 3);
    for solver in ["bruteforce", "spanning-tree"] {
        let out = burnkit(&["exact", "p9.txt", "--solver", solver], dir.path());
        assert_eq!(code(&out), 0, "{solver}");
        assert_eq!(payload(&out)["burning_number"], 3);
    }
}

#[test]
fn exact_exit_codes() {
    let dir = workdir();
    let split = burnkit(&["exact", "split.txt"], dir.path());
    assert_eq!(code(&split), 2);
    assert!(String::from_utf8_lossy(&split.stderr).contains("disconnected"));
    assert_eq!(code(&burnkit(&["exact", "loop.txt"], dir.path())), 2);
    assert_eq!(code(&burnkit(&["exact", "p9.txt", "--format", "graph6"], dir.path())), 2);
    assert_eq!(code(&burnkit(&["exact", "p9.txt", "--budget", "2"], dir.path())), 3);
    assert_eq!(code(&burnkit(&["exact", "p9.txt", "--budget", "3"], dir.path())), 0);
}

#[test]
fn exact_is_deterministic() {
    let dir = workdir();
    let a = burnkit(&["exact", "spider.txt"], dir.path());
    let b = burnkit(&["exact", "spider.txt"], dir.path());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bound_packing_on_a_path() {
    let dir = workdir();
    let out = burnkit(&["bound", "p9.txt", "--method", "pack"], dir.path());
    assert_eq!(code(&out), 0);
    let p = payload(&out);
    assert_eq!(p["bound"]["rounds"], 5);
    assert_eq!(p["bound"]["method"], "pack");
    let per_radius = &p["outcome"]["certificate"]["per_radius"];
    assert_eq!(per_radius[0], serde_json::json!([1, 5]));
}

#[test]
fn bound_tether_checks_the_graph() {
    let dir = workdir();
    fs::write(dir.path().join("one.json"), r#"{"pieces": [{"start": 1.0, "form": "constant", "params": {"c": 1.0}}]}"#).unwrap();
    let out = burnkit(&["bound", "spider.txt", "--method", "tether", "--tether", "one.json"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(payload(&out)["outcome"]["sound_for_graph"], true);

    // K_{3,3} has 6 < 10 vertices within distance 2 of any vertex.
    let out = burnkit(&["bound", "k33.txt", "--method", "tether", "--d", "3"], dir.path());
    assert_eq!(code(&out), 4);
    let p = payload(&out);
    assert_eq!(p["outcome"]["sound_for_graph"], false);
    assert_eq!(p["outcome"]["certificate"]["check"]["violation"]["ball_size"], 6);
}

#[test]
fn bound_without_a_graph() {
    let dir = workdir();
    let out = burnkit(&["bound", "--n", "10000", "--d", "12", "--linear-h", "9"], dir.path());
    assert_eq!(code(&out), 0);
    let p = payload(&out);
    let minimum = p["tether"]["minimum"].as_f64().unwrap();
    assert!((minimum - (10000.0 / 435.0 + 24.0)).abs() < 1e-9);
    assert_eq!(p["bound"]["rounds"], 46);
    assert_eq!(p["linear_threshold"]["n"], 1223);
    assert_eq!(p["trianglefree"]["well_burnable"], true);
    assert_eq!(code(&burnkit(&["bound", "--n", "100"], dir.path())), 2);
}

#[test]
fn tree_predicates() {
    let dir = workdir();
    let out = burnkit(&["tree", "spider.txt"], dir.path());
    assert_eq!(code(&out), 0);
    let p = payload(&out);
    assert_eq!(p["degree_two_threshold"]["p"], "3/4");
    assert_eq!(p["excess_degree"]["holds"], false);
    assert_eq!(p["excess_degree"]["conclusion"], "inconclusive");
    assert_eq!(p["exact_well_burnable"], true);

    let out = burnkit(&["tree", "--histogram", "1:7,2:9,7:1"], dir.path());
    assert_eq!(payload(&out)["excess_degree"]["conclusion"], "well-burnable");

    assert_eq!(code(&burnkit(&["tree", "--histogram", "2:9,7:1"], dir.path())), 2);
    assert_eq!(code(&burnkit(&["tree", "k33.txt"], dir.path())), 2);
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = workdir();
    let good = burnkit(&["verify", "p9.txt", "--sources", "2,6,8"], dir.path());
    assert_eq!(code(&good), 0);
    assert_eq!(payload(&good)["valid"], true);
    let bad = burnkit(&["verify", "p9.txt", "--sources", "4,1,7"], dir.path());
    assert_eq!(code(&bad), 1);
    assert_eq!(payload(&bad)["valid"], false);
    assert_eq!(code(&burnkit(&["verify", "p9.txt", "--sources", "4,99"], dir.path())), 2);
}

#[test]
fn campaign_small_families() {
    let dir = workdir();
    let out = burnkit(&["campaign", "--n-max", "7", "--d", "2"], dir.path());
    assert_eq!(code(&out), 0);
    assert_eq!(payload(&out)["state"]["counterexamples"], serde_json::json!([]));

    let out = burnkit(&["campaign", "--n-max", "9", "--d", "4", "--jobs", "2"], dir.path());
    assert_eq!(code(&out), 0);
    let tallies = payload(&out)["state"]["tallies"].clone();
    let family: u64 = tallies.as_object().unwrap().values().map(|t| t["in_family"].as_u64().unwrap()).sum();
    assert_eq!(family, 8);
    assert!(String::from_utf8_lossy(&out.stderr).contains("progress n=9"));
}

#[test]
fn campaign_resume_and_mismatch() {
    let dir = workdir();
    let spec = r#"{"n_min": 1, "n_max": 11, "min_nonleaf_degree": 3, "checks": ["exact-well-burnable", "handshake"], "checkpoint_interval": 40}"#;
    fs::write(dir.path().join("spec.json"), spec).unwrap();

    let whole = burnkit(&["campaign", "spec.json"], dir.path());
    assert_eq!(code(&whole), 0);

    let partial = burnkit(&["campaign", "spec.json", "--out", "run", "--stop-after", "3"], dir.path());
    assert_eq!(code(&partial), 0);
    assert_eq!(payload(&partial)["status"], "interrupted");
    assert!(dir.path().join("run/checkpoint.json").exists());
    assert!(dir.path().join("run/report.json").exists());

    let resumed = burnkit(&["campaign", "spec.json", "--resume", "run/checkpoint.json"], dir.path());
    assert_eq!(code(&resumed), 0);
    assert_eq!(payload(&resumed)["state"]["tallies"], payload(&whole)["state"]["tallies"]);

    let other = burnkit(&["campaign", "spec.json", "--n-max", "12", "--resume", "run/checkpoint.json"], dir.path());
    assert_eq!(code(&other), 6);
}

#[test]
fn flags_override_config() {
    let dir = workdir();
    fs::write(dir.path().join("cfg.toml"), "n-max = 7\nd = 2\nbudget = 2\n").unwrap();
    let out = burnkit(&["--config", "cfg.toml", "campaign"], dir.path());
    assert_eq!(payload(&out)["spec"]["n_max"], 7);
    let out = burnkit(&["--config", "cfg.toml", "campaign", "--n-max", "5"], dir.path());
    assert_eq!(payload(&out)["spec"]["n_max"], 5);

    assert_eq!(code(&burnkit(&["--config", "cfg.toml", "exact", "p9.txt"], dir.path())), 3);
    assert_eq!(code(&burnkit(&["--config", "cfg.toml", "exact", "p9.txt", "--budget", "3"], dir.path())), 0);

    fs::write(dir.path().join("bad.toml"), "unknown = 1\n").unwrap();
    assert_eq!(code(&burnkit(&["--config", "bad.toml", "exact", "p9.txt"], dir.path())), 2);
}

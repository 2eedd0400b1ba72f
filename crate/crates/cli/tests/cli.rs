use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;
use unicast_core::field::PrimeField;
use unicast_core::graph::parse_instance;
use unicast_core::netcode::{parse_code, propagate};
use unicast_core::random::{random_exact, rng};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netcode-unicast")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_netcode-unicast"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_examples_analyze_to_their_captions() {
    let dir = TempDir::new().unwrap();
    for (id, expected) in
        [("fig1", "[2,2]"), ("fig2a", "[2,2,2]"), ("fig2b", "[1,1,3]"), ("fig3", "[2,3]"), ("cor232", "[2,3,2]")]
    {
        let file = dir.path().join(format!("{id}.txt"));
        assert_eq!(status(&run(&["gen", id, "-o", path_str(&file)])), 0);
        let out = run(&["analyze", path_str(&file)]);
        assert_eq!(status(&out), 0);
        assert!(stdout(&out).starts_with(&format!("RESULT: connectivity {expected}\n")), "{id}");
        let piped = run_stdin(&["analyze", "-"], &stdout(&run(&["gen", id])));
        assert_eq!(stdout(&piped), stdout(&out));
    }
}

#[test]
fn analyze_single_edge_and_malformed_input() {
    let dir = TempDir::new().unwrap();
    let single = write(&dir, "single.txt", "session 1 a b\nedge a b\n");
    assert!(stdout(&run(&["analyze", &single])).contains("RESULT: connectivity [1]"));

    let bad = write(&dir, "bad.txt", "session 1 a b\nedge a b\nedge a\n");
    let out = run(&["analyze", &bad]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(status(&run(&["analyze", "no-such-file-or-example"])), 2);
}

#[test]
fn minimize_reports_removed_edges() {
    let dir = TempDir::new().unwrap();
    let minimal = write(&dir, "min.txt", "session 1 a b\nedge a b\n");
    assert!(stdout(&run(&["minimize", &minimal])).starts_with("RESULT: removed 0\n"));

    let dangling = write(&dir, "dangling.txt", "session 1 a b\nedge a b\nedge a c\n");
    let target = dir.path().join("out.txt");
    let out = run(&["minimize", &dangling, "-o", path_str(&target)]);
    assert!(stdout(&out).starts_with("RESULT: removed 1\n"));
    let reduced = parse_instance(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(reduced.graph().edge_count(), 1);
    let map = fs::read_to_string(dir.path().join("out.txt.map")).unwrap();
    assert!(map.contains("edge 1 -> removed"));
}

#[test]
fn structured_output_passes_degree_check() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("st.txt");
    let out = run(&["structure", "fig2a", "-o", path_str(&target)]);
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).contains("RESULT: max internal degree 3"));
    let inst = parse_instance(&fs::read_to_string(&target).unwrap()).unwrap();
    assert!(inst.max_internal_degree() <= 3);
    let again = run(&["analyze", path_str(&target)]);
    assert!(stdout(&again).starts_with("RESULT: connectivity [2,2,2]\n"));
}

#[test]
fn code_auto_selects_constructor_or_refuses() {
    let dir = TempDir::new().unwrap();
    let routed = write(&dir, "r.txt", &random_exact(&mut rng(1), &[3, 3, 3]).to_string());
    let out = run(&["code", &routed]);
    assert_eq!(status(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("RESULT: strategy routing"));
    assert_eq!(text.matches("RESULT: terminal").count(), 3);
    assert!(!text.contains(" fail"));

    let vector = write(&dir, "v.txt", &random_exact(&mut rng(2), &[3, 1, 3]).to_string());
    let code_file = dir.path().join("v.code");
    let out = run(&["code", &vector, "--q", "3", "-o", path_str(&code_file)]);
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).contains("RESULT: field q=3 T=2"));
    assert_eq!(status(&run(&["verify", &vector, path_str(&code_file)])), 0);

    let refused = run(&["code", "fig2a"]);
    assert_eq!(status(&refused), 1);
    assert!(stdout(&refused).starts_with("RESULT: infeasible per classification"));

    assert_eq!(status(&run(&["code", "fig1", "--q", "4"])), 2);
}

#[test]
fn verify_passes_routing_and_rejects_zero_or_mismatched_codes() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "direct.txt", "session 1 a b\nedge a b\n");
    let routing = write(&dir, "ok.code", "field q=2\nvector T=1\ncode 0 : x0=1\n");
    let out = run(&["verify", &inst, &routing]);
    assert_eq!(status(&out), 0);
    assert!(stdout(&out).contains("RESULT: terminal 1 pass\n  x0 = 1*e0\n"));

    let zero = write(&dir, "zero.code", "field q=2\nvector T=1\ncode 0 :\n");
    assert_eq!(status(&run(&["verify", &inst, &zero])), 1);

    let wrong_size = write(&dir, "size.code", "field q=2\nvector T=1\ncode 0 : x0=1\ncode 1 :\n");
    assert_eq!(status(&run(&["verify", &inst, &wrong_size])), 2);
    let garbage = write(&dir, "garbage.code", "code 0 : x0=1\n");
    assert_eq!(status(&run(&["verify", &inst, &garbage])), 2);
}

#[test]
fn two_session_code_verifies_end_to_end() {
    let dir = TempDir::new().unwrap();
    let code_file = dir.path().join("fig1.code");
    let out = run(&["code", "fig1", "--strategy", "1m", "-o", path_str(&code_file)]);
    assert_eq!(status(&out), 0);
    assert_eq!(status(&run(&["verify", "fig1", path_str(&code_file)])), 0);
}

#[test]
fn classify_verdicts_and_witness_files() {
    let dir = TempDir::new().unwrap();
    let witness = dir.path().join("w.txt");
    let out = run(&["classify", "2", "2", "2", "--emit-witness", "-o", path_str(&witness)]);
    assert_eq!(status(&out), 1);
    assert!(stdout(&out).starts_with("RESULT: infeasible [2,2,2] witness=gen_222\nWITNESS: gen_222"));
    let check = run(&["analyze", path_str(&witness)]);
    assert!(stdout(&check).starts_with("RESULT: connectivity [2,2,2]\n"));

    let permuted = dir.path().join("p.txt");
    run(&["classify", "3", "2", "2", "--emit-witness", "-o", path_str(&permuted)]);
    assert!(stdout(&run(&["analyze", path_str(&permuted)])).starts_with("RESULT: connectivity [3,2,2]\n"));

    let out = run(&["classify", "1", "3", "3"]);
    assert_eq!(status(&out), 0);
    assert_eq!(stdout(&out), "RESULT: feasible [1,3,3] strategy=vector-T2\n");
    assert_eq!(stdout(&run(&["classify", "3", "3", "3"])), "RESULT: feasible [3,3,3] strategy=routing\n");
    assert_eq!(status(&run(&["classify", "4", "1", "1"])), 2);
    assert_eq!(status(&run(&["classify", "1", "1"])), 2);
}

#[test]
fn gen_rejects_unknown_ids() {
    let out = run(&["gen", "fig9"]);
    assert_eq!(status(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown example"));
}

#[test]
fn search_exit_statuses() {
    let out = run(&["search", "fig2a", "--q", "2"]);
    assert_eq!(status(&out), 1);
    assert!(stdout(&out).contains("RESULT: exhausted, none"));

    assert_eq!(status(&run(&["search", "fig1", "--mode", "routing", "--T", "1"])), 1);
    let found = run(&["search", "fig1", "--mode", "routing", "--T", "2", "--jobs", "2"]);
    assert_eq!(status(&found), 0);
    assert!(stdout(&found).contains("RESULT: found\nCODE: field q=2\nCODE: vector T=2\n"));

    let starved = run(&["search", "fig3", "--q", "3", "--budget", "10"]);
    assert_eq!(status(&starved), 2);
    assert!(stdout(&starved).contains("RESULT: budget exceeded"));
}

#[test]
fn dot_export_labels_match_global_vectors() {
    let dir = TempDir::new().unwrap();
    let plain = stdout(&run(&["export-dot", "fig3"]));
    assert!(plain.starts_with("digraph instance {\n"));
    assert!(plain.ends_with("}\n"));
    assert_eq!(plain.matches(" -> ").count(), 17);
    assert!(plain.contains("[label=\"e0\"]"));

    let code_file = dir.path().join("fig1.code");
    run(&["search", "fig1", "--mode", "routing", "--T", "2", "-o", path_str(&code_file)]);
    let labeled = stdout(&run(&["export-dot", "fig1", path_str(&code_file)]));
    let inst = parse_instance(unicast_core::oracle::example_text("fig1").unwrap()).unwrap();
    let code = parse_code(&fs::read_to_string(&code_file).unwrap()).unwrap();
    let table = propagate(&code.carrier(&inst), &code);
    assert_eq!(code.field(), PrimeField::new(2).unwrap());
    for e in 0..inst.graph().edge_count() {
        let layers: Vec<String> = (0..2)
            .map(|layer| {
                let v = &table.vectors[e * 2 + layer];
                let k = v.entries().iter().position(|&c| c == 1).expect("routing carries one symbol");
                format!("x{k}")
            })
            .collect();
        assert!(labeled.contains(&format!("[label=\"e{e}: {}\"]", layers.join(" | "))), "edge {e}");
    }
}

#[test]
fn reports_and_artifacts_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["analyze", "cor232"],
        vec!["structure", "fig2b"],
        vec!["code", "fig1"],
        vec!["search", "fig3", "--q", "3", "--jobs", "3"],
        vec!["export-dot", "fig2a"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
    let (a, b) = (dir.path().join("a.code"), dir.path().join("b.code"));
    run(&["code", "fig1", "-o", path_str(&a)]);
    run(&["code", "fig1", "-o", path_str(&b)]);
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

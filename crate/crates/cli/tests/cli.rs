use std::process::{Command, Output};

fn fcheaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcheaps")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_path(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("fcheaps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

const SIX: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/six-vertex-graph.txt");

#[test]
fn heap_info_on_c7_word() {
    let o = fcheaps(&["heap-info", "--graph", "family:Ct7", "s1s3s5s2s4s6s1s3s5s7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in [
        "(v1, v7) -> v4",
        "(v2, v8) -> v4 + v5",
        "(v3, v9) -> v5 + v6",
        "dim ker: 0  dim im: 3",
        "boundary vertices: v4 v5 v6",
        "effective boundary vertices: v4",
        "{v4 v5 v6}",
        "P2: no",
    ] {
        assert!(out.contains(line), "missing `{line}` in\n{out}");
    }
}

#[test]
fn heap_info_json_and_dot() {
    let dot = temp_path("b3.dot");
    let o = fcheaps(&["heap-info", "--graph", "family:B3", "--json", "--dot", &dot, "s1 s2 s1"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["fully_commutative"], true);
    assert_eq!(json["labels"], serde_json::json!([1, 2, 1]));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn empty_word_gives_empty_heap() {
    let o = fcheaps(&["heap-info", "--graph", "family:A3", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vertices: none"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["heap-info", "--graph", "family:A3", "s1s4"],
        vec!["heap-info", "--graph", "family:Q3", "s1"],
        vec!["heap-info", "--graph", "/nonexistent/graph.txt", "s1"],
        vec!["verify", "--graph", "family:A3", "--checks", "everything"],
        vec!["verify", "--graph", "family:A3", "--checks", ""],
        vec!["verify", "--graph", "family:A3", "--jobs", "0"],
        vec!["frobnicate"],
    ] {
        let o = fcheaps(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = fcheaps(&["heap-info", "--graph", "family:A3", "s1s4"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 4"));
}

#[test]
fn verify_writes_a_versioned_deterministic_report() {
    let a = temp_path("a.json");
    let b = temp_path("b.json");
    for (out, jobs) in [(&a, "1"), (&b, "3")] {
        let o = fcheaps(&[
            "verify", "--graph", "family:B4", "--max-len", "6", "--checks", "main_theorem,property_w,lemma_invariants",
            "--jobs", jobs, "--random-words", "20", "--out", out,
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read_to_string(a).unwrap();
    assert_eq!(a, std::fs::read_to_string(b).unwrap());
    let json: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["violations"], 0);
    assert!(json.get("timings").is_none());
}

#[test]
fn timings_only_when_asked() {
    let o = fcheaps(&["verify", "--graph", "family:A3", "--max-len", "3", "--timings"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(json["timings"]["enumerate"].is_number());
}

#[test]
fn violations_fail_only_on_asserted_graphs() {
    let base = ["verify", "--graph", SIX, "--max-len", "13", "--checks", "main_theorem", "--out"];
    let out = temp_path("six.json");
    let mut args = base.to_vec();
    args.push(&out);
    assert_eq!(fcheaps(&args).status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(json["violations"].as_u64().unwrap() > 0);
    assert_eq!(json["star_reducible"], false);
    args.push("--assert-star-reducible");
    assert_eq!(fcheaps(&args).status.code(), Some(1));
}

#[test]
fn six_vertex_word_reports_v10() {
    let o = fcheaps(&["heap-info", "--graph", SIX, "s1s3s5s2s4s1s3s2s4s6s1s3s5"]);
    let out = stdout(&o);
    assert!(out.contains("fully commutative: true"), "{out}");
    assert!(out.contains("dismantlable (P1): yes"));
    assert!(out.contains("v10 is a boundary vertex with no effective vertex in its class"));
}

#[test]
fn forbidden_scan_and_lemma_commands() {
    let o = fcheaps(&["forbidden-scan", "--graph", "family:B3", "--max-len", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["forbidden_configs"]["line_shape"], "b3");
    let o = fcheaps(&["lemma-invariants", "--graph", "family:A4", "--max-len", "5", "--random-words", "10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn enumerate_and_cbasis() {
    let o = fcheaps(&["enumerate", "--graph", "family:A3", "--max-len", "6"]);
    let total: usize = stdout(&o)
        .lines()
        .map(|l| l.split(['(', ')']).nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 14);
    let o = fcheaps(&["cbasis", "--graph", "family:B3", "s1s2s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("c[s1s2s1] ="));
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const OP21: &str = "A F# G G# E F B Bb D C# C D#";
const OP28: &str = "Bb A C B D# E C# D F# F G# G";

fn prolifera(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prolifera"))
        .args(args)
        .env_remove("PROLIFERA_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = prolifera(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], schema: &str) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let value: Value = serde_json::from_str(&stdout(&full)).unwrap();
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/schema")
        .join(format!("{}.schema.json", schema));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{:?}: {:?}", args, errors);
    value
}

/// Lines of the form `  [..]` under `Orbit:`.
fn orbit_lines(text: &str) -> Vec<&str> {
    text.lines()
        .skip_while(|l| *l != "Orbit:")
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(str::trim)
        .collect()
}

#[test]
fn seven_note_retrograde_inversion() {
    let text = stdout(&["proliferate", "--series", "0,3,4,2,1,6,5", "--kind", "RI", "--t", "2"]);
    let orbit = orbit_lines(&text);
    assert_eq!(
        orbit,
        [
            "[0, 3, 4, 2, 1, 6, 5]",
            "[4, 3, 1, 0, 5, 6, 2]",
            "[1, 3, 5, 4, 2, 6, 0]",
            "[5, 3, 2, 1, 0, 6, 4]",
            "[2, 3, 0, 5, 4, 6, 1]",
        ]
    );
    assert!(text.contains("\nOrder: 5\n"));
    assert!(text.contains("\nStructure: [1, 1, 5]\n"));
    assert!(text.contains("\nCycles: (0 4 1 5 2)(3)(6)\n"));
}

#[test]
fn trivial_proliferation() {
    let text = stdout(&["proliferate", "--series", "0,1", "--kind", "P", "--t", "0"]);
    assert_eq!(orbit_lines(&text).len(), 1);
    assert!(text.contains("\nOrder: 1\n"));
}

#[test]
fn webern_pair_with_note_names() {
    let text = stdout(&["proliferate", "--series", OP21, "--second", OP28]);
    assert!(text.contains("\nOrder: 8\n"));
    assert!(text.contains("\nStructure: [4, 8]\n"));
    assert!(text.contains("(A Bb D F#)"));
    assert_eq!(orbit_lines(&text).len(), 8);
    assert_eq!(orbit_lines(&text)[0], "[A, F#, G, G#, E, F, B, Bb, D, C#, C, Eb]");
    assert_eq!(orbit_lines(&text)[1], "[Bb, A, C, B, Eb, E, C#, D, F#, F, G#, G]");

    let v = json(&["proliferate", "--series", OP21, "--second", OP28], "proliferate");
    assert_eq!(v["order"], 8);
    assert_eq!(v["tonic"], 9);
    assert!(v["cycles"].as_array().unwrap().contains(&serde_json::json!([0, 1, 5, 9])));
}

#[test]
fn printed_series_parse_back() {
    let text = stdout(&["proliferate", "--series", OP21, "--second", OP28]);
    let orbit = orbit_lines(&text);
    // Consecutive printed members, parsed back, give the same permutation.
    for w in orbit.windows(2) {
        let first = stdout(&["proliferate", "--series", w[0], "--tonic", "A", "--second", w[1]]);
        assert!(first.contains("\nStructure: [4, 8]\n"), "{}", first);
        let echoed = orbit_lines(&first)[0];
        assert_eq!(echoed, w[0]);
    }
    let numeric = stdout(&["proliferate", "--series", "0,3,4,2,1,6,5", "--kind", "RI", "--t", "2"]);
    for line in orbit_lines(&numeric) {
        let back = stdout(&["proliferate", "--series", line, "--kind", "P", "--t", "0"]);
        assert_eq!(orbit_lines(&back), [line]);
    }
}

#[test]
fn names_render_relative_to_tonic() {
    let text = stdout(&[
        "proliferate", "--series", "0,3,4,2,1,6,5,7,8,9,10,11", "--kind", "P", "--t", "0", "--names", "--tonic", "D",
    ]);
    assert_eq!(orbit_lines(&text), ["[D, F, F#, E, Eb, G#, G, A, Bb, B, C, C#]"]);
    let out = prolifera(&["proliferate", "--series", "0,1,2", "--kind", "P", "--t", "0", "--names"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_json_is_a_bare_array() {
    let v = json(&["catalog", "--kind", "RI", "--n", "12", "--t", "5"], "catalog");
    let entries = v.as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert!(e["order"].as_u64().unwrap() >= 1);
        let sum: u64 = e["structure"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
        assert_eq!(sum, 12);
    }
    let text = stdout(&["catalog", "--kind", "P", "--n", "12", "--t", "4"]);
    assert!(text.contains("[3, 3, 3, 3]"), "{}", text);
}

#[test]
fn catalog_by_gt_shape_matches_transposition() {
    let by_t = json(&["catalog", "--kind", "R", "--n", "8", "--t", "2"], "catalog");
    let by_gt = json(&["catalog", "--gt", "4,4"], "catalog");
    assert_eq!(by_t, by_gt);
}

#[test]
fn realize_two_two_eight() {
    let text = stdout(&["realize", "--structure", "2,2,8", "--kind", "RI", "--n", "12", "--t", "0"]);
    assert!(text.contains("structure [2, 2, 8]"), "{}", text);
    let v = json(&["realize", "--structure", "2,2,8", "--kind", "RI", "--n", "12", "--t", "0"], "realize");
    assert_eq!(v["structure"], serde_json::json!([2, 2, 8]));
    let series: Vec<String> = v["series"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let check = stdout(&["proliferate", "--series", &series.join(","), "--kind", "RI", "--t", "0"]);
    assert!(check.contains("\nStructure: [2, 2, 8]\n"));
}

#[test]
fn realize_names_the_odd_anchor_rule() {
    let out = prolifera(&["realize", "--structure", "4,5", "--kind", "RI", "--n", "9", "--t", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("odd-anchor-cycle"), "{}", err);
}

#[test]
fn classify_retrograde_pair() {
    let args = [
        "classify", "--series", "0,1,2,3,5,4,7,6", "--series", "0,1,2,3,5,7,4,6", "--kind", "R", "--t", "1",
    ];
    let v = json(&args, "classify");
    let results = v["results"].as_array().unwrap();
    assert_eq!(results[0]["structure"], results[1]["structure"]);
    assert_ne!(results[0]["representative"], results[1]["representative"]);
    assert_eq!(v["equivalent_to_first"], serde_json::json!([true, false]));
    assert!(stdout(&args).contains("Series 1 and 2: not equivalent"));
}

#[test]
fn classify_reports_a_path_to_the_representative() {
    let v = json(&["classify", "--series", "0,5,3,4,1,2,6", "--kind", "RI", "--t", "0"], "classify");
    let r = &v["results"][0];
    assert_eq!(r["exact"], true);
    let path = r["op_path"].as_array().unwrap();
    let same = r["series"] == r["representative"];
    assert_eq!(path.is_empty(), same);
}

#[test]
fn classes_tables() {
    let v = json(&["classes", "--kind", "RI", "--n", "9", "--t", "0"], "classes");
    assert!(v["classes"].as_array().unwrap().iter().all(|c| c["order"].as_u64().unwrap() > 2));
    let all = json(&["classes", "--kind", "RI", "--n", "9", "--t", "0", "--all"], "classes");
    let catalog = json(&["catalog", "--kind", "RI", "--n", "9", "--t", "0"], "catalog");
    assert_eq!(all["classes"].as_array().unwrap().len(), catalog.as_array().unwrap().len());

    let r = json(&["classes", "--kind", "R", "--n", "6", "--t", "2"], "classes");
    let total: u64 = r["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 120);
}

#[test]
fn census_writes_files_and_checks_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_str().unwrap();
    let text = stdout(&["census", "--kind", "RI", "--n", "7", "--t", "2", "--out", root]);
    assert!(text.contains("catalog matches"), "{}", text);
    let list = dir.path().join("RI/Proliferations_7_notes/CompleteList/transposition2.txt");
    let body = std::fs::read_to_string(list).unwrap();
    assert!(body.lines().any(|l| l == "(0, 3, 4, 2, 1, 6, 5) --> 5"));

    let v = json(&["census", "--kind", "P", "--n", "4", "--out", root, "--raw-counts"], "census");
    assert_eq!(v["runs"].as_array().unwrap().len(), 4);
    assert_eq!(v["runs"][0]["orders"][0]["count"], 6);
    for run in v["runs"].as_array().unwrap() {
        assert_eq!(run["missing"], serde_json::json!([]));
        assert_eq!(run["extra"], serde_json::json!([]));
    }
}

#[test]
fn census_ceiling_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |max: &str, n: &str| {
        Command::new(env!("CARGO_BIN_EXE_prolifera"))
            .args(["census", "--kind", "P", "--n", n, "--t", "0", "--out"])
            .arg(dir.path())
            .env("PROLIFERA_MAX_N", max)
            .output()
            .unwrap()
    };
    assert_eq!(run("4", "5").status.code(), Some(4));
    assert_eq!(run("5", "5").status.code(), Some(0));
    assert_eq!(run("five", "5").status.code(), Some(2));
    let out = prolifera(&["census", "--kind", "P", "--n", "11", "--t", "0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_codes_for_bad_input() {
    for args in [
        vec!["proliferate", "--series", "0,1,1", "--kind", "P", "--t", "0"],
        vec!["proliferate", "--series", "0,1,x", "--kind", "P", "--t", "0"],
        vec!["proliferate", "--series", "1,0", "--kind", "RI", "--t", "0"],
        vec!["proliferate", "--series", "0,1", "--kind", "Q", "--t", "0"],
        vec!["proliferate", "--series", "0,1", "--kind", "P", "--t", "2"],
        vec!["realize", "--structure", "2,2", "--kind", "RI", "--n", "5", "--t", "0"],
        vec!["classify", "--series", "0,1,2", "--kind", "P", "--t", "0"],
        vec!["catalog", "--gt", "0,x"],
    ] {
        let out = prolifera(&args);
        assert_eq!(out.status.code(), Some(2), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    let out = prolifera(&["proliferate", "--series", "0,1,x", "--kind", "P", "--t", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("item 3"));
}

#[test]
fn text_output_is_stable() {
    let args = ["classes", "--kind", "R", "--n", "7", "--t", "0"];
    assert_eq!(stdout(&args), stdout(&args));
}

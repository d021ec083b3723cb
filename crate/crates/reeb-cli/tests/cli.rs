use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TREFOIL: &str = "L1,L3,X2,X2,X2,R1,R1 / orientations {0:-} / surgery {0:+1}";

fn reeb(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let o = reeb(args, stdin);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn parse_normalizes_and_json_input_agrees() {
    let a = json(&["parse"], TREFOIL);
    assert_eq!(a["command"], "parse");
    assert_eq!(a["front"][0]["normalized"], TREFOIL);
    assert_eq!(a["front"][0]["chords"], 5);
    let j = r#"{"events": ["L1","L3","X2","X2","X2","R1","R1"], "orientations": {"0": "-"}, "surgery": {"0": 1}}"#;
    assert_eq!(json(&["parse"], j), a);
    let j2 = r#"{"events": "L1,L3,X2,X2,X2,R1,R1", "orientations": {"0": "-"}, "surgery": {"0": "+1"}}"#;
    assert_eq!(json(&["parse"], j2), a);
}

#[test]
fn input_file_is_read() {
    let dir = std::env::temp_dir().join(format!("reeb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("trefoil.front");
    std::fs::write(&p, TREFOIL).unwrap();
    let v = json(&["invariants", "--input", p.to_str().unwrap()], "");
    assert_eq!(v["components"][0]["tb"], 1);
    assert_eq!(v["chords"][3]["action"], "257/1");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rationals_are_strings() {
    let v = json(&["orbits", "--max-len", "1", "--epsilon", "1/100"], TREFOIL);
    let rows = v["orbits"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["word"], "(r1)");
    assert_eq!(rows[0]["action"], "95/2");
    assert!(rows[0]["embedded_action"].as_str().unwrap().contains('/'));
    assert_eq!(rows[3]["cz"], 2);
}

#[test]
fn chain_reports_the_forced_plane() {
    let v = json(&["chain", "r4"], TREFOIL);
    let c = v["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0]["monomial"], "1");
    assert_eq!(c[0]["bubbling"][0]["face"], 5);
    assert_eq!(v["filters"][0]["enumerated"], 323);
}

#[test]
fn grading_accepts_collections_with_sides() {
    let v = json(&["grading", "r1r2", "r1+r2:etabar"], TREFOIL);
    let g = v["gradings"].as_array().unwrap();
    assert_eq!(g[0]["i"], serde_json::json!([0, 1, 0, 0, 0, 0]));
    assert_eq!(g[1]["i"], serde_json::json!([0, 1, 0, 0, 0, 0]));
    assert_eq!(v["bubbling"].as_array().unwrap().len(), 4);
}

#[test]
fn other_subcommands_run() {
    let h = json(&["homology"], TREFOIL);
    assert_eq!(h["presentation"][0]["summands"], serde_json::json!([2]));
    let q = json(&["quiver"], "L1,L3,X2,X2,R1,R1 / labels [2,3,1,4]");
    assert_eq!(q["summary"][0]["edges"], 4);
    let c = json(&["cz", "r4r5"], TREFOIL);
    assert_eq!(c["cz"][0]["cz"], 4);
    assert_eq!(c["rotation"].as_array().unwrap().len(), 50);
    let ch = json(&["chords", "--max-len", "2"], "L1,L2,R1,R1");
    assert!(!ch["chord_words"].as_array().unwrap().is_empty());
}

#[test]
fn tsv_and_markdown() {
    let o = reeb(&["invariants", "--format", "tsv"], TREFOIL);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("# components\ncomponent\tcoefficient\ttb\trot\tlinking\n0\t1\t1\t0\t1\n"));
    let o = reeb(&["quiver", "--format", "md"], "L1,R1");
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("### edges\n\n| chord | from | to |\n|---|---|---|\n| r1 | 0 | 0 |\n"));
}

#[test]
fn bad_input_exits_with_2() {
    for (args, input) in [
        (&["parse"][..], "L1,X4"),
        (&["parse"][..], "L1,Z1"),
        (&["parse"][..], "{\"events\": 3}"),
        (&["chain", "r9"][..], TREFOIL),
        (&["chain", "r4", "--epsilon", "10"][..], TREFOIL),
        (&["parse", "--input", "/nonexistent/front"][..], ""),
        (&["orbits", "--epsilon", "x"][..], TREFOIL),
    ] {
        let o = reeb(args, input);
        assert_eq!(o.status.code(), Some(2), "{args:?} {input}");
        assert!(!o.stderr.is_empty());
    }
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn tiltmut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltmut")).current_dir(root()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("fixtures/golden").join(name)).unwrap()
}

#[test]
fn goldens_match() {
    let cases: &[(&[&str], &str)] = &[
        (&["mutate", "fixtures/e2.alg", "--vertex", "1"], "e2-mutate-1.txt"),
        (&["mutate", "fixtures/e1-3.alg", "--vertex", "1"], "e1-3-mutate-1.txt"),
        (&["simples", "fixtures/e2.alg", "--vertex", "1"], "e2-simples-1.txt"),
        (&["resolve", "fixtures/e2.alg", "--vertex", "1", "--j", "1"], "e2-resolve-1-1.txt"),
        (&["msob", "fixtures/e2.alg", "fixtures/e2-simples.system", "--vertex", "1"], "e2-msob-left-1.txt"),
        (&["export-dot", "fixtures/e2.alg", "--vertex", "1"], "e2-mutate-1.dot"),
        (&["compare", "fixtures/e2.alg", "--vertex", "1"], "e2-compare-1.txt"),
    ];
    for (args, file) in cases {
        let first = tiltmut(args);
        assert!(first.status.success(), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(stdout(&first), golden(file), "{args:?}");
        assert_eq!(stdout(&tiltmut(args)), stdout(&first), "not deterministic: {args:?}");
    }
}

#[test]
fn mutated_e2_is_e2() {
    let out = stdout(&tiltmut(&["mutate", "fixtures/e2.alg", "--vertex", "1"]));
    let p = tiltmut_core::grammar::parse_presentation(&out).unwrap();
    assert!(tiltmut_core::mutation::presentation_iso(&p, &tiltmut_core::fixtures::e2()).unwrap().is_some());
}

#[test]
fn simples_json() {
    let out = tiltmut(&["simples", "fixtures/e2.alg", "--vertex", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims: Vec<serde_json::Value> = v.as_array().unwrap().iter().map(|s| s["dims"].clone()).collect();
    assert_eq!(dims, vec![serde_json::json!([1, 0, 0]), serde_json::json!([1, 1, 2]), serde_json::json!([1, 2, 1])]);
}

#[test]
fn loop_vertex_exit_codes() {
    let v = tiltmut(&["validate", "fixtures/loop-at-1.alg"]);
    assert!(v.status.success(), "{}", stdout(&v));
    let m = tiltmut(&["mutate", "fixtures/loop-at-1.alg", "--vertex", "1"]);
    assert_eq!(m.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&m.stderr).contains("LoopAtVertex"));
    let j = tiltmut(&["mutate", "fixtures/loop-at-1.alg", "--vertex", "1", "--format", "json"]);
    assert_eq!(j.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["code"], "LoopAtVertex");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tiltmut(&["mutate", "fixtures/e2.alg"]).status.code(), Some(2));
    assert_eq!(tiltmut(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tiltmut(&["mutate", "fixtures/e2.alg", "--vertex", "1", "--side", "up"]).status.code(), Some(2));
}

#[test]
fn right_mutation_and_field_override() {
    let out = tiltmut(&["mutate", "fixtures/e2.alg", "--vertex", "1", "--side", "right", "--field", "F 3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p = tiltmut_core::grammar::parse_presentation(&stdout(&out)).unwrap();
    assert_eq!(p.field, tiltmut_core::Field::Prime(3));
    assert_eq!(p.quiver.num_arrows(), 6);
}

#[test]
fn validate_reports_problems() {
    let dir = std::env::temp_dir().join("tiltmut-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("path.alg");
    std::fs::write(&f, "field Q\nvertex 1\nvertex 2\narrow a : 1 -> 2\n").unwrap();
    let out = tiltmut(&["validate", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["weaklySymmetric"], false);
}

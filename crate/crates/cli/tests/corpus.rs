//! Golden corpus round-trip. Set `RELEXT_BLESS=1` to regenerate the files
//! under `corpus/golden`.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[String]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_relext"))
        .args(args)
        .current_dir(corpus_dir())
        .env_remove("RELEXT_KNIT_CAP")
        .env_remove("RELEXT_LENGTH_CAP")
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn entries() -> Vec<Value> {
    let text = std::fs::read_to_string(corpus_dir().join("manifest.json")).unwrap();
    serde_json::from_str::<Value>(&text).unwrap().as_array().unwrap().clone()
}

fn args_of(e: &Value) -> Vec<String> {
    e["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect()
}

fn golden_path(e: &Value) -> PathBuf {
    let name = e["name"].as_str().unwrap();
    let ext = if args_of(e).iter().any(|a| a == "dot") {
        "dot"
    } else if args_of(e).iter().any(|a| a == "text") {
        "txt"
    } else {
        "json"
    };
    corpus_dir().join("golden").join(format!("{name}.{ext}"))
}

#[test]
fn golden_files_match() {
    let bless = std::env::var("RELEXT_BLESS").is_ok_and(|v| v == "1");
    let mut failures = Vec::new();
    for e in entries() {
        let name = e["name"].as_str().unwrap();
        assert!(e["note"].as_str().is_some_and(|n| !n.is_empty()), "{name} lacks a note");
        let (stdout, code) = run(&args_of(&e));
        let expected_code = e["exit"].as_i64().unwrap() as i32;
        if code != expected_code {
            failures.push(format!("{name}: exit {code}, expected {expected_code}"));
            continue;
        }
        let path = golden_path(&e);
        if bless {
            std::fs::write(&path, &stdout).unwrap();
        } else {
            match std::fs::read(&path) {
                Ok(g) if g == stdout => {}
                Ok(_) => failures.push(format!("{name}: output differs from {}", path.display())),
                Err(_) => failures.push(format!("{name}: missing {}", path.display())),
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn repeated_runs_are_identical() {
    for name in ["two_zero.extend", "e6_a.ar", "double_arrow.bimodule"] {
        let e = entries().into_iter().find(|e| e["name"] == name).unwrap();
        let a = run(&args_of(&e));
        let b = run(&args_of(&e));
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("relext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lp = dir.join("loop.quiver");
    std::fs::write(&lp, "vertices 1\narrow a 1 1\n").unwrap();
    let empty = dir.join("empty.quiver");
    std::fs::write(&empty, "").unwrap();
    let bad = dir.join("bad.quiver");
    std::fs::write(&bad, "vertices 1 2\narrow a 1 3\n").unwrap();
    let s = |p: &Path| p.to_str().unwrap().to_string();
    assert_eq!(run(&["check".into(), s(&lp)]).1, 2);
    assert_eq!(run(&["check".into(), s(&bad)]).1, 2);
    let (out, code) = run(&["check".into(), s(&empty)]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["dim"], 0);
    assert_eq!(v["schema"], "relext.check/1");
    // a single module is not a local slice of a six-vertex algebra
    assert_eq!(run(&["slices".into(), "e6_a.quiver".into(), "--local".into(), "--member".into(), "1,1,1,1,0,0".into()]).1, 1);
    assert_eq!(run(&["partial".into(), "two_zero.quiver".into(), "--keep".into(), "alpha".into()]).1, 2);
    assert_eq!(run(&["check".into(), "two_zero.quiver".into(), "--field".into(), "F4".into()]).1, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn prime_field_agrees() {
    let (q, _) = run(&["extend".into(), "double_arrow.quiver".into()]);
    let (p, code) = run(&["extend".into(), "double_arrow.quiver".into(), "--field".into(), "F7".into()]);
    assert_eq!(code, 0);
    let (q, p): (Value, Value) = (serde_json::from_slice(&q).unwrap(), serde_json::from_slice(&p).unwrap());
    assert_eq!(q["e_dim"], p["e_dim"]);
    assert_eq!(q["e_graded"], p["e_graded"]);
    assert_eq!(q["potential"], p["potential"]);
}

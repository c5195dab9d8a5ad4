//! End-to-end runs of the binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splithom")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("valid JSON report"))
}

fn emit(dir: &Path, name: &str, param: Option<&str>) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let mut args = vec!["catalog", name, "--emit", path.to_str().unwrap()];
    if let Some(p) = param {
        args.extend(["--param", p]);
    }
    assert_eq!(code(&run(&args)), 0);
    path
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn decompose_example_family() {
    let dir = TempDir::new().unwrap();
    let file = emit(dir.path(), "example1", Some("2"));
    let (c, v) = json(&["decompose", file.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["u"]["even"], serde_json::json!(["e2"]));
    assert_eq!(v["u"]["odd"], serde_json::json!(["e3"]));
    let mut dims: Vec<u64> = v["ideals"].as_array().unwrap().iter().map(|i| i["dim"].as_u64().unwrap()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 5]);
    assert_eq!(v["pairwise_orthogonal"], true);
}

#[test]
fn corrupted_file_fails_validation_with_witness() {
    let dir = TempDir::new().unwrap();
    let file = emit(dir.path(), "sl2", None);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    // Rescale one product only: Jacobi breaks.
    doc["bracket"][0]["terms"][0][1] = Value::from("5");
    let bad = write(dir.path(), "bad.json", &doc.to_string());
    let (c, v) = json(&["validate", &bad]);
    assert_eq!(c, 3);
    assert_eq!(v["passed"], false);
    let first = &v["violations"][0];
    assert!(!first["witness"].as_array().unwrap().is_empty());
    assert!(first["axiom"].is_string());
    let (c, _) = json(&["decompose", &bad]);
    assert_eq!(c, 3);
}

#[test]
fn exit_categories() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["catalog", "nope"])), 1);
    assert_eq!(code(&run(&["fuzz", "--seeds", "1", "--max-dim", "2"])), 1);
    let garbage = write(dir.path(), "garbage.json", "{ not json");
    assert_eq!(code(&run(&["validate", &garbage])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/file.json"])), 2);
    // [h,x] = y, [h,y] = -x: ad h has eigenvalues ±i.
    let rotation = write(
        dir.path(),
        "rotation.json",
        r#"{"field":"Q","basis":[{"name":"h","parity":0},{"name":"x","parity":0},{"name":"y","parity":0}],
            "bracket":[{"left":0,"right":1,"terms":[[2,"1"]]},{"left":0,"right":2,"terms":[[1,"-1"]]}],
            "phi":[{"source":0,"target":0,"value":"1"},{"source":1,"target":1,"value":"1"},{"source":2,"target":2,"value":"1"}],
            "magsa":[0]}"#,
    );
    assert_eq!(code(&run(&["validate", &rotation])), 0);
    let (c, v) = json(&["roots", &rotation]);
    assert_eq!(c, 4);
    assert_eq!(v["status"], "NOT_SPLIT");
    let sl2 = emit(dir.path(), "sl2", None);
    let (c, v) = json(&["roots", sl2.to_str().unwrap(), "--magsa", "7"]);
    assert_eq!((c, v["status"].as_str()), (1, Some("USAGE_ERROR")));
    let example = emit(dir.path(), "example1", Some("2"));
    let (c, v) = json(&["components", example.to_str().unwrap()]);
    assert_eq!((c, v["status"].as_str()), (3, Some("PRECONDITION_UNMET")));
}

#[test]
fn status_determines_exit_code() {
    let dir = TempDir::new().unwrap();
    let file = emit(dir.path(), "example1", Some("3"));
    let f = file.to_str().unwrap();
    let expected = |status: &str| match status {
        "OK" => 0,
        "USAGE_ERROR" => 1,
        "PARSE_ERROR" => 2,
        "VALIDATION_FAILED" | "PRECONDITION_UNMET" => 3,
        "NOT_SPLIT" => 4,
        _ => 5,
    };
    for cmd in ["validate", "roots", "connections", "decompose", "simplicity", "components"] {
        let (c, v) = json(&[cmd, f]);
        assert_eq!(c, expected(v["status"].as_str().unwrap()), "{cmd}");
        assert_eq!(v["command"], cmd);
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let file = emit(dir.path(), "example1", Some("3"));
    let f = file.to_str().unwrap();
    for args in [vec!["connections", f, "--witness"], vec!["--json", "simplicity", f], vec!["roots", f]] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
    let again = dir.path().join("again.json");
    run(&["catalog", "example1", "--param", "3", "--emit", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&file).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn connection_pair_with_witness() {
    let dir = TempDir::new().unwrap();
    let file = emit(dir.path(), "example1", Some("2"));
    // Roots in order: -beta, gamma, -gamma, beta, alpha.
    let (c, v) = json(&["connections", file.to_str().unwrap(), "--pair", "3", "1", "--witness"]);
    assert_eq!(c, 0);
    assert_eq!(v["pair"]["connected"], true);
    assert_eq!(v["pair"]["witness"]["checked"], true);
    assert_eq!(v["pair"]["witness"]["chain"], serde_json::json!(["+r3", "+r1"]));
    let (_, v) = json(&["connections", file.to_str().unwrap(), "--pair", "4", "3"]);
    assert_eq!(v["pair"]["connected"], false);
}

#[test]
fn catalog_listing_and_stdout_document() {
    let (c, v) = json(&["catalog"]);
    assert_eq!(c, 0);
    assert_eq!(v["entries"].as_array().unwrap().len(), 8);
    let o = run(&["catalog", "osp12"]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["field"], "Q");
}

#[test]
fn short_fuzz_run() {
    let (c, v) = json(&["fuzz", "--seeds", "5", "--max-dim", "8"]);
    assert_eq!(c, 0);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["instances"], 5);
}

/// Text-form tree: every leaf stays a raw string.
#[derive(Debug)]
enum Node {
    Leaf(String),
    Map(Vec<(String, Node)>),
    List(Vec<Node>),
}

fn indent_of(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

fn parse_block(lines: &[&str], pos: &mut usize, indent: usize) -> Node {
    if *pos < lines.len() && indent_of(lines[*pos]) == indent && lines[*pos].trim_start().starts_with('-') {
        let mut items = Vec::new();
        while *pos < lines.len() && indent_of(lines[*pos]) == indent {
            let body = lines[*pos].trim_start();
            *pos += 1;
            match body.strip_prefix("- ") {
                Some(v) => items.push(Node::Leaf(v.to_owned())),
                None => items.push(parse_block(lines, pos, indent + 2)),
            }
        }
        return Node::List(items);
    }
    let mut entries = Vec::new();
    while *pos < lines.len() && indent_of(lines[*pos]) == indent {
        let body = lines[*pos].trim_start();
        *pos += 1;
        if let Some((k, v)) = body.split_once(": ") {
            entries.push((k.to_owned(), Node::Leaf(v.to_owned())));
        } else {
            let k = body.strip_suffix(':').expect("key line");
            let child = if *pos < lines.len() && indent_of(lines[*pos]) > indent {
                parse_block(lines, pos, indent + 2)
            } else {
                Node::Map(Vec::new())
            };
            entries.push((k.to_owned(), child));
        }
    }
    Node::Map(entries)
}

fn split_inline(s: &str) -> Vec<String> {
    let inner = &s[1..s.len() - 1];
    let (mut out, mut depth, mut cur) = (Vec::new(), 0, String::new());
    for ch in inner.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_owned());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_owned());
    }
    out
}

fn leaf_matches(v: &Value, s: &str) -> bool {
    match v {
        Value::Null => s == "none",
        Value::String(x) => x == s,
        Value::Array(items) => {
            let parts = split_inline(s);
            s.starts_with('[') && parts.len() == items.len() && items.iter().zip(&parts).all(|(i, p)| leaf_matches(i, p))
        }
        Value::Object(m) => m.is_empty() && s.is_empty(),
        other => s == format!("{other}"),
    }
}

fn same(v: &Value, n: &Node) -> bool {
    match (v, n) {
        (_, Node::Leaf(s)) => leaf_matches(v, s),
        (Value::Object(m), Node::Map(entries)) => {
            m.len() == entries.len() && entries.iter().all(|(k, child)| m.get(k).is_some_and(|x| same(x, child)))
        }
        (Value::Array(items), Node::List(nodes)) => {
            items.len() == nodes.len() && items.iter().zip(nodes).all(|(i, n)| same(i, n))
        }
        (Value::Array(items), Node::Map(e)) => items.is_empty() && e.is_empty(),
        _ => false,
    }
}

#[test]
fn text_and_json_carry_identical_data() {
    let dir = TempDir::new().unwrap();
    let files = [emit(dir.path(), "example1", Some("3")), emit(dir.path(), "osp12", None)];
    for file in &files {
        let f = file.to_str().unwrap();
        for args in [
            vec!["validate", f],
            vec!["roots", f],
            vec!["connections", f, "--witness"],
            vec!["decompose", f],
            vec!["simplicity", f],
            vec!["components", f],
        ] {
            let text = stdout(&run(&args));
            let mut with_json = vec!["--json"];
            with_json.extend(&args);
            let value: Value = serde_json::from_str(&stdout(&run(&with_json))).unwrap();
            let lines: Vec<&str> = text.lines().collect();
            let tree = parse_block(&lines, &mut 0, 0);
            assert!(same(&value, &tree), "{args:?}\n{text}");
        }
    }
}

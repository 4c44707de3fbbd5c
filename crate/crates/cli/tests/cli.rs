use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

use scroll_rees::algebra::{parse_poly, Field};
use scroll_rees_cli::document::{Document, FIELD_ENV};
use scroll_rees_cli::run;

const BIN: &str = env!("CARGO_BIN_EXE_scroll-rees");

/// Runs the binary with `stdin`, returning exit code and stdout.
fn exe(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove(FIELD_ENV)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn lib(args: &[&str], stdin: &str, env: Option<&str>) -> scroll_rees_cli::Outcome {
    let mut argv = vec!["scroll-rees"];
    argv.extend_from_slice(args);
    run(argv, &mut stdin.as_bytes(), env)
}

fn example(n: u32, sigma: usize, tau: usize) -> String {
    let (code, out, _) = exe(
        &[
            "example",
            "--n",
            &n.to_string(),
            "--sigma",
            &sigma.to_string(),
            "--tau",
            &tau.to_string(),
        ],
        "",
    );
    assert_eq!(code, 0);
    out
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).expect("json output")
}

#[test]
fn example_then_betti() {
    let doc = example(2, 1, 1);
    let (code, out, _) = exe(&["betti", "--s", "2", "--json"], &doc);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["a"], 0);
    assert_eq!(v["b0"], 9);
    assert_eq!(v["regularity"], 8);
}

#[test]
fn plane_curve_fiber() {
    for n in 2..=4 {
        let (code, out, _) = exe(&["fiber", "--json"], &example(n, 1, 0));
        assert_eq!(code, 0);
        let v = json(&out);
        let eqs = v["equations"].as_array().unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0]["degree"], v["d"]);
    }
}

#[test]
fn verify_succeeds_on_random_instances() {
    for (seed, s, t, n) in [("1", "2", "1", "2"), ("2", "1", "0", "3"), ("3", "2", "2", "2")] {
        let (_, doc, _) = exe(
            &[
                "example", "--random", "--seed", seed, "--n", n, "--sigma", s, "--tau", t,
            ],
            "",
        );
        let (code, out, err) = exe(&["verify", "--json", "--window", "3,2"], &doc);
        assert_eq!(code, 0, "{err}");
        let v = json(&out);
        assert_eq!(v["passed"], true);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
        assert_eq!(v["checks"][1]["window"]["u_max"], 3);
    }
}

#[test]
fn validation_failures_exit_2() {
    let zero_column = r#"{"input": {"matrix": [["x","0","y^2"],["-y","0","0"],["0","x","0"],["0","-y","0"]]}}"#;
    let (code, _, err) = exe(&["rees"], zero_column);
    assert_eq!(code, 2);
    assert!(err.contains("height two"), "{err}");

    let linear_last = r#"{"input": {"matrix": [["x","y"],["-y","x"],["0","y"]]}}"#;
    let (code, _, err) = exe(&["rees"], linear_last);
    assert_eq!(code, 2);
    assert!(err.contains("(x,y)^d") || err.contains("I = (x,y)"), "{err}");

    let (code, _, err) = exe(&["rees"], "{\n  \"input\": {\"matrix\": [[\"x\",");
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let bad_poly = r#"{"input": {"matrix": [["x","0","y^2"],["-y","0","0"],["0","x","0"],["0","-y","x^^2"]]}}"#;
    let (code, _, err) = exe(&["rees"], bad_poly);
    assert_eq!(code, 2);
    assert!(err.contains("matrix[3][2]"), "{err}");

    let common = r#"{"input": {"pair": {"sigma": 1, "tau": 1, "F1": "x^3", "F2": "x^3"}}}"#;
    assert_eq!(exe(&["rees"], common).0, 2);

    assert_eq!(exe(&["rees", "--frobnicate"], "").0, 2);
    assert_eq!(exe(&["betti"], "").0, 2);
    assert_eq!(exe(&["rees", "--field", "12"], &example(2, 1, 1)).0, 2);
}

#[test]
fn missing_input_file_exits_1() {
    let (code, _, err) = exe(&["rees", "--input", "/nonexistent/doc.json"], "");
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/doc.json"));
}

#[test]
fn input_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(example(3, 2, 1).as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    let (code, out, _) = exe(&["invariants", "--json", "--input", path], "");
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["rho"], 2);
    assert_eq!(v["sigma"], serde_json::json!([2, 1]));
    assert_eq!(v["r_I"]["value"], 2);
    assert_eq!(v["reg"]["values"].as_array().unwrap().len(), 3);
    assert_eq!(v["betti"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let a = exe(
        &[
            "example", "--random", "--seed", "42", "--n", "3", "--sigma", "2", "--tau", "1",
        ],
        "",
    );
    let b = exe(
        &[
            "example", "--random", "--seed", "42", "--n", "3", "--sigma", "2", "--tau", "1",
        ],
        "",
    );
    let c = exe(
        &[
            "example", "--random", "--seed", "43", "--n", "3", "--sigma", "2", "--tau", "1",
        ],
        "",
    );
    assert_eq!(a, b);
    assert_ne!(a.1, c.1);
    for cmd in [
        vec!["rees"],
        vec!["verify", "--seed", "5"],
        vec!["canonicalize", "--json"],
    ] {
        assert_eq!(exe(&cmd, &a.1), exe(&cmd, &a.1));
    }
}

#[test]
fn json_round_trips() {
    let doc_text = example(2, 2, 1);
    let doc = Document::parse(&doc_text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", doc_text);

    let (code, out, _) = exe(&["rees", "--json"], &doc_text);
    assert_eq!(code, 0);
    let v = json(&out);
    let m = v["m"].as_u64().unwrap() as usize;
    for g in v["generators"].as_array().unwrap() {
        let src = g["poly"].as_str().unwrap();
        let p = parse_poly(src, Field::Prime(32003), m).unwrap();
        assert_eq!(p.to_string(), src);
        let bd = p.bidegree().unwrap();
        assert_eq!(serde_json::json!([bd.0, bd.1]), g["bidegree"]);
    }

    let (_, canon, _) = exe(&["canonicalize", "--json"], &doc_text);
    let v = json(&canon);
    let rows: Vec<Vec<String>> = serde_json::from_value(v["canonical"].clone()).unwrap();
    let again = serde_json::json!({"input": {"matrix": rows}}).to_string();
    let (_, canon2, _) = exe(&["canonicalize", "--json"], &again);
    let w = json(&canon2);
    assert_eq!((&w["rho"], &w["sigma"]), (&v["rho"], &v["sigma"]));
    let linear = |x: &Value| -> Vec<Vec<Value>> {
        x["canonical"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap()[..m - 2].to_vec())
            .collect()
    };
    assert_eq!(linear(&w), linear(&v));
}

#[test]
fn field_precedence() {
    let doc = r#"{"field": {"prime": 101}, "input": {"pair": {"sigma": 1, "tau": 0, "F1": "y^3", "F2": "x^2"}}}"#;
    let field_of = |o: scroll_rees_cli::Outcome| json(&o.stdout)["field"].clone();
    assert_eq!(
        field_of(lib(&["rees", "--json"], doc, Some("7"))),
        serde_json::json!({"prime": 101})
    );
    assert_eq!(
        field_of(lib(&["rees", "--json", "--field", "Q"], doc, Some("7"))),
        serde_json::json!("rational")
    );
    let bare = r#"{"input": {"pair": {"sigma": 1, "tau": 0, "F1": "y^3", "F2": "x^2"}}}"#;
    assert_eq!(
        field_of(lib(&["rees", "--json"], bare, Some("7"))),
        serde_json::json!({"prime": 7})
    );
    assert_eq!(
        field_of(lib(&["rees", "--json"], bare, None)),
        serde_json::json!({"prime": 32003})
    );
}

#[test]
fn rational_inputs() {
    let doc = r#"{"field": "rational", "input": {"matrix": [["x","0","1/2*y^2"],["-y","0","0"],["0","x","0"],["0","-y","3*x^2"]]}}"#;
    let out = lib(&["verify", "--json", "--window", "2,2"], doc, None);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json(&out.stdout)["prime"], 32003);
    let out = lib(&["hilbert", "--s", "2", "--z", "9", "--check", "--json"], doc, None);
    let v = json(&out.stdout);
    assert_eq!(v["value"], v["oracle"]);
    assert_eq!(v["value"], 10);
}

#[test]
fn tables_render() {
    let doc = example(2, 1, 1);
    let out = lib(&["rees"], &doc, None);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("field:\n  prime: 32003\nm: 4\n"));
    assert!(out.stdout.contains("kind"));
    assert!(out.stdout.contains("f_1"));
    let help = lib(&["--help"], "", None);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
}

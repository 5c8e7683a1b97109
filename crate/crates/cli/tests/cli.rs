use std::io::Write;
use std::process::{Command, Output, Stdio};

use hollowpoly::exactgeom::rational::Rational;
use hollowpoly_cli::document::PolytopeDocument;
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::Value;

const TRIANGLE: &str = r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2]]}"#;
const SQUARE: &str = r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1],[1,1]]}"#;

fn hollowpoly(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hollowpoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(args: &[&str], stdin: &str) -> Value {
    let out = hollowpoly(args, stdin);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn json_err(args: &[&str], stdin: &str, code: i32) -> Value {
    let out = hollowpoly(args, stdin);
    assert_eq!(out.status.code(), Some(code));
    assert!(out.stdout.is_empty());
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn hollow_triangle() {
    let v = json_out(&["hollow", "-"], TRIANGLE);
    assert_eq!(v["verdict"], "hollow");
    let v = json_out(&["hollow"], r#"{"dim":2,"vertices":[[0,0],[3,0],[0,3]]}"#);
    assert_eq!(v["verdict"], "not-hollow");
    assert_eq!(v["witness"], serde_json::json!([1, 1]));
}

#[test]
fn bound_digits() {
    let v = json_out(&["bounds", "--formula", "thm21", "-d", "3", "-s", "1"], "");
    assert_eq!(v["digits"], 117);
    let v = json_out(&["bounds", "--formula", "prop16"], "");
    assert_eq!(v["ceiling"], 4106);
    assert_eq!(v["value"], "8000000000000000000/1948581652462327");
    let v = json_out(&["bounds", "--formula", "lemma27"], "");
    assert_eq!(v["value"], "234387/15613");
    let v = json_out(&["bounds", "--formula", "kl-deltas", "-d", "2"], "");
    assert_eq!(v["value"][1], "1");
    let v = json_out(&["bounds", "--formula", "thm25", "-k", "1", "-s", "1"], "");
    assert_eq!(v["value"], "20503124999");
}

#[test]
fn family_verification_passes() {
    let v = json_out(&["family", "--verify", "4"], "");
    assert_eq!(v["verdict"], "pass");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 12);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn family_constructors() {
    let v = json_out(&["family", "--delta", "4"], "");
    assert_eq!(v["value"]["vertices"][1], serde_json::json!([0, 0, 0, "28/3"]));
    let v = json_out(&["family", "--delta-i", "4"], "");
    assert_eq!(v["value"]["vertices"].as_array().unwrap().len(), 7);
    let v = json_out(&["family", "--triangle"], "");
    assert_eq!(v["value"]["vertices"], serde_json::json!([[0, 0], [0, 2], [2, 0]]));
    json_err(&["family"], "", 2);
    json_err(&["family", "--delta", "2"], "", 2);
    json_err(&["family", "--verify", "9"], "", 2);
}

#[test]
fn geometry_commands() {
    let v = json_out(&["points", "--scale", "1"], SQUARE);
    assert_eq!(v["value"], 4);
    assert_eq!(v["points"], serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
    let v = json_out(&["interior", "--scale", "2"], r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2],[2,2]]}"#);
    assert_eq!(v["value"], 0);
    let v = json_out(&["width"], TRIANGLE);
    assert_eq!(v["value"], 2);
    assert_eq!(v["certified"], true);
    assert_eq!(json_out(&["cayley"], TRIANGLE)["verdict"], "not-cayley");
    assert_eq!(json_out(&["cayley"], SQUARE)["verdict"], "cayley");
    let v = json_out(&["project", "--kernel", "0,1"], SQUARE);
    assert_eq!(v["value"]["vertices"], serde_json::json!([[0], [1]]));
    let v = json_out(&["project", "--kernel", "2,0"], SQUARE);
    assert_eq!(v["map"]["saturated"], true);
    let v = json_out(&["find-projection", "--radius", "3"], TRIANGLE);
    assert_eq!(v["verdict"], "none-within-radius");
    let v = json_out(&["find-projection"], SQUARE);
    assert_eq!(v["verdict"], "found");
    let v = json_out(&["asymmetry", "--point", "1,1"], r#"{"dim":2,"vertices":[[0,0],[3,0],[0,3]]}"#);
    assert_eq!((v["value"].clone(), v["delta"].clone()), (serde_json::json!(2), serde_json::json!("1/3")));
    let v = json_out(&["min-asymmetry"], r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2],[2,2]]}"#);
    assert_eq!((v["point"].clone(), v["value"].clone()), (serde_json::json!([1, 1]), serde_json::json!(1)));
    let v = json_out(&["integer-hull"], r#"{"dim":2,"vertices":[[0,0],["3/2",0],[0,"3/2"]]}"#);
    assert_eq!(v["value"]["vertices"], serde_json::json!([[0, 0], [0, 1], [1, 0]]));
    let v = json_out(&["canonical"], r#"{"dim":2,"vertices":[[0,0],[2,0],[2,2]]}"#);
    assert_eq!(v, json_out(&["canonical"], TRIANGLE));
}

#[test]
fn maximality_commands() {
    assert_eq!(json_out(&["maximal-body"], TRIANGLE)["verdict"], "maximal");
    let v = json_out(&["maximal-body"], SQUARE);
    assert_eq!(v["verdict"], "not-maximal");
    assert!(v["facets"].as_array().unwrap().iter().all(|f| f["blocked"] == false));
    assert_eq!(json_out(&["maximal-lattice"], TRIANGLE)["verdict"], "maximal");
    let v = json_out(&["maximal-lattice", "--radius", "1"], SQUARE);
    assert_eq!(v["verdict"], "not-maximal");
    assert!(v["witness"].is_array());
    let e = json_err(&["maximal-lattice", "--cap", "0"], SQUARE, 3);
    assert_eq!(e["error"], "cap-exceeded");
    let e = json_err(&["maximal-body"], r#"{"dim":2,"vertices":[[0,0],[3,0],[0,3]]}"#, 2);
    assert_eq!(e["error"], "geometry");
}

#[test]
fn equivalence_of_files() {
    let dir = std::env::temp_dir().join(format!("hollowpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, TRIANGLE).unwrap();
    std::fs::write(&b, r#"{"dim":2,"vertices":[[0,0],[2,0],[2,2]]}"#).unwrap();
    let v = json_out(&["equivalent", a.to_str().unwrap(), b.to_str().unwrap()], "");
    assert_eq!(v["verdict"], "equivalent");
    std::fs::write(&b, SQUARE).unwrap();
    let v = json_out(&["equivalent", a.to_str().unwrap(), b.to_str().unwrap()], "");
    assert_eq!(v["verdict"], "not-equivalent");
    let e = json_err(&["hollow", dir.join("missing.json").to_str().unwrap()], "", 2);
    assert_eq!(e["error"], "io");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_command() {
    let v = json_out(&["census2d", "--k", "3"], "");
    assert_eq!(v["value"], 148);
    let hollow = v["hollow_classes"].as_array().unwrap();
    assert_eq!(hollow.len(), 10);
    assert_eq!(hollow.iter().filter(|h| h["tag"] == "exceptional").count(), 1);
    let e = json_err(&["census2d", "--k", "6"], "", 3);
    assert_eq!(e["error"], "cap-exceeded");
}

#[test]
fn input_errors_exit_two() {
    json_err(&["hollow"], "not json", 2);
    json_err(&["hollow"], r#"{"dim":2}"#, 2);
    json_err(&["hollow"], r#"{"dim":2,"vertices":[[0.5,0],[1,0],[0,1]]}"#, 2);
    json_err(&["hollow"], r#"{"dim":2,"vertices":[[0,0,0],[1,0],[0,1]]}"#, 2);
    json_err(&["hollow"], r#"{"dim":2,"vertices":[[0,0],[1,1],[2,2]]}"#, 2);
    let e = json_err(
        &["hollow"],
        r#"{"dim":1,"vertices":[[0],[1]],"inequalities":[{"a":[1],"b":"2"},{"a":[-1],"b":"0"}]}"#,
        2,
    );
    assert_eq!(e["error"], "document");
    json_err(&["bounds", "--formula", "nope"], "", 2);
    json_err(&["asymmetry", "--point", "0,0"], TRIANGLE, 2);
    json_err(&["min-asymmetry"], TRIANGLE, 2);
    json_err(&["no-such-command"], "", 2);
}

#[test]
fn inequality_documents() {
    let doc = r#"{"dim":2,"inequalities":[{"a":[-1,0],"b":"0"},{"a":[0,-1],"b":0},{"a":[1,1],"b":"2"}]}"#;
    assert_eq!(json_out(&["hollow"], doc)["verdict"], "hollow");
    let both = r#"{"dim":2,"vertices":[[0,0],[2,0],[0,2]],"inequalities":[{"a":[-1,0],"b":"0"},{"a":[0,-1],"b":"0"},{"a":[1,1],"b":"2"}],"metadata":{"name":"triangle"}}"#;
    assert_eq!(json_out(&["width"], both)["value"], 2);
}

#[test]
fn output_is_deterministic() {
    for args in [&["width"][..], &["maximal-lattice"][..], &["canonical"][..], &["points"][..]] {
        let a = hollowpoly(args, SQUARE);
        let b = hollowpoly(args, SQUARE);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = hollowpoly(&["census2d", "--k", "2"], "");
    let b = hollowpoly(&["census2d", "--k", "2"], "");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = hollowpoly_cli::run(["hollowpoly", "bounds", "--formula", "lemma27"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, hollowpoly(&["bounds", "--formula", "lemma27"], "").stdout);
}

fn coord() -> impl Strategy<Value = Value> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| {
        let q = Rational::new(BigInt::from(n), BigInt::from(d));
        if q.is_integer() && n % 2 == 0 {
            Value::from(n / d)
        } else {
            Value::String(format!("{n}/{d}"))
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip(
        dim in 1usize..=3,
        pts in prop::collection::vec(prop::collection::vec(coord(), 3), 2..8),
    ) {
        let vertices: Vec<Value> = pts.iter().map(|p| Value::Array(p[..dim].to_vec())).collect();
        let doc = serde_json::json!({ "dim": dim, "vertices": vertices });
        let parsed = PolytopeDocument::from_json(&doc).unwrap();
        if let Ok(p) = parsed.to_polytope() {
            let once = PolytopeDocument::from_polytope(&p).to_json().to_string();
            let again = PolytopeDocument::parse_str(&once).unwrap();
            prop_assert_eq!(again.to_polytope().unwrap(), p.clone());
            let twice = PolytopeDocument::from_polytope(&again.to_polytope().unwrap()).to_json().to_string();
            prop_assert_eq!(&once, &twice);
            let only_h = serde_json::json!({
                "dim": dim,
                "inequalities": serde_json::from_str::<Value>(&twice).unwrap()["inequalities"].clone(),
            });
            prop_assert_eq!(PolytopeDocument::from_json(&only_h).unwrap().to_polytope().unwrap(), p);
        }
    }
}

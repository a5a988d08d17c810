use std::process::{Command, Output};

use atl::algebra::JsonTerm;
use atl::coeff::parse_scalar;
use atl::{CoxeterGraph, Scalar, TLElement};

fn atl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atl")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = atl(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn invariant_examples() {
    let out = stdout(&["invariant", "--gens", "2", "s1 s1 s1", "", "a a^-1", "s1", "a s1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "-v^8+v^6+v^2");
    assert_eq!(lines[1], "(-v^2-1)/v");
    assert_eq!(lines[2], lines[1]);
    assert_eq!(lines[3], "1");
    assert_eq!(parse_scalar(lines[4]).unwrap(), "-v*(1+q^2)".parse::<Scalar>().unwrap());
}

#[test]
fn invariant_json_round_trips() {
    let out = stdout(&["invariant", "--gens", "2", "--format", "json", "s1 s1"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["gens"], 2);
    assert_eq!(v["input"], "s1 s1");
    let value = parse_scalar(v["invariant"].as_str().unwrap()).unwrap();
    assert_eq!(value, "-v*(1+q^2)".parse::<Scalar>().unwrap());
}

#[test]
fn batch_file_and_jobs_agree() {
    let dir = std::env::temp_dir().join(format!("atl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("words.txt");
    std::fs::write(&path, "s1 a s2\n# comment\n\ns2^-1 a a s1\na'\n").unwrap();
    let p = path.to_str().unwrap();
    let serial = stdout(&["invariant", "--gens", "3", "--file", p]);
    let parallel = stdout(&["invariant", "--gens", "3", "--file", p, "--jobs", "3"]);
    assert_eq!(serial, parallel);
    assert_eq!(serial.lines().count(), 3);
    std::fs::write(&path, "s1\ns9\n").unwrap();
    let out = atl(&["invariant", "--gens", "3", "--file", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn multiply_reduce_enumerate() {
    let out = stdout(&["multiply", "--gens", "3", "[s2 s1 a][s2 s1 a]", "[s1 s2 a]"]);
    let g = CoxeterGraph::affine(3).unwrap();
    let d3 = Scalar::delta().pow(3).unwrap();
    let expect = TLElement::term(d3, atl::FcWord::new(g, &[1, 0, 2]).unwrap());
    assert_eq!(out.trim(), expect.to_string());
    for strategy in ["right-fold", "random-redex", "leftmost"] {
        let other = stdout(&["multiply", "--gens", "3", "--strategy", strategy, "[s2 s1 a][s2 s1 a]", "[s1 s2 a]"]);
        assert_eq!(other, out);
    }
    let out = stdout(&["reduce", "--gens", "3", "s1 s2 s1"]);
    let expect = TLElement::term(Scalar::delta(), atl::FcWord::new(g, &[0]).unwrap());
    assert_eq!(out.trim(), expect.to_string());
    let out = stdout(&["enumerate-fc", "--gens", "3", "--type", "affine", "--max-len", "2"]);
    assert_eq!(out.lines().count(), 10);
    let out = stdout(&["enumerate-fc", "--gens", "3", "--type", "classical"]);
    assert_eq!(out.lines().count(), 14);
    assert_eq!(atl(&["enumerate-fc", "--gens", "3"]).status.code(), Some(2));
}

#[test]
fn multiply_json_round_trips() {
    let out = stdout(&["multiply", "--gens", "3", "--format", "json", "v*[s1] + [a]", "[s2] - 2*[s1]"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let terms: Vec<JsonTerm> = serde_json::from_value(v["terms"].clone()).unwrap();
    let g = CoxeterGraph::affine(3).unwrap();
    let parsed = TLElement::from_json_terms(g, &terms).unwrap();
    let x = atl::algebra::parse_element("v*[s1] + [a]", g).unwrap();
    let y = atl::algebra::parse_element("[s2] - 2*[s1]", g).unwrap();
    assert_eq!(parsed, &x * &y);
    let gb = stdout(&["multiply", "--gens", "3", "--basis", "g", "[s1]", "[s1]"]);
    assert!(gb.contains("[s1]"));
}

#[test]
fn trace_defaults() {
    assert_eq!(stdout(&["trace", "--gens", "3", "[s1]"]).trim(), "1");
    assert_eq!(stdout(&["trace", "--gens", "3", "--trace", "generic3", "[s1 s2 a]"]).trim(), "-1/(v^6+3*v^4+3*v^2+1)");
    let jones = stdout(&["trace", "--gens", "1", "--type", "classical", "[s1]"]);
    assert_eq!(parse_scalar(jones.trim()).unwrap(), Scalar::markov_f());
    assert_eq!(atl(&["trace", "--trace", "nope", "[s1]"]).status.code(), Some(2));
}

#[test]
fn verify_reports_and_is_deterministic() {
    let a = stdout(&["verify", "--suite", "relations", "--gens", "4", "--seed", "7"]);
    let b = stdout(&["verify", "--suite", "relations", "--gens", "4", "--seed", "7"]);
    assert_eq!(a, b);
    assert!(a.lines().all(|l| !l.starts_with("FAIL")));
    let json = stdout(&["verify", "--suite", "markov", "--gens", "3", "--seed", "7", "--samples", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["passed"], true);
    let out = stdout(&["verify", "--suite", "paper-identities", "--kmax", "2"]);
    assert!(out.contains("0 failed"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(atl(&["multiply", "[s1]"]).status.code(), Some(2));
    assert_eq!(atl(&["multiply", "[s1", "[s2]"]).status.code(), Some(2));
    assert_eq!(atl(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(atl(&["invariant", "--gens", "1", "s1"]).status.code(), Some(2));
}

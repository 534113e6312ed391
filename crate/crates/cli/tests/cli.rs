//! End-to-end runs of the `nilcone` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use nilcone::combinatorics::Bipartition;
use nilcone::exotic::{exotic_representative, sp_generators};
use nilcone::gf::make_field;
use nilcone::linalg::MatF;
use nilcone::pointfile::write_exotic;
use nilcone::qcount::QPoly;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcone")).args(args).output().expect("running nilcone")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn point_file(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn poly(v: &Value) -> QPoly {
    QPoly::from_coeffs(v.as_array().unwrap().iter().map(|c| c.to_string().parse().unwrap()).collect())
}

#[test]
fn census_enhanced_two() {
    let v = json_ok(&["census", "--cone", "enhanced", "-n", "2"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(poly(&v["footer"]["total_poly"]), QPoly::monomial(1, 4));
    assert_eq!(v["footer"]["match"], Value::Bool(true));
}

#[test]
fn census_exotic_one_at_three() {
    let v = json_ok(&["census", "--cone", "exotic", "-n", "1", "--q", "3"]);
    let counts: Vec<String> = v["rows"].as_array().unwrap().iter().map(|r| r["counts"]["3"].to_string()).collect();
    assert_eq!(counts, ["8", "1"]);
    assert_eq!(v["footer"]["total_counts"]["3"].to_string(), "9");
    assert_eq!(v["footer"]["expected_counts"]["3"].to_string(), "9");
}

#[test]
fn census_ordinary_zero() {
    let v = json_ok(&["census", "--cone", "ordinary", "-n", "0", "--q", "2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["lambda"], serde_json::json!([]));
    assert_eq!(v["footer"]["total_counts"]["2"].to_string(), "1");
}

#[test]
fn census_json_round_trips() {
    let v = json_ok(&["census", "--cone", "enhanced", "-n", "4", "--q", "2", "--q", "9", "--q", "64"]);
    for row in v["rows"].as_array().unwrap() {
        let p = poly(&row["orbit_poly"]);
        assert!(p.is_monic());
        for q in [2u64, 9, 64] {
            let count: BigInt = row["counts"][q.to_string()].to_string().parse().unwrap();
            assert_eq!(p.eval_u64(q), count);
        }
    }
}

#[test]
fn census_csv() {
    let out = run(&["census", "--cone", "enhanced", "-n", "1", "--q", "2", "--q", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mu,nu,lambda,b,J,levi,unipotent_dim,orbit_poly,q=2,q=3");
    assert_eq!(lines[1], "(1),∅,(1),0,1,GL0,0,\"[-1,1]\",1,2");
    assert_eq!(lines[2], "∅,(1),(1),1,,GL1,0,[1],1,1");
    assert_eq!(lines[3], "total,,,,,,,\"[0,1]\",2,3");
    assert_eq!(lines[4], "expected,,,,,,,\"[0,1]\",2,3");
}

#[test]
fn verify_enhanced_bfs() {
    let v = json_ok(&["verify", "--suite", "enhanced-bfs", "-n", "3", "--q", "2"]);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["summary"]["orbits"].to_string(), "10");
    assert_eq!(v["summary"]["total"].to_string(), "512");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_fini_and_symbolic() {
    let v = json_ok(&["verify", "--suite", "fini", "-n", "2", "--q", "2"]);
    assert_eq!(v["pass"], Value::Bool(true));
    let v = json_ok(&["verify", "--suite", "symbolic", "-n", "8"]);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 9 * 4);
}

#[test]
fn verify_text_output() {
    let out = run(&["verify", "--suite", "commutant", "-n", "3", "--q", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS commutant n=3 q=3 partitions=3\n"));
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        ["verify", "--suite", "exotic-bfs", "-n", "2", "--q", "3"],
        ["census", "--cone", "exotic", "-n", "5", "--q", "4"],
    ] {
        let one = run(&[&args[..], &["--threads", "1"]].concat());
        let four = run(&[&args[..], &["--threads", "4"]].concat());
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn orbit_of_jordan_matrix() {
    let path = point_file("j21.txt", "enhanced 3 2\n0 0 0\n0 1 0\n0 0 0\n0 0 0\n");
    let out = run(&["orbit-of", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("bipartition (∅;(2,1))\n"), "{text}");
    assert!(text.contains("bfs_verified true\n"), "{text}");
}

#[test]
fn orbit_of_worked_example_point() {
    // v = v_{11} + v_{31}, x the Jordan matrix of (2,2,1,1)
    let text = "enhanced 6 2\n1 0 0 0 1 0\n\
                0 1 0 0 0 0\n0 0 0 0 0 0\n0 0 0 1 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0\n";
    let path = point_file("example.txt", text);
    let v = json_ok(&["orbit-of", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(v["cone"], "enhanced");
    assert_eq!(v["mu"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["nu"], serde_json::json!([1, 1]));
    assert_eq!(v["J"], serde_json::json!([2]));
    assert_eq!(v["unipotent_dim"].to_string(), "11");
}

#[test]
fn orbit_of_random_exotic_conjugate() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let f = make_field(3).unwrap();
    for (mu, nu) in [(vec![1, 1], vec![]), (vec![1], vec![1]), (vec![], vec![2])] {
        let bp = Bipartition::from_parts(&mu, &nu).unwrap();
        let rep = exotic_representative(&bp, &f);
        let gens = sp_generators(&rep.space).matrices();
        let g = (0..30).fold(MatF::identity(&f, 4), |acc, _| acc.mul(&gens[rng.gen_range(0..gens.len())]));
        let path = point_file(&format!("exotic-{bp}.txt"), &write_exotic(&rep.transform(&g).unwrap()));
        let out = run(&["orbit-of", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.starts_with(&format!("cone exotic\nbipartition {bp}\n")), "{text}");
        assert!(text.contains("bfs_verified true\n"), "{text}");
    }
}

#[test]
fn usage_and_input_errors_exit_two() {
    let not_nilpotent = point_file("bad.txt", "enhanced 1 2\n0\n1\n");
    let malformed = point_file("malformed.txt", "enhanced 2 2\n0 0\n0 1\n");
    for args in [
        vec!["census", "--cone", "enhanced"],
        vec!["census", "--cone", "affine", "-n", "2"],
        vec!["census", "--cone", "enhanced", "-n", "2", "--q", "6"],
        vec!["census", "--cone", "enhanced", "-n", "2", "--format", "text"],
        vec!["verify", "--suite", "enhanced-bfs", "-n", "5", "--q", "2"],
        vec!["orbit-of", not_nilpotent.to_str().unwrap()],
        vec!["orbit-of", malformed.to_str().unwrap()],
        vec!["orbit-of", "/nonexistent/point.txt"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn force_runs_past_bounds_with_a_warning() {
    let out = run(&["--force", "census", "--cone", "ordinary", "-n", "13"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

//! The `halving` binary end to end: files in, tables out, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use halving::natural_boundary_sequences;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("halving-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn halving(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halving"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn seq_csv(values: &[u64]) -> String {
    let mut s = String::from("n,value\n");
    for (i, v) in values.iter().enumerate() {
        s.push_str(&format!("{},{v}\n", i + 1));
    }
    s
}

fn assert_error(o: &Output, exit: i32, code: &str) {
    assert_eq!(o.status.code(), Some(exit), "stderr: {}", stderr(o));
    let err = stderr(o);
    let first = err.lines().next().unwrap();
    assert_eq!(first, format!("error code={code}"));
    assert!(err.lines().count() >= 2, "needs a human diagnostic");
    assert!(o.stdout.is_empty());
}

#[test]
fn construct_minimal_and_glued() {
    let f = scratch("min.csv", "# surviving\nn,value\n1,1\n# glued\nn,value\n# halving\nn,value\n");
    let o = halving(&["construct", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("points 1\n0 infinity 1 1 - 0 -\n"));
    assert!(out.contains("n,a,b,O_surviving,O_glued,O_halving,O_total\n1,1,1,1,0,0,1\n"));

    let f = scratch(
        "glued.csv",
        "# surviving\nn,value\n1,1\n# glued\nn,value\n1,1\n# halving\nn,value\n",
    );
    let out = stdout(&halving(&["construct", f.to_str().unwrap()]));
    assert!(out.contains("\n1,3,2,1,2,0,3\n"), "{out}");
    assert!(out.contains("cross-check,ok"));
}

#[test]
fn construct_rejects_bad_input() {
    let f = scratch("empty.csv", "# surviving\nn,value\n2,1\n# glued\nn,value\n# halving\nn,value\n");
    assert_error(&halving(&["construct", f.to_str().unwrap()]), 2, "empty_fixed_point");
    let f = scratch("broken.csv", "# surviving\nn,value\n1,x\n");
    assert_error(&halving(&["construct", f.to_str().unwrap()]), 2, "parse");
    assert_error(&halving(&["construct", "/nonexistent/file.csv"]), 2, "io");
}

#[test]
fn construct_large_system_is_summarized() {
    let f = scratch(
        "large.csv",
        "# surviving\nn,value\n1,1\n2,1000000000000\n# glued\nn,value\n# halving\nn,value\n",
    );
    let o = halving(&["construct", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not dumped: 2000000000001 points"));
}

#[test]
fn decompose_natural_boundary_pair() {
    let (a, b) = natural_boundary_sequences(24).unwrap();
    let to_u64 = |s: &halving::CountSequence| -> Vec<u64> {
        s.values().iter().map(|v| v.try_into().unwrap()).collect()
    };
    let fa = scratch("nb_a.csv", &seq_csv(&to_u64(&a)));
    let fb = scratch("nb_b.csv", &seq_csv(&to_u64(&b.with_horizon(12))));
    let o = halving(&[
        "decompose",
        fa.to_str().unwrap(),
        fb.to_str().unwrap(),
        "--threshold",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    // n = 4: three surviving orbits and 16 halving orbits give b_4 = 19
    assert!(out.contains("\n4,3,0,16,3,19\n"), "{out}");
    assert!(out.contains("threshold,2"));
}

#[test]
fn decompose_all_survive_and_violation() {
    let f = scratch("ab21.csv", &seq_csv(&[2, 1]));
    let p = f.to_str().unwrap();
    let out = stdout(&halving(&["decompose", p, p, "--threshold", "1"]));
    assert!(out.contains("n,surviving,glued_pairs,halving,a,b\n1,2,0,0,2,2\n2,1,0,0,1,1\n"));

    let fa = scratch("a42.csv", &seq_csv(&[4, 2]));
    let fb = scratch("b22.csv", &seq_csv(&[2, 2]));
    let o = halving(&["decompose", fa.to_str().unwrap(), fb.to_str().unwrap(), "--threshold", "3"]);
    assert_error(&o, 2, "hypothesis_violated");
    assert!(stderr(&o).contains("n=1"));
}

#[test]
fn bounds_check_pass_and_fail() {
    let fa = scratch("ba.csv", &seq_csv(&[2, 1, 2, 3]));
    let fb = scratch("bb.csv", &seq_csv(&[2, 1]));
    let o = halving(&["bounds-check", fa.to_str().unwrap(), fb.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("violations,0"));

    let fa = scratch("ba2.csv", &seq_csv(&[1, 0]));
    let fb = scratch("bb2.csv", &seq_csv(&[2]));
    let o = halving(&["bounds-check", fa.to_str().unwrap(), fb.to_str().unwrap()]);
    assert_error(&o, 2, "hypothesis_violated");

    let fb = scratch("bb3.csv", &seq_csv(&[2, 1, 1]));
    let o = halving(&["bounds-check", fa.to_str().unwrap(), fb.to_str().unwrap()]);
    assert_error(&o, 2, "horizon_mismatch");
}

#[test]
fn zeta_forms() {
    let f = scratch("o1.csv", "n,value\n1,1\n");
    let o = halving(&["zeta", f.to_str().unwrap(), "--form", "orbits"]);
    assert!(stdout(&o).ends_with("degree,numerator,denominator\n0,1,1\n1,1,1\n"));
    // padding the orbit counts with zeros extends the product
    let o = halving(&["zeta", f.to_str().unwrap(), "--form", "orbits", "--horizon", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("degree,numerator,denominator\n0,1,1\n1,1,1\n2,1,1\n3,1,1\n4,1,1\n"));

    // F(n) = 2^n - 1 gives (1 - z)/(1 - 2z) = 1 + z + 2z^2 + 4z^3
    let f = scratch("tentf.csv", &seq_csv(&[1, 3, 7, 15]));
    let out = stdout(&halving(&["zeta", f.to_str().unwrap()]));
    assert!(out.ends_with("0,1,1\n1,1,1\n2,2,1\n3,4,1\n4,8,1\n"), "{out}");

    let o = halving(&["zeta", f.to_str().unwrap(), "--degree", "9"]);
    assert_error(&o, 2, "horizon_too_small");
}

#[test]
fn rationality_probe_command() {
    let mut csv = String::from("degree,numerator,denominator\n");
    for d in 0..=40u32 {
        csv.push_str(&format!("{d},{},1\n", (1u64 << (d + 1)) - 1));
    }
    let f = scratch("rat.csv", &csv);
    let o = halving(&["rationality", f.to_str().unwrap(), "--max-order", "10"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict: recurrence_found (heuristic)"));
    assert!(out.contains("order: 2"));

    let o = halving(&["rationality", f.to_str().unwrap(), "--max-order", "30"]);
    assert_error(&o, 2, "too_few_coefficients");
}

#[test]
fn examples_run_and_match_golden() {
    for name in ["tent", "double-reprise", "irrational-quotient", "natural-boundary", "growth"] {
        let o = halving(&["example", name]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
    }
    let out = stdout(&halving(&["example", "natural-boundary"]));
    assert!(out.contains("a_8,30\nb_4,19\n"));
    assert!(out.contains("n,c,a,b,"));
    let out = stdout(&halving(&["example", "tent"]));
    assert!(out.contains("# zeta coefficients\ndegree,zeta_big,zeta_quot\n0,1,1\n1,1,2\n2,2,4\n"));
    assert_error(&halving(&["example", "mandelbrot"]), 2, "unknown_example");
}

#[test]
fn growth_command() {
    let o = halving(&["growth", "--lambda", "2", "--eta", "3", "--c", "1", "--horizon", "6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("\n6,64,729,"));
    assert!(out.contains("regime,between"));

    let o = halving(&["growth", "--lambda", "3/2", "--eta", "2", "--c", "1/3", "--horizon", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));

    let o = halving(&["growth", "--lambda", "2", "--eta", "5", "--c", "1"]);
    assert_error(&o, 2, "invalid_growth_spec");
    let o = halving(&["growth", "--lambda", "two", "--eta", "5", "--c", "1"]);
    assert_error(&o, 2, "usage");
}

#[test]
fn json_output_and_output_file() {
    let o = halving(&["example", "natural-boundary", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"][7]["a"], "30");
    assert_eq!(v["counts"][3]["b"], "19");

    let path = std::env::temp_dir().join(format!("halving-cli-out-{}.csv", std::process::id()));
    let o = halving(&["example", "tent", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&halving(&["example", "tent"])));
    std::fs::remove_file(path).ok();
}

#[test]
fn output_is_deterministic() {
    let f = scratch(
        "det.csv",
        "# surviving\nn,value\n1,2\n2,1\n# glued\nn,value\n1,1\n3,2\n# halving\nn,value\n1,1\n2,2\n",
    );
    let p = f.to_str().unwrap();
    for args in [vec!["construct", p], vec!["construct", p, "--format", "json"], vec!["example", "growth"]] {
        let first = halving(&args);
        let second = halving(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout);
    }
}

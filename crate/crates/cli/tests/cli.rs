use std::path::PathBuf;

use epsexp_cli::{run, Outcome};

fn epsexp(args: &[&str]) -> Outcome {
    run(std::iter::once("epsexp").chain(args.iter().copied()))
}

fn spec_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("specs")
        .join(name)
        .display()
        .to_string()
}

fn ok(args: &[&str]) -> String {
    let out = epsexp(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    assert!(out.stderr.is_empty());
    out.stdout
}

fn fails(args: &[&str]) -> String {
    let out = epsexp(args);
    assert_eq!(out.code, 1, "{args:?} should fail");
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    assert!(!out.stderr.is_empty());
    out.stderr
}

#[test]
fn scalar_commands() {
    assert_eq!(ok(&["poch", "--alpha", "1", "-m", "2", "-k", "1"]), "3\n");
    assert_eq!(ok(&["recip", "--beta", "2", "-m", "1", "-k", "1"]), "-1/4\n");
    assert_eq!(
        ok(&["poch", "--alpha", "-5/2", "-m", "3", "-k", "0", "--method", "coffey"]),
        "-15/8\n"
    );
    assert_eq!(
        ok(&["recip", "--beta", "1", "-m", "2", "-k", "1", "--method", "recurrence"]),
        "-3/4\n"
    );
    assert_eq!(
        ok(&["quotient", "--num", "1", "-1", "-m", "3", "--den", "2", "-1", "-n", "2", "-k", "1"]),
        "-1\n"
    );
    assert_eq!(
        ok(&["quotient", "--num", "1", "0", "-m", "1", "--den", "1", "1", "-n", "1", "-k", "0", "--at", "1"]),
        "1/2\n"
    );
}

#[test]
fn every_method_name_is_accepted() {
    for m in ["stirling_sum", "coffey", "bernoulli", "recurrence", "series_oracle"] {
        assert_eq!(
            ok(&["poch", "--alpha", "1/2", "-m", "4", "-k", "2", "--method", m]),
            "43/2\n",
            "{m}"
        );
    }
    for m in ["closed_sum", "recurrence", "series_oracle"] {
        assert_eq!(
            ok(&["recip", "--beta", "2", "-m", "1", "-k", "1", "--method", m]),
            "-1/4\n",
            "{m}"
        );
    }
}

#[test]
fn laurent_series_output() {
    let text = ok(&["recip", "--laurent", "-n", "1", "-b", "1", "-m", "3", "--order", "2"]);
    assert_eq!(text, "exponent,coefficient\n-1,-1\n0,0\n1,-1\n2,0\n");
    fails(&["recip", "--laurent", "-n", "3", "-b", "1", "-m", "3", "--order", "2"]);
    fails(&["recip", "--laurent", "-n", "1", "-m", "3"]);
}

#[test]
fn tables_command() {
    let text = ok(&["tables", "--k", "0", "--max-m", "2"]);
    assert!(text.lines().any(|l| l == "0,2,0,5/16"));
    assert_eq!(text.lines().count(), 7);
    let all = ok(&["tables"]);
    assert_eq!(all.lines().next(), Some("k,m,n,coefficient"));
    assert_eq!(all.lines().count(), 85);
    let aligned = ok(&["tables", "--k", "1", "--format", "aligned"]);
    assert!(aligned.starts_with("k = 1\n"));
}

#[test]
fn spec_files_agree_with_closed_forms() {
    for n in 1..=7 {
        let spec = spec_path(&format!("f{n}.spec"));
        let engine = ok(&["expand", "--spec", &spec]);
        let closed = ok(&["expand", "--spec", &spec, "--closed", &format!("F{n}")]);
        assert_eq!(engine, closed, "F{n}");
    }
    let f7 = spec_path("f7.spec");
    assert_eq!(
        ok(&["expand", "--spec", &f7, "--delta-derivative"]),
        ok(&["expand", "--closed", "dF7_ddelta"])
    );
    assert_eq!(
        ok(&["expand", "--spec", &spec_path("f6.spec"), "--closed", "F6_alt"]),
        ok(&["expand", "--closed", "F6", "--delta", "1/3"])
    );
}

#[test]
fn expand_overrides_and_formats() {
    let f5 = spec_path("f5.spec");
    let small = ok(&["expand", "--spec", &f5, "--eps-order", "0", "--degree-bound", "1"]);
    assert_eq!(small, "k,m,n,coefficient\n0,0,0,1\n0,1,0,1/2\n0,1,1,1/4\n");
    let lattice = ok(&[
        "expand",
        "--spec",
        &f5,
        "--eps-order",
        "0",
        "--degree-bound",
        "1",
        "--regroup",
        "lattice",
    ]);
    assert_eq!(lattice, "k,m1,m2,coefficient\n0,0,0,1\n0,0,1,1/2\n0,1,0,1/4\n");
    assert!(ok(&["expand", "--spec", &f5, "--format", "aligned"]).starts_with("k = 0\n"));
}

#[test]
fn pf_command() {
    let text = ok(&["pf", "--spec", &spec_path("quotient.pf")]);
    assert_eq!(
        text,
        "0 + 45/56/(3/2-2*eps) - 77/36/(5/2-2*eps) + 117/88/(7/2-2*eps) - 2/693/(1+eps)\n"
    );
}

#[test]
fn verify_command() {
    let text = ok(&["verify", "--id", "A28,nueva1"]);
    assert!(text.starts_with("PASS A28 ("));
    assert!(text.ends_with("2 passed, 0 failed\n"));
    assert_eq!(
        ok(&["verify", "--id", "A9", "--param", "m=2", "--param", "k=1"]),
        "PASS A9 [k=1, m=2]: lhs 3, rhs 3\n"
    );
    assert_eq!(
        ok(&["verify", "--id", "a4", "--param", "k=1", "--param", "alpha=1", "--order", "6"]),
        "PASS a4 [alpha=1, k=1]: equal through z^6\n"
    );
    fails(&["verify", "--id", "A16"]);
    fails(&["verify"]);
    fails(&["verify", "--id", "A6", "--param", "m=2", "--param", "k=0"]);
    fails(&["verify", "--id", "A9", "--param", "m=2"]);
}

#[test]
fn error_paths_write_only_to_stderr() {
    assert!(fails(&["poch", "--alpha", "x", "-m", "1", "-k", "0"]).contains("--alpha"));
    assert!(fails(&["poch", "--alpha", "1", "-m", "1", "-k", "0", "--method", "nope"]).contains("--method"));
    fails(&["recip", "--beta", "-2", "-m", "4", "-k", "0"]);
    fails(&[
        "quotient", "--num", "1", "0", "-m", "1", "--den", "0", "1", "-n", "1", "-k", "0",
    ]);
    fails(&["expand", "--spec", "/nonexistent/file.spec"]);
    fails(&["expand", "--closed", "F6"]);
    fails(&["expand", "--closed", "F9"]);
    fails(&["tables", "--k", "-1"]);
    fails(&["pf", "--spec", &spec_path("f1.spec")]);
    fails(&[]);
    let err = fails(&["expand", "--spec", &spec_path("quotient.pf")]);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn help_goes_to_stdout() {
    let out = epsexp(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("tables"));
}

#[test]
fn output_is_deterministic() {
    let f6 = spec_path("f6.spec");
    let first = ok(&["expand", "--spec", &f6, "--degree-bound", "7"]);
    for _ in 0..3 {
        assert_eq!(ok(&["expand", "--spec", &f6, "--degree-bound", "7"]), first);
    }
}

use std::process::Command;

use slinf::cls::ClsCanonical;
use slinf::orders::FunctionSpec;

fn slinf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_slinf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, stdout, stderr) = slinf(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    stdout.trim_end().to_string()
}

#[test]
fn rs_worked_example() {
    assert_eq!(
        ok(&["rs", "r2-1,5,9,r2+3,5,r2+4,7,7"]),
        "(3,2,2,1) corank=3 rank=5"
    );
}

#[test]
fn classify_constant() {
    assert_eq!(
        ok(&["classify", "omega(0)"]),
        "integral=true almost-integral=true locally-constant=true dominant=true annihilator=nonzero"
    );
    assert!(ok(&["classify", "omega(r2); omega*(0)"]).ends_with("dominant=n/a annihilator=zero"));
}

#[test]
fn mul_absorbs() {
    assert_eq!(ok(&["mul", "L(1)", "Linf(1)"]), "Linf(1)");
    assert_eq!(ok(&["mul", "E", "R(2) E"]), "E^2 R(2)");
}

#[test]
fn outputs_reparse() {
    let q = ok(&["cls-of", "[1,1]; omega(0)"]);
    assert_eq!(q, "R(2)");
    let g = ok(&["duflo", &q, "--order", "omega; omega*"]);
    let parsed: FunctionSpec = g.parse().unwrap();
    assert_eq!(parsed.to_string(), g);
    assert_eq!(ok(&["cls-of", &g]), q);

    let bound = ok(&["bound", "omega(1); [r2, 4]; omega(3); omega*(0)"]);
    let mut lines = bound.lines();
    assert_eq!(lines.next(), Some("nint=2 wid=3 gamma=2"));
    let q: ClsCanonical = lines.next().unwrap().parse().unwrap();
    assert_eq!(q.to_string(), "Linf(4) E^3");
}

#[test]
fn level_and_coherence() {
    assert_eq!(
        ok(&["level", "E", "-n", "3"]),
        "n=3 exact size=3\n{(0,0),(1,0),(1,1)}"
    );
    assert_eq!(
        ok(&["level", "Linf(1)", "-n", "3", "--cap", "3"]),
        "n=3 cap=3 size=4\n{(0,0),(1,0),(2,0),(3,0)}"
    );
    assert!(ok(&["coherence", "E^2", "-n", "4"]).starts_with("coherent n=4 exact"));
    assert!(
        ok(&["coherence", "Linf(2) Rinf(1)", "-n", "4", "--cap", "4"])
            .starts_with("coherent n=4 cap=4")
    );
}

#[test]
fn exit_codes() {
    let (code, _, err) = slinf(&["bound", "omega(0, step=1)"]);
    assert_eq!(code, 1);
    assert!(err.contains("annihilator is zero"));
    let (code, _, _) = slinf(&["cls-of", "omega(0); [1]"]);
    assert_eq!(code, 1);
    let (code, _, _) = slinf(&["level", "Einf", "-n", "3"]);
    assert_eq!(code, 1);
    let (code, _, err) = slinf(&["mul", "L(", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 2"), "{err}");
    let (code, _, _) = slinf(&["rs"]);
    assert_eq!(code, 2);
    let (code, _, _) = slinf(&["classify", "@/nonexistent/path"]);
    assert_eq!(code, 2);
}

#[test]
fn file_indirection() {
    let dir = std::env::temp_dir().join(format!("slinf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("values.txt");
    std::fs::write(&path, "r2-1, 5, 9, r2+3, 5, r2+4, 7, 7\n").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(ok(&["rs", &arg]), "(3,2,2,1) corank=3 rank=5");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deterministic_output() {
    let args = ["level", "Linf(2) E R(1)", "-n", "4", "--cap", "5"];
    assert_eq!(slinf(&args), slinf(&args));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = slinf::cli::run(["slinf", "mul", "L(1)", "Linf(1)"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "Linf(1)\n");
}

#[test]
fn selftest_passes() {
    let out = ok(&["selftest", "--trials", "500"]);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    assert_eq!(out.lines().count(), 6);
}

use canonical_weyl::cli::run;
use std::path::{Path, PathBuf};
use std::process::Command;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cw(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("canonical-weyl").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn spec(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Parses the CSV rows after the header line starting with `first`.
fn rows<'a>(text: &'a str, first: &str) -> Vec<Vec<&'a str>> {
    text.lines()
        .skip_while(|l| !l.starts_with(first))
        .skip(1)
        .take_while(|l| l.contains(','))
        .map(|l| l.split(',').collect())
        .collect()
}

const POWER: &str = r#"{"kind":"power","rho":[1,2],"kappa":[1,1,0.3]}"#;
const IDENTITY: &str = r#"{"kind":"power","rho":[1,1],"kappa":[1,1,0]}"#;

#[test]
fn identity_power_law() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "id.json", IDENTITY);
    let o = cw(&["power-q", "--spec", s(&p), "--z", "0+2i"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("# canonical-weyl power-q ode_tol=1e-10 disc_tol=1e-08 t_max=1000000\n"));
    assert!(o.stdout.contains("alpha=0 omega=1+0i"), "{}", o.stdout);
    assert_eq!(rows(&o.stdout, "re_z"), vec![vec!["0", "2", "0", "1"]]);

    let n = cw(&["numeric-q", "--spec", s(&p), "--z", "0+2i"]);
    assert_eq!(n.code, 0, "{}", n.stderr);
    let r = &rows(&n.stdout, "re_z")[0];
    let (re, im): (f64, f64) = (r[2].parse().unwrap(), r[3].parse().unwrap());
    assert!(re.abs() <= 1e-8 && (im - 1.0).abs() <= 1e-8, "{r:?}");
    assert_eq!(r[6], "ok");
}

#[test]
fn indivisible_start_reports_infinity() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "up.json", r#"{"kind":"piecewise","segments":[{"h":[[1,0],[0,0]]}]}"#);
    let o = cw(&["power-q", "--spec", s(&p)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("q = infinity"), "{}", o.stdout);
    let upper = spec(&dir, "upper.json", r#"{"kind":"power","rho":[1,1],"kappa":[1,0,0]}"#);
    assert!(cw(&["power-q", "--spec", s(&upper)]).stdout.contains("q = infinity"));
    let lower = spec(&dir, "lower.json", r#"{"kind":"power","rho":[1,1],"kappa":[0,2,0]}"#);
    assert!(cw(&["power-q", "--spec", s(&lower)]).stdout.contains("q = 0"));
    let n = cw(&["numeric-q", "--spec", s(&p), "--t-max", "100"]);
    assert_eq!(n.code, 0, "{}", n.stderr);
    assert!(n.stdout.contains(",infinite"), "{}", n.stdout);
}

#[test]
fn numeric_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "p.json", POWER);
    let zs = "0+1i,0+2i,1+1i,-1+2i";
    let closed = cw(&["power-q", "--spec", s(&p), "--z", zs]);
    let numeric = cw(&["numeric-q", "--spec", s(&p), "--z", zs]);
    assert_eq!((closed.code, numeric.code), (0, 0));
    let (a, b) = (rows(&closed.stdout, "re_z"), rows(&numeric.stdout, "re_z"));
    assert_eq!(a.len(), 4);
    for (x, y) in a.iter().zip(&b) {
        let f = |v: &str| v.parse::<f64>().unwrap();
        let (qa, qb) = ((f(x[2]), f(x[3])), (f(y[2]), f(y[3])));
        let size = qa.0.hypot(qa.1);
        assert!((qa.0 - qb.0).hypot(qa.1 - qb.1) <= 1e-5 * size, "{x:?} vs {y:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "p.json", POWER);
    let out = dir.path().join("q.csv");
    let o = cw(&["numeric-q", "--spec", s(&p), "--z", "0+1i", "--out", s(&out)]);
    assert_eq!(o.code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# canonical-weyl numeric-q"));
    assert_eq!(rows(&text, "re_z").len(), 1);
}

#[test]
fn verify_pass_and_fail() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "p.json", POWER);
    let o = cw(&["verify", "--spec", s(&p), "--r-grid", "10,100", "--angles", "pi/2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.lines().last().unwrap().starts_with("PASS "), "{}", o.stdout);

    let pred = cw(&["predict", "--spec", s(&p)]);
    let omega = pred
        .stdout
        .lines()
        .find_map(|l| l.strip_prefix("omega_prime="))
        .and_then(|l| l.split_whitespace().next())
        .unwrap();
    let w: num_complex::Complex64 = omega.parse().unwrap();
    let doubled = format!("{}", w * 2.0);
    let f = cw(&["verify", "--spec", s(&p), "--r-grid", "10,100", "--angles", "pi/2", "--omega", &doubled]);
    assert_eq!(f.code, 0, "{}", f.stderr);
    let last = f.stdout.lines().last().unwrap();
    assert!(last.starts_with("FAIL "), "{last}");
}

#[test]
fn regvar_flags_rapid_entry() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "rapid.json", r#"{"kind":"rapid","rho":1}"#);
    let o = cw(&["regvar", "--spec", s(&p)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("m1: index=1 rapid=false"), "{}", o.stdout);
    assert!(o.stdout.contains("m2: index=inf rapid=true"), "{}", o.stdout);
}

#[test]
fn predict_and_rescale_run() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "p.json", POWER);
    let o = cw(&["predict", "--spec", s(&p)]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("alpha=0.33333333333333331"), "{}", o.stdout);
    let r = cw(&["rescale", "--spec", s(&p)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let table = rows(&r.stdout, "r,");
    assert_eq!(table.len(), 3);
    for row in table {
        for dev in &row[5..] {
            assert!(dev.parse::<f64>().unwrap() <= 1e-10, "{row:?}");
        }
    }
}

#[test]
fn output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let p = spec(&dir, "p.json", POWER);
    let args = ["numeric-q", "--spec", s(&p), "--z", "0+1i,1+1i,-1+2i,0.5+0.25i"];
    let first = cw(&args).stdout;
    for _ in 0..3 {
        assert_eq!(cw(&args).stdout, first);
    }
    let v = ["verify", "--spec", s(&p), "--r-grid", "10,100"];
    assert_eq!(cw(&v).stdout, cw(&v).stdout);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = spec(&dir, "p.json", POWER);
    let broken = spec(&dir, "bad.json", "{\"kind\": \"power\",\n \"rho\": [1, 2],\n \"kappa\": [1, 1 0.3]}");
    let o = cw(&["power-q", "--spec", s(&broken)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3 column"), "{}", o.stderr);
    let invalid = spec(&dir, "inv.json", r#"{"kind":"power","rho":[1,2],"kappa":[1,1,5]}"#);
    assert_eq!(cw(&["power-q", "--spec", s(&invalid)]).code, 2);
    assert_eq!(cw(&["power-q", "--spec", "/nonexistent/spec.json"]).code, 2);

    assert_eq!(cw(&["numeric-q", "--spec", s(&good), "--t-max", "1e-3"]).code, 3);
    assert_eq!(cw(&["numeric-q", "--spec", s(&good), "--z", "1-1i"]).code, 4);
    assert_eq!(cw(&["numeric-q", "--spec", s(&good), "--disc-tol=-1"]).code, 4);
    assert_eq!(cw(&["regvar", "--spec", s(&good), "--samples", "10"]).code, 5);
    assert_eq!(cw(&["regvar", "--spec", s(&good), "--t-lo", "1e-2"]).code, 5);
}

#[test]
fn binary_exit_code() {
    let dir = TempDir::new().unwrap();
    let good = spec(&dir, "p.json", POWER);
    let bin = env!("CARGO_BIN_EXE_canonical-weyl");
    let ok = Command::new(bin).args(["power-q", "--spec", s(&good)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("alpha=0.33333333333333331"));
    let bad = Command::new(bin).args(["regvar", "--spec", s(&good), "--samples", "5"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(5));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn wmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmono"))
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

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wmono-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rows(csv: &str) -> Vec<(f64, String, f64)> {
    let mut lines = csv.split('\n');
    assert_eq!(lines.next(), Some("param,curve_name,value"));
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 3, "{l}");
            (
                f[0].parse().unwrap(),
                f[1].to_string(),
                f[2].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn single_point_fig1_grid() {
    let o = wmono(&["figure", "fig1", "--grid", "2:2:1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 4);
    assert_eq!(r[2], (2.0, "coa_ref_A1|A2A3".to_string(), 0.249));
    assert_eq!(r[3], (2.0, "coa_ref_A1|A2A3A4".to_string(), 0.471));
}

#[test]
fn csv_is_byte_identical_and_parses_back() {
    let a = wmono(&["figure", "fig2"]);
    let b = wmono(&["figure", "fig2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.contains('\r'));
    let r = rows(&text);
    assert_eq!(r.len(), 2 * 470);
    assert!(r.iter().all(|(p, _, v)| p.is_finite() && v.is_finite()));
    for (_, _, v) in &r {
        let digits = format!("{v:e}")
            .split('e')
            .next()
            .unwrap()
            .replace(['.', '-'], "");
        assert!(digits.trim_start_matches('0').len() <= 12);
    }
    assert!(stderr(&a).contains("0.02334"));
}

#[test]
fn fig2_curves_decrease_on_left_interval() {
    let o = wmono(&["figure", "fig2", "--grid", "0.823:0.001:0.99"]);
    let r = rows(&stdout(&o));
    for name in ["sre_upper_A1|A2A3", "sre_upper_A1|A2A3A4"] {
        let vals: Vec<f64> = r.iter().filter(|x| x.1 == name).map(|x| x.2).collect();
        assert_eq!(vals.len(), 168);
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "{name}");
    }
}

#[test]
fn forbidden_alpha_grid_is_a_usage_error() {
    let o = wmono(&["figure", "fig2", "--grid", "0.98:0.005:1.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("excluded band"));
}

#[test]
fn out_and_svg_files() {
    let csv = scratch("fig1.csv");
    let o = wmono(&["figure", "fig1", "--out", csv.to_str().unwrap(), "--svg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        rows(&std::fs::read_to_string(&csv).unwrap()).len(),
        2 * 81 + 2
    );
    let svg = std::fs::read_to_string(csv.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<polyline").count() == 2);
}

#[test]
fn spec_files_and_diagnostics() {
    let good = scratch("good.json");
    std::fs::write(
        &good,
        r#"{"n": 4, "a": [0.5, 0], "b": [[0.5, 0], [0, 0.5], [0.5, 0], [0, 0]]}"#,
    )
    .unwrap();
    let o = wmono(&[
        "bound",
        "1",
        "--spec",
        good.to_str().unwrap(),
        "--subset",
        "2,3",
        "--x",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let bad = scratch("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"n\": 4,\n  \"a\": [0.5, 0, 1],\n  \"b\": []\n}\n",
    )
    .unwrap();
    let o = wmono(&["figure", "fig1", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    std::fs::write(&bad, r#"{"n": 4, "a": [0.5, 0], "b": [[0.5, 0]]}"#).unwrap();
    let o = wmono(&["figure", "fig1", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("field b"));

    let o = wmono(&["figure", "fig1", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_exit_codes() {
    let o = wmono(&["bound", "2", "--subset", "2,3", "--y", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    let line = report.lines().find(|l| l.starts_with("REPORT ")).unwrap();
    let margin: f64 = line
        .split(' ')
        .find_map(|kv| kv.strip_prefix("margin="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((margin - 18.845).abs() < 0.01);

    assert_eq!(
        wmono(&["bound", "4", "--subset", "2,3", "--alpha", "0.9"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        wmono(&["bound", "3", "--alpha", "1.2"]).status.code(),
        Some(0)
    );
    // Regime and argument errors.
    assert_eq!(
        wmono(&["bound", "1", "--subset", "2,3", "--x", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wmono(&["bound", "2", "--subset", "2,3", "--y", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wmono(&["bound", "4", "--subset", "2,3", "--alpha", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(wmono(&["bound", "1", "--x", "2"]).status.code(), Some(2));
    assert_eq!(wmono(&["bound", "5", "--x", "2"]).status.code(), Some(2));
    // b5 = 0 in the default state, so relation 2 has no finite right-hand side for pair (1,5).
    assert_eq!(
        wmono(&["bound", "2", "--subset", "2,5", "--y", "-1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn a_violation_exits_one() {
    // A tolerance far below roundoff fails the suite: a finding, not a crash.
    let o = wmono(&[
        "verify",
        "identities",
        "--tol",
        "concurrence_negativity=1e-300",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_arguments() {
    let o = wmono(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
    assert_eq!(
        wmono(&["verify", "eq1", "--budget", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wmono(&["verify", "eq1", "--tol", "nope=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wmono(&["verify", "eq1", "--tol", "limit"]).status.code(),
        Some(2)
    );

    let report = scratch("eq1.txt");
    let o = wmono(&[
        "verify",
        "eq1",
        "--seed",
        "3",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&report).unwrap(), stdout(&o));
    assert!(stdout(&o).contains("worst margin"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(wmono(&[]).status.code(), Some(2));
    assert_eq!(wmono(&["figure", "fig3"]).status.code(), Some(2));
    assert_eq!(
        wmono(&["figure", "fig1", "--grid", "1:2"]).status.code(),
        Some(2)
    );
    assert_eq!(wmono(&["--help"]).status.code(), Some(0));
}

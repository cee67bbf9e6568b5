use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name)
}

fn lpequiv(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lpequiv"));
    cmd.args(args).env_remove("LPEQUIV_CONFIG");
    if let Some(c) = config {
        cmd.env("LPEQUIV_CONFIG", c);
    }
    cmd.output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn coordinate_system_is_one_sparse() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "id.txt", "2 3\n1 0 0\n0 1 0\n1 0\n");
    let out = lpequiv(&["analyze", f.to_str().unwrap(), "--format", "text"], None);
    assert_eq!(code(&out), 0);
    assert!(text(&out).contains("\nk0: 1\n"), "{}", text(&out));
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "# header\n2 3\n1 0 0\n0 1\n1 0\n");
    let out = lpequiv(&["solve", f.to_str().unwrap(), "--l0"], None);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let missing = lpequiv(&["solve", "/nonexistent/file.txt", "--l0"], None);
    assert_eq!(code(&missing), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let inconsistent = write(dir.path(), "inc.txt", "2 2\n1 1\n1 1\n1 2\n");
    let zero = write(dir.path(), "zero.txt", "1 2\n1 1\n0\n");
    let wide: String = format!("1 11\n{}\n1\n", ["1"; 11].join(" "));
    let big = write(dir.path(), "big.txt", &wide);
    let corank2 = write(dir.path(), "c2.txt", "1 3\n1 2 3\n1\n");
    let out = dir.path().join("o.csv");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["solve", inconsistent.to_str().unwrap(), "--l0"], 3),
        (vec!["solve", zero.to_str().unwrap(), "--l0"], 3),
        (vec!["solve", big.to_str().unwrap(), "--p", "0.5"], 4),
        (
            vec![
                "curve",
                corank2.to_str().unwrap(),
                "--t-range",
                "0:1:4",
                "--out",
                out.to_str().unwrap(),
            ],
            5,
        ),
        (vec!["scan", corank2.to_str().unwrap(), "--p-grid", ""], 2),
        (
            vec!["scan", corank2.to_str().unwrap(), "--p-grid", "0.5,0.2"],
            2,
        ),
        (vec!["solve", corank2.to_str().unwrap(), "--p", "1.5"], 2),
        (vec!["solve", corank2.to_str().unwrap()], 2),
        (vec!["solve", corank2.to_str().unwrap(), "--p", "0.5"], 0),
    ];
    for (args, want) in cases {
        let o = lpequiv(&args, None);
        assert_eq!(
            code(&o),
            want,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn solve_formats() {
    let f = instance("example1.txt");
    let json = text(&lpequiv(
        &["solve", f.to_str().unwrap(), "--p", "0.8"],
        None,
    ));
    assert!(json.starts_with("{\"name\":\"example1\",\"problem\":\"lp\""));
    assert!(json.contains("\"l0\":3"));
    let csv = text(&lpequiv(
        &["solve", f.to_str().unwrap(), "--l0", "--format", "csv"],
        None,
    ));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("index,x_1,x_2,x_3,x_4,objective,l0"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.toml",
        "radius_override = 2.0\np_values = [0.1, 0.8]\noutput_format = \"csv\"\n",
    );
    let f = instance("example1.txt");
    let out = lpequiv(&["scan", f.to_str().unwrap()], Some(&cfg));
    assert_eq!(code(&out), 0);
    let body = text(&out);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains(",true,2,") && rows[1].contains(",false,3,"));

    let analyze = lpequiv(
        &["analyze", f.to_str().unwrap(), "--format", "text"],
        Some(&cfg),
    );
    assert!(text(&analyze).contains("radius_source: override"));

    let bad = write(dir.path(), "bad.toml", "[tolerances]\nzero = 0.0\n");
    assert_eq!(
        code(&lpequiv(&["scan", f.to_str().unwrap()], Some(&bad))),
        2
    );
    let unknown = write(dir.path(), "unknown.toml", "colour = \"red\"\n");
    assert_eq!(
        code(&lpequiv(&["scan", f.to_str().unwrap()], Some(&unknown))),
        2
    );
}

#[test]
fn curve_rows() {
    let dir = tempfile::tempdir().unwrap();
    let f = instance("single_row.txt");
    let out = dir.path().join("c.csv");
    let o = lpequiv(
        &[
            "curve",
            f.to_str().unwrap(),
            "--p-list",
            "1",
            "--t-range",
            "0:1:2",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,f_1,kind");
    // Three samples, then the breakpoints t = 0 and t = 1.
    assert_eq!(lines.len(), 1 + 3 + 2);
    for l in &lines[1..] {
        let v: f64 = l.split(',').nth(1).unwrap().parse().unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{l}");
    }
    assert!(lines[4].ends_with(",breakpoint") && lines[3].ends_with(",sample"));
}

#[test]
fn numbers_round_trip() {
    let f = instance("example1.txt");
    let out = text(&lpequiv(
        &[
            "analyze",
            f.to_str().unwrap(),
            "--radius",
            "2",
            "--format",
            "text",
        ],
        None,
    ));
    let p_bound: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("p_bound: "))
        .unwrap()
        .parse()
        .unwrap();
    let s = lpequiv_core::Settings::default();
    let lib = lpequiv_core::equivalence::compute_bound(
        &lpequiv_core::fixtures::example1(),
        Some(2.0),
        &s,
    )
    .unwrap()
    .p_bound;
    assert_eq!(p_bound.to_bits(), lib.to_bits());
}

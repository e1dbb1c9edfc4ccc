//! Command-line behaviour: exit codes, output formats and subcommands.

use std::fs;
use std::process::{Command, Output};

fn hadopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hadopt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const PAIR: &str = "((a:1,b:1):1,(c:1,d:1):2,0:1);\n(((a:1,b:1):2,c:1):1.5,d:1,0:1);\n";

#[test]
fn invalid_newick_exits_2_with_offset() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.nwk", "((a:1,b:1:1,0:1);");
    for args in [vec!["distance", "--trees", &f], vec!["run", "--trees", &f, "--iters", "5"]] {
        let out = hadopt(&args);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("at byte 9"), "{err}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hadopt(&["run", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(hadopt(&["run", "--space", "sphere", "--anchors", "0"]).status.code(), Some(2));
    assert_eq!(hadopt(&["run", "--preset", "nope"]).status.code(), Some(2));
}

#[test]
fn distance_and_geodesic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.nwk", PAIR);
    let d: f64 = stdout(&hadopt(&["distance", "--trees", &f])).trim().parse().unwrap();
    // shared {a,b} split differs by 1; {c,d} vs {a,b,c} goes through the cone point
    assert!((d - 13.25f64.sqrt()).abs() < 1e-10, "{d}");
    let mid = stdout(&hadopt(&["geodesic", "--trees", &f, "--frac", "0.5"]));
    assert_eq!(mid.trim(), "((a:1,b:1):1.5,(c:1,d:1):0.25,0:1);");
    let three = write(&dir, "three.nwk", &format!("{PAIR}((a:1,b:1):1,(c:1,d:1):2,0:1);\n"));
    let m = stdout(&hadopt(&["distance", "--trees", &three]));
    let rows: Vec<Vec<f64>> = m.lines().map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][2], 0.0);
    assert_eq!(rows[0][1], rows[1][0]);
}

#[test]
fn run_writes_csv_with_stride() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let o =
        hadopt(&["run", "--preset", "example7_2", "--iters", "100", "--stride", "10", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,f,f_best,gap,bound");
    assert_eq!(lines.len(), 12);
    assert!(lines[11].starts_with("100,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("f_best"));
}

#[test]
fn fopt_reference_values() {
    let v: f64 = stdout(&hadopt(&["fopt", "--preset", "example7_2"])).trim().parse().unwrap();
    assert!((v - 1.0168).abs() < 1e-4);
    let s = 3f64.sqrt();
    let e: f64 = stdout(&hadopt(&["fopt", "--space", "euclidean:2", "--anchors", &format!("0,0;2,0;1,{s}")]))
        .trim()
        .parse()
        .unwrap();
    assert!((e - 2.0 / s).abs() < 1e-10, "{e}");
    assert_eq!(hadopt(&["fopt", "--space", "spider:3", "--anchors", "0:1;1:1;2:1"]).status.code(), Some(1));
}

#[test]
fn euclidean_run_from_anchors() {
    let o = hadopt(&[
        "run",
        "--space",
        "euclidean:2",
        "--anchors",
        "-1,0;1,0;0,1",
        "--weights",
        "1,1,1",
        "--iters",
        "50",
        "--alg",
        "proximal",
        "--stepsize",
        "harmonic:0.5",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 52);
}

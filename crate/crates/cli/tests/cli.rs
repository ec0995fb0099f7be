use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ptutte(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptutte")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ptutte-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&d).unwrap();
    d
}

fn triangle(dir: &PathBuf) -> PathBuf {
    let p = dir.join("tri.graph");
    fs::write(&p, "graph 3\ne 0 0 1 1/1\ne 1 1 2 1/1\ne 2 2 0 1/1\n").unwrap();
    p
}

#[test]
fn eval_both_forms() {
    let d = scratch("eval");
    let g = triangle(&d);
    let g = g.to_str().unwrap();
    let o = ptutte(&["eval", g, "--x", "2", "--y", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "T\t8/1\n");
    let o = ptutte(&["eval", g, "--q", "2", "--weights", "1"]);
    assert_eq!(stdout(&o), "Z\t28/1\n");
    let o = ptutte(&["eval", g, "--q", "2", "--weights", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_records() {
    let o = ptutte(&["classify", "--x", "-5", "--y", "1/2"]);
    let line = stdout(&o);
    let f: Vec<&str> = line.trim_end().split('\t').collect();
    assert_eq!(&f[..5], ["-5/1", "1/2", "3/1", "#P-hard", "no-FPRAS(q=3-branch)"]);
    let o = ptutte(&["classify", "--x", "-2", "--y", "-2", "--certificate"]);
    assert!(stdout(&o).contains("verified=true"));
    assert_eq!(ptutte(&["classify", "--x", "1.5", "--y", "0"]).status.code(), Some(2));
}

#[test]
fn map_to_file() {
    let d = scratch("map");
    let out = d.join("records.tsv");
    let o = ptutte(&["map", "--xmin", "-5", "--xmax", "5", "--ymin", "-5", "--ymax", "5", "--step", "1/2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 441);
    assert!(text.lines().all(|l| l.split('\t').count() == 6));
}

#[test]
fn colouring_writes_instance_and_certificate() {
    let d = scratch("colour");
    let g = triangle(&d);
    let o = ptutte(&["reduce", "colouring", g.to_str().unwrap(), "--x", "-5", "--y", "1/2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict\tColourable"));
    let cert = fs::read_to_string(d.join("tri.reduced.cert")).unwrap();
    assert!(cert.contains("k\t8"));
    let inst = fs::read_to_string(d.join("tri.reduced.graph")).unwrap();
    assert_eq!(inst.lines().filter(|l| l.starts_with("e ")).count(), 24);
    // The input is left alone.
    assert_eq!(fs::read_to_string(g).unwrap().lines().count(), 4);
}

#[test]
fn gadget_walk() {
    let o = ptutte(&["gadget", "--q", "6", "--target", "5", "--tol", "1/100", "--base", "2,,-2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("error\t[-1/100, "));
}

#[test]
fn verify_suite_and_unknown() {
    let o = ptutte(&["verify", "classify"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS\tclassify"));
    assert_eq!(ptutte(&["verify", "nonsense"]).status.code(), Some(2));
}

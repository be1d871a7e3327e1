use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(f: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(f)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supertree"))
        .args(args)
        .output()
        .unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("supertree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn empty_script_prints_nothing() {
    let s = scratch("empty.ops", "");
    let out = run(&["paths", &golden("chain6.tree"), s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2_with_line_number() {
    let s = scratch("bad.ops", "PQ 0 1\n\nPQ 0 99\n");
    let out = run(&["paths", &golden("chain6.tree"), s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let t = scratch("bad.tree", "3\n-1 0 7\n");
    let out = run(&["decompose", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn unknown_ops_are_rejected() {
    let s = scratch("unknown.ops", "INS 1\nPOP\n");
    let out = run(&["bst", s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hlist_precondition_failure_exits_2() {
    let s = scratch("join.ops", "NEWLIST 0 4\nCAT 0 3\n");
    let out = run(&["hlist", s.to_str().unwrap(), "--h", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn stats_are_key_value_lines_on_stderr() {
    let s = scratch("stats.ops", "INS 4\nINS 2\nSTATS\n");
    let out = run(&["bst", s.to_str().unwrap(), "--logical"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    for line in err.lines() {
        assert!(line.contains('='), "{line}");
    }
    assert!(err.contains("size=2"));
}

#[test]
fn gen_is_deterministic_and_parses_back() {
    let args = [
        "gen",
        "--kind",
        "random-attach",
        "--n",
        "50",
        "--seed",
        "9",
        "--max-value",
        "10",
        "--palette",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let t = scratch("gen.tree", std::str::from_utf8(&a.stdout).unwrap());
    let out = run(&["decompose", t.to_str().unwrap()]);
    assert!(out.status.success());

    let chain = run(&["gen", "--kind", "chain", "--n", "6"]);
    assert_eq!(chain.stdout, b"6\n-1 0 1 2 3 4\n");
}

#[test]
fn oracle_mode_on_generated_script() {
    let t = run(&[
        "gen",
        "--kind",
        "caterpillar",
        "--n",
        "40",
        "--max-value",
        "9",
        "--palette",
        "3",
    ]);
    let tree = scratch("cat.tree", std::str::from_utf8(&t.stdout).unwrap());
    let mut ops = String::new();
    for k in 0..40 {
        ops += &format!("PU {} {} {}\nPQ {} {}\n", k, 39 - k, k % 5, (k * 7) % 40, k);
    }
    let s = scratch("cat.ops", &ops);
    let out = run(&[
        "paths",
        tree.to_str().unwrap(),
        s.to_str().unwrap(),
        "--h",
        "3",
        "--oracle",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(out.stdout.iter().filter(|&&c| c == b'\n').count(), 40);
}

#[test]
fn bench_csv() {
    let out = run(&[
        "bench", "--kind", "chain", "--n", "10000", "--h", "100", "--ops", "1000", "--seed", "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,n,h,op,steps"));
    let mut rows = 0;
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        assert_eq!(&f[..3], ["chain", "10000", "100"]);
        assert!(f[4].parse::<u64>().unwrap() <= 1200, "{l}");
        rows += 1;
    }
    assert_eq!(rows, 1000);
}

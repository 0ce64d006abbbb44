use std::path::Path;
use std::process::{Command, Output};

fn pthash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pthash"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_then_check_random_keys() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.pth");
    let o = pthash(&[
        "build",
        "-n",
        "20000",
        "-c",
        "7",
        "-a",
        "0.99",
        "-e",
        "dd",
        "-s",
        "1",
        "-o",
        p(&f),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let line = stdout(&o);
    for field in ["n=20000", "n'=20203", "attempts=", "search=", "bits/key="] {
        assert!(line.contains(field), "{line}");
    }
    let o = pthash(&["check", "-m", p(&f), "-n", "20000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = pthash(&["check", "-m", p(&f), "-n", "20000", "--parallel"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn singleton_build() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("one.pth");
    let o = pthash(&["build", "-n", "1", "-c", "7", "-a", "1.0", "-e", "c", "-o", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("seed="));
    assert!(pthash(&["check", "-m", p(&f), "-n", "1"]).status.success());
}

#[test]
fn foreign_keys_fail_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.pth");
    assert!(pthash(&["build", "-n", "5000", "-s", "3", "-o", p(&f)])
        .status
        .success());
    let o = pthash(&["check", "-m", p(&f), "-n", "5000", "--rng-seed", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("collides") || err.contains("outside"), "{err}");
}

#[test]
fn string_keys_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let keys = dir.path().join("keys.txt");
    let text: String = (0..3000).map(|i| format!("key-{i}\n")).collect();
    std::fs::write(&keys, text).unwrap();
    let f = dir.path().join("s.pth");
    let o = pthash(&["build", "-i", p(&keys), "-e", "sdc", "-s", "5", "-o", p(&f)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(pthash(&["check", "-m", p(&f), "-i", p(&keys)]).status.success());

    // the same count of integer keys is a kind mismatch
    let o = pthash(&["check", "-m", p(&f), "-n", "3000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn duplicate_line_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let keys = dir.path().join("dup.txt");
    std::fs::write(&keys, "alpha\nbeta\ngamma\nbeta\n").unwrap();
    let o = pthash(&["build", "-i", p(&keys), "-o", p(&dir.path().join("x.pth"))]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("beta") && err.contains('2') && err.contains('4'), "{err}");
}

#[test]
fn truncated_file_is_a_decode_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.pth");
    assert!(pthash(&["build", "-n", "1000", "-s", "2", "-o", p(&f)])
        .status
        .success());
    let bytes = std::fs::read(&f).unwrap();
    std::fs::write(&f, &bytes[..bytes.len() / 2]).unwrap();
    let o = pthash(&["check", "-m", p(&f), "-n", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("truncated"), "{}", stderr(&o));

    let o = pthash(&["check", "-m", p(&dir.path().join("missing.pth")), "-n", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pthash(&["build", "-o", "x.pth"]).status.code(), Some(2));
    assert_eq!(
        pthash(&["build", "-n", "10", "-e", "zz", "-o", "x.pth"]).status.code(),
        Some(2)
    );
    assert_eq!(pthash(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.pth");
    assert!(pthash(&["build", "-n", "100", "-o", p(&f)]).status.success());
    assert_eq!(
        pthash(&["bench", "-m", p(&f), "-n", "100", "--runs", "0"])
            .status
            .code(),
        Some(2)
    );
    // invalid build parameters are a configuration problem, reported as a build failure
    assert_eq!(
        pthash(&["build", "-n", "100", "-a", "1.5", "-o", p(&f)]).status.code(),
        Some(1)
    );
}

#[test]
fn bench_reports_runs_and_sink() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.pth");
    assert!(pthash(&["build", "-n", "2000", "-s", "4", "-o", p(&f)])
        .status
        .success());
    let o = pthash(&["bench", "-m", p(&f), "-n", "2000", "--runs", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("run ")).count(), 3);
    // every value in [0, 2000) is hit once; their xor is 0 ^ 1 ^ ... ^ 1999 folded 3 times
    let x = (0..2000u64).fold(0, |a, b| a ^ b);
    assert!(out.contains(&format!("sink {x:#018x}")), "{out}");
}

#[test]
fn build_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pth");
    let b = dir.path().join("b.pth");
    for f in [&a, &b] {
        let o = pthash(&[
            "build",
            "-n",
            "10000",
            "--rng-seed",
            "7",
            "-s",
            "11",
            "-e",
            "def",
            "-o",
            p(f),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn stats_writes_deterministic_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &Path| {
        let o = pthash(&[
            "stats",
            "-n",
            "20000",
            "-c",
            "3.5,7",
            "-a",
            "1.0",
            "-s",
            "1",
            "--csv-out",
            p(out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
    };
    let (x, y) = (dir.path().join("x"), dir.path().join("y"));
    let table = run(&x);
    assert_eq!(table, run(&y));
    assert_eq!(table.lines().count(), 3);
    for name in [
        "entropy.csv",
        "trials_c3.5.csv",
        "trials_c7.csv",
        "buckets_c3.5.csv",
        "buckets_c7.csv",
    ] {
        let a = std::fs::read(x.join(name)).unwrap();
        assert_eq!(a, std::fs::read(y.join(name)).unwrap(), "{name}");
    }
    assert!(!x.join("search_time_c7.csv").exists());
    let entropy = std::fs::read_to_string(x.join("entropy.csv")).unwrap();
    assert!(entropy.starts_with("c,H_all,H_front,H_back,r\n"), "{entropy}");
    let trials = std::fs::read_to_string(x.join("trials_c3.5.csv")).unwrap();
    assert!(trials.starts_with("chunk_pct,load_factor,measured_mean,predicted_mean\n"));
    assert_eq!(trials.lines().count(), 21);
}

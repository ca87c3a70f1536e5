use std::path::Path;
use std::process::{Command, Output};

use planepart_cli::record::OutputRecord;

fn planepart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planepart"))
        .args(args)
        .env_remove("PLANEPART_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> Vec<u8> {
    std::fs::read(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn records(o: &Output) -> Vec<OutputRecord> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn single_cube() {
    let o = planepart(&["sample", "--n", "1", "--format", "matrix", "--seed", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn counts() {
    let lines = |args: &[&str]| {
        stdout(&planepart(args))
            .split_whitespace()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(
        lines(&["count", "--upto", "6"]),
        ["1", "1", "3", "6", "13", "24", "48"]
    );
    assert_eq!(
        lines(&["count", "--a", "1", "--b", "1", "--upto", "5"]),
        ["1"; 6]
    );
    assert_eq!(
        lines(&["count", "--a", "2", "--b", "1", "--upto", "4"]),
        ["1", "1", "2", "2", "3"]
    );
    assert_eq!(
        lines(&["count", "--domain", "2x2-1x1", "--upto", "2"]),
        ["1", "2", "3"]
    );
    let big = lines(&["count", "--upto", "200"]);
    assert_eq!(big[200], "4066263490068623016919082185");
}

#[test]
fn goldens() {
    let o = planepart(&["sample", "--n", "1", "--format", "svg", "--seed", "0"]);
    assert_eq!(o.stdout, golden("one_cube.svg"));
    let o = planepart(&["sample", "--n", "1", "--format", "ppm", "--seed", "0"]);
    assert_eq!(o.stdout, golden("one_cube.ppm"));
    let o = planepart(&["sample", "--n", "12", "--seed", "5", "--format", "json"]);
    assert_eq!(o.stdout, golden("n12_seed5.json"));
}

#[test]
fn records_validate_and_are_seed_determined() {
    for args in [
        vec!["sample", "--n", "300", "--epsilon", "0.1"],
        vec!["sample-boxed", "--a", "3", "--b", "4", "--n", "200"],
        vec![
            "sample-boxed",
            "--a",
            "3",
            "--b",
            "4",
            "--n",
            "200",
            "--tuning",
            "closed-form",
        ],
        vec![
            "sample-skew",
            "--domain",
            "4x4-2x2-1x3",
            "--n",
            "150",
            "--epsilon",
            "0.05",
        ],
    ] {
        let mut full = args.clone();
        full.extend(["--format", "json", "--seed", "17", "--count", "3"]);
        let a = planepart(&full);
        assert!(a.status.success(), "{args:?}");
        let recs = records(&a);
        assert_eq!(recs.len(), 3);
        for (i, r) in recs.iter().enumerate() {
            r.validate().unwrap();
            assert_eq!((r.seed, r.stream), (17, i as u64));
        }
        full.extend(["--jobs", "3"]);
        assert_eq!(planepart(&full).stdout, a.stdout, "{args:?}");
    }
}

#[test]
fn million_cube_sample() {
    let o = planepart(&[
        "sample",
        "--n",
        "1000000",
        "--epsilon",
        "0.05",
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let r = &records(&o)[0];
    r.validate().unwrap();
    assert!((950_000..=1_050_000).contains(&r.size));
    assert!((r.x_used.unwrap() - 0.9866).abs() < 5e-5);
}

#[test]
fn seed_sources() {
    let o = planepart(&["sample", "--n", "40"]);
    let echoed = String::from_utf8(o.stderr).unwrap();
    let seed = echoed.trim().strip_prefix("seed: ").expect("seed echoed");
    let replay = planepart(&["sample", "--n", "40", "--seed", seed]);
    assert_eq!(replay.stdout, o.stdout);
    assert!(replay.stderr.is_empty());
    let env = Command::new(env!("CARGO_BIN_EXE_planepart"))
        .args(["sample", "--n", "40"])
        .env("PLANEPART_SEED", seed)
        .output()
        .unwrap();
    assert_eq!(env.stdout, o.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        planepart(&["sample", "--n", "10", "--a", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        planepart(&["sample", "--n", "10", "--epsilon=-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(planepart(&["sample", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        planepart(&["sample", "--n", "10", "--x", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        planepart(&["sample-skew", "--n", "10", "--domain", "3x3-4x1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        planepart(&["count", "--upto", "3", "--a", "2"])
            .status
            .code(),
        Some(2)
    );
    let o = planepart(&[
        "sample",
        "--n",
        "100",
        "--x",
        "0.01",
        "--max-attempts",
        "4",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("4 attempts"));
}

#[test]
fn image_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let p = path.to_str().unwrap();
    let o = planepart(&[
        "sample", "--n", "30", "--seed", "2", "--format", "svg", "--count", "2", "--out", p,
    ]);
    assert!(o.status.success());
    let first = std::fs::read(dir.path().join("p-0.svg")).unwrap();
    assert!(first.starts_with(b"<svg"));
    assert!(dir.path().join("p-1.svg").exists());
    let again = planepart(&["sample", "--n", "30", "--seed", "2", "--format", "svg"]);
    assert_eq!(again.stdout, first);
    let o = planepart(&[
        "sample", "--n", "30", "--format", "svg", "--count", "2", "--seed", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_and_bench() {
    let o = planepart(&["verify", "--suite", "small", "--seed", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().count() >= 5 && out.lines().all(|l| l.starts_with("PASS")));
    let o = planepart(&["bench", "--sizes", "1e3", "--runs", "1", "--seed", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n/a (single size)"));
}

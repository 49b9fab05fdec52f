use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bitretrieval"))
        .args(args)
        .current_dir(dir)
        .env("BITRETRIEVAL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn gradient_pgm(w: usize, h: usize) -> Vec<u8> {
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    for y in 0..h {
        for x in 0..w {
            bytes.push(((x + y) * 255 / (w + h - 2)) as u8);
        }
    }
    bytes
}

#[test]
fn gen_solve_round_trip() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let key = ok(d, &["gen", "--n", "23"]);
    assert!(key.contains("# provenance=pi\nN=23\nring=O\n1 1 0 0 1 0 0 1"));
    ok(d, &["gen", "--n", "23", "--autocorrelation", "--out", "a.txt"]);
    ok(d, &["solve", "--in", "a.txt", "--seed", "4", "--out", "found.key"]);
    // The recovered key must reproduce the autocorrelation.
    let a = ok(d, &["emit-mip", "--in", "a.txt"]);
    let b = ok(d, &["emit-mip", "--in", "found.key"]);
    assert_eq!(a, b);
}

#[test]
fn invalid_inputs_fail_cleanly() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = run(d, &["gen", "--n", "21"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an odd prime"));

    fs::write(d.join("bad.txt"), "N=5\nring=Q\n1 2 3 4\n").unwrap();
    assert_eq!(run(d, &["solve", "--in", "bad.txt"]).status.code(), Some(2));
    assert_eq!(run(d, &["solve", "--in", "missing.txt"]).status.code(), Some(2));
    assert_eq!(run(d, &["sign", "--key", "x", "--in", "y", "--quantizer", "w"]).status.code(), Some(2));
}

#[test]
fn solver_gives_up_with_status_one() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["gen", "--n", "61", "--autocorrelation", "--out", "a.txt"]);
    let out = run(d, &["solve", "--in", "a.txt", "--max-iterations", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sign_and_verify_documents() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["keygen", "--n", "101", "--seed", "5", "--out", "k"]);
    assert!(d.join("k.key").exists() && d.join("k.pub").exists());
    fs::write(d.join("doc.txt"), b"the quick brown fox").unwrap();
    fs::write(d.join("other.txt"), b"the quick brown fix").unwrap();

    for q in ["o", "z", "zr:0.5"] {
        ok(d, &["sign", "--key", "k.key", "--in", "doc.txt", "--quantizer", q, "--out", "sig.txt"]);
        assert_eq!(ok(d, &["verify", "--pub", "k.pub", "--in", "sig.txt", "--original", "doc.txt"]), "accept\n");
        let out = run(d, &["verify", "--pub", "k.pub", "--in", "sig.txt", "--original", "other.txt"]);
        assert_eq!(out.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("reject: too far"));
    }

    // One changed coefficient breaks divisibility.
    let sig = fs::read_to_string(d.join("sig.txt")).unwrap();
    let mut lines: Vec<String> = sig.lines().map(String::from).collect();
    let last = lines.last_mut().unwrap();
    let mut coeffs: Vec<i64> = last.split_whitespace().map(|c| c.parse().unwrap()).collect();
    coeffs[7] += 1;
    *last = coeffs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    fs::write(d.join("bad.txt"), lines.join("\n") + "\n").unwrap();
    let out = run(d, &["verify", "--pub", "k.pub", "--in", "bad.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("reject: not divisible"));

    // A key for a different N cannot verify.
    ok(d, &["keygen", "--n", "103", "--out", "k103"]);
    assert_eq!(run(d, &["verify", "--pub", "k103.pub", "--in", "sig.txt"]).status.code(), Some(2));
}

#[test]
fn sign_ring_elements() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["keygen", "--n", "23", "--out", "k"]);
    let data: Vec<String> = (0..23).map(|i| ((i * 37) % 200).to_string()).collect();
    fs::write(d.join("rho.txt"), format!("N=23\nring=Z\n{}\n", data.join(" "))).unwrap();
    ok(d, &["sign", "--key", "k.key", "--in", "rho.txt", "--element", "--out", "sig.txt"]);
    let verdict = ok(d, &["verify", "--pub", "k.pub", "--in", "sig.txt", "--original", "rho.txt", "--element"]);
    assert_eq!(verdict, "accept\n");
}

#[test]
fn watermark_round_trip_tamper_and_forgery() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["keygen", "--n", "23", "--seed", "2", "--out", "w"]);
    fs::write(d.join("img.pgm"), gradient_pgm(24, 18)).unwrap();
    ok(d, &["watermark-sign", "--key", "w.key", "--in", "img.pgm", "--out", "s.pgm", "--block", "4x6"]);

    let summary = ok(d, &["watermark-verify", "--pub", "w.pub", "--in", "s.pgm", "--block", "4x6", "--out", "m.pbm"]);
    assert_eq!(summary, "blocks_total,blocks_failed,failed_coords\n18,0,\n");
    assert!(fs::read(d.join("m.pbm")).unwrap().starts_with(b"P4\n6 3\n"));

    let mut bytes = fs::read(d.join("s.pgm")).unwrap();
    let header = b"P5\n24 18\n255\n".len();
    bytes[header + 9 * 24 + 5] ^= 4;
    fs::write(d.join("t.pgm"), &bytes).unwrap();
    let out = run(d, &["watermark-verify", "--pub", "w.pub", "--in", "t.pgm", "--block", "4x6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "blocks_total,blocks_failed,failed_coords\n18,1,1:1\n");

    let mut fresh = gradient_pgm(24, 18);
    let h = b"P5\n24 18\n255\n".len();
    fresh[h..].reverse();
    fs::write(d.join("fresh.pgm"), fresh).unwrap();
    let report = ok(d, &["forge-demo", "--pub", "w.pub", "--in", "s.pgm", "--fresh", "fresh.pgm", "--block", "4x6", "--out", "x.pgm"]);
    assert!(report.starts_with("block,counterfeit_perp_norm"));
    ok(d, &["watermark-verify", "--pub", "w.pub", "--in", "x.pgm", "--block", "4x6"]);

    let out = run(d, &["watermark-sign", "--key", "w.key", "--in", "img.pgm", "--out", "y.pgm", "--block", "4x4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_commands_write_csv() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let attack = ok(d, &["attack", "--n", "23", "--trials", "2"]);
    assert!(attack.starts_with("N,trial,ratio\n23,0,"));
    let disc = ok(d, &["ideal-discovery", "--n", "29", "--trials", "4", "--metric", "perp"]);
    assert!(disc.starts_with("N,trials,success_rate\n29,4,"));
    let bench = ok(d, &["bench", "--instances", "pi:23,random:23:1", "--runs", "3"]);
    assert!(bench.starts_with("instance,N,runs,solved,mean_iterations,std_iterations,log2_mean,flagged\n"));
    assert_eq!(bench.lines().count(), 3);
    ok(d, &["stats", "--instance", "pi:23", "--runs", "100", "--out", "h.csv", "--counts-out", "c.csv"]);
    assert_eq!(fs::read_to_string(d.join("c.csv")).unwrap().lines().count(), 101);
}

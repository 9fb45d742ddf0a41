use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const GF512_SPEC: &str =
    "q=2\nm=9\nn=9\nk=4\nr=2\ndelta=2\nmodulus=1,0,0,0,1,0,0,0,0,1\nbasisA=w^0,w^73,w^146\nbasisB=w^0,w^309,w^107\n";
const TINY: &str = "q=2\nm=6\nn=6\nk=2\nr=1\ndelta=2\n";

fn rankloc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankloc"))
        .current_dir(dir)
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

/// Writes the GF(2^9) spec and message, then encodes.
fn gf512(dir: &Path) {
    fs::write(dir.join("gf512.spec"), GF512_SPEC).unwrap();
    fs::write(dir.join("msg.txt"), "w^1\nw^2\nw^4\nw^8\n").unwrap();
    let o = rankloc(
        dir,
        &[
            "encode",
            "--spec",
            "gf512.spec",
            "--message",
            "msg.txt",
            "--out",
            "cw.txt",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn build_summary() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("gf512.spec"), GF512_SPEC).unwrap();
    let o = rankloc(dir.path(), &["build", "--spec", "gf512.spec"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("d_bound=5"));
    assert!(out.contains("mu=3"));
    assert!(out.contains("local code: (3,2) MRD"));
    assert!(out.contains("P_2 = {w^309, w^382, w^455}"));

    fs::write(dir.path().join("tiny.spec"), TINY).unwrap();
    let o = rankloc(dir.path(), &["build", "--spec", "tiny.spec"]);
    assert!(stdout(&o).contains("d_bound=4"));
}

#[test]
fn encode_gf512() {
    let dir = tempfile::tempdir().unwrap();
    gf512(dir.path());
    let text = fs::read_to_string(dir.path().join("cw.txt")).unwrap();
    let elements: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "[elements]")
        .skip(1)
        .take_while(|l| !l.starts_with('['))
        .collect();
    let want = [440, 307, 81, 465, 11, 174, 236, 132, 399].map(|k| format!("w^{k}"));
    assert_eq!(elements, want);
    assert!(text.starts_with("# fingerprint="));
}

#[test]
fn empty_pattern_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gf512(d);
    fs::write(d.join("none.txt"), ".........\n".repeat(9)).unwrap();
    let o = rankloc(
        d,
        &[
            "inject",
            "--spec",
            "gf512.spec",
            "--codeword",
            "cw.txt",
            "--pattern",
            "none.txt",
            "--out",
            "rx.txt",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = rankloc(
        d,
        &[
            "decode",
            "--spec",
            "gf512.spec",
            "--received",
            "rx.txt",
            "--out",
            "dec.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        fs::read(d.join("dec.txt")).unwrap(),
        fs::read(d.join("cw.txt")).unwrap()
    );
}

#[test]
fn crisscross_decode_reports_local_rack() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gf512(d);
    let pattern = "??????...\n???......\n???......\n...?.....\n...?.....\n...?.....\n...?.....\n...?.....\n...?..???\n";
    fs::write(d.join("p.txt"), pattern).unwrap();
    let o = rankloc(
        d,
        &[
            "inject",
            "--spec",
            "gf512.spec",
            "--codeword",
            "cw.txt",
            "--pattern",
            "p.txt",
            "--out",
            "rx.txt",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = rankloc(
        d,
        &[
            "decode",
            "--spec",
            "gf512.spec",
            "--received",
            "rx.txt",
            "--out",
            "dec.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: LOCAL j=3 GLOBAL"), "{out}");
    assert!(out.contains("repaired locally: 3"));
    assert_eq!(
        fs::read(d.join("dec.txt")).unwrap(),
        fs::read(d.join("cw.txt")).unwrap()
    );
}

#[test]
fn ambiguous_decode_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gf512(d);
    fs::write(d.join("p.txt"), "?????????\n".repeat(6) + &".........\n".repeat(3)).unwrap();
    let o = rankloc(
        d,
        &[
            "inject",
            "--spec",
            "gf512.spec",
            "--codeword",
            "cw.txt",
            "--pattern",
            "p.txt",
            "--out",
            "rx.txt",
        ],
    );
    assert!(o.status.success());
    let o = rankloc(
        d,
        &[
            "decode",
            "--spec",
            "gf512.spec",
            "--received",
            "rx.txt",
            "--out",
            "dec.txt",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("verdict: FAIL"));
    assert!(!d.join("dec.txt").exists());
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.spec"), "q=2\nm=9\nn=9\nk=3\nr=2\ndelta=2\n").unwrap();
    let o = rankloc(d, &["build", "--spec", "bad.spec"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("r must divide k"));

    fs::write(d.join("typo.spec"), "q=2\nm=6\nn=six\n").unwrap();
    let o = rankloc(d, &["build", "--spec", "typo.spec"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"));

    assert_eq!(rankloc(d, &["nonsense"]).status.code(), Some(3));
    assert_eq!(rankloc(d, &["build"]).status.code(), Some(3));
}

#[test]
fn mixed_spec_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gf512(d);
    fs::write(d.join("tiny.spec"), TINY).unwrap();
    let o = rankloc(
        d,
        &["lift", "--spec", "tiny.spec", "--codeword", "cw.txt", "--out", "l.txt"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("spec mismatch"));
}

#[test]
fn verify_tiny_exact() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("tiny.spec"), TINY).unwrap();
    let o = rankloc(dir.path(), &["verify", "--spec", "tiny.spec", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d=4 (optimal), local d=2 (MRD), lifted d_S=8, subspace-locality (1,4): PASS"));
}

#[test]
fn lift_writes_subspace() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gf512(d);
    let o = rankloc(
        d,
        &["lift", "--spec", "gf512.spec", "--codeword", "cw.txt", "--out", "l.txt"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(d.join("l.txt")).unwrap();
    assert!(text.contains("M=18 dim=9"), "{text}");
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("tiny.spec"), TINY).unwrap();
    let args = [
        "simulate",
        "--spec",
        "tiny.spec",
        "--rack",
        "2",
        "--rho",
        "1",
        "--trials",
        "300",
        "--seed",
        "9",
    ];
    let strip = |o: Output| {
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with("wall_time"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(rankloc(d, &args));
    let b = strip(rankloc(d, &args));
    assert_eq!(a, b);
    assert!(a.contains("successes=300"), "{a}");
    assert!(a.contains("within_guarantee=true"));
}

#[test]
fn version_names_format() {
    let dir = tempfile::tempdir().unwrap();
    let o = rankloc(dir.path(), &["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("file format 1"));
}

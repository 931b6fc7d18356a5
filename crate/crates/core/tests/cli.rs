//! End-to-end checks of the `gdconf` binary: exit codes, report files, and
//! the algebra-file round trip through the parser.

use std::process::Command;

fn gdconf() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gdconf"))
}

#[test]
fn speciality_heisenberg_exits_one_with_certificate() {
    let out = gdconf()
        .args([
            "speciality",
            "--algebra",
            "heisenberg3",
            "--diff-order",
            "2",
            "--degree",
            "4",
            "--depth",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("speciality.kernel.basis.0 = z"), "{text}");
}

#[test]
fn build_ffr_virasoro_exits_zero_with_witness() {
    let out = gdconf().args(["build-ffr", "--algebra", "virasoro-source", "--degree", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ffr.rank = 2"), "{text}");
    assert!(text.contains("verdict.faithful = pass"), "{text}");
}

#[test]
fn check_conformal_zero_algebra_exits_zero() {
    let out = gdconf().args(["check-conformal", "--algebra", "zero1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flags_and_inputs_exit_two() {
    let out = gdconf().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out2 = gdconf().args(["check-gd", "--algebra", "definitely-not-here"]).output().unwrap();
    assert_eq!(out2.status.code(), Some(2));
}

#[test]
fn report_files_are_byte_identical_across_runs() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("gdconf_rep1.txt");
    let p2 = dir.join("gdconf_rep2.txt");
    for p in [&p1, &p2] {
        let out = gdconf()
            .args(["check-gd", "--algebra", "heisenberg3", "--report"])
            .arg(p)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b);
    let _ = std::fs::remove_file(p1);
    let _ = std::fs::remove_file(p2);
}

#[test]
fn algebra_files_round_trip_from_disk() {
    let dir = std::env::temp_dir().join("gdconf_roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mine.alg");
    std::fs::write(
        &path,
        "[meta]\nname mine\n\n[generators]\na even\nb odd\n\n[circ]\na b -> 1/3*b\n\n[bracket]\n",
    )
    .unwrap();
    let out = gdconf().args(["check-novikov", "--algebra"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn commutator_flag_builds_gd_from_novikov() {
    let out = gdconf().args(["check-gd", "--algebra", "supernov2", "--commutator"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict.gd = pass"), "{text}");
}

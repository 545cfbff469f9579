use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdomino")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn grid_dump() {
    let o = run(&["grid", "--radius", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("heptagrid v1 radius=2\n"));
    assert_eq!(out.lines().count(), 1 + 1 + 7 + 21);
}

#[test]
fn verify_brackets_passes() {
    let o = run(&["verify", "brackets", "--L", "64", "--gens", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = run(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("hyperdomino: input-error: unknown suite"));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(run(&["grid", "--radius", "x"]).status.code(), Some(2));
    assert_eq!(run(&["mantilla", "--root", "Q"]).status.code(), Some(2));
}

#[test]
fn tables_report_mismatch_with_exit_one() {
    let o = run(&["tables", "--radius", "6", "--depth", "25"]);
    let out = stdout(&o);
    assert!(out.contains("15: ") && out.contains("siblings: "));
    assert_eq!(o.status.code(), Some(if out.contains("FAIL") { 1 } else { 0 }));
    if o.status.code() == Some(1) {
        assert!(stderr(&o).starts_with("hyperdomino: check-failed: tables differ"));
    }
}

#[test]
fn render_lift_is_well_formed_svg() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("lift.svg");
    let o = run(&["render", "--what", "lift", "--L", "64", "--gens", "3", "--rows", "64", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    let opened = svg.matches("<polygon").count() + svg.matches("<polyline").count();
    assert!(opened > 0);
    assert_eq!(svg.matches('<').count(), svg.matches('>').count());
}

#[test]
fn render_disk_is_deterministic() {
    let a = run(&["grid", "--radius", "3", "--format", "svg"]);
    let b = run(&["grid", "--radius", "3", "--format", "svg"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("<polygon").count(), 1 + 7 + 21 + 56);
}

#[test]
fn dumps_are_deterministic() {
    for args in [
        &["lift", "--L", "64", "--gens", "3", "--seed", "5"][..],
        &["antenna", "--L", "64", "--gens", "3", "--threads", "3", "--cut", "9"][..],
        &["mantilla", "--radius", "4", "--root", "Gl"][..],
        &["brackets", "--L", "128", "--phases", "0110"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn antenna_report_lists_gaps() {
    let o = run(&["antenna", "--L", "64", "--gens", "3", "--threads", "3", "--cut", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let gaps: usize = out.lines().next().unwrap().rsplit("gaps=").next().unwrap().parse().unwrap();
    assert_eq!(out.lines().filter(|l| l.starts_with("gap ")).count(), gaps);
}

#[test]
fn embed_matches_simulation() {
    for m in ["halt", "incrementer", "zigzag"] {
        let input = if m == "incrementer" { "111" } else { "" };
        let o = run(&["embed", "--machine", m, "--input", input, "--steps", "20"]);
        assert_eq!(o.status.code(), Some(0), "{m}: {}", stderr(&o));
    }
}

#[test]
fn embed_reads_machine_files() {
    let tm = scratch("flip.tm", "tm v1 states=1 alphabet=_1\n0,1 -> 0,_,R\n");
    let o = run(&["embed", "--machine", tm.to_str().unwrap(), "--input", "111", "--steps", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let bad = scratch("bad.tm", "tm v1 states=1 alphabet=_1\n0,1 -> 3,_,R\n");
    assert_eq!(run(&["embed", "--machine", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn check_matches_and_completes() {
    let tiles = scratch("pair.wang", "wang v1 arity=4 colors=a,b\ntile A: a a a a\ntile B: b b b b\n");
    let full = scratch("full.grid", "A A\nA A\n");
    let o = run(&["check", "--tiles", tiles.to_str().unwrap(), "--grid", full.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "match ok\n");

    let holes = scratch("holes.grid", "A .\n. .\n");
    let o = run(&["check", "--tiles", tiles.to_str().unwrap(), "--grid", holes.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("completions 1\n"));

    let clash = scratch("clash.grid", "A B\nA B\n");
    let o = run(&["check", "--tiles", tiles.to_str().unwrap(), "--grid", clash.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("hyperdomino: check-failed: 2 conflicts"));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("conflict ")).count(), 2);

    let stuck = scratch("stuck.grid", "A B\n. .\n");
    let o = run(&["check", "--tiles", tiles.to_str().unwrap(), "--grid", stuck.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("hyperdomino: check-failed: no completion"));
}

#[test]
fn oversized_requests_are_refused() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperdomino"))
        .args(["grid", "--radius", "9"])
        .env("HYPERDOMINO_MAX_TILES", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hyperdomino"))
        .args(["brackets", "--L", "4096"])
        .env("HYPERDOMINO_MAX_LEN", "1024")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

//! End-to-end tests against the built binary: exit-code contract,
//! byte-determinism of machine output, and lossless composition of
//! `generate` into `classify`.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use tec_cli::report::{ClassReport, ClassifyReport};

fn tec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tec_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 output")
}

const HAAR: [&str; 8] = ["1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8"];

#[test]
fn classify_haar_agrees_and_reports_branch() {
    let out = tec(&[&["classify", "--format", "machine"], &HAAR[..]].concat());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("classifier: tec"), "{text}");
    assert!(text.contains("witness: branch-I I.2a H1+K1"), "{text}");
    assert!(text.contains("oracle: tec"), "{text}");
    assert!(text.contains("agreement: true"), "{text}");

    // Byte determinism.
    let again = tec(&[&["classify", "--format", "machine"], &HAAR[..]].concat());
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn classify_machine_output_round_trips() {
    let masses = ["0.3", "1/10", "1/10", "1/10", "1/10", "1/10", "1/10", "1/10"];
    let out = tec(&[&["classify", "--format", "machine"], &masses[..]].concat());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report = ClassifyReport::parse_machine(&text).expect("machine output parses");
    assert!(!report.classifier_tec);
    assert!(!report.oracle_tec);
    assert!(report.counterexample.is_some());
    assert_eq!(report.to_machine(), text, "round trip is exact");
}

#[test]
fn classify_rejects_bad_input() {
    let short = tec(&["classify", "1/2", "1/2"]);
    assert_eq!(short.status.code(), Some(2));

    let unbalanced = tec(&[
        "classify", "0.2", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8",
    ]);
    assert_eq!(unbalanced.status.code(), Some(2));
    assert!(stderr(&unbalanced).contains("sum to 1"));

    let garbled = tec(&[
        "classify", "1/8", "1/8", "x", "1/8", "1/8", "1/8", "1/8", "1/8",
    ]);
    assert_eq!(garbled.status.code(), Some(2));
    assert!(stderr(&garbled).contains("mass 3"), "position info: {}", stderr(&garbled));

    let wrong_l = tec(&["classify", "--l", "2", "1/4", "1/4", "1/4", "1/4"]);
    assert_eq!(wrong_l.status.code(), Some(2));
}

#[test]
fn classify_reads_stdin() {
    let out = tec_with_stdin(&["classify", "--format", "machine"], "1/8 1/8 1/8 1/8\n1/8 1/8 1/8 1/8\n");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("classifier: tec"));
}

#[test]
fn class_counts_members() {
    let haar = tec(&[&["class", "--format", "machine"], &HAAR[..]].concat());
    assert_eq!(haar.status.code(), Some(0));
    let report = ClassReport::parse_machine(&stdout(&haar)).unwrap();
    assert_eq!(report.members.len(), 1);

    let masses = ["3/10", "1/10", "1/10", "1/10", "1/10", "1/10", "1/10", "1/10"];
    let bump = tec(&[&["class", "--format", "machine"], &masses[..]].concat());
    let report = ClassReport::parse_machine(&stdout(&bump)).unwrap();
    assert!(report.members.len() >= 2);
}

#[test]
fn class_supports_small_groups() {
    let out = tec(&["class", "--l", "2", "--format", "machine", "1/2", "1/4", "1/8", "1/8"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report = ClassReport::parse_machine(&stdout(&out)).unwrap();
    assert!(report.members.len() >= 2, "the a_max = 1/2 full-support case splits");
}

#[test]
fn generate_composes_losslessly_with_classify() {
    let generated = tec(&["generate", "example", "8", "--eps", "1/20"]);
    assert_eq!(generated.status.code(), Some(0));
    let masses_line = stdout(&generated);
    assert_eq!(masses_line.trim(), "3/10 1/10 1/10 1/10 1/10 1/10 1/10 1/10");

    let classified = tec_with_stdin(&["classify", "--format", "machine"], &masses_line);
    assert_eq!(classified.status.code(), Some(0));
    let report = ClassifyReport::parse_machine(&stdout(&classified)).unwrap();
    assert!(!report.classifier_tec);
    // The masses line survives the round trip exactly.
    assert!(stdout(&classified).contains(&format!("masses: {}", masses_line.trim())));
}

#[test]
fn generate_enforces_ranges() {
    let out = tec(&["generate", "example", "8", "--eps", "1/10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("0 < eps <= 1/20"), "{}", stderr(&out));

    let endpoint = tec(&["generate", "example", "1", "--eps", "1/32"]);
    assert_eq!(endpoint.status.code(), Some(0));

    let haar = tec(&["generate", "poisson-haar", "--q", "2/5"]);
    assert_eq!(haar.status.code(), Some(0));
    assert_eq!(stdout(&haar).trim(), "19/40 3/40 3/40 3/40 3/40 3/40 3/40 3/40");

    let poisson = tec(&["generate", "poisson", "--u", "9/10,9/10,9/10,1,1,1,1"]);
    assert_eq!(poisson.status.code(), Some(0));

    let bad = tec(&["generate", "poisson", "--u", "9/10,9/10"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fuzz_is_deterministic_and_green() {
    let args = ["fuzz", "--count", "300", "--seed", "7", "--denominator", "30"];
    let first = tec(&args);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    assert!(stdout(&first).contains("disagreements: 0"));
    assert!(stdout(&first).contains("result: ok"));
    let second = tec(&args);
    assert_eq!(first.stdout, second.stdout, "identical seed, identical bytes");

    // Denominator bound 1 only ever draws point masses, which both
    // procedures classify as TEC.
    let degenerate = tec(&["fuzz", "--count", "1", "--seed", "3", "--denominator", "1"]);
    assert_eq!(degenerate.status.code(), Some(0));
    assert!(stdout(&degenerate).contains("tec: 1"));
}

#[test]
fn grid_small_denominators() {
    let point_masses = tec(&["grid", "--denominator", "1"]);
    assert_eq!(point_masses.status.code(), Some(0));
    let text = stdout(&point_masses);
    assert!(text.contains("tec: 8"), "{text}");
    assert!(text.contains("non-tec: 0"), "{text}");

    let out = tec(&["grid", "--denominator", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result: ok"));

    let capped = tec(&["grid", "--denominator", "40", "--cap", "1000"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn theorems_agree_on_small_grids() {
    let t1 = tec(&["theorems", "--which", "1", "--denominator", "40"]);
    assert_eq!(t1.status.code(), Some(0), "stderr: {}", stderr(&t1));
    assert!(stdout(&t1).contains("checks: 39"));
    assert!(stdout(&t1).contains("result: ok"));

    let t2 = tec(&["theorems", "--which", "2", "--denominator", "5"]);
    assert_eq!(t2.status.code(), Some(0));
    assert!(stdout(&t2).contains("checks: 64"));

    let t3 = tec(&["theorems", "--which", "3", "--denominator", "12"]);
    assert_eq!(t3.status.code(), Some(0));
    assert!(stdout(&t3).contains("result: ok"));

    let bad = tec(&["theorems", "--which", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn systems_partition_table() {
    let out = tec(&["systems"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("pattern ")).count(), 128);
    assert!(text.contains("pattern ++++++++ family A j=0"));
    assert!(text.lines().last().unwrap().contains("A:8 B:8 C:56 D:56"));
    // Each C_k block has exactly 8 rows.
    for k in 1..=7 {
        let rows = text.lines().filter(|l| l.contains(&format!("family C{k} j="))).count();
        assert_eq!(rows, 8, "C{k}");
    }
}

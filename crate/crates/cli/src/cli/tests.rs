//! End-to-end runs of the command layer, in process.

use std::fs;
use std::path::Path;

use crate::formats::{matrix, netlist};
use crate::report::{AnalysisReport, AnalysisResult};
use crate::stats::StatsReport;
use crate::stream_io::StreamMetadata;
use indefinite_core::linalg::Matrix;
use indefinite_core::optics::network_unitary;

struct Outcome {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

impl Outcome {
    fn text(&self) -> String {
        String::from_utf8(self.stdout.clone()).unwrap()
    }
}

fn run(args: &[&str]) -> Outcome {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let mut full = vec!["indefinite"];
    full.extend_from_slice(args);
    let code = super::run(full, &mut stdout, &mut stderr);
    Outcome { code, stdout, stderr: String::from_utf8(stderr).unwrap() }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stats_json(file: &Path, extra: &[&str]) -> StatsReport {
    let mut args = vec!["stats", path_str(file), "--json"];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let out = run(&["generate", "--preset", "Ux-a100", "--count", "1000", "--seed", "7", "--output", path_str(p)]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(&a).unwrap().len(), 1000);
    let meta_a = fs::read_to_string(dir.path().join("a.txt.meta.json")).unwrap();
    let meta = StreamMetadata::from_json(&meta_a, "meta").unwrap();
    assert_eq!((meta.seed, meta.count, meta.preset.as_str(), meta.mode.as_str()), (7, 1000, "Ux-a100", "ternary"));
    assert_eq!(meta.generator, "ChaCha20");
    assert_eq!(meta_a, fs::read_to_string(dir.path().join("b.txt.meta.json")).unwrap());
}

#[test]
fn merged_preset_never_emits_symbol_two() {
    let out = run(&["generate", "--preset", "merged-Eq6", "--count", "10000", "--seed", "1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.len(), 10000);
    assert!(!out.stdout.contains(&b'2'));
    assert!(out.stdout.contains(&b'0') && out.stdout.contains(&b'1'));
    let meta = StreamMetadata::from_json(&out.stderr, "stderr").unwrap();
    assert_eq!(meta.distribution[2], 0.0);
}

#[test]
fn custom_distribution_passes_chi_square() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("d.txt");
    let out = run(&["generate", "--dist", "0.2,0.3,0.5", "--count", "100000", "--seed", "3", "--output", path_str(&f)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report = stats_json(&f, &["--expect", "0.2,0.3,0.5"]);
    let chi = report.chi_square.unwrap();
    assert_eq!(chi.degrees_of_freedom, 2);
    assert!(chi.p_value > 0.001, "p = {}", chi.p_value);
    assert_eq!(report.total, 100_000);
}

#[test]
fn thread_count_does_not_change_the_stream() {
    let base = ["generate", "--preset", "fig5", "--count", "300000", "--seed", "11", "--mode", "merge"];
    let one = run(&[&base[..], &["--threads", "1"]].concat());
    let four = run(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stderr, four.stderr);
}

#[test]
fn packed_streams_round_trip_through_stats() {
    let dir = tempfile::tempdir().unwrap();
    let packed = dir.path().join("bits.bin");
    let ascii = dir.path().join("bits.txt");
    for (p, fmt) in [(&packed, "packed"), (&ascii, "ascii")] {
        let out = run(&[
            "generate", "--preset", "Ux-a010", "--count", "1003", "--seed", "5", "--mode", "morphism", "--format", fmt,
            "--output", path_str(p),
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
    }
    assert_eq!(fs::read(&packed).unwrap().len(), 126);
    let a = stats_json(&packed, &[]);
    let b = stats_json(&ascii, &[]);
    assert_eq!(a, b);
    assert_eq!(a.total, 1003);
}

#[test]
fn generate_usage_and_io_errors() {
    assert_eq!(run(&["generate", "--preset", "nope", "--count", "5"]).code, 2);
    assert_eq!(run(&["generate", "--dist", "0.5,0.6,0.1", "--count", "5"]).code, 2);
    assert_eq!(run(&["generate", "--dist", "1,0,0", "--count", "5"]).code, 2);
    assert_eq!(run(&["generate", "--preset", "fig5", "--count", "5", "--format", "packed"]).code, 2);
    assert_eq!(run(&["generate", "--count", "5"]).code, 2);
    assert_eq!(run(&["generate", "--preset", "fig5"]).code, 2);
    let out = run(&["generate", "--preset", "fig5", "--count", "5", "--output", "/nonexistent/dir/x.txt"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("/nonexistent/dir/x.txt"));
}

#[test]
fn analyze_star_fixpoint() {
    let out = run(&["analyze", "--builtin", "fig4", "--set", "a=1", "--query", "propagate"]);
    assert_eq!(out.code, 0);
    assert!(out.text().contains("fixpoint: {a:1,1:0,2:0,4:0,5:0}"), "{}", out.text());
}

#[test]
fn analyze_enumerates_eight_states() {
    let out = run(&["analyze", "--builtin", "fig4", "--query", "enumerate", "--json"]);
    let report = AnalysisReport::from_json(&out.text()).unwrap();
    let AnalysisResult::Enumeration { count, states } = report.result else { panic!() };
    assert_eq!(count, 8);
    assert!(states.iter().all(|s| s.contains(&"1".to_string()) && !s.contains(&"a".to_string())));
}

#[test]
fn analyze_gadget_contradictions() {
    let out = run(&["analyze", "--builtin", "fig4-tifs", "--set", "a=1", "--set", "b=1", "--query", "propagate"]);
    assert_eq!(out.code, 0);
    assert!(out.text().contains("contradiction at {3,21,23}"), "{}", out.text());
    let out = run(&["analyze", "--builtin", "fig4-tits", "--set", "a=1", "--set", "b=0", "--query", "propagate", "--json"]);
    let report = AnalysisReport::from_json(&out.text()).unwrap();
    let AnalysisResult::Contradiction { mut context, .. } = report.result else { panic!() };
    context.sort();
    assert_eq!(context, ["6", "7", "b"]);
    let out = run(&["analyze", "--builtin", "fig4", "--query", "gadget", "--from", "a", "--to", "3"]);
    assert!(out.text().contains("gadget a -> 3: both"));
    let out = run(&["analyze", "--builtin", "fig4", "--query", "unital"]);
    assert!(out.text().contains("unital: false"));
}

#[test]
fn analyze_report_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["analyze", "--builtin", "fig4", "--set", "a=1", "--query", "propagate", "--report", path_str(&path)]);
    assert_eq!(out.code, 0);
    let text = fs::read_to_string(&path).unwrap();
    let report = AnalysisReport::from_json(&text).unwrap();
    assert_eq!(report.trace.len(), 4);
    assert_eq!(format!("{}\n", report.to_json()), text);
}

#[test]
fn analyze_reads_hypergraph_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("g.txt");
    fs::write(&good, "rank 3\nvertex x\nvertex y\nvertex z\nvertex w\nvertex v\ncontext x y z\ncontext x w v\n").unwrap();
    let out = run(&["analyze", "--hypergraph", path_str(&good), "--set", "y=0", "--set", "z=0", "--query", "propagate"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.text().contains("fixpoint: {x:1,y:0,z:0,w:0,v:0}"), "{}", out.text());

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "rank 3\nvertex x\n# note\ncontext x x\n").unwrap();
    let out = run(&["analyze", "--hypergraph", path_str(&bad), "--query", "enumerate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.txt:4:"), "{}", out.stderr);

    assert_eq!(run(&["analyze", "--builtin", "fig4", "--set", "zz=1", "--query", "propagate"]).code, 2);
    assert_eq!(run(&["analyze", "--builtin", "fig4", "--query", "gadget", "--from", "a"]).code, 2);
    assert_eq!(run(&["analyze", "--hypergraph", "/nonexistent.txt", "--query", "unital"]).code, 1);
}

fn reconstruction_error(stderr: &str) -> f64 {
    let line = stderr.lines().find(|l| l.starts_with("reconstruction error: ")).unwrap();
    line["reconstruction error: ".len()..].parse().unwrap()
}

#[test]
fn decompose_builtin_network_unitary() {
    let out = run(&["decompose", "--builtin", "U-sec4.2"]);
    assert_eq!(out.code, 0);
    assert!(reconstruction_error(&out.stderr) < 1e-9);
    let net = netlist::parse(&out.text(), "stdout").unwrap();
    let u = network_unitary(&net).unwrap();
    assert!(u.as_matrix().max_abs_diff(indefinite_core::constants::u_network().as_matrix()) < 1e-9);
}

#[test]
fn decompose_identity_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("id.txt");
    let out_path = dir.path().join("id.net");
    fs::write(&m, matrix::serialize(&Matrix::identity(4))).unwrap();
    let out = run(&["decompose", "--matrix", path_str(&m), "--output", path_str(&out_path)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let net = netlist::parse(&fs::read_to_string(&out_path).unwrap(), "net").unwrap();
    assert!(network_unitary(&net).unwrap().as_matrix().max_abs_diff(&Matrix::identity(4)) < 1e-12);
}

#[test]
fn decompose_rejects_non_unitary() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    fs::write(&m, "1+0j 1+0j\n0+0j 1+0j\n").unwrap();
    let out = run(&["decompose", "--matrix", path_str(&m)]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("residual"), "{}", out.stderr);
    fs::write(&m, "1+0j 0+0j\n0+0j\n").unwrap();
    assert_eq!(run(&["decompose", "--matrix", path_str(&m)]).code, 2);
}

#[test]
fn verify_passes_and_perturbation_fails() {
    let out = run(&["verify"]);
    assert_eq!(out.code, 0, "{}", out.text());
    assert!(!out.text().contains("FAIL"));
    assert!(out.text().contains("U_x {-1.000000,1.000000,1.000000} U'U_x {-1.000000,1.000000,1.000000}"));
    let out = run(&["verify", "--perturb-ux", "1e-6"]);
    assert_eq!(out.code, 3);
    assert!(out.text().contains("FAIL U_x is unitary"));
}

#[test]
fn stats_on_hand_made_streams() {
    let dir = tempfile::tempdir().unwrap();
    let zeros = dir.path().join("zeros.txt");
    fs::write(&zeros, "0".repeat(100)).unwrap();
    let r = stats_json(&zeros, &["--alphabet", "2"]);
    assert_eq!(r.monobit_z, Some(-10.0));

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let r = stats_json(&empty, &[]);
    assert_eq!((r.total, r.monobit_z, r.runs_z), (0, None, None));
    assert_eq!(r.counts, vec![0, 0]);
    assert!(run(&["stats", path_str(&empty)]).text().contains("monobit z: undefined"));

    let junk = dir.path().join("junk.txt");
    fs::write(&junk, "01?10").unwrap();
    assert_eq!(run(&["stats", path_str(&junk)]).code, 2);
    fs::write(&junk, "0120").unwrap();
    assert_eq!(run(&["stats", path_str(&junk), "--alphabet", "2"]).code, 2);
    assert_eq!(run(&["stats", path_str(&junk), "--expect", "0.5,0.5"]).code, 2);
}

#[test]
fn merged_bit_stream_is_balanced() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.bin");
    let out = run(&[
        "generate", "--preset", "merged-Eq6", "--count", "1000000", "--seed", "2", "--mode", "merge", "--format", "packed",
        "--output", path_str(&f),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = stats_json(&f, &[]);
    assert_eq!(r.total, 1_000_000);
    assert!(r.monobit_z.unwrap().abs() < 3.0);
}

//! Acceptance gate for the sweep pipeline: the same configuration run
//! twice from scratch must produce byte-identical tabular and chart
//! output.

use std::fs;
use std::path::Path;
use std::process::Command;

fn run_sweep(dir: &Path) -> (Vec<u8>, Vec<u8>) {
    let status = Command::new(env!("CARGO_BIN_EXE_weatlab"))
        .args(["sweep", "--config"])
        .arg(dir.join("run.toml"))
        .status()
        .expect("sweep should launch");
    assert!(status.success(), "sweep exited with {status}");
    let out = dir.join("out");
    (
        fs::read(out.join("report.csv")).expect("report.csv written"),
        fs::read(out.join("report.svg")).expect("report.svg written"),
    )
}

fn stage_fixture(dir: &Path) {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/mini");
    for name in ["corpus.ndjson", "run.toml"] {
        fs::copy(fixture.join(name), dir.join(name)).expect("fixture copy");
    }
}

#[test]
fn criterion_11_sweep_determinism() {
    let first_dir = tempfile::tempdir().unwrap();
    stage_fixture(first_dir.path());
    let (csv_a, svg_a) = run_sweep(first_dir.path());

    let second_dir = tempfile::tempdir().unwrap();
    stage_fixture(second_dir.path());
    let (csv_b, svg_b) = run_sweep(second_dir.path());

    assert!(!csv_a.is_empty() && !svg_a.is_empty());
    assert_eq!(csv_a, csv_b, "report.csv differs between identical runs");
    assert_eq!(svg_a, svg_b, "report.svg differs between identical runs");

    let rows = csv_a.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count() - 1;
    println!(
        "[PASS] criterion 11: two fresh sweep runs produced byte-identical \
         report.csv ({rows} rows, {} bytes) and report.svg ({} bytes)",
        csv_a.len(),
        svg_a.len()
    );
}

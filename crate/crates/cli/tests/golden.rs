//! Figure presets against checked-in CSVs. `UPDATE_GOLDEN=1` rewrites them.

use std::path::{Path, PathBuf};

use photon_prop_cli::output::{check_trace_schema, compare_csv};
use photon_prop_cli::{preset, run_scenario, PRESET_NAMES};

const TOL: f64 = 1e-12;

fn golden_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn presets_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let tmp = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    for name in PRESET_NAMES {
        let out = tmp.path().join(name);
        let run = run_scenario(&preset(name).unwrap(), &out).unwrap();
        let dir = golden_dir(name);
        for f in run.files.iter().filter(|f| f.ends_with(".csv")) {
            let actual = std::fs::read_to_string(out.join(f)).unwrap();
            if f.ends_with("_trace.csv") {
                check_trace_schema(&actual).unwrap_or_else(|e| panic!("{f}: {e}"));
            }
            let path = dir.join(f);
            if update {
                std::fs::create_dir_all(&dir).unwrap();
                std::fs::write(&path, &actual).unwrap();
                continue;
            }
            let expected = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}; rerun with UPDATE_GOLDEN=1", path.display()));
            if let Err(e) = compare_csv(&actual, &expected, TOL) {
                failures.push(format!("{name}/{f}: {e}"));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let s = preset("fig2").unwrap();
    let a = run_scenario(&s, &tmp.path().join("a")).unwrap();
    run_scenario(&s, &tmp.path().join("b")).unwrap();
    for f in &a.files {
        let x = std::fs::read(tmp.path().join("a").join(f)).unwrap();
        let y = std::fs::read(tmp.path().join("b").join(f)).unwrap();
        assert!(x == y, "{f} differs between runs");
    }
}

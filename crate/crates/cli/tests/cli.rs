use std::path::Path;
use std::process::{Command, Output};

use fqdist::constructions::{random_plane_set, random_point_set};
use fqdist::field::FieldCtx;
use fqdist::geometry::Space;
use fqdist::io::{write_json, PlaneSetFile, PointSetFile};

fn fqdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqdist")).args(args).output().unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn summary(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&read(dir, "summary.json")).unwrap()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn verify_full_configuration_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v");
    let o = fqdist(&["verify", "--full", "--field", "5", "--dim", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(&out, "report.csv");
    assert!(csv.starts_with("# schema: fqdist-report/1\n"));
    assert_eq!(
        csv.lines().nth(1).unwrap(),
        "q,d,e_size,f_size,maxline,distinct_all,distinct_nonzero,second_moment,bound_num,bound_den,hypothesis,pass"
    );
    assert_eq!(data_rows(&csv), ["5,2,25,40,5,5,4,200000,20,9,true,true"]);
    let s = summary(&out);
    assert_eq!(s["instances"], 1);
    assert_eq!(s["failures"], 0);
    assert_eq!(s["worst_slack"], "25/9");
}

#[test]
fn corrupted_histogram_exits_nonzero() {
    let o = fqdist(&["verify", "--full", "--field", "5", "--dim", "2", "--corrupt-nu"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nu_total"));
}

#[test]
fn empty_point_set_is_skipped_with_notice() {
    let o = fqdist(&["verify", "--field", "3", "--dim", "2", "--esize", "0", "--fsize", "4"]);
    assert!(o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("notice: skipped"), "{err}");
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(data_rows(&stdout).is_empty());
}

#[test]
fn verify_set_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = FieldCtx::new(3, 2, None).unwrap();
    let s = Space::new(&f, 2).unwrap();
    let (pe, pf) = (dir.path().join("e.json"), dir.path().join("f.json"));
    write_json(&pe, &PointSetFile::new(&s, &random_point_set(&s, 30, 1).unwrap(), None)).unwrap();
    write_json(&pf, &PlaneSetFile::new(&s, &random_plane_set(&s, 40, 2).unwrap(), None)).unwrap();
    let o = fqdist(&["verify", "--points", pe.to_str().unwrap(), "--planes", pf.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    let rows = data_rows(&stdout);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("9,2,30,40,"), "{}", rows[0]);
}

#[test]
fn sweep_row_count_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = fqdist(&["sweep", "--field", "5", "--dim", "2", "--trials", "20", "--seed", "3", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let (a, b) = (run("a"), run("b"));
    let report = read(&a, "report.csv");
    assert_eq!(data_rows(&report).len(), 500);
    assert_eq!(report, read(&b, "report.csv"));
    assert_eq!(read(&a, "cells.csv"), read(&b, "cells.csv"));
    assert_eq!(data_rows(&read(&a, "cells.csv")).len(), 25);
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(&cfg, "fields = [\"3\"]\ndims = [2]\ne_sizes = [3, 9]\nf_sizes = [6, 24]\ntrials = 4\nseed = 11\n").unwrap();
    let out = dir.path().join("o");
    let o = fqdist(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(data_rows(&read(&out, "report.csv")).len(), 16);
}

#[test]
fn config_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "fields = [\"3\"]\ndims = [2]\ntrials = \"many\"\n").unwrap();
    let o = fqdist(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("trials"), "{err}");

    let o = fqdist(&["verify", "--field", "5", "--dim", "2", "--esize", "3", "--fsize", "41"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("f_sizes"));
}

#[test]
fn sharpness_runs_and_rejects_even_characteristic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s");
    let o = fqdist(&["sharpness", "--field", "3", "--field", "5", "--dim", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(&out, "sharpness.csv");
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 2);
    for (row, p) in rows.iter().zip([3usize, 5]) {
        let cols: Vec<&str> = row.split(',').collect();
        let distinct_nonzero: usize = cols[6].parse().unwrap();
        assert!(distinct_nonzero < p);
        assert_eq!(cols[7], "0", "no distance outside the subfield");
        assert_eq!(cols[10], "true");
    }
    let o = fqdist(&["sharpness", "--field", "2", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn orbit_check_and_budget_skip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let o = fqdist(&["orbit-check", "--field", "3", "--dim", "2", "--dim", "3", "--budget", "100000", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(&out, "orbits.csv");
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("3,2,8,9,24,"), "{}", rows[0]);
    let s = summary(&out);
    let skipped = s["skipped"].as_array().unwrap();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0].as_str().unwrap().contains("d=3"));
}

#[test]
fn fourier_test_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f");
    let o = fqdist(&["fourier-test", "--field", "3", "--field", "3,2", "--dim", "2", "--trials", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(&out, "fourier.csv");
    assert!(data_rows(&csv).iter().all(|r| r.ends_with(",true")));
    assert_eq!(summary(&out)["instances"], 20);
}

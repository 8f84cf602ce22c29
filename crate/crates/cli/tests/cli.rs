use std::path::Path;
use std::process::{Command, Output};

fn smoothdisc(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothdisc"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect()
}

fn header(path: &Path) -> Vec<String> {
    csv::Reader::from_path(path).unwrap().headers().unwrap().iter().map(str::to_string).collect()
}

fn metadata(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("metadata.json")).unwrap()).unwrap()
}

#[test]
fn discrepancy_writes_csv_svg_and_metadata() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let o = smoothdisc(&["discrepancy", "--alpha", "golden", "--phi", "fit:1000", "--N", "100:10:3", "--J", "6"], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = rows(&out.join("discrepancy.csv"));
    assert_eq!(table.len(), 3);
    for r in &table {
        let ratio: f64 = r[4].parse().unwrap();
        assert!(ratio > 0.0 && ratio < 1.0, "{r:?}");
    }
    assert!(std::fs::read_to_string(out.join("discrepancy.svg")).unwrap().starts_with("<svg"));
    let meta = metadata(&out);
    assert_eq!(meta["config"]["command"], "discrepancy");
    assert_eq!(meta["config"]["seed"], 1);
    assert!(meta["versions"]["smoothdisc"].is_string());
    assert!(meta["frozen_constants"]["GOLDEN_SUP_BOUND"].is_number());
    assert_eq!(meta["results"]["phi"], "const:2.618033988749895");
}

#[test]
fn identical_config_gives_identical_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["discrepancy", "--lattice", "minkowski:cubic:7", "--N", "100:10:2", "--J", "4", "--gamma-samples", "3", "--seed", "7"];
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(smoothdisc(&args, &a).status.success());
    assert!(smoothdisc(&args, &b).status.success());
    let read = |d: &Path| std::fs::read(d.join("discrepancy.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_eq!(std::fs::read(a.join("metadata.json")).unwrap().len(), std::fs::read(b.join("metadata.json")).unwrap().len());
}

#[test]
fn missing_input_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = smoothdisc(&["discrepancy"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let o = smoothdisc(&["discrepancy", "--alpha", "golden", "--lattice", "dani:golden"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let o = smoothdisc(&["discrepancy", "--alpha", "golden", "--N", "100:10"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn poisson_check_passes_and_catches_a_flipped_sign() {
    let tmp = tempfile::tempdir().unwrap();
    let ok = smoothdisc(&["poisson-check", "--count", "24"], &tmp.path().join("ok"));
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    let loose = smoothdisc(&["poisson-check", "--count", "12", "--tol", "1e-3"], &tmp.path().join("loose"));
    assert_eq!(loose.status.code(), Some(0));
    let bad = smoothdisc(&["poisson-check", "--count", "24", "--inject-fault"], &tmp.path().join("bad"));
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("first failing configuration"));
}

#[test]
fn liouville_witnesses_hold() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("w");
    let o = smoothdisc(&["witness", "--alpha", "liouville:2:5"], &out);
    assert_eq!(o.status.code(), Some(0));
    let table = rows(&out.join("witness.csv"));
    let pick = |h: f64| {
        let row = table.iter().find(|r| r[1].parse::<f64>().unwrap() == h).unwrap_or_else(|| panic!("no row at H = {h}"));
        row[5].parse::<f64>().unwrap()
    };
    let measured = [pick(4.0), pick(64.0), pick(16777216.0)];
    assert!(measured[0] < measured[1] && measured[1] < measured[2], "{measured:?}");
    assert!(table.iter().all(|r| r[7] == "true"));
}

#[test]
fn constant_phi_rejects_golden_witnesses() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("w");
    let o = smoothdisc(&["witness", "--alpha", "golden", "--phi", "const:3"], &out);
    assert_eq!(o.status.code(), Some(0));
    assert!(rows(&out.join("witness.csv")).is_empty());
    assert_eq!(header(&out.join("witness.csv"))[0], "j");
    assert_eq!(metadata(&out)["results"]["accepted"], 0);
}

#[test]
fn littlewood_records() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("l");
    let o = smoothdisc(&["littlewood", "--alpha", "golden+golden", "--horizon", "10000"], &out);
    assert!(o.status.success());
    let table = rows(&out.join("littlewood.csv"));
    let ns: Vec<u64> = table.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(&ns[..6], &[1, 2, 3, 5, 8, 13]);
    assert_eq!(*ns.last().unwrap(), 6765);

    let out = tmp.path().join("peck");
    let o = smoothdisc(&["littlewood", "--alpha", "cubic:7+cubic:7^2", "--horizon", "1000000"], &out);
    assert!(o.status.success());
    let peak = rows(&out.join("littlewood.csv")).iter().map(|r| r[5].parse::<f64>().unwrap()).fold(0.0, f64::max);
    let bound = metadata(&out)["frozen_constants"]["PECK_BOUND"].as_f64().unwrap();
    assert!(peak <= bound * (1.0 + 1e-9), "{peak} > {bound}");

    let o = smoothdisc(&["littlewood", "--alpha", "golden+1/3"], &tmp.path().join("r"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bohr_admissible_rows_have_empty_uncertainty_sets() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("b");
    let o = smoothdisc(&["bohr", "--lattice", "minkowski:cubic:7", "--phi", "const:7", "--N", "100:10:2"], &out);
    assert_eq!(o.status.code(), Some(0));
    let table = rows(&out.join("bohr.csv"));
    assert_eq!(table.len(), 10);
    assert!(table.iter().any(|r| r[6] == "true"));
    assert!(table.iter().filter(|r| r[6] == "true").all(|r| r[7] == "true"));
}

#[test]
fn classical_scan_reports_slope() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("c");
    let o = smoothdisc(&["scan-classical", "--alpha", "golden", "--N", "100:10:4"], &out);
    assert!(o.status.success());
    assert_eq!(rows(&out.join("classical.csv")).len(), 4);
    assert!(metadata(&out)["results"]["slope_per_decade"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_file_supplies_options_and_reports_positions() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.toml");
    std::fs::write(&cfg, "alpha = \"golden\"\nN = \"100:10:2\"\n").unwrap();
    let out = tmp.path().join("c");
    let o = smoothdisc(&["scan-classical", "--config", cfg.to_str().unwrap()], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(rows(&out.join("classical.csv")).len(), 2);

    std::fs::write(&cfg, "alpha = \"golden\"\nN = 100\n").unwrap();
    let o = smoothdisc(&["scan-classical", "--config", cfg.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("run.toml:2:"), "{}", String::from_utf8_lossy(&o.stderr));
}

//! End-to-end behaviour of the `sagin` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn sagin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sagin"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("run sagin")
}

fn stdout(args: &[&str]) -> String {
    let out = sagin(args);
    assert!(
        out.status.success(),
        "sagin {args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn write_scenario(dir: &Path, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(sagin_core::scenario::DEFAULT_SCENARIO_JSON).unwrap();
    edit(&mut v);
    let path = dir.join("scenario.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    path
}

#[test]
fn xsection_emits_the_six_cell_grid() {
    let (header, rows) = csv_rows(&stdout(&["xsection"]));
    assert_eq!(header, ["frequency_hz", "radius_m", "alpha", "regime", "q_ext", "sigma_ext_m2"]);
    assert_eq!(rows.len(), 6);
    let single = stdout(&["xsection", "--freq-hz", "3e11", "--radius-m", "1e-3"]);
    assert_eq!(single.lines().count(), 2);
}

#[test]
fn empty_or_invalid_grid_is_a_usage_error() {
    for args in [
        &["xsection", "--radius-m", ""][..],
        &["xsection", "--freq-hz", "-5"],
        &["xsection", "--radius-m", "abc"],
        &["budget", "--jobs", "0"],
        &["frobnicate"],
    ] {
        let out = sagin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn scenario_schema_violations_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad_type = write_scenario(dir.path(), |v| v["bands"][1]["bandwidth_hz"] = "wide".into());
    let out = sagin(&["budget", "--scenario", bad_type.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bands[1].bandwidth_hz"), "{}", stderr(&out));

    let zero_bw = write_scenario(dir.path(), |v| v["bands"][0]["bandwidth_hz"] = 0.0.into());
    let out = sagin(&["capacity", "--scenario", zero_bw.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bandwidth"), "{}", stderr(&out));

    let unknown = write_scenario(dir.path(), |v| v["geometry"]["azimuth_deg"] = 10.0.into());
    let out = sagin(&["layers", "--scenario", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("azimuth_deg"), "{}", stderr(&out));

    let missing = dir.path().join("nope.json");
    let out = sagin(&["budget", "--scenario", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_waveform_family_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cdma.json");
    std::fs::write(&spec, r#"{"version":"1.0","waveform":{"family":"CDMA","len":64}}"#).unwrap();
    let out = sagin(&["waveform", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("waveform"), "{}", stderr(&out));
}

#[test]
fn budget_reproduces_free_space_anchors_and_flags() {
    let (header, rows) = csv_rows(&stdout(&["budget"]));
    assert_eq!(header, ["band", "carrier_frequency_hz", "weather", "factor", "loss_db", "flag"]);
    let fspl: Vec<f64> = rows
        .iter()
        .filter(|r| r[3] == "FSPL")
        .map(|r| r[4].parse().unwrap())
        .collect();
    for (v, anchor) in fspl.iter().zip([184.5, 208.0, 264.2]) {
        assert!((v - anchor).abs() < 0.05, "{v}");
    }
    for r in &rows {
        let v: f64 = r[4].parse().unwrap();
        assert_eq!(r[5] == "<0.1", v < 0.1 && r[3] != "Total", "{r:?}");
    }
}

#[test]
fn clear_sky_has_no_weather_loss() {
    let (_, rows) = csv_rows(&stdout(&["budget", "--weather", "clear"]));
    let weather: Vec<_> = rows.iter().filter(|r| ["Rain", "Fog", "Cloud"].contains(&r[3].as_str())).collect();
    assert_eq!(weather.len(), 9);
    assert!(weather.iter().all(|r| r[4].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn capacity_sweep_is_one_wide_table_with_thz_on_top() {
    let (header, rows) = csv_rows(&stdout(&["capacity", "--weather-sweep"]));
    assert_eq!(rows.len(), 3);
    for w in ["clear", "rain", "fog"] {
        let col = header
            .iter()
            .position(|h| *h == format!("{w}_spectral_efficiency_bps_hz"))
            .unwrap_or_else(|| panic!("no {w} column in {header:?}"));
        let best = rows
            .iter()
            .max_by(|a, b| a[col].parse::<f64>().unwrap().total_cmp(&b[col].parse().unwrap()))
            .unwrap();
        assert_eq!(best[0], "THz", "{w}");
    }
    let doc: Value = serde_json::from_str(&stdout(&["capacity", "--weather-sweep", "--format", "json"])).unwrap();
    assert!(doc["best_band"].as_object().unwrap().values().all(|b| b == "THz"));
}

#[test]
fn layers_put_rain_loss_in_the_troposphere() {
    let (header, rows) = csv_rows(&stdout(&["layers", "--weather", "rain"]));
    assert_eq!(header, ["band", "weather", "layer", "loss_db", "share_percent"]);
    let tropo: Vec<f64> = rows
        .iter()
        .filter(|r| r[2] == "Troposphere")
        .map(|r| r[4].parse().unwrap())
        .collect();
    assert_eq!(tropo.len(), 3);
    assert!(tropo.iter().all(|s| *s > 79.0), "{tropo:?}");
}

#[test]
fn fmcw_papr_is_zero() {
    let (_, rows) = csv_rows(&stdout(&["waveform", "--spec", "waveforms/fmcw_papr.json"]));
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[0] == "FMCW" && r[2].parse::<f64>().unwrap().abs() < 1e-9));
}

#[test]
fn compare_reports_dft_spreading_first() {
    let doc: Value = serde_json::from_str(&stdout(&[
        "waveform",
        "--spec",
        "waveforms/dfts_vs_ofdm.json",
        "--metric",
        "compare",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(doc["ordering_by_p99"], serde_json::json!(["DFTS_OFDM", "OFDM"]));
    assert!(doc["p99_margin_db"].as_f64().unwrap() >= 2.0);

    let no_reference = sagin(&["waveform", "--spec", "waveforms/ofdm_papr.json", "--metric", "compare"]);
    assert_eq!(no_reference.status.code(), Some(2));
}

#[test]
fn ambiguity_writes_matrix_and_peak_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("amb.csv");
    let o = out.to_str().unwrap();
    stdout(&["waveform", "--spec", "waveforms/otfs_echo.json", "--metric", "ambiguity", "--out", o]);
    let (header, rows) = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(header[0], "doppler_hz\\delay_s");
    assert_eq!(header.len(), 1 + 13);
    assert_eq!(rows.len(), 13);
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(format!("{o}.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["peak"]["delay_index"], 7);
    assert_eq!(meta["peak"]["doppler_index"], 9);
    assert_eq!(meta["echo"]["within_one_cell"], true);
}

#[test]
fn output_is_deterministic_and_lf_only() {
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        &["budget", "--weather-sweep"][..],
        &["capacity", "--weather-sweep", "--format", "json"],
        &["xsection", "--species", "fog"],
        &["waveform", "--spec", "waveforms/afdm_papr.json"],
    ];
    for args in runs {
        let mut outputs = vec![];
        for jobs in ["1", "3"] {
            let path = dir.path().join(format!("out-{jobs}"));
            let mut full = args.to_vec();
            full.extend(["--jobs", jobs, "--out", path.to_str().unwrap()]);
            stdout(&full);
            outputs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
        assert!(!outputs[0].contains(&b'\r'), "{args:?}");
        assert!(outputs[0].ends_with(b"\n"));
    }
    let a = stdout(&["waveform", "--spec", "waveforms/afdm_papr.json", "--seed", "1"]);
    let b = stdout(&["waveform", "--spec", "waveforms/afdm_papr.json", "--seed", "2"]);
    assert_ne!(a, b);
}

#[test]
fn csv_headers_carry_units() {
    let unitless = ["band", "weather", "factor", "flag", "regime", "layer", "family", "percentile", "alpha"];
    for args in [
        &["xsection"][..],
        &["budget"],
        &["capacity"],
        &["layers"],
        &["waveform", "--spec", "waveforms/fmcw_papr.json"],
    ] {
        let text = stdout(args);
        let (header, _) = csv_rows(&text);
        for h in header {
            let has_unit = ["_hz", "_m", "_m2", "_db", "_bps", "_bps_hz", "_percent", "_s"]
                .iter()
                .any(|u| h.ends_with(u));
            assert!(has_unit || unitless.contains(&h.as_str()) || h == "q_ext", "{args:?}: {h}");
        }
    }
}

#[test]
fn scenario_output_format_is_the_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), |v| v["output"] = serde_json::json!({"format": "json"}));
    let text = stdout(&["budget", "--scenario", path.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["kind"], "budget");
    let csv = stdout(&["budget", "--scenario", path.to_str().unwrap(), "--format", "csv"]);
    assert!(csv.starts_with("band,"));
}

#[test]
fn scenario_output_path_is_used_without_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("layers.csv");
    let path = write_scenario(dir.path(), |v| {
        v["output"] = serde_json::json!({"format": "csv", "path": target.to_str().unwrap()})
    });
    let printed = stdout(&["layers", "--scenario", path.to_str().unwrap()]);
    assert!(printed.is_empty());
    assert!(std::fs::read_to_string(&target).unwrap().starts_with("band,weather,layer"));
}

//! Shipped inputs and emitted JSON validate against the shipped schemas.

use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::{json, Value};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn read_json(rel: &str) -> Value {
    let text = std::fs::read_to_string(crate_dir().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn schema(name: &str) -> JSONSchema {
    let doc = read_json(&format!("schema/{name}.schema.json"));
    JSONSchema::compile(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(schema: &JSONSchema, doc: &Value, what: &str) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what} does not validate:\n{}", msgs.join("\n"));
    }
}

fn sagin_json(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_sagin"))
        .args(args)
        .args(["--format", "json"])
        .current_dir(crate_dir())
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn default_scenario_validates() {
    let s = schema("scenario");
    assert_valid(&s, &read_json("scenarios/default.json"), "default scenario");
}

#[test]
fn scenario_schema_rejects_what_the_loader_rejects() {
    let s = schema("scenario");
    let base = read_json("scenarios/default.json");
    let mutations: [(&str, fn(&mut Value)); 4] = [
        ("string bandwidth", |v| v["bands"][0]["bandwidth_hz"] = json!("wide")),
        ("unknown field", |v| v["geometry"]["azimuth_deg"] = json!(1.0)),
        ("no bands", |v| v["bands"] = json!([])),
        ("unknown weather", |v| v["weather"] = json!({"kind": "hail"})),
    ];
    for (what, mutate) in mutations {
        let mut doc = base.clone();
        mutate(&mut doc);
        assert!(!s.is_valid(&doc), "{what} accepted by the schema");
        assert!(
            sagin_core::scenario::Scenario::from_json(&doc.to_string()).is_err(),
            "{what} accepted by the loader"
        );
    }
}

#[test]
fn shipped_waveform_specs_validate() {
    let s = schema("waveform-spec");
    let dir = crate_dir().join("waveforms");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_valid(&s, &doc, &path.display().to_string());
        seen += 1;
    }
    assert!(seen >= 5);
    assert!(!s.is_valid(&json!({"version": "1.0", "waveform": {"family": "CDMA", "len": 4}})));
    assert!(!s.is_valid(&json!({"version": "1.0", "waveform": {"family": "OTFS", "delay_bins": 4}})));
}

#[test]
fn link_outputs_validate() {
    for (name, args) in [
        ("xsection", &["xsection"][..]),
        ("budget", &["budget", "--weather-sweep"]),
        ("capacity", &["capacity", "--weather-sweep"]),
        ("capacity", &["capacity"]),
        ("layers", &["layers", "--weather-sweep"]),
    ] {
        assert_valid(&schema(name), &sagin_json(args), &format!("{args:?}"));
    }
    let mut broken = sagin_json(&["budget"]);
    broken["breakdowns"][0]["total_db"] = json!("lots");
    assert!(!schema("budget").is_valid(&broken));
}

#[test]
fn waveform_outputs_validate() {
    let s = schema("waveform-output");
    for args in [
        &["waveform", "--spec", "waveforms/fmcw_papr.json"][..],
        &["waveform", "--spec", "waveforms/dfts_vs_ofdm.json", "--metric", "compare"],
        &["waveform", "--spec", "waveforms/otfs_echo.json", "--metric", "ambiguity"],
        &["waveform", "--spec", "waveforms/fmcw_ambiguity.json", "--metric", "ambiguity"],
    ] {
        assert_valid(&s, &sagin_json(args), &format!("{args:?}"));
    }

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("amb.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_sagin"))
        .args(["waveform", "--spec", "waveforms/otfs_echo.json", "--metric", "ambiguity", "--out"])
        .arg(&out)
        .current_dir(crate_dir())
        .status()
        .unwrap();
    assert!(status.success());
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{}.meta.json", out.display())).unwrap()).unwrap();
    assert_valid(&s, &meta, "ambiguity sidecar");
    assert!(!s.is_valid(&json!({"kind": "waveform", "metric": "papr"})));
}

//! Tables and JSON documents emitted by the scenario commands.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::{CliError, XsectionArgs};
use crate::atmosphere::{WeatherCondition, WeatherKind};
use crate::constants::SPEED_OF_LIGHT;
use crate::linkbudget::{
    capacity as band_capacity, layer_shares, AttenuationBreakdown, Capacity, Factor, MediumLayer,
    SUB_THRESHOLD_DB,
};
use crate::scattering::{regime, size_parameter, ExtinctionModel, RefractiveIndexModel, Species};
use crate::scenario::{OutputFormat, Scenario, SCENARIO_VERSION};

/// Marker for factors below the reporting threshold.
pub const SUB_THRESHOLD_FLAG: &str = "<0.1";

pub(crate) fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Usage(format!("CSV encoding failed: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("CSV encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub(crate) fn json_doc<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
    s.push('\n');
    s
}

fn num(v: f64) -> String {
    format!("{v}")
}

// ---------------------------------------------------------------- xsection

#[derive(Serialize)]
struct XsectionRow {
    frequency_hz: f64,
    radius_m: f64,
    alpha: f64,
    regime: &'static str,
    q_ext: f64,
    sigma_ext_m2: f64,
}

#[derive(Serialize)]
struct XsectionDoc {
    kind: &'static str,
    species: Species,
    rows: Vec<XsectionRow>,
}

fn index_model(scenario: &Scenario, species: Species) -> RefractiveIndexModel {
    let p = &scenario.populations;
    let hydro = |m: &Option<crate::linkbudget::HydrometeorModel>| m.as_ref().map(|h| h.refractive_index);
    match species {
        Species::Rain => hydro(&p.rain),
        Species::Fog => hydro(&p.fog),
        Species::Cloud => hydro(&p.cloud),
        Species::Aerosol => p.aerosol.as_ref().map(|a| a.refractive_index),
    }
    .unwrap_or_default()
}

pub(crate) fn xsection(scenario: &Scenario, a: &XsectionArgs, fmt: OutputFormat) -> Result<String, CliError> {
    if a.frequencies_hz.is_empty() || a.radii_m.is_empty() {
        return Err(CliError::Usage("xsection needs at least one frequency and one radius".into()));
    }
    let model = index_model(scenario, a.species);
    let ext = ExtinctionModel::default();
    let mut rows = Vec::with_capacity(a.frequencies_hz.len() * a.radii_m.len());
    for &f in &a.frequencies_hz {
        let m: Complex64 = model.index(f)?;
        let lambda = SPEED_OF_LIGHT / f;
        for &r in &a.radii_m {
            let alpha = size_parameter(r, lambda)?;
            let q = ext.efficiencies(alpha, m).map_err(CliError::from)?;
            let res = q.with_radius(r);
            rows.push(XsectionRow {
                frequency_hz: f,
                radius_m: r,
                alpha,
                regime: regime(alpha).name(),
                q_ext: res.q_ext,
                sigma_ext_m2: res.sigma_ext,
            });
        }
    }
    match fmt {
        OutputFormat::Json => Ok(json_doc(&XsectionDoc {
            kind: "xsection",
            species: a.species,
            rows,
        })),
        OutputFormat::Csv => csv_table(
            &["frequency_hz", "radius_m", "alpha", "regime", "q_ext", "sigma_ext_m2"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.frequency_hz),
                        num(r.radius_m),
                        num(r.alpha),
                        r.regime.to_string(),
                        num(r.q_ext),
                        num(r.sigma_ext_m2),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

// ------------------------------------------------------------------ budget

#[derive(Serialize)]
struct FactorEntry {
    factor: Factor,
    loss_db: f64,
    below_threshold: bool,
}

#[derive(Serialize)]
struct LayerEntry {
    layer: MediumLayer,
    loss_db: f64,
    /// Percent of medium-induced loss; absent when there is none.
    share_percent: Option<f64>,
}

#[derive(Serialize)]
struct BreakdownEntry {
    band: &'static str,
    carrier_frequency_hz: f64,
    weather: WeatherKind,
    path_length_km: f64,
    total_db: f64,
    medium_loss_db: f64,
    factors: Vec<FactorEntry>,
    layers: Vec<LayerEntry>,
}

#[derive(Serialize)]
struct BudgetDoc {
    kind: &'static str,
    scenario_version: &'static str,
    sub_threshold_db: f64,
    breakdowns: Vec<BreakdownEntry>,
}

fn entry(b: &AttenuationBreakdown) -> BreakdownEntry {
    let shares = layer_shares(b).ok();
    BreakdownEntry {
        band: b.band.name(),
        carrier_frequency_hz: b.carrier_frequency_hz,
        weather: b.weather,
        path_length_km: b.path_length_km,
        total_db: b.total_db,
        medium_loss_db: b.medium_loss_db(),
        factors: Factor::ALL
            .iter()
            .map(|&f| FactorEntry {
                factor: f,
                loss_db: b.factor(f),
                below_threshold: b.sub_threshold.contains(&f),
            })
            .collect(),
        layers: MediumLayer::ALL
            .iter()
            .map(|&l| LayerEntry {
                layer: l,
                loss_db: b.per_layer.get(&l).copied().unwrap_or(0.0),
                share_percent: shares.as_ref().map(|s| s.get(&l).copied().unwrap_or(0.0)),
            })
            .collect(),
    }
}

fn breakdowns(scenario: &Scenario, weathers: &[WeatherCondition]) -> Result<Vec<AttenuationBreakdown>, CliError> {
    let mut all = Vec::new();
    for w in weathers {
        all.extend(scenario.budgets(w)?);
    }
    Ok(all)
}

pub(crate) fn budget(scenario: &Scenario, weathers: &[WeatherCondition], fmt: OutputFormat) -> Result<String, CliError> {
    let all = breakdowns(scenario, weathers)?;
    match fmt {
        OutputFormat::Json => Ok(json_doc(&BudgetDoc {
            kind: "budget",
            scenario_version: SCENARIO_VERSION,
            sub_threshold_db: SUB_THRESHOLD_DB,
            breakdowns: all.iter().map(entry).collect(),
        })),
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            for b in &all {
                let head = [b.band.name().to_string(), num(b.carrier_frequency_hz), b.weather.name().to_string()];
                for f in Factor::ALL {
                    let flag = if b.sub_threshold.contains(&f) { SUB_THRESHOLD_FLAG } else { "" };
                    let mut r = head.to_vec();
                    r.extend([f.name().to_string(), num(b.factor(f)), flag.to_string()]);
                    rows.push(r);
                }
                let mut r = head.to_vec();
                r.extend(["Total".to_string(), num(b.total_db), String::new()]);
                rows.push(r);
            }
            csv_table(&["band", "carrier_frequency_hz", "weather", "factor", "loss_db", "flag"], &rows)
        }
    }
}

// ---------------------------------------------------------------- capacity

#[derive(Serialize)]
struct CapacityEntry {
    band: &'static str,
    weather: WeatherKind,
    snr_db: f64,
    capacity_bps: f64,
    spectral_efficiency_bps_hz: f64,
}

#[derive(Serialize)]
struct CapacityDoc {
    kind: &'static str,
    scenario_version: &'static str,
    rows: Vec<CapacityEntry>,
    /// Band with the highest spectral efficiency under each weather.
    best_band: BTreeMap<WeatherKind, &'static str>,
}

pub(crate) fn capacity(
    scenario: &Scenario,
    weathers: &[WeatherCondition],
    wide: bool,
    fmt: OutputFormat,
) -> Result<String, CliError> {
    let all = breakdowns(scenario, weathers)?;
    let caps: Vec<Capacity> = all
        .iter()
        .map(|b| {
            let band = scenario.bands.iter().find(|c| c.label == b.band).expect("breakdown of a configured band");
            band_capacity(b, band)
        })
        .collect::<crate::Result<_>>()?;
    let mut best: BTreeMap<WeatherKind, &Capacity> = BTreeMap::new();
    for c in &caps {
        let slot = best.entry(c.weather).or_insert(c);
        if c.spectral_efficiency_bps_hz > slot.spectral_efficiency_bps_hz {
            *slot = c;
        }
    }
    match fmt {
        OutputFormat::Json => Ok(json_doc(&CapacityDoc {
            kind: "capacity",
            scenario_version: SCENARIO_VERSION,
            rows: caps
                .iter()
                .map(|c| CapacityEntry {
                    band: c.band.name(),
                    weather: c.weather,
                    snr_db: c.snr_db,
                    capacity_bps: c.bits_per_s,
                    spectral_efficiency_bps_hz: c.spectral_efficiency_bps_hz,
                })
                .collect(),
            best_band: best.iter().map(|(w, c)| (*w, c.band.name())).collect(),
        })),
        OutputFormat::Csv if wide => {
            // One row per band, one column group per weather.
            let mut header = vec!["band".to_string()];
            for w in weathers {
                let n = w.kind().name();
                header.extend([
                    format!("{n}_snr_db"),
                    format!("{n}_capacity_bps"),
                    format!("{n}_spectral_efficiency_bps_hz"),
                ]);
            }
            let rows: Vec<Vec<String>> = scenario
                .bands
                .iter()
                .map(|band| {
                    let mut r = vec![band.label.name().to_string()];
                    for c in caps.iter().filter(|c| c.band == band.label) {
                        r.extend([num(c.snr_db), num(c.bits_per_s), num(c.spectral_efficiency_bps_hz)]);
                    }
                    r
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_table(&header, &rows)
        }
        OutputFormat::Csv => csv_table(
            &["band", "weather", "snr_db", "capacity_bps", "spectral_efficiency_bps_hz"],
            &caps
                .iter()
                .map(|c| {
                    vec![
                        c.band.name().to_string(),
                        c.weather.name().to_string(),
                        num(c.snr_db),
                        num(c.bits_per_s),
                        num(c.spectral_efficiency_bps_hz),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

// ------------------------------------------------------------------ layers

#[derive(Serialize)]
struct LayersRow {
    band: &'static str,
    weather: WeatherKind,
    layer: MediumLayer,
    loss_db: f64,
    share_percent: Option<f64>,
}

#[derive(Serialize)]
struct LayersDoc {
    kind: &'static str,
    scenario_version: &'static str,
    rows: Vec<LayersRow>,
}

pub(crate) fn layers(scenario: &Scenario, weathers: &[WeatherCondition], fmt: OutputFormat) -> Result<String, CliError> {
    let all = breakdowns(scenario, weathers)?;
    let rows: Vec<LayersRow> = all
        .iter()
        .flat_map(|b| {
            entry(b).layers.into_iter().map(move |l| LayersRow {
                band: b.band.name(),
                weather: b.weather,
                layer: l.layer,
                loss_db: l.loss_db,
                share_percent: l.share_percent,
            })
        })
        .collect();
    match fmt {
        OutputFormat::Json => Ok(json_doc(&LayersDoc {
            kind: "layers",
            scenario_version: SCENARIO_VERSION,
            rows,
        })),
        OutputFormat::Csv => csv_table(
            &["band", "weather", "layer", "loss_db", "share_percent"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.band.to_string(),
                        r.weather.name().to_string(),
                        r.layer.name().to_string(),
                        num(r.loss_db),
                        r.share_percent.map(num).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }
}

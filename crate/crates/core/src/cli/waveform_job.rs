//! Waveform spec files and the `waveform` command.

use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::report::{csv_table, json_doc};
use super::{CliError, Rendered};
use crate::error::config;
use crate::scenario::OutputFormat;
use crate::waveform::{
    ambiguity, cross_ambiguity, papr_samples, percentile, AmbiguitySurface, PaprExperiment, PaprStats,
    PeakCell, WaveformFamily, WaveformFrame, WaveformSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WaveformMetric {
    /// PAPR percentiles of `waveform`.
    Papr,
    /// Ambiguity surface of `waveform`, or cross-ambiguity against an echo.
    Ambiguity,
    /// Paired PAPR run of `waveform` and `reference` on the same seeds.
    Compare,
}

fn one_hz() -> f64 {
    1.0
}
fn default_frames() -> usize {
    10_000
}
fn default_oversampling() -> usize {
    4
}
fn default_percentiles() -> Vec<f64> {
    vec![50.0, 90.0, 99.0, 99.9]
}
fn unit_gain() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaprSettings {
    #[serde(default = "default_frames")]
    pub frames: usize,
    #[serde(default = "default_oversampling")]
    pub oversampling: usize,
    #[serde(default = "default_percentiles")]
    pub percentiles: Vec<f64>,
}

impl Default for PaprSettings {
    fn default() -> Self {
        Self {
            frames: default_frames(),
            oversampling: default_oversampling(),
            percentiles: default_percentiles(),
        }
    }
}

/// A delayed, Doppler-shifted copy of the frame plus white noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EchoSpec {
    pub delay_s: f64,
    pub doppler_hz: f64,
    /// Per-sample SNR; noiseless when absent.
    #[serde(default)]
    pub snr_db: Option<f64>,
    #[serde(default = "unit_gain")]
    pub gain: f64,
}

/// Integer grid in samples (delay) and Doppler cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbiguityGrid {
    /// Inclusive range of delays in samples.
    pub delay_bins: [i64; 2],
    /// Inclusive range of Doppler cells.
    pub doppler_bins: [i64; 2],
    /// Doppler cell width; one over the frame duration when absent.
    #[serde(default)]
    pub doppler_step_hz: Option<f64>,
    #[serde(default)]
    pub echo: Option<EchoSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformJob {
    pub version: String,
    #[serde(default = "one_hz")]
    pub sample_rate_hz: f64,
    pub waveform: WaveformSpec,
    #[serde(default)]
    pub reference: Option<WaveformSpec>,
    #[serde(default)]
    pub papr: PaprSettings,
    #[serde(default)]
    pub ambiguity: Option<AmbiguityGrid>,
}

impl WaveformJob {
    pub fn from_json(text: &str) -> crate::Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let job: WaveformJob = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config(format!("waveform spec field `{path}`: {}", e.into_inner()))
        })?;
        if job.version.split('.').next() != Some("1") {
            return Err(config(format!("waveform spec field `version`: unsupported version {:?}", job.version)));
        }
        if !(job.sample_rate_hz.is_finite() && job.sample_rate_hz > 0.0) {
            return Err(config("waveform spec field `sample_rate_hz`: must be > 0"));
        }
        if job.papr.frames == 0 || job.papr.oversampling == 0 {
            return Err(config("waveform spec field `papr`: frames and oversampling must be >= 1"));
        }
        if let Some(p) = job.papr.percentiles.iter().find(|p| !(0.0..=100.0).contains(*p)) {
            return Err(config(format!("waveform spec field `papr.percentiles`: {p} is not in [0, 100]")));
        }
        Ok(job)
    }

    pub fn load(path: &Path) -> crate::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config(format!("cannot read waveform spec {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn experiment(&self, spec: &WaveformSpec, seed: u64) -> PaprExperiment {
        // A chirp is deterministic; one frame says everything.
        let frames = if spec.family() == WaveformFamily::Fmcw { 1 } else { self.papr.frames };
        PaprExperiment {
            waveform: spec.clone(),
            sample_rate_hz: self.sample_rate_hz,
            oversampling: self.papr.oversampling,
            frames,
            seed,
        }
    }
}

#[derive(Serialize)]
struct PercentileEntry {
    percentile: f64,
    papr_db: f64,
}

#[derive(Serialize)]
struct PaprResult {
    family: WaveformFamily,
    stats: PaprStats,
    percentiles: Vec<PercentileEntry>,
}

#[derive(Serialize)]
struct PaprDoc {
    kind: &'static str,
    metric: WaveformMetric,
    seed: u64,
    oversampling: usize,
    results: Vec<PaprResult>,
    /// Families from lowest to highest 99th-percentile PAPR.
    #[serde(skip_serializing_if = "Option::is_none")]
    ordering_by_p99: Option<Vec<WaveformFamily>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p99_margin_db: Option<f64>,
}

#[derive(Serialize)]
struct EchoReport {
    delay_s: f64,
    doppler_hz: f64,
    snr_db: Option<f64>,
    delay_cell_error: f64,
    doppler_cell_error: f64,
    within_one_cell: bool,
}

#[derive(Serialize)]
struct AmbiguityMeta {
    kind: &'static str,
    metric: WaveformMetric,
    family: WaveformFamily,
    seed: u64,
    sample_rate_hz: f64,
    doppler_step_hz: f64,
    peak: PeakCell,
    #[serde(skip_serializing_if = "Option::is_none")]
    echo: Option<EchoReport>,
}

#[derive(Serialize)]
struct AmbiguityDoc<'a> {
    #[serde(flatten)]
    meta: &'a AmbiguityMeta,
    #[serde(flatten)]
    surface: &'a AmbiguitySurface,
}

fn papr_result(exp: &PaprExperiment, wanted: &[f64]) -> crate::Result<PaprResult> {
    let samples = papr_samples(exp)?;
    Ok(PaprResult {
        family: exp.waveform.family(),
        stats: PaprStats::from_samples(&samples),
        percentiles: wanted
            .iter()
            .map(|&p| PercentileEntry {
                percentile: p,
                papr_db: percentile(&samples, p),
            })
            .collect(),
    })
}

fn echo_of(frame: &WaveformFrame, echo: &EchoSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Complex64>, CliError> {
    let fs = frame.sample_rate_hz;
    let d = echo.delay_s * fs;
    if !(d >= 0.0 && (d - d.round()).abs() < 1e-6) {
        return Err(CliError::Input(config(format!(
            "waveform spec field `ambiguity.echo.delay_s`: {} s is not a whole, non-negative number of samples",
            echo.delay_s
        ))));
    }
    let d = d.round() as usize;
    let mut rx = vec![Complex64::new(0.0, 0.0); frame.samples.len() + d];
    for (i, s) in frame.samples.iter().enumerate() {
        let n = i + d;
        rx[n] += echo.gain * s * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * echo.doppler_hz * n as f64 / fs);
    }
    if let Some(snr) = echo.snr_db {
        let signal = echo.gain * echo.gain * frame.energy() / frame.samples.len() as f64;
        let sigma = (signal / 10f64.powf(snr / 10.0) / 2.0).sqrt();
        for r in rx.iter_mut() {
            let (a, b): (f64, f64) = (StandardNormal.sample(rng), StandardNormal.sample(rng));
            *r += Complex64::new(a, b) * sigma;
        }
    }
    Ok(rx)
}

fn ambiguity_run(job: &WaveformJob, seed: u64) -> Result<(AmbiguityMeta, AmbiguitySurface), CliError> {
    let grid = job.ambiguity.as_ref().ok_or_else(|| {
        CliError::Usage("metric `ambiguity` needs an `ambiguity` section in the waveform spec".into())
    })?;
    let [d0, d1] = grid.delay_bins;
    let [k0, k1] = grid.doppler_bins;
    if d0 > d1 || k0 > k1 {
        return Err(CliError::Input(config("waveform spec field `ambiguity`: bin ranges must be [low, high]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frame = job.waveform.random_frame(&mut rng, job.sample_rate_hz)?;
    let fs = frame.sample_rate_hz;
    let step = grid.doppler_step_hz.unwrap_or(fs / frame.samples.len() as f64);
    if !(step.is_finite() && step > 0.0) {
        return Err(CliError::Input(config("waveform spec field `ambiguity.doppler_step_hz`: must be > 0")));
    }
    let delays: Vec<f64> = (d0..=d1).map(|k| k as f64 / fs).collect();
    let dopplers: Vec<f64> = (k0..=k1).map(|k| k as f64 * step).collect();
    let (surface, echo) = match &grid.echo {
        None => (ambiguity(&frame, &delays, &dopplers)?, None),
        Some(e) => {
            rng.set_stream(1);
            let rx = echo_of(&frame, e, &mut rng)?;
            (cross_ambiguity(&frame, &rx, &delays, &dopplers)?, Some(e))
        }
    };
    let peak = surface.peak();
    let echo = echo.map(|e| {
        let dc = (peak.delay_s - e.delay_s) * fs;
        let nc = (peak.doppler_hz - e.doppler_hz) / step;
        EchoReport {
            delay_s: e.delay_s,
            doppler_hz: e.doppler_hz,
            snr_db: e.snr_db,
            delay_cell_error: dc,
            doppler_cell_error: nc,
            within_one_cell: dc.abs() <= 1.0 + 1e-9 && nc.abs() <= 1.0 + 1e-9,
        }
    });
    Ok((
        AmbiguityMeta {
            kind: "waveform",
            metric: WaveformMetric::Ambiguity,
            family: frame.family,
            seed,
            sample_rate_hz: fs,
            doppler_step_hz: step,
            peak,
            echo,
        },
        surface,
    ))
}

fn stats_csv(results: &[PaprResult]) -> Result<String, CliError> {
    csv_table(
        &["family", "frames", "mean_db", "median_db", "p90_db", "p99_db", "p999_db", "max_db"],
        &results
            .iter()
            .map(|r| {
                let s = &r.stats;
                vec![
                    r.family.name().to_string(),
                    s.frames.to_string(),
                    format!("{}", s.mean_db),
                    format!("{}", s.median_db),
                    format!("{}", s.p90_db),
                    format!("{}", s.p99_db),
                    format!("{}", s.p999_db),
                    format!("{}", s.max_db),
                ]
            })
            .collect::<Vec<_>>(),
    )
}

pub(crate) fn render(
    job: &WaveformJob,
    metric: WaveformMetric,
    seed: u64,
    fmt: OutputFormat,
    out: Option<&Path>,
) -> Result<Rendered, CliError> {
    let plain = |body| Rendered {
        body,
        sidecar: None,
        fallback_out: None,
    };
    match metric {
        WaveformMetric::Papr => {
            let r = papr_result(&job.experiment(&job.waveform, seed), &job.papr.percentiles)?;
            Ok(plain(match fmt {
                OutputFormat::Json => json_doc(&PaprDoc {
                    kind: "waveform",
                    metric,
                    seed,
                    oversampling: job.papr.oversampling,
                    results: vec![r],
                    ordering_by_p99: None,
                    p99_margin_db: None,
                }),
                OutputFormat::Csv => csv_table(
                    &["family", "percentile", "papr_db"],
                    &r.percentiles
                        .iter()
                        .map(|p| vec![r.family.name().to_string(), format!("{}", p.percentile), format!("{}", p.papr_db)])
                        .collect::<Vec<_>>(),
                )?,
            }))
        }
        WaveformMetric::Compare => {
            let reference = job.reference.as_ref().ok_or_else(|| {
                CliError::Usage("metric `compare` needs a `reference` waveform in the spec".into())
            })?;
            let results = [&job.waveform, reference]
                .iter()
                .map(|s| papr_result(&job.experiment(s, seed), &job.papr.percentiles))
                .collect::<crate::Result<Vec<_>>>()?;
            let mut order: Vec<&PaprResult> = results.iter().collect();
            order.sort_by(|a, b| a.stats.p99_db.total_cmp(&b.stats.p99_db));
            let margin = order[order.len() - 1].stats.p99_db - order[0].stats.p99_db;
            let ordering = order.iter().map(|r| r.family).collect();
            Ok(plain(match fmt {
                OutputFormat::Json => json_doc(&PaprDoc {
                    kind: "waveform",
                    metric,
                    seed,
                    oversampling: job.papr.oversampling,
                    ordering_by_p99: Some(ordering),
                    p99_margin_db: Some(margin),
                    results,
                }),
                OutputFormat::Csv => stats_csv(&results)?,
            }))
        }
        WaveformMetric::Ambiguity => {
            let (meta, surface) = ambiguity_run(job, seed)?;
            match fmt {
                OutputFormat::Json => Ok(plain(json_doc(&AmbiguityDoc {
                    meta: &meta,
                    surface: &surface,
                }))),
                OutputFormat::Csv => {
                    let mut header = vec!["doppler_hz\\delay_s".to_string()];
                    header.extend(surface.delay_axis_s.iter().map(|d| format!("{d}")));
                    let rows: Vec<Vec<String>> = surface
                        .doppler_axis_hz
                        .iter()
                        .zip(&surface.magnitude)
                        .map(|(nu, row)| std::iter::once(format!("{nu}")).chain(row.iter().map(|v| format!("{v}"))).collect())
                        .collect();
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    let sidecar_name = match out {
                        Some(p) => format!("{}.meta.json", p.display()),
                        None => String::new(),
                    };
                    Ok(Rendered {
                        body: csv_table(&header, &rows)?,
                        sidecar: Some((sidecar_name, json_doc(&meta))),
                        fallback_out: None,
                    })
                }
            }
        }
    }
}

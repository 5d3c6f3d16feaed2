//! Parameter sweeps over `(alpha, eta)`, named presets, and CSV/JSON output.
//!
//! Records come back in grid order (alpha outer, eta inner) no matter how
//! the points were scheduled, so every output is byte-reproducible.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{Map, Number, Value};

use crate::channels::{
    bell_asym_density, bell_sym_density, sym_density_matrix, BellMixture, EcsDensitySym,
    LossChannel,
};
use crate::entanglement::{
    bell_concurrence, bell_fraction, bell_negativity, concurrence_sym_closed, eof_from_concurrence,
    eof_lower_bound, fraction_asym_max, fraction_sym_closed, negativity,
    negativity_from_eigenvalues, pt_eigenvalues, pt_eigenvalues_closed, teleport_fidelity,
    wootters_concurrence,
};
use crate::error::{EcsError, Result};
use crate::fock::{FockConfig, FockOracle};

/// Small-amplitude stand-in for `alpha -> 0`.
pub const ALPHA_SMALL_PROXY: f64 = 1e-3;
/// Large-amplitude stand-in for `alpha -> infinity`.
pub const ALPHA_LARGE_PROXY: f64 = 6.0;
pub const DEFAULT_TOL: f64 = 1e-8;
const SIG_DIGITS: usize = 12;

/// One sweep axis: an inclusive evenly spaced range or an explicit list.
#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Range { start: f64, stop: f64, steps: usize },
    Values(Vec<f64>),
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::Range { start, stop, steps } => {
                if *steps == 1 {
                    return vec![*start];
                }
                let span = stop - start;
                let last = (*steps - 1) as f64;
                (0..*steps)
                    .map(|k| start + span * k as f64 / last)
                    .collect()
            }
            Axis::Values(v) => v.clone(),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let ok = match self {
            Axis::Range { start, stop, steps } => {
                *steps >= 1 && start.is_finite() && stop.is_finite()
            }
            Axis::Values(v) => !v.is_empty() && v.iter().all(|x| x.is_finite()),
        };
        if ok {
            Ok(())
        } else {
            Err(EcsError::Config(format!(
                "{name} axis must be non-empty and finite"
            )))
        }
    }
}

impl FromStr for Axis {
    type Err = EcsError;

    /// `start:stop:steps`, or a comma-separated list of values.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| EcsError::Config(format!("{t:?} is not a number")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, stop, steps] => {
                let steps: usize = steps
                    .trim()
                    .parse()
                    .map_err(|_| EcsError::Config(format!("{steps:?} is not a step count")))?;
                if steps == 0 {
                    return Err(EcsError::Config("a range needs at least one step".into()));
                }
                Ok(Axis::Range {
                    start: num(start)?,
                    stop: num(stop)?,
                    steps,
                })
            }
            [list] => list
                .split(',')
                .map(num)
                .collect::<Result<Vec<_>>>()
                .map(Axis::Values),
            _ => Err(EcsError::Config(format!(
                "{s:?}: expected start:stop:steps or a,b,c"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    /// Loss on mode 2 only.
    Asymmetric,
    /// Equal loss on both modes.
    Symmetric,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::Asymmetric => "asym",
            Channel::Symmetric => "sym",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = EcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asym" | "asymmetric" => Ok(Channel::Asymmetric),
            "sym" | "symmetric" => Ok(Channel::Symmetric),
            _ => Err(EcsError::Config(format!(
                "unknown channel {s:?} (asym or sym)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Fully entangled fraction (entanglement fidelity) over ECS probes.
    Fraction,
    /// Entanglement-of-formation lower bound from the fraction.
    EofBound,
    Concurrence,
    Eof,
    Negativity,
    /// Smallest eigenvalue of the partial transpose.
    PtMinEig,
    TeleportFidelity,
    /// Entanglement carried by the environment: the EOF bound of the
    /// (mode 1, E) pair for the asymmetric channel, the EOF of (E1, E2)
    /// for the symmetric one.
    EnvEntanglement,
    BellFraction,
    BellConcurrence,
    BellEof,
    BellNegativity,
}

impl Measure {
    pub const ALL: [Measure; 12] = [
        Measure::Fraction,
        Measure::EofBound,
        Measure::Concurrence,
        Measure::Eof,
        Measure::Negativity,
        Measure::PtMinEig,
        Measure::TeleportFidelity,
        Measure::EnvEntanglement,
        Measure::BellFraction,
        Measure::BellConcurrence,
        Measure::BellEof,
        Measure::BellNegativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Fraction => "fraction",
            Measure::EofBound => "eof_bound",
            Measure::Concurrence => "concurrence",
            Measure::Eof => "eof",
            Measure::Negativity => "negativity",
            Measure::PtMinEig => "pt_min_eig",
            Measure::TeleportFidelity => "teleport_fidelity",
            Measure::EnvEntanglement => "env_entanglement",
            Measure::BellFraction => "bell_fraction",
            Measure::BellConcurrence => "bell_concurrence",
            Measure::BellEof => "bell_eof",
            Measure::BellNegativity => "bell_negativity",
        }
    }

    /// The asymmetric channel has closed forms only for the fraction family.
    pub fn supported_by(self, channel: Channel) -> bool {
        match channel {
            Channel::Symmetric => true,
            Channel::Asymmetric => !matches!(
                self,
                Measure::Concurrence | Measure::Eof | Measure::Negativity | Measure::PtMinEig
            ),
        }
    }

    fn is_bell(self) -> bool {
        matches!(
            self,
            Measure::BellFraction
                | Measure::BellConcurrence
                | Measure::BellEof
                | Measure::BellNegativity
        )
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = EcsError;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| EcsError::Config(format!("unknown measure {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = EcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(EcsError::Config(format!(
                "unknown format {s:?} (csv or json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub channel: Channel,
    pub alpha: Axis,
    pub eta: Axis,
    pub measures: Vec<Measure>,
    /// Recompute every measure that has a Fock-space counterpart.
    pub oracle: bool,
    /// Largest accepted analytic-vs-oracle difference.
    pub tol: f64,
    pub fock: FockConfig,
}

impl SweepConfig {
    pub fn new(channel: Channel, alpha: Axis, eta: Axis, measures: Vec<Measure>) -> Self {
        Self {
            channel,
            alpha,
            eta,
            measures,
            oracle: false,
            tol: DEFAULT_TOL,
            fock: FockConfig::default(),
        }
    }

    pub fn with_oracle(mut self, tol: f64) -> Self {
        self.oracle = true;
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha.validate("alpha")?;
        self.eta.validate("eta")?;
        if let Some(a) = self.alpha.values().into_iter().find(|a| *a < 0.0) {
            return Err(EcsError::Config(format!("alpha = {a} is negative")));
        }
        if let Some(e) = self
            .eta
            .values()
            .into_iter()
            .find(|e| !(0.0..=1.0).contains(e))
        {
            return Err(EcsError::Config(format!("eta = {e} is outside [0, 1]")));
        }
        if !(self.tol > 0.0) {
            return Err(EcsError::Config(format!(
                "tol = {} must be positive",
                self.tol
            )));
        }
        if self.measures.is_empty() {
            return Err(EcsError::Config("no measures requested".into()));
        }
        for (k, m) in self.measures.iter().enumerate() {
            if !m.supported_by(self.channel) {
                return Err(EcsError::Config(format!(
                    "{m} is not available for the {} channel",
                    self.channel
                )));
            }
            if self.measures[..k].contains(m) {
                return Err(EcsError::Config(format!("{m} requested twice")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub alpha: f64,
    pub eta: f64,
    /// One entry per requested measure; `None` where evaluation failed.
    pub values: Vec<Option<f64>>,
    /// Largest |analytic - oracle| over measures with an oracle counterpart.
    pub oracle_delta: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub channel: Channel,
    pub measures: Vec<Measure>,
    pub tol: f64,
    pub oracle: bool,
    pub records: Vec<SweepRecord>,
}

impl SweepOutput {
    pub fn column(&self, m: Measure) -> Option<usize> {
        self.measures.iter().position(|x| *x == m)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| r.failure.is_some())
    }

    pub fn max_delta(&self) -> Option<f64> {
        self.records
            .iter()
            .filter_map(|r| r.oracle_delta)
            .reduce(f64::max)
    }

    /// No failed records, and every oracle delta within `tol`.
    pub fn passes(&self) -> bool {
        self.records
            .iter()
            .all(|r| r.failure.is_none() && r.oracle_delta.is_none_or(|d| d <= self.tol))
    }
}

fn bell_mixture(channel: Channel, loss: &LossChannel) -> BellMixture {
    match channel {
        Channel::Asymmetric => bell_asym_density(loss),
        Channel::Symmetric => bell_sym_density(loss),
    }
}

fn analytic_value(channel: Channel, m: Measure, alpha: f64, eta: f64) -> Result<f64> {
    if m.is_bell() {
        let mixture = bell_mixture(channel, &LossChannel::new(eta)?);
        return match m {
            Measure::BellFraction => Ok(bell_fraction(&mixture)),
            Measure::BellConcurrence => Ok(bell_concurrence(&mixture)?.value()),
            Measure::BellEof => Ok(eof_from_concurrence(bell_concurrence(&mixture)?)),
            _ => bell_negativity(&mixture),
        };
    }
    let fraction = |eta: f64| -> Result<f64> {
        match channel {
            Channel::Asymmetric => Ok(fraction_asym_max(alpha, eta)?.value),
            Channel::Symmetric => Ok(fraction_sym_closed(alpha, eta)?.value),
        }
    };
    match m {
        Measure::Fraction => fraction(eta),
        Measure::EofBound => eof_lower_bound(fraction(eta)?),
        Measure::TeleportFidelity => teleport_fidelity(fraction(eta)?),
        Measure::Concurrence => Ok(concurrence_sym_closed(alpha, eta)?.value()),
        Measure::Eof => Ok(eof_from_concurrence(concurrence_sym_closed(alpha, eta)?)),
        Measure::Negativity | Measure::PtMinEig => {
            let (_, k) = sym_density_matrix(&EcsDensitySym::new(alpha, eta)?)?;
            let eig = pt_eigenvalues_closed(&k);
            Ok(if m == Measure::Negativity {
                negativity_from_eigenvalues(&eig)
            } else {
                eig[0]
            })
        }
        Measure::EnvEntanglement => match channel {
            Channel::Asymmetric => eof_lower_bound(fraction(1.0 - eta)?),
            Channel::Symmetric => Ok(eof_from_concurrence(concurrence_sym_closed(
                alpha,
                1.0 - eta,
            )?)),
        },
        _ => unreachable!("bell measures handled above"),
    }
}

/// Oracle counterparts, in the order of `measures`; `None` for measures the
/// Fock oracle does not model (the polarization Bell baselines).
fn oracle_values(
    channel: Channel,
    measures: &[Measure],
    alpha: f64,
    eta: f64,
    oracle: &mut FockOracle,
) -> Result<Vec<Option<f64>>> {
    let beta_max = 4.0 * alpha;
    let mut fraction = None;
    let mut matrix = None;
    let mut env = None;
    let mut out = Vec::with_capacity(measures.len());
    for &m in measures {
        let v = match m {
            Measure::Fraction | Measure::EofBound | Measure::TeleportFidelity => {
                let f = match fraction {
                    Some(f) => f,
                    None => {
                        let f = match channel {
                            Channel::Asymmetric => {
                                oracle.oracle_asym_fraction(alpha, eta, beta_max)?
                            }
                            Channel::Symmetric => {
                                oracle.oracle_sym_fraction(alpha, eta, beta_max)?
                            }
                        }
                        .value;
                        *fraction.insert(f)
                    }
                };
                Some(match m {
                    Measure::Fraction => f,
                    Measure::EofBound => eof_lower_bound(f.clamp(0.0, 1.0))?,
                    _ => teleport_fidelity(f.clamp(0.0, 1.0))?,
                })
            }
            Measure::Concurrence | Measure::Eof | Measure::Negativity | Measure::PtMinEig => {
                let rho = match &matrix {
                    Some(r) => r,
                    None => matrix.insert(oracle.oracle_sym_matrix(alpha, eta)?),
                };
                Some(match m {
                    Measure::Concurrence => wootters_concurrence(rho)?.value(),
                    Measure::Eof => eof_from_concurrence(wootters_concurrence(rho)?),
                    Measure::Negativity => negativity(rho)?,
                    _ => pt_eigenvalues(rho)?[0],
                })
            }
            Measure::EnvEntanglement => {
                let e = match env {
                    Some(e) => e,
                    None => {
                        let e = match channel {
                            Channel::Asymmetric => {
                                let f =
                                    oracle.oracle_asym_env_fraction(alpha, eta, beta_max)?.value;
                                eof_lower_bound(f.clamp(0.0, 1.0))?
                            }
                            Channel::Symmetric => {
                                eof_from_concurrence(oracle.oracle_env_entanglement(alpha, eta)?)
                            }
                        };
                        *env.insert(e)
                    }
                };
                Some(e)
            }
            _ => None,
        };
        out.push(v);
    }
    Ok(out)
}

fn evaluate_point(cfg: &SweepConfig, alpha: f64, eta: f64, oracle: &mut FockOracle) -> SweepRecord {
    let mut failure = None;
    let values: Vec<Option<f64>> = cfg
        .measures
        .iter()
        .map(|&m| match analytic_value(cfg.channel, m, alpha, eta) {
            Ok(v) => Some(v),
            Err(e) => {
                failure.get_or_insert_with(|| format!("{m}: {e}"));
                None
            }
        })
        .collect();
    let mut oracle_delta = None;
    if cfg.oracle {
        match oracle_values(cfg.channel, &cfg.measures, alpha, eta, oracle) {
            Ok(numeric) => {
                oracle_delta = values
                    .iter()
                    .zip(&numeric)
                    .filter_map(|(a, o)| Some((a.as_ref()? - o.as_ref()?).abs()))
                    .reduce(f64::max);
            }
            Err(e) => {
                failure.get_or_insert_with(|| format!("oracle: {e}"));
            }
        }
    }
    SweepRecord {
        alpha,
        eta,
        values,
        oracle_delta,
        failure,
    }
}

/// Evaluates every grid point, in parallel, returning records in grid order.
/// Each worker owns its own oracle and beam-splitter cache.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let etas = cfg.eta.values();
    let points: Vec<(f64, f64)> = cfg
        .alpha
        .values()
        .into_iter()
        .flat_map(|a| etas.iter().map(move |&e| (a, e)))
        .collect();
    let records = points
        .par_iter()
        .map_init(
            || FockOracle::new(cfg.fock),
            |oracle, &(a, e)| evaluate_point(cfg, a, e, oracle),
        )
        .collect();
    Ok(SweepOutput {
        channel: cfg.channel,
        measures: cfg.measures.clone(),
        tol: cfg.tol,
        oracle: cfg.oracle,
        records,
    })
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped,
/// exponent form outside `[1e-4, 1e12)`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-4..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(format_sig).unwrap_or_default()
}

pub fn header(measures: &[Measure]) -> String {
    let mut cols = vec!["alpha", "eta"];
    cols.extend(measures.iter().map(|m| m.name()));
    cols.push("oracle_delta");
    cols.join(",")
}

/// Header `alpha,eta,<measures>,oracle_delta`, then one row per record.
/// Failed cells are empty.
pub fn write_csv<W: Write>(out: &SweepOutput, mut w: W) -> Result<()> {
    writeln!(w, "{}", header(&out.measures))?;
    for r in &out.records {
        let mut row = vec![format_sig(r.alpha), format_sig(r.eta)];
        row.extend(r.values.iter().map(|v| cell(*v)));
        row.push(cell(r.oracle_delta));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

fn json_number(v: Option<f64>) -> Value {
    v.and_then(|x| format_sig(x).parse::<f64>().ok())
        .and_then(Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// Array of flat objects with the CSV column names as keys; missing values
/// are `null`.
pub fn write_json<W: Write>(out: &SweepOutput, mut w: W) -> Result<()> {
    let rows: Vec<Value> = out
        .records
        .iter()
        .map(|r| {
            let mut obj = Map::new();
            obj.insert("alpha".into(), json_number(Some(r.alpha)));
            obj.insert("eta".into(), json_number(Some(r.eta)));
            for (m, v) in out.measures.iter().zip(&r.values) {
                obj.insert(m.name().into(), json_number(*v));
            }
            obj.insert("oracle_delta".into(), json_number(r.oracle_delta));
            Value::Object(obj)
        })
        .collect();
    serde_json::to_writer_pretty(&mut w, &rows).map_err(|e| EcsError::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

pub fn emit(out: &SweepOutput, path: &Path, format: Format) -> Result<()> {
    let file = std::fs::File::create(path)
        .map_err(|e| EcsError::Io(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    match format {
        Format::Csv => write_csv(out, &mut w)?,
        Format::Json => write_json(out, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

/// `dir/name.ext` -> `dir/name_suffix.ext`.
pub fn suffixed_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

/// One output file of a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetPart {
    /// Appended to the output stem when a preset writes several files.
    pub suffix: Option<&'static str>,
    pub config: SweepConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub parts: Vec<PresetPart>,
    /// Print the EOF-vs-negativity ordering report.
    pub ordering_report: bool,
}

pub const PRESET_NAMES: [&str; 9] = [
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "counterexample",
    "limits",
    "verify",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Coarse,
    Fine,
}

impl FromStr for Grid {
    type Err = EcsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coarse" => Ok(Grid::Coarse),
            "fine" => Ok(Grid::Fine),
            _ => Err(EcsError::Config(format!(
                "unknown grid {s:?} (coarse or fine)"
            ))),
        }
    }
}

fn list(v: &[f64]) -> Axis {
    Axis::Values(v.to_vec())
}

const FIG_ETAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const FIG_ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];
const NINE_ETAS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn eta_unit() -> Axis {
    Axis::Range {
        start: 0.0,
        stop: 1.0,
        steps: 101,
    }
}

fn alpha_curve() -> Axis {
    Axis::Range {
        start: 0.01,
        stop: 3.0,
        steps: 300,
    }
}

/// Oracle cross-check configurations: the symmetric channel on every
/// measure with a Fock counterpart, and the asymmetric fraction family.
pub fn verify_configs(grid: Grid, tol: f64, fock: FockConfig) -> Vec<PresetPart> {
    let (alpha, eta) = match grid {
        Grid::Coarse => (list(&[0.25, 0.5, 1.0, 2.0]), list(&NINE_ETAS)),
        Grid::Fine => (
            list(&[0.25, 0.5, 0.75, 1.0, 1.5, 2.0]),
            Axis::Range {
                start: 0.05,
                stop: 0.95,
                steps: 19,
            },
        ),
    };
    let sym = SweepConfig {
        fock,
        ..SweepConfig::new(
            Channel::Symmetric,
            alpha.clone(),
            eta.clone(),
            vec![
                Measure::Fraction,
                Measure::Concurrence,
                Measure::Negativity,
                Measure::PtMinEig,
                Measure::EnvEntanglement,
            ],
        )
        .with_oracle(tol)
    };
    let asym = SweepConfig {
        fock,
        ..SweepConfig::new(
            Channel::Asymmetric,
            alpha,
            eta,
            vec![Measure::Fraction, Measure::EnvEntanglement],
        )
        .with_oracle(tol)
    };
    vec![
        PresetPart {
            suffix: Some("sym"),
            config: sym,
        },
        PresetPart {
            suffix: Some("asym"),
            config: asym,
        },
    ]
}

/// Compiled-in sweeps. The `figN` axis ranges are fixed choices wide enough
/// to show each curve family's limits.
pub fn preset(name: &str, fock: FockConfig) -> Result<Preset> {
    let single = |config: SweepConfig| {
        vec![PresetPart {
            suffix: None,
            config: SweepConfig { fock, ..config },
        }]
    };
    use Channel::{Asymmetric, Symmetric};
    use Measure::*;
    let parts = match name {
        "fig1" => single(SweepConfig::new(
            Asymmetric,
            alpha_curve(),
            list(&FIG_ETAS),
            vec![Fraction, BellFraction],
        )),
        "fig2" => single(SweepConfig::new(
            Asymmetric,
            list(&FIG_ALPHAS),
            eta_unit(),
            vec![EofBound, EnvEntanglement],
        )),
        "fig3" => single(SweepConfig::new(
            Symmetric,
            alpha_curve(),
            list(&FIG_ETAS),
            vec![Fraction],
        )),
        "fig4" => {
            let surface = |m: Measure| {
                SweepConfig::new(
                    Symmetric,
                    Axis::Range {
                        start: 0.05,
                        stop: 3.0,
                        steps: 60,
                    },
                    Axis::Range {
                        start: 0.0,
                        stop: 1.0,
                        steps: 60,
                    },
                    vec![m],
                )
            };
            vec![
                PresetPart {
                    suffix: Some("concurrence"),
                    config: SweepConfig {
                        fock,
                        ..surface(Concurrence)
                    },
                },
                PresetPart {
                    suffix: Some("eof"),
                    config: SweepConfig {
                        fock,
                        ..surface(Eof)
                    },
                },
            ]
        }
        "fig5" => single(SweepConfig::new(
            Symmetric,
            list(&FIG_ALPHAS),
            eta_unit(),
            vec![Eof, EnvEntanglement],
        )),
        "fig6" => single(SweepConfig::new(
            Symmetric,
            list(&[ALPHA_SMALL_PROXY]),
            eta_unit(),
            vec![Eof, BellEof],
        )),
        "counterexample" => single(SweepConfig::new(
            Symmetric,
            list(&[ALPHA_SMALL_PROXY]),
            list(&NINE_ETAS),
            vec![Eof, BellEof, Negativity, BellNegativity],
        )),
        "limits" => single(SweepConfig::new(
            Symmetric,
            list(&[ALPHA_SMALL_PROXY, ALPHA_LARGE_PROXY]),
            list(&[0.2, 0.5, 0.8]),
            vec![
                Fraction,
                Concurrence,
                Negativity,
                PtMinEig,
                TeleportFidelity,
            ],
        )),
        "verify" => verify_configs(Grid::Coarse, DEFAULT_TOL, fock),
        _ => {
            return Err(EcsError::Config(format!(
                "unknown preset {name:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    let name = PRESET_NAMES
        .into_iter()
        .find(|n| *n == name)
        .expect("matched above");
    Ok(Preset {
        name,
        parts,
        ordering_report: name == "counterexample",
    })
}

/// Per-point comparison of EOF and negativity orderings between the ECS and
/// the Bell state. Needs the four columns of the `counterexample` preset.
pub fn ordering_report(out: &SweepOutput) -> Result<String> {
    let col = |m: Measure| {
        out.column(m)
            .ok_or_else(|| EcsError::Config(format!("ordering report needs the {m} column")))
    };
    let (e, be, n, bn) = (
        col(Measure::Eof)?,
        col(Measure::BellEof)?,
        col(Measure::Negativity)?,
        col(Measure::BellNegativity)?,
    );
    let mut text =
        String::from("alpha,eta,eof_ecs_gt_bell,negativity_ecs_lt_bell,orderings_disagree\n");
    let mut disagree = 0;
    for r in &out.records {
        let get = |k: usize| r.values[k];
        let (eof_gt, neg_lt) = match (get(e), get(be), get(n), get(bn)) {
            (Some(e), Some(be), Some(n), Some(bn)) => (e > be, n < bn),
            _ => (false, false),
        };
        if eof_gt && neg_lt {
            disagree += 1;
        }
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            format_sig(r.alpha),
            format_sig(r.eta),
            eof_gt,
            neg_lt,
            eof_gt && neg_lt
        ));
    }
    text.push_str(&format!(
        "# EOF and negativity order the ECS and Bell states oppositely at {disagree} of {} points\n",
        out.records.len()
    ));
    Ok(text)
}

/// One-line summary of an oracle-checked sweep.
pub fn verify_summary(out: &SweepOutput) -> String {
    let failures = out.failures().count();
    format!(
        "{}: {} points, max oracle delta {}, tol {}, failures {}: {}",
        out.channel,
        out.records.len(),
        out.max_delta().map_or_else(|| "n/a".into(), format_sig),
        format_sig(out.tol),
        failures,
        if out.passes() { "PASS" } else { "FAIL" }
    )
}

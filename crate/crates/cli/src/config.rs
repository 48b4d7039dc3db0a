//! JSON experiment configuration.
//!
//! Every block except `device` has defaults, so a minimal config is
//! `{"experiment": "oracle_sweep", "device": {}}`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use vqls_core::device::{build_potential, Column, DeviceSpec, EnergyGrid, PotentialProfile};
use vqls_core::oracle::Bias;
use vqls_core::pauli::DEFAULT_REL_THRESHOLD;
use vqls_core::vqls::{AnsatzVariant, CostKind, VqlsConfig};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    SolveSingle,
    CompareCosts,
    SweepAlpha,
    CompareAnsatz,
    SolveParallel,
    OracleSweep,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::SolveSingle,
        ExperimentKind::CompareCosts,
        ExperimentKind::SweepAlpha,
        ExperimentKind::CompareAnsatz,
        ExperimentKind::SolveParallel,
        ExperimentKind::OracleSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SolveSingle => "solve_single",
            ExperimentKind::CompareCosts => "compare_costs",
            ExperimentKind::SweepAlpha => "sweep_alpha",
            ExperimentKind::CompareAnsatz => "compare_ansatz",
            ExperimentKind::SolveParallel => "solve_parallel",
            ExperimentKind::OracleSweep => "oracle_sweep",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown experiment {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Flat {
        #[serde(default)]
        value: f64,
    },
    LogisticBarrier {
        height: f64,
        x1: f64,
        x2: f64,
        width: f64,
    },
    Samples {
        values: Vec<f64>,
    },
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig::LogisticBarrier { height: 0.2, x1: 3.0, x2: 7.0, width: 0.5 }
    }
}

impl PotentialConfig {
    fn profile(&self) -> PotentialProfile<f64> {
        match self {
            PotentialConfig::Flat { value } => PotentialProfile::Flat { value: *value },
            PotentialConfig::LogisticBarrier { height, x1, x2, width } => {
                PotentialProfile::LogisticBarrier { height: *height, x1: *x1, x2: *x2, width: *width }
            }
            PotentialConfig::Samples { values } => PotentialProfile::Samples(values.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceConfig {
    pub n_sites: usize,
    pub length_nm: f64,
    pub m_rel: f64,
    pub potential: PotentialConfig,
    /// Lead onsite energies `[source, drain]`, eV.
    pub contact_onsite: [f64; 2],
    pub eta: f64,
    pub rel_threshold: f64,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        Self {
            n_sites: 32,
            length_nm: 10.0,
            m_rel: 0.4,
            potential: PotentialConfig::default(),
            contact_onsite: [0.0, 0.0],
            eta: 1e-4,
            rel_threshold: DEFAULT_REL_THRESHOLD,
        }
    }
}

impl DeviceConfig {
    pub fn build(&self) -> Result<DeviceSpec<f64>, CliError> {
        let potential = build_potential(&self.potential.profile(), self.n_sites, self.length_nm)?;
        let mut device = DeviceSpec::new(
            self.n_sites,
            self.length_nm,
            self.m_rel,
            potential,
            (self.contact_onsite[0], self.contact_onsite[1]),
            self.eta,
        )?;
        device.rel_threshold = self.rel_threshold;
        device.validate()?;
        Ok(device)
    }
}

/// Either explicit energies or an inclusive linear grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridConfig {
    Values { values: Vec<f64> },
    Linspace { start: f64, stop: f64, count: usize },
}

impl GridConfig {
    pub fn build(&self) -> Result<EnergyGrid<f64>, CliError> {
        Ok(match self {
            GridConfig::Values { values } => EnergyGrid::new(values.clone())?,
            GridConfig::Linspace { start, stop, count } => EnergyGrid::linspace(*start, *stop, *count)?,
        })
    }

    fn len(&self) -> usize {
        match self {
            GridConfig::Values { values } => values.len(),
            GridConfig::Linspace { count, .. } => *count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VqlsBlock {
    pub cost: String,
    /// Cost kinds compared by `compare_costs`.
    pub costs: Vec<String>,
    pub alpha: f64,
    /// Weights swept by `sweep_alpha`.
    pub alphas: Vec<f64>,
    pub ansatz: String,
    /// Variants compared by `compare_ansatz`.
    pub ansatze: Vec<String>,
    pub layers: Vec<usize>,
    pub restarts: usize,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub cost_tolerance: f64,
}

impl Default for VqlsBlock {
    fn default() -> Self {
        let d = VqlsConfig::<f64>::default();
        Self {
            cost: d.cost.name().into(),
            costs: ["global", "local", "normalized_residual", "hybrid"].map(String::from).to_vec(),
            alpha: d.alpha,
            alphas: vec![0.0, 0.25, 0.5, 0.75, 0.9, 1.0],
            ansatz: AnsatzVariant::CrzRyCircular.name().into(),
            ansatze: AnsatzVariant::ALL.iter().map(|v| v.name().to_string()).collect(),
            layers: vec![3, 4, 5, 6],
            restarts: d.restarts,
            max_iterations: d.max_iterations,
            gradient_tolerance: d.gradient_tolerance,
            cost_tolerance: d.cost_tolerance,
        }
    }
}

impl VqlsBlock {
    pub fn cost_kind(&self) -> Result<CostKind, CliError> {
        parse_named(&self.cost)
    }

    pub fn cost_kinds(&self) -> Result<Vec<CostKind>, CliError> {
        self.costs.iter().map(|s| parse_named(s)).collect()
    }

    pub fn variant(&self) -> Result<AnsatzVariant, CliError> {
        parse_named(&self.ansatz)
    }

    pub fn variants(&self) -> Result<Vec<AnsatzVariant>, CliError> {
        self.ansatze.iter().map(|s| parse_named(s)).collect()
    }

    /// Solver settings for one cell; `seed` is the master seed.
    pub fn solver(&self, cost: CostKind, alpha: f64, seed: u64) -> VqlsConfig<f64> {
        VqlsConfig {
            cost,
            alpha,
            seed,
            max_iterations: self.max_iterations,
            gradient_tolerance: self.gradient_tolerance,
            cost_tolerance: self.cost_tolerance,
            restarts: self.restarts,
        }
    }
}

fn parse_named<V: FromStr>(s: &str) -> Result<V, CliError>
where
    V::Err: std::fmt::Display,
{
    s.parse().map_err(|e: V::Err| CliError::Config(vec![e.to_string()]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BiasConfig {
    pub mu1: f64,
    pub mu2: f64,
    pub temperature_k: f64,
}

impl Default for BiasConfig {
    fn default() -> Self {
        let b = Bias::<f64>::default();
        Self { mu1: b.mu1, mu2: b.mu2, temperature_k: b.temperature_k }
    }
}

impl From<BiasConfig> for Bias<f64> {
    fn from(b: BiasConfig) -> Self {
        Bias { mu1: b.mu1, mu2: b.mu2, temperature_k: b.temperature_k }
    }
}

/// Thresholds checked under `--strict`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GateConfig {
    /// Fraction of runs per cell that must report convergence.
    pub min_converged_fraction: f64,
    /// Upper bound on each cell's median relative MSE, if set.
    pub max_median_relative_mse: Option<f64>,
}

impl Default for GateConfig {
    fn default() -> Self {
        Self { min_converged_fraction: 0.5, max_median_relative_mse: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentKind>,
    pub device: DeviceConfig,
    /// Single energy for `solve_single` and the comparison studies, eV.
    #[serde(default = "default_energy")]
    pub energy: f64,
    #[serde(default = "default_column")]
    pub column: String,
    /// Energy grid for `solve_parallel` and `oracle_sweep`.
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub vqls: VqlsBlock,
    #[serde(default)]
    pub bias: BiasConfig,
    #[serde(default)]
    pub gate: GateConfig,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

fn default_energy() -> f64 {
    -0.044
}

fn default_column() -> String {
    Column::Source.to_string()
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Config(vec![format!("invalid JSON: {e}")]))?;
        let violations = schema_violations(&value);
        if !violations.is_empty() {
            return Err(CliError::Config(violations));
        }
        serde_json::from_value(value).map_err(|e| CliError::Config(vec![e.to_string()]))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    pub fn column(&self) -> Result<Column, CliError> {
        parse_named(&self.column)
    }

    /// Semantic checks beyond the JSON shape.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = &self.device;
        if !d.n_sites.is_power_of_two() || d.n_sites < 4 {
            out.push(format!("device.n_sites: power of two required (at least 4), got {}", d.n_sites));
        } else if let Err(e) = d.build() {
            out.push(format!("device: {e}"));
        }
        if let Err(e) = self.column() {
            out.push(format!("column: {e}"));
        }
        let v = &self.vqls;
        for (field, res) in [
            ("vqls.cost", v.cost_kind().map(drop)),
            ("vqls.costs", v.cost_kinds().map(drop)),
            ("vqls.ansatz", v.variant().map(drop)),
            ("vqls.ansatze", v.variants().map(drop)),
        ] {
            if let Err(e) = res {
                out.push(format!("{field}: {e}"));
            }
        }
        for &a in std::iter::once(&v.alpha).chain(&v.alphas) {
            if !(0.0..=1.0).contains(&a) {
                out.push(format!("vqls.alpha: {a} outside [0, 1]"));
            }
        }
        if v.layers.is_empty() || v.layers.contains(&0) {
            out.push("vqls.layers: at least one positive layer count required".into());
        }
        if v.restarts == 0 {
            out.push("vqls.restarts: at least 1 required".into());
        }
        match (&self.grid, self.experiment) {
            (Some(g), kind) => {
                if let Err(e) = g.build() {
                    out.push(format!("grid: {e}"));
                }
                if kind == Some(ExperimentKind::SolveParallel) && !g.len().is_power_of_two() {
                    out.push(format!("grid: power of two required for block assembly, got {} energies", g.len()));
                }
            }
            (None, Some(ExperimentKind::SolveParallel | ExperimentKind::OracleSweep)) => {
                out.push("grid: required".into());
            }
            (None, _) => {}
        }
        if !(self.bias.temperature_k > 0.0) {
            out.push(format!("bias.temperature_k: must be positive, got {}", self.bias.temperature_k));
        }
        if !(0.0..=1.0).contains(&self.gate.min_converged_fraction) {
            out.push("gate.min_converged_fraction: outside [0, 1]".into());
        }
        out
    }
}

/// Structural checks that serde would otherwise report one at a time.
fn schema_violations(value: &serde_json::Value) -> Vec<String> {
    let Some(obj) = value.as_object() else {
        return vec!["config: JSON object required".into()];
    };
    let mut out = Vec::new();
    match obj.get("device") {
        None => out.push("device: required".into()),
        Some(d) if !d.is_object() => out.push("device: object required".into()),
        Some(_) => {}
    }
    if let Some(kind) = obj.get("experiment") {
        if kind.as_str().and_then(|s| s.parse::<ExperimentKind>().ok()).is_none() {
            out.push(format!("experiment: unknown kind {kind}"));
        }
    }
    out
}

/// Reads and checks a config without running it. An empty list means the
/// config is valid.
pub fn validate_config(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    match ExperimentConfig::from_json(&text) {
        Ok(cfg) => Ok(cfg.violations()),
        Err(CliError::Config(v)) => Ok(v),
        Err(e) => Err(e),
    }
}

//! The six experiment kinds and their CSV artifacts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use vqls_core::device::{assemble_block_system, assemble_system, DeviceSpec, EnergyGrid};
use vqls_core::oracle::{solve_system, transport_sweep, Bias, EnergyPoint, TransportResult};
use vqls_core::vqls::{
    run_restarts, AnsatzSpec, AnsatzVariant, CostKind, RestartStats, RunResult, Summary, VqlsProblem,
};
use vqls_core::{AssembledSystem64, Complex64};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::CliError;
use crate::output::{float, opt_float, Table};

/// One row of a comparison study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub cost: CostKind,
    pub alpha: f64,
    pub variant: AnsatzVariant,
    pub layers: usize,
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub cell: Cell,
    pub stats: RestartStats<f64>,
}

impl CellResult {
    /// Lowest final cost; the choice a user without the oracle would make.
    pub fn best_run(&self) -> Option<&RunResult<f64>> {
        self.stats.runs.iter().min_by(|a, b| a.final_cost.total_cmp(&b.final_cost))
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub kind: ExperimentKind,
    pub output_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub cells: Vec<CellResult>,
    pub oracle_transport: Option<TransportResult<f64>>,
    pub vqls_transport: Option<TransportResult<f64>>,
    pub summary: String,
    /// Violated `--strict` thresholds; empty when every gate holds.
    pub gate_failures: Vec<String>,
}

/// `C_L = w̄/v` of a finished run.
pub fn local_cost(run: &RunResult<f64>) -> f64 {
    run.primitives.w_bar / run.primitives.v
}

/// The cells an experiment kind sweeps over.
pub fn cells(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<Vec<Cell>, CliError> {
    let v = &cfg.vqls;
    let base = Cell { cost: v.cost_kind()?, alpha: v.alpha, variant: v.variant()?, layers: v.layers[0] };
    let layers = &v.layers;
    Ok(match kind {
        ExperimentKind::SolveSingle | ExperimentKind::SolveParallel => vec![base],
        ExperimentKind::CompareCosts => v
            .cost_kinds()?
            .into_iter()
            .flat_map(|cost| layers.iter().map(move |&l| Cell { cost, layers: l, ..base }))
            .collect(),
        ExperimentKind::SweepAlpha => layers
            .iter()
            .flat_map(|&l| {
                v.alphas.iter().map(move |&alpha| Cell { cost: CostKind::Hybrid, alpha, layers: l, ..base })
            })
            .collect(),
        ExperimentKind::CompareAnsatz => v
            .variants()?
            .into_iter()
            .flat_map(|variant| layers.iter().map(move |&l| Cell { variant, layers: l, ..base }))
            .collect(),
        ExperimentKind::OracleSweep => Vec::new(),
    })
}

/// Restarts for every cell against one system, in cell order.
pub fn run_cells(
    system: &AssembledSystem64,
    oracle: &[Complex64],
    cells: &[Cell],
    cfg: &ExperimentConfig,
) -> Result<Vec<CellResult>, CliError> {
    let problem = VqlsProblem::new(system)?;
    cells
        .iter()
        .map(|&cell| {
            let spec = AnsatzSpec::new(cell.variant, system.n_qubits, cell.layers)?;
            let solver = cfg.vqls.solver(cell.cost, cell.alpha, cfg.seed);
            let stats = run_restarts(&problem, &spec, &solver, Some(oracle))?;
            Ok(CellResult { cell, stats })
        })
        .collect()
}

/// Splits a block-system solution into per-energy Green's-function columns.
pub fn block_transport(
    device: &DeviceSpec<f64>,
    grid: &EnergyGrid<f64>,
    solution: &[Complex64],
    bias: &Bias<f64>,
) -> Result<TransportResult<f64>, CliError> {
    let n = device.n_sites;
    if solution.len() != grid.len() * 2 * n {
        return Err(vqls_core::Error::DimensionMismatch { expected: grid.len() * 2 * n, actual: solution.len() }.into());
    }
    let points = grid
        .energies()
        .iter()
        .enumerate()
        .map(|(e, &energy)| {
            let base = 2 * e * n;
            let src = solution[base..base + n].to_vec();
            let drn = solution[base + n..base + 2 * n].to_vec();
            EnergyPoint::from_columns(device, energy, src, drn)
        })
        .collect();
    Ok(TransportResult::from_points(points, grid.spacing(), bias)?)
}

/// Runs `cfg` as `kind`, writing its artifacts into `out_dir`.
pub fn run_experiment(cfg: &ExperimentConfig, kind: ExperimentKind, out_dir: &Path) -> Result<Report, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Io(out_dir.display().to_string(), e))?;
    let device = cfg.device.build()?;
    let bias: Bias<f64> = cfg.bias.into();
    let mut report = Report {
        kind,
        output_dir: out_dir.to_path_buf(),
        files: Vec::new(),
        cells: Vec::new(),
        oracle_transport: None,
        vqls_transport: None,
        summary: String::new(),
        gate_failures: Vec::new(),
    };
    let mut solution: Option<(Vec<Complex64>, Vec<Complex64>)> = None;

    match kind {
        ExperimentKind::OracleSweep => {
            let grid = required_grid(cfg)?;
            report.oracle_transport = Some(transport_sweep(&device, &grid, &bias)?);
        }
        ExperimentKind::SolveParallel => {
            let grid = required_grid(cfg)?;
            let system = assemble_block_system(&device, &grid)?;
            let oracle = solve_system(&system)?;
            report.cells = run_cells(&system, &oracle, &cells(cfg, kind)?, cfg)?;
            report.oracle_transport = Some(block_transport(&device, &grid, &oracle, &bias)?);
            if let Some(best) = report.cells[0].best_run() {
                report.vqls_transport = Some(block_transport(&device, &grid, &best.solution, &bias)?);
                solution = Some((best.solution.clone(), oracle));
            }
        }
        _ => {
            let system = assemble_system(&device, cfg.energy, cfg.column()?)?;
            let oracle = solve_system(&system)?;
            report.cells = run_cells(&system, &oracle, &cells(cfg, kind)?, cfg)?;
            if kind == ExperimentKind::SolveSingle {
                if let Some(best) = report.cells[0].best_run() {
                    solution = Some((best.solution.clone(), oracle));
                }
            }
        }
    }

    if !report.cells.is_empty() {
        report.write(out_dir, "cost_history.csv", cost_history_table(&report.cells))?;
        report.write(out_dir, "runs.csv", runs_table(&report.cells))?;
        report.write(out_dir, "mse_stats.csv", stats_table(&report.cells))?;
    }
    if let Some((x, oracle)) = &solution {
        report.write(out_dir, "solution.csv", solution_table(x, oracle))?;
    }
    if let Some(oracle) = &report.oracle_transport {
        let vqls = report.vqls_transport.as_ref();
        let tables = [("transport.csv", transport_table(oracle, vqls)), ("ldos.csv", ldos_table(oracle, vqls))];
        for (name, table) in tables {
            report.write(out_dir, name, table)?;
        }
    }
    report.gate_failures = gate_failures(cfg, &report.cells);
    report.summary = summary(&report);
    Ok(report)
}

fn required_grid(cfg: &ExperimentConfig) -> Result<EnergyGrid<f64>, CliError> {
    cfg.grid.as_ref().ok_or_else(|| CliError::Config(vec!["grid: required".into()]))?.build()
}

impl Report {
    fn write(&mut self, dir: &Path, name: &str, table: Table) -> Result<(), CliError> {
        let path = dir.join(name);
        table.write(&path)?;
        self.files.push(path);
        Ok(())
    }
}

fn cell_fields(c: &Cell) -> Vec<String> {
    vec![c.cost.name().into(), c.variant.name().into(), float(c.alpha), c.layers.to_string()]
}

fn cost_history_table(cells: &[CellResult]) -> Table {
    let mut t = Table::new(&["run", "iteration", "cost"]);
    let runs = cells.iter().flat_map(|c| &c.stats.runs);
    for (run, r) in runs.enumerate() {
        for (it, f) in r.cost_history.iter().enumerate() {
            t.push(vec![run.to_string(), it.to_string(), float(*f)]);
        }
    }
    t
}

fn runs_table(cells: &[CellResult]) -> Table {
    let mut t = Table::new(&[
        "run",
        "cost_kind",
        "ansatz",
        "alpha",
        "layers",
        "seed",
        "final_cost",
        "local_cost",
        "k_star",
        "mse",
        "relative_mse",
        "converged",
        "iterations",
        "termination",
    ]);
    let mut run = 0;
    for c in cells {
        for r in &c.stats.runs {
            let mut row = vec![run.to_string()];
            row.extend(cell_fields(&c.cell));
            row.extend([
                r.seed.to_string(),
                float(r.final_cost),
                float(local_cost(r)),
                float(r.k_star),
                opt_float(r.mse_vs_oracle),
                opt_float(r.relative_mse),
                r.converged.to_string(),
                r.iterations.to_string(),
                format!("{:?}", r.termination),
            ]);
            t.push(row);
            run += 1;
        }
    }
    t
}

fn summary_fields(s: Option<Summary<f64>>) -> [String; 3] {
    match s {
        Some(s) => [float(s.mean), float(s.median), float(s.min)],
        None => Default::default(),
    }
}

fn stats_table(cells: &[CellResult]) -> Table {
    let mut t = Table::new(&[
        "cost_kind",
        "ansatz",
        "alpha",
        "layers",
        "mean",
        "median",
        "min",
        "relative_mean",
        "relative_median",
        "relative_min",
        "converged",
        "failures",
    ]);
    for c in cells {
        let mut row = cell_fields(&c.cell);
        row.extend(summary_fields(c.stats.mse));
        row.extend(summary_fields(c.stats.relative_mse));
        row.push(c.stats.runs.iter().filter(|r| r.converged).count().to_string());
        row.push(c.stats.failures.len().to_string());
        t.push(row);
    }
    t
}

fn solution_table(x: &[Complex64], oracle: &[Complex64]) -> Table {
    let mut t = Table::new(&["index", "re", "im", "oracle_re", "oracle_im"]);
    for (i, (a, b)) in x.iter().zip(oracle).enumerate() {
        t.push(vec![i.to_string(), float(a.re), float(a.im), float(b.re), float(b.im)]);
    }
    t
}

fn transport_table(oracle: &TransportResult<f64>, vqls: Option<&TransportResult<f64>>) -> Table {
    let mut t = Table::new(&["energy", "T_oracle", "T_vqls", "J_oracle", "J_vqls"]);
    for (k, p) in oracle.points.iter().enumerate() {
        t.push(vec![
            float(p.energy),
            float(p.transmission),
            opt_float(vqls.map(|v| v.points[k].transmission)),
            float(oracle.current_spectrum[k]),
            opt_float(vqls.map(|v| v.current_spectrum[k])),
        ]);
    }
    t
}

fn ldos_table(oracle: &TransportResult<f64>, vqls: Option<&TransportResult<f64>>) -> Table {
    let mut t = Table::new(&["site", "energy", "ldos_oracle", "ldos_vqls"]);
    for (k, p) in oracle.points.iter().enumerate() {
        for (site, l) in p.ldos.iter().enumerate() {
            t.push(vec![
                site.to_string(),
                float(p.energy),
                float(*l),
                opt_float(vqls.map(|v| v.points[k].ldos[site])),
            ]);
        }
    }
    t
}

fn gate_failures(cfg: &ExperimentConfig, cells: &[CellResult]) -> Vec<String> {
    let mut out = Vec::new();
    for c in cells {
        let label = cell_label(&c.cell);
        let total = c.stats.runs.len() + c.stats.failures.len();
        let converged = c.stats.runs.iter().filter(|r| r.converged).count();
        if (converged as f64) < cfg.gate.min_converged_fraction * total as f64 {
            out.push(format!("{label}: {converged}/{total} runs converged"));
        }
        if let Some(limit) = cfg.gate.max_median_relative_mse {
            match c.stats.relative_mse {
                Some(s) if s.median <= limit => {}
                Some(s) => out.push(format!("{label}: median relative MSE {:.3e} above {limit:.3e}", s.median)),
                None => out.push(format!("{label}: no successful runs")),
            }
        }
    }
    out
}

fn cell_label(c: &Cell) -> String {
    format!("{} {} alpha={} L={}", c.cost, c.variant, c.alpha, c.layers)
}

fn summary(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "experiment: {}", report.kind.name());
    if !report.cells.is_empty() {
        let _ = writeln!(
            s,
            "{:<20} {:<20} {:>6} {:>6} {:>11} {:>11} {:>11} {:>6}",
            "cost", "ansatz", "alpha", "L", "mean", "median", "min", "conv"
        );
        for c in &report.cells {
            let m = c.stats.mse;
            let g = |f: fn(&Summary<f64>) -> f64| m.as_ref().map(|s| format!("{:.3e}", f(s))).unwrap_or("-".into());
            let _ = writeln!(
                s,
                "{:<20} {:<20} {:>6.2} {:>6} {:>11} {:>11} {:>11} {:>3}/{:<2}",
                c.cell.cost.name(),
                c.cell.variant.name(),
                c.cell.alpha,
                c.cell.layers,
                g(|s| s.mean),
                g(|s| s.median),
                g(|s| s.min),
                c.stats.runs.iter().filter(|r| r.converged).count(),
                c.stats.runs.len() + c.stats.failures.len(),
            );
        }
    }
    if let Some(t) = &report.oracle_transport {
        let _ = writeln!(s, "oracle total current: {:.6e} A", t.total_current);
    }
    if let Some(t) = &report.vqls_transport {
        let _ = writeln!(s, "vqls total current:   {:.6e} A", t.total_current);
    }
    for f in &report.files {
        let _ = writeln!(s, "wrote {}", f.display());
    }
    s
}

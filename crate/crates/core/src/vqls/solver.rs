use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{mse, relative_mse};
use crate::scalar::{Real, C};

use super::ansatz::{init_params, AnsatzSpec};
use super::bfgs::{minimize, BfgsOptions, Termination};
use super::cost::{k_star, CostKind, CostPrimitives};
use super::objective::{Objective, VqlsProblem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VqlsConfig<T> {
    pub cost: CostKind,
    pub alpha: T,
    pub seed: u64,
    pub max_iterations: usize,
    pub gradient_tolerance: T,
    pub cost_tolerance: T,
    pub restarts: usize,
}

impl<T: Real> Default for VqlsConfig<T> {
    fn default() -> Self {
        Self {
            cost: CostKind::Hybrid,
            alpha: T::lit(0.7),
            seed: 0,
            max_iterations: 500,
            gradient_tolerance: T::lit(1e-8),
            cost_tolerance: T::lit(1e-12),
            restarts: 10,
        }
    }
}

impl<T: Real> VqlsConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= T::zero() && self.alpha <= T::one()) {
            return Err(Error::InvalidArgument(format!("alpha must lie in [0, 1], got {}", self.alpha)));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        Ok(())
    }

    fn bfgs_options(&self) -> BfgsOptions<T> {
        BfgsOptions {
            max_iterations: self.max_iterations,
            gradient_tolerance: self.gradient_tolerance,
            cost_tolerance: self.cost_tolerance,
            ..BfgsOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<T> {
    pub seed: u64,
    pub theta_opt: Vec<T>,
    pub k_star: T,
    pub cost_history: Vec<T>,
    pub final_cost: T,
    pub primitives: CostPrimitives<T>,
    /// `k*·b_norm·U(θ_opt)|0⟩`.
    pub solution: Vec<C<T>>,
    pub mse_vs_oracle: Option<T>,
    /// MSE divided by the oracle solution's mean squared magnitude.
    pub relative_mse: Option<T>,
    pub converged: bool,
    pub iterations: usize,
    pub termination: Termination,
}

/// `x = k*·b_norm·U(θ)|0⟩`.
pub fn recover_solution<T: Real>(
    problem: &VqlsProblem<T>,
    spec: &AnsatzSpec,
    theta: &[T],
    k_star: T,
) -> Result<Vec<C<T>>> {
    let obj = Objective::new(problem, *spec, CostKind::NormalizedResidual, T::one())?;
    let scale = k_star * problem.b_norm;
    Ok(obj.state(theta)?.into_amplitudes().into_iter().map(|a| a * scale).collect())
}

/// One BFGS run from the seeded initial parameters.
pub fn optimize<T: Real>(
    problem: &VqlsProblem<T>,
    spec: &AnsatzSpec,
    config: &VqlsConfig<T>,
    seed: u64,
    oracle: Option<&[C<T>]>,
) -> Result<RunResult<T>> {
    config.validate()?;
    let obj = Objective::new(problem, *spec, config.cost, config.alpha)?;
    let theta0 = init_params(spec, seed);
    let res = minimize(|th| obj.value_and_gradient(th), &theta0, &config.bfgs_options())?;
    let primitives = obj.primitives(&res.x)?;
    let k = k_star(&primitives)?;
    let solution = recover_solution(problem, spec, &res.x, k)?;
    let (mse_vs_oracle, rel) = match oracle {
        Some(x) => (Some(mse(&solution, x)?), Some(relative_mse(&solution, x)?)),
        None => (None, None),
    };
    Ok(RunResult {
        seed,
        converged: res.converged(),
        iterations: res.iterations,
        termination: res.termination,
        final_cost: res.f,
        theta_opt: res.x,
        k_star: k,
        cost_history: res.history,
        primitives,
        solution,
        mse_vs_oracle,
        relative_mse: rel,
    })
}

/// Mean, median and minimum of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<T> {
    pub mean: T,
    pub median: T,
    pub min: T,
}

impl<T: Real> Summary<T> {
    pub fn of(values: &[T]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let n = v.len();
        let median = if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / T::lit(2.0) };
        let mean = v.iter().copied().sum::<T>() / T::from_usize_lossy(n);
        Some(Self { mean, median, min: v[0] })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestartStats<T> {
    /// Successful runs in seed order.
    pub runs: Vec<RunResult<T>>,
    /// Seeds whose run failed, with the error message.
    pub failures: Vec<(u64, String)>,
    pub mse: Option<Summary<T>>,
    pub relative_mse: Option<Summary<T>>,
}

/// `config.restarts` independent runs with seeds `seed, seed + 1, …`, run
/// in parallel and reported in seed order.
pub fn run_restarts<T: Real>(
    problem: &VqlsProblem<T>,
    spec: &AnsatzSpec,
    config: &VqlsConfig<T>,
    oracle: Option<&[C<T>]>,
) -> Result<RestartStats<T>> {
    config.validate()?;
    let outcomes: Vec<(u64, Result<RunResult<T>>)> = (0..config.restarts as u64)
        .into_par_iter()
        .map(|r| {
            let seed = config.seed.wrapping_add(r);
            (seed, optimize(problem, spec, config, seed, oracle))
        })
        .collect();
    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for (seed, out) in outcomes {
        match out {
            Ok(r) => runs.push(r),
            Err(e) => failures.push((seed, e.to_string())),
        }
    }
    let collect = |f: fn(&RunResult<T>) -> Option<T>| -> Vec<T> { runs.iter().filter_map(f).collect() };
    let mse = Summary::of(&collect(|r| r.mse_vs_oracle));
    let relative_mse = Summary::of(&collect(|r| r.relative_mse));
    Ok(RestartStats { runs, failures, mse, relative_mse })
}

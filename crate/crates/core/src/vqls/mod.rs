//! Variational linear solver: ansatz circuits, cost functions with exact
//! adjoint gradients, BFGS and restart statistics.

mod ansatz;
mod bfgs;
mod cost;
mod objective;
mod solver;

pub use ansatz::{arcsine_angle, build_ansatz, init_params, AnsatzSpec, AnsatzVariant};
pub use bfgs::{minimize, BfgsOptions, BfgsResult, Termination};
pub use cost::{
    cost_partials, evaluate_cost, k_star, residual_at_scale, CostKind, CostPartials, CostPrimitives, LOG_CLAMP,
    MIN_NORM,
};
pub use objective::{numerical_gradient, run_circuit, Objective, VqlsProblem, FD_STEP};
pub use solver::{optimize, recover_solution, run_restarts, RestartStats, RunResult, Summary, VqlsConfig};

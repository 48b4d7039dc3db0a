use crate::device::{AssembledSystem, RhsSpec};
use crate::error::{Error, Result};
use crate::pauli::SparseOperator;
use crate::qsim::{apply_gate_in_place, generator_overlap, Circuit, QState};
use crate::scalar::{c, c_zero, inner, Real, C};

use super::ansatz::{build_ansatz, AnsatzSpec};
use super::cost::{cost_partials, evaluate_cost, CostKind, CostPrimitives};

/// Central-difference step of [`numerical_gradient`].
pub const FD_STEP: f64 = 1e-6;

/// An assembled system compiled for repeated cost evaluation.
#[derive(Debug, Clone)]
pub struct VqlsProblem<T> {
    pub n_qubits: usize,
    pub rhs: RhsSpec,
    pub b_norm: T,
    a: SparseOperator<T>,
    a_adj: SparseOperator<T>,
    gram: SparseOperator<T>,
    b: Vec<C<T>>,
    a_dag_b: Vec<C<T>>,
}

impl<T: Real> VqlsProblem<T> {
    pub fn new(system: &AssembledSystem<T>) -> Result<Self> {
        let n = system.n_qubits;
        if system.a.n_qubits() != n || system.adag_a.n_qubits() != n {
            return Err(Error::QubitMismatch { expected: n, actual: system.a.n_qubits() });
        }
        let a = SparseOperator::compile(&system.a);
        let a_adj = a.adjoint();
        let gram = SparseOperator::compile(&system.adag_a);
        let b = system.b_state();
        let a_dag_b = a_adj.apply_vec(&b);
        Ok(Self { n_qubits: n, rhs: system.rhs, b_norm: system.b_norm, a, a_adj, gram, b, a_dag_b })
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn b(&self) -> &[C<T>] {
        &self.b
    }

    pub fn apply_a(&self, x: &[C<T>]) -> Vec<C<T>> {
        self.a.apply_vec(x)
    }

    /// Diagonal of `I − P̄`: the fraction of qubits in `|1⟩`.
    fn complement_weight(&self, i: usize) -> T {
        T::from_usize_lossy(i.count_ones() as usize) / T::from_usize_lossy(self.n_qubits)
    }

    pub fn primitives(&self, psi: &[C<T>]) -> Result<CostPrimitives<T>> {
        Ok(self.evaluate(psi, false)?.0)
    }

    /// Primitives plus the intermediate vectors the adjoint needs.
    fn evaluate(&self, psi: &[C<T>], keep: bool) -> Result<(CostPrimitives<T>, Option<Intermediates<T>>)> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: psi.len() });
        }
        let a_psi = self.a.apply_vec(psi);
        let m_psi = self.gram.apply_vec(psi);
        let vc = inner(psi, &m_psi);
        if vc.im.abs() > T::roundoff_tol() * T::one().max(vc.re.abs()) {
            return Err(Error::HermitianResidue(vc.im.as_f64()));
        }
        let mut phi = a_psi.clone();
        self.rhs.apply_ub(&mut phi, self.n_qubits, true);
        let mut w_bar = T::zero();
        for (i, x) in phi.iter_mut().enumerate() {
            let d = self.complement_weight(i);
            w_bar += d * x.norm_sqr();
            *x = *x * d;
        }
        let u = inner(&self.b, &a_psi);
        let prims = CostPrimitives {
            u,
            v: vc.re,
            w_bar,
            overlap_b: inner(&self.b, psi),
            a_expectation: inner(psi, &a_psi),
        };
        let extra = keep.then_some(Intermediates { a_psi, m_psi, d_phi: phi });
        Ok((prims, extra))
    }
}

struct Intermediates<T> {
    a_psi: Vec<C<T>>,
    m_psi: Vec<C<T>>,
    /// `(I − P̄) U_b† A|ψ⟩`.
    d_phi: Vec<C<T>>,
}

/// A cost kind bound to a problem and ansatz, as a function of `θ`.
#[derive(Debug, Clone, Copy)]
pub struct Objective<'a, T> {
    pub problem: &'a VqlsProblem<T>,
    pub spec: AnsatzSpec,
    pub kind: CostKind,
    pub alpha: T,
}

impl<'a, T: Real> Objective<'a, T> {
    pub fn new(problem: &'a VqlsProblem<T>, spec: AnsatzSpec, kind: CostKind, alpha: T) -> Result<Self> {
        if spec.n_qubits != problem.n_qubits {
            return Err(Error::QubitMismatch { expected: problem.n_qubits, actual: spec.n_qubits });
        }
        Ok(Self { problem, spec, kind, alpha })
    }

    pub fn state(&self, theta: &[T]) -> Result<QState<T>> {
        let circuit = build_ansatz(&self.spec, theta)?;
        Ok(run_circuit(&circuit))
    }

    pub fn primitives(&self, theta: &[T]) -> Result<CostPrimitives<T>> {
        self.problem.primitives(self.state(theta)?.amplitudes())
    }

    pub fn value(&self, theta: &[T]) -> Result<T> {
        evaluate_cost(self.kind, &self.primitives(theta)?, self.alpha)
    }

    /// Cost and its exact gradient from one forward and one reverse sweep.
    pub fn value_and_gradient(&self, theta: &[T]) -> Result<(T, Vec<T>)> {
        let circuit = build_ansatz(&self.spec, theta)?;
        let n = self.problem.n_qubits;
        let mut psi = run_circuit(&circuit).into_amplitudes();
        let (prims, inter) = self.problem.evaluate(&psi, true)?;
        let inter = inter.expect("intermediates requested");
        let value = evaluate_cost(self.kind, &prims, self.alpha)?;
        let dc = cost_partials(self.kind, &prims, self.alpha)?;

        // dC = Re⟨λ|dψ⟩
        let p = self.problem;
        let two = T::lit(2.0);
        let i_unit = c(T::zero(), T::one());
        let mut lambda = vec![c_zero(); psi.len()];
        let mut w_grad = inter.d_phi;
        p.rhs.apply_ub(&mut w_grad, n, false);
        let w_grad = p.a_adj.apply_vec(&w_grad);
        let sym_a = if dc.a_expectation_re != T::zero() {
            let adj = p.a_adj.apply_vec(&psi);
            inter.a_psi.iter().zip(adj).map(|(x, y)| x + y).collect()
        } else {
            vec![c_zero(); psi.len()]
        };
        for k in 0..psi.len() {
            lambda[k] = p.a_dag_b[k] * dc.u_re
                + i_unit * p.a_dag_b[k] * dc.u_im
                + inter.m_psi[k] * (two * dc.v)
                + w_grad[k] * (two * dc.w_bar)
                + p.b[k] * dc.overlap_re
                + sym_a[k] * dc.a_expectation_re;
        }

        let mut grad = vec![T::zero(); theta.len()];
        let mut slot = theta.len();
        let half = c(T::zero(), T::lit(-0.5));
        for gate in circuit.gates().iter().rev() {
            if gate.kind.is_parameterized() {
                slot -= 1;
                grad[slot] = (half * generator_overlap(&lambda, &psi, n, gate)).re;
            }
            let inv = gate.inverse();
            apply_gate_in_place(&mut psi, n, &inv);
            apply_gate_in_place(&mut lambda, n, &inv);
        }
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok((value, grad))
    }
}

/// `U|0…0⟩`.
pub fn run_circuit<T: Real>(circuit: &Circuit<T>) -> QState<T> {
    let n = circuit.n_qubits();
    let mut amps = QState::zero(n).into_amplitudes();
    for g in circuit.gates() {
        apply_gate_in_place(&mut amps, n, g);
    }
    QState::from_amplitudes(amps).expect("power-of-two length")
}

/// Central differences with step `h`.
pub fn numerical_gradient<T: Real, F>(mut f: F, theta: &[T], h: T) -> Result<Vec<T>>
where
    F: FnMut(&[T]) -> Result<T>,
{
    let mut x = theta.to_vec();
    let mut g = Vec::with_capacity(theta.len());
    for i in 0..theta.len() {
        x[i] = theta[i] + h;
        let fp = f(&x)?;
        x[i] = theta[i] - h;
        let fm = f(&x)?;
        x[i] = theta[i];
        g.push((fp - fm) / (T::lit(2.0) * h));
    }
    Ok(g)
}

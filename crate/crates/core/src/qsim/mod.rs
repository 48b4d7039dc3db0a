//! Exact statevector simulation: gates, cyclic shift permutations and exact
//! expectation values of [`OperatorSum`]s.
//!
//! Every operation takes a state by reference and returns a new one; the
//! in-place kernels are exposed for the optimizer's hot loop.

mod gate;
mod shift;
mod state;

pub use gate::{apply_gate_in_place, generator_overlap, Circuit, Gate, GateKind};
pub use shift::{apply_shift_in_place, ShiftRange};
pub use state::{qubit_bit, qubits_for_len, QState};

use crate::error::{Error, Result};
use crate::pauli::OperatorSum;
use crate::scalar::{c_zero, inner, Real, C};

/// `U·state` for the ordered gate product `U` of `circuit`.
pub fn apply_circuit<T: Real>(state: &QState<T>, circuit: &Circuit<T>) -> Result<QState<T>> {
    if state.n_qubits() != circuit.n_qubits() {
        return Err(Error::QubitMismatch {
            expected: circuit.n_qubits(),
            actual: state.n_qubits(),
        });
    }
    circuit.validate()?;
    let n = state.n_qubits();
    let mut amps = state.amplitudes().to_vec();
    for gate in circuit.gates() {
        apply_gate_in_place(&mut amps, n, gate);
    }
    QState::from_amplitudes(amps)
}

/// Cyclic shift `S^{(m)}` (or its adjoint) on the `m` most significant qubits.
pub fn apply_shift<T: Real>(state: &QState<T>, m: usize, adjoint: bool) -> Result<QState<T>> {
    let n = state.n_qubits();
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "shift width {m} out of range 1..={n}"
        )));
    }
    let mut amps = state.amplitudes().to_vec();
    apply_shift_in_place(&mut amps, n, ShiftRange::new(0, m), adjoint);
    QState::from_amplitudes(amps)
}

/// `Σ_k c_k T_k |state⟩`, accumulated term by term in index order.
pub fn apply_operator_sum<T: Real>(state: &QState<T>, op: &OperatorSum<T>) -> Result<Vec<C<T>>> {
    check_dims(state, op)?;
    let mut out = vec![c_zero(); state.dim()];
    op.apply_accumulate(state.amplitudes(), &mut out);
    Ok(out)
}

/// `⟨state| op |state⟩`.
///
/// For operators carrying the Hermitian hint the imaginary part is checked
/// against roundoff and dropped.
pub fn expectation<T: Real>(state: &QState<T>, op: &OperatorSum<T>) -> Result<C<T>> {
    let applied = apply_operator_sum(state, op)?;
    let value = inner(state.amplitudes(), &applied);
    if op.hermitian_hint() {
        let scale = T::one().max(value.re.abs());
        if value.im.abs() > T::roundoff_tol() * scale {
            return Err(Error::HermitianResidue(value.im.as_f64()));
        }
        return Ok(C::new(value.re, T::zero()));
    }
    Ok(value)
}

/// `⟨bra| op |ket⟩`.
pub fn transition_amplitude<T: Real>(bra: &QState<T>, op: &OperatorSum<T>, ket: &QState<T>) -> Result<C<T>> {
    if bra.dim() != ket.dim() {
        return Err(Error::DimensionMismatch {
            expected: ket.dim(),
            actual: bra.dim(),
        });
    }
    let applied = apply_operator_sum(ket, op)?;
    Ok(inner(bra.amplitudes(), &applied))
}

fn check_dims<T: Real>(state: &QState<T>, op: &OperatorSum<T>) -> Result<()> {
    if state.n_qubits() != op.n_qubits() {
        return Err(Error::QubitMismatch {
            expected: op.n_qubits(),
            actual: state.n_qubits(),
        });
    }
    Ok(())
}

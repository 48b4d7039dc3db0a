use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{c, c_one, c_zero, Real, C};

use super::state::qubit_bit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    Cry,
    Crz,
    X,
}

impl GateKind {
    pub fn is_controlled(self) -> bool {
        matches!(self, GateKind::Cry | GateKind::Crz)
    }

    pub fn is_parameterized(self) -> bool {
        !matches!(self, GateKind::X)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Cry => "CRY",
            GateKind::Crz => "CRZ",
            GateKind::X => "X",
        };
        f.write_str(s)
    }
}

/// A single gate. Rotations follow `R_P(φ) = exp(-i φ P / 2)`; the controlled
/// variants rotate the target when the control qubit is `|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate<T> {
    pub kind: GateKind,
    pub target: usize,
    pub control: Option<usize>,
    pub angle: T,
}

impl<T: Real> Gate<T> {
    pub fn rx(target: usize, angle: T) -> Self {
        Self { kind: GateKind::Rx, target, control: None, angle }
    }

    pub fn ry(target: usize, angle: T) -> Self {
        Self { kind: GateKind::Ry, target, control: None, angle }
    }

    pub fn rz(target: usize, angle: T) -> Self {
        Self { kind: GateKind::Rz, target, control: None, angle }
    }

    pub fn cry(control: usize, target: usize, angle: T) -> Self {
        Self { kind: GateKind::Cry, target, control: Some(control), angle }
    }

    pub fn crz(control: usize, target: usize, angle: T) -> Self {
        Self { kind: GateKind::Crz, target, control: Some(control), angle }
    }

    pub fn x(target: usize) -> Self {
        Self { kind: GateKind::X, target, control: None, angle: T::zero() }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.target >= n_qubits {
            return Err(Error::InvalidGate(format!(
                "{} target {} out of range for {n_qubits} qubits",
                self.kind, self.target
            )));
        }
        match (self.kind.is_controlled(), self.control) {
            (true, None) => Err(Error::InvalidGate(format!("{} requires a control qubit", self.kind))),
            (false, Some(_)) => Err(Error::InvalidGate(format!("{} takes no control qubit", self.kind))),
            (true, Some(ctrl)) if ctrl >= n_qubits => Err(Error::InvalidGate(format!(
                "{} control {ctrl} out of range for {n_qubits} qubits",
                self.kind
            ))),
            (true, Some(ctrl)) if ctrl == self.target => Err(Error::InvalidGate(format!(
                "{} control equals target ({ctrl})",
                self.kind
            ))),
            _ => Ok(()),
        }
    }

    /// The gate with its rotation reversed; `X` is its own inverse.
    pub fn inverse(&self) -> Self {
        Self { angle: -self.angle, ..*self }
    }

    /// 2×2 matrix of the rotation applied to the target, `[[a, b], [c, d]]`.
    pub fn target_matrix(&self) -> [[C<T>; 2]; 2] {
        let half = self.angle / T::lit(2.0);
        let (s, co) = half.sin_cos();
        let z = T::zero();
        match self.kind {
            GateKind::Rx => [[c(co, z), c(z, -s)], [c(z, -s), c(co, z)]],
            GateKind::Ry | GateKind::Cry => [[c(co, z), c(-s, z)], [c(s, z), c(co, z)]],
            GateKind::Rz | GateKind::Crz => [[c(co, -s), c_zero()], [c_zero(), c(co, s)]],
            GateKind::X => [[c_zero(), c_one()], [c_one(), c_zero()]],
        }
    }

    /// Dense matrix on the gate's own qubits: 2×2 for single-qubit gates and
    /// 4×4 in `|control, target⟩` order for controlled gates.
    pub fn local_matrix(&self) -> ComplexMatrix<T> {
        let m = self.target_matrix();
        if self.kind.is_controlled() {
            let mut out = ComplexMatrix::identity(4);
            for i in 0..2 {
                for j in 0..2 {
                    out[(2 + i, 2 + j)] = m[i][j];
                }
            }
            out
        } else {
            let mut out = ComplexMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    out[(i, j)] = m[i][j];
                }
            }
            out
        }
    }
}

/// Ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T> {
    n_qubits: usize,
    gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate<T>>) -> Result<Self> {
        let circuit = Self { n_qubits, gates };
        circuit.validate()?;
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.n_qubits))
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn num_parameters(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_parameterized()).count()
    }
}

/// Applies `gate` to `amps` in place. The gate must already be validated.
pub fn apply_gate_in_place<T: Real>(amps: &mut [C<T>], n_qubits: usize, gate: &Gate<T>) {
    let tbit = qubit_bit(n_qubits, gate.target);
    let cbit = gate.control.map_or(0, |q| qubit_bit(n_qubits, q));
    let m = gate.target_matrix();
    for i0 in 0..amps.len() {
        if i0 & tbit != 0 || i0 & cbit != cbit {
            continue;
        }
        let i1 = i0 | tbit;
        let (a0, a1) = (amps[i0], amps[i1]);
        amps[i0] = m[0][0] * a0 + m[0][1] * a1;
        amps[i1] = m[1][0] * a0 + m[1][1] * a1;
    }
}

/// `⟨bra| G |ket⟩` where `G` is the Hermitian generator of the gate's
/// rotation: the Pauli on the target, times `|1⟩⟨1|` on the control for the
/// controlled kinds. So `∂R(φ)/∂φ = (-i/2)·G·R(φ)`.
pub fn generator_overlap<T: Real>(bra: &[C<T>], ket: &[C<T>], n_qubits: usize, gate: &Gate<T>) -> C<T> {
    let tbit = qubit_bit(n_qubits, gate.target);
    let cbit = gate.control.map_or(0, |q| qubit_bit(n_qubits, q));
    let i_unit = c(T::zero(), T::one());
    let mut acc = c_zero();
    for i0 in 0..ket.len() {
        if i0 & tbit != 0 || i0 & cbit != cbit {
            continue;
        }
        let i1 = i0 | tbit;
        let (k0, k1) = (ket[i0], ket[i1]);
        let (g0, g1) = match gate.kind {
            GateKind::Rx => (k1, k0),
            GateKind::Ry | GateKind::Cry => (-i_unit * k1, i_unit * k0),
            GateKind::Rz | GateKind::Crz => (k0, -k1),
            GateKind::X => (c_zero(), c_zero()),
        };
        acc += bra[i0].conj() * g0 + bra[i1].conj() * g1;
    }
    acc
}

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qsim::{Circuit, Gate};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnsatzVariant {
    CrzRyCircular,
    CrzRyLinear,
    RyRxCryCircular,
    RyRxCryLinear,
}

impl AnsatzVariant {
    pub const ALL: [AnsatzVariant; 4] = [
        AnsatzVariant::CrzRyCircular,
        AnsatzVariant::CrzRyLinear,
        AnsatzVariant::RyRxCryCircular,
        AnsatzVariant::RyRxCryLinear,
    ];

    pub fn is_circular(self) -> bool {
        matches!(self, AnsatzVariant::CrzRyCircular | AnsatzVariant::RyRxCryCircular)
    }

    fn rotations_per_qubit(self) -> usize {
        match self {
            AnsatzVariant::CrzRyCircular | AnsatzVariant::CrzRyLinear => 1,
            AnsatzVariant::RyRxCryCircular | AnsatzVariant::RyRxCryLinear => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AnsatzVariant::CrzRyCircular => "crz_ry_circular",
            AnsatzVariant::CrzRyLinear => "crz_ry_linear",
            AnsatzVariant::RyRxCryCircular => "ry_rx_cry_circular",
            AnsatzVariant::RyRxCryLinear => "ry_rx_cry_linear",
        }
    }
}

impl fmt::Display for AnsatzVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown ansatz variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AnsatzSpec {
    pub variant: AnsatzVariant,
    pub n_qubits: usize,
    pub layers: usize,
}

impl AnsatzSpec {
    pub fn new(variant: AnsatzVariant, n_qubits: usize, layers: usize) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::InvalidArgument(format!("ansatz needs at least 2 qubits, got {n_qubits}")));
        }
        if layers == 0 {
            return Err(Error::InvalidArgument("ansatz needs at least one layer".into()));
        }
        Ok(Self { variant, n_qubits, layers })
    }

    /// Entangler `(control, target)` pairs of one layer.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n_qubits;
        let mut pairs: Vec<_> = (0..n - 1).map(|j| (j, j + 1)).collect();
        if self.variant.is_circular() {
            pairs.push((n - 1, 0));
        }
        pairs
    }

    pub fn parameters_per_layer(&self) -> usize {
        self.variant.rotations_per_qubit() * self.n_qubits + self.pairs().len()
    }

    pub fn num_parameters(&self) -> usize {
        self.layers * self.parameters_per_layer()
    }
}

/// Inverse CDF of `π·Beta(½, ½)`: `π sin²(πu/2)`.
pub fn arcsine_angle<T: Real>(u: T) -> T {
    let s = (T::PI() * u / T::lit(2.0)).sin();
    T::PI() * s * s
}

/// Initial parameters drawn i.i.d. from `π·Beta(½, ½)`, reproducible per seed.
pub fn init_params<T: Real>(spec: &AnsatzSpec, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..spec.num_parameters())
        .map(|_| arcsine_angle(T::lit(rng.gen::<f64>())))
        .collect()
}

/// Per layer: rotations on every qubit, then the entanglers; parameters are
/// consumed in that order.
pub fn build_ansatz<T: Real>(spec: &AnsatzSpec, theta: &[T]) -> Result<Circuit<T>> {
    if theta.len() != spec.num_parameters() {
        return Err(Error::DimensionMismatch { expected: spec.num_parameters(), actual: theta.len() });
    }
    let n = spec.n_qubits;
    let pairs = spec.pairs();
    let mut gates = Vec::with_capacity(theta.len());
    let mut it = theta.iter().copied();
    let mut next = || it.next().expect("length checked");
    for _ in 0..spec.layers {
        match spec.variant {
            AnsatzVariant::CrzRyCircular | AnsatzVariant::CrzRyLinear => {
                for q in 0..n {
                    gates.push(Gate::ry(q, next()));
                }
                for &(c, t) in &pairs {
                    gates.push(Gate::crz(c, t, next()));
                }
            }
            AnsatzVariant::RyRxCryCircular | AnsatzVariant::RyRxCryLinear => {
                for q in 0..n {
                    gates.push(Gate::ry(q, next()));
                    gates.push(Gate::rx(q, next()));
                }
                for &(c, t) in &pairs {
                    gates.push(Gate::cry(c, t, next()));
                }
            }
        }
    }
    Circuit::from_gates(n, gates)
}

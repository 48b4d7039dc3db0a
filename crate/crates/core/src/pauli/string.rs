use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qsim::qubit_bit;
use crate::scalar::{c, Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Tensor product of single-qubit Paulis, stored as bit masks: the operator
/// is `i^{#Y} · X^x · Z^z` with `x`/`z` indexed like basis states
/// (qubit 0 is the most significant bit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: usize,
    z: usize,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, x: 0, z: 0 }
    }

    pub fn from_masks(n_qubits: usize, x: usize, z: usize) -> Self {
        let full = full_mask(n_qubits);
        debug_assert!(x & !full == 0 && z & !full == 0);
        Self { n_qubits, x, z }
    }

    /// All-`I`/`Z` string whose `Z` positions are the set bits of `z`.
    pub fn z_string(n_qubits: usize, z: usize) -> Self {
        Self::from_masks(n_qubits, 0, z)
    }

    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Self {
        let bit = qubit_bit(n_qubits, qubit);
        match p {
            Pauli::I => Self::identity(n_qubits),
            Pauli::X => Self::from_masks(n_qubits, bit, 0),
            Pauli::Y => Self::from_masks(n_qubits, bit, bit),
            Pauli::Z => Self::from_masks(n_qubits, 0, bit),
        }
    }

    pub fn from_symbols(symbols: &[Pauli]) -> Self {
        let n = symbols.len();
        let (mut x, mut z) = (0, 0);
        for (q, p) in symbols.iter().enumerate() {
            let bit = qubit_bit(n, q);
            match p {
                Pauli::I => {}
                Pauli::X => x |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                }
                Pauli::Z => z |= bit,
            }
        }
        Self { n_qubits: n, x, z }
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn x_mask(&self) -> usize {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> usize {
        self.z
    }

    pub fn symbols(&self) -> Vec<Pauli> {
        (0..self.n_qubits)
            .map(|q| {
                let bit = qubit_bit(self.n_qubits, q);
                match (self.x & bit != 0, self.z & bit != 0) {
                    (false, false) => Pauli::I,
                    (true, false) => Pauli::X,
                    (true, true) => Pauli::Y,
                    (false, true) => Pauli::Z,
                }
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    #[inline]
    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `P|j⟩ = phase · |j ⊕ x⟩`; the phase is returned as a power of `i`.
    #[inline]
    pub fn act(&self, j: usize) -> (usize, u8) {
        let sign = ((j & self.z).count_ones() & 1) * 2;
        (j ^ self.x, ((self.y_count() + sign) % 4) as u8)
    }

    /// `self · rhs = i^k · product`, returned as `(k, product)`.
    pub fn mul(&self, rhs: &Self) -> (u8, Self) {
        assert_eq!(self.n_qubits, rhs.n_qubits, "Pauli strings on different registers");
        let product = Self {
            n_qubits: self.n_qubits,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
        };
        // i^{y1} X^{x1} Z^{z1} · i^{y2} X^{x2} Z^{z2}
        //   = i^{y1+y2} (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
        let swap_sign = 2 * ((self.z & rhs.x).count_ones() as i64 % 2);
        let k = self.y_count() as i64 + rhs.y_count() as i64 - product.y_count() as i64 + swap_sign;
        (k.rem_euclid(4) as u8, product)
    }

    /// Same string placed on the lowest `n_qubits` of a larger register.
    pub fn embed_low(&self, n_total: usize) -> Self {
        assert!(n_total >= self.n_qubits);
        Self { n_qubits: n_total, ..*self }
    }
}

/// `i^k` as a complex number.
#[inline]
pub fn i_pow<T: Real>(k: u8) -> C<T> {
    let (o, z) = (T::one(), T::zero());
    match k % 4 {
        0 => c(o, z),
        1 => c(z, o),
        2 => c(-o, z),
        _ => c(z, -o),
    }
}

#[inline]
pub(crate) fn full_mask(n_qubits: usize) -> usize {
    if n_qubits >= usize::BITS as usize {
        usize::MAX
    } else {
        (1usize << n_qubits) - 1
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.symbols() {
            let ch = match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|ch| match ch {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidArgument(format!("unknown Pauli symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli string".into()));
        }
        Ok(Self::from_symbols(&symbols))
    }
}

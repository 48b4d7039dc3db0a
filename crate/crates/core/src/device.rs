//! One-dimensional effective-mass device: potential profile, contact
//! self-energies and assembly of `A(E) x = b`, either for one energy or as
//! the block-diagonal multi-energy system.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli::{OperatorSum, SplitDiagonal, TightBindingSystem, DEFAULT_REL_THRESHOLD};
use crate::qsim::{qubit_bit, qubits_for_len};
use crate::scalar::{c, c_real, c_zero, Real, C};

/// `ħ²/2m₀` in eV·nm², from CODATA 2018 `ħ`, `m_e` and `e`.
pub const HBAR2_OVER_2M0_EV_NM2: f64 = {
    const HBAR: f64 = 1.054_571_817e-34;
    const M_E: f64 = 9.109_383_701_5e-31;
    const Q_E: f64 = 1.602_176_634e-19;
    HBAR * HBAR / (2.0 * M_E) / Q_E * 1e18
};

/// Largest register the block assembly accepts (`2^20` amplitudes).
pub const MAX_SYSTEM_QUBITS: usize = 20;

/// Largest register for which [`AssembledSystem::a_dense`] builds a matrix.
pub const DENSE_SYSTEM_QUBITS: usize = 11;

/// `t₀ = ħ²/(2 m* a²)` in eV for `m* = m_rel·m₀` and spacing `a_nm`.
pub fn hopping_energy<T: Real>(m_rel: T, a_nm: T) -> Result<T> {
    if !(m_rel > T::zero() && a_nm > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "effective mass and spacing must be positive, got m_rel={m_rel}, a={a_nm}"
        )));
    }
    Ok(T::lit(HBAR2_OVER_2M0_EV_NM2) / (m_rel * a_nm * a_nm))
}

/// Retarded self-energy of a semi-infinite 1D lead with onsite `u` and
/// hopping `t0`: `Σ = −t₀ e^{ika}` with `E − U = 2t₀(1 − cos ka)`.
///
/// Inside the band the outgoing branch (`Im Σ ≤ 0`) is taken; outside it
/// the decaying evanescent branch, which makes `Σ` real.
pub fn lead_self_energy<T: Real>(energy: T, u: T, t0: T) -> C<T> {
    let one = T::one();
    let x = one - (energy - u) / (T::lit(2.0) * t0);
    let eika = if x.abs() <= one {
        c(x, (one - x * x).sqrt())
    } else if x > one {
        c_real(x - (x * x - one).sqrt())
    } else {
        c_real(x + (x * x - one).sqrt())
    };
    -eika * t0
}

/// Broadening `Γ = i(Σ − Σ†) = −2 Im Σ`.
pub fn broadening<T: Real>(sigma: C<T>) -> T {
    T::lit(-2.0) * sigma.im
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialProfile<T> {
    Flat { value: T },
    /// `U_b [σ((x − x₁)/w) − σ((x − x₂)/w)]` with the logistic `σ`.
    LogisticBarrier { height: T, x1: T, x2: T, width: T },
    Samples(Vec<T>),
}

/// Samples a profile at the site centres `(i + ½)·a`, in eV.
pub fn build_potential<T: Real>(profile: &PotentialProfile<T>, n_sites: usize, length_nm: T) -> Result<Vec<T>> {
    let a = length_nm / T::from_usize_lossy(n_sites);
    let half = T::lit(0.5);
    match profile {
        PotentialProfile::Flat { value } => Ok(vec![*value; n_sites]),
        PotentialProfile::LogisticBarrier { height, x1, x2, width } => {
            if !(*width > T::zero()) {
                return Err(Error::InvalidArgument(format!("barrier width must be positive, got {width}")));
            }
            if !(*x2 > *x1) {
                return Err(Error::InvalidArgument(format!("barrier needs x2 > x1, got x1={x1}, x2={x2}")));
            }
            let sigma = |z: T| T::one() / (T::one() + (-z).exp());
            Ok((0..n_sites)
                .map(|i| {
                    let x = (T::from_usize_lossy(i) + half) * a;
                    *height * (sigma((x - *x1) / *width) - sigma((x - *x2) / *width))
                })
                .collect())
        }
        PotentialProfile::Samples(v) => {
            if v.len() != n_sites {
                return Err(Error::DimensionMismatch { expected: n_sites, actual: v.len() });
            }
            Ok(v.clone())
        }
    }
}

/// Which identity column a solve targets: source injects at site 0, drain
/// at site `N − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    Source,
    Drain,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::Source => "source",
            Column::Drain => "drain",
        })
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "source" => Ok(Column::Source),
            "drain" => Ok(Column::Drain),
            other => Err(Error::InvalidArgument(format!("unknown column {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviceSpec<T> {
    pub n_sites: usize,
    pub length_nm: T,
    pub m_rel: T,
    /// `E_sub` at each site, eV.
    pub potential: Vec<T>,
    /// Onsite energies `(U_source, U_drain)` of the two leads, eV.
    pub contact_onsite: (T, T),
    pub eta: T,
    pub rel_threshold: T,
}

impl<T: Real> DeviceSpec<T> {
    pub fn new(n_sites: usize, length_nm: T, m_rel: T, potential: Vec<T>, contact_onsite: (T, T), eta: T) -> Result<Self> {
        let spec = Self {
            n_sites,
            length_nm,
            m_rel,
            potential,
            contact_onsite,
            eta,
            rel_threshold: T::lit(DEFAULT_REL_THRESHOLD),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// 10 nm, 32 sites, `m* = 0.4 m₀`, leads at 0 eV and a 0.2 eV logistic
    /// barrier between 3 and 7 nm with 0.5 nm edges.
    pub fn default_nanosheet() -> Self {
        let length = T::lit(10.0);
        let profile = PotentialProfile::LogisticBarrier {
            height: T::lit(0.2),
            x1: T::lit(3.0),
            x2: T::lit(7.0),
            width: T::lit(0.5),
        };
        let potential = build_potential(&profile, 32, length).expect("default profile is valid");
        Self::new(32, length, T::lit(0.4), potential, (T::zero(), T::zero()), T::lit(1e-4))
            .expect("default device is valid")
    }

    /// Zero potential, default length/mass scaled to `n_sites`.
    pub fn flat(n_sites: usize, length_nm: T, m_rel: T, eta: T) -> Result<Self> {
        Self::new(n_sites, length_nm, m_rel, vec![T::zero(); n_sites], (T::zero(), T::zero()), eta)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.n_sites.is_power_of_two() || self.n_sites < 4 {
            return Err(Error::InvalidArgument(format!(
                "n_sites must be a power of two and at least 4, got {}",
                self.n_sites
            )));
        }
        if self.potential.len() != self.n_sites {
            return Err(Error::DimensionMismatch { expected: self.n_sites, actual: self.potential.len() });
        }
        if !(self.eta > T::zero()) {
            return Err(Error::InvalidArgument(format!("eta must be positive, got {}", self.eta)));
        }
        if !(self.length_nm > T::zero()) {
            return Err(Error::InvalidArgument(format!("length must be positive, got {}", self.length_nm)));
        }
        if !(self.rel_threshold >= T::zero() && self.rel_threshold < T::one()) {
            return Err(Error::InvalidArgument(format!("threshold {} outside [0, 1)", self.rel_threshold)));
        }
        hopping_energy(self.m_rel, self.a_nm())?;
        Ok(())
    }

    pub fn site_qubits(&self) -> usize {
        self.n_sites.trailing_zeros() as usize
    }

    pub fn a_nm(&self) -> T {
        self.length_nm / T::from_usize_lossy(self.n_sites)
    }

    pub fn t0(&self) -> T {
        hopping_energy(self.m_rel, self.a_nm()).expect("validated device")
    }

    /// `(Σ₁(E), Σ₂(E))`.
    pub fn self_energies(&self, energy: T) -> (C<T>, C<T>) {
        let t0 = self.t0();
        (
            lead_self_energy(energy, self.contact_onsite.0, t0),
            lead_self_energy(energy, self.contact_onsite.1, t0),
        )
    }

    /// Site index of a column's unit source.
    pub fn column_site(&self, column: Column) -> usize {
        match column {
            Column::Source => 0,
            Column::Drain => self.n_sites - 1,
        }
    }

    /// `A(E) = (E + iη)I − H₀ − V − Σ₁ − Σ₂`, assembled entry by entry.
    pub fn dense_a(&self, energy: T) -> ComplexMatrix<T> {
        let n = self.n_sites;
        let t0 = self.t0();
        let (s1, s2) = self.self_energies(energy);
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(energy - T::lit(2.0) * t0 - self.potential[i], self.eta);
            if i + 1 < n {
                m[(i, i + 1)] = c_real(t0);
                m[(i + 1, i)] = c_real(t0);
            }
        }
        m[(0, 0)] -= s1;
        m[(n - 1, n - 1)] -= s2;
        m
    }

    /// `(E + iη) − V` as the smooth part, `−Σ` at the two ends as spikes.
    fn delta(&self, energy: T) -> (Vec<C<T>>, [(usize, C<T>); 2]) {
        let z = c(energy, self.eta);
        let (s1, s2) = self.self_energies(energy);
        let smooth = self.potential.iter().map(|&v| z - v).collect();
        (smooth, [(0, -s1), (self.n_sites - 1, -s2)])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyGrid<T> {
    energies: Vec<T>,
}

impl<T: Real> EnergyGrid<T> {
    pub fn new(energies: Vec<T>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::InvalidArgument("energy grid is empty".into()));
        }
        Ok(Self { energies })
    }

    /// `count` evenly spaced points including both ends.
    pub fn linspace(start: T, stop: T, count: usize) -> Result<Self> {
        if count == 1 {
            return Self::new(vec![start]);
        }
        let step = (stop - start) / T::from_usize_lossy(count.max(1) - 1);
        Self::new((0..count).map(|i| start + step * T::from_usize_lossy(i)).collect())
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// Uniform spacing, or zero for a single point.
    pub fn spacing(&self) -> T {
        if self.len() < 2 {
            return T::zero();
        }
        (self.energies[self.len() - 1] - self.energies[0]) / T::from_usize_lossy(self.len() - 1)
    }
}

/// Right-hand side of the linear system and its preparation unitary `U_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsSpec {
    /// `|b⟩ = |index⟩`; `U_b` is the bit-flip mask `X^{index}`.
    Basis(usize),
    /// Uniform superposition of `|e, c, site(c)⟩` over all energies `e` and
    /// both columns, with `site(source) = 0` and `site(drain) = 11…1`.
    /// `U_b = CNOT(column → every site qubit) · H^{⊗(energy, column)}`.
    Block { energy_qubits: usize, site_qubits: usize },
}

impl RhsSpec {
    pub fn n_qubits_hint(&self) -> Option<usize> {
        match *self {
            RhsSpec::Basis(_) => None,
            RhsSpec::Block { energy_qubits, site_qubits } => Some(energy_qubits + 1 + site_qubits),
        }
    }

    /// Unnormalized right-hand side.
    pub fn raw<T: Real>(&self, n_qubits: usize) -> Vec<C<T>> {
        let dim = 1usize << n_qubits;
        let mut b = vec![c_zero(); dim];
        match *self {
            RhsSpec::Basis(i) => b[i] = c_real(T::one()),
            RhsSpec::Block { energy_qubits, site_qubits } => {
                let n_sites = 1usize << site_qubits;
                for e in 0..(1usize << energy_qubits) {
                    b[(e * 2) * n_sites] = c_real(T::one());
                    b[(e * 2 + 1) * n_sites + n_sites - 1] = c_real(T::one());
                }
            }
        }
        b
    }

    /// `‖raw‖₂`.
    pub fn norm<T: Real>(&self) -> T {
        match *self {
            RhsSpec::Basis(_) => T::one(),
            RhsSpec::Block { energy_qubits, .. } => T::from_usize_lossy(2usize << energy_qubits).sqrt(),
        }
    }

    /// `|b⟩ = raw / ‖raw‖`.
    pub fn state<T: Real>(&self, n_qubits: usize) -> Vec<C<T>> {
        let inv = T::one() / self.norm::<T>();
        self.raw::<T>(n_qubits).into_iter().map(|x| x * inv).collect()
    }

    /// Applies `U_b` (or `U_b†`) in place.
    pub fn apply_ub<T: Real>(&self, amps: &mut [C<T>], n_qubits: usize, adjoint: bool) {
        match *self {
            RhsSpec::Basis(mask) => {
                let tmp = amps.to_vec();
                for (i, &a) in tmp.iter().enumerate() {
                    amps[i ^ mask] = a;
                }
            }
            RhsSpec::Block { energy_qubits, site_qubits } => {
                let column_qubit = energy_qubits;
                if adjoint {
                    apply_column_cnot(amps, n_qubits, column_qubit, site_qubits);
                    for q in 0..=column_qubit {
                        apply_hadamard(amps, n_qubits, q);
                    }
                } else {
                    for q in 0..=column_qubit {
                        apply_hadamard(amps, n_qubits, q);
                    }
                    apply_column_cnot(amps, n_qubits, column_qubit, site_qubits);
                }
            }
        }
    }
}

fn apply_hadamard<T: Real>(amps: &mut [C<T>], n_qubits: usize, q: usize) {
    let bit = qubit_bit(n_qubits, q);
    let s = T::FRAC_1_SQRT_2();
    for i0 in 0..amps.len() {
        if i0 & bit == 0 {
            let i1 = i0 | bit;
            let (a, b) = (amps[i0], amps[i1]);
            amps[i0] = (a + b) * s;
            amps[i1] = (a - b) * s;
        }
    }
}

/// Flips every site bit when the column qubit is set; self-inverse.
fn apply_column_cnot<T: Real>(amps: &mut [C<T>], n_qubits: usize, column_qubit: usize, site_qubits: usize) {
    let cbit = qubit_bit(n_qubits, column_qubit);
    let site_mask = (1usize << site_qubits) - 1;
    for i in 0..amps.len() {
        let j = i ^ site_mask;
        if i & cbit != 0 && i < j {
            amps.swap(i, j);
        }
    }
}

/// One diagonal block of an assembled system: rows `offset..offset + size`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemBlock<T> {
    pub offset: usize,
    pub energy: Option<T>,
    pub column: Option<Column>,
    /// Independently assembled dense block.
    pub matrix: ComplexMatrix<T>,
}

/// `A x = b` in operator-sum form together with everything needed to map
/// the normalized variational solution back to physical units.
#[derive(Debug, Clone)]
pub struct AssembledSystem<T> {
    pub n_qubits: usize,
    pub a: OperatorSum<T>,
    pub adag_a: OperatorSum<T>,
    pub rhs: RhsSpec,
    /// Divisor turning the raw right-hand side into the unit vector `|b⟩`.
    pub b_norm: T,
    pub blocks: Vec<SystemBlock<T>>,
    /// Walsh truncation error of the diagonal.
    pub truncation_error: T,
}

impl<T: Real> AssembledSystem<T> {
    /// Wraps an arbitrary `A` (e.g. synthetic test systems). `A†A` is formed
    /// densely, so this is limited to small registers.
    pub fn from_operator(a: OperatorSum<T>, rhs: RhsSpec) -> Result<Self> {
        let n = a.n_qubits();
        let dense = a.to_dense()?;
        let gram = &dense.adjoint() * &dense;
        let adag_a = dense_to_sum(&gram)?.with_hermitian_hint(true);
        Ok(Self {
            n_qubits: n,
            b_norm: rhs.norm(),
            a,
            adag_a,
            rhs,
            blocks: vec![SystemBlock { offset: 0, energy: None, column: None, matrix: dense }],
            truncation_error: T::zero(),
        })
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn b_state(&self) -> Vec<C<T>> {
        self.rhs.state(self.n_qubits)
    }

    pub fn b_raw(&self) -> Vec<C<T>> {
        self.rhs.raw(self.n_qubits)
    }

    /// Block-diagonal dense `A`; refused above [`DENSE_SYSTEM_QUBITS`].
    pub fn a_dense(&self) -> Result<ComplexMatrix<T>> {
        if self.n_qubits > DENSE_SYSTEM_QUBITS {
            return Err(Error::SizeGuard { n_qubits: self.n_qubits, limit: DENSE_SYSTEM_QUBITS });
        }
        let mats: Vec<_> = self.blocks.iter().map(|b| b.matrix.clone()).collect();
        Ok(ComplexMatrix::block_diagonal(&mats))
    }
}

/// Dense matrix as a sum of dyads, row-major, nonzero entries only.
fn dense_to_sum<T: Real>(m: &ComplexMatrix<T>) -> Result<OperatorSum<T>> {
    let n = qubits_for_len(m.rows())?;
    let mut op = OperatorSum::new(n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)];
            if v != c_zero() {
                op.push(crate::pauli::OperatorTerm::dyad(n, i, j, v))?;
            }
        }
    }
    Ok(op)
}

/// Single-energy system for one Green's-function column.
pub fn assemble_system<T: Real>(device: &DeviceSpec<T>, energy: T, column: Column) -> Result<AssembledSystem<T>> {
    device.validate()?;
    let n = device.site_qubits();
    let (smooth, spikes) = device.delta(energy);
    let delta = SplitDiagonal::new(smooth, spikes.to_vec())?;
    let sys = TightBindingSystem::new(n, n, device.t0(), delta, device.rel_threshold)?;
    let (a, truncation_error) = sys.a_operator()?;
    let adag_a = sys.adag_a_operator()?;
    Ok(AssembledSystem {
        n_qubits: n,
        a,
        adag_a,
        rhs: RhsSpec::Basis(device.column_site(column)),
        b_norm: T::one(),
        blocks: vec![SystemBlock {
            offset: 0,
            energy: Some(energy),
            column: Some(column),
            matrix: device.dense_a(energy),
        }],
        truncation_error,
    })
}

/// Block-diagonal system over an energy grid; register layout
/// `(energy | column | site)` from most to least significant.
pub fn assemble_block_system<T: Real>(device: &DeviceSpec<T>, grid: &EnergyGrid<T>) -> Result<AssembledSystem<T>> {
    device.validate()?;
    let n_e = grid.len();
    if !n_e.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("energy count must be a power of two, got {n_e}")));
    }
    let site_qubits = device.site_qubits();
    let energy_qubits = n_e.trailing_zeros() as usize;
    let n = energy_qubits + 1 + site_qubits;
    if n > MAX_SYSTEM_QUBITS {
        return Err(Error::SizeGuard { n_qubits: n, limit: MAX_SYSTEM_QUBITS });
    }
    let n_sites = device.n_sites;
    let mut smooth = Vec::with_capacity(1 << n);
    let mut spikes = Vec::new();
    let mut blocks = Vec::new();
    for &energy in grid.energies() {
        let (s, sp) = device.delta(energy);
        let dense = device.dense_a(energy);
        for column in [Column::Source, Column::Drain] {
            let offset = smooth.len();
            spikes.extend(sp.iter().map(|&(k, v)| (offset + k, v)));
            smooth.extend_from_slice(&s);
            blocks.push(SystemBlock { offset, energy: Some(energy), column: Some(column), matrix: dense.clone() });
        }
    }
    debug_assert_eq!(smooth.len(), n_e * 2 * n_sites);
    let delta = SplitDiagonal::new(smooth, spikes)?;
    let sys = TightBindingSystem::new(n, site_qubits, device.t0(), delta, device.rel_threshold)?;
    let (a, truncation_error) = sys.a_operator()?;
    let adag_a = sys.adag_a_operator()?;
    let rhs = RhsSpec::Block { energy_qubits, site_qubits };
    Ok(AssembledSystem { n_qubits: n, a, adag_a, b_norm: rhs.norm(), rhs, blocks, truncation_error })
}

/// Qubits needed for `n_sites × n_energies × 2` amplitudes.
pub fn block_qubit_count(n_sites: usize, n_energies: usize) -> usize {
    let dim = n_sites * n_energies * 2;
    (usize::BITS - (dim - 1).leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_constant() {
        assert!((HBAR2_OVER_2M0_EV_NM2 - 0.038099821114859614).abs() < 1e-15);
        assert_eq!(hopping_energy(1.0, 1.0).unwrap(), HBAR2_OVER_2M0_EV_NM2);
    }

    #[test]
    fn hopping_scaling() {
        let t: f64 = hopping_energy(0.4, 0.3).unwrap();
        assert!((hopping_energy(0.4, 0.15).unwrap() / t - 4.0).abs() < 1e-12);
        assert!((hopping_energy(0.8, 0.3).unwrap() / t - 0.5).abs() < 1e-12);
        assert!(hopping_energy(0.0, 1.0).is_err());
        assert!(hopping_energy(1.0, -1.0).is_err());
    }

    #[test]
    fn self_energy_band_points() {
        let t0: f64 = 0.9;
        assert_eq!(lead_self_energy(0.0, 0.0, t0), c_real(-t0));
        let mid = lead_self_energy(2.0 * t0, 0.0, t0);
        assert!((mid - c(0.0, -t0)).norm() < 1e-15);
        assert!((lead_self_energy(4.0 * t0, 0.0, t0) - c_real(t0)).norm() < 1e-15);
        let below = lead_self_energy(-0.3, 0.0, t0);
        assert!(below.im == 0.0 && below.re > -t0 && below.re < 0.0);
        let above = lead_self_energy(4.0 * t0 + 0.5, 0.0, t0);
        assert!(above.im == 0.0 && above.re > 0.0 && above.re < t0);
        assert_eq!(broadening(below), 0.0);
    }

    #[test]
    fn logistic_barrier_values() {
        let p = PotentialProfile::LogisticBarrier { height: 0.2, x1: 3.0, x2: 7.0, width: 0.5 };
        let v: Vec<f64> = build_potential(&p, 32, 10.0).unwrap();
        assert!((v[15] - 0.19247081763871754).abs() < 1e-15);
        assert!((v[15] - v[16]).abs() < 1e-15);
        let s = |z: f64| 1.0 / (1.0 + (-z).exp());
        assert!((0.2 * (s(4.0) - s(-4.0)) - 0.19280551601516338).abs() < 1e-15);
        let zero = PotentialProfile::LogisticBarrier { height: 0.0, x1: 3.0, x2: 7.0, width: 0.5 };
        assert!(build_potential(&zero, 32, 10.0).unwrap().iter().all(|&x| x == 0.0));
        let bad = PotentialProfile::LogisticBarrier { height: 0.2, x1: 7.0, x2: 3.0, width: 0.5 };
        assert!(build_potential(&bad, 32, 10.0).is_err());
        let bad = PotentialProfile::LogisticBarrier { height: 0.2, x1: 3.0, x2: 7.0, width: 0.0 };
        assert!(build_potential(&bad, 32, 10.0).is_err());
        assert_eq!(build_potential(&PotentialProfile::Flat { value: 0.0 }, 32, 10.0).unwrap(), vec![0.0; 32]);
    }

    #[test]
    fn default_device() {
        let d = DeviceSpec::<f64>::default_nanosheet();
        assert_eq!(d.site_qubits(), 5);
        assert!((d.t0() - 0.9753554205404061).abs() < 1e-13);
    }

    #[test]
    fn block_ub_prepares_b() {
        let rhs = RhsSpec::Block { energy_qubits: 2, site_qubits: 3 };
        let n = 6;
        let mut zero = vec![c_zero::<f64>(); 1 << n];
        zero[0] = c_real(1.0);
        rhs.apply_ub(&mut zero, n, false);
        let b = rhs.state::<f64>(n);
        for (x, y) in zero.iter().zip(&b) {
            assert!((x - y).norm() < 1e-15);
        }
        rhs.apply_ub(&mut zero, n, true);
        assert!((zero[0] - c_real(1.0)).norm() < 1e-15);
    }

    #[test]
    fn qubit_count_for_paper_scale() {
        assert_eq!(block_qubit_count(32, 32), 11);
        assert_eq!(block_qubit_count(8, 4), 6);
    }
}

//! Classical reference: dense LU solves, Green's-function columns and the
//! transport quantities derived from them.

use rayon::prelude::*;

use crate::device::{broadening, AssembledSystem, Column, DeviceSpec, EnergyGrid};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{c_real, c_zero, Real, C};

/// Boltzmann constant, eV/K.
pub const K_B_EV: f64 = 8.617_333_262e-5;

/// Conductance quantum `2q²/h` in siemens; multiplies `Σ J ΔE[eV]` to give
/// amperes.
pub const CONDUCTANCE_QUANTUM: f64 = 7.748_091_729_863_649e-5;

/// Relative pivot magnitude below which a matrix is treated as singular.
pub const PIVOT_GUARD: f64 = 1e-14;

/// `P A = L U` with partial (row) pivoting, packed in one matrix.
#[derive(Debug, Clone)]
pub struct LuFactorization<T> {
    lu: ComplexMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> LuFactorization<T> {
    pub fn new(a: &ComplexMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { expected: a.rows(), actual: a.cols() });
        }
        let n = a.rows();
        let scale = a.max_abs();
        let guard = T::lit(PIVOT_GUARD) * scale;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pmax > guard) || scale == T::zero() {
                return Err(Error::Singular { pivot: pmax.as_f64(), scale: scale.as_f64() });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == c_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, b: &[C<T>]) -> Result<Vec<C<T>>> {
        let n = self.lu.rows();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: b.len() });
        }
        let mut x: Vec<C<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        Ok(x)
    }
}

/// `x = A⁻¹ b` by LU with partial pivoting.
pub fn solve_dense<T: Real>(a: &ComplexMatrix<T>, b: &[C<T>]) -> Result<Vec<C<T>>> {
    LuFactorization::new(a)?.solve(b)
}

/// Solution of an assembled system for its raw (unnormalized) right-hand
/// side, solved block by block.
pub fn solve_system<T: Real>(system: &AssembledSystem<T>) -> Result<Vec<C<T>>> {
    let b = system.b_raw();
    let mut x = vec![c_zero(); system.dim()];
    for block in &system.blocks {
        let size = block.matrix.rows();
        let range = block.offset..block.offset + size;
        let xb = solve_dense(&block.matrix, &b[range.clone()])?;
        x[range].copy_from_slice(&xb);
    }
    Ok(x)
}

/// `(G(:, 0), G(:, N−1))` at energy `E`.
pub fn green_columns<T: Real>(device: &DeviceSpec<T>, energy: T) -> Result<(Vec<C<T>>, Vec<C<T>>)> {
    let lu = LuFactorization::new(&device.dense_a(energy))?;
    let n = device.n_sites;
    let unit = |k: usize| {
        let mut e = vec![c_zero(); n];
        e[k] = c_real(T::one());
        e
    };
    let src = lu.solve(&unit(device.column_site(Column::Source)))?;
    let drn = lu.solve(&unit(device.column_site(Column::Drain)))?;
    Ok((src, drn))
}

/// `T = Γ₁Γ₂|G(0, N−1)|²` from the drain column.
pub fn transmission<T: Real>(g_drain: &[C<T>], gamma1: T, gamma2: T) -> T {
    gamma1 * gamma2 * g_drain[0].norm_sqr()
}

/// `[Γ₁|G(x,0)|² + Γ₂|G(x,N−1)|²] / 2π` per site.
pub fn ldos<T: Real>(g_source: &[C<T>], g_drain: &[C<T>], gamma1: T, gamma2: T) -> Vec<T> {
    let two_pi = T::lit(2.0) * T::PI();
    g_source
        .iter()
        .zip(g_drain)
        .map(|(s, d)| (gamma1 * s.norm_sqr() + gamma2 * d.norm_sqr()) / two_pi)
        .collect()
}

pub fn fermi<T: Real>(energy: T, mu: T, temperature_k: T) -> T {
    let kt = T::lit(K_B_EV) * temperature_k;
    T::one() / (T::one() + ((energy - mu) / kt).exp())
}

/// Contact bias and temperature for current evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bias<T> {
    pub mu1: T,
    pub mu2: T,
    pub temperature_k: T,
}

impl<T: Real> Default for Bias<T> {
    fn default() -> Self {
        Self { mu1: T::lit(0.1), mu2: T::zero(), temperature_k: T::lit(300.0) }
    }
}

/// `J(E) = T(E)[f(E, μ₁) − f(E, μ₂)]`.
pub fn current_spectrum<T: Real>(transmission: &[T], energies: &[T], bias: &Bias<T>) -> Result<Vec<T>> {
    if !(bias.temperature_k > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "temperature must be positive, got {}",
            bias.temperature_k
        )));
    }
    if transmission.len() != energies.len() {
        return Err(Error::DimensionMismatch { expected: energies.len(), actual: transmission.len() });
    }
    Ok(transmission
        .iter()
        .zip(energies)
        .map(|(&t, &e)| t * (fermi(e, bias.mu1, bias.temperature_k) - fermi(e, bias.mu2, bias.temperature_k)))
        .collect())
}

/// `(2q²/h) Σ J ΔE`, in amperes for energies in eV.
pub fn total_current<T: Real>(spectrum: &[T], de: T) -> T {
    T::lit(CONDUCTANCE_QUANTUM) * spectrum.iter().copied().sum::<T>() * de
}

/// `(1/dim) Σ |x_i − y_i|²`.
pub fn mse<T: Real>(x: &[C<T>], y: &[C<T>]) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: y.len(), actual: x.len() });
    }
    if x.is_empty() {
        return Ok(T::zero());
    }
    let s: T = x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum();
    Ok(s / T::from_usize_lossy(x.len()))
}

/// `mse(x, reference)` divided by the reference's mean squared magnitude.
pub fn relative_mse<T: Real>(x: &[C<T>], reference: &[C<T>]) -> Result<T> {
    let scale = mse(reference, &vec![c_zero(); reference.len()])?;
    Ok(mse(x, reference)? / scale)
}

/// Oracle transport quantities at one energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyPoint<T> {
    pub energy: T,
    pub g_source: Vec<C<T>>,
    pub g_drain: Vec<C<T>>,
    pub gamma1: T,
    pub gamma2: T,
    pub transmission: T,
    pub ldos: Vec<T>,
}

impl<T: Real> EnergyPoint<T> {
    /// Post-processes a pair of Green's-function columns at `energy`.
    pub fn from_columns(device: &DeviceSpec<T>, energy: T, g_source: Vec<C<T>>, g_drain: Vec<C<T>>) -> Self {
        let (s1, s2) = device.self_energies(energy);
        let (gamma1, gamma2) = (broadening(s1), broadening(s2));
        Self {
            energy,
            transmission: transmission(&g_drain, gamma1, gamma2),
            ldos: ldos(&g_source, &g_drain, gamma1, gamma2),
            g_source,
            g_drain,
            gamma1,
            gamma2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportResult<T> {
    pub points: Vec<EnergyPoint<T>>,
    pub current_spectrum: Vec<T>,
    pub total_current: T,
}

impl<T: Real> TransportResult<T> {
    pub fn from_points(points: Vec<EnergyPoint<T>>, de: T, bias: &Bias<T>) -> Result<Self> {
        let energies: Vec<T> = points.iter().map(|p| p.energy).collect();
        let t: Vec<T> = points.iter().map(|p| p.transmission).collect();
        let current_spectrum = current_spectrum(&t, &energies, bias)?;
        let total_current = total_current(&current_spectrum, de);
        Ok(Self { points, current_spectrum, total_current })
    }

    pub fn transmission(&self) -> Vec<T> {
        self.points.iter().map(|p| p.transmission).collect()
    }
}

/// Dense-oracle transport over an energy grid; energies are solved in
/// parallel and collected in grid order.
pub fn transport_sweep<T: Real>(device: &DeviceSpec<T>, grid: &EnergyGrid<T>, bias: &Bias<T>) -> Result<TransportResult<T>> {
    let points = grid
        .energies()
        .par_iter()
        .map(|&e| {
            let (s, d) = green_columns(device, e)?;
            Ok(EnergyPoint::from_columns(device, e, s, d))
        })
        .collect::<Result<Vec<_>>>()?;
    TransportResult::from_points(points, grid.spacing(), bias)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn lu_examples() {
        let id = ComplexMatrix::<f64>::identity(3);
        let e0 = vec![c_real(1.0), c_zero(), c_zero()];
        assert_eq!(solve_dense(&id, &e0).unwrap(), e0);
        let two = id.scale(c_real(2.0));
        assert_eq!(solve_dense(&two, &e0).unwrap()[0], c_real(0.5));
    }

    #[test]
    fn lu_needs_pivoting() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let x = solve_dense(&a, &[c_real(2.0), c_real(3.0)]).unwrap();
        assert_eq!(x, vec![c_real(3.0), c_real(2.0)]);
    }

    #[test]
    fn singular_refused() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(solve_dense(&a, &[c_real(1.0), c_real(0.0)]), Err(Error::Singular { .. })));
        let z = ComplexMatrix::<f64>::zeros(2, 2);
        assert!(solve_dense(&z, &[c_real(1.0), c_real(0.0)]).is_err());
    }

    #[test]
    fn mse_examples() {
        let x = vec![c_real(1.0), c_zero()];
        let y = vec![c_zero(), c_real(1.0)];
        assert_eq!(mse(&x, &x).unwrap(), 0.0);
        assert_eq!(mse(&x, &y).unwrap(), 1.0);
        let z = vec![c(0.3, -0.1), c(2.0, 0.5)];
        assert_eq!(mse(&x, &z).unwrap(), mse(&z, &x).unwrap());
        assert!(mse(&x, &z[..1]).is_err());
    }

    #[test]
    fn current_limits() {
        let e = [-0.1, 0.02, 0.05, 0.08, 0.2];
        let t = [1.0; 5];
        let eq = Bias { mu1: 0.1, mu2: 0.1, temperature_k: 300.0 };
        assert!(current_spectrum(&t, &e, &eq).unwrap().iter().all(|&j| j == 0.0));
        let cold = Bias { mu1: 0.1, mu2: 0.0, temperature_k: 1e-3 };
        let j = current_spectrum(&t, &e, &cold).unwrap();
        assert_eq!(j, vec![0.0, 1.0, 1.0, 1.0, 0.0]);
        let swapped = Bias { mu1: 0.0, mu2: 0.1, temperature_k: 1e-3 };
        let js = current_spectrum(&t, &e, &swapped).unwrap();
        assert!(j.iter().zip(&js).all(|(a, b)| *a == -*b));
        assert!(current_spectrum(&t, &e, &Bias { temperature_k: 0.0, ..cold }).is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Floor applied to the local cost before taking its logarithm.
pub const LOG_CLAMP: f64 = 1e-12;

/// Smallest `⟨ψ|A†A|ψ⟩` accepted by the ratio costs.
pub const MIN_NORM: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostKind {
    Global,
    Local,
    Energy,
    NormalizedResidual,
    Hybrid,
}

impl CostKind {
    pub const ALL: [CostKind; 5] = [
        CostKind::Global,
        CostKind::Local,
        CostKind::Energy,
        CostKind::NormalizedResidual,
        CostKind::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CostKind::Global => "global",
            CostKind::Local => "local",
            CostKind::Energy => "energy",
            CostKind::NormalizedResidual => "normalized_residual",
            CostKind::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for CostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown cost kind {s:?}")))
    }
}

/// Expectation values every cost is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostPrimitives<T> {
    /// `⟨b|A|ψ⟩`.
    pub u: C<T>,
    /// `⟨ψ|A†A|ψ⟩`.
    pub v: T,
    /// `⟨φ|(I − P̄)|φ⟩` with `φ = U_b†A|ψ⟩`, so that `w = v − w_bar`.
    pub w_bar: T,
    /// `⟨b|ψ⟩`.
    pub overlap_b: C<T>,
    /// `⟨ψ|A|ψ⟩`.
    pub a_expectation: C<T>,
}

impl<T: Real> CostPrimitives<T> {
    /// `⟨φ|P̄|φ⟩`.
    pub fn w(&self) -> T {
        self.v - self.w_bar
    }
}

/// Partial derivatives of a cost with respect to the real primitives
/// `(Re u, Im u, v, w_bar, Re⟨b|ψ⟩, Re⟨ψ|A|ψ⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CostPartials<T> {
    pub u_re: T,
    pub u_im: T,
    pub v: T,
    pub w_bar: T,
    pub overlap_re: T,
    pub a_expectation_re: T,
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidArgument(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(())
}

fn check_v<T: Real>(v: T) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(v >= T::lit(MIN_NORM)) {
        return Err(Error::DegenerateState(v.as_f64()));
    }
    Ok(())
}

/// `1 − w/v`, evaluated as `w_bar / v`.
fn local<T: Real>(p: &CostPrimitives<T>) -> T {
    p.w_bar / p.v
}

pub fn evaluate_cost<T: Real>(kind: CostKind, p: &CostPrimitives<T>, alpha: T) -> Result<T> {
    check_alpha(alpha)?;
    let value = match kind {
        CostKind::Energy => {
            let ae = p.a_expectation.re;
            if !(ae.abs() > T::zero()) {
                return Err(Error::DegenerateState(ae.as_f64()));
            }
            let ob = p.overlap_b.re;
            T::lit(-2.0) * ob * ob / ae
        }
        _ => {
            check_v(p.v)?;
            match kind {
                CostKind::Global => T::one() - p.u.norm_sqr() / p.v,
                CostKind::Local => local(p),
                CostKind::NormalizedResidual => -p.u.re * p.u.re / p.v,
                CostKind::Hybrid => {
                    let nr = -p.u.re * p.u.re / p.v;
                    let cl = local(p).max(T::lit(LOG_CLAMP));
                    alpha * nr + (T::one() - alpha) * cl.ln()
                }
                CostKind::Energy => unreachable!(),
            }
        }
    };
    if !value.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(value)
}

pub fn cost_partials<T: Real>(kind: CostKind, p: &CostPrimitives<T>, alpha: T) -> Result<CostPartials<T>> {
    check_alpha(alpha)?;
    let two = T::lit(2.0);
    let zero = CostPartials::default();
    if kind == CostKind::Energy {
        let ae = p.a_expectation.re;
        if !(ae.abs() > T::zero()) {
            return Err(Error::DegenerateState(ae.as_f64()));
        }
        let ob = p.overlap_b.re;
        return Ok(CostPartials {
            overlap_re: T::lit(-4.0) * ob / ae,
            a_expectation_re: two * ob * ob / (ae * ae),
            ..zero
        });
    }
    check_v(p.v)?;
    let v = p.v;
    let nr = CostPartials { u_re: -two * p.u.re / v, v: p.u.re * p.u.re / (v * v), ..zero };
    Ok(match kind {
        CostKind::Global => CostPartials {
            u_re: -two * p.u.re / v,
            u_im: -two * p.u.im / v,
            v: p.u.norm_sqr() / (v * v),
            ..zero
        },
        CostKind::Local => CostPartials { w_bar: T::one() / v, v: -p.w_bar / (v * v), ..zero },
        CostKind::NormalizedResidual => nr,
        CostKind::Hybrid => {
            let cl = local(p);
            let (dl_w, dl_v) = if cl > T::lit(LOG_CLAMP) {
                let s = (T::one() - alpha) / cl;
                (s / v, -s * p.w_bar / (v * v))
            } else {
                (T::zero(), T::zero())
            };
            CostPartials {
                u_re: alpha * nr.u_re,
                v: alpha * nr.v + dl_v,
                w_bar: dl_w,
                ..zero
            }
        }
        CostKind::Energy => unreachable!(),
    })
}

/// `k* = Re(u)/v`, the real scale minimizing `k²v − 2k Re(u)`.
pub fn k_star<T: Real>(p: &CostPrimitives<T>) -> Result<T> {
    if !(p.v > T::zero()) {
        return Err(Error::DegenerateState(p.v.as_f64()));
    }
    Ok(p.u.re / p.v)
}

/// `C_NR(k) = k²v − k(u + ū)`.
pub fn residual_at_scale<T: Real>(p: &CostPrimitives<T>, k: T) -> T {
    k * k * p.v - T::lit(2.0) * k * p.u.re
}

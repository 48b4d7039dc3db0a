//! Dense BFGS with a strong-Wolfe line search.

use crate::error::Result;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BfgsOptions<T> {
    pub max_iterations: usize,
    /// Stop when `‖∇f‖_∞` falls below this.
    pub gradient_tolerance: T,
    /// Stop when a step satisfying both Wolfe conditions changes `f` by
    /// less than this.
    pub cost_tolerance: T,
    /// Sufficient-decrease constant.
    pub c1: T,
    /// Curvature constant.
    pub c2: T,
    pub max_line_search: usize,
}

impl<T: Real> Default for BfgsOptions<T> {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            gradient_tolerance: T::lit(1e-8),
            cost_tolerance: T::lit(1e-12),
            c1: T::lit(1e-4),
            c2: T::lit(0.9),
            max_line_search: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    GradientTolerance,
    CostTolerance,
    MaxIterations,
    LineSearchFailed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BfgsResult<T> {
    /// Best point visited.
    pub x: Vec<T>,
    pub f: T,
    /// Initial value followed by every accepted value.
    pub history: Vec<T>,
    pub iterations: usize,
    pub evaluations: usize,
    pub termination: Termination,
}

impl<T> BfgsResult<T> {
    pub fn converged(&self) -> bool {
        matches!(self.termination, Termination::GradientTolerance | Termination::CostTolerance)
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

fn inf_norm<T: Real>(a: &[T]) -> T {
    a.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

fn axpy<T: Real>(x: &[T], alpha: T, d: &[T]) -> Vec<T> {
    x.iter().zip(d).map(|(a, b)| *a + alpha * *b).collect()
}

struct Sample<T> {
    alpha: T,
    f: T,
    g: Vec<T>,
    slope: T,
    wolfe: bool,
}

struct LineSearch<'a, T, F> {
    f: &'a mut F,
    x: &'a [T],
    d: &'a [T],
    f0: T,
    slope0: T,
    opts: &'a BfgsOptions<T>,
    evaluations: usize,
}

impl<T: Real, F: FnMut(&[T]) -> Result<(T, Vec<T>)>> LineSearch<'_, T, F> {
    fn sample(&mut self, alpha: T) -> Result<Sample<T>> {
        self.evaluations += 1;
        let (f, g) = (self.f)(&axpy(self.x, alpha, self.d))?;
        let slope = dot(&g, self.d);
        Ok(Sample { alpha, f, g, slope, wolfe: false })
    }

    fn armijo(&self, s: &Sample<T>) -> bool {
        s.f <= self.f0 + self.opts.c1 * s.alpha * self.slope0
    }

    fn curvature(&self, s: &Sample<T>) -> bool {
        s.slope.abs() <= -self.opts.c2 * self.slope0
    }

    /// Bracketing phase; returns a point satisfying the strong Wolfe
    /// conditions, or `None`.
    fn run(&mut self, alpha0: T) -> Result<Option<Sample<T>>> {
        let mut prev = Sample { alpha: T::zero(), f: self.f0, g: Vec::new(), slope: self.slope0, wolfe: false };
        let mut alpha = alpha0;
        let alpha_max = T::lit(1e3) * alpha0.max(T::one());
        for i in 0..self.opts.max_line_search {
            let cur = match self.sample(alpha) {
                Ok(s) if s.f.is_finite() => s,
                _ => {
                    // step left the domain; retreat
                    alpha = (prev.alpha + alpha) / T::lit(2.0);
                    continue;
                }
            };
            if !self.armijo(&cur) || (i > 0 && cur.f >= prev.f) {
                return self.zoom(prev, cur);
            }
            if self.curvature(&cur) {
                return Ok(Some(Sample { wolfe: true, ..cur }));
            }
            if cur.slope >= T::zero() {
                return self.zoom(cur, prev);
            }
            if alpha >= alpha_max {
                return Ok(None);
            }
            prev = cur;
            alpha = (alpha * T::lit(2.0)).min(alpha_max);
        }
        Ok(None)
    }

    fn zoom(&mut self, mut lo: Sample<T>, mut hi: Sample<T>) -> Result<Option<Sample<T>>> {
        for _ in 0..self.opts.max_line_search {
            let (a, b) = (lo.alpha.min(hi.alpha), lo.alpha.max(hi.alpha));
            let width = b - a;
            if width <= T::epsilon() * b.max(T::one()) {
                break;
            }
            let mut trial = cubic_min(&lo, &hi).unwrap_or((a + b) / T::lit(2.0));
            let margin = T::lit(0.1) * width;
            if !(trial > a + margin && trial < b - margin) {
                trial = (a + b) / T::lit(2.0);
            }
            let cur = self.sample(trial)?;
            if !cur.f.is_finite() || !self.armijo(&cur) || cur.f >= lo.f {
                hi = cur;
                continue;
            }
            if self.curvature(&cur) {
                return Ok(Some(Sample { wolfe: true, ..cur }));
            }
            if cur.slope * (hi.alpha - lo.alpha) >= T::zero() {
                hi = lo;
            }
            lo = cur;
        }
        // accept the best sufficient-decrease point even if curvature failed
        if lo.alpha > T::zero() && lo.f < self.f0 && !lo.g.is_empty() {
            return Ok(Some(lo));
        }
        Ok(None)
    }
}

/// Minimizer of the cubic interpolating values and slopes at two points.
fn cubic_min<T: Real>(p: &Sample<T>, q: &Sample<T>) -> Option<T> {
    let d1 = p.slope + q.slope - T::lit(3.0) * (p.f - q.f) / (p.alpha - q.alpha);
    let disc = d1 * d1 - p.slope * q.slope;
    if disc < T::zero() {
        return None;
    }
    let d2 = (q.alpha - p.alpha).signum() * disc.sqrt();
    let denom = q.slope - p.slope + T::lit(2.0) * d2;
    if denom == T::zero() {
        return None;
    }
    let t = q.alpha - (q.alpha - p.alpha) * (q.slope + d2 - d1) / denom;
    t.is_finite().then_some(t)
}

/// Minimizes `f`, which returns the value and gradient at a point.
pub fn minimize<T, F>(mut f: F, x0: &[T], opts: &BfgsOptions<T>) -> Result<BfgsResult<T>>
where
    T: Real,
    F: FnMut(&[T]) -> Result<(T, Vec<T>)>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let (mut fx, mut g) = f(&x)?;
    let mut evaluations = 1;
    let mut history = vec![fx];
    let mut h = identity(n);
    let mut fresh = true;

    let mut iterations = 0;
    let termination = loop {
        if inf_norm(&g) < opts.gradient_tolerance {
            break Termination::GradientTolerance;
        }
        if iterations >= opts.max_iterations {
            break Termination::MaxIterations;
        }
        let mut d: Vec<T> = mat_vec(&h, &g).into_iter().map(|v| -v).collect();
        let mut slope = dot(&g, &d);
        if !(slope < T::zero()) {
            h = identity(n);
            fresh = true;
            d = g.iter().map(|v| -*v).collect();
            slope = dot(&g, &d);
        }
        let alpha0 = if fresh { first_step(&d) } else { T::one() };
        let mut ls = LineSearch { f: &mut f, x: &x, d: &d, f0: fx, slope0: slope, opts, evaluations: 0 };
        let mut found = ls.run(alpha0)?;
        evaluations += ls.evaluations;
        if found.is_none() && !fresh {
            // restart from steepest descent
            h = identity(n);
            fresh = true;
            d = g.iter().map(|v| -*v).collect();
            slope = dot(&g, &d);
            let mut ls = LineSearch { f: &mut f, x: &x, d: &d, f0: fx, slope0: slope, opts, evaluations: 0 };
            found = ls.run(first_step(&d))?;
            evaluations += ls.evaluations;
        }
        let Some(step) = found else {
            break Termination::LineSearchFailed;
        };
        iterations += 1;

        let x_new = axpy(&x, step.alpha, &d);
        let s: Vec<T> = d.iter().map(|v| *v * step.alpha).collect();
        let y: Vec<T> = step.g.iter().zip(&g).map(|(a, b)| *a - *b).collect();
        let f_old = fx;
        let wolfe = step.wolfe;
        x = x_new;
        fx = step.f;
        g = step.g;
        history.push(fx);

        let sy = dot(&s, &y);
        if sy > T::epsilon() * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if fresh {
                let scale = sy / dot(&y, &y);
                h = identity(n);
                for i in 0..n {
                    h[i * n + i] = scale;
                }
                fresh = false;
            }
            bfgs_update(&mut h, &s, &y, sy);
        }

        // a step cut short at a kink says nothing about convergence
        if wolfe && (f_old - fx).abs() < opts.cost_tolerance {
            break Termination::CostTolerance;
        }
    };

    Ok(BfgsResult { x, f: fx, history, iterations, evaluations, termination })
}

/// Trial step for a steepest-descent direction: moves the largest
/// component by one unit.
fn first_step<T: Real>(d: &[T]) -> T {
    let m = inf_norm(d);
    if m > T::zero() {
        T::one() / m
    } else {
        T::one()
    }
}

fn identity<T: Real>(n: usize) -> Vec<T> {
    let mut h = vec![T::zero(); n * n];
    for i in 0..n {
        h[i * n + i] = T::one();
    }
    h
}

fn mat_vec<T: Real>(h: &[T], v: &[T]) -> Vec<T> {
    let n = v.len();
    (0..n).map(|i| dot(&h[i * n..(i + 1) * n], v)).collect()
}

/// `H ← (I − ρsyᵀ) H (I − ρysᵀ) + ρssᵀ`.
fn bfgs_update<T: Real>(h: &mut [T], s: &[T], y: &[T], sy: T) {
    let n = s.len();
    let rho = T::one() / sy;
    let hy = mat_vec(h, y);
    let yhy = dot(y, &hy);
    let coef = (T::one() + rho * yhy) * rho;
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] += coef * s[i] * s[j] - rho * (hy[i] * s[j] + s[i] * hy[j]);
        }
    }
}

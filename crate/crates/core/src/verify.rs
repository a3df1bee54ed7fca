//! Residual checks for the GG equations, the reduced equations, the Gauss
//! relations and ODE, and numeric independence of solution families.
//!
//! A relative residual is the largest absolute residual divided by the
//! largest modulus of any summand of the same equation over the sample set.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{GgError, Result};
use crate::linalg::CMatrix;
use crate::model::{build_reduced_system, ReducedSystem, VectorSet};
use crate::sampling::{GgSample, ReducedSample};
use crate::scalar::{max_norm, Cx, Real};
use crate::series::{gauss_expansion, SeriesMode, SeriesSpec};

/// Default relative tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<T> {
    pub equation_id: String,
    pub max_abs_residual: T,
    pub max_rel_residual: T,
    pub sample_points: usize,
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Real> ResidualReport<T> {
    /// Combines reports of the same equation by taking maxima.
    pub fn merge(&self, other: &Self) -> Self {
        let max_rel = self.max_rel_residual.max(other.max_rel_residual);
        let tolerance = self.tolerance.min(other.tolerance);
        ResidualReport {
            equation_id: self.equation_id.clone(),
            max_abs_residual: self.max_abs_residual.max(other.max_abs_residual),
            max_rel_residual: max_rel,
            sample_points: self.sample_points + other.sample_points,
            tolerance,
            pass: max_rel <= tolerance,
        }
    }
}

struct Accumulator<T> {
    id: String,
    max_abs: T,
    scale: T,
    points: usize,
}

impl<T: Real> Accumulator<T> {
    fn new(id: &str) -> Self {
        Self {
            id: id.to_string(),
            max_abs: T::zero(),
            scale: T::zero(),
            points: 0,
        }
    }

    fn add(&mut self, residual: Cx<T>, summands: &[Cx<T>]) {
        let r = residual.norm();
        self.max_abs = if r.is_nan() { T::infinity() } else { self.max_abs.max(r) };
        self.scale = self.scale.max(max_norm(summands));
    }

    fn finish(self, tolerance: T) -> ResidualReport<T> {
        let rel = self.max_abs / self.scale.max(T::of(1e-300));
        ResidualReport {
            equation_id: self.id,
            max_abs_residual: self.max_abs,
            max_rel_residual: rel,
            sample_points: self.points,
            tolerance,
            pass: rel <= tolerance,
        }
    }
}

/// How derivatives of black-box evaluators are taken.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivativeMode {
    /// Central difference with step `relative_step * max(|z|, 1)`.
    FiniteDifference { relative_step: f64 },
    /// Trapezoidal Cauchy integral on a circle of radius
    /// `relative_radius * |z|` (or `relative_radius` at `z = 0`).
    Cauchy { relative_radius: f64, nodes: usize },
}

impl Default for DerivativeMode {
    fn default() -> Self {
        DerivativeMode::FiniteDifference { relative_step: 1e-6 }
    }
}

/// Derivative of a holomorphic function of one variable.
pub fn derivative<T: Real>(f: &dyn Fn(Cx<T>) -> Result<Cx<T>>, z: Cx<T>, mode: DerivativeMode) -> Result<Cx<T>> {
    match mode {
        DerivativeMode::FiniteDifference { relative_step } => {
            let h = T::of(relative_step) * z.norm().max(T::one());
            Ok((f(z + h)? - f(z - h)?) / (h * T::of(2.0)))
        }
        DerivativeMode::Cauchy { relative_radius, nodes } => {
            let rho = if z.is_zero() {
                T::of(relative_radius)
            } else {
                T::of(relative_radius) * z.norm()
            };
            let mut acc = Complex::zero();
            for k in 0..nodes {
                let t = T::PI() * T::of(2.0 * k as f64 / nodes as f64);
                let e = Complex::new(t.cos(), t.sin());
                acc += f(z + e * rho)? / e;
            }
            Ok(acc / (rho * T::of_usize(nodes)))
        }
    }
}

fn render<T: Real>(label: &str, v: &[Cx<T>]) -> String {
    let parts: Vec<String> = v.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
    format!("{label}=({})", parts.join(", "))
}

fn at_sample<T: Real>(beta: &[Cx<T>], args: &[Cx<T>], e: GgError) -> GgError {
    GgError::at(format!("{} {}", render("β", beta), render("a", args)), e)
}

/// Evaluator `f(β, a)`.
pub type Evaluator<'a, T> = &'a dyn Fn(&[Cx<T>], &[Cx<T>]) -> Result<Cx<T>>;

fn partial<T: Real>(f: Evaluator<'_, T>, beta: &[Cx<T>], a: &[Cx<T>], j: usize, mode: DerivativeMode) -> Result<Cx<T>> {
    let g = |z: Cx<T>| {
        let mut b = a.to_vec();
        b[j] = z;
        f(beta, &b)
    };
    derivative(&g, a[j], mode)
}

/// Reports for (GG1) `∂f/∂a_j = f(β - ω^j)`, (GG2)
/// `sum a_j ∂f/∂a_j ω^j = β f`, and (GG3) `sum a_j f(β - ω^j) ω^j = β f`.
#[derive(Clone, Debug, PartialEq)]
pub struct GgSystemReport<T> {
    pub gg1: ResidualReport<T>,
    pub gg2: ResidualReport<T>,
    pub gg3: ResidualReport<T>,
}

impl<T: Real> GgSystemReport<T> {
    pub fn pass(&self) -> bool {
        self.gg1.pass && self.gg2.pass && self.gg3.pass
    }

    pub fn reports(&self) -> [&ResidualReport<T>; 3] {
        [&self.gg1, &self.gg2, &self.gg3]
    }
}

pub fn check_gg_system<T: Real>(
    f: Evaluator<'_, T>,
    set: &VectorSet<T>,
    samples: &[GgSample<T>],
    mode: DerivativeMode,
    tolerance: T,
) -> Result<GgSystemReport<T>> {
    let (mut gg1, mut gg2, mut gg3) = (Accumulator::new("GG1"), Accumulator::new("GG2"), Accumulator::new("GG3"));
    let n = set.dim();
    for s in samples {
        let wrap = |e| at_sample(&s.beta, &s.a, e);
        let value = f(&s.beta, &s.a).map_err(wrap)?;
        let mut lhs2 = vec![Complex::<T>::zero(); n];
        let mut lhs3 = vec![Complex::<T>::zero(); n];
        let mut terms2 = Vec::new();
        let mut terms3 = Vec::new();
        for j in 0..set.len() {
            let w = set.vector(j);
            let shifted_beta = crate::scalar::sub(&s.beta, w);
            let shifted = f(&shifted_beta, &s.a).map_err(wrap)?;
            let d = partial(f, &s.beta, &s.a, j, mode).map_err(wrap)?;
            gg1.add(d - shifted, &[d, shifted]);
            for (p, wp) in w.iter().enumerate() {
                let t2 = s.a[j] * d * wp;
                let t3 = s.a[j] * shifted * wp;
                lhs2[p] += t2;
                lhs3[p] += t3;
                terms2.push(t2);
                terms3.push(t3);
            }
        }
        for p in 0..n {
            let rhs = s.beta[p] * value;
            terms2.push(rhs);
            terms3.push(rhs);
        }
        for p in 0..n {
            let rhs = s.beta[p] * value;
            gg2.add(lhs2[p] - rhs, &terms2);
            gg3.add(lhs3[p] - rhs, &terms3);
        }
        gg1.points += 1;
        gg2.points += 1;
        gg3.points += 1;
    }
    Ok(GgSystemReport {
        gg1: gg1.finish(tolerance),
        gg2: gg2.finish(tolerance),
        gg3: gg3.finish(tolerance),
    })
}

/// Basis of `L^⊥ = {ν : <ν, ℓ> = 0 for ℓ in L}` inside `C^dim`.
pub fn orthogonal_complement<T: Real>(basis: &[Vec<Cx<T>>], dim: usize) -> Vec<Vec<Cx<T>>> {
    let m = if basis.is_empty() {
        CMatrix::zeros(1, dim)
    } else {
        CMatrix::from_rows(basis)
    };
    m.kernel(T::of(crate::model::RANK_TOL))
}

/// Reports for the system attached to a subspace `L ⊂ C^N`:
/// (alt1) `∂F/∂a_i = F(γ - e_i)`, (alt2) `F(γ + ℓ) = F(γ)` for `ℓ in L`,
/// (alt3) `sum ν_i a_i F(γ - e_i) = <ν, γ> F` for `ν in L^⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceSystemReport<T> {
    pub alt1: ResidualReport<T>,
    pub alt2: ResidualReport<T>,
    pub alt3: ResidualReport<T>,
}

impl<T: Real> SubspaceSystemReport<T> {
    pub fn pass(&self) -> bool {
        self.alt1.pass && self.alt2.pass && self.alt3.pass
    }
}

/// `samples[s].beta` holds `γ in C^N`.
pub fn check_subspace_system<T: Real>(
    f: Evaluator<'_, T>,
    l_basis: &[Vec<Cx<T>>],
    samples: &[GgSample<T>],
    mode: DerivativeMode,
    tolerance: T,
) -> Result<SubspaceSystemReport<T>> {
    let (mut alt1, mut alt2, mut alt3) = (Accumulator::new("alt1"), Accumulator::new("alt2"), Accumulator::new("alt3"));
    for s in samples {
        let nn = s.a.len();
        if s.beta.len() != nn {
            return Err(GgError::InvalidInput(format!(
                "γ has {} entries, expected {nn}",
                s.beta.len()
            )));
        }
        let wrap = |e| at_sample(&s.beta, &s.a, e);
        let value = f(&s.beta, &s.a).map_err(wrap)?;
        let mut shifted = Vec::with_capacity(nn);
        for i in 0..nn {
            let mut g = s.beta.clone();
            g[i] -= T::one();
            let fs = f(&g, &s.a).map_err(wrap)?;
            let d = partial(f, &s.beta, &s.a, i, mode).map_err(wrap)?;
            alt1.add(d - fs, &[d, fs]);
            shifted.push(fs);
        }
        let mut shifts: Vec<Vec<Cx<T>>> = l_basis.to_vec();
        if l_basis.len() > 1 {
            let combo = l_basis.iter().enumerate().fold(vec![Complex::zero(); nn], |acc, (q, l)| {
                crate::scalar::add(&acc, &crate::scalar::scale(Complex::new(T::of(0.5 + 0.25 * q as f64), T::of(0.1)), l))
            });
            shifts.push(combo);
        }
        for l in &shifts {
            let g = crate::scalar::add(&s.beta, l);
            let fl = f(&g, &s.a).map_err(wrap)?;
            alt2.add(fl - value, &[fl, value]);
        }
        for nu in orthogonal_complement(l_basis, nn) {
            let mut lhs = Complex::<T>::zero();
            let mut terms = Vec::with_capacity(nn + 1);
            for i in 0..nn {
                let t = nu[i] * s.a[i] * shifted[i];
                lhs += t;
                terms.push(t);
            }
            let rhs = crate::scalar::dot(&nu, &s.beta) * value;
            terms.push(rhs);
            alt3.add(lhs - rhs, &terms);
        }
        alt1.points += 1;
        alt2.points += 1;
        alt3.points += 1;
    }
    Ok(SubspaceSystemReport {
        alt1: alt1.finish(tolerance),
        alt2: alt2.finish(tolerance),
        alt3: alt3.finish(tolerance),
    })
}

/// Reports for (red1) `β_i F + sum_j l^j_i x_j ∂F/∂x_j = F(β - ω^i)`, `i in I`,
/// and (red2) `∂F/∂x_j = F(β - ω^j)`, `j in J`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSystemReport<T> {
    pub red1: ResidualReport<T>,
    pub red2: ResidualReport<T>,
}

impl<T: Real> ReducedSystemReport<T> {
    pub fn pass(&self) -> bool {
        self.red1.pass && self.red2.pass
    }
}

/// Exact term-wise check of a truncated series. The shifted series in
/// (red2) is truncated one degree lower, so both sides carry the same terms.
pub fn check_reduced_system<T: Real>(
    spec: &SeriesSpec<T>,
    samples: &[ReducedSample<T>],
    tolerance: T,
) -> Result<ReducedSystemReport<T>> {
    let system = spec.system();
    let base = system.base();
    let set = system.set();
    let m = spec.truncation();
    let lower = spec.clone().with_truncation(m.saturating_sub(1));
    let (mut red1, mut red2) = (Accumulator::new("red1"), Accumulator::new("red2"));
    for s in samples {
        let wrap = |e| at_sample(&s.beta, &s.x, e);
        let e = spec.expand(&s.beta, &s.x, true).map_err(wrap)?;
        let beta_i = base.coords(&s.beta);
        for (p, &i) in base.indices().iter().enumerate() {
            let shifted = crate::scalar::sub(&s.beta, set.vector(i));
            let rhs = spec.expand(&shifted, &s.x, false).map_err(wrap)?.value;
            let mut terms = vec![beta_i[p] * e.value, rhs];
            let mut lhs = beta_i[p] * e.value;
            for q in 0..system.r() {
                let t = system.l_base(q, p) * e.euler[q];
                lhs += t;
                terms.push(t);
            }
            red1.add(lhs - rhs, &terms);
        }
        for (q, &j) in base.complement().iter().enumerate() {
            let rhs = if m == 0 {
                Complex::zero()
            } else {
                let shifted = crate::scalar::sub(&s.beta, set.vector(j));
                lower.expand(&shifted, &s.x, false).map_err(wrap)?.value
            };
            red2.add(e.gradient[q] - rhs, &[e.gradient[q], rhs]);
        }
        red1.points += 1;
        red2.points += 1;
    }
    Ok(ReducedSystemReport {
        red1: red1.finish(tolerance),
        red2: red2.finish(tolerance),
    })
}

/// Black-box check of an evaluator `F(β, x)` with numeric derivatives.
pub fn check_reduced_system_numeric<T: Real>(
    f: Evaluator<'_, T>,
    system: &ReducedSystem<T>,
    samples: &[ReducedSample<T>],
    mode: DerivativeMode,
    tolerance: T,
) -> Result<ReducedSystemReport<T>> {
    let base = system.base();
    let set = system.set();
    let (mut red1, mut red2) = (Accumulator::new("red1"), Accumulator::new("red2"));
    for s in samples {
        let wrap = |e| at_sample(&s.beta, &s.x, e);
        let value = f(&s.beta, &s.x).map_err(wrap)?;
        let beta_i = base.coords(&s.beta);
        let grads = (0..system.r())
            .map(|q| partial(f, &s.beta, &s.x, q, mode))
            .collect::<Result<Vec<_>>>()
            .map_err(wrap)?;
        for (p, &i) in base.indices().iter().enumerate() {
            let shifted = crate::scalar::sub(&s.beta, set.vector(i));
            let rhs = f(&shifted, &s.x).map_err(wrap)?;
            let mut lhs = beta_i[p] * value;
            let mut terms = vec![lhs, rhs];
            for q in 0..system.r() {
                let t = system.l_base(q, p) * s.x[q] * grads[q];
                lhs += t;
                terms.push(t);
            }
            red1.add(lhs - rhs, &terms);
        }
        for (q, &j) in base.complement().iter().enumerate() {
            let shifted = crate::scalar::sub(&s.beta, set.vector(j));
            let rhs = f(&shifted, &s.x).map_err(wrap)?;
            red2.add(grads[q] - rhs, &[grads[q], rhs]);
        }
        red1.points += 1;
        red2.points += 1;
    }
    Ok(ReducedSystemReport {
        red1: red1.finish(tolerance),
        red2: red2.finish(tolerance),
    })
}

/// Parameters and argument of one Gauss-function sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussPoint<T> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
    pub x: Cx<T>,
}

/// Reports for the four relations
///
/// ```text
/// f' = f(a+1,b+1,c+1)
/// a f + x f(a+1,b+1,c+1) = f(a+1,b,c)
/// b f + x f(a+1,b+1,c+1) = f(a,b+1,c)
/// (c-1) f + x f(a+1,b+1,c+1) = f(a,b,c-1)
/// ```
///
/// with `f` truncated at `M` and the raised function at `M - 1`.
pub fn check_gauss_relations<T: Real>(points: &[GaussPoint<T>], truncation: u32, tolerance: T) -> Result<[ResidualReport<T>; 4]> {
    gauss_relations_with_offset(points, truncation, tolerance, Complex::zero())
}

/// As [`check_gauss_relations`], with `c` on every right-hand side replaced
/// by `c + offset` (a negative control for nonzero offsets).
pub fn gauss_relations_with_offset<T: Real>(
    points: &[GaussPoint<T>],
    truncation: u32,
    tolerance: T,
    offset: Cx<T>,
) -> Result<[ResidualReport<T>; 4]> {
    let mut acc = [
        Accumulator::new("gauss-derivative"),
        Accumulator::new("gauss-a"),
        Accumulator::new("gauss-b"),
        Accumulator::new("gauss-c"),
    ];
    let one = Complex::new(T::one(), T::zero());
    let lower = truncation.saturating_sub(1);
    for p in points {
        let (a, b, c, x) = (p.a, p.b, p.c, p.x);
        let f = |a, b, c, m| gauss_expansion(a, b, c, x, m);
        let base = f(a, b, c, truncation)?;
        let rc = c + offset;
        let raised = f(a + one, b + one, rc + one, lower)?.value;
        let fa = f(a + one, b, rc, truncation)?.value;
        let fb = f(a, b + one, rc, truncation)?.value;
        let fc = f(a, b, rc - one, truncation)?.value;
        let xr = x * raised;
        acc[0].add(base.first - raised, &[base.first, raised]);
        acc[1].add(a * base.value + xr - fa, &[a * base.value, xr, fa]);
        acc[2].add(b * base.value + xr - fb, &[b * base.value, xr, fb]);
        let cm = (c - one) * base.value;
        acc[3].add(cm + xr - fc, &[cm, xr, fc]);
        for r in acc.iter_mut() {
            r.points += 1;
        }
    }
    let [a0, a1, a2, a3] = acc;
    Ok([a0.finish(tolerance), a1.finish(tolerance), a2.finish(tolerance), a3.finish(tolerance)])
}

/// Residual of `x(1-x) f'' + (c - (a+b+1)x) f' - ab f` with term-wise derivatives.
pub fn check_gauss_ode<T: Real>(points: &[GaussPoint<T>], truncation: u32, tolerance: T) -> Result<ResidualReport<T>> {
    gauss_ode_with_offset(points, truncation, tolerance, Complex::zero())
}

/// As [`check_gauss_ode`], with `b` replaced by `b + offset` in the
/// equation's coefficients only.
pub fn gauss_ode_with_offset<T: Real>(
    points: &[GaussPoint<T>],
    truncation: u32,
    tolerance: T,
    offset: Cx<T>,
) -> Result<ResidualReport<T>> {
    let mut acc = Accumulator::new("gauss-ode");
    let one = Complex::new(T::one(), T::zero());
    for p in points {
        let e = gauss_expansion(p.a, p.b, p.c, p.x, truncation)?;
        let b = p.b + offset;
        let t1 = p.x * (one - p.x) * e.second;
        let t2 = (p.c - (p.a + b + one) * p.x) * e.first;
        let t3 = p.a * b * e.value;
        acc.add(t1 + t2 - t3, &[t1, t2, t3]);
        acc.points += 1;
    }
    Ok(acc.finish(tolerance))
}

/// A member of a candidate solution family: base indices and twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub base: Vec<usize>,
    pub k: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport<T> {
    pub rank: usize,
    pub singular_values: Vec<T>,
    /// Factor applied to the arguments outside the common base indices.
    pub scale: T,
    pub samples: Vec<GgSample<T>>,
    pub member_reports: Vec<GgSystemReport<T>>,
}

/// Numeric rank of `[f_{I,k}(β, a_s)]` over samples `a_s`.
///
/// Arguments are positive with `a_i in [0.5, 2]`; the entries outside the
/// intersection of all bases are scaled by `t = 1, 1/2, 1/4, ..` until every
/// series has a relative tail below `1e-12` at every sample.
#[allow(clippy::too_many_arguments)]
pub fn solution_family_rank<T: Real>(
    set: &VectorSet<T>,
    members: &[FamilyMember],
    beta: &[Cx<T>],
    sample_count: usize,
    truncation: u32,
    seed: u64,
    mode: DerivativeMode,
    tolerance: T,
) -> Result<FamilyReport<T>> {
    use rand::Rng;
    if members.is_empty() {
        return Err(GgError::InvalidInput("empty solution family".into()));
    }
    let specs = members
        .iter()
        .map(|m| {
            let base = set.base(&m.base)?;
            SeriesSpec::new(build_reduced_system(&base), m.k.clone(), truncation, SeriesMode::Full)
        })
        .collect::<Result<Vec<_>>>()?;
    let common: Vec<usize> = (0..set.len())
        .filter(|i| members.iter().all(|m| m.base.contains(i)))
        .collect();
    let mut rng = crate::sampling::rng(seed);
    let raw: Vec<Vec<T>> = (0..sample_count)
        .map(|_| (0..set.len()).map(|_| T::of(rng.gen_range(0.5..=2.0))).collect())
        .collect();

    let mut t = T::one();
    for _ in 0..40 {
        let samples: Vec<GgSample<T>> = raw
            .iter()
            .map(|row| GgSample {
                beta: beta.to_vec(),
                a: row
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Complex::new(if common.contains(&i) { v } else { v * t }, T::zero()))
                    .collect(),
            })
            .collect();
        let mut values = vec![vec![Complex::zero(); specs.len()]; samples.len()];
        let mut converged = true;
        'outer: for (s, sample) in samples.iter().enumerate() {
            for (c, spec) in specs.iter().enumerate() {
                let v = crate::series::gg_series_eval(spec, beta, &sample.a)?;
                if !(v.tail_estimate <= T::of(1e-12) * v.value.norm()) {
                    converged = false;
                    break 'outer;
                }
                values[s][c] = v.value;
            }
        }
        if !converged {
            t = t * T::of(0.5);
            continue;
        }
        let mut m = CMatrix::from_rows(&values);
        for c in 0..specs.len() {
            let norm = (0..samples.len()).fold(T::zero(), |acc, r| acc + m[(r, c)].norm_sqr()).sqrt();
            if norm > T::zero() {
                for r in 0..samples.len() {
                    m[(r, c)] = m[(r, c)] / norm;
                }
            }
        }
        let singular_values = m.singular_values();
        let top = singular_values.first().copied().unwrap_or(T::zero());
        let rank = singular_values.iter().filter(|&&s| s > T::of(1e-8) * top).count();
        let member_reports = specs
            .iter()
            .map(|spec| {
                let f = |b: &[Cx<T>], a: &[Cx<T>]| crate::series::gg_series_eval(spec, b, a).map(|v| v.value);
                check_gg_system(&f, set, &samples, mode, tolerance)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(FamilyReport {
            rank,
            singular_values,
            scale: t,
            samples,
            member_reports,
        });
    }
    Err(GgError::Domain("no common convergence domain found for the family".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use crate::series::{elementary_solution_full, monomial_solution_zero};

    fn c(re: f64, im: f64) -> Cx<f64> {
        cx(re, im)
    }

    #[test]
    fn derivative_modes() {
        let f = |z: Cx<f64>| Ok(z.exp() * z);
        let z = c(0.7, -0.3);
        let want = z.exp() * (z + 1.0);
        let fd = derivative(&f, z, DerivativeMode::default()).unwrap();
        assert!((fd - want).norm() < 1e-9);
        let ci = derivative(&f, z, DerivativeMode::Cauchy { relative_radius: 0.25, nodes: 64 }).unwrap();
        assert!((ci - want).norm() < 1e-14);
    }

    #[test]
    fn gauss_relations_at_origin() {
        let pts = [GaussPoint {
            a: c(0.7, 0.0),
            b: c(1.3, 0.0),
            c: c(1.9, 0.0),
            x: c(0.0, 0.0),
        }];
        for r in check_gauss_relations(&pts, 20, 1e-12).unwrap() {
            assert!(r.pass, "{r:?}");
        }
        let ode = check_gauss_ode(&pts, 20, 1e-10).unwrap();
        assert!(ode.pass);
    }

    #[test]
    fn gauss_negative_controls() {
        let pts = [GaussPoint {
            a: c(0.7, 0.0),
            b: c(1.3, 0.0),
            c: c(1.9, 0.0),
            x: c(0.2, 0.1),
        }];
        let bad = gauss_relations_with_offset(&pts, 40, 1e-9, c(0.1, 0.0)).unwrap();
        assert!(bad.iter().all(|r| !r.pass));
        assert!(!gauss_ode_with_offset(&pts, 40, 1e-8, c(0.1, 0.0)).unwrap().pass);
    }

    #[test]
    fn extreme_subspace_solutions() {
        let mode = DerivativeMode::Cauchy { relative_radius: 0.25, nodes: 64 };
        let samples = vec![GgSample {
            beta: vec![c(0.3, 0.1), c(-1.2, 0.4), c(2.5, 0.0)],
            a: vec![c(0.8, 0.0), c(1.7, 0.2), c(-0.4, 1.1)],
        }];
        let unit = |i: usize| {
            let mut e = vec![c(0.0, 0.0); 3];
            e[i] = c(1.0, 0.0);
            e
        };
        let full: Vec<Vec<Cx<f64>>> = (0..3).map(unit).collect();
        let f = |_: &[Cx<f64>], a: &[Cx<f64>]| Ok(elementary_solution_full(a));
        let r = check_subspace_system(&f, &full, &samples, mode, 1e-12).unwrap();
        assert!(r.pass(), "{r:?}");

        let positive = vec![GgSample {
            beta: vec![c(0.3, 0.1), c(-1.2, 0.4), c(2.5, 0.0)],
            a: vec![c(0.8, 0.0), c(1.7, 0.0), c(1.1, 0.0)],
        }];
        let g = |gamma: &[Cx<f64>], a: &[Cx<f64>]| monomial_solution_zero(gamma, a);
        let r = check_subspace_system(&g, &[], &positive, mode, 1e-12).unwrap();
        assert!(r.pass(), "{r:?}");
        // The exponential is not a solution for L = 0.
        assert!(!check_subspace_system(&f, &[], &positive, mode, 1e-12).unwrap().pass());
    }

    #[test]
    fn orthogonal_complement_dimensions() {
        let l = vec![vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]];
        let perp = orthogonal_complement(&l, 4);
        assert_eq!(perp.len(), 3);
        for nu in &perp {
            assert!(crate::scalar::dot(nu, &l[0]).norm() < 1e-15);
        }
        assert_eq!(orthogonal_complement::<f64>(&[], 3).len(), 3);
    }
}

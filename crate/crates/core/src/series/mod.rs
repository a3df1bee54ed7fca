//! Truncated GG-series.
//!
//! For a base `I` with complement `J`, the reduced series is
//!
//! ```text
//! F_{I,k}(β, x) = sum_(|m| <= M) u(β - sum_j m_j ω^j) / Γ_I(β - sum_j m_j ω^j + 1) x^m / m!
//! ```
//!
//! with `u(β) = exp(2πi <k, γ(β)>)`. Every term is evaluated independently
//! in log space, so large coefficients and small monomials never overflow.

mod elementary;
mod gauss;

pub use elementary::{elementary_solution_full, monomial_solution_zero};
pub use gauss::{gauss_expansion, gauss_series_eval, GaussExpansion};

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{GgError, Result};
use crate::gamma::{ln_factorial, ln_gamma, ln_rgamma};
use crate::model::ReducedSystem;
use crate::scalar::{Cx, Real};

/// Default truncation order.
pub const DEFAULT_TRUNCATION: u32 = 30;

/// A user-supplied periodic factor `u`, called with the base coordinates of
/// the shifted parameter. It must satisfy `u(w - e_i) = u(w)`.
pub type PeriodicFn<T> = Arc<dyn Fn(&[Cx<T>]) -> Cx<T> + Send + Sync>;

/// Which coefficient form and which variables a series uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    /// `F_{I,k}(β, x)` in the reduced variables.
    Reduced,
    /// `f_{I,k}(β, a) = a^β F_{I,k}(β, x(a))`.
    Full,
    /// Mixed gamma form; `first` lists the vector indices of `I₁ ⊂ I`
    /// whose reciprocal gammas are replaced by `Γ(-β_i + (sum m ω)_i)`.
    Mixed { first: Vec<usize> },
}

#[derive(Clone)]
pub struct SeriesSpec<T> {
    system: ReducedSystem<T>,
    k: Vec<i64>,
    truncation: u32,
    mode: SeriesMode,
    periodic: Option<PeriodicFn<T>>,
    /// Positions within `I` belonging to `I₁`.
    first_positions: Vec<usize>,
}

impl<T: Real> std::fmt::Debug for SeriesSpec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("base", &self.system.base().indices())
            .field("k", &self.k)
            .field("truncation", &self.truncation)
            .field("mode", &self.mode)
            .field("custom_periodic", &self.periodic.is_some())
            .finish()
    }
}

impl<T: Real> SeriesSpec<T> {
    /// `k` is indexed by the positions of `I` (same order as the base indices).
    pub fn new(system: ReducedSystem<T>, k: Vec<i64>, truncation: u32, mode: SeriesMode) -> Result<Self> {
        let n = system.base().indices().len();
        if k.len() != n {
            return Err(GgError::InvalidInput(format!(
                "twist has {} entries, base has {n}",
                k.len()
            )));
        }
        let first_positions = match &mode {
            SeriesMode::Mixed { first } => {
                let mut pos = Vec::new();
                for &i in first {
                    let p = system.base().position(i).ok_or_else(|| {
                        GgError::InvalidInput(format!("index {i} of the partition is not in the base"))
                    })?;
                    if pos.contains(&p) {
                        return Err(GgError::InvalidInput(format!("index {i} repeated in the partition")));
                    }
                    pos.push(p);
                }
                pos.sort_unstable();
                pos
            }
            _ => Vec::new(),
        };
        Ok(Self {
            system,
            k,
            truncation,
            mode,
            periodic: None,
            first_positions,
        })
    }

    /// Replaces the exponential factor by an arbitrary periodic function.
    pub fn with_periodic(mut self, u: PeriodicFn<T>) -> Self {
        self.periodic = Some(u);
        self
    }

    pub fn with_truncation(mut self, truncation: u32) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn system(&self) -> &ReducedSystem<T> {
        &self.system
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn mode(&self) -> &SeriesMode {
        &self.mode
    }

    /// Base coordinates of `β - sum_j m_j ω^j`.
    fn shifted_coords(&self, beta_i: &[Cx<T>], m: &[u32]) -> Vec<Cx<T>> {
        let mut w = beta_i.to_vec();
        for (q, &mq) in m.iter().enumerate() {
            if mq == 0 {
                continue;
            }
            let g = self.system.omega_coords(q);
            let s = T::of(mq as f64);
            for (wp, gp) in w.iter_mut().zip(g) {
                *wp -= gp * s;
            }
        }
        w
    }

    /// `ln u(w)` for base coordinates `w`; `None` if `u(w) = 0`.
    fn ln_u(&self, w: &[Cx<T>]) -> Option<Cx<T>> {
        if let Some(u) = &self.periodic {
            let v = u(w);
            return if v.is_zero() { None } else { Some(v.ln()) };
        }
        let two_pi_i = Complex::new(T::zero(), T::PI() * T::of(2.0));
        let mut s = Complex::zero();
        for (kp, wp) in self.k.iter().zip(w) {
            s += two_pi_i * wp * T::of(*kp as f64);
        }
        for &p in &self.first_positions {
            s += Complex::new(T::zero(), T::PI()) * w[p];
        }
        Some(s)
    }

    /// `ln c(m)`, where `c(m)` multiplies `x^m / m!`; `Ok(None)` when the
    /// coefficient vanishes.
    fn ln_coefficient(&self, beta_i: &[Cx<T>], m: &[u32]) -> Result<Option<Cx<T>>> {
        let w = self.shifted_coords(beta_i, m);
        let mut acc = match self.ln_u(&w) {
            Some(l) => l,
            None => return Ok(None),
        };
        for (p, wp) in w.iter().enumerate() {
            if self.first_positions.contains(&p) {
                match ln_gamma(-*wp) {
                    Some(l) => acc += l,
                    None => {
                        return Err(GgError::Pole {
                            position: self.system.base().indices()[p],
                            multi_index: m.to_vec(),
                        })
                    }
                }
            } else {
                match ln_rgamma(*wp + T::one()) {
                    Some(l) => acc += l,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(acc))
    }

    /// The coefficient `c(m)` of `x^m / m!` at parameter `β`.
    pub fn coefficient(&self, beta: &[Cx<T>], m: &[u32]) -> Result<Cx<T>> {
        let beta_i = self.beta_coords(beta)?;
        Ok(self
            .ln_coefficient(&beta_i, m)?
            .map_or(Complex::zero(), |l| l.exp()))
    }

    fn beta_coords(&self, beta: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        let n = self.system.set().dim();
        if beta.len() != n {
            return Err(GgError::InvalidInput(format!(
                "β has {} entries, expected {n}",
                beta.len()
            )));
        }
        Ok(self.system.base().coords(beta))
    }

    /// Evaluates the reduced series with exact term-wise derivatives.
    pub fn expand(&self, beta: &[Cx<T>], x: &[Cx<T>], derivatives: bool) -> Result<SeriesExpansion<T>> {
        let beta_i = self.beta_coords(beta)?;
        let r = self.system.r();
        if x.len() != r {
            return Err(GgError::InvalidInput(format!(
                "x has {} entries, expected {r}",
                x.len()
            )));
        }
        let ln_x: Vec<Option<Cx<T>>> = x
            .iter()
            .map(|z| if z.is_zero() { None } else { Some(z.ln()) })
            .collect();
        let ln_fact: Vec<T> = (0..=self.truncation).map(ln_factorial::<T>).collect();
        let monomial = |m: &[u32], skip: Option<usize>| -> Option<Cx<T>> {
            let mut acc = Complex::zero();
            for (q, &mq) in m.iter().enumerate() {
                let e = if skip == Some(q) { mq - 1 } else { mq };
                if e == 0 {
                    continue;
                }
                acc += ln_x[q]? * T::of(e as f64);
                acc -= Complex::new(ln_fact[e as usize], T::zero());
            }
            Some(acc)
        };

        let mut out = SeriesExpansion {
            value: Complex::zero(),
            gradient: vec![Complex::zero(); if derivatives { r } else { 0 }],
            euler: vec![Complex::zero(); if derivatives { r } else { 0 }],
            tail_estimate: T::zero(),
            terms_used: 0,
            truncation: self.truncation,
        };
        let mut err = None;
        for_each_multi_index(r, self.truncation, |m, degree| {
            if err.is_some() {
                return;
            }
            out.terms_used += 1;
            let lc = match self.ln_coefficient(&beta_i, m) {
                Ok(Some(l)) => l,
                Ok(None) => return,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            };
            if let Some(lm) = monomial(m, None) {
                let term = (lc + lm).exp();
                out.value += term;
                if degree == self.truncation {
                    out.tail_estimate = out.tail_estimate.max(term.norm());
                }
                if derivatives {
                    for (q, &mq) in m.iter().enumerate() {
                        out.euler[q] += term * T::of(mq as f64);
                    }
                }
            }
            if derivatives {
                for (q, &mq) in m.iter().enumerate() {
                    if mq == 0 {
                        continue;
                    }
                    if let Some(lm) = monomial(m, Some(q)) {
                        out.gradient[q] += (lc + lm).exp();
                    }
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if self.truncation == 0 {
            out.tail_estimate = out.value.norm();
        }
        Ok(out)
    }

    /// `a^β = prod_(i in I) a_i^(β_i)` times the reduced expansion at `x(a)`.
    pub fn expand_full(&self, beta: &[Cx<T>], a: &[Cx<T>]) -> Result<(Cx<T>, SeriesExpansion<T>)> {
        let x = self.system.x_from_a(a)?;
        let pre = self.system.a_power(beta, a)?;
        Ok((pre, self.expand(beta, &x, false)?))
    }
}

/// A truncated series evaluated at a point, with term-wise derivatives
/// `∂F/∂x_q` (`gradient`) and `x_q ∂F/∂x_q` (`euler`) when requested.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesExpansion<T> {
    pub value: Cx<T>,
    pub gradient: Vec<Cx<T>>,
    pub euler: Vec<Cx<T>>,
    pub tail_estimate: T,
    pub terms_used: usize,
    pub truncation: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Cx<T>,
    /// Largest term modulus on the outermost shell `|m| = M`.
    pub tail_estimate: T,
    pub terms_used: usize,
}

impl<T: Real> From<SeriesExpansion<T>> for SeriesValue<T> {
    fn from(e: SeriesExpansion<T>) -> Self {
        SeriesValue {
            value: e.value,
            tail_estimate: e.tail_estimate,
            terms_used: e.terms_used,
        }
    }
}

/// `F_{I,k}(β, x)`.
pub fn reduced_series_eval<T: Real>(spec: &SeriesSpec<T>, beta: &[Cx<T>], x: &[Cx<T>]) -> Result<SeriesValue<T>> {
    if spec.mode != SeriesMode::Reduced {
        return Err(GgError::InvalidInput("reduced evaluation needs a reduced-mode series".into()));
    }
    spec.expand(beta, x, false).map(Into::into)
}

/// `f_{I,k}(β, a) = a^β F_{I,k}(β, x(a))`, principal branches. A mixed-mode
/// spec gives the corresponding mixed-gamma solution.
pub fn gg_series_eval<T: Real>(spec: &SeriesSpec<T>, beta: &[Cx<T>], a: &[Cx<T>]) -> Result<SeriesValue<T>> {
    if spec.mode == SeriesMode::Reduced {
        return Err(GgError::InvalidInput("full evaluation needs a full- or mixed-mode series".into()));
    }
    let (pre, e) = spec.expand_full(beta, a)?;
    Ok(SeriesValue {
        value: pre * e.value,
        tail_estimate: pre.norm() * e.tail_estimate,
        terms_used: e.terms_used,
    })
}

/// The mixed-gamma series in the reduced variables.
pub fn mixed_gamma_series_eval<T: Real>(
    spec: &SeriesSpec<T>,
    beta: &[Cx<T>],
    x: &[Cx<T>],
) -> Result<SeriesValue<T>> {
    if !matches!(spec.mode, SeriesMode::Mixed { .. }) {
        return Err(GgError::InvalidInput("mixed evaluation needs a partition".into()));
    }
    spec.expand(beta, x, false).map(Into::into)
}

/// Calls `f(m, |m|)` for every multi-index of length `r` with `|m| <= max`,
/// shell by shell.
pub fn for_each_multi_index(r: usize, max: u32, mut f: impl FnMut(&[u32], u32)) {
    let mut m = vec![0u32; r];
    for degree in 0..=max {
        if r == 0 {
            if degree == 0 {
                f(&m, 0);
            }
            continue;
        }
        fill(&mut m, 0, degree, degree, &mut f);
    }
}

fn fill(m: &mut [u32], pos: usize, remaining: u32, degree: u32, f: &mut impl FnMut(&[u32], u32)) {
    if pos + 1 == m.len() {
        m[pos] = remaining;
        f(m, degree);
        m[pos] = 0;
        return;
    }
    for v in (0..=remaining).rev() {
        m[pos] = v;
        fill(m, pos + 1, remaining - v, degree, f);
    }
    m[pos] = 0;
}

/// Empirical behaviour of the coefficients along the ray `m = t e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthVerdict {
    /// Coefficients grow super-geometrically: the series diverges for `x_j ≠ 0`.
    ZeroRadius,
    FiniteRadius,
    InfiniteRadius,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceFlag<T> {
    /// `Re sum_(i in I) l^j_i >= -1`.
    pub l_condition: bool,
    /// `Re sum_(i in I) γ_i(ω^j) <= 1`.
    pub gamma_condition: bool,
    pub l_sum: Cx<T>,
    pub verdict: GrowthVerdict,
    /// Estimated radius in `x_j` (zero or infinite for those verdicts).
    pub radius: T,
}

impl<T: Real> ConvergenceFlag<T> {
    pub fn holds(&self) -> bool {
        self.l_condition
    }
}

/// Convergence condition for every `j in J`, plus a ratio test on the
/// coefficients `|c(t e_j)| / t!` up to `t = truncation` at a generic `β`.
pub fn convergence_condition<T: Real>(system: &ReducedSystem<T>, truncation: u32) -> Vec<ConvergenceFlag<T>> {
    let n = system.set().dim();
    let truncation = truncation.max(8);
    // A generic parameter away from all integer lattices.
    let beta_i: Vec<Cx<T>> = (0..n)
        .map(|p| Complex::new(T::of(0.371 + 0.113 * p as f64), T::of(0.0917 - 0.031 * p as f64)))
        .collect();
    let beta = system.base().from_coords(&beta_i);
    let spec = SeriesSpec::new(system.clone(), vec![0; n], truncation, SeriesMode::Reduced)
        .expect("twist length matches the base");
    (0..system.r())
        .map(|q| {
            let l_sum = system.l_sum(q);
            let ln_a = |t: u32| -> T {
                let mut m = vec![0u32; system.r()];
                m[q] = t;
                let beta_i = system.base().coords(&beta);
                match spec.ln_coefficient(&beta_i, &m) {
                    Ok(Some(l)) => l.re - ln_factorial::<T>(t),
                    _ => T::neg_infinity(),
                }
            };
            let d = |t: u32| ln_a(t) - ln_a(t + 1);
            let (t1, t2) = (truncation / 2, truncation - 1);
            let (d1, d2) = (d(t1), d(t2));
            let slope = (d2 - d1) / (T::of(t2 as f64) / T::of(t1 as f64)).ln();
            // A vanishing coefficient means the ray terminates.
            let (verdict, radius) = if !d1.is_finite() || !d2.is_finite() || slope > T::of(0.5) {
                (GrowthVerdict::InfiniteRadius, T::infinity())
            } else if slope < T::of(-0.5) {
                (GrowthVerdict::ZeroRadius, T::zero())
            } else {
                (GrowthVerdict::FiniteRadius, d2.exp())
            };
            ConvergenceFlag {
                l_condition: l_sum.re >= -T::one() - T::of(1e-12),
                gamma_condition: (-l_sum).re <= T::one() + T::of(1e-12),
                l_sum,
                verdict,
                radius,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_reduced_system, VectorSet};
    use crate::scalar::cx;

    fn c(re: f64, im: f64) -> Cx<f64> {
        cx(re, im)
    }

    fn pm_spec(m: u32) -> SeriesSpec<f64> {
        let set = VectorSet::from_integers(1, &[vec![1], vec![-1]]).unwrap();
        let rs = build_reduced_system(&set.base(&[0]).unwrap());
        SeriesSpec::new(rs, vec![0], m, SeriesMode::Reduced).unwrap()
    }

    fn gauss_system() -> ReducedSystem<f64> {
        let set = VectorSet::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]])
            .unwrap();
        build_reduced_system(&set.base(&[0, 1, 2]).unwrap())
    }

    #[test]
    fn bessel_i0_value() {
        // I_0(2) = sum 1/(m!)^2
        let v = reduced_series_eval(&pm_spec(30), &[c(0.0, 0.0)], &[c(1.0, 0.0)]).unwrap();
        assert!((v.value - c(2.279_585_302_336_067_3, 0.0)).norm() < 1e-14);
        assert!(v.tail_estimate < 1e-60);
        assert_eq!(v.terms_used, 31);
    }

    #[test]
    fn value_at_origin_is_leading_coefficient() {
        let spec = SeriesSpec::new(gauss_system(), vec![0, 0, 0], 10, SeriesMode::Reduced).unwrap();
        let beta = [c(0.3, 0.1), c(-0.4, 0.2), c(1.1, -0.3)];
        let v = reduced_series_eval(&spec, &beta, &[c(0.0, 0.0)]).unwrap();
        let want = crate::gamma::gamma_i_reciprocal(spec.system().base(), &crate::scalar::add(
            &beta,
            &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        ));
        assert!((v.value - want).norm() < 1e-15 * want.norm());
    }

    #[test]
    fn multi_index_enumeration() {
        let mut seen = Vec::new();
        for_each_multi_index(2, 2, |m, d| seen.push((m.to_vec(), d)));
        assert_eq!(
            seen,
            vec![
                (vec![0, 0], 0),
                (vec![1, 0], 1),
                (vec![0, 1], 1),
                (vec![2, 0], 2),
                (vec![1, 1], 2),
                (vec![0, 2], 2)
            ]
        );
        let mut count = 0;
        for_each_multi_index(0, 5, |_, _| count += 1);
        assert_eq!(count, 1);
        count = 0;
        for_each_multi_index(3, 30, |_, _| count += 1);
        assert_eq!(count, 5456);
    }

    #[test]
    fn coefficient_shift_recurrence() {
        let rs = gauss_system();
        let spec = SeriesSpec::new(rs.clone(), vec![1, 0, -1], 10, SeriesMode::Reduced).unwrap();
        let beta = [c(0.3, 0.1), c(-0.4, 0.2), c(1.1, -0.3)];
        let w4 = rs.set().vector(3).to_vec();
        let shifted = crate::scalar::sub(&beta, &w4);
        for m in 0..8u32 {
            let a = spec.coefficient(&beta, &[m + 1]).unwrap();
            let b = spec.coefficient(&shifted, &[m]).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn exact_derivatives_match_definition() {
        let rs = gauss_system();
        let spec = SeriesSpec::new(rs, vec![0, 0, 0], 25, SeriesMode::Reduced).unwrap();
        let beta = [c(0.3, 0.1), c(-0.4, 0.2), c(1.1, -0.3)];
        let x = [c(0.2, 0.1)];
        let e = spec.expand(&beta, &x, true).unwrap();
        assert!((e.euler[0] - e.gradient[0] * x[0]).norm() < 1e-14 * e.euler[0].norm());
        // Derivative at the origin is the m = 1 coefficient.
        let e0 = spec.expand(&beta, &[c(0.0, 0.0)], true).unwrap();
        let c1 = spec.coefficient(&beta, &[1]).unwrap();
        assert!((e0.gradient[0] - c1).norm() < 1e-15 * c1.norm());
    }

    #[test]
    fn mixed_partition_errors() {
        let rs = gauss_system();
        assert!(SeriesSpec::new(rs.clone(), vec![0, 0, 0], 5, SeriesMode::Mixed { first: vec![3] }).is_err());
        let spec = SeriesSpec::new(rs, vec![0, 0, 0], 5, SeriesMode::Mixed { first: vec![0] }).unwrap();
        // β_1 = 2: Γ(-2 + m) hits a pole at m = 0.
        let err = mixed_gamma_series_eval(&spec, &[c(2.0, 0.0), c(0.3, 0.0), c(0.2, 0.0)], &[c(0.1, 0.0)]);
        assert!(matches!(err, Err(GgError::Pole { position: 0, .. })));
    }

    #[test]
    fn empty_partition_is_reduced_series() {
        let rs = gauss_system();
        let red = SeriesSpec::new(rs.clone(), vec![1, 0, 0], 20, SeriesMode::Reduced).unwrap();
        let mix = SeriesSpec::new(rs, vec![1, 0, 0], 20, SeriesMode::Mixed { first: vec![] }).unwrap();
        let beta = [c(0.3, 0.1), c(-0.4, 0.2), c(1.1, -0.3)];
        let x = [c(0.25, -0.1)];
        let a = reduced_series_eval(&red, &beta, &x).unwrap().value;
        let b = mixed_gamma_series_eval(&mix, &beta, &x).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn periodic_callback_reproduces_twist() {
        let rs = gauss_system();
        let twisted = SeriesSpec::new(rs.clone(), vec![0, 2, 0], 15, SeriesMode::Reduced).unwrap();
        let u: PeriodicFn<f64> = Arc::new(|w: &[Cx<f64>]| (Complex::new(0.0, 4.0 * std::f64::consts::PI) * w[1]).exp());
        let custom = SeriesSpec::new(rs, vec![0, 0, 0], 15, SeriesMode::Reduced)
            .unwrap()
            .with_periodic(u);
        let beta = [c(0.3, 0.1), c(-0.4, 0.2), c(1.1, -0.3)];
        let x = [c(0.25, -0.1)];
        let a = reduced_series_eval(&twisted, &beta, &x).unwrap().value;
        let b = reduced_series_eval(&custom, &beta, &x).unwrap().value;
        assert!((a - b).norm() < 1e-13 * a.norm());
    }

    #[test]
    fn convergence_examples() {
        let f = convergence_condition(&gauss_system(), 60);
        assert!(f[0].l_condition && f[0].gamma_condition);
        assert_eq!(f[0].verdict, GrowthVerdict::FiniteRadius);
        assert!((f[0].radius - 1.0).abs() < 0.1);

        let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-3]]).unwrap();
        let f = convergence_condition(&build_reduced_system(&set.base(&[0]).unwrap()), 60);
        assert!(f[0].holds());
        assert!((f[0].l_sum - c(3.0, 0.0)).norm() < 1e-15);
        assert_eq!(f[0].verdict, GrowthVerdict::InfiniteRadius);

        let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![3]]).unwrap();
        let f = convergence_condition(&build_reduced_system(&set.base(&[0]).unwrap()), 60);
        assert!(!f[0].holds() && !f[0].gamma_condition);
        assert_eq!(f[0].verdict, GrowthVerdict::ZeroRadius);
        assert_eq!(f[0].radius, 0.0);
    }

    #[test]
    fn mode_checks() {
        let spec = pm_spec(5);
        assert!(gg_series_eval(&spec, &[c(0.0, 0.0)], &[c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(mixed_gamma_series_eval(&spec, &[c(0.0, 0.0)], &[c(1.0, 0.0)]).is_err());
        assert!(reduced_series_eval(&spec, &[c(0.0, 0.0)], &[]).is_err());
    }
}

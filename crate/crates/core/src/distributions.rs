//! Generalized-function solutions: the delta series `γ⁺`, `γ⁻`, the
//! functionals `c_m`, the pairing series of the GG-distribution, and a
//! Fourier-side consistency check for `n = 1`.
//!
//! Test functions `φ` are entire functions on `C^n` (Fourier transforms of
//! compactly supported smooth functions). With the convention
//! `φ(z) = ∫ ψ(ξ) e^(-izξ) dξ`, the pairing of the GG-distribution with `φ`
//! equals `∫ F(ξ, x) ψ(-ξ) dξ` for `F(ξ, x) = exp(e^(iξ) + x e^(iℓξ))`.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{GgError, Result};
use crate::gamma::ln_factorial;
use crate::integral::quadrature::trapezoid_refined;
use crate::scalar::{Cx, Real};
use crate::series::for_each_multi_index;
use crate::verify::ResidualReport;

pub const DEFAULT_OUTER: u32 = 25;
pub const DEFAULT_INNER: u32 = 40;

/// Required ratio of the last shell to the running sum.
pub const DECAY: f64 = 1e-14;

/// An entire test function on `C^n`.
#[derive(Clone)]
pub struct TestFunction<T> {
    eval: Arc<dyn Fn(&[Cx<T>]) -> Cx<T> + Send + Sync>,
    /// Optional bound on `|φ|` over the probe points, used only in reports.
    pub growth_hint: Option<T>,
}

impl<T: Real> std::fmt::Debug for TestFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction").field("growth_hint", &self.growth_hint).finish()
    }
}

impl<T: Real> TestFunction<T> {
    pub fn new(f: impl Fn(&[Cx<T>]) -> Cx<T> + Send + Sync + 'static) -> Self {
        TestFunction {
            eval: Arc::new(f),
            growth_hint: None,
        }
    }

    /// A function of one variable.
    pub fn scalar(f: impl Fn(Cx<T>) -> Cx<T> + Send + Sync + 'static) -> Self {
        Self::new(move |z: &[Cx<T>]| f(z[0]))
    }

    pub fn constant(c: Cx<T>) -> Self {
        Self::new(move |_: &[Cx<T>]| c)
    }

    pub fn eval(&self, z: &[Cx<T>]) -> Result<Cx<T>> {
        let v = (self.eval)(z);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            let point: Vec<String> = z.iter().map(|w| format!("{w}")).collect();
            Err(GgError::at(
                format!("z=({})", point.join(", ")),
                GgError::Domain("test function is not finite".into()),
            ))
        }
    }

    /// `φ₁ + φ₂`.
    pub fn sum(&self, other: &Self) -> Self {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self::new(move |z: &[Cx<T>]| a(z) + b(z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairingResult<T> {
    pub value: Cx<T>,
    /// Bound on `|r|` of the inner sums.
    pub inner_truncation: u32,
    /// Bound on `|m|` of the outer sum.
    pub outer_truncation: u32,
    /// Size of the last shell plus the rounding floor of the sum.
    pub tail_estimate: T,
}

/// Running sum of shells with the decay check.
struct Shells<T> {
    sum: Cx<T>,
    abs: T,
    last: T,
    current: T,
    degree: u32,
}

impl<T: Real> Shells<T> {
    fn new() -> Self {
        Shells {
            sum: Complex::zero(),
            abs: T::zero(),
            last: T::zero(),
            current: T::zero(),
            degree: 0,
        }
    }

    fn add(&mut self, degree: u32, term: Cx<T>) {
        if degree != self.degree {
            self.last = self.current;
            self.current = T::zero();
            self.degree = degree;
        }
        self.sum += term;
        self.abs += term.norm();
        self.current += term.norm();
    }

    fn finish(self, what: &str) -> Result<(Cx<T>, T)> {
        let last = self.current;
        if !(last <= T::of(DECAY) * self.sum.norm().max(self.abs * T::of(1e-3))) {
            return Err(GgError::Convergence(format!(
                "{what}: last shell {last} is not small against the sum {}",
                self.sum.norm()
            )));
        }
        Ok((self.sum, last + T::epsilon() * self.abs * T::of(16.0)))
    }
}

fn gamma_pair<T: Real>(phi: &TestFunction<T>, truncation: u32, plus: bool) -> Result<PairingResult<T>> {
    let mut shells = Shells::new();
    for m in 0..=truncation {
        let mt = T::of(m as f64);
        let (z, sign) = if plus {
            (-mt, if m % 2 == 0 { T::one() } else { -T::one() })
        } else {
            (mt, T::one())
        };
        let v = phi.eval(&[Complex::new(z, T::zero())])?;
        shells.add(m, v * (sign * (-ln_factorial::<T>(m)).exp()));
    }
    let (value, tail) = shells.finish(if plus { "γ⁺ pairing" } else { "γ⁻ pairing" })?;
    Ok(PairingResult {
        value,
        inner_truncation: truncation,
        outer_truncation: 0,
        tail_estimate: tail,
    })
}

/// `<γ⁺, φ> = sum_m (-1)^m φ(-m) / m!`.
pub fn gamma_plus_pair<T: Real>(phi: &TestFunction<T>, truncation: u32) -> Result<PairingResult<T>> {
    gamma_pair(phi, truncation, true)
}

/// `<γ⁻, φ> = sum_m φ(m) / m!`.
pub fn gamma_minus_pair<T: Real>(phi: &TestFunction<T>, truncation: u32) -> Result<PairingResult<T>> {
    gamma_pair(phi, truncation, false)
}

fn check_ell<T: Real>(ell: &[Vec<Cx<T>>]) -> Result<usize> {
    let n = ell.first().map_or(0, Vec::len);
    if n == 0 || ell.iter().any(|row| row.len() != n) {
        return Err(GgError::InvalidInput("ℓ must be a non-empty r x n array".into()));
    }
    Ok(n)
}

/// `(c_m, φ) = sum_(r in Z_+^n, |r| <= R) φ(sum_q ℓ^q m_q + r) / r!`; `ell`
/// holds the vectors `ℓ^q` as rows.
pub fn cm_pair<T: Real>(ell: &[Vec<Cx<T>>], m: &[u32], phi: &TestFunction<T>, inner: u32) -> Result<PairingResult<T>> {
    let n = check_ell(ell)?;
    if m.len() != ell.len() {
        return Err(GgError::InvalidInput(format!(
            "multi-index has {} entries, ℓ has {} rows",
            m.len(),
            ell.len()
        )));
    }
    let mut shift = vec![Complex::<T>::zero(); n];
    for (row, &mq) in ell.iter().zip(m) {
        for (s, l) in shift.iter_mut().zip(row) {
            *s += l * T::of(mq as f64);
        }
    }
    let mut shells = Shells::new();
    let mut failure = None;
    let mut z = vec![Complex::<T>::zero(); n];
    for_each_multi_index(n, inner, |r, degree| {
        if failure.is_some() {
            return;
        }
        let mut weight = T::zero();
        for ((zp, sp), &rp) in z.iter_mut().zip(&shift).zip(r) {
            *zp = sp + T::of(rp as f64);
            weight -= ln_factorial::<T>(rp);
        }
        match phi.eval(&z) {
            Ok(v) => shells.add(degree, v * weight.exp()),
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (value, tail) = shells.finish("c_m pairing")?;
    Ok(PairingResult {
        value,
        inner_truncation: inner,
        outer_truncation: 0,
        tail_estimate: tail,
    })
}

/// `(f, φ) = sum_(|m| <= M) (c_m, φ) x^m / m!`.
pub fn gg_distribution_pair<T: Real>(
    ell: &[Vec<Cx<T>>],
    x: &[Cx<T>],
    phi: &TestFunction<T>,
    outer: u32,
    inner: u32,
) -> Result<PairingResult<T>> {
    check_ell(ell)?;
    if x.len() != ell.len() {
        return Err(GgError::InvalidInput(format!("x has {} entries, ℓ has {} rows", x.len(), ell.len())));
    }
    let mut indices = Vec::new();
    for_each_multi_index(ell.len(), outer, |m, degree| indices.push((m.to_vec(), degree)));
    let mut shells = Shells::new();
    let mut inner_tail = T::zero();
    for (m, degree) in indices {
        let mut monomial = Complex::new(T::one(), T::zero());
        let mut zero = false;
        for (xq, &mq) in x.iter().zip(&m) {
            if mq > 0 && xq.is_zero() {
                zero = true;
            }
            monomial *= xq.powu(mq) * (-ln_factorial::<T>(mq)).exp();
        }
        if zero {
            shells.add(degree, Complex::zero());
            continue;
        }
        let c = cm_pair(ell, &m, phi, inner)?;
        inner_tail += c.tail_estimate * monomial.norm();
        shells.add(degree, c.value * monomial);
    }
    let (value, tail) = shells.finish("distribution pairing")?;
    Ok(PairingResult {
        value,
        inner_truncation: inner,
        outer_truncation: outer,
        tail_estimate: tail + inner_tail,
    })
}

/// `exp(-ξ^2) exp(-1 / (1 - (ξ/a)^2))` on `|ξ| < a`, zero outside.
pub fn windowed_bump<T: Real>(half_width: T) -> impl Fn(T) -> T + Send + Sync + Copy {
    move |xi: T| {
        let t = xi / half_width;
        if t.abs() >= T::one() {
            T::zero()
        } else {
            (-xi * xi - T::one() / (T::one() - t * t)).exp()
        }
    }
}

/// `φ(z) = ∫ ψ(ξ) e^(-izξ) dξ` over `[-support, support]` by quadrature.
pub fn fourier_test_function<T: Real>(
    psi: impl Fn(T) -> T + Send + Sync + 'static,
    support: T,
    nodes: usize,
    tolerance: T,
) -> TestFunction<T> {
    let psi = Arc::new(psi);
    TestFunction::scalar(move |z: Cx<T>| {
        let psi = psi.clone();
        let f = move |xi: T| Ok((Complex::new(T::zero(), -xi) * z).exp() * psi(xi));
        trapezoid_refined(&f, -support, support, nodes, tolerance)
            .map(|s| s.value)
            .unwrap_or(Complex::new(T::nan(), T::nan()))
    })
}

/// The two sides of the Fourier statement for `n = 1`:
/// `∫ exp(e^(iξ) + x e^(i ℓ_kernel ξ)) ψ(-ξ) dξ` and the pairing series with
/// `ℓ_series` against `φ = ψ̂`. The sides agree when the two `ℓ` coincide.
pub fn fourier_sides<T: Real>(
    ell_kernel: Cx<T>,
    ell_series: Cx<T>,
    x: Cx<T>,
    psi: impl Fn(T) -> T + Send + Sync + Clone + 'static,
    support: T,
    outer: u32,
    inner: u32,
) -> Result<(Cx<T>, PairingResult<T>)> {
    let tol = T::of(1e-13);
    let nodes = 64;
    let p = psi.clone();
    let kernel = move |xi: T| {
        let i = Complex::new(T::zero(), T::one());
        let e = (i * xi).exp() + x * (i * ell_kernel * xi).exp();
        Ok(e.exp() * p(-xi))
    };
    let lhs = trapezoid_refined(&kernel, -support, support, nodes, tol)?.value;
    let phi = fourier_test_function(psi, support, nodes, tol);
    let rhs = gg_distribution_pair(&[vec![ell_series]], &[x], &phi, outer, inner)?;
    Ok((lhs, rhs))
}

/// Relative difference between the two sides of [`fourier_sides`] with a
/// common `ℓ`.
pub fn fourier_consistency_check<T: Real>(
    ell: Cx<T>,
    x: Cx<T>,
    psi: impl Fn(T) -> T + Send + Sync + Clone + 'static,
    support: T,
    tolerance: T,
) -> Result<ResidualReport<T>> {
    let (lhs, rhs) = fourier_sides(ell, ell, x, psi, support, DEFAULT_OUTER, DEFAULT_INNER)?;
    Ok(fourier_report(lhs, rhs.value, tolerance))
}

/// Residual report comparing two values of the same quantity.
pub fn fourier_report<T: Real>(lhs: Cx<T>, rhs: Cx<T>, tolerance: T) -> ResidualReport<T> {
    let abs = (lhs - rhs).norm();
    let rel = abs / lhs.norm().max(rhs.norm()).max(T::of(1e-300));
    ResidualReport {
        equation_id: "fourier".into(),
        max_abs_residual: abs,
        max_rel_residual: rel,
        sample_points: 1,
        tolerance,
        pass: rel <= tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn gamma_pairings_of_constants() {
        let one = TestFunction::<f64>::constant(cx(1.0, 0.0));
        let e = std::f64::consts::E;
        assert!((gamma_minus_pair(&one, 25).unwrap().value - e).norm() < 1e-14);
        assert!((gamma_plus_pair(&one, 25).unwrap().value - 1.0 / e).norm() < 1e-15);
        let id = TestFunction::<f64>::scalar(|s| s);
        assert!((gamma_plus_pair(&id, 25).unwrap().value - 1.0 / e).norm() < 1e-15);
    }

    #[test]
    fn cm_examples() {
        let one = TestFunction::<f64>::constant(cx(1.0, 0.0));
        let id = TestFunction::<f64>::scalar(|s| s);
        let ell = vec![vec![cx(1.0, 0.0)]];
        let e = std::f64::consts::E;
        assert!((cm_pair(&ell, &[0], &one, 40).unwrap().value - e).norm() < 1e-14);
        assert!((cm_pair(&ell, &[2], &one, 40).unwrap().value - e).norm() < 1e-14);
        assert!((cm_pair(&ell, &[1], &id, 40).unwrap().value - 2.0 * e).norm() < 1e-14);
    }

    #[test]
    fn slow_decay_is_reported() {
        let grow = TestFunction::<f64>::scalar(|s| (s * 3.0).exp());
        assert!(matches!(gamma_minus_pair(&grow, 10), Err(GgError::Convergence(_))));
        let bad = TestFunction::<f64>::scalar(|_| cx(f64::NAN, 0.0));
        assert!(gamma_minus_pair(&bad, 10).is_err());
    }
}

//! Integrals over the shifted planes
//! `Γ_k = { s in C^I : Im s_i = (2 k_i + 1) pi }` of
//!
//! `exp(sum_i e^(s_i) + sum_j x_j e^(<ω^j, s>) - <β, s>)`
//!
//! for real sets with `n <= 2`. On `Γ_k` the first sum is `-sum e^(σ_i)`,
//! so the integrand decays doubly exponentially as any `σ_i -> +∞`; the
//! terms `x_j e^(<ω^j, s>)` supply the decay in the remaining directions
//! when `Re(x_j e^(pi i <ω^j, 2k+1>)) < 0`.

use num_complex::Complex;
use num_traits::Zero;

use super::quadrature::trapezoid;
use super::{check_lengths, QuadResult, Quadrature};
use crate::error::{GgError, Result};
use crate::model::BaseSelection;
use crate::scalar::{Cx, Real};

const DEFAULT_HALF_WIDTH: f64 = 4.0;
const MAX_HALF_WIDTH: f64 = 512.0;
const TAIL: f64 = 1e-16;

struct PlaneIntegrand<T> {
    beta: Vec<Cx<T>>,
    /// Real coordinates `γ(ω^j)` and rotated coefficients
    /// `x_j e^(pi i <γ(ω^j), 2k+1>)`.
    terms: Vec<(Vec<T>, Cx<T>)>,
    /// `e^(-pi i <β, 2k+1>)`, the constant factor of `e^(-<β, s>)`.
    phase: Cx<T>,
}

impl<T: Real> PlaneIntegrand<T> {
    fn eval(&self, sigma: &[T]) -> Cx<T> {
        let mut e: Cx<T> = Complex::zero();
        for (b, s) in self.beta.iter().zip(sigma) {
            e -= Complex::new(s.exp(), T::zero()) + b * *s;
        }
        for (g, z) in &self.terms {
            let p = g.iter().zip(sigma).fold(T::zero(), |acc, (a, s)| acc + *a * *s);
            e += z * p.exp();
        }
        e.exp() * self.phase
    }
}

/// The integral over `Γ_k`; `k` is indexed by the positions of `I`.
///
/// The half-width `W` of the window `[-W, W]^n` doubles until the
/// integrand on the window boundary is below `1e-16` of its peak; the value
/// returned is computed on `[-2W, 2W]^n` with twice the nodes, and the
/// error estimate is the larger of its differences to the `[-W, W]^n` sums
/// at the same and at the coarser step.
pub fn shifted_plane_integral<T: Real>(
    base: &BaseSelection<T>,
    k: &[i64],
    beta: &[Cx<T>],
    x: &[Cx<T>],
    quad: &Quadrature<T>,
) -> Result<QuadResult<T>> {
    quad.validate()?;
    let set = base.set();
    let n = set.dim();
    if n > 2 {
        return Err(GgError::Domain(format!("shifted-plane integrals need n <= 2, got n = {n}")));
    }
    check_lengths(base, beta, x)?;
    if k.len() != n {
        return Err(GgError::InvalidInput(format!("k has {} entries, expected {n}", k.len())));
    }
    let tiny = T::of(1e-14) * set.scale();
    if set.vectors().iter().flatten().any(|w| w.im.abs() > tiny) {
        return Err(GgError::Domain("shifted-plane integrals need a real vector set".into()));
    }
    let b = base.coords(beta);
    for (p, bp) in b.iter().enumerate() {
        if !(bp.re > T::zero()) {
            return Err(GgError::Domain(format!(
                "Re β_i > 0 violated at base position {p}: Re β_i = {}",
                bp.re
            )));
        }
    }
    let odd: Vec<T> = k.iter().map(|&ki| T::of((2 * ki + 1) as f64)).collect();
    let mut terms = Vec::new();
    for (q, &j) in base.complement().iter().enumerate() {
        let g: Vec<T> = base.coords(set.vector(j)).iter().map(|c| c.re).collect();
        let angle = T::PI() * g.iter().zip(&odd).fold(T::zero(), |s, (a, o)| s + *a * *o);
        let z = x[q] * Complex::new(angle.cos(), angle.sin());
        if !(z.re < T::zero()) {
            return Err(GgError::Domain(format!(
                "|arg(x_j e^(πi<ω^j,2k+1>))| > π/2 violated for j = {j}: Re = {}",
                z.re
            )));
        }
        terms.push((g, z));
    }
    let bk = b.iter().zip(&odd).fold(Complex::<T>::zero(), |s, (bp, o)| s + bp * *o);
    let phase = (Complex::new(T::zero(), -T::PI()) * bk).exp();
    let f = PlaneIntegrand { beta: b, terms, phase };

    let nodes = quad.nodes;
    let mut w = quad.cutoff.unwrap_or(T::of(DEFAULT_HALF_WIDTH));
    loop {
        let (peak, edge) = boundary_ratio(&f, n, w, nodes);
        if !peak.is_finite() {
            return Err(GgError::Domain("integrand overflows on the shifted plane".into()));
        }
        if edge <= T::of(TAIL) * peak || peak.is_zero() {
            break;
        }
        w = w + w;
        if w > T::of(MAX_HALF_WIDTH) {
            return Err(GgError::Domain("integrand does not decay on the shifted plane".into()));
        }
    }
    let coarse = product_rule(&f, n, w, nodes);
    let fine = product_rule(&f, n, w, 2 * nodes);
    let wide = product_rule(&f, n, w + w, 2 * nodes);
    let err = (coarse - fine).norm().max((fine - wide).norm());
    Ok(QuadResult {
        value: wide,
        error_estimate: err,
        nodes: 2 * nodes,
        cutoff: w + w,
    })
}

/// Tensor-product trapezoid sum on `[-w, w]^n`.
fn product_rule<T: Real>(f: &PlaneIntegrand<T>, n: usize, w: T, nodes: usize) -> Cx<T> {
    match n {
        1 => trapezoid(&mut |s| f.eval(&[s]), -w, w, nodes).0,
        _ => {
            let mut outer = |s1: T| trapezoid(&mut |s2| f.eval(&[s1, s2]), -w, w, nodes).0;
            trapezoid(&mut outer, -w, w, nodes).0
        }
    }
}

/// Largest modulus over the grid and over its boundary.
fn boundary_ratio<T: Real>(f: &PlaneIntegrand<T>, n: usize, w: T, nodes: usize) -> (T, T) {
    let h = (w + w) / T::of_usize(nodes);
    let at = |k: usize| -w + h * T::of_usize(k);
    let (mut peak, mut edge) = (T::zero(), T::zero());
    if n == 1 {
        for k in 0..=nodes {
            let v = f.eval(&[at(k)]).norm();
            peak = peak.max(v);
            if k == 0 || k == nodes {
                edge = edge.max(v);
            }
        }
    } else {
        for k1 in 0..=nodes {
            for k2 in 0..=nodes {
                let v = f.eval(&[at(k1), at(k2)]).norm();
                peak = peak.max(v);
                if k1 == 0 || k2 == 0 || k1 == nodes || k2 == nodes {
                    edge = edge.max(v);
                }
            }
        }
    }
    (peak, edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VectorSet;
    use crate::scalar::cx;

    #[test]
    fn preconditions() {
        let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-1]]).unwrap();
        let base = set.base(&[0]).unwrap();
        let q = Quadrature::default();
        let ok = shifted_plane_integral(&base, &[0], &[cx(0.7, 0.0)], &[cx(0.3, 0.0)], &q);
        assert!(ok.is_ok());
        for (beta, x) in [(cx(-0.2, 0.0), cx(0.3, 0.0)), (cx(0.7, 0.0), cx(-0.3, 0.0)), (cx(0.7, 0.0), cx(0.0, 0.0))] {
            let e = shifted_plane_integral(&base, &[0], &[beta], &[x], &q);
            assert!(matches!(e, Err(GgError::Domain(_))), "{e:?}");
        }
        let complex = VectorSet::new(1, vec![vec![cx(1.0, 0.0)], vec![cx(-1.0, 0.5)]]).unwrap();
        let e = shifted_plane_integral(&complex.base(&[0]).unwrap(), &[0], &[cx(0.7, 0.0)], &[cx(0.3, 0.0)], &q);
        assert!(matches!(e, Err(GgError::Domain(_))));
    }

    #[test]
    fn bessel_k_reference() {
        // 2 x^(-β/2) K_β(2 sqrt x) e^(-pi i (2k+1) β), 30-digit reference values.
        let set = VectorSet::<f64>::from_integers(1, &[vec![1], vec![-1]]).unwrap();
        let base = set.base(&[0]).unwrap();
        let q = Quadrature::default();
        let cases = [
            (cx(0.7, 0.0), cx(0.3, 0.0), 0, cx(-0.777505595202440674, -1.07014464430181814601)),
            (cx(0.4, 0.3), cx(0.2, 0.1), 0, cx(0.772609695699944093, -3.54021533349762566667)),
            (cx(0.4, 0.3), cx(0.2, 0.1), 1, cx(-17.8214933600084718, 15.8721839789991898)),
        ];
        for (beta, x, k, want) in cases {
            let got = shifted_plane_integral(&base, &[k], &[beta], &[x], &q).unwrap();
            assert!((got.value - want).norm() <= 1e-11 * want.norm(), "{got:?} vs {want}");
            assert!(got.error_estimate <= 1e-11 * want.norm());
        }
    }
}

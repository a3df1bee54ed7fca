//! The Euler-type integral for `n = 2` over the segment `s_1 + s_2 = 1`:
//!
//! `1/Γ(β_I + 1) ∫_0^1 (1 + sum_j x_j s^(γ(ω^j)))^(β_I) s_1^(-β_1-1) s_2^(-β_2-1) ds`
//!
//! with `s = (s_1, s_2) = (s, 1 - s)` and `β_I = β_1 + β_2`. The endpoint
//! singularities are handled by the tanh-sinh substitution
//! `s = 1 / (1 + e^(-pi sinh u))`; all powers are taken in log space so the
//! far tails neither underflow nor overflow.

use num_complex::Complex;
use num_traits::Zero;

use super::quadrature::trapezoid_refined;
use super::{check_lengths, QuadResult, Quadrature};
use crate::error::{GgError, Result};
use crate::gamma::rgamma;
use crate::model::BaseSelection;
use crate::scalar::{Cx, Real};

/// Decay wanted from `s^(-Re β)` at the ends of the parameter range.
const END_DECAY: f64 = 40.0;
const MAX_HALF_RANGE: f64 = 12.0;

/// `ln(1 + e^v)` without overflow.
fn softplus<T: Real>(v: T) -> T {
    if v > T::zero() {
        v + (-v).exp().ln_1p()
    } else {
        v.exp().ln_1p()
    }
}

/// Principal `ln(1 + sum_j e^(l_j))`.
fn ln_one_plus<T: Real>(logs: &[Cx<T>]) -> Cx<T> {
    let big = logs.iter().fold(T::neg_infinity(), |m, l| m.max(l.re));
    if big < T::of(600.0) {
        let w = logs.iter().fold(Complex::new(T::one(), T::zero()), |s, l| s + l.exp());
        return w.ln();
    }
    let shift = Complex::new(big, T::zero());
    let w = logs
        .iter()
        .fold(Complex::new((-big).exp(), T::zero()), |s, l| s + (l - shift).exp());
    let mut out = w.ln() + shift;
    let turn = T::PI() + T::PI();
    out.im = out.im - turn * (out.im / turn).round();
    out
}

/// Euler segment integral; `beta` is a vector of `V` and `x` holds the
/// reduced variables in complement order.
pub fn euler_segment_integral<T: Real>(
    base: &BaseSelection<T>,
    beta: &[Cx<T>],
    x: &[Cx<T>],
    quad: &Quadrature<T>,
) -> Result<QuadResult<T>> {
    quad.validate()?;
    let set = base.set();
    if set.dim() != 2 {
        return Err(GgError::InvalidInput(format!(
            "the Euler segment needs n = 2, got n = {}",
            set.dim()
        )));
    }
    check_lengths(base, beta, x)?;
    let mut g = Vec::new();
    for &j in base.complement() {
        let c = base.coords(set.vector(j));
        let total = c[0] + c[1];
        if (total - T::one()).norm() > T::of(1e-10) {
            return Err(GgError::Domain(format!(
                "sum of base coordinates of ω^{j} must be 1, got {total}"
            )));
        }
        g.push(c);
    }
    let b = base.coords(beta);
    for (p, bp) in b.iter().enumerate() {
        if !(bp.re < T::zero()) {
            return Err(GgError::Domain(format!(
                "Re β_i < 0 violated at base position {p}: Re β_i = {}",
                bp.re
            )));
        }
    }
    let bi = b[0] + b[1];
    let lnx: Vec<Option<Cx<T>>> = x.iter().map(|z| (!z.is_zero()).then(|| z.ln())).collect();
    let pi = T::PI();

    let integrand = |u: T| -> Result<Cx<T>> {
        let v = pi * u.sinh();
        // ln s and ln(1 - s)
        let l1 = -softplus(-v);
        let l2 = -softplus(v);
        let mut logs = Vec::with_capacity(g.len());
        for (gq, lx) in g.iter().zip(&lnx) {
            if let Some(lx) = lx {
                logs.push(lx + gq[0] * l1 + gq[1] * l2);
            }
        }
        let base_term = if logs.is_empty() {
            Complex::zero()
        } else {
            let w = ln_one_plus(&logs);
            // A value of 1 + sum x s^g on the negative axis sits on the cut.
            if (w.im.abs() - pi).abs() < T::of(1e-12) {
                return Err(GgError::Domain("1 + sum x_j s^γ(ω^j) meets the branch cut".into()));
            }
            bi * w
        };
        // s_1^(-β_1-1) s_2^(-β_2-1) ds = s_1^(-β_1) s_2^(-β_2) pi cosh u du
        let e = base_term - b[0] * l1 - b[1] * l2 + Complex::new((pi * u.cosh()).ln(), T::zero());
        Ok(e.exp())
    };

    let weakest = b.iter().fold(T::one(), |m, bp| m.min(-bp.re));
    let auto = (T::of(END_DECAY) / (pi * weakest)).asinh().min(T::of(MAX_HALF_RANGE));
    let half = quad.cutoff.unwrap_or(auto);
    let s = trapezoid_refined(&integrand, -half, half, quad.nodes, quad.tolerance)?;
    let scale = rgamma(bi + T::one());
    Ok(QuadResult {
        value: s.value * scale,
        error_estimate: s.error_estimate * scale.norm(),
        nodes: s.nodes,
        cutoff: half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VectorSet;
    use crate::scalar::cx;
    use num_rational::BigRational;

    fn half_set() -> VectorSet<f64> {
        let h = BigRational::new(1.into(), 2.into());
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::from_integer(0.into());
        VectorSet::from_rationals(2, vec![vec![one.clone(), zero.clone()], vec![zero, one], vec![h.clone(), h]]).unwrap()
    }

    #[test]
    fn beta_function_at_zero() {
        let set = half_set();
        let base = set.base(&[0, 1]).unwrap();
        let q = Quadrature::default();
        let got = euler_segment_integral(&base, &[cx(-0.5, 0.0), cx(-0.7, 0.0)], &[cx(0.0, 0.0)], &q).unwrap();
        assert!((got.value - cx(-0.430464116625684082, 0.0)).norm() < 1e-13, "{got:?}");
        let got = euler_segment_integral(&base, &[cx(-0.6, 0.0), cx(-0.8, 0.0)], &[cx(0.0, 0.0)], &q).unwrap();
        assert!((got.value - cx(-0.524862928368548333, 0.0)).norm() < 1e-13, "{got:?}");
    }

    #[test]
    fn quadrature_reference() {
        let q = Quadrature::default();
        let beta = [cx(-0.6, 0.0), cx(-0.8, 0.0)];
        let set = half_set();
        let base = set.base(&[0, 1]).unwrap();
        for (x, want) in [
            (cx(0.1, 0.0), cx(-0.500216445630511858, 0.0)),
            (cx(0.06, 0.08), cx(-0.509056888925992538, 0.0194918276337564102)),
        ] {
            let got = euler_segment_integral(&base, &beta, &[x], &q).unwrap();
            assert!((got.value - want).norm() < 1e-12, "{got:?} vs {want}");
        }
        let set = VectorSet::<f64>::from_integers(2, &[vec![1, 0], vec![0, 1], vec![2, -1]]).unwrap();
        let base = set.base(&[0, 1]).unwrap();
        let got = euler_segment_integral(&base, &beta, &[cx(0.05, -0.02)], &q).unwrap();
        let want = cx(-0.463308715253642161, -0.0122971220439678410);
        assert!((got.value - want).norm() < 1e-9, "{got:?} vs {want}");
    }

    #[test]
    fn preconditions() {
        let q = Quadrature::default();
        let set = VectorSet::<f64>::from_integers(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let base = set.base(&[0, 1]).unwrap();
        let e = euler_segment_integral(&base, &[cx(-0.5, 0.0), cx(-0.5, 0.0)], &[cx(0.1, 0.0)], &q);
        assert!(matches!(e, Err(GgError::Domain(_))));
        let set = half_set();
        let base = set.base(&[0, 1]).unwrap();
        let e = euler_segment_integral(&base, &[cx(0.5, 0.0), cx(-0.5, 0.0)], &[cx(0.1, 0.0)], &q);
        assert!(matches!(e, Err(GgError::Domain(_))));
    }
}

//! The loop from `-∞` below the negative axis, around the origin, and back
//! above it:
//!
//! `∫ exp(t + sum_j x_j t^(ω_j/ω_i)) t^(-β-1) dt`
//!
//! with principal powers. The loop is the parabola `t(u) = c (1 + iu)^2`,
//! which crosses the positive axis at `t = c` and has `Im t -> ∓∞` as
//! `u -> ∓∞`. Being smooth, the trapezoid rule in `u` converges
//! geometrically (the nearest singularity of the integrand is `u = i`).

use num_complex::Complex;
use num_traits::Zero;

use super::quadrature::trapezoid_refined;
use super::{check_lengths, QuadResult, Quadrature};
use crate::error::{GgError, Result};
use crate::model::BaseSelection;
use crate::scalar::{Cx, Real};

/// Where the loop crosses the positive real axis.
pub const HANKEL_OFFSET: f64 = 1.0;

const DEFAULT_RADIUS: f64 = 45.0;
const MAX_RADIUS: f64 = 45.0 * 1024.0;
const TAIL: f64 = 1e-17;

/// Hankel-loop integral for `n = 1`; `beta` is a vector of `V = C` and `x`
/// holds the reduced variables in complement order.
pub fn hankel_integral<T: Real>(
    base: &BaseSelection<T>,
    beta: &[Cx<T>],
    x: &[Cx<T>],
    quad: &Quadrature<T>,
) -> Result<QuadResult<T>> {
    quad.validate()?;
    let set = base.set();
    if set.dim() != 1 {
        return Err(GgError::InvalidInput(format!(
            "the Hankel loop needs n = 1, got n = {}",
            set.dim()
        )));
    }
    check_lengths(base, beta, x)?;
    let wi = set.vector(base.indices()[0])[0];
    let rho: Vec<Cx<T>> = base.complement().iter().map(|&j| set.vector(j)[0] / wi).collect();
    let slack = T::of(1e-12);
    for (q, r) in rho.iter().enumerate() {
        if r.re > T::one() + slack {
            return Err(GgError::Domain(format!(
                "Re(ω_j/ω_i) <= 1 violated for j = {}: Re = {}",
                base.complement()[q],
                r.re
            )));
        }
    }
    let b1 = beta[0] / wi + T::one();
    let c = T::of(HANKEL_OFFSET);
    let integrand = |u: T| -> Cx<T> {
        let w = Complex::new(T::one(), u);
        let t = w * w * c;
        let dt = Complex::new(T::zero(), c + c) * w;
        let lt = t.ln();
        let mut e = t - b1 * lt;
        for (xq, r) in x.iter().zip(&rho) {
            if !xq.is_zero() {
                e += xq * (r * lt).exp();
            }
        }
        e.exp() * dt
    };

    // Grow the cutoff until both ends of the parabola are negligible.
    let mut radius = quad.cutoff.unwrap_or(T::of(DEFAULT_RADIUS));
    let half_width = loop {
        let umax = (T::one() + radius / c).sqrt();
        let peak = (0..=256)
            .map(|k| integrand(umax * (T::of(k as f64 / 128.0) - T::one())).norm())
            .fold(T::zero(), T::max);
        if !peak.is_finite() {
            return Err(GgError::Domain("integrand overflows on the Hankel loop".into()));
        }
        let tail = integrand(umax).norm().max(integrand(-umax).norm());
        if tail <= T::of(TAIL) * peak || peak.is_zero() {
            break umax;
        }
        radius = radius + radius;
        if radius > T::of(MAX_RADIUS) {
            return Err(GgError::Domain(
                "integrand does not decay along the Hankel loop".into(),
            ));
        }
    };
    let f = |u: T| Ok(integrand(u));
    let s = trapezoid_refined(&f, -half_width, half_width, quad.nodes, quad.tolerance)?;
    Ok(QuadResult {
        value: s.value,
        error_estimate: s.error_estimate,
        nodes: s.nodes,
        cutoff: radius,
    })
}

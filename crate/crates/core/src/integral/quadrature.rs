//! One-dimensional trapezoid rules with step halving.
//!
//! Every integrand in this module is analytic and decays (at least)
//! exponentially at the ends of its parametrization, where the plain
//! trapezoid rule converges geometrically in the number of nodes.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{GgError, Result};
use crate::scalar::{Cx, Real};

/// Largest node count tried before giving up on convergence.
pub const MAX_NODES: usize = 1 << 18;

/// A converged trapezoid sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapezoidSum<T> {
    pub value: Cx<T>,
    /// Difference between the last two refinement levels.
    pub error_estimate: T,
    /// `sum |f| h` at the last level; the scale the tolerance refers to.
    pub l1: T,
    pub nodes: usize,
}

/// Trapezoid rule on `[lo, hi]` starting from `nodes` intervals and halving
/// the step until two levels agree to `tol * l1`.
pub fn trapezoid_refined<T: Real>(
    f: &dyn Fn(T) -> Result<Cx<T>>,
    lo: T,
    hi: T,
    nodes: usize,
    tol: T,
) -> Result<TrapezoidSum<T>> {
    let mut n = nodes.max(2);
    let mut h = (hi - lo) / T::of_usize(n);
    let mut sum = Complex::zero();
    let mut abs = T::zero();
    for k in 0..=n {
        let v = f(lo + h * T::of_usize(k))?;
        let w = if k == 0 || k == n { T::of(0.5) } else { T::one() };
        sum += v * w;
        abs += v.norm() * w;
    }
    let mut value: Cx<T> = sum * h;
    loop {
        if n * 2 > MAX_NODES {
            return Err(GgError::Convergence(format!(
                "trapezoid rule not converged with {n} nodes on [{lo}, {hi}]"
            )));
        }
        // Midpoints of the current level.
        for k in 0..n {
            let v = f(lo + h * (T::of_usize(k) + T::of(0.5)))?;
            sum += v;
            abs += v.norm();
        }
        n *= 2;
        h = h * T::of(0.5);
        let next = sum * h;
        let l1 = abs * h;
        if !next.re.is_finite() || !next.im.is_finite() {
            return Err(GgError::Convergence("non-finite quadrature sum".into()));
        }
        let err = (next - value).norm();
        value = next;
        if err <= tol * l1 || l1.is_zero() {
            return Ok(TrapezoidSum {
                value,
                error_estimate: err,
                l1,
                nodes: n,
            });
        }
    }
}

/// Plain trapezoid sum with `nodes` intervals, returning `(sum, sum |f| h)`.
pub fn trapezoid<T: Real>(f: &mut dyn FnMut(T) -> Cx<T>, lo: T, hi: T, nodes: usize) -> (Cx<T>, T) {
    let h = (hi - lo) / T::of_usize(nodes);
    let mut sum = Complex::zero();
    let mut abs = T::zero();
    for k in 0..=nodes {
        let v = f(lo + h * T::of_usize(k));
        let w = if k == 0 || k == nodes { T::of(0.5) } else { T::one() };
        sum += v * w;
        abs += v.norm() * w;
    }
    (sum * h, abs * h)
}

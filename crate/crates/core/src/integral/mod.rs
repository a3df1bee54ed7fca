//! Integral representations of GG-functions: the Hankel loop for `n = 1`,
//! the shifted planes `Γ_k` for real sets with `n <= 2`, and the Euler-type
//! segment integral for `n = 2`.

mod euler;
mod hankel;
mod plane;
pub mod quadrature;

pub use euler::euler_segment_integral;
pub use hankel::{hankel_integral, HANKEL_OFFSET};
pub use plane::shifted_plane_integral;

use crate::error::{GgError, Result};
use crate::model::BaseSelection;
use crate::scalar::{Cx, Real};

/// Which integration cycle to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContourKind {
    HankelLoop,
    /// The plane `Im s_i = (2 k_i + 1) pi`.
    ShiftedPlane(Vec<i64>),
    EulerSegment,
}

/// Quadrature controls shared by all cycles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature<T> {
    /// Initial number of trapezoid intervals per dimension.
    pub nodes: usize,
    /// Starting truncation: `-Re t` on the Hankel loop, the half-width `W`
    /// on a shifted plane, the parameter half-range on the segment. `None`
    /// picks one from the decay of the integrand.
    pub cutoff: Option<T>,
    /// Relative agreement required between refinement levels.
    pub tolerance: T,
}

impl<T: Real> Default for Quadrature<T> {
    fn default() -> Self {
        Quadrature {
            nodes: 64,
            cutoff: None,
            tolerance: T::of(1e-13),
        }
    }
}

impl<T: Real> Quadrature<T> {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 16 {
            return Err(GgError::InvalidInput(format!(
                "quadrature needs at least 16 nodes, got {}",
                self.nodes
            )));
        }
        if let Some(c) = self.cutoff {
            if !(c > T::zero()) || !c.is_finite() {
                return Err(GgError::InvalidInput(format!("cutoff must be positive, got {c}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourSpec<T> {
    pub kind: ContourKind,
    pub quadrature: Quadrature<T>,
}

/// A quadrature value with the parameters that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: Cx<T>,
    /// Difference between the two finest refinement levels.
    pub error_estimate: T,
    /// Nodes per dimension at the finest level.
    pub nodes: usize,
    /// Truncation actually used.
    pub cutoff: T,
}

/// Evaluates the integral selected by `contour`.
pub fn integral_eval<T: Real>(
    base: &BaseSelection<T>,
    beta: &[Cx<T>],
    x: &[Cx<T>],
    contour: &ContourSpec<T>,
) -> Result<QuadResult<T>> {
    match &contour.kind {
        ContourKind::HankelLoop => hankel_integral(base, beta, x, &contour.quadrature),
        ContourKind::ShiftedPlane(k) => shifted_plane_integral(base, k, beta, x, &contour.quadrature),
        ContourKind::EulerSegment => euler_segment_integral(base, beta, x, &contour.quadrature),
    }
}

fn check_lengths<T: Real>(base: &BaseSelection<T>, beta: &[Cx<T>], x: &[Cx<T>]) -> Result<()> {
    let set = base.set();
    if beta.len() != set.dim() {
        return Err(GgError::InvalidInput(format!(
            "β has {} entries, expected {}",
            beta.len(),
            set.dim()
        )));
    }
    if x.len() != base.complement().len() {
        return Err(GgError::InvalidInput(format!(
            "x has {} entries, expected {}",
            x.len(),
            base.complement().len()
        )));
    }
    Ok(())
}

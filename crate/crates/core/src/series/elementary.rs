//! The solutions for the extreme subspaces `L = C^N` and `L = 0`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{GgError, Result};
use crate::gamma::{nonpositive_integer, rgamma};
use crate::scalar::{powc, Cx, Real};

/// `e^(a_1 + .. + a_N)`, the solution for `L = C^N`.
pub fn elementary_solution_full<T: Real>(a: &[Cx<T>]) -> Cx<T> {
    a.iter().fold(Complex::zero(), |s: Cx<T>, z| s + z).exp()
}

/// `prod_i a_i^(γ_i) / Γ(γ_i + 1)`, the solution for `L = 0` with `u ≡ 1`.
pub fn monomial_solution_zero<T: Real>(gamma: &[Cx<T>], a: &[Cx<T>]) -> Result<Cx<T>> {
    if gamma.len() != a.len() {
        return Err(GgError::InvalidInput(format!(
            "{} exponents for {} arguments",
            gamma.len(),
            a.len()
        )));
    }
    let mut out = Complex::one();
    for (g, z) in gamma.iter().zip(a) {
        if z.is_zero() {
            let integral = g.im.is_zero() && g.re.fract().is_zero();
            if !integral {
                return Err(GgError::Domain(format!("zero base with exponent {g}")));
            }
            // a^g / Γ(g+1) at a = 0 is 1 for g = 0 and 0 for every other integer.
            if !g.re.is_zero() {
                return Ok(Complex::zero());
            }
            continue;
        }
        let w = *g + T::one();
        if nonpositive_integer(w).is_some() {
            return Ok(Complex::zero());
        }
        out = out * powc(*z, *g) * rgamma(w);
    }
    Ok(out)
}

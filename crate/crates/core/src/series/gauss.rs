//! The Gauss function `f(a,b,c;x) = sum_m Γ(a+m)Γ(b+m)/Γ(c+m) x^m/m!`.

use num_complex::Complex;
use num_traits::Zero;

use super::SeriesValue;
use crate::error::{GgError, Result};
use crate::gamma::{ln_factorial, ln_gamma, ln_rgamma};
use crate::scalar::{Cx, Real};

/// Truncated Gauss series with its first two term-wise derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussExpansion<T> {
    pub value: Cx<T>,
    pub first: Cx<T>,
    pub second: Cx<T>,
    pub tail_estimate: T,
    pub terms_used: usize,
}

pub fn gauss_expansion<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, x: Cx<T>, truncation: u32) -> Result<GaussExpansion<T>> {
    let ln_x = if x.is_zero() { None } else { Some(x.ln()) };
    let mut out = GaussExpansion {
        value: Complex::zero(),
        first: Complex::zero(),
        second: Complex::zero(),
        tail_estimate: T::zero(),
        terms_used: 0,
    };
    for m in 0..=truncation {
        let mt = T::of(m as f64);
        let ga = ln_gamma(a + mt).ok_or(GgError::Pole {
            position: 0,
            multi_index: vec![m],
        })?;
        let gb = ln_gamma(b + mt).ok_or(GgError::Pole {
            position: 1,
            multi_index: vec![m],
        })?;
        out.terms_used += 1;
        let Some(rc) = ln_rgamma(c + mt) else {
            continue;
        };
        // ln of Γ(a+m)Γ(b+m)/Γ(c+m)/m! without the power of x.
        let lc = ga + gb + rc - Complex::new(ln_factorial::<T>(m), T::zero());
        let power = |e: u32| -> Option<Cx<T>> {
            if e == 0 {
                Some(Complex::zero())
            } else {
                ln_x.map(|l| l * T::of(e as f64))
            }
        };
        if let Some(p) = power(m) {
            let term = (lc + p).exp();
            out.value += term;
            if m == truncation {
                out.tail_estimate = term.norm();
            }
        }
        if m >= 1 {
            if let Some(p) = power(m - 1) {
                out.first += (lc + p).exp() * mt;
            }
        }
        if m >= 2 {
            if let Some(p) = power(m - 2) {
                out.second += (lc + p).exp() * (mt * (mt - T::one()));
            }
        }
    }
    Ok(out)
}

/// `sum_(m <= M) Γ(a+m) Γ(b+m) / Γ(c+m) x^m / m!`.
pub fn gauss_series_eval<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, x: Cx<T>, truncation: u32) -> Result<SeriesValue<T>> {
    let e = gauss_expansion(a, b, c, x, truncation)?;
    Ok(SeriesValue {
        value: e.value,
        tail_estimate: e.tail_estimate,
        terms_used: e.terms_used,
    })
}

//! Scalar abstraction shared by every numeric module.
//!
//! All floating-point code is written against [`Real`], so the same routines
//! run in `f64` (the default, and what the tolerances are tuned for) or `f32`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count or index.
    fn of_usize(k: usize) -> Self {
        Self::from_usize(k).expect("usize representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

/// Builds a complex number from `f64` parts.
pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::of(re), T::of(im))
}

/// Real number lifted to the complex plane.
pub fn cr<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

/// Largest modulus in a slice, zero for an empty slice.
pub fn max_norm<T: Real>(v: &[Cx<T>]) -> T {
    v.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

/// Euclidean norm of a complex vector.
pub fn norm2<T: Real>(v: &[Cx<T>]) -> T {
    v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
}

/// Bilinear (non-conjugating) pairing `sum u_k v_k`.
pub fn dot<T: Real>(u: &[Cx<T>], v: &[Cx<T>]) -> Cx<T> {
    u.iter().zip(v).fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a * b)
}

/// `x - y` componentwise.
pub fn sub<T: Real>(x: &[Cx<T>], y: &[Cx<T>]) -> Vec<Cx<T>> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `x + y` componentwise.
pub fn add<T: Real>(x: &[Cx<T>], y: &[Cx<T>]) -> Vec<Cx<T>> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// `s * x` componentwise.
pub fn scale<T: Real>(s: Cx<T>, x: &[Cx<T>]) -> Vec<Cx<T>> {
    x.iter().map(|a| a * s).collect()
}

/// Principal-branch power `z^p`, with `0^0 = 1` and `0^p = 0` for `Re p > 0`.
pub fn powc<T: Real>(z: Cx<T>, p: Cx<T>) -> Cx<T> {
    if z == Complex::new(T::zero(), T::zero()) {
        if p == Complex::new(T::zero(), T::zero()) {
            return Complex::new(T::one(), T::zero());
        }
        if p.re > T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        return Complex::new(T::infinity(), T::zero());
    }
    (p * z.ln()).exp()
}

//! Seeded sample generators for residual checks.
//!
//! Parameters `β` get base coordinates in `[0.2, 1.8] + i[-0.3, 0.3]` with
//! real parts at least 0.05 away from an integer; arguments `a` are positive
//! on the base, and the remaining entries are solved from a target `x` drawn
//! in a disk around the origin.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{BaseSelection, ReducedSystem};
use crate::scalar::{powc, Cx, Real};

/// The generator used by every seeded routine.
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A parameter and argument pair `(β, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GgSample<T> {
    pub beta: Vec<Cx<T>>,
    pub a: Vec<Cx<T>>,
}

/// A parameter and reduced-variable pair `(β, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSample<T> {
    pub beta: Vec<Cx<T>>,
    pub x: Vec<Cx<T>>,
}

/// A real number in `[lo, hi]` whose distance to the nearest integer is at
/// least `gap`.
pub fn off_integer<R: Rng>(rng: &mut R, lo: f64, hi: f64, gap: f64) -> f64 {
    loop {
        let v: f64 = rng.gen_range(lo..=hi);
        if (v - v.round()).abs() >= gap {
            return v;
        }
    }
}

/// Base coordinates for a generic parameter.
pub fn sample_beta_coords<T: Real, R: Rng>(rng: &mut R, n: usize) -> Vec<Cx<T>> {
    (0..n)
        .map(|_| {
            let re = off_integer(rng, 0.2, 1.8, 0.05);
            let im: f64 = rng.gen_range(-0.3..=0.3);
            Complex::new(T::of(re), T::of(im))
        })
        .collect()
}

/// A generic parameter `β` given through its coordinates in `base`.
pub fn sample_beta<T: Real, R: Rng>(rng: &mut R, base: &BaseSelection<T>) -> Vec<Cx<T>> {
    let c = sample_beta_coords(rng, base.indices().len());
    base.from_coords(&c)
}

/// A point of the disk `|z| <= radius`.
pub fn sample_disk<T: Real, R: Rng>(rng: &mut R, radius: f64) -> Cx<T> {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex::new(T::of(r * t.cos()), T::of(r * t.sin()))
}

/// Reduced variables in the polydisk of the given radius.
pub fn sample_x<T: Real, R: Rng>(rng: &mut R, r: usize, radius: f64) -> Vec<Cx<T>> {
    (0..r).map(|_| sample_disk(rng, radius)).collect()
}

/// Arguments `a` with `a_i in [0.5, 2]` on the base and `x(a) = x`.
pub fn a_for_x<T: Real, R: Rng>(rng: &mut R, system: &ReducedSystem<T>, x: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
    let base = system.base();
    let mut a = vec![Complex::new(T::one(), T::zero()); system.set().len()];
    for &i in base.indices() {
        a[i] = Complex::new(T::of(rng.gen_range(0.5..=2.0)), T::zero());
    }
    for (q, &j) in base.complement().iter().enumerate() {
        let mut p = Complex::new(T::one(), T::zero());
        for (pos, &i) in base.indices().iter().enumerate() {
            p *= powc(a[i], system.l_base(q, pos));
        }
        a[j] = x[q] / p;
    }
    Ok(a)
}

/// `count` samples `(β, a)` with generic `β` and `|x_j(a)| <= radius`.
pub fn gg_samples<T: Real>(system: &ReducedSystem<T>, count: usize, radius: f64, seed: u64) -> Result<Vec<GgSample<T>>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let beta = sample_beta(&mut rng, system.base());
            let x = sample_x(&mut rng, system.r(), radius);
            let a = a_for_x(&mut rng, system, &x)?;
            Ok(GgSample { beta, a })
        })
        .collect()
}

/// `count` samples `(β, x)` with generic `β` and `|x_j| <= radius`.
pub fn reduced_samples<T: Real>(system: &ReducedSystem<T>, count: usize, radius: f64, seed: u64) -> Vec<ReducedSample<T>> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| ReducedSample {
            beta: sample_beta(&mut rng, system.base()),
            x: sample_x(&mut rng, system.r(), radius),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_reduced_system, VectorSet};

    #[test]
    fn samples_respect_the_policy() {
        let set = VectorSet::<f64>::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]])
            .unwrap();
        let rs = build_reduced_system(&set.base(&[0, 1, 2]).unwrap());
        let s = gg_samples(&rs, 50, 0.3, 7).unwrap();
        for p in &s {
            let c = rs.base().coords(&p.beta);
            for z in c {
                assert!((0.2..=1.8).contains(&z.re) && z.im.abs() <= 0.3);
                assert!((z.re - z.re.round()).abs() >= 0.05);
            }
            let x = rs.x_from_a(&p.a).unwrap();
            assert!(x[0].norm() <= 0.3 + 1e-12);
            for i in 0..3 {
                assert!(p.a[i].im == 0.0 && p.a[i].re >= 0.5);
            }
        }
        assert_eq!(s, gg_samples(&rs, 50, 0.3, 7).unwrap());
        assert_ne!(s, gg_samples(&rs, 50, 0.3, 8).unwrap());
    }
}

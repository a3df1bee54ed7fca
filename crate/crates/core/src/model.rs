//! Vector sets, bases, base coordinates, reduced systems and the
//! reducibility classification.
//!
//! Indices are zero-based throughout the library. A vector set
//! `A = {ω^0, .., ω^(N-1)}` spans an `n`-dimensional space `V`; a base `I`
//! is an `n`-subset of linearly independent vectors and `γ` maps `V` onto
//! the coordinates with respect to `{ω^i}_(i in I)`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GgError, Result};
use crate::linalg::CMatrix;
use crate::scalar::{cr, max_norm, powc, Cx, Real};

/// Relative tolerance for rank and determinant decisions.
pub const RANK_TOL: f64 = 1e-10;

/// A finite spanning set of complex vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSet<T> {
    dim: usize,
    omega: Vec<Vec<Cx<T>>>,
    exact: Option<Vec<Vec<BigRational>>>,
}

impl<T: Real> VectorSet<T> {
    /// Validates dimensions and that the vectors span `C^dim`.
    pub fn new(dim: usize, omega: Vec<Vec<Cx<T>>>) -> Result<Self> {
        if dim == 0 {
            return Err(GgError::InvalidInput("dimension must be positive".into()));
        }
        if omega.len() < dim {
            return Err(GgError::InvalidInput(format!(
                "need at least {dim} vectors, got {}",
                omega.len()
            )));
        }
        for (j, w) in omega.iter().enumerate() {
            if w.len() != dim {
                return Err(GgError::InvalidInput(format!(
                    "vector {j} has {} coordinates, expected {dim}",
                    w.len()
                )));
            }
            if w.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(GgError::InvalidInput(format!("vector {j} is not finite")));
            }
        }
        let rank = CMatrix::from_columns(&omega).rank(T::of(RANK_TOL));
        if rank < dim {
            return Err(GgError::InvalidInput(format!(
                "vectors span a space of dimension {rank} < {dim}"
            )));
        }
        let exact = exact_from_floats(&omega);
        Ok(Self { dim, omega, exact })
    }

    /// Integer vectors, kept exactly alongside the floating representation.
    pub fn from_integers(dim: usize, omega: &[Vec<i64>]) -> Result<Self> {
        let rationals = omega
            .iter()
            .map(|w| w.iter().map(|&k| BigRational::from_integer(k.into())).collect())
            .collect();
        Self::from_rationals(dim, rationals)
    }

    /// Rational vectors, kept exactly alongside the floating representation.
    pub fn from_rationals(dim: usize, omega: Vec<Vec<BigRational>>) -> Result<Self> {
        let floats = omega
            .iter()
            .map(|w| {
                w.iter()
                    .map(|q| {
                        let v = q.numer().to_f64().unwrap_or(f64::NAN)
                            / q.denom().to_f64().unwrap_or(f64::NAN);
                        cr(T::of(v))
                    })
                    .collect()
            })
            .collect();
        let mut set = Self::new(dim, floats)?;
        set.exact = Some(omega);
        Ok(set)
    }

    /// `{e_1, .., e_n, -ℓ^1, .., -ℓ^r}`: the set whose base `{e_i}` gives
    /// shift vectors `ℓ^q` in the `β + mℓ` convention.
    pub fn from_shift_vectors(dim: usize, shifts: &[Vec<Cx<T>>]) -> Result<Self> {
        let mut omega: Vec<Vec<Cx<T>>> = (0..dim)
            .map(|i| {
                let mut e = vec![Complex::zero(); dim];
                e[i] = Complex::one();
                e
            })
            .collect();
        omega.extend(shifts.iter().map(|l| l.iter().map(|z| -z).collect()));
        Self::new(dim, omega)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `N`.
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn vector(&self, j: usize) -> &[Cx<T>] {
        &self.omega[j]
    }

    pub fn vectors(&self) -> &[Vec<Cx<T>>] {
        &self.omega
    }

    /// Largest vector norm, the scale for tolerances.
    pub fn scale(&self) -> T {
        self.omega
            .iter()
            .map(|w| crate::scalar::norm2(w))
            .fold(T::zero(), T::max)
    }

    /// `π(ℓ) = sum_j ℓ_j ω^j`.
    pub fn project(&self, l: &[Cx<T>]) -> Vec<Cx<T>> {
        let mut out = vec![Complex::zero(); self.dim];
        for (w, c) in self.omega.iter().zip(l) {
            for (o, x) in out.iter_mut().zip(w) {
                *o += c * x;
            }
        }
        out
    }

    pub fn exact(&self) -> Option<&[Vec<BigRational>]> {
        self.exact.as_deref()
    }

    /// The `n x N` coordinate matrix with denominators cleared by a common
    /// multiple, or `None` if no exact representation is available.
    pub fn integer_matrix(&self) -> Option<Vec<Vec<BigInt>>> {
        let exact = self.exact.as_ref()?;
        let mut denom = BigInt::one();
        for q in exact.iter().flatten() {
            denom = num_integer::Integer::lcm(&denom, q.denom());
        }
        Some(
            (0..self.dim)
                .map(|i| {
                    exact
                        .iter()
                        .map(|w| (&w[i] * BigRational::from_integer(denom.clone())).to_integer())
                        .collect()
                })
                .collect(),
        )
    }

    /// The base with the given vector indices (any order; stored sorted).
    pub fn base(&self, indices: &[usize]) -> Result<BaseSelection<T>> {
        BaseSelection::new(self.clone(), indices)
    }

    /// The same set with its vectors relabelled: new vector `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let omega = perm.iter().map(|&p| self.omega[p].clone()).collect();
        let mut set = Self::new(self.dim, omega)?;
        set.exact = self
            .exact
            .as_ref()
            .map(|e| perm.iter().map(|&p| e[p].clone()).collect());
        Ok(set)
    }
}

fn exact_from_floats<T: Real>(omega: &[Vec<Cx<T>>]) -> Option<Vec<Vec<BigRational>>> {
    let limit = T::of(9.0e15);
    omega
        .iter()
        .map(|w| {
            w.iter()
                .map(|z| {
                    if z.im.is_zero() && z.re.fract().is_zero() && z.re.abs() < limit {
                        z.re.to_i64().map(|k| BigRational::from_integer(k.into()))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// A base `I` with its coordinate map `γ`.
#[derive(Clone, Debug)]
pub struct BaseSelection<T> {
    set: VectorSet<T>,
    indices: Vec<usize>,
    complement: Vec<usize>,
    gamma: CMatrix<T>,
}

impl<T: Real> BaseSelection<T> {
    pub fn new(set: VectorSet<T>, indices: &[usize]) -> Result<Self> {
        let n = set.dim();
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != n {
            return Err(GgError::InvalidInput(format!(
                "a base needs {n} distinct indices, got {indices:?}"
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= set.len()) {
            return Err(GgError::InvalidInput(format!(
                "index {bad} out of range for {} vectors",
                set.len()
            )));
        }
        let cols: Vec<Vec<Cx<T>>> = idx.iter().map(|&i| set.vector(i).to_vec()).collect();
        let m = CMatrix::from_columns(&cols);
        if !is_independent(&m, set.scale()) {
            return Err(GgError::InvalidInput(format!(
                "vectors {idx:?} are linearly dependent"
            )));
        }
        let gamma = m
            .inverse()
            .ok_or_else(|| GgError::InvalidInput(format!("vectors {idx:?} are singular")))?;
        let complement = (0..set.len()).filter(|j| !idx.contains(j)).collect();
        Ok(Self {
            set,
            indices: idx,
            complement,
            gamma,
        })
    }

    pub fn set(&self) -> &VectorSet<T> {
        &self.set
    }

    /// Sorted base indices `I`.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Sorted complement `J`.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Inverse of the matrix with columns `ω^i, i in I`.
    pub fn gamma_matrix(&self) -> &CMatrix<T> {
        &self.gamma
    }

    /// Position of a vector index within `I`.
    pub fn position(&self, index: usize) -> Option<usize> {
        self.indices.iter().position(|&i| i == index)
    }

    /// Base coordinates `γ(v)`, listed in the order of `I`.
    pub fn coords(&self, v: &[Cx<T>]) -> Vec<Cx<T>> {
        self.gamma.mul_vec(v)
    }

    /// `sum_(i in I) c_i ω^i`.
    pub fn from_coords(&self, c: &[Cx<T>]) -> Vec<Cx<T>> {
        let mut out = vec![Complex::zero(); self.set.dim()];
        for (&i, ci) in self.indices.iter().zip(c) {
            for (o, w) in out.iter_mut().zip(self.set.vector(i)) {
                *o += ci * w;
            }
        }
        out
    }
}

/// `|det| > RANK_TOL * scale^n` for a square matrix of column vectors.
fn is_independent<T: Real>(m: &CMatrix<T>, scale: T) -> bool {
    let n = m.rows();
    let cutoff = T::of(RANK_TOL) * scale.powi(n as i32);
    m.determinant().norm() > cutoff
}

/// `base_coords`: the coordinates `γ(v)` of `v` in the base `I`.
pub fn base_coords<T: Real>(base: &BaseSelection<T>, v: &[Cx<T>]) -> Vec<Cx<T>> {
    base.coords(v)
}

/// Basis of `L = ker π`, `π(e_j) = ω^j`; empty when `N = n`.
pub fn kernel_space<T: Real>(set: &VectorSet<T>) -> Vec<Vec<Cx<T>>> {
    CMatrix::from_columns(set.vectors()).kernel(T::of(RANK_TOL))
}

/// All bases, in lexicographic order of their index sets.
pub fn enumerate_bases<T: Real>(set: &VectorSet<T>) -> Vec<BaseSelection<T>> {
    let n = set.dim();
    let scale = set.scale();
    let mut out = Vec::new();
    for subset in combinations(set.len(), n) {
        let cols: Vec<Vec<Cx<T>>> = subset.iter().map(|&i| set.vector(i).to_vec()).collect();
        if is_independent(&CMatrix::from_columns(&cols), scale) {
            if let Ok(b) = BaseSelection::new(set.clone(), &subset) {
                out.push(b);
            }
        }
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The reduced system attached to a base: the kernel basis
/// `l^j = e_j - γ(ω^j)` for `j in J`.
#[derive(Clone, Debug)]
pub struct ReducedSystem<T> {
    base: BaseSelection<T>,
    /// `γ(ω^j)` for `j in J`, each in base order.
    omega_coords: Vec<Vec<Cx<T>>>,
    /// `l^j` as `N`-vectors, for `j in J` in increasing order.
    l: Vec<Vec<Cx<T>>>,
}

impl<T: Real> ReducedSystem<T> {
    pub fn base(&self) -> &BaseSelection<T> {
        &self.base
    }

    pub fn set(&self) -> &VectorSet<T> {
        self.base.set()
    }

    /// `r = N - n`.
    pub fn r(&self) -> usize {
        self.l.len()
    }

    pub fn l_coeffs(&self) -> &[Vec<Cx<T>>] {
        &self.l
    }

    /// `γ(ω^j)` for the `q`-th element of `J`.
    pub fn omega_coords(&self, q: usize) -> &[Cx<T>] {
        &self.omega_coords[q]
    }

    /// `l^j_i` for the `q`-th element of `J` and the `p`-th element of `I`.
    pub fn l_base(&self, q: usize, p: usize) -> Cx<T> {
        -self.omega_coords[q][p]
    }

    /// `sum_(i in I) l^j_i` for the `q`-th element of `J`.
    pub fn l_sum(&self, q: usize) -> Cx<T> {
        self.omega_coords[q]
            .iter()
            .fold(Complex::zero(), |s: Cx<T>, z| s - z)
    }

    /// Reduced variables `x_j = a_j prod_(i in I) a_i^(l^j_i)`.
    pub fn x_from_a(&self, a: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        self.check_a(a)?;
        Ok(self
            .base
            .complement()
            .iter()
            .enumerate()
            .map(|(q, &j)| {
                self.base
                    .indices()
                    .iter()
                    .enumerate()
                    .fold(a[j], |x, (p, &i)| x * powc(a[i], self.l_base(q, p)))
            })
            .collect())
    }

    /// `a^β = prod_(i in I) a_i^(β_i)`.
    pub fn a_power(&self, beta: &[Cx<T>], a: &[Cx<T>]) -> Result<Cx<T>> {
        self.check_a(a)?;
        let c = self.base.coords(beta);
        Ok(self
            .base
            .indices()
            .iter()
            .zip(c)
            .fold(Complex::one(), |p, (&i, b)| p * powc(a[i], b)))
    }

    fn check_a(&self, a: &[Cx<T>]) -> Result<()> {
        if a.len() != self.set().len() {
            return Err(GgError::InvalidInput(format!(
                "expected {} arguments, got {}",
                self.set().len(),
                a.len()
            )));
        }
        if let Some(&i) = self.base.indices().iter().find(|&&i| a[i].is_zero()) {
            return Err(GgError::Domain(format!("a_{i} = 0 on the base")));
        }
        Ok(())
    }
}

/// Builds the reduced system of a base.
pub fn build_reduced_system<T: Real>(base: &BaseSelection<T>) -> ReducedSystem<T> {
    let nn = base.set().len();
    let mut omega_coords = Vec::new();
    let mut l = Vec::new();
    for &j in base.complement() {
        let g = base.coords(base.set().vector(j));
        let mut lj = vec![Complex::zero(); nn];
        lj[j] = Complex::one();
        for (&i, gi) in base.indices().iter().zip(&g) {
            lj[i] = -gi;
        }
        omega_coords.push(g);
        l.push(lj);
    }
    ReducedSystem {
        base: base.clone(),
        omega_coords,
        l,
    }
}

/// Reducibility flags computed on `L = ker π`, plus the equivalent
/// conditions phrased on the vectors themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityReport {
    /// `L` contains some coordinate vector `e_i`.
    pub contains_coordinate_subspace: bool,
    /// Some coordinate vanishes identically on `L`.
    pub inside_proper_coordinate_subspace: bool,
    /// `L` contains some `e_i - e_j`.
    pub contains_difference_vector: bool,
    pub is_reduced: bool,
    /// Indices of zero vectors.
    pub zero_vectors: Vec<usize>,
    /// Pairs of equal vectors.
    pub duplicate_pairs: Vec<(usize, usize)>,
    /// Indices of vectors outside the span of the others.
    pub not_in_span_of_others: Vec<usize>,
}

pub fn reducibility_check<T: Real>(set: &VectorSet<T>) -> ReducibilityReport {
    let nn = set.len();
    let tol = T::of(RANK_TOL);
    let kernel = kernel_space(set);
    let in_l = |v: Vec<Cx<T>>| -> bool {
        if kernel.is_empty() {
            return false;
        }
        let mut rows = kernel.clone();
        let base_rank = CMatrix::from_rows(&rows).rank(tol);
        rows.push(v);
        CMatrix::from_rows(&rows).rank(tol) == base_rank
    };
    let unit = |i: usize| -> Vec<Cx<T>> {
        let mut e = vec![Complex::zero(); nn];
        e[i] = Complex::one();
        e
    };

    let contains_coordinate_subspace = (0..nn).any(|i| in_l(unit(i)));
    let kscale = kernel.iter().map(|l| max_norm(l)).fold(T::zero(), T::max);
    let inside_proper_coordinate_subspace = kernel.is_empty()
        || (0..nn).any(|i| kernel.iter().all(|l| l[i].norm() <= tol * kscale));
    let contains_difference_vector = (0..nn).any(|i| {
        (i + 1..nn).any(|j| {
            let mut d = unit(i);
            d[j] = -Complex::<T>::one();
            in_l(d)
        })
    });

    let scale = set.scale();
    let zero_vectors = (0..nn)
        .filter(|&i| crate::scalar::norm2(set.vector(i)) <= tol * scale)
        .collect();
    let mut duplicate_pairs = Vec::new();
    for i in 0..nn {
        for j in i + 1..nn {
            let d = crate::scalar::sub(set.vector(i), set.vector(j));
            if crate::scalar::norm2(&d) <= tol * scale {
                duplicate_pairs.push((i, j));
            }
        }
    }
    let not_in_span_of_others = (0..nn)
        .filter(|&i| {
            let others: Vec<Vec<Cx<T>>> = (0..nn)
                .filter(|&k| k != i)
                .map(|k| set.vector(k).to_vec())
                .collect();
            others.is_empty() || CMatrix::from_columns(&others).rank(tol) < set.dim()
        })
        .collect();

    ReducibilityReport {
        contains_coordinate_subspace,
        inside_proper_coordinate_subspace,
        contains_difference_vector,
        is_reduced: !(contains_coordinate_subspace
            || inside_proper_coordinate_subspace
            || contains_difference_vector),
        zero_vectors,
        duplicate_pairs,
        not_in_span_of_others,
    }
}

/// Exact integer view of a rational, if it is one.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() || q.denom().abs().is_one() {
        Some(q.to_integer())
    } else {
        None
    }
}

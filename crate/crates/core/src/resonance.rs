//! Consistent vectors of a set `A`, the chain structure they force on `A`,
//! and the extra relation satisfied by GG-functions on the hyperplane
//! `Π_v = L_v + v`.
//!
//! For `v in V`: `A_v = {ω : ω + v in A ∪ {0}}`, `B_v = A \ A_v`, and `L_v`
//! is the span of `B_v`. `v` is consistent when `L_v` is proper.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{GgError, Result};
use crate::linalg::CMatrix;
use crate::model::{ReducedSystem, VectorSet};
use crate::sampling::{a_for_x, rng, sample_disk, sample_x, GgSample};
use crate::scalar::{add, dot, norm2, scale, sub, Cx, Real};
use crate::verify::ResidualReport;

/// Relative tolerance for vector equality and span membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Largest distance of `β` from `Π_v` accepted by [`check_extra_relation`].
pub const HYPERPLANE_TOL: f64 = 1e-10;

/// A chain `ω^i, ω^i - v, ..., ω^i - (k_i - 1) v` of vector indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub members: Vec<usize>,
}

impl Chain {
    pub fn head(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `A` as a disjoint union of chains along `v` and the multiples
/// `-v, ..., -(k_0 - 1) v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub chains: Vec<Chain>,
    /// Indices of `-v, -2v, ...` in order.
    pub multiples: Vec<usize>,
}

impl Decomposition {
    /// `(k_1, ..., k_r)`.
    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(Chain::len).collect()
    }

    pub fn k0(&self) -> usize {
        self.multiples.len() + 1
    }

    /// `k_0 + k_1 + ... + k_r`, which is `N + 1`.
    pub fn total(&self) -> usize {
        self.k0() + self.chains.iter().map(Chain::len).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceAnalysis<T> {
    pub v: Vec<Cx<T>>,
    /// Indices of `A_v`, with the index of `ω + v` (`None` for `ω + v = 0`).
    pub av: Vec<(usize, Option<usize>)>,
    pub bv: Vec<usize>,
    /// Basis of `L_v`, chosen greedily from `B_v`.
    pub lv: Vec<Vec<Cx<T>>>,
    pub codim: usize,
    /// Unit functional vanishing on `L_v`, present when `codim = 1`.
    pub lambda: Option<Vec<Cx<T>>>,
    /// `<λ, v>`: `Π_v` is `{β : <λ, β> = offset}`.
    pub offset: Option<Cx<T>>,
    pub decomposition: Option<Decomposition>,
}

impl<T: Real> ResonanceAnalysis<T> {
    pub fn is_consistent(&self) -> bool {
        self.codim >= 1
    }

    /// Signed distance-like defect `<λ, β> - <λ, v>`.
    pub fn hyperplane_defect(&self, beta: &[Cx<T>]) -> Option<Cx<T>> {
        Some(dot(self.lambda.as_ref()?, beta) - self.offset?)
    }
}

/// The structural facts that hold for every nonzero consistent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceInvariants {
    pub codim_one: bool,
    pub v_not_in_a: bool,
    pub v_not_in_lv: bool,
    pub av_disjoint_from_lv: bool,
}

impl ResonanceInvariants {
    pub fn all(&self) -> bool {
        self.codim_one && self.v_not_in_a && self.v_not_in_lv && self.av_disjoint_from_lv
    }
}

fn tolerance<T: Real>(set: &VectorSet<T>) -> T {
    T::of(MEMBERSHIP_TOL) * set.scale()
}

fn close<T: Real>(u: &[Cx<T>], w: &[Cx<T>], tol: T) -> bool {
    u.iter().zip(w).all(|(a, b)| (a - b).norm() <= tol)
}

fn is_zero_vec<T: Real>(u: &[Cx<T>], tol: T) -> bool {
    u.iter().all(|a| a.norm() <= tol)
}

/// Index of a vector of `A` equal to `u`, skipping `used` entries.
fn find<T: Real>(set: &VectorSet<T>, u: &[Cx<T>], used: &[bool], tol: T) -> Option<usize> {
    (0..set.len()).find(|&j| !used[j] && close(set.vector(j), u, tol))
}

fn rank_of<T: Real>(rows: &[Vec<Cx<T>>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    CMatrix::from_rows(rows).rank(T::of(MEMBERSHIP_TOL))
}

/// Whether `u` lies in the span of `basis` (an independent family).
fn in_span<T: Real>(basis: &[Vec<Cx<T>>], u: &[Cx<T>], tol: T) -> bool {
    if is_zero_vec(u, tol) {
        return true;
    }
    let mut rows = basis.to_vec();
    rows.push(u.to_vec());
    rank_of(&rows) == basis.len()
}

/// Computes `A_v`, `B_v`, `L_v`, the codimension, `λ` and, for nonzero
/// consistent `v`, the chain decomposition.
pub fn analyze<T: Real>(set: &VectorSet<T>, v: &[Cx<T>]) -> Result<ResonanceAnalysis<T>> {
    let n = set.dim();
    if v.len() != n {
        return Err(GgError::InvalidInput(format!("v has {} entries, expected {n}", v.len())));
    }
    let tol = tolerance(set);
    let none = vec![false; set.len()];
    let mut av = Vec::new();
    let mut bv = Vec::new();
    for j in 0..set.len() {
        let w = add(set.vector(j), v);
        if is_zero_vec(&w, tol) {
            av.push((j, None));
        } else if let Some(t) = find(set, &w, &none, tol) {
            av.push((j, Some(t)));
        } else {
            bv.push(j);
        }
    }
    let mut lv: Vec<Vec<Cx<T>>> = Vec::new();
    for &j in &bv {
        if !in_span(&lv, set.vector(j), tol) {
            lv.push(set.vector(j).to_vec());
        }
    }
    let codim = n - lv.len();
    let (lambda, offset) = if codim == 1 {
        let lam = unit_functional(&lv, n);
        let off = dot(&lam, v);
        (Some(lam), Some(off))
    } else {
        (None, None)
    };
    let decomposition = if codim >= 1 && !is_zero_vec(v, tol) {
        chains(set, v).ok()
    } else {
        None
    };
    Ok(ResonanceAnalysis {
        v: v.to_vec(),
        av,
        bv,
        lv,
        codim,
        lambda,
        offset,
        decomposition,
    })
}

/// Unit vector of the one-dimensional annihilator of `lv`, with its
/// largest component real and positive.
fn unit_functional<T: Real>(lv: &[Vec<Cx<T>>], n: usize) -> Vec<Cx<T>> {
    let m = if lv.is_empty() {
        CMatrix::zeros(1, n)
    } else {
        CMatrix::from_rows(lv)
    };
    let k = m.kernel(T::of(MEMBERSHIP_TOL));
    let lam = k.into_iter().next().unwrap_or_else(|| vec![Complex::zero(); n]);
    let big = lam
        .iter()
        .copied()
        .fold(Complex::zero(), |b: Cx<T>, z| if z.norm() > b.norm() { z } else { b });
    let phase = if big.is_zero() { Complex::new(T::one(), T::zero()) } else { big.conj() / big.norm() };
    let s = norm2(&lam);
    scale(phase / s, &lam)
}

/// Checks the structural invariants for a nonzero consistent `v`.
pub fn resonance_invariants<T: Real>(set: &VectorSet<T>, a: &ResonanceAnalysis<T>) -> ResonanceInvariants {
    let tol = tolerance(set);
    let none = vec![false; set.len()];
    ResonanceInvariants {
        codim_one: a.codim == 1,
        v_not_in_a: find(set, &a.v, &none, tol).is_none(),
        v_not_in_lv: !in_span(&a.lv, &a.v, tol),
        av_disjoint_from_lv: a.av.iter().all(|&(j, _)| !in_span(&a.lv, set.vector(j), tol)),
    }
}

/// All consistent vectors among `ω' - ω` and `-ω`, deduplicated, in order
/// of first appearance.
pub fn candidate_consistent_vectors<T: Real>(set: &VectorSet<T>) -> Vec<ResonanceAnalysis<T>> {
    let tol = tolerance(set);
    let mut candidates: Vec<Vec<Cx<T>>> = Vec::new();
    let mut push = |c: Vec<Cx<T>>| {
        if !is_zero_vec(&c, tol) && !candidates.iter().any(|d| close(d, &c, tol)) {
            candidates.push(c);
        }
    };
    for i in 0..set.len() {
        for j in 0..set.len() {
            if i != j {
                push(sub(set.vector(j), set.vector(i)));
            }
        }
    }
    for i in 0..set.len() {
        push(set.vector(i).iter().map(|z| -z).collect());
    }
    candidates
        .iter()
        .filter_map(|v| analyze(set, v).ok())
        .filter(ResonanceAnalysis::is_consistent)
        .collect()
}

/// Greedy chain following along `v`, starting from the heads `B_v`.
fn chains<T: Real>(set: &VectorSet<T>, v: &[Cx<T>]) -> Result<Decomposition> {
    let tol = tolerance(set);
    let none = vec![false; set.len()];
    let mut used = vec![false; set.len()];
    let mut out = Vec::new();
    let heads: Vec<usize> = (0..set.len())
        .filter(|&j| {
            let w = add(set.vector(j), v);
            !is_zero_vec(&w, tol) && find(set, &w, &none, tol).is_none()
        })
        .collect();
    for h in heads {
        used[h] = true;
        let mut members = vec![h];
        let mut cur = sub(set.vector(h), v);
        while let Some(j) = find(set, &cur, &used, tol) {
            used[j] = true;
            members.push(j);
            cur = sub(&cur, v);
        }
        out.push(Chain { members });
    }
    let mut multiples = Vec::new();
    let mut cur: Vec<Cx<T>> = v.iter().map(|z| -z).collect();
    while let Some(j) = find(set, &cur, &used, tol) {
        used[j] = true;
        multiples.push(j);
        cur = sub(&cur, v);
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(GgError::Domain(format!(
            "vector {j} lies on no chain along v; A does not decompose"
        )));
    }
    Ok(Decomposition { chains: out, multiples })
}

/// The decomposition of `A` into chains along a nonzero consistent `v`.
pub fn decompose_structure<T: Real>(set: &VectorSet<T>, v: &[Cx<T>]) -> Result<Decomposition> {
    let a = analyze(set, v)?;
    if is_zero_vec(v, tolerance(set)) {
        return Err(GgError::Domain("v = 0 has no chain structure".into()));
    }
    if !a.is_consistent() {
        return Err(GgError::Domain("v is not consistent with A: L_v = V".into()));
    }
    chains(set, v)
}

/// Residual of `sum_(ω in A_v) <λ, ω> a_ω ∂f/∂a_(ω+v)` with the derivative
/// replaced by `f(β - ω - v, a)`; no hyperplane check. For `ω + v = 0` the
/// same replacement gives `f(β, a)`.
pub fn extra_relation_residual<T: Real>(
    f: &dyn Fn(&[Cx<T>], &[Cx<T>]) -> Result<Cx<T>>,
    set: &VectorSet<T>,
    analysis: &ResonanceAnalysis<T>,
    samples: &[GgSample<T>],
    tolerance: T,
) -> Result<ResidualReport<T>> {
    let lambda = analysis
        .lambda
        .as_ref()
        .ok_or_else(|| GgError::InvalidInput("the extra relation needs codim L_v = 1".into()))?;
    if is_zero_vec(&analysis.v, self::tolerance(set)) {
        return Err(GgError::InvalidInput("the extra relation needs v != 0".into()));
    }
    let mut max_abs = T::zero();
    let mut scale_max = T::zero();
    for s in samples {
        let mut total: Cx<T> = Complex::zero();
        for &(j, _) in &analysis.av {
            let shift = add(set.vector(j), &analysis.v);
            let shifted = sub(&s.beta, &shift);
            let value = f(&shifted, &s.a)?;
            let term = dot(lambda, set.vector(j)) * s.a[j] * value;
            scale_max = scale_max.max(term.norm());
            total += term;
        }
        let r = total.norm();
        max_abs = if r.is_nan() { T::infinity() } else { max_abs.max(r) };
    }
    let rel = max_abs / scale_max.max(T::of(1e-300));
    Ok(ResidualReport {
        equation_id: "extra-relation".into(),
        max_abs_residual: max_abs,
        max_rel_residual: rel,
        sample_points: samples.len(),
        tolerance,
        pass: rel <= tolerance,
    })
}

/// [`extra_relation_residual`] after checking that every `β` lies on `Π_v`.
pub fn check_extra_relation<T: Real>(
    f: &dyn Fn(&[Cx<T>], &[Cx<T>]) -> Result<Cx<T>>,
    set: &VectorSet<T>,
    analysis: &ResonanceAnalysis<T>,
    samples: &[GgSample<T>],
    tolerance: T,
) -> Result<ResidualReport<T>> {
    for s in samples {
        let d = analysis
            .hyperplane_defect(&s.beta)
            .ok_or_else(|| GgError::InvalidInput("the extra relation needs codim L_v = 1".into()))?;
        if d.norm() > T::of(HYPERPLANE_TOL) * set.scale().max(T::one()) {
            return Err(GgError::InvalidInput(format!(
                "β is off the hyperplane Π_v by {}",
                d.norm()
            )));
        }
    }
    extra_relation_residual(f, set, analysis, samples, tolerance)
}

/// Samples with `β = v + sum_b c_b b` over the basis of `L_v` (`|c_b| <= 1`)
/// and arguments with `|x(a)| <= radius` for the given reduced system.
pub fn hyperplane_samples<T: Real>(
    analysis: &ResonanceAnalysis<T>,
    system: &ReducedSystem<T>,
    count: usize,
    radius: f64,
    seed: u64,
) -> Result<Vec<GgSample<T>>> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| {
            let mut beta = analysis.v.clone();
            for b in &analysis.lv {
                let c: Cx<T> = sample_disk(&mut g, 1.0);
                beta = add(&beta, &scale(c, b));
            }
            let x = sample_x(&mut g, system.r(), radius);
            let a = a_for_x(&mut g, system, &x)?;
            Ok(GgSample { beta, a })
        })
        .collect()
}

/// The set `ω_ij = e_j + d_i` of `p x n` matrix entries.
///
/// `V = {(α, β) in C^n ⊕ C^p : sum α = sum β}` is written in the intrinsic
/// coordinates `(α_1, ..., α_n, β_1, ..., β_(p-1))`, with `β_p` recovered
/// from the constraint, so `ω_ij` is `(e_j, d_i)` for `i < p` and `(e_j, 0)`
/// for `i = p`. Indices are 0-based and flattened row by row.
#[derive(Clone, Debug)]
pub struct Grassmannian<T> {
    pub p: usize,
    pub n: usize,
    pub set: VectorSet<T>,
}

impl<T: Real> Grassmannian<T> {
    pub fn flat(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        (index / self.n, index % self.n)
    }

    /// Intrinsic coordinates of `(α, β)`; requires `sum α = sum β`.
    pub fn intrinsic(&self, alpha: &[Cx<T>], beta: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        if alpha.len() != self.n || beta.len() != self.p {
            return Err(GgError::InvalidInput("(α, β) has the wrong length".into()));
        }
        let sa = alpha.iter().fold(Complex::zero(), |s: Cx<T>, z| s + z);
        let sb = beta.iter().fold(Complex::zero(), |s: Cx<T>, z| s + z);
        if (sa - sb).norm() > T::of(1e-12) * (sa.norm() + sb.norm()).max(T::one()) {
            return Err(GgError::InvalidInput(format!("sum α = {sa} differs from sum β = {sb}")));
        }
        let mut out = alpha.to_vec();
        out.extend_from_slice(&beta[..self.p - 1]);
        Ok(out)
    }

    /// `(α, β)` from intrinsic coordinates.
    pub fn ambient(&self, c: &[Cx<T>]) -> (Vec<Cx<T>>, Vec<Cx<T>>) {
        let alpha = c[..self.n].to_vec();
        let mut beta = c[self.n..].to_vec();
        let sa = alpha.iter().fold(Complex::zero(), |s: Cx<T>, z| s + z);
        let sb = beta.iter().fold(Complex::zero(), |s: Cx<T>, z| s + z);
        beta.push(sa - sb);
        (alpha, beta)
    }

    /// `d_(i') - d_i` in intrinsic coordinates.
    pub fn row_difference(&self, i: usize, i2: usize) -> Vec<Cx<T>> {
        let mut v: Vec<Cx<T>> = vec![Complex::zero(); self.n + self.p - 1];
        if i2 + 1 < self.p {
            v[self.n + i2] += T::one();
        }
        if i + 1 < self.p {
            v[self.n + i] -= T::one();
        }
        v
    }
}

/// The Grassmannian set for `p < n`.
pub fn grassmannian_set<T: Real>(p: usize, n: usize) -> Result<Grassmannian<T>> {
    if p == 0 || p >= n {
        return Err(GgError::Domain(format!("the Grassmannian set needs 0 < p < n, got p = {p}, n = {n}")));
    }
    let dim = n + p - 1;
    let mut rows = Vec::with_capacity(p * n);
    for i in 0..p {
        for j in 0..n {
            let mut w = vec![0i64; dim];
            w[j] = 1;
            if i + 1 < p {
                w[n + i] = 1;
            }
            rows.push(w);
        }
    }
    Ok(Grassmannian {
        p,
        n,
        set: VectorSet::from_integers(dim, &rows)?,
    })
}

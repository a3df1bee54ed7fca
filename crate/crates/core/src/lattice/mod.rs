//! Exact integer lattices: the lattice `Λ` of integer vectors orthogonal to
//! `L = ker π`, its coordinate projections `Λ^I`, and the finite quotients
//! `Z^I / Λ^I` indexing the twists of series solutions.

mod hnf;
mod snf;

pub use hnf::{hermite_normal_form, reduce_mod_hnf};
pub use snf::{smith_normal_form, SmithForm};

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{GgError, Result};
use crate::model::VectorSet;
use crate::scalar::Real;
use crate::verify::FamilyMember;

/// Integer scalar for exact lattice work (`i64`, `i128`, `BigInt`).
pub trait LatticeInt: Integer + Signed + Clone + Debug + Hash + ToPrimitive {}

impl<Z: Integer + Signed + Clone + Debug + Hash + ToPrimitive> LatticeInt for Z {}

/// Row-major integer matrix.
pub type IntMatrix<Z> = Vec<Vec<Z>>;

/// Largest quotient order for which representatives are listed.
pub const MAX_REPRESENTATIVES: usize = 1 << 20;

pub fn mat_mul<Z: LatticeInt>(a: &IntMatrix<Z>, b: &IntMatrix<Z>) -> IntMatrix<Z> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Z::zero(), |s, k| s + row[k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// A lattice given by linearly independent basis rows.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerLattice<Z> {
    pub rank: usize,
    pub basis_rows: IntMatrix<Z>,
}

/// `Z^n / Λ'` for a sublattice `Λ'` given by its basis rows.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientStructure<Z> {
    /// Elementary divisors of the sublattice, including trailing ones.
    pub elementary_divisors: Vec<Z>,
    /// `None` when the sublattice has lower rank (infinite quotient).
    pub order: Option<Z>,
    /// One canonical vector per coset, sorted.
    pub representatives: Vec<Vec<Z>>,
}

/// Saturation `(Q-span of rows) ∩ Z^N` of the row lattice, in HNF.
pub fn saturation<Z: LatticeInt>(rows: &IntMatrix<Z>) -> IntegerLattice<Z> {
    let s = smith_normal_form(rows);
    let r = s.rank();
    let basis = hermite_normal_form(&s.q_inv[..r].to_vec());
    IntegerLattice {
        rank: r,
        basis_rows: basis,
    }
}

/// `Λ = {ν in Z^N : <ν, ℓ> = 0 for ℓ in L}`, the saturation of the row
/// lattice of the `n x N` coordinate matrix. Rational coordinates are
/// scaled to integers first, which leaves `Λ` unchanged.
pub fn orthogonal_lattice<T: Real>(set: &VectorSet<T>) -> Result<IntegerLattice<BigInt>> {
    let m = set
        .integer_matrix()
        .ok_or_else(|| GgError::Domain("the vectors need rational coordinates for lattice work".into()))?;
    Ok(saturation(&m))
}

/// `Z^n` modulo the row lattice of `rows` (an `m x n` matrix).
pub fn quotient_of_rows<Z: LatticeInt>(rows: &IntMatrix<Z>, n: usize) -> Result<QuotientStructure<Z>> {
    let s = smith_normal_form(rows);
    if s.rank() < n {
        let mut divisors = s.divisors.clone();
        divisors.resize(n, Z::zero());
        return Ok(QuotientStructure {
            elementary_divisors: divisors,
            order: None,
            representatives: Vec::new(),
        });
    }
    let order = s.divisors.iter().fold(Z::one(), |p, d| p * d.clone());
    let count = order
        .to_usize()
        .filter(|&c| c <= MAX_REPRESENTATIVES)
        .ok_or_else(|| GgError::InvalidInput(format!("quotient of order {order:?} is too large to enumerate")))?;
    // v is in the sublattice iff v Q lies in the row lattice of D, so the
    // cosets are t Q^{-1} for 0 <= t_i < d_i.
    let hnf = hermite_normal_form(rows);
    let mut reps = Vec::with_capacity(count);
    let mut t = vec![Z::zero(); n];
    loop {
        let v: Vec<Z> = (0..n)
            .map(|j| (0..n).fold(Z::zero(), |acc, i| acc + t[i].clone() * s.q_inv[i][j].clone()))
            .collect();
        reps.push(reduce_mod_hnf(&hnf, &v));
        let mut i = 0;
        loop {
            if i == n {
                reps.sort_by(|a, b| cmp_vec(a, b));
                return Ok(QuotientStructure {
                    elementary_divisors: s.divisors,
                    order: Some(order),
                    representatives: reps,
                });
            }
            t[i] = t[i].clone() + Z::one();
            if t[i] < s.divisors[i] {
                break;
            }
            t[i] = Z::zero();
            i += 1;
        }
    }
}

fn cmp_vec<Z: LatticeInt>(a: &[Z], b: &[Z]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// `Λ^I`: the projection of `Λ` onto the coordinates in `base`, and the
/// finite quotient `Z^I / Λ^I`.
pub fn lattice_quotient<Z: LatticeInt>(lattice: &IntegerLattice<Z>, base: &[usize]) -> Result<QuotientStructure<Z>> {
    let n = base.len();
    let width = lattice.basis_rows.first().map_or(0, Vec::len);
    if let Some(&bad) = base.iter().find(|&&i| i >= width) {
        return Err(GgError::InvalidInput(format!("index {bad} outside the lattice's ambient space")));
    }
    let projected: IntMatrix<Z> = lattice
        .basis_rows
        .iter()
        .map(|row| base.iter().map(|&i| row[i].clone()).collect())
        .collect();
    let q = quotient_of_rows(&projected, n)?;
    if q.order.is_none() {
        return Err(GgError::Domain(format!(
            "projection onto {base:?} has rank below {n}; the indices are not a base"
        )));
    }
    Ok(q)
}

/// One `(I, k)` per base `I` in `bases` and per coset representative `k`.
pub fn candidate_family<T: Real>(set: &VectorSet<T>, bases: &[Vec<usize>]) -> Result<Vec<FamilyMember>> {
    if bases.is_empty() {
        return Ok(Vec::new());
    }
    let lattice = orthogonal_lattice(set)?;
    let mut out = Vec::new();
    for b in bases {
        let mut sorted = b.clone();
        sorted.sort_unstable();
        set.base(&sorted)?;
        let q = lattice_quotient(&lattice, &sorted)?;
        for rep in q.representatives {
            let k = rep
                .iter()
                .map(|z| {
                    z.to_i64()
                        .ok_or_else(|| GgError::InvalidInput("twist entry exceeds 64 bits".into()))
                })
                .collect::<Result<Vec<i64>>>()?;
            out.push(FamilyMember {
                base: sorted.clone(),
                k,
            });
        }
    }
    Ok(out)
}

/// Determinant by fraction-free elimination.
pub fn determinant<Z: LatticeInt>(m: &IntMatrix<Z>) -> Z {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = Z::one();
    let mut prev = Z::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Z::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        Z::one()
    } else {
        sign * a[n - 1][n - 1].clone()
    }
}

/// Adjugate matrix, `adj(M) M = det(M) I`.
pub fn adjugate<Z: LatticeInt>(m: &IntMatrix<Z>) -> IntMatrix<Z> {
    let n = m.len();
    if n == 1 {
        return vec![vec![Z::one()]];
    }
    let mut adj = vec![vec![Z::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix<Z> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = determinant(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Coset structure of `Z^n / (row lattice of a nonsingular square matrix)`
/// by enumerating the box `[-h, h]^n`: `v ~ w` iff `(v - w) adj(B) ≡ 0 mod det B`.
///
/// Returns the number of cosets met and, for each `k = 1..=order`, the
/// number of cosets annihilated by `k`, which determines the group.
pub fn brute_force_cosets(basis: &IntMatrix<i64>, half_width: i64) -> (usize, Vec<usize>) {
    let n = basis.len();
    let det = determinant(basis).abs();
    let adj = adjugate(basis);
    if det == 0 {
        return (0, Vec::new());
    }
    let key = |v: &[i64]| -> Vec<i64> {
        (0..n)
            .map(|j| (0..n).map(|i| v[i] * adj[i][j]).sum::<i64>().rem_euclid(det))
            .collect()
    };
    let mut keys: HashSet<Vec<i64>> = HashSet::new();
    let mut v = vec![-half_width; n];
    'outer: loop {
        keys.insert(key(&v));
        for x in v.iter_mut() {
            *x += 1;
            if *x <= half_width {
                continue 'outer;
            }
            *x = -half_width;
        }
        break;
    }
    let order = keys.len();
    let profile = (1..=order as i64)
        .map(|k| keys.iter().filter(|kv| kv.iter().all(|&c| (c * k) % det == 0)).count())
        .collect();
    (order, profile)
}

/// The profile `k -> #{g : k g = 0}` of `⊕ Z/d_i`.
pub fn torsion_profile(divisors: &[i64], order: usize) -> Vec<usize> {
    (1..=order as i64)
        .map(|k| divisors.iter().map(|&d| k.gcd(&d) as usize).product())
        .collect()
}

//! Row-style Hermite normal form and reduction modulo a lattice.

use super::{IntMatrix, LatticeInt};

/// Hermite normal form of the row lattice: nonzero rows in echelon form,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form<Z: LatticeInt>(rows: &IntMatrix<Z>) -> IntMatrix<Z> {
    let mut a: IntMatrix<Z> = rows.clone();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            // Smallest nonzero entry of column c at or below row r.
            let pick = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(i) = pick else {
                break;
            };
            a.swap(r, i);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].div_floor(&a[r][c]);
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(src) {
                    *x = x.clone() - f.clone() * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let f = a[i][c].div_floor(&a[r][c]);
                if f.is_zero() {
                    continue;
                }
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(src) {
                    *x = x.clone() - f.clone() * y;
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Canonical representative of `v` modulo the row lattice of an HNF basis.
pub fn reduce_mod_hnf<Z: LatticeInt>(hnf: &IntMatrix<Z>, v: &[Z]) -> Vec<Z> {
    let mut out = v.to_vec();
    for row in hnf {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let f = out[c].div_floor(&row[c]);
        if f.is_zero() {
            continue;
        }
        for (x, y) in out.iter_mut().zip(row) {
            *x = x.clone() - f.clone() * y.clone();
        }
    }
    out
}

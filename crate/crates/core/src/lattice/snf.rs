//! Smith normal form over a Euclidean ring of integers.

use super::{IntMatrix, LatticeInt};

/// `P A Q = D` with `P`, `Q` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<Z> {
    /// Nonzero diagonal entries, positive and in divisibility order.
    pub divisors: Vec<Z>,
    pub p: IntMatrix<Z>,
    pub q: IntMatrix<Z>,
    pub q_inv: IntMatrix<Z>,
}

impl<Z: LatticeInt> SmithForm<Z> {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

fn identity<Z: LatticeInt>(n: usize) -> IntMatrix<Z> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect()
}

struct Work<Z> {
    a: IntMatrix<Z>,
    p: IntMatrix<Z>,
    q: IntMatrix<Z>,
    q_inv: IntMatrix<Z>,
    rows: usize,
    cols: usize,
}

impl<Z: LatticeInt> Work<Z> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.p.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// `row_i -= f * row_t`.
    fn sub_row(&mut self, i: usize, t: usize, f: &Z) {
        for m in [&mut self.a, &mut self.p] {
            let src = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x = x.clone() - f.clone() * y;
            }
        }
    }

    /// `col_j -= f * col_t`.
    fn sub_col(&mut self, j: usize, t: usize, f: &Z) {
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                let v = row[t].clone();
                row[j] = row[j].clone() - f.clone() * v;
            }
        }
        // The inverse column operation acts on rows of Q^{-1}: row_t += f * row_j.
        let src = self.q_inv[j].clone();
        for (x, y) in self.q_inv[t].iter_mut().zip(src) {
            *x = x.clone() + f.clone() * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.p] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    /// Position of a smallest nonzero entry in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.a[i][j].abs();
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form by elimination with smallest-entry pivots.
pub fn smith_normal_form<Z: LatticeInt>(a: &IntMatrix<Z>) -> SmithForm<Z> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut w = Work {
        a: a.clone(),
        p: identity(rows),
        q: identity(cols),
        q_inv: identity(cols),
        rows,
        cols,
    };
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((i, j)) = w.min_entry(t) else {
            break;
        };
        w.swap_rows(t, i);
        w.swap_cols(t, j);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let f = w.a[i][t].div_floor(&w.a[t][t]);
                w.sub_row(i, t, &f);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let f = w.a[t][j].div_floor(&w.a[t][t]);
                w.sub_col(j, t, &f);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold a non-multiple into row t and restart.
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let minus_one = -Z::one();
                    w.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        divisors.push(w.a[t][t].clone());
    }
    SmithForm {
        divisors,
        p: w.p,
        q: w.q,
        q_inv: w.q_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::super::mat_mul;
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix<i64> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn check(a: &IntMatrix<i64>) -> SmithForm<i64> {
        let s = smith_normal_form(a);
        let d = mat_mul(&mat_mul(&s.p, a), &s.q);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j && i < s.divisors.len() { s.divisors[i] } else { 0 };
                assert_eq!(*v, want, "{d:?}");
            }
        }
        let id = mat_mul(&s.q, &s.q_inv);
        assert_eq!(id, identity::<i64>(id.len()));
        for w in s.divisors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn known_forms() {
        assert_eq!(check(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).divisors, vec![2, 6, 12]);
        assert_eq!(check(&m(&[&[1, 2]])).divisors, vec![1]);
        assert_eq!(check(&m(&[&[2], &[4]])).divisors, vec![2]);
        assert_eq!(check(&m(&[&[2, 0], &[0, 3]])).divisors, vec![1, 6]);
        assert_eq!(check(&m(&[&[0, 0], &[0, 0]])).divisors, Vec::<i64>::new());
        assert_eq!(check(&m(&[&[1, 1, -1, -1]])).divisors, vec![1]);
    }
}

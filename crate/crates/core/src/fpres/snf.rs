//! Smith normal form over the integers with checked 64-bit arithmetic.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

/// `u * a * v == d`, with `d` diagonal, nonnegative, each diagonal entry
/// dividing the next, and `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i]).collect()
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn checked_axpy(target: &mut [i64], source: &[i64], q: i64) -> Result<()> {
    for (t, &s) in target.iter_mut().zip(source) {
        *t = s
            .checked_mul(q)
            .and_then(|x| t.checked_sub(x))
            .ok_or(Error::Overflow)?;
    }
    Ok(())
}

struct Work {
    a: Matrix,
    u: Matrix,
    v: Matrix,
    rows: usize,
    cols: usize,
}

impl Work {
    /// row_i -= q * row_k (also on `u`)
    fn row_sub(&mut self, i: usize, k: usize, q: i64) -> Result<()> {
        let src = self.a[k].clone();
        checked_axpy(&mut self.a[i], &src, q)?;
        let src = self.u[k].clone();
        checked_axpy(&mut self.u[i], &src, q)
    }

    /// col_j -= q * col_k (also on `v`)
    fn col_sub(&mut self, j: usize, k: usize, q: i64) -> Result<()> {
        for r in 0..self.rows {
            self.a[r][j] = self.a[r][k]
                .checked_mul(q)
                .and_then(|x| self.a[r][j].checked_sub(x))
                .ok_or(Error::Overflow)?;
        }
        for r in 0..self.cols {
            self.v[r][j] = self.v[r][k]
                .checked_mul(q)
                .and_then(|x| self.v[r][j].checked_sub(x))
                .ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        self.u.swap(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        for row in self.v.iter_mut() {
            row.swap(j, k);
        }
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = x.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(())
    }
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithForm> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidWord("ragged matrix".into()));
    }
    let mut w = Work {
        a: a.clone(),
        u: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(i64, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = w.a[i][j];
                    if x != 0 {
                        let m = x.checked_abs().ok_or(Error::Overflow)?;
                        if best.is_none_or(|(b, _, _)| m < b) {
                            best = Some((m, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[i][t] / p;
                if q != 0 {
                    w.row_sub(i, t, q)?;
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = w.a[t][j] / p;
                if q != 0 {
                    w.col_sub(j, t, q)?;
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match offending {
                Some(i) => w.row_sub(t, i, -1)?,
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t)?;
        }
    }
    finish(w)
}

fn finish(mut w: Work) -> Result<SmithForm> {
    for t in 0..w.rows.min(w.cols) {
        if w.a[t][t] < 0 {
            w.negate_row(t)?;
        }
    }
    Ok(SmithForm {
        d: w.a,
        u: w.u,
        v: w.v,
    })
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0i64;
            for l in 0..k {
                s = a[i][l]
                    .checked_mul(b[l][j])
                    .and_then(|x| s.checked_add(x))
                    .ok_or(Error::Overflow)?;
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

/// Determinant by cofactor expansion (small matrices only).
pub fn det(a: &Matrix) -> Result<i64> {
    let n = a.len();
    if n == 0 {
        return Ok(1);
    }
    if n == 1 {
        return Ok(a[0][0]);
    }
    let mut total = 0i64;
    for j in 0..n {
        let minor: Matrix = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let term = a[0][j].checked_mul(det(&minor)?).ok_or(Error::Overflow)?;
        total = if j % 2 == 0 {
            total.checked_add(term)
        } else {
            total.checked_sub(term)
        }
        .ok_or(Error::Overflow)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &Matrix) -> SmithForm {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(mat_mul(&mat_mul(&s.u, a).unwrap(), &s.v).unwrap(), s.d);
        for (i, row) in s.d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j {
                    assert_eq!(x, 0);
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        assert_eq!(det(&s.u).unwrap().abs(), 1);
        assert_eq!(det(&s.v).unwrap().abs(), 1);
        s
    }

    #[test]
    fn examples() {
        assert_eq!(check(&vec![vec![3, -2]]).d, vec![vec![1, 0]]);
        assert_eq!(check(&vec![vec![2, 0], vec![0, 2]]).d, vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(check(&vec![vec![2, 4], vec![6, 8]]).diagonal(), vec![2, 4]);
    }

    #[test]
    fn divisibility_is_enforced() {
        assert_eq!(check(&vec![vec![2, 0], vec![0, 3]]).diagonal(), vec![1, 6]);
        assert_eq!(check(&vec![vec![0, 0], vec![0, 0]]).diagonal(), vec![0, 0]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = vec![vec![i64::MIN, 3]];
        assert!(matches!(smith_normal_form(&a), Err(Error::Overflow)));
    }

    proptest! {
        #[test]
        fn snf_recomposes(rows in 1usize..4, cols in 1usize..4, seed in proptest::collection::vec(-30i64..30, 16)) {
            let a: Matrix = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            check(&a);
        }
    }
}

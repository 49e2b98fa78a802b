use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from rows of machine integers; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += x * m;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] += c * s;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] += c * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

/// `left * M * right = D`, where `D` is `M`-shaped with `diagonal` in its
/// leading entries and zeros elsewhere. Both transforms are unimodular and
/// their inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub left_inv: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inv: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Checks `left*M*right = D`, both inverse pairs, positivity and the
    /// divisibility chain by exact multiplication.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let d = self.left.mul(m).mul(&self.right);
        let shape_ok = (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                let expect = if i == j && i < self.diagonal.len() {
                    self.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                *d.get(i, j) == expect
            })
        });
        shape_ok
            && self.left.mul(&self.left_inv) == IntegerMatrix::identity(m.rows())
            && self.right.mul(&self.right_inv) == IntegerMatrix::identity(m.cols())
            && self.diagonal.iter().all(|x| x.is_positive())
            && self.diagonal.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

struct Work {
    a: IntegerMatrix,
    l: IntegerMatrix,
    l_inv: IntegerMatrix,
    r: IntegerMatrix,
    r_inv: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.l.swap_rows(i, k);
        self.l_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.r.swap_cols(j, k);
        self.r_inv.swap_rows(j, k);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        self.l.add_row(dst, src, c);
        self.l_inv.add_col(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.r.add_col(dst, src, c);
        self.r_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.l.negate_row(i);
        self.l_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block from `(t, t)`, ties
    /// broken by (row, column).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Exact Smith normal form with transforms. Deterministic for a fixed input.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        l: IntegerMatrix::identity(rows),
        l_inv: IntegerMatrix::identity(rows),
        r: IntegerMatrix::identity(cols),
        r_inv: IntegerMatrix::identity(cols),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        let p = w.a.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..rows {
            let v = w.a.get(i, t);
            if !v.is_zero() {
                let q = v.div_floor(&p);
                w.add_row(i, t, &-q);
                clean &= w.a.get(i, t).is_zero();
            }
        }
        for j in t + 1..cols {
            let v = w.a.get(t, j);
            if !v.is_zero() {
                let q = v.div_floor(&p);
                w.add_col(j, t, &-q);
                clean &= w.a.get(t, j).is_zero();
            }
        }
        if !clean {
            // A remainder smaller than the pivot appeared; re-pick.
            continue;
        }
        let bad_row =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a.get(i, j).is_multiple_of(&p)));
        if let Some(i) = bad_row {
            w.add_row(t, i, &BigInt::one());
            continue;
        }
        if p.is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.a.get(t, t).clone());
        t += 1;
    }
    let snf = SmithForm {
        diagonal,
        left: w.l,
        left_inv: w.l_inv,
        right: w.r,
        right_inv: w.r_inv,
    };
    debug_assert!(snf.verify(m), "Smith form failed verification");
    snf
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        let m = IntegerMatrix::from_rows(2, &[vec![2, 0], vec![0, 3], vec![5, 5]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, ints(&[1, 1]));
        assert!(s.verify(&m));

        let z = IntegerMatrix::zeros(3, 2);
        assert!(smith_normal_form(&z).diagonal.is_empty());
        assert_eq!(
            smith_normal_form(&IntegerMatrix::identity(3)).diagonal,
            ints(&[1, 1, 1])
        );

        let m = IntegerMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[1, 6]));
        let m = IntegerMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[2, 6, 12]));
    }

    #[test]
    fn empty_shapes() {
        let s = smith_normal_form(&IntegerMatrix::zeros(0, 4));
        assert!(s.diagonal.is_empty());
        assert_eq!(s.right, IntegerMatrix::identity(4));
        assert!(s.verify(&IntegerMatrix::zeros(0, 4)));
    }
}

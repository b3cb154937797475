use super::matrix::Matrix;
use crate::scalar::EuclideanRing;

/// `d = u * m * v` with `u`, `v` unimodular and `d` in Smith normal form.
///
/// The inverses of both transforms are carried along since the cohomology
/// engine needs to move between the original and the diagonal bases in both
/// directions.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, units included.
    pub invariant_factors: Vec<T>,
}

impl<T: EuclideanRing> SmithDecomposition<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Columns of `v` spanning the kernel of the input matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        (self.rank()..self.v.cols()).map(|j| self.v.column(j)).collect()
    }
}

struct Work<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: EuclideanRing> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c.clone());
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c.clone());
    }

    fn scale_row(&mut self, i: usize, unit: &T) {
        let inv = unit.unit_inverse().expect("scaling by a non-unit");
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    /// Smallest nonzero entry of the trailing submatrix; ties broken by
    /// (row, column) order.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if x.size_cmp(&self.d[b]) != std::cmp::Ordering::Less => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` against the pivot at `(t, t)`.
    /// Returns false if some remainder survived (a smaller pivot exists).
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.d.rows() {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = self.d[(i, t)].div_rem_euclid(&self.d[(t, t)]);
            self.add_row(i, t, &-q);
            clean &= r.is_zero();
        }
        for j in t + 1..self.d.cols() {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = self.d[(t, j)].div_rem_euclid(&self.d[(t, t)]);
            self.add_col(j, t, &-q);
            clean &= r.is_zero();
        }
        clean
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.d[(t, t)];
        for i in t + 1..self.d.rows() {
            for j in t + 1..self.d.cols() {
                if !p.divides(&self.d[(i, j)]) {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form by repeated smallest-pivot elimination.
pub fn smith_normal_form<T: EuclideanRing>(m: &Matrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        let mut done = false;
        while !done {
            let Some((pi, pj)) = w.find_pivot(t) else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            loop {
                if !w.clear_cross(t) {
                    break;
                }
                match w.first_non_multiple(t) {
                    // pulling the offending row into row t forces a remainder
                    // on the next clearing pass
                    Some(i) => w.add_row(t, i, &T::one()),
                    None => {
                        done = true;
                        break;
                    }
                }
            }
        }
        if !done {
            break;
        }
        let unit = w.d[(t, t)].normalizing_unit();
        if !unit.is_one() {
            w.scale_row(t, &unit);
        }
        factors.push(w.d[(t, t)].clone());
    }
    SmithDecomposition { u: w.u, u_inv: w.u_inv, d: w.d, v: w.v, v_inv: w.v_inv, invariant_factors: factors }
}

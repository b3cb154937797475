//! Computes `ker B / im A` for a cochain complex `C^{k-1} --A--> C^k --B--> C^{k+1}`
//! given by sparse matrices.
//!
//! Two sparse passes remove everything that can be removed with unit pivots;
//! the remainder goes through a dense Smith decomposition.
//!
//! * Pass A eliminates unit entries of `A`. A pivot column `a` with a unit at
//!   row `i` is a coboundary, so `z -> z - s z_i a` (with `s = a_i^{-1}`)
//!   does not change the class of `z` and zeroes coordinate `i`. Row `i` is
//!   then dropped, and column `i` of `B` with it.
//! * Pass B eliminates unit entries of `B`. A row `ρ` with a unit at column
//!   `l` determines `z_l = -s Σ_{l' != l} ρ_{l'} z_{l'}` on the kernel, so
//!   coordinate `l` can be forgotten and reconstructed later.
//! * The kept coordinates carry the dense problem: the kernel of what is left
//!   of `B`, modulo what is left of `A`.

use std::collections::{BTreeSet, HashSet};

use crate::linalg::{smith_normal_form, Cokernel, GroupElement, Matrix};
use crate::scalar::EuclideanRing;

pub(crate) type SparseVec<R> = Vec<(usize, R)>;

/// `x + c * y` for sorted sparse vectors.
fn axpy<R: EuclideanRing>(x: &SparseVec<R>, c: &R, y: &SparseVec<R>) -> SparseVec<R> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, c.clone() * y[j].1.clone()));
            j += 1;
        } else {
            let v = x[i].1.clone() + c.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry<R: Clone>(v: &SparseVec<R>, i: usize) -> Option<&R> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|p| &v[p].1)
}

/// Sparse vectors indexed by line (a column of A or a row of B) together
/// with the reverse incidence `position -> lines`.
struct Incidence<R> {
    lines: Vec<SparseVec<R>>,
    at: Vec<BTreeSet<usize>>,
}

impl<R: EuclideanRing> Incidence<R> {
    fn new(lines: Vec<SparseVec<R>>, width: usize) -> Self {
        let mut at = vec![BTreeSet::new(); width];
        for (j, l) in lines.iter().enumerate() {
            for (i, _) in l {
                at[*i].insert(j);
            }
        }
        Incidence { lines, at }
    }

    /// Unit entry minimizing the Markowitz cost, ties by (line, position).
    fn pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, l) in self.lines.iter().enumerate() {
            if l.is_empty() || best.is_some_and(|b| b.0 == 0) {
                continue;
            }
            for (i, v) in l {
                if !v.is_unit() {
                    continue;
                }
                let cost = (l.len() - 1) * (self.at[*i].len() - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, j, *i));
                }
            }
        }
        best.map(|(_, j, i)| (j, i))
    }

    fn set_line(&mut self, j: usize, new: SparseVec<R>) {
        for (i, _) in &self.lines[j] {
            self.at[*i].remove(&j);
        }
        for (i, _) in &new {
            self.at[*i].insert(j);
        }
        self.lines[j] = new;
    }

    /// Eliminates position `i` from every line but `j` using line `j`, then
    /// removes line `j`. Returns line `j` and the inverse of its pivot.
    fn eliminate(&mut self, j: usize, i: usize) -> (SparseVec<R>, R) {
        let pivot = self.lines[j].clone();
        let s = entry(&pivot, i).and_then(R::unit_inverse).expect("pivot is a unit");
        let others: Vec<usize> = self.at[i].iter().copied().filter(|&l| l != j).collect();
        for l in others {
            let c = entry(&self.lines[l], i).expect("incidence is consistent").clone();
            let updated = axpy(&self.lines[l], &-(s.clone() * c), &pivot);
            self.set_line(l, updated);
        }
        self.set_line(j, Vec::new());
        (pivot, s)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Reduction<R> {
    n: usize,
    /// `(row i, s, pivot column a)`; apply as `z -= s z_i a`.
    coboundary_steps: Vec<(usize, R, SparseVec<R>)>,
    /// `(coordinate l, s, row ρ)`; reconstruct as `z_l = -s Σ ρ_{l'} z_{l'}`.
    kernel_steps: Vec<(usize, R, SparseVec<R>)>,
    kept: Vec<usize>,
    /// Kernel basis of the dense remainder of `B`, as columns.
    kernel: Matrix<R>,
    /// Left inverse of `kernel` on the kernel.
    kernel_coords: Matrix<R>,
    cokernel: Cokernel<R>,
}

impl<R: EuclideanRing> Reduction<R> {
    /// `a_cols`: sparse columns of `A` over positions `0..n`.
    /// `b_rows`: sparse rows of `B` over positions `0..n`.
    pub(crate) fn new(n: usize, a_cols: Vec<SparseVec<R>>, b_rows: Vec<SparseVec<R>>) -> Self {
        let mut a = Incidence::new(a_cols, n);
        let mut alive = vec![true; n];
        let mut coboundary_steps = Vec::new();
        while let Some((j, i)) = a.pivot() {
            let (col, s) = a.eliminate(j, i);
            alive[i] = false;
            coboundary_steps.push((i, s, col));
        }

        let b_rows = b_rows.into_iter().map(|r| r.into_iter().filter(|(i, _)| alive[*i]).collect()).collect();
        let mut b = Incidence::new(b_rows, n);
        let mut kernel_steps = Vec::new();
        while let Some((r, l)) = b.pivot() {
            let (mut row, s) = b.eliminate(r, l);
            row.retain(|(i, _)| *i != l);
            alive[l] = false;
            kernel_steps.push((l, s, row));
        }

        let kept: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        let mut pos = vec![usize::MAX; n];
        for (p, &i) in kept.iter().enumerate() {
            pos[i] = p;
        }
        let dense = |lines: &[SparseVec<R>]| -> Vec<Vec<R>> {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for l in lines {
                let mut v = vec![R::zero(); kept.len()];
                let mut any = false;
                for (i, x) in l {
                    if pos[*i] != usize::MAX {
                        v[pos[*i]] = x.clone();
                        any = true;
                    }
                }
                if any && seen.insert(v.clone()) {
                    out.push(v);
                }
            }
            out
        };

        let b_dense = dense(&b.lines);
        let b_mat = Matrix::from_rows(b_dense, kept.len());
        let smith = smith_normal_form(&b_mat);
        let r = smith.rank();
        let q = kept.len() - r;
        let kernel = Matrix::from_columns(&smith.kernel_basis(), kept.len());
        let kernel_coords = smith.v_inv.select_rows(&(r..kept.len()).collect::<Vec<_>>());

        let a_dense = dense(&a.lines);
        let a_proj: Vec<Vec<R>> = a_dense.iter().map(|c| kernel_coords.mul_vec(c)).collect();
        let cokernel = Cokernel::new(&Matrix::from_columns(&a_proj, q));

        Reduction { n, coboundary_steps, kernel_steps, kept, kernel, kernel_coords, cokernel }
    }

    pub(crate) fn cokernel(&self) -> &Cokernel<R> {
        &self.cokernel
    }

    /// Coordinates of the class of a cocycle (given over positions `0..n`).
    pub(crate) fn coordinates(&self, z: &[R]) -> GroupElement {
        assert_eq!(z.len(), self.n);
        let mut z = z.to_vec();
        for (i, s, a) in &self.coboundary_steps {
            if z[*i].is_zero() {
                continue;
            }
            let c = -(s.clone() * z[*i].clone());
            for (p, v) in a {
                z[*p] = z[*p].clone() + c.clone() * v.clone();
            }
        }
        let kept: Vec<R> = self.kept.iter().map(|&i| z[i].clone()).collect();
        self.cokernel.projection(&self.kernel_coords.mul_vec(&kept))
    }

    /// A cocycle representing the given coordinates.
    pub(crate) fn representative(&self, x: &GroupElement) -> Vec<R> {
        let w = self.cokernel.section(x);
        let kept = self.kernel.mul_vec(&w);
        let mut z = vec![R::zero(); self.n];
        for (&i, v) in self.kept.iter().zip(kept) {
            z[i] = v;
        }
        for (l, s, row) in self.kernel_steps.iter().rev() {
            let mut acc = R::zero();
            for (p, v) in row {
                if !z[*p].is_zero() {
                    acc = acc + v.clone() * z[*p].clone();
                }
            }
            z[*l] = -(s.clone() * acc);
        }
        z
    }
}

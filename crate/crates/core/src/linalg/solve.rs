use super::matrix::Matrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use crate::scalar::{EuclideanRing, Gf2, Ring};

/// Why `M x = b` has no solution, in Smith coordinates `c = U b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insoluble<T> {
    /// `c_i` is not divisible by the invariant factor `d_i`.
    NotDivisible { index: usize, coordinate: T, factor: T },
    /// `c_i != 0` for some `i` past the rank.
    OutsideImage { index: usize, coordinate: T },
}

/// Solves `M x = b` over a Euclidean ring, given the Smith decomposition of
/// `M`. Free directions are set to zero, so `b = 0` yields `x = 0` and the
/// solution is additive in `b` on the solvable set.
pub fn solve_with_smith<T: EuclideanRing>(s: &SmithDecomposition<T>, b: &[T]) -> Result<Vec<T>, Insoluble<T>> {
    let c = s.u.mul_vec(b);
    let r = s.rank();
    let mut y = vec![T::zero(); s.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        if i < r {
            let (q, rem) = ci.div_rem_euclid(&s.invariant_factors[i]);
            if !rem.is_zero() {
                return Err(Insoluble::NotDivisible {
                    index: i,
                    coordinate: ci.clone(),
                    factor: s.invariant_factors[i].clone(),
                });
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Err(Insoluble::OutsideImage { index: i, coordinate: ci.clone() });
        }
    }
    Ok(s.v.mul_vec(&y))
}

/// Solves `M x = b` exactly; `None` when no solution exists in the ring.
pub fn solve<T: EuclideanRing>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows(), b.len(), "right-hand side has the wrong length");
    solve_with_smith(&smith_normal_form(m), b).ok()
}

/// Gaussian elimination over the two-element field. Free variables are set
/// to zero.
pub fn solve_f2(m: &Matrix<Gf2>, b: &[Gf2]) -> Option<Vec<Gf2>> {
    assert_eq!(m.rows(), b.len(), "right-hand side has the wrong length");
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.hcat(&Matrix::from_columns(&[b.to_vec()], rows));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[(i, c)].is_unit()) else {
            continue;
        };
        a.swap_rows(r, p);
        for i in 0..rows {
            if i != r && a[(i, c)].is_unit() {
                a.add_row_multiple(i, r, &Gf2::ONE);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| a[(i, cols)].is_unit()) {
        return None;
    }
    let mut x = vec![Gf2::ZERO; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[(i, cols)];
    }
    Some(x)
}

/// Rank over the two-element field.
pub fn rank_f2(m: &Matrix<Gf2>) -> usize {
    smith_normal_form(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Integer;

    fn z(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn f(v: &[i64]) -> Vec<Gf2> {
        v.iter().map(|&x| Gf2::from_i64(x)).collect()
    }

    #[test]
    fn scalar_equations() {
        let m = Matrix::<Integer>::from_i64_rows(&[vec![2]]);
        assert_eq!(solve(&m, &z(&[4])), Some(z(&[2])));
        assert_eq!(solve(&m, &z(&[3])), None);
    }

    #[test]
    fn insolubility_certificate() {
        let m = Matrix::<Integer>::from_i64_rows(&[vec![2, 0], vec![0, 0]]);
        let s = smith_normal_form(&m);
        assert!(matches!(solve_with_smith(&s, &z(&[1, 0])), Err(Insoluble::NotDivisible { .. })));
        assert!(matches!(solve_with_smith(&s, &z(&[0, 1])), Err(Insoluble::OutsideImage { .. })));
    }

    #[test]
    fn f2_examples() {
        let m = Matrix::<Gf2>::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(solve_f2(&m, &f(&[1, 0])), Some(f(&[1, 0])));
        assert_eq!(solve_f2(&m.transpose(), &f(&[1, 0])), Some(f(&[1, 1])));
        let m = Matrix::<Gf2>::from_i64_rows(&[vec![1, 1]]);
        let x = solve_f2(&m, &f(&[1])).unwrap();
        assert_eq!(m.mul_vec(&x), f(&[1]));
        assert_eq!(x, f(&[1, 0]));
        let m = Matrix::<Gf2>::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_f2(&m, &f(&[1, 0])), None);
        assert_eq!(solve_f2(&m, &f(&[0, 0])), Some(f(&[0, 0])));
    }
}

//! Linear algebra over `F_q`: row reduction, rank, inverses, subspaces.

use super::field::{Field, Fq};
use super::matrix::Matrix;

/// Reduced row echelon form and pivot columns.
pub fn rref(field: &Field, m: &Matrix<Fq>) -> (Matrix<Fq>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if pr != r {
            for j in 0..cols {
                let t = *a.get(r, j);
                a.set(r, j, *a.get(pr, j));
                a.set(pr, j, t);
            }
        }
        let inv = field.inv(*a.get(r, c)).unwrap();
        for j in 0..cols {
            a.set(r, j, field.mul(*a.get(r, j), inv));
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = *a.get(i, c);
            if f.is_zero() {
                continue;
            }
            for j in 0..cols {
                let v = field.sub(*a.get(i, j), field.mul(f, *a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(field: &Field, m: &Matrix<Fq>) -> usize {
    rref(field, m).1.len()
}

pub fn inverse(field: &Field, m: &Matrix<Fq>) -> Option<Matrix<Fq>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let aug = m.hstack(&Matrix::identity(field, n)).unwrap();
    let (r, piv) = rref(field, &aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(r.select_columns(n..2 * n))
}

/// Basis (as columns) of the column space, taken from the original columns.
pub fn column_basis(field: &Field, m: &Matrix<Fq>) -> Vec<Vec<Fq>> {
    let (_, piv) = rref(field, m);
    piv.into_iter().map(|c| m.column(c)).collect()
}

/// Basis of the null space `{v : m v = 0}`.
pub fn kernel(field: &Field, m: &Matrix<Fq>) -> Vec<Vec<Fq>> {
    let (r, piv) = rref(field, m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Fq::ZERO; cols];
            v[f] = Fq::ONE;
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = field.neg(*r.get(i, f));
            }
            v
        })
        .collect()
}

/// Extends the independent vectors `basis` to a basis of `ambient` (given by
/// spanning columns), returning only the added vectors.
pub fn extend_basis(field: &Field, basis: &[Vec<Fq>], ambient: &[Vec<Fq>], dim: usize) -> Vec<Vec<Fq>> {
    let mut current: Vec<Vec<Fq>> = basis.to_vec();
    let mut added = Vec::new();
    for v in ambient {
        let mut trial = current.clone();
        trial.push(v.clone());
        if rank(field, &Matrix::from_columns(dim, &trial)) == trial.len() {
            current = trial;
            added.push(v.clone());
        }
    }
    added
}

/// Dimension of the span of the given vectors.
pub fn span_dim(field: &Field, vecs: &[Vec<Fq>], dim: usize) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    rank(field, &Matrix::from_columns(dim, vecs))
}

/// Row operations `R_a += t R_b` whose product, applied in order, turns the
/// determinant-one matrix `h` into the identity.
pub fn transvection_reduction(field: &Field, h: &Matrix<Fq>) -> Vec<(usize, usize, Fq)> {
    let n = h.rows();
    let mut a = h.clone();
    let mut ops = Vec::new();
    let apply = |a: &mut Matrix<Fq>, ops: &mut Vec<(usize, usize, Fq)>, r: usize, s: usize, t: Fq| {
        if t.is_zero() {
            return;
        }
        for j in 0..n {
            let v = field.add(*a.get(r, j), field.mul(t, *a.get(s, j)));
            a.set(r, j, v);
        }
        ops.push((r, s, t));
    };
    for c in 0..n {
        if a.get(c, c).is_zero() {
            let r = (c + 1..n).find(|&r| !a.get(r, c).is_zero()).expect("invertible matrix");
            apply(&mut a, &mut ops, c, r, Fq::ONE);
        }
        if *a.get(c, c) != Fq::ONE && c + 1 < n {
            if a.get(c + 1, c).is_zero() {
                apply(&mut a, &mut ops, c + 1, c, Fq::ONE);
            }
            let t = field.div(field.sub(Fq::ONE, *a.get(c, c)), *a.get(c + 1, c)).unwrap();
            apply(&mut a, &mut ops, c, c + 1, t);
        }
        for r in 0..n {
            if r != c {
                let t = field.neg(*a.get(r, c));
                apply(&mut a, &mut ops, r, c, t);
            }
        }
    }
    debug_assert_eq!(a, Matrix::identity(field, n), "matrix did not have determinant one");
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvections_rebuild_sl_matrix() {
        let f = Field::prime(5);
        let h = Matrix::from_rows(vec![
            vec![f.from_int(0), f.from_int(2), f.from_int(1)],
            vec![f.from_int(3), f.from_int(0), f.from_int(0)],
            vec![f.from_int(0), f.from_int(0), f.from_int(0)],
        ])
        .unwrap();
        let mut h = h;
        h.set(2, 2, f.from_int(1));
        let d = h.det_in(&f).unwrap();
        // rescale the first column to force det 1
        let dinv = f.inv(d).unwrap();
        for i in 0..3 {
            let v = f.mul(*h.get(i, 0), dinv);
            h.set(i, 0, v);
        }
        let ops = transvection_reduction(&f, &h);
        // h = E_1^{-1} ... E_k^{-1}
        let mut prod = Matrix::identity(&f, 3);
        for &(a, b, t) in &ops {
            let mut e = Matrix::identity(&f, 3);
            e.set(a, b, f.neg(t));
            prod = prod.mul_in(&f, &e);
        }
        assert_eq!(prod, h);
    }

    #[test]
    fn inverse_and_kernel() {
        let f = Field::prime(7);
        let m = Matrix::from_rows(vec![vec![f.from_int(1), f.from_int(2)], vec![f.from_int(2), f.from_int(4)]]).unwrap();
        assert!(inverse(&f, &m).is_none());
        let k = kernel(&f, &m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec_in(&f, &k[0]).iter().all(|c| c.is_zero()));
        let m = Matrix::from_rows(vec![vec![f.from_int(1), f.from_int(2)], vec![f.from_int(3), f.from_int(4)]]).unwrap();
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(m.mul_in(&f, &inv), Matrix::identity(&f, 2));
    }
}

//! Column Hermite normal form over `k[t]` and the submodule operations built
//! on it (kernels, membership, sums, intersections).
//!
//! A matrix `H` is in column Hermite form when its nonzero columns come first,
//! each nonzero column `k` has a monic pivot in row `r_k` with zeros above it,
//! `r_0 < r_1 < ...`, and in every pivot row the entries of the earlier columns
//! have degree below the pivot. Two matrices generate the same column module
//! exactly when their Hermite forms agree.

use super::field::{Field, Fq};
use super::linalg;
use super::matrix::Matrix;
use super::matrix::PolyMatrix;
use super::poly::DensePoly;

#[derive(Clone, Debug)]
pub struct Hermite {
    /// `m * u`, in column Hermite form (zero columns last).
    pub h: PolyMatrix,
    /// Unimodular transform with `h = m * u`.
    pub u: PolyMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

struct Work {
    rows: usize,
    cols: Vec<Vec<DensePoly>>,
    ucols: Vec<Vec<DensePoly>>,
}

impl Work {
    fn swap(&mut self, a: usize, b: usize) {
        self.cols.swap(a, b);
        self.ucols.swap(a, b);
    }

    /// col_j -= q * col_k
    fn axpy(&mut self, j: usize, k: usize, q: &DensePoly) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q.mul(&self.cols[k][i]);
            self.cols[j][i] = self.cols[j][i].sub(&t);
        }
        for i in 0..self.ucols[k].len() {
            let t = q.mul(&self.ucols[k][i]);
            self.ucols[j][i] = self.ucols[j][i].sub(&t);
        }
    }

    fn scale(&mut self, k: usize, c: super::field::Fq) {
        for e in self.cols[k].iter_mut() {
            *e = e.scale(c);
        }
        for e in self.ucols[k].iter_mut() {
            *e = e.scale(c);
        }
    }
}

pub fn column_hermite(m: &PolyMatrix) -> Hermite {
    let field = field_of(m);
    let n = m.cols();
    let rows = m.rows();
    let ident = PolyMatrix::poly_identity(&field, n);
    let mut w = Work { rows, cols: m.columns(), ucols: ident.columns() };
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..rows {
        if k == n {
            break;
        }
        loop {
            // column with the lowest-degree nonzero entry in row i
            let best = (k..n)
                .filter(|&j| !w.cols[j][i].is_zero())
                .min_by_key(|&j| w.cols[j][i].deg_i());
            let Some(best) = best else { break };
            w.swap(k, best);
            let mut done = true;
            for j in k + 1..n {
                if w.cols[j][i].is_zero() {
                    continue;
                }
                let q = w.cols[j][i].div(&w.cols[k][i]);
                w.axpy(j, k, &q);
                if !w.cols[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if w.cols[k][i].is_zero() {
            continue;
        }
        let inv = field.inv(w.cols[k][i].lead()).unwrap();
        w.scale(k, inv);
        for j in 0..k {
            let q = w.cols[j][i].div(&w.cols[k][i]);
            w.axpy(j, k, &q);
        }
        pivot_rows.push(i);
        k += 1;
    }
    let h = PolyMatrix::from_columns(rows, &w.cols);
    let u = PolyMatrix::from_columns(n, &w.ucols);
    Hermite { h, u, rank: k, pivot_rows }
}

fn field_of(m: &PolyMatrix) -> Field {
    m.entries().first().map(|e| e.field().clone()).expect("matrix with at least one entry")
}

/// Canonical generator matrix of the column module of `m` (only nonzero
/// columns are kept). Requires `m.rows() > 0`.
pub fn hnf(m: &PolyMatrix) -> PolyMatrix {
    if m.cols() == 0 {
        return m.clone();
    }
    let hr = column_hermite(m);
    hr.h.select_columns(0..hr.rank)
}

/// Columns form a `k[t]`-basis of `{v : m v = 0}`, in Hermite form.
/// `field` is needed only when `m` has no entries.
pub fn hermite_kernel_in(field: &Field, m: &PolyMatrix) -> PolyMatrix {
    let n = m.cols();
    if n == 0 {
        return PolyMatrix::poly_zeros(field, 0, 0);
    }
    if m.rows() == 0 {
        return PolyMatrix::poly_identity(field, n);
    }
    let hr = column_hermite(m);
    let basis = hr.u.select_columns(hr.rank..n);
    if basis.cols() == 0 {
        return basis;
    }
    hnf(&basis)
}

pub fn hermite_kernel(m: &PolyMatrix) -> PolyMatrix {
    let field = field_of(m);
    hermite_kernel_in(&field, m)
}

/// Column-reduces the nonzero columns of `m`: the result spans the same
/// module and the leading coefficient vectors (taken at each column's own
/// degree) are linearly independent, so `deg(Σ c_i b_i) = max(deg c_i + deg b_i)`.
pub fn column_reduce(field: &Field, m: &PolyMatrix) -> PolyMatrix {
    let rows = m.rows();
    let mut cols: Vec<Vec<DensePoly>> = m.columns().into_iter().filter(|c| c.iter().any(|e| !e.is_zero())).collect();
    let degree = |c: &[DensePoly]| c.iter().filter_map(|e| e.degree()).max().unwrap_or(0);
    loop {
        let degs: Vec<usize> = cols.iter().map(|c| degree(c)).collect();
        let lead = Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].coeff(degs[j]));
        let Some(rel) = linalg::kernel(field, &lead).into_iter().next() else {
            return PolyMatrix::from_columns(rows, &cols);
        };
        let top = (0..cols.len()).filter(|&j| rel[j] != Fq::ZERO).max_by_key(|&j| degs[j]).unwrap();
        let scale = field.inv(rel[top]).expect("nonzero pivot");
        let mut next = vec![DensePoly::zero(field); rows];
        for (j, c) in cols.iter().enumerate() {
            if rel[j] == Fq::ZERO {
                continue;
            }
            let k = field.mul(rel[j], scale);
            for i in 0..rows {
                next[i] = next[i].add(&c[i].shift(degs[top] - degs[j]).scale(k));
            }
        }
        if next.iter().all(|e| e.is_zero()) {
            cols.remove(top);
        } else {
            cols[top] = next;
        }
    }
}

/// Rank over the fraction field.
pub fn rank(m: &PolyMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    column_hermite(m).rank
}

/// Coordinates of `v` in a column-Hermite basis `h`, or `None` if `v` is not
/// in the column module of `h`.
pub fn solve_hermite(h: &PolyMatrix, v: &[DensePoly]) -> Option<Vec<DensePoly>> {
    assert_eq!(h.rows(), v.len());
    let mut residual = v.to_vec();
    let mut coords = Vec::with_capacity(h.cols());
    let mut row = 0;
    for k in 0..h.cols() {
        while row < h.rows() && h.get(row, k).is_zero() {
            if !residual[row].is_zero() {
                return None;
            }
            row += 1;
        }
        if row == h.rows() {
            // zero column: not in Hermite form
            return None;
        }
        let c = residual[row].div_exact(h.get(row, k))?;
        for (i, r) in residual.iter_mut().enumerate() {
            let t = c.mul(h.get(i, k));
            *r = r.sub(&t);
        }
        coords.push(c);
        row += 1;
    }
    if residual.iter().all(|r| r.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

pub fn contains(h: &PolyMatrix, v: &[DensePoly]) -> bool {
    solve_hermite(h, v).is_some()
}

/// True when every column of `b` lies in the column module of the Hermite
/// basis `a`.
pub fn is_submodule(b: &PolyMatrix, a: &PolyMatrix) -> bool {
    b.columns().iter().all(|c| contains(a, c))
}

/// Hermite basis of `span(a) + span(b)`.
pub fn module_sum(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    hnf(&a.hstack(b).expect("same ambient rank"))
}

/// Hermite basis of `span(a) ∩ span(b)` (columns of `a` and `b` independent).
pub fn module_intersection(field: &Field, a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let stacked = a.hstack(&b.neg_in(&super::ring::PolyRing::new(field))).expect("same ambient rank");
    let ker = hermite_kernel_in(field, &stacked);
    if ker.cols() == 0 {
        return PolyMatrix::poly_zeros(field, a.rows(), 0);
    }
    let top = ker.select_rows(0..a.cols());
    hnf(&a.mul_in(&super::ring::PolyRing::new(field), &top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::PolyRing;

    #[test]
    fn kernel_examples() {
        let f = Field::prime(5);
        let m = PolyMatrix::from_int_rows(&f, &[&[&[0, 1], &[0, 1]]]);
        let k = hermite_kernel(&m);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![DensePoly::from_ints(&f, &[1]), DensePoly::from_ints(&f, &[-1])]);

        let id = PolyMatrix::poly_identity(&f, 2);
        assert_eq!(hermite_kernel(&id).cols(), 0);

        let m = PolyMatrix::from_int_rows(&f, &[&[&[0, 0, 1]]]);
        assert_eq!(hermite_kernel(&m).cols(), 0);
    }

    #[test]
    fn hnf_is_canonical() {
        let f = Field::prime(3);
        let r = PolyRing::new(&f);
        let m = PolyMatrix::from_int_rows(
            &f,
            &[&[&[1, 1], &[0, 1], &[2]], &[&[0, 0, 1], &[1], &[1, 2, 1]], &[&[2], &[1, 1], &[]]],
        );
        let h = hnf(&m);
        assert_eq!(hnf(&h), h);
        // multiply by a unimodular matrix: same module, same form
        let u = PolyMatrix::from_int_rows(
            &f,
            &[&[&[1], &[0, 1], &[]], &[&[], &[1], &[2, 0, 1]], &[&[], &[], &[1]]],
        );
        assert_eq!(hnf(&m.mul_in(&r, &u)), h);
    }

    #[test]
    fn intersection_of_lines() {
        let f = Field::prime(3);
        // span (x, 0) ∩ span (x^2, 0) = span (x^2, 0)
        let a = PolyMatrix::from_int_rows(&f, &[&[&[0, 1]], &[&[]]]);
        let b = PolyMatrix::from_int_rows(&f, &[&[&[0, 0, 1]], &[&[]]]);
        let i = module_intersection(&f, &hnf(&a), &hnf(&b));
        assert_eq!(i, hnf(&b));
    }
}

//! Dense matrices over any [`Ring`], with division-free characteristic
//! polynomials.

use super::field::{Field, Fq};
use super::poly::DensePoly;
use super::ring::{PolyRing, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Matrix over `k[x]`.
pub type PolyMatrix = Matrix<DensePoly>;

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn column_vector(v: Vec<T>) -> Self {
        Matrix { rows: v.len(), cols: 1, entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> Self {
        let idx: Vec<usize> = cols.collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, &idx)
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        let idx: Vec<usize> = rows.collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&idx, &cols)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }
}

impl<T: Clone + PartialEq + std::fmt::Debug> Matrix<T> {
    pub fn zeros<R: Ring<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn scalar<R: Ring<Elem = T>>(ring: &R, n: usize, c: &T) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { ring.zero() })
    }

    pub fn is_zero_in<R: Ring<Elem = T>>(&self, ring: &R) -> bool {
        self.entries.iter().all(|e| ring.is_zero(e))
    }

    pub fn add_in<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub_in<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn neg_in<R: Ring<Elem = T>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    pub fn scale_in<R: Ring<Elem = T>>(&self, ring: &R, c: &T) -> Self {
        self.map(|a| ring.mul(c, a))
    }

    pub fn mul_in<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec_in<R: Ring<Elem = T>>(&self, ring: &R, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(self.get(i, j), &v[j])))
            })
            .collect()
    }

    pub fn pow_in<R: Ring<Elem = T>>(&self, ring: &R, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Matrix::identity(ring, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_in(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_in(ring, &base);
            }
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron_in<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            ring.mul(
                self.get(i / other.rows, j / other.cols),
                other.get(i % other.rows, j % other.cols),
            )
        })
    }

    /// `det(λ I - self)` as ascending coefficients (length `n + 1`, last = 1),
    /// computed with Berkowitz's division-free recursion.
    pub fn charpoly_in<R: Ring<Elem = T>>(&self, ring: &R) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("charpoly of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        // descending coefficients of the charpoly of the leading k x k block
        let mut p: Vec<T> = vec![ring.one()];
        for k in 0..n {
            // block A_k (k x k), column C = A[0..k][k], row R = A[k][0..k], a = A[k][k]
            let a = self.get(k, k).clone();
            let mut col: Vec<T> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let mut toeplitz = Vec::with_capacity(k + 2);
            toeplitz.push(ring.one());
            toeplitz.push(ring.neg(&a));
            for _ in 0..k {
                // R * A_k^j * C
                let rc = (0..k).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.mul(self.get(k, i), &col[i])));
                toeplitz.push(ring.neg(&rc));
                col = (0..k)
                    .map(|i| (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(self.get(i, j), &col[j]))))
                    .collect();
            }
            let mut next = vec![ring.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = ring.zero();
                for (j, pj) in p.iter().enumerate() {
                    if i >= j && i - j < toeplitz.len() {
                        acc = ring.add(&acc, &ring.mul(&toeplitz[i - j], pj));
                    }
                }
                *slot = acc;
            }
            p = next;
        }
        p.reverse();
        Ok(p)
    }

    pub fn det_in<R: Ring<Elem = T>>(&self, ring: &R) -> Result<T> {
        let cp = self.charpoly_in(ring)?;
        let c0 = cp[0].clone();
        Ok(if self.rows.is_multiple_of(2) { c0 } else { ring.neg(&c0) })
    }

    /// Adjugate via the characteristic polynomial (division free).
    pub fn adjugate_in<R: Ring<Elem = T>>(&self, ring: &R) -> Result<Self> {
        let cp = self.charpoly_in(ring)?;
        let n = self.rows;
        // A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I, by Horner
        let mut acc = Matrix::identity(ring, n);
        for i in (1..n).rev() {
            acc = acc.mul_in(ring, self).add_in(ring, &Matrix::scalar(ring, n, &cp[i]));
        }
        Ok(if n % 2 == 1 { acc } else { acc.neg_in(ring) })
    }

    /// `Σ c_i self^i` for ascending coefficients `c`.
    pub fn eval_poly_in<R: Ring<Elem = T>>(&self, ring: &R, c: &[T]) -> Self {
        let n = self.rows;
        let mut acc = Matrix::zeros(ring, n, n);
        for ci in c.iter().rev() {
            acc = acc.mul_in(ring, self).add_in(ring, &Matrix::scalar(ring, n, ci));
        }
        acc
    }
}

impl PolyMatrix {
    pub fn poly_zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix::zeros(&PolyRing::new(field), rows, cols)
    }

    pub fn poly_identity(field: &Field, n: usize) -> Self {
        Matrix::identity(&PolyRing::new(field), n)
    }

    pub fn from_int_rows(field: &Field, rows: &[&[&[i64]]]) -> Self {
        let rows: Vec<Vec<DensePoly>> =
            rows.iter().map(|r| r.iter().map(|c| DensePoly::from_ints(field, c)).collect()).collect();
        Matrix::from_rows(rows).expect("rectangular input")
    }

    pub fn from_const(field: &Field, m: &Matrix<Fq>) -> Self {
        m.map(|&c| DensePoly::constant(field, c))
    }

    pub fn eval_at(&self, c: Fq) -> Matrix<Fq> {
        self.map(|f| f.eval(c))
    }

    pub fn max_degree(&self) -> i64 {
        self.entries.iter().map(|f| f.deg_i()).max().unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|f| f.is_zero())
    }

    pub fn derivative(&self) -> Self {
        self.map(|f| f.derivative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_examples() {
        let f = Field::prime(2);
        let r = PolyRing::new(&f);
        let m = PolyMatrix::from_int_rows(&f, &[&[&[]]]);
        let cp = m.charpoly_in(&r).unwrap();
        assert_eq!(cp, vec![DensePoly::zero(&f), DensePoly::one(&f)]);

        let m = PolyMatrix::from_int_rows(&f, &[&[&[], &[1]], &[&[], &[]]]);
        let cp = m.charpoly_in(&r).unwrap();
        assert!(cp[0].is_zero() && cp[1].is_zero() && cp[2].is_one());

        let m = PolyMatrix::from_int_rows(&f, &[&[&[], &[0, 0, 1]], &[&[1], &[]]]);
        let cp = m.charpoly_in(&r).unwrap();
        assert_eq!(cp[0], DensePoly::from_ints(&f, &[0, 0, 1]));
        assert!(cp[1].is_zero());
    }

    #[test]
    fn charpoly_non_square_is_error() {
        let f = Field::prime(3);
        let m = PolyMatrix::poly_zeros(&f, 2, 3);
        assert!(m.charpoly_in(&PolyRing::new(&f)).is_err());
    }

    #[test]
    fn det_and_adjugate_over_fp() {
        let f = Field::prime(7);
        let m = Matrix::from_rows(vec![
            vec![f.from_int(2), f.from_int(3), f.from_int(1)],
            vec![f.from_int(0), f.from_int(5), f.from_int(4)],
            vec![f.from_int(6), f.from_int(1), f.from_int(2)],
        ])
        .unwrap();
        let det = m.det_in(&f).unwrap();
        // 2(10-4) - 3(0-24) + 1(0-30) = 12 + 72 - 30 = 54 = 5 mod 7
        assert_eq!(det, f.from_int(54));
        let adj = m.adjugate_in(&f).unwrap();
        assert_eq!(m.mul_in(&f, &adj), Matrix::scalar(&f, 3, &det));
    }
}

//! Dense matrices over a [`Field`], plus determinants of small polynomial matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::field::{Field, Scalar};
use crate::algebra::poly::BiPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from rows of equal length; fails on ragged input or mixed fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidParameter("rows of unequal length".into()));
            }
            for v in row {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                data.push(v);
            }
        }
        Ok(DenseMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular input")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidParameter("matrix dimensions do not agree".into()));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Row `dst += c * row src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(dst, j).add(&c.mul(self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// Column `dst += c * column src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.get(i, dst).add(&c.mul(self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = -m.get(i, c);
                    m.add_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// A basis (as rows) of `{v : v * self = 0}`.
    pub fn left_null_space(&self) -> Vec<Vec<Scalar>> {
        self.transpose().null_space()
    }

    /// A basis of `{v : self * v = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -red.get(r, free);
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials by expansion along rows,
/// memoized on the set of used columns.
pub fn poly_det(rows: &[Vec<&BiPoly>], zero: &BiPoly) -> BiPoly {
    let n = rows.len();
    if n == 0 {
        return BiPoly::one(zero.field(), zero.nt());
    }
    assert!(n <= 20, "polynomial determinant too large");
    // dp[mask] = sum over bijections of the first popcount(mask) rows onto `mask`
    let mut dp: Vec<Option<BiPoly>> = vec![None; 1 << n];
    dp[0] = Some(BiPoly::one(zero.field(), zero.nt()));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        let r = mask.count_ones() as usize;
        if r == n {
            dp[mask] = Some(cur);
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || rows[r][c].is_zero() {
                continue;
            }
            // sign: number of used columns greater than c
            let above = (mask >> (c + 1)).count_ones();
            let mut term = &cur * rows[r][c];
            if above % 2 == 1 {
                term = -term;
            }
            let next = mask | (1 << c);
            dp[next] = Some(match dp[next].take() {
                Some(acc) => &acc + &term,
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| zero.clone())
}

/// Signed maximal minors of an `m x (m-1)` polynomial matrix:
/// `delta_i = (-1)^(i+1) det(phi without row i)` (1-based `i`).
pub fn signed_maximal_minors(phi: &[Vec<BiPoly>]) -> Vec<BiPoly> {
    let m = phi.len();
    let zero = BiPoly::zero(phi[0][0].field(), phi[0][0].nt());
    (0..m)
        .map(|skip| {
            let sub: Vec<Vec<&BiPoly>> = phi
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, row)| row.iter().collect())
                .collect();
            let d = poly_det(&sub, &zero);
            if skip % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    const F: Field = Field::Prime(32003);

    #[test]
    fn rank_examples() {
        assert_eq!(DenseMatrix::identity(F, 3).rank(), 3);
        assert_eq!(DenseMatrix::zeros(F, 3, 4).rank(), 0);
        assert_eq!(DenseMatrix::from_i64(F, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = DenseMatrix::from_i64(F, &[&[2, 1, 0], &[0, 1, 5], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), DenseMatrix::identity(F, 3));
        assert!(DenseMatrix::from_i64(F, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn null_spaces() {
        let a = DenseMatrix::from_i64(F, &[&[1, 2], &[2, 4], &[0, 0]]);
        let left = a.left_null_space();
        assert_eq!(left.len(), 2);
        for v in &left {
            let row = DenseMatrix::from_rows(F, vec![v.clone()]).unwrap();
            assert!(row.mul(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_rank() {
        let q = Field::Rational;
        let a = DenseMatrix::from_i64(q, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn polynomial_determinant() {
        let p = |s: &str| parse_poly(s, F, 0).unwrap();
        let m = [vec![p("x"), p("y^2")], vec![p("-y"), p("0")]];
        let zero = p("0");
        let rows: Vec<Vec<&BiPoly>> = m.iter().map(|r| r.iter().collect()).collect();
        assert_eq!(poly_det(&rows, &zero), p("y^3"));
        let three = [
            vec![p("x"), p("0"), p("1")],
            vec![p("y"), p("x"), p("0")],
            vec![p("0"), p("y"), p("x")],
        ];
        let rows: Vec<Vec<&BiPoly>> = three.iter().map(|r| r.iter().collect()).collect();
        assert_eq!(poly_det(&rows, &zero), p("x^3 + y^2"));
    }
}

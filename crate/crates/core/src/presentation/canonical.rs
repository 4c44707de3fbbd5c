//! Reduction of an `m x (m-2)` matrix of linear forms to the block form
//! `diag(D(sigma), D(tau))` by scalar row and column operations.
//!
//! `D(a)` is the `(a+1) x a` matrix with `x` on the diagonal and `y` just below it.
//! The reduction peels one `y`-row at a time and recurses on the remaining
//! `(m-1) x (m-3)` block, then merges the new column into one of the two blocks.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::field::{Field, Scalar};
use crate::algebra::matrix::DenseMatrix;
use crate::algebra::poly::{BiPoly, Monomial, Var};
use crate::error::{Error, Result};

/// Invertible scalar matrices `U`, `V` with `U * M * V = diag(D(sigma), D(tau))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub sigma: usize,
    pub tau: usize,
}

impl CanonicalForm {
    /// Number of blocks of the linear part: 1 when `tau = 0`, else 2.
    pub fn rho(&self) -> usize {
        if self.tau == 0 {
            1
        } else {
            2
        }
    }

    /// The partition of `m - 2` read off the block sizes.
    pub fn partition(&self) -> Vec<usize> {
        if self.tau == 0 {
            alloc::vec![self.sigma]
        } else {
            alloc::vec![self.sigma, self.tau]
        }
    }

    pub fn m(&self) -> usize {
        self.sigma + self.tau + 2
    }
}

/// The pencil `x * A + y * B` of a matrix of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPencil {
    pub a: DenseMatrix,
    pub b: DenseMatrix,
}

impl LinearPencil {
    /// Splits a matrix of linear forms (or zeros) in `x, y`.
    pub fn from_matrix(field: Field, rows: &[Vec<BiPoly>], cols: usize) -> Result<Self> {
        let m = rows.len();
        let mut a = DenseMatrix::zeros(field, m, cols);
        let mut b = DenseMatrix::zeros(field, m, cols);
        let x = Monomial::var(Var::X);
        let y = Monomial::var(Var::Y);
        for (i, row) in rows.iter().enumerate() {
            if row.len() < cols {
                return Err(Error::InvalidParameter(format!(
                    "row {} has {} entries",
                    i + 1,
                    row.len()
                )));
            }
            for (j, e) in row.iter().take(cols).enumerate() {
                if e.monomials().any(|mo| *mo != x && *mo != y) {
                    return Err(Error::WrongColumnDegrees {
                        row: i + 1,
                        col: j + 1,
                        expected: 1,
                        found: format!("{e}"),
                    });
                }
                a.set(i, j, e.coeff(&x));
                b.set(i, j, e.coeff(&y));
            }
        }
        Ok(LinearPencil { a, b })
    }

    pub fn to_matrix(&self, nt: usize) -> Vec<Vec<BiPoly>> {
        let field = self.a.field();
        let x = Monomial::var(Var::X);
        let y = Monomial::var(Var::Y);
        (0..self.a.rows())
            .map(|i| {
                (0..self.a.cols())
                    .map(|j| {
                        BiPoly::from_terms(
                            field,
                            nt,
                            [(self.a.get(i, j).clone(), x), (self.b.get(i, j).clone(), y)],
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// `diag(D(sigma), D(tau))` with `+y` below the diagonal.
    pub fn block_target(field: Field, sigma: usize, tau: usize) -> Self {
        let m = sigma + tau + 2;
        let mut a = DenseMatrix::zeros(field, m, m - 2);
        let mut b = DenseMatrix::zeros(field, m, m - 2);
        for j in 0..sigma {
            a.set(j, j, field.one());
            b.set(j + 1, j, field.one());
        }
        for j in 0..tau {
            a.set(sigma + 1 + j, sigma + j, field.one());
            b.set(sigma + 2 + j, sigma + j, field.one());
        }
        LinearPencil { a, b }
    }

    /// `X * self * Y`.
    pub fn transform(&self, left: &DenseMatrix, right: &DenseMatrix) -> Result<Self> {
        Ok(LinearPencil {
            a: left.mul(&self.a)?.mul(right)?,
            b: left.mul(&self.b)?.mul(right)?,
        })
    }
}

struct Work {
    a: DenseMatrix,
    b: DenseMatrix,
    u: DenseMatrix,
    v: DenseMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.b.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.b.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &Scalar) {
        self.a.add_row_multiple(dst, src, c);
        self.b.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &Scalar) {
        self.a.add_col_multiple(dst, src, c);
        self.b.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        self.a.scale_row(i, c);
        self.b.scale_row(i, c);
        self.u.scale_row(i, c);
    }

    fn scale_col(&mut self, j: usize, c: &Scalar) {
        self.a.scale_col(j, c);
        self.b.scale_col(j, c);
        self.v.scale_col(j, c);
    }

    fn left_mul(&mut self, x: &DenseMatrix) -> Result<()> {
        self.a = x.mul(&self.a)?;
        self.b = x.mul(&self.b)?;
        self.u = x.mul(&self.u)?;
        Ok(())
    }

    fn right_mul(&mut self, y: &DenseMatrix) -> Result<()> {
        self.a = self.a.mul(y)?;
        self.b = self.b.mul(y)?;
        self.v = self.v.mul(y)?;
        Ok(())
    }

    /// Reorders rows and columns: new row `i` is old row `rows[i]`.
    fn permute(&mut self, rows: &[usize], cols: &[usize]) -> Result<()> {
        let field = self.a.field();
        let mut p = DenseMatrix::zeros(field, rows.len(), rows.len());
        for (i, &r) in rows.iter().enumerate() {
            p.set(i, r, field.one());
        }
        let mut q = DenseMatrix::zeros(field, cols.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            q.set(c, j, field.one());
        }
        self.left_mul(&p)?;
        self.right_mul(&q)
    }
}

fn embed(block: &DenseMatrix, size: usize) -> DenseMatrix {
    let mut out = DenseMatrix::identity(block.field(), size);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out.set(i, j, block.get(i, j).clone());
        }
    }
    out
}

fn violated(what: &str) -> Error {
    Error::HypothesisViolated(what.into())
}

/// Reduces the pencil `x*A + y*B` (size `m x (m-2)`) to block form.
fn reduce(a: &DenseMatrix, b: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix, usize, usize)> {
    let field = a.field();
    let m = a.rows();
    let c = a.cols();
    debug_assert_eq!(c + 2, m);
    if c == 0 {
        return Ok((DenseMatrix::identity(field, m), DenseMatrix::identity(field, 0), 0, 0));
    }
    let mut w = Work {
        a: a.clone(),
        b: b.clone(),
        u: DenseMatrix::identity(field, m),
        v: DenseMatrix::identity(field, c),
    };

    // Row operations putting two left null vectors of A at the bottom, so the
    // bottom two rows only involve y.
    let null = w.a.left_null_space();
    debug_assert!(null.len() >= 2);
    let bottom = [null[null.len() - 2].clone(), null[null.len() - 1].clone()];
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut basis = DenseMatrix::from_rows(field, bottom.to_vec())?;
    for k in 0..m {
        if rows.len() + 2 == m {
            break;
        }
        let mut e = alloc::vec![field.zero(); m];
        e[k] = field.one();
        let mut trial = rows.clone();
        trial.push(e.clone());
        trial.extend(bottom.iter().cloned());
        let t = DenseMatrix::from_rows(field, trial)?;
        if t.rank() == t.rows() {
            rows.push(e);
            basis = t;
        }
    }
    debug_assert_eq!(basis.rows(), m);
    w.left_mul(&basis)?;

    let last = m - 1;
    let row_nonzero = |w: &Work, r: usize| (0..c).any(|j| !w.b.get(r, j).is_zero());
    if !row_nonzero(&w, last) {
        if !row_nonzero(&w, last - 1) {
            return Err(violated("the bottom two rows vanish after a change of basis"));
        }
        w.swap_rows(last, last - 1);
    }
    // Column operations making the last row [0 ... 0 y].
    let pivot = (0..c).find(|&j| !w.b.get(last, j).is_zero()).expect("nonzero row");
    w.swap_cols(pivot, c - 1);
    let inv = w.b.get(last, c - 1).inv().expect("nonzero pivot");
    w.scale_col(c - 1, &inv);
    for j in 0..c - 1 {
        let f = -w.b.get(last, j);
        if !f.is_zero() {
            w.add_col(j, c - 1, &f);
        }
    }

    // Recurse on the top-left (m-1) x (m-3) block.
    let mut a1 = DenseMatrix::zeros(field, m - 1, c - 1);
    let mut b1 = DenseMatrix::zeros(field, m - 1, c - 1);
    for i in 0..m - 1 {
        for j in 0..c - 1 {
            a1.set(i, j, w.a.get(i, j).clone());
            b1.set(i, j, w.b.get(i, j).clone());
        }
    }
    let (u1, v1, s1, t1) = reduce(&a1, &b1)?;
    w.left_mul(&embed(&u1, m))?;
    w.right_mul(&embed(&v1, c))?;

    // Block layout: rows [0, s1] and [s1+1, s1+t1+1], columns [0, s1) and [s1, s1+t1).
    let r2 = s1 + 1;
    let col = c - 1;
    // Clear x's in the new column except at the bottom row of each block.
    for (r0, c0, len) in [(0, 0, s1), (r2, s1, t1)] {
        for j in 0..len {
            let f = -w.a.get(r0 + j, col);
            if !f.is_zero() {
                w.add_col(col, c0 + j, &f);
            }
        }
    }
    // Clear y's in the new column using the last row.
    for i in 0..last {
        let f = -w.b.get(i, col);
        if !f.is_zero() {
            w.add_row(i, last, &f);
        }
    }
    let bottom1 = s1;
    let bottom2 = s1 + t1 + 1;
    let c1 = w.a.get(bottom1, col).clone();
    let c2 = w.a.get(bottom2, col).clone();
    if c1.is_zero() && c2.is_zero() {
        return Err(violated("a column has a single nonzero entry after reduction"));
    }
    for (k, ck) in [(0usize, &c1), (1, &c2)] {
        if ck.is_zero() {
            continue;
        }
        let (r0, rlen, c0, clen) = if k == 0 {
            (0, s1 + 1, 0, s1)
        } else {
            (r2, t1 + 1, s1, t1)
        };
        let inv = ck.inv().expect("nonzero");
        for i in r0..r0 + rlen {
            w.scale_row(i, &inv);
        }
        for j in c0..c0 + clen {
            w.scale_col(j, ck);
        }
    }

    let (sigma, tau);
    if !c1.is_zero() && !c2.is_zero() {
        // Case 3: fold into case 2 by subtracting the second block from the tail of the first.
        for k in 0..=t1 {
            let one = field.one();
            w.add_row(s1 - t1 + k, r2 + k, &-&one);
        }
        for k in 0..t1 {
            w.add_col(s1 + k, s1 - t1 + k, &field.one());
        }
    }
    if !c2.is_zero() {
        // Case 2: the new column and last row extend the second block.
        sigma = s1;
        tau = t1 + 1;
    } else {
        // Case 1: move the last row and column into the first block.
        let rows: Vec<usize> = (0..=s1).chain([last]).chain(r2..=s1 + t1 + 1).collect();
        let cols: Vec<usize> = (0..s1).chain([col]).chain(s1..s1 + t1).collect();
        w.permute(&rows, &cols)?;
        sigma = s1 + 1;
        tau = t1;
    }
    let (sigma, tau) = if tau > sigma {
        let rows: Vec<usize> = (sigma + 1..m).chain(0..=sigma).collect();
        let cols: Vec<usize> = (sigma..c).chain(0..sigma).collect();
        w.permute(&rows, &cols)?;
        (tau, sigma)
    } else {
        (sigma, tau)
    };
    Ok((w.u, w.v, sigma, tau))
}

/// Finds `U`, `V`, `sigma >= tau` with `U * M * V = diag(D(sigma), D(tau))` exactly.
pub fn canonicalize_pencil(p: &LinearPencil) -> Result<CanonicalForm> {
    let m = p.a.rows();
    if m < 2 || p.a.cols() + 2 != m {
        return Err(Error::InvalidParameter(format!(
            "linear part must be m x (m-2), got {} x {}",
            m,
            p.a.cols()
        )));
    }
    let (u, v, sigma, tau) = reduce(&p.a, &p.b)?;
    let target = LinearPencil::block_target(p.a.field(), sigma, tau);
    if p.transform(&u, &v)? != target {
        return Err(violated("reduction did not reach the block form"));
    }
    Ok(CanonicalForm { u, v, sigma, tau })
}

/// Canonicalizes an `m x (m-2)` matrix of linear forms.
pub fn canonicalize(field: Field, linear: &[Vec<BiPoly>]) -> Result<CanonicalForm> {
    let m = linear.len();
    if m < 3 {
        return Err(Error::InvalidParameter(format!("need m >= 3 rows, got {m}")));
    }
    let pencil = LinearPencil::from_matrix(field, linear, m - 2)?;
    if linear.iter().any(|r| r.len() != m - 2) {
        return Err(Error::InvalidParameter(format!("expected {} columns", m - 2)));
    }
    canonicalize_pencil(&pencil)
}

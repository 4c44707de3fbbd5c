//! Random presentations with a prescribed block shape, for tests and demonstrations.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::{d_block, PresentationData};
use crate::algebra::field::Field;
use crate::algebra::matrix::DenseMatrix;
use crate::algebra::poly::{BiPoly, Monomial};
use crate::error::{Error, Result};

/// Attempts before giving up on drawing a column that yields a height-two ideal.
pub const MAX_REDRAWS: usize = 100;

fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> crate::algebra::Scalar {
    match field {
        Field::Prime(p) => field.from_u64(rng.gen_range(0..p as u64)),
        Field::Rational => field.from_i64(rng.gen_range(-9..=9)),
    }
}

/// A uniformly random invertible scalar matrix.
pub fn random_invertible<R: Rng + ?Sized>(field: Field, size: usize, rng: &mut R) -> DenseMatrix {
    loop {
        let rows = (0..size)
            .map(|_| (0..size).map(|_| random_scalar(field, rng)).collect())
            .collect();
        let m = DenseMatrix::from_rows(field, rows).expect("square");
        if m.rank() == size {
            return m;
        }
    }
}

/// A random binary form of degree `deg`.
pub fn random_form<R: Rng + ?Sized>(field: Field, deg: u32, rng: &mut R) -> BiPoly {
    BiPoly::from_terms(
        field,
        0,
        (0..=deg).map(|i| (random_scalar(field, rng), Monomial::xy((deg - i) as u16, i as u16))),
    )
}

/// `phi = [P diag(D_sigma, D_tau) Q | phi'']` with random invertible `P`, `Q` and a random
/// column `phi''` of degree-`n` forms, redrawn until the minors have height two.
pub fn random_presentation<R: Rng + ?Sized>(
    field: Field,
    sigma: usize,
    tau: usize,
    n: u32,
    rng: &mut R,
) -> Result<PresentationData> {
    if sigma < tau || sigma == 0 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need sigma >= tau, sigma >= 1, n >= 2; got sigma = {sigma}, tau = {tau}, n = {n}"
        )));
    }
    let m = sigma + tau + 2;
    let mut block: Vec<Vec<BiPoly>> = alloc::vec![alloc::vec![BiPoly::zero(field, 0); m - 2]; m];
    for (i, row) in d_block(field, sigma).into_iter().enumerate() {
        block[i][..sigma].clone_from_slice(&row);
    }
    for (i, row) in d_block(field, tau).into_iter().enumerate() {
        block[sigma + 1 + i][sigma..].clone_from_slice(&row);
    }
    let p = random_invertible(field, m, rng);
    let q = random_invertible(field, m - 2, rng);
    let linear = conjugate(&block, &p, &q);
    let mut last = Error::HeightNotTwo("no draw attempted".into());
    for _ in 0..MAX_REDRAWS {
        let mut phi = linear.clone();
        for row in phi.iter_mut() {
            row.push(random_form(field, n, rng));
        }
        match PresentationData::new(field, phi) {
            Ok(pd) => return Ok(pd),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// `P * M * Q` for a matrix of polynomials and scalar matrices.
pub fn conjugate(mat: &[Vec<BiPoly>], p: &DenseMatrix, q: &DenseMatrix) -> Vec<Vec<BiPoly>> {
    let rows = mat.len();
    let cols = q.cols();
    let field = p.field();
    let nt = mat.first().and_then(|r| r.first()).map_or(0, BiPoly::nt);
    let mut out = alloc::vec![alloc::vec![BiPoly::zero(field, nt); cols]; p.rows()];
    for (i, out_row) in out.iter_mut().enumerate() {
        for (j, entry) in out_row.iter_mut().enumerate() {
            let mut acc = BiPoly::zero(field, nt);
            for k in 0..rows {
                let pk = p.get(i, k);
                if pk.is_zero() {
                    continue;
                }
                for (l, e) in mat[k].iter().enumerate() {
                    let ql = q.get(l, j);
                    if !ql.is_zero() && !e.is_zero() {
                        acc = &acc + &e.scale(&pk.mul(ql));
                    }
                }
            }
            *entry = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::canonicalize;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes_are_recovered() {
        let f = Field::Prime(32003);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (s, t, n) in [(1, 0, 2), (2, 1, 3), (2, 2, 2), (3, 0, 4)] {
            let pd = random_presentation(f, s, t, n, &mut rng).unwrap();
            assert_eq!((pd.m(), pd.n()), (s + t + 2, n));
            let cf = canonicalize(f, &pd.linear_part()).unwrap();
            assert_eq!((cf.sigma, cf.tau), (s, t));
        }
    }

    #[test]
    fn rational_draws_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pd = random_presentation(Field::Rational, 2, 1, 2, &mut rng).unwrap();
        assert_eq!(pd.d(), 5);
    }
}

//! Input ideals: presentation matrices, validation, truncation pairs and the
//! canonical block form of the linear part.

pub mod canonical;
pub mod random;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::{Field, Scalar};
use crate::algebra::forms::forms_gcd;
use crate::algebra::matrix::{signed_maximal_minors, DenseMatrix};
use crate::algebra::poly::{BiPoly, Monomial, Var};
use crate::error::{Error, Result};

pub use canonical::{canonicalize, canonicalize_pencil, CanonicalForm, LinearPencil};

/// An `m x (m-1)` presentation matrix `[phi' | phi'']` over `k[x, y]`: the first
/// `m - 2` columns are linear, the last column has degree `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationData {
    field: Field,
    m: usize,
    n: u32,
    phi: Vec<Vec<BiPoly>>,
    minors: Vec<BiPoly>,
}

/// Outcome of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub m: usize,
    pub n: u32,
    pub d: u32,
    /// Signed maximal minors `delta_1, ..., delta_m`.
    pub minors: Vec<BiPoly>,
    /// gcd of the minors, normalized; the constant 1 for a valid input.
    pub gcd: BiPoly,
}

fn check_entry(e: &BiPoly, row: usize, col: usize, expected: u32) -> Result<()> {
    if e.is_zero() {
        return Ok(());
    }
    if !e.is_xy_only() || e.homogeneous_degree() != Some(expected) {
        return Err(Error::WrongColumnDegrees {
            row: row + 1,
            col: col + 1,
            expected,
            found: e.to_string(),
        });
    }
    Ok(())
}

/// Checks column degrees and the height of the ideal of maximal minors.
pub fn validate(field: Field, phi: &[Vec<BiPoly>]) -> Result<ValidationReport> {
    let m = phi.len();
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 generators, got m = {m}"
        )));
    }
    for (i, row) in phi.iter().enumerate() {
        if row.len() != m - 1 {
            return Err(Error::InvalidParameter(format!(
                "row {} has {} entries, expected m - 1 = {}",
                i + 1,
                row.len(),
                m - 1
            )));
        }
        for e in row {
            if e.field() != field {
                return Err(Error::FieldMismatch(field, e.field()));
            }
            if !e.is_xy_only() {
                return Err(Error::InvalidParameter(format!("entry {e} involves T-variables")));
            }
        }
    }
    for (i, row) in phi.iter().enumerate() {
        for (j, e) in row.iter().take(m - 2).enumerate() {
            check_entry(e, i, j, 1)?;
        }
    }
    let last = m - 2;
    let n = match phi.iter().find(|r| !r[last].is_zero()) {
        None => {
            return Err(Error::HeightNotTwo("0 (the last column vanishes)".into()));
        }
        Some(r) => r[last].homogeneous_degree().ok_or_else(|| Error::WrongColumnDegrees {
            row: 1 + phi.iter().position(|q| q[last] == r[last]).unwrap_or(0),
            col: m - 1,
            expected: 2,
            found: r[last].to_string(),
        })?,
    };
    for (i, row) in phi.iter().enumerate() {
        check_entry(&row[last], i, last, n)?;
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "the last column has degree n = {n}; n >= 2 is required, for otherwise I = (x,y)^d"
        )));
    }
    let minors = signed_maximal_minors(phi);
    let gcd = forms_gcd(minors.iter(), field, 0);
    if gcd.homogeneous_degree() != Some(0) {
        return Err(Error::HeightNotTwo(gcd.to_string()));
    }
    Ok(ValidationReport {
        m,
        n,
        d: n + m as u32 - 2,
        minors,
        gcd,
    })
}

impl PresentationData {
    /// Validates `phi` and stores it together with its signed maximal minors.
    pub fn new(field: Field, phi: Vec<Vec<BiPoly>>) -> Result<Self> {
        let report = validate(field, &phi)?;
        Ok(PresentationData {
            field,
            m: report.m,
            n: report.n,
            phi,
            minors: report.minors,
        })
    }

    /// Parses a matrix of polynomial strings.
    pub fn from_strings<S: AsRef<str>>(field: Field, rows: &[Vec<S>]) -> Result<Self> {
        let phi = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| crate::algebra::parse::parse_poly(s.as_ref(), field, 0))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, phi)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree of the generators, `n + m - 2`.
    pub fn d(&self) -> u32 {
        self.n + self.m as u32 - 2
    }

    pub fn matrix(&self) -> &[Vec<BiPoly>] {
        &self.phi
    }

    /// The linear part `phi'`.
    pub fn linear_part(&self) -> Vec<Vec<BiPoly>> {
        self.phi.iter().map(|r| r[..self.m - 2].to_vec()).collect()
    }

    /// The column `phi''` of degree-`n` forms.
    pub fn nonlinear_column(&self) -> Vec<BiPoly> {
        self.phi.iter().map(|r| r[self.m - 2].clone()).collect()
    }

    /// Signed maximal minors `delta_i`, the generators of `I`.
    pub fn minors(&self) -> &[BiPoly] {
        &self.minors
    }

    /// Reduction into `F_p` (used to run the rank oracles on rational inputs).
    pub fn reduce_mod(&self, p: u32) -> Result<PresentationData> {
        let phi = self
            .phi
            .iter()
            .map(|r| r.iter().map(|e| e.reduce_mod(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PresentationData::new(Field::prime(p)?, phi)
    }
}

fn xy_term(field: Field, c: Scalar, a: u16, b: u16) -> BiPoly {
    BiPoly::term(field, 0, c, Monomial::xy(a, b))
}

/// The matrix `D_a` with `x` on the diagonal and `-y` below it, as rows.
pub fn d_block(field: Field, a: usize) -> Vec<Vec<BiPoly>> {
    let mut rows = vec![vec![BiPoly::zero(field, 0); a]; a + 1];
    for j in 0..a {
        rows[j][j] = BiPoly::x(field, 0);
        rows[j + 1][j] = -BiPoly::y(field, 0);
    }
    rows
}

/// Writes `f = sum_i alpha_i x^(len-i) y^i` with forms `alpha_i` of degree `deg f - len`.
fn split_form(f: &BiPoly, len: usize) -> Vec<BiPoly> {
    let field = f.field();
    let mut alpha = vec![BiPoly::zero(field, 0); len + 1];
    for (mono, c) in f.terms() {
        let a = mono.exp(Var::X) as usize;
        let b = mono.exp(Var::Y) as usize;
        let i = b.min(len);
        let part = xy_term(field, c.clone(), (a - (len - i)) as u16, (b - i) as u16);
        alpha[i] = &alpha[i] + &part;
    }
    alpha
}

/// The presentation of `(x,y)^tau F1 + (x,y)^sigma F2`:
/// `[[D_sigma, 0, alpha], [0, D_tau, beta]]` with `det[D_sigma | alpha] = F1`,
/// `det[D_tau | beta] = F2`.
pub fn build_from_pair(field: Field, sigma: usize, tau: usize, f1: &BiPoly, f2: &BiPoly) -> Result<PresentationData> {
    if tau > sigma {
        return Err(Error::InvalidParameter(format!(
            "need tau <= sigma, got sigma = {sigma}, tau = {tau}"
        )));
    }
    for f in [f1, f2] {
        if f.field() != field {
            return Err(Error::FieldMismatch(field, f.field()));
        }
        if f.is_zero() || !f.is_xy_only() || f.homogeneous_degree().is_none() {
            return Err(Error::DegreeMismatch(format!("{f} is not a nonzero form in x, y")));
        }
    }
    let f1 = f1.with_nt(0)?;
    let f2 = f2.with_nt(0)?;
    let d1 = f1.homogeneous_degree().unwrap() as i64;
    let d2 = f2.homogeneous_degree().unwrap() as i64;
    let n = d1 - sigma as i64;
    if d2 - tau as i64 != n {
        return Err(Error::DegreeMismatch(format!(
            "deg F1 - sigma = {} but deg F2 - tau = {}",
            n,
            d2 - tau as i64
        )));
    }
    if n < 2 {
        return Err(Error::DegreeMismatch(format!(
            "n = deg F1 - sigma = {n}; n >= 2 is required, for otherwise I = (x,y)^d"
        )));
    }
    let g = forms_gcd([&f1, &f2], field, 0);
    if g.homogeneous_degree() != Some(0) {
        return Err(Error::CommonFactor(g.to_string()));
    }
    let m = sigma + tau + 2;
    let zero = BiPoly::zero(field, 0);
    let mut phi = vec![vec![zero.clone(); m - 1]; m];
    let ds = d_block(field, sigma);
    let dt = d_block(field, tau);
    let alpha = split_form(&f1, sigma);
    let beta = split_form(&f2, tau);
    for i in 0..=sigma {
        for j in 0..sigma {
            phi[i][j] = ds[i][j].clone();
        }
        // alpha is listed from alpha_sigma down to alpha_0
        phi[i][m - 2] = alpha[sigma - i].clone();
    }
    for i in 0..=tau {
        for j in 0..tau {
            phi[sigma + 1 + i][sigma + j] = dt[i][j].clone();
        }
        phi[sigma + 1 + i][m - 2] = beta[tau - i].clone();
    }
    PresentationData::new(field, phi)
}

/// Generators of `(x,y)^tau y^(n+sigma) + (x,y)^sigma x^(n+tau)`.
pub fn monomial_example(field: Field, n: u32, sigma: usize, tau: usize) -> Result<Vec<BiPoly>> {
    if n < 2 || tau > sigma {
        return Err(Error::InvalidParameter(format!(
            "need n >= 2 and sigma >= tau, got n = {n}, sigma = {sigma}, tau = {tau}"
        )));
    }
    let d = n as usize + sigma + tau;
    let mut out: Vec<BiPoly> = (0..=tau)
        .map(|i| xy_term(field, field.one(), i as u16, (d - i) as u16))
        .collect();
    out.extend((d - sigma..=d).map(|i| xy_term(field, field.one(), i as u16, (d - i) as u16)));
    Ok(out)
}

/// The truncation pair `F1 = y^(n+sigma)`, `F2 = x^(n+tau)` whose ideal is monomial.
pub fn monomial_presentation(field: Field, n: u32, sigma: usize, tau: usize) -> Result<PresentationData> {
    let f1 = xy_term(field, field.one(), 0, n as u16 + sigma as u16);
    let f2 = xy_term(field, field.one(), n as u16 + tau as u16, 0);
    build_from_pair(field, sigma, tau, &f1, &f2)
}

/// A presentation whose linear part is exactly `diag(D_sigma, D_tau)` (with `-y`),
/// together with the row and column changes producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPresentation {
    pub form: CanonicalForm,
    /// `W = S U` where `S` flips signs so that `+y` becomes `-y`.
    pub row_change: DenseMatrix,
    /// `Y = V S'` for the column sign flips.
    pub col_change: DenseMatrix,
    pub data: PresentationData,
}

fn alternating_signs(field: Field, sizes: &[usize]) -> DenseMatrix {
    let total: usize = sizes.iter().sum();
    let mut s = DenseMatrix::identity(field, total);
    let mut offset = 0;
    for &len in sizes {
        for k in 0..len {
            if k % 2 == 1 {
                s.set(offset + k, offset + k, -field.one());
            }
        }
        offset += len;
    }
    s
}

fn apply_scalar_left(w: &DenseMatrix, col: &[BiPoly], field: Field) -> Vec<BiPoly> {
    (0..w.rows())
        .map(|i| {
            let mut acc = BiPoly::zero(field, 0);
            for (j, e) in col.iter().enumerate() {
                let c = w.get(i, j);
                if !c.is_zero() && !e.is_zero() {
                    acc = &acc + &e.scale(c);
                }
            }
            acc
        })
        .collect()
}

/// Transforms `pd` so its linear part is in block form.
pub fn canonical_presentation(pd: &PresentationData) -> Result<CanonicalPresentation> {
    let field = pd.field();
    let form = canonicalize(field, &pd.linear_part())?;
    let (s, t) = (form.sigma, form.tau);
    let sr = alternating_signs(field, &[s + 1, t + 1]);
    let sc = alternating_signs(field, &[s, t]);
    let row_change = sr.mul(&form.u)?;
    let col_change = form.v.mul(&sc)?;
    let m = pd.m();
    let mut phi = vec![vec![BiPoly::zero(field, 0); m - 1]; m];
    let ds = d_block(field, s);
    let dt = d_block(field, t);
    for i in 0..=s {
        for j in 0..s {
            phi[i][j] = ds[i][j].clone();
        }
    }
    for i in 0..=t {
        for j in 0..t {
            phi[s + 1 + i][s + j] = dt[i][j].clone();
        }
    }
    let last = apply_scalar_left(&row_change, &pd.nonlinear_column(), field);
    for (i, e) in last.into_iter().enumerate() {
        phi[i][m - 2] = e;
    }
    // The linear block is written out directly; confirm it matches W * phi' * Y.
    let lin = LinearPencil::from_matrix(field, &pd.linear_part(), m - 2)?;
    let expected = LinearPencil::from_matrix(field, &phi, m - 2)?;
    if lin.transform(&row_change, &col_change)? != expected {
        return Err(Error::HypothesisViolated("sign normalization failed".into()));
    }
    let data = PresentationData::new(field, phi)?;
    Ok(CanonicalPresentation {
        form,
        row_change,
        col_change,
        data,
    })
}

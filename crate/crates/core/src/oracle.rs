//! Brute-force checks by exact rank over `F_p`: graded pieces of ideals, powers of `I`,
//! membership in the Rees ideal, and Hilbert functions of the fiber.

pub mod verify;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::{Field, Scalar};
use crate::algebra::modular::Echelon;
use crate::algebra::poly::{graded_piece_dim, monomials_of_bidegree, BiPoly, Monomial};
use crate::error::{Error, Result};
use crate::presentation::PresentationData;
use crate::scroll::ScrollStructure;

fn prime_of(field: Field) -> Result<u32> {
    field.modulus().ok_or_else(|| {
        Error::InvalidParameter("rank oracles run over a prime field; reduce the input mod p first".into())
    })
}

fn residue(c: &Scalar) -> u32 {
    c.residue().expect("prime field scalar")
}

/// The bidegree `(u, s)` piece of an ideal, as the row space of a coefficient matrix whose
/// columns are the monomials of that bidegree.
#[derive(Clone, Debug)]
pub struct GradedSpan {
    u: u32,
    s: u32,
    nt: usize,
    index: BTreeMap<Monomial, usize>,
    echelon: Echelon,
}

impl GradedSpan {
    pub fn new(p: u32, u: u32, s: u32, nt: usize) -> Self {
        let basis = monomials_of_bidegree(u as i64, s as i64, nt);
        let index: BTreeMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        GradedSpan {
            u,
            s,
            nt,
            echelon: Echelon::new(p, index.len()),
            index,
        }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.u, self.s)
    }

    /// `lambda(S_(u,s))`.
    pub fn ambient_dim(&self) -> usize {
        self.index.len()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_full(&self) -> bool {
        self.echelon.is_full()
    }

    fn row_of(&self, poly: &BiPoly, shift: &Monomial) -> Result<Vec<u32>> {
        let mut row = vec![0u32; self.index.len()];
        for (m, c) in poly.terms() {
            let target = m.checked_mul(shift)?;
            let col = *self.index.get(&target).ok_or_else(|| {
                Error::DegreeMismatch(format!("{target} does not have bidegree ({}, {})", self.u, self.s))
            })?;
            row[col] = residue(c);
        }
        Ok(row)
    }

    /// Adds one element of bidegree `(u, s)`; returns whether the dimension grew.
    pub fn insert(&mut self, poly: &BiPoly) -> Result<bool> {
        let row = self.row_of(poly, &Monomial::one())?;
        Ok(self.echelon.insert(row))
    }

    /// Whether an element of bidegree `(u, s)` lies in the span.
    pub fn contains(&self, poly: &BiPoly) -> Result<bool> {
        let row = self.row_of(poly, &Monomial::one())?;
        Ok(self.echelon.contains(&row))
    }

    /// Adds every monomial multiple of `gen` that lands in bidegree `(u, s)`.
    pub fn insert_multiples(&mut self, gen: &BiPoly) -> Result<()> {
        if gen.is_zero() {
            return Ok(());
        }
        if gen.nt() != self.nt {
            return Err(Error::RingMismatch(gen.nt(), self.nt));
        }
        let (a, b) = gen.bidegree()?;
        if a > self.u || b > self.s {
            return Ok(());
        }
        for shift in monomials_of_bidegree((self.u - a) as i64, (self.s - b) as i64, self.nt) {
            if self.echelon.is_full() {
                break;
            }
            let row = self.row_of(gen, &shift)?;
            self.echelon.insert(row);
        }
        Ok(())
    }
}

/// `dim_k` of the bidegree `(u, s)` piece of the ideal generated by `gens` in `S`.
pub fn span_dim(gens: &[BiPoly], u: u32, s: u32) -> Result<usize> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(0);
    };
    let mut span = GradedSpan::new(prime_of(first.field())?, u, s, first.nt());
    for g in gens {
        span.insert_multiples(g)?;
    }
    Ok(span.dim())
}

fn multisets(len: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..len {
        cur.push(i);
        multisets(len, k, i, cur, out);
        cur.pop();
    }
}

/// All products of `s` elements of `gens` (with repetition).
pub fn products(gens: &[BiPoly], s: u32) -> Vec<BiPoly> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let mut idx = Vec::new();
    multisets(gens.len(), s as usize, 0, &mut Vec::new(), &mut idx);
    idx.into_iter()
        .map(|ix| {
            ix.iter()
                .fold(BiPoly::one(first.field(), first.nt()), |acc, &i| &acc * &gens[i])
        })
        .collect()
}

/// `lambda(I^s_z)` for the ideal generated by `minors` (forms of degree `d` in `x, y`).
pub fn power_dim_of(minors: &[BiPoly], d: u32, s: u32, z: u32) -> Result<usize> {
    if s == 0 {
        return Ok(z as usize + 1);
    }
    if z < s * d {
        return Ok(0);
    }
    let field = minors
        .first()
        .map_or(Field::Prime(crate::algebra::DEFAULT_PRIME), BiPoly::field);
    let mut span = GradedSpan::new(prime_of(field)?, z, 0, 0);
    for prod in products(minors, s) {
        span.insert_multiples(&prod)?;
        if span.is_full() {
            break;
        }
    }
    Ok(span.dim())
}

/// `lambda(I^s_z)` computed from the products of the maximal minors of `pd`.
pub fn power_dim(pd: &PresentationData, s: u32, z: u32) -> Result<usize> {
    power_dim_of(pd.minors(), pd.d(), s, z)
}

/// Whether `p(T_i -> delta_i t) = 0`, i.e. `p` lies in the Rees ideal of `(delta_1..delta_m)`.
pub fn kernel_membership(p: &BiPoly, minors: &[BiPoly]) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if minors.len() != p.nt() {
        return Err(Error::RingMismatch(p.nt(), minors.len()));
    }
    let field = p.field();
    let mut images = vec![Some(BiPoly::x(field, 0)), Some(BiPoly::y(field, 0))];
    images.extend(minors.iter().map(|d| Some(d.clone())));
    // The image is sum_s p_s(delta) t^s, so every T-degree component must vanish.
    let mut by_degree: BTreeMap<u32, Vec<(Scalar, Monomial)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        by_degree.entry(m.t_degree()).or_default().push((c.clone(), *m));
    }
    for (_, terms) in by_degree {
        let part = BiPoly::from_terms(field, p.nt(), terms);
        if !part.substitute(&images, 0)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `lambda(k[T]_s) - dim (fiber ideal)_s` where the fiber ideal is generated by `equations`
/// (polynomials in `T` only): the Hilbert function of the special fiber ring.
pub fn fiber_hilbert_brute(equations: &[BiPoly], m: usize, s: u32) -> Result<u64> {
    let total = graded_piece_dim(0, s as i64, m);
    let eqs: Vec<BiPoly> = equations.iter().filter(|e| !e.is_zero()).cloned().collect();
    if eqs
        .iter()
        .any(|e| !e.is_xy_only() && e.bidegree().map(|b| b.0) != Ok(0))
    {
        return Err(Error::InvalidParameter(
            "fiber equations must not involve x or y".into(),
        ));
    }
    Ok(total - span_dim(&eqs, 0, s)? as u64)
}

/// `dim (K^(n)v)_s` inside `k[T] / I_2(psi_tr)`: the Hilbert function of the image of the
/// symbolic power in the fiber of the scroll.
pub fn symbolic_fiber_hilbert(scroll: &ScrollStructure, s: u32) -> Result<u64> {
    let p = prime_of(scroll.field())?;
    let mut span = GradedSpan::new(p, 0, s, scroll.m());
    for h in scroll.fiber_minors() {
        span.insert_multiples(&h)?;
    }
    let base = span.dim();
    for g in scroll.fiber_symbolic_generators() {
        span.insert_multiples(&g.monomial)?;
    }
    Ok((span.dim() - base) as u64)
}

/// Dimensions of `y^n L + H`, `g K^(n) + H` and their sum in bidegree `(u, s)`.
pub fn symbolic_comparison_dims(
    scroll: &ScrollStructure,
    l_gens: &[BiPoly],
    g: &BiPoly,
    u: u32,
    s: u32,
) -> Result<(usize, usize, usize)> {
    let p = prime_of(scroll.field())?;
    let m = scroll.m();
    let mut base = GradedSpan::new(p, u, s, m);
    for h in scroll.h_generators() {
        base.insert_multiples(&h)?;
    }
    let yn = Monomial::xy(0, scroll.n() as u16);
    let mut left = base.clone();
    for gen in l_gens {
        left.insert_multiples(&gen.mul_monomial(&yn))?;
    }
    let mut right = base;
    let kgens: Vec<BiPoly> = scroll
        .symbolic_power_generators()
        .into_iter()
        .map(|k| g * &k.monomial)
        .collect();
    for k in &kgens {
        right.insert_multiples(k)?;
    }
    let (dl, dr) = (left.dim(), right.dim());
    let mut both = left;
    for k in &kgens {
        both.insert_multiples(k)?;
    }
    Ok((dl, dr, both.dim()))
}

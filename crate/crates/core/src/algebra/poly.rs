//! Sparse polynomials in `x, y, T1..Tm` with bidegree bookkeeping.
//!
//! `x` and `y` have bidegree `(1,0)`, every `T` variable has bidegree `(0,1)`.
//! Terms are stored in a `BTreeMap` under the graded reverse lexicographic order
//! with precedence `T_m > ... > T_1 > x > y`; iteration via [`BiPoly::terms`]
//! yields the leading term first.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Total number of variable slots (x, y and up to 14 `T`s).
pub const MAX_VARS: usize = 16;
pub const MAX_T_VARS: usize = MAX_VARS - 2;

/// A ring variable. `T(i)` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    T(usize),
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::T(i) => i + 1,
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot {
            0 => Var::X,
            1 => Var::Y,
            i => Var::T(i - 1),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Y => f.write_str("y"),
            Var::T(i) => write!(f, "T{i}"),
        }
    }
}

/// Packed exponent vector. Slot 0 is `x`, slot 1 is `y`, slot `i+1` is `T_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

// Scan order for the reverse-lexicographic tie break: smallest variable first.
const REVLEX_SCAN: [usize; MAX_VARS] = [1, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15];

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; MAX_VARS];
        e[v.slot()] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Ok(Monomial(e))
    }

    /// `x^a y^b`.
    pub fn xy(a: u16, b: u16) -> Self {
        let mut e = [0; MAX_VARS];
        e[0] = a;
        e[1] = b;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.slot()]
    }

    pub fn with_exp(mut self, v: Var, e: u16) -> Self {
        self.0[v.slot()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn xy_degree(&self) -> u32 {
        self.0[0] as u32 + self.0[1] as u32
    }

    pub fn t_degree(&self) -> u32 {
        self.0[2..].iter().map(|&e| e as u32).sum()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.xy_degree(), self.t_degree())
    }

    /// Highest occupied slot plus one.
    pub fn width(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn checked_mul(&self, rhs: &Monomial) -> Result<Monomial> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].checked_add(rhs.0[i]).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn divide(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].checked_sub(rhs.0[i])?;
        }
        Some(Monomial(e))
    }

    pub fn pow(&self, k: u16) -> Result<Monomial> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].checked_mul(k).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        self.checked_mul(&rhs).expect("monomial exponent overflow")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for &i in REVLEX_SCAN.iter() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                // a smaller exponent in the smallest differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for slot in 0..MAX_VARS {
            let e = self.0[slot];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", Var::from_slot(slot))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of bidegree `(u, s)` in `x, y, T1..Tm`: `(u+1) * C(s+m-1, m-1)`.
pub fn graded_piece_dim(u: i64, s: i64, m: usize) -> u64 {
    if u < 0 || s < 0 || m == 0 && s > 0 {
        return 0;
    }
    if m == 0 {
        return (u + 1) as u64;
    }
    (u as u64 + 1) * binomial_u64(s as u64 + m as u64 - 1, m as u64 - 1)
}

pub(crate) fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All monomials in `nvars` consecutive slots starting at `first_slot` of total degree `deg`.
pub fn monomials_of_degree(first_slot: usize, nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fn rec(idx: usize, left: u32, first_slot: usize, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let nvars = exps.len();
        if idx + 1 == nvars {
            exps[idx] = left as u16;
            let mut m = Monomial::one();
            for (i, &e) in exps.iter().enumerate() {
                m.0[first_slot + i] = e;
            }
            out.push(m);
            return;
        }
        for e in (0..=left).rev() {
            exps[idx] = e as u16;
            rec(idx + 1, left - e, first_slot, exps, out);
        }
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, deg, first_slot, &mut exps, &mut out);
    out
}

/// All monomials of bidegree `(u, s)` in a ring with `nt` `T`-variables.
pub fn monomials_of_bidegree(u: i64, s: i64, nt: usize) -> Vec<Monomial> {
    if u < 0 || s < 0 {
        return Vec::new();
    }
    let xs = monomials_of_degree(0, 2, u as u32);
    let ts = monomials_of_degree(2, nt, s as u32);
    let mut out = Vec::with_capacity(xs.len() * ts.len());
    for a in &xs {
        for b in &ts {
            out.push(*a * *b);
        }
    }
    out
}

/// Exact sparse polynomial over a [`Field`] in `x, y, T1..T_nt`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    nt: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl BiPoly {
    pub fn zero(field: Field, nt: usize) -> Self {
        assert!(nt <= MAX_T_VARS, "at most {MAX_T_VARS} T-variables are supported");
        BiPoly {
            field,
            nt,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nt: usize, c: Scalar) -> Self {
        Self::term(field, nt, c, Monomial::one())
    }

    pub fn one(field: Field, nt: usize) -> Self {
        Self::constant(field, nt, field.one())
    }

    pub fn term(field: Field, nt: usize, c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero(field, nt);
        assert!(m.width() <= nt + 2, "monomial {m} outside the ring");
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(field: Field, nt: usize, m: Monomial) -> Self {
        Self::term(field, nt, field.one(), m)
    }

    pub fn var(field: Field, nt: usize, v: Var) -> Self {
        Self::monomial(field, nt, Monomial::var(v))
    }

    pub fn x(field: Field, nt: usize) -> Self {
        Self::var(field, nt, Var::X)
    }

    pub fn y(field: Field, nt: usize) -> Self {
        Self::var(field, nt, Var::Y)
    }

    pub fn t(field: Field, nt: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nt, "T{i} outside the ring with {nt} T-variables");
        Self::var(field, nt, Var::T(i))
    }

    /// Builds from `(coefficient, monomial)` pairs, combining repeats.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Monomial)>>(field: Field, nt: usize, it: I) -> Self {
        let mut p = Self::zero(field, nt);
        for (c, m) in it {
            p.add_term(c, m);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of `T` variables of the ambient ring.
    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with the leading (largest) monomial first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, c: Scalar, m: Monomial) {
        assert!(m.width() <= self.nt + 2, "monomial {m} outside the ring");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, rhs: &BiPoly) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        if self.nt != rhs.nt {
            return Err(Error::RingMismatch(self.nt, rhs.nt));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), *m);
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, *m);
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &BiPoly) -> Result<BiPoly> {
        self.check_compatible(rhs)?;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.checked_mul(mb)?;
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(old) => *old = old.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(BiPoly {
            field: self.field,
            nt: self.nt,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(self.field, self.nt);
        }
        BiPoly {
            field: self.field,
            nt: self.nt,
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> BiPoly {
        assert!(m.width() <= self.nt + 2, "monomial {m} outside the ring");
        BiPoly {
            field: self.field,
            nt: self.nt,
            terms: self.terms.iter().map(|(a, c)| (*a * *m, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut acc = BiPoly::one(self.field, self.nt);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(u, s)` = (`x,y`-degree, `T`-degree) when every monomial agrees.
    pub fn bidegree(&self) -> Result<(u32, u32)> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let bd = first.bidegree();
        for m in it {
            if m.bidegree() != bd {
                return Err(Error::NotBihomogeneous(first.to_string(), m.to_string()));
            }
        }
        Ok(bd)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.bidegree().is_ok()
    }

    /// Total degree when homogeneous in the standard grading.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    /// True when no `T` variable occurs.
    pub fn is_xy_only(&self) -> bool {
        self.terms.keys().all(|m| m.t_degree() == 0)
    }

    /// Same polynomial viewed in a ring with `nt` `T`-variables.
    pub fn with_nt(&self, nt: usize) -> Result<BiPoly> {
        if self.terms.keys().any(|m| m.width() > nt + 2) {
            return Err(Error::RingMismatch(self.nt, nt));
        }
        Ok(BiPoly {
            field: self.field,
            nt,
            terms: self.terms.clone(),
        })
    }

    /// Coefficientwise reduction into `F_p`.
    pub fn reduce_mod(&self, p: u32) -> Result<BiPoly> {
        let field = Field::prime(p)?;
        let mut out = BiPoly::zero(field, self.nt);
        for (m, c) in &self.terms {
            out.add_term(c.reduce_mod(p).ok_or(Error::DivisionByZero)?, *m);
        }
        Ok(out)
    }

    /// Substitutes `images[slot]` for the variable in `slot` (0 = x, 1 = y, i+1 = T_i).
    /// Every image must live in the ring `(field, target_nt)`.
    pub fn substitute(&self, images: &[Option<BiPoly>], target_nt: usize) -> Result<BiPoly> {
        let mut cache: Vec<Vec<BiPoly>> = vec![Vec::new(); MAX_VARS];
        let mut out = BiPoly::zero(self.field, target_nt);
        for (m, c) in &self.terms {
            let mut t = BiPoly::constant(self.field, target_nt, c.clone());
            for slot in 0..MAX_VARS {
                let e = m.0[slot] as usize;
                if e == 0 {
                    continue;
                }
                let img = images
                    .get(slot)
                    .and_then(|o| o.as_ref())
                    .ok_or_else(|| Error::MissingAssignment(Var::from_slot(slot).to_string()))?;
                img.check_compatible(&BiPoly::zero(self.field, target_nt))?;
                let powers = &mut cache[slot];
                if powers.is_empty() {
                    powers.push(BiPoly::one(self.field, target_nt));
                }
                while powers.len() <= e {
                    let next = &powers[powers.len() - 1] * img;
                    powers.push(next);
                }
                t = &t * &powers[e];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Coefficient list of a form in `x, y` of degree `deg`: entry `i` is the coefficient of
    /// `x^(deg-i) y^i`. Fails if other monomials occur.
    pub fn xy_form_coefficients(&self, deg: u32) -> Result<Vec<Scalar>> {
        let mut out = vec![self.field.zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            if m.t_degree() != 0 || m.xy_degree() != deg {
                return Err(Error::DegreeMismatch(alloc::format!(
                    "{self} is not a form of degree {deg} in x, y"
                )));
            }
            out[m.exp(Var::Y) as usize] = c.clone();
        }
        Ok(out)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: &BiPoly) -> BiPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$try(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            field: self.field,
            nt: self.nt,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Field = Field::Prime(32003);

    fn p(s: &str, nt: usize) -> BiPoly {
        crate::algebra::parse::parse_poly(s, F, nt).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x + y", 0);
        let b = p("x - y", 0);
        assert_eq!(&a * &b, p("x^2 - y^2", 0));
    }

    #[test]
    fn additive_identity() {
        let a = p("3*x*T1 - y^2*T2", 2);
        assert_eq!(&a + &BiPoly::zero(F, 2), a);
    }

    #[test]
    fn distributivity_example() {
        let a = p("T1*x - T2*y", 2);
        assert_eq!(&a * &p("y", 2), p("T1*x*y - T2*y^2", 2));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p("x + T1", 1);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).len(), 0);
    }

    #[test]
    fn bidegree_examples() {
        assert_eq!(p("x^2*T1 + x*y*T3", 3).bidegree(), Ok((2, 1)));
        match p("x + T1", 1).bidegree() {
            Err(Error::NotBihomogeneous(a, b)) => {
                assert_ne!(a, b);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(BiPoly::zero(F, 1).bidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn graded_piece_dim_examples() {
        assert_eq!(graded_piece_dim(0, 1, 4), 4);
        for m in 1..6 {
            assert_eq!(graded_piece_dim(2, 0, m), 3);
        }
        // x*T_i, y*T_i for i = 1..3
        assert_eq!(graded_piece_dim(1, 1, 3), 6);
        assert_eq!(graded_piece_dim(-1, 1, 3), 0);
        assert_eq!(graded_piece_dim(1, -1, 3), 0);
    }

    #[test]
    fn graded_piece_dim_matches_enumeration() {
        for m in 1..=6usize {
            for u in 0..=8i64 {
                for s in 0..=8i64 {
                    let brute = monomials_of_bidegree(u, s, m).len() as u64;
                    assert_eq!(graded_piece_dim(u, s, m), brute, "u={u} s={s} m={m}");
                }
            }
        }
    }

    #[test]
    fn order_is_grevlex_with_t_first() {
        let t2 = Monomial::var(Var::T(2));
        let t1 = Monomial::var(Var::T(1));
        let x = Monomial::var(Var::X);
        let y = Monomial::var(Var::Y);
        assert!(t2 > t1 && t1 > x && x > y);
        // same degree: the one with less y wins
        assert!(Monomial::xy(2, 0) > Monomial::xy(1, 1));
        assert!(x * t1 > y * t2);
        assert!(Monomial::xy(0, 3) > t1 * t2);
    }

    #[test]
    fn substitution_examples() {
        let f = p("T1*y", 1);
        let mut img = vec![None; 3];
        img[0] = Some(p("x", 0));
        img[1] = Some(p("y", 0));
        img[2] = Some(p("x", 0));
        assert_eq!(f.substitute(&img, 0).unwrap(), p("x*y", 0));

        let g = p("x*T1 + T2*T3", 3);
        let mut img = vec![None; 5];
        img[0] = Some(BiPoly::zero(F, 3));
        img[1] = Some(BiPoly::zero(F, 3));
        for i in 1..=3 {
            img[i + 1] = Some(BiPoly::t(F, 3, i));
        }
        assert_eq!(g.substitute(&img, 3).unwrap(), p("T2*T3", 3));

        let mut partial = img.clone();
        partial[3] = None;
        assert!(matches!(g.substitute(&partial, 3), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn printing_is_deterministic() {
        let a = p("y^2 - 2*x*T1 + 3", 1);
        assert_eq!(a.to_string(), "-2*x*T1 + y^2 + 3");
        assert_eq!(p("-x", 0).to_string(), "-x");
    }
}

//! Binary forms in `x, y`: greatest common divisors via dehomogenization.

use alloc::vec::Vec;

use crate::algebra::field::{Field, Scalar};
use crate::algebra::poly::{BiPoly, Monomial, Var};

/// Dense univariate polynomial, `coeffs[i]` multiplies `x^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Univariate {
    coeffs: Vec<Scalar>,
}

impl Univariate {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn monic(mut self) -> Self {
        if let Some(lead) = self.coeffs.last() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            for c in &mut self.coeffs {
                *c = c.mul(&inv);
            }
        }
        self
    }

    fn rem(mut self, d: &Univariate) -> Univariate {
        let dl = d.coeffs.last().expect("nonzero divisor").inv().expect("unit");
        while !self.is_zero() && self.degree() >= d.degree() {
            let shift = self.degree() - d.degree();
            let q = self.coeffs.last().unwrap().mul(&dl);
            for (i, c) in d.coeffs.iter().enumerate() {
                self.coeffs[i + shift] = self.coeffs[i + shift].sub(&q.mul(c));
            }
            self = self.trim();
        }
        self
    }

    fn gcd(a: Univariate, b: Univariate) -> Univariate {
        let (mut a, mut b) = (a, b);
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Splits a nonzero binary form into `(y-adic valuation, dehomogenized part at y = 1)`.
fn dehomogenize(f: &BiPoly) -> (u16, Univariate) {
    let field = f.field();
    let v = f.monomials().map(|m| m.exp(Var::Y)).min().unwrap_or(0);
    let deg = f.monomials().map(|m| m.exp(Var::X)).max().unwrap_or(0) as usize;
    let mut coeffs = alloc::vec![field.zero(); deg + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(Var::X) as usize] = c.clone();
    }
    (v, Univariate { coeffs }.trim())
}

fn homogenize(h: &Univariate, y_power: u16, field: Field, nt: usize) -> BiPoly {
    let k = h.degree() as u16;
    BiPoly::from_terms(
        field,
        nt,
        h.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), Monomial::xy(i as u16, k - i as u16 + y_power))),
    )
}

/// Monic (in the `x`-leading sense) gcd of two binary forms. `gcd(0, 0) = 0`.
pub fn form_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    debug_assert!(a.is_xy_only() && b.is_xy_only());
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let (va, pa) = dehomogenize(a);
    let (vb, pb) = dehomogenize(b);
    let g = Univariate::gcd(pa, pb);
    homogenize(&g, va.min(vb), a.field(), a.nt())
}

fn normalize(f: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return f.clone();
    }
    let (v, p) = dehomogenize(f);
    homogenize(&p.monic(), v, f.field(), f.nt())
}

/// gcd of a list of binary forms.
pub fn forms_gcd<'a, I: IntoIterator<Item = &'a BiPoly>>(forms: I, field: Field, nt: usize) -> BiPoly {
    let mut acc = BiPoly::zero(field, nt);
    for f in forms {
        acc = form_gcd(&acc, f);
        if acc.homogeneous_degree() == Some(0) {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    const F: Field = Field::Prime(32003);

    fn p(s: &str) -> BiPoly {
        parse_poly(s, F, 0).unwrap()
    }

    #[test]
    fn coprime_forms() {
        assert_eq!(form_gcd(&p("y^3"), &p("x^3")), p("1"));
        assert_eq!(form_gcd(&p("x^2 + y^2"), &p("x*y")), p("1"));
    }

    #[test]
    fn shared_factors() {
        assert_eq!(form_gcd(&p("x^3"), &p("x^3")), p("x^3"));
        assert_eq!(form_gcd(&p("x*y^2"), &p("y^3")), p("y^2"));
        let a = p("(x + 2y)*(x - y)*y");
        let b = p("(x + 2y)*y^2*x");
        assert_eq!(form_gcd(&a, &b), p("(x + 2y)*y"));
    }

    #[test]
    fn list_gcd() {
        let fs = [p("x^2*y"), p("x*y^2"), p("x*y*(x+y)")];
        assert_eq!(forms_gcd(fs.iter(), F, 0), p("x*y"));
        assert!(forms_gcd([].iter(), F, 0).is_zero());
    }
}

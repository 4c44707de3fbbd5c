//! Scroll data attached to the canonical form: the matrix `psi`, the ideals `H = I_2(psi)`
//! and `K`, eligible tuples, generators of the symbolic power `K^(n)`, and the Hilbert
//! function pieces of the associated filtration.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::Field;
use crate::algebra::poly::BiPoly;
use crate::error::{Error, Result};
use crate::presentation::CanonicalForm;

/// A tuple `a = (a_1, ..., a_k)` with `sum a_u sigma_u < n`, and its `f(a)`, `r(a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EligibleTuple {
    pub a: Vec<u32>,
    pub f: u32,
    pub r: u32,
}

impl EligibleTuple {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Compact label: `()`, `(2)`, `(1,0)`.
    pub fn label(&self) -> alloc::string::String {
        let parts: Vec<alloc::string::String> = self.a.iter().map(|v| format!("{v}")).collect();
        format!("({})", parts.join(","))
    }
}

/// `sigma`, `rho` and the naming of the variables along the scroll blocks.
///
/// Block `i <= rho` owns `T_{i,1}, ..., T_{i,sigma_i+1}`; the extra block `l = rho + 1`
/// has `sigma_l = 1`, `T_{l,1} = y` and `T_{l,2} = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollStructure {
    field: Field,
    m: usize,
    n: u32,
    sigma: Vec<usize>,
}

/// Extended binomial coefficient: `j (j-1) ... (j-i+1) / i!` for `i > 0`, `1` for `i = 0`,
/// `0` for `i < 0`. Defined for every integer `j`.
pub fn binomial(j: i64, i: i64) -> i64 {
    if i < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for k in 0..i as i128 {
        acc = acc * (j as i128 - k) / (k + 1);
    }
    acc as i64
}

/// `lambda(EN[psi, r]_s) = (r+1) C(s+D-2, s) + c C(s+D-2, s-1)`, zero for `s < 0`.
pub fn en_hilbert(c: i64, dd: i64, r: i64, s: i64) -> i64 {
    if s < 0 {
        return 0;
    }
    (r + 1) * binomial(s + dd - 2, s) + c * binomial(s + dd - 2, s - 1)
}

/// `lambda(R(-a)_u)` for `R = k[x, y]`.
pub fn shifted_r(a: i64, u: i64) -> i64 {
    (u - a + 1).max(0)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Which graded piece [`ScrollStructure::piece_length`] measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece<'a> {
    /// `S / H`.
    Quotient,
    /// `E_a / D_a` for an eligible tuple.
    Factor(&'a EligibleTuple),
}

/// A monomial generator of `K^(n)`: `T^a T_{k+1,1}^f(a) T_{k+1,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicGenerator {
    pub tuple: EligibleTuple,
    pub j: u32,
    pub monomial: BiPoly,
}

impl ScrollStructure {
    /// `sigma` must be non-increasing with one or two positive parts summing to `m - 2`.
    pub fn new(field: Field, m: usize, n: u32, sigma: &[usize]) -> Result<Self> {
        let ok = match sigma {
            [s1] => *s1 >= 1,
            [s1, s2] => *s1 >= *s2 && *s2 >= 1,
            _ => false,
        };
        if !ok || sigma.iter().sum::<usize>() + 2 != m {
            return Err(Error::InvalidParameter(format!(
                "sigma = {sigma:?} is not a partition of m - 2 = {} into one or two parts",
                m as i64 - 2
            )));
        }
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n = {n}; n >= 2 is required")));
        }
        Ok(ScrollStructure {
            field,
            m,
            n,
            sigma: sigma.to_vec(),
        })
    }

    /// Scroll data for a canonical form of the linear part.
    pub fn build(field: Field, cf: &CanonicalForm, m: usize, n: u32) -> Result<Self> {
        if cf.m() != m {
            return Err(Error::InvalidParameter(format!(
                "canonical form has m = {} but the presentation has m = {m}",
                cf.m()
            )));
        }
        Self::new(field, m, n, &cf.partition())
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

    pub fn d(&self) -> u32 {
        self.n + self.m as u32 - 2
    }

    pub fn rho(&self) -> usize {
        self.sigma.len()
    }

    pub fn ell(&self) -> usize {
        self.rho() + 1
    }

    pub fn partition(&self) -> &[usize] {
        &self.sigma
    }

    /// `sigma_i` for `1 <= i <= rho + 1`, with `sigma_l = 1`.
    pub fn sigma(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.ell(), "block {i} out of range");
        if i == self.ell() {
            1
        } else {
            self.sigma[i - 1]
        }
    }

    /// `sigma_2` when `rho = 2`, else 0: the `tau` of the canonical form.
    pub fn tau(&self) -> usize {
        self.sigma.get(1).copied().unwrap_or(0)
    }

    /// Index `t` with `T_{i,j} = T_t`, for `i <= rho`.
    pub fn t_index(&self, i: usize, j: usize) -> Option<usize> {
        if i < 1 || i > self.rho() || j < 1 || j > self.sigma(i) + 1 {
            return None;
        }
        Some(if i == 1 { j } else { self.sigma[0] + 1 + j })
    }

    /// All pairs `((i, j), t)` with `T_{i,j} = T_t`; a bijection onto `T_1..T_(m-1)` or
    /// `T_1..T_m`, with `T_m` left over exactly when `rho = 1`.
    pub fn naming(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        for i in 1..=self.rho() {
            for j in 1..=self.sigma(i) + 1 {
                out.push(((i, j), self.t_index(i, j).unwrap()));
            }
        }
        out
    }

    /// `T_{i,j}` as a polynomial in `S` (with `T_{l,1} = y`, `T_{l,2} = x`).
    pub fn var(&self, i: usize, j: usize) -> BiPoly {
        let nt = self.m;
        if i == self.ell() {
            match j {
                1 => BiPoly::y(self.field, nt),
                2 => BiPoly::x(self.field, nt),
                _ => panic!("T_{{{i},{j}}} does not exist"),
            }
        } else {
            let t = self
                .t_index(i, j)
                .unwrap_or_else(|| panic!("T_{{{i},{j}}} does not exist"));
            BiPoly::t(self.field, nt, t)
        }
    }

    /// The `2 x (m-1)` matrix `psi = [psi_1 | ... | psi_rho | (y; x)]`.
    pub fn psi(&self) -> [Vec<BiPoly>; 2] {
        let mut top = Vec::with_capacity(self.m - 1);
        let mut bot = Vec::with_capacity(self.m - 1);
        for i in 1..=self.ell() {
            for j in 1..=self.sigma(i) {
                top.push(self.var(i, j));
                bot.push(self.var(i, j + 1));
            }
        }
        [top, bot]
    }

    /// `psi` without its last column `(y; x)`.
    pub fn psi_truncated(&self) -> [Vec<BiPoly>; 2] {
        let [mut top, mut bot] = self.psi();
        top.pop();
        bot.pop();
        [top, bot]
    }

    fn minors_of(mat: &[Vec<BiPoly>; 2]) -> Vec<BiPoly> {
        let c = mat[0].len();
        let mut out = Vec::with_capacity(c * c.saturating_sub(1) / 2);
        for p in 0..c {
            for q in p + 1..c {
                out.push(&(&mat[0][p] * &mat[1][q]) - &(&mat[0][q] * &mat[1][p]));
            }
        }
        out
    }

    /// The `C(m-1, 2)` minors generating `H = I_2(psi)`.
    pub fn h_generators(&self) -> Vec<BiPoly> {
        Self::minors_of(&self.psi())
    }

    /// Minors of the truncated matrix; they cut out the scroll inside `k[T]`.
    pub fn fiber_minors(&self) -> Vec<BiPoly> {
        Self::minors_of(&self.psi_truncated())
    }

    /// Generators of the prime `K`: the top row of `psi`.
    pub fn k_generators(&self) -> Vec<BiPoly> {
        let [top, _] = self.psi();
        top
    }

    fn weight(&self, a: &[u32]) -> i64 {
        a.iter()
            .enumerate()
            .map(|(u, &au)| au as i64 * self.sigma(u + 1) as i64)
            .sum()
    }

    /// `(f(a), r(a))` when `a` is eligible.
    pub fn f_and_r(&self, a: &[u32]) -> Option<(u32, u32)> {
        if a.len() > self.rho() {
            return None;
        }
        let n = self.n as i64;
        let w = self.weight(a);
        if w >= n {
            return None;
        }
        let next = self.sigma(a.len() + 1) as i64;
        let f = ceil_div(n - w, next) - 1;
        let r = w + (f + 1) * next - n + 1;
        debug_assert!(w + f * next < n && n <= w + (f + 1) * next);
        debug_assert!(r >= 1 && r <= next);
        Some((f as u32, r as u32))
    }

    /// Builds the eligible tuple for `a`, or reports that it is not eligible.
    pub fn tuple(&self, a: &[u32]) -> Result<EligibleTuple> {
        let (f, r) = self
            .f_and_r(a)
            .ok_or_else(|| Error::NotEligible(format!("{a:?} for sigma = {:?}, n = {}", self.sigma, self.n)))?;
        Ok(EligibleTuple { a: a.to_vec(), f, r })
    }

    /// All eligible tuples of length `0..=rho`, length-lexicographically.
    pub fn eligible_tuples(&self) -> Vec<EligibleTuple> {
        let n = self.n as i64;
        let mut out = vec![self.tuple(&[]).expect("the empty tuple is eligible")];
        let s1 = self.sigma(1) as i64;
        let max1 = (n - 1) / s1;
        for a1 in 0..=max1 as u32 {
            out.push(self.tuple(&[a1]).expect("eligible"));
        }
        if self.rho() == 2 {
            let s2 = self.sigma(2) as i64;
            for a1 in 0..=max1 {
                let rest = n - 1 - a1 * s1;
                for a2 in 0..=rest / s2 {
                    out.push(self.tuple(&[a1 as u32, a2 as u32]).expect("eligible"));
                }
            }
        }
        out
    }

    /// `T^a T_{k+1,1}^f(a) T_{k+1,j}` with `T^a = prod T_{u,1}^{a_u}`.
    pub fn tuple_monomial(&self, t: &EligibleTuple, j: u32) -> Result<BiPoly> {
        if j < 1 || j > t.r {
            return Err(Error::IndexOutOfRange(format!("j = {j} outside 1..={}", t.r)));
        }
        let mut out = BiPoly::one(self.field, self.m);
        for (u, &au) in t.a.iter().enumerate() {
            out = &out * &self.var(u + 1, 1).pow(au);
        }
        let k1 = t.k() + 1;
        out = &out * &self.var(k1, 1).pow(t.f);
        Ok(&out * &self.var(k1, j as usize))
    }

    /// The monomial generators of `K^(n)`, one per eligible `(a, j)`.
    pub fn symbolic_power_generators(&self) -> Vec<SymbolicGenerator> {
        let mut out = Vec::new();
        for t in self.eligible_tuples() {
            for j in 1..=t.r {
                let monomial = self.tuple_monomial(&t, j).expect("j in range");
                out.push(SymbolicGenerator {
                    tuple: t.clone(),
                    j,
                    monomial,
                });
            }
        }
        out
    }

    /// The generators of `K^(n)` free of `x` and `y`: what survives in `k[T]`.
    pub fn fiber_symbolic_generators(&self) -> Vec<SymbolicGenerator> {
        self.symbolic_power_generators()
            .into_iter()
            .filter(|g| g.monomial.is_bihomogeneous() && g.monomial.bidegree().map(|b| b.0) == Ok(0))
            .collect()
    }

    /// `lambda` of the bidegree `(u, s)` piece of `S/H` or of a factor `E_a / D_a`.
    pub fn piece_length(&self, which: Piece<'_>, u: i64, s: i64) -> Result<i64> {
        let m = self.m as i64;
        let n = self.n as i64;
        let lr = shifted_r(0, u);
        let lr1 = shifted_r(1, u);
        let chi = |b: bool| i64::from(b);
        match which {
            Piece::Quotient => {
                Ok(lr * (binomial(s + 1, s) + (m - 2) * binomial(s + 1, s - 1))
                    - lr1 * (m - 2) * binomial(s + 1, s - 1))
            }
            Piece::Factor(t) => {
                if self.f_and_r(&t.a) != Some((t.f, t.r)) {
                    return Err(Error::NotEligible(format!("{:?}", t.a)));
                }
                let s1 = self.sigma(1) as i64;
                match t.k() {
                    0 => {
                        let f = t.f as i64;
                        let r = t.r as i64;
                        let b1 = binomial(s - f, s - f - 1);
                        let b2 = binomial(s - f, s - f - 2);
                        Ok(lr * (r * b1 + (m - 2) * b2) - lr1 * ((r - 1) * b1 + (m - 2) * b2))
                    }
                    1 => {
                        let a1 = t.a[0] as i64;
                        if self.rho() == 1 {
                            Ok(chi(a1 <= s) * shifted_r(n - a1 * s1, u))
                        } else {
                            let s2 = self.sigma(2) as i64;
                            let f = t.f as i64;
                            Ok(chi(a1 + f < s)
                                * (lr * (a1 * s1 - n + 1 + s2 * (s - a1)) - lr1 * (a1 * s1 - n + s2 * (s - a1))))
                        }
                    }
                    _ => {
                        let (a1, a2) = (t.a[0] as i64, t.a[1] as i64);
                        let s2 = self.sigma(2) as i64;
                        Ok(chi(s == a1 + a2) * shifted_r(n - a1 * s1 - a2 * s2, u))
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    const F: Field = Field::Prime(32003);

    fn sc(m: usize, n: u32, sigma: &[usize]) -> ScrollStructure {
        ScrollStructure::new(F, m, n, sigma).unwrap()
    }

    #[test]
    fn psi_for_three_generators() {
        let st = sc(3, 2, &[1]);
        let [top, bot] = st.psi();
        let p = |s: &str| parse_poly(s, F, 3).unwrap();
        assert_eq!(top, vec![p("T1"), p("y")]);
        assert_eq!(bot, vec![p("T2"), p("x")]);
        assert_eq!(st.h_generators(), vec![p("T1*x - T2*y")]);
        assert!(st.fiber_minors().is_empty());
    }

    #[test]
    fn psi_for_two_blocks() {
        let st = sc(4, 2, &[1, 1]);
        let p = |s: &str| parse_poly(s, F, 4).unwrap();
        let [top, bot] = st.psi();
        assert_eq!(top, vec![p("T1"), p("T3"), p("y")]);
        assert_eq!(bot, vec![p("T2"), p("T4"), p("x")]);
        assert_eq!(st.h_generators().len(), 3);
        assert_eq!(st.k_generators(), top);
    }

    #[test]
    fn one_block_never_uses_last_variable() {
        for m in 3..8 {
            let st = sc(m, 3, &[m - 2]);
            for g in st.h_generators() {
                assert!(g.monomials().all(|mo| mo.exp(crate::algebra::Var::T(m)) == 0));
            }
            assert_eq!(st.h_generators().len(), (m - 1) * (m - 2) / 2);
            let names: Vec<usize> = st.naming().iter().map(|x| x.1).collect();
            assert_eq!(names, (1..m).collect::<Vec<_>>());
        }
        let names: Vec<usize> = sc(7, 2, &[3, 2]).naming().iter().map(|x| x.1).collect();
        assert_eq!(names, (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn eligible_tuples_small() {
        let st = sc(4, 2, &[1, 1]);
        let a: Vec<Vec<u32>> = st.eligible_tuples().into_iter().map(|t| t.a).collect();
        assert_eq!(a, vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(st.eligible_tuples().iter().all(|t| t.r == 1));
        let st = sc(5, 3, &[2, 1]);
        let t = st.tuple(&[1]).unwrap();
        assert_eq!((t.f, t.r), (0, 1));
        assert!(st.tuple(&[2]).is_err());
    }

    #[test]
    fn empty_tuple_closed_form() {
        for s1 in 1..5usize {
            for n in 2..9u32 {
                let st = sc(s1 + 2, n, &[s1]);
                let e = st.tuple(&[]).unwrap();
                let c = ceil_div(n as i64, s1 as i64);
                assert_eq!(e.f as i64, c - 1);
                assert_eq!(e.r as i64, s1 as i64 * c - n as i64 + 1);
            }
        }
    }

    #[test]
    fn symbolic_generators_m3() {
        let st = sc(3, 2, &[1]);
        let p = |s: &str| parse_poly(s, F, 3).unwrap();
        let g: Vec<BiPoly> = st.symbolic_power_generators().into_iter().map(|g| g.monomial).collect();
        assert_eq!(g, vec![p("T1^2"), p("y^2"), p("T1*y")]);
        let fib: Vec<BiPoly> = st.fiber_symbolic_generators().into_iter().map(|g| g.monomial).collect();
        assert_eq!(fib, vec![p("T1^2")]);
    }

    #[test]
    fn symbolic_generators_have_large_t_degree_or_involve_xy() {
        for (m, sigma) in [(5usize, vec![3usize]), (5, vec![2, 1]), (6, vec![2, 2])] {
            for n in 2..6 {
                let st = sc(m, n, &sigma);
                let lower = st.tuple(&[]).unwrap().f + 1;
                for g in st.fiber_symbolic_generators() {
                    assert!(g.monomial.bidegree().unwrap().1 >= lower);
                }
            }
        }
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(-1, 2), 1);
        assert_eq!(binomial(-1, 3), -1);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn en_hilbert_small_cases() {
        for c in 1..5 {
            for r in -1..c {
                assert_eq!(en_hilbert(c, 1, r, 0), r + 1);
                for s in 1..6 {
                    assert_eq!(en_hilbert(c, 1, r, s), c);
                }
                assert_eq!(en_hilbert(c, 0, r, 1), c - (r + 1));
                assert_eq!(en_hilbert(c, 3, r, -1), 0);
            }
        }
    }

    #[test]
    fn en_hilbert_telescopes() {
        for c in 1..4 {
            for r in -1..c {
                for dd in 1..5 {
                    for s in 0..7 {
                        let partial: i64 = (0..=s).map(|i| en_hilbert(c, dd - 1, r, i)).sum();
                        assert_eq!(en_hilbert(c, dd, r, s), partial);
                    }
                }
            }
        }
    }

    #[test]
    fn piece_lengths() {
        for m in 3..7 {
            let st = sc(m, 2, &[m - 2]);
            assert_eq!(st.piece_length(Piece::Quotient, 0, 1).unwrap(), m as i64);
        }
        let st = sc(4, 2, &[1, 1]);
        let t = st.tuple(&[0, 0]).unwrap();
        assert_eq!(st.piece_length(Piece::Factor(&t), 2, 0).unwrap(), 1);
        let e = st.tuple(&[]).unwrap();
        for s in 0..e.f as i64 {
            for u in 0..5 {
                assert_eq!(st.piece_length(Piece::Factor(&e), u, s).unwrap(), 0);
            }
        }
        let bogus = EligibleTuple { a: vec![5], f: 0, r: 1 };
        assert!(st.piece_length(Piece::Factor(&bogus), 0, 0).is_err());
    }
}

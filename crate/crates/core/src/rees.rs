//! Defining equations of the Rees algebra: the forms `c_i`, the families `Delta` and `pi`,
//! the generators `f_j`, `g_{a1,j}`, `h_{a1,a2}`, the fiber equations and the substitution
//! `pi` used to test congruences modulo `H`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::Field;
use crate::algebra::poly::BiPoly;
use crate::error::{Error, Result};
use crate::presentation::PresentationData;
use crate::scroll::{EligibleTuple, ScrollStructure};

/// The three shapes of generators besides the minors of `psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum GeneratorKind {
    /// A `2 x 2` minor of `psi`.
    Minor,
    /// `f_j`, indexed by the empty tuple.
    F,
    /// `g_{a1,j}`, indexed by a 1-tuple.
    G,
    /// `h_{a1,a2}`, indexed by a 2-tuple.
    H,
}

/// One generator of the Rees ideal with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesGenerator {
    pub kind: GeneratorKind,
    /// The eligible tuple; `None` for minors.
    pub tuple: Option<EligibleTuple>,
    /// `j` for `f` and `g`; column pair for minors is in `label`.
    pub j: u32,
    pub label: String,
    pub poly: BiPoly,
    pub bidegree: (u32, u32),
}

/// The generating set `H + (G_(a,j))` together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesGenerators {
    pub scroll: ScrollStructure,
    /// `c_0, ..., c_n`, linear forms in `T`.
    pub c: Vec<BiPoly>,
    /// `g = Delta_{0,n}`.
    pub g: BiPoly,
    pub generators: Vec<ReesGenerator>,
}

impl ReesGenerators {
    pub fn minors(&self) -> impl Iterator<Item = &ReesGenerator> + '_ {
        self.generators.iter().filter(|g| g.kind == GeneratorKind::Minor)
    }

    pub fn tuple_generators(&self) -> impl Iterator<Item = &ReesGenerator> + '_ {
        self.generators.iter().filter(|g| g.kind != GeneratorKind::Minor)
    }

    pub fn polys(&self) -> Vec<BiPoly> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    /// The generator indexed by `(a, j)`.
    pub fn find(&self, a: &[u32], j: u32) -> Option<&ReesGenerator> {
        self.tuple_generators()
            .find(|g| g.j == j && g.tuple.as_ref().map(|t| t.a.as_slice()) == Some(a))
    }
}

/// The forms `c_i` with `T . phi'' = sum_i c_i x^(n-i) y^i`, for a presentation whose linear
/// part is already in block form.
pub fn extract_c(pd: &PresentationData) -> Result<Vec<BiPoly>> {
    let field = pd.field();
    let m = pd.m();
    let n = pd.n();
    let mut c = vec![BiPoly::zero(field, m); n as usize + 1];
    for (i, e) in pd.nonlinear_column().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let coeffs = e.xy_form_coefficients(n)?;
        let t = BiPoly::t(field, m, i + 1);
        for (k, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                c[k] = &c[k] + &t.scale(a);
            }
        }
    }
    // Reassemble and compare against the matrix product.
    let mut lhs = BiPoly::zero(field, m);
    for (i, e) in pd.nonlinear_column().iter().enumerate() {
        lhs = &lhs + &(&BiPoly::t(field, m, i + 1) * &e.with_nt(m)?);
    }
    if lhs != xy_combination(&c, n) {
        return Err(Error::HypothesisViolated("c_i do not reproduce T . phi''".into()));
    }
    Ok(c)
}

fn xy_combination(c: &[BiPoly], n: u32) -> BiPoly {
    let field = c[0].field();
    let nt = c[0].nt();
    let mut out = BiPoly::zero(field, nt);
    for (k, ck) in c.iter().enumerate() {
        let mono = crate::algebra::Monomial::xy((n as usize - k) as u16, k as u16);
        out = &out + &ck.mul_monomial(&mono);
    }
    out
}

/// The polynomial families built from the `c_i` over a fixed scroll.
#[derive(Clone, Debug)]
pub struct Families<'a> {
    pub scroll: &'a ScrollStructure,
    pub c: &'a [BiPoly],
}

impl<'a> Families<'a> {
    pub fn new(scroll: &'a ScrollStructure, c: &'a [BiPoly]) -> Result<Self> {
        if c.len() != scroll.n() as usize + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} forms c_i, got {}",
                scroll.n() + 1,
                c.len()
            )));
        }
        Ok(Families { scroll, c })
    }

    fn field(&self) -> Field {
        self.scroll.field()
    }

    fn zero(&self) -> BiPoly {
        BiPoly::zero(self.field(), self.scroll.m())
    }

    fn n(&self) -> i64 {
        self.scroll.n() as i64
    }

    /// `Delta_{a,b} = sum_{k=0}^b c_{a+k} x^(b-k) y^k`, zero for `b < 0`.
    pub fn delta(&self, a: i64, b: i64) -> Result<BiPoly> {
        if b < 0 {
            return Ok(self.zero());
        }
        if a < 0 || a + b > self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "Delta_{{{a},{b}}} needs 0 <= a, a + b <= n"
            )));
        }
        let mut out = self.zero();
        for k in 0..=b {
            let mono = crate::algebra::Monomial::xy((b - k) as u16, k as u16);
            out = &out + &self.c[(a + k) as usize].mul_monomial(&mono);
        }
        Ok(out)
    }

    /// `Delta_a = Delta_{a, n-a}`.
    pub fn delta_short(&self, a: i64) -> Result<BiPoly> {
        self.delta(a, self.n() - a)
    }

    /// `pi_{i,a,b,gamma} = sum_{k=0}^b c_{a+k} T_{i,gamma-k}`.
    pub fn pi(&self, i: usize, a: i64, b: i64, gamma: i64) -> Result<BiPoly> {
        let st = self.scroll;
        if !(1..=2).contains(&i) || i > st.ell() {
            return Err(Error::IndexOutOfRange(format!("pi needs 1 <= i <= 2, got i = {i}")));
        }
        let si = st.sigma(i) as i64;
        if b < 0 || gamma < b + 1 || gamma > si + 1 || a < 0 || a + b > self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "pi_{{{i},{a},{b},{gamma}}} needs b + 1 <= gamma <= sigma_i + 1 and a + b <= n"
            )));
        }
        let mut out = self.zero();
        for k in 0..=b {
            out = &out + &(&self.c[(a + k) as usize] * &st.var(i, (gamma - k) as usize));
        }
        Ok(out)
    }

    /// `pi_{i,a} = pi_{i,a,sigma_i-1,sigma_i+1}`.
    pub fn pi_short(&self, i: usize, a: i64) -> Result<BiPoly> {
        let si = self.scroll.sigma(i) as i64;
        self.pi(i, a, si - 1, si + 1)
    }

    /// `pi'_{i,s,j} = pi_{i,n-s,s,s+j}`.
    pub fn pi_prime(&self, i: usize, s: i64, j: i64) -> Result<BiPoly> {
        self.pi(i, self.n() - s, s, s + j)
    }

    /// `sum_{p+q=total} A^p B^q term(p)`, zero when `total < 0`.
    fn convolution<F>(&self, total: i64, a: &BiPoly, b: &BiPoly, mut term: F) -> Result<BiPoly>
    where
        F: FnMut(i64) -> Result<BiPoly>,
    {
        let mut out = self.zero();
        for p in 0..=total {
            let q = total - p;
            let coeff = &a.pow(p as u32) * &b.pow(q as u32);
            out = &out + &(&coeff * &term(p)?);
        }
        Ok(out)
    }

    /// `sum_{p+q=N} T_{1,1}^p T_{1,sigma_1+1}^q pi_{1, p sigma_1}`.
    fn block1_sum(&self, total: i64) -> Result<BiPoly> {
        let st = self.scroll;
        let s1 = st.sigma(1) as i64;
        self.convolution(total, &st.var(1, 1), &st.var(1, s1 as usize + 1), |p| {
            self.pi_short(1, p * s1)
        })
    }

    /// `sum_{p+q=N} T_{2,1}^p T_{2,sigma_2+1}^q pi_{2, offset + p sigma_2}`.
    fn block2_sum(&self, total: i64, offset: i64) -> Result<BiPoly> {
        let st = self.scroll;
        let s2 = st.sigma(2) as i64;
        self.convolution(total, &st.var(2, 1), &st.var(2, s2 as usize + 1), |p| {
            self.pi_short(2, offset + p * s2)
        })
    }

    /// `G_(a,j)` for an eligible tuple and `1 <= j <= r(a)`.
    pub fn generator(&self, t: &EligibleTuple, j: u32) -> Result<BiPoly> {
        let st = self.scroll;
        if j < 1 || j > t.r {
            return Err(Error::IndexOutOfRange(format!(
                "j = {j} outside 1..={} for {}",
                t.r,
                t.label()
            )));
        }
        if st.f_and_r(&t.a) != Some((t.f, t.r)) {
            return Err(Error::NotEligible(t.label()));
        }
        let n = self.n();
        let f = t.f as i64;
        let r = t.r as i64;
        let j = j as i64;
        let s1 = st.sigma(1) as i64;
        match t.k() {
            0 => {
                let lead = st.var(1, (j + s1 + 1 - r) as usize);
                let first = &lead * &self.block1_sum(f - 1)?;
                let second = &st.var(1, 1).pow(f as u32) * &self.pi_prime(1, s1 + 1 - r, j)?;
                Ok(&first + &second)
            }
            1 => {
                let a1 = t.a[0] as i64;
                let s2 = st.sigma(2) as i64;
                let lead = st.var(2, (j + s2 + 1 - r) as usize);
                let t11 = st.var(1, 1).pow(a1 as u32);
                let first = &(&lead * &st.var(2, s2 as usize + 1).pow(f as u32)) * &self.block1_sum(a1 - 1)?;
                let second = &(&t11 * &lead) * &self.block2_sum(f - 1, a1 * s1)?;
                let third = &(&t11 * &st.var(2, 1).pow(f as u32)) * &self.pi_prime(2, s2 + 1 - r, j)?;
                Ok(&(&first + &second) + &third)
            }
            2 => {
                let (a1, a2) = (t.a[0] as i64, t.a[1] as i64);
                let s2 = st.sigma(2) as i64;
                let w = a1 * s1 + a2 * s2;
                let xp = BiPoly::x(self.field(), st.m()).pow((n - w) as u32);
                let t11 = st.var(1, 1).pow(a1 as u32);
                let first = &(&xp * &st.var(2, s2 as usize + 1).pow(a2 as u32)) * &self.block1_sum(a1 - 1)?;
                let second = &(&xp * &t11) * &self.block2_sum(a2 - 1, a1 * s1)?;
                let third = &(&t11 * &st.var(2, 1).pow(a2 as u32)) * &self.delta_short(w)?;
                Ok(&(&first + &second) + &third)
            }
            k => Err(Error::NotEligible(format!("tuple of length {k}"))),
        }
    }

    /// The bidegree `G_(a,j)` is expected to have.
    pub fn expected_bidegree(&self, t: &EligibleTuple) -> (u32, u32) {
        let rho = self.scroll.rho();
        match (t.k(), rho) {
            (0, _) => (0, t.f + 2),
            (1, 2) => (0, t.a[0] + t.f + 2),
            (1, _) => (t.f + 1, t.a[0] + 1),
            _ => (t.f + 1, t.a[0] + t.a[1] + 1),
        }
    }
}

fn kind_and_label(t: &EligibleTuple, j: u32) -> (GeneratorKind, String) {
    match t.a.as_slice() {
        [] => (GeneratorKind::F, format!("f_{j}")),
        [a1] => (GeneratorKind::G, format!("g_{{{a1},{j}}}")),
        [a1, a2] => (GeneratorKind::H, format!("h_{{{a1},{a2}}}")),
        _ => unreachable!("tuples have length at most 2"),
    }
}

/// The generating set of the Rees ideal over the scroll with forms `c`.
pub fn rees_ideal(scroll: &ScrollStructure, c: &[BiPoly]) -> Result<ReesGenerators> {
    let fam = Families::new(scroll, c)?;
    let mut generators = Vec::new();
    let [top, bot] = scroll.psi();
    let cols = top.len();
    for p in 0..cols {
        for q in p + 1..cols {
            let poly = &(&top[p] * &bot[q]) - &(&top[q] * &bot[p]);
            let bidegree = poly.bidegree()?;
            generators.push(ReesGenerator {
                kind: GeneratorKind::Minor,
                tuple: None,
                j: 0,
                label: format!("minor_{{{},{}}}", p + 1, q + 1),
                poly,
                bidegree,
            });
        }
    }
    for t in scroll.eligible_tuples() {
        for j in 1..=t.r {
            let poly = fam.generator(&t, j)?;
            let bidegree = poly.bidegree()?;
            let expected = fam.expected_bidegree(&t);
            if bidegree != expected {
                return Err(Error::HypothesisViolated(format!(
                    "G_({},{j}) has bidegree {bidegree:?}, expected {expected:?}",
                    t.label()
                )));
            }
            let (kind, label) = kind_and_label(&t, j);
            generators.push(ReesGenerator {
                kind,
                tuple: Some(t.clone()),
                j,
                label,
                poly,
                bidegree,
            });
        }
    }
    Ok(ReesGenerators {
        scroll: scroll.clone(),
        c: c.to_vec(),
        g: xy_combination(c, scroll.n()),
        generators,
    })
}

/// Implicit equations of the curve: minors of the truncated `psi` and the generators of
/// `x,y`-degree zero.
pub fn fiber_equations(rg: &ReesGenerators) -> Vec<ReesGenerator> {
    let [top, bot] = rg.scroll.psi_truncated();
    let cols = top.len();
    let mut out = Vec::new();
    for p in 0..cols {
        for q in p + 1..cols {
            let poly = &(&top[p] * &bot[q]) - &(&top[q] * &bot[p]);
            let bidegree = (0, 2);
            out.push(ReesGenerator {
                kind: GeneratorKind::Minor,
                tuple: None,
                j: 0,
                label: format!("minor_{{{},{}}}", p + 1, q + 1),
                poly,
                bidegree,
            });
        }
    }
    out.extend(rg.tuple_generators().filter(|g| g.bidegree.0 == 0).cloned());
    out
}

/// The substitution `T_{i,j} -> x^(j-1) y^(sigma_i-j+1) t_i` (and `T_m -> T_m` when
/// `rho = 1`), with `t_1, t_2` realized as `T_(m+1)`, `T_(m+2)`.
#[derive(Clone, Debug)]
pub struct PiMap {
    images: Vec<Option<BiPoly>>,
    nt: usize,
    field: Field,
    m: usize,
}

impl PiMap {
    pub fn new(scroll: &ScrollStructure) -> Self {
        let field = scroll.field();
        let m = scroll.m();
        let nt = m + 2;
        let mut images = vec![None; m + 2];
        images[0] = Some(BiPoly::x(field, nt));
        images[1] = Some(BiPoly::y(field, nt));
        for ((i, j), t) in scroll.naming() {
            let mono = crate::algebra::Monomial::xy((j - 1) as u16, (scroll.sigma(i) + 1 - j) as u16);
            let img = &BiPoly::monomial(field, nt, mono) * &BiPoly::t(field, nt, m + i);
            images[t + 1] = Some(img);
        }
        if scroll.rho() == 1 {
            images[m + 1] = Some(BiPoly::t(field, nt, m));
        }
        PiMap { images, nt, field, m }
    }

    /// `pi(t_i)`: `t_i` for `i <= rho`, `1` for `i = rho + 1`.
    pub fn t(&self, i: usize, scroll: &ScrollStructure) -> BiPoly {
        if i == scroll.ell() {
            BiPoly::one(self.field, self.nt)
        } else {
            BiPoly::t(self.field, self.nt, self.m + i)
        }
    }

    pub fn apply(&self, p: &BiPoly) -> Result<BiPoly> {
        p.substitute(&self.images, self.nt)
    }
}

/// `pi(g T^a T_{k+1,1}^f T_{k+1,j}) == y^n pi(G_(a,j))`, together with the closed form
/// `pi(G_(a,j)) = sum_s x^(n-s+j-1) y^(s+r-j) t^a t_{k+1}^(f+1) pi(c_s)`.
pub fn pi_substitution_check(
    rg: &ReesGenerators,
    pim: &PiMap,
    t: &EligibleTuple,
    j: u32,
    gen: &BiPoly,
) -> Result<bool> {
    let st = &rg.scroll;
    let n = st.n();
    let mono = st.tuple_monomial(t, j)?;
    let lhs = pim.apply(&(&rg.g * &mono))?;
    let pig = pim.apply(gen)?;
    let ypow = BiPoly::y(st.field(), st.m() + 2).pow(n);
    if lhs != &ypow * &pig {
        return Ok(false);
    }
    let mut tw = BiPoly::one(st.field(), st.m() + 2);
    for (u, &au) in t.a.iter().enumerate() {
        tw = &tw * &pim.t(u + 1, st).pow(au);
    }
    tw = &tw * &pim.t(t.k() + 1, st).pow(t.f + 1);
    let mut closed = BiPoly::zero(st.field(), st.m() + 2);
    for (s, cs) in rg.c.iter().enumerate() {
        let s = s as i64;
        let (xe, ye) = (n as i64 - s + j as i64 - 1, s + t.r as i64 - j as i64);
        let mono = crate::algebra::Monomial::xy(xe as u16, ye as u16);
        closed = &closed + &(&pim.apply(cs)? * &tw).mul_monomial(&mono);
    }
    Ok(closed == pig)
}

/// One congruence modulo `H`, tested through `pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub label: String,
    pub holds: bool,
}

/// The exchange rule `x^a T_{i,j} = y^a T_{i,j+a}`, the two rewriting rules for
/// `Delta`, and the ladder relating consecutive generators, all modulo `H`.
pub fn congruences(rg: &ReesGenerators) -> Result<Vec<Congruence>> {
    let st = &rg.scroll;
    let fam = Families::new(st, &rg.c)?;
    let pim = PiMap::new(st);
    let field = st.field();
    let m = st.m();
    let n = st.n() as i64;
    let x = BiPoly::x(field, m);
    let y = BiPoly::y(field, m);
    let mut out = Vec::new();
    let mut push = |label: String, lhs: BiPoly, rhs: BiPoly| -> Result<()> {
        let holds = pim.apply(&(&lhs - &rhs))?.is_zero();
        out.push(Congruence { label, holds });
        Ok(())
    };
    for i in 1..=st.rho() {
        let si = st.sigma(i) as i64;
        for j in 1..=si + 1 {
            for a in 0..=si + 1 - j {
                push(
                    format!("exchange i={i} j={j} a={a}"),
                    &x.pow(a as u32) * &st.var(i, j as usize),
                    &y.pow(a as u32) * &st.var(i, (j + a) as usize),
                )?;
            }
        }
        for a in 0..=n - si + 1 {
            push(
                format!("delta-to-pi i={i} a={a}"),
                &(&st.var(i, 1) * &x) * &fam.delta(a, si - 1)?,
                &y.pow(si as u32) * &fam.pi_short(i, a)?,
            )?;
        }
        for s in 0..=si.min(n) {
            for j in 1..=si + 1 - s {
                push(
                    format!("delta-to-pi-prime i={i} s={s} j={j}"),
                    &st.var(i, j as usize) * &fam.delta_short(n - s)?,
                    &y.pow(s as u32) * &fam.pi_prime(i, s, j)?,
                )?;
            }
        }
    }
    let gen = |a: &[u32], j: u32| rg.find(a, j).map(|g| g.poly.clone());
    let e = st.tuple(&[])?;
    let s1 = st.sigma(1) as u32;
    if st.rho() == 2 {
        let s2 = st.sigma(2) as u32;
        for t in st.eligible_tuples().into_iter().filter(|t| t.k() == 2) {
            let (a1, a2) = (t.a[0], t.a[1]);
            let h = gen(&t.a, 1).expect("generator present");
            if a2 == 0 {
                if let Some(next) = gen(&[a1 + 1, 0], 1) {
                    push(format!("ladder T11*h({a1},0)"), &st.var(1, 1) * &h, &y.pow(s1) * &next)?;
                }
            }
            if let Some(next) = gen(&[a1, a2 + 1], 1) {
                push(
                    format!("ladder T21*h({a1},{a2})"),
                    &st.var(2, 1) * &h,
                    &y.pow(s2) * &next,
                )?;
            }
        }
        for t in st.eligible_tuples().into_iter().filter(|t| t.k() == 1) {
            let a1 = t.a[0];
            let h = gen(&[a1, t.f], 1).expect("generator present");
            for j in 1..=t.r {
                let g = gen(&[a1], j).expect("generator present");
                push(
                    format!("ladder T2{j}*h({a1},f)"),
                    &st.var(2, j as usize) * &h,
                    &y.pow(s2 + 1 - t.r) * &g,
                )?;
            }
        }
        let h = gen(&[e.f, 0], 1).expect("generator present");
        for j in 1..=e.r {
            let f = gen(&[], j).expect("generator present");
            push(
                format!("ladder T1{j}*h(f,0)"),
                &st.var(1, j as usize) * &h,
                &y.pow(s1 + 1 - e.r) * &f,
            )?;
        }
    } else {
        for t in st.eligible_tuples().into_iter().filter(|t| t.k() == 1) {
            let a1 = t.a[0];
            if let Some(next) = gen(&[a1 + 1], 1) {
                let g = gen(&[a1], 1).expect("generator present");
                push(format!("ladder T11*g({a1},1)"), &st.var(1, 1) * &g, &y.pow(s1) * &next)?;
            }
        }
        let g = gen(&[e.f], 1).expect("generator present");
        for j in 1..=e.r {
            let f = gen(&[], j).expect("generator present");
            push(
                format!("ladder T1{j}*g(f,1)"),
                &st.var(1, j as usize) * &g,
                &y.pow(s1 + 1 - e.r) * &f,
            )?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::presentation::build_from_pair;

    const F: Field = Field::Prime(32003);

    fn p(s: &str, nt: usize) -> BiPoly {
        parse_poly(s, F, nt).unwrap()
    }

    #[test]
    fn c_from_monomial_pair() {
        let pd = build_from_pair(F, 1, 1, &p("y^3", 0), &p("x^3", 0)).unwrap();
        let c = extract_c(&pd).unwrap();
        assert_eq!(c, vec![p("T4", 4), p("0", 4), p("T1", 4)]);
    }

    fn random_c(st: &ScrollStructure, seed: u64) -> Vec<BiPoly> {
        let mut state = seed;
        (0..=st.n())
            .map(|_| {
                let mut out = BiPoly::zero(F, st.m());
                for t in 1..=st.m() {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    let v = (state >> 33) % 32003;
                    out = &out + &BiPoly::t(F, st.m(), t).scale(&F.from_u64(v));
                }
                out
            })
            .collect()
    }

    #[test]
    fn delta_identities() {
        let st = ScrollStructure::new(F, 5, 4, &[2, 1]).unwrap();
        let c = random_c(&st, 1);
        let fam = Families::new(&st, &c).unwrap();
        assert_eq!(fam.delta(0, 4).unwrap(), xy_combination(&c, 4));
        assert!(fam.delta(2, -1).unwrap().is_zero());
        assert!(fam.delta(2, 3).is_err());
        for a in 0..=4 {
            for b in 1..=4 - a {
                let d = fam.delta(a, b).unwrap();
                assert_eq!(d.bidegree().unwrap(), (b as u32, 1));
                for gamma in 1..=b {
                    let x = BiPoly::x(F, 5).pow((b - gamma + 1) as u32);
                    let y = BiPoly::y(F, 5).pow(gamma as u32);
                    let split =
                        &(&x * &fam.delta(a, gamma - 1).unwrap()) + &(&y * &fam.delta(a + gamma, b - gamma).unwrap());
                    assert_eq!(split, d);
                }
            }
        }
    }

    #[test]
    fn pi_family_shapes() {
        let st = ScrollStructure::new(F, 5, 3, &[3]).unwrap();
        let c = random_c(&st, 2);
        let fam = Families::new(&st, &c).unwrap();
        assert_eq!(fam.pi_short(1, 0).unwrap().bidegree().unwrap(), (0, 2));
        assert_eq!(fam.pi_short(2, 1).unwrap().bidegree().unwrap(), (1, 1));
        // the second block is (y, x) when rho = 1
        assert_eq!(fam.pi_short(2, 2).unwrap(), &c[2] * &BiPoly::x(F, 5));
        // reversed summation of pi'
        for s in 0..=3i64 {
            for j in 1..=(4 - s) {
                let mut rev = BiPoly::zero(F, 5);
                for k in 0..=s {
                    rev = &rev + &(&c[(3 - k) as usize] * &st.var(1, (j + k) as usize));
                }
                assert_eq!(fam.pi_prime(1, s, j).unwrap(), rev);
            }
        }
        assert!(fam.pi(1, 0, 3, 3).is_err());
    }

    #[test]
    fn first_generator_is_g() {
        for (m, sigma, n) in [
            (3, vec![1], 2),
            (4, vec![1, 1], 2),
            (5, vec![2, 1], 3),
            (5, vec![3], 4),
            (6, vec![2, 2], 3),
        ] {
            let st = ScrollStructure::new(F, m, n, &sigma).unwrap();
            let c = random_c(&st, m as u64 + n as u64);
            let rg = rees_ideal(&st, &c).unwrap();
            let zeros = vec![0; st.rho()];
            let g0 = rg.find(&zeros, 1).unwrap();
            assert_eq!(g0.poly, rg.g);
            assert_eq!(g0.bidegree, (n, 1));
        }
    }

    #[test]
    fn congruences_hold() {
        for (m, sigma, n) in [
            (3, vec![1], 3),
            (4, vec![1, 1], 3),
            (5, vec![3], 4),
            (6, vec![3, 1], 4),
            (6, vec![2, 2], 5),
        ] {
            let st = ScrollStructure::new(F, m, n, &sigma).unwrap();
            let c = random_c(&st, 5);
            let rg = rees_ideal(&st, &c).unwrap();
            let cs = congruences(&rg).unwrap();
            assert!(cs.iter().any(|c| c.label.starts_with("ladder")));
            for c in cs {
                assert!(c.holds, "{}", c.label);
            }
        }
    }

    #[test]
    fn generator_count() {
        let st = ScrollStructure::new(F, 4, 2, &[1, 1]).unwrap();
        let c = random_c(&st, 9);
        let rg = rees_ideal(&st, &c).unwrap();
        assert_eq!(rg.tuple_generators().count(), 6);
        assert_eq!(rg.minors().count(), 3);
    }

    #[test]
    fn fiber_equation_of_plane_curve() {
        let st = ScrollStructure::new(F, 3, 3, &[1]).unwrap();
        let c = random_c(&st, 4);
        let rg = rees_ideal(&st, &c).unwrap();
        let fe = fiber_equations(&rg);
        assert_eq!(fe.len(), 1);
        assert_eq!(fe[0].bidegree, (0, 4));
        assert_eq!(fe[0].kind, GeneratorKind::F);
    }

    #[test]
    fn pi_kills_minors_and_checks_generators() {
        for (m, sigma, n) in [
            (4, vec![1, 1], 3),
            (5, vec![3], 3),
            (6, vec![3, 1], 4),
            (5, vec![2, 1], 2),
        ] {
            let st = ScrollStructure::new(F, m, n, &sigma).unwrap();
            let c = random_c(&st, 77);
            let rg = rees_ideal(&st, &c).unwrap();
            let pim = PiMap::new(&st);
            for h in rg.minors() {
                assert!(pim.apply(&h.poly).unwrap().is_zero());
            }
            for g in rg.tuple_generators() {
                let t = g.tuple.as_ref().unwrap();
                assert!(
                    pi_substitution_check(&rg, &pim, t, g.j, &g.poly).unwrap(),
                    "{}",
                    g.label
                );
                let (lead, _) = g.poly.leading().unwrap();
                let bumped = &g.poly + &BiPoly::monomial(F, m, *lead);
                assert!(!pi_substitution_check(&rg, &pim, t, g.j, &bumped).unwrap());
            }
        }
    }
}

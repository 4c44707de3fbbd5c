//! Runs every closed formula against the rank oracles on one instance.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use super::{
    fiber_hilbert_brute, kernel_membership, power_dim, span_dim, symbolic_comparison_dims, symbolic_fiber_hilbert,
};
use crate::algebra::field::{Field, DEFAULT_PRIME};
use crate::algebra::poly::graded_piece_dim;
use crate::analysis::Analysis;
use crate::error::Result;
use crate::invariants::{
    betti_table, fiber_hilbert, fiber_hilbert_polynomial, fit_resolution, hilbert_power, postulation, reduction_number,
    regularity_power, symbolic_fiber_count,
};
use crate::presentation::random::random_invertible;
use crate::presentation::{canonicalize, LinearPencil};
use crate::rees::{congruences, fiber_equations, pi_substitution_check, PiMap};

/// Bidegree window `u <= u_max`, `s <= s_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Window {
    pub u_max: u32,
    pub s_max: u32,
}

impl Window {
    /// `u <= 2n`, `s <= 3`.
    pub fn default_for(n: u32) -> Self {
        Window { u_max: 2 * n, s_max: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckResult {
    pub name: String,
    pub window: Option<Window>,
    pub passed: bool,
    /// First failing bidegree or degree pair.
    pub counterexample: Option<(i64, i64)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerifyReport {
    pub prime: u32,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Where a check first failed and why.
pub type Failure = Option<((i64, i64), String)>;

struct Builder {
    checks: Vec<CheckResult>,
}

impl Builder {
    fn push(&mut self, name: &str, window: Option<Window>, failure: Failure, ok_detail: String) {
        let (passed, counterexample, detail) = match failure {
            None => (true, None, ok_detail),
            Some((at, why)) => (false, Some(at), why),
        };
        self.checks.push(CheckResult {
            name: name.into(),
            window,
            passed,
            counterexample,
            detail,
        });
    }
}

/// The instance over `F_p`: itself if already there, else its reduction mod the default prime.
pub fn modular_instance(an: &Analysis) -> Result<Analysis> {
    match an.field() {
        Field::Prime(_) => Ok(an.clone()),
        Field::Rational => Analysis::new(an.input.reduce_mod(DEFAULT_PRIME)?),
    }
}

/// Membership of every generator in the kernel of `T_i -> delta_i t`.
pub fn check_kernel(an: &Analysis) -> Result<Option<String>> {
    for g in an.input_generators()? {
        if !kernel_membership(&g.poly, an.input.minors())? {
            return Ok(Some(g.label));
        }
    }
    Ok(None)
}

/// First `(u, s)` where `dim L_(u,s) != lambda(S_(u,s)) - lambda(I^s_(u+sd))`.
pub fn check_ideal_equality(an: &Analysis, w: Window) -> Result<Failure> {
    let gens: Vec<_> = an.input_generators()?.into_iter().map(|g| g.poly).collect();
    let d = an.d();
    for s in 0..=w.s_max {
        for u in 0..=w.u_max {
            let lhs = span_dim(&gens, u, s)? as i64;
            let rhs = graded_piece_dim(u as i64, s as i64, an.m()) as i64 - power_dim(&an.input, s, u + s * d)? as i64;
            if lhs != rhs {
                return Ok(Some(((u as i64, s as i64), format!("span {lhs}, expected {rhs}"))));
            }
        }
    }
    Ok(None)
}

/// The substitution identity and closed form for every `(a, j)`.
pub fn check_pi_identity(an: &Analysis) -> Result<Option<String>> {
    let pim = PiMap::new(&an.scroll);
    for g in an.rees.tuple_generators() {
        let t = g.tuple.as_ref().expect("tuple generator");
        if !pi_substitution_check(&an.rees, &pim, t, g.j, &g.poly)? {
            return Ok(Some(g.label.clone()));
        }
    }
    for h in an.rees.minors() {
        if !pim.apply(&h.poly)?.is_zero() {
            return Ok(Some(h.label.clone()));
        }
    }
    Ok(None)
}

/// Closed-form `lambda(I^s_z)` against the power expansion, `sd <= z <= sd + u_max`.
pub fn check_hilbert(an: &Analysis, w: Window) -> Result<Failure> {
    let d = an.d() as i64;
    for s in 1..=w.s_max {
        let sd = s as i64 * d;
        for z in sd..=sd + w.u_max as i64 {
            let formula = hilbert_power(s, z, &an.scroll)?;
            let brute = power_dim(&an.input, s, z as u32)? as i64;
            if formula != brute {
                return Ok(Some(((s as i64, z), format!("formula {formula}, oracle {brute}"))));
            }
        }
    }
    Ok(None)
}

/// Betti tables and regularity of `I^s` against resolutions fitted to the oracle.
pub fn check_betti_and_regularity(an: &Analysis, s_max: u32) -> Result<(Failure, Failure)> {
    let (sigma, tau, n) = (an.sigma(), an.tau(), an.n());
    let d = an.d() as i64;
    let mut betti = None;
    let mut reg = None;
    for s in 1..=s_max {
        let sd = s as i64 * d;
        let fitted = fit_resolution(
            |z| Ok(power_dim(&an.input, s, z.max(0) as u32)? as i64),
            sd,
            2 * n as i64 + 2,
        )?;
        let table = betti_table(s, sigma, tau, n)?;
        if betti.is_none() && (fitted.b0 != table.b0 || fitted.twists != table.all_twists()) {
            betti = Some((
                (s as i64, 0),
                format!(
                    "fitted b0 {} twists {:?}, formula b0 {} twists {:?}",
                    fitted.b0,
                    fitted.twists,
                    table.b0,
                    table.all_twists()
                ),
            ));
        }
        if s == 1 && betti.is_none() {
            let shape = table.b as usize == an.m() - 2 && table.twists == [d + n as i64];
            if !shape {
                betti = Some(((1, 0), "first power does not match the input resolution".into()));
            }
        }
        let r = regularity_power(s, sigma, tau, n)?;
        if reg.is_none() && fitted.regularity() != r {
            reg = Some(((s as i64, 0), format!("fitted {}, formula {r}", fitted.regularity())));
        }
        if reg.is_none() && tau == 0 && r != sd + n as i64 - 1 {
            reg = Some(((s as i64, 0), "one-block formula sd + n - 1 fails".into()));
        }
        if reg.is_none() && tau > 0 {
            let big = (s as i64 - 1) * tau as i64 >= n as i64 - 1;
            if big != (r == sd) {
                reg = Some(((s as i64, 0), format!("reg {r} vs sd {sd}")));
            }
        }
    }
    Ok((betti, reg))
}

/// Reduction number bounds and, for two blocks, the Hilbert value behind the choice.
pub fn check_reduction(an: &Analysis) -> Result<Option<String>> {
    let (sigma, tau, n) = (an.sigma(), an.tau(), an.n());
    let r = reduction_number(sigma, tau, n);
    if r.value < r.lower || r.value > r.upper {
        return Ok(Some(format!("{} outside [{}, {}]", r.value, r.lower, r.upper)));
    }
    if (n as usize - 1).is_multiple_of(sigma) && r.value != r.lower {
        return Ok(Some("sigma_1 | n - 1 but r(I) != ceil(n / sigma_1)".into()));
    }
    if tau > 0 {
        let c = (n as usize).div_ceil(sigma) as u32;
        let brute = symbolic_fiber_hilbert(&an.scroll, c)? as i64;
        let formula = symbolic_fiber_count(sigma, tau, n);
        if brute != formula {
            return Ok(Some(format!("H(K^(n)v, {c}): count {formula}, oracle {brute}")));
        }
    }
    Ok(None)
}

/// The postulation number as the last disagreement between the oracle fiber Hilbert
/// function and the Hilbert polynomial.
pub fn check_postulation(an: &Analysis, extra: u32) -> Result<Failure> {
    let (sigma, tau, n) = (an.sigma(), an.tau(), an.n());
    let p = postulation(sigma, tau, n);
    let eqs: Vec<_> = fiber_equations(&an.rees).into_iter().map(|g| g.poly).collect();
    let mut last_diff = -1i64;
    for s in 0..=(p.max(0) as u32 + extra) {
        let brute = fiber_hilbert_brute(&eqs, an.m(), s)? as i64;
        let b0 = fiber_hilbert(s, sigma, tau, n)?;
        if brute != b0 {
            return Ok(Some(((s as i64, 0), format!("fiber Hilbert {brute}, b0 {b0}"))));
        }
        if brute != fiber_hilbert_polynomial(s as i64, sigma, tau, n) {
            last_diff = s as i64;
        }
    }
    if last_diff != p {
        return Ok(Some((
            (last_diff, 0),
            format!("last disagreement at {last_diff}, formula {p}"),
        )));
    }
    Ok(None)
}

/// Canonical form of `X phi' Y` for random invertible `X`, `Y`: same `(sigma, tau)`.
pub fn check_canonical<R: Rng + ?Sized>(an: &Analysis, trials: usize, rng: &mut R) -> Result<Option<String>> {
    let field = an.field();
    let m = an.m();
    let pencil = LinearPencil::from_matrix(field, &an.input.linear_part(), m - 2)?;
    for _ in 0..trials {
        let x = random_invertible(field, m, rng);
        let y = random_invertible(field, m - 2, rng);
        let conj = pencil.transform(&x, &y)?;
        let cf = canonicalize(field, &conj.to_matrix(0))?;
        if (cf.sigma, cf.tau) != (an.sigma(), an.tau()) {
            return Ok(Some(format!(
                "({}, {}) became ({}, {})",
                an.sigma(),
                an.tau(),
                cf.sigma,
                cf.tau
            )));
        }
        if conj.transform(&cf.u, &cf.v)? != LinearPencil::block_target(field, cf.sigma, cf.tau) {
            return Ok(Some("round trip missed the block form".into()));
        }
    }
    Ok(None)
}

/// `G_(0^rho,1) = g` and the bidegree table.
pub fn check_g_and_bidegrees(an: &Analysis) -> Result<Option<String>> {
    let zeros = alloc::vec![0u32; an.rho()];
    match an.rees.find(&zeros, 1) {
        Some(g) if g.poly == an.rees.g => {}
        _ => return Ok(Some("G_(0,1) differs from g".into())),
    }
    let fam = crate::rees::Families::new(&an.scroll, &an.rees.c)?;
    for g in an.rees.tuple_generators() {
        let t = g.tuple.as_ref().expect("tuple generator");
        if g.poly.bidegree()? != fam.expected_bidegree(t) {
            return Ok(Some(format!("{} has bidegree {:?}", g.label, g.poly.bidegree()?)));
        }
    }
    Ok(None)
}

/// `y^n L + H = g K^(n) + H` in every bidegree of the window.
pub fn check_symbolic_comparison(an: &Analysis, w: Window) -> Result<Failure> {
    let l = an.rees.polys();
    for s in 0..=w.s_max {
        for u in 0..=w.u_max {
            let (a, b, both) = symbolic_comparison_dims(&an.scroll, &l, &an.rees.g, u, s)?;
            if a != b || a != both {
                return Ok(Some(((u as i64, s as i64), format!("dims {a}, {b}, sum {both}"))));
            }
        }
    }
    Ok(None)
}

/// Congruences modulo `H`.
pub fn check_congruences(an: &Analysis) -> Result<Option<String>> {
    Ok(congruences(&an.rees)?.into_iter().find(|c| !c.holds).map(|c| c.label))
}

fn labelled(r: Option<String>) -> Failure {
    r.map(|s| ((0, 0), s))
}

/// Runs every check. Rational instances are verified after reduction mod the default prime.
pub fn verify<R: Rng + ?Sized>(an: &Analysis, window: Window, rng: &mut R) -> Result<VerifyReport> {
    let an = modular_instance(an)?;
    let prime = an.field().modulus().unwrap_or(DEFAULT_PRIME);
    let n = an.n();
    let mut b = Builder { checks: Vec::new() };
    b.push(
        "kernel_membership",
        None,
        labelled(check_kernel(&an)?),
        format!("{} generators", an.rees.generators.len()),
    );
    b.push(
        "ideal_equality",
        Some(window),
        check_ideal_equality(&an, window)?,
        String::new(),
    );
    b.push("pi_identity", None, labelled(check_pi_identity(&an)?), String::new());
    b.push("congruences", None, labelled(check_congruences(&an)?), String::new());
    b.push(
        "hilbert_function",
        Some(window),
        check_hilbert(&an, window)?,
        String::new(),
    );
    let (betti, reg) = check_betti_and_regularity(&an, window.s_max)?;
    b.push("betti_tables", Some(window), betti, String::new());
    b.push("regularity", Some(window), reg, String::new());
    b.push("reduction_number", None, labelled(check_reduction(&an)?), String::new());
    b.push("postulation", None, check_postulation(&an, 3)?, String::new());
    b.push(
        "canonical_form",
        None,
        labelled(check_canonical(&an, 5, rng)?),
        String::new(),
    );
    b.push(
        "g_and_bidegrees",
        None,
        labelled(check_g_and_bidegrees(&an)?),
        String::new(),
    );
    let w1 = Window {
        u_max: window.u_max + n,
        s_max: window.s_max,
    };
    b.push(
        "symbolic_comparison",
        Some(w1),
        check_symbolic_comparison(&an, w1)?,
        String::new(),
    );
    Ok(VerifyReport {
        prime,
        checks: b.checks,
    })
}

//! Closed-form invariants of `I`, its powers and its fiber ring: regularity, Betti tables,
//! Hilbert functions, reduction number, depths and postulation number.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scroll::{binomial, Piece, ScrollStructure};

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Shape of the minimal resolution `0 -> R(-(sd+1))^b + F -> R(-sd)^b0 -> I^s -> 0` where
/// `F` has rank `a`. Twists are recorded as positive degrees: `R(-t)` is stored as `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BettiTable {
    pub s: u32,
    /// Degree of the generators, `s d`.
    pub generator_degree: i64,
    pub a: u32,
    pub b: u32,
    pub b0: u32,
    /// Degrees of the `a` summands of `F`, non-increasing.
    pub twists: Vec<i64>,
}

impl BettiTable {
    /// All syzygy degrees, `b` copies of `sd + 1` together with `twists`, sorted ascending.
    pub fn all_twists(&self) -> Vec<i64> {
        let mut out = vec![self.generator_degree + 1; self.b as usize];
        out.extend(self.twists.iter().copied());
        out.sort_unstable();
        out
    }

    /// Castelnuovo-Mumford regularity: largest syzygy degree minus one.
    pub fn regularity(&self) -> i64 {
        self.all_twists().last().map_or(self.generator_degree, |t| t - 1)
    }
}

/// `reg I^s = max{sd, sd - (s-1) tau + n - 1}` with `d = n + sigma + tau`.
pub fn regularity_power(s: u32, sigma: usize, tau: usize, n: u32) -> Result<i64> {
    if s < 1 {
        return Err(Error::InvalidParameter("the power s must be at least 1".into()));
    }
    let (s, tau, n) = (s as i64, tau as i64, n as i64);
    let sd = s * (n + sigma as i64 + tau);
    Ok(sd.max(sd - (s - 1) * tau + n - 1))
}

/// Number `a` of summands of `F` in the resolution of `I^s`.
pub fn nonlinear_rank(s: u32, sigma: usize, tau: usize, n: u32) -> u32 {
    let (s, s1, s2, n) = (s as i64, sigma as i64, tau as i64, n as i64);
    let a = if s2 == 0 {
        s.min(ceil_div(n - 1, s1))
    } else if (s - 1) * s2 > n - 2 {
        0
    } else if s1 == s2 {
        s
    } else {
        s.min(ceil_div(n - (s - 1) * s2 - 1, s1 - s2))
    };
    a as u32
}

/// The Betti table of `I^s` in closed form.
pub fn betti_table(s: u32, sigma: usize, tau: usize, n: u32) -> Result<BettiTable> {
    if s < 1 {
        return Err(Error::InvalidParameter("the power s must be at least 1".into()));
    }
    let a = nonlinear_rank(s, sigma, tau, n);
    let (si, s1, s2, ni, ai) = (s as i64, sigma as i64, tau as i64, n as i64, a as i64);
    let d = ni + s1 + s2;
    let sd = si * d;
    let twists: Vec<i64> = (0..ai).map(|u| sd - u * (s1 - s2) - (si - 1) * s2 + ni).collect();
    let b = sd + binomial(ai, 2) * (s1 - s2) + (si - 1) * s2 * ai - ni * ai;
    if b < 0 {
        return Err(Error::HypothesisViolated(format!("negative linear syzygy count {b}")));
    }
    Ok(BettiTable {
        s,
        generator_degree: sd,
        a,
        b: b as u32,
        b0: (b + ai + 1) as u32,
        twists,
    })
}

/// `lambda(I^s_z) = lambda((S/H)_(z-sd, s)) - sum_a lambda((E_a/D_a)_(z-sd, s-1))`.
pub fn hilbert_power(s: u32, z: i64, scroll: &ScrollStructure) -> Result<i64> {
    if s < 1 {
        return Err(Error::InvalidParameter("the power s must be at least 1".into()));
    }
    let s = s as i64;
    let u = z - s * scroll.d() as i64;
    if u < 0 {
        return Ok(0);
    }
    let mut total = scroll.piece_length(Piece::Quotient, u, s)?;
    for t in scroll.eligible_tuples() {
        total -= scroll.piece_length(Piece::Factor(&t), u, s - 1)?;
    }
    Ok(total)
}

/// Fits `0 -> sum R(-t_i) -> R(-D)^b0 -> M -> 0` to a Hilbert function, peeling syzygy
/// degrees from `D + 1` up to `D + bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittedResolution {
    pub generator_degree: i64,
    pub b0: u32,
    /// Syzygy degrees, ascending.
    pub twists: Vec<i64>,
}

impl FittedResolution {
    pub fn regularity(&self) -> i64 {
        self.twists.last().map_or(self.generator_degree, |t| t - 1)
    }
}

pub fn fit_resolution<H>(mut hilbert: H, generator_degree: i64, bound: i64) -> Result<FittedResolution>
where
    H: FnMut(i64) -> Result<i64>,
{
    let dd = generator_degree;
    let h0 = hilbert(dd)?;
    if h0 < 0 || hilbert(dd - 1)? != 0 {
        return Err(Error::NoFit(format!("module is not generated in degree {dd}")));
    }
    let b0 = h0;
    let mut twists: Vec<i64> = Vec::new();
    for z in dd + 1..=dd + bound {
        let predicted = b0 * (z - dd + 1) - twists.iter().map(|&t| (z - t + 1).max(0)).sum::<i64>();
        let deficit = predicted - hilbert(z)?;
        if deficit < 0 {
            return Err(Error::NoFit(format!(
                "Hilbert function exceeds the fitted value at degree {z}"
            )));
        }
        twists.extend(core::iter::repeat_n(z, deficit as usize));
    }
    if twists.len() as i64 > b0 {
        return Err(Error::NoFit(format!("{} syzygies for {b0} generators", twists.len())));
    }
    Ok(FittedResolution {
        generator_degree: dd,
        b0: b0 as u32,
        twists,
    })
}

/// `sigma_1 ceil(n/sigma_1) - n + 1 + #{(i,j,k)}`: the value `H_{K^(n)v}(ceil(n/sigma_1))`.
pub fn symbolic_fiber_count(sigma: usize, tau: usize, n: u32) -> i64 {
    let (s1, s2, n) = (sigma as i64, tau as i64, n as i64);
    let c = ceil_div(n, s1);
    let mut count = s1 * c - n + 1;
    if s2 > 0 {
        for i in 0..c {
            let j = c - 1 - i;
            if s1 * i + s2 * j < n {
                count += (s1 * i + s2 * (j + 1) + 1 - n).max(0);
            }
        }
    }
    count
}

/// The reduction number and the evidence it was chosen on.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReductionNumber {
    pub value: i64,
    pub lower: i64,
    pub upper: i64,
    /// `H_{K^(n)v}(ceil(n/sigma_1))` and the threshold `m - 2`, when `rho = 2`.
    pub hilbert_value: Option<i64>,
    pub threshold: Option<i64>,
}

pub fn reduction_number(sigma: usize, tau: usize, n: u32) -> ReductionNumber {
    let (s1, ni) = (sigma as i64, n as i64);
    let lower = ceil_div(ni, s1);
    let upper = ceil_div(ni - 1, s1) + 1;
    if tau == 0 {
        return ReductionNumber {
            value: upper,
            lower,
            upper,
            hilbert_value: None,
            threshold: None,
        };
    }
    let h = symbolic_fiber_count(sigma, tau, n);
    let threshold = (sigma + tau) as i64;
    ReductionNumber {
        value: if h >= threshold { lower } else { upper },
        lower,
        upper,
        hilbert_value: Some(h),
        threshold: Some(threshold),
    }
}

/// Depths and regularity of the blowup rings.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DepthReport {
    pub depth_rees: u32,
    pub depth_fiber: u32,
    pub depth_associated_graded: u32,
    pub reg_fiber: i64,
    pub fiber_cohen_macaulay: bool,
}

pub fn depth_and_fiber_report(sigma: usize, tau: usize, n: u32) -> DepthReport {
    let depth = if tau == 0 { 2 } else { 1 };
    let last = if tau == 0 { sigma } else { tau } as i64;
    DepthReport {
        depth_rees: depth,
        depth_fiber: depth,
        depth_associated_graded: depth - 1,
        reg_fiber: ceil_div(n as i64 - 1, last) + 1,
        fiber_cohen_macaulay: tau == 0,
    }
}

/// Postulation number of the fiber ring.
pub fn postulation(sigma: usize, tau: usize, n: u32) -> i64 {
    let n = n as i64;
    if tau == 0 {
        ceil_div(n - 1, sigma as i64) - 1
    } else {
        ceil_div(n - 1, tau as i64)
    }
}

/// `H_F(s) = b0(s)` for `s >= 1`, `1` at `s = 0`.
pub fn fiber_hilbert(s: u32, sigma: usize, tau: usize, n: u32) -> Result<i64> {
    if s == 0 {
        return Ok(1);
    }
    Ok(betti_table(s, sigma, tau, n)?.b0 as i64)
}

/// The Hilbert polynomial of the fiber ring, evaluated at `s`.
pub fn fiber_hilbert_polynomial(s: i64, sigma: usize, tau: usize, n: u32) -> i64 {
    let (s1, ni) = (sigma as i64, n as i64);
    let d = ni + s1 + tau as i64;
    if tau == 0 {
        let a = ceil_div(ni - 1, s1);
        s * d + binomial(a, 2) * s1 - a * ni + a + 1
    } else {
        s * d + 1
    }
}

/// `reg I^s` for `s = 1..=values.len()`, with the formula that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegularitySeries {
    pub formula: String,
    pub values: Vec<i64>,
}

/// Everything above for one shape `(sigma, tau, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InvariantReport {
    pub rho: u32,
    pub sigma: Vec<usize>,
    pub m: usize,
    pub n: u32,
    pub d: u32,
    pub reg: RegularitySeries,
    /// Betti tables of `I^s` for `s = 1..=reg.values.len()`.
    pub betti: Vec<BettiTable>,
    #[cfg_attr(feature = "serde", serde(rename = "r_I"))]
    pub reduction_number: ReductionNumber,
    pub depths: DepthReport,
    pub postulation: i64,
}

pub fn invariant_report(sigma: usize, tau: usize, n: u32, max_power: u32) -> Result<InvariantReport> {
    let values = (1..=max_power)
        .map(|s| regularity_power(s, sigma, tau, n))
        .collect::<Result<Vec<_>>>()?;
    let betti = (1..=max_power)
        .map(|s| betti_table(s, sigma, tau, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantReport {
        rho: if tau == 0 { 1 } else { 2 },
        sigma: if tau == 0 { vec![sigma] } else { vec![sigma, tau] },
        m: sigma + tau + 2,
        n,
        d: n + (sigma + tau) as u32,
        reg: RegularitySeries {
            formula: "max(sd, sd-(s-1)tau+n-1)".into(),
            values,
        },
        betti,
        reduction_number: reduction_number(sigma, tau, n),
        depths: depth_and_fiber_report(sigma, tau, n),
        postulation: postulation(sigma, tau, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn regularity_examples() {
        for s in 1..6 {
            for (sig, n) in [(1usize, 2u32), (3, 4), (2, 5)] {
                let d = n as i64 + sig as i64;
                assert_eq!(regularity_power(s, sig, 0, n).unwrap(), s as i64 * d + n as i64 - 1);
            }
        }
        assert_eq!(regularity_power(2, 1, 1, 2).unwrap(), 8);
        assert_eq!(regularity_power(1, 2, 1, 3).unwrap(), 6 + 2);
        assert!(regularity_power(0, 1, 1, 2).is_err());
    }

    #[test]
    fn first_power_matches_input_resolution() {
        for (s1, s2) in [(1, 0), (2, 0), (1, 1), (2, 1), (3, 1), (2, 2)] {
            for n in 2..6 {
                let m = s1 + s2 + 2;
                let t = betti_table(1, s1, s2, n).unwrap();
                let d = (n as usize + m - 2) as i64;
                assert_eq!((t.a, t.b, t.b0), (1, (m - 2) as u32, m as u32));
                assert_eq!(t.twists, vec![d + n as i64]);
            }
        }
    }

    #[test]
    fn betti_examples() {
        let t = betti_table(1, 1, 1, 2).unwrap();
        assert_eq!((t.a, t.b, t.b0, t.twists.clone()), (1, 2, 4, vec![6]));
        let t = betti_table(2, 1, 1, 2).unwrap();
        assert_eq!((t.a, t.b, t.b0), (0, 8, 9));
        assert!(t.twists.is_empty());
    }

    #[test]
    fn betti_identities() {
        for s1 in 1..7usize {
            for s2 in 0..=s1 {
                if s1 + s2 + 2 > 8 {
                    continue;
                }
                for n in 2..=6 {
                    let mut prev = i64::MAX;
                    for s in 1..=6 {
                        let t = betti_table(s, s1, s2, n).unwrap();
                        assert_eq!(t.b0, t.b + t.a + 1);
                        let sd = t.generator_degree;
                        assert!(t.twists.iter().all(|&x| x > sd));
                        let reg = regularity_power(s, s1, s2, n).unwrap();
                        assert_eq!(t.regularity(), reg, "s={s} sigma=({s1},{s2}) n={n}");
                        assert!(reg - sd <= prev);
                        prev = reg - sd;
                    }
                }
            }
        }
    }

    #[test]
    fn fit_square_of_maximal_ideal() {
        let h = |z: i64| Ok(if z < 2 { 0 } else { z + 1 });
        let fit = fit_resolution(h, 2, 6).unwrap();
        assert_eq!((fit.b0, fit.twists.clone()), (3, vec![3, 3]));
        let bad = |z: i64| {
            Ok(if z < 2 {
                0
            } else if z == 3 {
                7
            } else {
                z + 1
            })
        };
        assert!(fit_resolution(bad, 2, 4).is_err());
    }

    #[test]
    fn hilbert_power_small() {
        for (m, sigma) in [(3usize, vec![1usize]), (4, vec![1, 1]), (5, vec![2, 1])] {
            for n in 2..5 {
                let st = ScrollStructure::new(Field::Prime(32003), m, n, &sigma).unwrap();
                let d = st.d() as i64;
                assert_eq!(hilbert_power(1, d, &st).unwrap(), m as i64);
                assert_eq!(hilbert_power(2, 2 * d - 1, &st).unwrap(), 0);
            }
        }
    }

    #[test]
    fn reduction_and_depths() {
        for n in 2..8 {
            assert_eq!(reduction_number(1, 0, n).value, n as i64);
        }
        assert_eq!(reduction_number(1, 1, 2).value, 2);
        for s1 in 1..5 {
            for s2 in 1..=s1 {
                for n in 2..9u32 {
                    let r = reduction_number(s1, s2, n);
                    assert!(r.lower <= r.value && r.value <= r.upper);
                    if (n as usize - 1).is_multiple_of(s1) {
                        assert_eq!(r.value, r.lower);
                    }
                }
            }
        }
        let d = depth_and_fiber_report(3, 0, 4);
        assert_eq!(
            (
                d.depth_rees,
                d.depth_fiber,
                d.depth_associated_graded,
                d.fiber_cohen_macaulay
            ),
            (2, 2, 1, true)
        );
        let d = depth_and_fiber_report(2, 1, 3);
        assert_eq!(
            (
                d.depth_rees,
                d.depth_fiber,
                d.depth_associated_graded,
                d.fiber_cohen_macaulay
            ),
            (1, 1, 0, false)
        );
        assert_eq!(d.reg_fiber, 3);
    }

    #[test]
    fn postulation_matches_hilbert_polynomial() {
        assert_eq!(postulation(1, 1, 2), 1);
        assert_eq!(postulation(1, 0, 3), 1);
        for s1 in 1..5usize {
            for s2 in 0..=s1 {
                for n in 2..7u32 {
                    let p = postulation(s1, s2, n);
                    for s in p + 1..p + 6 {
                        assert_eq!(
                            fiber_hilbert(s as u32, s1, s2, n).unwrap(),
                            fiber_hilbert_polynomial(s, s1, s2, n)
                        );
                    }
                    assert_ne!(
                        fiber_hilbert(p as u32, s1, s2, n).unwrap(),
                        fiber_hilbert_polynomial(p, s1, s2, n)
                    );
                }
            }
        }
    }
}

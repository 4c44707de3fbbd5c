//! Worked instances with known answers: the monomial family, small scrolls, and the
//! closed-form invariants at small parameters.

use scroll_rees::algebra::{parse_poly, BiPoly, Field};
use scroll_rees::analysis::Analysis;
use scroll_rees::invariants::{
    betti_table, depth_and_fiber_report, fiber_hilbert, fit_resolution, postulation, reduction_number, regularity_power,
};
use scroll_rees::oracle::{fiber_hilbert_brute, kernel_membership, power_dim};
use scroll_rees::presentation::{build_from_pair, monomial_example, monomial_presentation, PresentationData};
use scroll_rees::rees::{fiber_equations, GeneratorKind};
use scroll_rees::Error;

const F: Field = Field::Prime(32003);

fn xy(s: &str) -> BiPoly {
    parse_poly(s, F, 0).unwrap()
}

fn sorted(mut v: Vec<BiPoly>) -> Vec<String> {
    let mut out: Vec<String> = v.drain(..).map(|p| p.to_string()).collect();
    out.sort();
    out
}

#[test]
fn monomial_family_generators() {
    assert_eq!(
        sorted(monomial_example(F, 2, 1, 1).unwrap()),
        sorted(vec![xy("y^4"), xy("x*y^3"), xy("x^3*y"), xy("x^4")])
    );
    assert_eq!(
        sorted(monomial_example(F, 2, 1, 0).unwrap()),
        sorted(vec![xy("y^3"), xy("x^2*y"), xy("x^3")])
    );
    for (n, s, t) in [(2, 2, 1), (3, 2, 2), (4, 3, 0)] {
        assert_eq!(monomial_example(F, n, s, t).unwrap().len(), s + t + 2);
    }
}

#[test]
fn monomial_presentation_has_monomial_minors() {
    let pd = build_from_pair(F, 1, 1, &xy("y^3"), &xy("x^3")).unwrap();
    let expected = sorted(vec![xy("y^4"), xy("x*y^3"), xy("x^3*y"), xy("x^4")]);
    let mut got: Vec<BiPoly> = pd
        .minors()
        .iter()
        .map(|m| {
            let (_, c) = m.leading().unwrap();
            m.scale(&c.inv().unwrap())
        })
        .collect();
    got.sort_by_key(|p| p.to_string());
    assert_eq!(sorted(got), expected);
    assert_eq!(pd.matrix()[0][2], xy("y^2"));
    assert_eq!(pd.matrix()[3][2], xy("x^2"));
}

#[test]
fn common_factor_is_rejected() {
    let e = build_from_pair(F, 1, 1, &xy("x^3"), &xy("x^3")).unwrap_err();
    assert!(matches!(e, Error::CommonFactor(_)), "{e:?}");
}

#[test]
fn zero_last_column_is_rejected() {
    let rows = vec![
        vec!["x", "0", "0"],
        vec!["-y", "0", "0"],
        vec!["0", "x", "0"],
        vec!["0", "-y", "0"],
    ];
    let e = PresentationData::from_strings(F, &rows).unwrap_err();
    assert!(matches!(e, Error::HeightNotTwo(_)), "{e:?}");
}

#[test]
fn square_of_the_monomial_ideal_is_a_power_of_the_maximal_ideal() {
    let pd = monomial_presentation(F, 2, 1, 1).unwrap();
    assert_eq!(power_dim(&pd, 2, 8).unwrap(), 9);
    assert_eq!(power_dim(&pd, 2, 7).unwrap(), 0);
    assert_eq!(power_dim(&pd, 1, pd.d()).unwrap(), 4);
    let t = betti_table(2, 1, 1, 2).unwrap();
    assert_eq!((t.a, t.b, t.b0), (0, 8, 9));
    let first = betti_table(1, 1, 1, 2).unwrap();
    assert_eq!((first.a, first.b, first.b0, first.twists.clone()), (1, 2, 4, vec![6]));
}

#[test]
fn regularity_values() {
    assert_eq!(regularity_power(2, 1, 1, 2).unwrap(), 8);
    for s in 1..5 {
        assert_eq!(regularity_power(s, 3, 0, 4).unwrap(), s as i64 * 7 + 3);
    }
    for (sig, tau, n) in [(1, 1, 2), (2, 1, 3), (3, 2, 4)] {
        let d = n as i64 + sig as i64 + tau as i64;
        assert_eq!(regularity_power(1, sig, tau, n).unwrap(), d + n as i64 - 1);
    }
}

#[test]
fn blowup_invariants() {
    assert_eq!(reduction_number(1, 0, 5).value, 5);
    assert_eq!(reduction_number(1, 1, 2).value, 2);
    let one = depth_and_fiber_report(2, 0, 3);
    assert_eq!(
        (one.depth_rees, one.depth_fiber, one.depth_associated_graded),
        (2, 2, 1)
    );
    assert!(one.fiber_cohen_macaulay);
    let two = depth_and_fiber_report(2, 1, 3);
    assert_eq!(
        (two.depth_rees, two.depth_fiber, two.depth_associated_graded),
        (1, 1, 0)
    );
    assert!(!two.fiber_cohen_macaulay);
    assert_eq!(two.reg_fiber, 3);
    assert_eq!(postulation(1, 1, 2), 1);
    assert_eq!(postulation(1, 0, 3), 1);
}

#[test]
fn fitted_resolution_of_the_square_of_the_maximal_ideal() {
    let fit = fit_resolution(|z| Ok(if z >= 2 { z + 1 } else { 0 }), 2, 8).unwrap();
    assert_eq!((fit.b0, fit.twists), (3, vec![3, 3]));
}

#[test]
fn plane_curve_has_one_implicit_equation_of_degree_d() {
    for n in 2..=4 {
        let an = Analysis::new(monomial_presentation(F, n, 1, 0).unwrap()).unwrap();
        let eqs = an.input_fiber_equations().unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].poly.bidegree().unwrap(), (0, an.d()));
        assert!(kernel_membership(&eqs[0].poly, an.input.minors()).unwrap());
    }
}

#[test]
fn two_by_two_scroll_generator_count() {
    let an = Analysis::new(monomial_presentation(F, 2, 1, 1).unwrap()).unwrap();
    assert_eq!(an.rees.minors().count(), 3);
    assert_eq!(an.rees.tuple_generators().count(), 6);
    let kinds: Vec<GeneratorKind> = an.rees.tuple_generators().map(|g| g.kind).collect();
    assert_eq!(kinds.iter().filter(|k| **k == GeneratorKind::F).count(), 1);
    assert_eq!(kinds.iter().filter(|k| **k == GeneratorKind::G).count(), 2);
    assert_eq!(kinds.iter().filter(|k| **k == GeneratorKind::H).count(), 3);
    for g in an.input_generators().unwrap() {
        assert!(kernel_membership(&g.poly, an.input.minors()).unwrap(), "{}", g.label);
    }
    assert!(!kernel_membership(&parse_poly("T1", F, 4).unwrap(), an.input.minors()).unwrap());
}

#[test]
fn one_block_fibers_carry_no_g_generators() {
    let an = Analysis::new(monomial_presentation(F, 3, 2, 0).unwrap()).unwrap();
    assert!(fiber_equations(&an.rees).iter().all(|g| g.kind != GeneratorKind::G));
}

#[test]
fn fiber_hilbert_of_monomial_instances() {
    for (s, t, n) in [(1, 1, 2), (2, 0, 3), (2, 1, 3)] {
        let an = Analysis::new(monomial_presentation(F, n, s, t).unwrap()).unwrap();
        let eqs: Vec<BiPoly> = fiber_equations(&an.rees).into_iter().map(|g| g.poly).collect();
        assert_eq!(fiber_hilbert_brute(&eqs, an.m(), 0).unwrap(), 1);
        assert_eq!(fiber_hilbert_brute(&eqs, an.m(), 1).unwrap(), an.m() as u64);
        for k in 0..=postulation(s, t, n) as u32 + 5 {
            assert_eq!(
                fiber_hilbert_brute(&eqs, an.m(), k).unwrap() as i64,
                fiber_hilbert(k, s, t, n).unwrap()
            );
        }
    }
}

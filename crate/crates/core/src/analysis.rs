//! One-stop pipeline: canonical form, scroll, Rees generators, and the change of
//! coordinates back to the generators of the input ideal.

use alloc::vec::Vec;

use crate::algebra::field::Field;
use crate::algebra::matrix::DenseMatrix;
use crate::algebra::poly::BiPoly;
use crate::error::{Error, Result};
use crate::presentation::{canonical_presentation, CanonicalPresentation, PresentationData};
use crate::rees::{extract_c, fiber_equations, rees_ideal, ReesGenerator, ReesGenerators};
use crate::scroll::ScrollStructure;

/// Everything derived from one presentation.
///
/// The Rees generators live in the coordinates `T'` of the canonical presentation
/// `W phi diag(Y, 1)`; [`Analysis::to_input`] rewrites them in the variables `T_i` attached
/// to the minors of the input matrix.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub input: PresentationData,
    pub canonical: CanonicalPresentation,
    pub scroll: ScrollStructure,
    pub rees: ReesGenerators,
    back: Vec<Option<BiPoly>>,
}

impl Analysis {
    pub fn new(input: PresentationData) -> Result<Self> {
        let canonical = canonical_presentation(&input)?;
        let field = input.field();
        let m = input.m();
        let scroll = ScrollStructure::build(field, &canonical.form, m, input.n())?;
        let c = extract_c(&canonical.data)?;
        let rees = rees_ideal(&scroll, &c)?;
        let winv = canonical
            .row_change
            .inverse()
            .ok_or_else(|| Error::HypothesisViolated("row change is singular".into()))?;
        let back = back_substitution(field, m, &winv);
        Ok(Analysis {
            input,
            canonical,
            scroll,
            rees,
            back,
        })
    }

    pub fn field(&self) -> Field {
        self.input.field()
    }

    pub fn m(&self) -> usize {
        self.input.m()
    }

    pub fn n(&self) -> u32 {
        self.input.n()
    }

    pub fn d(&self) -> u32 {
        self.input.d()
    }

    pub fn rho(&self) -> usize {
        self.scroll.rho()
    }

    pub fn sigma(&self) -> usize {
        self.canonical.form.sigma
    }

    pub fn tau(&self) -> usize {
        self.canonical.form.tau
    }

    /// Rewrites a polynomial in canonical coordinates `T'_j` via `T'_j -> sum_i (W^-1)_{ij} T_i`.
    pub fn to_input(&self, p: &BiPoly) -> Result<BiPoly> {
        p.substitute(&self.back, self.m())
    }

    fn relabel(&self, gens: impl Iterator<Item = ReesGenerator>) -> Result<Vec<ReesGenerator>> {
        gens.map(|mut g| {
            g.poly = self.to_input(&g.poly)?;
            Ok(g)
        })
        .collect()
    }

    /// Generators of the Rees ideal in the variables of the input.
    pub fn input_generators(&self) -> Result<Vec<ReesGenerator>> {
        self.relabel(self.rees.generators.iter().cloned())
    }

    /// Implicit equations of the curve in the variables of the input.
    pub fn input_fiber_equations(&self) -> Result<Vec<ReesGenerator>> {
        self.relabel(fiber_equations(&self.rees).into_iter())
    }
}

fn back_substitution(field: Field, m: usize, winv: &DenseMatrix) -> Vec<Option<BiPoly>> {
    let mut images = alloc::vec![None; m + 2];
    images[0] = Some(BiPoly::x(field, m));
    images[1] = Some(BiPoly::y(field, m));
    for j in 0..m {
        let mut img = BiPoly::zero(field, m);
        for i in 0..m {
            let c = winv.get(i, j);
            if !c.is_zero() {
                img = &img + &BiPoly::t(field, m, i + 1).scale(c);
            }
        }
        images[j + 2] = Some(img);
    }
    images
}

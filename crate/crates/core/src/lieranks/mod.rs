//! Truncated Magnus expansions and the graded ranks of the rational lower
//! central series, the holonomy (quadratic) model, and maps between
//! truncated Malcev Lie algebras.

mod malcev;
mod quotient;
mod series;

use serde::Serialize;
use thiserror::Error;

pub use malcev::{
    commutator_image_check, malcev_map, strictness_check, strictness_of, CommutatorImageReport,
    FilteredLieBasis, LieElement, MalcevMap, StrictnessLevel, StrictnessReport,
};
pub use quotient::{Budget, BudgetExceeded, GradedRanks, QuotientAlgebra};
pub use series::{degree_offset, magnus_expansion, Monomial, TruncatedSeries};

use crate::linalg::{field, Matrix};
use crate::presentation::{HomError, Presentation};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("degree bound {given} is too small; at least {required} is needed")]
    DegreeTooSmall { given: usize, required: usize },
}

/// Ranks of `γ_n/γ_{n+1} ⊗ Q` for `n = 1..=d`.
pub fn lcs_ranks(p: &Presentation, d: usize, budget: Budget) -> Result<GradedRanks, BudgetExceeded> {
    Ok(QuotientAlgebra::<Rational>::new(p, d, budget)?.lie_ranks())
}

/// The quadratic relations: kernel of the bracket `Λ²H₁ → gr_2`, as
/// coefficient vectors over the pairs `(p, q)`, `p < q`, of a basis of `H₁ ⊗ Q`.
fn quadratic_relations(algebra: &QuotientAlgebra<Rational>) -> (usize, Vec<Vec<Rational>>) {
    let basis = algebra.degree_one_generators();
    let b = basis.len();
    let (g, d) = (algebra.ngens(), algebra.degree());
    let mut residues = Vec::new();
    for p in 0..b {
        for q in p + 1..b {
            let x = TruncatedSeries::generator(g, d, basis[p]);
            let y = TruncatedSeries::generator(g, d, basis[q]);
            residues.push(algebra.reduce_homogeneous(2, &x.bracket(&y)));
        }
    }
    let mut cols: Vec<usize> = residues.iter().flatten().map(|(c, _)| *c).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut m = Matrix::zeros(cols.len(), residues.len());
    for (j, r) in residues.iter().enumerate() {
        for (c, x) in r {
            m[(cols.binary_search(c).expect("collected"), j)] = x.clone();
        }
    }
    (b, field::nullspace(&m))
}

/// Ranks of the holonomy Lie algebra: the free Lie algebra on `H₁ ⊗ Q`
/// modulo the quadratic relations dual to the cup product.
pub fn holonomy_ranks(p: &Presentation, d: usize, budget: Budget) -> Result<GradedRanks, BudgetExceeded> {
    let algebra = QuotientAlgebra::<Rational>::new(p, d.max(2), budget)?;
    let (b, relations) = quadratic_relations(&algebra);
    let rhos: Vec<TruncatedSeries<Rational>> = relations
        .iter()
        .map(|lambda| {
            let mut rho = TruncatedSeries::zero(b, d);
            let mut k = 0;
            for p in 0..b {
                for q in p + 1..b {
                    let x = TruncatedSeries::generator(b, d, p);
                    let y = TruncatedSeries::generator(b, d, q);
                    rho = rho.add(&x.bracket(&y).scale(&lambda[k]));
                    k += 1;
                }
            }
            rho
        })
        .collect();
    Ok(QuotientAlgebra::from_ideal(b, d, &rhos, budget)?.lie_ranks())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityReport {
    pub lcs: GradedRanks,
    pub holonomy: GradedRanks,
    /// First degree where the two disagree.
    pub witness_degree: Option<usize>,
}

impl FormalityReport {
    pub fn not_quadratic(&self) -> bool {
        self.witness_degree.is_some()
    }
}

/// Compares lower central series ranks with holonomy ranks up to degree `d`.
/// A mismatch shows the Malcev Lie algebra is not quadratically presented.
pub fn formality_test(p: &Presentation, d: usize, budget: Budget) -> Result<FormalityReport, LieError> {
    if d < 3 {
        return Err(LieError::DegreeTooSmall { given: d, required: 3 });
    }
    let lcs = lcs_ranks(p, d, budget)?;
    let holonomy = holonomy_ranks(p, d, budget)?;
    let witness_degree = (1..=d).find(|&n| lcs.get(n) != holonomy.get(n));
    Ok(FormalityReport {
        lcs,
        holonomy,
        witness_degree,
    })
}

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Presentation, Word};
use crate::lieranks::{Budget, BudgetExceeded, QuotientAlgebra};
use crate::linalg::solve_integer;
use crate::surface::dehn_reduce;
use crate::IntMatrix;

/// The strongest check that every source relator maps to the identity.
///
/// Ordered from weakest to strongest; `NilpotentQuotient(c)` grows with `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Unverified,
    /// Relator images vanish in the target's abelianization (over Z).
    Abelianization,
    /// Relator images also vanish in the rational class-`c` nilpotent
    /// quotient of the target.
    NilpotentQuotient(usize),
    /// Relator images are the identity, decided by a word-problem algorithm.
    Exact,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verification::Unverified => write!(f, "unverified"),
            Verification::Abelianization => write!(f, "verified-in-abelianization"),
            Verification::NilpotentQuotient(c) => write!(f, "verified-in-nilpotent-quotient(class {c})"),
            Verification::Exact => write!(f, "verified-exactly"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("{given} images given for {expected} source generators")]
    ImageCount { given: usize, expected: usize },
    #[error("image of generator {gen} uses a generator outside the target")]
    BadImage { gen: usize },
    #[error("relator {relator} ({word}) does not map to the identity at level {level}")]
    RelatorNotTrivial {
        relator: usize,
        word: String,
        level: Verification,
    },
    #[error("target `{0}` has no supported word-problem algorithm")]
    ExactUnsupported(String),
    #[error("cannot compose: `{outer}` starts at `{outer_source}` but `{inner}` ends at `{inner_target}`")]
    Mismatch {
        outer: String,
        outer_source: String,
        inner: String,
        inner_target: String,
    },
    #[error("homomorphism `{name}` is {actual}; {required} is required")]
    InsufficientVerification {
        name: String,
        actual: Verification,
        required: Verification,
    },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A homomorphism given by generator images, together with a record of how
/// far its validity has been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    name: String,
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
    verification: Verification,
}

impl GroupHom {
    pub fn new(
        name: impl Into<String>,
        source: Presentation,
        target: Presentation,
        images: Vec<Word>,
    ) -> Result<Self, HomError> {
        if images.len() != source.ngens() {
            return Err(HomError::ImageCount {
                given: images.len(),
                expected: source.ngens(),
            });
        }
        if let Some(gen) = images
            .iter()
            .position(|w| w.max_generator().is_some_and(|g| g >= target.ngens()))
        {
            return Err(HomError::BadImage { gen });
        }
        Ok(GroupHom {
            name: name.into(),
            source,
            target,
            images,
            verification: Verification::Unverified,
        })
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = (0..p.ngens()).map(Word::generator).collect();
        GroupHom::new(format!("id_{}", p.name()), p.clone(), p.clone(), images).expect("identity is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    /// Image of a source word.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self ∘ inner`. The result is unverified.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, HomError> {
        if inner.target != self.source {
            return Err(HomError::Mismatch {
                outer: self.name.clone(),
                outer_source: self.source.name().to_string(),
                inner: inner.name.clone(),
                inner_target: inner.target.name().to_string(),
            });
        }
        let images = inner.images.iter().map(|w| self.apply(w)).collect();
        GroupHom::new(
            format!("{}.{}", self.name, inner.name),
            inner.source.clone(),
            self.target.clone(),
            images,
        )
    }

    /// Source generators × target generators matrix of image exponent sums:
    /// the induced map on abelianizations, acting on row vectors.
    pub fn abelianized_matrix(&self) -> IntMatrix {
        let n = self.target.ngens();
        let rows: Vec<Vec<BigInt>> = self
            .images
            .iter()
            .map(|w| w.exponent_sums(n).into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_rows(n, &rows)
    }

    pub fn require(&self, required: Verification) -> Result<(), HomError> {
        if self.verification >= required {
            Ok(())
        } else {
            Err(HomError::InsufficientVerification {
                name: self.name.clone(),
                actual: self.verification,
                required,
            })
        }
    }
}

/// Word-problem algorithms available for a target presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordProblem {
    /// No relators: free reduction decides.
    Free,
    /// Exactly the commutators of all generator pairs: exponent sums decide.
    FreeAbelian,
    /// The standard genus-`g` surface relator, `g ≥ 2`: Dehn's algorithm.
    Surface { genus: usize },
}

impl WordProblem {
    pub fn detect(p: &Presentation) -> Option<Self> {
        let rels: Vec<&Word> = p.relators().iter().filter(|r| !r.is_empty()).collect();
        let n = p.ngens();
        if rels.is_empty() {
            return Some(WordProblem::Free);
        }
        let mut pairs = vec![false; n * n];
        let all_commutators = rels.iter().all(|r| match r.as_commutator() {
            Some((a, b)) => {
                let (i, j) = (a.gen.min(b.gen), a.gen.max(b.gen));
                pairs[i * n + j] = true;
                true
            }
            None => false,
        });
        if all_commutators && (0..n).all(|i| (i + 1..n).all(|j| pairs[i * n + j])) {
            return Some(WordProblem::FreeAbelian);
        }
        if n >= 4 && n % 2 == 0 && rels.len() == 1 {
            let genus = n / 2;
            if rels[0].is_cyclic_conjugate_of(&crate::surface::surface_relator(genus)) {
                return Some(WordProblem::Surface { genus });
            }
        }
        None
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        match *self {
            WordProblem::Free => w.is_empty(),
            WordProblem::FreeAbelian => {
                let n = w.max_generator().map_or(0, |g| g + 1);
                w.exponent_sums(n).iter().all(|&e| e == 0)
            }
            WordProblem::Surface { genus } => dehn_reduce(genus, w).is_empty(),
        }
    }
}

/// Checks that every source relator maps to the identity at `level` and
/// returns the homomorphism annotated with the strongest level now known.
pub fn verify_hom(h: &GroupHom, level: Verification) -> Result<GroupHom, HomError> {
    verify_hom_with_budget(h, level, Budget::default())
}

pub fn verify_hom_with_budget(h: &GroupHom, level: Verification, budget: Budget) -> Result<GroupHom, HomError> {
    let fail = |relator: usize, level: Verification| HomError::RelatorNotTrivial {
        relator,
        word: h.source.display_word(&h.source.relators()[relator]).to_string(),
        level,
    };
    let images: Vec<Word> = h.source.relators().iter().map(|r| h.apply(r)).collect();

    match level {
        Verification::Unverified => {}
        Verification::Abelianization | Verification::NilpotentQuotient(_) => {
            let tgt = h.target.exponent_matrix().transpose();
            let n = h.target.ngens();
            for (j, w) in images.iter().enumerate() {
                let e: Vec<BigInt> = w.exponent_sums(n).into_iter().map(BigInt::from).collect();
                if solve_integer(&tgt, &e).is_none() {
                    return Err(fail(j, Verification::Abelianization));
                }
            }
            if let Verification::NilpotentQuotient(class) = level {
                let algebra = QuotientAlgebra::<crate::Rational>::new(&h.target, class.max(1), budget)?;
                for (j, w) in images.iter().enumerate() {
                    if !algebra.is_trivial_word(w) {
                        return Err(fail(j, level));
                    }
                }
            }
        }
        Verification::Exact => {
            let wp = WordProblem::detect(&h.target)
                .ok_or_else(|| HomError::ExactUnsupported(h.target.name().to_string()))?;
            for (j, w) in images.iter().enumerate() {
                if !wp.is_trivial(w) {
                    return Err(fail(j, level));
                }
            }
        }
    }
    let mut out = h.clone();
    out.verification = out.verification.max(level);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_document;

    #[test]
    fn levels_are_ordered() {
        assert!(Verification::Unverified < Verification::Abelianization);
        assert!(Verification::NilpotentQuotient(2) < Verification::NilpotentQuotient(3));
        assert!(Verification::NilpotentQuotient(9) < Verification::Exact);
    }

    #[test]
    fn inclusion_z2_into_z4() {
        let doc = parse_document(
            "group A { gens: x, y; rels: [x,y]; }
             group B { gens: a1, a2, a3, a4; rels: [a1,a2],[a1,a3],[a1,a4],[a2,a3],[a2,a4],[a3,a4]; }
             hom p : A -> B { x => a1, y => a2 }",
        )
        .unwrap();
        let p = verify_hom(doc.hom("p").unwrap(), Verification::Exact).unwrap();
        assert_eq!(p.verification(), Verification::Exact);
    }

    #[test]
    fn free_source_into_surface_group() {
        let doc = parse_document(
            "group F2 { gens: x, y; rels: ; }
             group S { gens: a1, a2, a3, a4; rels: [a1,a3][a2,a4]; }
             hom f : F2 -> S { x => a1, y => a2 }",
        )
        .unwrap();
        assert_eq!(WordProblem::detect(doc.hom("f").unwrap().target()), Some(WordProblem::Surface { genus: 2 }));
        let f = verify_hom(doc.hom("f").unwrap(), Verification::Exact).unwrap();
        assert_eq!(f.verification(), Verification::Exact);
    }

    #[test]
    fn abelian_target_collapses_commutator() {
        let doc = parse_document(
            "group A { gens: x, y; rels: [x,y]; }
             group Z { gens: t; rels: ; }
             hom f : A -> Z { x => t, y => t }",
        )
        .unwrap();
        let f = verify_hom(doc.hom("f").unwrap(), Verification::Exact).unwrap();
        assert_eq!(f.verification(), Verification::Exact);
    }

    #[test]
    fn failing_relator_is_reported_and_level_kept() {
        let doc = parse_document(
            "group A { gens: x, y; rels: [x,y]; }
             group F { gens: a, b; rels: ; }
             hom f : A -> F { x => a, y => b }",
        )
        .unwrap();
        let f = doc.hom("f").unwrap();
        // fine in the abelianization, not in the class-2 quotient
        let ab = verify_hom(f, Verification::Abelianization).unwrap();
        assert_eq!(ab.verification(), Verification::Abelianization);
        let err = verify_hom(&ab, Verification::NilpotentQuotient(2)).unwrap_err();
        assert!(matches!(err, HomError::RelatorNotTrivial { relator: 0, .. }));
        assert!(matches!(verify_hom(f, Verification::Exact), Err(HomError::RelatorNotTrivial { .. })));
    }

    #[test]
    fn exact_unsupported_target() {
        let doc = parse_document(
            "group A { gens: x; rels: x^3; }
             group B { gens: y; rels: y^6; }
             hom f : A -> B { x => y^2 }",
        )
        .unwrap();
        let f = doc.hom("f").unwrap();
        assert!(matches!(verify_hom(f, Verification::Exact), Err(HomError::ExactUnsupported(_))));
        assert!(verify_hom(f, Verification::Abelianization).is_ok());
        // x ↦ y is not a homomorphism: y^3 ≠ 1 in Z/6
        let g = GroupHom::new("g", f.source().clone(), f.target().clone(), vec![Word::generator(0)]).unwrap();
        assert!(verify_hom(&g, Verification::Abelianization).is_err());
    }
}

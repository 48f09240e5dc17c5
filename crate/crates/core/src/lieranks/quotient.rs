use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::series::{degree_offset, magnus_expansion, Monomial, TruncatedSeries};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::presentation::{Presentation, Word};
use crate::scalar::Field;

/// Upper bound on the number of monomials (all degrees ≤ d) an algebra may
/// use as columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: 5000 }
    }
}

impl Budget {
    pub fn new(max_dim: usize) -> Self {
        Budget { max_dim }
    }

    pub fn check(&self, ngens: usize, degree: usize) -> Result<(), BudgetExceeded> {
        let required = degree_offset(ngens, degree + 1);
        if required > self.max_dim {
            Err(BudgetExceeded {
                required,
                budget: self.max_dim,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("truncated algebra needs {required} basis monomials, budget is {budget}")]
pub struct BudgetExceeded {
    pub required: usize,
    pub budget: usize,
}

/// Graded dimensions `r_1, …, r_d` (index 0 holds degree 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRanks {
    pub ranks: Vec<usize>,
}

impl GradedRanks {
    /// Rank in degree `n ≥ 1`.
    pub fn get(&self, n: usize) -> usize {
        self.ranks[n - 1]
    }

    pub fn degree(&self) -> usize {
        self.ranks.len()
    }
}

/// The free associative algebra on `g` letters, truncated above degree `d`,
/// modulo the two-sided ideal generated by a finite set of elements.
///
/// Columns are monomials in length-then-lex order, so the echelon rows of
/// the ideal whose pivot has degree `n` give, restricted to degree `n`, a
/// basis of the degree-`n` initial forms of the ideal.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F> {
    ngens: usize,
    degree: usize,
    ideal: SparseEchelon<F>,
    initial: Vec<SparseEchelon<F>>,
    lie: Vec<Vec<TruncatedSeries<F>>>,
}

impl<F: Field> QuotientAlgebra<F> {
    /// Quotient by `magnus(r) − 1` for every relator.
    pub fn new(p: &Presentation, degree: usize, budget: Budget) -> Result<Self, BudgetExceeded> {
        let g = p.ngens();
        budget.check(g, degree)?;
        let one = TruncatedSeries::one(g, degree);
        let gens: Vec<_> = p
            .relators()
            .iter()
            .map(|r| magnus_expansion::<F>(r, g, degree).sub(&one))
            .collect();
        Self::from_ideal(g, degree, &gens, budget)
    }

    /// Quotient by the two-sided ideal generated by `gens` (which should have
    /// no constant term).
    pub fn from_ideal(
        ngens: usize,
        degree: usize,
        gens: &[TruncatedSeries<F>],
        budget: Budget,
    ) -> Result<Self, BudgetExceeded> {
        assert!(degree >= 1, "degree bound must be positive");
        budget.check(ngens, degree)?;
        let mut ideal = SparseEchelon::new();
        for s in gens {
            let Some(low) = s.lowest_degree() else {
                continue;
            };
            let room = degree.saturating_sub(low);
            if low > degree {
                continue;
            }
            for a in 0..=room {
                for left in Monomial::all_of_degree(ngens, a) {
                    for b in 0..=room - a {
                        for right in Monomial::all_of_degree(ngens, b) {
                            let v = s.sandwich(&left, &right);
                            ideal.insert(to_sparse(&v, ngens));
                        }
                    }
                }
            }
        }

        let mut initial: Vec<SparseEchelon<F>> = (0..=degree).map(|_| SparseEchelon::new()).collect();
        for (pivot, row) in ideal.rows() {
            let n = Monomial::from_index(ngens, pivot).degree();
            let end = degree_offset(ngens, n + 1);
            let part: SparseVec<F> = row.iter().filter(|(c, _)| *c < end).cloned().collect();
            initial[n].insert(part);
        }

        let mut algebra = QuotientAlgebra {
            ngens,
            degree,
            ideal,
            initial,
            lie: Vec::new(),
        };
        algebra.lie = algebra.lie_representatives();
        Ok(algebra)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the associated graded quotient in degrees `0..=d`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        (0..=self.degree)
            .map(|n| self.ngens.pow(n as u32) - self.initial[n].len())
            .collect()
    }

    /// Dimensions of the degree-`n` part of the Lie subalgebra generated by
    /// the degree-one classes, for `n = 1..=d`.
    pub fn lie_ranks(&self) -> GradedRanks {
        GradedRanks {
            ranks: self.lie[1..].iter().map(Vec::len).collect(),
        }
    }

    /// Homogeneous Lie elements of degree `n` that are independent modulo
    /// the degree-`n` initial forms of the ideal.
    pub fn lie_basis(&self, n: usize) -> &[TruncatedSeries<F>] {
        &self.lie[n]
    }

    /// Generator indices whose classes form a basis of degree one.
    pub fn degree_one_generators(&self) -> Vec<usize> {
        self.lie[1]
            .iter()
            .map(|s| s.terms().next().expect("nonzero generator").0 .0[0])
            .collect()
    }

    fn lie_representatives(&self) -> Vec<Vec<TruncatedSeries<F>>> {
        let (g, d) = (self.ngens, self.degree);
        let mut reps: Vec<Vec<TruncatedSeries<F>>> = vec![Vec::new(); d + 1];
        let mut seen = self.initial[1].clone();
        for i in 0..g {
            let x = TruncatedSeries::generator(g, d, i);
            if seen.insert(to_sparse(&x, g)) {
                reps[1].push(x);
            }
        }
        for n in 2..=d {
            let mut seen = self.initial[n].clone();
            let mut found = Vec::new();
            for x in &reps[1] {
                for b in &reps[n - 1] {
                    let c = x.bracket(b);
                    if seen.insert(to_sparse(&c, g)) {
                        found.push(c);
                    }
                }
            }
            reps[n] = found;
        }
        reps
    }

    /// Reduction of a homogeneous degree-`n` element modulo the initial
    /// forms in that degree.
    pub fn reduce_homogeneous(&self, n: usize, s: &TruncatedSeries<F>) -> SparseVec<F> {
        self.initial[n].reduce(to_sparse(&s.homogeneous_part(n), self.ngens))
    }

    /// Canonical representative of `s` modulo the ideal.
    pub fn normal_form(&self, s: &TruncatedSeries<F>) -> SparseVec<F> {
        self.ideal.reduce(to_sparse(s, self.ngens))
    }

    pub fn normal_form_series(&self, s: &TruncatedSeries<F>) -> TruncatedSeries<F> {
        from_sparse(&self.normal_form(s), self.ngens, self.degree)
    }

    /// Does `w` map to one in the quotient?
    pub fn is_trivial_word(&self, w: &Word) -> bool {
        let one = TruncatedSeries::one(self.ngens, self.degree);
        self.normal_form(&magnus_expansion::<F>(w, self.ngens, self.degree).sub(&one))
            .is_empty()
    }
}

pub(crate) fn to_sparse<F: Field>(s: &TruncatedSeries<F>, g: usize) -> SparseVec<F> {
    // BTreeMap order on monomials is the column order
    s.terms().map(|(m, c)| (m.index(g), c.clone())).collect()
}

pub(crate) fn from_sparse<F: Field>(v: &SparseVec<F>, g: usize, d: usize) -> TruncatedSeries<F> {
    TruncatedSeries::from_terms(
        g,
        d,
        v.iter().map(|(c, x)| (Monomial::from_index(g, *c), x.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use num_rational::BigRational;

    type Q = QuotientAlgebra<BigRational>;

    fn algebra(text: &str, d: usize) -> Q {
        Q::new(&parse_presentation(text).unwrap(), d, Budget::default()).unwrap()
    }

    #[test]
    fn free_group_dimensions() {
        let a = Q::new(&Presentation::free("F", &["x", "y"]), 3, Budget::default()).unwrap();
        assert_eq!(a.quotient_dims(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn free_abelian_degree_two() {
        let a = algebra("group Z2 { gens: x, y; rels: [x,y]; }", 2);
        assert_eq!(a.quotient_dims()[2], 3);
        assert_eq!(a.lie_ranks().ranks, vec![2, 0]);
    }

    #[test]
    fn heisenberg_kills_weight_three_brackets() {
        let a = algebra("group H { gens: x, y, c; rels: [x,y] c^-1, [x,c], [y,c]; }", 3);
        assert_eq!(a.lie_ranks().ranks, vec![2, 1, 0]);
        // c is identified with the bracket, so only x and y survive in degree one
        assert_eq!(a.degree_one_generators(), vec![0, 1]);
    }

    #[test]
    fn word_triviality() {
        let a = algebra("group Z2 { gens: x, y; rels: [x,y]; }", 3);
        assert!(a.is_trivial_word(&Word::from_signed(&[2, 1, -2, -1])));
        assert!(!a.is_trivial_word(&Word::from_signed(&[1])));
    }

    #[test]
    fn budget_is_enforced() {
        let p = Presentation::free("F", &["a", "b", "c"]);
        let err = Q::new(&p, 4, Budget::new(100)).unwrap_err();
        assert_eq!(err.required, 1 + 3 + 9 + 27 + 81);
    }
}

use num_traits::Zero;
use serde::Serialize;

use super::quotient::{to_sparse, Budget, QuotientAlgebra};
use super::series::{magnus_expansion, TruncatedSeries};
use super::LieError;
use crate::linalg::{field, Matrix, SparseEchelon, SparseVec};
use crate::presentation::{GroupHom, Verification};
use crate::{QMatrix, Rational};

/// One basis element of a truncated Malcev Lie algebra: the right-normed
/// bracket `[ℓ_{p0}, [ℓ_{p1}, … ℓ_{pk}]]` of generator logarithms
/// `ℓ_i = log(1 + X_i)`, reduced modulo the relator ideal.
#[derive(Clone, Debug)]
pub struct LieElement {
    pub path: Vec<usize>,
    pub value: SparseVec<Rational>,
}

impl LieElement {
    /// Bracket length; the element lies in the `length`-th term of the
    /// lower central series.
    pub fn length(&self) -> usize {
        self.path.len()
    }
}

/// A basis of `L/C^{d+1}` adapted to the lower central series: for every
/// `n`, the elements of length `≥ n` span `C^n`.
#[derive(Clone, Debug)]
pub struct FilteredLieBasis {
    elements: Vec<LieElement>,
    columns: Vec<usize>,
    dense: QMatrix,
}

impl FilteredLieBasis {
    pub fn build(algebra: &QuotientAlgebra<Rational>) -> Self {
        let (g, d) = (algebra.ngens(), algebra.degree());
        let logs: Vec<TruncatedSeries<Rational>> = (0..g)
            .map(|i| TruncatedSeries::generator(g, d, i).add(&TruncatedSeries::one(g, d)).log())
            .collect();

        // spanning brackets of each length, independent within their length
        let mut by_length: Vec<Vec<(Vec<usize>, TruncatedSeries<Rational>)>> = vec![Vec::new(); d + 1];
        let mut seen = SparseEchelon::new();
        for (i, l) in logs.iter().enumerate() {
            let nf = algebra.normal_form_series(l);
            if seen.insert(to_sparse(&nf, g)) {
                by_length[1].push((vec![i], nf));
            }
        }
        for n in 2..=d {
            let mut seen = SparseEchelon::new();
            let mut found = Vec::new();
            for (i, l) in logs.iter().enumerate() {
                for (path, b) in &by_length[n - 1] {
                    let nf = algebra.normal_form_series(&l.bracket(b));
                    if seen.insert(to_sparse(&nf, g)) {
                        let mut p = vec![i];
                        p.extend_from_slice(path);
                        found.push((p, nf));
                    }
                }
            }
            by_length[n] = found;
        }

        let mut span = SparseEchelon::new();
        let mut elements = Vec::new();
        for n in (1..=d).rev() {
            for (path, s) in &by_length[n] {
                let value = to_sparse(s, g);
                if span.insert(value.clone()) {
                    elements.push(LieElement {
                        path: path.clone(),
                        value,
                    });
                }
            }
        }
        elements.sort_by_key(|e| e.length());

        let mut columns: Vec<usize> = elements.iter().flat_map(|e| e.value.iter().map(|(c, _)| *c)).collect();
        columns.sort_unstable();
        columns.dedup();
        let mut dense = QMatrix::zeros(columns.len(), elements.len());
        for (j, e) in elements.iter().enumerate() {
            for (c, x) in &e.value {
                let i = columns.binary_search(c).expect("column collected above");
                dense[(i, j)] = x.clone();
            }
        }
        FilteredLieBasis {
            elements,
            columns,
            dense,
        }
    }

    pub fn elements(&self) -> &[LieElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.elements.iter().map(LieElement::length).collect()
    }

    /// Coordinates of a normal-form vector, or `None` outside the span.
    pub fn coordinates(&self, v: &SparseVec<Rational>) -> Option<Vec<Rational>> {
        let mut rhs = vec![Rational::zero(); self.columns.len()];
        for (c, x) in v {
            let i = self.columns.binary_search(c).ok()?;
            rhs[i] = x.clone();
        }
        if self.elements.is_empty() {
            return rhs.iter().all(Zero::is_zero).then(Vec::new);
        }
        field::solve(&self.dense, &rhs)
    }

    /// Ranks of the graded pieces `C^n / C^{n+1}`.
    pub fn graded_ranks(&self, d: usize) -> Vec<usize> {
        (1..=d)
            .map(|n| self.elements.iter().filter(|e| e.length() == n).count())
            .collect()
    }
}

/// Matrix of the induced map of truncated Malcev Lie algebras, in filtered
/// bases of source (columns) and target (rows).
#[derive(Clone, Debug)]
pub struct MalcevMap {
    pub degree: usize,
    pub matrix: QMatrix,
    pub source_lengths: Vec<usize>,
    pub target_lengths: Vec<usize>,
}

impl MalcevMap {
    /// Rows belonging to target basis elements of bracket length `n`.
    pub fn degree_block(&self, n: usize) -> QMatrix {
        let rows: Vec<usize> = (0..self.target_lengths.len())
            .filter(|&i| self.target_lengths[i] == n)
            .collect();
        self.matrix.select_rows(&rows)
    }

    pub fn degree_rank(&self, n: usize) -> usize {
        field::rank(&self.degree_block(n))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn compose(&self, inner: &MalcevMap) -> MalcevMap {
        MalcevMap {
            degree: self.degree.min(inner.degree),
            matrix: self.matrix.mul(&inner.matrix),
            source_lengths: inner.source_lengths.clone(),
            target_lengths: self.target_lengths.clone(),
        }
    }
}

/// Induced map `L(Γ₁)/C^{d+1} → L(Γ₂)/C^{d+1}`.
pub fn malcev_map(h: &GroupHom, d: usize, budget: Budget) -> Result<MalcevMap, LieError> {
    h.require(Verification::NilpotentQuotient(d))?;
    let src = QuotientAlgebra::<Rational>::new(h.source(), d, budget)?;
    let tgt = QuotientAlgebra::<Rational>::new(h.target(), d, budget)?;
    let sb = FilteredLieBasis::build(&src);
    let tb = FilteredLieBasis::build(&tgt);
    let g = h.target().ngens();
    let logs: Vec<TruncatedSeries<Rational>> = h
        .images()
        .iter()
        .map(|w| magnus_expansion::<Rational>(w, g, d).log())
        .collect();

    let mut matrix = Matrix::zeros(tb.len(), sb.len());
    for (j, e) in sb.elements().iter().enumerate() {
        let (&last, rest) = e.path.split_last().expect("paths are nonempty");
        let mut value = logs[last].clone();
        for &i in rest.iter().rev() {
            value = logs[i].bracket(&value);
        }
        let coords = tb
            .coordinates(&tgt.normal_form(&value))
            .expect("image of a Lie element lies in the Lie span");
        for (i, x) in coords.into_iter().enumerate() {
            matrix[(i, j)] = x;
        }
    }
    Ok(MalcevMap {
        degree: d,
        matrix,
        source_lengths: sb.lengths(),
        target_lengths: tb.lengths(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictnessLevel {
    pub n: usize,
    /// `dim h(C^n L₁)`
    pub image_of_level: usize,
    /// `dim (h(L₁) ∩ C^n L₂)`
    pub image_meet_level: usize,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictnessReport {
    pub levels: Vec<StrictnessLevel>,
}

impl StrictnessReport {
    pub fn is_strict(&self) -> bool {
        self.levels.iter().all(|l| l.strict)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.strict).map(|l| l.n)
    }
}

/// Compares `h(C^n L₁)` with `h(L₁) ∩ C^n L₂` for `n = 1..=d`.
pub fn strictness_check(h: &GroupHom, d: usize, budget: Budget) -> Result<StrictnessReport, LieError> {
    let map = malcev_map(h, d, budget)?;
    Ok(strictness_of(&map))
}

pub fn strictness_of(map: &MalcevMap) -> StrictnessReport {
    let total = field::rank(&map.matrix);
    let levels = (1..=map.degree)
        .map(|n| {
            let cols: Vec<usize> = (0..map.source_lengths.len())
                .filter(|&j| map.source_lengths[j] >= n)
                .collect();
            let low: Vec<usize> = (0..map.target_lengths.len())
                .filter(|&i| map.target_lengths[i] < n)
                .collect();
            let image_of_level = field::rank(&map.matrix.select_cols(&cols));
            let image_meet_level = total - field::rank(&map.matrix.select_rows(&low));
            StrictnessLevel {
                n,
                image_of_level,
                image_meet_level,
                strict: image_of_level == image_meet_level,
            }
        })
        .collect();
    StrictnessReport { levels }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorImageReport {
    /// Every generator image is trivial in the target's abelianization.
    pub image_in_commutator: bool,
    /// The truncated Malcev map is nonzero.
    pub map_nonzero: bool,
    /// Lowest target bracket length reached by the map, if nonzero.
    pub first_nonzero_degree: Option<usize>,
    pub fires: bool,
}

/// A nonzero map whose image lies in the commutator subgroup of the target
/// cannot strictly preserve the lower central series.
pub fn commutator_image_check(h: &GroupHom, d: usize, budget: Budget) -> Result<CommutatorImageReport, LieError> {
    let map = malcev_map(h, d, budget)?;
    let relations = h.target().exponent_matrix().transpose();
    let ab = h.abelianized_matrix();
    let image_in_commutator =
        (0..ab.rows()).all(|i| crate::linalg::solve_integer(&relations, &ab.row(i).to_vec()).is_some());
    let first_nonzero_degree = (1..=d).find(|&n| map.degree_rank(n) > 0);
    let map_nonzero = first_nonzero_degree.is_some();
    Ok(CommutatorImageReport {
        image_in_commutator,
        map_nonzero,
        first_nonzero_degree,
        fires: image_in_commutator && map_nonzero,
    })
}

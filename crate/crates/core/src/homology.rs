//! First homology, Fox derivatives, and the cup product `H¹ ∧ H¹ → H²`
//! computed on the presentation 2-complex.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{cokernel, field, rational_rank, to_rational, AbelianStructure, AbelianizationMap, Matrix};
use crate::presentation::{GroupHom, HomError, Presentation, Verification, Word};
use crate::{IntMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("cochain has {given} values for {expected} generators")]
    Length { given: usize, expected: usize },
    #[error("cochain does not vanish on relator {relator}")]
    NotCocycle { relator: usize },
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// `H₁(P) = Z^gens / rowspace(exponent matrix)`.
pub fn h1(p: &Presentation) -> AbelianStructure {
    cokernel(&p.exponent_matrix())
}

/// First Betti number.
pub fn betti1(p: &Presentation) -> usize {
    p.ngens() - rational_rank(&p.exponent_matrix())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1ParityReport {
    pub rank_image: usize,
    pub rank_kernel: usize,
    pub rank_cokernel: usize,
}

impl H1ParityReport {
    /// Names of the ranks that are odd.
    pub fn odd(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.rank_image % 2 == 1 {
            out.push("image");
        }
        if self.rank_kernel % 2 == 1 {
            out.push("kernel");
        }
        if self.rank_cokernel % 2 == 1 {
            out.push("cokernel");
        }
        out
    }

    pub fn fires(&self) -> bool {
        !self.odd().is_empty()
    }
}

/// Ranks of image, kernel and cokernel of `H₁(h) ⊗ Q`.
pub fn h1_parity_check(h: &GroupHom) -> Result<H1ParityReport, HomError> {
    h.require(Verification::Abelianization)?;
    let tgt = h.target().exponent_matrix();
    let rank_tgt = rational_rank(&tgt);
    let rank_image = rational_rank(&h.abelianized_matrix().vstack(&tgt)) - rank_tgt;
    let b_src = betti1(h.source());
    let b_tgt = h.target().ngens() - rank_tgt;
    Ok(H1ParityReport {
        rank_image,
        rank_kernel: b_src - rank_image,
        rank_cokernel: b_tgt - rank_image,
    })
}

/// An element of `Z[H₁]`: group elements are canonical abelianization
/// coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    pub terms: BTreeMap<Vec<BigInt>, BigInt>,
}

impl GroupRingElement {
    fn add(&mut self, key: Vec<BigInt>, coef: BigInt) {
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += coef;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image under the trivial character (every group element ↦ 1).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn coefficient(&self, key: &[BigInt]) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let key: Vec<String> = k.iter().map(ToString::to_string).collect();
                format!("{c}·t({})", key.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Abelianized Fox derivatives: `entries[j][i] = ∂r_j/∂x_i` in `Z[H₁]`.
#[derive(Clone, Debug)]
pub struct FoxMatrix {
    pub entries: Vec<Vec<GroupRingElement>>,
}

impl FoxMatrix {
    /// Sends every group element to one; recovers the exponent-sum matrix.
    pub fn specialize(&self) -> IntMatrix {
        let cols = self.entries.first().map_or(0, Vec::len);
        let rows: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(GroupRingElement::augmentation).collect())
            .collect();
        IntMatrix::from_rows(cols, &rows)
    }
}

/// Fox derivative of `w` with respect to every generator, with group
/// elements pushed to `H₁` through `ab`.
fn fox_row(w: &Word, n: usize, ab: &AbelianizationMap) -> Vec<GroupRingElement> {
    let mut row = vec![GroupRingElement::default(); n];
    let mut prefix = vec![BigInt::zero(); n];
    for l in w.letters() {
        if l.inverse {
            // ∂x⁻¹/∂x = −x⁻¹: the prefix including this letter
            prefix[l.gen] -= 1;
            row[l.gen].add(ab.coordinates(&prefix), -BigInt::one());
        } else {
            row[l.gen].add(ab.coordinates(&prefix), BigInt::one());
            prefix[l.gen] += 1;
        }
    }
    row
}

pub fn fox_derivatives(p: &Presentation) -> FoxMatrix {
    let ab = AbelianizationMap::new(&p.exponent_matrix());
    FoxMatrix {
        entries: p.relators().iter().map(|r| fox_row(r, p.ngens(), &ab)).collect(),
    }
}

/// A homomorphism `G → Q`, one value per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCocycle {
    pub values: Vec<Rational>,
}

impl OneCocycle {
    pub fn new(p: &Presentation, values: Vec<Rational>) -> Result<Self, HomologyError> {
        if values.len() != p.ngens() {
            return Err(HomologyError::Length {
                given: values.len(),
                expected: p.ngens(),
            });
        }
        let a = to_rational(&p.exponent_matrix());
        if let Some(relator) = a.mul_vec(&values).iter().position(|x| !x.is_zero()) {
            return Err(HomologyError::NotCocycle { relator });
        }
        Ok(OneCocycle { values })
    }

    /// Dual basis vector `x_i*` (valid only when it vanishes on relators).
    pub fn dual(p: &Presentation, i: usize) -> Result<Self, HomologyError> {
        let mut v = vec![Rational::zero(); p.ngens()];
        v[i] = Rational::one();
        Self::new(p, v)
    }

    fn eval_exponents(&self, e: &[i64]) -> Rational {
        self.values
            .iter()
            .zip(e)
            .map(|(v, &k)| v * Rational::from_integer(k.into()))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// A 2-cochain on the presentation complex (one value per relator), read
/// modulo coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochainClass {
    pub values: Vec<Rational>,
}

impl TwoCochainClass {
    /// Is the class zero, i.e. `values = A·f` for some `f`?
    pub fn is_zero(&self, p: &Presentation) -> bool {
        crate::linalg::solve_rational(&p.exponent_matrix(), &self.values).is_some()
    }

    pub fn add(&self, other: &Self) -> Self {
        TwoCochainClass {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TwoCochainClass {
            values: self.values.iter().map(|a| a * k).collect(),
        }
    }

    pub fn same_class(&self, other: &Self, p: &Presentation) -> bool {
        self.add(&other.scale(&-Rational::one())).is_zero(p)
    }
}

/// `(α ∪ β)(r) = Σ_i α̃(∂r/∂x_i) β(x_i)`, with `α̃` the extension of `α` to
/// the group ring by `g ↦ α(g)`. Letter by letter: a positive letter `y`
/// contributes `α(prefix)·β(y)`, an inverse letter `y⁻¹` contributes
/// `−α(prefix·y⁻¹)·β(y)`.
pub fn cup_product(p: &Presentation, alpha: &OneCocycle, beta: &OneCocycle) -> Result<TwoCochainClass, HomologyError> {
    let alpha = OneCocycle::new(p, alpha.values.clone())?;
    let beta = OneCocycle::new(p, beta.values.clone())?;
    let n = p.ngens();
    let values = p
        .relators()
        .iter()
        .map(|r| {
            let mut prefix = vec![0i64; n];
            let mut total = Rational::zero();
            for l in r.letters() {
                if l.inverse {
                    prefix[l.gen] -= 1;
                    total -= alpha.eval_exponents(&prefix) * &beta.values[l.gen];
                } else {
                    total += alpha.eval_exponents(&prefix) * &beta.values[l.gen];
                    prefix[l.gen] += 1;
                }
            }
            total
        })
        .collect();
    Ok(TwoCochainClass { values })
}

/// A basis of `H¹(P; Q)`.
pub fn h1_cocycle_basis(p: &Presentation) -> Vec<OneCocycle> {
    let a = to_rational(&p.exponent_matrix());
    let basis = if a.rows() == 0 {
        (0..p.ngens())
            .map(|i| {
                let mut v = vec![Rational::zero(); p.ngens()];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        field::nullspace(&a)
    };
    basis.into_iter().map(|values| OneCocycle { values }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupInjectivity {
    pub basis: Vec<OneCocycle>,
    /// Dimension of `Λ²H¹`.
    pub wedge_dim: usize,
    /// Kernel of `Λ²H¹ → H²`, as coefficient vectors over the pairs
    /// `(p, q)`, `p < q`, of `basis` in lexicographic order.
    pub kernel: Vec<Vec<Rational>>,
}

impl CupInjectivity {
    pub fn injective(&self) -> bool {
        self.kernel.is_empty()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let b = self.basis.len();
        (0..b).flat_map(|p| (p + 1..b).map(move |q| (p, q))).collect()
    }
}

/// Is `Λ²H¹(P; Q) → H²(P; Q)` injective?
pub fn cup_injectivity_check(p: &Presentation) -> CupInjectivity {
    let basis = h1_cocycle_basis(p);
    let b = basis.len();
    let rels = p.relators().len();
    let mut wedge_cols = Vec::new();
    for i in 0..b {
        for j in i + 1..b {
            let c = cup_product(p, &basis[i], &basis[j]).expect("basis vectors are cocycles");
            wedge_cols.push(c.values);
        }
    }
    let wedge_dim = wedge_cols.len();
    if wedge_dim == 0 {
        return CupInjectivity {
            basis,
            wedge_dim,
            kernel: Vec::new(),
        };
    }
    // [V | A]·(λ, μ) = 0 ⇔ Σ λ v_pq is a coboundary
    let a = to_rational(&p.exponent_matrix());
    let mut m = Matrix::zeros(rels, wedge_dim + p.ngens());
    for (k, col) in wedge_cols.iter().enumerate() {
        for (j, x) in col.iter().enumerate() {
            m[(j, k)] = x.clone();
        }
    }
    for j in 0..rels {
        for i in 0..p.ngens() {
            m[(j, wedge_dim + i)] = a[(j, i)].clone();
        }
    }
    let kernel = if rels == 0 {
        // no relators: H² = 0
        (0..wedge_dim)
            .map(|k| {
                let mut v = vec![Rational::zero(); wedge_dim];
                v[k] = Rational::one();
                v
            })
            .collect()
    } else {
        let projected: Vec<Vec<Rational>> = field::nullspace(&m)
            .into_iter()
            .map(|v| v[..wedge_dim].to_vec())
            .collect();
        if projected.is_empty() {
            Vec::new()
        } else {
            let (r, pivots) = field::rref(&Matrix::from_rows(wedge_dim, &projected));
            (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
        }
    };
    CupInjectivity {
        basis,
        wedge_dim,
        kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn first_homology() {
        let h = pres("group H { gens: x, y, c; rels: [x,y] c^-1, [x,c], [y,c]; }");
        assert_eq!(h1(&h), AbelianStructure::free(2));
        let z3 = pres("group Z3 { gens: x; rels: x^3; }");
        assert_eq!(h1(&z3).to_string(), "Z/3");
    }

    #[test]
    fn fox_by_hand() {
        let z2 = Presentation::free_abelian("Z2", &["x", "y"]);
        let fox = fox_derivatives(&z2);
        // ∂[x,y]/∂x = 1 − xyx⁻¹ ≡ 1 − y
        let dx = &fox.entries[0][0];
        assert_eq!(dx.coefficient(&[BigInt::zero(), BigInt::zero()]), BigInt::one());
        assert_eq!(dx.coefficient(&[BigInt::zero(), BigInt::one()]), -BigInt::one());
        assert_eq!(dx.terms.len(), 2);

        let cube = pres("group C { gens: x, y; rels: x^3, y; }");
        let fox = fox_derivatives(&cube);
        // ∂x³/∂x = 1 + x + x²; in H₁ = Z/3 these are three distinct elements
        assert_eq!(fox.entries[0][0].terms.len(), 3);
        assert_eq!(fox.entries[0][0].augmentation(), BigInt::from(3));
        assert!(fox.entries[1][0].is_zero());
        assert_eq!(fox.specialize(), cube.exponent_matrix());
    }

    #[test]
    fn cup_on_torus() {
        let z2 = Presentation::free_abelian("Z2", &["x", "y"]);
        let x = OneCocycle::dual(&z2, 0).unwrap();
        let y = OneCocycle::dual(&z2, 1).unwrap();
        assert_eq!(cup_product(&z2, &x, &y).unwrap().values, vec![q(1)]);
        assert_eq!(cup_product(&z2, &y, &x).unwrap().values, vec![q(-1)]);
        assert!(cup_product(&z2, &x, &x).unwrap().is_zero(&z2));
    }

    #[test]
    fn cup_on_genus_two() {
        let s = pres("group S { gens: a1, a2, a3, a4; rels: [a1,a3][a2,a4]; }");
        let d = |i| OneCocycle::dual(&s, i).unwrap();
        assert_eq!(cup_product(&s, &d(0), &d(2)).unwrap().values, vec![q(1)]);
        assert_eq!(cup_product(&s, &d(0), &d(1)).unwrap().values, vec![q(0)]);
        let inj = cup_injectivity_check(&s);
        assert!(!inj.injective());
        assert_eq!(inj.kernel.len(), 5);
    }

    #[test]
    fn invalid_cocycle_rejected() {
        let h = pres("group H { gens: x, y, c; rels: [x,y] c^-1, [x,c], [y,c]; }");
        assert!(matches!(OneCocycle::dual(&h, 2), Err(HomologyError::NotCocycle { relator: 0 })));
    }

    #[test]
    fn injectivity_for_free_abelian_rank_four() {
        let z4 = Presentation::free_abelian("Z4", &["a", "b", "c", "d"]);
        let inj = cup_injectivity_check(&z4);
        assert_eq!(inj.wedge_dim, 6);
        assert!(inj.injective());
    }

    #[test]
    fn heisenberg_rank_five_kernel() {
        let h = pres(
            "group H5 { gens: x1, y1, x2, y2, c;
               rels: [x1,y1] c^-1, [x2,y2] c^-1, [x1,x2], [x1,y2], [y1,x2], [y1,y2],
                     [x1,c], [y1,c], [x2,c], [y2,c]; }",
        );
        let inj = cup_injectivity_check(&h);
        assert_eq!(inj.kernel.len(), 1);
        // x1*∧y1* + x2*∧y2*: pairs are (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
        let k = &inj.kernel[0];
        assert_eq!(k, &vec![q(1), q(0), q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn parity_of_a_rank_one_map() {
        let doc = crate::presentation::parse_document(
            "group A { gens: x, y; rels: [x,y]; }
             hom f : A -> A { x => x, y => 1 }",
        )
        .unwrap();
        let f = crate::presentation::verify_hom(doc.hom("f").unwrap(), Verification::Exact).unwrap();
        let r = h1_parity_check(&f).unwrap();
        assert_eq!((r.rank_image, r.rank_kernel, r.rank_cokernel), (1, 1, 1));
        assert!(r.fires());
    }
}

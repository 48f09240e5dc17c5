use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, Smith};
use super::Matrix;

/// A finitely generated abelian group `Z^rank ⊕ Z/t₁ ⊕ … ⊕ Z/tₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianStructure {
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianStructure {
    pub fn free(rank: usize) -> Self {
        AbelianStructure {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t)
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `Z^rows → Z^cols` given by the rows of `a`, i.e. `Z^cols`
/// modulo the row lattice. For an exponent-sum matrix this is the
/// abelianization.
pub fn cokernel(a: &Matrix<BigInt>) -> AbelianStructure {
    let snf = smith_normal_form(a);
    structure_from_smith(&snf, a.cols())
}

fn structure_from_smith(snf: &Smith<BigInt>, cols: usize) -> AbelianStructure {
    let r = snf.rank();
    AbelianStructure {
        rank: cols - r,
        torsion: snf.diagonal[..r]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
    }
}

/// Canonical coordinates on `Z^n / rowspace(A)`.
///
/// With `U·A·V = D`, the row lattice of `A` is carried by `V` onto the row
/// lattice of `D`, so `e ↦ e·V` followed by reduction modulo each diagonal
/// entry is a normal form for cosets.
#[derive(Clone, Debug)]
pub struct AbelianizationMap {
    smith: Smith<BigInt>,
    cols: usize,
    structure: AbelianStructure,
}

impl AbelianizationMap {
    pub fn new(relation_rows: &Matrix<BigInt>) -> Self {
        let smith = smith_normal_form(relation_rows);
        let structure = structure_from_smith(&smith, relation_rows.cols());
        AbelianizationMap {
            smith,
            cols: relation_rows.cols(),
            structure,
        }
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    /// Canonical coordinates of the coset of `e`. Coordinates with modulus
    /// one are dropped; torsion coordinates come first, reduced into
    /// `[0, d)`, followed by the free coordinates.
    pub fn coordinates(&self, e: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(e.len(), self.cols);
        let y = self.smith.right.vec_mul(e);
        let mut out = Vec::new();
        for (i, yi) in y.into_iter().enumerate() {
            let d = self.smith.factor(i);
            if d.is_zero() {
                out.push(yi);
            } else if !d.is_one() {
                out.push(yi.mod_floor(&d));
            }
        }
        out
    }

    pub fn is_trivial(&self, e: &[BigInt]) -> bool {
        self.coordinates(e).iter().all(Zero::is_zero)
    }

    /// Order of the coset of `e`: `None` when it has infinite order.
    pub fn order(&self, e: &[BigInt]) -> Option<BigInt> {
        let y = self.smith.right.vec_mul(e);
        let mut order = BigInt::one();
        for (i, yi) in y.into_iter().enumerate() {
            let d = self.smith.factor(i);
            if d.is_zero() {
                if !yi.is_zero() {
                    return None;
                }
            } else {
                let g = yi.gcd(&d);
                order = order.lcm(&(d / g).abs());
            }
        }
        Some(order)
    }
}

/// Kernel of the homomorphism `Z^n / L_src → Z^m / L_tgt` induced by `map`
/// (an `n × m` matrix acting on row vectors), as an abelian group.
pub fn induced_kernel(
    src_relations: &Matrix<BigInt>,
    map: &Matrix<BigInt>,
    tgt_relations: &Matrix<BigInt>,
) -> AbelianStructure {
    let n = map.rows();
    assert_eq!(src_relations.cols(), n);
    assert_eq!(tgt_relations.cols(), map.cols());
    // K = {x ∈ Z^n : x·map ∈ rowspace(L_tgt)} = first n coordinates of the
    // integer left kernel of [map; -L_tgt].
    let stacked = map.vstack(&tgt_relations.map(|x| -x.clone()));
    let kernel = super::snf::integer_kernel(&stacked.transpose());
    let k_basis: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..n].to_vec()).collect();
    let k_basis = lattice_basis(&k_basis, n);
    if k_basis.is_empty() {
        return AbelianStructure::free(0);
    }
    // Express the source relations in the basis of K, then take the cokernel.
    let kmat = Matrix::from_rows(n, &k_basis);
    let coords: Vec<Vec<BigInt>> = (0..src_relations.rows())
        .map(|i| {
            super::snf::solve_integer(&kmat.transpose(), src_relations.row(i))
                .expect("source relations lie in the kernel lattice")
        })
        .collect();
    cokernel(&Matrix::from_rows(k_basis.len(), &coords))
}

/// A Z-basis for the lattice spanned by `vectors` in `Z^n`.
pub fn lattice_basis(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    // Row lattice of M equals row lattice of D·V⁻¹; its nonzero rows form a basis.
    let m = Matrix::from_rows(n, vectors);
    let snf = smith_normal_form(&m);
    let r = snf.rank();
    let v_inv = unimodular_inverse(&snf.right);
    (0..r)
        .map(|i| {
            let d = snf.diagonal[i].clone();
            v_inv.row(i).iter().map(|x| x * &d).collect()
        })
        .collect()
}

/// Inverse of a unimodular integer matrix by exact rational elimination.
pub fn unimodular_inverse(v: &Matrix<BigInt>) -> Matrix<BigInt> {
    use num_rational::BigRational;
    let n = v.rows();
    let q = v.map(|x| BigRational::from_integer(x.clone()));
    let aug = q.hstack(&Matrix::identity(n));
    let (r, pivots) = super::field::rref(&aug);
    assert_eq!(pivots.len(), n, "matrix is not invertible");
    let inv = r.select_cols(&(n..2 * n).collect::<Vec<_>>());
    inv.map(|x| {
        assert!(x.is_integer(), "matrix is not unimodular");
        x.to_integer()
    })
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Matrix::from_rows(cols, &rows)
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_group() {
        let s = cokernel(&m(&[&[3]]));
        assert_eq!(s.rank, 0);
        assert_eq!(s.torsion, v(&[3]));
        assert_eq!(s.to_string(), "Z/3");
    }

    #[test]
    fn no_relations() {
        let s = cokernel(&Matrix::zeros(0, 4));
        assert_eq!(s, AbelianStructure::free(4));
    }

    #[test]
    fn coset_coordinates() {
        // Z^2 / <(2, 0)> = Z/2 + Z
        let map = AbelianizationMap::new(&m(&[&[2, 0]]));
        assert!(map.is_trivial(&v(&[4, 0])));
        assert!(!map.is_trivial(&v(&[1, 0])));
        assert_eq!(map.coordinates(&v(&[3, 0])), map.coordinates(&v(&[1, 0])));
        assert_eq!(map.order(&v(&[1, 0])), Some(BigInt::from(2)));
        assert_eq!(map.order(&v(&[0, 1])), None);
    }

    #[test]
    fn kernel_of_quotient_map() {
        // Z/6 → Z/3 reduction has kernel Z/2
        let k = induced_kernel(&m(&[&[6]]), &m(&[&[1]]), &m(&[&[3]]));
        assert_eq!(k, AbelianStructure { rank: 0, torsion: v(&[2]) });
        // Z^2 → Z projection has kernel Z
        let k = induced_kernel(&Matrix::zeros(0, 2), &m(&[&[1], &[0]]), &Matrix::zeros(0, 1));
        assert_eq!(k, AbelianStructure::free(1));
    }
}

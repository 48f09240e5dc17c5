//! Surface groups, orbifold surface groups, Dehn's algorithm, and the
//! splitting obstruction for surjections onto a surface group.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extensions::{class_and_torsion, recognize_extension, ClassVerdict, ExtensionClass, ExtensionError};
use crate::homology::h1;
use crate::linalg::{cokernel, induced_kernel, AbelianStructure};
use crate::presentation::{verify_hom, GroupHom, HomError, Letter, Presentation, Verification, Word, WordProblem};
use crate::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("genus must be at least {min}, got {given}")]
    Genus { given: usize, min: usize },
    #[error("orbifold orders must be at least 2, got {0}")]
    Order(u64),
    #[error("target `{0}` is not a surface group of genus at least 2")]
    TargetNotSurface(String),
    #[error("induced map on H1 is not onto Z^{rank}")]
    NotSurjective { rank: usize },
    #[error("source is not a central extension of the target in a recognized shape: {0}")]
    ShapeUnrecognized(String),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// `[a₁,a_{g+1}]…[a_g,a_{2g}]` on generators `0..2g`.
pub fn surface_relator(genus: usize) -> Word {
    (0..genus).fold(Word::identity(), |w, i| {
        w.mul(&Word::commutator(&Word::generator(i), &Word::generator(genus + i)))
    })
}

fn surface_names(genus: usize) -> Vec<String> {
    (1..=2 * genus).map(|i| format!("a{i}")).collect()
}

/// The fundamental group of the closed orientable surface of genus `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGroup {
    genus: usize,
    presentation: Presentation,
}

impl SurfaceGroup {
    pub fn new(genus: usize) -> Result<Self, SurfaceError> {
        if genus < 1 {
            return Err(SurfaceError::Genus { given: genus, min: 1 });
        }
        let presentation = Presentation::new(format!("Gamma{genus}"), surface_names(genus), vec![surface_relator(genus)])
            .expect("surface generator names are valid");
        Ok(SurfaceGroup { genus, presentation })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
}

pub fn surface_group(genus: usize) -> Result<SurfaceGroup, SurfaceError> {
    SurfaceGroup::new(genus)
}

/// All cyclic rotations of the relator and of its inverse.
fn relator_rotations(genus: usize) -> Vec<Vec<Letter>> {
    let r = surface_relator(genus);
    let inv = r.inverse();
    (0..r.len())
        .map(|k| r.rotate(k).letters().to_vec())
        .chain((0..inv.len()).map(|k| inv.rotate(k).letters().to_vec()))
        .collect()
}

/// Dehn's algorithm on the cyclic word `w`: while some cyclic subword agrees
/// with more than half of a rotation of `R^{±1}`, replace it by the inverse
/// of the rest of that rotation. Returns the final cyclically reduced word;
/// for `g ≥ 2`, `w` is trivial iff the result is empty.
pub fn dehn_reduce(genus: usize, w: &Word) -> Word {
    let rotations = relator_rotations(genus);
    let len_r = 4 * genus;
    let mut cur = w.cyclically_reduced();
    loop {
        let letters = cur.letters();
        let n = letters.len();
        // leftmost start, then longest match
        let mut best: Option<(usize, usize, usize)> = None;
        for start in 0..n {
            for (k, rot) in rotations.iter().enumerate() {
                let mut m = 0;
                while m < n && m < len_r && letters[(start + m) % n] == rot[m] {
                    m += 1;
                }
                if 2 * m > len_r && best.map_or(true, |(_, _, bm)| m > bm) {
                    best = Some((start, k, m));
                }
            }
            if best.is_some() {
                break;
            }
        }
        let Some((start, k, m)) = best else {
            return cur;
        };
        let rot = &rotations[k];
        let rotated = cur.rotate(start);
        let replacement = rot[m..].iter().rev().map(|l| l.inv());
        let rest = rotated.letters()[m..].iter().copied();
        cur = Word::from_letters(replacement.chain(rest)).cyclically_reduced();
    }
}

/// Word problem in `Γ_g`, `g ≥ 2`.
pub fn dehn_trivial(genus: usize, w: &Word) -> Result<bool, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::Genus { given: genus, min: 2 });
    }
    if w.max_generator().is_some_and(|g| g >= 2 * genus) {
        return Ok(false);
    }
    Ok(dehn_reduce(genus, w).is_empty())
}

/// `⟨a₁…a_{2g}, q₁…q_r | R·q₁⋯q_r, q_i^{m_i}⟩`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldGroup {
    genus: usize,
    orders: Vec<u64>,
    presentation: Presentation,
}

impl OrbifoldGroup {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
}

pub fn orbifold_group(genus: usize, orders: &[u64]) -> Result<OrbifoldGroup, SurfaceError> {
    if genus < 1 {
        return Err(SurfaceError::Genus { given: genus, min: 1 });
    }
    if let Some(&m) = orders.iter().find(|&&m| m < 2) {
        return Err(SurfaceError::Order(m));
    }
    let base = 2 * genus;
    let mut names = surface_names(genus);
    names.extend((1..=orders.len()).map(|i| format!("q{i}")));
    let mut first = surface_relator(genus);
    for i in 0..orders.len() {
        first = first.mul(&Word::generator(base + i));
    }
    let mut rels = vec![first];
    for (i, &m) in orders.iter().enumerate() {
        rels.push(Word::generator(base + i).pow(m as i64));
    }
    let suffix: Vec<String> = orders.iter().map(ToString::to_string).collect();
    let name = if orders.is_empty() {
        format!("Orb{genus}")
    } else {
        format!("Orb{genus}_{}", suffix.join("_"))
    };
    let presentation = Presentation::new(name, names, rels).expect("orbifold generator names are valid");
    Ok(OrbifoldGroup {
        genus,
        orders: orders.to_vec(),
        presentation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldH1Report {
    pub h1: AbelianStructure,
    /// Kernel of `H₁(O) → H₁(Γ_g)` induced by killing the `q`'s.
    pub kernel: AbelianStructure,
    pub kernel_is_torsion: bool,
    pub free_rank_is_2g: bool,
}

pub fn orbifold_kernel_h1_check(o: &OrbifoldGroup) -> OrbifoldH1Report {
    let p = o.presentation();
    let base = 2 * o.genus;
    let n = p.ngens();
    let mut map = IntMatrix::zeros(n, base);
    for i in 0..base {
        map[(i, i)] = BigInt::from(1);
    }
    let surface = SurfaceGroup::new(o.genus).expect("genus checked at construction");
    let kernel = induced_kernel(&p.exponent_matrix(), &map, &surface.presentation().exponent_matrix());
    let h1 = h1(p);
    OrbifoldH1Report {
        kernel_is_torsion: kernel.is_finite(),
        free_rank_is_2g: h1.rank == base,
        h1,
        kernel,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingVerdict {
    /// Infinite-order class and a maximal map: the source is not Kähler.
    NotKahler,
    /// Infinite-order class, maximality not asserted.
    Conditional,
    /// Torsion class: no obstruction.
    Consistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub genus: usize,
    pub central: Vec<String>,
    pub verification: Verification,
    pub surjective_on_h1: bool,
    pub maximality_asserted: bool,
    pub class: ExtensionClass,
    pub verdict: SplittingVerdict,
}

/// Splitting obstruction for a surjection `h: π → Γ_g` whose kernel is
/// generated by central generators of the source.
pub fn splitting_obstruction_pipeline(h: &GroupHom, maximality_asserted: bool) -> Result<SplittingReport, SurfaceError> {
    let target = h.target();
    let genus = match WordProblem::detect(target) {
        Some(WordProblem::Surface { genus }) if target.relators().len() == 1 => genus,
        _ => return Err(SurfaceError::TargetNotSurface(target.name().to_string())),
    };
    let h = verify_hom(h, Verification::Exact)?;

    // H₁ surjectivity: the image lattice must be all of Z^{2g}
    let image = h.abelianized_matrix().vstack(&target.exponent_matrix());
    if !cokernel(&image).is_trivial() {
        return Err(SurfaceError::NotSurjective { rank: 2 * genus });
    }

    let source = h.source();
    let central: Vec<usize> = (0..source.ngens()).filter(|&i| h.images()[i].is_empty()).collect();
    let central_names: Vec<String> = central.iter().map(|&i| source.generator_names()[i].clone()).collect();
    let ext = recognize_extension(source, &central_names)
        .map_err(|e| SurfaceError::ShapeUnrecognized(e.to_string()))?;

    // base generators must go letter for letter onto the target generators
    let mut targets = Vec::new();
    for &g in ext.base_generators() {
        match h.images()[g].letters() {
            [l] if !l.inverse => targets.push(l.gen),
            _ => {
                return Err(SurfaceError::ShapeUnrecognized(format!(
                    "generator {} does not map to a target generator",
                    source.generator_names()[g]
                )))
            }
        }
    }
    let mut sorted = targets.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != target.ngens() || targets.len() != target.ngens() {
        return Err(SurfaceError::ShapeUnrecognized(
            "base generators are not in bijection with the target generators".into(),
        ));
    }
    let base_rels: Vec<Word> = ext
        .base()
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.reindex(|i| targets[i]))
        .collect();
    if base_rels.len() != 1 || !base_rels[0].is_cyclic_conjugate_of(&target.relators()[0]) {
        return Err(SurfaceError::ShapeUnrecognized(
            "base relators are not the surface relator".into(),
        ));
    }

    let class = class_and_torsion(&ext);
    let verdict = match (&class.verdict, maximality_asserted) {
        (ClassVerdict::NonTorsion, true) => SplittingVerdict::NotKahler,
        (ClassVerdict::NonTorsion, false) => SplittingVerdict::Conditional,
        _ => SplittingVerdict::Consistent,
    };
    Ok(SplittingReport {
        genus,
        central: central_names,
        verification: h.verification(),
        surjective_on_h1: true,
        maximality_asserted,
        class,
        verdict,
    })
}

/// Projection `H → G` onto the base of a recognized extension, as a
/// homomorphism killing the central generators.
pub fn base_projection(total: &Presentation, central: &[String], base: &Presentation) -> Result<GroupHom, HomError> {
    let mut next = 0;
    let images = total
        .generator_names()
        .iter()
        .map(|name| {
            if central.contains(name) {
                Word::identity()
            } else {
                next += 1;
                Word::generator(next - 1)
            }
        })
        .collect();
    GroupHom::new(format!("{}_to_{}", total.name(), base.name()), total.clone(), base.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_document;

    #[test]
    fn surface_presentations() {
        let s1 = surface_group(1).unwrap();
        assert_eq!(s1.presentation().relators()[0], Word::from_signed(&[1, 2, -1, -2]));
        let s2 = surface_group(2).unwrap();
        assert_eq!(s2.presentation().relators()[0], Word::from_signed(&[1, 3, -1, -3, 2, 4, -2, -4]));
        assert_eq!(h1(surface_group(3).unwrap().presentation()), AbelianStructure::free(6));
        assert!(surface_group(0).is_err());
    }

    #[test]
    fn dehn_basics() {
        let r = surface_relator(2);
        assert!(dehn_trivial(2, &r).unwrap());
        assert!(dehn_trivial(2, &r.inverse().rotate(3)).unwrap());
        assert!(!dehn_trivial(2, &Word::from_signed(&[1, 2])).unwrap());
        let w = Word::from_signed(&[2, -3, 1]);
        let conj = w.mul(&r).mul(&w.inverse());
        assert!(dehn_trivial(2, &conj).unwrap());
        assert!(dehn_trivial(2, &conj.mul(&r.inverse().rotate(5))).unwrap());
        // a commutator that is not a consequence of R
        assert!(!dehn_trivial(2, &Word::from_signed(&[1, 2, -1, -2])).unwrap());
        assert!(dehn_trivial(1, &r).is_err());
    }

    #[test]
    fn orbifold_groups() {
        let o = orbifold_group(1, &[2]).unwrap();
        assert_eq!(o.presentation().ngens(), 3);
        assert_eq!(o.presentation().relators().len(), 2);
        // q is a product of commutators times q, so it dies in H₁
        let r = orbifold_kernel_h1_check(&o);
        assert_eq!(r.h1, AbelianStructure::free(2));
        assert!(r.kernel.is_trivial());
        assert!(r.free_rank_is_2g);

        let o = orbifold_group(2, &[3, 3]).unwrap();
        assert_eq!((o.presentation().ngens(), o.presentation().relators().len()), (6, 3));
        let r = orbifold_kernel_h1_check(&o);
        assert_eq!(r.kernel.to_string(), "Z/3");
        assert!(r.kernel_is_torsion && r.free_rank_is_2g);

        assert!(orbifold_kernel_h1_check(&orbifold_group(2, &[]).unwrap()).kernel.is_trivial());
        assert!(orbifold_group(1, &[1]).is_err());
        assert!(orbifold_group(0, &[2]).is_err());
    }

    const GAMMA2: &str = "group G2 { gens: a1, a2, a3, a4; rels: [a1,a3][a2,a4]; }";

    #[test]
    fn splitting_obstruction_for_the_intro_group() {
        let doc = parse_document(&format!(
            "{GAMMA2}
             group E {{ gens: a1, a2, a3, a4, c; rels: [a1,a3][a2,a4] c^-1, [a1,c], [a2,c], [a3,c], [a4,c]; }}
             hom h : E -> G2 {{ a1 => a1, a2 => a2, a3 => a3, a4 => a4, c => 1 }}"
        ))
        .unwrap();
        let h = doc.hom("h").unwrap();
        let r = splitting_obstruction_pipeline(h, true).unwrap();
        assert_eq!(r.verdict, SplittingVerdict::NotKahler);
        assert_eq!(r.central, vec!["c".to_string()]);
        assert_eq!(splitting_obstruction_pipeline(h, false).unwrap().verdict, SplittingVerdict::Conditional);
    }

    #[test]
    fn split_product_and_identity() {
        let doc = parse_document(&format!(
            "{GAMMA2}
             group P {{ gens: a1, a2, a3, a4, c; rels: [a1,a3][a2,a4], [a1,c], [a2,c], [a3,c], [a4,c]; }}
             hom pr : P -> G2 {{ a1 => a1, a2 => a2, a3 => a3, a4 => a4, c => 1 }}
             hom id : G2 -> G2 {{ a1 => a1, a2 => a2, a3 => a3, a4 => a4 }}"
        ))
        .unwrap();
        let r = splitting_obstruction_pipeline(doc.hom("pr").unwrap(), true).unwrap();
        assert_eq!(r.verdict, SplittingVerdict::Consistent);
        let r = splitting_obstruction_pipeline(doc.hom("id").unwrap(), true).unwrap();
        assert_eq!(r.verdict, SplittingVerdict::Consistent);
    }

    #[test]
    fn pipeline_rejects_non_surjective_maps() {
        let doc = parse_document(&format!(
            "{GAMMA2}
             group F {{ gens: x, y; rels: ; }}
             hom f : F -> G2 {{ x => a1, y => a2 }}"
        ))
        .unwrap();
        assert!(matches!(
            splitting_obstruction_pipeline(doc.hom("f").unwrap(), true),
            Err(SurfaceError::NotSurjective { .. })
        ));
    }
}

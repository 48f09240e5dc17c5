//! Central extensions read off from presentations with explicit central
//! generators: the extension class, its order, the pushouts `H^(n)` and
//! sections of them, and the canonical class-2 extension of a group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{betti1, cup_injectivity_check};
use crate::lieranks::{Budget, BudgetExceeded, QuotientAlgebra, TruncatedSeries};
use crate::linalg::{bigint_list, smith_normal_form, solve_integer, solve_rational, Matrix, SparseEchelon};
use crate::presentation::{
    is_identifier, verify_hom, GroupHom, HomError, Letter, Presentation, PresentationError, Verification, Word,
};
use crate::{IntMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("`{0}` is not a generator")]
    UnknownGenerator(String),
    #[error("relator {relator} ({word}) mixes central generators in an unrecognized pattern")]
    NonCentralPattern { relator: usize, word: String },
    #[error("no relator makes `{central}` commute with `{other}`")]
    MissingCentrality { central: String, other: String },
    #[error("section for n = {n} failed validation: {source}")]
    SectionInvalid { n: u64, source: HomError },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RelatorKind {
    Centrality,
    /// Index into the base relators.
    Base(usize),
}

/// `1 → ⟨c⟩ → H → G → 1`, with `H` presented and the `c`'s named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    total: Presentation,
    central: Vec<usize>,
    base_gens: Vec<usize>,
    base: Presentation,
    /// Base relators `r_j(x)` as words in the total generators.
    base_words: Vec<Word>,
    lifts: Vec<Vec<BigInt>>,
    kinds: Vec<RelatorKind>,
    kernel_free: bool,
}

impl CentralExtension {
    pub fn total(&self) -> &Presentation {
        &self.total
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn central_names(&self) -> Vec<String> {
        self.central
            .iter()
            .map(|&i| self.total.generator_names()[i].clone())
            .collect()
    }

    /// Total-generator indices of the base generators, in base order.
    pub fn base_generators(&self) -> &[usize] {
        &self.base_gens
    }

    /// One vector `v_j ∈ Z^k` per base relator: `r_j(x) = c^{v_j}` in `H`.
    pub fn lift_vectors(&self) -> &[Vec<BigInt>] {
        &self.lifts
    }

    pub fn base_exponent_matrix(&self) -> IntMatrix {
        self.base.exponent_matrix()
    }

    /// Whether the central generators were seen to span a free abelian
    /// group of full rank in the rational class-2 quotient of `H`.
    pub fn kernel_hypothesis(&self) -> bool {
        self.kernel_free
    }

    fn column(&self, l: usize, n: &BigInt) -> Vec<BigInt> {
        self.lifts.iter().map(|v| -(&v[l] * n)).collect()
    }
}

/// Splits each relator of `p` into a centrality relation or a base relator
/// `r_j(x)` times a word in the central generators.
pub fn recognize_extension(p: &Presentation, central_names: &[String]) -> Result<CentralExtension, ExtensionError> {
    let mut central = Vec::new();
    for name in central_names {
        let i = p
            .generator_index(name)
            .ok_or_else(|| ExtensionError::UnknownGenerator(name.clone()))?;
        if !central.contains(&i) {
            central.push(i);
        }
    }
    let n = p.ngens();
    let is_central = |g: usize| central.contains(&g);
    let base_gens: Vec<usize> = (0..n).filter(|&g| !is_central(g)).collect();
    let base_index = |g: usize| base_gens.iter().position(|&b| b == g).expect("base generator");

    let mut commuting = vec![false; n * n];
    let mut base_words = Vec::new();
    let mut lifts = Vec::new();
    let mut kinds = Vec::new();
    for (j, r) in p.relators().iter().enumerate() {
        if let Some((a, b)) = r.as_commutator() {
            if is_central(a.gen) || is_central(b.gen) {
                commuting[a.gen * n + b.gen] = true;
                commuting[b.gen * n + a.gen] = true;
                kinds.push(RelatorKind::Centrality);
                continue;
            }
        }
        let letters = r.letters();
        let marks: Vec<bool> = letters.iter().map(|l| is_central(l.gen)).collect();
        let (base_word, central_part) = if marks.iter().all(|&m| m) {
            (Word::identity(), r.clone())
        } else if !marks.iter().any(|&m| m) {
            (r.clone(), Word::identity())
        } else {
            // the central letters must form one cyclic block; rotate it to the end
            let len = letters.len();
            let starts: Vec<usize> = (0..len).filter(|&i| marks[i] && !marks[(i + len - 1) % len]).collect();
            if starts.len() != 1 {
                return Err(ExtensionError::NonCentralPattern {
                    relator: j,
                    word: p.display_word(r).to_string(),
                });
            }
            let rotated = r.rotate(starts[0]);
            let k = marks.iter().filter(|&&m| m).count();
            let rl = rotated.letters();
            (
                Word::from_letters(rl[k..].iter().copied()),
                Word::from_letters(rl[..k].iter().copied()),
            )
        };
        let sums = central_part.exponent_sums(n);
        lifts.push(central.iter().map(|&c| BigInt::from(-sums[c])).collect());
        kinds.push(RelatorKind::Base(base_words.len()));
        base_words.push(base_word);
    }

    for &c in &central {
        for other in 0..n {
            if other != c && !commuting[c * n + other] {
                return Err(ExtensionError::MissingCentrality {
                    central: p.generator_names()[c].clone(),
                    other: p.generator_names()[other].clone(),
                });
            }
        }
    }

    let base = Presentation::new(
        format!("{}_base", p.name()),
        base_gens.iter().map(|&g| p.generator_names()[g].clone()).collect(),
        base_words.iter().map(|w| w.reindex(base_index)).collect(),
    )?;
    let kernel_free = central_generators_independent(p, &central);
    Ok(CentralExtension {
        total: p.clone(),
        central,
        base_gens,
        base,
        base_words,
        lifts,
        kinds,
        kernel_free,
    })
}

/// Rational independence of the central generators in `L(H)/C³`.
fn central_generators_independent(p: &Presentation, central: &[usize]) -> bool {
    let Ok(algebra) = QuotientAlgebra::<Rational>::new(p, 2, Budget::default()) else {
        return false;
    };
    let g = p.ngens();
    let mut span = SparseEchelon::new();
    central.iter().all(|&c| {
        let log = TruncatedSeries::generator(g, 2, c).add(&TruncatedSeries::one(g, 2)).log();
        span.insert(algebra.normal_form(&log))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassVerdict {
    Zero,
    Torsion {
        #[serde(with = "crate::report::bigint_string")]
        order: BigInt,
    },
    NonTorsion,
}

/// The extension class in `H²(G; Z^k)` computed on the presentation
/// complex of the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionClass {
    pub verdict: ClassVerdict,
    /// The lift vectors `v_j`, one per base relator.
    #[serde(with = "bigint_rows")]
    pub vectors: Vec<Vec<BigInt>>,
    /// `w` with `A·w = −v` for each central generator, when rationally
    /// solvable.
    pub rational_solution: Option<Vec<Vec<String>>>,
    /// `y` with `y·A = 0` and `y·v_l ≠ 0`, when the class has infinite order.
    pub obstruction: Option<Obstruction>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    /// Central generator whose component has infinite order.
    pub central: usize,
    #[serde(with = "bigint_list")]
    pub functional: Vec<BigInt>,
}

impl ExtensionClass {
    pub fn is_torsion(&self) -> bool {
        !matches!(self.verdict, ClassVerdict::NonTorsion)
    }

    pub fn order(&self) -> Option<BigInt> {
        match &self.verdict {
            ClassVerdict::Zero => Some(BigInt::one()),
            ClassVerdict::Torsion { order } => Some(order.clone()),
            ClassVerdict::NonTorsion => None,
        }
    }
}

mod bigint_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.into_iter()
            .map(|r| r.into_iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

/// Order of the class: smallest `n ≥ 1` with `A·w = −n·v` solvable over Z
/// for every central component, read off the Smith form of `A`.
pub fn class_and_torsion(e: &CentralExtension) -> ExtensionClass {
    let a = e.base_exponent_matrix();
    let smith = smith_normal_form(&a);
    let rank = smith.rank();
    let k = e.central.len();
    let mut order = BigInt::one();
    let mut obstruction = None;
    for l in 0..k {
        let u = smith.left.mul_vec(&e.column(l, &BigInt::one()));
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            if i >= rank {
                obstruction.get_or_insert(Obstruction {
                    central: l,
                    functional: smith.left.row(i).to_vec(),
                });
            } else {
                let d = smith.factor(i);
                order = order.lcm(&(&d / d.gcd(ui)).abs());
            }
        }
    }
    let rational_solution = if obstruction.is_none() {
        Some(
            (0..k)
                .map(|l| {
                    let rhs: Vec<Rational> = e
                        .column(l, &BigInt::one())
                        .into_iter()
                        .map(Rational::from_integer)
                        .collect();
                    solve_rational(&a, &rhs)
                        .expect("no obstruction means a rational solution")
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .collect(),
        )
    } else {
        None
    };
    let verdict = if obstruction.is_some() {
        ClassVerdict::NonTorsion
    } else if order.is_one() {
        ClassVerdict::Zero
    } else {
        ClassVerdict::Torsion { order }
    };
    let mut caveats = Vec::new();
    if !e.kernel_free {
        caveats.push(
            "central generators not seen to be independent in the class-2 quotient; the kernel may be smaller than assumed"
                .to_string(),
        );
    }
    ExtensionClass {
        verdict,
        vectors: e.lifts.clone(),
        rational_solution,
        obstruction,
        caveats,
    }
}

/// The pushout along multiplication by `n` on the kernel: relators
/// `r_j(x)·c^{−n·v_j}`, centrality relators unchanged.
pub fn build_hn(e: &CentralExtension, n: u64) -> Presentation {
    let n = BigInt::from(n);
    let rels = e
        .total
        .relators()
        .iter()
        .zip(&e.kinds)
        .map(|(r, kind)| match kind {
            RelatorKind::Centrality => r.clone(),
            RelatorKind::Base(j) => {
                let mut w = e.base_words[*j].clone();
                for (l, &c) in e.central.iter().enumerate() {
                    let exp: i64 = (-(&e.lifts[*j][l] * &n)).try_into().expect("exponent fits in i64");
                    w = w.mul(&Word::generator(c).pow(exp));
                }
                w
            }
        })
        .collect();
    let name = if n.is_one() {
        e.total.name().to_string()
    } else {
        format!("{}_H{}", e.total.name(), n)
    };
    Presentation::new(name, e.total.generator_names().to_vec(), rels).expect("same generators as the total group")
}

/// A section `x_i ↦ x_i·c^{w_i}` of `H^(n) → G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub n: u64,
    /// One vector in `Z^k` per base generator.
    pub exponents: Vec<Vec<BigInt>>,
    pub map: GroupHom,
}

/// Looks for a section of `H^(n) → G` and validates it as a homomorphism.
pub fn section_search(e: &CentralExtension, n: u64) -> Result<Option<Section>, ExtensionError> {
    let a = e.base_exponent_matrix();
    let nb = BigInt::from(n);
    let k = e.central.len();
    let mut columns = Vec::new();
    for l in 0..k {
        match solve_integer(&a, &e.column(l, &nb)) {
            Some(w) => columns.push(w),
            None => return Ok(None),
        }
    }
    let exponents: Vec<Vec<BigInt>> = (0..e.base_gens.len())
        .map(|i| columns.iter().map(|w| w[i].clone()).collect())
        .collect();
    let images: Vec<Word> = e
        .base_gens
        .iter()
        .zip(&exponents)
        .map(|(&g, w)| {
            let mut img = Word::generator(g);
            for (l, &c) in e.central.iter().enumerate() {
                let exp: i64 = (&w[l]).try_into().expect("exponent fits in i64");
                img = img.mul(&Word::generator(c).pow(exp));
            }
            img
        })
        .collect();
    let hn = build_hn(e, n);
    let map = GroupHom::new(format!("section_{n}"), e.base.clone(), hn, images)
        .map_err(|source| ExtensionError::SectionInvalid { n, source })?;
    let map = verify_hom(&map, Verification::NilpotentQuotient(2))
        .map_err(|source| ExtensionError::SectionInvalid { n, source })?;
    Ok(Some(Section { n, exponents, map }))
}

/// Smallest `n ≤ limit` for which a section exists.
pub fn section_scan(e: &CentralExtension, limit: u64) -> Result<Option<Section>, ExtensionError> {
    for n in 1..=limit {
        if let Some(s) = section_search(e, n)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// `1 → gr₂ → Γ/γ₃ (mod torsion) → H₁/torsion → 1`, presented with one
/// generator per basis element of `H₁ ⊗ Q` and one central generator per
/// lattice basis vector of `gr₂`.
pub fn canonical_class2_extension(
    p: &Presentation,
    budget: Budget,
) -> Result<(CentralExtension, ExtensionClass), ExtensionError> {
    let algebra = QuotientAlgebra::<Rational>::new(p, 2, budget)?;
    let basis = algebra.degree_one_generators();
    let b = basis.len();
    let g = p.ngens();
    let pairs: Vec<(usize, usize)> = (0..b).flat_map(|i| (i + 1..b).map(move |j| (i, j))).collect();
    let residues: Vec<_> = pairs
        .iter()
        .map(|&(i, j)| {
            let x = TruncatedSeries::generator(g, 2, basis[i]);
            let y = TruncatedSeries::generator(g, 2, basis[j]);
            algebra.reduce_homogeneous(2, &x.bracket(&y))
        })
        .collect();

    // kernel basis: an independent subset of the pair residues
    let mut span = SparseEchelon::new();
    let chosen: Vec<usize> = (0..residues.len())
        .filter(|&k| span.insert(residues[k].clone()))
        .collect();
    let mut cols: Vec<usize> = residues.iter().flatten().map(|(c, _)| *c).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut dense = Matrix::zeros(cols.len(), chosen.len());
    for (j, &k) in chosen.iter().enumerate() {
        for (c, x) in &residues[k] {
            dense[(cols.binary_search(c).expect("collected"), j)] = x.clone();
        }
    }
    let coords: Vec<Vec<Rational>> = residues
        .iter()
        .map(|r| {
            if chosen.is_empty() {
                return Vec::new();
            }
            let mut rhs = vec![Rational::zero(); cols.len()];
            for (c, x) in r {
                rhs[cols.binary_search(c).expect("collected")] = x.clone();
            }
            crate::linalg::field::solve(&dense, &rhs).expect("residue lies in the span of the chosen ones")
        })
        .collect();
    let denom = coords
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Rational::from_integer(denom);

    let mut names: Vec<String> = basis.iter().map(|&i| p.generator_names()[i].clone()).collect();
    let mut central_names = Vec::new();
    for l in 0..chosen.len() {
        let mut name = format!("z{}", l + 1);
        while names.contains(&name) || !is_identifier(&name) {
            name.insert(0, 'z');
        }
        names.push(name.clone());
        central_names.push(name);
    }
    let mut rels = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let mut w = Word::commutator(&Word::generator(i), &Word::generator(j));
        for (l, x) in coords[k].iter().enumerate() {
            let m = (x * &scale).to_integer();
            let m: i64 = (&m).try_into().expect("exponent fits in i64");
            w = w.mul(&Word::generator(b + l).pow(-m));
        }
        rels.push(w);
    }
    for l in 0..chosen.len() {
        for other in 0..b + l {
            rels.push(Word::from_letters([
                Letter::pos(other),
                Letter::pos(b + l),
                Letter::neg(other),
                Letter::neg(b + l),
            ]));
        }
    }
    let total = Presentation::new(format!("{}_class2", p.name()), names, rels)?;
    let ext = recognize_extension(&total, &central_names)?;
    let class = class_and_torsion(&ext);
    Ok((ext, class))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineVerdict {
    NotKahler,
    Consistent,
    Conditional,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationClassReport {
    pub b1: usize,
    pub cup_injective: Option<bool>,
    pub class: Option<ExtensionClass>,
    pub verdict: PipelineVerdict,
    pub reasons: Vec<String>,
}

/// When `b₁ = 2`, or `b₁ = 4` with injective cup product, a non-torsion
/// class-2 extension class rules out Kähler groups.
pub fn abelianization_class_pipeline(p: &Presentation, budget: Budget) -> Result<AbelianizationClassReport, ExtensionError> {
    let b1 = betti1(p);
    let mut reasons = Vec::new();
    let mut cup_injective = None;
    let applicable = match b1 {
        2 => true,
        4 => {
            let inj = cup_injectivity_check(p);
            cup_injective = Some(inj.injective());
            if !inj.injective() {
                reasons.push(format!(
                    "cup product on H^1 is not injective on the wedge square (kernel dimension {})",
                    inj.kernel.len()
                ));
            }
            inj.injective()
        }
        _ => {
            reasons.push(format!("b1 = {b1}; the test needs b1 = 2, or b1 = 4 with injective cup product"));
            false
        }
    };
    if !applicable {
        return Ok(AbelianizationClassReport {
            b1,
            cup_injective,
            class: None,
            verdict: PipelineVerdict::Inconclusive,
            reasons,
        });
    }
    let (_, class) = canonical_class2_extension(p, budget)?;
    let verdict = if class.is_torsion() {
        reasons.push("class-2 pushforward of the abelianization class is torsion; the full class is not decided".into());
        PipelineVerdict::Inconclusive
    } else {
        reasons.push("abelianization extension class has infinite order".into());
        PipelineVerdict::NotKahler
    };
    Ok(AbelianizationClassReport {
        b1,
        cup_injective,
        class: Some(class),
        verdict,
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ext(text: &str, central: &[&str]) -> CentralExtension {
        let p = parse_presentation(text).unwrap();
        let names: Vec<String> = central.iter().map(|s| s.to_string()).collect();
        recognize_extension(&p, &names).unwrap()
    }

    const INTRO: &str = "group E { gens: a1, a2, a3, a4, c;
        rels: [a1,a3][a2,a4] c^-1, [a1,c], [a2,c], [a3,c], [a4,c]; }";
    const HEISENBERG: &str = "group H { gens: x, y, c; rels: [x,y] c^-1, [x,c], [y,c]; }";
    const ORDER_TWO: &str = "group T { gens: x, y, c; rels: x^2 y^-2 c^-1, [x,c], [y,c]; }";

    #[test]
    fn intro_group_is_a_nontorsion_extension_of_genus_two() {
        let e = ext(INTRO, &["c"]);
        assert_eq!(e.lift_vectors(), &[big(&[1])]);
        assert!(e.base_exponent_matrix().is_zero());
        assert_eq!(e.base().ngens(), 4);
        assert!(e.kernel_hypothesis());
        let class = class_and_torsion(&e);
        assert_eq!(class.verdict, ClassVerdict::NonTorsion);
        assert!(section_scan(&e, 4).unwrap().is_none());
        let h2 = build_hn(&e, 2);
        assert_eq!(recognize_extension(&h2, &["c".into()]).unwrap().lift_vectors(), &[big(&[2])]);
    }

    #[test]
    fn heisenberg_and_direct_product() {
        let h = ext(HEISENBERG, &["c"]);
        assert_eq!(h.lift_vectors(), &[big(&[1])]);
        assert_eq!(class_and_torsion(&h).verdict, ClassVerdict::NonTorsion);

        let prod = ext(
            "group P { gens: a1, a2, a3, a4, c; rels: [a1,a3][a2,a4], [a1,c], [a2,c], [a3,c], [a4,c]; }",
            &["c"],
        );
        assert_eq!(prod.lift_vectors(), &[big(&[0])]);
        assert_eq!(class_and_torsion(&prod).verdict, ClassVerdict::Zero);
        let s = section_search(&prod, 1).unwrap().unwrap();
        assert_eq!(s.exponents, vec![big(&[0]); 4]);
        assert_eq!(build_hn(&prod, 3), build_hn(&prod, 1).with_name("P_H3"));
    }

    #[test]
    fn order_two_class() {
        let e = ext(ORDER_TWO, &["c"]);
        let class = class_and_torsion(&e);
        assert_eq!(class.verdict, ClassVerdict::Torsion { order: 2.into() });
        assert!(section_search(&e, 1).unwrap().is_none());
        let s = section_search(&e, 2).unwrap().unwrap();
        let w: Vec<BigInt> = s.exponents.iter().map(|v| v[0].clone()).collect();
        // 2·w₁ − 2·w₂ = −2
        assert_eq!(BigInt::from(2) * &w[0] - BigInt::from(2) * &w[1], BigInt::from(-2));
        assert_eq!(section_scan(&e, 5).unwrap().unwrap().n, 2);
    }

    #[test]
    fn recognition_errors() {
        let p = parse_presentation("group B { gens: x, c; rels: x c x c^-1 x^-1; }").unwrap();
        assert!(matches!(
            recognize_extension(&p, &["c".into()]),
            Err(ExtensionError::NonCentralPattern { .. }) | Err(ExtensionError::MissingCentrality { .. })
        ));
        let q = parse_presentation("group B { gens: x, y, c; rels: [x,y] c^-1, [x,c]; }").unwrap();
        assert!(matches!(
            recognize_extension(&q, &["c".into()]),
            Err(ExtensionError::MissingCentrality { .. })
        ));
        let r = parse_presentation("group B { gens: x, y, c; rels: x c y x^-1 c y^-1, [x,c], [y,c]; }").unwrap();
        assert!(matches!(
            recognize_extension(&r, &["c".into()]),
            Err(ExtensionError::NonCentralPattern { relator: 0, .. })
        ));
    }

    #[test]
    fn class_two_extensions() {
        let h = parse_presentation(HEISENBERG).unwrap();
        let (e, class) = canonical_class2_extension(&h, Budget::default()).unwrap();
        assert_eq!(e.lift_vectors(), &[big(&[1])]);
        assert_eq!(class.verdict, ClassVerdict::NonTorsion);
        let r = abelianization_class_pipeline(&h, Budget::default()).unwrap();
        assert_eq!(r.verdict, PipelineVerdict::NotKahler);

        let z4 = Presentation::free_abelian("Z4", &["a", "b", "c", "d"]);
        let (_, class) = canonical_class2_extension(&z4, Budget::default()).unwrap();
        assert_eq!(class.verdict, ClassVerdict::Zero);

        let z2 = Presentation::free_abelian("Z2", &["x", "y"]);
        let r = abelianization_class_pipeline(&z2, Budget::default()).unwrap();
        assert_eq!(r.verdict, PipelineVerdict::Inconclusive);

        let s = parse_presentation("group S { gens: a1, a2, a3, a4; rels: [a1,a3][a2,a4]; }").unwrap();
        let (_, class) = canonical_class2_extension(&s, Budget::default()).unwrap();
        assert_eq!(class.verdict, ClassVerdict::NonTorsion);
        let r = abelianization_class_pipeline(&s, Budget::default()).unwrap();
        assert_eq!(r.verdict, PipelineVerdict::Inconclusive);
        assert_eq!(r.cup_injective, Some(false));
    }
}

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use kahler::extensions::{class_and_torsion, recognize_extension, section_search, ClassVerdict};
use kahler::homology::{cup_product, fox_derivatives, h1_cocycle_basis, OneCocycle};
use kahler::lieranks::{holonomy_ranks, lcs_ranks, magnus_expansion, malcev_map, Budget, QuotientAlgebra};
use kahler::linalg::{smith_normal_form, solve_integer};
use kahler::presentation::{parse_presentation, verify_hom, Letter, Verification};
use kahler::surface::{dehn_trivial, orbifold_group, orbifold_kernel_h1_check, surface_group};
use kahler::{GroupHom, IntMatrix, Presentation, Rational, Word};

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn presentation(name: &str, gens: &[String], rels: Vec<Word>) -> Presentation {
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Presentation::from_names(name, &refs, rels).unwrap()
}

fn heisenberg5() -> Presentation {
    parse_presentation(include_str!("../data/heisenberg5.grp")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn free_reduction_is_a_group_law(u in word(3, 12), v in word(3, 12), w in word(3, 12)) {
        prop_assert!(u.mul(&u.inverse()).is_empty());
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
        let c = u.cyclically_reduced();
        prop_assert!(c.is_cyclically_reduced());
        prop_assert_eq!(c.exponent_sums(3), u.exponent_sums(3));
    }

    #[test]
    fn magnus_expansion_is_multiplicative(u in word(2, 8), v in word(2, 8)) {
        let d = 4;
        let mu = magnus_expansion::<Rational>(&u, 2, d);
        let mv = magnus_expansion::<Rational>(&v, 2, d);
        prop_assert_eq!(magnus_expansion::<Rational>(&u.mul(&v), 2, d), mu.mul(&mv));
        let inv = magnus_expansion::<Rational>(&u.inverse(), 2, d);
        prop_assert_eq!(mu.mul(&inv), magnus_expansion::<Rational>(&Word::identity(), 2, d));
    }

    #[test]
    fn fox_matrix_specializes_to_exponent_sums(rels in prop::collection::vec(word(3, 10), 1..4)) {
        let p = presentation("G", &names("x", 3), rels);
        prop_assert_eq!(fox_derivatives(&p).specialize(), p.exponent_matrix());
    }

    #[test]
    fn cup_product_is_antisymmetric(
        a in prop::collection::vec(-3i64..=3, 4),
        b in prop::collection::vec(-3i64..=3, 4),
    ) {
        let p = heisenberg5();
        let basis = h1_cocycle_basis(&p);
        let combine = |c: &[i64]| {
            let mut v = vec![Rational::zero(); p.ngens()];
            for (k, e) in basis.iter().zip(c) {
                for (x, y) in v.iter_mut().zip(&k.values) {
                    *x += y * Rational::from_integer(BigInt::from(*e));
                }
            }
            OneCocycle::new(&p, v).unwrap()
        };
        let (alpha, beta) = (combine(&a), combine(&b));
        let ab = cup_product(&p, &alpha, &beta).unwrap();
        let ba = cup_product(&p, &beta, &alpha).unwrap();
        prop_assert!(ab.add(&ba).is_zero(&p));
        prop_assert!(cup_product(&p, &alpha, &alpha).unwrap().is_zero(&p));
    }

    #[test]
    fn malcev_maps_compose(
        f_img in prop::collection::vec(word(2, 5), 2),
        g_img in prop::collection::vec(word(2, 5), 2),
    ) {
        let d = 3;
        let free = Presentation::free("F", &["x", "y"]);
        let f = GroupHom::new("f", free.clone(), free.clone(), f_img).unwrap();
        let g = GroupHom::new("g", free.clone(), free.clone(), g_img).unwrap();
        let gf = g.compose(&f).unwrap();
        let level = Verification::NilpotentQuotient(d);
        let mf = malcev_map(&verify_hom(&f, level).unwrap(), d, Budget::default()).unwrap();
        let mg = malcev_map(&verify_hom(&g, level).unwrap(), d, Budget::default()).unwrap();
        let mgf = malcev_map(&verify_hom(&gf, level).unwrap(), d, Budget::default()).unwrap();
        prop_assert_eq!(mg.compose(&mf).matrix, mgf.matrix);
    }

    #[test]
    fn lcs_and_holonomy_agree_in_low_degree(rels in prop::collection::vec(word(3, 8), 0..3)) {
        let p = presentation("G", &names("x", 3), rels);
        let lcs = lcs_ranks(&p, 2, Budget::default()).unwrap();
        let hol = holonomy_ranks(&p, 2, Budget::default()).unwrap();
        prop_assert_eq!(lcs.ranks, hol.ranks);
    }

    #[test]
    fn smith_form_is_consistent_with_solving(
        entries in prop::collection::vec(-9i64..=9, 12),
        x in prop::collection::vec(-5i64..=5, 4),
    ) {
        let a = IntMatrix::from_vec(3, 4, entries.into_iter().map(BigInt::from).collect());
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.left.mul(&a).mul(&s.right), s.diag_matrix.clone());
        let b = a.mul_vec(&x.into_iter().map(BigInt::from).collect::<Vec<_>>());
        let sol = solve_integer(&a, &b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&sol), b);
    }

    #[test]
    fn dehn_trivial_words_die_in_the_nilpotent_quotient(
        conj in prop::collection::vec((word(4, 6), any::<bool>()), 1..4),
        noise in word(4, 6),
    ) {
        let s = surface_group(2).unwrap();
        let r = &s.presentation().relators()[0];
        let mut w = Word::identity();
        for (c, inv) in &conj {
            let rel = if *inv { r.inverse() } else { r.clone() };
            w = w.mul(&c.mul(&rel).mul(&c.inverse()));
        }
        prop_assert!(dehn_trivial(2, &w).unwrap());
        let q = QuotientAlgebra::<Rational>::new(s.presentation(), 3, Budget::default()).unwrap();
        prop_assert!(q.is_trivial_word(&w));
        let v = w.mul(&noise);
        if dehn_trivial(2, &v).unwrap() {
            prop_assert!(q.is_trivial_word(&v));
        }
    }

    #[test]
    fn orbifold_free_rank_is_2g(genus in 1usize..=3, orders in prop::collection::vec(2u64..=7, 0..4)) {
        let o = orbifold_group(genus, &orders).unwrap();
        let r = orbifold_kernel_h1_check(&o);
        prop_assert!(r.free_rank_is_2g);
        prop_assert!(r.kernel_is_torsion);
    }

    #[test]
    fn class_order_matches_first_section(
        r in word(2, 6),
        e in -4i64..=4,
    ) {
        let r = r.cyclically_reduced();
        prop_assume!(!r.is_empty());
        let gens = vec!["x".to_string(), "y".to_string(), "c".to_string()];
        let c = Word::generator(2);
        let rels = vec![
            r.mul(&c.pow(e)),
            Word::commutator(&Word::generator(0), &c),
            Word::commutator(&Word::generator(1), &c),
        ];
        let p = presentation("E", &gens, rels);
        let ext = recognize_extension(&p, &["c".to_string()]).unwrap();
        let class = class_and_torsion(&ext);
        let split_at_one = section_search(&ext, 1).unwrap().is_some();
        prop_assert_eq!(split_at_one, class.verdict == ClassVerdict::Zero);
        if let Some(n) = class.order() {
            let n = u64::try_from(n).unwrap();
            prop_assert!(section_search(&ext, n).unwrap().is_some());
        }
    }

    #[test]
    fn presentation_text_round_trips(rels in prop::collection::vec(word(3, 8), 0..4)) {
        let p = presentation("G", &names("a", 3), rels);
        let q = parse_presentation(&p.to_text()).unwrap();
        prop_assert_eq!(q.generator_names(), p.generator_names());
        prop_assert_eq!(q.relators(), p.relators());
    }
}

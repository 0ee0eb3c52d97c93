use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use fpforge_core::constructions::{retraction_section, sphere_link, sphere_projection, SignFunction};
use fpforge_core::cubical::salvetti;
use fpforge_core::enumeration::rset::{r_set_enumerate, Budgets};
use fpforge_core::enumeration::{hom_count, todd_coxeter, FiniteGroup};
use fpforge_core::homology::{reduced_homology, smith_normal_form};
use fpforge_core::presentation::free_reduce;
use fpforge_core::random::{self, random_flag_complex};
use fpforge_core::{corpus, ComplexFile, IntegerMatrix, Presentation, Ring, SimplicialComplex, Word};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(random::DEFAULT_SEED), ..ProptestConfig::default() }
}

fn word(gens: i32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=gens, any::<bool>()), 0..max_len)
        .prop_map(|v| Word::new(v.into_iter().map(|(g, inv)| if inv { -g } else { g }).collect()))
}

fn seeded_complex() -> impl Strategy<Value = SimplicialComplex> {
    any::<u64>().prop_map(|seed| random::mixed(&mut random::rng(seed), 7))
}

/// Products of elementary matrices: unimodular by construction.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntegerMatrix {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(a, b, k) in ops {
        let (a, b) = (a % n, b % n);
        if a != b {
            for c in 0..n {
                m[a][c] += k * m[b][c];
            }
        } else {
            m.swap(a, (a + 1) % n);
        }
    }
    IntegerMatrix::from_rows_i64(n, n, &m)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn snf_is_invariant_under_unimodular_changes(
        entries in prop::collection::vec(-6i64..=6, 12),
        left in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
        right in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..6),
    ) {
        let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let a = IntegerMatrix::from_rows_i64(3, 4, &rows);
        let b = unimodular(3, &left).mul(&a).unwrap().mul(&unimodular(4, &right)).unwrap();
        let (sa, sb) = (smith_normal_form(&a), smith_normal_form(&b));
        prop_assert!(sa.is_divisibility_chain());
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn free_reduction_is_idempotent(w in word(3, 24)) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.letters().windows(2).all(|p| p[0] != -p[1]));
        prop_assert!(free_reduce(&w.concat(&w.inverse())).is_empty());
    }

    #[test]
    fn presentations_round_trip_through_text(rels in prop::collection::vec(word(3, 10), 0..4)) {
        let p = Presentation::new(corpus::letter_names(3), rels).unwrap();
        let q = Presentation::parse(&p.to_string()).unwrap();
        prop_assert_eq!(q.generators, p.generators);
        prop_assert_eq!(q.relators, p.relators);
    }

    #[test]
    fn simplification_keeps_the_abelianization(rels in prop::collection::vec(word(3, 8), 0..4)) {
        let p = Presentation::new(corpus::letter_names(3), rels).unwrap();
        prop_assert_eq!(p.simplify().presentation.abelianization(), p.abelianization());
    }

    #[test]
    fn flag_iff_sphere_link_flag(l in seeded_complex()) {
        prop_assert_eq!(l.is_flag(), sphere_link(&l).is_flag());
    }

    #[test]
    fn barycentric_subdivision_is_flag_and_homotopy_invariant(l in seeded_complex()) {
        let sd = l.barycentric_subdivision();
        prop_assert!(sd.is_flag());
        prop_assert!(reduced_homology(&sd, Ring::Z).same_groups(&reduced_homology(&l, Ring::Z)));
    }

    #[test]
    fn sections_split_the_projection(l in seeded_complex(), seed in any::<u64>()) {
        let sl = sphere_link(&l);
        let proj = sphere_projection(&l, &sl).unwrap();
        let g = SignFunction::random(&mut random::rng(seed), l.num_vertices());
        let s = retraction_section(&l, &sl, &g).unwrap();
        prop_assert!(s.is_simplicial(&l, &sl));
        prop_assert_eq!(s.then(&proj).map, (0..l.num_vertices()).collect::<Vec<_>>());
    }

    #[test]
    fn complex_files_round_trip(l in seeded_complex()) {
        let json = serde_json::to_string(&l.to_file()).unwrap();
        let file: ComplexFile = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(SimplicialComplex::from_file(&file).unwrap(), l);
    }

    #[test]
    fn salvetti_boundaries_vanish(seed in any::<u64>(), n in 1usize..7) {
        let l = random_flag_complex(&mut random::rng(seed), n, 0.6);
        let t = salvetti(&l).unwrap();
        prop_assert!(t.boundary_matrices().iter().all(|m| m.is_zero()));
    }

    #[test]
    fn cyclic_indices(n in 1usize..40) {
        prop_assert_eq!(todd_coxeter(&corpus::cyclic(n), &[], 1000).index(), Some(n));
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn hom_counts_multiply_over_products(rels in prop::collection::vec(word(2, 6), 0..3), i in 0usize..8, j in 0usize..8) {
        let p = Presentation::new(corpus::letter_names(2), rels).unwrap();
        let small: Vec<FiniteGroup> = FiniteGroup::all_of_order_at_most_8().into_iter().filter(|g| g.order() <= 4).collect();
        let (a, b) = (&small[i % small.len()], &small[j % small.len()]);
        let ab = FiniteGroup::direct_product(a, b);
        prop_assert_eq!(hom_count(&p, &ab, 64).unwrap(), hom_count(&p, a, 64).unwrap() * hom_count(&p, b, 64).unwrap());
    }

    #[test]
    fn rset_certificates_check_out(rels in prop::collection::vec(word(2, 5), 1..3)) {
        let p = Presentation::new(corpus::letter_names(2), rels).unwrap();
        let g = [Word::new(vec![1]), Word::new(vec![2])];
        let budgets = Budgets { reductions: 20_000, witness_nodes: 20_000 };
        let r = r_set_enumerate(&p, &g, 3, budgets).unwrap();
        prop_assert!(r.positive_set().contains(&0));
        prop_assert!(r.verify(&p));
    }
}

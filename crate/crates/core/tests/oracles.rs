//! Known values computed by hand or quoted from the literature.

use fpforge_core::constructions::{nlcp_repair_m, sphere_link};
use fpforge_core::cubical::{level_set_complex, salvetti_homology, vertex_link};
use fpforge_core::enumeration::{hom_count, todd_coxeter, FiniteGroup};
use fpforge_core::homology::{reduced_homology, smith_normal_form};
use fpforge_core::iso::are_isomorphic;
use fpforge_core::presentation::{bb_presentation, edge_path_presentation, HeightSet};
use fpforge_core::{corpus, HomologyGroup, IntegerMatrix, Presentation, Ring};

fn torsion(g: &HomologyGroup) -> Vec<u64> {
    g.torsion.iter().map(|t| t.to_string().parse().unwrap()).collect()
}

#[test]
fn sphere_and_projective_plane() {
    let s2 = reduced_homology(&corpus::octahedron(), Ring::Z);
    assert_eq!(s2.degree(2), HomologyGroup::free(1));
    assert!(s2.degree(1).is_zero());

    for rp2 in [corpus::rp2_6(), corpus::rp2_barycentric()] {
        let h = reduced_homology(&rp2, Ring::Z);
        assert_eq!(torsion(&h.degree(1)), vec![2]);
        assert!(h.degree(2).is_zero());
        assert_eq!(reduced_homology(&rp2, Ring::Fp(2)).degree(2), HomologyGroup::free(1));
        assert!(reduced_homology(&rp2, Ring::Q).is_zero());
    }
}

#[test]
fn higman_complex() {
    let l = corpus::higman_flag();
    assert_eq!(l.f_vector(), vec![97, 336, 240]);
    assert!(l.is_flag());
    assert_eq!(l.has_nlcp(), Ok(true));
    assert!(reduced_homology(&l, Ring::Z).is_zero());
    assert_eq!(l.euler_characteristic(), 1);
}

#[test]
fn snf_of_small_matrices() {
    let m = IntegerMatrix::from_rows_i64(2, 2, &[vec![2, 4], vec![6, 8]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(), ["2", "4"]);
    let m = IntegerMatrix::from_rows_i64(3, 3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.rank(), 2);
    assert_eq!(s.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(), ["6"]);
}

#[test]
fn sphere_link_of_edge_is_a_square() {
    assert!(are_isomorphic(&sphere_link(&corpus::edge()), &corpus::square()).is_found());
    assert!(are_isomorphic(&sphere_link(&corpus::solid_triangle()), &corpus::octahedron()).is_found());
    assert_eq!(sphere_link(&corpus::point()).f_vector(), vec![2]);
}

#[test]
fn repair_of_a_path() {
    let l = corpus::path3();
    assert_eq!(l.has_nlcp(), Ok(false));
    let m = nlcp_repair_m(&l).unwrap().complex;
    assert_eq!(m.has_nlcp(), Ok(true));
    assert_eq!(m.is_full(&l), Ok(true));
    assert!(reduced_homology(&m, Ring::Z).is_zero());
}

#[test]
fn coset_enumeration_orders() {
    let cases = [
        (corpus::dihedral6(), 6),
        (corpus::cyclic(5), 5),
        (Presentation::parse("⟨i, j | i^4, i^2j^-2, j^-1iji⟩").unwrap(), 8),
        (Presentation::parse("<a, b | a^2, b^3, ababababab>").unwrap(), 60),
    ];
    for (p, order) in cases {
        assert_eq!(todd_coxeter(&p, &[], 10_000).index(), Some(order), "{p}");
    }
    assert_eq!(todd_coxeter(&corpus::higman_presentation(), &[], 2_000).index(), None);
}

#[test]
fn higman_group_has_no_small_quotients() {
    let p = corpus::higman_presentation();
    for g in FiniteGroup::all_of_order_at_most_8() {
        assert_eq!(hom_count(&p, &g, 8).unwrap(), 1, "{}", g.name);
    }
}

#[test]
fn octahedron_is_simply_connected() {
    let ep = edge_path_presentation(&corpus::octahedron(), "x+").unwrap();
    assert_eq!(ep.presentation.simplify().presentation.num_generators(), 0);
}

#[test]
fn cubical_examples() {
    assert_eq!(salvetti_homology(&corpus::square()).unwrap().ranks(), vec![1, 4, 4]);
    let t = fpforge_core::cubical::salvetti(&corpus::edge()).unwrap();
    assert!(are_isomorphic(&vertex_link(&t), &corpus::square()).is_found());
    let ls = level_set_complex(&corpus::square()).unwrap();
    assert_eq!(ls.homology.degree(1), HomologyGroup::free(4));
}

#[test]
fn square_family_abelianizations() {
    let sq = corpus::square();
    let gamma = [corpus::cycle_loop(4)];
    let ab = |s: &[i64]| bb_presentation(&sq, &gamma, &HeightSet::new(s.to_vec())).unwrap().presentation.abelianization();
    assert_eq!(ab(&[0]), HomologyGroup::free(4));
    assert_eq!(ab(&[0, 1]), HomologyGroup::free(3));
    assert_eq!(ab(&[0, 2]), HomologyGroup { rank: 3, torsion: vec![2u32.into()] });
}

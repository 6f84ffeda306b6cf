use num_bigint::BigInt;
use zacyclic::collapse::{free_faces, greedy_collapse, CollapseStrategy};
use zacyclic::constructions::{cone_over_graph, dunce_hat, shaded_complex, the_23_vertex_complex, weber_seifert_quotient};
use zacyclic::homology::{boundary_matrix, is_z_acyclic, reduced_homology_all, HomologyGroup};
use zacyclic::pi1::{
    abelianization, coset_enumeration, edge_path_presentation, find_epimorphism, tietze_simplify, verify_homomorphism,
    CosetOutcome, PermGroup, DEFAULT_MAX_COSETS,
};
use zacyclic::VertexLabel;

fn v(s: &str) -> VertexLabel {
    s.parse().unwrap()
}

#[test]
fn complex23_is_z_acyclic() {
    let k = the_23_vertex_complex().unwrap();
    assert!(boundary_matrix(&k, 1).unwrap().mul(&boundary_matrix(&k, 2).unwrap()).is_zero());
    let h = reduced_homology_all(&k);
    assert_eq!(h.len(), 3);
    assert!(h.iter().all(HomologyGroup::is_trivial));
    assert!(is_z_acyclic(&k));
}

#[test]
fn quotient_homology_selects_the_twist() {
    let poincare = weber_seifert_quotient(1).unwrap().chain_complex().homology(true);
    assert!(poincare.iter().all(HomologyGroup::is_trivial));
    let hyperbolic = weber_seifert_quotient(3).unwrap().chain_complex().homology(true);
    let five = BigInt::from(5);
    assert_eq!(hyperbolic[1].rank, 0);
    assert_eq!(hyperbolic[1].torsion, vec![five.clone(), five.clone(), five]);
}

#[test]
fn complex23_fundamental_group() {
    let k = the_23_vertex_complex().unwrap();
    let p = edge_path_presentation(&k, &v("B")).unwrap();
    assert_eq!(p.generator_count(), 54);
    assert_eq!(p.relators().len(), 54);
    assert!(abelianization(&p).is_trivial());
    let s = tietze_simplify(&p, 10_000, 1_000);
    eprintln!("simplified: {} (len {})", s.presentation, s.presentation.total_length());
    assert!(!s.budget_exceeded);
    assert!(s.presentation.generator_count() <= 6);
    assert!(abelianization(&s.presentation).is_trivial());
    let a5 = PermGroup::alternating5();
    let hom = find_epimorphism(&s.presentation, &a5, 8).unwrap().expect("A5 quotient");
    assert!(verify_homomorphism(&s.presentation, &hom, 5));
    assert_eq!(coset_enumeration(&s.presentation, DEFAULT_MAX_COSETS), CosetOutcome::Order(120));
}

#[test]
fn shaded_is_not_acyclic() {
    let s = shaded_complex().unwrap();
    let h = reduced_homology_all(&s);
    assert_eq!(h[1].rank, 3);
}

#[test]
fn dunce_hat_is_contractible_but_stuck() {
    let d = dunce_hat().unwrap();
    assert!(is_z_acyclic(&d));
    assert!(free_faces(&d).is_empty());
    let out = greedy_collapse(&d, &CollapseStrategy::Lexicographic);
    assert!(!out.collapsed_to_point);
    assert_eq!(out.complex, d);
    let base = d.vertices().iter().next().unwrap().clone();
    let s = tietze_simplify(&edge_path_presentation(&d, &base).unwrap(), 10_000, 1_000);
    assert_eq!(s.presentation.generator_count(), 0);
}

#[test]
fn cones_collapse() {
    for name in ["K5", "K33"] {
        let c = cone_over_graph(name).unwrap();
        assert!(is_z_acyclic(&c));
        assert!(greedy_collapse(&c, &CollapseStrategy::ApexFirst(v("x"))).collapsed_to_point);
    }
}

use graphlie::basis::structure_constants;
use graphlie::lie::{AlternatingMap, BasisLabel, GradedLieAlgebra, LieAlgebra};
use graphlie::{Rational, SimpleGraph, SparseVec, Subspace};

fn cherry() -> SimpleGraph {
    SimpleGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap()
}

/// Brute-force span of all pairwise brackets of the given vectors.
fn brute_bracket_span(a: &LieAlgebra, xs: &[SparseVec], ys: &[SparseVec]) -> Subspace {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            out.push(a.bracket(x, y));
        }
    }
    Subspace::span(a.dim(), &out).unwrap()
}

#[test]
fn heisenberg_bracket_of_vertices() {
    let a = structure_constants(&SimpleGraph::complete(2), 2).unwrap();
    let one = Rational::one;
    let zero = Rational::zero;
    let v1 = vec![one(), zero(), zero()];
    let v2 = vec![zero(), one(), zero()];
    assert_eq!(a.algebra().bracket_vectors(&v1, &v2).unwrap(), vec![zero(), zero(), one()]);
    let full = Subspace::full(3);
    assert_eq!(a.algebra().bracket_subspaces(&full, &full).unwrap().dim(), 1);
    assert!(a.algebra().bracket_subspaces(&full, &Subspace::zero(3)).unwrap().is_zero());
}

#[test]
fn derived_of_g1_vanishes_for_free_three_step_on_two() {
    let a = structure_constants(&SimpleGraph::complete(2), 3).unwrap();
    let g1 = a.degree_at_least(2);
    let got = a.algebra().bracket_subspaces(&g1, &g1).unwrap();
    let units: Vec<SparseVec> = (2..a.dim()).map(SparseVec::unit).collect();
    assert_eq!(got, brute_bracket_span(a.algebra(), &units, &units));
    assert!(got.is_zero());
}

#[test]
fn lower_central_series_examples() {
    let c4 = structure_constants(&SimpleGraph::cycle(4), 2).unwrap();
    assert_eq!(c4.algebra().lower_central_dims(), vec![8, 4, 0]);
    let p = structure_constants(&cherry(), 4).unwrap();
    assert_eq!(p.algebra().lower_central_dims(), vec![20, 17, 15, 10, 0]);
    assert_eq!(p.algebra().nilpotency_step(), Some(4));
}

#[test]
fn centers() {
    for g in [SimpleGraph::cycle(4), SimpleGraph::path(4), SimpleGraph::complete(4)] {
        let a = structure_constants(&g, 2).unwrap();
        let edges = Subspace::coordinate(a.dim(), g.order()..a.dim()).unwrap();
        assert_eq!(a.algebra().center(), edges);
        assert_eq!(a.algebra().center().dim(), g.edge_count());
    }
    let k2k1 = structure_constants(&SimpleGraph::from_edges(3, &[(0, 1)]).unwrap(), 2).unwrap();
    assert_eq!(k2k1.algebra().center(), Subspace::coordinate(4, [2, 3]).unwrap());
    assert_eq!(LieAlgebra::abelian(5).center().dim(), 5);
}

#[test]
fn associated_graded_of_graph_algebras_is_identity() {
    for (g, k) in [(cherry(), 4), (SimpleGraph::cycle(4), 2), (SimpleGraph::complete(3), 3)] {
        let a = structure_constants(&g, k).unwrap();
        let gr = a.associated_graded().unwrap();
        assert_eq!(gr, a);
    }
}

#[test]
fn associated_graded_of_a_filtered_algebra() {
    // [e0, e1] = e2 + e3, [e0, e2] = e3: the adapted basis keeps e3 in degree 3.
    let mut m = AlternatingMap::new(4);
    m.set(0, 1, SparseVec::from_pairs([(2, Rational::one()), (3, Rational::one())]));
    m.set(0, 2, SparseVec::unit(3));
    let a = LieAlgebra::from_map(m);
    assert!(a.jacobi_report().is_empty());
    let gr = a.associated_graded().unwrap();
    assert_eq!(gr.grading(), &[2, 1, 1]);
    assert!(gr.grading_support_check().unwrap());
    assert_eq!(gr.algebra().lower_central_dims(), a.lower_central_dims());
}

#[test]
fn corrupted_tensor_is_detected() {
    // In g(3, K2) every triple bracket has degree 4, so a sign flip there
    // still satisfies Jacobi; g(3, K3) has the triple (v1, v2, v3).
    let a = structure_constants(&SimpleGraph::complete(2), 3).unwrap();
    let mut map = a.algebra().structure().clone();
    map.set(1, 2, map.get(1, 2).neg());
    assert!(LieAlgebra::from_map(map).jacobi_report().is_empty());

    let a = structure_constants(&SimpleGraph::complete(3), 3).unwrap();
    assert!(a.algebra().jacobi_report().is_empty());
    let v23 = a.labels().iter().position(|l| l.label == "[v2,v3]").unwrap();
    let mut map = a.algebra().structure().clone();
    map.set(0, v23, map.get(0, v23).neg());
    assert_eq!(LieAlgebra::from_map(map).jacobi_report(), vec![(0, 1, 2)]);
}

#[test]
fn grading_support_law_detects_moved_mass() {
    let a = structure_constants(&cherry(), 3).unwrap();
    assert!(a.grading_support_check().unwrap());
    // Move [v1, [v1, v2]]'s coefficient onto [v1, [v1, v3]], a different block.
    let mut map = a.algebra().structure().clone();
    let target = a.labels().iter().position(|l| l.label == "[v1,[v1,v3]]").unwrap();
    map.set(0, 3, SparseVec::unit(target));
    let corrupted =
        GradedLieAlgebra::new(LieAlgebra::from_map(map), 3, a.grading().to_vec(), a.labels().to_vec()).unwrap();
    assert!(!corrupted.grading_support_check().unwrap());

    let unlabeled: Vec<BasisLabel> =
        a.labels().iter().map(|l| BasisLabel { multidegree: None, ..l.clone() }).collect();
    let no_md = GradedLieAlgebra::new(a.algebra().clone(), 3, a.grading().to_vec(), unlabeled).unwrap();
    assert!(no_md.grading_support_check().unwrap());
    let mut partial = a.labels().to_vec();
    partial[5].multidegree = None;
    let partial = GradedLieAlgebra::new(a.algebra().clone(), 3, a.grading().to_vec(), partial).unwrap();
    assert!(partial.grading_support_check().is_err());
}

#[test]
fn disjoint_union_splits_dimensions() {
    let g1 = SimpleGraph::path(3);
    let g2 = SimpleGraph::complete(2);
    for k in 2..=4 {
        let a = structure_constants(&g1.disjoint_union(&g2), k).unwrap();
        let b = structure_constants(&g1, k).unwrap();
        let c = structure_constants(&g2, k).unwrap();
        let sum: Vec<usize> = b.grading().iter().zip(c.grading()).map(|(x, y)| x + y).collect();
        assert_eq!(a.grading(), sum.as_slice());
        // No bracket mixes the two components.
        for ((i, j), _) in a.algebra().structure().iter() {
            let md_i = a.labels()[i].multidegree.as_ref().unwrap();
            let md_j = a.labels()[j].multidegree.as_ref().unwrap();
            let side = |md: &graphlie::basis::MultiDegree| md.0[..3].iter().sum::<usize>() > 0;
            assert_eq!(side(md_i), side(md_j));
        }
    }
}

#[test]
fn json_round_trip_of_graph_algebra() {
    let a = structure_constants(&cherry(), 4).unwrap();
    let v = a.to_json();
    assert_eq!(v["grading"], serde_json::json!([3, 2, 5, 10]));
    assert_eq!(GradedLieAlgebra::from_json(&v).unwrap(), a);
    let plain = LieAlgebra::from_json(&v).unwrap();
    assert_eq!(&plain, a.algebra());
}

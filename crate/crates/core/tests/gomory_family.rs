mod common;

use common::{face, faces, root};
use toric_relax::fiber::fiber_points;
use toric_relax::hilbert::{gomory_cost, normality_report};
use toric_relax::*;

fn matrix() -> IntMatrix {
    IntMatrix::from_i64(&[
        vec![1, 0, 1, 1, 1, 1],
        vec![0, 1, 1, 1, 2, 2],
        vec![0, 0, 1, 2, 3, 4],
    ])
    .unwrap()
}

#[test]
fn gomory_family_pairs() {
    let f = Family::new(matrix(), vec![0, 0, 1, 1, 0, 3]).unwrap();
    assert!(f.generic);
    assert_eq!(
        f.delta.maximal_faces(),
        faces(&[&[1, 2, 5], &[1, 4, 5], &[2, 5, 6], &[4, 5, 6]])
    );
    let got: Vec<(Face, Vec<i64>)> = f
        .decomposition
        .pairs()
        .iter()
        .map(|p| (p.face, p.root.clone()))
        .collect();
    let mut expect = vec![
        (face(&[1, 2, 5]), root("0", 6)),
        (face(&[1, 2, 5]), root("e3", 6)),
        (face(&[1, 2, 5]), root("e4", 6)),
        (face(&[1, 4, 5]), root("0", 6)),
        (face(&[2, 5, 6]), root("0", 6)),
        (face(&[4, 5, 6]), root("0", 6)),
    ];
    expect.sort();
    assert_eq!(got, expect);
    assert!(f.is_gomory_family());
    // every program is solved by a relaxation on a maximal face
    for b in [[2, 3, 5], [3, 5, 8], [4, 6, 9]] {
        let x = f.solve(&b).unwrap();
        assert_eq!(f.solve_via_pairs(&b).unwrap(), x);
    }
}

#[test]
fn delta_normality_of_both_triangulations() {
    let a = matrix();
    let single = RegularTriangulation::from_faces(&a, &[face(&[1, 2, 6])]).unwrap();
    let r = normality_report(&a, Some(&single), false).unwrap();
    assert!(r.normal);
    assert!(r.delta.unwrap().delta_normal);

    let f = Family::new(a.clone(), vec![0, 0, 1, 1, 0, 3]).unwrap();
    let r = normality_report(&a, Some(&f.delta), false).unwrap();
    let delta = r.delta.unwrap();
    assert!(!delta.delta_normal);
    assert_eq!(delta.missing[&face(&[1, 2, 5])], vec![vec![1, 2, 2]]);
}

#[test]
fn constructed_gomory_cost() {
    let a = matrix();
    let single = RegularTriangulation::from_faces(&a, &[face(&[1, 2, 6])]).unwrap();
    let g = gomory_cost(&a, &single).unwrap();
    assert_eq!(regular_subdivision(&a, &g.cost).maximal_faces(), single.maximal_faces());
    let roots: Vec<(Face, Vec<i64>)> = g
        .decomposition
        .pairs()
        .iter()
        .map(|p| (p.face, p.root.clone()))
        .collect();
    let sigma = face(&[1, 2, 6]);
    let mut expect: Vec<(Face, Vec<i64>)> = ["0", "e3", "e4", "e5"]
        .iter()
        .map(|r| (sigma, root(r, 6)))
        .collect();
    expect.sort();
    assert_eq!(roots, expect);
    // rebuilt from scratch, the cost gives the same family
    let f = Family::new(a, g.cost.clone()).unwrap();
    assert!(f.generic);
    assert!(f.is_gomory_family());
}

#[test]
fn printed_representative_cost_is_not_gomory() {
    let a = matrix();
    let f = Family::new(a.clone(), vec![0, 0, 4, 4, 1, 0]).unwrap();
    assert!(f.generic);
    assert_eq!(f.delta.maximal_faces(), faces(&[&[1, 2, 6]]));
    assert!(!f.is_gomory_family());
    // b = a4 + a6 has a single feasible point, which Gomory's relaxation misses
    let b = [2, 3, 6];
    assert_eq!(fiber_points(&a, &b).unwrap(), vec![root("e4+e6", 6)]);
    let r = f.relax(face(&[1, 2, 6]), &b).unwrap();
    assert!(!r.solves_ip);
    assert_eq!(r.x, root("2e5", 6).iter().zip(root("e2", 6)).map(|(x, y)| x - y).collect::<Vec<_>>());
}

#[test]
fn not_delta_normal_is_rejected() {
    let a = matrix();
    let f = Family::new(a.clone(), vec![0, 0, 1, 1, 0, 3]).unwrap();
    match gomory_cost(&a, &f.delta) {
        Err(Error::NotDeltaNormal { witness, .. }) => assert_eq!(witness, vec!["1", "2", "2"]),
        other => panic!("unexpected {other:?}"),
    }
}

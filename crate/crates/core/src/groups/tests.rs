use super::*;
use crate::arith::lattice::IntMatrix;
use crate::arith::{Cyclotomic, Rational};
use crate::g422;
use crate::linalg::Matrix;

#[test]
fn g422_order_classes_and_centralizers() {
    let g = g422::group().unwrap();
    assert_eq!(g.order(), 16);
    let cs = g.classes();
    assert_eq!(cs.len(), 10);
    let mut sizes = cs.sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2]);
    let mut by_label = [0usize; 10];
    for c in &cs.classes {
        let k = g422::class_number(g.element(c.representative)).unwrap();
        by_label[k - 1] = c.centralizer_order;
        for &m in &c.members {
            assert_eq!(g422::class_number(g.element(m)), Some(k));
        }
    }
    assert_eq!(by_label, [16, 8, 8, 8, 16, 16, 8, 16, 8, 8]);
    assert_eq!(g.center().len(), 4);
}

#[test]
fn swap_composition_and_identity() {
    let s = g422::element(1, 0, 1);
    assert_eq!(s.compose(&s).unwrap(), g422::element(1, 1, 0));
    let id = s.identity_like();
    assert_eq!(id.compose(&s).unwrap(), s);
}

#[test]
fn centralizer_of_d3_is_k() {
    let g = g422::group().unwrap();
    let h = g.centralizer(&g422::element(0, 2, 0)).unwrap();
    assert_eq!(h.order(), 8);
    assert!(h.elements().iter().all(|e| g422::coordinates(e).unwrap().2 == 0));
    assert!(g.centralizer(&g422::element(0, 0, 1)).unwrap().order() == 8);
    let outside = LinearElement::diagonal(&[Cyclotomic::from_int(2), Cyclotomic::one()]);
    assert_eq!(g.centralizer(&outside).unwrap_err(), GroupError::ElementNotInGroup);
}

#[test]
fn pseudo_reflections() {
    let d = |a: i64, b: i64| LinearElement::diagonal(&[Cyclotomic::from_int(a), Cyclotomic::from_int(b)]);
    assert!(d(1, -1).is_pseudo_reflection());
    assert!(!d(-1, -1).is_pseudo_reflection());
    assert!(!d(1, 1).is_pseudo_reflection());
    assert!(g422::element(0, 0, 1).is_pseudo_reflection());
}

#[test]
fn closure_bound_is_enforced() {
    let m = LinearElement::new(Matrix::from_rows(vec![vec![Cyclotomic::from_int(2)]])).unwrap();
    assert_eq!(
        FiniteGroup::generate(&[m], 50).unwrap_err(),
        GroupError::ClosureExceeded { bound: 50 }
    );
}

#[test]
fn trivial_group_has_one_class() {
    let g = FiniteGroup::generate(&[LinearElement::identity(2)], 4).unwrap();
    assert_eq!(g.order(), 1);
    assert_eq!(g.classes().len(), 1);
}

#[test]
fn torus_composition_is_affine() {
    let half = Rational::new(1, 2).unwrap();
    let neg = TorusElement::new(
        IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]),
        vec![half.clone(), Rational::zero()],
    )
    .unwrap();
    let sq = neg.compose(&neg).unwrap();
    assert!(sq.is_identity());
    let t = TorusElement::translation_by(vec![half.clone(), half.clone()]);
    assert!(t.compose(&t).unwrap().is_identity());
    assert_eq!(t.apply(&[half.clone(), Rational::zero()]), vec![Rational::zero(), half]);
}

#[test]
fn large_groups_use_a_table() {
    // μ₁₂ × μ₂₄ acting diagonally, order 288
    let a = LinearElement::diagonal(&[Cyclotomic::root_of_unity(12, 1), Cyclotomic::one()]);
    let b = LinearElement::diagonal(&[Cyclotomic::one(), Cyclotomic::root_of_unity(24, 1)]);
    let g = FiniteGroup::generate(&[a, b], 1000).unwrap();
    assert_eq!(g.order(), 288);
    assert!(g.table.is_some());
    assert_eq!(g.classes().len(), 288);
}

proptest::proptest! {
    #[test]
    fn class_partition_is_conjugation_invariant(h in 0usize..16, x in 0usize..16) {
        let g = g422::group().unwrap();
        let cs = g.classes();
        proptest::prop_assert_eq!(cs.class_of[g.conjugate(x, h)], cs.class_of[x]);
        let total: usize = cs.sizes().iter().sum();
        proptest::prop_assert_eq!(total, 16);
        for c in &cs.classes {
            proptest::prop_assert_eq!(c.size() * c.centralizer_order, 16);
        }
    }
}

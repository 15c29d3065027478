use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::modules::Poly;

fn c(s: &str) -> Cyclotomic {
    Poly::parse(s).unwrap().coeff(0, 0)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn gauss(rows: &[[&str; 2]]) -> TorusElement {
    let m: Vec<Vec<Cyclotomic>> = rows.iter().map(|r| r.iter().map(|s| c(s)).collect()).collect();
    TorusElement::linear_only(realify(&m, &[Cm::gaussian(), Cm::gaussian()]).unwrap()).unwrap()
}

fn type_c() -> TorusAction {
    let alpha = gauss(&[["-1", "1+i"], ["0", "1"]]);
    let beta = gauss(&[["-i", "i-1"], ["0", "i"]]);
    let gamma = gauss(&[["-1", "0"], ["i-1", "1"]]);
    TorusAction::generate(&[alpha, beta, gamma], vec![Cm::gaussian(), Cm::gaussian()], 64).unwrap()
}

fn lattice_action() -> TorusAction {
    let gens = [
        gauss(&[["-1", "0"], ["0", "1"]]),
        gauss(&[["-i", "0"], ["0", "i"]]),
        gauss(&[["0", "1"], ["1", "0"]]),
    ];
    TorusAction::generate(&gens, vec![Cm::gaussian(), Cm::gaussian()], 64).unwrap()
}

fn all_points(n: i64) -> impl Iterator<Item = TorsionPoint> {
    use itertools::Itertools;
    (0..4).map(move |_| 0..n).multi_cartesian_product().map(move |v| TorsionPoint::new(v.into_iter().map(|k| q(k, n)).collect()))
}

fn t0() -> [Rational; 2] {
    [q(1, 2), q(1, 2)]
}

#[test]
fn realification_of_gaussian_entries() {
    let m = realify(&[vec![c("i")]], &[Cm::gaussian()]).unwrap();
    assert_eq!(m.to_rows(), vec![vec![0, -1], vec![1, 0]]);
    let m = realify(&[vec![c("2 - 3*i")]], &[Cm::gaussian()]).unwrap();
    assert_eq!(m.to_rows(), vec![vec![2, 3], vec![-3, 2]]);
    assert!(realify(&[vec![c("1/2")]], &[Cm::gaussian()]).is_err());
    let w = realify(&[vec![c("w")]], &[Cm::eisenstein()]).unwrap();
    assert_eq!(w.to_rows(), vec![vec![0, -1], vec![1, -1]]);
    assert!(Cm::from_matrix(IntMatrix::from_rows(&[vec![0, -2], vec![1, 0]])).is_err());
}

#[test]
fn gamma_is_an_involution_fixing_t0_e() {
    let a = type_c();
    let gamma = gauss(&[["-1", "0"], ["i-1", "1"]]);
    assert!(gamma.compose(&gamma).unwrap().is_identity());
    let p = TorsionPoint::new(vec![q(1, 2), q(1, 2), q(0, 1), q(0, 1)]);
    assert_eq!(apply_affine(&gamma, &p).unwrap(), p);
    assert_eq!(a.group().order(), 16);
    let t = TorusElement::translation_by(vec![q(1, 2), q(1, 2), q(0, 1), q(0, 1)]);
    assert!(t.compose(&t).unwrap().is_identity());
}

#[test]
fn type_c_classes_and_fixed_dimensions() {
    let a = type_c();
    let g = a.group();
    let cs = g.classes();
    assert_eq!(cs.len(), 10);
    let mut sizes = cs.sizes();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2]);
    let mut dims: Vec<usize> = cs
        .classes
        .iter()
        .map(|cl| fixed_dimension(g.element(cl.representative)).unwrap())
        .collect();
    dims.sort_unstable_by(|x, y| y.cmp(x));
    assert_eq!(dims, vec![2, 1, 1, 1, 0, 0, 0, 0, 0, 0]);
    for cl in &cs.classes {
        let d = fixed_dimension(g.element(cl.representative)).unwrap();
        for &m in &cl.members {
            assert_eq!(fixed_dimension(g.element(m)).unwrap(), d);
        }
    }
}

#[test]
fn type_c_components() {
    let alpha = gauss(&[["-1", "1+i"], ["0", "1"]]);
    let gamma = gauss(&[["-1", "0"], ["i-1", "1"]]);
    let beta = gauss(&[["-i", "i-1"], ["0", "i"]]);
    // {2x = (1+i)y}: components indexed by Λ/(2Λ + (1+i)Λ) = Λ/(1+i)Λ.
    let a = fixed_components(&alpha, 4).unwrap();
    assert_eq!((a.dimension, a.component_count), (1, 2));
    assert_eq!(a.components.len(), 2);
    // brute force: each component is a translate of a subtorus with 16 points of order 4
    let brute = all_points(4).filter(|p| apply_affine(&alpha, p).unwrap() == *p).count();
    assert_eq!(brute, 32);
    assert_eq!(a.point_count(), 32);
    let g = fixed_components(&gamma, 4).unwrap();
    assert_eq!((g.dimension, g.component_count), (1, 2));
    // (1+i)(x - iy) = 0: two components, x - iy ∈ {e, t0}
    let beta_gamma = beta.compose(&gamma).unwrap();
    let bg = fixed_components(&beta_gamma, 4).unwrap();
    assert_eq!((bg.dimension, bg.component_count), (1, 2));
    let brute = all_points(4).filter(|p| apply_affine(&beta_gamma, p).unwrap() == *p).count();
    assert_eq!(brute, 32);
    let id = fixed_components(&gauss(&[["1", "0"], ["0", "1"]]), 2).unwrap();
    assert_eq!((id.dimension, id.component_count), (2, 1));
    assert_eq!(id.point_count(), 16);
}

#[test]
fn minus_identity_fixes_two_torsion() {
    let minus = gauss(&[["-1", "0"], ["0", "-1"]]);
    assert_eq!(fixed_dimension(&minus).unwrap(), 0);
    assert_eq!(fixed_torsion_points(&minus, 2).len(), 16);
    assert_eq!(fixed_torsion_points(&minus, 4).len(), 16);
    let census = fixed_components(&minus, 2).unwrap();
    assert_eq!(census.component_count, 16);
}

#[test]
fn torsion_bound_too_small() {
    let shift = TorusElement::new(IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]), vec![q(1, 3), q(0, 1)]).unwrap();
    match fixed_components(&shift, 2) {
        Err(TorusError::TorsionBoundTooSmall { needed, .. }) => assert_eq!(needed % 3, 0),
        other => panic!("{other:?}"),
    }
    let free = TorusElement::translation_by(vec![q(1, 2), q(0, 1)]);
    assert!(fixed_torsion_points(&free, 4).is_empty());
    assert!(fixed_components(&free, 4).unwrap().components.is_empty());
}

#[test]
fn odd_kernel_rank_is_rejected() {
    let e = TorusElement::linear_only(IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]])).unwrap();
    assert_eq!(fixed_dimension(&e), Err(TorusError::OddKernelRank(1)));
}

#[test]
fn orbits_on_two_torsion() {
    let a = type_c();
    let points = fixed_torsion_points(&gauss(&[["-1", "0"], ["0", "-1"]]), 2);
    let census = orbits_and_stabilizers(&a, &points);
    assert_eq!(census.len(), 7);
    assert_eq!(census.closure_added, 0);
    let t = t0();
    for orbit in &census.orbits {
        assert_eq!(orbit.points.len() * orbit.stabilizer.len(), 16);
        let p = &orbit.points[0];
        let special = (0..2).all(|i| {
            let (u, v) = p.factor(i);
            (u.is_zero() && v.is_zero()) || (*u == t[0] && *v == t[1])
        });
        assert_eq!(orbit.stabilizer.len(), if special { 16 } else { 4 }, "{p}");
    }
    assert_eq!(burnside_count(&a, 2), Rational::from_int(7));
}

#[test]
fn one_dimensional_stabilizers_have_order_two() {
    let a = type_c();
    let gamma = gauss(&[["-1", "0"], ["i-1", "1"]]);
    let pts = fixed_torsion_points(&gamma, 4);
    let generic: Vec<TorsionPoint> = pts.into_iter().filter(|p| p.order() == 4).collect();
    assert!(!generic.is_empty());
    let census = orbits_and_stabilizers(&a, &generic);
    assert!(census.orbits.iter().all(|o| o.stabilizer.len() == 2));
}

#[test]
fn isogeny_kernels() {
    let nu = realify(&[vec![c("1"), c("-1")], vec![c("0"), c("i-1")]], &[Cm::gaussian(), Cm::gaussian()]).unwrap();
    let k = isogeny_kernel(&nu).unwrap();
    assert_eq!(k.order, 2);
    assert_eq!(span_points(&k.generators, 4), vec![TorsionPoint::zero(4), TorsionPoint::new(vec![q(1, 2); 4])]);
    assert_eq!(isogeny_kernel(&IntMatrix::identity(4)).unwrap().order, 1);
    let two = isogeny_kernel(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]])).unwrap();
    assert_eq!((two.order, two.invariant_factors.clone()), (4, vec![2, 2]));
    assert_eq!(two.order as i64, nu.det().to_string().parse::<i64>().unwrap().abs() * 2);
    assert_eq!(isogeny_kernel(&IntMatrix::zeros(2, 2)), Err(TorusError::SingularMatrix));
}

#[test]
fn conjugating_by_nu_gives_type_c() {
    let nu = realify(&[vec![c("1"), c("-1")], vec![c("0"), c("i-1")]], &[Cm::gaussian(), Cm::gaussian()]).unwrap();
    let lambda = realify(&[vec![c("-1"), c("0")], vec![c("0"), c("1")]], &[Cm::gaussian(), Cm::gaussian()]).unwrap();
    let alpha = gauss(&[["-1", "1+i"], ["0", "1"]]);
    // ν λ = α ν
    assert_eq!(nu.checked_mul(&lambda), alpha.linear().checked_mul(&nu));
}

#[test]
fn smoothness_of_a_and_b() {
    let a = smoothness_check(&type_c(), 4);
    assert!(a.passes(), "{:?}", a.witnesses);
    assert!(a.checked_points > 0);
    let b = smoothness_check(&lattice_action(), 2);
    assert!(!b.passes());
    let w = &b.witnesses[0];
    assert!(w.reflection_subgroup_order < w.stabilizer_order);
    let free = TorusAction::generate(
        &[TorusElement::translation_by(vec![q(1, 2), q(0, 1), q(0, 1), q(0, 1)])],
        vec![Cm::gaussian(), Cm::gaussian()],
        4,
    )
    .unwrap();
    let v = smoothness_check(&free, 4);
    assert!(v.passes() && v.checked_points == 0);
}

#[test]
fn s3_three_cycle_fixes_diagonal_three_torsion() {
    let cycle = TorusElement::linear_only(
        realify(&[vec![c("0"), c("1")], vec![c("-1"), c("-1")]], &[Cm::Generic, Cm::Generic]).unwrap(),
    )
    .unwrap();
    let pts = fixed_torsion_points(&cycle, 3);
    assert_eq!(pts.len(), 9);
    for p in &pts {
        assert_eq!(p.factor(0), p.factor(1));
    }
    assert_eq!(fixed_dimension(&cycle).unwrap(), 0);
    let swap = TorusElement::linear_only(
        realify(&[vec![c("0"), c("1")], vec![c("1"), c("0")]], &[Cm::Generic, Cm::Generic]).unwrap(),
    )
    .unwrap();
    let f = fixed_components(&swap, 3).unwrap();
    assert_eq!((f.dimension, f.component_count), (1, 1));
}

#[test]
fn generic_factors_reject_complex_entries() {
    assert!(realify(&[vec![c("i")]], &[Cm::Generic]).is_err());
    let rot = TorusElement::linear_only(IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])).unwrap();
    let g = Arc::new(FiniteGroup::generate(&[rot], 8).unwrap());
    assert!(matches!(TorusAction::new(g, vec![Cm::Generic]), Err(TorusError::NotHolomorphic(_))));
}

fn descent_action(with_h: bool) -> TorusAction {
    let delta = TorusElement::translation_by(vec![q(1, 2); 4]);
    let mut gens = vec![delta];
    if with_h {
        gens.push(gauss(&[["-1", "0"], ["0", "-1"]]));
    }
    TorusAction::generate(&gens, vec![Cm::gaussian(), Cm::gaussian()], 64).unwrap()
}

#[test]
fn descent_bijection() {
    let report = descent_census(&descent_action(true), 4).unwrap();
    assert!(report.passes(), "{report:?}");
    assert_eq!(report.rows.len(), 2);
    let translations_only = descent_census(&descent_action(false), 4).unwrap();
    assert!(translations_only.passes());
    assert_eq!(translations_only.rows.len(), 1);
    // 256 points of order dividing 4, paired by the free translation
    assert_eq!(translations_only.rows[0].quotient_orbits, 128);
    let trivial = TorusAction::generate(
        &[gauss(&[["-1", "0"], ["0", "-1"]])],
        vec![Cm::gaussian(), Cm::gaussian()],
        8,
    )
    .unwrap();
    assert!(descent_census(&trivial, 2).unwrap().passes());
}

#[test]
fn descent_rejects_non_free_translations() {
    let a = type_c();
    // no translations at all: K trivial, H = G
    assert!(descent_census(&a, 2).unwrap().passes());
    let shifted = TorusElement::new(IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]), vec![q(1, 2), q(0, 1)]).unwrap();
    let g = TorusAction::generate(&[shifted], vec![Cm::gaussian()], 8).unwrap();
    assert!(matches!(descent_census(&g, 2), Err(TorusError::NotSplit(_))));
}

proptest! {
    #[test]
    fn fixed_counts_are_conjugation_invariant(g in 0usize..16, h in 0usize..16) {
        let a = type_c();
        let grp = a.group();
        let conj = grp.conjugate(g, h);
        prop_assert_eq!(
            fixed_torsion_points(grp.element(g), 4).len(),
            fixed_torsion_points(grp.element(conj), 4).len()
        );
    }

    #[test]
    fn fixed_points_are_fixed(g in 0usize..16, n in 1u32..5) {
        let a = type_c();
        let e = a.group().element(g);
        for p in fixed_torsion_points(e, n) {
            prop_assert_eq!(apply_affine(e, &p).unwrap(), p.clone());
            prop_assert!((n as u64).is_multiple_of(p.order()));
        }
    }
}

#[test]
fn orbit_count_matches_burnside() {
    let a = type_c();
    for n in [1u32, 2, 4] {
        let orbits = orbit_count(&a, n).unwrap();
        assert_eq!(Rational::from_int(orbits as i64), burnside_count(&a, n), "n = {n}");
    }
    assert_eq!(orbit_count(&a, 2), Some(7));
}

#[test]
fn type_c_census() {
    let census = msod_census(&type_c(), 4).unwrap();
    assert_eq!(census.len(), 10);
    assert_eq!(census.iter().map(|e| e.class_size).sum::<usize>(), 16);
    let dims: Vec<usize> = census.iter().map(|e| e.dimension).collect();
    assert_eq!(dims, vec![2, 1, 1, 1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(components_by_dimension(&census), vec![(2, 1), (1, 6), (0, 27)]);
}

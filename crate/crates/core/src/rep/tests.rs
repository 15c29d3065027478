use super::*;
use crate::g422;
use crate::groups::LinearElement;

fn table() -> (FiniteGroup<LinearElement>, CharacterTable) {
    let g = g422::group().unwrap();
    let t = g422::labeled_table(&g).unwrap();
    (g, t)
}

fn class_of(g: &FiniteGroup<LinearElement>, e: &LinearElement) -> usize {
    g.classes().class_of[g.index_of(e).unwrap()]
}

fn mults(t: &CharacterTable, c: &Character) -> Vec<(String, u64)> {
    decompose_character(c, t)
        .unwrap()
        .into_iter()
        .zip(t.labels())
        .filter(|(m, _)| *m > 0)
        .map(|(m, l)| (l.clone(), m))
        .collect()
}

fn set(items: &[&str]) -> Vec<(String, u64)> {
    let mut v: Vec<(String, u64)> = items.iter().map(|s| (s.to_string(), 1)).collect();
    let order = |l: &str| g422::IRREP_LABELS.iter().position(|x| *x == l).unwrap();
    v.sort_by_key(|(l, _)| order(l));
    v
}

#[test]
fn g422_table_shape() {
    let (g, t) = table();
    assert_eq!(t.labels(), g422::IRREP_LABELS.map(String::from));
    let mut degrees = t.degrees();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
    assert!(t.rows_orthonormal());
    assert!(t.columns_orthogonal());
    let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
    assert_eq!(sq as usize, g.order());
    for chi in &t.irreducibles()[..8] {
        assert!(chi.tensor(chi).unwrap() == Character::trivial(g.classes()));
    }
}

#[test]
fn natural_character_values() {
    let (g, t) = table();
    let c = class_of(&g, &g422::element(1, 1, 0));
    let v = g422::natural(&g).unwrap().character(&g);
    assert_eq!(*v.value(c), &Cyclotomic::from_int(2) * &g422::xi_pow(1));
    assert_eq!(*v.dual().value(c), &Cyclotomic::from_int(-2) * &g422::xi_pow(1));
    assert_eq!(v.inner_product(&v).unwrap(), Cyclotomic::one());
    assert_eq!(t.get("V").unwrap(), &v);
    let wedge = t.get("chi2chi4").unwrap();
    let det = trace_character(&g, |e| Matrix::from_rows(vec![vec![e.matrix().det()]])).unwrap();
    assert_eq!(&det, wedge);
}

#[test]
fn tensor_decompositions() {
    let (_, t) = table();
    let v = t.get("V").unwrap();
    let vd = t.get("Vdual").unwrap();
    assert_eq!(mults(&t, &v.tensor(vd).unwrap()), set(&["1", "chi3", "chi4", "chi3chi4"]));
    assert_eq!(
        mults(&t, &v.tensor(v).unwrap()),
        set(&["chi2", "chi2chi3", "chi2chi4", "chi2chi3chi4"])
    );
    for twist in ["chi2chi4", "chi2chi3", "chi2chi3chi4", "chi2"] {
        assert_eq!(&v.tensor(t.get(twist).unwrap()).unwrap(), vd, "V ⊗ {twist}");
    }
}

#[test]
fn regular_character_multiplicities_are_degrees() {
    let (g, t) = table();
    let cs = g.classes();
    let mut values = vec![Cyclotomic::zero(); cs.len()];
    values[0] = Cyclotomic::from_int(16);
    let reg = Character::new(cs, values);
    let m = decompose_character(&reg, &t).unwrap();
    assert_eq!(m.iter().map(|&x| x as i64).collect::<Vec<_>>(), t.degrees());
}

#[test]
fn virtual_characters_are_rejected() {
    let (g, t) = table();
    let neg = Character::trivial(g.classes()).scaled(-1);
    assert!(matches!(
        decompose_character(&neg, &t),
        Err(RepError::NonIntegralMultiplicity { .. })
    ));
}

#[test]
fn invariant_factors() {
    let g = g422::group().unwrap();
    let k_idx: Vec<usize> = (0..16).filter(|&i| g422::coordinates(g.element(i)).unwrap().2 == 0).collect();
    let k = g.subgroup(&k_idx).unwrap();
    let s = abelian_invariant_factors(&k).unwrap();
    assert_eq!(s.orders, vec![2, 4]);
    for (gen, ord) in s.generators.iter().zip(&s.orders) {
        assert_eq!(k.element_order(*gen) as u64, *ord);
    }
    assert_eq!(abelian_invariant_factors(&g).unwrap_err(), RepError::NotAbelian);

    let w = Cyclotomic::root_of_unity(3, 1);
    let mu3 = FiniteGroup::generate(
        &[
            LinearElement::diagonal(&[w.clone(), Cyclotomic::one()]),
            LinearElement::diagonal(&[Cyclotomic::one(), w]),
        ],
        20,
    )
    .unwrap();
    assert_eq!(abelian_invariant_factors(&mu3).unwrap().orders, vec![3, 3]);
    let trivial = FiniteGroup::generate(&[LinearElement::identity(1)], 2).unwrap();
    assert!(abelian_invariant_factors(&trivial).unwrap().orders.is_empty());
}

#[test]
fn small_tables() {
    let s2 = FiniteGroup::generate(&[LinearElement::new(Matrix::from_ints(&[vec![0, 1], vec![1, 0]])).unwrap()], 4)
        .unwrap();
    assert_eq!(character_table(&s2).unwrap().degrees(), vec![1, 1]);
    let s3 = FiniteGroup::generate(
        &[
            LinearElement::new(Matrix::from_ints(&[vec![0, -1], vec![1, -1]])).unwrap(),
            LinearElement::new(Matrix::from_ints(&[vec![0, 1], vec![1, 0]])).unwrap(),
        ],
        10,
    )
    .unwrap();
    let t = character_table(&s3).unwrap();
    assert_eq!(t.degrees(), vec![1, 1, 2]);
    assert!(t.rows_orthonormal() && t.columns_orthogonal());
    for (chi, rho) in t.irreducibles().iter().zip(t.realizations()) {
        rho.check_homomorphism(&s3).unwrap();
        assert_eq!(&rho.character(&s3), chi);
    }
}

#[test]
fn realizations_match_characters() {
    let (g, t) = table();
    for (chi, rho) in t.irreducibles().iter().zip(t.realizations()) {
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(rho.matrix(a).mul(rho.matrix(b)), *rho.matrix(g.mul(a, b)));
            }
        }
        assert_eq!(&rho.character(&g), chi);
    }
}

proptest::proptest! {
    #[test]
    fn double_dual_and_resummation(i in 0usize..10, j in 0usize..10) {
        let (_, t) = table();
        let a = &t.irreducibles()[i];
        let b = &t.irreducibles()[j];
        proptest::prop_assert_eq!(&a.dual().dual(), a);
        let prod = a.tensor(b).unwrap();
        let m = decompose_character(&prod, &t).unwrap();
        let mut sum = Character::zero(prod.classes().clone());
        for (k, chi) in m.iter().zip(t.irreducibles()) {
            sum = sum.plus(&chi.scaled(*k as i64)).unwrap();
        }
        proptest::prop_assert_eq!(sum, prod);
    }
}

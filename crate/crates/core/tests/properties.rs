//! Invariants checked on generated inputs.

use std::sync::Arc;

use msod_core::g422;
use msod_core::groups::{FiniteGroup, TorusElement};
use msod_core::arith::lattice::IntMatrix;
use msod_core::arith::Rational;
use msod_core::modules::{ext_invariants, quotient_module, LinearGroup, Poly};
use msod_core::rep::character_table;
use msod_core::torus::{burnside_count, msod_census, orbit_count, Cm, TorusAction};
use msod_core::verify::props::{brute_force_coarse_points, class_equation};
use proptest::prelude::*;

/// Signed permutation matrices of a product of two generic curves, in real
/// coordinates.
fn signed_swap(sign_a: i64, sign_b: i64, swap: bool) -> IntMatrix {
    let mut m = IntMatrix::zeros(4, 4);
    let (ca, cb) = if swap { (1, 0) } else { (0, 1) };
    for k in 0..2 {
        m.set(k, 2 * ca + k, sign_a);
        m.set(2 + k, 2 * cb + k, sign_b);
    }
    m
}

fn element() -> impl Strategy<Value = TorusElement> {
    (
        prop::sample::select(vec![-1i64, 1]),
        prop::sample::select(vec![-1i64, 1]),
        any::<bool>(),
        prop::collection::vec(0i64..2, 4),
    )
        .prop_map(|(a, b, s, t)| {
            let translation = t.into_iter().map(|x| Rational::new(x, 2).unwrap()).collect();
            TorusElement::new(signed_swap(a, b, s), translation).unwrap()
        })
}

fn action(gens: Vec<TorusElement>) -> TorusAction {
    TorusAction::generate(&gens, vec![Cm::Generic, Cm::Generic], 256).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn burnside_counts_orbits(gens in prop::collection::vec(element(), 1..3), n in prop::sample::select(vec![2u32, 4])) {
        let a = action(gens);
        let direct = orbit_count(&a, n).unwrap();
        prop_assert_eq!(Rational::from_int(direct as i64), burnside_count(&a, n));
    }

    #[test]
    fn class_equation_and_isolated_points(gens in prop::collection::vec(element(), 1..3)) {
        let a = action(gens);
        let (sum, order) = class_equation(a.group());
        prop_assert_eq!(sum, order);
        let census = msod_census(&a, 2).unwrap();
        for e in census.iter().filter(|e| e.dimension == 0) {
            let g = a.group().classes().classes[e.class].representative;
            prop_assert_eq!(brute_force_coarse_points(a.group(), g).unwrap(), Some(e.coarse_components));
        }
    }

    #[test]
    fn torus_character_tables_are_orthogonal(gens in prop::collection::vec(element(), 1..3)) {
        let a = action(gens);
        let t = character_table(a.group()).unwrap();
        prop_assert!(t.rows_orthonormal());
        prop_assert!(t.columns_orthogonal());
    }

    #[test]
    fn point_twists_follow_the_koszul_formula(r in 0usize..10, s in 0usize..10) {
        let g: Arc<LinearGroup> = Arc::new(g422::group().unwrap());
        let t = g422::labeled_table(&g).unwrap();
        let (rho, sigma) = (g422::IRREP_LABELS[r], g422::IRREP_LABELS[s]);
        let point = |label: &str| quotient_module(&g, &[Poly::x(), Poly::y()], Some(t.realization(label).unwrap())).unwrap();
        let inv = ext_invariants(&point(rho), &point(sigma)).unwrap();
        let natural = g422::natural(&g).unwrap().character(&g);
        let wedge = t.get("chi2chi4").unwrap();
        let (cr, cs) = (t.get(rho).unwrap(), t.get(sigma).unwrap());
        let expected = [
            cr.inner_product(cs).unwrap().as_integer().unwrap(),
            cr.inner_product(&cs.tensor(&natural).unwrap()).unwrap().as_integer().unwrap(),
            cr.inner_product(&cs.tensor(wedge).unwrap()).unwrap().as_integer().unwrap(),
        ];
        prop_assert_eq!(inv, expected);
    }
}

#[test]
fn generated_groups_close() {
    let g: FiniteGroup<TorusElement> =
        FiniteGroup::generate(&[TorusElement::linear_only(signed_swap(1, 1, true)).unwrap()], 8).unwrap();
    assert_eq!(g.order(), 2);
}

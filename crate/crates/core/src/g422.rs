//! Concrete data for the reflection group G(4,2,2) = K ⋊ S₂ acting on ℂ².
//!
//! An element `(ξ^a, ξ^b, σ^c)` is the matrix `diag(ξ^a, ξ^b)·S^c` with `S`
//! the coordinate swap and `ξ = i`.

use crate::arith::Cyclotomic;
use crate::groups::{FiniteGroup, GroupError, LinearElement};
use crate::linalg::Matrix;
use crate::rep::{character_table, CharacterTable, RepError, Representation};

pub const ORDER: usize = 16;

pub fn xi_pow(k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(4, k)
}

/// `(ξ^a, ξ^b, σ^c)`.
pub fn element(a: i64, b: i64, c: u8) -> LinearElement {
    let z = Cyclotomic::zero;
    let m = if c.is_multiple_of(2) {
        Matrix::from_rows(vec![vec![xi_pow(a), z()], vec![z(), xi_pow(b)]])
    } else {
        Matrix::from_rows(vec![vec![z(), xi_pow(a)], vec![xi_pow(b), z()]])
    };
    LinearElement::new(m).expect("monomial matrices are invertible")
}

/// Generators `(−1,1,1)`, `(−i,i,1)`, `(1,1,σ)`.
pub fn generators() -> Vec<LinearElement> {
    vec![element(2, 0, 0), element(3, 1, 0), element(0, 0, 1)]
}

pub fn group() -> Result<FiniteGroup<LinearElement>, GroupError> {
    FiniteGroup::generate(&generators(), 64)
}

fn xi_exponent(x: &Cyclotomic) -> Option<i64> {
    (0..4).find(|&k| *x == xi_pow(k))
}

/// Recovers `(a, b, c)` with `a, b ∈ 0..4` from a monomial 2×2 matrix.
pub fn coordinates(e: &LinearElement) -> Option<(i64, i64, u8)> {
    let m = e.matrix();
    if m.rows() != 2 {
        return None;
    }
    if m.get(0, 1).is_zero() && m.get(1, 0).is_zero() {
        Some((xi_exponent(m.get(0, 0))?, xi_exponent(m.get(1, 1))?, 0))
    } else if m.get(0, 0).is_zero() && m.get(1, 1).is_zero() {
        Some((xi_exponent(m.get(0, 1))?, xi_exponent(m.get(1, 0))?, 1))
    } else {
        None
    }
}

/// Class label `1..=10` in the numbering D₁..D₁₀.
pub fn class_number(e: &LinearElement) -> Option<usize> {
    let (a, b, c) = coordinates(e)?;
    let n = match (a, b, c) {
        (0, 0, 0) => 1,
        (0, 0, 1) | (2, 2, 1) => 2,
        (0, 2, 0) | (2, 0, 0) => 3,
        (1, 3, 1) | (3, 1, 1) => 4,
        (2, 2, 0) => 5,
        (1, 1, 0) => 6,
        (1, 1, 1) | (3, 3, 1) => 7,
        (3, 3, 0) => 8,
        (0, 2, 1) | (2, 0, 1) => 9,
        (1, 3, 0) | (3, 1, 0) => 10,
        _ => return None,
    };
    Some(n)
}

/// Representative of D_k used in reports.
pub fn class_representative(k: usize) -> LinearElement {
    let (a, b, c) = [
        (0, 0, 0),
        (0, 0, 1),
        (0, 2, 0),
        (1, 3, 1),
        (2, 2, 0),
        (1, 1, 0),
        (1, 1, 1),
        (3, 3, 0),
        (0, 2, 1),
        (1, 3, 0),
    ][k - 1];
    element(a, b, c)
}

/// Irreducible labels in report order.
pub const IRREP_LABELS: [&str; 10] = [
    "1",
    "chi2",
    "chi3",
    "chi4",
    "chi2chi3",
    "chi2chi4",
    "chi3chi4",
    "chi2chi3chi4",
    "V",
    "Vdual",
];

/// Value of a one-dimensional character `χ₂^p χ₃^q χ₄^r` at `(ξ^a, ξ^b, σ^c)`.
pub fn linear_character_value(p: u8, q: u8, r: u8, (a, b, c): (i64, i64, u8)) -> Cyclotomic {
    let mut exp = 0;
    if p % 2 == 1 {
        exp += a + b;
    }
    if q % 2 == 1 {
        exp += a - b;
    }
    if r % 2 == 1 && c % 2 == 1 {
        exp += 2;
    }
    xi_pow(exp)
}

/// Exponents `(p, q, r)` of a one-dimensional label.
pub fn linear_label_exponents(label: &str) -> Option<(u8, u8, u8)> {
    Some(match label {
        "1" => (0, 0, 0),
        "chi2" => (1, 0, 0),
        "chi3" => (0, 1, 0),
        "chi4" => (0, 0, 1),
        "chi2chi3" => (1, 1, 0),
        "chi2chi4" => (1, 0, 1),
        "chi3chi4" => (0, 1, 1),
        "chi2chi3chi4" => (1, 1, 1),
        _ => return None,
    })
}

/// The natural two-dimensional representation `V`.
pub fn natural(g: &FiniteGroup<LinearElement>) -> Result<Representation, RepError> {
    Representation::from_fn(g, |e| e.matrix().clone())
}

/// Character table with rows labelled and ordered as [`IRREP_LABELS`].
pub fn labeled_table(g: &FiniteGroup<LinearElement>) -> Result<CharacterTable, RepError> {
    let mut table = character_table(g)?;
    let cs = g.classes();
    let chi_v = natural(g)?.character(g);
    let coords: Vec<(i64, i64, u8)> = cs
        .classes
        .iter()
        .map(|c| coordinates(g.element(c.representative)).expect("monomial element"))
        .collect();
    table.relabel(|chi| {
        if *chi == chi_v {
            return "V".into();
        }
        if *chi == chi_v.dual() {
            return "Vdual".into();
        }
        for label in &IRREP_LABELS[..8] {
            let (p, q, r) = linear_label_exponents(label).expect("linear label");
            if coords
                .iter()
                .enumerate()
                .all(|(i, &x)| *chi.value(i) == linear_character_value(p, q, r, x))
            {
                return (*label).into();
            }
        }
        "?".into()
    });
    if !table.reorder(&IRREP_LABELS) {
        return Err(RepError::UnsupportedStructure);
    }
    Ok(table)
}

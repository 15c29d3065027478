//! Checks that hold for any input: class equation, orthogonality, Serre
//! symmetry, independence of the resolution, orbit counting.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::arith::lattice::smith_normal_form;
use crate::arith::{Cyclotomic, Rational};
use crate::groups::{FiniteGroup, GroupElement, TorusElement};
use crate::linalg::CycMatrix;
use crate::modules::{ext_invariants, minimal_resolution_general, EquivariantModule, ModuleError};
use crate::rep::{decompose_character, Character, CharacterTable, RepError, Representation};
use crate::torus::{apply_affine, burnside_count, orbit_count, TorsionPoint, TorusAction, TorusError};

pub fn class_equation<E: GroupElement>(g: &FiniteGroup<E>) -> (usize, usize) {
    (g.classes().sizes().iter().sum(), g.order())
}

pub fn sum_of_squared_degrees(t: &CharacterTable) -> i64 {
    t.degrees().iter().map(|d| d * d).sum()
}

/// Labels of the irreducible constituents, repeated by multiplicity, in
/// table order.
pub fn constituent_labels(c: &Character, t: &CharacterTable) -> Result<Vec<String>, RepError> {
    let mult = decompose_character(c, t)?;
    let mut out = Vec::new();
    for (label, m) in t.labels().iter().zip(mult) {
        out.extend(std::iter::repeat_n(label.clone(), m as usize));
    }
    Ok(out)
}

/// Sorts a JSON list of labels (or of such lists) into table order.
pub fn sort_labels(t: &CharacterTable, v: Value) -> Value {
    match v {
        Value::Array(items) if items.iter().all(Value::is_string) => {
            let mut labels: Vec<String> = items.iter().filter_map(|s| s.as_str().map(String::from)).collect();
            labels.sort_by_key(|l| (t.position(l).unwrap_or(usize::MAX), l.clone()));
            Value::from(labels)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(|i| sort_labels(t, i)).collect()),
        other => other,
    }
}

/// Character of `rep` restricted to the invariant subspace spanned by the
/// columns of `basis`; `None` if the span is not invariant.
pub fn restricted_character<E: GroupElement>(
    group: &FiniteGroup<E>,
    rep: &Representation,
    basis: &CycMatrix,
) -> Option<Character> {
    let cs = group.classes();
    let mut values = Vec::with_capacity(cs.len());
    for c in &cs.classes {
        let image = rep.matrix(c.representative).mul(basis);
        let coords = basis.solve(&image)?;
        values.push(coords.trace());
    }
    Some(Character::new(cs, values))
}

/// Character of the line spanned by `v` under `rep`, if it is a line.
pub fn eigen_character<E: GroupElement>(
    group: &FiniteGroup<E>,
    rep: &Representation,
    v: &[Cyclotomic],
) -> Option<Character> {
    let basis = CycMatrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect());
    restricted_character(group, rep, &basis)
}

/// `Extⁱ(A, B)^G = Ext²⁻ⁱ(B, A ⊗ ω)^G` on the plane, `ω` the canonical twist.
pub fn serre_symmetric(
    a: &EquivariantModule,
    b: &EquivariantModule,
    a_omega: &EquivariantModule,
) -> Result<bool, ModuleError> {
    let fwd = ext_invariants(a, b)?;
    let back = ext_invariants(b, a_omega)?;
    Ok(fwd[0] == back[2] && fwd[1] == back[1] && fwd[2] == back[0])
}

/// Invariant Ext computed from the default resolution and from the
/// general (Gröbner) one.
pub fn resolution_independent(a: &EquivariantModule, b: &EquivariantModule) -> Result<([i64; 3], [i64; 3]), ModuleError> {
    let default = ext_invariants(a, b)?;
    let general = a.with_resolution(minimal_resolution_general(a)?);
    Ok((default, ext_invariants(&general, b)?))
}

/// Burnside's count and a direct orbit enumeration on `n`-torsion.
pub fn orbit_counts(action: &TorusAction, n: u32) -> (String, Option<usize>) {
    (burnside_count(action, n).to_string(), orbit_count(action, n))
}

/// Orbits of the centralizer of `g` on the fixed points of `g`, found by
/// testing every point of a grid fine enough to hold them. `None` unless
/// the fixed locus is finite.
pub fn brute_force_coarse_points(group: &FiniteGroup<TorusElement>, g: usize) -> Result<Option<usize>, TorusError> {
    let e = group.element(g);
    let snf = smith_normal_form(&e.linear().minus_identity());
    if snf.rank() < e.dim() {
        return Ok(None);
    }
    // (L - I)p = -t, so p has denominator dividing max(diag) * denom(t).
    let mut denom = 1u64;
    for t in e.translation() {
        denom = num_integer::lcm(denom, t.denom().to_u64().unwrap_or(1));
    }
    let level = (snf.diag.iter().max().and_then(|d| d.to_u64()).unwrap_or(1) * denom) as i64;
    let mut fixed = Vec::new();
    for coords in (0..e.dim()).map(|_| 0..level).multi_cartesian_product() {
        let p = TorsionPoint::new(
            coords
                .into_iter()
                .map(|c| Rational::new(c, level).expect("positive level"))
                .collect(),
        );
        if apply_affine(e, &p)? == p {
            fixed.push(p);
        }
    }
    let centralizer = group.centralizer_indices(g);
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for p in &fixed {
        if seen.contains(p) {
            continue;
        }
        orbits += 1;
        for &h in &centralizer {
            seen.insert(apply_affine(group.element(h), p)?);
        }
    }
    Ok(Some(orbits))
}

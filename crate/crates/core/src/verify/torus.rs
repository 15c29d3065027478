//! Suites on abelian surfaces: fixed loci, coarse components, orbit and
//! stabilizer structure, smoothness and descent.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::props::{brute_force_coarse_points, class_equation, orbit_counts};
use super::scenario::{Model, NamedAction, ScenarioSpec, TorusModel};
use super::{Ctx, VerifyError};
use crate::groups::{FiniteGroup, GroupElement, TorusElement};
use crate::torus::{
    apply_affine, descent_census, fixed_components, fixed_dimension, fixed_torsion_points, isogeny_kernel,
    msod_census, orbits_and_stabilizers, smoothness_check, span_points, CensusEntry, FixedLocusCensus, TorsionPoint,
    TorusError,
};

fn torus_model<'s>(ctx: &Ctx, spec: &'s ScenarioSpec) -> Result<&'s TorusModel, VerifyError> {
    match &spec.model {
        Model::Torus(t) => Ok(t),
        Model::Linear(_) => Err(ctx.wrong_model(&spec.name, "a torus model")),
    }
}

fn action<'s>(ctx: &Ctx, spec: &ScenarioSpec, m: &'s TorusModel, name: &str) -> Result<&'s NamedAction, VerifyError> {
    m.action(name)
        .ok_or_else(|| ctx.wrong_model(&spec.name, &format!("an action named {name:?}")))
}

/// Group index of a labelled element.
fn labelled(ctx: &Ctx, spec: &ScenarioSpec, a: &NamedAction, label: &str) -> Result<usize, VerifyError> {
    a.element(label)
        .and_then(|e| a.action.group().index_of(e))
        .ok_or_else(|| ctx.wrong_model(&spec.name, &format!("element {label:?} of action {:?}", a.name)))
}

fn torsion_of(torsion: Option<u32>, m: &TorusModel, a: &NamedAction) -> u32 {
    torsion.or(m.torsion).unwrap_or_else(|| a.action.default_torsion())
}

/// Fixed locus at level `n`, raised to the level the locus needs.
fn locus(e: &TorusElement, n: u32) -> Result<FixedLocusCensus, TorusError> {
    match fixed_components(e, n) {
        Err(TorusError::TorsionBoundTooSmall { needed, .. }) => fixed_components(e, needed),
        other => other,
    }
}

fn point_strings(points: &[TorsionPoint]) -> Vec<String> {
    let mut s: Vec<String> = points.iter().map(TorsionPoint::to_string).collect();
    s.sort();
    s
}

/// Census row of the class containing element `g`.
fn entry_of<'c>(census: &'c [CensusEntry], group: &FiniteGroup<TorusElement>, g: usize) -> &'c CensusEntry {
    let c = group.classes().class_of[g];
    census.iter().find(|e| e.class == c).expect("census covers every class")
}

fn stabilizer(group: &FiniteGroup<TorusElement>, p: &TorsionPoint) -> Result<Vec<usize>, TorusError> {
    let mut out = Vec::new();
    for g in 0..group.order() {
        if apply_affine(group.element(g), p)? == *p {
            out.push(g);
        }
    }
    Ok(out)
}

fn stabilizer_name(group: &FiniteGroup<TorusElement>, stab: &[usize]) -> String {
    let exponent_two = stab.iter().all(|&g| group.element_order(g) <= 2);
    match stab.len() {
        n if n == group.order() => "G".into(),
        1 => "other".into(),
        2 => "mu2".into(),
        4 if exponent_two => "mu2 x mu2".into(),
        n => format!("order {n}"),
    }
}

/// Burnside against direct enumeration, and the zero-dimensional coarse
/// counts against a point-by-point orbit count.
fn orbit_oracles(ctx: &mut Ctx, a: &NamedAction, census: &[CensusEntry], levels: &[u32]) -> Result<(), VerifyError> {
    for &n in levels {
        let (burnside, direct) = orbit_counts(&a.action, n);
        ctx.oracle(
            &format!("{}: Burnside count of {n}-torsion orbits", a.name),
            json!(burnside),
            json!(direct.map(|d| d.to_string())),
        );
    }
    let group = a.action.group();
    let mut computed = Vec::new();
    let mut brute = Vec::new();
    for e in census.iter().filter(|e| e.dimension == 0) {
        computed.push(e.coarse_components);
        brute.push(brute_force_coarse_points(group, group.classes().classes[e.class].representative)?);
    }
    ctx.oracle(
        &format!("{}: isolated coarse points against centralizer orbits", a.name),
        json!(computed),
        json!(brute),
    );
    let (sum, order) = class_equation(group);
    ctx.definition(&format!("{}: class equation", a.name), json!(sum), json!(order));
    Ok(())
}

pub fn type_c(ctx: &mut Ctx, spec: &ScenarioSpec, torsion: Option<u32>) -> Result<(), VerifyError> {
    let m = torus_model(ctx, spec)?;
    let a = action(ctx, spec, m, "A")?;
    let b = action(ctx, spec, m, "B")?;
    let n = torsion_of(torsion, m, a);
    let group = a.action.group();
    let cs = group.classes();

    ctx.published("group_order", "order of the group acting on A", json!(group.order()))?;
    ctx.published("class_count", "number of conjugacy classes", json!(cs.len()))?;
    let d: Vec<usize> = (1..=10)
        .map(|k| labelled(ctx, spec, a, &format!("D{k}")))
        .collect::<Result<_, _>>()?;
    let mut classes: Vec<usize> = d.iter().map(|&g| cs.class_of[g]).collect();
    classes.sort_unstable();
    classes.dedup();
    ctx.definition("D1..D10 lie in distinct classes", json!(classes.len()), json!(cs.len()));

    let dims: Vec<usize> = d.iter().map(|&g| fixed_dimension(group.element(g))).collect::<Result<_, _>>()?;
    ctx.published("fixed_dimensions", "dimensions of A^g for D1..D10", json!(dims))?;
    let mut counts = Vec::new();
    for &g in &d[..4] {
        counts.push(locus(group.element(g), n)?.component_count);
    }
    ctx.published("component_counts", "connected components of A^g for D1..D4", json!(counts))?;
    let a5 = locus(group.element(d[4]), n)?;
    ctx.published("A5_points", "number of points of A^5", json!(a5.point_count()))?;
    let mut tails = Vec::new();
    for &g in &d[5..] {
        let f = locus(group.element(g), n)?;
        tails.push(point_strings(&f.components.values().flatten().cloned().collect::<Vec<_>>()));
    }
    let tail = if tails.windows(2).all(|w| w[0] == w[1]) {
        json!(tails[0])
    } else {
        json!(tails)
    };
    ctx.published("A6_to_A10", "A^6 = ... = A^10", tail)?;

    // G acting on A^5 = E[2]^2.
    let points: Vec<TorsionPoint> = a5.components.values().flatten().cloned().collect();
    let orbits = orbits_and_stabilizers(&a.action, &points);
    ctx.published("orbit_count", "orbits of G on A^5", json!(orbits.len()))?;
    ctx.definition("A^5 is closed under G", json!(orbits.closure_added), json!(0));
    let mut stabs: Vec<usize> = orbits.orbits.iter().map(|o| o.stabilizer.len()).collect();
    stabs.sort_unstable();
    ctx.published("orbit_stabilizers", "stabilizer orders of the orbits on A^5", json!(stabs))?;
    let mut moving: Vec<Vec<String>> = orbits
        .orbits
        .iter()
        .filter(|o| o.stabilizer.len() < group.order())
        .map(|o| point_strings(&o.points))
        .collect();
    moving.sort();
    ctx.published("moving_orbits", "orbits on A^5 not fixed by G", json!(moving))?;
    for o in &orbits.orbits {
        ctx.definition(
            &format!("orbit of {}: |orbit| * |stabilizer| = |G|", o.points[0]),
            json!(o.points.len() * o.stabilizer.len()),
            json!(group.order()),
        );
    }

    let mut table: BTreeMap<String, usize> = BTreeMap::new();
    for p in fixed_torsion_points(group.element(group.identity_index()), n) {
        let stab = stabilizer(group, &p)?;
        table.insert(stabilizer_name(group, &stab), stab.len());
    }
    ctx.published(
        "stabilizer_table",
        &format!("stabilizer types on {n}-torsion points of A"),
        json!(table),
    )?;

    let nu = m
        .isogeny("nu")
        .ok_or_else(|| ctx.wrong_model(&spec.name, "an isogeny named \"nu\""))?;
    let kernel = isogeny_kernel(nu)?;
    ctx.published("isogeny_kernel_order", "order of ker(nu)", json!(kernel.order))?;
    ctx.published(
        "isogeny_kernel",
        "points of ker(nu)",
        json!(point_strings(&span_points(&kernel.generators, nu.rows()))),
    )?;
    let conjugated = b.action.group().elements().iter().all(|h| {
        let lhs = nu.checked_mul(h.linear());
        group
            .elements()
            .iter()
            .any(|g| lhs.is_some() && g.linear().checked_mul(nu) == lhs)
    });
    ctx.published("conjugated_generators", "nu intertwines the actions on B and A", json!(conjugated))?;
    let smooth_a = smoothness_check(&a.action, n);
    ctx.published("smooth_A", "stabilizers on A are reflection groups", json!(smooth_a.passes()))?;
    let smooth_b = smoothness_check(&b.action, n);
    ctx.published("smooth_B", "stabilizers on B are reflection groups", json!(smooth_b.passes()))?;

    let census = msod_census(&a.action, n)?;
    let one_dim: Vec<usize> = d[1..4].iter().map(|&g| entry_of(&census, group, g).coarse_components).collect();
    ctx.published("coarse_one_dimensional", "components of A^g / C(g) for D2..D4", json!(one_dim))?;
    let rational: Vec<usize> = d[1..4].iter().map(|&g| entry_of(&census, group, g).rational_components).collect();
    ctx.oracle("rational components of A^g / C(g) for D2..D4", json!(rational), json!(one_dim));
    let points: Vec<usize> = d[4..].iter().map(|&g| entry_of(&census, group, g).coarse_components).collect();
    ctx.published("coarse_points", "points of A^g / C(g) for D5..D10", json!(points))?;
    orbit_oracles(ctx, a, &census, &[1, 2, n])?;
    Ok(())
}

fn dimension_profile(census: &[CensusEntry]) -> Vec<usize> {
    (0..=2).rev().map(|d| census.iter().filter(|e| e.dimension == d).count()).collect()
}

fn coarse_profile(census: &[CensusEntry]) -> Vec<usize> {
    (0..=2)
        .rev()
        .map(|d| census.iter().filter(|e| e.dimension == d).map(|e| e.coarse_components).sum())
        .collect()
}

fn one_dimensional_summary(e: &CensusEntry) -> Value {
    json!({
        "dimension": e.dimension,
        "components": e.coarse_components,
        "elliptic": e.elliptic_components,
    })
}

pub fn surfaces(ctx: &mut Ctx, spec: &ScenarioSpec, torsion: Option<u32>) -> Result<(), VerifyError> {
    let m = torus_model(ctx, spec)?;
    let mut class_counts = Map::new();
    let mut profiles = Map::new();
    let mut copies = Map::new();
    let mut censuses = Vec::new();
    for a in &m.actions {
        let census = msod_census(&a.action, torsion_of(torsion, m, a))?;
        class_counts.insert(a.name.clone(), json!(census.len()));
        profiles.insert(a.name.clone(), json!(dimension_profile(&census)));
        if a.action.group().order() > 2 {
            copies.insert(a.name.clone(), json!(coarse_profile(&census)));
        }
        censuses.push((a, census));
    }
    ctx.published("class_counts", "conjugacy classes of mu_n^2 x| S2", Value::Object(class_counts))?;
    ctx.published(
        "dimension_profile",
        "classes with fixed loci of dimension 2, 1, 0",
        Value::Object(profiles),
    )?;
    ctx.published_soft("copies", "coarse components of dimension 2, 1, 0", Value::Object(copies))?;

    let n1 = action(ctx, spec, m, "n1")?;
    let n1_census = &censuses.iter().find(|(a, _)| a.name == "n1").expect("found above").1;
    let moving: Vec<Value> = n1_census.iter().filter(|e| e.dimension < 2).map(one_dimensional_summary).collect();
    ctx.published(
        "n1_diagonal",
        "fixed locus of the swap for n = 1",
        moving.first().cloned().unwrap_or(Value::Null),
    )?;
    ctx.definition("n1 has exactly one nontrivial class", json!(moving.len()), json!(1));
    let _ = n1;

    let n2 = action(ctx, spec, m, "n2")?;
    let n2_census = &censuses.iter().find(|(a, _)| a.name == "n2").expect("found above").1;
    let group = n2.action.group();
    let mut rows = Vec::new();
    let mut coarse = Map::new();
    for (label, _) in &n2.elements {
        let g = labelled(ctx, spec, n2, label)?;
        let e = entry_of(n2_census, group, g);
        rows.push(json!({
            "class": label,
            "dimension": e.dimension,
            "fixed_components": e.fixed_components,
            "centralizer": group.centralizer_indices(g).len(),
        }));
        if !group.element(g).is_identity() {
            coarse.insert(label.clone(), json!(e.coarse_components));
        }
    }
    // Centralizer orders are checked separately and only informationally.
    let strip = |v: Value, keep: bool| -> Value {
        let rows = v.as_array().cloned().unwrap_or_default();
        Value::Array(
            rows.into_iter()
                .map(|mut r| {
                    if let Value::Object(o) = &mut r {
                        let c = o.remove("centralizer");
                        if keep {
                            return json!({ "class": o.get("class").cloned(), "centralizer": c });
                        }
                    }
                    r
                })
                .collect(),
        )
    };
    let fixed_rows = strip(json!(rows), false);
    ctx.published_with("n2_table", "fixed loci for n = 2", fixed_rows, |e| strip(e, false))?;
    let centralizer_rows = strip(json!(rows), true);
    ctx.published_soft_with("n2_table", "centralizer orders for n = 2", centralizer_rows, |e| strip(e, true))?;
    ctx.published_soft("n2_coarse", "coarse components for n = 2", Value::Object(coarse))?;

    for (a, census) in &censuses {
        orbit_oracles(ctx, a, census, &[2])?;
    }
    Ok(())
}

pub fn s3(ctx: &mut Ctx, spec: &ScenarioSpec, torsion: Option<u32>) -> Result<(), VerifyError> {
    let m = torus_model(ctx, spec)?;
    let a = m
        .actions
        .first()
        .ok_or_else(|| ctx.wrong_model(&spec.name, "an action"))?;
    let n = torsion_of(torsion, m, a);
    let group = a.action.group();
    let census = msod_census(&a.action, n)?;
    ctx.published("class_count", "conjugacy classes of S3", json!(census.len()))?;
    ctx.published(
        "dimensions",
        "fixed dimensions, one per class",
        json!(census.iter().map(|e| e.dimension).collect::<Vec<_>>()),
    )?;
    let t = labelled(ctx, spec, a, "transposition")?;
    ctx.published("transposition", "fixed locus of a transposition", one_dimensional_summary(entry_of(&census, group, t)))?;
    let c = labelled(ctx, spec, a, "three-cycle")?;
    let fixed = locus(group.element(c), n)?;
    let points: Vec<TorsionPoint> = fixed.components.values().flatten().cloned().collect();
    ctx.published("three_cycle_points", "fixed points of a three-cycle", json!(points.len()))?;
    let diagonal = points.iter().all(|p| p.factor(0) == p.factor(1));
    ctx.published("three_cycle_diagonal", "fixed points of a three-cycle lie on the diagonal", json!(diagonal))?;
    ctx.published(
        "three_cycle_coarse",
        "points of the coarse fixed locus of a three-cycle",
        json!(entry_of(&census, group, c).coarse_components),
    )?;
    orbit_oracles(ctx, a, &census, &[1, n])?;
    Ok(())
}

pub fn descent(ctx: &mut Ctx, spec: &ScenarioSpec, torsion: Option<u32>) -> Result<(), VerifyError> {
    let m = torus_model(ctx, spec)?;
    for a in &m.actions {
        let n = torsion_of(torsion, m, a);
        let report = descent_census(&a.action, n)?;
        ctx.published("bijection", &format!("{}: lifted classes match the quotient", a.name), json!(report.passes()))?;
        let lifted: usize = report.rows.iter().flat_map(|r| r.lifts.iter().map(|l| l.1)).sum();
        let quotient: usize = report.rows.iter().map(|r| r.quotient_orbits).sum();
        ctx.oracle(
            &format!("{}: total lifted components against quotient orbits", a.name),
            json!(lifted),
            json!(quotient),
        );
    }
    Ok(())
}

//! Suites on the plane: G(4,2,2) representation theory, Fourier-Mukai
//! images at the origin, Ext computations and the local assembly.

use std::sync::Arc;

use serde_json::{json, Value};

use super::props::{
    class_equation, constituent_labels, eigen_character, resolution_independent, restricted_character,
    serre_symmetric, sort_labels, sum_of_squared_degrees,
};
use super::scenario::{LinearModel, Model, ScenarioSpec};
use super::{Ctx, VerifyError};
use crate::arith::Cyclotomic;
use crate::g422;
use crate::groups::{FiniteGroup, GroupElement, LinearElement};
use crate::modules::{
    act_on_poly, check_semiorthogonal_sequence, degree_action, ext_invariants, ext_profile, is_exceptional,
    quotient_module, EquivariantModule, LinearGroup, Poly,
};
use crate::rep::{Character, CharacterTable, Representation};

fn linear_model<'s>(ctx: &Ctx, spec: &'s ScenarioSpec) -> Result<&'s LinearModel, VerifyError> {
    match &spec.model {
        Model::Linear(l) => Ok(l),
        Model::Torus(_) => Err(ctx.wrong_model(&spec.name, "a linear model")),
    }
}

/// A linear model labelled with the G(4,2,2) scheme.
fn g422_model<'s>(ctx: &Ctx, spec: &'s ScenarioSpec) -> Result<&'s LinearModel, VerifyError> {
    let l = linear_model(ctx, spec)?;
    if l.labels.as_deref() != Some("g422") || l.group.order() != g422::ORDER {
        return Err(ctx.wrong_model(&spec.name, "G(4,2,2) with labels \"g422\""));
    }
    Ok(l)
}

fn module<'s>(ctx: &Ctx, spec: &ScenarioSpec, l: &'s LinearModel, name: &str) -> Result<&'s EquivariantModule, VerifyError> {
    l.module(name)
        .ok_or_else(|| ctx.wrong_model(&spec.name, &format!("a module named {name:?}")))
}

/// Skyscraper at the origin twisted by an irreducible.
fn point_module<'s>(
    ctx: &Ctx,
    spec: &ScenarioSpec,
    l: &'s LinearModel,
    label: &str,
) -> Result<&'s EquivariantModule, VerifyError> {
    if label == "1" {
        module(ctx, spec, l, "O0")
    } else {
        module(ctx, spec, l, &format!("O0.{label}"))
    }
}

fn class_index(l: &LinearModel, e: &LinearElement) -> Option<usize> {
    l.group.index_of(e).map(|i| l.group.classes().class_of[i])
}

fn labels(c: &Character, t: &CharacterTable) -> Result<Value, VerifyError> {
    Ok(Value::from(constituent_labels(c, t)?))
}

fn label_or_none(t: &CharacterTable, c: Option<&Character>) -> Value {
    match c.and_then(|c| t.label_of(c)) {
        Some(l) => Value::from(l),
        None => Value::Null,
    }
}

/// `Λ²` of a representation, one value per class, via determinants.
fn determinant_character<E: GroupElement>(g: &FiniteGroup<E>, rep: &Representation) -> Character {
    let cs = g.classes();
    let values = cs.classes.iter().map(|c| rep.matrix(c.representative).det()).collect();
    Character::new(cs, values)
}

pub fn rep_theory(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = g422_model(ctx, spec)?;
    let (g, t) = (&*l.group, &l.table);
    let cs = g.classes();

    ctx.published("group_order", "order of G(4,2,2)", json!(g.order()))?;
    ctx.published("class_count", "number of conjugacy classes", json!(cs.len()))?;
    let mut reps = Vec::new();
    for k in 1..=10 {
        let e = g422::class_representative(k);
        reps.push(g.index_of(&e).ok_or_else(|| ctx.wrong_model(&spec.name, "the standard G(4,2,2) matrices"))?);
    }
    let sizes: Vec<usize> = reps.iter().map(|&i| cs.classes[cs.class_of[i]].size()).collect();
    ctx.published("class_sizes", "class sizes of D1..D10", json!(sizes))?;
    let centralizers: Vec<usize> = reps.iter().map(|&i| g.centralizer_indices(i).len()).collect();
    ctx.published("centralizer_orders", "centralizer orders of D1..D10", json!(centralizers))?;
    let center = g.center().len();
    ctx.published_soft("center_order", "order of the center", json!(center))?;
    let singletons = sizes.iter().filter(|&&s| s == 1).count();
    ctx.definition("center = union of singleton classes", json!(center), json!(singletons));
    let (sum, order) = class_equation(g);
    ctx.definition("class equation", json!(sum), json!(order));

    ctx.published("degrees", "degrees of the irreducibles", json!(t.degrees()))?;
    ctx.definition("sum of squared degrees", json!(sum_of_squared_degrees(t)), json!(g.order()));
    ctx.definition("row orthonormality", json!(t.rows_orthonormal()), json!(true));
    ctx.definition("column orthogonality", json!(t.columns_orthogonal()), json!(true));
    let trivial = Character::trivial(cs.clone());
    let mut squares_trivial = true;
    for c in t.irreducibles().iter().filter(|c| c.degree_int() == Some(1)) {
        squares_trivial &= c.tensor(c)? == trivial;
    }
    ctx.published(
        "linear_characters_square_trivial",
        "every linear character squares to 1",
        json!(squares_trivial),
    )?;

    let natural = g422::natural(g)?;
    let v = t.get("V").expect("g422 labels").clone();
    let vd = t.get("Vdual").expect("g422 labels").clone();
    ctx.definition("V is the natural representation", json!(natural.character(g) == v), json!(true));
    let xi = g422::element(1, 1, 0);
    let at_xi = class_index(l, &xi).map(|c| v.value(c).to_string());
    ctx.published_with("chi_V_at_xi", "chi_V(xi, xi, 1)", json!(at_xi), |e| {
        let s = e.as_str().unwrap_or_default();
        match Poly::parse(s) {
            Ok(p) => json!(p.coeff(0, 0).to_string()),
            Err(_) => e,
        }
    })?;
    let wedge = determinant_character(g, &natural);
    ctx.published("wedge2_V", "Lambda^2 V", label_or_none(t, Some(&wedge)))?;
    ctx.published_with("V_tensor_Vdual", "V (x) Vdual", labels(&v.tensor(&vd)?, t)?, |e| sort_labels(t, e))?;
    let mut twists = Vec::new();
    for (label, c) in t.labels().iter().zip(t.irreducibles()) {
        if c.degree_int() == Some(1) && v.tensor(c)? == vd {
            twists.push(label.clone());
        }
    }
    ctx.published_with("Vdual_twists", "linear characters chi with V (x) chi = Vdual", json!(twists), |e| {
        sort_labels(t, e)
    })?;

    let vv = labels(&v.tensor(&v)?, t)?;
    ctx.published_with("V_tensor_V_proof", "V (x) V, constituents of the explicit eigenvectors", vv.clone(), |e| {
        let firsts: Vec<Value> = e
            .as_array()
            .map(|a| a.iter().filter_map(|p| p.get(0).cloned()).collect())
            .unwrap_or_default();
        sort_labels(t, Value::Array(firsts))
    })?;
    ctx.published_soft_with("V_tensor_V_statement", "V (x) V as stated", vv, |e| sort_labels(t, e))?;
    let kron = natural.tensor(&natural);
    let spans = ctx.expected("V_tensor_V_proof")?;
    let mut found = Vec::new();
    for pair in spans.as_array().cloned().unwrap_or_default() {
        let vec = pair.get(1).cloned().unwrap_or(Value::Null);
        let coords: Vec<Cyclotomic> = vec
            .as_array()
            .map(|a| a.iter().map(|x| Cyclotomic::from_int(x.as_i64().unwrap_or(0))).collect())
            .unwrap_or_default();
        let chi = if coords.len() == kron.dim() {
            eigen_character(g, &kron, &coords)
        } else {
            None
        };
        found.push(json!([label_or_none(t, chi.as_ref()), vec]));
    }
    ctx.published("V_tensor_V_proof", "weights of the explicit eigenvectors in V (x) V", Value::Array(found))?;
    Ok(())
}

pub fn fm_images(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = g422_model(ctx, spec)?;
    let t = &l.table;
    for name in ["Phi1", "Phi2", "Phi3", "Phi4", "M"] {
        let m = module(ctx, spec, l, name)?;
        ctx.definition(&format!("{name}: ideal is G-stable"), json!(m.check_structure()), json!(true));
        let hilbert: usize = m.hilbert_function().iter().sum();
        ctx.oracle(&format!("{name}: Hilbert function sums to the length"), json!(hilbert), json!(m.dim()));
        ctx.published_with(name, &format!("{name} as a representation"), labels(&m.character(), t)?, |e| {
            sort_labels(t, e)
        })?;
    }
    let phi1 = module(ctx, spec, l, "Phi1")?;
    let regular: Vec<String> = t
        .labels()
        .iter()
        .zip(t.degrees())
        .flat_map(|(label, d)| std::iter::repeat_n(label.clone(), d as usize))
        .collect();
    ctx.definition("Phi1 carries the regular representation", labels(&phi1.character(), t)?, json!(regular));
    ctx.published_soft("Phi1_basis_listing", "length of Phi1", json!(phi1.dim()))?;

    for (key, src) in [("weight_x2+y2", "x^2+y^2"), ("weight_x2-y2", "x^2-y^2"), ("weight_xy", "x*y")] {
        let f = Poly::parse(src)?;
        let deg = f.homogeneous_degree().unwrap_or(0);
        let rep = Representation::from_fn(&l.group, |e| degree_action(e, deg))?;
        let chi = f.to_vector(deg).and_then(|v| eigen_character(&l.group, &rep, &v));
        ctx.published(key, &format!("weight of {src}"), label_or_none(t, chi.as_ref()))?;
        let stable = l.group.elements().iter().all(|e| {
            let h = act_on_poly(e, &f);
            h == f || h == f.neg()
        });
        ctx.oracle(&format!("{src} is a semi-invariant under act_on_poly"), json!(stable), json!(true));
    }
    Ok(())
}

fn ext_characters(a: &EquivariantModule, b: &EquivariantModule, t: &CharacterTable) -> Result<Value, VerifyError> {
    let p = ext_profile(a, b)?;
    let mut out = Vec::new();
    for c in &p.characters {
        out.push(labels(c, t)?);
    }
    Ok(Value::Array(out))
}

pub fn ext_lemma(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = g422_model(ctx, spec)?;
    let t = &l.table;
    let o0 = point_module(ctx, spec, l, "1")?;
    ctx.published_with("End_O0", "Ext*(O0, O0) as representations", ext_characters(o0, o0, t)?, |e| {
        sort_labels(t, e)
    })?;
    ctx.published("End_O0_invariants", "Ext*(O0, O0)^G", json!(ext_invariants(o0, o0)?))?;

    let phis: Vec<&EquivariantModule> = ["Phi1", "Phi2", "Phi3", "Phi4"]
        .iter()
        .map(|n| module(ctx, spec, l, n))
        .collect::<Result<_, _>>()?;
    for (i, phi) in phis.iter().enumerate() {
        let key = format!("RHom_Phi{}", i + 1);
        ctx.published_with(&key, &format!("Ext*(O0, Phi{})", i + 1), ext_characters(o0, phi, t)?, |e| {
            sort_labels(t, e)
        })?;
    }
    for i in 1..4 {
        ctx.published(
            "orthogonal_to_Phi1",
            &format!("Ext*(Phi{}, Phi1)^G", i + 1),
            json!(ext_invariants(phis[i], phis[0])?),
        )?;
    }
    for i in 1..4 {
        for j in 1..4 {
            if i != j {
                ctx.published(
                    "mutually_orthogonal",
                    &format!("Ext*(Phi{}, Phi{})^G", i + 1, j + 1),
                    json!(ext_invariants(phis[i], phis[j])?),
                )?;
            }
        }
    }

    // Multiplication by x^2 - y^2 on Phi3, computed directly.
    let phi3 = phis[2];
    let f = Poly::parse("x^2-y^2")?.evaluate(phi3.x_action(), phi3.y_action());
    let kernel = f.kernel();
    let image = f.column_space();
    let ker = restricted_character(&l.group, phi3.action(), &kernel);
    let img = restricted_character(&l.group, phi3.action(), &image);
    let ker_labels = match &ker {
        Some(c) => labels(c, t)?,
        None => Value::Null,
    };
    // As a map Phi3 -> Phi3 (x) w^-1, w the weight of x^2 - y^2, the
    // cokernel lands in the twisted copy.
    let weight = Poly::parse("x^2-y^2")?;
    let rep2 = Representation::from_fn(&l.group, |e| degree_action(e, 2))?;
    let w = weight.to_vector(2).and_then(|v| eigen_character(&l.group, &rep2, &v));
    let coker_labels = match (&img, &w) {
        (Some(c), Some(w)) => labels(&phi3.character().minus(c)?.tensor(&w.dual())?, t)?,
        _ => Value::Null,
    };
    ctx.published_with("kernel", "kernel of x^2-y^2 on Phi3", ker_labels.clone(), |e| sort_labels(t, e))?;
    ctx.published_with("cokernel", "cokernel of x^2-y^2: Phi3 -> Phi3 (x) w^-1", coker_labels, |e| sort_labels(t, e))?;
    let ext0 = ext_characters(phis[1], phi3, t)?;
    ctx.oracle("Ext^0(Phi2, Phi3) equals the kernel", ext0[0].clone(), ker_labels);

    for (i, a) in phis.iter().enumerate() {
        for (j, b) in phis.iter().enumerate() {
            let (d, g) = resolution_independent(a, b)?;
            ctx.oracle(
                &format!("Ext*(Phi{}, Phi{})^G from the general resolution", i + 1, j + 1),
                json!(g),
                json!(d),
            );
        }
    }
    Ok(())
}

pub fn ext_table(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = g422_model(ctx, spec)?;
    let (g, t) = (&*l.group, &l.table);
    let labels_: Vec<String> = t.labels().to_vec();
    let natural = g422::natural(g)?;
    let wedge = [
        Character::trivial(g.classes()),
        natural.character(g),
        determinant_character(g, &natural),
    ];
    let omega = t.label_of(&wedge[2]).map(String::from);

    let mut rows = Vec::new();
    let mut koszul_mismatches = Vec::new();
    let mut serre_failures = Vec::new();
    for (r, rho) in labels_.iter().enumerate() {
        let a = point_module(ctx, spec, l, rho)?;
        let mut row = String::new();
        for (s, sigma) in labels_.iter().enumerate() {
            let b = point_module(ctx, spec, l, sigma)?;
            let inv = ext_invariants(a, b)?;
            row.push(if inv == [0, 0, 0] { 'x' } else { '.' });
            let (cr, cs) = (&t.irreducibles()[r], &t.irreducibles()[s]);
            let mut koszul = [0i64; 3];
            for (i, w) in wedge.iter().enumerate() {
                koszul[i] = cr.inner_product(&cs.tensor(w)?)?.as_integer().unwrap_or(-1);
            }
            if koszul != inv {
                koszul_mismatches.push(format!("({rho}, {sigma})"));
            }
            if let Some(om) = &omega {
                let twisted = cr.tensor(t.get(om).expect("label from table"))?;
                let a_omega = point_module(ctx, spec, l, t.label_of(&twisted).unwrap_or("?"))?;
                if !serre_symmetric(a, b, a_omega)? {
                    serre_failures.push(format!("({rho}, {sigma})"));
                }
            }
        }
        rows.push(row);
    }
    ctx.published("checkmarks", "vanishing of Ext*(O0 (x) rho, O0 (x) sigma)^G", json!(rows))?;
    ctx.oracle(
        "Koszul formula <rho, sigma (x) Lambda^i V> disagrees at",
        json!(koszul_mismatches),
        json!([]),
    );
    ctx.oracle("Serre duality with the canonical twist fails at", json!(serre_failures), json!([]));
    Ok(())
}

pub fn exceptional_collection(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = g422_model(ctx, spec)?;
    let t = &l.table;
    let objects = l.collection_modules();
    if objects.is_empty() {
        return Err(ctx.wrong_model(&spec.name, "a nonempty collection"));
    }
    let exceptional: Vec<bool> = objects.iter().map(is_exceptional).collect::<Result<_, _>>()?;
    ctx.published("exceptional", "each object of the collection is exceptional", json!(exceptional))?;
    let seq = check_semiorthogonal_sequence(&objects)?;
    ctx.published("semiorthogonal", "the collection is semiorthogonal", json!(seq.violations.is_empty()))?;
    let reversed: Vec<EquivariantModule> = objects.iter().rev().cloned().collect();
    ctx.oracle(
        "the reversed collection is not semiorthogonal",
        json!(!check_semiorthogonal_sequence(&reversed)?.passes()),
        json!(true),
    );
    ctx.definition(
        "sequence report agrees with the pairwise checks",
        json!(seq.exceptional),
        json!(exceptional),
    );

    // Each object contributes the constituents it does not share with the
    // point-like (length one) objects of the collection.
    let points: Vec<String> = objects
        .iter()
        .filter(|m| m.dim() == 1)
        .map(|m| constituent_labels(&m.character(), t))
        .collect::<Result<Vec<_>, _>>()?
        .concat();
    let mut recovered = Vec::new();
    for m in &objects {
        let mut own = constituent_labels(&m.character(), t)?;
        if m.dim() > 1 {
            own.retain(|c| !points.contains(c));
        }
        recovered.extend(own);
    }
    let recovered = sort_labels(t, json!(recovered));
    ctx.published_with("recovered_irreducibles", "irreducibles recovered from the collection", recovered, |e| {
        sort_labels(t, e)
    })?;

    let m = module(ctx, spec, l, "M")?;
    let o2 = point_module(ctx, spec, l, "chi2")?;
    ctx.published("Ext_M_O0chi2", "Ext*(M, O0 (x) chi2)^G", json!(ext_invariants(m, o2)?))?;
    ctx.published("End_M_dims", "dimensions of Ext*(M, M)", json!(ext_profile(m, m)?.dims))?;
    let (d, g) = resolution_independent(m, m)?;
    ctx.oracle("Ext*(M, M)^G from the general resolution", json!(g), json!(d));
    let (d, g) = resolution_independent(m, o2)?;
    ctx.oracle("Ext*(M, O0 (x) chi2)^G from the general resolution", json!(g), json!(d));
    Ok(())
}

fn sum_backward(matrix: &[Vec<[i64; 3]>]) -> [i64; 3] {
    let mut total = [0i64; 3];
    for (i, row) in matrix.iter().enumerate() {
        for cell in &row[..i] {
            for k in 0..3 {
                total[k] += cell[k];
            }
        }
    }
    total
}

/// `R/(ℓ², m)` at a point with stabilizer `⟨s⟩`, `s` a reflection with
/// `ℓ` its (−1)-eigenform and `m` its fixed form.
fn reflection_local(s: &LinearElement) -> Result<Option<(EquivariantModule, EquivariantModule)>, VerifyError> {
    if !s.is_pseudo_reflection() {
        return Ok(None);
    }
    let group: Arc<LinearGroup> = Arc::new(FiniteGroup::generate(std::slice::from_ref(s), 8)?);
    let a = degree_action(s, 1);
    let id = crate::linalg::CycMatrix::identity(2);
    let form = |m: crate::linalg::CycMatrix| -> Option<Poly> {
        let k = m.kernel();
        (k.cols() == 1).then(|| Poly::from_vector(1, &(0..2).map(|r| k.get(r, 0).clone()).collect::<Vec<_>>()))
    };
    let (Some(normal), Some(tangent)) = (form(a.add(&id)), form(a.sub(&id))) else {
        return Ok(None);
    };
    let point = quotient_module(&group, &[Poly::x(), Poly::y()], None)?;
    let branch = quotient_module(&group, &[normal.pow(2), tangent], None)?;
    Ok(Some((point, branch)))
}

pub fn local_assembly(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = g422_model(ctx, spec)?;
    let objects = l.assembly_modules();
    if objects.is_empty() {
        return Err(ctx.wrong_model(&spec.name, "a nonempty assembly"));
    }
    let seq = check_semiorthogonal_sequence(&objects)?;
    ctx.published(
        "backward_vanishing",
        "sum of Ext*(later, earlier)^G over the assembled sequence at the origin",
        json!(sum_backward(&seq.matrix)),
    )?;
    let tail: Vec<bool> = l
        .assembly
        .iter()
        .zip(&seq.exceptional)
        .filter(|(n, _)| l.collection.contains(n))
        .map(|(_, &e)| e)
        .collect();
    ctx.published(
        "exceptional_points",
        "the point objects of the assembly are exceptional",
        json!(!tail.is_empty() && tail.iter().all(|&e| e)),
    )?;
    for k in 2..=4 {
        let s = g422::class_representative(k);
        match reflection_local(&s)? {
            Some((point, branch)) => {
                ctx.published(
                    "generic_points",
                    &format!("Ext*(O_p, Phi1(O_p))^G at a point fixed by D{k}"),
                    json!(ext_invariants(&point, &branch)?),
                )?;
            }
            None => {
                ctx.definition(&format!("D{k} is a reflection"), json!(false), json!(true));
            }
        }
    }
    Ok(())
}

pub fn m2xm2_local(ctx: &mut Ctx, spec: &ScenarioSpec) -> Result<(), VerifyError> {
    let l = linear_model(ctx, spec)?;
    let objects = l.assembly_modules();
    if objects.len() < 2 {
        return Err(ctx.wrong_model(&spec.name, "an assembly of at least two modules"));
    }
    let seq = check_semiorthogonal_sequence(&objects)?;
    ctx.published(
        "orthogonalities",
        "sum of Ext*(later, earlier)^G, branch-wise objects",
        json!(sum_backward(&seq.matrix)),
    )?;
    let last = objects.last().expect("nonempty");
    ctx.definition(
        &format!("{} is exceptional", last.name()),
        json!(is_exceptional(last)?),
        json!(true),
    );
    if let Some(union) = &l.union {
        let u = module(ctx, spec, l, union)?;
        // The branches of the union share its name stem, e.g. `Phi2.u`.
        let stem = format!("{}.", union.split('.').next().unwrap_or(union));
        let is_branch = |n: &String| n.starts_with(&stem) && n != union;
        let mut merged: Vec<EquivariantModule> = Vec::new();
        let mut branch_length = 0;
        for (name, m) in l.assembly.iter().zip(&objects) {
            if !is_branch(name) {
                merged.push(m.clone());
            } else {
                if branch_length == 0 {
                    merged.push(u.clone());
                }
                branch_length += m.dim();
            }
        }
        let seq = check_semiorthogonal_sequence(&merged)?;
        ctx.published_soft(
            "orthogonalities",
            &format!("sum of Ext*(later, earlier)^G with {union} in place of its branches"),
            json!(sum_backward(&seq.matrix)),
        )?;
        ctx.report.informational(
            format!("length of {union} against the sum of its branches"),
            json!(u.dim()),
            json!(branch_length),
            super::Provenance::Oracle,
        );
    }
    Ok(())
}

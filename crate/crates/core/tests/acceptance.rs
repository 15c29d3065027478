//! One line per acceptance criterion. Exits nonzero if any criterion fails.
//! Comparisons are exact; the only tolerances are the time budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use msod_core::g422;
use msod_core::modules::EquivariantModule;
use msod_core::rep::character_table;
use msod_core::verify::props::{class_equation, orbit_counts, resolution_independent, serre_symmetric};
use msod_core::verify::scenario::LinearModel;
use msod_core::verify::{bundled_names, bundled_scenario, emit_report, run_suite_with, Check, Fixtures, Format, Model, Provenance, Report, ScenarioSpec, Status};

const BUDGET_GROUP: Duration = Duration::from_secs(1);
const BUDGET_TENSOR: Duration = Duration::from_secs(1);
const BUDGET_MODULES: Duration = Duration::from_secs(5);
const BUDGET_EXT: Duration = Duration::from_secs(30);
const BUDGET_COLLECTION: Duration = Duration::from_secs(10);
const BUDGET_TYPE_C: Duration = Duration::from_secs(10);
const BUDGET_SURFACES: Duration = Duration::from_secs(30);
const BUDGET_S3: Duration = Duration::from_secs(2);
const BUDGET_PROPERTIES: Duration = Duration::from_secs(30);
const TYPE_C_TORSION: u32 = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn scenario(name: &str) -> ScenarioSpec {
    bundled_scenario(name).expect("bundled").expect("bundled scenarios parse")
}

fn timed(fixtures: &Fixtures, scenario_name: &str, suite: &str, torsion: Option<u32>) -> (Report, Duration) {
    let spec = scenario(scenario_name);
    let start = Instant::now();
    let report = run_suite_with(&spec, suite, torsion, fixtures).expect("suite runs");
    (report, start.elapsed())
}

/// Every listed fixtures key has at least one check and none of them fail.
fn keys_pass(report: &Report, keys: &[&str], failed: &mut Vec<String>) -> usize {
    let mut n = 0;
    for k in keys {
        let checks = report.keyed(k);
        if checks.is_empty() {
            failed.push(format!("{k} (missing)"));
        }
        for c in checks {
            n += 1;
            if c.status == Status::Fail {
                failed.push(format!("{k}: computed {} expected {}", c.computed, c.expected));
            }
        }
    }
    n
}

fn within(elapsed: Duration, budget: Duration, failed: &mut Vec<String>) {
    if elapsed > budget {
        failed.push(format!("took {elapsed:?}, budget {budget:?}"));
    }
}

fn outcome(summary: String, failed: Vec<String>) -> Outcome {
    if failed.is_empty() {
        Outcome { pass: true, detail: summary }
    } else {
        Outcome {
            pass: false,
            detail: format!("{summary}; failing: {}", failed.join("; ")),
        }
    }
}

fn criterion_1(rep: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let keys = [
        "group_order",
        "class_count",
        "class_sizes",
        "centralizer_orders",
        "degrees",
        "linear_characters_square_trivial",
        "chi_V_at_xi",
    ];
    let n = keys_pass(rep, &keys, &mut failed);
    within(elapsed, BUDGET_GROUP, &mut failed);
    outcome(format!("group data, {n} exact checks in {elapsed:.2?}"), failed)
}

fn criterion_2(rep: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let n = keys_pass(rep, &["V_tensor_Vdual", "Vdual_twists", "V_tensor_V_proof"], &mut failed);
    let statement = rep.keyed("V_tensor_V_statement");
    if statement.len() != 1 || statement[0].status == Status::Fail {
        failed.push("V (x) V statement must be reported informationally".into());
    }
    within(elapsed, BUDGET_TENSOR, &mut failed);
    let info = statement.iter().filter(|c| c.status == Status::InformationalMismatch).count();
    outcome(
        format!("tensor decompositions, {n} exact checks, {info} informational mismatch (statement vs proof)"),
        failed,
    )
}

fn criterion_3(fm: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let n = keys_pass(fm, &["Phi1", "Phi2", "Phi3", "Phi4", "M"], &mut failed);
    let regular = fm.checks.iter().find(|c| c.anchor.contains("regular representation"));
    if !regular.is_some_and(|c| c.status == Status::Pass) {
        failed.push("Phi1 is not the regular representation".into());
    }
    within(elapsed, BUDGET_MODULES, &mut failed);
    outcome(format!("module decompositions, {} exact checks in {elapsed:.2?}", n + 1), failed)
}

fn table_cells(c: &Check) -> (usize, usize) {
    let rows = |v: &serde_json::Value| -> Vec<String> {
        v.as_array()
            .map(|a| a.iter().filter_map(|r| r.as_str().map(String::from)).collect())
            .unwrap_or_default()
    };
    let (got, want) = (rows(&c.computed), rows(&c.expected));
    let mut total = 0;
    let mut matching = 0;
    for (g, w) in got.iter().zip(&want) {
        for (a, b) in g.chars().zip(w.chars()) {
            total += 1;
            matching += usize::from(a == b);
        }
    }
    (matching, total)
}

fn criterion_4(lemma: &Report, table: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let keys = [
        "End_O0",
        "End_O0_invariants",
        "RHom_Phi1",
        "RHom_Phi2",
        "RHom_Phi3",
        "RHom_Phi4",
        "orthogonal_to_Phi1",
        "mutually_orthogonal",
        "kernel",
        "cokernel",
    ];
    let n = keys_pass(lemma, &keys, &mut failed);
    let (matching, total) = table.keyed("checkmarks").first().map(|c| table_cells(c)).unwrap_or((0, 0));
    if (matching, total) != (100, 100) {
        failed.push(format!("vanishing table: {matching}/{total} cells match"));
    }
    within(elapsed, BUDGET_EXT, &mut failed);
    outcome(
        format!("Ext suites, {n} lemma checks, vanishing table {matching}/{total} cells, {elapsed:.2?}"),
        failed,
    )
}

fn criterion_5(coll: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let n = keys_pass(coll, &["exceptional", "semiorthogonal"], &mut failed);
    let reversal = coll.checks.iter().find(|c| c.anchor.contains("reversed collection"));
    if !reversal.is_some_and(|c| c.status == Status::Pass) {
        failed.push("reversed collection should fail".into());
    }
    within(elapsed, BUDGET_COLLECTION, &mut failed);
    outcome(format!("exceptional collection, {} checks in {elapsed:.2?}", n + 1), failed)
}

fn criterion_6(tc: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let keys = [
        "group_order",
        "class_count",
        "fixed_dimensions",
        "component_counts",
        "orbit_count",
        "stabilizer_table",
        "isogeny_kernel_order",
        "isogeny_kernel",
        "smooth_A",
        "smooth_B",
    ];
    let n = keys_pass(tc, &keys, &mut failed);
    within(elapsed, BUDGET_TYPE_C, &mut failed);
    outcome(format!("type C at torsion {TYPE_C_TORSION}, {n} checks in {elapsed:.2?}"), failed)
}

fn criterion_7(surf: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let n = keys_pass(surf, &["class_counts", "dimension_profile", "n1_diagonal"], &mut failed);
    let oracles: Vec<&Check> = surf
        .checks
        .iter()
        .filter(|c| c.anchor.contains("isolated coarse points"))
        .collect();
    if oracles.is_empty() {
        failed.push("no brute-force point counts".into());
    }
    for c in &oracles {
        if c.status != Status::Pass {
            failed.push(c.anchor.clone());
        }
    }
    for key in ["copies", "n2_coarse"] {
        if surf.keyed(key).iter().any(|c| c.status == Status::Fail) {
            failed.push(format!("{key} must be informational"));
        }
    }
    within(elapsed, BUDGET_SURFACES, &mut failed);
    let info = surf.mismatches().len();
    outcome(
        format!(
            "surfaces, {n} exact checks, {} brute-force point counts, {info} informational mismatches, {elapsed:.2?}",
            oracles.len()
        ),
        failed,
    )
}

fn criterion_8(s3: &Report, elapsed: Duration) -> Outcome {
    let mut failed = Vec::new();
    let n = keys_pass(
        s3,
        &["transposition", "three_cycle_points", "three_cycle_diagonal"],
        &mut failed,
    );
    within(elapsed, BUDGET_S3, &mut failed);
    outcome(format!("S3 example, {n} checks in {elapsed:.2?}"), failed)
}

fn linear(spec: &ScenarioSpec) -> Option<&LinearModel> {
    match &spec.model {
        Model::Linear(l) => Some(l),
        Model::Torus(_) => None,
    }
}

fn criterion_9(fixtures: &Fixtures, reports: &[Report]) -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut counts = [0usize; 6];

    // Oracle and definition checks recorded by the suites.
    for r in reports {
        for c in r.checks.iter().filter(|c| c.provenance != Provenance::Published) {
            if c.status == Status::Fail {
                failed.push(format!("{}: {}", r.suite, c.anchor));
            }
        }
    }

    let specs: Vec<ScenarioSpec> = bundled_names().into_iter().map(scenario).collect();
    for spec in &specs {
        match &spec.model {
            Model::Torus(t) => {
                for a in &t.actions {
                    let (sum, order) = class_equation(a.action.group());
                    counts[0] += 1;
                    if sum != order {
                        failed.push(format!("class equation for {}", a.name));
                    }
                    let top = t.torsion.unwrap_or_else(|| a.action.default_torsion()).min(4);
                    for n in [2, top] {
                        let (burnside, direct) = orbit_counts(&a.action, n);
                        counts[1] += 1;
                        if direct.map(|d| d.to_string()) != Some(burnside.clone()) {
                            failed.push(format!("Burnside on {} at {n}", a.name));
                        }
                    }
                    let table = character_table(a.action.group()).expect("character table");
                    counts[2] += 1;
                    if !table.rows_orthonormal() || !table.columns_orthogonal() {
                        failed.push(format!("orthogonality for {}", a.name));
                    }
                }
            }
            Model::Linear(l) => {
                let (sum, order) = class_equation(&l.group);
                counts[0] += 1;
                if sum != order {
                    failed.push(format!("class equation for {}", spec.name));
                }
                counts[2] += 1;
                if !l.table.rows_orthonormal() || !l.table.columns_orthogonal() {
                    failed.push(format!("orthogonality for {}", spec.name));
                }
                for (name, m) in &l.modules {
                    if m.ideal_generators().len() == 2 {
                        counts[4] += 1;
                        match resolution_independent(m, m) {
                            Ok((d, g)) if d == g => {}
                            other => failed.push(format!("Koszul vs general for {name}: {other:?}")),
                        }
                    }
                }
            }
        }
    }

    // Serre duality on the plane with ω = Λ²V.
    let g = scenario("g422-local");
    let l = linear(&g).expect("linear scenario");
    let omega = l.table.realization(g422::IRREP_LABELS[5]).expect("chi2chi4").clone();
    let names = ["O0", "O0.chi2", "O0.V", "Phi1", "Phi2", "Phi3", "Phi4", "M"];
    let modules: Vec<&EquivariantModule> = names.iter().map(|n| l.module(n).expect("module")).collect();
    for a in &modules {
        let a_omega = a.twisted(&omega).expect("twist");
        for b in &modules {
            counts[3] += 1;
            if !serre_symmetric(a, b, &a_omega).unwrap_or(false) {
                failed.push(format!("Serre symmetry for ({}, {})", a.name(), b.name()));
            }
        }
    }

    // Determinism: every suite twice, byte for byte.
    for r in reports {
        counts[5] += 1;
        let spec = specs.iter().find(|s| s.name == r.scenario).expect("scenario");
        let again = run_suite_with(spec, &r.suite, None, fixtures).expect("suite reruns");
        if emit_report(&again, Format::Json) != emit_report(r, Format::Json) {
            failed.push(format!("{} is not deterministic", r.suite));
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, BUDGET_PROPERTIES, &mut failed);
    outcome(
        format!(
            "properties: {} class equations, {} Burnside identities, {} character tables, {} Serre pairs, {} Koszul/general pairs, {} deterministic reruns, {elapsed:.2?}",
            counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
        ),
        failed,
    )
}

fn main() -> ExitCode {
    let fixtures = Fixtures::bundled();
    let (rep, t_rep) = timed(&fixtures, "g422-local", "rep-theory", None);
    let (fm, t_fm) = timed(&fixtures, "g422-local", "fm-images", None);
    let (lemma, t_lemma) = timed(&fixtures, "g422-local", "ext-lemma", None);
    let (table, t_table) = timed(&fixtures, "g422-local", "ext-table", None);
    let (coll, t_coll) = timed(&fixtures, "g422-local", "exceptional-collection", None);
    let (tc, t_tc) = timed(&fixtures, "type-c", "type-c", Some(TYPE_C_TORSION));
    let (surf, t_surf) = timed(&fixtures, "surfaces", "surfaces", None);
    let (s3, t_s3) = timed(&fixtures, "s3", "s3", None);
    let (local, _) = timed(&fixtures, "g422-local", "local-assembly", None);
    let (m2, _) = timed(&fixtures, "m2xm2-local", "m2xm2-local", None);
    let (desc, _) = timed(&fixtures, "descent", "descent", None);

    let outcomes = [
        criterion_1(&rep, t_rep),
        criterion_2(&rep, t_rep),
        criterion_3(&fm, t_fm),
        criterion_4(&lemma, &table, t_lemma + t_table),
        criterion_5(&coll, t_coll),
        criterion_6(&tc, t_tc),
        criterion_7(&surf, t_surf),
        criterion_8(&s3, t_s3),
        criterion_9(
            &fixtures,
            &[rep.clone(), fm.clone(), lemma.clone(), table.clone(), coll.clone(), tc.clone(), surf.clone(), s3.clone(), local, m2, desc],
        ),
    ];
    let mut all = true;
    for (i, o) in outcomes.iter().enumerate() {
        all &= o.pass;
        println!("criterion {}: {} {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

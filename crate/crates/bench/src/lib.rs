//! Inputs shared by the benchmarks in `benches/engine.rs`.

use msod_core::verify::scenario::{LinearModel, Model, NamedAction};
use msod_core::verify::{bundled_scenario, ScenarioSpec};

pub fn scenario(name: &str) -> ScenarioSpec {
    bundled_scenario(name)
        .unwrap_or_else(|| panic!("no bundled scenario {name:?}"))
        .unwrap_or_else(|e| panic!("bundled scenario {name:?}: {e}"))
}

pub fn linear(name: &str) -> LinearModel {
    match scenario(name).model {
        Model::Linear(l) => l,
        Model::Torus(_) => panic!("{name} is a torus scenario"),
    }
}

pub fn action(scenario_name: &str, action: &str) -> NamedAction {
    match scenario(scenario_name).model {
        Model::Torus(t) => t.action(action).cloned().unwrap_or_else(|| panic!("no action {action:?}")),
        Model::Linear(_) => panic!("{scenario_name} is a linear scenario"),
    }
}

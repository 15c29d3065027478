//! One record per conjugacy class: the coarse piece `X^g / C(g)`.

use serde::Serialize;

use super::fixed::{quotient_components, FixedLocus};
use super::{TorusAction, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    /// Position in the canonical class order.
    pub class: usize,
    pub representative: String,
    pub class_size: usize,
    pub dimension: usize,
    /// Connected components of `X^g`.
    pub fixed_components: u64,
    /// Connected components of `X^g / C(g)`.
    pub coarse_components: usize,
    /// One-dimensional coarse components of genus zero.
    pub rational_components: usize,
    pub elliptic_components: usize,
    /// Fixed points of order dividing the torsion bound.
    pub torsion_points: u64,
}

/// Census ordered by descending fixed dimension, ties by class order.
pub fn msod_census(action: &TorusAction, n: u32) -> Result<Vec<CensusEntry>, TorusError> {
    let group = action.group();
    let classes = group.classes();
    let mut out = Vec::with_capacity(classes.len());
    for (k, class) in classes.classes.iter().enumerate() {
        let g = class.representative;
        let (dimension, orbits) = quotient_components(group, g)?;
        let locus = FixedLocus::new(group.element(g));
        let rational = orbits.iter().filter(|o| o.rational == Some(true)).count();
        let elliptic = orbits.iter().filter(|o| o.rational == Some(false)).count();
        out.push(CensusEntry {
            class: k,
            representative: group.element(g).to_string(),
            class_size: class.members.len(),
            dimension,
            fixed_components: locus.component_count(),
            coarse_components: orbits.len(),
            rational_components: rational,
            elliptic_components: elliptic,
            torsion_points: locus.count(n),
        });
    }
    out.sort_by(|a, b| b.dimension.cmp(&a.dimension).then(a.class.cmp(&b.class)));
    Ok(out)
}

/// Totals of coarse components by dimension, highest first.
pub fn components_by_dimension(census: &[CensusEntry]) -> Vec<(usize, usize)> {
    let mut totals: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for e in census {
        *totals.entry(e.dimension).or_default() += e.coarse_components;
    }
    totals.into_iter().rev().collect()
}

//! Orbits, stabilizers and local smoothness on finite sets of torsion points.
//! Points of level `N` are handled as integer residues mod `N`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::ToPrimitive;

use super::fixed::FixedLocus;
use super::{TorsionPoint, TorusAction, TorusError};
use crate::arith::Rational;
use crate::groups::{FiniteGroup, GroupElement, TorusElement};

/// Residue arithmetic on `(1/N)ℤ^{2g} / ℤ^{2g}`.
struct Grid {
    n: i64,
    maps: Vec<(Vec<Vec<i64>>, Vec<i64>)>,
}

impl Grid {
    /// `None` when some translation has order not dividing `n`.
    fn new(group: &FiniteGroup<TorusElement>, n: i64) -> Option<Grid> {
        let nq = Rational::from_int(n);
        let mut maps = Vec::with_capacity(group.order());
        for e in group.elements() {
            let t = e
                .translation()
                .iter()
                .map(|x| (x * &nq).to_i64())
                .collect::<Option<Vec<i64>>>()?;
            maps.push((e.linear().to_rows(), t));
        }
        Some(Grid { n, maps })
    }

    fn act(&self, g: usize, y: &[i64]) -> Vec<i64> {
        let (l, t) = &self.maps[g];
        l.iter()
            .zip(t)
            .map(|(row, ti)| {
                let s: i64 = row.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() + ti;
                s.rem_euclid(self.n)
            })
            .collect()
    }

    fn residues(&self, p: &TorsionPoint) -> Option<Vec<i64>> {
        let nq = Rational::from_int(self.n);
        p.coords().iter().map(|c| (c * &nq).to_i64()).collect()
    }

    fn point(&self, y: &[i64]) -> TorsionPoint {
        TorsionPoint::new(y.iter().map(|&k| Rational::new(k, self.n).expect("n > 0")).collect())
    }

    fn encode(&self, y: &[i64]) -> usize {
        y.iter().fold(0usize, |acc, &k| acc * self.n as usize + k as usize)
    }

    fn decode(&self, mut idx: usize, dim: usize) -> Vec<i64> {
        let mut y = vec![0i64; dim];
        for slot in y.iter_mut().rev() {
            *slot = (idx % self.n as usize) as i64;
            idx /= self.n as usize;
        }
        y
    }

    fn all(&self, dim: usize) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..dim).map(|_| 0..self.n).multi_cartesian_product()
    }
}

fn level_of(group: &FiniteGroup<TorusElement>, points: &[TorsionPoint], n: u64) -> i64 {
    let mut l = n.max(1);
    for p in points {
        l = num_integer::lcm(l, p.order());
    }
    for e in group.elements() {
        for t in e.translation() {
            l = num_integer::lcm(l, t.denom().to_u64().unwrap_or(1));
        }
    }
    l as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<TorsionPoint>,
    /// Element indices fixing `points[0]`.
    pub stabilizer: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub orbits: Vec<Orbit>,
    /// Points added to close the input under the action.
    pub closure_added: usize,
}

impl OrbitCensus {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

fn orbit_partition(group: &FiniteGroup<TorusElement>, grid: &Grid, seeds: &[Vec<i64>]) -> (Vec<Vec<Vec<i64>>>, usize) {
    let input: BTreeSet<Vec<i64>> = seeds.iter().cloned().collect();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut orbits = Vec::new();
    for y in &input {
        if seen.contains(y) {
            continue;
        }
        let orbit: BTreeSet<Vec<i64>> = (0..group.order()).map(|g| grid.act(g, y)).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().collect());
    }
    (orbits, seen.len() - input.len())
}

pub fn orbits_and_stabilizers(action: &TorusAction, points: &[TorsionPoint]) -> OrbitCensus {
    let group = action.group();
    let grid = Grid::new(group, level_of(group, points, 1)).expect("level covers translations");
    let seeds: Vec<Vec<i64>> = points.iter().map(|p| grid.residues(p).expect("level covers points")).collect();
    let (parts, added) = orbit_partition(group, &grid, &seeds);
    let mut orbits: Vec<Orbit> = parts
        .into_iter()
        .map(|orbit| {
            let stabilizer = (0..group.order()).filter(|&g| grid.act(g, &orbit[0]) == orbit[0]).collect();
            let mut pts: Vec<TorsionPoint> = orbit.iter().map(|y| grid.point(y)).collect();
            pts.sort();
            Orbit {
                points: pts,
                stabilizer,
            }
        })
        .collect();
    orbits.sort_by(|a, b| a.points[0].cmp(&b.points[0]));
    OrbitCensus {
        orbits,
        closure_added: added,
    }
}

/// `(1/|G|) Σ_g |Fix(g) ∩ P|` on the `n`-torsion, as a rational.
pub fn burnside_count(action: &TorusAction, n: u32) -> Rational {
    let group = action.group();
    let total: u64 = group.elements().iter().map(|e| FixedLocus::new(e).count(n)).sum();
    &Rational::from_int(total as i64) / &Rational::from_int(group.order() as i64)
}

/// Number of orbits on all points of order dividing `n`, by search along
/// the generators. `None` if some translation has order not dividing `n`.
pub fn orbit_count(action: &TorusAction, n: u32) -> Option<usize> {
    let group = action.group();
    let grid = Grid::new(group, n as i64)?;
    let dim = action.dim();
    let gens: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| group.index_of(g).expect("generator in group"))
        .collect();
    let size = (n as usize).pow(dim as u32);
    let mut seen = vec![false; size];
    let mut orbits = 0;
    for start in 0..size {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let y = grid.decode(i, dim);
            for &g in &gens {
                let j = grid.encode(&grid.act(g, &y));
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Some(orbits)
}

/// Point whose stabilizer is not generated by pseudo-reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: TorsionPoint,
    pub stabilizer_order: usize,
    pub reflection_subgroup_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub torsion: u32,
    /// Points with nontrivial stabilizer that were examined.
    pub checked_points: usize,
    pub witnesses: Vec<Witness>,
}

impl SmoothnessVerdict {
    pub fn passes(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Local criterion at every `n`-torsion point with nontrivial stabilizer:
/// the stabilizer must be generated by its pseudo-reflections.
pub fn smoothness_check(action: &TorusAction, n: u32) -> SmoothnessVerdict {
    let group = action.group();
    let mut stabilized: BTreeSet<TorsionPoint> = BTreeSet::new();
    for e in group.elements() {
        if !e.is_identity() {
            stabilized.extend(FixedLocus::new(e).points(n));
        }
    }
    let reflections: Vec<bool> = group.elements().iter().map(TorusElement::is_pseudo_reflection).collect();
    let mut witnesses = Vec::new();
    for p in &stabilized {
        let stab: Vec<usize> = (0..group.order())
            .filter(|&g| group.element(g).apply(p.coords()) == p.coords())
            .collect();
        let gens: Vec<usize> = stab.iter().copied().filter(|&g| reflections[g]).collect();
        let generated = group.generated_by(&gens).len();
        if generated != stab.len() {
            witnesses.push(Witness {
                point: p.clone(),
                stabilizer_order: stab.len(),
                reflection_subgroup_order: generated,
            });
        }
    }
    SmoothnessVerdict {
        torsion: n,
        checked_points: stabilized.len(),
        witnesses,
    }
}

/// One class `h` of the linear part: both sides of the decomposition of
/// `X_K^h / C_H(h)` into fixed loci of the lifts `(kᵢ, h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentRow {
    pub h: usize,
    /// `(kᵢh, |Fix(kᵢh)/C_G(kᵢh)|)` for each lifted class.
    pub lifts: Vec<(usize, usize)>,
    pub quotient_orbits: usize,
    /// Every lifted orbit maps onto exactly one quotient orbit, bijectively.
    pub images_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    pub torsion: u32,
    pub rows: Vec<DescentRow>,
}

impl DescentReport {
    pub fn passes(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.images_match && r.lifts.iter().map(|l| l.1).sum::<usize>() == r.quotient_orbits)
    }
}

/// Splits `G = K ⋊ H` with `K` the translations and `H` the elements with
/// zero translation, then checks the lifted-class bijection on `n`-torsion.
pub fn descent_census(action: &TorusAction, n: u32) -> Result<DescentReport, TorusError> {
    let group = action.group();
    let k_idx: Vec<usize> = (0..group.order()).filter(|&g| group.element(g).is_translation()).collect();
    let h_idx: Vec<usize> = (0..group.order())
        .filter(|&g| group.element(g).translation().iter().all(Rational::is_zero))
        .collect();
    for &k in &k_idx {
        let e = group.element(k);
        if !e.is_identity() && !FixedLocus::new(e).is_empty() {
            return Err(TorusError::NotFree(e.to_string()));
        }
    }
    if k_idx.len() * h_idx.len() != group.order() {
        return Err(TorusError::NotSplit(format!(
            "|K| = {}, |H| = {}, |G| = {}",
            k_idx.len(),
            h_idx.len(),
            group.order()
        )));
    }
    let level = level_of(group, &[], n as u64);
    let grid = Grid::new(group, level).expect("level covers translations");
    let dim = action.dim();
    let all: Vec<Vec<i64>> = grid.all(dim).collect();

    // Quotient by K: each K-orbit is represented by its least member.
    let mut k_rep: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for y in &all {
        if k_rep.contains_key(y) {
            continue;
        }
        let orbit: Vec<Vec<i64>> = k_idx.iter().map(|&k| grid.act(k, y)).collect();
        let min = orbit.iter().min().expect("K nonempty").clone();
        for z in orbit {
            k_rep.insert(z, min.clone());
        }
    }
    let quotient_points: BTreeSet<Vec<i64>> = k_rep.values().cloned().collect();

    // Linear parts: h ∈ H with zero translation, conjugacy inside H.
    let classes = group.classes();
    let mut h_reps: Vec<usize> = Vec::new();
    let mut h_seen: BTreeSet<usize> = BTreeSet::new();
    for &h in &h_idx {
        if h_seen.contains(&h) {
            continue;
        }
        let class: BTreeSet<usize> = h_idx.iter().map(|&x| group.conjugate(h, x)).collect();
        h_seen.extend(class);
        h_reps.push(h);
    }

    let mut rows = Vec::new();
    for &h in &h_reps {
        let c_h: Vec<usize> = h_idx.iter().copied().filter(|&x| group.commutes(x, h)).collect();
        let fixed_bar: Vec<Vec<i64>> = quotient_points
            .iter()
            .filter(|y| k_rep[&grid.act(h, y)] == **y)
            .cloned()
            .collect();
        // C_H(h)-orbits on the quotient, keyed by representative.
        let mut bar_orbit: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let mut bar_sets: Vec<BTreeSet<Vec<i64>>> = Vec::new();
        for y in &fixed_bar {
            if bar_orbit.contains_key(y) {
                continue;
            }
            let orbit: BTreeSet<Vec<i64>> = c_h.iter().map(|&c| k_rep[&grid.act(c, y)].clone()).collect();
            for z in &orbit {
                bar_orbit.insert(z.clone(), bar_sets.len());
            }
            bar_sets.push(orbit);
        }

        // G-classes of elements k·h, one representative with linear part h.
        let mut lift_classes: Vec<usize> = Vec::new();
        for &k in &k_idx {
            let kh = group.mul(k, h);
            let c = classes.class_of[kh];
            let rep = classes.classes[c]
                .members
                .iter()
                .copied()
                .filter(|&m| group.element(m).linear() == group.element(h).linear())
                .min()
                .expect("class contains kh");
            if !lift_classes.contains(&rep) {
                lift_classes.push(rep);
            }
        }
        lift_classes.sort();

        let mut lifts = Vec::new();
        let mut images_match = true;
        let mut hit: BTreeSet<usize> = BTreeSet::new();
        for &g in &lift_classes {
            let cent = group.centralizer_indices(g);
            let fixed: Vec<Vec<i64>> = all.iter().filter(|y| grid.act(g, y) == **y).cloned().collect();
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            let mut count = 0;
            for y in &fixed {
                if seen.contains(y) {
                    continue;
                }
                let orbit: BTreeSet<Vec<i64>> = cent.iter().map(|&c| grid.act(c, y)).collect();
                seen.extend(orbit.iter().cloned());
                count += 1;
                let image: BTreeSet<Vec<i64>> = orbit.iter().map(|z| k_rep[z].clone()).collect();
                match bar_orbit.get(&k_rep[y]) {
                    Some(&j) if bar_sets[j] == image && hit.insert(j) => {}
                    _ => images_match = false,
                }
            }
            lifts.push((g, count));
        }
        if hit.len() != bar_sets.len() {
            images_match = false;
        }
        rows.push(DescentRow {
            h,
            lifts,
            quotient_orbits: bar_sets.len(),
            images_match,
        });
    }
    Ok(DescentReport {
        torsion: level as u32,
        rows,
    })
}

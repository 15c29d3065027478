//! Finite group actions on complex tori `ℂ^g/Λ`, computed on the real
//! lattice `ℤ^{2g}`: each elliptic factor contributes coordinates `(u, v)`
//! for the point `u + vτ`, where `τ` generates the CM order.

mod census;
mod fixed;
mod orbits;

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::lattice::{big_apply, smith_normal_form, IntMatrix};
use crate::arith::{Cyclotomic, Rational};
use crate::groups::{reduce_mod_one, FiniteGroup, GroupElement, GroupError, TorusElement};

pub use census::{components_by_dimension, msod_census, CensusEntry};
pub use fixed::{fixed_components, fixed_dimension, fixed_torsion_points, ComponentOrbit, FixedLocusCensus};
pub use orbits::{
    burnside_count, descent_census, orbit_count, orbits_and_stabilizers, smoothness_check, DescentReport, DescentRow, Orbit,
    OrbitCensus, SmoothnessVerdict, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("kernel of L - I has odd rank {0}; the element is not holomorphic")]
    OddKernelRank(usize),
    #[error("no fixed {bound}-torsion points although the fixed locus is nonempty; try torsion {needed}")]
    TorsionBoundTooSmall { bound: u32, needed: u32 },
    #[error("translation subgroup does not act freely: {0}")]
    NotFree(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("linear part {0} does not commute with the complex structure")]
    NotHolomorphic(String),
    #[error("unsupported CM matrix {0:?}")]
    UnsupportedCm(Vec<Vec<i64>>),
    #[error("entry {0} is not in the CM order")]
    NotIntegral(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a semidirect product of translations by linear maps: {0}")]
    NotSplit(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Point of `(ℚ/ℤ)^{2g}`, coordinates in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionPoint {
    coords: Vec<Rational>,
}

impl TorsionPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        TorsionPoint {
            coords: reduce_mod_one(&coords),
        }
    }

    pub fn zero(dim: usize) -> Self {
        TorsionPoint {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Least `n` with `n·p = 0`.
    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .map(|c| c.denom().to_u64().unwrap_or(u64::MAX))
            .fold(1, num_integer::lcm)
    }

    /// Coordinates of the `i`-th elliptic factor.
    pub fn factor(&self, i: usize) -> (&Rational, &Rational) {
        (&self.coords[2 * i], &self.coords[2 * i + 1])
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(Rational::to_string).collect();
        write!(f, "({})", c.join(", "))
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Complex structure on one elliptic factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cm {
    /// No extra endomorphisms; only integer scalars act.
    Generic,
    /// Companion matrix of multiplication by `τ` on the basis `(1, τ)`.
    Order(IntMatrix),
}

impl Cm {
    pub fn gaussian() -> Cm {
        Cm::Order(IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]))
    }

    pub fn eisenstein() -> Cm {
        Cm::Order(IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]))
    }

    pub fn from_matrix(t: IntMatrix) -> Result<Cm, TorusError> {
        let cm = Cm::Order(t);
        cm.tau()?;
        Ok(cm)
    }

    /// `τ` as a root of unity, read off the companion matrix.
    pub fn tau(&self) -> Result<Option<Cyclotomic>, TorusError> {
        let t = match self {
            Cm::Generic => return Ok(None),
            Cm::Order(t) => t,
        };
        let bad = || TorusError::UnsupportedCm(t.to_rows());
        if t.rows() != 2 || t.cols() != 2 || t.get(0, 0) != 0 || t.get(1, 0) != 1 {
            return Err(bad());
        }
        // τ² = t01 + t11·τ
        let (c0, c1) = (t.get(0, 1), t.get(1, 1));
        for n in [4u32, 3, 6] {
            let z = Cyclotomic::zeta(n);
            let lhs = &z * &z;
            let rhs = &Cyclotomic::from_int(c0) + &(&Cyclotomic::from_int(c1) * &z);
            if lhs == rhs {
                return Ok(Some(z));
            }
        }
        Err(bad())
    }

    fn matrix(&self) -> IntMatrix {
        match self {
            Cm::Generic => IntMatrix::identity(2),
            Cm::Order(t) => t.clone(),
        }
    }
}

/// Writes `c = a + bτ` with integers `a, b`.
fn split_entry(c: &Cyclotomic, tau: Option<&Cyclotomic>) -> Result<(i64, i64), TorusError> {
    let not_integral = || TorusError::NotIntegral(c.to_string());
    if let Some(a) = c.as_integer() {
        return Ok((a, 0));
    }
    let tau = tau.ok_or_else(not_integral)?;
    let im = (tau - &tau.conjugate()).inverse().map_err(|_| not_integral())?;
    let b = &(c - &c.conjugate()) * &im;
    let a = c - &(&b * tau);
    match (a.as_integer(), b.as_integer()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(not_integral()),
    }
}

/// Realifies a `g×g` matrix over the CM orders into a `2g×2g` integer
/// matrix: entry `a + bτ` becomes the block `a·I + b·T`.
pub fn realify(m: &[Vec<Cyclotomic>], cm: &[Cm]) -> Result<IntMatrix, TorusError> {
    let g = cm.len();
    if m.len() != g || m.iter().any(|r| r.len() != g) {
        return Err(TorusError::DimensionMismatch {
            expected: g,
            found: m.len(),
        });
    }
    let mut out = IntMatrix::zeros(2 * g, 2 * g);
    for (r, row) in m.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            let tau = cm[r].tau()?;
            if cm[r] != cm[c] && entry.as_integer().is_none() {
                return Err(TorusError::NotIntegral(entry.to_string()));
            }
            let (a, b) = split_entry(entry, tau.as_ref())?;
            let t = cm[r].matrix();
            for i in 0..2 {
                for j in 0..2 {
                    let id = i64::from(i == j);
                    let v = if b == 0 { a * id } else { a * id + b * t.get(i, j) };
                    out.set(2 * r + i, 2 * c + j, v);
                }
            }
        }
    }
    Ok(out)
}

/// Point with coordinates given per factor as elements `u + vτ`.
pub fn torsion_point(values: &[Cyclotomic], cm: &[Cm]) -> Result<TorsionPoint, TorusError> {
    let mut coords = Vec::with_capacity(2 * values.len());
    for (c, kind) in values.iter().zip(cm) {
        if let Some(q) = c.as_rational() {
            coords.push(q.clone());
            coords.push(Rational::zero());
            continue;
        }
        let tau = kind.tau()?.ok_or_else(|| TorusError::NotIntegral(c.to_string()))?;
        let im = (&tau - &tau.conjugate()).inverse().map_err(|_| TorusError::NotIntegral(c.to_string()))?;
        let b = &(c - &c.conjugate()) * &im;
        let a = c - &(&b * &tau);
        match (a.as_rational(), b.as_rational()) {
            (Some(a), Some(b)) => {
                coords.push(a.clone());
                coords.push(b.clone());
            }
            _ => return Err(TorusError::NotIntegral(c.to_string())),
        }
    }
    Ok(TorsionPoint::new(coords))
}

/// A finite group acting holomorphically on a product of `g` elliptic curves.
#[derive(Debug, Clone)]
pub struct TorusAction {
    group: Arc<FiniteGroup<TorusElement>>,
    cm: Vec<Cm>,
}

impl TorusAction {
    pub fn new(group: Arc<FiniteGroup<TorusElement>>, cm: Vec<Cm>) -> Result<Self, TorusError> {
        let dim = 2 * cm.len();
        for e in group.elements() {
            if e.dim() != dim {
                return Err(TorusError::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            if !holomorphic(e.linear(), &cm) {
                return Err(TorusError::NotHolomorphic(e.to_string()));
            }
        }
        Ok(TorusAction { group, cm })
    }

    pub fn generate(generators: &[TorusElement], cm: Vec<Cm>, bound: usize) -> Result<Self, TorusError> {
        let g = FiniteGroup::generate(generators, bound)?;
        Self::new(Arc::new(g), cm)
    }

    pub fn group(&self) -> &Arc<FiniteGroup<TorusElement>> {
        &self.group
    }

    pub fn cm(&self) -> &[Cm] {
        &self.cm
    }

    pub fn factors(&self) -> usize {
        self.cm.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.cm.len()
    }

    /// Twice the lcm of element orders and translation denominators.
    pub fn default_torsion(&self) -> u32 {
        let mut l: u64 = 1;
        for (i, e) in self.group.elements().iter().enumerate() {
            l = num_integer::lcm(l, self.group.element_order(i) as u64);
            for t in e.translation() {
                l = num_integer::lcm(l, t.denom().to_u64().unwrap_or(1));
            }
        }
        (2 * l) as u32
    }
}

/// Commutes with the block-diagonal complex structure. Generic factors
/// admit only scalar integer blocks.
fn holomorphic(l: &IntMatrix, cm: &[Cm]) -> bool {
    let g = cm.len();
    for r in 0..g {
        for c in 0..g {
            let block = |i: usize, j: usize| l.get(2 * r + i, 2 * c + j);
            match (&cm[r], &cm[c]) {
                (Cm::Order(tr), Cm::Order(tc)) => {
                    // T_r · B = B · T_c
                    for i in 0..2 {
                        for j in 0..2 {
                            let lhs: i64 = (0..2).map(|k| tr.get(i, k) * block(k, j)).sum();
                            let rhs: i64 = (0..2).map(|k| block(i, k) * tc.get(k, j)).sum();
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
                _ => {
                    if block(0, 1) != 0 || block(1, 0) != 0 || block(0, 0) != block(1, 1) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn apply_affine(e: &TorusElement, p: &TorsionPoint) -> Result<TorsionPoint, TorusError> {
    if e.dim() != p.dim() {
        return Err(TorusError::DimensionMismatch {
            expected: e.dim(),
            found: p.dim(),
        });
    }
    Ok(TorsionPoint {
        coords: e.apply(&p.coords),
    })
}

/// Kernel of the endomorphism of `ℝ^{2g}/ℤ^{2g}` induced by `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyKernel {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<TorsionPoint>,
}

pub fn isogeny_kernel(m: &IntMatrix) -> Result<IsogenyKernel, TorusError> {
    if !m.is_square() {
        return Err(TorusError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let s = smith_normal_form(m);
    if s.rank() < m.rows() {
        return Err(TorusError::SingularMatrix);
    }
    let n = m.rows();
    let mut order = 1u64;
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        let d = d.to_u64().ok_or(TorusError::SingularMatrix)?;
        order *= d;
        if d > 1 {
            factors.push(d);
            let mut w = vec![Rational::zero(); n];
            w[i] = Rational::new(1, d as i64).expect("nonzero");
            generators.push(TorsionPoint::new(big_apply(&s.right, &w)));
        }
    }
    Ok(IsogenyKernel {
        order,
        invariant_factors: factors,
        generators,
    })
}

/// All points of the subgroup generated by `generators`.
pub fn span_points(generators: &[TorsionPoint], dim: usize) -> Vec<TorsionPoint> {
    let mut points = std::collections::BTreeSet::new();
    points.insert(TorsionPoint::zero(dim));
    let mut frontier: Vec<TorsionPoint> = points.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in generators {
            let sum: Vec<Rational> = p.coords.iter().zip(&g.coords).map(|(a, b)| a + b).collect();
            let q = TorsionPoint::new(sum);
            if points.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    points.into_iter().collect()
}

#[cfg(test)]
mod tests;

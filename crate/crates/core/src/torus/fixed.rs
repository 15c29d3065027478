//! Fixed loci of affine maps `x ↦ Lx + t` via Smith normal form of `L − I`.
//!
//! With `U(L − I)V = D` of rank `r` and `c = −Ut`, the substitution
//! `x = Vw` turns `(L − I)x ≡ −t` into `dᵢwᵢ ≡ cᵢ` for `i < r` and `cᵢ ∈ ℤ`
//! for `i ≥ r`. The last `2g − r` columns of `V` span the saturated kernel,
//! so components are labelled by `mᵢ = dᵢwᵢ − cᵢ mod dᵢ`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::ToPrimitive;

use super::{TorsionPoint, TorusError};
use crate::arith::lattice::{big_apply, smith_normal_form, BigMatrix};
use crate::arith::Rational;
use crate::groups::{FiniteGroup, GroupElement, TorusElement};

pub(crate) struct FixedLocus {
    dim: usize,
    rank: usize,
    diag: Vec<i64>,
    c: Vec<Rational>,
    nonempty: bool,
    right: BigMatrix,
    right_inv: BigMatrix,
}

impl FixedLocus {
    pub(crate) fn new(e: &TorusElement) -> Self {
        let a = e.linear().minus_identity();
        let s = smith_normal_form(&a);
        let dim = a.rows();
        let rank = s.rank();
        let neg_t: Vec<Rational> = e.translation().iter().map(|x| -x).collect();
        let c = big_apply(&s.left, &neg_t);
        let nonempty = c[rank..].iter().all(Rational::is_integer);
        let diag = s.diag[..rank].iter().map(|d| d.to_i64().expect("small invariant factor")).collect();
        FixedLocus {
            dim,
            rank,
            diag,
            c,
            nonempty,
            right: s.right,
            right_inv: s.right_inv,
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        !self.nonempty
    }

    pub(crate) fn component_count(&self) -> u64 {
        if !self.nonempty {
            return 0;
        }
        self.diag.iter().map(|&d| d as u64).product()
    }

    pub(crate) fn labels(&self) -> Vec<Vec<i64>> {
        if !self.nonempty {
            return Vec::new();
        }
        if self.rank == 0 {
            return vec![Vec::new()];
        }
        self.diag.iter().map(|&d| 0..d).multi_cartesian_product().collect()
    }

    fn w_coord(&self, i: usize, m: i64) -> Rational {
        &(&self.c[i] + &Rational::from_int(m)) / &Rational::from_int(self.diag[i])
    }

    /// Point of the component with the given label, zero along the kernel.
    pub(crate) fn representative(&self, label: &[i64]) -> TorsionPoint {
        let mut w = vec![Rational::zero(); self.dim];
        for (i, &m) in label.iter().enumerate() {
            w[i] = self.w_coord(i, m);
        }
        TorsionPoint::new(big_apply(&self.right, &w))
    }

    /// Component label of a point on the locus.
    pub(crate) fn label_of(&self, p: &TorsionPoint) -> Vec<i64> {
        let w = big_apply(&self.right_inv, p.coords());
        (0..self.rank)
            .map(|i| {
                let d = Rational::from_int(self.diag[i]);
                let m = &(&d * &w[i].fract_floor()) - &self.c[i];
                let m = m.to_i64().expect("point lies on the locus");
                m.rem_euclid(self.diag[i])
            })
            .collect()
    }

    /// Integral basis of the saturated kernel of `L − I`.
    pub(crate) fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        (self.rank..self.dim)
            .map(|j| self.right.iter().map(|row| Rational::from_bigint(row[j].clone())).collect())
            .collect()
    }

    /// Fixed points of order dividing `n`.
    pub(crate) fn points(&self, n: u32) -> Vec<TorsionPoint> {
        if !self.nonempty || n == 0 {
            return Vec::new();
        }
        let n_q = Rational::from_int(n as i64);
        let mut choices: Vec<Vec<Rational>> = Vec::with_capacity(self.dim);
        for i in 0..self.rank {
            let ok: Vec<Rational> = (0..self.diag[i])
                .map(|m| self.w_coord(i, m))
                .filter(|w| (w * &n_q).is_integer())
                .collect();
            if ok.is_empty() {
                return Vec::new();
            }
            choices.push(ok);
        }
        for _ in self.rank..self.dim {
            choices.push((0..n as i64).map(|k| Rational::new(k, n as i64).expect("n > 0")).collect());
        }
        let mut out: Vec<TorsionPoint> = choices
            .into_iter()
            .multi_cartesian_product()
            .map(|w| TorsionPoint::new(big_apply(&self.right, &w)))
            .collect();
        if self.dim == 0 {
            out = vec![TorsionPoint::zero(0)];
        }
        out.sort();
        out
    }

    /// Number of fixed points of order dividing `n`, without listing them.
    pub(crate) fn count(&self, n: u32) -> u64 {
        if !self.nonempty || n == 0 {
            return 0;
        }
        let n_q = Rational::from_int(n as i64);
        let mut total: u64 = 1;
        for i in 0..self.rank {
            let ok = (0..self.diag[i]).filter(|&m| (&self.w_coord(i, m) * &n_q).is_integer()).count();
            total *= ok as u64;
        }
        total * (n as u64).pow((self.dim - self.rank) as u32)
    }

    /// Smallest torsion level containing a fixed point.
    pub(crate) fn minimal_level(&self) -> Option<u32> {
        if !self.nonempty {
            return None;
        }
        let mut l: u64 = 1;
        for i in 0..self.rank {
            let best = (0..self.diag[i])
                .map(|m| self.w_coord(i, m).denom().to_u64().unwrap_or(u64::MAX))
                .min()
                .unwrap_or(1);
            l = num_integer::lcm(l, best);
        }
        Some(l as u32)
    }
}

/// Complex dimension of the fixed locus of the linear part.
pub fn fixed_dimension(e: &TorusElement) -> Result<usize, TorusError> {
    let k = e.dim() - e.moved_rank();
    if k % 2 == 1 {
        return Err(TorusError::OddKernelRank(k));
    }
    Ok(k / 2)
}

/// Fixed points of order dividing `n`, sorted.
pub fn fixed_torsion_points(e: &TorusElement, n: u32) -> Vec<TorsionPoint> {
    FixedLocus::new(e).points(n)
}

/// Fixed locus of one element: exact component count and the `n`-torsion
/// points of each component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocusCensus {
    pub dimension: usize,
    pub component_count: u64,
    pub torsion: u32,
    pub components: BTreeMap<Vec<i64>, Vec<TorsionPoint>>,
}

impl FixedLocusCensus {
    pub fn point_count(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }
}

pub fn fixed_components(e: &TorusElement, n: u32) -> Result<FixedLocusCensus, TorusError> {
    let dimension = fixed_dimension(e)?;
    let locus = FixedLocus::new(e);
    let points = locus.points(n);
    if points.is_empty() {
        if let Some(needed) = locus.minimal_level() {
            return Err(TorusError::TorsionBoundTooSmall {
                bound: n,
                needed: num_integer::lcm(needed, n),
            });
        }
    }
    let mut components: BTreeMap<Vec<i64>, Vec<TorsionPoint>> = BTreeMap::new();
    for p in points {
        components.entry(locus.label_of(&p)).or_default().push(p);
    }
    Ok(FixedLocusCensus {
        dimension,
        component_count: locus.component_count(),
        torsion: n,
        components,
    })
}

/// Orbit of components of `X^g` under the centralizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOrbit {
    pub labels: Vec<Vec<i64>>,
    /// For one-dimensional components: whether some stabilizing element acts
    /// with nontrivial linear part (quotient of genus zero).
    pub rational: Option<bool>,
}

/// Components of `X^g / C(g)`.
pub(crate) fn quotient_components(
    group: &FiniteGroup<TorusElement>,
    g: usize,
) -> Result<(usize, Vec<ComponentOrbit>), TorusError> {
    let e = group.element(g);
    let dimension = fixed_dimension(e)?;
    let locus = FixedLocus::new(e);
    let centralizer = group.centralizer_indices(g);
    let basis = locus.kernel_basis();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut orbits = Vec::new();
    for label in locus.labels() {
        if seen.contains(&label) {
            continue;
        }
        let p = locus.representative(&label);
        let mut members: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut rational = false;
        for &h in &centralizer {
            let h_el = group.element(h);
            let image = TorsionPoint::new(h_el.apply(p.coords()));
            let l = locus.label_of(&image);
            if l == label && dimension == 1 {
                let lin = h_el.linear();
                rational |= basis.iter().any(|s| lin.apply(s) != *s);
            }
            members.insert(l);
        }
        seen.extend(members.iter().cloned());
        orbits.push(ComponentOrbit {
            labels: members.into_iter().collect(),
            rational: (dimension == 1).then_some(rational),
        });
    }
    Ok((dimension, orbits))
}

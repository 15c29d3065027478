//! Ext groups as cohomology of `Hom_R(F_•, T)`, with the group acting on
//! each chain space.

use std::collections::HashMap;

use super::{EquivariantModule, FreeResolution, ModuleError, Poly};
use crate::arith::Cyclotomic;
use crate::linalg::{CycMatrix, Matrix};
use crate::rep::Character;

/// Ext in degrees 0, 1, 2.
#[derive(Debug, Clone)]
pub struct ExtProfile {
    pub dims: [usize; 3],
    pub invariants: [i64; 3],
    pub characters: Vec<Character>,
}

struct HomComplex<'a> {
    res: &'a FreeResolution,
    target: &'a EquivariantModule,
    /// `deltas[i]: Cⁱ → Cⁱ⁺¹`
    deltas: Vec<CycMatrix>,
}

impl<'a> HomComplex<'a> {
    fn new(source: &'a EquivariantModule, target: &'a EquivariantModule) -> Result<Self, ModuleError> {
        if !std::sync::Arc::ptr_eq(source.group(), target.group()) && source.group().elements() != target.group().elements() {
            return Err(ModuleError::GroupMismatch);
        }
        let res = source.resolution()?;
        let n = target.dim();
        let mut cache: HashMap<Poly, CycMatrix> = HashMap::new();
        let mut deltas = Vec::new();
        for (i, d) in res.differentials.iter().enumerate() {
            let r_i = res.stages[i].rank();
            let r_next = res.stages[i + 1].rank();
            let mut delta = Matrix::zeros(r_next * n, r_i * n);
            for (k, row) in d.iter().enumerate() {
                for (l, p) in row.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let block = cache
                        .entry(p.clone())
                        .or_insert_with(|| p.evaluate(target.x_action(), target.y_action()));
                    for a in 0..n {
                        for b in 0..n {
                            let v = block.get(a, b);
                            if !v.is_zero() {
                                delta.set(l * n + a, k * n + b, v.clone());
                            }
                        }
                    }
                }
            }
            deltas.push(delta);
        }
        Ok(HomComplex { res, target, deltas })
    }

    fn dim(&self, i: usize) -> usize {
        self.res.stages[i].rank() * self.target.dim()
    }

    /// `φ ↦ g∘φ∘g⁻¹` on `Cⁱ`, as `ρ_W(g⁻¹)ᵀ ⊗ ρ_T(g)`.
    fn action(&self, i: usize, g: usize) -> CycMatrix {
        let group = self.target.group();
        let w = self.res.stages[i].action.matrix(group.inv(g)).transpose();
        w.kron(self.target.action().matrix(g))
    }

    fn invariant_basis(&self, i: usize) -> CycMatrix {
        let dim = self.dim(i);
        if dim == 0 {
            return Matrix::zeros(0, 0);
        }
        let group = self.target.group();
        let id = Matrix::identity(dim);
        let mut stacked: Option<CycMatrix> = None;
        for g in group.generators() {
            let gi = group.index_of(g).expect("generator in group");
            let m = self.action(i, gi).sub(&id);
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        match stacked {
            Some(s) => s.kernel(),
            None => id,
        }
    }

    fn delta_rank_on(&self, i: usize, basis: &CycMatrix) -> usize {
        if basis.cols() == 0 || self.deltas[i].rows() == 0 {
            return 0;
        }
        self.deltas[i].mul(basis).rank()
    }

    fn invariants(&self) -> [i64; 3] {
        let bases: Vec<CycMatrix> = (0..3).map(|i| self.invariant_basis(i)).collect();
        let mut out = [0i64; 3];
        for i in 0..3 {
            let mut h = bases[i].cols() as i64;
            if i < 2 {
                h -= self.delta_rank_on(i, &bases[i]) as i64;
            }
            if i > 0 {
                h -= self.delta_rank_on(i - 1, &bases[i - 1]) as i64;
            }
            out[i] = h;
        }
        out
    }

    fn dims(&self) -> [usize; 3] {
        let ranks: Vec<usize> = self.deltas.iter().map(|d| if d.rows() == 0 || d.cols() == 0 { 0 } else { d.rank() }).collect();
        [
            self.dim(0) - ranks[0],
            self.dim(1) - ranks[0] - ranks[1],
            self.dim(2) - ranks[1],
        ]
    }

    /// `χ(Hⁱ) = χ(Cⁱ) − χ(im δⁱ) − χ(im δⁱ⁻¹)`.
    fn characters(&self) -> Vec<Character> {
        let group = self.target.group();
        let cs = group.classes();
        let images: Vec<Option<(CycMatrix, CycMatrix)>> = self
            .deltas
            .iter()
            .map(|d| {
                if d.rows() == 0 || d.cols() == 0 {
                    return None;
                }
                let b = d.column_space();
                if b.cols() == 0 {
                    return None;
                }
                let l = b.left_inverse().expect("independent columns");
                Some((b, l))
            })
            .collect();
        let image_trace = |i: usize, g: usize| -> Cyclotomic {
            match &images[i] {
                None => Cyclotomic::zero(),
                Some((b, l)) => l.mul(&self.action(i + 1, g)).mul(b).trace(),
            }
        };
        (0..3)
            .map(|i| {
                let values = cs
                    .classes
                    .iter()
                    .map(|c| {
                        let g = c.representative;
                        let w = self.res.stages[i].action.matrix(group.inv(g)).trace();
                        let mut v = &w * &self.target.action().matrix(g).trace();
                        if i < 2 {
                            v = &v - &image_trace(i, g);
                        }
                        if i > 0 {
                            v = &v - &image_trace(i - 1, g);
                        }
                        v
                    })
                    .collect();
                Character::new(cs.clone(), values)
            })
            .collect()
    }
}

/// Ext characters and invariant dimensions in degrees 0..2.
pub fn ext_profile(source: &EquivariantModule, target: &EquivariantModule) -> Result<ExtProfile, ModuleError> {
    let hc = HomComplex::new(source, target)?;
    Ok(ExtProfile {
        dims: hc.dims(),
        invariants: hc.invariants(),
        characters: hc.characters(),
    })
}

/// Invariant dimensions only, from the subcomplex of invariant cochains.
pub fn ext_invariants(source: &EquivariantModule, target: &EquivariantModule) -> Result<[i64; 3], ModuleError> {
    Ok(HomComplex::new(source, target)?.invariants())
}

pub fn is_exceptional(m: &EquivariantModule) -> Result<bool, ModuleError> {
    Ok(ext_invariants(m, m)? == [1, 0, 0])
}

/// Invariant Ext dimensions for every ordered pair.
#[derive(Debug, Clone)]
pub struct SequenceReport {
    /// `matrix[i][j]` = dims of `Ext^•(Eᵢ, Eⱼ)^G`.
    pub matrix: Vec<Vec<[i64; 3]>>,
    pub exceptional: Vec<bool>,
    /// Pairs `(i, j)` with `i > j` and nonzero `Ext^•(Eᵢ, Eⱼ)^G`.
    pub violations: Vec<(usize, usize)>,
}

impl SequenceReport {
    pub fn passes(&self) -> bool {
        self.exceptional.iter().all(|&e| e) && self.violations.is_empty()
    }
}

pub fn check_semiorthogonal_sequence(objects: &[EquivariantModule]) -> Result<SequenceReport, ModuleError> {
    let n = objects.len();
    let mut matrix = vec![vec![[0i64; 3]; n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = ext_invariants(&objects[i], &objects[j])?;
        }
    }
    let exceptional = (0..n).map(|i| matrix[i][i] == [1, 0, 0]).collect();
    let violations = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .filter(|&(i, j)| matrix[i][j] != [0, 0, 0])
        .collect();
    Ok(SequenceReport {
        matrix,
        exceptional,
        violations,
    })
}

//! Finite-length equivariant modules over `ℂ[x, y]`: quotient bases,
//! characters, minimal free resolutions, and Ext profiles.

mod ext;
mod poly;
mod resolution;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::arith::Cyclotomic;
use crate::groups::{FiniteGroup, GroupElement, LinearElement};
use crate::linalg::{CycMatrix, Matrix};
use crate::rep::{Character, RepError, Representation};

pub use ext::{check_semiorthogonal_sequence, ext_profile, ext_invariants, is_exceptional, ExtProfile, SequenceReport};
pub use poly::{act_on_poly, degree_action, Poly};
pub use resolution::{minimal_resolution, minimal_resolution_general, FreeResolution, Stage};

pub type LinearGroup = FiniteGroup<LinearElement>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("ideal does not contain all forms of degree {0}")]
    NotFiniteColength(u32),
    #[error("ideal is not stable: {element} moves {generator} outside it")]
    NotStable { element: String, generator: String },
    #[error("group must act on a plane, got dimension {0}")]
    NotPlanar(usize),
    #[error("twist has {0} matrices, group has {1} elements")]
    TwistMismatch(usize, usize),
    #[error("resolution fails the Euler characteristic check in degree {0}")]
    ResolutionInconsistent(u32),
    #[error("modules are defined over different groups")]
    GroupMismatch,
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Per-degree data of `R/I` for a homogeneous ideal `I`.
#[derive(Debug, Clone)]
pub(crate) struct GradedIdeal {
    pub generators: Vec<(u32, Poly)>,
    /// RREF basis of `I_e` (rows over the monomials of degree `e`), for `e ≤ bound`.
    pub rref: Vec<CycMatrix>,
    pub pivots: Vec<Vec<usize>>,
    /// Σ of generator degrees; `I_e = R_e` from here on.
    pub bound: u32,
}

impl GradedIdeal {
    fn new(generators: Vec<(u32, Poly)>) -> Result<Self, ModuleError> {
        let bound: u32 = generators.iter().map(|(d, _)| d).sum();
        let mut rref = Vec::new();
        let mut pivots = Vec::new();
        for e in 0..=bound {
            let span = ideal_span(&generators, e);
            let (r, p) = span.rref();
            let rank = p.len();
            rref.push(r.submatrix(0, rank, 0, e as usize + 1));
            pivots.push(p);
        }
        if pivots[bound as usize].len() != bound as usize + 1 {
            return Err(ModuleError::NotFiniteColength(bound));
        }
        Ok(GradedIdeal {
            generators,
            rref,
            pivots,
            bound,
        })
    }

    /// Reduces a degree-`e` form modulo `I_e`; the result is supported on
    /// non-pivot monomials.
    pub fn reduce(&self, e: u32, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        if e > self.bound {
            return vec![Cyclotomic::zero(); v.len()];
        }
        let mut v = v.to_vec();
        let r = &self.rref[e as usize];
        for (row, &p) in self.pivots[e as usize].iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, entry) in r.row(row).iter().enumerate() {
                if !entry.is_zero() {
                    v[j] = &v[j] - &(&c * entry);
                }
            }
        }
        v
    }

    pub fn contains(&self, e: u32, v: &[Cyclotomic]) -> bool {
        self.reduce(e, v).iter().all(Cyclotomic::is_zero)
    }

    /// Basis of `I_e` as columns.
    pub fn basis(&self, e: u32) -> CycMatrix {
        if e > self.bound {
            return Matrix::identity(e as usize + 1);
        }
        self.rref[e as usize].transpose()
    }

    pub fn standard_monomials(&self, e: u32) -> Vec<usize> {
        if e >= self.bound {
            return Vec::new();
        }
        let p = &self.pivots[e as usize];
        (0..=e as usize).filter(|k| !p.contains(k)).collect()
    }
}

/// Rows spanning `I_e`: all monomial multiples of generators.
fn ideal_span(generators: &[(u32, Poly)], e: u32) -> CycMatrix {
    let n = e as usize + 1;
    let mut rows = Vec::new();
    for (d, f) in generators {
        if *d > e {
            continue;
        }
        let shift = e - d;
        for k in 0..=shift {
            let m = Poly::monomial(shift - k, k, Cyclotomic::one()).mul(f);
            rows.push(m.to_vector(e).expect("homogeneous"));
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, n);
    }
    Matrix::from_rows(rows)
}

/// `R/I ⊗ ρ` with explicit bases and actions.
#[derive(Debug, Clone)]
pub struct EquivariantModule {
    name: String,
    group: Arc<LinearGroup>,
    pub(crate) ideal: Arc<GradedIdeal>,
    twist: Representation,
    /// `(degree, monomial index)` of each untwisted basis vector.
    monomials: Vec<(u32, usize)>,
    x_action: CycMatrix,
    y_action: CycMatrix,
    action: Representation,
    resolution: Arc<OnceLock<Result<FreeResolution, ModuleError>>>,
}

/// Builds `R/I` for homogeneous generators, optionally twisted.
pub fn quotient_module(
    group: &Arc<LinearGroup>,
    generators: &[Poly],
    twist: Option<&Representation>,
) -> Result<EquivariantModule, ModuleError> {
    if let Some(g) = group.elements().first() {
        if g.dim() != 2 {
            return Err(ModuleError::NotPlanar(g.dim()));
        }
    }
    let mut gens = Vec::new();
    for f in generators {
        if f.is_zero() {
            continue;
        }
        let d = f.homogeneous_degree().ok_or_else(|| ModuleError::NotHomogeneous(f.to_string()))?;
        gens.push((d, f.clone()));
    }
    let ideal = GradedIdeal::new(gens)?;

    for g in group.generators() {
        for (d, f) in &ideal.generators {
            let image = act_on_poly(g, f).to_vector(*d).expect("degree preserved");
            if !ideal.contains(*d, &image) {
                return Err(ModuleError::NotStable {
                    element: g.to_string(),
                    generator: f.to_string(),
                });
            }
        }
    }

    let mut monomials = Vec::new();
    let mut offset = Vec::new();
    for e in 0..ideal.bound {
        offset.push(monomials.len());
        for k in ideal.standard_monomials(e) {
            monomials.push((e, k));
        }
    }
    let n = monomials.len();
    let locate = |e: u32, v: &[Cyclotomic], col: &mut Vec<Cyclotomic>| {
        if e >= ideal.bound {
            return;
        }
        let r = ideal.reduce(e, v);
        for (pos, k) in ideal.standard_monomials(e).into_iter().enumerate() {
            col[offset[e as usize] + pos] = r[k].clone();
        }
    };
    let unit = |len: usize, k: usize| {
        let mut v = vec![Cyclotomic::zero(); len];
        v[k] = Cyclotomic::one();
        v
    };

    let mut x_cols = Vec::with_capacity(n);
    let mut y_cols = Vec::with_capacity(n);
    for &(e, k) in &monomials {
        let mut cx = vec![Cyclotomic::zero(); n];
        locate(e + 1, &unit(e as usize + 2, k), &mut cx);
        x_cols.push(cx);
        let mut cy = vec![Cyclotomic::zero(); n];
        locate(e + 1, &unit(e as usize + 2, k + 1), &mut cy);
        y_cols.push(cy);
    }
    let from_cols = |cols: Vec<Vec<Cyclotomic>>| Matrix::from_rows(cols).transpose();
    let x_action = if n == 0 { Matrix::zeros(0, 0) } else { from_cols(x_cols) };
    let y_action = if n == 0 { Matrix::zeros(0, 0) } else { from_cols(y_cols) };

    let mut matrices = Vec::with_capacity(group.order());
    for g in group.elements() {
        let per_degree: Vec<CycMatrix> = (0..ideal.bound).map(|e| degree_action(g, e)).collect();
        let mut cols = Vec::with_capacity(n);
        for &(e, k) in &monomials {
            let mut c = vec![Cyclotomic::zero(); n];
            locate(e, &per_degree[e as usize].column(k), &mut c);
            cols.push(c);
        }
        matrices.push(if n == 0 { Matrix::zeros(0, 0) } else { from_cols(cols) });
    }
    let base_action = Representation::from_matrices(matrices)?;

    let twist = match twist {
        Some(t) => {
            if t.matrices().len() != group.order() {
                return Err(ModuleError::TwistMismatch(t.matrices().len(), group.order()));
            }
            t.clone()
        }
        None => Representation::trivial(group, 1),
    };
    let r = twist.dim();
    let action = if r == 1 && twist.matrices().iter().all(Matrix::is_identity) {
        base_action
    } else {
        base_action.tensor(&twist)
    };
    let id_r = Matrix::identity(r);
    let name = generators.iter().map(Poly::to_string).collect::<Vec<_>>().join(", ");
    Ok(EquivariantModule {
        name: format!("R/({name})"),
        group: group.clone(),
        ideal: Arc::new(ideal),
        x_action: x_action.kron(&id_r),
        y_action: y_action.kron(&id_r),
        twist,
        monomials,
        action,
        resolution: Arc::new(OnceLock::new()),
    })
}

impl EquivariantModule {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &Arc<LinearGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    pub fn twist(&self) -> &Representation {
        &self.twist
    }

    pub fn ideal_generators(&self) -> Vec<Poly> {
        self.ideal.generators.iter().map(|(_, f)| f.clone()).collect()
    }

    /// Monomial labels of the untwisted basis.
    pub fn basis_labels(&self) -> Vec<String> {
        self.monomials
            .iter()
            .map(|&(e, k)| Poly::monomial(e - k as u32, k as u32, Cyclotomic::one()).to_string())
            .collect()
    }

    /// Dimension of each graded piece of `R/I` (before twisting).
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut h: Vec<usize> = (0..self.ideal.bound).map(|e| self.ideal.standard_monomials(e).len()).collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    pub fn x_action(&self) -> &CycMatrix {
        &self.x_action
    }

    pub fn y_action(&self) -> &CycMatrix {
        &self.y_action
    }

    pub fn action(&self) -> &Representation {
        &self.action
    }

    /// Minimal resolution, computed once per module.
    pub fn resolution(&self) -> Result<&FreeResolution, ModuleError> {
        self.resolution.get_or_init(|| minimal_resolution(self)).as_ref().map_err(Clone::clone)
    }

    /// Copy of the module carrying a caller-supplied resolution.
    pub fn with_resolution(&self, res: FreeResolution) -> EquivariantModule {
        let mut m = self.clone();
        let cell = OnceLock::new();
        let _ = cell.set(Ok(res));
        m.resolution = Arc::new(cell);
        m
    }

    pub fn character(&self) -> Character {
        self.action.character(&self.group)
    }

    /// Same ideal, twisted by `rho` on top of the current twist.
    pub fn twisted(&self, rho: &Representation) -> Result<EquivariantModule, ModuleError> {
        let t = self.twist.tensor(rho);
        let mut m = quotient_module(&self.group, &self.ideal_generators(), Some(&t))?;
        m.name = self.name.clone();
        Ok(m)
    }

    /// Commutation and equivariance identities on generators:
    /// `XY = YX` and `g(x·m) = (g·x)(g·m)`.
    pub fn check_structure(&self) -> bool {
        if self.x_action.mul(&self.y_action) != self.y_action.mul(&self.x_action) {
            return false;
        }
        for g in self.group.generators() {
            let i = self.group.index_of(g).expect("generator in group");
            let a = self.action.matrix(i);
            let gx = act_on_poly(g, &Poly::x());
            let gy = act_on_poly(g, &Poly::y());
            let lhs_x = a.mul(&self.x_action);
            let rhs_x = gx.evaluate(&self.x_action, &self.y_action).mul(a);
            let lhs_y = a.mul(&self.y_action);
            let rhs_y = gy.evaluate(&self.x_action, &self.y_action).mul(a);
            if lhs_x != rhs_x || lhs_y != rhs_y {
                return false;
            }
        }
        true
    }
}

/// Character of a module.
pub fn module_character(m: &EquivariantModule) -> Character {
    m.character()
}

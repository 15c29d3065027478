//! Graded minimal free resolutions `0 → R⊗W₂ → R⊗W₁ → R⊗W₀` with
//! G-stable generator spaces.

use super::{act_on_poly, degree_action, EquivariantModule, LinearGroup, ModuleError, Poly};
use crate::arith::Cyclotomic;
use crate::linalg::{CycMatrix, Matrix};
use crate::rep::Representation;

/// Generator space `Wᵢ`: one degree per basis vector and the group action.
#[derive(Debug, Clone)]
pub struct Stage {
    pub degrees: Vec<u32>,
    pub action: Representation,
}

impl Stage {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub stages: Vec<Stage>,
    /// `differentials[i]` maps stage `i+1` to stage `i`; entry `[k][l]` is the
    /// coefficient of generator `k` in the image of generator `l`.
    pub differentials: Vec<Vec<Vec<Poly>>>,
    pub koszul: bool,
}

impl FreeResolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(Stage::rank).collect()
    }

    /// `d ∘ d = 0`.
    pub fn check_complex(&self) -> bool {
        for w in self.differentials.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            for row in a {
                for l in 0..b.first().map_or(0, Vec::len) {
                    let mut acc = Poly::zero();
                    for (k, p) in row.iter().enumerate() {
                        acc = acc.add(&p.mul(&b[k][l]));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `D·A'(g) = A(g)·(g·D)` for every generator `g` and differential `D`.
    pub fn check_equivariance(&self, group: &LinearGroup) -> bool {
        for g in group.generators() {
            let gi = group.index_of(g).expect("generator in group");
            for (i, d) in self.differentials.iter().enumerate() {
                let a = self.stages[i].action.matrix(gi);
                let a2 = self.stages[i + 1].action.matrix(gi);
                let rows = d.len();
                let cols = self.stages[i + 1].rank();
                for j in 0..rows {
                    for l in 0..cols {
                        let mut lhs = Poly::zero();
                        for m in 0..cols {
                            lhs = lhs.add(&d[j][m].scale(a2.get(m, l)));
                        }
                        let mut rhs = Poly::zero();
                        for k in 0..rows {
                            rhs = rhs.add(&act_on_poly(g, &d[k][l]).scale(a.get(j, k)));
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn twisted(self, rho: &Representation) -> FreeResolution {
        let r = rho.dim();
        if r == 1 && rho.matrices().iter().all(Matrix::is_identity) {
            return self;
        }
        let stages = self
            .stages
            .iter()
            .map(|s| Stage {
                degrees: s.degrees.iter().flat_map(|&d| std::iter::repeat_n(d, r)).collect(),
                action: s.action.tensor(rho),
            })
            .collect();
        let differentials = self
            .differentials
            .iter()
            .map(|d| {
                let rows = d.len();
                let cols = d.first().map_or(0, Vec::len);
                (0..rows * r)
                    .map(|i| {
                        (0..cols * r)
                            .map(|j| if i % r == j % r { d[i / r][j / r].clone() } else { Poly::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FreeResolution {
            stages,
            differentials,
            koszul: self.koszul,
        }
    }
}

fn dim_r(n: i64) -> i64 {
    if n >= 0 {
        n + 1
    } else {
        0
    }
}

/// Kernel of the Reynolds average of a projection onto `sub`, intersected
/// with `big`: a G-stable complement of `sub` inside `big`.
fn stable_complement(sub: &CycMatrix, big: &CycMatrix, actions: &[CycMatrix], group: &LinearGroup) -> CycMatrix {
    let n = big.rows();
    let u = if sub.cols() == 0 { sub.clone() } else { sub.column_space() };
    let b = big.column_space();
    if u.cols() == b.cols() {
        return Matrix::zeros(n, 0);
    }
    if u.cols() == 0 {
        return b;
    }
    let (_, pivots) = u.hstack(&Matrix::identity(n)).rref();
    let t = u.hstack(&Matrix::identity(n)).select_columns(&pivots);
    let t_inv = t.inverse().expect("completed basis");
    let pi = u.mul(&t_inv.submatrix(0, u.cols(), 0, n));
    let mut avg = Matrix::zeros(n, n);
    for (i, p) in actions.iter().enumerate() {
        avg = avg.add(&p.mul(&pi).mul(&actions[group.inv(i)]));
    }
    b.mul(&avg.mul(&b).kernel())
}

/// Matrix of the group element on the span of `basis`, which must be stable.
fn restrict(basis: &CycMatrix, action: &CycMatrix) -> CycMatrix {
    basis.solve(&action.mul(basis)).expect("subspace is G-stable")
}

fn block_diag(blocks: &[CycMatrix]) -> CycMatrix {
    blocks.iter().fold(Matrix::zeros(0, 0), |acc, b| acc.direct_sum(b))
}

/// Minimal generators of `I` as a G-stable space, degree by degree.
fn first_stage(m: &EquivariantModule) -> (Vec<(u32, Poly)>, Representation) {
    let ideal = &m.ideal;
    let group = m.group();
    let max_deg = ideal.generators.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let mut gens = Vec::new();
    let mut blocks: Vec<Vec<CycMatrix>> = vec![Vec::new(); group.order()];
    for e in 0..=max_deg {
        let ie = ideal.basis(e);
        if ie.cols() == 0 {
            continue;
        }
        let n = e as usize + 1;
        let shifted = if e == 0 {
            Matrix::zeros(n, 0)
        } else {
            let prev = ideal.basis(e - 1);
            let xs = Matrix::from_fn(n, prev.cols(), |i, j| if i < n - 1 { prev.get(i, j).clone() } else { Cyclotomic::zero() });
            let ys = Matrix::from_fn(n, prev.cols(), |i, j| if i > 0 { prev.get(i - 1, j).clone() } else { Cyclotomic::zero() });
            xs.hstack(&ys)
        };
        let actions: Vec<CycMatrix> = group.elements().iter().map(|g| degree_action(g, e)).collect();
        let c = stable_complement(&shifted, &ie, &actions, group);
        if c.cols() == 0 {
            continue;
        }
        for j in 0..c.cols() {
            gens.push((e, Poly::from_vector(e, &c.column(j))));
        }
        for (i, p) in actions.iter().enumerate() {
            blocks[i].push(restrict(&c, p));
        }
    }
    let matrices = blocks.iter().map(|b| block_diag(b)).collect();
    let rep = Representation::from_matrices(matrices).expect("square blocks");
    (gens, rep)
}

struct Ambient {
    offsets: Vec<Option<usize>>,
    dim: usize,
}

/// Coordinates of `⊕ⱼ R_{e−dⱼ}`.
fn ambient(degrees: &[u32], e: u32) -> Ambient {
    let mut offsets = Vec::new();
    let mut dim = 0;
    for &d in degrees {
        if d <= e {
            offsets.push(Some(dim));
            dim += (e - d) as usize + 1;
        } else {
            offsets.push(None);
        }
    }
    Ambient { offsets, dim }
}

fn general_resolution(m: &EquivariantModule) -> Result<FreeResolution, ModuleError> {
    let group = m.group();
    let (gens, w1) = first_stage(m);
    let degrees: Vec<u32> = gens.iter().map(|(d, _)| *d).collect();
    let hilbert = m.hilbert_function();
    let top = hilbert.iter().rposition(|&h| h > 0).unwrap_or(0) as u32;
    let syz_bound = top + 2;

    let mut syz_gens: Vec<(u32, Vec<Poly>)> = Vec::new();
    let mut w2_blocks: Vec<Vec<CycMatrix>> = vec![Vec::new(); group.order()];
    let mut prev_syz: Option<(Ambient, CycMatrix)> = None;
    for e in 0..=syz_bound {
        let amb = ambient(&degrees, e);
        let n = e as usize + 1;
        // multiplication map ⊕ R_{e−dⱼ} → R_e
        let mut cols = Vec::with_capacity(amb.dim);
        for (j, (d, f)) in gens.iter().enumerate() {
            if amb.offsets[j].is_none() {
                continue;
            }
            let s = e - d;
            for k in 0..=s {
                let p = Poly::monomial(s - k, k, Cyclotomic::one()).mul(f);
                cols.push(p.to_vector(e).expect("homogeneous"));
            }
        }
        if amb.dim == 0 {
            prev_syz = Some((amb, Matrix::zeros(0, 0)));
            continue;
        }
        let mult = Matrix::from_rows(cols).transpose();
        debug_assert_eq!(mult.rows(), n);
        let syz = mult.kernel();

        let shifted = match &prev_syz {
            Some((pa, ps)) if ps.cols() > 0 => {
                let mut xs = Matrix::zeros(amb.dim, ps.cols());
                let mut ys = Matrix::zeros(amb.dim, ps.cols());
                for (j, off) in pa.offsets.iter().enumerate() {
                    let Some(off) = off else { continue };
                    let new_off = amb.offsets[j].expect("degree grows");
                    let len = (e - 1 - degrees[j]) as usize + 1;
                    for k in 0..len {
                        for c in 0..ps.cols() {
                            xs.set(new_off + k, c, ps.get(off + k, c).clone());
                            ys.set(new_off + k + 1, c, ps.get(off + k, c).clone());
                        }
                    }
                }
                xs.hstack(&ys)
            }
            _ => Matrix::zeros(amb.dim, 0),
        };

        if syz.cols() > 0 {
            let actions: Vec<CycMatrix> = (0..group.order())
                .map(|gi| {
                    let g = group.element(gi);
                    let a = w1.matrix(gi);
                    let mut q = Matrix::zeros(amb.dim, amb.dim);
                    for (k, ok) in amb.offsets.iter().enumerate() {
                        let Some(ok) = ok else { continue };
                        for (j, oj) in amb.offsets.iter().enumerate() {
                            let Some(oj) = oj else { continue };
                            let c = a.get(k, j);
                            if c.is_zero() {
                                continue;
                            }
                            let p = degree_action(g, e - degrees[j]).scale(c);
                            for r in 0..p.rows() {
                                for s in 0..p.cols() {
                                    q.set(ok + r, oj + s, p.get(r, s).clone());
                                }
                            }
                        }
                    }
                    q
                })
                .collect();
            let c = stable_complement(&shifted, &syz, &actions, group);
            if c.cols() > 0 {
                for col in 0..c.cols() {
                    let v = c.column(col);
                    let polys = amb
                        .offsets
                        .iter()
                        .enumerate()
                        .map(|(j, off)| match off {
                            Some(off) => {
                                let len = (e - degrees[j]) as usize + 1;
                                Poly::from_vector(e - degrees[j], &v[*off..off + len])
                            }
                            None => Poly::zero(),
                        })
                        .collect();
                    syz_gens.push((e, polys));
                }
                for (i, p) in actions.iter().enumerate() {
                    w2_blocks[i].push(restrict(&c, p));
                }
            }
        }
        prev_syz = Some((amb, syz));
    }
    let w2 = Representation::from_matrices(w2_blocks.iter().map(|b| block_diag(b)).collect())?;
    let d1 = vec![gens.iter().map(|(_, f)| f.clone()).collect::<Vec<_>>()];
    let d2: Vec<Vec<Poly>> = (0..gens.len())
        .map(|j| syz_gens.iter().map(|(_, ps)| ps[j].clone()).collect())
        .collect();
    let res = FreeResolution {
        stages: vec![
            Stage {
                degrees: vec![0],
                action: Representation::trivial(group, 1),
            },
            Stage { degrees, action: w1 },
            Stage {
                degrees: syz_gens.iter().map(|(d, _)| *d).collect(),
                action: w2,
            },
        ],
        differentials: vec![d1, d2],
        koszul: false,
    };
    euler_check(m, &res)?;
    Ok(res)
}

fn koszul_from(m: &EquivariantModule) -> Option<FreeResolution> {
    let group = m.group();
    let (gens, w1) = first_stage(m);
    if gens.len() != 2 {
        return None;
    }
    let (d1, f1) = &gens[0];
    let (d2, f2) = &gens[1];
    let det = w1
        .matrices()
        .iter()
        .map(|a| Matrix::from_rows(vec![vec![a.det()]]))
        .collect();
    Some(FreeResolution {
        stages: vec![
            Stage {
                degrees: vec![0],
                action: Representation::trivial(group, 1),
            },
            Stage {
                degrees: vec![*d1, *d2],
                action: w1,
            },
            Stage {
                degrees: vec![d1 + d2],
                action: Representation::from_matrices(det).expect("1×1 blocks"),
            },
        ],
        differentials: vec![vec![vec![f1.clone(), f2.clone()]], vec![vec![f2.neg()], vec![f1.clone()]]],
        koszul: true,
    })
}

fn euler_check(m: &EquivariantModule, res: &FreeResolution) -> Result<(), ModuleError> {
    let hilbert = m.hilbert_function();
    let top = hilbert.iter().rposition(|&h| h > 0).unwrap_or(0) as u32;
    let bound = m.ideal.bound.max(top + 2) + 2;
    for e in 0..=bound {
        let h = hilbert.get(e as usize).copied().unwrap_or(0) as i64;
        let mut chi = 0i64;
        for (i, s) in res.stages.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            chi += sign * s.degrees.iter().map(|&d| dim_r(e as i64 - d as i64)).sum::<i64>();
        }
        if chi != h {
            return Err(ModuleError::ResolutionInconsistent(e));
        }
    }
    Ok(())
}

/// Koszul complex when the ideal needs two generators, general syzygy
/// computation otherwise; twisted like the module.
pub fn minimal_resolution(m: &EquivariantModule) -> Result<FreeResolution, ModuleError> {
    let res = match koszul_from(m) {
        Some(k) => {
            euler_check(m, &k)?;
            k
        }
        None => general_resolution(m)?,
    };
    Ok(res.twisted(m.twist()))
}

/// Always runs the degreewise syzygy computation.
pub fn minimal_resolution_general(m: &EquivariantModule) -> Result<FreeResolution, ModuleError> {
    Ok(general_resolution(m)?.twisted(m.twist()))
}

use std::sync::Arc;

use num_integer::Integer;

use super::{abelian_invariant_factors, Character, RepError, Representation};
use crate::arith::Cyclotomic;
use crate::groups::{ClassStructure, FiniteGroup, GroupElement};
use crate::linalg::Matrix;

/// Irreducible characters with explicit realizations.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    classes: Arc<ClassStructure>,
    irreducibles: Vec<Character>,
    labels: Vec<String>,
    realizations: Vec<Representation>,
    /// Element indices of the abelian normal subgroup used, if any.
    pub abelian_subgroup: Option<Vec<usize>>,
}

impl CharacterTable {
    pub fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realizations(&self) -> &[Representation] {
        &self.realizations
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get(&self, label: &str) -> Option<&Character> {
        self.position(label).map(|i| &self.irreducibles[i])
    }

    pub fn realization(&self, label: &str) -> Option<&Representation> {
        self.position(label).map(|i| &self.realizations[i])
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(|c| c.degree_int().expect("integral degree")).collect()
    }

    /// Replaces labels; `namer` sees each irreducible in table order.
    pub fn relabel(&mut self, namer: impl Fn(&Character) -> String) {
        self.labels = self.irreducibles.iter().map(namer).collect();
    }

    /// Reorders rows to follow `order`, a permutation of current labels.
    pub fn reorder(&mut self, order: &[&str]) -> bool {
        let idx: Option<Vec<usize>> = order.iter().map(|l| self.position(l)).collect();
        let Some(idx) = idx else { return false };
        if idx.len() != self.len() {
            return false;
        }
        self.irreducibles = idx.iter().map(|&i| self.irreducibles[i].clone()).collect();
        self.realizations = idx.iter().map(|&i| self.realizations[i].clone()).collect();
        self.labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        true
    }

    /// Label of an irreducible character, if it occurs.
    pub fn label_of(&self, chi: &Character) -> Option<&str> {
        self.irreducibles.iter().position(|c| c == chi).map(|i| self.labels[i].as_str())
    }

    pub fn rows_orthonormal(&self) -> bool {
        self.irreducibles.iter().enumerate().all(|(i, a)| {
            self.irreducibles.iter().enumerate().all(|(j, b)| {
                let ip = a.inner_product(b).expect("same group");
                if i == j {
                    ip.is_one()
                } else {
                    ip.is_zero()
                }
            })
        })
    }

    /// Σ_χ χ(c)·conj χ(c') = δ·|C(c)|.
    pub fn columns_orthogonal(&self) -> bool {
        let k = self.classes.len();
        (0..k).all(|c| {
            (0..k).all(|d| {
                let s = self.irreducibles.iter().fold(Cyclotomic::zero(), |acc, chi| {
                    &acc + &(chi.value(c) * &chi.value(d).conjugate())
                });
                let expect = if c == d {
                    Cyclotomic::from_int(self.classes.classes[c].centralizer_order as i64)
                } else {
                    Cyclotomic::zero()
                };
                s == expect
            })
        })
    }
}

struct Row {
    character: Character,
    realization: Representation,
}

fn finish(classes: Arc<ClassStructure>, mut rows: Vec<Row>, abelian_subgroup: Option<Vec<usize>>) -> CharacterTable {
    rows.sort_by(|a, b| {
        let key = |r: &Row| {
            (
                r.character.degree_int(),
                r.character.values().iter().any(|v| !v.is_one()),
                r.character.values().to_vec(),
            )
        };
        key(a).cmp(&key(b))
    });
    let labels = (0..rows.len())
        .map(|i| if i == 0 { "1".to_string() } else { format!("rho{}", i + 1) })
        .collect();
    CharacterTable {
        classes,
        irreducibles: rows.iter().map(|r| r.character.clone()).collect(),
        realizations: rows.into_iter().map(|r| r.realization).collect(),
        labels,
        abelian_subgroup,
    }
}

/// Values of every character of an abelian group, element by element.
fn dual_group<E: GroupElement>(k: &FiniteGroup<E>) -> Result<Vec<Vec<Cyclotomic>>, RepError> {
    let s = abelian_invariant_factors(k)?;
    let n = s.orders.iter().fold(1u64, |a, &b| a.lcm(&b));
    let total: u64 = s.orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut ks = Vec::with_capacity(s.orders.len());
        for &d in &s.orders {
            ks.push(code % d);
            code /= d;
        }
        let values = s
            .coords
            .iter()
            .map(|c| {
                let e: u64 = ks.iter().zip(c).zip(&s.orders).map(|((k, x), d)| k * x * (n / d)).sum();
                Cyclotomic::root_of_unity(n as u32, (e % n) as i64)
            })
            .collect();
        out.push(values);
    }
    Ok(out)
}

fn linear_row<E: GroupElement>(g: &FiniteGroup<E>, values: Vec<Cyclotomic>) -> Row {
    let cs = g.classes();
    let class_values = cs.classes.iter().map(|c| values[c.representative].clone()).collect();
    let realization = Representation::from_matrices(
        values.into_iter().map(|v| Matrix::from_rows(vec![vec![v]])).collect(),
    )
    .expect("1×1 matrices");
    Row {
        character: Character::new(cs, class_values),
        realization,
    }
}

/// An abelian subgroup of index 2 together with an involution outside it.
fn find_split_index_two<E: GroupElement>(g: &FiniteGroup<E>) -> Option<(Vec<usize>, usize)> {
    let n = g.order();
    let squares: Vec<usize> = (0..n).map(|x| g.mul(x, x)).collect();
    let s = g.generated_by(&squares);
    // greedy 𝔽₂-basis of G/S
    let mut basis: Vec<usize> = Vec::new();
    let mut span = s.clone();
    for x in 0..n {
        if span.binary_search(&x).is_err() {
            basis.push(x);
            let mut gens = squares.clone();
            gens.extend(&basis);
            span = g.generated_by(&gens);
        }
    }
    let r = basis.len();
    if r == 0 || r > 16 {
        return None;
    }
    let mut bits = vec![0u32; n];
    for mask in 0u32..(1 << r) {
        let mut prod = g.identity_index();
        for (i, &b) in basis.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = g.mul(prod, b);
            }
        }
        for &x in &s {
            bits[g.mul(prod, x)] = mask;
        }
    }
    for f in 1u32..(1 << r) {
        let k: Vec<usize> = (0..n).filter(|&x| (bits[x] & f).count_ones().is_multiple_of(2)).collect();
        if !k.iter().all(|&a| k.iter().all(|&b| g.commutes(a, b))) {
            continue;
        }
        let sigma = (0..n).find(|&x| k.binary_search(&x).is_err() && squares[x] == g.identity_index());
        if let Some(sigma) = sigma {
            return Some((k, sigma));
        }
    }
    None
}

/// Character table of an abelian or abelian-by-C₂ group.
pub fn character_table<E: GroupElement>(g: &FiniteGroup<E>) -> Result<CharacterTable, RepError> {
    let cs = g.classes();
    if cs.len() == g.order() {
        let rows = dual_group(g)?.into_iter().map(|v| linear_row(g, v)).collect();
        return Ok(finish(cs, rows, Some((0..g.order()).collect())));
    }
    let (k_idx, sigma) = find_split_index_two(g).ok_or(RepError::UnsupportedStructure)?;
    let k = g.subgroup(&k_idx)?;
    // position in K of each element of G, if it lies in K
    let to_k: Vec<Option<usize>> = g.elements().iter().map(|e| k.index_of(e)).collect();
    let lambdas = dual_group(&k)?;
    let n = g.order();
    let conj_sigma: Vec<usize> = (0..n).map(|x| g.conjugate(x, sigma)).collect();

    let lam_at = |lam: &Vec<Cyclotomic>, x: usize| -> Option<Cyclotomic> { to_k[x].map(|i| lam[i].clone()) };
    let twisted = |lam: &Vec<Cyclotomic>| -> Vec<Cyclotomic> {
        k.elements()
            .iter()
            .map(|e| {
                let x = g.index_of(e).expect("K ⊂ G");
                lam_at(lam, conj_sigma[x]).expect("K is normal")
            })
            .collect()
    };

    let mut rows = Vec::new();
    let mut used = vec![false; lambdas.len()];
    for (li, lam) in lambdas.iter().enumerate() {
        if used[li] {
            continue;
        }
        used[li] = true;
        let tw = twisted(lam);
        if tw == *lam {
            for sign in [1i64, -1] {
                let s = Cyclotomic::from_int(sign);
                let values: Vec<Cyclotomic> = (0..n)
                    .map(|x| match lam_at(lam, x) {
                        Some(v) => v,
                        None => &s * &lam_at(lam, g.mul(x, sigma)).expect("xσ ∈ K"),
                    })
                    .collect();
                rows.push(linear_row(g, values));
            }
        } else {
            let partner = lambdas.iter().position(|l| *l == tw).expect("σ permutes characters of K");
            used[partner] = true;
            let t = [g.identity_index(), sigma];
            let lam_or_zero = |x: usize| lam_at(lam, x).unwrap_or_else(Cyclotomic::zero);
            let matrices = (0..n)
                .map(|x| {
                    Matrix::from_fn(2, 2, |i, j| {
                        let y = g.mul(g.mul(g.inv(t[i]), x), t[j]);
                        lam_or_zero(y)
                    })
                })
                .collect();
            let realization = Representation::from_matrices(matrices)?;
            let character = realization.character(g);
            rows.push(Row {
                character,
                realization,
            });
        }
    }
    Ok(finish(cs, rows, Some(k_idx)))
}

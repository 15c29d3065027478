use num_traits::ToPrimitive;

use super::RepError;
use crate::arith::lattice::{smith_normal_form, IntMatrix};
use crate::groups::{FiniteGroup, GroupElement};

/// Decomposition of a finite abelian group as `⊕ ℤ/dᵢ` with `d₁ | d₂ | …`.
#[derive(Debug, Clone)]
pub struct AbelianStructure {
    /// Element index of each independent generator.
    pub generators: Vec<usize>,
    pub orders: Vec<u64>,
    /// Coordinates of every element with respect to `generators`.
    pub coords: Vec<Vec<u64>>,
}

/// Greedy generating set: walk elements in canonical order, keep those
/// outside the span so far.
fn small_generating_set<E: GroupElement>(k: &FiniteGroup<E>) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = k.generated_by(&gens);
    for i in 0..k.order() {
        if span.binary_search(&i).is_err() {
            gens.push(i);
            span = k.generated_by(&gens);
        }
    }
    gens
}

pub fn abelian_invariant_factors<E: GroupElement>(k: &FiniteGroup<E>) -> Result<AbelianStructure, RepError> {
    let n = k.order();
    if !(0..n).all(|a| (0..n).all(|b| k.commutes(a, b))) {
        return Err(RepError::NotAbelian);
    }
    let gens = small_generating_set(k);
    let m = gens.len();
    if m == 0 {
        return Ok(AbelianStructure {
            generators: Vec::new(),
            orders: Vec::new(),
            coords: vec![Vec::new(); n],
        });
    }

    // spanning tree of the Cayley graph gives exponent vectors v(x)
    let mut v: Vec<Option<Vec<i64>>> = vec![None; n];
    v[k.identity_index()] = Some(vec![0; m]);
    let mut queue = vec![k.identity_index()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = k.mul(s, x);
            if v[y].is_none() {
                let mut e = v[x].clone().expect("visited");
                e[i] += 1;
                v[y] = Some(e);
                queue.push(y);
            }
        }
    }
    let v: Vec<Vec<i64>> = v.into_iter().map(|e| e.expect("generators span")).collect();

    // relations v(x) + e_i − v(s_i x) generate the kernel of ℤ^m → K
    let mut rows = Vec::with_capacity(n * m);
    for x in 0..n {
        for (i, &s) in gens.iter().enumerate() {
            let y = k.mul(s, x);
            let mut r: Vec<i64> = v[x].iter().zip(&v[y]).map(|(a, b)| a - b).collect();
            r[i] += 1;
            if r.iter().any(|&c| c != 0) {
                rows.push(r);
            }
        }
    }
    if rows.is_empty() {
        unreachable!("a finite group always has relations");
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
    let right: Vec<Vec<i64>> = crate::arith::lattice::big_to_i64(&snf.right).expect("small transform");
    let right_inv: Vec<Vec<i64>> = crate::arith::lattice::big_to_i64(&snf.right_inv).expect("small transform");
    let diag: Vec<u64> = snf.diag.iter().map(|d| d.to_u64().expect("finite abelian group")).collect();

    let keep: Vec<usize> = (0..m).filter(|&i| diag[i] > 1).collect();
    let generators: Vec<usize> = keep
        .iter()
        .map(|&i| {
            let mut x = k.identity_index();
            for (j, &s) in gens.iter().enumerate() {
                let ord = k.element_order(s) as i64;
                for _ in 0..right_inv[i][j].rem_euclid(ord) {
                    x = k.mul(s, x);
                }
            }
            x
        })
        .collect();
    let orders: Vec<u64> = keep.iter().map(|&i| diag[i]).collect();
    let coords: Vec<Vec<u64>> = v
        .iter()
        .map(|e| {
            keep.iter()
                .map(|&i| {
                    let c: i64 = (0..m).map(|j| e[j] * right[j][i]).sum();
                    c.rem_euclid(diag[i] as i64) as u64
                })
                .collect()
        })
        .collect();
    Ok(AbelianStructure {
        generators,
        orders,
        coords,
    })
}

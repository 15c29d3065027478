//! Finite groups realized by matrices or affine maps of tori.

mod linear;
mod torus_element;

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use linear::LinearElement;
pub use torus_element::TorusElement;
pub(crate) use torus_element::reduce_mod_one;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded bound {bound}")]
    ClosureExceeded { bound: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("element not in group")]
    ElementNotInGroup,
    #[error("no generators given")]
    NoGenerators,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("integer overflow while composing torus elements")]
    Overflow,
}

/// A realization of group elements. `Ord` is the canonical serialization
/// order that fixes representatives and report orderings.
pub trait GroupElement: Clone + Eq + Hash + Ord + Debug + Send + Sync {
    /// `self ∘ other`: apply `other` first.
    fn compose(&self, other: &Self) -> Result<Self, GroupError>;
    /// Identity of the same realization and dimension.
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn dim(&self) -> usize;
}

/// Groups above this order get a multiplication table.
const TABLE_THRESHOLD: usize = 256;

/// Finite group with elements sorted in canonical order.
#[derive(Debug)]
pub struct FiniteGroup<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<E>,
    table: Option<Vec<usize>>,
    classes: OnceLock<Arc<ClassStructure>>,
}

impl<E: GroupElement> Clone for FiniteGroup<E> {
    fn clone(&self) -> Self {
        FiniteGroup {
            elements: self.elements.clone(),
            index: self.index.clone(),
            identity: self.identity,
            inverses: self.inverses.clone(),
            generators: self.generators.clone(),
            table: self.table.clone(),
            classes: self.classes.clone(),
        }
    }
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Breadth-first closure of `generators` under composition.
    pub fn generate(generators: &[E], bound: usize) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let dim = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(GroupError::DimensionMismatch(dim, bad.dim()));
        }
        let id = first.identity_like();
        let mut seen: HashMap<E, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone(), ());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.compose(&x)?;
                if !seen.contains_key(&y) {
                    if seen.len() >= bound {
                        return Err(GroupError::ClosureExceeded { bound });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<E> = seen.into_keys().collect();
        Self::build(elements, generators.to_vec())
    }

    /// Builds a group from a set already known to be closed.
    pub fn from_closed(elements: Vec<E>) -> Result<Self, GroupError> {
        if elements.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        Self::build(elements, Vec::new())
    }

    fn build(mut elements: Vec<E>, generators: Vec<E>) -> Result<Self, GroupError> {
        elements.sort();
        elements.dedup();
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let identity = elements
            .iter()
            .position(GroupElement::is_identity)
            .ok_or(GroupError::ElementNotInGroup)?;
        let n = elements.len();
        let table = if n > TABLE_THRESHOLD {
            let mut t = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    let p = elements[i].compose(&elements[j])?;
                    t[i * n + j] = *index.get(&p).ok_or(GroupError::ElementNotInGroup)?;
                }
            }
            Some(t)
        } else {
            None
        };
        let mut group = FiniteGroup {
            elements,
            index,
            identity,
            inverses: Vec::new(),
            generators,
            table,
            classes: OnceLock::new(),
        };
        let mut inverses = Vec::with_capacity(n);
        for i in 0..n {
            // walk powers until the identity; the last power before it is the inverse
            let mut prev = group.identity;
            let mut cur = i;
            while cur != group.identity {
                prev = cur;
                cur = group.try_mul(i, cur)?;
            }
            inverses.push(prev);
        }
        group.inverses = inverses;
        if group.generators.is_empty() {
            group.generators = group.elements.clone();
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    fn try_mul(&self, i: usize, j: usize) -> Result<usize, GroupError> {
        if let Some(t) = &self.table {
            return Ok(t[i * self.order() + j]);
        }
        let p = self.elements[i].compose(&self.elements[j])?;
        self.index_of(&p).ok_or(GroupError::ElementNotInGroup)
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.try_mul(i, j).expect("group is closed")
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of `h g h⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != self.identity {
            cur = self.mul(i, cur);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = self.generators.iter().filter_map(|g| self.index_of(g)).collect();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Indices of the centralizer of `elements[g]`.
    pub fn centralizer_indices(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.commutes(g, h)).collect()
    }

    pub fn centralizer(&self, g: &E) -> Result<FiniteGroup<E>, GroupError> {
        let gi = self.index_of(g).ok_or(GroupError::ElementNotInGroup)?;
        self.subgroup(&self.centralizer_indices(gi))
    }

    pub fn subgroup(&self, indices: &[usize]) -> Result<FiniteGroup<E>, GroupError> {
        FiniteGroup::from_closed(indices.iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// Smallest subgroup containing the listed elements.
    pub fn generated_by(&self, indices: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in indices {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|h| self.commutes(z, h)))
            .collect()
    }

    /// Conjugacy classes, computed once.
    pub fn classes(&self) -> Arc<ClassStructure> {
        self.classes.get_or_init(|| Arc::new(self.compute_classes())).clone()
    }

    fn compute_classes(&self) -> ClassStructure {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut members_list: Vec<Vec<usize>> = Vec::new();
        // identity first, then by minimal member
        let mut order: Vec<usize> = vec![self.identity];
        order.extend((0..n).filter(|&i| i != self.identity));
        for g in order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|h| self.conjugate(g, h)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = members_list.len();
            }
            members_list.push(members);
        }
        let classes: Vec<Class> = members_list
            .into_iter()
            .map(|members| {
                let rep = members[0];
                Class {
                    representative: rep,
                    centralizer_order: n / members.len(),
                    members,
                }
            })
            .collect();
        let inverse_class = classes.iter().map(|c| class_of[self.inv(c.representative)]).collect();
        let power_map = classes
            .iter()
            .map(|c| {
                let mut row = Vec::new();
                let o = self.element_order(c.representative);
                let mut cur = self.identity;
                for _ in 0..o {
                    row.push(class_of[cur]);
                    cur = self.mul(c.representative, cur);
                }
                row
            })
            .collect();
        ClassStructure {
            group_order: n,
            classes,
            class_of,
            inverse_class,
            power_map,
        }
    }
}

/// One conjugacy class; indices refer to the parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer_order: usize,
}

impl Class {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy partition of a group. Class 0 is the identity class; the
/// others are ordered by their minimal member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStructure {
    pub group_order: usize,
    pub classes: Vec<Class>,
    pub class_of: Vec<usize>,
    pub inverse_class: Vec<usize>,
    /// `power_map[c][k]` is the class of `rep(c)^k` for `k` below the element order.
    pub power_map: Vec<Vec<usize>>,
}

impl ClassStructure {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Class::size).collect()
    }

    pub fn element_order(&self, c: usize) -> usize {
        self.power_map[c].len()
    }

    /// Class of `rep(c)^k` for any integer `k`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let o = self.power_map[c].len() as i64;
        self.power_map[c][k.rem_euclid(o) as usize]
    }
}

#[cfg(test)]
mod tests;

//! Characters, representations, and character tables of abelian and
//! abelian-by-C₂ groups.

mod abelian;
mod clifford;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{Cyclotomic, Rational};
use crate::groups::{ClassStructure, FiniteGroup, GroupElement, GroupError};
use crate::linalg::{CycMatrix, Matrix};

pub use abelian::{abelian_invariant_factors, AbelianStructure};
pub use clifford::{character_table, CharacterTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("group is not abelian")]
    NotAbelian,
    #[error("no abelian subgroup of index 2 split by an involution")]
    UnsupportedStructure,
    #[error("action is not a homomorphism on generators")]
    NotHomomorphism,
    #[error("characters live on different groups")]
    GroupMismatch,
    #[error("multiplicity of {label} is {value}, not a non-negative integer")]
    NonIntegralMultiplicity { label: String, value: String },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Class function, one value per conjugacy class.
#[derive(Clone)]
pub struct Character {
    classes: Arc<ClassStructure>,
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(classes: Arc<ClassStructure>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(classes.len(), values.len(), "one value per class");
        Character { classes, values }
    }

    pub fn trivial(classes: Arc<ClassStructure>) -> Self {
        let n = classes.len();
        Character::new(classes, vec![Cyclotomic::one(); n])
    }

    pub fn zero(classes: Arc<ClassStructure>) -> Self {
        let n = classes.len();
        Character::new(classes, vec![Cyclotomic::zero(); n])
    }

    pub fn classes(&self) -> &Arc<ClassStructure> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn degree_int(&self) -> Option<i64> {
        self.values[0].as_integer()
    }

    fn same_group(&self, other: &Character) -> Result<(), RepError> {
        if Arc::ptr_eq(&self.classes, &other.classes) || self.classes == other.classes {
            Ok(())
        } else {
            Err(RepError::GroupMismatch)
        }
    }

    fn zip(&self, other: &Character, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Character, RepError> {
        self.same_group(other)?;
        Ok(Character {
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &Character) -> Result<Character, RepError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn plus(&self, other: &Character) -> Result<Character, RepError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Character) -> Result<Character, RepError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scaled(&self, k: i64) -> Character {
        let c = Cyclotomic::from_int(k);
        Character {
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v * &c).collect(),
        }
    }

    /// Character of the contragredient representation.
    pub fn dual(&self) -> Character {
        Character {
            classes: self.classes.clone(),
            values: self.values.iter().map(Cyclotomic::conjugate).collect(),
        }
    }

    /// `(1/|G|) Σ_g a(g)·conj(b(g))`.
    pub fn inner_product(&self, other: &Character) -> Result<Cyclotomic, RepError> {
        self.same_group(other)?;
        let mut acc = Cyclotomic::zero();
        for (c, class) in self.classes.classes.iter().enumerate() {
            let term = &self.values[c] * &other.values[c].conjugate();
            acc = &acc + &(&term * &Cyclotomic::from_int(class.size() as i64));
        }
        let n = Rational::from_int(self.classes.group_order as i64).recip().expect("nonempty group");
        Ok(&acc * &Cyclotomic::from_rational(n))
    }

    /// Multiplicity of the trivial character.
    pub fn invariant_dimension(&self) -> Result<i64, RepError> {
        let t = Character::trivial(self.classes.clone());
        let v = self.inner_product(&t)?;
        v.as_integer().ok_or_else(|| RepError::NonIntegralMultiplicity {
            label: "1".into(),
            value: v.to_string(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other).is_ok() && self.values == other.values
    }
}

impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

/// Matrices for every group element, indexed like the group's elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    dim: usize,
    matrices: Arc<Vec<CycMatrix>>,
}

impl Representation {
    /// Builds `g ↦ f(g)` and spot-checks the homomorphism property on
    /// generators.
    pub fn from_fn<E: GroupElement>(
        group: &FiniteGroup<E>,
        f: impl Fn(&E) -> CycMatrix,
    ) -> Result<Self, RepError> {
        let matrices: Vec<CycMatrix> = group.elements().iter().map(&f).collect();
        let rep = Self::from_matrices(matrices)?;
        rep.check_homomorphism(group)?;
        Ok(rep)
    }

    pub fn from_matrices(matrices: Vec<CycMatrix>) -> Result<Self, RepError> {
        let dim = matrices.first().map_or(0, Matrix::rows);
        if let Some(m) = matrices.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(RepError::DimensionMismatch(dim, m.rows()));
        }
        Ok(Representation {
            dim,
            matrices: Arc::new(matrices),
        })
    }

    pub fn trivial<E: GroupElement>(group: &FiniteGroup<E>, dim: usize) -> Self {
        Representation {
            dim,
            matrices: Arc::new(vec![Matrix::identity(dim); group.order()]),
        }
    }

    /// One-dimensional representation from a linear character.
    pub fn from_linear_character<E: GroupElement>(group: &FiniteGroup<E>, chi: &Character) -> Self {
        let cs = chi.classes();
        Representation {
            dim: 1,
            matrices: Arc::new(
                (0..group.order())
                    .map(|i| Matrix::from_rows(vec![vec![chi.value(cs.class_of[i]).clone()]]))
                    .collect(),
            ),
        }
    }

    pub fn check_homomorphism<E: GroupElement>(&self, group: &FiniteGroup<E>) -> Result<(), RepError> {
        if !self.matrices[group.identity_index()].is_identity() {
            return Err(RepError::NotHomomorphism);
        }
        let gens: Vec<usize> = group.generators().iter().filter_map(|g| group.index_of(g)).collect();
        for &a in &gens {
            for &b in &gens {
                let ab = group.mul(a, b);
                if self.matrices[a].mul(&self.matrices[b]) != self.matrices[ab] {
                    return Err(RepError::NotHomomorphism);
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, element: usize) -> &CycMatrix {
        &self.matrices[element]
    }

    pub fn matrices(&self) -> &[CycMatrix] {
        &self.matrices
    }

    pub fn tensor(&self, other: &Representation) -> Representation {
        Representation {
            dim: self.dim * other.dim,
            matrices: Arc::new(self.matrices.iter().zip(other.matrices.iter()).map(|(a, b)| a.kron(b)).collect()),
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dim: self.dim + other.dim,
            matrices: Arc::new(
                self.matrices.iter().zip(other.matrices.iter()).map(|(a, b)| a.direct_sum(b)).collect(),
            ),
        }
    }

    /// `g ↦ ρ(g⁻¹)ᵀ`.
    pub fn dual<E: GroupElement>(&self, group: &FiniteGroup<E>) -> Representation {
        Representation {
            dim: self.dim,
            matrices: Arc::new((0..group.order()).map(|i| self.matrices[group.inv(i)].transpose()).collect()),
        }
    }

    pub fn character<E: GroupElement>(&self, group: &FiniteGroup<E>) -> Character {
        let cs = group.classes();
        let values = cs.classes.iter().map(|c| self.matrices[c.representative].trace()).collect();
        Character::new(cs, values)
    }
}

/// Character of `g ↦ action(g)`, spot-checked as a homomorphism on generators.
pub fn trace_character<E: GroupElement>(
    group: &FiniteGroup<E>,
    action: impl Fn(&E) -> CycMatrix,
) -> Result<Character, RepError> {
    Ok(Representation::from_fn(group, action)?.character(group))
}

/// Multiplicities of each irreducible, in table order.
pub fn decompose_character(c: &Character, table: &CharacterTable) -> Result<Vec<u64>, RepError> {
    let mut out = Vec::with_capacity(table.len());
    for (chi, label) in table.irreducibles().iter().zip(table.labels()) {
        let m = c.inner_product(chi)?;
        match m.as_integer() {
            Some(k) if k >= 0 => out.push(k as u64),
            _ => {
                return Err(RepError::NonIntegralMultiplicity {
                    label: label.clone(),
                    value: m.to_string(),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;

//! Exact verification engine for equivariant computations on planes and
//! complex tori: cyclotomic arithmetic, finite groups, characters,
//! equivariant modules with Ext profiles, and torsion-level fixed-locus
//! censuses.

pub mod arith;
pub mod g422;
pub mod groups;
pub mod linalg;
pub mod modules;
pub mod rep;
pub mod torus;
pub mod verify;

pub use arith::{Cyclotomic, Rational};
pub use linalg::{CycMatrix, Field, Matrix};
pub use groups::{FiniteGroup, GroupElement, GroupError, LinearElement, TorusElement};
pub use rep::{character_table, decompose_character, Character, CharacterTable, RepError, Representation};
pub use modules::{ext_profile, minimal_resolution, quotient_module, EquivariantModule, ExtProfile, ModuleError, Poly};

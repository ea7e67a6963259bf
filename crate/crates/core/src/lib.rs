//! Finite MV-monoid workbench.
//!
//! Finite algebras in the signature `(∨, ∧, ⊕, ⊙, 0, 1)` are stored as Cayley
//! tables ([`algebra`]). On top of that the crate provides a term language with
//! exhaustive model checking ([`term`], [`axioms`]), the standard constructions
//! ([`constructions`]), congruence lattices ([`congruence`]), homomorphisms and HS
//! closures ([`morphisms`]), the `τ`/`Φ`/`Σ` axiom sets that describe varieties
//! generated by finite positive MV-algebras ([`tau`]), and enumeration of all
//! MV-monoids on a small chain ([`enumerate`]).

pub mod algebra;
pub mod axioms;
pub mod congruence;
pub mod constructions;
pub mod enumerate;
pub mod limits;
pub mod morphisms;
pub mod names;
pub mod poset;
pub mod tau;
pub mod term;

pub use algebra::{CanonicalKey, Elem, FiniteAlgebra, FiniteLMonoid, Op, Table};

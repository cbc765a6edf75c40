//! One-variable lattice-valued logics at desk scale: a shared one-variable /
//! modal syntax with the star/circle translations, finite lattice-based
//! algebras with modal expansions and bounded semantic consequence, and
//! cut-free sequent calculi with proof search and interpolant extraction.

pub mod algebra;
pub mod proof;
pub mod syntax;

//! Exact computations with symplectic and orthogonal triple systems over
//! GF(p) and the Lie algebras and superalgebras built from them.

pub mod algebras;
pub mod catalog;
pub mod exactla;
pub mod functors;
pub mod galg;
pub mod meataxe;
mod par;
pub mod persist;
pub mod report;
pub mod search;
pub mod triples;

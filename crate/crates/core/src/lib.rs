//! Exact computations on finite groups: Cayley tables, presentations and
//! coset enumeration, low-degree cohomology, and searches for group
//! structures compatible with a prescribed automorphism action.

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod morphism;
pub mod oracle;
pub mod presentation;
pub mod rigidity;
pub mod suite;

pub use error::{Error, Result};

//! Crystals of simply-laced Kac–Moody algebras and the numerics of Nakajima
//! quiver varieties.
//!
//! * [`roots`]: Dynkin diagrams, weights, the matrices `A` and `X = 2·Id − A`.
//! * [`crystal`]: normal crystals, tensor products, isomorphism testing.
//! * [`lspath`]: highest-weight crystals `B(λ)` realized by piecewise-linear paths.
//! * [`decompose`]: decomposition into highest-weight summands, multiplicities, branching.
//! * [`sl2`]: the explicit one-vertex case.
//! * [`quiver`]: dimension formulas and weight dictionaries.
//! * [`adhm`]: exact linear algebra on explicit ADHM data.
//! * [`selftest`]: the acceptance criteria as a runnable report.

pub mod adhm;
pub mod crystal;
pub mod decompose;
pub mod error;
pub mod export;
pub mod linalg;
pub mod lspath;
pub mod par;
pub mod quiver;
pub mod roots;
pub mod selftest;
pub mod sl2;

pub use crystal::{CrystalGraph, Label, TensorRule};
pub use decompose::Decomposition;
pub use error::{Error, Result};
pub use lspath::{build_crystal, HighestWeightCache, LsPath};
pub use roots::{DynkinDiagram, Family, GPrimeWeight, Weight};

/// Version tag written into every JSON document.
pub const SCHEMA: &str = "crystal-forge/1";

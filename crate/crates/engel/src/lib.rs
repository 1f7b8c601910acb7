//! Exact symbolic computation for Lagrangian Engel structures on coframed
//! 4-manifolds: exterior calculus over structure equations and coordinate
//! charts, Pfaffian derived flags, classification invariants, compactness
//! obstructions, and explicit lattice constructions in the associated
//! nilpotent and solvable Lie groups.
//!
//! Everything is computed over exact scalar rings (arbitrary-precision
//! rationals, parameter polynomials, real quadratic field elements, and
//! coordinate differential rings); there is no floating point anywhere.
//!
//! ```
//! use engel::families::{build_family_symbolic, FamilyId};
//! use engel::compactness::stokes_obstructions;
//! use engel::flags::Subsystem;
//! use engel::scalar::{sym, ParamPoly};
//!
//! let alg = build_family_symbolic(FamilyId::F1)?;
//! assert!(alg.jacobi_holds());
//! assert!(Subsystem::from_basis_indices(&alg, &[1, 2]).is_engel()?);
//! // d(w1^w2^w4) = -a * w1^w2^w3^w4: compact quotients force a = 0.
//! let obstructions = stokes_obstructions(&alg);
//! assert_eq!(obstructions.lambdas[2], -&ParamPoly::var(sym("a")));
//! # Ok::<(), engel::error::FlagError>(())
//! ```
//!
//! The `examples/` directory of this crate has one runnable program per
//! capability; `engel` (the bundled binary) drives the same library from
//! the command line.

pub mod error;
pub mod scalar;

pub mod linalg;

pub mod exterior;

pub mod flags;

pub mod families;

pub mod compactness;

pub mod lattices;

pub mod models;

pub mod parse;

pub mod report;

pub use scalar::{ChartScalars, DiffScalar, ParamPoly, QuadExt, Rat, Symbol};

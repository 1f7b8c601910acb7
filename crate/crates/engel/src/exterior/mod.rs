//! Graded exterior algebra on a 4-dimensional coframe, with the exterior
//! derivative induced either by structure equations (left-invariant setting)
//! or by a coordinate chart.

pub mod chart;
pub mod coframe;
pub mod form;

use std::collections::BTreeMap;

pub use chart::CoordChart;
pub use coframe::CoframedAlgebra;
pub use form::{omega_basis, Form, IndexSet, DIM};

use crate::scalar::{DiffScalar, ParamPoly, Rat, Ring, Symbol};

/// A context that differentiates forms: either a coframed algebra or a
/// coordinate chart. The two d semantics never mix because the scalar types
/// differ; this trait is what the flag machinery is generic over.
pub trait ExteriorContext {
    type S: Ring;
    fn d(&self, alpha: &Form<Self::S>) -> Form<Self::S>;
    /// Deterministic rational point used to witness symbolic ranks.
    fn witness(&self) -> BTreeMap<Symbol, Rat>;
}

impl ExteriorContext for CoframedAlgebra {
    type S = ParamPoly;
    fn d(&self, alpha: &Form<ParamPoly>) -> Form<ParamPoly> {
        CoframedAlgebra::d(self, alpha)
    }
    fn witness(&self) -> BTreeMap<Symbol, Rat> {
        CoframedAlgebra::witness(self)
    }
}

impl ExteriorContext for CoordChart {
    type S = DiffScalar;
    fn d(&self, alpha: &Form<DiffScalar>) -> Form<DiffScalar> {
        CoordChart::d(self, alpha)
    }
    fn witness(&self) -> BTreeMap<Symbol, Rat> {
        CoordChart::witness(self)
    }
}

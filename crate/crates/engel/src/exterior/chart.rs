//! Coordinate-chart context: the basis 1-forms are the four coordinate
//! differentials, d vanishes on them, and d on scalars expands through the
//! chart's derivative tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::form::{Form, IndexSet, DIM};
use crate::error::ScalarError;
use crate::scalar::{ChartScalars, DiffScalar, ParamPoly, Rat, Symbol};

#[derive(Clone, PartialEq, Debug)]
pub struct CoordChart {
    scalars: Arc<ChartScalars>,
}

impl CoordChart {
    /// The chart must have exactly four coordinates; their order fixes the
    /// basis order of the coordinate differentials.
    pub fn new(scalars: Arc<ChartScalars>) -> Result<Self, ScalarError> {
        assert_eq!(scalars.coords().len(), DIM, "charts are 4-dimensional here");
        scalars.check_mixed_partials()?;
        Ok(CoordChart { scalars })
    }

    pub fn scalars(&self) -> &Arc<ChartScalars> {
        &self.scalars
    }

    pub fn coords(&self) -> &[Symbol] {
        self.scalars.coords()
    }

    /// The coordinate differential dx_i as a basis 1-form (1-based).
    pub fn differential(&self, i: usize) -> Form<DiffScalar> {
        Form::basis(i)
    }

    /// The coordinate function itself as a scalar.
    pub fn coord_scalar(&self, i: usize) -> DiffScalar {
        DiffScalar::var(&self.scalars, self.coords()[i - 1].clone())
    }

    pub fn scalar(&self, s: Symbol) -> DiffScalar {
        DiffScalar::var(&self.scalars, s)
    }

    pub fn from_poly(&self, p: ParamPoly) -> DiffScalar {
        DiffScalar::from_poly(&self.scalars, p)
    }

    /// Differential of a scalar: sum_i (df/dx_i) dx_i.
    pub fn d_scalar(&self, f: &DiffScalar) -> Form<DiffScalar> {
        let mut out = Form::zero();
        for (i, coord) in self.coords().iter().enumerate() {
            let df = f.derive(coord).expect("chart coordinate");
            if !df.is_zero() {
                out.insert(IndexSet::single(i + 1), df);
            }
        }
        out
    }

    /// Exterior derivative: d(f dx_T) = df ^ dx_T.
    pub fn d(&self, alpha: &Form<DiffScalar>) -> Form<DiffScalar> {
        let mut out = Form::zero();
        for (set, f) in alpha.components() {
            let df = self.d_scalar(f);
            let mono = Form::monomial(&set.indices(), DiffScalar::one());
            out = out.add(&df.wedge(&mono));
        }
        out
    }

    pub fn witness(&self) -> BTreeMap<Symbol, Rat> {
        self.scalars.witness()
    }
}

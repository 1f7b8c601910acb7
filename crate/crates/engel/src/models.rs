//! Coordinate-chart realizations: the jet-space normal form of an Engel
//! system and the three explicit models of the surviving structure-equation
//! line (polynomial, exponential, and trigonometric), each carrying its
//! coframe as four 1-forms over a chart.

use crate::error::ScalarError;
use crate::exterior::{CoframedAlgebra, CoordChart, Form, DIM};
use crate::families::{build_family_at, FamilyId};
use crate::scalar::{rat, rat_int, sym, ChartScalars, DiffScalar, GenRule, ParamPoly};

/// The jet chart (x, y0, y1, y2) whose contact system is the Engel normal
/// form.
pub fn jet_chart() -> CoordChart {
    let scalars =
        ChartScalars::new(vec![sym("x"), sym("y0"), sym("y1"), sym("y2")], vec![], vec![])
            .expect("valid chart");
    CoordChart::new(scalars).expect("valid chart")
}

/// The contact generators dy0 - y1 dx, dy1 - y2 dx on the jet chart.
pub fn jet_contact_system(ch: &CoordChart) -> Vec<Form<DiffScalar>> {
    let y1 = ch.coord_scalar(3);
    let y2 = ch.coord_scalar(4);
    vec![
        ch.differential(2).sub(&ch.differential(1).scale(&y1)),
        ch.differential(3).sub(&ch.differential(1).scale(&y2)),
    ]
}

/// A chart model: four coframe 1-forms over a chart, expected to satisfy the
/// structure equations of a rational-coefficient coframed algebra.
pub struct ChartModel {
    pub name: String,
    pub chart: CoordChart,
    pub coframe: [Form<DiffScalar>; DIM],
    pub target: CoframedAlgebra,
}

impl ChartModel {
    /// d(w_i) == sum of target coefficients times w_j ^ w_k, all in the chart.
    /// Returns the per-equation residuals (all zero iff the model satisfies
    /// its structure equations exactly).
    pub fn residuals(&self) -> [Form<DiffScalar>; DIM] {
        std::array::from_fn(|i| {
            let mut expect: Form<DiffScalar> = Form::zero();
            for (set, c) in self.target.structure(i + 1).components() {
                let c = c.as_constant().expect("rational structure constants");
                let idx = set.indices();
                let wedge = self.coframe[idx[0] - 1].wedge(&self.coframe[idx[1] - 1]);
                expect = expect.add(&wedge.scale(&DiffScalar::constant(c)));
            }
            self.chart.d(&self.coframe[i]).sub(&expect)
        })
    }

    pub fn satisfied(&self) -> bool {
        self.residuals().iter().all(Form::is_zero)
    }
}

/// Polynomial model of the flat member (a = 0, b = 0) on the chart
/// (x, y, u, v): w1 = u dy + dv, w2 = -x dy + du, w3 = dy, w4 = dx.
pub fn flat_model() -> Result<ChartModel, ScalarError> {
    let scalars = ChartScalars::new(vec![sym("x"), sym("y"), sym("u"), sym("v")], vec![], vec![])?;
    let chart = CoordChart::new(scalars)?;
    let x = chart.coord_scalar(1);
    let u = chart.coord_scalar(3);
    let (dx, dy, du, dv) =
        (chart.differential(1), chart.differential(2), chart.differential(3), chart.differential(4));
    let coframe = [
        dy.scale(&u).add(&dv),
        dy.scale(&x).neg().add(&du),
        dy,
        dx,
    ];
    Ok(ChartModel {
        name: "polynomial model (b = 0)".to_string(),
        chart,
        coframe,
        target: build_family_at(FamilyId::F1, rat_int(0), rat_int(0)).expect("table"),
    })
}

/// Exponential model of b = -beta^2 < 0 on (x, y, u, v) with generators
/// P = e^{-beta y}, Q = e^{beta y}:
/// w1 = (P du - Q dv) / (2 beta),  w2 = (P du + Q dv)/2 - x dy,
/// w3 = dy,                        w4 = dx + b w1.
pub fn exponential_model(beta: i64) -> Result<ChartModel, ScalarError> {
    assert!(beta > 0);
    let b = rat_int(-beta * beta);
    let p = sym("P");
    let q = sym("Q");
    let rules = vec![
        GenRule {
            symbol: p.clone(),
            partials: [(sym("y"), ParamPoly::var(p.clone()).scale(&rat_int(-beta)))]
                .into_iter()
                .collect(),
        },
        GenRule {
            symbol: q.clone(),
            partials: [(sym("y"), ParamPoly::var(q.clone()).scale(&rat_int(beta)))]
                .into_iter()
                .collect(),
        },
    ];
    let scalars =
        ChartScalars::new(vec![sym("x"), sym("y"), sym("u"), sym("v")], rules, vec![])?;
    let chart = CoordChart::new(scalars)?;
    let ps = chart.scalar(p);
    let qs = chart.scalar(q);
    let x = chart.coord_scalar(1);
    let (dx, dy, du, dv) =
        (chart.differential(1), chart.differential(2), chart.differential(3), chart.differential(4));
    let p_du = du.scale(&ps);
    let q_dv = dv.scale(&qs);
    let w1 = p_du.sub(&q_dv).scale_rat(&rat(1, 2 * beta));
    let w2 = p_du.add(&q_dv).scale_rat(&rat(1, 2)).sub(&dy.scale(&x));
    let w4 = dx.add(&w1.scale_rat(&b));
    let coframe = [w1, w2, dy, w4];
    Ok(ChartModel {
        name: format!("exponential model (b = -{beta}^2)"),
        chart,
        coframe,
        target: build_family_at(FamilyId::F1, rat_int(0), b).expect("table"),
    })
}

/// Trigonometric model of b = beta^2 > 0 on (x, y, u, v) with generators
/// C = cos(beta y), S = sin(beta y):
/// w1 = (C dv - S du) / beta,  w2 = C du + S dv - x dy,
/// w3 = dy,                    w4 = dx + b w1.
pub fn trigonometric_model(beta: i64) -> Result<ChartModel, ScalarError> {
    assert!(beta > 0);
    let b = rat_int(beta * beta);
    let c = sym("C");
    let s = sym("S");
    let rules = vec![
        GenRule {
            symbol: c.clone(),
            partials: [(sym("y"), ParamPoly::var(s.clone()).scale(&rat_int(-beta)))]
                .into_iter()
                .collect(),
        },
        GenRule {
            symbol: s.clone(),
            partials: [(sym("y"), ParamPoly::var(c.clone()).scale(&rat_int(beta)))]
                .into_iter()
                .collect(),
        },
    ];
    let scalars = ChartScalars::new(
        vec![sym("x"), sym("y"), sym("u"), sym("v")],
        rules,
        vec![(c.clone(), s.clone())],
    )?;
    let chart = CoordChart::new(scalars)?;
    let cs = chart.scalar(c);
    let ss = chart.scalar(s);
    let x = chart.coord_scalar(1);
    let (dx, dy, du, dv) =
        (chart.differential(1), chart.differential(2), chart.differential(3), chart.differential(4));
    let w1 = dv.scale(&cs).sub(&du.scale(&ss)).scale_rat(&rat(1, beta));
    let w2 = du.scale(&cs).add(&dv.scale(&ss)).sub(&dy.scale(&x));
    let w4 = dx.add(&w1.scale_rat(&b));
    let coframe = [w1, w2, dy, w4];
    Ok(ChartModel {
        name: format!("trigonometric model (b = {beta}^2)"),
        chart,
        coframe,
        target: build_family_at(FamilyId::F1, rat_int(0), b).expect("table"),
    })
}

/// Volume check: the model coframe really is a coframe (its wedge is a
/// nonzero multiple of the coordinate volume).
pub fn model_volume(model: &ChartModel) -> DiffScalar {
    model.coframe[0]
        .wedge(&model.coframe[1])
        .wedge(&model.coframe[2])
        .wedge(&model.coframe[3])
        .top_coefficient()
        .expect("degree 4")
}

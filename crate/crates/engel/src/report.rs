//! Structured reports over the whole catalog: verification results,
//! classification, obstructions, compactness verdicts, and lattice
//! certificates, serialized deterministically as JSON or as a table.
//!
//! Scalars are serialized exactly: rationals as `p/q` strings, quadratic
//! field elements as `x + y*sqrt(D)` strings, polynomials in canonical
//! graded-lexicographic order.

use serde::Serialize;

use crate::compactness::{
    compact_quotient_verdict, stokes_obstructions, CompactnessOutcome, CompactnessVerdict,
    ObstructionReport,
};
use crate::exterior::{CoframedAlgebra, DIM};
use crate::families::{
    obstructed_branch, verify_family_symbolic, FamilyId, FamilyVerification,
};
use crate::flags::{
    adapted_invariants, ClassificationKind, ClassificationVerdict, NonGenericSubcase,
    SymplecticReport,
};
use crate::lattices::{
    coframe_to_brackets, malcev_check, maurer_cartan_check, nilpotent_mc_matrix, sl2z_lattice,
    solvable_bracket_comparison, solvable_coframe, solvable_mc_matrix, BracketComparison,
    MalcevReport, NilGroupElement,
};
use crate::models::{
    exponential_model, flat_model, jet_chart, jet_contact_system, trigonometric_model,
};
use crate::scalar::{rat_int, sym, ParamPoly, Rat, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format {other:?} (expected json or table)")),
        }
    }
}

#[derive(Serialize)]
pub struct JacobiSection {
    pub residuals: Vec<String>,
    pub identically_zero: bool,
    /// Residuals after substituting a = 0, b = 0.
    pub zero_at_origin: bool,
    /// Residuals after substituting b = 0 only (families that take b).
    pub zero_along_b_zero: Option<bool>,
}

#[derive(Serialize)]
pub struct ClassificationSection {
    pub kind: String,
    pub p3: String,
    pub p4: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a3: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a4: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q3: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
}

impl ClassificationSection {
    pub fn from_verdict(v: &ClassificationVerdict) -> Self {
        ClassificationSection {
            kind: match v.kind {
                ClassificationKind::Generic => "generic".to_string(),
                ClassificationKind::NonGeneric => "non-generic".to_string(),
            },
            p3: v.p3.to_string(),
            p4: v.p4.to_string(),
            sign: v.sign,
            a2: v.a2.as_ref().map(|p| p.to_string()),
            a3: v.a3.as_ref().map(|p| p.to_string()),
            a4: v.a4.as_ref().map(|p| p.to_string()),
            q3: v.q3.as_ref().map(|p| p.to_string()),
            subcase: v.subcase.map(|s| {
                match s {
                    NonGenericSubcase::A3Zero => "A3 = 0",
                    NonGenericSubcase::A3UnitA4Zero => "A3 = +-1, A4 = 0",
                    NonGenericSubcase::A3UnitA4Nonzero => "A3 = +-1, A4 != 0",
                    NonGenericSubcase::A3Other => "A3 outside {0, +-1}",
                }
                .to_string()
            }),
        }
    }
}

#[derive(Serialize)]
pub struct ObstructionSection {
    /// One entry per omitted basis index: d(three_form) = lambda * vol.
    pub lambdas: Vec<ObstructionLine>,
    pub unimodular: bool,
}

#[derive(Serialize)]
pub struct ObstructionLine {
    pub three_form: String,
    pub lambda: String,
}

impl ObstructionSection {
    pub fn from_report(r: &ObstructionReport) -> Self {
        ObstructionSection {
            lambdas: r
                .lambdas
                .iter()
                .enumerate()
                .map(|(j, l)| ObstructionLine {
                    three_form: ObstructionReport::omitted_basis_label(j + 1),
                    lambda: l.to_string(),
                })
                .collect(),
            unimodular: r.admits_candidate(),
        }
    }
}

#[derive(Serialize)]
pub struct FamilyReport {
    pub family: usize,
    pub parameters: Vec<String>,
    pub structure: Vec<String>,
    pub jacobi: JacobiSection,
    pub flag_ranks: Vec<usize>,
    pub engel: bool,
    pub symplectic: SymplecticReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_error: Option<String>,
    pub obstructions: ObstructionSection,
    pub compactness: CompactnessVerdict,
}

fn structure_lines(alg: &CoframedAlgebra) -> Vec<String> {
    (1..=DIM)
        .map(|i| format!("dw{i} = {}", alg.structure(i)))
        .collect()
}

fn origin_assignment(params: &[Symbol]) -> std::collections::BTreeMap<Symbol, Rat> {
    params.iter().map(|p| (p.clone(), rat_int(0))).collect()
}

pub fn family_report(id: FamilyId) -> FamilyReport {
    let v: FamilyVerification = verify_family_symbolic(id).expect("catalogued family");
    let alg = &v.algebra;
    let residual_strings: Vec<String> = v
        .jacobi_residuals
        .iter()
        .enumerate()
        .map(|(i, r)| format!("d(d(w{})) = {}", i + 1, r))
        .collect();
    let at_origin = alg.specialize(&origin_assignment(alg.params()));
    let zero_at_origin = at_origin.jacobi_holds();
    let zero_along_b_zero = id.takes_b().then(|| {
        let sub: std::collections::BTreeMap<Symbol, Rat> =
            [(sym("b"), rat_int(0))].into_iter().collect();
        alg.specialize(&sub).jacobi_holds()
    });
    let obstructions = stokes_obstructions(alg);
    let a = ParamPoly::var(sym("a"));
    let b = ParamPoly::var(sym("b"));
    let compactness = compact_quotient_verdict(id, &a, &b);
    FamilyReport {
        family: id.index(),
        parameters: alg.params().iter().map(|p| p.to_string()).collect(),
        structure: structure_lines(alg),
        jacobi: JacobiSection {
            residuals: residual_strings,
            identically_zero: v.jacobi_zero,
            zero_at_origin,
            zero_along_b_zero,
        },
        flag_ranks: v.flag_ranks.clone(),
        engel: v.engel,
        symplectic: v.symplectic.clone(),
        classification: v.verdict.as_ref().ok().map(ClassificationSection::from_verdict),
        classification_error: v.verdict.as_ref().err().map(|e| e.to_string()),
        obstructions: ObstructionSection::from_report(&obstructions),
        compactness,
    }
}

#[derive(Serialize)]
pub struct LatticeSection {
    pub nilpotent: NilpotentLattice,
    pub solvable: SolvableLattice,
}

#[derive(Serialize)]
pub struct NilpotentLattice {
    pub family: String,
    pub malcev: MalcevReport,
    /// Integer generators of the discrete subgroup, as (c, d, e, f) tuples.
    pub lattice_generators: Vec<String>,
    pub maurer_cartan_ok: bool,
}

#[derive(Serialize)]
pub struct SolvableLattice {
    pub family: String,
    pub maurer_cartan_ok: bool,
    pub brackets: BracketComparison,
    pub sl2z_example: Vec<String>,
}

pub fn lattice_section() -> LatticeSection {
    let flat = crate::families::build_family_at(FamilyId::F1, rat_int(0), rat_int(0))
        .expect("table");
    let table = coframe_to_brackets(&flat).expect("flat member is a Lie algebra");
    let malcev = malcev_check(&table);
    let gens: Vec<String> = [
        NilGroupElement::from_ints(1, 0, 0, 0),
        NilGroupElement::from_ints(0, 1, 0, 0),
        NilGroupElement::from_ints(0, 0, 1, 0),
        NilGroupElement::from_ints(0, 0, 0, 1),
    ]
    .iter()
    .map(|g| {
        format!(
            "(c, d, e, f) = ({}, {}, {}, {})",
            g.c, g.d, g.e, g.f
        )
    })
    .collect();
    let nil_mc = maurer_cartan_check(&nilpotent_mc_matrix(), &flat).expect("shape");
    let sol = solvable_coframe();
    let sol_mc = maurer_cartan_check(&solvable_mc_matrix(), &sol).expect("shape");
    let desc = sl2z_lattice([[2, 1], [1, 1]]).expect("hyperbolic example");
    LatticeSection {
        nilpotent: NilpotentLattice {
            family: "family 1 at (a, b) = (0, 0)".to_string(),
            malcev,
            lattice_generators: gens,
            maurer_cartan_ok: nil_mc,
        },
        solvable: SolvableLattice {
            family: "family 1 at a = 0, b < 0 (rebased coframe)".to_string(),
            maurer_cartan_ok: sol_mc,
            brackets: solvable_bracket_comparison().expect("solvable model"),
            sl2z_example: desc.describe(),
        },
    }
}

#[derive(Serialize)]
pub struct NormalFormSection {
    pub jet_flag_ranks: Vec<usize>,
    pub models: Vec<ModelLine>,
}

#[derive(Serialize)]
pub struct ModelLine {
    pub name: String,
    pub satisfies_structure_equations: bool,
}

pub fn normal_form_section() -> NormalFormSection {
    let ch = jet_chart();
    let sys = crate::flags::Subsystem::new(&ch, jet_contact_system(&ch)).expect("independent");
    let ranks = sys.derived_flag().expect("flag").ranks;
    let models = [
        flat_model().expect("chart"),
        exponential_model(1).expect("chart"),
        trigonometric_model(1).expect("chart"),
    ]
    .iter()
    .map(|m| ModelLine {
        name: m.name.clone(),
        satisfies_structure_equations: m.satisfied(),
    })
    .collect();
    NormalFormSection { jet_flag_ranks: ranks, models }
}

#[derive(Serialize)]
pub struct Report {
    pub families: Vec<FamilyReport>,
    /// The residual normalization branch outside the catalog, with its
    /// constant obstruction.
    pub boundary_case: BoundaryCase,
    pub conclusion: Conclusion,
    pub normal_form: NormalFormSection,
    pub lattices: LatticeSection,
}

#[derive(Serialize)]
pub struct BoundaryCase {
    pub structure: Vec<String>,
    pub obstructions: ObstructionSection,
}

#[derive(Serialize)]
pub struct Conclusion {
    pub surviving: String,
    pub reductions: Vec<String>,
    pub excluded: Vec<String>,
}

/// Run the whole suite and assemble the deterministic report.
pub fn full_report() -> Report {
    let families: Vec<FamilyReport> = FamilyId::ALL.iter().map(|&id| family_report(id)).collect();
    let branch = obstructed_branch();
    let boundary_case = BoundaryCase {
        structure: structure_lines(&branch),
        obstructions: ObstructionSection::from_report(&stokes_obstructions(&branch)),
    };
    let conclusion = Conclusion {
        surviving: "family 1 with a = 0 (any b)".to_string(),
        reductions: vec![
            "family 2 survives only at b = 0, where it is family 1 (a, 0); then a = 0".to_string(),
            "family 3 survives only at a = 0, where it is family 1 (0, 2b)".to_string(),
            "family 4 survives only at a = b = 0, where it is family 1 (0, 0)".to_string(),
        ],
        excluded: vec![
            "family 5: constant obstruction -2 on w1^w2^w4".to_string(),
            "family 6: constant obstruction -2 on w1^w2^w4".to_string(),
            "boundary case: constant obstruction -2 on w1^w2^w4".to_string(),
        ],
    };
    Report {
        families,
        boundary_case,
        conclusion,
        normal_form: normal_form_section(),
        lattices: lattice_section(),
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Table => render_table(report),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_table(report: &Report) -> String {
    let mut rows: Vec<[String; 6]> = vec![[
        "family".into(),
        "Jacobi".into(),
        "Engel".into(),
        "generic?".into(),
        "obstructions".into(),
        "compact quotient?".into(),
    ]];
    for f in &report.families {
        let jacobi = if f.jacobi.identically_zero {
            "0".to_string()
        } else {
            "nonzero (reported)".to_string()
        };
        let generic = f
            .classification
            .as_ref()
            .map(|c| c.kind.clone())
            .or_else(|| f.classification_error.clone())
            .unwrap_or_default();
        let obstructions: Vec<String> = f
            .obstructions
            .lambdas
            .iter()
            .filter(|l| l.lambda != "0")
            .map(|l| format!("d({}) = ({}) vol", l.three_form, l.lambda))
            .collect();
        let obstructions = if obstructions.is_empty() {
            "none".to_string()
        } else {
            obstructions.join("; ")
        };
        let compact = match &f.compactness.outcome {
            CompactnessOutcome::Admits => "yes".to_string(),
            CompactnessOutcome::AdmitsIff { conditions, .. } => {
                format!("iff {}", conditions.join(" and "))
            }
            CompactnessOutcome::NeverAdmits { .. } => "never".to_string(),
        };
        rows.push([
            f.family.to_string(),
            jacobi,
            yes_no(f.engel).into(),
            generic,
            obstructions,
            compact,
        ]);
    }

    let mut widths = [0usize; 6];
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for (n, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{:width$}", cell, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if n == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }

    out.push('\n');
    out.push_str("boundary case (outside the catalog):\n");
    for line in &report.boundary_case.structure {
        out.push_str(&format!("  {line}\n"));
    }
    for l in &report.boundary_case.obstructions.lambdas {
        if l.lambda != "0" {
            out.push_str(&format!("  d({}) = ({}) vol\n", l.three_form, l.lambda));
        }
    }

    out.push('\n');
    out.push_str("conclusion:\n");
    out.push_str(&format!("  surviving: {}\n", report.conclusion.surviving));
    for r in &report.conclusion.reductions {
        out.push_str(&format!("  {r}\n"));
    }
    for e in &report.conclusion.excluded {
        out.push_str(&format!("  {e}\n"));
    }

    out.push('\n');
    out.push_str("normal form:\n");
    out.push_str(&format!(
        "  jet contact system derived flag: {:?}\n",
        report.normal_form.jet_flag_ranks
    ));
    for m in &report.normal_form.models {
        out.push_str(&format!(
            "  {}: structure equations {}\n",
            m.name,
            if m.satisfies_structure_equations { "hold" } else { "FAIL" }
        ));
    }

    out.push('\n');
    out.push_str("lattices:\n");
    let nil = &report.lattices.nilpotent;
    out.push_str(&format!(
        "  {}: nilpotent = {}, rational = {}, lattice exists = {}\n",
        nil.family,
        yes_no(nil.malcev.nilpotent),
        yes_no(nil.malcev.rational),
        yes_no(nil.malcev.lattice_exists)
    ));
    out.push_str(&format!(
        "    Maurer-Cartan matrix check: {}\n",
        yes_no(nil.maurer_cartan_ok)
    ));
    out.push_str("    integer lattice generators:\n");
    for g in &nil.lattice_generators {
        out.push_str(&format!("      {g}\n"));
    }
    let sol = &report.lattices.solvable;
    out.push_str(&format!(
        "  {}: Maurer-Cartan matrix check: {}\n",
        sol.family,
        yes_no(sol.maurer_cartan_ok)
    ));
    out.push_str("    computed brackets:\n");
    for l in &sol.brackets.computed {
        out.push_str(&format!("      {l}\n"));
    }
    out.push_str("    quoted table:\n");
    for l in &sol.brackets.quoted {
        out.push_str(&format!("      {l}\n"));
    }
    out.push_str(&format!("    {}\n", sol.brackets.reconciliation));
    out.push_str("    hyperbolic lattice example:\n");
    for l in &sol.sl2z_example {
        out.push_str(&format!("      {l}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// Single-document reports (classify / obstructions subcommands)
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct DocumentReport {
    pub structure: Vec<String>,
    pub jacobi_residuals: Vec<String>,
    pub jacobi_zero: bool,
    pub flag_ranks: Vec<usize>,
    pub engel: bool,
    pub symplectic: SymplecticReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn classify_document(alg: &CoframedAlgebra, warnings: Vec<String>) -> DocumentReport {
    let residuals = alg.jacobi_residuals();
    let verdict = adapted_invariants(alg);
    let flag = crate::flags::Subsystem::from_basis_indices(alg, &[1, 2])
        .derived_flag()
        .expect("basis generators");
    DocumentReport {
        structure: structure_lines(alg),
        jacobi_residuals: residuals
            .iter()
            .enumerate()
            .map(|(i, r)| format!("d(d(w{})) = {}", i + 1, r))
            .collect(),
        jacobi_zero: residuals.iter().all(crate::exterior::Form::is_zero),
        flag_ranks: flag.ranks,
        engel: false, // filled below
        symplectic: crate::flags::check_symplectic(alg),
        classification: verdict.as_ref().ok().map(ClassificationSection::from_verdict),
        classification_error: verdict.as_ref().err().map(|e| e.to_string()),
        warnings,
    }
    .with_engel()
}

impl DocumentReport {
    fn with_engel(mut self) -> Self {
        self.engel = self.flag_ranks == vec![2, 1, 0];
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Table => {
                let mut out = String::new();
                for s in &self.structure {
                    out.push_str(&format!("{s}\n"));
                }
                out.push_str(&format!("jacobi zero: {}\n", yes_no(self.jacobi_zero)));
                if !self.jacobi_zero {
                    for r in &self.jacobi_residuals {
                        out.push_str(&format!("  {r}\n"));
                    }
                }
                out.push_str(&format!("derived flag of <w1, w2>: {:?}\n", self.flag_ranks));
                out.push_str(&format!("engel: {}\n", yes_no(self.engel)));
                out.push_str(&format!(
                    "symplectic: closed = {}, nondegenerate = {}, lagrangian = {}\n",
                    yes_no(self.symplectic.closed),
                    yes_no(self.symplectic.nondegenerate),
                    yes_no(self.symplectic.lagrangian)
                ));
                match (&self.classification, &self.classification_error) {
                    (Some(c), _) => {
                        out.push_str(&format!("classification: {}\n", c.kind));
                        out.push_str(&format!("  p3 = {}, p4 = {}\n", c.p3, c.p4));
                        if let Some(a3) = &c.a3 {
                            out.push_str(&format!(
                                "  A2 = {}, A3 = {}, A4 = {}\n",
                                c.a2.as_deref().unwrap_or("-"),
                                a3,
                                c.a4.as_deref().unwrap_or("-")
                            ));
                        }
                        if let Some(q3) = &c.q3 {
                            out.push_str(&format!("  q3 = {q3}\n"));
                        }
                        if let Some(s) = &c.subcase {
                            out.push_str(&format!("  subcase: {s}\n"));
                        }
                    }
                    (None, Some(e)) => {
                        out.push_str(&format!("classification error: {e}\n"));
                    }
                    (None, None) => {}
                }
                for w in &self.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct ObstructionDocumentReport {
    pub structure: Vec<String>,
    pub obstructions: ObstructionSection,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn obstruction_document(
    alg: &CoframedAlgebra,
    warnings: Vec<String>,
) -> ObstructionDocumentReport {
    ObstructionDocumentReport {
        structure: structure_lines(alg),
        obstructions: ObstructionSection::from_report(&stokes_obstructions(alg)),
        warnings,
    }
}

impl ObstructionDocumentReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Table => {
                let mut out = String::new();
                for s in &self.structure {
                    out.push_str(&format!("{s}\n"));
                }
                for l in &self.obstructions.lambdas {
                    out.push_str(&format!("d({}) = ({}) * w1^w2^w3^w4\n", l.three_form, l.lambda));
                }
                out.push_str(&format!(
                    "unimodular (admits-candidate): {}\n",
                    yes_no(self.obstructions.unimodular)
                ));
                for w in &self.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                out
            }
        }
    }
}

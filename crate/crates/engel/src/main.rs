//! Command-line driver for the library: family verification, classification
//! of coframe documents, obstruction vectors, lattice construction, and the
//! coordinate-model checks.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use engel::compactness::CompactnessOutcome;
use engel::families::FamilyId;
use engel::lattices::sl2z_lattice;
use engel::parse::parse_coframe;
use engel::report::{
    classify_document, emit_report, full_report, obstruction_document, Format, Report,
};

#[derive(Parser)]
#[command(
    name = "engel",
    about = "Exact symbolic checks for Lagrangian Engel structure equations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the six-family verification suite and print one row per family.
    VerifyFamilies {
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Classify the coframe document in FILE (generic / non-generic branch).
    Classify {
        file: String,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Volume-form obstructions of the coframe document in FILE.
    Obstructions {
        file: String,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Build a solvable-model lattice certificate from a hyperbolic integer
    /// matrix with determinant 1 (entries a,b,c,d row-major).
    LatticeSl2z {
        #[arg(long, value_name = "a,b,c,d")]
        matrix: String,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Check the jet-space normal form and the three coordinate models.
    NormalFormCheck {
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Emit the full verification report.
    Report {
        #[arg(long, default_value = "table")]
        format: Format,
    },
}

fn read_document(path: &str) -> Result<(engel::exterior::CoframedAlgebra, Vec<String>), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let parsed = parse_coframe(&text).map_err(|e| format!("{path}: {e}"))?;
    Ok((parsed.algebra, parsed.warnings))
}

/// The suite-level pass criteria: everything the report computes that has a
/// definite expected value. The fourth family's symbolic residuals are
/// reported, not asserted (they are nonzero as catalogued); its residuals
/// must vanish at the origin.
fn suite_passes(report: &Report) -> Vec<String> {
    let mut failures = Vec::new();
    for f in &report.families {
        let id = FamilyId::from_index(f.family).expect("catalog index");
        if id != FamilyId::F4 && !f.jacobi.identically_zero {
            failures.push(format!("family {}: nonzero Jacobi residuals", f.family));
        }
        if id == FamilyId::F4 && !f.jacobi.zero_at_origin {
            failures.push("family 4: residuals do not vanish at the origin".to_string());
        }
        if !f.engel {
            failures.push(format!("family {}: <w1, w2> is not Engel", f.family));
        }
        // Closedness of the symplectic form fails for the fourth catalogued
        // table wherever its Jacobi residuals do; it is reported as data and
        // gated only for the sound families.
        let closed_ok = f.symplectic.closed || id == FamilyId::F4;
        if !(closed_ok && f.symplectic.nondegenerate && f.symplectic.lagrangian) {
            failures.push(format!("family {}: symplectic checks failed", f.family));
        }
        let expected_kind = if f.family <= 4 { "generic" } else { "non-generic" };
        match &f.classification {
            Some(c) if c.kind == expected_kind => {}
            Some(c) => failures.push(format!(
                "family {}: classified {} (expected {expected_kind})",
                f.family, c.kind
            )),
            None => failures.push(format!(
                "family {}: classification error: {}",
                f.family,
                f.classification_error.as_deref().unwrap_or("unknown")
            )),
        }
        let expected_compact = match id {
            FamilyId::F1 | FamilyId::F2 | FamilyId::F3 | FamilyId::F4 => {
                matches!(f.compactness.outcome, CompactnessOutcome::AdmitsIff { .. })
            }
            FamilyId::F5 | FamilyId::F6 => {
                matches!(f.compactness.outcome, CompactnessOutcome::NeverAdmits { .. })
            }
        };
        if !expected_compact {
            failures.push(format!("family {}: unexpected compactness outcome", f.family));
        }
    }
    if report.normal_form.jet_flag_ranks != vec![2, 1, 0] {
        failures.push("jet contact system flag is not [2, 1, 0]".to_string());
    }
    for m in &report.normal_form.models {
        if !m.satisfies_structure_equations {
            failures.push(format!("{}: structure equations fail", m.name));
        }
    }
    if !report.lattices.nilpotent.malcev.lattice_exists {
        failures.push("nilpotent lattice criterion failed".to_string());
    }
    if !report.lattices.nilpotent.maurer_cartan_ok || !report.lattices.solvable.maurer_cartan_ok {
        failures.push("a Maurer-Cartan matrix check failed".to_string());
    }
    failures
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyFamilies { format } | Command::Report { format } => {
            let report = full_report();
            print!("{}", emit_report(&report, format));
            let failures = suite_passes(&report);
            if failures.is_empty() {
                eprintln!("all checks passed");
                ExitCode::SUCCESS
            } else {
                for f in &failures {
                    eprintln!("FAIL: {f}");
                }
                ExitCode::FAILURE
            }
        }
        Command::Classify { file, format } => match read_document(&file) {
            Ok((alg, warnings)) => {
                let rep = classify_document(&alg, warnings);
                print!("{}", rep.render(format));
                if rep.classification.is_some() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Obstructions { file, format } => match read_document(&file) {
            Ok((alg, warnings)) => {
                let rep = obstruction_document(&alg, warnings);
                print!("{}", rep.render(format));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::LatticeSl2z { matrix, format } => {
            let parts: Vec<i64> = matrix
                .split(',')
                .filter_map(|p| p.trim().parse().ok())
                .collect();
            if parts.len() != 4 {
                eprintln!("error: --matrix expects four integers a,b,c,d");
                return ExitCode::from(2);
            }
            match sl2z_lattice([[parts[0], parts[1]], [parts[2], parts[3]]]) {
                Ok(desc) => {
                    match format {
                        Format::Json => {
                            let lines = desc.describe();
                            println!(
                                "{}",
                                serde_json::to_string_pretty(&serde_json::json!({
                                    "field_d": desc.d,
                                    "c": desc.c.to_string(),
                                    "norm_of_c": engel::scalar::rat_string(&desc.c.norm()),
                                    "v1": [desc.v1[0].to_string(), desc.v1[1].to_string()],
                                    "v2": [desc.v2[0].to_string(), desc.v2[1].to_string()],
                                    "certificate": desc.certificate,
                                    "summary": lines,
                                }))
                                .expect("serializable")
                            );
                        }
                        Format::Table => {
                            for line in desc.describe() {
                                println!("{line}");
                            }
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::NormalFormCheck { format } => {
            let section = engel::report::normal_form_section();
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&section).expect("serializable")
                ),
                Format::Table => {
                    println!("jet contact system derived flag: {:?}", section.jet_flag_ranks);
                    for m in &section.models {
                        println!(
                            "{}: structure equations {}",
                            m.name,
                            if m.satisfies_structure_equations { "hold" } else { "FAIL" }
                        );
                    }
                }
            }
            let ok = section.jet_flag_ranks == vec![2, 1, 0]
                && section.models.iter().all(|m| m.satisfies_structure_equations);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

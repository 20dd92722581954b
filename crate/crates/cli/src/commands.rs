use crate::schema::{self, CResult};
use crate::{CliError, Direction, OutFormat};
use refl_core::groth::{export_dot_category, groth, groth_contra, groth_cov, Variant};
use refl_core::reflect::{r_minus, r_plus};
use std::path::Path;

fn emit(text: &str, output: Option<&Path>) -> CResult<()> {
    match output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_groth(
    input: &Path,
    variant: Variant,
    out: OutFormat,
    output: Option<&Path>,
) -> CResult<()> {
    let d = schema::diagram_of(&schema::load(input)?)?;
    let g = groth(&d, variant)?;
    let text = match out {
        OutFormat::Json => schema::to_pretty(&schema::json_groth(&g, &d)),
        OutFormat::Dot => export_dot_category(g.cat()),
    };
    emit(&text, output)
}

pub fn cmd_reflect(
    rep: &Path,
    diagram: &Path,
    direction: Direction,
    output: Option<&Path>,
) -> CResult<()> {
    let d = schema::diagram_of(&schema::load(diagram)?)?;
    let rep_doc = schema::load(rep)?;
    let reflected = match direction {
        Direction::Plus => {
            let shape = groth_cov(&d)?;
            let m = schema::rep_over_of(&rep_doc, shape.cat())?;
            r_plus(&d, &m)?
        }
        Direction::Minus => {
            let shape = groth_contra(&d)?;
            let m = schema::rep_over_of(&rep_doc, shape.cat())?;
            r_minus(&d, &m)?
        }
    };
    let violations = reflected.validate();
    if !violations.is_empty() {
        return Err(CliError::Check(format!(
            "reflected representation fails validation: {}",
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        )));
    }
    emit(&schema::to_pretty(&schema::json_rep(&reflected)), output)
}

pub fn cmd_homology(input: &Path, output: Option<&Path>) -> CResult<()> {
    let r = schema::rep_of(&schema::load(input)?)?;
    emit(&schema::to_pretty(&schema::json_homology(&r)), output)
}

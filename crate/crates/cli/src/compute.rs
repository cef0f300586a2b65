use mck_core::ck::{bigrading as bigrading_of, power_projectors, surface_projectors};
use mck_core::cohom::CohomModel;
use mck_core::dsl::parse_expr;
use mck_core::hilb::{
    dcm_decomposition, euler_characteristic, gottsche_euler, gottsche_poincare, hilb_ck_dimensions,
    poincare_polynomial,
};
use mck_core::report::Status;
use mck_core::{Mode, SurfaceModel};
use serde_json::json;

use crate::{CliResult, Format, UsageError};

// keeps every Betti and Euler number well inside i64
const MAX_N: usize = 16;

fn check_n(n: usize) -> Result<(), UsageError> {
    if n == 0 || n > MAX_N {
        return Err(UsageError(format!("--n must be between 1 and {MAX_N}")));
    }
    Ok(())
}

fn structured(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("value serialises"));
}

pub fn betti(model: &SurfaceModel, n: usize, degree: Option<usize>, format: Format) -> CliResult {
    check_n(n)?;
    let cohom = CohomModel::for_surface(model)?;
    let poly = poincare_polynomial(&dcm_decomposition(n), &cohom);
    let reference = &gottsche_poincare(n, &cohom.betti())[n - 1];
    let agrees = poly.iter().zip(reference).all(|(a, b)| a == b) && poly.len() == reference.len();
    let status = if agrees { Status::Pass } else { Status::Fail };
    match degree {
        Some(i) => {
            let b = hilb_ck_dimensions(n, i, &cohom)?;
            match format {
                Format::Text => println!("{b}"),
                Format::Structured => structured(json!({
                    "n": n, "degree": i, "betti": b, "status": status,
                })),
            }
        }
        None => match format {
            Format::Text => {
                for (i, b) in poly.iter().enumerate() {
                    println!("b_{i} = {b}");
                }
                if !agrees {
                    println!("mismatch with the generating function: {reference:?}");
                }
            }
            Format::Structured => structured(json!({
                "n": n, "betti": poly, "reference": reference, "status": status,
            })),
        },
    }
    Ok(status)
}

pub fn euler(model: &SurfaceModel, n: usize, format: Format) -> CliResult {
    check_n(n)?;
    let cohom = CohomModel::for_surface(model)?;
    let from_decomposition = euler_characteristic(n, &cohom);
    let reference = gottsche_euler(n, model.chi_top())[n - 1];
    let status = if from_decomposition == reference { Status::Pass } else { Status::Fail };
    match format {
        Format::Text => {
            println!("{from_decomposition}");
            if status == Status::Fail {
                println!("mismatch: generating function gives {reference}");
            }
        }
        Format::Structured => structured(json!({
            "n": n,
            "euler": from_decomposition,
            "reference": reference,
            "status": status,
        })),
    }
    Ok(status)
}

pub fn decomposition(model: &SurfaceModel, n: usize, format: Format) -> CliResult {
    check_n(n)?;
    let fm = dcm_decomposition(n);
    let formulas: Vec<String> = (0..=4 * n).map(|i| fm.projector_formula(i)).collect();
    match format {
        Format::Text => {
            println!("{fm}");
            for f in &formulas {
                println!("{f}");
            }
        }
        Format::Structured => structured(json!({
            "model": model.describe(),
            "motive": fm.to_string(),
            "summands": fm.summands.iter().map(|s| json!({
                "representative": s.representative.to_string(),
                "shape": s.shape,
                "twist": s.twist,
                "summand": s.to_string(),
            })).collect::<Vec<_>>(),
            "projectors": formulas,
        })),
    }
    Ok(Status::Pass)
}

pub fn bigrading(model: &SurfaceModel, text: &str, power: Option<usize>, format: Format) -> CliResult {
    if model.mode() != Mode::K3 {
        return Err(UsageError("the bigrading is only available for K3 surfaces".into()));
    }
    let x = parse_expr(text, power)?;
    let m = x.arity();
    if m == 0 || m > 4 {
        return Err(UsageError(format!(
            "the bigrading is computed on S^m for 1 <= m <= 4, got arity {m}"
        )));
    }
    x.check_model(model)?;
    let family = if m == 1 { surface_projectors(model)? } else { power_projectors(m, model)? };
    let parts = bigrading_of(&x, &family, model)?;
    let codim = x.normalize(model).homogeneous_codim()?.unwrap_or(0);
    match format {
        Format::Text => {
            if parts.is_empty() {
                println!("0");
            }
            for (s, part) in &parts {
                let i = 2 * codim as i64 - s;
                println!("CH^{codim}_({s}) [pi^{i}]: {part}");
            }
        }
        Format::Structured => structured(json!({
            "codim": codim,
            "components": parts.iter().map(|(s, part)| json!({
                "s": s,
                "projector": 2 * codim as i64 - s,
                "class": part.to_string(),
            })).collect::<Vec<_>>(),
        })),
    }
    Ok(Status::Pass)
}

pub fn normalize(model: &SurfaceModel, text: &str, format: Format) -> CliResult {
    let x = parse_expr(text, None)?;
    x.check_model(model)?;
    let nf = x.normalize(model);
    match format {
        Format::Text => println!("{nf}"),
        Format::Structured => structured(json!({
            "arity": nf.arity(),
            "terms": nf.len(),
            "normalForm": nf.to_string(),
        })),
    }
    Ok(Status::Pass)
}

//! JSON producers behind the browser demo; plain Rust so the host test
//! suite can exercise them without a wasm runtime.

use mhqmo::compat::{linspace, threshold, verdict, Verdict};
use mhqmo::eig::eig_hermitian;
use mhqmo::qmo::{quasiprob, DensityMatrix};
use mhqmo::scenario::{closed_form_curves, FamilyBuilder, ScenarioKind};
use mhqmo::tol;
use serde_json::{json, Value};

fn kind(scenario: &str) -> Result<ScenarioKind, String> {
    ScenarioKind::from_name(scenario).map_err(|e| e.to_string())
}

fn outcome_label(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| {
            if *v > 0.0 {
                "+1".to_string()
            } else if *v < 0.0 {
                "-1".to_string()
            } else {
                "0".to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Scenario names with their space dimensions and element counts.
pub fn scenarios() -> String {
    let list: Vec<Value> = ScenarioKind::ALL
        .iter()
        .map(|&k| {
            let builder = FamilyBuilder::new(k);
            let fam = builder.family_at(1.0).expect("sharp family exists");
            json!({
                "name": k.name(),
                "dim": fam.space_dim(),
                "elements": fam.elements().len(),
            })
        })
        .collect();
    json!(list).to_string()
}

/// Min-eigenvalue curve with threshold, per-element eigenvalue curves
/// and the closed-form overlays known for the scenario.
pub fn compat_curve(scenario: &str, steps: usize) -> Result<String, String> {
    if !(2..=2001).contains(&steps) {
        return Err(format!("steps must lie in 2..=2001, got {steps}"));
    }
    let k = kind(scenario)?;
    let builder = FamilyBuilder::new(k);
    let etas = linspace(0.0, 1.0, steps);

    let mut min_eig = Vec::with_capacity(steps);
    let mut labels: Vec<String> = Vec::new();
    let mut element_curves: Vec<Vec<Vec<f64>>> = Vec::new();
    for (i, &eta) in etas.iter().enumerate() {
        let fam = builder.family_at(eta).map_err(|e| e.to_string())?;
        let mut family_min = f64::INFINITY;
        for (j, (o, m)) in fam.elements().iter().enumerate() {
            if i == 0 {
                labels.push(outcome_label(o.values()));
                element_curves.push(Vec::with_capacity(steps));
            }
            let eig = eig_hermitian(m).map_err(|e| e.to_string())?;
            family_min = family_min.min(*eig.values.last().expect("dim >= 1"));
            element_curves[j].push(eig.values);
        }
        min_eig.push(family_min);
    }

    let eta_star = threshold(|e| builder.family_at(e))
        .map_err(|e| e.to_string())?
        .value();

    let elements: Vec<Value> = labels
        .iter()
        .zip(&element_curves)
        .map(|(label, curve)| json!({ "outcome": label, "eigenvalues": curve }))
        .collect();

    let closed_forms: Vec<Value> = closed_form_curves(k)
        .iter()
        .map(|c| {
            let values: Vec<Vec<f64>> = etas.iter().map(|&e| c.values(e)).collect();
            json!({ "label": c.label, "formula": c.formula, "values": values })
        })
        .collect();

    Ok(json!({
        "scenario": k.name(),
        "threshold": eta_star,
        "etas": etas,
        "min_eig": min_eig,
        "elements": elements,
        "closed_forms": closed_forms,
    })
    .to_string())
}

/// Qubit quasi-probability table for a Bloch-vector state, with the
/// genuine marginal distributions alongside.
pub fn quasiprob_table(eta: f64, bx: f64, by: f64, bz: f64) -> Result<String, String> {
    let rho = DensityMatrix::from_bloch(bx, by, bz).map_err(|e| e.to_string())?;
    let builder = FamilyBuilder::new(ScenarioKind::Qubit);
    let fam = builder.family_at(eta).map_err(|e| e.to_string())?;
    let table = quasiprob(&fam, &rho).map_err(|e| e.to_string())?;

    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|(o, p)| {
            json!({
                "outcome": outcome_label(o.values()),
                "p": p,
                "negative": *p < tol::NEGATIVITY_FLAG,
            })
        })
        .collect();

    let marginal = |index: usize| -> Vec<Value> {
        table
            .marginal(&[index])
            .iter()
            .map(|(key, p)| json!({ "outcome": outcome_label(key), "p": p }))
            .collect()
    };

    Ok(json!({
        "eta": eta,
        "bloch": [bx, by, bz],
        "entries": entries,
        "marginal_x": marginal(0),
        "marginal_z": marginal(1),
        "total": table.total(),
        "has_negative": !table.negative_entries().is_empty(),
    })
    .to_string())
}

/// Every element of a scenario family at one eta: entries, eigenvalues
/// and the positivity verdict.
pub fn family_elements(scenario: &str, eta: f64) -> Result<String, String> {
    let k = kind(scenario)?;
    let builder = FamilyBuilder::new(k);
    let fam = builder.family_at(eta).map_err(|e| e.to_string())?;

    let elements: Vec<Value> = fam
        .elements()
        .iter()
        .map(|(o, m)| {
            let eig = eig_hermitian(m).map_err(|e| e.to_string())?;
            let entries: Vec<[f64; 2]> = m.entries().iter().map(|c| [c.re, c.im]).collect();
            Ok(json!({
                "outcome": outcome_label(o.values()),
                "dim": m.dim(),
                "entries": entries,
                "eigenvalues": eig.values,
                "positive": *eig.values.last().expect("dim >= 1") >= -tol::POSITIVITY_SLACK,
            }))
        })
        .collect::<Result<_, String>>()?;

    let v = verdict(&fam, tol::POSITIVITY_SLACK).map_err(|e| e.to_string())?;
    Ok(json!({
        "scenario": k.name(),
        "eta": eta,
        "dim": fam.space_dim(),
        "verdict": match v {
            Verdict::CompatibleBySufficientCondition => "compatible-by-sufficient-condition",
            Verdict::NotCertified => "not-certified",
        },
        "min_eig": fam.min_eigenvalue().map_err(|e| e.to_string())?,
        "elements": elements,
    })
    .to_string())
}

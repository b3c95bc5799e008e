//! Internal consistency suite behind `mhqmo verify`.
//!
//! Each check exercises one contract of the pipeline and reports a short
//! detail string; the command prints one line per check and fails with
//! the first failing name.

use mhqmo::compat::{linspace, threshold};
use mhqmo::eig::eig_hermitian;
use mhqmo::fuzz::{extract_marginal_povm, fuzzify};
use mhqmo::matrix::CMatrix;
use mhqmo::qmo::{marginalize, qmo_from_charfn, quasiprob, DensityMatrix, Grouping, QmoFamily};
use mhqmo::scenario::{
    build_qubit, build_qutrit_embedded, build_two_qubit, family_at, qubit_element_closed_form,
    qubit_element_eigenvalues, qutrit_axis_lowest, qutrit_corner_lambda1, qutrit_corner_lambda2,
    qutrit_element_closed_form, qutrit_marginal_closed_form, FamilyBuilder, ScenarioKind,
};
use mhqmo::tol;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

type Check = (&'static str, fn(f64) -> Result<String, String>);

fn sharp_family(kind: ScenarioKind) -> QmoFamily {
    match kind {
        ScenarioKind::Qubit => build_qubit().1,
        ScenarioKind::Qutrit => build_qutrit_embedded().1,
        ScenarioKind::TwoQubit => build_two_qubit().1,
    }
}

fn canonical_grouping(kind: ScenarioKind) -> Grouping {
    match kind {
        ScenarioKind::TwoQubit => {
            Grouping::new(vec![vec![0, 2], vec![1, 3]], 4).expect("valid partition")
        }
        _ => Grouping::singletons(2),
    }
}

fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let a = CMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let g = a.matmul(&a.adjoint());
    let tr = g.trace().re;
    DensityMatrix::new(g.scale_re(1.0 / tr)).expect("Gram matrices are valid states")
}

fn check_normalization(kind: ScenarioKind) -> Result<String, String> {
    let sharp = sharp_family(kind);
    let mut worst = 0.0f64;
    for eta in [0.0, 0.3, 0.7, 1.0] {
        let fam = fuzzify(&sharp, eta).map_err(|e| e.to_string())?;
        let identity = CMatrix::identity(fam.space_dim());
        worst = worst.max(fam.element_sum().max_abs_diff(&identity));
    }
    if worst <= tol::NORMALIZATION {
        Ok(format!(
            "max |sum - I| = {worst:.2e} <= {:.0e}",
            tol::NORMALIZATION
        ))
    } else {
        Err(format!(
            "max |sum - I| = {worst:.2e} exceeds {:.0e}",
            tol::NORMALIZATION
        ))
    }
}

fn check_hermiticity(_slack: f64) -> Result<String, String> {
    let mut worst = 0.0f64;
    for kind in ScenarioKind::ALL {
        for eta in [0.6, 1.0] {
            let fam = family_at(kind, eta).map_err(|e| e.to_string())?;
            for (_, m) in fam.elements() {
                worst = worst.max(m.hermiticity_error());
            }
        }
    }
    if worst <= tol::HERMITICITY {
        Ok(format!(
            "max deviation = {worst:.2e} <= {:.0e}",
            tol::HERMITICITY
        ))
    } else {
        Err(format!(
            "max deviation = {worst:.2e} exceeds {:.0e}",
            tol::HERMITICITY
        ))
    }
}

fn check_marginal_chain(_slack: f64) -> Result<String, String> {
    let fam = family_at(ScenarioKind::TwoQubit, 0.7).map_err(|e| e.to_string())?;
    let direct = marginalize(&fam, &[0]).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for keep in [[0usize, 1], [0, 2], [0, 3]] {
        let step = marginalize(&fam, &keep).map_err(|e| e.to_string())?;
        let collapsed = marginalize(&step, &[0]).map_err(|e| e.to_string())?;
        for (o, m) in direct.elements() {
            let other = collapsed
                .element(o.values())
                .ok_or("marginal outcome sets disagree")?;
            worst = worst.max(m.max_abs_diff(other));
        }
    }
    if worst <= 1e-12 {
        Ok(format!("max order disagreement = {worst:.2e} <= 1e-12"))
    } else {
        Err(format!(
            "max order disagreement = {worst:.2e} exceeds 1e-12"
        ))
    }
}

fn check_qubit_marginal_povm(_slack: f64) -> Result<String, String> {
    let sharp = sharp_family(ScenarioKind::Qubit);
    let mut worst = 0.0f64;
    for eta in [0.0, 0.4, 0.8, 1.0] {
        let fam = fuzzify(&sharp, eta).map_err(|e| e.to_string())?;
        for (index, pauli) in [
            (0usize, mhqmo::pauli::Pauli::X),
            (1, mhqmo::pauli::Pauli::Z),
        ] {
            let povm = extract_marginal_povm(&fam, index).map_err(|e| e.to_string())?;
            for (outcome, m) in povm.elements() {
                let want =
                    (&CMatrix::identity(2) + &pauli.matrix().scale_re(eta * outcome)).scale_re(0.5);
                worst = worst.max(m.max_abs_diff(&want));
            }
        }
    }
    if worst <= 1e-13 {
        Ok(format!(
            "max |E - (I + eta x sigma)/2| = {worst:.2e} <= 1e-13"
        ))
    } else {
        Err(format!(
            "max |E - (I + eta x sigma)/2| = {worst:.2e} exceeds 1e-13"
        ))
    }
}

fn check_charfn_route(kind: ScenarioKind) -> Result<String, String> {
    let sharp = sharp_family(kind);
    let grouping = canonical_grouping(kind);
    let dft = qmo_from_charfn(sharp.observables(), &grouping).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for ((o1, m1), (o2, m2)) in dft.elements().iter().zip(sharp.elements()) {
        if o1 != o2 {
            return Err("outcome enumerations disagree between routes".into());
        }
        worst = worst.max(m1.max_abs_diff(m2));
    }
    if worst <= tol::ORACLE_EQUIVALENCE {
        Ok(format!(
            "max route difference = {worst:.2e} <= {:.0e}",
            tol::ORACLE_EQUIVALENCE
        ))
    } else {
        Err(format!(
            "max route difference = {worst:.2e} exceeds {:.0e}",
            tol::ORACLE_EQUIVALENCE
        ))
    }
}

fn check_qubit_closed_form(_slack: f64) -> Result<String, String> {
    let builder = FamilyBuilder::new(ScenarioKind::Qubit);
    let mut worst = 0.0f64;
    for eta in linspace(0.0, 1.0, 101) {
        let fam = builder.family_at(eta).map_err(|e| e.to_string())?;
        let want = qubit_element_eigenvalues(eta);
        for (_, m) in fam.elements() {
            let eig = eig_hermitian(m).map_err(|e| e.to_string())?;
            worst = worst.max((eig.values[0] - want[0]).abs());
            worst = worst.max((eig.values[1] - want[1]).abs());
        }
    }
    if worst <= 1e-10 {
        Ok(format!(
            "101-point grid, max |num - closed| = {worst:.2e} <= 1e-10"
        ))
    } else {
        Err(format!("max |num - closed| = {worst:.2e} exceeds 1e-10"))
    }
}

fn check_qutrit_closed_form(_slack: f64) -> Result<String, String> {
    let builder = FamilyBuilder::new(ScenarioKind::Qutrit);
    let mut worst = 0.0f64;
    for eta in linspace(0.0, 1.0, 101) {
        let fam = builder.family_at(eta).map_err(|e| e.to_string())?;
        for (o, m) in fam.elements() {
            let (x, z) = (o.values()[0], o.values()[1]);
            let eig = eig_hermitian(m).map_err(|e| e.to_string())?;
            if (x == 0.0) ^ (z == 0.0) {
                let lowest = *eig.values.last().expect("dim 3");
                worst = worst.max((lowest - qutrit_axis_lowest(eta)).abs());
            } else if x != 0.0 {
                for target in [qutrit_corner_lambda1(eta), qutrit_corner_lambda2(eta)] {
                    let best = eig
                        .values
                        .iter()
                        .map(|v| (v - target).abs())
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(best);
                }
            }
        }
    }
    if worst <= 1e-10 {
        Ok(format!(
            "101-point grid, max |num - closed| = {worst:.2e} <= 1e-10"
        ))
    } else {
        Err(format!("max |num - closed| = {worst:.2e} exceeds 1e-10"))
    }
}

fn check_qutrit_fixtures(_slack: f64) -> Result<String, String> {
    let mut worst = 0.0f64;
    for eta in [0.0, 0.5, 1.0] {
        let fam = family_at(ScenarioKind::Qutrit, eta).map_err(|e| e.to_string())?;
        for (o, m) in fam.elements() {
            let want = qutrit_element_closed_form(o.values()[0], o.values()[1], eta);
            worst = worst.max(m.max_abs_diff(&want));
        }
        for index in [0usize, 1] {
            let povm = extract_marginal_povm(&fam, index).map_err(|e| e.to_string())?;
            for (outcome, m) in povm.elements() {
                let want = qutrit_marginal_closed_form(index, *outcome, eta);
                worst = worst.max(m.max_abs_diff(&want));
            }
        }
        let qfam = family_at(ScenarioKind::Qubit, eta).map_err(|e| e.to_string())?;
        for (o, m) in qfam.elements() {
            let want = qubit_element_closed_form(o.values()[0], o.values()[1], eta);
            worst = worst.max(m.max_abs_diff(&want));
        }
    }
    if worst <= 1e-12 {
        Ok(format!("max |entry - fixture| = {worst:.2e} <= 1e-12"))
    } else {
        Err(format!("max |entry - fixture| = {worst:.2e} exceeds 1e-12"))
    }
}

fn check_marginal_povm_positivity(slack: f64) -> Result<String, String> {
    let builder = FamilyBuilder::new(ScenarioKind::Qutrit);
    let mut least = f64::INFINITY;
    for eta in linspace(0.0, 1.0, 101) {
        let fam = builder.family_at(eta).map_err(|e| e.to_string())?;
        for index in [0usize, 1] {
            let povm = extract_marginal_povm(&fam, index).map_err(|e| e.to_string())?;
            least = least.min(povm.min_eigenvalue().map_err(|e| e.to_string())?);
        }
    }
    if least >= -slack {
        Ok(format!(
            "101-point grid, least marginal eigenvalue = {least:.2e} >= -{slack:.0e}"
        ))
    } else {
        Err(format!(
            "least marginal eigenvalue = {least:.2e} below -{slack:.0e}"
        ))
    }
}

fn check_quasiprob_normalization(_slack: f64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut worst = 0.0f64;
    for kind in ScenarioKind::ALL {
        let fam = family_at(kind, 0.8).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let rho = random_density(&mut rng, fam.space_dim());
            let table = quasiprob(&fam, &rho).map_err(|e| e.to_string())?;
            worst = worst.max((table.total() - 1.0).abs());
        }
    }
    if worst <= tol::NORMALIZATION {
        Ok(format!(
            "max |sum - 1| = {worst:.2e} <= {:.0e}",
            tol::NORMALIZATION
        ))
    } else {
        Err(format!(
            "max |sum - 1| = {worst:.2e} exceeds {:.0e}",
            tol::NORMALIZATION
        ))
    }
}

fn check_expectation_reproduction(_slack: f64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst = 0.0f64;
    for kind in [ScenarioKind::Qubit, ScenarioKind::Qutrit] {
        let fam = family_at(kind, 1.0).map_err(|e| e.to_string())?;
        let x = fam.observables()[0].matrix().clone();
        let z = fam.observables()[1].matrix().clone();
        let sym = (&x.matmul(&z) + &z.matmul(&x)).scale_re(0.5);
        for _ in 0..20 {
            let rho = random_density(&mut rng, fam.space_dim());
            let table = quasiprob(&fam, &rho).map_err(|e| e.to_string())?;
            let mut got = 0.0;
            for (o, p) in table.entries() {
                got += p * o.values()[0] * o.values()[1];
            }
            worst = worst.max((got - rho.matrix().trace_product(&sym).re).abs());
        }
    }
    if worst <= 1e-10 {
        Ok(format!(
            "max |sum P x z - Tr[rho (XZ+ZX)/2]| = {worst:.2e} <= 1e-10"
        ))
    } else {
        Err(format!("max deviation = {worst:.2e} exceeds 1e-10"))
    }
}

fn check_negativity_witness(_slack: f64) -> Result<String, String> {
    let b = std::f64::consts::FRAC_1_SQRT_2;
    let rho = DensityMatrix::from_bloch(b, 0.0, b).map_err(|e| e.to_string())?;
    let sharp = family_at(ScenarioKind::Qubit, 1.0).map_err(|e| e.to_string())?;
    let table = quasiprob(&sharp, &rho).map_err(|e| e.to_string())?;
    let p = table
        .entries()
        .iter()
        .find(|(o, _)| o.values() == [-1.0, -1.0])
        .map(|(_, p)| *p)
        .ok_or("missing (-1, -1) outcome")?;
    let expected = (1.0 - 2.0f64.sqrt()) / 4.0;
    if (p - expected).abs() > 1e-12 {
        return Err(format!("P(-1,-1) = {p} differs from (1 - sqrt(2))/4"));
    }
    let fuzzy = family_at(ScenarioKind::Qubit, 0.5).map_err(|e| e.to_string())?;
    let table = quasiprob(&fuzzy, &rho).map_err(|e| e.to_string())?;
    if !table.negative_entries().is_empty() {
        return Err("table at eta = 0.5 should have no negative entries".into());
    }
    Ok(format!(
        "P(-1,-1) = {p:.9} at eta = 1; no negatives at eta = 0.5"
    ))
}

fn check_threshold_coincidence(_slack: f64) -> Result<String, String> {
    let qutrit = FamilyBuilder::new(ScenarioKind::Qutrit);
    let two_qubit = FamilyBuilder::new(ScenarioKind::TwoQubit);
    let a = threshold(|e| qutrit.family_at(e))
        .map_err(|e| e.to_string())?
        .value()
        .ok_or("qutrit family never loses positivity")?;
    let b = threshold(|e| two_qubit.family_at(e))
        .map_err(|e| e.to_string())?
        .value()
        .ok_or("two-qubit family never loses positivity")?;
    if (a - b).abs() <= 1e-9 {
        Ok(format!("qutrit {a:.9} vs two-qubit {b:.9}, |diff| <= 1e-9"))
    } else {
        Err(format!("thresholds disagree: qutrit {a} vs two-qubit {b}"))
    }
}

fn check_fuzzify_sharp_identity(_slack: f64) -> Result<String, String> {
    for kind in ScenarioKind::ALL {
        let sharp = sharp_family(kind);
        let same = fuzzify(&sharp, 1.0).map_err(|e| e.to_string())?;
        for ((o1, m1), (o2, m2)) in sharp.elements().iter().zip(same.elements()) {
            if o1 != o2 || m1.max_abs_diff(m2) != 0.0 {
                return Err(format!(
                    "fuzzify at eta = 1 changed the {} family",
                    kind.name()
                ));
            }
        }
    }
    Ok("fuzzify(F, 1) = F bitwise on all scenarios".into())
}

/// Run the whole suite with the given positivity slack.
pub fn run_all(slack: f64) -> Vec<CheckResult> {
    let checks: Vec<Check> = vec![
        ("qubit-normalization", |_| {
            check_normalization(ScenarioKind::Qubit)
        }),
        ("qutrit-normalization", |_| {
            check_normalization(ScenarioKind::Qutrit)
        }),
        ("two-qubit-normalization", |_| {
            check_normalization(ScenarioKind::TwoQubit)
        }),
        ("element-hermiticity", check_hermiticity),
        ("marginal-chain-two-qubit", check_marginal_chain),
        ("qubit-marginal-povm", check_qubit_marginal_povm),
        ("charfn-vs-jordan-qubit", |_| {
            check_charfn_route(ScenarioKind::Qubit)
        }),
        ("charfn-vs-jordan-qutrit", |_| {
            check_charfn_route(ScenarioKind::Qutrit)
        }),
        ("charfn-vs-jordan-two-qubit", |_| {
            check_charfn_route(ScenarioKind::TwoQubit)
        }),
        ("qubit-closed-form", check_qubit_closed_form),
        ("qutrit-closed-form", check_qutrit_closed_form),
        ("matrix-fixtures", check_qutrit_fixtures),
        ("marginal-povm-positivity", check_marginal_povm_positivity),
        ("quasiprob-normalization", check_quasiprob_normalization),
        ("expectation-reproduction", check_expectation_reproduction),
        ("negativity-witness", check_negativity_witness),
        ("threshold-two-qubit-vs-qutrit", check_threshold_coincidence),
        ("fuzzify-sharp-identity", check_fuzzify_sharp_identity),
    ];
    checks
        .into_iter()
        .map(|(name, run)| CheckResult {
            name,
            outcome: run(slack),
        })
        .collect()
}

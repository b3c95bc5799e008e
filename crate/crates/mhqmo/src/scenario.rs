//! The three concrete scenarios: orthogonal qubit observables, spin-1
//! qutrit observables through the Clebsch-Gordan embedding, and the
//! four-observable 2-qubit set.
//!
//! Each builder returns the scenario description together with its sharp
//! (eta = 1) family. The qutrit scenario lives in the 4-dimensional
//! 2-qubit product space where fuzzification is defined; conjugating by
//! the Clebsch-Gordan matrix block-diagonalizes every element into a
//! 3x3 spin-1 block and a 1x1 singlet block, and [`extract_qutrit_block`]
//! returns the spin-1 part.
//!
//! Closed-form eigenvalue curves for the qubit and qutrit elements are
//! provided verbatim as an independent cross-check of the numerical
//! pipeline; they are never used inside it.

use crate::error::{Error, Result};
use crate::fuzz::{fuzzify, Fuzzifier};
use crate::matrix::{tensor, CMatrix};
use crate::observable::{spectral, Observable};
use crate::pauli::Pauli;
use crate::qmo::{qmo_jordan, Grouping, OutcomeTuple, QmoFamily};
use crate::tol;

/// Stable scenario names; the CLI vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    Qubit,
    Qutrit,
    TwoQubit,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        ScenarioKind::Qubit,
        ScenarioKind::Qutrit,
        ScenarioKind::TwoQubit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Qubit => "qubit",
            ScenarioKind::Qutrit => "qutrit",
            ScenarioKind::TwoQubit => "two-qubit",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "qubit" => Ok(ScenarioKind::Qubit),
            "qutrit" => Ok(ScenarioKind::Qutrit),
            "two-qubit" => Ok(ScenarioKind::TwoQubit),
            _ => Err(Error::UnknownScenario { name: name.into() }),
        }
    }
}

/// How family elements relate to the physical space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Elements act directly on the physical space.
    Identity,
    /// Elements are built in the 2-qubit embedding; the physical family
    /// is the spin-1 block after Clebsch-Gordan conjugation.
    CgBlock,
}

/// A named observable set with its grouping and embedding.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: ScenarioKind,
    observables: Vec<Observable>,
    grouping: Grouping,
    embedding: Embedding,
}

impl Scenario {
    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    pub fn grouping(&self) -> &Grouping {
        &self.grouping
    }

    pub fn embedding(&self) -> Embedding {
        self.embedding
    }
}

/// Clebsch-Gordan coefficient matrix connecting the 2-qubit product basis
/// with the coupled spin-1 + singlet basis.
#[derive(Clone, Debug)]
pub struct CgTransform {
    matrix: CMatrix,
}

impl CgTransform {
    pub fn new() -> Self {
        let v = std::f64::consts::FRAC_1_SQRT_2;
        let matrix = CMatrix::from_real(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, v, v, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, v, -v, 0.0,
            ],
        );
        CgTransform { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// U m U^dagger: product-basis operator expressed in the coupled basis.
    pub fn to_coupled(&self, m: &CMatrix) -> CMatrix {
        self.matrix.matmul(m).matmul(&self.matrix.adjoint())
    }
}

impl Default for CgTransform {
    fn default() -> Self {
        Self::new()
    }
}

/// Spin-1 x component, (1/sqrt(2)) off-diagonal ladder matrix.
pub fn qutrit_x() -> CMatrix {
    let v = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_real(3, &[0.0, v, 0.0, v, 0.0, v, 0.0, v, 0.0])
}

/// Spin-1 z component, diag(1, 0, -1).
pub fn qutrit_z() -> CMatrix {
    CMatrix::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0])
}

/// Orthogonal qubit observables sigma_x, sigma_z with the sharp family
/// G(x, z) = 1/4 (I + x sigma_x + z sigma_z).
pub fn build_qubit() -> (Scenario, QmoFamily) {
    let observables = vec![
        spectral(&Pauli::X.matrix()).expect("sigma_x is Hermitian"),
        spectral(&Pauli::Z.matrix()).expect("sigma_z is Hermitian"),
    ];
    let grouping = Grouping::singletons(2);
    let family = qmo_jordan(&observables, &grouping).expect("qubit scenario is well-formed");
    (
        Scenario {
            kind: ScenarioKind::Qubit,
            observables,
            grouping,
            embedding: Embedding::Identity,
        },
        family,
    )
}

/// Spin-1 observables in their 4-dimensional 2-qubit embedding:
/// X -> 1/2 (I (x) sigma_x + sigma_x (x) I) and likewise for Z.
pub fn build_qutrit_embedded() -> (Scenario, QmoFamily) {
    let i2 = CMatrix::identity(2);
    let sx = Pauli::X.matrix();
    let sz = Pauli::Z.matrix();
    let emb_x = (&tensor(&i2, &sx) + &tensor(&sx, &i2)).scale_re(0.5);
    let emb_z = (&tensor(&i2, &sz) + &tensor(&sz, &i2)).scale_re(0.5);
    let observables = vec![
        spectral(&emb_x).expect("embedded X is Hermitian"),
        spectral(&emb_z).expect("embedded Z is Hermitian"),
    ];
    let grouping = Grouping::singletons(2);
    let family = qmo_jordan(&observables, &grouping).expect("qutrit scenario is well-formed");
    (
        Scenario {
            kind: ScenarioKind::Qutrit,
            observables,
            grouping,
            embedding: Embedding::CgBlock,
        },
        family,
    )
}

/// The four 2-qubit observables X1, Z1, X2, Z2 grouped into the commuting
/// pairs {X1, X2} and {Z1, Z2}.
pub fn build_two_qubit() -> (Scenario, QmoFamily) {
    let i2 = CMatrix::identity(2);
    let sx = Pauli::X.matrix();
    let sz = Pauli::Z.matrix();
    // observable order (X1, Z1, X2, Z2) matches the outcome tuple order
    let observables = vec![
        spectral(&tensor(&sx, &i2)).expect("X1 is Hermitian"),
        spectral(&tensor(&sz, &i2)).expect("Z1 is Hermitian"),
        spectral(&tensor(&i2, &sx)).expect("X2 is Hermitian"),
        spectral(&tensor(&i2, &sz)).expect("Z2 is Hermitian"),
    ];
    let grouping = Grouping::new(vec![vec![0, 2], vec![1, 3]], 4).expect("valid partition");
    let family = qmo_jordan(&observables, &grouping).expect("two-qubit scenario is well-formed");
    (
        Scenario {
            kind: ScenarioKind::TwoQubit,
            observables,
            grouping,
            embedding: Embedding::Identity,
        },
        family,
    )
}

/// Extract the 3x3 spin-1 block of every element of a 4-dimensional
/// family after Clebsch-Gordan conjugation.
///
/// Fails with [`Error::BlockLeakage`] when any off-diagonal block entry
/// exceeds [`tol::BLOCK_LEAKAGE`], which signals an input that is not
/// spin-1 symmetric.
pub fn extract_qutrit_block(fam: &QmoFamily) -> Result<QmoFamily> {
    if fam.space_dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: fam.space_dim(),
        });
    }
    if fam.observables().len() != 2 {
        return Err(Error::InvalidGrouping {
            reason: format!(
                "spin-1 block extraction expects 2 observables, got {}",
                fam.observables().len()
            ),
        });
    }
    for (idx, o) in fam.observables().iter().enumerate() {
        for p in o.spectrum() {
            if p.value != -1.0 && p.value != 0.0 && p.value != 1.0 {
                return Err(Error::UnsupportedSpectrum { value: p.value });
            }
        }
        if o.outcomes() != [1.0, 0.0, -1.0] {
            return Err(Error::InvalidMatrix {
                reason: format!("observable {idx} must have the spin-1 outcome set {{+1, 0, -1}}"),
            });
        }
    }

    let cg = CgTransform::new();
    let mut elements: Vec<(OutcomeTuple, CMatrix)> = Vec::with_capacity(fam.elements().len());
    for (o, m) in fam.elements() {
        let coupled = cg.to_coupled(m);
        let mut leakage = 0.0f64;
        for k in 0..3 {
            leakage = leakage.max(coupled.get(3, k).norm());
            leakage = leakage.max(coupled.get(k, 3).norm());
        }
        if leakage > tol::BLOCK_LEAKAGE {
            return Err(Error::BlockLeakage {
                leakage,
                limit: tol::BLOCK_LEAKAGE,
            });
        }
        let block = CMatrix::from_fn(3, |i, j| coupled.get(i, j));
        elements.push((o.clone(), block));
    }

    let observables = vec![
        spectral(&qutrit_x()).expect("spin-1 X is Hermitian"),
        spectral(&qutrit_z()).expect("spin-1 Z is Hermitian"),
    ];
    debug_assert_eq!(
        crate::qmo::outcome_tuples(&observables)
            .iter()
            .map(|t| t.values().to_vec())
            .collect::<Vec<_>>(),
        elements
            .iter()
            .map(|(t, _)| t.values().to_vec())
            .collect::<Vec<_>>(),
        "embedded and spin-1 outcome enumerations must agree"
    );
    Ok(QmoFamily::from_parts(observables, fam.eta(), elements, 3))
}

/// Family of a scenario at a given unsharpness.
///
/// The qutrit family is fuzzified in its 4-dimensional embedding and then
/// block-extracted; the other scenarios fuzzify in place.
pub fn family_at(kind: ScenarioKind, eta: f64) -> Result<QmoFamily> {
    match kind {
        ScenarioKind::Qubit => fuzzify(&build_qubit().1, eta),
        ScenarioKind::Qutrit => extract_qutrit_block(&fuzzify(&build_qutrit_embedded().1, eta)?),
        ScenarioKind::TwoQubit => fuzzify(&build_two_qubit().1, eta),
    }
}

/// Reusable eta -> family map for a scenario; decomposes once so sweeps
/// and bisection stay cheap.
pub struct FamilyBuilder {
    kind: ScenarioKind,
    sharp: QmoFamily,
    fuzzifier: Fuzzifier,
}

impl FamilyBuilder {
    pub fn new(kind: ScenarioKind) -> Self {
        let sharp = match kind {
            ScenarioKind::Qubit => build_qubit().1,
            ScenarioKind::Qutrit => build_qutrit_embedded().1,
            ScenarioKind::TwoQubit => build_two_qubit().1,
        };
        let fuzzifier = Fuzzifier::new(&sharp).expect("scenario spaces are qubit embeddings");
        FamilyBuilder {
            kind,
            sharp,
            fuzzifier,
        }
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn family_at(&self, eta: f64) -> Result<QmoFamily> {
        let fam = if eta == 1.0 {
            self.sharp.clone()
        } else {
            self.fuzzifier.family_at(eta)?
        };
        match self.kind {
            ScenarioKind::Qutrit => extract_qutrit_block(&fam),
            _ => Ok(fam),
        }
    }
}

/// Eigenvalues (1 + eta sqrt(2))/4 and (1 - eta sqrt(2))/4 shared by all
/// four qubit elements.
pub fn qubit_element_eigenvalues(eta: f64) -> [f64; 2] {
    let s = eta * std::f64::consts::SQRT_2;
    [(1.0 + s) / 4.0, (1.0 - s) / 4.0]
}

/// Lowest eigenvalue of the qutrit axis elements (x, 0) and (0, z):
/// (1 + eta^2 - eta sqrt(4 + eta^2 (1 + eta^2)^2)) / 8.
pub fn qutrit_axis_lowest(eta: f64) -> f64 {
    let e2 = eta * eta;
    (1.0 + e2 - eta * (4.0 + e2 * (1.0 + e2) * (1.0 + e2)).sqrt()) / 8.0
}

/// First closed-form eigenvalue of the qutrit corner elements (x, z):
/// (1 - 2 eta^2 - eta^4) / 16.
pub fn qutrit_corner_lambda1(eta: f64) -> f64 {
    let e2 = eta * eta;
    (1.0 - 2.0 * e2 - e2 * e2) / 16.0
}

/// Second closed-form eigenvalue of the qutrit corner elements (x, z):
/// (1 + 2 eta^2 - eta sqrt(eta^6 + 8)) / 16.
pub fn qutrit_corner_lambda2(eta: f64) -> f64 {
    let e2 = eta * eta;
    (1.0 + 2.0 * e2 - eta * (e2 * e2 * e2 + 8.0).sqrt()) / 16.0
}

/// Closed-form eigenvalue curves known for a scenario's element classes.
///
/// Labels: `element` for the qubit (all four elements share one pair);
/// `axis` and `corner` for the qutrit classes (x, 0)/(0, z) and
/// (+-1, +-1); `element` for the two-qubit set, whose spectra contain the
/// qutrit corner values.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormCurve {
    pub scenario: ScenarioKind,
    pub label: &'static str,
    pub formula: &'static str,
}

impl ClosedFormCurve {
    pub fn values(&self, eta: f64) -> Vec<f64> {
        closed_form_eigenvalues(self.scenario, self.label, eta)
            .expect("curve labels are valid by construction")
    }
}

/// All known closed-form curves for a scenario.
pub fn closed_form_curves(kind: ScenarioKind) -> Vec<ClosedFormCurve> {
    match kind {
        ScenarioKind::Qubit => vec![ClosedFormCurve {
            scenario: kind,
            label: "element",
            formula: "(1 +- eta sqrt(2)) / 4",
        }],
        ScenarioKind::Qutrit => vec![
            ClosedFormCurve {
                scenario: kind,
                label: "axis",
                formula: "(1 + eta^2 - eta sqrt(4 + eta^2 (1 + eta^2)^2)) / 8",
            },
            ClosedFormCurve {
                scenario: kind,
                label: "corner",
                formula: "(1 - 2 eta^2 - eta^4) / 16 and (1 + 2 eta^2 - eta sqrt(eta^6 + 8)) / 16",
            },
        ],
        ScenarioKind::TwoQubit => vec![ClosedFormCurve {
            scenario: kind,
            label: "element",
            formula: "shared with the qutrit corner: lambda_1, lambda_2",
        }],
    }
}

/// Evaluate the closed forms for an element class at a given eta.
pub fn closed_form_eigenvalues(kind: ScenarioKind, label: &str, eta: f64) -> Result<Vec<f64>> {
    match (kind, label) {
        (ScenarioKind::Qubit, "element") => Ok(qubit_element_eigenvalues(eta).to_vec()),
        (ScenarioKind::Qutrit, "axis") => Ok(vec![qutrit_axis_lowest(eta)]),
        (ScenarioKind::Qutrit, "corner") | (ScenarioKind::TwoQubit, "element") => {
            Ok(vec![qutrit_corner_lambda1(eta), qutrit_corner_lambda2(eta)])
        }
        _ => Err(Error::UnknownLabel {
            label: label.into(),
            scenario: kind.name().into(),
        }),
    }
}

/// Ten-term Pauli form of the sharp 2-qubit element, used by tests and
/// the demo as an explicit fixture.
pub fn two_qubit_element_closed_form(x1: f64, z1: f64, x2: f64, z2: f64, eta: f64) -> CMatrix {
    let i2 = CMatrix::identity(2);
    let sx = Pauli::X.matrix();
    let sy = Pauli::Y.matrix();
    let sz = Pauli::Z.matrix();
    let e2 = eta * eta;
    let e4 = e2 * e2;
    let mut m = tensor(&i2, &i2);
    m = &m + &tensor(&sx, &i2).scale_re(eta * x1);
    m = &m + &tensor(&sz, &i2).scale_re(eta * z1);
    m = &m + &tensor(&i2, &sx).scale_re(eta * x2);
    m = &m + &tensor(&i2, &sz).scale_re(eta * z2);
    m = &m + &tensor(&sx, &sx).scale_re(e2 * x1 * x2);
    m = &m + &tensor(&sz, &sz).scale_re(e2 * z1 * z2);
    m = &m + &tensor(&sx, &sz).scale_re(e2 * x1 * z2);
    m = &m + &tensor(&sz, &sx).scale_re(e2 * x2 * z1);
    m = &m + &tensor(&sy, &sy).scale_re(-e4 * x1 * x2 * z1 * z2);
    m.scale_re(1.0 / 16.0)
}

/// Entry-wise closed form of the fuzzy qutrit element for outcome (x, z),
/// matching the blocks produced by [`extract_qutrit_block`].
pub fn qutrit_element_closed_form(x: f64, z: f64, eta: f64) -> CMatrix {
    let e2 = eta * eta;
    let e4 = e2 * e2;
    let s2 = std::f64::consts::SQRT_2;
    let rows: [f64; 9] = if x == 0.0 && z == 0.0 {
        [
            1.0 - e2,
            0.0,
            e2 * (e2 - 1.0), //
            0.0,
            1.0 - e4,
            0.0, //
            e2 * (e2 - 1.0),
            0.0,
            1.0 - e2,
        ]
        .map(|v| v / 4.0)
    } else if z == 0.0 {
        [
            1.0 - e2,
            s2 * x * eta,
            e2 * (1.0 - e2), //
            s2 * x * eta,
            (1.0 + e2) * (1.0 + e2),
            s2 * x * eta, //
            e2 * (1.0 - e2),
            s2 * x * eta,
            1.0 - e2,
        ]
        .map(|v| v / 8.0)
    } else if x == 0.0 {
        [
            1.0 + 2.0 * z * eta + e2,
            0.0,
            -e2 * (1.0 + e2), //
            0.0,
            (e2 - 1.0) * (e2 - 1.0),
            0.0, //
            -e2 * (1.0 + e2),
            0.0,
            1.0 - 2.0 * z * eta + e2,
        ]
        .map(|v| v / 8.0)
    } else {
        [
            1.0 + 2.0 * z * eta + e2,
            s2 * x * eta * (1.0 + z * eta),
            e2 * (1.0 + e2), //
            s2 * x * eta * (1.0 + z * eta),
            1.0 - e4,
            s2 * x * eta * (1.0 - z * eta), //
            e2 * (1.0 + e2),
            s2 * x * eta * (1.0 - z * eta),
            1.0 - 2.0 * z * eta + e2,
        ]
        .map(|v| v / 16.0)
    };
    CMatrix::from_real(3, &rows)
}

/// Closed forms of the fuzzy qutrit marginal POVM elements.
pub fn qutrit_marginal_closed_form(observable_index: usize, outcome: f64, eta: f64) -> CMatrix {
    let e2 = eta * eta;
    let s2 = std::f64::consts::SQRT_2;
    let rows: [f64; 9] = if observable_index == 0 {
        if outcome == 0.0 {
            [
                1.0,
                0.0,
                -e2, //
                0.0,
                1.0 - e2,
                0.0, //
                -e2,
                0.0,
                1.0,
            ]
            .map(|v| v / 2.0)
        } else {
            let x = outcome;
            [
                1.0,
                s2 * x * eta,
                e2, //
                s2 * x * eta,
                1.0 + e2,
                s2 * x * eta, //
                e2,
                s2 * x * eta,
                1.0,
            ]
            .map(|v| v / 4.0)
        }
    } else if outcome == 0.0 {
        [
            1.0 - e2,
            0.0,
            0.0, //
            0.0,
            1.0 + e2,
            0.0, //
            0.0,
            0.0,
            1.0 - e2,
        ]
        .map(|v| v / 2.0)
    } else {
        let z = outcome;
        [
            1.0 + 2.0 * z * eta + e2,
            0.0,
            0.0, //
            0.0,
            1.0 - e2,
            0.0, //
            0.0,
            0.0,
            1.0 - 2.0 * z * eta + e2,
        ]
        .map(|v| v / 4.0)
    };
    CMatrix::from_real(3, &rows)
}

/// Pauli form of the fuzzy embedded qutrit element, before block
/// extraction.
pub fn qutrit_embedded_closed_form(x: f64, z: f64, eta: f64) -> CMatrix {
    let i2 = CMatrix::identity(2);
    let sx = Pauli::X.matrix();
    let sy = Pauli::Y.matrix();
    let sz = Pauli::Z.matrix();
    let e2 = eta * eta;
    let e4 = e2 * e2;
    let xx = tensor(&sx, &sx);
    let yy = tensor(&sy, &sy);
    let zz = tensor(&sz, &sz);
    let ix_xi = &tensor(&i2, &sx) + &tensor(&sx, &i2);
    let iz_zi = &tensor(&i2, &sz) + &tensor(&sz, &i2);
    let ii = tensor(&i2, &i2);

    if x == 0.0 && z == 0.0 {
        let mut m = ii;
        m = &m - &xx.scale_re(e2);
        m = &m - &zz.scale_re(e2);
        m = &m - &yy.scale_re(e4);
        m.scale_re(0.25)
    } else if z == 0.0 {
        let mut m = ii;
        m = &m + &xx.scale_re(e2);
        m = &m + &yy.scale_re(e4);
        m = &m - &zz.scale_re(e2);
        m = &m + &ix_xi.scale_re(eta * x);
        m.scale_re(1.0 / 8.0)
    } else if x == 0.0 {
        let mut m = ii;
        m = &m - &xx.scale_re(e2);
        m = &m + &zz.scale_re(e2);
        m = &m + &yy.scale_re(e4);
        m = &m + &iz_zi.scale_re(eta * z);
        m.scale_re(1.0 / 8.0)
    } else {
        let mut m = ii;
        m = &m + &xx.scale_re(e2);
        m = &m + &zz.scale_re(e2);
        m = &m - &yy.scale_re(e4);
        m = &m + &iz_zi.scale_re(eta * z);
        m = &m + &ix_xi.scale_re(eta * x);
        m = &m + &(&tensor(&sx, &sz) + &tensor(&sz, &sx)).scale_re(e2 * x * z);
        m.scale_re(1.0 / 16.0)
    }
}

/// Fuzzy qubit element 1/4 (I + eta x sigma_x + eta z sigma_z).
pub fn qubit_element_closed_form(x: f64, z: f64, eta: f64) -> CMatrix {
    let mut m = CMatrix::identity(2);
    m = &m + &Pauli::X.matrix().scale_re(eta * x);
    m = &m + &Pauli::Z.matrix().scale_re(eta * z);
    m.scale_re(0.25)
}

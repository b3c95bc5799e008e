//! Quasi-measurement operator families built by Margenau-Hill
//! symmetrization.
//!
//! For observables split into mutually commuting groups, the element for
//! an outcome tuple is the average over group permutations of the product
//! of group projectors; with two groups this is the Jordan product
//! (1/2){P, Q}. Each family is Hermitian, sums to the identity and
//! marginalizes consistently, but its elements need not be positive:
//! positivity is exactly what [`crate::compat`] certifies.
//!
//! The same family can be reached through the characteristic function
//! phi(u) = <symmetrized product of exp(i X_k u_k)> and a discrete
//! Fourier inversion over a 3-point grid per axis; [`qmo_from_charfn`]
//! implements that route independently so the two constructions can be
//! cross-checked.

use itertools::Itertools;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::eig::min_eigenvalue;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::observable::Observable;
use crate::tol;

/// One outcome label per observable, in observable order.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct OutcomeTuple(Vec<f64>);

impl OutcomeTuple {
    pub fn new(values: Vec<f64>) -> Self {
        OutcomeTuple(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Partition of observable indices into mutually commuting groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grouping {
    groups: Vec<Vec<usize>>,
    observable_count: usize,
}

impl Grouping {
    /// Validate that `groups` partitions `0..observable_count`.
    pub fn new(groups: Vec<Vec<usize>>, observable_count: usize) -> Result<Self> {
        let mut seen = vec![false; observable_count];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvalidGrouping {
                    reason: "groups must be non-empty".into(),
                });
            }
            for &k in g {
                if k >= observable_count {
                    return Err(Error::InvalidGrouping {
                        reason: format!(
                            "index {k} out of range for {observable_count} observables"
                        ),
                    });
                }
                if seen[k] {
                    return Err(Error::InvalidGrouping {
                        reason: format!("index {k} appears more than once"),
                    });
                }
                seen[k] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidGrouping {
                reason: "every observable index must appear in exactly one group".into(),
            });
        }
        Ok(Grouping {
            groups,
            observable_count,
        })
    }

    /// Each observable in its own group: full n! symmetrization.
    pub fn singletons(observable_count: usize) -> Self {
        Grouping {
            groups: (0..observable_count).map(|k| vec![k]).collect(),
            observable_count,
        }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn observable_count(&self) -> usize {
        self.observable_count
    }
}

/// Family of quasi-measurement operators, one element per outcome tuple.
///
/// Elements are stored in canonical enumeration order: outcome labels
/// descending per observable, with the first observable varying fastest.
#[derive(Clone, Debug)]
pub struct QmoFamily {
    observables: Vec<Observable>,
    eta: f64,
    elements: Vec<(OutcomeTuple, CMatrix)>,
    space_dim: usize,
}

impl QmoFamily {
    pub(crate) fn from_parts(
        observables: Vec<Observable>,
        eta: f64,
        elements: Vec<(OutcomeTuple, CMatrix)>,
        space_dim: usize,
    ) -> Self {
        QmoFamily {
            observables,
            eta,
            elements,
            space_dim,
        }
    }

    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn elements(&self) -> &[(OutcomeTuple, CMatrix)] {
        &self.elements
    }

    /// Element for an exact outcome tuple.
    pub fn element(&self, outcome: &[f64]) -> Option<&CMatrix> {
        self.elements
            .iter()
            .find(|(o, _)| o.values() == outcome)
            .map(|(_, m)| m)
    }

    /// Sum of all elements; identity for a well-formed family.
    pub fn element_sum(&self) -> CMatrix {
        let mut sum = CMatrix::zeros(self.space_dim);
        for (_, m) in &self.elements {
            sum = &sum + m;
        }
        sum
    }

    /// Smallest eigenvalue over all elements.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut min = f64::INFINITY;
        for (_, m) in &self.elements {
            min = min.min(min_eigenvalue(m)?);
        }
        Ok(min)
    }
}

/// Canonical outcome enumeration: labels descending per observable, first
/// observable varying fastest.
pub fn outcome_tuples(observables: &[Observable]) -> Vec<OutcomeTuple> {
    let labels: Vec<Vec<f64>> = observables.iter().map(|o| o.outcomes()).collect();
    let total: usize = labels.iter().map(|l| l.len()).product();
    (0..total)
        .map(|idx| {
            let mut rem = idx;
            let values = labels
                .iter()
                .map(|l| {
                    let v = l[rem % l.len()];
                    rem /= l.len();
                    v
                })
                .collect();
            OutcomeTuple(values)
        })
        .collect()
}

fn check_family_inputs(observables: &[Observable], grouping: &Grouping) -> Result<usize> {
    if observables.is_empty() {
        return Err(Error::InvalidGrouping {
            reason: "at least one observable is required".into(),
        });
    }
    if grouping.observable_count() != observables.len() {
        return Err(Error::InvalidGrouping {
            reason: format!(
                "grouping covers {} observables, got {}",
                grouping.observable_count(),
                observables.len()
            ),
        });
    }
    let dim = observables[0].dim();
    for o in observables {
        if o.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                got: o.dim(),
            });
        }
    }
    Ok(dim)
}

/// Build the sharp (eta = 1) family by symmetrized projector products.
///
/// For each outcome tuple, the projectors of every group are multiplied
/// in the group's listed order, and the resulting group operators are
/// averaged over all group permutations. Observables inside one group
/// must commute within [`tol::COMMUTATOR`].
pub fn qmo_jordan(observables: &[Observable], grouping: &Grouping) -> Result<QmoFamily> {
    let dim = check_family_inputs(observables, grouping)?;

    for g in grouping.groups() {
        for pair in g.iter().combinations(2) {
            let norm = observables[*pair[0]]
                .matrix()
                .commutator_norm(observables[*pair[1]].matrix());
            if norm > tol::COMMUTATOR {
                return Err(Error::NonCommutingGroup {
                    norm,
                    limit: tol::COMMUTATOR,
                });
            }
        }
    }

    let tuples = outcome_tuples(observables);
    let mut elements = Vec::with_capacity(tuples.len());
    for outcome in tuples {
        let group_projectors: Vec<CMatrix> = grouping
            .groups()
            .iter()
            .map(|g| {
                let mut p = CMatrix::identity(dim);
                for &k in g {
                    let proj = observables[k]
                        .projector_for(outcome.values()[k])
                        .expect("outcome labels come from the observables themselves");
                    p = p.matmul(proj);
                }
                p
            })
            .collect();
        let element = symmetrized_product(&group_projectors);
        elements.push((outcome, element));
    }

    Ok(QmoFamily {
        observables: observables.to_vec(),
        eta: 1.0,
        elements,
        space_dim: dim,
    })
}

/// Average of the products of `factors` over all factor permutations.
fn symmetrized_product(factors: &[CMatrix]) -> CMatrix {
    let dim = factors[0].dim();
    let g = factors.len();
    let mut sum = CMatrix::zeros(dim);
    let mut count = 0usize;
    for perm in (0..g).permutations(g) {
        let mut prod = CMatrix::identity(dim);
        for idx in perm {
            prod = prod.matmul(&factors[idx]);
        }
        sum = &sum + &prod;
        count += 1;
    }
    sum.scale_re(1.0 / count as f64)
}

/// Validated density operator.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Accepts Hermitian matrices with unit trace and no eigenvalue below
    /// -[`tol::POSITIVITY_SLACK`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dev = matrix.hermiticity_error();
        if dev > tol::HERMITICITY {
            return Err(Error::InvalidDensityMatrix {
                reason: format!(
                    "not Hermitian: deviation {dev:.3e} exceeds {:.0e}",
                    tol::HERMITICITY
                ),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TRACE_ONE || tr.im.abs() > tol::TRACE_ONE {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {} + {}i differs from 1", tr.re, tr.im),
            });
        }
        let min = min_eigenvalue(&matrix).map_err(|e| Error::InvalidDensityMatrix {
            reason: e.to_string(),
        })?;
        if min < -tol::POSITIVITY_SLACK {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("min eigenvalue {min:.3e} is negative"),
            });
        }
        Ok(DensityMatrix { matrix })
    }

    /// Qubit state 1/2 (I + b . sigma) from a Bloch vector with |b| <= 1.
    pub fn from_bloch(bx: f64, by: f64, bz: f64) -> Result<Self> {
        let norm = (bx * bx + by * by + bz * bz).sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("Bloch vector norm {norm} exceeds 1"),
            });
        }
        use crate::pauli::Pauli;
        let mut m = CMatrix::identity(2);
        m = &m + &Pauli::X.matrix().scale_re(bx);
        m = &m + &Pauli::Y.matrix().scale_re(by);
        m = &m + &Pauli::Z.matrix().scale_re(bz);
        DensityMatrix::new(m.scale_re(0.5))
    }

    /// I / dim.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            matrix: CMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Quasi-probability mass function of a family against a state.
#[derive(Clone, Debug)]
pub struct QuasiProbTable {
    eta: f64,
    entries: Vec<(OutcomeTuple, f64)>,
}

impl QuasiProbTable {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn entries(&self) -> &[(OutcomeTuple, f64)] {
        &self.entries
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    /// Entries below [`tol::NEGATIVITY_FLAG`]; non-empty exactly when the
    /// table fails to be a genuine probability distribution.
    pub fn negative_entries(&self) -> Vec<(&OutcomeTuple, f64)> {
        self.entries
            .iter()
            .filter(|(_, p)| *p < tol::NEGATIVITY_FLAG)
            .map(|(o, p)| (o, *p))
            .collect()
    }

    /// Sum the mass over all outcomes not in `keep`; `keep` is a set of
    /// observable indices in ascending order.
    pub fn marginal(&self, keep: &[usize]) -> Vec<(Vec<f64>, f64)> {
        let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
        for (o, p) in &self.entries {
            let key: Vec<f64> = keep.iter().map(|&k| o.values()[k]).collect();
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, acc)) => *acc += p,
                None => out.push((key, *p)),
            }
        }
        out
    }
}

/// P(outcome) = Re Tr[rho G(outcome)] for every element of the family.
///
/// The imaginary residue of each trace is below 1e-11 for Hermitian
/// inputs; only the real part is kept.
pub fn quasiprob(fam: &QmoFamily, rho: &DensityMatrix) -> Result<QuasiProbTable> {
    if rho.dim() != fam.space_dim() {
        return Err(Error::DimMismatch {
            expected: fam.space_dim(),
            got: rho.dim(),
        });
    }
    let entries = fam
        .elements()
        .iter()
        .map(|(o, m)| (o.clone(), rho.matrix().trace_product(m).re))
        .collect();
    Ok(QuasiProbTable {
        eta: fam.eta(),
        entries,
    })
}

/// Sum elements over every observable not in `keep`, producing a family
/// over the kept observables. Keeping everything is the identity map.
pub fn marginalize(fam: &QmoFamily, keep: &[usize]) -> Result<QmoFamily> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let n = fam.observables().len();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    for &k in &keep {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, count: n });
        }
    }

    let kept_observables: Vec<Observable> =
        keep.iter().map(|&k| fam.observables()[k].clone()).collect();
    let tuples = outcome_tuples(&kept_observables);
    let mut elements = Vec::with_capacity(tuples.len());
    for tuple in tuples {
        let mut sum = CMatrix::zeros(fam.space_dim());
        for (o, m) in fam.elements() {
            let matches = keep
                .iter()
                .zip(tuple.values())
                .all(|(&k, &v)| o.values()[k] == v);
            if matches {
                sum = &sum + m;
            }
        }
        elements.push((tuple, sum));
    }

    Ok(QmoFamily {
        observables: kept_observables,
        eta: fam.eta(),
        elements,
        space_dim: fam.space_dim(),
    })
}

fn require_integer_spectra(observables: &[Observable]) -> Result<()> {
    for o in observables {
        for p in o.spectrum() {
            if p.value != p.value.round() {
                return Err(Error::NonIntegerSpectrum { value: p.value });
            }
        }
    }
    Ok(())
}

/// Symmetrized product of group exponentials at phase vector `u`:
/// (1/g!) sum over group permutations of prod_g prod_{k in g} exp(i X_k u_k).
fn grouped_exponential(observables: &[Observable], grouping: &Grouping, u: &[f64]) -> CMatrix {
    let dim = observables[0].dim();
    let group_exps: Vec<CMatrix> = grouping
        .groups()
        .iter()
        .map(|g| {
            let mut e = CMatrix::identity(dim);
            for &k in g {
                e = e.matmul(&observables[k].exp_i(u[k]));
            }
            e
        })
        .collect();
    symmetrized_product(&group_exps)
}

/// Margenau-Hill characteristic function phi(u) = Tr[rho {prod exp(i X_k u_k)}_sym],
/// with symmetrization over permutations of the commuting groups.
///
/// All observable spectra must be integer-valued.
pub fn char_function(
    observables: &[Observable],
    grouping: &Grouping,
    rho: &DensityMatrix,
    u: &[f64],
) -> Result<Complex64> {
    let dim = check_family_inputs(observables, grouping)?;
    if rho.dim() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            got: rho.dim(),
        });
    }
    if u.len() != observables.len() {
        return Err(Error::DimMismatch {
            expected: observables.len(),
            got: u.len(),
        });
    }
    require_integer_spectra(observables)?;
    let sym = grouped_exponential(observables, grouping, u);
    Ok(rho.matrix().trace_product(&sym))
}

/// Sharp family via discrete Fourier inversion of the operator-valued
/// characteristic function on the 3-point grid {0, 2pi/3, 4pi/3} per axis.
///
/// Outcome labels must lie in {-1, 0, +1}: the label differences then
/// stay distinct mod 3, which is exactly what the 3-point grid resolves.
/// Serves as an independent cross-check of [`qmo_jordan`].
pub fn qmo_from_charfn(observables: &[Observable], grouping: &Grouping) -> Result<QmoFamily> {
    let dim = check_family_inputs(observables, grouping)?;
    for o in observables {
        for p in o.spectrum() {
            if p.value != -1.0 && p.value != 0.0 && p.value != 1.0 {
                return Err(Error::UnsupportedSpectrum { value: p.value });
            }
        }
    }

    let n = observables.len();
    let grid: [f64; 3] = [
        0.0,
        2.0 * std::f64::consts::PI / 3.0,
        4.0 * std::f64::consts::PI / 3.0,
    ];
    let tuples = outcome_tuples(observables);
    let mut elements: Vec<(OutcomeTuple, CMatrix)> = tuples
        .iter()
        .map(|t| (t.clone(), CMatrix::zeros(dim)))
        .collect();

    let points = 3usize.pow(n as u32);
    for idx in 0..points {
        let mut rem = idx;
        let u: Vec<f64> = (0..n)
            .map(|_| {
                let v = grid[rem % 3];
                rem /= 3;
                v
            })
            .collect();
        let omega = grouped_exponential(observables, grouping, &u);
        for (outcome, acc) in elements.iter_mut() {
            let dot: f64 = outcome.values().iter().zip(&u).map(|(x, uk)| x * uk).sum();
            let phase = Complex64::from_polar(1.0, -dot);
            *acc = &*acc + &omega.scale(phase);
        }
    }
    let scale = 1.0 / points as f64;
    for (_, m) in elements.iter_mut() {
        *m = m.scale_re(scale);
    }

    Ok(QmoFamily {
        observables: observables.to_vec(),
        eta: 1.0,
        elements,
        space_dim: dim,
    })
}

/// Wire form: `{"eta": e, "outcomes": [[labels]...], "elements":
/// [{"outcome": [...], "matrix": CMatrix}]}`.
impl Serialize for QmoFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ElementRepr<'a> {
            outcome: &'a OutcomeTuple,
            matrix: &'a CMatrix,
        }
        let outcomes: Vec<Vec<f64>> = self.observables.iter().map(|o| o.outcomes()).collect();
        let elements: Vec<ElementRepr> = self
            .elements
            .iter()
            .map(|(o, m)| ElementRepr {
                outcome: o,
                matrix: m,
            })
            .collect();
        let mut s = serializer.serialize_struct("QmoFamily", 3)?;
        s.serialize_field("eta", &self.eta)?;
        s.serialize_field("outcomes", &outcomes)?;
        s.serialize_field("elements", &elements)?;
        s.end()
    }
}

/// Wire form: `{"eta": e, "entries": [{"outcome": [...], "p": v,
/// "negative": bool}]}`; `negative` flags entries below -1e-11.
impl Serialize for QuasiProbTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EntryRepr<'a> {
            outcome: &'a OutcomeTuple,
            p: f64,
            #[serde(skip_serializing_if = "std::ops::Not::not")]
            negative: bool,
        }
        let entries: Vec<EntryRepr> = self
            .entries
            .iter()
            .map(|(o, p)| EntryRepr {
                outcome: o,
                p: *p,
                negative: *p < tol::NEGATIVITY_FLAG,
            })
            .collect();
        let mut s = serializer.serialize_struct("QuasiProbTable", 2)?;
        s.serialize_field("eta", &self.eta)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

//! Positivity analysis of a family as a function of unsharpness.
//!
//! Element positivity certifies joint measurability (the family is then a
//! parent POVM); it is a sufficient condition only, so the negative
//! verdict is "not certified", never "incompatible". The threshold
//! eta* is located by a 101-point pre-scan that validates a single sign
//! change, followed by bisection of the predicate
//! min_eig(eta) >= -slack down to [`tol::BISECT_ETA`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmo::QmoFamily;
use crate::tol;

/// Joint-measurability verdict from element positivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every element is positive semidefinite: the family is a parent
    /// POVM and the observables are jointly measurable.
    #[serde(rename = "compatible-by-sufficient-condition")]
    CompatibleBySufficientCondition,
    /// Some element has a negative eigenvalue. The criterion is only
    /// sufficient, so this does not prove incompatibility.
    #[serde(rename = "not-certified")]
    NotCertified,
}

/// Result of a threshold search on [lo, hi].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    /// First eta where the family stops being positive semidefinite.
    Crossing(f64),
    /// The family stays positive on the whole bracket.
    NoneInRange,
}

impl Threshold {
    pub fn value(&self) -> Option<f64> {
        match self {
            Threshold::Crossing(t) => Some(*t),
            Threshold::NoneInRange => None,
        }
    }
}

/// One sampled point of a min-eigenvalue curve.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CompatPoint {
    pub eta: f64,
    pub min_eig: f64,
}

/// Min-eigenvalue curve plus the bisected threshold.
///
/// Wire form: `{"scenario": id, "threshold": t | null, "grid":
/// [{"eta": e, "min_eig": v}]}`.
#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub scenario: String,
    pub threshold: Option<f64>,
    pub grid: Vec<CompatPoint>,
}

impl CompatReport {
    /// Sample the curve on `grid` and bisect the threshold on [0, 1].
    pub fn compute<F>(id: &str, builder: F, grid: &[f64], slack: f64) -> Result<CompatReport>
    where
        F: Fn(f64) -> Result<QmoFamily>,
    {
        let points = min_eig_curve(&builder, grid)?;
        let threshold = threshold_with(&builder, 0.0, 1.0, slack)?.value();
        Ok(CompatReport {
            scenario: id.to_string(),
            threshold,
            grid: points,
        })
    }
}

/// Evenly spaced grid with `steps` points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "a grid needs at least two points");
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            if k == steps - 1 {
                hi
            } else {
                lo + k as f64 * h
            }
        })
        .collect()
}

/// Evaluate min over elements of the min eigenvalue at every grid point.
///
/// The grid must be non-empty, sorted strictly increasing and inside
/// [0, 1].
pub fn min_eig_curve<F>(builder: F, grid: &[f64]) -> Result<Vec<CompatPoint>>
where
    F: Fn(f64) -> Result<QmoFamily>,
{
    if grid.is_empty() {
        return Err(Error::InvalidGrid {
            reason: "grid is empty".into(),
        });
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidGrid {
                reason: "grid must be strictly increasing".into(),
            });
        }
    }
    if grid[0] < 0.0 || *grid.last().unwrap() > 1.0 {
        return Err(Error::InvalidGrid {
            reason: "grid must lie inside [0, 1]".into(),
        });
    }
    grid.iter()
        .map(|&eta| {
            let fam = builder(eta)?;
            Ok(CompatPoint {
                eta,
                min_eig: fam.min_eigenvalue()?,
            })
        })
        .collect()
}

/// Threshold on the default bracket [0, 1] with the shared positivity
/// slack.
pub fn threshold<F>(builder: F) -> Result<Threshold>
where
    F: Fn(f64) -> Result<QmoFamily>,
{
    threshold_with(&builder, 0.0, 1.0, tol::POSITIVITY_SLACK)
}

/// Threshold search on an explicit bracket.
///
/// Pre-scans 101 points to validate the sign structure: the family must
/// be positive at `lo` ([`Error::NotPositiveAtZero`] otherwise) and the
/// curve must cross zero at most once ([`Error::SignStructure`]); with no
/// crossing the result is [`Threshold::NoneInRange`]. Bisection then
/// resolves the crossing to [`tol::BISECT_ETA`] in eta.
pub fn threshold_with<F>(builder: F, lo: f64, hi: f64, slack: f64) -> Result<Threshold>
where
    F: Fn(f64) -> Result<QmoFamily>,
{
    assert!(
        lo < hi && lo >= 0.0 && hi <= 1.0,
        "bracket must sit inside [0, 1]"
    );
    let grid = linspace(lo, hi, 101);
    let values = grid
        .iter()
        .map(|&eta| builder(eta)?.min_eigenvalue())
        .collect::<Result<Vec<f64>>>()?;

    let negative: Vec<bool> = values.iter().map(|&v| v < -slack).collect();
    if negative[0] {
        return Err(Error::NotPositiveAtZero {
            eta: lo,
            min_eig: values[0],
        });
    }
    let changes = negative.windows(2).filter(|w| w[0] != w[1]).count();
    if changes > 1 {
        return Err(Error::SignStructure { changes });
    }
    let first_negative = match negative.iter().position(|&n| n) {
        Some(i) => i,
        None => return Ok(Threshold::NoneInRange),
    };

    let (mut a, mut b) = (grid[first_negative - 1], grid[first_negative]);
    while b - a > tol::BISECT_ETA {
        let mid = 0.5 * (a + b);
        if builder(mid)?.min_eigenvalue()? >= -slack {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Threshold::Crossing(0.5 * (a + b)))
}

/// Positivity verdict for a single family.
pub fn verdict(fam: &QmoFamily, slack: f64) -> Result<Verdict> {
    let min = fam.min_eigenvalue()?;
    Ok(if min >= -slack {
        Verdict::CompatibleBySufficientCondition
    } else {
        Verdict::NotCertified
    })
}

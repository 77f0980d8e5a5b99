//! Mutually unbiased bases and total information.
//!
//! Two bases of an `n`-dimensional space are mutually unbiased when every
//! cross overlap satisfies `|<a_j|b_i>|^2 = 1/n`: a system prepared in one
//! basis gives uniformly random outcomes in the other. In prime dimension
//! there is a complete set of `n + 1` such bases.
//!
//! Summing a measure over a complete set gives a "total information". With
//! the quadratic measure the sum is `Tr rho^2 - 1/n`, a unitary invariant.
//! With the Shannon measure it is not invariant: for a qubit in
//! `cos(theta/2)|z+> + sin(theta/2)|z->` it depends on `theta`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::inner;
use crate::measurement::{outcome_distribution, Basis};
use crate::measures::{shannon, MeasureKind, ProbDist};
use crate::state::{bloch_state, purity, DensityMatrix, Tolerances};

/// Largest dimension with a supported construction.
pub const MAX_MUB_DIM: usize = 7;

/// A complete set of `n + 1` pairwise mutually unbiased bases.
#[derive(Debug, Clone)]
pub struct MubSet {
    dim: usize,
    bases: Vec<Basis>,
}

impl MubSet {
    /// Wrap externally supplied bases after verifying them.
    pub fn from_bases(bases: Vec<Basis>, tol: f64) -> Result<Self> {
        let dim = bases.first().map(Basis::dim).ok_or_else(|| Error::Invalid("no bases".into()))?;
        if bases.len() != dim + 1 {
            return Err(Error::Invalid(format!(
                "a complete set in dimension {dim} has {} bases, got {}",
                dim + 1,
                bases.len()
            )));
        }
        if let Some(b) = bases.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
        let report = verify_mutually_unbiased(&bases, tol);
        if !report.ok {
            return Err(Error::Invalid(format!(
                "bases are not mutually unbiased: worst deviation {:e} at {:?}",
                report.worst_deviation, report.offending_pair
            )));
        }
        Ok(Self { dim, bases })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    /// Same set with every basis rotated by `u`; still mutually unbiased.
    pub fn rotated(&self, u: &crate::linalg::ComplexMatrix) -> Result<Self> {
        let bases = self.bases.iter().map(|b| b.rotated(u)).collect::<Result<Vec<_>>>()?;
        Self::from_bases(bases, Tolerances::default().structural)
    }

    /// `[[[re, im], ...] per vector] per basis`.
    pub fn to_pairs(&self) -> Vec<Vec<Vec<[f64; 2]>>> {
        self.bases.iter().map(Basis::to_pairs).collect()
    }
}

impl Serialize for MubSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MubSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<Vec<[f64; 2]>>>::deserialize(deserializer)?;
        let bases = raw
            .into_iter()
            .enumerate()
            .map(|(k, vectors)| {
                let vectors = vectors
                    .into_iter()
                    .map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                Basis::unlabelled(vectors, &format!("b{k}."))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MubSet::from_bases(bases, Tolerances::default().structural).map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Complete set of mutually unbiased bases for prime `n <= 7`.
///
/// For `n = 2` these are the spin eigenbases in the order z, x, y, with
/// `|y+-> = (|z+> +- i|z->)/sqrt 2`. For odd primes: the computational basis
/// followed by the `n` bases `k = 0..n` whose `j`-th vector has components
/// `omega^(k m^2 + j m) / sqrt n`, `omega = exp(2 pi i / n)`.
///
/// The result is verified before it is returned.
pub fn construct_mubs(n: usize) -> Result<MubSet> {
    if n.is_power_of_two() && n >= 4 {
        return Err(Error::UnsupportedDimension {
            dim: n,
            reason: "prime-power dimensions need the Galois-field construction, which is not implemented"
                .into(),
        });
    }
    if !is_prime(n) {
        return Err(Error::UnsupportedDimension {
            dim: n,
            reason: "complete sets are only constructed for prime dimensions".into(),
        });
    }
    if n > MAX_MUB_DIM {
        return Err(Error::UnsupportedDimension {
            dim: n,
            reason: format!("dimensions above {MAX_MUB_DIM} are out of range"),
        });
    }
    let bases = if n == 2 {
        vec![Basis::spin_z(), Basis::spin_x(), Basis::spin_y()]
    } else {
        let omega = |e: usize| Complex64::from_polar(1.0 / (n as f64).sqrt(), 2.0 * PI * (e % n) as f64 / n as f64);
        let mut bases = vec![Basis::computational(n)];
        for k in 0..n {
            let vectors = (0..n)
                .map(|j| (0..n).map(|m| omega(k * m * m + j * m)).collect())
                .collect();
            bases.push(Basis::unlabelled(vectors, &format!("f{k}."))?);
        }
        bases
    };
    MubSet::from_bases(bases, Tolerances::default().structural)
}

/// Cached complete set for `n`; built once per dimension.
pub fn cached_mubs(n: usize) -> Result<&'static MubSet> {
    static CACHE: [OnceLock<Option<MubSet>>; MAX_MUB_DIM + 1] = [const { OnceLock::new() }; MAX_MUB_DIM + 1];
    match CACHE.get(n) {
        Some(cell) => cell
            .get_or_init(|| construct_mubs(n).ok())
            .as_ref()
            .ok_or_else(|| construct_mubs(n).unwrap_err()),
        None => construct_mubs(n).map(|_| unreachable!("no set above the maximum dimension")),
    }
}

/// Outcome of a pairwise unbiasedness check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub dim: usize,
    pub bases: usize,
    /// `max | |<a|b>|^2 - 1/n |` over vectors of distinct bases.
    pub worst_deviation: f64,
    /// Bases holding the worst overlap, when it exceeds the tolerance.
    pub offending_pair: Option<(usize, usize)>,
    /// The worst `|<a|b>|^2` itself, when it exceeds the tolerance.
    pub offending_overlap: Option<f64>,
}

/// Check that every pair of distinct bases is mutually unbiased at `tol`.
/// Failures are reported, not raised.
pub fn verify_mutually_unbiased(bases: &[Basis], tol: f64) -> VerificationReport {
    let dim = bases.first().map_or(0, Basis::dim);
    let mut report = VerificationReport {
        ok: true,
        dim,
        bases: bases.len(),
        worst_deviation: 0.0,
        offending_pair: None,
        offending_overlap: None,
    };
    if bases.iter().any(|b| b.dim() != dim) {
        report.ok = false;
        report.worst_deviation = f64::INFINITY;
        return report;
    }
    let target = 1.0 / dim as f64;
    let mut worst_at = None;
    for a in 0..bases.len() {
        for b in (a + 1)..bases.len() {
            for va in bases[a].vectors() {
                for vb in bases[b].vectors() {
                    let overlap = inner(va, vb).norm_sqr();
                    let deviation = (overlap - target).abs();
                    if deviation > report.worst_deviation {
                        report.worst_deviation = deviation;
                        worst_at = Some(((a, b), overlap));
                    }
                }
            }
        }
    }
    if report.worst_deviation.is_nan() || report.worst_deviation >= tol {
        report.ok = false;
        if let Some((pair, overlap)) = worst_at {
            report.offending_pair = Some(pair);
            report.offending_overlap = Some(overlap);
        }
    }
    report
}

/// Measure value in one basis of the set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisInfo {
    pub basis: usize,
    pub distribution: ProbDist,
    pub value: f64,
}

/// Per-basis values and their sum over a complete set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TotalInfoReport {
    pub measure: MeasureKind,
    pub per_basis: Vec<BasisInfo>,
    pub total: f64,
    /// `Tr rho^2 - 1/n`, attached for the quadratic measure.
    pub closed_form: Option<f64>,
}

/// Sum of `measure` over the outcome distributions in every basis of `mubs`.
pub fn total_information(rho: &DensityMatrix, mubs: &MubSet, measure: MeasureKind) -> Result<TotalInfoReport> {
    if rho.dim() != mubs.dim() {
        return Err(Error::DimensionMismatch {
            expected: mubs.dim(),
            found: rho.dim(),
        });
    }
    let per_basis = mubs
        .bases()
        .iter()
        .enumerate()
        .map(|(basis, b)| {
            let distribution = outcome_distribution(rho, b)?;
            let value = measure.evaluate(&distribution)?;
            Ok(BasisInfo {
                basis,
                distribution,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = per_basis.iter().map(|b| b.value).sum();
    let closed_form = matches!(measure, MeasureKind::Quadratic).then(|| i_total_closed_form(rho));
    Ok(TotalInfoReport {
        measure,
        per_basis,
        total,
        closed_form,
    })
}

fn entropy_term(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Shannon total information over the x, y, z spin bases for the qubit
/// `cos(theta/2)|z+> + sin(theta/2)|z->`, in closed form:
///
/// ```text
/// - (1 - sin t)/2 log2((1 - sin t)/2) - (1 + sin t)/2 log2((1 + sin t)/2)
/// - cos^2(t/2) log2 cos^2(t/2) - sin^2(t/2) log2 sin^2(t/2) + 1
/// ```
///
/// The three groups are the x, z and y contributions. This path is kept
/// independent of [`h_total_simulated`].
pub fn h_total_theta(theta: f64) -> f64 {
    let s = theta.sin();
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = (theta / 2.0).sin().powi(2);
    entropy_term((1.0 - s) / 2.0) + entropy_term((1.0 + s) / 2.0) + entropy_term(c2) + entropy_term(s2) + 1.0
}

/// The same quantity as [`h_total_theta`], obtained by simulating the three
/// spin measurements on `bloch_state(theta, 0)`.
pub fn h_total_simulated(theta: f64) -> Result<f64> {
    let rho = bloch_state(theta, 0.0).projector();
    Ok(total_information(&rho, cached_mubs(2)?, MeasureKind::Shannon)?.total)
}

/// `Tr rho^2 - 1/n`.
pub fn i_total_closed_form(rho: &DensityMatrix) -> f64 {
    purity(rho) - 1.0 / rho.dim() as f64
}

/// Shannon information of the outcome distribution in the eigenbasis of
/// `rho`, i.e. of the optimal experiment.
pub fn eigenbasis_shannon(rho: &DensityMatrix) -> f64 {
    let basis = Basis::eigenbasis(rho);
    shannon(&outcome_distribution(rho, &basis).expect("eigenbasis matches dimension"))
}

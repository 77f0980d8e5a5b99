//! Projective measurements and sequential measurement chains.
//!
//! A [`Basis`] defines a complete, non-degenerate projective measurement.
//! Outcome `i` occurs with probability `<i|rho|i>` and leaves the system in
//! `|i><i|`. Chaining two measurements gives the decomposition
//! `H(A and B) = H(A) + H(B|A)`, where the conditional term averages the
//! information of the second measurement over the post-measurement states of
//! the first. Zero-probability branches contribute nothing.
//!
//! For a classical joint table the chain total does not depend on the order
//! of the two questions. For non-commuting bases it does; see
//! [`order_asymmetry`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix};
use crate::measures::{InfoMeasure, ProbDist};
use crate::state::{DensityMatrix, PureState, Tolerances};

/// Branch probabilities at or below this are treated as zero.
pub const ZERO_BRANCH: f64 = 1e-14;

/// An ordered orthonormal basis with outcome labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: Vec<Vec<Complex64>>,
    labels: Vec<String>,
}

impl Basis {
    pub fn new(vectors: Vec<Vec<Complex64>>, labels: Vec<String>) -> Result<Self> {
        Self::with_tolerance(vectors, labels, Tolerances::default().structural)
    }

    pub fn with_tolerance(
        vectors: Vec<Vec<Complex64>>,
        labels: Vec<String>,
        tol: f64,
    ) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(Error::Invalid("basis must contain at least one vector".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if labels.len() != dim {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                outcomes: dim,
            });
        }
        for i in 0..dim {
            for j in i..dim {
                let target = if i == j { 1.0 } else { 0.0 };
                let deviation = (inner(&vectors[i], &vectors[j]) - target).norm();
                if deviation.is_nan() || deviation >= tol {
                    return Err(Error::NotOrthonormal { i, j, deviation });
                }
            }
        }
        Ok(Self { vectors, labels })
    }

    /// Basis with labels `"{prefix}{index}"`.
    pub fn unlabelled(vectors: Vec<Vec<Complex64>>, prefix: &str) -> Result<Self> {
        let labels = (0..vectors.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(vectors, labels)
    }

    /// Computational basis `|0>, ..., |n-1>`.
    pub fn computational(n: usize) -> Self {
        let vectors = (0..n)
            .map(|k| PureState::basis(n, k).amplitudes().to_vec())
            .collect();
        Self::unlabelled(vectors, "").expect("standard basis is orthonormal")
    }

    /// Columns of a unitary.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        Self::unlabelled((0..u.cols()).map(|j| u.column(j)).collect(), "")
    }

    /// Eigenbasis of a density matrix, ordered by descending eigenvalue.
    pub fn eigenbasis(rho: &DensityMatrix) -> Self {
        Self::unlabelled(rho.eigenvectors(), "w").expect("eigenvectors are orthonormal")
    }

    /// Spin-z eigenbasis `|z+>, |z->`.
    pub fn spin_z() -> Self {
        qubit_basis([(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)], "z")
    }

    /// Spin-x eigenbasis `(|z+> +- |z->)/sqrt 2`.
    pub fn spin_x() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        qubit_basis([(h, 0.0), (h, 0.0)], [(h, 0.0), (-h, 0.0)], "x")
    }

    /// Spin-y eigenbasis `(|z+> +- i|z->)/sqrt 2`.
    pub fn spin_y() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        qubit_basis([(h, 0.0), (0.0, h)], [(h, 0.0), (0.0, -h)], "y")
    }

    /// Eigenbasis of the spin along the direction in the x-z plane at angle
    /// `alpha` from the z axis: `(cos a/2, sin a/2)` and `(-sin a/2, cos a/2)`.
    pub fn tilt(alpha: f64) -> Self {
        let (s, c) = (alpha / 2.0).sin_cos();
        qubit_basis([(c, 0.0), (s, 0.0)], [(-s, 0.0), (c, 0.0)], "t")
    }

    /// Same vectors, outcome order permuted: outcome `k` of the result is
    /// outcome `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.dim()];
        for &p in perm {
            if p >= self.dim() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
        }
        if perm.len() != self.dim() {
            return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
        }
        Ok(Self {
            vectors: perm.iter().map(|&p| self.vectors[p].clone()).collect(),
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
        })
    }

    /// Apply a unitary to every basis vector.
    pub fn rotated(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(
            self.vectors.iter().map(|v| u.apply(v)).collect(),
            self.labels.clone(),
        )
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Vectors as `[[re, im], ...]` lists.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
            .collect()
    }
}

fn qubit_basis(a: [(f64, f64); 2], b: [(f64, f64); 2], axis: &str) -> Basis {
    let v = |x: [(f64, f64); 2]| x.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    Basis::new(vec![v(a), v(b)], vec![format!("{axis}+"), format!("{axis}-")])
        .expect("hardcoded qubit basis is orthonormal")
}

fn check_dims(rho: &DensityMatrix, basis: &Basis) -> Result<()> {
    if rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: basis.dim(),
        });
    }
    Ok(())
}

/// Born-rule outcome probabilities `p_i = <i|rho|i>`, labelled by the basis.
pub fn outcome_distribution(rho: &DensityMatrix, basis: &Basis) -> Result<ProbDist> {
    check_dims(rho, basis)?;
    let probs: Vec<f64> = basis
        .vectors()
        .iter()
        .map(|v| rho.matrix().expectation(v).re.max(0.0))
        .collect();
    ProbDist::new(probs)?.with_labels(basis.labels().to_vec())
}

/// State after observing `outcome`: `P rho P / Tr(P rho)` with
/// `P = |outcome><outcome|`.
///
/// For a rank-one projector this is the projector itself, which is what is
/// returned; the probability is only used to reject impossible outcomes.
pub fn posterior_state(rho: &DensityMatrix, basis: &Basis, outcome: usize) -> Result<DensityMatrix> {
    check_dims(rho, basis)?;
    if outcome >= basis.dim() {
        return Err(Error::OutcomeOutOfRange {
            outcome,
            dim: basis.dim(),
        });
    }
    let v = basis.vector(outcome);
    let p = rho.matrix().expectation(v).re;
    if p <= ZERO_BRANCH {
        return Err(Error::ZeroProbabilityOutcome { outcome });
    }
    DensityMatrix::new(ComplexMatrix::outer(v, v))
}

/// One branch of a two-step chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub label: String,
    pub probability: f64,
    pub distribution: ProbDist,
    pub info: f64,
}

/// Information bookkeeping of a two-step measurement chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequentialReport {
    /// `H(A)`.
    pub first_info: f64,
    /// `H(B|A) = sum_j p(a_j) H(branch_j)`.
    pub conditional_info: f64,
    /// `H(A) + H(B|A)`.
    pub total_info: f64,
    /// Branches with non-zero probability, in outcome order.
    pub per_branch: Vec<Branch>,
}

impl SequentialReport {
    fn assemble(first_info: f64, per_branch: Vec<Branch>) -> Self {
        let conditional_info = per_branch.iter().map(|b| b.probability * b.info).sum::<f64>();
        Self {
            first_info,
            conditional_info,
            total_info: first_info + conditional_info,
            per_branch,
        }
    }
}

/// Measure `first`, then `second` on each post-measurement state.
pub fn sequential_info<M: InfoMeasure + ?Sized>(
    rho: &DensityMatrix,
    first: &Basis,
    second: &Basis,
    measure: &M,
) -> Result<SequentialReport> {
    check_dims(rho, first)?;
    check_dims(rho, second)?;
    let first_dist = outcome_distribution(rho, first)?;
    let mut branches = Vec::new();
    for (j, &pj) in first_dist.probs().iter().enumerate() {
        if pj <= ZERO_BRANCH {
            continue;
        }
        let post = posterior_state(rho, first, j)?;
        let distribution = outcome_distribution(&post, second)?;
        branches.push(Branch {
            label: first.labels()[j].clone(),
            probability: pj,
            info: measure.info(&distribution),
            distribution,
        });
    }
    Ok(SequentialReport::assemble(measure.info(&first_dist), branches))
}

/// `|[H(A) + H(B|A)] - [H(B) + H(A|B)]|`.
pub fn order_asymmetry<M: InfoMeasure + ?Sized>(
    rho: &DensityMatrix,
    a: &Basis,
    b: &Basis,
    measure: &M,
) -> Result<f64> {
    let ab = sequential_info(rho, a, b, measure)?;
    let ba = sequential_info(rho, b, a, measure)?;
    Ok((ab.total_info - ba.total_info).abs())
}

/// A classical joint distribution over `(a_i, b_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointTable {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    /// Row-major, `rows x cols`.
    entries: Vec<Vec<f64>>,
}

impl JointTable {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self> {
        if entries.len() != row_labels.len() || entries.iter().any(|r| r.len() != col_labels.len()) {
            return Err(Error::Invalid(format!(
                "joint table must be {}x{}",
                row_labels.len(),
                col_labels.len()
            )));
        }
        // validates non-negativity and total 1
        ProbDist::new(entries.concat())?;
        Ok(Self {
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn from_product(a: &ProbDist, b: &ProbDist) -> Self {
        let entries = a
            .probs()
            .iter()
            .map(|&x| b.probs().iter().map(|&y| x * y).collect())
            .collect();
        Self::new(
            (0..a.len()).map(|i| format!("a{i}")).collect(),
            (0..b.len()).map(|j| format!("b{j}")).collect(),
            entries,
        )
        .expect("product of distributions is normalized")
    }

    pub fn transposed(&self) -> Self {
        let entries = (0..self.col_labels.len())
            .map(|j| self.entries.iter().map(|r| r[j]).collect())
            .collect();
        Self {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
        }
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn row_marginal(&self) -> ProbDist {
        ProbDist::new(self.entries.iter().map(|r| r.iter().sum()).collect())
            .and_then(|d| d.with_labels(self.row_labels.clone()))
            .expect("marginal of a normalized table")
    }

    /// Chain "ask the row question, then the column question".
    fn chain<M: InfoMeasure + ?Sized>(&self, measure: &M) -> Result<SequentialReport> {
        let marginal = self.row_marginal();
        let mut branches = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            let pi = marginal.get(i);
            if pi <= ZERO_BRANCH {
                continue;
            }
            let distribution = ProbDist::from_weights(row)?.with_labels(self.col_labels.clone())?;
            branches.push(Branch {
                label: self.row_labels[i].clone(),
                probability: pi,
                info: measure.info(&distribution),
                distribution,
            });
        }
        Ok(SequentialReport::assemble(measure.info(&marginal), branches))
    }
}

/// Chain reports for both question orders of a classical joint table:
/// rows first, then columns first.
pub fn classical_joint_info<M: InfoMeasure + ?Sized>(
    joint: &JointTable,
    measure: &M,
) -> Result<(SequentialReport, SequentialReport)> {
    Ok((joint.chain(measure)?, joint.transposed().chain(measure)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{quadratic_info, shannon, MeasureKind};
    use crate::state::bloch_state;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn z_up() -> DensityMatrix {
        PureState::basis(2, 0).projector()
    }

    fn h2(p: f64) -> f64 {
        shannon(&ProbDist::new(vec![p, 1.0 - p]).unwrap())
    }

    #[test]
    fn basis_validation() {
        let bad = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        assert!(matches!(Basis::unlabelled(bad, ""), Err(Error::NotOrthonormal { .. })));
        assert!(matches!(
            Basis::new(Basis::spin_x().vectors().to_vec(), vec!["a".into()]),
            Err(Error::LabelMismatch { .. })
        ));
        for b in [Basis::spin_x(), Basis::spin_y(), Basis::spin_z(), Basis::tilt(0.7)] {
            assert_eq!(b.dim(), 2);
        }
    }

    #[test]
    fn outcome_distribution_examples() {
        let p = outcome_distribution(&z_up(), &Basis::spin_z()).unwrap();
        assert_eq!(p.probs(), &[1.0, 0.0]);
        let p = outcome_distribution(&z_up(), &Basis::spin_x()).unwrap();
        assert_abs_diff_eq!(p.get(0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(shannon(&p), 1.0, epsilon = 1e-15);
        let p = outcome_distribution(&bloch_state(PI / 3.0, 0.0).projector(), &Basis::spin_z()).unwrap();
        assert_abs_diff_eq!(p.get(0), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(p.get(1), 0.25, epsilon = 1e-15);
        assert_eq!(p.labels().unwrap(), &["z+".to_string(), "z-".to_string()]);
    }

    #[test]
    fn outcome_distribution_dim_mismatch() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(
            outcome_distribution(&rho, &Basis::spin_z()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn posterior_examples() {
        let post = posterior_state(&z_up(), &Basis::spin_z(), 0).unwrap();
        assert!(post.matrix().max_abs_diff(z_up().matrix()) < 1e-15);

        let post = posterior_state(&z_up(), &Basis::spin_x(), 0).unwrap();
        let x_plus = PureState::new(Basis::spin_x().vector(0).to_vec()).unwrap().projector();
        assert!(post.matrix().max_abs_diff(x_plus.matrix()) < 1e-15);

        let mixed = DensityMatrix::maximally_mixed(3);
        let basis = Basis::computational(3);
        for i in 0..3 {
            let post = posterior_state(&mixed, &basis, i).unwrap();
            let expected = PureState::basis(3, i).projector();
            assert!(post.matrix().max_abs_diff(expected.matrix()) < 1e-15);
        }
    }

    #[test]
    fn posterior_zero_probability() {
        assert!(matches!(
            posterior_state(&z_up(), &Basis::spin_z(), 1),
            Err(Error::ZeroProbabilityOutcome { outcome: 1 })
        ));
        assert!(matches!(
            posterior_state(&z_up(), &Basis::spin_z(), 2),
            Err(Error::OutcomeOutOfRange { .. })
        ));
    }

    #[test]
    fn chain_x_then_tilt() {
        let alpha = 0.9;
        let r = sequential_info(&z_up(), &Basis::spin_x(), &Basis::tilt(alpha), &MeasureKind::Shannon).unwrap();
        assert_abs_diff_eq!(r.first_info, 1.0, epsilon = 1e-12);
        let c2 = (PI / 4.0 - alpha / 2.0).cos().powi(2);
        let expected = h2(c2);
        assert_eq!(r.per_branch.len(), 2);
        for b in &r.per_branch {
            let p = b.distribution.get(0);
            assert!((p - c2).abs() < 1e-12 || (p - (1.0 - c2)).abs() < 1e-12);
            assert_abs_diff_eq!(b.info, expected, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(r.conditional_info, expected, epsilon = 1e-12);
    }

    #[test]
    fn chain_tilt_then_x() {
        let alpha = 0.9;
        let r = sequential_info(&z_up(), &Basis::tilt(alpha), &Basis::spin_x(), &MeasureKind::Shannon).unwrap();
        assert_abs_diff_eq!(r.first_info, h2((alpha / 2.0).cos().powi(2)), epsilon = 1e-12);
    }

    #[test]
    fn repeated_measurement_gives_nothing_new() {
        let r = sequential_info(&z_up(), &Basis::spin_z(), &Basis::spin_z(), &MeasureKind::Shannon).unwrap();
        assert_eq!(r.first_info, 0.0);
        assert_eq!(r.conditional_info, 0.0);
        assert_eq!(r.per_branch.len(), 1);
    }

    #[test]
    fn asymmetry_examples() {
        let s = MeasureKind::Shannon;
        assert_eq!(order_asymmetry(&z_up(), &Basis::spin_z(), &Basis::spin_z(), &s).unwrap(), 0.0);

        let alpha = 1e-6;
        let a = order_asymmetry(&z_up(), &Basis::spin_x(), &Basis::tilt(alpha), &s).unwrap();
        assert_abs_diff_eq!(a, 1.0 - h2((alpha / 2.0).cos().powi(2)), epsilon = 1e-12);
        assert!(a > 0.999);

        // maximally mixed: both orders give 1 + 1 (evaluated chain by chain)
        let mixed = DensityMatrix::maximally_mixed(2);
        let ab = sequential_info(&mixed, &Basis::spin_x(), &Basis::tilt(0.4), &s).unwrap();
        let ba = sequential_info(&mixed, &Basis::tilt(0.4), &Basis::spin_x(), &s).unwrap();
        assert_abs_diff_eq!(ab.first_info, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ba.first_info, 1.0, epsilon = 1e-12);
        assert!(order_asymmetry(&mixed, &Basis::spin_x(), &Basis::tilt(0.4), &s).unwrap() < 1e-12);
    }

    #[test]
    fn balls_table_both_orders() {
        let t = JointTable::new(
            vec!["black".into(), "white".into()],
            vec!["plastic".into(), "wooden".into()],
            vec![vec![0.5, 0.0], vec![0.25, 0.25]],
        )
        .unwrap();
        let (a, b) = classical_joint_info(&t, &MeasureKind::Shannon).unwrap();
        assert_abs_diff_eq!(a.total_info, 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(b.total_info, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn product_table_is_independent() {
        let pa = ProbDist::new(vec![0.2, 0.8]).unwrap();
        let pb = ProbDist::new(vec![0.1, 0.3, 0.6]).unwrap();
        let t = JointTable::from_product(&pa, &pb);
        let (a, b) = classical_joint_info(&t, &MeasureKind::Shannon).unwrap();
        assert_abs_diff_eq!(a.conditional_info, shannon(&pb), epsilon = 1e-12);
        assert_abs_diff_eq!(b.conditional_info, shannon(&pa), epsilon = 1e-12);
        assert!((a.total_info - b.total_info).abs() < 1e-12);
    }

    #[test]
    fn correlated_table() {
        let t = JointTable::new(
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
        )
        .unwrap();
        let (a, _) = classical_joint_info(&t, &MeasureKind::Shannon).unwrap();
        assert_eq!(a.total_info, 1.0);
        assert_eq!(a.conditional_info, 0.0);
    }

    #[test]
    fn joint_table_validation() {
        let err = JointTable::new(
            vec!["a".into()],
            vec!["b".into(), "c".into()],
            vec![vec![0.5, 0.4]],
        );
        assert!(matches!(err, Err(Error::ProbabilitiesNotNormalized { .. })));
    }

    #[test]
    fn quadratic_chain_is_pluggable() {
        let r = sequential_info(&z_up(), &Basis::spin_z(), &Basis::spin_x(), &MeasureKind::Quadratic).unwrap();
        assert_abs_diff_eq!(r.first_info, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.conditional_info, 0.0, epsilon = 1e-15);
        let custom = |p: &ProbDist| quadratic_info(p) * 2.0;
        let r2 = sequential_info(&z_up(), &Basis::spin_z(), &Basis::spin_x(), &custom).unwrap();
        assert_abs_diff_eq!(r2.first_info, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn report_json_roundtrip() {
        let r = sequential_info(&z_up(), &Basis::spin_x(), &Basis::tilt(0.3), &MeasureKind::Shannon).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"first_info\"") && s.contains("\"per_branch\""));
        assert_eq!(serde_json::from_str::<SequentialReport>(&s).unwrap(), r);
    }
}

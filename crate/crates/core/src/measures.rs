//! Information functionals over finite probability distributions.
//!
//! All logarithms are base 2, and `0 log 0 = 0`.
//!
//! | measure      | value                                   |
//! |--------------|-----------------------------------------|
//! | Shannon      | `-sum p_i log2 p_i`                     |
//! | quadratic    | `sum (p_i - 1/n)^2`                     |
//! | Tsallis(a)   | `(sum p_i^a - 1) / (1 - a)`             |
//! | Renyi(a)     | `log2(sum p_i^a) / (1 - a)`             |
//! | HLP(a)       | `(sum p_i^a)^(a - 1)`                   |
//!
//! The HLP exponent is `a - 1`, not the `1 / (1 - a)` of the usual power
//! mean; with `a = 2` it is the collision probability `sum p_i^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries may stray this far outside `[0, 1]` before being clamped.
pub const PROB_ENTRY_SLACK: f64 = 1e-12;
/// Allowed deviation of the total from 1.
pub const PROB_SUM_TOL: f64 = 1e-9;

/// A validated probability vector, optionally labelled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProbDist")]
pub struct ProbDist {
    probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawProbDist {
    probs: Vec<f64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawProbDist> for ProbDist {
    type Error = Error;

    fn try_from(raw: RawProbDist) -> Result<Self> {
        let dist = ProbDist::new(raw.probs)?;
        match raw.labels {
            Some(labels) => dist.with_labels(labels),
            None => Ok(dist),
        }
    }
}

impl ProbDist {
    /// Validate and clamp: every entry within `[-1e-12, 1 + 1e-12]`, total
    /// within `1e-9` of 1.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut probs = probs;
        for (index, p) in probs.iter_mut().enumerate() {
            let value = *p;
            if !value.is_finite() || !(-PROB_ENTRY_SLACK..=1.0 + PROB_ENTRY_SLACK).contains(&value) {
                return Err(Error::InvalidProbability { index, value });
            }
            *p = value.clamp(0.0, 1.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::ProbabilitiesNotNormalized { sum });
        }
        Ok(Self { probs, labels: None })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            probs: vec![1.0 / n as f64; n],
            labels: None,
        }
    }

    /// Normalize non-negative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if total.is_nan() || total <= 0.0 || !total.is_finite() {
            return Err(Error::ProbabilitiesNotNormalized { sum: total });
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    /// Parse `"0.5,0.25,0.25"`.
    pub fn parse(text: &str) -> Result<Self> {
        let probs = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Invalid(format!("cannot parse probability {:?}", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(probs)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.probs.len() {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                outcomes: self.probs.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }
}

/// Anything that maps a distribution to an amount of information.
///
/// Implemented for [`MeasureKind`] and for any `Fn(&ProbDist) -> f64`, so
/// ad-hoc functionals can be passed to the measurement-chain machinery.
pub trait InfoMeasure {
    fn info(&self, p: &ProbDist) -> f64;
}

impl<F: Fn(&ProbDist) -> f64> InfoMeasure for F {
    fn info(&self, p: &ProbDist) -> f64 {
        self(p)
    }
}

/// The built-in information functionals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "alpha", rename_all = "lowercase")]
pub enum MeasureKind {
    Shannon,
    Quadratic,
    Tsallis(f64),
    Renyi(f64),
    Hlp(f64),
}

impl MeasureKind {
    pub fn tsallis(alpha: f64) -> Result<Self> {
        check_alpha(alpha).map(|_| Self::Tsallis(alpha))
    }

    pub fn renyi(alpha: f64) -> Result<Self> {
        check_alpha(alpha).map(|_| Self::Renyi(alpha))
    }

    pub fn hlp(alpha: f64) -> Result<Self> {
        check_alpha(alpha).map(|_| Self::Hlp(alpha))
    }

    /// Look up a measure by name (`shannon`, `quadratic`, `tsallis`, `renyi`, `hlp`).
    pub fn from_name(name: &str, alpha: Option<f64>) -> Result<Self> {
        let need_alpha = || {
            alpha.ok_or_else(|| Error::Invalid(format!("measure {name} requires --alpha")))
        };
        match name.to_ascii_lowercase().as_str() {
            "shannon" => Ok(Self::Shannon),
            "quadratic" => Ok(Self::Quadratic),
            "tsallis" => Self::tsallis(need_alpha()?),
            "renyi" => Self::renyi(need_alpha()?),
            "hlp" => Self::hlp(need_alpha()?),
            other => Err(Error::Invalid(format!("unknown measure {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Shannon => "shannon",
            Self::Quadratic => "quadratic",
            Self::Tsallis(_) => "tsallis",
            Self::Renyi(_) => "renyi",
            Self::Hlp(_) => "hlp",
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Self::Tsallis(a) | Self::Renyi(a) | Self::Hlp(a) => Some(a),
            _ => None,
        }
    }

    /// Evaluate; parameterized variants built directly (bypassing the
    /// checked constructors) with a bad alpha yield `BadAlpha`.
    pub fn evaluate(&self, p: &ProbDist) -> Result<f64> {
        match *self {
            Self::Shannon => Ok(shannon(p)),
            Self::Quadratic => Ok(quadratic_info(p)),
            _ => family_info(p, *self),
        }
    }
}

impl InfoMeasure for MeasureKind {
    /// Panics on an invalid alpha; use the checked constructors.
    fn info(&self, p: &ProbDist) -> f64 {
        self.evaluate(p).expect("invalid alpha in MeasureKind")
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha != 1.0 {
        Ok(())
    } else {
        Err(Error::BadAlpha { alpha })
    }
}

/// Shannon information in bits.
pub fn shannon(p: &ProbDist) -> f64 {
    p.probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `sum_i (p_i - 1/n)^2`; zero for the uniform distribution, `(n-1)/n` for a
/// deterministic one.
pub fn quadratic_info(p: &ProbDist) -> f64 {
    let n = p.len() as f64;
    p.probs().iter().map(|&x| (x - 1.0 / n).powi(2)).sum()
}

/// Quadratic measure rescaled by `(n/(n-1)) log2 n`, so that a deterministic
/// outcome over `n = 2^k` outcomes is worth `k`.
///
/// The rescaling constant is chosen to make the maximum equal `log2 n`; it
/// is a convention rather than a derived quantity. Returns 0 for `n = 1`.
pub fn quadratic_info_normalized(p: &ProbDist) -> f64 {
    let n = p.len() as f64;
    if p.len() < 2 {
        return 0.0;
    }
    quadratic_info(p) * n / (n - 1.0) * n.log2()
}

/// One of the parameterized families (Tsallis, Renyi, HLP); Shannon and
/// quadratic are also accepted and dispatched.
pub fn family_info(p: &ProbDist, kind: MeasureKind) -> Result<f64> {
    let power_sum = |a: f64| -> f64 {
        p.probs().iter().filter(|&&x| x > 0.0).map(|&x| x.powf(a)).sum()
    };
    match kind {
        MeasureKind::Shannon => Ok(shannon(p)),
        MeasureKind::Quadratic => Ok(quadratic_info(p)),
        MeasureKind::Tsallis(a) => {
            check_alpha(a)?;
            Ok((power_sum(a) - 1.0) / (1.0 - a))
        }
        MeasureKind::Renyi(a) => {
            check_alpha(a)?;
            Ok(power_sum(a).log2() / (1.0 - a))
        }
        MeasureKind::Hlp(a) => {
            check_alpha(a)?;
            Ok(power_sum(a).powf(a - 1.0))
        }
    }
}

/// Both sides of the grouping (recursion) rule for one split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Test the grouping rule
/// `H(p_1..p_{n-1}, q1, q2) = H(p_1..p_n) + p_n H(q1/p_n, q2/p_n)`
/// where the last entry `p_n` of `p` is split into `q1 + q2`.
pub fn faddeev_check<M: InfoMeasure + ?Sized>(
    measure: &M,
    p: &ProbDist,
    split: (f64, f64),
    tol: f64,
) -> Result<CheckResult> {
    let (q1, q2) = split;
    let last = p.get(p.len() - 1);
    if !(q1 >= 0.0 && q2 >= 0.0) || (q1 + q2 - last).abs() > 1e-12 || last <= 0.0 {
        return Err(Error::BadSplit {
            sum: q1 + q2,
            target: last,
        });
    }
    let mut refined = p.probs()[..p.len() - 1].to_vec();
    refined.extend([q1, q2]);
    let lhs = measure.info(&ProbDist::new(refined)?);
    let sub = ProbDist::new(vec![q1 / last, q2 / last])?;
    let rhs = measure.info(p) + last * measure.info(&sub);
    Ok(CheckResult {
        lhs,
        rhs,
        holds: (lhs - rhs).abs() < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn d(p: &[f64]) -> ProbDist {
        ProbDist::new(p.to_vec()).unwrap()
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon(&d(&[0.5, 0.5])), 1.0);
        assert_eq!(shannon(&d(&[1.0, 0.0])), 0.0);
        let p = d(&[0.5, 1.0 / 3.0, 1.0 / 6.0]);
        let grouped = 1.0 + 0.5 * shannon(&d(&[2.0 / 3.0, 1.0 / 3.0]));
        assert_abs_diff_eq!(shannon(&p), grouped, epsilon = 1e-15);
        assert_abs_diff_eq!(shannon(&p), 1.4591, epsilon = 1e-4);
    }

    #[test]
    fn quadratic_examples() {
        for n in 1..8 {
            assert_abs_diff_eq!(quadratic_info(&ProbDist::uniform(n)), 0.0, epsilon = 1e-15);
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            assert_abs_diff_eq!(quadratic_info(&d(&v)), (n as f64 - 1.0) / n as f64, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(quadratic_info(&d(&[0.75, 0.25])), 0.125);
    }

    #[test]
    fn normalized_quadratic_reaches_k_bits() {
        assert_abs_diff_eq!(quadratic_info_normalized(&d(&[1.0, 0.0, 0.0, 0.0])), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(quadratic_info_normalized(&d(&[0.0, 1.0])), 1.0, epsilon = 1e-15);
        assert_eq!(quadratic_info_normalized(&ProbDist::uniform(8)), 0.0);
    }

    #[test]
    fn family_examples() {
        let p = d(&[0.5, 1.0 / 3.0, 1.0 / 6.0]);
        let r = family_info(&p, MeasureKind::renyi(1.0 + 1e-6).unwrap()).unwrap();
        assert_abs_diff_eq!(r, shannon(&p), epsilon = 1e-4);

        let q = d(&[0.75, 0.25]);
        let t = family_info(&q, MeasureKind::tsallis(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(t, 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(quadratic_info(&q), 1.0 - 0.5 - t, epsilon = 1e-15);

        let h = family_info(&d(&[0.5, 0.5]), MeasureKind::hlp(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(h, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn bad_alpha() {
        for a in [0.0, -1.0, 1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(MeasureKind::tsallis(a), Err(Error::BadAlpha { .. })));
            assert!(matches!(
                family_info(&ProbDist::uniform(2), MeasureKind::Renyi(a)),
                Err(Error::BadAlpha { .. })
            ));
        }
    }

    #[test]
    fn distribution_validation() {
        assert!(matches!(ProbDist::new(vec![]), Err(Error::EmptyDistribution)));
        assert!(matches!(
            ProbDist::new(vec![0.5, 0.6]),
            Err(Error::ProbabilitiesNotNormalized { .. })
        ));
        assert!(matches!(
            ProbDist::new(vec![1.1, -0.1]),
            Err(Error::InvalidProbability { index: 0, .. })
        ));
        let clamped = ProbDist::new(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(clamped.probs(), &[1.0, 0.0]);
        assert!(ProbDist::parse("0.5, 0.3333333333,0.1666666667").is_ok());
        assert!(ProbDist::parse("0.5,x").is_err());
        assert!(matches!(
            ProbDist::uniform(2).with_labels(vec!["a".into()]),
            Err(Error::LabelMismatch { .. })
        ));
    }

    #[test]
    fn faddeev_shannon_holds() {
        let r = faddeev_check(&MeasureKind::Shannon, &d(&[0.5, 0.5]), (1.0 / 3.0, 1.0 / 6.0), 1e-12).unwrap();
        assert!(r.holds);
        assert_abs_diff_eq!(r.lhs, shannon(&d(&[0.5, 1.0 / 3.0, 1.0 / 6.0])), epsilon = 1e-15);
        assert_abs_diff_eq!(r.rhs, 1.0 + 0.5 * shannon(&d(&[2.0 / 3.0, 1.0 / 3.0])), epsilon = 1e-15);
    }

    #[test]
    fn faddeev_quadratic_fails() {
        let r = faddeev_check(&MeasureKind::Quadratic, &d(&[0.5, 0.5]), (1.0 / 3.0, 1.0 / 6.0), 1e-12).unwrap();
        assert!(!r.holds);
        // (1/2-1/3)^2 + (1/6-1/3)^2 and (1/2)((2/3-1/2)^2 + (1/3-1/2)^2)
        assert_abs_diff_eq!(r.lhs, 1.0 / 18.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.rhs, 1.0 / 36.0, epsilon = 1e-15);
    }

    #[test]
    fn faddeev_degenerate_split() {
        let p = d(&[0.3, 0.7]);
        let r = faddeev_check(&MeasureKind::Shannon, &p, (0.7, 0.0), 1e-12).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn faddeev_bad_split() {
        let p = d(&[0.3, 0.7]);
        assert!(matches!(
            faddeev_check(&MeasureKind::Shannon, &p, (0.5, 0.5), 1e-12),
            Err(Error::BadSplit { .. })
        ));
        let zero_tail = d(&[1.0, 0.0]);
        assert!(faddeev_check(&MeasureKind::Shannon, &zero_tail, (0.0, 0.0), 1e-12).is_err());
    }

    #[test]
    fn closures_are_measures() {
        let max_prob = |p: &ProbDist| p.probs().iter().cloned().fold(0.0, f64::max);
        assert_eq!(max_prob.info(&d(&[0.2, 0.8])), 0.8);
    }

    #[test]
    fn measure_kind_serde() {
        let k = MeasureKind::Renyi(2.0);
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"kind":"renyi","alpha":2.0}"#);
        assert_eq!(serde_json::from_str::<MeasureKind>(&s).unwrap(), k);
        assert_eq!(serde_json::to_string(&MeasureKind::Shannon).unwrap(), r#"{"kind":"shannon"}"#);
    }

    #[test]
    fn prob_dist_serde_validates() {
        let p = ProbDist::uniform(2).with_labels(vec!["a".into(), "b".into()]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<ProbDist>(&s).unwrap(), p);
        assert!(serde_json::from_str::<ProbDist>(r#"{"probs":[0.5,0.6]}"#).is_err());
    }
}

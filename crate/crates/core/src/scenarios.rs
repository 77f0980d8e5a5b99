//! Reproducible worked experiments.
//!
//! Each scenario computes a set of quantities and compares them with
//! reference values. A reference is either a published value (quoted to
//! the precision it was published at) or a derived value obtained by an
//! independent route. A scenario passes only if every comparison passes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{random_unitary, ComplexMatrix};
use crate::measurement::{classical_joint_info, outcome_distribution, posterior_state, sequential_info, Basis, JointTable};
use crate::measures::{shannon, MeasureKind, ProbDist};
use crate::mub::{construct_mubs, i_total_closed_form, total_information};
use crate::rng::derive_seed;
use crate::state::{evolve, purity, von_neumann_entropy, DensityMatrix, PureState};

/// Where a reference value comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "note", rename_all = "lowercase")]
pub enum Provenance {
    /// A value stated in the published account of the experiment.
    Published(String),
    /// A value obtained by an independent computation.
    Derived(String),
}

impl Provenance {
    pub fn note(&self) -> &str {
        match self {
            Self::Published(s) | Self::Derived(s) => s,
        }
    }
}

/// One computed quantity and its comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub label: String,
    pub computed: f64,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub provenance: Option<Provenance>,
    pub pass: bool,
}

impl Quantity {
    /// `|computed - expected| <= tolerance`.
    pub fn compare(label: impl Into<String>, computed: f64, expected: f64, tolerance: f64, provenance: Provenance) -> Self {
        Self {
            label: label.into(),
            computed,
            expected: Some(expected),
            tolerance: Some(tolerance),
            provenance: Some(provenance),
            pass: (computed - expected).abs() <= tolerance,
        }
    }

    /// `computed <= bound`.
    pub fn at_most(label: impl Into<String>, computed: f64, bound: f64, provenance: Provenance) -> Self {
        Self {
            label: label.into(),
            computed,
            expected: Some(bound),
            tolerance: None,
            provenance: Some(provenance),
            pass: computed <= bound,
        }
    }

    /// `computed > bound`.
    pub fn above(label: impl Into<String>, computed: f64, bound: f64, provenance: Provenance) -> Self {
        Self {
            label: label.into(),
            computed,
            expected: Some(bound),
            tolerance: None,
            provenance: Some(provenance),
            pass: computed > bound,
        }
    }

    /// A boolean claim, recorded as 1 (true) or 0 (false) against an expected 1.
    pub fn flag(label: impl Into<String>, holds: bool, provenance: Provenance) -> Self {
        Self {
            label: label.into(),
            computed: if holds { 1.0 } else { 0.0 },
            expected: Some(1.0),
            tolerance: Some(0.0),
            provenance: Some(provenance),
            pass: holds,
        }
    }

    /// A reported value with nothing to compare against.
    pub fn info(label: impl Into<String>, computed: f64) -> Self {
        Self {
            label: label.into(),
            computed,
            expected: None,
            tolerance: None,
            provenance: None,
            pass: true,
        }
    }
}

/// The outcome of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub quantities: Vec<Quantity>,
    pub overall: bool,
}

impl ScenarioReport {
    pub fn new(name: impl Into<String>, quantities: Vec<Quantity>) -> Self {
        let overall = quantities.iter().all(|q| q.pass);
        Self {
            name: name.into(),
            quantities,
            overall,
        }
    }

    pub fn get(&self, label: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.label == label)
    }

    /// Computed value for `label`; panics if absent.
    pub fn value(&self, label: &str) -> f64 {
        self.get(label)
            .unwrap_or_else(|| panic!("no quantity {label:?} in {}", self.name))
            .computed
    }

    /// CSV rows `scenario,label,computed,expected,pass` (with header).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scenario,label,computed,expected,pass\n");
        for q in &self.quantities {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_field(&self.name),
                csv_field(&q.label),
                q.computed,
                q.expected.map(|e| e.to_string()).unwrap_or_default(),
                q.pass
            ));
        }
        out
    }

    /// Aligned text table; values printed with `precision` decimals.
    pub fn to_text(&self, precision: usize) -> String {
        let width = self.quantities.iter().map(|q| q.label.chars().count()).max().unwrap_or(0);
        let mut out = format!("scenario: {}\n", self.name);
        for q in &self.quantities {
            let pad = width - q.label.chars().count();
            let expected = q.expected.map_or_else(|| "-".to_string(), |e| format!("{e:.precision$}"));
            out.push_str(&format!(
                "  {}{}  {:>w$.precision$}  {:>w$}  {}  {}\n",
                q.label,
                " ".repeat(pad),
                q.computed,
                expected,
                if q.pass { "ok  " } else { "FAIL" },
                q.provenance.as_ref().map_or("", Provenance::note),
                w = precision + 4,
            ));
        }
        out.push_str(&format!("overall: {}\n", if self.overall { "pass" } else { "FAIL" }));
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn h2(p: f64) -> f64 {
    shannon(&ProbDist::new(vec![p, 1.0 - p]).expect("binary distribution"))
}

const EXACT: f64 = 1e-12;

/// Polarizer cascade on unpolarized light.
///
/// Photons are qubits in the state `I/2`; a filter is a projective
/// measurement in its own basis followed by keeping only the "pass" branch.
/// A is polarization at 45 degrees, B is horizontal polarization.
pub fn run_filter_cascade() -> ScenarioReport {
    let vertical = Basis::spin_z();
    let horizontal = vertical.permuted(&[1, 0]).expect("swap");
    let diagonal = Basis::spin_x();
    let source = DensityMatrix::maximally_mixed(2);

    let pass = |rho: &DensityMatrix, filter: &Basis| -> (f64, Option<DensityMatrix>) {
        let p = outcome_distribution(rho, filter).expect("qubit").get(0);
        (p, posterior_state(rho, filter, 0).ok())
    };

    let (t_vert, after_vert) = pass(&source, &vertical);
    let after_vert = after_vert.expect("half the photons pass a polarizer");
    let (t_crossed, _) = pass(&after_vert, &horizontal);
    let (t_diag, after_diag) = pass(&after_vert, &diagonal);
    let after_diag = after_diag.expect("diagonal filter passes half");
    let (t_last, _) = pass(&after_diag, &horizontal);

    let h_b = shannon(&outcome_distribution(&after_vert, &horizontal).expect("qubit"));
    let h_b_given_a = shannon(&outcome_distribution(&after_diag, &horizontal).expect("qubit"));

    ScenarioReport::new(
        "filters",
        vec![
            Quantity::compare(
                "transmitted after vertical filter",
                t_vert,
                0.5,
                EXACT,
                Provenance::Published("unpolarized light loses half its intensity at a polarizer".into()),
            ),
            Quantity::compare(
                "transmitted after vertical then horizontal",
                t_vert * t_crossed,
                0.0,
                EXACT,
                Provenance::Published("crossed polarizers: no photons reach the detector".into()),
            ),
            Quantity::compare(
                "detected with 45-degree filter inserted (fraction of post-vertical beam)",
                t_diag * t_last,
                0.25,
                EXACT,
                Provenance::Published("a 45-degree filter between crossed polarizers passes 1/4 of the post-vertical beam".into()),
            ),
            Quantity::compare(
                "H(B) after vertical filter",
                h_b,
                0.0,
                EXACT,
                Provenance::Published("horizontal polarization is certain behind the vertical filter".into()),
            ),
            Quantity::compare(
                "H(B|A) on transmitted subensemble",
                h_b_given_a,
                1.0,
                EXACT,
                Provenance::Published("behind the 45-degree filter horizontal polarization is a fair coin".into()),
            ),
            Quantity::flag(
                "H(B) < H(B|A) (conditioning increased uncertainty)",
                h_b < h_b_given_a,
                Provenance::Published("knowledge of A must never increase the uncertainty of B; violated here".into()),
            ),
        ],
    )
}

/// Two spin measurements on `|z+>` in both orders: the tilted axis at angle
/// `alpha` from z (in the x-z plane) and the x axis.
pub fn run_spin_order(alpha: f64) -> ScenarioReport {
    let rho = PureState::basis(2, 0).projector();
    let tilt = Basis::tilt(alpha);
    let x = Basis::spin_x();
    let m = MeasureKind::Shannon;
    let a = sequential_info(&rho, &tilt, &x, &m).expect("qubit chain");
    let b = sequential_info(&rho, &x, &tilt, &m).expect("qubit chain");

    let first_a_expected = h2((alpha / 2.0).cos().powi(2));
    let conditional_expected = h2((PI / 4.0 - alpha / 2.0).cos().powi(2));
    let asymmetry = (a.total_info - b.total_info).abs();

    ScenarioReport::new(
        "spin-order",
        vec![
            Quantity::info("alpha", alpha),
            Quantity::compare(
                "first info (a: tilt then x)",
                a.first_info,
                first_a_expected,
                EXACT,
                Provenance::Published("H(cos^2 a/2, sin^2 a/2)".into()),
            ),
            Quantity::compare(
                "first info (b: x then tilt)",
                b.first_info,
                1.0,
                EXACT,
                Provenance::Published("H(1/2, 1/2) = 1".into()),
            ),
            Quantity::compare(
                "conditional info (a)",
                a.conditional_info,
                conditional_expected,
                EXACT,
                Provenance::Published("H(cos^2(pi/4 - a/2), sin^2(pi/4 - a/2))".into()),
            ),
            Quantity::compare(
                "conditional info (b)",
                b.conditional_info,
                conditional_expected,
                EXACT,
                Provenance::Published("H(cos^2(pi/4 - a/2), sin^2(pi/4 - a/2))".into()),
            ),
            Quantity::compare(
                "conditional terms agree",
                (a.conditional_info - b.conditional_info).abs(),
                0.0,
                EXACT,
                Provenance::Published("equal conditional portion in both orders".into()),
            ),
            Quantity::info("total (a)", a.total_info),
            Quantity::info("total (b)", b.total_info),
            Quantity::compare(
                "order asymmetry",
                asymmetry,
                1.0 - first_a_expected,
                EXACT,
                Provenance::Derived("difference of the two first-measurement terms".into()),
            ),
        ],
    )
}

/// The joint table of the balls example: colour {black, white} by
/// composition {plastic, wooden}.
pub fn balls_table() -> JointTable {
    JointTable::new(
        vec!["black".into(), "white".into()],
        vec!["plastic".into(), "wooden".into()],
        vec![vec![0.5, 0.0], vec![0.25, 0.25]],
    )
    .expect("balls table is normalized")
}

/// Colour and composition of classical balls asked in both orders.
pub fn run_classical_balls() -> ScenarioReport {
    let (by_color, by_comp) = classical_joint_info(&balls_table(), &MeasureKind::Shannon).expect("valid table");
    let branch = |r: &crate::measurement::SequentialReport, label: &str| {
        r.per_branch
            .iter()
            .find(|b| b.label == label)
            .map(|b| b.info)
            .expect("branch present")
    };
    let published = |s: &str| Provenance::Published(s.into());
    let two_dp = 0.005;
    ScenarioReport::new(
        "balls",
        vec![
            Quantity::compare("H(color)", by_color.first_info, 1.00, two_dp, published("1 bit")),
            Quantity::compare("H_bl(comp.)", branch(&by_color, "black"), 0.00, two_dp, published("0 bits")),
            Quantity::compare("H_wh(comp.)", branch(&by_color, "white"), 1.00, two_dp, published("1 bit")),
            Quantity::compare("H(comp.)", by_comp.first_info, 0.81, two_dp, published("0.81 bits")),
            Quantity::compare("H_wo(color)", branch(&by_comp, "wooden"), 0.00, two_dp, published("0 bits")),
            Quantity::compare("H_pl(color)", branch(&by_comp, "plastic"), 0.92, two_dp, published("0.92 bits")),
            Quantity::compare("total (color first)", by_color.total_info, 1.5, EXACT, published("total 1.5 bits")),
            Quantity::compare("total (composition first)", by_comp.total_info, 1.5, EXACT, published("total 1.5 bits")),
        ],
    )
}

fn ensure_mub_dim(dim: usize) -> Result<()> {
    construct_mubs(dim).map(|_| ())
}

/// Unitary invariance of the quadratic total information, and the lack of
/// it for the Shannon total.
///
/// Trial `t` uses seeds derived from `(seed, t)`: a random state (pure on
/// even trials, full-rank mixed on odd ones), a random pure state and a
/// random unitary.
pub fn run_invariance_sweep(dim: usize, trials: usize, seed: u64) -> Result<ScenarioReport> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be >= 1".into()));
    }
    ensure_mub_dim(dim)?;
    let mubs = construct_mubs(dim)?;
    let n = dim as f64;

    let mut invariance_drift = 0.0f64;
    let mut identity_error = 0.0f64;
    let mut pure_i_error = 0.0f64;
    let mut h_min = f64::INFINITY;
    let mut h_max = f64::NEG_INFINITY;

    for t in 0..trials as u64 {
        let trial_seed = derive_seed(seed, t);
        let rho = if t % 2 == 0 {
            PureState::random(dim, derive_seed(trial_seed, 0)).projector()
        } else {
            DensityMatrix::random(dim, dim, derive_seed(trial_seed, 0))
        };
        let psi = PureState::random(dim, derive_seed(trial_seed, 1)).projector();
        let u = random_unitary(dim, derive_seed(trial_seed, 2));

        let evolved = evolve(&rho, &u)?;
        let before = total_information(&rho, &mubs, MeasureKind::Quadratic)?.total;
        let after = total_information(&evolved, &mubs, MeasureKind::Quadratic)?.total;
        let closed_before = i_total_closed_form(&rho);
        let closed_after = i_total_closed_form(&evolved);
        invariance_drift = invariance_drift
            .max((after - before).abs())
            .max((closed_after - closed_before).abs());
        identity_error = identity_error
            .max((before - closed_before).abs())
            .max((after - closed_after).abs());

        for pure in [psi.clone(), evolve(&psi, &u)?] {
            let q = total_information(&pure, &mubs, MeasureKind::Quadratic)?.total;
            pure_i_error = pure_i_error.max((q - (n - 1.0) / n).abs());
            let h = total_information(&pure, &mubs, MeasureKind::Shannon)?.total;
            h_min = h_min.min(h);
            h_max = h_max.max(h);
        }
    }

    let mixed = DensityMatrix::maximally_mixed(dim);
    let mixed_i = total_information(&mixed, &mubs, MeasureKind::Quadratic)?.total;
    let mixed_h = total_information(&mixed, &mubs, MeasureKind::Shannon)?.total;

    let derived = |s: &str| Provenance::Derived(s.into());
    Ok(ScenarioReport::new(
        "invariance",
        vec![
            Quantity::info("dim", n),
            Quantity::info("trials", trials as f64),
            Quantity::at_most(
                "max I_total drift under U",
                invariance_drift,
                1e-9,
                Provenance::Published("quadratic total information is invariant under unitaries".into()),
            ),
            Quantity::at_most(
                "max |MUB sum - (Tr rho^2 - 1/n)|",
                identity_error,
                1e-9,
                derived("closed form Tr rho^2 - 1/n"),
            ),
            Quantity::at_most(
                "max |I_total(pure) - (n-1)/n|",
                pure_i_error,
                1e-9,
                derived("purity 1 in the closed form"),
            ),
            Quantity::above(
                "H_total spread over pure states",
                h_max - h_min,
                0.05,
                Provenance::Published("Shannon total information depends on the state at fixed purity".into()),
            ),
            Quantity::compare("I_total(I/n)", mixed_i, 0.0, 1e-12, derived("uniform outcomes in every basis")),
            Quantity::compare(
                "H_total(I/n)",
                mixed_h,
                (n + 1.0) * n.log2(),
                1e-12,
                derived("(n + 1) log2 n for uniform outcomes"),
            ),
        ],
    ))
}

/// Apply `u` repeatedly to `rho0`; von Neumann entropy (the information of
/// the optimal experiment) and the quadratic total information must stay put.
pub fn run_conservation(rho0: &DensityMatrix, u: &ComplexMatrix, steps: usize) -> Result<ScenarioReport> {
    if steps == 0 {
        return Err(Error::Invalid("steps must be >= 1".into()));
    }
    let s0 = von_neumann_entropy(rho0);
    let i0 = i_total_closed_form(rho0);
    let mut rho = rho0.clone();
    let mut s_drift = 0.0f64;
    let mut i_drift = 0.0f64;
    let mut quantities = vec![
        Quantity::info("S(0)", s0),
        Quantity::info("I_total(0)", i0),
        Quantity::info("purity(0)", purity(rho0)),
    ];
    for k in 1..=steps {
        rho = evolve(&rho, u)?;
        let s = von_neumann_entropy(&rho);
        let i = i_total_closed_form(&rho);
        s_drift = s_drift.max((s - s0).abs());
        i_drift = i_drift.max((i - i0).abs());
        quantities.push(Quantity::compare(
            format!("S({k})"),
            s,
            s0,
            1e-9,
            Provenance::Derived("eigenvalues are unchanged by unitary evolution".into()),
        ));
        quantities.push(Quantity::compare(
            format!("I_total({k})"),
            i,
            i0,
            1e-9,
            Provenance::Derived("Tr rho^2 is unchanged by unitary evolution".into()),
        ));
    }
    quantities.push(Quantity::at_most(
        "max S drift",
        s_drift,
        1e-9,
        Provenance::Published("optimal-experiment information is conserved in time".into()),
    ));
    quantities.push(Quantity::at_most(
        "max I_total drift",
        i_drift,
        1e-9,
        Provenance::Published("quadratic total information is conserved in time".into()),
    ));
    Ok(ScenarioReport::new("conservation", quantities))
}

//! Information measures for quantum experiments.
//!
//! The crate models finite-dimensional quantum systems as density matrices,
//! measures them in orthonormal bases, and scores the outcome distributions
//! with a family of information measures (Shannon, quadratic, Tsallis, Rényi
//! and the Hardy-Littlewood-Pólya family). On top of that it provides
//! complete sets of mutually unbiased bases, the total information they
//! define, Huffman question trees for the classical coding picture, and a
//! handful of scripted scenarios with reference values.
//!
//! ```
//! use qinfo::{construct_mubs, total_information, DensityMatrix, MeasureKind, PureState};
//!
//! let rho = PureState::basis(2, 0).projector();
//! let mubs = construct_mubs(2)?;
//! let report = total_information(&rho, &mubs, MeasureKind::Quadratic)?;
//! assert!((report.total - 0.5).abs() < 1e-12);
//!
//! let mixed = DensityMatrix::maximally_mixed(2);
//! let report = total_information(&mixed, &mubs, MeasureKind::Quadratic)?;
//! assert!(report.total.abs() < 1e-12);
//! # Ok::<(), qinfo::Error>(())
//! ```
//!
//! All logarithms are base 2 and `0 log 0 = 0`. Random objects are drawn
//! from an explicit `u64` seed; see [`rng`].

pub mod coding;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod measures;
pub mod mub;
pub mod rng;
pub mod scenarios;
pub mod state;

pub use coding::{build_question_tree, exact_sequence_count, simulate_drawings, QuestionTree, SymbolSource};
pub use error::{Error, Result};
pub use linalg::{hermitian_eig, random_unitary, ComplexMatrix, Spectrum};
pub use measurement::{classical_joint_info, outcome_distribution, posterior_state, sequential_info, Basis, JointTable};
pub use measures::{faddeev_check, family_info, quadratic_info, shannon, InfoMeasure, MeasureKind, ProbDist};
pub use mub::{cached_mubs, construct_mubs, total_information, verify_mutually_unbiased, MubSet};
pub use num_complex::Complex64;
pub use scenarios::ScenarioReport;
pub use state::{evolve, purity, von_neumann_entropy, DensityMatrix, PureState, Tolerances};

// The guide's code blocks run as doc-tests so they cannot drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/measurement.md")]
    mod measurement {}
    #[doc = include_str!("../../../book/src/mub.md")]
    mod mub {}
    #[doc = include_str!("../../../book/src/coding.md")]
    mod coding {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Pure states and density matrices.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gaussian_complex, hermitian_eig, norm, ComplexMatrix, Spectrum};
use crate::rng::rng_from_seed;

/// Numerical tolerances used when validating values.
///
/// `structural` guards type invariants (Hermiticity, unit trace, unit norm,
/// orthonormality). `derived` is the tolerance for equalities that follow
/// from a computation, such as eigen-reconstruction or conservation laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub structural: f64,
    pub derived: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: 1e-10,
            derived: 1e-9,
        }
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(amplitudes, Tolerances::default().structural)
    }

    pub fn with_tolerance(amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Invalid("state vector must have dimension >= 1".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    /// Normalize an arbitrary non-zero vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm_sqr: n * n });
        }
        for z in amplitudes.iter_mut() {
            *z /= n;
        }
        Self::new(amplitudes)
    }

    /// Computational basis state `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    /// Uniformly random pure state (normalized complex Gaussian vector).
    pub fn random(dim: usize, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(&mut rng)).collect();
        Self::normalized(v).expect("Gaussian vector is non-zero")
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::outer(&self.amplitudes, &self.amplitudes))
            .expect("projector of a unit vector is a density matrix")
    }
}

/// Spin-1/2 state `cos(theta/2)|z+> + e^{i phi} sin(theta/2)|z->`.
pub fn bloch_state(theta: f64, phi: f64) -> PureState {
    let (s, c) = (theta / 2.0).sin_cos();
    PureState {
        amplitudes: vec![
            Complex64::new(c, 0.0),
            Complex64::from_polar(s, phi),
        ],
    }
}

/// A validated density matrix together with its spectrum.
///
/// Construction checks Hermiticity, unit trace and positivity, and keeps the
/// eigen-decomposition so entropy and eigenbasis queries are infallible.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, Tolerances::default())
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol.structural {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol.structural || trace.im.abs() > tol.structural {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let matrix = matrix.hermitian_part();
        let mut spectrum = hermitian_eig(&matrix, tol.structural)?;
        let min_eigenvalue = *spectrum.eigenvalues.last().expect("dim >= 1");
        if min_eigenvalue < -tol.structural {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        for w in spectrum.eigenvalues.iter_mut() {
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        Ok(Self { matrix, spectrum })
    }

    /// Diagonal density matrix `diag(w)`.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::diag(weights))
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::diagonal(&vec![1.0 / dim as f64; dim]).expect("I/n is a density matrix")
    }

    /// Random mixed state of the given rank: `G G^dag / Tr(G G^dag)` with `G`
    /// a `dim x rank` complex Gaussian matrix.
    pub fn random(dim: usize, rank: usize, seed: u64) -> Self {
        assert!(rank >= 1 && rank <= dim);
        let mut rng = rng_from_seed(seed);
        let mut g = ComplexMatrix::zeros(dim, rank);
        for i in 0..dim {
            for j in 0..rank {
                g[(i, j)] = gaussian_complex(&mut rng);
            }
        }
        let m = g.matmul(&g.adjoint());
        let tr = m.trace().re;
        Self::new(m.scale(Complex64::new(1.0 / tr, 0.0)))
            .expect("Wishart matrix normalizes to a density matrix")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Eigenvalues `w_i`, descending, clamped at zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// Eigenvectors ordered like [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|k| self.spectrum.eigenvector(k)).collect()
    }
}

/// `Tr rho^2`, computed as the squared Frobenius norm of a Hermitian matrix.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// `-sum_i w_i log2 w_i` over the eigenvalues, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `U rho U^dag`.
pub fn evolve(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    if u.rows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.rows(),
        });
    }
    let deviation = u.unitary_deviation();
    if deviation > Tolerances::default().structural {
        return Err(Error::NotUnitary { deviation });
    }
    DensityMatrix::new(u.matmul(&rho.matrix).matmul(&u.adjoint()))
}

/// Angle helper: `theta` values on `[0, pi]`, `steps` points, both ends included.
pub fn theta_grid(steps: usize) -> Vec<f64> {
    assert!(steps >= 2);
    (0..steps)
        .map(|k| PI * k as f64 / (steps - 1) as f64)
        .collect()
}

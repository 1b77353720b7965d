//! Complex Hermitian linear algebra: validated operators, spectral
//! decomposition with a deterministic eigenbasis, rank-one eigenprojectors,
//! and exact unitary propagators built from the spectrum.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum allowed entrywise deviation from `A = A*`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Relative gap (scaled by the largest |eigenvalue|) below which two
/// eigenvalues are treated as degenerate.
pub const SPECTRAL_GAP_TOL: f64 = 1e-9;

/// JSON wire form of a complex matrix: row-major real and imaginary parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// A validated Hermitian operator on C^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct HermitianOperator {
    dim: usize,
    entries: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Validates squareness and Hermitian symmetry within [`HERMITIAN_TOL`].
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let mut deviation = 0.0f64;
        for i in 0..rows {
            for j in i..rows {
                let d = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                deviation = deviation.max(d);
            }
        }
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITIAN_TOL,
            });
        }
        Ok(Self { dim: rows, entries })
    }

    /// Hermitian operator with the given real diagonal.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let entries = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        Self { dim: n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dim: n,
            entries: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("matrix JSON: {e}")))?;
        Self::try_from(raw)
    }
}

impl TryFrom<MatrixJson> for HermitianOperator {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let n = raw.dim;
        if raw.re.len() != n || raw.im.len() != n {
            return Err(Error::InvalidParameter(format!(
                "matrix JSON: expected {n} rows, got re:{} im:{}",
                raw.re.len(),
                raw.im.len()
            )));
        }
        for (i, (r, c)) in raw.re.iter().zip(raw.im.iter()).enumerate() {
            if r.len() != n || c.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "matrix JSON: row {i} has length re:{} im:{}, expected {n}",
                    r.len(),
                    c.len()
                )));
            }
        }
        let entries =
            DMatrix::from_fn(n, n, |i, j| Complex64::new(raw.re[i][j], raw.im[i][j]));
        Self::new(entries)
    }
}

impl From<HermitianOperator> for MatrixJson {
    fn from(op: HermitianOperator) -> Self {
        let n = op.dim;
        let re = (0..n)
            .map(|i| (0..n).map(|j| op.entries[(i, j)].re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..n).map(|j| op.entries[(i, j)].im).collect())
            .collect();
        MatrixJson { dim: n, re, im }
    }
}

/// Spectral decomposition of a Hermitian operator: ascending eigenvalues, a
/// deterministic orthonormal eigenbasis, and the partition of indices into
/// degeneracy classes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    eigenvalues: Vec<f64>,
    eigenbasis: DMatrix<Complex64>,
    degeneracy_classes: Vec<Vec<usize>>,
}

/// Eigendecomposition with a deterministic presentation: eigenvalues sorted
/// ascending, equal eigenvalues ordered by lexicographic comparison of their
/// phase-fixed eigenvectors, and each eigenvector's phase fixed by making its
/// largest-modulus component real and positive.
pub fn spectral_decompose(a: &HermitianOperator) -> Result<SpectralData> {
    let n = a.dim();
    let eigen = nalgebra::SymmetricEigen::try_new(a.entries().clone(), f64::EPSILON, 0)
        .ok_or(Error::NumericalFailure)?;

    let mut columns: Vec<(f64, DVector<Complex64>)> = (0..n)
        .map(|k| {
            let mut v: DVector<Complex64> = eigen.eigenvectors.column(k).into_owned();
            fix_phase(&mut v);
            (eigen.eigenvalues[k], v)
        })
        .collect();
    columns.sort_by(|(va, a), (vb, b)| {
        va.partial_cmp(vb)
            .expect("Hermitian eigenvalues are finite")
            .then_with(|| lex_compare(a, b))
    });

    let eigenvalues: Vec<f64> = columns.iter().map(|(v, _)| *v).collect();
    let eigenbasis = DMatrix::from_columns(
        &columns.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(),
    );
    let degeneracy_classes = partition_degenerate(&eigenvalues);

    let data = SpectralData {
        eigenvalues,
        eigenbasis,
        degeneracy_classes,
    };
    data.check_invariants(a)?;
    Ok(data)
}

/// Phase gauge: rotate so the first component of largest modulus is real
/// and positive.
fn fix_phase(v: &mut DVector<Complex64>) {
    let mut best = 0;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let nz = z.norm();
        if nz > best_norm {
            best_norm = nz;
            best = i;
        }
    }
    if best_norm > 0.0 {
        let phase = v[best].conj() / Complex64::new(best_norm, 0.0);
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

fn lex_compare(a: &DVector<Complex64>, b: &DVector<Complex64>) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x
            .re
            .partial_cmp(&y.re)
            .unwrap()
            .then(x.im.partial_cmp(&y.im).unwrap())
        {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn partition_degenerate(sorted: &[f64]) -> Vec<Vec<usize>> {
    let scale = sorted.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gap_tol = SPECTRAL_GAP_TOL * scale;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..sorted.len() {
        match classes.last_mut() {
            Some(class) if sorted[j] - sorted[*class.last().unwrap()] <= gap_tol => {
                class.push(j)
            }
            _ => classes.push(vec![j]),
        }
    }
    classes
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvector columns, ordered to match [`Self::eigenvalues`].
    pub fn eigenbasis(&self) -> &DMatrix<Complex64> {
        &self.eigenbasis
    }

    pub fn degeneracy_classes(&self) -> &[Vec<usize>] {
        &self.degeneracy_classes
    }

    /// Absolute gap below which two eigenvalues of this spectrum count as equal.
    pub fn gap_tolerance(&self) -> f64 {
        let scale = self.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        SPECTRAL_GAP_TOL * scale
    }

    pub fn is_degenerate_pair(&self, j: usize, k: usize) -> bool {
        (self.eigenvalues[j] - self.eigenvalues[k]).abs() <= self.gap_tolerance()
    }

    /// Rank-one projectors |j><j| onto each eigenvector, in eigenvalue order.
    pub fn projectors(&self) -> Vec<HermitianOperator> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let v = self.eigenbasis.column(k);
                let entries =
                    DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
                HermitianOperator { dim: n, entries }
            })
            .collect()
    }

    /// The unitary U(tau) = sum_j exp(-i nu_j tau) |j><j|.
    pub fn propagator(&self, tau: f64) -> Result<DMatrix<Complex64>> {
        if !tau.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "propagator time must be finite, got {tau}"
            )));
        }
        let n = self.dim();
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|nu| Complex64::from_polar(1.0, -nu * tau))
            .collect();
        // V diag(phases) V*
        let mut scaled = self.eigenbasis.clone();
        for (k, phase) in phases.iter().enumerate() {
            scaled.column_mut(k).scale_mut(1.0); // keep shape explicit
            for i in 0..n {
                scaled[(i, k)] *= phase;
            }
        }
        Ok(&scaled * self.eigenbasis.adjoint())
    }

    /// Sum nu_j |j><j|; reproduces the decomposed operator.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut scaled = self.eigenbasis.clone();
        for k in 0..n {
            for i in 0..n {
                scaled[(i, k)] *= Complex64::new(self.eigenvalues[k], 0.0);
            }
        }
        &scaled * self.eigenbasis.adjoint()
    }

    fn check_invariants(&self, source: &HermitianOperator) -> Result<()> {
        let n = self.dim();
        let gram = self.eigenbasis.adjoint() * &self.eigenbasis;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (gram[(i, j)] - Complex64::new(expected, 0.0)).norm() >= 1e-10 {
                    return Err(Error::NumericalFailure);
                }
            }
        }
        let recon = self.reconstruct();
        for i in 0..n {
            for j in 0..n {
                if (recon[(i, j)] - source.entries()[(i, j)]).norm() >= 1e-9 {
                    return Err(Error::NumericalFailure);
                }
            }
        }
        Ok(())
    }
}

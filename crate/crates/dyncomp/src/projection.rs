//! Projection matrices mapping channels to latent components.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Entrywise tolerance for declaring `V^T V = I`.
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// An `n x d` linear projection of channel space onto a `d`-dimensional subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    matrix: DMatrix<f64>,
    is_orthonormal: bool,
}

impl Projection {
    /// Wrap a projection matrix, checking rank and (when claimed) orthonormality.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (n, d) = matrix.shape();
        if d < 1 || d > n {
            return Err(Error::InvalidArgument(format!(
                "projection must have 1 <= d <= n, got n={n}, d={d}"
            )));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("projection has non-finite entries".into()));
        }
        let rank = matrix.clone().svd(false, false).rank(1e-12 * matrix.amax().max(1.0));
        if rank < d {
            return Err(Error::InvalidArgument(format!(
                "projection matrix is rank-deficient: rank {rank} < d={d}"
            )));
        }
        let is_orthonormal = gram_residual_max(&matrix) <= ORTHONORMAL_TOL;
        Ok(Self { matrix, is_orthonormal })
    }

    /// Identity projection onto the first `d = n` coordinates.
    pub fn identity(n: usize) -> Self {
        Self { matrix: DMatrix::identity(n, n), is_orthonormal: true }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Ambient channel count `n`.
    pub fn n_channels(&self) -> usize {
        self.matrix.nrows()
    }

    /// Latent dimensionality `d`.
    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// Whether `V^T V = I` holds to within [`ORTHONORMAL_TOL`] entrywise.
    pub fn is_orthonormal(&self) -> bool {
        self.is_orthonormal
    }

    /// Max-abs entry of `V^T V - I`.
    pub fn gram_residual(&self) -> f64 {
        gram_residual_max(&self.matrix)
    }

    /// Replace `V` with the orthonormal column basis from its QR factorization.
    ///
    /// The basis is sign-fixed (positive R diagonal) so the result is
    /// deterministic across platforms.
    pub fn orthonormalized(&self) -> Self {
        let q = orthonormal_basis(&self.matrix);
        Self { matrix: q, is_orthonormal: true }
    }
}

/// Economy-size QR orthonormal basis of the column span, with R's diagonal
/// made positive.
pub(crate) fn orthonormal_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let d = m.ncols();
    let qr = m.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            for i in 0..q.nrows() {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

fn gram_residual_max(m: &DMatrix<f64>) -> f64 {
    let g = m.transpose() * m;
    let d = m.ncols();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

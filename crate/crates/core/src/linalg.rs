//! Dense complex matrix helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() || m.iter().all(|z| *z == ZERO) {
        return 0.0;
    }
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn diag(values: &[C64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
}

/// Orthogonal projection onto the coordinates selected by `keep`.
pub fn coordinate_projection(keep: &[bool]) -> CMatrix {
    let n = keep.len();
    CMatrix::from_fn(n, n, |i, j| if i == j && keep[i] { ONE } else { ZERO })
}

/// `‖a − b‖` in operator norm; `None` if the shapes differ.
pub fn residual(a: &CMatrix, b: &CMatrix) -> Option<f64> {
    (a.shape() == b.shape()).then(|| op_norm(&(a - b)))
}

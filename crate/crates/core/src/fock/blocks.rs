//! Pair-ladder block structure of the truncated two-mode space.
//!
//! The squeeze generator `r (A†B† - AB)` only couples Fock states along
//! `|m, n⟩ -> |m ± 1, n ± 1⟩`, so the photon-number difference `m - n` is
//! conserved. Every operator built here is block diagonal in that difference,
//! which keeps all spectral work at the per-block size `dim - |d|` instead of
//! the full order `dim²`.

use nalgebra::DMatrix;

/// Flat indices (`m * dim + n`) of the states in each difference block,
/// ordered by increasing pair number.
pub(crate) fn pair_blocks(dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(2 * dim - 1);
    for d in -(dim as isize - 1)..=(dim as isize - 1) {
        let len = dim - d.unsigned_abs();
        let mut idx = Vec::with_capacity(len);
        for i in 0..len {
            let (m, n) = if d >= 0 {
                (i + d as usize, i)
            } else {
                (i, i + (-d) as usize)
            };
            idx.push(m * dim + n);
        }
        out.push(idx);
    }
    out
}

/// Matrix exponential by scaling and squaring with a Taylor-series inner
/// step. Sized for the per-block generators (order up to a few hundred);
/// the series is carried until terms fall below 1e-18 of the running sum.
pub(crate) fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a
        .column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings as i32);

    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=40 {
        term = (&term * &scaled) / k as f64;
        result += &term;
        let tnorm = term.amax();
        if tnorm < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Per-block two-mode squeeze operators `exp(r (A†B† - AB))`, in the order
/// of [`pair_blocks`]. Each block generator is skew tridiagonal with
/// couplings `r √((i + |d| + 1)(i + 1))`, so each block exponential is
/// orthogonal to rounding.
pub(crate) fn squeeze_blocks(r: f64, dim: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::with_capacity(2 * dim - 1);
    for d in -(dim as isize - 1)..=(dim as isize - 1) {
        let len = dim - d.unsigned_abs();
        let mut gen = DMatrix::<f64>::zeros(len, len);
        for i in 0..len.saturating_sub(1) {
            let amp = r * (((i + d.unsigned_abs() + 1) * (i + 1)) as f64).sqrt();
            gen[(i + 1, i)] = amp;
            gen[(i, i + 1)] = -amp;
        }
        out.push(expm(&gen));
    }
    out
}

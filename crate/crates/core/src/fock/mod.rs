//! Independent numerical ground truth in a truncated two-mode Fock basis.
//!
//! States are rebuilt as finite matrices (photon cutoff `dim` per mode,
//! matrix order `dim²`) and every closed-form quantity is recomputed
//! spectrally: entropies from eigenvalues, reduced states by index
//! contraction, matrix elements against the coherent-state kernel, and the
//! GEoF squeezing parameter from a pure-state compatibility search on the
//! covariance. Nothing here shares a code path with the closed forms it
//! checks.

mod blocks;
mod psd;

pub use psd::{geof_psd_search, PsdGridSettings, PsdSearchResult};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::LogBase;
use crate::state::StateParams;
use blocks::{pair_blocks, squeeze_blocks};

/// Eigenvalues below this are treated as exact zeros before any logarithm.
const EIGENVALUE_CLAMP: f64 = 1e-14;

/// Probability mass a state may place on clamped eigendirections of the
/// reference before the relative entropy is reported as infinite. Genuine
/// support mismatches carry O(1) weight; truncation dust sits orders of
/// magnitude below this.
const KERNEL_WEIGHT_TOL: f64 = 1e-4;

/// Tail mass allowed outside the truncated box.
const TAIL_BUDGET: f64 = 1e-8;

/// A real matrix on the truncated Fock space of one or two modes. Two-mode
/// indices are flattened as `m * dim + n` with `m` photons in A and `n` in B.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix {
    dim: usize,
    modes: usize,
    mat: DMatrix<f64>,
}

/// Mode kept by [`partial_trace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

impl FockMatrix {
    /// Photon-number cutoff per mode.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Matrix order: `dim` for one mode, `dim²` for two.
    pub fn order(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Trace, summed per-`m` over the inner mode for two-mode matrices so
    /// that tracing before or after [`partial_trace`] keeps the same
    /// floating-point grouping.
    pub fn trace(&self) -> f64 {
        match self.modes {
            1 => (0..self.dim).map(|i| self.mat[(i, i)]).sum(),
            _ => (0..self.dim)
                .map(|m| {
                    (0..self.dim)
                        .map(|n| self.mat[(m * self.dim + n, m * self.dim + n)])
                        .sum::<f64>()
                })
                .sum(),
        }
    }

    /// Largest symmetry violation `max |a_ij - a_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.mat.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.mat[(i, j)] - self.mat[(j, i)]).abs());
            }
        }
        worst
    }
}

fn check_symmetric(m: &FockMatrix) -> Result<()> {
    let defect = m.symmetry_defect();
    if defect > 1e-10 {
        return Err(Error::NotSymmetric(defect));
    }
    Ok(())
}

fn check_unit_interval(field: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || !(0.0..1.0).contains(&v) {
        return Err(Error::InvalidParameter {
            field,
            value: v,
            expected: "a finite value in [0, 1)",
        });
    }
    Ok(())
}

/// Single-mode thermal state: diagonal with entries `(1 - v) vᵐ`.
pub fn thermal_state(v: f64, dim: usize) -> Result<FockMatrix> {
    check_unit_interval("v", v)?;
    if dim == 0 {
        return Err(Error::InvalidParameter {
            field: "dim",
            value: 0.0,
            expected: "a cutoff of at least 1",
        });
    }
    let mut mat = DMatrix::<f64>::zeros(dim, dim);
    let mut p = 1.0 - v;
    for m in 0..dim {
        mat[(m, m)] = p;
        p *= v;
    }
    Ok(FockMatrix { dim, modes: 1, mat })
}

/// Two-mode squeeze operator `exp(r (A†B† - AB))` on the truncated space.
/// Orthogonal to rounding; truncation shows up as deviations of the
/// low-photon columns from the exact Schmidt amplitudes, not as a loss of
/// unitarity.
pub fn squeeze_operator(r: f64, dim: usize) -> Result<FockMatrix> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidParameter {
            field: "r",
            value: r,
            expected: "a finite nonnegative squeeze parameter",
        });
    }
    if dim < 2 {
        return Err(Error::InvalidParameter {
            field: "dim",
            value: dim as f64,
            expected: "a cutoff of at least 2",
        });
    }
    let mut mat = DMatrix::<f64>::zeros(dim * dim, dim * dim);
    for (idx, u) in pair_blocks(dim).iter().zip(squeeze_blocks(r, dim)) {
        for (bi, &fi) in idx.iter().enumerate() {
            for (bj, &fj) in idx.iter().enumerate() {
                mat[(fi, fj)] = u[(bi, bj)];
            }
        }
    }
    Ok(FockMatrix {
        dim,
        modes: 2,
        mat,
    })
}

/// Truncation cutoff suggested by the geometric tails of the reduced
/// occupations: `8 (1 + max N_μ^rd)` with a floor of 30.
pub fn suggested_dim(state: &StateParams) -> usize {
    let rd = state.reduced_occupations();
    let n_max = rd.n_a_rd().max(rd.n_b_rd());
    ((8.0 * (1.0 + n_max)).ceil() as usize).max(30)
}

/// Builds the state as a truncated density matrix: the thermal product
/// conjugated by the squeeze operator, computed block by block.
///
/// The tail mass is estimated as `1 - trace` and the construction is
/// rejected when it exceeds `1e-8`.
pub fn build_state(state: &StateParams, dim: usize) -> Result<FockMatrix> {
    if dim < 2 {
        return Err(Error::InvalidParameter {
            field: "dim",
            value: dim as f64,
            expected: "a cutoff of at least 2",
        });
    }
    let (va, vb) = (state.v_a(), state.v_b());
    let mut mat = DMatrix::<f64>::zeros(dim * dim, dim * dim);
    let blocks = pair_blocks(dim);
    for (idx, u) in blocks.iter().zip(squeeze_blocks(state.r(), dim)) {
        let len = idx.len();
        // thermal-product weights restricted to this block
        let mut weights = Vec::with_capacity(len);
        for &flat in idx.iter() {
            let (m, n) = (flat / dim, flat % dim);
            weights.push((1.0 - va) * va.powi(m as i32) * (1.0 - vb) * vb.powi(n as i32));
        }
        // rho_d = U_d diag(w) U_dᵀ
        for (bi, &fi) in idx.iter().enumerate() {
            for (bj, &fj) in idx.iter().enumerate() {
                let mut acc = 0.0;
                for (bk, w) in weights.iter().enumerate() {
                    acc += u[(bi, bk)] * w * u[(bj, bk)];
                }
                mat[(fi, fj)] = acc;
            }
        }
    }
    let rho = FockMatrix {
        dim,
        modes: 2,
        mat,
    };
    let tail = 1.0 - rho.trace();
    if tail > TAIL_BUDGET {
        return Err(Error::TruncationBudget {
            tail,
            budget: TAIL_BUDGET,
            suggested: suggested_dim(state).max(dim + 10),
        });
    }
    Ok(rho)
}

/// Contracts one mode out of a two-mode matrix; the trace is preserved.
///
/// Panics when handed a single-mode matrix.
pub fn partial_trace(rho: &FockMatrix, keep: Mode) -> FockMatrix {
    assert_eq!(rho.modes, 2, "partial_trace needs a two-mode matrix");
    let dim = rho.dim;
    let mut mat = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = 0.0;
            match keep {
                Mode::A => {
                    for n in 0..dim {
                        acc += rho.mat[(i * dim + n, j * dim + n)];
                    }
                }
                Mode::B => {
                    for m in 0..dim {
                        acc += rho.mat[(m * dim + i, m * dim + j)];
                    }
                }
            }
            mat[(i, j)] = acc;
        }
    }
    FockMatrix { dim, modes: 1, mat }
}

/// Eigenvalues grouped so that block-diagonal structure (photon-number
/// difference for two modes, diagonality for one) is exploited when the
/// off-structure entries are exact zeros.
fn eigenvalues_and_blocks(m: &FockMatrix) -> Vec<(Vec<usize>, SymmetricEigen<f64, nalgebra::Dyn>)> {
    let structured = match m.modes {
        1 => {
            let mut diag = true;
            'scan1: for i in 0..m.dim {
                for j in 0..m.dim {
                    if i != j && m.mat[(i, j)] != 0.0 {
                        diag = false;
                        break 'scan1;
                    }
                }
            }
            diag
        }
        _ => {
            let dim = m.dim;
            let diff = |flat: usize| (flat / dim) as isize - (flat % dim) as isize;
            let order = m.mat.nrows();
            let mut ok = true;
            'scan2: for i in 0..order {
                for j in 0..order {
                    if diff(i) != diff(j) && m.mat[(i, j)] != 0.0 {
                        ok = false;
                        break 'scan2;
                    }
                }
            }
            ok
        }
    };

    let index_sets: Vec<Vec<usize>> = if !structured {
        vec![(0..m.mat.nrows()).collect()]
    } else if m.modes == 1 {
        (0..m.dim).map(|i| vec![i]).collect()
    } else {
        pair_blocks(m.dim)
    };

    index_sets
        .into_iter()
        .map(|idx| {
            let len = idx.len();
            let mut sub = DMatrix::<f64>::zeros(len, len);
            for (bi, &fi) in idx.iter().enumerate() {
                for (bj, &fj) in idx.iter().enumerate() {
                    sub[(bi, bj)] = m.mat[(fi, fj)];
                }
            }
            let eig = SymmetricEigen::new(sub);
            (idx, eig)
        })
        .collect()
}

/// Von Neumann entropy `-Σ p log p` from the spectrum, with eigenvalues
/// below `1e-14` clamped to zero.
pub fn entropy_numeric(rho: &FockMatrix, base: LogBase) -> Result<f64> {
    check_symmetric(rho)?;
    let mut nats = 0.0;
    for (_, eig) in eigenvalues_and_blocks(rho) {
        for &p in eig.eigenvalues.iter() {
            if p > EIGENVALUE_CLAMP {
                nats -= p * p.ln();
            }
        }
    }
    Ok(base.from_nats(nats))
}

/// Relative entropy `Tr ρ (log ρ - log σ)` computed spectrally. Infinite
/// when the state carries weight on the kernel of the reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn finite(self) -> Option<f64> {
        match self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RelativeEntropy::Infinite)
    }
}

/// Spectral relative entropy between two truncated states.
///
/// Eigenvalues below the clamp are zeroed. Weight of `rho` on zeroed
/// eigendirections of `sigma` beyond truncation dust makes the result
/// [`RelativeEntropy::Infinite`] rather than a silently large float.
pub fn relative_entropy_numeric(
    rho: &FockMatrix,
    sigma: &FockMatrix,
    base: LogBase,
) -> Result<RelativeEntropy> {
    check_symmetric(rho)?;
    check_symmetric(sigma)?;
    if rho.mat.nrows() != sigma.mat.nrows() || rho.modes != sigma.modes {
        return Err(Error::DimMismatch(rho.mat.nrows(), sigma.mat.nrows()));
    }

    let mut tr_rho_ln_rho = 0.0;
    for (_, eig) in eigenvalues_and_blocks(rho) {
        for &p in eig.eigenvalues.iter() {
            if p > EIGENVALUE_CLAMP {
                tr_rho_ln_rho += p * p.ln();
            }
        }
    }

    let mut tr_rho_ln_sigma = 0.0;
    let mut kernel_weight = 0.0;
    for (idx, eig) in eigenvalues_and_blocks(sigma) {
        let len = idx.len();
        // rho restricted to this block (zero outside it when structured)
        let mut sub = DMatrix::<f64>::zeros(len, len);
        for (bi, &fi) in idx.iter().enumerate() {
            for (bj, &fj) in idx.iter().enumerate() {
                sub[(bi, bj)] = rho.mat[(fi, fj)];
            }
        }
        for (col, &q) in eig.eigenvalues.iter().enumerate() {
            let phi = eig.eigenvectors.column(col);
            let w = (phi.transpose() * &sub * phi)[(0, 0)];
            if q > EIGENVALUE_CLAMP {
                tr_rho_ln_sigma += w * q.ln();
            } else {
                kernel_weight += w.max(0.0);
            }
        }
    }

    if kernel_weight > KERNEL_WEIGHT_TOL {
        return Ok(RelativeEntropy::Infinite);
    }
    Ok(RelativeEntropy::Finite(
        base.from_nats(tr_rho_ln_rho - tr_rho_ln_sigma),
    ))
}

/// Coherent-state matrix element `⟨α_A, α_B| ρ |β_A, β_B⟩` of the state in
/// closed form:
///
/// `C₀ exp[-(|α_A|² + |α_B|² + |β_A|² + |β_B|²)/2]
///     exp[τ (α_A* α_B* + β_A β_B) + ω_A α_A* β_A + ω_B α_B* β_B]`
///
/// with `C₀ = (1-v_A)(1-v_B)(1-λ²)/(1-v_A v_B λ²)`,
/// `τ = λ(1-v_A v_B)/(1-v_A v_B λ²)` and
/// `ω_μ = v_μ(1-λ²)/(1-v_A v_B λ²)`.
pub fn coherent_kernel(
    state: &StateParams,
    alpha_a: Complex64,
    alpha_b: Complex64,
    beta_a: Complex64,
    beta_b: Complex64,
) -> Complex64 {
    let (lam, va, vb) = (state.lambda(), state.v_a(), state.v_b());
    let denom = 1.0 - va * vb * lam * lam;
    let c0 = (1.0 - va) * (1.0 - vb) * (1.0 - lam * lam) / denom;
    let tau = lam * (1.0 - va * vb) / denom;
    let om_a = va * (1.0 - lam * lam) / denom;
    let om_b = vb * (1.0 - lam * lam) / denom;

    let gauss = -0.5
        * (alpha_a.norm_sqr() + alpha_b.norm_sqr() + beta_a.norm_sqr() + beta_b.norm_sqr());
    let mix = tau * (alpha_a.conj() * alpha_b.conj() + beta_a * beta_b)
        + om_a * alpha_a.conj() * beta_a
        + om_b * alpha_b.conj() * beta_b;
    c0 * (Complex64::new(gauss, 0.0) + mix).exp()
}

/// Truncated coherent-state column: `e^{-|α|²/2} αⁿ/√(n!)`.
fn coherent_column(alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(dim);
    let norm = (-0.5 * alpha.norm_sqr()).exp();
    let mut coef = Complex64::new(norm, 0.0);
    for n in 0..dim {
        out.push(coef);
        coef = coef * alpha / ((n + 1) as f64).sqrt();
    }
    out
}

/// `⟨α_A, α_B| ρ̂ |β_A, β_B⟩` against the truncated matrix: the independent
/// cross-check of [`coherent_kernel`].
#[allow(clippy::needless_range_loop)]
pub fn coherent_matrix_element(
    rho: &FockMatrix,
    alpha_a: Complex64,
    alpha_b: Complex64,
    beta_a: Complex64,
    beta_b: Complex64,
) -> Complex64 {
    assert_eq!(rho.modes, 2, "matrix element needs a two-mode matrix");
    let dim = rho.dim;
    let ca = coherent_column(alpha_a, dim);
    let cb = coherent_column(alpha_b, dim);
    let da = coherent_column(beta_a, dim);
    let db = coherent_column(beta_b, dim);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..dim {
        for n in 0..dim {
            let bra = (ca[m] * cb[n]).conj();
            if bra.norm_sqr() == 0.0 {
                continue;
            }
            let mut row = Complex64::new(0.0, 0.0);
            for mp in 0..dim {
                for np in 0..dim {
                    let r = rho.mat[(m * dim + n, mp * dim + np)];
                    if r != 0.0 {
                        row += r * da[mp] * db[np];
                    }
                }
            }
            acc += bra * row;
        }
    }
    acc
}

//! Definitional GEoF check: the least-entangled pure Gaussian state
//! compatible with a covariance, found by feasibility search.
//!
//! A pure two-mode state with physical squeezing `s` and local scalings
//! `(x, y)` has position block
//! `X = [[y x cosh 2s, y sinh 2s], [y sinh 2s, y x⁻¹ cosh 2s]]` and momentum
//! block `X⁻¹`. It fits under the covariance `γ = γ_q ⊕ γ_p` when both
//! `γ_q - X ⪰ 0` and `γ_p - X⁻¹ ⪰ 0`. The GEoF squeezing parameter is the
//! smallest feasible `s`; for the state family it must reproduce `r - r₀`
//! with the optimal scalings at `x = y = 1`.

use crate::error::{Error, Result};
use crate::state::TwoModeCovariance;

/// Grid and tolerance settings for the feasibility search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdGridSettings {
    /// Half range of `ln x` and `ln y`: scalings live in `[e⁻ʳᵃⁿᵍᵉ, eʳᵃⁿᵍᵉ]`.
    pub ln_range: f64,
    /// Coarse grid points per scaling axis.
    pub coarse_steps: usize,
    /// Fine grid points per axis, centered on the best coarse cell.
    pub fine_steps: usize,
    /// Half width of the fine scan in `ln` units.
    pub fine_half_range: f64,
    /// Bisection tolerance on the squeezing parameter.
    pub s_tol: f64,
    /// PSD slack: a 2×2 block counts as positive semidefinite when its
    /// smallest eigenvalue is at least `-psd_slack`.
    pub psd_slack: f64,
}

impl Default for PsdGridSettings {
    fn default() -> Self {
        Self {
            ln_range: 2.0,
            coarse_steps: 21,
            fine_steps: 33,
            fine_half_range: 0.2,
            s_tol: 1e-9,
            psd_slack: 1e-9,
        }
    }
}

/// Outcome of the search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdSearchResult {
    /// Smallest pure-state squeezing compatible with the covariance.
    pub s_star: f64,
    /// Local scalings at which feasibility held at `s_star`.
    pub witness_x: f64,
    pub witness_y: f64,
    /// Step sizes of the search: `(s, ln x, ln y)` resolution.
    pub grid_resolution: (f64, f64, f64),
}

fn min_eig_2x2(a: f64, b: f64, c: f64) -> f64 {
    0.5 * (a + c) - (0.25 * (a - c) * (a - c) + b * b).sqrt()
}

/// Feasibility margin of the pure state `(s, x, y)` under the covariance:
/// the smaller of the two block minimum eigenvalues.
fn margin(cov: &TwoModeCovariance, s: f64, ln_x: f64, ln_y: f64) -> f64 {
    let (n, m, k) = (cov.n(), cov.m(), cov.k());
    let (x, y) = (ln_x.exp(), ln_y.exp());
    let (ch, sh) = ((2.0 * s).cosh(), (2.0 * s).sinh());
    let q = min_eig_2x2(n - y * x * ch, k - y * sh, m - y * ch / x);
    let p = min_eig_2x2(n - ch / (x * y), -k + sh / y, m - x * ch / y);
    q.min(p)
}

/// Best feasibility margin over the scaling grid, coarse scan refined once
/// around the winner. Returns `(margin, ln x, ln y)`.
fn best_margin(cov: &TwoModeCovariance, s: f64, grid: &PsdGridSettings) -> (f64, f64, f64) {
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    let coarse = grid.coarse_steps.max(2);
    for i in 0..coarse {
        let lx = -grid.ln_range + 2.0 * grid.ln_range * i as f64 / (coarse - 1) as f64;
        for j in 0..coarse {
            let ly = -grid.ln_range + 2.0 * grid.ln_range * j as f64 / (coarse - 1) as f64;
            let m = margin(cov, s, lx, ly);
            if m > best.0 {
                best = (m, lx, ly);
            }
        }
    }
    let fine = grid.fine_steps.max(2);
    let (_, cx, cy) = best;
    for i in 0..fine {
        let lx = cx - grid.fine_half_range
            + 2.0 * grid.fine_half_range * i as f64 / (fine - 1) as f64;
        for j in 0..fine {
            let ly = cy - grid.fine_half_range
                + 2.0 * grid.fine_half_range * j as f64 / (fine - 1) as f64;
            let m = margin(cov, s, lx, ly);
            if m > best.0 {
                best = (m, lx, ly);
            }
        }
    }
    best
}

/// Searches for the smallest pure-state squeezing compatible with an
/// entangled covariance.
///
/// Separable covariances (feasible already at `s = 0`) are rejected, as is
/// the inconsistent case where even the state's own squeezing admits no
/// pure state.
pub fn geof_psd_search(
    cov: &TwoModeCovariance,
    grid: &PsdGridSettings,
) -> Result<PsdSearchResult> {
    // the covariance's own squeezing: tanh 2r = 2k / (n + m)
    let r = 0.5 * (2.0 * cov.k() / (cov.n() + cov.m())).atanh();
    if !r.is_finite() || r < 0.0 {
        return Err(Error::PsdSearchInconsistent);
    }

    if best_margin(cov, 0.0, grid).0 >= -grid.psd_slack {
        return Err(Error::SeparableCovariance);
    }
    if best_margin(cov, r, grid).0 < -grid.psd_slack {
        return Err(Error::PsdSearchInconsistent);
    }

    let (mut lo, mut hi) = (0.0, r);
    while hi - lo > grid.s_tol {
        let mid = 0.5 * (lo + hi);
        if best_margin(cov, mid, grid).0 >= -grid.psd_slack {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (_, lx, ly) = best_margin(cov, hi, grid);
    let fine_step = 2.0 * grid.fine_half_range / (grid.fine_steps.max(2) - 1) as f64;
    Ok(PsdSearchResult {
        s_star: hi,
        witness_x: lx.exp(),
        witness_y: ly.exp(),
        grid_resolution: (grid.s_tol, fine_step, fine_step),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateParams;

    fn state(l: f64, a: f64, b: f64) -> StateParams {
        StateParams::new(l, a, b).unwrap()
    }

    #[test]
    fn pure_state_is_its_own_witness() {
        let s = state(0.6, 0.0, 0.0);
        let r = geof_psd_search(&s.covariance(), &PsdGridSettings::default()).unwrap();
        assert!((r.s_star - s.r()).abs() < 1e-3, "{}", r.s_star);
        assert!((r.witness_x.ln()).abs() <= r.grid_resolution.1 + 1e-12);
        assert!((r.witness_y.ln()).abs() <= r.grid_resolution.2 + 1e-12);
    }

    #[test]
    fn mixed_state_recovers_geof_squeezing() {
        let s = state(0.6, 0.2, 0.1);
        let r = geof_psd_search(&s.covariance(), &PsdGridSettings::default()).unwrap();
        let expect = s.r() - s.r_noise();
        assert!((r.s_star - expect).abs() < 1e-3, "{} vs {expect}", r.s_star);
        assert!((r.witness_x - 1.0).abs() < 0.05);
        assert!((r.witness_y - 1.0).abs() < 0.05);
    }

    #[test]
    fn separable_covariance_rejected() {
        let s = state(0.2, 0.5, 0.5);
        assert!(!s.is_entangled());
        assert!(matches!(
            geof_psd_search(&s.covariance(), &PsdGridSettings::default()),
            Err(Error::SeparableCovariance)
        ));
    }
}

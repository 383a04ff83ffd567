//! Closed-form entropy and entanglement quantities: bosonic entropy, state
//! entropy, Gaussian entanglement of formation and coherent information.

use crate::error::{Error, Result};
use crate::state::{StateParams, TwoModeCovariance};

/// Logarithm base used for every entropic quantity. Base 2 (ebits) is the
/// default; all quantities of one computation must use the same base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Two,
    Natural,
}

impl LogBase {
    /// Converts a value computed in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Two => nats / std::f64::consts::LN_2,
            LogBase::Natural => nats,
        }
    }
}

/// `g(x) = (x+1) ln(x+1) - x ln x` in nats, with `g(0) = 0`.
///
/// Callers guarantee `x >= 0` and finite.
pub(crate) fn bosonic_entropy_nats(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (x + 1.0) * x.ln_1p() - x * x.ln()
}

/// Bosonic entropy `g(x) = (x+1) log(x+1) - x log x`: the entropy of a
/// thermal state with mean photon number `x`.
pub fn bosonic_entropy(x: f64, base: LogBase) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidParameter {
            field: "x",
            value: x,
            expected: "a finite nonnegative mean photon number",
        });
    }
    Ok(base.from_nats(bosonic_entropy_nats(x)))
}

/// Von Neumann entropy of the state, `g(N_A) + g(N_B)`. Squeezing is
/// unitary, so the entropy carries no `λ` dependence.
pub fn state_entropy(state: &StateParams, base: LogBase) -> f64 {
    base.from_nats(bosonic_entropy_nats(state.n_a()) + bosonic_entropy_nats(state.n_b()))
}

/// Gaussian entanglement of formation of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeofResult {
    /// `g(sinh² r_g)` in the configured base; zero iff the state is separable.
    pub value: f64,
    /// GEoF squeezing parameter `r_g = max(r - r₀, 0)`.
    pub r_g: f64,
    pub entangled: bool,
}

/// Gaussian entanglement of formation, `E_G = g(sinh²(r - r₀))` for
/// entangled states and exactly zero otherwise.
pub fn geof(state: &StateParams, base: LogBase) -> GeofResult {
    let r_g = (state.r() - state.r_noise()).max(0.0);
    GeofResult {
        value: base.from_nats(bosonic_entropy_nats(r_g.sinh().powi(2))),
        r_g,
        entangled: state.is_entangled(),
    }
}

/// Recovers the GEoF squeezing parameter from the covariance alone, by
/// solving the pure-state compatibility condition at its optimal local
/// scalings `x = y = 1`:
///
/// `(n + m) cosh u - 2 k sinh u = n·m - k² + 1`.
///
/// The hyperbolic angle `u` of the pure-state block is twice the physical
/// squeezing, so the returned value is `u/2` for the smallest nonnegative
/// root `u`; with no nonnegative root the result is 0. For entangled states
/// of the family this reproduces `r - r₀`; for separable ones the smallest
/// nonnegative root sits at `r + r₀` instead (the condition alone does not
/// know about separability, [`geof`] is authoritative there).
pub fn geof_rg_from_covariance(cov: &TwoModeCovariance) -> f64 {
    let (n, m, k) = (cov.n(), cov.m(), cov.k());
    let target = n * m - k * k + 1.0;
    let f = |u: f64| (n + m) * u.cosh() - 2.0 * k * u.sinh() - target;

    // f(u) = C cosh(u - u_min) - target with C = sqrt((n+m)² - 4k²) dips to
    // its minimum at tanh u_min = 2k / (n+m); roots are symmetric about it.
    let u_min = (2.0 * k / (n + m)).atanh();
    let touch_tol = 1e-12 * (target.abs() + n + m);

    let bisect = |mut lo: f64, mut hi: f64, rising: bool| -> f64 {
        for _ in 0..200 {
            if hi - lo < 1e-12 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let positive = f(mid) > 0.0;
            if positive == rising {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let f0 = f(0.0);
    if f0 > 0.0 {
        // falling branch: first root below u_min
        let fm = f(u_min);
        if fm > touch_tol {
            return 0.0;
        }
        let u = if fm > 0.0 { u_min } else { bisect(0.0, u_min, false) };
        u / 2.0
    } else if f0 < 0.0 {
        // rising branch: the condition only admits the root beyond u_min
        let hi = u_min + 50.0;
        debug_assert!(f(hi) > 0.0);
        bisect(u_min, hi, true) / 2.0
    } else {
        0.0
    }
}

/// Coherent information of both reductions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentInfoResult {
    /// `max(raw_a, 0)`.
    pub i_a: f64,
    /// `max(raw_b, 0)`.
    pub i_b: f64,
    /// `g(N_A^rd) - g(N_A) - g(N_B)`, possibly negative.
    pub raw_a: f64,
    pub raw_b: f64,
}

/// Coherent information `I^μ = max(g(N_μ^rd) - g(N_A) - g(N_B), 0)` of the
/// two reductions.
pub fn coherent_information(state: &StateParams, base: LogBase) -> CoherentInfoResult {
    let rd = state.reduced_occupations();
    let entropy = bosonic_entropy_nats(state.n_a()) + bosonic_entropy_nats(state.n_b());
    let raw_a = base.from_nats(bosonic_entropy_nats(rd.n_a_rd()) - entropy);
    let raw_b = base.from_nats(bosonic_entropy_nats(rd.n_b_rd()) - entropy);
    CoherentInfoResult {
        i_a: raw_a.max(0.0),
        i_b: raw_b.max(0.0),
        raw_a,
        raw_b,
    }
}

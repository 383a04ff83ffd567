//! The three-parameter state family: validation, derived quantities,
//! covariance construction, reduced states and the separability test.

use crate::error::{Error, Result};

/// Parameters at or above `1 - 1e-12` are rejected rather than silently
/// saturated; `artanh` loses all precision there.
const PARAM_MAX: f64 = 1.0 - 1e-12;

/// A two-mode squeezed non-symmetric thermal state.
///
/// Stored canonically as `(λ, v_A, v_B)` with `λ = tanh r` the squeeze
/// strength and `v_μ` the thermal parameters of the two modes, all in
/// `[0, 1)`. The physical views `r`, `N_A`, `N_B` and the noise squeeze
/// parameter `r₀ = artanh √(v_A v_B)` are derived on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    lambda: f64,
    v_a: f64,
    v_b: f64,
}

fn check_unit_interval(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..PARAM_MAX).contains(&value) {
        return Err(Error::InvalidParameter {
            field,
            value,
            expected: "a finite value in [0, 1 - 1e-12)",
        });
    }
    Ok(())
}

impl StateParams {
    /// Builds a state from `(λ, v_A, v_B)`, rejecting out-of-range inputs.
    pub fn new(lambda: f64, v_a: f64, v_b: f64) -> Result<Self> {
        check_unit_interval("lambda", lambda)?;
        check_unit_interval("v_a", v_a)?;
        check_unit_interval("v_b", v_b)?;
        Ok(Self { lambda, v_a, v_b })
    }

    /// Builds a state from the physical parametrization `(r, N_A, N_B)`:
    /// squeeze parameter and mean thermal photon numbers.
    pub fn from_physical(r: f64, n_a: f64, n_b: f64) -> Result<Self> {
        for (field, value) in [("r", r), ("n_a", n_a), ("n_b", n_b)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    expected: "a finite nonnegative value",
                });
            }
        }
        let lambda = r.tanh();
        if lambda >= PARAM_MAX {
            return Err(Error::InvalidParameter {
                field: "r",
                value: r,
                expected: "a squeeze with tanh r < 1 - 1e-12",
            });
        }
        Self::new(lambda, n_a / (n_a + 1.0), n_b / (n_b + 1.0))
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn v_a(&self) -> f64 {
        self.v_a
    }

    pub fn v_b(&self) -> f64 {
        self.v_b
    }

    /// Squeeze parameter `r = artanh λ`.
    pub fn r(&self) -> f64 {
        self.lambda.atanh()
    }

    /// Mean thermal photon number of mode A, `N_A = v_A / (1 - v_A)`.
    pub fn n_a(&self) -> f64 {
        self.v_a / (1.0 - self.v_a)
    }

    /// Mean thermal photon number of mode B.
    pub fn n_b(&self) -> f64 {
        self.v_b / (1.0 - self.v_b)
    }

    /// Noise squeeze parameter `r₀ = artanh √(v_A v_B)`: the squeeze strength
    /// at which the thermal noise alone sits on the separability edge.
    pub fn r_noise(&self) -> f64 {
        (self.v_a * self.v_b).sqrt().atanh()
    }

    /// Separability test: the state is entangled iff `λ > √(v_A v_B)`
    /// (strictly; the boundary counts as separable), equivalently iff
    /// `r > r₀`.
    pub fn is_entangled(&self) -> bool {
        self.lambda > (self.v_a * self.v_b).sqrt()
    }

    /// Position/momentum-block covariance of the state, normalized so that
    /// the vacuum covariance is the identity.
    pub fn covariance(&self) -> TwoModeCovariance {
        let (n_a, n_b) = (self.n_a(), self.n_b());
        let two_r = 2.0 * self.r();
        let total = n_a + n_b + 1.0;
        // one shared asymmetry term keeps mode swaps bitwise symmetric
        let asym = n_a - n_b;
        TwoModeCovariance {
            n: total * two_r.cosh() + asym,
            m: total * two_r.cosh() - asym,
            k: total * two_r.sinh(),
        }
    }

    /// Thermal parameters of the two reduced single-mode states.
    ///
    /// Both reductions are thermal; their parameters follow from the mode
    /// occupations after squeezing,
    /// `N_A^rd = N_A cosh²r + (N_B + 1) sinh²r` and symmetrically for B.
    /// In closed form
    /// `v_A^rd = [v_A(1-v_B) + λ²(1-v_A)] / [(1-v_B) + λ² v_B (1-v_A)]`.
    pub fn reduced_occupations(&self) -> ReducedOccupations {
        let (l2, va, vb) = (self.lambda * self.lambda, self.v_a, self.v_b);
        ReducedOccupations {
            v_a_rd: (va * (1.0 - vb) + l2 * (1.0 - va)) / ((1.0 - vb) + l2 * vb * (1.0 - va)),
            v_b_rd: (vb * (1.0 - va) + l2 * (1.0 - vb)) / ((1.0 - va) + l2 * va * (1.0 - vb)),
        }
    }
}

/// Position/momentum blocks of the 4×4 covariance matrix in the compact
/// `(n, m, k)` form: the position block is `[[n, k], [k, m]]` and the
/// momentum block `[[n, -k], [-k, m]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCovariance {
    n: f64,
    m: f64,
    k: f64,
}

impl TwoModeCovariance {
    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Symplectic invariant of the family: `n·m - k² = (2N_A+1)(2N_B+1)`.
    pub fn block_det(&self) -> f64 {
        self.n * self.m - self.k * self.k
    }

    pub fn position_block(&self) -> [[f64; 2]; 2] {
        [[self.n, self.k], [self.k, self.m]]
    }

    pub fn momentum_block(&self) -> [[f64; 2]; 2] {
        [[self.n, -self.k], [-self.k, self.m]]
    }
}

/// Thermal parameters (and photon numbers) of the reduced single-mode states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedOccupations {
    v_a_rd: f64,
    v_b_rd: f64,
}

impl ReducedOccupations {
    pub fn v_a_rd(&self) -> f64 {
        self.v_a_rd
    }

    pub fn v_b_rd(&self) -> f64 {
        self.v_b_rd
    }

    pub fn n_a_rd(&self) -> f64 {
        self.v_a_rd / (1.0 - self.v_a_rd)
    }

    pub fn n_b_rd(&self) -> f64 {
        self.v_b_rd / (1.0 - self.v_b_rd)
    }
}

//! Cross-checks of every closed form against the Fock-space oracle:
//! reduced occupations, state entropy, the cross-entropy-based relative
//! entropy and the GEoF squeezing parameter.

use gaussent::fock::{
    build_state, entropy_numeric, geof_psd_search, partial_trace, relative_entropy_numeric, Mode,
    PsdGridSettings, RelativeEntropy,
};
use gaussent::measures::state_entropy;
use gaussent::reoe::{relative_entropy_to, SeparableEdgePoint};
use gaussent::{LogBase, StateParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL_OCCUPATIONS: f64 = 1e-6;
pub const TOL_ENTROPY: f64 = 1e-6;
pub const TOL_REL_ENTROPY: f64 = 1e-5;
pub const TOL_GEOF_S: f64 = 1e-3;

/// Caps of the fast oracle tier; beyond them `--slow` is required.
pub const LAMBDA_CAP: f64 = 0.7;
pub const V_CAP: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub dim: usize,
    pub lambda_max: f64,
    pub v_max: f64,
    pub edges_per_state: usize,
    pub state: Option<StateParams>,
    pub base: LogBase,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dim: 40,
            lambda_max: LAMBDA_CAP,
            v_max: V_CAP,
            edges_per_state: 5,
            state: None,
            base: LogBase::Two,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckSummary {
    pub name: &'static str,
    pub tol: f64,
    pub max_dev: f64,
    pub worst_state: String,
    pub failures: Vec<String>,
}

impl CheckSummary {
    fn new(name: &'static str, tol: f64) -> Self {
        Self {
            name,
            tol,
            max_dev: 0.0,
            worst_state: String::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, dev: f64, state: &StateParams, detail: &str) {
        if dev > self.max_dev {
            self.max_dev = dev;
            self.worst_state = format!("{} {detail}", triple(state));
        }
        if dev > self.tol {
            self.failures
                .push(format!("{} {detail}: |dev| = {dev:.3e}", triple(state)));
        }
    }

    fn record_error(&mut self, state: &StateParams, err: &str) {
        self.max_dev = f64::INFINITY;
        self.worst_state = format!("{} ({err})", triple(state));
        self.failures.push(format!("{}: {err}", triple(state)));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn triple(s: &StateParams) -> String {
    format!("(λ={}, v_a={}, v_b={})", s.lambda(), s.v_a(), s.v_b())
}

pub fn grid_states(cfg: &VerifyConfig) -> Vec<StateParams> {
    if let Some(s) = cfg.state {
        return vec![s];
    }
    let lambdas = [0.1, 0.3, 0.5, 0.7, 0.8, 0.9];
    let vs = [0.0, 0.1, 0.3, 0.5, 0.7];
    let mut out = Vec::new();
    for &l in lambdas.iter().filter(|&&l| l <= cfg.lambda_max + 1e-12) {
        for &va in vs.iter().filter(|&&v| v <= cfg.v_max + 1e-12) {
            for &vb in vs.iter().filter(|&&v| v <= cfg.v_max + 1e-12) {
                out.push(StateParams::new(l, va, vb).unwrap());
            }
        }
    }
    out
}

/// Thermal-parameter window for edge sampling at a given cutoff: deep
/// enough that the reference spectrum stays above the eigenvalue clamp,
/// shallow enough that the reference passes the truncation budget
/// (`ṽ^dim ≲ 4e-9` per mode), and pulled toward the state's own squeeze so
/// the mismatch stays representable.
fn edge_window(state: &StateParams, dim: usize) -> (f64, f64) {
    let hi = ((4e-9f64).ln() / dim as f64).exp().min(0.95);
    let rd = state.reduced_occupations();
    // shallow references clamp against the state's occupations, so the
    // floor follows however deep the state itself reaches
    let depth = state.lambda().max(rd.v_a_rd()).max(rd.v_b_rd());
    let lo = (depth - 0.12).clamp(0.5, hi - 0.05);
    (lo, hi)
}

/// Random edge points from the window. The squeeze-mismatch cap starts at
/// 0.55 when the window touches the state's squeeze and narrows toward the
/// geometric minimum when the window geometry already forces a large
/// mismatch (large mismatches on top of a forced one push the comparison
/// past what the cutoff represents).
fn sample_edges(
    rng: &mut ChaCha8Rng,
    state: &StateParams,
    dim: usize,
    count: usize,
) -> Vec<SeparableEdgePoint> {
    let r = state.r();
    let (v_lo, v_hi) = edge_window(state, dim);
    let (rt_lo, rt_hi) = (v_lo.atanh(), v_hi.atanh());
    let min_delta = (rt_lo - r).max(r - rt_hi).max(0.0);
    let cap = min_delta + (0.55 - 2.0 * min_delta).clamp(0.15, 0.55);
    let mut out = Vec::with_capacity(count);
    let mut guard = 0;
    while out.len() < count && guard < 100_000 {
        guard += 1;
        let va: f64 = rng.gen_range(v_lo..v_hi);
        let vb: f64 = rng.gen_range(v_lo..v_hi);
        let r_tilde = (va * vb).sqrt().atanh();
        if (r - r_tilde).abs() <= cap {
            out.push(SeparableEdgePoint::new(va, vb).unwrap());
        }
    }
    out
}

pub fn run_verify(cfg: &VerifyConfig) -> Vec<CheckSummary> {
    let mut occ = CheckSummary::new("reduced occupations vs partial trace", TOL_OCCUPATIONS);
    let mut ent = CheckSummary::new("state entropy vs spectral entropy", TOL_ENTROPY);
    let mut rel = CheckSummary::new("cross entropy vs spectral relative entropy", TOL_REL_ENTROPY);
    let mut psd = CheckSummary::new("geof squeezing vs psd search", TOL_GEOF_S);

    let mut rng = ChaCha8Rng::seed_from_u64(0x0edca11);
    for state in grid_states(cfg) {
        let rho = match build_state(&state, cfg.dim) {
            Ok(r) => r,
            Err(e) => {
                let msg = e.to_string();
                occ.record_error(&state, &msg);
                ent.record_error(&state, &msg);
                rel.record_error(&state, &msg);
                continue;
            }
        };

        // thermal parameter of each reduction from the p1/p0 ratio
        let rd = state.reduced_occupations();
        for (mode, expect) in [(Mode::A, rd.v_a_rd()), (Mode::B, rd.v_b_rd())] {
            let red = partial_trace(&rho, mode);
            let v_hat = red.matrix()[(1, 1)] / red.matrix()[(0, 0)];
            occ.record((v_hat - expect).abs(), &state, &format!("mode {mode:?}"));
        }

        match entropy_numeric(&rho, cfg.base) {
            Ok(spectral) => {
                let dev = (spectral - state_entropy(&state, cfg.base)).abs();
                ent.record(dev, &state, "");
            }
            Err(e) => ent.record_error(&state, &e.to_string()),
        }

        let edges = sample_edges(&mut rng, &state, cfg.dim, cfg.edges_per_state);
        if edges.is_empty() && cfg.edges_per_state > 0 {
            rel.record_error(&state, "no admissible edge points in the sampling domain");
        }
        for edge in edges {
            let sigma_state =
                StateParams::new(edge.lambda_tilde(), edge.v_a_tilde(), edge.v_b_tilde()).unwrap();
            let sigma = match build_state(&sigma_state, cfg.dim) {
                Ok(s) => s,
                Err(e) => {
                    rel.record_error(&state, &e.to_string());
                    continue;
                }
            };
            let detail = format!(
                "edge (ṽ_a={:.4}, ṽ_b={:.4})",
                edge.v_a_tilde(),
                edge.v_b_tilde()
            );
            match relative_entropy_numeric(&rho, &sigma, cfg.base) {
                Ok(RelativeEntropy::Finite(spectral)) => {
                    let closed = relative_entropy_to(&state, &edge, cfg.base).unwrap();
                    rel.record((spectral - closed).abs(), &state, &detail);
                }
                Ok(RelativeEntropy::Infinite) => {
                    rel.record_error(&state, &format!("{detail}: spectral value infinite"));
                }
                Err(e) => rel.record_error(&state, &e.to_string()),
            }
        }

        if state.is_entangled() {
            let grid = PsdGridSettings::default();
            match geof_psd_search(&state.covariance(), &grid) {
                Ok(found) => {
                    let expect = state.r() - state.r_noise();
                    psd.record((found.s_star - expect).abs(), &state, "");
                    let cell = grid.fine_half_range * 2.0 / (grid.fine_steps - 1) as f64;
                    let off = found.witness_x.ln().abs().max(found.witness_y.ln().abs());
                    if off > cell + 1e-12 {
                        psd.record_error(
                            &state,
                            &format!("witness ({}, {}) off (1,1)", found.witness_x, found.witness_y),
                        );
                    }
                }
                Err(e) => psd.record_error(&state, &e.to_string()),
            }
        }
    }

    vec![occ, ent, rel, psd]
}

pub fn render_report(checks: &[CheckSummary]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{:<44} max |dev| = {:>9.3e}  tol {:>7.1e}  {}\n",
            c.name,
            c.max_dev,
            c.tol,
            if c.passed() { "PASS" } else { "FAIL" }
        ));
        if !c.passed() {
            for f in c.failures.iter().take(8) {
                out.push_str(&format!("    {f}\n"));
            }
            if c.failures.len() > 8 {
                out.push_str(&format!("    ... {} more\n", c.failures.len() - 8));
            }
        }
    }
    let all = checks.iter().all(|c| c.passed());
    out.push_str(&format!(
        "verification: {}\n",
        if all { "PASS" } else { "FAIL" }
    ));
    out
}

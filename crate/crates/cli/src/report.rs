//! Single-state measure report: everything the library computes for one
//! parameter triple, serializable as JSON.

use gaussent::measures::{coherent_information, geof, state_entropy};
use gaussent::reoe::{optimize_eur, EurOptions};
use gaussent::{Error, LogBase, StateParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EurDiagnosticsReport {
    pub converged: bool,
    pub restarts: usize,
    pub iterations: usize,
    pub grad_norm: f64,
    pub short_circuit: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureReport {
    pub lambda: f64,
    pub v_a: f64,
    pub v_b: f64,
    pub r: f64,
    pub n_a: f64,
    pub n_b: f64,
    pub separable: bool,
    pub entropy: f64,
    pub e_g: f64,
    pub r_g: f64,
    pub e_ur: f64,
    pub eur_diagnostics: EurDiagnosticsReport,
    pub i_a: f64,
    pub i_b: f64,
    pub log_base: String,
}

pub fn base_label(base: LogBase) -> &'static str {
    match base {
        LogBase::Two => "2",
        LogBase::Natural => "e",
    }
}

/// Computes every measure for one state. A non-converged optimizer still
/// yields a report (its best bound, flagged), any other error propagates.
pub fn measure_state(state: &StateParams, base: LogBase) -> Result<MeasureReport, Error> {
    let g = geof(state, base);
    let ci = coherent_information(state, base);
    let eur = match optimize_eur(state, base, &EurOptions::default()) {
        Ok(r) => r,
        Err(Error::NoConvergence { best, .. }) => *best,
        Err(e) => return Err(e),
    };
    Ok(MeasureReport {
        lambda: state.lambda(),
        v_a: state.v_a(),
        v_b: state.v_b(),
        r: state.r(),
        n_a: state.n_a(),
        n_b: state.n_b(),
        separable: !state.is_entangled(),
        entropy: state_entropy(state, base),
        e_g: g.value,
        r_g: g.r_g,
        e_ur: eur.value,
        eur_diagnostics: EurDiagnosticsReport {
            converged: eur.diagnostics.converged,
            restarts: eur.diagnostics.restarts,
            iterations: eur.diagnostics.iterations,
            grad_norm: eur.diagnostics.grad_norm,
            short_circuit: eur.diagnostics.short_circuit,
        },
        i_a: ci.i_a,
        i_b: ci.i_b,
        log_base: base_label(base).to_string(),
    })
}

/// `12` significant digits, locale-independent.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

impl MeasureReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<12} {v}\n"));
        };
        line("lambda", fmt_sig(self.lambda));
        line("v_a", fmt_sig(self.v_a));
        line("v_b", fmt_sig(self.v_b));
        line("r", fmt_sig(self.r));
        line("n_a", fmt_sig(self.n_a));
        line("n_b", fmt_sig(self.n_b));
        line("separable", self.separable.to_string());
        line("entropy", fmt_sig(self.entropy));
        line("e_g", fmt_sig(self.e_g));
        line("r_g", fmt_sig(self.r_g));
        line("e_ur", fmt_sig(self.e_ur));
        line("i_a", fmt_sig(self.i_a));
        line("i_b", fmt_sig(self.i_b));
        line(
            "eur",
            format!(
                "converged={} restarts={} iterations={} grad_norm={:.3e}{}",
                self.eur_diagnostics.converged,
                self.eur_diagnostics.restarts,
                self.eur_diagnostics.iterations,
                self.eur_diagnostics.grad_norm,
                if self.eur_diagnostics.short_circuit {
                    " (separable short-circuit)"
                } else {
                    ""
                }
            ),
        );
        line("log_base", self.log_base.clone());
        out
    }
}

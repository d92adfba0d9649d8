use serde::Serialize;

use super::TransitionMatrix;
use crate::error::{Error, Result};

/// `(π_x/π_u)^{1/2} (1 − Φ²/2)^t`, bounding `|P_u^t(x) − π_x|` for a lazy chain
/// of conductance Φ.
pub fn js_mixing_bound(phi: f64, pi_x: f64, pi_u: f64, t: u64) -> f64 {
    (pi_x / pi_u).sqrt() * (1.0 - phi * phi / 2.0).powf(t as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JsCheck {
    pub checked: u64,
    pub violations: u64,
    /// Largest ratio of observed deviation to bound.
    pub worst_ratio: f64,
}

impl JsCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Compares `|P_u^t(x) − π_x|` against [`js_mixing_bound`] for every `u`, `x`
/// and `t ≤ t_max`. `phi` must be the conductance of the chain `p` itself.
pub fn check_js_bound(p: &TransitionMatrix, phi: f64, t_max: u64) -> Result<JsCheck> {
    if !p.is_lazy() {
        return Err(Error::invalid("the mixing bound assumes a lazy chain"));
    }
    let n = p.len();
    let pi = p.pi();
    let mut out = JsCheck {
        checked: 0,
        violations: 0,
        worst_ratio: 0.0,
    };
    for u in 0..n {
        let mut dist = vec![0.0; n];
        dist[u] = 1.0;
        for t in 0..=t_max {
            for x in 0..n {
                let dev = (dist[x] - pi[x]).abs();
                let bound = js_mixing_bound(phi, pi[x], pi[u], t);
                out.checked += 1;
                if dev > bound * (1.0 + 1e-9) + 1e-15 {
                    out.violations += 1;
                }
                if bound > 0.0 {
                    out.worst_ratio = out.worst_ratio.max(dev / bound);
                }
            }
            dist = p.apply(&dist);
        }
    }
    Ok(out)
}

/// `(1 + γθ/(10t)) N_q e^{−γ²θ/(20t)}`, bounding `Pr(Z_t − tπ(A) ≥ γ)` for
/// the number of visits `Z_t` to a set in `t` steps.
pub fn gillman_bound(theta: f64, nq: f64, t: f64, gamma: f64) -> f64 {
    (1.0 + gamma * theta / (10.0 * t)) * nq * (-gamma * gamma * theta / (20.0 * t)).exp()
}

/// `‖q/√π‖₂` for a point mass at a vertex of stationary mass `pi_x`.
pub fn point_mass_norm(pi_x: f64) -> f64 {
    pi_x.powf(-0.5)
}

/// `‖q/√π‖₂ = (Σ q_v²/π_v)^{1/2}` for a start distribution `q`.
pub fn start_distribution_norm(q: &[f64], pi: &[f64]) -> f64 {
    q.iter().zip(pi).map(|(a, p)| a * a / p).sum::<f64>().sqrt()
}

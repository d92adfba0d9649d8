//! Closed-form leading-order cover-time predictions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{solve_x, DegreeSequence};

/// Exponent thresholds separating the three regimes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeThresholds {
    pub lo: f64,
    pub hi: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self { lo: 0.05, hi: 0.95 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "regime")]
pub enum Regime {
    A,
    B { alpha: f64 },
    C,
}

/// `α̂ = ln max(ν₂, 1) / ln M`.
pub fn alpha_hat(kernel_edges: f64, nu2: f64) -> Result<f64> {
    if kernel_edges.is_nan() || kernel_edges < 2.0 {
        return Err(Error::invalid(format!(
            "M = {kernel_edges} must be at least 2"
        )));
    }
    Ok(nu2.max(1.0).ln() / kernel_edges.ln())
}

pub fn classify(kernel_edges: f64, nu2: f64, th: RegimeThresholds) -> Result<Regime> {
    let a = alpha_hat(kernel_edges, nu2)?;
    Ok(if a <= th.lo {
        Regime::A
    } else if a < th.hi {
        Regime::B { alpha: a }
    } else {
        Regime::C
    })
}

pub fn classify_regime(seq: &DegreeSequence, th: RegimeThresholds) -> Result<Regime> {
    classify(seq.kernel_edges() as f64, seq.nu2() as f64, th)
}

fn bracket(k: u64, d: u32) -> f64 {
    let b = 1.0 / (d as f64 - 2.0);
    1.0 / (k.div_ceil(2) as f64 + b) + 1.0 / ((k + 1).div_ceil(2) as f64 + b)
}

/// Least τ with `(1−α)k + (τ/2) h(k) ≥ 1` for every `k ≥ 1`, where `h(k)` is
/// the midpoint conductance bracket. Each constraint is linear in τ and
/// vacuous once `(1−α)k ≥ 1`.
pub fn phi(alpha: f64, d: u32) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha = {alpha} must lie in (0, 1)"
        )));
    }
    if d < 3 {
        return Err(Error::invalid(format!("d = {d} must be at least 3")));
    }
    let mut best: f64 = 0.0;
    let mut k = 1u64;
    while (1.0 - alpha) * (k as f64) < 1.0 {
        best = best.max(2.0 * (1.0 - (1.0 - alpha) * k as f64) / bracket(k, d));
        k += 1;
    }
    Ok(best)
}

/// `2(d−1)/(d(d−2))`.
pub fn tree_constant(d: u32) -> f64 {
    let d = d as f64;
    2.0 * (d - 1.0) / (d * (d - 2.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PredictionInputs {
    pub kernel_edges: f64,
    pub nu2: f64,
    pub total_edges: f64,
    pub d: u32,
    pub xi: f64,
    pub alpha_hat: f64,
}

/// `value = constant · scale`, where `scale` is `M ln M` in regimes A and B
/// and `m ln² M` in regime C.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub regime: Regime,
    pub constant: f64,
    pub scale: f64,
    pub value: f64,
    pub inputs: PredictionInputs,
}

/// Prediction from real-valued kernel edge count `M`, `ν₂` and minimum kernel
/// degree `d`.
pub fn predict_from_counts(
    kernel_edges: f64,
    nu2: f64,
    d: u32,
    th: RegimeThresholds,
) -> Result<Prediction> {
    if d < 3 {
        return Err(Error::NoKernel);
    }
    let regime = classify(kernel_edges, nu2, th)?;
    let m = kernel_edges + nu2;
    let xi = kernel_edges / m;
    let ln_m = kernel_edges.ln();
    let (constant, scale) = match regime {
        Regime::A => (tree_constant(d), kernel_edges * ln_m),
        Regime::B { alpha } => (tree_constant(d).max(phi(alpha, d)?), kernel_edges * ln_m),
        Regime::C => {
            if xi >= 1.0 {
                return Err(Error::invalid("regime C needs degree-two vertices"));
            }
            (1.0 / (-8.0 * (1.0 - xi).ln()), m * ln_m * ln_m)
        }
    };
    Ok(Prediction {
        regime,
        constant,
        scale,
        value: constant * scale,
        inputs: PredictionInputs {
            kernel_edges,
            nu2,
            total_edges: m,
            d,
            xi,
            alpha_hat: alpha_hat(kernel_edges, nu2)?,
        },
    })
}

pub fn predict_cover_time(seq: &DegreeSequence, th: RegimeThresholds) -> Result<Prediction> {
    let d = seq.min_kernel_degree().ok_or(Error::NoKernel)?;
    predict_from_counts(seq.kernel_edges() as f64, seq.nu2() as f64, d as u32, th)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GnpPrediction {
    pub c: f64,
    pub n: f64,
    pub x: f64,
    /// `cx(2−x)/(4(cx − ln c))`
    pub giant_constant: f64,
    /// `cx²/(16(cx − ln c))`
    pub two_core_constant: f64,
    pub cover_giant: f64,
    pub cover_two_core: f64,
    /// `c²x²e^{−cx} n/2`
    pub nu2: f64,
    /// `cx²(1 − ce^{−cx}) n/2`
    pub kernel_edges: f64,
}

/// Giant and 2-core cover times of G(n, c/n), each `constant · n ln² n`.
pub fn predict_gnp(c: f64, n: f64) -> Result<GnpPrediction> {
    let x = solve_x(c)?;
    if n.is_nan() || n <= 1.0 {
        return Err(Error::invalid(format!("n = {n} must exceed 1")));
    }
    let denom = c * x - c.ln();
    let giant_constant = c * x * (2.0 - x) / (4.0 * denom);
    let two_core_constant = c * x * x / (16.0 * denom);
    let scale = n * n.ln().powi(2);
    let e = (-c * x).exp();
    Ok(GnpPrediction {
        c,
        n,
        x,
        giant_constant,
        two_core_constant,
        cover_giant: giant_constant * scale,
        cover_two_core: two_core_constant * scale,
        nu2: c * c * x * x * e * n / 2.0,
        kernel_edges: c * x * x * (1.0 - c * e) * n / 2.0,
    })
}

/// `(ε/4) n ln²(ε³n)`, the 2-core cover time just above the critical point.
pub fn predict_emerging(epsilon: f64, n: f64) -> Result<f64> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::invalid(format!(
            "epsilon = {epsilon} must be positive"
        )));
    }
    let s = epsilon.powi(3) * n;
    if s.is_nan() || s <= 1.0 {
        return Err(Error::invalid(format!("epsilon^3 n = {s} must exceed 1")));
    }
    Ok(epsilon / 4.0 * n * s.ln().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        let th = RegimeThresholds::default();
        assert_eq!(classify(1000.0, 0.0, th).unwrap(), Regime::A);
        assert_eq!(classify(1000.0, 1e6, th).unwrap(), Regime::C);
        match classify(10_000.0, 100.0, th).unwrap() {
            Regime::B { alpha } => assert!((alpha - 0.5).abs() < 1e-12),
            r => panic!("{r:?}"),
        }
        assert!(classify(1.0, 0.0, th).is_err());
    }

    #[test]
    fn phi_values() {
        assert!((phi(0.5, 3).unwrap() - 1.0).abs() < 1e-12);
        let v = phi(0.99, 3).unwrap() * 8.0 * 0.01;
        assert!((0.9..=1.2).contains(&v), "{v}");
        assert!(phi(1.0, 3).is_err() && phi(0.0, 3).is_err() && phi(0.5, 2).is_err());
        let mut prev = 0.0;
        for i in 1..100 {
            let p = phi(i as f64 / 100.0, 3).unwrap();
            assert!(p >= prev - 1e-12);
            prev = p;
        }
    }

    #[test]
    fn regime_values() {
        let th = RegimeThresholds::default();
        let p = predict_from_counts(1000.0, 0.0, 3, th).unwrap();
        assert!((p.constant - 4.0 / 3.0).abs() < 1e-12);
        assert!((p.value - 4.0 / 3.0 * 1000.0 * 1000f64.ln()).abs() < 1e-6);
        let p = predict_from_counts(10_000.0, 100.0, 3, th).unwrap();
        assert!((p.constant - 4.0 / 3.0).abs() < 1e-12);
        let p = predict_from_counts(1000.0, 1000.0, 3, th).unwrap();
        assert_eq!(p.regime, Regime::C);
        let want = 2000.0 * 1000f64.ln().powi(2) / (8.0 * 2f64.ln());
        assert!((p.value - want).abs() < 1e-6 * want);
        assert!(matches!(
            predict_from_counts(10.0, 0.0, 2, th),
            Err(Error::NoKernel)
        ));
    }

    #[test]
    fn emerging() {
        let v = predict_emerging(0.1, 1e7).unwrap();
        let want = 0.025 * 1e7 * 1e4f64.ln().powi(2);
        assert!((v - want).abs() < 1e-6 * want);
        assert!(predict_emerging(0.01, 10.0).is_err());
    }

    #[test]
    fn gnp_constants() {
        let p = predict_gnp(2.0, 1e6).unwrap();
        assert!(p.two_core_constant > 0.0 && p.giant_constant > p.two_core_constant);
        assert!(predict_gnp(1.0, 1e6).is_err());
    }
}

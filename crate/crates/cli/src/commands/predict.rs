use std::path::PathBuf;

use clap::Args;
use covertime::graph::io::parse_degrees;
use covertime::predict::{
    predict_cover_time, predict_emerging, predict_from_counts, predict_gnp, Prediction, Regime,
    RegimeThresholds,
};
use serde_json::{json, Value};

use super::{num, parse_pairs, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::read_file;

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Degree file.
    #[arg(long, conflicts_with_all = ["counts", "gnp", "emerging"])]
    pub degrees: Option<PathBuf>,
    /// `M=<kernel edges>,nu2=<degree-two count>,d=<min kernel degree>`.
    #[arg(long, conflicts_with_all = ["gnp", "emerging"])]
    pub counts: Option<String>,
    /// `c=<mean degree>,n=<vertices>`.
    #[arg(long, conflicts_with = "emerging")]
    pub gnp: Option<String>,
    /// `eps=<epsilon>,n=<vertices>`.
    #[arg(long)]
    pub emerging: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha_lo: f64,
    #[arg(long, default_value_t = 0.95)]
    pub alpha_hi: f64,
}

pub fn regime_label(r: Regime) -> String {
    match r {
        Regime::A => "A".into(),
        Regime::B { alpha } => format!("B({alpha:.4})"),
        Regime::C => "C".into(),
    }
}

pub fn prediction_row(label: &str, p: &Prediction) -> Vec<Value> {
    vec![
        json!(label),
        json!(regime_label(p.regime)),
        num(p.inputs.alpha_hat),
        num(p.constant),
        num(p.scale),
        num(p.value),
        num(p.inputs.kernel_edges),
        num(p.inputs.nu2),
        num(p.inputs.total_edges),
        json!(p.inputs.d),
        num(p.inputs.xi),
    ]
}

pub const PREDICTION_COLUMNS: [&str; 11] = [
    "quantity",
    "regime",
    "alpha_hat",
    "constant",
    "scale",
    "value",
    "M",
    "nu2",
    "m",
    "d",
    "xi",
];

pub fn run(ctx: &Ctx, a: &PredictArgs) -> CliResult<()> {
    let th = RegimeThresholds {
        lo: a.alpha_lo,
        hi: a.alpha_hi,
    };
    if !(0.0..=th.hi).contains(&th.lo) {
        return Err(CliError::usage("need 0 <= alpha-lo <= alpha-hi"));
    }
    let mut rows = Vec::new();
    if let Some(path) = &a.degrees {
        let seq = parse_degrees(&read_file(path)?)?;
        rows.push(prediction_row("cover_time", &predict_cover_time(&seq, th)?));
    } else if let Some(arg) = &a.counts {
        let v = parse_pairs(arg, &["M", "nu2", "d"], "--counts")?;
        if v[2] < 0.0 || v[2].fract() != 0.0 {
            return Err(CliError::usage("--counts: d must be an integer"));
        }
        rows.push(prediction_row(
            "cover_time",
            &predict_from_counts(v[0], v[1], v[2] as u32, th)?,
        ));
    } else if let Some(arg) = &a.gnp {
        let v = parse_pairs(arg, &["c", "n"], "--gnp")?;
        let p = predict_gnp(v[0], v[1])?;
        let blank = || vec![Value::Null; 5];
        for (q, constant, value) in [
            ("cover_giant", p.giant_constant, p.cover_giant),
            ("cover_two_core", p.two_core_constant, p.cover_two_core),
        ] {
            let mut row = vec![
                json!(q),
                json!("gnp"),
                Value::Null,
                num(constant),
                num(v[1] * v[1].ln().powi(2)),
                num(value),
            ];
            row.extend(blank());
            rows.push(row);
        }
        let mut row = vec![
            json!("two_core_counts"),
            json!("gnp"),
            Value::Null,
            Value::Null,
            Value::Null,
            Value::Null,
        ];
        row.extend([
            num(p.kernel_edges),
            num(p.nu2),
            num(p.kernel_edges + p.nu2),
            Value::Null,
            num(p.kernel_edges / (p.kernel_edges + p.nu2)),
        ]);
        rows.push(row);
    } else if let Some(arg) = &a.emerging {
        let v = parse_pairs(arg, &["eps", "n"], "--emerging")?;
        let value = predict_emerging(v[0], v[1])?;
        let mut row = vec![
            json!("cover_two_core"),
            json!("emerging"),
            Value::Null,
            num(v[0] / 4.0),
            num(value / (v[0] / 4.0)),
            num(value),
        ];
        row.extend(vec![Value::Null; 5]);
        rows.push(row);
    } else {
        return Err(CliError::usage(
            "one of --degrees, --counts, --gnp or --emerging is required",
        ));
    }
    ctx.emit(&PREDICTION_COLUMNS, &rows)
}

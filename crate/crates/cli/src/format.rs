//! JSON and CSV encodings shared by every command.
//!
//! Exact numbers are written as strings (`"-5/4"`) so they survive any JSON
//! reader unchanged; floats use the shortest round-trip representation.

use serde_json::{json, Map, Value};
use vortmetric_core::flow::{ConservationReport, Diagnostics, OrderCheck, Termination, Trajectory};
use vortmetric_core::metricity::{Model, UndeterminedReason, Verdict};
use vortmetric_core::operators::SymbolRule;
use vortmetric_core::{FourierSymbol, Real, TrigPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Shortest round-trip decimal; non-finite values spell themselves out.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        let mut buf = ryu::Buffer::new();
        buf.format_finite(x).to_string()
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// `p/q` for exact values, the shortest decimal for floats.
pub fn real(v: &Real) -> String {
    match v {
        Real::Exact(_) => v.to_string(),
        Real::Float(x) => float(*x),
    }
}

pub fn real_json(v: &Real) -> Value {
    match v {
        Real::Exact(_) => Value::String(v.to_string()),
        Real::Float(x) => float_json(*x),
    }
}

/// Non-finite floats become strings rather than `null`.
pub fn float_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(float(x)))
}

pub fn reason_str(reason: UndeterminedReason) -> &'static str {
    match reason {
        UndeterminedReason::ExclusionSet => "exclusion-set",
        UndeterminedReason::NearExclusion => "near-exclusion",
        UndeterminedReason::OutsideHypothesis => "outside-hypothesis",
    }
}

/// `|k|^a`, with `(+mu)` on the full group.
pub fn symbol(s: &FourierSymbol) -> String {
    let body = match s.rule() {
        SymbolRule::Power(a) => format!("|k|^{}", real(a)),
        SymbolRule::Table(t) => format!("table({} entries)", t.len()),
    };
    match s.domain() {
        vortmetric_core::Domain::FullGroup => format!("{body} (+mu)"),
        vortmetric_core::Domain::ZeroMean => body,
    }
}

/// One-word detail for tables: the route, the undetermined reason, or the
/// symbol.
pub fn verdict_detail(v: &Verdict) -> String {
    match v {
        Verdict::Metric { symbol: s, .. } => symbol(s),
        Verdict::NonMetric { witness } => witness.route.as_str().to_string(),
        Verdict::Undetermined { reason, .. } => reason_str(*reason).to_string(),
    }
}

pub fn verdict_json(model: Model, v: &Verdict) -> Value {
    let mut obj = Map::new();
    obj.insert("model".into(), json!(model.as_str()));
    obj.insert("verdict".into(), json!(v.label()));
    match v {
        Verdict::Metric { b, symbol: s } => {
            obj.insert("b".into(), real_json(b));
            obj.insert("symbol".into(), json!(symbol(s)));
        }
        Verdict::NonMetric { witness } => {
            obj.insert("route".into(), json!(witness.route.as_str()));
            let entries: Vec<Value> =
                witness.entries.iter().map(|e| json!({"label": e.label, "value": real_json(&e.value)})).collect();
            obj.insert("witness".into(), Value::Array(entries));
        }
        Verdict::Undetermined { reason, excluded_set_member } => {
            obj.insert("reason".into(), json!(reason_str(*reason)));
            obj.insert("excluded_set_member".into(), excluded_set_member.as_ref().map_or(Value::Null, real_json));
        }
    }
    obj.insert("exact".into(), json!(v.is_exact()));
    Value::Object(obj)
}

/// Multi-line human rendering: the label, then the witness chain.
pub fn verdict_text(model: Model, v: &Verdict) -> String {
    let mut out = format!("{}: {}", model.as_str(), v.label());
    match v {
        Verdict::Metric { b, symbol: s } => out.push_str(&format!(" (b = {}, symbol {})", real(b), symbol(s))),
        Verdict::NonMetric { witness } => {
            out.push_str(&format!(" [{}]", witness.route.as_str()));
            for e in &witness.entries {
                out.push_str(&format!("\n    {} = {}", e.label, real(&e.value)));
            }
        }
        Verdict::Undetermined { reason, excluded_set_member } => {
            out.push_str(&format!(" ({reason})"));
            if let Some(m) = excluded_set_member {
                out.push_str(&format!("\n    excluded value = {}", real(m)));
            }
        }
    }
    out
}

/// `{"degree": N, "re": [...], "im": [...]}` indexed `k = -N..=N`.
pub fn trig_poly_json(p: &TrigPoly<f64>) -> Value {
    let re: Vec<Value> = p.coeffs().iter().map(|c| float_json(c.re)).collect();
    let im: Vec<Value> = p.coeffs().iter().map(|c| float_json(c.im)).collect();
    json!({"degree": p.degree(), "re": re, "im": im})
}

pub fn trig_poly_from_json(v: &Value) -> Option<TrigPoly<f64>> {
    let degree = v.get("degree")?.as_u64()? as usize;
    let nums = |key: &str| -> Option<Vec<f64>> { v.get(key)?.as_array()?.iter().map(Value::as_f64).collect() };
    let (re, im) = (nums("re")?, nums("im")?);
    if re.len() != 2 * degree + 1 || im.len() != re.len() {
        return None;
    }
    let coeffs = re.into_iter().zip(im).map(|(r, i)| num_complex::Complex::new(r, i)).collect();
    TrigPoly::from_coeffs(coeffs).ok()
}

pub fn diagnostics_json(d: &Diagnostics) -> Value {
    json!({
        "t": float_json(d.t),
        "energy": float_json(d.energy),
        "energy_change": float_json(d.energy_change),
        "mean_u": float_json(d.mean_u),
        "mean_m": float_json(d.mean_m),
        "sup_ux": float_json(d.sup_ux),
        "tail": float_json(d.tail_ratio),
    })
}

pub const DIAGNOSTICS_HEADER: [&str; 7] = ["t", "energy", "energy_change", "mean_u", "mean_m", "sup_ux", "tail"];

pub fn diagnostics_row(d: &Diagnostics) -> [String; 7] {
    [d.t, d.energy, d.energy_change, d.mean_u, d.mean_m, d.sup_ux, d.tail_ratio].map(float)
}

pub fn termination_json(t: &Termination) -> Value {
    match t {
        Termination::Completed => json!({"kind": "completed"}),
        Termination::Blowup { t } => json!({"kind": "blowup", "t": float_json(*t)}),
        Termination::Degenerate { t, reason } => {
            json!({"kind": "degenerate", "t": float_json(*t), "reason": reason.as_str()})
        }
    }
}

pub fn report_json(traj: &Trajectory, rep: &ConservationReport) -> Value {
    json!({
        "energy_drift": float_json(rep.energy_drift),
        "mean_m_drift": float_json(rep.mean_m_drift),
        "mean_u_drift": float_json(rep.mean_u_drift),
        "steps": rep.steps,
        "termination": termination_json(&traj.termination),
    })
}

pub fn order_json(o: &OrderCheck) -> Value {
    json!({
        "coarse_drift": float_json(o.coarse_drift),
        "fine_drift": float_json(o.fine_drift),
        "ratio": float_json(o.ratio),
        "fourth_order": o.fourth_order,
    })
}

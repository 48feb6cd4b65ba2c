//! Plain-text breakdown of a unit's score.

use std::fmt::Write;

use crate::model::{Level, Registry, UnitReport};

/// Renders one row per level with its parameters, `A`, `B`, `G` and
/// renormalized weight, followed by the aggregation line. Numbers on the
/// aggregation line are printed at full precision.
pub fn render_explanation(unit: &UnitReport, registry: &Registry) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "unit {} (reference {})", unit.id, unit.reference);
    for level in Level::ALL {
        let Some(score) = unit.levels.get(&level) else {
            continue;
        };
        if !score.active {
            let _ = writeln!(out, "{:<12} inactive", level.as_str());
            continue;
        }
        let weight = unit.weights.get(&level).copied().unwrap_or(0.0);
        let _ = writeln!(
            out,
            "{:<12} w'={:.6}  A={:.6}  B={:.6}  G={:.6}  (gamma={}, delta={})",
            level.as_str(),
            weight,
            score.a,
            score.b,
            score.g,
            score.gamma,
            score.delta
        );
        let mut rows: Vec<_> = score
            .p
            .iter()
            .map(|(n, v)| (n, v, score.alpha.get(n), "alpha"))
            .chain(score.q.iter().map(|(n, v)| (n, v, score.beta.get(n), "beta")))
            .map(|(n, v, w, kind)| (registry.label(level, n).unwrap_or_else(|| "?".into()), n, v, w, kind))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        for (label, name, value, w, kind) in rows {
            let _ = writeln!(
                out,
                "    {label:<4} {name:<18} {value:.6}   {kind}={:.6}",
                w.copied().unwrap_or(0.0)
            );
        }
    }
    let terms: Vec<String> = unit
        .weights
        .iter()
        .map(|(l, w)| format!("{w} × {}", unit.levels[l].g))
        .collect();
    let _ = writeln!(out, "overall G = {} = {}", terms.join(" + "), unit.g);
    out
}

/// Parses the aggregation line back into `(weight, G)` terms and the total.
pub fn parse_aggregation_line(text: &str) -> Option<(Vec<(f64, f64)>, f64)> {
    let line = text.lines().find(|l| l.starts_with("overall G = "))?;
    let body = line.strip_prefix("overall G = ")?;
    let (sum, total) = body.rsplit_once(" = ")?;
    let terms = sum
        .split(" + ")
        .map(|t| {
            let (w, g) = t.split_once(" × ")?;
            Some((w.trim().parse().ok()?, g.trim().parse().ok()?))
        })
        .collect::<Option<Vec<_>>>()?;
    Some((terms, total.trim().parse().ok()?))
}

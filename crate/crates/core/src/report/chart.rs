//! Minimal SVG line chart: mIoU against prompt budget, one series per strategy.

use std::fmt::Write as _;

use super::SummaryRow;
use crate::session::{SessionStrategy, MAX_BUDGET};

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn color(s: SessionStrategy) -> &'static str {
    match s {
        SessionStrategy::RegionIterative => "#1f77b4",
        SessionStrategy::Box => "#7f7f7f",
        SessionStrategy::ExtremeRefine => "#ff7f0e",
        SessionStrategy::MajorMinorRefine => "#e377c2",
    }
}

fn dash(s: SessionStrategy) -> &'static str {
    match s {
        SessionStrategy::RegionIterative => "",
        SessionStrategy::Box => " stroke-dasharray=\"8 4\"",
        SessionStrategy::ExtremeRefine => " stroke-dasharray=\"2 3\"",
        SessionStrategy::MajorMinorRefine => " stroke-dasharray=\"8 3 2 3\"",
    }
}

fn px(budget: f64) -> f64 {
    LEFT + (budget - 1.0) / f64::from(MAX_BUDGET - 1) * (W - LEFT - RIGHT)
}

fn py(miou: f64) -> f64 {
    TOP + (1.0 - miou.clamp(0.0, 1.0)) * (H - TOP - BOTTOM)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `rows` (all from one dataset). Box rows are drawn as a flat
/// reference line across the budget axis.
pub(crate) fn render(dataset: &str, rows: &[&SummaryRow]) -> String {
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#, (LEFT + W - RIGHT) / 2.0, escape(dataset));

    for i in 0..=5 {
        let v = f64::from(i) / 5.0;
        let y = py(v);
        let _ = writeln!(svg, r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##, W - RIGHT);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.1}</text>"#, LEFT - 6.0, y + 4.0);
    }
    for b in 1..=MAX_BUDGET {
        let x = px(f64::from(b));
        let _ = writeln!(svg, r#"<text x="{x:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{b}</text>"#, H - BOTTOM + 16.0);
    }
    let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">prompt budget</text>"#, (LEFT + W - RIGHT) / 2.0, H - 12.0);
    let _ = writeln!(svg, r#"<text x="16" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.2})">mIoU</text>"#, H / 2.0, H / 2.0);
    let _ = writeln!(svg, r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#, W - LEFT - RIGHT, H - TOP - BOTTOM);

    let mut strategies: Vec<SessionStrategy> = rows.iter().map(|r| r.strategy).collect();
    strategies.sort();
    strategies.dedup();
    for (slot, &s) in strategies.iter().enumerate() {
        let mut series: Vec<&SummaryRow> = rows.iter().copied().filter(|r| r.strategy == s).collect();
        series.sort_by_key(|r| r.budget);
        let points: Vec<(f64, f64, f64)> = if s == SessionStrategy::Box {
            let r = series[0];
            vec![(1.0, r.stats.mean, r.stats.std), (f64::from(MAX_BUDGET), r.stats.mean, r.stats.std)]
        } else {
            series.iter().map(|r| (f64::from(r.budget), r.stats.mean, r.stats.std)).collect()
        };
        let mut band = String::new();
        for &(b, m, sd) in &points {
            let _ = write!(band, "{:.2},{:.2} ", px(b), py(m + sd));
        }
        for &(b, m, sd) in points.iter().rev() {
            let _ = write!(band, "{:.2},{:.2} ", px(b), py(m - sd));
        }
        let _ = writeln!(svg, r#"<polygon points="{}" fill="{}" fill-opacity="0.2" stroke="none"/>"#, band.trim_end(), color(s));
        let line: Vec<String> = points.iter().map(|&(b, m, _)| format!("{:.2},{:.2}", px(b), py(m))).collect();
        let _ = writeln!(svg, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"{}/>"#, line.join(" "), color(s), dash(s));
        if s != SessionStrategy::Box {
            for &(b, m, _) in &points {
                let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#, px(b), py(m), color(s));
            }
        }
        let ly = TOP + 16.0 + 20.0 * slot as f64;
        let lx = W - RIGHT + 12.0;
        let _ = writeln!(svg, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="2"{}/>"#, lx + 24.0, color(s), dash(s));
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#, lx + 30.0, ly + 4.0, s.as_str());
    }
    svg.push_str("</svg>\n");
    svg
}

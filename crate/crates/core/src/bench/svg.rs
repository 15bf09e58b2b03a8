use std::fmt::Write as _;

use super::report::ScalingSummary;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const PAD: f64 = 60.0;

/// Log-log polyline plot of the two counters against M.
pub fn scaling_svg(summary: &ScalingSummary) -> String {
    let xs: Vec<f64> = summary.rows.iter().map(|r| (r.m as f64).log10()).collect();
    let series = [
        ("classical neighbor scans", "#1f77b4", summary.classical_slope, summary.rows.iter().map(|r| r.classical_scans).collect::<Vec<_>>()),
        ("quantum oracle queries", "#d62728", summary.quantum_slope, summary.rows.iter().map(|r| r.quantum_queries).collect()),
    ];
    let ys: Vec<f64> = series.iter().flat_map(|s| s.3.iter().map(|&v| (v.max(1) as f64).log10())).collect();
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * PAD);
    let py = |y: f64| HEIGHT - PAD - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{l},{t} L{l},{b} L{r},{b}" stroke="black" fill="none"/>"#,
        l = PAD,
        t = PAD,
        b = HEIGHT - PAD,
        r = WIDTH - PAD
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">log10 M (training points)</text>"#, WIDTH / 2.0, HEIGHT - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="15" y="{y}" text-anchor="middle" transform="rotate(-90 15 {y})">log10 count (neighbor scans / oracle queries)</text>"#,
        y = HEIGHT / 2.0
    );
    for (x, r) in xs.iter().zip(&summary.rows) {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#, px(*x), HEIGHT - PAD + 16.0, r.m);
    }
    for (k, (label, color, slope, values)) in series.iter().enumerate() {
        let points: Vec<String> = xs
            .iter()
            .zip(values)
            .map(|(&x, &v)| format!("{:.1},{:.1}", px(x), py((v.max(1) as f64).log10())))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" stroke="{color}" stroke-width="2" fill="none"/>"#, points.join(" "));
        for p in &points {
            let (cx, cy) = p.split_once(',').unwrap_or(("0", "0"));
            let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>"#);
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{label} (slope {slope:.3})</text>"#,
            PAD + 10.0,
            PAD - 30.0 + 16.0 * k as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        (lo - 0.5, lo + 0.5)
    } else {
        (lo, hi)
    }
}

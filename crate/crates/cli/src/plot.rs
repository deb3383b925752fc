//! Minimal self-contained SVG line plots and heatmaps.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, Option<f64>)>,
    pub dashed: bool,
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(svg: &mut String, title: &str, width: f64) {
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{H}" viewBox="0 0 {width} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        width / 2.0,
        escape(title)
    );
}

fn axes(svg: &mut String, x0: f64, x1: f64, (xlo, xhi): (f64, f64), (ylo, yhi): (f64, f64), xlabel: &str, ylabel: &str) {
    let (py0, py1) = (H - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        r#"<rect x="{x0}" y="{py1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        py0 - py1
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let x = x0 + f * (x1 - x0);
        let y = py0 - f * (py0 - py1);
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            py0 + 16.0,
            tick(xlo + f * (xhi - xlo))
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            tick(ylo + f * (yhi - ylo))
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        H - 12.0,
        escape(xlabel)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        (py0 + py1) / 2.0,
        (py0 + py1) / 2.0,
        escape(ylabel)
    );
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{:.4}", v).trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Line plot; absent samples break the line.
pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let xr = range(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let yr = range(series.iter().flat_map(|s| s.points.iter().filter_map(|p| p.1)));
    let (x0, x1) = (LEFT, W - RIGHT);
    let px = |x: f64| x0 + (x - xr.0) / (xr.1 - xr.0) * (x1 - x0);
    let py = |y: f64| (H - BOTTOM) - (y - yr.0) / (yr.1 - yr.0) * (H - BOTTOM - TOP);

    let mut svg = String::new();
    header(&mut svg, title, W);
    axes(&mut svg, x0, x1, xr, yr, xlabel, ylabel);
    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = if s.dashed { r#" stroke-dasharray="5,4""# } else { "" };
        for run in s.points.split(|p| p.1.is_none()).filter(|r| !r.is_empty()) {
            let pts: Vec<String> = run
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y.unwrap_or_default())))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                pts.join(" ")
            );
        }
        let ly = TOP + 16.0 + 16.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"{dash}/>"#,
            x1 - 110.0,
            x1 - 90.0
        );
        let _ = writeln!(svg, r#"<text x="{:.1}" y="{:.1}">{}</text>"#, x1 - 85.0, ly + 4.0, escape(s.label));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Viridis-like colour ramp on [0, 1].
fn ramp(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |p: f64, q: f64| (p + f * (q - p)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

pub struct Panel<'a> {
    pub label: &'a str,
    /// Row-major over (xs, ys): `values[i * ys.len() + j]` sits at (xs[i], ys[j]).
    pub values: Vec<Option<f64>>,
}

/// Side-by-side heatmaps sharing axes; absent cells are grey.
pub fn heatmaps(title: &str, xs: &[f64], ys: &[f64], xlabel: &str, ylabel: &str, panels: &[Panel]) -> String {
    let width = W * panels.len().max(1) as f64;
    let mut svg = String::new();
    header(&mut svg, title, width);
    let xr = range(xs.iter().copied());
    let yr = range(ys.iter().copied());
    let (nx, ny) = (xs.len().max(1), ys.len().max(1));
    for (k, panel) in panels.iter().enumerate() {
        let x0 = k as f64 * W + LEFT;
        let x1 = (k + 1) as f64 * W - RIGHT - 40.0;
        let (lo, hi) = range(panel.values.iter().flatten().copied());
        let cw = (x1 - x0) / nx as f64;
        let ch = (H - BOTTOM - TOP) / ny as f64;
        for i in 0..xs.len() {
            for j in 0..ys.len() {
                let fill = match panel.values.get(i * ys.len() + j).copied().flatten() {
                    Some(v) => ramp((v - lo) / (hi - lo)),
                    None => "#bbbbbb".to_string(),
                };
                let _ = writeln!(
                    svg,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                    x0 + i as f64 * cw,
                    H - BOTTOM - (j + 1) as f64 * ch,
                    cw + 0.05,
                    ch + 0.05
                );
            }
        }
        axes(&mut svg, x0, x1, xr, yr, xlabel, ylabel);
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            TOP - 4.0,
            escape(panel.label)
        );
        // Colour bar.
        let bx = x1 + 10.0;
        for s in 0..50 {
            let t = s as f64 / 49.0;
            let _ = writeln!(
                svg,
                r#"<rect x="{bx:.1}" y="{:.2}" width="12" height="{:.2}" fill="{}"/>"#,
                H - BOTTOM - (s + 1) as f64 * (H - BOTTOM - TOP) / 50.0,
                (H - BOTTOM - TOP) / 50.0 + 0.05,
                ramp(t)
            );
        }
        let _ = writeln!(svg, r#"<text x="{bx:.1}" y="{:.1}">{}</text>"#, TOP - 4.0, tick(hi));
        let _ = writeln!(svg, r#"<text x="{bx:.1}" y="{:.1}">{}</text>"#, H - BOTTOM + 14.0, tick(lo));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp(0.0), "#440154");
        assert_eq!(ramp(1.0), "#fde725");
        assert_eq!(ramp(2.0), ramp(1.0));
    }

    #[test]
    fn gaps_split_polylines() {
        let s = Series {
            label: "S",
            points: vec![(0.0, Some(1.0)), (1.0, None), (2.0, Some(2.0)), (3.0, Some(1.0))],
            dashed: false,
        };
        let svg = line_plot("t", "x", "y", &[s]);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn heatmap_marks_missing_cells() {
        let p = Panel {
            label: "S12",
            values: vec![Some(0.1), None, Some(0.3), Some(0.2)],
        };
        let svg = heatmaps("t", &[0.0, 1.0], &[0.0, 1.0], "x", "y", &[p]);
        assert_eq!(svg.matches("#bbbbbb").count(), 1);
    }
}

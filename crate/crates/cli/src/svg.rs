//! Static SVG figures. Presentation only: coordinates are rounded and no
//! check reads these files.

use std::fmt::Write;

use rtxy::phasemap::{hyperbola, BoundaryCurve, PhaseClass, PhaseGrid};

const PANEL: f64 = 300.0;
const MARGIN: f64 = 55.0;
const PALETTE: [&str; 6] = ["#1f4e9c", "#c0392b", "#111111", "#2a9d8f", "#8e44ad", "#d68910"];

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn class_fill(c: PhaseClass) -> &'static str {
    match c {
        PhaseClass::Unbroken => "#dce9f5",
        PhaseClass::Broken => "#f2a07b",
        PhaseClass::Exceptional => "#6a3d9a",
    }
}

/// A plotting rectangle with data ranges.
struct Frame {
    left: f64,
    top: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(left: f64, top: f64, x: (f64, f64), y: (f64, f64)) -> Frame {
        let widen = |(a, b): (f64, f64)| if b > a { (a, b) } else { (a - 0.5, a + 0.5) };
        Frame { left, top, x: widen(x), y: widen(y) }
    }

    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x.0) / (self.x.1 - self.x.0) * PANEL
    }

    fn py(&self, y: f64) -> f64 {
        self.top + PANEL - (y - self.y.0) / (self.y.1 - self.y.0) * PANEL
    }

    fn axes(&self, out: &mut String, title: &str, x_label: &str, y_label: &str) {
        let (l, t) = (self.left, self.top);
        let _ = writeln!(out, r##"<rect x="{l:.1}" y="{t:.1}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#000"/>"##);
        for i in 0..=4 {
            let fx = self.x.0 + (self.x.1 - self.x.0) * i as f64 / 4.0;
            let fy = self.y.0 + (self.y.1 - self.y.0) * i as f64 / 4.0;
            let (cx, cy) = (self.px(fx), self.py(fy));
            let bottom = t + PANEL;
            let _ = writeln!(
                out,
                r##"<line x1="{cx:.1}" y1="{bottom:.1}" x2="{cx:.1}" y2="{:.1}" stroke="#000"/><text x="{cx:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}</text>"##,
                bottom + 4.0,
                bottom + 16.0,
                tick(fx)
            );
            let _ = writeln!(
                out,
                r##"<line x1="{:.1}" y1="{cy:.1}" x2="{l:.1}" y2="{cy:.1}" stroke="#000"/><text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{}</text>"##,
                l - 4.0,
                l - 6.0,
                cy + 3.0,
                tick(fy)
            );
        }
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"##,
            l + PANEL / 2.0,
            t - 8.0,
            escape(title)
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"##,
            l + PANEL / 2.0,
            t + PANEL + 32.0,
            escape(x_label)
        );
        let (yx, yy) = (l - 40.0, t + PANEL / 2.0);
        let _ = writeln!(
            out,
            r##"<text x="{yx:.1}" y="{yy:.1}" font-size="12" text-anchor="middle" transform="rotate(-90 {yx:.1} {yy:.1})">{}</text>"##,
            escape(y_label)
        );
    }

    fn polyline(&self, out: &mut String, points: &[(f64, f64)], stroke: &str, dash: bool) {
        if points.is_empty() {
            return;
        }
        let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y))).collect();
        let dash = if dash { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1.6"{dash}/>"##,
            coords.join(" ")
        );
    }

    fn marker(&self, out: &mut String, x: f64, y: f64, stroke: &str, filled: bool) {
        let fill = if filled { stroke } else { "none" };
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.6" fill="{fill}" stroke="{stroke}"/>"##,
            self.px(x),
            self.py(y)
        );
    }
}

fn tick(x: f64) -> String {
    let s = format!("{x:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n{body}</svg>\n"
    )
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)))
}

/// One heat-map panel per chain length, with the finite-N boundary and the
/// hyperbola `λ² − γ² = 1` drawn over the classification.
pub fn phase_map(panels: &[(PhaseGrid, BoundaryCurve)]) -> String {
    let mut body = String::new();
    for (i, (grid, boundary)) in panels.iter().enumerate() {
        let frame = Frame::new(
            MARGIN + i as f64 * (PANEL + MARGIN + 10.0),
            30.0,
            (grid.lambda.min, grid.lambda.max),
            (grid.gamma.min, grid.gamma.max),
        );
        let step = |axis: &rtxy::phasemap::Axis| {
            if axis.resolution > 1 {
                (axis.max - axis.min) / (axis.resolution - 1) as f64
            } else {
                1.0
            }
        };
        let (dl, dg) = (step(&grid.lambda), step(&grid.gamma));
        for row in 0..grid.gamma.resolution {
            for col in 0..grid.lambda.resolution {
                let p = grid.at(row, col);
                let (x0, x1) = (frame.px((p.lambda - dl / 2.0).max(frame.x.0)), frame.px((p.lambda + dl / 2.0).min(frame.x.1)));
                let (y0, y1) = (frame.py((p.gamma + dg / 2.0).min(frame.y.1)), frame.py((p.gamma - dg / 2.0).max(frame.y.0)));
                let _ = writeln!(
                    body,
                    r##"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"##,
                    x1 - x0,
                    y1 - y0,
                    class_fill(p.classification)
                );
            }
        }
        let inside = |&(l, g): &(f64, f64)| l >= frame.x.0 && l <= frame.x.1 && g >= frame.y.0 && g <= frame.y.1;
        let finite: Vec<(f64, f64)> =
            boundary.gamma_grid.iter().zip(&boundary.lambda_c).map(|(&g, &l)| (l, g)).filter(inside).collect();
        frame.polyline(&mut body, &finite, "#111", false);
        let samples = 200;
        let curve: Vec<(f64, f64)> = (0..=samples)
            .map(|s| {
                let g = frame.y.0 + (frame.y.1 - frame.y.0) * s as f64 / samples as f64;
                (hyperbola(g), g)
            })
            .filter(inside)
            .collect();
        frame.polyline(&mut body, &curve, "#0a7d36", true);
        frame.axes(&mut body, &format!("N = {}", grid.n), "λ", "γ");
    }
    let legend_y = 30.0 + PANEL + 50.0;
    let entries = [
        ("unbroken", class_fill(PhaseClass::Unbroken)),
        ("broken", class_fill(PhaseClass::Broken)),
        ("exceptional", class_fill(PhaseClass::Exceptional)),
    ];
    for (i, (name, fill)) in entries.iter().enumerate() {
        let x = MARGIN + i as f64 * 110.0;
        let _ = writeln!(
            body,
            r##"<rect x="{x:.1}" y="{legend_y:.1}" width="12" height="12" fill="{fill}" stroke="#000"/><text x="{:.1}" y="{:.1}" font-size="11">{name}</text>"##,
            x + 16.0,
            legend_y + 10.0
        );
    }
    let x = MARGIN + 3.0 * 110.0;
    let _ = writeln!(
        body,
        r##"<line x1="{x:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#111" stroke-width="1.6"/><text x="{:.1}" y="{:.1}" font-size="11">finite-N boundary</text>"##,
        legend_y + 6.0,
        x + 20.0,
        legend_y + 6.0,
        x + 24.0,
        legend_y + 10.0
    );
    let x = x + 140.0;
    let _ = writeln!(
        body,
        r##"<line x1="{x:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#0a7d36" stroke-width="1.6" stroke-dasharray="6 4"/><text x="{:.1}" y="{:.1}" font-size="11">λ² − γ² = 1</text>"##,
        legend_y + 6.0,
        x + 20.0,
        legend_y + 6.0,
        x + 24.0,
        legend_y + 10.0
    );
    let width = MARGIN + panels.len().max(1) as f64 * (PANEL + MARGIN + 10.0);
    document(width.max(760.0), legend_y + 30.0, &body)
}

/// One sampled curve of a coupling panel.
pub struct KappaSeries {
    pub label: String,
    pub approx: Vec<(f64, f64)>,
    /// Exact values per sector symbol.
    pub exact: Vec<(&'static str, Vec<(f64, f64)>)>,
}

/// Panels `κ(0) … κ(3)`: approximants as lines, exact sums as markers
/// (filled for η = +, hollow for η = −).
pub fn kappa_panels(panels: &[Vec<KappaSeries>]) -> String {
    let mut body = String::new();
    for (d, series) in panels.iter().enumerate() {
        let (col, row) = (d % 2, d / 2);
        let all = series.iter().flat_map(|s| s.approx.iter().chain(s.exact.iter().flat_map(|e| e.1.iter())));
        let xs = range(all.clone().map(|p| p.0));
        let ys = range(all.map(|p| p.1));
        let pad = 0.05 * (ys.1 - ys.0).max(1e-12);
        let frame = Frame::new(
            MARGIN + col as f64 * (PANEL + MARGIN + 10.0),
            30.0 + row as f64 * (PANEL + 70.0),
            xs,
            (ys.0 - pad, ys.1 + pad),
        );
        for (i, s) in series.iter().enumerate() {
            frame.polyline(&mut body, &s.approx, color(i), false);
            for (sector, points) in &s.exact {
                for &(x, y) in points {
                    frame.marker(&mut body, x, y, color(i), *sector == "+");
                }
            }
        }
        frame.axes(&mut body, &format!("κ({d})"), "λ", "");
    }
    let legend_y = 30.0 + 2.0 * (PANEL + 70.0) - 20.0;
    if let Some(first) = panels.first() {
        for (i, s) in first.iter().enumerate() {
            let x = MARGIN + i as f64 * 120.0;
            let _ = writeln!(
                body,
                r##"<line x1="{x:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{c}" stroke-width="1.6"/><circle cx="{:.1}" cy="{:.1}" r="2.6" fill="{c}"/><text x="{:.1}" y="{:.1}" font-size="11">{}</text>"##,
                legend_y,
                x + 20.0,
                legend_y,
                x + 10.0,
                legend_y,
                x + 24.0,
                legend_y + 4.0,
                escape(&s.label),
                c = color(i)
            );
        }
    }
    document(MARGIN + 2.0 * (PANEL + MARGIN + 10.0), legend_y + 20.0, &body)
}

/// Energy levels drawn as horizontal ticks: for each group (chain length) a
/// column per spectrum.
pub fn level_chart(groups: &[(String, Vec<(&str, Vec<f64>)>)]) -> String {
    let ys = range(groups.iter().flat_map(|g| g.1.iter().flat_map(|c| c.1.iter().copied())));
    let pad = 0.04 * (ys.1 - ys.0).max(1e-12);
    let columns: usize = groups.iter().map(|g| g.1.len()).sum::<usize>() + groups.len().saturating_sub(1);
    let frame = Frame::new(MARGIN, 30.0, (0.0, columns.max(1) as f64), (ys.0 - pad, ys.1 + pad));
    let mut body = String::new();
    let mut slot = 0.0;
    for (label, cols) in groups {
        let start = slot;
        for (i, (_, levels)) in cols.iter().enumerate() {
            for &e in levels {
                let _ = writeln!(
                    body,
                    r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.2"/>"##,
                    frame.px(slot + 0.15),
                    frame.px(slot + 0.85),
                    if i == 0 { "#111" } else { "#1fa2d6" },
                    y = frame.py(e)
                );
            }
            slot += 1.0;
        }
        let _ = writeln!(
            body,
            r##"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"##,
            frame.px((start + slot) / 2.0),
            30.0 + PANEL + 16.0,
            escape(label)
        );
        slot += 1.0;
    }
    let names: Vec<&str> = groups.first().map(|g| g.1.iter().map(|c| c.0).collect()).unwrap_or_default();
    let t = 30.0;
    let _ = writeln!(body, r##"<rect x="{MARGIN:.1}" y="{t:.1}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#000"/>"##);
    for i in 0..=4 {
        let fy = frame.y.0 + (frame.y.1 - frame.y.0) * i as f64 / 4.0;
        let cy = frame.py(fy);
        let _ = writeln!(
            body,
            r##"<line x1="{:.1}" y1="{cy:.1}" x2="{MARGIN:.1}" y2="{cy:.1}" stroke="#000"/><text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{}</text>"##,
            MARGIN - 4.0,
            MARGIN - 6.0,
            cy + 3.0,
            tick(fy)
        );
    }
    let legend_y = t + PANEL + 40.0;
    for (i, name) in names.iter().enumerate() {
        let x = MARGIN + i as f64 * 140.0;
        let _ = writeln!(
            body,
            r##"<line x1="{x:.1}" y1="{legend_y:.1}" x2="{:.1}" y2="{legend_y:.1}" stroke="{}" stroke-width="1.6"/><text x="{:.1}" y="{:.1}" font-size="11">{}</text>"##,
            x + 20.0,
            if i == 0 { "#111" } else { "#1fa2d6" },
            x + 24.0,
            legend_y + 4.0,
            escape(name)
        );
    }
    document(MARGIN + PANEL + 30.0, legend_y + 20.0, &body)
}

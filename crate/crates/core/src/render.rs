//! Static SVG drawing of a packing.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::model::{evaluate, Instance, Packing};

const CELL_W: f64 = 60.0;
const STRIP_H: f64 = 240.0;
const MARGIN: f64 = 30.0;
/// Headroom above the capacity line so overfull cells stay visible.
const HEADROOM: f64 = 0.25;

#[derive(Clone, Copy, Debug, Default)]
pub struct RenderOptions {
    /// Draw even if some cell exceeds the strip capacity.
    pub force: bool,
}

/// Fill colour of chart `id`: hues spaced by the golden angle.
pub fn chart_fill(id: usize) -> String {
    let hue = (id as f64 * 137.507_764) % 360.0;
    format!("hsl({hue:.1},65%,60%)")
}

pub fn render_svg(instance: &Instance, packing: &Packing, opts: RenderOptions) -> Result<String> {
    let report = evaluate(instance, packing)?;
    if !report.feasible && !opts.force {
        let (cell, load) = report.violations[0];
        return Err(Error::Infeasible { cell, load: load.to_string() });
    }
    let cells = packing
        .start_cells()
        .iter()
        .zip(instance.charts())
        .map(|(&s, c)| s + c.width() as u32 - 1)
        .max()
        .unwrap_or(0);
    let max_load = report.cell_loads.values().map(|h| h.to_f64()).fold(1.0, f64::max);
    let top = max_load.max(1.0 + HEADROOM);
    let width = 2.0 * MARGIN + cells as f64 * CELL_W;
    let height = 2.0 * MARGIN + top * STRIP_H;
    let base = MARGIN + top * STRIP_H;
    let y = |h: f64| base - h * STRIP_H;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<title>length={} density={:.6} feasible={}</title>"#,
        report.length, report.density, report.feasible
    );
    out.push_str("<g class=\"grid\" stroke=\"#bbb\" stroke-width=\"1\">\n");
    for k in 0..=cells {
        let x = MARGIN + k as f64 * CELL_W;
        let _ = writeln!(out, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{base}"/>"#, y(top));
    }
    out.push_str("</g>\n<g class=\"bars\" stroke=\"#333\" stroke-width=\"0.5\">\n");

    // stack in ascending chart id within each cell
    let mut level = vec![0.0f64; cells as usize + 1];
    for chart in instance.charts() {
        let start = packing.start(chart.id());
        for (k, h) in chart.heights().iter().enumerate() {
            let cell = start as usize + k;
            let h = h.to_f64();
            let x = MARGIN + (cell - 1) as f64 * CELL_W;
            let _ = writeln!(
                out,
                r#"<rect class="chart-{}" x="{x}" y="{:.3}" width="{CELL_W}" height="{:.3}" fill="{}"/>"#,
                chart.id(),
                y(level[cell] + h),
                h * STRIP_H,
                chart_fill(chart.id())
            );
            level[cell] += h;
        }
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r##"<line class="capacity" x1="{MARGIN}" y1="{y1}" x2="{x2}" y2="{y1}" stroke="#c00" stroke-width="2" stroke-dasharray="6 4"/>"##,
        y1 = y(1.0),
        x2 = MARGIN + cells as f64 * CELL_W
    );
    out.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n");
    for k in 1..=cells {
        let x = MARGIN + (k as f64 - 0.5) * CELL_W;
        let _ = writeln!(out, r#"<text x="{x}" y="{}">{k}</text>"#, base + 18.0);
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

//! Deterministic output formatting: fixed-precision floats, CSV, and the
//! static log-log SVG plot.

use systolab::families::FreedomRow;

/// Floats at 9 significant digits, plain notation in the human range,
/// scientific outside it. Deterministic across runs.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..9).contains(&exp) {
        format!("{:.8e}", x)
    } else {
        let decimals = (8 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

pub const CSV_HEADER: &str = "j,volume,sys1_bound,sysk_bound,ratio,bound_kind";

pub fn freedom_csv(rows: &[FreedomRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.j,
            fmt9(r.volume),
            fmt9(r.sys1_bound),
            fmt9(r.sysk_bound),
            fmt9(r.ratio),
            r.bound_kind
        ));
    }
    out
}

pub fn freedom_text(model: &str, rows: &[FreedomRow]) -> String {
    let mut out = format!("freedom table ({})\n{}\n", model, CSV_HEADER.replace(',', "  "));
    for r in rows {
        out.push_str(&format!(
            "{}  {}  {}  {}  {}  {}\n",
            r.j,
            fmt9(r.volume),
            fmt9(r.sys1_bound),
            fmt9(r.sysk_bound),
            fmt9(r.ratio),
            r.bound_kind
        ));
    }
    out
}

/// Static log-log plot of ratio against j: one polyline, labeled axes,
/// no interactivity.
pub fn freedom_svg(model: &str, rows: &[FreedomRow]) -> String {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.j > 0 && r.ratio > 0.0)
        .map(|r| ((r.j as f64).log10(), r.ratio.log10()))
        .collect();
    let (w, h) = (640.0, 480.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 30.0, 50.0);
    let (xmin, xmax) = span(pts.iter().map(|p| p.0));
    let (ymin, ymax) = span(pts.iter().map(|p| p.1));
    let sx = |x: f64| ml + (x - xmin) / (xmax - xmin).max(1e-12) * (w - ml - mr);
    let sy = |y: f64| h - mb - (y - ymin) / (ymax - ymin).max(1e-12) * (h - mt - mb);
    let poly: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"black\"/>\n",
        y = h - mb,
        x2 = w - mr
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{y2}\" stroke=\"black\"/>\n",
        y2 = h - mb
    ));
    svg.push_str(&format!(
        "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\" font-size=\"14\">log10 j</text>\n",
        (ml + w - mr) / 2.0,
        h - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.0}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 {:.0})\">log10 ratio</text>\n",
        (mt + h - mb) / 2.0,
        (mt + h - mb) / 2.0
    ));
    for (v, anchor) in [(xmin, "start"), (xmax, "end")] {
        svg.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"{anchor}\" font-size=\"12\">{:.2}</text>\n",
            sx(v),
            h - mb + 18.0,
            v
        ));
    }
    for v in [ymin, ymax] {
        svg.push_str(&format!(
            "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"end\" font-size=\"12\">{:.2}</text>\n",
            ml - 6.0,
            sy(v) + 4.0,
            v
        ));
    }
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>\n",
        poly.join(" ")
    ));
    svg.push_str(&format!(
        "<text x=\"{:.0}\" y=\"{mt}\" text-anchor=\"end\" font-size=\"12\">{model}</text>\n",
        w - mr
    ));
    svg.push_str("</svg>\n");
    svg
}

fn span(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

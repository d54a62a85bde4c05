//! Deterministic SVG plots: barcodes over the t-axis and level-set heatmaps.

use std::fmt::Write;

use crate::barcode::Barcode;
use crate::blaschke::{time_of_threshold, BlaschkeProduct};
use crate::hyperbolic::ComplexPoint;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const ROW: f64 = 18.0;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf"];

/// Bars (expanded by multiplicity) as horizontal segments over the t-axis; infinite bars run
/// to the right edge and end in an arrow.
pub fn barcode_svg(barcode: &Barcode) -> String {
    let bars: Vec<_> = barcode.expanded().into_iter().map(|(_, b)| b).collect();
    let t_max = bars.iter().filter(|b| !b.is_infinite()).map(|b| b.death).fold(0.0, f64::max).max(1.0) * 1.15;
    let plot = WIDTH - 2.0 * MARGIN;
    let x = |t: f64| MARGIN + plot * t.min(t_max) / t_max;
    let height = 2.0 * MARGIN + ROW * bars.len().max(1) as f64;
    let axis_y = height - MARGIN + 6.0;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#).unwrap();
    s.push_str(r#"<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>"#);
    s.push('\n');
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (i, bar) in bars.iter().enumerate() {
        let y = MARGIN + ROW * (i as f64 + 0.5);
        if bar.is_infinite() {
            writeln!(
                s,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="3" marker-end="url(#arrow)"/>"#,
                x(bar.birth),
                WIDTH - MARGIN - 6.0
            )
            .unwrap();
        } else {
            writeln!(
                s,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="3"/>"#,
                x(bar.birth),
                x(bar.death),
                PALETTE[i % PALETTE.len()]
            )
            .unwrap();
        }
    }
    writeln!(s, r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="gray"/>"#, WIDTH - MARGIN).unwrap();
    for k in 0..=5 {
        let t = t_max * k as f64 / 5.0;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{t:.3}</text>"#, x(t), axis_y + 14.0).unwrap();
    }
    writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">t</text>"#, WIDTH - MARGIN, axis_y + 28.0).unwrap();
    s.push_str("</svg>\n");
    s
}

/// `|B|` as a grayscale heatmap on a `display x display` lattice, with the boundary of
/// `{|B| < theta}` outlined for every threshold.
pub fn scan_svg(b: &BlaschkeProduct, thresholds: &[f64], display: usize) -> String {
    let side = 2.0 / display as f64;
    let scale = (WIDTH - 2.0 * MARGIN) / display as f64;
    let limit = 1.0 - 1.5 / display as f64;
    let value = |ix: isize, iy: isize| -> Option<f64> {
        if ix < 0 || iy < 0 || ix >= display as isize || iy >= display as isize {
            return None;
        }
        let z = ComplexPoint::new(-1.0 + (ix as f64 + 0.5) * side, -1.0 + (iy as f64 + 0.5) * side);
        (z.norm() < limit).then(|| b.modulus_unchecked(z))
    };
    let values: Vec<Option<f64>> = (0..display * display).map(|k| value((k % display) as isize, (k / display) as isize)).collect();
    let at = |ix: isize, iy: isize| -> Option<f64> {
        if ix < 0 || iy < 0 || ix >= display as isize || iy >= display as isize {
            None
        } else {
            values[iy as usize * display + ix as usize]
        }
    };
    // Screen y grows downwards; the disk's imaginary axis grows upwards.
    let px = |ix: f64| MARGIN + ix * scale;
    let py = |iy: f64| MARGIN + (display as f64 - iy) * scale;
    let height = WIDTH + 20.0 * thresholds.len() as f64;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    s.push_str(r#"<g shape-rendering="crispEdges">"#);
    s.push('\n');
    for iy in 0..display as isize {
        for ix in 0..display as isize {
            if let Some(v) = at(ix, iy) {
                let level = (v.clamp(0.0, 1.0) * 255.0).round() as u8;
                writeln!(
                    s,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({level},{level},{level})"/>"#,
                    px(ix as f64),
                    py(iy as f64 + 1.0),
                    scale,
                    scale
                )
                .unwrap();
            }
        }
    }
    s.push_str("</g>\n");
    for (k, &theta) in thresholds.iter().enumerate() {
        let inside = |ix: isize, iy: isize| at(ix, iy).is_some_and(|v| v < theta);
        let mut d = String::new();
        for iy in 0..display as isize {
            for ix in 0..display as isize {
                if !inside(ix, iy) {
                    continue;
                }
                let (x0, y0) = (ix as f64, iy as f64);
                if !inside(ix - 1, iy) {
                    write!(d, "M{:.2},{:.2}V{:.2}", px(x0), py(y0), py(y0 + 1.0)).unwrap();
                }
                if !inside(ix + 1, iy) {
                    write!(d, "M{:.2},{:.2}V{:.2}", px(x0 + 1.0), py(y0), py(y0 + 1.0)).unwrap();
                }
                if !inside(ix, iy - 1) {
                    write!(d, "M{:.2},{:.2}H{:.2}", px(x0), py(y0), px(x0 + 1.0)).unwrap();
                }
                if !inside(ix, iy + 1) {
                    write!(d, "M{:.2},{:.2}H{:.2}", px(x0), py(y0 + 1.0), px(x0 + 1.0)).unwrap();
                }
            }
        }
        let color = PALETTE[k % PALETTE.len()];
        writeln!(s, r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="1.5"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="{MARGIN}" y="{:.2}" font-size="12" fill="{color}">theta = {theta:.4}, t = {:.4}</text>"#,
            WIDTH + 20.0 * k as f64,
            time_of_threshold(theta)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::{canonicalize, Bar};

    #[test]
    fn barcode_plot_has_arrow_for_infinite_bar() {
        let bc = canonicalize([Bar::infinite(0.0), Bar::new(0.0, 0.75, 2).unwrap()]).unwrap();
        let svg = barcode_svg(&bc);
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("marker-end").count(), 1);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg, barcode_svg(&bc));
    }

    #[test]
    fn scan_plot_outlines_each_threshold() {
        let b = BlaschkeProduct::from_simple_zeros(&[ComplexPoint::new(0.6, 0.0), ComplexPoint::new(-0.6, 0.0)]).unwrap();
        let svg = scan_svg(&b, &[0.1, 0.5], 64);
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains("theta = 0.1000"));
    }
}

//! SVG and TikZ output. Floats appear only here.

use std::fmt::Write as _;

use crate::geometry::{Diagram, EdgeClass};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub scale: f64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { scale: 1.0, labels: false }
    }
}

/// Fixed six decimals with trailing zeros trimmed; `-0` prints as `0`.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn points<S: Scalar>(d: &Diagram<S>, scale: f64) -> Vec<(f64, f64)> {
    d.positions()
        .iter()
        .map(|c| {
            let (x, y) = c.cartesian_f64();
            (x * scale, y * scale)
        })
        .collect()
}

/// One `<circle>` per element and one `<line>` per edge; steep edges get
/// class `steep` and a heavier stroke. Screen coordinates are `(x, -y)·scale`.
pub fn render_svg<S: Scalar>(d: &Diagram<S>, opts: &RenderOptions) -> String {
    let pts: Vec<(f64, f64)> = points(d, opts.scale).into_iter().map(|(x, y)| (x, -y)).collect();
    let margin = 0.5 * opts.scale;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let stroke = 0.03 * opts.scale;
    let radius = 0.08 * opts.scale;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0 - margin),
        num(y0 - margin),
        num(x1 - x0 + 2.0 * margin),
        num(y1 - y0 + 2.0 * margin)
    )
    .unwrap();
    writeln!(
        out,
        "<style>line{{stroke:#000;stroke-width:{w}}}line.steep{{stroke:#b00;stroke-width:{sw}}}circle{{fill:#fff;stroke:#000;stroke-width:{w}}}text{{font-size:{fs}px;font-family:sans-serif}}</style>",
        w = num(stroke),
        sw = num(2.5 * stroke),
        fs = num(0.25 * opts.scale)
    )
    .unwrap();
    for ((lo, hi), class) in d.classified_edges() {
        let kind = if class == EdgeClass::Steep { "steep" } else { "normal" };
        let ((ax, ay), (bx, by)) = (pts[lo], pts[hi]);
        writeln!(out, r#"<line class="{kind}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(ax), num(ay), num(bx), num(by))
            .unwrap();
    }
    for (id, &(x, y)) in pts.iter().enumerate() {
        writeln!(out, r#"<circle id="e{id}" cx="{}" cy="{}" r="{}"/>"#, num(x), num(y), num(radius)).unwrap();
    }
    if opts.labels {
        for (id, &(x, y)) in pts.iter().enumerate() {
            writeln!(out, r#"<text x="{}" y="{}">{id}</text>"#, num(x + 1.5 * radius), num(y - 0.5 * radius)).unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// A `tikzpicture` with one `\draw` per edge; steep edges use the `steep`
/// style.
pub fn render_tikz<S: Scalar>(d: &Diagram<S>, opts: &RenderOptions) -> String {
    let pts = points(d, 1.0);
    let mut out = String::new();
    writeln!(out, r"\begin{{tikzpicture}}[scale={}, steep/.style={{very thick, red!70!black}}]", num(opts.scale))
        .unwrap();
    for (id, &(x, y)) in pts.iter().enumerate() {
        writeln!(out, r"  \coordinate (v{id}) at ({}, {});", num(x), num(y)).unwrap();
    }
    for ((lo, hi), class) in d.classified_edges() {
        let style = if class == EdgeClass::Steep { "[steep]" } else { "" };
        writeln!(out, r"  \draw{style} (v{lo}) -- (v{hi});").unwrap();
    }
    for id in 0..pts.len() {
        writeln!(out, r"  \fill (v{id}) circle (1.5pt);").unwrap();
    }
    if opts.labels {
        for id in 0..pts.len() {
            writeln!(out, r"  \node[right=2pt, font=\scriptsize] at (v{id}) {{{id}}};").unwrap();
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{fork_extend, grid};
    use crate::faces::enumerate_4cells;
    use crate::Rational;

    fn s7() -> Diagram<Rational> {
        let g = grid::<Rational>(2, 2).unwrap();
        fork_extend(&g, enumerate_4cells(&g).unwrap()[0]).unwrap().diagram
    }

    #[test]
    fn number_format() {
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(2.0), "2");
        assert_eq!(num(1.0 / 3.0), "0.333333");
    }

    #[test]
    fn svg_counts() {
        let svg = render_svg(&s7(), &RenderOptions::default());
        assert_eq!(svg.matches("<circle").count(), 7);
        assert_eq!(svg.matches("<line").count(), 9);
        assert_eq!(svg.matches(r#"class="steep""#).count(), 1);
        assert_eq!(svg.matches("<text").count(), 0);
        let labelled = render_svg(&s7(), &RenderOptions { labels: true, ..Default::default() });
        assert_eq!(labelled.matches("<text").count(), 7);

        let g = grid::<Rational>(3, 3).unwrap();
        let svg = render_svg(&g, &RenderOptions::default());
        assert_eq!((svg.matches("<circle").count(), svg.matches("<line").count()), (9, 12));
        assert_eq!(svg.matches(r#"class="steep""#).count(), 0);
    }

    #[test]
    fn svg_flips_y() {
        let g = grid::<Rational>(2, 2).unwrap();
        let svg = render_svg(&g, &RenderOptions { scale: 10.0, labels: false });
        // The top (u=1, v=1) is at x=0, y=2 -> screen (0, -20).
        assert!(svg.contains(r#"<circle id="e3" cx="0" cy="-20""#), "{svg}");
    }

    #[test]
    fn tikz_counts() {
        let tikz = render_tikz(&s7(), &RenderOptions::default());
        assert_eq!(tikz.matches(r"\draw").count(), 9);
        assert_eq!(tikz.matches(r"\draw[steep]").count(), 1);
        assert!(tikz.starts_with(r"\begin{tikzpicture}[scale=1,"));
        let g = grid::<Rational>(2, 2).unwrap();
        assert_eq!(render_tikz(&g, &RenderOptions::default()).matches(r"\draw").count(), 4);
    }

    #[test]
    fn deterministic() {
        let opts = RenderOptions { scale: 2.5, labels: true };
        assert_eq!(render_svg(&s7(), &opts), render_svg(&s7(), &opts));
        assert_eq!(render_tikz(&s7(), &opts), render_tikz(&s7(), &opts));
    }
}

//! SVG rendering of the projected diagram.

use std::fmt::Write;

use cylknot_core::braid::Diagram;
use cylknot_core::geometry::{curve_point, vertices};
use num_traits::ToPrimitive;

const SIZE: f64 = 440.0;
const CENTER: f64 = 220.0;
const SCALE: f64 = 200.0;
const GAP: f64 = 4.0;

fn px(p: (f64, f64)) -> (f64, f64) {
    (CENTER + SCALE * p.0, CENTER - SCALE * p.1)
}

/// Fixed three-decimal output without a negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// The diagram drawn as straight chords with breaks in the under strand;
/// maxima are hollow circles and minima filled dots.
pub fn render_svg(d: &Diagram) -> String {
    let (s, n, m) = (d.s, d.n, d.m);
    let phi = d.phi.to_f64().unwrap_or(0.0);

    // under-strand cut positions per chord, as fractions along the chord
    let mut cuts: Vec<Vec<f64>> = vec![Vec::new(); n as usize];
    for c in &d.crossings {
        let (_, under) = c.over_under();
        let u = under.approx().rem_euclid(1.0) * n as f64;
        let k = (u.floor() as usize).min(n as usize - 1);
        cuts[k].push(u - k as f64);
    }

    let verts = vertices(s, n).expect("diagram has valid parameters");
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#,
        w = SIZE
    );
    let _ = writeln!(out, "<title>Z({s},{n},{m},{})</title>", d.phi);
    let _ = writeln!(
        out,
        r##"<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="#bbbbbb" stroke-width="1"/>"##,
        c = num(CENTER),
        r = num(SCALE)
    );
    let _ = writeln!(out, r##"<g stroke="#000000" stroke-width="1.5" stroke-linecap="round">"##);
    for (k, chord_cuts) in cuts.iter_mut().enumerate() {
        let a = px(verts[k]);
        let b = px(verts[(k + 1) % verts.len()]);
        let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
        chord_cuts.sort_by(|x, y| x.total_cmp(y));
        let mut start = 0.0;
        let mut pieces = Vec::new();
        for &f in chord_cuts.iter() {
            let half = GAP / 2.0 / len;
            pieces.push((start, (f - half).max(start)));
            start = (f + half).min(1.0);
        }
        pieces.push((start, 1.0));
        for (f0, f1) in pieces {
            if f1 <= f0 {
                continue;
            }
            let p0 = (a.0 + f0 * (b.0 - a.0), a.1 + f0 * (b.1 - a.1));
            let p1 = (a.0 + f1 * (b.0 - a.0), a.1 + f1 * (b.1 - a.1));
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(p0.0),
                num(p0.1),
                num(p1.0),
                num(p1.1)
            );
        }
    }
    let _ = writeln!(out, "</g>");
    for j in 0..m {
        let t = (j as f64 - phi) / m as f64;
        let (x, y) = px(curve_point(s, n, t));
        let _ = writeln!(
            out,
            r##"<circle class="max" cx="{}" cy="{}" r="5" fill="#ffffff" stroke="#c00000" stroke-width="1.5"/>"##,
            num(x),
            num(y)
        );
        let t = (j as f64 + 0.5 - phi) / m as f64;
        let (x, y) = px(curve_point(s, n, t));
        let _ = writeln!(
            out,
            r##"<circle class="min" cx="{}" cy="{}" r="3.5" fill="#0040c0"/>"##,
            num(x),
            num(y)
        );
    }
    out.push_str("</svg>\n");
    out
}

//! SVG 1.1 plot of a sail: lattice points in the box, the diagonal, and the
//! sail polyline through its points.

use std::fmt::Write as _;

use euclid_core::lattice::Sublattice2;
use euclid_core::sail::Sail;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 30.0;
/// Background lattice points are drawn only for boxes with at most this many rows.
const MAX_ROWS: u64 = 2000;

pub fn render_sail(lattice: &Sublattice2, sail: &Sail) -> String {
    let extent = sail.alpha_x.max(sail.omega_y).max(1) as f64;
    let unit = SIZE / extent;
    let px = |x: f64| MARGIN + x * unit;
    let py = |y: f64| MARGIN + SIZE - y * unit;
    let total = SIZE + 2.0 * MARGIN;
    let r = (unit / 6.0).clamp(1.0, 5.0);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )
    .unwrap();
    writeln!(s, "<title>sail of {lattice}</title>").unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    // axes and diagonal
    writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"#,
        px(0.0), py(0.0), px(extent), py(0.0),
        px(0.0), py(0.0), px(0.0), py(extent),
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
        px(0.0), py(0.0), px(extent), py(extent),
    )
    .unwrap();

    let rows = sail.omega_y / lattice.m;
    if rows <= MAX_ROWS {
        s.push_str(r#"<g fill="lightgray">"#);
        for k in 0..=rows {
            let y = (k * lattice.m) as f64;
            let x0 = (k as u128 * lattice.a as u128 % lattice.d as u128) as u64;
            let mut x = x0;
            while x <= sail.alpha_x {
                write!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}"/>"#,
                    px(x as f64),
                    py(y)
                )
                .unwrap();
                x += lattice.d;
            }
        }
        s.push_str("</g>\n");
    }

    let path: Vec<String> = sail
        .points
        .iter()
        .map(|p| format!("{:.2},{:.2}", px(p.x as f64), py(p.y as f64)))
        .collect();
    writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        path.join(" ")
    )
    .unwrap();
    s.push_str(r#"<g fill="crimson">"#);
    for p in &sail.points {
        write!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#,
            px(p.x as f64),
            py(p.y as f64),
            r * 1.5
        )
        .unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

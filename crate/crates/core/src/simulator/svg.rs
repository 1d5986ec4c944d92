//! SVG phase portraits of surface model flows.
//!
//! The surface is drawn as a square. The horizontal axis is the height
//! `h ∈ [0, 1]`; the left and right edges are identified by the deck map
//! (straight for the annulus, flipped for the Möbius band). The repeller
//! handle fills the middle band `−1 ≤ Y ≤ 1` with `R` on `Y = 0`. The
//! attractor handle is cut along its orbit `A` and split between the top and
//! bottom bands, so `A` is the identified pair of edges `Y = ±2` and `Σ` is
//! the pair of dashed lines `Y = ±1`. Vertical position inside a band is
//! `y / 2^{−h}`, so every handle boundary is a straight line.

use std::fmt::Write;

use super::{boundary_radius, Chart, ChartPoint, Trajectory};
use crate::error::{Error, Result};
use crate::gluing::{Gluing, HandleKind, ModelFlow, SurfaceGluing};
use crate::scalar::Scalar;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 30.0;

/// Position of a chart point in the square: `(x, Y)` with `x ∈ [0, 1]`,
/// `Y ∈ [−2, 2]`.
pub fn portrait_position<T: Scalar>(f: &ModelFlow, p: &ChartPoint<T>) -> (f64, f64) {
    let h = p.h.to_f64().unwrap_or(0.0);
    let v = (p.y[0] / boundary_radius(p.h)).to_f64().unwrap_or(0.0);
    match p.chart {
        Chart::Repeller => (h, v),
        Chart::Attractor => {
            // the attractor side glued to repeller circle 1 (y > 0) goes on top
            let top_positive = match f.gluing() {
                Gluing::Surface(g @ SurfaceGluing::Annulus { .. }) => g.route(0).0 == 0,
                _ => true,
            };
            let v = if top_positive { v } else { -v };
            if v >= 0.0 {
                (h, 2.0 - v)
            } else {
                (h, -2.0 - v)
            }
        }
    }
}

fn to_px((x, y): (f64, f64)) -> (f64, f64) {
    (MARGIN + x * SIZE, MARGIN + (2.0 - y) / 4.0 * SIZE)
}

fn polyline(out: &mut String, points: &[(f64, f64)]) {
    if points.len() < 2 {
        return;
    }
    let coords: Vec<String> = points
        .iter()
        .map(|&p| {
            let (x, y) = to_px(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(out, "    <polyline points=\"{}\"/>", coords.join(" "));
}

/// Splits a sampled orbit wherever it jumps across an identified edge or
/// through a discontinuous gluing.
fn segments(points: &[(f64, f64)]) -> Vec<Vec<(f64, f64)>> {
    let mut out: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for &p in points {
        if let Some(&(x0, y0)) = current.last() {
            if (p.0 - x0).abs() > 0.5 || (p.1 - y0).abs() > 0.75 {
                out.push(std::mem::take(&mut current));
            }
        }
        current.push(p);
    }
    out.push(current);
    out
}

fn trajectory_points<T: Scalar>(f: &ModelFlow, traj: &Trajectory<T>) -> Vec<(f64, f64)> {
    let mut points = Vec::with_capacity(traj.samples.len() + 2);
    let mut transits = traj.transits.iter().peekable();
    for (t, p) in &traj.samples {
        if let Some(tr) = transits.peek() {
            if tr.time <= *t {
                let (yb, hb) = tr.before.to_chart();
                let (ya, ha) = tr.after.to_chart();
                points.push(portrait_position(f, &ChartPoint::new(tr.from, yb, hb)));
                points.push(portrait_position(
                    f,
                    &ChartPoint::new(tr.from.other(), ya, ha),
                ));
                transits.next();
            }
        }
        points.push(portrait_position(f, p));
    }
    points
}

/// Renders the fundamental square with both periodic orbits, `Σ`, the edge
/// identifications and the given trajectories. Only `n = 2`.
pub fn render_surface_portrait<T: Scalar>(
    f: &ModelFlow,
    trajectories: &[Trajectory<T>],
) -> Result<String> {
    if f.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "SVG portraits are drawn for surfaces only, got dimension {}",
            f.dim()
        )));
    }
    let total = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">"
    );
    let _ = writeln!(out, "  <title>{f}</title>");
    out.push_str(concat!(
        "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" ",
        "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">",
        "<path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
        "  <style>.periodic-orbit{stroke:#c00;stroke-width:2.5;fill:none}",
        ".sigma{stroke:#888;stroke-dasharray:6 4;fill:none}",
        ".edge-id{stroke:#000;stroke-width:1.5;fill:none}",
        ".wandering polyline,.closed polyline{stroke:#1f5fbf;stroke-width:1.2;fill:none}</style>\n",
    ));

    let (left, right) = (MARGIN, MARGIN + SIZE);
    let y_px = |y: f64| to_px((0.0, y)).1;

    // left and right edges are identified; arrows show how
    let flipped = f.handle() == HandleKind::NonOrientable;
    let (top, bottom) = (y_px(2.0), y_px(-2.0));
    let _ = writeln!(
        out,
        "  <path class=\"edge-id\" d=\"M{left:.2},{bottom:.2} L{left:.2},{top:.2}\" marker-mid=\"url(#arrow)\" marker-end=\"url(#arrow)\"/>"
    );
    let (from, to) = if flipped {
        (top, bottom)
    } else {
        (bottom, top)
    };
    let _ = writeln!(
        out,
        "  <path class=\"edge-id\" d=\"M{right:.2},{from:.2} L{right:.2},{to:.2}\" marker-end=\"url(#arrow)\"/>"
    );

    for y in [1.0, -1.0] {
        let py = y_px(y);
        let _ = writeln!(
            out,
            "  <path class=\"sigma\" d=\"M{left:.2},{py:.2} H{right:.2}\"/>"
        );
    }

    let r = y_px(0.0);
    let _ = writeln!(
        out,
        "  <path class=\"periodic-orbit\" id=\"orbit-R\" d=\"M{left:.2},{r:.2} H{right:.2}\"/>"
    );
    let _ = writeln!(
        out,
        "  <path class=\"periodic-orbit\" id=\"orbit-A\" d=\"M{left:.2},{top:.2} H{right:.2} M{left:.2},{bottom:.2} H{right:.2}\"/>"
    );

    for traj in trajectories {
        let class = if traj.is_periodic() {
            "closed"
        } else {
            "wandering"
        };
        let _ = writeln!(out, "  <g class=\"{class}\">");
        for seg in segments(&trajectory_points(f, traj)) {
            polyline(&mut out, &seg);
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::Sign;
    use crate::simulator::{default_seeds, sample_portrait};

    #[test]
    fn identity_gluing_is_continuous_across_sigma() {
        let f = ModelFlow::surface(SurfaceGluing::annulus(false, [Sign::Plus, Sign::Plus]));
        let before = ChartPoint::new(Chart::Repeller, vec![0.5f64], 0.0);
        let after = ChartPoint::new(Chart::Attractor, vec![0.5f64], 0.0);
        assert_eq!(
            portrait_position(&f, &ChartPoint::new(Chart::Repeller, vec![1.0f64], 0.0)),
            (0.0, 1.0)
        );
        assert_eq!(
            portrait_position(&f, &ChartPoint::new(Chart::Attractor, vec![1.0f64], 0.0)),
            (0.0, 1.0)
        );
        assert_eq!(portrait_position(&f, &before).1, 0.5);
        assert_eq!(portrait_position(&f, &after).1, 1.5);
    }

    #[test]
    fn swapped_annulus_flips_attractor_halves() {
        let f = ModelFlow::surface(SurfaceGluing::annulus(true, [Sign::Plus, Sign::Plus]));
        let p = ChartPoint::new(Chart::Attractor, vec![-1.0f64], 0.0);
        assert_eq!(portrait_position(&f, &p), (0.0, 1.0));
    }

    #[test]
    fn renders_expected_elements() {
        let f = ModelFlow::surface(SurfaceGluing::mobius(Sign::Minus));
        let mut seeds = default_seeds::<f64>(&f, 4);
        seeds.push(ChartPoint::on_axis(Chart::Repeller, 2, 0.0));
        let trajs = sample_portrait(&f, &seeds, 8.0, 0.05).unwrap();
        let svg = render_surface_portrait(&f, &trajs).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("class=\"periodic-orbit\"").count(), 2);
        assert_eq!(svg.matches("class=\"wandering\"").count(), 4);
        assert_eq!(svg.matches("class=\"closed\"").count(), 1);
        assert_eq!(svg.matches("class=\"sigma\"").count(), 2);
    }

    #[test]
    fn rejects_higher_dimensions() {
        let f = ModelFlow::with_sign(3, HandleKind::NonOrientable, Sign::Plus).unwrap();
        assert!(render_surface_portrait::<f64>(&f, &[]).is_err());
    }
}

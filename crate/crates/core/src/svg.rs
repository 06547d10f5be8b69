//! Minimal SVG picture of a planar multi-tiling: the outlines of `P + lambda`
//! for every multiset point whose translate meets the window `[0, period]`,
//! with the window itself drawn dashed.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::TranslationMultiset;
use crate::polytope::RationalPolytope;
use crate::rational::{to_f64, Vector};

const PX: f64 = 400.0;

/// Polygon vertices in counterclockwise order.
fn ordered_outline(p: &RationalPolytope) -> Vec<[f64; 2]> {
    let pts: Vec<[f64; 2]> = p
        .vertices()
        .iter()
        .map(|v| [to_f64(&v[0]), to_f64(&v[1])])
        .collect();
    let n = pts.len() as f64;
    let cx = pts.iter().map(|q| q[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|q| q[1]).sum::<f64>() / n;
    let mut pts = pts;
    pts.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    pts
}

pub fn render(p: &RationalPolytope, lambda: &TranslationMultiset) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            dim: p.dim(),
            supported: "2",
        });
    }
    let period = lambda.period();
    let (lo, hi) = p.bounding_box();
    let translates = lambda.points_in_box(&(&Vector::zeros(2) - &hi), &(&period - &lo));
    let outline = ordered_outline(p);

    let (w, h) = (to_f64(&period[0]), to_f64(&period[1]));
    let (bx0, by0) = (to_f64(&lo[0]), to_f64(&lo[1]));
    let (bx1, by1) = (to_f64(&hi[0]), to_f64(&hi[1]));
    // View box: the window padded by the polytope's extent.
    let (vx, vy) = (bx0.min(0.0), by0.min(0.0));
    let (vw, vh) = (w + bx1.max(0.0) - vx, h + by1.max(0.0) - vy);
    let scale = PX / vw.max(vh);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        vw * scale,
        vh * scale,
        vx * scale,
        -(vy + vh) * scale,
        vw * scale,
        vh * scale
    );
    for (t, mult) in &translates {
        let (tx, ty) = (to_f64(&t[0]), to_f64(&t[1]));
        let points: Vec<String> = outline
            .iter()
            .map(|q| format!("{:.3},{:.3}", (q[0] + tx) * scale, -(q[1] + ty) * scale))
            .collect();
        let _ = writeln!(
            out,
            r#"  <polygon points="{}" fill="steelblue" fill-opacity="{:.3}" stroke="black" stroke-width="1"/>"#,
            points.join(" "),
            (0.08 * *mult as f64).min(1.0)
        );
    }
    let _ = writeln!(
        out,
        r#"  <rect x="0" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="red" stroke-dasharray="4 3" stroke-width="2"/>"#,
        -h * scale,
        w * scale,
        h * scale
    );
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn octagon_picture_has_translates() {
        let s = render(&fixtures::oct7(), &TranslationMultiset::integer_lattice(2)).unwrap();
        assert!(s.starts_with("<svg"));
        assert!(s.matches("<polygon").count() >= 7);
    }

    #[test]
    fn only_planar() {
        assert!(render(&fixtures::cube(), &TranslationMultiset::integer_lattice(3)).is_err());
    }
}

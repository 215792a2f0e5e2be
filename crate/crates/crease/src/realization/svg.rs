//! Projected crease curves as SVG, one stroke colour per folding sign.

use super::mesh::TriMesh;
use super::verify::CreaseLoop;
use crate::signs::Sign;

pub fn crease_svg(mesh: &TriMesh, loops: &[CreaseLoop]) -> String {
    let pts: Vec<[f64; 2]> = loops.iter().flat_map(|l| l.projected(mesh)).collect();
    let (mut lo, mut hi) = ([0.0f64; 2], [1.0f64; 2]);
    if let Some(first) = pts.first() {
        lo = *first;
        hi = *first;
        for p in &pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {w} {h}\" width=\"600\" height=\"{}\">\n",
        lo[0] - pad,
        -hi[1] - pad,
        (600.0 * h / w).round()
    );
    for l in loops {
        let colour = match l.sign {
            Sign::Plus => "#1f5fbf",
            Sign::Minus => "#c0392b",
        };
        let d: Vec<String> = l
            .projected(mesh)
            .iter()
            .map(|p| format!("{:.5},{:.5}", p[0], -p[1]))
            .collect();
        s += &format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"{:.4}\"/>\n",
            d.join(" "),
            pad / 5.0
        );
    }
    s += "</svg>\n";
    s
}

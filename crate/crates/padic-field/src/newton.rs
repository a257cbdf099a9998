//! Newton polygons of polynomials over a valued field.

use crate::val::{Val, Q};

/// Valuations of the roots of `sum_i a_i x^i`, one entry per root counted
/// with multiplicity, given the coefficient valuations `v(a_i)`.
///
/// Roots at zero (from vanishing low coefficients) are reported as `Val::Inf`.
pub fn newton_root_valuations(coeff_vals: &[Val]) -> Vec<Val> {
    let pts: Vec<(i64, Q)> = coeff_vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.fin().map(|v| (i as i64, v)))
        .collect();
    let mut out = Vec::new();
    if pts.is_empty() {
        return out;
    }
    for _ in 0..pts[0].0 {
        out.push(Val::Inf);
    }
    // lower convex hull
    let mut hull: Vec<(i64, Q)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let slope = (y2 - y1) / Q::from_integer(x2 - x1);
        for _ in 0..(x2 - x1) {
            out.push(Val::Fin(-slope));
        }
    }
    out
}

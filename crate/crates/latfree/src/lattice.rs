//! Integer-lattice predicates: point enumeration, lattice-freeness,
//! unconditionality, and maximal lattice-free rescaling.
//!
//! A body is lattice-free when its interior contains no point of the
//! standard integer lattice. Boundary contact is allowed; the default
//! strictness margin is [`DEFAULT_MARGIN`].

use crate::geom::{Containment, ConvexPolygon, Point};
use serde::{Deserialize, Serialize};

/// Default strictness margin for lattice-freeness tests, in lattice units.
pub const DEFAULT_MARGIN: f64 = 1e-9;

/// Largest scale factor probed by [`max_lattice_free_scale`].
pub const LAMBDA_MAX: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("scaling center must lie strictly inside the polygon")]
    CenterOutside,
    #[error("no lattice-free scaled copy exists: center is within the margin of a lattice point")]
    Infeasible,
}

/// Lattice-freeness verdict for one polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeStatus {
    pub lattice_free: bool,
    pub margin: f64,
    /// Lattice points strictly inside (depth greater than the margin),
    /// sorted lexicographically.
    pub interior_points: Vec<(i64, i64)>,
    /// Lattice points within the margin of the boundary: contained in
    /// closed mode but not in strict mode.
    pub boundary_points: Vec<(i64, i64)>,
}

/// Certificate that a polygon is symmetric about a horizontal and a
/// vertical line through `center`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnconditionalityCertificate {
    pub center: Point,
    /// Largest vertex mismatch under reflection across the horizontal line
    /// through the center.
    pub horizontal_axis_residual: f64,
    /// Same for the vertical line.
    pub vertical_axis_residual: f64,
}

/// Per-row integer range for one containment mode.
///
/// For row `y = ky` the edge constraints `n . p <= c'` reduce to one-sided
/// bounds on `x`; this intersects them and yields the integer endpoints.
fn row_range(
    halves: &[(Point, f64)],
    ky: i64,
    mode: Containment,
    margin: f64,
) -> Option<(i64, i64)> {
    let y = ky as f64;
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    let strict = matches!(mode, Containment::Strict);
    for &(normal, offset) in halves {
        let c = if strict { offset - margin } else { offset + margin };
        let bound = c - normal.y * y;
        if normal.x == 0.0 {
            let ok = if strict { bound > 0.0 } else { bound >= 0.0 };
            if !ok {
                return None;
            }
        } else if normal.x > 0.0 {
            hi = hi.min(bound / normal.x);
        } else {
            lo = lo.max(bound / normal.x);
        }
    }
    if !(lo < hi || (!strict && lo == hi)) {
        return None;
    }
    let (first, last) = if strict {
        (lo.floor() as i64 + 1, hi.ceil() as i64 - 1)
    } else {
        (lo.ceil() as i64, hi.floor() as i64)
    };
    if first > last {
        None
    } else {
        Some((first, last))
    }
}

fn edge_data(poly: &ConvexPolygon) -> Vec<(Point, f64)> {
    poly.edge_half_planes()
        .iter()
        .map(|h| (h.normal(), h.offset()))
        .collect()
}

fn row_bounds(poly: &ConvexPolygon, margin: f64) -> (i64, i64) {
    let (lo, hi) = poly.bounding_box();
    (
        (lo.y - margin).ceil() as i64,
        (hi.y + margin).floor() as i64,
    )
}

/// All lattice points contained in the polygon under the given mode and
/// margin, sorted lexicographically by (x, y).
pub fn lattice_points_in(
    poly: &ConvexPolygon,
    mode: Containment,
    margin: f64,
) -> Vec<(i64, i64)> {
    let halves = edge_data(poly);
    let (y_first, y_last) = row_bounds(poly, margin);
    let mut found = Vec::new();
    for ky in y_first..=y_last {
        if let Some((x_first, x_last)) = row_range(&halves, ky, mode, margin) {
            for kx in x_first..=x_last {
                found.push((kx, ky));
            }
        }
    }
    found.sort_unstable();
    found
}

/// Lattice-freeness verdict with the interior points found and the
/// boundary-contact points (within the margin of the boundary).
pub fn is_lattice_free(poly: &ConvexPolygon, margin: f64) -> LatticeStatus {
    let interior = lattice_points_in(poly, Containment::Strict, margin);
    let closed = lattice_points_in(poly, Containment::Closed, margin);
    let boundary = closed
        .into_iter()
        .filter(|p| interior.binary_search(p).is_err())
        .collect();
    LatticeStatus {
        lattice_free: interior.is_empty(),
        margin,
        interior_points: interior,
        boundary_points: boundary,
    }
}

/// Tests symmetry about a horizontal and a vertical line through the
/// extreme-coordinate center. For polygons this candidate center is the
/// only possible one, so `None` means the polygon is not unconditional.
pub fn is_unconditional(poly: &ConvexPolygon, tol: f64) -> Option<UnconditionalityCertificate> {
    let (lo, hi) = poly.bounding_box();
    let center = Point::new((lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0);

    let residual = |reflect: &dyn Fn(Point) -> Point| -> f64 {
        poly.vertices()
            .iter()
            .map(|&v| {
                let image = reflect(v);
                poly.vertices()
                    .iter()
                    .map(|&w| image.distance(w))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };

    let horizontal = residual(&|v: Point| Point::new(v.x, 2.0 * center.y - v.y));
    let vertical = residual(&|v: Point| Point::new(2.0 * center.x - v.x, v.y));
    if horizontal <= tol && vertical <= tol {
        Some(UnconditionalityCertificate {
            center,
            horizontal_axis_residual: horizontal,
            vertical_axis_residual: vertical,
        })
    } else {
        None
    }
}

/// Largest homothety factor about `center` keeping the polygon
/// lattice-free, found by doubling plus bisection to 1e-9. Returns the
/// factor and the scaled polygon.
pub fn max_lattice_free_scale(
    poly: &ConvexPolygon,
    center: Point,
    margin: f64,
) -> Result<(f64, ConvexPolygon), LatticeError> {
    if poly.depth(center) <= 0.0 {
        return Err(LatticeError::CenterOutside);
    }
    // Feasibility is checked on the scaled half-planes directly, so factors
    // far below the polygon validity threshold still probe correctly.
    let halves = edge_data(poly);
    let center_dots: Vec<f64> = halves.iter().map(|&(n, _)| n.dot(center)).collect();
    let (lo_corner, hi_corner) = poly.bounding_box();
    let mut scratch: Vec<(Point, f64)> = halves.clone();
    let mut feasible = |factor: f64| -> bool {
        for (slot, (&(n, c), &nc)) in
            scratch.iter_mut().zip(halves.iter().zip(&center_dots))
        {
            *slot = (n, factor * c + (1.0 - factor) * nc);
        }
        let y_lo = center.y + factor * (lo_corner.y - center.y);
        let y_hi = center.y + factor * (hi_corner.y - center.y);
        let y_first = (y_lo - margin).ceil() as i64;
        let y_last = (y_hi + margin).floor() as i64;
        !(y_first..=y_last)
            .any(|ky| row_range(&scratch, ky, Containment::Strict, margin).is_some())
    };

    let mut lo = 1e-6;
    if !feasible(lo) {
        return Err(LatticeError::Infeasible);
    }
    // Bracket the threshold, probing 1.0 first: callers mostly refit bodies
    // that are already near their maximal size.
    let mut hi = if feasible(1.0) { 1.0 } else { lo };
    while hi < LAMBDA_MAX {
        let next = (hi * 2.0).min(LAMBDA_MAX);
        if feasible(next) {
            hi = next;
        } else {
            break;
        }
    }
    lo = lo.max(hi);
    hi = if hi >= LAMBDA_MAX {
        LAMBDA_MAX
    } else {
        (hi * 2.0).min(LAMBDA_MAX)
    };
    if lo < hi {
        while hi - lo > 1e-9 {
            let mid = 0.5 * (lo + hi);
            if feasible(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let scaled = poly
        .scale_about(center, lo)
        .map_err(|_| LatticeError::Infeasible)?;
    Ok((lo, scaled))
}

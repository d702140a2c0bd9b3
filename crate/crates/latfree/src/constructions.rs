//! Explicit shapes and formulas behind the sharp bounds: the extremal
//! equilateral triangle, the tightness family of wide strips, the
//! normalized lattice-free triangles, the supporting-line rhombus against
//! the circumscribed square, Steiner symmetrization, and a seeded
//! generator of random lattice-free bodies.

use crate::functionals;
use crate::geom::{convex_hull, ConvexPolygon, GeomError, HalfPlane, Point, GEOM_EPS};
use crate::lattice::{self, DEFAULT_MARGIN};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("triangle parameters out of domain: {0}")]
    BadTriangleParams(String),
    #[error("expected a triangle, got {0} vertices")]
    NotTriangle(usize),
    #[error("supporting-line slope must be negative and finite, got {0}")]
    BadSlope(f64),
    #[error("circumradius must be at least sqrt(2)/2, got {0}")]
    SmallCircumradius(f64),
    #[error("lemma inputs must be positive with inner_dy <= outer_dx")]
    BadLemmaInputs,
    #[error("arc must span both coordinate directions relative to the center")]
    DegenerateArc,
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// The lattice-free equilateral triangle with edge length `1 + 2/sqrt(3)`
/// that maximizes perimeter minus twice the diameter.
pub fn equilateral_extremizer() -> ConvexPolygon {
    let s3 = 3f64.sqrt();
    ConvexPolygon::new(vec![
        Point::new(-1.0 / s3, 0.0),
        Point::new(1.0 + 1.0 / s3, 0.0),
        Point::new(0.5, 1.0 + s3 / 2.0),
    ])
    .expect("fixed extremal triangle is valid")
}

/// The wide strip `[-n, n] x [0, 1]`: lattice-free for every `n >= 1`, with
/// perimeter minus four circumradii approaching 2 as `n` grows.
pub fn kn_family(n: u32) -> ConvexPolygon {
    assert!(n >= 1, "strip half-width must be at least 1");
    let nf = f64::from(n);
    ConvexPolygon::new(vec![
        Point::new(-nf, 0.0),
        Point::new(nf, 0.0),
        Point::new(nf, 1.0),
        Point::new(-nf, 1.0),
    ])
    .expect("strip is valid")
}

/// Closed form of the sharpness value attained by [`kn_family`]:
/// `(2*sqrt(n^2 + 1/4) - 1) / (2*sqrt(n^2 + 1/4)) * (4n + 2 - 4*sqrt(n^2 + 1/4))`.
/// Strictly increasing in `n` and approaching 2 from below.
pub fn kn_thm3_value(n: u32) -> f64 {
    assert!(n >= 1, "strip half-width must be at least 1");
    let nf = f64::from(n);
    let two_r = 2.0 * (nf * nf + 0.25).sqrt();
    (two_r - 1.0) / two_r * (4.0 * nf + 2.0 - 2.0 * two_r)
}

/// Base overhangs of the normalized lattice-free triangle: base on the
/// x-axis from `(-left, 0)` to `(right + 1, 0)`, unit chord at height 1.
///
/// The admissible domain requires `left <= right` and
/// `left >= sqrt(right^2 + 1) - right` (the base must attain the diameter),
/// which forces `right >= 1/sqrt(3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LrTriangleParams {
    left: f64,
    right: f64,
}

impl LrTriangleParams {
    pub fn new(left: f64, right: f64) -> Result<Self, ConstructionError> {
        if !(left.is_finite() && right.is_finite() && left >= 0.0 && right >= 0.0) {
            return Err(ConstructionError::BadTriangleParams(format!(
                "overhangs must be finite and non-negative, got ({left}, {right})"
            )));
        }
        if left > right + 1e-12 {
            return Err(ConstructionError::BadTriangleParams(format!(
                "left overhang {left} exceeds right overhang {right}"
            )));
        }
        let min_left = (right * right + 1.0).sqrt() - right;
        if left < min_left - 1e-12 {
            return Err(ConstructionError::BadTriangleParams(format!(
                "left overhang {left} below diameter-on-base threshold {min_left}"
            )));
        }
        Ok(LrTriangleParams { left, right })
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    /// Smallest admissible left overhang for a given right overhang.
    pub fn min_left(right: f64) -> f64 {
        (right * right + 1.0).sqrt() - right
    }
}

/// The normalized triangle for the given overhangs: vertices `(-left, 0)`,
/// `(right + 1, 0)` and `(left/(left+right), (left+right+1)/(left+right))`.
/// Its width is `(left+right+1)/(left+right)` and its diameter is the base
/// length `left + right + 1`.
pub fn triangle_lr(params: &LrTriangleParams) -> ConvexPolygon {
    let (l, r) = (params.left, params.right);
    let sum = l + r;
    ConvexPolygon::new(vec![
        Point::new(-l, 0.0),
        Point::new(r + 1.0, 0.0),
        Point::new(l / sum, (sum + 1.0) / sum),
    ])
    .expect("admissible overhangs give a valid triangle")
}

/// Decrease of `sqrt(t^2 + 1)` below `t + 1`: `f(t) = sqrt(t^2 + 1) - t`,
/// positive and non-increasing.
pub fn f_defect(t: f64) -> f64 {
    (t * t + 1.0).sqrt() - t
}

/// `g(t) = sqrt(f(t)^2 + 1)`, non-increasing with `g(1/sqrt(3)) = 2/sqrt(3)`;
/// bounds the triangle objective per unit width.
pub fn g_bound(t: f64) -> f64 {
    let f = f_defect(t);
    (f * f + 1.0).sqrt()
}

/// Closed form of perimeter minus twice the diameter for
/// [`triangle_lr`]: `(sum+1)/sum * (f(right) + f(left))`.
pub fn lr_objective(params: &LrTriangleParams) -> f64 {
    let (l, r) = (params.left, params.right);
    let sum = l + r;
    (sum + 1.0) / sum * (f_defect(r) + f_defect(l))
}

/// Dilation factor `(omega + D) / (omega * D)` that gives the triangle a
/// unit-length chord at height 1 over its longest edge. At least 1 for
/// lattice-free triangles. Returns the factor and the dilated triangle
/// (scaled about the origin).
pub fn lambda_scale(poly: &ConvexPolygon) -> Result<(f64, ConvexPolygon), ConstructionError> {
    if !poly.is_triangle() {
        return Err(ConstructionError::NotTriangle(poly.vertex_count()));
    }
    let (d, _) = functionals::diameter(poly);
    let (w, _, _) = functionals::width(poly);
    let factor = (w + d) / (w * d);
    let scaled = poly.scale_about(Point::new(0.0, 0.0), factor)?;
    Ok((factor, scaled))
}

/// Lengths of the six segments cut on the supporting line and the axes by
/// a [`RhombusSquare`] instance, measured from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentLengths {
    /// Distance from the origin to the inner crossing point.
    pub inner_len: f64,
    /// Horizontal and vertical reach of the inner crossing point.
    pub inner_dx: f64,
    pub inner_dy: f64,
    /// Distance from the origin to the outer crossing point.
    pub outer_len: f64,
    /// Horizontal and vertical reach of the outer crossing point.
    pub outer_dx: f64,
    pub outer_dy: f64,
}

/// A supporting line of negative slope through the origin, the rhombus cut
/// out by its reflections about the symmetry center `(1/2, 1/2)` and axes,
/// and the circumscribed square of half-side `circumradius`.
///
/// The intersection of rhombus and square has perimeter at most
/// `4 * circumradius + 2`; the segment lengths witness the reduction of
/// that bound to [`corner_cut_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhombusSquare {
    /// Half-plane bounded by the supporting line, containing the body.
    pub support: HalfPlane,
    /// Canonical slope of the supporting line, in `[-1, 0)`.
    pub slope: f64,
    pub circumradius: f64,
    pub rhombus: ConvexPolygon,
    pub square: ConvexPolygon,
    pub intersection: ConvexPolygon,
    /// Crossing of the supporting line with the lower inner box boundary.
    pub inner_point: Point,
    /// Crossing of the supporting line with the square boundary.
    pub outer_point: Point,
    pub segments: SegmentLengths,
}

impl RhombusSquare {
    /// Perimeter of the rectangle `(1/2,1/2) + [-R, R] x [-1/2, 1/2]`,
    /// the upper bound certified for the intersection perimeter.
    pub fn perimeter_bound(&self) -> f64 {
        4.0 * self.circumradius + 2.0
    }
}

/// Builds the rhombus-square instance for a supporting line `y = slope * x`
/// through the origin and a circumscribed square of half-side
/// `circumradius >= sqrt(2)/2`.
///
/// Slopes steeper than -1 are normalized to their reciprocal: reflecting
/// the whole configuration in the diagonal through the symmetry center
/// maps it to the instance with reciprocal slope, so the two are
/// congruent.
pub fn rhombus_square(slope: f64, circumradius: f64) -> Result<RhombusSquare, ConstructionError> {
    if !(slope.is_finite() && slope < 0.0) {
        return Err(ConstructionError::BadSlope(slope));
    }
    if !(circumradius.is_finite() && circumradius >= (0.5f64).sqrt() - 1e-12) {
        return Err(ConstructionError::SmallCircumradius(circumradius));
    }
    let m = if slope < -1.0 { 1.0 / slope } else { slope };
    let r = circumradius;
    let c = Point::new(0.5, 0.5);

    // The supporting line and its three reflections enclose a rhombus with
    // horizontal diagonal at height 1/2 and vertical diagonal at x = 1/2.
    let rhombus = ConvexPolygon::new(vec![
        Point::new(0.5 / m, 0.5),
        Point::new(0.5, m / 2.0),
        Point::new(1.0 - 0.5 / m, 0.5),
        Point::new(0.5, 1.0 - m / 2.0),
    ])?;
    let square = ConvexPolygon::new(vec![
        Point::new(c.x - r, c.y - r),
        Point::new(c.x + r, c.y - r),
        Point::new(c.x + r, c.y + r),
        Point::new(c.x - r, c.y + r),
    ])?;
    let intersection = crate::geom::intersect(&rhombus, &square)
        .expect("rhombus and square share the symmetry center");

    // Where the line leaves the box [0, 1/2] x [1/2 - R, 0] heading right.
    let inner_point = if m / 2.0 >= 0.5 - r {
        Point::new(0.5, m / 2.0)
    } else {
        Point::new((0.5 - r) / m, 0.5 - r)
    };
    // Where the line leaves the square heading left.
    let outer_point = {
        let y_left = m * (0.5 - r);
        if y_left <= 0.5 + r {
            Point::new(0.5 - r, y_left)
        } else {
            Point::new((0.5 + r) / m, 0.5 + r)
        }
    };

    let segments = SegmentLengths {
        inner_len: inner_point.norm(),
        inner_dx: inner_point.x.abs(),
        inner_dy: inner_point.y.abs(),
        outer_len: outer_point.norm(),
        outer_dx: outer_point.x.abs(),
        outer_dy: outer_point.y.abs(),
    };

    let support = HalfPlane::new(Point::new(m, -1.0), 0.0)?;
    Ok(RhombusSquare {
        support,
        slope: m,
        circumradius: r,
        rhombus,
        square,
        intersection,
        inner_point,
        outer_point,
        segments,
    })
}

/// Outcome of the segment-sum lemma: cutting a corner along the chord
/// through the two crossing points never beats the axis-aligned detour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerCutBound {
    pub inner_dx: f64,
    pub outer_dx: f64,
    pub inner_dy: f64,
    /// Derived vertical reach of the outer point: `outer_dx * inner_dy / inner_dx`.
    pub outer_dy: f64,
    pub inner_len: f64,
    pub outer_len: f64,
    /// `inner_len + outer_len <= inner_dx + outer_dx + outer_dy + 1e-12`.
    pub holds: bool,
}

/// Checks `inner_len + outer_len <= inner_dx + outer_dx + outer_dy` for the
/// segment family with `outer_dy = outer_dx * inner_dy / inner_dx`,
/// `outer_len = sqrt(outer_dx^2 + outer_dy^2)` and
/// `inner_len = outer_len * inner_dx / outer_dx`. Requires positive inputs
/// with `inner_dy <= outer_dx`; under these the bound always holds.
pub fn corner_cut_bound(
    inner_dx: f64,
    outer_dx: f64,
    inner_dy: f64,
) -> Result<CornerCutBound, ConstructionError> {
    if !(inner_dx > 0.0 && outer_dx > 0.0 && inner_dy > 0.0)
        || inner_dy > outer_dx
        || !(inner_dx.is_finite() && outer_dx.is_finite() && inner_dy.is_finite())
    {
        return Err(ConstructionError::BadLemmaInputs);
    }
    let outer_dy = outer_dx * inner_dy / inner_dx;
    let outer_len = outer_dx.hypot(outer_dy);
    let inner_len = outer_len * inner_dx / outer_dx;
    let holds = inner_len + outer_len <= inner_dx + outer_dx + outer_dy + 1e-12;
    Ok(CornerCutBound {
        inner_dx,
        outer_dx,
        inner_dy,
        outer_dy,
        inner_len,
        outer_len,
        holds,
    })
}

/// Convex hull of the orbit of `arc` under the four sign reflections about
/// `center`. Arc entries are offsets from the center with non-negative
/// coordinates; the result is unconditional by construction.
pub fn unconditionalize(arc: &[Point], center: Point) -> Result<ConvexPolygon, ConstructionError> {
    if arc.iter().any(|o| o.x < -GEOM_EPS || o.y < -GEOM_EPS) {
        return Err(ConstructionError::DegenerateArc);
    }
    let max_dx = arc.iter().map(|o| o.x).fold(0.0, f64::max);
    let max_dy = arc.iter().map(|o| o.y).fold(0.0, f64::max);
    if max_dx <= GEOM_EPS || max_dy <= GEOM_EPS {
        return Err(ConstructionError::DegenerateArc);
    }
    let mut orbit = Vec::with_capacity(arc.len() * 4);
    for o in arc {
        for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            orbit.push(center + Point::new(o.x * sx, o.y * sy));
        }
    }
    let hull = convex_hull(&orbit)?;
    debug_assert!(lattice::is_unconditional(&hull, 1e-9).is_some());
    Ok(hull)
}

/// Vertical chord of the polygon at abscissa `x` as `(low, high)`.
fn vertical_chord(poly: &ConvexPolygon, x: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (a, b) in poly.edges() {
        let (xa, xb) = (a.x, b.x);
        if (xa - xb).abs() <= GEOM_EPS {
            if (xa - x).abs() <= GEOM_EPS {
                lo = lo.min(a.y.min(b.y));
                hi = hi.max(a.y.max(b.y));
            }
            continue;
        }
        let t = (x - xa) / (xb - xa);
        if (-1e-12..=1.0 + 1e-12).contains(&t) {
            let y = a.y + t.clamp(0.0, 1.0) * (b.y - a.y);
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    (lo, hi)
}

/// Steiner symmetrization about the horizontal line `y = axis`: every
/// vertical chord is recentered on the axis. Preserves area and yields a
/// convex body symmetric about the axis. For other directions rotate the
/// polygon first.
pub fn steiner_symmetrize(poly: &ConvexPolygon, axis: f64) -> ConvexPolygon {
    let mut xs: Vec<f64> = poly.vertices().iter().map(|v| v.x).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() <= GEOM_EPS);

    let mut lower = Vec::with_capacity(xs.len());
    let mut upper = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (lo, hi) = vertical_chord(poly, x);
        let half = (hi - lo).max(0.0) / 2.0;
        lower.push(Point::new(x, axis - half));
        upper.push(Point::new(x, axis + half));
    }
    let ring: Vec<Point> = lower
        .into_iter()
        .chain(upper.into_iter().rev())
        .collect();
    ConvexPolygon::new(ring).expect("symmetrized chords form a valid convex body")
}

fn vertex_mean(poly: &ConvexPolygon) -> Point {
    let n = poly.vertex_count() as f64;
    let sum = poly
        .vertices()
        .iter()
        .fold(Point::new(0.0, 0.0), |acc, &v| acc + v);
    sum * (1.0 / n)
}

/// Deterministic random lattice-free body: the hull of `k` uniform points
/// in the unit square is dropped at a random offset inside the unit cell
/// and inflated about its incenter until lattice points block further
/// growth. The incenter is used as the scaling center because it sits deep
/// inside the body.
pub fn random_lattice_free(seed: u64, k: usize) -> ConvexPolygon {
    assert!(k >= 3, "need at least 3 points for a polygon");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let pts: Vec<Point> = (0..k)
            .map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let Ok(hull) = convex_hull(&pts) else {
            continue;
        };
        let offset = Point::new(rng.random::<f64>(), rng.random::<f64>());
        let moved = hull.translate(offset - vertex_mean(&hull));
        let (_, incenter) = functionals::inradius(&moved);
        if let Ok((_, scaled)) = lattice::max_lattice_free_scale(&moved, incenter, DEFAULT_MARGIN)
        {
            return scaled;
        }
    }
    unreachable!("random hulls are almost surely valid and scalable");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::report;
    use crate::lattice::is_lattice_free;

    const SHARP_PD: f64 = 2.154700538379252; // 1 + 2/sqrt(3)

    #[test]
    fn extremizer_is_equilateral_with_sharp_edge_length() {
        let tri = equilateral_extremizer();
        let edge = 1.0 + 2.0 / 3f64.sqrt();
        for (a, b) in tri.edges() {
            assert!((a.distance(b) - edge).abs() < 1e-12);
        }
        let rep = report(&tri);
        assert!((rep.p - 2.0 * rep.diameter - SHARP_PD).abs() < 1e-9);
        assert!(is_lattice_free(&tri, DEFAULT_MARGIN).lattice_free);
    }

    #[test]
    fn extremizer_touches_unit_cell_corners() {
        let tri = equilateral_extremizer();
        let status = is_lattice_free(&tri, DEFAULT_MARGIN);
        for p in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            assert!(status.boundary_points.contains(&p), "missing {p:?}");
        }
        // (0, 1) sits exactly on the left edge: outside the open interior,
        // inside the closed body.
        use crate::geom::Containment;
        let q = crate::geom::Point::new(0.0, 1.0);
        assert!(!tri.contains_point(q, Containment::Strict, DEFAULT_MARGIN));
        assert!(tri.contains_point(q, Containment::Closed, DEFAULT_MARGIN));
        // A triangle has no pair of perpendicular symmetry axes.
        assert!(crate::lattice::is_unconditional(&tri, 1e-9).is_none());
    }

    #[test]
    fn extremizer_area_and_inradius_closed_forms() {
        let tri = equilateral_extremizer();
        let rep = report(&tri);
        let edge = 1.0 + 2.0 / 3f64.sqrt();
        assert!((rep.area - 3f64.sqrt() / 4.0 * edge * edge).abs() < 1e-9);
        assert!((rep.area - 2.0103628).abs() < 1e-6);
        assert!((rep.r - edge / (2.0 * 3f64.sqrt())).abs() < 1e-9);
        assert!((rep.r - 0.6220085).abs() < 1e-7);
        assert!((rep.p - 3.0 * edge).abs() < 1e-12);
    }

    #[test]
    fn strip_family_values() {
        let k1 = kn_family(1);
        let rep = report(&k1);
        assert!((rep.diameter - 5f64.sqrt()).abs() < 1e-12);
        assert!((rep.p - 4.0 * rep.circumradius - (6.0 - 2.0 * 5f64.sqrt())).abs() < 1e-9);

        let k3 = kn_family(3);
        let rep3 = report(&k3);
        assert!((rep3.omega - 1.0).abs() < 1e-12);
        assert!((rep3.r - 0.5).abs() < 1e-9);

        for n in [1, 5, 20] {
            let status = is_lattice_free(&kn_family(n), DEFAULT_MARGIN);
            assert!(status.lattice_free);
            let rep = report(&kn_family(n));
            assert!((rep.diameter - 2.0 * rep.circumradius).abs() < 1e-9);
        }
    }

    #[test]
    fn sharpness_value_examples() {
        assert!((kn_thm3_value(1) - 0.8445824).abs() < 1e-6);
        assert!((kn_thm3_value(10) - 1.8526).abs() < 1e-4);
        assert!(kn_thm3_value(1000) > 1.998);
        assert!(kn_thm3_value(1000) < 2.0);
    }

    #[test]
    fn triangle_params_domain() {
        assert!(LrTriangleParams::new(0.7, 1.0).is_ok());
        // Left overhang above the right one.
        assert!(LrTriangleParams::new(1.0, 0.7).is_err());
        // Below the diameter-on-base threshold.
        assert!(LrTriangleParams::new(0.2, 1.0).is_err());
        assert!(LrTriangleParams::new(-0.1, 1.0).is_err());
        // The threshold itself is admissible.
        assert!(LrTriangleParams::new(LrTriangleParams::min_left(2.0), 2.0).is_ok());
    }

    #[test]
    fn triangle_lr_measurements_match_closed_forms() {
        let inv = 1.0 / 3f64.sqrt();
        let params = LrTriangleParams::new(inv, inv).unwrap();
        let tri = triangle_lr(&params);
        let rep = report(&tri);
        assert!((rep.diameter - SHARP_PD).abs() < 1e-9);
        assert!((rep.omega - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-9);

        let params = LrTriangleParams::new(0.7, 1.0).unwrap();
        let tri = triangle_lr(&params);
        let rep = report(&tri);
        assert!((rep.omega - 2.7 / 1.7).abs() < 1e-9);
        assert!((rep.diameter - 2.7).abs() < 1e-9);

        // Boundary case: the two short edges tie and the base attains the
        // diameter exactly.
        let right = 2.0;
        let params = LrTriangleParams::new(LrTriangleParams::min_left(right), right).unwrap();
        let tri = triangle_lr(&params);
        let (d, pair) = functionals::diameter(&tri);
        let base = tri.vertices()[pair.0].distance(tri.vertices()[pair.1]);
        assert!((d - base).abs() < 1e-12);
        assert!((d - (params.left() + params.right() + 1.0)).abs() < 1e-9);
    }

    #[test]
    fn objective_examples() {
        let inv = 1.0 / 3f64.sqrt();
        let corner = LrTriangleParams::new(inv, inv).unwrap();
        assert!((lr_objective(&corner) - SHARP_PD).abs() < 1e-12);

        let ones = LrTriangleParams::new(1.0, 1.0).unwrap();
        assert!((lr_objective(&ones) - 3.0 * (2f64.sqrt() - 1.0)).abs() < 1e-12);

        // Closed form agrees with the measured polygon.
        let params = LrTriangleParams::new(0.8, 1.3).unwrap();
        let rep = report(&triangle_lr(&params));
        assert!((lr_objective(&params) - (rep.p - 2.0 * rep.diameter)).abs() < 1e-9);
    }

    #[test]
    fn defect_and_bound_functions() {
        assert!((g_bound(1.0 / 3f64.sqrt()) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((g_bound(0.0) - 2f64.sqrt()).abs() < 1e-12);
        // Non-increasing on a dense grid.
        let mut prev_f = f64::INFINITY;
        let mut prev_g = f64::INFINITY;
        for i in 0..10_000 {
            let t = 10.0 * (i as f64) / 9_999.0;
            let (f, g) = (f_defect(t), g_bound(t));
            assert!(f <= prev_f + 1e-12);
            assert!(g <= prev_g + 1e-12);
            prev_f = f;
            prev_g = g;
        }
    }

    #[test]
    fn dilation_factor_examples() {
        let tri = equilateral_extremizer();
        let (factor, _) = lambda_scale(&tri).unwrap();
        assert!((factor - 1.0).abs() < 1e-9);

        let wide = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 1.0),
        ])
        .unwrap();
        let (factor, scaled) = lambda_scale(&wide).unwrap();
        assert!((factor - 1.5).abs() < 1e-12);
        let (d, _) = functionals::diameter(&scaled);
        assert!((d - 3.0).abs() < 1e-12);

        assert!(lambda_scale(&kn_family(1)).is_err());
    }

    #[test]
    fn rhombus_square_symmetric_instance() {
        let inst = rhombus_square(-1.0, 1.0).unwrap();
        // Symmetric slope: inner and outer reaches agree.
        assert!((inst.segments.inner_dx - inst.segments.outer_dx).abs() < 1e-12);
        assert!((inst.segments.inner_dy - inst.segments.outer_dy).abs() < 1e-12);
        let p = functionals::perimeter(&inst.intersection);
        assert!(p <= inst.perimeter_bound() + 1e-9);
        assert!((inst.perimeter_bound() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn rhombus_square_identities() {
        for (slope, r) in [(-0.3, 0.8), (-0.9, 1.5), (-2.5, 1.1), (-1e-3, 3.0)] {
            let inst = rhombus_square(slope, r).unwrap();
            let s = &inst.segments;
            assert!(s.inner_dy <= s.outer_dx + 1e-9, "slope {slope} r {r}");
            assert!(
                (s.inner_len / s.inner_dx - s.outer_len / s.outer_dx).abs() < 1e-9,
                "homothety ratio, slope {slope} r {r}"
            );
            assert!(
                (s.outer_len * s.outer_len - (s.outer_dx * s.outer_dx + s.outer_dy * s.outer_dy))
                    .abs()
                    < 1e-9
            );
            assert!((s.outer_dy / s.outer_dx - s.inner_dy / s.inner_dx).abs() < 1e-9);
            let p = functionals::perimeter(&inst.intersection);
            assert!(p <= inst.perimeter_bound() + 1e-9);
        }
        assert!(rhombus_square(0.5, 1.0).is_err());
        assert!(rhombus_square(-1.0, 0.3).is_err());
    }

    #[test]
    fn corner_cut_examples() {
        let b = corner_cut_bound(1.0, 1.0, 1.0).unwrap();
        assert!(b.holds);
        assert!((b.inner_len + b.outer_len - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((b.inner_dx + b.outer_dx + b.outer_dy - 3.0).abs() < 1e-12);

        let b = corner_cut_bound(2.0, 1.0, 0.5).unwrap();
        assert!(b.holds);
        assert!((b.outer_dy - 0.25).abs() < 1e-12);
        assert!((b.outer_len - 1.0308).abs() < 1e-4);
        assert!((b.inner_len - 2.0616).abs() < 1e-4);

        // Symmetric case has slack (3 - 2*sqrt(2)) * scale.
        for scale in [0.5, 1.0, 7.0] {
            let b = corner_cut_bound(scale, scale, scale).unwrap();
            let slack = b.inner_dx + b.outer_dx + b.outer_dy - b.inner_len - b.outer_len;
            assert!((slack - (3.0 - 2.0 * 2f64.sqrt()) * scale).abs() < 1e-9);
        }

        assert!(corner_cut_bound(0.0, 1.0, 0.5).is_err());
        assert!(corner_cut_bound(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn unconditionalize_examples() {
        let center = Point::new(0.5, 0.5);
        let diamond =
            unconditionalize(&[Point::new(0.5, 0.0), Point::new(0.0, 0.5)], center).unwrap();
        assert_eq!(diamond.vertex_count(), 4);
        for p in [(1.0, 0.5), (0.5, 1.0), (0.0, 0.5), (0.5, 0.0)] {
            assert!(diamond
                .vertices()
                .iter()
                .any(|v| v.distance(Point::new(p.0, p.1)) < 1e-12));
        }

        let octagon = unconditionalize(
            &[
                Point::new(0.5, 0.0),
                Point::new(0.35, 0.35),
                Point::new(0.0, 0.5),
            ],
            center,
        )
        .unwrap();
        assert_eq!(octagon.vertex_count(), 8);
        assert!(lattice::is_unconditional(&octagon, 1e-9).is_some());

        assert!(unconditionalize(&[Point::new(0.5, 0.0)], center).is_err());
    }

    #[test]
    fn steiner_triangle_example() {
        let tri = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let sym = steiner_symmetrize(&tri, 0.0);
        assert_eq!(sym.vertex_count(), 3);
        assert!((functionals::area(&sym) - 1.0).abs() < 1e-12);
        for p in [(0.0, -0.5), (0.0, 0.5), (2.0, 0.0)] {
            assert!(sym
                .vertices()
                .iter()
                .any(|v| v.distance(Point::new(p.0, p.1)) < 1e-12));
        }
    }

    #[test]
    fn steiner_fixes_symmetric_strip() {
        let k1 = kn_family(1);
        let sym = steiner_symmetrize(&k1, 0.5);
        assert_eq!(sym, k1);
    }

    #[test]
    fn random_bodies_are_lattice_free_and_deterministic() {
        for seed in 0..20u64 {
            let poly = random_lattice_free(seed, 3 + (seed % 7) as usize);
            assert!(is_lattice_free(&poly, DEFAULT_MARGIN).lattice_free);
        }
        let a = random_lattice_free(1, 3);
        let b = random_lattice_free(1, 3);
        assert_eq!(a, b);
    }
}

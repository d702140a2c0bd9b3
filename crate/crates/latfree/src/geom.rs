//! Planar primitives: points, half-planes, convex polygons, hulls, clipping.
//!
//! All arithmetic is double precision. Coordinates are measured in lattice
//! units; [`GEOM_EPS`] is the shared tolerance for collinearity, containment
//! and normalization checks.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Geometric tolerance in lattice units.
pub const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("need at least 3 non-collinear points, got {0} after cleanup")]
    InsufficientPoints(usize),
    #[error("points are collinear within tolerance")]
    Collinear,
    #[error("vertex ring is not convex: right turn at vertex {0}")]
    NotConvex(usize),
    #[error("half-plane normal is zero within tolerance")]
    ZeroNormal,
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("scale factor must be positive and finite, got {0}")]
    BadScale(f64),
}

/// A point (or displacement vector) in the plane, in lattice units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, treating both points as vectors.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point::new(p[0], p[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Orientation test: twice the signed area of triangle (a, b, c).
/// Positive for a left turn a -> b -> c.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Scale factor for orientation tolerances: `orient` values must be compared
/// against `GEOM_EPS` times the magnitude of the segments involved.
fn orient_scale(a: Point, b: Point, c: Point) -> f64 {
    let lab = (b - a).norm();
    let lbc = (c - b).norm();
    f64::max(1.0, lab * lbc)
}

/// Containment mode for point queries and lattice enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    /// Interior only: signed depth strictly greater than the margin.
    Strict,
    /// Boundary included: signed depth at least minus the margin.
    Closed,
}

/// The closed half-plane `{ p : normal . p <= offset }` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    normal: Point,
    offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Point, offset: f64) -> Result<Self, GeomError> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(GeomError::NonFinite);
        }
        let len = normal.norm();
        if len <= GEOM_EPS {
            return Err(GeomError::ZeroNormal);
        }
        Ok(HalfPlane {
            normal: normal * (1.0 / len),
            offset: offset / len,
        })
    }

    /// Half-plane whose boundary passes through `a` and `b`, containing the
    /// side to the left of the directed segment a -> b.
    pub fn left_of(a: Point, b: Point) -> Result<Self, GeomError> {
        let outward = -(b - a).perp();
        HalfPlane::new(outward, outward.dot(a))
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed excess of `p`: negative inside, zero on the boundary.
    pub fn signed_excess(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// A convex polygon with at least 3 vertices in counter-clockwise order.
///
/// Construction canonicalizes the ring: clockwise input is reversed,
/// duplicate and collinear vertices (within [`GEOM_EPS`]) are merged, and the
/// ring is rotated so the lexicographically smallest vertex comes first.
/// Every surviving triple of consecutive vertices makes a strict left turn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon", into = "RawPolygon")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

/// Wire form of a polygon: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPolygon {
    vertices: Vec<[f64; 2]>,
}

impl TryFrom<RawPolygon> for ConvexPolygon {
    type Error = GeomError;
    fn try_from(raw: RawPolygon) -> Result<Self, GeomError> {
        ConvexPolygon::new(raw.vertices.into_iter().map(Point::from).collect())
    }
}

impl From<ConvexPolygon> for RawPolygon {
    fn from(poly: ConvexPolygon) -> RawPolygon {
        RawPolygon {
            vertices: poly.vertices.into_iter().map(<[f64; 2]>::from).collect(),
        }
    }
}

impl ConvexPolygon {
    /// Builds a polygon from an ordered vertex ring (either orientation).
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GeomError> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if vertices.len() < 3 {
            return Err(GeomError::InsufficientPoints(vertices.len()));
        }
        if signed_area_of(&vertices) < 0.0 {
            vertices.reverse();
        }

        // Merge consecutive duplicates around the ring.
        vertices.dedup_by(|next, cur| cur.distance(*next) <= GEOM_EPS);
        while vertices.len() > 1
            && vertices[0].distance(*vertices.last().unwrap()) <= GEOM_EPS
        {
            vertices.pop();
        }

        // Remove collinear vertices one at a time against the live ring.
        loop {
            let n = vertices.len();
            if n < 3 {
                return Err(GeomError::InsufficientPoints(n));
            }
            let mut dropped = None;
            for i in 0..n {
                let prev = vertices[(i + n - 1) % n];
                let cur = vertices[i];
                let next = vertices[(i + 1) % n];
                let turn = orient(prev, cur, next);
                if turn.abs() <= GEOM_EPS * orient_scale(prev, cur, next) {
                    dropped = Some(i);
                    break;
                }
                if turn < 0.0 {
                    return Err(GeomError::NotConvex(i));
                }
            }
            match dropped {
                Some(i) => {
                    vertices.remove(i);
                }
                None => break,
            }
        }
        if signed_area_of(&vertices) <= GEOM_EPS {
            return Err(GeomError::Collinear);
        }

        // Canonical start: lexicographically smallest vertex first.
        let start = (0..vertices.len())
            .min_by(|&i, &j| {
                let (a, b) = (vertices[i], vertices[j]);
                (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap()
            })
            .unwrap();
        vertices.rotate_left(start);

        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    /// Directed edges (v_i, v_{i+1}) in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Outward half-planes of the edges; their intersection is the polygon.
    pub fn edge_half_planes(&self) -> Vec<HalfPlane> {
        self.edges()
            .map(|(a, b)| HalfPlane::left_of(a, b).expect("valid polygon edge"))
            .collect()
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Signed depth of `q`: the minimum over edges of the inward distance to
    /// the edge line. Positive inside, negative outside.
    pub fn depth(&self, q: Point) -> f64 {
        self.edge_half_planes()
            .iter()
            .map(|h| -h.signed_excess(q))
            .fold(f64::INFINITY, f64::min)
    }

    /// Point containment test with an explicit margin (in lattice units).
    pub fn contains_point(&self, q: Point, mode: Containment, margin: f64) -> bool {
        let depth = self.depth(q);
        match mode {
            Containment::Strict => depth > margin,
            Containment::Closed => depth >= -margin,
        }
    }

    pub fn translate(&self, by: Point) -> ConvexPolygon {
        ConvexPolygon::new(self.vertices.iter().map(|&v| v + by).collect())
            .expect("translation preserves validity")
    }

    /// Homothety with center `c` and ratio `factor > 0`.
    pub fn scale_about(&self, c: Point, factor: f64) -> Result<ConvexPolygon, GeomError> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(GeomError::BadScale(factor));
        }
        ConvexPolygon::new(self.vertices.iter().map(|&v| c + (v - c) * factor).collect())
    }

    pub fn rotate_about(&self, c: Point, angle: f64) -> ConvexPolygon {
        let (sin, cos) = angle.sin_cos();
        ConvexPolygon::new(
            self.vertices
                .iter()
                .map(|&v| {
                    let d = v - c;
                    c + Point::new(cos * d.x - sin * d.y, sin * d.x + cos * d.y)
                })
                .collect(),
        )
        .expect("rotation preserves validity")
    }
}

/// Shoelace sum: positive for counter-clockwise rings.
pub fn signed_area_of(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut sum = 0.0;
    for i in 0..n {
        sum += vertices[i].cross(vertices[(i + 1) % n]);
    }
    sum / 2.0
}

/// Convex hull by monotone chain. Collinear points on the hull boundary are
/// dropped, so no output triple is collinear.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon, GeomError> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let mut pts: Vec<Point> = points.to_vec();
    if pts.len() < 3 {
        return Err(GeomError::InsufficientPoints(pts.len()));
    }
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.distance(*b) <= GEOM_EPS);
    if pts.len() < 3 {
        return Err(GeomError::InsufficientPoints(pts.len()));
    }

    let chain = |iter: &mut dyn Iterator<Item = Point>| {
        let mut out: Vec<Point> = Vec::new();
        for p in iter {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if orient(a, b, p) <= GEOM_EPS * orient_scale(a, b, p) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        out
    };

    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);

    match ConvexPolygon::new(lower) {
        Ok(poly) => Ok(poly),
        Err(GeomError::InsufficientPoints(_)) | Err(GeomError::Collinear) => {
            Err(GeomError::Collinear)
        }
        Err(e) => Err(e),
    }
}

/// Clips `poly` by the half-plane `half`. Returns `None` when the
/// intersection has empty interior.
pub fn clip(poly: &ConvexPolygon, half: &HalfPlane) -> Option<ConvexPolygon> {
    let verts = poly.vertices();
    let n = verts.len();
    let mut out: Vec<Point> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let cur = verts[i];
        let next = verts[(i + 1) % n];
        let ec = half.signed_excess(cur);
        let en = half.signed_excess(next);
        if ec <= 0.0 {
            out.push(cur);
        }
        if (ec < 0.0 && en > 0.0) || (ec > 0.0 && en < 0.0) {
            let t = ec / (ec - en);
            out.push(cur + (next - cur) * t);
        }
    }
    ConvexPolygon::new(out).ok()
}

/// Intersection of two convex polygons: `p` clipped by every edge half-plane
/// of `q`. Returns `None` when the intersection has empty interior.
pub fn intersect(p: &ConvexPolygon, q: &ConvexPolygon) -> Option<ConvexPolygon> {
    let mut acc = p.clone();
    for half in q.edge_half_planes() {
        acc = clip(&acc, &half)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn hull_of_square_is_square() {
        let hull =
            convex_hull(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap();
        assert_eq!(hull.vertex_count(), 4);
        assert_eq!(hull.vertices()[0], pt(0.0, 0.0));
    }

    #[test]
    fn hull_drops_interior_point() {
        let hull =
            convex_hull(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 2.0), pt(1.0, 0.5)]).unwrap();
        assert_eq!(hull.vertex_count(), 3);
        assert!(hull.vertices().iter().all(|&v| v != pt(1.0, 0.5)));
    }

    #[test]
    fn hull_rejects_collinear_input() {
        let err = convex_hull(&[pt(0.0, 0.0), pt(1.0, 1.0), pt(2.0, 2.0), pt(3.0, 3.0)]);
        assert!(matches!(err, Err(GeomError::Collinear)));
        let err = convex_hull(&[pt(0.0, 0.0), pt(1.0, 1.0)]);
        assert!(matches!(err, Err(GeomError::InsufficientPoints(2))));
    }

    #[test]
    fn constructor_reorients_clockwise_input() {
        let cw = ConvexPolygon::new(vec![pt(0.0, 0.0), pt(0.0, 1.0), pt(1.0, 1.0), pt(1.0, 0.0)])
            .unwrap();
        assert!(signed_area_of(cw.vertices()) > 0.0);
        assert_eq!(cw, unit_square());
    }

    #[test]
    fn constructor_merges_collinear_and_duplicate_vertices() {
        let poly = ConvexPolygon::new(vec![
            pt(0.0, 0.0),
            pt(0.5, 0.0),
            pt(1.0, 0.0),
            pt(1.0, 1.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(poly.vertex_count(), 4);
    }

    #[test]
    fn constructor_rejects_reflex_ring() {
        let err = ConvexPolygon::new(vec![
            pt(0.0, 0.0),
            pt(2.0, 0.0),
            pt(1.0, 0.5),
            pt(2.0, 2.0),
            pt(0.0, 2.0),
        ]);
        assert!(matches!(err, Err(GeomError::NotConvex(_))));
    }

    #[test]
    fn clip_square_at_half() {
        let half = HalfPlane::new(pt(1.0, 0.0), 0.5).unwrap();
        let clipped = clip(&unit_square(), &half).unwrap();
        let (lo, hi) = clipped.bounding_box();
        assert!((lo.x - 0.0).abs() < 1e-12 && (hi.x - 0.5).abs() < 1e-12);
        assert!((lo.y - 0.0).abs() < 1e-12 && (hi.y - 1.0).abs() < 1e-12);
        assert_eq!(clipped.vertex_count(), 4);
    }

    #[test]
    fn clip_by_containing_half_plane_is_identity() {
        let half = HalfPlane::new(pt(1.0, 0.0), 2.0).unwrap();
        let clipped = clip(&unit_square(), &half).unwrap();
        assert_eq!(clipped, unit_square());
    }

    #[test]
    fn clip_to_empty() {
        let half = HalfPlane::new(pt(1.0, 0.0), -1.0).unwrap();
        assert!(clip(&unit_square(), &half).is_none());
        // Touching only along an edge: empty interior.
        let touching = HalfPlane::new(pt(-1.0, 0.0), 0.0).unwrap();
        assert!(clip(&unit_square().translate(pt(-1.0, 0.0)), &touching).is_none());
    }

    #[test]
    fn intersect_idempotent_and_slab() {
        let sq = unit_square();
        assert_eq!(intersect(&sq, &sq).unwrap(), sq);

        let shifted = sq.translate(pt(0.5, 0.0));
        let slab = intersect(&sq, &shifted).unwrap();
        let (lo, hi) = slab.bounding_box();
        assert!((lo.x - 0.5).abs() < 1e-12 && (hi.x - 1.0).abs() < 1e-12);

        let disjoint = sq.translate(pt(3.0, 0.0));
        assert!(intersect(&sq, &disjoint).is_none());
    }

    #[test]
    fn contains_point_modes() {
        let sq = unit_square();
        assert!(sq.contains_point(pt(0.5, 0.5), Containment::Strict, 0.0));
        assert!(!sq.contains_point(pt(0.0, 0.0), Containment::Strict, 0.0));
        assert!(sq.contains_point(pt(0.0, 0.0), Containment::Closed, 0.0));
        assert!(!sq.contains_point(pt(1.5, 0.5), Containment::Closed, 0.0));
        // Margin shrinks the strict interior.
        assert!(!sq.contains_point(pt(0.05, 0.5), Containment::Strict, 0.1));
    }

    #[test]
    fn polygon_json_round_trip_accepts_clockwise() {
        let json = r#"{"vertices": [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]}"#;
        let poly: ConvexPolygon = serde_json::from_str(json).unwrap();
        assert_eq!(poly, unit_square());
        let out = serde_json::to_string(&poly).unwrap();
        let back: ConvexPolygon = serde_json::from_str(&out).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn degenerate_json_is_rejected() {
        let json = r#"{"vertices": [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]}"#;
        assert!(serde_json::from_str::<ConvexPolygon>(json).is_err());
    }
}

//! The six classical functionals of a convex polygon, with witnesses.
//!
//! Perimeter `p`, area `A`, diameter `D`, minimal width `omega`,
//! circumradius `R` (minimal enclosing circle) and inradius `r` (largest
//! inscribed circle). Diameter and width run rotating calipers; the
//! circumradius uses a randomized incremental enclosing-circle construction
//! with a fixed shuffle seed; the inradius solves the Chebyshev-center
//! program by exhaustive enumeration of edge-constraint triples.

use crate::geom::{orient, signed_area_of, ConvexPolygon, Point};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Shuffle seed for the enclosing-circle construction. Fixed so that
/// witnesses and serialized reports are reproducible.
const MEC_SHUFFLE_SEED: u64 = 0x1a77_f4ee;

/// All six functionals of one polygon plus the geometric witnesses that
/// attain them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    /// Perimeter.
    pub p: f64,
    /// Area.
    #[serde(rename = "A")]
    pub area: f64,
    /// Diameter.
    #[serde(rename = "D")]
    pub diameter: f64,
    /// Minimal width.
    pub omega: f64,
    /// Circumradius (radius of the minimal enclosing circle).
    #[serde(rename = "R")]
    pub circumradius: f64,
    /// Inradius (radius of the largest inscribed circle).
    pub r: f64,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    /// Vertex index pair attaining the diameter, lowest pair first.
    pub diameter_pair: (usize, usize),
    /// Edge index attaining the minimal width and the opposite vertex.
    pub width_edge: usize,
    pub width_vertex: usize,
    pub circumcenter: Point,
    pub incenter: Point,
}

/// Shoelace area; positive for every valid polygon.
pub fn area(poly: &ConvexPolygon) -> f64 {
    signed_area_of(poly.vertices())
}

/// Sum of edge lengths.
pub fn perimeter(poly: &ConvexPolygon) -> f64 {
    poly.edges().map(|(a, b)| a.distance(b)).sum()
}

/// Maximum pairwise vertex distance via rotating calipers.
///
/// Returns the diameter and the attaining vertex pair; ties are broken by
/// the lexicographically smallest index pair.
pub fn diameter(poly: &ConvexPolygon) -> (f64, (usize, usize)) {
    let v = poly.vertices();
    let n = v.len();
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    let mut best = 0.0f64;

    let consider = |i: usize, j: usize, best: &mut f64, cands: &mut Vec<(usize, usize)>| {
        let d = v[i].distance(v[j]);
        if d > *best {
            *best = d;
            cands.clear();
        }
        // Keep near-ties so the lowest pair can be selected afterwards.
        if d >= *best * (1.0 - 1e-12) {
            cands.push(if i < j { (i, j) } else { (j, i) });
        }
    };

    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        loop {
            let nj = (j + 1) % n;
            // Advance the far pointer while it still moves away from edge i.
            if (v[ni] - v[i]).cross(v[nj] - v[j]) > 0.0 {
                consider(i, j, &mut best, &mut candidates);
                j = nj;
            } else {
                break;
            }
        }
        consider(i, j, &mut best, &mut candidates);
        consider(ni, j, &mut best, &mut candidates);
        consider(i, (j + 1) % n, &mut best, &mut candidates);
    }

    let witness = candidates
        .iter()
        .filter(|&&(i, j)| v[i].distance(v[j]) >= best * (1.0 - 1e-12))
        .min()
        .copied()
        .unwrap_or((0, 0));
    (best, witness)
}

/// Distance from point `p` to the line through `a` and `b`.
fn line_distance(a: Point, b: Point, p: Point) -> f64 {
    orient(a, b, p).abs() / a.distance(b)
}

/// Minimal width via rotating calipers: the smallest over edges of the
/// largest distance from the edge line to a vertex.
///
/// Returns the width, the minimizing edge index and the opposite vertex
/// index; the first minimizing edge wins ties.
pub fn width(poly: &ConvexPolygon) -> (f64, usize, usize) {
    let v = poly.vertices();
    let n = v.len();
    let mut best = f64::INFINITY;
    let mut witness = (0, 0);
    let mut k = 1;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        // Support distance is unimodal over the ring; the maximizing vertex
        // only advances as the edge does.
        let mut steps = 0;
        while steps < n && orient(a, b, v[(k + 1) % n]) > orient(a, b, v[k]) {
            k = (k + 1) % n;
            steps += 1;
        }
        let d = line_distance(a, b, v[k]);
        if d < best {
            best = d;
            witness = (i, k);
        }
    }
    (best, witness.0, witness.1)
}

#[derive(Debug, Clone, Copy)]
struct Circle {
    center: Point,
    radius: f64,
}

impl Circle {
    fn contains(&self, p: Point, slack: f64) -> bool {
        self.center.distance(p) <= self.radius + slack
    }
}

fn circle_from_two(a: Point, b: Point) -> Circle {
    let center = (a + b) * 0.5;
    Circle {
        center,
        radius: center.distance(a).max(center.distance(b)),
    }
}

/// Circumcircle of three points; `None` when they are collinear.
fn circle_from_three(a: Point, b: Point, c: Point) -> Option<Circle> {
    let d = 2.0 * orient(a, b, c);
    if d.abs() < 1e-14 * (a.distance(b) * b.distance(c)).max(1.0) {
        return None;
    }
    let na = a.dot(a);
    let nb = b.dot(b);
    let nc = c.dot(c);
    let ux = (na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y)) / d;
    let uy = (na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x)) / d;
    let center = Point::new(ux, uy);
    let radius = center
        .distance(a)
        .max(center.distance(b))
        .max(center.distance(c));
    Some(Circle { center, radius })
}

fn mec_slack(pts: &[Point]) -> f64 {
    let scale = pts
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max);
    1e-12 * scale
}

/// Minimal enclosing circle by randomized incremental construction.
fn enclosing_circle(points: &[Point]) -> Circle {
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(MEC_SHUFFLE_SEED);
    pts.shuffle(&mut rng);
    let slack = mec_slack(&pts);

    let mut circle = circle_from_two(pts[0], pts[1 % pts.len()]);
    for i in 0..pts.len() {
        if circle.contains(pts[i], slack) {
            continue;
        }
        // pts[i] lies on the boundary of the circle of pts[..=i].
        circle = Circle {
            center: pts[i],
            radius: 0.0,
        };
        for j in 0..i {
            if circle.contains(pts[j], slack) {
                continue;
            }
            circle = circle_from_two(pts[i], pts[j]);
            for k in 0..j {
                if circle.contains(pts[k], slack) {
                    continue;
                }
                circle = circle_from_three(pts[i], pts[j], pts[k])
                    .unwrap_or_else(|| circle_from_two(pts[i], pts[j]));
            }
        }
    }
    circle
}

/// Circumradius and circumcenter: the minimal enclosing circle of the
/// vertex set (which equals that of the polygon).
pub fn circumradius(poly: &ConvexPolygon) -> (f64, Point) {
    let c = enclosing_circle(poly.vertices());
    (c.radius, c.center)
}

/// Solves the 3x3 system `n_i . (x, y) + t = c_i` for three edge
/// constraints by Cramer's rule. Returns (x, y, t).
fn chebyshev_triple(
    normals: &[Point],
    offsets: &[f64],
    i: usize,
    j: usize,
    k: usize,
) -> Option<(Point, f64)> {
    let (a1, b1, c1) = (normals[i].x, normals[i].y, offsets[i]);
    let (a2, b2, c2) = (normals[j].x, normals[j].y, offsets[j]);
    let (a3, b3, c3) = (normals[k].x, normals[k].y, offsets[k]);
    // Unknowns (x, y, t); each row is a_i x + b_i y + t = c_i.
    let det = a1 * (b2 - b3) - b1 * (a2 - a3) + (a2 * b3 - a3 * b2);
    if det.abs() < 1e-12 {
        return None;
    }
    let dx = c1 * (b2 - b3) - b1 * (c2 - c3) + (c2 * b3 - c3 * b2);
    let dy = a1 * (c2 - c3) - c1 * (a2 - a3) + (a2 * c3 - a3 * c2);
    let dt = a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2);
    Some((Point::new(dx / det, dy / det), dt / det))
}

/// Inradius and Chebyshev center: the largest `t` with
/// `n_i . x <= c_i - t` over all edges, found by exhaustive enumeration of
/// constraint triples.
pub fn inradius(poly: &ConvexPolygon) -> (f64, Point) {
    let halves = poly.edge_half_planes();
    let normals: Vec<Point> = halves.iter().map(|h| h.normal()).collect();
    let offsets: Vec<f64> = halves.iter().map(|h| h.offset()).collect();
    let n = halves.len();

    let feasible = |center: Point, t: f64| {
        halves
            .iter()
            .all(|h| h.signed_excess(center) <= -t + 1e-9)
    };

    let mut best_t = f64::NEG_INFINITY;
    let mut best_center = poly.vertices()[0];
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if let Some((center, t)) = chebyshev_triple(&normals, &offsets, i, j, k) {
                    if t > best_t + 1e-12 && feasible(center, t) {
                        best_t = t;
                        best_center = center;
                    }
                }
            }
        }
    }
    (best_t, best_center)
}

/// Computes all six functionals with their witnesses.
pub fn report(poly: &ConvexPolygon) -> FunctionalReport {
    let (d, pair) = diameter(poly);
    let (w, w_edge, w_vertex) = width(poly);
    let (big_r, circumcenter) = circumradius(poly);
    let (small_r, incenter) = inradius(poly);
    FunctionalReport {
        p: perimeter(poly),
        area: area(poly),
        diameter: d,
        omega: w,
        circumradius: big_r,
        r: small_r,
        witnesses: Witnesses {
            diameter_pair: pair,
            width_edge: w_edge,
            width_vertex: w_vertex,
            circumcenter,
            incenter,
        },
    }
}

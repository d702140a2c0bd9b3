//! Shared generators and independent brute-force oracles for the
//! integration suites. Every oracle here is deliberately naive and kept
//! separate from the library's implementation paths.

// Each suite uses its own subset of these helpers.
#![allow(dead_code)]

use latfree::geom::{convex_hull, orient, ConvexPolygon, Point};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random convex polygon with at most 50 vertices, contained in roughly
/// the unit box: half hulls of uniform points, half jittered circles
/// (which stress near-cocircular and near-parallel configurations).
pub fn random_polygon(rng: &mut ChaCha8Rng) -> ConvexPolygon {
    loop {
        let circle_style = rng.random::<bool>();
        let points: Vec<Point> = if circle_style {
            let m = rng.random_range(8..=50);
            let radius = rng.random_range(0.2..0.55);
            let mut angles: Vec<f64> = (0..m)
                .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                .collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            angles
                .iter()
                .map(|&a| {
                    let r = radius * rng.random_range(0.8..1.0);
                    pt(0.5 + r * a.cos(), 0.5 + r * a.sin())
                })
                .collect()
        } else {
            let m = rng.random_range(3..=50);
            (0..m)
                .map(|_| pt(rng.random::<f64>(), rng.random::<f64>()))
                .collect()
        };
        if let Ok(hull) = convex_hull(&points) {
            return hull;
        }
    }
}

/// O(n^2) diameter oracle: maximum over all vertex pairs.
pub fn brute_diameter(poly: &ConvexPolygon) -> f64 {
    let v = poly.vertices();
    let mut best = 0.0f64;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            best = best.max(v[i].distance(v[j]));
        }
    }
    best
}

/// O(n^2) width oracle: minimum over edges of the farthest vertex from
/// the edge line.
pub fn brute_width(poly: &ConvexPolygon) -> f64 {
    let v = poly.vertices();
    let n = v.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let len = a.distance(b);
        let mut far = 0.0f64;
        for &p in v {
            far = far.max(orient(a, b, p).abs() / len);
        }
        best = best.min(far);
    }
    best
}

fn circumcircle(a: Point, b: Point, c: Point) -> Option<(Point, f64)> {
    let d = 2.0 * orient(a, b, c);
    if d.abs() < 1e-14 {
        return None;
    }
    let na = a.dot(a);
    let nb = b.dot(b);
    let nc = c.dot(c);
    let ux = (na * (b.y - c.y) + nb * (c.y - a.y) + nc * (a.y - b.y)) / d;
    let uy = (na * (c.x - b.x) + nb * (a.x - c.x) + nc * (b.x - a.x)) / d;
    let center = Point::new(ux, uy);
    let r = center.distance(a).max(center.distance(b)).max(center.distance(c));
    Some((center, r))
}

/// Exhaustive minimal-enclosing-circle oracle over all vertex pairs and
/// triples.
pub fn brute_enclosing_circle(poly: &ConvexPolygon) -> (f64, Point) {
    let v = poly.vertices();
    let n = v.len();
    let mut best: Option<(f64, Point)> = None;
    let offer = |center: Point, radius: f64, best: &mut Option<(f64, Point)>| {
        let slack = 1e-13 * (1.0 + radius);
        if v.iter().all(|&p| center.distance(p) <= radius + slack) {
            match best {
                Some((r, _)) if *r <= radius => {}
                _ => *best = Some((radius, center)),
            }
        }
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let center = (v[i] + v[j]) * 0.5;
            offer(center, center.distance(v[i]).max(center.distance(v[j])), &mut best);
            for k in (j + 1)..n {
                if let Some((center, radius)) = circumcircle(v[i], v[j], v[k]) {
                    offer(center, radius, &mut best);
                }
            }
        }
    }
    let (r, c) = best.expect("some candidate circle encloses the vertices");
    (r, c)
}

/// Dense-grid inradius oracle: the deepest point of a grid with the given
/// step. Underestimates the true inradius by at most about step.
pub fn grid_inradius(poly: &ConvexPolygon, step: f64) -> f64 {
    let halves: Vec<(Point, f64)> = poly
        .edge_half_planes()
        .iter()
        .map(|h| (h.normal(), h.offset()))
        .collect();
    let (lo, hi) = poly.bounding_box();
    let nx = ((hi.x - lo.x) / step).ceil() as usize;
    let ny = ((hi.y - lo.y) / step).ceil() as usize;
    let mut best = f64::NEG_INFINITY;
    for iy in 0..=ny {
        let y = lo.y + iy as f64 * step;
        for ix in 0..=nx {
            let q = Point::new(lo.x + ix as f64 * step, y);
            let mut depth = f64::INFINITY;
            for &(normal, offset) in &halves {
                depth = depth.min(offset - normal.dot(q));
                if depth <= best {
                    break;
                }
            }
            if depth > best {
                best = depth;
            }
        }
    }
    best
}

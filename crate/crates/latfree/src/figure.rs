//! Static SVG rendering of polygons, lattice points, witness circles, and
//! the rhombus-square overlay.
//!
//! Output is deterministic: fixed viewport (bounding box plus 10% margin),
//! fixed decimal formatting, no timestamps.

use crate::constructions::RhombusSquare;
use crate::functionals::report;
use crate::geom::{ConvexPolygon, Point};
use crate::lattice::DEFAULT_MARGIN;
use std::fmt::Write;

#[derive(Debug, Clone, Copy, Default)]
pub struct FigureOptions {
    /// Draw every lattice point inside the padded bounding box.
    pub lattice: bool,
    /// Draw the circumcircle and the inscribed circle with their centers.
    pub circles: bool,
}

/// World-to-SVG mapping: y is flipped inside the padded bounding box.
struct Frame {
    min: Point,
    max: Point,
}

impl Frame {
    fn around(points: impl Iterator<Item = Point>, pad_ratio: f64) -> Frame {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        let pad = ((max.x - min.x).max(max.y - min.y) * pad_ratio).max(1e-3);
        Frame {
            min: Point::new(min.x - pad, min.y - pad),
            max: Point::new(max.x + pad, max.y + pad),
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (p.x, self.min.y + self.max.y - p.y)
    }

    fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Stroke width and dot radius scale with the viewport.
    fn unit(&self) -> f64 {
        self.width().max(self.height()) / 300.0
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

fn open_svg(out: &mut String, frame: &Frame) {
    let w = frame.width();
    let h = frame.height();
    let height_px = (640.0 * h / w).round();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"640\" height=\"{}\">",
        fmt(frame.min.x),
        fmt(frame.min.y),
        fmt(w),
        fmt(h),
        height_px
    );
}

fn path_data(frame: &Frame, poly: &ConvexPolygon) -> String {
    let mut d = String::new();
    for (i, &v) in poly.vertices().iter().enumerate() {
        let (x, y) = frame.map(v);
        let _ = write!(d, "{}{},{} ", if i == 0 { "M" } else { "L" }, fmt(x), fmt(y));
    }
    d.push('Z');
    d
}

fn polygon_path(out: &mut String, frame: &Frame, poly: &ConvexPolygon, style: &str) {
    let _ = writeln!(
        out,
        "<path d=\"{}\" {} stroke-width=\"{}\"/>",
        path_data(frame, poly),
        style,
        fmt(frame.unit())
    );
}

fn circle(out: &mut String, frame: &Frame, center: Point, radius: f64, style: &str) {
    let (cx, cy) = frame.map(center);
    let _ = writeln!(
        out,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {} stroke-width=\"{}\"/>",
        fmt(cx),
        fmt(cy),
        fmt(radius),
        style,
        fmt(frame.unit())
    );
}

fn dot(out: &mut String, frame: &Frame, center: Point, radius: f64, fill: &str) {
    let (cx, cy) = frame.map(center);
    let _ = writeln!(
        out,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
        fmt(cx),
        fmt(cy),
        fmt(radius),
        fill
    );
}

fn segment(out: &mut String, frame: &Frame, a: Point, b: Point, style: &str) {
    let (x1, y1) = frame.map(a);
    let (x2, y2) = frame.map(b);
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {} stroke-width=\"{}\"/>",
        fmt(x1),
        fmt(y1),
        fmt(x2),
        fmt(y2),
        style,
        fmt(frame.unit())
    );
}

fn label(out: &mut String, frame: &Frame, at: Point, text: &str) {
    let (x, y) = frame.map(at);
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\">{}</text>",
        fmt(x),
        fmt(y),
        fmt(frame.unit() * 10.0),
        text
    );
}

/// Renders one polygon, optionally with the lattice points of its padded
/// bounding box and its circumscribed and inscribed circles.
pub fn emit_figure(poly: &ConvexPolygon, options: &FigureOptions) -> String {
    let mut extent: Vec<Point> = poly.vertices().to_vec();
    let rep = if options.circles {
        let rep = report(poly);
        extent.push(rep.witnesses.circumcenter + Point::new(rep.circumradius, rep.circumradius));
        extent.push(rep.witnesses.circumcenter - Point::new(rep.circumradius, rep.circumradius));
        Some(rep)
    } else {
        None
    };
    let frame = Frame::around(extent.into_iter(), 0.1);
    let mut out = String::new();
    open_svg(&mut out, &frame);
    polygon_path(
        &mut out,
        &frame,
        poly,
        "fill=\"#d8e8f8\" stroke=\"#222222\"",
    );
    if options.lattice {
        for kx in (frame.min.x.ceil() as i64)..=(frame.max.x.floor() as i64) {
            for ky in (frame.min.y.ceil() as i64)..=(frame.max.y.floor() as i64) {
                let p = Point::new(kx as f64, ky as f64);
                let inside = poly.contains_point(p, crate::geom::Containment::Closed, DEFAULT_MARGIN);
                let fill = if inside { "#c03030" } else { "#606060" };
                dot(&mut out, &frame, p, frame.unit() * 2.0, fill);
            }
        }
    }
    if let Some(rep) = rep {
        circle(
            &mut out,
            &frame,
            rep.witnesses.circumcenter,
            rep.circumradius,
            "fill=\"none\" stroke=\"#3050c0\"",
        );
        dot(&mut out, &frame, rep.witnesses.circumcenter, frame.unit() * 1.5, "#3050c0");
        circle(
            &mut out,
            &frame,
            rep.witnesses.incenter,
            rep.r,
            "fill=\"none\" stroke=\"#30a050\"",
        );
        dot(&mut out, &frame, rep.witnesses.incenter, frame.unit() * 1.5, "#30a050");
    }
    out.push_str("</svg>\n");
    out
}

/// Renders the rhombus-square construction: both bodies, their
/// intersection, the supporting line segments, and the six measured
/// segments with labels.
pub fn emit_lemma_figure(instance: &RhombusSquare) -> String {
    let extent = instance
        .rhombus
        .vertices()
        .iter()
        .chain(instance.square.vertices())
        .copied();
    let frame = Frame::around(extent, 0.1);
    let mut out = String::new();
    open_svg(&mut out, &frame);
    polygon_path(
        &mut out,
        &frame,
        &instance.square,
        "fill=\"none\" stroke=\"#3050c0\"",
    );
    polygon_path(
        &mut out,
        &frame,
        &instance.rhombus,
        "fill=\"none\" stroke=\"#c03030\"",
    );
    polygon_path(
        &mut out,
        &frame,
        &instance.intersection,
        "fill=\"#f0e0b0\" stroke=\"#222222\"",
    );

    let origin = Point::new(0.0, 0.0);
    let inner = instance.inner_point;
    let outer = instance.outer_point;
    let inner_foot = Point::new(inner.x, 0.0);
    let outer_foot = Point::new(outer.x, 0.0);

    segment(&mut out, &frame, origin, inner, "stroke=\"#222222\"");
    segment(&mut out, &frame, origin, outer, "stroke=\"#222222\"");
    segment(&mut out, &frame, origin, inner_foot, "stroke=\"#30a050\"");
    segment(&mut out, &frame, inner_foot, inner, "stroke=\"#30a050\"");
    segment(&mut out, &frame, origin, outer_foot, "stroke=\"#9040c0\"");
    segment(&mut out, &frame, outer_foot, outer, "stroke=\"#9040c0\"");

    dot(&mut out, &frame, origin, frame.unit() * 2.0, "#222222");
    dot(&mut out, &frame, inner, frame.unit() * 2.0, "#30a050");
    dot(&mut out, &frame, outer, frame.unit() * 2.0, "#9040c0");

    label(&mut out, &frame, inner * 0.5, "a");
    label(&mut out, &frame, inner_foot * 0.5, "A");
    label(&mut out, &frame, inner_foot + (inner - inner_foot) * 0.5, "B'");
    label(&mut out, &frame, outer * 0.5, "b");
    label(&mut out, &frame, outer_foot * 0.5, "B");
    label(&mut out, &frame, outer_foot + (outer - outer_foot) * 0.5, "C");

    out.push_str("</svg>\n");
    out
}

/// Lightweight well-formedness check used by tests and the CLI: tags are
/// balanced and every numeric attribute is finite.
pub fn svg_is_well_formed(svg: &str) -> bool {
    if !svg.starts_with("<svg") || !svg.trim_end().ends_with("</svg>") {
        return false;
    }
    if svg.contains("NaN") || svg.contains("inf") {
        return false;
    }
    let opens = svg.matches('<').count();
    let closes = svg.matches('>').count();
    opens == closes
}

//! Planar convex geometry for lattice-free bodies.
//!
//! The crate computes the six classical functionals of a convex polygon
//! (perimeter, area, diameter, minimal width, circumradius, inradius),
//! tests lattice constraints, evaluates a registry of geometric
//! inequalities with slack reporting, reconstructs the extremal shapes
//! behind the sharp bounds, and searches lattice-free shape families for
//! the conjectured constants `1 + 2/sqrt(3)` (perimeter minus twice the
//! diameter) and `2` (perimeter minus four times the circumradius).

pub mod constructions;
pub mod figure;
pub mod functionals;
pub mod geom;
pub mod inequalities;
pub mod lattice;
pub mod polyio;
pub mod search;

pub use functionals::{report, FunctionalReport};
pub use lattice::{is_lattice_free, is_unconditional, lattice_points_in, max_lattice_free_scale,
                  LatticeStatus, UnconditionalityCertificate, DEFAULT_MARGIN};
pub use geom::{clip, convex_hull, intersect, Containment, ConvexPolygon, GeomError, HalfPlane,
               Point, GEOM_EPS};

//! Registry of geometric inequalities with applicability predicates and
//! slack-reporting evaluation.
//!
//! Every entry relates the six functionals of one convex polygon. Weak
//! relations hold when `rhs - lhs >= -tol`; strict relations require
//! positive slack, with slack inside `[0, tol]` reported as tight rather
//! than failed (the sharp families approach but never attain their
//! bounds). Conjectured entries never count as hard violations: a negative
//! slack there is surfaced as a counterexample candidate.

use crate::functionals::{report, FunctionalReport};
use crate::geom::ConvexPolygon;
use crate::lattice::{is_lattice_free, is_unconditional, LatticeStatus, DEFAULT_MARGIN};
use serde::{Deserialize, Serialize};

/// Evaluation tolerance for weak relations and tightness reporting.
pub const EVAL_TOL: f64 = 1e-9;

/// One-sided slack granted to the area-vs-diameter entry: its constant is
/// known only to three decimals.
const SCOTT_AREA_TOL: f64 = 1e-3;

/// Approximate constant in the area-vs-diameter bound for lattice-free
/// bodies.
pub const SCOTT_AREA_CONSTANT: f64 = 1.144;

/// Sharp perimeter-diameter constant `1 + 2/sqrt(3)`.
pub const SHARP_PD: f64 = 2.154_700_538_379_251_6;

/// Sharp perimeter-circumradius constant.
pub const SHARP_PR: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown inequality id: {0}")]
    UnknownId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `lhs <= rhs`.
    Weak,
    /// `lhs < rhs`.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Theorem,
    Cited,
    Conjecture,
}

/// Class of bodies an entry applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    AllConvex,
    LatticeFree,
    LatticeFreeUnconditional,
    Triangle,
    LatticeFreeTriangle,
    /// Any convex body whose inradius is at most 1/2.
    InradiusAtMostHalf,
}

/// Everything the registry formulas read from one polygon.
#[derive(Debug, Clone)]
pub struct BodyProfile {
    pub report: FunctionalReport,
    pub lattice: LatticeStatus,
    pub unconditional: bool,
    pub triangle: bool,
}

/// Computes the functional report, lattice status and shape classification
/// once, for evaluation of many entries.
pub fn profile(poly: &ConvexPolygon) -> BodyProfile {
    BodyProfile {
        report: report(poly),
        lattice: is_lattice_free(poly, DEFAULT_MARGIN),
        unconditional: is_unconditional(poly, EVAL_TOL).is_some(),
        triangle: poly.is_triangle(),
    }
}

impl Applicability {
    pub fn admits(&self, profile: &BodyProfile) -> bool {
        match self {
            Applicability::AllConvex => true,
            Applicability::LatticeFree => profile.lattice.lattice_free,
            Applicability::LatticeFreeUnconditional => {
                profile.lattice.lattice_free && profile.unconditional
            }
            Applicability::Triangle => profile.triangle,
            Applicability::LatticeFreeTriangle => {
                profile.lattice.lattice_free && profile.triangle
            }
            Applicability::InradiusAtMostHalf => profile.report.r <= 0.5 + EVAL_TOL,
        }
    }
}

/// One registry entry: a relation between formulas over the functionals.
pub struct InequalityEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub relation: Relation,
    pub status: Status,
    pub applicability: Applicability,
    pub tol: f64,
    lhs: fn(&FunctionalReport) -> f64,
    rhs: fn(&FunctionalReport) -> f64,
    /// Extra condition folded into `holds`, for compound statements.
    side: Option<fn(&FunctionalReport) -> bool>,
}

/// Result of evaluating one entry on one polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityResult {
    pub id: String,
    pub status: Status,
    pub applicable: bool,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// `rhs - lhs`.
    pub slack: Option<f64>,
    pub holds: Option<bool>,
    /// Slack within the tolerance of zero: the bound is attained.
    pub tight: Option<bool>,
}

/// A failed applicable entry. Conjectured entries are counterexample
/// candidates, not hard violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub id: String,
    pub status: Status,
    pub slack: f64,
    pub counterexample_candidate: bool,
}

fn d2r_equal(rep: &FunctionalReport) -> bool {
    (rep.diameter - 2.0 * rep.circumradius).abs() <= EVAL_TOL * rep.diameter.max(1.0)
}

/// The full registry, in fixed order.
pub static REGISTRY: &[InequalityEntry] = &[
    InequalityEntry {
        id: "kubota",
        description: "sqrt(3) * D * (p - 2D) <= 4A for convex bodies (Kubota)",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::AllConvex,
        tol: EVAL_TOL,
        lhs: |f| 3f64.sqrt() * f.diameter * (f.p - 2.0 * f.diameter),
        rhs: |f| 4.0 * f.area,
        side: None,
    },
    InequalityEntry {
        id: "scott_area",
        description: "A <= 1.144 * D for lattice-free bodies (Scott)",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::LatticeFree,
        tol: SCOTT_AREA_TOL,
        lhs: |f| f.area,
        rhs: |f| SCOTT_AREA_CONSTANT * f.diameter,
        side: None,
    },
    InequalityEntry {
        id: "crude_pD",
        description: "p - 2D <= 2.65 for lattice-free bodies",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| f.p - 2.0 * f.diameter,
        rhs: |_| 2.65,
        side: None,
    },
    InequalityEntry {
        id: "conj_pD",
        description: "p - 2D <= 1 + 2/sqrt(3) for lattice-free bodies (conjectured sharp)",
        relation: Relation::Weak,
        status: Status::Conjecture,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| f.p - 2.0 * f.diameter,
        rhs: |_| SHARP_PD,
        side: None,
    },
    InequalityEntry {
        id: "conj_pR",
        description: "p - 4R <= 2 for lattice-free bodies (conjectured sharp)",
        relation: Relation::Weak,
        status: Status::Conjecture,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| f.p - 4.0 * f.circumradius,
        rhs: |_| SHARP_PR,
        side: None,
    },
    InequalityEntry {
        id: "thm1",
        description: "p - 4R <= 2 with p - 2D = p - 4R for lattice-free unconditional bodies",
        relation: Relation::Weak,
        status: Status::Theorem,
        applicability: Applicability::LatticeFreeUnconditional,
        tol: EVAL_TOL,
        lhs: |f| f.p - 4.0 * f.circumradius,
        rhs: |_| 2.0,
        side: Some(d2r_equal),
    },
    InequalityEntry {
        id: "remark_r",
        description: "p - 4R <= 2 whenever r <= 1/2",
        relation: Relation::Weak,
        status: Status::Theorem,
        applicability: Applicability::InradiusAtMostHalf,
        tol: EVAL_TOL,
        lhs: |f| f.p - 4.0 * f.circumradius,
        rhs: |_| 2.0,
        side: None,
    },
    InequalityEntry {
        id: "ht_R",
        description: "p <= 4R + 4r for convex bodies (Henk-Tsintsifas)",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::AllConvex,
        tol: EVAL_TOL,
        lhs: |f| f.p,
        rhs: |f| 4.0 * f.circumradius + 4.0 * f.r,
        side: None,
    },
    InequalityEntry {
        id: "ht_D",
        description: "p <= 2D + 4r for convex bodies",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::AllConvex,
        tol: EVAL_TOL,
        lhs: |f| f.p,
        rhs: |f| 2.0 * f.diameter + 4.0 * f.r,
        side: None,
    },
    InequalityEntry {
        id: "thm2",
        description: "p - 2D <= (2/sqrt(3)) * (1 + omega/D) for lattice-free triangles",
        relation: Relation::Weak,
        status: Status::Theorem,
        applicability: Applicability::LatticeFreeTriangle,
        tol: EVAL_TOL,
        lhs: |f| f.p - 2.0 * f.diameter,
        rhs: |f| 2.0 / 3f64.sqrt() * (1.0 + f.omega / f.diameter),
        side: None,
    },
    InequalityEntry {
        id: "tri_wD",
        description: "omega <= (sqrt(3)/2) * D for triangles",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::Triangle,
        tol: EVAL_TOL,
        lhs: |f| f.omega,
        rhs: |f| 3f64.sqrt() / 2.0 * f.diameter,
        side: None,
    },
    InequalityEntry {
        id: "scott78",
        description: "(omega - 1)(D - 1) <= 1 for lattice-free triangles (Scott)",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::LatticeFreeTriangle,
        tol: EVAL_TOL,
        lhs: |f| (f.omega - 1.0) * (f.diameter - 1.0),
        rhs: |_| 1.0,
        side: None,
    },
    InequalityEntry {
        id: "as96",
        description: "(2r - 1)(D - 1) < 1 for lattice-free bodies",
        relation: Relation::Strict,
        status: Status::Cited,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| (2.0 * f.r - 1.0) * (f.diameter - 1.0),
        rhs: |_| 1.0,
        side: None,
    },
    InequalityEntry {
        id: "sa99",
        description: "(2r - 1)(2R - 1) < 1 for lattice-free bodies",
        relation: Relation::Strict,
        status: Status::Cited,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| (2.0 * f.r - 1.0) * (2.0 * f.circumradius - 1.0),
        rhs: |_| 1.0,
        side: None,
    },
    InequalityEntry {
        id: "thm3i",
        description: "((D - 1)/D) * (p - 2D) < 2 for lattice-free bodies (sharp)",
        relation: Relation::Strict,
        status: Status::Theorem,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| (f.diameter - 1.0) / f.diameter * (f.p - 2.0 * f.diameter),
        rhs: |_| 2.0,
        side: None,
    },
    InequalityEntry {
        id: "thm3ii",
        description: "((2R - 1)/(2R)) * (p - 4R) < 2 for lattice-free bodies (sharp)",
        relation: Relation::Strict,
        status: Status::Theorem,
        applicability: Applicability::LatticeFree,
        tol: EVAL_TOL,
        lhs: |f| {
            (2.0 * f.circumradius - 1.0) / (2.0 * f.circumradius)
                * (f.p - 4.0 * f.circumradius)
        },
        rhs: |_| 2.0,
        side: None,
    },
    InequalityEntry {
        id: "d_2R",
        description: "D <= 2R for convex bodies",
        relation: Relation::Weak,
        status: Status::Cited,
        applicability: Applicability::AllConvex,
        tol: EVAL_TOL,
        lhs: |f| f.diameter,
        rhs: |f| 2.0 * f.circumradius,
        side: None,
    },
];

pub fn entry(id: &str) -> Result<&'static InequalityEntry, RegistryError> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| RegistryError::UnknownId(id.to_string()))
}

/// Evaluates one entry against a precomputed profile.
pub fn evaluate_with_profile(
    entry: &InequalityEntry,
    profile: &BodyProfile,
) -> InequalityResult {
    if !entry.applicability.admits(profile) {
        return InequalityResult {
            id: entry.id.to_string(),
            status: entry.status,
            applicable: false,
            lhs: None,
            rhs: None,
            slack: None,
            holds: None,
            tight: None,
        };
    }
    let lhs = (entry.lhs)(&profile.report);
    let rhs = (entry.rhs)(&profile.report);
    let slack = rhs - lhs;
    let relation_holds = match entry.relation {
        Relation::Weak => slack >= -entry.tol,
        Relation::Strict => slack >= 0.0,
    };
    let side_holds = entry.side.is_none_or(|side| side(&profile.report));
    InequalityResult {
        id: entry.id.to_string(),
        status: entry.status,
        applicable: true,
        lhs: Some(lhs),
        rhs: Some(rhs),
        slack: Some(slack),
        holds: Some(relation_holds && side_holds),
        tight: Some(slack.abs() <= entry.tol),
    }
}

/// Evaluates one registry entry by id on a polygon.
pub fn evaluate(id: &str, poly: &ConvexPolygon) -> Result<InequalityResult, RegistryError> {
    let entry = entry(id)?;
    Ok(evaluate_with_profile(entry, &profile(poly)))
}

/// Evaluates every registry entry, in registry order, sharing one profile.
pub fn evaluate_all(poly: &ConvexPolygon) -> Vec<InequalityResult> {
    let profile = profile(poly);
    REGISTRY
        .iter()
        .map(|e| evaluate_with_profile(e, &profile))
        .collect()
}

/// Applicable entries that failed. Conjectured entries are included only
/// on request and flagged as counterexample candidates.
pub fn violations(results: &[InequalityResult], include_conjectures: bool) -> Vec<Violation> {
    results
        .iter()
        .filter(|r| r.applicable && r.holds == Some(false))
        .filter(|r| include_conjectures || r.status != Status::Conjecture)
        .map(|r| Violation {
            id: r.id.clone(),
            status: r.status,
            slack: r.slack.unwrap_or(f64::NAN),
            counterexample_candidate: r.status == Status::Conjecture,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{equilateral_extremizer, kn_family};
    use crate::geom::Point;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn registry_has_seventeen_entries_with_unique_ids() {
        assert_eq!(REGISTRY.len(), 17);
        let mut ids: Vec<&str> = REGISTRY.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 17);
    }

    #[test]
    fn extremizer_attains_triangle_bound() {
        let tri = equilateral_extremizer();
        let res = evaluate("thm2", &tri).unwrap();
        assert!(res.applicable);
        assert!(res.slack.unwrap().abs() < 1e-9);
        assert!(res.tight.unwrap());
        assert!(res.holds.unwrap());

        let res = evaluate("scott78", &tri).unwrap();
        assert!((res.lhs.unwrap() - 1.0).abs() < 1e-9);
        assert!(res.slack.unwrap().abs() < 1e-9);
    }

    #[test]
    fn square_examples() {
        let sq = unit_square();
        let res = evaluate("as96", &sq).unwrap();
        assert!(res.lhs.unwrap().abs() < 1e-9);
        assert!(res.holds.unwrap());

        let res = evaluate("kubota", &sq).unwrap();
        let expected = 6f64.sqrt() * (4.0 - 2.0 * 2f64.sqrt());
        assert!((res.lhs.unwrap() - expected).abs() < 1e-9);
        assert!((expected - 2.8698).abs() < 1e-4);
        assert!((res.rhs.unwrap() - 4.0).abs() < 1e-12);

        // Lattice-free and unconditional: the compound entry applies.
        let res = evaluate("thm1", &sq).unwrap();
        assert!(res.applicable);
        assert!((res.lhs.unwrap() - (4.0 - 2.0 * 2f64.sqrt())).abs() < 1e-9);
        assert!(res.holds.unwrap());
    }

    #[test]
    fn non_lattice_free_body_short_circuits() {
        let big = ConvexPolygon::new(vec![
            Point::new(-0.5, -0.5),
            Point::new(1.5, -0.5),
            Point::new(1.5, 1.5),
            Point::new(-0.5, 1.5),
        ])
        .unwrap();
        for res in evaluate_all(&big) {
            let e = entry(&res.id).unwrap();
            match e.applicability {
                Applicability::LatticeFree
                | Applicability::LatticeFreeTriangle
                | Applicability::LatticeFreeUnconditional => {
                    assert!(!res.applicable, "{} should not apply", res.id);
                    assert!(res.lhs.is_none() && res.slack.is_none());
                }
                _ => {}
            }
        }
    }

    #[test]
    fn wide_strip_sharp_entry_value() {
        let res = evaluate("thm3i", &kn_family(10)).unwrap();
        assert!((res.lhs.unwrap() - 1.8526).abs() < 1e-4);
        assert!(res.holds.unwrap());
    }

    #[test]
    fn evaluate_all_on_square_has_no_violations() {
        let results = evaluate_all(&unit_square());
        assert_eq!(results.len(), 17);
        assert!(violations(&results, true).is_empty());
    }

    #[test]
    fn injected_record_is_reported_as_violation() {
        let mut results = evaluate_all(&unit_square());
        results[5].holds = Some(false);
        results[5].slack = Some(-0.1);
        let v = violations(&results, false);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].id, "thm1");
        assert!(!v[0].counterexample_candidate);

        // A failed conjecture surfaces only on request, flagged.
        results[3].holds = Some(false);
        results[3].slack = Some(-0.2);
        assert_eq!(violations(&results, false).len(), 1);
        let with_conj = violations(&results, true);
        assert_eq!(with_conj.len(), 2);
        assert!(with_conj.iter().any(|v| v.counterexample_candidate));
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(
            evaluate("jung", &unit_square()),
            Err(RegistryError::UnknownId(_))
        ));
    }
}

//! Numerical search over lattice-free shape families for the sharp
//! constants: a dense grid over the normalized-triangle domain, simulated
//! annealing over triangles and free polygons, and seeded batch
//! verification of the inequality registry.
//!
//! The lattice constraint is enforced by projection: every evaluated state
//! is re-inflated about its incenter with [`max_lattice_free_scale`], so
//! reported maxima are valid lower bounds for the suprema.

use crate::constructions::{
    lr_objective, random_lattice_free, triangle_lr, LrTriangleParams,
};
use crate::functionals::{report, FunctionalReport};
use crate::geom::{convex_hull, ConvexPolygon, Point};
use crate::inequalities::{
    evaluate_all, violations, Status, Violation, SHARP_PD, SHARP_PR,
};
use crate::lattice::max_lattice_free_scale;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    BadConfig(String),
}

/// Objective functional to maximize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    /// Perimeter minus twice the diameter; conjectured supremum `1 + 2/sqrt(3)`.
    #[serde(rename = "pD")]
    PD,
    /// Perimeter minus four circumradii; conjectured supremum `2`.
    #[serde(rename = "pR")]
    PR,
}

impl Objective {
    pub fn value(&self, rep: &FunctionalReport) -> f64 {
        match self {
            Objective::PD => rep.p - 2.0 * rep.diameter,
            Objective::PR => rep.p - 4.0 * rep.circumradius,
        }
    }

    /// Same value computed from the polygon directly, skipping the
    /// functionals the objective does not read.
    fn eval(&self, poly: &ConvexPolygon) -> f64 {
        let p = crate::functionals::perimeter(poly);
        match self {
            Objective::PD => p - 2.0 * crate::functionals::diameter(poly).0,
            Objective::PR => p - 4.0 * crate::functionals::circumradius(poly).0,
        }
    }

    /// The conjectured sharp constant for this objective.
    pub fn conjectured_bound(&self) -> f64 {
        match self {
            Objective::PD => SHARP_PD,
            Objective::PR => SHARP_PR,
        }
    }
}

/// Shape family the search walks over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// The two-parameter domain of normalized lattice-free triangles.
    LrTriangles,
    /// Free polygons with the given number of generator points, kept
    /// lattice-free by incenter rescaling.
    FreePolygons { vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub objective: Objective,
    pub family: Family,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Perturbation radius at the first and last iteration; decays
    /// geometrically in between.
    pub initial_radius: f64,
    pub final_radius: f64,
    pub lattice_margin: f64,
}

impl SearchConfig {
    /// Default budget: generous, sized so the circumradius objective walks
    /// far out along the strip families rather than stalling on compact
    /// local maxima.
    pub fn new(objective: Objective, family: Family) -> Self {
        SearchConfig {
            objective,
            family,
            iterations: 800_000,
            restarts: 4,
            seed: 0,
            initial_radius: 1.0,
            final_radius: 2e-4,
            lattice_margin: crate::lattice::DEFAULT_MARGIN,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.iterations < 1 {
            return Err(SearchError::BadConfig("iterations must be >= 1".into()));
        }
        if self.restarts < 1 {
            return Err(SearchError::BadConfig("restarts must be >= 1".into()));
        }
        if let Family::FreePolygons { vertices } = self.family {
            if !(3..=100).contains(&vertices) {
                return Err(SearchError::BadConfig(format!(
                    "free-polygon vertex count must be in 3..=100, got {vertices}"
                )));
            }
        }
        if !(self.initial_radius > 0.0
            && self.final_radius > 0.0
            && self.final_radius <= self.initial_radius)
        {
            return Err(SearchError::BadConfig(
                "perturbation radii must be positive and non-increasing".into(),
            ));
        }
        if self.lattice_margin < 0.0 {
            return Err(SearchError::BadConfig("lattice margin must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartRecord {
    pub restart: usize,
    pub seed: u64,
    pub accepted_moves: usize,
    pub best_value: f64,
    /// Best-so-far improvements, in iteration order.
    pub trace: Vec<TracePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub objective: Objective,
    pub best_value: f64,
    pub best_polygon: ConvexPolygon,
    pub conjectured_bound: f64,
    /// Conjectured constant minus the best value found; negative flags a
    /// counterexample candidate.
    pub conjecture_gap: f64,
    pub counterexample: bool,
    pub history: Vec<RestartRecord>,
}

/// Metropolis temperature schedule: geometric decay over the budget.
const TEMP_INITIAL: f64 = 0.5;
const TEMP_FINAL: f64 = 1e-4;

fn geometric(initial: f64, final_: f64, step: usize, steps: usize) -> f64 {
    if steps <= 1 {
        return final_;
    }
    let t = step as f64 / (steps - 1) as f64;
    initial * (final_ / initial).powf(t)
}

/// Dense scan of the normalized-triangle objective over
/// `right in [lo, hi]`, `left in [min_left(right), right]`.
/// Returns the maximum and its parameters.
pub fn grid_search_lr_over(
    resolution: usize,
    right_lo: f64,
    right_hi: f64,
) -> (f64, LrTriangleParams) {
    assert!(resolution >= 100, "grid resolution must be at least 100");
    assert!(right_hi > right_lo);
    let mut best = f64::NEG_INFINITY;
    let mut best_params = None;
    for i in 0..resolution {
        let t = i as f64 / (resolution - 1) as f64;
        let right = right_lo + (right_hi - right_lo) * t;
        let left_lo = LrTriangleParams::min_left(right);
        let left_hi = right;
        for j in 0..resolution {
            let s = j as f64 / (resolution - 1) as f64;
            let left = (left_lo + (left_hi - left_lo) * s).clamp(left_lo, left_hi);
            let params = LrTriangleParams::new(left, right)
                .expect("grid points lie in the admissible domain");
            let value = lr_objective(&params);
            if value > best {
                best = value;
                best_params = Some(params);
            }
        }
    }
    (best, best_params.expect("grid is nonempty"))
}

/// Full-domain grid scan: `right` from `1/sqrt(3)` to 20.
pub fn grid_search_lr(resolution: usize) -> (f64, LrTriangleParams) {
    grid_search_lr_over(resolution, 1.0 / 3f64.sqrt(), 20.0)
}

/// One annealing state: a lattice-free polygon plus the family-specific
/// parameters it came from. Free states keep their generator points (some
/// may sit inside the hull), mapped along by every refit, so vertices
/// absorbed by the hull can resurface in later moves.
#[derive(Clone)]
enum State {
    Triangle(LrTriangleParams),
    Free {
        generators: Vec<Point>,
        body: ConvexPolygon,
    },
}

impl State {
    fn polygon(&self) -> ConvexPolygon {
        match self {
            State::Triangle(params) => triangle_lr(params),
            State::Free { body, .. } => body.clone(),
        }
    }
}

fn state_value(objective: Objective, state: &State) -> f64 {
    match state {
        State::Triangle(params) => objective.eval(&triangle_lr(params)),
        State::Free { body, .. } => objective.eval(body),
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Re-inflates the hull of the generators about its incenter into a
/// lattice-free body, mapping the generators by the same homothety.
fn refit(generators: &[Point], margin: f64) -> Option<State> {
    let hull = convex_hull(generators).ok()?;
    let (_, incenter) = crate::functionals::inradius(&hull);
    let (factor, body) = max_lattice_free_scale(&hull, incenter, margin).ok()?;
    let mapped = generators
        .iter()
        .map(|&g| incenter + (g - incenter) * factor)
        .collect();
    Some(State::Free {
        generators: mapped,
        body,
    })
}

fn initial_state(config: &SearchConfig, rng: &mut ChaCha8Rng) -> State {
    match config.family {
        Family::LrTriangles => {
            let right = rng.random_range(1.0 / 3f64.sqrt()..3.0);
            let left_lo = LrTriangleParams::min_left(right);
            let left = rng.random_range(left_lo..=right);
            State::Triangle(
                LrTriangleParams::new(left, right).expect("sampled inside the domain"),
            )
        }
        Family::FreePolygons { vertices } => loop {
            let generators: Vec<Point> = (0..vertices)
                .map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>()))
                .collect();
            let offset = Point::new(rng.random::<f64>(), rng.random::<f64>());
            let mean = generators
                .iter()
                .fold(Point::new(0.0, 0.0), |acc, &g| acc + g)
                * (1.0 / vertices as f64);
            let moved: Vec<Point> =
                generators.iter().map(|&g| g + (offset - mean)).collect();
            if let Some(state) = refit(&moved, config.lattice_margin) {
                return state;
            }
        },
    }
}

fn propose(
    state: &State,
    config: &SearchConfig,
    radius: f64,
    rng: &mut ChaCha8Rng,
) -> Option<State> {
    match state {
        State::Triangle(params) => {
            let right = (params.right() + radius * gauss(rng))
                .clamp(1.0 / 3f64.sqrt(), 20.0);
            let left_lo = LrTriangleParams::min_left(right);
            let left = (params.left() + radius * gauss(rng)).clamp(left_lo, right);
            LrTriangleParams::new(left, right).ok().map(State::Triangle)
        }
        State::Free { generators, .. } => {
            let mut points = generators.clone();
            let idx = rng.random_range(0..points.len());
            points[idx] =
                points[idx] + Point::new(radius * gauss(rng), radius * gauss(rng));
            refit(&points, config.lattice_margin)
        }
    }
}

/// A follow-up translation move for free polygons, applied after accepted
/// vertex moves so the body can reposition against the lattice.
fn propose_translation(
    state: &State,
    config: &SearchConfig,
    radius: f64,
    rng: &mut ChaCha8Rng,
) -> Option<State> {
    match state {
        State::Triangle(_) => None,
        State::Free { generators, .. } => {
            let shift = Point::new(radius * gauss(rng), radius * gauss(rng));
            let moved: Vec<Point> = generators.iter().map(|&g| g + shift).collect();
            refit(&moved, config.lattice_margin)
        }
    }
}

fn metropolis(delta: f64, temperature: f64, rng: &mut ChaCha8Rng) -> bool {
    delta >= 0.0 || rng.random::<f64>() < (delta / temperature).exp()
}

/// Simulated annealing over the configured family, maximizing the
/// objective. Restarts run with derived seeds (`seed + restart index`) and
/// the best state wins; ties keep the earliest restart. Deterministic for
/// a fixed configuration.
pub fn anneal(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let mut history = Vec::with_capacity(config.restarts);
    let mut global_best: Option<(f64, ConvexPolygon)> = None;

    for restart in 0..config.restarts {
        let restart_seed = config.seed.wrapping_add(restart as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed);

        let mut state = initial_state(config, &mut rng);
        let mut value = state_value(config.objective, &state);
        let mut best_value = value;
        let mut best_poly = state.polygon();
        let mut accepted = 0usize;
        let mut trace = vec![TracePoint {
            iteration: 0,
            value,
        }];

        for iter in 0..config.iterations {
            let radius = geometric(
                config.initial_radius,
                config.final_radius,
                iter,
                config.iterations,
            );
            let temperature = geometric(TEMP_INITIAL, TEMP_FINAL, iter, config.iterations);

            let Some(candidate) = propose(&state, config, radius, &mut rng) else {
                continue;
            };
            let cand_value = state_value(config.objective, &candidate);
            if metropolis(cand_value - value, temperature, &mut rng) {
                state = candidate;
                value = cand_value;
                accepted += 1;

                if let Some(translated) =
                    propose_translation(&state, config, radius, &mut rng)
                {
                    let tr_value = state_value(config.objective, &translated);
                    if metropolis(tr_value - value, temperature, &mut rng) {
                        state = translated;
                        value = tr_value;
                    }
                }

                if value > best_value {
                    best_value = value;
                    best_poly = state.polygon();
                    trace.push(TracePoint {
                        iteration: iter + 1,
                        value,
                    });
                }
            }
        }

        history.push(RestartRecord {
            restart,
            seed: restart_seed,
            accepted_moves: accepted,
            best_value,
            trace,
        });
        let better = match &global_best {
            Some((best, _)) => best_value > *best,
            None => true,
        };
        if better {
            global_best = Some((best_value, best_poly));
        }
    }

    let (best_value, best_polygon) = global_best.expect("at least one restart");
    let bound = config.objective.conjectured_bound();
    let gap = bound - best_value;
    Ok(SearchResult {
        objective: config.objective,
        best_value,
        best_polygon,
        conjectured_bound: bound,
        conjecture_gap: gap,
        counterexample: gap < -1e-6,
        history,
    })
}

/// The deterministic body stream used by [`verify_batch`]: hulls of 3 to
/// 10 generator points, re-inflated to maximal lattice-free size.
pub fn batch_bodies(count: usize, seed: u64) -> Vec<ConvexPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let body_seed = rng.random::<u64>();
            let k = rng.random_range(3..=10);
            random_lattice_free(body_seed, k)
        })
        .collect()
}

/// A registry failure observed on one body of a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchFinding {
    pub body_index: usize,
    pub violation: Violation,
}

/// Aggregate of a batch run: hard violations must be empty; conjecture
/// findings are research output, listed separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub count: usize,
    pub seed: u64,
    /// Failures of theorem or cited entries.
    pub violations: Vec<BatchFinding>,
    /// Failures of conjectured entries: counterexample candidates.
    pub conjecture_findings: Vec<BatchFinding>,
    pub max_p_minus_2d: f64,
    pub max_p_minus_2d_index: usize,
    pub max_p_minus_4r: f64,
    pub max_p_minus_4r_index: usize,
}

/// Generates `count` seeded lattice-free bodies, evaluates the whole
/// registry on each, and aggregates violations and observed maxima.
pub fn verify_batch(count: usize, seed: u64) -> BatchReport {
    assert!(count >= 1, "batch must contain at least one body");
    let mut hard = Vec::new();
    let mut findings = Vec::new();
    let mut max_pd = f64::NEG_INFINITY;
    let mut max_pd_index = 0;
    let mut max_pr = f64::NEG_INFINITY;
    let mut max_pr_index = 0;

    for (index, body) in batch_bodies(count, seed).iter().enumerate() {
        let results = evaluate_all(body);
        for violation in violations(&results, true) {
            let finding = BatchFinding {
                body_index: index,
                violation: violation.clone(),
            };
            if violation.status == Status::Conjecture {
                findings.push(finding);
            } else {
                hard.push(finding);
            }
        }
        let rep = report(body);
        let pd = rep.p - 2.0 * rep.diameter;
        let pr = rep.p - 4.0 * rep.circumradius;
        if pd > max_pd {
            max_pd = pd;
            max_pd_index = index;
        }
        if pr > max_pr {
            max_pr = pr;
            max_pr_index = index;
        }
    }

    BatchReport {
        count,
        seed,
        violations: hard,
        conjecture_findings: findings,
        max_p_minus_2d: max_pd,
        max_p_minus_2d_index: max_pd_index,
        max_p_minus_4r: max_pr,
        max_p_minus_4r_index: max_pr_index,
    }
}

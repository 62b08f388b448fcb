//! Walkway variants with labelled travel demands: every trip starts at a
//! red point and ends at a blue point.
//!
//! Covered models: one-way walkways of arbitrary orientation (use optional,
//! riding only from `a` to `b`), escalators (use mandatory, one way),
//! elevators (an escalator whose endpoints coincide, making speed
//! irrelevant), and the worst source-to-destination cost through a fixed
//! set of elevators.

use crate::disks::red_blue_cross_feasible;
use crate::error::{Result, WalkwayError};
use crate::geometry::{tol_for, Point2, RedBlueSets, Speed, Walkway2};
use crate::qcp::{
    minimize_box, solve_explicit, solve_implicit, third_splits, DomainBox, ImplicitQcProgram,
    QcConstraint, FINE_ACC,
};

fn validate_sets(rb: &RedBlueSets) -> Result<()> {
    if rb.red.is_empty() {
        return Err(WalkwayError::EmptyInput("red points"));
    }
    if rb.blue.is_empty() {
        return Err(WalkwayError::EmptyInput("blue points"));
    }
    if rb.red.iter().chain(&rb.blue).any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    Ok(())
}

/// Product of `copies` planar boxes over the labelled points, plus the box
/// diagonal as a scale.  Projecting any facility endpoint onto the convex
/// hull of the points shortens every leg of every route (projection onto a
/// convex set is a contraction), so optima live inside the bounding box;
/// the tiny pad only keeps degenerate zero-extent boxes solvable.
fn endpoint_domain(rb: &RedBlueSets, copies: usize) -> (DomainBox, f64) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &p in rb.red.iter().chain(&rb.blue) {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    let scale = lo.dist(hi).max(1.0);
    let pad = 1e-6 * scale;
    let lo_pair = [lo.x - pad, lo.y - pad];
    let hi_pair = [hi.x + pad, hi.y + pad];
    let domain = DomainBox::new(
        lo_pair.iter().copied().cycle().take(2 * copies).collect(),
        hi_pair.iter().copied().cycle().take(2 * copies).collect(),
    )
    .expect("finite inputs give a valid box");
    (domain, scale)
}

/// Travel cost of one demand under an optional one-way walkway with
/// endpoints `a = (x[0], x[1])` and `b = (x[2], x[3])`: the direct distance
/// caps a convex ride-through detour.
fn one_way_constraint(tag: usize, r: Point2, t: Point2, inv: f64) -> QcConstraint {
    let direct = r.dist(t);
    QcConstraint::capped(tag, direct, move |x: &[f64]| {
        let a = Point2::new(x[0], x[1]);
        let b = Point2::new(x[2], x[3]);
        r.dist(a) + inv * a.dist(b) + b.dist(t)
    })
}

/// Best one-way walkway of arbitrary orientation: minimizes, over both
/// endpoints, the largest red-to-blue travel time where riding is allowed
/// only from `a` to `b` and staying on foot is always allowed.
///
/// The red-to-blue constraints stay implicit; candidate placements are
/// checked with the same suffix-disk feasibility test the diameter decision
/// uses, restricted to the given labels.  Deterministic for a fixed seed.
pub fn unidirectional_locate(rb: &RedBlueSets, v: Speed, seed: u64) -> Result<(Walkway2, f64)> {
    validate_sets(rb)?;
    let inv = v.inverse();
    let (domain, scale) = endpoint_domain(rb, 2);
    let ground: Vec<(Point2, bool)> = rb
        .red
        .iter()
        .map(|&p| (p, true))
        .chain(rb.blue.iter().map(|&p| (p, false)))
        .collect();
    let prog = ImplicitQcProgram {
        ground,
        generate: |pts: &[(Point2, bool)]| {
            let mut cons = Vec::new();
            for &(r, r_is_red) in pts {
                if !r_is_red {
                    continue;
                }
                for &(t, t_is_red) in pts {
                    if !t_is_red {
                        cons.push(one_way_constraint(cons.len(), r, t, inv));
                    }
                }
            }
            cons
        },
        decision: move |pts: &[(Point2, bool)], x: &[f64], y: f64| {
            let red: Vec<Point2> = pts.iter().filter(|p| p.1).map(|p| p.0).collect();
            let blue: Vec<Point2> = pts.iter().filter(|p| !p.1).map(|p| p.0).collect();
            let w = Walkway2::new(Point2::new(x[0], x[1]), Point2::new(x[2], x[3]))
                .expect("domain candidates are finite");
            red_blue_cross_feasible(&red, &blue, &w, v, y).expect("level is finite")
        },
        splitter: third_splits::<(Point2, bool)>,
        domain,
        alpha: 2.0 / 3.0,
        base_size: 24,
        slack: 3e-8 * scale,
    };
    let res = solve_implicit(&prog, seed)?;
    let w = Walkway2::new(Point2::new(res.x[0], res.x[1]), Point2::new(res.x[2], res.x[3]))?;
    Ok((w, res.value))
}

/// The mandatory one-way objective: everyone walks to `a`, rides, and walks
/// from `b` to their destination, so the worst trip splits into the worst
/// walk-in, the ride, and the worst walk-out.
fn escalator_objective(rb: &RedBlueSets, inv: f64) -> impl Fn(&[f64]) -> f64 + Clone {
    let red = rb.red.clone();
    let blue = rb.blue.clone();
    move |x: &[f64]| {
        let a = Point2::new(x[0], x[1]);
        let b = Point2::new(x[2], x[3]);
        let walk_in = red.iter().map(|r| r.dist(a)).fold(0.0, f64::max);
        let walk_out = blue.iter().map(|t| b.dist(*t)).fold(0.0, f64::max);
        walk_in + inv * a.dist(b) + walk_out
    }
}

/// Best mandatory one-way walkway: minimizes
/// `max_r d(r, a) + d(a, b)/v + max_t d(b, t)` over both endpoints.  The
/// objective is convex, so this is a single four-dimensional convex solve.
pub fn escalator_locate(rb: &RedBlueSets, v: Speed, seed: u64) -> Result<(Walkway2, f64)> {
    validate_sets(rb)?;
    let (domain, _) = endpoint_domain(rb, 2);
    let objective = escalator_objective(rb, v.inverse());
    let res = solve_explicit(&[QcConstraint::convex(0, objective)], &domain, seed);
    let w = Walkway2::new(Point2::new(res.x[0], res.x[1]), Point2::new(res.x[2], res.x[3]))?;
    Ok((w, res.value))
}

/// Best single mandatory transfer point: minimizes
/// `max_r d(r, e) + max_t d(t, e)`; both walkway endpoints coincide, so the
/// speed drops out.  Among optimal points the lexicographically smallest
/// `(x, y)` is returned: the optimal set is convex, so bisection finds its
/// smallest `x` (each probe minimizes over `y` alone) and then the smallest
/// `y` along that vertical line.
pub fn elevator_locate(rb: &RedBlueSets, seed: u64) -> Result<(Point2, f64)> {
    validate_sets(rb)?;
    let (domain, scale) = endpoint_domain(rb, 1);
    let red = rb.red.clone();
    let blue = rb.blue.clone();
    let objective = move |x: &[f64]| {
        let e = Point2::new(x[0], x[1]);
        let walk_in = red.iter().map(|r| r.dist(e)).fold(0.0, f64::max);
        let walk_out = blue.iter().map(|t| t.dist(e)).fold(0.0, f64::max);
        walk_in + walk_out
    };
    let base = solve_explicit(
        &[QcConstraint::convex(0, objective.clone())],
        &domain,
        seed,
    );
    let level = base.value;
    // comfortably above the one-dimensional solver noise on the probes below
    let tau = 32.0 * tol_for(level.abs().max(scale));
    let y_box = DomainBox::new(vec![domain.lo[1]], vec![domain.hi[1]])
        .expect("projection of a valid box");
    let min_over_y = |c: f64| {
        let line = |y: &[f64]| objective(&[c, y[0]]);
        minimize_box(&line, &y_box, FINE_ACC)
    };
    let mut lo = domain.lo[0];
    let mut hi = base.x[0];
    if min_over_y(lo).1 <= level + tau {
        hi = lo;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if min_over_y(mid).1 <= level + tau {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x_min = hi;
    let (y_center, _) = min_over_y(x_min);
    // The feasible `y` values on the chosen vertical line form an interval;
    // walk its lower end in with the loosened level that made `x_min` pass.
    let feasible_y = |y: f64| objective(&[x_min, y]) <= level + 2.0 * tau;
    let mut y_lo = domain.lo[1];
    let mut y_hi = y_center[0];
    if feasible_y(y_lo) {
        y_hi = y_lo;
    }
    for _ in 0..80 {
        let mid = 0.5 * (y_lo + y_hi);
        if feasible_y(mid) {
            y_hi = mid;
        } else {
            y_lo = mid;
        }
    }
    let e = Point2::new(x_min, y_hi);
    Ok((e, objective(&[e.x, e.y])))
}

/// A nonempty list of elevator positions.
#[derive(Debug, Clone)]
pub struct ElevatorSet {
    positions: Vec<Point2>,
}

impl ElevatorSet {
    pub fn new(positions: Vec<Point2>) -> Result<Self> {
        if positions.is_empty() {
            return Err(WalkwayError::InvalidArgument(
                "at least one elevator is required".into(),
            ));
        }
        if positions.iter().any(|p| !p.is_finite()) {
            return Err(WalkwayError::NonFinite("elevator"));
        }
        Ok(ElevatorSet { positions })
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }
}

/// Per-elevator cost differences of one trip endpoint against a chosen base
/// elevator.  Component `l` of a source vector is
/// `d(r, e_base) - d(r, e_l)`; of a destination vector,
/// `d(e_l, b) - d(e_base, b)`.  The base component is exactly zero, and the
/// base elevator is optimal for a source-destination pair precisely when
/// the destination vector dominates the source vector componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceVector {
    components: Vec<f64>,
}

impl DominanceVector {
    pub fn for_source(r: Point2, elevators: &[Point2], base: usize) -> Self {
        let base_leg = r.dist(elevators[base]);
        DominanceVector {
            components: elevators.iter().map(|&e| base_leg - r.dist(e)).collect(),
        }
    }

    pub fn for_destination(t: Point2, elevators: &[Point2], base: usize) -> Self {
        let base_leg = elevators[base].dist(t);
        DominanceVector {
            components: elevators.iter().map(|&e| e.dist(t) - base_leg).collect(),
        }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &DominanceVector) -> bool {
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(p, q)| p <= q)
    }
}

#[derive(Clone)]
struct DomItem {
    vector: DominanceVector,
    weight: f64,
    index: usize,
    red: bool,
}

type PairCandidate = Option<(f64, usize, usize)>;

fn consider(best: &mut PairCandidate, value: f64, red: usize, blue: usize) {
    if best.is_none_or(|(v, _, _)| value > v) {
        *best = Some((value, red, blue));
    }
}

/// Largest `red weight + blue weight` over red-blue pairs whose red vector
/// is dominated by the blue vector in every dimension of `dims`, by divide
/// and conquer: sort by the first dimension (ties red first, so equal
/// components count as dominated), recurse into both halves, and resolve
/// left-red / right-blue cross pairs — which satisfy the first dimension by
/// the ordering — in one fewer dimension.
fn cdq_max_dominated(items: &mut [DomItem], dims: &[usize], best: &mut PairCandidate) {
    if items.len() < 2 {
        return;
    }
    match dims {
        [] => {
            let top_red = items
                .iter()
                .filter(|i| i.red)
                .max_by(|a, b| a.weight.total_cmp(&b.weight));
            let top_blue = items
                .iter()
                .filter(|i| !i.red)
                .max_by(|a, b| a.weight.total_cmp(&b.weight));
            if let (Some(r), Some(b)) = (top_red, top_blue) {
                consider(best, r.weight + b.weight, r.index, b.index);
            }
        }
        [d] => {
            items.sort_by(|a, b| {
                a.vector.components[*d]
                    .total_cmp(&b.vector.components[*d])
                    .then_with(|| b.red.cmp(&a.red))
            });
            let mut top_red: Option<(f64, usize)> = None;
            for item in items.iter() {
                if item.red {
                    if top_red.is_none_or(|(w, _)| item.weight > w) {
                        top_red = Some((item.weight, item.index));
                    }
                } else if let Some((w, i)) = top_red {
                    consider(best, w + item.weight, i, item.index);
                }
            }
        }
        [d, rest @ ..] => {
            items.sort_by(|a, b| {
                a.vector.components[*d]
                    .total_cmp(&b.vector.components[*d])
                    .then_with(|| b.red.cmp(&a.red))
            });
            let mid = items.len() / 2;
            let mut left: Vec<DomItem> = items[..mid].to_vec();
            let mut right: Vec<DomItem> = items[mid..].to_vec();
            let mut cross: Vec<DomItem> = items[..mid]
                .iter()
                .filter(|i| i.red)
                .chain(items[mid..].iter().filter(|i| !i.red))
                .cloned()
                .collect();
            cdq_max_dominated(&mut left, dims, best);
            cdq_max_dominated(&mut right, dims, best);
            cdq_max_dominated(&mut cross, rest, best);
        }
    }
}

/// Worst red-to-blue cost when every trip must pass through one of the
/// elevators: `max over (r, b)` of `min over e` of `d(r, e) + d(e, b)`,
/// with a realizing pair.
///
/// For each base elevator, the pairs it serves best are exactly those whose
/// destination vector dominates the source vector; their largest
/// `d(r, e) + d(e, b)` comes from the divide-and-conquer above, and the
/// answer is the maximum over bases.  A pair tied between several
/// elevators is counted under each with the same cost, so double counting
/// is harmless.
pub fn k_elevator_diameter(
    rb: &RedBlueSets,
    elevators: &ElevatorSet,
) -> Result<(f64, (Point2, Point2))> {
    validate_sets(rb)?;
    let positions = elevators.positions();
    let mut best: PairCandidate = None;
    for base in 0..positions.len() {
        let dims: Vec<usize> = (0..positions.len()).filter(|&l| l != base).collect();
        let mut items: Vec<DomItem> = Vec::with_capacity(rb.red.len() + rb.blue.len());
        for (i, &r) in rb.red.iter().enumerate() {
            items.push(DomItem {
                vector: DominanceVector::for_source(r, positions, base),
                weight: r.dist(positions[base]),
                index: i,
                red: true,
            });
        }
        for (j, &t) in rb.blue.iter().enumerate() {
            items.push(DomItem {
                vector: DominanceVector::for_destination(t, positions, base),
                weight: positions[base].dist(t),
                index: j,
                red: false,
            });
        }
        cdq_max_dominated(&mut items, &dims, &mut best);
    }
    let (value, i, j) = best.expect("nonempty colour sets always admit a pair");
    Ok((value, (rb.red[i], rb.blue[j])))
}

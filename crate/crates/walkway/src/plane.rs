//! Walkway placement in the plane.
//!
//! Horizontal placements are found by minimax optimization over the three
//! parameters `(a.x, length, height)`: each source–destination constraint
//! is the minimum of its direct distance (a constant) and the convex
//! walkway detour, hence quasiconvex, and the nonnegative-length box keeps
//! the left-to-right orientation without clipping.  Arbitrary orientations
//! go through a rotation sweep: level sets of the unconstrained objective
//! need not even be connected, so the plane problem is approximated by
//! solving a horizontal subproblem per rotation angle.

use crate::disks::diameter_decision_2d;
use crate::error::{Result, WalkwayError};
use crate::geometry::{euclidean_diameter, Point2, Speed, Walkway2};
use crate::qcp::{
    solve_implicit, splitmix64, DomainBox, ImplicitQcProgram, QcConstraint, SolveResult,
};

/// A travel demand from `s` to `t`; `s = t` is allowed (the constraint is
/// then never positive for the direct option).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceDestPair {
    pub s: Point2,
    pub t: Point2,
}

/// A horizontal walkway (`a.y = b.y`, `a.x <= b.x`) and the minimax travel
/// time it achieves; the value is reproducible by re-evaluating the
/// objective at `(a, b)` within solver slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementH {
    pub a: Point2,
    pub b: Point2,
    pub value: f64,
}

/// An arbitrary-orientation walkway produced by the rotation sweep,
/// remembering which rotation produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement2 {
    pub a: Point2,
    pub b: Point2,
    pub value: f64,
    pub angle_index: usize,
}

/// Travel time of the oriented pair under the parameter vector
/// `x = [a.x, length, height]`, using the walkway left to right.
pub fn horizontal_pair_time(s: Point2, t: Point2, x: &[f64], inv_v: f64) -> f64 {
    let (s, t) = if s.x <= t.x { (s, t) } else { (t, s) };
    let a = Point2::new(x[0], x[2]);
    let b = Point2::new(x[0] + x[1], x[2]);
    let direct = s.dist(t);
    let via = s.dist(a) + inv_v * x[1] + b.dist(t);
    direct.min(via)
}

/// The constraint splits into the constant direct option (the cap) and the
/// convex detour; the solver exploits that structure.
fn pair_constraint(tag: usize, s: Point2, t: Point2, inv_v: f64) -> QcConstraint {
    let (s, t) = if s.x <= t.x { (s, t) } else { (t, s) };
    let direct = s.dist(t);
    QcConstraint::capped(tag, direct, move |x: &[f64]| {
        let a = Point2::new(x[0], x[2]);
        let b = Point2::new(x[0] + x[1], x[2]);
        s.dist(a) + inv_v * x[1] + b.dist(t)
    })
}

/// Box for `(a.x, length, height)`: the point bounding box padded by the
/// Euclidean diameter on each side.  An endpoint farther out is dominated —
/// pulling it to the box never lengthens any leg of any detour.
fn horizontal_domain(points: impl Iterator<Item = Point2> + Clone) -> DomainBox {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut spread = Vec::new();
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
        spread.push(p);
    }
    let pad = euclidean_diameter(&spread).0;
    DomainBox::new(
        vec![lo.x - pad, 0.0, lo.y - pad],
        vec![hi.x + pad, (hi.x - lo.x) + 2.0 * pad, hi.y + pad],
    )
    .expect("finite inputs give a valid box")
}

fn placement_from(res: &SolveResult) -> PlacementH {
    PlacementH {
        a: Point2::new(res.x[0], res.x[2]),
        b: Point2::new(res.x[0] + res.x[1], res.x[2]),
        value: res.value,
    }
}

/// Best horizontal walkway for explicitly listed source–destination pairs:
/// minimizes the largest pair travel time.  Deterministic for a fixed seed.
pub fn locate_horizontal_pairs(
    pairs: &[SourceDestPair],
    v: Speed,
    seed: u64,
) -> Result<PlacementH> {
    if pairs.is_empty() {
        return Err(WalkwayError::EmptyInput("source-destination pairs"));
    }
    if pairs.iter().any(|p| !p.s.is_finite() || !p.t.is_finite()) {
        return Err(WalkwayError::NonFinite("pair endpoint"));
    }
    let inv = v.inverse();
    let constraints: Vec<QcConstraint> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| pair_constraint(i, p.s, p.t, inv))
        .collect();
    let domain = horizontal_domain(pairs.iter().flat_map(|p| [p.s, p.t]).collect::<Vec<_>>().into_iter());
    let res = crate::qcp::solve_explicit(&constraints, &domain, seed);
    Ok(placement_from(&res))
}

/// Best horizontal walkway for the travel-time diameter of a point set.
///
/// Constraints (all point pairs) stay implicit: the subset recursion splits
/// a set into the three two-thirds unions of an index three-way split and
/// checks candidate placements with the full diameter decision.  Expected
/// near-linear constraint work; deterministic for a fixed seed.
pub fn locate_horizontal_diameter(points: &[Point2], v: Speed, seed: u64) -> Result<PlacementH> {
    if points.len() < 2 {
        return Err(WalkwayError::EmptyInput("point set of at least two"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    let inv = v.inverse();
    let domain = horizontal_domain(points.iter().copied());
    let scale = euclidean_diameter(points).0.max(1.0);
    let prog = ImplicitQcProgram {
        ground: points.to_vec(),
        generate: |pts: &[Point2]| {
            let mut cons = Vec::with_capacity(pts.len() * (pts.len().saturating_sub(1)) / 2);
            for (i, &p) in pts.iter().enumerate() {
                for &q in &pts[i + 1..] {
                    cons.push(pair_constraint(cons.len(), p, q, inv));
                }
            }
            cons
        },
        decision: move |pts: &[Point2], x: &[f64], y: f64| {
            if x[1] <= 0.0 {
                // zero-length walkway: riding cannot shortcut anything
                euclidean_diameter(pts).0 <= y
            } else {
                let a = Point2::new(x[0], x[2]);
                let b = Point2::new(x[0] + x[1], x[2]);
                let w = Walkway2::new(a, b).expect("finite candidate");
                diameter_decision_2d(pts, &w, v, y).expect("nondegenerate candidate")
            }
        },
        splitter: crate::qcp::third_splits::<Point2>,
        domain,
        alpha: 2.0 / 3.0,
        base_size: 24,
        // comfortably above the inner solver's value noise, far below the
        // guarantees callers rely on
        slack: 3e-8 * scale,
    };
    let res = solve_implicit(&prog, seed)?;
    Ok(placement_from(&res))
}

/// Arbitrary-orientation walkway by rotation: solves the horizontal problem
/// on the point set rotated by each angle `i * eps / v` covering the full
/// circle, and keeps the best placement mapped back to input coordinates.
/// The result is within a factor `1 + eps` of the unconstrained optimum.
///
/// Infinite speed is unsupported (the angle step collapses); `eps` must be
/// positive and large enough to keep the angle count reasonable.
pub fn locate_approx(points: &[Point2], v: Speed, eps: f64, seed: u64) -> Result<Placement2> {
    if v.is_infinite() {
        return Err(WalkwayError::UnsupportedSpeed);
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(WalkwayError::InvalidArgument(format!(
            "approximation parameter {eps} must be positive"
        )));
    }
    if points.len() < 2 {
        return Err(WalkwayError::EmptyInput("point set of at least two"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    let step = eps * v.inverse();
    let count = (std::f64::consts::TAU / step).floor() as usize + 1;
    const MAX_ANGLES: usize = 10_000_000;
    if count > MAX_ANGLES {
        return Err(WalkwayError::InvalidArgument(format!(
            "rotation sweep needs {count} angles (limit {MAX_ANGLES}); increase eps"
        )));
    }
    let base = splitmix64(seed);
    let mut best: Option<(PlacementH, usize, f64, f64)> = None;
    for i in 0..count {
        let theta = step * i as f64;
        let (sin, cos) = theta.sin_cos();
        let rotated: Vec<Point2> = points.iter().map(|p| p.rotated(cos, sin)).collect();
        let ph = locate_horizontal_diameter(&rotated, v, splitmix64(base ^ i as u64))?;
        if best.as_ref().is_none_or(|(b, ..)| ph.value < b.value) {
            best = Some((ph, i, cos, sin));
        }
    }
    let (ph, angle_index, cos, sin) = best.expect("count >= 1");
    Ok(Placement2 {
        a: ph.a.rotated(cos, -sin),
        b: ph.b.rotated(cos, -sin),
        value: ph.value,
        angle_index,
    })
}

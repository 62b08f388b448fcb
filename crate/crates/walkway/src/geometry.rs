//! Core vocabulary: points, speeds, walkways and the travel-time distance.
//!
//! A walkway from `a` to `b` can be ridden in either direction at speed
//! `v > 1` (walking speed is 1), so a trip may either go straight or walk to
//! one endpoint, ride, and walk on from the other.  Speeds are stored as
//! inverse values so `v = ∞` is the exact value `0` rather than a special
//! case scattered through the formulas.

use crate::error::{Result, WalkwayError};

/// Relative comparison tolerance for derived real values.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor used when the compared values are themselves near zero.
pub const ABS_TOL: f64 = 1e-12;

/// Tolerance for comparing two values of the given magnitude.
#[inline]
pub fn tol_for(scale: f64) -> f64 {
    f64::max(ABS_TOL, REL_TOL * scale.abs())
}

/// `a <= b` up to the library tolerance.
#[inline]
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + tol_for(f64::max(a.abs(), b.abs()))
}

/// `a == b` up to the library tolerance.
#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= tol_for(f64::max(a.abs(), b.abs()))
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn dist(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    #[inline]
    pub fn dist_sq(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Rotate about the origin by the angle whose cosine/sine are given.
    #[inline]
    pub fn rotated(self, cos: f64, sin: f64) -> Point2 {
        Point2::new(self.x * cos - self.y * sin, self.x * sin + self.y * cos)
    }
}

/// Walkway speed, stored as its inverse.
///
/// `inv() == 0` encodes infinite speed; finite speeds must satisfy `v > 1`
/// (a walkway no faster than walking is pointless and breaks the placement
/// formulas).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Speed {
    inv: f64,
}

impl Speed {
    pub const INFINITE: Speed = Speed { inv: 0.0 };

    /// Finite speed `v > 1`, or `f64::INFINITY`.
    pub fn new(v: f64) -> Result<Self> {
        if v.is_nan() {
            return Err(WalkwayError::InvalidSpeed("NaN".into()));
        }
        if v == f64::INFINITY {
            return Ok(Speed::INFINITE);
        }
        if v <= 1.0 {
            return Err(WalkwayError::InvalidSpeed(format!("v = {v} must exceed 1")));
        }
        Ok(Speed { inv: 1.0 / v })
    }

    /// Construct from an inverse speed in `[0, 1)`.
    pub fn from_inverse(inv: f64) -> Result<Self> {
        if !inv.is_finite() || !(0.0..1.0).contains(&inv) {
            return Err(WalkwayError::InvalidSpeed(format!(
                "inverse speed {inv} must lie in [0, 1)"
            )));
        }
        Ok(Speed { inv })
    }

    #[inline]
    pub fn inverse(self) -> f64 {
        self.inv
    }

    pub fn is_infinite(self) -> bool {
        self.inv == 0.0
    }
}

impl std::str::FromStr for Speed {
    type Err = WalkwayError;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Speed::INFINITE);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| WalkwayError::InvalidSpeed(format!("cannot parse {s:?}")))?;
        Speed::new(v)
    }
}

/// A walkway on the line, normalized so `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Walkway1 {
    a: f64,
    b: f64,
}

impl Walkway1 {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(WalkwayError::NonFinite("walkway endpoint"));
        }
        if a <= b {
            Ok(Walkway1 { a, b })
        } else {
            Ok(Walkway1 { a: b, b: a })
        }
    }

    #[inline]
    pub fn a(self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(self) -> f64 {
        self.b
    }

    pub fn length(self) -> f64 {
        self.b - self.a
    }
}

/// A walkway in the plane.  Coincident endpoints are allowed at this level;
/// operations that cannot handle them (the bisector partition) reject them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Walkway2 {
    pub a: Point2,
    pub b: Point2,
}

impl Walkway2 {
    pub fn new(a: Point2, b: Point2) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(WalkwayError::NonFinite("walkway endpoint"));
        }
        Ok(Walkway2 { a, b })
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.x == self.b.x && self.a.y == self.b.y
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }
}

/// Point sets for the two-colour variants: red points are sources, blue are
/// destinations.  Also produced by the bisector partition.
#[derive(Debug, Clone, Default)]
pub struct RedBlueSets {
    pub red: Vec<Point2>,
    pub blue: Vec<Point2>,
}

/// Travel time between `s` and `t` on the line with walkway `w` and speed `v`.
///
/// Either walk straight, or walk to `a`, ride to `b`, and walk on; by
/// symmetry of `|·|` the ride direction never matters on the line.
pub fn time_distance_1d(s: f64, t: f64, w: Walkway1, v: Speed) -> Result<f64> {
    if !s.is_finite() || !t.is_finite() {
        return Err(WalkwayError::NonFinite("query point"));
    }
    Ok(time_1d_raw(s, t, w.a, w.b, v.inverse()))
}

/// Shared arithmetic for the 1D travel time.  Fast paths and brute-force
/// oracles both call this, so equality claims between them are exact.
#[inline]
pub(crate) fn time_1d_raw(s: f64, t: f64, a: f64, b: f64, inv_v: f64) -> f64 {
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    let direct = hi - lo;
    let via = (lo - a).abs() + (hi - b).abs() + inv_v * (b - a);
    direct.min(via)
}

/// Travel time between `s` and `t` in the plane: walk straight, or enter the
/// walkway at either endpoint, ride, and walk from the other.
pub fn time_distance_2d(s: Point2, t: Point2, w: &Walkway2, v: Speed) -> Result<f64> {
    if !s.is_finite() || !t.is_finite() {
        return Err(WalkwayError::NonFinite("query point"));
    }
    Ok(time_2d_raw(s, t, w.a, w.b, v.inverse()))
}

#[inline]
pub(crate) fn time_2d_raw(s: Point2, t: Point2, a: Point2, b: Point2, inv_v: f64) -> f64 {
    // Canonical argument order makes the result exactly symmetric in (s, t).
    let (s, t) = if (s.x, s.y) <= (t.x, t.y) { (s, t) } else { (t, s) };
    let direct = s.dist(t);
    let ride = inv_v * a.dist(b);
    let via_ab = s.dist(a) + ride + b.dist(t);
    let via_ba = s.dist(b) + ride + a.dist(t);
    direct.min(via_ab).min(via_ba)
}

/// Split `points` by the perpendicular bisector of the walkway: red points
/// are at least as close to `a` as to `b` (ties red).  Comparison is on
/// squared distances, which preserves the exact tie set.
pub fn red_blue_partition(points: &[Point2], w: &Walkway2) -> Result<RedBlueSets> {
    if w.is_degenerate() {
        return Err(WalkwayError::DegenerateWalkway);
    }
    let mut sets = RedBlueSets::default();
    for &p in points {
        if p.dist_sq(w.a) <= p.dist_sq(w.b) {
            sets.red.push(p);
        } else {
            sets.blue.push(p);
        }
    }
    Ok(sets)
}

/// Doubled signed area of the triangle `(o, a, b)`.
#[inline]
fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Strictly convex hull (no repeated or collinear vertices), counterclockwise.
pub(crate) fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    pts.dedup_by(|p, q| p.x == q.x && p.y == q.y);
    if pts.len() < 3 {
        return pts;
    }
    fn extend_chain(chain: &mut Vec<Point2>, p: Point2) {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0 {
            chain.pop();
        }
        chain.push(p);
    }
    let mut lower = Vec::with_capacity(pts.len());
    for &p in &pts {
        extend_chain(&mut lower, p);
    }
    let mut upper = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        extend_chain(&mut upper, p);
    }
    // Each chain repeats the other's first vertex at its end; drop those and
    // join.  Fully collinear input degenerates to the two extremes.
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Largest pairwise Euclidean distance, with a realizing pair.
///
/// Convex hull plus rotating calipers; `(0, ..)` for fewer than two points.
pub fn euclidean_diameter(points: &[Point2]) -> (f64, Option<(Point2, Point2)>) {
    match points.len() {
        0 => return (0.0, None),
        1 => return (0.0, Some((points[0], points[0]))),
        _ => {}
    }
    let hull = convex_hull(points);
    match hull.len() {
        1 => return (0.0, Some((hull[0], hull[0]))),
        2 => return (hull[0].dist(hull[1]), Some((hull[0], hull[1]))),
        _ => {}
    }
    let m = hull.len();
    let mut best = 0.0;
    let mut pair = (hull[0], hull[0]);
    let mut j = 1;
    for i in 0..m {
        let ni = (i + 1) % m;
        // Advance the antipodal pointer while the supporting triangle grows.
        while cross(hull[i], hull[ni], hull[(j + 1) % m]) > cross(hull[i], hull[ni], hull[j]) {
            j = (j + 1) % m;
        }
        for cand in [(hull[i], hull[j]), (hull[ni], hull[j])] {
            let d = cand.0.dist(cand.1);
            if d > best {
                best = d;
                pair = cand;
            }
        }
    }
    (best, Some(pair))
}

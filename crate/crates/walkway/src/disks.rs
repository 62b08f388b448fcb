//! Equal-radius disk intersections and the planar diameter decision.
//!
//! The decision "is the travel-time diameter at most `y`?" reduces to: both
//! bisector halves must have Euclidean diameter at most `y` (same-side pairs
//! never benefit from the walkway), and every cross pair must either walk
//! directly or ride within budget.  Sorting the red points by distance to
//! the entry `a`, the red points a blue point `t` must reach *directly* form
//! a suffix of that order, so `t` is tested against a suffix intersection of
//! radius-`y` disks.
//!
//! [`DiskIntersection`] maintains such an intersection under insertions.  A
//! disk is the conjunction of an `x`-slab, "below the upper cap of its
//! circle", and "above the lower cap", so the region is described by the
//! slab common to all disks plus the lower envelope of the upper caps and
//! the (mirrored) envelope of the lower caps.  Envelopes are rebuilt from a
//! size-bounded insertion buffer, and rebuilds retain only the convex hull
//! of the centers seen — disks centered strictly inside the hull never
//! bound the intersection.  Unmerged disks are tested directly, so queries
//! stay cheap and rebuild work tracks the hull size, not the history.

use crate::error::{Result, WalkwayError};
use crate::geometry::{
    euclidean_diameter, red_blue_partition, time_2d_raw, tol_for, Point2, Speed, Walkway2,
};

/// Inserts buffered before an envelope rebuild.  Queries scan the buffer
/// directly, so this bounds the additive query cost by a constant.
const REBUILD_LIMIT: usize = 512;

/// One arc of a cap envelope: `center`'s cap is the envelope from `from_x`
/// until the next arc starts.
#[derive(Debug, Clone, Copy)]
struct EnvelopeArc {
    center: Point2,
    from_x: f64,
}

/// Intersection of disks of one common radius under incremental insertion.
///
/// Supports membership tests, an exact emptiness test, and a boundary
/// vertex count bounded by twice the number of insertions.  Membership is
/// slightly permissive: points within the relative tolerance of the
/// boundary are accepted.
#[derive(Debug, Clone)]
pub struct DiskIntersection {
    radius: f64,
    tol: f64,
    /// Flushed centers that can still bound the intersection — the convex
    /// hull vertices of every flushed center — sorted by `(x, y)`.
    merged: Vec<Point2>,
    buffer: Vec<Point2>,
    upper: Vec<EnvelopeArc>,
    /// Envelope of the lower caps, stored with `y` negated so the upper
    /// envelope code serves both boundaries.
    lower: Vec<EnvelopeArc>,
    insertions: usize,
    min_cx: f64,
    max_cx: f64,
    /// Two inserted disks are disjoint; the intersection is empty forever.
    pairwise_empty: bool,
}

impl DiskIntersection {
    pub fn new(radius: f64) -> Result<Self> {
        if !radius.is_finite() {
            return Err(WalkwayError::NonFinite("disk radius"));
        }
        if radius < 0.0 {
            return Err(WalkwayError::InvalidArgument(format!(
                "disk radius {radius} must be nonnegative"
            )));
        }
        Ok(DiskIntersection {
            radius,
            tol: tol_for(radius),
            merged: Vec::new(),
            buffer: Vec::new(),
            upper: Vec::new(),
            lower: Vec::new(),
            insertions: 0,
            min_cx: f64::INFINITY,
            max_cx: f64::NEG_INFINITY,
            pairwise_empty: false,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn insertions(&self) -> usize {
        self.insertions
    }

    pub fn insert(&mut self, center: Point2) -> Result<()> {
        if !center.is_finite() {
            return Err(WalkwayError::NonFinite("disk center"));
        }
        self.insertions += 1;
        self.min_cx = self.min_cx.min(center.x);
        self.max_cx = self.max_cx.max(center.x);
        if self.pairwise_empty {
            return Ok(());
        }
        self.buffer.push(center);
        if self.buffer.len() >= REBUILD_LIMIT {
            self.flush();
        }
        Ok(())
    }

    /// Is `p` in the intersection (within tolerance)?  With no insertions the
    /// intersection is the whole plane and every finite point is a member.
    pub fn contains(&self, p: Point2) -> bool {
        if self.insertions == 0 {
            return true;
        }
        if self.pairwise_empty {
            return false;
        }
        // The common slab: every disk covers p.x, so every cap below is
        // defined at p.x.
        if p.x < self.max_cx - self.radius - self.tol || p.x > self.min_cx + self.radius + self.tol
        {
            return false;
        }
        if !self.upper.is_empty() && !below_envelope(&self.upper, p, self.radius, self.tol) {
            return false;
        }
        if !self.lower.is_empty()
            && !below_envelope(&self.lower, Point2::new(p.x, -p.y), self.radius, self.tol)
        {
            return false;
        }
        self.buffer
            .iter()
            .all(|&c| p.dist(c) <= self.radius + self.tol)
    }

    /// Number of arcs on the two boundary chains; at most one per inserted
    /// disk and boundary, hence at most `2 * insertions()`.
    pub fn vertex_count(&mut self) -> usize {
        self.flush();
        self.upper.len() + self.lower.len()
    }

    /// Exact emptiness: the gap between the upper and lower boundary is
    /// concave over the slab, so its maximum is found by golden section.
    pub fn is_empty(&mut self) -> bool {
        self.flush();
        if self.insertions == 0 {
            return false;
        }
        if self.pairwise_empty {
            return true;
        }
        let lo = self.max_cx - self.radius;
        let hi = self.min_cx + self.radius;
        if lo > hi {
            return true;
        }
        let gap = |x: f64| {
            let ub = envelope_height(&self.upper, x, self.radius);
            let lb = -envelope_height(&self.lower, x, self.radius);
            ub - lb
        };
        let x = golden_max(&gap, lo, hi, 128);
        gap(x) < -self.tol
    }

    fn flush(&mut self) {
        if self.buffer.is_empty() || self.pairwise_empty {
            self.buffer.clear();
            return;
        }
        // Only hull-vertex disks can bound the intersection: the farthest
        // center from any point lies on the convex hull of the centers, and
        // for a center on a hull edge the distance is maximized at an edge
        // endpoint.  Keeping just the hull makes each rebuild proportional
        // to the boundary complexity plus the buffer, not to the full
        // insertion history.
        self.merged.append(&mut self.buffer);
        self.merged = crate::geometry::convex_hull(&self.merged);
        self.merged
            .sort_unstable_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        match build_envelope(&self.merged, self.radius, false) {
            Some(arcs) => self.upper = arcs,
            None => {
                self.pairwise_empty = true;
                return;
            }
        }
        match build_envelope(&self.merged, self.radius, true) {
            Some(arcs) => self.lower = arcs,
            None => self.pairwise_empty = true,
        }
    }
}

/// Upper cap of the circle at `c`: defined for `|x - c.x| <= r`.
#[inline]
fn cap_height(c: Point2, x: f64, r: f64) -> f64 {
    let dx = x - c.x;
    c.y + (r * r - dx * dx).max(0.0).sqrt()
}

fn arc_index(arcs: &[EnvelopeArc], x: f64) -> usize {
    // from_x is strictly increasing; the binding arc is the last starting at
    // or before x.
    arcs.partition_point(|a| a.from_x <= x).saturating_sub(1)
}

fn envelope_height(arcs: &[EnvelopeArc], x: f64, r: f64) -> f64 {
    cap_height(arcs[arc_index(arcs, x)].center, x, r)
}

/// Is `p` below the cap envelope (within tolerance)?  Valid only for `p.x`
/// inside the common slab, where the binding cap is defined.
fn below_envelope(arcs: &[EnvelopeArc], p: Point2, r: f64, tol: f64) -> bool {
    let c = arcs[arc_index(arcs, p.x)].center;
    p.y <= c.y || p.dist(c) <= r + tol
}

/// Lower envelope of the upper caps of `centers` (sorted by `(x, y)`).
/// `flip_y` mirrors the input, turning this into the lower-boundary
/// envelope.  Returns `None` when two disks are outright disjoint.
///
/// Caps are translates of one strictly concave curve, so two of them cross
/// at most once and, when both centers share an `x`-overlap, the one with
/// smaller center-`x` is the lower cap to the *right* of the crossing.
/// Processing centers by descending `x` therefore appends envelope arcs
/// left to right with a plain stack.
fn build_envelope(centers: &[Point2], r: f64, flip_y: bool) -> Option<Vec<EnvelopeArc>> {
    let mut arcs: Vec<EnvelopeArc> = Vec::new();
    let mut i = centers.len();
    while i > 0 {
        // One candidate per distinct x: only the lowest cap can bind.
        let x = centers[i - 1].x;
        let run_start = centers[..i].partition_point(|c| c.x < x);
        let c0 = if flip_y {
            centers[i - 1] // the largest y mirrors to the smallest
        } else {
            centers[run_start]
        };
        i = run_start;
        let u = if flip_y {
            Point2::new(c0.x, -c0.y)
        } else {
            c0
        };
        loop {
            let Some(top) = arcs.last().copied() else {
                arcs.push(EnvelopeArc {
                    center: u,
                    from_x: f64::NEG_INFINITY,
                });
                break;
            };
            let w = top.center;
            let d = u.dist(w);
            if d > 2.0 * r {
                return None;
            }
            match caps_cross_x(u, w, r, d) {
                Some(cross_x) => {
                    // u binds right of the crossing.
                    if cross_x <= top.from_x {
                        arcs.pop();
                    } else {
                        arcs.push(EnvelopeArc {
                            center: u,
                            from_x: cross_x,
                        });
                        break;
                    }
                }
                None => {
                    // No crossing: one cap dominates the whole overlap, which
                    // contains the common slab.
                    let xm = (u.x + w.x) / 2.0;
                    if cap_height(u, xm, r) < cap_height(w, xm, r) {
                        arcs.pop();
                    } else {
                        break;
                    }
                }
            }
        }
    }
    Some(arcs)
}

/// Crossing abscissa of the upper caps at `u` and `w` (`u.x < w.x`,
/// `d = |uw| <= 2r`), if the caps — not merely the circles — cross: the
/// circles' upper intersection point must lie on the upper half of both.
fn caps_cross_x(u: Point2, w: Point2, r: f64, d: f64) -> Option<f64> {
    if d == 0.0 {
        return None;
    }
    let h = ((r - d / 2.0).max(0.0) * (r + d / 2.0)).sqrt();
    let mid = Point2::new((u.x + w.x) / 2.0, (u.y + w.y) / 2.0);
    let dx = w.x - u.x;
    let dy = w.y - u.y;
    let upper_y = mid.y + h * dx / d;
    if upper_y >= u.y.max(w.y) {
        Some(mid.x - h * dy / d)
    } else {
        None
    }
}

/// Golden-section maximization of a concave function.
fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    (lo + hi) / 2.0
}

/// The set of points reachable from `origin` within time `y` when the
/// walkway may be entered at `w.a`: the direct disk around `origin` plus,
/// when the budget survives walking to `a` and riding, a disk around the
/// exit `w.b`.  For the route entering at `b`, construct with the endpoints
/// swapped.
#[derive(Debug, Clone, Copy)]
pub struct TravelTimeDisk {
    pub origin: Point2,
    pub primary_radius: f64,
    /// Exit-side disk: `(w.b, y - d(origin, w.a) - ride)` when nonnegative.
    pub secondary: Option<(Point2, f64)>,
}

impl TravelTimeDisk {
    pub fn new(origin: Point2, w: &Walkway2, v: Speed, y: f64) -> Result<Self> {
        if !origin.is_finite() || !y.is_finite() {
            return Err(WalkwayError::NonFinite("travel-time disk parameter"));
        }
        if y < 0.0 {
            return Err(WalkwayError::InvalidArgument(format!(
                "time budget {y} must be nonnegative"
            )));
        }
        let leftover = y - origin.dist(w.a) - v.inverse() * w.length();
        Ok(TravelTimeDisk {
            origin,
            primary_radius: y,
            secondary: (leftover >= 0.0).then_some((w.b, leftover)),
        })
    }

    pub fn contains(&self, p: Point2) -> bool {
        let tol = tol_for(self.primary_radius);
        p.dist(self.origin) <= self.primary_radius + tol
            || self
                .secondary
                .is_some_and(|(c, r)| p.dist(c) <= r + tol)
    }
}

/// All suffix intersections `C_i` of disks around `centers[i..]`, each
/// queryable independently.  Versions are materialized snapshots, so memory
/// grows quadratically: meant for moderate collections (tests, inspection);
/// the diameter decision streams a single [`DiskIntersection`] instead.
#[derive(Debug, Clone)]
pub struct SuffixDiskIntersections {
    versions: Vec<DiskIntersection>,
}

impl SuffixDiskIntersections {
    /// Build from the full center list; inserts run in reverse index order
    /// so version `i` holds exactly the disks `i..`.
    pub fn build(centers: &[Point2], radius: f64) -> Result<Self> {
        if centers.is_empty() {
            return Err(WalkwayError::EmptyInput("disk centers"));
        }
        let mut versions = Vec::with_capacity(centers.len() + 1);
        let mut current = DiskIntersection::new(radius)?;
        current.flush();
        versions.push(current.clone());
        for &c in centers.iter().rev() {
            current.insert(c)?;
            current.flush();
            versions.push(current.clone());
        }
        versions.reverse();
        Ok(SuffixDiskIntersections { versions })
    }

    /// Membership of `p` in `C_i` (disks `i..`); `i = len()` is the empty
    /// intersection of no disks, i.e. the whole plane.
    pub fn membership(&self, p: Point2, i: usize) -> Result<bool> {
        self.versions
            .get(i)
            .map(|v| v.contains(p))
            .ok_or_else(|| {
                WalkwayError::InvalidArgument(format!(
                    "suffix index {i} exceeds {}",
                    self.versions.len() - 1
                ))
            })
    }

    pub fn len(&self) -> usize {
        self.versions.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn version(&self, i: usize) -> Option<&DiskIntersection> {
        self.versions.get(i)
    }
}

/// Can every red-to-blue pair travel within `y`, walking directly or
/// entering the walkway at `a` and leaving at `b`?  Labels are taken as
/// given (no bisector check) and coincident endpoints are fine, so this
/// serves both the bidirectional decision (after partitioning) and the
/// one-way variants.
pub fn red_blue_cross_feasible(
    red: &[Point2],
    blue: &[Point2],
    w: &Walkway2,
    v: Speed,
    y: f64,
) -> Result<bool> {
    if !y.is_finite() {
        return Err(WalkwayError::NonFinite("time budget"));
    }
    if red.is_empty() || blue.is_empty() {
        return Ok(true);
    }
    if y < 0.0 {
        return Ok(false);
    }
    let ride = v.inverse() * w.length();
    let tol = f64::max(crate::geometry::ABS_TOL, crate::geometry::REL_TOL * y.abs());
    let mut by_entry: Vec<(f64, Point2)> = red.iter().map(|&s| (s.dist(w.a), s)).collect();
    by_entry.sort_unstable_by(|p, q| p.0.total_cmp(&q.0));
    let n = by_entry.len();
    // Red points the walkway budget covers form a prefix; the rest must be
    // reached directly, i.e. the blue point must lie in a suffix disk
    // intersection.  Group the blue points by suffix start.
    let mut groups: Vec<Vec<Point2>> = vec![Vec::new(); n + 1];
    for &t in blue {
        let budget = y - ride - w.b.dist(t);
        let i = by_entry.partition_point(|&(k, _)| k <= budget + tol);
        groups[i].push(t);
    }
    let mut suffix = DiskIntersection::new(y)?;
    for t in &groups[n] {
        debug_assert!(suffix.contains(*t));
    }
    for i in (0..n).rev() {
        suffix.insert(by_entry[i].1)?;
        if groups[i].iter().any(|&t| !suffix.contains(t)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decision form of the planar travel-time diameter: is every pairwise
/// travel time at most `y` (within relative tolerance)?
///
/// Same-side pairs of the bisector partition never gain from the walkway,
/// so they reduce to Euclidean diameters; cross pairs go through
/// [`red_blue_cross_feasible`].  Runs in `O(n log n)` plus near-linear disk
/// structure work.
pub fn diameter_decision_2d(points: &[Point2], w: &Walkway2, v: Speed, y: f64) -> Result<bool> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    if !y.is_finite() {
        return Err(WalkwayError::NonFinite("time budget"));
    }
    if y < 0.0 {
        return Err(WalkwayError::InvalidArgument(format!(
            "time budget {y} must be nonnegative"
        )));
    }
    if points.len() < 2 {
        return Ok(true);
    }
    let sets = red_blue_partition(points, w)?;
    let tol = f64::max(crate::geometry::ABS_TOL, crate::geometry::REL_TOL * y.abs());
    if euclidean_diameter(&sets.red).0 > y + tol || euclidean_diameter(&sets.blue).0 > y + tol {
        return Ok(false);
    }
    red_blue_cross_feasible(&sets.red, &sets.blue, w, v, y)
}

/// Exact planar travel-time diameter by scanning all pairs, with a
/// realizing pair; `(0.0, None)` for fewer than two points.
pub fn diameter_2d(
    points: &[Point2],
    w: &Walkway2,
    v: Speed,
) -> Result<(f64, Option<(Point2, Point2)>)> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    if points.len() < 2 {
        return Ok((0.0, None));
    }
    let inv = v.inverse();
    let mut best = f64::NEG_INFINITY;
    let mut wit = (points[0], points[0]);
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let d = time_2d_raw(p, q, w.a, w.b, inv);
            if d > best {
                best = d;
                wit = (p, q);
            }
        }
    }
    Ok((best, Some(wit)))
}

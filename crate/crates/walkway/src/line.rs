//! Diameter and optimal walkway placement on a line.
//!
//! Both routines run in `O(n log n)`.  The diameter scan classifies points
//! against the walkway midpoint and only evaluates pairs that can be worst;
//! the placement routine reduces the continuous search to two candidate
//! walkways read off the sorted points and keeps the better one, scored by
//! its exact diameter.

use crate::error::{Result, WalkwayError};
use crate::geometry::{approx_eq, time_1d_raw, Speed, Walkway1};

/// An optimal walkway on the line together with the diameter it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement1 {
    pub walkway: Walkway1,
    /// Largest pairwise travel time under `walkway`; equals
    /// [`diameter_1d`] evaluated at `walkway` exactly.
    pub diameter: f64,
    /// A pair of input points realizing `diameter` (absent for fewer than
    /// two points).
    pub witness: Option<(f64, f64)>,
}

/// Largest pairwise travel time among `points` for a fixed walkway.
///
/// Returns the value and a realizing pair; `(0.0, None)` for fewer than two
/// points.  Sorted points are split at the walkway midpoint `m`: any pair on
/// one side of `m` walks directly (the detour past the far end of the
/// walkway always loses), so only side spans and cross-side pairs are
/// candidates.  Cross pairs with a point left of `a` (resp. right of `b`)
/// are worst at the leftmost (resp. rightmost) point, and for pairs
/// straddling `m` inside the walkway the direct cost rises while the riding
/// cost falls as the right point grows, so a two-pointer over the crossing
/// keeps the scan linear.
pub fn diameter_1d(points: &[f64], w: Walkway1, v: Speed) -> Result<(f64, Option<(f64, f64)>)> {
    if points.iter().any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    if points.len() < 2 {
        return Ok((0.0, None));
    }
    let mut p = points.to_vec();
    p.sort_unstable_by(f64::total_cmp);
    let (a, b, inv) = (w.a(), w.b(), v.inverse());
    let m = (a + b) / 2.0;
    let n = p.len();
    let e1 = p.partition_point(|&x| x <= a);
    let e2 = p.partition_point(|&x| x <= m);
    let e3 = p.partition_point(|&x| x <= b);

    let mut best = f64::NEG_INFINITY;
    let mut wit = (p[0], p[0]);
    let mut consider = |s: f64, t: f64| {
        let d = time_1d_raw(s, t, a, b, inv);
        if d > best {
            best = d;
            wit = (s, t);
        }
    };

    // Pairs on one side of the midpoint walk directly: their worst case is
    // the side span.
    if e2 >= 2 {
        consider(p[0], p[e2 - 1]);
    }
    if n - e2 >= 2 {
        consider(p[e2], p[n - 1]);
    }
    consider(p[0], p[n - 1]);
    // Left of `a` crossed with the right walkway half: both route costs fall
    // as the left point moves right, so only the leftmost point matters.
    if e1 > 0 {
        for &q in &p[e2..e3] {
            consider(p[0], q);
        }
    }
    // Mirror image: right of `b` crossed with the left walkway half.
    if e3 < n {
        for &s in &p[e1..e2] {
            consider(s, p[n - 1]);
        }
    }
    // Pairs straddling the midpoint inside the walkway.  For fixed s the
    // direct cost grows and the riding cost shrinks in q, so the row maximum
    // sits at the crossing; the crossing index only moves right as s grows
    // (both monotonicities survive rounding, see the comparison below, which
    // reproduces the arithmetic of `time_1d_raw` exactly).
    let left = &p[e1..e2];
    let right = &p[e2..e3];
    if !left.is_empty() && !right.is_empty() {
        let ride = inv * (b - a);
        let mut j = 0usize;
        for &s in left {
            let from_a = (s - a).abs();
            while j < right.len() {
                let q = right[j];
                let direct = q - s;
                let via = (from_a + (q - b).abs()) + ride;
                if direct < via {
                    j += 1;
                } else {
                    break;
                }
            }
            if j > 0 {
                consider(s, right[j - 1]);
            }
            if j < right.len() {
                consider(s, right[j]);
            }
        }
    }
    Ok((best, Some(wit)))
}

/// Walkway minimizing the largest pairwise travel time among `points`.
///
/// The search space collapses to two candidates built from the sorted
/// points.  With coordinates scaled to `[0, 1]` and `c = 1 / (2 - 1/v)`:
/// pick `r` as the largest point at most `1 - c` and `s` as the smallest
/// point at least `(r (1 - 1/v) + 1 + 1/v) / (3 - 1/v)`, or symmetrically
/// pick `s` against `c` first and `r` against the mirrored threshold.  Each
/// pair maps to the walkway from `r / 2` to `(s + 1) / 2`, which balances
/// the walking of the extreme points against the span each side must cover
/// on foot.  Both candidates are scored with [`diameter_1d`] and the better
/// one is returned (ties: lexicographically smaller endpoints), so the
/// reported diameter is exactly the diameter of the reported walkway.
pub fn locate_1d(points: &[f64], v: Speed) -> Result<Placement1> {
    if points.is_empty() {
        return Err(WalkwayError::EmptyInput("points"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(WalkwayError::NonFinite("point"));
    }
    let mut p = points.to_vec();
    p.sort_unstable_by(f64::total_cmp);
    let n = p.len();
    let (lo, hi) = (p[0], p[n - 1]);
    if lo == hi {
        let walkway = Walkway1::new(lo, lo)?;
        let (diameter, witness) = diameter_1d(&p, walkway, v)?;
        return Ok(Placement1 {
            walkway,
            diameter,
            witness,
        });
    }
    let span = hi - lo;
    let inv = v.inverse();
    let c = 1.0 / (2.0 - inv);
    let norm = |x: f64| (x - lo) / span;
    let entry_threshold = |s_norm: f64| (1.0 - inv) * (s_norm + 1.0) / (3.0 - inv);
    let exit_threshold = |r_norm: f64| (r_norm * (1.0 - inv) + 1.0 + inv) / (3.0 - inv);
    let largest_le = |t: f64| p.partition_point(|&x| norm(x) <= t).checked_sub(1);
    let smallest_ge = |t: f64| {
        let k = p.partition_point(|&x| norm(x) < t);
        (k < n).then_some(k)
    };

    // Candidate 1: entry point first, exit point from its threshold.
    // Candidate 2: the mirror image.  The extreme points always qualify, so
    // the fallbacks only guard against rounding pushing a threshold past
    // the ends.
    let mut cands: Vec<(usize, usize)> = Vec::with_capacity(2);
    let ri = largest_le(1.0 - c).unwrap_or(0);
    cands.push((ri, smallest_ge(exit_threshold(norm(p[ri]))).unwrap_or(n - 1)));
    let sj = smallest_ge(c).unwrap_or(n - 1);
    cands.push((largest_le(entry_threshold(norm(p[sj]))).unwrap_or(0), sj));
    cands.dedup();

    let mut best: Option<Placement1> = None;
    for (ri, si) in cands {
        let walkway = Walkway1::new((lo + p[ri]) / 2.0, (p[si] + hi) / 2.0)?;
        let (diameter, witness) = diameter_1d(&p, walkway, v)?;
        let cand = Placement1 {
            walkway,
            diameter,
            witness,
        };
        best = Some(match best {
            None => cand,
            Some(cur) => {
                let tie = approx_eq(cand.diameter, cur.diameter);
                let lex_smaller = (cand.walkway.a(), cand.walkway.b())
                    < (cur.walkway.a(), cur.walkway.b());
                if (tie && lex_smaller) || (!tie && cand.diameter < cur.diameter) {
                    cand
                } else {
                    cur
                }
            }
        });
    }
    Ok(best.expect("at least one candidate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_diameter_1d;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn diameter_two_points_with_ride() {
        let w = Walkway1::new(0.0, 1.0).unwrap();
        let (d, wit) = diameter_1d(&[0.9, 0.2], w, Speed::new(4.0).unwrap()).unwrap();
        assert_relative_eq!(d, 0.55);
        let (s, t) = wit.unwrap();
        assert_eq!((s, t), (0.2, 0.9));
    }

    #[test]
    fn diameter_trivial_sets() {
        let w = Walkway1::new(0.0, 1.0).unwrap();
        assert_eq!(diameter_1d(&[], w, Speed::INFINITE).unwrap(), (0.0, None));
        assert_eq!(diameter_1d(&[3.0], w, Speed::INFINITE).unwrap(), (0.0, None));
        assert!(diameter_1d(&[0.0, f64::INFINITY], w, Speed::INFINITE).is_err());
    }

    #[test]
    fn diameter_walkway_outside_point_range() {
        // walkway far to the right: everyone walks
        let w = Walkway1::new(100.0, 200.0).unwrap();
        let (d, _) = diameter_1d(&[0.0, 1.0, 5.0], w, Speed::INFINITE).unwrap();
        assert_relative_eq!(d, 5.0);
    }

    #[test]
    fn locate_two_points_spans_them() {
        let placed = locate_1d(&[0.0, 1.0], Speed::new(2.0).unwrap()).unwrap();
        assert_relative_eq!(placed.walkway.a(), 0.0);
        assert_relative_eq!(placed.walkway.b(), 1.0);
        assert_relative_eq!(placed.diameter, 0.5);
    }

    #[test]
    fn locate_four_even_points() {
        let pts = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
        let placed = locate_1d(&pts, Speed::new(2.0).unwrap()).unwrap();
        assert_relative_eq!(placed.walkway.a(), 1.0 / 6.0, max_relative = 1e-12);
        assert_relative_eq!(placed.walkway.b(), 5.0 / 6.0, max_relative = 1e-12);
        assert_relative_eq!(placed.diameter, 2.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn locate_degenerate_inputs() {
        assert!(matches!(
            locate_1d(&[], Speed::INFINITE),
            Err(WalkwayError::EmptyInput(_))
        ));
        let single = locate_1d(&[4.0], Speed::INFINITE).unwrap();
        assert_eq!(single.walkway.a(), 4.0);
        assert_eq!(single.diameter, 0.0);
        assert_eq!(single.witness, None);
        let equal = locate_1d(&[2.0, 2.0, 2.0], Speed::INFINITE).unwrap();
        assert_eq!(equal.diameter, 0.0);
        assert_eq!((equal.walkway.a(), equal.walkway.b()), (2.0, 2.0));
    }

    #[test]
    fn located_walkway_beats_grid_sweep() {
        use crate::oracle::{brute_locate, GridSpec};
        let instances: [&[f64]; 3] = [
            &[0.0, 0.1, 0.35, 0.61, 0.62, 1.0],
            &[-5.0, -1.0, 0.0, 2.0, 2.5, 7.0, 11.0],
            &[0.0, 0.45, 0.5, 0.55, 1.0],
        ];
        for (k, pts) in instances.iter().enumerate() {
            for v in [Speed::new(1.5).unwrap(), Speed::new(3.0).unwrap(), Speed::INFINITE] {
                let placed = locate_1d(pts, v).unwrap();
                let lo = pts.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = pts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let grid = GridSpec::new(vec![lo, lo], vec![hi, hi], 60).with_refinement(4, 0.2);
                let (_, best_grid) = brute_locate(
                    |x| {
                        let w = Walkway1::new(x[0], x[1]).unwrap();
                        diameter_1d(pts, w, v).unwrap().0
                    },
                    &grid,
                );
                assert!(
                    placed.diameter <= best_grid + 1e-6 * (hi - lo),
                    "instance {k}: placed {} but grid found {}",
                    placed.diameter,
                    best_grid
                );
            }
        }
    }

    fn arb_points(max: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0..100.0f64, 2..max)
    }

    proptest! {
        #[test]
        fn diameter_matches_brute_scan(
            pts in arb_points(80),
            a in -120.0..120.0f64, len in 0.0..100.0f64,
            inv in 0.0..0.99f64,
        ) {
            let w = Walkway1::new(a, a + len).unwrap();
            let v = Speed::from_inverse(inv).unwrap();
            let (fast, wit) = diameter_1d(&pts, w, v).unwrap();
            let brute = brute_diameter_1d(&pts, w, v).0;
            prop_assert!((fast - brute).abs() <= 1e-9 * brute.abs().max(1.0),
                "fast {fast} vs brute {brute}");
            let (s, t) = wit.unwrap();
            // the witness realizes the reported value exactly
            prop_assert_eq!(time_1d_raw(s, t, w.a(), w.b(), v.inverse()), fast);
        }

        #[test]
        fn located_walkway_reports_its_own_diameter(
            pts in arb_points(40), inv in 0.0..0.99f64,
        ) {
            let v = Speed::from_inverse(inv).unwrap();
            let placed = locate_1d(&pts, v).unwrap();
            let (again, _) = diameter_1d(&pts, placed.walkway, v).unwrap();
            prop_assert_eq!(placed.diameter, again);
        }

        #[test]
        fn located_walkway_beats_random_walkways(
            pts in arb_points(30), inv in 0.0..0.99f64,
            a in -100.0..100.0f64, len in 0.0..200.0f64,
        ) {
            let v = Speed::from_inverse(inv).unwrap();
            let placed = locate_1d(&pts, v).unwrap();
            let rival = Walkway1::new(a, a + len).unwrap();
            let (rival_diam, _) = diameter_1d(&pts, rival, v).unwrap();
            prop_assert!(placed.diameter <= rival_diam + 1e-9 * rival_diam.max(1.0),
                "placed {} worse than rival {}", placed.diameter, rival_diam);
        }
    }
}

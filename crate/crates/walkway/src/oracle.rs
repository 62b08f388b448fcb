//! Brute-force reference implementations.
//!
//! Everything here is deliberately simple — exhaustive pair scans and dense
//! grid searches — so the fast algorithms can be checked against them.  The
//! only code shared with the fast paths is the raw travel-time arithmetic,
//! which keeps "oracle equals fast path" comparisons exact where claimed.

use crate::geometry::{time_1d_raw, time_2d_raw, Point2, Speed, Walkway1, Walkway2};

/// A dense axis-aligned search grid with optional zoom-in refinement.
///
/// Each refinement level re-grids a box around the incumbent minimizer whose
/// half-width is `refine_shrink` times the previous level's, clipped to the
/// original bounds, using the same number of subdivisions.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Subdivisions per axis; each axis is sampled at `steps + 1` points.
    pub steps: usize,
    pub refine_levels: usize,
    pub refine_shrink: f64,
}

impl GridSpec {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, steps: usize) -> Self {
        assert_eq!(lo.len(), hi.len(), "grid bounds must have equal dimension");
        assert!(steps >= 1, "grid needs at least one subdivision");
        GridSpec {
            lo,
            hi,
            steps,
            refine_levels: 0,
            refine_shrink: 0.5,
        }
    }

    pub fn with_refinement(mut self, levels: usize, shrink: f64) -> Self {
        assert!((0.0..1.0).contains(&shrink) && shrink > 0.0);
        self.refine_levels = levels;
        self.refine_shrink = shrink;
        self
    }
}

/// Minimize `objective` by exhaustive grid search with zoom-in refinement.
///
/// Scan order is lexicographic in the sample coordinates and ties keep the
/// first minimizer, so on exact plateaus the reported point is the
/// lexicographically smallest sampled one.  The best value is monotone
/// across refinement levels.
pub fn brute_locate<F>(objective: F, grid: &GridSpec) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let dim = grid.lo.len();
    let mut lo = grid.lo.clone();
    let mut hi = grid.hi.clone();
    let mut best_x = lo.clone();
    let mut best_v = f64::INFINITY;
    for _ in 0..=grid.refine_levels {
        scan_box(&objective, &lo, &hi, grid.steps, &mut best_x, &mut best_v);
        // Zoom: a smaller box around the incumbent, clipped to the original.
        for d in 0..dim {
            let half = grid.refine_shrink * (hi[d] - lo[d]) / 2.0;
            lo[d] = (best_x[d] - half).max(grid.lo[d]);
            hi[d] = (best_x[d] + half).min(grid.hi[d]);
        }
    }
    (best_x, best_v)
}

fn scan_box<F>(
    objective: &F,
    lo: &[f64],
    hi: &[f64],
    steps: usize,
    best_x: &mut [f64],
    best_v: &mut f64,
) where
    F: Fn(&[f64]) -> f64,
{
    let dim = lo.len();
    if dim == 0 {
        let v = objective(&[]);
        if v < *best_v {
            *best_v = v;
        }
        return;
    }
    let mut idx = vec![0usize; dim];
    let mut x = vec![0.0f64; dim];
    loop {
        for d in 0..dim {
            x[d] = lo[d] + (hi[d] - lo[d]) * idx[d] as f64 / steps as f64;
        }
        let v = objective(&x);
        if v < *best_v {
            *best_v = v;
            best_x.copy_from_slice(&x);
        }
        // Odometer increment, last axis fastest => lexicographic scan order.
        let mut d = dim;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            if idx[d] < steps {
                idx[d] += 1;
                break;
            }
            idx[d] = 0;
        }
    }
}

/// Largest pairwise 1D travel time with a realizing pair, by scanning all
/// pairs; `(0.0, None)` for fewer than two points.
pub fn brute_diameter_1d(points: &[f64], w: Walkway1, v: Speed) -> (f64, Option<(f64, f64)>) {
    let inv = v.inverse();
    let mut best = 0.0f64;
    let mut witness = None;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let t = time_1d_raw(p, q, w.a(), w.b(), inv);
            if witness.is_none() || t > best {
                best = best.max(t);
                witness = Some((p, q));
            }
        }
    }
    (best, witness)
}

/// Largest pairwise planar travel time with a realizing pair, by scanning
/// all pairs; `(0.0, None)` for fewer than two points.
pub fn brute_diameter_2d(
    points: &[Point2],
    w: &Walkway2,
    v: Speed,
) -> (f64, Option<(Point2, Point2)>) {
    let inv = v.inverse();
    let mut best = 0.0f64;
    let mut witness = None;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let t = time_2d_raw(p, q, w.a, w.b, inv);
            if witness.is_none() || t > best {
                best = best.max(t);
                witness = Some((p, q));
            }
        }
    }
    (best, witness)
}

/// Largest source-to-destination cost when every trip must use one of the
/// given elevator points: `max over (r, b)` of `min over e` of
/// `d(r, e) + d(e, b)`, with a realizing pair.  Returns `(0.0, None)` if any
/// of the three sets is empty.
pub fn brute_k_elevator(
    red: &[Point2],
    blue: &[Point2],
    elevators: &[Point2],
) -> (f64, Option<(Point2, Point2)>) {
    if elevators.is_empty() {
        return (0.0, None);
    }
    let mut worst = 0.0f64;
    let mut witness = None;
    for &r in red {
        for &b in blue {
            let best = elevators
                .iter()
                .map(|&e| r.dist(e) + e.dist(b))
                .fold(f64::INFINITY, f64::min);
            if witness.is_none() || best > worst {
                worst = worst.max(best);
                witness = Some((r, b));
            }
        }
    }
    (worst, witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_search_finds_quadratic_minimum() {
        let grid = GridSpec::new(vec![-2.0, -2.0], vec![2.0, 2.0], 16).with_refinement(6, 0.4);
        let (x, v) = brute_locate(|x| (x[0] - 0.3).powi(2) + (x[1] + 0.7).powi(2), &grid);
        assert!((x[0] - 0.3).abs() < 1e-3);
        assert!((x[1] + 0.7).abs() < 1e-3);
        assert!(v < 1e-6);
    }

    #[test]
    fn grid_search_plateau_prefers_lexicographic_minimum() {
        let grid = GridSpec::new(vec![-1.0], vec![1.0], 8);
        let (x, v) = brute_locate(|_| 5.0, &grid);
        assert_eq!(x[0], -1.0);
        assert_eq!(v, 5.0);
    }

    #[test]
    fn diameter_1d_matches_hand_value() {
        let w = Walkway1::new(0.0, 1.0).unwrap();
        let v = Speed::new(2.0).unwrap();
        // endpoints ride the whole walkway: 0.5; no pair is worse
        assert_relative_eq!(brute_diameter_1d(&[0.0, 0.5, 1.0], w, v).0, 0.5);
    }

    #[test]
    fn k_elevator_triple_scan() {
        let red = [Point2::new(0.0, 0.0)];
        let blue = [Point2::new(10.0, 0.0)];
        let elevators = [Point2::new(1.0, 0.0), Point2::new(8.0, 0.0)];
        // best elevator for the single pair is (8, 0): 8 + 2 = 10
        assert_relative_eq!(brute_k_elevator(&red, &blue, &elevators).0, 10.0);
        assert_eq!(brute_k_elevator(&red, &blue, &[]).0, 0.0);
    }
}

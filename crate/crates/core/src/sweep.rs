//! Orientation optimization: critical directions from label-corner pairs,
//! one solve per open interval between them, and the argmax direction.
//!
//! Between two consecutive critical directions the set of leader-label
//! incidences is constant, so solving once at an exact interior direction
//! (the mediant of the interval's primitive boundary vectors) covers the
//! whole interval. Boundary directions themselves are degenerate point-pair
//! slopes and are never solved directly.

use crate::geometry::Direction;
use crate::instance::Instance;
use crate::solver_general::{self, GeneralOptions};
use crate::Result;

/// One open interval of the direction circle with its optimum.
#[derive(Debug, Clone)]
pub struct SlopeInterval {
    pub lo: Direction,
    pub hi: Direction,
    pub representative: Direction,
    pub value: usize,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub intervals: Vec<SlopeInterval>,
    /// Index of the first interval attaining the maximum.
    pub best: usize,
}

impl SweepResult {
    pub fn best_interval(&self) -> &SlopeInterval {
        &self.intervals[self.best]
    }
}

/// All directions spanned by two distinct corner points of the candidate
/// labels (both orientations), deduplicated and sorted by slope angle.
/// Point-pair directions are included automatically since every anchor is a
/// label corner.
pub fn critical_directions(instance: &Instance) -> Vec<Direction> {
    let mut corners = Vec::with_capacity(4 * instance.n());
    for i in 0..instance.n() {
        corners.extend(instance.label_rect(i).corners());
    }
    let mut dirs: Vec<Direction> = Vec::new();
    for i in 0..corners.len() {
        for j in i + 1..corners.len() {
            let dx = &corners[j].x - &corners[i].x;
            let dy = &corners[j].y - &corners[i].y;
            if dx.is_zero() && dy.is_zero() {
                continue;
            }
            let d = Direction::new(dx, dy).expect("nonzero");
            dirs.push(Direction::new(-d.dx().clone(), -d.dy().clone()).expect("nonzero"));
            dirs.push(d);
        }
    }
    dirs.sort_by(|a, b| a.circular_cmp(b));
    dirs.dedup();
    dirs
}

/// Solves once per orientation interval and reports per-interval optima plus
/// a direction achieving the global maximum.
pub fn sweep_solve(instance: &Instance) -> Result<SweepResult> {
    sweep_solve_with(instance, &GeneralOptions::default())
}

pub fn sweep_solve_with(instance: &Instance, opts: &GeneralOptions) -> Result<SweepResult> {
    let dirs = critical_directions(instance);
    assert!(dirs.len() >= 4, "label corners always span the axes");
    let mut intervals = Vec::with_capacity(dirs.len());
    for (k, lo) in dirs.iter().enumerate() {
        let hi = &dirs[(k + 1) % dirs.len()];
        let representative = lo.mediant(hi).expect("adjacent directions");
        let sub = Instance {
            dir: representative.clone(),
            ..instance.clone()
        };
        let value = solver_general::solve_with(&sub, opts)?.internal_count;
        intervals.push(SlopeInterval {
            lo: lo.clone(),
            hi: hi.clone(),
            representative,
            value,
        });
    }
    let best = intervals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.value.cmp(&b.1.value).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .expect("at least one interval");
    Ok(SweepResult { intervals, best })
}

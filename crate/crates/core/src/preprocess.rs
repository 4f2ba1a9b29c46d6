//! Forced-label analysis, the obstacle fixpoint, degenerate-slope handling,
//! label scaling, and the density parameter.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::Zero;

use crate::geometry::polygon::{ray_hits_polygon_interior, rect_hits_polygon_interior};
use crate::geometry::{point_on_ray, ray_hits_rect, LeaderRay, Point, Rect, Scalar, SimplePolygon};
use crate::instance::Instance;
use crate::routing::MapPolygon;
use crate::{Error, Result};

/// A polygonal obstacle that leaders and internal labels must avoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstacle {
    pub polygon: SimplePolygon,
}

impl Obstacle {
    pub fn new(verts: Vec<Point>) -> Result<Self> {
        Ok(Obstacle {
            polygon: SimplePolygon::new(verts)?,
        })
    }
}

/// Outcome of the forcing analysis.
#[derive(Debug, Clone)]
pub struct PreprocessReport {
    /// Points whose candidate label's closed rectangle covers another point;
    /// they can never be labeled internally.
    pub p_x: BTreeSet<usize>,
    /// All points forced external: `p_x` plus obstacle-forced ones.
    pub forced_external: BTreeSet<usize>,
    /// Points forced internal: leader through another point, or leader
    /// through an obstacle (transitively, through forced geometry).
    pub forced_internal: BTreeSet<usize>,
    /// Per-point flag: candidate label pierced by a leader of `p_x`.
    pub label_hit_by_px: Vec<bool>,
    /// Density parameter `min(n, ceil(1/d_min))`.
    pub delta: usize,
    /// Whether coordinates were rescaled to make labels unit squares.
    pub scaled: bool,
}

/// Minimum squared pairwise distance, exact. `None` for a single point.
pub fn min_pairwise_distance_squared(points: &[Point]) -> Option<Scalar> {
    let mut best: Option<Scalar> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dx = &points[i].x - &points[j].x;
            let dy = &points[i].y - &points[j].y;
            let d2 = &(&dx * &dx) + &(&dy * &dy);
            if best.as_ref().is_none_or(|b| d2 < *b) {
                best = Some(d2);
            }
        }
    }
    best
}

fn ceil_sqrt_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    // smallest k >= 0 with k^2 * den >= num
    let mut k = (num / den).sqrt();
    while &(&k * &k) * den < *num {
        k += 1;
    }
    while k > BigInt::zero() && &(&(&k - 1) * &(&k - 1)) * den >= *num {
        k -= 1;
    }
    k
}

/// The density parameter `min(n, ceil(1/d_min))` with Euclidean `d_min`.
pub fn delta(points: &[Point]) -> usize {
    let n = points.len();
    let Some(d2) = min_pairwise_distance_squared(points) else {
        return n;
    };
    // 1/d_min = sqrt(den/num) of d2 = num/den
    let k = ceil_sqrt_ratio(d2.denom(), d2.numer());
    let k = if k.is_zero() { BigInt::from(1) } else { k };
    k.min(BigInt::from(n)).try_into().unwrap_or(n)
}

/// Forced-label analysis without obstacles: the covered-label rule and the
/// degenerate-slope rule. Errors with `Infeasible` when a point is forced
/// both ways.
pub fn compute_forced(instance: &Instance) -> Result<PreprocessReport> {
    let n = instance.n();
    let mut p_x = BTreeSet::new();
    let mut forced_internal = BTreeSet::new();
    for i in 0..n {
        let label = instance.label_rect(i);
        let leader = instance.leader(i);
        for j in 0..n {
            if i == j {
                continue;
            }
            if label.contains_closed(&instance.points[j]) {
                p_x.insert(i);
            }
            if point_on_ray(&leader, &instance.points[j]) {
                forced_internal.insert(i);
            }
        }
    }
    if let Some(&i) = p_x.intersection(&forced_internal).next() {
        return Err(Error::Infeasible(format!(
            "point {i} is forced both internal (leader through a point) and external (label covers a point)"
        )));
    }
    let mut label_hit_by_px = vec![false; n];
    for (i, flag) in label_hit_by_px.iter_mut().enumerate() {
        let label = instance.label_rect(i);
        *flag = p_x
            .iter()
            .any(|&e| e != i && ray_hits_rect(&instance.leader(e), &label));
    }
    Ok(PreprocessReport {
        forced_external: p_x.clone(),
        p_x,
        forced_internal,
        label_hit_by_px,
        delta: delta(&instance.points),
        scaled: !instance.has_unit_labels(),
    })
}

/// Runs the forcing rules to a fixpoint against the obstacle set. Forced
/// internal labels and forced external leaders join the blocking geometry,
/// so one forcing can trigger the next round. Leaders of `p_x` stay solver
/// context instead (the per-point flag), matching the covered-label rule's
/// treatment elsewhere.
pub fn obstacle_fixpoint(instance: &Instance) -> Result<PreprocessReport> {
    let mut report = compute_forced(instance)?;
    let n = instance.n();
    // forced-internal labels must not be pierced by the fixed p_x leaders
    for &i in &report.forced_internal {
        if report.label_hit_by_px[i] {
            return Err(Error::Infeasible(format!(
                "label of point {i} is forced internal but pierced by a forced leader"
            )));
        }
    }
    let mut blocking_labels: Vec<(usize, Rect)> = report
        .forced_internal
        .iter()
        .map(|&i| (i, instance.label_rect(i)))
        .collect();
    let mut blocking_leaders: Vec<(usize, LeaderRay)> = Vec::new();

    let label_blocked = |i: usize, labels: &[(usize, Rect)], leaders: &[(usize, LeaderRay)]| {
        let label = instance.label_rect(i);
        instance
            .obstacles
            .iter()
            .any(|o| rect_hits_polygon_interior(&label, &o.polygon))
            || labels
                .iter()
                .any(|(o, l)| *o != i && crate::geometry::rects_overlap(l, &label))
            || leaders.iter().any(|(o, r)| *o != i && ray_hits_rect(r, &label))
    };
    let leader_blocked = |i: usize, labels: &[(usize, Rect)]| {
        let leader = instance.leader(i);
        instance
            .obstacles
            .iter()
            .any(|o| ray_hits_polygon_interior(&leader, &o.polygon))
            || labels.iter().any(|(o, l)| *o != i && ray_hits_rect(&leader, l))
        // leader-vs-forced-leader needs no rule: parallel distinct lines
        // never meet, and collinear pairs are already degenerate-forced
    };

    loop {
        let mut changed = false;
        for i in 0..n {
            let lb = label_blocked(i, &blocking_labels, &blocking_leaders);
            let rb = leader_blocked(i, &blocking_labels);
            let is_int = report.forced_internal.contains(&i);
            let is_ext = report.forced_external.contains(&i);
            if lb && (rb || is_int) || rb && is_ext {
                return Err(Error::Infeasible(format!(
                    "point {i} admits neither an internal label nor a leader"
                )));
            }
            if lb && !is_ext {
                report.forced_external.insert(i);
                blocking_leaders.push((i, instance.leader(i)));
                changed = true;
            }
            if rb && !is_int {
                report.forced_internal.insert(i);
                blocking_labels.push((i, instance.label_rect(i)));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(report)
}

fn scale_polygon_x(verts: &[Point], inv_w: &Scalar) -> Vec<Point> {
    verts
        .iter()
        .map(|p| Point::new(&p.x * inv_w, p.y.clone()))
        .collect()
}

/// Scales the plane horizontally by `1/w`, turning `w`-by-1 labels into unit
/// squares; the map, the obstacles, and the leader direction are transformed
/// identically (a slope `(dx, dy)` becomes `(dx / w, dy)`).
pub fn scale_instance(instance: &Instance, w: &Scalar) -> Result<Instance> {
    if !w.is_positive() {
        return Err(Error::Domain("scale factor must be positive".into()));
    }
    if instance.label_w != *w {
        return Err(Error::Contract(format!(
            "instance labels have width {}, not {}",
            instance.label_w, w
        )));
    }
    if instance.label_h != Scalar::one() {
        return Err(Error::Unsupported(
            "horizontal scaling expects homothetic w-by-1 labels".into(),
        ));
    }
    let inv = w.recip();
    let points = instance
        .points
        .iter()
        .map(|p| Point::new(&p.x * &inv, p.y.clone()))
        .collect();
    let map = MapPolygon::new(scale_polygon_x(&instance.map.verts(), &inv))?;
    let obstacles = instance
        .obstacles
        .iter()
        .map(|o| Obstacle::new(scale_polygon_x(&o.polygon.verts, &inv)))
        .collect::<Result<Vec<_>>>()?;
    let dir = crate::geometry::Direction::new(
        instance.dir.dx() * &inv,
        instance.dir.dy().clone(),
    )?;
    Instance::new(points, Scalar::one(), Scalar::one(), dir, Some(map), obstacles)
}

/// Normalizes arbitrary `w`-by-`h` labels to unit squares by scaling each
/// axis. Returns the rescaled instance and whether anything changed.
pub fn normalize_to_unit_labels(instance: &Instance) -> Result<(Instance, bool)> {
    if instance.has_unit_labels() {
        return Ok((instance.clone(), false));
    }
    let inv_h = instance.label_h.recip();
    let scale_y = |p: &Point| Point::new(p.x.clone(), &p.y * &inv_h);
    let y_scaled = Instance::new(
        instance.points.iter().map(scale_y).collect(),
        instance.label_w.clone(),
        Scalar::one(),
        crate::geometry::Direction::new(
            instance.dir.dx().clone(),
            instance.dir.dy() * &inv_h,
        )?,
        Some(MapPolygon::new(
            instance.map.verts().iter().map(scale_y).collect(),
        )?),
        instance
            .obstacles
            .iter()
            .map(|o| Obstacle::new(o.polygon.verts.iter().map(scale_y).collect()))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let w = y_scaled.label_w.clone();
    let out = if w == Scalar::one() {
        y_scaled
    } else {
        scale_instance(&y_scaled, &w)?
    };
    Ok((out, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(
            Scalar::from_f64_exact(x).unwrap(),
            Scalar::from_f64_exact(y).unwrap(),
        )
    }

    #[test]
    fn covered_point_forces_external() {
        let inst = Instance::unit(vec![pt(0.0, 0.0), pt(0.5, 0.5)], Direction::from_ints(-1, 0))
            .unwrap();
        let rep = compute_forced(&inst).unwrap();
        assert_eq!(rep.p_x.iter().copied().collect::<Vec<_>>(), vec![0]);
        assert!(rep.forced_internal.is_empty());
    }

    #[test]
    fn leader_through_point_forces_internal() {
        let inst = Instance::unit(vec![pt(0.0, 0.0), pt(-1.0, 0.0)], Direction::from_ints(-1, 0))
            .unwrap();
        let rep = compute_forced(&inst).unwrap();
        assert_eq!(
            rep.forced_internal.iter().copied().collect::<Vec<_>>(),
            vec![0]
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&[pt(0.0, 0.0), pt(0.0, 0.25)]), 2);
        assert_eq!(delta(&[pt(0.0, 0.0)]), 1);
        assert_eq!(
            delta(&[pt(0.0, 0.0), pt(0.3, 0.0), pt(5.0, 5.0), pt(9.9, 2.2)]),
            4
        );
        // 1/d_min not an integer: ceil(1/0.15) = 7
        let pts: Vec<Point> = (0..20)
            .map(|i| Point::new(Scalar::ratio(3 * i, 20), Scalar::zero()))
            .collect();
        assert_eq!(delta(&pts), 7);
    }

    #[test]
    fn point_inside_obstacle_is_infeasible() {
        let obstacle = Obstacle::new(vec![pt(-1.0, -1.0), pt(1.0, -1.0), pt(1.0, 1.0), pt(-1.0, 1.0)])
            .unwrap();
        let inst = Instance::new(
            vec![pt(0.0, 0.0)],
            Scalar::one(),
            Scalar::one(),
            Direction::from_ints(-1, 0),
            None,
            vec![obstacle],
        )
        .unwrap();
        assert!(matches!(
            obstacle_fixpoint(&inst),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn blocked_leader_forces_internal() {
        let obstacle =
            Obstacle::new(vec![pt(-3.0, -0.5), pt(-2.0, -0.5), pt(-2.0, 0.5), pt(-3.0, 0.5)])
                .unwrap();
        let inst = Instance::new(
            vec![pt(0.0, 0.0)],
            Scalar::one(),
            Scalar::one(),
            Direction::from_ints(-1, 0),
            None,
            vec![obstacle],
        )
        .unwrap();
        let rep = obstacle_fixpoint(&inst).unwrap();
        assert!(rep.forced_internal.contains(&0));
        assert!(rep.forced_external.is_empty());
    }

    #[test]
    fn two_round_forcing_chain() {
        // The obstacle blocks only the leader of p, forcing p internal; the
        // label of p then blocks the label of q, forcing q external.
        let obstacle = Obstacle::new(vec![
            pt(-3.0, -0.2),
            pt(-2.0, -0.2),
            pt(-2.0, 0.2),
            pt(-3.0, 0.2),
        ])
        .unwrap();
        let p = pt(0.0, 0.0);
        let q = pt(0.8, -0.9); // label [0.8,1.8]x[-0.9,0.1] meets label(p) only
        let inst = Instance::new(
            vec![p, q, pt(6.0, 6.0)],
            Scalar::one(),
            Scalar::one(),
            Direction::from_ints(-1, 0),
            None,
            vec![obstacle],
        )
        .unwrap();
        let rep = obstacle_fixpoint(&inst).unwrap();
        assert!(rep.forced_internal.contains(&0));
        assert!(rep.forced_external.contains(&1));
        assert!(!rep.forced_internal.contains(&2) && !rep.forced_external.contains(&2));
    }

    #[test]
    fn scaling_examples() {
        let inst = Instance::new(
            vec![pt(4.0, 1.0), pt(0.0, 0.0)],
            Scalar::from_int(2),
            Scalar::one(),
            Direction::from_ints(-1, 0),
            None,
            vec![],
        )
        .unwrap();
        let scaled = scale_instance(&inst, &Scalar::from_int(2)).unwrap();
        assert_eq!(scaled.points[0], pt(2.0, 1.0));
        assert!(scaled.has_unit_labels());
        // identity at w = 1
        let same = scale_instance(&scaled, &Scalar::one()).unwrap();
        assert_eq!(same.points, scaled.points);
        // non-unit heights are refused by the horizontal scaling entry point
        let bad = Instance::new(
            vec![pt(0.0, 0.0)],
            Scalar::from_int(2),
            Scalar::from_int(3),
            Direction::from_ints(-1, 0),
            None,
            vec![],
        )
        .unwrap();
        assert!(matches!(
            scale_instance(&bad, &Scalar::from_int(2)),
            Err(Error::Unsupported(_))
        ));
        let (norm, scaled_flag) = normalize_to_unit_labels(&bad).unwrap();
        assert!(scaled_flag && norm.has_unit_labels());
    }
}

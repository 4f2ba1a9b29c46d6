//! The ground-truth validity checker and the feasibility counter psi.

use std::collections::BTreeSet;
use std::fmt;

use crate::geometry::polygon::{ray_hits_polygon_interior, rect_hits_polygon_interior};
use crate::geometry::{
    point_on_ray, ray_hits_rect, rays_conflict, LeaderRay, Rect,
};
use crate::instance::Instance;

/// Partition of the points into internally and externally labeled sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub internal: BTreeSet<usize>,
    pub external: BTreeSet<usize>,
}

impl Labeling {
    /// Builds the partition from the internal set; everything else external.
    pub fn from_internal(n: usize, internal: impl IntoIterator<Item = usize>) -> Self {
        let internal: BTreeSet<usize> = internal.into_iter().collect();
        assert!(internal.iter().all(|&i| i < n), "point index out of range");
        let external = (0..n).filter(|i| !internal.contains(i)).collect();
        Labeling { internal, external }
    }

    pub fn all_external(n: usize) -> Self {
        Labeling::from_internal(n, [])
    }

    pub fn is_partition(&self, n: usize) -> bool {
        self.internal.len() + self.external.len() == n
            && self.internal.is_disjoint(&self.external)
            && self.internal.union(&self.external).all(|&i| i < n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Two internal labels overlap.
    LabelLabel,
    /// Two leaders overlap (parallel leaders conflict iff collinear).
    LeaderLeader,
    /// An internal label is pierced by a leader.
    LabelLeader,
    /// An internal label covers another point (closed rectangle).
    LabelCoversPoint,
    /// A leader passes through another point.
    LeaderThroughPoint,
    /// An internal label overlaps an obstacle.
    LabelObstacle,
    /// A leader passes through an obstacle.
    LeaderObstacle,
}

/// First violating pair found, with its kind. For the obstacle kinds `b` is
/// the obstacle index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::LabelLabel => {
                write!(f, "labels of points {} and {} overlap", self.a, self.b)
            }
            ViolationKind::LeaderLeader => {
                write!(f, "leaders of points {} and {} overlap", self.a, self.b)
            }
            ViolationKind::LabelLeader => {
                write!(f, "label of point {} is pierced by the leader of point {}", self.a, self.b)
            }
            ViolationKind::LabelCoversPoint => {
                write!(f, "label of point {} covers point {}", self.a, self.b)
            }
            ViolationKind::LeaderThroughPoint => {
                write!(f, "leader of point {} passes through point {}", self.a, self.b)
            }
            ViolationKind::LabelObstacle => {
                write!(f, "label of point {} overlaps obstacle {}", self.a, self.b)
            }
            ViolationKind::LeaderObstacle => {
                write!(f, "leader of point {} passes through obstacle {}", self.a, self.b)
            }
        }
    }
}

/// Checks all validity rules; `None` means the labeling is valid.
///
/// Rules, in scan order: internal labels pairwise interior-disjoint; leaders
/// pairwise non-overlapping; no internal label pierced by a leader; no
/// internal label covering another point (closed); no leader through another
/// point; labels and leaders avoid obstacle interiors.
pub fn check_validity(instance: &Instance, labeling: &Labeling) -> Option<Violation> {
    assert!(
        labeling.is_partition(instance.n()),
        "labeling is not a partition of the instance points"
    );
    let internal: Vec<usize> = labeling.internal.iter().copied().collect();
    let external: Vec<usize> = labeling.external.iter().copied().collect();
    let labels: Vec<Rect> = internal.iter().map(|&i| instance.label_rect(i)).collect();
    let leaders: Vec<LeaderRay> = external.iter().map(|&e| instance.leader(e)).collect();

    for (ai, &a) in internal.iter().enumerate() {
        for (bi, &b) in internal.iter().enumerate().skip(ai + 1) {
            if crate::geometry::rects_overlap(&labels[ai], &labels[bi]) {
                return Some(Violation { kind: ViolationKind::LabelLabel, a, b });
            }
        }
    }
    for (ai, &a) in external.iter().enumerate() {
        for (bi, &b) in external.iter().enumerate().skip(ai + 1) {
            if rays_conflict(&leaders[ai], &leaders[bi]).expect("same instance direction") {
                return Some(Violation { kind: ViolationKind::LeaderLeader, a, b });
            }
        }
    }
    for (ai, &a) in internal.iter().enumerate() {
        for (ei, &e) in external.iter().enumerate() {
            if ray_hits_rect(&leaders[ei], &labels[ai]) {
                return Some(Violation { kind: ViolationKind::LabelLeader, a, b: e });
            }
        }
    }
    for (ai, &a) in internal.iter().enumerate() {
        for b in 0..instance.n() {
            if b != a && labels[ai].contains_closed(&instance.points[b]) {
                return Some(Violation { kind: ViolationKind::LabelCoversPoint, a, b });
            }
        }
    }
    for (ei, &e) in external.iter().enumerate() {
        for b in 0..instance.n() {
            if b != e && point_on_ray(&leaders[ei], &instance.points[b]) {
                return Some(Violation { kind: ViolationKind::LeaderThroughPoint, a: e, b });
            }
        }
    }
    for (k, obs) in instance.obstacles.iter().enumerate() {
        for (ai, &a) in internal.iter().enumerate() {
            if rect_hits_polygon_interior(&labels[ai], &obs.polygon) {
                return Some(Violation { kind: ViolationKind::LabelObstacle, a, b: k });
            }
        }
        for (ei, &e) in external.iter().enumerate() {
            if ray_hits_polygon_interior(&leaders[ei], &obs.polygon) {
                return Some(Violation { kind: ViolationKind::LeaderObstacle, a: e, b: k });
            }
        }
    }
    None
}

pub fn is_valid(instance: &Instance, labeling: &Labeling) -> bool {
    check_validity(instance, labeling).is_none()
}

/// Result of the feasibility counter: a count, or an absorbing sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Psi {
    Count(usize),
    NegInf,
}

impl Psi {
    pub fn is_neg_inf(self) -> bool {
        matches!(self, Psi::NegInf)
    }
}

/// Fixed context a psi evaluation is checked against: labels that are
/// already placed (slab complement, configuration internals) and leaders
/// that are already committed (anchors, forced externals, configuration
/// externals and region leftovers). Dummy anchors enter as raw geometry.
#[derive(Debug, Clone, Default)]
pub struct PsiContext {
    pub labels: Vec<Rect>,
    pub leaders: Vec<LeaderRay>,
}

/// `|P|` if the labels of `P` together with the context labels are pairwise
/// interior-disjoint and none of them is pierced by a context leader,
/// otherwise the absorbing `NegInf`.
pub fn psi(instance: &Instance, p: &[usize], ctx: &PsiContext) -> Psi {
    let mut labels: Vec<Rect> = p.iter().map(|&i| instance.label_rect(i)).collect();
    labels.extend(ctx.labels.iter().cloned());
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if crate::geometry::rects_overlap(&labels[i], &labels[j]) {
                return Psi::NegInf;
            }
        }
    }
    for label in &labels {
        for leader in &ctx.leaders {
            if ray_hits_rect(leader, label) {
                return Psi::NegInf;
            }
        }
    }
    Psi::Count(p.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Direction, Point, Scalar};

    fn unit_instance(coords: &[(f64, f64)], dir: Direction) -> Instance {
        let pts = coords
            .iter()
            .map(|&(x, y)| {
                Point::new(
                    Scalar::from_f64_exact(x).unwrap(),
                    Scalar::from_f64_exact(y).unwrap(),
                )
            })
            .collect();
        Instance::unit(pts, dir).unwrap()
    }

    #[test]
    fn valid_disjoint_pair() {
        let inst = unit_instance(&[(0.0, 0.0), (3.0, 0.0)], Direction::from_ints(-1, 0));
        let lab = Labeling::from_internal(2, [0, 1]);
        assert!(is_valid(&inst, &lab));
    }

    #[test]
    fn overlapping_labels_invalid() {
        let inst = unit_instance(&[(0.0, 0.0), (0.5, 0.25)], Direction::from_ints(-1, 0));
        let lab = Labeling::from_internal(2, [0, 1]);
        let v = check_validity(&inst, &lab).unwrap();
        assert_eq!(v.kind, ViolationKind::LabelLabel);
    }

    #[test]
    fn leader_misses_label() {
        // (0,0) external with leader y = 0; (-2, 0.5) internal with label
        // [-2,-1] x [0.5,1.5]: the leader passes below the label.
        let inst = unit_instance(&[(0.0, 0.0), (-2.0, 0.5)], Direction::from_ints(-1, 0));
        let lab = Labeling::from_internal(2, [1]);
        assert!(is_valid(&inst, &lab));
    }

    #[test]
    fn covered_point_blocks_internal() {
        let inst = unit_instance(&[(0.0, 0.0), (0.5, 0.5)], Direction::from_ints(-1, 0));
        let lab = Labeling::from_internal(2, [0, 1]);
        let v = check_validity(&inst, &lab).unwrap();
        assert_eq!(v.kind, ViolationKind::LabelLabel);
        // the cover rule fires even when labels stay disjoint
        let inst2 = unit_instance(&[(0.0, 0.0), (0.5, 1.0)], Direction::from_ints(-1, 0));
        let lab2 = Labeling::from_internal(2, [0, 1]);
        let v2 = check_validity(&inst2, &lab2).unwrap();
        assert_eq!(v2.kind, ViolationKind::LabelCoversPoint);
    }

    #[test]
    fn all_external_is_valid_generic() {
        let inst = unit_instance(
            &[(0.0, 0.0), (0.3, 1.7), (2.0, 0.9), (1.1, 2.4)],
            Direction::from_ints(-1, 0),
        );
        assert!(is_valid(&inst, &Labeling::all_external(4)));
    }

    #[test]
    fn psi_examples() {
        let inst = unit_instance(&[(0.0, 0.0), (3.0, 0.0)], Direction::from_ints(-1, 0));
        assert_eq!(psi(&inst, &[0, 1], &PsiContext::default()), Psi::Count(2));

        let ctx = PsiContext {
            labels: vec![],
            leaders: vec![LeaderRay::new(
                Point::new(Scalar::from_int(2), Scalar::ratio(1, 2)),
                Direction::from_ints(-1, 0),
            )],
        };
        assert_eq!(psi(&inst, &[0], &ctx), Psi::NegInf);
        assert_eq!(psi(&inst, &[], &ctx), Psi::Count(0));
    }

    #[test]
    fn psi_monotone_in_context_leaders() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::default();
        let strat = proptest::collection::vec((-20i64..20, -20i64..20), 1..6);
        runner
            .run(&(strat, -20i64..20, -20i64..20), |(coords, ox, oy)| {
                let mut pts: Vec<Point> = Vec::new();
                for (x, y) in coords {
                    let p = Point::new(Scalar::ratio(x, 3), Scalar::ratio(y, 3));
                    if !pts.contains(&p) {
                        pts.push(p);
                    }
                }
                let n = pts.len();
                let inst = Instance::unit(pts, Direction::from_ints(-1, 0)).unwrap();
                let ids: Vec<usize> = (0..n).collect();
                let base = PsiContext::default();
                let mut bigger = PsiContext::default();
                bigger.leaders.push(LeaderRay::new(
                    Point::new(Scalar::ratio(ox, 3), Scalar::ratio(oy, 3)),
                    Direction::from_ints(-1, 0),
                ));
                let a = psi(&inst, &ids, &base);
                let b = psi(&inst, &ids, &bigger);
                // adding a context leader never increases psi
                prop_assert!(!(a.is_neg_inf() && !b.is_neg_inf()));
                Ok(())
            })
            .unwrap();
    }
}

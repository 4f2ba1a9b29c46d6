//! The rotated coordinate frame, slab membership, and the influence regions
//! with their per-orientation size exponents.
//!
//! The frame maps the leader travel direction to "frame-left": `fx` strictly
//! decreases along a leader, `fy` is constant along it, and at direction
//! `(-1, 0)` the frame is the world identity. Frame functionals are scaled by
//! the direction's length; only comparisons of them are ever used.
//!
//! Region membership is decided semantically: `q` lies in a region of an
//! anchor iff a witness label position exists that is placeable in some
//! subproblem of the anchor and interacts with `q` the way the region kind
//! demands. These are small exact linear-feasibility questions, so the
//! per-orientation case geometry of the region tables serves as a test oracle
//! instead of trusted code.

use crate::geometry::{
    feasible, ray_hit_halfplanes, ray_hits_rect, Direction, LeaderRay, LinCon, Point, Rect, Scalar,
};
use crate::{Error, Result};

/// The rotated frame for a leader direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    dir: Direction,
}

impl Frame {
    pub fn new(dir: Direction) -> Self {
        Frame { dir }
    }

    pub fn dir(&self) -> &Direction {
        &self.dir
    }

    /// Frame abscissa, strictly decreasing along the leader direction.
    pub fn fx(&self, p: &Point) -> Scalar {
        -(&p.x * self.dir.dx() + &p.y * self.dir.dy())
    }

    /// Frame ordinate, constant along the leader direction.
    pub fn fy(&self, p: &Point) -> Scalar {
        &p.x * self.dir.dy() - &p.y * self.dir.dx()
    }

    pub fn leader(&self, origin: Point) -> LeaderRay {
        LeaderRay::new(origin, self.dir.clone())
    }

    /// World point with the given frame coordinates (inverse of `fx`/`fy`,
    /// up to the direction-length scaling those use).
    pub fn from_frame_coords(&self, fx: &Scalar, fy: &Scalar) -> Point {
        let (dx, dy) = (self.dir.dx(), self.dir.dy());
        let n2 = dx * dx + dy * dy;
        Point::new(
            &(&(-fx * dx) + &(fy * dy)) / &n2,
            &(&(-fx * dy) - &(fy * dx)) / &n2,
        )
    }

    pub fn theta_class(&self) -> ThetaClass {
        ThetaClass::of(&self.dir)
    }
}

/// Which of the sixteen orientation classes a direction belongs to: the
/// boundary multiples of pi/4, or the open intervals between them.
/// `octant` counts quarter-pi steps clockwise from the negative x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaClass {
    pub octant: u8,
    pub exact: bool,
}

const OCTANT_DIRS: [(i64, i64); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

impl ThetaClass {
    pub fn of(dir: &Direction) -> ThetaClass {
        use std::cmp::Ordering;
        let bounds: Vec<Direction> = OCTANT_DIRS
            .iter()
            .map(|&(x, y)| Direction::from_ints(x, y))
            .collect();
        for (k, b) in bounds.iter().enumerate() {
            if dir.circular_cmp(b) == Ordering::Equal {
                return ThetaClass {
                    octant: k as u8,
                    exact: true,
                };
            }
        }
        for k in 0..8 {
            let after_k = dir.circular_cmp(&bounds[k]) == Ordering::Greater;
            let before_next = k == 7 || dir.circular_cmp(&bounds[k + 1]) == Ordering::Less;
            if after_k && before_next {
                return ThetaClass {
                    octant: k as u8,
                    exact: false,
                };
            }
        }
        unreachable!("direction escapes the circular order");
    }
}

/// Per-orientation upper bounds on the influence-region extents and on the
/// number of externally-relevant points, as read from the orientation tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationExponents {
    pub e: u8,
    pub f: u8,
    pub e_prime: u8,
    pub f_prime: u8,
    pub e_star: u8,
    pub f_star: u8,
}

/// The table values for the orientation class of the frame.
pub fn exponents_for(frame: &Frame) -> OrientationExponents {
    let c = frame.theta_class();
    let k = c.octant as usize;
    let e = if c.exact {
        [1, 1, 0, 0, 0, 0, 0, 2][k]
    } else {
        [2, 1, 1, 0, 0, 1, 3, 2][k]
    };
    let f = if c.exact {
        [0, 0, 0, 0, 0, 1, 1, 2][k]
    } else {
        [1, 0, 0, 1, 1, 2, 2, 3][k]
    };
    // the leader of a lower point can pierce a subproblem label only on
    // (5pi/4, 3pi/2) and (3pi/2, 2pi)
    let e_prime = u8::from(matches!((k, c.exact), (5, false) | (6, false) | (7, _)));
    // upper-bound case list: (0, pi/4) and (3pi/4, 2pi)
    let f_prime = u8::from(matches!(
        (k, c.exact),
        (0, false) | (3, false) | (4, _) | (5, _) | (6, _) | (7, _)
    ));
    OrientationExponents {
        e,
        f,
        e_prime,
        f_prime,
        e_star: e.min(1),
        f_star: f.min(1),
    }
}

/// Classification of a point against the slab of two anchor points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlabClass {
    /// Strictly between the anchors' frame ordinates and frame-left of both.
    InS,
    /// In the closed slab but not frame-left of both anchors.
    InClosedSlabRightOfBoth,
    Outside,
}

/// The slab between a lower anchor `ell` and an upper anchor `u`.
#[derive(Debug, Clone)]
pub struct SlabQuery {
    pub ell: Point,
    pub u: Point,
    pub frame: Frame,
}

impl SlabQuery {
    pub fn new(ell: Point, u: Point, frame: Frame) -> Result<Self> {
        if frame.fy(&ell) >= frame.fy(&u) {
            return Err(Error::Contract(
                "slab anchors must satisfy fy(ell) < fy(u)".into(),
            ));
        }
        Ok(SlabQuery { ell, u, frame })
    }
}

pub fn in_slab(p: &Point, q: &SlabQuery) -> SlabClass {
    let fy = q.frame.fy(p);
    let (lo, hi) = (q.frame.fy(&q.ell), q.frame.fy(&q.u));
    let fx = q.frame.fx(p);
    if fy > lo && fy < hi && fx < q.frame.fx(&q.ell) && fx < q.frame.fx(&q.u) {
        SlabClass::InS
    } else if fy >= lo && fy <= hi {
        SlabClass::InClosedSlabRightOfBoth
    } else {
        SlabClass::Outside
    }
}

/// The six influence-region kinds around a slab anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// E: below the slab, label can meet a subproblem label.
    BottomLabel,
    /// E': below the slab, leader can meet a subproblem label.
    BottomLeader,
    /// E'' = E' \ E.
    BottomLeaderOnly,
    /// F: above the slab, label can meet a subproblem label.
    TopLabel,
    /// F': above the slab, leader can meet a subproblem label.
    TopLeader,
    /// F'' = F' \ F.
    TopLeaderOnly,
}

impl RegionKind {
    pub fn is_bottom(self) -> bool {
        matches!(
            self,
            RegionKind::BottomLabel | RegionKind::BottomLeader | RegionKind::BottomLeaderOnly
        )
    }
}

/// What the witness label must do to the query point.
enum WitnessLink {
    LabelOverlap,
    LeaderHit,
}

/// Feasibility of a witness label anchor `x` with:
///  * `x` strictly on the subproblem side of the anchor's frame line and
///    strictly frame-left of the anchor,
///  * the unit label at `x` missed by the anchor's leader,
///  * the unit label at `x` overlapping the unit label at `q`
///    (or, for leader kinds, hit by the leader of `q`).
fn witness_exists(q: &Point, anchor: &Point, frame: &Frame, bottom: bool, link: WitnessLink) -> bool {
    let one = Scalar::one();
    let (dx, dy) = (frame.dir().dx(), frame.dir().dy());
    let mut common: Vec<LinCon> = Vec::with_capacity(10);
    // fy(x) > fy(anchor) for bottom kinds, fy(x) < fy(anchor) for top kinds
    let fya = frame.fy(anchor);
    if bottom {
        common.push(LinCon::new(-dy, dx.clone(), -fya, true));
    } else {
        common.push(LinCon::new(dy.clone(), -dx, fya, true));
    }
    // fx(x) < fx(anchor)
    common.push(LinCon::new(-dx, -dy, frame.fx(anchor), true));
    match link {
        WitnessLink::LabelOverlap => {
            // |x - q| < 1 componentwise
            common.push(LinCon::new(Scalar::one(), Scalar::zero(), &q.x + &one, true));
            common.push(LinCon::new(-Scalar::one(), Scalar::zero(), &one - &q.x, true));
            common.push(LinCon::new(Scalar::zero(), Scalar::one(), &q.y + &one, true));
            common.push(LinCon::new(Scalar::zero(), -Scalar::one(), &one - &q.y, true));
        }
        WitnessLink::LeaderHit => {
            for (n, s) in ray_hit_halfplanes(frame.dir(), &one, &one) {
                let rhs = &s + &(&q.x * &n.x + &q.y * &n.y);
                common.push(LinCon::new(n.x, n.y, rhs, true));
            }
        }
    }
    // branch over the ways the witness label can avoid the anchor's leader
    for (n, s) in ray_hit_halfplanes(frame.dir(), &one, &one) {
        let rhs = &s + &(&anchor.x * &n.x + &anchor.y * &n.y);
        let mut sys = common.clone();
        sys.push(LinCon::new(-n.x, -n.y, -rhs, false));
        if feasible(&sys) {
            return true;
        }
    }
    false
}

/// Membership of `q` in the influence region of `anchor` (unit labels).
pub fn in_influence_region(q: &Point, anchor: &Point, kind: RegionKind, frame: &Frame) -> bool {
    let bottom = kind.is_bottom();
    let (fq, fa) = (frame.fy(q), frame.fy(anchor));
    if bottom && fq >= fa || !bottom && fq <= fa {
        return false;
    }
    let label_side = |q: &Point| {
        // the query's own label must be missed by the anchor's leader
        !ray_hits_rect(&frame.leader(anchor.clone()), &Rect::unit(q.clone()))
            && witness_exists(q, anchor, frame, bottom, WitnessLink::LabelOverlap)
    };
    let leader_side = |q: &Point| witness_exists(q, anchor, frame, bottom, WitnessLink::LeaderHit);
    match kind {
        RegionKind::BottomLabel | RegionKind::TopLabel => label_side(q),
        RegionKind::BottomLeader | RegionKind::TopLeader => leader_side(q),
        RegionKind::BottomLeaderOnly | RegionKind::TopLeaderOnly => {
            leader_side(q) && !label_side(q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::direction_from_theta;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(
            Scalar::from_f64_exact(x).unwrap(),
            Scalar::from_f64_exact(y).unwrap(),
        )
    }

    #[test]
    fn identity_frame_at_theta_zero() {
        let f = Frame::new(Direction::from_ints(-1, 0));
        let p = pt(3.25, -1.5);
        assert_eq!(f.fx(&p), p.x);
        assert_eq!(f.fy(&p), p.y);
        let back = f.from_frame_coords(&f.fx(&p), &f.fy(&p));
        assert_eq!(back, p);
    }

    #[test]
    fn fx_decreases_along_leader() {
        for t in [0.0, 0.7, 2.0, 3.9, 5.5] {
            let d = direction_from_theta(t).unwrap();
            let f = Frame::new(d.clone());
            let p = pt(1.0, 2.0);
            let q = Point::new(&p.x + d.dx(), &p.y + d.dy());
            assert!(f.fx(&q) < f.fx(&p), "theta={t}");
            assert_eq!(f.fy(&q), f.fy(&p));
        }
    }

    #[test]
    fn slab_classification() {
        let f = Frame::new(Direction::from_ints(-1, 0));
        let q = SlabQuery::new(pt(0.0, 0.0), pt(0.0, 2.0), f).unwrap();
        assert_eq!(in_slab(&pt(-1.0, 1.0), &q), SlabClass::InS);
        assert_eq!(in_slab(&pt(5.0, 1.0), &q), SlabClass::InClosedSlabRightOfBoth);
        assert_eq!(in_slab(&pt(0.0, 3.0), &q), SlabClass::Outside);
        assert!(SlabQuery::new(
            pt(0.0, 2.0),
            pt(0.0, 0.0),
            Frame::new(Direction::from_ints(-1, 0))
        )
        .is_err());
    }

    #[test]
    fn theta_class_boundaries_and_intervals() {
        let c = ThetaClass::of(&Direction::from_ints(-1, 0));
        assert_eq!((c.octant, c.exact), (0, true));
        let c = ThetaClass::of(&Direction::from_ints(0, -1));
        assert_eq!((c.octant, c.exact), (6, true));
        let c = ThetaClass::of(&direction_from_theta(1.6 * std::f64::consts::PI).unwrap());
        assert_eq!((c.octant, c.exact), (6, false));
        let c = ThetaClass::of(&direction_from_theta(0.1).unwrap());
        assert_eq!((c.octant, c.exact), (0, false));
    }

    #[test]
    fn exponent_examples() {
        let exps = exponents_for(&Frame::new(Direction::from_ints(-1, 0)));
        assert_eq!(
            exps,
            OrientationExponents { e: 1, f: 0, e_prime: 0, f_prime: 0, e_star: 1, f_star: 0 }
        );
        let d = direction_from_theta(1.6 * std::f64::consts::PI).unwrap();
        let exps = exponents_for(&Frame::new(d));
        assert_eq!(
            exps,
            OrientationExponents { e: 3, f: 2, e_prime: 1, f_prime: 1, e_star: 1, f_star: 1 }
        );
        let exps = exponents_for(&Frame::new(Direction::from_ints(0, 1)));
        assert_eq!((exps.e, exps.f), (0, 0));
    }

    #[test]
    fn region_e_at_theta_zero_is_unit_square() {
        let f = Frame::new(Direction::from_ints(-1, 0));
        let ell = pt(0.0, 1.0);
        // inside the open unit square with top-left corner ell
        assert!(in_influence_region(&pt(0.5, 0.5), &ell, RegionKind::BottomLabel, &f));
        assert!(!in_influence_region(&pt(1.5, 0.5), &ell, RegionKind::BottomLabel, &f));
        assert!(!in_influence_region(&pt(0.5, 1.5), &ell, RegionKind::BottomLabel, &f));
        // boundary is out
        assert!(!in_influence_region(&pt(1.0, 0.5), &ell, RegionKind::BottomLabel, &f));
        // E' is empty at theta = 0
        assert!(!in_influence_region(&pt(0.5, 0.5), &ell, RegionKind::BottomLeader, &f));
    }

    #[test]
    fn region_e_empty_for_rightward_leaders() {
        let f = Frame::new(Direction::from_ints(1, 0));
        let ell = pt(0.0, 0.0);
        for ix in -30..30 {
            for iy in -30..0 {
                let q = Point::new(Scalar::ratio(ix, 10), Scalar::ratio(iy, 10));
                assert!(!in_influence_region(&q, &ell, RegionKind::BottomLabel, &f));
            }
        }
    }

    #[test]
    fn mirror_symmetry_f_equals_swapped_e() {
        // F under d equals E under swap(d) with swapped coordinates.
        for t in [0.3, 1.2, 2.1, 3.0, 4.2, 5.0, 5.8] {
            let d = direction_from_theta(t).unwrap();
            let swapped = Direction::new(d.dy().clone(), d.dx().clone()).unwrap();
            let f = Frame::new(d);
            let fm = Frame::new(swapped);
            let anchor = pt(0.0, 0.0);
            for ix in -12..12 {
                for iy in -12..12 {
                    let q = Point::new(Scalar::ratio(ix, 4), Scalar::ratio(iy, 4));
                    let qs = Point::new(q.y.clone(), q.x.clone());
                    assert_eq!(
                        in_influence_region(&q, &anchor, RegionKind::TopLabel, &f),
                        in_influence_region(&qs, &anchor, RegionKind::BottomLabel, &fm),
                        "t={t} q=({ix}/4,{iy}/4)"
                    );
                    assert_eq!(
                        in_influence_region(&q, &anchor, RegionKind::TopLeader, &f),
                        in_influence_region(&qs, &anchor, RegionKind::BottomLeader, &fm),
                        "t={t} q=({ix}/4,{iy}/4) leader"
                    );
                }
            }
        }
    }
}

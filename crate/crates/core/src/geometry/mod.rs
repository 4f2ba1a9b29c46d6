//! Exact coordinates, axis-aligned rectangles, parallel leader rays, and the
//! intersection predicates every other module uses.
//!
//! Overlap and hit predicates are decided on *open* interiors: shared
//! boundary segments or corners do not count. All arithmetic is rational, so
//! predicates are deterministic and independent of evaluation order.

mod feasible;
pub mod polygon;
mod scalar;

pub use feasible::{feasible, LinCon};
pub use polygon::SimplePolygon;
pub use scalar::Scalar;

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::Integer;
use num::{One, Zero};

use crate::{Error, Result};

/// A point in world coordinates (label-height units).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }
}

/// An exact direction vector, stored as a primitive integer vector
/// (denominators cleared, divided by the gcd, orientation preserved).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: Scalar,
    dy: Scalar,
}

impl Direction {
    /// Canonicalizes an arbitrary nonzero rational vector.
    pub fn new(dx: Scalar, dy: Scalar) -> Result<Self> {
        if dx.is_zero() && dy.is_zero() {
            return Err(Error::Domain("zero direction vector".into()));
        }
        // Clear denominators.
        let mut nx = dx.numer() * dy.denom();
        let mut ny = dy.numer() * dx.denom();
        let g = nx.gcd(&ny);
        if !g.is_zero() && !g.is_one() {
            nx /= &g;
            ny /= &g;
        }
        Ok(Direction {
            dx: Scalar::from_bigints(nx, BigInt::one()),
            dy: Scalar::from_bigints(ny, BigInt::one()),
        })
    }

    pub fn from_ints(dx: i64, dy: i64) -> Self {
        Direction::new(Scalar::from_int(dx), Scalar::from_int(dy)).expect("nonzero")
    }

    pub fn dx(&self) -> &Scalar {
        &self.dx
    }

    pub fn dy(&self) -> &Scalar {
        &self.dy
    }

    /// The radian slope under the convention `d(theta) = (-cos theta, sin theta)`,
    /// normalized to `[0, 2*pi)`. Lossy; for reporting only.
    pub fn theta(&self) -> f64 {
        let t = f64::atan2(self.dy.to_f64(), -self.dx.to_f64());
        if t < 0.0 {
            t + std::f64::consts::TAU
        } else {
            t
        }
    }

    /// Exact mediant `self + other`, canonicalized. For two directions less
    /// than a half-turn apart this lies strictly between them.
    pub fn mediant(&self, other: &Direction) -> Result<Direction> {
        Direction::new(&self.dx + &other.dx, &self.dy + &other.dy)
    }

    /// Total circular order by slope angle (clockwise from the negative
    /// x-axis), starting at `(-1, 0)`.
    pub fn circular_cmp(&self, other: &Direction) -> Ordering {
        // theta is the standard CCW angle of v = (-dx, dy).
        fn half(d: &Direction) -> u8 {
            let vx_pos = d.dx.is_negative(); // v.x = -dx
            let vy = &d.dy;
            if vy.is_positive() || (vy.is_zero() && vx_pos) {
                0
            } else {
                1
            }
        }
        let (ha, hb) = (half(self), half(other));
        if ha != hb {
            return ha.cmp(&hb);
        }
        // cross(v_a, v_b) = (-a.dx)(b.dy) - (a.dy)(-b.dx)
        let cross = &self.dy * &other.dx - &self.dx * &other.dy;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

/// Axis-aligned rectangle anchored at its lower-left corner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub anchor: Point,
    pub w: Scalar,
    pub h: Scalar,
}

impl Rect {
    pub fn new(anchor: Point, w: Scalar, h: Scalar) -> Self {
        assert!(w.is_positive() && h.is_positive(), "degenerate rectangle");
        Rect { anchor, w, h }
    }

    pub fn unit(anchor: Point) -> Self {
        Rect::new(anchor, Scalar::one(), Scalar::one())
    }

    pub fn x1(&self) -> Scalar {
        &self.anchor.x + &self.w
    }

    pub fn y1(&self) -> Scalar {
        &self.anchor.y + &self.h
    }

    /// Closed containment: points on the boundary count.
    pub fn contains_closed(&self, p: &Point) -> bool {
        p.x >= self.anchor.x && p.x <= self.x1() && p.y >= self.anchor.y && p.y <= self.y1()
    }

    /// Strict containment in the open interior.
    pub fn contains_open(&self, p: &Point) -> bool {
        p.x > self.anchor.x && p.x < self.x1() && p.y > self.anchor.y && p.y < self.y1()
    }

    pub fn corners(&self) -> [Point; 4] {
        let (x1, y1) = (self.x1(), self.y1());
        [
            self.anchor.clone(),
            Point::new(x1.clone(), self.anchor.y.clone()),
            Point::new(self.anchor.x.clone(), y1.clone()),
            Point::new(x1, y1),
        ]
    }
}

/// A leader as a half-line: origin at the feature point, travelling in the
/// shared instance direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeaderRay {
    pub origin: Point,
    pub dir: Direction,
}

impl LeaderRay {
    pub fn new(origin: Point, dir: Direction) -> Self {
        LeaderRay { origin, dir }
    }
}

/// Leader travel direction for a slope `theta` measured clockwise from the
/// negative x-axis: `d(theta) = (-cos theta, sin theta)`.
///
/// Axis slopes map exactly; any other slope is converted through `f64`
/// cos/sin, whose exact dyadic reading keeps the relative error below 1e-12.
pub fn direction_from_theta(theta: f64) -> Result<Direction> {
    use std::f64::consts::{FRAC_PI_2, TAU};
    if !(0.0..TAU).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta {theta} outside [0, 2*pi)"
        )));
    }
    let k = (theta / FRAC_PI_2).round();
    if (theta - k * FRAC_PI_2).abs() <= 1e-12 * theta.max(1.0) {
        let axis = match k as i64 {
            0 | 4 => (-1, 0),
            1 => (0, 1),
            2 => (1, 0),
            3 => (0, -1),
            _ => unreachable!(),
        };
        return Ok(Direction::from_ints(axis.0, axis.1));
    }
    Direction::new(
        Scalar::from_f64_exact(-theta.cos())?,
        Scalar::from_f64_exact(theta.sin())?,
    )
}

/// True iff the open interiors of the two rectangles intersect.
pub fn rects_overlap(a: &Rect, b: &Rect) -> bool {
    a.anchor.x < b.x1() && b.anchor.x < a.x1() && a.anchor.y < b.y1() && b.anchor.y < a.y1()
}

/// Half-plane description of the anchor positions `x` for which a `w`-by-`h`
/// open rectangle anchored at `x` meets the ray from `origin` along `d`:
/// the Minkowski sum of the ray with the reflected open rectangle. Each entry
/// is `(n, s)` meaning `<x - origin, n> < s`.
pub(crate) fn ray_hit_halfplanes(d: &Direction, w: &Scalar, h: &Scalar) -> Vec<(Point, Scalar)> {
    let zero = Scalar::zero;
    let (dx, dy) = (d.dx(), d.dy());
    let mut out = Vec::with_capacity(6);
    if !dx.is_positive() {
        out.push((Point::new(Scalar::one(), zero()), zero()));
    }
    if !dx.is_negative() {
        out.push((Point::new(-Scalar::one(), zero()), w.clone()));
    }
    if !dy.is_positive() {
        out.push((Point::new(zero(), Scalar::one()), zero()));
    }
    if !dy.is_negative() {
        out.push((Point::new(zero(), -Scalar::one()), h.clone()));
    }
    // Side facets parallel to d: support over the corners of [-w,0]x[-h,0].
    let support = |nx: &Scalar, ny: &Scalar| -> Scalar {
        let c1 = zero();
        let c2 = -(w * nx);
        let c3 = -(h * ny);
        let c4 = &c2 + &c3;
        c1.max(c2).max(c3).max(c4)
    };
    let n1 = Point::new(-dy, dx.clone());
    let s1 = support(&n1.x, &n1.y);
    out.push((n1, s1));
    let n2 = Point::new(dy.clone(), -dx);
    let s2 = support(&n2.x, &n2.y);
    out.push((n2, s2));
    out
}

/// True iff the ray intersects the open interior of the rectangle. Grazing
/// an edge or corner is not a hit; an origin inside the interior is.
pub fn ray_hits_rect(r: &LeaderRay, t: &Rect) -> bool {
    ray_hit_halfplanes(&r.dir, &t.w, &t.h)
        .iter()
        .all(|(n, s)| {
            let lhs = &(&t.anchor.x - &r.origin.x) * &n.x + &(&t.anchor.y - &r.origin.y) * &n.y;
            lhs < *s
        })
}

/// True iff two parallel same-direction leader rays overlap, i.e. their
/// origins are collinear along the direction.
pub fn rays_conflict(a: &LeaderRay, b: &LeaderRay) -> Result<bool> {
    if a.dir != b.dir {
        return Err(Error::Contract(
            "rays_conflict requires equal directions".into(),
        ));
    }
    let cross = &(&b.origin.x - &a.origin.x) * a.dir.dy() - &(&b.origin.y - &a.origin.y) * a.dir.dx();
    Ok(cross.is_zero())
}

/// True iff `q` lies on the (closed) ray.
pub fn point_on_ray(r: &LeaderRay, q: &Point) -> bool {
    let vx = &q.x - &r.origin.x;
    let vy = &q.y - &r.origin.y;
    let cross = &vx * r.dir.dy() - &vy * r.dir.dx();
    if !cross.is_zero() {
        return false;
    }
    let dot = &vx * r.dir.dx() + &vy * r.dir.dy();
    !dot.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(
            Scalar::from_f64_exact(x).unwrap(),
            Scalar::from_f64_exact(y).unwrap(),
        )
    }

    #[test]
    fn theta_axis_cases() {
        assert_eq!(direction_from_theta(0.0).unwrap(), Direction::from_ints(-1, 0));
        assert_eq!(direction_from_theta(PI).unwrap(), Direction::from_ints(1, 0));
        assert_eq!(
            direction_from_theta(FRAC_PI_2).unwrap(),
            Direction::from_ints(0, 1)
        );
        assert_eq!(
            direction_from_theta(3.0 * FRAC_PI_2).unwrap(),
            Direction::from_ints(0, -1)
        );
        assert!(direction_from_theta(-0.1).is_err());
        assert!(direction_from_theta(7.0).is_err());
    }

    #[test]
    fn theta_general_error_bound() {
        for &t in &[0.3, 1.1, 2.7, 4.0, 5.9] {
            let d = direction_from_theta(t).unwrap();
            let (ex, ey) = (-t.cos(), t.sin());
            // compare normalized cross product against 1e-12
            let (dx, dy) = (d.dx().to_f64(), d.dy().to_f64());
            let norm = (dx * dx + dy * dy).sqrt();
            let cross = (dx / norm * ey - dy / norm * ex).abs();
            assert!(cross < 1e-12, "theta {t} error {cross}");
        }
    }

    #[test]
    fn overlap_examples() {
        let unit = Rect::unit(pt(0.0, 0.0));
        assert!(!rects_overlap(&unit, &Rect::unit(pt(2.0, 0.0))));
        assert!(rects_overlap(&unit, &Rect::unit(pt(0.5, 0.5))));
        assert!(!rects_overlap(&unit, &Rect::unit(pt(1.0, 0.0))));
    }

    #[test]
    fn ray_hit_examples() {
        let left = Direction::from_ints(-1, 0);
        let unit = Rect::unit(pt(0.0, 0.0));
        assert!(ray_hits_rect(&LeaderRay::new(pt(2.0, 0.5), left.clone()), &unit));
        assert!(!ray_hits_rect(&LeaderRay::new(pt(2.0, 0.0), left.clone()), &unit));
        assert!(!ray_hits_rect(&LeaderRay::new(pt(2.0, 2.0), left.clone()), &unit));
        // origin inside counts
        assert!(ray_hits_rect(&LeaderRay::new(pt(0.5, 0.5), left.clone()), &unit));
        // rectangle behind the ray does not
        assert!(!ray_hits_rect(&LeaderRay::new(pt(-1.0, 0.5), left), &unit));
    }

    #[test]
    fn diagonal_ray_hits() {
        let d = Direction::from_ints(-1, -1);
        let unit = Rect::unit(pt(-3.0, -3.0));
        assert!(ray_hits_rect(&LeaderRay::new(pt(0.0, 0.0), d.clone()), &unit));
        let off = Rect::unit(pt(-3.0, 0.5));
        assert!(!ray_hits_rect(&LeaderRay::new(pt(0.0, 0.0), d), &off));
    }

    #[test]
    fn rays_conflict_examples() {
        let left = Direction::from_ints(-1, 0);
        let a = LeaderRay::new(pt(0.0, 0.0), left.clone());
        let b = LeaderRay::new(pt(3.0, 0.0), left.clone());
        let c = LeaderRay::new(pt(0.0, 1.0), left.clone());
        assert!(rays_conflict(&a, &b).unwrap());
        assert!(!rays_conflict(&a, &c).unwrap());
        let diag = Direction::from_ints(-1, -1);
        let d1 = LeaderRay::new(pt(0.0, 0.0), diag.clone());
        let d2 = LeaderRay::new(pt(1.0, 1.0), diag.clone());
        assert!(rays_conflict(&d1, &d2).unwrap());
        assert!(rays_conflict(&a, &d1).is_err());
    }

    #[test]
    fn circular_order_matches_theta() {
        let mut dirs: Vec<Direction> = [0.1, 0.9, 1.7, 2.5, 3.3, 4.1, 4.9, 5.7]
            .iter()
            .map(|&t| direction_from_theta(t).unwrap())
            .collect();
        let sorted = dirs.clone();
        dirs.reverse();
        dirs.sort_by(|a, b| a.circular_cmp(b));
        assert_eq!(dirs, sorted);
    }

    #[test]
    fn ray_hit_agrees_with_dense_sampling() {
        // Brute check of the half-plane characterization on a coarse grid.
        for &(dx, dy) in &[(-1i64, 0i64), (-2, 1), (1, 3), (2, -1), (0, -1), (3, 2)] {
            let dir = Direction::from_ints(dx, dy);
            for ax in -6..6 {
                for ay in -6..6 {
                    let anchor = Point::from_ints(ax, ay);
                    let rect = Rect::new(
                        Point::new(&anchor.x + &Scalar::ratio(1, 3), anchor.y.clone()),
                        Scalar::one(),
                        Scalar::one(),
                    );
                    let ray = LeaderRay::new(Point::from_ints(0, 0), dir.clone());
                    let fast = ray_hits_rect(&ray, &rect);
                    // sample the ray densely and test interior containment
                    let mut slow = rect.contains_open(&ray.origin);
                    for k in 1..=4000 {
                        let t = Scalar::ratio(k, 100);
                        let p = Point::new(
                            &ray.origin.x + &(&t * dir.dx()),
                            &ray.origin.y + &(&t * dir.dy()),
                        );
                        if rect.contains_open(&p) {
                            slow = true;
                            break;
                        }
                    }
                    assert_eq!(fast, slow, "dir ({dx},{dy}) anchor ({ax},{ay})");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn overlap_symmetry(ax in -50i64..50, ay in -50i64..50, bx in -50i64..50, by in -50i64..50) {
            let a = Rect::unit(Point::new(Scalar::ratio(ax, 7), Scalar::ratio(ay, 7)));
            let b = Rect::unit(Point::new(Scalar::ratio(bx, 7), Scalar::ratio(by, 7)));
            prop_assert_eq!(rects_overlap(&a, &b), rects_overlap(&b, &a));
        }

        #[test]
        fn overlap_translation_by_width(ax in -50i64..50, ay in -50i64..50, w in 1i64..20) {
            let a = Rect::new(
                Point::new(Scalar::ratio(ax, 7), Scalar::ratio(ay, 7)),
                Scalar::ratio(w, 3),
                Scalar::one(),
            );
            let shifted = Rect::new(
                Point::new(&a.anchor.x + &a.w, a.anchor.y.clone()),
                a.w.clone(),
                a.h.clone(),
            );
            prop_assert!(!rects_overlap(&a, &shifted));
        }
    }
}

//! Simple-polygon predicates: point location, and open-interior intersection
//! with rectangles, segments and rays. Used for obstacles and the map.

use super::scalar::Scalar;
use super::{LeaderRay, Point, Rect};

/// A simple polygon given by its vertex list (no orientation requirement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolygon {
    pub verts: Vec<Point>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Scalar {
    &(&a.x - &o.x) * &(&b.y - &o.y) - &(&a.y - &o.y) * &(&b.x - &o.x)
}

fn on_segment(a: &Point, b: &Point, q: &Point) -> bool {
    if !cross(a, b, q).is_zero() {
        return false;
    }
    let dot = &(&q.x - &a.x) * &(&b.x - &a.x) + &(&q.y - &a.y) * &(&b.y - &a.y);
    if dot.is_negative() {
        return false;
    }
    let len2 = &(&b.x - &a.x) * &(&b.x - &a.x) + &(&b.y - &a.y) * &(&b.y - &a.y);
    dot <= len2
}

/// Closed segment intersection (shared endpoints count).
fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1.is_positive() && d2.is_negative()) || (d1.is_negative() && d2.is_positive()))
        && ((d3.is_positive() && d4.is_negative()) || (d3.is_negative() && d4.is_positive()))
    {
        return true;
    }
    (d1.is_zero() && on_segment(c, d, a))
        || (d2.is_zero() && on_segment(c, d, b))
        || (d3.is_zero() && on_segment(a, b, c))
        || (d4.is_zero() && on_segment(a, b, d))
}

impl SimplePolygon {
    pub fn new(verts: Vec<Point>) -> crate::Result<Self> {
        let p = SimplePolygon { verts };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> crate::Result<()> {
        let n = self.verts.len();
        if n < 3 {
            return Err(crate::Error::InvalidInstance(
                "polygon needs at least 3 vertices".into(),
            ));
        }
        for i in 0..n {
            if self.verts[i] == self.verts[(i + 1) % n] {
                return Err(crate::Error::InvalidInstance(
                    "polygon has a zero-length edge".into(),
                ));
            }
        }
        for i in 0..n {
            let (a, b) = (&self.verts[i], &self.verts[(i + 1) % n]);
            for j in i + 1..n {
                let (c, d) = (&self.verts[j], &self.verts[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // adjacent edges may only share the common vertex
                    let shared = if j == i + 1 { b } else { a };
                    let (oa, oc) = if j == i + 1 { (a, d) } else { (b, c) };
                    if on_segment(c, d, oa) && oa != shared || on_segment(a, b, oc) && oc != shared
                    {
                        return Err(crate::Error::InvalidInstance(
                            "polygon edges overlap".into(),
                        ));
                    }
                } else if segments_intersect(a, b, c, d) {
                    return Err(crate::Error::InvalidInstance(
                        "polygon is self-intersecting".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.verts.len();
        (0..n).map(move |i| (&self.verts[i], &self.verts[(i + 1) % n]))
    }

    pub fn on_boundary(&self, q: &Point) -> bool {
        self.edges().any(|(a, b)| on_segment(a, b, q))
    }

    /// Strict interior test by crossing parity (boundary points are outside).
    pub fn contains_strictly(&self, q: &Point) -> bool {
        if self.on_boundary(q) {
            return false;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            let (ay, by) = (&a.y, &b.y);
            if (ay > &q.y) != (by > &q.y) {
                // x coordinate of the edge at height q.y
                let t = &(&q.y - ay) / &(by - ay);
                let xi = &a.x + &(&t * &(&b.x - &a.x));
                if xi > q.x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// Open interval of segment parameters `t` where `a + t (b - a)` lies strictly
/// inside the rectangle, intersected with `[0, 1]`; tests non-emptiness.
pub fn segment_hits_rect_interior(a: &Point, b: &Point, rect: &Rect) -> bool {
    let mut lo: Option<Scalar> = None; // open lower bound on t
    let mut hi: Option<Scalar> = None; // open upper bound on t
    let mut update = |p0: &Scalar, dp: Scalar, min: Scalar, max: Scalar| -> bool {
        if dp.is_zero() {
            return *p0 > min && *p0 < max;
        }
        let t1 = &(&min - p0) / &dp;
        let t2 = &(&max - p0) / &dp;
        let (l, h) = if dp.is_positive() { (t1, t2) } else { (t2, t1) };
        if lo.as_ref().is_none_or(|v| l > *v) {
            lo = Some(l);
        }
        if hi.as_ref().is_none_or(|v| h < *v) {
            hi = Some(h);
        }
        true
    };
    if !update(&a.x, &b.x - &a.x, rect.anchor.x.clone(), rect.x1()) {
        return false;
    }
    if !update(&a.y, &b.y - &a.y, rect.anchor.y.clone(), rect.y1()) {
        return false;
    }
    let one = Scalar::one();
    let zero = Scalar::zero();
    let lo = lo.unwrap_or(&zero - &one);
    let hi = hi.unwrap_or(&one + &one);
    // nonempty (lo, hi) ∩ [0, 1]
    lo < hi && hi > zero && lo < one
}

/// True iff the open interiors of the rectangle and the polygon intersect.
pub fn rect_hits_polygon_interior(rect: &Rect, poly: &SimplePolygon) -> bool {
    if poly
        .edges()
        .any(|(a, b)| segment_hits_rect_interior(a, b, rect))
    {
        return true;
    }
    // No edge enters the open rectangle, so the rectangle interior lies
    // entirely inside or outside; test its center.
    let half = Scalar::ratio(1, 2);
    let center = Point::new(
        &rect.anchor.x + &(&rect.w * &half),
        &rect.anchor.y + &(&rect.h * &half),
    );
    poly.contains_strictly(&center)
}

/// Intersection parameters of a ray with a closed segment: zero, one, or (for
/// collinear overlap) two boundary parameters, all clamped to `t >= 0`.
pub(crate) fn ray_segment_params(ray: &LeaderRay, a: &Point, b: &Point, out: &mut Vec<Scalar>) {
    let (dx, dy) = (ray.dir.dx(), ray.dir.dy());
    let (ex, ey) = (&b.x - &a.x, &b.y - &a.y);
    let denom = dx * &ey - dy * &ex;
    let (wx, wy) = (&a.x - &ray.origin.x, &a.y - &ray.origin.y);
    if denom.is_zero() {
        // parallel; collinear iff cross(w, d) == 0
        if (&wx * dy - &wy * dx).is_zero() {
            let d2 = dx * dx + dy * dy;
            for p in [a, b] {
                let t = &(&(&p.x - &ray.origin.x) * dx + &(&p.y - &ray.origin.y) * dy) / &d2;
                if !t.is_negative() {
                    out.push(t);
                }
            }
        }
        return;
    }
    // origin + t d = a + s e
    let t = &(&wx * &ey - &wy * &ex) / &denom;
    let s = &(&wx * dy - &wy * dx) / &denom;
    if !t.is_negative() && !s.is_negative() && s <= Scalar::one() {
        out.push(t);
    }
}

/// True iff the ray meets the open interior of the polygon.
pub fn ray_hits_polygon_interior(ray: &LeaderRay, poly: &SimplePolygon) -> bool {
    if poly.contains_strictly(&ray.origin) {
        return true;
    }
    let mut params = vec![Scalar::zero()];
    for (a, b) in poly.edges() {
        ray_segment_params(ray, a, b, &mut params);
    }
    params.sort();
    params.dedup();
    // Between consecutive boundary events the inside-ness is constant;
    // sample each gap midpoint, plus one point past the last event.
    let mut samples = Vec::with_capacity(params.len() + 1);
    let half = Scalar::ratio(1, 2);
    for w in params.windows(2) {
        samples.push(&(&w[0] + &w[1]) * &half);
    }
    samples.push(params.last().unwrap() + &Scalar::one());
    samples.into_iter().any(|t| {
        let p = Point::new(
            &ray.origin.x + &(&t * ray.dir.dx()),
            &ray.origin.y + &(&t * ray.dir.dy()),
        );
        poly.contains_strictly(&p)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;

    fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> SimplePolygon {
        SimplePolygon::new(vec![
            Point::from_ints(x0, y0),
            Point::from_ints(x1, y0),
            Point::from_ints(x1, y1),
            Point::from_ints(x0, y1),
        ])
        .unwrap()
    }

    #[test]
    fn point_location() {
        let p = square(0, 0, 4, 4);
        assert!(p.contains_strictly(&Point::from_ints(2, 2)));
        assert!(!p.contains_strictly(&Point::from_ints(0, 2)));
        assert!(!p.contains_strictly(&Point::from_ints(5, 2)));
        assert!(p.on_boundary(&Point::from_ints(4, 4)));
    }

    #[test]
    fn self_intersection_rejected() {
        let bow = SimplePolygon::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(2, 2),
            Point::from_ints(2, 0),
            Point::from_ints(0, 2),
        ]);
        assert!(bow.is_err());
        assert!(SimplePolygon::new(vec![Point::from_ints(0, 0), Point::from_ints(1, 1)]).is_err());
    }

    #[test]
    fn rect_polygon_interior() {
        let p = square(0, 0, 4, 4);
        let inside = Rect::unit(Point::from_ints(1, 1));
        assert!(rect_hits_polygon_interior(&inside, &p));
        let outside = Rect::unit(Point::from_ints(10, 10));
        assert!(!rect_hits_polygon_interior(&outside, &p));
        // sharing only a boundary edge is not an interior hit
        let touching = Rect::unit(Point::from_ints(4, 1));
        assert!(!rect_hits_polygon_interior(&touching, &p));
        // rectangle strictly containing the polygon
        let huge = Rect::new(
            Point::from_ints(-10, -10),
            Scalar::from_int(40),
            Scalar::from_int(40),
        );
        assert!(rect_hits_polygon_interior(&huge, &p));
    }

    #[test]
    fn ray_polygon_interior() {
        let p = square(0, 0, 4, 4);
        let left = Direction::from_ints(-1, 0);
        assert!(ray_hits_polygon_interior(
            &LeaderRay::new(Point::from_ints(10, 2), left.clone()),
            &p
        ));
        // grazing the top edge
        assert!(!ray_hits_polygon_interior(
            &LeaderRay::new(Point::from_ints(10, 4), left.clone()),
            &p
        ));
        // pointing away
        assert!(!ray_hits_polygon_interior(
            &LeaderRay::new(Point::from_ints(10, 2), Direction::from_ints(1, 0)),
            &p
        ));
        // origin inside
        assert!(ray_hits_polygon_interior(
            &LeaderRay::new(Point::from_ints(2, 2), left),
            &p
        ));
    }
}

//! Routing of the outer leaders and placement of the external labels along
//! the map boundary.
//!
//! External labels are processed in counterclockwise boundary order starting
//! at the frame-topmost exit (exit frame ordinates are exactly the point
//! frame ordinates, so this order is just descending `fy`). Each label is
//! anchored at its boundary exit, extending away from the map; when it would
//! overlap the previously placed label it slides horizontally outward until
//! the two merely touch.

use crate::geometry::polygon::segment_hits_rect_interior;
use crate::geometry::{Point, Rect, Scalar, SimplePolygon};
use crate::instance::Instance;
use crate::validity::Labeling;
use crate::{Error, Result};

/// Convex counterclockwise map polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapPolygon {
    poly: SimplePolygon,
}

impl MapPolygon {
    pub fn new(verts: Vec<Point>) -> Result<Self> {
        let poly = SimplePolygon::new(verts)?;
        let n = poly.verts.len();
        let mut strict_turns = 0usize;
        for i in 0..n {
            let a = &poly.verts[i];
            let b = &poly.verts[(i + 1) % n];
            let c = &poly.verts[(i + 2) % n];
            let cross = &(&b.x - &a.x) * &(&c.y - &b.y) - &(&b.y - &a.y) * &(&c.x - &b.x);
            if cross.is_negative() {
                return Err(Error::InvalidInstance(
                    "map polygon must be convex and counterclockwise".into(),
                ));
            }
            if cross.is_positive() {
                strict_turns += 1;
            }
        }
        if strict_turns < 3 {
            return Err(Error::InvalidInstance("map polygon is degenerate".into()));
        }
        Ok(MapPolygon { poly })
    }

    pub fn verts(&self) -> Vec<Point> {
        self.poly.verts.clone()
    }

    pub fn as_simple_polygon(&self) -> &SimplePolygon {
        &self.poly
    }

    pub fn contains_strictly(&self, q: &Point) -> bool {
        let n = self.poly.verts.len();
        (0..n).all(|i| {
            let a = &self.poly.verts[i];
            let b = &self.poly.verts[(i + 1) % n];
            let cross = &(&b.x - &a.x) * &(&q.y - &a.y) - &(&b.y - &a.y) * &(&q.x - &a.x);
            cross.is_positive()
        })
    }
}

/// The unique intersection of the leader of point `i` with the map boundary.
pub fn clip_leader_to_map(instance: &Instance, i: usize) -> Result<Point> {
    let p = &instance.points[i];
    if !instance.map.contains_strictly(p) {
        return Err(Error::Contract(format!(
            "point {i} is not strictly inside the map"
        )));
    }
    let ray = instance.leader(i);
    let mut best: Option<Scalar> = None;
    let mut params = Vec::new();
    for (a, b) in instance.map.poly.edges() {
        crate::geometry::polygon::ray_segment_params(&ray, a, b, &mut params);
    }
    for t in params {
        if t.is_positive() && best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    let t = best.expect("ray from a strictly interior point exits a convex polygon");
    Ok(Point::new(
        &ray.origin.x + &(&t * ray.dir.dx()),
        &ray.origin.y + &(&t * ray.dir.dy()),
    ))
}

/// A routed external label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutedExternal {
    pub point: usize,
    pub boundary_exit: Point,
    /// Horizontal outer segment from the exit to the anchored label corner
    /// (possibly zero length).
    pub outer_path: (Point, Point),
    pub label_rect: Rect,
}

/// Routing result. `contacts` lists pairs `(later, earlier)` of external
/// point indices whose placed label touches or crosses the earlier external's
/// inner leader or outer segment; these are reported, never forbidden.
#[derive(Debug, Clone, Default)]
pub struct RoutingReport {
    pub externals: Vec<RoutedExternal>,
    pub contacts: Vec<(usize, usize)>,
}

/// Places all external labels of the labeling along the map boundary.
pub fn route_outer(instance: &Instance, labeling: &Labeling) -> Result<RoutingReport> {
    let frame = instance.frame();
    // dx <= 0: labels oriented to the left; otherwise to the right
    let left_class = !instance.dir.dx().is_positive();
    let mut order: Vec<usize> = labeling.external.iter().copied().collect();
    // Left class: counterclockwise along the exit chain from the topmost
    // leader, which is exactly descending exit frame ordinate. The right
    // class is the mirrored procedure, so the order flips to clockwise
    // (ascending frame ordinate); either way each label can only collide
    // with its predecessor, and the shift direction follows the chain.
    order.sort_by(|&a, &b| {
        let fya = frame.fy(&instance.points[a]);
        let fyb = frame.fy(&instance.points[b]);
        let cmp = if left_class {
            fyb.cmp(&fya)
        } else {
            fya.cmp(&fyb)
        };
        cmp.then(a.cmp(&b))
    });

    let (w, h) = (instance.label_w.clone(), instance.label_h.clone());
    let mut report = RoutingReport::default();
    for &i in &order {
        let exit = clip_leader_to_map(instance, i)?;
        // Slide horizontally outward from the exit to the first position
        // clear of every label placed so far. Along one boundary edge only
        // the immediate predecessor can block, but where the exit chain
        // turns a map corner an earlier label may be the blocker.
        let mut anchor_x = if left_class {
            &exit.x - &w
        } else {
            exit.x.clone()
        };
        loop {
            let candidate =
                Rect::new(Point::new(anchor_x.clone(), exit.y.clone()), w.clone(), h.clone());
            let mut pushed: Option<Scalar> = None;
            for prev in &report.externals {
                if crate::geometry::rects_overlap(&candidate, &prev.label_rect) {
                    let next = if left_class {
                        &prev.label_rect.anchor.x - &w
                    } else {
                        prev.label_rect.x1()
                    };
                    let further = match &pushed {
                        None => true,
                        Some(p) => {
                            if left_class {
                                next < *p
                            } else {
                                next > *p
                            }
                        }
                    };
                    if further {
                        pushed = Some(next);
                    }
                }
            }
            match pushed {
                None => break,
                Some(next) => anchor_x = next,
            }
        }
        let rect = Rect::new(Point::new(anchor_x, exit.y.clone()), w.clone(), h.clone());
        let anchored_corner = if left_class {
            Point::new(rect.x1(), rect.anchor.y.clone())
        } else {
            rect.anchor.clone()
        };
        for prev in &report.externals {
            let inner = (&instance.points[prev.point], &prev.boundary_exit);
            let outer = (&prev.outer_path.0, &prev.outer_path.1);
            if segment_hits_rect_interior(inner.0, inner.1, &rect)
                || segment_hits_rect_interior(outer.0, outer.1, &rect)
            {
                report.contacts.push((i, prev.point));
            }
        }
        report.externals.push(RoutedExternal {
            point: i,
            boundary_exit: exit.clone(),
            outer_path: (exit, anchored_corner),
            label_rect: rect,
        });
    }
    debug_assert!(externals_disjoint(&report.externals));
    Ok(report)
}

fn externals_disjoint(ext: &[RoutedExternal]) -> bool {
    for i in 0..ext.len() {
        for j in i + 1..ext.len() {
            if crate::geometry::rects_overlap(&ext[i].label_rect, &ext[j].label_rect) {
                return false;
            }
        }
    }
    true
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

    fn square_map(r: i64) -> MapPolygon {
        MapPolygon::new(vec![
            Point::from_ints(-r, -r),
            Point::from_ints(r, -r),
            Point::from_ints(r, r),
            Point::from_ints(-r, r),
        ])
        .unwrap()
    }

    fn with_map(points: Vec<Point>, dir: Direction, map: MapPolygon) -> Instance {
        Instance::new(points, Scalar::one(), Scalar::one(), dir, Some(map), vec![]).unwrap()
    }

    #[test]
    fn map_polygon_validation() {
        assert!(square_map(5).contains_strictly(&pt(0.0, 0.0)));
        assert!(!square_map(5).contains_strictly(&pt(5.0, 0.0)));
        // clockwise rejected
        assert!(MapPolygon::new(vec![
            Point::from_ints(-5, -5),
            Point::from_ints(-5, 5),
            Point::from_ints(5, 5),
            Point::from_ints(5, -5),
        ])
        .is_err());
    }

    #[test]
    fn clip_examples() {
        let inst = with_map(vec![pt(0.0, 0.0)], Direction::from_ints(-1, 0), square_map(5));
        assert_eq!(clip_leader_to_map(&inst, 0).unwrap(), pt(-5.0, 0.0));

        let inst = with_map(vec![pt(0.0, 0.0)], Direction::from_ints(0, -1), square_map(5));
        assert_eq!(clip_leader_to_map(&inst, 0).unwrap(), pt(0.0, -5.0));

        // diagonal leader against a triangle edge
        let tri = MapPolygon::new(vec![
            Point::from_ints(-6, -2),
            Point::from_ints(6, -2),
            Point::from_ints(0, 7),
        ])
        .unwrap();
        let inst = with_map(vec![pt(0.0, 0.0)], Direction::from_ints(-2, 1), tri);
        let exit = clip_leader_to_map(&inst, 0).unwrap();
        // edge from (0,7) to (-6,-2): x = -6 t', y = 7 - 9 t'; ray: (-2s, s)
        assert_eq!(exit, Point::new(Scalar::ratio(-14, 4), Scalar::ratio(7, 4)));
    }

    #[test]
    fn single_external_anchored_at_exit() {
        let inst = with_map(vec![pt(0.0, 0.5)], Direction::from_ints(-1, 0), square_map(5));
        let lab = Labeling::all_external(1);
        let rep = route_outer(&inst, &lab).unwrap();
        let r = &rep.externals[0];
        assert_eq!(r.boundary_exit, pt(-5.0, 0.5));
        assert_eq!(r.label_rect, Rect::unit(pt(-6.0, 0.5)));
        assert_eq!(r.outer_path.0, r.outer_path.1); // zero-length outer segment
    }

    #[test]
    fn overlapping_exits_shift_left() {
        let inst = with_map(
            vec![pt(0.0, 0.5), pt(0.0, 0.0)],
            Direction::from_ints(-1, 0),
            square_map(5),
        );
        let lab = Labeling::all_external(2);
        let rep = route_outer(&inst, &lab).unwrap();
        // topmost first: exit (-5, 0.5) keeps its anchored spot
        assert_eq!(rep.externals[0].label_rect, Rect::unit(pt(-6.0, 0.5)));
        // the second shifts to touch at x = -6
        assert_eq!(rep.externals[1].label_rect, Rect::unit(pt(-7.0, 0.0)));
        assert_eq!(rep.externals[1].outer_path.0, pt(-5.0, 0.0));
        assert_eq!(rep.externals[1].outer_path.1, pt(-6.0, 0.0));
    }

    #[test]
    fn distant_exits_do_not_shift() {
        let inst = with_map(
            vec![pt(0.0, 2.0), pt(0.0, 0.0)],
            Direction::from_ints(-1, 0),
            square_map(5),
        );
        let rep = route_outer(&inst, &Labeling::all_external(2)).unwrap();
        assert_eq!(rep.externals[0].label_rect, Rect::unit(pt(-6.0, 2.0)));
        assert_eq!(rep.externals[1].label_rect, Rect::unit(pt(-6.0, 0.0)));
        assert!(rep.contacts.is_empty());
    }

    #[test]
    fn right_class_mirrors() {
        let inst = with_map(
            vec![pt(0.0, 0.5), pt(0.0, 0.0)],
            Direction::from_ints(1, 0),
            square_map(5),
        );
        let rep = route_outer(&inst, &Labeling::all_external(2)).unwrap();
        // the mirrored (clockwise) order starts at the world-topmost exit
        assert_eq!(rep.externals[0].label_rect, Rect::unit(pt(5.0, 0.5)));
        assert_eq!(rep.externals[1].label_rect, Rect::unit(pt(6.0, 0.0)));
    }

    #[test]
    fn deterministic() {
        let inst = with_map(
            vec![pt(0.1, 0.4), pt(-1.0, 0.9), pt(2.0, 1.3)],
            Direction::from_ints(-3, 1),
            square_map(9),
        );
        let a = route_outer(&inst, &Labeling::all_external(3)).unwrap();
        let b = route_outer(&inst, &Labeling::all_external(3)).unwrap();
        assert_eq!(a.externals, b.externals);
    }
}

//! Problem instances: points, label dimensions, leader direction, map and
//! obstacles.

use crate::frame::Frame;
use crate::geometry::{Direction, LeaderRay, Point, Rect, Scalar};
use crate::preprocess::Obstacle;
use crate::routing::MapPolygon;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Instance {
    pub points: Vec<Point>,
    pub label_w: Scalar,
    pub label_h: Scalar,
    pub dir: Direction,
    pub map: MapPolygon,
    pub obstacles: Vec<Obstacle>,
}

impl Instance {
    pub fn new(
        points: Vec<Point>,
        label_w: Scalar,
        label_h: Scalar,
        dir: Direction,
        map: Option<MapPolygon>,
        obstacles: Vec<Obstacle>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInstance("no points".into()));
        }
        if !label_w.is_positive() || !label_h.is_positive() {
            return Err(Error::InvalidInstance("label dimensions must be positive".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidInstance(format!(
                        "points {i} and {j} coincide"
                    )));
                }
            }
        }
        let map = match map {
            Some(m) => m,
            None => default_map(&points),
        };
        for (i, p) in points.iter().enumerate() {
            if !map.contains_strictly(p) {
                return Err(Error::InvalidInstance(format!(
                    "point {i} is not strictly inside the map polygon"
                )));
            }
        }
        Ok(Instance {
            points,
            label_w,
            label_h,
            dir,
            map,
            obstacles,
        })
    }

    /// Unit labels, default map, no obstacles.
    pub fn unit(points: Vec<Point>, dir: Direction) -> Result<Self> {
        Instance::new(points, Scalar::one(), Scalar::one(), dir, None, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn has_unit_labels(&self) -> bool {
        self.label_w == Scalar::one() && self.label_h == Scalar::one()
    }

    /// Candidate internal label of point `i`.
    pub fn label_rect(&self, i: usize) -> Rect {
        Rect::new(
            self.points[i].clone(),
            self.label_w.clone(),
            self.label_h.clone(),
        )
    }

    /// Candidate leader of point `i` (inner part, as a half-line).
    pub fn leader(&self, i: usize) -> LeaderRay {
        LeaderRay::new(self.points[i].clone(), self.dir.clone())
    }

    pub fn frame(&self) -> Frame {
        Frame::new(self.dir.clone())
    }
}

/// Bounding box of the points inflated by `n + 2` on each side.
pub fn default_map(points: &[Point]) -> MapPolygon {
    let mut min_x = points[0].x.clone();
    let mut max_x = points[0].x.clone();
    let mut min_y = points[0].y.clone();
    let mut max_y = points[0].y.clone();
    for p in points {
        if p.x < min_x {
            min_x = p.x.clone();
        }
        if p.x > max_x {
            max_x = p.x.clone();
        }
        if p.y < min_y {
            min_y = p.y.clone();
        }
        if p.y > max_y {
            max_y = p.y.clone();
        }
    }
    let pad = Scalar::from_int(points.len() as i64 + 2);
    MapPolygon::new(vec![
        Point::new(&min_x - &pad, &min_y - &pad),
        Point::new(&max_x + &pad, &min_y - &pad),
        Point::new(&max_x + &pad, &max_y + &pad),
        Point::new(&min_x - &pad, &max_y + &pad),
    ])
    .expect("inflated bounding box is a valid map")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        let d = Direction::from_ints(-1, 0);
        assert!(Instance::unit(vec![], d.clone()).is_err());
        assert!(Instance::unit(
            vec![Point::from_ints(0, 0), Point::from_ints(0, 0)],
            d
        )
        .is_err());
    }

    #[test]
    fn default_map_contains_points() {
        let d = Direction::from_ints(-1, 0);
        let inst = Instance::unit(
            vec![Point::from_ints(0, 0), Point::from_ints(7, 3)],
            d,
        )
        .unwrap();
        for p in &inst.points {
            assert!(inst.map.contains_strictly(p));
        }
    }
}

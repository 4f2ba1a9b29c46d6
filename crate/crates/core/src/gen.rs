//! Seeded random instances: rejection sampling on a millimeter grid until
//! all pairwise distances clear the requested minimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Point, Scalar};
use crate::{Error, Result};

const GRID: i64 = 1000;

/// Draws `n` distinct points inside `[0, box_size]^2` with pairwise Euclidean
/// distance at least `dmin`, deterministically from the seed. Coordinates are
/// exact multiples of 1/1000. Errors when the packing does not materialize
/// within a bounded number of draws.
pub fn random_points(n: usize, seed: u64, dmin: &Scalar, box_size: &Scalar) -> Result<Vec<Point>> {
    if n == 0 {
        return Err(Error::Domain("need at least one point".into()));
    }
    if dmin.is_negative() || !box_size.is_positive() {
        return Err(Error::Domain("dmin must be >= 0 and box positive".into()));
    }
    let hi: i64 = (box_size * &Scalar::from_int(GRID))
        .ceil_int()
        .try_into()
        .map_err(|_| Error::Domain("box too large".into()))?;
    let d2 = dmin * dmin;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let budget = 10_000usize.saturating_mul(n);
    let mut draws = 0usize;
    while pts.len() < n {
        draws += 1;
        if draws > budget {
            return Err(Error::Refused(format!(
                "could not place {n} points at distance {dmin} in a {box_size} box after {budget} draws"
            )));
        }
        let p = Point::new(
            Scalar::ratio(rng.random_range(0..=hi), GRID),
            Scalar::ratio(rng.random_range(0..=hi), GRID),
        );
        let ok = pts.iter().all(|q| {
            let dx = &p.x - &q.x;
            let dy = &p.y - &q.y;
            let dist2 = &(&dx * &dx) + &(&dy * &dy);
            dist2 >= d2 && p != *q
        });
        if ok {
            pts.push(p);
        }
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{delta, min_pairwise_distance_squared};

    #[test]
    fn deterministic_from_seed() {
        let d = Scalar::ratio(15, 100);
        let b = Scalar::from_int(3);
        let a = random_points(5, 42, &d, &b).unwrap();
        let bb = random_points(5, 42, &d, &b).unwrap();
        assert_eq!(a, bb);
        let c = random_points(5, 43, &d, &b).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn respects_dmin_and_delta_bound() {
        let d = Scalar::ratio(4, 10);
        let b = Scalar::from_int(3);
        let pts = random_points(9, 7, &d, &b).unwrap();
        let min2 = min_pairwise_distance_squared(&pts).unwrap();
        assert!(min2 >= &d * &d);
        // delta <= min(n, ceil(1/dmin))
        assert!(delta(&pts) <= 9.min(3));
    }

    #[test]
    fn infeasible_packing_refused() {
        let d = Scalar::from_int(10);
        let b = Scalar::from_int(1);
        assert!(matches!(
            random_points(5, 1, &d, &b),
            Err(Error::Refused(_))
        ));
    }
}

//! Exhaustive ground truth: maximizes the number of internal labels by
//! enumerating all partitions. Used to certify the solvers and to freeze
//! expected values in tests.
//!
//! The enumeration consults only the raw geometric predicates (cached as
//! per-point masks), never the solvers' slab machinery.

use crate::geometry::polygon::{ray_hits_polygon_interior, rect_hits_polygon_interior};
use crate::geometry::{point_on_ray, ray_hits_rect, rays_conflict, rects_overlap};
use crate::instance::Instance;
use crate::validity::Labeling;
use crate::{Error, Result};

pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: Labeling,
    /// Number of partitions enumerated.
    pub enumerated: usize,
}

fn lex_smaller(a: u64, b: u64) -> bool {
    // sorted index lists of equal length: smaller first differing element
    let mut x = a;
    let mut y = b;
    while x != 0 && y != 0 {
        let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
        if i != j {
            return i < j;
        }
        x &= x - 1;
        y &= y - 1;
    }
    false
}

/// Iterates all `2^n` partitions, filters by validity, and returns the
/// maximum-cardinality internal set; ties break to the lexicographically
/// smallest internal index set. Refuses `n > cap` to prevent accidental
/// exponential runs.
pub fn brute_force(instance: &Instance, cap: usize) -> Result<OracleResult> {
    let n = instance.n();
    if n > cap {
        return Err(Error::Refused(format!(
            "oracle refuses n = {n} > cap = {cap}"
        )));
    }
    assert!(n <= 63, "mask enumeration supports at most 63 points");

    let labels: Vec<_> = (0..n).map(|i| instance.label_rect(i)).collect();
    let leaders: Vec<_> = (0..n).map(|i| instance.leader(i)).collect();
    let mut ll_bad = vec![0u64; n]; // labels overlapping label i
    let mut pierce = vec![0u64; n]; // labels pierced by leader e
    let mut collinear = vec![0u64; n]; // leaders collinear with leader e
    let mut never_internal = vec![false; n];
    let mut never_external = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if rects_overlap(&labels[i], &labels[j]) {
                ll_bad[i] |= 1 << j;
            }
            if ray_hits_rect(&leaders[i], &labels[j]) {
                pierce[i] |= 1 << j;
            }
            if rays_conflict(&leaders[i], &leaders[j]).expect("same direction") {
                collinear[i] |= 1 << j;
            }
            if labels[i].contains_closed(&instance.points[j]) {
                never_internal[i] = true;
            }
            if point_on_ray(&leaders[i], &instance.points[j]) {
                never_external[i] = true;
            }
        }
        for obs in &instance.obstacles {
            if rect_hits_polygon_interior(&labels[i], &obs.polygon) {
                never_internal[i] = true;
            }
            if ray_hits_polygon_interior(&leaders[i], &obs.polygon) {
                never_external[i] = true;
            }
        }
    }

    let full: u64 = if n == 63 { !0 >> 1 } else { (1 << n) - 1 };
    let mut best: Option<(usize, u64)> = None;
    let mut enumerated = 0usize;
    'mask: for internal in 0..=full {
        enumerated += 1;
        let external = full & !internal;
        let mut rest = internal;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if never_internal[i] || ll_bad[i] & internal != 0 {
                continue 'mask;
            }
        }
        let mut rest = external;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if never_external[e]
                || pierce[e] & internal != 0
                || collinear[e] & external & !((1 << e) | ((1 << e) - 1)) != 0
            {
                continue 'mask;
            }
        }
        let count = internal.count_ones() as usize;
        let better = match best {
            None => true,
            Some((c, w)) => count > c || (count == c && lex_smaller(internal, w)),
        };
        if better {
            best = Some((count, internal));
        }
    }
    let Some((optimum, w)) = best else {
        // possible only for degenerate inputs, e.g. a point that can neither
        // keep a label (it covers a neighbor) nor emit a leader (it shoots
        // through one)
        return Err(Error::Infeasible("no valid labeling exists".into()));
    };
    let witness = Labeling::from_internal(n, (0..n).filter(|i| w >> i & 1 == 1));
    debug_assert!(crate::validity::is_valid(instance, &witness));
    Ok(OracleResult {
        optimum,
        witness,
        enumerated,
    })
}

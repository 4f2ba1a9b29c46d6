//! Shared solver preparation: normalization, the forcing pipeline, dummy
//! anchors, and one pass of exact predicates cached as bit matrices.
//!
//! After preparation the dynamic programs never touch rational arithmetic:
//! every label-label, leader-label and region-membership test is a bit
//! lookup, and frame comparisons become integer rank comparisons.

use crate::bits::{BitMatrix, BitSet};
use crate::frame::{in_influence_region, Frame, RegionKind};
use crate::geometry::{ray_hits_rect, Point, Scalar};
use crate::instance::Instance;
use crate::preprocess::{normalize_to_unit_labels, obstacle_fixpoint, PreprocessReport};
use crate::validity::Labeling;
use crate::{Result, SolveStats, Solution};

/// Absorbing "minus infinity" for dynamic-programming values; small enough
/// that sums of a few terms cannot wrap.
pub(crate) const NEG: i64 = i64::MIN / 8;

/// Anchor ids: `0..m` are the solver points in ascending frame-ordinate
/// order, `m` is the bottom dummy, `m + 1` the top dummy.
pub(crate) type AnchorId = usize;

pub(crate) struct Prep {
    /// Normalized instance (unit labels).
    pub instance: Instance,
    pub frame: Frame,
    pub report: PreprocessReport,
    /// Instance index of each solver point, ascending by frame ordinate.
    pub dp_points: Vec<usize>,
    pub m: usize,
    /// Coordinates per anchor id (solver points, then the two dummies).
    pub anchor_pts: Vec<Point>,
    /// Dense frame-abscissa rank per anchor id (ties share a rank).
    pub fxd: Vec<usize>,
    /// Label-label interior overlap between solver points.
    pub ll: BitMatrix,
    /// `ray_hits.row(a)`: labels pierced by the leader of anchor `a`.
    pub ray_hits: BitMatrix,
    /// `hit_by.row(j)`: solver points whose leader pierces label `j`.
    pub hit_by: BitMatrix,
    /// Labels pierced by a leader of the covered-label forced set.
    pub marked: BitSet,
    /// Region membership rows per real anchor: E, E'' = E' \ E, F, F'' .
    pub e_pts: BitMatrix,
    pub e2_pts: BitMatrix,
    pub f_pts: BitMatrix,
    pub f2_pts: BitMatrix,
}

impl Prep {
    pub fn bottom_dummy(&self) -> AnchorId {
        self.m
    }

    pub fn top_dummy(&self) -> AnchorId {
        self.m + 1
    }

    pub fn is_dummy(&self, a: AnchorId) -> bool {
        a >= self.m
    }

    /// Frame-ordinate rank of an anchor: dummies bracket the points.
    pub fn fy_rank(&self, a: AnchorId) -> i64 {
        if a == self.m {
            -1
        } else if a == self.m + 1 {
            self.m as i64
        } else {
            a as i64
        }
    }

    /// Solver points strictly inside the slab of `(ell, u)`, i.e. the open
    /// frame-ordinate range; they are contiguous in anchor order.
    pub fn slab_indices(&self, ell: AnchorId, u: AnchorId) -> std::ops::Range<usize> {
        let lo = (self.fy_rank(ell) + 1) as usize;
        let hi = self.fy_rank(u).max(0) as usize;
        lo..hi.min(self.m)
    }

    /// Subproblem points: in the slab and strictly frame-left of both
    /// anchors, sorted by descending frame abscissa (ties by ascending id).
    pub fn s_points(&self, ell: AnchorId, u: AnchorId) -> Vec<u16> {
        let bound = self.fxd[ell].min(self.fxd[u]);
        let mut v: Vec<u16> = self
            .slab_indices(ell, u)
            .filter(|&i| self.fxd[i] < bound)
            .map(|i| i as u16)
            .collect();
        v.sort_by(|&a, &b| {
            self.fxd[b as usize]
                .cmp(&self.fxd[a as usize])
                .then(a.cmp(&b))
        });
        v
    }

    /// Slab points that are not subproblem points (assumed internal).
    pub fn sc_points(&self, ell: AnchorId, u: AnchorId) -> Vec<u16> {
        let bound = self.fxd[ell].min(self.fxd[u]);
        self.slab_indices(ell, u)
            .filter(|&i| self.fxd[i] >= bound)
            .map(|i| i as u16)
            .collect()
    }

    pub fn region_row(&self, anchor: AnchorId, kind: RegionKind) -> Option<&BitSet> {
        if self.is_dummy(anchor) {
            return None;
        }
        Some(match kind {
            RegionKind::BottomLabel => self.e_pts.row(anchor),
            RegionKind::BottomLeaderOnly => self.e2_pts.row(anchor),
            RegionKind::TopLabel => self.f_pts.row(anchor),
            RegionKind::TopLeaderOnly => self.f2_pts.row(anchor),
            _ => panic!("solver queries only E, E'', F, F''"),
        })
    }

    pub fn in_region(&self, anchor: AnchorId, q: usize, kind: RegionKind) -> bool {
        self.region_row(anchor, kind).is_some_and(|r| r.get(q))
    }

    pub fn build(instance: &Instance) -> Result<Prep> {
        let (normalized, scaled) = normalize_to_unit_labels(instance)?;
        let mut report = obstacle_fixpoint(&normalized)?;
        report.scaled = scaled;
        let frame = normalized.frame();

        let mut dp_points: Vec<usize> = (0..normalized.n())
            .filter(|i| {
                !report.forced_external.contains(i) && !report.forced_internal.contains(i)
            })
            .collect();
        dp_points.sort_by(|&a, &b| {
            frame
                .fy(&normalized.points[a])
                .cmp(&frame.fy(&normalized.points[b]))
        });
        let m = dp_points.len();
        for w in dp_points.windows(2) {
            // equal frame ordinates would mean collinear leaders, which the
            // degenerate-slope rule has already forced apart
            assert!(
                frame.fy(&normalized.points[w[0]]) < frame.fy(&normalized.points[w[1]]),
                "remaining points share a frame ordinate"
            );
        }

        let mut anchor_pts: Vec<Point> =
            dp_points.iter().map(|&i| normalized.points[i].clone()).collect();
        let (bottom, top) = dummy_points(&normalized, &frame, &anchor_pts);
        anchor_pts.push(bottom);
        anchor_pts.push(top);

        let fxd = dense_fx_ranks(&frame, &anchor_pts);

        let mut ll = BitMatrix::new(m, m);
        let mut ray_hits = BitMatrix::new(m + 2, m);
        let mut hit_by = BitMatrix::new(m, m);
        let mut marked = BitSet::new(m);
        for i in 0..m {
            if report.label_hit_by_px[dp_points[i]] {
                marked.set(i);
            }
            let label_i = crate::geometry::Rect::unit(anchor_pts[i].clone());
            for j in 0..m {
                if i != j
                    && crate::geometry::rects_overlap(
                        &label_i,
                        &crate::geometry::Rect::unit(anchor_pts[j].clone()),
                    )
                {
                    ll.set(i, j);
                }
            }
        }
        for a in 0..m + 2 {
            let ray = frame.leader(anchor_pts[a].clone());
            for j in 0..m {
                if a != j && ray_hits_rect(&ray, &crate::geometry::Rect::unit(anchor_pts[j].clone()))
                {
                    ray_hits.set(a, j);
                    if a < m {
                        hit_by.set(j, a);
                    }
                }
            }
        }
        debug_assert!(
            (0..m).all(|j| !ray_hits.get(m, j) && !ray_hits.get(m + 1, j)),
            "dummy leaders must not pierce any label"
        );

        let (dx, dy) = (frame.dir().dx().clone(), frame.dir().dy().clone());
        let band = &dx.abs() + &dy.abs();
        let mut e_pts = BitMatrix::new(m, m);
        let mut e2_pts = BitMatrix::new(m, m);
        let mut f_pts = BitMatrix::new(m, m);
        let mut f2_pts = BitMatrix::new(m, m);
        for a in 0..m {
            let fya = frame.fy(&anchor_pts[a]);
            let fxa = frame.fx(&anchor_pts[a]);
            for q in 0..m {
                if a == q {
                    continue;
                }
                let fyq = frame.fy(&anchor_pts[q]);
                // any region interaction happens within one label frame-extent
                // of the anchor's frame line, on the region's side of it
                let (below, above) = (fyq < fya, fyq > fya);
                let in_band = (&fya - &fyq).abs() < band;
                if !in_band {
                    continue;
                }
                // For the label regions the witness label must overlap the
                // query label, which also bounds the query's frame abscissa.
                // The leader regions are frame-x unbounded; no such filter.
                let near_x = frame.fx(&anchor_pts[q]) < &fxa + &band;
                let (pa, pq) = (&anchor_pts[a], &anchor_pts[q]);
                if below {
                    if near_x && in_influence_region(pq, pa, RegionKind::BottomLabel, &frame) {
                        e_pts.set(a, q);
                    }
                    if in_influence_region(pq, pa, RegionKind::BottomLeaderOnly, &frame) {
                        e2_pts.set(a, q);
                    }
                } else if above {
                    if near_x && in_influence_region(pq, pa, RegionKind::TopLabel, &frame) {
                        f_pts.set(a, q);
                    }
                    if in_influence_region(pq, pa, RegionKind::TopLeaderOnly, &frame) {
                        f2_pts.set(a, q);
                    }
                }
            }
        }

        Ok(Prep {
            instance: normalized,
            frame,
            report,
            dp_points,
            m,
            anchor_pts,
            fxd,
            ll,
            ray_hits,
            hit_by,
            marked,
            e_pts,
            e2_pts,
            f_pts,
            f2_pts,
        })
    }
}

/// Per-pair base data for the suffix feasibility tables: the subproblem
/// points in descending frame-abscissa order, the slab complement (assumed
/// internal), and the sweep values `psi0[k]` = number of subproblem points
/// strictly frame-right of `s[k]` while everything seen so far (plus the
/// whole slab complement) stays pairwise disjoint and unpierced by the
/// anchor leaders; `NEG` from the first conflict leftward.
pub(crate) struct PairBase {
    pub s: Vec<u16>,
    pub sc: Vec<u16>,
    pub slab_set: BitSet,
    pub psi0: Vec<i64>,
    /// The whole of `S` (and the complement) is conflict-free: the leaf value
    /// `|S|` is attainable as far as the base context is concerned.
    pub clean_all: bool,
}

impl Prep {
    pub(crate) fn pair_base(&self, ell: AnchorId, u: AnchorId) -> PairBase {
        let s = self.s_points(ell, u);
        let sc = self.sc_points(ell, u);
        let mut slab_set = BitSet::new(self.m);
        for i in self.slab_indices(ell, u) {
            slab_set.set(i);
        }
        let mut sc_set = BitSet::new(self.m);
        for &q in &sc {
            sc_set.set(q as usize);
        }
        let base_conflict = |p: usize| {
            self.ray_hits.get(ell, p) || self.ray_hits.get(u, p) || self.marked.get(p)
        };
        let mut bad = false;
        for &q in &sc {
            let q = q as usize;
            if base_conflict(q) || self.ll.row(q).intersects(&sc_set) {
                bad = true;
            }
        }
        let mut psi0 = vec![NEG; s.len()];
        let mut placed = BitSet::new(self.m);
        let mut count = 0i64;
        let mut i = 0;
        while i < s.len() {
            let mut j = i;
            while j < s.len() && self.fxd[s[j] as usize] == self.fxd[s[i] as usize] {
                j += 1;
            }
            for v in psi0.iter_mut().take(j).skip(i) {
                *v = if bad { NEG } else { count };
            }
            for k in i..j {
                let p = s[k] as usize;
                if base_conflict(p)
                    || self.ll.row(p).intersects(&placed)
                    || self.ll.row(p).intersects(&sc_set)
                {
                    bad = true;
                }
                for l in k + 1..j {
                    if self.ll.get(p, s[l] as usize) {
                        bad = true;
                    }
                }
            }
            for k in i..j {
                placed.set(s[k] as usize);
            }
            count += (j - i) as i64;
            i = j;
        }
        PairBase {
            s,
            sc,
            slab_set,
            psi0,
            clean_all: !bad,
        }
    }

    /// Assembles the final solution: solver-point internals plus the
    /// preprocessing-forced internal points.
    pub(crate) fn finish(&self, dp_internal: &[u16], mut stats: SolveStats) -> Solution {
        let mut internal: Vec<usize> =
            dp_internal.iter().map(|&i| self.dp_points[i as usize]).collect();
        internal.extend(self.report.forced_internal.iter().copied());
        stats.delta = self.report.delta;
        let labeling = Labeling::from_internal(self.instance.n(), internal);
        debug_assert!(
            crate::validity::is_valid(&self.instance, &labeling),
            "solver produced an invalid witness"
        );
        Solution {
            internal_count: labeling.internal.len(),
            labeling,
            stats,
        }
    }
}

fn dense_fx_ranks(frame: &Frame, pts: &[Point]) -> Vec<usize> {
    let mut fx: Vec<Scalar> = pts.iter().map(|p| frame.fx(p)).collect();
    let mut sorted = fx.clone();
    sorted.sort();
    sorted.dedup();
    fx.iter_mut()
        .map(|v| sorted.binary_search(v).expect("value present"))
        .collect::<Vec<usize>>()
}

/// Dummy anchors frame-right of and frame-above/-below everything by a margin
/// large enough that their influence regions hold no point and their leaders
/// pierce no label.
fn dummy_points(instance: &Instance, frame: &Frame, pts: &[Point]) -> (Point, Point) {
    let all: Vec<Point> = if pts.is_empty() {
        instance.points.clone()
    } else {
        pts.to_vec()
    };
    let mut min_fx = frame.fx(&all[0]);
    let mut max_fx = min_fx.clone();
    let mut min_fy = frame.fy(&all[0]);
    let mut max_fy = min_fy.clone();
    for p in &all {
        let (fx, fy) = (frame.fx(p), frame.fy(p));
        if fx < min_fx {
            min_fx = fx.clone();
        }
        if fx > max_fx {
            max_fx = fx;
        }
        if fy < min_fy {
            min_fy = fy.clone();
        }
        if fy > max_fy {
            max_fy = fy;
        }
    }
    let extent = frame.dir().dx().abs() + frame.dir().dy().abs();
    let margin = &(&(&max_fx - &min_fx) + &(&max_fy - &min_fy))
        + &(&extent * &Scalar::from_int(instance.n() as i64 + 8));
    let fx_far = &max_fx + &margin;
    let bottom = frame.from_frame_coords(&fx_far, &(&min_fy - &margin));
    let top = frame.from_frame_coords(&fx_far, &(&max_fy + &margin));
    (bottom, top)
}

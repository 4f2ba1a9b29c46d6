//! Dynamic program for horizontal leaders pointing left.
//!
//! Cells are `(ell, u, r)`: the two externally labeled anchors bounding a
//! slab, plus the single point of `E(ell)` (the open unit square hanging off
//! `ell`) that may be labeled internally below the slab. Each cell either
//! labels its whole subproblem internally or cuts at the rightmost external
//! point `p`, whose suffix feasibility comes from precomputed sweep tables.

use crate::geometry::Direction;
use crate::instance::Instance;
use crate::prep::{AnchorId, PairBase, Prep, NEG};
use crate::{Error, Result, SolveStats, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    Dead,
    Leaf,
    Cut { p: u16, r_child: u16 },
}

struct Dp<'p> {
    prep: &'p Prep,
    /// Per anchor: the points of its bottom influence region, ascending.
    cand: Vec<Vec<u16>>,
    /// Per solver point: the topmost point inside its influence square.
    topmost: Vec<Option<u16>>,
    /// Per pair id: value and backpointer per r index (0 = none).
    cells: Vec<Option<Vec<(i64, Back)>>>,
    dp_cells: usize,
}

impl<'p> Dp<'p> {
    fn pair_id(&self, ell: AnchorId, u: AnchorId) -> usize {
        ell * (self.prep.m + 2) + u
    }

    /// Index of `r` in the candidate list of `ell`: 0 for none, else 1-based.
    fn r_index(&self, ell: AnchorId, r: Option<u16>) -> u16 {
        match r {
            None => 0,
            Some(r) => {
                let pos = self.cand[ell].binary_search(&r).expect("r in E(ell)");
                pos as u16 + 1
            }
        }
    }

    fn rho(&self, p: u16, ell: AnchorId, r: Option<u16>) -> Option<u16> {
        if let Some(q) = self.topmost[p as usize] {
            if self.prep.fy_rank(q as usize) > self.prep.fy_rank(ell) {
                return Some(q);
            }
        }
        r.filter(|&r| self.prep.e_pts.get(p as usize, r as usize))
    }

    /// Per-r conflict data against the slab of `(ell, u)`: whether the cell
    /// is dead for this `r` regardless of the cut, and the frame-abscissa
    /// rank of the rightmost subproblem point whose label conflicts with
    /// `r`'s label (suffixes left of it are infeasible).
    fn r_info(&self, ell: AnchorId, u: AnchorId, base: &PairBase, r: u16) -> (bool, Option<usize>) {
        let prep = self.prep;
        let r = r as usize;
        // a conflict with an assumed-internal complement point (or with the
        // fixed leaders) kills the cell for every cut
        let dead = prep.marked.get(r)
            || prep.ray_hits.get(ell, r)
            || prep.ray_hits.get(u, r)
            || base.sc.iter().any(|&q| prep.ll.get(r, q as usize));
        if dead {
            return (true, None);
        }
        for &q in &base.s {
            if prep.ll.get(r, q as usize) {
                return (false, Some(prep.fxd[q as usize]));
            }
        }
        (false, None)
    }

    fn fill_cell(&mut self, ell: AnchorId, u: AnchorId, base: &PairBase) {
        let prep = self.prep;
        let r_count = 1 + if prep.is_dummy(ell) {
            0
        } else {
            self.cand[ell].len()
        };
        let mut out = Vec::with_capacity(r_count);
        for r_idx in 0..r_count {
            let r = if r_idx == 0 {
                None
            } else {
                Some(self.cand[ell][r_idx - 1])
            };
            let (dead, rc) = match r {
                None => (false, None),
                Some(r) => self.r_info(ell, u, base, r),
            };
            let any_conflict = dead || rc.is_some();
            let mut best = if base.clean_all && !any_conflict {
                (base.s.len() as i64, Back::Leaf)
            } else {
                (NEG, Back::Dead)
            };
            if !dead {
                for (k, &p) in base.s.iter().enumerate() {
                    let mut psi = base.psi0[k];
                    if let Some(rc) = rc {
                        if prep.fxd[p as usize] < rc {
                            psi = NEG;
                        }
                    }
                    if psi == NEG {
                        // both the sweep flag and the conflict threshold are
                        // monotone toward the frame-left
                        break;
                    }
                    let below = self.cells[self.pair_id(ell, p as usize)].as_ref().unwrap()
                        [r_idx]
                        .0;
                    if below == NEG {
                        continue;
                    }
                    let r_child = self.r_index(p as usize, self.rho(p, ell, r));
                    let above = self.cells[self.pair_id(p as usize, u)].as_ref().unwrap()
                        [r_child as usize]
                        .0;
                    if above == NEG {
                        continue;
                    }
                    let v = psi + below + above;
                    if v > best.0 {
                        best = (v, Back::Cut { p, r_child });
                    }
                }
            }
            out.push(best);
        }
        self.dp_cells += out.len();
        let id = self.pair_id(ell, u);
        self.cells[id] = Some(out);
    }
}

/// Maximizes the number of internal labels for leftward horizontal leaders.
pub fn solve(instance: &Instance) -> Result<Solution> {
    if instance.dir != Direction::from_ints(-1, 0) {
        return Err(Error::Contract(
            "the left solver requires leader direction (-1, 0)".into(),
        ));
    }
    let prep = Prep::build(instance)?;
    let m = prep.m;
    let cand: Vec<Vec<u16>> = (0..m + 2)
        .map(|a| {
            if prep.is_dummy(a) {
                Vec::new()
            } else {
                prep.e_pts.row(a).iter_ones().map(|q| q as u16).collect()
            }
        })
        .collect();
    let topmost: Vec<Option<u16>> = (0..m)
        .map(|p| prep.e_pts.row(p).iter_ones().max().map(|q| q as u16))
        .collect();
    let mut dp = Dp {
        prep: &prep,
        cand,
        topmost,
        cells: vec![None; (m + 2) * (m + 2)],
        dp_cells: 0,
    };

    // anchors in ascending frame-ordinate rank; cells ordered by slab size
    let mut pairs: Vec<(AnchorId, AnchorId, usize)> = Vec::new();
    let anchors_low: Vec<AnchorId> = std::iter::once(prep.bottom_dummy())
        .chain(0..m)
        .collect();
    for &ell in &anchors_low {
        for u in 0..m + 2 {
            if u == prep.bottom_dummy() || prep.fy_rank(ell) >= prep.fy_rank(u) {
                continue;
            }
            pairs.push((ell, u, prep.s_points(ell, u).len()));
        }
    }
    pairs.sort_by_key(|&(ell, u, len)| (len, ell, u));
    for &(ell, u, _) in &pairs {
        let base = prep.pair_base(ell, u);
        dp.fill_cell(ell, u, &base);
    }

    let root = dp.pair_id(prep.bottom_dummy(), prep.top_dummy());
    let root_val = dp.cells[root].as_ref().unwrap()[0].0;
    assert!(root_val >= 0, "all-external labeling is always feasible");

    // reconstruct the witness
    let mut internal: Vec<u16> = Vec::new();
    let mut stack = vec![(prep.bottom_dummy(), prep.top_dummy(), 0u16)];
    while let Some((ell, u, r_idx)) = stack.pop() {
        let cell = dp.cells[dp.pair_id(ell, u)].as_ref().unwrap()[r_idx as usize];
        match cell.1 {
            Back::Dead => unreachable!("reconstruction entered a dead cell"),
            Back::Leaf => internal.extend(prep.s_points(ell, u)),
            Back::Cut { p, r_child } => {
                let cut_fx = prep.fxd[p as usize];
                internal.extend(
                    prep.s_points(ell, u)
                        .into_iter()
                        .filter(|&q| prep.fxd[q as usize] > cut_fx),
                );
                stack.push((ell, p as usize, r_idx));
                stack.push((p as usize, u, r_child));
            }
        }
    }
    assert_eq!(root_val as usize, internal.len());
    let stats = SolveStats {
        dp_cells: dp.dp_cells,
        configs: 0,
        delta: 0,
    };
    Ok(prep.finish(&internal, stats))
}

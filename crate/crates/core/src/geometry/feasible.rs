//! Exact feasibility of small systems of linear inequalities in two
//! variables, by Fourier–Motzkin elimination.
//!
//! Strict and non-strict constraints mix freely; eliminating a variable
//! combines a lower and an upper bound into a constraint that is strict when
//! either parent is. The influence-region tests reduce to a handful of these
//! systems, so no effort is spent on anything beyond correctness.

use super::scalar::Scalar;

/// `a*x + b*y < c` (strict) or `<= c`.
#[derive(Debug, Clone)]
pub struct LinCon {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub strict: bool,
}

impl LinCon {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, strict: bool) -> Self {
        LinCon { a, b, c, strict }
    }
}

/// One-variable constraint `b*y < c` / `<= c`.
#[derive(Debug, Clone)]
struct Con1 {
    b: Scalar,
    c: Scalar,
    strict: bool,
}

fn relation_holds(c: &Scalar, strict: bool) -> bool {
    // After eliminating both variables a constraint reads `0 < c` or `0 <= c`.
    if strict {
        c.is_positive()
    } else {
        !c.is_negative()
    }
}

/// True iff some rational point satisfies every constraint.
pub fn feasible(cons: &[LinCon]) -> bool {
    let mut ones: Vec<Con1> = Vec::new();
    let mut uppers: Vec<&LinCon> = Vec::new();
    let mut lowers: Vec<&LinCon> = Vec::new();
    for con in cons {
        if con.a.is_zero() {
            ones.push(Con1 {
                b: con.b.clone(),
                c: con.c.clone(),
                strict: con.strict,
            });
        } else if con.a.is_positive() {
            uppers.push(con);
        } else {
            lowers.push(con);
        }
    }
    // x is bounded above by each upper, below by each lower; a pair is
    // compatible iff lower bound <= upper bound, which eliminates x.
    for up in &uppers {
        for lo in &lowers {
            // up: a1 x + b1 y <= c1 (a1 > 0); lo: a2 x + b2 y <= c2 (a2 < 0).
            // (c2 - b2 y)/a2 <= (c1 - b1 y)/a1  =>  (a1 b2 - a2 b1) y <= a1 c2 - a2 c1.
            let b = &up.a * &lo.b - &lo.a * &up.b;
            let c = &up.a * &lo.c - &lo.a * &up.c;
            ones.push(Con1 {
                b,
                c,
                strict: up.strict || lo.strict,
            });
        }
    }

    let mut rels: Vec<(Scalar, bool)> = Vec::new();
    let mut u1: Vec<&Con1> = Vec::new();
    let mut l1: Vec<&Con1> = Vec::new();
    for con in &ones {
        if con.b.is_zero() {
            rels.push((con.c.clone(), con.strict));
        } else if con.b.is_positive() {
            u1.push(con);
        } else {
            l1.push(con);
        }
    }
    for up in &u1 {
        for lo in &l1 {
            let c = &up.b * &lo.c - &lo.b * &up.c;
            rels.push((c, up.strict || lo.strict));
        }
    }
    rels.iter().all(|(c, s)| relation_holds(c, *s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn con(a: i64, b: i64, c: i64, strict: bool) -> LinCon {
        LinCon::new(
            Scalar::from_int(a),
            Scalar::from_int(b),
            Scalar::from_int(c),
            strict,
        )
    }

    #[test]
    fn open_square() {
        // 0 < x < 1, 0 < y < 1
        let sys = vec![
            con(1, 0, 1, true),
            con(-1, 0, 0, true),
            con(0, 1, 1, true),
            con(0, -1, 0, true),
        ];
        assert!(feasible(&sys));
    }

    #[test]
    fn empty_open_strip() {
        // x < 0 and x > 0
        let sys = vec![con(1, 0, 0, true), con(-1, 0, 0, true)];
        assert!(!feasible(&sys));
    }

    #[test]
    fn strictness_matters() {
        // x <= 0 and x >= 0 meet only at x = 0
        let closed = vec![con(1, 0, 0, false), con(-1, 0, 0, false)];
        assert!(feasible(&closed));
        let half_open = vec![con(1, 0, 0, true), con(-1, 0, 0, false)];
        assert!(!feasible(&half_open));
    }

    #[test]
    fn unbounded_wedge() {
        // y > x, y > -x: open upward wedge, feasible and unbounded
        let sys = vec![con(1, -1, 0, true), con(-1, -1, 0, true)];
        assert!(feasible(&sys));
    }

    #[test]
    fn thin_diagonal() {
        // x + y = 1 exactly intersected with x > 0, y > 0: feasible
        let sys = vec![
            con(1, 1, 1, false),
            con(-1, -1, -1, false),
            con(-1, 0, 0, true),
            con(0, -1, 0, true),
        ];
        assert!(feasible(&sys));
        // and additionally x + y < 1: infeasible
        let mut sys2 = sys;
        sys2.push(con(1, 1, 1, true));
        assert!(!feasible(&sys2));
    }
}

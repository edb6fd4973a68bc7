mod common;

use std::collections::BTreeSet;

use tightsets::certify::verify_tight;
use tightsets::quadric::polar_form;
use tightsets::quotient::{search_tight, tight_condition_residual, Selection};
use tightsets::GroupLabel;

use common::solve;

/// Quotient matrix recomputed from the polar form, one row per class from its
/// smallest member.
fn quotient_by_polar_form(s: &common::Solved) -> Vec<Vec<i64>> {
    let (f, quad) = (&s.space.field, &s.space.quadric);
    let pts = quad.points(f);
    let k = s.part.num_classes();
    (0..k)
        .map(|c| {
            let r = s.part.representative(c);
            let mut row = vec![0i64; k];
            for (j, p) in pts.iter().enumerate() {
                if j != r && polar_form(f, (pts[r].x, pts[r].y), (p.x, p.y)).is_zero() {
                    row[s.part.class_of(j)] += 1;
                }
            }
            row
        })
        .collect()
}

/// All 12-subsets of the 24 free classes, checked against the eigenvector
/// condition `B s = (q^2-1) s + x(q+1) 1`.
fn brute_force(b: &[Vec<i64>], free: &[usize], take: usize, q: i64, x: i64) -> BTreeSet<Vec<usize>> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        b: &[Vec<i64>],
        free: &[usize],
        start: usize,
        left: usize,
        acc: &mut Vec<i64>,
        chosen: &mut Vec<usize>,
        q: i64,
        x: i64,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if left == 0 {
            let ok = (0..b.len()).all(|i| {
                let s_i = chosen.contains(&i) as i64;
                acc[i] == (q * q - 1) * s_i + x * (q + 1)
            });
            if ok {
                out.insert(chosen.clone());
            }
            return;
        }
        for t in start..=free.len() - left {
            let c = free[t];
            for i in 0..b.len() {
                acc[i] += b[i][c];
            }
            chosen.push(c);
            rec(b, free, t + 1, left - 1, acc, chosen, q, x, out);
            chosen.pop();
            for i in 0..b.len() {
                acc[i] -= b[i][c];
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut acc = vec![0i64; b.len()];
    rec(b, free, 0, take, &mut acc, &mut Vec::new(), q, x, &mut out);
    out
}

#[test]
fn pruned_search_matches_brute_force_q5() {
    let s = solve(5, GroupLabel::C);
    let b = quotient_by_polar_form(&s);
    for (i, row) in b.iter().enumerate() {
        assert_eq!(row.iter().map(|&v| v as u64).collect::<Vec<_>>(), s.b.entries[i]);
        assert_eq!(row.iter().sum::<i64>(), 180);
    }
    let free: Vec<usize> = (0..26).filter(|c| !s.forced.contains(c)).collect();
    assert_eq!(free.len(), 24);
    let brute = brute_force(&b, &free, 12, 5, 12);
    let pruned: BTreeSet<Vec<usize>> = search_tight(&s.b, 12, &s.forced)
        .unwrap()
        .iter()
        .map(Selection::classes)
        .collect();
    assert!(!brute.is_empty());
    assert_eq!(brute, pruned);
}

#[test]
fn solutions_have_zero_residual_and_pass_full_scan() {
    for (q, group) in [(5, GroupLabel::C), (9, GroupLabel::G)] {
        let s = solve(q, group);
        let (f, quad) = (&s.space.field, &s.space.quadric);
        let sels = search_tight(&s.b, s.x, &s.forced).unwrap();
        assert!(!sels.is_empty());
        for (sel, set) in sels.iter().zip(&s.sets) {
            assert!(tight_condition_residual(&s.b, sel, s.x).iter().all(|&r| r == 0));
            assert!(verify_tight(f, quad, set, s.x).passed());
            assert_eq!(sel.parameter(q, &s.b.sizes), Some(s.x));
        }
    }
}

/// With the plane classes forced out the free classes carry parameter
/// `q^2 + 1 - 2`, so complements map solutions for `x` to `q^2 - 1 - x`.
#[test]
fn complement_closure_of_solutions() {
    for (q, group) in [(5, GroupLabel::C), (9, GroupLabel::G)] {
        let s = solve(q, group);
        let x = s.x;
        let sols: BTreeSet<Selection> = search_tight(&s.b, x, &s.forced).unwrap().into_iter().collect();
        let other: BTreeSet<Selection> = search_tight(&s.b, q * q - 1 - x, &s.forced)
            .unwrap()
            .into_iter()
            .collect();
        let flipped: BTreeSet<Selection> = sols.iter().map(|s2| s2.complement(&s.forced)).collect();
        assert_eq!(flipped, other);
    }
    // Unforced, with a parameter that is not self-complementary.
    let s = solve(5, GroupLabel::C);
    let a: BTreeSet<Selection> = search_tight(&s.b, 2, &[]).unwrap().into_iter().collect();
    let b: BTreeSet<Selection> = search_tight(&s.b, 24, &[]).unwrap().into_iter().collect();
    assert!(!a.is_empty());
    assert_eq!(a.iter().map(|x| x.complement(&[])).collect::<BTreeSet<_>>(), b);
}

#[test]
fn small_parameters_have_no_solutions_q5() {
    let s = solve(5, GroupLabel::C);
    for x in 3..=5 {
        assert!(search_tight(&s.b, x, &s.forced).unwrap().is_empty(), "x = {x}");
    }
}

#[test]
fn search_is_deterministic() {
    let a = solve(5, GroupLabel::C);
    let b = solve(5, GroupLabel::C);
    assert_eq!(a.sets, b.sets);
}

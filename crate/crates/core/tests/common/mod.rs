#![allow(dead_code)]

use std::collections::HashSet;

use tightsets::pg::{self, PgLine, Vec4};
use tightsets::quotient::{lift_selection, quotient_matrix, search_tight};
use tightsets::{FieldTable, GroupLabel, OrbitPartition, QuotientMatrix, Space};

pub struct Solved {
    pub space: Space,
    pub part: OrbitPartition,
    pub b: QuotientMatrix,
    pub forced: Vec<usize>,
    pub x: u64,
    pub sets: Vec<Vec<usize>>,
}

/// Runs the default search: `x = (q^2-1)/2`, plane classes forced out.
pub fn solve(q: u64, group: GroupLabel) -> Solved {
    let space = Space::new(q).unwrap();
    let part = match group {
        GroupLabel::C => space.c_partition(true).unwrap(),
        GroupLabel::G => space.g_partition().unwrap(),
    };
    let b = quotient_matrix(&space.field, &space.quadric, &part).unwrap();
    let forced = space.plane_classes(&part).to_vec();
    let x = (q * q - 1) / 2;
    let sels = search_tight(&b, x, &forced).unwrap();
    let sets = sels.iter().map(|s| lift_selection(s, &part)).collect();
    Solved {
        space,
        part,
        b,
        forced,
        x,
        sets,
    }
}

/// Line-meeting counts by brute force: for each line of `PG(3,q)` the number
/// of other lines of `set` sharing a point with it. Returns the verdict of the
/// Cameron-Liebler count condition.
pub fn cl_oracle(f: &FieldTable, set: &[PgLine], x: u64) -> bool {
    let q = f.q();
    let idx = pg::PointIndex::new(f);
    let pts = |l: &PgLine| -> HashSet<usize> { l.points(f).iter().map(|p| idx.index(f, p)).collect() };
    let members: Vec<HashSet<usize>> = set.iter().map(pts).collect();
    let in_set: HashSet<PgLine> = set.iter().copied().collect();
    pg::all_lines(f).iter().all(|l| {
        let own = pts(l);
        let meeting = set
            .iter()
            .zip(&members)
            .filter(|(m, mp)| *m != l && !own.is_disjoint(mp))
            .count() as u64;
        let expected = if in_set.contains(l) { (q + 1) * x + q * q - 1 } else { (q + 1) * x };
        meeting == expected
    })
}

pub fn point_set(f: &FieldTable, l: &PgLine) -> Vec<Vec4> {
    l.points(f)
}

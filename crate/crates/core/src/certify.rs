//! Independent verification of candidate sets.
//!
//! [`verify_tight`] works on the quadric with the polar form, and
//! [`verify_cl_counts`] works on `PG(3,q)` incidences. Neither uses orbit or
//! quotient data, so they check the search rather than repeat it.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::FieldTable;
use crate::pg::{self, PgLine, PointIndex};
use crate::quadric::{Quadric, QuadricPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Quadric point index or line index, depending on the check.
    pub index: usize,
    pub member: bool,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub x: u64,
    pub expected_member: u64,
    pub expected_nonmember: u64,
    /// Set when the check could not run (e.g. wrong cardinality).
    pub failure: Option<String>,
    /// The first violations, in index order.
    pub violations: Vec<Violation>,
    pub num_violations: usize,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.num_violations == 0
    }

    fn new(x: u64, member: u64, nonmember: u64) -> Self {
        CountReport {
            x,
            expected_member: member,
            expected_nonmember: nonmember,
            failure: None,
            violations: Vec::new(),
            num_violations: 0,
        }
    }

    fn collect(&mut self, mut all: Vec<Violation>) {
        const KEEP: usize = 32;
        self.num_violations = all.len();
        all.truncate(KEEP);
        self.violations = all;
    }
}

/// Checks `|P^perp ∩ T| = x(q+1) + q^2` for `P` in `T` and `x(q+1)` otherwise,
/// scanning every quadric point against every member of `T`.
pub fn verify_tight(f: &FieldTable, quad: &Quadric, set: &[usize], x: u64) -> CountReport {
    let q = f.q();
    let member = x * (q + 1) + q * q;
    let nonmember = x * (q + 1);
    let mut report = CountReport::new(x, member, nonmember);
    let m = q * q + q + 1;
    let distinct: HashSet<usize> = set.iter().copied().collect();
    if distinct.len() as u64 != x * m || distinct.len() != set.len() {
        report.failure = Some(format!(
            "set has {} points ({} distinct), an {x}-tight set has {}",
            set.len(),
            distinct.len(),
            x * m
        ));
        return report;
    }
    if let Some(&bad) = set.iter().find(|&&i| i >= quad.len()) {
        report.failure = Some(format!("point index {bad} out of range"));
        return report;
    }
    let mut in_set = vec![false; quad.len()];
    for &i in set {
        in_set[i] = true;
    }
    let members: Vec<QuadricPoint> = set.iter().map(|&i| quad.point(f, i)).collect();
    let violations: Vec<Violation> = (0..quad.len())
        .into_par_iter()
        .filter_map(|i| {
            let p = quad.point(f, i);
            // collinear iff T(px * by) == T(-py * bx)
            let neg_py = f.neg(p.y);
            let count = members
                .iter()
                .filter(|b| f.trace_mul(p.x, b.y) == f.trace_mul(neg_py, b.x))
                .count() as u64;
            let expected = if in_set[i] { member } else { nonmember };
            (count != expected).then_some(Violation {
                index: i,
                member: in_set[i],
                expected,
                actual: count,
            })
        })
        .collect();
    report.collect(violations);
    report
}

/// Checks that every line meets `(q+1)x + q^2 - 1` other lines of `L` if it is
/// in `L`, and `(q+1)x` otherwise.
///
/// A line `l` meets each other line of `L` in exactly one point when they
/// meet, so the count is the sum over the points `X` of `l` of the number of
/// lines of `L` through `X`, minus `q + 1` when `l` itself is in `L`.
/// Violation indices refer to [`pg::all_lines`].
pub fn verify_cl_counts(f: &FieldTable, lines: &[PgLine], x: u64) -> CountReport {
    let q = f.q();
    let member = (q + 1) * x + q * q - 1;
    let nonmember = (q + 1) * x;
    let mut report = CountReport::new(x, member, nonmember);
    let set: HashSet<PgLine> = lines.iter().copied().collect();
    if set.len() != lines.len() {
        report.failure = Some("line list has duplicates".into());
        return report;
    }
    let idx = PointIndex::new(f);
    let mut degree = vec![0u64; idx.len()];
    for l in lines {
        for pt in l.points(f) {
            degree[idx.index(f, &pt)] += 1;
        }
    }
    let universe = pg::all_lines(f);
    let violations: Vec<Violation> = universe
        .par_iter()
        .enumerate()
        .filter_map(|(i, l)| {
            let is_member = set.contains(l);
            let through: u64 = l.points(f).iter().map(|pt| degree[idx.index(f, pt)]).sum();
            let count = through - if is_member { q + 1 } else { 0 };
            let expected = if is_member { member } else { nonmember };
            (count != expected).then_some(Violation {
                index: i,
                member: is_member,
                expected,
                actual: count,
            })
        })
        .collect();
    report.collect(violations);
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub x: u64,
    pub seed: u64,
    /// `|S ∩ L|` for each spread, the regular spread first.
    pub intersections: Vec<u64>,
}

impl SpreadReport {
    pub fn passed(&self) -> bool {
        self.intersections.iter().all(|&n| n == self.x)
    }
}

/// The regular spread followed by `n_spreads - 1` images of it under seeded
/// random elements of `PGL(4,q)`.
pub fn spreads(f: &FieldTable, n_spreads: usize, seed: u64) -> Vec<Vec<PgLine>> {
    let base = pg::regular_spread(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_spreads);
    if n_spreads > 0 {
        out.push(base.clone());
    }
    for _ in 1..n_spreads {
        let m = pg::random_invertible(f, &mut rng);
        out.push(base.iter().map(|l| l.transform(f, &m)).collect());
    }
    out
}

/// Checks `|S ∩ L| = x` for each generated spread `S`.
pub fn verify_spreads(
    f: &FieldTable,
    lines: &[PgLine],
    x: u64,
    n_spreads: usize,
    seed: u64,
) -> SpreadReport {
    let set: HashSet<PgLine> = lines.iter().copied().collect();
    let intersections = spreads(f, n_spreads, seed)
        .iter()
        .map(|s| s.iter().filter(|l| set.contains(l)).count() as u64)
        .collect();
    SpreadReport {
        x,
        seed,
        intersections,
    }
}

/// Lines of `PG(3,q)` corresponding to a set of quadric points.
pub fn lines_of(f: &FieldTable, quad: &Quadric, set: &[usize]) -> Vec<PgLine> {
    set.iter().map(|&i| quad.klein_inverse(f, i)).collect()
}

/// Quadric points not in `set`.
pub fn complement(quad: &Quadric, set: &[usize]) -> Vec<usize> {
    let s: HashSet<usize> = set.iter().copied().collect();
    (0..quad.len()).filter(|i| !s.contains(i)).collect()
}

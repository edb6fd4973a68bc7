//! The tactical decomposition of `PG(3,q)` induced by a line class `L1` that
//! avoids `star(P)` and `line(pi)`, and the affine sets it cuts out on planes.
//!
//! `P = (1:0:0:0)` and `pi : X0 = 0`; under the Klein map `star(P)` is
//! `pi_1` and `line(pi)` is `pi_2` on the quadric.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::FieldTable;
use crate::pg::{self, PgLine, PgPlane, PointIndex, Vec4};
use crate::quadric::Quadric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointClass {
    InPi,
    IsP,
    P1,
    P2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineClass {
    LinePi,
    StarP,
    L1,
    L2,
}

pub const POINT_CLASSES: [PointClass; 4] =
    [PointClass::InPi, PointClass::IsP, PointClass::P1, PointClass::P2];
pub const LINE_CLASSES: [LineClass; 4] =
    [LineClass::LinePi, LineClass::StarP, LineClass::L1, LineClass::L2];

/// Context for one line class `L1`, given as quadric point indices.
pub struct Decomposition<'a> {
    f: &'a FieldTable,
    quad: &'a Quadric,
    idx: PointIndex,
    in_l1: Vec<bool>,
    l1_lines: Vec<PgLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClasses {
    /// Class per point of `PG(3,q)` in [`PointIndex`] order; `None` when the
    /// degree spectrum off `pi ∪ {P}` is not two-valued.
    pub classes: Option<Vec<PointClass>>,
    /// Observed `L1`-degrees off `pi ∪ {P}` with their multiplicities.
    pub degree_spectrum: BTreeMap<u64, u64>,
}

impl PointClasses {
    /// `(d1, d2)` with `d1 < d2` when exactly two degrees occur.
    pub fn thresholds(&self) -> Option<(u64, u64)> {
        let keys: Vec<u64> = self.degree_spectrum.keys().copied().collect();
        match keys.as_slice() {
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn count(&self, c: PointClass) -> usize {
        self.classes
            .as_ref()
            .map_or(0, |v| v.iter().filter(|&&x| x == c).count())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneProfiles {
    /// Number of `L1` lines in each plane not through `P`, keyed by count,
    /// with the number of planes showing it.
    pub l1_spectrum: BTreeMap<u64, u64>,
    /// Planes where `1 + |L1 lines| + |L2 lines| != q^2+q+1`, or where the
    /// plane holds a line of `star(P)` or not exactly one line of `line(pi)`.
    pub bad_planes: Vec<Vec4>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticalCell {
    pub point_class: PointClass,
    pub line_class: LineClass,
    /// `None` when the count is not constant over the class.
    pub value: Option<u64>,
    /// Distinct observed values when not constant.
    pub observed: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticalReport {
    /// Lines of each class through a point, per point class.
    pub lines_through_point: Vec<TacticalCell>,
    /// Points of each class on a line, per line class.
    pub points_on_line: Vec<TacticalCell>,
    pub point_class_sizes: BTreeMap<PointClass, u64>,
    pub line_class_sizes: BTreeMap<LineClass, u64>,
}

impl TacticalReport {
    pub fn passed(&self) -> bool {
        self.lines_through_point
            .iter()
            .chain(&self.points_on_line)
            .all(|c| c.value.is_some())
    }

    pub fn cell(&self, pc: PointClass, lc: LineClass) -> Option<u64> {
        self.lines_through_point
            .iter()
            .find(|c| c.point_class == pc && c.line_class == lc)
            .and_then(|c| c.value)
    }

    pub fn dual_cell(&self, pc: PointClass, lc: LineClass) -> Option<u64> {
        self.points_on_line
            .iter()
            .find(|c| c.point_class == pc && c.line_class == lc)
            .and_then(|c| c.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSet {
    pub plane: Vec4,
    /// `plane ∩ pi`.
    pub infinite_line: PgLine,
    /// `plane ∩ P1`, all affine.
    pub points: Vec<Vec4>,
    /// Intersection size with affine lines, mapped to how many lines show it.
    pub spectrum: BTreeMap<u64, u64>,
}

impl AffineSet {
    /// `(m, n)` with `m < n` if exactly two sizes occur.
    pub fn kind(&self) -> Option<(u64, u64)> {
        let keys: Vec<u64> = self.spectrum.keys().copied().collect();
        match keys.as_slice() {
            [m, n] => Some((*m, *n)),
            _ => None,
        }
    }

    pub fn is_two_intersection(&self) -> bool {
        self.kind().is_some()
    }

    /// The standard counts for a set of type `(m, n)` in `AG(2,q)` with `a`
    /// lines of size `m` and `b` of size `n`:
    /// `a + b = q^2 + q`, `|K|(q+1) = ma + nb`,
    /// `|K|(|K|-1) = m(m-1)a + n(n-1)b`.
    pub fn counting_identities_hold(&self, q: u64) -> bool {
        let Some((m, n)) = self.kind() else {
            return false;
        };
        let a = self.spectrum[&m];
        let b = self.spectrum[&n];
        let k = self.points.len() as u64;
        a + b == q * q + q
            && k * (q + 1) == m * a + n * b
            && k * k.saturating_sub(1) == m * m.saturating_sub(1) * a + n * n.saturating_sub(1) * b
    }
}

impl<'a> Decomposition<'a> {
    pub fn new(f: &'a FieldTable, quad: &'a Quadric, l1: &[usize]) -> Self {
        let mut in_l1 = vec![false; quad.len()];
        for &i in l1 {
            in_l1[i] = true;
        }
        let l1_lines = l1.iter().map(|&i| quad.klein_inverse(f, i)).collect();
        Decomposition {
            f,
            quad,
            idx: PointIndex::new(f),
            in_l1,
            l1_lines,
        }
    }

    /// `L1` must avoid `pi_1` (star of P) and `pi_2` (lines of pi).
    pub fn avoids_planes(&self) -> bool {
        !self.quad.pi1().chain(self.quad.pi2()).any(|i| self.in_l1[i])
    }

    fn line_class(&self, quad_idx: usize) -> LineClass {
        if self.in_l1[quad_idx] {
            LineClass::L1
        } else if quad_idx >= self.quad.pi2_start() {
            LineClass::LinePi
        } else if quad_idx.is_multiple_of((self.quad.q() * self.quad.q()) as usize) {
            LineClass::StarP
        } else {
            LineClass::L2
        }
    }

    fn is_in_pi(&self, pt: usize) -> bool {
        let q = self.f.q() as usize;
        pt >= q * q * q
    }

    /// Number of `L1` lines through each point of `PG(3,q)`.
    pub fn line_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.idx.len()];
        for l in &self.l1_lines {
            for pt in l.points(self.f) {
                deg[self.idx.index(self.f, &pt)] += 1;
            }
        }
        deg
    }

    /// Splits the points off `pi ∪ {P}` by `L1`-degree; the lower degree is `P1`.
    pub fn point_classes(&self) -> PointClasses {
        let deg = self.line_degrees();
        let mut spectrum = BTreeMap::new();
        for (i, &d) in deg.iter().enumerate() {
            if i != 0 && !self.is_in_pi(i) {
                *spectrum.entry(d).or_insert(0) += 1;
            }
        }
        let keys: Vec<u64> = spectrum.keys().copied().collect();
        let classes = match keys.as_slice() {
            [lo, _hi] => Some(
                deg.iter()
                    .enumerate()
                    .map(|(i, &d)| {
                        if i == 0 {
                            PointClass::IsP
                        } else if self.is_in_pi(i) {
                            PointClass::InPi
                        } else if d == *lo {
                            PointClass::P1
                        } else {
                            PointClass::P2
                        }
                    })
                    .collect(),
            ),
            _ => None,
        };
        PointClasses {
            classes,
            degree_spectrum: spectrum,
        }
    }

    /// Line counts of the `q^3 - 1` planes other than `pi` not through `P`.
    pub fn plane_profiles(&self) -> PlaneProfiles {
        let q = self.f.q();
        let planes = q * q * q;
        let mut l1_count = vec![0u64; planes as usize];
        let mut star_count = vec![0u64; planes as usize];
        let mut linepi_count = vec![0u64; planes as usize];
        for i in 0..self.quad.len() {
            let cls = self.line_class(i);
            let counter = match cls {
                LineClass::L1 => &mut l1_count,
                LineClass::StarP => &mut star_count,
                LineClass::LinePi => &mut linepi_count,
                LineClass::L2 => continue,
            };
            for pl in self.quad.klein_inverse(self.f, i).planes(self.f) {
                if !pl.0[0].is_zero() {
                    counter[self.idx.index(self.f, &pl.0)] += 1;
                }
            }
        }
        let mut l1_spectrum = BTreeMap::new();
        let mut bad_planes = Vec::new();
        let total = q * q + q + 1;
        // index 0 is pi itself
        for p in 1..planes as usize {
            *l1_spectrum.entry(l1_count[p]).or_insert(0) += 1;
            // L2 lines fill the rest, so the identity holds iff the
            // line(pi)/star(P) counts are 1 and 0.
            let l2 = total - 1 - l1_count[p];
            if linepi_count[p] != 1 || star_count[p] != 0 || 1 + l1_count[p] + l2 != total {
                bad_planes.push(self.idx.point(self.f, p));
            }
        }
        PlaneProfiles {
            l1_spectrum,
            bad_planes,
        }
    }

    /// Both incidence tables of the 4 x 4 decomposition.
    pub fn tactical_check(&self, classes: &[PointClass]) -> TacticalReport {
        let f = self.f;
        let n_pts = self.idx.len();
        let pc_pos = |c: PointClass| POINT_CLASSES.iter().position(|&x| x == c).unwrap();
        let lc_pos = |c: LineClass| LINE_CLASSES.iter().position(|&x| x == c).unwrap();

        // Per line: its class and the number of points of each point class.
        let per_line: Vec<(usize, [u64; 4], Vec<usize>)> = (0..self.quad.len())
            .into_par_iter()
            .map(|i| {
                let lc = lc_pos(self.line_class(i));
                let pts: Vec<usize> = self
                    .quad
                    .klein_inverse(f, i)
                    .points(f)
                    .iter()
                    .map(|p| self.idx.index(f, p))
                    .collect();
                let mut counts = [0u64; 4];
                for &p in &pts {
                    counts[pc_pos(classes[p])] += 1;
                }
                (lc, counts, pts)
            })
            .collect();

        let mut through = vec![[0u64; 4]; n_pts];
        let mut line_sizes = BTreeMap::new();
        let mut on_line: Vec<Vec<BTreeSet<u64>>> = vec![vec![BTreeSet::new(); 4]; 4];
        for (lc, counts, pts) in &per_line {
            *line_sizes.entry(LINE_CLASSES[*lc]).or_insert(0) += 1;
            for &p in pts {
                through[p][*lc] += 1;
            }
            for pc in 0..4 {
                on_line[*lc][pc].insert(counts[pc]);
            }
        }
        let mut through_obs: Vec<Vec<BTreeSet<u64>>> = vec![vec![BTreeSet::new(); 4]; 4];
        let mut point_sizes = BTreeMap::new();
        for (p, row) in through.iter().enumerate() {
            let pc = pc_pos(classes[p]);
            *point_sizes.entry(classes[p]).or_insert(0) += 1;
            for lc in 0..4 {
                through_obs[pc][lc].insert(row[lc]);
            }
        }
        let cell = |pc: usize, lc: usize, obs: &BTreeSet<u64>| TacticalCell {
            point_class: POINT_CLASSES[pc],
            line_class: LINE_CLASSES[lc],
            value: (obs.len() == 1).then(|| *obs.iter().next().unwrap()),
            observed: if obs.len() == 1 {
                Vec::new()
            } else {
                obs.iter().copied().collect()
            },
        };
        let mut lines_through_point = Vec::new();
        let mut points_on_line = Vec::new();
        for pc in 0..4 {
            for lc in 0..4 {
                lines_through_point.push(cell(pc, lc, &through_obs[pc][lc]));
                points_on_line.push(cell(pc, lc, &on_line[lc][pc]));
            }
        }
        TacticalReport {
            lines_through_point,
            points_on_line,
            point_class_sizes: point_sizes,
            line_class_sizes: line_sizes,
        }
    }

    /// `K = plane ∩ P1` checked against the `q^2 + q` affine lines of the plane.
    pub fn extract_affine(&self, classes: &[PointClass], plane: &PgPlane) -> AffineSet {
        let f = self.f;
        let pts = pg::points_of_plane(f, plane);
        let in_k: HashSet<Vec4> = pts
            .iter()
            .filter(|p| classes[self.idx.index(f, p)] == PointClass::P1)
            .copied()
            .collect();
        let pi = pg::distinguished_plane();
        let mut spectrum = BTreeMap::new();
        let mut infinite = None;
        for l in pg::lines_in_plane(f, plane) {
            let lp = l.points(f);
            if lp.iter().all(|p| pi.contains(f, &pg::PgPoint(*p))) {
                infinite = Some(l);
                continue;
            }
            let c = lp.iter().filter(|p| in_k.contains(*p)).count() as u64;
            *spectrum.entry(c).or_insert(0) += 1;
        }
        let mut points: Vec<Vec4> = in_k.into_iter().collect();
        points.sort_by_key(|p| self.idx.index(f, p));
        AffineSet {
            plane: plane.0,
            infinite_line: infinite.expect("plane differs from pi"),
            points,
            spectrum,
        }
    }
}

/// Admissible planes (`!= pi`, not through `P`) in index order.
pub fn admissible_planes(f: &FieldTable) -> Vec<PgPlane> {
    let pi = pg::distinguished_plane();
    pg::planes_missing_distinguished_point(f)
        .into_iter()
        .filter(|pl| *pl != pi)
        .collect()
}

//! The projective space `PG(3,q)` over the subfield `F` of a [`FieldTable`].
//!
//! Points and planes are normalized 4-vectors (first nonzero entry 1); lines
//! carry normalized Plücker coordinates `(p01, p02, p03, p23, p31, p12)`.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};

pub type Vec4 = [Elem; 4];

/// Pairs `(i, j)` in Plücker order.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgPoint(pub Vec4);

/// A plane, stored by the normalized coefficients of its linear equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgPlane(pub Vec4);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgLine {
    plucker: [Elem; 6],
}

/// Scale so the first nonzero entry is 1; `None` for the zero vector.
pub fn normalize<const N: usize>(f: &FieldTable, v: [Elem; N]) -> Option<[Elem; N]> {
    let lead = v.iter().copied().find(|a| !a.is_zero())?;
    let s = f.inv(lead)?;
    Some(v.map(|a| f.mul(a, s)))
}

pub fn dot(f: &FieldTable, a: &Vec4, b: &Vec4) -> Elem {
    (0..4).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(a[i], b[i])))
}

impl PgPoint {
    pub fn new(f: &FieldTable, v: Vec4) -> Option<Self> {
        normalize(f, v).map(PgPoint)
    }
    pub fn coords(&self) -> &Vec4 {
        &self.0
    }
}

impl PgPlane {
    pub fn new(f: &FieldTable, v: Vec4) -> Option<Self> {
        normalize(f, v).map(PgPlane)
    }
    pub fn contains(&self, f: &FieldTable, pt: &PgPoint) -> bool {
        dot(f, &self.0, &pt.0).is_zero()
    }
}

impl PgLine {
    /// Line from (already normalized or not) Plücker coordinates. Does not
    /// check the Plücker relation; see [`PgLine::satisfies_relation`].
    pub fn from_plucker(f: &FieldTable, p: [Elem; 6]) -> Result<Self> {
        normalize(f, p)
            .map(|plucker| PgLine { plucker })
            .ok_or(Error::DegenerateLine)
    }

    /// The line joining two points; errors if they coincide.
    pub fn join(f: &FieldTable, a: &Vec4, b: &Vec4) -> Result<Self> {
        let p = PLUCKER_PAIRS.map(|(i, j)| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])));
        Self::from_plucker(f, p)
    }

    pub fn plucker(&self) -> &[Elem; 6] {
        &self.plucker
    }

    pub fn satisfies_relation(&self, f: &FieldTable) -> bool {
        let p = &self.plucker;
        let s = f.add(
            f.add(f.mul(p[0], p[3]), f.mul(p[1], p[4])),
            f.mul(p[2], p[5]),
        );
        s.is_zero()
    }

    /// Entry `(i, j)` of the skew Plücker matrix `a b^T - b a^T`.
    fn matrix_entry(&self, f: &FieldTable, i: usize, j: usize) -> Elem {
        if i == j {
            return Elem::ZERO;
        }
        let (k, sign) = PLUCKER_PAIRS
            .iter()
            .enumerate()
            .find_map(|(k, &(a, b))| {
                if (a, b) == (i, j) {
                    Some((k, false))
                } else if (b, a) == (i, j) {
                    Some((k, true))
                } else {
                    None
                }
            })
            .expect("pair covered");
        let v = self.plucker[k];
        if sign {
            f.neg(v)
        } else {
            v
        }
    }

    /// Two distinct points spanning the line, read off the columns of the
    /// Plücker matrix.
    pub fn spanning_points(&self, f: &FieldTable) -> (Vec4, Vec4) {
        let cols: Vec<Vec4> = (0..4)
            .map(|c| [0, 1, 2, 3].map(|r| self.matrix_entry(f, r, c)))
            .filter(|v| v.iter().any(|a| !a.is_zero()))
            .collect();
        let a = normalize(f, cols[0]).expect("nonzero column");
        let b = cols[1..]
            .iter()
            .filter_map(|&c| normalize(f, c))
            .find(|c| *c != a)
            .expect("rank-2 Plücker matrix");
        (a, b)
    }

    /// All `q + 1` points of the line, normalized.
    pub fn points(&self, f: &FieldTable) -> Vec<Vec4> {
        let (a, b) = self.spanning_points(f);
        let mut out = vec![b];
        for t in f.subfield_elements() {
            let v = [0, 1, 2, 3].map(|i| f.add(a[i], f.mul(t, b[i])));
            out.push(normalize(f, v).expect("a, b independent"));
        }
        out
    }

    /// Lines meet iff the Plücker bilinear form vanishes.
    pub fn meets(&self, f: &FieldTable, other: &PgLine) -> bool {
        let (p, r) = (&self.plucker, &other.plucker);
        let mut s = Elem::ZERO;
        for k in 0..3 {
            s = f.add(s, f.mul(p[k], r[k + 3]));
            s = f.add(s, f.mul(p[k + 3], r[k]));
        }
        s.is_zero()
    }

    pub fn contains(&self, f: &FieldTable, pt: &Vec4) -> bool {
        let (a, b) = self.spanning_points(f);
        rank4(f, &[a, b, *pt]) == 2
    }

    /// The `q + 1` planes through the line.
    pub fn planes(&self, f: &FieldTable) -> Vec<PgPlane> {
        let (a, b) = self.spanning_points(f);
        let basis = kernel4(f, &[a, b]);
        debug_assert_eq!(basis.len(), 2);
        let (u, w) = (basis[0], basis[1]);
        let mut out = vec![PgPlane::new(f, w).expect("nonzero")];
        for t in f.subfield_elements() {
            let v = [0, 1, 2, 3].map(|i| f.add(u[i], f.mul(t, w[i])));
            out.push(PgPlane::new(f, v).expect("independent"));
        }
        out
    }

    /// Image under `x -> M x`.
    pub fn transform(&self, f: &FieldTable, m: &[[Elem; 4]; 4]) -> PgLine {
        let (a, b) = self.spanning_points(f);
        PgLine::join(f, &apply(f, m, &a), &apply(f, m, &b)).expect("invertible map")
    }
}

pub fn apply(f: &FieldTable, m: &[[Elem; 4]; 4], v: &Vec4) -> Vec4 {
    [0, 1, 2, 3].map(|r| dot(f, &m[r], v))
}

/// Reduced row echelon form of a small list of 4-vectors, with pivot columns.
fn reduce4(f: &FieldTable, vs: &[Vec4]) -> (Vec<Vec4>, Vec<usize>) {
    let mut rows: Vec<Vec4> = vs.to_vec();
    let mut pivots = Vec::new();
    for col in 0..4 {
        let rank = pivots.len();
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]).expect("nonzero pivot");
        let pivot = rows[rank].map(|a| f.mul(a, inv));
        rows[rank] = pivot;
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let c = row[col];
                for k in 0..4 {
                    row[k] = f.sub(row[k], f.mul(c, pivot[k]));
                }
            }
        }
        pivots.push(col);
    }
    (rows, pivots)
}

/// Rank of a small list of 4-vectors.
pub fn rank4(f: &FieldTable, vs: &[Vec4]) -> usize {
    reduce4(f, vs).1.len()
}

/// Basis of `{u : u . v = 0 for all v in vs}`.
pub fn kernel4(f: &FieldTable, vs: &[Vec4]) -> Vec<Vec4> {
    let (rows, pivots) = reduce4(f, vs);
    (0..4)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [Elem::ZERO; 4];
            v[free] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][free]);
            }
            v
        })
        .collect()
}

/// Dense indexing of the `(q^2+1)(q+1)` points of `PG(3,q)`, grouped by the
/// position of the leading 1. The point `(1:0:0:0)` has index 0 and the plane
/// `X0 = 0` is the index range `q^3..`.
#[derive(Clone, Debug)]
pub struct PointIndex {
    q: usize,
}

impl PointIndex {
    pub fn new(f: &FieldTable) -> Self {
        PointIndex { q: f.q() as usize }
    }

    pub fn len(&self) -> usize {
        let q = self.q;
        q * q * q + q * q + q + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn offset(&self, lead: usize) -> usize {
        let q = self.q;
        match lead {
            0 => 0,
            1 => q * q * q,
            2 => q * q * q + q * q,
            _ => q * q * q + q * q + q,
        }
    }

    /// Index of a normalized point.
    pub fn index(&self, f: &FieldTable, v: &Vec4) -> usize {
        let lead = v.iter().position(|a| !a.is_zero()).expect("nonzero point");
        let tail = v[lead + 1..]
            .iter()
            .fold(0, |acc, &a| acc * self.q + f.subfield_index(a));
        self.offset(lead) + tail
    }

    pub fn point(&self, f: &FieldTable, idx: usize) -> Vec4 {
        let sub = f.subfield_elements();
        let lead = (0..4).rev().find(|&l| idx >= self.offset(l)).unwrap();
        let mut rest = idx - self.offset(lead);
        let mut v = [Elem::ZERO; 4];
        v[lead] = Elem::ONE;
        for i in (lead + 1..4).rev() {
            v[i] = sub[rest % self.q];
            rest /= self.q;
        }
        v
    }

    pub fn all(&self, f: &FieldTable) -> Vec<Vec4> {
        (0..self.len()).map(|i| self.point(f, i)).collect()
    }
}

/// The distinguished point `P = (1:0:0:0)`.
pub fn distinguished_point() -> PgPoint {
    PgPoint([Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO])
}

/// The distinguished plane `pi : X0 = 0`.
pub fn distinguished_plane() -> PgPlane {
    PgPlane([Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO])
}

/// Every line of `PG(3,q)`, from the reduced row echelon forms of 2x4 matrices.
pub fn all_lines(f: &FieldTable) -> Vec<PgLine> {
    let sub = f.subfield_elements();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let a_free: Vec<usize> = (i + 1..4).filter(|&c| c != j).collect();
            let b_free: Vec<usize> = (j + 1..4).collect();
            let slots: Vec<(bool, usize)> = a_free
                .iter()
                .map(|&c| (true, c))
                .chain(b_free.iter().map(|&c| (false, c)))
                .collect();
            let total = sub.len().pow(slots.len() as u32);
            for code in 0..total {
                let mut a = [Elem::ZERO; 4];
                let mut b = [Elem::ZERO; 4];
                a[i] = Elem::ONE;
                b[j] = Elem::ONE;
                let mut c = code;
                for &(in_a, col) in &slots {
                    let val = sub[c % sub.len()];
                    c /= sub.len();
                    if in_a {
                        a[col] = val;
                    } else {
                        b[col] = val;
                    }
                }
                out.push((a, b));
            }
        }
    }
    out.into_iter()
        .map(|(a, b)| PgLine::join(f, &a, &b).expect("independent rows"))
        .collect()
}

/// The `q^2 + q + 1` lines through a point.
pub fn lines_through_point(f: &FieldTable, pt: &PgPoint) -> Vec<PgLine> {
    // Lines through P correspond to points of a plane not containing P.
    let lead = pt.0.iter().position(|a| !a.is_zero()).unwrap();
    let mut u = [Elem::ZERO; 4];
    u[lead] = Elem::ONE;
    let plane = PgPlane(u);
    points_of_plane(f, &plane)
        .iter()
        .map(|x| PgLine::join(f, &pt.0, x).expect("P off the plane"))
        .collect()
}

/// The `q^2 + q + 1` points of a plane.
pub fn points_of_plane(f: &FieldTable, plane: &PgPlane) -> Vec<Vec4> {
    let basis = kernel4(f, &[plane.0]);
    let sub = f.subfield_elements();
    let mut out = Vec::new();
    for &c0 in &sub {
        for &c1 in &sub {
            for &c2 in &sub {
                let coeffs = [c0, c1, c2];
                let v = [0, 1, 2, 3].map(|i| {
                    (0..3).fold(Elem::ZERO, |acc, k| f.add(acc, f.mul(coeffs[k], basis[k][i])))
                });
                if let Some(n) = normalize(f, v) {
                    if normalize(f, coeffs) == Some(coeffs) {
                        out.push(n);
                    }
                }
            }
        }
    }
    out
}

/// The `q^2 + q + 1` lines contained in a plane.
pub fn lines_in_plane(f: &FieldTable, plane: &PgPlane) -> Vec<PgLine> {
    let pts = points_of_plane(f, plane);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let a = pts[0];
    // Lines through the first point, then the lines missing it.
    for b in &pts[1..] {
        let l = PgLine::join(f, &a, b).unwrap();
        if seen.insert(l) {
            out.push(l);
        }
    }
    for (i, x) in pts.iter().enumerate().skip(1) {
        for y in &pts[i + 1..] {
            if out.len() == pts.len() {
                return out;
            }
            let l = PgLine::join(f, x, y).unwrap();
            if seen.insert(l) {
                out.push(l);
            }
        }
    }
    out
}

/// The `q^3` planes not through `(1:0:0:0)`, i.e. with `u0 != 0`. None of
/// them is `X0 = 0`.
pub fn planes_missing_distinguished_point(f: &FieldTable) -> Vec<PgPlane> {
    let idx = PointIndex::new(f);
    // Normalized planes with u0 = 1 share the encoding of points with lead 0.
    (0..f.q().pow(3) as usize)
        .map(|i| PgPlane(idx.point(f, i)))
        .collect()
}

/// An irreducible monic quadratic `t^2 - c1 t - c0` over `F`, as `(c0, c1)`.
fn irreducible_quadratic(f: &FieldTable) -> (Elem, Elem) {
    let sub = f.subfield_elements();
    for &c0 in &sub[1..] {
        for &c1 in &sub {
            let has_root = sub
                .iter()
                .any(|&t| f.sub(f.sub(f.mul(t, t), f.mul(c1, t)), c0).is_zero());
            if !has_root {
                return (c0, c1);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// The regular spread: with `K = F[A]` a field of 2x2 matrices of order `q^2`,
/// the lines `{(u, uM) : u in F^2}` for `M in K` together with `{(0, u)}`.
pub fn regular_spread(f: &FieldTable) -> Vec<PgLine> {
    let (c0, c1) = irreducible_quadratic(f);
    // companion matrix of t^2 - c1 t - c0: [[0, 1], [c0, c1]]
    let comp = [[Elem::ZERO, Elem::ONE], [c0, c1]];
    let sub = f.subfield_elements();
    let mut out = Vec::with_capacity(sub.len() * sub.len() + 1);
    for &a in &sub {
        for &b in &sub {
            // M = a I + b A
            let m = |r: usize, c: usize| {
                let id = if r == c { a } else { Elem::ZERO };
                f.add(id, f.mul(b, comp[r][c]))
            };
            let r0 = [Elem::ONE, Elem::ZERO, m(0, 0), m(0, 1)];
            let r1 = [Elem::ZERO, Elem::ONE, m(1, 0), m(1, 1)];
            out.push(PgLine::join(f, &r0, &r1).unwrap());
        }
    }
    let e2 = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
    let e3 = [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE];
    out.push(PgLine::join(f, &e2, &e3).unwrap());
    out
}

/// Uniformly random invertible 4x4 matrix over `F`.
pub fn random_invertible<R: Rng>(f: &FieldTable, rng: &mut R) -> [[Elem; 4]; 4] {
    let sub = f.subfield_elements();
    loop {
        let m = [0; 4].map(|_| [0; 4].map(|_| sub[rng.gen_range(0..sub.len())]));
        if rank4(f, &m) == 4 {
            return m;
        }
    }
}

/// Lookup from normalized Plücker coordinates to a line id.
pub fn line_lookup(lines: &[PgLine]) -> HashMap<PgLine, usize> {
    lines.iter().enumerate().map(|(i, l)| (*l, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_q5() {
        let f = FieldTable::new(5).unwrap();
        let idx = PointIndex::new(&f);
        assert_eq!(idx.len(), 156);
        for i in 0..idx.len() {
            assert_eq!(idx.index(&f, &idx.point(&f, i)), i);
        }
        let lines = all_lines(&f);
        assert_eq!(lines.len(), 806);
        assert_eq!(line_lookup(&lines).len(), 806);
        assert!(lines.iter().all(|l| l.satisfies_relation(&f)));
        assert!(lines.iter().all(|l| l.points(&f).len() == 6));
    }

    #[test]
    fn star_and_pencil() {
        let f = FieldTable::new(5).unwrap();
        let p = distinguished_point();
        let pi = distinguished_plane();
        let star: HashSet<_> = lines_through_point(&f, &p).into_iter().collect();
        let lp: HashSet<_> = lines_in_plane(&f, &pi).into_iter().collect();
        assert_eq!(star.len(), 31);
        assert_eq!(lp.len(), 31);
        assert_eq!(star.intersection(&lp).count(), 0);
        // P in a plane: q + 1 common lines.
        let through_p = PgPlane::new(&f, [Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO]).unwrap();
        let lp2: HashSet<_> = lines_in_plane(&f, &through_p).into_iter().collect();
        assert_eq!(lp2.len(), 31);
        assert_eq!(star.intersection(&lp2).count(), 6);
        assert!(star.iter().all(|l| l.contains(&f, &p.0)));
    }

    #[test]
    fn regular_spread_partitions_points() {
        for q in [5, 9] {
            let f = FieldTable::new(q).unwrap();
            let s = regular_spread(&f);
            assert_eq!(s.len() as u64, q * q + 1);
            let idx = PointIndex::new(&f);
            let mut seen = vec![false; idx.len()];
            for l in &s {
                for pt in l.points(&f) {
                    let i = idx.index(&f, &pt);
                    assert!(!seen[i]);
                    seen[i] = true;
                }
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn planes_through_line() {
        let f = FieldTable::new(5).unwrap();
        for l in all_lines(&f).iter().step_by(37) {
            let planes = l.planes(&f);
            assert_eq!(planes.len(), 6);
            assert_eq!(planes.iter().collect::<HashSet<_>>().len(), 6);
            for pl in planes {
                assert!(l.points(&f).iter().all(|x| pl.contains(&f, &PgPoint(*x))));
            }
        }
    }
}

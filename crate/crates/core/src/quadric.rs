//! The hyperbolic quadric `Q+(5,q)` on `E^2` with quadratic form
//! `Q(x, y) = T(xy)`, and the Klein correspondence with the lines of `PG(3,q)`.
//!
//! Projective points `<(x, y)>` are normalized under `F*` so that the first
//! nonzero coordinate has discrete log in `[0, q^2+q+1)`. Points are indexed
//! without being stored:
//!
//! * `x != 0`: index `log(x) * q^2 + rank(x*y)`, where `rank` is the position
//!   of `x*y` in the sorted list of trace-zero elements (`q^2` of them, zero
//!   first);
//! * `x == 0`: index `(q^2+q+1) * q^2 + log(y)`.
//!
//! Index 0 is `<(1, 0)>`. The plane `pi_1 = {<(x,0)>}` consists of the indices
//! `i * q^2`, and `pi_2 = {<(0,y)>}` is the final block of `q^2+q+1` indices.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::pg::PgLine;

/// A normalized projective point of the quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadricPoint {
    pub x: Elem,
    pub y: Elem,
}

#[derive(Clone, Debug)]
pub struct Quadric {
    q: u64,
    /// `q^2 + q + 1`
    m: u32,
    /// Trace-zero elements of `E`, sorted by raw encoding.
    trace_zero: Vec<Elem>,
    /// `rank[raw(a)]` for trace-zero `a`, `u32::MAX` otherwise.
    rank: Vec<u32>,
    /// Basis `{1, Omega, Omega^2}` and its trace dual.
    basis: [Elem; 3],
    dual: [Elem; 3],
}

impl Quadric {
    pub fn new(f: &FieldTable) -> Self {
        let trace_zero: Vec<Elem> = f.elements().filter(|&a| f.trace(a).is_zero()).collect();
        let mut rank = vec![u32::MAX; f.order() as usize + 1];
        for (i, a) in trace_zero.iter().enumerate() {
            rank[a.raw() as usize] = i as u32;
        }
        let w = f.generator();
        let basis = [Elem::ONE, w, f.mul(w, w)];
        let dual = f.dual_basis(basis).expect("{1, w, w^2} is a basis");
        Quadric {
            q: f.q(),
            m: f.norm_index(),
            trace_zero,
            rank,
            basis,
            dual,
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `(q^2+1)(q^2+q+1)`.
    pub fn len(&self) -> usize {
        self.m as usize * (self.q as usize * self.q as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn q2(&self) -> usize {
        (self.q * self.q) as usize
    }

    /// Start of the `x == 0` block; also the index of `<(0, 1)>`.
    pub fn pi2_start(&self) -> usize {
        self.m as usize * self.q2()
    }

    pub fn point(&self, f: &FieldTable, idx: usize) -> QuadricPoint {
        let start = self.pi2_start();
        if idx >= start {
            let y = f.from_log((idx - start) as u32);
            return QuadricPoint { x: Elem::ZERO, y };
        }
        let q2 = self.q2();
        let i = (idx / q2) as u32;
        let x = f.from_log(i);
        let xy = self.trace_zero[idx % q2];
        let y = f.mul(f.inv(x).unwrap(), xy);
        QuadricPoint { x, y }
    }

    /// Index of `<(x, y)>`; the pair must be nonzero and singular.
    pub fn index_of(&self, f: &FieldTable, x: Elem, y: Elem) -> Result<usize> {
        match x.log() {
            None => {
                let ly = y.log().ok_or_else(|| Error::NotOnQuadric("0, 0".into()))?;
                Ok(self.pi2_start() + (ly % self.m) as usize)
            }
            Some(lx) => {
                let xy = self.normalized_product(f, lx, x, y);
                let r = self.rank[xy.raw() as usize];
                if r == u32::MAX {
                    return Err(Error::NotOnQuadric(format!("{x:?}, {y:?}")));
                }
                Ok((lx % self.m) as usize * self.q2() + r as usize)
            }
        }
    }

    /// `x y s^2`, where `s` in `F*` scales `x` to have log below `q^2+q+1`.
    #[inline]
    fn normalized_product(&self, f: &FieldTable, lx: u32, x: Elem, y: Elem) -> Elem {
        let shift = lx - lx % self.m;
        let s2 = f.from_log(f.order() - (2 * (shift as u64) % f.order() as u64) as u32);
        f.mul(f.mul(x, y), s2)
    }

    /// Same as [`Self::index_of`] for pairs known to be singular.
    #[inline]
    pub fn index_unchecked(&self, f: &FieldTable, x: Elem, y: Elem) -> usize {
        match x.log() {
            None => self.pi2_start() + (y.log().unwrap() % self.m) as usize,
            Some(lx) => {
                let r = self.rank[self.normalized_product(f, lx, x, y).raw() as usize];
                debug_assert_ne!(r, u32::MAX);
                (lx % self.m) as usize * self.q2() + r as usize
            }
        }
    }

    /// Normalized representative of `<(x, y)>`.
    pub fn normalize(&self, f: &FieldTable, x: Elem, y: Elem) -> Option<QuadricPoint> {
        let lead = if x.is_zero() { y } else { x };
        let l = lead.log()?;
        let s = f.from_log(f.order() - (l - l % self.m));
        Some(QuadricPoint {
            x: f.mul(x, s),
            y: f.mul(y, s),
        })
    }

    /// Every point in index order. Brute-force enumeration of all of `E^2`
    /// lives in the tests.
    pub fn points(&self, f: &FieldTable) -> Vec<QuadricPoint> {
        (0..self.len()).map(|i| self.point(f, i)).collect()
    }

    /// Indices of `pi_1 = {<(x, 0)>}`.
    pub fn pi1(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m as usize).map(move |i| i * self.q2())
    }

    /// Indices of `pi_2 = {<(0, y)>}`.
    pub fn pi2(&self) -> impl Iterator<Item = usize> + '_ {
        let s = self.pi2_start();
        s..s + self.m as usize
    }

    /// `{1, Omega, Omega^2}` and its trace-dual basis.
    pub fn bases(&self) -> ([Elem; 3], [Elem; 3]) {
        (self.basis, self.dual)
    }

    /// Klein map `kappa`: Plücker `(p01,p02,p03,p23,p31,p12)` goes to
    /// `<(p01 + p02 w + p03 w^2, p23 d1 + p31 d2 + p12 d3)>`.
    pub fn klein_map(&self, f: &FieldTable, line: &PgLine) -> Result<usize> {
        let p = line.plucker();
        let mut x = Elem::ZERO;
        let mut y = Elem::ZERO;
        for k in 0..3 {
            x = f.add(x, f.mul(p[k], self.basis[k]));
            y = f.add(y, f.mul(p[k + 3], self.dual[k]));
        }
        if x.is_zero() && y.is_zero() {
            return Err(Error::DegenerateLine);
        }
        self.index_of(f, x, y)
    }

    /// Inverse of [`Self::klein_map`]: the coordinates of `x` in `{1, w, w^2}`
    /// are `T(x d_k)`, those of `y` in the dual basis are `T(y b_k)`.
    pub fn klein_inverse(&self, f: &FieldTable, idx: usize) -> PgLine {
        let pt = self.point(f, idx);
        let mut p = [Elem::ZERO; 6];
        for k in 0..3 {
            p[k] = f.trace_mul(pt.x, self.dual[k]);
            p[k + 3] = f.trace_mul(pt.y, self.basis[k]);
        }
        PgLine::from_plucker(f, p).expect("nonzero quadric point")
    }
}

/// `Q(x, y) = T(xy)`.
#[inline]
pub fn quadratic_form(f: &FieldTable, u: (Elem, Elem)) -> Elem {
    f.trace_mul(u.0, u.1)
}

/// Polar form `f(u, v) = T(u1 v2) + T(u2 v1)`.
#[inline]
pub fn polar_form(f: &FieldTable, u: (Elem, Elem), v: (Elem, Elem)) -> Elem {
    f.add(f.trace_mul(u.0, v.1), f.trace_mul(u.1, v.0))
}

/// Two quadric points are collinear on the quadric iff the polar form
/// vanishes. A point counts as collinear with itself.
#[inline]
pub fn collinear(f: &FieldTable, a: &QuadricPoint, b: &QuadricPoint) -> bool {
    f.trace_mul(a.x, b.y) == f.neg(f.trace_mul(a.y, b.x))
}

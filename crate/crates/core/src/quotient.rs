//! Quotient matrices of the collinearity graph over orbit partitions, and the
//! search for 0/1 orbit selections that are tight sets.
//!
//! A point set `T` that is a union of classes is `x`-tight iff, for every
//! class `i` with selection bit `s_i`,
//!
//! ```text
//! sum_j B[i][j] s_j - (q^2 - 1) s_i = x (q + 1)
//! ```
//!
//! where `B[i][j]` counts the points of class `j` collinear with (and distinct
//! from) a fixed point of class `i`. The search solves this system exactly
//! over the rationals and enumerates the 0/1 points of its solution space.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::collineation::{GroupLabel, OrbitPartition};
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::linalg::{integer_roots, Matrix, ModP};
use crate::quadric::{collinear, Quadric, QuadricPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub q: u64,
    pub label: GroupLabel,
    pub entries: Vec<Vec<u64>>,
    pub sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.sizes.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    /// Collinearity degree `q(q+1)^2`.
    pub fn degree(&self) -> u64 {
        self.q * (self.q + 1) * (self.q + 1)
    }

    pub fn to_matrix(&self) -> Matrix<BigInt> {
        Matrix::from_fn(self.dim(), self.dim(), |i, j| BigInt::from(self.entries[i][j]))
    }
}

/// Points of each class collinear with `center` (excluding `center`).
fn perp_profile(
    f: &FieldTable,
    pts: &[QuadricPoint],
    part: &OrbitPartition,
    center: usize,
) -> Vec<u64> {
    let mut row = vec![0u64; part.num_classes()];
    let c = &pts[center];
    for (j, p) in pts.iter().enumerate() {
        if j != center && collinear(f, c, p) {
            row[part.class_of(j)] += 1;
        }
    }
    row
}

/// Builds `B` from one representative per class and cross-checks every row
/// against a second member of the class.
pub fn quotient_matrix(
    f: &FieldTable,
    quad: &Quadric,
    part: &OrbitPartition,
) -> Result<QuotientMatrix> {
    let pts = quad.points(f);
    let k = part.num_classes();
    let rows: Vec<Result<Vec<u64>>> = (0..k)
        .into_par_iter()
        .map(|c| {
            let members = part.members(c);
            let row = perp_profile(f, &pts, part, members[0] as usize);
            if members.len() > 1 {
                let other = perp_profile(f, &pts, part, members[members.len() / 2] as usize);
                if let Some(j) = (0..k).find(|&j| row[j] != other[j]) {
                    return Err(Error::NotEquitable {
                        class: c,
                        column: j,
                        first: row[j],
                        second: other[j],
                    });
                }
            }
            Ok(row)
        })
        .collect();
    let entries = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let b = QuotientMatrix {
        q: f.q(),
        label: part.label,
        entries,
        sizes: part.sizes(),
    };
    let deg = b.degree();
    for (i, row) in b.entries.iter().enumerate() {
        assert_eq!(row.iter().sum::<u64>(), deg, "row sum of class {i}");
        for (j, &bij) in row.iter().enumerate() {
            assert_eq!(
                b.sizes[i] as u64 * bij,
                b.sizes[j] as u64 * b.entries[j][i],
                "reciprocity at ({i}, {j})"
            );
        }
    }
    Ok(b)
}

/// 0/1 choice of classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selection(pub Vec<bool>);

impl Selection {
    pub fn from_classes(k: usize, classes: &[usize]) -> Self {
        let mut v = vec![false; k];
        for &c in classes {
            v[c] = true;
        }
        Selection(v)
    }

    pub fn classes(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i]).collect()
    }

    pub fn num_points(&self, sizes: &[usize]) -> usize {
        self.classes().iter().map(|&c| sizes[c]).sum()
    }

    /// `|T| / (q^2+q+1)` if integral.
    pub fn parameter(&self, q: u64, sizes: &[usize]) -> Option<u64> {
        let n = self.num_points(sizes) as u64;
        let m = q * q + q + 1;
        n.is_multiple_of(m).then_some(n / m)
    }

    /// Flip every class outside `forced_zero`.
    pub fn complement(&self, forced_zero: &[usize]) -> Self {
        Selection(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &b)| !forced_zero.contains(&i) && !b)
                .collect(),
        )
    }
}

/// `r_i = sum_j B[i][j] s_j - (q^2-1) s_i - x(q+1)`; zero iff tight.
pub fn tight_condition_residual(b: &QuotientMatrix, sel: &Selection, x: u64) -> Vec<i64> {
    let q = b.q as i64;
    let k = b.dim();
    assert_eq!(sel.0.len(), k);
    (0..k)
        .map(|i| {
            let s: i64 = (0..k)
                .filter(|&j| sel.0[j])
                .map(|j| b.entries[i][j] as i64)
                .sum();
            let own = if sel.0[i] { q * q - 1 } else { 0 };
            s - own - x as i64 * (q + 1)
        })
        .collect()
}

/// A pivot row `d * x_pivot + sum_f coeffs[f] * x_free[f] = rhs`, `d > 0`.
struct PivotRow {
    pivot: usize,
    d: i128,
    coeffs: Vec<i128>,
    rhs: i128,
    /// `suffix_min[t]`, `suffix_max[t]`: range of `sum_{f >= t} coeffs[f] x_f`.
    suffix_min: Vec<i128>,
    suffix_max: Vec<i128>,
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or(Error::Overflow("search coefficients"))
}

/// Every 0/1 selection, zero on `forced_zero`, satisfying the tight-set
/// condition with parameter `x`. Solutions come out in depth-first order with
/// the lower-indexed free classes branching first, 0 before 1.
pub fn search_tight(b: &QuotientMatrix, x: u64, forced_zero: &[usize]) -> Result<Vec<Selection>> {
    let k = b.dim();
    let q = b.q;
    if let Some(&bad) = forced_zero.iter().find(|&&c| c >= k) {
        return Err(Error::Dimension(format!("forced class {bad} >= {k}")));
    }
    let vars: Vec<usize> = (0..k).filter(|c| !forced_zero.contains(c)).collect();
    let nv = vars.len();
    let m = q * q + q + 1;
    let target = x as u128 * m as u128;
    if target > vars.iter().map(|&c| b.sizes[c] as u128).sum::<u128>() {
        return Ok(Vec::new());
    }

    // Augmented system: k eigen-rows plus the size row.
    let int = |v: i128| BigRational::from_integer(BigInt::from(v));
    let mut sys = Matrix::<BigRational>::zeros(k + 1, nv + 1);
    let shift = (q * q - 1) as i128;
    for i in 0..k {
        for (col, &j) in vars.iter().enumerate() {
            let mut v = b.entries[i][j] as i128;
            if i == j {
                v -= shift;
            }
            sys[(i, col)] = int(v);
        }
        sys[(i, nv)] = int(x as i128 * (q as i128 + 1));
    }
    for (col, &j) in vars.iter().enumerate() {
        sys[(k, col)] = int(b.sizes[j] as i128);
    }
    sys[(k, nv)] = int(target as i128);

    let pivots = sys.rref();
    if pivots.last() == Some(&nv) {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..nv).filter(|c| !pivots.contains(c)).collect();
    let mut rows = Vec::with_capacity(pivots.len());
    for (r, &pc) in pivots.iter().enumerate() {
        let mut den = BigInt::one();
        for c in free.iter().copied().chain([pc, nv]) {
            den = den.lcm(sys[(r, c)].denom());
        }
        let scale = |v: &BigRational| -> Result<i128> {
            let s = v * BigRational::from_integer(den.clone());
            debug_assert!(s.is_integer());
            to_i128(&s.to_integer())
        };
        let coeffs = free
            .iter()
            .map(|&c| scale(&sys[(r, c)]))
            .collect::<Result<Vec<_>>>()?;
        let mut d = scale(&sys[(r, pc)])?;
        let mut rhs = scale(&sys[(r, nv)])?;
        let mut coeffs = coeffs;
        if d < 0 {
            d = -d;
            rhs = -rhs;
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        let mut suffix_min = vec![0i128; free.len() + 1];
        let mut suffix_max = vec![0i128; free.len() + 1];
        for t in (0..free.len()).rev() {
            let c = coeffs[t];
            suffix_min[t] = suffix_min[t + 1]
                .checked_add(c.min(0))
                .ok_or(Error::Overflow("search bounds"))?;
            suffix_max[t] = suffix_max[t + 1]
                .checked_add(c.max(0))
                .ok_or(Error::Overflow("search bounds"))?;
        }
        rows.push(PivotRow {
            pivot: pc,
            d,
            coeffs,
            rhs,
            suffix_min,
            suffix_max,
        });
    }

    let mut out = Vec::new();
    let mut assign = vec![false; free.len()];
    let mut partial = vec![0i128; rows.len()];
    dfs(0, &rows, &mut assign, &mut partial, &mut |assign, partial| {
        let mut sel = vec![false; k];
        for (t, &fc) in free.iter().enumerate() {
            sel[vars[fc]] = assign[t];
        }
        for (row, &s) in rows.iter().zip(partial) {
            // d x_p = rhs - s, already known to be 0 or d
            sel[vars[row.pivot]] = row.rhs - s == row.d;
        }
        out.push(Selection(sel));
    });
    Ok(out)
}

/// Can `d * x_p = rhs - partial - rest` with `x_p in {0, 1}` and `rest` in
/// `[lo, hi]`?
#[inline]
fn feasible(row: &PivotRow, partial: i128, t: usize) -> bool {
    let base = row.rhs - partial;
    let lo = row.suffix_min[t];
    let hi = row.suffix_max[t];
    // need rest = base or rest = base - d
    (lo <= base && base <= hi) || (lo <= base - row.d && base - row.d <= hi)
}

fn dfs(
    t: usize,
    rows: &[PivotRow],
    assign: &mut Vec<bool>,
    partial: &mut Vec<i128>,
    emit: &mut impl FnMut(&[bool], &[i128]),
) {
    if !rows.iter().zip(partial.iter()).all(|(r, &p)| feasible(r, p, t)) {
        return;
    }
    if t == assign.len() {
        emit(assign, partial);
        return;
    }
    assign[t] = false;
    dfs(t + 1, rows, assign, partial, emit);
    assign[t] = true;
    for (r, p) in rows.iter().zip(partial.iter_mut()) {
        *p += r.coeffs[t];
    }
    dfs(t + 1, rows, assign, partial, emit);
    for (r, p) in rows.iter().zip(partial.iter_mut()) {
        *p -= r.coeffs[t];
    }
    assign[t] = false;
}

/// Union of the selected classes, sorted.
pub fn lift_selection(sel: &Selection, part: &OrbitPartition) -> Vec<usize> {
    let mut pts: Vec<usize> = sel
        .classes()
        .iter()
        .flat_map(|&c| part.members(c).iter().map(|&i| i as usize))
        .collect();
    pts.sort_unstable();
    pts
}

/// Dense 0/1 collinearity matrix (zero diagonal). Only for small `q`.
pub fn collinearity_matrix(f: &FieldTable, quad: &Quadric) -> Result<Matrix<i64>> {
    const LIMIT: usize = 20_000;
    if quad.len() > LIMIT {
        return Err(Error::Unsupported {
            q: f.q(),
            reason: format!("{} points is too many for a dense adjacency matrix", quad.len()),
        });
    }
    let pts = quad.points(f);
    Ok(Matrix::from_fn(pts.len(), pts.len(), |i, j| {
        i64::from(i != j && collinear(f, &pts[i], &pts[j]))
    }))
}

/// Outcome of comparing the spectrum of `B` with that of `A`.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Integer eigenvalues of `B` with algebraic multiplicity.
    pub b_eigenvalues: Vec<(i64, usize)>,
    /// Degree of the part of `charpoly(B)` without integer roots.
    pub b_nonintegral_degree: usize,
    /// Eigenvalues of `B` certified in `spec(A)` by a lifted eigenvector.
    pub certified_in_a: Vec<i64>,
    /// `prod (A - lambda I) = 0` over the distinct eigenvalues of `B`, i.e.
    /// `spec(A)` is contained in `spec(B)`.
    pub a_annihilated: bool,
    /// `rank(A - lambda I)` modulo `2^31 - 1` for each eigenvalue.
    pub rank_mod_p: Vec<(i64, usize)>,
}

impl SpectrumReport {
    /// Every eigenvalue of `B` is an exact integer and an eigenvalue of `A`.
    pub fn contained(&self) -> bool {
        self.b_nonintegral_degree == 0
            && self.b_eigenvalues.len() == self.certified_in_a.len()
    }
}

type Mod31 = ModP<2_147_483_647>;

/// Exact check that `spec(B)` lies in `spec(A)`: the characteristic
/// polynomial of `B` is split over the integers, and each eigenvector of `B`
/// lifted to be constant on classes is verified as an eigenvector of `A`.
pub fn spectrum_containment_check(
    b: &QuotientMatrix,
    part: &OrbitPartition,
    a: &Matrix<i64>,
) -> SpectrumReport {
    let bm = b.to_matrix();
    let cp = bm.charpoly();
    let bound = b.entries.iter().map(|r| r.iter().sum::<u64>()).max().unwrap_or(0) as i64;
    let (roots, rest) = integer_roots(&cp, bound);
    let bq = bm.map(|v| BigRational::from_integer(v.clone()));
    let n = a.rows();

    let mut certified = Vec::new();
    let mut ranks = Vec::new();
    for &(lambda, _) in &roots {
        let ns = bq.shifted(&BigRational::from_integer(lambda.into())).null_space();
        let Some(v) = ns.first() else { continue };
        // Scale to integers.
        let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<i64> = v
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer().to_i64().unwrap())
            .collect();
        let lifted: Vec<i64> = (0..n).map(|p| ints[part.class_of(p)]).collect();
        let av = a.mul_vec(&lifted);
        if lifted.iter().any(|&c| c != 0) && av.iter().zip(&lifted).all(|(l, r)| *l == lambda * r) {
            certified.push(lambda);
        }
        let am = a.map(|&v| Mod31::new(v)).shifted(&Mod31::new(lambda));
        ranks.push((lambda, am.rank()));
    }

    let mut prod = Matrix::<i64>::identity(n);
    for &(lambda, _) in &roots {
        prod = prod.matmul(&a.shifted(&lambda));
    }
    let a_annihilated = (0..n).all(|i| (0..n).all(|j| prod[(i, j)] == 0));

    SpectrumReport {
        b_eigenvalues: roots,
        b_nonintegral_degree: rest.len().saturating_sub(1),
        certified_in_a: certified,
        a_annihilated,
        rank_mod_p: ranks,
    }
}

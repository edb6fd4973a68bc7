//! Arithmetic in `E = GF(q^3)` with `F = GF(q)` embedded as the fixed field of
//! the Frobenius `a -> a^q`.
//!
//! The extension is realized in a single step over the prime field `GF(p)` as
//! `GF(p)[t] / (f)`, where `f` is the lexicographically least primitive
//! polynomial of degree `3e` (coefficients compared constant term first).
//! `Omega = t mod f` is therefore a primitive element and every nonzero element
//! is stored by its discrete logarithm. Addition goes through a Zech table.

use crate::error::{Error, Result};

/// An element of `E`. `0` is the zero element, `k + 1` encodes `Omega^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log base `Omega`, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Raw encoding, usable as a dense table index in `0..=q^3-1`.
    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }
}

/// Splits `n` into its prime factorization, smallest prime first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

// Polynomials over GF(p) as little-endian coefficient vectors, reduced modulo
// a monic `modulus` of degree n (given without its leading 1).
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len();
    let mut prod = vec![0u64; 2 * n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for k in (n..2 * n).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        // t^n = -(m_0 + m_1 t + ... + m_{n-1} t^{n-1})
        for (i, &m) in modulus.iter().enumerate() {
            prod[k - n + i] = (prod[k - n + i] + (p - m) * c) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn poly_powmod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let n = modulus.len();
    let mut acc = vec![0u64; n];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

/// `t` has order exactly `p^n - 1` modulo the monic polynomial. This also
/// forces irreducibility, since a reducible modulus has fewer than `p^n - 1` units.
fn is_primitive(modulus: &[u64], p: u64, order: u64, order_primes: &[u64]) -> bool {
    let n = modulus.len();
    if modulus[0] == 0 {
        return false;
    }
    let mut t = vec![0u64; n];
    if n == 1 {
        t[0] = (p - modulus[0]) % p;
    } else {
        t[1] = 1;
    }
    let mut one = vec![0u64; n];
    one[0] = 1;
    if poly_powmod(&t, order, modulus, p) != one {
        return false;
    }
    order_primes
        .iter()
        .all(|&r| poly_powmod(&t, order / r, modulus, p) != one)
}

/// Lexicographically least (constant term first) primitive polynomial of
/// degree `n` over `GF(p)`, returned without its leading coefficient.
pub fn least_primitive_polynomial(p: u64, n: usize) -> Vec<u64> {
    let order = p.pow(n as u32) - 1;
    let primes: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
    let mut c = vec![0u64; n];
    loop {
        if is_primitive(&c, p, order, &primes) {
            return c;
        }
        // Lexicographic successor with c[0] most significant.
        let mut i = n;
        loop {
            i -= 1;
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            assert!(i > 0, "no primitive polynomial of degree {n} over GF({p})");
        }
    }
}

/// Precomputed arithmetic for `E = GF(q^3)` and its subfield `F = GF(q)`.
#[derive(Clone, Debug)]
pub struct FieldTable {
    p: u64,
    e: u32,
    q: u64,
    /// Degree of `E` over the prime field.
    n: usize,
    modulus: Vec<u64>,
    /// `|E*| = q^3 - 1`.
    order: u32,
    /// `exp[k]` is the base-`p` code of `Omega^k`.
    exp: Vec<u32>,
    /// Inverse of `exp`, indexed by base-`p` code (entry for code 0 unused).
    log: Vec<u32>,
    /// `zech[k] = 1 + Omega^k`.
    zech: Vec<Elem>,
    /// `trace[k] = T(Omega^k)`.
    trace: Vec<Elem>,
    /// Log of `-1`.
    neg_one_log: u32,
}

impl FieldTable {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let n = 3 * e as usize;
        let size = p
            .checked_pow(n as u32)
            .filter(|&s| s <= u32::MAX as u64 / 2)
            .ok_or(Error::FieldTooLarge(q))?;
        let modulus = least_primitive_polynomial(p, n);
        let order = (size - 1) as u32;

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; size as usize];
        let mut cur = vec![0u64; n];
        cur[0] = 1;
        let mut t = vec![0u64; n];
        if n == 1 {
            t[0] = (p - modulus[0]) % p;
        } else {
            t[1] = 1;
        }
        for k in 0..order {
            let code = encode(&cur, p);
            exp.push(code);
            log[code as usize] = k;
            cur = poly_mulmod(&cur, &t, &modulus, p);
        }
        let neg_one_log = if p == 2 { 0 } else { order / 2 };

        let mut tbl = FieldTable {
            p,
            e,
            q,
            n,
            modulus,
            order,
            exp,
            log,
            zech: Vec::new(),
            trace: Vec::new(),
            neg_one_log,
        };
        tbl.zech = (0..order)
            .map(|k| {
                let mut c = tbl.exp[k as usize];
                // add 1 to the constant digit
                let d0 = c as u64 % p;
                c = c - d0 as u32 + ((d0 + 1) % p) as u32;
                tbl.from_code(c)
            })
            .collect();
        tbl.trace = (0..order)
            .map(|k| {
                let a = tbl.from_log(k);
                let a1 = tbl.frob(a);
                let a2 = tbl.frob(a1);
                tbl.add(tbl.add(a, a1), a2)
            })
            .collect();
        Ok(tbl)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Number of prime-field coefficients of an element of `E`.
    pub fn degree(&self) -> usize {
        self.n
    }
    /// Primitive modulus without its leading coefficient, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// `|E*| = q^3 - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }
    /// `q^2 + q + 1 = |E*| / |F*|`.
    pub fn norm_index(&self) -> u32 {
        (self.q * self.q + self.q + 1) as u32
    }
    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// The canonical primitive element `Omega`.
    pub fn generator(&self) -> Elem {
        self.from_log(1 % self.order)
    }

    #[inline]
    pub fn from_log(&self, k: u32) -> Elem {
        Elem(k % self.order + 1)
    }

    #[inline]
    pub fn from_code(&self, code: u32) -> Elem {
        if code == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[code as usize] + 1)
        }
    }

    #[inline]
    pub fn code(&self, a: Elem) -> u32 {
        match a.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    /// Little-endian coefficient vector over the prime field.
    pub fn to_coeffs(&self, a: Elem) -> Vec<u64> {
        let mut c = self.code(a) as u64;
        (0..self.n)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadElement(format!("{coeffs:?}")));
        }
        Ok(self.from_code(encode(coeffs, self.p)))
    }

    /// Prime-field integer `k mod p` as an element.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = k.rem_euclid(self.p as i64) as u32;
        self.from_code(c)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let s = (a.0 - 1) + (b.0 - 1);
        Elem(if s >= self.order { s - self.order } else { s } + 1)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (la, lb) = match (a.log(), b.log()) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(x), Some(y)) => (x, y),
        };
        let d = if lb >= la { lb - la } else { lb + self.order - la };
        self.mul(a, self.zech[d as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.mul(a, Elem(self.neg_one_log + 1))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        a.log().map(|k| self.from_log((self.order - k) % self.order))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        match a.log() {
            None if k == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(l) => self.from_log(((l as u64 * k) % self.order as u64) as u32),
        }
    }

    /// Frobenius `a -> a^q`.
    #[inline]
    pub fn frob(&self, a: Elem) -> Elem {
        match a.log() {
            None => Elem::ZERO,
            Some(l) => self.from_log(((l as u64 * self.q) % self.order as u64) as u32),
        }
    }

    /// Relative trace `T(a) = a + a^q + a^{q^2}`, an element of `F`.
    #[inline]
    pub fn trace(&self, a: Elem) -> Elem {
        match a.log() {
            None => Elem::ZERO,
            Some(l) => self.trace[l as usize],
        }
    }

    /// `T(a * b)` without forming the product element.
    #[inline]
    pub fn trace_mul(&self, a: Elem, b: Elem) -> Elem {
        self.trace(self.mul(a, b))
    }

    pub fn in_subfield(&self, a: Elem) -> bool {
        self.frob(a) == a
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        let l = a.log()? as u64;
        let n = self.order as u64;
        Some(n / num_integer::gcd(l, n))
    }

    /// Elements of `F`: zero followed by `omega^0, ..., omega^{q-2}`.
    pub fn subfield_elements(&self) -> Vec<Elem> {
        let m = self.norm_index();
        std::iter::once(Elem::ZERO)
            .chain((0..self.q as u32 - 1).map(|k| self.from_log(k * m)))
            .collect()
    }

    /// Position of an `F`-element in [`Self::subfield_elements`].
    #[inline]
    pub fn subfield_index(&self, a: Elem) -> usize {
        match a.log() {
            None => 0,
            Some(l) => (l / self.norm_index()) as usize + 1,
        }
    }

    /// `omega = Omega^{q^2+q+1}` generating `F*` and `mu = Omega^{q-1}` of
    /// order `q^2+q+1`.
    pub fn canonical_generators(&self) -> (Elem, Elem) {
        (
            self.from_log(self.norm_index()),
            self.from_log((self.q - 1) as u32),
        )
    }

    /// Trace-dual basis `{d_j}` with `T(b_i d_j) = [i == j]`.
    pub fn dual_basis(&self, basis: [Elem; 3]) -> Result<[Elem; 3]> {
        // Gram matrix G_ik = T(b_i b_k); dual d_j = sum_k (G^-1)_kj b_k.
        let mut gram = [[Elem::ZERO; 3]; 3];
        for i in 0..3 {
            for k in 0..3 {
                gram[i][k] = self.trace_mul(basis[i], basis[k]);
            }
        }
        let inv = self.invert3(gram).ok_or(Error::DependentBasis)?;
        let mut dual = [Elem::ZERO; 3];
        for (j, d) in dual.iter_mut().enumerate() {
            for k in 0..3 {
                *d = self.add(*d, self.mul(inv[k][j], basis[k]));
            }
        }
        Ok(dual)
    }

    /// Gauss-Jordan inverse of a 3x3 matrix over the field.
    fn invert3(&self, m: [[Elem; 3]; 3]) -> Option<[[Elem; 3]; 3]> {
        let mut a = m;
        let mut inv = [[Elem::ZERO; 3]; 3];
        for (i, row) in inv.iter_mut().enumerate() {
            row[i] = Elem::ONE;
        }
        for col in 0..3 {
            let piv = (col..3).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let s = self.inv(a[col][col])?;
            for c in 0..3 {
                a[col][c] = self.mul(a[col][c], s);
                inv[col][c] = self.mul(inv[col][c], s);
            }
            for r in 0..3 {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for c in 0..3 {
                        a[r][c] = self.sub(a[r][c], self.mul(f, a[col][c]));
                        inv[r][c] = self.sub(inv[r][c], self.mul(f, inv[col][c]));
                    }
                }
            }
        }
        Some(inv)
    }

    /// Iterator over every element of `E`, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..=self.order).map(Elem)
    }
}

fn encode(coeffs: &[u64], p: u64) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

//! Exact arithmetic over `ℤ_d` and over the integers.
//!
//! Residues are plain `u32` values kept reduced against a [`Modulus`]. Products
//! are formed in `u64`, which is why qudit dimensions are capped at
//! [`MAX_DIMENSION`]: phase arithmetic runs modulo `2d ≤ 2^16`.
//!
//! The integer side ([`IntMatrixOf`], [`smith_normal_form`]) is generic over an
//! [`ExactInt`] ring. Callers that feed tableau data into it use
//! [`crate::IntMatrix`], i.e. arbitrary-precision entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::ExactInt;

/// Largest supported qudit dimension.
pub const MAX_DIMENSION: u32 = 1 << 15;

/// A modulus `m ≥ 2` with reduced-residue arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus(u32);

impl Modulus {
    /// Accepts any modulus in `2..=2·MAX_DIMENSION`, so that both `d` and `2d`
    /// are representable.
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=2 * MAX_DIMENSION).contains(&m) {
            return Err(Error::InvalidDimension(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - (b % self.0) as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        let a = a % self.0;
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        mod_inverse(a as u64, self.0 as u64).map(|v| v as u32)
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0 as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Multiplicative inverse of `a` modulo `d`.
///
/// Fails with [`Error::NotInvertible`] when `gcd(a, d) ≠ 1`, which is how a
/// composite-dimension pivot failure surfaces to callers.
pub fn mod_inverse(a: u64, d: u64) -> Result<u64> {
    let a = a % d;
    let egcd = (a as i64).extended_gcd(&(d as i64));
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { value: a, modulus: d });
    }
    Ok(egcd.x.rem_euclid(d as i64) as u64)
}

/// Reduced row echelon form over `ℤ_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; the first `rank` rows form the canonical basis.
    pub rows: Vec<Vec<u32>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows[..self.rank]
    }
}

/// Row-reduces `matrix` over the field `ℤ_p`. `p` must be prime.
///
/// Columns are scanned left to right; the pivot for a column is the first
/// remaining row (top to bottom) with a nonzero entry.
pub fn rref_mod_p(matrix: &[Vec<u32>], p: u32) -> Rref {
    let m = Modulus(p);
    let mut rows: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = m.inv(rows[rank][col]).expect("nonzero residue is invertible mod a prime");
        for v in rows[rank].iter_mut() {
            *v = m.mul(*v, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = m.sub(*v, m.mul(factor, pv));
            }
        }
        pivots.push(col);
        rank += 1;
    }
    Rref { rows, rank, pivots }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrixOf<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInt> IntMatrixOf<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrixOf { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. An empty slice yields a `0 × 0` matrix.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrixOf { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let converted: Vec<Vec<T>> =
            rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v).expect("i64 fits")).collect()).collect();
        Self::from_rows(&converted)
    }

    /// Residue matrix lifted to the integers with a given column count (used when
    /// `rows` may be empty).
    pub fn from_residues(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = T::from_u32(v).expect("u32 fits");
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone()))
            .collect()
    }

    /// Entries reduced into `[0, d)`.
    pub fn to_residues(&self, d: u32) -> Vec<Vec<u32>> {
        let m = T::from_u32(d).expect("u32 fits");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).map(|j| self[(i, j)].mod_floor(&m).to_u32().expect("reduced residue fits")).collect()
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return T::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// rows (p, q) ← (α·p + β·q, γ·p + δ·q)
    fn combine_rows(&mut self, p: usize, q: usize, [alpha, beta, gamma, delta]: &[T; 4]) {
        for j in 0..self.cols {
            let x = self[(p, j)].clone();
            let y = self[(q, j)].clone();
            self[(p, j)] = alpha.clone() * x.clone() + beta.clone() * y.clone();
            self[(q, j)] = gamma.clone() * x + delta.clone() * y;
        }
    }

    /// cols (p, q) ← (α·p + β·q, γ·p + δ·q)
    fn combine_cols(&mut self, p: usize, q: usize, [alpha, beta, gamma, delta]: &[T; 4]) {
        for i in 0..self.rows {
            let x = self[(i, p)].clone();
            let y = self[(i, q)].clone();
            self[(i, p)] = alpha.clone() * x.clone() + beta.clone() * y.clone();
            self[(i, q)] = gamma.clone() * x + delta.clone() * y;
        }
    }
}

impl<T> Index<(usize, usize)> for IntMatrixOf<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for IntMatrixOf<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for IntMatrixOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `D = U·A·V` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`, `d_i ≥ 0`.
#[derive(Clone)]
pub struct SmithDecomposition<T> {
    pub d: IntMatrixOf<T>,
    pub u: IntMatrixOf<T>,
    pub v: IntMatrixOf<T>,
}

impl<T: fmt::Display> fmt::Debug for SmithDecomposition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmithDecomposition").field("d", &self.d).field("u", &self.u).field("v", &self.v).finish()
    }
}

impl<T: ExactInt> SmithDecomposition<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Unimodular 2×2 step `(α, β, γ, δ)` that maps `(a, b)` to `(gcd(a, b), 0)`.
fn gcd_step<T: ExactInt>(a: &T, b: &T) -> [T; 4] {
    if (b.clone() % a.clone()).is_zero() {
        let q = b.clone() / a.clone();
        return [T::one(), T::zero(), -q, T::one()];
    }
    let e = a.extended_gcd(b);
    let g = e.gcd;
    [e.x, e.y, -(b.clone() / g.clone()), a.clone() / g]
}

/// Smith normal form by gcd-based elimination.
///
/// Each pivot is reduced with 2×2 unimodular row and column steps built from
/// the extended Euclidean algorithm, so the pivot shrinks to the gcd of its
/// row and column in one pass per entry. A pivot that fails to divide the rest
/// of the trailing block absorbs the offending row and is reduced again.
pub fn smith_normal_form<T: ExactInt>(a: &IntMatrixOf<T>) -> SmithDecomposition<T> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMatrixOf::identity(m);
    let mut v = IntMatrixOf::identity(n);

    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let e = &d[(i, j)];
                if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let step = gcd_step(&d[(t, t)], &d[(i, t)]);
                    d.combine_rows(t, i, &step);
                    u.combine_rows(t, i, &step);
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let step = gcd_step(&d[(t, t)], &d[(t, j)]);
                    d.combine_cols(t, j, &step);
                    v.combine_cols(t, j, &step);
                }
            }
            if (t + 1..m).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d[(i, j)].clone() % pivot.clone()).is_zero()));
            match offending {
                Some(i) => {
                    let add = [T::one(), T::one(), T::zero(), T::one()];
                    d.combine_rows(t, i, &add);
                    u.combine_rows(t, i, &add);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            let flip = [-T::one(), T::zero(), T::zero(), T::one()];
            let other = if t + 1 < m { t + 1 } else { t };
            if other == t {
                for j in 0..n {
                    d[(t, j)] = -d[(t, j)].clone();
                }
                for j in 0..m {
                    u[(t, j)] = -u[(t, j)].clone();
                }
            } else {
                d.combine_rows(t, other, &flip);
                u.combine_rows(t, other, &flip);
            }
        }
    }
    SmithDecomposition { d, u, v }
}

/// Generators of `{u ∈ ℤ_d^n : A·u ≡ 0 (mod d)}`.
///
/// With `D = U·A·V`, the module is spanned by the columns of `V`, column `i`
/// scaled by `d / gcd(D_ii, d)` (columns beyond the diagonal are free). Zero
/// generators are dropped, so an injective system yields an empty list.
pub fn kernel_mod_d<T: ExactInt>(a: &IntMatrixOf<T>, d: u32) -> Vec<Vec<u32>> {
    let snf = smith_normal_form(a);
    let n = a.ncols();
    let diag = snf.diagonal();
    let dm = T::from_u32(d).expect("u32 fits");
    let v = snf.v.to_residues(d);
    let modulus = Modulus(d);
    let mut gens = Vec::new();
    for i in 0..n {
        let scale = match diag.get(i) {
            Some(s) => {
                let g = s.mod_floor(&dm).gcd(&dm).to_u32().expect("gcd fits");
                d / g
            }
            None => 1,
        };
        let g: Vec<u32> = (0..n).map(|r| modulus.mul(v[r][i], scale)).collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    gens
}

/// All solutions of `s·y ≡ c (mod d)`: `particular + k·step` for `k < count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceSolutions {
    pub particular: u32,
    pub step: u32,
    pub count: u32,
}

impl CongruenceSolutions {
    pub fn nth(&self, k: u32, d: u32) -> u32 {
        ((self.particular as u64 + k as u64 * self.step as u64) % d as u64) as u32
    }

    pub fn is_free(&self, d: u32) -> bool {
        self.count == d
    }
}

pub fn solve_congruence(s: i64, c: i64, d: u32) -> Result<CongruenceSolutions> {
    let dm = d as i64;
    let s = s.rem_euclid(dm);
    let c = c.rem_euclid(dm);
    let g = s.gcd(&dm);
    if c % g != 0 {
        return Err(Error::Unsolvable { coefficient: s as u64, rhs: c as u64, modulus: d as u64 });
    }
    let reduced = dm / g;
    let particular = if reduced == 1 {
        0
    } else {
        let inv = mod_inverse((s / g) as u64, reduced as u64)? as i64;
        ((c / g) * inv).rem_euclid(reduced)
    };
    Ok(CongruenceSolutions { particular: particular as u32, step: reduced as u32, count: g as u32 })
}

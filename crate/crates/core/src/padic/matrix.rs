//! Dense matrices over a shared `(p, a)` context, stored row-major.

use super::{PadicCtx, PadicScalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PadicMatrix {
    ctx: PadicCtx,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl std::fmt::Debug for PadicMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "PadicMatrix {}x{} mod {}^{}",
            self.rows,
            self.cols,
            self.ctx.p(),
            self.ctx.precision()
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl PadicMatrix {
    pub fn zero(ctx: PadicCtx, rows: usize, cols: usize) -> Self {
        PadicMatrix {
            ctx,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(ctx: PadicCtx, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for k in 0..n {
            m.set(k, k, 1);
        }
        m
    }

    /// Row-major entries, reduced into the context.
    pub fn from_rows(ctx: PadicCtx, rows: usize, cols: usize, entries: &[u64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(PadicMatrix {
            ctx,
            rows,
            cols,
            entries: entries.iter().map(|&x| x % ctx.modulus()).collect(),
        })
    }

    pub fn from_rows_i64(ctx: PadicCtx, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let reduced: Vec<u64> = entries.iter().map(|&x| ctx.residue_of_i64(x)).collect();
        Self::from_rows(ctx, rows, cols, &reduced)
    }

    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.entries[r * self.cols + c] = value % self.ctx.modulus();
    }

    pub fn scalar_at(&self, r: usize, c: usize) -> PadicScalar {
        self.ctx.scalar(self.get(r, c))
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ctx, rhs.ctx, "mixed contexts in matrix product");
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let m = self.ctx.modulus() as u128;
        let mut out = PadicMatrix::zero(self.ctx, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = 0u128;
                for k in 0..self.cols {
                    acc = (acc + self.get(r, k) as u128 * rhs.get(k, c) as u128) % m;
                }
                out.set(r, c, acc as u64);
            }
        }
        out
    }

    pub fn add(&self, rhs: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ctx, rhs.ctx);
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (e, &r) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *e = self.ctx.reduce_u128(*e as u128 + r as u128);
        }
        out
    }

    pub fn sub(&self, rhs: &PadicMatrix) -> PadicMatrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PadicMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            if *e != 0 {
                *e = self.ctx.modulus() - *e;
            }
        }
        out
    }

    pub fn scale(&self, s: u64) -> PadicMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = self.ctx.reduce_u128(*e as u128 * s as u128);
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ctx, rhs.ctx);
        assert_eq!(self.rows, rhs.rows, "row counts differ in hstack");
        let mut out = PadicMatrix::zero(self.ctx, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        out
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, bottom: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ctx, bottom.ctx);
        assert_eq!(self.cols, bottom.cols, "column counts differ in vstack");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&bottom.entries);
        PadicMatrix {
            ctx: self.ctx,
            rows: self.rows + bottom.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PadicMatrix {
        let mut out = PadicMatrix::zero(self.ctx, rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                out.set(ri, ci, self.get(r, c));
            }
        }
        out
    }

    pub fn row_slice(&self, rows: &[usize]) -> PadicMatrix {
        let all: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &all)
    }

    /// Entries reduced modulo `p^n` into a coarser context.
    pub fn reduce_precision(&self, ctx_n: PadicCtx) -> PadicMatrix {
        assert_eq!(ctx_n.p(), self.ctx.p());
        assert!(ctx_n.precision() <= self.ctx.precision());
        PadicMatrix {
            ctx: ctx_n,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| x % ctx_n.modulus()).collect(),
        }
    }

    /// Same entries read at a finer precision (the canonical lift).
    pub fn lift_precision(&self, ctx_a: PadicCtx) -> PadicMatrix {
        assert_eq!(ctx_a.p(), self.ctx.p());
        assert!(ctx_a.precision() >= self.ctx.precision());
        PadicMatrix {
            ctx: ctx_a,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.clone(),
        }
    }

    /// Division-free determinant (Laplace expansion with subset memoization).
    pub fn determinant(&self) -> PadicScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        assert!(n <= 20, "determinant guard: dimension {n} too large");
        if n == 0 {
            return self.ctx.one();
        }
        let m = self.ctx.modulus() as u128;
        // minors[mask] = det of the first popcount(mask) rows on columns in mask
        let mut minors = vec![0u64; 1 << n];
        minors[0] = 1;
        for mask in 1usize..(1 << n) {
            let r = (mask.count_ones() - 1) as usize;
            let mut acc = 0i128;
            // Laplace expansion along row r: entry sign is (-1)^(r + position)
            let mut sign = if r % 2 == 0 { 1i128 } else { -1i128 };
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let term = (self.get(r, j) as u128 * minors[mask ^ (1 << j)] as u128 % m) as i128;
                acc += sign * term;
                sign = -sign;
            }
            let mi = m as i128;
            minors[mask] = (((acc % mi) + mi) % mi) as u64;
        }
        self.ctx.scalar(minors[(1 << n) - 1])
    }

    /// True when the reduction mod `p` is invertible. Gaussian elimination
    /// over `F_p`, so it stays cheap for any dimension.
    pub fn is_unit_mod_p(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let p = self.ctx.p();
        let n = self.rows;
        let mut w: Vec<Vec<u64>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c) % p).collect())
            .collect();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&r| w[r][k] != 0) else {
                return false;
            };
            w.swap(k, pivot);
            let inv = mod_inverse_prime(w[k][k], p);
            for c in k..n {
                w[k][c] = w[k][c] * inv % p;
            }
            for r in 0..n {
                if r != k && w[r][k] != 0 {
                    let f = w[r][k];
                    for c in k..n {
                        w[r][c] = (w[r][c] + (p - f) * w[k][c]) % p;
                    }
                }
            }
        }
        true
    }

    /// Inverse modulo `p^a` by Gauss-Jordan with unit pivots.
    pub fn inverse(&self) -> Result<PadicMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.hstack(&PadicMatrix::identity(self.ctx, n));
        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&r| self.ctx.valuation_of(work.get(r, k)) == 0)
                .ok_or(Error::NotInvertible)?;
            if pivot_row != k {
                work.swap_rows(k, pivot_row);
            }
            let inv = self.ctx.scalar(work.get(k, k)).inverse()?;
            work.scale_row(k, inv.residue());
            for r in 0..n {
                if r != k {
                    let f = work.get(r, k);
                    if f != 0 {
                        work.row_sub_multiple(r, k, f);
                    }
                }
            }
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(work.submatrix(&rows, &cols))
    }

    pub(crate) fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            let t = self.get(r1, c);
            self.set(r1, c, self.get(r2, c));
            self.set(r2, c, t);
        }
    }

    pub(crate) fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for r in 0..self.rows {
            let t = self.get(r, c1);
            self.set(r, c1, self.get(r, c2));
            self.set(r, c2, t);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: u64) {
        for c in 0..self.cols {
            let v = self.ctx.reduce_u128(self.get(r, c) as u128 * s as u128);
            self.set(r, c, v);
        }
    }

    /// row r -= f * row k
    pub(crate) fn row_sub_multiple(&mut self, r: usize, k: usize, f: u64) {
        let m = self.ctx.modulus() as u128;
        for c in 0..self.cols {
            let sub = self.get(k, c) as u128 * f as u128 % m;
            let v = (self.get(r, c) as u128 + m - sub) % m;
            self.set(r, c, v as u64);
        }
    }

    /// col c -= f * col k
    pub(crate) fn col_sub_multiple(&mut self, c: usize, k: usize, f: u64) {
        let m = self.ctx.modulus() as u128;
        for r in 0..self.rows {
            let sub = self.get(r, k) as u128 * f as u128 % m;
            let v = (self.get(r, c) as u128 + m - sub) % m;
            self.set(r, c, v as u64);
        }
    }
}

fn mod_inverse_prime(x: u64, p: u64) -> u64 {
    // Fermat; p is prime and x a nonzero residue.
    let mut result = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

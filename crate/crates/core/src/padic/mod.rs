//! Exact arithmetic on `Z_p` truncated at precision `p^a`.
//!
//! A scalar is a residue in `[0, p^a)`. "Zero" always means "zero at
//! precision `p^a`": a valuation of `a` is reported for residue 0, and every
//! derived quantity (ranks, kernels, certificates) is precision-relative.

mod matrix;
mod sample;
mod smith;

pub use matrix::PadicMatrix;
pub use sample::{gl_unit_fraction, sample_gl, uniform_matrix, uniform_scalar};
pub use smith::{rank_at_precision, smith_normal_form, SmithForm};

use crate::error::{Error, Result};

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Shared `(p, a)` coefficient context with the cached modulus `p^a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PadicCtx {
    p: u64,
    a: u32,
    modulus: u64,
}

impl PadicCtx {
    pub fn new(p: u64, a: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::InvalidInput("precision a must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(a)
            .ok_or(Error::PrecisionOverflow { p, a })?;
        Ok(PadicCtx { p, a, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.a
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime at a different precision.
    pub fn with_precision(&self, a: u32) -> Result<Self> {
        PadicCtx::new(self.p, a)
    }

    #[inline]
    pub(crate) fn reduce_u128(&self, x: u128) -> u64 {
        (x % self.modulus as u128) as u64
    }

    /// Canonical residue of a signed integer.
    pub fn residue_of_i64(&self, x: i64) -> u64 {
        let m = self.modulus as i128;
        (((x as i128) % m + m) % m) as u64
    }

    pub fn scalar(&self, residue: u64) -> PadicScalar {
        PadicScalar {
            ctx: *self,
            residue: residue % self.modulus,
        }
    }

    pub fn scalar_from_i64(&self, x: i64) -> PadicScalar {
        self.scalar(self.residue_of_i64(x))
    }

    pub fn zero(&self) -> PadicScalar {
        self.scalar(0)
    }

    pub fn one(&self) -> PadicScalar {
        self.scalar(1)
    }

    /// Largest `v <= a` with `p^v | residue`; `a` exactly when `residue = 0`.
    pub fn valuation_of(&self, residue: u64) -> u32 {
        if residue == 0 {
            return self.a;
        }
        let mut v = 0;
        let mut r = residue;
        while r % self.p == 0 {
            r /= self.p;
            v += 1;
        }
        v.min(self.a)
    }
}

/// A residue modulo `p^a`, the working picture of an element of `Z_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    ctx: PadicCtx,
    residue: u64,
}

impl std::fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (mod {}^{})",
            self.residue, self.ctx.p, self.ctx.a
        )
    }
}

#[inline]
fn assert_same_ctx(a: &PadicCtx, b: &PadicCtx) {
    assert_eq!(a, b, "mixed (p, a) contexts in scalar arithmetic");
}

impl PadicScalar {
    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn precision(&self) -> u32 {
        self.ctx.a
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// `p`-adic valuation, clamped to `[0, a]`.
    pub fn valuation(&self) -> u32 {
        self.ctx.valuation_of(self.residue)
    }

    pub fn is_unit(&self) -> bool {
        self.residue % self.ctx.p != 0
    }

    pub fn add(&self, rhs: &PadicScalar) -> PadicScalar {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        self.ctx
            .scalar(self.ctx.reduce_u128(self.residue as u128 + rhs.residue as u128))
    }

    pub fn sub(&self, rhs: &PadicScalar) -> PadicScalar {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PadicScalar {
        if self.residue == 0 {
            *self
        } else {
            self.ctx.scalar(self.ctx.modulus - self.residue)
        }
    }

    pub fn mul(&self, rhs: &PadicScalar) -> PadicScalar {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        self.ctx
            .scalar(self.ctx.reduce_u128(self.residue as u128 * rhs.residue as u128))
    }

    /// Multiplicative inverse; fails on non-units.
    pub fn inverse(&self) -> Result<PadicScalar> {
        if !self.is_unit() {
            return Err(Error::NotInvertible);
        }
        // extended Euclid on (residue, p^a)
        let (mut r0, mut r1) = (self.ctx.modulus as i128, self.residue as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        let m = self.ctx.modulus as i128;
        Ok(self.ctx.scalar(((t0 % m + m) % m) as u64))
    }

    /// Exact division by `p^v`; the quotient is only determined modulo
    /// `p^{a-v}`, and the canonical representative is returned.
    pub fn shift_down(&self, v: u32) -> PadicScalar {
        assert!(self.valuation() >= v, "inexact division by p^{v}");
        let mut r = self.residue;
        for _ in 0..v {
            r /= self.ctx.p;
        }
        self.ctx.scalar(r)
    }

    /// Reduce to a coarser precision `n <= a`.
    pub fn reduce_precision(&self, ctx_n: PadicCtx) -> PadicScalar {
        assert_eq!(ctx_n.p, self.ctx.p);
        assert!(ctx_n.a <= self.ctx.a);
        ctx_n.scalar(self.residue % ctx_n.modulus)
    }
}

impl std::ops::Add for PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: Self) -> Self {
        PadicScalar::add(&self, &rhs)
    }
}

impl std::ops::Sub for PadicScalar {
    type Output = PadicScalar;
    fn sub(self, rhs: Self) -> Self {
        PadicScalar::sub(&self, &rhs)
    }
}

impl std::ops::Mul for PadicScalar {
    type Output = PadicScalar;
    fn mul(self, rhs: Self) -> Self {
        PadicScalar::mul(&self, &rhs)
    }
}

impl std::ops::Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> Self {
        PadicScalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, a: u32) -> PadicCtx {
        PadicCtx::new(p, a).unwrap()
    }

    #[test]
    fn valuation_of_nine_mod_eighty_one() {
        assert_eq!(ctx(3, 4).scalar(9).valuation(), 2);
    }

    #[test]
    fn valuation_of_zero_is_precision() {
        assert_eq!(ctx(2, 5).scalar(0).valuation(), 5);
    }

    #[test]
    fn valuation_of_a_unit() {
        assert_eq!(ctx(5, 3).scalar(7).valuation(), 0);
    }

    #[test]
    fn rejects_composite_p() {
        assert!(matches!(PadicCtx::new(6, 2), Err(Error::NotPrime(6))));
    }

    #[test]
    fn rejects_overflowing_modulus() {
        assert!(matches!(
            PadicCtx::new(3, 63),
            Err(Error::PrecisionOverflow { .. })
        ));
    }

    #[test]
    fn inverse_round_trips() {
        let c = ctx(3, 6);
        for r in 1..30 {
            let x = c.scalar(r);
            if x.is_unit() {
                assert_eq!(x.mul(&x.inverse().unwrap()), c.one());
            } else {
                assert!(x.inverse().is_err());
            }
        }
    }

    #[test]
    fn negative_lift_is_canonical() {
        let c = ctx(5, 2);
        assert_eq!(c.scalar_from_i64(-1).residue(), 24);
        assert_eq!(c.scalar_from_i64(-1) + c.one(), c.zero());
    }
}

//! Dense one-variable polynomials over `Z/p^a`. Distinguished polynomials
//! and the layer polynomials `((1+T)^{p^m} - 1) / ((1+T)^{p^{m-1}} - 1)`
//! live here; unlike `TruncatedSeries` there is no degree cutoff, so exact
//! polynomial division works at any degree.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::padic::PadicCtx;

#[derive(Clone, PartialEq, Eq)]
pub struct PadicPoly {
    ctx: PadicCtx,
    /// low-to-high, no trailing zeros
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for PadicPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => format!("{c}"),
                1 if c == 1 => "T".into(),
                1 => format!("{c}*T"),
                _ if c == 1 => format!("T^{k}"),
                _ => format!("{c}*T^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PadicPoly {
    pub fn new(ctx: PadicCtx, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % ctx.modulus()).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PadicPoly { ctx, coeffs: c }
    }

    pub fn from_i64(ctx: PadicCtx, coeffs: &[i64]) -> Self {
        let c: Vec<u64> = coeffs.iter().map(|&x| ctx.residue_of_i64(x)).collect();
        Self::new(ctx, &c)
    }

    pub fn zero(ctx: PadicCtx) -> Self {
        PadicPoly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: PadicCtx) -> Self {
        Self::new(ctx, &[1])
    }

    pub fn monomial(ctx: PadicCtx, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        Self::new(ctx, &coeffs)
    }

    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self
                .ctx
                .reduce_u128(self.coeff(k) as u128 + rhs.coeff(k) as u128);
        }
        Self::new(self.ctx, &out)
    }

    pub fn neg(&self) -> Self {
        let m = self.ctx.modulus();
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { m - c })
            .collect();
        Self::new(self.ctx, &out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ctx, rhs.ctx);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.ctx);
        }
        let m = self.ctx.modulus() as u128;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let idx = i + j;
                out[idx] = ((out[idx] as u128 + a as u128 * b as u128 % m) % m) as u64;
            }
        }
        Self::new(self.ctx, &out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.ctx);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, s: u64) -> Self {
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|&c| self.ctx.reduce_u128(c as u128 * s as u128))
            .collect();
        Self::new(self.ctx, &out)
    }

    /// Euclidean division by a divisor with unit leading coefficient.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        assert_eq!(self.ctx, divisor.ctx);
        let Some(dd) = divisor.degree() else {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        };
        let lead = self.ctx.scalar(divisor.coeffs[dd]);
        if !lead.is_unit() {
            return Err(Error::NotInvertible);
        }
        let lead_inv = lead.inverse()?.residue();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.ctx), self.clone()));
        }
        let m = self.ctx.modulus() as u128;
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let lead_coeff = rem[k];
            if lead_coeff == 0 {
                continue;
            }
            let q = (lead_coeff as u128 * lead_inv as u128 % m) as u64;
            quot[k - dd] = q;
            for j in 0..=dd {
                let sub = divisor.coeffs[j] as u128 * q as u128 % m;
                rem[k - dd + j] = ((rem[k - dd + j] as u128 + m - sub) % m) as u64;
            }
        }
        Ok((Self::new(self.ctx, &quot), Self::new(self.ctx, &rem)))
    }

    /// Whether `self` divides `target` exactly at precision.
    pub fn divides(&self, target: &Self) -> Result<bool> {
        let (_, rem) = target.divmod(self)?;
        Ok(rem.is_zero())
    }

    /// `(1+T)^n - 1` with exact binomial coefficients reduced mod `p^a`.
    pub fn one_plus_t_pow_minus_one(ctx: PadicCtx, n: u64) -> Self {
        let big_n = BigUint::from(n);
        let modulus = BigUint::from(ctx.modulus());
        let mut coeffs = vec![0u64; n as usize + 1];
        let mut binom = BigUint::from(1u32);
        for k in 0..=n {
            if k > 0 {
                // C(n, k) = C(n, k-1) * (n-k+1) / k, exact in integers
                binom = binom * (&big_n - BigUint::from(k - 1)) / BigUint::from(k);
            }
            coeffs[k as usize] = (&binom % &modulus).to_u64().unwrap();
        }
        coeffs[0] = 0;
        Self::new(ctx, &coeffs)
    }
}

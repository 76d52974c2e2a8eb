//! Truncated power series over `Z_p` at precision `p^a`: elements of
//! `Z_p[[T_1, .., T_d]]` kept modulo `(p^a, total degree > D)`.
//!
//! The topological generators of the group algebra picture live here as
//! `1 + T_j`. Binary operations truncate to the finer of the two cutoffs.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::padic::PadicCtx;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesDto", into = "SeriesDto")]
pub struct TruncatedSeries {
    ctx: PadicCtx,
    nvars: usize,
    trunc: u32,
    terms: BTreeMap<Vec<u16>, u64>,
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (mod {}^{}, deg <= {})",
            self.render(),
            self.ctx.p(),
            self.ctx.precision(),
            self.trunc
        )
    }
}

impl TruncatedSeries {
    pub fn zero(ctx: PadicCtx, nvars: usize, trunc: u32) -> Self {
        TruncatedSeries {
            ctx,
            nvars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: PadicCtx, nvars: usize, trunc: u32, value: i64) -> Self {
        let mut s = Self::zero(ctx, nvars, trunc);
        s.add_term(&vec![0; nvars], ctx.residue_of_i64(value));
        s
    }

    pub fn one(ctx: PadicCtx, nvars: usize, trunc: u32) -> Self {
        Self::constant(ctx, nvars, trunc, 1)
    }

    /// The variable `T_j` (0-based index).
    pub fn variable(ctx: PadicCtx, nvars: usize, trunc: u32, j: usize) -> Self {
        assert!(j < nvars, "variable index out of range");
        assert!(trunc >= 1, "truncation too small for a variable");
        let mut s = Self::zero(ctx, nvars, trunc);
        let mut exp = vec![0u16; nvars];
        exp[j] = 1;
        s.add_term(&exp, 1);
        s
    }

    /// One-variable series from low-to-high coefficients.
    pub fn from_coeffs(ctx: PadicCtx, trunc: u32, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() as u32 > trunc + 1 {
            return Err(Error::InvalidInput(format!(
                "{} coefficients exceed truncation degree {trunc}",
                coeffs.len()
            )));
        }
        let mut s = Self::zero(ctx, 1, trunc);
        for (k, &c) in coeffs.iter().enumerate() {
            s.add_term(&[k as u16], ctx.residue_of_i64(c));
        }
        Ok(s)
    }

    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u16]) -> u64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// Coefficient of `T^k` of a one-variable series.
    pub fn coeff_at(&self, k: u32) -> u64 {
        assert_eq!(self.nvars, 1);
        self.coeff(&[k as u16])
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(&vec![0; self.nvars])
    }

    fn total_degree_of(exp: &[u16]) -> u32 {
        exp.iter().map(|&e| e as u32).sum()
    }

    /// Accumulate `c * T^exp`, dropping zero results and over-degree terms.
    pub(crate) fn add_term(&mut self, exp: &[u16], c: u64) {
        assert_eq!(exp.len(), self.nvars, "exponent vector length");
        if Self::total_degree_of(exp) > self.trunc {
            return;
        }
        let c = c % self.ctx.modulus();
        if c == 0 && !self.terms.contains_key(exp) {
            return;
        }
        let slot = self.terms.entry(exp.to_vec()).or_insert(0);
        *slot = self.ctx.reduce_u128(*slot as u128 + c as u128);
        if *slot == 0 {
            self.terms.remove(exp);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let mut out = TruncatedSeries::zero(self.ctx, self.nvars, self.trunc.min(rhs.trunc));
        for (e, &c) in &self.terms {
            out.add_term(e, c);
        }
        for (e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        let m = self.ctx.modulus();
        for c in out.terms.values_mut() {
            *c = m - *c;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: i64) -> Self {
        let s = self.ctx.residue_of_i64(s);
        let mut out = TruncatedSeries::zero(self.ctx, self.nvars, self.trunc);
        for (e, &c) in &self.terms {
            out.add_term(e, self.ctx.reduce_u128(c as u128 * s as u128));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_compatible(rhs);
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = TruncatedSeries::zero(self.ctx, self.nvars, trunc);
        for (ea, &ca) in &self.terms {
            let da = Self::total_degree_of(ea);
            if da > trunc {
                continue;
            }
            for (eb, &cb) in &rhs.terms {
                if da + Self::total_degree_of(eb) > trunc {
                    continue;
                }
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.add_term(&exp, self.ctx.reduce_u128(ca as u128 * cb as u128));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = TruncatedSeries::one(self.ctx, self.nvars, self.trunc);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Inverse of a series with unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.ctx.scalar(self.constant_term());
        if !c0.is_unit() {
            return Err(Error::NotInvertible);
        }
        let c0_inv = c0.inverse()?.residue();
        // normalized = 1 + m with m of positive degree; iterate acc = 1 - m*acc
        let normalized = self.scale(c0_inv as i64);
        let one = TruncatedSeries::one(self.ctx, self.nvars, self.trunc);
        let m = normalized.sub(&one);
        let mut acc = one.clone();
        for _ in 0..self.trunc {
            acc = one.sub(&m.mul(&acc));
        }
        Ok(acc.scale(c0_inv as i64))
    }

    /// Substitute the series `s` for variable `j`.
    pub fn substitute(&self, j: usize, s: &Self) -> Self {
        assert!(j < self.nvars);
        self.check_compatible(s);
        let mut out = TruncatedSeries::zero(self.ctx, self.nvars, self.trunc.min(s.trunc));
        for (exp, &c) in &self.terms {
            let mut factor = TruncatedSeries::constant(self.ctx, self.nvars, out.trunc, 0);
            factor.add_term(
                &{
                    let mut e = exp.clone();
                    e[j] = 0;
                    e
                },
                c,
            );
            let term = factor.mul(&s.pow(exp[j] as u32));
            out = out.add(&term);
        }
        out
    }

    /// Project a series supported on a single variable down to one variable.
    /// Panics if any term involves another variable.
    pub fn restrict_to_var(&self, j: usize) -> Self {
        assert!(j < self.nvars);
        let mut out = TruncatedSeries::zero(self.ctx, 1, self.trunc);
        for (exp, &c) in &self.terms {
            assert!(
                exp.iter()
                    .enumerate()
                    .all(|(k, &e)| k == j || e == 0),
                "series involves variables other than T_{}",
                j + 1
            );
            out.add_term(&[exp[j]], c);
        }
        out
    }

    /// Embed a one-variable series as a series in `nvars` variables using
    /// variable `j`.
    pub fn embed(&self, nvars: usize, j: usize) -> Self {
        assert_eq!(self.nvars, 1);
        assert!(j < nvars);
        let mut out = TruncatedSeries::zero(self.ctx, nvars, self.trunc);
        for (exp, &c) in &self.terms {
            let mut e = vec![0u16; nvars];
            e[j] = exp[0];
            out.add_term(&e, c);
        }
        out
    }

    /// Smallest valuation of any coefficient; `a` when zero at precision.
    pub fn min_valuation(&self) -> u32 {
        self.terms
            .values()
            .map(|&c| self.ctx.valuation_of(c))
            .min()
            .unwrap_or(self.ctx.precision())
    }

    /// Divide every coefficient exactly by `p^v`, landing in precision `a-v`.
    pub fn shift_down(&self, v: u32) -> Result<Self> {
        let ctx_eff = self.ctx.with_precision(self.ctx.precision() - v)?;
        let mut out = TruncatedSeries::zero(ctx_eff, self.nvars, self.trunc);
        for (exp, &c) in &self.terms {
            out.add_term(exp, self.ctx.scalar(c).shift_down(v).residue());
        }
        Ok(out)
    }

    /// Reinterpret the canonical residues at a finer precision.
    pub fn lift_precision(&self, ctx_fine: PadicCtx) -> Self {
        assert_eq!(ctx_fine.p(), self.ctx.p());
        assert!(ctx_fine.precision() >= self.ctx.precision());
        let mut out = TruncatedSeries::zero(ctx_fine, self.nvars, self.trunc);
        for (exp, &c) in &self.terms {
            out.add_term(exp, c);
        }
        out
    }

    pub fn reduce_precision(&self, ctx_coarse: PadicCtx) -> Self {
        assert_eq!(ctx_coarse.p(), self.ctx.p());
        assert!(ctx_coarse.precision() <= self.ctx.precision());
        let mut out = TruncatedSeries::zero(ctx_coarse, self.nvars, self.trunc);
        for (exp, &c) in &self.terms {
            out.add_term(exp, c % ctx_coarse.modulus());
        }
        out
    }

    fn check_compatible(&self, rhs: &Self) {
        assert_eq!(self.ctx, rhs.ctx, "mixed series contexts");
        assert_eq!(self.nvars, rhs.nvars, "mixed variable counts");
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (exp, &c) in &self.terms {
            let mut monomials = Vec::new();
            for (j, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if self.nvars == 1 {
                    "T".to_string()
                } else {
                    format!("T{}", j + 1)
                };
                monomials.push(if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                });
            }
            let mono = monomials.join("*");
            parts.push(match (c, mono.is_empty()) {
                (_, true) => format!("{c}"),
                (1, false) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    exp: Vec<u16>,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    p: u64,
    a: u32,
    d: usize,
    #[serde(rename = "D")]
    trunc: u32,
    terms: Vec<TermDto>,
}

impl From<TruncatedSeries> for SeriesDto {
    fn from(s: TruncatedSeries) -> Self {
        SeriesDto {
            p: s.ctx.p(),
            a: s.ctx.precision(),
            d: s.nvars,
            trunc: s.trunc,
            terms: s
                .terms
                .iter()
                .map(|(exp, &c)| TermDto {
                    exp: exp.clone(),
                    c,
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesDto> for TruncatedSeries {
    type Error = Error;

    fn try_from(dto: SeriesDto) -> Result<Self> {
        let ctx = PadicCtx::new(dto.p, dto.a)?;
        let mut s = TruncatedSeries::zero(ctx, dto.d, dto.trunc);
        for term in &dto.terms {
            if term.exp.len() != dto.d {
                return Err(Error::InvalidInput(format!(
                    "exponent vector {:?} does not have {} entries",
                    term.exp, dto.d
                )));
            }
            if term.exp.iter().map(|&e| e as u32).sum::<u32>() > dto.trunc {
                return Err(Error::InvalidInput(format!(
                    "term {:?} exceeds the truncation degree {}",
                    term.exp, dto.trunc
                )));
            }
            s.add_term(&term.exp, term.c);
        }
        Ok(s)
    }
}

//! Exponent machinery for the elements
//! `S_alpha = (1+T_1)(1+T_2)^{alpha_2} .. (1+T_{i+1})^{alpha_{i+1}} - 1`
//! and the substitution that kills them.
//!
//! `Z_p`-exponents are handled by lifting to an integer modulo
//! `p^{a + v_p(D!)}`: the binomial `C(alpha, k)` for `k <= D` is then exact
//! modulo `p^a` because dividing by `k!` costs at most `v_p(D!)` digits. A
//! scalar argument is zero-extended, so its coefficients are exact for the
//! integer lift of the stored residue.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::genericity::GenericityReport;
use crate::iwasawa::series::TruncatedSeries;
use crate::padic::{PadicCtx, PadicScalar};
use crate::rng::StreamRng;

/// The exponent tuple `(alpha_2, .., alpha_{i+1})`, entries sharing `(p, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    entries: Vec<PadicScalar>,
}

impl AlphaVector {
    pub fn new(entries: Vec<PadicScalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("alpha vector must be nonempty".into()));
        }
        let ctx = entries[0].ctx();
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(Error::InvalidInput(
                "alpha entries must share one (p, a) context".into(),
            ));
        }
        Ok(AlphaVector { entries })
    }

    pub fn from_residues(ctx: PadicCtx, residues: &[u64]) -> Result<Self> {
        Self::new(residues.iter().map(|&r| ctx.scalar(r)).collect())
    }

    pub fn ctx(&self) -> PadicCtx {
        self.entries[0].ctx()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PadicScalar] {
        &self.entries
    }
}

/// `v_p(n!)` by Legendre's formula.
pub fn factorial_valuation(p: u64, n: u32) -> u32 {
    let mut total = 0u32;
    let mut q = p;
    while q <= n as u64 {
        total += (n as u64 / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

/// `(1+T)^e` for an exact integer exponent, truncated at degree `trunc`,
/// with coefficients exact mod `p^a`.
pub fn binom_series_exact(ctx: PadicCtx, exponent: &BigInt, trunc: u32) -> TruncatedSeries {
    // lift the exponent into [0, p^{a + v_p(D!)})
    let extended = BigInt::from(ctx.p()).pow(ctx.precision() + factorial_valuation(ctx.p(), trunc));
    let mut lift = exponent % &extended;
    if lift.is_negative() {
        lift += &extended;
    }
    let modulus = BigInt::from(ctx.modulus());
    let mut out = TruncatedSeries::zero(ctx, 1, trunc);
    let mut binom = BigInt::from(1);
    for k in 0..=trunc {
        if k > 0 {
            binom = binom * (&lift - BigInt::from(k - 1)) / BigInt::from(k);
        }
        let mut residue = &binom % &modulus;
        if residue.is_negative() {
            residue += &modulus;
        }
        out.add_term(&[k as u16], residue.to_u64().unwrap());
    }
    out
}

/// `(1+T)^alpha` for a scalar exponent, using the zero-extended lift of the
/// stored residue.
pub fn binom_series(alpha: PadicScalar, trunc: u32) -> TruncatedSeries {
    binom_series_exact(alpha.ctx(), &BigInt::from(alpha.residue()), trunc)
}

/// `S_alpha = (1+T_1) (1+T_2)^{alpha_2} .. (1+T_{i+1})^{alpha_{i+1}} - 1`
/// in `d = len(alpha) + 1` variables.
pub fn s_alpha(alpha: &AlphaVector, trunc: u32) -> TruncatedSeries {
    let ctx = alpha.ctx();
    let d = alpha.len() + 1;
    let one = TruncatedSeries::one(ctx, d, trunc);
    let mut product = one.add(&TruncatedSeries::variable(ctx, d, trunc, 0));
    for (j, &entry) in alpha.entries().iter().enumerate() {
        let factor = binom_series(entry, trunc).embed(d, j + 1);
        product = product.mul(&factor);
    }
    product.sub(&one)
}

/// The image of a two-variable series under `1 + T_1 -> (1+T_2)^{-alpha_2}`
/// (the sections along which `S_alpha` vanishes), as a series in `T_2`.
pub fn bar_substitute(f: &TruncatedSeries, alpha: &AlphaVector) -> TruncatedSeries {
    assert_eq!(f.nvars(), 2, "bar substitution expects two variables");
    assert_eq!(alpha.len(), 1, "bar substitution expects a length-1 alpha");
    let ctx = f.ctx();
    let trunc = f.truncation();
    let exponent = -BigInt::from(alpha.entries()[0].residue());
    let image = binom_series_exact(ctx, &exponent, trunc)
        .embed(2, 1)
        .sub(&TruncatedSeries::one(ctx, 2, trunc));
    f.substitute(0, &image).restrict_to_var(1)
}

/// Frequency of `bar_substitute(f, alpha) = 0` at precision over uniform
/// alpha. Nonzero `f` vanishes for at most finitely many alpha, so the
/// frequency should be indistinguishable from zero.
pub fn bar_nonzero_scan(
    f: &TruncatedSeries,
    samples: u64,
    seed: u64,
) -> Result<GenericityReport> {
    if f.is_zero() {
        return Err(Error::ZeroAtPrecision);
    }
    let ctx = f.ctx();
    let failures = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = StreamRng::stream(seed, index);
            let alpha = AlphaVector::new(vec![crate::padic::uniform_scalar(ctx, &mut rng)])
                .expect("nonempty");
            u64::from(bar_substitute(f, &alpha).is_zero())
        })
        .sum();
    Ok(GenericityReport {
        samples,
        failures,
        certificate_used: false,
        seed,
    })
}

/// The canonical residues `alpha mod p^level` whose bar substitution kills
/// `f` at precision.
pub fn bar_zero_enumerate(f: &TruncatedSeries, level: u32) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::ZeroAtPrecision);
    }
    let ctx = f.ctx();
    if level > ctx.precision() {
        return Err(Error::PrecisionExceeded {
            n: level,
            a: ctx.precision(),
        });
    }
    let count = ctx.p().pow(level);
    if count as u128 > 1_000_000 {
        return Err(Error::EnumerationTooLarge {
            count: count as u128,
            limit: 1_000_000,
        });
    }
    let mut vanishing = Vec::new();
    for r in 0..count {
        let alpha = AlphaVector::new(vec![ctx.scalar(r)])?;
        if bar_substitute(f, &alpha).is_zero() {
            vanishing.push(r);
        }
    }
    Ok(vanishing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, a: u32) -> PadicCtx {
        PadicCtx::new(p, a).unwrap()
    }

    #[test]
    fn binomial_with_zero_exponent_is_one() {
        let c = ctx(3, 6);
        let s = binom_series(c.scalar(0), 8);
        assert_eq!(s, TruncatedSeries::one(c, 1, 8));
    }

    #[test]
    fn binomial_with_exponent_two() {
        let c = ctx(3, 6);
        let s = binom_series(c.scalar(2), 8);
        assert_eq!(s, TruncatedSeries::from_coeffs(c, 8, &[1, 2, 1]).unwrap());
    }

    #[test]
    fn binomial_with_exponent_minus_one_alternates() {
        let c = ctx(3, 6);
        let s = binom_series_exact(c, &BigInt::from(-1), 8);
        for k in 0..=8u32 {
            let expected = if k % 2 == 0 { 1 } else { c.modulus() - 1 };
            assert_eq!(s.coeff_at(k), expected, "coefficient of T^{k}");
        }
        // multiplying by (1 + T) recovers 1
        let one_plus_t =
            TruncatedSeries::one(c, 1, 8).add(&TruncatedSeries::variable(c, 1, 8, 0));
        assert_eq!(s.mul(&one_plus_t), TruncatedSeries::one(c, 1, 8));
    }

    #[test]
    fn s_alpha_catalog() {
        let c = ctx(3, 6);
        // alpha = (0): S = T_1
        let alpha = AlphaVector::from_residues(c, &[0]).unwrap();
        let s = s_alpha(&alpha, 8);
        assert_eq!(s, TruncatedSeries::variable(c, 2, 8, 0));

        // alpha = (1): S = T_1 + T_2 + T_1 T_2
        let alpha = AlphaVector::from_residues(c, &[1]).unwrap();
        let s = s_alpha(&alpha, 8);
        let t1 = TruncatedSeries::variable(c, 2, 8, 0);
        let t2 = TruncatedSeries::variable(c, 2, 8, 1);
        assert_eq!(s, t1.add(&t2).add(&t1.mul(&t2)));

        // alpha = (p): coefficient of T_2 is p
        let alpha = AlphaVector::from_residues(c, &[3]).unwrap();
        let s = s_alpha(&alpha, 8);
        assert_eq!(s.coeff(&[0, 1]), 3);
        assert_eq!(s.constant_term(), 0);
    }

    #[test]
    fn s_alpha_difference_factors_through_the_group_law() {
        // S_alpha - S_beta = (1+T_1)(1+T_2)^beta * ((1+T_2)^{alpha-beta} - 1)
        let c = ctx(3, 8);
        let trunc = 10;
        for (alpha_r, beta_r) in [(5u64, 2u64), (17, 4), (100, 73)] {
            let alpha = AlphaVector::from_residues(c, &[alpha_r]).unwrap();
            let beta = AlphaVector::from_residues(c, &[beta_r]).unwrap();
            let lhs = s_alpha(&alpha, trunc).sub(&s_alpha(&beta, trunc));
            let unit = TruncatedSeries::one(c, 2, trunc)
                .add(&TruncatedSeries::variable(c, 2, trunc, 0))
                .mul(&binom_series(c.scalar(beta_r), trunc).embed(2, 1));
            let diff = binom_series_exact(
                c,
                &(BigInt::from(alpha_r) - BigInt::from(beta_r)),
                trunc,
            )
            .embed(2, 1)
            .sub(&TruncatedSeries::one(c, 2, trunc));
            assert_eq!(lhs, unit.mul(&diff));
        }
    }

    #[test]
    fn bar_substitute_catalog() {
        let c = ctx(3, 6);
        let trunc = 10;
        let t1 = TruncatedSeries::variable(c, 2, trunc, 0);
        let t2 = TruncatedSeries::variable(c, 2, trunc, 1);

        // f = T_1, alpha = (0): the unique vanishing section
        let alpha0 = AlphaVector::from_residues(c, &[0]).unwrap();
        assert!(bar_substitute(&t1, &alpha0).is_zero());

        // f = T_2 is untouched
        let alpha1 = AlphaVector::from_residues(c, &[1]).unwrap();
        assert_eq!(
            bar_substitute(&t2, &alpha1),
            TruncatedSeries::variable(c, 1, trunc, 0)
        );

        // f = T_1, alpha = (1): (1+T_2)^{-1} - 1 = -T_2 + T_2^2 - ..
        let image = bar_substitute(&t1, &alpha1);
        for k in 1..=trunc {
            let expected = if k % 2 == 1 { c.modulus() - 1 } else { 1 };
            assert_eq!(image.coeff_at(k), expected);
        }
    }

    #[test]
    fn bar_zero_scan_catalog() {
        let c = ctx(3, 6);
        let trunc = 10;
        let t1 = TruncatedSeries::variable(c, 2, trunc, 0);
        let t2 = TruncatedSeries::variable(c, 2, trunc, 1);
        let p_const = TruncatedSeries::constant(c, 2, trunc, 3);

        // exactly alpha = 0 vanishes among residues mod p^2
        assert_eq!(bar_zero_enumerate(&t1, 2).unwrap(), vec![0]);
        // T_2 and constants never vanish
        assert!(bar_zero_enumerate(&t2, 2).unwrap().is_empty());
        assert!(bar_zero_enumerate(&p_const, 2).unwrap().is_empty());

        let report = bar_nonzero_scan(&t2, 500, 3).unwrap();
        assert_eq!(report.failures, 0);
    }
}

//! Weierstrass preparation of one-variable truncated series and the
//! characteristic-ideal data of elementary modules.
//!
//! A nonzero `f` factors as `p^mu * w * u` with `w` a distinguished
//! polynomial (monic of degree `lambda`, lower coefficients divisible by
//! `p`) and `u` a unit series. Dividing out `p^mu` loses `mu` digits, so the
//! factors are exact modulo `p^{a - mu}`; all equality claims on
//! characteristic ideals are made at that precision.

use crate::error::{Error, Result};
use crate::iwasawa::poly::PadicPoly;
use crate::iwasawa::series::TruncatedSeries;

#[derive(Clone, Debug)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: u32,
    /// monic of degree `lambda`, precision `a - mu`
    pub distinguished: PadicPoly,
    /// unit series with `u * distinguished = f / p^mu`, precision `a - mu`
    pub unit_cofactor: TruncatedSeries,
}

/// Product of the Weierstrass data of the factors of an elementary module
/// `⊕ Λ/(f_l)`: the invariants add and the distinguished polynomials
/// multiply. Equality is up-to-unit: equal `(mu, lambda)` and congruent
/// monic distinguished polynomials at the common precision.
#[derive(Clone, Debug)]
pub struct CharIdeal {
    pub mu: u32,
    pub lambda: u32,
    pub distinguished: PadicPoly,
}

/// An elementary module presented by its nonzero annihilator generators.
#[derive(Clone, Debug)]
pub struct ElementaryModule {
    factors: Vec<TruncatedSeries>,
}

impl ElementaryModule {
    pub fn new(factors: Vec<TruncatedSeries>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput(
                "elementary module needs at least one factor".into(),
            ));
        }
        for f in &factors {
            if f.is_zero() {
                return Err(Error::ZeroAtPrecision);
            }
        }
        Ok(ElementaryModule { factors })
    }

    pub fn factors(&self) -> &[TruncatedSeries] {
        &self.factors
    }
}

/// The degree-shifted upper part `sum_{k >= cut} f_k T^{k - cut}`.
fn high_part(f: &TruncatedSeries, cut: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(f.ctx(), 1, f.truncation());
    for (exp, &c) in f.terms() {
        let k = exp[0] as u32;
        if k >= cut {
            out.add_term(&[(k - cut) as u16], c);
        }
    }
    out
}

/// The polynomial part of degree `< cut`.
fn low_part(f: &TruncatedSeries, cut: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(f.ctx(), 1, f.truncation());
    for (exp, &c) in f.terms() {
        if (exp[0] as u32) < cut {
            out.add_term(exp, c);
        }
    }
    out
}

/// Weierstrass preparation of a one-variable truncated series.
pub fn weierstrass(f: &TruncatedSeries) -> Result<WeierstrassData> {
    assert_eq!(f.nvars(), 1, "weierstrass preparation is one-variable");
    if f.is_zero() {
        return Err(Error::ZeroAtPrecision);
    }
    let mu = f.min_valuation();
    let g = f.shift_down(mu)?;
    let ctx = g.ctx();

    let lambda = (0..=f.truncation())
        .find(|&k| ctx.scalar(g.coeff_at(k)).is_unit())
        .ok_or(Error::TruncationTooSmall {
            degree: f.truncation(),
        })?;

    if lambda == 0 {
        return Ok(WeierstrassData {
            mu,
            lambda: 0,
            distinguished: PadicPoly::one(ctx),
            unit_cofactor: g,
        });
    }

    // Solve T^lambda = q * g + r with deg r < lambda. Writing
    // g = g_low + T^lambda * g_high with g_high a unit series and g_low
    // divisible by p, the update q += g_high^{-1} * high(T^lambda - q g)
    // contracts the residual by a factor of p per round.
    let g_high = high_part(&g, lambda);
    let g_high_inv = g_high.invert()?;
    let target = TruncatedSeries::variable(ctx, 1, f.truncation(), 0).pow(lambda);
    let mut q = TruncatedSeries::zero(ctx, 1, f.truncation());
    let mut residual = target.clone();
    for _ in 0..=ctx.precision() {
        let high = high_part(&residual, lambda);
        if high.is_zero() {
            break;
        }
        q = q.add(&g_high_inv.mul(&high));
        residual = target.sub(&q.mul(&g));
    }
    debug_assert!(high_part(&residual, lambda).is_zero());
    let r = low_part(&residual, lambda);

    // w = T^lambda - r is distinguished; u = q^{-1} satisfies g = u w
    let mut w_coeffs = vec![0u64; lambda as usize + 1];
    for (exp, &c) in r.neg().terms() {
        w_coeffs[exp[0] as usize] = c;
    }
    w_coeffs[lambda as usize] = 1;
    let distinguished = PadicPoly::new(ctx, &w_coeffs);
    debug_assert!(distinguished
        .coeffs()
        .iter()
        .take(lambda as usize)
        .all(|&c| ctx.valuation_of(c) >= 1));
    let unit_cofactor = q.invert()?;

    Ok(WeierstrassData {
        mu,
        lambda,
        distinguished,
        unit_cofactor,
    })
}

impl WeierstrassData {
    /// `p^mu * distinguished * unit_cofactor` at the original precision;
    /// reproduces the prepared series modulo `(p^a, degree D)`.
    pub fn reconstruct(&self, ctx_full: crate::padic::PadicCtx) -> TruncatedSeries {
        let trunc = self.unit_cofactor.truncation();
        let mut w = TruncatedSeries::zero(self.unit_cofactor.ctx(), 1, trunc);
        for (k, &c) in self.distinguished.coeffs().iter().enumerate() {
            w.add_term(&[k as u16], c);
        }
        let product = w.mul(&self.unit_cofactor).lift_precision(ctx_full);
        let scale = ctx_full.p().pow(self.mu);
        product.scale(scale as i64)
    }

    pub fn char_ideal(&self) -> CharIdeal {
        CharIdeal {
            mu: self.mu,
            lambda: self.lambda,
            distinguished: self.distinguished.clone(),
        }
    }
}

impl CharIdeal {
    /// Equality up to a unit: `(mu, lambda)` agree and the monic
    /// distinguished polynomials are congruent at the coarser of the two
    /// precisions.
    pub fn eq_up_to_unit(&self, other: &CharIdeal) -> bool {
        if self.mu != other.mu || self.lambda != other.lambda {
            return false;
        }
        let a1 = self.distinguished.ctx().precision();
        let a2 = other.distinguished.ctx().precision();
        let common = a1.min(a2);
        let ctx = self.distinguished.ctx().with_precision(common).unwrap();
        let reduce = |p: &PadicPoly| {
            PadicPoly::new(
                ctx,
                &p.coeffs()
                    .iter()
                    .map(|&c| c % ctx.modulus())
                    .collect::<Vec<_>>(),
            )
        };
        reduce(&self.distinguished) == reduce(&other.distinguished)
    }
}

/// Characteristic-ideal data of a one-variable elementary module: the `mu`
/// and `lambda` of the factors add and the distinguished polynomials
/// multiply, all at precision `a - mu_total`.
pub fn char_ideal(module: &ElementaryModule) -> Result<CharIdeal> {
    let parts: Vec<WeierstrassData> = module
        .factors()
        .iter()
        .map(weierstrass)
        .collect::<Result<_>>()?;
    let mu: u32 = parts.iter().map(|w| w.mu).sum();
    let lambda: u32 = parts.iter().map(|w| w.lambda).sum();
    let ctx_full = module.factors()[0].ctx();
    if mu >= ctx_full.precision() {
        return Err(Error::ZeroAtPrecision);
    }
    let ctx_eff = ctx_full.with_precision(ctx_full.precision() - mu)?;
    let mut distinguished = PadicPoly::one(ctx_eff);
    for part in &parts {
        let reduced = PadicPoly::new(
            ctx_eff,
            &part
                .distinguished
                .coeffs()
                .iter()
                .map(|&c| c % ctx_eff.modulus())
                .collect::<Vec<_>>(),
        );
        distinguished = distinguished.mul(&reduced);
    }
    Ok(CharIdeal {
        mu,
        lambda,
        distinguished,
    })
}

//! Descent of characteristic ideals from two variables to one.
//!
//! A distinguished `f` in `T_1` of degree `lambda` makes the quotient by
//! `(f)` a free module of rank `lambda` over the one-variable ring, with
//! basis `1, T_1, .., T_1^{lambda-1}`. Multiplication by `T_1` acts through
//! a companion matrix `A`, so the coinvariants under the section labelled by
//! `alpha` have characteristic ideal `det((I + A)(1+T_2)^{alpha_2} - I)`.
//! That determinant must agree, up to a unit, with the Weierstrass data of
//! the direct substitution `bar_substitute(f, alpha)`; the descent operation
//! computes the determinant route and callers can cross-check.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::iwasawa::alpha::{binom_series_exact, AlphaVector};
use crate::iwasawa::series::TruncatedSeries;
use crate::iwasawa::weierstrass::{weierstrass, CharIdeal};

/// Coefficients of `f` as a polynomial in `T_1` over one-variable series in
/// `T_2`, checked to be distinguished: monic of degree >= 1 with lower
/// coefficients in the maximal ideal.
fn distinguished_coefficients(f: &TruncatedSeries) -> Result<Vec<TruncatedSeries>> {
    assert_eq!(f.nvars(), 2, "descent expects a two-variable series");
    let ctx = f.ctx();
    let trunc = f.truncation();
    let degree = f
        .terms()
        .keys()
        .map(|exp| exp[0] as u32)
        .max()
        .unwrap_or(0);
    if degree == 0 {
        return Err(Error::NotDistinguished(
            "no positive power of T1 appears".into(),
        ));
    }
    let mut coeffs = vec![TruncatedSeries::zero(ctx, 1, trunc); degree as usize + 1];
    for (exp, &c) in f.terms() {
        coeffs[exp[0] as usize].add_term(&[exp[1]], c);
    }
    let leading = &coeffs[degree as usize];
    if *leading != TruncatedSeries::one(ctx, 1, trunc) {
        return Err(Error::NotDistinguished(format!(
            "leading T1 coefficient is {leading}, not 1"
        )));
    }
    for (k, g) in coeffs.iter().enumerate().take(degree as usize) {
        if ctx.scalar(g.constant_term()).is_unit() {
            return Err(Error::NotDistinguished(format!(
                "coefficient of T1^{k} has a unit constant term"
            )));
        }
    }
    Ok(coeffs)
}

/// Companion-style matrix of multiplication by `T_1` on the quotient by a
/// distinguished `f`, entries one-variable series in `T_2`.
pub fn companion_rep(f: &TruncatedSeries) -> Result<Vec<Vec<TruncatedSeries>>> {
    let coeffs = distinguished_coefficients(f)?;
    let lambda = coeffs.len() - 1;
    let ctx = f.ctx();
    let trunc = f.truncation();
    let zero = TruncatedSeries::zero(ctx, 1, trunc);
    let mut a = vec![vec![zero; lambda]; lambda];
    for col in 0..lambda {
        if col + 1 < lambda {
            a[col + 1][col] = TruncatedSeries::one(ctx, 1, trunc);
        } else {
            for (row, slot) in a.iter_mut().enumerate() {
                slot[lambda - 1] = coeffs[row].neg();
            }
        }
    }
    Ok(a)
}

/// Division-free determinant of a square matrix of series.
fn series_determinant(m: &[Vec<TruncatedSeries>]) -> TruncatedSeries {
    let n = m.len();
    assert!(n >= 1 && n <= 16, "determinant guard: dimension {n}");
    let ctx = m[0][0].ctx();
    let trunc = m[0][0].truncation();
    let nvars = m[0][0].nvars();
    let zero = TruncatedSeries::zero(ctx, nvars, trunc);
    let mut minors = vec![zero.clone(); 1 << n];
    minors[0] = TruncatedSeries::one(ctx, nvars, trunc);
    for mask in 1usize..(1 << n) {
        let r = (mask.count_ones() - 1) as usize;
        let mut acc = zero.clone();
        let mut positive = r % 2 == 0;
        let mut bits = mask;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let term = m[r][j].mul(&minors[mask ^ (1 << j)]);
            acc = if positive { acc.add(&term) } else { acc.sub(&term) };
            positive = !positive;
        }
        minors[mask] = acc;
    }
    minors[(1 << n) - 1].clone()
}

/// Characteristic-ideal descent along the section `alpha`: Weierstrass data
/// of `det((I + A)(1+T_2)^{alpha_2} - I)` for the companion matrix `A` of a
/// distinguished `f`.
///
/// The determinant expands to `(-1)^lambda (1+T_2)^{lambda alpha_2}` times
/// the direct substitution of `f` (the companion matrix has characteristic
/// polynomial `f`), so the result is normalized by that explicit unit
/// before preparation. This keeps the reported distinguished polynomial
/// exact at precision: an unnormalized unit multiple would smear the deep
/// coefficient digits across the truncation tail.
pub fn descend_char(f: &TruncatedSeries, alpha: &AlphaVector) -> Result<CharIdeal> {
    if alpha.len() != 1 {
        return Err(Error::InvalidInput(
            "descent handles one exponent (two variables) at a time".into(),
        ));
    }
    let a = companion_rep(f)?;
    let lambda = a.len() as u32;
    let ctx = f.ctx();
    let trunc = f.truncation();
    let exponent = BigInt::from(alpha.entries()[0].residue());
    let twist = binom_series_exact(ctx, &exponent, trunc);
    let one = TruncatedSeries::one(ctx, 1, trunc);
    let mut m = a;
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let with_identity = if r == c { entry.add(&one) } else { entry.clone() };
            let twisted = with_identity.mul(&twist);
            *entry = if r == c { twisted.sub(&one) } else { twisted };
        }
    }
    let det = series_determinant(&m);
    if det.is_zero() {
        return Err(Error::IndeterminateDeterminant);
    }
    let unit_exponent = -BigInt::from(lambda) * exponent;
    let mut normalized = det.mul(&binom_series_exact(ctx, &unit_exponent, trunc));
    if lambda % 2 == 1 {
        normalized = normalized.neg();
    }
    Ok(weierstrass(&normalized)?.char_ideal())
}

//! Divisibility of distinguished polynomials against the `(1+T)^{p^m} - 1`
//! tower: the localization-triviality test and primality to the higher
//! layer polynomials.
//!
//! A torsion quotient becomes trivial after inverting all `gamma - 1` (for
//! `gamma != 1` in the group) exactly when its characteristic ideal contains
//! some `(gamma - 1)^N`; in coordinates that is `mu = 0` together with the
//! distinguished polynomial dividing `((1+T)^{p^m} - 1)^lambda` for some
//! `m`. Degrees bound the search: a factor of the `m`-th layer has degree
//! `phi(p^m)`, so layers with `phi(p^{m+1}) > lambda` cannot contribute.

use crate::iwasawa::poly::PadicPoly;
use crate::iwasawa::weierstrass::CharIdeal;
use crate::padic::PadicCtx;

/// Euler's totient of `p^m`.
pub fn phi_p_power(p: u64, m: u32) -> u64 {
    if m == 0 {
        1
    } else {
        p.pow(m - 1) * (p - 1)
    }
}

/// Smallest `m` with `phi(p^{m+1}) > lambda`: layers beyond it cannot divide
/// a degree-`lambda` polynomial.
pub fn layer_bound(p: u64, lambda: u32) -> u32 {
    let mut m = 0;
    while phi_p_power(p, m + 1) <= lambda as u64 {
        m += 1;
    }
    m
}

/// `(1+T)^{p^m} - 1` as a polynomial.
pub fn sigma_power_minus_one(ctx: PadicCtx, p_exp: u32) -> PadicPoly {
    PadicPoly::one_plus_t_pow_minus_one(ctx, ctx.p().pow(p_exp))
}

/// The `m`-th layer polynomial
/// `((1+T)^{p^m} - 1) / ((1+T)^{p^{m-1}} - 1)`, distinguished of degree
/// `phi(p^m)`; requires `m >= 1`.
pub fn cyclotomic_layer(ctx: PadicCtx, m: u32) -> PadicPoly {
    assert!(m >= 1);
    let numerator = sigma_power_minus_one(ctx, m);
    let denominator = sigma_power_minus_one(ctx, m - 1);
    let (q, r) = numerator
        .divmod(&denominator)
        .expect("denominator is monic");
    debug_assert!(r.is_zero(), "layer polynomial division must be exact");
    q
}

/// Whether the quotient by this characteristic ideal dies after inverting
/// the `gamma - 1`: `mu = 0` and the distinguished polynomial divides
/// `((1+T)^{p^m} - 1)^lambda` for some `0 <= m <= layer_bound`.
pub fn dagger_pseudo_null(c: &CharIdeal) -> bool {
    if c.mu != 0 {
        // p divides the ideal and no power of (1+T)^{p^m} - 1 is divisible
        // by p, so the ideal cannot contain one
        return false;
    }
    if c.lambda == 0 {
        return true;
    }
    let ctx = c.distinguished.ctx();
    let p = ctx.p();
    for m in 0..=layer_bound(p, c.lambda) {
        let target = sigma_power_minus_one(ctx, m).pow(c.lambda);
        if c.distinguished
            .divides(&target)
            .expect("distinguished polynomial is monic")
        {
            return true;
        }
    }
    false
}

/// Whether no layer polynomial (for `m >= 1`) divides the distinguished
/// polynomial, i.e. the ideal is prime to `((1+T)^{p^N} - 1)/T` for every
/// `N`. Layers of degree above `lambda` are skipped outright.
pub fn prime_to_higher_cyclotomic(c: &CharIdeal) -> bool {
    let ctx = c.distinguished.ctx();
    let p = ctx.p();
    for m in 1..=layer_bound(p, c.lambda) {
        if phi_p_power(p, m) > c.lambda as u64 {
            continue;
        }
        let layer = cyclotomic_layer(ctx, m);
        if layer
            .divides(&c.distinguished)
            .expect("layer polynomial is monic")
        {
            return false;
        }
    }
    true
}

//! Reduction of the Grassmannian to finite level: class counts, exact
//! neighborhood measures, and exhaustive enumeration.
//!
//! The count of level-`n` classes is `binom_p(d, i) * p^{(n-1) i (d-i)}`
//! with `binom_p` the Gaussian binomial; a `V_n`-neighborhood is one class,
//! so by invariance of the measure under automorphisms every class has
//! measure one over the count. Enumeration cross-validates the formula.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{from_chart, subsets_lex, to_chart, ChartCoordinate, GrassmannPoint};
use crate::error::{Error, Result};
use crate::padic::PadicCtx;

const ENUMERATION_GUARD: u128 = 1_000_000;

/// Gaussian binomial `[d choose i]_p`: the number of corank-`i` direct
/// summands of `F_p^d`.
pub fn gaussian_binomial(d: usize, i: usize, p: u64) -> BigUint {
    assert!(i <= d);
    let p = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..i {
        num *= p.pow((d - k) as u32) - BigUint::one();
        den *= p.pow((k + 1) as u32) - BigUint::one();
    }
    num / den
}

/// Number of level-`n` classes of `Gr(i, Z_p^d)`, i.e. of direct-summand
/// corank-`i` submodules of `(Z/p^n)^d`.
pub fn class_count(d: usize, i: usize, p: u64, n: u32) -> BigUint {
    assert!(n >= 1, "class counting starts at level 1");
    let fiber = BigUint::from(p).pow((n - 1) * (i * (d - i)) as u32);
    gaussian_binomial(d, i, p) * fiber
}

/// Exact measure of `V_n(N_0)`: total mass one at `n = 0`, otherwise the
/// reciprocal of the class count.
pub fn measure_ball_exact(d: usize, i: usize, p: u64, n: u32) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let count = class_count(d, i, p, n).to_string().parse().unwrap();
    BigRational::new(1.into(), count)
}

/// All level-`n` classes, each once, lifted canonically to the precision of
/// `ctx` (chart blocks with entries below `p^n`). Guarded against blowup.
pub fn enumerate_finite(
    ctx: PadicCtx,
    d: usize,
    i: usize,
    n: u32,
) -> Result<Vec<GrassmannPoint>> {
    if i == 0 || i > d {
        return Err(Error::InvalidInput(format!(
            "corank i = {i} must satisfy 1 <= i <= d = {d}"
        )));
    }
    if n < 1 || n > ctx.precision() {
        return Err(Error::PrecisionExceeded {
            n,
            a: ctx.precision(),
        });
    }
    let count = class_count(d, i, ctx.p(), n);
    let count_u128 = count.to_u128().unwrap_or(u128::MAX);
    if count_u128 > ENUMERATION_GUARD {
        return Err(Error::EnumerationTooLarge {
            count: count_u128,
            limit: ENUMERATION_GUARD,
        });
    }

    let ctx_n = ctx.with_precision(n)?;
    let cells = i * (d - i);
    let base = ctx_n.modulus();
    let mut classes = Vec::new();
    for w in subsets_lex(d, d - i) {
        // odometer over the i x (d-i) block mod p^n; keep self-canonical charts
        let mut digits = vec![0u64; cells];
        loop {
            let chart = ChartCoordinate::from_parts(ctx_n, d, w.clone(), &digits)?;
            let point = from_chart(&chart);
            if to_chart(&point) == chart {
                let lifted = ChartCoordinate::from_parts(ctx, d, w.clone(), &digits)?;
                classes.push(from_chart(&lifted));
            }
            let mut pos = 0;
            loop {
                if pos == cells {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < base {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == cells {
                break;
            }
        }
    }
    debug_assert_eq!(BigUint::from(classes.len()), count);
    Ok(classes)
}

//! Haar-uniform sampling of `GL_d(Z/p^a)` by rejection.
//!
//! Entries are drawn uniformly in `[0, p^a)` and the matrix is kept when its
//! reduction mod `p` is invertible. Acceptance happens with probability
//! `prod_{k=1..d} (1 - p^{-k})` per draw, so the loop terminates quickly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use super::{PadicCtx, PadicMatrix, PadicScalar};

/// One uniform residue in `[0, p^a)`.
pub fn uniform_scalar<R: Rng + ?Sized>(ctx: PadicCtx, rng: &mut R) -> PadicScalar {
    ctx.scalar(rng.random_range(0..ctx.modulus()))
}

/// A matrix with independent uniform entries.
pub fn uniform_matrix<R: Rng + ?Sized>(
    ctx: PadicCtx,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> PadicMatrix {
    let mut m = PadicMatrix::zero(ctx, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.random_range(0..ctx.modulus()));
        }
    }
    m
}

/// Haar-uniform element of `GL_d(Z/p^a)`.
pub fn sample_gl<R: Rng + ?Sized>(ctx: PadicCtx, d: usize, rng: &mut R) -> PadicMatrix {
    assert!(d >= 1, "GL_d needs d >= 1");
    loop {
        let m = uniform_matrix(ctx, d, d, rng);
        if m.is_unit_mod_p() {
            return m;
        }
    }
}

/// Exact acceptance probability of one rejection draw,
/// `|GL_d(F_p)| / p^{d^2} = prod_{k=1..d} (1 - p^{-k})`.
pub fn gl_unit_fraction(d: usize, p: u64) -> BigRational {
    let mut frac = BigRational::one();
    let p = BigInt::from(p);
    for k in 1..=d {
        let pk = p.pow(k as u32);
        frac *= BigRational::new(&pk - 1, pk);
    }
    frac
}

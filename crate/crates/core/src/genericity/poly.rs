//! Multivariate polynomials over residues mod `p^a` and the Monte-Carlo
//! measurement of their zero sets: the observed frequency of `f(alpha) = 0
//! (mod p^a)` over uniform `alpha` tends to zero as the precision grows for
//! any fixed nonzero polynomial.

use rayon::prelude::*;
use std::collections::BTreeMap;

use super::GenericityReport;
use crate::error::{Error, Result};
use crate::padic::PadicCtx;
use crate::rng::StreamRng;

/// A polynomial in `nvars` variables with coefficients reduced mod `p^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: PadicCtx,
    nvars: usize,
    terms: BTreeMap<Vec<u16>, u64>,
}

impl MultiPoly {
    pub fn new(ctx: PadicCtx, nvars: usize) -> Self {
        MultiPoly {
            ctx,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Add `coeff * prod x_j^{exps[j]}` (signed coefficient, canonical lift).
    pub fn with_term(mut self, exps: &[u16], coeff: i64) -> Self {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        let c = self.ctx.residue_of_i64(coeff);
        let entry = self.terms.entry(exps.to_vec()).or_insert(0);
        *entry = self.ctx.reduce_u128(*entry as u128 + c as u128);
        if *entry == 0 {
            self.terms.remove(exps);
        }
        self
    }

    pub fn constant(ctx: PadicCtx, nvars: usize, value: i64) -> Self {
        MultiPoly::new(ctx, nvars).with_term(&vec![0; nvars], value)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, alpha: &[u64]) -> u64 {
        assert_eq!(alpha.len(), self.nvars, "evaluation point length");
        let m = self.ctx.modulus() as u128;
        let mut acc = 0u128;
        for (exps, &coeff) in &self.terms {
            let mut term = coeff as u128;
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = term * (alpha[j] as u128 % m) % m;
                }
            }
            acc = (acc + term) % m;
        }
        acc as u64
    }

    /// Exact count of zeros on `[0, p^a)^nvars` by brute force, guarded.
    pub fn zero_count_exhaustive(&self, guard: u128) -> Result<u128> {
        let m = self.ctx.modulus() as u128;
        let total = m.checked_pow(self.nvars as u32).ok_or(
            Error::EnumerationTooLarge {
                count: u128::MAX,
                limit: guard,
            },
        )?;
        if total > guard {
            return Err(Error::EnumerationTooLarge {
                count: total,
                limit: guard,
            });
        }
        let mut alpha = vec![0u64; self.nvars];
        let mut zeros = 0u128;
        for _ in 0..total {
            if self.eval(&alpha) == 0 {
                zeros += 1;
            }
            for digit in alpha.iter_mut() {
                *digit += 1;
                if *digit < m as u64 {
                    break;
                }
                *digit = 0;
            }
        }
        Ok(zeros)
    }
}

/// Frequency of `f(alpha) = 0 (mod p^a)` over uniform samples.
pub fn polynomial_zero_measure(
    f: &MultiPoly,
    samples: u64,
    seed: u64,
) -> Result<GenericityReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    let failures = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = StreamRng::stream(seed, index);
            let alpha: Vec<u64> = (0..f.nvars())
                .map(|_| crate::padic::uniform_scalar(ctx, &mut rng).residue())
                .collect();
            u64::from(f.eval(&alpha) == 0)
        })
        .sum();
    Ok(GenericityReport {
        samples,
        failures,
        certificate_used: false,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, a: u32) -> PadicCtx {
        PadicCtx::new(p, a).unwrap()
    }

    #[test]
    fn constant_one_never_vanishes() {
        let f = MultiPoly::constant(ctx(3, 4), 2, 1);
        let report = polynomial_zero_measure(&f, 2000, 3).unwrap();
        assert_eq!(report.failures, 0);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let f = MultiPoly::new(ctx(3, 4), 1);
        assert!(matches!(
            polynomial_zero_measure(&f, 10, 0),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn single_variable_zero_frequency() {
        // f = x over p = 3, a = 4: exactly one zero among 81 residues
        let c = ctx(3, 4);
        let f = MultiPoly::new(c, 1).with_term(&[1], 1);
        assert_eq!(f.zero_count_exhaustive(1_000_000).unwrap(), 1);
        let samples = 40_000u64;
        let report = polynomial_zero_measure(&f, samples, 17).unwrap();
        let q: f64 = 1.0 / 81.0;
        let sigma = (q * (1.0 - q) / samples as f64).sqrt();
        let observed = report.failures as f64 / samples as f64;
        assert!((observed - q).abs() < 3.0 * sigma);
    }

    #[test]
    fn product_minus_variable_zero_count() {
        // f = x1 x2 - x3 over p = 2, a = 6: one solution in x3 per (x1, x2)
        let c = ctx(2, 6);
        let f = MultiPoly::new(c, 3)
            .with_term(&[1, 1, 0], 1)
            .with_term(&[0, 0, 1], -1);
        let zeros = f.zero_count_exhaustive(1_000_000).unwrap();
        assert_eq!(zeros, 64 * 64);
    }

    #[test]
    fn coefficients_cancel_to_zero() {
        let c = ctx(5, 2);
        let f = MultiPoly::new(c, 1).with_term(&[2], 3).with_term(&[2], -3);
        assert!(f.is_zero());
    }
}

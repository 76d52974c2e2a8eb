//! Membership of `S_alpha` in catalog ideals generated by a subset of
//! `{p, T_1, .., T_d}`. General height-2 primes would need a Groebner
//! engine and stay out of scope; the catalog covers the monomial cases and
//! reduction is literal: kill the listed variables, then read the rest mod
//! `p` or mod `p^a`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::iwasawa::alpha::{s_alpha, AlphaVector};

/// An ideal generated by a subset of `{p, T_1, .., T_d}` (variables stored
/// 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogIdeal {
    includes_p: bool,
    vars: BTreeSet<usize>,
}

impl CatalogIdeal {
    pub fn new(includes_p: bool, vars: BTreeSet<usize>) -> Self {
        CatalogIdeal { includes_p, vars }
    }

    /// Parse generator names like `"p"`, `"T1"`, `"T3"` (1-based variables).
    pub fn parse(generators: &[String]) -> Result<Self> {
        let mut includes_p = false;
        let mut vars = BTreeSet::new();
        for gen in generators {
            let g = gen.trim();
            if g.eq_ignore_ascii_case("p") {
                includes_p = true;
            } else if let Some(num) = g.strip_prefix('T').or_else(|| g.strip_prefix('t')) {
                let idx: usize = num
                    .parse()
                    .map_err(|_| Error::UnsupportedIdeal(format!("generator {g}")))?;
                if idx == 0 {
                    return Err(Error::UnsupportedIdeal(format!("generator {g}")));
                }
                vars.insert(idx - 1);
            } else {
                return Err(Error::UnsupportedIdeal(format!("generator {g}")));
            }
        }
        Ok(CatalogIdeal { includes_p, vars })
    }

    pub fn includes_p(&self) -> bool {
        self.includes_p
    }

    pub fn vars(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    /// Whether `S_alpha` lies in the ideal at precision and truncation:
    /// drop every monomial containing a listed variable, then require the
    /// remaining coefficients to vanish (mod `p` when `p` is a generator,
    /// mod `p^a` otherwise).
    pub fn contains_s_alpha(&self, alpha: &AlphaVector, trunc: u32) -> Result<bool> {
        let d = alpha.len() + 1;
        if let Some(&bad) = self.vars.iter().find(|&&v| v >= d) {
            return Err(Error::UnsupportedIdeal(format!(
                "generator T{} outside the {} variables of S_alpha",
                bad + 1,
                d
            )));
        }
        let ctx = alpha.ctx();
        let s = s_alpha(alpha, trunc);
        let modulus = if self.includes_p { ctx.p() } else { ctx.modulus() };
        for (exp, &c) in s.terms() {
            if self.vars.iter().any(|&v| exp[v] > 0) {
                continue;
            }
            if c % modulus != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicCtx;

    fn ctx(p: u64, a: u32) -> PadicCtx {
        PadicCtx::new(p, a).unwrap()
    }

    #[test]
    fn parsing_accepts_the_catalog_and_rejects_the_rest() {
        let ideal = CatalogIdeal::parse(&["p".into(), "T2".into()]).unwrap();
        assert!(ideal.includes_p());
        assert_eq!(ideal.vars().iter().copied().collect::<Vec<_>>(), vec![1]);
        assert!(CatalogIdeal::parse(&["T0".into()]).is_err());
        assert!(CatalogIdeal::parse(&["T1+T2".into()]).is_err());
        assert!(CatalogIdeal::parse(&["q".into()]).is_err());
    }

    #[test]
    fn membership_catalog() {
        let c = ctx(3, 6);
        // P = (p, T_2): the reduction of S_alpha is T_1, never a member
        let ideal = CatalogIdeal::parse(&["p".into(), "T2".into()]).unwrap();
        for r in 0..9u64 {
            let alpha = AlphaVector::from_residues(c, &[r]).unwrap();
            assert!(!ideal.contains_s_alpha(&alpha, 10).unwrap());
        }

        // P = (p, T_1): S_0 = T_1 is a member
        let ideal = CatalogIdeal::parse(&["p".into(), "T1".into()]).unwrap();
        let alpha0 = AlphaVector::from_residues(c, &[0]).unwrap();
        assert!(ideal.contains_s_alpha(&alpha0, 10).unwrap());

        // P = (p, T_1), alpha = (1): the residue is T_2 + .. mod 3
        let alpha1 = AlphaVector::from_residues(c, &[1]).unwrap();
        assert!(!ideal.contains_s_alpha(&alpha1, 10).unwrap());
    }

    #[test]
    fn out_of_range_variable_is_unsupported() {
        let c = ctx(3, 6);
        let ideal = CatalogIdeal::parse(&["T3".into()]).unwrap();
        let alpha = AlphaVector::from_residues(c, &[0]).unwrap();
        assert!(matches!(
            ideal.contains_s_alpha(&alpha, 10),
            Err(Error::UnsupportedIdeal(_))
        ));
    }

    #[test]
    fn p_power_scaled_alphas_join_the_monomial_ideal() {
        let c = ctx(3, 6);
        // membership in (p, T_1) holds exactly when every binomial
        // C(alpha, k), 1 <= k <= trunc, vanishes mod p; by Lucas with
        // trunc = 10 that pins the base-3 digits 0..2 of the lift to zero
        let ideal = CatalogIdeal::parse(&["p".into(), "T1".into()]).unwrap();
        let trunc = 10;
        let members: Vec<u64> = (0..729)
            .filter(|&r| {
                let alpha = AlphaVector::from_residues(c, &[r]).unwrap();
                ideal.contains_s_alpha(&alpha, trunc).unwrap()
            })
            .collect();
        let expected: Vec<u64> = (0..729).step_by(27).collect();
        assert_eq!(members, expected);
    }
}

//! The inference chain from a characteristic ideal and arithmetic flags to
//! the `(mu, lambda)` conclusion.
//!
//! When the ideal is trivial after inverting the `gamma - 1`, no prime above
//! `p` splits (so the ideal is prime to the higher layer polynomials), and
//! the extension is arithmetically semi-simple, the characteristic ideal is
//! forced to be `T^e` with `e` equal to the coinvariant rank `s`; the
//! verdict is then `mu = 0, lambda = s`. Any failed premise yields an
//! inconclusive verdict naming it; a shape/rank contradiction in the inputs
//! is an error, not a verdict.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iwasawa::cyclotomic::{dagger_pseudo_null, prime_to_higher_cyclotomic};
use crate::iwasawa::weierstrass::CharIdeal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StructureVerdict {
    Established { mu: u32, lambda: u32 },
    Inconclusive { failed_premise: String },
}

/// Whether the distinguished polynomial is exactly `T^lambda` at precision.
fn is_sigma_minus_one_power(c: &CharIdeal) -> bool {
    let coeffs = c.distinguished.coeffs();
    coeffs.len() == c.lambda as usize + 1
        && coeffs[..c.lambda as usize].iter().all(|&x| x == 0)
        && coeffs[c.lambda as usize] == 1
}

pub fn conclude_structure(
    c: &CharIdeal,
    nonsplit: bool,
    semisimple: bool,
    s: u32,
) -> Result<StructureVerdict> {
    if !dagger_pseudo_null(c) {
        return Ok(StructureVerdict::Inconclusive {
            failed_premise: "localization-triviality (dagger) test".into(),
        });
    }
    if nonsplit && !prime_to_higher_cyclotomic(c) {
        return Ok(StructureVerdict::Inconclusive {
            failed_premise: "primality to the higher layer polynomials".into(),
        });
    }
    if !is_sigma_minus_one_power(c) {
        return Ok(StructureVerdict::Inconclusive {
            failed_premise: if nonsplit {
                "characteristic ideal is not a power of T at precision".into()
            } else {
                "nonsplit flag absent: cyclotomic factors cannot be excluded".into()
            },
        });
    }
    if !semisimple {
        return Ok(StructureVerdict::Inconclusive {
            failed_premise: "arithmetic semi-simplicity".into(),
        });
    }
    if c.lambda != s {
        return Err(Error::InconsistentInput(format!(
            "semi-simple data forces lambda = s, but the ideal is T^{} while s = {s}",
            c.lambda
        )));
    }
    Ok(StructureVerdict::Established { mu: 0, lambda: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iwasawa::series::TruncatedSeries;
    use crate::iwasawa::weierstrass::{char_ideal, ElementaryModule};
    use crate::padic::PadicCtx;

    fn ideal_of(p: u64, coeffs: &[i64]) -> CharIdeal {
        let ctx = PadicCtx::new(p, 8).unwrap();
        let f = TruncatedSeries::from_coeffs(ctx, 12, coeffs).unwrap();
        char_ideal(&ElementaryModule::new(vec![f]).unwrap()).unwrap()
    }

    #[test]
    fn full_chain_establishes_rank_one() {
        let c = ideal_of(3, &[0, 1]); // T
        let verdict = conclude_structure(&c, true, true, 1).unwrap();
        assert_eq!(
            verdict,
            StructureVerdict::Established { mu: 0, lambda: 1 }
        );
    }

    #[test]
    fn non_dagger_ideal_is_inconclusive() {
        let c = ideal_of(3, &[3, 1]); // T + 3
        let verdict = conclude_structure(&c, true, true, 1).unwrap();
        assert!(matches!(
            verdict,
            StructureVerdict::Inconclusive { failed_premise } if failed_premise.contains("dagger")
        ));
    }

    #[test]
    fn rank_mismatch_is_an_input_error() {
        let c = ideal_of(3, &[0, 0, 1]); // T^2
        assert!(matches!(
            conclude_structure(&c, true, true, 1),
            Err(Error::InconsistentInput(_))
        ));
    }

    #[test]
    fn cyclotomic_factor_with_nonsplit_names_the_premise() {
        // (1+T)^2 - 1 over p = 2 is dagger-trivial but not prime to the layer
        let c = ideal_of(2, &[0, 2, 1]);
        let verdict = conclude_structure(&c, true, true, 2).unwrap();
        assert!(matches!(
            verdict,
            StructureVerdict::Inconclusive { failed_premise } if failed_premise.contains("layer")
        ));
        // without the nonsplit flag the chain stops at the shape check
        let verdict = conclude_structure(&c, false, true, 2).unwrap();
        assert!(matches!(
            verdict,
            StructureVerdict::Inconclusive { failed_premise } if failed_premise.contains("nonsplit")
        ));
    }

    #[test]
    fn missing_semisimplicity_is_inconclusive() {
        let c = ideal_of(3, &[0, 1]);
        let verdict = conclude_structure(&c, true, false, 1).unwrap();
        assert!(matches!(
            verdict,
            StructureVerdict::Inconclusive { failed_premise } if failed_premise.contains("semi-simplicity")
        ));
    }
}

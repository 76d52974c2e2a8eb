//! The tiny textual grammar for one-variable series: a sum of terms
//! `c`, `cT`, `T`, `T^k`, `cT^k` (an optional `*` is allowed between the
//! coefficient and `T`), joined by `+` or `-`. Multivariate input is
//! JSON-only.

use iwagr_core::error::{Error, Result};
use iwagr_core::iwasawa::TruncatedSeries;
use iwagr_core::padic::PadicCtx;

pub fn parse_one_variable(text: &str, ctx: PadicCtx, trunc: u32) -> Result<TruncatedSeries> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::InvalidInput("empty series".into()));
    }
    let mut series = TruncatedSeries::zero(ctx, 1, trunc);
    let mut rest = compact.as_str();
    let mut sign = 1i64;
    // leading sign
    if let Some(stripped) = rest.strip_prefix('-') {
        sign = -1;
        rest = stripped;
    } else if let Some(stripped) = rest.strip_prefix('+') {
        rest = stripped;
    }
    while !rest.is_empty() {
        let split = rest
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let (term, tail) = rest.split_at(split);
        let (coeff, degree) = parse_term(term)?;
        if degree as u32 > trunc {
            return Err(Error::InvalidInput(format!(
                "degree {degree} exceeds the truncation {trunc}"
            )));
        }
        let monomial = if degree == 0 {
            TruncatedSeries::constant(ctx, 1, trunc, sign * coeff)
        } else {
            TruncatedSeries::variable(ctx, 1, trunc, 0)
                .pow(degree as u32)
                .scale(sign * coeff)
        };
        series = series.add(&monomial);
        rest = tail;
        if let Some(stripped) = rest.strip_prefix('-') {
            sign = -1;
            rest = stripped;
        } else if let Some(stripped) = rest.strip_prefix('+') {
            sign = 1;
            rest = stripped;
        }
    }
    Ok(series)
}

/// One term without sign: `INT`, `INT[*]T`, `INT[*]T^K`, `T`, `T^K`.
fn parse_term(term: &str) -> Result<(i64, u16)> {
    let bad = || Error::InvalidInput(format!("cannot parse series term '{term}'"));
    match term.split_once(['T', 't']) {
        None => Ok((term.parse::<i64>().map_err(|_| bad())?, 0)),
        Some((coeff_text, power_text)) => {
            let coeff_text = coeff_text.strip_suffix('*').unwrap_or(coeff_text);
            let coeff = if coeff_text.is_empty() {
                1
            } else {
                coeff_text.parse::<i64>().map_err(|_| bad())?
            };
            let degree = if power_text.is_empty() {
                1
            } else {
                power_text
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<u16>()
                    .map_err(|_| bad())?
            };
            Ok((coeff, degree))
        }
    }
}

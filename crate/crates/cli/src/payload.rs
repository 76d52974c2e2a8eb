//! JSON payload parsing for the subcommands that read structured input.
//!
//! Schemas:
//!   submodule family   {"d": .., "p": .., "a": .., "i": .., "L": [[row-major], ..]}
//!   inertia data       {"inertia": <family>, "decomposition": <family>?}
//!   splitting profile  {"profile": {"class": .., "degree": .., "r2": .., "primes": [{"e","f"}], "delta"?, "nonsplit_first_layer"?}}
//!   series             {"p": .., "a": .., "d": .., "D": .., "terms": [{"exp": [..], "c": ..}]}
//!   tower              {"p"?: .., "n0"?: .., "s": .., "e": [..]} or CSV lines "n,e_n"

use serde_json::Value;

use iwagr_core::error::{Error, Result};
use iwagr_core::fukuda::ClassNumberSequence;
use iwagr_core::genericity::SubmoduleFamily;
use iwagr_core::invariants::{InertiaData, SplittingProfile};
use iwagr_core::iwasawa::TruncatedSeries;
use iwagr_core::padic::{PadicCtx, PadicMatrix};

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("payload is not JSON: {e}")))
}

fn family_from_value(value: &Value) -> Result<SubmoduleFamily> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidInput("family payload must be an object".into()))?;
    let read_u64 = |key: &str| -> Result<u64> {
        obj.get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput(format!("family payload needs integer '{key}'")))
    };
    let d = read_u64("d")? as usize;
    let p = read_u64("p")?;
    let a = read_u64("a")? as u32;
    let i = read_u64("i")? as usize;
    let ctx = PadicCtx::new(p, a)?;
    let members_json = obj
        .get("L")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("family payload needs an array 'L'".into()))?;
    let mut members = Vec::new();
    for (index, entry) in members_json.iter().enumerate() {
        let flat: Vec<u64> = entry
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("L[{index}] must be an array")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| Error::InvalidInput(format!("L[{index}] has a non-integer")))
            })
            .collect::<Result<_>>()?;
        if d == 0 || flat.len() % d != 0 {
            return Err(Error::InvalidInput(format!(
                "L[{index}] has {} entries, not a multiple of d = {d}",
                flat.len()
            )));
        }
        members.push(PadicMatrix::from_rows(ctx, d, flat.len() / d, &flat)?);
    }
    SubmoduleFamily::new(d, i, members)
}

pub fn family_from_json(text: &str) -> Result<SubmoduleFamily> {
    family_from_value(&parse_json(text)?)
}

pub enum SInvariantInput {
    Profile(SplittingProfile),
    Inertia(InertiaData),
}

pub fn s_invariant_from_json(text: &str, _ctx: PadicCtx) -> Result<SInvariantInput> {
    let value = parse_json(text)?;
    if let Some(profile) = value.get("profile") {
        let profile: SplittingProfile = serde_json::from_value(profile.clone())
            .map_err(|e| Error::InvalidInput(format!("bad profile: {e}")))?;
        return Ok(SInvariantInput::Profile(profile));
    }
    if let Some(inertia) = value.get("inertia") {
        let family = family_from_value(inertia)?;
        let decomposition = match value.get("decomposition") {
            Some(v) if !v.is_null() => Some(family_from_value(v)?),
            _ => None,
        };
        return Ok(SInvariantInput::Inertia(InertiaData::new(
            family,
            decomposition,
        )?));
    }
    Err(Error::InvalidInput(
        "payload needs a 'profile' or 'inertia' field".into(),
    ))
}

pub fn series_from_json(text: &str) -> Result<TruncatedSeries> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad series: {e}")))
}

/// Tower data from JSON (fields `p`, `n0`, `s`, `e`, with flag fallbacks)
/// or from CSV lines `n,e_n` with an optional header.
pub fn sequence_from_input(
    text: &str,
    flag_p: u64,
    flag_n0: usize,
    flag_s: Option<u32>,
) -> Result<ClassNumberSequence> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let value = parse_json(trimmed)?;
        let p = value.get("p").and_then(Value::as_u64).unwrap_or(flag_p);
        let n0 = value
            .get("n0")
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .unwrap_or(flag_n0);
        let s = value
            .get("s")
            .and_then(Value::as_u64)
            .map(|x| x as u32)
            .or(flag_s)
            .ok_or_else(|| Error::InvalidInput("tower payload needs 's'".into()))?;
        let e: Vec<u64> = value
            .get("e")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("tower payload needs an array 'e'".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| Error::InvalidInput("'e' has a non-integer".into()))
            })
            .collect::<Result<_>>()?;
        return ClassNumberSequence::new(p, n0, s, e);
    }

    // CSV: lines "n,e_n"; the header row is skipped if non-numeric
    let mut rows: Vec<(usize, u64)> = Vec::new();
    for (lineno, line) in trimmed.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let (Some(first), Some(second)) = (parts.next(), parts.next()) else {
            return Err(Error::InvalidInput(format!(
                "line {}: expected two comma-separated columns",
                lineno + 1
            )));
        };
        match (first.parse::<usize>(), second.parse::<u64>()) {
            (Ok(n), Ok(e)) => rows.push((n, e)),
            _ if lineno == 0 => continue, // header
            _ => {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected integers, got '{line}'",
                    lineno + 1
                )))
            }
        }
    }
    rows.sort_by_key(|&(n, _)| n);
    for (expected, &(n, _)) in rows.iter().enumerate() {
        if n != expected {
            return Err(Error::InvalidInput(format!(
                "layer indices must be 0..len-1; missing layer {expected}"
            )));
        }
    }
    let e: Vec<u64> = rows.into_iter().map(|(_, e)| e).collect();
    let s = flag_s.ok_or_else(|| Error::InvalidInput("--s is required with CSV input".into()))?;
    ClassNumberSequence::new(flag_p, flag_n0, s, e)
}

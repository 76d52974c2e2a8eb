//! Class-number towers: exact fitting of the growth formula
//! `e_n = lambda n + mu p^n + nu`, the Fukuda-type stopping criterion, and
//! the openness radius of a conclusive verdict.
//!
//! The criterion: past a layer `n_0` from which the tower is totally
//! ramified at every ramified prime, a single step with
//! `e_{n+1} - e_n = s' <= s` proves the unramified module is finitely
//! generated over `Z_p` of rank `s'`, and that `s' = s`. Any extension
//! agreeing with the tower through layer `witness + 1` shares the
//! conclusion, which is the reported radius.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `p`-adic valuations `e_n` of class-group orders along tower layers,
/// with the total-ramification onset `n0` and the target rank `s`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SequenceDto", into = "SequenceDto")]
pub struct ClassNumberSequence {
    p: u64,
    n0: usize,
    s: u32,
    e: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SequenceDto {
    p: u64,
    n0: usize,
    s: u32,
    e: Vec<u64>,
}

impl From<ClassNumberSequence> for SequenceDto {
    fn from(seq: ClassNumberSequence) -> Self {
        SequenceDto {
            p: seq.p,
            n0: seq.n0,
            s: seq.s,
            e: seq.e,
        }
    }
}

impl TryFrom<SequenceDto> for ClassNumberSequence {
    type Error = Error;

    fn try_from(dto: SequenceDto) -> Result<Self> {
        ClassNumberSequence::new(dto.p, dto.n0, dto.s, dto.e)
    }
}

impl ClassNumberSequence {
    pub fn new(p: u64, n0: usize, s: u32, e: Vec<u64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        if e.is_empty() {
            return Err(Error::InvalidInput("the tower data is empty".into()));
        }
        if n0 >= e.len() {
            return Err(Error::InvalidInput(format!(
                "n0 = {n0} is not an index into {} layers",
                e.len()
            )));
        }
        Ok(ClassNumberSequence { p, n0, s, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn target_rank(&self) -> u32 {
        self.s
    }

    pub fn entries(&self) -> &[u64] {
        &self.e
    }
}

/// An exact fit `e_n = lambda n + mu p^n + nu` with the earliest index from
/// which the formula matches through the end of the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerFit {
    pub lambda: u64,
    pub mu: u64,
    pub nu: i64,
    pub onset: usize,
}

fn formula(lambda: u64, mu: u64, nu: i64, p: u64, n: usize) -> Option<i64> {
    let pn = (p as i128).checked_pow(n as u32)?;
    let value = (lambda as i128)
        .checked_mul(n as i128)?
        .checked_add((mu as i128).checked_mul(pn)?)?
        .checked_add(nu as i128)?;
    i64::try_from(value).ok()
}

/// Solve `(lambda, mu, nu)` exactly from the last three entries and accept
/// when the formula reproduces a tail of the data; the growth profile of a
/// tower determines the invariants once the formula has stabilized.
pub fn fit_lambda_mu_nu(seq: &ClassNumberSequence) -> Result<TowerFit> {
    let e = seq.entries();
    let len = e.len();
    if len < 3 {
        return Err(Error::InvalidInput(
            "fitting needs at least three layers".into(),
        ));
    }
    let p = seq.p() as i128;
    let n = len - 3;
    let d1 = e[len - 2] as i128 - e[len - 3] as i128;
    let d2 = e[len - 1] as i128 - e[len - 2] as i128;
    // d1 = lambda + mu (p-1) p^n, d2 = lambda + mu (p-1) p^{n+1}
    let pn = p.checked_pow(n as u32).ok_or_else(|| {
        Error::InvalidInput("tower too deep for exact arithmetic".into())
    })?;
    let denom = (p - 1) * (p - 1) * pn;
    let mu_num = d2 - d1;
    if mu_num < 0 || mu_num % denom != 0 {
        return Err(Error::NotStabilized(format!(
            "last three entries are inconsistent: second difference {mu_num} is not a nonnegative multiple of {denom}"
        )));
    }
    let mu = mu_num / denom;
    let lambda = d1 - mu * (p - 1) * pn;
    if lambda < 0 {
        return Err(Error::NotStabilized(format!(
            "last three entries force a negative linear slope {lambda}"
        )));
    }
    let nu = e[len - 1] as i128 - lambda * (len as i128 - 1) - mu * pn * p * p;
    let (lambda, mu, nu) = (
        lambda as u64,
        mu as u64,
        i64::try_from(nu).map_err(|_| Error::InvalidInput("nu out of range".into()))?,
    );

    let mut onset = len - 3;
    while onset > 0 {
        match formula(lambda, mu, nu, seq.p(), onset - 1) {
            Some(v) if v == e[onset - 1] as i64 => onset -= 1,
            _ => break,
        }
    }
    Ok(TowerFit {
        lambda,
        mu,
        nu,
        onset,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FukudaVerdict {
    /// The unramified module is finitely generated over `Z_p` of rank
    /// `rank`, and `rank` equals the target `s`; `witness` is the first
    /// layer where consecutive valuations rose by at most `s`.
    Conclusive { rank: u64, witness: usize },
    InconclusiveWithinData,
}

/// Scan from `n0`: the first step with `e_{n+1} - e_n <= s` (and
/// nonnegative) concludes; otherwise the data does not decide. Appending
/// layers can only turn inconclusive into conclusive.
pub fn fukuda_check(seq: &ClassNumberSequence) -> FukudaVerdict {
    let e = seq.entries();
    for n in seq.n0()..e.len().saturating_sub(1) {
        if e[n + 1] >= e[n] {
            let step = e[n + 1] - e[n];
            if step <= seq.target_rank() as u64 {
                return FukudaVerdict::Conclusive {
                    rank: step,
                    witness: n,
                };
            }
        }
    }
    FukudaVerdict::InconclusiveWithinData
}

/// Depth `witness + 1`: any extension in the everywhere-ramified class
/// agreeing with this tower through that layer shares the conclusion.
pub fn openness_radius(seq: &ClassNumberSequence) -> Option<usize> {
    match fukuda_check(seq) {
        FukudaVerdict::Conclusive { witness, .. } => Some(witness + 1),
        FukudaVerdict::InconclusiveWithinData => None,
    }
}

/// Fixture generator inverting the growth formula, with an arbitrary
/// nonnegative prefix modelling pre-stabilization noise.
pub fn synthesize_tower(
    lambda: u64,
    mu: u64,
    nu: i64,
    p: u64,
    length: usize,
    noise_prefix: &[u64],
) -> Result<ClassNumberSequence> {
    if noise_prefix.len() > length {
        return Err(Error::InvalidInput(
            "noise prefix longer than the tower".into(),
        ));
    }
    let mut e = Vec::with_capacity(length);
    e.extend_from_slice(noise_prefix);
    for n in e.len()..length {
        let value = formula(lambda, mu, nu, p, n)
            .ok_or_else(|| Error::InvalidInput("tower value overflows".into()))?;
        if value < 0 {
            return Err(Error::NegativeEntry { layer: n });
        }
        e.push(value as u64);
    }
    ClassNumberSequence::new(p, noise_prefix.len(), lambda as u32, e)
}

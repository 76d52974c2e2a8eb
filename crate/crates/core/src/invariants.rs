//! The invariants `d(k)`, `s(k)`, and `s'(k)` from splitting profiles or
//! from user-supplied inertia/decomposition rank data.
//!
//! Arithmetic inputs (which primes lie above `p`, their local degrees,
//! inertia and decomposition subgroups of the compositum of all
//! `Z_p`-extensions) are consumed, never computed: the catalog knows the
//! standard small-field cases and anything else must arrive as explicit
//! generator matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genericity::{generic_min_s_stable, MinSReport, SubmoduleFamily};
use crate::padic::rank_at_precision;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldClass {
    ImaginaryQuadratic,
    ComplexCubic,
    TotallyImaginaryQuartic,
    General,
}

/// Ramification/residue data of one prime above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplit {
    /// ramification index
    pub e: u32,
    /// residue degree
    pub f: u32,
}

/// How `p` splits in a number field, plus the unit-rank bookkeeping needed
/// for `d(k)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ProfileDto", into = "ProfileDto")]
pub struct SplittingProfile {
    class: FieldClass,
    degree: u32,
    r2: u32,
    primes_above_p: Vec<PrimeSplit>,
    delta: u32,
    nonsplit_first_layer: Option<bool>,
}

impl SplittingProfile {
    pub fn new(
        class: FieldClass,
        degree: u32,
        r2: u32,
        primes_above_p: Vec<PrimeSplit>,
        delta: u32,
        nonsplit_first_layer: Option<bool>,
    ) -> Result<Self> {
        let local_sum: u32 = primes_above_p.iter().map(|ps| ps.e * ps.f).sum();
        if local_sum != degree {
            return Err(Error::InvalidInput(format!(
                "sum of e*f over primes is {local_sum}, degree is {degree}"
            )));
        }
        if 2 * r2 > degree {
            return Err(Error::InvalidInput(format!(
                "r2 = {r2} exceeds degree/2 = {}",
                degree / 2
            )));
        }
        let shape_ok = match class {
            FieldClass::ImaginaryQuadratic => degree == 2 && r2 == 1,
            FieldClass::ComplexCubic => degree == 3 && r2 == 1,
            FieldClass::TotallyImaginaryQuartic => degree == 4 && r2 == 2,
            FieldClass::General => true,
        };
        if !shape_ok {
            return Err(Error::InvalidInput(format!(
                "degree {degree} / r2 {r2} does not match the field class {class:?}"
            )));
        }
        Ok(SplittingProfile {
            class,
            degree,
            r2,
            primes_above_p,
            delta,
            nonsplit_first_layer,
        })
    }

    pub fn class(&self) -> FieldClass {
        self.class
    }

    pub fn primes_above_p(&self) -> &[PrimeSplit] {
        &self.primes_above_p
    }

    pub fn nonsplit_first_layer(&self) -> Option<bool> {
        self.nonsplit_first_layer
    }

    /// `d(k) = r_2 + 1 + delta`.
    pub fn d_of_k(&self) -> u32 {
        self.r2 + 1 + self.delta
    }

    fn splits_completely(&self) -> bool {
        self.primes_above_p.len() as u32 == self.degree
            && self.primes_above_p.iter().all(|ps| ps.e == 1 && ps.f == 1)
    }

    /// The catalog value of `s(k)`: complete splitting gives `d(k) - 1`, a
    /// single prime above `p` gives `0`, and the small-field classes fill in
    /// the intermediate splitting types. Outside the catalog the caller must
    /// supply inertia data.
    pub fn s_catalog(&self) -> Result<u32> {
        let count = self.primes_above_p.len();
        if self.splits_completely() {
            return Ok(self.d_of_k() - 1);
        }
        if count == 1 {
            return Ok(0);
        }
        match self.class {
            FieldClass::ImaginaryQuadratic => {
                // two primes above p and not complete splitting cannot
                // happen in degree 2, so this is the split case
                Ok(1)
            }
            FieldClass::ComplexCubic => {
                // two primes: the degree-2 prime has full-rank inertia
                Ok(0)
            }
            FieldClass::TotallyImaginaryQuartic => match count {
                4 => Ok(2),
                3 => Ok(1),
                _ => Ok(0),
            },
            FieldClass::General => Err(Error::UnsupportedProfile(format!(
                "general field with {count} primes above p"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileDto {
    class: FieldClass,
    degree: u32,
    r2: u32,
    primes: Vec<PrimeSplit>,
    #[serde(default)]
    delta: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nonsplit_first_layer: Option<bool>,
}

impl From<SplittingProfile> for ProfileDto {
    fn from(p: SplittingProfile) -> Self {
        ProfileDto {
            class: p.class,
            degree: p.degree,
            r2: p.r2,
            primes: p.primes_above_p,
            delta: p.delta,
            nonsplit_first_layer: p.nonsplit_first_layer,
        }
    }
}

impl TryFrom<ProfileDto> for SplittingProfile {
    type Error = Error;

    fn try_from(dto: ProfileDto) -> Result<Self> {
        SplittingProfile::new(
            dto.class,
            dto.degree,
            dto.r2,
            dto.primes,
            dto.delta,
            dto.nonsplit_first_layer,
        )
    }
}

/// Inertia subgroups of the full multiple `Z_p`-extension as generator
/// matrices, with the decomposition subgroups optionally alongside.
#[derive(Clone, Debug)]
pub struct InertiaData {
    inertia: SubmoduleFamily,
    decomposition: Option<SubmoduleFamily>,
}

impl InertiaData {
    pub fn new(inertia: SubmoduleFamily, decomposition: Option<SubmoduleFamily>) -> Result<Self> {
        // every prime above p ramifies in the cyclotomic direction
        for (index, l) in inertia.members().iter().enumerate() {
            let rank = rank_at_precision(l);
            if rank < 1 {
                return Err(Error::RankBelowDeclared {
                    index,
                    rank,
                    min: 1,
                });
            }
        }
        Ok(InertiaData {
            inertia,
            decomposition,
        })
    }

    pub fn dim(&self) -> usize {
        self.inertia.ambient()
    }

    pub fn inertia(&self) -> &SubmoduleFamily {
        &self.inertia
    }

    pub fn decomposition(&self) -> Option<&SubmoduleFamily> {
        self.decomposition.as_ref()
    }
}

/// `s(k)` from inertia data: the exhaustive generic minimum of `s(N)` over
/// level-`n` classes, with a stability check at `n + 1`.
pub fn s_from_inertia(data: &InertiaData, level: u32) -> Result<MinSReport> {
    generic_min_s_stable(data.inertia(), level)
}

/// The decomposition-group analogue `s'(k)`.
pub fn s_prime_from_decomposition(data: &InertiaData, level: u32) -> Result<MinSReport> {
    let family = data
        .decomposition()
        .ok_or(Error::MissingDecompositionData)?;
    generic_min_s_stable(family, level)
}

/// Whether every decomposition subgroup has rank at least 2 at precision.
pub fn check_decomposition_ranks(data: &InertiaData) -> Result<bool> {
    let family = data
        .decomposition()
        .ok_or(Error::MissingDecompositionData)?;
    Ok(family
        .members()
        .iter()
        .all(|l| rank_at_precision(l) >= 2))
}

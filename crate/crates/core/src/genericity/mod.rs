//! Monte-Carlo and exact-certificate checks for genericity statements:
//! generic image rank of a family of submodules in quotients `M/N`, the
//! statistic `s(N)` and its generic minimum, and zero-set frequencies of
//! polynomials.
//!
//! "Generic" is never claimed as measure-zero here: reports carry counts and
//! frequencies, and an exact determinant certificate is used where one
//! exists. Sampling loops run one counter-based stream per sample index, so
//! a report is a deterministic function of `(seed, samples)`.

mod poly;

pub use poly::{polynomial_zero_measure, MultiPoly};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{enumerate_finite, sample_haar, GrassmannPoint};
use crate::padic::{rank_at_precision, smith_normal_form, PadicCtx, PadicMatrix, PadicScalar};
use crate::rng::StreamRng;

/// Generator matrices `L_1, .., L_r` of submodules of `Z_p^d`, with a
/// declared minimum rank checked at construction.
#[derive(Clone, Debug)]
pub struct SubmoduleFamily {
    ambient: usize,
    min_rank: usize,
    members: Vec<PadicMatrix>,
}

impl SubmoduleFamily {
    pub fn new(ambient: usize, min_rank: usize, members: Vec<PadicMatrix>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("family needs at least one member".into()));
        }
        for (index, l) in members.iter().enumerate() {
            if l.rows() != ambient {
                return Err(Error::ShapeMismatch(format!(
                    "member {index} has {} rows, ambient dimension is {ambient}",
                    l.rows()
                )));
            }
            let rank = rank_at_precision(l);
            if rank < min_rank {
                return Err(Error::RankBelowDeclared {
                    index,
                    rank,
                    min: min_rank,
                });
            }
        }
        Ok(SubmoduleFamily {
            ambient,
            min_rank,
            members,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn min_rank(&self) -> usize {
        self.min_rank
    }

    pub fn members(&self) -> &[PadicMatrix] {
        &self.members
    }

    pub fn ctx(&self) -> PadicCtx {
        self.members[0].ctx()
    }

    /// The single-member family `{L_j}` with the same declared rank.
    pub fn member_family(&self, j: usize) -> SubmoduleFamily {
        SubmoduleFamily {
            ambient: self.ambient,
            min_rank: self.min_rank,
            members: vec![self.members[j].clone()],
        }
    }
}

/// Outcome of a sampling run.
#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub samples: u64,
    pub failures: u64,
    pub certificate_used: bool,
    pub seed: u64,
}

impl GenericityReport {
    pub fn failure_frequency(&self) -> BigRational {
        BigRational::new(self.failures.into(), self.samples.max(1).into())
    }
}

/// `rank(Image(L -> M/N))` at precision, computed as
/// `rank([generators(N) | L]) - rank(generators(N))`.
pub fn image_rank(l: &PadicMatrix, point: &GrassmannPoint) -> usize {
    assert_eq!(l.ctx(), point.ctx(), "mixed contexts");
    assert_eq!(l.rows(), point.dim(), "ambient dimensions differ");
    let joint = point.generators().hstack(l);
    rank_at_precision(&joint) - (point.dim() - point.corank())
}

/// Greedily selects `target` columns of `l` that are independent at
/// precision (first columns that increase the rank).
fn independent_columns(l: &PadicMatrix, target: usize) -> Result<Vec<usize>> {
    let ctx = l.ctx();
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..l.cols() {
        if chosen.len() == target {
            break;
        }
        let mut cols = chosen.clone();
        cols.push(c);
        let rows: Vec<usize> = (0..l.rows()).collect();
        let candidate = l.submatrix(&rows, &cols);
        if rank_at_precision(&candidate) == cols.len() {
            chosen.push(c);
        }
        let _ = ctx;
    }
    if chosen.len() < target {
        return Err(Error::InvalidInput(format!(
            "member has fewer than {target} independent columns at precision"
        )));
    }
    Ok(chosen)
}

/// The determinant certificate of a point against a family, with exact
/// valuation bookkeeping.
///
/// Each factor is `det [G | b_1 .. b_i]` for `i` independent columns of a
/// member. The factor's valuation is the sum of the Smith valuations of
/// that square matrix, which is exact for the given entries whenever they
/// all stay below the precision; the certificate is nonzero (as an exact
/// number, `valuation` is `Some`) precisely when every image rank equals
/// `i`. Collapsing to a residue with `scalar` loses that equivalence when
/// the accumulated valuation reaches `a`.
#[derive(Clone, Debug)]
pub struct DetCertificate {
    ctx: PadicCtx,
    valuation: Option<u64>,
    unit_part: u64,
    factor_valuations: Vec<Option<u64>>,
}

impl DetCertificate {
    /// Whether the product is nonzero as an exact p-adic number.
    pub fn is_nonzero(&self) -> bool {
        self.valuation.is_some()
    }

    /// Exact valuation of the product; `None` when some factor vanishes at
    /// precision (valuation at least `a`, unknowable from the residues).
    pub fn valuation(&self) -> Option<u64> {
        self.valuation
    }

    /// Per-member determinant valuations in family order.
    pub fn factor_valuations(&self) -> &[Option<u64>] {
        &self.factor_valuations
    }

    /// A representative of the unit part, exact modulo `p^{a - min(v, a)}`.
    pub fn unit_part(&self) -> PadicScalar {
        self.ctx.scalar(self.unit_part)
    }

    /// The literal truncated product of the determinants mod `p^a`.
    pub fn scalar(&self) -> PadicScalar {
        match self.valuation {
            None => self.ctx.zero(),
            Some(v) if v >= self.ctx.precision() as u64 => self.ctx.zero(),
            Some(v) => self
                .ctx
                .scalar(self.ctx.p().pow(v as u32))
                .mul(&self.ctx.scalar(self.unit_part)),
        }
    }
}

/// Certificate of a point given by its generator matrix. The valuation of
/// each factor comes from Smith valuations and the unit part from the
/// transform determinants, so `U A V = D` gives
/// `det A = p^{sum v} (det U det V)^{-1}` exactly.
pub fn certificate_for_point(
    family: &SubmoduleFamily,
    point: &GrassmannPoint,
) -> Result<DetCertificate> {
    let ctx = point.ctx();
    let a = ctx.precision();
    let i = point.corank();
    let mut total: Option<u64> = Some(0);
    let mut unit = ctx.one();
    let mut factor_valuations = Vec::with_capacity(family.members.len());
    for l in &family.members {
        let cols = independent_columns(l, i)?;
        let rows: Vec<usize> = (0..l.rows()).collect();
        let trimmed = l.submatrix(&rows, &cols);
        let square = point.generators().hstack(&trimmed);
        let smith = smith_normal_form(&square);
        if smith.diagonal_valuations().iter().any(|&v| v >= a) {
            total = None;
            factor_valuations.push(None);
            continue;
        }
        let v: u64 = smith.diagonal_valuations().iter().map(|&x| x as u64).sum();
        factor_valuations.push(Some(v));
        total = total.map(|t| t + v);
        let transforms = smith
            .left_transform()
            .determinant()
            .mul(&smith.right_transform().determinant());
        unit = unit.mul(&transforms.inverse().expect("transform determinants are units"));
    }
    Ok(DetCertificate {
        ctx,
        valuation: total,
        unit_part: unit.residue(),
        factor_valuations,
    })
}

/// The literal product-of-determinants certificate on the standard-chart
/// point `N_alpha` whose generators are the identity stacked over `alpha`.
pub fn det_certificate(family: &SubmoduleFamily, alpha: &PadicMatrix) -> Result<PadicScalar> {
    Ok(det_certificate_detailed(family, alpha)?.scalar())
}

/// The valued certificate on the standard-chart point.
pub fn det_certificate_detailed(
    family: &SubmoduleFamily,
    alpha: &PadicMatrix,
) -> Result<DetCertificate> {
    let d = family.ambient();
    let i = alpha.rows();
    if alpha.cols() != d - i {
        return Err(Error::ShapeMismatch(format!(
            "chart block must be i x (d-i) = {i} x {}, got {i} x {}",
            d - i,
            alpha.cols()
        )));
    }
    let stack = PadicMatrix::identity(alpha.ctx(), d - i).vstack(alpha);
    let point = GrassmannPoint::new(i, stack)?;
    certificate_for_point(family, &point)
}

/// Coordinates (relative to the generators of `N`) spanning `N ∩ L` at
/// precision: the structural kernel of `[generators(N) | -L]`.
fn intersection_coordinates(point: &GrassmannPoint, l: &PadicMatrix) -> Vec<Vec<u64>> {
    let g = point.generators();
    let joint = g.hstack(&l.neg());
    let smith = smith_normal_form(&joint);
    smith
        .kernel_basis()
        .into_iter()
        .map(|v| v[..g.cols()].to_vec())
        .collect()
}

/// The statistic `s(N) = rank(N / sum_j (N ∩ L_j))` for corank-1 points.
/// Admissibility (`image_rank(L_j, N) = 1` for every member) is required.
pub fn s_of(point: &GrassmannPoint, family: &SubmoduleFamily) -> Result<usize> {
    if point.corank() != 1 {
        return Err(Error::InvalidInput(
            "s(N) is defined for corank-1 points only".into(),
        ));
    }
    assert_eq!(point.ctx(), family.ctx(), "mixed contexts");
    assert_eq!(point.dim(), family.ambient(), "ambient dimensions differ");
    for (index, l) in family.members.iter().enumerate() {
        if image_rank(l, point) == 0 {
            return Err(Error::InadmissiblePoint { index });
        }
    }
    let n_rank = point.dim() - 1;
    let ctx = point.ctx();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for l in &family.members {
        columns.extend(intersection_coordinates(point, l));
    }
    if columns.is_empty() {
        return Ok(n_rank);
    }
    let mut m = PadicMatrix::zero(ctx, n_rank, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for r in 0..n_rank {
            m.set(r, c, col[r]);
        }
    }
    Ok(n_rank - rank_at_precision(&m))
}

/// Exhaustive minimum of `s` over admissible level-`n` classes.
#[derive(Clone, Debug, Serialize)]
pub struct MinSReport {
    pub s: usize,
    /// classes attaining the minimum
    pub attaining: u64,
    pub admissible: u64,
    /// classes excluded because some image rank vanishes at precision
    pub inadmissible: u64,
    pub level: u32,
    /// set when the caller also ran level n+1; equal results support the
    /// enumeration level being deep enough
    pub stable_at_next_level: Option<bool>,
}

impl MinSReport {
    pub fn attaining_fraction(&self) -> BigRational {
        BigRational::new(self.attaining.into(), self.admissible.max(1).into())
    }
}

/// Minimum of `s_of` over all admissible level-`n` classes (canonical
/// lifts), with the count attaining it. The enumeration level is a
/// heuristic: no effective bound on the level determining the generic value
/// is known, so callers should cross-check stability at `n + 1`.
pub fn generic_min_s(family: &SubmoduleFamily, level: u32) -> Result<MinSReport> {
    if family.min_rank() < 1 {
        return Err(Error::InvalidInput("family must declare rank >= 1".into()));
    }
    let ctx = family.ctx();
    let classes = enumerate_finite(ctx, family.ambient(), 1, level)?;
    let mut admissible = 0u64;
    let mut inadmissible = 0u64;
    let mut best: Option<usize> = None;
    let mut attaining = 0u64;
    for class in &classes {
        match s_of(class, family) {
            Ok(s) => {
                admissible += 1;
                match best {
                    Some(b) if s > b => {}
                    Some(b) if s == b => attaining += 1,
                    _ => {
                        best = Some(s);
                        attaining = 1;
                    }
                }
            }
            Err(Error::InadmissiblePoint { .. }) => inadmissible += 1,
            Err(e) => return Err(e),
        }
    }
    let Some(s) = best else {
        return Err(Error::NoAdmissibleClass);
    };
    Ok(MinSReport {
        s,
        attaining,
        admissible,
        inadmissible,
        level,
        stable_at_next_level: None,
    })
}

/// `generic_min_s` at `level`, cross-checked against `level + 1`.
pub fn generic_min_s_stable(family: &SubmoduleFamily, level: u32) -> Result<MinSReport> {
    let mut report = generic_min_s(family, level)?;
    match generic_min_s(family, level + 1) {
        Ok(next) => report.stable_at_next_level = Some(next.s == report.s),
        Err(Error::EnumerationTooLarge { .. }) | Err(Error::PrecisionExceeded { .. }) => {
            report.stable_at_next_level = None;
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// Failure frequency of a property under Haar sampling of `Gr(i, Z_p^d)`.
/// Deterministic for fixed `(seed, samples)` independent of worker count.
pub fn verify_generic<F>(
    ctx: PadicCtx,
    d: usize,
    corank: usize,
    samples: u64,
    seed: u64,
    property: F,
) -> Result<GenericityReport>
where
    F: Fn(&GrassmannPoint) -> bool + Sync,
{
    let failures = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = StreamRng::stream(seed, index);
            let point = sample_haar(ctx, d, corank, &mut rng).expect("valid dimensions");
            u64::from(!property(&point))
        })
        .sum();
    Ok(GenericityReport {
        samples,
        failures,
        certificate_used: false,
        seed,
    })
}

/// Monte-Carlo check of the generic-image-rank statement with the exact
/// certificate cross-checked on every sample: a failure is counted when the
/// ranks drop, and each sample asserts the certificate equivalence
/// (nonzero exact valuation if and only if all image ranks are full).
pub fn verify_generic_rank(
    family: &SubmoduleFamily,
    samples: u64,
    seed: u64,
) -> Result<GenericityReport> {
    let ctx = family.ctx();
    let d = family.ambient();
    let i = family.min_rank();
    let failures = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = StreamRng::stream(seed, index);
            let point = sample_haar(ctx, d, i, &mut rng).expect("valid dimensions");
            let all_full = family
                .members()
                .iter()
                .all(|l| image_rank(l, &point) == i);
            let cert = certificate_for_point(family, &point).expect("family trimmable");
            assert_eq!(
                cert.is_nonzero(),
                all_full,
                "certificate/rank disagreement on a sample"
            );
            u64::from(!all_full)
        })
        .sum();
    Ok(GenericityReport {
        samples,
        failures,
        certificate_used: true,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::from_chart;
    use crate::grassmann::ChartCoordinate;

    fn ctx(p: u64, a: u32) -> PadicCtx {
        PadicCtx::new(p, a).unwrap()
    }

    fn line(ctx: PadicCtx, entries: &[i64]) -> PadicMatrix {
        PadicMatrix::from_rows_i64(ctx, entries.len(), 1, entries).unwrap()
    }

    fn point_from_cols(ctx: PadicCtx, d: usize, cols: &[&[i64]]) -> GrassmannPoint {
        let mut m = PadicMatrix::zero(ctx, d, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, ctx.residue_of_i64(x));
            }
        }
        GrassmannPoint::new(d - cols.len(), m).unwrap()
    }

    #[test]
    fn image_rank_catalog() {
        let c = ctx(5, 4);
        // L = full basis of M gives rank i for any N
        let full = PadicMatrix::identity(c, 2);
        let n = point_from_cols(c, 2, &[&[1, 1]]);
        assert_eq!(image_rank(&full, &n), 1);
        // L generating N itself maps to zero
        let l_in = line(c, &[1, 1]);
        assert_eq!(image_rank(&l_in, &n), 0);
        // L = <e_1>, N = <e_1 + e_2>
        let l = line(c, &[1, 0]);
        assert_eq!(image_rank(&l, &n), 1);
    }

    #[test]
    fn certificate_on_the_standard_chart() {
        let c = ctx(5, 4);
        // d=2, i=1, L=<e_1>: f(alpha) = -alpha, vanishing exactly at 0
        let fam = SubmoduleFamily::new(2, 1, vec![line(c, &[1, 0])]).unwrap();
        for alpha in 0..20u64 {
            let block = PadicMatrix::from_rows(c, 1, 1, &[alpha]).unwrap();
            let cert = det_certificate(&fam, &block).unwrap();
            assert_eq!(cert, c.scalar(alpha).neg());
        }
        // L=<e_2>: the image is always full, f = 1
        let fam2 = SubmoduleFamily::new(2, 1, vec![line(c, &[0, 1])]).unwrap();
        let block = PadicMatrix::from_rows(c, 1, 1, &[13]).unwrap();
        assert_eq!(det_certificate(&fam2, &block).unwrap().residue(), 1);
    }

    #[test]
    fn certificate_agrees_with_ranks_on_random_single_member_lines() {
        // single member, i = 1: nonzero certificate <=> image rank 1, exactly
        let c = ctx(3, 6);
        for idx in 0..1000u64 {
            let mut rng = StreamRng::stream(97, idx);
            let l = crate::padic::uniform_matrix(c, 3, 1, &mut rng);
            if rank_at_precision(&l) < 1 {
                continue;
            }
            let fam = SubmoduleFamily::new(3, 1, vec![l]).unwrap();
            let point = sample_haar(c, 3, 1, &mut rng).unwrap();
            let cert = certificate_for_point(&fam, &point).unwrap();
            let full = image_rank(&fam.members()[0], &point) == 1;
            assert_eq!(cert.is_nonzero(), full);
        }
    }

    #[test]
    fn s_of_catalog() {
        let c = ctx(3, 6);
        // some member equal to M forces s = 0
        let full = PadicMatrix::identity(c, 2);
        let n = point_from_cols(c, 2, &[&[1, 1]]);
        let fam = SubmoduleFamily::new(2, 1, vec![full]).unwrap();
        assert_eq!(s_of(&n, &fam).unwrap(), 0);

        // d=2, L=<e_1>, N=<e_1+e_2>: intersection is 0 at precision
        let fam = SubmoduleFamily::new(2, 1, vec![line(c, &[1, 0])]).unwrap();
        assert_eq!(s_of(&n, &fam).unwrap(), 1);

        // d=3, L_1=<e_1,e_2>, L_2=<e_2,e_3>, N=<e_1,e_3>: intersections sum to N
        let l1 = PadicMatrix::from_rows(c, 3, 2, &[1, 0, 0, 1, 0, 0]).unwrap();
        let l2 = PadicMatrix::from_rows(c, 3, 2, &[0, 0, 1, 0, 0, 1]).unwrap();
        let fam = SubmoduleFamily::new(3, 1, vec![l1, l2]).unwrap();
        let n = point_from_cols(c, 3, &[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(s_of(&n, &fam).unwrap(), 0);
    }

    #[test]
    fn s_of_rejects_inadmissible_points() {
        let c = ctx(3, 6);
        let fam = SubmoduleFamily::new(2, 1, vec![line(c, &[1, 0])]).unwrap();
        // N = <e_1> contains L, image rank 0
        let n = point_from_cols(c, 2, &[&[1, 0]]);
        assert!(matches!(
            s_of(&n, &fam),
            Err(Error::InadmissiblePoint { index: 0 })
        ));
    }

    #[test]
    fn s_of_sees_exact_intersection_not_precision_junk() {
        // N = <e_1 + p e_2>, L = <e_1>: the exact intersection is 0 even
        // though p^{a-1} * (e_1 + p e_2) = p^{a-1} e_1 mod p^a
        let c = ctx(3, 6);
        let fam = SubmoduleFamily::new(2, 1, vec![line(c, &[1, 0])]).unwrap();
        let n = point_from_cols(c, 2, &[&[1, 3]]);
        assert_eq!(s_of(&n, &fam).unwrap(), 1);
    }

    #[test]
    fn generic_min_s_catalog() {
        let c = ctx(3, 6);
        // family {M}: s = 0 attained by every class
        let fam = SubmoduleFamily::new(2, 1, vec![PadicMatrix::identity(c, 2)]).unwrap();
        let report = generic_min_s(&fam, 1).unwrap();
        assert_eq!(report.s, 0);
        assert_eq!(report.admissible, 4);
        assert_eq!(report.attaining, 4);
        assert_eq!(report.inadmissible, 0);

        // d=2, family {<e_1>}: s = 1 on every admissible class
        let fam = SubmoduleFamily::new(2, 1, vec![line(c, &[1, 0])]).unwrap();
        let report = generic_min_s(&fam, 1).unwrap();
        assert_eq!(report.s, 1);
        assert_eq!(report.admissible, 3);
        assert_eq!(report.attaining, 3);
        assert_eq!(report.inadmissible, 1);

        // d=3, two rank-2 members in general position: generic s = 0
        let l1 = PadicMatrix::from_rows(c, 3, 2, &[1, 0, 0, 1, 0, 0]).unwrap();
        let l2 = PadicMatrix::from_rows(c, 3, 2, &[0, 0, 1, 0, 0, 1]).unwrap();
        let fam = SubmoduleFamily::new(3, 1, vec![l1, l2]).unwrap();
        let report = generic_min_s_stable(&fam, 1).unwrap();
        assert_eq!(report.s, 0);
        assert_eq!(report.stable_at_next_level, Some(true));
    }

    #[test]
    fn verify_generic_trivial_property_never_fails() {
        let c = ctx(3, 4);
        let report = verify_generic(c, 2, 1, 500, 7, |_| true).unwrap();
        assert_eq!(report.failures, 0);
    }

    #[test]
    fn verify_generic_rank_with_certificate_cross_check() {
        let c = ctx(3, 8);
        let l = PadicMatrix::from_rows(c, 3, 2, &[1, 0, 0, 1, 0, 0]).unwrap();
        let fam = SubmoduleFamily::new(3, 2, vec![l]).unwrap();
        let report = verify_generic_rank(&fam, 2000, 11).unwrap();
        assert!(report.certificate_used);
        // failures live on a locus of measure about p^{-a}, so with
        // 2000 samples at 3^-8 the expected count is 0.3
        assert!(
            report.failures <= 6,
            "unexpectedly many rank drops: {}",
            report.failures
        );
    }

    #[test]
    fn failure_set_of_a_single_member_is_a_coset() {
        // enumerated failure sets of the certificate mod p^2 are affine
        // translates of a subgroup: closed under a - b + c
        let c = ctx(3, 2);
        let members = [
            line(c, &[1, 0, 0]),
            line(c, &[1, 3, 1]),
            line(c, &[2, 1, 4]),
        ];
        for l in members {
            let fam = SubmoduleFamily::new(3, 1, vec![l]).unwrap();
            let m = c.modulus();
            let mut failures = Vec::new();
            for a1 in 0..m {
                for a2 in 0..m {
                    let block = PadicMatrix::from_rows(c, 1, 2, &[a1, a2]).unwrap();
                    if det_certificate(&fam, &block).unwrap().is_zero() {
                        failures.push((a1, a2));
                    }
                }
            }
            assert!(!failures.is_empty());
            for &(x1, x2) in &failures {
                for &(y1, y2) in &failures {
                    for &(z1, z2) in &failures {
                        let w1 = (x1 + m - y1 + z1) % m;
                        let w2 = (x2 + m - y2 + z2) % m;
                        assert!(
                            failures.contains(&(w1, w2)),
                            "failure set is not an affine coset"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn min_s_counts_inadmissible_classes() {
        // p = 2, d = 2: three lines; <e_1> and <e_2> each contain a member
        let c = ctx(2, 4);
        let fam = SubmoduleFamily::new(2, 1, vec![line(c, &[1, 0]), line(c, &[0, 1])]).unwrap();
        let report = generic_min_s(&fam, 1).unwrap();
        assert_eq!(report.admissible, 1);
        assert_eq!(report.inadmissible, 2);
        assert_eq!(report.s, 1);
        let diagonal = from_chart(&ChartCoordinate::from_parts(c, 2, vec![0], &[1]).unwrap());
        assert_eq!(s_of(&diagonal, &fam).unwrap(), 1);
    }
}

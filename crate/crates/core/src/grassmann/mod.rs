//! The space `Gr(i, Z_p^d)` of submodules `N` with `M/N` free of rank `i`,
//! at working precision `p^a`.
//!
//! Points are represented by `d x (d-i)` generator matrices whose columns
//! generate `N`; validity means some `(d-i) x (d-i)` minor is a unit mod `p`,
//! equivalently all Smith valuations vanish. The canonical form is
//! chart-based: the lexicographically first row set `W` whose minor is a
//! unit, together with the solved coefficient block `A`.

mod enumerate;

pub use enumerate::{class_count, enumerate_finite, gaussian_binomial, measure_ball_exact};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{sample_gl, smith_normal_form, PadicCtx, PadicMatrix};

/// All `k`-element subsets of `{0, .., d-1}` in lexicographic order.
pub(crate) fn subsets_lex(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > d {
        return out;
    }
    loop {
        out.push(current.clone());
        // advance the rightmost index that can still move
        let mut idx = k;
        while idx > 0 {
            idx -= 1;
            if current[idx] + 1 <= d - (k - idx) {
                current[idx] += 1;
                for j in idx + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if idx == 0 {
                return out;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

fn complement(d: usize, w: &[usize]) -> Vec<usize> {
    let mut mark = vec![false; d];
    for &x in w {
        mark[x] = true;
    }
    (0..d).filter(|&x| !mark[x]).collect()
}

/// A corank-`i` direct-summand submodule of `Z_p^d` in generator form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GrassmannPointDto", into = "GrassmannPointDto")]
pub struct GrassmannPoint {
    d: usize,
    corank: usize,
    generators: PadicMatrix,
}

/// Chart datum: row set `W` (0-based internally, 1-based in JSON) and the
/// `i x (d-i)` coefficient block `A` indexed by (complement row, column).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartCoordinate {
    d: usize,
    w: Vec<usize>,
    a: PadicMatrix,
}

impl GrassmannPoint {
    /// Validates the direct-summand invariant: all Smith valuations zero.
    pub fn new(corank: usize, generators: PadicMatrix) -> Result<Self> {
        let d = generators.rows();
        if corank == 0 || corank > d {
            return Err(Error::InvalidInput(format!(
                "corank i = {corank} must satisfy 1 <= i <= d = {d}"
            )));
        }
        if generators.cols() != d - corank {
            return Err(Error::ShapeMismatch(format!(
                "generator matrix must be {d} x {}, got {d} x {}",
                d - corank,
                generators.cols()
            )));
        }
        let smith = smith_normal_form(&generators);
        if smith.diagonal_valuations().iter().any(|&v| v != 0) {
            return Err(Error::InvalidInput(
                "generators do not span a direct summand: nonzero Smith valuation".into(),
            ));
        }
        Ok(GrassmannPoint {
            d,
            corank,
            generators,
        })
    }

    /// The base point `N_0 = <e_1, .., e_{d-i}>`.
    pub fn standard(ctx: PadicCtx, d: usize, corank: usize) -> Result<Self> {
        let chart = ChartCoordinate::from_parts(
            ctx,
            d,
            (0..d - corank).collect(),
            &vec![0; corank * (d - corank)],
        )?;
        Ok(from_chart(&chart))
    }

    pub fn ctx(&self) -> PadicCtx {
        self.generators.ctx()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// The corank `i`: the rank of the free quotient `M/N`.
    pub fn corank(&self) -> usize {
        self.corank
    }

    pub fn generators(&self) -> &PadicMatrix {
        &self.generators
    }

    /// Image under an automorphism: generators become `g * G`.
    pub fn apply(&self, g: &PadicMatrix) -> Result<Self> {
        if g.rows() != self.d || g.cols() != self.d {
            return Err(Error::ShapeMismatch("automorphism must be d x d".into()));
        }
        GrassmannPoint::new(self.corank, g.mul(&self.generators))
    }

    /// An invertible `d x d` matrix whose first `d-i` columns generate `N`
    /// (chart basis completed by standard vectors off the chart rows).
    pub fn completed_basis(&self) -> PadicMatrix {
        let chart = to_chart(self);
        let ctx = self.ctx();
        let mut m = PadicMatrix::zero(ctx, self.d, self.d);
        for c in 0..self.generators.cols() {
            for r in 0..self.d {
                m.set(r, c, self.generators.get(r, c));
            }
        }
        for (k, &j) in complement(self.d, &chart.w).iter().enumerate() {
            m.set(j, self.d - self.corank + k, 1);
        }
        debug_assert!(m.is_unit_mod_p());
        m
    }
}

impl ChartCoordinate {
    /// Build from a 0-based sorted row set and a row-major `i x (d-i)` block.
    pub fn from_parts(ctx: PadicCtx, d: usize, w: Vec<usize>, a_entries: &[u64]) -> Result<Self> {
        if w.windows(2).any(|p| p[0] >= p[1]) || w.iter().any(|&x| x >= d) {
            return Err(Error::InvalidInput(
                "chart row set must be sorted, distinct, and within 0..d".into(),
            ));
        }
        let rank = w.len();
        if rank > d {
            return Err(Error::InvalidInput("chart row set larger than d".into()));
        }
        let corank = d - rank;
        let a = PadicMatrix::from_rows(ctx, corank, rank, a_entries)?;
        Ok(ChartCoordinate { d, w, a })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Sorted 0-based row indices of the unit minor.
    pub fn row_set(&self) -> &[usize] {
        &self.w
    }

    pub fn block(&self) -> &PadicMatrix {
        &self.a
    }

    pub fn corank(&self) -> usize {
        self.a.rows()
    }
}

/// The point whose generator columns are `e_w + sum_j A[j][k] e_j` for the
/// k-th element `w` of the row set and `j` running over its complement.
pub fn from_chart(chart: &ChartCoordinate) -> GrassmannPoint {
    let ctx = chart.a.ctx();
    let d = chart.d;
    let rank = chart.w.len();
    let mut g = PadicMatrix::zero(ctx, d, rank);
    for (k, &w) in chart.w.iter().enumerate() {
        g.set(w, k, 1);
    }
    for (r, &j) in complement(d, &chart.w).iter().enumerate() {
        for k in 0..rank {
            g.set(j, k, chart.a.get(r, k));
        }
    }
    GrassmannPoint {
        d,
        corank: d - rank,
        generators: g,
    }
}

/// Canonical chart: the lexicographically first row set whose minor is a
/// unit, with the block solved by elimination. Always succeeds on a valid
/// point since the charts cover the whole space.
pub fn to_chart(point: &GrassmannPoint) -> ChartCoordinate {
    let d = point.d;
    let rank = d - point.corank;
    let all_cols: Vec<usize> = (0..rank).collect();
    for w in subsets_lex(d, rank) {
        let minor = point.generators.submatrix(&w, &all_cols);
        if minor.is_unit_mod_p() {
            let inv = minor.inverse().expect("unit minor is invertible");
            let rest = point.generators.submatrix(&complement(d, &w), &all_cols);
            return ChartCoordinate {
                d,
                w,
                a: rest.mul(&inv),
            };
        }
    }
    unreachable!("valid Grassmannian point lies in no chart");
}

/// Whether every generator column of `inner` lies in the span of `outer`'s
/// generators at the context precision.
fn span_contains(outer: &PadicMatrix, inner: &PadicMatrix) -> bool {
    let smith = smith_normal_form(outer);
    (0..inner.cols()).all(|c| smith.solves(&inner.column(c)))
}

/// Equality as submodules at precision: mutual containment.
pub fn same_point(n1: &GrassmannPoint, n2: &GrassmannPoint) -> bool {
    assert_eq!(n1.ctx(), n2.ctx(), "points from different contexts");
    assert_eq!(
        (n1.d, n1.corank),
        (n2.d, n2.corank),
        "points from different Grassmannians"
    );
    span_contains(&n1.generators, &n2.generators)
        && span_contains(&n2.generators, &n1.generators)
}

/// Haar sample: `g(N_0)` for Haar-uniform `g`, i.e. the first `d-i` columns
/// of a uniform element of `GL_d(Z/p^a)`.
pub fn sample_haar<R: rand::Rng + ?Sized>(
    ctx: PadicCtx,
    d: usize,
    corank: usize,
    rng: &mut R,
) -> Result<GrassmannPoint> {
    if corank == 0 || corank > d {
        return Err(Error::InvalidInput(format!(
            "corank i = {corank} must satisfy 1 <= i <= d = {d}"
        )));
    }
    let g = sample_gl(ctx, d, rng);
    let rows: Vec<usize> = (0..d).collect();
    let cols: Vec<usize> = (0..d - corank).collect();
    let generators = g.submatrix(&rows, &cols);
    debug_assert!(smith_normal_form(&generators)
        .diagonal_valuations()
        .iter()
        .all(|&v| v == 0));
    Ok(GrassmannPoint {
        d,
        corank,
        generators,
    })
}

/// Membership in the neighborhood `V_n(N_0) = { N : N + p^n M = N_0 + p^n M }`,
/// decided through the one-sided containment `N` in `N_0 + p^n M`.
pub fn in_neighborhood(n: &GrassmannPoint, n0: &GrassmannPoint, level: u32) -> Result<bool> {
    assert_eq!(n.ctx(), n0.ctx(), "points from different contexts");
    assert_eq!(
        (n.d, n.corank),
        (n0.d, n0.corank),
        "points from different Grassmannians"
    );
    let a = n.ctx().precision();
    if level == 0 {
        return Ok(true);
    }
    if level > a {
        return Err(Error::PrecisionExceeded { n: level, a });
    }
    let ctx_n = n.ctx().with_precision(level)?;
    Ok(span_contains(
        &n0.generators.reduce_precision(ctx_n),
        &n.generators.reduce_precision(ctx_n),
    ))
}

/// The level-`n` class of a point: canonical chart with the block reduced
/// mod `p^n`. Two points share a key exactly when they lie in a common
/// `V_n`-neighborhood.
pub fn level_class_key(point: &GrassmannPoint, level: u32) -> (Vec<usize>, Vec<u64>) {
    assert!(level >= 1 && level <= point.ctx().precision());
    let chart = to_chart(point);
    let modulus = point.ctx().p().pow(level);
    let entries = chart.a.entries().iter().map(|&x| x % modulus).collect();
    (chart.w, entries)
}

/// An automorphism `g` with `g(N_1) = N_2`, built from completed chart bases.
pub fn automorphism_between(n1: &GrassmannPoint, n2: &GrassmannPoint) -> Result<PadicMatrix> {
    assert_eq!(n1.ctx(), n2.ctx());
    assert_eq!((n1.d, n1.corank), (n2.d, n2.corank));
    let b1 = n1.completed_basis();
    let b2 = n2.completed_basis();
    Ok(b2.mul(&b1.inverse()?))
}

/// The shear `(B, C) -> (B', C)` with `B` split into a top block `B_1` and a
/// bottom block `B_2` of `C.rows()` rows, and `B' = [B_1; B_2 - C B_1]`.
/// Applying it again with `-C` restores `B`.
pub fn shear(b: &PadicMatrix, c: &PadicMatrix) -> Result<(PadicMatrix, PadicMatrix)> {
    if b.ctx() != c.ctx() {
        return Err(Error::InvalidInput("mixed contexts in shear".into()));
    }
    if c.rows() > b.rows() || c.cols() != b.rows() - c.rows() {
        return Err(Error::ShapeMismatch(format!(
            "shear needs C of shape d'' x (d'-d'') with d' = {}; got {} x {}",
            b.rows(),
            c.rows(),
            c.cols()
        )));
    }
    let split = b.rows() - c.rows();
    let top_rows: Vec<usize> = (0..split).collect();
    let bottom_rows: Vec<usize> = (split..b.rows()).collect();
    let b1 = b.row_slice(&top_rows);
    let b2 = b.row_slice(&bottom_rows);
    let sheared = b1.vstack(&b2.sub(&c.mul(&b1)));
    Ok((sheared, c.clone()))
}

#[derive(Serialize, Deserialize)]
struct GrassmannPointDto {
    d: usize,
    i: usize,
    p: u64,
    a: u32,
    generators: Vec<u64>,
}

impl From<GrassmannPoint> for GrassmannPointDto {
    fn from(point: GrassmannPoint) -> Self {
        GrassmannPointDto {
            d: point.d,
            i: point.corank,
            p: point.ctx().p(),
            a: point.ctx().precision(),
            generators: point.generators.entries().to_vec(),
        }
    }
}

impl TryFrom<GrassmannPointDto> for GrassmannPoint {
    type Error = Error;

    fn try_from(dto: GrassmannPointDto) -> Result<Self> {
        let ctx = PadicCtx::new(dto.p, dto.a)?;
        if dto.i > dto.d {
            return Err(Error::InvalidInput("corank exceeds dimension".into()));
        }
        let generators =
            PadicMatrix::from_rows(ctx, dto.d, dto.d - dto.i, &dto.generators)?;
        GrassmannPoint::new(dto.i, generators)
    }
}

impl Serialize for ChartCoordinate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Dto<'a> {
            #[serde(rename = "W")]
            w: Vec<usize>,
            #[serde(rename = "A")]
            a: &'a [u64],
        }
        Dto {
            w: self.w.iter().map(|&x| x + 1).collect(),
            a: self.a.entries(),
        }
        .serialize(serializer)
    }
}

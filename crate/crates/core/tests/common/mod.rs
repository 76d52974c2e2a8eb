//! Shared oracles for the integration suites. These stay independent of the
//! library paths they check: the rank-statistic formula below recomputes
//! `s(N)` from the bilinear pairing matrix rather than through kernels, and
//! the chi-square helper is plain floating-point arithmetic.

use iwagr_core::genericity::SubmoduleFamily;
use iwagr_core::grassmann::{to_chart, GrassmannPoint};
use iwagr_core::padic::{rank_at_precision, PadicCtx, PadicMatrix};

/// Pearson chi-square statistic for observed counts against a uniform
/// expectation.
pub fn chi_square_uniform(counts: &[u64], samples: u64) -> f64 {
    let expected = samples as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let diff = c as f64 - expected;
            diff * diff / expected
        })
        .sum()
}

/// 99.9th percentiles of the chi-square distribution, keyed by degrees of
/// freedom, for the class counts used in these suites.
pub fn chi_square_999(df: usize) -> f64 {
    match df {
        1 => 10.828,
        2 => 13.816,
        3 => 16.266,
        4 => 18.467,
        5 => 20.515,
        7 => 24.322,
        12 => 32.909,
        23 => 49.728,
        26 => 54.052,
        35 => 66.619,
        47 => 82.720,
        _ => panic!("no tabulated threshold for df = {df}"),
    }
}

/// Independent route to the statistic `s(N)` for corank-1 points: the
/// ambient dimension minus one, minus the rank of the matrix of pairings
/// `sum_l (b_k^(nu) b_l^(nu') - b_k^(nu') b_l^(nu)) l_l` built from the
/// functional cutting out `N` and bases of the family members. Returns
/// `None` on inadmissible points (some member pairs to zero entirely).
///
/// Family members must be given by bases (independent columns).
pub fn s_bilinear_formula(point: &GrassmannPoint, family: &SubmoduleFamily) -> Option<usize> {
    assert_eq!(point.corank(), 1);
    let ctx = point.ctx();
    let d = point.dim();
    let m_big = ctx.modulus() as u128;

    // functional: l[w_k] = chart block entry k, l[complement] = -1
    let chart = to_chart(point);
    let mut functional = vec![0u64; d];
    for (k, &w) in chart.row_set().iter().enumerate() {
        functional[w] = chart.block().get(0, k);
    }
    let complement = (0..d)
        .find(|j| !chart.row_set().contains(j))
        .expect("corank-1 chart misses one row");
    functional[complement] = ctx.modulus() - 1;

    let pair = |column: &[u64]| -> u64 {
        let mut acc = 0u128;
        for (l, &b) in column.iter().enumerate() {
            acc = (acc + functional[l] as u128 * b as u128) % m_big;
        }
        acc as u64
    };

    let mut columns: Vec<Vec<u64>> = Vec::new();
    for member in family.members() {
        assert_eq!(
            rank_at_precision(member),
            member.cols(),
            "bilinear oracle needs basis presentations"
        );
        let basis: Vec<Vec<u64>> = (0..member.cols()).map(|c| member.column(c)).collect();
        let pairings: Vec<u64> = basis.iter().map(|b| pair(b)).collect();
        if pairings.iter().all(|&x| x == 0) {
            return None; // member contained in N at precision
        }
        for nu in 0..basis.len() {
            for nu2 in nu + 1..basis.len() {
                let col: Vec<u64> = (0..d)
                    .map(|k| {
                        let left = basis[nu][k] as u128 * pairings[nu2] as u128 % m_big;
                        let right = basis[nu2][k] as u128 * pairings[nu] as u128 % m_big;
                        ((left + m_big - right) % m_big) as u64
                    })
                    .collect();
                columns.push(col);
            }
        }
    }

    if columns.is_empty() {
        return Some(d - 1);
    }
    let mut matrix = PadicMatrix::zero(ctx, d, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            matrix.set(r, c, x);
        }
    }
    Some(d - 1 - rank_at_precision(&matrix))
}

/// First `cols` columns of a Haar-uniform automorphism: a uniform direct
/// summand basis of the given rank.
pub fn random_summand_basis<R: rand::Rng + ?Sized>(
    ctx: PadicCtx,
    d: usize,
    cols: usize,
    rng: &mut R,
) -> PadicMatrix {
    let g = iwagr_core::padic::sample_gl(ctx, d, rng);
    let rows: Vec<usize> = (0..d).collect();
    let col_idx: Vec<usize> = (0..cols).collect();
    g.submatrix(&rows, &col_idx)
}

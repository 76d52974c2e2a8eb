//! Python bindings for the iwagr toolkit.
//!
//! Thin function-level wrappers over the core crate: plain integers and
//! lists in, tuples and dicts out. All randomized entry points take an
//! explicit `(seed, index)` pair and are deterministic.
//!
//! Usage from Python:
//!
//!     import iwagr_py
//!     iwagr_py.ball_measure(2, 2, 1, 1)        # '1/3'
//!     iwagr_py.weierstrass(3, 8, 12, [9, 3])   # (1, 1, [3, 1])

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use iwagr_core::error::Error;
use iwagr_core::fukuda::{
    fit_lambda_mu_nu, fukuda_check, openness_radius, ClassNumberSequence, FukudaVerdict,
};
use iwagr_core::grassmann::{
    class_count, measure_ball_exact, sample_haar, to_chart,
};
use iwagr_core::invariants::{FieldClass, PrimeSplit, SplittingProfile};
use iwagr_core::iwasawa::{
    bar_substitute, char_ideal, dagger_pseudo_null, descend_char, prime_to_higher_cyclotomic,
    s_alpha as s_alpha_series, weierstrass as weierstrass_prep, AlphaVector, ElementaryModule,
    TruncatedSeries,
};
use iwagr_core::padic::{sample_gl as sample_gl_core, PadicCtx};
use iwagr_core::rng::StreamRng;

fn value_error(err: Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn ctx_of(p: u64, a: u32) -> PyResult<PadicCtx> {
    PadicCtx::new(p, a).map_err(value_error)
}

fn series_from_terms(
    ctx: PadicCtx,
    nvars: usize,
    trunc: u32,
    terms: Vec<(Vec<u16>, i64)>,
) -> PyResult<TruncatedSeries> {
    let mut f = TruncatedSeries::zero(ctx, nvars, trunc);
    for (exp, coeff) in terms {
        if exp.len() != nvars {
            return Err(PyValueError::new_err(format!(
                "exponent vector {exp:?} does not have {nvars} entries"
            )));
        }
        let monomial = exp
            .iter()
            .enumerate()
            .fold(TruncatedSeries::one(ctx, nvars, trunc), |acc, (j, &e)| {
                acc.mul(&TruncatedSeries::variable(ctx, nvars, trunc, j).pow(e as u32))
            });
        f = f.add(&monomial.scale(coeff));
    }
    Ok(f)
}

/// Haar-uniform element of GL_d(Z/p^a) as a list of rows, drawn from the
/// counter-based stream keyed by (seed, index).
#[pyfunction]
fn sample_gl(p: u64, a: u32, d: usize, seed: u64, index: u64) -> PyResult<Vec<Vec<u64>>> {
    let ctx = ctx_of(p, a)?;
    let mut rng = StreamRng::stream(seed, index);
    let g = sample_gl_core(ctx, d, &mut rng);
    Ok((0..d)
        .map(|r| (0..d).map(|c| g.get(r, c)).collect())
        .collect())
}

/// Haar sample of Gr(i, Z_p^d) in canonical chart form: a pair
/// (row_set, block) with 1-based row indices and the coefficient block as
/// a list of rows.
#[pyfunction]
fn sample_grassmann_chart(
    p: u64,
    a: u32,
    d: usize,
    i: usize,
    seed: u64,
    index: u64,
) -> PyResult<(Vec<usize>, Vec<Vec<u64>>)> {
    let ctx = ctx_of(p, a)?;
    let mut rng = StreamRng::stream(seed, index);
    let point = sample_haar(ctx, d, i, &mut rng).map_err(value_error)?;
    let chart = to_chart(&point);
    let row_set: Vec<usize> = chart.row_set().iter().map(|&w| w + 1).collect();
    let block = (0..chart.block().rows())
        .map(|r| (0..chart.block().cols()).map(|c| chart.block().get(r, c)).collect())
        .collect();
    Ok((row_set, block))
}

/// Number of level-n classes of Gr(i, Z_p^d), as a decimal string.
#[pyfunction]
fn grassmann_class_count(p: u64, d: usize, i: usize, n: u32) -> PyResult<String> {
    if i == 0 || i > d || n == 0 {
        return Err(PyValueError::new_err("need 1 <= i <= d and n >= 1"));
    }
    Ok(class_count(d, i, p, n).to_string())
}

/// Exact measure of a level-n neighborhood, as a fraction string.
#[pyfunction]
fn ball_measure(p: u64, d: usize, i: usize, n: u32) -> PyResult<String> {
    if i == 0 || i > d {
        return Err(PyValueError::new_err("need 1 <= i <= d"));
    }
    Ok(measure_ball_exact(d, i, p, n).to_string())
}

/// Weierstrass data (mu, lambda, distinguished coefficients low-to-high)
/// of the one-variable series with the given coefficients.
#[pyfunction]
fn weierstrass(p: u64, a: u32, trunc: u32, coeffs: Vec<i64>) -> PyResult<(u32, u32, Vec<u64>)> {
    let ctx = ctx_of(p, a)?;
    let f = TruncatedSeries::from_coeffs(ctx, trunc, &coeffs).map_err(value_error)?;
    let data = weierstrass_prep(&f).map_err(value_error)?;
    Ok((data.mu, data.lambda, data.distinguished.coeffs().to_vec()))
}

/// Localization-triviality and higher-layer primality flags of the
/// characteristic ideal of the series.
#[pyfunction]
fn dagger_flags(p: u64, a: u32, trunc: u32, coeffs: Vec<i64>) -> PyResult<(bool, bool)> {
    let ctx = ctx_of(p, a)?;
    let f = TruncatedSeries::from_coeffs(ctx, trunc, &coeffs).map_err(value_error)?;
    let ideal = char_ideal(&ElementaryModule::new(vec![f]).map_err(value_error)?)
        .map_err(value_error)?;
    Ok((
        dagger_pseudo_null(&ideal),
        prime_to_higher_cyclotomic(&ideal),
    ))
}

/// Terms of S_alpha as a list of (exponent vector, coefficient) pairs.
#[pyfunction]
fn s_alpha_terms(
    p: u64,
    a: u32,
    trunc: u32,
    alpha: Vec<u64>,
) -> PyResult<Vec<(Vec<u16>, u64)>> {
    let ctx = ctx_of(p, a)?;
    let alpha = AlphaVector::from_residues(ctx, &alpha).map_err(value_error)?;
    let s = s_alpha_series(&alpha, trunc);
    Ok(s.terms().iter().map(|(e, &c)| (e.clone(), c)).collect())
}

/// Characteristic-ideal descent of a distinguished two-variable series
/// along the section alpha. Returns a dict with both computation routes
/// and their agreement flag.
#[pyfunction]
fn descend<'py>(
    py: Python<'py>,
    p: u64,
    a: u32,
    trunc: u32,
    terms: Vec<(Vec<u16>, i64)>,
    alpha: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let ctx = ctx_of(p, a)?;
    let f = series_from_terms(ctx, 2, trunc, terms)?;
    let alpha = AlphaVector::from_residues(ctx, &[alpha]).map_err(value_error)?;
    let det_route = descend_char(&f, &alpha).map_err(value_error)?;
    let bar_route = weierstrass_prep(&bar_substitute(&f, &alpha))
        .map_err(value_error)?
        .char_ideal();
    let out = PyDict::new(py);
    out.set_item("mu", det_route.mu)?;
    out.set_item("lambda", det_route.lambda)?;
    out.set_item("distinguished", det_route.distinguished.coeffs().to_vec())?;
    out.set_item("routes_agree", det_route.eq_up_to_unit(&bar_route))?;
    Ok(out)
}

/// Exact fit (lambda, mu, nu, onset) of a tower of valuations.
#[pyfunction]
fn fit_tower(p: u64, e: Vec<u64>) -> PyResult<(u64, u64, i64, usize)> {
    let seq = ClassNumberSequence::new(p, 0, 0, e).map_err(value_error)?;
    let fit = fit_lambda_mu_nu(&seq).map_err(value_error)?;
    Ok((fit.lambda, fit.mu, fit.nu, fit.onset))
}

/// Fukuda-type verdict on a tower: dict with conclusive, rank, witness,
/// and radius fields.
#[pyfunction]
fn fukuda<'py>(
    py: Python<'py>,
    p: u64,
    s: u32,
    n0: usize,
    e: Vec<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let seq = ClassNumberSequence::new(p, n0, s, e).map_err(value_error)?;
    let verdict = fukuda_check(&seq);
    let out = PyDict::new(py);
    match verdict {
        FukudaVerdict::Conclusive { rank, witness } => {
            out.set_item("conclusive", true)?;
            out.set_item("rank", rank)?;
            out.set_item("witness", witness)?;
        }
        FukudaVerdict::InconclusiveWithinData => {
            out.set_item("conclusive", false)?;
            out.set_item("rank", py.None())?;
            out.set_item("witness", py.None())?;
        }
    }
    out.set_item("radius", openness_radius(&seq))?;
    Ok(out)
}

/// Catalog value of s(k) from a splitting profile. `field_class` is one of
/// "imaginary_quadratic", "complex_cubic", "totally_imaginary_quartic",
/// "general"; `primes` lists (e, f) pairs for the primes above p.
#[pyfunction]
#[pyo3(signature = (field_class, degree, r2, primes, delta = 0))]
fn s_catalog(
    field_class: &str,
    degree: u32,
    r2: u32,
    primes: Vec<(u32, u32)>,
    delta: u32,
) -> PyResult<u32> {
    let class = match field_class {
        "imaginary_quadratic" => FieldClass::ImaginaryQuadratic,
        "complex_cubic" => FieldClass::ComplexCubic,
        "totally_imaginary_quartic" => FieldClass::TotallyImaginaryQuartic,
        "general" => FieldClass::General,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown field class '{other}'"
            )))
        }
    };
    let profile = SplittingProfile::new(
        class,
        degree,
        r2,
        primes.iter().map(|&(e, f)| PrimeSplit { e, f }).collect(),
        delta,
        None,
    )
    .map_err(value_error)?;
    profile.s_catalog().map_err(value_error)
}

#[pymodule]
fn iwagr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(sample_gl, m)?)?;
    m.add_function(wrap_pyfunction!(sample_grassmann_chart, m)?)?;
    m.add_function(wrap_pyfunction!(grassmann_class_count, m)?)?;
    m.add_function(wrap_pyfunction!(ball_measure, m)?)?;
    m.add_function(wrap_pyfunction!(weierstrass, m)?)?;
    m.add_function(wrap_pyfunction!(dagger_flags, m)?)?;
    m.add_function(wrap_pyfunction!(s_alpha_terms, m)?)?;
    m.add_function(wrap_pyfunction!(descend, m)?)?;
    m.add_function(wrap_pyfunction!(fit_tower, m)?)?;
    m.add_function(wrap_pyfunction!(fukuda, m)?)?;
    m.add_function(wrap_pyfunction!(s_catalog, m)?)?;
    Ok(())
}

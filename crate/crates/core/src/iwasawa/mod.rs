//! Truncated power-series arithmetic over `Z_p[[T_1, .., T_d]]`:
//! Weierstrass preparation, characteristic ideals of elementary modules,
//! the `S_alpha` sections and their substitution, descent of characteristic
//! ideals to one variable, divisibility against the cyclotomic tower, and
//! catalog-ideal membership.

mod alpha;
mod cyclotomic;
mod descent;
mod ideal;
mod poly;
mod series;
mod verdict;
mod weierstrass;

pub use alpha::{
    bar_nonzero_scan, bar_substitute, bar_zero_enumerate, binom_series, binom_series_exact,
    factorial_valuation, s_alpha, AlphaVector,
};
pub use cyclotomic::{
    cyclotomic_layer, dagger_pseudo_null, layer_bound, phi_p_power, prime_to_higher_cyclotomic,
    sigma_power_minus_one,
};
pub use descent::{companion_rep, descend_char};
pub use ideal::CatalogIdeal;
pub use poly::PadicPoly;
pub use series::TruncatedSeries;
pub use verdict::{conclude_structure, StructureVerdict};
pub use weierstrass::{char_ideal, weierstrass, CharIdeal, ElementaryModule, WeierstrassData};

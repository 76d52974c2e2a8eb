//! `iwagr`: deterministic reports over the p-adic Grassmannian and Iwasawa
//! toolkit. Every report embeds the configuration (p, a, D, seed, samples)
//! and randomized subcommands draw counter-based streams, so output is
//! byte-identical for identical flags and input.

mod payload;
mod render;
mod series_text;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iwagr_core::error::Error;
use iwagr_core::fukuda::{
    fit_lambda_mu_nu, fukuda_check, openness_radius, ClassNumberSequence, FukudaVerdict,
};
use iwagr_core::genericity::verify_generic_rank;
use iwagr_core::grassmann::{
    class_count, in_neighborhood, measure_ball_exact, sample_haar, to_chart, GrassmannPoint,
};
use iwagr_core::invariants::{check_decomposition_ranks, s_from_inertia, s_prime_from_decomposition};
use iwagr_core::iwasawa::{
    bar_substitute, char_ideal, dagger_pseudo_null, descend_char, prime_to_higher_cyclotomic,
    weierstrass, AlphaVector, CatalogIdeal, ElementaryModule,
};
use iwagr_core::padic::PadicCtx;
use iwagr_core::rng::StreamRng;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "iwagr",
    version,
    about = "Exact p-adic linear algebra, Grassmannian sampling, Weierstrass preparation, and class-number tower analysis"
)]
struct Cli {
    /// prime p
    #[arg(long, global = true, default_value_t = 3)]
    p: u64,

    /// working precision exponent a: arithmetic is exact modulo p^a
    #[arg(long, global = true, default_value_t = 8)]
    precision: u32,

    /// total-degree truncation for power series
    #[arg(long, global = true, default_value_t = 12)]
    truncation: u32,

    /// seed for randomized subcommands
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// sample count for Monte-Carlo subcommands
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: u64,

    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// refuse randomized runs without an explicit --seed
    #[arg(long, global = true)]
    ci: bool,

    /// read the JSON payload from a file instead of stdin
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample Haar-uniform points of Gr(i, Z_p^d) and print their canonical
    /// charts (at most 100, drawn from streams (seed, 0..))
    GrSample {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
    },
    /// Exact measure of a level-n neighborhood plus its empirical frequency
    GrMeasure {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n: u32,
    },
    /// Monte-Carlo image-rank genericity over a submodule family (JSON payload)
    GenericRank,
    /// s and s' from a splitting profile or inertia data (JSON payload)
    SInvariant {
        /// enumeration level for the exhaustive minimum
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Membership of S_alpha in a catalog ideal
    SalphaMembership {
        /// comma-separated generators, e.g. "p,T1"
        #[arg(long)]
        ideal: String,
        /// comma-separated alpha residues, e.g. "0" or "4,7"
        #[arg(long)]
        alpha: String,
    },
    /// Characteristic-ideal descent of a distinguished two-variable series (JSON payload)
    Descend {
        /// alpha residue for the section
        #[arg(long)]
        alpha: u64,
    },
    /// Weierstrass data of a one-variable series, e.g. --f "9+3T"
    Weierstrass {
        #[arg(long)]
        f: String,
    },
    /// Localization-triviality and higher-layer primality of a series
    Dagger {
        #[arg(long)]
        f: String,
    },
    /// Fukuda-type verdict on a class-number tower
    Fukuda {
        /// target rank s
        #[arg(long)]
        s: Option<u32>,
        /// total-ramification onset layer
        #[arg(long, default_value_t = 0)]
        n0: usize,
        /// comma-separated valuations e_0,e_1,..
        #[arg(long)]
        e: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => print!("{}", render::render_text(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let object = json!({ "error": { "kind": error_kind(&err), "message": err.to_string() } });
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&object).unwrap()),
                Format::Text => eprintln!("error ({}): {}", error_kind(&err), err),
            }
            ExitCode::FAILURE
        }
    }
}

fn config_json(cli: &Cli, seed: Option<u64>) -> Value {
    json!({
        "p": cli.p,
        "precision": cli.precision,
        "truncation": cli.truncation,
        "seed": seed,
        "samples": cli.samples,
    })
}

fn required_seed(cli: &Cli) -> Result<u64, Error> {
    match cli.seed {
        Some(seed) => Ok(seed),
        None if cli.ci => Err(Error::InvalidInput(
            "randomized subcommands require --seed in ci mode".into(),
        )),
        None => Ok(0),
    }
}

fn read_payload(cli: &Cli) -> Result<String, Error> {
    match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            Ok(buffer)
        }
    }
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {part}")))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let ctx = PadicCtx::new(cli.p, cli.precision)?;
    match &cli.command {
        Command::GrSample { d, i } => {
            let seed = required_seed(cli)?;
            let count = cli.samples.min(100);
            let mut points = Vec::new();
            for index in 0..count {
                let mut rng = StreamRng::stream(seed, index);
                let point = sample_haar(ctx, *d, *i, &mut rng)?;
                let chart = to_chart(&point);
                points.push(json!({
                    "point": serde_json::to_value(&point).unwrap(),
                    "chart": serde_json::to_value(&chart).unwrap(),
                }));
            }
            Ok(json!({
                "command": "gr-sample",
                "config": config_json(cli, Some(seed)),
                "d": d,
                "i": i,
                "count": count,
                "points": points,
            }))
        }
        Command::GrMeasure { d, i, n } => {
            let seed = required_seed(cli)?;
            let exact = measure_ball_exact(*d, *i, cli.p, *n);
            let base = GrassmannPoint::standard(ctx, *d, *i)?;
            let mut hits = 0u64;
            for index in 0..cli.samples {
                let mut rng = StreamRng::stream(seed, index);
                let point = sample_haar(ctx, *d, *i, &mut rng)?;
                if in_neighborhood(&point, &base, *n)? {
                    hits += 1;
                }
            }
            Ok(json!({
                "command": "gr-measure",
                "config": config_json(cli, Some(seed)),
                "d": d,
                "i": i,
                "n": n,
                "classes": class_count(*d, *i, cli.p, (*n).max(1)).to_string(),
                "exact": exact.to_string(),
                "empirical": {
                    "hits": hits,
                    "samples": cli.samples,
                    "frequency": format!("{hits}/{}", cli.samples),
                },
            }))
        }
        Command::GenericRank => {
            let seed = required_seed(cli)?;
            let family = payload::family_from_json(&read_payload(cli)?)?;
            let report = verify_generic_rank(&family, cli.samples, seed)?;
            Ok(json!({
                "command": "generic-rank",
                "config": config_json(cli, Some(seed)),
                "d": family.ambient(),
                "i": family.min_rank(),
                "members": family.members().len(),
                "report": {
                    "samples": report.samples,
                    "failures": report.failures,
                    "frequency": format!("{}/{}", report.failures, report.samples),
                    "certificate_used": report.certificate_used,
                    "seed": report.seed,
                },
            }))
        }
        Command::SInvariant { level } => {
            let input = payload::s_invariant_from_json(&read_payload(cli)?, ctx)?;
            match input {
                payload::SInvariantInput::Profile(profile) => Ok(json!({
                    "command": "s-invariant",
                    "config": config_json(cli, None),
                    "source": "catalog",
                    "d": profile.d_of_k(),
                    "s": profile.s_catalog()?,
                    "nonsplit_first_layer": profile.nonsplit_first_layer(),
                })),
                payload::SInvariantInput::Inertia(data) => {
                    let report = s_from_inertia(&data, *level)?;
                    let s_prime = match data.decomposition() {
                        Some(_) => Some(s_prime_from_decomposition(&data, *level)?),
                        None => None,
                    };
                    let decomposition_ranks_ok = match data.decomposition() {
                        Some(_) => Some(check_decomposition_ranks(&data)?),
                        None => None,
                    };
                    Ok(json!({
                        "command": "s-invariant",
                        "config": config_json(cli, None),
                        "source": "enumeration",
                        "d": data.dim(),
                        "s": report.s,
                        "s_report": serde_json::to_value(&report).unwrap(),
                        "s_prime_report": s_prime.map(|r| serde_json::to_value(&r).unwrap()),
                        "decomposition_ranks_at_least_two": decomposition_ranks_ok,
                        "warning": "exhaustive at a finite level; no effective bound certifies the generic value",
                    }))
                }
            }
        }
        Command::SalphaMembership { ideal, alpha } => {
            let generators: Vec<String> = ideal.split(',').map(|s| s.trim().to_string()).collect();
            let catalog = CatalogIdeal::parse(&generators)?;
            let residues = parse_u64_list(alpha)?;
            let alpha_vec = AlphaVector::from_residues(ctx, &residues)?;
            let member = catalog.contains_s_alpha(&alpha_vec, cli.truncation)?;
            Ok(json!({
                "command": "salpha-membership",
                "config": config_json(cli, None),
                "ideal": generators,
                "alpha": residues,
                "member": member,
            }))
        }
        Command::Descend { alpha } => {
            let f = payload::series_from_json(&read_payload(cli)?)?;
            let alpha_vec = AlphaVector::from_residues(f.ctx(), &[*alpha])?;
            let det_route = descend_char(&f, &alpha_vec)?;
            let bar = bar_substitute(&f, &alpha_vec);
            let bar_route = weierstrass(&bar)?.char_ideal();
            let agree = det_route.eq_up_to_unit(&bar_route);
            Ok(json!({
                "command": "descend",
                "config": config_json(cli, None),
                "alpha": alpha,
                "char_ideal": {
                    "mu": det_route.mu,
                    "lambda": det_route.lambda,
                    "distinguished": det_route.distinguished.coeffs(),
                },
                "substitution_route": {
                    "mu": bar_route.mu,
                    "lambda": bar_route.lambda,
                    "distinguished": bar_route.distinguished.coeffs(),
                },
                "routes_agree": agree,
            }))
        }
        Command::Weierstrass { f } => {
            let series = series_text::parse_one_variable(f, ctx, cli.truncation)?;
            let data = weierstrass(&series)?;
            Ok(json!({
                "command": "weierstrass",
                "config": config_json(cli, None),
                "input": f,
                "mu": data.mu,
                "lambda": data.lambda,
                "distinguished": data.distinguished.coeffs(),
                "coefficient_precision": cli.precision - data.mu,
            }))
        }
        Command::Dagger { f } => {
            let series = series_text::parse_one_variable(f, ctx, cli.truncation)?;
            let ideal = char_ideal(&ElementaryModule::new(vec![series])?)?;
            Ok(json!({
                "command": "dagger",
                "config": config_json(cli, None),
                "input": f,
                "char_ideal": {
                    "mu": ideal.mu,
                    "lambda": ideal.lambda,
                    "distinguished": ideal.distinguished.coeffs(),
                },
                "dagger_pseudo_null": dagger_pseudo_null(&ideal),
                "prime_to_higher_cyclotomic": prime_to_higher_cyclotomic(&ideal),
            }))
        }
        Command::Fukuda { s, n0, e } => {
            let sequence = match e {
                Some(list) => {
                    let entries = parse_u64_list(list)?;
                    let target = s.ok_or_else(|| {
                        Error::InvalidInput("--s is required together with --e".into())
                    })?;
                    ClassNumberSequence::new(cli.p, *n0, target, entries)?
                }
                None => payload::sequence_from_input(&read_payload(cli)?, cli.p, *n0, *s)?,
            };
            let verdict = fukuda_check(&sequence);
            let fit = fit_lambda_mu_nu(&sequence).ok();
            let (conclusive, rank, witness) = match verdict {
                FukudaVerdict::Conclusive { rank, witness } => (true, Some(rank), Some(witness)),
                FukudaVerdict::InconclusiveWithinData => (false, None, None),
            };
            Ok(json!({
                "command": "fukuda",
                "config": config_json(cli, None),
                "p": sequence.p(),
                "n0": sequence.n0(),
                "s": sequence.target_rank(),
                "e": sequence.entries(),
                "conclusive": conclusive,
                "rank": rank,
                "witness": witness,
                "radius": openness_radius(&sequence),
                "fit": fit.map(|f| json!({
                    "lambda": f.lambda,
                    "mu": f.mu,
                    "nu": f.nu,
                    "onset": f.onset,
                })),
            }))
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::NotPrime(_) => "not-prime",
        Error::PrecisionOverflow { .. } => "precision-overflow",
        Error::PrecisionExceeded { .. } => "precision-exceeded",
        Error::ShapeMismatch(_) => "shape-mismatch",
        Error::NotInvertible => "not-invertible",
        Error::EnumerationTooLarge { .. } => "enumeration-too-large",
        Error::RankBelowDeclared { .. } => "rank-below-declared",
        Error::InadmissiblePoint { .. } => "inadmissible-point",
        Error::NoAdmissibleClass => "no-admissible-class",
        Error::ZeroPolynomial => "zero-polynomial",
        Error::ZeroAtPrecision => "zero-at-precision",
        Error::TruncationTooSmall { .. } => "truncation-too-small",
        Error::UnsupportedIdeal(_) => "unsupported-ideal",
        Error::NotDistinguished(_) => "not-distinguished",
        Error::IndeterminateDeterminant => "indeterminate-determinant",
        Error::InconsistentInput(_) => "inconsistent-input",
        Error::MissingDecompositionData => "missing-decomposition-data",
        Error::UnsupportedProfile(_) => "unsupported-profile",
        Error::NotStabilized(_) => "not-stabilized",
        Error::NegativeEntry { .. } => "negative-entry",
        Error::InvalidInput(_) => "invalid-input",
    }
}

//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 verification failure, 2 usage or input error, 3 resource limit.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::mult::{DEFAULT_DIMENSION_BOUND, VALIDITY_BANNER};
use crate::rootdata::{Family, GroupType, RootDatum};
use crate::spectra::Spectrum;
use crate::torus::TorusElement;
use crate::verify::{self, VerificationReport};
use crate::weights::{parse_bound_weight, Weight, DEFAULT_ORBIT_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "torus-spectra", version, about = "Weights, levels and eigenvalue spectra of torus elements")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Reject weight sets with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    orbit_bound: u64,

    /// Reject modules of larger dimension.
    #[arg(long, global = true, default_value_t = DEFAULT_DIMENSION_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    max_dim: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weights of an irreducible module with multiplicities.
    Weights {
        #[arg(long)]
        group: Option<String>,
        /// `[1,1]` together with --group, or `A2:[1,1]`.
        #[arg(long)]
        highest: String,
    },
    /// Eigenvalue spectrum of a torus element on an irreducible module.
    Spectrum {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        highest: String,
        /// Element as JSON (`{"omega_values":[...]}`) or epsilon shorthand.
        #[arg(long, conflicts_with = "epsilon", required_unless_present = "epsilon")]
        element: Option<String>,
        /// Epsilon shorthand such as `a,a,1/a,1/a` (families A-D).
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Dominant weights by level.
    Levels {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        max_level: u32,
        /// Largest coordinate sum enumerated.
        #[arg(long, default_value_t = 4)]
        height_bound: u32,
    },
    /// Run a verification check.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        family: Option<char>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 30)]
        dim_bound: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=2))]
        depth: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Root datum summary.
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    LevelTable,
    Witnesses,
    C99,
    Bounds,
    Natural,
    Thm12,
}

/// Runs the CLI, printing to standard output and diagnostics to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource_limit() {
                EXIT_RESOURCE
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("cannot write output: {e}"))
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").map_err(io)
}

fn datum_for(group: &str) -> Result<Arc<RootDatum>> {
    let ty: GroupType = group.trim().parse()?;
    Ok(Arc::new(RootDatum::from_type(ty)))
}

/// `--highest` as `[..]` with `--group`, or as `G:[..]`.
fn module_arg(group: Option<&str>, highest: &str) -> Result<(Arc<RootDatum>, Weight)> {
    let (datum, w) = if highest.contains(':') {
        let (ty, w) = parse_bound_weight(highest)?;
        if let Some(g) = group {
            let given: GroupType = g.trim().parse()?;
            if given != ty {
                return Err(Error::InvalidInput(format!(
                    "--group {given} disagrees with `{highest}`"
                )));
            }
        }
        (Arc::new(RootDatum::from_type(ty)), w)
    } else {
        let g = group.ok_or_else(|| {
            Error::InvalidInput("--group is required unless --highest has the form `G:[..]`".into())
        })?;
        (datum_for(g)?, Weight::parse_coords(highest)?)
    };
    let w = datum.weight(w.coords().to_vec())?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok((datum, w))
}

fn check_weight_count(datum: &RootDatum, lambda: &Weight, bound: u64) -> Result<()> {
    let mut total: u128 = 0;
    for mu in datum.subdominant_weights(lambda)? {
        total += datum.orbit_size(&mu);
        if total > bound as u128 {
            return Err(Error::resource(format!("weight set of V{lambda}"), bound));
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Weights { group, highest } => {
            let (datum, lambda) = module_arg(group.as_deref(), highest)?;
            check_weight_count(&datum, &lambda, cli.orbit_bound)?;
            let ms = datum.freudenthal_multiplicities_bounded(&lambda, cli.max_dim)?;
            if cli.json {
                let entries: Vec<(String, u64)> =
                    ms.entries().iter().map(|(w, m)| (w.to_string(), *m)).collect();
                emit_json(
                    out,
                    &json!({
                        "group": datum.group_type().to_string(),
                        "highest": lambda.to_string(),
                        "dim": ms.dim(),
                        "entries": entries,
                        "banner": VALIDITY_BANNER,
                    }),
                )?;
            } else {
                writeln!(out, "V{lambda} of {}: {} weights, dim {}", datum.group_type(), ms.len(), ms.dim())
                    .map_err(io)?;
                for (w, m) in ms.entries() {
                    writeln!(out, "{w} {m}").map_err(io)?;
                }
                writeln!(out, "{VALIDITY_BANNER}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Spectrum {
            group,
            highest,
            element,
            epsilon,
        } => {
            let (datum, lambda) = module_arg(group.as_deref(), highest)?;
            check_weight_count(&datum, &lambda, cli.orbit_bound)?;
            let s = match (element, epsilon) {
                (Some(e), _) if e.trim_start().starts_with('{') => {
                    TorusElement::parse_json(datum.clone(), e)?
                }
                (Some(e), _) | (None, Some(e)) => TorusElement::parse_epsilon(datum.clone(), e)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let weights = datum.freudenthal_multiplicities_bounded(&lambda, cli.max_dim)?;
            let sp = Spectrum::from_weights(&s, &weights);
            if cli.json {
                let mut j = sp.to_json();
                j.torsion_note = s.torsion_note();
                emit_json(out, &j)?;
            } else {
                write_spectrum_text(out, &s, &sp)?;
            }
            Ok(EXIT_OK)
        }
        Command::Levels {
            group,
            max_level,
            height_bound,
        } => {
            let datum = datum_for(group)?;
            let mut levels: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for a in datum.level_sets(*max_level, *height_bound) {
                levels
                    .entry(a.level.to_string())
                    .or_default()
                    .push(a.weight.to_string());
            }
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "family": datum.family().letter().to_string(),
                        "rank": datum.rank(),
                        "height_bound": height_bound,
                        "levels": levels,
                        "banner": VALIDITY_BANNER,
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "levels of {} (coordinate sum <= {height_bound})",
                    datum.group_type()
                )
                .map_err(io)?;
                for (l, ws) in &levels {
                    writeln!(out, "Lambda_{l}: {}", ws.join(" ")).map_err(io)?;
                }
                writeln!(out, "{VALIDITY_BANNER}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            check,
            family,
            rank,
            dim_bound,
            depth,
            seed,
            samples,
        } => {
            let ty = || -> Result<(Family, usize)> {
                let f = family.ok_or_else(|| Error::InvalidInput("--family is required".into()))?;
                let f = Family::from_letter(f.to_ascii_uppercase())
                    .ok_or_else(|| Error::parse(0, format!("unknown family `{f}`")))?;
                let r = rank.ok_or_else(|| Error::InvalidInput("--rank is required".into()))?;
                GroupType::new(f, r)?;
                Ok((f, r))
            };
            let datum = || -> Result<Arc<RootDatum>> {
                let (f, r) = ty()?;
                Ok(Arc::new(RootDatum::new(f, r)?))
            };
            let report: VerificationReport = match check {
                Check::LevelTable => {
                    let (f, r) = ty()?;
                    verify::verify_level_table(f, r)?
                }
                Check::Witnesses => verify::verify_paper_witnesses()?,
                Check::C99 => verify::verify_theorem_c99(&datum()?, *dim_bound, *depth as usize, *seed)?,
                Check::Bounds => verify::verify_corollary_bounds(&datum()?, *dim_bound, *seed)?,
                Check::Natural => {
                    let (f, r) = ty()?;
                    verify::verify_natural_module_regularity(f, r, *samples, *seed)?
                }
                Check::Thm12 => {
                    verify::verify_theorem_12(&datum()?, *dim_bound, *depth as usize, *samples, *seed)?
                }
            };
            if cli.json {
                let mut value = serde_json::to_value(&report).expect("serializable");
                value["banner"] = json!(VALIDITY_BANNER);
                emit_json(out, &value)?;
            } else {
                write!(out, "{report}").map_err(io)?;
                writeln!(out, "{VALIDITY_BANNER}").map_err(io)?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Info { group } => {
            let datum = datum_for(group)?;
            let fundamentals: Vec<serde_json::Value> = (0..datum.rank())
                .map(|i| {
                    let w = datum.fundamental(i);
                    json!({
                        "weight": w.to_string(),
                        "dim": datum.weyl_dimension(&w).map(|d| d.to_string()).unwrap_or_default(),
                        "minuscule": datum.is_minuscule(&w),
                    })
                })
                .collect();
            let info = json!({
                "group": datum.group_type().to_string(),
                "rank": datum.rank(),
                "cartan": datum.cartan(),
                "positive_roots": datum.positive_roots().len(),
                "weyl_group_order": datum.weyl_group_order().to_string(),
                "e": datum.e_constant(),
                "highest_root": datum.highest_root().to_string(),
                "highest_short_root": datum.highest_short_root().to_string(),
                "rho": datum.rho().to_string(),
                "fundamentals": fundamentals,
                "banner": VALIDITY_BANNER,
            });
            if cli.json {
                emit_json(out, &info)?;
            } else {
                writeln!(out, "{} (rank {})", datum.group_type(), datum.rank()).map_err(io)?;
                writeln!(out, "cartan: {:?}", datum.cartan()).map_err(io)?;
                writeln!(out, "positive roots: {}", datum.positive_roots().len()).map_err(io)?;
                writeln!(out, "|W|: {}", datum.weyl_group_order()).map_err(io)?;
                writeln!(out, "e(G): {}", datum.e_constant()).map_err(io)?;
                writeln!(out, "highest root: {}", datum.highest_root()).map_err(io)?;
                writeln!(out, "highest short root: {}", datum.highest_short_root()).map_err(io)?;
                writeln!(out, "rho: {}", datum.rho()).map_err(io)?;
                for f in &fundamentals {
                    writeln!(
                        out,
                        "fundamental {}: dim {}{}",
                        f["weight"].as_str().unwrap_or(""),
                        f["dim"].as_str().unwrap_or(""),
                        if f["minuscule"] == json!(true) { ", minuscule" } else { "" }
                    )
                    .map_err(io)?;
                }
                writeln!(out, "{VALIDITY_BANNER}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_spectrum_text(out: &mut dyn Write, s: &TorusElement, sp: &Spectrum) -> Result<()> {
    if let Some(l) = s.label() {
        writeln!(out, "# element {l}").map_err(io)?;
    }
    for (v, m) in sp.entries() {
        writeln!(out, "{v} {m}").map_err(io)?;
    }
    let c = sp.classify();
    let heavy = c
        .heavy_value
        .as_ref()
        .map_or(String::new(), |v| format!(", heavy value {v}"));
    writeln!(
        out,
        "classification: {}{heavy}, max multiplicity {}, total {}",
        c.kind,
        c.max_multiplicity,
        sp.total()
    )
    .map_err(io)?;
    if let Some(note) = s.torsion_note() {
        writeln!(out, "note: element {note}").map_err(io)?;
    }
    writeln!(out, "{VALIDITY_BANNER}").map_err(io)
}

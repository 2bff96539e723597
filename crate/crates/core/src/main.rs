use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use toriclg::compactification::{infinity_fiber_report, verify_duality};
use toriclg::error::{Error, Result};
use toriclg::fit::{family_points, fit, FamilyVariable};
use toriclg::laurent::{standard_polynomial, ModelSpec};
use toriclg::period::{check_period_condition, default_order};
use toriclg::sweep::{self, SweepRange};

/// Relative `--out` paths are resolved against this directory when it is set.
const OUT_DIR_ENV: &str = "TORICLG_OUT_DIR";

#[derive(Parser)]
#[command(name = "toriclg", version, about = "Toric Landau-Ginzburg models of Fano complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the standard Laurent polynomial of a model.
    Model {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run one verification; exits 1 when it fails.
    Check {
        which: CheckKind,
        #[command(flatten)]
        spec: SpecArgs,
        /// Highest power for the period check (default 3ι).
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fiber over infinity: component count and boundary triangulation.
    /// `--format csv` exports the edge list of the triangulation.
    Compactify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Table of component counts over a range of models (CSV by default).
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_ambient: u32,
        #[arg(long, default_value_t = 1)]
        min_torus_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_torus_dim: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Also check the period condition up to order 3ι for every row.
        #[arg(long)]
        periods: bool,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Interpolate k along a family with fixed degrees. Output is conjectural.
    Fit {
        /// Sweep table in CSV format.
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        table: Option<PathBuf>,
        /// Data points `x:k`, instead of a table.
        #[arg(long, num_args = 1..)]
        points: Vec<String>,
        /// Degrees of the family (empty for projective spaces).
        #[arg(long, num_args = 0..)]
        degrees: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Vary::Iota)]
        vary: Vary,
        /// Degree of the interpolating polynomial (default: least confirmed degree).
        #[arg(long)]
        fit_degree: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Hypersurface degrees d_1 … d_k (omit for projective space).
    #[arg(long, num_args = 0..)]
    degrees: Vec<u32>,
    /// Dimension N of the ambient projective space.
    #[arg(long)]
    ambient: u32,
}

impl SpecArgs {
    fn spec(&self) -> Result<ModelSpec> {
        ModelSpec::new(self.degrees.clone(), self.ambient)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Reflexive,
    Duality,
    Period,
}

#[derive(Clone, Copy, ValueEnum)]
enum Vary {
    Iota,
    N,
    Ambient,
}

enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(output: &OutputArgs, content: &str) -> Result<()> {
    match &output.out {
        Some(path) => {
            let path = resolve(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, content)?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> Error {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Error::InvalidArgument(format!("{command} does not support --format {name}"))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Model { spec, output } => {
            let spec = spec.spec()?;
            let f = standard_polynomial(&spec);
            let text = match output.format.unwrap_or(Format::Text) {
                Format::Text => format!("{}\n", f.render(&spec.layout().names())),
                Format::Json => json_text(&json!({
                    "spec": spec.to_json(),
                    "variables": spec.layout().names(),
                    "polynomial": f.to_json(),
                })),
                other => return Err(unsupported(other, "model")),
            };
            emit(&output, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Check {
            which,
            spec,
            order,
            output,
        } => {
            let spec = spec.spec()?;
            let format = output.format.unwrap_or(Format::Text);
            if format == Format::Csv {
                return Err(unsupported(format, "check"));
            }
            let (ok, text, value) = match which {
                CheckKind::Reflexive => {
                    let ok = toriclg::compactification::delta(&spec)?.is_reflexive()?;
                    (ok, format!("{spec} reflexive: {ok}\n"), json!({"spec": spec.to_json(), "check": "reflexive", "pass": ok}))
                }
                CheckKind::Duality => {
                    let ok = verify_duality(&spec)?;
                    (
                        ok,
                        format!("{spec} hull of matrix rows equals polar dual: {ok}\n"),
                        json!({"spec": spec.to_json(), "check": "duality", "pass": ok}),
                    )
                }
                CheckKind::Period => {
                    let order = order.unwrap_or_else(|| default_order(&spec));
                    let r = check_period_condition(&spec, order);
                    let text = format!(
                        "{spec} period up to order {order}: matches={}\n  constant terms: {}\n  closed form:    {}\n",
                        r.matches,
                        r.constant_terms.to_strings().join(" "),
                        r.closed_form.to_strings().join(" "),
                    );
                    (r.matches, text, r.to_json())
                }
            };
            let text = if format == Format::Json { json_text(&value) } else { text };
            emit(&output, &text)?;
            Ok(ok.into())
        }
        Command::Compactify { spec, output } => {
            let spec = spec.spec()?;
            let r = infinity_fiber_report(&spec)?;
            let text = match output.format.unwrap_or(Format::Text) {
                Format::Json => json_text(&r.to_json()),
                Format::Csv => {
                    let mut s = String::from("source,target\n");
                    for (a, b) in r.edges() {
                        s.push_str(&format!("{a},{b}\n"));
                    }
                    s
                }
                Format::Text => {
                    let n = spec.torus_dim();
                    let type_i = r.facet_types.values().filter(|t| t.as_str() == "I").count();
                    format!(
                        "{spec}: k = {}\n  f-vector {:?}, euler {}\n  triangulated S^{}: {}\n  unimodular: {}\n  pseudomanifold: {}, connected: {}, primitive vertices: {}\n  boundary divisors: {} of type I, {} of type II\n  method: {}\n  certified: {}\n",
                        r.k,
                        r.f_vector,
                        r.euler_characteristic,
                        n - 1,
                        r.is_sphere(),
                        r.all_simplices_unimodular,
                        r.is_pseudomanifold,
                        r.is_connected,
                        r.all_vertices_primitive,
                        type_i,
                        r.facet_types.len() - type_i,
                        r.triangulation.method.as_str(),
                        r.certified(),
                    )
                }
            };
            emit(&output, &text)?;
            Ok(r.certified().into())
        }
        Command::Sweep {
            max_ambient,
            min_torus_dim,
            max_torus_dim,
            max_degree,
            periods,
            jobs,
            output,
        } => {
            let range = SweepRange::new(max_ambient, min_torus_dim, max_torus_dim, max_degree)?;
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rows = sweep::sweep(&range, periods, jobs)?;
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut buf = Vec::new();
                    sweep::write_csv(&rows, &mut buf)?;
                    String::from_utf8(buf).expect("utf-8 csv")
                }
                Format::Json => json_text(&sweep::to_json(&rows)),
                Format::Text => {
                    let mut s = format!("{:<14} {:>3} {:>4} {:>3} {:>8}\n", "model", "N", "iota", "n", "k");
                    for r in &rows {
                        let spec = ModelSpec::new(r.degrees.clone(), r.ambient)?;
                        let k = r.k.map_or("-".to_string(), |k| k.to_string());
                        s.push_str(&format!("{:<14} {:>3} {:>4} {:>3} {:>8}\n", spec.label(), r.ambient, r.iota, r.n, k));
                    }
                    s
                }
            };
            emit(&output, &text)?;
            // a requested period check that fails is a failed check
            Ok((!periods || rows.iter().all(|r| r.period_checked)).into())
        }
        Command::Fit {
            table,
            points,
            degrees,
            vary,
            fit_degree,
            output,
        } => {
            let variable = match vary {
                Vary::Iota => FamilyVariable::Iota,
                Vary::N => FamilyVariable::TorusDim,
                Vary::Ambient => FamilyVariable::Ambient,
            };
            let data = match table {
                Some(path) => {
                    let rows = sweep::read_csv(fs::File::open(path)?)?;
                    family_points(&rows, &degrees, variable)
                }
                None => {
                    let mut data = points
                        .iter()
                        .map(|p| {
                            let (x, k) = p
                                .split_once(':')
                                .ok_or_else(|| Error::InvalidArgument(format!("point {p:?} is not x:k")))?;
                            let bad = || Error::InvalidArgument(format!("point {p:?} is not x:k"));
                            Ok((x.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    data.sort();
                    data
                }
            };
            let report = fit(&data, fit_degree, variable)?;
            let text = match output.format.unwrap_or(Format::Text) {
                Format::Text => report.to_string(),
                Format::Json => json_text(&report.to_json()),
                other => return Err(unsupported(other, "fit")),
            };
            emit(&output, &text)?;
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

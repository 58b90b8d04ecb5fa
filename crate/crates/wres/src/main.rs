//! Command-line interface to the weighted-blowup resolution library.
//!
//! Every pipeline stage is a subcommand: `invariant` and `center` inspect a
//! single point, `blowup` prints the charts of one weighted blowup,
//! `resolve` and `principalize` run the full iteration, and
//! `check-admissible` runs the admissibility certificate.  Output is plain
//! text, JSON (rationals as `"p/q"` strings), or Graphviz DOT, and is
//! byte-identical for a fixed input and configuration.  Exit codes: 0 on
//! success, 2 when a precision or step budget was exhausted, 1 on input
//! errors.

use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wres::algebra::{rat_from_str, rat_to_string, Rat, Ring};
use wres::blowup::{blowup_charts, Blowup};
use wres::ideal::Ideal;
use wres::invariant::{
    center_from_invariant, invariant_at, is_admissible, Center, ContactFlag, Invariant,
};
use wres::report;
use wres::resolve::{resolve, Config, Mode, ResolutionNode, Status};
use wres::{Error, Result};

#[derive(Parser)]
#[command(
    name = "wres",
    about = "Resolution of singularities by stack-theoretic weighted blowups",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant and maximal-contact flag at a point.
    Invariant {
        #[command(flatten)]
        input: InputArgs,
        /// Point to inspect, comma-separated rationals (default: origin).
        #[arg(long, value_name = "COORDS")]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Center attached to the invariant: exponent, reduced, and cocharacter
    /// forms.
    Center {
        #[command(flatten)]
        input: InputArgs,
        /// Point to inspect, comma-separated rationals (default: origin).
        #[arg(long, value_name = "COORDS")]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Charts, substitutions, and group actions of one weighted blowup.
    Blowup {
        #[command(flatten)]
        input: InputArgs,
        /// Point to blow up, comma-separated rationals (default: origin).
        #[arg(long, value_name = "COORDS")]
        point: Option<String>,
        /// Root the exceptional divisor to this index.
        #[arg(long, value_name = "C", default_value_t = 1)]
        root_factor: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the admissibility certificate for a center against the ideal.
    CheckAdmissible {
        #[command(flatten)]
        input: InputArgs,
        /// Point at which to derive the center (default: origin).
        #[arg(long, value_name = "COORDS")]
        point: Option<String>,
        /// Explicit center `param:exp;param:exp` (e.g. `x:5;y:15/2`)
        /// instead of the one derived from the invariant.
        #[arg(long, value_name = "CENTER")]
        center: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Iterate blowups until every chart is smooth (or principal, with
    /// `--mode principalize`).
    Resolve {
        #[command(flatten)]
        input: InputArgs,
        /// `embed` (proper transforms of a hypersurface) or `principalize`
        /// (weak transforms of the full ideal).
        #[arg(long, value_name = "MODE", default_value = "embed", value_parser = parse_mode)]
        mode: Mode,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Shorthand for `resolve --mode principalize`.
    Principalize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Comma-separated ambient variable names (e.g. `x,y`).
    #[arg(long, value_name = "VARS")]
    ring: String,
    /// Ideal generators, separated by `;`.
    #[arg(long, value_name = "GENS")]
    ideal: String,
    /// Work in the jet ring truncated at this order instead of exactly.
    #[arg(long, value_name = "N")]
    truncate: Option<u32>,
}

#[derive(Args)]
struct RunArgs {
    /// Maximum tree depth before reporting budget-exceeded leaves.
    #[arg(long, value_name = "K", default_value_t = 64)]
    max_steps: u32,
    /// Extra candidate points, `;`-separated (e.g. `7,5;0,-1`).
    #[arg(long, value_name = "POINTS")]
    hints: Option<String>,
    /// Root the exceptional divisors to this index.
    #[arg(long, value_name = "C", default_value_t = 1)]
    root_factor: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    Mode::from_str(s).map_err(|e| e.to_string())
}

impl InputArgs {
    fn ring(&self) -> Result<Arc<Ring>> {
        let vars: Vec<String> = self
            .ring
            .split(',')
            .map(|v| v.trim().to_string())
            .collect();
        Ring::with_truncation(vars, self.truncate)
    }

    /// Ring and ideal as given (jet ring when `--truncate` is set).
    fn build(&self) -> Result<(Arc<Ring>, Ideal)> {
        let ring = self.ring()?;
        let ideal = Ideal::parse(&ring, &self.ideal)?;
        Ok((ring, ideal))
    }

    /// Exact-ring parse for the resolve driver, which applies `--truncate`
    /// itself via the configuration.
    fn build_exact(&self) -> Result<Ideal> {
        let vars: Vec<String> = self
            .ring
            .split(',')
            .map(|v| v.trim().to_string())
            .collect();
        let ring = Ring::with_truncation(vars, None)?;
        Ideal::parse(&ring, &self.ideal)
    }
}

fn parse_point(text: &str, ring: &Arc<Ring>) -> Result<Vec<Rat>> {
    let coords = text
        .split(',')
        .map(|c| rat_from_str(c.trim()))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != ring.nvars() {
        return Err(Error::Input(format!(
            "point `{text}` has {} coordinates but the ring has {} variables",
            coords.len(),
            ring.nvars()
        )));
    }
    Ok(coords)
}

fn parse_hints(text: &str, ring: &Arc<Ring>) -> Result<Vec<Vec<Rat>>> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_point(p, ring))
        .collect()
}

/// `x:5;y:15/2` — parameter/exponent pairs for an explicit center.
fn parse_center(text: &str, ring: &Arc<Ring>) -> Result<Center> {
    let mut parts = Vec::new();
    for entry in text.split(';') {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (param, exp) = entry.split_once(':').ok_or_else(|| {
            Error::Input(format!(
                "center entry `{entry}` must look like `param:exponent`"
            ))
        })?;
        let p = wres::algebra::Poly::parse(ring, param.trim())?;
        let a = rat_from_str(exp.trim())?;
        parts.push((p, a));
    }
    if parts.is_empty() {
        return Err(Error::Input("empty center description".into()));
    }
    Center::from_params(ring, parts)
}

fn point_or_origin(point: &Option<String>, ring: &Arc<Ring>) -> Result<Vec<Rat>> {
    match point {
        Some(text) => parse_point(text, ring),
        None => Ok(vec![Rat::from_integer(0.into()); ring.nvars()]),
    }
}

fn reject_dot(format: Format, what: &str) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::Input(format!(
            "--format dot only applies to resolution trees, not `{what}`"
        )));
    }
    Ok(())
}

fn flag_json(flag: &ContactFlag) -> serde_json::Value {
    serde_json::json!({
        "params": flag.params().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "pivots": flag.pivots(),
    })
}

fn show_invariant(inv: &Invariant, flag: &ContactFlag, format: Format) -> Result<String> {
    reject_dot(format, "invariant")?;
    Ok(match format {
        Format::Text => {
            let params: Vec<String> = flag.params().iter().map(|p| p.to_string()).collect();
            format!("inv = {inv}\nflag: {}\n", params.join(", "))
        }
        Format::Json => {
            let doc = serde_json::json!({
                "invariant": inv.entries().iter().map(rat_to_string).collect::<Vec<_>>(),
                "flag": flag_json(flag),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Format::Dot => unreachable!(),
    })
}

fn derive_center(ideal: &Ideal, point: &[Rat]) -> Result<(Invariant, Center)> {
    let (inv, flag) = invariant_at(ideal, point)?;
    let center = center_from_invariant(&inv, &flag)?;
    Ok((inv, center))
}

fn show_center(inv: &Invariant, center: &Center, format: Format) -> Result<String> {
    reject_dot(format, "center")?;
    let reduced = center.reduce()?;
    Ok(match format {
        Format::Text => {
            let weights: Vec<String> = reduced.weights().iter().map(u64::to_string).collect();
            let cochar: Vec<String> = report::cocharacter(&reduced)
                .iter()
                .map(u64::to_string)
                .collect();
            format!(
                "inv = {inv}\ncenter {center}\nreduced center {}\nweights ({}), l = {}\ncocharacter ({})\n",
                report::fractional_center(&reduced),
                weights.join(", "),
                rat_to_string(reduced.ell()),
                cochar.join(", ")
            )
        }
        Format::Json => {
            let doc = serde_json::json!({
                "invariant": inv.entries().iter().map(rat_to_string).collect::<Vec<_>>(),
                "center": {
                    "params": reduced.flag().params().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "exponents": reduced.exponents().iter().map(rat_to_string).collect::<Vec<_>>(),
                    "weights": reduced.weights(),
                    "l": rat_to_string(reduced.ell()),
                },
                "cocharacter": report::cocharacter(&reduced),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Format::Dot => unreachable!(),
    })
}

fn show_blowup(blowup: &Blowup, format: Format) -> Result<String> {
    reject_dot(format, "blowup")?;
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "center {}\n",
                report::fractional_center(blowup.center())
            );
            for (i, chart) in blowup.charts().iter().enumerate() {
                let weights: Vec<String> =
                    chart.action_weights().iter().map(u64::to_string).collect();
                out.push_str(&format!(
                    "chart {i} [exceptional {}, group mu_{}, action ({})]\n  substitution: {}\n",
                    chart.exceptional_name(),
                    chart.group_order(),
                    weights.join(", "),
                    chart.substitution()
                ));
            }
            out
        }
        Format::Json => {
            let charts: Vec<serde_json::Value> = blowup
                .charts()
                .iter()
                .map(|chart| {
                    serde_json::json!({
                        "substitution": chart.substitution().to_string(),
                        "exceptional": chart.exceptional_name(),
                        "group_order": chart.group_order(),
                        "action_weights": chart.action_weights(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "center": report::fractional_center(blowup.center()),
                "root_factor": blowup.root_factor(),
                "charts": charts,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializes"))
        }
        Format::Dot => unreachable!(),
    })
}

fn run_tree(input: &InputArgs, mode: Mode, run: &RunArgs) -> Result<(String, ExitCode)> {
    let ideal = input.build_exact()?;
    let hints = match &run.hints {
        Some(text) => parse_hints(text, ideal.ring())?,
        None => Vec::new(),
    };
    let cfg = Config {
        mode,
        truncation: input.truncate,
        max_steps: run.max_steps,
        hints,
        root_factor: run.root_factor,
    };
    let tree = resolve(&ideal, &cfg)?;
    let text = match run.format {
        Format::Text => report::render_text(mode, &tree),
        Format::Json => report::render_json(mode, &tree),
        Format::Dot => report::render_dot(&tree),
    };
    let code = if budget_hit(&tree) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    };
    Ok((text, code))
}

fn budget_hit(node: &ResolutionNode) -> bool {
    node.status() == Status::BudgetExceeded
        || node.children().iter().any(|e| budget_hit(e.node()))
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    match &cli.cmd {
        Cmd::Invariant {
            input,
            point,
            format,
        } => {
            let (ring, ideal) = input.build()?;
            let p = point_or_origin(point, &ring)?;
            let (inv, flag) = invariant_at(&ideal, &p)?;
            Ok((show_invariant(&inv, &flag, *format)?, ExitCode::SUCCESS))
        }
        Cmd::Center {
            input,
            point,
            format,
        } => {
            let (ring, ideal) = input.build()?;
            let p = point_or_origin(point, &ring)?;
            let (inv, center) = derive_center(&ideal, &p)?;
            Ok((show_center(&inv, &center, *format)?, ExitCode::SUCCESS))
        }
        Cmd::Blowup {
            input,
            point,
            root_factor,
            format,
        } => {
            let (ring, ideal) = input.build()?;
            let p = point_or_origin(point, &ring)?;
            let (_, center) = derive_center(&ideal, &p)?;
            let blowup = blowup_charts(&center.reduce()?, *root_factor)?;
            Ok((show_blowup(&blowup, *format)?, ExitCode::SUCCESS))
        }
        Cmd::CheckAdmissible {
            input,
            point,
            center,
            format,
        } => {
            reject_dot(*format, "check-admissible")?;
            let (ring, ideal) = input.build()?;
            let c = match center {
                Some(text) => parse_center(text, &ring)?,
                None => {
                    let p = point_or_origin(point, &ring)?;
                    derive_center(&ideal, &p)?.1
                }
            };
            let verdict = match is_admissible(&c, &ideal) {
                Ok(v) => v.to_string(),
                Err(Error::Indeterminate(m)) => format!("indeterminate ({m})"),
                Err(e) => return Err(e),
            };
            let text = match format {
                Format::Text => format!("center {c}\nadmissible: {verdict}\n"),
                Format::Json => {
                    let doc = serde_json::json!({
                        "center": c.to_string(),
                        "admissible": verdict,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializes"))
                }
                Format::Dot => unreachable!(),
            };
            Ok((text, ExitCode::SUCCESS))
        }
        Cmd::Resolve { input, mode, run } => run_tree(input, *mode, run),
        Cmd::Principalize { input, run } => run_tree(input, Mode::Principalize, run),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems are input errors (exit 1); --help and
            // --version are successes.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) | Error::TruncationTooSmall { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use bctdcs::examples::{blackwell_sweep_hull, dof, finite_field_channel, finite_field_region, FiniteFieldSpec};
use bctdcs::io::{converse_csv, polygon_csv, regions_csv, support_csv, ChannelFile};
use bctdcs::outerbound::{converse_lambdas, default_u_size, verify_converse};
use bctdcs::regions::{capacity_polygon, primed_regions, proposition_regions, sweep_lambdas, InnerSupport, SupportCurve};
use bctdcs::{canonicalize, ChannelSpec64, OptConfig64};

#[derive(Parser)]
#[command(name = "bctdcs", version, about = "Capacity regions of broadcast channels with two deterministic state components")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ChannelArgs {
    /// JSON channel file with input_size, f1, f2 and optionally p1, p2.
    #[arg(long)]
    channel: PathBuf,
    /// Overrides p1 from the channel file.
    #[arg(long)]
    p1: Option<f64>,
    /// Overrides p2 from the channel file.
    #[arg(long)]
    p2: Option<f64>,
    /// Lattice denominator of the input-law search (default depends on |X|).
    #[arg(long)]
    grid: Option<usize>,
}

impl ChannelArgs {
    fn load(&self) -> anyhow::Result<ChannelSpec64> {
        let file = ChannelFile::read(&self.channel)?;
        Ok(file.spec(self.p1, self.p2)?)
    }

    fn config(&self, spec: &ChannelSpec64) -> anyhow::Result<OptConfig64> {
        let mut cfg = OptConfig64::for_dimension(spec.input_size());
        if let Some(m) = self.grid {
            cfg = cfg.with_grid(m);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Capacity region polygon.
    Region {
        #[command(flatten)]
        ch: ChannelArgs,
        /// Slope samples on each side of each case threshold.
        #[arg(long, default_value_t = 64)]
        lambda_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sampled support function max R1 + lambda R2.
    Support {
        #[command(flatten)]
        ch: ChannelArgs,
        #[arg(long, default_value_t = 64)]
        lambda_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares inner and outer support functions; exits 1 if the gap exceeds --tol.
    Verify {
        #[command(flatten)]
        ch: ChannelArgs,
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
        /// Auxiliary alphabet size (default |X| + 1).
        #[arg(long)]
        u_size: Option<usize>,
        /// Slope samples per case interval.
        #[arg(long, default_value_t = 8)]
        lambda_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The four component regions and their primed counterparts.
    Regions4 {
        #[command(flatten)]
        ch: ChannelArgs,
        #[arg(long, default_value_t = 64)]
        lambda_count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form Blackwell region over an (alpha0, alpha1) grid.
    ExampleBlackwell {
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
        /// Grid points per alpha axis.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form finite-field region.
    ExampleFf {
        /// Field size (prime).
        #[arg(long, default_value_t = 2)]
        k: u64,
        /// Channel matrix h11,h12,h21,h22.
        #[arg(long, value_delimiter = ',', num_args = 4, default_values_t = [1, 1, 1, 0])]
        h: Vec<u64>,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
        /// Divide rates by log2 K.
        #[arg(long)]
        normalize: bool,
        /// Compute the region numerically instead of from the closed form.
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degrees of freedom p1 + (1 - p2) of the fading channel.
    Dof {
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
    },
}

enum Outcome {
    Done,
    ConverseFailed,
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn canonical(spec: &ChannelSpec64) -> (ChannelSpec64, Option<(f64, f64)>) {
    let (c, swapped) = canonicalize(spec);
    if swapped {
        eprintln!("note: receivers swapped to p1 >= p2 (p1={}, p2={})", c.p1(), c.p2());
    }
    let p = Some((c.p1(), c.p2()));
    (c, p)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Region { ch, lambda_count, out } => {
            let spec = ch.load()?;
            let cfg = ch.config(&spec)?;
            let poly = capacity_polygon(&spec, lambda_count, &cfg)?;
            emit(&out, &polygon_csv(&poly, Some((spec.p1(), spec.p2()))))?;
        }
        Command::Support { ch, lambda_count, out } => {
            if lambda_count == 0 {
                bail!("--lambda-count must be positive");
            }
            let (spec, p) = canonical(&ch.load()?);
            let cfg = ch.config(&spec)?;
            let inner = InnerSupport::new(&spec, &cfg)?;
            let lambdas = sweep_lambdas(inner.thresholds(), lambda_count);
            let curve = SupportCurve::sample_with(&inner, &lambdas)?;
            emit(&out, &support_csv(&curve, p))?;
        }
        Command::Verify {
            ch,
            tol,
            u_size,
            lambda_count,
            out,
        } => {
            if lambda_count == 0 {
                bail!("--lambda-count must be positive");
            }
            let (spec, p) = canonical(&ch.load()?);
            let cfg = ch.config(&spec)?;
            let u = u_size.unwrap_or_else(|| default_u_size(spec.input_size()));
            let lambdas = converse_lambdas(&spec, lambda_count);
            let report = verify_converse(&spec, &lambdas, u, tol, &cfg)?;
            emit(&out, &converse_csv(&report, p))?;
            eprintln!(
                "max gap {:.3e} bits, tolerance {:.3e}: {}",
                report.max_gap,
                report.tolerance,
                if report.pass { "pass" } else { "FAIL" }
            );
            if !report.pass {
                return Ok(Outcome::ConverseFailed);
            }
        }
        Command::Regions4 { ch, lambda_count, out } => {
            let (spec, p) = canonical(&ch.load()?);
            let cfg = ch.config(&spec)?;
            let props = proposition_regions(&spec, lambda_count, &cfg)?;
            let primed = primed_regions(&spec, cfg.grid_denominator)?;
            let all: Vec<_> = props.regions.iter().chain(primed.iter()).cloned().collect();
            emit(&out, &regions_csv(&all, p))?;
        }
        Command::ExampleBlackwell { p1, p2, steps, out } => {
            let poly = blackwell_sweep_hull(p1, p2, steps)?;
            emit(&out, &polygon_csv(&poly, Some((p1, p2))))?;
        }
        Command::ExampleFf {
            k,
            h,
            p1,
            p2,
            normalize,
            numeric,
            out,
        } => {
            let ff = FiniteFieldSpec::new(k, [[h[0], h[1]], [h[2], h[3]]])?;
            let poly = if numeric {
                let spec = finite_field_channel(&ff, p1, p2)?;
                capacity_polygon(&spec, 16, &OptConfig64::for_dimension(spec.input_size()))?
            } else {
                finite_field_region(&ff, p1, p2)?
            };
            let poly = if normalize { poly.scaled(1.0 / ff.symbol_bits::<f64>()) } else { poly };
            emit(&out, &polygon_csv(&poly, Some((p1, p2))))?;
        }
        Command::Dof { p1, p2 } => {
            println!("{}", bctdcs::io::fmt_num(dof(p1, p2)?));
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::ConverseFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

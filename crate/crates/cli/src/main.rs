use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use starconf::hilbert::{general_fat_hvector, h_vector};
use starconf::json as js;
use starconf_cli::construct;
use starconf_cli::explore::{run_campaign, CampaignConfig};
use starconf_cli::range::IntRange;
use starconf_cli::seeds::{DEFAULT_SEED, SEED_ENV};
use starconf_cli::suites::{run_suite, SuiteConfig};
use starconf_cli::{svg, CliError, CliResult};

#[derive(Parser)]
#[command(name = "starconf", version, about = "Star configurations, contact stars and their Hilbert functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    ContactStar,
    HadamardStar,
    Octagon,
    LinePower,
}

#[derive(clap::Args)]
struct Common {
    /// Seed for every random choice
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a configuration and print it as JSON
    Construct {
        kind: Kind,
        /// Ambient dimension (contact-star, line-power)
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Tangency parameters: `t` or `a:b`, comma separated; `;` separates stars
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Number of random lines when no parameters are given
        #[arg(long)]
        r: Option<usize>,
        /// Linear equations of the line, `;` separated (hadamard-star)
        #[arg(long, allow_hyphen_values = true)]
        line: Option<String>,
        /// Points of X: an integer t for the point [1:t:...] of the line, or a:b:c
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Points of Y, as for --x
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Two points spanning the line, `;` separated (line-power)
        #[arg(long, allow_hyphen_values = true)]
        through: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// h-vector and Hilbert function of a point set or fat scheme
    Hvector {
        /// JSON file with "n", "points" and optional "multiplicities" (stdin if absent)
        input: Option<PathBuf>,
        /// Multiplicities of general fat points, comma separated
        #[arg(long)]
        fat: Option<String>,
        /// Ambient dimension for --fat
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run a randomized verification suite
    Verify {
        /// thm2.1, thm3.1b, thm3.1d, thm3.1e, lem3.6, thm4.2, prop4.4, thm4.5,
        /// lem4.1, prop5.1, cor5.2, prop5.3, brianchon or prop6.3
        id: String,
        /// Seeds per parameter value (grid suites) or number of instances
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        n: Option<IntRange>,
        #[arg(long)]
        r: Option<IntRange>,
        #[arg(long)]
        s: Option<IntRange>,
        #[arg(long)]
        t: Option<IntRange>,
        /// Multiplicity range (prop4.4)
        #[arg(long)]
        m: Option<IntRange>,
        /// Index of the line of Y whose points form Z (thm3.1d)
        #[arg(long)]
        line: Option<usize>,
        /// Record wall times (makes the report non-reproducible)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a conjecture campaign (conj4.7 or conj6.1)
    Explore {
        id: String,
        #[arg(long)]
        trials: Option<usize>,
        /// conj4.7: number of stars; conj6.1: lines of the second star
        #[arg(long)]
        s: Option<IntRange>,
        /// conj4.7: fixed multiplicities, one value for all or one per star
        #[arg(long)]
        mults: Option<String>,
        /// conj4.7: multiplicity range sampled when --mults is absent
        #[arg(long)]
        m: Option<IntRange>,
        /// conj6.1: ambient dimension
        #[arg(long)]
        n: Option<IntRange>,
        /// conj6.1: lines of the first star
        #[arg(long)]
        r: Option<IntRange>,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Render a plane configuration JSON as SVG
    Svg {
        /// Configuration JSON (stdin if absent)
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: Option<&PathBuf>) -> CliResult<String> {
    match path {
        Some(p) => Ok(fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(v: &impl serde::Serialize, out: Option<&PathBuf>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(&text, out)
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref()
        .ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Construct {
            kind,
            n,
            params,
            r,
            line,
            x,
            y,
            through,
            common,
        } => {
            let v = match kind {
                Kind::ContactStar => construct::contact_stars(n, params.as_deref(), r, common.seed)?,
                Kind::HadamardStar => construct::hadamard_star(require(&line, "line")?, require(&x, "x")?, y.as_deref())?,
                Kind::Octagon => construct::octagon(params.as_deref(), common.seed)?,
                Kind::LinePower => construct::line_power(n, require(&through, "through")?)?,
            };
            emit_json(&v, common.out.as_ref())?;
        }
        Command::Hvector { input, fat, n, common } => {
            let h = match fat {
                Some(f) => {
                    let mults = f
                        .split(',')
                        .map(|m| m.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| CliError::Usage(format!("bad multiplicities {f:?}")))?;
                    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                    general_fat_hvector(&mut rng, n, &mults)?
                }
                None => {
                    let v: Value = serde_json::from_str(&read_input(input.as_ref())?)?;
                    h_vector(&js::parse_fat_scheme(&v)?)?
                }
            };
            emit_json(&js::hvector(&h), common.out.as_ref())?;
        }
        Command::Verify {
            id,
            trials,
            n,
            r,
            s,
            t,
            m,
            line,
            timings,
            common,
        } => {
            let cfg = SuiteConfig {
                seed: common.seed,
                trials,
                n,
                r,
                s,
                t,
                m,
                line,
                timings,
            };
            let report = run_suite(&id, &cfg)?;
            emit_json(&report, common.out.as_ref())?;
            eprintln!(
                "{} {}: {}/{} trials passed, {}/{} negative controls rejected",
                report.id,
                if report.verdict.is_pass() { "PASS" } else { "FAIL" },
                report.passed,
                report.trials,
                report.negative_controls_rejected,
                report.negative_controls
            );
            if !report.verdict.is_pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Explore {
            id,
            trials,
            s,
            mults,
            m,
            n,
            r,
            timings,
            common,
        } => {
            let mults = mults
                .map(|f| {
                    f.split(',')
                        .map(|m| m.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| CliError::Usage(format!("bad multiplicities {f:?}")))
                })
                .transpose()?;
            let cfg = if id == "conj4.7" {
                CampaignConfig {
                    seed: common.seed,
                    trials,
                    s_count: s,
                    mults,
                    m,
                    timings,
                    ..Default::default()
                }
            } else {
                CampaignConfig {
                    seed: common.seed,
                    trials,
                    n,
                    r,
                    s,
                    timings,
                    ..Default::default()
                }
            };
            let report = run_campaign(&id, &cfg)?;
            emit_json(&report, common.out.as_ref())?;
            eprintln!(
                "{}: {} of {} trials agree, {} counterexamples",
                report.id,
                report.agreements,
                report.trials,
                report.counterexamples.len()
            );
        }
        Command::Svg { input, out } => {
            let v: Value = serde_json::from_str(&read_input(input.as_ref())?)?;
            emit(&svg::render(&v)?, out.as_ref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

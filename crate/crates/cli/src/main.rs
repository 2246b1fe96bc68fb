use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lightsout::harness::{self, AwMethod, RunConfig, Suite, SuiteParams};
use lightsout::{Error, Exec, Game, GraphSpec, StateCap};

const EXIT_USAGE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "lightsout", version, about = "Lights Out games on graphs over Z_m")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Search cap as a power of two; defaults to LIGHTSOUT_STATE_CAP or 24.
    #[arg(long = "state-cap", value_name = "BITS")]
    state_cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameArg {
    Nbd,
    Group,
}

impl From<GameArg> for Game {
    fn from(g: GameArg) -> Game {
        match g {
            GameArg::Nbd => Game::Nbd,
            GameArg::Group => Game::Group,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Determinant,
    Exhaustive,
    ClosedForm,
}

impl From<MethodArg> for AwMethod {
    fn from(m: MethodArg) -> AwMethod {
        match m {
            MethodArg::Auto => AwMethod::Auto,
            MethodArg::Determinant => AwMethod::Determinant,
            MethodArg::Exhaustive => AwMethod::Exhaustive,
            MethodArg::ClosedForm => AwMethod::ClosedForm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a labeling can be cleared and print a witness.
    Solve {
        #[arg(long, value_enum)]
        game: GameArg,
        #[arg(long, value_name = "SPEC")]
        graph: GraphSpec,
        #[arg(long = "mod", value_name = "M")]
        m: u32,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        labeling: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether every labeling can be cleared.
    Aw {
        #[arg(long, value_enum)]
        game: GameArg,
        #[arg(long, value_name = "SPEC")]
        graph: GraphSpec,
        #[arg(long = "mod", value_name = "M")]
        m: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Also write the group-game winnable set (header line + hex bitset).
        #[arg(long, value_name = "PATH")]
        export_set: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_name = "SUITE")]
        suite: Suite,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_min: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        m_min: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        /// Bound on n+p for complete bipartite sweeps.
        #[arg(long)]
        sum_max: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Graph specs for the count suite, space separated.
        #[arg(long, num_args = 1.., value_name = "SPEC")]
        graphs: Vec<GraphSpec>,
        #[arg(long, num_args = 1.., value_name = "M")]
        moduli: Vec<u32>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the two games' always-winnability over small connected graphs.
    Census {
        #[arg(long, value_name = "K")]
        n_max: usize,
        /// Keep one graph per isomorphism class.
        #[arg(long)]
        dedup: bool,
        #[command(flatten)]
        common: Common,
    },
}

impl Common {
    fn cap(&self) -> anyhow::Result<StateCap> {
        Ok(match self.state_cap {
            Some(bits) => StateCap::from_bits(bits)?,
            None => StateCap::from_env()?,
        })
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes") + "\n"
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Solve { game, graph, m, labeling, common } => {
            if common.format == Format::Csv {
                bail!(Error::Precondition("solve only emits json".into()));
            }
            let out = harness::cmd_solve(game.into(), &graph, m, &labeling, common.cap()?)?;
            common.emit(&json_line(&out))?;
            Ok(0)
        }
        Command::Aw { game, graph, m, method, export_set, common } => {
            if common.format == Format::Csv {
                bail!(Error::Precondition("aw only emits json".into()));
            }
            let (out, set) = harness::cmd_aw(game.into(), &graph, m, method.into(), common.cap()?, common.exec())?;
            if let Some(path) = export_set {
                let Some(set) = set else {
                    bail!(Error::Precondition("no winnable set was computed to export".into()));
                };
                std::fs::write(&path, set.to_export_string())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            common.emit(&json_line(&out))?;
            Ok(0)
        }
        Command::Verify {
            suite,
            n_min,
            n_max,
            k_min,
            k_max,
            m_min,
            m_max,
            sum_max,
            trials,
            seed,
            graphs,
            moduli,
            timing,
            common,
        } => {
            let params = SuiteParams { n_min, n_max, k_min, k_max, m_min, m_max, sum_max, trials, seed, graphs, moduli };
            let cfg = RunConfig { cap: common.cap()?, exec: common.exec(), timing };
            let report = harness::run_suite(suite, &params, &cfg)?;
            common.emit(&match common.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            })?;
            eprintln!(
                "{}: {} passed, {} failed, {} skipped",
                report.suite, report.passed, report.failed, report.skipped
            );
            Ok(if report.pass { 0 } else { EXIT_VERIFY })
        }
        Command::Census { n_max, dedup, common } => {
            let census = harness::run_census(n_max, dedup, common.cap()?, common.exec())?;
            common.emit(&match common.format {
                Format::Json => census.to_json(),
                Format::Csv => census.to_csv(),
            })?;
            eprintln!("{}", census.summary());
            Ok(if census.violations == 0 { 0 } else { EXIT_VERIFY })
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::StateCapExceeded { .. }) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

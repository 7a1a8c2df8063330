use clap::{Parser, Subcommand, ValueEnum};
use primlocal::{Boundary, GenSpec};
use primlocal_cli::config::{RunConfig, Stage, VerifyMode};
use primlocal_cli::error::{CliError, CliResult};
use primlocal_cli::pipeline::run_pipeline;
use primlocal_cli::session::Session;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "primlocal", version, about = "Prim's algorithm, percolation profiles and local-limit checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a weighted graph file
    Gen(Args),
    /// Write the Prim trace from the root
    Prim(Args),
    /// Empirical percolation profile as CSV
    Theta(Args),
    /// Success fractions of the local-limit checks as JSON
    Verify(Args),
    /// Addition and completion times around the root
    Times(Args),
    /// Colour a lattice by Prim step (binary PPM)
    Render(Args),
    /// Run several stages into an output directory with a manifest
    Pipeline(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Grid,
    Triangular,
    RandomRegular,
    ErdosRenyi,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Torus,
    Open,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Marginal,
    Exact,
    Process,
}

#[derive(clap::Args)]
struct Args {
    /// JSON run configuration; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_enum)]
    boundary: Option<BoundaryArg>,
    /// Read this graph file instead of generating one
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    profile_trials: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    fractions: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    /// Size cutoffs; with `theta` also writes the assumption report
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    #[arg(long)]
    min_success: Option<f64>,
    #[arg(long)]
    crop: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Pipeline stages, e.g. gen,prim,render
    #[arg(long, value_delimiter = ',')]
    stages: Option<Vec<String>>,
}

impl Args {
    fn spec(&self, seed: u64) -> CliResult<GenSpec> {
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")));
        let boundary = match self.boundary {
            Some(BoundaryArg::Open) => Boundary::Open,
            _ => Boundary::Torus,
        };
        Ok(match self.family {
            None => return Err(CliError::Usage("--family or --config is required".into())),
            Some(FamilyArg::Grid) => GenSpec::grid(need(self.side, "side")?, boundary, seed),
            Some(FamilyArg::Triangular) => GenSpec::triangular(need(self.side, "side")?, boundary, seed),
            Some(FamilyArg::RandomRegular) => {
                GenSpec::random_regular(need(self.n, "n")?, self.d.unwrap_or(3), seed)
            }
            Some(FamilyArg::ErdosRenyi) => GenSpec::erdos_renyi(
                need(self.n, "n")?,
                self.lambda.ok_or_else(|| CliError::Usage("--lambda is required".into()))?,
                seed,
            ),
        })
    }

    fn into_config(self, command: &str) -> CliResult<RunConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let mut c = RunConfig::load(path)?;
                c.command = command.to_string();
                if self.family.is_some() {
                    c.spec = self.spec(self.seed.unwrap_or(c.spec.seed))?;
                } else if let Some(seed) = self.seed {
                    c.spec = c.spec.with_seed(seed);
                }
                c
            }
            None => {
                let out = self.out.clone().ok_or_else(|| CliError::Usage("--out is required".into()))?;
                RunConfig::new(command, self.spec(self.seed.unwrap_or(1))?, out)
            }
        };
        if let Some(out) = self.out {
            config.out = out;
        }
        if self.graph.is_some() {
            config.input = self.graph;
        }
        let p = &mut config.params;
        macro_rules! set {
            ($field:ident, $value:expr) => {
                if let Some(v) = $value {
                    p.$field = v;
                }
            };
        }
        set!(p, self.p);
        set!(t, self.t);
        set!(r, self.r);
        set!(alpha, self.alpha);
        set!(trials, self.trials);
        set!(profile_trials, self.profile_trials);
        set!(fractions, self.fractions);
        set!(deltas, self.delta);
        set!(k, self.k);
        set!(min_success, self.min_success);
        if self.crop.is_some() {
            p.crop = self.crop;
        }
        set!(
            mode,
            self.mode.map(|m| match m {
                ModeArg::Marginal => VerifyMode::Marginal,
                ModeArg::Exact => VerifyMode::Exact,
                ModeArg::Process => VerifyMode::Process,
            })
        );
        if let Some(names) = self.stages {
            config.stages = names.iter().map(|s| Stage::parse(s.trim())).collect::<CliResult<_>>()?;
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let (name, args, stage) = match cli.command {
        Command::Gen(a) => ("gen", a, Some(Stage::Gen)),
        Command::Prim(a) => ("prim", a, Some(Stage::Prim)),
        Command::Theta(a) => ("theta", a, Some(Stage::Theta)),
        Command::Verify(a) => ("verify", a, Some(Stage::Verify)),
        Command::Times(a) => ("times", a, Some(Stage::Times)),
        Command::Render(a) => ("render", a, Some(Stage::Render)),
        Command::Pipeline(a) => ("pipeline", a, None),
    };
    let config = args.into_config(name)?;
    match stage {
        Some(stage) => {
            let out = config.out.clone();
            let result = Session::new(config).run(stage, &out)?;
            for f in &result.files {
                println!("{}", f.display());
            }
            Ok(result.below_threshold)
        }
        None => {
            let manifest = run_pipeline(&config)?;
            for o in &manifest.outputs {
                println!("{}  {}", o.file.sha256, o.file.path);
            }
            Ok(manifest.below_threshold)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("verification below threshold");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

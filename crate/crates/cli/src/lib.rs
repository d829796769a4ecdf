//! `qdouble`: irrep tables, verification suites and tensor decompositions for
//! quantum doubles of finite groups, plus the SU(2) / SL(2,ℝ) examples.
//!
//! Exit codes: 0 success, 2 input error, 3 mathematical failure.

pub mod config;
pub mod output;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qdouble_core::compact::{self, Su2Config};
use qdouble_core::double::{
    double_irreps_with_seed, tensor_decompose, verify_hopf, verify_quasitriangular, verify_star,
    DoubleLabel, VerifyOptions,
};
use qdouble_core::dpr::verify_dpr_equivalence;
use qdouble_core::groups::{builtin, Builtin, FiniteGroup, GroupJson};
use qdouble_core::reps::all_irreps_with_seed;
use qdouble_core::suite::verify_tga;
use qdouble_core::tga::{conjugation_action, ActionJson, GAction};

pub use config::{ActionSpec, CommandSpec, GroupSpec, RunConfig, Suite, Tolerances};
use output::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qdouble",
    version,
    about = "Quantum double representations and verification suites"
)]
pub struct Cli {
    /// Seed for every randomized check (overridden by QDOUBLE_SEED).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format (schemas in docs/schemas).
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Pretty-printed JSON, deterministic key order.
    Json,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Builtin group: trivial, Z<n>, D<n>, S<n>, Q8, or products such as Z2xS3.
    #[arg(
        long,
        conflicts_with = "group_file",
        required_unless_present = "group_file"
    )]
    pub group: Option<String>,
    /// Cayley-table JSON file (docs/schemas/group.schema.json).
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// `conjugation` or an action-table JSON file (docs/schemas/action.schema.json).
    #[arg(long, default_value = "conjugation")]
    pub action: String,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Irreducible *-representations of the transformation group algebra.
    Irreps {
        #[command(flatten)]
        group: GroupArgs,
        /// Include the images of all basis elements.
        #[arg(long)]
        matrices: bool,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Tolerance for identities exact on integer data.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Random algebra elements per check.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Decompose the tensor product of two double irreps `A:alpha`.
    Tensor {
        #[command(flatten)]
        group: GroupArgs,
        left: String,
        right: String,
    },
    /// SU(2) and SL(2,R) examples.
    Compact {
        #[command(subcommand)]
        command: CompactCmd,
    },
    /// Execute a RunConfig JSON file (docs/schemas/run-config.schema.json).
    Run { config: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CompactCmd {
    /// Quadrature, carrier and tau checks for SU(2).
    Su2Verify {
        /// U(1) weight of the carrier.
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
        /// Input spin cutoff, e.g. 2 or 3/2.
        #[arg(long = "L")]
        l: String,
        /// Quadrature order (band limit 2·order).
        #[arg(long)]
        order: usize,
        /// Tolerance for homomorphism and star errors.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Conjugacy class of an SL(2,R) matrix given as a,b,c,d.
    Sl2rClassify {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<qdouble_core::Error> for CliError {
    fn from(e: qdouble_core::Error) -> Self {
        use qdouble_core::Error as E;
        let code = match e {
            E::ConvergenceFailure(_) | E::SplittingFailure(_) | E::DecompositionResidual(_) => {
                EXIT_FAILURE
            }
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Result of a command: JSON payload and whether its checks passed.
pub struct Outcome {
    pub json: String,
    pub passed: bool,
}

fn outcome<T: Serialize>(value: &T, passed: bool) -> Result<Outcome, CliError> {
    let mut json =
        serde_json::to_string_pretty(value).map_err(|e| CliError::input(e.to_string()))?;
    json.push('\n');
    Ok(Outcome { json, passed })
}

impl Cli {
    /// The run configuration this command line denotes, before the seed override.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let group_spec = |g: &GroupArgs| -> Option<GroupSpec> {
            match (&g.group, &g.group_file) {
                (_, Some(p)) => Some(GroupSpec::File { path: p.clone() }),
                (Some(n), None) => Some(GroupSpec::Builtin { name: n.clone() }),
                (None, None) => None,
            }
        };
        let action_spec = |g: &GroupArgs| {
            if g.action == "conjugation" {
                ActionSpec::Conjugation
            } else {
                ActionSpec::File {
                    path: PathBuf::from(&g.action),
                }
            }
        };
        let mut cfg = match self.command {
            Cmd::Run { config } => {
                let text = read(&config)?;
                serde_json::from_str::<RunConfig>(&text)
                    .map_err(|e| CliError::input(format!("{}: {e}", config.display())))?
            }
            Cmd::Irreps { group, matrices } => RunConfig {
                command: CommandSpec::Irreps { matrices },
                group: group_spec(&group),
                action: action_spec(&group),
                seed: 0,
                output: None,
                tolerances: Tolerances::default(),
            },
            Cmd::Verify {
                group,
                suite,
                tolerance,
                samples,
            } => RunConfig {
                command: CommandSpec::Verify { suite },
                group: group_spec(&group),
                action: action_spec(&group),
                seed: 0,
                output: None,
                tolerances: Tolerances {
                    exact: tolerance,
                    quadrature: None,
                    samples,
                },
            },
            Cmd::Tensor { group, left, right } => RunConfig {
                command: CommandSpec::Tensor { left, right },
                group: group_spec(&group),
                action: action_spec(&group),
                seed: 0,
                output: None,
                tolerances: Tolerances::default(),
            },
            Cmd::Compact { command } => {
                let (command, tolerances) = match command {
                    CompactCmd::Su2Verify {
                        n,
                        l,
                        order,
                        tolerance,
                    } => (
                        CommandSpec::Su2Verify { n, l, order },
                        Tolerances {
                            quadrature: tolerance,
                            ..Tolerances::default()
                        },
                    ),
                    CompactCmd::Sl2rClassify { matrix } => (
                        CommandSpec::Sl2rClassify {
                            matrix: parse_matrix(&matrix)?,
                        },
                        Tolerances::default(),
                    ),
                };
                RunConfig {
                    command,
                    group: None,
                    action: ActionSpec::Conjugation,
                    seed: 0,
                    output: None,
                    tolerances,
                }
            }
        };
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.output.is_some() {
            cfg.output = self.output;
        }
        Ok(cfg)
    }
}

fn parse_matrix(s: &str) -> Result<[f64; 4], CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::input(format!(
            "--matrix expects a,b,c,d; got {s:?}"
        )));
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p
            .parse()
            .map_err(|_| CliError::input(format!("not a number: {p:?}")))?;
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_group(spec: &Option<GroupSpec>) -> Result<Arc<FiniteGroup>, CliError> {
    match spec {
        None => Err(CliError::input(
            "a group is required (--group or --group-file)",
        )),
        Some(GroupSpec::Builtin { name }) => {
            let b: Builtin = name.parse()?;
            Ok(Arc::new(builtin(&b)?))
        }
        Some(GroupSpec::File { path }) => {
            let json: GroupJson = serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Ok(Arc::new(FiniteGroup::from_json(&json)?))
        }
    }
}

fn load_action(spec: &ActionSpec, group: &Arc<FiniteGroup>) -> Result<Arc<GAction>, CliError> {
    match spec {
        ActionSpec::Conjugation => Ok(Arc::new(conjugation_action(group))),
        ActionSpec::File { path } => {
            let json: ActionJson = serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Ok(Arc::new(GAction::from_json(group.clone(), &json)?))
        }
    }
}

fn verify_options(cfg: &RunConfig) -> VerifyOptions {
    let mut opts = VerifyOptions::with_seed(cfg.seed);
    if let Some(t) = cfg.tolerances.exact {
        opts.tolerance = t;
    }
    if let Some(s) = cfg.tolerances.samples {
        opts.random_elements = s;
    }
    opts
}

/// Runs a configuration and renders its JSON.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        CommandSpec::Irreps { matrices } => {
            let group = load_group(&cfg.group)?;
            let action = load_action(&cfg.action, &group)?;
            let conjugation = cfg.action == ActionSpec::Conjugation;
            let irreps = all_irreps_with_seed(&action, cfg.seed)?;
            let rows: Vec<IrrepRow> = irreps
                .iter()
                .map(|r| IrrepRow::new(r, conjugation, *matrices))
                .collect();
            let sum: usize = rows.iter().map(|r| r.dimension * r.dimension).sum();
            let out = IrrepsOutput {
                group: group.name().to_string(),
                order: group.order(),
                action: action.name().to_string(),
                set_size: action.set_size(),
                count: rows.len(),
                irreps: rows,
                sum_of_squares: sum,
                expected_sum: action.dimension(),
                complete: sum == action.dimension(),
            };
            let passed = out.complete;
            outcome(&out, passed)
        }
        CommandSpec::Verify { suite } => {
            let group = load_group(&cfg.group)?;
            let action = load_action(&cfg.action, &group)?;
            let opts = verify_options(cfg);
            let conjugation = cfg.action == ActionSpec::Conjugation;
            let suites: Vec<Suite> = match (suite, conjugation) {
                (Suite::All, true) => vec![
                    Suite::Hopf,
                    Suite::Quasitriangular,
                    Suite::Star,
                    Suite::Dpr,
                    Suite::Tga,
                ],
                (Suite::All, false) | (Suite::Tga, _) => vec![Suite::Tga],
                (s, true) => vec![*s],
                (s, false) => {
                    return Err(CliError::input(format!(
                        "suite {s:?} needs the conjugation action (the quantum double)"
                    )))
                }
            };
            let mut reports = Vec::new();
            for s in suites {
                reports.push(match s {
                    Suite::Hopf => verify_hopf(&group, &opts),
                    Suite::Quasitriangular => verify_quasitriangular(&group, &opts),
                    Suite::Star => verify_star(&group, &opts),
                    Suite::Dpr => verify_dpr_equivalence(&group, cfg.seed)?,
                    Suite::Tga => verify_tga(&action, &opts)?,
                    Suite::All => unreachable!("expanded above"),
                });
            }
            let passed = reports.iter().all(|r| r.passed());
            let out = VerifyOutput {
                group: group.name().to_string(),
                action: action.name().to_string(),
                seed: cfg.seed,
                passed,
                suites: reports,
            };
            outcome(&out, passed)
        }
        CommandSpec::Tensor { left, right } => {
            let group = load_group(&cfg.group)?;
            if cfg.action != ActionSpec::Conjugation {
                return Err(CliError::input(
                    "tensor products are defined for the conjugation action only",
                ));
            }
            let l: DoubleLabel = left.parse()?;
            let r: DoubleLabel = right.parse()?;
            let irreps = double_irreps_with_seed(&group, cfg.seed)?;
            let find = |lab: DoubleLabel| {
                irreps.iter().find(|x| x.label == lab).ok_or_else(|| {
                    CliError::from(qdouble_core::Error::UnknownLabel(lab.to_string()))
                })
            };
            let (a, b) = (find(l)?, find(r)?);
            let parts = tensor_decompose(a, b, &irreps)?;
            let decomposition: Vec<Constituent> = parts
                .iter()
                .map(|(lab, m)| Constituent {
                    label: lab.to_string(),
                    multiplicity: *m,
                    dimension: find(*lab).map(|x| x.dimension()).unwrap_or(0),
                })
                .collect();
            let sum: usize = decomposition
                .iter()
                .map(|c| c.multiplicity * c.dimension)
                .sum();
            let product = a.dimension() * b.dimension();
            let out = TensorOutput {
                group: group.name().to_string(),
                left: l.to_string(),
                right: r.to_string(),
                decomposition,
                dimensions: DimensionLine {
                    left: a.dimension(),
                    right: b.dimension(),
                    product,
                    sum,
                    consistent: sum == product,
                },
            };
            let passed = out.dimensions.consistent;
            outcome(&out, passed)
        }
        CommandSpec::Su2Verify { n, l, order } => {
            let two_l = compact::parse_half_integer(l)?;
            if *order == 0 {
                return Err(CliError::input("--order must be at least 1"));
            }
            let mut su2 = Su2Config::new(*n, two_l, *order, cfg.seed);
            let minimal = Su2Config::minimal_order(two_l, su2.bands);
            if *order < minimal {
                return Err(CliError::input(format!(
                    "--order {order} is below the minimal order {minimal} for L = {l} (2·(L + band + 1))"
                )));
            }
            if let Some(t) = cfg.tolerances.quadrature {
                su2.tolerance = t;
            }
            let report = compact::verify_su2(&su2)?;
            let passed = report.passed();
            let out = Su2Output {
                n: *n,
                l: l.clone(),
                order: *order,
                band_limit: 2 * *order,
                minimal_order: minimal,
                passed,
                report,
            };
            outcome(&out, passed)
        }
        CommandSpec::Sl2rClassify { matrix } => {
            let [a, b, c, d] = *matrix;
            let m = compact::SL2Matrix::new(a, b, c, d)?;
            let label = compact::classify_sl2r(&m)?;
            let out = Sl2rOutput {
                matrix: *matrix,
                trace: m.trace(),
                display: label.to_string(),
                warnings: compact::warnings(&label),
                label,
            };
            outcome(&out, true)
        }
    }
}

/// Parses arguments, runs, writes output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = cli
        .into_config()
        .and_then(|c| c.with_env_seed().map_err(CliError::input))
        .and_then(|cfg| {
            let out = execute(&cfg)?;
            match &cfg.output {
                Some(path) => std::fs::write(path, &out.json)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
                None => print!("{}", out.json),
            }
            Ok(out.passed)
        });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

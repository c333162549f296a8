mod problem;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqmack::grp::GroupSpec;
use eqmack::sgset::Representation;

use problem::{coeff_from_flag, HomologyTask, OmegaTask, PiTask, ProblemSpec, RoTableTask, RowSpec, SpaceSpec, Task};

#[derive(Parser)]
#[command(name = "eqmack", version, about = "Exact equivariant homology with Mackey functor coefficients")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Read the whole problem from a JSON file instead of flags.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Print the problem as JSON and exit without computing.
    #[arg(long, global = true)]
    dump_input: bool,
    /// Truncation depth (defaults to EQMACK_DEPTH, then 4).
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// C2, C3, C4, S3, ...
    #[arg(long)]
    group: Option<String>,
    /// point, S0, sphere:trivial:n, sphere:sign, sphere:rot:n:k, joined by ^.
    #[arg(long)]
    space: Option<String>,
    /// burnside, constant-Z, constant-Zmod:n, fixed-point:H:module-file.
    #[arg(long)]
    coeff: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Bredon homology of a space at one orbit or all orbits.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        orbit: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        degrees: Vec<usize>,
    },
    /// RO(G)-graded table; rows as `p` or `p:V+W`.
    RoTable {
        #[command(flatten)]
        common: Common,
        #[arg(long = "row")]
        rows: Vec<String>,
    },
    /// `[ΦS^V, X⊗̃M]` for `V` given as a comma list.
    Pi {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        v: Vec<Representation>,
    },
    /// Ω-spectrum comparison for one representation.
    OmegaCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "sign")]
        w: Representation,
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
    /// Mackey functor axioms of the coefficients.
    MackeyCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Bar construction contraction and ε on homology.
    BarCheck {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Homology { .. } => "homology",
            Command::RoTable { .. } => "ro-table",
            Command::Pi { .. } => "pi",
            Command::OmegaCheck { .. } => "omega-check",
            Command::MackeyCheck { .. } => "mackey-check",
            Command::BarCheck { .. } => "bar-check",
        }
    }
}

fn parse_row(s: &str) -> Result<RowSpec, String> {
    let (p, w) = s.split_once(':').unwrap_or((s, ""));
    let p = p.parse().map_err(|_| format!("bad row degree in '{s}'"))?;
    let w = w
        .split('+')
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<Representation>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    Ok(RowSpec { p, w })
}

fn from_flags(cli: &Cli) -> Result<ProblemSpec, String> {
    let (common, task) = match &cli.command {
        Command::Homology { common, orbit, degrees } => {
            (common, Task::Homology(HomologyTask { orbit: orbit.clone(), degrees: degrees.clone() }))
        }
        Command::RoTable { common, rows } => {
            (common, Task::RoTable(RoTableTask { rows: rows.iter().map(|r| parse_row(r)).collect::<Result<_, _>>()? }))
        }
        Command::Pi { common, v } => (common, Task::Pi(PiTask { v: v.clone() })),
        Command::OmegaCheck { common, w, n_max } => (common, Task::OmegaCheck(OmegaTask { w: w.clone(), n_max: *n_max })),
        Command::MackeyCheck { common } => (common, Task::MackeyCheck),
        Command::BarCheck { common } => (common, Task::BarCheck),
    };
    let group = common.group.clone().ok_or("--group is required (or --input)")?;
    Ok(ProblemSpec {
        group: GroupSpec::Builtin(group),
        space: common.space.clone().map(SpaceSpec::Builtin),
        coeff: common.coeff.as_deref().map(coeff_from_flag).transpose()?,
        depth: cli.depth,
        task,
    })
}

fn load(cli: &Cli) -> Result<ProblemSpec, String> {
    let Some(path) = &cli.input else {
        return from_flags(cli);
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read '{path}': {e}"))?;
    let mut spec = ProblemSpec::parse(&text)?;
    if spec.task.name() != cli.command.name() {
        return Err(format!("input describes a {} task, not {}", spec.task.name(), cli.command.name()));
    }
    if cli.depth.is_some() {
        spec.depth = cli.depth;
    }
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match load(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.dump_input {
        let _ = writeln!(std::io::stdout(), "{}", spec.to_json());
        return ExitCode::SUCCESS;
    }
    match report::run(&spec) {
        Ok(out) => {
            let text = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("report serializes"),
            };
            let _ = writeln!(std::io::stdout(), "{text}");
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lieprod::commands::{
    cmd_check, cmd_classify, cmd_curvature, cmd_verify_paper, parse_assignment, parse_lambda,
    Source,
};
use lieprod::families::{FamilyKind, PaperTables};
use lieprod::input::ManifoldInput;
use lieprod::report::Report;
use lieprod::{Error, Result};

#[derive(Parser)]
#[command(
    version,
    about = "Curvature and almost product structures of Lie groups with left-invariant metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Antisymmetry, Jacobi, Killing, P^2 = id and compatibility.
    Check(SourceArgs),
    /// Connection, curvature, Ricci, scalar, Weyl and sectional curvatures.
    Curvature {
        #[command(flatten)]
        source: SourceArgs,
        /// Parameter values for an input file, e.g. `a=1/2,b=3`.
        #[arg(long)]
        at: Option<String>,
    },
    /// W0/W3 membership, F, norms of N and nabla P, basic plane types.
    Classify(SourceArgs),
    /// Recompute the published tables of both families and diff them.
    VerifyPaper {
        /// Replacement expected-value table (JSON, names its own family).
        #[arg(long)]
        fixture: Vec<PathBuf>,
        /// Overwrite one expected entry, `family:section:name=value`.
        #[arg(long, hide = true)]
        corrupt: Vec<String>,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// Manifold description (JSON).
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    input: Option<PathBuf>,
    /// Built-in family.
    #[arg(long, value_parser = ["riemannian", "pseudo"])]
    family: Option<String>,
    /// Numeric parameters for the family, `p/q,p/q,p/q,p/q`.
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    lambda: Option<String>,
}

impl SourceArgs {
    fn source(&self) -> Result<Source> {
        match (&self.input, &self.family) {
            (Some(path), _) => Ok(Source::Input(ManifoldInput::from_json(
                &fs::read_to_string(path)?,
            )?)),
            (None, Some(name)) => Ok(Source::Family {
                kind: name.parse()?,
                lambda: self.lambda.as_deref().map(parse_lambda).transpose()?,
            }),
            (None, None) => Err(Error::InvalidInput("give --input or --family".into())),
        }
    }
}

fn verify_tables(
    fixtures: &[PathBuf],
    corrupt: &[String],
) -> Result<BTreeMap<FamilyKind, PaperTables>> {
    let mut tables = BTreeMap::new();
    for path in fixtures {
        let t = PaperTables::from_json(&fs::read_to_string(path)?)?;
        tables.insert(t.family, t);
    }
    for spec in corrupt {
        let bad = || Error::InvalidInput(format!("bad --corrupt {spec:?}"));
        let (target, value) = spec.split_once('=').ok_or_else(bad)?;
        let mut parts = target.splitn(3, ':');
        let (Some(kind), Some(section), Some(name)) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(bad());
        };
        let kind: FamilyKind = kind.parse()?;
        let t = tables
            .entry(kind)
            .or_insert_with(|| PaperTables::shipped(kind));
        if !t.corrupt(section, name, value) {
            return Err(bad());
        }
    }
    Ok(tables)
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Check(args) => cmd_check(&args.source()?.load()?),
        Command::Curvature { source, at } => {
            let at = at.as_deref().map(parse_assignment).transpose()?;
            cmd_curvature(&source.source()?.load()?, at.as_ref())
        }
        Command::Classify(args) => cmd_classify(&args.source()?.load()?),
        Command::VerifyPaper { fixture, corrupt } => {
            cmd_verify_paper(&verify_tables(fixture, corrupt)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Check(_) => "check",
        Command::Curvature { .. } => "curvature",
        Command::Classify(_) => "classify",
        Command::VerifyPaper { .. } => "verify-paper",
    };
    let report = run(&cli.command).unwrap_or_else(|e| Report::invalid_input(name, e.to_string()));
    let text = match cli.format {
        Format::Human => report.to_human(),
        Format::Json => report.to_json() + "\n",
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_status.code() as u8)
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use goldenextremal::commands::{cmd_render, cmd_sequence, cmd_solve, cmd_verify, SolveFlags, SolveProblem, Suite};
use goldenextremal::render::{Figure, RenderSpec};
use goldenextremal::{CliError, Format, ResultDocument};

#[derive(Parser)]
#[command(name = "goldenextremal", version, about = "Extremal triangles around a semicircle and the golden right triangles T(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Area,
    PerimeterNoTriangle,
    PerimeterNonacute,
    PerimeterIsosceles,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    #[value(alias = "fig1_min_area")]
    Fig1,
    #[value(alias = "fig2_sequence")]
    Fig2,
    #[value(alias = "fig3_construction")]
    Fig3,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Bounds,
    Construction,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run an extremal solver.
    Solve {
        #[arg(value_enum)]
        problem: ProblemArg,
        /// Refinement tolerance, in [1e-14, 1e-3].
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Grid points per axis in the seeding phase.
        #[arg(long)]
        grid: Option<usize>,
        /// Require the diameter to lie inside BC.
        #[arg(long)]
        strict_diameter: bool,
        /// Solve the non-acute problem with and without the no-triangle condition.
        #[arg(long)]
        both_constraint_readings: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate T(1)..T(N) and the limit triangle.
    Sequence {
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one of the figures as SVG.
    Render {
        #[arg(value_enum)]
        figure: FigureArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
        /// Largest n drawn in fig2.
        #[arg(long, default_value_t = 3)]
        n_max: u64,
        /// Omit text labels.
        #[arg(long)]
        no_labels: bool,
        /// Also write the fig3 construction trace as text.
        #[arg(long)]
        trace_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Run the exact verification suites.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Table => Format::Table,
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn emit(doc: &ResultDocument, f: FormatArg, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = doc.render(format(f));
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { problem, tol, grid, strict_diameter, both_constraint_readings, format, out } => {
            let problem = match problem {
                ProblemArg::Area => SolveProblem::Area,
                ProblemArg::PerimeterNoTriangle => SolveProblem::PerimeterNoTriangle,
                ProblemArg::PerimeterNonacute => SolveProblem::PerimeterNonAcute,
                ProblemArg::PerimeterIsosceles => SolveProblem::PerimeterIsosceles,
            };
            let doc = cmd_solve(problem, tol, SolveFlags { strict_diameter, both_constraint_readings, grid })?;
            emit(&doc, format, out.as_ref())
        }
        Command::Sequence { n_max, format, out } => emit(&cmd_sequence(n_max)?, format, out.as_ref()),
        Command::Render { figure, out, width, height, n_max, no_labels, trace_out, format } => {
            let figure = match figure {
                FigureArg::Fig1 => Figure::MinArea,
                FigureArg::Fig2 => Figure::Sequence,
                FigureArg::Fig3 => Figure::Construction,
            };
            let spec = RenderSpec::new(figure, width, height)?.with_n_max(n_max)?.with_annotate(!no_labels);
            emit(&cmd_render(&spec, &out, trace_out.as_deref())?, format, None)
        }
        Command::Verify { suite, format, out } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Bounds => Suite::Bounds,
                SuiteArg::Construction => Suite::Construction,
                SuiteArg::All => Suite::All,
            };
            let doc = cmd_verify(suite);
            emit(&doc, format, out.as_ref())?;
            if doc.all_passed() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("{} check(s) failed", doc.outputs.iter().filter(|o| !o.passed()).count())))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("goldenextremal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cohomlab_cli::{analyze, builtin_input, file_input, fuzz, render, thread_count, AnalyzeOptions, CliError, Format, View};

#[derive(Parser)]
#[command(name = "cohomlab", version, about = "Bott–Chern, Aeppli and Dolbeault-type cohomology of double complexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a JSON input file or a builtin example.
    Analyze {
        /// JSON input (double_complex, bidiff_pair or lie_algebra).
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        input: Option<PathBuf>,
        /// iwasawa-complex, iwasawa-symplectic, abelian:<n>, heisenberg3
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, value_enum)]
        view: Option<View>,
        /// Also compute spectral pages up to E_r.
        #[arg(long, value_name = "R_MAX")]
        spectral: Option<usize>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite on random bicomplexes.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        /// `mixed`, or counts like `dot:0-3,square:1,hseg:1-2,zigzag3:0-1`.
        #[arg(long)]
        shapes: Option<String>,
        /// Directory for reproducers of failing cases.
        #[arg(long, default_value = "fuzz-failures")]
        out: PathBuf,
    },
}

fn run_analyze(
    input: Option<PathBuf>,
    builtin: Option<String>,
    view: Option<View>,
    spectral: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let (inp, raw, source) = match (&input, &builtin) {
        (_, Some(name)) => {
            let (i, raw) = builtin_input(name)?;
            (i, raw, format!("builtin:{name}"))
        }
        (Some(path), None) => {
            let (i, raw) = file_input(path)?;
            let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into());
            (i, raw, name)
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let doc = analyze(&inp, &source, &raw, &AnalyzeOptions { spectral })?;
    let text = render(&doc, view.unwrap_or(View::Bigraded), format);
    match out {
        Some(p) => std::fs::write(&p, text).map_err(|e| CliError::Io { path: p.display().to_string(), source: e }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.cmd {
        Cmd::Analyze { input, builtin, view, spectral, format, out } => {
            run_analyze(input, builtin, view, spectral, format, out).map(|_| 0)
        }
        Cmd::Fuzz { seed, iters, shapes, out } => fuzz::parse_shapes(shapes.as_deref()).and_then(|params| {
            let (summary, files) = fuzz::run(seed, iters, &params, thread_count(), &out)?;
            print!("{}", fuzz::summary_text(&summary, &files));
            Ok(if summary.passed() { 0 } else { 3 })
        }),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

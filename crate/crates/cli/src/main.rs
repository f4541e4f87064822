//! `uplocal`: directional uncertainty products from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use uplocal_cli::spec::{self, Format, Origin, SpecBuilder, SpecError};
use uplocal_cli::commands;

#[derive(Parser, Debug)]
#[command(name = "uplocal", version, about = "Directional Heisenberg uncertainty products")]
struct Cli {
    /// Run specification in key=value format; flags override its entries.
    specfile: Option<PathBuf>,
    #[arg(long)]
    command: Option<String>,
    /// e.g. gaussian_diag:1,4 or example1.
    #[arg(long)]
    function: Option<String>,
    /// Comma-separated components of L.
    #[arg(long)]
    direction: Option<String>,
    #[arg(long = "grid-R")]
    grid_r: Option<String>,
    #[arg(long = "grid-n")]
    grid_n: Option<String>,
    #[arg(long)]
    lambdas: Option<String>,
    /// Output prefix; CSV goes to stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// csv or csv+svg.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    resolution: Option<String>,
    #[arg(long)]
    cutoff: Option<String>,
}

fn spec_from(cli: &Cli) -> Result<spec::RunSpec, SpecError> {
    let mut b = match &cli.specfile {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| SpecError {
                origin: None,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            let mut b = SpecBuilder::with_base_dir(path.parent().unwrap_or(Path::new(".")));
            b.read(&text).map_err(|e| SpecError {
                origin: None,
                message: format!("{}: {e}", path.display()),
            })?;
            b
        }
        None => SpecBuilder::default(),
    };
    let flags = [
        ("command", &cli.command),
        ("function", &cli.function),
        ("direction", &cli.direction),
        ("grid-R", &cli.grid_r),
        ("grid-n", &cli.grid_n),
        ("lambdas", &cli.lambdas),
        ("out", &cli.out),
        ("format", &cli.format),
        ("resolution", &cli.resolution),
        ("cutoff", &cli.cutoff),
    ];
    debug_assert_eq!(flags.len(), spec::KEYS.len());
    for (key, value) in flags {
        if let Some(v) = value {
            b.set(key, v.trim(), Origin::Flag(key.into()))?;
        }
    }
    b.build()
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("UPLOCAL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("UPLOCAL_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("uplocal: {e}");
        return ExitCode::from(2);
    }
    let spec = match spec_from(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("uplocal: spec error: {e}");
            return ExitCode::from(2);
        }
    };
    let artifacts = match commands::run(&spec) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("uplocal: {e}");
            return ExitCode::from(1);
        }
    };
    let csv = artifacts.table.csv();
    let Some(prefix) = &spec.out else {
        print!("{csv}");
        return ExitCode::SUCCESS;
    };
    let mut files = vec![("csv", csv)];
    if spec.format == Format::CsvSvg {
        files.push(("svg", artifacts.table.svg()));
    }
    files.extend(artifacts.files);
    for (suffix, contents) in files {
        let path = with_suffix(prefix, suffix);
        if let Err(e) = std::fs::write(&path, contents) {
            eprintln!("uplocal: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}

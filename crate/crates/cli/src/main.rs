use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use orbitlab::config::DecimalInt;
use orbitlab::{load_config, run, Command, RunError};

/// Exact experiments on orbits of self-maps of projective space over ℚ.
#[derive(Debug, Parser)]
#[command(name = "orbitlab", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    n_max: Option<usize>,
    /// CSV destination; stdout when neither this nor the config sets one.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON-lines orbit cache.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Starting point, e.g. "(1:1:1)".
    #[arg(long)]
    point: Option<String>,
    /// Divisor form for ppd/bsum.
    #[arg(long)]
    form: Option<String>,
    /// Window l for bsum.
    #[arg(long)]
    window: Option<usize>,
    /// Factor values in ppd and list primitive primes.
    #[arg(long)]
    factor: bool,
    /// Comma-separated primes to exclude.
    #[arg(long, value_delimiter = ',')]
    exclude: Option<Vec<String>>,
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
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("orbitlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<(), RunError> {
    let mut config = load_config(&cli.config)?;
    if let Some(n) = cli.n_max {
        config.n_max = n;
    }
    if let Some(c) = cli.cache {
        config.cache = Some(c);
    }
    if let Some(p) = cli.point {
        let point: orbitlab_core::ProjPoint = p.parse()?;
        config.point = point.coords().iter().cloned().map(DecimalInt).collect();
    }
    if let Some(f) = cli.form {
        config.form = Some(f);
    }
    if let Some(w) = cli.window {
        config.window = w;
    }
    if cli.factor {
        config.factor = true;
    }
    if let Some(ps) = cli.exclude {
        config.excluded = ps
            .iter()
            .map(|p| {
                p.trim()
                    .parse()
                    .map(DecimalInt)
                    .map_err(|_| orbitlab_core::Error::Parse(format!("bad prime {p:?}")))
            })
            .collect::<Result<_, _>>()?;
    }
    let out = cli.out.or_else(|| config.output.clone());
    match out {
        Some(path) => {
            let file = File::create(&path)
                .map_err(|e| RunError::Io(format!("creating {}: {e}", path.display())))?;
            run(cli.command, &config, BufWriter::new(file))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            let r = run(cli.command, &config, &mut lock);
            lock.flush()?;
            r
        }
    }
}

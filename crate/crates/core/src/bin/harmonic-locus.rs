use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use harmonic_locus::commands::{
    self, CommandError, CommandResult, ExitStatus, Format, ZeroTarget, DEFAULT_MODULAR_BAND,
    DEFAULT_SAMPLES,
};
use harmonic_locus::{HarmonicPolynomial, QuadrinomialParams};

#[derive(Parser)]
#[command(
    name = "harmonic-locus",
    version,
    about = "Critical circles, hypocycloid images and zeros of harmonic quadrinomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the primary artifact here (companions get sibling extensions);
    /// print it to stdout otherwise.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Curve and contour sample count.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,

    /// Seed grid resolution (zero search) or lattice resolution (sense map).
    #[arg(long, global = true)]
    grid: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Svg => Format::Svg,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// `Q(z) = b z^k + conj(z)^n + c conj(z)^m + z`; `c` defaults to `b`, `n` to `k`.
#[derive(Args, Clone)]
struct Family {
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    m: u32,
}

impl Family {
    fn params(&self) -> Result<QuadrinomialParams, CommandError> {
        Ok(QuadrinomialParams::new(
            self.b,
            self.c.unwrap_or(self.b),
            self.k,
            self.n.unwrap_or(self.k),
            self.m,
        )?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Critical radius (JSON) and sampled critical circle (CSV, SVG).
    CriticalCircle(Family),
    /// Image of the critical circle against the hypocycloid model.
    Image(Family),
    /// Zeros, their orientation and the argument-principle count.
    Zeros(ZerosArgs),
    /// Zero-inclusion disk of the quadrinomial.
    Bound(Family),
    /// Zeros on the critical circle; exit 4 when any exist.
    ModularCheck {
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value_t = DEFAULT_MODULAR_BAND)]
        band: f64,
    },
    /// Orientation class on a lattice.
    SenseMap(Family),
}

#[derive(Args)]
struct ZerosArgs {
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Analytic coefficients, ascending powers, `re` or `re:im` terms.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["b", "c", "k", "n"])]
    h: Option<String>,
    /// Co-analytic coefficients, same layout as `--h`.
    #[arg(long, allow_hyphen_values = true, requires = "h")]
    g: Option<String>,
}

impl ZerosArgs {
    fn target(&self) -> Result<ZeroTarget, CommandError> {
        if let Some(h) = &self.h {
            let analytic = commands::parse_coefficients(h)?;
            let coanalytic = commands::parse_coefficients(self.g.as_deref().unwrap_or(""))?;
            return Ok(ZeroTarget::General(HarmonicPolynomial::new(
                analytic, coanalytic,
            )?));
        }
        let (Some(b), Some(k)) = (self.b, self.k) else {
            return Err(harmonic_locus::Error::InvalidParams(
                "give --b and --k, or --h".to_string(),
            )
            .into());
        };
        let family = Family {
            b,
            c: self.c,
            k,
            n: self.n,
            m: self.m,
        };
        Ok(ZeroTarget::Quadrinomial(family.params()?))
    }
}

fn run(cli: &Cli) -> CommandResult {
    let format = |default: Format| cli.format.map_or(default, Format::from);
    match &cli.command {
        Command::CriticalCircle(f) => {
            commands::critical_circle(&f.params()?, cli.samples, format(Format::Json))
        }
        Command::Image(f) => commands::image(&f.params()?, cli.samples, format(Format::Svg)),
        Command::Zeros(z) => {
            commands::zeros(&z.target()?, cli.grid, cli.samples, format(Format::Csv))
        }
        Command::Bound(f) => commands::bound(
            f.b,
            f.c.unwrap_or(f.b),
            f.k,
            f.n.unwrap_or(f.k),
            format(Format::Json),
        ),
        Command::ModularCheck { family, band } => commands::modular_check(
            &family.params()?,
            cli.samples,
            cli.grid,
            *band,
            format(Format::Json),
        ),
        Command::SenseMap(f) => commands::sense(&f.params()?, cli.grid, format(Format::Csv)),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn configure_threads() {
    if let Some(threads) = std::env::var("HARMONIC_LOCUS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let output = match run(&cli) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.status().code() as u8);
        }
    };
    for note in &output.notes {
        eprintln!("note: {note}");
    }
    match &cli.output {
        Some(path) => {
            let written = std::iter::once((path.clone(), &output.primary)).chain(
                output
                    .companions
                    .iter()
                    .map(|a| (path.with_extension(a.format.extension()), a))
                    .filter(|(target, _)| target != path),
            );
            for (target, artifact) in written {
                if let Err(e) = write(&target, &artifact.contents) {
                    eprintln!("error: {e}");
                    return ExitCode::from(ExitStatus::Precondition.code() as u8);
                }
            }
        }
        None => print!("{}", output.primary.contents),
    }
    ExitCode::from(output.status.code() as u8)
}

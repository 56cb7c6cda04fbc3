use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bundletri::bistellar::{build_fill_schedule, feasible_region, fill_to};
use bundletri::format::{analyze, parse, write};
use bundletri::handle::{build_iss, build_miss, orientation_double_cover, PairingVariant};
use bundletri::stacked::build_delta;
use bundletri::verify::are_isomorphic;
use bundletri::{BundleType, Complex, Error};

#[derive(Parser)]
#[command(name = "bundletri", version, about = "Triangulated sphere bundles over the circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and write its facet list.
    #[command(subcommand)]
    Build(Build),
    /// Add edges to an identified stacked sphere with bistellar moves.
    FillEdges {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        target_f1: u64,
        /// Also write the full move schedule, one move per line.
        #[arg(long)]
        schedule_out: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report face numbers, homology, orientability and manifold evidence.
    Analyze {
        /// Facet-list file, or `-` for standard input.
        #[arg(long = "in", default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Test two facet lists for combinatorial isomorphism.
    Iso { a: PathBuf, b: PathBuf },
    /// Orientation double cover of a nonorientable pseudomanifold.
    DoubleCover {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Feasible edge counts for an S^k-bundle over the circle.
    Region {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long, value_enum)]
        bundle: Bundle,
    },
}

#[derive(Subcommand)]
enum Build {
    /// The stacked sphere after the given number of scheduled steps.
    Stacked {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The minimal identified stacked sphere on 2n+1 vertices.
    Miss {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// An identified stacked sphere with a given vertex count and bundle type.
    Iss {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vertices: usize,
        #[arg(long, value_enum)]
        bundle: Bundle,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Bundle {
    Orientable,
    Nonorientable,
}

impl From<Bundle> for BundleType {
    fn from(b: Bundle) -> Self {
        match b {
            Bundle::Orientable => BundleType::Orientable,
            Bundle::Nonorientable => BundleType::Nonorientable,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Standard,
    Swapped,
}

impl From<Variant> for PairingVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Standard => PairingVariant::Standard,
            Variant::Swapped => PairingVariant::Swapped,
        }
    }
}

enum Failure {
    Domain(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(path.into(), e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))
}

fn read_complex(path: &Path) -> CliResult<Complex> {
    Ok(parse(&read_text(path)?)?)
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.into(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Build(Build::Stacked { n, steps, output }) => {
            let (c, _) = build_delta(n, steps)?;
            emit(&write(&c), output.as_deref())?;
        }
        Command::Build(Build::Miss { n, output }) => {
            emit(&write(&build_miss(n)?), output.as_deref())?;
        }
        Command::Build(Build::Iss {
            n,
            vertices,
            bundle,
            output,
        }) => {
            let iss = build_iss(n, vertices, bundle.into())?;
            eprintln!("pairing: {}", iss.variant);
            for w in &iss.warnings {
                eprintln!("warning: {w}");
            }
            emit(&write(&iss.complex), output.as_deref())?;
        }
        Command::FillEdges {
            input,
            n,
            vertices,
            variant,
            target_f1,
            schedule_out,
            output,
        } => {
            let c = read_complex(&input)?;
            if c.n() != n {
                return Err(Error::InvalidDimension(c.n()).into());
            }
            let schedule = build_fill_schedule(&c, n, vertices, variant.into())?;
            if let Some(p) = schedule_out.as_deref() {
                emit(&schedule.to_string(), Some(p))?;
            }
            let filled = fill_to(&c, &schedule, target_f1)?;
            emit(&write(&filled), output.as_deref())?;
        }
        Command::Analyze { input, json } => {
            let report = analyze(&read_complex(&input)?)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
        }
        Command::Iso { a, b } => {
            let (ca, cb) = (read_complex(&a)?, read_complex(&b)?);
            return Ok(match are_isomorphic(&ca, &cb) {
                Some(w) => {
                    for (from, to) in w.map() {
                        println!("{from} -> {to}");
                    }
                    ExitCode::SUCCESS
                }
                None => {
                    println!("non-isomorphic");
                    ExitCode::from(1)
                }
            });
        }
        Command::DoubleCover { input, output } => {
            let cover = orientation_double_cover(&read_complex(&input)?)?;
            emit(&write(&cover), output.as_deref())?;
        }
        Command::Region { k, vertices, bundle } => match feasible_region(k, vertices, bundle.into())? {
            Some((lo, hi)) => println!("{lo} {hi}"),
            None => println!("infeasible"),
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: IoError: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bn_core::certificate::{self, Certificate, Construction};
use bn_core::config::to_bits;
use bn_core::dynamics::{
    async_attractors, asynchronous_graph, delta_sets, image_count, periodic_structure, reconstruct_network,
    undirected_async,
};
use bn_core::experiment::{image_count_experiment, many_attractor_rate};
use bn_core::io::{parse_arcs, parse_network, serialize_network, to_dot};
use bn_core::iso::{are_isometric_async, are_isomorphic_digraphs, canonical_form, ISOMETRY_MAX_DIM};
use bn_core::solidity::{solidity_experiment, staple_closure};
use bn_core::{BoolNet, RandomSource};

#[derive(Parser)]
#[command(name = "bn", version, about = "Synchronous and asynchronous dynamics of Boolean networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    FewAtt,
    SmallAtt,
    ManyAtt,
    Strong,
    BreakIso,
}

impl From<Kind> for Construction {
    fn from(k: Kind) -> Self {
        match k {
            Kind::FewAtt => Construction::FewAttractors,
            Kind::SmallAtt => Construction::SmallAttractor,
            Kind::ManyAtt => Construction::ManyAttractors,
            Kind::Strong => Construction::Strong,
            Kind::BreakIso => Construction::BreakIso,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    Solidity,
    ImageCount,
    ManyAttRate,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed points, cycles, Δ-sets, attractors and solidity of a network.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Relabel a network and write the result with a certificate.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        /// Output network; the certificate goes next to it as `<out>.cert.json`.
        /// Without it the network goes to stdout and the certificate to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against the input and output networks.
    Verify { certificate: PathBuf, input: PathBuf, output: PathBuf },
    /// Monte Carlo runs over uniformly random networks.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.75)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One row per sample instead of a summary (image-count, many-att-rate).
        #[arg(long)]
        per_sample: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the network from an asynchronous graph given as an arc list.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two networks up to isomorphism of their synchronous and asynchronous graphs.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Core(bn_core::Error),
    Io(String),
    Usage(String),
}

impl From<bn_core::Error> for Failure {
    fn from(e: bn_core::Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => write(p, text),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn load(path: &Path) -> Result<BoolNet, Failure> {
    Ok(parse_network(&read(path)?)?)
}

fn analyze(file: &Path, format: Format) -> Outcome {
    let f = load(file)?;
    let n = f.n();
    let ps = periodic_structure(&f);
    let mut cycles = ps.cycle_lengths();
    cycles.sort_unstable();
    let delta = delta_sets(&f);
    let att = async_attractors(&f);
    let solid = staple_closure(&undirected_async(&f));
    let images = image_count(&f, 2);
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "n: {n}").unwrap();
            writeln!(s, "fixed points: {}", f.fixed_point_count()).unwrap();
            writeln!(s, "limit cycle lengths: {cycles:?}").unwrap();
            writeln!(s, "delta+: {}", delta.plus.len()).unwrap();
            writeln!(s, "delta-: {}", delta.minus.len()).unwrap();
            writeln!(s, "asynchronous attractors: {}", att.count()).unwrap();
            writeln!(s, "attractor sizes: {:?}", att.sizes()).unwrap();
            writeln!(s, "images of f^2: {images}").unwrap();
            writeln!(s, "undirected asynchronous graph fully solid: {}", solid.is_fully_solid).unwrap();
            writeln!(s, "canonical digest: {}", canonical_form(&f).digest()).unwrap();
            s
        }
        Format::Json => {
            let v = json!({
                "n": n,
                "fixed-points": f.fixed_point_count(),
                "cycle-lengths": cycles,
                "delta-plus": delta.plus,
                "delta-minus": delta.minus,
                "attractor-count": att.count(),
                "attractor-sizes": att.sizes(),
                "attractors": att.attractors,
                "images": images,
                "fully-solid": solid.is_fully_solid,
                "closure-rounds": solid.closure_rounds,
                "canonical-digest": canonical_form(&f).digest(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Dot => to_dot(&asynchronous_graph(&f), Some(&att), "async"),
        Format::Csv => return Err(Failure::Usage("analyze has no csv output".into())),
    };
    emit(None, &text)
}

fn construct(kind: Kind, file: &Path, out: Option<&Path>) -> Outcome {
    let f = load(file)?;
    let (h, cert) = certificate::construct(kind.into(), &f)?;
    let cert_json = cert.to_json() + "\n";
    match out {
        Some(p) => {
            write(p, &serialize_network(&h))?;
            let mut cert_path = p.as_os_str().to_owned();
            cert_path.push(".cert.json");
            write(Path::new(&cert_path), &cert_json)
        }
        None => {
            emit(None, &serialize_network(&h))?;
            eprint!("{cert_json}");
            Ok(())
        }
    }
}

fn verify(cert: &Path, input: &Path, output: &Path) -> Outcome {
    let cert = Certificate::from_json(&read(cert)?)?;
    let checks = certificate::verify(&cert, &load(input)?, &load(output)?)?;
    emit(None, &format!("certificate accepted ({}): {}\n", cert.construction, checks.join(", ")))
}

#[allow(clippy::too_many_arguments)]
fn experiment(
    name: ExperimentName,
    n: usize,
    p: f64,
    samples: usize,
    seed: u64,
    per_sample: bool,
    format: Format,
    out: Option<&Path>,
) -> Outcome {
    let rs = RandomSource::new(seed);
    let (header, rows, summary) = match name {
        ExperimentName::Solidity => {
            let e = solidity_experiment(n, p, samples, &rs)?;
            let summary = json!({
                "n": n, "p": p, "samples": samples,
                "certified-fraction": e.certified_fraction(), "seed": seed,
            });
            (bn_core::solidity::SolidityExperiment::CSV_HEADER, vec![e.csv_row()], summary)
        }
        ExperimentName::ImageCount => {
            let e = image_count_experiment(n, samples, &rs)?;
            let summary = json!({
                "n": n, "samples": samples, "mean-image-fraction": e.mean_fraction(),
                "limit": bn_core::experiment::image_fraction_limit(), "seed": seed,
            });
            if per_sample {
                (bn_core::experiment::ImageCountExperiment::SAMPLE_HEADER, e.sample_rows(), summary)
            } else {
                (bn_core::experiment::ImageCountExperiment::CSV_HEADER, vec![e.csv_row()], summary)
            }
        }
        ExperimentName::ManyAttRate => {
            let e = many_attractor_rate(n, samples, &rs)?;
            let summary = json!({
                "n": n, "samples": samples, "threshold": e.threshold(), "fraction": e.fraction(),
                "guarantee-met": e.guarantee_met(), "seed": seed,
            });
            if per_sample {
                (bn_core::experiment::ManyAttractorRate::SAMPLE_HEADER, e.sample_rows(), summary)
            } else {
                (bn_core::experiment::ManyAttractorRate::CSV_HEADER, vec![e.csv_row()], summary)
            }
        }
    };
    let text = match format {
        Format::Csv => {
            let mut s = format!("{header}\n");
            for r in rows {
                s.push_str(&r);
                s.push('\n');
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&summary).expect("json") + "\n",
        Format::Text => {
            let mut s = String::new();
            for (k, v) in summary.as_object().expect("object") {
                writeln!(s, "{k}: {v}").unwrap();
            }
            s
        }
        Format::Dot => return Err(Failure::Usage("experiments have no dot output".into())),
    };
    emit(out, &text)
}

fn reconstruct(file: &Path, out: Option<&Path>) -> Outcome {
    let g = parse_arcs(&read(file)?)?;
    let f = reconstruct_network(&g)?;
    emit(out, &serialize_network(&f))
}

fn iso(first: &Path, second: &Path, format: Format) -> Outcome {
    let (f, h) = (load(first)?, load(second)?);
    if f.n() != h.n() {
        return Err(bn_core::Error::from(bn_core::Precondition::DimensionMismatch(f.n(), h.n())).into());
    }
    let sync = canonical_form(&f) == canonical_form(&h);
    let mapping = are_isomorphic_digraphs(&asynchronous_graph(&f), &asynchronous_graph(&h))?;
    let isometry = if f.n() <= ISOMETRY_MAX_DIM { are_isometric_async(&f, &h)? } else { None };
    let n = f.n();
    let text = match format {
        Format::Json => {
            let v = json!({
                "synchronous-isomorphic": sync,
                "asynchronous-isomorphic": mapping.is_some(),
                "asynchronous-isometric": isometry.is_some(),
                "mapping": mapping,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "synchronous graphs isomorphic: {sync}").unwrap();
            writeln!(s, "asynchronous graphs isomorphic: {}", mapping.is_some()).unwrap();
            writeln!(s, "asynchronous graphs related by a cube isometry: {}", isometry.is_some()).unwrap();
            if let Some(m) = mapping {
                for (x, y) in m.iter().enumerate() {
                    writeln!(s, "  {} -> {}", to_bits(x as u32, n), to_bits(*y, n)).unwrap();
                }
            }
            s
        }
        _ => return Err(Failure::Usage("iso supports text and json output".into())),
    };
    emit(None, &text)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { file, format } => analyze(&file, format),
        Command::Construct { kind, file, out } => construct(kind, &file, out.as_deref()),
        Command::Verify { certificate, input, output } => verify(&certificate, &input, &output),
        Command::Experiment { name, n, p, samples, seed, per_sample, format, out } => {
            experiment(name, n, p, samples, seed, per_sample, format, out.as_deref())
        }
        Command::Reconstruct { file, out } => reconstruct(&file, out.as_deref()),
        Command::Iso { first, second, format } => iso(&first, &second, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

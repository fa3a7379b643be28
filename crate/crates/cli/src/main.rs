use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use nestoflag::analysis::{ffk_check, graphs_isomorphic, verify_triple, NamedFamily};
use nestoflag::formats::{
    parse_building_set, parse_complex, parse_graph, parse_ordering, to_dot, write_building_set,
    write_complex, write_ordering,
};
use nestoflag::gammacomplex::join;
use nestoflag::generate::random_ordering;
use nestoflag::npcomplexes::{gamma_complex_pn, gamma_complex_s312, gamma_complex_sn_hat};
use nestoflag::ordering::{ordering_kn, ordering_pathn, ordering_star};
use nestoflag::setcore::graphical_building_set;
use nestoflag::{
    build_gamma_complex, find_flag_ordering, gamma_oracle, gamma_via_volodin, BuildingSet,
    FlagComplex, FlagOrdering, Strategy, WideCoeffVector,
};

#[derive(Parser)]
#[command(
    name = "nestoflag",
    version,
    about = "Gamma-vectors of flag nestohedra and their flag complexes"
)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Extra diagnostics on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the building set of a named graph (kn:N, path:N, cyc:N, star:N) or a graph file.
    Bset { source: String },
    /// Compute the gamma-vector.
    Gamma {
        bset: String,
        #[arg(long, value_enum, default_value_t = Method::Nested)]
        method: Method,
        #[command(flatten)]
        ordering: OrderingArgs,
    },
    /// Find or check a flag ordering.
    Ordering {
        #[command(subcommand)]
        action: OrderingAction,
    },
    /// Build the flag complex of an ordering.
    Complex {
        bset: String,
        #[command(flatten)]
        ordering: OrderingArgs,
        #[arg(long)]
        dot: bool,
    },
    /// Complexes of the permutation families: sn:N, s312:N or pn:N.
    Np {
        family: String,
        #[arg(long)]
        dot: bool,
    },
    /// Test two complex files for graph isomorphism.
    Compare { first: PathBuf, second: PathBuf },
    /// Cross-check the three gamma computations.
    Verify {
        bset: String,
        #[arg(long, default_value_t = 3)]
        orderings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Balanced face-vector test, e.g. "(1,1,1)".
    Ffk { vector: String },
}

#[derive(Subcommand)]
enum OrderingAction {
    Find {
        bset: String,
        #[arg(long, value_enum, default_value_t = FindStrategy::Lex)]
        strategy: FindStrategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Verify {
        bset: String,
        ordering: PathBuf,
    },
}

#[derive(clap::Args)]
struct OrderingArgs {
    #[arg(long, value_enum, default_value_t = OrderingKind::Auto)]
    ordering: OrderingKind,
    #[arg(long, required_if_eq("ordering", "file"))]
    ordering_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Nested,
    Volodin,
    Complex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderingKind {
    Auto,
    Kn,
    Path,
    Star,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum FindStrategy {
    Lex,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exit 1: the computation ran and reported a negative result.
/// Exit 2: the input could not be read or understood.
enum Failure {
    Result(anyhow::Error),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_bset(source: &str) -> anyhow::Result<BuildingSet> {
    if let Ok(family) = source.parse::<NamedFamily>() {
        return Ok(family.building_set());
    }
    if source.contains(':') && !Path::new(source).exists() {
        bail!("unknown selector {source:?}; expected kn:N, path:N, cyc:N or star:N with N >= 2");
    }
    let text = read(Path::new(source))?;
    parse_building_set(&text).with_context(|| format!("parsing {source}"))
}

fn load_ordering(
    b: &BuildingSet,
    selector: &str,
    args: &OrderingArgs,
) -> anyhow::Result<FlagOrdering> {
    let named = |o: Result<FlagOrdering, _>| -> anyhow::Result<FlagOrdering> {
        let o = o.map_err(|e| anyhow!("{e}"))?;
        if o.building_set() != b {
            bail!("named ordering does not belong to {selector}");
        }
        Ok(o)
    };
    let n = b.ground_size();
    match args.ordering {
        OrderingKind::Auto => Ok(random_ordering(b, args.seed)?),
        OrderingKind::Kn => named(ordering_kn(n)),
        OrderingKind::Path => named(ordering_pathn(n)),
        OrderingKind::Star => named(ordering_star(n)),
        OrderingKind::File => {
            let path = args
                .ordering_file
                .as_deref()
                .context("--ordering file needs --ordering-file")?;
            let o = parse_ordering(&read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            if o.building_set() != b {
                bail!(
                    "ordering in {} is for a different building set",
                    path.display()
                );
            }
            Ok(o)
        }
    }
}

/// Γ of `b`, one ordering per connected component, joined.
fn gamma_complex(
    b: &BuildingSet,
    selector: &str,
    args: &OrderingArgs,
) -> Result<FlagComplex<String>, Failure> {
    if let Some(s) = b.first_unsplittable() {
        return Err(Failure::Result(anyhow!(
            "not a flag building set: {s} has no split"
        )));
    }
    let complexes = if b.is_connected() {
        vec![build_gamma_complex(&load_ordering(b, selector, args)?)]
    } else {
        if args.ordering != OrderingKind::Auto {
            return Err(anyhow!(
                "only --ordering auto is available for a disconnected building set"
            )
            .into());
        }
        b.maximal_elements()
            .into_iter()
            .map(|m| {
                let part = b.restriction(m)?;
                Ok(build_gamma_complex(&random_ordering(&part, args.seed)?))
            })
            .collect::<anyhow::Result<Vec<_>>>()?
    };
    let mut g = FlagComplex::new(Vec::new()).map_err(anyhow::Error::from)?;
    for c in complexes {
        g = join(
            &g,
            &c.map_labels(|s| s.to_string())
                .map_err(anyhow::Error::from)?,
        )
        .map_err(anyhow::Error::from)?;
    }
    Ok(g)
}

fn require_flag(b: &BuildingSet) -> Result<(), Failure> {
    match b.first_unsplittable() {
        Some(s) => Err(Failure::Result(anyhow!(
            "not a flag building set: {s} has no split"
        ))),
        None => Ok(()),
    }
}

fn parse_vector(text: &str) -> anyhow::Result<WideCoeffVector> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coeffs = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i128>()
                .with_context(|| format!("bad entry {t:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        bail!("empty vector");
    }
    Ok(WideCoeffVector::new(coeffs))
}

fn np_complex(family: &str, dot: bool) -> anyhow::Result<String> {
    let (kind, n) = family
        .split_once(':')
        .context("expected sn:N, s312:N or pn:N")?;
    let n: usize = n
        .trim()
        .parse()
        .with_context(|| format!("bad size in {family:?}"))?;
    if !(2..=12).contains(&n) {
        bail!("N must be between 2 and 12");
    }
    let render = |g: FlagComplex<String>| if dot { to_dot(&g) } else { write_complex(&g) };
    let g = match kind.trim() {
        "sn" => gamma_complex_sn_hat(n).map_labels(|p| p.to_string())?,
        "s312" => gamma_complex_s312(n).map_labels(|p| p.to_string())?,
        "pn" => gamma_complex_pn(n).map_labels(|p| p.to_string())?,
        other => bail!("unknown family {other:?}; expected sn, s312 or pn"),
    };
    Ok(render(g))
}

fn run(cli: &Cli) -> Result<String, (Failure, String)> {
    let mut partial = String::new();
    let result = (|| -> Result<String, Failure> {
        match &cli.command {
            Command::Bset { source } => {
                let b = match source.parse::<NamedFamily>() {
                    Ok(family) => family.building_set(),
                    Err(_) if Path::new(source).exists() => {
                        let text = read(Path::new(source))?;
                        match parse_graph(&text) {
                            Ok(g) => graphical_building_set(&g),
                            Err(e) => {
                                return Err(anyhow!("parsing graph file {source}: {e}").into())
                            }
                        }
                    }
                    Err(e) => return Err(anyhow!("{e}").into()),
                };
                Ok(write_building_set(&b))
            }
            Command::Gamma {
                bset,
                method,
                ordering,
            } => {
                let b = load_bset(bset)?;
                let gamma = match method {
                    Method::Nested => gamma_oracle::<i128>(&b).map_err(anyhow::Error::from)?,
                    Method::Volodin => {
                        require_flag(&b)?;
                        gamma_via_volodin::<i128>(&b).map_err(anyhow::Error::from)?
                    }
                    Method::Complex => gamma_complex(&b, bset, ordering)?.f_vector::<i128>(),
                };
                Ok(format!("{}\n", gamma.trimmed()))
            }
            Command::Ordering { action } => match action {
                OrderingAction::Find {
                    bset,
                    strategy,
                    seed,
                } => {
                    let b = load_bset(bset)?;
                    require_flag(&b)?;
                    let strategy = match strategy {
                        FindStrategy::Lex => Strategy::Lex,
                        FindStrategy::Random => Strategy::Random(*seed),
                    };
                    let o = find_flag_ordering(&b, strategy).map_err(anyhow::Error::from)?;
                    Ok(write_ordering(&o))
                }
                OrderingAction::Verify { bset, ordering } => {
                    let b = load_bset(bset)?;
                    let o = parse_ordering(&read(ordering)?);
                    match o {
                        Ok(o) if o.building_set() == &b => Ok("valid\n".into()),
                        Ok(_) => {
                            partial = "invalid\n".into();
                            Err(Failure::Result(anyhow!(
                                "ordering covers a different building set"
                            )))
                        }
                        Err(nestoflag::formats::FormatError::Ordering(e)) => {
                            partial = "invalid\n".into();
                            Err(Failure::Result(anyhow!("{e}")))
                        }
                        Err(e) => Err(anyhow!("parsing {}: {e}", ordering.display()).into()),
                    }
                }
            },
            Command::Complex {
                bset,
                ordering,
                dot,
            } => {
                let b = load_bset(bset)?;
                let g = gamma_complex(&b, bset, ordering)?;
                Ok(if *dot { to_dot(&g) } else { write_complex(&g) })
            }
            Command::Np { family, dot } => Ok(np_complex(family, *dot)?),
            Command::Compare { first, second } => {
                let a = parse_complex(&read(first)?)
                    .with_context(|| format!("parsing {}", first.display()))?;
                let b = parse_complex(&read(second)?)
                    .with_context(|| format!("parsing {}", second.display()))?;
                Ok(
                    match graphs_isomorphic(&a, &b).map_err(anyhow::Error::from)? {
                        Some(map) => {
                            let pairs: Vec<String> = map
                                .iter()
                                .enumerate()
                                .map(|(i, &j)| format!("{} -> {}", a.label(i), b.label(j)))
                                .collect();
                            format!("isomorphic\n{}\n", pairs.join("\n"))
                        }
                        None => "NOT isomorphic\n".into(),
                    },
                )
            }
            Command::Verify {
                bset,
                orderings,
                seed,
                format,
                timings,
            } => {
                let b = load_bset(bset)?;
                if *orderings == 0 {
                    return Err(anyhow!("--orderings must be at least 1").into());
                }
                let mut report = match verify_triple(&b, bset, *orderings, *seed) {
                    Ok(r) => r,
                    Err(nestoflag::analysis::VerifyError::NotFlag(s)) => {
                        return Err(Failure::Result(anyhow!(
                            "not a flag building set: {s} has no split"
                        )))
                    }
                    Err(e) => return Err(anyhow!("{e}").into()),
                };
                if let Ok(family) = bset.parse::<NamedFamily>() {
                    report.reference = family.reference_formula(&report.gamma_oracle);
                }
                if !timings {
                    report.timings = None;
                }
                let text = match format {
                    Format::Text => report.to_text(),
                    Format::Structured => report.to_json() + "\n",
                };
                if report.agreement {
                    Ok(text)
                } else {
                    partial = text;
                    Err(Failure::Result(anyhow!(
                        "the three gamma computations disagree"
                    )))
                }
            }
            Command::Ffk { vector } => {
                let v = parse_vector(vector)?;
                let passes = ffk_check(&v).map_err(anyhow::Error::from)?;
                Ok(if passes { "passes\n" } else { "fails\n" }.into())
            }
        }
    })();
    result.map_err(|f| (f, partial))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err((Failure::Result(e), partial)) => {
            eprintln!("nestoflag: {e:#}");
            (partial, 1)
        }
        Err((Failure::Input(e), _)) => {
            eprintln!("nestoflag: {e:#}");
            return ExitCode::from(2);
        }
    };
    if cli.verbose {
        eprintln!("nestoflag: {} bytes of output", text.len());
    }
    if let Err(e) = emit(cli.out.as_deref(), &text) {
        eprintln!("nestoflag: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

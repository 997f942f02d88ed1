//! `polyflow`: lattice-point counts, volumes and Ehrhart polynomials of
//! flow and transportation polytopes.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use polyflow_core::cells::{self, big_cells, block_ids, sample_points, StratumIndex};
use polyflow_core::linalg::to_rational;
use polyflow_core::magic::{betti_recursion, transportation_count};
use polyflow_core::nested::{enumerate, EnumerationRequest};
use polyflow_core::residue::ResidueTerm;
use polyflow_core::{
    arrangement, Backend, ChamberCertificate, ChamberPolicy, Engine, MagicConfig, NestedSet,
    OrientedGraph, Rational, VectorConfig,
};
use polyflow_oracle as oracle;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use input::{ConfigFile, GraphFile, MarginsFile, PointsFile, Reader, TargetFile, WeightsFile};
use report::{OracleCheck, RunReport, TermRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] polyflow_core::Error),
    #[error("oracle: {0}")]
    Oracle(#[from] oracle::OracleError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use polyflow_core::Error as E;
        match self {
            CliError::Core(
                E::NotAcute | E::NotUnimodular | E::ChamberOutsideCone | E::OutsideCone,
            ) => 3,
            CliError::Core(E::Inconsistent(_)) => 1,
            CliError::Oracle(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "polyflow",
    version,
    about = "Exact lattice-point counting for flow and transportation polytopes"
)]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of lattice points of the polytope.
    Count(Problem),
    /// Lattice-normalized volume of the polytope.
    Volume(Problem),
    /// Ehrhart polynomial of the polytope in the dilation variable t.
    Ehrhart(Problem),
    /// n.b.c. bases and proper maximal nested sets.
    Nbc(NbcArgs),
    /// Big cells of the cone and classification of points.
    Cells(CellsArgs),
    /// Transportation counts and Betti numbers for M(m, n).
    Magic {
        #[command(subcommand)]
        command: MagicCommand,
    },
}

#[derive(Args, Clone)]
struct Source {
    /// Oriented graph: {"vertices": [...], "edges": [[tail, head], ...], "order": [...]}.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    graph: Option<PathBuf>,
    /// Vector configuration: {"dim": d, "vectors": [[...], ...], "order": [...]}.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge or vector order: `file`, `lex`, or a comma-separated permutation
    /// listing input positions in their new order.
    #[arg(long, default_value = "file")]
    order: String,
    /// Enumeration backend for graphs.
    #[arg(long, value_enum, default_value_t = BackendArg::Graph)]
    backend: BackendArg,
}

#[derive(Args)]
struct Problem {
    #[command(flatten)]
    source: Source,
    /// Vertex weights for --graph: {"weights": {vertex: integer, ...}}.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Target for --config: {"target": [...]}.
    #[arg(long)]
    target: Option<PathBuf>,
    /// On a wall, pick the big cell reached by moving towards this vector first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    toward: Option<Vec<i64>>,
    /// Cross-check against brute-force enumeration.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct NbcArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Keep only the nested sets adapted to this target.
    #[arg(long)]
    target: Option<PathBuf>,
    /// List the bases and nested sets (the default).
    #[arg(long, conflicts_with = "count")]
    list: bool,
    /// Only report counts.
    #[arg(long)]
    count: bool,
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct CellsArgs {
    #[command(flatten)]
    source: Source,
    /// Points to classify: {"points": [[coordinate, ...], ...]}, coordinates
    /// as integers or strings like "3/2".
    #[arg(long)]
    classify: Option<PathBuf>,
    /// Compare the n.b.c. stratifications of K random pairs of orders.
    #[arg(long, value_name = "K")]
    check_order_invariance: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compare the point partition with the all-bases oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand)]
enum MagicCommand {
    /// Non-negative integer m × n matrices with given margins.
    #[command(name = "COUNT", alias = "count")]
    Count {
        m: usize,
        n: usize,
        /// {"rows": [...], "cols": [...]}
        #[arg(long)]
        margins: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// b(m, n) from the recursion.
    #[command(name = "BETTI", alias = "betti")]
    Betti {
        m: usize,
        n: usize,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Generic,
    Graph,
}

/// An ordered arrangement, with the permutation back to input positions.
struct Loaded {
    config: VectorConfig,
    graph: Option<OrientedGraph>,
    order: Vec<usize>,
    backend: Backend,
}

impl Loaded {
    fn load(src: &Source, reader: &mut Reader) -> Result<Self, CliError> {
        let backend = match src.backend {
            BackendArg::Generic => Backend::Generic,
            BackendArg::Graph => Backend::GraphRecursive,
        };
        if let Some(path) = &src.graph {
            let (g, file_order) = reader.read::<GraphFile>(path)?.build()?;
            let order =
                input::resolve_order(&src.order, file_order, g.num_edges(), || g.lex_order())?;
            let g = g.reordered(&order)?;
            let config = polyflow_core::graph::incidence_config(&g)?;
            Ok(Loaded {
                config,
                graph: Some(g),
                order,
                backend,
            })
        } else {
            let path = src
                .config
                .as_ref()
                .expect("clap requires --graph or --config");
            let (c, file_order) = reader.read::<ConfigFile>(path)?.build()?;
            let order = input::resolve_order(&src.order, file_order, c.len(), || {
                let mut o: Vec<usize> = (0..c.len()).collect();
                o.sort_by(|&a, &b| c.vector(a).cmp(c.vector(b)));
                o
            })?;
            Ok(Loaded {
                config: c.reordered(&order)?,
                graph: None,
                order,
                backend: Backend::Generic,
            })
        }
    }

    fn target(
        &self,
        weights: &Option<PathBuf>,
        target: &Option<PathBuf>,
        reader: &mut Reader,
    ) -> Result<Option<Vec<i64>>, CliError> {
        match (&self.graph, weights, target) {
            (Some(_), _, Some(_)) => Err(CliError::Format(
                "use --weights, not --target, with --graph".into(),
            )),
            (None, Some(_), _) => Err(CliError::Format(
                "use --target, not --weights, with --config".into(),
            )),
            (Some(g), Some(w), _) => Ok(Some(reader.read::<WeightsFile>(w)?.target(g)?)),
            (None, _, Some(t)) => {
                let t = reader.read::<TargetFile>(t)?.target;
                if t.len() != self.config.ambient_dim() {
                    return Err(CliError::Format(format!(
                        "target has {} coordinates, expected {}",
                        t.len(),
                        self.config.ambient_dim()
                    )));
                }
                Ok(Some(t))
            }
            _ => Ok(None),
        }
    }

    fn engine(&self) -> Result<Engine, CliError> {
        Ok(match &self.graph {
            Some(g) => Engine::for_graph(g.clone())?.with_backend(self.backend),
            None => Engine::for_config(self.config.clone())?,
        })
    }

    fn input_positions(&self, s: polyflow_core::SubsetIdx) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|k| self.order[k]).collect();
        v.sort();
        v
    }

    fn nested_row(&self, m: &NestedSet) -> Vec<Vec<usize>> {
        m.members()
            .iter()
            .map(|&s| self.input_positions(s))
            .collect()
    }

    fn term_row<V: ToString>(&self, t: &ResidueTerm<V>) -> TermRow {
        TermRow {
            nested: self.nested_row(&t.nested),
            basis: t.basis.iter().map(|&k| self.order[k]).collect(),
            value: t.value.to_string(),
        }
    }

    fn original_vectors(&self) -> Vec<Vec<i64>> {
        let mut v = vec![Vec::new(); self.order.len()];
        for (k, &p) in self.order.iter().enumerate() {
            v[p] = self.config.vector(k).to_vec();
        }
        v
    }
}

fn need_target(t: Option<Vec<i64>>, graph: bool) -> Result<Vec<i64>, CliError> {
    t.ok_or_else(|| {
        CliError::Format(if graph {
            "--weights is required with --graph".into()
        } else {
            "--target is required with --config".into()
        })
    })
}

fn policy(toward: &Option<Vec<i64>>) -> ChamberPolicy {
    match toward {
        Some(d) => ChamberPolicy::Toward(vec![to_rational(d)]),
        None => ChamberPolicy::Canonical,
    }
}

fn chamber_detail(report: &mut RunReport, chamber: &Option<ChamberCertificate>) {
    if let Some(c) = chamber {
        let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        report.detail("chamber_base", show(&c.base));
        report.detail(
            "chamber_directions",
            c.directions
                .iter()
                .map(|d| json!(show(d)))
                .collect::<Vec<_>>(),
        );
    }
}

enum Kind {
    Count,
    Volume,
    Ehrhart,
}

fn run_problem(
    p: &Problem,
    kind: Kind,
    report: &mut RunReport,
    reader: &mut Reader,
) -> Result<(), CliError> {
    let loaded = Loaded::load(&p.source, reader)?;
    let a = need_target(
        loaded.target(&p.weights, &p.target, reader)?,
        loaded.graph.is_some(),
    )?;
    let engine = loaded.engine()?.with_policy(policy(&p.toward));
    report.detail("order", loaded.order.clone());
    let vectors = loaded.original_vectors();
    match kind {
        Kind::Count => {
            let r = engine.count(&a)?;
            report.total("count", r.total.to_string());
            report.terms = r.terms.iter().map(|t| loaded.term_row(t)).collect();
            chamber_detail(report, &r.chamber);
            if p.oracle {
                let o = oracle::brute_count(&vectors, &a)?;
                report.oracle = Some(OracleCheck {
                    value: o.to_string(),
                    agree: BigInt::from(o) == r.total,
                });
            }
        }
        Kind::Volume => {
            let r = engine.volume(&a)?;
            report.total("volume", r.total.to_string());
            report.terms = r.terms.iter().map(|t| loaded.term_row(t)).collect();
            chamber_detail(report, &r.chamber);
            if p.oracle {
                let deg = loaded.config.len() - loaded.config.rank();
                let o = if a.iter().all(|x| *x == 0) || r.chamber.is_none() {
                    r.total.clone()
                } else {
                    let coeffs = oracle::brute_ehrhart(&vectors, &a, deg)?;
                    coeffs.get(deg).cloned().unwrap_or_else(BigRational::zero)
                };
                report.oracle = Some(OracleCheck {
                    value: o.to_string(),
                    agree: o == r.total,
                });
            }
        }
        Kind::Ehrhart => {
            let r = engine.ehrhart(&a)?;
            report.total("ehrhart", r.polynomial.to_string());
            report.terms = r.terms.iter().map(|t| loaded.term_row(t)).collect();
            chamber_detail(report, &r.chamber);
            if p.oracle {
                let deg = r.polynomial.degree().unwrap_or(0);
                let coeffs = oracle::brute_ehrhart(&vectors, &a, deg)?;
                let o = polyflow_core::Poly::new(coeffs);
                report.oracle = Some(OracleCheck {
                    value: o.to_string(),
                    agree: o == r.polynomial,
                });
            }
        }
    }
    Ok(())
}

fn run_nbc(args: &NbcArgs, report: &mut RunReport, reader: &mut Reader) -> Result<(), CliError> {
    let loaded = Loaded::load(&args.source, reader)?;
    let target = loaded.target(&args.weights, &args.target, reader)?;
    let c = &loaded.config;
    let bases = arrangement::nbc_bases(c);
    let req = match &loaded.graph {
        Some(g) => EnumerationRequest {
            backend: loaded.backend,
            ..EnumerationRequest::graph(c, g)
        },
        None => EnumerationRequest::generic(c),
    };
    let all = enumerate(&req)?;
    report.detail("order", loaded.order.clone());
    report.total("nbc_bases", bases.len());
    report.total("proper_nested_sets", all.len());
    let shown = match &target {
        Some(a) => {
            let cert = ChamberCertificate::new(c, to_rational(a), &ChamberPolicy::Canonical)?;
            let adapted = enumerate(&req.adapted_to(&cert))?;
            report.total("adapted_nested_sets", adapted.len());
            adapted
        }
        None => all,
    };
    if !args.count {
        let b: Vec<Value> = bases
            .iter()
            .map(|b| {
                json!(report::list(
                    &b.indices()
                        .iter()
                        .map(|&k| loaded.order[k])
                        .collect::<Vec<_>>()
                ))
            })
            .collect();
        report.detail("bases", b);
        let key = if target.is_some() {
            "adapted"
        } else {
            "nested_sets"
        };
        let n: Vec<Value> = shown
            .iter()
            .map(|m| json!(report::sets(&loaded.nested_row(m))))
            .collect();
        report.detail(key, n);
    }
    if args.oracle {
        let o = oracle::brute_nbc_count(c.vectors());
        report.oracle = Some(OracleCheck {
            value: o.to_string(),
            agree: o == bases.len(),
        });
    }
    Ok(())
}

fn run_cells(
    args: &CellsArgs,
    report: &mut RunReport,
    reader: &mut Reader,
) -> Result<(), CliError> {
    let loaded = Loaded::load(&args.source, reader)?;
    let c = &loaded.config;
    let cells = big_cells(c)?;
    let show = |v: &[Rational]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    report.detail("order", loaded.order.clone());
    report.total("big_cells", cells.len());
    let rows: Vec<Value> = cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let adapted: Vec<String> = cell
                .adapted
                .iter()
                .map(|m| report::sets(&loaded.nested_row(m)))
                .collect();
            json!(format!(
                "cell {i}: representative ({}), {} simplicial cones, adapted [{}]",
                show(&cell.representative),
                cell.bases.len(),
                adapted.join("; ")
            ))
        })
        .collect();
    report.detail("cells", rows);

    let points = match &args.classify {
        Some(path) => Some(reader.read::<PointsFile>(path)?.build(c.ambient_dim())?),
        None => None,
    };
    if let Some(points) = &points {
        let idx = StratumIndex::new(c);
        let sigs: Vec<_> = points.iter().map(|p| idx.signature(p)).collect();
        let blocks = block_ids(&sigs);
        let rows: Vec<Value> = points
            .iter()
            .zip(&blocks)
            .map(|(p, b)| {
                let inside: Vec<String> = cells
                    .iter()
                    .enumerate()
                    .filter(|(_, cell)| cell.contains(c, p))
                    .map(|(i, _)| i.to_string())
                    .collect();
                json!(format!(
                    "({}): stratum {b}, closed cells [{}]",
                    show(p),
                    inside.join(",")
                ))
            })
            .collect();
        report.detail("points", rows);
        if args.oracle {
            let o = oracle::brute_strata(c.vectors(), points);
            report.oracle = Some(OracleCheck {
                value: format!("{} strata", o.iter().max().map_or(0, |m| m + 1)),
                agree: o == blocks,
            });
        }
    }
    if let Some(k) = args.check_order_invariance {
        let pts = points.clone().unwrap_or_else(|| sample_points(c, 200));
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut ok = true;
        for _ in 0..k {
            let mut o1: Vec<usize> = (0..c.len()).collect();
            let mut o2 = o1.clone();
            o1.shuffle(&mut rng);
            o2.shuffle(&mut rng);
            ok &= cells::order_invariance_check(c, &o1, &o2, &pts)?;
        }
        report.total("order_invariant", ok);
        if !ok {
            report.oracle = Some(OracleCheck {
                value: "stratifications differ".into(),
                agree: false,
            });
        }
    }
    Ok(())
}

fn run_magic(
    cmd: &MagicCommand,
    report: &mut RunReport,
    reader: &mut Reader,
) -> Result<(), CliError> {
    match cmd {
        MagicCommand::Count {
            m,
            n,
            margins,
            oracle: check,
        } => {
            let f = reader.read::<MarginsFile>(margins)?;
            let total = transportation_count(*m, *n, &f.rows, &f.cols)?;
            report.total("count", total.to_string());
            if *check {
                let o = oracle::brute_transportation(&f.rows, &f.cols);
                report.oracle = Some(OracleCheck {
                    value: o.to_string(),
                    agree: BigInt::from(o) == total,
                });
            }
        }
        MagicCommand::Betti {
            m,
            n,
            oracle: check,
        } => {
            if *m == 0 || *n == 0 {
                return Err(CliError::Format("m and n must be at least 1".into()));
            }
            let b = betti_recursion(*m, *n);
            report.total("betti", b.to_string());
            if *check {
                let mc = MagicConfig::new(*m, *n)?;
                let o = oracle::brute_nbc_count(mc.config().vectors());
                report.oracle = Some(OracleCheck {
                    value: o.to_string(),
                    agree: BigInt::from(o) == b,
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut reader = Reader::default();
    let mut report = RunReport::new(argv, String::new());
    let result = match &cli.command {
        Command::Count(p) => run_problem(p, Kind::Count, &mut report, &mut reader),
        Command::Volume(p) => run_problem(p, Kind::Volume, &mut report, &mut reader),
        Command::Ehrhart(p) => run_problem(p, Kind::Ehrhart, &mut report, &mut reader),
        Command::Nbc(a) => run_nbc(a, &mut report, &mut reader),
        Command::Cells(a) => run_cells(a, &mut report, &mut reader),
        Command::Magic { command } => run_magic(command, &mut report, &mut reader),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    report.input_digest = reader.digest();
    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
    if report.agrees() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(4)
    }
}

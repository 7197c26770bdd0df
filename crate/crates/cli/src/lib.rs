//! The `pebalg` command line. `run` does all the work so tests can drive
//! it in process; `main` only forwards the exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pebalg::algebra::{FieldSpec, DEFAULT_DIMENSION_CAP};
use pebalg::decide::{feasible, min_degree, ns_feasible};
use pebalg::formulas::{encode, pebbling_formula, pebbling_system, CnfFormula, PolySystem};
use pebalg::graphs::{generate, Dag, GraphKind};
use pebalg::json::{from_json, to_json, Document, FieldCertificate};
use pebalg::pebbling::{
    min_time_with_space, price_with_witness, tradeoff_frontier, validate_strategy_for, GameVariant, PebblingStrategy,
    SearchOptions, DEFAULT_CAP_BW,
};
use pebalg::proofs::{
    check_input_refutation, to_configurational, verify_configurational, verify_derivation, verify_ns,
    ConfigurationalProof, Derivation, InputMcRefutation, Measures, NsMode, ProofSystem,
};
use pebalg::report::{equalities, to_tsv, tradeoff, CorpusSpec, EqualityRow, TradeoffRow};
use pebalg::translate::{black_to_mc, mc_to_pebbling, normalize_to_input, ns_style_size, rev_to_ns};

#[derive(Parser, Debug)]
#[command(name = "pebalg", version, about = "Pebble games and algebraic refutations of pebbling formulas")]
struct Cli {
    /// Coefficient field for generated systems and proofs: rational, prime or prime:P.
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    /// Seed for random graphs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of searched vertices for black and reversible search.
    #[arg(long = "cap-n", global = true, default_value_t = pebalg::graphs::DEFAULT_MAX_VERTICES)]
    cap_n: usize,
    /// Same for the black-white game.
    #[arg(long = "cap-n-bw", global = true, default_value_t = DEFAULT_CAP_BW)]
    cap_n_bw: usize,
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Tab-separated output.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate or inspect graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Pebbling prices, times, frontiers and strategy validation.
    #[command(subcommand)]
    Peb(PebCmd),
    /// Pebbling formulas and their polynomial encodings.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Translate between strategies and refutations.
    #[command(subcommand)]
    Translate(TranslateCmd),
    /// Check a proof against a polynomial system.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Decide bounded-degree refutability, or find the least degree.
    Decide(DecideArgs),
    /// Corpus-wide tables.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Path,
    Pyramid,
    BinaryTree,
    Random,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Print a generated graph in the text format.
    Gen {
        family: Family,
        /// Vertex count for path and random, height for pyramid and binary-tree.
        size: usize,
        /// Edge probability for random graphs.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize a graph file.
    Show {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args, Debug)]
struct GameArgs {
    #[arg(long)]
    variant: GameVariant,
    #[arg(long)]
    graph: PathBuf,
    /// Vertex to pebble; defaults to the unique sink.
    #[arg(long)]
    target: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum PebCmd {
    /// Least space of any strategy.
    Price {
        #[command(flatten)]
        game: GameArgs,
        /// Write an optimal strategy here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Least time within a space bound.
    Time {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        space: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Least time for every space from the price up.
    Frontier {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Replay a strategy file and report its time and space.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        target: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    /// Pebbling formula of a graph in DIMACS.
    Gen {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polynomial system of a graph's pebbling formula or of a DIMACS file.
    Encode {
        #[arg(long, conflicts_with = "cnf", required_unless_present = "cnf")]
        graph: Option<PathBuf>,
        #[arg(long)]
        cnf: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum TranslateCmd {
    /// Black strategy to an input MC refutation.
    Black2mc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also report the size with each removal counted as one step.
        #[arg(long)]
        ns_style_size: bool,
    },
    /// Input MC refutation to a black strategy.
    Mc2peb {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reversible strategy to an NS certificate.
    Rev2ns {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// MC refutation of a Horn system to an input refutation.
    Normalize {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ProofArgs {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    proof: PathBuf,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// NS certificate.
    Ns {
        #[command(flatten)]
        files: ProofArgs,
        /// Check the identity in the full ring, with Boolean-axiom cofactors.
        #[arg(long)]
        explicit: bool,
    },
    /// Line-based proof under the MC rules; a backbone is checked too.
    Mc {
        #[command(flatten)]
        files: ProofArgs,
    },
    /// Line-based proof under the PC rules.
    Pc {
        #[command(flatten)]
        files: ProofArgs,
    },
    /// Configurational proof, or a line-based proof replayed as one.
    Conf {
        #[command(flatten)]
        files: ProofArgs,
    },
}

#[derive(Args, Debug)]
struct DecideArgs {
    /// ns, mc or pc.
    proof_system: ProofSystem,
    #[arg(long, conflicts_with = "system", required_unless_present = "system")]
    graph: Option<PathBuf>,
    #[arg(long)]
    system: Option<PathBuf>,
    /// Decide this degree only.
    #[arg(long)]
    degree: Option<usize>,
    /// Upper end of the least-degree scan; defaults to variables + 1.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest monomial basis to build.
    #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
    dim_cap: usize,
    /// Write an NS certificate of the decided degree here.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct CorpusArgs {
    /// Every single-sink DAG on up to this many vertices (at most 6).
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    #[arg(long, default_value_t = 16)]
    path_max: usize,
    #[arg(long, default_value_t = 3)]
    pyramid_max: usize,
    #[arg(long, default_value_t = 3)]
    tree_max: usize,
}

impl From<CorpusArgs> for CorpusSpec {
    fn from(a: CorpusArgs) -> Self {
        CorpusSpec { nmax: a.nmax, path_max: a.path_max, pyramid_max: a.pyramid_max, tree_max: a.tree_max }
    }
}

#[derive(Subcommand, Debug)]
enum ReportCmd {
    /// Prices against least refutation degrees.
    Equalities {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Time-space frontiers.
    Tradeoff {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_delimiter = ',', default_value = "black,reversible")]
        variants: Vec<GameVariant>,
    },
}

/// Why a command did not succeed, and with which exit code.
#[derive(Debug)]
enum Failure {
    /// Bad arguments, unreadable or malformed files: exit 2.
    Usage(String),
    /// Invalid proof or strategy, infeasible request: exit 1.
    Invalid(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Tsv,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    field: FieldSpec,
    seed: u64,
    opts: SearchOptions,
    format: Format,
}

impl Ctx<'_> {
    fn line(&mut self, text: impl std::fmt::Display) -> Outcome {
        writeln!(self.out, "{text}").map_err(usage)
    }

    fn emit_json(&mut self, v: serde_json::Value) -> Outcome {
        self.line(serde_json::to_string_pretty(&v).expect("values serialize"))
    }

    fn search_opts(&self, target: Option<u32>) -> SearchOptions {
        SearchOptions { target, ..self.opts }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Dag, Failure> {
    Dag::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_doc<T: Document>(path: &Path) -> Result<T, Failure> {
    from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_doc<T: Document>(path: &Path, v: &T) -> Outcome {
    write(path, &(to_json(v) + "\n"))
}

/// Run the command line on `argv` (program name first). Returns the exit
/// code; normal output goes to `out`, diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = FieldSpec::from_str_checked(&cli.field).map_err(usage).and_then(|field| {
        let mut ctx = Ctx {
            out,
            field,
            seed: cli.seed,
            opts: SearchOptions { cap_n: cli.cap_n, cap_n_bw: cli.cap_n_bw, target: None },
            format: if cli.json {
                Format::Json
            } else if cli.tsv {
                Format::Tsv
            } else {
                Format::Text
            },
        };
        dispatch(&mut ctx, cli.cmd)
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Invalid(m)) => {
            let _ = writeln!(err, "invalid: {m}");
            1
        }
    }
}

trait FieldArg: Sized {
    fn from_str_checked(s: &str) -> Result<Self, String>;
}

impl FieldArg for FieldSpec {
    fn from_str_checked(s: &str) -> Result<Self, String> {
        s.parse::<FieldSpec>().and_then(FieldSpec::validate).map_err(|e| format!("--field {s}: {e}"))
    }
}

fn dispatch(ctx: &mut Ctx, cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Graph(c) => graph_cmd(ctx, c),
        Cmd::Peb(c) => peb_cmd(ctx, c),
        Cmd::Formula(c) => formula_cmd(ctx, c),
        Cmd::Translate(c) => translate_cmd(ctx, c),
        Cmd::Verify(c) => verify_cmd(ctx, c),
        Cmd::Decide(a) => decide_cmd(ctx, a),
        Cmd::Report(c) => report_cmd(ctx, c),
    }
}

fn graph_cmd(ctx: &mut Ctx, cmd: GraphCmd) -> Outcome {
    match cmd {
        GraphCmd::Gen { family, size, p, out } => {
            let kind = match family {
                Family::Path => GraphKind::Path { n: size },
                Family::Pyramid => GraphKind::Pyramid { height: size },
                Family::BinaryTree => GraphKind::BinaryTree { height: size },
                Family::Random => GraphKind::Random { n: size, p, seed: ctx.seed },
            };
            let text = generate(kind).map_err(usage)?.render();
            match out {
                Some(path) => write(&path, &text),
                None => write!(ctx.out, "{text}").map_err(usage),
            }
        }
        GraphCmd::Show { graph } => {
            let dag = read_graph(&graph)?;
            let sink = dag.sink();
            if ctx.format == Format::Json {
                return ctx.emit_json(json!({
                    "vertices": dag.n(),
                    "edges": dag.edge_count(),
                    "sink": sink,
                    "sinks": dag.sinks(),
                    "sources": dag.sources(),
                    "max_in_degree": dag.max_in_degree(),
                }));
            }
            ctx.line(format!("vertices\t{}", dag.n()))?;
            ctx.line(format!("edges\t{}", dag.edge_count()))?;
            ctx.line(format!("sink\t{}", sink.map(|z| dag.name(z)).unwrap_or_else(|| "none".into())))?;
            let sources: Vec<String> = dag.sources().into_iter().map(|v| dag.name(v)).collect();
            ctx.line(format!("sources\t{}", sources.join(" ")))?;
            ctx.line(format!("max_in_degree\t{}", dag.max_in_degree()))
        }
    }
}

fn peb_cmd(ctx: &mut Ctx, cmd: PebCmd) -> Outcome {
    match cmd {
        PebCmd::Price { game, witness } => {
            let dag = read_graph(&game.graph)?;
            let opts = ctx.search_opts(game.target);
            let (price, strategy) = price_with_witness(&dag, game.variant, &opts).map_err(invalid)?;
            if let Some(path) = witness {
                write_doc(&path, &strategy)?;
            }
            match ctx.format {
                Format::Json => ctx.emit_json(json!({ "variant": game.variant, "price": price })),
                _ => ctx.line(price),
            }
        }
        PebCmd::Time { game, space, witness } => {
            let dag = read_graph(&game.graph)?;
            let opts = ctx.search_opts(game.target);
            let result = min_time_with_space(&dag, game.variant, space, &opts).map_err(invalid)?;
            let Some(found) = result else {
                if ctx.format == Format::Json {
                    ctx.emit_json(json!({ "variant": game.variant, "space": space, "min_time": null }))?;
                }
                return Err(invalid(format!("no {} strategy within space {space}", game.variant)));
            };
            if let Some(path) = witness {
                write_doc(&path, &found.witness)?;
            }
            match ctx.format {
                Format::Json => ctx.emit_json(json!({ "variant": game.variant, "space": space, "min_time": found.time })),
                _ => ctx.line(found.time),
            }
        }
        PebCmd::Frontier { game } => {
            let dag = read_graph(&game.graph)?;
            let opts = ctx.search_opts(game.target);
            let points = tradeoff_frontier(&dag, game.variant, &opts).map_err(invalid)?;
            match ctx.format {
                Format::Json => ctx.emit_json(json!({ "variant": game.variant, "frontier": points })),
                _ => {
                    let rows = points.iter().map(|p| vec![p.space.to_string(), p.min_time.to_string()]);
                    write!(ctx.out, "{}", to_tsv(&["space", "min_time"], rows)).map_err(usage)
                }
            }
        }
        PebCmd::Validate { graph, strategy, target } => {
            let dag = read_graph(&graph)?;
            let s: PebblingStrategy = read_doc(&strategy)?;
            let target = match target.or(dag.sink()) {
                Some(t) => t,
                None => return Err(usage("the graph has several sinks; pass --target")),
            };
            let m = validate_strategy_for(&dag, &s, target).map_err(invalid)?;
            match ctx.format {
                Format::Json => ctx.emit_json(json!({ "valid": true, "variant": s.variant, "time": m.time, "space": m.space })),
                _ => {
                    ctx.line(format!("time\t{}", m.time))?;
                    ctx.line(format!("space\t{}", m.space))
                }
            }
        }
    }
}

fn output(ctx: &mut Ctx, out: Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => write(&path, text),
        None => write!(ctx.out, "{text}").map_err(usage),
    }
}

fn formula_cmd(ctx: &mut Ctx, cmd: FormulaCmd) -> Outcome {
    match cmd {
        FormulaCmd::Gen { graph, out } => {
            let dag = read_graph(&graph)?;
            let f = pebbling_formula(&dag).map_err(invalid)?;
            output(ctx, out, &f.to_dimacs())
        }
        FormulaCmd::Encode { graph, cnf, out } => {
            let sys = match (graph, cnf) {
                (Some(g), _) => pebbling_system(&read_graph(&g)?, ctx.field).map_err(invalid)?,
                (None, Some(c)) => {
                    let f = CnfFormula::parse_dimacs(&read(&c)?).map_err(|e| usage(format!("{}: {e}", c.display())))?;
                    encode(&f, ctx.field).map_err(invalid)?
                }
                (None, None) => return Err(usage("pass --graph or --cnf")),
            };
            output(ctx, out, &(to_json(&sys) + "\n"))
        }
    }
}

fn measures_out(ctx: &mut Ctx, m: &Measures, extra: &[(&str, usize)]) -> Outcome {
    if ctx.format == Format::Json {
        let mut v = serde_json::to_value(m).expect("measures serialize");
        v["valid"] = json!(true);
        for (k, x) in extra {
            v[*k] = json!(x);
        }
        return ctx.emit_json(v);
    }
    ctx.line(format!("degree\t{}", m.degree))?;
    ctx.line(format!("size\t{}", m.size))?;
    let optional = [("derived_size", m.derived_size), ("cofactor_size", m.cofactor_size), ("vspace", m.vspace)];
    for (k, v) in optional {
        if let Some(v) = v {
            ctx.line(format!("{k}\t{v}"))?;
        }
    }
    for (k, v) in extra {
        ctx.line(format!("{k}\t{v}"))?;
    }
    Ok(())
}

fn translate_cmd(ctx: &mut Ctx, cmd: TranslateCmd) -> Outcome {
    match cmd {
        TranslateCmd::Black2mc { graph, strategy, out, ns_style_size: coarse } => {
            let dag = read_graph(&graph)?;
            let s: PebblingStrategy = read_doc(&strategy)?;
            let r = black_to_mc(&dag, &s, ctx.field).map_err(invalid)?;
            let sys = pebbling_system(&dag, ctx.field).map_err(invalid)?;
            let m = check_input_refutation(&sys, &r).map_err(invalid)?;
            write_doc(&out, &r)?;
            let extra = if coarse { vec![("ns_style_size", ns_style_size(&r))] } else { vec![] };
            measures_out(ctx, &m, &extra)
        }
        TranslateCmd::Mc2peb { graph, proof, out } => {
            let dag = read_graph(&graph)?;
            let r: InputMcRefutation = read_doc(&proof)?;
            let s = mc_to_pebbling(&dag, &r).map_err(invalid)?;
            let m = validate_strategy_for(&dag, &s, dag.sink().expect("checked by the translation")).map_err(invalid)?;
            write_doc(&out, &s)?;
            match ctx.format {
                Format::Json => ctx.emit_json(json!({ "time": m.time, "space": m.space })),
                _ => {
                    ctx.line(format!("time\t{}", m.time))?;
                    ctx.line(format!("space\t{}", m.space))
                }
            }
        }
        TranslateCmd::Rev2ns { graph, strategy, out } => {
            let dag = read_graph(&graph)?;
            let s: PebblingStrategy = read_doc(&strategy)?;
            let cert = rev_to_ns(&dag, &s, ctx.field).map_err(invalid)?;
            let sys = pebbling_system(&dag, ctx.field).map_err(invalid)?;
            let m = verify_ns(&sys, &cert, NsMode::Multilinear).map_err(invalid)?;
            write_doc(&out, &FieldCertificate { field: ctx.field, cert })?;
            measures_out(ctx, &m, &[])
        }
        TranslateCmd::Normalize { system, proof, out } => {
            let sys: PolySystem = read_doc(&system)?;
            let d: Derivation = read_doc(&proof)?;
            let r = normalize_to_input(&sys, &d).map_err(invalid)?;
            let m = check_input_refutation(&sys, &r).map_err(invalid)?;
            write_doc(&out, &r)?;
            measures_out(ctx, &m, &[])
        }
    }
}

fn verify_cmd(ctx: &mut Ctx, cmd: VerifyCmd) -> Outcome {
    match cmd {
        VerifyCmd::Ns { files, explicit } => {
            let sys: PolySystem = read_doc(&files.system)?;
            let fc: FieldCertificate = read_doc(&files.proof)?;
            let mode = if explicit { NsMode::Explicit } else { NsMode::Multilinear };
            let m = verify_ns(&sys, &fc.cert, mode).map_err(invalid)?;
            measures_out(ctx, &m, &[])
        }
        VerifyCmd::Mc { files } => verify_lines(ctx, &files, ProofSystem::Mc),
        VerifyCmd::Pc { files } => verify_lines(ctx, &files, ProofSystem::Pc),
        VerifyCmd::Conf { files } => {
            let sys: PolySystem = read_doc(&files.system)?;
            let text = read(&files.proof)?;
            let c: ConfigurationalProof = match from_json::<ConfigurationalProof>(&text) {
                Ok(c) => c,
                Err(conf_err) => match from_json::<Derivation>(&text) {
                    Ok(d) => to_configurational(&d),
                    Err(_) => return Err(usage(format!("{}: {conf_err}", files.proof.display()))),
                },
            };
            let m = verify_configurational(&sys, &c).map_err(invalid)?;
            measures_out(ctx, &m, &[])
        }
    }
}

/// Verify under the rules of `system`, whatever the file says; an MC proof
/// that carries a backbone must also be an input refutation.
fn verify_lines(ctx: &mut Ctx, files: &ProofArgs, system: ProofSystem) -> Outcome {
    let sys: PolySystem = read_doc(&files.system)?;
    let text = read(&files.proof)?;
    let m = match from_json::<InputMcRefutation>(&text) {
        Ok(mut r) if system == ProofSystem::Mc => {
            r.derivation = r.derivation.relabel(ProofSystem::Mc);
            check_input_refutation(&sys, &r).map_err(invalid)?
        }
        _ => {
            let d: Derivation = from_json(&text).map_err(|e| usage(format!("{}: {e}", files.proof.display())))?;
            verify_derivation(&sys, &d.relabel(system)).map_err(invalid)?
        }
    };
    measures_out(ctx, &m, &[])
}

fn decide_cmd(ctx: &mut Ctx, a: DecideArgs) -> Outcome {
    let sys = match (&a.graph, &a.system) {
        (Some(g), _) => pebbling_system(&read_graph(g)?, ctx.field).map_err(invalid)?,
        (None, Some(s)) => read_doc::<PolySystem>(s)?,
        (None, None) => return Err(usage("pass --graph or --system")),
    };
    if a.certificate.is_some() && a.proof_system != ProofSystem::Ns {
        return Err(usage("--certificate is only available for ns"));
    }
    let degree = match a.degree {
        Some(d) => feasible(&sys, a.proof_system, d, a.dim_cap).map_err(invalid)?.then_some(d),
        None => {
            let d_max = a.max_degree.unwrap_or(sys.num_vars + 1);
            min_degree(&sys, a.proof_system, d_max, a.dim_cap).map_err(invalid)?
        }
    };
    if let (Some(path), Some(d)) = (&a.certificate, degree) {
        let cert = ns_feasible(&sys, d, a.dim_cap).map_err(invalid)?.expect("decided feasible above");
        write_doc(path, &FieldCertificate { field: sys.field, cert })?;
    }
    if ctx.format == Format::Json {
        ctx.emit_json(json!({ "proof_system": a.proof_system, "feasible": degree.is_some(), "degree": degree }))?;
    } else if let Some(d) = degree {
        ctx.line(d)?;
    }
    match (degree, a.degree) {
        (Some(_), _) => Ok(()),
        (None, Some(d)) => Err(invalid(format!("no {} refutation of degree {d}", a.proof_system))),
        (None, None) => Err(invalid(format!("no {} refutation within the scanned degrees", a.proof_system))),
    }
}

fn report_cmd(ctx: &mut Ctx, cmd: ReportCmd) -> Outcome {
    match cmd {
        ReportCmd::Equalities { corpus } => {
            let rows = equalities(&corpus.into(), ctx.field, &ctx.opts).map_err(invalid)?;
            if ctx.format == Format::Json {
                return ctx.emit_json(serde_json::to_value(&rows).expect("rows serialize"));
            }
            let text = to_tsv(&EqualityRow::HEADER, rows.iter().map(EqualityRow::cells));
            write!(ctx.out, "{text}").map_err(usage)?;
            let broken: Vec<&str> = rows.iter().filter(|r| !(r.mc_eq_black && r.ns_eq_rev)).map(|r| r.graph.as_str()).collect();
            if broken.is_empty() {
                Ok(())
            } else {
                Err(invalid(format!("equalities fail on {}", broken.join(", "))))
            }
        }
        ReportCmd::Tradeoff { corpus, variants } => {
            let rows = tradeoff(&corpus.into(), &variants, &ctx.opts).map_err(invalid)?;
            if ctx.format == Format::Json {
                return ctx.emit_json(serde_json::to_value(&rows).expect("rows serialize"));
            }
            write!(ctx.out, "{}", to_tsv(&TradeoffRow::HEADER, rows.iter().map(TradeoffRow::cells))).map_err(usage)
        }
    }
}

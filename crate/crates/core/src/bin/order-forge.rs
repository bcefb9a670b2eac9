use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use order_forge::arith::{compare_tables, decode, encode, verify_roundtrip, CarrierFile};
use order_forge::biorder::BiOrder;
use order_forge::bounds::{binom_tail_check, hoeffding_bound};
use order_forge::generic::{parse_constraints, run_queue, unsound_steps};
use order_forge::graph::{changelog_text, enumerate_small_cycles, generate, surgery, ColoredRegularGraph};
use order_forge::probe::{montecarlo, plant, scan, VertexOrdering};
use order_forge::report::Report;
use order_forge::shatter::{build_and_verify_witness, witness_report, PointOrder, Space};
use order_forge::suite::assemble_m0;
use order_forge::Error;

#[derive(Parser)]
#[command(name = "order-forge", version, about = "Bi-orders, colored graphs and finite-field shattering")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Where to write the main output (stdout if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Where to write the key=value report.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Arithmetic carriers.
    #[command(subcommand)]
    Arith(ArithCmd),
    /// Colored regular graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Bi-orders induced by vertex orderings.
    #[command(subcommand)]
    Probe(ProbeCmd),
    /// Search F_p^n for a monochromatic subspace and a shattering witness.
    Shatter(ShatterArgs),
    /// Realize a queue of order constraints in the rationals.
    GenericOrder {
        #[arg(long)]
        constraints: PathBuf,
    },
    /// Binomial tail bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Whole pipelines.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum ArithCmd {
    Encode {
        #[arg(long)]
        k: usize,
    },
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Verify {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Surgery {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        changelog: Option<PathBuf>,
    },
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        c: usize,
    },
}

#[derive(Subcommand)]
enum ProbeCmd {
    Scan {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: PathBuf,
        /// Bi-order file, or an inline `<2` sequence such as `0,2,1`.
        #[arg(long)]
        target: String,
    },
    Plant {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: String,
    },
    Montecarlo {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderKind {
    Lex,
    Random,
    File,
}

#[derive(Args)]
struct ShatterArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "lex")]
    order: OrderKind,
    /// Points in increasing order, for `--order file`.
    #[arg(long)]
    order_file: Option<PathBuf>,
    /// Use a random tournament instead of an order (p = 2).
    #[arg(long)]
    tournament: bool,
}

#[derive(Subcommand)]
enum BoundCmd {
    Hoeffding {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        x: f64,
    },
    Check {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    End2end {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
    },
    M0 {
        #[arg(long)]
        max_class: usize,
    },
}

/// What a command produced.
struct Done {
    artifact: Option<String>,
    report: Report,
    ok: bool,
}

impl Done {
    fn report(report: Report, ok: bool) -> Self {
        Self { artifact: None, report, ok }
    }

    fn artifact(artifact: String, report: Report) -> Self {
        Self { artifact: Some(artifact), report, ok: true }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<ColoredRegularGraph, Error> {
    ColoredRegularGraph::parse(&read(path)?)
}

fn read_target(arg: &str) -> Result<BiOrder, Error> {
    let path = Path::new(arg);
    if path.exists() {
        return BiOrder::parse(&read(path)?);
    }
    let seq = arg
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidArgument(format!("target `{arg}` is neither a file nor a sequence")))?;
    BiOrder::from_order2(seq)
}

fn run(cli: &Cli) -> Result<Done, Error> {
    let seed = cli.seed;
    Ok(match &cli.cmd {
        Cmd::Arith(ArithCmd::Encode { k }) => {
            let c = encode(*k)?;
            let mut r = Report::new();
            r.set("k", c.k)
                .set("n", c.n())
                .set("params", format!("{} {} {}", c.param_ranks[0], c.param_ranks[1], c.param_ranks[2]))
                .set("blocks", c.blocks.len());
            Done::artifact(c.to_text(), r)
        }
        Cmd::Arith(ArithCmd::Decode { input }) => {
            let file = CarrierFile::parse(&read(input)?)?;
            let t = decode(&file.biorder, file.param_ranks)?;
            let mut r = Report::new();
            r.set("n", file.biorder.len())
                .set("domain", t.domain)
                .set("add_entries", t.add.len())
                .set("mul_entries", t.mul.len());
            let k = file.k.unwrap_or(t.domain);
            let disc = compare_tables(k, &t);
            r.set("verified", u8::from(disc.is_empty()));
            let rows = t
                .add
                .iter()
                .map(|&(a, b, c)| vec!["+".into(), a.to_string(), b.to_string(), c.to_string()])
                .chain(t.mul.iter().map(|&(a, b, c)| vec!["*".into(), a.to_string(), b.to_string(), c.to_string()]))
                .collect();
            r.table(&["op", "x", "y", "z"], rows);
            Done::report(r, disc.is_empty())
        }
        Cmd::Arith(ArithCmd::Verify { k }) => {
            let disc = verify_roundtrip(*k)?;
            let mut r = Report::new();
            r.set("k", k).set("verified", u8::from(disc.is_empty()));
            let lines: Vec<Vec<String>> = disc.lines().into_iter().map(|l| vec![l]).collect();
            if !lines.is_empty() {
                r.table(&["discrepancy"], lines);
            }
            Done::report(r, disc.is_empty())
        }
        Cmd::Graph(GraphCmd::Gen { n, d }) => {
            let g = generate(*n, *d, seed)?;
            let mut r = Report::new();
            r.set("n", n).set("d", d).set("seed", seed);
            Done::artifact(g.to_text(), r)
        }
        Cmd::Graph(GraphCmd::Surgery { input, c, changelog }) => {
            let g = read_graph(input)?;
            let before = enumerate_small_cycles(&g, *c).len();
            let (h, log) = surgery(&g, *c, seed)?;
            if let Some(path) = changelog {
                fs::write(path, changelog_text(&log))?;
            }
            let mut r = Report::new();
            r.set("small_cycles_before", before)
                .set("small_cycles_after", enumerate_small_cycles(&h, *c).len())
                .set("swaps", log.len())
                .set("changed_edges", 2 * log.len());
            Done::artifact(h.to_text(), r)
        }
        Cmd::Graph(GraphCmd::Stats { input, c }) => {
            let g = read_graph(input)?;
            let cycles = enumerate_small_cycles(&g, *c);
            let mut r = Report::new();
            r.set("n", g.n())
                .set("d", g.d())
                .set("c", c)
                .set("matchings_ok", u8::from(g.check_matchings().is_ok()))
                .set("small_cycles", cycles.len())
                .set("girth_gt_c", u8::from(cycles.is_empty()));
            let rows = (2..=*c)
                .map(|s| vec![s.to_string(), cycles.iter().filter(|cy| cy.len() == s).count().to_string()])
                .collect();
            r.table(&["length", "count"], rows);
            Done::report(r, true)
        }
        Cmd::Probe(ProbeCmd::Scan { graph, order, target }) => {
            let g = read_graph(graph)?;
            let o = VertexOrdering::parse(&read(order)?)?;
            if o.len() != g.n() {
                return Err(Error::InvalidArgument("ordering and graph sizes differ".into()));
            }
            let t = read_target(target)?;
            let ws = scan(&g, &o, &t);
            let mut r = Report::new();
            r.set("target", t.label()).set("witnesses", ws.len());
            r.table(&["a", "color"], ws.iter().map(|w| vec![w.a.to_string(), w.color.to_string()]).collect());
            Done::report(r, true)
        }
        Cmd::Probe(ProbeCmd::Plant { graph, target }) => {
            let g = read_graph(graph)?;
            let t = read_target(target)?;
            let p = plant(&g, &t, seed)?;
            let mut r = Report::new();
            r.set("target", t.label()).set("a", p.a).set("color", p.color);
            Done::artifact(p.order.to_text(), r)
        }
        Cmd::Probe(ProbeCmd::Montecarlo { graph, target, trials }) => {
            let g = read_graph(graph)?;
            let t = read_target(target)?;
            Done::report(montecarlo(&g, &t, *trials, seed)?.to_report(), true)
        }
        Cmd::Shatter(a) => {
            let space = Space::new(a.p, a.n)?;
            let order = if a.tournament {
                PointOrder::random_tournament(&space, seed)?
            } else {
                match a.order {
                    OrderKind::Lex => PointOrder::Lex,
                    OrderKind::Random => PointOrder::random(&space, seed),
                    OrderKind::File => {
                        let path = a
                            .order_file
                            .as_ref()
                            .ok_or_else(|| Error::InvalidArgument("--order file needs --order-file".into()))?;
                        let seq = read(path)?
                            .split_whitespace()
                            .map(|t| t.parse::<usize>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|_| Error::InvalidArgument("order file must list point indices".into()))?;
                        PointOrder::from_sequence(&space, &seq)?
                    }
                }
            };
            match build_and_verify_witness(&space, a.k, &order) {
                Ok((w, ok)) => Done::report(witness_report(&space, &order, &w, ok), ok),
                Err(Error::NoMonochromaticSubspace { .. }) => {
                    let mut r = Report::new();
                    r.set("p", a.p).set("n", a.n).set("k", a.k).set("order", order.kind()).set("found", 0);
                    Done::report(r, false)
                }
                Err(e) => return Err(e),
            }
        }
        Cmd::GenericOrder { constraints } => {
            let cs = parse_constraints(&read(constraints)?)?;
            let st = run_queue(&cs, seed)?;
            let unsound = unsound_steps(&st, &cs);
            let realized = st.log.iter().filter(|e| e.outcome != order_forge::generic::Outcome::Skipped).count();
            let mut r = Report::new();
            r.set("constraints", cs.len())
                .set("elements", st.len())
                .set("realized", realized)
                .set("skipped", cs.len() - realized)
                .set("injective", u8::from(st.is_injective()))
                .set("sound", u8::from(unsound.is_empty()));
            let ok = st.is_injective() && unsound.is_empty();
            Done { artifact: Some(st.to_text()), report: r, ok }
        }
        Cmd::Bound(BoundCmd::Hoeffding { n, p, x }) => {
            let b = hoeffding_bound(*n, *p, *x)?;
            let mut r = Report::new();
            r.set("n", n).set("p", p).set("x", x).set("bound", order_forge::report::fmt_f64(b));
            Done::report(r, true)
        }
        Cmd::Bound(BoundCmd::Check { n, p, x, samples }) => {
            let c = binom_tail_check(*n, *p, x, *samples, seed)?;
            let ok = c.flagged() == 0;
            Done::report(c.to_report(), ok)
        }
        Cmd::Suite(SuiteCmd::End2end { k, n, d, c }) => {
            let e = order_forge::probe::end_to_end(*k, *n, *d, *c, seed)?;
            Done::report(e.to_report(), e.verified())
        }
        Cmd::Suite(SuiteCmd::M0 { max_class }) => {
            let m = assemble_m0(*max_class, seed)?;
            Done::report(m.to_report(), m.verified())
        }
    })
}

fn emit(cli: &Cli, done: &Done) -> std::io::Result<()> {
    let report = done.report.to_string();
    match (&done.artifact, &cli.out) {
        (Some(a), Some(out)) => {
            fs::write(out, a)?;
            if cli.report.is_none() {
                print!("{report}");
            }
        }
        (Some(a), None) => {
            print!("{a}");
            if cli.report.is_none() {
                eprint!("{report}");
            }
        }
        (None, Some(out)) => fs::write(out, &report)?,
        (None, None) => print!("{report}"),
    }
    if let Some(path) = &cli.report {
        fs::write(path, &report)?;
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Parse { .. } | Error::Io(_) => 2,
        Error::NoMonochromaticSubspace { .. } => 1,
        Error::SurgeryStuck { .. } | Error::PlantImpossible(_) | Error::Exhausted(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let done = match run(&cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("order-forge: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(&cli, &done) {
        eprintln!("order-forge: {e}");
        return ExitCode::from(2);
    }
    if done.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

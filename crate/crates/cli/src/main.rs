use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unirow::euclid::{ge2_factor, weak_euclid, ContinuedFraction};
use unirow::farey::{self, SvgStyle, DEFAULT_WINDOW};
use unirow::graph::Graph;
use unirow::homology::{homology, loop_class, pi1_presentation, Complex2};
use unirow::matrix::Mat2;
use unirow::par::Execution;
use unirow::path::{collapse, concat, dennis_stein_loop, reduce, MoveTrace, PathWord};
use unirow::projline::{parse_vertex, vertex_label};
use unirow::words::{self, parse_word, CWord, Relator, Word};
use unirow::{Error, HeightBound, Ring};

#[derive(Parser)]
#[command(name = "unirow", version, about = "Unimodular-row graphs, E2 words and path homotopies")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Ring: Z, Z/n, Z[1/m] or quad(d), the integers of Q(sqrt d) for squarefree d < 0
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// Height bound for enumerating elements of infinite rings
    #[arg(long, global = true, default_value_t = 3)]
    height: u64,
    /// Exponent bound for enumerating units
    #[arg(long = "unit-exp", global = true, default_value_t = 1)]
    unit_exp: u32,
    /// Step limit for Euclid-style searches
    #[arg(long = "max-steps", global = true, default_value_t = unirow::euclid::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Run without the thread pool
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bounded unimodular-row graph
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Weak Euclidean algorithm
    #[command(subcommand)]
    Euclid(EuclidCmd),
    /// Write an SL2 matrix "[a,b,c,d]" as an E-word times a lower triangular matrix
    Factor { matrix: String },
    /// Path words and their moves
    #[command(subcommand)]
    Path(PathCmd),
    /// Words in C(A) and the Steinberg group
    #[command(subcommand)]
    Word(WordCmd),
    /// Loops at infinity
    #[command(subcommand)]
    Loop(LoopCmd),
    /// Homology of the clique complex of the bounded graph
    Homology(ComplexArgs),
    /// Spanning-tree presentation of the fundamental group
    Pi1 {
        #[command(flatten)]
        complex: ComplexArgs,
        /// Base vertex (defaults to the first vertex, which is infinity)
        #[arg(long)]
        base: Option<String>,
    },
    /// The Farey picture of Gamma(Z, n)
    #[command(subcommand)]
    Farey(FareyCmd),
}

#[derive(Args, Clone)]
struct ComplexArgs {
    /// Use the Farey truncation of level n over Z instead of the height bound
    #[arg(long)]
    farey: Option<u32>,
    /// Number of unit strips for --farey
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: u32,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Vertices and edges
    Build(ComplexArgs),
    /// Connected components
    Components(ComplexArgs),
    /// All k-cliques
    Cliques {
        #[command(flatten)]
        complex: ComplexArgs,
        /// Clique size
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum EuclidCmd {
    /// Remainder sequence of the row (a, b)
    Trace { a: String, b: String },
    /// Continued fraction digits of a point: inf, p/q, [a:b] or an element
    Cf { point: String },
}

#[derive(Subcommand)]
enum PathCmd {
    /// Contract a path word "[a,b,c,d] ; (x,y,..)" as far as possible
    Reduce {
        path: Option<String>,
        /// Use the relator collapse order
        #[arg(long)]
        collapse: bool,
    },
    /// Concatenate two path words
    Concat { p: String, q: String },
    /// Replay moves (JSON list) on a path word and report the result
    Verify {
        path: String,
        #[arg(long)]
        moves: Option<String>,
    },
}

#[derive(Subcommand)]
enum WordCmd {
    /// Matrix image of a word in the ε(a) letters
    Psi { word: Option<String> },
    /// Matrix image of a Steinberg word
    Phi { word: Option<String> },
    /// Kernel word of a loop at infinity
    Lambda { path: Option<String> },
    /// Loop of a kernel word
    Theta { word: Option<String> },
    /// Relator word: alpha u v, gamma a b or delta u a
    Relator { family: String, x: String, y: String },
    /// Steinberg symbol: c u v or ds a b
    Symbol { kind: String, x: String, y: String },
}

#[derive(Subcommand)]
enum LoopCmd {
    /// The loop of the Dennis–Stein symbol D(a, b)
    DennisStein { a: String, b: String },
    /// Class of a loop in C1 / im ∂2 of the bounded complex
    Class {
        path: String,
        #[command(flatten)]
        complex: ComplexArgs,
    },
}

#[derive(Subcommand)]
enum FareyCmd {
    /// Render the embedding as SVG
    Svg {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: u32,
        /// Draw triangles unfilled
        #[arg(long)]
        no_fill: bool,
        /// Width in pixels
        #[arg(long, default_value_t = 800)]
        size: u32,
        /// Decimal digits in coordinates
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Structural checks for levels 1..=n
    Check {
        #[arg(long, default_value_t = 8)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: u32,
    },
}

struct Ctx {
    opts: Opts,
    ring: Ring,
}

impl Ctx {
    fn bound(&self) -> HeightBound {
        HeightBound::new(self.opts.height, self.opts.unit_exp)
    }

    fn exec(&self) -> Execution {
        if self.opts.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }

    fn graph(&self, c: &ComplexArgs) -> Graph {
        match c.farey {
            Some(n) => farey::gamma_z_with(n, c.window, self.exec()),
            None => unirow::graph::build_graph_with(&self.ring, self.bound(), self.exec()),
        }
    }

    fn ring_for(&self, c: &ComplexArgs) -> Ring {
        if c.farey.is_some() {
            Ring::integers()
        } else {
            self.ring.clone()
        }
    }

    fn label(&self, r: &Ring, g: &Graph, i: usize) -> String {
        vertex_label(r, &g.vertices[i])
    }

    fn bound_json(&self) -> Value {
        json!({"elem_height": self.opts.height, "unit_exponent": self.opts.unit_exp})
    }
}

/// Output text in both formats.
struct Out {
    json: String,
    table: String,
}

fn out(json: Value, table: impl Into<String>) -> Out {
    Out { json: serde_json::to_string(&json).expect("JSON output"), table: table.into() }
}

/// JSON already serialized by the library, kept byte for byte.
fn out_raw(json: String, table: impl Into<String>) -> Out {
    Out { json, table: table.into() }
}

fn stdin_or(arg: Option<String>) -> Result<String, Error> {
    match arg {
        Some(s) if s != "-" => Ok(s),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s.trim().to_string())
        }
    }
}

fn c_word(r: &Ring, s: &str) -> Result<CWord, Error> {
    match parse_word(r, s)? {
        Word::C(w) => Ok(w),
        Word::St(_) => Err(Error::Parse("expected a word in e(a) letters".into())),
    }
}

fn trace_json(t: &MoveTrace) -> Value {
    serde_json::from_str(&t.moves_json()).expect("moves JSON")
}

fn run_graph(ctx: &Ctx, cmd: &GraphCmd) -> Result<Out, Error> {
    match cmd {
        GraphCmd::Build(c) => {
            let r = ctx.ring_for(c);
            let g = ctx.graph(c);
            let mut t = format!(
                "ring {}  vertices {}  edges {}  complete {}\n",
                r.spec(),
                g.len(),
                g.edges.len(),
                g.complete
            );
            for &(i, j) in &g.edges {
                t.push_str(&format!("{} -- {}\n", ctx.label(&r, &g, i), ctx.label(&r, &g, j)));
            }
            Ok(out_raw(g.to_json(), t))
        }
        GraphCmd::Components(c) => {
            let r = ctx.ring_for(c);
            let g = ctx.graph(c);
            let comps: Vec<Vec<String>> = g
                .components()
                .iter()
                .map(|cc| cc.iter().map(|&i| ctx.label(&r, &g, i)).collect())
                .collect();
            let mut t = format!("{} component(s)\n", comps.len());
            for cc in &comps {
                t.push_str(&format!("{} vertices: {}\n", cc.len(), cc.join(", ")));
            }
            Ok(out(
                json!({"ring": r.spec(), "bound": ctx.bound_json(), "complete": g.complete, "components": comps}),
                t,
            ))
        }
        GraphCmd::Cliques { complex, k } => {
            let r = ctx.ring_for(complex);
            let g = ctx.graph(complex);
            let cl: Vec<Vec<String>> = g
                .cliques_with(*k, ctx.exec())
                .iter()
                .map(|cc| cc.iter().map(|&i| ctx.label(&r, &g, i)).collect())
                .collect();
            let mut t = format!("{} clique(s) of size {k}\n", cl.len());
            for cc in &cl {
                t.push_str(&format!("{{{}}}\n", cc.join(", ")));
            }
            Ok(out(json!({"ring": r.spec(), "k": k, "complete": g.complete, "cliques": cl}), t))
        }
    }
}

fn run_euclid(ctx: &Ctx, cmd: &EuclidCmd) -> Result<Out, Error> {
    let r = &ctx.ring;
    match cmd {
        EuclidCmd::Trace { a, b } => {
            let (a, b) = (r.parse_elem(a)?, r.parse_elem(b)?);
            let t = weak_euclid(r, &a, &b, ctx.opts.max_steps)?;
            let qs: Vec<String> = t.quotients.iter().map(|x| x.to_string()).collect();
            let rs: Vec<String> = t.remainders.iter().map(|x| x.to_string()).collect();
            let table = format!(
                "quotients: {}\nremainders: {}\nterminal unit: {}\n",
                qs.join(", "),
                rs.join(", "),
                t.terminal_unit
            );
            Ok(out(
                json!({"a": a.to_string(), "b": b.to_string(), "quotients": qs, "remainders": rs, "terminal_unit": t.terminal_unit.to_string()}),
                table,
            ))
        }
        EuclidCmd::Cf { point } => {
            let v = parse_vertex(r, point)?;
            let t = weak_euclid(r, &v.a, &v.b, ctx.opts.max_steps)?;
            let cf = ContinuedFraction { digits: t.quotients };
            let digits: Vec<String> = cf.digits.iter().map(|d| d.to_string()).collect();
            Ok(out(json!({"point": vertex_label(r, &v), "digits": digits}), format!("{cf}\n")))
        }
    }
}

fn run_path(ctx: &Ctx, cmd: &PathCmd) -> Result<Out, Error> {
    let r = &ctx.ring;
    match cmd {
        PathCmd::Reduce { path, collapse: c } => {
            let p = PathWord::parse(r, &stdin_or(path.clone())?)?;
            let (end, trace) = if *c { collapse(r, &p) } else { reduce(r, &p) };
            Ok(out(
                json!({"start": p.to_string(), "end": end.to_string(), "moves": trace_json(&trace)}),
                format!("{end}\n{} move(s)\n", trace.moves.len()),
            ))
        }
        PathCmd::Concat { p, q } => {
            let (p, q) = (PathWord::parse(r, p)?, PathWord::parse(r, q)?);
            let pq = concat(r, &p, &q)?;
            Ok(out(json!({"path": pq.to_string()}), format!("{pq}\n")))
        }
        PathCmd::Verify { path, moves } => {
            let p = PathWord::parse(r, path)?;
            let moves = match moves {
                Some(m) => MoveTrace::moves_from_json(r, m)?,
                None => Vec::new(),
            };
            let trace = MoveTrace { start: p, moves };
            let end = trace.end(r)?;
            let vs: Vec<String> = end.vertices(r).iter().map(|v| vertex_label(r, v)).collect();
            let is_loop = end.is_loop(r);
            Ok(out(
                json!({"end": end.to_string(), "vertices": vs, "is_loop": is_loop}),
                format!("{end}\nvertices: {}\nloop: {is_loop}\n", vs.join(", ")),
            ))
        }
    }
}

fn run_word(ctx: &Ctx, cmd: &WordCmd) -> Result<Out, Error> {
    let r = &ctx.ring;
    let word_out = |w: String| out(json!({"word": w}), format!("{w}\n"));
    match cmd {
        WordCmd::Psi { word } => {
            let m = words::psi(r, &c_word(r, &stdin_or(word.clone())?)?);
            Ok(out(json!({"matrix": m.to_string()}), format!("{m}\n")))
        }
        WordCmd::Phi { word } => {
            let w = match parse_word(r, &stdin_or(word.clone())?)? {
                Word::St(w) => w,
                Word::C(w) if w.is_empty() => words::StWord::empty(),
                Word::C(_) => return Err(Error::Parse("expected a Steinberg word".into())),
            };
            let m = words::phi(r, &w);
            Ok(out(json!({"matrix": m.to_string()}), format!("{m}\n")))
        }
        WordCmd::Lambda { path } => {
            let p = PathWord::parse(r, &stdin_or(path.clone())?)?;
            Ok(word_out(words::lambda(r, &p)?.to_string()))
        }
        WordCmd::Theta { word } => {
            let p = words::theta(r, &c_word(r, &stdin_or(word.clone())?)?)?;
            Ok(out(json!({"path": p.to_string()}), format!("{p}\n")))
        }
        WordCmd::Relator { family, x, y } => {
            let (x, y) = (r.parse_elem(x)?, r.parse_elem(y)?);
            let rel = match family.as_str() {
                "alpha" => Relator::Alpha(x, y),
                "gamma" => Relator::Gamma(x, y),
                "delta" => Relator::Delta(x, y),
                f => return Err(Error::Parse(format!("unknown relator family `{f}`"))),
            };
            Ok(word_out(words::relator(r, &rel)?.to_string()))
        }
        WordCmd::Symbol { kind, x, y } => {
            let (x, y) = (r.parse_elem(x)?, r.parse_elem(y)?);
            let w = match kind.as_str() {
                "c" => words::symbol_c(r, &x, &y)?,
                "ds" => words::symbol_ds(r, &x, &y)?,
                k => return Err(Error::Parse(format!("unknown symbol `{k}`"))),
            };
            Ok(word_out(w.to_string()))
        }
    }
}

fn run_loop(ctx: &Ctx, cmd: &LoopCmd) -> Result<Out, Error> {
    let r = &ctx.ring;
    match cmd {
        LoopCmd::DennisStein { a, b } => {
            let ds = dennis_stein_loop(r, &r.parse_elem(a)?, &r.parse_elem(b)?)?;
            let vs: Vec<String> = ds.short.vertices(r).iter().map(|v| vertex_label(r, v)).collect();
            Ok(out(
                json!({
                    "u": ds.u.to_string(),
                    "nine": ds.nine.to_string(),
                    "moves": trace_json(&ds.trace),
                    "loop": ds.short.to_string(),
                    "vertices": vs,
                }),
                format!(
                    "u = {}\nnine: {}\nloop: {}\nvertices: {}\n",
                    ds.u,
                    ds.nine,
                    ds.short,
                    vs.join(", ")
                ),
            ))
        }
        LoopCmd::Class { path, complex } => {
            let r = ctx.ring_for(complex);
            let p = PathWord::parse(&r, path)?;
            let c = Complex2::from_graph_with(&ctx.graph(complex), ctx.exec());
            let cls = loop_class(&r, &c, &p)?;
            let table = format!("torsion: [{}]\nfree: [{}]\n", cls.torsion.join(", "), cls.free.join(", "));
            Ok(out(serde_json::to_value(&cls).expect("class JSON"), table))
        }
    }
}

fn run(ctx: &Ctx, cmd: &Cmd) -> Result<Out, Error> {
    match cmd {
        Cmd::Graph(g) => run_graph(ctx, g),
        Cmd::Euclid(e) => run_euclid(ctx, e),
        Cmd::Factor { matrix } => {
            let r = &ctx.ring;
            let m = Mat2::parse(r, matrix)?;
            let f = ge2_factor(r, &m, ctx.opts.max_steps)?;
            let word: Vec<String> = f.word.iter().map(|a| a.to_string()).collect();
            let e_word = if word.is_empty() {
                "1".to_string()
            } else {
                word.iter().map(|a| format!("E({a})")).collect::<Vec<_>>().join("*")
            };
            Ok(out(
                json!({"word": word, "residual": f.residual.to_string()}),
                format!("{e_word} = residual * M\nresidual: {}\n", f.residual),
            ))
        }
        Cmd::Path(p) => run_path(ctx, p),
        Cmd::Word(w) => run_word(ctx, w),
        Cmd::Loop(l) => run_loop(ctx, l),
        Cmd::Homology(c) => {
            let g = ctx.graph(c);
            let h = homology(&Complex2::from_graph_with(&g, ctx.exec()));
            let torsion: Vec<String> = h.h1_torsion.iter().map(|t| format!("Z/{t}")).collect();
            let table = format!(
                "H0 = Z^{}\nH1 = Z^{}{}\ntruncated: {}\nevery edge on a triangle: {}\n",
                h.h0,
                h.h1_rank,
                if torsion.is_empty() { String::new() } else { format!(" + {}", torsion.join(" + ")) },
                h.truncated,
                h.lemma_h1_hypothesis
            );
            Ok(out_raw(h.to_json(), table))
        }
        Cmd::Pi1 { complex, base } => {
            let r = ctx.ring_for(complex);
            let g = ctx.graph(complex);
            let b = match base {
                Some(s) => g.index_of(&parse_vertex(&r, s)?)?,
                None => 0,
            };
            let c = Complex2::from_graph_with(&g, ctx.exec());
            let p = pi1_presentation(&c, b)?;
            let (rank, torsion) = p.abelianize();
            let gens: Vec<String> = p
                .generators
                .iter()
                .map(|&(i, j)| format!("{} -- {}", ctx.label(&r, &g, i), ctx.label(&r, &g, j)))
                .collect();
            let rels: Vec<String> = p
                .relators
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|&(gi, e)| if e > 0 { format!("g{gi}") } else { format!("g{gi}^-1") })
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .collect();
            let mut table = format!(
                "base {}\n{} generator(s), {} relator(s)\nabelianization: rank {rank}, torsion {torsion:?}\n",
                ctx.label(&r, &g, b),
                gens.len(),
                rels.len()
            );
            for (k, gname) in gens.iter().enumerate() {
                table.push_str(&format!("g{k}: {gname}\n"));
            }
            for rel in &rels {
                table.push_str(&format!("{rel}\n"));
            }
            Ok(out(
                json!({"base": ctx.label(&r, &g, b), "generators": gens, "relators": rels,
                       "abelianization": {"rank": rank, "torsion": torsion}}),
                table,
            ))
        }
        Cmd::Farey(FareyCmd::Svg { n, window, no_fill, size, precision }) => {
            let style = SvgStyle { precision: *precision, fill: !no_fill, size: *size };
            let svg = farey::render_svg(&farey::embed(*n, *window), &style);
            Ok(out(Value::String(svg.clone()), svg))
        }
        Cmd::Farey(FareyCmd::Check { n, window }) => {
            let reports: Vec<farey::FareyReport> = (1..=*n).map(|k| farey::check(k, *window)).collect();
            let mut table = String::new();
            for rep in &reports {
                table.push_str(&format!(
                    "n={} neighbour {} counts {} mediant {} strips {} two-triangle {} H1=0 {}\n",
                    rep.n,
                    rep.neighbour_law,
                    rep.new_point_counts,
                    rep.mediant_law,
                    rep.no_strip_crossing,
                    rep.two_triangle_law,
                    rep.h1_trivial
                ));
            }
            Ok(out(serde_json::to_value(&reports).expect("report JSON"), table))
        }
    }
}

fn render(o: Out, format: Format) -> String {
    match format {
        Format::Json => o.json + "\n",
        // only farey svg has an svg form; everything else prints its table
        Format::Svg | Format::Table => o.table,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Ring::parse(&cli.opts.ring).and_then(|ring| {
        let ctx = Ctx { opts: cli.opts.clone(), ring };
        run(&ctx, &cli.cmd)
    });
    match result {
        Ok(o) => {
            let text = render(o, cli.opts.format);
            match &cli.opts.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("cannot write {}: {e}", p.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let payload = json!({"error": e.name(), "message": e.to_string()});
            eprintln!("{payload}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}

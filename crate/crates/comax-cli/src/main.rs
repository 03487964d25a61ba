//! `comax`: build co-maximal graphs of finite commutative rings, compute
//! exact invariants, and run the structural check suite.

mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use comax_core::graph::{
    build_gamma, build_gamma_r, build_omega, collapse_false_twins_by_rows, to_dot, to_json,
};
use comax_core::invariants::{
    bipartite_class, chromatic_number, clique_number, diameter, girth, is_connected,
    split_analysis, star_class, BipartiteClass, StarClass,
};
use comax_core::ring::{BaseSpec, Limits, Ring, RingError, RingSpec};
use comax_core::theorems::{
    check_ids, registry, rows_to_csv, run_all_on, run_check_on, survey, FamilySpec, RingAnalysis,
    Verdict, VerdictStatus,
};
use parse::{parse_ring_spec, ParseError};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "comax",
    version,
    about = "Co-maximal graphs of finite commutative rings: construction, invariants, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    /// All ring elements, adjacent iff co-maximal.
    Omega,
    /// The induced subgraph on non-units outside the radical.
    Gamma,
    /// Distinct principal ideals of gamma vertices.
    GammaR,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SurveyFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print ring structure: size, units, radical, maximal ideals.
    Info {
        spec: String,
        /// Also list member elements.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Build a graph and serialize it.
    Build {
        spec: String,
        #[arg(long, value_enum)]
        graph: GraphKind,
        #[arg(long, value_enum)]
        format: BuildFormat,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the invariant vector of one graph.
    Invariants {
        spec: String,
        #[arg(long, value_enum)]
        graph: GraphKind,
    },
    /// Run registry checks; exit 1 if any fails.
    Verify {
        spec: String,
        /// Check ids to run (repeatable); default is the whole registry.
        #[arg(long = "check")]
        checks: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep a ring family and print per-ring invariant rows.
    Survey {
        /// Z_n range, inclusive: LO..HI
        #[arg(long)]
        zn: Option<String>,
        /// Products of bases: BASES:MAXFACTORS, e.g. Z2,Z3,GF(4):3
        #[arg(long)]
        products: Option<String>,
        /// Explicit comma-separated ring specs.
        #[arg(long)]
        explicit: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: SurveyFormat,
        /// Evaluate up to N rings concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Suppress the metadata header.
        #[arg(long)]
        no_header: bool,
    },
    /// Operate on the quotient by the Jacobson radical.
    Quotient {
        spec: String,
        /// Quotient by J(R) (the only supported modulus).
        #[arg(long)]
        mod_radical: bool,
        #[arg(short, long)]
        verbose: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Parse(ParseError),
    Ring(RingError),
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Ring(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Ring(
                RingError::SizeCapExceeded { .. } | RingError::LatticeGuardExceeded { .. },
            ) => 3,
            CliError::Ring(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Ring(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() {
    // Die quietly when the output pipe closes under us.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn build_ring(spec_text: &str) -> Result<Ring, CliError> {
    let spec = parse_ring_spec(spec_text)?;
    Ok(Ring::new(spec)?)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Info { spec, verbose } => {
            let ring = build_ring(&spec)?;
            print_info(&ring, verbose);
            Ok(0)
        }
        Command::Build {
            spec,
            graph,
            format,
            out,
        } => {
            let ring = build_ring(&spec)?;
            let g = match graph {
                GraphKind::Omega => build_omega(&ring),
                GraphKind::Gamma => build_gamma(&ring),
                GraphKind::GammaR => build_gamma_r(&ring),
            };
            let text = match format {
                BuildFormat::Dot => to_dot(&g),
                BuildFormat::Json => {
                    let mut t = to_json(&g);
                    t.push('\n');
                    t
                }
            };
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Invariants { spec, graph } => {
            let ring = build_ring(&spec)?;
            let (name, g) = match graph {
                GraphKind::Omega => ("omega", build_omega(&ring)),
                GraphKind::Gamma => ("gamma", build_gamma(&ring)),
                GraphKind::GammaR => ("gamma_r", build_gamma_r(&ring)),
            };
            print_invariants(&ring, name, &g);
            Ok(0)
        }
        Command::Verify { spec, checks, json } => {
            let ring = build_ring(&spec)?;
            let analysis = RingAnalysis::new(&ring);
            let verdicts: Vec<Verdict> = if checks.is_empty() {
                run_all_on(&analysis)
            } else {
                let mut out = Vec::new();
                for id in &checks {
                    out.push(run_check_on(&analysis, id).map_err(|e| {
                        CliError::Usage(format!("{e}; known ids: {}", check_ids().join(", ")))
                    })?);
                }
                out
            };
            let n_fail = verdicts.iter().filter(|v| v.is_fail()).count();
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&verdicts).expect("serializable")
                );
            } else {
                print_verdicts(&ring, &verdicts);
            }
            Ok(if n_fail > 0 { 1 } else { 0 })
        }
        Command::Survey {
            zn,
            products,
            explicit,
            format,
            jobs,
            no_header,
        } => {
            let (family, desc) = parse_family(zn, products, explicit)?;
            let limits = Limits::default();
            let report = survey(&family, &limits, jobs.max(1));
            for (spec, reason) in &report.skipped {
                eprintln!("skipped {spec}: {reason}");
            }
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            match format {
                SurveyFormat::Csv => {
                    if !no_header {
                        writeln!(out, "# comax {} survey {desc}", env!("CARGO_PKG_VERSION"))?;
                    }
                    write!(out, "{}", rows_to_csv(&report.rows))?;
                }
                SurveyFormat::Json => {
                    let mut doc = serde_json::json!({
                        "rows": serde_json::to_value(&report.rows).expect("serializable"),
                        "skipped": report.skipped,
                        "total_failed": report.total_failed,
                    });
                    if !no_header {
                        doc.as_object_mut().unwrap().insert(
                            "meta".to_string(),
                            serde_json::json!({
                                "tool": "comax",
                                "version": env!("CARGO_PKG_VERSION"),
                                "family": desc,
                            }),
                        );
                    }
                    writeln!(out, "{doc}")?;
                }
            }
            Ok(0)
        }
        Command::Quotient {
            spec,
            mod_radical,
            verbose,
        } => {
            if !mod_radical {
                return Err(CliError::Usage(
                    "quotient requires --mod-radical (the only supported modulus)".to_string(),
                ));
            }
            let ring = build_ring(&spec)?;
            let quotient = ring.quotient(&ring.jacobson_radical().clone())?;
            print_info(&quotient, verbose);
            Ok(0)
        }
    }
}

fn parse_family(
    zn: Option<String>,
    products: Option<String>,
    explicit: Option<String>,
) -> Result<(FamilySpec, String), CliError> {
    let given = [zn.is_some(), products.is_some(), explicit.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err(CliError::Usage(
            "survey needs exactly one of --zn, --products, --explicit".to_string(),
        ));
    }
    if let Some(range) = zn {
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| CliError::Usage(format!("expected LO..HI for --zn, got {range:?}")))?;
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad lower bound {lo:?}")))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad upper bound {hi:?}")))?;
        let desc = format!("zn={lo}..{hi}");
        return Ok((FamilySpec::ZnRange { lo, hi }, desc));
    }
    if let Some(text) = products {
        let (bases_text, max_text) = text.rsplit_once(':').ok_or_else(|| {
            CliError::Usage(format!(
                "expected BASES:MAXFACTORS for --products, got {text:?}"
            ))
        })?;
        let max_factors: usize = max_text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad factor count {max_text:?}")))?;
        let mut bases: Vec<BaseSpec> = Vec::new();
        for part in bases_text.split(',') {
            let spec = parse_ring_spec(part)?;
            if spec.factors.len() != 1 {
                return Err(CliError::Usage(format!(
                    "products bases must be single factors, got {part:?}"
                )));
            }
            bases.push(spec.factors[0]);
        }
        let desc = format!("products={bases_text}:{max_factors}");
        return Ok((
            FamilySpec::Products {
                bases,
                max_factors,
                size_cap: Limits::default().ring_size_cap,
            },
            desc,
        ));
    }
    let text = explicit.expect("one option is present");
    let mut specs: Vec<RingSpec> = Vec::new();
    for part in text.split(',') {
        specs.push(parse_ring_spec(part)?);
    }
    let desc = format!("explicit={text}");
    Ok((FamilySpec::Explicit(specs), desc))
}

fn members_line(members: &[comax_core::ring::Elem]) -> String {
    let items: Vec<String> = members.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn print_info(ring: &Ring, verbose: bool) {
    println!("ring: {}", ring.label());
    println!("size: {}", ring.size());
    println!("local: {}", if ring.is_local() { "yes" } else { "no" });
    if verbose {
        println!(
            "units: {} {}",
            ring.units().len(),
            members_line(ring.units())
        );
        println!(
            "radical: {} {}",
            ring.jacobson_radical().len(),
            members_line(&ring.jacobson_radical().members)
        );
        println!("maximal ideals: {}", ring.n_maximal());
        for (i, m) in ring.maximal_ideals().iter().enumerate() {
            println!("  m{i}: {} {}", m.len(), members_line(&m.members));
        }
    } else {
        println!("units: {}", ring.units().len());
        println!("radical: {}", ring.jacobson_radical().len());
        println!("maximal ideals: {}", ring.n_maximal());
    }
}

fn print_invariants(ring: &Ring, name: &str, g: &comax_core::Graph) {
    println!("graph: {name}({})", ring.label());
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    println!("connected: {}", if is_connected(g) { "yes" } else { "no" });
    println!("diameter: {}", diameter(g));
    println!("girth: {}", girth(g));
    let guard = ring.limits().solver_guard;
    let collapsed = collapse_false_twins_by_rows(g);
    let (omega, chi) = if collapsed.graph.vertex_count() <= guard {
        (
            clique_number(&collapsed.graph, guard)
                .expect("guarded")
                .to_string(),
            chromatic_number(&collapsed.graph, guard)
                .expect("guarded")
                .to_string(),
        )
    } else {
        ("na".to_string(), "na".to_string())
    };
    println!("clique_number: {omega}");
    println!("chromatic_number: {chi}");
    match bipartite_class(g) {
        BipartiteClass::NotBipartite => println!("bipartite: no"),
        BipartiteClass::Bipartite { parts } => {
            println!("bipartite: bipartite({},{})", parts.0, parts.1)
        }
        BipartiteClass::CompleteBipartite { parts } => {
            println!("bipartite: complete_bipartite({},{})", parts.0, parts.1)
        }
    }
    match star_class(g) {
        StarClass::NotStar => println!("star: no"),
        StarClass::RefinementOfStar { .. } => println!("star: refinement_of_star"),
        StarClass::Star { leaves, .. } => println!("star: star({leaves})"),
    }
    match split_analysis(g) {
        None => println!("split: no"),
        Some(p) => println!(
            "split: yes (clique={}, independent={})",
            p.clique.len(),
            p.independent.len()
        ),
    }
}

fn print_verdicts(ring: &Ring, verdicts: &[Verdict]) {
    let summary_of = |id: &str| {
        registry()
            .iter()
            .find(|c| c.id == id)
            .map(|c| c.summary)
            .unwrap_or("")
    };
    let mut pass = 0;
    let mut skip = 0;
    let mut fail = 0;
    for v in verdicts {
        match &v.status {
            VerdictStatus::Pass => {
                pass += 1;
                println!("{:<9} pass   {}", v.check_id, summary_of(v.check_id));
            }
            VerdictStatus::Skipped(reason) => {
                skip += 1;
                println!("{:<9} skip   {reason}", v.check_id);
            }
            VerdictStatus::Fail => {
                fail += 1;
                let detail = v
                    .counterexample
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                println!("{:<9} FAIL   {detail}", v.check_id);
            }
        }
    }
    println!(
        "result: {}: {pass} pass, {skip} skipped, {fail} failed",
        ring.label()
    );
}

//! Command-line surface for the exceptional nilpotent-orbit pipelines.
//!
//! Every randomized run is reproducible from its seed; identical command,
//! seed and configuration produce byte-identical JSON (output rows are
//! sorted before emission, so the thread count never changes bytes).
//!
//! Exit codes: 0 success, 2 inconclusive certificates or probably-invalid
//! diagram, 3 usage error, 4 resource budget exceeded.

use clap::{Args, Parser, Subcommand};
use exact_linalg::rat::is_integer;
use lie_orbits::algebra::{build_algebra, grade, LieAlgebra, LieElement};
use lie_orbits::centralizer::{
    adapted_h, centralizer_graded, min_double_centralizer_on, recheck_certificate,
    verify_elashvili_on, CertifyConfig, Conclusion, DoubleCenConfig, IndexCertificate,
    LowerBoundMode, Subalgebra,
};
use lie_orbits::orbits::{
    derive_seed, enumerate_orbits, find_representative, nicify, EnumeratedOrbit, SearchConfig,
    WeightedDiagram,
};
use lie_orbits::roots::{build, Kind};
use lie_orbits::tables::{load_tables, OrbitRecord};
use lie_orbits::LieError;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

const EXIT_OK: i32 = 0;
const EXIT_INCONCLUSIVE: i32 = 2;
const EXIT_USAGE: i32 = 3;
const EXIT_BUDGET: i32 = 4;

#[derive(Parser)]
#[command(
    name = "nilorb",
    about = "Nilpotent orbits of the exceptional simple Lie algebras over Q",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunOpts {
    /// RNG seed; taken from entropy (and echoed) when omitted
    #[arg(long)]
    seed: Option<u64>,
    /// random coefficients are drawn from {-b..b} \ {0}
    #[arg(long, default_value_t = 50)]
    omega_bound: i64,
    /// random trials per candidate before giving up
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// attempt exact (function-field) certification where available
    #[arg(long)]
    exact: bool,
    /// machine-readable JSON on stdout
    #[arg(long)]
    json: bool,
    /// worker threads (default: NILORB_THREADS or all cores)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the positive roots in GAP order, in both conventions
    Roots { kind: String },
    /// Enumerate the nilpotent orbits: diagram, label, representative
    Orbits {
        kind: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Find a representative for one weighted diagram
    Rep {
        kind: String,
        /// comma-separated labels in display order, e.g. 1,0 (G2)
        diagram: String,
        /// interpret the labels in GAP node order instead
        #[arg(long)]
        gap_order: bool,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Certify Elashvili's index conjecture over all orbits
    Index {
        kind: String,
        /// write the JSON certificates to this file ("-" for stdout)
        #[arg(long)]
        out: Option<String>,
        /// re-verify certificates from a JSON file instead of generating
        #[arg(long)]
        recheck: Option<String>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Minimal double-centralizer dimension per orbit
    Doublecen {
        kind: String,
        /// restrict the witness search to the C_e component of this ad-h
        /// degree
        #[arg(long)]
        restrict_degree: Option<i64>,
        #[command(flatten)]
        opts: RunOpts,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // keep clap's rendering but use the documented usage exit code
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            e.print().expect("stderr");
            std::process::exit(if is_help { EXIT_OK } else { EXIT_USAGE });
        }
    };
    let code = match cli.command {
        Command::Roots { kind } => cmd_roots(&kind),
        Command::Orbits { kind, opts } => with_pool(&opts, |o| cmd_orbits(&kind, o)),
        Command::Rep {
            kind,
            diagram,
            gap_order,
            opts,
        } => with_pool(&opts, |o| cmd_rep(&kind, &diagram, gap_order, o)),
        Command::Index {
            kind,
            out,
            recheck,
            opts,
        } => with_pool(&opts, |o| {
            cmd_index(&kind, out.as_deref(), recheck.as_deref(), o)
        }),
        Command::Doublecen {
            kind,
            restrict_degree,
            opts,
        } => with_pool(&opts, |o| cmd_doublecen(&kind, restrict_degree, o)),
    };
    std::process::exit(code);
}

fn with_pool(opts: &RunOpts, f: impl FnOnce(&RunOpts) -> i32 + Send) -> i32 {
    let threads = opts.threads.or_else(|| {
        std::env::var("NILORB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let mut opts = opts.clone();
    if opts.seed.is_none() {
        let s: u64 = rand::random();
        eprintln!("seed: {s} (use --seed {s} to reproduce)");
        opts.seed = Some(s);
    }
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(|| f(&opts)),
        None => f(&opts),
    }
}

fn parse_kind(s: &str) -> Result<Kind, i32> {
    Kind::parse(s).ok_or_else(|| {
        eprintln!("unknown type {s:?}; expected one of G2, F4, E6, E7, E8");
        EXIT_USAGE
    })
}

fn cmd_roots(kind: &str) -> i32 {
    let kind = match parse_kind(kind) {
        Ok(k) => k,
        Err(c) => return c,
    };
    let rs = build(kind);
    println!(
        "# {} positive roots (coefficients: gap = GAP numbering, display = Bourbaki numbering)",
        kind
    );
    for i in 0..rs.num_positive() {
        let gap: Vec<String> = rs.positive_roots[i].iter().map(|c| c.to_string()).collect();
        let disp: Vec<String> = rs.display_coeffs(i).iter().map(|c| c.to_string()).collect();
        println!(
            "{:3}  gap {}  display {}",
            i + 1,
            gap.join(" "),
            disp.join(" ")
        );
    }
    EXIT_OK
}

fn search_config(opts: &RunOpts) -> SearchConfig {
    SearchConfig {
        seed: opts.seed.unwrap_or(0),
        trials: opts.trials,
        omega_bound: opts.omega_bound,
        exact_validity: opts.exact,
        ..Default::default()
    }
}

fn format_element(l: &LieAlgebra, e: &LieElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (&i, c) in &e.coeffs {
        let name = l.describe_basis(i);
        if c == &exact_linalg::rat(1) {
            parts.push(name);
        } else if is_integer(c) {
            parts.push(format!("{c}*{name}"));
        } else {
            parts.push(format!("({c})*{name}"));
        }
    }
    parts.join(" + ")
}

/// Joins enumerated orbits against the golden labels where a table exists.
fn label_of(records: &[OrbitRecord], d: &WeightedDiagram) -> Option<String> {
    records
        .iter()
        .find(|r| &r.diagram == d)
        .map(|r| r.label.clone())
}

#[derive(Serialize)]
struct OrbitRow {
    diagram: String,
    diagram_gap: Vec<u8>,
    label: Option<String>,
    representative: String,
    rep_terms: Vec<(usize, String)>,
    sl2_verified: bool,
}

fn orbit_rows(l: &LieAlgebra, orbits: &[EnumeratedOrbit]) -> Vec<OrbitRow> {
    let records = load_tables(l.kind()).unwrap_or_default();
    let mut rows: Vec<OrbitRow> = orbits
        .iter()
        .map(|o| {
            let e = nicify(l, &o.triple.h, &o.rep);
            let verified = lie_orbits::orbits::complete_sl2(l, &o.triple.h, &e).is_ok();
            OrbitRow {
                diagram: o.diagram.display_string(),
                diagram_gap: o.diagram.labels().to_vec(),
                label: label_of(&records, &o.diagram),
                representative: format_element(l, &e),
                rep_terms: e
                    .coeffs
                    .iter()
                    .map(|(&i, c)| (i + 1, c.to_string()))
                    .collect(),
                sl2_verified: verified,
            }
        })
        .collect();
    rows.sort_by(|a, b| a.diagram_gap.cmp(&b.diagram_gap));
    rows
}

fn cmd_orbits(kind: &str, opts: &RunOpts) -> i32 {
    let kind = match parse_kind(kind) {
        Ok(k) => k,
        Err(c) => return c,
    };
    let l = build_algebra(build(kind));
    let orbits = enumerate_orbits(&l, &search_config(opts));
    let rows = orbit_rows(&l, &orbits);
    if opts.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
    } else {
        println!("# {} nilpotent orbits: {}", kind, rows.len());
        for r in &rows {
            println!(
                "{:24} {:10} rep: {}  [{}]",
                r.diagram,
                r.label.as_deref().unwrap_or("-"),
                r.representative,
                if r.sl2_verified {
                    "sl2 ok"
                } else {
                    "sl2 FAILED"
                }
            );
        }
    }
    if rows.iter().all(|r| r.sl2_verified) {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn cmd_rep(kind: &str, diagram: &str, gap_order: bool, opts: &RunOpts) -> i32 {
    let kind = match parse_kind(kind) {
        Ok(k) => k,
        Err(c) => return c,
    };
    let labels: Result<Vec<u8>, _> = diagram.split(',').map(|t| t.trim().parse::<u8>()).collect();
    let Ok(labels) = labels else {
        eprintln!("diagram must be comma-separated labels, e.g. 2,0");
        return EXIT_USAGE;
    };
    let d = if gap_order {
        WeightedDiagram::new(kind, labels)
    } else {
        WeightedDiagram::from_display(kind, &labels)
    };
    let d = match d {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    if d.is_zero() {
        eprintln!("the zero diagram is the zero orbit; no nonzero representative exists");
        return EXIT_USAGE;
    }
    let l = build_algebra(build(kind));
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed.unwrap_or(0));
    match find_representative(&l, &d, &mut rng, &search_config(opts)) {
        Ok((e, triple)) => {
            println!("diagram (display): {}", d.display_string());
            println!("e = {}", format_element(&l, &e));
            println!("h = {}", format_element(&l, &triple.h));
            println!("f = {}", format_element(&l, &triple.f));
            EXIT_OK
        }
        Err(LieError::ProbablyInvalidDiagram {
            trials,
            mod_successes,
        }) => {
            eprintln!(
                "no representative found after {trials} trials ({mod_successes} modular hits); \
                 the diagram is probably not a nilpotent orbit"
            );
            EXIT_INCONCLUSIVE
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

struct OrbitContext {
    e: LieElement,
    k: Subalgebra,
}

fn orbit_context(l: &LieAlgebra, o: &EnumeratedOrbit) -> Result<OrbitContext, LieError> {
    let e = nicify(l, &o.triple.h, &o.rep);
    let h = adapted_h(l, &e)?;
    let grading = grade(l, &h)?;
    let k = centralizer_graded(l, &e, &grading)?;
    Ok(OrbitContext { e, k })
}

fn cmd_index(kind: &str, out: Option<&str>, recheck: Option<&str>, opts: &RunOpts) -> i32 {
    let kind = match parse_kind(kind) {
        Ok(k) => k,
        Err(c) => return c,
    };
    let l = build_algebra(build(kind));
    if let Some(path) = recheck {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cannot read {path}: {e}");
                return EXIT_USAGE;
            }
        };
        let certs: Vec<IndexCertificate> = match serde_json::from_str(&text) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("bad certificate file: {e}");
                return EXIT_USAGE;
            }
        };
        let mut bad = 0;
        for (i, cert) in certs.iter().enumerate() {
            match recheck_certificate(&l, cert) {
                Ok(()) => println!(
                    "recheck {:3} {:24} ok",
                    i + 1,
                    cert.diagram.as_deref().unwrap_or("-")
                ),
                Err(e) => {
                    println!(
                        "recheck {:3} {:24} FAILED: {e}",
                        i + 1,
                        cert.diagram.as_deref().unwrap_or("-")
                    );
                    bad += 1;
                }
            }
        }
        return if bad == 0 { EXIT_OK } else { EXIT_INCONCLUSIVE };
    }

    let seed = opts.seed.unwrap_or(0);
    let orbits = enumerate_orbits(&l, &search_config(opts));
    let mut certs = Vec::new();
    let mut inconclusive = 0;
    for (i, o) in orbits.iter().enumerate() {
        let ctx = match orbit_context(&l, o) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("orbit {}: {e}", o.diagram.display_string());
                return EXIT_INCONCLUSIVE;
            }
        };
        let cfg = CertifyConfig {
            trials: opts.trials,
            omega_bound: opts.omega_bound,
            seed,
        };
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, i as u64));
        let cert = match verify_elashvili_on(&l, &ctx.e, &ctx.k, &mut rng, &cfg) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("orbit {}: {e}", o.diagram.display_string());
                return EXIT_INCONCLUSIVE;
            }
        };
        println!(
            "{:24} dim C = {:3}  dim K^f = {}  {}",
            o.diagram.display_string(),
            cert.dim_centralizer,
            cert.dim_kf,
            match cert.conclusion {
                Conclusion::Certified => "certified",
                Conclusion::Inconclusive => "INCONCLUSIVE",
            }
        );
        if cert.conclusion == Conclusion::Inconclusive {
            inconclusive += 1;
        }
        certs.push(cert);
    }
    let json = serde_json::to_string_pretty(&certs).expect("json");
    match out {
        Some("-") => println!("{json}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("cannot write {path}: {e}");
                return EXIT_USAGE;
            }
            eprintln!("wrote {} certificates to {path}", certs.len());
        }
        None => {
            let path = format!("certificates_{}.json", kind.name().to_lowercase());
            if let Err(e) = std::fs::write(&path, &json) {
                eprintln!("cannot write {path}: {e}");
                return EXIT_USAGE;
            }
            eprintln!("wrote {} certificates to {path}", certs.len());
        }
    }
    if inconclusive == 0 {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

#[derive(Serialize)]
struct DoubleCenRow {
    diagram: String,
    label: Option<String>,
    dim_centralizer: usize,
    min_dim: usize,
    exceeds_rank: bool,
    abelian: bool,
    mode: LowerBoundMode,
    homogeneous_witness_ok: Option<bool>,
    /// witness coordinates over the centralizer basis
    witness_t: Vec<i64>,
}

fn cmd_doublecen(kind: &str, restrict_degree: Option<i64>, opts: &RunOpts) -> i32 {
    let kind = match parse_kind(kind) {
        Ok(k) => k,
        Err(c) => return c,
    };
    let l = build_algebra(build(kind));
    let seed = opts.seed.unwrap_or(0);
    let orbits = enumerate_orbits(&l, &search_config(opts));
    let records = load_tables(kind).unwrap_or_default();
    let mut rows = Vec::new();
    let mut budget_hit = false;
    for (i, o) in orbits.iter().enumerate() {
        let ctx = match orbit_context(&l, o) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("orbit {}: {e}", o.diagram.display_string());
                return EXIT_INCONCLUSIVE;
            }
        };
        let cfg = DoubleCenConfig {
            trials: opts.trials,
            omega_bound: opts.omega_bound,
            seed,
            restrict_degree,
            homogeneous_witness_degree: Some(2),
            symbolic_dim_limit: if opts.exact { 20 } else { 10 },
            ..Default::default()
        };
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed ^ 0xDC, i as u64));
        let (report, _witness) = match min_double_centralizer_on(&l, &ctx.e, &ctx.k, &mut rng, &cfg)
        {
            Ok(r) => r,
            Err(e) => {
                eprintln!("orbit {}: {e}", o.diagram.display_string());
                return EXIT_INCONCLUSIVE;
            }
        };
        if opts.exact && report.mode == LowerBoundMode::UpperOnly {
            budget_hit = true;
        }
        rows.push(DoubleCenRow {
            diagram: o.diagram.display_string(),
            label: label_of(&records, &o.diagram),
            dim_centralizer: report.dim_centralizer,
            min_dim: report.min_dim,
            exceeds_rank: report.min_dim > l.rs.rank,
            abelian: report.abelian,
            mode: report.mode,
            homogeneous_witness_ok: report.homogeneous_witness_ok,
            witness_t: report.witness_t.clone(),
        });
    }
    rows.sort_by(|a, b| a.diagram.cmp(&b.diagram));
    if opts.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
    } else {
        println!(
            "# {} minimal double-centralizer dimensions (rank = {})",
            kind, l.rs.rank
        );
        for r in &rows {
            println!(
                "{:24} {:10} dim C_e = {:3}  min dim C_ex = {:2}{}  abelian: {}  mode: {:?}",
                r.diagram,
                r.label.as_deref().unwrap_or("-"),
                r.dim_centralizer,
                r.min_dim,
                if r.exceeds_rank {
                    "  ** exceeds rank **"
                } else {
                    ""
                },
                r.abelian,
                r.mode
            );
        }
    }
    if budget_hit {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_core::closed_forms::{poincare_table, sequence, SequenceFamily, SequenceKind};
use toric_core::graph::{build_family, parse_edge_list, parse_graph6};
use toric_core::identities::{catalog, verify_identity, IdentityId, VerificationReport};
use toric_core::{Engine, Error, Graph, InvariantReport, DEFAULT_CAP, MAX_CAP};

const CAP_ENV: &str = "TORIC_BETTI_CAP";

/// Signed a-numbers, Betti numbers and generating-function checks for toric
/// arrangements of graphs.
#[derive(Parser)]
#[command(name = "toric-betti", version)]
struct Cli {
    /// Largest vertex count the brute-force engine accepts (also TORIC_BETTI_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report of one graph.
    Invariants(InvariantsArgs),
    /// Poincaré polynomials of M(K_{p,q}) for p ≤ pmax, q ≤ qmax.
    #[command(name = "table5")]
    PoincareTable {
        #[arg(long, default_value_t = 6)]
        pmax: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check generating-function identities coefficient by coefficient.
    Verify {
        /// Identity id from `catalog`, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        /// Truncation order in the primary variables (default depends on the identity).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Integer sequence of s, a or b along a graph family, from closed forms.
    Sequence {
        #[arg(long, value_parser = ["snum", "anum", "bnum"])]
        what: String,
        /// path, cycle, complete, star (K_{1,n}) or bipartite-row:q (K_{n,q}).
        #[arg(long)]
        family: String,
        #[arg(long)]
        upto: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the identity catalog.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file, one `u v` pair per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// Named family such as path:5, cycle:6, complete:4, star:3, multipartite:2,3.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Cap(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, Failure> {
    let cap = match flag {
        Some(c) => c,
        None => match std::env::var(CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{CAP_ENV}={v} is not a vertex count")))?,
            Err(_) => DEFAULT_CAP,
        },
    };
    if cap > MAX_CAP {
        return Err(Failure::Usage(format!(
            "cap {cap} is above the supported maximum of {MAX_CAP}"
        )));
    }
    if cap > DEFAULT_CAP {
        eprintln!(
            "warning: cap {cap} above {DEFAULT_CAP}; the engine takes about 3^n steps and 2^n memory"
        );
    }
    Ok(cap)
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants(args) => {
            let cap = resolve_cap(cli.cap)?;
            let g = load_graph(&args.source, cap)?;
            let report = Engine::with_cap(cap).invariant_report(&g)?;
            render_report(&report, args.format, out);
        }
        Command::PoincareTable { pmax, qmax, format } => {
            let t = poincare_table(pmax, qmax);
            match format {
                Format::Json => {
                    out.push_str(&t.to_json());
                    out.push('\n');
                }
                Format::Csv => out.push_str(&t.to_csv()),
                Format::Text => out.push_str(&t.to_text()),
            }
        }
        Command::Verify {
            identity,
            order,
            format,
        } => {
            let ids: Vec<IdentityId> = if identity == "all" {
                IdentityId::ALL.to_vec()
            } else {
                vec![identity.parse()?]
            };
            let mut reports = Vec::new();
            for id in ids {
                reports.push(verify_identity(id, order.unwrap_or(id.default_order()))?);
            }
            render_verification(&reports, format, out);
            if reports.iter().any(|r| !r.passed) {
                return Err(Failure::Verify);
            }
        }
        Command::Sequence {
            what,
            family,
            upto,
            format,
        } => {
            let kind: SequenceKind = what.parse()?;
            let fam: SequenceFamily = family.parse()?;
            let values: Vec<String> = sequence(kind, fam, upto)
                .iter()
                .map(|v| v.to_string())
                .collect();
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string(&values).expect("serializable"));
                    out.push('\n');
                }
                Format::Csv => {
                    out.push_str("n,value\n");
                    for (n, v) in values.iter().enumerate() {
                        let _ = writeln!(out, "{n},{v}");
                    }
                }
                Format::Text => {
                    out.push_str(&values.join(","));
                    out.push('\n');
                }
            }
        }
        Command::Catalog { format } => {
            let entries = catalog();
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string_pretty(&entries).expect("serializable"));
                    out.push('\n');
                }
                Format::Csv => {
                    out.push_str("id,default_order,formula\n");
                    for e in &entries {
                        let _ = writeln!(
                            out,
                            "{},{},\"{}\"",
                            e.id,
                            e.default_order,
                            e.formula.replace('"', "\"\"")
                        );
                    }
                }
                Format::Text => {
                    for e in &entries {
                        let _ = writeln!(out, "{:<26} {}", e.id, e.formula);
                    }
                }
            }
        }
    }
    Ok(())
}

fn load_graph(src: &GraphSource, cap: usize) -> Result<Graph, Failure> {
    if let Some(path) = &src.edges {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(parse_edge_list(&text, cap)?)
    } else if let Some(s) = &src.graph6 {
        Ok(parse_graph6(s, cap)?)
    } else {
        let spec = src.family.as_deref().expect("clap enforces one source");
        Ok(build_family(&spec.parse()?, cap)?)
    }
}

fn render_report(r: &InvariantReport, format: Format, out: &mut String) {
    let json = r.to_json();
    match format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&json).expect("serializable"));
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("n,snum,anum,bnum,euler,c,sa_poly,betti,poincare\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.n,
                json.snum,
                json.anum,
                json.bnum,
                json.euler,
                json.c.join(";"),
                json.sa_poly.join(";"),
                json.betti.join(";"),
                json.poincare.join(";"),
            );
        }
        Format::Text => {
            let _ = writeln!(out, "vertices  {}", r.n);
            let _ = writeln!(out, "snum      {}", r.snum);
            let _ = writeln!(out, "anum      {}", r.anum);
            let _ = writeln!(out, "bnum      {}", r.bnum);
            let _ = writeln!(out, "c         {}", json.c.join(" "));
            let _ = writeln!(out, "sa(t)     {}", r.sa_poly.display("t"));
            let _ = writeln!(out, "betti     {}", json.betti.join(" "));
            let _ = writeln!(out, "euler     {}", r.euler);
            let _ = writeln!(out, "P(z)      {}", r.poincare.display("z"));
        }
    }
}

fn render_verification(reports: &[VerificationReport], format: Format, out: &mut String) {
    match format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(reports).expect("serializable"));
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("id,order,passed,checked,mismatch\n");
            for r in reports {
                let m = r
                    .mismatch
                    .as_ref()
                    .map(|m| {
                        format!(
                            "{} at {}: expected {} got {}",
                            m.check, m.at, m.expected, m.actual
                        )
                    })
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},\"{}\"",
                    r.id, r.order, r.passed, r.checked, m
                );
            }
        }
        Format::Text => {
            for r in reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let _ = write!(
                    out,
                    "{status} {:<26} order {:>2}  {} coefficients",
                    r.id, r.order, r.checked
                );
                if let Some(m) = &r.mismatch {
                    let _ = write!(
                        out,
                        "  first mismatch in {} at {}: expected {}, got {}",
                        m.check, m.at, m.expected, m.actual
                    );
                }
                out.push('\n');
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            let _ = writeln!(out, "{passed}/{} identities passed", reports.len());
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alliance::format::{parse_graph, parse_set, write_set};
use alliance::harness::{
    case_rng, generate, reduce, run_equiv_test, solve_source, GenParams, Kind, SourceInstance,
    SourceSolution,
};
use alliance::solver::{solve_da_with, SolverConfig};
use alliance::{is_protected, DAInstance, VertexSet};
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dalliance", version, about = "Defensive alliance checker, solver and reduction driver")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a vertex set is a defensive alliance.
    Check {
        graph: PathBuf,
        /// Vertex ids, comma or space separated.
        set: String,
        /// Forbidden ids; defaults to the file's `f` lines.
        #[arg(long)]
        forbidden: Option<String>,
        /// Size bound; defaults to the file's `k` line.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Find a minimum defensive alliance within the budget.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        /// Give up after this many search nodes.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Compile a source instance into a defensive-alliance instance.
    Reduce {
        kind: KindArg,
        input: PathBuf,
        /// Writes <prefix>.graph, <prefix>.map and, for ds-circle, <prefix>.diagram.
        output_prefix: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Map a source solution to a target alliance and check it.
    Certify {
        kind: KindArg,
        input: PathBuf,
        /// Source solution; found by brute force when omitted.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Generate random sources and check each reduction on them.
    EquivTest {
        kind: KindArg,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print a random source instance.
    Gen {
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mrss,
    Rbds,
    Vc,
    DsCircle,
    Daf,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Mrss => Kind::Mrss,
            KindArg::Rbds => Kind::Rbds,
            KindArg::Vc => Kind::Vc,
            KindArg::DsCircle => Kind::DsCircle,
            KindArg::Daf => Kind::Daf,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn params(kind: Kind, max_n: Option<usize>, budget: Option<usize>) -> GenParams {
    let mut p = GenParams::defaults(kind);
    if let Some(n) = max_n {
        p.max_n = n;
    }
    p.budget = budget;
    p
}

/// Returns whether the command succeeded in the exit-code sense.
fn run(cli: &Cli) -> Result<bool> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Check {
            graph,
            set,
            forbidden,
            budget,
        } => {
            let file = parse_graph(&read(graph)?)?;
            let g = &file.graph;
            let s = parse_set(set, g.vertex_count())?;
            let forbidden = match forbidden {
                Some(f) => parse_set(f, g.vertex_count())?,
                None => file.forbidden_set(),
            };
            let budget = budget.or(file.budget);
            let rows: Vec<_> = s
                .iter()
                .map(|v| {
                    let inside = g.deg_in(v, &s).expect("member of graph");
                    (v, inside, g.degree(v) - inside, is_protected(g, v, &s))
                })
                .collect();
            let protected = !s.is_empty() && rows.iter().all(|r| r.3);
            let avoids = s.is_disjoint(&forbidden);
            let fits = budget.is_none_or(|k| s.len() <= k);
            let ok = protected && avoids && fits;
            if json {
                let vertices: Vec<_> = rows
                    .iter()
                    .map(|(v, i, o, p)| json!({"vertex": v.0, "inside": i, "outside": o, "protected": p}))
                    .collect();
                println!(
                    "{}",
                    json!({"alliance": protected, "avoids_forbidden": avoids, "within_budget": fits, "ok": ok, "vertices": vertices})
                );
            } else {
                for (v, i, o, p) in &rows {
                    println!("{v} d_S={i} d_out={o} {}", if *p { "protected" } else { "unprotected" });
                }
                if !avoids {
                    println!("set contains forbidden vertices");
                }
                if !fits {
                    println!("set exceeds budget {}", budget.unwrap_or_default());
                }
                println!("{}", if ok { "alliance" } else { "not an alliance" });
            }
            Ok(ok)
        }
        Command::Solve {
            graph,
            budget,
            node_limit,
        } => {
            let file = parse_graph(&read(graph)?)?;
            let k = budget.or(file.budget).unwrap_or(file.graph.vertex_count());
            let forbidden = file.forbidden_set();
            let inst = DAInstance::new(file.graph, k)?;
            let config = SolverConfig {
                node_limit: *node_limit,
            };
            let found = solve_da_with(&inst, &forbidden, config)?;
            let text = found.as_ref().map(|w| write_set(&w.set));
            if json {
                println!("{}", json!({"budget": k, "feasible": found.is_some(), "witness": found.as_ref().map(|w| w.set.iter().map(|v| v.0).collect::<Vec<_>>())}));
            } else {
                match &text {
                    Some(t) => println!("alliance of size {}: {t}", found.as_ref().unwrap().size()),
                    None => println!("no alliance of size at most {k}"),
                }
            }
            Ok(found.is_some())
        }
        Command::Reduce {
            kind,
            input,
            output_prefix,
            budget,
        } => {
            let src = SourceInstance::parse((*kind).into(), &read(input)?, *budget)?;
            let reduced = reduce(&src)?;
            let with_ext = |ext: &str| {
                let mut p = output_prefix.clone().into_os_string();
                p.push(format!(".{ext}"));
                PathBuf::from(p)
            };
            let mut written = vec![with_ext("graph"), with_ext("map")];
            fs::write(&written[0], reduced.graph_text())?;
            fs::write(&written[1], reduced.gadget_text())?;
            if let Some(d) = reduced.diagram_text() {
                written.push(with_ext("diagram"));
                fs::write(&written[2], d)?;
            }
            let t = &reduced.target;
            if json {
                let files: Vec<_> = written.iter().map(|p| p.display().to_string()).collect();
                println!("{}", json!({"vertices": t.graph.vertex_count(), "edges": t.graph.edge_count(), "budget": t.budget, "forbidden": t.forbidden.len(), "files": files}));
            } else {
                println!(
                    "n={} m={} budget={} forbidden={}",
                    t.graph.vertex_count(),
                    t.graph.edge_count(),
                    t.budget,
                    t.forbidden.len()
                );
                for p in &written {
                    println!("wrote {}", p.display());
                }
            }
            Ok(true)
        }
        Command::Certify {
            kind,
            input,
            set,
            budget,
        } => {
            let kind: Kind = (*kind).into();
            let src = SourceInstance::parse(kind, &read(input)?, *budget)?;
            let solution = match set {
                Some(text) => Some(parse_solution(&src, text)?),
                None => solve_source(&src)?,
            };
            let Some(solution) = solution else {
                if json {
                    println!("{}", json!({"source_feasible": false}));
                } else {
                    println!("source instance is infeasible");
                }
                return Ok(false);
            };
            let reduced = reduce(&src)?;
            let cert = reduced.forward(&solution);
            let valid = reduced.is_feasible(&cert);
            let round_trip = reduced.extract(&cert) == solution;
            if json {
                println!("{}", json!({"source_feasible": true, "solution": solution.to_text(), "certificate_size": cert.len(), "budget": reduced.target.budget, "valid": valid, "round_trip": round_trip}));
            } else {
                println!("source solution: {}", solution.to_text());
                println!("certificate size {} (budget {})", cert.len(), reduced.target.budget);
                println!("certificate: {}", write_set(&cert));
                println!("{}", if valid { "valid" } else { "INVALID" });
                println!("round trip {}", if round_trip { "ok" } else { "FAILED" });
            }
            Ok(valid && round_trip)
        }
        Command::EquivTest {
            kind,
            count,
            seed,
            max_n,
            budget,
        } => {
            let kind: Kind = (*kind).into();
            let report = run_equiv_test(kind, *count, &params(kind, *max_n, *budget), *seed)?;
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                print!("{}", report.to_text());
                println!("digest {}", report.digest());
            }
            Ok(report.failures() == 0)
        }
        Command::Gen {
            kind,
            seed,
            max_n,
            budget,
        } => {
            let kind: Kind = (*kind).into();
            let src = generate(kind, &params(kind, *max_n, *budget), &mut case_rng(*seed, 0))?;
            print!("{}", src.to_text());
            Ok(true)
        }
    }
}

fn parse_solution(src: &SourceInstance, text: &str) -> Result<SourceSolution> {
    let limit = match src {
        SourceInstance::Mrss(i) => i.vectors.len(),
        SourceInstance::Rbds(i) => i.sources,
        SourceInstance::Vc(i) => i.graph.vertex_count(),
        SourceInstance::DsCircle(i) => i.diagram.chord_count(),
        SourceInstance::Daf(i) => i.graph.vertex_count(),
    };
    let set: VertexSet = parse_set(text, limit)?;
    Ok(match src {
        SourceInstance::Mrss(_) | SourceInstance::Rbds(_) => {
            SourceSolution::Indices(set.iter().map(|v| v.index()).collect())
        }
        SourceInstance::Daf(i) => {
            if !set.is_disjoint(&i.forbidden) {
                bail!("solution uses forbidden vertices");
            }
            SourceSolution::Vertices(set)
        }
        _ => SourceSolution::Vertices(set),
    })
}

//! Command-line interface.
//!
//! Exit codes: 0 success or valid certificate, 1 infeasible or invalid
//! certificate, 2 bad input, 3 internal invariant violation.

use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use crate::ear::{odd_ear_decomposition, EarError};
use crate::format::{
    parse_bipartite, parse_certificate, parse_graph, parse_hypergraph, write_bipartite,
    write_hypergraph, write_lu, write_partitions, CertificateJson, HypergraphFile,
};
use crate::gen::{gen_bip_regular, gen_uniform_regular, GenError, Seed};
use crate::matching::is_factor_critical;
use crate::oracle::{oracle_factor_critical, oracle_tri_partitions, OracleBudget};
use crate::partition::{
    lu_subgraph, solve_3u3r, solve_components, solve_k_uniform, solve_k_uniform_components,
    SolveError, TriMatchingPartition,
};
use crate::verify::{verify, verify_blocks, verify_lu, TriangleRule, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitStatus {
    Success = 0,
    Infeasible = 1,
    BadInput = 2,
    Internal = 3,
}

#[derive(Debug, Parser)]
#[command(
    name = "earslice",
    version,
    about = "Triangle-plus-matching partitions of regular uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Partition a hypergraph into pairs and at most one triangle.
    Solve {
        /// Hypergraph file (`-` for stdin).
        file: String,
        /// Uniformity/regularity (defaults to the file header's k).
        #[arg(long)]
        k: Option<usize>,
        /// Solve each connected component separately.
        #[arg(long)]
        components: bool,
        /// Emit JSON (one object per component with --components).
        #[arg(long)]
        json: bool,
    },
    /// Check a certificate against an instance.
    Verify {
        instance: String,
        certificate: String,
        /// Instance is a bipartite graph and the certificate lists kept edges.
        #[arg(long)]
        lu: bool,
        /// Allow one triangle per connected component.
        #[arg(long)]
        components: bool,
    },
    /// Generate a random instance.
    Gen {
        /// Vertices (hypergraph) or side size (bipartite).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraw until the shadow graph is connected.
        #[arg(long)]
        connected: bool,
        /// Emit a k-regular bipartite graph instead.
        #[arg(long)]
        bip: bool,
    },
    /// Degree-constrained subgraph of a k-regular bipartite graph.
    Lu {
        file: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the solver against exhaustive search.
    Oracle {
        file: String,
        /// Maximum vertex count for the exhaustive search.
        #[arg(long, default_value_t = 14)]
        budget: usize,
    },
    /// Print an odd ear decomposition of a graph or of a hypergraph's shadow.
    Ears {
        file: String,
        /// Slice ears until the decomposition is maximal.
        #[arg(long)]
        maximal: bool,
    },
}

struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn new(status: ExitStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn bad_input(message: impl Into<String>) -> Self {
        Self::new(ExitStatus::BadInput, message)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let status = match e {
            SolveError::NotUniform { .. }
            | SolveError::NotRegular { .. }
            | SolveError::Disconnected { .. }
            | SolveError::PreconditionViolated(_)
            | SolveError::Bipartite(_) => ExitStatus::BadInput,
            SolveError::NotFactorCritical { .. } => ExitStatus::Infeasible,
            SolveError::OddResidualComponents { .. } | SolveError::Internal(_) => {
                ExitStatus::Internal
            }
        };
        Failure::new(status, e.to_string())
    }
}

type CmdResult = Result<ExitStatus, Failure>;

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    ExitStatus::BadInput as i32
                }
            };
        }
    };
    let result = match cli.command {
        Command::Solve {
            file,
            k,
            components,
            json,
        } => cmd_solve(&file, k, components, json, out),
        Command::Verify {
            instance,
            certificate,
            lu,
            components,
        } => cmd_verify(&instance, &certificate, lu, components, out, err),
        Command::Gen {
            n,
            k,
            seed,
            connected,
            bip,
        } => cmd_gen(n, k, seed, connected, bip, out),
        Command::Lu { file, k, json } => cmd_lu(&file, k, json, out),
        Command::Oracle { file, budget } => cmd_oracle(&file, budget, out),
        Command::Ears { file, maximal } => cmd_ears(&file, maximal, out),
    };
    match result {
        Ok(status) => status as i32,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status as i32
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::bad_input(format!("{path}: {e}")))?;
    Ok(text)
}

fn load_hypergraph(path: &str) -> Result<HypergraphFile, Failure> {
    parse_hypergraph(&read_input(path)?).map_err(|e| Failure::bad_input(format!("{path}: {e}")))
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::new(ExitStatus::Internal, format!("write failed: {e}")))?;
    Ok(ExitStatus::Success)
}

fn cmd_solve(
    path: &str,
    k: Option<usize>,
    components: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let file = load_hypergraph(path)?;
    let h = &file.hypergraph;
    let k = k.unwrap_or(file.k);
    let certs: Vec<TriMatchingPartition> = match (k, components) {
        (3, false) => vec![solve_3u3r(h)?],
        (3, true) => solve_components(h)?,
        (_, false) => vec![solve_k_uniform(h, k)?],
        (_, true) => solve_k_uniform_components(h, k)?,
    };
    let text = if json {
        certs
            .iter()
            .map(|c| CertificateJson::from(c).to_line())
            .collect()
    } else {
        write_partitions(&certs)
    };
    emit(out, &text)
}

fn cmd_verify(
    instance: &str,
    certificate: &str,
    lu: bool,
    components: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let cert = parse_certificate(&read_input(certificate)?)
        .map_err(|e| Failure::bad_input(format!("{certificate}: {e}")))?;
    let report = if lu {
        let text = read_input(instance)?;
        let g =
            parse_bipartite(&text).map_err(|e| Failure::bad_input(format!("{instance}: {e}")))?;
        if !cert.triangles.is_empty() || !cert.pairs.is_empty() {
            return Err(Failure::bad_input(
                "--lu certificates contain only `keep` lines",
            ));
        }
        verify_lu(&g, &cert.keep)
    } else {
        let file = load_hypergraph(instance)?;
        if !cert.keep.is_empty() {
            return Err(Failure::bad_input("`keep` lines need --lu"));
        }
        let opts = VerifyOptions {
            triangle_rule: if file.k == 3 {
                TriangleRule::Hyperedge
            } else {
                TriangleRule::SubsetOfHyperedge
            },
            per_component: components,
        };
        verify_blocks(&file.hypergraph, &cert.triangles, &cert.pairs, opts)
    };
    if report.has_size_mismatch() {
        let _ = write!(err, "{report}");
        return Err(Failure::bad_input(
            "certificate does not match the instance size",
        ));
    }
    emit(out, &report.to_string())?;
    Ok(if report.is_ok() {
        ExitStatus::Success
    } else {
        ExitStatus::Infeasible
    })
}

fn cmd_gen(
    n: usize,
    k: usize,
    seed: u64,
    connected: bool,
    bip: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let gen_failure = |e: GenError| match e {
        GenError::InvalidParameters(_) => Failure::bad_input(e.to_string()),
        GenError::GenerationFailed(_) => Failure::new(ExitStatus::Infeasible, e.to_string()),
    };
    let text = if bip {
        write_bipartite(&gen_bip_regular(n, k, Seed(seed)).map_err(gen_failure)?)
    } else {
        write_hypergraph(
            &gen_uniform_regular(n, k, Seed(seed), connected).map_err(gen_failure)?,
            k,
        )
    };
    emit(out, &text)
}

fn cmd_lu(path: &str, k: Option<usize>, json: bool, out: &mut dyn Write) -> CmdResult {
    let g = parse_bipartite(&read_input(path)?)
        .map_err(|e| Failure::bad_input(format!("{path}: {e}")))?;
    let k = match k.or_else(|| g.regular_degree()) {
        Some(k) => k,
        None => return Err(Failure::bad_input("graph is not regular")),
    };
    let lu = lu_subgraph(&g, k)?;
    let text = if json {
        CertificateJson::from(&lu).to_line()
    } else {
        write_lu(&lu)
    };
    emit(out, &text)
}

fn cmd_oracle(path: &str, max_vertices: usize, out: &mut dyn Write) -> CmdResult {
    let file = load_hypergraph(path)?;
    let h = &file.hypergraph;
    let budget = OracleBudget {
        max_vertices,
        ..Default::default()
    };
    if h.n() > max_vertices {
        return Err(Failure::bad_input(format!(
            "budget exceeded: {} vertices, cap {max_vertices}",
            h.n()
        )));
    }
    let (cert, rule) = if file.k == 3 {
        (solve_3u3r(h)?, TriangleRule::Hyperedge)
    } else {
        (solve_k_uniform(h, file.k)?, TriangleRule::SubsetOfHyperedge)
    };
    let oracle_err = |e| Failure::bad_input(format!("budget exceeded: {e}"));
    let all = oracle_tri_partitions(h, rule, budget).map_err(oracle_err)?;
    let g = h.shadow_graph();
    let fc_engine = is_factor_critical(&g);
    let fc_oracle = oracle_factor_critical(&g, budget).map_err(oracle_err)?;
    let member = all.binary_search(&cert).is_ok();
    let valid = verify(
        h,
        &cert,
        VerifyOptions {
            triangle_rule: rule,
            per_component: false,
        },
    )
    .is_ok();
    let parity = cert.is_perfect_matching() == (h.n() % 2 == 0);
    let agree = member && valid && parity && fc_engine == fc_oracle;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let report = format!(
        "vertices {}\nsolver {}\noracle partitions {}\nmember {}\nfactor-critical engine={} oracle={}\nagreement {}\n",
        h.n(),
        cert.kind(),
        all.len(),
        yes_no(member),
        fc_engine,
        fc_oracle,
        yes_no(agree),
    );
    emit(out, &report)?;
    if agree {
        Ok(ExitStatus::Success)
    } else {
        Err(Failure::new(
            ExitStatus::Internal,
            "solver and oracle disagree",
        ))
    }
}

fn cmd_ears(path: &str, maximal: bool, out: &mut dyn Write) -> CmdResult {
    let text = read_input(path)?;
    let is_graph = text
        .lines()
        .map(str::trim_start)
        .find(|l| !l.is_empty() && !l.starts_with("c ") && *l != "c")
        .is_some_and(|l| l.split_whitespace().nth(1) == Some("gr"));
    let parse_err = |e: crate::format::ParseError| Failure::bad_input(format!("{path}: {e}"));
    let g = if is_graph {
        parse_graph(&text).map_err(parse_err)?
    } else {
        parse_hypergraph(&text)
            .map_err(parse_err)?
            .hypergraph
            .shadow_graph()
    };
    let ear_failure = |e: EarError| match e {
        EarError::NotFactorCritical { .. } | EarError::TooSmall(_) => {
            Failure::new(ExitStatus::Infeasible, e.to_string())
        }
        _ => Failure::new(ExitStatus::Internal, e.to_string()),
    };
    let mut d = odd_ear_decomposition(&g).map_err(ear_failure)?;
    if maximal {
        d = d.maximalize().map_err(ear_failure)?;
    }
    emit(out, &d.dump())
}

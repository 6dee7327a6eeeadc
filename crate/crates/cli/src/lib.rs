//! Batch command-line surface: instance generators, cover
//! construction, cover verification, and oracle queries.
//!
//! Exit codes: 0 success, 1 verification failed, 2 precondition or
//! unsupported input, 3 parse error, 4 internal assumption violation.
//! The environment variable `BERGE_SEED` is reserved and currently a
//! documented no-op: every procedure here is deterministic.

pub mod cover_format;

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand};

use pmcover::berge::{self, BergeError};
use pmcover::gen;
use pmcover::graphcore::Multigraph;
use pmcover::oracle;

#[derive(Parser)]
#[command(
    name = "pmcover",
    about = "Perfect matching covers of cubic graphs: construction, verification, oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named instance in edge-list format.
    Gen {
        /// theta, k4, prism, petersen, moebius_kantor, gp, flower
        family: String,
        /// Family parameters (gp takes n k, flower takes n).
        params: Vec<usize>,
    },
    /// Construct a perfect matching cover and print it.
    Cover {
        #[command(flatten)]
        input: GraphInput,
        /// Dispatch on whichever hypothesis applies (default).
        #[arg(long, conflicts_with_all = ["near_hamiltonian", "two_factor"])]
        auto: bool,
        /// Use the circuit-missing-one-vertex construction for this vertex.
        #[arg(long, value_name = "V", conflicts_with = "two_factor")]
        near_hamiltonian: Option<usize>,
        /// Use the 2-factor-of-two-circuits construction.
        #[arg(long)]
        two_factor: bool,
    },
    /// Check a cover file against a graph and print a report.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Cover file in the `cover k` format.
        cover: String,
    },
    /// Brute-force oracle queries.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file in edge-list format, or `-` for stdin.
    input: String,
    /// Treat the input as a graph6 string instead.
    #[arg(long)]
    graph6: bool,
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Exact minimum cover order (or a `>cap` sentinel).
    MinOrder {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Count and list all perfect matchings.
    Pms {
        #[command(flatten)]
        input: GraphInput,
    },
    /// A hamiltonian circuit, or `none`.
    Hamiltonian {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Whether the graph is hypohamiltonian.
    Hypohamiltonian {
        #[command(flatten)]
        input: GraphInput,
    },
    /// A 2-factor consisting of two circuits, or `none`.
    TwoFactor {
        #[command(flatten)]
        input: GraphInput,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.cmd {
        Command::Gen { family, params } => cmd_gen(&family, &params),
        Command::Cover { input, auto: _, near_hamiltonian, two_factor } => {
            cmd_cover(&input, near_hamiltonian, two_factor)
        }
        Command::Verify { input, cover } => cmd_verify(&input, &cover),
        Command::Oracle { query } => cmd_oracle(query),
    }
}

fn cmd_gen(family: &str, params: &[usize]) -> i32 {
    match gen::from_name(family, params) {
        Ok(g) => {
            print!("{}", g.emit_edgelist());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read_input(input: &GraphInput) -> Result<Multigraph, i32> {
    let text = if input.input == "-" {
        let mut buf = String::new();
        if std::io::stdin().read_to_string(&mut buf).is_err() {
            eprintln!("error: cannot read stdin");
            return Err(3);
        }
        buf
    } else {
        match fs::read_to_string(&input.input) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", input.input);
                return Err(3);
            }
        }
    };
    let parsed = if input.graph6 {
        Multigraph::parse_graph6(&text)
    } else {
        Multigraph::parse_edgelist(&text)
    };
    parsed.map_err(|e| {
        eprintln!("error: {e}");
        3
    })
}

fn berge_exit(e: &BergeError) -> i32 {
    match e {
        BergeError::AssumptionViolated(_) => 4,
        _ => 2,
    }
}

fn cmd_cover(input: &GraphInput, near: Option<usize>, two_factor: bool) -> i32 {
    let g = match read_input(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let result = if let Some(v) = near {
        berge::cover_near_hamiltonian(&g, v)
    } else if two_factor {
        match oracle::find_two_factor_two_circuits(&g) {
            Some((c1, c2)) => berge::cover_two_factor(&g, &c1, &c2),
            None => {
                eprintln!("error: no 2-factor with two circuits");
                return 2;
            }
        }
    } else {
        berge::cover(&g)
    };
    match result {
        Ok(cover) => {
            print!("{}", cover_format::emit_cover(&cover.matchings));
            eprintln!("# route: {}", cover.provenance_note);
            let report = oracle::verify_cover(&g, &cover.matchings);
            if report.is_valid() {
                0
            } else {
                eprintln!("{report}");
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            berge_exit(&e)
        }
    }
}

fn cmd_verify(input: &GraphInput, cover_path: &str) -> i32 {
    let g = match read_input(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let text = match fs::read_to_string(cover_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {cover_path}: {e}");
            return 3;
        }
    };
    let matchings = match cover_format::parse_cover(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let report = oracle::verify_cover(&g, &matchings);
    println!("{report}");
    if report.is_valid() {
        0
    } else {
        1
    }
}

fn cmd_oracle(query: OracleQuery) -> i32 {
    match query {
        OracleQuery::MinOrder { input, cap } => {
            let g = match read_input(&input) {
                Ok(g) => g,
                Err(code) => return code,
            };
            match oracle::min_cover_order(&g, cap) {
                Ok(order) => {
                    println!("{order}");
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        OracleQuery::Pms { input } => {
            let g = match read_input(&input) {
                Ok(g) => g,
                Err(code) => return code,
            };
            let pms = pmcover::matching::enumerate_pms(&g);
            println!("{}", pms.len());
            for pm in pms {
                println!("{pm}");
            }
            0
        }
        OracleQuery::Hamiltonian { input } => {
            let g = match read_input(&input) {
                Ok(g) => g,
                Err(code) => return code,
            };
            match oracle::hamiltonian_circuit(&g) {
                Some(c) => {
                    let walk: Vec<String> =
                        c.vertices().iter().map(|v| v.to_string()).collect();
                    println!("{}", walk.join(" "));
                }
                None => println!("none"),
            }
            0
        }
        OracleQuery::Hypohamiltonian { input } => {
            let g = match read_input(&input) {
                Ok(g) => g,
                Err(code) => return code,
            };
            println!("{}", oracle::is_hypohamiltonian(&g));
            0
        }
        OracleQuery::TwoFactor { input } => {
            let g = match read_input(&input) {
                Ok(g) => g,
                Err(code) => return code,
            };
            match oracle::find_two_factor_two_circuits(&g) {
                Some((c1, c2)) => {
                    for c in [c1, c2] {
                        let walk: Vec<String> =
                            c.vertices().iter().map(|v| v.to_string()).collect();
                        println!("{}", walk.join(" "));
                    }
                }
                None => println!("none"),
            }
            0
        }
    }
}

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use pathcount_core::analysis::{
    complexity_csv, complexity_table, er_sweep, parse_density_range, sweep_csv, validate,
};
use pathcount_core::{
    brute_force_path_matrix, closed_form_path_matrix, enumerate_paths, hamiltonian_path_matrix,
    path_matrix_ie, path_matrix_labeled, path_matrix_recursive, CountMatrix, Error, Graph,
};

/// Exact path counts in simple undirected graphs.
#[derive(Parser)]
#[command(name = "pathcount", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-hop path matrix of a graph.
    Count {
        /// Edge-list file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        /// Hopcount. Implied by the closed-form methods p1..p4.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = CountMethod::Labeled)]
        method: CountMethod,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        output: MatrixFormat,
    },
    /// Print the Hamiltonian path matrix and the number of Hamiltonian paths.
    Hamiltonian {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = JsonFormat::Json)]
        output: JsonFormat,
    },
    /// List paths, one per line, as space-separated node ids.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_hops: usize,
        /// Defaults to n - 1.
        #[arg(long)]
        max_hops: Option<usize>,
        /// Stop after this many paths.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compute P_k by every applicable method and compare the results.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Largest hopcount to check. Defaults to n - 1.
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Operation-count models of the matrix methods for k = 1..n-1.
    Complexity {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CsvFormat::Csv)]
        output: CsvFormat,
    },
    /// Total path counts of seeded random graphs over a range of link densities.
    ErSweep {
        #[arg(long)]
        n: usize,
        /// Densities as start:stop:step, inclusive.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = CsvFormat::Csv)]
        output: CsvFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    P1,
    P2,
    P3,
    P4,
    Labeled,
    Subset,
    Recursive,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum JsonFormat {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CsvFormat {
    Csv,
}

enum Failure {
    Mismatch,
    Input(String),
    Guard(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            Error::NegativeEntry { .. } => {
                eprintln!("error: {e}");
                Failure::Mismatch
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    Ok(Graph::from_edge_list(&text)?)
}

fn hop_range(g: &Graph, k: usize) -> Result<(), Failure> {
    let n = g.node_count();
    if k == 0 || k >= n {
        return Err(Failure::Input(format!(
            "k = {k} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

fn count(g: &Graph, k: Option<usize>, method: CountMethod) -> Result<(usize, CountMatrix), Failure> {
    let fixed = match method {
        CountMethod::P1 => Some(1),
        CountMethod::P2 => Some(2),
        CountMethod::P3 => Some(3),
        CountMethod::P4 => Some(4),
        _ => None,
    };
    let k = match (fixed, k) {
        (Some(f), Some(k)) if f != k => {
            return Err(Failure::Input(format!(
                "method p{f} computes k = {f}, not k = {k}"
            )));
        }
        (Some(f), _) => f,
        (None, Some(k)) => k,
        (None, None) => return Err(Failure::Input("--k is required for this method".into())),
    };
    hop_range(g, k)?;
    let m = match method {
        CountMethod::P1 | CountMethod::P2 | CountMethod::P3 | CountMethod::P4 => {
            closed_form_path_matrix(g, k)?
        }
        CountMethod::Labeled => path_matrix_labeled(g, k)?,
        CountMethod::Subset => path_matrix_ie(g, k)?,
        CountMethod::Recursive => path_matrix_recursive(g, k)?,
        CountMethod::Oracle => brute_force_path_matrix(g, k)?,
    };
    Ok((k, m))
}

fn method_name(method: CountMethod) -> String {
    method
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn with_fields(matrix: &CountMatrix, extra: Vec<(&str, Value)>) -> Value {
    let mut obj = Map::new();
    for (key, value) in extra {
        obj.insert(key.to_string(), value);
    }
    if let Value::Object(m) = matrix.to_json_value() {
        obj.extend(m);
    }
    Value::Object(obj)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Count {
            input,
            k,
            method,
            output,
        } => {
            let g = read_graph(&input)?;
            let (k, m) = count(&g, k, method)?;
            match output {
                MatrixFormat::Json => {
                    let v = with_fields(&m, vec![("method", json!(method_name(method))), ("k", json!(k))]);
                    writeln!(out, "{v}")?;
                }
                MatrixFormat::Csv => out.write_all(m.to_csv().as_bytes())?,
            }
        }
        Command::Hamiltonian {
            input,
            output: JsonFormat::Json,
        } => {
            let g = read_graph(&input)?;
            let h = hamiltonian_path_matrix(&g)?;
            let total = h.total() / 2u32;
            let mut v = h.to_json_value();
            v["total_hamiltonian_paths"] = json!(total.to_string());
            writeln!(out, "{v}")?;
        }
        Command::Enumerate {
            input,
            min_hops,
            max_hops,
            limit,
        } => {
            let g = read_graph(&input)?;
            let max_hops = max_hops.unwrap_or(g.node_count().saturating_sub(1));
            for path in enumerate_paths(&g, min_hops, max_hops, limit)? {
                writeln!(out, "{path}")?;
            }
        }
        Command::Validate { input, kmax } => {
            let g = read_graph(&input)?;
            let kmax = kmax.unwrap_or(g.node_count().saturating_sub(1));
            let report = validate(&g, kmax)?;
            write!(out, "{report}")?;
            if !report.passed() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Complexity {
            n,
            output: CsvFormat::Csv,
        } => {
            out.write_all(complexity_csv(&complexity_table(n)?).as_bytes())?;
        }
        Command::ErSweep {
            n,
            p,
            reps,
            seed,
            output: CsvFormat::Csv,
        } => {
            let densities = parse_density_range(&p)?;
            out.write_all(sweep_csv(&er_sweep(n, &densities, reps, seed)?).as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => {
            let _ = out.flush();
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

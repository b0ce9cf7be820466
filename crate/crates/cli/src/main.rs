//! `vine`: inspect, convert, encode and enumerate regular vines.
//!
//! Every failure ends with a single `error: <code>: <message>` line on stderr.
//! Exit status is 0 on success, 1 when the input is well-formed but violates
//! the vine rules, 2 for unreadable input or bad arguments, and 3 when an
//! internal invariant breaks.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use vine_structure::io::{cherry_sequence_json, cherry_tree_json, chordal_graph_json};
use vine_structure::{
    cherry_to_chordal, decode_matrix, encode_cherry, encode_napoles, enumerate_vine_peos, for_each_vine,
    parse_matrix_csv, parse_vine_json, random_vine, serialize_matrix_csv, serialize_vine_json,
    serialize_vine_json_compact, vine_peo, vine_to_cherry, Peo, VineError, VineStructure, RNG_NAME,
};

#[derive(Parser)]
#[command(name = "vine", version, about = "Regular-vine structures and their matrix encodings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a vine file against the construction rules
    Validate { file: String },
    /// Print the cherry-tree representation as JSON
    ToCherry {
        file: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Print the chordal-graph representation as JSON
    ToChordal {
        file: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Print a perfect elimination ordering of the whole vine
    Peo {
        file: String,
        /// List every one, lexicographically
        #[arg(long)]
        all: bool,
    },
    /// Encode a vine as a lower-triangular matrix (CSV)
    Encode {
        file: String,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Diagonal to use with the cherry algorithm, e.g. "4,1,2,3,5"
        #[arg(long)]
        peo: Option<String>,
        #[arg(long)]
        count_comparisons: bool,
    },
    /// Decode a matrix CSV into vine JSON
    Decode { file: String },
    /// Run both encoders on a shared diagonal and compare the matrices
    Equivalence { file: String },
    /// Emit every vine on n variables as JSON lines
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Emit one reproducible random vine
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Napoles,
    Cherry,
}

enum Failure {
    Vine(VineError),
    Io(String, io::Error),
    Usage(String),
    Mismatch(String),
}

impl From<VineError> for Failure {
    fn from(e: VineError) -> Self {
        Failure::Vine(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Vine(e) => match e {
                VineError::InvalidVine(_) => "invalid-vine",
                VineError::InvalidMatrix(_) => "invalid-matrix",
                VineError::NotAVineMatrix(_) => "not-a-vine-matrix",
                VineError::IrregularCherry(_) | VineError::NoPrivateVariable => "irregular-cherry",
                VineError::NotVinePeo => "not-vine-peo",
                VineError::VertexMismatch | VineError::NotChordal => "not-chordal",
                VineError::OutOfBounds { .. } => "out-of-bounds",
                VineError::StructureCorrupt(_) => "internal",
                VineError::Parse(_) => "parse",
            },
            Failure::Io(..) => "io",
            Failure::Usage(_) => "usage",
            Failure::Mismatch(_) => "mismatch",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Vine(VineError::StructureCorrupt(_)) | Failure::Mismatch(_) => 3,
            Failure::Vine(VineError::Parse(_) | VineError::OutOfBounds { .. })
            | Failure::Io(..)
            | Failure::Usage(_) => 2,
            Failure::Vine(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Vine(e) => e.to_string(),
            Failure::Io(path, e) => format!("{path}: {e}"),
            Failure::Usage(m) | Failure::Mismatch(m) => m.clone(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io("<stdin>".into(), e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))
    }
}

fn read_vine(path: &str) -> Result<VineStructure, Failure> {
    Ok(parse_vine_json(&read_input(path)?)?)
}

fn check_level(v: &VineStructure, level: usize) -> Result<(), Failure> {
    if (1..v.n()).contains(&level) {
        Ok(())
    } else {
        Err(VineError::OutOfBounds {
            what: "level",
            min: 1,
            max: v.n() - 1,
            got: level,
        }
        .into())
    }
}

fn emit(out: &mut impl Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io("<stdout>".into(), e))
}

fn emit_json(out: &mut impl Write, value: &Value) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit(out, &text)
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Validate { file } => {
            read_vine(&file)?;
            emit(out, "ok\n")
        }
        Command::ToCherry { file, level } => {
            let v = read_vine(&file)?;
            let cherry = vine_to_cherry(&v);
            match level {
                Some(k) => {
                    check_level(&v, k)?;
                    emit_json(out, &cherry_tree_json(cherry.tree(k)))
                }
                None => emit_json(out, &cherry_sequence_json(&cherry)),
            }
        }
        Command::ToChordal { file, level } => {
            let v = read_vine(&file)?;
            let cherry = vine_to_cherry(&v);
            let graph = |k: usize| chordal_graph_json(k, &cherry_to_chordal(cherry.tree(k)));
            match level {
                Some(k) => {
                    check_level(&v, k)?;
                    emit_json(out, &graph(k))
                }
                None => {
                    let graphs: Vec<Value> = (1..v.n()).map(graph).collect();
                    emit_json(out, &serde_json::json!({ "graphs": graphs }))
                }
            }
        }
        Command::Peo { file, all } => {
            let v = read_vine(&file)?;
            if all {
                for p in enumerate_vine_peos(&v)? {
                    emit(out, &format!("{p}\n"))?;
                }
                Ok(())
            } else {
                emit(out, &format!("{}\n", vine_peo(&v)?))
            }
        }
        Command::Encode {
            file,
            algorithm,
            peo,
            count_comparisons,
        } => {
            let v = read_vine(&file)?;
            let (m, counter) = match algorithm {
                Algorithm::Napoles => {
                    if peo.is_some() {
                        return Err(Failure::Usage("--peo applies only to --algorithm cherry".into()));
                    }
                    encode_napoles(&v)?
                }
                Algorithm::Cherry => {
                    let p = match peo {
                        Some(text) => text.parse::<Peo>().map_err(|e| Failure::Usage(format!("--peo: {e}")))?,
                        None => vine_peo(&v)?,
                    };
                    encode_cherry(&v, &p)?
                }
            };
            emit(out, &serialize_matrix_csv(&m))?;
            if count_comparisons {
                emit(out, &format!("comparisons={}\n", counter.get()))?;
            }
            Ok(())
        }
        Command::Decode { file } => {
            let text = read_input(&file)?;
            let m = parse_matrix_csv(&text).map_err(VineError::from)?;
            emit(out, &serialize_vine_json(&decode_matrix(&m)?))
        }
        Command::Equivalence { file } => {
            let v = read_vine(&file)?;
            let (a, _) = encode_napoles(&v)?;
            let diagonal = a
                .diagonal()
                .ok_or_else(|| Failure::Mismatch("napoles diagonal is not a permutation".into()))?;
            let (b, _) = encode_cherry(&v, &diagonal)?;
            let n = v.n();
            for i in 1..=n {
                for j in 1..=i {
                    if a.get(i, j) != b.get(i, j) {
                        return Err(Failure::Mismatch(format!(
                            "entry ({i},{j}) differs: napoles={} cherry={}",
                            a.get(i, j),
                            b.get(i, j)
                        )));
                    }
                }
            }
            emit(out, "IDENTICAL\n")
        }
        Command::Enumerate { n, count_only } => {
            let mut count = 0u64;
            let mut failure = None;
            for_each_vine(n, |v| {
                count += 1;
                if !count_only && failure.is_none() {
                    if let Err(e) = emit(out, &(serialize_vine_json_compact(&v) + "\n")) {
                        failure = Some(e);
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            if count_only {
                emit(out, &format!("{count}\n"))?;
            }
            Ok(())
        }
        Command::Random { n, seed } => {
            let v = random_vine(n, seed)?;
            eprintln!("# rng={RNG_NAME} seed={seed} n={n}");
            emit(out, &serialize_vine_json(&v))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprint!("{rendered}");
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(|e| Failure::Io("<stdout>".into(), e)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(_, e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}: {}", f.code(), f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

//! `kkdrop`: command line front end for the dimension drop engine.
//!
//! Every subcommand produces a single report, printed either as a text
//! table or as one JSON object with a fixed key order. Exit codes: 0 on
//! success, 1 for invalid input, 2 when an internal cross-check fails.

mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kkdrop::algebra::parse_int_list;
use kkdrop::arithmetic::lcm;
use kkdrop::{Algebra, EqualityMode, Error, HomKind};

use render::Output;

#[derive(Parser, Debug)]
#[command(
    name = "kkdrop",
    version,
    about = "K-theory, KK-classes and lifting checks for I[m0,m,m1]"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Equality of triples: `map` compares induced maps, `strict` matrix entries.
    #[arg(long, global = true, env = "KKDROP_EQUALITY", default_value = "map", value_parser = parse_mode)]
    mode: EqualityMode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K0(A; G_p), Bockstein maps and the positive cone generators.
    Ktheory(Single),
    /// Exactness of the Bockstein sequence, checked by enumeration.
    Exactness(Single),
    /// Write a positive element of K0(A; G_p) in the cone generators.
    ConeDecompose {
        #[command(flatten)]
        single: Single,
        /// Element "a,b,c"; a leading '=' is accepted.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_triple_literal)]
        element: [i64; 3],
    },
    /// Triple induced by a basic homomorphism or a KK-class.
    Triple {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_parser = parse_kind, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        kind: Option<HomKind>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coeffs)]
        coeffs: Option<[i64; 4]>,
    },
    /// Canonical coordinates of a KK-class and the structure of KK(A, B).
    KkCanon {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coeffs)]
        coeffs: [i64; 4],
    },
    /// Order, K-homology and span verdicts for one KK-class.
    LiftCheck {
        #[command(flatten)]
        pair: Pair,
        /// Coefficients "d0,d1,id,idbar"; a leading '=' is accepted.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_coeffs)]
        coeffs: [i64; 4],
    },
    /// Order preserving family elements without a span witness.
    Search {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        x_max: i64,
        /// Sweep every torsion index d instead of d = 0 only.
        #[arg(long)]
        include_torsion: bool,
    },
    /// Fixed scenario I[2,12,3] at p = 12 under both equality modes.
    Audit,
}

#[derive(Args, Debug)]
struct Single {
    /// Algebra "m0,m,m1".
    #[arg(long)]
    algebra: Algebra,
    /// Modulus; defaults to m (2 for C).
    #[arg(long)]
    p: Option<i64>,
}

#[derive(Args, Debug)]
struct Pair {
    /// Source algebra "m0,m,m1".
    #[arg(long)]
    source: Algebra,
    /// Target algebra "m0,n,m1".
    #[arg(long)]
    target: Algebra,
    /// Modulus; defaults to lcm(m, n) (2 for C).
    #[arg(long)]
    p: Option<i64>,
}

impl Single {
    fn modulus(&self) -> i64 {
        self.p.unwrap_or(self.algebra.m().max(2))
    }
}

impl Pair {
    fn modulus(&self) -> i64 {
        self.p
            .unwrap_or_else(|| lcm(self.source.m(), self.target.m()).max(2))
    }
}

fn parse_mode(s: &str) -> Result<EqualityMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<HomKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_coeffs(s: &str) -> Result<[i64; 4], String> {
    let v = parse_int_list::<i64>(s, 4).map_err(|e| e.to_string())?;
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_triple_literal(s: &str) -> Result<[i64; 3], String> {
    let v = parse_int_list::<i64>(s, 3).map_err(|e| e.to_string())?;
    Ok([v[0], v[1], v[2]])
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let mode = cli.mode;
    match &cli.command {
        Command::Ktheory(s) => render::ktheory(&s.algebra, s.modulus()),
        Command::Exactness(s) => render::exactness(&s.algebra, s.modulus()),
        Command::ConeDecompose { single, element } => {
            render::cone_decompose(&single.algebra, single.modulus(), *element)
        }
        Command::Triple { pair, kind, coeffs } => {
            render::triple(&pair.source, &pair.target, pair.modulus(), *kind, *coeffs)
        }
        Command::KkCanon { pair, coeffs } => render::kk_canon(&pair.source, &pair.target, *coeffs),
        Command::LiftCheck { pair, coeffs } => {
            render::lift_check(&pair.source, &pair.target, pair.modulus(), *coeffs, mode)
        }
        Command::Search {
            pair,
            x_max,
            include_torsion,
        } => render::search(
            &pair.source,
            &pair.target,
            pair.modulus(),
            *x_max,
            *include_torsion,
            mode,
        ),
        Command::Audit => render::audit(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n"
                }
                Format::Text => out.text,
            };
            if let Err(e) = io::stdout().lock().write_all(body.as_bytes()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            if let Some(problem) = out.inconsistency {
                eprintln!("error: internal inconsistency: {problem}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e @ Error::Internal(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

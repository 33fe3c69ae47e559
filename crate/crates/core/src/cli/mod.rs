//! The `isopieri` command line: `pieri`, `diagram`, `check` and `triple`.
//!
//! Every command is a function from its arguments to an [`Outcome`]; the
//! binary only prints it and exits.

pub mod sweeps;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::lines::count;
use crate::geometry::random::random_isotropic;
use crate::geometry::space::{format_matrix, parse_matrix};
use crate::geometry::{triple_intersect, GeometryError, Space, Subspace};
use crate::ring::{pieri, standard_exponent, triple_number, Family};
use crate::shapes::{ShapeError, SignedSequence, SkewShape, StrictPartition};
use sweeps::Exponent;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "isopieri", version, about = "Pieri products and triple intersections on maximal isotropic Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand P_mu * p_m (family B) or Q_mu * q_m (family C).
    Pieri {
        #[arg(long)]
        family: Family,
        /// A strict partition such as `3,2`, or a signed sequence such as `3,2,-1,-4`.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
    /// Draw the skew diagram lambda/mu with its components and invariants.
    Diagram {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        n: usize,
    },
    /// Run the validation sweeps up to `n-max`.
    Check {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, hide = true)]
        mutate: Option<Mutation>,
    },
    /// Intersect X_mu, X'_{lambda^c} and X_K for an isotropic K.
    Triple {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        n: usize,
        /// Matrix file whose rows span K.
        #[arg(long, conflicts_with = "random")]
        k_file: Option<PathBuf>,
        /// Seed for a random isotropic K.
        #[arg(long)]
        random: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    Delta,
    Eps,
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Outcome { stdout, stderr, code }
    }

    fn input(msg: impl std::fmt::Display) -> Self {
        Outcome::fail(EXIT_INPUT, String::new(), format!("error: {msg}\n"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(EXIT_INPUT, String::new(), text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Pieri { family, mu, n, m, json } => cmd_pieri(family, &mu, n, m, json),
        Command::Diagram { lambda, mu, n } => cmd_diagram(&lambda, &mu, n),
        Command::Check { n_max, seed, mutate } => cmd_check(n_max, seed, mutate),
        Command::Triple {
            lambda,
            mu,
            n,
            k_file,
            random,
        } => cmd_triple(&lambda, &mu, n, k_file.as_deref(), random),
    }
}

/// A signed sequence if any entry is negative, otherwise a strict partition.
pub fn parse_sequence(text: &str, n: usize) -> Result<SignedSequence, ShapeError> {
    if text.contains('-') {
        SignedSequence::parse(text, n)
    } else {
        SignedSequence::from_strict_partition(StrictPartition::parse(text)?, n)
    }
}

pub fn cmd_pieri(family: Family, mu: &str, n: usize, m: usize, json: bool) -> Outcome {
    let mu = match parse_sequence(mu, n) {
        Ok(s) => s,
        Err(e) => return Outcome::input(e),
    };
    let v = match pieri(family, &mu, m) {
        Ok(v) => v,
        Err(e) => return Outcome::input(e),
    };
    let mut out = Outcome::ok(if json { v.to_json() } else { v.to_string() });
    out.stdout.push('\n');
    if v.is_zero() {
        out.stderr = format!("note: no lambda with parts <= {n} satisfies the Pieri conditions\n");
    }
    out
}

pub fn cmd_diagram(lambda: &str, mu: &str, n: usize) -> Outcome {
    let parsed = parse_sequence(lambda, n).and_then(|l| Ok((l, parse_sequence(mu, n)?)));
    let skew = match parsed.and_then(|(l, m)| SkewShape::new(&l, &m)) {
        Ok(s) => s,
        Err(e) => return Outcome::input(e),
    };
    let mut s = String::new();
    let _ = writeln!(s, "lambda={} mu={} n={n}", skew.lambda(), skew.mu());
    s.push_str(&skew.render_components());
    for (id, c) in skew.components().iter().enumerate() {
        let _ = writeln!(
            s,
            "component {}: rows={} columns={} col={}{}",
            (b'A' + (id % 26) as u8) as char,
            join(&c.rows),
            join(&c.columns),
            join(&c.col),
            if c.meets_first_column { " (meets column 1)" } else { "" }
        );
    }
    let fixed: Vec<usize> = skew.fixed_points().iter().copied().collect();
    let _ = writeln!(s, "fixed points: {}", join(&fixed));
    let _ = writeln!(s, "skew row: {}", if skew.is_skew_row() { "yes" } else { "no" });
    let (phi, delta, cols) = (skew.phi(), skew.delta(), skew.occupied_columns());
    let _ = writeln!(
        s,
        "phi={phi} delta={delta} eps={} cols={cols} check={}",
        skew.epsilon(),
        phi + delta + cols
    );
    if let Err(e) = skew.column_identity().and_then(|_| skew.check_coverage()) {
        return Outcome::fail(EXIT_VALIDATION, s, format!("error: {e}\n"));
    }
    Outcome::ok(s)
}

fn join(v: &[usize]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn cmd_check(n_max: usize, seed: u64, mutate: Option<Mutation>) -> Outcome {
    let exponent: Exponent = match mutate {
        None => standard_exponent,
        Some(Mutation::Delta) => sweeps::mutated_delta,
        Some(Mutation::Eps) => sweeps::mutated_eps,
    };
    let steps: Vec<(&str, Box<dyn Fn() -> sweeps::SweepResult>)> = vec![
        ("example B", Box::new(move || sweeps::example_sweep(Family::B, exponent))),
        ("example C", Box::new(move || sweeps::example_sweep(Family::C, exponent))),
        ("duality", Box::new(move || sweeps::duality_sweep(n_max))),
        ("column identity and coverage", Box::new(move || sweeps::shape_sweep(n_max))),
        ("oracle equivalence", Box::new(move || sweeps::oracle_sweep(n_max.min(5), exponent))),
        ("commutativity", Box::new(move || sweeps::commutativity_sweep(n_max))),
        (
            "geometry",
            Box::new(move || {
                let r = sweeps::geometry_sweep(n_max.min(4), 8, seed);
                match r.first_failure() {
                    Some(msg) => Err(msg.clone()),
                    None => Ok(r.solved()),
                }
            }),
        ),
    ];
    let mut s = String::new();
    let mut total = 0;
    for (name, step) in steps {
        match step() {
            Ok(cases) => {
                let _ = writeln!(s, "{name}: {cases} cases");
                total += cases;
            }
            Err(msg) => {
                let _ = writeln!(s, "FAIL {name}: {msg}");
                return Outcome::fail(EXIT_VALIDATION, s, String::new());
            }
        }
    }
    let _ = writeln!(s, "PASS ({total} cases)");
    Outcome::ok(s)
}

fn geometry_code(e: &GeometryError) -> i32 {
    use GeometryError::*;
    match e {
        MembershipFailed(_) | VNotInZ => EXIT_VALIDATION,
        DegenerateInput(_) | NotGeneral(_) | DivisionByZero(_) | ZeroDivisor(_) | Unsupported(_) => EXIT_DEGENERATE,
        _ => EXIT_INPUT,
    }
}

fn load_k(path: &std::path::Path, n: usize) -> Result<Subspace<crate::geometry::Q>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (space, rows) = parse_matrix(&text).map_err(|e| e.to_string())?;
    if space != Space::Orthogonal(n) {
        return Err(format!("K must live in orthogonal n={n}, found {space}"));
    }
    Subspace::from_rows(space.dim(), rows).map_err(|e| e.to_string())
}

pub fn cmd_triple(lambda: &str, mu: &str, n: usize, k_file: Option<&std::path::Path>, random: Option<u64>) -> Outcome {
    let parsed = parse_sequence(lambda, n).and_then(|l| Ok((l, parse_sequence(mu, n)?)));
    let (lam, mu) = match parsed.and_then(|(l, m)| SkewShape::new(&l, &m).map(|_| (l, m))) {
        Ok(p) => p,
        Err(e) => return Outcome::input(e),
    };
    let m = lam.codim() - mu.codim();
    if m == 0 || m > n {
        return Outcome::input(format!("codim(lambda) - codim(mu) = {m} is outside 1..={n}"));
    }
    let space = Space::Orthogonal(n);
    let seed = random.unwrap_or(DEFAULT_SEED);
    let k = match k_file {
        Some(path) => match load_k(path, n) {
            Ok(k) => k,
            Err(e) => return Outcome::input(e),
        },
        None => random_isotropic(n, n + 1 - m, &mut ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut s = String::new();
    let _ = writeln!(s, "lambda={lam} mu={mu} m={m}");
    let _ = write!(s, "K:\n{}", format_matrix(space, k.rows()));
    let sols = match triple_intersect(&lam, &mu, &k, seed) {
        Ok(sols) => sols,
        Err(e) => {
            let code = geometry_code(&e);
            let mut msg = format!("error: {e}\n");
            if code == EXIT_DEGENERATE {
                msg.push_str("hint: K is not general enough; try another --random seed\n");
            }
            return Outcome::fail(code, s, msg);
        }
    };
    for (i, sol) in sols.iter().enumerate() {
        let _ = writeln!(s, "line {}: {}", i + 1, sol.line);
        let _ = write!(s, "H{}:\n{}", i + 1, format_matrix(space, sol.h.rows()));
    }
    let found = count(&sols);
    let expected = triple_number(Family::B, &mu, &lam, m).unwrap_or_default();
    let _ = writeln!(s, "count={found} expected={expected}");
    if BigInt::from(found) != expected {
        return Outcome::fail(EXIT_VALIDATION, s, "error: count disagrees with the ring\n".into());
    }
    Outcome::ok(s)
}

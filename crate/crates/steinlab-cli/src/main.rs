//! steinlab: exact computation in the Stein group F_{2,3} from the command
//! line.
//!
//! Subcommands read and write the library's JSON formats (all rationals as
//! `"num/den"` strings, maps as breakpoint lists). File arguments accept
//! `-` for stdin. Exit codes: 0 on success, 1 on a domain error (a
//! well-formed input violating a precondition), 2 on malformed input
//! (unreadable files, bad JSON, unparseable rationals, usage errors).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

use steinlab::builders::{
    connect, connect_certificate, conjugator_certificate, conjugator_half, special_certificate,
    special_element, stable_certificate, stable_letter,
};
use steinlab::classify::{
    classify_character, kernel_finiteness, kernel_lattice, normal_subgroup_finiteness,
    LatticeSubgroup,
};
use steinlab::exactnum::{parse_rational, Rational};
use steinlab::plmap::PLMap;
use steinlab::stein::{ab, lambda_rho, Character, GroupSpec};
use steinlab::verify::{self, Suite, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "steinlab",
    version,
    about = "Exact computation in the Stein group F_{2,3}: piecewise-linear maps, characters, certificates, and finiteness classification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a map at a rational point; prints the value as a JSON string
    Eval {
        /// Map file (JSON)
        map: String,
        /// Point to evaluate at, e.g. 1/3
        #[arg(long)]
        x: String,
    },
    /// Compose maps right-to-left: `compose f.json g.json` is x ↦ f(g(x))
    Compose {
        /// Two or more map files, outermost first
        #[arg(num_args = 2..)]
        maps: Vec<String>,
    },
    /// Invert a map
    Invert { map: String },
    /// Test membership of a map in a slope group
    Member {
        /// Group file (JSON); defaults to F_{2,3} on [0, 1]
        #[arg(long)]
        spec: Option<String>,
        map: String,
    },
    /// Print the abelianization vector and the endpoint characters λ, ρ
    Chars { map: String },
    /// Print the abelianization vector [χ₀², χ₀³, χ₁², χ₁³]
    Ab { map: String },
    /// Print the support of a map as a list of open intervals
    Support { map: String },
    /// Build a one-sided special element with initial slope 2^p·3^q and
    /// support covering (0, r); prints the map and its certificate
    BuildSpecial {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Anchor in (0, 1), e.g. 1/2
        #[arg(long)]
        r: String,
    },
    /// Build the stable letter for the character aχ₀² + bχ₀³ (coprime a, b);
    /// prints the map and its certificate
    BuildStable {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Print the half-interval conjugator on [−1, 1] and its certificate
    BuildConjugator,
    /// Build a slope-2^Z map [0, from] → [0, to]; prints map and certificate
    Connect {
        /// Source interval length, e.g. 1
        #[arg(long)]
        from: String,
        /// Target interval length, e.g. 5/6
        #[arg(long)]
        to: String,
    },
    /// Print the BNSR tier of a nonzero character (bare tier name)
    ClassifyChar { chi: String },
    /// Classify the normal closure lattice spanned by integer 4-vectors;
    /// prints a finiteness report
    ClassifyNormal { gens: String },
    /// Print tier, kernel lattice, and kernel finiteness of a character
    KernelReport { chi: String },
    /// Run a deterministic certificate suite; exit 0 iff everything passed
    Verify {
        suite: SuiteArg,
        /// Base seed for all sampled cases
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per sampled case
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Run cases on one thread (output is identical either way)
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Basis,
    Lemma32,
    Lemma24,
    Lemma41,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Basis => Suite::Basis,
            SuiteArg::Lemma32 => Suite::Lemma32,
            SuiteArg::Lemma24 => Suite::Lemma24,
            SuiteArg::Lemma41 => Suite::Lemma41,
            SuiteArg::All => Suite::All,
        }
    }
}

enum CliError {
    Domain(steinlab::Error),
    Malformed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(e) if e.is_malformed_input() => 2,
            CliError::Domain(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Malformed(m) => write!(f, "{m}"),
        }
    }
}

impl From<steinlab::Error> for CliError {
    fn from(e: steinlab::Error) -> Self {
        CliError::Domain(e)
    }
}

fn read_text(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Malformed(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{path}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{path}: {e}")))
}

fn parse_rat_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Malformed(format!("--{name}: {e}")))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serialization cannot fail")
    );
}

fn run(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::Eval { map, x } => {
            let f: PLMap = read_json(&map)?;
            let x = parse_rat_arg("x", &x)?;
            let y = f.evaluate(&x)?;
            print_json(&y.to_string());
        }
        Cmd::Compose { maps } => {
            let mut parsed = Vec::with_capacity(maps.len());
            for path in &maps {
                parsed.push(read_json::<PLMap>(path)?);
            }
            // Right-to-left: the last file is applied first.
            let mut composed = parsed.pop().expect("clap enforces at least two maps");
            while let Some(outer) = parsed.pop() {
                composed = outer.compose(&composed)?;
            }
            print_json(&composed);
        }
        Cmd::Invert { map } => {
            let f: PLMap = read_json(&map)?;
            print_json(&f.invert());
        }
        Cmd::Member { spec, map } => {
            let group = match spec {
                Some(path) => read_json::<GroupSpec>(&path)?,
                None => GroupSpec::f23(),
            };
            let f: PLMap = read_json(&map)?;
            print_json(&group.is_member(&f)?);
        }
        Cmd::Chars { map } => {
            let f: PLMap = read_json(&map)?;
            let v = ab(&f)?;
            let (lambda, rho) = lambda_rho(&f)?;
            print_json(&json!({ "ab": v, "lambda": lambda, "rho": rho }));
        }
        Cmd::Ab { map } => {
            let f: PLMap = read_json(&map)?;
            print_json(&ab(&f)?);
        }
        Cmd::Support { map } => {
            let f: PLMap = read_json(&map)?;
            print_json(&f.support()?);
        }
        Cmd::BuildSpecial { p, q, r } => {
            let r = parse_rat_arg("r", &r)?;
            let f = special_element(p, q, &r)?;
            let cert = special_certificate(p, q, &r, &f);
            print_json(&json!({ "map": f, "certificate": cert }));
        }
        Cmd::BuildStable { a, b } => {
            let t = stable_letter(a, b)?;
            let cert = stable_certificate(a, b, &t);
            print_json(&json!({ "map": t, "certificate": cert }));
        }
        Cmd::BuildConjugator => {
            let h = conjugator_half();
            let cert = conjugator_certificate(&h);
            print_json(&json!({ "map": h, "certificate": cert }));
        }
        Cmd::Connect { from, to } => {
            let from = parse_rat_arg("from", &from)?;
            let to = parse_rat_arg("to", &to)?;
            let f = connect(&from, &to)?;
            let cert = connect_certificate(&from, &to, &f);
            print_json(&json!({ "map": f, "certificate": cert }));
        }
        Cmd::ClassifyChar { chi } => {
            let c: Character = read_json(&chi)?;
            println!("{}", classify_character(&c)?);
        }
        Cmd::ClassifyNormal { gens } => {
            let lattice: LatticeSubgroup = read_json(&gens)?;
            print_json(&normal_subgroup_finiteness(&lattice));
        }
        Cmd::KernelReport { chi } => {
            let c: Character = read_json(&chi)?;
            let tier = classify_character(&c)?;
            let lattice = kernel_lattice(&c);
            let finiteness = kernel_finiteness(&c)?;
            print_json(&json!({
                "tier": tier,
                "lattice": lattice,
                "finiteness": finiteness,
            }));
        }
        Cmd::Verify {
            suite,
            seed,
            samples,
            sequential,
        } => {
            let opts = VerifyOptions {
                seed,
                samples,
                parallel: !sequential,
            };
            let report = verify::run(suite.into(), &opts);
            print_json(&report);
            if !report.ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

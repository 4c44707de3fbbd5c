//! Command-line front end: reads a presentation document, runs one computation, and prints
//! JSON or a rendered table.

pub mod document;
pub mod render;

use std::fmt;
use std::io::Read;

use clap::{Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use scroll_rees::algebra::{BiPoly, DenseMatrix};
use scroll_rees::analysis::Analysis;
use scroll_rees::invariants::{betti_table, hilbert_power, invariant_report};
use scroll_rees::oracle::power_dim;
use scroll_rees::oracle::verify::{modular_instance, verify, Window};
use scroll_rees::presentation::random::random_presentation;
use scroll_rees::presentation::{monomial_presentation, PresentationData};
use scroll_rees::rees::ReesGenerator;
use scroll_rees::Error;

use document::{resolve_field, Document};

#[derive(Debug, Parser)]
#[command(
    name = "scroll-rees",
    version,
    about = "Rees algebras of almost linearly presented ideals in k[x,y]"
)]
pub struct Cli {
    /// A prime p for F_p, or Q. Overrides the document and the environment.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input document; `-` or absent reads stdin.
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block form of the linear part and the change of bases reaching it.
    Canonicalize,
    /// Generators of the defining ideal of the Rees algebra.
    Rees,
    /// Implicit equations of the parametrized curve.
    Fiber,
    /// Graded Betti numbers of I^s.
    Betti {
        #[arg(long)]
        s: u32,
    },
    /// dim_k (I^s)_z.
    Hilbert {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        z: i64,
        /// Also compute the value by rank over F_p.
        #[arg(long)]
        check: bool,
    },
    /// Regularity of powers, reduction number, depths and postulation number.
    Invariants {
        #[arg(long, default_value_t = 3)]
        max_power: u32,
    },
    /// Compare every closed formula with the rank oracles on a bidegree window.
    Verify {
        /// `u,s`; defaults to `2n,3`.
        #[arg(long, value_parser = parse_window)]
        window: Option<Window>,
    },
    /// Print an input document for a monomial (or, with --random, a random) instance.
    Example {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        sigma: usize,
        #[arg(long, default_value_t = 0)]
        tau: usize,
        #[arg(long)]
        random: bool,
    },
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (u, v) = s.split_once(',').ok_or("expected u,s")?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("'{t}': {e}"));
    Ok(Window {
        u_max: num(u)?,
        s_max: num(v)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unparseable or invalid input; exit code 2.
    Invalid(String),
    /// Anything else; exit code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotPrime(_)
            | Error::Parse { .. }
            | Error::InvalidParameter(_)
            | Error::WrongColumnDegrees { .. }
            | Error::HeightNotTwo(_)
            | Error::DegreeMismatch(_)
            | Error::CommonFactor(_)
            | Error::HypothesisViolated(_)
            | Error::NotBihomogeneous(..)
            | Error::TooManyVariables(_) => CliError::Invalid(msg),
            _ => CliError::Failed(msg),
        }
    }
}

/// 0 when every check held, 3 otherwise.
pub fn exit_status(passed: bool) -> i32 {
    if passed {
        0
    } else {
        3
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command. `stdin` is read only when no
/// `--input` file is named; `env_field` is the value of `SCROLL_REES_FIELD`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, env_field: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli, stdin, env_field) {
        Ok((report, passed)) => {
            let stdout = if cli.json || matches!(cli.command, Command::Example { .. }) {
                let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
                s.push('\n');
                s
            } else {
                render::to_text(&report)
            };
            Outcome {
                code: exit_status(passed),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_document(cli: &Cli, stdin: &mut dyn Read) -> Result<Document, CliError> {
    let text = match cli.input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Failed(format!("reading stdin: {e}")))?;
            s
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Failed(format!("reading {path}: {e}")))?,
    };
    Document::parse(&text)
}

fn load(cli: &Cli, stdin: &mut dyn Read, env_field: Option<&str>) -> Result<PresentationData, CliError> {
    let doc = read_document(cli, stdin)?;
    let field = resolve_field(cli.field.as_deref(), doc.field, env_field)?;
    doc.presentation(field)
}

fn polys(v: &[BiPoly]) -> Vec<String> {
    v.iter().map(BiPoly::to_string).collect()
}

fn grid(rows: &[Vec<BiPoly>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| polys(r)).collect()
}

fn scalars(m: &DenseMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|c| c.to_string()).collect())
        .collect()
}

fn shape(an: &Analysis) -> Value {
    json!({
        "field": an.field(),
        "m": an.m(),
        "n": an.n(),
        "d": an.d(),
        "rho": an.rho(),
        "sigma": an.scroll.partition(),
    })
}

fn with_shape(an: &Analysis, rest: Value) -> Value {
    let mut v = shape(an);
    let obj = v.as_object_mut().expect("object");
    obj.extend(rest.as_object().expect("object").clone());
    v
}

fn generator_json(g: &ReesGenerator) -> Value {
    json!({
        "kind": g.kind,
        "label": g.label,
        "bidegree": [g.bidegree.0, g.bidegree.1],
        "poly": g.poly.to_string(),
    })
}

/// The report and whether it counts as a pass.
fn execute(cli: &Cli, stdin: &mut dyn Read, env_field: Option<&str>) -> Result<(Value, bool), CliError> {
    if let Command::Example { n, sigma, tau, random } = cli.command {
        let field = resolve_field(cli.field.as_deref(), None, env_field)?;
        let pd = if random {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            random_presentation(field, sigma, tau, n, &mut rng)?
        } else {
            monomial_presentation(field, n, sigma, tau)?
        };
        let doc = Document::from_presentation(&pd, true);
        return Ok((serde_json::to_value(doc).expect("document"), true));
    }
    let pd = load(cli, stdin, env_field)?;
    let an = Analysis::new(pd)?;
    let report = match cli.command {
        Command::Canonicalize => {
            let cp = &an.canonical;
            with_shape(
                &an,
                json!({
                    "tau": an.tau(),
                    "row_change": scalars(&cp.row_change),
                    "col_change": scalars(&cp.col_change),
                    "canonical": grid(cp.data.matrix()),
                }),
            )
        }
        Command::Rees => {
            let gens: Vec<Value> = an.input_generators()?.iter().map(generator_json).collect();
            with_shape(
                &an,
                json!({
                    "g": an.to_input(&an.rees.g)?.to_string(),
                    "tuples": an.scroll.eligible_tuples(),
                    "generators": gens,
                }),
            )
        }
        Command::Fiber => {
            let eqs: Vec<Value> = an
                .input_fiber_equations()?
                .iter()
                .map(|g| json!({"label": g.label, "degree": g.bidegree.1, "poly": g.poly.to_string()}))
                .collect();
            with_shape(&an, json!({ "equations": eqs }))
        }
        Command::Betti { s } => {
            let t = betti_table(s, an.sigma(), an.tau(), an.n())?;
            let reg = t.regularity();
            let mut v = serde_json::to_value(t).expect("betti table");
            v.as_object_mut()
                .expect("object")
                .insert("regularity".into(), json!(reg));
            with_shape(&an, v)
        }
        Command::Hilbert { s, z, check } => {
            let value = hilbert_power(s, z, &an.scroll)?;
            let mut v = json!({ "s": s, "z": z, "value": value });
            if check {
                let modular = modular_instance(&an)?;
                let oracle = if z < 0 {
                    0
                } else {
                    power_dim(&modular.input, s, z as u32)? as i64
                };
                let obj = v.as_object_mut().expect("object");
                obj.insert("oracle".into(), json!(oracle));
                obj.insert("agrees".into(), json!(oracle == value));
            }
            with_shape(&an, v)
        }
        Command::Invariants { max_power } => {
            serde_json::to_value(invariant_report(an.sigma(), an.tau(), an.n(), max_power)?).expect("report")
        }
        Command::Verify { window } => {
            let w = window.unwrap_or(Window::default_for(an.n()));
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let report = verify(&an, w, &mut rng)?;
            let passed = report.passed();
            let mut v = serde_json::to_value(report).expect("verify report");
            v.as_object_mut()
                .expect("object")
                .insert("passed".into(), json!(passed));
            return Ok((with_shape(&an, v), passed));
        }
        Command::Example { .. } => unreachable!("handled above"),
    };
    Ok((report, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_status(true), 0);
        assert_eq!(exit_status(false), 3);
        assert_eq!(CliError::from(Error::HeightNotTwo("gcd = x".into())).exit_code(), 2);
        assert_eq!(CliError::from(Error::NoFit("z = 3".into())).exit_code(), 1);
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("4, 2"), Ok(Window { u_max: 4, s_max: 2 }));
        assert!(parse_window("4").is_err());
        assert!(parse_window("a,2").is_err());
    }
}

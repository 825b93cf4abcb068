use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gradedcartan::epb::{super_to_multivector, super_to_vector, super_to_vvform, Engine};
use gradedcartan::textio::{load_workspace, print_canonical, Value, Workspace};
use gradedcartan::verify::{self, Env};
use gradedcartan::{Error, Multivector, SuperPoly, VectorValuedForm};

#[derive(Parser)]
#[command(
    name = "gradedcartan",
    version,
    about = "Cartan calculus and multivector brackets via a graded Poisson bracket"
)]
struct Cli {
    /// Workspace file
    #[arg(long, short, global = true, value_name = "PATH")]
    file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to canonical form
    Eval { expr: String },
    /// Extended Poisson bracket {a, b}
    Epb { a: String, b: String },
    /// Exterior derivative of a hatted form
    D { form: String },
    /// Interior product of a hatted vector with a hatted form
    Iota { vector: String, form: String },
    /// Lie derivative of a hatted form along a vector field
    Lie { vector: String, form: String },
    /// Lower a hatted vector field to a 1-form
    Flat { vector: String },
    /// Hamiltonian vector field of a function, hatted
    Sharp { function: String },
    /// Lie bracket of two vector fields
    Liebracket { v: String, w: String },
    /// Schouten-Nijenhuis bracket of two multivectors
    Sn { p: String, q: String },
    /// Frolicher-Nijenhuis bracket of two vector-valued forms
    Fn { k: String, v: String },
    /// Nijenhuis-Richardson bracket of two vector-valued forms
    Nr { k: String, v: String },
    /// Print the five universal charges
    Charges,
    /// Fit the bracket constants against the coordinate definitions
    Calibrate,
    /// Run the randomized verification suites
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_CASES)]
        cases: usize,
    },
}

enum Failure {
    User(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

/// Operand decoding errors come from what the user typed.
fn user(e: Error) -> Failure {
    Failure::User(e.to_string())
}

struct Session {
    ws: Workspace,
    engine: Engine,
}

impl Session {
    fn eval(&self, operand: &str) -> Result<SuperPoly, Failure> {
        Ok(self.ws.eval(operand)?)
    }

    fn bound(&self, operand: &str) -> Option<&Value> {
        self.ws.bindings.get(operand.trim())
    }

    fn vector(&self, operand: &str) -> Result<Vec<SuperPoly>, Failure> {
        super_to_vector(&self.eval(operand)?).map_err(user)
    }

    fn multivector(&self, operand: &str) -> Result<Multivector, Failure> {
        match self.bound(operand) {
            Some(Value::Multivector(m)) => Ok(m.clone()),
            _ => super_to_multivector(&self.eval(operand)?, None).map_err(user),
        }
    }

    fn vvform(&self, operand: &str) -> Result<VectorValuedForm, Failure> {
        match self.bound(operand) {
            Some(Value::VvForm(k)) => Ok(k.clone()),
            Some(Value::Multivector(m)) if m.degree() == 1 => VectorValuedForm::from_vector(m).map_err(user),
            _ => super_to_vvform(&self.eval(operand)?, None).map_err(user),
        }
    }
}

fn tuple(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn lines(mut rows: Vec<(Vec<usize>, String)>) -> String {
    if rows.is_empty() {
        return "0\n".into();
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    rows.into_iter().map(|(_, s)| s + "\n").collect()
}

fn show_alternating<'a>(comps: impl Iterator<Item = (&'a Vec<usize>, &'a SuperPoly)>) -> String {
    lines(
        comps
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| (idx.clone(), format!("({}) : {}", tuple(idx), print_canonical(v))))
            .collect(),
    )
}

fn show_vector(v: &[SuperPoly]) -> String {
    lines(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (vec![a + 1], format!("({}) : {}", a + 1, print_canonical(c))))
            .collect(),
    )
}

fn show_vvform(k: &VectorValuedForm) -> String {
    lines(
        k.components()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(i, idx, v)| {
                let mut key = vec![i];
                key.extend(idx);
                (key, format!("({}; {}) : {}", i, tuple(idx), print_canonical(v)))
            })
            .collect(),
    )
}

fn poly(p: SuperPoly) -> String {
    print_canonical(&p) + "\n"
}

fn run(cli: Cli) -> Outcome {
    let path = cli.file.ok_or_else(|| Failure::User("no workspace given; pass --file <path>".into()))?;
    let text =
        std::fs::read_to_string(&path).map_err(|e| Failure::User(format!("cannot read {}: {e}", path.display())))?;
    let ws = load_workspace(&text).map_err(|e| Failure::User(format!("{}: {e}", path.display())))?;
    let mut engine = Engine::new(ws.ctx.clone());
    if let Some(c) = &ws.calibration {
        engine = engine.with_constants(c.clone());
    }
    let s = Session { ws, engine };
    let en = &s.engine;
    Ok(match cli.command {
        Command::Eval { expr } => poly(s.eval(&expr)?),
        Command::Epb { a, b } => poly(en.epb(&s.eval(&a)?, &s.eval(&b)?)?),
        Command::D { form } => poly(en.ext_d(&s.eval(&form)?)?),
        Command::Iota { vector, form } => poly(en.interior(&s.eval(&vector)?, &s.eval(&form)?)?),
        Command::Lie { vector, form } => poly(en.lie_derivative(&s.vector(&vector)?, &s.eval(&form)?)?),
        Command::Flat { vector } => poly(en.flat(&s.eval(&vector)?)?),
        Command::Sharp { function } => poly(en.sharp(&s.eval(&function)?)?),
        Command::Liebracket { v, w } => show_vector(&en.lie_bracket(&s.vector(&v)?, &s.vector(&w)?)?),
        Command::Sn { p, q } => {
            let r = en.sn_bracket(&s.multivector(&p)?, &s.multivector(&q)?)?;
            show_alternating(r.components())
        }
        Command::Fn { k, v } => show_vvform(&en.fn_bracket(&s.vvform(&k)?, &s.vvform(&v)?)?),
        Command::Nr { k, v } => show_vvform(&en.nr_bracket(&s.vvform(&k)?, &s.vvform(&v)?)?),
        Command::Charges => {
            let mut out = String::new();
            for (name, q) in en.charges().named() {
                writeln!(out, "{name} = {}", print_canonical(q)).unwrap();
            }
            out
        }
        Command::Calibrate => {
            let fitted = gradedcartan::epb::calibrate(en.ctx())?;
            if let Some(stored) = &s.ws.calibration {
                if stored != &fitted {
                    return Err(Failure::Internal(format!(
                        "workspace calibration {stored:?} disagrees with the fitted constants {fitted:?}"
                    )));
                }
            }
            let mut out = String::new();
            for (name, k) in fitted.named() {
                writeln!(out, "k_{name} = {k}").unwrap();
            }
            out
        }
        Command::Verify { seed, cases } => {
            let ctx = en.ctx().clone();
            let env = Env::new(Some(ctx), &Engine::new);
            let reports = verify::run_all(&env, seed, cases);
            let mut out = String::new();
            let mut failed = 0;
            for r in &reports {
                let status = if r.ok() { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {:<24} {}/{}", r.name, r.passed, r.passed + r.failed).unwrap();
                if let Some(f) = &r.first_failure {
                    writeln!(out, "     {f}").unwrap();
                    failed += 1;
                }
            }
            if failed > 0 {
                print!("{out}");
                return Err(Failure::Internal(format!("{failed} of {} suites failed", reports.len())));
            }
            out
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

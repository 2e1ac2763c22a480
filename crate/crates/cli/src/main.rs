mod docs;
mod run;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ratquad::inequalities::WitnessKind;
use ratquad::json::{self, inf_as_string, ErrorJson};
use ratquad::{Error, Result};

use docs::Document;
use run::Output;
use spec::{BoundKind, Command, DomainName, FunctionSpec, ProblemSpec, WeightName};

/// Quadrature with variable nodes and sharp inequalities for rational functions.
#[derive(Parser)]
#[command(name = "ratquad", version)]
struct Cli {
    /// Replay a JSON document: a request with `"command"`, or any output
    /// with `"type"` (echoed back after validation).
    #[arg(long, value_name = "FILE", exclusive = true)]
    from_json: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Subcommand)]
enum Sub {
    /// Quadrature nodes for one phi, or a sweep of phi values.
    Nodes(Opts),
    /// Integral of `R^m` (or `R` times the weight).
    Integrate(Opts),
    /// `||R||^{2m}`.
    Norm(Opts),
    /// Nikolskii constant, mu-exact or closed form.
    Constant(Opts),
    /// Check one inequality, selected by `--which`.
    Bound(Opts),
    /// Extremal function and its sharpness report.
    Extremal(Opts),
    /// All acceptance criteria and the sharpness suite.
    Suite(Opts),
    /// Reference bounds on `d(rho; p)`.
    Sigma(Opts),
}

#[derive(Args, Default)]
struct Opts {
    #[arg(long, value_enum)]
    domain: Option<DomainName>,
    /// Circle radius.
    #[arg(long)]
    r: Option<f64>,
    /// Semiaxis weight.
    #[arg(long, value_enum)]
    weight: Option<WeightName>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Function JSON: a file, `-` for stdin, or inline `{...}`.
    #[arg(long, value_name = "FILE|JSON")]
    spec: Option<String>,
    #[arg(long, value_parser = inf_as_string::parse)]
    p: Option<f64>,
    /// Target exponent; `inf` for the sup norm.
    #[arg(long, value_parser = inf_as_string::parse)]
    q: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    delta: Option<f64>,
    /// Closed-form constant instead of the mu-exact one.
    #[arg(long)]
    geometric: bool,
    #[arg(long)]
    compare_baranov: bool,
    /// Trigonometric polynomials for `--geometric`.
    #[arg(long)]
    trig: bool,
    #[arg(long, value_enum)]
    which: Option<BoundKind>,
    /// Evaluation point: `theta` on the circle, `x` elsewhere.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    /// Half-angle of the beam around the negative axis.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    kind: Option<WitnessKind>,
    /// Attach the adaptive oracle value.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    csv: bool,
    /// Emit `K` equally spaced phi values in `[0, 2 pi)`.
    #[arg(long, value_name = "K")]
    sweep: Option<usize>,
}

impl Opts {
    fn into_spec(self, command: Command) -> Result<ProblemSpec> {
        Ok(ProblemSpec {
            domain: self.domain,
            r: self.r,
            weight: self.weight,
            m: self.m,
            phi: self.phi,
            function: self.spec.as_deref().map(FunctionSpec::load).transpose()?,
            p: self.p,
            q: self.q,
            n: self.n,
            delta: self.delta,
            geometric: self.geometric,
            compare_baranov: self.compare_baranov,
            trig: self.trig,
            which: self.which,
            at: self.at,
            d: self.d,
            alpha: self.alpha,
            kind: self.kind,
            verify: self.verify,
            seed: self.seed,
            csv: self.csv,
            sweep: self.sweep,
            ..ProblemSpec::new(command)
        })
    }
}

fn request(cli: Cli) -> Result<Output> {
    if let Some(path) = cli.from_json {
        let text = spec::read(&path)?;
        let value: serde_json::Value = json::from_str(&text)?;
        if value.get("type").is_some() {
            return Ok(Output::Json(json::from_str::<Document>(&text)?));
        }
        return run::run(&json::from_str::<ProblemSpec>(&text)?);
    }
    let (command, opts) = match cli.command {
        Some(Sub::Nodes(o)) => (Command::Nodes, o),
        Some(Sub::Integrate(o)) => (Command::Integrate, o),
        Some(Sub::Norm(o)) => (Command::Norm, o),
        Some(Sub::Constant(o)) => (Command::Constant, o),
        Some(Sub::Bound(o)) => (Command::Bound, o),
        Some(Sub::Extremal(o)) => (Command::Extremal, o),
        Some(Sub::Suite(o)) => (Command::Suite, o),
        Some(Sub::Sigma(o)) => (Command::Sigma, o),
        None => return Err(Error::InvalidInput("no command given (try --help)".into())),
    };
    run::run(&opts.into_spec(command)?)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_convergence() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or_default();
            let e = Error::InvalidInput(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", json::to_string(&ErrorJson::from(&e)));
            return ExitCode::from(2);
        }
    };
    let mut out = std::io::stdout().lock();
    match request(cli) {
        Ok(Output::Json(doc)) => {
            let _ = writeln!(out, "{}", json::to_string_pretty(&doc));
            if doc.is_violation() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Ok(Output::Csv(text)) => {
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json::to_string(&ErrorJson::from(&e)));
            ExitCode::from(exit_code(&e))
        }
    }
}

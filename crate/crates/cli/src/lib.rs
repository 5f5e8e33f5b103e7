//! Command-line front-end for the `epsexp` engine.
//!
//! [`run`] parses an argument vector and returns the exit code together with
//! everything destined for standard output and standard error, so the binary
//! and the tests share one code path. Exit codes: `0` success, `1` usage,
//! parse or domain errors, `2` verification failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use epsexp::hyper::{
    delta_dual_expand, emit_table, expand_closed, expand_general, regroup_total_degree, ClosedForm, ExpansionTable,
    HyperTermSpec, Regrouping, TableFormat,
};
use epsexp::partial_fractions::PochProductQuotient;
use epsexp::pochhammer::{
    poch_deriv, quotient_deriv, recip_poch_deriv, recip_poch_laurent, LinearParam, PochMethod, RecipMethod,
};
use epsexp::verify::{self, CheckId, GENFUN_ORDER};
use epsexp::{EpsSeries, Params, Rational};

/// Used by `expand` when neither the flags nor the spec file set a bound.
pub const DEFAULT_EPS_ORDER: i32 = 3;
pub const DEFAULT_DEGREE_BOUND: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "epsexp",
    version,
    about = "Exact epsilon-expansions of Pochhammer symbols and double series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// k-th normalized derivative of (alpha)_m
    Poch(PochArgs),
    /// k-th normalized derivative of 1/(beta)_m, or its Laurent series at a pole
    Recip(RecipArgs),
    /// k-th normalized derivative of (A + a eps)_m / (B + b eps)_n
    Quotient(QuotientArgs),
    /// Partial-fraction form of a Pochhammer product quotient
    Pf(PfArgs),
    /// Coefficient table of a double hypergeometric series
    Expand(ExpandArgs),
    /// The F5 coefficient tables regrouped by total degree
    Tables(TablesArgs),
    /// Check identities and generating relations
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct PochArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Rational,
    #[arg(short = 'm')]
    m: usize,
    #[arg(short = 'k')]
    k: usize,
    #[arg(long, default_value = "stirling_sum")]
    method: PochMethod,
}

#[derive(Args, Debug)]
struct RecipArgs {
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "laurent",
        conflicts_with = "laurent"
    )]
    beta: Option<Rational>,
    #[arg(short = 'm')]
    m: usize,
    #[arg(short = 'k', required_unless_present = "laurent", conflicts_with = "laurent")]
    k: Option<usize>,
    #[arg(long, default_value = "closed_sum", conflicts_with = "laurent")]
    method: RecipMethod,
    /// Laurent series of 1/(-n + b eps)_m around eps = 0
    #[arg(long, requires_all = ["n", "b", "order"])]
    laurent: bool,
    #[arg(short = 'n', requires = "laurent")]
    n: Option<usize>,
    #[arg(short = 'b', allow_hyphen_values = true, requires = "laurent")]
    b: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, requires = "laurent")]
    order: Option<i32>,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    #[arg(long, num_args = 2, value_names = ["A", "a"], allow_hyphen_values = true)]
    num: Vec<Rational>,
    #[arg(short = 'm')]
    m: usize,
    #[arg(long, num_args = 2, value_names = ["B", "b"], allow_hyphen_values = true)]
    den: Vec<Rational>,
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'k')]
    k: usize,
    /// Point of evaluation in eps
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    at: Rational,
}

#[derive(Args, Debug)]
struct PfArgs {
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long, required_unless_present = "closed")]
    spec: Option<PathBuf>,
    /// Evaluate a built-in closed form instead of the general engine
    #[arg(long)]
    closed: Option<ClosedForm>,
    /// Expand the delta derivative at delta = 0 of the spec term
    #[arg(long, conflicts_with = "closed", requires = "spec")]
    delta_derivative: bool,
    #[arg(long, default_value = "csv")]
    format: TableFormat,
    #[arg(long, allow_hyphen_values = true)]
    eps_order: Option<i32>,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long)]
    regroup: Option<Regrouping>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<Rational>,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Only this eps order
    #[arg(long, value_parser = clap::value_parser!(i32).range(0..))]
    k: Option<i32>,
    #[arg(long, default_value_t = 5)]
    max_m: u32,
    #[arg(long, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Entries to run, comma separated or repeated
    #[arg(long, value_delimiter = ',', required_unless_present = "all")]
    id: Vec<CheckId>,
    #[arg(long, conflicts_with = "id")]
    all: bool,
    /// Evaluate a single case `name=value` instead of the stored grid
    #[arg(long = "param", value_parser = parse_param, requires = "id")]
    params: Vec<(String, Rational)>,
    /// Series order for generating relations evaluated with --param
    #[arg(long, default_value_t = GENFUN_ORDER)]
    order: u32,
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, found '{s}'"))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| format!("'{}' is not a rational", value.trim()))?;
    Ok((name.trim().to_string(), value))
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

type CliResult = Result<Output, String>;

/// Parses `args` (program name first) and executes the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => Outcome {
            code: out.code,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(msg) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn execute(command: Command) -> CliResult {
    match command {
        Command::Poch(a) => Ok(Output::ok(format!("{}\n", poch_deriv(&a.alpha, a.m, a.k, a.method)))),
        Command::Recip(a) => recip(a),
        Command::Quotient(a) => {
            let num = LinearParam::new(a.num[0].clone(), a.num[1].clone());
            let den = LinearParam::new(a.den[0].clone(), a.den[1].clone());
            let v = quotient_deriv(&num, a.m, &den, a.n, a.k, &a.at).map_err(|e| e.to_string())?;
            Ok(Output::ok(format!("{v}\n")))
        }
        Command::Pf(a) => {
            let q: PochProductQuotient = read(&a.spec)?.parse().map_err(|e| located(&a.spec, e))?;
            let form = q.decompose().map_err(|e| e.to_string())?;
            Ok(Output::ok(format!("{form}\n")))
        }
        Command::Expand(a) => expand(a),
        Command::Tables(a) => tables(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn located(path: &Path, e: epsexp::Error) -> String {
    format!("{}: {e}", path.display())
}

fn recip(a: RecipArgs) -> CliResult {
    if a.laurent {
        let (n, b, order) = (
            a.n.unwrap_or_default(),
            a.b.unwrap_or_default(),
            a.order.unwrap_or_default(),
        );
        let series = recip_poch_laurent(n, &b, a.m, order).map_err(|e| e.to_string())?;
        return Ok(Output::ok(series_csv(&series, -1, order)));
    }
    let beta = a.beta.unwrap_or_default();
    let v = recip_poch_deriv(&beta, a.m, a.k.unwrap_or_default(), a.method).map_err(|e| e.to_string())?;
    Ok(Output::ok(format!("{v}\n")))
}

fn series_csv(series: &EpsSeries, from: i32, to: i32) -> String {
    let mut out = String::from("exponent,coefficient\n");
    for e in from.min(series.min_exponent())..=to {
        writeln!(out, "{e},{}", series.coeff(e)).unwrap();
    }
    out
}

fn expand(a: ExpandArgs) -> CliResult {
    let mut spec = match &a.spec {
        Some(path) => read(path)?.parse::<HyperTermSpec>().map_err(|e| located(path, e))?,
        None => HyperTermSpec::default(),
    };
    if let Some(d) = a.delta {
        spec.params.insert("delta".into(), d);
    }
    let eps_order = a.eps_order.or(spec.options.eps_order).unwrap_or(DEFAULT_EPS_ORDER);
    let degree_bound = a
        .degree_bound
        .or(spec.options.degree_bound)
        .unwrap_or(DEFAULT_DEGREE_BOUND);
    let regroup = a.regroup.unwrap_or(spec.options.regroup);
    let table = match a.closed {
        Some(form) => expand_closed(form, eps_order, degree_bound, &spec.params),
        None if spec.numer.is_empty() && spec.denom.is_empty() => {
            return Err("spec file defines no Pochhammer factors".into());
        }
        None if a.delta_derivative => delta_dual_expand(&spec, eps_order, degree_bound),
        None => expand_general(&spec, eps_order, degree_bound),
    }
    .map_err(|e| e.to_string())?;
    Ok(Output::ok(render(&table, regroup, a.format)?))
}

fn render(table: &ExpansionTable, regroup: Regrouping, format: TableFormat) -> Result<String, String> {
    let table = match regroup {
        Regrouping::Lattice => table.clone(),
        Regrouping::TotalDegree => regroup_total_degree(table).map_err(|e| e.to_string())?,
    };
    Ok(emit_table(&table, format))
}

fn tables(a: TablesArgs) -> CliResult {
    let top = a.k.unwrap_or(3);
    let full = expand_closed(ClosedForm::F5, top, a.max_m, &Params::new()).map_err(|e| e.to_string())?;
    let mut table = regroup_total_degree(&full).map_err(|e| e.to_string())?;
    if let Some(k) = a.k {
        table.entries.retain(|key, _| key.0 == k);
    }
    Ok(Output::ok(emit_table(&table, a.format)))
}

fn verify_cmd(a: VerifyArgs) -> CliResult {
    if !a.params.is_empty() {
        let [id] = a.id.as_slice() else {
            return Err("--param evaluates exactly one --id".into());
        };
        return verify_single(*id, &a.params.into_iter().collect(), a.order);
    }
    let ids = if a.all { CheckId::all() } else { a.id };
    let mut out = String::new();
    let mut failed = 0;
    for id in &ids {
        let report = verify::run(*id);
        if report.passed() {
            writeln!(out, "PASS {id} ({} cases)", report.cases).unwrap();
        } else {
            failed += 1;
            writeln!(
                out,
                "FAIL {id} ({} cases, {} failing)",
                report.cases,
                report.failures.len()
            )
            .unwrap();
            for f in &report.failures {
                writeln!(
                    out,
                    "  {id} [{}]: lhs {}, rhs {}",
                    verify::format_params(&f.params),
                    f.lhs,
                    f.rhs
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "{} passed, {failed} failed", ids.len() - failed).unwrap();
    Ok(Output {
        text: out,
        code: if failed == 0 { 0 } else { 2 },
    })
}

fn verify_single(id: CheckId, params: &Params, order: u32) -> CliResult {
    let shown = verify::format_params(params);
    let (line, equal) = match id {
        CheckId::Identity(i) => {
            let c = verify::identity_eval(i, params).map_err(|e| e.to_string())?;
            (format!("{id} [{shown}]: lhs {}, rhs {}", c.lhs, c.rhs), c.equal)
        }
        CheckId::GenFun(g) => {
            let c = verify::genfun_check(g, order, params).map_err(|e| e.to_string())?;
            let line = match c.first_discrepancy {
                None => format!("{id} [{shown}]: equal through z^{order}"),
                Some(e) => format!(
                    "{id} [{shown}]: first discrepancy at z^{e}: lhs {}, rhs {}",
                    c.lhs.coeff(e),
                    c.rhs.coeff(e)
                ),
            };
            (line, c.equal_to_order)
        }
    };
    Ok(Output {
        text: format!("{} {line}\n", if equal { "PASS" } else { "FAIL" }),
        code: if equal { 0 } else { 2 },
    })
}

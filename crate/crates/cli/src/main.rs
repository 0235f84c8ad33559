use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use aimnu::aim::{solve_iterative, IterativeOptions};
use aimnu::algebra::{format_rational, parse_decimal, parse_rational, Poly, Rational};
use aimnu::catalog::{self, CatalogEntry};
use aimnu::eigenfunctions::{hulthen_eigenfunction, polynomial_solution, rodrigues, y_low_order};
use aimnu::exec::Execution;
use aimnu::hypergeometric::{eigenvalue, to_aim_form, HypergeometricProblem};
use aimnu::nu::{nu_find_k, nu_lambda_n, BranchSelector, NuProblem};
use aimnu::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod output;
mod problem_file;

use output::{decimal, Format, Report};
use problem_file::{poly_from_strings, NuFile, ProblemFile};

#[derive(Parser)]
#[command(
    name = "aimnu",
    version,
    about = "Exact eigenvalues and polynomial eigenfunctions of hypergeometric-type equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct Target {
    /// Catalog entry name or path to a problem JSON file.
    target: String,
    /// Parameter override `name=value`, value an exact rational such as 5/2.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursion,
    Rodrigues,
    Explicit,
    Hypergeometric,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries.
    List {
        /// Keep entries whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form eigenvalues for n = 0..=N.
    Solve {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalues from the asymptotic iteration by bisection on the quantization condition.
    Aim {
        #[command(flatten)]
        target: Target,
        /// Evaluation point; defaults to the entry's own.
        #[arg(long, allow_hyphen_values = true)]
        r0: Option<String>,
        /// Parameter search interval `lo:hi`.
        #[arg(long, allow_hyphen_values = true)]
        bracket: String,
        #[arg(long, default_value_t = IterativeOptions::DEFAULT_K_MAX)]
        kmax: usize,
        /// Bisection tolerance, an exact rational.
        #[arg(long, default_value = "1/100000000")]
        tol: String,
        #[arg(long, default_value_t = IterativeOptions::DEFAULT_SCAN_POINTS)]
        scan_points: usize,
        /// Number of roots that must converge for a zero exit status.
        #[arg(long, default_value_t = 1)]
        roots: usize,
        /// Print the per-level history of every root (table format).
        #[arg(long)]
        history: bool,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Polynomial eigenfunction y_n.
    Eigenfunction {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Recursion)]
        method: Method,
        /// Sample grid `a:b:count`; bounds may be decimals.
        #[arg(long, allow_hyphen_values = true)]
        samples: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Nikiforov-Uvarov reduction of a JSON problem {"tauTilde", "sigma", "sigmaTilde"}.
    Nu {
        file: String,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Candidate index to select instead of the tau' < 0 branch.
        #[arg(long)]
        branch: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in verification suites.
    Verify {
        /// Keep suites whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print a catalog entry as a problem JSON file.
    Export {
        #[command(flatten)]
        target: Target,
    },
}

/// Exit status 2 for bad input, 1 for computations that fail.
#[derive(Debug)]
enum CliError {
    Input(String),
    Failure(String),
    /// The reader went away (e.g. `| head`); not an error worth reporting.
    ClosedPipe,
}

impl From<aimnu::Error> for CliError {
    fn from(e: aimnu::Error) -> Self {
        use aimnu::Error::*;
        match e {
            DegenerateParameterMap(_)
            | NoRootInBracket(_)
            | DegenerateSpectrum { .. }
            | InconsistentGamma(_)
            | NoRationalReduction
            | PochhammerPole(_) => CliError::Failure(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return CliError::ClosedPipe;
        }
        CliError::Failure(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn parse_params(raw: &[String]) -> CliResult<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (k, v) = p.split_once('=').ok_or_else(|| input(format!("expected NAME=VALUE, got {p}")))?;
        out.insert(k.trim().to_string(), parse_rational(v)?);
    }
    Ok(out)
}

struct Loaded {
    problem: HypergeometricProblem,
    entry: Option<&'static CatalogEntry>,
    params: BTreeMap<String, Rational>,
}

fn load(t: &Target) -> CliResult<Loaded> {
    let overrides = parse_params(&t.params)?;
    if let Ok(entry) = catalog::find(&t.target) {
        let resolved = entry.resolve(&overrides)?;
        let problem = entry.problem(&resolved)?;
        let params = resolved.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        return Ok(Loaded { problem, entry: Some(entry), params });
    }
    if !Path::new(&t.target).is_file() {
        return Err(aimnu::Error::UnknownEntry(t.target.clone()).into());
    }
    if !overrides.is_empty() {
        return Err(input("--param applies to catalog entries only"));
    }
    let text = std::fs::read_to_string(&t.target).map_err(|e| input(format!("{}: {e}", t.target)))?;
    let problem = ProblemFile::parse(&text)?.to_problem()?;
    Ok(Loaded { problem, entry: None, params: BTreeMap::new() })
}

fn params_json(params: &BTreeMap<String, Rational>) -> Value {
    Value::Object(params.iter().map(|(k, v)| (k.clone(), json!(format_rational(v)))).collect())
}

fn coeff_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn cmd_list(filter: Option<&str>) -> Report {
    let entries = catalog::catalog_list(filter);
    let json_entries: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "title": e.title,
                "eigenParameter": e.eigen_parameter,
                "parameters": e.parameters.iter().map(|p| json!({
                    "name": p.name,
                    "default": format_rational(&p.default_value()),
                    "constraint": p.constraint.to_string(),
                })).collect::<Vec<_>>(),
                "provenance": e.provenance,
            })
        })
        .collect();
    let mut r = Report::new(&["name", "eigen", "parameters", "title"], json!({ "entries": json_entries }));
    for e in entries {
        let ps: Vec<String> =
            e.parameters.iter().map(|p| format!("{}={}", p.name, format_rational(&p.default_value()))).collect();
        r.row(vec![e.name.into(), e.eigen_parameter.into(), ps.join(" "), e.title.into()]);
    }
    r
}

fn cmd_solve(t: &Target, n_max: u32) -> CliResult<Report> {
    let l = load(t)?;
    let p = &l.problem;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        rows.push((n, eigenvalue(p, n)?));
    }
    let json_rows: Vec<Value> =
        rows.iter().map(|(n, v)| json!({ "n": n, "value": format_rational(v), "decimal": decimal(v) })).collect();
    let mut r = Report::new(
        &["n", p.parameter_name.as_str(), "decimal"],
        json!({
            "name": p.name,
            "parameter": p.parameter_name,
            "params": params_json(&l.params),
            "eigenvalues": json_rows,
        }),
    );
    for (n, v) in rows {
        r.row(vec![n.to_string(), format_rational(&v), decimal(&v)]);
    }
    Ok(r)
}

fn parse_bracket(s: &str) -> CliResult<(Rational, Rational)> {
    let (a, b) = s.split_once(':').ok_or_else(|| input(format!("bracket must be lo:hi, got {s}")))?;
    Ok((parse_rational(a)?, parse_rational(b)?))
}

#[allow(clippy::too_many_arguments)]
fn cmd_aim(
    t: &Target,
    r0: Option<&str>,
    bracket: &str,
    kmax: usize,
    tol: &str,
    scan_points: usize,
    roots: usize,
    history: bool,
    exec: Execution,
) -> CliResult<(Report, bool)> {
    let l = load(t)?;
    let aim = to_aim_form(&l.problem)?;
    let r0 = match r0 {
        Some(s) => parse_rational(s)?,
        None => l.problem.eval_point.clone(),
    };
    let mut opts = IterativeOptions::new(r0.clone(), parse_bracket(bracket)?);
    opts.k_max = kmax;
    opts.tol = parse_rational(tol)?;
    opts.scan_points = scan_points;
    opts.execution = exec;
    let est = solve_iterative(&aim, &opts)?;
    let converged = est.iter().filter(|e| e.converged).count();
    let ok = converged >= roots;

    let hist = |h: &[(usize, Rational)]| -> Vec<Value> {
        h.iter().map(|(k, v)| json!({ "k": k, "value": decimal(v) })).collect()
    };
    let json_roots: Vec<Value> = est
        .iter()
        .map(|e| {
            json!({
                "n": e.n,
                "value": decimal(&e.value),
                "exact": format_rational(&e.value),
                "converged": e.converged,
                "kUsed": e.k_used,
                "history": hist(&e.history),
            })
        })
        .collect();
    let mut r = Report::new(
        &["n", "value", "converged", "k_used", "levels"],
        json!({
            "name": l.problem.name,
            "parameter": l.problem.parameter_name,
            "params": params_json(&l.params),
            "r0": format_rational(&r0),
            "bracket": [format_rational(&opts.bracket.0), format_rational(&opts.bracket.1)],
            "kMax": kmax,
            "tol": format_rational(&opts.tol),
            "roots": json_roots,
            "status": if ok { "converged" } else { "not_converged" },
        }),
    );
    for e in &est {
        r.row(vec![
            e.n.to_string(),
            decimal(&e.value),
            if e.converged { "yes" } else { "no" }.into(),
            e.k_used.to_string(),
            e.history.len().to_string(),
        ]);
        if history {
            let h: Vec<String> = e.history.iter().map(|(k, v)| format!("{k}:{}", decimal(v))).collect();
            r.notes.push(format!("n={} history {}", e.n, h.join(" ")));
        }
    }
    // The table shows the history length; CSV carries the history itself.
    r.csv_extra = Some((
        "history".into(),
        est.iter()
            .map(|e| e.history.iter().map(|(k, v)| format!("{k}:{}", decimal(v))).collect::<Vec<_>>().join(";"))
            .collect(),
    ));
    r.notes.push(format!("{converged} of {} roots converged", est.len()));
    Ok((r, ok))
}

fn sample_grid(spec: &str) -> CliResult<Vec<Rational>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, count] = parts[..] else {
        return Err(input(format!("samples must be a:b:count, got {spec}")));
    };
    let (a, b) = (parse_decimal(a)?, parse_decimal(b)?);
    let count: usize = count.trim().parse().map_err(|_| input(format!("bad sample count {count}")))?;
    if count == 0 {
        return Err(input("sample count must be positive"));
    }
    if count == 1 {
        return Ok(vec![a]);
    }
    let steps = Rational::from_integer((count as i64 - 1).into());
    Ok((0..count).map(|i| &a + (&b - &a) * Rational::from_integer((i as i64).into()) / &steps).collect())
}

fn cmd_eigenfunction(t: &Target, n: u32, method: Method, samples: Option<&str>) -> CliResult<Report> {
    let l = load(t)?;
    let p = &l.problem;
    let value = eigenvalue(p, n)?;
    let tau = p.tau_at(&value);
    let y = match method {
        Method::Recursion => polynomial_solution(&tau, &p.sigma, n)?.poly,
        Method::Rodrigues => rodrigues(&tau, &p.sigma, n)?,
        Method::Explicit => {
            if n > 3 {
                return Err(input("--method explicit covers n <= 3"));
            }
            y_low_order(&tau, &p.sigma, n)?
        }
        Method::Hypergeometric => {
            if l.entry.map(|e| e.name) != Some("hulthen") {
                return Err(input("--method hypergeometric applies to the hulthen entry only"));
            }
            hulthen_eigenfunction(n, &l.params["q"], &value)?
        }
    };
    let grid = samples.map(sample_grid).transpose()?;
    let sampled: Vec<(Rational, Rational)> = grid
        .unwrap_or_default()
        .into_iter()
        .map(|r| {
            let v = y.eval(&r);
            (r, v)
        })
        .collect();
    let method_name = format!("{method:?}").to_lowercase();
    let json = json!({
        "name": p.name,
        "n": n,
        "method": method_name,
        "parameter": p.parameter_name,
        "params": params_json(&l.params),
        "eigenvalue": format_rational(&value),
        "coefficients": coeff_strings(&y),
        "polynomial": y.to_string(),
        "samples": sampled.iter().map(|(r, v)| json!({ "r": decimal(r), "y": decimal(v) })).collect::<Vec<_>>(),
    });
    let mut r = if sampled.is_empty() {
        let mut r = Report::new(&["power", "coefficient"], json);
        let coeffs = if y.is_zero() { vec!["0".to_string()] } else { coeff_strings(&y) };
        for (i, c) in coeffs.into_iter().enumerate() {
            r.row(vec![i.to_string(), c]);
        }
        r
    } else {
        let mut r = Report::new(&["r", "y"], json);
        for (x, v) in &sampled {
            r.row(vec![decimal(x), decimal(v)]);
        }
        r
    };
    r.notes.push(format!("y_{n}(r) = {y}   ({} = {})", p.parameter_name, format_rational(&value)));
    Ok(r)
}

fn cmd_nu(file: &str, n: u32, branch: Option<usize>) -> CliResult<Report> {
    let text = std::fs::read_to_string(file).map_err(|e| input(format!("{file}: {e}")))?;
    let f = NuFile::parse(&text)?;
    let prob = NuProblem::new(
        poly_from_strings(&f.tau_tilde)?,
        poly_from_strings(&f.sigma)?,
        poly_from_strings(&f.sigma_tilde)?,
    )?;
    let cands = nu_find_k(&prob)?;
    let selector = branch.map_or(BranchSelector::BoundState, BranchSelector::Index);
    let selected = match selector {
        BranchSelector::Index(i) if i >= cands.len() => {
            return Err(aimnu::Error::BranchOutOfRange { index: i, count: cands.len() }.into());
        }
        BranchSelector::Index(i) => Some(i),
        BranchSelector::BoundState => {
            let neg: Vec<usize> =
                (0..cands.len()).filter(|&i| cands[i].tau.coeff(1) < Rational::from_integer(0.into())).collect();
            (neg.len() == 1).then(|| neg[0])
        }
    };
    let mut r = Report::new(
        &["index", "k", "pi", "tau", "lambda_bar", "lambda_bar_n", "consistent", "phi", "selected"],
        Value::Null,
    );
    let mut json_cands = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let ln = nu_lambda_n(&c.tau, &prob.sigma, n);
        let phi = c.phi.as_ref().map_or_else(|| "unsupported".to_string(), |w| w.to_string());
        let consistent = ln == c.lambda_bar;
        let sel = selected == Some(i);
        r.row(vec![
            i.to_string(),
            format_rational(&c.k),
            c.pi.to_string(),
            c.tau.to_string(),
            format_rational(&c.lambda_bar),
            format_rational(&ln),
            consistent.to_string(),
            phi.clone(),
            if sel { "*".into() } else { String::new() },
        ]);
        json_cands.push(json!({
            "index": i,
            "k": format_rational(&c.k),
            "pi": coeff_strings(&c.pi),
            "tau": coeff_strings(&c.tau),
            "lambdaBar": format_rational(&c.lambda_bar),
            "lambdaBarN": format_rational(&ln),
            "consistent": consistent,
            "phi": phi,
            "selected": sel,
        }));
    }
    if selected.is_none() {
        r.notes.push("no unique candidate with tau' < 0; pass --branch to select one".into());
    }
    r.json = json!({ "n": n, "candidates": json_cands, "selected": selected });
    Ok(r)
}

fn cmd_verify(filter: Option<&str>, exec: Execution) -> (Report, bool) {
    let reports = verify::run(filter, exec);
    let ok = reports.iter().all(|s| s.all_passed());
    let mut r = Report::new(&["suite", "passed", "total", "status"], Value::Null);
    let mut json_suites = Vec::new();
    for s in &reports {
        let status = if s.all_passed() { "PASS" } else { "FAIL" };
        r.row(vec![s.name.into(), s.passed().to_string(), s.cases.len().to_string(), status.into()]);
        let failures: Vec<Value> = s
            .cases
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                r.notes.push(format!("FAIL {} / {}: {}", c.suite, c.case, c.detail));
                json!({ "case": c.case, "detail": c.detail })
            })
            .collect();
        json_suites.push(json!({
            "suite": s.name,
            "passed": s.passed(),
            "total": s.cases.len(),
            "status": status,
            "failures": failures,
        }));
    }
    r.json = json!({ "suites": json_suites, "status": if ok { "PASS" } else { "FAIL" } });
    (r, ok)
}

fn run(cli: Cli) -> CliResult<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let (report, format, ok) = match cli.command {
        Command::List { filter, common } => (cmd_list(filter.as_deref()), common.format, true),
        Command::Solve { target, n, common } => (cmd_solve(&target, n)?, common.format, true),
        Command::Aim { target, r0, bracket, kmax, tol, scan_points, roots, history, sequential, common } => {
            let (r, ok) = cmd_aim(
                &target,
                r0.as_deref(),
                &bracket,
                kmax,
                &tol,
                scan_points,
                roots,
                history,
                execution(sequential),
            )?;
            (r, common.format, ok)
        }
        Command::Eigenfunction { target, n, method, samples, common } => {
            (cmd_eigenfunction(&target, n, method, samples.as_deref())?, common.format, true)
        }
        Command::Nu { file, n, branch, common } => (cmd_nu(&file, n, branch)?, common.format, true),
        Command::Verify { filter, sequential, common } => {
            let (r, ok) = cmd_verify(filter.as_deref(), execution(sequential));
            (r, common.format, ok)
        }
        Command::Export { target } => {
            let l = load(&target)?;
            let text = serde_json::to_string_pretty(&ProblemFile::from_problem(&l.problem))
                .map_err(|e| CliError::Failure(e.to_string()))?;
            writeln!(out, "{text}")?;
            return Ok(true);
        }
    };
    report.write(format, &mut out)?;
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::ClosedPipe) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

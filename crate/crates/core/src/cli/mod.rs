//! The `polymat` command line: argument handling, command dispatch and exit
//! codes. The JSON document goes to `out`, the human summary to `err`.
//!
//! Exit codes: 0 for a decisive outcome, 2 for `UnableToJudge` and
//! `CompletionNotFound`, 1 for input errors.

mod document;
mod parse;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

pub use document::{
    BudgetSettings, CertificateBasis, CertificateDocument, CommandEcho, ProblemFile, SCHEMA_VERSION,
};
pub use parse::{parse_matrix, parse_polynomial, ParseError, ParseErrorKind};

use crate::completion::CompletionBudget;
use crate::error::{Error, Result};
use crate::factorizer::{
    classify_in, decide_equivalence, factorize_general_variable, fitting_sufficient_check,
    split_divisor, variable_divisors, verify_equivalence, verify_factorization, EquivalenceOutcome,
    FactorOptions, FactorizationOutcome,
};
use crate::groebner::buchberger;
use crate::polymatrix::PolyMatrix;
use crate::polyring::{MonomialOrder, OrderKind, Polynomial};

pub const EXIT_DECISIVE: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "polymat",
    version,
    about = "Factorization and equivalence of multivariate polynomial matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Operation budget for unimodular completion.
    #[arg(long, global = true, env = "POLYMAT_MAX_OPS", default_value_t = 200)]
    max_ops: usize,
    /// Degree budget for unimodular completion.
    #[arg(long, global = true, env = "POLYMAT_MAX_DEG", default_value_t = 12)]
    max_deg: u32,
    /// Suppress the summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank, divisor chain and, when the file names h, its multiplicity.
    Analyze { file: PathBuf },
    /// Factor F = G1 * F1 with det G1 a power of h.
    Factorize {
        file: PathBuf,
        /// Divisor z_i - f; defaults to the file's `h`.
        #[arg(long)]
        h: Option<String>,
        /// 1-based index of the variable h is linear in.
        #[arg(long, default_value_t = 1)]
        var: usize,
        #[arg(long, value_parser = ["degrevlex", "lex", "deglex"])]
        order: Option<String>,
        /// Re-check the witnesses by direct multiplication.
        #[arg(long)]
        verify: bool,
        /// Keep factoring F1 while some candidate divisor splits off.
        #[arg(long)]
        iterate: bool,
    },
    /// Decide whether F is equivalent to diag(h, .., h, 1, .., 1).
    Equivalence {
        file: PathBuf,
        #[arg(long)]
        h: Option<String>,
        /// Number of copies of h on the diagonal.
        #[arg(long)]
        r: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Reduced Groebner basis of the matrix entries together with h.
    Groebner { file: PathBuf },
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_DECISIVE };
        }
    };
    let budget = CompletionBudget {
        max_ops: cli.max_ops,
        max_degree: cli.max_deg,
    };
    let echo = CommandEcho {
        name: command_name(&cli.command).to_string(),
        args: args.iter().skip(1).cloned().collect(),
    };
    let mut doc = CertificateDocument::new(
        echo,
        BudgetSettings {
            max_ops: budget.max_ops,
            max_degree: budget.max_degree,
        },
    );
    let start = Instant::now();
    let mut summary = Vec::new();
    let code = match dispatch(&cli.command, budget, &mut doc, &mut summary) {
        Ok(code) => code,
        Err(e) => {
            doc.outcome = match e {
                Error::NotInClass(_) => "NotInClass",
                Error::Internal(_) => "InternalError",
                _ => "InputError",
            }
            .to_string();
            doc.error = Some(e.to_string());
            summary.push(format!("error: {}", e));
            EXIT_INPUT_ERROR
        }
    };
    doc.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    if !cli.quiet {
        for line in summary {
            let _ = writeln!(err, "{}", line);
        }
    }
    code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Factorize { .. } => "factorize",
        Command::Equivalence { .. } => "equivalence",
        Command::Groebner { .. } => "groebner",
    }
}

struct Problem {
    nvars: usize,
    matrix: PolyMatrix,
    h: Option<String>,
    order: MonomialOrder,
}

fn parse_order(name: &str, nvars: usize) -> Result<MonomialOrder> {
    let kind = match name {
        "degrevlex" => OrderKind::DegRevLex,
        "lex" => OrderKind::Lex,
        "deglex" => OrderKind::DegLex,
        other => return Err(Error::Input(format!("unknown order `{}`", other))),
    };
    Ok(MonomialOrder::new(kind, nvars))
}

fn load(path: &Path, order_flag: Option<&str>) -> Result<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))?;
    let file: ProblemFile = serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("{}: {}", path.display(), e)))?;
    if file.nvars == 0 {
        return Err(Error::Input("nvars must be at least 1".into()));
    }
    let rows = parse_matrix(&file.matrix, file.nvars)?;
    let matrix = PolyMatrix::from_rows(rows)?;
    let order_name = order_flag.or(file.order.as_deref()).unwrap_or("degrevlex");
    Ok(Problem {
        nvars: file.nvars,
        matrix,
        h: file.h,
        order: parse_order(order_name, file.nvars)?,
    })
}

fn divisor_text<'a>(flag: Option<&'a str>, problem: &'a Problem) -> Result<&'a str> {
    flag.or(problem.h.as_deref())
        .ok_or_else(|| Error::Input("no divisor: pass --h or set `h` in the file".into()))
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn dispatch(
    command: &Command,
    budget: CompletionBudget,
    doc: &mut CertificateDocument,
    summary: &mut Vec<String>,
) -> Result<i32> {
    match command {
        Command::Analyze { file } => analyze(&load(file, None)?, doc, summary),
        Command::Factorize {
            file,
            h,
            var,
            order,
            verify,
            iterate,
        } => {
            let problem = load(file, order.as_deref())?;
            let h = parse_polynomial(divisor_text(h.as_deref(), &problem)?, problem.nvars)?;
            if *var == 0 || *var > problem.nvars {
                return Err(Error::Input(format!("--var {} outside 1..={}", var, problem.nvars)));
            }
            let opts = FactorOptions {
                budget,
                order: Some(problem.order.clone()),
                reverse_tie_break: false,
            };
            factorize_command(&problem, &h, var - 1, &opts, *verify, *iterate, doc, summary)
        }
        Command::Equivalence { file, h, r, verify } => {
            let problem = load(file, None)?;
            let h = parse_polynomial(divisor_text(h.as_deref(), &problem)?, problem.nvars)?;
            let opts = FactorOptions {
                budget,
                order: Some(problem.order.clone()),
                reverse_tie_break: false,
            };
            equivalence_command(&problem, &h, *r, &opts, *verify, doc, summary)
        }
        Command::Groebner { file } => {
            let problem = load(file, None)?;
            let mut gens: Vec<Polynomial> =
                problem.matrix.entries().filter(|p| !p.is_zero()).cloned().collect();
            if let Some(h) = &problem.h {
                gens.push(parse_polynomial(h, problem.nvars)?);
            }
            let basis = buchberger(&gens, &problem.order, false)?;
            doc.outcome = "Basis".into();
            doc.certificate = Some(CertificateBasis {
                generators: strings(&gens),
                basis: strings(basis.generators()),
                cofactors: None,
            });
            summary.push(format!("reduced basis: {{{}}}", strings(basis.generators()).join(", ")));
            Ok(EXIT_DECISIVE)
        }
    }
}

fn analyze(problem: &Problem, doc: &mut CertificateDocument, summary: &mut Vec<String>) -> Result<i32> {
    let m = &problem.matrix;
    let chain = m.divisor_chain()?;
    let rank = m.rank();
    let mut details = json!({
        "rows": m.nrows(),
        "cols": m.ncols(),
        "rank": rank,
        "divisor_chain": strings(&chain),
    });
    summary.push(format!("{}x{} matrix of rank {}", m.nrows(), m.ncols(), rank));
    for (i, d) in chain.iter().enumerate() {
        summary.push(format!("d{} = {}", i + 1, d));
    }
    if m.is_square() {
        let det = m.determinant()?;
        summary.push(format!("det = {}", det));
        details["determinant"] = json!(det.to_string());
    }
    doc.outcome = "Report".into();
    if let Some(h_text) = &problem.h {
        let h = parse_polynomial(h_text, problem.nvars)?;
        let f = split_divisor(&h, 0)?;
        let r = classify_in(m, 0, &f)?;
        let fit = fitting_sufficient_check(m, &h)?;
        doc.r = Some(r);
        details["h"] = json!(h.to_string());
        details["fitting_sufficient"] = json!(fit.passes);
        summary.push(format!("h = {} has multiplicity r = {}", h, r));
        summary.push(format!("fitting-ideal sufficient condition: {}", fit.passes));
    }
    doc.details = details;
    Ok(EXIT_DECISIVE)
}

fn outcome_code(outcome: &FactorizationOutcome) -> i32 {
    match outcome {
        FactorizationOutcome::Factored { .. } | FactorizationOutcome::NoFactorization { .. } => {
            EXIT_DECISIVE
        }
        _ => EXIT_UNDECIDED,
    }
}

/// Candidate divisors `(var, f)` for the next round of `--iterate`.
fn iterate_candidates(
    current: &PolyMatrix,
    previous: &[(usize, Polynomial)],
) -> Result<Vec<(usize, Polynomial)>> {
    let n = current.nvars();
    let dl = current.minor_gcd(current.nrows())?;
    if dl.is_zero() || dl.is_constant() {
        return Ok(Vec::new());
    }
    let mut cands: Vec<(usize, Polynomial)> = Vec::new();
    let mut push = |c: (usize, Polynomial)| {
        if !cands.contains(&c) {
            cands.push(c);
        }
    };
    for (var, f) in previous {
        push((*var, f.clone()));
    }
    for k in variable_divisors(&dl) {
        push((k, Polynomial::zero(n)));
    }
    // the part of d_l left after removing variable factors, when it is
    // itself of the form c * (z_k - f)
    let mut rest = dl.clone();
    for k in variable_divisors(&dl) {
        let zk = Polynomial::var(n, k);
        while let Some(q) = rest.div_exact(&zk)? {
            rest = q;
        }
    }
    for k in 0..n {
        if let Ok(f) = split_divisor(&rest, k) {
            push((k, f));
        }
    }
    let mut usable = Vec::new();
    for (var, f) in cands {
        let h = &Polynomial::var(n, var) - &f;
        if dl.div_exact(&h)?.is_some() {
            usable.push((var, f));
        }
    }
    Ok(usable)
}

#[allow(clippy::too_many_arguments)]
fn factorize_command(
    problem: &Problem,
    h: &Polynomial,
    var: usize,
    opts: &FactorOptions,
    verify: bool,
    iterate: bool,
    doc: &mut CertificateDocument,
    summary: &mut Vec<String>,
) -> Result<i32> {
    let n = problem.nvars;
    let f = split_divisor(h, var)?;
    let h = &Polynomial::var(n, var) - &f;
    let first = factorize_general_variable(&problem.matrix, var, &f, opts)?;
    doc.outcome = first.name().to_string();
    doc.r = Some(first.r());
    doc.certificate = Some(first.certificate().into());
    summary.push(format!("{} (r = {}) with respect to {}", first.name(), first.r(), h));
    if let FactorizationOutcome::CompletionNotFound { reason, .. } = &first {
        summary.push(format!("completion not found: {}", reason));
        doc.details = json!({ "reason": reason });
    }
    let Some((g1, f1)) = first.factors() else {
        if matches!(first, FactorizationOutcome::NoFactorization { .. } | FactorizationOutcome::UnableToJudge { .. }) {
            summary.push(format!(
                "column reduced minors generate {{{}}}",
                strings(&first.certificate().basis).join(", ")
            ));
        }
        return Ok(outcome_code(&first));
    };
    doc.add_witness("G1", g1);
    doc.add_witness("F1", f1);
    summary.push(format!("G1 =\n{}", g1));
    summary.push(format!("F1 =\n{}", f1));

    let mut g_total = g1.clone();
    let mut current = f1.clone();
    let mut expected_det = h.pow(first.r() as u32);
    let mut steps = vec![json!({ "h": h.to_string(), "r": first.r() })];
    if iterate {
        let mut used = vec![(var, f.clone())];
        'rounds: loop {
            for (k, fk) in iterate_candidates(&current, &used)? {
                let out = factorize_general_variable(&current, k, &fk, opts)?;
                let Some((gk, fk1)) = out.factors() else {
                    continue;
                };
                let hk = &Polynomial::var(n, k) - &fk;
                summary.push(format!("then Factored (r = {}) with respect to {}", out.r(), hk));
                steps.push(json!({ "h": hk.to_string(), "r": out.r() }));
                expected_det = &expected_det * &hk.pow(out.r() as u32);
                g_total = g_total.mul(gk)?;
                current = fk1.clone();
                if !used.contains(&(k, fk.clone())) {
                    used.push((k, fk));
                }
                continue 'rounds;
            }
            break;
        }
        doc.add_witness("G", &g_total);
        doc.add_witness("F_final", &current);
        summary.push(format!("G =\n{}", g_total));
        summary.push(format!("final factor =\n{}", current));
    }
    doc.details = json!({ "steps": steps, "det_G": g_total.determinant()?.to_string() });
    if verify {
        let ok = verify_factorization(&problem.matrix, &g_total, &current, &expected_det);
        doc.verified = Some(ok);
        summary.push(format!("verification: {}", if ok { "passed" } else { "FAILED" }));
        if !ok {
            return Err(Error::Internal("witnesses failed verification".into()));
        }
    }
    Ok(EXIT_DECISIVE)
}

fn equivalence_command(
    problem: &Problem,
    h: &Polynomial,
    r: usize,
    opts: &FactorOptions,
    verify: bool,
    doc: &mut CertificateDocument,
    summary: &mut Vec<String>,
) -> Result<i32> {
    let out = decide_equivalence(&problem.matrix, h, r, opts)?;
    doc.outcome = out.name().to_string();
    doc.r = Some(r);
    doc.add_witness("D", out.target());
    summary.push(format!("{} to diag with {} copies of {}", out.name(), r, h));
    match &out {
        EquivalenceOutcome::Equivalent { u, d, v } => {
            doc.add_witness("U", u);
            doc.add_witness("V", v);
            summary.push(format!("U =\n{}", u));
            summary.push(format!("V =\n{}", v));
            if verify {
                let ok = verify_equivalence(&problem.matrix, u, d, v);
                doc.verified = Some(ok);
                summary.push(format!("verification: {}", if ok { "passed" } else { "FAILED" }));
                if !ok {
                    return Err(Error::Internal("witnesses failed verification".into()));
                }
            }
            Ok(EXIT_DECISIVE)
        }
        EquivalenceOutcome::NotEquivalent {
            reason,
            certificate,
            ..
        } => {
            doc.certificate = Some(certificate.into());
            doc.details = json!({ "reason": reason });
            summary.push(reason.clone());
            Ok(EXIT_DECISIVE)
        }
        EquivalenceOutcome::CompletionNotFound { reason, .. } => {
            doc.details = json!({ "reason": reason });
            summary.push(format!("completion not found: {}", reason));
            Ok(EXIT_UNDECIDED)
        }
    }
}

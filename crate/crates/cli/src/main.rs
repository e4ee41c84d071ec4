//! `transgression`: expand theta functions, run verification suites and
//! manage scenario files.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use transgression_core::csforms::cs_form;
use transgression_core::thetalib::{eta, modular_table, theta_expand, GenusKind, ThetaKind};
use transgression_cli::json::{form_series_to_json, qseries_to_json};
use transgression_cli::{parse_complex, run_suite, CliError, CliResult, Context, GenSpec, Scenario};

#[derive(Parser)]
#[command(name = "transgression", version, about = "Exact theta-function transgression identities on formal charts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the q-expansion of a theta function or modular form.
    ThetaExpand(ExpandArgs),
    /// Run a verification suite and report every identity.
    Verify(VerifyArgs),
    /// Compute a transgressed form for a scenario file.
    CsCompute(CsArgs),
    /// Generate or validate scenario files.
    #[command(subcommand)]
    Scenario(ScenarioCmd),
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// theta, theta1, theta2 or theta3.
    #[arg(long, default_value = "theta")]
    kind: String,
    /// delta1..3, eps1..3, e4 or eta; overrides --kind.
    #[arg(long)]
    form: Option<String>,
    /// Highest power of w = πv.
    #[arg(long, default_value_t = 4)]
    wdeg: usize,
    /// Highest q-power kept, in q^{1/24} units.
    #[arg(long, default_value_t = 72)]
    qorder: i64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// theta, modular, transgression, tshift, dim3, eleven, flat, loop, numeric or all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 72)]
    qorder: i64,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    degree_cap: u32,
    /// Shears in generated flat pairs; 0 gives the trivial pair.
    #[arg(long, default_value_t = 12)]
    shears: usize,
    /// Scenario file used instead of generated pairs.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Comma-separated τ samples for the numeric suite, e.g. "2i,1+2i".
    #[arg(long)]
    tau: Option<String>,
    /// Product factors in numeric theta evaluation.
    #[arg(long, default_value_t = 60)]
    terms: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Leave out the timestamp and runtimes.
    #[arg(long)]
    no_volatile: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CsArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// phiL, phiW, phiWp or psiW.
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 72)]
    qorder: i64,
    /// Polynomial degree kept on top-degree forms; defaults to the scenario's cap.
    #[arg(long)]
    degree_cap: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Write a reproducible random or flat scenario.
    Gen {
        #[arg(long)]
        flat: bool,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        degree_cap: u32,
        #[arg(long, default_value_t = 12)]
        shears: usize,
        /// so(n)-valued connections.
        #[arg(long)]
        skew: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a scenario file against the schema and its flatness claim.
    Validate { file: PathBuf },
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            r => r?,
        },
    }
    Ok(())
}

fn check_qorder(q: i64) -> CliResult<i64> {
    if q < 0 {
        return Err(CliError::Config(format!("--qorder must be non-negative, got {}", q)));
    }
    Ok(q + 1)
}

fn theta_expand_cmd(a: ExpandArgs) -> CliResult<bool> {
    let trunc = check_qorder(a.qorder)?;
    let (name, text, value) = if let Some(form) = &a.form {
        let t = modular_table(trunc);
        let f = match form.as_str() {
            "delta1" => t.delta[0].clone(),
            "delta2" => t.delta[1].clone(),
            "delta3" => t.delta[2].clone(),
            "eps1" => t.eps[0].clone(),
            "eps2" => t.eps[1].clone(),
            "eps3" => t.eps[2].clone(),
            "e4" => t.e4.clone(),
            "eta" => eta(trunc),
            other => return Err(CliError::Config(format!("unknown form {:?}", other))),
        };
        (form.clone(), format!("{}\n", f), qseries_to_json(&f))
    } else {
        let kind = ThetaKind::ALL
            .into_iter()
            .find(|k| k.name() == a.kind)
            .ok_or_else(|| CliError::Config(format!("unknown theta kind {:?}", a.kind)))?;
        let w = theta_expand(kind, a.wdeg, trunc);
        let coeffs: Vec<_> = w.coeffs().iter().map(qseries_to_json).collect();
        (a.kind.clone(), format!("{}", w), json!({ "wdeg": a.wdeg, "coeffs": coeffs }))
    };
    let body = if a.output.json {
        serde_json::to_string_pretty(&json!({ "name": name, "qorder": a.qorder, "series": value }))? + "\n"
    } else {
        text
    };
    emit(&a.output.out, &body)?;
    Ok(true)
}

fn verify_cmd(a: VerifyArgs) -> CliResult<bool> {
    let mut ctx = Context::new(a.seed, check_qorder(a.qorder)? - 1);
    ctx.m = a.m;
    ctx.n = a.n;
    ctx.degree_cap = a.degree_cap;
    ctx.shears = a.shears;
    ctx.numeric.product_terms = a.terms;
    ctx.numeric.tol = a.tol;
    if let Some(t) = &a.tau {
        ctx.numeric.tau_samples = t.split(',').map(parse_complex).collect::<CliResult<_>>()?;
    }
    if let Some(p) = &a.scenario {
        ctx.scenario = Some(Scenario::read(p)?.pair);
    }
    let mut report = run_suite(&a.suite, &ctx)?;
    if a.no_volatile {
        report.volatile = None;
    }
    let body = if a.output.json { report.to_json() } else { report.to_text() };
    emit(&a.output.out, &body)?;
    if a.output.out.is_some() {
        eprint!("{}", report.to_text().lines().last().map(|l| format!("{}\n", l)).unwrap_or_default());
    }
    Ok(report.all_pass())
}

fn cs_compute_cmd(a: CsArgs) -> CliResult<bool> {
    let trunc = check_qorder(a.qorder)?;
    let kind = GenusKind::parse(&a.kind).ok_or_else(|| CliError::Config(format!("unknown kind {:?}", a.kind)))?;
    let sc = Scenario::read(&a.scenario)?;
    let pair = &sc.pair;
    let res = cs_form(kind, pair, trunc, pair.weight_truncation(a.degree_cap.unwrap_or(sc.degree_cap)))?;
    let body = if a.output.json {
        serde_json::to_string_pretty(&json!({
            "kind": kind.name(),
            "qorder": a.qorder,
            "m": pair.m(),
            "n": pair.n(),
            "form": form_series_to_json(&res.form, pair.m()),
        }))? + "\n"
    } else {
        let mut s = format!("CS{} for m = {}, n = {}, q-order {}\n", kind.name(), pair.m(), pair.n(), a.qorder);
        for d in res.form.degrees() {
            s.push_str(&format!("degree {}:\n", d));
            for (m, c) in res.form.component(d).terms() {
                s.push_str(&format!("  [{}] {}\n", m, c));
            }
        }
        if res.form.is_zero() {
            s.push_str("0\n");
        }
        s
    };
    emit(&a.output.out, &body)?;
    Ok(true)
}

fn scenario_cmd(c: ScenarioCmd) -> CliResult<bool> {
    match c {
        ScenarioCmd::Gen { flat, m, n, seed, degree_cap, shears, skew, out } => {
            let sc = Scenario::generate(&GenSpec { m, n, seed, degree_cap, flat, shears, skew })?;
            emit(&out, &sc.to_string_pretty())?;
            Ok(true)
        }
        ScenarioCmd::Validate { file } => {
            let sc = Scenario::read(&file)?;
            println!(
                "valid: m = {}, n = {}, claims_flat = {}",
                sc.pair.m(),
                sc.pair.n(),
                sc.pair.claims_flat()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::ThetaExpand(a) => theta_expand_cmd(a),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::CsCompute(a) => cs_compute_cmd(a),
        Cmd::Scenario(c) => scenario_cmd(c),
    };
    match r {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Suite orchestration: builds the scenarios for each suite, runs the
//! identity jobs (in a thread pool when enabled) and collects a report.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde_json::{json, Value};
use transgression_core::charforms::{anomaly_residual_12, phi_form, phi_form_oracle};
use transgression_core::checks::Check;
use transgression_core::csforms::*;
use transgression_core::exactscalar::{QSeries, Rational, Scalar};
use transgression_core::formcalc::{
    curvature, flat_pair_from_seed, random_pair, ConnectionPair, ConnectionShape, CurvatureData, FormSeries, MatrixForm,
    Truncation,
};
use transgression_core::numericheck::{
    check_cs_modularity_s, check_flat_psi_modularity_s, check_transformations, series_consistency, NumericConfig,
};
use transgression_core::thetalib::{
    decompose_gamma0_2, jacobi_identity_check, modular_table, reconstruct, theta_expand, GenusKind, ThetaKind,
};

use crate::error::{CliError, CliResult};
use crate::report::{Entry, SuiteReport, Volatile};

/// Suites accepted by `verify --suite`.
pub const SUITES: [&str; 10] = ["theta", "modular", "transgression", "tshift", "dim3", "eleven", "flat", "loop", "numeric", "all"];

/// Inputs shared by every suite.
#[derive(Clone, Debug)]
pub struct Context {
    pub seed: u64,
    /// Exclusive q-truncation in q^{1/24} units.
    pub trunc: i64,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub degree_cap: u32,
    pub shears: usize,
    /// Replaces the generated pair in suites that take one.
    pub scenario: Option<ConnectionPair>,
    pub numeric: NumericConfig,
}

impl Context {
    pub fn new(seed: u64, qorder: i64) -> Self {
        Context {
            seed,
            trunc: qorder + 1,
            m: None,
            n: None,
            degree_cap: 2,
            shears: 12,
            scenario: None,
            numeric: NumericConfig { tol: 1e-9, ..NumericConfig::default() },
        }
    }

    fn config_echo(&self) -> BTreeMap<String, Value> {
        let mut c = BTreeMap::new();
        c.insert("qorder".into(), json!(self.trunc - 1));
        c.insert("m".into(), json!(self.m));
        c.insert("n".into(), json!(self.n));
        c.insert("degree_cap".into(), json!(self.degree_cap));
        c.insert("shears".into(), json!(self.shears));
        c.insert("scenario_file".into(), json!(self.scenario.is_some()));
        c.insert(
            "numeric".into(),
            json!({
                "product_terms": self.numeric.product_terms,
                "tau": self.numeric.tau_samples.iter().map(|t| transgression_core::numericheck::fmt_c(*t)).collect::<Vec<_>>(),
                "v": self.numeric.v_samples.iter().map(|t| transgression_core::numericheck::fmt_c(*t)).collect::<Vec<_>>(),
                "tol": self.numeric.tol,
                "series_trunc": self.numeric.series_trunc,
            }),
        );
        c
    }
}

/// Result of one job.
#[derive(Default)]
pub struct JobOutput {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl From<Vec<Check>> for JobOutput {
    fn from(checks: Vec<Check>) -> Self {
        JobOutput { checks, notes: Vec::new() }
    }
}

type JobFn = Box<dyn Fn(&Context) -> CliResult<JobOutput> + Send + Sync>;

pub struct Job {
    pub name: String,
    run: JobFn,
}

fn job(name: &str, f: impl Fn(&Context) -> CliResult<JobOutput> + Send + Sync + 'static) -> Job {
    Job { name: name.to_string(), run: Box::new(f) }
}

fn qzero(id: &str, anchor: &str, residual: &QSeries) -> Check {
    Check::zero(id, anchor, &FormSeries::constant(residual.clone()))
}

fn qs(trunc: i64, terms: &[(i64, i64, i64)]) -> QSeries {
    QSeries::from_terms(trunc, terms.iter().map(|&(k, a, b)| (k, Scalar::from_rational(Rational::new(a, b)))).collect())
}

/// Appends `[label]` to every id so repeated scenarios stay distinct.
fn tagged(mut checks: Vec<Check>, label: &str) -> Vec<Check> {
    for c in &mut checks {
        c.id = format!("{}[{}]", c.id, label);
    }
    checks
}

fn theta_jobs() -> Vec<Job> {
    vec![
        job("theta.basics", |ctx| {
            let n = ctx.trunc;
            let mut out = Vec::new();
            let th = theta_expand(ThetaKind::Theta, 6, n);
            out.push(qzero("theta.zero", "θ(0, τ) = 0", th.coeff(0)));
            for kind in ThetaKind::ALL {
                let f = theta_expand(kind, 6, n);
                let wrong = if kind == ThetaKind::Theta { 0 } else { 1 };
                let stray = f.parity_part(wrong).coeffs().iter().fold(QSeries::zero_to(n), |a, c| a.add(c));
                out.push(qzero(&format!("theta.parity.{}", kind.name()), "θ is odd in v; θ₁, θ₂, θ₃ are even", &stray));
            }
            let eta3 = transgression_core::thetalib::eta(n).pow(3).scale_rational(&Rational::from_int(2));
            out.push(qzero("theta.eta_cube", "∂_wθ(0, τ) = 2η(τ)³", &th.coeff(1).sub(&eta3.truncate(n))));
            out.push(qzero("theta.jacobi", "θ'(0, τ) = πθ₁(0, τ)θ₂(0, τ)θ₃(0, τ)", &jacobi_identity_check(n)));
            Ok(out.into())
        }),
        job("theta.tshift", |ctx| {
            let n = ctx.trunc;
            let mut out = Vec::new();
            let f = |k| theta_expand(k, 6, n);
            let zeta8 = Scalar::zeta_pow(3);
            let diff = |a: transgression_core::thetalib::WSeries, b: transgression_core::thetalib::WSeries| {
                a.sub(&b).coeffs().iter().fold(QSeries::zero_to(n), |acc, c| acc.add(c))
            };
            out.push(qzero("theta.tshift.theta", "θ(v, τ+1) = e^{πi/4}θ(v, τ)", &diff(f(ThetaKind::Theta).tshift(), f(ThetaKind::Theta).scale(&zeta8))));
            out.push(qzero("theta.tshift.theta1", "θ₁(v, τ+1) = e^{πi/4}θ₁(v, τ)", &diff(f(ThetaKind::Theta1).tshift(), f(ThetaKind::Theta1).scale(&zeta8))));
            out.push(qzero("theta.tshift.theta2", "θ₂(v, τ+1) = θ₃(v, τ)", &diff(f(ThetaKind::Theta2).tshift(), f(ThetaKind::Theta3))));
            out.push(qzero("theta.tshift.theta3", "θ₃(v, τ+1) = θ₂(v, τ)", &diff(f(ThetaKind::Theta3).tshift(), f(ThetaKind::Theta2))));
            Ok(out.into())
        }),
    ]
}

fn modular_jobs() -> Vec<Job> {
    vec![job("modular", |ctx| {
        let n = ctx.trunc.max(73);
        let t = modular_table(n);
        let mut out = Vec::new();
        let listed: [(&str, &QSeries, QSeries); 7] = [
            ("delta1", &t.delta[0], qs(49, &[(0, 1, 4), (24, 6, 1), (48, 6, 1)])),
            ("eps1", &t.eps[0], qs(49, &[(0, 1, 16), (24, -1, 1), (48, 7, 1)])),
            ("delta2", &t.delta[1], qs(25, &[(0, -1, 8), (12, -3, 1), (24, -3, 1)])),
            ("eps2", &t.eps[1], qs(25, &[(12, 1, 1), (24, 8, 1)])),
            ("delta3", &t.delta[2], qs(25, &[(0, -1, 8), (12, 3, 1), (24, -3, 1)])),
            ("eps3", &t.eps[2], qs(25, &[(12, -1, 1), (24, 8, 1)])),
            ("e4", &t.e4, qs(49, &[(0, 1, 1), (24, 240, 1), (48, 2160, 1)])),
        ];
        for (name, f, want) in listed {
            out.push(qzero(&format!("modular.expansion.{}", name), "listed leading Fourier coefficients", &f.truncate(want.trunc()).sub(&want)));
        }
        let delta = t.eta.pow(24).truncate(97);
        out.push(qzero("modular.eta24", "η²⁴ = q − 24q² + 252q³ − …", &delta.sub(&qs(97, &[(24, 1, 1), (48, -24, 1), (72, 252, 1)]))));
        out.push(qzero("modular.tshift.delta2", "δ₂(τ+1) = δ₃(τ)", &t.delta[1].tshift().sub(&t.delta[2])));
        out.push(qzero("modular.tshift.eps2", "ε₂(τ+1) = ε₃(τ)", &t.eps[1].tshift().sub(&t.eps[2])));
        let dec = decompose_gamma0_2(&t.e4, 4)?;
        out.push(qzero("modular.e4_in_ring", "E₄ lies in C[8δ₂, ε₂] (weight 4)", &reconstruct(&dec, &t.delta[1], &t.eps[1]).truncate(n).sub(&t.e4)));
        Ok(out.into())
    })]
}

fn generic_pairs(ctx: &Context) -> CliResult<Vec<(String, ConnectionPair)>> {
    if let Some(p) = &ctx.scenario {
        return Ok(vec![("file".into(), p.clone())]);
    }
    let shapes: Vec<(usize, usize)> = match (ctx.m, ctx.n) {
        (None, None) => vec![(3, 3), (5, 2), (7, 2), (3, 4), (5, 3)],
        (m, n) => vec![(m.unwrap_or(5), n.unwrap_or(2)); 5],
    };
    shapes
        .into_iter()
        .enumerate()
        .map(|(k, (m, n))| {
            let seed = ctx.seed + k as u64;
            let p = random_pair(&ConnectionShape::new(m, n, ctx.degree_cap), seed, false)?;
            Ok((format!("m={},n={},seed={}", m, n, seed), p))
        })
        .collect()
}

fn transgression_jobs() -> Vec<Job> {
    vec![
        job("transgression.exactness", |ctx| {
            let mut out = Vec::new();
            for (label, p) in generic_pairs(ctx)? {
                let trunc = p.weight_truncation(ctx.degree_cap);
                out.extend(tagged(exactness_checks(&p, ctx.trunc, trunc)?, &label));
            }
            Ok(out.into())
        }),
        job("transgression.swap", |ctx| {
            let (label, p) = generic_pairs(ctx)?.remove(0);
            let mut out = Vec::new();
            for kind in GenusKind::ALL {
                let r = swap_residual(kind, &p, ctx.trunc, p.weight_truncation(ctx.degree_cap))?;
                out.push(Check::zero(&format!("cs.swap.{}", kind.name()), "CS(∇₀, ∇₁) + CS(∇₁, ∇₀) is closed", &r));
            }
            Ok(tagged(out, &label).into())
        }),
        job("charforms.two_routes", |ctx| {
            // theta route against the plethystic Â·ch / L·ch route
            let n = ctx.trunc.min(25);
            let mut out = Vec::new();
            for (m, rank, skew) in [(4usize, 3usize, true), (8, 4, true)] {
                let trunc = Truncation::Weight(m as u32 + 1);
                let p = random_pair(&ConnectionShape::new(m, rank, 1).skew(skew).terms(4), ctx.seed, true)?;
                let mut data = CurvatureData::new(curvature(p.a1(), trunc)?, m as u32, trunc);
                for kind in GenusKind::ALL {
                    let a = phi_form(kind, &mut data, n)?;
                    let b = phi_form_oracle(kind, &mut data, n)?;
                    out.push(Check::zero(
                        &format!("charforms.two_routes.{}[m={}]", kind.name(), m),
                        "theta-function formula equals (Â or L)·ch(Θ)",
                        &a.sub(&b),
                    ));
                }
            }
            Ok(out.into())
        }),
    ]
}

fn tshift_jobs() -> Vec<Job> {
    vec![
        job("tshift.generic", |ctx| {
            let p = match &ctx.scenario {
                Some(p) => p.clone(),
                None => random_pair(&ConnectionShape::new(ctx.m.unwrap_or(7), ctx.n.unwrap_or(2), ctx.degree_cap), ctx.seed, false)?,
            };
            Ok(tshift_relations(&p, ctx.trunc, Truncation::PolyDegree(1))?.into())
        }),
        job("tshift.flat", |ctx| {
            if ctx.scenario.is_some() {
                return Ok(JobOutput::default());
            }
            let p = gen_flat_pair(7, ctx.n.unwrap_or(4), ctx.seed, ctx.shears.max(1))?;
            let checks = tshift_relations(&p, ctx.trunc, Truncation::PolyDegree(1))?;
            Ok(tagged(checks.into_iter().filter(|c| c.id == "tshift.cs_psiW_flat").collect(), "flat").into())
        }),
    ]
}

fn dim3_jobs() -> Vec<Job> {
    vec![job("dim3", |ctx| {
        let mut out = Vec::new();
        match &ctx.scenario {
            Some(p) => out.extend(dim3_closed_forms(p, ctx.trunc)?),
            None => {
                let p = random_pair(&ConnectionShape::new(3, ctx.n.unwrap_or(3), ctx.degree_cap.max(1)), ctx.seed, true)?;
                out.extend(dim3_closed_forms(&p, ctx.trunc)?);
                let z = ConnectionPair::new(3, MatrixForm::zero(2), MatrixForm::zero(2), false)?;
                out.extend(tagged(dim3_closed_forms(&z, ctx.trunc)?, "A=0"));
            }
        }
        Ok(out.into())
    })]
}

fn eleven_jobs() -> Vec<Job> {
    vec![
        job("eleven.ledger", |ctx| {
            let p = match &ctx.scenario {
                Some(p) => p.clone(),
                None => random_pair(&ConnectionShape::new(11, ctx.n.unwrap_or(11), ctx.degree_cap).skew(true), ctx.seed, false)?,
            };
            let l = eleven_dim_ledger(&p, ctx.trunc, Truncation::PolyDegree(0))?;
            let mut notes = l.notes.clone();
            notes.push(format!(
                "eleven: identity read without the factor 2^3 leaves {} nonzero coefficient(s)",
                l.unscaled_residual.nonzero
            ));
            Ok(JobOutput { checks: l.checks, notes })
        }),
        job("anomaly.12", |ctx| {
            let shape = ConnectionShape::new(12, 12, 1).terms(4);
            let p = random_pair(&shape, ctx.seed, true)?;
            let trunc = Truncation::PolyDegree(0);
            let mut data = CurvatureData::new(curvature(p.a1(), trunc)?, 12, trunc);
            Ok(vec![
                Check::zero("anomaly.agw_12", "{L}⁽¹²⁾ = {8Â·ch − 32Â}⁽¹²⁾", &anomaly_residual_12(&mut data, 32)?),
                Check::nonzero("anomaly.agw_12_sharpness", "the constant 31 in place of 32 breaks the identity", &anomaly_residual_12(&mut data, 31)?),
            ]
            .into())
        }),
    ]
}

fn flat_pair(ctx: &Context, seed_offset: u64) -> CliResult<ConnectionPair> {
    if let Some(p) = &ctx.scenario {
        return Ok(p.clone());
    }
    let (m, n, seed) = (ctx.m.unwrap_or(7), ctx.n.unwrap_or(4), ctx.seed + seed_offset);
    if ctx.shears == 0 {
        Ok(flat_pair_from_seed(m, n, 0, ctx.degree_cap, seed)?)
    } else {
        Ok(gen_flat_pair(m, n, seed, ctx.shears)?)
    }
}

fn flat_jobs() -> Vec<Job> {
    vec![job("flat", |ctx| {
        let p = flat_pair(ctx, 0)?;
        let mut out = JobOutput::from(flat_suite(&p, ctx.trunc, Truncation::PolyDegree(1))?);
        out.notes.push("flat: the 7-component identity uses the CSΨ_W integrand (only θ appears)".into());
        Ok(out)
    })]
}

fn loop_jobs() -> Vec<Job> {
    vec![job("loop", |ctx| {
        let p = flat_pair(ctx, 0)?;
        Ok(loop_suite(&p, ctx.trunc, p.weight_truncation(ctx.degree_cap))?.into())
    })]
}

fn numeric_jobs() -> Vec<Job> {
    vec![
        job("numeric.laws", |ctx| Ok(check_transformations(&ctx.numeric)?.into())),
        job("numeric.series", |ctx| Ok(series_consistency(&ctx.numeric, 30)?.into())),
        job("numeric.cs", |ctx| {
            let p = match &ctx.scenario {
                Some(p) => p.clone(),
                None => random_pair(&ConnectionShape::new(8, 3, 1).terms(5), ctx.seed, false)?,
            };
            Ok(check_cs_modularity_s(&p, 2, &ctx.numeric)?.into())
        }),
        job("numeric.flat", |ctx| {
            let p = match &ctx.scenario {
                Some(p) if p.claims_flat() => p.clone(),
                Some(_) => return Ok(JobOutput::default()),
                None => gen_flat_pair(7, 4, ctx.seed, ctx.shears.max(1))?,
            };
            Ok(check_flat_psi_modularity_s(&p, 2, &ctx.numeric)?.into())
        }),
    ]
}

/// Jobs making up `suite`.
pub fn jobs_for(suite: &str) -> CliResult<Vec<Job>> {
    Ok(match suite {
        "theta" => theta_jobs(),
        "modular" => modular_jobs(),
        "transgression" => transgression_jobs(),
        "tshift" => tshift_jobs(),
        "dim3" => dim3_jobs(),
        "eleven" => eleven_jobs(),
        "flat" => flat_jobs(),
        "loop" => loop_jobs(),
        "numeric" => numeric_jobs(),
        "all" => SUITES[..SUITES.len() - 1].iter().flat_map(|s| jobs_for(s).expect("known suite")).collect(),
        other => return Err(CliError::Config(format!("unknown suite {:?}; expected one of {}", other, SUITES.join(", ")))),
    })
}

/// Thread count from `TRANSGRESSION_THREADS`, if set.
pub fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var("TRANSGRESSION_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Config(format!("TRANSGRESSION_THREADS must be a positive integer, got {:?}", v))),
        Err(_) => Ok(None),
    }
}

type Timed = (String, CliResult<JobOutput>, u64);

fn run_one(j: &Job, ctx: &Context) -> Timed {
    let t = Instant::now();
    let r = (j.run)(ctx);
    (j.name.clone(), r, t.elapsed().as_millis() as u64)
}

#[cfg(feature = "parallel")]
fn run_all(jobs: &[Job], ctx: &Context) -> CliResult<Vec<Timed>> {
    use rayon::prelude::*;
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        b = b.num_threads(n);
    }
    let pool = b.build().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(pool.install(|| jobs.par_iter().map(|j| run_one(j, ctx)).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_all(jobs: &[Job], ctx: &Context) -> CliResult<Vec<Timed>> {
    thread_cap()?;
    Ok(jobs.iter().map(|j| run_one(j, ctx)).collect())
}

/// Runs a suite. Entries are sorted by id; runtimes and the timestamp
/// are kept apart in [`Volatile`].
pub fn run_suite(suite: &str, ctx: &Context) -> CliResult<SuiteReport> {
    ctx.numeric.validate()?;
    let jobs = jobs_for(suite)?;
    let results = run_all(&jobs, ctx)?;
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    let mut runtime_ms = BTreeMap::new();
    for (name, r, ms) in results {
        let out = r?;
        entries.extend(out.checks.iter().map(|c| Entry::from_check(c, &name)));
        notes.extend(out.notes);
        runtime_ms.insert(name, ms);
    }
    let mut report = SuiteReport::new(suite, ctx.seed, ctx.config_echo(), entries, notes);
    let timestamp_unix = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    report.volatile = Some(Volatile { timestamp_unix, runtime_ms });
    Ok(report)
}

/// Parses `2i`, `1+2i`, `-0.5+1.5i`, `i`, `3`.
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Config(format!("cannot parse complex number {:?}", s));
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not a leading sign or an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse::<f64>().map_err(|_| bad())?,
        };
        Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
    } else {
        Ok(Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0))
    }
}

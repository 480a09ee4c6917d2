//! The `rbqsym` command line.
//!
//! Exit codes: 0 success, 1 not verified, 2 usage error, 3 divergence,
//! 4 budget or cutoff exhausted.

pub mod args;
pub mod config;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::Parser;
use serde_json::{json, Value};

use rbqsym_core::arith::parse_rational;
use rbqsym_core::basis::{transition_matrix, Direction};
use rbqsym_core::mzv::{self, Relation, ZetaSymbol};
use rbqsym_core::nested::EvalOptions;
use rbqsym_core::qmzv::{self, RhoYWord};
use rbqsym_core::rota_baxter::{diamond_with, rb_residual_with, spitzer_check, MbarComb};
use rbqsym_core::series::{expand_f, expand_m, expand_mbar, gamma_p, TruncatedSeries};
use rbqsym_core::standard_rba::waring_expansion;
use rbqsym_core::{f_to_m, m_to_f, quasi_shuffle_with, Basis, Error, LinComb, Limits, Lwc, MbarElement};

use args::{Cli, Command, Dir, EvalKind, SeriesBasis, VerifyArgs, VerifyKind};
use config::Config;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_VERIFIED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DIVERGENT: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                Error::Divergent { .. } => EXIT_DIVERGENT,
                Error::Budget { .. } | Error::ToleranceUnreachable { .. } | Error::DegreeOverflow { .. } => {
                    EXIT_BUDGET
                }
                _ => EXIT_USAGE,
            },
        }
    }
}

/// Whether a command established what it was asked to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Done,
    NotVerified,
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(Status::Done) => EXIT_OK,
        Ok(Status::NotVerified) => EXIT_NOT_VERIFIED,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let cfg = Config::resolve(&cli.global)?;
    let q = cli.global.q;
    match &cli.command {
        Command::Product { mbar, a, b } => product(&cfg, *mbar, a, b, out),
        Command::Basis { direction, alpha } => basis(&cfg, *direction, alpha, out),
        Command::Matrix { direction, size } => matrix(&cfg, *direction, *size, out),
        Command::Series { basis, alpha } => series(&cfg, *basis, alpha, out),
        Command::Verify(v) => verify(&cfg, q, v, out),
        Command::Eval { kind, symbol } => eval(&cfg, q, *kind, symbol, out),
        Command::Waring => waring(&cfg, cfg.vars, cfg.deg, out),
    }
}

fn limits(cfg: &Config) -> Limits {
    Limits { max_terms: cfg.budget }
}

fn eval_opts(cfg: &Config) -> EvalOptions {
    EvalOptions { tol: cfg.tol, max_cutoff: cfg.max_cutoff, ..Default::default() }
}

fn emit(out: &mut dyn Write, cfg: &Config, text: &str, value: impl FnOnce() -> Value) -> Result<(), CliError> {
    if cfg.json() {
        writeln!(out, "{}", serde_json::to_string_pretty(&value()).expect("json values serialize"))?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Done
    } else {
        Status::NotVerified
    }
}

fn parse_lwc(s: &str) -> Result<Lwc, CliError> {
    Ok(s.parse::<Lwc>()?)
}

fn json_terms(x: &LinComb<Lwc>, tag: Basis) -> Value {
    serde_json::to_value(x.to_json_terms(tag.tag())).expect("terms serialize")
}

fn product(cfg: &Config, mbar: bool, a: &str, b: &str, out: &mut dyn Write) -> Result<Status, CliError> {
    let lim = limits(cfg);
    if mbar {
        let (x, y): (MbarElement, MbarElement) = (a.parse()?, b.parse()?);
        let p: MbarComb = diamond_with(&x, &y, &lim)?;
        emit(out, cfg, &p.to_string(), || serde_json::to_value(p.to_json_terms(Basis::Mbar.tag())).expect("terms serialize"))?;
    } else {
        let p = quasi_shuffle_with(&parse_lwc(a)?, &parse_lwc(b)?, &lim)?;
        emit(out, cfg, &p.to_string(), || json_terms(&p, Basis::M))?;
    }
    Ok(Status::Done)
}

fn basis(cfg: &Config, dir: Dir, alpha: &str, out: &mut dyn Write) -> Result<Status, CliError> {
    let a = parse_lwc(alpha)?;
    let (x, tag) = match dir {
        Dir::F2m => (f_to_m(&a), Basis::M),
        Dir::M2f => (m_to_f(&a), Basis::F),
    };
    emit(out, cfg, &x.to_string(), || json_terms(&x, tag))?;
    Ok(Status::Done)
}

fn matrix(cfg: &Config, dir: Dir, size: u32, out: &mut dyn Write) -> Result<Status, CliError> {
    let d = match dir {
        Dir::F2m => Direction::F2m,
        Dir::M2f => Direction::M2f,
    };
    let m = transition_matrix(size, cfg.zero_budget, d, cfg.budget)?;
    if cfg.json() {
        writeln!(out, "{}", m.to_json())?;
    } else {
        writeln!(out, "{}", m.keys.join(" "))?;
        for row in &m.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(" "))?;
        }
    }
    Ok(Status::Done)
}

fn series(cfg: &Config, basis: SeriesBasis, alpha: &str, out: &mut dyn Write) -> Result<Status, CliError> {
    let (n, d) = (cfg.vars, cfg.deg);
    let s = match basis {
        SeriesBasis::M => expand_m(&parse_lwc(alpha)?, n, d)?,
        SeriesBasis::F => expand_f(&parse_lwc(alpha)?, n, d)?,
        SeriesBasis::Gamma => gamma_p(&parse_lwc(alpha)?, n, d, 16)?,
        SeriesBasis::Mbar => expand_mbar(&alpha.parse::<MbarElement>()?, n, d)?,
    };
    let text = if s.is_zero() { "0".to_string() } else { s.to_string() };
    if cfg.json() {
        writeln!(out, "{}", s.to_json())?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(Status::Done)
}

fn need(v: Option<u32>, flag: &str) -> Result<u32, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing -{flag}")))
}

fn need_str<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("missing -{flag}")))
}

fn tuple(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| CliError::Usage(format!("bad tuple entry {p:?}: {e}"))))
        .collect()
}

fn need_q(q: Option<f64>) -> Result<f64, CliError> {
    q.ok_or_else(|| CliError::Usage("missing --q".into()))
}

fn relation_for(v: &VerifyArgs) -> Result<Relation, CliError> {
    let four = || -> Result<(u32, u32, u32, u32), CliError> {
        Ok((need(v.a, "a")?, need(v.b, "b")?, v.m.unwrap_or(0), v.n.unwrap_or(0)))
    };
    let rel = match v.kind {
        VerifyKind::Stuffle => {
            let (a, b, m, n) = four()?;
            mzv::stuffle_relation(a, b, m, n)?
        }
        VerifyKind::Shuffle => {
            let (a, b, m, n) = four()?;
            mzv::shuffle_relation(a, b, m, n)?
        }
        VerifyKind::DoubleShuffle => {
            let (a, b, m, n) = four()?;
            mzv::double_shuffle_relation(a, b, m, n)?
        }
        VerifyKind::Euler => mzv::euler_decomposition(need(v.a, "a")?, need(v.b, "b")?)?,
        VerifyKind::Stirling => mzv::stirling_relation(need(v.a, "a")?, v.m.unwrap_or(0))?,
        _ => unreachable!("not a relation kind"),
    };
    match &v.perturb {
        Some(d) => Ok(rel.perturbed(parse_rational(d)?)),
        None => Ok(rel),
    }
}

fn verify(cfg: &Config, q: Option<f64>, v: &VerifyArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let lim = limits(cfg);
    match v.kind {
        VerifyKind::Stuffle | VerifyKind::Shuffle | VerifyKind::DoubleShuffle | VerifyKind::Euler | VerifyKind::Stirling => {
            let rel = relation_for(v)?;
            let report = match q {
                Some(q) if v.kind == VerifyKind::Stuffle => qmzv::verify_q(
                    &Relation { name: format!("q-{}", rel.name), ..rel },
                    q,
                    cfg.tol,
                    &eval_opts(cfg),
                )?,
                Some(_) => return Err(CliError::Usage("--q applies to stuffle only".into())),
                None => rel.verify(cfg.tol, &eval_opts(cfg))?,
            };
            let text = format!(
                "{}: {} (lhs {:.12}, rhs {:.12}, residual {:.3e}, tail {:.3e}, tol {:.1e})",
                report.name,
                verdict(report.verified),
                report.lhs_value,
                report.rhs_value,
                report.residual,
                report.tail_bound,
                report.tolerance
            );
            emit(out, cfg, &text, || serde_json::to_value(&report).expect("report serializes"))?;
            Ok(status(report.verified))
        }
        VerifyKind::RbIdentity => {
            let pairs: Vec<(MbarElement, MbarElement)> = match (&v.u, &v.v) {
                (Some(x), Some(y)) => vec![(x.parse()?, y.parse()?)],
                _ => {
                    let basis = MbarElement::enumerate_up_to(v.max_size.saturating_sub(1), cfg.zero_budget);
                    let mut ps = Vec::new();
                    for x in &basis {
                        for y in basis.iter().filter(|y| x.size() + y.size() <= v.max_size) {
                            ps.push((x.clone(), y.clone()));
                        }
                    }
                    ps
                }
            };
            let mut failures = Vec::new();
            for (x, y) in &pairs {
                let r = rb_residual_with(&LinComb::singleton(x.clone()), &LinComb::singleton(y.clone()), &lim)?;
                if !r.is_zero() {
                    failures.push(format!("{x} {y}: {r}"));
                }
            }
            let ok = failures.is_empty();
            let text = format!("rb-identity: {} ({} pairs, {} failures)", verdict(ok), pairs.len(), failures.len());
            emit(out, cfg, &text, || json!({"kind": "rb-identity", "pairs": pairs.len(), "failures": failures, "verified": ok}))?;
            Ok(status(ok))
        }
        VerifyKind::Spitzer => {
            let (k, n) = (need(v.k, "k")?, need(v.n, "n")?);
            let (l, r) = spitzer_check(k, n, &lim)?;
            let ok = l == r;
            let text = format!("spitzer(k={k}, n={n}): {}\nlhs: {l}\nrhs: {r}", verdict(ok));
            emit(out, cfg, &text, || {
                json!({"kind": "spitzer", "k": k, "n": n, "lhs": json_terms(&l, Basis::M), "rhs": json_terms(&r, Basis::M), "verified": ok})
            })?;
            Ok(status(ok))
        }
        VerifyKind::Duality => {
            let (s, t) = (tuple(need_str(&v.s, "-s")?)?, tuple(need_str(&v.t, "-t")?)?);
            let r = qmzv::duality_check(&s, &t, need_q(q)?, cfg.tol, &eval_opts(cfg))?;
            let text = format!(
                "duality {} = {}: {} (normalized residual {:.3e}, tail {:.3e}; literal residual {:.3e}, literal {})",
                r.lhs,
                r.rhs,
                verdict(r.verified),
                r.normalized.residual,
                r.normalized.tail_bound,
                r.literal.residual,
                verdict(r.literal.verified)
            );
            emit(out, cfg, &text, || serde_json::to_value(&r).expect("report serializes"))?;
            Ok(status(r.verified))
        }
        VerifyKind::Homomorphism => {
            let (x, y): (RhoYWord, RhoYWord) = (need_str(&v.u, "u")?.parse()?, need_str(&v.v, "v")?.parse()?);
            let r = qmzv::homomorphism_check(&x, &y, need_q(q)?, cfg.tol, &eval_opts(cfg))?;
            let text = format!(
                "homomorphism {} ⧢ {}: {} (lhs {:.12}, rhs {:.12}, residual {:.3e}, tail {:.3e})",
                r.u,
                r.v,
                verdict(r.verified),
                r.lhs_value,
                r.rhs_value,
                r.residual,
                r.tail_bound
            );
            emit(out, cfg, &text, || serde_json::to_value(&r).expect("report serializes"))?;
            Ok(status(r.verified))
        }
        VerifyKind::Waring => waring(cfg, cfg.vars, cfg.deg, out),
        VerifyKind::OracleSeries => {
            let (a, b) = (parse_lwc(need_str(&v.u, "u")?)?, parse_lwc(need_str(&v.v, "v")?)?);
            let (n, d) = (cfg.vars, cfg.deg);
            let lhs = expand_m(&a, n, d)?.multiply(&expand_m(&b, n, d)?)?;
            let prod = quasi_shuffle_with(&a, &b, &lim)?;
            let rhs = TruncatedSeries::from_lincomb(n, d, &prod, |g| expand_m(g, n, d))?;
            let ok = lhs == rhs;
            let text = format!("oracle-series {a} * {b} at N={n}, D={d}: {}", verdict(ok));
            emit(out, cfg, &text, || json!({"kind": "oracle-series", "u": a.to_string(), "v": b.to_string(), "vars": n, "deg": d, "verified": ok}))?;
            Ok(status(ok))
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "verified"
    } else {
        "NOT verified"
    }
}

fn waring(cfg: &Config, m: u32, deg: u32, out: &mut dyn Write) -> Result<Status, CliError> {
    let w = waring_expansion(m, deg)?;
    let show = |v: &[rbqsym_core::standard_rba::Poly]| -> Vec<String> {
        v.iter().map(|p| if p.is_zero() { "0".to_string() } else { p.to_string() }).collect()
    };
    let (lhs, rhs) = (show(&w.exp_side), show(&w.elementary_side));
    let ok = w.holds();
    let text = format!(
        "exp side:        [{}]\nelementary side: [{}]\n{}",
        lhs.join(", "),
        rhs.join(", "),
        if ok { "pass" } else { "fail" }
    );
    emit(out, cfg, &text, || json!({"vars": m, "deg": deg, "exp_side": lhs, "elementary_side": rhs, "pass": ok}))?;
    Ok(status(ok))
}

fn eval(cfg: &Config, q: Option<f64>, kind: EvalKind, symbol: &str, out: &mut dyn Write) -> Result<Status, CliError> {
    let opts = eval_opts(cfg);
    let (label, ev) = match kind {
        EvalKind::Mzv => {
            let z: ZetaSymbol = symbol.parse()?;
            (z.to_string(), mzv::zeta_lwc(&z, &opts)?)
        }
        EvalKind::Qmzv => {
            let q = need_q(q)?;
            if !symbol.is_empty() && symbol.chars().all(|c| c == 'r' || c == 'y') {
                let w: RhoYWord = symbol.parse()?;
                (format!("ζ_q[{w}]"), qmzv::zeta_q_word(&w, q, &opts)?)
            } else {
                let z: ZetaSymbol = symbol.parse()?;
                (format!("{z}_q"), qmzv::zeta_q_symbol(&z, q, &opts)?)
            }
        }
    };
    let text = format!("{label} = {:.15}\ntail_bound = {:.3e}\ncutoff = {}", ev.value, ev.tail_bound, ev.cutoff);
    emit(out, cfg, &text, || {
        json!({"symbol": label, "q": q, "value": ev.value, "tail_bound": ev.tail_bound, "cutoff": ev.cutoff})
    })?;
    Ok(Status::Done)
}

//! The `heckeklr` command: configuration loading, suite orchestration and JSON-lines reports.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use heckeklr::diagramkit::{DiagError, Diagram, Family};
use heckeklr::isokit::{
    check_gamma_inverse, check_intertwine, cyclo_correspondence, default_generators, nilhecke_idem, symmetrizer,
    violating_generator_check, IsoConfig, IsoError, IsoOpts, IsoType, OpCheck, SymSign,
};
use heckeklr::paramkit::{ParamError, Params, RawConfig};
use heckeklr::repkit::{basis_rank, run_suite_with, ComponentLabel, HeckeRep, KlrRep, ModuleVec, Rep, RepError, SuiteOpts};
use heckeklr::repkit::Mutation;
use heckeklr::ringkit::{RingError, TruncSeries, XPoly};
use heckeklr::{FieldKind, Fp, Rational, Scalar};

#[derive(Parser, Debug)]
#[command(name = "heckeklr", version, about = "Exact checks for Hecke-type and KLR-type diagram algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(Verify),
    /// Evaluate a diagram on a probe.
    Apply(ApplyArgs),
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Relation suites of one family, or of every family the configuration supports.
    Relations(RelArgs),
    /// Intertwining of the completed isomorphism of one type (O, W, F, WF).
    Iso(Common),
    /// Rank of the weighted basis on the polynomial representation.
    Basis(Common),
    /// NilHecke idempotents and Young symmetrizers.
    Idempotents(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Parameter file (JSON).
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub family: Option<String>,
    /// Number of strands, overriding the configuration.
    #[arg(long)]
    pub n: Option<usize>,
    /// Truncation order, overriding the configuration.
    #[arg(long)]
    pub order: Option<u32>,
    /// Exponent box of the Laurent probes (the basis exponent box for `verify basis`).
    #[arg(long)]
    pub probe_box: Option<i16>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RelArgs {
    #[command(flatten)]
    pub common: Common,
    /// Corrupt one relation instance with this seed (checker self-test).
    #[arg(long)]
    pub mutate: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Diagram file (JSON).
    #[arg(long)]
    pub diagram: PathBuf,
    /// Probe in the module's JSON form, inline or as `@file`; defaults to 1.
    #[arg(long)]
    pub probe: Option<String>,
}

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "configuration error: {s}"),
            CliError::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<DiagError> for CliError {
    fn from(e: DiagError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Param(e) => e.into(),
            RepError::Diag(e) => e.into(),
            RepError::WrongFamily(..) => CliError::Config(e.to_string()),
            RepError::Ring(RingError::PrecisionUnderflow) => CliError::Config(format!("{e}; raise --order")),
            e => CliError::Internal(e.to_string()),
        }
    }
}

impl From<IsoError> for CliError {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::Config(s) => CliError::Config(s),
            IsoError::Param(e) => e.into(),
            IsoError::Rep(e) => e.into(),
            IsoError::Diag(e) => e.into(),
            IsoError::Ring(RingError::PrecisionUnderflow) => CliError::Config(format!("{e}; raise --order")),
            e => CliError::Internal(e.to_string()),
        }
    }
}

/// A finished run: the report text and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub pass: bool,
    pub report: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Verify(Verify::Relations(a)) => &a.common,
        Command::Verify(Verify::Iso(c) | Verify::Basis(c) | Verify::Idempotents(c)) => c,
        Command::Apply(a) => &a.common,
    }
}

/// Run a parsed command and write its report.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let c = common(&cli.command);
    if let Some(w) = c.workers {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    let text = fs::read_to_string(&c.config).map_err(|e| CliError::Config(format!("{}: {e}", c.config.display())))?;
    let raw = RawConfig::from_json_str(&text)?;
    let outcome = dispatch(&cli.command, &raw)?;
    heckeklr::report::emit(c.out.as_deref(), &outcome.report).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(outcome)
}

macro_rules! by_field {
    ($kind:expr, $S:ident => $body:expr, $($p:literal)*) => {
        match $kind {
            FieldKind::Rational => {
                type $S = Rational;
                $body
            }
            $(FieldKind::Prime($p) => {
                type $S = Fp<$p>;
                $body
            })*
            FieldKind::Prime(p) => Err(CliError::Config(format!("prime field F{p} is not built in"))),
        }
    };
}

fn dispatch(cmd: &Command, raw: &RawConfig) -> Result<Outcome, CliError> {
    by_field!(raw.field()?.kind, S => run_with::<S>(cmd, raw),
        2 3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61 67 71 73 79 83 89 97 101)
}

fn params<S: Scalar>(c: &Common, raw: &RawConfig) -> Result<Params<S>, CliError> {
    let mut p = raw.resolve::<S>()?;
    if let Some(n) = c.n {
        p = p.with_n(n);
    }
    if let Some(o) = c.order {
        p = p.with_order(o);
    }
    p.ctx()?;
    Ok(p)
}

fn run_with<S: Scalar>(cmd: &Command, raw: &RawConfig) -> Result<Outcome, CliError> {
    let c = common(cmd);
    let p = params::<S>(c, raw)?;
    match cmd {
        Command::Verify(Verify::Relations(a)) => relations(&p, &a.common, a.mutate),
        Command::Verify(Verify::Iso(c)) => iso(&p, c),
        Command::Verify(Verify::Basis(c)) => basis(&p, c),
        Command::Verify(Verify::Idempotents(c)) => idempotents(&p, c),
        Command::Apply(a) => apply(&p, a),
    }
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    Family::parse(s).ok_or_else(|| CliError::Config(format!("unknown family {s}")))
}

fn supported<S: Scalar>(f: Family, p: &Params<S>) -> bool {
    (!f.has_ghosts() || p.kappa.is_some()) && (!f.has_reds() || !p.reds.is_empty())
}

fn relations<S: Scalar>(p: &Params<S>, c: &Common, mutate: Option<u64>) -> Result<Outcome, CliError> {
    let families = match &c.family {
        Some(s) => {
            let f = parse_family(s)?;
            if !supported(f, p) {
                return Err(CliError::Config(format!("family {} needs κ or red lines the configuration lacks", f.name())));
            }
            vec![f]
        }
        None => Family::ALL.into_iter().filter(|&f| supported(f, p)).collect(),
    };
    let opts = SuiteOpts { probe_box: c.probe_box.unwrap_or(2), mutation: mutate.map(|seed| Mutation { seed }), ..SuiteOpts::default() };
    let mut lines = Vec::new();
    let mut suites = Vec::new();
    let mut pass = true;
    for f in families {
        let r = run_suite_with(f, p, &opts)?;
        pass &= r.all_pass();
        lines.extend(r.records.iter().map(|x| x.to_json()));
        suites.push(r.summary());
    }
    let summary = json!({"summary": true, "command": "verify relations", "status": status(pass), "suites": suites});
    Ok(Outcome { pass, report: heckeklr::report::jsonl(lines, summary) })
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn iso<S: Scalar>(p: &Params<S>, c: &Common) -> Result<Outcome, CliError> {
    let name = c.family.as_deref().ok_or_else(|| CliError::Config("verify iso needs --family O|W|F|WF".into()))?;
    let kind = IsoType::parse(name).ok_or_else(|| CliError::Config(format!("unknown isomorphism type {name}")))?;
    let cfg = IsoConfig::new(kind, p)?;
    let probe_box = c.probe_box.unwrap_or(2);
    let mut report = check_intertwine(&cfg, &default_generators(&cfg), &IsoOpts { probe_box, ..IsoOpts::default() })?;
    report.extend(check_gamma_inverse(&cfg, probe_box)?);
    let mut pass = report.all_pass();
    let mut lines: Vec<Value> = report.records.iter().map(|r| r.to_json()).collect();
    if kind.has_reds() {
        let q = p.red_labels();
        for a in 0..p.graph.len() {
            let u = vec![a; p.n];
            let line = match cyclo_correspondence(&cfg, &q, &u) {
                Ok((unit, rep)) => {
                    pass &= rep.pass();
                    rep.to_json(&unit)
                }
                Err(IsoError::NotDivisible(e)) => {
                    pass = false;
                    json!({"u": u.iter().map(|i| i + 1).collect::<Vec<_>>(), "sigma": cfg.sigma(), "status": "FAIL", "error": e})
                }
                Err(e) => return Err(e.into()),
            };
            lines.push(json!({"check": "cyclotomic correspondence", "result": line}));
        }
        let v = violating_generator_check(&cfg)?;
        pass &= v.pass();
        lines.push(v.to_json());
    }
    let mut summary = report.summary();
    summary["command"] = json!("verify iso");
    summary["status"] = json!(status(pass));
    Ok(Outcome { pass, report: heckeklr::report::jsonl(lines, summary) })
}

fn basis<S: Scalar>(p: &Params<S>, c: &Common) -> Result<Outcome, CliError> {
    let expbox = c.probe_box.unwrap_or(1);
    let (rank, count) = basis_rank(p, expbox)?;
    let pass = rank == count;
    let line = json!({"check": "basis rank", "n": p.n, "expbox": expbox, "rank": rank, "count": count, "status": status(pass)});
    let summary = json!({"summary": true, "command": "verify basis", "status": status(pass)});
    Ok(Outcome { pass, report: heckeklr::report::jsonl([line], summary) })
}

/// Compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| compositions(n - first).into_iter().map(move |rest| [vec![first], rest].concat()))
        .collect()
}

fn idempotents<S: Scalar>(p: &Params<S>, _c: &Common) -> Result<Outcome, CliError> {
    let mut checks: Vec<OpCheck> = Vec::new();
    for k in 1..=p.n.min(3) {
        checks.extend(nilhecke_idem(k)?.check::<S>()?);
    }
    for k in compositions(p.n) {
        for sign in [SymSign::Plus, SymSign::Minus] {
            checks.extend(symmetrizer(p, &k, sign)?.check()?);
        }
    }
    let pass = checks.iter().all(|x| x.pass);
    let failed = checks.iter().filter(|x| !x.pass).count();
    let summary = json!({"summary": true, "command": "verify idempotents", "checks": checks.len(), "failed": failed, "status": status(pass)});
    Ok(Outcome { pass, report: heckeklr::report::jsonl(checks.iter().map(|x| x.to_json()), summary) })
}

fn read_arg(s: &str) -> Result<Value, CliError> {
    let text = match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("probe: {e}")))
}

fn apply<S: Scalar>(p: &Params<S>, a: &ApplyArgs) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(&a.diagram).map_err(|e| CliError::Config(format!("{}: {e}", a.diagram.display())))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("diagram: {e}")))?;
    let d = Diagram::from_json(&json)?;
    if let Some(f) = &a.common.family {
        if parse_family(f)? != d.family {
            return Err(CliError::Config(format!("diagram family {} differs from --family {f}", d.family.name())));
        }
    }
    let p = p.clone().with_n(d.n());
    let ctx = p.ctx()?;
    let thetas = if d.family.has_reds() { p.reds.thetas() } else { Vec::new() };
    d.validate(&thetas)?;
    let comp = ComponentLabel::of_loading(&d.bottom, &thetas);
    let probe = a.probe.as_deref().map(read_arg).transpose()?;
    let bad = |e: heckeklr::ringkit::RingError| CliError::Config(format!("probe: {e}"));
    let result = if d.family.is_klr() {
        let rep = KlrRep::new(d.family, &p)?;
        let f = match &probe {
            Some(v) => TruncSeries::from_json(ctx, v).map_err(bad)?,
            None => TruncSeries::one(ctx),
        };
        rep.apply_vec(&d, &ModuleVec::single(comp, f))?.to_json::<S>()
    } else {
        let rep = HeckeRep::new(d.family, &p)?;
        let f = match &probe {
            Some(v) => XPoly::from_json(ctx, v).map_err(bad)?,
            None => XPoly::one(ctx),
        };
        rep.apply_vec(&d, &ModuleVec::single(comp, f))?.to_json::<S>()
    };
    Ok(Outcome { pass: true, report: format!("{result}\n") })
}

//! `mcover`: command line front end. Every subcommand prints one report; exit status is 0
//! when the report passes, 1 when a check fails and 2 on a usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcover::cover::{
    center, commutator_identities, distinguished_subgroups, verify_cocycle_condition, CoverError, CoverSpec,
    FiniteCoverGroup,
};
use mcover::heis::HeisError;
use mcover::localclass::{hilbert_exp, tame_symbol_residue, FieldError, LocalFieldSpec, UnitClass};
use mcover::mtp::{associativity_check, permutation_equivariance_check, weak_equivalence_orbits, MtpError, WellMatched};
use mcover::segments::{
    jacquet_segment, label, order_multisegment, soc_cos_pair, wsets, Kind, Multisegment, MultisegmentJson, Omega,
    SegError, SegmentJson,
};
use mcover::verify::{
    block_suite, constants_suite, heisenberg_suite, special_suite, transfer_report, verify_all, Grid, Options, Point,
    VerifyError,
};
use mcover::Report;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "mcover", version, about = "Exact finite checks for metaplectic torus covers")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Bound on elementary checks per exhaustive scan.
    #[arg(long, env = "MCOVER_CAP", global = true)]
    cap: Option<u64>,
    /// Bound on compared choices (Lagrangians, extensions).
    #[arg(long, global = true)]
    choice_cap: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON file with defaults for any of the flags (keys: p, n, c, beta, cap, choice_cap,
    /// seed, format, grid).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hilbert symbol of two classes given as `v,w`.
    Hilbert {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Cocycle, commutator, center, subgroup and constant checks.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Heisenberg pairs, special pairs and Lagrangian induction on the torus model.
    Heis {
        #[arg(value_enum)]
        what: HeisWhat,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Well-matched pairs, transfer and the metaplectic tensor product.
    Mtp {
        #[arg(value_enum)]
        what: MtpWhat,
        #[command(flatten)]
        spec: SpecArgs,
        /// Block order for `perm`, e.g. `1,0`; reversal by default.
        #[arg(long)]
        order: Option<String>,
    },
    /// Segment and multisegment operations on a JSON input.
    Seg {
        #[arg(value_enum)]
        what: SegWhat,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Split point for `jacquet`.
        #[arg(long)]
        s: Option<u64>,
        #[arg(long, value_enum, default_value = "z")]
        kind: KindArg,
        /// Compositions for `wsets`.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Every suite over a grid of parameters.
    VerifyAll {
        #[arg(long, value_enum, default_value = "standard")]
        grid: GridArg,
        /// Corrupt the cocycle (negative control).
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    Check {
        #[arg(long, value_enum)]
        what: CoverWhat,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "levi")]
        model: ModelArg,
        /// Corrupt the cocycle (negative control for `cocycle`).
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CoverWhat {
    Cocycle,
    Commutator,
    Scalar,
    Center,
    Subgroups,
    Constants,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModelArg {
    Levi,
    Product,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum HeisWhat {
    Svn,
    Lagrangians,
    Special,
    Lind,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MtpWhat {
    Build,
    Transfer,
    Assoc,
    Perm,
    Weak,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SegWhat {
    Order,
    Soc,
    Jacquet,
    Dual,
    Wsets,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Z,
    L,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GridArg {
    Standard,
    Degenerate,
    /// The `grid` key of the config file.
    Config,
}

#[derive(Args, Debug, Clone, Default)]
struct FieldArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Debug, Clone, Default)]
struct SpecArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    /// Composition, e.g. `1,1`.
    #[arg(long)]
    beta: Option<String>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    p: Option<u64>,
    n: Option<u64>,
    c: Option<i64>,
    beta: Option<Vec<usize>>,
    cap: Option<u64>,
    choice_cap: Option<usize>,
    seed: Option<u64>,
    format: Option<Format>,
    grid: Option<Grid>,
}

/// `Usage` exits with 2; `Check` is reported as a failed check (exit 1).
enum CliError {
    Usage(String),
    Check(String),
}

fn usage(s: String) -> CliError {
    CliError::Usage(s)
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        usage(e.to_string())
    }
}

impl From<HeisError> for CliError {
    fn from(e: HeisError) -> Self {
        match e {
            HeisError::Precondition(_) => usage(e.to_string()),
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::Heis(h) => h.into(),
            CoverError::NotSquare(_) => CliError::Check(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<MtpError> for CliError {
    fn from(e: MtpError) -> Self {
        match e {
            MtpError::Cover(c) => c.into(),
            MtpError::Heis(h) => h.into(),
            MtpError::Precondition(_) | MtpError::Incompatible(_) => usage(e.to_string()),
            MtpError::Structure(_) => CliError::Check(e.to_string()),
        }
    }
}

impl From<SegError> for CliError {
    fn from(e: SegError) -> Self {
        match e {
            SegError::Ordering(..) => CliError::Check(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Field(x) => x.into(),
            VerifyError::Cover(x) => x.into(),
            VerifyError::Heis(x) => x.into(),
            VerifyError::Mtp(x) => x.into(),
            VerifyError::Seg(x) => x.into(),
        }
    }
}

struct Ctx {
    file: FileConfig,
    opts: Options,
}

impl Ctx {
    fn field(&self, a: &FieldArgs) -> Result<LocalFieldSpec, CliError> {
        let p = a.p.or(self.file.p).ok_or_else(|| usage("missing --p".into()))?;
        let n = a.n.or(self.file.n).ok_or_else(|| usage("missing --n".into()))?;
        Ok(LocalFieldSpec::new(p, n)?)
    }

    fn point(&self, a: &SpecArgs) -> Result<Point, CliError> {
        let f = self.field(&FieldArgs { p: a.p, n: a.n })?;
        let beta = match &a.beta {
            Some(s) => parse_list(s)?,
            None => self.file.beta.clone().unwrap_or_else(|| vec![1]),
        };
        let pt = Point { p: f.p, n: f.n, c: a.c.or(self.file.c).unwrap_or(0), beta };
        pt.spec()?;
        Ok(pt)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| usage(format!("bad list {s:?}: {e}"))))
        .collect()
}

fn parse_class(s: &str, n: u64) -> Result<UnitClass, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!("class {s:?} must be v,w")));
    }
    let v: i64 = parts[0].trim().parse().map_err(|e| usage(format!("{s:?}: {e}")))?;
    let w: i64 = parts[1].trim().parse().map_err(|e| usage(format!("{s:?}: {e}")))?;
    Ok(UnitClass::new(v, w, n))
}

fn read_multisegment(path: &Option<PathBuf>) -> Result<(Multisegment, Option<Omega>), CliError> {
    let path = path.as_ref().ok_or_else(|| usage("missing --input".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let j: MultisegmentJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(j.parse()?)
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
    }
}

fn hilbert_report(f: &LocalFieldSpec, a: UnitClass, b: UnitClass) -> Report {
    let e = hilbert_exp(f, a, b);
    let tame = tame_symbol_residue(f, a, b);
    let zeta = f.zeta_residue();
    let mut rep = Report::new("hilbert symbol", json!({"p": f.p, "n": f.n, "a": a, "b": b}));
    rep.set("exponent", e);
    rep.set("zeta_residue", zeta);
    rep.set("tame_residue", tame);
    let mut pw = 1u64;
    for _ in 0..e {
        pw = pw * zeta % f.p;
    }
    rep.require(pw == tame, "zeta^exponent = tame symbol residue", json!({"zeta^e": pw, "tame": tame}));
    rep
}

fn cover_check(ctx: &Ctx, what: CoverWhat, spec: &CoverSpec, model: ModelArg, perturb: bool) -> Result<Report, CliError> {
    let cap = ctx.opts.cap;
    let pt = Point { p: spec.field.p, n: spec.n(), c: spec.c as i64, beta: spec.beta.clone() };
    Ok(match what {
        CoverWhat::Cocycle => {
            let m = match model {
                ModelArg::Levi => FiniteCoverGroup::levi(spec),
                ModelArg::Product => FiniteCoverGroup::product(spec),
            };
            let m = if perturb { m.perturbed() } else { m };
            verify_cocycle_condition(&m, cap)?
        }
        CoverWhat::Commutator => commutator_identities(spec, cap)?,
        CoverWhat::Scalar => block_suite(&pt, &ctx.opts)?,
        CoverWhat::Center => {
            let c = center(spec);
            let mut rep = Report::new("center", spec.to_json());
            rep.require(c.equal, "brute force = closed form", json!({"brute": c.brute, "closed": c.closed_form}));
            rep.set("central_base_elements", &c.brute);
            rep.set("index_over_small", c.index_over_small);
            rep
        }
        CoverWhat::Subgroups => distinguished_subgroups(spec)?.1,
        CoverWhat::Constants => constants_suite(&pt)?,
    })
}

fn heis_report(ctx: &Ctx, what: HeisWhat, spec: &CoverSpec) -> Result<Report, CliError> {
    Ok(match what {
        HeisWhat::Svn => heisenberg_suite(spec, &ctx.opts)?,
        HeisWhat::Lagrangians => {
            let full = heisenberg_suite(spec, &ctx.opts)?;
            let mut rep = Report::new("lagrangians", spec.to_json());
            for k in ["n_order", "center_order", "d"] {
                rep.set(k, &full.data[k]);
            }
            for s in full.subchecks.into_iter().filter(|s| s.check == "Lagrangian conditions") {
                rep.push(s);
            }
            rep
        }
        HeisWhat::Special => special_suite(spec, &ctx.opts, false)?,
        HeisWhat::Lind => special_suite(spec, &ctx.opts, true)?,
    })
}

fn mtp_report(ctx: &Ctx, what: MtpWhat, spec: &CoverSpec, order: &Option<String>) -> Result<Report, CliError> {
    let cap = ctx.opts.cap;
    let pt = Point { p: spec.field.p, n: spec.n(), c: spec.c as i64, beta: spec.beta.clone() };
    Ok(match what {
        MtpWhat::Build => {
            let wm = WellMatched::build(spec, cap)?;
            let mut rep = Report::new("well-matched", spec.to_json());
            rep.set("levi_order", wm.levi.grp.order());
            rep.set("product_order", wm.product.grp.order());
            rep.set("h_order", wm.levi.sp.h.order());
            rep.set("n_order", wm.levi.sp.n.order());
            rep.push(wm.certificate);
            rep
        }
        MtpWhat::Transfer => transfer_report(&pt, &ctx.opts)?,
        MtpWhat::Assoc => associativity_check(spec, cap, usize::MAX)?,
        MtpWhat::Perm => {
            let ord = match order {
                Some(s) => parse_list(s)?,
                None => (0..spec.beta.len()).rev().collect(),
            };
            permutation_equivariance_check(spec, &ord, cap)?
        }
        MtpWhat::Weak => weak_equivalence_orbits(spec, cap)?.1,
    })
}

fn seg_strings(segs: &[mcover::segments::Segment]) -> Vec<String> {
    segs.iter().map(|s| s.to_string()).collect()
}

fn seg_report(
    what: SegWhat,
    input: &Option<PathBuf>,
    s: Option<u64>,
    kind: KindArg,
    beta: &Option<String>,
    gamma: &Option<String>,
) -> Result<Report, CliError> {
    let kind = match kind {
        KindArg::Z => Kind::Z,
        KindArg::L => Kind::L,
    };
    if let SegWhat::Wsets = what {
        let b = parse_list(beta.as_deref().ok_or_else(|| usage("missing --beta".into()))?)?;
        let g = parse_list(gamma.as_deref().ok_or_else(|| usage("missing --gamma".into()))?)?;
        let ws = wsets(&b, &g)?;
        let mut rep = Report::new("wsets", json!({"beta": b, "gamma": g}));
        rep.set("count", ws.len());
        rep.set("permutations", &ws);
        return Ok(rep);
    }
    let (m, omega) = read_multisegment(input)?;
    let omega = omega.unwrap_or_else(|| Omega::token("omega"));
    let spec = json!({"segments": seg_strings(m.segments()), "omega": omega.name()});
    let segs = m.segments();
    Ok(match what {
        SegWhat::Order => {
            let v = order_multisegment(&m)?;
            let mut rep = Report::new("order", spec);
            rep.set("ordered", seg_strings(&v));
            rep.set("segments", v.iter().map(SegmentJson::from_segment).collect::<Vec<_>>());
            rep
        }
        SegWhat::Soc => {
            if segs.len() != 2 {
                return Err(usage(format!("soc needs exactly two segments, got {}", segs.len())));
            }
            let l = soc_cos_pair(&segs[0], &segs[1], &omega, kind);
            let mut rep = Report::new(if kind == Kind::Z { "socle" } else { "cosocle" }, spec);
            rep.set("label", l.to_string());
            rep.set("segments", seg_strings(l.m.segments()));
            rep.set("irreducible_product", l.m == m);
            rep.require(l.m.degree() == m.degree(), "degree conserved", json!([l.m.degree(), m.degree()]));
            rep.require(l.m.support() == m.support(), "cuspidal support conserved", json!(null));
            rep
        }
        SegWhat::Jacquet => {
            if segs.len() != 1 {
                return Err(usage(format!("jacquet needs exactly one segment, got {}", segs.len())));
            }
            let s = s.ok_or_else(|| usage("missing --s".into()))?;
            let r = jacquet_segment(&segs[0], s, kind)?;
            let mut rep = Report::new("jacquet", json!({"segment": segs[0].to_string(), "s": s, "kind": kind}));
            let show = |x: &Option<mcover::segments::Segment>| x.as_ref().map(|y| y.to_string());
            match r {
                None => rep.set("result", Value::Null),
                Some((a, b)) => rep.set("result", json!([show(&a), show(&b)])),
            }
            rep
        }
        SegWhat::Dual => {
            let l = label(&m, &omega, kind);
            let d = l.dual();
            let mut rep = Report::new("dual", spec);
            rep.set("dual", d.to_string());
            rep.set("segments", seg_strings(d.m.segments()));
            rep.require(d.dual() == l, "duality is an involution", json!(null));
            rep
        }
        SegWhat::Wsets => unreachable!(),
    })
}

fn render_human(rep: &Report) -> String {
    fn walk(r: &Report, depth: usize, out: &mut Vec<String>) {
        let pad = "  ".repeat(depth);
        let head = if r.pass { "PASS" } else { "FAIL" };
        out.push(format!("{pad}{head} {}", r.check));
        if let Some(ce) = &r.counterexample {
            out.push(format!("{pad}  counterexample: {ce}"));
        }
        for (k, v) in &r.data {
            out.push(format!("{pad}  {k}: {v}"));
        }
        for n in &r.notes {
            out.push(format!("{pad}  note: {n}"));
        }
        for s in &r.subchecks {
            walk(s, depth + 1, out);
        }
    }
    let mut out = vec![format!("spec: {}", rep.spec)];
    walk(rep, 0, &mut out);
    out.join("\n") + "\n"
}

fn dispatch(cli: &Cli) -> Result<(Report, Format), CliError> {
    let file = load_config(&cli.config)?;
    let defaults = Options::default();
    let opts = Options {
        cap: cli.cap.or(file.cap).unwrap_or(defaults.cap),
        choice_cap: cli.choice_cap.or(file.choice_cap).unwrap_or(defaults.choice_cap),
        seed: cli.seed.or(file.seed).unwrap_or(defaults.seed),
        perturb: false,
    };
    let format = cli.format.or(file.format).unwrap_or(Format::Human);
    let ctx = Ctx { file, opts };
    let rep = match &cli.cmd {
        Cmd::Hilbert { field, a, b } => {
            let f = ctx.field(field)?;
            hilbert_report(&f, parse_class(a, f.n)?, parse_class(b, f.n)?)
        }
        Cmd::Cover { cmd: CoverCmd::Check { what, spec, model, perturb } } => {
            let s = ctx.point(spec)?.spec()?;
            cover_check(&ctx, *what, &s, *model, *perturb)?
        }
        Cmd::Heis { what, spec } => heis_report(&ctx, *what, &ctx.point(spec)?.spec()?)?,
        Cmd::Mtp { what, spec, order } => mtp_report(&ctx, *what, &ctx.point(spec)?.spec()?, order)?,
        Cmd::Seg { what, input, s, kind, beta, gamma } => seg_report(*what, input, *s, *kind, beta, gamma)?,
        Cmd::VerifyAll { grid, perturb } => {
            let g = match grid {
                GridArg::Standard => Grid::standard(),
                GridArg::Degenerate => Grid::degenerate(),
                GridArg::Config => ctx.file.grid.clone().ok_or_else(|| usage("config has no grid".into()))?,
            };
            verify_all(&g, &Options { perturb: *perturb, ..ctx.opts })
        }
    };
    Ok((rep, format))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli) {
        Err(CliError::Check(e)) => {
            let mut rep = Report::new("error", Value::Null);
            rep.fail(json!({"error": e}));
            Ok((rep, cli.format.unwrap_or(Format::Human)))
        }
        x => x,
    };
    match outcome {
        Ok((rep, format)) => {
            let text = match format {
                Format::Json => rep.to_pretty() + "\n",
                Format::Human => render_human(&rep),
            };
            if let Err(CliError::Usage(e) | CliError::Check(e)) = emit(&text, &cli.output) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(e) | CliError::Check(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

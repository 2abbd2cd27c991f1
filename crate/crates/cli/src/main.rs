mod ops;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmlab::certificate::Restriction;
use mmlab::parse::Task;
use mmlab::report::Params;
use mmlab::{
    parse_polynomial, parse_session, verify, Claim, ClaimReport, Error, MayrMeyer, Mode, Profile, Report, Result,
    SessionFile, VerifyOptions,
};
use rayon::prelude::*;

use ops::Outcome;

#[derive(Parser, Debug)]
#[command(name = "mmlab", version, about = "Ideal computations and Mayr-Meyer verifications")]
struct Cli {
    /// Write an mmlab-report-v1 JSON report to PATH (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads for independent claims.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Print every check, not just failures.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Groebner basis of a session ideal.
    Gb {
        session: PathBuf,
        #[arg(long)]
        ideal: String,
        /// grevlex, lex, block:VARS or block-lex:VARS
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Normal form of a polynomial modulo a session ideal.
    Nf {
        session: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Ideal operations on session ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// The Mayr-Meyer ideal J(1,d).
    #[command(subcommand)]
    Mm(MmCmd),
    /// Minimal certificate degree of a target.
    Cert(CertArgs),
    /// Execute the tasks of a session file.
    Run { session: PathBuf },
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    Intersect { session: PathBuf, a: String, b: String },
    /// `A : f`, or `A : B` when BY names an ideal.
    Colon {
        session: PathBuf,
        a: String,
        #[arg(long)]
        by: String,
    },
    Eliminate {
        session: PathBuf,
        a: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    Dim { session: PathBuf, a: String },
    /// Exit status 1 when the ideals differ.
    Equal { session: PathBuf, a: String, b: String },
    /// Exit status 1 for a non-member.
    Member {
        session: PathBuf,
        a: String,
        #[arg(long)]
        poly: String,
    },
    RadicalMember {
        session: PathBuf,
        a: String,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Args, Debug, Clone)]
struct MmArgs {
    #[arg(long)]
    d: u32,
    /// Field characteristic; 0 is the rationals.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Combined)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = ProfileArg::Full)]
    profile: ProfileArg,
}

#[derive(Subcommand, Debug)]
enum MmCmd {
    /// Print a session file declaring J, its components and its radical.
    Gen(MmArgs),
    Verify {
        #[command(flatten)]
        mm: MmArgs,
        /// A claim name, a comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        claim: String,
        /// Largest certificate degree tried.
        #[arg(long)]
        max_deg: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct CertArgs {
    /// Use J(1,d) and its ring.
    #[arg(long, conflicts_with = "session", required_unless_present = "session")]
    d: Option<u32>,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Full)]
    profile: ProfileArg,
    /// A session file supplying the ring and named ideals.
    #[arg(long)]
    session: Option<PathBuf>,
    #[arg(long, default_value = "s*(c4-c1)")]
    target: String,
    /// J, radical or minimal with --d; an ideal name or generator list with --session.
    #[arg(long, default_value = "J")]
    gens: String,
    #[arg(long, default_value_t = 10)]
    max_deg: u32,
    #[arg(long, value_enum, default_value_t = RestrictionArg::Full)]
    restriction: RestrictionArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Combined,
    Split,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ProfileArg {
    Full,
    Shortened,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RestrictionArg {
    Full,
    /// Coefficients in k[b1..b4], block-homogeneous.
    Restricted,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Combined => Mode::Combined,
            ModeArg::Split => Mode::Split,
        }
    }
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Full => Profile::Full,
            ProfileArg::Shortened => Profile::Shortened,
        }
    }
}

/// What a command produced: text for the terminal and report entries.
struct Run {
    ring: String,
    text: Vec<String>,
    claims: Vec<ClaimReport>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(run) => finish(&cli, run),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn finish(cli: &Cli, run: Run) -> ExitCode {
    let json_to_stdout = cli.json.as_deref() == Some(Path::new("-"));
    {
        let mut human: Box<dyn Write> = if json_to_stdout {
            Box::new(std::io::stderr())
        } else {
            Box::new(std::io::stdout())
        };
        for t in &run.text {
            let _ = writeln!(human, "{t}");
        }
    }
    for c in run.claims.iter().filter(|c| !c.pass) {
        eprintln!("{}", c.summary());
        for check in c.failed_checks() {
            eprintln!("  failed: {}{}", check.name, check.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default());
        }
        if let Some(w) = &c.witness {
            eprintln!("  witness: {}", serde_json::to_string(w).expect("witness serializes"));
        }
    }
    let report = Report::new(run.ring, run.claims);
    if let Some(path) = &cli.json {
        let text = report.to_json();
        if json_to_stdout {
            println!("{text}");
        } else if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(path: &Path) -> Result<SessionFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Unsupported(format!("cannot read {}: {e}", path.display())))?;
    parse_session(&text)
}

fn single(session: &SessionFile, o: Outcome) -> Run {
    Run {
        ring: session.ring.to_string(),
        text: vec![o.text],
        claims: vec![o.report],
    }
}

fn execute(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Gb { session, ideal, order } => {
            let s = load(session)?;
            Ok(single(&s, ops::gb(&s, ideal, order)?))
        }
        Command::Nf { session, ideal, poly } => {
            let s = load(session)?;
            Ok(single(&s, ops::nf(&s, ideal, poly)?))
        }
        Command::Ideal(cmd) => ideal_cmd(cmd),
        Command::Mm(MmCmd::Gen(args)) => {
            let mm = MayrMeyer::new(args.d, ops::field_from_char(args.characteristic)?, args.profile.into())?;
            let session = generate(&mm, args.mode.into())?;
            Ok(Run {
                ring: mm.ring().to_string(),
                text: vec![session.render().trim_end().to_string()],
                claims: Vec::new(),
            })
        }
        Command::Mm(MmCmd::Verify { mm, claim, max_deg }) => {
            let claims = Claim::parse_list(claim)?;
            let mut opts = VerifyOptions::new(mm.d)
                .field(ops::field_from_char(mm.characteristic)?)
                .mode(mm.mode.into())
                .profile(mm.profile.into());
            opts.max_degree = *max_deg;
            run_claims(cli, &claims, &opts)
        }
        Command::Cert(args) => cert_cmd(args),
        Command::Run { session } => {
            let s = load(session)?;
            run_session(cli, &s)
        }
    }
}

fn ideal_cmd(cmd: &IdealCmd) -> Result<Run> {
    let (path, f): (&PathBuf, Box<dyn Fn(&SessionFile) -> Result<Outcome>>) = match cmd {
        IdealCmd::Intersect { session, a, b } => (session, Box::new(move |s| ops::intersect(s, a, b))),
        IdealCmd::Colon { session, a, by } => (session, Box::new(move |s| ops::colon(s, a, by))),
        IdealCmd::Eliminate { session, a, vars } => (session, Box::new(move |s| ops::eliminate(s, a, vars))),
        IdealCmd::Dim { session, a } => (session, Box::new(move |s| ops::dim(s, a))),
        IdealCmd::Equal { session, a, b } => (session, Box::new(move |s| ops::equal(s, a, b))),
        IdealCmd::Member { session, a, poly } => (session, Box::new(move |s| ops::member(s, a, poly, false))),
        IdealCmd::RadicalMember { session, a, poly } => (session, Box::new(move |s| ops::member(s, a, poly, true))),
    };
    let s = load(path)?;
    Ok(single(&s, f(&s)?))
}

fn cert_cmd(args: &CertArgs) -> Result<Run> {
    let field = ops::field_from_char(args.characteristic)?;
    if let Some(path) = &args.session {
        let s = load(path)?;
        let gens = ops::resolve_ideal(&s, &args.gens)?.gens().to_vec();
        let target = ops::resolve_poly(&s, &args.target)?;
        if matches!(args.restriction, RestrictionArg::Restricted) {
            return Err(Error::Unsupported("--restriction restricted needs --d".into()));
        }
        return Ok(single(&s, ops::cert(ops::session_params(&s), &target, gens, args.max_deg, Restriction::full_ring())?));
    }
    let d = args.d.expect("clap requires --d without --session");
    let mm = MayrMeyer::new(d, field, args.profile.into())?;
    let gens = match args.gens.as_str() {
        "J" => mm.generators(),
        "radical" => mm.radical_generators(),
        "minimal" => mm.minimal_intersection().gens().to_vec(),
        other => return Err(Error::Unsupported(format!("--gens must be J, radical or minimal, not `{other}`"))),
    };
    let target = parse_polynomial(&args.target, mm.ring())?;
    let restriction = match args.restriction {
        RestrictionArg::Full => Restriction::full_ring(),
        RestrictionArg::Restricted => {
            Restriction::subring(mm.b_vars()).and(Restriction::block_homogeneous(mm.blocks(), mm.target_bidegree()))
        }
    };
    let params = Params {
        d: Some(d),
        field: field.to_string(),
        mode: None,
        profile: Some(args.profile.into()),
        extra: [("gens".to_string(), serde_json::json!(args.gens))].into_iter().collect(),
    };
    let o = ops::cert(params, &target, gens, args.max_deg, restriction)?;
    Ok(Run {
        ring: mm.ring().to_string(),
        text: vec![o.text],
        claims: vec![o.report],
    })
}

/// Verifies claims on a pool of `--jobs` threads; output order follows `claims`.
fn run_claims(cli: &Cli, claims: &[Claim], opts: &VerifyOptions) -> Result<Run> {
    for &c in claims {
        opts.validate(c)?;
    }
    let ring = MayrMeyer::new(opts.d, opts.field, opts.profile)?.ring().to_string();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let reports: Vec<ClaimReport> = pool.install(|| {
        claims
            .par_iter()
            .map(|&c| verify(c, opts).unwrap_or_else(|e| error_report(c.name(), opts, &e)))
            .collect()
    });
    let text = reports.iter().map(|r| describe(r, cli.verbose)).collect();
    Ok(Run {
        ring,
        text,
        claims: reports,
    })
}

fn error_report(claim: &str, opts: &VerifyOptions, e: &Error) -> ClaimReport {
    ClaimReport {
        claim: claim.to_string(),
        params: Params {
            d: Some(opts.d),
            field: opts.field.to_string(),
            mode: Some(opts.mode),
            profile: Some(opts.profile),
            extra: Default::default(),
        },
        pass: false,
        witness: Some(mmlab::Witness::Error { message: e.to_string() }),
        checks: Vec::new(),
        timings: Default::default(),
    }
}

fn describe(r: &ClaimReport, verbose: bool) -> String {
    let mut s = format!("{} ({:.0} ms)", r.summary(), r.timings.total_ms);
    if verbose {
        for c in &r.checks {
            s.push_str(&format!("\n  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.name));
            if let Some(d) = &c.detail {
                s.push_str(&format!(": {d}"));
            }
        }
    }
    s
}

/// Session declaring the ring, J, the components, the radical and the target.
fn generate(mm: &MayrMeyer, mode: Mode) -> Result<SessionFile> {
    let mut s = SessionFile::new(mm.ring().clone());
    s.add_ideal("J", mm.generators());
    for c in mm.components(mode)? {
        let name = match &c.alpha {
            Some(a) => format!("C{}_{a}", c.row),
            None => format!("C{}", c.row),
        };
        s.add_ideal(&name, c.ideal.gens().to_vec());
    }
    s.add_ideal("radical", mm.radical_generators());
    s.add_poly("target", mm.certificate_target());
    let mut params = std::collections::BTreeMap::new();
    params.insert("d".to_string(), mm.d.to_string());
    s.tasks.push(Task {
        name: "verify".into(),
        args: vec!["theorem1".into()],
        params,
        line: 0,
    });
    Ok(s)
}

fn task_param<T: std::str::FromStr>(task: &Task, key: &str) -> Result<Option<T>> {
    task.params
        .get(key)
        .map(|v| v.parse::<T>().map_err(|_| Error::parse(task.line, 1, format!("bad value `{v}` for {key}"))))
        .transpose()
}

/// Runs every task in order; verify tasks use the session's field.
fn run_session(cli: &Cli, s: &SessionFile) -> Result<Run> {
    let mut run = Run {
        ring: s.ring.to_string(),
        text: Vec::new(),
        claims: Vec::new(),
    };
    for task in &s.tasks {
        if task.name == "verify" {
            let d = task_param::<u32>(task, "d")?.ok_or_else(|| Error::parse(task.line, 1, "verify needs d=N"))?;
            let mut opts = VerifyOptions::new(d).field(s.ring.field());
            opts.mode = match task.params.get("mode").map(String::as_str) {
                None | Some("combined") => Mode::Combined,
                Some("split") => Mode::Split,
                Some(m) => return Err(Error::parse(task.line, 1, format!("unknown mode `{m}`"))),
            };
            opts.profile = match task.params.get("profile").map(String::as_str) {
                None | Some("full") => Profile::Full,
                Some("shortened") => Profile::Shortened,
                Some(p) => return Err(Error::parse(task.line, 1, format!("unknown profile `{p}`"))),
            };
            opts.max_degree = task_param(task, "max_deg")?;
            let names = if task.args.is_empty() { "all".to_string() } else { task.args.join(",") };
            let sub = run_claims(cli, &Claim::parse_list(&names)?, &opts)?;
            run.text.extend(sub.text);
            run.claims.extend(sub.claims);
        } else {
            let o = ops::run_task(s, task)?;
            run.text.push(format!("{}: {}", task.name, o.text));
            run.claims.push(o.report);
        }
    }
    Ok(run)
}

//! `pencil`: construct, classify and verify pencils of plane curves over
//! finite fields.
//!
//! Exit codes: 0 success, 2 input error, 3 failed check, 4 resource guard.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pencil_core::blocking::{classify, incidence_profile, BlockingClass};
use pencil_core::bounds::{CheckResult, CheckStatus};
use pencil_core::constructions::{
    baer_partition, blocking_curve_pencil, extremal_pencil, realize_cover, realize_partition, CoverSpec,
};
use pencil_core::gf::prime_power;
use pencil_core::pencil::{check_degree_bound, check_prime_bound, check_sqrt_bound, PartitionJson, PencilJson};
use pencil_core::poly::DEFAULT_TERM_GUARD;
use pencil_core::random::{random_partition, random_point_set, seeded_rng};
use pencil_core::{classify_pencil, Error, FieldCtx, Pencil, PencilReport, Plane};

#[derive(Parser)]
#[command(name = "pencil", version, about = "Exact classification of pencils of plane curves over GF(q)")]
struct Cli {
    /// Work budget for exact polynomial expansion.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_GUARD)]
    term_guard: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every member of a pencil and run the counting checks.
    Classify(PencilInput),
    /// Build a pencil or partition and write it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a single named check.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Args, Clone, Default)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: Option<u32>,
    /// Extension degree.
    #[arg(long)]
    n: Option<u32>,
    /// Field order, as an alternative to --p/--n.
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args)]
struct Output {
    /// Write the JSON artifact here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PencilInput {
    /// Pencil JSON file.
    #[arg(long)]
    pencil: PathBuf,
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    output: Output,
    /// Classify the result and fail if any check fails.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum Construct {
    /// Realize a partition of the plane (from a file, or random with --seed).
    Realize {
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// Realize a cover whose parts share a common set.
    Cover {
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// Pencil with a single base point all of whose members are blocking.
    #[command(name = "blocking-curves", alias = "example31")]
    BlockingCurves(ConstructArgs),
    /// Partition of PG(2,q), q square, into Baer subplanes.
    Baer(ConstructArgs),
    /// Pencil with exactly sqrt(q) nonblocking members, q square.
    Extremal(ConstructArgs),
}

#[derive(Subcommand)]
enum Verify {
    /// At least sqrt(q) nonblocking members.
    #[command(name = "sqrt-bound", alias = "prop32")]
    SqrtBound(PencilInput),
    /// At least (q+1)/(d+1) nonblocking members when d <= q.
    #[command(name = "degree-bound", alias = "thm12")]
    DegreeBound(PencilInput),
    /// At least (p+1)/3 nonblocking members over a prime field.
    #[command(name = "prime-bound")]
    PrimeBound(PencilInput),
    /// Double-counting identities of line intersections on random point sets.
    #[command(name = "incidence-identities", alias = "lemma41-identities")]
    IncidenceIdentities {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_resource_guard() => 4,
            Error::ConstructionCheck(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl FieldArgs {
    fn resolve(&self) -> CliResult<Option<(u32, u32)>> {
        match (self.p, self.n, self.q) {
            (None, None, None) => Ok(None),
            (Some(p), n, None) => Ok(Some((p, n.unwrap_or(1)))),
            (None, None, Some(q)) => {
                prime_power(q as u64).map(Some).ok_or_else(|| input_error(format!("q = {q} is not a prime power")))
            }
            (None, Some(_), None) => Err(input_error("--n requires --p")),
            _ => Err(input_error("give either --p/--n or --q")),
        }
    }

    fn plane(&self) -> CliResult<Arc<Plane>> {
        let (p, n) = self.resolve()?.ok_or_else(|| input_error("a field is required: --p P [--n N] or --q Q"))?;
        Ok(Arc::new(Plane::new(Arc::new(FieldCtx::new(p, n)?))?))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// JSON goes to `--out` (summary on stdout) or to stdout (summary on stderr).
fn emit<T: Serialize>(value: &T, output: &Output, summary: &str) -> CliResult<()> {
    let json = to_json(value);
    match &output.out {
        Some(path) => {
            std::fs::write(path, json).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            print!("{summary}");
        }
        None => {
            print!("{json}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn load_pencil(input: &PencilInput, term_guard: u64) -> CliResult<Pencil> {
    let json: PencilJson = read_json(&input.pencil)?;
    let field = Arc::new(FieldCtx::from_descriptor(&json.field)?);
    if let Some((p, n)) = input.field.resolve()? {
        if (p, n) != (field.p(), field.n()) {
            return Err(Error::FieldMismatch(format!(
                "file is over GF({}^{}) but GF({p}^{n}) was requested",
                field.p(),
                field.n()
            ))
            .into());
        }
    }
    let plane = Arc::new(Plane::new(field)?);
    Ok(Pencil::from_json_guarded(plane, &json, term_guard)?)
}

fn summarize(report: &PencilReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "q = {} (p = {}, n = {}), degree {}, {} base point(s)",
        report.q, report.p, report.n, report.d, report.base_locus_size
    );
    let _ = writeln!(s, "{:<8} {:>7}  class", "member", "points");
    for m in &report.members {
        let _ = writeln!(s, "{:<8} {:>7}  {}", m.param.to_string(), m.count, m.class.label());
    }
    let _ = writeln!(s, "blocking m = {}, nonblocking = {}", report.m, report.nonblocking);
    for (name, check) in &report.checks {
        let _ = writeln!(s, "check {name}: {} ({})", status_label(check.status), check.evidence);
    }
    s
}

fn status_label(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "skipped",
    }
}

fn check_failure(what: &str) -> Failure {
    Failure { code: 3, message: format!("check failed: {what}") }
}

fn cmd_classify(input: &PencilInput, term_guard: u64) -> CliResult<()> {
    let pencil = load_pencil(input, term_guard)?;
    let report = classify_pencil(&pencil);
    emit(&report, &input.output, &summarize(&report))?;
    if report.any_check_failed() {
        return Err(check_failure("see the report"));
    }
    Ok(())
}

/// Writes a pencil and, with `--verify`, classifies it; `expected` holds the
/// member point sets the construction promises.
fn finish_pencil(
    pencil: &Pencil,
    args: &ConstructArgs,
    expected: Option<&[pencil_core::PointSet]>,
    label: &str,
) -> CliResult<()> {
    let mut summary = format!("{label}: degree {} over GF({})\n", pencil.degree(), pencil.plane().q());
    let mut failed = None;
    if args.verify {
        let report = classify_pencil(pencil);
        summary.push_str(&summarize(&report));
        if report.any_check_failed() {
            failed = Some("classification check");
        }
        if let Some(parts) = expected {
            let ok = pencil.member_point_sets() == parts;
            let _ = writeln!(summary, "members reproduce the input: {}", if ok { "pass" } else { "FAIL" });
            if !ok {
                failed = Some("members differ from the input parts");
            }
        }
    }
    emit(&pencil.to_json(), &args.output, &summary)?;
    match failed {
        Some(what) => Err(check_failure(what)),
        None => Ok(()),
    }
}

fn cmd_construct(c: &Construct) -> CliResult<()> {
    match c {
        Construct::Realize { partition, seed, args } => {
            let (plane, partition) = match (partition, seed) {
                (Some(path), None) => {
                    let json: PartitionJson = read_json(path)?;
                    let plane = match args.field.resolve()? {
                        Some(_) => args.field.plane()?,
                        None => FieldArgs { q: Some(json.q), ..Default::default() }.plane()?,
                    };
                    let partition = json.to_partition(&plane)?;
                    (plane, partition)
                }
                (None, Some(seed)) => {
                    let plane = args.field.plane()?;
                    let partition = random_partition(&plane, &mut seeded_rng(*seed));
                    (plane, partition)
                }
                _ => return Err(input_error("give exactly one of --partition or --seed")),
            };
            let pencil = realize_partition(plane, &partition)?;
            finish_pencil(&pencil, args, Some(partition.parts()), "realized partition")
        }
        Construct::Cover { partition, args } => {
            let json: PartitionJson = read_json(partition)?;
            let plane = match args.field.resolve()? {
                Some(_) => args.field.plane()?,
                None => FieldArgs { q: Some(json.q), ..Default::default() }.plane()?,
            };
            let spec = CoverSpec::from_json(&plane, &json)?;
            let pencil = realize_cover(plane, &spec)?;
            finish_pencil(&pencil, args, Some(spec.parts()), "realized cover")
        }
        Construct::BlockingCurves(args) => {
            let pencil = blocking_curve_pencil(args.field.plane()?)?;
            finish_pencil(&pencil, args, None, "pencil of blocking curves")
        }
        Construct::Extremal(args) => {
            let pencil = extremal_pencil(args.field.plane()?)?;
            finish_pencil(&pencil, args, None, "extremal pencil")
        }
        Construct::Baer(args) => {
            let plane = args.field.plane()?;
            let parts = baer_partition(&plane)?;
            let mut summary = format!(
                "{} Baer subplanes of size {} in PG(2,{})\n",
                parts.len(),
                parts.first().map_or(0, |p| p.len()),
                plane.q()
            );
            let mut ok = true;
            if args.verify {
                for (i, part) in parts.iter().enumerate() {
                    let class = classify(&plane, part);
                    let prof = incidence_profile(&plane, part);
                    let good = class == BlockingClass::NontrivialBlocking && prof.identities_hold(plane.q() as u64);
                    ok &= good;
                    let _ = writeln!(summary, "part {i}: {} points, {}", part.len(), class.label());
                }
            }
            emit(&PartitionJson::from_sets(&plane, &parts, None), &args.output, &summary)?;
            if ok {
                Ok(())
            } else {
                Err(check_failure("a part is not a nontrivial blocking set"))
            }
        }
    }
}

#[derive(Serialize)]
struct CheckReport {
    check: &'static str,
    q: u32,
    d: u32,
    nonblocking: usize,
    base_locus_size: usize,
    result: CheckResult,
}

#[derive(Serialize)]
struct IdentityReport {
    check: &'static str,
    q: u32,
    seed: u64,
    samples: usize,
    passed: usize,
    failed: usize,
    status: CheckStatus,
}

fn run_check(
    name: &'static str,
    input: &PencilInput,
    term_guard: u64,
    check: fn(&PencilReport) -> pencil_core::Result<CheckResult>,
) -> CliResult<()> {
    let pencil = load_pencil(input, term_guard)?;
    let report = classify_pencil(&pencil);
    let result = match check(&report) {
        Ok(r) => r,
        Err(e @ (Error::Inapplicable(_) | Error::BaseLocusNotEmpty(_))) => CheckResult::skipped(e.to_string()),
        Err(e) => return Err(e.into()),
    };
    let summary = format!("{name}: {} ({})\n", status_label(result.status), result.evidence);
    let failed = result.failed();
    let out = CheckReport {
        check: name,
        q: report.q,
        d: report.d,
        nonblocking: report.nonblocking,
        base_locus_size: report.base_locus_size,
        result,
    };
    emit(&out, &input.output, &summary)?;
    if failed {
        return Err(check_failure(name));
    }
    Ok(())
}

fn cmd_verify(v: &Verify, term_guard: u64) -> CliResult<()> {
    match v {
        Verify::SqrtBound(input) => run_check("sqrt_bound", input, term_guard, check_sqrt_bound),
        Verify::DegreeBound(input) => run_check("degree_bound", input, term_guard, check_degree_bound),
        Verify::PrimeBound(input) => run_check("prime_bound", input, term_guard, check_prime_bound),
        Verify::IncidenceIdentities { field, samples, seed, output } => {
            let plane = field.plane()?;
            let q = plane.q();
            let mut rng = seeded_rng(*seed);
            let passed = (0..*samples)
                .filter(|_| incidence_profile(&plane, &random_point_set(&plane, &mut rng)).identities_hold(q as u64))
                .count();
            let failed = samples - passed;
            let status = if failed == 0 { CheckStatus::Pass } else { CheckStatus::Fail };
            let report = IdentityReport {
                check: "incidence_identities",
                q,
                seed: *seed,
                samples: *samples,
                passed,
                failed,
                status,
            };
            let summary = format!("incidence identities over PG(2,{q}), seed {seed}: {passed}/{samples} pass\n");
            emit(&report, output, &summary)?;
            if failed > 0 {
                return Err(check_failure("incidence identities"));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(input) => cmd_classify(input, cli.term_guard),
        Command::Construct(c) => cmd_construct(c),
        Command::Verify(v) => cmd_verify(v, cli.term_guard),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

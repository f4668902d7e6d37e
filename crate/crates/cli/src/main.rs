//! Command-line front end: generate digital point sets, check their net and
//! admissibility properties, measure discrepancy exactly, and run the
//! shift-and-box lower-bound certificates. Every report is JSON with exact
//! rationals rendered as {"num", "den"} decimal strings; reports are
//! deterministic for a given configuration apart from the elapsed_ms timing
//! fields. Exit codes: 0 when every assertion in the run passed, 1 when an
//! assertion failed (the report still describes it), 2 for usage and input
//! errors.

mod io;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::{json, Value};

use lowdisc::badic::int_width;
use lowdisc::discrepancy::{
    box_count, local_discrepancy, star_discrepancy_exact, SupBranch, DEFAULT_ENUMERATION_BUDGET,
};
use lowdisc::generators::build_niederreiter;
use lowdisc::verify::{
    is_admissible_net, is_admissible_sequence_prefix, is_net, is_sequence_prefix,
    AdmissibilityOutcome, NetCounterexample,
};
use lowdisc::witness::{
    certificate_params, verify_theorem1, verify_theorem2_for_q, verify_theorem2_scan,
};
use lowdisc::{
    AnchoredBox, DigitVector, GeneratorSystem, Point, PointSet, PrimeFieldPoly, WitnessReport,
};

use io::{load_points, render_points, split_poly_list, OutputFormat};

/// Environment variable naming the default worker-thread count.
const THREADS_ENV: &str = "LOWDISC_THREADS";

#[derive(Parser)]
#[command(
    name = "lowdisc",
    version,
    about = "Digital (t,s)-sequence generation, verification, and exact discrepancy certification"
)]
struct Cli {
    /// Worker threads for parallel scans (overrides LOWDISC_THREADS; default all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate points from classical generating polynomials.
    Generate(GenerateArgs),
    /// Check a net or admissibility property; exit 0 iff it holds.
    Check(CheckArgs),
    /// Measure local or star discrepancy exactly.
    Discrepancy(DiscrepancyArgs),
    /// Run a shift-and-box lower-bound certificate; exit 0 iff it passes.
    Witness(WitnessArgs),
    /// Run generation, checks, and a certificate as one experiment.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Prime base b.
    #[arg(long)]
    base: u32,
    /// Generating polynomials over GF(base), comma-separated; human form
    /// (x^2+x+1) or coefficient form (p:[1,1,1], lowest degree first).
    #[arg(long)]
    polys: String,
    /// Digit precision: matrices are m x m, indices run below base^m.
    #[arg(long)]
    m: usize,
    /// Number of points (default base^m).
    #[arg(long)]
    count: Option<u64>,
    /// Digital shift applied to every point: comma-separated digit texts,
    /// one per coordinate (e.g. "2:0101,2:0011").
    #[arg(long)]
    shift: Option<String>,
    #[arg(long, value_enum, default_value = "digits")]
    format: OutputFormat,
    /// Output path (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyKind {
    /// Elementary-interval counts at one depth m.
    Net,
    /// Every depth-m' block for m' <= m, k <= kmax.
    Sequence,
    /// Pairwise weighted products strictly above base^-(m+d).
    AdmissibleNet,
    /// Index-weighted pairwise products at least base^-d.
    AdmissibleSeq,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    property: PropertyKind,
    /// Points file in digits format (alternative to --base/--polys).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Prime base b (when generating instead of reading --input).
    #[arg(long)]
    base: Option<u32>,
    /// Generating polynomials, comma-separated (when generating).
    #[arg(long)]
    polys: Option<String>,
    /// Depth (net, admissible-net), window maximum (sequence), or precision
    /// (admissible-seq). Defaults to the input file's precision.
    #[arg(long)]
    m: Option<usize>,
    /// Admissibility margin d (required for the admissibility properties).
    #[arg(long)]
    d: Option<usize>,
    /// Net quality u.
    #[arg(long, default_value_t = 0)]
    u: usize,
    /// Depth moduli e, comma-separated (default: polynomial degrees, else all ones).
    #[arg(long)]
    e: Option<String>,
    /// Highest block index for the sequence property.
    #[arg(long, default_value_t = 3)]
    kmax: u64,
    /// Points examined by admissible-seq (default base^m).
    #[arg(long)]
    count: Option<u64>,
    /// Report path (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiscrepancyMode {
    /// Exact star discrepancy by corner enumeration.
    Exact,
    /// Exact local discrepancy of one anchored box.
    Box,
}

#[derive(Args)]
struct DiscrepancyArgs {
    /// Points file in digits format.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: DiscrepancyMode,
    /// Anchored box for --mode box: comma-separated digit texts, "full" or
    /// "1" for a full coordinate (e.g. "2:01,full").
    #[arg(long = "box")]
    box_spec: Option<String>,
    /// Refuse exact enumeration beyond this many corner-cell/point steps.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    /// Report path (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Certificate mode: 1 (shift a net directly) or 2 (lift a sequence
    /// prefix by an index coordinate and scan offsets Q).
    #[arg(long)]
    theorem: u8,
    /// Points file in digits format (alternative to --base/--polys).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Prime base b (when generating instead of reading --input).
    #[arg(long)]
    base: Option<u32>,
    /// Generating polynomials, comma-separated (when generating).
    #[arg(long)]
    polys: Option<String>,
    /// Digit precision; the certificate measures the first base^m points.
    #[arg(long)]
    m: Option<usize>,
    /// Admissibility margin d (default: sum of polynomial degrees).
    #[arg(long)]
    d: Option<usize>,
    /// Quality offset t (default: sum of degrees minus dimension).
    #[arg(long)]
    t: Option<usize>,
    /// Offset selector for --theorem 2: an integer or "all".
    #[arg(long = "Q", default_value = "0")]
    q: String,
    /// Report path (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Prime base b.
    #[arg(long)]
    base: u32,
    /// Generating polynomials over GF(base), comma-separated.
    #[arg(long)]
    polys: String,
    /// Digit precision; the experiment uses base^m points.
    #[arg(long)]
    m: usize,
    /// Admissibility margin d (default: sum of polynomial degrees).
    #[arg(long)]
    d: Option<usize>,
    /// Quality offset t (default: sum of degrees minus dimension).
    #[arg(long)]
    t: Option<usize>,
    /// Net window depth (default: largest w <= 8 with (kmax+1)*base^w <= base^m).
    #[arg(long)]
    window: Option<usize>,
    /// Highest block index for the sequence check.
    #[arg(long, default_value_t = 3)]
    kmax: u64,
    /// Points for the admissibility scan (default min(base^m, 4096)).
    #[arg(long)]
    count: Option<u64>,
    /// Certificate mode (default: 1 when s >= 2, else 2).
    #[arg(long)]
    theorem: Option<u8>,
    /// Offset selector for certificate mode 2: an integer or "all".
    #[arg(long = "Q", default_value = "0")]
    q: String,
    /// Report path (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(2)
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = n.filter(|&n| n > 0) {
        // failure only means a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Generate(args) => run_generate(args),
        Command::Check(args) => run_check(args),
        Command::Discrepancy(args) => run_discrepancy(args),
        Command::Witness(args) => run_witness(args),
        Command::Report(args) => run_report(args),
    }
}

fn parse_polys(base: u32, text: &str) -> Result<Vec<PrimeFieldPoly>> {
    let parts = split_poly_list(text);
    if parts.is_empty() {
        bail!("--polys names no polynomials");
    }
    parts
        .iter()
        .map(|p| PrimeFieldPoly::parse(p, base).with_context(|| format!("polynomial {:?}", p)))
        .collect()
}

fn build_system(base: u32, polys_text: &str, m: usize) -> Result<(GeneratorSystem, Vec<PrimeFieldPoly>)> {
    let polys = parse_polys(base, polys_text)?;
    let sys = build_niederreiter(base, &polys, m)?;
    Ok((sys, polys))
}

fn parse_shift(text: &str, base: u32, dim: usize, m: usize) -> Result<Point> {
    let coords: Vec<DigitVector> = text
        .split(',')
        .map(|part| {
            let v = DigitVector::from_str(part.trim())?;
            if v.base() != base {
                bail!("shift coordinate {} is in base {}, points are in base {}", part, v.base(), base);
            }
            Ok(v.padded(m)?)
        })
        .collect::<Result<_>>()?;
    if coords.len() != dim {
        bail!("shift names {} coordinates, points have {}", coords.len(), dim);
    }
    Ok(Point::new(coords)?)
}

fn emit(report: &Value, output: Option<&PathBuf>) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(report)?);
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(())
}

fn rat(r: &BigRational) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

fn run_generate(args: GenerateArgs) -> Result<u8> {
    let (sys, _) = build_system(args.base, &args.polys, args.m)?;
    let count = match args.count {
        Some(c) => c,
        None => int_width(args.base, args.m)?,
    };
    let mut points = sys.points(count)?;
    if let Some(shift_text) = &args.shift {
        let w = parse_shift(shift_text, args.base, sys.dim(), args.m)?;
        points = points.shifted(&w)?;
    }
    let text = render_points(&points, args.format)?;
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", text),
    }
    Ok(0)
}

/// Points for a check or certificate: an input file (digits format only) or
/// a freshly generated prefix of the classical sequence.
fn gather_points(
    input: Option<&PathBuf>,
    base: Option<u32>,
    polys: Option<&String>,
    m: Option<usize>,
    count: Option<u64>,
) -> Result<(PointSet, Option<Vec<PrimeFieldPoly>>, usize)> {
    if let Some(path) = input {
        let ps = load_points(path)?;
        let m = m.unwrap_or(ps.precision());
        if m > ps.precision() {
            bail!("--m {} exceeds the file's precision {}", m, ps.precision());
        }
        if let Some(c) = count {
            if c as usize > ps.len() {
                bail!("--count {} exceeds the file's {} points", c, ps.len());
            }
        }
        return Ok((ps, None, m));
    }
    let (base, polys_text, m) = match (base, polys, m) {
        (Some(b), Some(p), Some(m)) => (b, p, m),
        _ => bail!("pass --input FILE, or all of --base, --polys, --m"),
    };
    let (sys, polys) = build_system(base, polys_text, m)?;
    let n = match count {
        Some(c) => c,
        None => int_width(base, m)?,
    };
    Ok((sys.points(n)?, Some(polys), m))
}

fn prefix(ps: &PointSet, n: u64, label: &str) -> Result<PointSet> {
    if (ps.len() as u64) < n {
        bail!("{} needs {} points, input holds {}", label, n, ps.len());
    }
    if ps.len() as u64 == n {
        return Ok(ps.clone());
    }
    Ok(PointSet::new(
        ps.points()[..n as usize].to_vec(),
        format!("{} prefix", ps.provenance()),
    )?)
}

fn net_cx_json(cx: &NetCounterexample) -> Value {
    json!({
        "interval": cx.interval.to_string(),
        "depths": cx.interval.depths(),
        "positions": cx.interval.positions(),
        "count": cx.count,
        "expected": cx.expected,
    })
}

fn admissibility_json(outcome: &AdmissibilityOutcome, base: u32) -> Value {
    json!({
        "holds": outcome.holds,
        "strict": outcome.strict,
        "threshold": rat(&outcome.threshold),
        "minimum": outcome.minimum.value(base).as_ref().map(rat),
        "argmin": outcome.minimum.argmin().map(|(n, k)| json!([n, k])),
    })
}

fn run_check(args: CheckArgs) -> Result<u8> {
    let started = Instant::now();
    // sequence checks need (kmax+1)*base^m points; generate that many when
    // building from polynomials
    let generated_count = |base: u32, m: usize| -> Result<u64> {
        Ok(match args.property {
            PropertyKind::Sequence => {
                let width = int_width(base, m)?;
                (args.kmax + 1).checked_mul(width).context("window size overflows")?
            }
            PropertyKind::AdmissibleSeq => match args.count {
                Some(c) => c,
                None => int_width(base, m)?,
            },
            PropertyKind::Net | PropertyKind::AdmissibleNet => int_width(base, m)?,
        })
    };
    let (ps, polys, m) = match (&args.input, args.base, &args.polys, args.m) {
        (Some(_), _, _, _) => gather_points(args.input.as_ref(), None, None, args.m, args.count)?,
        (None, Some(base), Some(polys_text), Some(m)) => {
            // sequence windows live inside a deeper generation precision so
            // indices up to (kmax+1)*base^m stay addressable
            let count = generated_count(base, m)?;
            let mut gen_m = m;
            while int_width(base, gen_m)? < count {
                gen_m += 1;
            }
            let (sys, polys) = build_system(base, polys_text, gen_m)?;
            let ps = sys.points(count)?;
            (ps, Some(polys), m)
        }
        _ => bail!("pass --input FILE, or all of --base, --polys, --m"),
    };
    let base = ps.base();
    let e: Vec<usize> = match &args.e {
        Some(text) => text
            .split(',')
            .map(|p| p.trim().parse::<usize>().with_context(|| format!("depth modulus {:?}", p)))
            .collect::<Result<_>>()?,
        None => match &polys {
            Some(polys) => polys.iter().map(|p| p.degree().unwrap_or(0)).collect(),
            None => vec![1; ps.dim()],
        },
    };
    let need_d = || args.d.context("the admissibility properties need --d");

    let (holds, body) = match args.property {
        PropertyKind::Net => {
            let ps = prefix(&ps, int_width(base, m)?, "net check")?;
            let outcome = is_net(&ps, args.u, &e, m)?;
            (
                outcome.holds,
                json!({
                    "m": m,
                    "u": args.u,
                    "e": e,
                    "holds": outcome.holds,
                    "intervals_checked": outcome.intervals_checked,
                    "counterexample": outcome.counterexample.as_ref().map(net_cx_json),
                }),
            )
        }
        PropertyKind::Sequence => {
            let outcome = is_sequence_prefix(&ps, args.u, &e, m, args.kmax)?;
            (
                outcome.holds,
                json!({
                    "m_max": outcome.verified_m_max,
                    "k_max": outcome.verified_k_max,
                    "u": args.u,
                    "e": e,
                    "holds": outcome.holds,
                    "failure": outcome.failure.as_ref().map(|f| {
                        json!({"m": f.m, "k": f.k, "counterexample": net_cx_json(&f.counterexample)})
                    }),
                }),
            )
        }
        PropertyKind::AdmissibleNet => {
            let d = need_d()?;
            let ps = prefix(&ps, int_width(base, m)?, "net admissibility")?;
            let outcome = is_admissible_net(&ps, d, m)?;
            (outcome.holds, json!({"d": d, "m": m, "details": admissibility_json(&outcome, base)}))
        }
        PropertyKind::AdmissibleSeq => {
            let d = need_d()?;
            let n = match args.count {
                Some(c) => c,
                None => int_width(base, m)?.min(ps.len() as u64),
            };
            let ps = prefix(&ps, n, "sequence admissibility")?;
            let outcome = is_admissible_sequence_prefix(&ps, d, n as usize)?;
            (outcome.holds, json!({"d": d, "points": n, "details": admissibility_json(&outcome, base)}))
        }
    };
    let property_name = match args.property {
        PropertyKind::Net => "net",
        PropertyKind::Sequence => "sequence",
        PropertyKind::AdmissibleNet => "admissible-net",
        PropertyKind::AdmissibleSeq => "admissible-seq",
    };
    let report = json!({
        "command": "check",
        "property": property_name,
        "base": base,
        "points": ps.len(),
        "result": body,
        "holds": holds,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    });
    emit(&report, args.output.as_ref())?;
    Ok(if holds { 0 } else { 1 })
}

fn run_discrepancy(args: DiscrepancyArgs) -> Result<u8> {
    let started = Instant::now();
    let ps = load_points(&args.input)?;
    let report = match args.mode {
        DiscrepancyMode::Exact => {
            let out = star_discrepancy_exact(&ps, args.budget)?;
            json!({
                "command": "discrepancy",
                "mode": "exact",
                "points": ps.len(),
                "value_num": out.value.numer().to_string(),
                "value_den": out.value.denom().to_string(),
                "witness_box": out.witness_corner.iter().map(rat).collect::<Vec<_>>(),
                "branch": match out.branch {
                    SupBranch::Open => "open",
                    SupBranch::ClosedLimit => "closed-limit",
                },
                "witness_delta": rat(&out.witness_delta),
                "corners_checked": out.corners_checked.to_string(),
                "elapsed_ms": started.elapsed().as_millis() as u64,
            })
        }
        DiscrepancyMode::Box => {
            let spec = args.box_spec.as_ref().context("--mode box needs --box")?;
            let gamma = AnchoredBox::parse(spec, ps.base())?;
            let count = box_count(&ps, &gamma)?;
            let delta = local_discrepancy(&ps, &gamma)?;
            json!({
                "command": "discrepancy",
                "mode": "box",
                "points": ps.len(),
                "witness_box": gamma.to_string(),
                "count": count,
                "volume": rat(&gamma.volume()),
                "value_num": delta.numer().to_string(),
                "value_den": delta.denom().to_string(),
                "elapsed_ms": started.elapsed().as_millis() as u64,
            })
        }
    };
    emit(&report, args.output.as_ref())?;
    Ok(0)
}

fn witness_levels(
    d: Option<usize>,
    t: Option<usize>,
    polys: Option<&[PrimeFieldPoly]>,
) -> Result<(usize, usize)> {
    match (d, t) {
        (Some(d), Some(t)) => Ok((d, t)),
        (d, t) => {
            let polys = polys.context(
                "certificate level unknown: pass --d and --t, or build from --polys",
            )?;
            let (cd, ct) = certificate_params(polys)?;
            Ok((d.unwrap_or(cd), t.unwrap_or(ct)))
        }
    }
}

fn witness_report_json(report: &WitnessReport) -> Value {
    let p = &report.params;
    json!({
        "params": {
            "dims": p.dims,
            "d": p.d,
            "t": p.t,
            "d0": p.d0,
            "e_hat": p.e_hat,
            "epsilon": rat(&p.epsilon),
            "m": p.m,
            "blocks": p.blocks,
            "offsets": p.offsets,
            "side_lengths": p.side_lengths,
            "excluded": p.excluded.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        },
        "gamma": report.gamma.to_string(),
        "shift": report.shift.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "anchor_index": report.anchor_index,
        "count": report.count,
        "delta": rat(&report.delta),
        "schedule_bound": rat(&report.schedule_bound),
        "k_constant": report.k_constant,
        "claimed_lower_bound": rat(&report.claimed_lower_bound),
        "passes": report.passes,
    })
}

fn run_witness(args: WitnessArgs) -> Result<u8> {
    let started = Instant::now();
    if !matches!(args.theorem, 1 | 2) {
        bail!("--theorem must be 1 or 2");
    }
    let (ps, polys, m) = gather_points(
        args.input.as_ref(),
        args.base,
        args.polys.as_ref(),
        args.m,
        None,
    )?;
    let base = ps.base();
    if m != ps.precision() {
        bail!("certificates run at the set's own precision; got --m {} over a precision-{} set", m, ps.precision());
    }
    let ps = prefix(&ps, int_width(base, m)?, "certificate")?;
    let (d, t) = witness_levels(args.d, args.t, polys.as_deref())?;

    let (passes, body) = if args.theorem == 1 {
        let report = verify_theorem1(&ps, d, t)?;
        (report.passes, witness_report_json(&report))
    } else if args.q == "all" {
        let reports = verify_theorem2_scan(&ps, d, t)?;
        let all_pass = reports.iter().all(|r| r.passes);
        let worst = reports
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.delta.cmp(&b.delta).then(ib.cmp(ia)))
            .map(|(_, r)| r)
            .expect("scan covers at least offset 0");
        let runs: Vec<Value> = reports
            .iter()
            .map(|r| {
                let q = match r.mode {
                    lowdisc::CertificateMode::Theorem2 { q } => q,
                    lowdisc::CertificateMode::Theorem1 => unreachable!(),
                };
                json!({
                    "q": q,
                    "anchor_index": r.anchor_index,
                    "count": r.count,
                    "delta": rat(&r.delta),
                    "passes": r.passes,
                })
            })
            .collect();
        let worst_q = match worst.mode {
            lowdisc::CertificateMode::Theorem2 { q } => q,
            lowdisc::CertificateMode::Theorem1 => unreachable!(),
        };
        (
            all_pass,
            json!({
                "q": "all",
                "runs": runs,
                "all_pass": all_pass,
                "worst_q": worst_q,
                "worst_delta": rat(&worst.delta),
                "shared": witness_report_json(worst),
            }),
        )
    } else {
        let q: u64 = args.q.parse().with_context(|| format!("--Q {:?} is neither an integer nor \"all\"", args.q))?;
        let report = verify_theorem2_for_q(&ps, q, d, t)?;
        let mut body = witness_report_json(&report);
        body["q"] = json!(q);
        (report.passes, body)
    };
    let report = json!({
        "command": "witness",
        "theorem": args.theorem,
        "base": base,
        "m": m,
        "s": ps.dim(),
        "d": d,
        "t": t,
        "result": body,
        "passes": passes,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    });
    emit(&report, args.output.as_ref())?;
    Ok(if passes { 0 } else { 1 })
}

fn run_report(args: ReportArgs) -> Result<u8> {
    let started = Instant::now();
    let (sys, polys) = build_system(args.base, &args.polys, args.m)?;
    let base = args.base;
    let width = int_width(base, args.m)?;
    let points = sys.points(width)?;
    let (d, t) = witness_levels(args.d, args.t, Some(&polys))?;
    let degrees: Vec<usize> = polys.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let s = polys.len();

    // net windows: deepest window w <= 8 whose blocks all fit in base^m points
    let window = match args.window {
        Some(w) => w,
        None => {
            let mut w = args.m.min(8);
            while w > 1 && (args.kmax + 1).saturating_mul(int_width(base, w)?) > width {
                w -= 1;
            }
            w
        }
    };
    let kmax = args.kmax.min(width / int_width(base, window)? - 1);
    let seq_outcome = is_sequence_prefix(&points, 0, &degrees, window, kmax)?;

    let adm_n = match args.count {
        Some(c) => c.min(width),
        None => width.min(4096),
    };
    let adm_points = prefix(&points, adm_n, "admissibility scan")?;
    let adm_outcome = is_admissible_sequence_prefix(&adm_points, d, adm_n as usize)?;

    let theorem = args.theorem.unwrap_or(if s >= 2 { 1 } else { 2 });
    if !matches!(theorem, 1 | 2) {
        bail!("--theorem must be 1 or 2");
    }
    let witness_section: (Option<bool>, Value) = if theorem == 1 {
        match verify_theorem1(&points, d, t) {
            Ok(report) => (Some(report.passes), witness_report_json(&report)),
            Err(err) => (None, json!({"skipped": err.to_string()})),
        }
    } else if args.q == "all" {
        match verify_theorem2_scan(&points, d, t) {
            Ok(reports) => {
                let all_pass = reports.iter().all(|r| r.passes);
                let worst = reports
                    .iter()
                    .enumerate()
                    .max_by(|(ia, a), (ib, b)| a.delta.cmp(&b.delta).then(ib.cmp(ia)))
                    .map(|(_, r)| r)
                    .unwrap();
                (
                    Some(all_pass),
                    json!({
                        "q": "all",
                        "all_pass": all_pass,
                        "worst_delta": rat(&worst.delta),
                        "shared": witness_report_json(worst),
                    }),
                )
            }
            Err(err) => (None, json!({"skipped": err.to_string()})),
        }
    } else {
        let q: u64 = args.q.parse().with_context(|| format!("--Q {:?} is neither an integer nor \"all\"", args.q))?;
        match verify_theorem2_for_q(&points, q, d, t) {
            Ok(report) => {
                let mut body = witness_report_json(&report);
                body["q"] = json!(q);
                (Some(report.passes), body)
            }
            Err(err) => (None, json!({"skipped": err.to_string()})),
        }
    };

    let overall = seq_outcome.holds && adm_outcome.holds && witness_section.0.unwrap_or(true);
    let report = json!({
        "command": "report",
        "system": {
            "base": base,
            "polys": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "degrees": degrees,
            "s": s,
            "m": args.m,
            "points": width,
            "d": d,
            "t": t,
        },
        "net_windows": {
            "window": window,
            "kmax": kmax,
            "holds": seq_outcome.holds,
            "failure": seq_outcome.failure.as_ref().map(|f| {
                json!({"m": f.m, "k": f.k, "counterexample": net_cx_json(&f.counterexample)})
            }),
        },
        "admissibility": {
            "d": d,
            "points": adm_n,
            "details": admissibility_json(&adm_outcome, base),
        },
        "witness": {
            "theorem": theorem,
            "outcome": witness_section.1,
            "passes": witness_section.0,
        },
        "overall_pass": overall,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    });
    emit(&report, args.output.as_ref())?;
    Ok(if overall { 0 } else { 1 })
}

//! Command-line surface: `monoid`, `verify`, `spectrum` and `ingest`.
//!
//! Exit codes: 0 all checks pass, 2 a check failed, 64 usage, 65 capacity,
//! 66 unreadable data.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelian::{enumerate_subgroups, FinAbGroup, GroupElement, Subgroup, DEFAULT_ENUMERATION_BOUND};
use crate::arith;
use crate::error::Error;
use crate::grouprings::a_module;
use crate::lattices::{verify_ext_sequence, verify_kernel_generators, verify_unit_transport};
use crate::modules::{characters, check_prop_free, tate, tate_closed_form};
use crate::monoid::{analyze_monoid, build_sets, FreenessReport};
use crate::spectrum::{predicted_membership, sample_spectrum, summarize, PredictedSet, SpectrumSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CAPACITY: i32 = 65;
pub const EXIT_DATA: i32 = 66;

/// Default cap on `|G|` for the `verify` sweeps.
pub const VERIFY_ORDER_BOUND: u64 = 256;

#[derive(Parser, Debug)]
#[command(name = "minusclass", version, about = "Exact checks on admissible classes of finite abelian group modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate S, T and beta for a group and decide freeness of the image monoid.
    Monoid {
        /// Invariant factors, comma separated (e.g. `9` or `3,6`).
        group: String,
        /// Coordinate-sum bound for the injectivity search.
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Sweep Tate, lattice and freeness checks over every (I, phi).
    Verify {
        group: String,
        #[arg(long, value_delimiter = ',', default_value = "tate,kernel,ext,propfree,unit")]
        checks: Vec<Check>,
        #[arg(long, default_value_t = VERIFY_ORDER_BOUND)]
        max_order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Sample ideals (N, (sigma - 1) u + p^r eps) of Z[Z/p^r] and test the valuation prediction.
    Spectrum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long = "coeff-exp", default_value_t = 5)]
        coeff_exp: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        epsilon: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check externally computed valuations `q,field_tag,ord_value` against the prediction.
    Ingest {
        csv: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Tate,
    Kernel,
    Ext,
    Propfree,
    Unit,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Tate => "tate",
            Check::Kernel => "kernel",
            Check::Ext => "ext",
            Check::Propfree => "propfree",
            Check::Unit => "unit",
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Capacity(_) | CliError::Lib(Error::Capacity { .. }) => EXIT_CAPACITY,
            CliError::Data(_) => EXIT_DATA,
            CliError::Lib(Error::InvalidFactor(_)) => EXIT_USAGE,
            CliError::Lib(_) => EXIT_CHECK,
        }
    }
}

/// Parses `[0-9]+(,[0-9]+)*` into a group.
pub fn parse_group(spec: &str) -> Result<FinAbGroup, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.iter().any(|s| s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit())) {
        return Err(format!("malformed group spec '{spec}': expected comma-separated integers like 3,6"));
    }
    let factors = parts
        .iter()
        .map(|s| s.parse::<i64>().map_err(|_| format!("factor '{s}' out of range")))
        .collect::<Result<Vec<_>, _>>()?;
    FinAbGroup::new(&factors).map_err(|e| format!("malformed group spec '{spec}': {e}"))
}

#[derive(Serialize)]
struct Report {
    command: String,
    config: Value,
    results: Value,
    verdict: String,
}

enum Format {
    Json,
    Tsv,
}

struct Outcome {
    report: Report,
    tsv: String,
    code: i32,
}

impl Outcome {
    fn emit(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.report)?;
                writeln!(out)
            }
            Format::Tsv => out.write_all(self.tsv.as_bytes()),
        }
    }
}

/// Runs the command line given by `args` (program name first), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let (result, format) = match cli.command {
        Command::Monoid { group, bound, max_order, json } => (cmd_monoid(&echo, &group, bound, max_order), json),
        Command::Verify { group, checks, max_order, json } => (cmd_verify(&echo, &group, &checks, max_order), json),
        Command::Spectrum { p, r, n, samples, coeff_exp, seed, epsilon, json } => {
            (cmd_spectrum(&echo, p, r, n, samples, coeff_exp, seed, epsilon), json)
        }
        Command::Ingest { csv, p, r, json } => (cmd_ingest(&echo, &csv, p, r), json),
    };
    match result {
        Ok(outcome) => {
            let format = if format { Format::Json } else { Format::Tsv };
            if let Err(e) = outcome.emit(format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_DATA;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(err, "usage: minusclass <monoid|verify|spectrum|ingest> ... (see --help)");
            }
            e.code()
        }
    }
}

fn group_arg(spec: &str) -> Result<FinAbGroup, CliError> {
    parse_group(spec).map_err(CliError::Usage)
}

fn capacity(g: &FinAbGroup, bound: u64) -> Result<(), CliError> {
    if g.order() > bound {
        return Err(CliError::Capacity(format!("|G| = {} exceeds the bound {bound}", g.order())));
    }
    Ok(())
}

fn fmt_coords(v: &[Vec<i64>]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|c| format!("({})", c.iter().map(i64::to_string).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join("+")
}

fn sub_coords(h: &Subgroup) -> Vec<Vec<i64>> {
    h.generators().into_iter().map(|x| x.0).collect()
}

fn cmd_monoid(echo: &str, spec: &str, bound: u32, max_order: u64) -> Result<Outcome, CliError> {
    let g = group_arg(spec)?;
    if bound < 2 {
        return Err(CliError::Usage("--bound must be at least 2".into()));
    }
    capacity(&g, max_order)?;
    let rep = analyze_monoid(&g, bound, max_order)?;
    let ok = rep.all_checks_pass();
    let tsv = monoid_tsv(&g, &rep, ok);
    Ok(Outcome {
        report: Report {
            command: echo.to_string(),
            config: json!({ "group": g.factors(), "bound": bound, "max_order": max_order }),
            results: json!({ "report": rep, "checks_pass": ok }),
            verdict: rep.verdict.to_string(),
        },
        tsv,
        code: if ok { EXIT_OK } else { EXIT_CHECK },
    })
}

fn monoid_tsv(g: &FinAbGroup, r: &FreenessReport, ok: bool) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| s.push_str(&format!("{k}\t{v}\n"));
    let tally = |t: &crate::monoid::Tally| format!("{}/{}", t.passed, t.checked);
    kv("group", g.to_string());
    kv("order", r.order.to_string());
    kv("#S~", r.counts.s_tilde.to_string());
    kv("#S", r.counts.s.to_string());
    kv("#S'", r.counts.s_prime.to_string());
    kv("#S''", r.counts.s_double_prime.to_string());
    kv("#T", r.counts.t.to_string());
    for (p, n) in &r.counts.s_p {
        kv(&format!("#S_{p}"), n.to_string());
    }
    kv("sylow_decompositions", tally(&r.sylow_decompositions));
    kv("injective_on_S'", r.injective_on_s_prime.to_string());
    kv("irreducible_S'", tally(&r.irreducible));
    kv("reducible_outside_S'", tally(&r.reducible_outside));
    let bi = &r.bounded_injectivity;
    kv("bounded_injectivity", format!("{} (sum <= {}, {} vectors)", bi.injective, bi.bound, bi.vectors));
    let bd = &r.double_prime_injectivity;
    kv("S''_injectivity_evidence", format!("{} (sum <= {}, {} vectors)", bd.injective, bd.bound, bd.vectors));
    kv("subgroup_recovery", tally(&r.subgroup_recovery));
    if let Some(c) = &r.cardinality_formulas {
        kv("formula_S", format!("{} (enumerated {})", c.formula_s, c.enumerated_s));
        kv("formula_T", format!("{} (enumerated {})", c.formula_t, c.enumerated_t));
    }
    kv("checks_pass", ok.to_string());
    kv("verdict", r.verdict.to_string());
    if let Some(rank) = r.rank {
        kv("rank", rank.to_string());
    }
    s.push_str("beta\tI\tD\tin_S'\tsupport\n");
    for (k, b) in r.beta.iter().enumerate() {
        let support = b.support.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        s.push_str(&format!("{k}\t{}\t{}\t{}\t{support}\n", fmt_coords(&b.i), fmt_coords(&b.d), b.in_s_prime));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub check: Check,
    pub i: Vec<Vec<i64>>,
    pub phi: Vec<i64>,
    /// Subgroup `H` for Tate rows, second lift for unit rows.
    pub h: Option<Vec<Vec<i64>>>,
    pub phi2: Option<Vec<i64>>,
    pub p: Option<u64>,
    pub chi: Option<Vec<i64>>,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

fn row(check: Check, i: &Subgroup, phi: &GroupElement, status: Status) -> VerifyRow {
    VerifyRow { check, i: sub_coords(i), phi: phi.0.clone(), h: None, phi2: None, p: None, chi: None, status }
}

/// Runs the requested sweeps over every `(I, phi)` of `S~`.
pub fn verify_sweep(g: &FinAbGroup, checks: &[Check]) -> crate::Result<Vec<VerifyRow>> {
    let sets = build_sets(g, DEFAULT_ENUMERATION_BOUND)?;
    let subs = enumerate_subgroups(g, DEFAULT_ENUMERATION_BOUND)?;
    let checks: BTreeSet<Check> = checks.iter().copied().collect();
    let mut rows = Vec::new();
    let p_group = arith::is_prime_power(g.order());
    for check in checks {
        for pair in sets.s_tilde() {
            let (i, phi) = (&pair.i, &pair.phi);
            match check {
                Check::Tate => {
                    let a = a_module(i, phi)?;
                    for h in &subs {
                        let t = tate(h, &a)?;
                        let c = tate_closed_form(i, phi, h)?.invariant_factors()?;
                        let mut r = row(check, i, phi, Status::of(t.h0_factors() == c && t.h_minus1_factors() == c));
                        r.h = Some(sub_coords(h));
                        rows.push(r);
                    }
                }
                Check::Kernel => {
                    let status = match verify_kernel_generators(i, phi) {
                        Ok(ok) => Status::of(ok),
                        Err(Error::Scope(_)) => Status::Skip,
                        Err(e) => return Err(e),
                    };
                    rows.push(row(check, i, phi, status));
                }
                Check::Ext => rows.push(row(check, i, phi, Status::of(verify_ext_sequence(i, phi)?.holds()))),
                Check::Propfree => {
                    let a_order = a_module(i, phi)?.order()?;
                    let a_order = u64::try_from(a_order).map_err(|_| Error::Precondition("|A| too large".into()))?;
                    let primes: BTreeSet<u64> =
                        arith::prime_divisors(g.order()).into_iter().chain(arith::prime_divisors(a_order)).collect();
                    for p in primes {
                        for chi in characters(g, p) {
                            let (lhs, rhs) = check_prop_free(i, phi, &chi)?;
                            let mut r = row(check, i, phi, Status::of(lhs == rhs));
                            r.p = Some(p);
                            r.chi = Some(chi.exps.clone());
                            rows.push(r);
                        }
                    }
                }
                Check::Unit => {
                    if !p_group {
                        rows.push(row(check, i, phi, Status::Skip));
                        continue;
                    }
                    let d = i.join(&Subgroup::generated(g, std::slice::from_ref(phi))?)?;
                    for other in sets.s_tilde().iter().filter(|o| &o.i == i) {
                        let d2 = i.join(&Subgroup::generated(g, std::slice::from_ref(&other.phi))?)?;
                        if d2 != d {
                            continue;
                        }
                        let result = match verify_unit_transport(i, phi, i, &other.phi, 1) {
                            Err(Error::Precision { required, .. }) => verify_unit_transport(i, phi, i, &other.phi, required),
                            r => r,
                        }?;
                        let mut r = row(check, i, phi, Status::of(result.holds));
                        r.phi2 = Some(other.phi.0.clone());
                        rows.push(r);
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn cmd_verify(echo: &str, spec: &str, checks: &[Check], max_order: u64) -> Result<Outcome, CliError> {
    let g = group_arg(spec)?;
    capacity(&g, max_order)?;
    let rows = verify_sweep(&g, checks)?;
    let mut counts: BTreeMap<&str, BTreeMap<&str, u64>> = BTreeMap::new();
    for r in &rows {
        *counts.entry(r.check.name()).or_default().entry(r.status.name()).or_default() += 1;
    }
    let failed = rows.iter().any(|r| r.status == Status::Fail);

    let mut tsv = String::from("check\tI\tphi\tH\tphi2\tp\tchi\tstatus\n");
    let dash = || "-".to_string();
    for r in &rows {
        tsv.push_str(&format!(
            "{}\t{}\t({})\t{}\t{}\t{}\t{}\t{}\n",
            r.check.name(),
            fmt_coords(&r.i),
            r.phi.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            r.h.as_ref().map_or_else(dash, |h| fmt_coords(h)),
            r.phi2.as_ref().map_or_else(dash, |v| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))),
            r.p.map_or_else(dash, |p| p.to_string()),
            r.chi.as_ref().map_or_else(dash, |c| format!("({})", c.iter().map(i64::to_string).collect::<Vec<_>>().join(","))),
            r.status.name(),
        ));
    }
    for (check, by_status) in &counts {
        let parts: Vec<String> = by_status.iter().map(|(s, n)| format!("{s}={n}")).collect();
        tsv.push_str(&format!("summary\t{check}\t{}\n", parts.join(" ")));
    }
    let verdict = if failed { "FAIL" } else { "PASS" };
    tsv.push_str(&format!("verdict\t{verdict}\n"));
    Ok(Outcome {
        report: Report {
            command: echo.to_string(),
            config: json!({ "group": g.factors(), "checks": checks, "max_order": max_order }),
            results: json!({ "rows": rows, "counts": counts }),
            verdict: verdict.into(),
        },
        tsv,
        code: if failed { EXIT_CHECK } else { EXIT_OK },
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    echo: &str,
    p: u64,
    r: u32,
    n: u32,
    samples: usize,
    coeff_exp: u32,
    seed: u64,
    epsilon: i64,
) -> Result<Outcome, CliError> {
    if p < 3 || !arith::is_prime(p) {
        return Err(CliError::Usage(format!("--p {p} must be an odd prime")));
    }
    if r == 0 || n == 0 {
        return Err(CliError::Usage("--r and --n must be at least 1".into()));
    }
    if p.checked_pow(r).is_none_or(|q| q > 4096) {
        return Err(CliError::Capacity(format!("p^r = {p}^{r} is beyond the sampler's range")));
    }
    let batch = sample_spectrum(p, r, coeff_exp, samples, seed, epsilon).map_err(|e| match e {
        Error::Precondition(m) => CliError::Usage(m),
        e => CliError::Lib(e),
    })?;
    let summary = summarize(&batch, p, r, n);
    let ok = summary.all_pass();
    let verdict = if ok { "PASS" } else { "FAIL" };
    let tsv = spectrum_tsv(&summary, verdict);
    Ok(Outcome {
        report: Report {
            command: echo.to_string(),
            config: json!({
                "p": p, "r": r, "n": n, "samples": samples, "coeff_exp": coeff_exp, "seed": seed, "epsilon": epsilon
            }),
            results: json!({ "summary": summary, "predicted_set": PredictedSet::new(p, r, n).to_string() }),
            verdict: verdict.into(),
        },
        tsv,
        code: if ok { EXIT_OK } else { EXIT_CHECK },
    })
}

fn spectrum_tsv(s: &SpectrumSummary, verdict: &str) -> String {
    let mut out = String::new();
    let attained = s.attained.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    for (k, v) in [
        ("p", s.p.to_string()),
        ("r", s.r.to_string()),
        ("n", s.n.to_string()),
        ("predicted", PredictedSet::new(s.p, s.r, s.n).to_string()),
        ("samples", s.samples.to_string()),
        ("oracle_identity", format!("{}/{}", s.oracle_passes, s.samples)),
        ("membership", format!("{}/{}", s.membership_passes, s.samples)),
        ("claims", format!("{}/{}", s.claim_passes, s.samples)),
        ("rejections", s.rejections.to_string()),
        ("attained", attained),
    ] {
        out.push_str(&format!("{k}\t{v}\n"));
    }
    out.push_str("total\tcount\n");
    for (t, c) in &s.histogram {
        out.push_str(&format!("{t}\t{c}\n"));
    }
    out.push_str(&format!("verdict\t{verdict}\n"));
    out
}

/// One row of an externally computed table of `ord_p` of minus class numbers.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct ClassRecord {
    pub q: u64,
    pub field_tag: String,
    pub ord_value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IngestRow {
    pub row: usize,
    pub record: ClassRecord,
    pub congruence: bool,
    pub member: bool,
}

/// Reads a `q,field_tag,ord_value` table; errors carry the 1-based data row.
pub fn read_records(path: &Path) -> Result<Vec<ClassRecord>, String> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let headers = rdr.headers().map_err(|e| format!("header: {e}"))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["q", "field_tag", "ord_value"] {
        return Err(format!("expected header q,field_tag,ord_value, found {}", headers.iter().collect::<Vec<_>>().join(",")));
    }
    rdr.deserialize()
        .enumerate()
        .map(|(k, rec)| rec.map_err(|e| format!("row {}: {e}", k + 1)))
        .collect()
}

pub fn check_records(records: &[ClassRecord], p: u64, r: u32) -> Vec<IngestRow> {
    let modulus = p.pow(r);
    records
        .iter()
        .enumerate()
        .map(|(k, rec)| IngestRow {
            row: k + 1,
            record: rec.clone(),
            congruence: arith::is_prime(rec.q) && rec.q % modulus == 1,
            member: predicted_membership(rec.ord_value, p, r, 1),
        })
        .collect()
}

fn cmd_ingest(echo: &str, path: &Path, p: u64, r: u32) -> Result<Outcome, CliError> {
    if p < 3 || !arith::is_prime(p) || r == 0 {
        return Err(CliError::Usage("--p must be an odd prime and --r at least 1".into()));
    }
    let records = read_records(path).map_err(CliError::Data)?;
    let rows = check_records(&records, p, r);
    let attained: BTreeSet<u64> = records.iter().map(|x| x.ord_value).collect();
    let failed: Vec<usize> = rows.iter().filter(|x| !(x.congruence && x.member)).map(|x| x.row).collect();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };

    let mut tsv = String::from("row\tq\tfield_tag\tord_value\tcongruence\tmember\n");
    for x in &rows {
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            x.row, x.record.q, x.record.field_tag, x.record.ord_value, x.congruence, x.member
        ));
    }
    let attained_s = attained.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    tsv.push_str(&format!("attained\t{attained_s}\n"));
    tsv.push_str(&format!("predicted\t{}\n", PredictedSet::new(p, r, 1)));
    tsv.push_str(&format!("failed_rows\t{}\n", failed.len()));
    tsv.push_str(&format!("verdict\t{verdict}\n"));
    Ok(Outcome {
        report: Report {
            command: echo.to_string(),
            config: json!({ "csv": path.display().to_string(), "p": p, "r": r }),
            results: json!({ "rows": rows, "attained": attained, "failed_rows": failed }),
            verdict: verdict.into(),
        },
        tsv,
        code: if failed.is_empty() { EXIT_OK } else { EXIT_CHECK },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("minusclass").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("3,6").unwrap().factors(), &[3, 6]);
        assert!(parse_group("3,,6").is_err());
        assert!(parse_group("a").is_err());
        assert!(parse_group("1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["monoid", "x"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["monoid", "20000"]).0, EXIT_CAPACITY);
        assert_eq!(run_args(&["ingest", "/nonexistent.csv"]).0, EXIT_DATA);
        assert_eq!(run_args(&["spectrum", "--p", "4", "--r", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn monoid_reports() {
        let (code, out) = run_args(&["monoid", "9"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("#S\t3\n") && out.contains("#T\t3\n") && out.contains("verdict\tFREE\n"));
        let (code, out) = run_args(&["monoid", "3,6", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "NOT-FREE");
        for key in ["command", "config", "results", "verdict"] {
            assert!(v.get(key).is_some());
        }
    }

    #[test]
    fn verify_small() {
        let (code, out) = run_args(&["verify", "3"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.ends_with("verdict\tPASS\n"));
    }
}

//! Suite configuration, orchestration over parameter grids, and report
//! emission (JSON lines, CSV tables, plain-text summary).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use log::{info, warn};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{
    self, audit_with, coverage_experiment, threshold_size, two_set_experiment, two_set_size, CoverageResult,
    CoverageSummary, IncidenceAudit, PairCountResult, PairCounter,
};
use crate::error::{Error, Result};
use crate::field::{characters_of_order, is_prime, PrimeField};
use crate::identities::{
    a_r_grid, check_completed_kloosterman_form, check_cubic_power_expansion, check_duke_iwaniec, check_gauss_expansion,
    check_sphere_mode_expansion, cohomology_grid, BoundCheck, IdentityCheck, MAX_FOLD,
};
use crate::rng;
use crate::spheres::{all_sphere_spectra, constant_sweep, DecayReport, RadiusPolicy, SphereSpec};
use crate::vectorspace::{sample_point_set_with, PointSet, Space, MAX_DIM};

/// Random frequency vectors per cell for the sampled identity and bound checks.
const IDENTITY_SAMPLES: usize = 20;
const BOUND_SAMPLES: usize = 5;
/// Fraction of trials that must reach full coverage for a coverage cell to pass.
pub const COVERAGE_PASS_FRACTION: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    SphereDecay,
    Incidence,
    Coverage,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["identities", "sphere-decay", "incidence", "coverage", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::SphereDecay => "sphere-decay",
            Suite::Incidence => "incidence",
            Suite::Coverage => "coverage",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Identities, Suite::SphereDecay, Suite::Incidence, Suite::Coverage],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "sphere-decay" => Ok(Suite::SphereDecay),
            "incidence" => Ok(Suite::Incidence),
            "coverage" => Ok(Suite::Coverage),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidConfig {
                field: "suite",
                msg: format!("unknown suite {other:?}; expected one of {}", Suite::NAMES.join(", ")),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Jsonl,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" | "json" => Ok(OutputFormat::Jsonl),
            "csv" => Ok(OutputFormat::Csv),
            "text" | "txt" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidConfig { field: "format", msg: format!("unknown format {other:?}") }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub q_list: Vec<u64>,
    pub d_list: Vec<usize>,
    pub n_list: Vec<u32>,
    #[serde(rename = "C")]
    pub c: f64,
    pub trials: usize,
    pub seed: u64,
    pub c_env: f64,
    /// Reports are written here when set.
    pub out_dir: Option<PathBuf>,
    pub formats: Vec<OutputFormat>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Fixed point set for the incidence and coverage suites instead of random sets.
    pub points: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            q_list: vec![7, 13, 19, 31],
            d_list: vec![2, 3],
            n_list: vec![2, 3],
            c: 3.0,
            trials: 50,
            seed: 0,
            c_env: distance::DEFAULT_ENVELOPE,
            out_dir: None,
            formats: vec![OutputFormat::Jsonl, OutputFormat::Csv, OutputFormat::Text],
            jobs: None,
            points: None,
        }
    }
}

fn invalid(field: &'static str, msg: impl Into<String>) -> Error {
    Error::InvalidConfig { field, msg: msg.into() }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_list.is_empty() {
            return Err(invalid("q", "at least one modulus is required"));
        }
        for &q in &self.q_list {
            if !is_prime(q) {
                return Err(invalid("q", format!("{q} is not prime")));
            }
            PrimeField::new(q).map_err(|e| invalid("q", e.to_string()))?;
        }
        if self.d_list.is_empty() {
            return Err(invalid("d", "at least one dimension is required"));
        }
        if let Some(&d) = self.d_list.iter().find(|&&d| !(2..=MAX_DIM).contains(&d)) {
            return Err(invalid("d", format!("{d} is outside 2..={MAX_DIM}")));
        }
        if self.n_list.is_empty() {
            return Err(invalid("n", "at least one exponent is required"));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(invalid("n", format!("{n} is below 2")));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(invalid("C", format!("{} must be positive", self.c)));
        }
        if !(self.c_env.is_finite() && self.c_env > 0.0) {
            return Err(invalid("c-env", format!("{} must be positive", self.c_env)));
        }
        if self.jobs == Some(0) {
            return Err(invalid("jobs", "must be at least 1"));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<(u64, usize, u32)> {
        let mut out = Vec::new();
        for &q in &self.q_list {
            for &d in &self.d_list {
                for &n in &self.n_list {
                    out.push((q, d, n));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn sorted_qs(&self) -> Vec<u64> {
        let mut qs = self.q_list.clone();
        qs.sort_unstable();
        qs.dedup();
        qs
    }
}

/// A parameter point that was not run, and why.
#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub suite: Suite,
    pub parameters: String,
    pub reason: String,
}

/// Aggregated coverage for one `(q, d, n)` cell.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageCell {
    pub single: CoverageSummary,
    pub pair: Option<CoverageSummary>,
    pub hypothesis_ok: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExperimentReport {
    pub config: Option<SuiteConfig>,
    pub rng_algorithm: &'static str,
    pub identity_checks: Vec<IdentityCheck>,
    pub bound_checks: Vec<BoundCheck>,
    pub decay_reports: Vec<DecayReport>,
    pub incidence: Vec<IncidenceAudit>,
    pub coverage: Vec<CoverageResult>,
    pub coverage_cells: Vec<CoverageCell>,
    pub skipped: Vec<Skipped>,
    /// Largest measured constants, keyed by quantity.
    pub maxima: BTreeMap<String, f64>,
    pub failures: Vec<String>,
    pub verdict_pass: bool,
    /// Seconds per suite.
    pub timings: BTreeMap<String, f64>,
}

impl ExperimentReport {
    pub fn verdict(&self) -> &'static str {
        if self.verdict_pass {
            "pass"
        } else {
            "fail"
        }
    }

    /// Process exit status: 0 on pass, 1 on failed checks.
    pub fn exit_code(&self) -> i32 {
        if self.verdict_pass {
            0
        } else {
            1
        }
    }

    fn bump(&mut self, key: &str, value: f64) {
        let slot = self.maxima.entry(key.to_string()).or_insert(f64::NEG_INFINITY);
        if value > *slot {
            *slot = value;
        }
    }

    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }
}

fn ctx(suite: Suite, q: u64, d: usize, n: u32) -> String {
    format!("{suite} q={q} d={d} n={n}")
}

/// Runs the configured suite, writes reports when `out_dir` is set, and
/// returns the aggregate.
pub fn run_suite(config: &SuiteConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| invalid("jobs", e.to_string()))?;
    let points = match &config.points {
        Some(path) => Some(PointSet::read(path).map_err(|e| e.context(format!("reading {}", path.display())))?),
        None => None,
    };

    let mut report =
        ExperimentReport { config: Some(config.clone()), rng_algorithm: rng::ALGORITHM, ..Default::default() };
    pool.install(|| -> Result<()> {
        for suite in config.suite.members() {
            let start = Instant::now();
            info!("running suite {suite}");
            match suite {
                Suite::Identities => run_identities(config, &mut report)?,
                Suite::SphereDecay => run_sphere_decay(config, &mut report)?,
                Suite::Incidence => run_incidence(config, points.as_ref(), &mut report)?,
                Suite::Coverage => run_coverage(config, points.as_ref(), &mut report)?,
                Suite::All => unreachable!("expanded above"),
            }
            report.timings.insert(suite.name().to_string(), start.elapsed().as_secs_f64());
        }
        Ok(())
    })?;
    report.verdict_pass = report.failures.is_empty();

    if let Some(dir) = &config.out_dir {
        write_reports(&report, dir, &config.formats)?;
    }
    Ok(report)
}

fn run_identities(config: &SuiteConfig, report: &mut ExperimentReport) -> Result<()> {
    let suite = Suite::Identities;
    let batches: Vec<Result<(Vec<IdentityCheck>, Vec<BoundCheck>)>> = config
        .sorted_qs()
        .into_par_iter()
        .map(|q| identities_for_field(config, q).map_err(|e| e.context(format!("{suite} q={q}"))))
        .collect();
    for batch in batches {
        let (identities, bounds) = batch?;
        for check in identities {
            report.bump("identity_residual", check.residual);
            if !check.pass {
                report.fail(format!("identity {} {:?}: residual {:.3e}", check.name, check.parameters, check.residual));
            }
            report.identity_checks.push(check);
        }
        for check in bounds {
            report.bump(&format!("{}_ratio", check.name), check.ratio);
            if !check.within(config.c_env) {
                report.fail(format!(
                    "bound {} {:?}: ratio {:.3} > {}",
                    check.name, check.parameters, check.ratio, config.c_env
                ));
            }
            report.bound_checks.push(check);
        }
    }
    Ok(())
}

fn identities_for_field(config: &SuiteConfig, q: u64) -> Result<(Vec<IdentityCheck>, Vec<BoundCheck>)> {
    let field = PrimeField::new(q)?;
    let mut ids = Vec::new();
    let mut bounds = Vec::new();

    for n in 2..=6 {
        for b in 0..=1 {
            for t in field.nonzero() {
                ids.push(check_gauss_expansion(&field, t, b, n)?);
            }
        }
    }

    if field.q() % 3 == 1 {
        let chars = characters_of_order(&field, 3)?;
        let mut rng = rng::stream(config.seed, "identities", q);
        for psi in &chars {
            for a in field.nonzero() {
                ids.push(check_duke_iwaniec(&field, a, psi)?);
            }
            for l in 1..=MAX_FOLD as u32 {
                for t in field.nonzero() {
                    ids.push(check_cubic_power_expansion(&field, t, l, psi)?);
                }
            }
            for l in 1..=2usize {
                for t in field.nonzero() {
                    for _ in 0..IDENTITY_SAMPLES {
                        let m: Vec<u32> = (0..l).map(|_| rng.random_range(1..field.q())).collect();
                        ids.push(check_completed_kloosterman_form(&field, t, &m, psi)?);
                    }
                }
            }
            for &d in config.d_list.iter().filter(|&&d| d <= MAX_FOLD) {
                for _ in 0..IDENTITY_SAMPLES {
                    let m: Vec<u32> = loop {
                        let m: Vec<u32> = (0..d).map(|_| rng.random_range(0..field.q())).collect();
                        if m.iter().any(|&x| x != 0) {
                            break m;
                        }
                    };
                    let j = rng.random_range(1..field.q());
                    ids.push(check_sphere_mode_expansion(&SphereSpec::new(&field, d, 3, j)?, &m, psi)?);
                }
            }
        }
        bounds.extend(a_r_grid(&field, BOUND_SAMPLES, config.seed ^ q)?);
    }

    for check in cohomology_grid(&field, &config.n_list, BOUND_SAMPLES, config.seed ^ q)? {
        bounds.push(check.full);
        bounds.extend(check.r_sums);
        ids.extend(check.r_expansion);
    }
    Ok((ids, bounds))
}

fn run_sphere_decay(config: &SuiteConfig, report: &mut ExperimentReport) -> Result<()> {
    let suite = Suite::SphereDecay;
    for (q, d, n) in config.grid() {
        let reports = constant_sweep(n, d, RadiusPolicy::All, &[q]).map_err(|e| e.context(ctx(suite, q, d, n)))?;
        for r in reports {
            let key = if r.hypothesis_ok { "" } else { "exploratory_" };
            report.bump(&format!("{key}decay_constant"), r.decay_constant);
            report.bump(&format!("{key}zero_mode_deviation"), r.zero_mode_deviation);
            if r.hypothesis_ok && (r.decay_constant > config.c_env || r.zero_mode_deviation > config.c_env) {
                report.fail(format!(
                    "decay q={} d={} n={} j={}: constant {:.3}, zero-mode deviation {:.3}",
                    r.q, r.d, r.n, r.j, r.decay_constant, r.zero_mode_deviation
                ));
            }
            report.decay_reports.push(r);
        }
    }
    Ok(())
}

/// Size used for random incidence sets: `⌈q^{(d+1)/2}⌉`, capped at `q^d`.
fn incidence_size(space: &Space) -> usize {
    let raw = (space.q() as f64).powf((space.dim() as f64 + 1.0) / 2.0).ceil() as usize;
    raw.min(space.size())
}

fn run_incidence(config: &SuiteConfig, points: Option<&PointSet>, report: &mut ExperimentReport) -> Result<()> {
    let suite = Suite::Incidence;
    for (q, d, n) in config.grid() {
        let field = PrimeField::new(q)?;
        let space = Space::new(&field, d)?;
        if let Some(p) = points {
            if p.space() != &space {
                continue;
            }
        }
        let spectra = all_sphere_spectra(&space, n);
        let radii: Vec<u32> = field.nonzero().collect();
        let audits: Vec<Result<IncidenceAudit>> = match points {
            Some(p) => vec![PairCounter::new(p, p, n, config.c_env).and_then(|c| audit_with(&c, &spectra, &radii))],
            None => (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = rng::stream(config.seed, &format!("incidence/{q}/{d}/{n}"), trial as u64);
                    let size = incidence_size(&space);
                    let e = sample_point_set_with(&space, size, &mut rng)?;
                    let f = sample_point_set_with(&space, size, &mut rng)?;
                    audit_with(&PairCounter::new(&e, &f, n, config.c_env)?, &spectra, &radii)
                })
                .collect(),
        };
        for audit in audits {
            let audit = audit.map_err(|e| e.context(ctx(suite, q, d, n)))?;
            let key = if audit.hypothesis_ok { "" } else { "exploratory_" };
            report.bump(&format!("{key}incidence_ratio"), audit.max_ratio);
            let bad: Vec<&PairCountResult> = audit.results.iter().filter(|r| !r.exact() || !r.within_bound()).collect();
            for r in bad {
                let msg = format!(
                    "incidence q={q} d={d} n={n} j={}: brute {} spectral {:.3} bound {:.1}",
                    r.j, r.brute, r.spectral, r.bound_rhs
                );
                if !r.exact() || audit.hypothesis_ok {
                    report.fail(msg);
                } else {
                    warn!("{msg} (exploratory)");
                }
            }
            report.incidence.push(audit);
        }
    }
    if let Some(p) = points {
        if report.incidence.is_empty() {
            report.skipped.push(Skipped {
                suite,
                parameters: format!("q={} d={}", p.space().q(), p.space().dim()),
                reason: "point file does not match any (q, d) in the grid".into(),
            });
        }
    }
    Ok(())
}

fn run_coverage(config: &SuiteConfig, points: Option<&PointSet>, report: &mut ExperimentReport) -> Result<()> {
    let suite = Suite::Coverage;
    for (q, d, n) in config.grid() {
        let field = PrimeField::new(q)?;
        let space = Space::new(&field, d)?;
        let hypothesis_ok = SphereSpec::new(&field, d, n, 1)?.hypothesis_ok();
        let params = format!("q={q} d={d} n={n} C={}", config.c);

        if let Some(p) = points {
            if p.space() != &space {
                continue;
            }
            let result = distance::two_set_coverage(p, p, n).map_err(|e| e.context(ctx(suite, q, d, n)))?;
            let single =
                CoverageSummary::from_results(q as u32, d, n, config.c, p.size(), std::slice::from_ref(&result), false);
            report.bump("coverage_score", result.score);
            report.coverage_cells.push(CoverageCell { single, pair: None, hypothesis_ok, pass: true });
            report.coverage.push(result);
            continue;
        }

        let size = match threshold_size(&space, config.c) {
            Ok(size) => size,
            Err(e) => {
                report.skipped.push(Skipped { suite, parameters: params, reason: e.to_string() });
                continue;
            }
        };
        let results = coverage_experiment(q, d, n, config.c, config.trials, config.seed)
            .map_err(|e| e.context(ctx(suite, q, d, n)))?;
        let single = CoverageSummary::from_results(q as u32, d, n, config.c, size, &results, false);

        let pair = match two_set_size(&space, config.c) {
            Ok(pair_size) => {
                let pairs = two_set_experiment(q, d, n, config.c, config.trials, config.seed)
                    .map_err(|e| e.context(ctx(suite, q, d, n)))?;
                let summary = CoverageSummary::from_results(q as u32, d, n, config.c, pair_size, &pairs, true);
                report.coverage.extend(pairs);
                Some(summary)
            }
            Err(e) => {
                report.skipped.push(Skipped { suite, parameters: format!("{params} two-set"), reason: e.to_string() });
                None
            }
        };
        for r in &results {
            report.bump("coverage_score", r.score);
        }
        report.coverage.extend(results);

        let pass = single.full_coverage_fraction >= COVERAGE_PASS_FRACTION
            && pair.as_ref().map_or(true, |p| p.full_coverage_fraction >= COVERAGE_PASS_FRACTION);
        if hypothesis_ok && !pass {
            report.fail(format!(
                "coverage {params}: full-coverage fraction {:.2}{}",
                single.full_coverage_fraction,
                pair.as_ref().map(|p| format!(", two-set {:.2}", p.full_coverage_fraction)).unwrap_or_default()
            ));
        }
        report.coverage_cells.push(CoverageCell { single, pair, hypothesis_ok, pass });
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Record<'a> {
    Identity(&'a IdentityCheck),
    Bound(&'a BoundCheck),
    Decay(&'a DecayReport),
    Incidence(&'a IncidenceAudit),
    Coverage(&'a CoverageResult),
    CoverageCell(&'a CoverageCell),
    Skipped(&'a Skipped),
    Summary {
        config: &'a Option<SuiteConfig>,
        rng_algorithm: &'a str,
        maxima: &'a BTreeMap<String, f64>,
        failures: &'a [String],
        verdict: &'a str,
        timings: &'a BTreeMap<String, f64>,
    },
}

#[derive(Serialize)]
struct PairCountCsvRow {
    q: u32,
    d: usize,
    n: u32,
    e_size: usize,
    f_size: usize,
    j: u32,
    brute: u64,
    spectral: f64,
    i_term: f64,
    ii_term: f64,
    bound_rhs: f64,
    ratio: f64,
}

/// Writes `report.jsonl`, the CSV tables and `summary.txt` under `dir`.
pub fn write_reports(report: &ExperimentReport, dir: &Path, formats: &[OutputFormat]) -> Result<()> {
    fs::create_dir_all(dir)?;
    if formats.contains(&OutputFormat::Jsonl) {
        let mut out = std::io::BufWriter::new(fs::File::create(dir.join("report.jsonl"))?);
        let mut line = |record: Record| -> Result<()> {
            serde_json::to_writer(&mut out, &record)?;
            out.write_all(b"\n")?;
            Ok(())
        };
        report.identity_checks.iter().try_for_each(|c| line(Record::Identity(c)))?;
        report.bound_checks.iter().try_for_each(|c| line(Record::Bound(c)))?;
        report.decay_reports.iter().try_for_each(|c| line(Record::Decay(c)))?;
        report.incidence.iter().try_for_each(|c| line(Record::Incidence(c)))?;
        report.coverage.iter().try_for_each(|c| line(Record::Coverage(c)))?;
        report.coverage_cells.iter().try_for_each(|c| line(Record::CoverageCell(c)))?;
        report.skipped.iter().try_for_each(|c| line(Record::Skipped(c)))?;
        line(Record::Summary {
            config: &report.config,
            rng_algorithm: report.rng_algorithm,
            maxima: &report.maxima,
            failures: &report.failures,
            verdict: report.verdict(),
            timings: &report.timings,
        })?;
        out.flush()?;
    }
    if formats.contains(&OutputFormat::Csv) {
        write_csv(dir.join("identities.csv"), report.identity_checks.iter().map(|c| c.csv_row()))?;
        write_csv(dir.join("bounds.csv"), report.bound_checks.iter().map(|c| c.csv_row()))?;
        write_csv(dir.join("sphere_decay.csv"), report.decay_reports.iter().map(|r| r.csv_row()))?;
        write_csv(
            dir.join("pair_counts.csv"),
            report.incidence.iter().flat_map(|a| {
                a.results.iter().map(move |r| PairCountCsvRow {
                    q: a.q,
                    d: a.d,
                    n: a.n,
                    e_size: a.e_size,
                    f_size: a.f_size,
                    j: r.j,
                    brute: r.brute,
                    spectral: r.spectral,
                    i_term: r.i_term,
                    ii_term: r.ii_term,
                    bound_rhs: r.bound_rhs,
                    ratio: r.ratio,
                })
            }),
        )?;
        write_csv(
            dir.join("coverage.csv"),
            report.coverage_cells.iter().flat_map(|c| std::iter::once(&c.single).chain(c.pair.as_ref())),
        )?;
    }
    if formats.contains(&OutputFormat::Text) {
        fs::write(dir.join("summary.txt"), summary_text(report))?;
    }
    Ok(())
}

fn write_csv<T: Serialize>(path: PathBuf, rows: impl Iterator<Item = T>) -> Result<()> {
    let mut writer = csv::Writer::from_path(&path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Human-readable digest of a report.
pub fn summary_text(report: &ExperimentReport) -> String {
    let mut s = String::new();
    if let Some(config) = &report.config {
        let _ = writeln!(s, "suite: {}", config.suite);
        let _ = writeln!(
            s,
            "grid: q={:?} d={:?} n={:?} C={} trials={} seed={} C_env={}",
            config.q_list, config.d_list, config.n_list, config.c, config.trials, config.seed, config.c_env
        );
    }
    let _ = writeln!(s, "rng: {}", report.rng_algorithm);
    let passed = report.identity_checks.iter().filter(|c| c.pass).count();
    let _ = writeln!(s, "identity checks: {passed}/{} pass", report.identity_checks.len());
    let _ = writeln!(s, "bound checks: {}", report.bound_checks.len());
    let _ = writeln!(s, "decay reports: {}", report.decay_reports.len());
    let _ = writeln!(s, "incidence audits: {}", report.incidence.len());
    for cell in &report.coverage_cells {
        let c = &cell.single;
        let _ = write!(
            s,
            "coverage q={} d={} n={} size={}: full {:.2} min {:.3}",
            c.q, c.d, c.n, c.size, c.full_coverage_fraction, c.min_coverage
        );
        if let Some(p) = &cell.pair {
            let _ = write!(s, "; two-set size={} F_q^* {:.2}", p.size, p.full_coverage_fraction);
        }
        let _ = writeln!(s, "{}", if cell.hypothesis_ok { "" } else { " (exploratory)" });
    }
    for skip in &report.skipped {
        let _ = writeln!(s, "skipped {} {}: {}", skip.suite, skip.parameters, skip.reason);
    }
    let _ = writeln!(s, "maxima:");
    for (k, v) in &report.maxima {
        let _ = writeln!(s, "  {k} = {v:.6}");
    }
    for (k, v) in &report.timings {
        let _ = writeln!(s, "time {k}: {v:.2}s");
    }
    for f in &report.failures {
        let _ = writeln!(s, "FAIL {f}");
    }
    let _ = writeln!(s, "verdict: {}", report.verdict());
    s
}

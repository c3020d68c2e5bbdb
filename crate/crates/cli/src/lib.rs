//! Verification harness: exhaustive or seeded-sample runs over coefficient
//! triples, single-triple diagnostics, and the Hasse–Weil bound table.
//!
//! Reports are JSON Lines (one [`TripleRecord`] per line and a closing
//! summary object) or TSV. Timing is never part of a report so that runs
//! with the same configuration produce identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use quadperm_core::curve::{
    classify, count_rational_zeros, curve_coeffs, hasse_weil_lower_bound, CurveClass,
    MAX_COUNT_DEGREE,
};
use quadperm_core::quadperm::{g_total, rational_map_coeffs, theta_of};
use quadperm_core::sample::random_triple;
use quadperm_core::{gamma_member, is_perm_bruteforce, is_perm_structured, Fq, TowerCtx, Triple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest `m` accepted in exhaustive mode (`2^{5m} <= 2^{26}`).
pub const EXHAUSTIVE_MAX_DEGREE: u32 = 5;

/// Brute-force checks need a full image bitset of GF(2^{2m}).
pub const BRUTEFORCE_MAX_DEGREE: u32 = 10;

const CHUNK: usize = 1 << 12;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Algebra(#[from] quadperm_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Exhaustive,
    Sample,
}

impl FromStr for RunMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<RunMode> {
        match s {
            "exhaustive" => Ok(RunMode::Exhaustive),
            "sample" => Ok(RunMode::Sample),
            _ => Err(HarnessError::Config(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Theorem,
    Lemma4,
    Curve,
    HasseWeil,
    Fmap,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Theorem,
        Check::Lemma4,
        Check::Curve,
        Check::HasseWeil,
        Check::Fmap,
    ];
}

impl FromStr for Check {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Check> {
        match s {
            "theorem" => Ok(Check::Theorem),
            "lemma4" => Ok(Check::Lemma4),
            "curve" => Ok(Check::Curve),
            "hasseweil" => Ok(Check::HasseWeil),
            "fmap" => Ok(Check::Fmap),
            _ => Err(HarnessError::Config(format!("unknown check {s:?}"))),
        }
    }
}

/// Parses a comma-separated check list.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Tsv,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "tsv" => Ok(Format::Tsv),
            _ => Err(HarnessError::Config(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m: u32,
    pub mode: RunMode,
    pub samples: u64,
    pub seed: Option<u64>,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Report destination; `None` is standard output.
    pub output: Option<PathBuf>,
    pub format: Format,
    pub checks: BTreeSet<Check>,
    /// Number of triples also checked by brute force; `None` picks
    /// [`default_bruteforce`].
    pub bruteforce: Option<u64>,
    /// Suppress per-triple records.
    pub summary_only: bool,
}

impl RunConfig {
    pub fn exhaustive(m: u32) -> RunConfig {
        RunConfig {
            m,
            mode: RunMode::Exhaustive,
            samples: 0,
            seed: None,
            jobs: None,
            output: None,
            format: Format::Jsonl,
            checks: Check::ALL.into_iter().collect(),
            bruteforce: None,
            summary_only: false,
        }
    }

    pub fn sample(m: u32, samples: u64, seed: u64) -> RunConfig {
        RunConfig {
            mode: RunMode::Sample,
            samples,
            seed: Some(seed),
            ..RunConfig::exhaustive(m)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.m == 0 || self.m > quadperm_core::field::MAX_DEGREE {
            return bad(format!(
                "m = {} is outside 1..={}",
                self.m,
                quadperm_core::field::MAX_DEGREE
            ));
        }
        if self.m % 2 == 0 && self.m > quadperm_core::tower::DIRECT_MAX_DEGREE {
            return bad(format!(
                "even m is supported up to {}",
                quadperm_core::tower::DIRECT_MAX_DEGREE
            ));
        }
        match self.mode {
            RunMode::Exhaustive if self.m > EXHAUSTIVE_MAX_DEGREE => bad(format!(
                "exhaustive mode needs m <= {EXHAUSTIVE_MAX_DEGREE}"
            )),
            RunMode::Sample if self.seed.is_none() => bad("sample mode needs --seed".into()),
            RunMode::Sample if self.samples == 0 => bad("sample mode needs --samples > 0".into()),
            _ if self.jobs == Some(0) => bad("--jobs must be positive".into()),
            _ if self.checks.is_empty() => bad("no checks selected".into()),
            _ if self.bruteforce.is_some_and(|n| n > 0) && self.m > BRUTEFORCE_MAX_DEGREE => {
                bad(format!("brute force needs m <= {BRUTEFORCE_MAX_DEGREE}"))
            }
            _ => Ok(()),
        }
    }

    pub fn triple_count(&self) -> u64 {
        match self.mode {
            RunMode::Exhaustive => 1 << (5 * self.m),
            RunMode::Sample => self.samples,
        }
    }
}

/// Brute-force budget when none is given: everything for m <= 3, a spot
/// check of 1000 triples for m in 4..=6, none above.
pub fn default_bruteforce(m: u32) -> u64 {
    match m {
        0..=3 => u64::MAX,
        4..=6 => 1000,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    pub triple: String,
    pub gamma: bool,
    pub perm_structured: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm_bruteforce: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_class: Option<CurveClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub off_diagonal_zeros: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma4: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fmap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lemma4Counts {
    pub item1: u64,
    pub item2: u64,
    pub item3: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub d: u32,
    pub bound: String,
    pub exceeds_two: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub m: u32,
    pub mode: RunMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub triples: u64,
    pub degenerate: u64,
    pub gamma_members: u64,
    pub permutations: u64,
    pub bruteforce_checked: u64,
    pub lemma4_checked: Lemma4Counts,
    pub fmap_checked: u64,
    pub curve_classes: BTreeMap<CurveClass, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hasse_weil: Option<BoundSummary>,
    pub discrepancies: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<String>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.discrepancies == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

struct Plan {
    checks: BTreeSet<Check>,
    odd: bool,
    count_zeros: bool,
    hw_exceeds_two: bool,
}

struct Eval {
    record: TripleRecord,
    degenerate: bool,
    lemma4: Lemma4Counts,
}

fn lemma4(ctx: &TowerCtx, t: &Triple, gamma: bool) -> (bool, Lemma4Counts) {
    let th = theta_of(ctx, t);
    let mut counts = Lemma4Counts {
        item1: 1,
        ..Default::default()
    };
    let mut ok = th.norm_identity_holds(ctx);
    if gamma {
        counts.item2 = 1;
        ok &= th.cross_identity_holds(ctx);
        if let Ok(Some(_)) = th.unit_root(ctx) {
            counts.item3 = 1;
            ok &= th.product_identity_holds(ctx);
        }
    }
    (ok, counts)
}

/// `F` through ε/τ agrees with `g(φ(x))` everywhere, and is injective and
/// misses `g(1)` exactly when `f` permutes. `φ` never reaches 1, so
/// injectivity alone is not enough.
fn fmap(ctx: &TowerCtx, t: &Triple, perm: bool) -> quadperm_core::Result<bool> {
    let rc = rational_map_coeffs(ctx, t)?;
    let mut images = Vec::with_capacity(ctx.base().order() as usize);
    let mut agrees = true;
    let mut defined = true;
    for x in ctx.base().elements() {
        let g = g_total(ctx, t, ctx.phi(x)?);
        match rc.eval(ctx, x) {
            Ok(v) => {
                agrees &= v == g;
                images.push(ctx.index(v));
            }
            Err(_) => {
                agrees &= g.is_zero();
                defined = false;
            }
        }
    }
    let excluded = ctx.index(g_total(ctx, t, ctx.one()));
    images.sort_unstable();
    let injective = defined
        && images.windows(2).all(|w| w[0] != w[1])
        && images.binary_search(&excluded).is_err();
    Ok(agrees && injective == perm)
}

fn evaluate(ctx: &TowerCtx, t: &Triple, plan: &Plan, brute: bool) -> quadperm_core::Result<Eval> {
    let degenerate = t.is_degenerate(ctx);
    let gamma = plan.odd && gamma_member(ctx, t);
    let structured = is_perm_structured(ctx, t);
    let mut issues: Vec<String> = Vec::new();
    let mut rec = TripleRecord {
        triple: t.encode(ctx),
        gamma,
        perm_structured: structured,
        perm_bruteforce: None,
        curve_class: None,
        product_verified: None,
        off_diagonal_zeros: None,
        lemma4: None,
        fmap: None,
        discrepancy: None,
    };
    if plan.checks.contains(&Check::Theorem) {
        if structured != gamma {
            issues.push(format!("structured={structured} but odd-and-gamma={gamma}"));
        }
        if brute {
            let b = is_perm_bruteforce(ctx, t);
            rec.perm_bruteforce = Some(b);
            if b != structured {
                issues.push(format!("bruteforce={b} but structured={structured}"));
            }
        }
    }
    let mut counts = Lemma4Counts::default();
    if plan.checks.contains(&Check::Lemma4) {
        let (ok, c) = lemma4(ctx, t, gamma);
        rec.lemma4 = Some(ok);
        counts = c;
        if !ok {
            issues.push("lemma4 identity fails".into());
        }
    }
    let wants_curve =
        plan.checks.contains(&Check::Curve) || plan.checks.contains(&Check::HasseWeil);
    if plan.odd && !degenerate && wants_curve {
        let th = theta_of(ctx, t);
        let rep = classify(ctx, &th)?;
        rec.curve_class = Some(rep.class);
        if rep.class.splits() {
            rec.product_verified = Some(rep.product_verified && rep.factors_irrational);
        }
        let zeros = if plan.count_zeros {
            Some(count_rational_zeros(ctx, &curve_coeffs(ctx, &th)?)?.off_diagonal)
        } else {
            None
        };
        rec.off_diagonal_zeros = zeros;
        if plan.checks.contains(&Check::Curve) {
            if rep.class.splits() != gamma {
                issues.push(format!("class {} but gamma={gamma}", rep.class));
            }
            if rep.class.splits() && !(rep.product_verified && rep.factors_irrational) {
                issues.push(format!("{} factors do not reproduce L", rep.class));
            }
            if gamma && zeros.is_some_and(|z| z > 0) {
                issues.push("gamma member with off-diagonal zeros".into());
            }
            // over GF(2) the implication fails; from m = 3 on it is checked
            if ctx.m() >= 3 && rep.class == CurveClass::RationalComponent && zeros == Some(0) {
                issues.push("rational component without off-diagonal zeros".into());
            }
        }
        if plan.checks.contains(&Check::HasseWeil)
            && plan.hw_exceeds_two
            && rep.class == CurveClass::RationalComponent
            && zeros == Some(0)
        {
            issues.push("zero count below the Hasse-Weil bound".into());
        }
    }
    if plan.odd && !degenerate && plan.checks.contains(&Check::Fmap) {
        let ok = fmap(ctx, t, structured)?;
        rec.fmap = Some(ok);
        if !ok {
            issues.push("F map disagrees with g(phi(x))".into());
        }
    }
    if !issues.is_empty() {
        rec.discrepancy = Some(issues.join("; "));
    }
    Ok(Eval {
        record: rec,
        degenerate,
        lemma4: counts,
    })
}

/// Triple number `k` of the exhaustive enumeration: `a1` outermost, then
/// `a2`, then `a3`, each in increasing index order.
pub fn triple_at(ctx: &TowerCtx, k: u64) -> Triple {
    let m = ctx.m();
    let mask = ctx.order() - 1;
    Triple::new(
        Fq::from_bits(k >> (4 * m)),
        ctx.from_index((k >> (2 * m)) & mask),
        ctx.from_index(k & mask),
    )
}

fn tsv_header() -> &'static str {
    "triple\tgamma\tperm_structured\tperm_bruteforce\tcurve_class\toff_diagonal_zeros\tdiscrepancy"
}

fn tsv_row(r: &TripleRecord) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.triple,
        r.gamma,
        r.perm_structured,
        opt(r.perm_bruteforce.map(|b| b.to_string())),
        opt(r.curve_class.map(|c| c.to_string())),
        opt(r.off_diagonal_zeros.map(|z| z.to_string())),
        opt(r.discrepancy.clone()),
    )
}

/// Writes the closing summary in the configured format.
fn write_summary(out: &mut dyn Write, format: Format, s: &Summary) -> Result<()> {
    let json =
        serde_json::to_string(&serde_json::json!({ "summary": s })).expect("summary serializes");
    match format {
        Format::Jsonl => writeln!(out, "{json}")?,
        Format::Tsv => writeln!(out, "# summary\t{json}")?,
    }
    Ok(())
}

/// Runs the configured verification, writing the report to `out`.
pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Summary> {
    cfg.validate()?;
    let ctx = TowerCtx::for_degree(cfg.m)?;
    let odd = cfg.m % 2 == 1;
    let bound = hasse_weil_lower_bound(4, cfg.m);
    let plan = Plan {
        checks: cfg.checks.clone(),
        odd,
        count_zeros: cfg.m <= MAX_COUNT_DEGREE,
        hw_exceeds_two: bound.exceeds(2),
    };
    let total = cfg.triple_count();
    let budget = cfg.bruteforce.unwrap_or_else(|| default_bruteforce(cfg.m));
    let budget = if cfg.m > BRUTEFORCE_MAX_DEGREE {
        0
    } else {
        budget.min(total)
    };
    let stride = if budget == 0 {
        u64::MAX
    } else {
        total / budget
    };
    let brute_for = |i: u64| budget > 0 && i % stride == 0 && i / stride < budget;

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cfg.jobs {
            b = b.num_threads(j);
        }
        b.build().map_err(|e| HarnessError::Config(e.to_string()))?
    };

    let mut summary = Summary {
        m: cfg.m,
        mode: cfg.mode,
        seed: cfg.seed.filter(|_| cfg.mode == RunMode::Sample),
        checks: cfg.checks.iter().copied().collect(),
        triples: 0,
        degenerate: 0,
        gamma_members: 0,
        permutations: 0,
        bruteforce_checked: 0,
        lemma4_checked: Lemma4Counts::default(),
        fmap_checked: 0,
        curve_classes: BTreeMap::new(),
        hasse_weil: cfg
            .checks
            .contains(&Check::HasseWeil)
            .then(|| BoundSummary {
                d: 4,
                bound: bound.to_string(),
                exceeds_two: bound.exceeds(2),
            }),
        discrepancies: 0,
        first_discrepancy: None,
    };

    if cfg.format == Format::Tsv && !cfg.summary_only {
        writeln!(out, "{}", tsv_header())?;
    }
    let mut rng = cfg.seed.map(ChaCha8Rng::seed_from_u64);
    let mut next = 0u64;
    while next < total {
        let len = (total - next).min(CHUNK as u64);
        let triples: Vec<Triple> = match cfg.mode {
            RunMode::Exhaustive => (next..next + len).map(|k| triple_at(&ctx, k)).collect(),
            RunMode::Sample => {
                let rng = rng.as_mut().expect("validated");
                (0..len).map(|_| random_triple(&ctx, rng)).collect()
            }
        };
        let evals: Vec<quadperm_core::Result<Eval>> = pool.install(|| {
            triples
                .par_iter()
                .enumerate()
                .map(|(i, t)| evaluate(&ctx, t, &plan, brute_for(next + i as u64)))
                .collect()
        });
        for e in evals {
            let e = e?;
            let r = &e.record;
            summary.triples += 1;
            summary.degenerate += e.degenerate as u64;
            summary.gamma_members += r.gamma as u64;
            summary.permutations += r.perm_structured as u64;
            summary.bruteforce_checked += r.perm_bruteforce.is_some() as u64;
            summary.lemma4_checked.item1 += e.lemma4.item1;
            summary.lemma4_checked.item2 += e.lemma4.item2;
            summary.lemma4_checked.item3 += e.lemma4.item3;
            summary.fmap_checked += r.fmap.is_some() as u64;
            if let Some(c) = r.curve_class {
                *summary.curve_classes.entry(c).or_default() += 1;
            }
            if let Some(d) = &r.discrepancy {
                summary.discrepancies += 1;
                summary
                    .first_discrepancy
                    .get_or_insert_with(|| format!("{}: {d}", r.triple));
            }
            if !cfg.summary_only {
                match cfg.format {
                    Format::Jsonl => writeln!(
                        out,
                        "{}",
                        serde_json::to_string(r).expect("record serializes")
                    )?,
                    Format::Tsv => writeln!(out, "{}", tsv_row(r))?,
                }
            }
        }
        next += len;
    }
    write_summary(out, cfg.format, &summary)?;
    out.flush()?;
    Ok(summary)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub t1: String,
    pub t2: String,
    pub t2bar: String,
    pub t3: String,
    pub t3bar: String,
    pub t4: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroReport {
    pub total: u64,
    pub off_diagonal: u64,
}

/// Everything known about a single triple.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnosis {
    pub m: u32,
    pub triple: String,
    pub degenerate: bool,
    pub theta: ThetaReport,
    pub gamma: bool,
    pub perm_structured: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm_bruteforce: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_class: Option<CurveClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeros: Option<ZeroReport>,
}

/// Parses `a1`, `a2`, `a3` in their text encodings and diagnoses the triple.
pub fn run_diagnose(m: u32, a1: &str, a2: &str, a3: &str) -> Result<Diagnosis> {
    let ctx = TowerCtx::for_degree(m)?;
    let t = Triple::new(ctx.base().parse_hex(a1)?, ctx.parse(a2)?, ctx.parse(a3)?);
    diagnose(&ctx, &t)
}

pub fn diagnose(ctx: &TowerCtx, t: &Triple) -> Result<Diagnosis> {
    let th = theta_of(ctx, t);
    let f = |z| ctx.format(z);
    let degenerate = t.is_degenerate(ctx);
    let mut d = Diagnosis {
        m: ctx.m(),
        triple: t.encode(ctx),
        degenerate,
        theta: ThetaReport {
            t1: f(th.t1),
            t2: f(th.t2),
            t2bar: f(th.t2bar),
            t3: f(th.t3),
            t3bar: f(th.t3bar),
            t4: f(th.t4),
        },
        gamma: gamma_member(ctx, t),
        perm_structured: is_perm_structured(ctx, t),
        perm_bruteforce: (ctx.m() <= BRUTEFORCE_MAX_DEGREE).then(|| is_perm_bruteforce(ctx, t)),
        curve_class: None,
        factorization: None,
        product_verified: None,
        zeros: None,
    };
    if ctx.m() % 2 == 1 && !degenerate {
        let rep = classify(ctx, &th)?;
        d.curve_class = Some(rep.class);
        if rep.class.splits() {
            d.product_verified = Some(rep.product_verified);
            d.factorization = Some(rep.to_json(ctx));
        }
        if ctx.m() <= MAX_COUNT_DEGREE {
            let z = count_rational_zeros(ctx, &curve_coeffs(ctx, &th)?)?;
            d.zeros = Some(ZeroReport {
                total: z.total,
                off_diagonal: z.off_diagonal,
            });
        }
    } else if degenerate {
        d.curve_class = Some(CurveClass::ExcludedDegenerate);
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub m: u32,
    /// `floor(bound * 10^6)`.
    pub scaled: i128,
    pub bound: String,
    pub exceeds_two: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub d: u32,
    pub rows: Vec<BoundRow>,
    /// Smallest `m` from which the bound stays above 2.
    pub threshold: Option<u32>,
}

/// `2^m - 6 * 2^{m/2} - 19` for each `m` in the range.
pub fn run_bound_table(m_min: u32, m_max: u32) -> Result<BoundTable> {
    if m_min == 0 || m_min > m_max || m_max > 64 {
        return Err(HarnessError::Config(format!(
            "bad m range {m_min}..={m_max}"
        )));
    }
    let rows: Vec<BoundRow> = (m_min..=m_max)
        .map(|m| {
            let b = hasse_weil_lower_bound(4, m);
            BoundRow {
                m,
                scaled: b.scaled,
                bound: b.to_string(),
                exceeds_two: b.exceeds(2),
            }
        })
        .collect();
    let threshold =
        (1..=m_max).find(|&m| (m..=m_max).all(|k| hasse_weil_lower_bound(4, k).exceeds(2)));
    Ok(BoundTable {
        d: 4,
        rows,
        threshold,
    })
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m\tbound(d={})\t> 2", self.d)?;
        for r in &self.rows {
            let flag = if r.exceeds_two { "yes" } else { "no (vacuous)" };
            writeln!(f, "{}\t{}\t{}", r.m, r.bound, flag)?;
        }
        match self.threshold {
            Some(t) => writeln!(
                f,
                "# the bound exceeds 2 only from m = {t} on; a threshold of m >= 4 does not follow from it"
            )?,
            None => writeln!(f, "# the bound does not exceed 2 anywhere in this range")?,
        }
        writeln!(
            f,
            "# off-diagonal zeros are counted directly for m <= {MAX_COUNT_DEGREE}, independently of the bound"
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(RunConfig::exhaustive(3).validate().is_ok());
        assert!(RunConfig::exhaustive(6).validate().is_err());
        let mut c = RunConfig::sample(7, 10, 1);
        assert!(c.validate().is_ok());
        c.seed = None;
        assert!(c.validate().is_err());
        let mut c = RunConfig::exhaustive(1);
        c.jobs = Some(0);
        assert!(c.validate().is_err());
        assert!(RunConfig::exhaustive(0).validate().is_err());
    }

    #[test]
    fn check_parsing() {
        let c = parse_checks("theorem,curve").unwrap();
        assert_eq!(
            c.into_iter().collect::<Vec<_>>(),
            vec![Check::Theorem, Check::Curve]
        );
        assert!(parse_checks("theorem,nope").is_err());
    }

    #[test]
    fn enumeration_order() {
        let ctx = TowerCtx::for_degree(1).unwrap();
        assert_eq!(triple_at(&ctx, 0).encode(&ctx), "a1=0 a2=0,0 a3=0,0");
        assert_eq!(triple_at(&ctx, 1).encode(&ctx), "a1=0 a2=0,0 a3=1,0");
        assert_eq!(triple_at(&ctx, 4).encode(&ctx), "a1=0 a2=1,0 a3=0,0");
        assert_eq!(triple_at(&ctx, 16).encode(&ctx), "a1=1 a2=0,0 a3=0,0");
    }

    #[test]
    fn bruteforce_defaults() {
        assert_eq!(default_bruteforce(3), u64::MAX);
        assert_eq!(default_bruteforce(5), 1000);
        assert_eq!(default_bruteforce(7), 0);
    }

    #[test]
    fn exit_code_follows_discrepancies() {
        let mut s = run_verify(&RunConfig::exhaustive(1), &mut std::io::sink()).unwrap();
        assert_eq!(s.exit_code(), 0);
        s.discrepancies = 1;
        assert_eq!(s.exit_code(), 1);
    }

    #[test]
    fn bound_table_examples() {
        let t = run_bound_table(4, 10).unwrap();
        assert_eq!(t.rows[0].bound, "-27.000000");
        assert_eq!(t.rows[6].bound, "813.000000");
        assert_eq!(t.rows[3].bound, "41.117749");
        assert_eq!(t.threshold, Some(7));
        assert!(t.to_string().contains("only from m = 7"));
    }
}

//! Verification driver: selects jobs by kind, table and row, runs them
//! concurrently and assembles reports sorted by job id.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::carcano::{self, highest_weight_stability};
use crate::error::{domain, Error, Result};
use crate::fock::{self, GroupElement};
use crate::limits::{self, LabelSource};
use crate::linalg::{self, q, qr, Q};
use crate::nilpotent::{self, CentralFunctional, NilpotentAlgebra};
use crate::stabilizers::{self, TCase, ZaCase};
use crate::tables::{self, show_rank, HeisenbergField, Rank, TableId, TableRow};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Dimension invariants of every table row at two ranks.
    Tables,
    /// Multiplicity-free verdicts for the kac and jaw rows.
    Mf,
    /// Highest-weight stability and invariant nesting between the first two ranks.
    Stability,
    /// Pfaffian identities on the nilpotent algebras.
    Pfaffian,
    /// Truncated Fock model: group law, central character, orthogonality.
    Fock,
    /// Stage chains: composites and alignment.
    Chain,
    /// Multiplicity-free checks for the stabilizers of central functionals.
    Stabilizer,
    /// Centralizers and root vectors in sp(2).
    Centralizer,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Tables,
        CheckKind::Mf,
        CheckKind::Stability,
        CheckKind::Pfaffian,
        CheckKind::Fock,
        CheckKind::Chain,
        CheckKind::Stabilizer,
        CheckKind::Centralizer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Tables => "tables",
            CheckKind::Mf => "mf",
            CheckKind::Stability => "stability",
            CheckKind::Pfaffian => "pfaffian",
            CheckKind::Fock => "fock",
            CheckKind::Chain => "chain",
            CheckKind::Stabilizer => "stabilizer",
            CheckKind::Centralizer => "centralizer",
        }
    }

    pub fn parse(s: &str) -> Result<CheckKind> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check kind {s:?}")))
    }
}

/// Job selection. Jobs not attached to a table row (Heisenberg Pfaffians and
/// chains, the Fock model, sp(2) centralizers) run only when no table or row
/// is named.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filter {
    pub kinds: BTreeSet<CheckKind>,
    pub tables: Vec<TableId>,
    pub rows: Vec<String>,
    pub rank: Option<Rank>,
}

impl Filter {
    pub fn all() -> Self {
        Filter {
            kinds: CheckKind::ALL.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn kinds(kinds: &[CheckKind]) -> Self {
        Filter {
            kinds: kinds.iter().copied().collect(),
            ..Default::default()
        }
    }

    fn unscoped(&self) -> bool {
        self.tables.is_empty() && self.rows.is_empty()
    }

    fn table_ok(&self, t: TableId) -> bool {
        self.tables.is_empty() || self.tables.contains(&t)
    }

    fn row_ok(&self, row: &str) -> bool {
        self.rows.is_empty() || self.rows.iter().any(|r| r == row)
    }

    fn rows_of(&self, t: TableId) -> Result<Vec<TableRow>> {
        if !self.table_ok(t) {
            return Ok(vec![]);
        }
        Ok(tables::table(t)?
            .rows
            .into_iter()
            .filter(|r| self.row_ok(&r.id))
            .collect())
    }

    fn rank_for(&self, row: &TableRow) -> Result<Rank> {
        match &self.rank {
            Some(r) => Ok(r.clone()),
            None => row.minimal_rank(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Degree bound; each check falls back to its own default.
    pub dmax: Option<usize>,
    pub seed: u64,
    pub t_samples: Vec<Q>,
    pub cutoff: usize,
    pub block: usize,
    pub quad_order: usize,
    /// Random functionals per algebra in the Pfaffian checks.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dmax: None,
            seed: 0,
            t_samples: vec![qr(1, 2), q(1), q(2)],
            cutoff: 30,
            block: 5,
            quad_order: 8,
            samples: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(
        name: impl Into<String>,
        passed: bool,
        value: Option<String>,
        witness: impl FnOnce() -> String,
    ) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            value,
            witness: (!passed).then(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub toolkit_version: String,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub job_id: String,
    pub kind: CheckKind,
    pub inputs: BTreeMap<String, String>,
    pub passed: bool,
    pub results: Vec<CheckResult>,
    /// Set when the job could not run; the message is the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub provenance: Provenance,
}

/// Top-level JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutput {
    pub schema_version: u32,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

pub fn suite_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    let out = SuiteOutput {
        schema_version: SCHEMA_VERSION,
        passed: suite_passed(reports),
        reports: reports.to_vec(),
    };
    serde_json::to_string_pretty(&out).expect("reports serialize")
}

pub fn render_markdown(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(s, "# Verification report\n");
    let _ = writeln!(s, "{passed} of {} jobs passed.\n", reports.len());
    let _ = writeln!(s, "| job | result | details |");
    let _ = writeln!(s, "|---|---|---|");
    for r in reports {
        let details = match &r.error {
            Some(e) => format!("error: {e}"),
            None => r
                .results
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("; "),
        };
        let verdict = if r.passed { "pass" } else { "FAIL" };
        let _ = writeln!(
            s,
            "| {} | {verdict} | {} |",
            r.job_id,
            details.replace('|', "\\|")
        );
    }
    s
}

/// Decimal string with fixed precision.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.6e}")
}

#[derive(Clone, Debug)]
enum Job {
    Tables(TableRow),
    Mf(TableRow, Rank),
    Stability(TableRow),
    HeisenbergPfaffian(usize),
    AlgebraPfaffian(String, Box<NilpotentAlgebra>),
    Fock(usize, Q),
    HeisenbergChain,
    SemidirectChain(TableRow),
    Stabilizer(TableId, String, Rank, TCase),
    Centralizer,
}

impl Job {
    fn kind(&self) -> CheckKind {
        match self {
            Job::Tables(_) => CheckKind::Tables,
            Job::Mf(..) => CheckKind::Mf,
            Job::Stability(_) => CheckKind::Stability,
            Job::HeisenbergPfaffian(_) | Job::AlgebraPfaffian(..) => CheckKind::Pfaffian,
            Job::Fock(..) => CheckKind::Fock,
            Job::HeisenbergChain | Job::SemidirectChain(_) => CheckKind::Chain,
            Job::Stabilizer(..) => CheckKind::Stabilizer,
            Job::Centralizer => CheckKind::Centralizer,
        }
    }

    fn id(&self) -> String {
        let k = self.kind().name();
        match self {
            Job::Tables(r) | Job::Stability(r) | Job::SemidirectChain(r) => {
                format!("{k}/{}/{}", r.table, r.id)
            }
            Job::Mf(r, rank) => format!("{k}/{}/{}/{}", r.table, r.id, show_rank(rank)),
            Job::HeisenbergPfaffian(n) => format!("{k}/h({n};C)"),
            Job::AlgebraPfaffian(id, _) => format!("{k}/{id}"),
            Job::Fock(n, t) => format!("{k}/n={n}/t={t}"),
            Job::HeisenbergChain => format!("{k}/heisenberg"),
            Job::Stabilizer(t, r, rank, case) => format!("{k}/{t}/{r}/{}/{case}", show_rank(rank)),
            Job::Centralizer => format!("{k}/sp(2)"),
        }
    }
}

fn enumerate(filter: &Filter) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    let want = |k| filter.kinds.contains(&k);
    if want(CheckKind::Tables) {
        for t in TableId::ALL {
            jobs.extend(filter.rows_of(t)?.into_iter().map(Job::Tables));
        }
    }
    if want(CheckKind::Mf) {
        for t in [TableId::Kac, TableId::Jaw] {
            for row in filter.rows_of(t)?.into_iter().filter(|r| r.has_spec()) {
                let rank = filter.rank_for(&row)?;
                jobs.push(Job::Mf(row, rank));
            }
        }
    }
    if want(CheckKind::Stability) {
        jobs.extend(
            filter
                .rows_of(TableId::Jaw)?
                .into_iter()
                .map(Job::Stability),
        );
    }
    if want(CheckKind::Pfaffian) {
        if filter.unscoped() {
            jobs.extend((1..=4).map(Job::HeisenbergPfaffian));
            jobs.push(Job::AlgebraPfaffian(
                "h(1;O)".into(),
                Box::new(NilpotentAlgebra::heisenberg(HeisenbergField::O, 1)?),
            ));
        }
        for t in [TableId::Ipms, TableId::IndIpms] {
            for row in filter
                .rows_of(t)?
                .into_iter()
                .filter(|r| !r.algebra.is_empty())
            {
                let rank = filter.rank_for(&row)?;
                let alg = nilpotent::table_algebra(&row, &rank)?;
                jobs.push(Job::AlgebraPfaffian(
                    format!("{t}/{}/{}", row.id, show_rank(&rank)),
                    Box::new(alg),
                ));
            }
        }
    }
    if want(CheckKind::Fock) && filter.unscoped() {
        for n in 1..=2 {
            for t in [qr(1, 2), q(1), q(2), q(-1)] {
                jobs.push(Job::Fock(n, t));
            }
        }
    }
    if want(CheckKind::Chain) {
        if filter.unscoped() {
            jobs.push(Job::HeisenbergChain);
        }
        jobs.extend(
            filter
                .rows_of(TableId::Jaw)?
                .into_iter()
                .map(Job::SemidirectChain),
        );
    }
    if want(CheckKind::Stabilizer) {
        for (t, r) in stabilizers::STABILIZER_ROWS {
            if !filter.table_ok(t) || !filter.row_ok(r) {
                continue;
            }
            let row = tables::table(t)?.row(r)?.clone();
            let rank = filter.rank_for(&row)?;
            let cases = if r == "18" {
                [ZaCase::Equal, ZaCase::Regular]
                    .map(|c| {
                        let (a, b) = c.sample();
                        TCase::Diagonal(a, b)
                    })
                    .to_vec()
            } else {
                vec![TCase::Generic]
            };
            for c in cases {
                jobs.push(Job::Stabilizer(t, r.to_string(), rank.clone(), c));
            }
        }
    }
    if want(CheckKind::Centralizer) && filter.unscoped() {
        jobs.push(Job::Centralizer);
    }
    Ok(jobs)
}

/// Runs every selected job; per-job errors are captured in the reports.
pub fn run_suite(filter: &Filter, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let jobs = enumerate(filter)?;
    let mut reports: Vec<VerificationReport> =
        jobs.par_iter().map(|j| run_job(j, config)).collect();
    reports.sort_by(|a, b| a.job_id.cmp(&b.job_id));
    Ok(reports)
}

fn job_seed(seed: u64, id: &str) -> u64 {
    // FNV-1a, stable across platforms and runs
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64 ^ seed, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

fn run_job(job: &Job, config: &SuiteConfig) -> VerificationReport {
    let id = job.id();
    let mut inputs = BTreeMap::new();
    let outcome = execute(job, config, job_seed(config.seed, &id), &mut inputs);
    let (results, error) = match outcome {
        Ok(r) => (r, None),
        Err(e) => (vec![], Some(e.to_string())),
    };
    VerificationReport {
        passed: error.is_none() && results.iter().all(|r| r.passed),
        job_id: id,
        kind: job.kind(),
        inputs,
        results,
        error,
        provenance: Provenance {
            toolkit_version: env!("CARGO_PKG_VERSION").into(),
            seed: config.seed,
        },
    }
}

fn show_q_list(ts: &[Q]) -> String {
    ts.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn execute(
    job: &Job,
    config: &SuiteConfig,
    seed: u64,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match job {
        Job::Tables(row) => {
            let ranks = row.ranks(2)?;
            inputs.insert(
                "ranks".into(),
                ranks.iter().map(show_rank).collect::<Vec<_>>().join(";"),
            );
            Ok(ranks
                .iter()
                .map(|r| {
                    let e = row.check_dimensions(r);
                    CheckResult::new(
                        format!("dimensions at {}", show_rank(r)),
                        e.is_ok(),
                        None,
                        || e.unwrap_err().to_string(),
                    )
                })
                .collect())
        }
        Job::Mf(row, rank) => {
            let dmax = config.dmax.unwrap_or_else(|| row.dmax());
            inputs.insert("rank".into(), show_rank(rank));
            inputs.insert("dmax".into(), dmax.to_string());
            let r = carcano::is_multiplicity_free(&row.spec(rank)?, dmax)?;
            let w = r.witness.clone();
            Ok(vec![CheckResult::new(
                "multiplicity free",
                r.is_multiplicity_free(),
                Some(r.certificate()),
                || {
                    let w = w.expect("violation has a witness");
                    format!(
                        "label {:?} in degrees {:?}, multiplicity {}",
                        w.label.0, w.degrees, w.multiplicity
                    )
                },
            )])
        }
        Job::Stability(row) => {
            let dmax = config.dmax.unwrap_or(3).min(3);
            let ranks = row.ranks(2)?;
            inputs.insert(
                "ranks".into(),
                ranks.iter().map(show_rank).collect::<Vec<_>>().join(";"),
            );
            inputs.insert("dmax".into(), dmax.to_string());
            let (small, large) = (row.spec(&ranks[0])?, row.spec(&ranks[1])?);
            let mut out = Vec::new();
            for d in 0..=dmax {
                let r = highest_weight_stability(&small, &large, d, true)?;
                let failing = r.failing_labels();
                out.push(CheckResult::new(
                    format!("degree {d}"),
                    failing.is_empty(),
                    Some(format!("{} labels", r.labels.len())),
                    || {
                        let ls: Vec<String> =
                            failing.iter().map(|w| format!("{:?}", w.0)).collect();
                        format!("labels failing stability or nesting: {}", ls.join(" "))
                    },
                ));
            }
            Ok(out)
        }
        Job::HeisenbergPfaffian(n) => {
            let alg = NilpotentAlgebra::heisenberg(HeisenbergField::C, *n)?;
            let mut ts = config.t_samples.clone();
            ts.extend((0..config.samples.min(10)).map(|_| nonzero_rational(&mut rng)));
            inputs.insert("t".into(), show_q_list(&ts));
            let bad: Vec<&Q> = ts
                .iter()
                .filter(|t| {
                    let pf = nilpotent::pfaffian(
                        &nilpotent::b_form(&alg, &CentralFunctional::new(vec![(*t).clone()]))
                            .unwrap(),
                    );
                    pf != linalg::pow(t, *n as u32) * Q::from_integer(alg.pf_sign.into())
                })
                .collect();
            Ok(vec![CheckResult::new(
                "Pf(b_t) = sign · t^n",
                bad.is_empty(),
                Some(format!("sign {}", alg.pf_sign)),
                || format!("fails at t = {}", bad[0]),
            )])
        }
        Job::AlgebraPfaffian(_, alg) => {
            inputs.insert("algebra".into(), alg.name.clone());
            inputs.insert("samples".into(), config.samples.to_string());
            let mut out = Vec::new();
            let mut bad = None;
            for _ in 0..config.samples {
                let t = CentralFunctional::new(nilpotent::random_rational(&mut rng, alg.dim_z));
                let f = nilpotent::b_form(alg, &t)?;
                let pf = nilpotent::pfaffian(&f);
                if &pf * &pf != f.det() {
                    bad.get_or_insert(t);
                }
            }
            out.push(CheckResult::new("Pf² = det", bad.is_none(), None, || {
                format!("t = {}", show_q_list(&bad.unwrap().0))
            }));
            let g = nilpotent::generic_set_witness(alg, config.samples, seed)?;
            out.push(CheckResult::new(
                "generic set nonempty",
                g.nonzero > 0,
                Some(format!("{}/{} nonzero", g.nonzero, g.trials)),
                || "Pf(b_t) vanished at every sample".into(),
            ));
            if alg.split.is_some() {
                let t = CentralFunctional::new(nilpotent::random_rational(&mut rng, alg.dim_z));
                let ok = nilpotent::pfaffian_split_check(alg, &t, config.samples.min(10), seed)?;
                out.push(CheckResult::new("Pf independent of t''", ok, None, || {
                    format!("varies with t'' at t = {}", show_q_list(&t.0))
                }));
            }
            Ok(out)
        }
        Job::Fock(n, t) => fock_job(*n, linalg::to_f64(t), config, &mut rng, inputs),
        Job::HeisenbergChain => {
            inputs.insert("t".into(), show_q_list(&config.t_samples));
            chain_checks(&limits::build_heisenberg_chain(4, &config.t_samples)?)
        }
        Job::SemidirectChain(row) => {
            let dmax = config.dmax.unwrap_or(2).min(3);
            let ranks = row.ranks(3)?;
            inputs.insert(
                "ranks".into(),
                ranks.iter().map(show_rank).collect::<Vec<_>>().join(";"),
            );
            inputs.insert("t".into(), show_q_list(&config.t_samples));
            inputs.insert("dmax".into(), dmax.to_string());
            chain_checks(&limits::build_semidirect_chain(
                row,
                &ranks,
                &config.t_samples,
                &LabelSource::Polynomial { dmax },
            )?)
        }
        Job::Stabilizer(t, r, rank, case) => {
            let dmax = config.dmax.unwrap_or(4);
            inputs.insert("rank".into(), show_rank(rank));
            inputs.insert("case".into(), case.to_string());
            inputs.insert("dmax".into(), dmax.to_string());
            let rep = stabilizers::stabilizer_mf_check(*t, r, rank, case, dmax)?;
            inputs.insert("group".into(), rep.group.clone());
            let w = rep.witness.clone();
            let mut out = vec![CheckResult::new(
                "multiplicity free",
                rep.multiplicity_free,
                None,
                || format!("{w:?}"),
            )];
            if let Some(m) = rep.pattern_matches {
                out.push(CheckResult::new("p+2q pattern", m, None, || {
                    "per-degree terms differ".into()
                }));
            }
            Ok(out)
        }
        Job::Centralizer => {
            let alg = stabilizers::sp2();
            let expected = [
                (4, "sp(1)⊕u(1)"),
                (4, "sp(1)⊕u(1)"),
                (2, "cartan"),
                (4, "u(2)"),
                (4, "u(2)"),
            ];
            let mut out = Vec::new();
            for (case, (dim, tag)) in ZaCase::ALL.into_iter().zip(expected) {
                let (a1, a2) = case.sample();
                let c = stabilizers::centralizer(&alg, &stabilizers::z_a(&a1, &a2))?;
                let ok = c.dimension == dim && c.tag == tag;
                out.push(CheckResult::new(
                    format!("{case:?}"),
                    ok,
                    Some(format!("{} {}", c.dimension, c.tag)),
                    || format!("expected {dim} {tag}"),
                ));
            }
            for r in stabilizers::verify_root_vectors_sp2().checks {
                let m = r.measured.clone();
                out.push(CheckResult::new(
                    r.name,
                    r.ok,
                    m.as_ref().map(|m| m.join(",")),
                    || {
                        format!(
                            "expected a positive multiple of {:?}, measured {m:?}",
                            r.expected
                        )
                    },
                ));
            }
            Ok(out)
        }
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let t = nilpotent::random_rational(rng, 1).remove(0);
        if !t.is_zero() {
            return t;
        }
    }
}

fn chain_checks(chain: &limits::StageChain) -> Result<Vec<CheckResult>> {
    let a = limits::check_limit_aligned(chain);
    let mut out = vec![CheckResult::new("limit aligned", a.aligned, None, || {
        a.witness.clone().unwrap_or_default()
    })];
    let k = chain.stages.len();
    let mut bad = None;
    for i in 0..k {
        for j in i + 1..k {
            if chain.compose(i, j)? != chain.direct(i, j)? {
                bad.get_or_insert((i, j));
            }
        }
    }
    out.push(CheckResult::new(
        "composite injections",
        bad.is_none(),
        Some(format!("{k} stages")),
        || format!("stages {:?}", bad.unwrap()),
    ));
    Ok(out)
}

fn fock_job(
    n: usize,
    t: f64,
    config: &SuiteConfig,
    rng: &mut ChaCha8Rng,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Vec<CheckResult>> {
    inputs.insert("cutoff".into(), config.cutoff.to_string());
    inputs.insert("block".into(), config.block.to_string());
    inputs.insert("quad_order".into(), config.quad_order.to_string());
    let mut out = Vec::new();
    let element = |rng: &mut ChaCha8Rng| {
        let v: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::from_polar(
                    rng.gen_range(0.0..1.0) / (n as f64).sqrt(),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        GroupElement::new(rng.gen_range(-1.0..1.0), v)
    };
    let (a, b) = (element(rng), element(rng));
    if n == 1 {
        let res = fock::verify_group_law(t, &a, &b, config.cutoff, config.block)?;
        out.push(CheckResult::new(
            "group law",
            res < 1e-8,
            Some(fmt_f64(res)),
            || format!("residual {} at cutoff {}", fmt_f64(res), config.cutoff),
        ));
    }
    let z = 0.7;
    let basis = fock::FockBasis::new(n, 6);
    let op = fock::operator_matrix(t, &GroupElement::central(n, z), &basis)?;
    let scalar = Complex64::new(0.0, -t * z).exp();
    let mut dev: f64 = 0.0;
    for (i, row) in op.matrix.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let e = if i == j { scalar } else { Complex64::zero() };
            dev = dev.max((x - e).norm());
        }
    }
    out.push(CheckResult::new(
        "central character",
        dev < 1e-13,
        Some(fmt_f64(dev)),
        || format!("deviation {}", fmt_f64(dev)),
    ));
    let idx: Vec<Vec<usize>> = fock::FockBasis::new(n, 2).index;
    let funcs: Vec<fock::IndexPair> = idx
        .iter()
        .flat_map(|l| idx.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    let g = fock::orthogonality_gram(&funcs, t, config.quad_order)?;
    let expect = t.abs().powi(-(n as i32));
    let mut err: f64 = 0.0;
    for (i, row) in g.gram.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let e = if i == j { expect } else { 0.0 };
            err = err.max((x - Complex64::new(e, 0.0)).norm());
        }
    }
    out.push(CheckResult::new(
        "orthogonality",
        err < 1e-6 && g.converged,
        Some(format!("{} at order {}", fmt_f64(err), g.order)),
        || {
            format!(
                "max deviation {} (converged: {})",
                fmt_f64(err),
                g.converged
            )
        },
    ));
    Ok(out)
}

/// Parses `n=3,m=2`.
pub fn parse_rank(s: &str) -> Result<Rank> {
    let mut r = Rank::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("rank entry {part:?} is not key=value")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("rank value {v:?}")))?;
        r.insert(k.trim().to_string(), v);
    }
    Ok(r)
}

/// Parses a comma-separated list of rationals such as `1/2,1,-3`.
pub fn parse_rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<Q>()
                .map_err(|_| Error::Parse(format!("rational {p:?}")))
        })
        .collect()
}

/// Ensures the parsed values are nonzero.
pub fn nonzero(ts: Vec<Q>) -> Result<Vec<Q>> {
    if ts.iter().any(Zero::is_zero) {
        return domain("t must be nonzero");
    }
    Ok(ts)
}

//! Finite direct systems of labeled stages: injections with exact scale
//! factors, limit alignment and the nesting of isotypic invariants.
//!
//! A stage lists the primary components it carries, keyed by a central
//! parameter `t` and optionally a highest weight `λ`, each with its
//! Plancherel weight. An injection maps every label of one stage to a label
//! of the next and rescales by a positive factor whose square is rational.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::carcano::{poly, DegreeSpace, Embedding, GroupSpec};
use crate::error::{domain, unsupported, Error, Result};
use crate::linalg::{self, Matrix, Q};
use crate::tables::{show_rank, Rank, TableRow};
use crate::weights::Weight;

fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Discriminating datum of a primary component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ComponentKey {
    #[serde(serialize_with = "ser_opt_q")]
    pub t: Option<Q>,
    pub lambda: Option<Weight>,
}

impl ComponentKey {
    pub fn t(t: Q) -> Self {
        ComponentKey {
            t: Some(t),
            lambda: None,
        }
    }

    pub fn with_lambda(t: Q, lambda: Weight) -> Self {
        ComponentKey {
            t: Some(t),
            lambda: Some(lambda),
        }
    }
}

impl std::fmt::Display for ComponentKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.t, &self.lambda) {
            (Some(t), Some(l)) => write!(f, "(t={t}, λ={l})"),
            (Some(t), None) => write!(f, "(t={t})"),
            (None, Some(l)) => write!(f, "(λ={l})"),
            (None, None) => write!(f, "()"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageEntry {
    pub key: ComponentKey,
    /// Plancherel weight `|Pf(b_t)| · dim κ_λ`.
    #[serde(serialize_with = "ser_q")]
    pub density: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub name: String,
    pub entries: Vec<StageEntry>,
}

impl Stage {
    pub fn keys(&self) -> BTreeSet<&ComponentKey> {
        self.entries.iter().map(|e| &e.key).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabelMap {
    pub source: ComponentKey,
    pub target: ComponentKey,
    /// Square of the positive scale factor.
    #[serde(serialize_with = "ser_q")]
    pub scale_sq: Q,
}

impl LabelMap {
    pub fn scale(&self) -> f64 {
        linalg::to_f64(&self.scale_sq).sqrt()
    }
}

/// Injection from stage `from` to stage `from + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Injection {
    pub from: usize,
    pub maps: Vec<LabelMap>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageChain {
    pub name: String,
    pub stages: Vec<Stage>,
    pub injections: Vec<Injection>,
    #[serde(skip)]
    direct: DirectRule,
}

/// Closed-form injection between any two stages, used to cross-check composites.
#[derive(Clone, Debug, PartialEq)]
enum DirectRule {
    None,
    /// `|t|^{n_i − n_j}` with `n` the Heisenberg rank of each stage.
    Heisenberg(Vec<usize>),
    /// `|t|^{n_i − n_j} · dim_i(λ) / dim_j(λ′)`: the ratio of Plancherel weights.
    Semidirect,
}

fn t_power(t: &Q, e: i64) -> Q {
    let a = t.abs();
    if e >= 0 {
        linalg::pow(&a, e as u32)
    } else {
        linalg::pow(&a.recip(), (-e) as u32)
    }
}

fn check_samples(t_samples: &[Q]) -> Result<()> {
    if t_samples.is_empty() {
        return domain("at least one t sample is needed");
    }
    if t_samples.iter().any(Zero::is_zero) {
        return domain("t samples must be nonzero");
    }
    if t_samples.iter().collect::<BTreeSet<_>>().len() != t_samples.len() {
        return domain("t samples must be distinct");
    }
    Ok(())
}

/// Stages `H_1, …, H_{n_max}` with labels `t`, density `|t|^n` and
/// injections `t ↦ t` scaled by `|t|^{(n − m)/2}`.
pub fn build_heisenberg_chain(n_max: usize, t_samples: &[Q]) -> Result<StageChain> {
    if n_max < 2 {
        return domain("a chain needs n_max >= 2");
    }
    check_samples(t_samples)?;
    let stages = (1..=n_max)
        .map(|n| Stage {
            name: format!("H_{n}"),
            entries: t_samples
                .iter()
                .map(|t| StageEntry {
                    key: ComponentKey::t(t.clone()),
                    density: t_power(t, n as i64),
                })
                .collect(),
        })
        .collect();
    let injections = (0..n_max - 1)
        .map(|i| Injection {
            from: i,
            maps: t_samples
                .iter()
                .map(|t| LabelMap {
                    source: ComponentKey::t(t.clone()),
                    target: ComponentKey::t(t.clone()),
                    scale_sq: t_power(t, -1),
                })
                .collect(),
        })
        .collect();
    Ok(StageChain {
        name: format!("Heisenberg H_1 .. H_{n_max}"),
        stages,
        injections,
        direct: DirectRule::Heisenberg((1..=n_max).collect()),
    })
}

/// Which highest weights label the components of a semidirect stage.
#[derive(Clone, Debug, PartialEq)]
pub enum LabelSource {
    /// Every highest weight of `S^d(v*)`, `d ≤ dmax`, at the first rank,
    /// carried to later ranks by the parabolic embedding.
    Polynomial { dmax: usize },
    /// Given highest weights in first-rank coordinates.
    Explicit(Vec<Weight>),
}

/// Highest weights at a stage, in unnormalized coordinates, over degrees `0..=dmax`.
fn stage_labels(spec: &GroupSpec, dmax: usize) -> Result<BTreeSet<Weight>> {
    let basis = spec.basis()?;
    let mut out = BTreeSet::new();
    for d in 0..=dmax {
        let space = DegreeSpace::new(&basis, d);
        out.extend(poly::highest_weights(&spec.group, &basis, &space).into_keys());
    }
    Ok(out)
}

/// Stages of a table row at `ranks` with labels `(t, λ)`; `λ` at each rank
/// is the image of a first-rank label under the parabolic embeddings, and
/// the injection scale is `|t|^{(n−m)/2} (dim κ_{n,λ} / dim κ_{m,λ})^{1/2}`
/// with `n` the complex dimension of `v`.
pub fn build_semidirect_chain(
    row: &TableRow,
    ranks: &[Rank],
    t_samples: &[Q],
    labels: &LabelSource,
) -> Result<StageChain> {
    if ranks.len() < 2 {
        return domain("a chain needs at least two ranks");
    }
    check_samples(t_samples)?;
    let specs: Vec<GroupSpec> = ranks.iter().map(|r| row.spec(r)).collect::<Result<_>>()?;
    let bases = specs
        .iter()
        .map(|s| s.basis())
        .collect::<Result<Vec<_>>>()?;
    let heis: Vec<usize> = specs
        .iter()
        .map(|s| s.dim().map(|d| d.try_into().unwrap_or(usize::MAX)))
        .collect::<Result<_>>()?;
    let first: Vec<Weight> = match labels {
        LabelSource::Polynomial { dmax } => stage_labels(&specs[0], *dmax)?.into_iter().collect(),
        LabelSource::Explicit(ws) => ws.clone(),
    };
    let mut per_stage: Vec<Vec<Weight>> = vec![first];
    for i in 0..specs.len() - 1 {
        let emb = Embedding::build(
            &specs[i].group,
            &bases[i],
            &specs[i + 1].group,
            &bases[i + 1],
        )?;
        let next: Vec<Weight> = per_stage[i].iter().map(|w| emb.weight(w)).collect();
        for (w, big) in per_stage[i].iter().zip(&next) {
            if !specs[i + 1].group.is_dominant(big) {
                return Err(Error::Domain(format!(
                    "parabolic correspondence fails: label {w} of {} maps to non-dominant {big} of {}",
                    specs[i].name(),
                    specs[i + 1].name()
                )));
            }
        }
        per_stage.push(next);
    }
    let dim = |i: usize, w: &Weight| -> Result<Q> {
        let g = &specs[i].group;
        Ok(Q::from_integer(g.weyl_dim(&g.normalized(w.clone()))?))
    };
    let mut stages = Vec::new();
    for (i, ws) in per_stage.iter().enumerate() {
        let mut entries = Vec::new();
        for t in t_samples {
            for w in ws {
                entries.push(StageEntry {
                    key: ComponentKey::with_lambda(t.clone(), w.clone()),
                    density: t_power(t, heis[i] as i64) * dim(i, w)?,
                });
            }
        }
        stages.push(Stage {
            name: format!(
                "{}:{} [{}] {}",
                row.table,
                row.id,
                show_rank(&ranks[i]),
                specs[i].name()
            ),
            entries,
        });
    }
    let mut injections = Vec::new();
    for i in 0..specs.len() - 1 {
        let mut maps = Vec::new();
        for t in t_samples {
            for (w, big) in per_stage[i].iter().zip(&per_stage[i + 1]) {
                maps.push(LabelMap {
                    source: ComponentKey::with_lambda(t.clone(), w.clone()),
                    target: ComponentKey::with_lambda(t.clone(), big.clone()),
                    scale_sq: t_power(t, heis[i] as i64 - heis[i + 1] as i64) * dim(i, w)?
                        / dim(i + 1, big)?,
                });
            }
        }
        injections.push(Injection { from: i, maps });
    }
    Ok(StageChain {
        name: format!("{}:{} semidirect chain", row.table, row.id),
        stages,
        injections,
        direct: DirectRule::Semidirect,
    })
}

impl StageChain {
    /// A chain from explicit stages and injections, without a closed-form rule.
    pub fn from_parts(name: &str, stages: Vec<Stage>, injections: Vec<Injection>) -> Result<Self> {
        for (k, inj) in injections.iter().enumerate() {
            if inj.from != k || k + 1 >= stages.len() {
                return domain("injections must connect consecutive stages in order");
            }
            if inj.maps.iter().any(|m| !m.scale_sq.is_positive()) {
                return domain("scale factors must be positive");
            }
        }
        if injections.len() + 1 != stages.len() {
            return domain("one injection per consecutive pair of stages");
        }
        Ok(StageChain {
            name: name.into(),
            stages,
            injections,
            direct: DirectRule::None,
        })
    }

    /// Composite of the injections from stage `i` to stage `j > i`.
    pub fn compose(&self, i: usize, j: usize) -> Result<Vec<LabelMap>> {
        if i >= j || j >= self.stages.len() {
            return domain(format!("no composite from stage {i} to stage {j}"));
        }
        let mut current: Vec<LabelMap> = self.injections[i].maps.clone();
        for inj in &self.injections[i + 1..j] {
            current = current
                .into_iter()
                .map(|m| {
                    let next = inj
                        .maps
                        .iter()
                        .find(|n| n.source == m.target)
                        .ok_or_else(|| {
                            Error::Domain(format!(
                                "label {} has no image at stage {}",
                                m.target,
                                inj.from + 1
                            ))
                        })?;
                    Ok(LabelMap {
                        source: m.source,
                        target: next.target.clone(),
                        scale_sq: m.scale_sq * &next.scale_sq,
                    })
                })
                .collect::<Result<_>>()?;
        }
        Ok(current)
    }

    /// The closed-form injection from stage `i` to stage `j`.
    pub fn direct(&self, i: usize, j: usize) -> Result<Vec<LabelMap>> {
        let composite = self.compose(i, j)?;
        match &self.direct {
            DirectRule::None => unsupported("chain has no closed-form injection"),
            DirectRule::Heisenberg(ns) => Ok(composite
                .iter()
                .map(|m| {
                    let t = m.source.t.clone().expect("heisenberg labels carry t");
                    LabelMap {
                        source: m.source.clone(),
                        target: m.source.clone(),
                        scale_sq: t_power(&t, ns[i] as i64 - ns[j] as i64),
                    }
                })
                .collect()),
            DirectRule::Semidirect => composite
                .iter()
                .map(|m| {
                    let density = |stage: usize, key: &ComponentKey| -> Result<Q> {
                        self.stages[stage]
                            .entries
                            .iter()
                            .find(|e| &e.key == key)
                            .map(|e| e.density.clone())
                            .ok_or_else(|| {
                                Error::Domain(format!("label {key} missing at stage {stage}"))
                            })
                    };
                    let ratio = density(i, &m.source)? / density(j, &m.target)?;
                    Ok(LabelMap {
                        source: m.source.clone(),
                        target: m.target.clone(),
                        scale_sq: ratio,
                    })
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlignmentReport {
    pub aligned: bool,
    /// Offending stage and label.
    pub witness: Option<String>,
}

/// Definition of alignment at the level of labels: every injection is a
/// function on the labels of its source stage, lands in the labels of its
/// target stage, keeps `t`, is injective, and has positive scales.
pub fn check_limit_aligned(chain: &StageChain) -> AlignmentReport {
    let fail = |w: String| AlignmentReport {
        aligned: false,
        witness: Some(w),
    };
    for inj in &chain.injections {
        let (src, dst) = (&chain.stages[inj.from], &chain.stages[inj.from + 1]);
        let mut count: BTreeMap<&ComponentKey, usize> =
            src.keys().into_iter().map(|k| (k, 0)).collect();
        let mut targets = BTreeSet::new();
        let dst_keys = dst.keys();
        for m in &inj.maps {
            match count.get_mut(&m.source) {
                Some(c) => *c += 1,
                None => {
                    return fail(format!(
                        "stage {}: map from unknown label {}",
                        inj.from, m.source
                    ))
                }
            }
            if !dst_keys.contains(&m.target) {
                return fail(format!(
                    "stage {}: label {} maps to missing {}",
                    inj.from, m.source, m.target
                ));
            }
            if m.source.t != m.target.t {
                return fail(format!(
                    "stage {}: label {} changes t to {}",
                    inj.from, m.source, m.target
                ));
            }
            if !m.scale_sq.is_positive() {
                return fail(format!(
                    "stage {}: label {} has nonpositive scale",
                    inj.from, m.source
                ));
            }
            if !targets.insert(&m.target) {
                return fail(format!(
                    "stage {}: two labels map to {}",
                    inj.from, m.target
                ));
            }
        }
        for (k, c) in count {
            if c != 1 {
                return fail(format!("stage {}: label {k} has {c} images", inj.from));
            }
        }
    }
    AlignmentReport {
        aligned: true,
        witness: None,
    }
}

/// Hypotheses of the multiplicity-free limit criterion: every stage is
/// multiplicity free and the chain is aligned.
pub fn multiplicity_free_verdict(chain: &StageChain, per_stage_mf: &[bool]) -> Result<bool> {
    if per_stage_mf.len() != chain.stages.len() {
        return domain("one multiplicity-free flag per stage");
    }
    Ok(per_stage_mf.iter().all(|&b| b) && check_limit_aligned(chain).aligned)
}

/// `Σ x_i ⊗ x_i*` over an orthonormal basis of a `λ`-isotypic polynomial
/// space, stored as its orthogonal projector on each weight space.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantVector {
    pub label: Weight,
    pub degree: usize,
    pub blocks: BTreeMap<Weight, Matrix>,
    /// Squared monomial norms per weight space, the pairing the projector is
    /// self-adjoint for.
    pub norms: BTreeMap<Weight, Vec<Q>>,
}

impl InvariantVector {
    /// `q`, the dimension of the isotypic space.
    pub fn rank(&self) -> Q {
        self.blocks
            .values()
            .map(|p| (0..p.len()).map(|i| p[i][i].clone()).sum::<Q>())
            .sum()
    }

    /// `G P` is symmetric on every block.
    pub fn is_self_adjoint(&self) -> bool {
        self.blocks.iter().all(|(w, p)| {
            let g = &self.norms[w];
            (0..p.len()).all(|i| (0..p.len()).all(|j| &g[i] * &p[i][j] == &g[j] * &p[j][i]))
        })
    }
}

/// The invariant of the isotypic component of highest weight `label` in
/// degree `d`; `None` when `label` does not occur.
pub fn invariant_vector(
    spec: &GroupSpec,
    d: usize,
    label: &Weight,
) -> Result<Option<InvariantVector>> {
    let basis = spec.basis()?;
    let space = DegreeSpace::new(&basis, d);
    let hw = poly::highest_weight_kernel(&spec.group, &basis, &space, label);
    match hw.len() {
        0 => return Ok(None),
        1 => {}
        k => return unsupported(format!("label {label} has multiplicity {k} in degree {d}")),
    }
    let targets: Vec<Weight> = space.by_weight.keys().cloned().collect();
    let blocks = poly::isotypic_projectors(&spec.group, &basis, &space, label, &hw[0], &targets)?;
    let norms = targets
        .iter()
        .map(|w| {
            (
                w.clone(),
                space
                    .monomials(w)
                    .iter()
                    .map(|m| poly::monomial_norm(&basis, m))
                    .collect(),
            )
        })
        .collect();
    Ok(Some(InvariantVector {
        label: label.clone(),
        degree: d,
        blocks: blocks.into_iter().collect(),
        norms,
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NestingReport {
    pub row: String,
    pub small: String,
    pub large: String,
    pub degree: usize,
    pub label: Weight,
    /// `λ ∉ X_{n,d}`: nothing to check.
    pub vacuous: bool,
    #[serde(serialize_with = "ser_opt_q")]
    pub q_small: Option<Q>,
    #[serde(serialize_with = "ser_opt_q")]
    pub q_large: Option<Q>,
    /// The compressed large-stage invariant equals the small-stage one.
    pub holds: bool,
}

/// Compresses the large-rank invariant to polynomials in the small-rank
/// variables and compares it with the small-rank invariant, weight space by
/// weight space.
pub fn invariant_nesting_check(
    row: &TableRow,
    small: &Rank,
    large: &Rank,
    label: &Weight,
    d: usize,
) -> Result<NestingReport> {
    let (ss, ls) = (row.spec(small)?, row.spec(large)?);
    let (sb, lb) = (ss.basis()?, ls.basis()?);
    let emb = Embedding::build(&ss.group, &sb, &ls.group, &lb)?;
    let mut report = NestingReport {
        row: format!("{}:{}", row.table, row.id),
        small: show_rank(small),
        large: show_rank(large),
        degree: d,
        label: label.clone(),
        vacuous: true,
        q_small: None,
        q_large: None,
        holds: true,
    };
    let Some(vs) = invariant_vector(&ss, d, label)? else {
        return Ok(report);
    };
    report.vacuous = false;
    report.q_small = Some(vs.rank());
    let big = emb.weight(label);
    let Some(vl) = invariant_vector(&ls, d, &big)? else {
        report.holds = false;
        return Ok(report);
    };
    report.q_large = Some(vl.rank());
    let small_space = DegreeSpace::new(&sb, d);
    let large_space = DegreeSpace::new(&lb, d);
    report.holds = vs.blocks.iter().all(|(w, ps)| {
        let pos: Vec<usize> = small_space
            .monomials(w)
            .iter()
            .map(|m| {
                large_space
                    .position(&emb.monomial(m))
                    .expect("embedded monomial exists")
            })
            .collect();
        let pl = &vl.blocks[&emb.weight(w)];
        pos.iter()
            .enumerate()
            .all(|(i, &a)| pos.iter().enumerate().all(|(j, &b)| ps[i][j] == pl[a][b]))
    });
    Ok(report)
}

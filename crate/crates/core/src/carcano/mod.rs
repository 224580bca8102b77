//! Multiplicity-free certification of compact group actions on polynomial rings.
//!
//! A [`GroupSpec`] is a product group with an action on a complex vector
//! space `v`. The polynomial ring decomposes degree by degree as
//! `S^d(v*)`; the action is multiplicity free when no irreducible label
//! repeats anywhere in degrees `0..=dmax`. Verdicts are bounded-degree
//! certificates.

pub mod action;
pub mod poly;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::linalg::{self, Q};
use crate::repcalc::{self, Decomposition, WeightMultiset};
use crate::weights::{FactorKind, Reductive, Weight};

pub use crate::stabilizers::stabilizer_mf_check;
pub use action::{ActionBasis, ActionKind, RepAction};
pub use poly::{DegreeSpace, Embedding, Monomial, Polynomial};

/// Table and row a spec was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRow {
    pub table: String,
    pub row: String,
}

/// A compact group with its action on `v`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub kinds: Vec<FactorKind>,
    /// Pairs of unitary factors replaced by their determinant-one subgroup.
    pub joint_special: Vec<(usize, usize)>,
    pub group: Arc<Reductive>,
    pub action: RepAction,
    pub source: Option<SourceRow>,
}

impl GroupSpec {
    pub fn new(
        kinds: &[FactorKind],
        joint_special: &[(usize, usize)],
        action: RepAction,
    ) -> Result<Self> {
        let group = Arc::new(Reductive::new(kinds, joint_special)?);
        let spec = GroupSpec {
            kinds: kinds.to_vec(),
            joint_special: joint_special.to_vec(),
            group,
            action,
            source: None,
        };
        spec.weights()?;
        Ok(spec)
    }

    pub fn with_source(mut self, table: &str, row: &str) -> Self {
        self.source = Some(SourceRow {
            table: table.into(),
            row: row.into(),
        });
        self
    }

    /// Weights of `v`.
    pub fn weights(&self) -> Result<WeightMultiset> {
        self.action.weights(&self.group)
    }

    /// Complex dimension of `v`.
    pub fn dim(&self) -> Result<BigInt> {
        Ok(self.weights()?.size())
    }

    /// Checks `dim v` against a declared value.
    pub fn check_dim(&self, expected: u64) -> Result<()> {
        let d = self.dim()?;
        if d != BigInt::from(expected) {
            return domain(format!(
                "{}: action has dimension {d}, expected {expected}",
                self.name()
            ));
        }
        Ok(())
    }

    pub fn basis(&self) -> Result<ActionBasis> {
        self.action.basis(&self.group)
    }

    pub fn name(&self) -> String {
        self.group.name.clone()
    }
}

/// `decompose(S^d(v*))` for `d = 0..=dmax`.
pub fn polynomial_decompose(spec: &GroupSpec, dmax: usize) -> Result<Vec<Decomposition>> {
    let dualv = repcalc::dual(&spec.weights()?);
    let powers = repcalc::sym_powers(&dualv, dmax);
    powers.par_iter().map(repcalc::decompose).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MultiplicityFree,
    Violation,
}

/// A label occurring more than once: either in two degrees or with
/// multiplicity at least two in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: Weight,
    pub degrees: Vec<usize>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MFReport {
    pub dmax: usize,
    pub per_degree: Vec<Decomposition>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl MFReport {
    pub fn is_multiplicity_free(&self) -> bool {
        self.verdict == Verdict::MultiplicityFree
    }

    /// Scope of the verdict.
    pub fn certificate(&self) -> String {
        match self.verdict {
            Verdict::MultiplicityFree => format!(
                "multiplicity free in degrees 0..={}; bounded-degree certificate, not a proof for all degrees",
                self.dmax
            ),
            Verdict::Violation => format!("multiplicity found within degrees 0..={}", self.dmax),
        }
    }
}

/// Collects labels across degrees and reports the first repetition in
/// (degree, label) order.
pub fn mf_report(per_degree: Vec<Decomposition>) -> MFReport {
    let dmax = per_degree.len().saturating_sub(1);
    let mut seen: BTreeMap<Weight, (Vec<usize>, BigInt)> = BTreeMap::new();
    let mut witness = None;
    for (d, dec) in per_degree.iter().enumerate() {
        let mut terms = dec.terms.clone();
        terms.sort();
        for (w, m) in terms {
            let e = seen
                .entry(w.clone())
                .or_insert_with(|| (vec![], BigInt::zero()));
            e.0.push(d);
            e.1 += &m;
            if witness.is_none() && e.1 > BigInt::one() {
                witness = Some(Witness {
                    label: w,
                    degrees: e.0.clone(),
                    multiplicity: e.1.to_u64().unwrap_or(u64::MAX),
                });
            }
        }
    }
    MFReport {
        dmax,
        verdict: if witness.is_some() {
            Verdict::Violation
        } else {
            Verdict::MultiplicityFree
        },
        witness,
        per_degree,
    }
}

pub fn is_multiplicity_free(spec: &GroupSpec, dmax: usize) -> Result<MFReport> {
    if dmax == 0 {
        return domain("dmax must be at least 1");
    }
    Ok(mf_report(polynomial_decompose(spec, dmax)?))
}

/// SO(n) on its defining space without the circle factor; never multiplicity free.
pub fn negative_control(n: usize) -> Result<GroupSpec> {
    GroupSpec::new(
        &[FactorKind::Orthogonal(n)],
        &[],
        RepAction::new(ActionKind::Standard(0)),
    )
    .map(|s| s.with_source("control", &format!("SO({n})")))
}

/// Highest-weight vectors of degree `d` and weight `w` (unnormalized coordinates).
pub fn highest_weight_vectors(spec: &GroupSpec, d: usize, w: &Weight) -> Result<Vec<Polynomial>> {
    let basis = spec.basis()?;
    let space = DegreeSpace::new(&basis, d);
    Ok(poly::highest_weight_kernel(&spec.group, &basis, &space, w)
        .iter()
        .map(|v| poly::to_polynomial(&space, w, v))
        .collect())
}

/// Outcome for one small-rank highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelCheck {
    /// Highest weight at the small rank (unnormalized coordinates).
    pub label: Weight,
    /// The embedded label is a highest weight at the large rank.
    pub in_large: bool,
    /// The large-rank highest-weight vector is a multiple of the embedded small one.
    pub proportional: bool,
    /// The large-rank isotypic projector compressed to the small space equals
    /// the small-rank projector on every weight space.
    pub nested: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub degree: usize,
    pub small: String,
    pub large: String,
    pub labels: Vec<LabelCheck>,
}

impl StabilityReport {
    /// Label-set inclusion `X_small ⊆ X_large`.
    pub fn labels_included(&self) -> bool {
        self.labels.iter().all(|l| l.in_large)
    }

    pub fn highest_weights_stable(&self) -> bool {
        self.labels.iter().all(|l| l.in_large && l.proportional)
    }

    pub fn nesting_holds(&self) -> Option<bool> {
        let mut all = true;
        for l in &self.labels {
            all &= l.nested?;
        }
        Some(all)
    }

    pub fn failing_labels(&self) -> Vec<Weight> {
        self.labels
            .iter()
            .filter(|l| !(l.in_large && l.proportional && l.nested.unwrap_or(true)))
            .map(|l| l.label.clone())
            .collect()
    }
}

/// Compares the degree-`d` highest-weight vectors of a small stage with those
/// of a larger stage, and with `nesting` also the isotypic projectors.
pub fn highest_weight_stability(
    small: &GroupSpec,
    large: &GroupSpec,
    d: usize,
    nesting: bool,
) -> Result<StabilityReport> {
    let (gs, gl) = (&small.group, &large.group);
    let (sb, lb) = (small.basis()?, large.basis()?);
    let emb = Embedding::build(gs, &sb, gl, &lb)?;
    let ss = DegreeSpace::new(&sb, d);
    let ls = DegreeSpace::new(&lb, d);
    let small_hw = poly::highest_weights(gs, &sb, &ss);
    let targets: Vec<Weight> = {
        let mut t: Vec<Weight> = ss.by_weight.keys().cloned().collect();
        t.sort();
        t
    };
    let large_targets: Vec<Weight> = targets.iter().map(|w| emb.weight(w)).collect();

    let labels: Vec<Result<LabelCheck>> = small_hw
        .par_iter()
        .map(|(w, &k)| -> Result<LabelCheck> {
            let big = emb.weight(w);
            let vs = poly::highest_weight_kernel(gs, &sb, &ss, w);
            let vl = poly::highest_weight_kernel(gl, &lb, &ls, &big);
            let in_large = !vl.is_empty();
            let proportional = k == 1 && vl.len() == 1 && {
                let embedded = embed_vector(&emb, &ss, &ls, w, &big, &vs[0]);
                linalg::rank(&vec![embedded, vl[0].clone()]) == 1
            };
            let nested = if nesting && k == 1 {
                let ps = poly::isotypic_projectors(gs, &sb, &ss, w, &vs[0], &targets)?;
                let pl = match vl.as_slice() {
                    [v] => Some(poly::isotypic_projectors(
                        gl,
                        &lb,
                        &ls,
                        &big,
                        v,
                        &large_targets,
                    )?),
                    _ => None,
                };
                Some(match pl {
                    None => false,
                    Some(pl) => targets
                        .iter()
                        .zip(&large_targets)
                        .all(|(t, lt)| compressed_equals(&emb, &ss, &ls, t, &ps[t], &pl[lt])),
                })
            } else if nesting {
                Some(false)
            } else {
                None
            };
            Ok(LabelCheck {
                label: w.clone(),
                in_large,
                proportional,
                nested,
            })
        })
        .collect();
    Ok(StabilityReport {
        degree: d,
        small: small.name(),
        large: large.name(),
        labels: labels.into_iter().collect::<Result<_>>()?,
    })
}

/// Dense small-space vector of weight `w` re-expressed over the large weight space.
fn embed_vector(
    emb: &Embedding,
    ss: &DegreeSpace,
    ls: &DegreeSpace,
    w: &Weight,
    big: &Weight,
    v: &[Q],
) -> Vec<Q> {
    let mut out = vec![Q::zero(); ls.monomials(big).len()];
    for (m, c) in ss.monomials(w).iter().zip(v) {
        let p = ls
            .position(&emb.monomial(m))
            .expect("embedded monomial exists");
        out[p] = c.clone();
    }
    out
}

/// `Q P_large Q == P_small` on one weight space, `Q` the coordinate
/// projection onto polynomials in the small variables.
fn compressed_equals(
    emb: &Embedding,
    ss: &DegreeSpace,
    ls: &DegreeSpace,
    t: &Weight,
    ps: &linalg::Matrix,
    pl: &linalg::Matrix,
) -> bool {
    let pos: Vec<usize> = ss
        .monomials(t)
        .iter()
        .map(|m| {
            ls.position(&emb.monomial(m))
                .expect("embedded monomial exists")
        })
        .collect();
    pos.iter()
        .enumerate()
        .all(|(i, &a)| pos.iter().enumerate().all(|(j, &b)| ps[i][j] == pl[a][b]))
}

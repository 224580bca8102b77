//! How a product group acts on the vector space of a table row.
//!
//! Weights are produced for every supported action. Explicit raising and
//! lowering matrices on a weight basis exist for actions built from circles
//! and the classical groups U, SU, Sp and SO; they drive the polynomial model.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, Result};
use crate::linalg::{q, Q};
use crate::repcalc::{self, WeightMultiset};
use crate::weights::{FactorKind, Reductive, Weight};

/// A representation of a product group, built from per-factor pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepAction {
    pub kind: ActionKind,
    /// `(factor index, charge)` for central circle factors; added to every weight.
    #[serde(default)]
    pub charges: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionKind {
    /// Defining representation of one factor (a circle acts by charge 1).
    Standard(usize),
    Sym2(usize),
    Wedge2(usize),
    /// Outer tensor product of the defining representations of two factors.
    Tensor(usize, usize),
    /// Spin representation of a Spin factor (the positive half-spin in even dimension).
    Spin(usize),
    /// 27-dimensional representation of an E6 factor.
    E6Fund(usize),
    Trivial,
    DirectSum(Vec<RepAction>),
    DualOf(Box<RepAction>),
}

impl RepAction {
    pub fn new(kind: ActionKind) -> Self {
        RepAction {
            kind,
            charges: Vec::new(),
        }
    }

    pub fn charged(kind: ActionKind, charges: &[(usize, i64)]) -> Self {
        RepAction {
            kind,
            charges: charges.to_vec(),
        }
    }

    fn check(&self, g: &Reductive) -> Result<()> {
        let factor = |i: usize| -> Result<&FactorKind> {
            g.factors
                .get(i)
                .map(|f| &f.kind)
                .ok_or_else(|| crate::Error::Domain(format!("action refers to missing factor {i}")))
        };
        for &(i, _) in &self.charges {
            if *factor(i)? != FactorKind::Circle {
                return domain(format!("charge assigned to non-circle factor {i}"));
            }
        }
        match &self.kind {
            ActionKind::Standard(i) | ActionKind::Sym2(i) | ActionKind::Wedge2(i) => {
                factor(*i)?;
            }
            ActionKind::Tensor(a, b) => {
                factor(*a)?;
                factor(*b)?;
            }
            ActionKind::Spin(i) => {
                if !matches!(factor(*i)?, FactorKind::Spin(_)) {
                    return domain(format!("spin action on non-spin factor {i}"));
                }
            }
            ActionKind::E6Fund(i) => {
                if *factor(*i)? != FactorKind::E6 {
                    return domain(format!("E6 action on factor {i}"));
                }
            }
            ActionKind::Trivial => {}
            ActionKind::DirectSum(parts) => {
                for p in parts {
                    p.check(g)?;
                }
            }
            ActionKind::DualOf(a) => a.check(g)?,
        }
        Ok(())
    }

    /// Weight multiset of the action.
    pub fn weights(&self, g: &Arc<Reductive>) -> Result<WeightMultiset> {
        self.check(g)?;
        let base = match &self.kind {
            ActionKind::Standard(i) => from_raw(g, standard_weights(g, *i)?),
            ActionKind::Sym2(i) => repcalc::sym_power(&from_raw(g, standard_weights(g, *i)?), 2),
            ActionKind::Wedge2(i) => repcalc::wedge2(&from_raw(g, standard_weights(g, *i)?)),
            ActionKind::Tensor(a, b) => repcalc::tensor(
                &from_raw(g, standard_weights(g, *a)?),
                &from_raw(g, standard_weights(g, *b)?),
            )?,
            ActionKind::Spin(i) => from_raw(g, spin_weights(g, *i)),
            ActionKind::E6Fund(i) => from_raw(g, standard_weights(g, *i)?),
            ActionKind::Trivial => WeightMultiset::trivial(g),
            ActionKind::DirectSum(parts) => {
                let mut acc = WeightMultiset::empty(g);
                for p in parts {
                    acc = acc.plus(&p.weights(g)?)?;
                }
                acc
            }
            ActionKind::DualOf(a) => repcalc::dual(&a.weights(g)?),
        };
        if self.charges.is_empty() {
            return Ok(base);
        }
        let shift = self.charge_shift(g);
        let mut out = WeightMultiset::empty(g);
        for (w, m) in base.iter() {
            out.add(w.add(&shift), m.clone());
        }
        Ok(out)
    }

    fn charge_shift(&self, g: &Reductive) -> Weight {
        let mut shift = Weight::zero(g.dim);
        for &(i, c) in &self.charges {
            shift.0[g.factors[i].offset] += c;
        }
        shift
    }

    /// Explicit weight basis with raising and lowering operators.
    pub fn basis(&self, g: &Reductive) -> Result<ActionBasis> {
        self.check(g)?;
        let mut b = match &self.kind {
            ActionKind::Standard(i) => standard_basis(g, *i)?,
            ActionKind::Sym2(i) => standard_basis(g, *i)?.sym2(),
            ActionKind::Wedge2(i) => standard_basis(g, *i)?.wedge2(),
            ActionKind::Tensor(a, b) => standard_basis(g, *a)?.tensor(&standard_basis(g, *b)?),
            ActionKind::Spin(_) | ActionKind::E6Fund(_) => {
                return unsupported("explicit operators for spin and E6 actions")
            }
            ActionKind::Trivial => ActionBasis {
                weights: vec![Weight::zero(g.dim)],
                norms: vec![Q::one()],
                raising: vec![vec![vec![]]; g.rank()],
                lowering: vec![vec![vec![]]; g.rank()],
            },
            ActionKind::DirectSum(parts) => {
                let mut acc: Option<ActionBasis> = None;
                for p in parts {
                    let pb = p.basis(g)?;
                    acc = Some(match acc {
                        None => pb,
                        Some(a) => a.direct_sum(&pb),
                    });
                }
                acc.ok_or_else(|| crate::Error::Domain("empty direct sum".into()))?
            }
            ActionKind::DualOf(a) => a.basis(g)?.dual(),
        };
        let shift = self.charge_shift(g);
        for w in b.weights.iter_mut() {
            *w = w.add(&shift);
        }
        Ok(b)
    }
}

fn from_raw(g: &Arc<Reductive>, ws: Vec<Weight>) -> WeightMultiset {
    let mut m = WeightMultiset::empty(g);
    for w in ws {
        m.add(w, One::one());
    }
    m
}

fn embed(g: &Reductive, f: usize, local: &[i64]) -> Weight {
    let mut v = vec![0; g.dim];
    let off = g.factors[f].offset;
    v[off..off + local.len()].copy_from_slice(local);
    Weight(v)
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

/// Weights of the defining representation of factor `f`, in basis order.
pub fn standard_weights(g: &Reductive, f: usize) -> Result<Vec<Weight>> {
    let fac = &g.factors[f];
    let n = fac.dim;
    let local: Vec<Vec<i64>> = match fac.kind {
        FactorKind::Circle => vec![vec![1]],
        FactorKind::Unitary(_) | FactorKind::SpecialUnitary(_) => {
            (0..n).map(|i| unit(n, i, 1)).collect()
        }
        FactorKind::Symplectic(_) => signed_units(n, 1, false),
        FactorKind::Orthogonal(m) => signed_units(n, 1, m % 2 == 1),
        FactorKind::Spin(m) => signed_units(n, 2, m % 2 == 1),
        FactorKind::G2 => {
            let mut v = vec![];
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut w = vec![0; 3];
                        w[i] = 1;
                        w[j] = -1;
                        v.push(w);
                    }
                }
            }
            v.push(vec![0; 3]);
            v
        }
        FactorKind::E6 => {
            let single = Arc::new(Reductive::new(&[FactorKind::E6], &[])?);
            let top = single.from_dynkin_labels(&[1, 0, 0, 0, 0, 0])?;
            let mut v = vec![];
            for (w, m) in repcalc::irrep_weights(&single, &top)?.sorted() {
                debug_assert!(m.is_one());
                v.push(w.0);
            }
            v
        }
    };
    Ok(local.iter().map(|w| embed(g, f, w)).collect())
}

/// `c·e_i` for all i, then `-c·e_i`, then the zero weight if requested.
fn signed_units(n: usize, c: i64, zero: bool) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, c)).collect();
    v.extend((0..n).map(|i| unit(n, i, -c)));
    if zero {
        v.push(vec![0; n]);
    }
    v
}

/// Weights of the spin representation in doubled coordinates.
fn spin_weights(g: &Reductive, f: usize) -> Vec<Weight> {
    let fac = &g.factors[f];
    let n = fac.dim;
    let even = matches!(fac.kind, FactorKind::Spin(m) if m % 2 == 0);
    let mut out = vec![];
    for mask in 0u32..(1 << n) {
        if even && mask.count_ones() % 2 == 1 {
            continue;
        }
        let w: Vec<i64> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        out.push(embed(g, f, &w));
    }
    out
}

/// Sparse operator stored by columns: `op[a]` lists `(b, c)` with `X e_a = Σ c e_b`.
pub type Op = Vec<Vec<(usize, i64)>>;

/// Weight basis of a representation with one raising and one lowering
/// operator per simple root of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBasis {
    /// Unnormalized weights, one per basis vector.
    pub weights: Vec<Weight>,
    /// Squared norms of the basis vectors for an invariant Hermitian form.
    pub norms: Vec<Q>,
    pub raising: Vec<Op>,
    pub lowering: Vec<Op>,
}

fn transpose(op: &Op, n: usize) -> Op {
    let mut out: Op = vec![vec![]; n];
    for (a, col) in op.iter().enumerate() {
        for &(b, c) in col {
            out[b].push((a, c));
        }
    }
    out
}

/// Adjoint for the diagonal form with squared norms `g`: `F_ba = E_ab g_a / g_b`.
fn adjoint(op: &Op, g: &[Q]) -> Op {
    let mut out: Op = vec![vec![]; op.len()];
    for (b, col) in op.iter().enumerate() {
        for &(a, c) in col {
            let x = q(c) * &g[a] / &g[b];
            assert!(x.is_integer(), "non-integral adjoint entry");
            out[a].push((b, i64::try_from(x.to_integer()).expect("small entry")));
        }
    }
    out
}

/// Defining representation of a classical factor with raising operators for
/// its simple roots in the group's order.
fn standard_basis(g: &Reductive, f: usize) -> Result<ActionBasis> {
    let fac = &g.factors[f];
    let n = fac.dim;
    let weights = standard_weights(g, f)?;
    let dimv = weights.len();
    // local raising operators as (target, source, coefficient)
    let local: Vec<Vec<(usize, usize, i64)>> = match fac.kind {
        FactorKind::Circle => vec![],
        FactorKind::Unitary(_) | FactorKind::SpecialUnitary(_) => {
            (0..n - 1).map(|i| vec![(i, i + 1, 1)]).collect()
        }
        FactorKind::Symplectic(_) | FactorKind::Orthogonal(_) => {
            let long = matches!(fac.kind, FactorKind::Symplectic(_));
            let odd = matches!(fac.kind, FactorKind::Orthogonal(m) if m % 2 == 1);
            let mut ops: Vec<Vec<(usize, usize, i64)>> = (0..n.saturating_sub(1))
                .map(|i| vec![(i, i + 1, 1), (n + i + 1, n + i, -1)])
                .collect();
            if long {
                ops.push(vec![(n - 1, 2 * n - 1, 1)]);
            } else if odd {
                // short root: the zero-weight vector has squared norm 2
                ops.push(vec![(n - 1, 2 * n, 2), (2 * n, 2 * n - 1, -1)]);
            } else if n >= 2 {
                ops.push(vec![(n - 2, 2 * n - 1, 1), (n - 1, 2 * n - 2, -1)]);
            }
            ops
        }
        _ => return unsupported(format!("explicit operators for {}", fac.kind)),
    };
    if local.len() != fac.roots.simple_roots.len() {
        return domain(format!("operator count mismatch for {}", fac.kind));
    }
    let first = g.factors[..f]
        .iter()
        .map(|x| x.roots.simple_roots.len())
        .sum::<usize>();
    let mut raising: Vec<Op> = vec![vec![vec![]; dimv]; g.rank()];
    for (i, entries) in local.iter().enumerate() {
        for &(b, a, c) in entries {
            raising[first + i][a].push((b, c));
        }
    }
    let mut norms = vec![Q::one(); dimv];
    if matches!(fac.kind, FactorKind::Orthogonal(m) if m % 2 == 1) {
        norms[2 * n] = q(2);
    }
    let lowering = raising.iter().map(|op| adjoint(op, &norms)).collect();
    Ok(ActionBasis {
        weights,
        norms,
        raising,
        lowering,
    })
}

impl ActionBasis {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn ops_mut(&mut self) -> impl Iterator<Item = &mut Op> {
        self.raising.iter_mut().chain(self.lowering.iter_mut())
    }

    /// Symmetric square; e_a·e_a has squared norm 2, e_a·e_b (a < b) norm 1.
    fn sym2(&self) -> ActionBasis {
        self.square(true)
    }

    fn wedge2(&self) -> ActionBasis {
        self.square(false)
    }

    fn square(&self, sym: bool) -> ActionBasis {
        let n = self.dim();
        let mut index = HashMap::new();
        let mut weights = vec![];
        let mut norms = vec![];
        for a in 0..n {
            for b in a..n {
                if !sym && a == b {
                    continue;
                }
                index.insert((a, b), weights.len());
                weights.push(self.weights[a].add(&self.weights[b]));
                let base = &self.norms[a] * &self.norms[b];
                norms.push(if sym && a == b { base * q(2) } else { base });
            }
        }
        let m = weights.len();
        let pairs: Vec<(usize, usize)> = {
            let mut v = vec![(0, 0); m];
            for (&k, &i) in &index {
                v[i] = k;
            }
            v
        };
        let induce = |op: &Op| -> Op {
            let mut out: Op = vec![vec![]; m];
            for (col, &(a, b)) in pairs.iter().enumerate() {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                // X(e_a e_b) = (X e_a) e_b + e_a (X e_b)
                for &(t, c) in &op[a] {
                    add_product(&mut acc, &index, sym, t, b, c);
                }
                for &(t, c) in &op[b] {
                    add_product(&mut acc, &index, sym, a, t, c);
                }
                let mut e: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                e.sort();
                out[col] = e;
            }
            out
        };
        let raising = self.raising.iter().map(induce).collect();
        let lowering = self.lowering.iter().map(induce).collect();
        ActionBasis {
            weights,
            norms,
            raising,
            lowering,
        }
    }

    fn tensor(&self, other: &ActionBasis) -> ActionBasis {
        let (n, k) = (self.dim(), other.dim());
        let idx = |a: usize, b: usize| a * k + b;
        let mut weights = vec![];
        let mut norms = vec![];
        for a in 0..n {
            for b in 0..k {
                weights.push(self.weights[a].add(&other.weights[b]));
                norms.push(&self.norms[a] * &other.norms[b]);
            }
        }
        let induce = |x: &Op, y: &Op| -> Op {
            let mut out: Op = vec![vec![]; n * k];
            for a in 0..n {
                for b in 0..k {
                    let col = &mut out[idx(a, b)];
                    col.extend(x[a].iter().map(|&(t, c)| (idx(t, b), c)));
                    col.extend(y[b].iter().map(|&(t, c)| (idx(a, t), c)));
                }
            }
            out
        };
        let raising = self
            .raising
            .iter()
            .zip(&other.raising)
            .map(|(x, y)| induce(x, y))
            .collect();
        let lowering = self
            .lowering
            .iter()
            .zip(&other.lowering)
            .map(|(x, y)| induce(x, y))
            .collect();
        ActionBasis {
            weights,
            norms,
            raising,
            lowering,
        }
    }

    fn direct_sum(&self, other: &ActionBasis) -> ActionBasis {
        let n = self.dim();
        let join = |x: &Op, y: &Op| -> Op {
            let mut out = x.clone();
            out.extend(
                y.iter()
                    .map(|col| col.iter().map(|&(t, c)| (t + n, c)).collect()),
            );
            out
        };
        ActionBasis {
            weights: self.weights.iter().chain(&other.weights).cloned().collect(),
            norms: self.norms.iter().chain(&other.norms).cloned().collect(),
            raising: self
                .raising
                .iter()
                .zip(&other.raising)
                .map(|(x, y)| join(x, y))
                .collect(),
            lowering: self
                .lowering
                .iter()
                .zip(&other.lowering)
                .map(|(x, y)| join(x, y))
                .collect(),
        }
    }

    /// Contragredient on the dual basis: X acts by −Xᵀ, norms invert.
    fn dual(&self) -> ActionBasis {
        let n = self.dim();
        let mut out = ActionBasis {
            weights: self.weights.iter().map(Weight::neg).collect(),
            norms: self.norms.iter().map(|x| x.recip()).collect(),
            raising: self.raising.iter().map(|o| transpose(o, n)).collect(),
            lowering: self.lowering.iter().map(|o| transpose(o, n)).collect(),
        };
        for op in out.ops_mut() {
            for col in op.iter_mut() {
                for e in col.iter_mut() {
                    e.1 = -e.1;
                }
            }
        }
        out
    }
}

/// Adds `c · e_x e_y` (symmetric) or `c · e_x ∧ e_y` to `acc`.
fn add_product(
    acc: &mut HashMap<usize, i64>,
    index: &HashMap<(usize, usize), usize>,
    sym: bool,
    x: usize,
    y: usize,
    c: i64,
) {
    if !sym && x == y {
        return;
    }
    let (lo, hi, s) = if x <= y {
        (x, y, 1)
    } else {
        (y, x, if sym { 1 } else { -1 })
    };
    *acc.entry(index[&(lo, hi)]).or_default() += s * c;
}

//! Explicit polynomial model: monomials in a weight basis of the acting space,
//! with the group's raising and lowering operators acting as derivations.
//!
//! Monomials `x^A` are orthogonal with squared norm `A! · Π g_a^{A_a}`, the
//! Fock form induced from the basis norms `g_a`. Holomorphic polynomials are
//! identified with the symmetric algebra through that form, so highest
//! weights are read off in the symmetric algebra of the acting space.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::linalg::{self, q, Matrix, Q};
use crate::weights::{Reductive, Weight};

use super::action::{ActionBasis, Op};

/// A monomial as a sorted list of variable indices (with repetition).
pub type Monomial = Vec<usize>;

/// A polynomial as `(monomial, coefficient)` pairs sorted by monomial.
pub type Polynomial = Vec<(Monomial, Q)>;

/// Degree-`d` monomials grouped by weight.
#[derive(Clone, Debug)]
pub struct DegreeSpace {
    pub degree: usize,
    pub by_weight: HashMap<Weight, Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
}

impl DegreeSpace {
    pub fn new(basis: &ActionBasis, d: usize) -> Self {
        let n = basis.dim();
        let mut by_weight: HashMap<Weight, Vec<Monomial>> = HashMap::new();
        let dim = basis.weights.first().map(|w| w.len()).unwrap_or(0);
        fn rec(
            basis: &ActionBasis,
            n: usize,
            start: usize,
            left: usize,
            cur: &mut Monomial,
            w: Weight,
            out: &mut HashMap<Weight, Vec<Monomial>>,
        ) {
            if left == 0 {
                out.entry(w).or_default().push(cur.clone());
                return;
            }
            for a in start..n {
                cur.push(a);
                rec(basis, n, a, left - 1, cur, w.add(&basis.weights[a]), out);
                cur.pop();
            }
        }
        rec(
            basis,
            n,
            0,
            d,
            &mut vec![],
            Weight::zero(dim),
            &mut by_weight,
        );
        let mut index = HashMap::new();
        for ms in by_weight.values_mut() {
            ms.sort();
            for (i, m) in ms.iter().enumerate() {
                index.insert(m.clone(), i);
            }
        }
        DegreeSpace {
            degree: d,
            by_weight,
            index,
        }
    }

    pub fn monomials(&self, w: &Weight) -> &[Monomial] {
        self.by_weight.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }
}

/// Squared Fock norm of a monomial.
pub fn monomial_norm(basis: &ActionBasis, m: &Monomial) -> Q {
    let mut out = Q::one();
    let mut run = 0i64;
    for (i, &a) in m.iter().enumerate() {
        run = if i > 0 && m[i - 1] == a { run + 1 } else { 1 };
        out *= q(run) * &basis.norms[a];
    }
    out
}

/// Applies an operator acting as a derivation to a monomial.
pub fn apply_to_monomial(op: &Op, m: &Monomial) -> Vec<(Monomial, i64)> {
    let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
    for (i, &a) in m.iter().enumerate() {
        if i > 0 && m[i - 1] == a {
            continue;
        }
        let mult = m.iter().filter(|&&b| b == a).count() as i64;
        for &(t, c) in &op[a] {
            let mut nm = m.clone();
            nm[i] = t;
            nm.sort_unstable();
            *acc.entry(nm).or_default() += mult * c;
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Applies a derivation to a dense vector over the monomials of weight `w`;
/// the result is dense over the monomials of weight `w + shift`.
fn apply_dense(op: &Op, space: &DegreeSpace, w: &Weight, shift: &Weight, v: &[Q]) -> Vec<Q> {
    let target = w.add(shift);
    let mut out = vec![Q::zero(); space.monomials(&target).len()];
    for (m, c) in space.monomials(w).iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        for (nm, k) in apply_to_monomial(op, m) {
            let p = space
                .position(&nm)
                .expect("image monomial has the shifted weight");
            out[p] += c * q(k);
        }
    }
    out
}

/// Kernel of all raising operators on the weight-`w` monomials of degree `d`.
pub fn highest_weight_kernel(
    group: &Reductive,
    basis: &ActionBasis,
    space: &DegreeSpace,
    w: &Weight,
) -> Vec<Vec<Q>> {
    let cols = space.monomials(w).len();
    if cols == 0 {
        return Vec::new();
    }
    let mut rows: Matrix = Vec::new();
    for (i, op) in basis.raising.iter().enumerate() {
        let alpha = &group.simple_roots[i];
        let target = space.monomials(&w.add(alpha)).len();
        if target == 0 {
            continue;
        }
        let mut block = linalg::zeros(target, cols);
        for j in 0..cols {
            let mut e = vec![Q::zero(); cols];
            e[j] = Q::one();
            let img = apply_dense(op, space, w, alpha, &e);
            for (r, x) in img.into_iter().enumerate() {
                block[r][j] = x;
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return linalg::identity(cols);
    }
    linalg::nullspace(&rows, cols)
}

/// Dense vector over a weight space as a sparse polynomial.
pub fn to_polynomial(space: &DegreeSpace, w: &Weight, v: &[Q]) -> Polynomial {
    space
        .monomials(w)
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Highest weights (unnormalized coordinates) occurring in degree `d`, with
/// the dimension of each highest-weight space.
pub fn highest_weights(
    group: &Reductive,
    basis: &ActionBasis,
    space: &DegreeSpace,
) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for w in space.by_weight.keys() {
        if !group.is_dominant(w) {
            continue;
        }
        let k = highest_weight_kernel(group, basis, space, w).len();
        if k > 0 {
            out.insert(w.clone(), k);
        }
    }
    out
}

/// Orthogonal projectors onto the weight spaces of the submodule generated by
/// `hw` (a highest-weight vector of weight `top`), restricted to the weights
/// in `targets`.
pub fn isotypic_projectors(
    group: &Reductive,
    basis: &ActionBasis,
    space: &DegreeSpace,
    top: &Weight,
    hw: &[Q],
    targets: &[Weight],
) -> Result<HashMap<Weight, Matrix>> {
    if targets.is_empty() {
        return Ok(HashMap::new());
    }
    let floor = targets.iter().map(|w| group.height(w)).min().unwrap_or(0);
    let mut pending: BTreeMap<(i64, Weight), Vec<Vec<Q>>> = BTreeMap::new();
    pending.insert((group.height(top), top.clone()), vec![hw.to_vec()]);
    let mut spans: HashMap<Weight, Vec<Vec<Q>>> = HashMap::new();
    while let Some(((_, w), vecs)) = pending.pop_last() {
        let mut m = vecs;
        let piv = linalg::rref(&mut m);
        m.truncate(piv.len());
        for (i, op) in basis.lowering.iter().enumerate() {
            let shift = group.simple_roots[i].neg();
            let nw = w.add(&shift);
            if space.monomials(&nw).is_empty() || group.height(&nw) < floor {
                continue;
            }
            let imgs: Vec<Vec<Q>> = m
                .iter()
                .map(|v| apply_dense(op, space, &w, &shift, v))
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect();
            if !imgs.is_empty() {
                pending
                    .entry((group.height(&nw), nw))
                    .or_default()
                    .extend(imgs);
            }
        }
        spans.insert(w, m);
    }
    let mut out = HashMap::new();
    for t in targets {
        let ms = space.monomials(t);
        let n = ms.len();
        let b = spans.get(t).cloned().unwrap_or_default();
        if b.is_empty() {
            out.insert(t.clone(), linalg::zeros(n, n));
            continue;
        }
        let g: Vec<Q> = ms.iter().map(|m| monomial_norm(basis, m)).collect();
        // P = Bᵀ (B G Bᵀ)^{-1} B G with the basis vectors as rows of B
        let k = b.len();
        let mut gram = linalg::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[i][j] = (0..n).map(|x| &b[i][x] * &g[x] * &b[j][x]).sum();
            }
        }
        let inv = linalg::inverse(&gram)
            .ok_or_else(|| crate::Error::Domain("singular Gram matrix".into()))?;
        let bt = linalg::transpose(&b);
        let bg: Matrix = b
            .iter()
            .map(|r| r.iter().zip(&g).map(|(x, y)| x * y).collect())
            .collect();
        let p = linalg::mul(&linalg::mul(&bt, &inv), &bg);
        out.insert(t.clone(), p);
    }
    Ok(out)
}

/// How a smaller stage sits inside a larger one.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Coordinate of the larger group receiving each coordinate of the smaller.
    pub coords: Vec<usize>,
    /// Basis vector of the larger space receiving each basis vector of the smaller.
    pub vars: Vec<usize>,
    large_dim: usize,
}

impl Embedding {
    pub fn weight(&self, w: &Weight) -> Weight {
        let mut v = vec![0; self.large_dim];
        for (i, &c) in w.0.iter().enumerate() {
            v[self.coords[i]] += c;
        }
        Weight(v)
    }

    pub fn monomial(&self, m: &Monomial) -> Monomial {
        let mut out: Monomial = m.iter().map(|&a| self.vars[a]).collect();
        out.sort_unstable();
        out
    }

    /// Factor `i` of the small group goes to factor `i` of the large group,
    /// coordinates as a prefix; basis vectors are matched by weight.
    pub fn build(
        small: &Reductive,
        sb: &ActionBasis,
        large: &Reductive,
        lb: &ActionBasis,
    ) -> Result<Self> {
        if small.factors.len() != large.factors.len() {
            return domain("embedding: factor counts differ");
        }
        let mut coords = vec![0; small.dim];
        for (fs, fl) in small.factors.iter().zip(&large.factors) {
            if std::mem::discriminant(&fs.kind) != std::mem::discriminant(&fl.kind)
                || fs.dim > fl.dim
            {
                return domain(format!(
                    "embedding: {} does not sit in {}",
                    fs.kind, fl.kind
                ));
            }
            for i in 0..fs.dim {
                coords[fs.offset + i] = fl.offset + i;
            }
        }
        let mut e = Embedding {
            coords,
            vars: vec![],
            large_dim: large.dim,
        };
        for a in &small.simple_roots {
            if !large.positive_roots.contains(&e.weight(a)) {
                return domain(format!(
                    "embedding: simple root {a} is not a positive root of {}",
                    large.name
                ));
            }
        }
        let mut by_weight: HashMap<Weight, Vec<usize>> = HashMap::new();
        for (i, w) in lb.weights.iter().enumerate() {
            by_weight.entry(w.clone()).or_default().push(i);
        }
        for w in &sb.weights {
            match by_weight.get(&e.weight(w)).map(Vec::as_slice) {
                Some([j]) => e.vars.push(*j),
                _ => return domain(format!("embedding: no unique image for basis weight {w}")),
            }
        }
        for (a, &j) in e.vars.iter().enumerate() {
            if sb.norms[a] != lb.norms[j] {
                return domain("embedding: basis norms differ");
            }
        }
        Ok(e)
    }
}

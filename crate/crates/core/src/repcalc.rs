//! Characters as exact weight multisets.
//!
//! Irreducible characters come from Freudenthal's recursion on dominant
//! weights; decompositions peel highest weights off the dominant part of a
//! character; Brauer-Klimyk tensor decomposition is the independent second
//! algorithm.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::weights::{Reductive, Weight};

/// Weight multiset with big-integer multiplicities over a fixed group.
#[derive(Clone, Debug)]
pub struct WeightMultiset {
    group: Arc<Reductive>,
    entries: HashMap<Weight, BigInt>,
}

impl PartialEq for WeightMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.entries == other.entries
    }
}

impl WeightMultiset {
    pub fn empty(group: &Arc<Reductive>) -> Self {
        WeightMultiset {
            group: Arc::clone(group),
            entries: HashMap::new(),
        }
    }

    /// The trivial character `{0: 1}`.
    pub fn trivial(group: &Arc<Reductive>) -> Self {
        let mut m = Self::empty(group);
        m.add(Weight::zero(group.dim), BigInt::one());
        m
    }

    pub fn from_weights<I: IntoIterator<Item = Weight>>(
        group: &Arc<Reductive>,
        ws: I,
    ) -> Result<Self> {
        let mut m = Self::empty(group);
        for w in ws {
            group.check_len(&w)?;
            m.add(w, BigInt::one());
        }
        Ok(m)
    }

    pub fn group(&self) -> &Arc<Reductive> {
        &self.group
    }

    /// Adds `mult` copies of `w` (after lattice normalization); zero entries are dropped.
    pub fn add(&mut self, w: Weight, mult: BigInt) {
        if mult.is_zero() {
            return;
        }
        let w = self.group.normalized(w);
        match self.entries.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(mult);
            }
        }
    }

    pub fn get(&self, w: &Weight) -> BigInt {
        self.entries
            .get(&self.group.normalized(w.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total multiplicity (the dimension of the character).
    pub fn size(&self) -> BigInt {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.entries.iter()
    }

    /// Entries sorted by weight.
    pub fn sorted(&self) -> Vec<(Weight, BigInt)> {
        let mut v: Vec<_> = self
            .entries
            .iter()
            .map(|(w, m)| (w.clone(), m.clone()))
            .collect();
        v.sort();
        v
    }

    /// True when some stored multiplicity is negative.
    pub fn has_negative(&self) -> bool {
        self.entries.values().any(|m| m.is_negative())
    }

    /// Every simple reflection permutes the entries.
    pub fn is_weyl_invariant(&self) -> bool {
        let g = &self.group;
        self.entries.iter().all(|(w, m)| {
            (0..g.rank()).all(|i| {
                let r = g.reflect(w, i);
                self.entries.get(&r) == Some(m)
            })
        })
    }

    /// Entries at dominant weights.
    pub fn dominant_part(&self) -> HashMap<Weight, BigInt> {
        self.entries
            .iter()
            .filter(|(w, _)| self.group.is_dominant(w))
            .map(|(w, m)| (w.clone(), m.clone()))
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return domain(format!(
                "weight multisets over different groups ({} vs {})",
                self.group.name, other.group.name
            ));
        }
        Ok(())
    }

    /// Weights scaled by `k` (the Adams operation ψ^k).
    pub fn adams(&self, k: i64) -> Self {
        let mut out = Self::empty(&self.group);
        for (w, m) in &self.entries {
            out.add(w.scale(k), m.clone());
        }
        out
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Self::empty(&self.group);
        for (w, m) in &self.entries {
            out.add(w.clone(), m * c);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, m) in &other.entries {
            out.add(w.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, m) in &other.entries {
            out.add(w.clone(), -m);
        }
        Ok(out)
    }
}

/// Result of peeling a character into irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Highest weights with multiplicities, in peeling order.
    pub terms: Vec<(Weight, BigInt)>,
    /// Weights left after peeling; empty on success.
    pub residual: Vec<(Weight, BigInt)>,
}

impl Decomposition {
    pub fn multiplicity(&self, label: &Weight) -> BigInt {
        self.terms
            .iter()
            .find(|(w, _)| w == label)
            .map(|(_, m)| m.clone())
            .unwrap_or_default()
    }

    pub fn labels(&self) -> Vec<Weight> {
        self.terms.iter().map(|(w, _)| w.clone()).collect()
    }

    /// Terms keyed by label, for order-independent comparison.
    pub fn as_map(&self) -> BTreeMap<Weight, BigInt> {
        self.terms.iter().cloned().collect()
    }

    pub fn total_dimension(&self, group: &Reductive) -> Result<BigInt> {
        let mut s = BigInt::zero();
        for (w, m) in &self.terms {
            s += group.weyl_dim(w)? * m;
        }
        Ok(s)
    }
}

/// Dominant weights of the irreducible module with highest weight `label`,
/// with multiplicities from Freudenthal's formula.
pub fn dominant_character(group: &Reductive, label: &Weight) -> Result<HashMap<Weight, BigInt>> {
    group.check_dominant(label)?;
    let label = group.normalized(label.clone());
    let norm_l = group.ip(&label, &label);
    let pos = &group.positive_roots;

    // Dominant weights below the label, connected by subtracting positive roots.
    let mut doms: HashSet<Weight> = HashSet::from([label.clone()]);
    let mut stack = vec![label.clone()];
    while let Some(mu) = stack.pop() {
        for a in pos {
            let nu = group.normalized(mu.sub(a));
            if group.is_dominant(&nu) && !doms.contains(&nu) {
                doms.insert(nu.clone());
                stack.push(nu);
            }
        }
    }
    let mut order: Vec<Weight> = doms.into_iter().collect();
    order.sort_by(|a, b| group.height(b).cmp(&group.height(a)).then_with(|| b.cmp(a)));

    let lr2 = label.scale(2).add(&group.two_rho);
    let mut mult: HashMap<Weight, BigInt> = HashMap::new();
    mult.insert(label.clone(), BigInt::one());
    for mu in order.iter().skip(1) {
        // (λ-μ, λ+μ+2ρ) m(μ) = 2 Σ_{α>0} Σ_{k≥1} (μ+kα, α) m(μ+kα)
        let lhs = group.ip(&label.sub(mu), &lr2.sub(&label).add(mu));
        let mut rhs = BigInt::zero();
        for a in pos {
            let mut k = 1;
            loop {
                let nu = mu.add_scaled(a, k);
                if group.ip(&nu, &nu) > norm_l {
                    break;
                }
                let d = group.dominant_fold(&nu);
                if let Some(m) = mult.get(&d) {
                    rhs += m * BigInt::from(2 * group.ip(&nu, a));
                }
                k += 1;
            }
        }
        if lhs == 0 {
            return domain(format!("Freudenthal denominator vanished at {mu}"));
        }
        let (qt, r) = rhs.div_rem(&BigInt::from(lhs));
        debug_assert!(r.is_zero(), "Freudenthal recursion not integral at {mu}");
        if !qt.is_zero() {
            mult.insert(mu.clone(), qt);
        }
    }
    Ok(mult)
}

/// Full weight multiset of the irreducible module with highest weight `label`.
pub fn irrep_weights(group: &Arc<Reductive>, label: &Weight) -> Result<WeightMultiset> {
    let dom = dominant_character(group, label)?;
    let mut out = WeightMultiset::empty(group);
    for (mu, m) in dom {
        for w in group.orbit(&mu) {
            out.add(w, m.clone());
        }
    }
    Ok(out)
}

pub fn tensor(a: &WeightMultiset, b: &WeightMultiset) -> Result<WeightMultiset> {
    a.check_same(b)?;
    let mut out = WeightMultiset::empty(&a.group);
    for (wa, ma) in &a.entries {
        for (wb, mb) in &b.entries {
            out.add(wa.add(wb), ma * mb);
        }
    }
    Ok(out)
}

pub fn dual(a: &WeightMultiset) -> WeightMultiset {
    a.adams(-1)
}

/// Largest monomial count for which `sym_power` enumerates directly.
pub const ENUMERATION_LIMIT: u64 = 10_000;

/// Number of degree-`d` monomials in `n` variables.
pub fn monomial_count(n: u64, d: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..d {
        c = c * BigInt::from(n + i) / BigInt::from(i + 1);
    }
    c
}

/// Symmetric power S^d(a); enumerates monomials when there are few, otherwise
/// uses the power-sum recursion.
pub fn sym_power(a: &WeightMultiset, d: usize) -> WeightMultiset {
    let n = a.size();
    let small = n
        .to_u64()
        .map(|n| monomial_count(n, d as u64) <= BigInt::from(ENUMERATION_LIMIT))
        .unwrap_or(false);
    if small {
        sym_power_enumerate(a, d)
    } else {
        sym_power_newton(a, d)
    }
}

/// S^d via h_d = (1/d) Σ_{k=1..d} ψ^k(a) h_{d-k}.
pub fn sym_power_newton(a: &WeightMultiset, d: usize) -> WeightMultiset {
    sym_powers(a, d).pop().expect("nonempty")
}

/// S^0, ..., S^dmax in one pass of the power-sum recursion.
pub fn sym_powers(a: &WeightMultiset, dmax: usize) -> Vec<WeightMultiset> {
    let mut h = vec![WeightMultiset::trivial(&a.group)];
    let psi: Vec<WeightMultiset> = (0..=dmax).map(|k| a.adams(k as i64)).collect();
    for j in 1..=dmax {
        let mut acc = WeightMultiset::empty(&a.group);
        for k in 1..=j {
            for (wa, ma) in &psi[k].entries {
                for (wb, mb) in &h[j - k].entries {
                    acc.add(wa.add(wb), ma * mb);
                }
            }
        }
        let div = BigInt::from(j);
        let mut out = WeightMultiset::empty(&a.group);
        for (w, m) in acc.entries {
            out.add(w, m / &div);
        }
        h.push(out);
    }
    h
}

/// S^d by enumerating multisets of variables; each weight of multiplicity m
/// contributes m variables.
pub fn sym_power_enumerate(a: &WeightMultiset, d: usize) -> WeightMultiset {
    let vars: Vec<Weight> = a
        .sorted()
        .into_iter()
        .flat_map(|(w, m)| std::iter::repeat_n(w, m.to_usize().unwrap_or(0)))
        .collect();
    let mut out = WeightMultiset::empty(&a.group);
    let dim = a.group.dim;
    fn rec(vars: &[Weight], start: usize, left: usize, cur: &Weight, out: &mut WeightMultiset) {
        if left == 0 {
            out.add(cur.clone(), BigInt::one());
            return;
        }
        for i in start..vars.len() {
            rec(vars, i, left - 1, &cur.add(&vars[i]), out);
        }
    }
    rec(&vars, 0, d, &Weight::zero(dim), &mut out);
    out
}

/// Exterior square Λ²(a) = (ψ¹(a)² − ψ²(a)) / 2.
pub fn wedge2(a: &WeightMultiset) -> WeightMultiset {
    let sq = tensor(a, a).expect("same group");
    let diff = sq.minus(&a.adams(2)).expect("same group");
    let two = BigInt::from(2);
    let mut out = WeightMultiset::empty(&a.group);
    for (w, m) in diff.entries {
        out.add(w, m / &two);
    }
    out
}

/// Peels highest weights off a Weyl-invariant character.
pub fn decompose(a: &WeightMultiset) -> Result<Decomposition> {
    let g = Arc::clone(&a.group);
    if !a.is_weyl_invariant() || a.has_negative() {
        let residual = a.len();
        return Err(Error::InvalidCharacter {
            residual_terms: residual,
            detail: "input is not a Weyl-invariant character".into(),
        });
    }
    let mut dom = a.dominant_part();
    let mut terms = Vec::new();
    let mut cache: HashMap<Weight, HashMap<Weight, BigInt>> = HashMap::new();
    loop {
        dom.retain(|_, m| !m.is_zero());
        let Some(top) = dom
            .keys()
            .max_by(|x, y| g.height(x).cmp(&g.height(y)).then_with(|| x.cmp(y)))
            .cloned()
        else {
            break;
        };
        let c = dom[&top].clone();
        if c.is_negative() {
            return Err(Error::InvalidCharacter {
                residual_terms: dom.len(),
                detail: format!("negative multiplicity {c} at highest weight {top}"),
            });
        }
        if !cache.contains_key(&top) {
            cache.insert(top.clone(), dominant_character(&g, &top)?);
        }
        for (w, m) in &cache[&top] {
            let e = dom.entry(w.clone()).or_insert_with(BigInt::zero);
            *e -= m * &c;
        }
        terms.push((top, c));
    }
    let dec = Decomposition {
        terms,
        residual: Vec::new(),
    };
    debug_assert_eq!(dec.total_dimension(&g).ok(), Some(a.size()));
    Ok(dec)
}

/// Subtracts full irreducible characters; keeps whatever cannot be peeled.
/// Used to report residuals for inputs that are not genuine characters.
pub fn decompose_with_residual(a: &WeightMultiset) -> Result<Decomposition> {
    let g = Arc::clone(&a.group);
    let mut rest = a.clone();
    let mut terms = Vec::new();
    for _ in 0..10_000 {
        let top = rest
            .entries
            .iter()
            .filter(|(w, m)| m.is_positive() && g.is_dominant(w))
            .map(|(w, _)| w.clone())
            .max_by(|x, y| g.height(x).cmp(&g.height(y)).then_with(|| x.cmp(y)));
        let Some(top) = top else { break };
        let c = rest.get(&top);
        let irr = irrep_weights(&g, &top)?;
        rest = rest.minus(&irr.scaled(&c))?;
        terms.push((top, c));
    }
    Ok(Decomposition {
        terms,
        residual: rest.sorted(),
    })
}

/// Brauer-Klimyk: V(λ) ⊗ V(μ) = Σ_{ν ∈ wt(μ)} sign · V(fold(λ+ν)).
pub fn tensor_decompose_klimyk(
    group: &Arc<Reductive>,
    lambda: &Weight,
    mu: &Weight,
) -> Result<Decomposition> {
    group.check_dominant(lambda)?;
    let wm = irrep_weights(group, mu)?;
    let mut acc: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for (nu, m) in wm.sorted() {
        let (w, sign, stab) = group.dominant_representative(&lambda.add(&nu));
        if stab {
            continue;
        }
        *acc.entry(w).or_insert_with(BigInt::zero) += m * BigInt::from(sign);
    }
    let mut terms: Vec<(Weight, BigInt)> = acc.into_iter().filter(|(_, m)| !m.is_zero()).collect();
    if terms.iter().any(|(_, m)| m.is_negative()) {
        return Err(Error::InvalidCharacter {
            residual_terms: terms.len(),
            detail: "negative Klimyk coefficient".into(),
        });
    }
    terms.sort_by(|(x, _), (y, _)| group.height(y).cmp(&group.height(x)).then_with(|| y.cmp(x)));
    Ok(Decomposition {
        terms,
        residual: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::FactorKind;

    fn su2() -> Arc<Reductive> {
        Arc::new(Reductive::new(&[FactorKind::SpecialUnitary(2)], &[]).unwrap())
    }

    #[test]
    fn adams_and_newton_agree_on_small_input() {
        let g = su2();
        let a = irrep_weights(&g, &Weight(vec![2, 0])).unwrap();
        for d in 0..5 {
            assert_eq!(sym_power_newton(&a, d), sym_power_enumerate(&a, d));
        }
    }

    #[test]
    fn wedge_of_standard_su2_is_trivial() {
        let g = su2();
        let a = irrep_weights(&g, &Weight(vec![1, 0])).unwrap();
        assert_eq!(wedge2(&a), WeightMultiset::trivial(&g));
    }

    #[test]
    fn negative_input_is_rejected() {
        let g = su2();
        let mut a = WeightMultiset::empty(&g);
        a.add(Weight(vec![0, 0]), BigInt::from(-1));
        assert!(matches!(decompose(&a), Err(Error::InvalidCharacter { .. })));
    }
}

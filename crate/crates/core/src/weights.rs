//! Root systems, integral weights, Weyl group folding and the Weyl dimension formula.
//!
//! Weights are integer vectors in ambient coordinates. Classical factors use
//! epsilon coordinates; spin-capable factors store doubled coordinates; E6 uses
//! Dynkin-label coordinates with an integral rescaled Gram matrix. A product
//! group ([`Reductive`]) concatenates factor coordinates and carries lattice
//! relations for special unitary factors.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, Result};
use crate::linalg::{self, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Sum of `k * o` added to self.
    pub fn add_scaled(&self, o: &Weight, k: i64) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + k * b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    E6,
}

impl std::str::FromStr for Family {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "G2" => Ok(Family::G2),
            "E6" => Ok(Family::E6),
            other => unsupported(format!("root system family {other}")),
        }
    }
}

/// A simple (or toral, for the degenerate low ranks) root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub ambient_dim: usize,
    /// Lattice scale: 2 when coordinates are doubled to hold spin weights.
    pub scale: i64,
    pub gram: Vec<Vec<i64>>,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    #[serde(skip)]
    pub fundamental_weights: Vec<Vec<Q>>,
}

/// Builds a root system of a supported family and rank.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::G2 => rank == 2,
        Family::E6 => rank == 6,
    };
    if !ok {
        return unsupported(format!("root system {family:?}{rank}"));
    }
    Ok(root_system(family, rank, 1))
}

/// Unchecked constructor that also admits the degenerate ranks used by small
/// classical groups: A0, B1, C1, D1 (a circle) and D2.
pub(crate) fn root_system(family: Family, rank: usize, scale: i64) -> RootSystem {
    let e = |n: usize, i: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let diff = |n: usize, i: usize, j: usize| -> Vec<i64> {
        let mut v = e(n, i);
        v[j] -= 1;
        v
    };
    let (ambient, simple, gram): (usize, Vec<Vec<i64>>, Vec<Vec<i64>>) = match family {
        Family::A => {
            let n = rank + 1;
            (n, (0..rank).map(|i| diff(n, i, i + 1)).collect(), ident(n))
        }
        Family::B => {
            let n = rank;
            let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(e(n, n - 1));
            (n, s, ident(n))
        }
        Family::C => {
            let n = rank;
            let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = e(n, n - 1);
            last[n - 1] = 2;
            s.push(last);
            (n, s, ident(n))
        }
        Family::D => {
            let n = rank;
            if n == 1 {
                (1, Vec::new(), ident(1))
            } else {
                let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut last = e(n, n - 2);
                last[n - 1] = 1;
                s.push(last);
                (n, s, ident(n))
            }
        }
        Family::G2 => (3, vec![vec![1, -1, 0], vec![-2, 1, 1]], ident(3)),
        Family::E6 => {
            let c = standard_cartan(Family::E6, 6);
            let inv = linalg::inverse(&linalg::from_i64(&c)).expect("E6 Cartan matrix invertible");
            let gram = inv
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            let y = x * q(3);
                            assert!(y.is_integer());
                            i64::try_from(y.to_integer()).unwrap()
                        })
                        .collect()
                })
                .collect();
            (6, c, gram)
        }
    };
    let simple: Vec<Weight> = simple.into_iter().map(|v| Weight(v).scale(scale)).collect();
    let mut rs = RootSystem {
        family,
        rank,
        ambient_dim: ambient,
        scale,
        gram,
        simple_roots: simple,
        positive_roots: Vec::new(),
        fundamental_weights: Vec::new(),
    };
    rs.fundamental_weights = rs.compute_fundamental_weights();
    rs.positive_roots = rs.compute_positive_roots();
    rs
}

fn ident(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Standard Cartan matrix with entries a_ij = 2(α_i, α_j)/(α_i, α_i) in Bourbaki numbering.
pub fn standard_cartan(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match family {
        Family::A | Family::B | Family::C => {
            for i in 0..n.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            if n >= 2 {
                match family {
                    Family::B => a[n - 1][n - 2] = -2,
                    Family::C => a[n - 2][n - 1] = -2,
                    _ => {}
                }
            }
        }
        Family::D => {
            if n >= 3 {
                for i in 0..n - 2 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
        }
        Family::G2 => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
        Family::E6 => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
                a[i][j] = -1;
                a[j][i] = -1;
            }
        }
    }
    a
}

/// Standard number of positive roots.
pub fn standard_positive_root_count(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank * (rank + 1) / 2,
        Family::B | Family::C => rank * rank,
        Family::D => rank * (rank - 1),
        Family::G2 => 6,
        Family::E6 => 36,
    }
}

impl RootSystem {
    pub fn ip(&self, a: &Weight, b: &Weight) -> i64 {
        gram_ip(&self.gram, &a.0, &b.0)
    }

    /// Cartan matrix a_ij = 2(α_i, α_j)/(α_i, α_i) computed from the simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = &self.simple_roots;
        s.iter()
            .map(|ai| {
                let nii = self.ip(ai, ai);
                s.iter().map(|aj| 2 * self.ip(ai, aj) / nii).collect()
            })
            .collect()
    }

    /// Coroot pairing ⟨w, α_i^∨⟩ for a rational vector.
    pub fn coroot_pairing_q(&self, w: &[Q], i: usize) -> Q {
        let a = &self.simple_roots[i];
        let num: Q = (0..self.ambient_dim)
            .flat_map(|r| (0..self.ambient_dim).map(move |c| (r, c)))
            .filter(|&(r, c)| self.gram[r][c] != 0 && a.0[c] != 0)
            .map(|(r, c)| &w[r] * q(self.gram[r][c] * a.0[c]))
            .sum();
        num * q(2) / q(self.ip(a, a))
    }

    fn compute_fundamental_weights(&self) -> Vec<Vec<Q>> {
        let r = self.simple_roots.len();
        if r == 0 {
            return Vec::new();
        }
        let c = self.cartan_matrix();
        // ⟨α_k, α_j^∨⟩ = c[j][k]; ω_i = Σ_k M_ik α_k with M = (cᵀ)^{-1}
        let ct: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|j| c[j][k]).collect()).collect();
        let m = linalg::inverse(&linalg::from_i64(&ct)).expect("Cartan matrix invertible");
        (0..r)
            .map(|i| {
                (0..self.ambient_dim)
                    .map(|x| {
                        (0..r)
                            .map(|k| &m[i][k] * q(self.simple_roots[k].0[x]))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    fn compute_positive_roots(&self) -> Vec<Weight> {
        let r = self.simple_roots.len();
        if r == 0 {
            return Vec::new();
        }
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue: VecDeque<Weight> = self.simple_roots.iter().cloned().collect();
        while let Some(a) = queue.pop_front() {
            if !seen.insert(a.clone()) {
                continue;
            }
            for s in &self.simple_roots {
                let k = 2 * self.ip(&a, s) / self.ip(s, s);
                let b = a.add_scaled(s, -k);
                if !seen.contains(&b) {
                    queue.push_back(b);
                }
            }
        }
        // ρ = Σ ω_i pairs positively with exactly the positive roots.
        let rho: Vec<Q> = (0..self.ambient_dim)
            .map(|x| self.fundamental_weights.iter().map(|w| w[x].clone()).sum())
            .collect();
        let mut pos: Vec<Weight> = seen
            .into_iter()
            .filter(|a| {
                let v: Q = (0..self.ambient_dim)
                    .flat_map(|i| (0..self.ambient_dim).map(move |j| (i, j)))
                    .map(|(i, j)| &rho[i] * q(self.gram[i][j] * a.0[j]))
                    .sum();
                v > Q::zero()
            })
            .collect();
        pos.sort();
        pos
    }
}

pub(crate) fn gram_ip(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                s += ai * g[i][j] * bj;
            }
        }
    }
    s
}

/// Factor of a product group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    /// A central circle U(1); its single coordinate is the charge.
    Circle,
    Unitary(usize),
    SpecialUnitary(usize),
    Symplectic(usize),
    Orthogonal(usize),
    Spin(usize),
    G2,
    E6,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Circle => write!(f, "U(1)"),
            FactorKind::Unitary(n) => write!(f, "U({n})"),
            FactorKind::SpecialUnitary(n) => write!(f, "SU({n})"),
            FactorKind::Symplectic(n) => write!(f, "Sp({n})"),
            FactorKind::Orthogonal(n) => write!(f, "SO({n})"),
            FactorKind::Spin(n) => write!(f, "Spin({n})"),
            FactorKind::G2 => write!(f, "G2"),
            FactorKind::E6 => write!(f, "E6"),
        }
    }
}

impl FactorKind {
    pub fn root_system(&self) -> Result<RootSystem> {
        Ok(match *self {
            FactorKind::Circle => root_system(Family::A, 0, 1),
            FactorKind::Unitary(n) | FactorKind::SpecialUnitary(n) => {
                if n == 0 {
                    return domain("unitary group of degree 0");
                }
                root_system(Family::A, n - 1, 1)
            }
            FactorKind::Symplectic(n) => {
                if n == 0 {
                    return domain("Sp(0)");
                }
                root_system(Family::C, n, 1)
            }
            FactorKind::Orthogonal(n) => match n {
                0 | 1 => return domain(format!("SO({n})")),
                _ if n % 2 == 1 => root_system(Family::B, n / 2, 1),
                _ => root_system(Family::D, n / 2, 1),
            },
            FactorKind::Spin(n) => match n {
                0..=2 => return domain(format!("Spin({n})")),
                _ if n % 2 == 1 => root_system(Family::B, n / 2, 2),
                _ => root_system(Family::D, n / 2, 2),
            },
            FactorKind::G2 => root_system(Family::G2, 2, 1),
            FactorKind::E6 => root_system(Family::E6, 6, 1),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub offset: usize,
    pub dim: usize,
    pub roots: RootSystem,
}

/// Lattice relation: weights are taken modulo `vector`, normalized so that
/// coordinate `pivot` vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub pivot: usize,
    pub vector: Vec<i64>,
}

/// Weight data of a compact connected group given as a product of factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reductive {
    pub name: String,
    pub factors: Vec<Factor>,
    pub dim: usize,
    pub gram: Vec<Vec<i64>>,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub two_rho: Weight,
    pub relations: Vec<Relation>,
    simple_norms: Vec<i64>,
}

impl Reductive {
    /// Builds the product of `kinds`; each pair in `joint_special` (two unitary
    /// factors) is replaced by its determinant-one subgroup S(U × U).
    pub fn new(kinds: &[FactorKind], joint_special: &[(usize, usize)]) -> Result<Self> {
        let mut factors = Vec::new();
        let mut offset = 0;
        for k in kinds {
            let roots = k.root_system()?;
            let dim = roots.ambient_dim;
            factors.push(Factor {
                kind: k.clone(),
                offset,
                dim,
                roots,
            });
            offset += dim;
        }
        let dim = offset;
        let mut gram = vec![vec![0i64; dim]; dim];
        for f in &factors {
            for i in 0..f.dim {
                for j in 0..f.dim {
                    gram[f.offset + i][f.offset + j] = f.roots.gram[i][j];
                }
            }
        }
        let mut relations = Vec::new();
        let mut supports: Vec<Vec<usize>> = Vec::new();
        for f in &factors {
            if let FactorKind::SpecialUnitary(_) = f.kind {
                supports.push((f.offset..f.offset + f.dim).collect());
            }
        }
        for &(a, b) in joint_special {
            let (fa, fb) = match (factors.get(a), factors.get(b)) {
                (Some(x), Some(y)) => (x, y),
                _ => return domain("joint special pair refers to a missing factor"),
            };
            for f in [fa, fb] {
                if !matches!(f.kind, FactorKind::Unitary(_)) {
                    return domain("S(U x U) requires two unitary factors");
                }
            }
            let mut s: Vec<usize> = (fa.offset..fa.offset + fa.dim).collect();
            s.extend(fb.offset..fb.offset + fb.dim);
            supports.push(s);
        }
        for s in supports {
            let n = s.len() as i64;
            for &i in &s {
                for &j in &s {
                    gram[i][j] = if i == j { n - 1 } else { -1 };
                }
            }
            let mut v = vec![0; dim];
            for &i in &s {
                v[i] = 1;
            }
            relations.push(Relation {
                pivot: *s.last().unwrap(),
                vector: v,
            });
        }
        let embed = |f: &Factor, w: &Weight| -> Weight {
            let mut v = vec![0; dim];
            v[f.offset..f.offset + f.dim].copy_from_slice(&w.0);
            Weight(v)
        };
        let mut simple_roots = Vec::new();
        let mut positive_roots = Vec::new();
        for f in &factors {
            simple_roots.extend(f.roots.simple_roots.iter().map(|a| embed(f, a)));
            positive_roots.extend(f.roots.positive_roots.iter().map(|a| embed(f, a)));
        }
        let mut two_rho = Weight::zero(dim);
        for a in &positive_roots {
            two_rho = two_rho.add(a);
        }
        let simple_norms = simple_roots
            .iter()
            .map(|a| gram_ip(&gram, &a.0, &a.0))
            .collect();
        let name = kinds
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join("x");
        let mut r = Reductive {
            name,
            factors,
            dim,
            gram,
            simple_roots,
            positive_roots,
            two_rho,
            relations,
            simple_norms,
        };
        if !joint_special.is_empty() {
            r.name = format!("S[{}]", r.name);
        }
        Ok(r)
    }

    /// Wraps a single root system as a group.
    pub fn from_root_system(rs: &RootSystem) -> Self {
        let dim = rs.ambient_dim;
        let factor = Factor {
            kind: match rs.family {
                Family::G2 => FactorKind::G2,
                Family::E6 => FactorKind::E6,
                Family::A => FactorKind::Unitary(rs.rank + 1),
                Family::C => FactorKind::Symplectic(rs.rank),
                Family::B if rs.scale == 2 => FactorKind::Spin(2 * rs.rank + 1),
                Family::B => FactorKind::Orthogonal(2 * rs.rank + 1),
                Family::D if rs.scale == 2 => FactorKind::Spin(2 * rs.rank),
                Family::D => FactorKind::Orthogonal(2 * rs.rank),
            },
            offset: 0,
            dim,
            roots: rs.clone(),
        };
        let mut two_rho = Weight::zero(dim);
        for a in &rs.positive_roots {
            two_rho = two_rho.add(a);
        }
        Reductive {
            name: format!("{:?}{}", rs.family, rs.rank),
            factors: vec![factor],
            dim,
            gram: rs.gram.clone(),
            simple_roots: rs.simple_roots.clone(),
            positive_roots: rs.positive_roots.clone(),
            two_rho,
            relations: Vec::new(),
            simple_norms: rs.simple_roots.iter().map(|a| rs.ip(a, a)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn check_len(&self, w: &Weight) -> Result<()> {
        if w.len() != self.dim {
            return domain(format!(
                "weight {w} has length {} but {} expects {}",
                w.len(),
                self.name,
                self.dim
            ));
        }
        Ok(())
    }

    pub fn normalize(&self, w: &mut Weight) {
        for r in &self.relations {
            let c = w.0[r.pivot];
            if c != 0 {
                for (x, v) in w.0.iter_mut().zip(&r.vector) {
                    *x -= c * v;
                }
            }
        }
    }

    pub fn normalized(&self, mut w: Weight) -> Weight {
        self.normalize(&mut w);
        w
    }

    pub fn ip(&self, a: &Weight, b: &Weight) -> i64 {
        gram_ip(&self.gram, &a.0, &b.0)
    }

    /// ⟨w, α_i^∨⟩.
    pub fn pairing(&self, w: &Weight, i: usize) -> i64 {
        let num = 2 * self.ip(w, &self.simple_roots[i]);
        let den = self.simple_norms[i];
        debug_assert_eq!(num % den, 0, "non-integral pairing of {w}");
        num / den
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.rank()).all(|i| self.pairing(w, i) >= 0)
    }

    /// Height functional (w, 2ρ); strictly positive on positive roots.
    pub fn height(&self, w: &Weight) -> i64 {
        self.ip(w, &self.two_rho)
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let k = self.pairing(w, i);
        self.normalized(w.add_scaled(&self.simple_roots[i], -k))
    }

    /// Dominant element of the (linear) Weyl orbit of `w`.
    pub fn dominant_fold(&self, w: &Weight) -> Weight {
        let mut x = self.normalized(w.clone());
        loop {
            match (0..self.rank()).find(|&i| self.pairing(&x, i) < 0) {
                Some(i) => x = self.reflect(&x, i),
                None => return x,
            }
        }
    }

    /// Folds `w + ρ` into the dominant chamber: returns `(w', sign, stabilized)`
    /// with `w' + ρ` dominant, `sign` the determinant of the folding element and
    /// `stabilized` true when `w' + ρ` lies on a wall.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, i8, bool) {
        let mut x = w.scale(2).add(&self.two_rho);
        let mut sign = 1i8;
        loop {
            let neg = (0..self.rank()).find(|&i| {
                let p = 2 * self.ip(&x, &self.simple_roots[i]) / self.simple_norms[i];
                p < 0
            });
            match neg {
                Some(i) => {
                    let p = 2 * self.ip(&x, &self.simple_roots[i]) / self.simple_norms[i];
                    x = x.add_scaled(&self.simple_roots[i], -p);
                    sign = -sign;
                }
                None => break,
            }
        }
        let stabilized = (0..self.rank()).any(|i| self.ip(&x, &self.simple_roots[i]) == 0);
        let half = x.sub(&self.two_rho);
        debug_assert!(half.0.iter().all(|c| c % 2 == 0));
        let w2 = Weight(half.0.iter().map(|c| c / 2).collect());
        (self.normalized(w2), sign, stabilized)
    }

    /// Full Weyl orbit of `w` (normalized weights, sorted).
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let start = self.normalized(w.clone());
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for i in 0..self.rank() {
                if self.pairing(&x, i) != 0 {
                    let y = self.reflect(&x, i);
                    if !seen.contains(&y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_len(w)?;
        if !self.is_dominant(w) {
            return domain(format!("weight {w} is not dominant for {}", self.name));
        }
        Ok(())
    }

    /// Weyl dimension formula Π_{α>0} (λ+ρ, α)/(ρ, α).
    pub fn weyl_dim(&self, label: &Weight) -> Result<BigInt> {
        self.check_dominant(label)?;
        let lr = label.scale(2).add(&self.two_rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for a in &self.positive_roots {
            num *= BigInt::from(self.ip(&lr, a));
            den *= BigInt::from(self.ip(&self.two_rho, a));
        }
        if den.is_zero() {
            return domain("degenerate ρ");
        }
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }

    /// Fundamental weights of every factor embedded in ambient coordinates.
    pub fn fundamental_weights(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for f in &self.factors {
            for w in &f.roots.fundamental_weights {
                let mut v = vec![Q::zero(); self.dim];
                for (i, x) in w.iter().enumerate() {
                    v[f.offset + i] = x.clone();
                }
                out.push(v);
            }
        }
        out
    }

    /// Dynkin labels ⟨λ, α_i^∨⟩ for every simple root.
    pub fn dynkin_labels(&self, w: &Weight) -> Vec<i64> {
        (0..self.rank()).map(|i| self.pairing(w, i)).collect()
    }

    /// Weight with the given Dynkin labels and zero central part, if integral.
    pub fn from_dynkin_labels(&self, labels: &[i64]) -> Result<Weight> {
        if labels.len() != self.rank() {
            return domain("label count differs from rank");
        }
        let fw = self.fundamental_weights();
        let mut v = vec![Q::zero(); self.dim];
        for (l, w) in labels.iter().zip(&fw) {
            for (x, y) in v.iter_mut().zip(w) {
                *x += y * q(*l);
            }
        }
        // Unitary blocks are lifted so their last coordinate vanishes.
        for f in &self.factors {
            if matches!(
                f.kind,
                FactorKind::Unitary(_) | FactorKind::SpecialUnitary(_)
            ) {
                let c = v[f.offset + f.dim - 1].clone();
                for x in &mut v[f.offset..f.offset + f.dim] {
                    *x -= &c;
                }
            }
        }
        for r in &self.relations {
            let c = v[r.pivot].clone();
            for (x, rv) in v.iter_mut().zip(&r.vector) {
                *x -= &c * q(*rv);
            }
        }
        let mut out = Vec::with_capacity(self.dim);
        for x in &v {
            if !x.is_integer() {
                return domain("Dynkin labels do not give an integral weight in these coordinates");
            }
            out.push(
                i64::try_from(x.to_integer()).map_err(|_| {
                    crate::error::Error::Domain("weight coordinate overflow".into())
                })?,
            );
        }
        Ok(self.normalized(Weight(out)))
    }
}

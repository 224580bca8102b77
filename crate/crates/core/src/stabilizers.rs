//! Centralizers in sp(2) and the stabilizer groups `K_t` of central
//! functionals, built as [`GroupSpec`]s for the multiplicity-free checks.
//!
//! Quaternionic matrices are realized as real matrices through the left
//! regular representation of ℍ, so every computation is exact over ℚ. The
//! complexification unit `b` of a root-vector relation is handled by
//! doubling: `X + bY` is the pair `(X, Y)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::carcano::{self, ActionKind, GroupSpec, MFReport, RepAction};
use crate::error::{domain, unsupported, Error, Result};
use crate::linalg::{self, q, Matrix, Q};
use crate::nilpotent::{
    division::Composition, is_square_integrable, CentralFunctional, NilpotentAlgebra,
};
use crate::repcalc;
use crate::tables::{self, HeisenbergField, Rank, TableId};
use crate::weights::{FactorKind, Weight};

/// Quaternion with coefficients on `1, i, j, k`.
pub type Quaternion = [i64; 4];

pub const ONE: Quaternion = [1, 0, 0, 0];
pub const I: Quaternion = [0, 1, 0, 0];
pub const J: Quaternion = [0, 0, 1, 0];
pub const K: Quaternion = [0, 0, 0, 1];
pub const ZERO: Quaternion = [0, 0, 0, 0];
const NEG_ONE: Quaternion = [-1, 0, 0, 0];

fn qadd(a: Quaternion, b: Quaternion, s: i64) -> Quaternion {
    [
        a[0] + s * b[0],
        a[1] + s * b[1],
        a[2] + s * b[2],
        a[3] + s * b[3],
    ]
}

/// Real `4p × 4p` matrix of a `p × p` quaternionic matrix acting on ℍ^p by
/// left multiplication.
pub fn quaternionic_matrix(entries: &[Vec<Quaternion>]) -> Matrix {
    let h = Composition::new(HeisenbergField::H).expect("quaternion table");
    let p = entries.len();
    let mut m = linalg::zeros(4 * p, 4 * p);
    for (r, row) in entries.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            for (a, &xa) in x.iter().enumerate() {
                if xa == 0 {
                    continue;
                }
                for b in 0..4 {
                    let (e, s) = h.unit_product(a, b);
                    m[4 * r + e][4 * c + b] += q(xa * s);
                }
            }
        }
    }
    m
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
        .collect()
}

fn scale(a: &Matrix, c: &Q) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    linalg::sub(&linalg::mul(a, b), &linalg::mul(b, a))
}

fn flatten(m: &Matrix) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

/// A real matrix Lie algebra given by a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLieAlgebra {
    pub name: String,
    pub size: usize,
    pub basis: Vec<Matrix>,
    flat: Vec<Vec<Q>>,
}

impl MatrixLieAlgebra {
    /// Validates linear independence and closure under the bracket.
    pub fn new(name: &str, basis: Vec<Matrix>) -> Result<Self> {
        let size = basis.first().map_or(0, |b| b.len());
        if basis
            .iter()
            .any(|b| b.len() != size || b.iter().any(|r| r.len() != size))
        {
            return domain(format!("{name}: basis matrices must be square of one size"));
        }
        let flat: Vec<Vec<Q>> = basis.iter().map(flatten).collect();
        if linalg::rank(&flat) != basis.len() {
            return domain(format!("{name}: basis is linearly dependent"));
        }
        let alg = MatrixLieAlgebra {
            name: name.into(),
            size,
            basis,
            flat,
        };
        alg.check_closure()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Every `[b_i, b_j]` lies in the rational span of the basis.
    pub fn check_closure(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if self
                    .coordinates(&commutator(&self.basis[i], &self.basis[j]))
                    .is_none()
                {
                    return domain(format!("{}: [b{i}, b{j}] leaves the span", self.name));
                }
            }
        }
        Ok(())
    }

    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Q>> {
        if x.len() != self.size {
            return None;
        }
        linalg::solve_in_span(&self.flat, &flatten(x))
    }

    pub fn element(&self, coords: &[Q]) -> Matrix {
        let mut m = linalg::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = add(&m, &scale(b, c));
            }
        }
        m
    }
}

/// sp(2) as 2×2 quaternionic matrices `ξ` with `ξ + ξ* = 0`.
pub fn sp2() -> MatrixLieAlgebra {
    let d1 = |x| quaternionic_matrix(&[vec![x, ZERO], vec![ZERO, ZERO]]);
    let d2 = |x| quaternionic_matrix(&[vec![ZERO, ZERO], vec![ZERO, x]]);
    let sym = |x| quaternionic_matrix(&[vec![ZERO, x], vec![x, ZERO]]);
    let basis = vec![
        d1(I),
        d1(J),
        d1(K),
        d2(I),
        d2(J),
        d2(K),
        quaternionic_matrix(&[vec![ZERO, ONE], vec![NEG_ONE, ZERO]]),
        sym(I),
        sym(J),
        sym(K),
    ];
    MatrixLieAlgebra::new("sp(2)", basis).expect("sp(2) basis")
}

/// `z_a = diag(a1 i, a2 i)` in sp(2).
pub fn z_a(a1: &Q, a2: &Q) -> Matrix {
    let alg = sp2();
    let mut c = vec![Q::zero(); 10];
    c[0] = a1.clone();
    c[3] = a2.clone();
    alg.element(&c)
}

/// Fingerprint of a subalgebra: dimension, derived dimension, centre
/// dimension, and the dimension of the vectors fixed by the derived algebra
/// in the defining representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived: usize,
    pub centre: usize,
    pub fixed: usize,
}

impl Fingerprint {
    pub fn tag(&self) -> String {
        match (self.dim, self.derived, self.centre) {
            (2, 0, 2) => "cartan".into(),
            (d, 0, _) => format!("abelian({d})"),
            (4, 3, 1) if self.fixed == 0 => "u(2)".into(),
            (4, 3, 1) => "sp(1)⊕u(1)".into(),
            (10, 10, 0) => "sp(2)".into(),
            (d, e, c) => format!("dim {d}, derived {e}, centre {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralizerResult {
    #[serde(skip)]
    pub input: Matrix,
    #[serde(skip)]
    pub basis: Vec<Matrix>,
    pub dimension: usize,
    pub fingerprint: Fingerprint,
    pub tag: String,
}

/// Kernel of `ad(x)` on `alg`.
pub fn centralizer(alg: &MatrixLieAlgebra, x: &Matrix) -> Result<CentralizerResult> {
    if alg.coordinates(x).is_none() {
        return domain(format!("element outside {}", alg.name));
    }
    let n = alg.dim();
    let mut ad = linalg::zeros(n, n);
    for (j, b) in alg.basis.iter().enumerate() {
        let c = alg
            .coordinates(&commutator(x, b))
            .ok_or_else(|| Error::Domain(format!("{} is not closed", alg.name)))?;
        for (i, v) in c.into_iter().enumerate() {
            ad[i][j] = v;
        }
    }
    let basis: Vec<Matrix> = linalg::nullspace(&ad, n)
        .iter()
        .map(|c| alg.element(c))
        .collect();
    let fingerprint = fingerprint(alg.size, &basis);
    Ok(CentralizerResult {
        input: x.clone(),
        dimension: basis.len(),
        tag: fingerprint.tag(),
        basis,
        fingerprint,
    })
}

fn fingerprint(size: usize, basis: &[Matrix]) -> Fingerprint {
    let k = basis.len();
    let mut brackets = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            brackets.push(flatten(&commutator(&basis[i], &basis[j])));
        }
    }
    let derived = if brackets.is_empty() {
        0
    } else {
        linalg::rank(&brackets)
    };
    // c = Σ x_i b_i is central iff Σ x_i [b_i, b_j] = 0 for all j
    let mut rows: Matrix = Vec::new();
    for bj in basis {
        let cols: Vec<Vec<Q>> = basis
            .iter()
            .map(|bi| flatten(&commutator(bi, bj)))
            .collect();
        for r in 0..size * size {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let centre = if k == 0 {
        0
    } else {
        linalg::nullspace(&rows, k).len()
    };
    let derived_basis: Vec<Matrix> = {
        let mut span: Vec<Vec<Q>> = Vec::new();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let c = commutator(&basis[i], &basis[j]);
                let mut trial = span.clone();
                trial.push(flatten(&c));
                if linalg::rank(&trial) > span.len() {
                    span = trial;
                    out.push(c);
                }
            }
        }
        out
    };
    let stacked: Matrix = derived_basis.iter().flatten().cloned().collect();
    let fixed = if stacked.is_empty() {
        size
    } else {
        linalg::nullspace(&stacked, size).len()
    };
    Fingerprint {
        dim: k,
        derived,
        centre,
        fixed,
    }
}

/// One of the five centralizer cases for `z_a = diag(a1 i, a2 i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZaCase {
    FirstZero,
    SecondZero,
    Regular,
    Equal,
    Opposite,
}

impl ZaCase {
    pub const ALL: [ZaCase; 5] = [
        ZaCase::FirstZero,
        ZaCase::SecondZero,
        ZaCase::Regular,
        ZaCase::Equal,
        ZaCase::Opposite,
    ];

    pub fn classify(a1: &Q, a2: &Q) -> Result<ZaCase> {
        Ok(match (a1.is_zero(), a2.is_zero()) {
            (true, true) => return domain("z_a = 0 is not one of the listed cases"),
            (true, false) => ZaCase::FirstZero,
            (false, true) => ZaCase::SecondZero,
            _ if a1 == a2 => ZaCase::Equal,
            _ if *a1 == -a2.clone() => ZaCase::Opposite,
            _ => ZaCase::Regular,
        })
    }

    /// A representative `(a1, a2)`.
    pub fn sample(self) -> (Q, Q) {
        match self {
            ZaCase::FirstZero => (q(0), q(3)),
            ZaCase::SecondZero => (q(2), q(0)),
            ZaCase::Regular => (q(1), q(2)),
            ZaCase::Equal => (q(2), q(2)),
            ZaCase::Opposite => (q(2), q(-2)),
        }
    }

    /// The extra elements beyond the Cartan subalgebra, as quaternionic matrices.
    pub fn listed_extras(self) -> Vec<Matrix> {
        let m = |a, b, c, d| quaternionic_matrix(&[vec![a, b], vec![c, d]]);
        match self {
            ZaCase::FirstZero => vec![m(J, ZERO, ZERO, ZERO), m(K, ZERO, ZERO, ZERO)],
            ZaCase::SecondZero => vec![m(ZERO, ZERO, ZERO, J), m(ZERO, ZERO, ZERO, K)],
            ZaCase::Regular => vec![],
            ZaCase::Equal => vec![m(ZERO, ONE, NEG_ONE, ZERO), m(ZERO, I, I, ZERO)],
            ZaCase::Opposite => vec![m(ZERO, J, J, ZERO), m(ZERO, K, K, ZERO)],
        }
    }
}

/// Cartan subalgebra of sp(2): `diag(i, 0)`, `diag(0, i)`.
pub fn sp2_cartan() -> [Matrix; 2] {
    [
        quaternionic_matrix(&[vec![I, ZERO], vec![ZERO, ZERO]]),
        quaternionic_matrix(&[vec![ZERO, ZERO], vec![ZERO, I]]),
    ]
}

/// `X + bY` in the complexification.
#[derive(Clone, Debug, PartialEq)]
pub struct Complexified {
    pub re: Matrix,
    pub im: Matrix,
}

/// Outcome for one listed root vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCheck {
    pub name: String,
    /// Listed functional, coefficients on `ε1, ε2`.
    pub expected: [i64; 2],
    /// `λ` with `ad(H) E = −b λ(H) E` on the Cartan basis, if `E` is an eigenvector.
    pub measured: Option<[String; 2]>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub checks: Vec<RootCheck>,
}

impl RootReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// `λ(H)` with `[H, X] = λ Y` and `[H, Y] = −λ X`, if such `λ` exists.
fn eigen_coefficient(h: &Matrix, e: &Complexified) -> Option<Q> {
    let hx = commutator(h, &e.re);
    let hy = commutator(h, &e.im);
    let (fy, fx) = (flatten(&e.im), flatten(&e.re));
    let fhx = flatten(&hx);
    let lambda = match fy.iter().position(|y| !y.is_zero()) {
        Some(p) => &fhx[p] / &fy[p],
        None => {
            let p = fx.iter().position(|x| !x.is_zero())?;
            -(&flatten(&hy)[p] / &fx[p])
        }
    };
    let ok = hx == scale(&e.im, &lambda) && hy == scale(&e.re, &-lambda.clone());
    ok.then_some(lambda)
}

/// Listed root vectors of sp(2) and the Cartan elements, checked as exact
/// eigenvectors of the Cartan subalgebra.
pub fn verify_root_vectors_sp2() -> RootReport {
    let cartan = sp2_cartan();
    let m = |a, b, c, d| quaternionic_matrix(&[vec![a, b], vec![c, d]]);
    let mut items: Vec<(String, [i64; 2], Complexified)> = Vec::new();
    for s in [1i64, -1] {
        let sign = if s > 0 { "+" } else { "-" };
        let kb = qadd(ZERO, K, s);
        let ib = qadd(ZERO, I, s);
        items.push((
            format!("diag(j {sign} bk, 0)"),
            [s, 0],
            Complexified {
                re: m(J, ZERO, ZERO, ZERO),
                im: m(kb, ZERO, ZERO, ZERO),
            },
        ));
        items.push((
            format!("diag(0, j {sign} bk)"),
            [0, s],
            Complexified {
                re: m(ZERO, ZERO, ZERO, J),
                im: m(ZERO, ZERO, ZERO, kb),
            },
        ));
        items.push((
            format!("offdiag(1 {sign} bi, -1 {sign} bi)"),
            [s, -s],
            Complexified {
                re: m(ZERO, ONE, NEG_ONE, ZERO),
                im: m(ZERO, ib, ib, ZERO),
            },
        ));
        items.push((
            format!("offdiag(j {sign} bk, j {sign} bk)"),
            [s, s],
            Complexified {
                re: m(ZERO, J, J, ZERO),
                im: m(ZERO, kb, kb, ZERO),
            },
        ));
    }
    for (i, h) in cartan.iter().enumerate() {
        items.push((
            format!("cartan {}", i + 1),
            [0, 0],
            Complexified {
                re: h.clone(),
                im: linalg::zeros(8, 8),
            },
        ));
    }
    let checks = items
        .into_iter()
        .map(|(name, expected, e)| {
            let lam: Option<Vec<Q>> = if expected == [0, 0] {
                cartan
                    .iter()
                    .all(|h| {
                        linalg::is_zero(&commutator(h, &e.re))
                            && linalg::is_zero(&commutator(h, &e.im))
                    })
                    .then(|| vec![Q::zero(), Q::zero()])
            } else {
                cartan.iter().map(|h| eigen_coefficient(h, &e)).collect()
            };
            let ok = lam
                .as_ref()
                .is_some_and(|l| positive_multiple(l, &expected));
            RootCheck {
                name,
                expected,
                measured: lam.map(|l| [l[0].to_string(), l[1].to_string()]),
                ok,
            }
        })
        .collect();
    RootReport { checks }
}

/// `l = c · e` with `c > 0` (or both zero).
fn positive_multiple(l: &[Q], e: &[i64; 2]) -> bool {
    if *e == [0, 0] {
        return l.iter().all(Zero::is_zero);
    }
    let p = e.iter().position(|&x| x != 0).expect("nonzero");
    let c = &l[p] / q(e[p]);
    c.is_positive() && l.iter().zip(e).all(|(x, &y)| *x == &c * q(y))
}

/// Which functional `t` the stabilizer is taken for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TCase {
    /// A generic functional.
    Generic,
    /// `t` pairing with `z_a = diag(a1 i, a2 i)` in sp(2) (entry 18).
    Diagonal(Q, Q),
}

impl fmt::Display for TCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TCase::Generic => write!(f, "generic"),
            TCase::Diagonal(a, b) => write!(f, "z_a = diag({a} i, {b} i)"),
        }
    }
}

/// Rows with a stabilizer construction.
pub const STABILIZER_ROWS: [(TableId, &str); 9] = [
    (TableId::IpmsUbd, "1"),
    (TableId::IpmsUbd, "11a"),
    (TableId::IpmsUbd, "11b"),
    (TableId::IpmsUbd, "11c"),
    (TableId::IndVin, "17"),
    (TableId::IndVin, "18"),
    (TableId::IndVin, "20a"),
    (TableId::IndVin, "20b"),
    (TableId::IndVin, "22"),
];

fn param(rank: &Rank, p: &str) -> Result<usize> {
    match rank.get(p) {
        Some(&v) if v >= 1 => Ok(v as usize),
        _ => domain(format!("rank needs parameter {p} >= 1")),
    }
}

fn charged(kind: ActionKind, circle: usize, c: i64) -> RepAction {
    RepAction::charged(kind, &[(circle, c)])
}

/// Two copies of the standard module of factor `f`, one charged under each of
/// the circles 0 and 1.
fn two_torus_sum(f: usize) -> RepAction {
    RepAction::new(ActionKind::DirectSum(vec![
        charged(ActionKind::Standard(f), 0, 1),
        charged(ActionKind::Standard(f), 1, 1),
    ]))
}

/// The stabilizer `K_t` with its action on `v`.
pub fn stabilizer_spec(table: TableId, row: &str, rank: &Rank, case: &TCase) -> Result<GroupSpec> {
    use FactorKind::*;
    if !STABILIZER_ROWS.contains(&(table, row)) {
        return unsupported(format!(
            "no stabilizer construction for {} row {row}",
            table.name()
        ));
    }
    let trow = tables::table(table)?.row(row)?.clone();
    if !trow.is_admissible(rank)? {
        return domain(format!(
            "{} row {row}: rank {} is not admissible",
            table.name(),
            tables::show_rank(rank)
        ));
    }
    if matches!(case, TCase::Diagonal(..)) && row != "18" {
        return unsupported(format!("t-case {case} applies to entry 18 only"));
    }
    let spec = match row {
        "1" => {
            let n = param(rank, "n")?;
            let parts = (0..n).map(|i| charged(ActionKind::Trivial, i, 1)).collect();
            GroupSpec::new(
                &vec![Circle; n],
                &[],
                RepAction::new(ActionKind::DirectSum(parts)),
            )?
        }
        "11a" | "11b" | "11c" => {
            let (n, m) = (param(rank, "n")?, param(rank, "m")?);
            if row == "11a" {
                GroupSpec::new(
                    &[Symplectic(n), Circle, Symplectic(m)],
                    &[],
                    charged(ActionKind::Standard(0), 1, 1),
                )?
            } else {
                // the finite part {±1} of the generic stabilizer is dropped
                GroupSpec::new(
                    &[Symplectic(n), Symplectic(m)],
                    &[],
                    RepAction::new(ActionKind::Standard(0)),
                )?
            }
        }
        "17" => {
            let n = param(rank, "n")?;
            GroupSpec::new(
                &[Circle, Symplectic(n)],
                &[],
                charged(ActionKind::Standard(1), 0, 1),
            )?
        }
        "18" => {
            let n = param(rank, "n")?;
            let (a1, a2) = match case {
                TCase::Generic => ZaCase::Regular.sample(),
                TCase::Diagonal(a, b) => (a.clone(), b.clone()),
            };
            let alg = NilpotentAlgebra::matrix_heisenberg(HeisenbergField::H, 2, n)?;
            let mut t = vec![Q::zero(); alg.dim_z];
            t[0] = a1.clone();
            t[3] = a2.clone();
            if !is_square_integrable(&alg, &CentralFunctional::new(t))? {
                return domain(format!("entry 18, {case}: not square-integrable"));
            }
            let c = centralizer(&sp2(), &z_a(&a1, &a2))?;
            match c.tag.as_str() {
                "u(2)" => GroupSpec::new(
                    &[Unitary(2), Symplectic(n)],
                    &[],
                    RepAction::new(ActionKind::Tensor(0, 1)),
                )?,
                "cartan" => {
                    GroupSpec::new(&[Circle, Circle, Symplectic(n)], &[], two_torus_sum(2))?
                }
                other => {
                    return domain(format!("entry 18, {case}: unexpected centralizer {other}"))
                }
            }
        }
        "20a" => {
            let n = param(rank, "n")?;
            let action = RepAction::new(ActionKind::DirectSum(vec![
                charged(ActionKind::Standard(1), 0, 1),
                charged(ActionKind::Standard(1), 0, -1),
            ]));
            GroupSpec::new(&[Circle, SpecialUnitary(n)], &[], action)?
        }
        "20b" => {
            let n = param(rank, "n")?;
            GroupSpec::new(&[Circle, Circle, SpecialUnitary(n)], &[], two_torus_sum(2))?
        }
        "22" => {
            let n = param(rank, "n")?;
            GroupSpec::new(&[Circle, Circle, Symplectic(n)], &[], two_torus_sum(2))?
        }
        _ => unreachable!("listed in STABILIZER_ROWS"),
    };
    if let Some(v) = &trow.v_real_dim {
        let real = trow.eval(v, rank)?;
        let complex = spec.dim()?;
        if BigInt::from(real) != &complex * 2 {
            return domain(format!(
                "{} row {row}: stabilizer acts on dimension {complex}, v has real dimension {real}",
                table.name()
            ));
        }
    }
    Ok(spec.with_source(table.name(), row))
}

/// Labels of `S^d(v*)` for entry 20a at rank `n`, from the closed form
/// `Σ_{p+2q = m1+m2} (charge m1−m2) ⊗ (p, q, 0, …)` over `m1 + m2 = d`,
/// dualized.
pub fn entry_20a_pattern(spec: &GroupSpec, n: usize, d: usize) -> Result<BTreeMap<Weight, BigInt>> {
    if n < 3 {
        return domain("entry 20a needs n >= 3");
    }
    let g = &spec.group;
    let mut out = BTreeMap::new();
    for m1 in 0..=d {
        let m2 = d - m1;
        for (p, qq) in pattern_terms(m1, m2) {
            let mut labels = vec![0; n - 1];
            // dual of (p, q, 0, …) is (…, 0, q, p)
            labels[n - 2] += p as i64;
            labels[n - 3] += qq as i64;
            let mut w = g.from_dynkin_labels(&labels)?;
            w.0[g.factors[0].offset] = m2 as i64 - m1 as i64;
            *out.entry(g.normalized(w)).or_insert_with(BigInt::zero) += BigInt::one();
        }
    }
    Ok(out)
}

/// `(p, q)` with `p + 2q = m1 + m2`, `q ≤ min(m1, m2)`.
pub fn pattern_terms(m1: usize, m2: usize) -> Vec<(usize, usize)> {
    (0..=m1.min(m2)).map(|qq| (m1 + m2 - 2 * qq, qq)).collect()
}

/// The bigraded piece `S^{m1}(C^n_+*) ⊗ S^{m2}(C^n_-*)` of entry 20a.
pub fn entry_20a_bigraded(
    spec: &GroupSpec,
    m1: usize,
    m2: usize,
) -> Result<BTreeMap<Weight, BigInt>> {
    let ActionKind::DirectSum(parts) = &spec.action.kind else {
        return domain("entry 20a spec is a direct sum");
    };
    let plus = repcalc::dual(&parts[0].weights(&spec.group)?);
    let minus = repcalc::dual(&parts[1].weights(&spec.group)?);
    let piece = repcalc::tensor(
        &repcalc::sym_power(&plus, m1),
        &repcalc::sym_power(&minus, m2),
    )?;
    Ok(repcalc::decompose(&piece)?.as_map())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizerReport {
    pub table: String,
    pub row: String,
    pub case: String,
    pub group: String,
    pub dmax: usize,
    pub multiplicity_free: bool,
    pub witness: Option<carcano::Witness>,
    /// Entry 20a only: every degree agrees with the closed-form pattern.
    pub pattern_matches: Option<bool>,
    #[serde(skip)]
    pub report: MFReport,
}

/// Multiplicity-free check of `K_t` on `ℂ[v]` up to degree `dmax`.
pub fn stabilizer_mf_check(
    table: TableId,
    row: &str,
    rank: &Rank,
    case: &TCase,
    dmax: usize,
) -> Result<StabilizerReport> {
    let spec = stabilizer_spec(table, row, rank, case)?;
    let report = carcano::is_multiplicity_free(&spec, dmax)?;
    let pattern_matches = if row == "20a" {
        let n = param(rank, "n")?;
        let mut all = true;
        for (d, dec) in report.per_degree.iter().enumerate() {
            all &= dec.as_map() == entry_20a_pattern(&spec, n, d)?;
        }
        Some(all)
    } else {
        None
    };
    Ok(StabilizerReport {
        table: table.name().into(),
        row: row.into(),
        case: case.to_string(),
        group: spec.name(),
        dmax,
        multiplicity_free: report.is_multiplicity_free(),
        witness: report.witness.clone(),
        pattern_matches,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_units_multiply() {
        let i = quaternionic_matrix(&[vec![I]]);
        let j = quaternionic_matrix(&[vec![J]]);
        let k = quaternionic_matrix(&[vec![K]]);
        assert_eq!(linalg::mul(&i, &j), k);
        assert_eq!(linalg::mul(&i, &i), scale(&linalg::identity(4), &q(-1)));
    }

    #[test]
    fn classify_cases() {
        for c in ZaCase::ALL {
            let (a, b) = c.sample();
            assert_eq!(ZaCase::classify(&a, &b).unwrap(), c);
        }
        assert!(ZaCase::classify(&q(0), &q(0)).is_err());
    }
}

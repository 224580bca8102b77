//! Truncated Bargmann–Fock model of the Schrödinger representations of the
//! Heisenberg group `H_n = Im ℂ × ℂⁿ`.
//!
//! For `t > 0` the representation acts on holomorphic functions by
//! `π_t(z, v) f(w) = e^{−itz} e^{t w·v − t|v|²/2} f(w − v)` with
//! `w·v = Σ w_a conj(v_a)`, on the orthonormal basis
//! `e_m = (√t w)^m / √m!`. For `t < 0` every matrix is the complex conjugate
//! of the one at `|t|`. The central character is `e^{−itz}` in both cases.
//! Matrix entries are exact finite sums; truncation only enters through
//! products of truncated matrices.

use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};

/// Group element `(z, v)` with `z` the real coefficient of `i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupElement {
    pub z: f64,
    pub v: Vec<Complex64>,
}

impl GroupElement {
    pub fn new(z: f64, v: Vec<Complex64>) -> Self {
        GroupElement { z, v }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            z: 0.0,
            v: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn central(n: usize, z: f64) -> Self {
        GroupElement {
            z,
            ..Self::identity(n)
        }
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            z: -self.z,
            v: self.v.iter().map(|x| -x).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `(z, w)(z′, w′) = (z + z′ + Im(w·w′), w + w′)` with `w·w′ = Σ w conj(w′)`.
pub fn group_multiply(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    if a.n() != b.n() {
        return domain(format!("group elements of H_{} and H_{}", a.n(), b.n()));
    }
    let dot: Complex64 = a.v.iter().zip(&b.v).map(|(x, y)| x * y.conj()).sum();
    Ok(GroupElement {
        z: a.z + b.z + dot.im,
        v: a.v.iter().zip(&b.v).map(|(x, y)| x + y).collect(),
    })
}

/// Multi-indices of total degree at most `cutoff`, ordered by degree and
/// then lexicographically from the largest first exponent down.
#[derive(Clone, Debug, PartialEq)]
pub struct FockBasis {
    pub n: usize,
    pub cutoff: usize,
    pub index: Vec<Vec<usize>>,
    position: HashMap<Vec<usize>, usize>,
}

impl FockBasis {
    pub fn new(n: usize, cutoff: usize) -> Self {
        let mut index = Vec::new();
        for d in 0..=cutoff {
            compositions(n, d, &mut vec![], &mut index);
        }
        let position = index
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        FockBasis {
            n,
            cutoff,
            index,
            position,
        }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn position(&self, m: &[usize]) -> Option<usize> {
        self.position.get(m).copied()
    }
}

fn compositions(n: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() + 1 == n {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return;
    }
    for k in (0..=d).rev() {
        prefix.push(k);
        compositions(n, d - k, prefix, out);
        prefix.pop();
    }
}

pub fn degree(m: &[usize]) -> usize {
    m.iter().sum()
}

/// Dense operator on a truncated Fock space.
#[derive(Clone, Debug)]
pub struct FockOperator {
    pub basis: FockBasis,
    pub t: f64,
    pub element: GroupElement,
    /// Row-major, `matrix[row][col] = ⟨e_row, π(h) e_col⟩`.
    pub matrix: Vec<Vec<Complex64>>,
}

impl FockOperator {
    pub fn entry(&self, l: &[usize], m: &[usize]) -> Option<Complex64> {
        Some(self.matrix[self.basis.position(l)?][self.basis.position(m)?])
    }

    /// `1 − ‖column m‖²`: the mass of `π(h) e_m` above the cutoff.
    pub fn column_defect(&self, col: usize) -> f64 {
        1.0 - self.matrix.iter().map(|r| r[col].norm_sqr()).sum::<f64>()
    }

    pub fn mul(&self, other: &FockOperator) -> Vec<Vec<Complex64>> {
        let n = self.basis.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i][k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a * other.matrix[k][j];
                }
            }
        }
        out
    }
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

/// One-variable entry `⟨e_l, W(α) e_m⟩ e^{|α|²/2}` of the unit-parameter
/// displacement `W(α) f(u) = e^{u conj(α) − |α|²/2} f(u − α)`.
fn shift_sum(l: usize, m: usize, alpha: Complex64, fact: &[f64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..=l.min(m) {
        let binom = fact[m] / (fact[j] * fact[m - j]);
        let term = (-alpha).powu((m - j) as u32)
            * alpha.conj().powu((l - j) as u32)
            * (binom / fact[l - j]);
        s += term;
    }
    s * (fact[l] / fact[m]).sqrt()
}

fn check_t(t: f64) -> Result<()> {
    if t == 0.0 || !t.is_finite() {
        return domain("t must be a nonzero real number");
    }
    Ok(())
}

/// `⟨e_l, π_t(h) e_m⟩` in closed form.
pub fn coefficient(l: &[usize], m: &[usize], t: f64, h: &GroupElement) -> Result<Complex64> {
    check_t(t)?;
    if l.len() != h.n() || m.len() != h.n() {
        return domain("multi-index length differs from n");
    }
    let fact = factorials(degree(l).max(degree(m)));
    let s = t.abs().sqrt();
    let mut value =
        Complex64::from_polar((-t.abs() * h.norm().powi(2) / 2.0).exp(), -t.abs() * h.z);
    for a in 0..h.n() {
        value *= shift_sum(l[a], m[a], h.v[a] * s, &fact);
    }
    Ok(if t < 0.0 { value.conj() } else { value })
}

/// Polynomial part of [`coefficient`] at `(0, v)`: the value times `e^{|t||v|²/2}`.
fn coefficient_polynomial(
    l: &[usize],
    m: &[usize],
    t: f64,
    v: &[Complex64],
    fact: &[f64],
) -> Complex64 {
    let s = t.abs().sqrt();
    let mut value = Complex64::new(1.0, 0.0);
    for a in 0..v.len() {
        value *= shift_sum(l[a], m[a], v[a] * s, fact);
    }
    if t < 0.0 {
        value.conj()
    } else {
        value
    }
}

/// The matrix of `π_t(h)` on a truncated basis.
pub fn operator_matrix(t: f64, h: &GroupElement, basis: &FockBasis) -> Result<FockOperator> {
    check_t(t)?;
    if h.n() != basis.n {
        return domain(format!(
            "element of H_{} on a basis in {} variables",
            h.n(),
            basis.n
        ));
    }
    let d = basis.cutoff;
    let fact = factorials(d);
    let s = t.abs().sqrt();
    // one-variable tables, then products over coordinates
    let tables: Vec<Vec<Vec<Complex64>>> =
        h.v.iter()
            .map(|&x| {
                (0..=d)
                    .map(|l| (0..=d).map(|m| shift_sum(l, m, x * s, &fact)).collect())
                    .collect()
            })
            .collect();
    let scalar = Complex64::from_polar((-t.abs() * h.norm().powi(2) / 2.0).exp(), -t.abs() * h.z);
    let matrix = basis
        .index
        .iter()
        .map(|l| {
            basis
                .index
                .iter()
                .map(|m| {
                    let mut v = scalar;
                    for (a, tab) in tables.iter().enumerate() {
                        v *= tab[l[a]][m[a]];
                    }
                    if t < 0.0 {
                        v.conj()
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    Ok(FockOperator {
        basis: basis.clone(),
        t,
        element: h.clone(),
        matrix,
    })
}

/// Minimum gap between the cutoff and the largest requested degree.
pub const GUARD_BAND: usize = 10;

/// Largest entry of `π(a·b) − π(a)π(b)` over rows and columns of degree at
/// most `block`, with the product truncated at `cutoff ≥ block + GUARD_BAND`.
pub fn verify_group_law(
    t: f64,
    a: &GroupElement,
    b: &GroupElement,
    cutoff: usize,
    block: usize,
) -> Result<f64> {
    if block + GUARD_BAND > cutoff {
        return domain(format!(
            "cutoff {cutoff} leaves less than {GUARD_BAND} degrees above block {block}"
        ));
    }
    let basis = FockBasis::new(a.n(), cutoff);
    let ab = group_multiply(a, b)?;
    let pa = operator_matrix(t, a, &basis)?;
    let pb = operator_matrix(t, b, &basis)?;
    let pab = operator_matrix(t, &ab, &basis)?;
    let prod = pa.mul(&pb);
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| degree(&basis.index[i]) <= block)
        .collect();
    let mut worst: f64 = 0.0;
    for &i in &keep {
        for &j in &keep {
            worst = worst.max((pab.matrix[i][j] - prod[i][j]).norm());
        }
    }
    Ok(worst)
}

/// Gauss–Hermite rule of the given order for `∫ e^{−x²} g(x) dx`, by the
/// Golub–Welsch eigenvalue method.
pub fn gauss_hermite(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jac = DMatrix::<f64>::zeros(order, order);
    for k in 1..order {
        let b = (k as f64 / 2.0).sqrt();
        jac[(k, k - 1)] = b;
        jac[(k - 1, k)] = b;
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], std::f64::consts::PI.sqrt() * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub order: usize,
    /// Successive orders agreed within the tolerance.
    pub converged: bool,
}

/// Highest quadrature order tried.
pub const MAX_ORDER: usize = 120;

/// Coefficient function `f_{l,m;t}` identified by its index pair.
pub type IndexPair = (Vec<usize>, Vec<usize>);

/// Gram matrix of coefficient functions restricted to `{(0, v)}`:
/// `G[i][j] = ∫_{ℂⁿ} f_i(0,v) conj(f_j(0,v)) dv/πⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramResult {
    pub gram: Vec<Vec<Complex64>>,
    pub order: usize,
    /// Successive orders agreed within `1e−8` in every entry.
    pub converged: bool,
}

fn gram_at(
    funcs: &[IndexPair],
    n: usize,
    t: f64,
    order: usize,
    fact: &[f64],
) -> Vec<Vec<Complex64>> {
    let (x, w) = gauss_hermite(order);
    let scale = t.abs().sqrt();
    let k = funcs.len();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    let mut idx = vec![0usize; 2 * n];
    let mut values = vec![Complex64::new(0.0, 0.0); k];
    loop {
        // v_a = (x + i y) / √|t| absorbs the Gaussian e^{−|t||v|²}
        let v: Vec<Complex64> = (0..n)
            .map(|a| Complex64::new(x[idx[2 * a]], x[idx[2 * a + 1]]) / scale)
            .collect();
        let weight: f64 = idx.iter().map(|&i| w[i]).product();
        for (val, (l, m)) in values.iter_mut().zip(funcs) {
            *val = coefficient_polynomial(l, m, t, &v, fact);
        }
        for i in 0..k {
            let a = values[i] * weight;
            for j in 0..k {
                g[i][j] += a * values[j].conj();
            }
        }
        let mut c = 0;
        loop {
            if c == idx.len() {
                let norm = (std::f64::consts::PI * t.abs()).powi(n as i32);
                for row in g.iter_mut() {
                    for x in row.iter_mut() {
                        *x /= norm;
                    }
                }
                return g;
            }
            idx[c] += 1;
            if idx[c] < order {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// Gauss–Hermite Gram matrix; the order starts at `order` and doubles until
/// two successive results agree within `1e−8`, up to [`MAX_ORDER`].
pub fn orthogonality_gram(funcs: &[IndexPair], t: f64, order: usize) -> Result<GramResult> {
    check_t(t)?;
    let n = funcs.first().map_or(0, |f| f.0.len());
    if n == 0 || n > 2 || funcs.iter().any(|(l, m)| l.len() != n || m.len() != n) {
        return domain("orthogonality integrals need n in 1..=2 and equal index lengths");
    }
    if order == 0 {
        return domain("quadrature order must be positive");
    }
    let fact = factorials(
        funcs
            .iter()
            .map(|(l, m)| degree(l).max(degree(m)))
            .max()
            .unwrap_or(0),
    );
    let mut ord = order.min(MAX_ORDER);
    let mut prev = gram_at(funcs, n, t, ord, &fact);
    while ord < MAX_ORDER {
        let next_ord = (2 * ord).min(MAX_ORDER);
        let next = gram_at(funcs, n, t, next_ord, &fact);
        let diff = prev
            .iter()
            .flatten()
            .zip(next.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if diff < 1e-8 {
            return Ok(GramResult {
                gram: next,
                order: next_ord,
                converged: true,
            });
        }
        prev = next;
        ord = next_ord;
    }
    Ok(GramResult {
        gram: prev,
        order: ord,
        converged: false,
    })
}

/// `∫_{ℂⁿ} f_{l,m;t}(0,v) conj(f_{l′,m′;t}(0,v)) dv/πⁿ`, which equals
/// `|t|^{−n} δ_{l,l′} δ_{m,m′}`.
pub fn orthogonality_integral(
    l: &[usize],
    m: &[usize],
    l2: &[usize],
    m2: &[usize],
    t: f64,
    order: usize,
) -> Result<QuadratureResult> {
    let funcs = [(l.to_vec(), m.to_vec()), (l2.to_vec(), m2.to_vec())];
    let r = orthogonality_gram(&funcs, t, order)?;
    Ok(QuadratureResult {
        value: r.gram[0][1],
        order: r.order,
        converged: r.converged,
    })
}

/// `‖f_{large}‖ / ‖f_{small}‖ = |t|^{(n_small − n_large)/2}`: the injection
/// `ζ′` sends `f_{l,m;t}` on `H_{n_small}` to `f_{l,m;t}` on `H_{n_large}`
/// divided by this factor.
pub fn zeta_prime_scale(n_small: usize, n_large: usize, t: f64) -> Result<f64> {
    check_t(t)?;
    if n_large < n_small {
        return domain("n_large must be at least n_small");
    }
    Ok(t.abs().powf((n_small as f64 - n_large as f64) / 2.0))
}

/// A finitely supported family `Σ c f_{l,m;t}` of coefficient functions.
pub type CoefficientFamily = Vec<(Vec<usize>, Vec<usize>, Complex64)>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryReport {
    pub norm_small: f64,
    pub norm_large: f64,
    pub defect: f64,
    /// Projecting the image back onto the small indices recovers the family exactly.
    pub round_trip_exact: bool,
    /// Quadrature norm of the small family when `n_small ≤ 2` and an order is given.
    pub quadrature_norm: Option<f64>,
}

fn pad(m: &[usize], n: usize) -> Vec<usize> {
    let mut v = m.to_vec();
    v.resize(n, 0);
    v
}

/// Norms of a family and of its `ζ′` image from the orthogonality relations,
/// and the projection round trip.
pub fn verify_injection_isometry(
    n_small: usize,
    n_large: usize,
    t: f64,
    family: &CoefficientFamily,
    quad_order: Option<usize>,
) -> Result<IsometryReport> {
    let scale = zeta_prime_scale(n_small, n_large, t)?;
    if family
        .iter()
        .any(|(l, m, _)| l.len() != n_small || m.len() != n_small)
    {
        return domain("family indices must have length n_small");
    }
    let mut seen = std::collections::BTreeSet::new();
    if !family
        .iter()
        .all(|(l, m, _)| seen.insert((l.clone(), m.clone())))
    {
        return domain("family has a repeated index pair");
    }
    let small: f64 =
        family.iter().map(|(_, _, c)| c.norm_sqr()).sum::<f64>() * t.abs().powi(-(n_small as i32));
    let image: CoefficientFamily = family
        .iter()
        .map(|(l, m, c)| (pad(l, n_large), pad(m, n_large), c / scale))
        .collect();
    let large: f64 =
        image.iter().map(|(_, _, c)| c.norm_sqr()).sum::<f64>() * t.abs().powi(-(n_large as i32));
    let back: CoefficientFamily = image
        .iter()
        .filter(|(l, m, _)| l[n_small..].iter().chain(&m[n_small..]).all(|&x| x == 0))
        .map(|(l, m, c)| (l[..n_small].to_vec(), m[..n_small].to_vec(), c * scale))
        .collect();
    let round_trip_exact = back.len() == family.len()
        && back.iter().zip(family).all(|(a, b)| {
            a.0 == b.0 && a.1 == b.1 && (a.2 - b.2).norm() <= 4.0 * f64::EPSILON * b.2.norm()
        });
    let quadrature_norm = match quad_order {
        Some(order) if n_small <= 2 && n_small > 0 && !family.is_empty() => {
            let funcs: Vec<IndexPair> = family
                .iter()
                .map(|(l, m, _)| (l.clone(), m.clone()))
                .collect();
            let g = orthogonality_gram(&funcs, t, order)?.gram;
            let mut total = Complex64::new(0.0, 0.0);
            for (i, (_, _, c)) in family.iter().enumerate() {
                for (j, (_, _, c2)) in family.iter().enumerate() {
                    total += c * c2.conj() * g[i][j];
                }
            }
            Some(total.re.max(0.0).sqrt())
        }
        _ => None,
    };
    let (norm_small, norm_large) = (small.sqrt(), large.sqrt());
    Ok(IsometryReport {
        norm_small,
        norm_large,
        defect: (norm_large - norm_small).abs(),
        round_trip_exact,
        quadrature_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multiply_examples() {
        let a = GroupElement::new(0.0, vec![c(1.0, 0.0)]);
        let b = GroupElement::new(0.0, vec![c(0.0, 1.0)]);
        let ab = group_multiply(&a, &b).unwrap();
        assert_eq!(ab, GroupElement::new(-1.0, vec![c(1.0, 1.0)]));
        let h = GroupElement::new(0.7, vec![c(0.3, -0.2), c(1.0, 2.0)]);
        assert_eq!(group_multiply(&GroupElement::identity(2), &h).unwrap(), h);
        let e = group_multiply(&h, &h.inverse()).unwrap();
        assert!(e.z.abs() < 1e-15 && e.norm() == 0.0);
        assert!(group_multiply(&a, &h).is_err());
    }

    #[test]
    fn basis_order() {
        let b = FockBasis::new(2, 2);
        assert_eq!(
            b.index,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(FockBasis::new(3, 4).len(), 35);
        assert_eq!(FockBasis::new(1, 30).len(), 31);
    }

    #[test]
    fn hermite_rule_integrates_moments() {
        let (x, w) = gauss_hermite(10);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| x * x * w).sum();
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| x.powi(4) * w).sum();
        let pi = std::f64::consts::PI;
        assert!((m0 - pi.sqrt()).abs() < 1e-13);
        assert!((m2 - pi.sqrt() / 2.0).abs() < 1e-13);
        assert!((m4 - 3.0 * pi.sqrt() / 4.0).abs() < 1e-13);
    }
}

//! Two-step nilpotent Lie algebras `n = z ⊕ v` with exact structure
//! constants, the skew forms `b_t(ξ, η) = t([ξ, η])`, their Pfaffians and
//! formal degrees.
//!
//! The Heisenberg algebras `h_{n;F}` use the bracket `[v, w] = Im(v* w)`
//! with the hermitian form conjugate-linear in the first slot, on the real
//! basis `(1, i [, j, k, …])` of each coordinate. In this basis
//! `Pf(b_t) = t^n` on `h_{n;ℂ}`.

pub mod division;
pub mod pfaffian;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, unsupported, Error, Result};
use crate::linalg::{self, q, Matrix, Q};
use crate::tables::{show_rank, HeisenbergField, Rank, TableId, TableRow};

pub use division::Composition;
pub use pfaffian::pfaffian as pfaffian_matrix;

/// `[v_i, v_j] = Σ_k c[i][j][k] z_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentAlgebra {
    pub name: String,
    pub dim_z: usize,
    pub dim_v: usize,
    bracket: Vec<Vec<Vec<Q>>>,
    /// `dim z′` when `z = z′ ⊕ z″` with `z″` declared central.
    pub split: Option<usize>,
    /// Sign of `Pf(b_t)` at `t = (1, …, 1)`; zero when that form is degenerate.
    pub pf_sign: i8,
}

/// A central functional `t ∈ z*` in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralFunctional(pub Vec<Q>);

impl CentralFunctional {
    pub fn new(t: Vec<Q>) -> Self {
        CentralFunctional(t)
    }

    pub fn from_i64(t: &[i64]) -> Self {
        CentralFunctional(t.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        CentralFunctional(vec![Q::zero(); dim])
    }

    /// Every coordinate equal to `x`.
    pub fn constant(dim: usize, x: Q) -> Self {
        CentralFunctional(vec![x; dim])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, r: &Q) -> Self {
        CentralFunctional(self.0.iter().map(|x| x * r).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// An exactly skew-symmetric rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    matrix: Matrix,
}

impl SkewForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return domain("skew form must be square");
        }
        for i in 0..n {
            for j in 0..=i {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return domain(format!("entries ({i},{j}) and ({j},{i}) are not skew"));
                }
            }
        }
        Ok(SkewForm { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// The form in the basis given by the columns of `a`: `aᵀ M a`.
    pub fn change_basis(&self, a: &Matrix) -> Result<SkewForm> {
        if a.len() != self.dim() || a.iter().any(|r| r.len() != self.dim()) {
            return domain("basis change must be square of the form's dimension");
        }
        SkewForm::new(linalg::mul(
            &linalg::transpose(a),
            &linalg::mul(&self.matrix, a),
        ))
    }

    pub fn det(&self) -> Q {
        linalg::det(&self.matrix)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    dim_z: usize,
    dim_v: usize,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

impl NilpotentAlgebra {
    /// From entries `(i, j, k, c)` meaning `[v_i, v_j] = c z_k + …`; the
    /// `(j, i)` entries follow by antisymmetry.
    pub fn from_brackets(
        name: &str,
        dim_z: usize,
        dim_v: usize,
        entries: &[(usize, usize, usize, Q)],
    ) -> Result<Self> {
        let mut bracket = vec![vec![vec![Q::zero(); dim_z]; dim_v]; dim_v];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim_v || j >= dim_v || k >= dim_z {
                return domain(format!("{name}: bracket index ({i},{j},{k}) out of range"));
            }
            if i == j {
                if !c.is_zero() {
                    return domain(format!("{name}: [v_{i}, v_{i}] must vanish"));
                }
                continue;
            }
            bracket[i][j][k] += c;
            bracket[j][i][k] -= c;
        }
        Ok(Self::finish(name.into(), dim_z, dim_v, bracket, None))
    }

    fn finish(
        name: String,
        dim_z: usize,
        dim_v: usize,
        bracket: Vec<Vec<Vec<Q>>>,
        split: Option<usize>,
    ) -> Self {
        let mut alg = NilpotentAlgebra {
            name,
            dim_z,
            dim_v,
            bracket,
            split,
            pf_sign: 0,
        };
        let pf = pfaffian::pfaffian(
            &alg.b_form_unchecked(&CentralFunctional::constant(dim_z, Q::one())),
        );
        alg.pf_sign = if pf.is_zero() {
            0
        } else if pf.is_positive() {
            1
        } else {
            -1
        };
        alg
    }

    /// Structure-constant schema: `name`, `dim_z`, `dim_v` and
    /// `brackets = [{ i, j, k, c = "p/q" }, …]`.
    pub fn from_toml(text: &str) -> Result<Self> {
        let f: AlgebraFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = f
            .brackets
            .iter()
            .map(|b| {
                let c: Q =
                    b.c.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad rational {:?}", b.c)))?;
                Ok((b.i, b.j, b.k, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_brackets(&f.name, f.dim_z, f.dim_v, &entries)
    }

    /// `h_{n;F}`: `v = Fⁿ`, `z = Im F`, `[v, w] = Im(Σ conj(v_a) w_a)`.
    pub fn heisenberg(field: HeisenbergField, n: usize) -> Result<Self> {
        if field == HeisenbergField::O && n != 1 {
            return unsupported(format!("h_{{{n};O}}: only n = 1 is a Heisenberg algebra"));
        }
        let f = Composition::new(field)?;
        let d = f.dim();
        let dim_v = n * d;
        let mut bracket = vec![vec![vec![Q::zero(); d - 1]; dim_v]; dim_v];
        for a in 0..n {
            for p in 0..d {
                for r in 0..d {
                    let (c, s) = f.unit_product(p, r);
                    // conj(e_p) = -e_p for imaginary units
                    let s = if p == 0 { s } else { -s };
                    if c > 0 {
                        bracket[a * d + p][a * d + r][c - 1] = q(s);
                    }
                }
            }
        }
        let name = format!("h({n};{})", field_letter(field));
        Ok(Self::finish(name, d - 1, dim_v, bracket, None))
    }

    /// `F^{p×n}` with centre the skew-hermitian `p×p` matrices over `F` and
    /// bracket `[V, W] = (V W* − W V*)/2`. Centre coordinates list the
    /// imaginary parts of the diagonal entries row by row, then the real
    /// components of the entries above the diagonal.
    pub fn matrix_heisenberg(field: HeisenbergField, p: usize, n: usize) -> Result<Self> {
        if field == HeisenbergField::O {
            return unsupported("matrix Heisenberg algebras over O");
        }
        let f = Composition::new(field)?;
        let d = f.dim();
        let mut zindex = std::collections::BTreeMap::new();
        let mut dim_z = 0;
        for a in 0..p {
            for u in 1..d {
                zindex.insert((a, a, u), dim_z);
                dim_z += 1;
            }
        }
        for a in 0..p {
            for b in a + 1..p {
                for u in 0..d {
                    zindex.insert((a, b, u), dim_z);
                    dim_z += 1;
                }
            }
        }
        let idx = |r: usize, c: usize, s: usize| (r * n + c) * d + s;
        let dim_v = p * n * d;
        let half = linalg::qr(1, 2);
        let mut bracket = vec![vec![vec![Q::zero(); dim_z]; dim_v]; dim_v];
        for r1 in 0..p {
            for r2 in 0..p {
                for c in 0..n {
                    for s1 in 0..d {
                        for s2 in 0..d {
                            // V = e_{s1} at (r1, c), W = e_{s2} at (r2, c)
                            let vw = f.mul(&f.unit(s1), &f.conj(&f.unit(s2)));
                            let wv = f.conj(&vw);
                            let out = &mut bracket[idx(r1, c, s1)][idx(r2, c, s2)];
                            // (V W*) has entry vw at (r1, r2); (W V*) has wv at (r2, r1)
                            for (entry, (a, b), sign) in [(&vw, (r1, r2), 1), (&wv, (r2, r1), -1)] {
                                for (u, x) in entry.iter().enumerate() {
                                    if x.is_zero() {
                                        continue;
                                    }
                                    let v = &half * x * q(sign);
                                    if a == b {
                                        if u > 0 {
                                            out[zindex[&(a, a, u)]] += v;
                                        }
                                    } else if a < b {
                                        out[zindex[&(a, b, u)]] += v;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let name = format!("mat({p},{n};{})", field_letter(field));
        Ok(Self::finish(name, dim_z, dim_v, bracket, None))
    }

    /// `v = ℝ^{dim_v}` with zero bracket and a centre of dimension `dim_z`.
    pub fn abelian(dim_v: usize, dim_z: usize) -> Self {
        let bracket = vec![vec![vec![Q::zero(); dim_z]; dim_v]; dim_v];
        Self::finish(
            format!("abelian({dim_v},{dim_z})"),
            dim_z,
            dim_v,
            bracket,
            None,
        )
    }

    /// Block-diagonal sum: `z = z_a ⊕ z_b`, `v = v_a ⊕ v_b`.
    pub fn direct_sum(&self, other: &NilpotentAlgebra) -> Self {
        let dim_z = self.dim_z + other.dim_z;
        let dim_v = self.dim_v + other.dim_v;
        let mut bracket = vec![vec![vec![Q::zero(); dim_z]; dim_v]; dim_v];
        for i in 0..self.dim_v {
            for j in 0..self.dim_v {
                for k in 0..self.dim_z {
                    bracket[i][j][k] = self.bracket[i][j][k].clone();
                }
            }
        }
        let (ov, oz) = (self.dim_v, self.dim_z);
        for i in 0..other.dim_v {
            for j in 0..other.dim_v {
                for k in 0..other.dim_z {
                    bracket[ov + i][ov + j][oz + k] = other.bracket[i][j][k].clone();
                }
            }
        }
        Self::finish(
            format!("{} + {}", self.name, other.name),
            dim_z,
            dim_v,
            bracket,
            None,
        )
    }

    /// `n ⊕ z″` with `z″ = ℝ^k` central and bracket-trivial.
    pub fn with_central(&self, k: usize) -> Self {
        let dim_z = self.dim_z + k;
        let bracket = self
            .bracket
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.resize(dim_z, Q::zero());
                        c
                    })
                    .collect()
            })
            .collect();
        let name = if k == 0 {
            self.name.clone()
        } else {
            format!("{} + z({k})", self.name)
        };
        Self::finish(name, dim_z, self.dim_v, bracket, Some(self.dim_z))
    }

    /// Declares the first `dim_z_prime` centre coordinates as `z′` without
    /// checking that the rest is bracket-trivial.
    pub fn with_split(mut self, dim_z_prime: usize) -> Result<Self> {
        if dim_z_prime > self.dim_z {
            return domain(format!(
                "split {dim_z_prime} exceeds dim z = {}",
                self.dim_z
            ));
        }
        self.split = Some(dim_z_prime);
        Ok(self)
    }

    /// Two copies of `h_{1;ℂ}` with the second centre declared as `z″`;
    /// `z″` is not bracket-trivial, so the Pfaffian depends on `t″`.
    pub fn coupled_control() -> Result<Self> {
        let h = Self::heisenberg(HeisenbergField::C, 1)?;
        let mut alg = h.direct_sum(&h).with_split(1)?;
        alg.name = "control: h(1;C) + h(1;C) with bracketed z''".into();
        Ok(alg)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Q] {
        &self.bracket[i][j]
    }

    /// `[x, y]` for `x, y ∈ v` in coordinates.
    pub fn bracket_vectors(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim_z];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (o, c) in out.iter_mut().zip(&self.bracket[i][j]) {
                    if !c.is_zero() {
                        *o += xi * yj * c;
                    }
                }
            }
        }
        out
    }

    /// Antisymmetry and the Jacobi identity of the full algebra `z ⊕ v`.
    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..self.dim_v {
            for j in 0..self.dim_v {
                for k in 0..self.dim_z {
                    if self.bracket[i][j][k] != -self.bracket[j][i][k].clone() {
                        return domain(format!(
                            "{}: bracket not antisymmetric at ({i},{j},{k})",
                            self.name
                        ));
                    }
                }
            }
        }
        // [[x, y], w] lies in [z, v] = 0, so every Jacobi cycle is a sum of zeros;
        // check it through the full structure constants regardless.
        let n = self.dim_z + self.dim_v;
        let full = |a: usize, b: usize| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            if a >= self.dim_z && b >= self.dim_z {
                for (k, c) in self.bracket[a - self.dim_z][b - self.dim_z]
                    .iter()
                    .enumerate()
                {
                    out[k] = c.clone();
                }
            }
            out
        };
        let apply = |x: &[Q], c: usize| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (o, v) in out.iter_mut().zip(full(a, c)) {
                    *o += xa * v;
                }
            }
            out
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let s1 = apply(&full(a, b), c);
                    let s2 = apply(&full(b, c), a);
                    let s3 = apply(&full(c, a), b);
                    if s1
                        .iter()
                        .zip(&s2)
                        .zip(&s3)
                        .any(|((x, y), z)| !(x + y + z).is_zero())
                    {
                        return domain(format!("{}: Jacobi fails at ({a},{b},{c})", self.name));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether every bracket has zero component along `z″`.
    pub fn z_double_prime_is_bracket_trivial(&self) -> bool {
        let Some(s) = self.split else { return false };
        self.bracket
            .iter()
            .flatten()
            .all(|c| c[s..].iter().all(Zero::is_zero))
    }

    fn b_form_unchecked(&self, t: &CentralFunctional) -> Matrix {
        let mut m = linalg::zeros(self.dim_v, self.dim_v);
        for i in 0..self.dim_v {
            for j in 0..self.dim_v {
                let mut s = Q::zero();
                for (tk, c) in t.0.iter().zip(&self.bracket[i][j]) {
                    if !tk.is_zero() && !c.is_zero() {
                        s += tk * c;
                    }
                }
                m[i][j] = s;
            }
        }
        m
    }
}

fn field_letter(f: HeisenbergField) -> &'static str {
    match f {
        HeisenbergField::C => "C",
        HeisenbergField::H => "H",
        HeisenbergField::O => "O",
    }
}

fn parse_field(s: &str) -> Result<HeisenbergField> {
    match s.trim() {
        "C" | "ℂ" => Ok(HeisenbergField::C),
        "H" | "ℍ" => Ok(HeisenbergField::H),
        "O" | "𝕆" => Ok(HeisenbergField::O),
        other => Err(Error::Parse(format!("unknown field {other:?}"))),
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a nonnegative integer, got {s:?}")))
}

/// Builds an algebra from a name such as `heisenberg(2)`, `h(2;H)`,
/// `h(1;O)`, `mat(2,3;H)`, `abelian(4,1)` or `z(3)`; summands joined by
/// `+` or `⊕` form a direct sum, and `z(k)` summands form `z″`.
pub fn build_algebra(name: &str) -> Result<NilpotentAlgebra> {
    let mut acc: Option<NilpotentAlgebra> = None;
    let mut central = 0;
    for term in name.split(['+', '⊕']) {
        let term = term.trim();
        let (head, args) = term
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(|| Error::Parse(format!("expected name(args), got {term:?}")))?;
        let args: Vec<&str> = args.split([',', ';']).map(str::trim).collect();
        let alg = match (head.trim(), args.as_slice()) {
            ("heisenberg", [n]) => {
                NilpotentAlgebra::heisenberg(HeisenbergField::C, parse_usize(n)?)?
            }
            ("quaternionicHeisenberg", [n]) => {
                NilpotentAlgebra::heisenberg(HeisenbergField::H, parse_usize(n)?)?
            }
            ("h", [n, f]) => NilpotentAlgebra::heisenberg(parse_field(f)?, parse_usize(n)?)?,
            ("mat", [p, n, f]) => NilpotentAlgebra::matrix_heisenberg(
                parse_field(f)?,
                parse_usize(p)?,
                parse_usize(n)?,
            )?,
            ("abelian", [v, z]) => NilpotentAlgebra::abelian(parse_usize(v)?, parse_usize(z)?),
            ("z", [k]) => {
                central += parse_usize(k)?;
                continue;
            }
            _ => return unsupported(format!("algebra {term:?}")),
        };
        if central > 0 {
            return Err(Error::Parse("z(k) summands must come last".into()));
        }
        acc = Some(match acc {
            None => alg,
            Some(a) => a.direct_sum(&alg),
        });
    }
    let alg = acc.ok_or_else(|| Error::Parse(format!("no algebra summand in {name:?}")))?;
    Ok(if central > 0 {
        alg.with_central(central)
    } else {
        alg
    })
}

/// The algebra `n′ ⊕ z″` of a nilpotent-table row at a rank: the direct sum
/// of its Heisenberg summands with a bracket-trivial `z″` of the tabulated
/// dimension.
pub fn table_algebra(row: &TableRow, rank: &Rank) -> Result<NilpotentAlgebra> {
    if row.algebra.is_empty() {
        return unsupported(format!(
            "{} row {} has no algebra column",
            row.table, row.id
        ));
    }
    let mut acc: Option<NilpotentAlgebra> = None;
    for (f, p, k) in row.algebra_at(rank)? {
        let h = if p == 1 {
            NilpotentAlgebra::heisenberg(f, k)?
        } else {
            NilpotentAlgebra::matrix_heisenberg(f, p, k)?
        };
        acc = Some(match acc {
            None => h,
            Some(a) => a.direct_sum(&h),
        });
    }
    let z2 = match &row.z2_dim {
        Some(e) => row.eval(e, rank)?,
        None => 0,
    };
    let mut alg = acc
        .expect("nonempty algebra column")
        .with_central(z2.max(0) as usize);
    alg.name = format!(
        "{}:{} [{}] {}",
        row.table,
        row.id,
        show_rank(rank),
        alg.name
    );
    Ok(alg)
}

/// Every `n′ ⊕ z″` construction of the nilpotent tables at minimal rank,
/// followed by `h_{1;𝕆}` on its own.
pub fn table_algebras() -> Result<Vec<NilpotentAlgebra>> {
    let mut out = Vec::new();
    for id in [TableId::Ipms, TableId::IndIpms] {
        for row in crate::tables::table(id)?
            .rows
            .iter()
            .filter(|r| !r.algebra.is_empty())
        {
            out.push(table_algebra(row, &row.minimal_rank()?)?);
        }
    }
    out.push(NilpotentAlgebra::heisenberg(HeisenbergField::O, 1)?);
    Ok(out)
}

/// `b_t` as a skew form on `v`.
pub fn b_form(alg: &NilpotentAlgebra, t: &CentralFunctional) -> Result<SkewForm> {
    if t.len() != alg.dim_z {
        return domain(format!(
            "{}: functional has length {}, dim z = {}",
            alg.name,
            t.len(),
            alg.dim_z
        ));
    }
    Ok(SkewForm {
        matrix: alg.b_form_unchecked(t),
    })
}

pub fn pfaffian(form: &SkewForm) -> Q {
    pfaffian::pfaffian(&form.matrix)
}

/// `Pf(b_t) ≠ 0`.
pub fn is_square_integrable(alg: &NilpotentAlgebra, t: &CentralFunctional) -> Result<bool> {
    Ok(!pfaffian(&b_form(alg, t)?).is_zero())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericReport {
    pub algebra: String,
    pub trials: usize,
    pub nonzero: usize,
    /// No sample had a nonzero Pfaffian: the algebra has no square-integrable
    /// representations.
    pub identically_zero: bool,
}

impl GenericReport {
    pub fn fraction(&self) -> f64 {
        self.nonzero as f64 / self.trials as f64
    }
}

/// Random nonzero lattice point in `[-bound, bound]^dim`.
fn lattice_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> CentralFunctional {
    loop {
        let t: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        if dim == 0 || t.iter().any(|&x| x != 0) {
            return CentralFunctional::from_i64(&t);
        }
    }
}

/// Random rational vector with small numerators and denominators.
pub fn random_rational(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Q> {
    (0..dim)
        .map(|_| linalg::qr(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
        .collect()
}

/// Samples nonzero lattice points `t` and counts nonvanishing Pfaffians.
pub fn generic_set_witness(
    alg: &NilpotentAlgebra,
    trials: usize,
    seed: u64,
) -> Result<GenericReport> {
    if trials == 0 {
        return domain("trials must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = 0;
    for _ in 0..trials {
        let t = lattice_point(&mut rng, alg.dim_z, 10);
        if is_square_integrable(alg, &t)? {
            nonzero += 1;
        }
    }
    Ok(GenericReport {
        algebra: alg.name.clone(),
        trials,
        nonzero,
        identically_zero: nonzero == 0,
    })
}

/// `Pf(b_{(t′, t″)}) = Pf(b_{(t′, 0)})` for the given `t` and for `samples`
/// random replacements of `t″`.
pub fn pfaffian_split_check(
    alg: &NilpotentAlgebra,
    t: &CentralFunctional,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    let Some(s) = alg.split else {
        return domain(format!("{}: no z' + z'' split declared", alg.name));
    };
    if t.len() != alg.dim_z {
        return domain(format!(
            "{}: functional has length {}, dim z = {}",
            alg.name,
            t.len(),
            alg.dim_z
        ));
    }
    let mut prime = t.clone();
    for x in &mut prime.0[s..] {
        *x = Q::zero();
    }
    let reference = pfaffian(&b_form(alg, &prime)?);
    if pfaffian(&b_form(alg, t)?) != reference {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut u = prime.clone();
        let extra = random_rational(&mut rng, alg.dim_z - s);
        for (x, e) in u.0[s..].iter_mut().zip(extra) {
            *x = e;
        }
        if pfaffian(&b_form(alg, &u)?) != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|Pf(b_t)| · dim κ`, with Haar normalizations fixed to one in the chosen basis.
pub fn formal_degree(alg: &NilpotentAlgebra, t: &CentralFunctional, kappa_dim: u64) -> Result<Q> {
    if kappa_dim == 0 {
        return domain("kappa dimension must be positive");
    }
    Ok(pfaffian(&b_form(alg, t)?).abs() * q(kappa_dim as i64))
}

/// Formal degree of a representation induced from a subgroup of finite
/// index `|L/M|`, with counting measure on `L/M`.
pub fn induced_formal_degree_finite(index: u64, deg_gamma: &Q) -> Result<Q> {
    if index == 0 {
        return domain("index must be positive");
    }
    if !deg_gamma.is_positive() {
        return domain("formal degree must be positive");
    }
    Ok(q(index as i64) * deg_gamma)
}

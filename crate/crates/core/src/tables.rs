//! Machine-readable classification tables.
//!
//! Each table lives in a TOML file under `data/`, one record per printed row.
//! Rank-parameterized rows carry an admissibility predicate and factor
//! templates whose ranks are integer expressions in the row parameters;
//! both are evaluated with `evalexpr`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use evalexpr::{ContextWithMutableVariables, HashMapContext, Value};
use serde::{Deserialize, Serialize};

use crate::carcano::{GroupSpec, RepAction};
use crate::error::{Error, Result};
use crate::weights::FactorKind;

/// Values of the rank parameters of a row.
pub type Rank = BTreeMap<String, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    /// Irreducible groups multiplicity free on polynomials.
    #[serde(rename = "kac")]
    Kac,
    /// Strict parabolic direct systems of irreducible Heisenberg Gelfand pairs.
    #[serde(rename = "jaw")]
    Jaw,
    /// Maximal irreducible nilpotent Gelfand pairs.
    #[serde(rename = "vin")]
    Vin,
    /// Direct systems of maximal irreducible nilpotent Gelfand pairs.
    #[serde(rename = "indVin")]
    IndVin,
    /// Principal saturated pairs with reducible action on `n/[n,n]`.
    #[serde(rename = "ipms")]
    Ipms,
    /// Strict direct systems from the `ipms` table with `dim z'` bounded.
    #[serde(rename = "indIpms")]
    IndIpms,
    /// `indIpms` rows with `z''` nonzero and constant.
    #[serde(rename = "ipmsNzc")]
    IpmsNzc,
    /// `indIpms` rows with `z''` unbounded.
    #[serde(rename = "ipmsUbd")]
    IpmsUbd,
}

impl TableId {
    pub const ALL: [TableId; 8] = [
        TableId::Kac,
        TableId::Jaw,
        TableId::Vin,
        TableId::IndVin,
        TableId::Ipms,
        TableId::IndIpms,
        TableId::IpmsNzc,
        TableId::IpmsUbd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Kac => "kac",
            TableId::Jaw => "jaw",
            TableId::Vin => "vin",
            TableId::IndVin => "indVin",
            TableId::Ipms => "ipms",
            TableId::IndIpms => "indIpms",
            TableId::IpmsNzc => "ipmsNzc",
            TableId::IpmsUbd => "ipmsUbd",
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            TableId::Kac => "kac.toml",
            TableId::Jaw => "jaw.toml",
            TableId::Vin => "vin.toml",
            TableId::IndVin => "ind_vin.toml",
            TableId::Ipms => "ipms.toml",
            TableId::IndIpms => "ind_ipms.toml",
            TableId::IpmsNzc => "ipms_nzc.toml",
            TableId::IpmsUbd => "ipms_ubd.toml",
        }
    }

    /// Number of rows printed in the source table.
    pub fn expected_rows(self) -> usize {
        match self {
            TableId::Kac => 22,
            TableId::Jaw => 16,
            TableId::Vin => 23,
            TableId::IndVin => 13,
            TableId::Ipms => 25,
            TableId::IndIpms => 28,
            TableId::IpmsNzc => 7,
            TableId::IpmsUbd => 4,
        }
    }

    fn embedded(self) -> &'static str {
        match self {
            TableId::Kac => include_str!("../data/kac.toml"),
            TableId::Jaw => include_str!("../data/jaw.toml"),
            TableId::Vin => include_str!("../data/vin.toml"),
            TableId::IndVin => include_str!("../data/ind_vin.toml"),
            TableId::Ipms => include_str!("../data/ipms.toml"),
            TableId::IndIpms => include_str!("../data/ind_ipms.toml"),
            TableId::IpmsNzc => include_str!("../data/ipms_nzc.toml"),
            TableId::IpmsUbd => include_str!("../data/ipms_ubd.toml"),
        }
    }

    pub fn parse(s: &str) -> Result<TableId> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown table {s:?}")))
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the declared action relates to the real module `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    /// The action is the complexification of `v`.
    R,
    /// The action is `v` with its complex structure.
    C,
    /// As `C`, for a quaternionic module viewed as complex.
    H,
}

/// The division algebra of a generalized Heisenberg summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeisenbergField {
    C,
    H,
    O,
}

impl HeisenbergField {
    pub fn real_dim(self) -> i64 {
        match self {
            HeisenbergField::C => 2,
            HeisenbergField::H => 4,
            HeisenbergField::O => 8,
        }
    }

    pub fn centre_dim(self) -> i64 {
        self.real_dim() - 1
    }
}

/// One summand of an algebra column: `h_{k;F}`, or with `rows = p > 1` the
/// matrix algebra `F^{p×k}` with centre the skew-hermitian `p×p` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraTerm {
    pub field: HeisenbergField,
    pub rank: String,
    #[serde(default = "one_row")]
    pub rows: usize,
}

fn one_row() -> usize {
    1
}

impl AlgebraTerm {
    /// Real dimension of the centre.
    pub fn centre_dim(&self) -> i64 {
        let p = self.rows as i64;
        let d = self.field.real_dim();
        p * (d - 1) + p * (p - 1) / 2 * d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    #[serde(skip_deserializing, default = "default_table")]
    pub table: TableId,
    pub id: String,
    pub group: String,
    #[serde(default)]
    pub acting_on: Option<String>,
    #[serde(default)]
    pub conditions: Option<String>,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub admissible: Option<String>,
    #[serde(default)]
    pub minimal: Rank,
    #[serde(default)]
    pub step: Rank,
    #[serde(default)]
    pub factors: Vec<String>,
    #[serde(default)]
    pub joint: Vec<(usize, usize)>,
    #[serde(default)]
    pub action: Option<RepAction>,
    /// Complex dimension of `action`.
    #[serde(default)]
    pub dim: Option<String>,
    #[serde(default)]
    pub dmax: Option<usize>,
    #[serde(default)]
    pub direct_system: bool,
    #[serde(default)]
    pub notes: Option<String>,
    #[serde(default)]
    pub v: Option<String>,
    #[serde(default)]
    pub z: Option<String>,
    #[serde(default)]
    pub z1: Option<String>,
    #[serde(default)]
    pub z2: Option<String>,
    #[serde(default)]
    pub v_field: Option<Field>,
    #[serde(default)]
    pub v_real_dim: Option<String>,
    #[serde(default)]
    pub z_dim: Option<String>,
    #[serde(default)]
    pub z1_dim: Option<String>,
    #[serde(default)]
    pub z2_dim: Option<String>,
    #[serde(default)]
    pub algebra_text: Option<String>,
    #[serde(default)]
    pub algebra: Vec<AlgebraTerm>,
    #[serde(default)]
    pub u1_needed_if: Option<String>,
    #[serde(default)]
    pub max_requires: Option<String>,
}

fn default_table() -> TableId {
    TableId::Kac
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    table: TableId,
    #[allow(dead_code)]
    caption: String,
    row: Vec<TableRow>,
}

/// A loaded table.
#[derive(Clone, Debug)]
pub struct Table {
    pub id: TableId,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn row(&self, id: &str) -> Result<&TableRow> {
        self.rows
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::Parse(format!("table {} has no row {id:?}", self.id)))
    }
}

/// Parses one table from TOML text and checks its row count and dimension
/// invariants at the minimal rank and the next one.
pub fn parse_table(expected: TableId, text: &str) -> Result<Table> {
    let file: TableFile = toml::from_str(text)
        .map_err(|e| Error::Parse(format!("table {expected}: {}", e.message())))?;
    if file.table != expected {
        return Err(Error::Parse(format!(
            "file declares table {}, expected {expected}",
            file.table
        )));
    }
    let mut rows = file.row;
    for r in rows.iter_mut() {
        r.table = expected;
    }
    if rows.len() != expected.expected_rows() {
        return Err(Error::Parse(format!(
            "table {expected}: {} rows, expected {}",
            rows.len(),
            expected.expected_rows()
        )));
    }
    for r in &rows {
        for rank in r.ranks(2)? {
            r.check_dimensions(&rank)?;
        }
    }
    Ok(Table { id: expected, rows })
}

/// Built-in copy of a table.
pub fn table(id: TableId) -> Result<Table> {
    parse_table(id, id.embedded())
}

/// All built-in tables.
pub fn builtin_tables() -> Result<Vec<Table>> {
    TableId::ALL.into_iter().map(table).collect()
}

/// Loads every table file from a directory, using the standard file names.
pub fn load_tables(dir: &Path) -> Result<Vec<Table>> {
    TableId::ALL
        .into_iter()
        .map(|id| {
            let path = dir.join(id.file_name());
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            parse_table(id, &text)
        })
        .collect()
}

impl TableRow {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Table {
            table: self.table.to_string(),
            row: self.id.clone(),
            message: message.into(),
        }
    }

    fn context(&self, rank: &Rank) -> Result<HashMapContext> {
        let mut ctx = HashMapContext::new();
        for p in &self.params {
            let v = rank
                .get(p)
                .ok_or_else(|| self.err(format!("rank lacks parameter {p}")))?;
            ctx.set_value(p.clone(), Value::Int(*v))
                .map_err(|e| self.err(e.to_string()))?;
        }
        if let Some(extra) = rank.keys().find(|k| !self.params.contains(k)) {
            return Err(self.err(format!("unknown parameter {extra}")));
        }
        Ok(ctx)
    }

    /// Evaluates an integer expression in the row parameters.
    pub fn eval(&self, expr: &str, rank: &Rank) -> Result<i64> {
        evalexpr::eval_int_with_context(expr, &self.context(rank)?)
            .map_err(|e| self.err(format!("expression {expr:?}: {e}")))
    }

    pub fn is_admissible(&self, rank: &Rank) -> Result<bool> {
        match &self.admissible {
            None => Ok(self.params.is_empty() && rank.is_empty()),
            Some(p) => evalexpr::eval_boolean_with_context(p, &self.context(rank)?)
                .map_err(|e| self.err(format!("predicate {p:?}: {e}"))),
        }
    }

    pub fn minimal_rank(&self) -> Result<Rank> {
        let r = self.minimal.clone();
        if !self.is_admissible(&r)? {
            return Err(self.err(format!("minimal rank {} is not admissible", show_rank(&r))));
        }
        Ok(r)
    }

    /// The next stage of the direct system.
    pub fn next_rank(&self, rank: &Rank) -> Result<Option<Rank>> {
        if self.step.is_empty() {
            return Ok(None);
        }
        let mut r = rank.clone();
        for (k, s) in &self.step {
            *r.get_mut(k)
                .ok_or_else(|| self.err(format!("step names unknown parameter {k}")))? += s;
        }
        if !self.is_admissible(&r)? {
            return Err(self.err(format!(
                "rank {} after a step is not admissible",
                show_rank(&r)
            )));
        }
        Ok(Some(r))
    }

    /// Up to `count` consecutive stages starting at the minimal rank.
    pub fn ranks(&self, count: usize) -> Result<Vec<Rank>> {
        let mut out = Vec::new();
        let mut cur = Some(self.minimal_rank()?);
        while let Some(r) = cur {
            if out.len() == count {
                break;
            }
            cur = self.next_rank(&r)?;
            out.push(r);
        }
        Ok(out)
    }

    pub fn dmax(&self) -> usize {
        self.dmax.unwrap_or(4)
    }

    pub fn has_spec(&self) -> bool {
        self.action.is_some()
    }

    /// Factor kinds at a rank.
    pub fn factor_kinds(&self, rank: &Rank) -> Result<Vec<FactorKind>> {
        self.factors.iter().map(|t| self.factor(t, rank)).collect()
    }

    fn factor(&self, template: &str, rank: &Rank) -> Result<FactorKind> {
        let t = template.trim();
        match t {
            "U(1)" => return Ok(FactorKind::Circle),
            "G2" => return Ok(FactorKind::G2),
            "E6" => return Ok(FactorKind::E6),
            _ => {}
        }
        let (name, arg) = t
            .strip_suffix(')')
            .and_then(|s| s.split_once('('))
            .ok_or_else(|| self.err(format!("bad factor template {t:?}")))?;
        let n = self.eval(arg, rank)?;
        let n = usize::try_from(n).map_err(|_| self.err(format!("{t} has negative rank")))?;
        Ok(match name {
            "U" => FactorKind::Unitary(n),
            "SU" => FactorKind::SpecialUnitary(n),
            "Sp" => FactorKind::Symplectic(n),
            "SO" => FactorKind::Orthogonal(n),
            "Spin" => FactorKind::Spin(n),
            _ => return Err(self.err(format!("unknown factor {name:?}"))),
        })
    }

    /// The group and its action on `v` at a rank.
    pub fn spec(&self, rank: &Rank) -> Result<GroupSpec> {
        let action = self.action.clone().ok_or_else(|| {
            Error::Unsupported(format!(
                "table {} row {} has no group template",
                self.table, self.id
            ))
        })?;
        if !self.is_admissible(rank)? {
            return Err(self.err(format!("rank {} is not admissible", show_rank(rank))));
        }
        let kinds = self.factor_kinds(rank)?;
        Ok(GroupSpec::new(&kinds, &self.joint, action)
            .map_err(|e| self.err(e.to_string()))?
            .with_source(self.table.name(), &self.id))
    }

    pub fn minimal_spec(&self) -> Result<GroupSpec> {
        self.spec(&self.minimal_rank()?)
    }

    /// Dimension invariants at one rank: the action has the declared complex
    /// dimension, that dimension matches `v`, and the algebra column matches
    /// the real dimensions of `v` and `z'`.
    pub fn check_dimensions(&self, rank: &Rank) -> Result<()> {
        let opt = |e: &Option<String>| -> Result<Option<i64>> {
            e.as_deref().map(|x| self.eval(x, rank)).transpose()
        };
        let dim = opt(&self.dim)?;
        if let Some(n) = dim {
            if n <= 0 {
                return Err(self.err(format!("dimension {n} at rank {}", show_rank(rank))));
            }
        }
        if self.action.is_some() {
            let n = dim.ok_or_else(|| self.err("group template without dimension"))?;
            self.spec(rank)?
                .check_dim(n as u64)
                .map_err(|e| self.err(format!("rank {}: {e}", show_rank(rank))))?;
        }
        let vdim = opt(&self.v_real_dim)?;
        if let (Some(n), Some(v), Some(f)) = (dim, vdim, self.v_field) {
            let expect = if f == Field::R { n } else { 2 * n };
            if expect != v {
                return Err(self.err(format!("v has real dimension {v}, action gives {expect}")));
            }
        }
        if !self.algebra.is_empty() {
            let mut vsum = 0;
            let mut zsum = 0;
            for t in &self.algebra {
                let k = self.eval(&t.rank, rank)?;
                if k < 1 {
                    return Err(self.err(format!("algebra summand of rank {k}")));
                }
                vsum += t.rows as i64 * k * t.field.real_dim();
                zsum += t.centre_dim();
            }
            if vdim.is_some_and(|v| v != vsum) {
                return Err(self.err(format!(
                    "algebra gives dim v = {vsum}, row declares {vdim:?}"
                )));
            }
            let z1 = opt(&self.z1_dim)?;
            if z1.is_some_and(|z| z != zsum) {
                return Err(self.err(format!(
                    "algebra gives dim z' = {zsum}, row declares {z1:?}"
                )));
            }
        }
        Ok(())
    }

    /// Summands `(field, rows, k)` of the algebra column at a rank.
    pub fn algebra_at(&self, rank: &Rank) -> Result<Vec<(HeisenbergField, usize, usize)>> {
        self.algebra
            .iter()
            .map(|t| Ok((t.field, t.rows, self.eval(&t.rank, rank)? as usize)))
            .collect()
    }
}

pub fn show_rank(rank: &Rank) -> String {
    if rank.is_empty() {
        return "fixed".into();
    }
    rank.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

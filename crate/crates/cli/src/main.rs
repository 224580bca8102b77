//! `dlimit`: run verification jobs and inspect tables, Pfaffians, Fock
//! operators and stage chains.

use std::collections::BTreeSet;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dlimit_core::fock::{self, GroupElement};
use dlimit_core::limits::{self, LabelSource};
use dlimit_core::linalg::{self, Q};
use dlimit_core::nilpotent::{self, CentralFunctional};
use dlimit_core::suite::{self, CheckKind, Filter, SuiteConfig};
use dlimit_core::tables::{self, show_rank, Rank, TableId};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "dlimit",
    version,
    about = "Finite-rank checks for direct limits of commutative nilmanifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct Common {
    /// Table id (kac, jaw, vin, indVin, ipms, indIpms, ipmsNzc, ipmsUbd).
    #[arg(long)]
    table: Option<String>,
    /// Row id within the table.
    #[arg(long)]
    row: Option<String>,
    /// Rank parameters, e.g. `n=3,m=2`.
    #[arg(long)]
    rank: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification jobs; exits nonzero if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check kinds, comma separated; defaults to all.
        #[arg(long, value_delimiter = ',')]
        kind: Vec<String>,
        #[arg(long)]
        dmax: Option<usize>,
        /// Central functional samples, e.g. `1/2,1,2`.
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value_t = 30)]
        cutoff: usize,
        #[arg(long, default_value_t = 8)]
        quad_order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Print a table row and its instantiation at a rank.
    Show {
        #[command(flatten)]
        common: Common,
    },
    /// Truncated Fock model: group law residual and orthogonality integrals.
    Fock {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value_t = 30)]
        cutoff: usize,
        #[arg(long, default_value_t = 5)]
        block: usize,
        #[arg(long, default_value_t = 8)]
        quad_order: usize,
    },
    /// Pfaffian of b_t for a named algebra or a table row.
    Pfaffian {
        #[command(flatten)]
        common: Common,
        /// Algebra name such as `h(2;C)`, `mat(2,1;H)` or `h(1;O)+z(3)`.
        #[arg(long)]
        algebra: Option<String>,
        /// Coordinates of t on z, comma separated; defaults to all ones.
        #[arg(long)]
        t: Option<String>,
    },
    /// Build a stage chain and check alignment.
    Chain {
        #[command(flatten)]
        common: Common,
        /// Number of stages.
        #[arg(long, default_value_t = 3)]
        stages: usize,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
        #[arg(long, default_value = "1/2,1,2")]
        t: String,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn table_id(common: &Common) -> Result<Option<TableId>> {
    common
        .table
        .as_deref()
        .map(TableId::parse)
        .transpose()
        .map_err(Into::into)
}

fn rank(common: &Common) -> Result<Option<Rank>> {
    common
        .rank
        .as_deref()
        .map(suite::parse_rank)
        .transpose()
        .map_err(Into::into)
}

fn row(common: &Common) -> Result<tables::TableRow> {
    let t = table_id(common)?.context("--table is required")?;
    let id = common.row.as_deref().context("--row is required")?;
    Ok(tables::table(t)?.row(id)?.clone())
}

fn run() -> Result<bool> {
    match Cli::parse().command {
        Command::Verify {
            common,
            kind,
            dmax,
            t,
            cutoff,
            quad_order,
            seed,
            format,
        } => {
            let kinds: BTreeSet<CheckKind> = if kind.is_empty() {
                CheckKind::ALL.into_iter().collect()
            } else {
                kind.iter()
                    .map(|k| CheckKind::parse(k))
                    .collect::<dlimit_core::Result<_>>()?
            };
            let filter = Filter {
                kinds,
                tables: table_id(&common)?.into_iter().collect(),
                rows: common.row.clone().into_iter().collect(),
                rank: rank(&common)?,
            };
            let mut config = SuiteConfig {
                dmax,
                seed,
                cutoff,
                quad_order,
                ..Default::default()
            };
            if let Some(t) = t {
                config.t_samples = suite::nonzero(suite::parse_rationals(&t)?)?;
            }
            let reports = suite::run_suite(&filter, &config)?;
            match format {
                Format::Json => println!("{}", suite::to_json(&reports)),
                Format::Markdown => print!("{}", suite::render_markdown(&reports)),
            }
            Ok(suite::suite_passed(&reports))
        }
        Command::Show { common } => {
            let row = row(&common)?;
            let r = match rank(&common)? {
                Some(r) => r,
                None => row.minimal_rank()?,
            };
            println!("table {} row {}", row.table, row.id);
            println!("group      {}", row.group);
            for (label, value) in [
                ("v", &row.v),
                ("acting on", &row.acting_on),
                ("z", &row.z),
                ("z'", &row.z1),
                ("z''", &row.z2),
            ] {
                if let Some(v) = value {
                    println!("{label:<10} {v}");
                }
            }
            if let Some(a) = &row.admissible {
                println!("admissible {a}");
            }
            println!("rank       {}", show_rank(&r));
            if let Some(n) = &row.notes {
                println!("notes      {n}");
            }
            row.check_dimensions(&r)?;
            if row.has_spec() {
                let spec = row.spec(&r)?;
                println!("instance   {} on C^{}", spec.name(), spec.dim()?);
            }
            if !row.algebra.is_empty() {
                let alg = nilpotent::table_algebra(&row, &r)?;
                println!(
                    "algebra    {} (dim v = {}, dim z = {})",
                    alg.name, alg.dim_v, alg.dim_z
                );
            }
            Ok(true)
        }
        Command::Fock {
            n,
            t,
            cutoff,
            block,
            quad_order,
        } => {
            let t: Q = t
                .parse()
                .map_err(|_| anyhow::anyhow!("t must be rational"))?;
            let tf = linalg::to_f64(&t);
            let v: Vec<Complex64> = (0..n)
                .map(|k| Complex64::from_polar(0.9 / (n as f64).sqrt(), 0.4 + k as f64))
                .collect();
            let a = GroupElement::new(0.3, v.clone());
            let b = GroupElement::new(
                -0.2,
                v.iter().map(|x| x * Complex64::new(0.0, 1.0)).collect(),
            );
            if n == 1 {
                let res = fock::verify_group_law(tf, &a, &b, cutoff, block)?;
                println!(
                    "group law residual (cutoff {cutoff}, block {block}): {}",
                    suite::fmt_f64(res)
                );
            }
            let idx = fock::FockBasis::new(n, 2).index;
            let funcs: Vec<fock::IndexPair> = idx
                .iter()
                .flat_map(|l| idx.iter().map(move |m| (l.clone(), m.clone())))
                .collect();
            let g = fock::orthogonality_gram(&funcs, tf, quad_order)?;
            let expect = tf.abs().powi(-(n as i32));
            let mut err: f64 = 0.0;
            for (i, row) in g.gram.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    err = err
                        .max((x - Complex64::new(if i == j { expect } else { 0.0 }, 0.0)).norm());
                }
            }
            println!(
                "orthogonality: {} functions, max deviation {} from |t|^-n = {}, order {} (converged: {})",
                funcs.len(),
                suite::fmt_f64(err),
                suite::fmt_f64(expect),
                g.order,
                g.converged
            );
            Ok(g.converged && err < 1e-6)
        }
        Command::Pfaffian { common, algebra, t } => {
            let alg = match algebra {
                Some(name) => nilpotent::build_algebra(&name)?,
                None => {
                    let row = row(&common)?;
                    let r = match rank(&common)? {
                        Some(r) => r,
                        None => row.minimal_rank()?,
                    };
                    nilpotent::table_algebra(&row, &r)?
                }
            };
            let t = match t {
                Some(s) => suite::parse_rationals(&s)?,
                None => vec![linalg::q(1); alg.dim_z],
            };
            if t.len() != alg.dim_z {
                bail!(
                    "{} has dim z = {}, got {} coordinates",
                    alg.name,
                    alg.dim_z,
                    t.len()
                );
            }
            let form = nilpotent::b_form(&alg, &CentralFunctional::new(t))?;
            let pf = nilpotent::pfaffian(&form);
            println!(
                "algebra  {} (dim v = {}, dim z = {})",
                alg.name, alg.dim_v, alg.dim_z
            );
            println!("Pf(b_t)  {pf}");
            println!("det(b_t) {}", form.det());
            println!("square integrable: {}", pf != Q::from_integer(0.into()));
            Ok(true)
        }
        Command::Chain {
            common,
            stages,
            dmax,
            t,
        } => {
            let ts = suite::nonzero(suite::parse_rationals(&t)?)?;
            let chain = if common.table.is_none() && common.row.is_none() {
                limits::build_heisenberg_chain(stages, &ts)?
            } else {
                let row = row(&common)?;
                let ranks = row.ranks(stages)?;
                limits::build_semidirect_chain(
                    &row,
                    &ranks,
                    &ts,
                    &LabelSource::Polynomial { dmax },
                )?
            };
            println!("chain {}", chain.name);
            for s in &chain.stages {
                println!("  stage {}: {} components", s.name, s.entries.len());
            }
            let a = limits::check_limit_aligned(&chain);
            println!("limit aligned: {}", a.aligned);
            if let Some(w) = &a.witness {
                println!("witness: {w}");
            }
            Ok(a.aligned)
        }
    }
}

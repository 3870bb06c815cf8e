//! Command-line front end: `bethe verify <check>` and `bethe compute <object>`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::checks::{run_check, CheckParams, CHECK_NAMES};
use crate::error::{invalid, Error, Result};
use crate::index::{FormType, IndexSet};
use crate::poisson::{bethe_polys, generic_z, PoissonSpace};
use crate::rational::Rat;
use crate::twisted::{twisted_bethe, SMatrix, S_ORIENTATION};
use crate::yangian::{bethe_series, quantum_determinant, Symmetry, ZMatrix};

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "BETHE_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "bethe", version, about = "Bethe subalgebras of Yangians: exact construction and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite; exit 0 on pass, 1 on failure.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
        check: String,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Compute and persist a table of series coefficients.
    Compute {
        object: Object,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Object {
    Bethe,
    Qdet,
    TwistedBethe,
    PoissonBethe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gl,
    So,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZSymmetry {
    Skew,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, value_enum, default_value = "gl")]
    pub kind: Kind,
    /// Matrix size N.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Rank n of sp_{2n} (N = 2n).
    #[arg(long = "n")]
    pub small_n: Option<usize>,
    /// `diag:z1,z2,…` or `json:<path>` (rows of rationals in position order).
    #[arg(long = "Z")]
    pub z: Option<String>,
    /// How `diag:` with n values fills the negative labels.
    #[arg(long, value_enum, default_value = "skew")]
    pub symmetry: ZSymmetry,
    /// Truncation order in u^{-1}.
    #[arg(long = "D")]
    pub d: Option<usize>,
    /// Commutator budget r + s.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Level cutoff of the current space.
    #[arg(long = "M")]
    pub m: Option<u16>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Restrict to a single B_k / A_k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Output file; defaults to $BETHE_OUT_DIR/<name>.json, else stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads (default: machine parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Record runtime_ms as 0 so reports are byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
}

impl ConfigArgs {
    pub fn index_set(&self) -> Result<IndexSet> {
        match (self.kind, self.big_n, self.small_n) {
            (_, Some(_), Some(_)) => invalid("give either --N or --n"),
            (Kind::Gl, Some(n), None) => IndexSet::plain(n),
            (Kind::Gl, None, _) => invalid("--kind gl needs --N"),
            (Kind::Sp, None, Some(n)) => IndexSet::signed(2 * n, FormType::Symplectic),
            (Kind::Sp, Some(n), None) => IndexSet::signed(n, FormType::Symplectic),
            (Kind::So, Some(n), None) => IndexSet::signed(n, FormType::Orthogonal),
            (Kind::So, None, Some(_)) => invalid("--kind so needs --N (both parities exist)"),
            (_, None, None) => invalid("missing --N / --n"),
        }
    }

    pub fn z_matrix(&self, set: IndexSet) -> Result<Option<ZMatrix>> {
        let Some(spec) = &self.z else { return Ok(None) };
        parse_z(spec, set, self.symmetry).map(Some)
    }

    pub fn check_params(&self) -> Result<CheckParams> {
        let set = self.index_set()?;
        Ok(CheckParams {
            set,
            z: self.z_matrix(set)?,
            d: self.d,
            budget: self.budget,
            m: self.m,
            k: self.k,
            seed: self.seed,
        })
    }
}

/// The `--Z` grammar. Signed sets accept either all `N` diagonal entries or the
/// entries at labels `1..n`, completed according to `symmetry`.
pub fn parse_z(spec: &str, set: IndexSet, symmetry: ZSymmetry) -> Result<ZMatrix> {
    if let Some(list) = spec.strip_prefix("diag:") {
        let vals: Vec<Rat> = list.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?;
        if vals.len() == set.dim() {
            return ZMatrix::diag(set, &vals);
        }
        if set.is_signed() && vals.len() == set.half() {
            let sym = match symmetry {
                ZSymmetry::Skew => Symmetry::PrimeSkew,
                ZSymmetry::Symmetric => Symmetry::PrimeSymmetric,
            };
            return ZMatrix::signed_diag(set, &vals, sym);
        }
        return invalid(format!("diag: needs {} values for {set}", set.dim()));
    }
    if let Some(path) = spec.strip_prefix("json:") {
        let text = std::fs::read_to_string(path)?;
        let rows: Vec<Vec<Value>> = serde_json::from_str(&text)?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(json_rat).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        return ZMatrix::new(set, rows, None);
    }
    Err(Error::Parse(format!("unrecognized Z specification {spec:?}")))
}

fn json_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.as_i64().map(Rat::from).ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

/// A persisted coefficient table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub config: Value,
    pub series: Vec<TableSeries>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSeries {
    pub k: usize,
    pub coeffs: Vec<Value>,
}

impl Table {
    pub fn load(path: &Path) -> Result<Table> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// Coefficients of series `k` as Yangian elements (`bethe`, `qdet`).
    pub fn algebra_coeffs(&self, alg: &Algebra, set: &IndexSet, k: usize) -> Result<Vec<crate::algebra::AlgebraElement>> {
        let Some(s) = self.series.iter().find(|s| s.k == k) else {
            return invalid(format!("no series with k = {k}"));
        };
        s.coeffs.iter().map(|c| alg.from_json(c, set)).collect()
    }
}

fn ks(cfg: &ConfigArgs, n: usize) -> Result<Vec<usize>> {
    match cfg.k {
        Some(k) if k == 0 || k > n => invalid(format!("k must lie in 1..={n}")),
        Some(k) => Ok(vec![k]),
        None => Ok((1..=n).collect()),
    }
}

/// Build the table for `object`.
pub fn compute_table(object: Object, cfg: &ConfigArgs) -> Result<Table> {
    let set = cfg.index_set()?;
    let n = set.dim();
    let z = || -> Result<ZMatrix> { cfg.z_matrix(set)?.map_or_else(|| generic_z(set), Ok) };
    let mut config = json!({ "object": object, "set": set.to_string() });
    let series = match object {
        Object::Qdet => {
            if set.is_signed() {
                return invalid("qdet is computed in Y(gl_N); use --kind gl");
            }
            let d = cfg.d.unwrap_or(4);
            config["D"] = json!(d);
            let q = quantum_determinant(&Algebra::yangian(n), set, d)?;
            vec![TableSeries { k: n, coeffs: q.coeffs().iter().map(|c| c.to_json(&set)).collect() }]
        }
        Object::Bethe => {
            if set.is_signed() {
                return invalid("bethe is computed in Y(gl_N); use twisted-bethe for so/sp");
            }
            let (z, d) = (z()?, cfg.d.unwrap_or(3));
            config["D"] = json!(d);
            config["Z"] = json!(z.describe());
            let alg = Algebra::yangian(n);
            ks(cfg, n)?
                .into_iter()
                .map(|k| {
                    let b = bethe_series(&alg, k, &z, d)?;
                    Ok(TableSeries { k, coeffs: b.coeffs().iter().map(|c| c.to_json(&set)).collect() })
                })
                .collect::<Result<Vec<_>>>()?
        }
        Object::TwistedBethe => {
            set.require_signed()?;
            let (z, d) = (z()?, cfg.d.unwrap_or(3));
            config["D"] = json!(d);
            config["Z"] = json!(z.describe());
            let sm = SMatrix::free(set, d)?;
            ks(cfg, n)?
                .into_iter()
                .map(|k| {
                    let a = twisted_bethe(&sm, &z, k, S_ORIENTATION)?;
                    Ok(TableSeries { k, coeffs: a.coeffs().iter().map(|c| c.to_json(&set)).collect() })
                })
                .collect::<Result<Vec<_>>>()?
        }
        Object::PoissonBethe => {
            let z = z()?;
            let m = cfg.m.unwrap_or(1);
            config["M"] = json!(m);
            config["Z"] = json!(z.describe());
            let space = PoissonSpace::new(set, m)?;
            let polys = bethe_polys(&space, &z)?;
            ks(cfg, n)?
                .into_iter()
                .map(|k| TableSeries { k, coeffs: polys[k - 1].iter().map(|p| space.to_json(p)).collect() })
                .collect()
        }
    };
    Ok(Table { config, series })
}

fn destination(cfg: &ConfigArgs, stem: &str) -> Option<PathBuf> {
    cfg.out.clone().or_else(|| std::env::var_os(OUT_DIR_VAR).map(|d| PathBuf::from(d).join(format!("{stem}.json"))))
}

fn emit(cfg: &ConfigArgs, stem: &str, body: &str) -> Result<()> {
    match destination(cfg, stem) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, body)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DualPathMismatch(_) | Error::UndefinedDegree | Error::SingularLeadingTerm => 1,
        _ => 2,
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    let pool = b.build().map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(pool.install(f))
}

fn verify(check: &str, cfg: &ConfigArgs) -> Result<i32> {
    let params = cfg.check_params()?;
    let start = Instant::now();
    let mut report = with_pool(cfg.threads, || run_check(check, &params))??;
    if !cfg.no_timing {
        report.runtime_ms = start.elapsed().as_millis() as u64;
    }
    let body = match cfg.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    emit(cfg, check, &body)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn compute(object: Object, cfg: &ConfigArgs) -> Result<i32> {
    let table = with_pool(cfg.threads, || compute_table(object, cfg))??;
    let stem = serde_json::to_value(object)?.as_str().unwrap_or("table").to_string();
    emit(cfg, &stem, &(serde_json::to_string_pretty(&table)? + "\n"))?;
    Ok(0)
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Verify { check, config } => verify(check, config),
        Command::Compute { object, config } => compute(*object, config),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> ConfigArgs {
        let mut v = vec!["bethe", "compute", "qdet"];
        v.extend_from_slice(args);
        match Cli::try_parse_from(v).unwrap().command {
            Command::Compute { config, .. } => config,
            _ => unreachable!(),
        }
    }

    #[test]
    fn index_sets() {
        assert_eq!(cfg(&["--N", "3"]).index_set().unwrap(), IndexSet::gl(3));
        assert_eq!(cfg(&["--kind", "sp", "--n", "1"]).index_set().unwrap(), IndexSet::sp(2));
        assert_eq!(cfg(&["--kind", "so", "--N", "3"]).index_set().unwrap(), IndexSet::so(3));
        assert!(cfg(&["--kind", "sp", "--N", "3"]).index_set().is_err());
        assert!(cfg(&["--kind", "so", "--n", "1"]).index_set().is_err());
    }

    #[test]
    fn z_grammar() {
        let so3 = IndexSet::so(3);
        let z = parse_z("diag:1", so3, ZSymmetry::Skew).unwrap();
        assert_eq!(z, ZMatrix::signed_diag(so3, &[Rat::from(1)], Symmetry::PrimeSkew).unwrap());
        assert_eq!(z.symmetry(), Symmetry::PrimeSkew);
        let s = parse_z("diag:2", so3, ZSymmetry::Symmetric).unwrap();
        assert_eq!(s.symmetry(), Symmetry::PrimeSymmetric);
        let g = parse_z("diag:1,1/2,-3", IndexSet::gl(3), ZSymmetry::Skew).unwrap();
        assert_eq!(g.entry(1, 1), &Rat::new(1, 2));
        assert!(parse_z("diag:1,2", IndexSet::gl(3), ZSymmetry::Skew).is_err());
        assert!(parse_z("eye", IndexSet::gl(3), ZSymmetry::Skew).is_err());
    }
}

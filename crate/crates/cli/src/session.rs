use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bicrossed::cache::TableCache;
use bicrossed::error::{Error, Result};
use bicrossed::length::{self, ClassLength};
use bicrossed::{corpus, io, rep, Bicrossed, FiniteGroup, IrrepTable, MatchedPair, Tolerances};
use clap::Args;

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Matched-pair descriptor (JSON); a missing path falls back to the
    /// bundled example with the same file stem
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_alg: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_int: f64,
    /// Random trials per check
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Length window; all nonempty windows when omitted
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated generating set of Γ, by label or index
    #[arg(long)]
    pub generators: Option<String>,
    /// Constant C of the polynomial-growth predicates
    #[arg(long)]
    pub c: Option<f64>,
    /// Exponent N of the polynomial-growth predicates
    #[arg(long)]
    pub n: Option<f64>,
    /// Length recipe (zero, lprime, l, ltilde) or a JSON file mapping class labels to reals
    #[arg(long, default_value = "ltilde")]
    pub length: String,
    /// Γ element (label or index) for `induce`; all of Γ when omitted
    #[arg(long)]
    pub gamma: Option<String>,
    /// Write JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for cached irrep tables
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

pub struct Session {
    pub flags: Flags,
    pub tol: Tolerances,
}

fn input_error(message: impl Into<String>, location: Option<String>) -> Error {
    Error::Parse {
        message: message.into(),
        location,
    }
}

impl Session {
    pub fn new(flags: Flags) -> Result<Self> {
        let tol = Tolerances {
            alg: flags.tol_alg,
            int: flags.tol_int,
            ..Tolerances::default()
        };
        if !(tol.alg > 0.0 && tol.int > 0.0) {
            return Err(input_error("tolerances must be positive", None));
        }
        Ok(Session { flags, tol })
    }

    pub fn input_name(&self) -> String {
        self.flags
            .input
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_default()
    }

    pub fn pair(&self) -> Result<Arc<MatchedPair>> {
        let path = self
            .flags
            .input
            .as_ref()
            .ok_or_else(|| input_error("this command needs an input descriptor", None))?;
        resolve(path).map(Arc::new)
    }

    pub fn bicrossed(&self) -> Result<Bicrossed> {
        let mp = self.pair()?;
        let report = mp.validate();
        if !report.is_ok() {
            return Err(input_error(
                format!("matched-pair relations fail ({} violations); run `validate`", report.total_violations),
                None,
            ));
        }
        match &self.flags.cache {
            None => Bicrossed::new(mp, self.flags.seed, self.tol),
            Some(dir) => {
                let cache = TableCache::new(dir)?;
                let seed = self.flags.seed;
                let tol = self.tol;
                Bicrossed::with_table_source(mp, seed, tol, &move |g: &Arc<FiniteGroup>| {
                    cache.get_or_build(g, seed, &tol).map(|(t, _)| t)
                })
            }
        }
    }

    pub fn table(&self, g: &Arc<FiniteGroup>) -> Result<IrrepTable> {
        match &self.flags.cache {
            None => rep::irreps(g, self.flags.seed, &self.tol),
            Some(dir) => Ok(TableCache::new(dir)?.get_or_build(g, self.flags.seed, &self.tol)?.0),
        }
    }

    pub fn generators(&self, gamma: &FiniteGroup) -> Result<Vec<usize>> {
        match &self.flags.generators {
            None => Ok(length::default_generators(gamma)),
            Some(s) => s
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| element(gamma, t, "--generators"))
                .collect(),
        }
    }

    /// The class length selected by `--length`.
    pub fn class_length(&self, b: &Bicrossed) -> Result<ClassLength> {
        let choice = &self.flags.length;
        if let Some(r) = length::recipe(choice) {
            return r.build(b, &self.generators(b.pair().gamma())?);
        }
        let path = Path::new(choice);
        if !path.exists() {
            let names: Vec<&str> = length::recipes().iter().map(|r| r.name()).collect();
            return Err(input_error(
                format!("unknown length \"{choice}\"; expected one of {} or a JSON file", names.join(", ")),
                Some("--length".into()),
            ));
        }
        let map: BTreeMap<String, f64> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let mut values = vec![f64::NAN; b.classes().len()];
        for (label, v) in &map {
            let id = b
                .find_label(label)
                .ok_or_else(|| input_error(format!("no class labelled \"{label}\""), Some(format!("$[\"{label}\"]"))))?;
            values[id] = *v;
        }
        if let Some(id) = values.iter().position(|v| v.is_nan()) {
            return Err(input_error(format!("missing length for class \"{}\"", b.label(id)), None));
        }
        Ok(ClassLength { values })
    }
}

/// A Γ element by label, falling back to a numeric index.
pub fn element(group: &FiniteGroup, token: &str, flag: &str) -> Result<usize> {
    if let Some(i) = (0..group.order()).find(|&i| group.label(i) == token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < group.order() => Ok(i),
        _ => Err(input_error(format!("\"{token}\" is not an element of Γ"), Some(flag.into()))),
    }
}

fn resolve(path: &Path) -> Result<MatchedPair> {
    if path.exists() {
        return io::read_pair(path);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    match corpus::find(stem) {
        Some(e) => e.pair(),
        None => Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("{} not found and no bundled example is named \"{stem}\"", path.display()),
        ))),
    }
}

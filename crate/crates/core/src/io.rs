//! JSON descriptors for matched pairs and their constituent groups, and serialized irrep tables.
//!
//! Groups come as a Cayley table `{"order", "mult", "labels"?}` or as
//! generating permutations `{"permutations": [[...]]}` (0- or 1-based).
//! Matched pairs come as explicit action tables
//! `{"gamma", "g", "alpha", "beta"}` or as an exact factorization
//! `{"factorization": {"ambient", "gamma_gens", "g_gens"}}`, where generators
//! are ambient indices or, for permutation ambients, permutations.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{CMat, C64};
use crate::matched_pair::MatchedPair;
use crate::rep::{IrrepTable, UnitaryRep};
use crate::Tolerances;

fn parse_err(message: impl Into<String>, location: &str) -> Error {
    Error::Parse {
        message: message.into(),
        location: Some(location.to_string()),
    }
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| parse_err(format!("missing field \"{key}\""), path))
}

fn typed<T: for<'de> Deserialize<'de>>(v: &Value, path: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| parse_err(e.to_string(), path))
}

/// A group plus, for permutation descriptors, the permutation of each element.
#[derive(Debug, Clone)]
pub struct ParsedGroup {
    pub group: Arc<FiniteGroup>,
    pub permutations: Option<Vec<Vec<usize>>>,
}

/// Cycle notation on `1..=n`, `e` for the identity.
pub fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

pub fn group_from_value(v: &Value, path: &str) -> Result<ParsedGroup> {
    if let Some(perms) = v.get("permutations") {
        let gens: Vec<Vec<usize>> = typed(perms, &format!("{path}.permutations"))?;
        let (g, elems) = FiniteGroup::from_permutations(&gens)
            .map_err(|e| parse_err(e.to_string(), &format!("{path}.permutations")))?;
        let labels = elems.iter().map(|p| cycle_label(p)).collect();
        let g = g.with_labels(labels)?;
        return Ok(ParsedGroup {
            group: Arc::new(g),
            permutations: Some(elems),
        });
    }
    let order: usize = typed(field(v, "order", path)?, &format!("{path}.order"))?;
    let mult: Vec<Vec<usize>> = typed(field(v, "mult", path)?, &format!("{path}.mult"))?;
    if mult.len() != order {
        return Err(parse_err(format!("\"mult\" has {} rows but order is {order}", mult.len()), &format!("{path}.mult")));
    }
    let labels: Option<Vec<String>> = match v.get("labels") {
        Some(Value::Null) | None => None,
        Some(l) => Some(typed(l, &format!("{path}.labels"))?),
    };
    let g = FiniteGroup::from_table_with_labels(mult, labels)?;
    Ok(ParsedGroup {
        group: Arc::new(g),
        permutations: None,
    })
}

pub fn group_to_value(g: &FiniteGroup) -> Value {
    let mut v = serde_json::json!({ "order": g.order(), "mult": g.table() });
    if let Some(l) = g.labels() {
        v["labels"] = serde_json::json!(l);
    }
    v
}

fn generators(v: &Value, ambient: &ParsedGroup, path: &str) -> Result<Vec<usize>> {
    let arr = v.as_array().ok_or_else(|| parse_err("expected an array of generators", path))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            let here = format!("{path}[{i}]");
            if let Some(k) = x.as_u64() {
                let k = k as usize;
                if k >= ambient.group.order() {
                    return Err(parse_err(format!("index {k} out of range"), &here));
                }
                return Ok(k);
            }
            let perm: Vec<usize> = typed(x, &here)?;
            let elems = ambient
                .permutations
                .as_ref()
                .ok_or_else(|| parse_err("permutation generator needs a permutation ambient", &here))?;
            let deg = elems.first().map(|p| p.len()).unwrap_or(0);
            let zero_based = if perm.iter().all(|&a| a >= 1 && a <= deg) && !perm.contains(&0) {
                perm.iter().map(|&a| a - 1).collect()
            } else {
                perm
            };
            elems
                .iter()
                .position(|p| *p == zero_based)
                .ok_or_else(|| parse_err("permutation is not in the ambient group", &here))
        })
        .collect()
}

pub fn pair_from_value(v: &Value) -> Result<MatchedPair> {
    if let Some(f) = v.get("factorization") {
        let path = "$.factorization";
        let ambient = group_from_value(field(f, "ambient", path)?, &format!("{path}.ambient"))?;
        let gg = generators(field(f, "gamma_gens", path)?, &ambient, &format!("{path}.gamma_gens"))?;
        let hg = generators(field(f, "g_gens", path)?, &ambient, &format!("{path}.g_gens"))?;
        let gamma = Subgroup::closure(&ambient.group, &gg)?;
        let g = Subgroup::closure(&ambient.group, &hg)?;
        return MatchedPair::from_exact_factorization(&ambient.group, &gamma, &g);
    }
    let gamma = group_from_value(field(v, "gamma", "$")?, "$.gamma")?;
    let g = group_from_value(field(v, "g", "$")?, "$.g")?;
    let alpha: Vec<Vec<usize>> = typed(field(v, "alpha", "$")?, "$.alpha")?;
    let beta: Vec<Vec<usize>> = typed(field(v, "beta", "$")?, "$.beta")?;
    MatchedPair::new(gamma.group, g.group, alpha, beta)
}

/// Explicit form of a pair: both groups as tables plus `α`, `β`.
pub fn pair_to_value(mp: &MatchedPair) -> Value {
    serde_json::json!({
        "gamma": group_to_value(mp.gamma()),
        "g": group_to_value(mp.g()),
        "alpha": mp.alpha_table(),
        "beta": mp.beta_table(),
    })
}

pub fn parse_pair(text: &str) -> Result<MatchedPair> {
    let v: Value = serde_json::from_str(text)?;
    pair_from_value(&v)
}

pub fn parse_group(text: &str) -> Result<Arc<FiniteGroup>> {
    let v: Value = serde_json::from_str(text)?;
    Ok(group_from_value(&v, "$")?.group)
}

pub fn read_pair(path: &Path) -> Result<MatchedPair> {
    parse_pair(&std::fs::read_to_string(path)?)
}

/// Serialized irrep table: `irreps[x][g]` is a matrix of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrepTableFile {
    pub group_hash: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub irreps: Vec<Vec<Vec<Vec<[f64; 2]>>>>,
}

impl IrrepTableFile {
    pub fn from_table(table: &IrrepTable, seed: u64, tolerances: Tolerances) -> Self {
        let irreps = table
            .irreps()
            .iter()
            .map(|u| {
                u.matrices()
                    .iter()
                    .map(|m| {
                        (0..m.nrows())
                            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        IrrepTableFile {
            group_hash: table.group().content_hash(),
            seed,
            tolerances,
            irreps,
        }
    }

    /// Rebuilds the table on `group`, re-running the unitarity, homomorphism
    /// and completeness checks.
    pub fn into_table(self, group: &Arc<FiniteGroup>) -> Result<IrrepTable> {
        if self.group_hash != group.content_hash() {
            return Err(Error::Parse {
                message: "irrep table belongs to a different group".into(),
                location: Some("$.group_hash".into()),
            });
        }
        let reps = self
            .irreps
            .into_iter()
            .enumerate()
            .map(|(x, mats)| {
                let matrices = mats
                    .into_iter()
                    .map(|rows| {
                        let d = rows.len();
                        if rows.iter().any(|r| r.len() != d) {
                            return Err(parse_err("matrix is not square", &format!("$.irreps[{x}]")));
                        }
                        Ok(CMat::from_fn(d, d, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
                    })
                    .collect::<Result<Vec<_>>>()?;
                UnitaryRep::new(group.clone(), matrices)
            })
            .collect::<Result<Vec<_>>>()?;
        IrrepTable::from_irreps(group.clone(), reps, &self.tolerances)
    }
}

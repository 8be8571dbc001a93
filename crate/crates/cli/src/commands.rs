use std::collections::BTreeMap;
use std::sync::Arc;

use bicrossed::dual::{self, DualElement, Fourier};
use bicrossed::error::{Error, Result};
use bicrossed::fusion::{self, FusionTable};
use bicrossed::length::{self, validate_class_length, ClassLength, MatchedLengthPair};
use bicrossed::linalg::C64;
use bicrossed::{corpus, Algebra, Bicrossed, Character};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::session::{self, Session};

pub struct Report {
    pub body: Value,
    pub ok: bool,
}

impl Report {
    fn new(ok: bool, mut body: Value) -> Self {
        body["status"] = json!(if ok { "OK" } else { "FAIL" });
        Report { body, ok }
    }
}

pub trait Command: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, s: &Session) -> Result<Report>;
}

pub fn registry() -> Vec<Box<dyn Command>> {
    vec![
        Box::new(Validate),
        Box::new(Irreps),
        Box::new(IrrTable),
        Box::new(Fusion),
        Box::new(Induce),
        Box::new(LengthCheck),
        Box::new(Growth),
        Box::new(RdTest),
        Box::new(Examples),
    ]
}

fn c64(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn character_json(chi: &Character) -> Vec<[f64; 2]> {
    chi.values.iter().map(|&z| c64(z)).collect()
}

fn length_json(b: &Bicrossed, l: &ClassLength) -> BTreeMap<String, f64> {
    (0..l.values.len()).map(|i| (b.label(i), l.get(i))).collect()
}

fn top_window(l: &ClassLength) -> usize {
    l.values.iter().cloned().filter(|v| v.is_finite()).fold(0.0, f64::max).floor() as usize
}

struct Validate;
struct Irreps;
struct IrrTable;
struct Fusion;
struct Induce;
struct LengthCheck;
struct Growth;
struct RdTest;
struct Examples;

impl Command for Validate {
    fn name(&self) -> &'static str {
        "validate"
    }
    fn about(&self) -> &'static str {
        "Check the matched-pair relations and the Hopf identities of C(𝔾)"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let mp = s.pair()?;
        let rep = mp.validate();
        let mut body = json!({
            "input": s.input_name(),
            "gamma_order": mp.gamma().order(),
            "g_order": mp.g().order(),
            "alpha_trivial": mp.alpha_is_trivial(),
            "beta_trivial": mp.beta_is_trivial(),
            "both_actions_nontrivial": mp.both_actions_nontrivial(),
            "total_violations": rep.total_violations,
            "violations": rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        let mut ok = rep.is_ok();
        if ok {
            let alg = Algebra::new(mp.clone());
            let hopf = alg.hopf_residuals();
            let magic = alg.magic_unitary_residual();
            ok = hopf.max() < s.tol.alg && magic < s.tol.alg;
            body["hopf"] = json!(hopf);
            body["magic_unitary_residual"] = json!(magic);
        }
        Ok(Report::new(ok, body))
    }
}

impl Command for Irreps {
    fn name(&self) -> &'static str {
        "irreps"
    }
    fn about(&self) -> &'static str {
        "Irreducible characters of G and of every stabilizer G_γ, γ an orbit representative"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let mp = b.pair();
        let table_json = |t: &bicrossed::IrrepTable| {
            (0..t.len())
                .map(|x| json!({"x": x, "dim": t.dim(x), "character": character_json(t.character(x))}))
                .collect::<Vec<_>>()
        };
        let big = s.table(mp.g())?;
        let stabilizers: Vec<Value> = b
            .representatives()
            .iter()
            .map(|&rho| {
                let od = b.orbit(rho);
                json!({
                    "gamma": mp.gamma().label(rho),
                    "orbit": od.orbit().iter().map(|&r| mp.gamma().label(r)).collect::<Vec<_>>(),
                    "stabilizer": od.stabilizer().elements().iter().map(|&g| mp.g().label(g)).collect::<Vec<_>>(),
                    "irreps": table_json(b.table(rho)),
                })
            })
            .collect();
        let body = json!({
            "input": s.input_name(),
            "g": {
                "elements": (0..mp.g().order()).map(|g| mp.g().label(g)).collect::<Vec<_>>(),
                "irreps": table_json(&big),
            },
            "stabilizers": stabilizers,
        });
        Ok(Report::new(true, body))
    }
}

impl Command for IrrTable {
    fn name(&self) -> &'static str {
        "irr-table"
    }
    fn about(&self) -> &'static str {
        "List Irr(𝔾) as (γ, x, dim) with the completeness count"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let gm = b.pair().gamma();
        let classes: Vec<Value> = b
            .classes()
            .iter()
            .enumerate()
            .map(|(id, c)| json!({"label": b.label(id), "gamma": gm.label(c.gamma), "x": c.x, "dim": c.dim}))
            .collect();
        let found: usize = b.classes().iter().map(|c| c.dim * c.dim).sum();
        let expected = gm.order() * b.pair().g().order();
        let body = json!({
            "input": s.input_name(),
            "classes": classes,
            "completeness": {"sum_dim_squared": found, "expected": expected, "ok": found == expected},
        });
        Ok(Report::new(found == expected, body))
    }
}

impl Command for Fusion {
    fn name(&self) -> &'static str {
        "fusion-table"
    }
    fn about(&self) -> &'static str {
        "Fusion multiplicities N[z][x][y] with dimension, duality and associativity checks"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let t = FusionTable::compute(&b)?;
        let dual: Vec<usize> = (0..b.classes().len()).map(|i| b.dual_class(i)).collect::<Result<_>>()?;
        let dims = t.dimension_count_failures();
        let duality = t.duality_failures(b.trivial_class(), &dual);
        let assoc = t.associativity_failures();
        let ok = dims.is_empty() && duality.is_empty() && assoc.is_empty();
        let body = json!({
            "input": s.input_name(),
            "labels": t.labels,
            "dims": t.dims,
            "dual": dual.iter().map(|&d| b.label(d)).collect::<Vec<_>>(),
            "n": t.n,
            "dimension_count": {"ok": dims.is_empty(), "failures": dims},
            "duality": {"ok": duality.is_empty(), "failures": duality},
            "associativity": {"ok": assoc.is_empty(), "failures": assoc},
        });
        Ok(Report::new(ok, body))
    }
}

impl Command for Induce {
    fn name(&self) -> &'static str {
        "induce"
    }
    fn about(&self) -> &'static str {
        "Decompose Ind(u) over Irr(G) for u ∈ Irr(G_γ) and check Frobenius reciprocity"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let gm = b.pair().gamma();
        let gammas: Vec<usize> = match &s.flags.gamma {
            Some(t) => vec![session::element(gm, t, "--gamma")?],
            None => (0..gm.order()).collect(),
        };
        let big = b.table(0);
        let mut ok = true;
        let mut rows = Vec::new();
        for &c in &gammas {
            for x in 0..b.table(c).len() {
                let u = b.table(c).irrep(x);
                let ind = fusion::induce(&b, c, u)?;
                let mult = big.decompose_character(&ind.character(), s.tol.int)?;
                let mut frob = true;
                for y in 0..big.len() {
                    let (l, r) = fusion::frobenius_check(&b, c, big.irrep(y), u)?;
                    frob &= l == r && l == mult[y];
                }
                ok &= frob;
                rows.push(json!({
                    "gamma": gm.label(c),
                    "x": x,
                    "dim": ind.dim(),
                    "multiplicities": mult,
                    "frobenius_ok": frob,
                }));
            }
        }
        Ok(Report::new(ok, json!({"input": s.input_name(), "induced": rows})))
    }
}

fn report_json(rep: &length::LengthReport) -> Value {
    json!({
        "ok": rep.is_ok(),
        "violations": rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

impl Command for LengthCheck {
    fn name(&self) -> &'static str {
        "length-check"
    }
    fn about(&self) -> &'static str {
        "Validate a length on Irr(𝔾), its restricted matched pair and, given --c and --n, the growth predicates"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let l = s.class_length(&b)?;
        let fusion = FusionTable::compute(&b)?;
        let axioms = validate_class_length(&b, &fusion, &l)?;
        let pair = MatchedLengthPair::derive_from_length(&b, &l)?;
        let matched = pair.validate(&b)?;
        let support = dual::lift_support_failures(&b, &pair)?;
        let gm = b.pair().gamma();
        let mut ok = axioms.is_ok() && matched.is_ok() && support.is_empty();
        let mut body = json!({
            "input": s.input_name(),
            "length": length_json(&b, &l),
            "length_axioms": report_json(&axioms),
            "matched_pair": {
                "l_gamma": (0..gm.order()).map(|c| (gm.label(c), pair.l_gamma[c])).collect::<BTreeMap<_, _>>(),
                "l_g": pair.l_g,
                "validation": report_json(&matched),
            },
            "lift_support": {
                "ok": support.is_empty(),
                "failures": support.iter().map(|&(c, x, y)| json!({"gamma": gm.label(c), "x": x, "y": y})).collect::<Vec<_>>(),
            },
        });
        match (s.flags.c, s.flags.n) {
            (Some(c), Some(n)) => {
                let k_max = s.flags.k.unwrap_or_else(|| top_window(&l));
                let g = dual::growth_conditions(&b, &pair, c, n, k_max, s.flags.trials, s.flags.seed);
                ok &= g.all();
                body["growth_conditions"] = json!(g);
            }
            (None, None) => {}
            _ => {
                return Err(Error::Parse {
                    message: "--c and --n must be given together".into(),
                    location: None,
                })
            }
        }
        Ok(Report::new(ok, body))
    }
}

impl Command for Growth {
    fn name(&self) -> &'static str {
        "growth"
    }
    fn about(&self) -> &'static str {
        "Growth series Σ_{k ≤ l < k+1} dim² of the selected length"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let l = s.class_length(&b)?;
        let terms = length::growth_series(&b, &l);
        let total: usize = terms.iter().sum();
        let expected = b.pair().gamma().order() * b.pair().g().order();
        let body = json!({
            "input": s.input_name(),
            "length": length_json(&b, &l),
            "terms": terms,
            "total": total,
            "expected_total": expected,
        });
        Ok(Report::new(total == expected, body))
    }
}

impl Command for RdTest {
    fn name(&self) -> &'static str {
        "rd-test"
    }
    fn about(&self) -> &'static str {
        "Sample ‖F(a)‖/‖a‖₀ on length windows against 2(Σ dim²)^½, plus Plancherel"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let b = s.bicrossed()?;
        let l = s.class_length(&b)?;
        let f = Fourier::new(&b);
        let (trials, seed) = (s.flags.trials, s.flags.seed);
        let mut windows = Vec::new();
        match s.flags.k {
            Some(k) => windows.push(dual::rd_ratio(&f, &l, k, trials, seed)?),
            None => {
                for k in 0..=top_window(&l) {
                    match dual::rd_ratio(&f, &l, k, trials, seed) {
                        Ok(r) => windows.push(r),
                        Err(Error::EmptyWindow { .. }) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..b.classes().len()).collect();
        let plancherel = (0..trials)
            .map(|_| f.plancherel_residual(&DualElement::random_on(&f.dims(), &all, &mut rng)))
            .fold(0.0, f64::max);
        let within = windows.iter().all(|r| r.within_bound(1e-8));
        let ok = within && plancherel < s.tol.alg;
        let body = json!({
            "input": s.input_name(),
            "length": length_json(&b, &l),
            "windows": windows,
            "all_within_bound": within,
            "plancherel_residual": plancherel,
        });
        Ok(Report::new(ok, body))
    }
}

impl Command for Examples {
    fn name(&self) -> &'static str {
        "examples"
    }
    fn about(&self) -> &'static str {
        "List the bundled example pairs with their validation and completeness status"
    }
    fn run(&self, s: &Session) -> Result<Report> {
        let mut ok = true;
        let mut rows = Vec::new();
        for e in corpus::corpus() {
            let mp = Arc::new(e.pair()?);
            let valid = mp.validate().is_ok();
            let b = Bicrossed::new(mp.clone(), s.flags.seed, s.tol)?;
            let total = b.check_completeness()?;
            ok &= valid;
            rows.push(json!({
                "name": e.name,
                "gamma_order": mp.gamma().order(),
                "g_order": mp.g().order(),
                "both_actions_nontrivial": mp.both_actions_nontrivial(),
                "valid": valid,
                "classes": b.classes().len(),
                "sum_dim_squared": total,
            }));
        }
        Ok(Report::new(ok, json!({"examples": rows})))
    }
}

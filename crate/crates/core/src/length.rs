//! Length functions on `Γ`, on `Irr(G)` and on `Irr(𝔾)`, matched pairs of
//! length functions and the lengths `l′`, `l`, `l̃` they induce.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::bicrossed::{Bicrossed, ClassId};
use crate::error::{Error, Result};
use crate::fusion::{self, FusionTable};
use crate::group::FiniteGroup;
use crate::rep::{Character, IrrepTable};

/// Slack used when comparing real-valued lengths.
const LEN_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Identity,
    Symmetry,
    Subadditivity,
    Nonnegative,
    /// `l_1 = l_G` and `l_γ(ε) = l_Γ(γ)`
    MatchedBase,
    /// invariance along `ψ^γ_{r,r}`
    MatchedOrbit,
    /// compatibility with the contragredient
    MatchedConjugate,
    /// subadditivity along twisted tensor products
    MatchedFusion,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthViolation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
    pub detail: String,
}

impl fmt::Display for LengthViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at ({}): {}", self.axiom, self.witness.join(", "), self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LengthReport {
    pub violations: Vec<LengthViolation>,
}

impl LengthReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: Axiom, witness: Vec<String>, detail: String) {
        self.violations.push(LengthViolation { axiom, witness, detail });
    }

    fn extend(&mut self, other: LengthReport) {
        self.violations.extend(other.violations);
    }
}

/// Word length on `Γ` for the symmetric closure of `generators`; elements
/// outside the generated subgroup get `f64::INFINITY`.
pub fn word_length(group: &FiniteGroup, generators: &[usize]) -> Vec<f64> {
    let n = group.order();
    let mut gens: Vec<usize> = generators.iter().flat_map(|&s| [s, group.inv(s)]).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut dist = vec![f64::INFINITY; n];
    dist[0] = 0.0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = group.mul(x, s);
            if dist[y].is_infinite() {
                dist[y] = dist[x] + 1.0;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Length-function axioms on a finite group, checked on all pairs.
pub fn validate_group_length(group: &FiniteGroup, l: &[f64]) -> LengthReport {
    let mut rep = LengthReport::default();
    if l.len() != group.order() {
        rep.push(Axiom::Identity, vec![], format!("{} values for {} elements", l.len(), group.order()));
        return rep;
    }
    if l[0].abs() > LEN_EPS {
        rep.push(Axiom::Identity, vec![group.label(0)], format!("l(e) = {}", l[0]));
    }
    for a in 0..group.order() {
        if l[a].is_nan() || l[a] < 0.0 {
            rep.push(Axiom::Nonnegative, vec![group.label(a)], format!("l = {}", l[a]));
        }
        let ai = group.inv(a);
        if (l[a] - l[ai]).abs() > LEN_EPS && !(l[a].is_infinite() && l[ai].is_infinite()) {
            rep.push(
                Axiom::Symmetry,
                vec![group.label(a)],
                format!("l = {} but l(inverse) = {}", l[a], l[ai]),
            );
        }
        for b in 0..group.order() {
            let ab = group.mul(a, b);
            if l[ab] > l[a] + l[b] + LEN_EPS {
                rep.push(
                    Axiom::Subadditivity,
                    vec![group.label(a), group.label(b)],
                    format!("l(ab) = {} > {} + {}", l[ab], l[a], l[b]),
                );
            }
        }
    }
    rep
}

/// Length-function axioms on `Irr(H)` for a classical group, with
/// containment `x ⊂ y ⊗ z` decided by characters.
pub fn validate_irr_length(table: &IrrepTable, l: &[f64], tol_int: f64) -> Result<LengthReport> {
    let mut rep = LengthReport::default();
    let n = table.len();
    if l.len() != n {
        return Err(Error::Shape(format!("{} length values for {} irreps", l.len(), n)));
    }
    let t = table.trivial_index();
    if l[t].abs() > LEN_EPS {
        rep.push(Axiom::Identity, vec![t.to_string()], format!("l(trivial) = {}", l[t]));
    }
    for x in 0..n {
        if l[x].is_nan() || l[x] < 0.0 {
            rep.push(Axiom::Nonnegative, vec![x.to_string()], format!("l = {}", l[x]));
        }
        let xd = table.dual_index(x, tol_int);
        if (l[x] - l[xd]).abs() > LEN_EPS {
            rep.push(Axiom::Symmetry, vec![x.to_string()], format!("l = {} but l(conjugate) = {}", l[x], l[xd]));
        }
    }
    for y in 0..n {
        for z in 0..n {
            let prod = table.character(y).product(table.character(z));
            let mult = table.decompose_character(&prod, tol_int)?;
            for x in 0..n {
                if mult[x] > 0 && l[x] > l[y] + l[z] + LEN_EPS {
                    rep.push(
                        Axiom::Subadditivity,
                        vec![x.to_string(), y.to_string(), z.to_string()],
                        format!("{} > {} + {}", l[x], l[y], l[z]),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// A length function on `Irr(𝔾)`, indexed by class id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassLength {
    pub values: Vec<f64>,
}

impl ClassLength {
    pub fn zero(b: &Bicrossed) -> Self {
        ClassLength {
            values: vec![0.0; b.classes().len()],
        }
    }

    pub fn get(&self, id: ClassId) -> f64 {
        self.values[id]
    }
}

/// Length axioms on `Irr(𝔾)`, using the fusion table for containment.
pub fn validate_class_length(b: &Bicrossed, fusion: &FusionTable, l: &ClassLength) -> Result<LengthReport> {
    let mut rep = LengthReport::default();
    let n = b.classes().len();
    if l.values.len() != n {
        return Err(Error::Shape(format!("{} length values for {} classes", l.values.len(), n)));
    }
    let t = b.trivial_class();
    if l.values[t].abs() > LEN_EPS {
        rep.push(Axiom::Identity, vec![b.label(t)], format!("l(trivial) = {}", l.values[t]));
    }
    for x in 0..n {
        if l.values[x].is_nan() || l.values[x] < 0.0 {
            rep.push(Axiom::Nonnegative, vec![b.label(x)], format!("l = {}", l.values[x]));
        }
        let xd = b.dual_class(x)?;
        if (l.values[x] - l.values[xd]).abs() > LEN_EPS {
            rep.push(
                Axiom::Symmetry,
                vec![b.label(x)],
                format!("l = {} but l(contragredient) = {}", l.values[x], l.values[xd]),
            );
        }
    }
    for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                if fusion.n[z][x][y] > 0 && l.values[z] > l.values[x] + l.values[y] + LEN_EPS {
                    rep.push(
                        Axiom::Subadditivity,
                        vec![b.label(z), b.label(x), b.label(y)],
                        format!("{} > {} + {}", l.values[z], l.values[x], l.values[y]),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// `(l_Γ, l_G)` together with a family `l_γ` on `Irr(G_γ)` for every `γ ∈ Γ`,
/// indexed like [`Bicrossed::table`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedLengthPair {
    pub l_gamma: Vec<f64>,
    pub l_g: Vec<f64>,
    pub family: Vec<Vec<f64>>,
}

impl MatchedLengthPair {
    pub fn zero(b: &Bicrossed) -> Self {
        let n = b.pair().gamma().order();
        MatchedLengthPair {
            l_gamma: vec![0.0; n],
            l_g: vec![0.0; b.table(0).len()],
            family: (0..n).map(|c| vec![0.0; b.table(c).len()]).collect(),
        }
    }

    /// `(l_Γ, l_G ≡ 0, l_γ ≡ l_Γ(γ))`. This is matched only when `l_Γ` is
    /// constant on `β`-orbits, which holds for the default generating set.
    pub fn from_gamma_length(b: &Bicrossed, l_gamma: Vec<f64>) -> Self {
        let n = b.pair().gamma().order();
        let family = (0..n).map(|c| vec![l_gamma[c]; b.table(c).len()]).collect();
        MatchedLengthPair {
            l_g: vec![0.0; b.table(0).len()],
            l_gamma,
            family,
        }
    }

    /// Restriction of a length on `Irr(𝔾)`:
    /// `l_G(x) = l(1(x))`, `l_Γ(γ) = l(γ(ε))`, `l_γ(x) = l(γ(u^x))`.
    pub fn derive_from_length(b: &Bicrossed, l: &ClassLength) -> Result<Self> {
        let n = b.pair().gamma().order();
        let l_g = (0..b.table(0).len())
            .map(|x| l.get(b.class_id(0, x).expect("identity is a representative")))
            .collect();
        let l_gamma = (0..n).map(|c| l.get(b.epsilon_class(c))).collect();
        let family = (0..n)
            .map(|c| {
                (0..b.table(c).len())
                    .map(|x| Ok(l.get(b.classify(c, b.table(c).irrep(x))?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatchedLengthPair { l_gamma, l_g, family })
    }

    /// `(l′, l, l̃)` on `Irr(𝔾)`: `l′(γ(x)) = l_Γ(γ)`, `l(γ(x)) = l_γ(x)`, `l̃ = l + l′`.
    pub fn build_lengths(&self, b: &Bicrossed) -> (ClassLength, ClassLength, ClassLength) {
        let mut lp = Vec::new();
        let mut ll = Vec::new();
        for c in b.classes() {
            lp.push(self.l_gamma[c.gamma]);
            ll.push(self.family[c.gamma][c.x]);
        }
        let lt = lp.iter().zip(&ll).map(|(a, b)| a + b).collect();
        (
            ClassLength { values: lp },
            ClassLength { values: ll },
            ClassLength { values: lt },
        )
    }

    /// Checks that `l_Γ` and `l_G` are length functions and the four
    /// compatibility conditions of a matched pair. Condition (iv) runs over all
    /// triples of `Γ`, all admissible `r` and all irreducible labels.
    pub fn validate(&self, b: &Bicrossed) -> Result<LengthReport> {
        let mp = b.pair();
        let gm = mp.gamma();
        let n = gm.order();
        let tol_int = b.tol().int;
        let mut rep = validate_group_length(gm, &self.l_gamma);
        rep.extend(validate_irr_length(b.table(0), &self.l_g, tol_int)?);

        // (i)
        for x in 0..self.l_g.len() {
            if (self.family[0][x] - self.l_g[x]).abs() > LEN_EPS {
                rep.push(
                    Axiom::MatchedBase,
                    vec![gm.label(0), x.to_string()],
                    format!("l_e = {} but l_G = {}", self.family[0][x], self.l_g[x]),
                );
            }
        }
        for c in 0..n {
            let t = b.table(c).trivial_index();
            if (self.family[c][t] - self.l_gamma[c]).abs() > LEN_EPS {
                rep.push(
                    Axiom::MatchedBase,
                    vec![gm.label(c)],
                    format!("l_γ(ε) = {} but l_Γ(γ) = {}", self.family[c][t], self.l_gamma[c]),
                );
            }
        }

        // (ii)
        for c in 0..n {
            for &r in b.orbit(c).orbit() {
                for x in 0..b.table(c).len() {
                    let moved = b.transport_to(c, b.table(c).irrep(x), r)?;
                    let y = find(b.table(r), &moved.character(), tol_int)?;
                    if (self.family[c][x] - self.family[r][y]).abs() > LEN_EPS {
                        rep.push(
                            Axiom::MatchedOrbit,
                            vec![gm.label(c), gm.label(r), x.to_string()],
                            format!("l_γ(x) = {} but l_r(x∘ψ) = {}", self.family[c][x], self.family[r][y]),
                        );
                    }
                }
            }
        }

        // (iii)
        for c in 0..n {
            for x in 0..b.table(c).len() {
                let (ci, u) = b.contragredient_class(c, b.table(c).irrep(x))?;
                let y = find(b.table(ci), &u.character(), tol_int)?;
                if (self.family[c][x] - self.family[ci][y]).abs() > LEN_EPS {
                    rep.push(
                        Axiom::MatchedConjugate,
                        vec![gm.label(c), x.to_string()],
                        format!("l_γ(x) = {} but l_γ⁻¹(x̄∘α) = {}", self.family[c][x], self.family[ci][y]),
                    );
                }
            }
        }

        // (iv)
        for c1 in 0..n {
            for c2 in 0..n {
                let prod = fusion::product_of_orbits(b, c1, c2);
                for c3 in 0..n {
                    if prod.binary_search(&c3).is_err() {
                        continue;
                    }
                    let od3 = b.orbit(c3);
                    for &r in od3.orbit() {
                        if prod.binary_search(&r).is_err() {
                            continue;
                        }
                        let stab_r = b.stabilizer(r);
                        let s3 = od3.stabilizer();
                        let psi: Vec<usize> = (0..stab_r.order())
                            .map(|k| {
                                s3.to_local(od3.psi(r, r, stab_r.to_parent(k)).expect("r in orbit"))
                                    .expect("ψ lands in G_γ")
                            })
                            .collect();
                        for x in 0..b.table(c1).len() {
                            for y in 0..b.table(c2).len() {
                                let bound = self.family[c1][x] + self.family[c2][y];
                                let tw = fusion::twisted_character(
                                    b,
                                    c1,
                                    b.table(c1).character(x),
                                    c2,
                                    b.table(c2).character(y),
                                    r,
                                )?;
                                for z in 0..b.table(c3).len() {
                                    if self.family[c3][z] <= bound + LEN_EPS {
                                        continue;
                                    }
                                    let moved = b.table(c3).character(z).transport(&psi);
                                    if moved.inner(&tw) > 0.5 {
                                        rep.push(
                                            Axiom::MatchedFusion,
                                            vec![
                                                gm.label(c1),
                                                gm.label(c2),
                                                gm.label(c3),
                                                gm.label(r),
                                                x.to_string(),
                                                y.to_string(),
                                                z.to_string(),
                                            ],
                                            format!("{} > {} + {}", self.family[c3][z], self.family[c1][x], self.family[c2][y]),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(rep)
    }
}

fn find(table: &IrrepTable, chi: &Character, tol_int: f64) -> Result<usize> {
    table
        .find(chi, tol_int)
        .ok_or_else(|| Error::FormulaMismatch("transported irrep is not irreducible".into()))
}

/// `term k = Σ_{k ≤ l(x) < k+1} dim(x)²`, for `k = 0..=⌊max l⌋`.
pub fn growth_series(b: &Bicrossed, l: &ClassLength) -> Vec<usize> {
    let top = l.values.iter().cloned().fold(0.0, f64::max).floor() as usize;
    let mut terms = vec![0usize; top + 1];
    for (id, c) in b.classes().iter().enumerate() {
        terms[l.get(id).floor() as usize] += c.dim * c.dim;
    }
    terms
}

/// Classes with `k ≤ l(x) < k+1`.
pub fn window(l: &ClassLength, k: usize) -> Vec<ClassId> {
    (0..l.values.len())
        .filter(|&i| l.values[i] >= k as f64 && l.values[i] < (k + 1) as f64)
        .collect()
}

/// A named way of turning a generating set of `Γ` into a length on `Irr(𝔾)`.
pub trait LengthRecipe: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, b: &Bicrossed, generators: &[usize]) -> Result<ClassLength>;
}

fn word_pair(b: &Bicrossed, generators: &[usize]) -> MatchedLengthPair {
    MatchedLengthPair::from_gamma_length(b, word_length(b.pair().gamma(), generators))
}

struct Zero;
struct LPrime;
struct LFamily;
struct LTilde;

impl LengthRecipe for Zero {
    fn name(&self) -> &'static str {
        "zero"
    }
    fn describe(&self) -> &'static str {
        "identically zero"
    }
    fn build(&self, b: &Bicrossed, _: &[usize]) -> Result<ClassLength> {
        Ok(ClassLength::zero(b))
    }
}

impl LengthRecipe for LPrime {
    fn name(&self) -> &'static str {
        "lprime"
    }
    fn describe(&self) -> &'static str {
        "l'(γ(x)) = word length of γ"
    }
    fn build(&self, b: &Bicrossed, generators: &[usize]) -> Result<ClassLength> {
        Ok(word_pair(b, generators).build_lengths(b).0)
    }
}

impl LengthRecipe for LFamily {
    fn name(&self) -> &'static str {
        "l"
    }
    fn describe(&self) -> &'static str {
        "l(γ(x)) = l_γ(x) with l_γ ≡ word length of γ"
    }
    fn build(&self, b: &Bicrossed, generators: &[usize]) -> Result<ClassLength> {
        Ok(word_pair(b, generators).build_lengths(b).1)
    }
}

impl LengthRecipe for LTilde {
    fn name(&self) -> &'static str {
        "ltilde"
    }
    fn describe(&self) -> &'static str {
        "l~ = l + l'"
    }
    fn build(&self, b: &Bicrossed, generators: &[usize]) -> Result<ClassLength> {
        Ok(word_pair(b, generators).build_lengths(b).2)
    }
}

pub fn recipes() -> Vec<Box<dyn LengthRecipe>> {
    vec![Box::new(Zero), Box::new(LPrime), Box::new(LFamily), Box::new(LTilde)]
}

pub fn recipe(name: &str) -> Option<Box<dyn LengthRecipe>> {
    recipes().into_iter().find(|r| r.name() == name)
}

/// All non-identity elements; word length ≤ 1 everywhere.
pub fn default_generators(group: &FiniteGroup) -> Vec<usize> {
    (1..group.order()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Subgroup;
    use crate::matched_pair::MatchedPair;
    use crate::Tolerances;
    use std::sync::Arc;

    fn z3_z2() -> Bicrossed {
        let (g, p) = FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let g = Arc::new(g);
        let idx = |q: &[usize]| p.iter().position(|x| x == q).unwrap();
        let c = Subgroup::closure(&g, &[idx(&[1, 2, 0])]).unwrap();
        let t = Subgroup::closure(&g, &[idx(&[1, 0, 2])]).unwrap();
        let mp = MatchedPair::from_exact_factorization(&g, &c, &t).unwrap();
        Bicrossed::new(Arc::new(mp), 0, Tolerances::default()).unwrap()
    }

    fn trivial_z2z2() -> Bicrossed {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        Bicrossed::new(Arc::new(MatchedPair::trivial(z2.clone(), z2)), 0, Tolerances::default()).unwrap()
    }

    #[test]
    fn word_length_on_z3() {
        let z3 = FiniteGroup::cyclic(3);
        let l = word_length(&z3, &[1]);
        assert_eq!(l, vec![0.0, 1.0, 1.0]);
        assert!(validate_group_length(&z3, &l).is_ok());
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(word_length(&z6, &[1]), vec![0.0, 1.0, 2.0, 3.0, 2.0, 1.0]);
    }

    #[test]
    fn zero_length_is_valid_and_corruption_is_caught() {
        let b = z3_z2();
        let fusion = FusionTable::compute(&b).unwrap();
        let zero = ClassLength::zero(&b);
        assert!(validate_class_length(&b, &fusion, &zero).unwrap().is_ok());
        let z4 = FiniteGroup::cyclic(4);
        let bad = vec![0.0, 1.0, 2.0, 3.0];
        let rep = validate_group_length(&z4, &bad);
        assert!(rep.violations.iter().any(|v| v.axiom == Axiom::Symmetry));
    }

    #[test]
    fn asymmetric_class_length_is_reported() {
        let b = trivial_z2z2();
        let fusion = FusionTable::compute(&b).unwrap();
        // on ℤ₂ × ℤ̂₂ every class is self-dual, so use ℤ₃ to get a conjugate pair
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let b3 = Bicrossed::new(
            Arc::new(MatchedPair::trivial(Arc::new(FiniteGroup::trivial()), z3)),
            0,
            Tolerances::default(),
        )
        .unwrap();
        let f3 = FusionTable::compute(&b3).unwrap();
        let l = ClassLength { values: vec![0.0, 1.0, 2.0] };
        let rep = validate_class_length(&b3, &f3, &l).unwrap();
        assert!(rep.violations.iter().any(|v| v.axiom == Axiom::Symmetry));
        assert!(validate_class_length(&b, &fusion, &ClassLength::zero(&b)).unwrap().is_ok());
    }

    #[test]
    fn word_pair_is_matched_and_round_trips() {
        for b in [z3_z2(), trivial_z2z2()] {
            let gens = default_generators(b.pair().gamma());
            let pair = word_pair(&b, &gens);
            assert!(pair.validate(&b).unwrap().is_ok());
            let (lp, l, lt) = pair.build_lengths(&b);
            let fusion = FusionTable::compute(&b).unwrap();
            for x in [&lp, &l, &lt] {
                assert!(validate_class_length(&b, &fusion, x).unwrap().is_ok());
            }
            let derived = MatchedLengthPair::derive_from_length(&b, &lt).unwrap();
            assert!(derived.validate(&b).unwrap().is_ok());
            // the derived family reproduces the length it came from
            assert_eq!(derived.build_lengths(&b).1, lt);
            // l_Γ is β-invariant
            for c in 0..b.pair().gamma().order() {
                for &r in b.orbit(c).orbit() {
                    assert_eq!(derived.l_gamma[c], derived.l_gamma[r]);
                }
            }
        }
    }

    #[test]
    fn perturbed_family_breaks_conjugation() {
        let b = z3_z2();
        let mut pair = word_pair(&b, &default_generators(b.pair().gamma()));
        // c has a trivial stabilizer; moving its only label breaks (i), and
        // since c⁻¹ = c² keeps its value, (iii) as well
        pair.family[1][0] = 5.0;
        let rep = pair.validate(&b).unwrap();
        assert!(rep.violations.iter().any(|v| v.axiom == Axiom::MatchedConjugate));
    }

    #[test]
    fn growth_examples() {
        let b = z3_z2();
        let gens = default_generators(b.pair().gamma());
        let lt = recipe("ltilde").unwrap().build(&b, &gens).unwrap();
        let two = b.classes().iter().position(|c| c.dim == 2).unwrap();
        assert_eq!(lt.get(two), 2.0);
        assert_eq!(growth_series(&b, &lt), vec![2, 0, 4]);
        assert_eq!(growth_series(&b, &ClassLength::zero(&b)), vec![6]);

        let b = trivial_z2z2();
        let lp = recipe("lprime").unwrap().build(&b, &[1]).unwrap();
        assert_eq!(growth_series(&b, &lp), vec![2, 2]);
        for id in 0..2 {
            assert_eq!(lp.get(b.class_id(0, id).unwrap()), 0.0);
        }
    }

    #[test]
    fn registry_lists_all_recipes() {
        let names: Vec<&str> = recipes().iter().map(|r| r.name()).collect();
        assert_eq!(names, vec!["zero", "lprime", "l", "ltilde"]);
        assert!(recipe("nope").is_none());
    }
}

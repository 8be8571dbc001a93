//! Matched pairs `(Γ, G, α, β)` and their orbit data.
//!
//! Convention: inside an ambient group containing both factors,
//! `γ g = α_γ(g) · β_g(γ)`. Then `α` is a left action of Γ on G, `β` a right
//! action of G on Γ, and the matched relations read
//!
//! ```text
//! α_γ(gh)  = α_γ(g) · α_{β_g(γ)}(h)
//! β_g(γμ)  = β_{α_μ(g)}(γ) · β_g(μ)
//! α_γ(e) = e,  β_g(e) = e
//! ```

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone)]
pub struct MatchedPair {
    gamma: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    /// `alpha[γ][g] = α_γ(g)`
    alpha: Vec<Vec<usize>>,
    /// `beta[g][γ] = β_g(γ) = γ·g`
    beta: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AlphaBijective,
    BetaBijective,
    AlphaHomomorphism,
    BetaAntihomomorphism,
    AlphaFixesIdentity,
    BetaFixesIdentity,
    /// `α_γ(gh) = α_γ(g) α_{β_g(γ)}(h)`
    AlphaCocycle,
    /// `β_g(γμ) = β_{α_μ(g)}(γ) β_g(μ)`
    BetaCocycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: Relation,
    pub gamma: Option<usize>,
    pub mu: Option<usize>,
    pub g: Option<usize>,
    pub h: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.relation)?;
        let parts: Vec<String> = [("γ", self.gamma), ("μ", self.mu), ("g", self.g), ("h", self.h)]
            .iter()
            .filter_map(|(n, v)| v.map(|v| format!("{n}={v}")))
            .collect();
        if !parts.is_empty() {
            write!(f, " at {}", parts.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    /// At most [`ValidationReport::MAX_WITNESSES`] witnesses per relation.
    pub violations: Vec<Violation>,
    pub total_violations: usize,
}

impl ValidationReport {
    pub const MAX_WITNESSES: usize = 32;

    pub fn is_ok(&self) -> bool {
        self.total_violations == 0
    }

    fn push(&mut self, v: Violation) {
        self.total_violations += 1;
        let same = self.violations.iter().filter(|w| w.relation == v.relation).count();
        if same < Self::MAX_WITNESSES {
            self.violations.push(v);
        }
    }
}

fn witness(relation: Relation, gamma: Option<usize>, mu: Option<usize>, g: Option<usize>, h: Option<usize>) -> Violation {
    Violation { relation, gamma, mu, g, h }
}

impl MatchedPair {
    /// Checks table shapes only; use [`MatchedPair::validate`] for the relations.
    pub fn new(
        gamma: Arc<FiniteGroup>,
        g: Arc<FiniteGroup>,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (ng, n_g) = (gamma.order(), g.order());
        if alpha.len() != ng || alpha.iter().any(|r| r.len() != n_g || r.iter().any(|&x| x >= n_g)) {
            return Err(Error::Shape(format!("alpha must be a {ng}x{n_g} table of G-indices")));
        }
        if beta.len() != n_g || beta.iter().any(|r| r.len() != ng || r.iter().any(|&x| x >= ng)) {
            return Err(Error::Shape(format!("beta must be a {n_g}x{ng} table of Γ-indices")));
        }
        Ok(MatchedPair { gamma, g, alpha, beta })
    }

    /// Both actions trivial: the bicrossed product is Γ̂ × G as a quantum group.
    pub fn trivial(gamma: Arc<FiniteGroup>, g: Arc<FiniteGroup>) -> Self {
        let alpha = (0..gamma.order()).map(|_| (0..g.order()).collect()).collect();
        let beta = (0..g.order()).map(|_| (0..gamma.order()).collect()).collect();
        MatchedPair { gamma, g, alpha, beta }
    }

    /// Reads off `(α, β)` from an exact factorization `L = Γ·G` by solving
    /// `γg = α_γ(g) β_g(γ)` in `L`.
    pub fn from_exact_factorization(
        ambient: &Arc<FiniteGroup>,
        gamma_sub: &Subgroup,
        g_sub: &Subgroup,
    ) -> Result<Self> {
        let n = ambient.order();
        if gamma_sub.order() * g_sub.order() != n {
            return Err(Error::NotExactFactorization(format!(
                "|Γ|·|G| = {}·{} ≠ {n}",
                gamma_sub.order(),
                g_sub.order()
            )));
        }
        if let Some(&x) = gamma_sub.elements().iter().find(|&&x| x != 0 && g_sub.contains(x)) {
            return Err(Error::NotExactFactorization(format!("Γ ∩ G contains {x}")));
        }
        // every ambient element as g'·γ'
        let mut split = vec![None; n];
        for gl in 0..g_sub.order() {
            for cl in 0..gamma_sub.order() {
                let x = ambient.mul(g_sub.to_parent(gl), gamma_sub.to_parent(cl));
                split[x] = Some((gl, cl));
            }
        }
        let split: Vec<(usize, usize)> = split
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::NotExactFactorization("G·Γ does not cover L".into())))
            .collect::<Result<_>>()?;

        let (ng, n_g) = (gamma_sub.order(), g_sub.order());
        let mut alpha = vec![vec![0; n_g]; ng];
        let mut beta = vec![vec![0; ng]; n_g];
        for c in 0..ng {
            for gl in 0..n_g {
                let prod = ambient.mul(gamma_sub.to_parent(c), g_sub.to_parent(gl));
                let (a, b) = split[prod];
                alpha[c][gl] = a;
                beta[gl][c] = b;
            }
        }
        let mp = MatchedPair::new(gamma_sub.view().clone(), g_sub.view().clone(), alpha, beta)?;
        for c in 0..ng {
            for gl in 0..n_g {
                let lhs = ambient.mul(gamma_sub.to_parent(c), g_sub.to_parent(gl));
                let rhs = ambient.mul(
                    g_sub.to_parent(mp.alpha(c, gl)),
                    gamma_sub.to_parent(mp.beta(gl, c)),
                );
                if lhs != rhs {
                    return Err(Error::FormulaMismatch(format!(
                        "γg ≠ α_γ(g)β_g(γ) at γ={c}, g={gl}"
                    )));
                }
            }
        }
        Ok(mp)
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    /// `α_γ(g)`
    #[inline]
    pub fn alpha(&self, gamma: usize, g: usize) -> usize {
        self.alpha[gamma][g]
    }

    /// `β_g(γ) = γ·g`
    #[inline]
    pub fn beta(&self, g: usize, gamma: usize) -> usize {
        self.beta[g][gamma]
    }

    pub fn alpha_table(&self) -> &[Vec<usize>] {
        &self.alpha
    }

    pub fn beta_table(&self) -> &[Vec<usize>] {
        &self.beta
    }

    pub fn alpha_is_trivial(&self) -> bool {
        self.alpha.iter().all(|row| row.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn beta_is_trivial(&self) -> bool {
        self.beta.iter().all(|row| row.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn both_actions_nontrivial(&self) -> bool {
        !self.alpha_is_trivial() && !self.beta_is_trivial()
    }

    /// Exhaustive check of the action axioms and the matched relations.
    pub fn validate(&self) -> ValidationReport {
        let (ga, g) = (&*self.gamma, &*self.g);
        let mut rep = ValidationReport::default();

        for c in 0..ga.order() {
            if !is_permutation(&self.alpha[c]) {
                rep.push(witness(Relation::AlphaBijective, Some(c), None, None, None));
            }
            if self.alpha[c][0] != 0 {
                rep.push(witness(Relation::AlphaFixesIdentity, Some(c), None, None, None));
            }
        }
        for x in 0..g.order() {
            if !is_permutation(&self.beta[x]) {
                rep.push(witness(Relation::BetaBijective, None, None, Some(x), None));
            }
            if self.beta[x][0] != 0 {
                rep.push(witness(Relation::BetaFixesIdentity, None, None, Some(x), None));
            }
        }
        for c in 0..ga.order() {
            for m in 0..ga.order() {
                let cm = ga.mul(c, m);
                for x in 0..g.order() {
                    if self.alpha(cm, x) != self.alpha(c, self.alpha(m, x)) {
                        rep.push(witness(Relation::AlphaHomomorphism, Some(c), Some(m), Some(x), None));
                    }
                    let lhs = self.beta(x, cm);
                    let rhs = ga.mul(self.beta(self.alpha(m, x), c), self.beta(x, m));
                    if lhs != rhs {
                        rep.push(witness(Relation::BetaCocycle, Some(c), Some(m), Some(x), None));
                    }
                }
            }
        }
        for c in 0..ga.order() {
            for x in 0..g.order() {
                let cx = self.beta(x, c);
                for y in 0..g.order() {
                    let xy = g.mul(x, y);
                    if self.beta(xy, c) != self.beta(y, cx) {
                        rep.push(witness(Relation::BetaAntihomomorphism, Some(c), None, Some(x), Some(y)));
                    }
                    let rhs = g.mul(self.alpha(c, x), self.alpha(cx, y));
                    if self.alpha(c, xy) != rhs {
                        rep.push(witness(Relation::AlphaCocycle, Some(c), None, Some(x), Some(y)));
                    }
                }
            }
        }
        rep
    }

    /// The orbit `γ·G` as a sorted list.
    pub fn orbit(&self, gamma: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.g.order()).map(|x| self.beta(x, gamma)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Minimal Γ-index of each β-orbit, ascending.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.gamma.order())
            .filter(|&c| self.orbit(c)[0] == c)
            .collect()
    }

    /// The representative of the orbit containing `gamma`.
    pub fn representative_of(&self, gamma: usize) -> usize {
        self.orbit(gamma)[0]
    }

    pub fn orbit_data(&self, gamma: usize) -> OrbitData {
        OrbitData::new(self, gamma)
    }

    /// `ψ^γ_{r,s}(g) = γ(r) g γ(s)⁻¹`
    pub fn psi(&self, gamma: usize, r: usize, s: usize, g: usize) -> Result<usize> {
        self.orbit_data(gamma).psi(r, s, g)
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut hit = vec![false; row.len()];
    row.iter().all(|&x| x < row.len() && !std::mem::replace(&mut hit[x], true))
}

/// Orbit, stabilizer, blocks `G_{r,s}` and the canonical section of one γ ∈ Γ.
#[derive(Debug, Clone)]
pub struct OrbitData {
    base: usize,
    orbit: Vec<usize>,
    position: Vec<Option<usize>>,
    stabilizer: Subgroup,
    /// `blocks[i][j] = G_{orbit[i], orbit[j]}`, sorted
    blocks: Vec<Vec<Vec<usize>>>,
    /// `section[i]` = smallest g with `γ·g = orbit[i]`
    section: Vec<usize>,
    g: Arc<FiniteGroup>,
}

impl OrbitData {
    fn new(mp: &MatchedPair, gamma: usize) -> Self {
        let g = mp.g().clone();
        let orbit = mp.orbit(gamma);
        let mut position = vec![None; mp.gamma().order()];
        for (i, &r) in orbit.iter().enumerate() {
            position[r] = Some(i);
        }
        let k = orbit.len();
        let mut blocks = vec![vec![Vec::new(); k]; k];
        for (i, &r) in orbit.iter().enumerate() {
            for x in 0..g.order() {
                let s = mp.beta(x, r);
                let j = position[s].expect("orbit is β-stable");
                blocks[i][j].push(x);
            }
        }
        let mut section = vec![usize::MAX; k];
        for x in (0..g.order()).rev() {
            let i = position[mp.beta(x, gamma)].unwrap();
            section[i] = x;
        }
        let gi = position[gamma].unwrap();
        let stabilizer = Subgroup::from_elements(&g, blocks[gi][gi].clone())
            .expect("stabilizer is a subgroup");
        OrbitData {
            base: gamma,
            orbit,
            position,
            stabilizer,
            blocks,
            section,
            g,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.position.get(r).is_some_and(|p| p.is_some())
    }

    pub fn position(&self, r: usize) -> Result<usize> {
        self.position
            .get(r)
            .copied()
            .flatten()
            .ok_or(Error::OrbitMismatch { base: self.base, point: r })
    }

    pub fn stabilizer(&self) -> &Subgroup {
        &self.stabilizer
    }

    /// `G_{r,s} = {g : r·g = s}`
    pub fn block(&self, r: usize, s: usize) -> Result<&[usize]> {
        Ok(&self.blocks[self.position(r)?][self.position(s)?])
    }

    /// `γ(r)`: the canonical section at `r`.
    pub fn section(&self, r: usize) -> Result<usize> {
        Ok(self.section[self.position(r)?])
    }

    /// `ψ^γ_{r,s}(g) = γ(r) g γ(s)⁻¹`
    pub fn psi(&self, r: usize, s: usize, g: usize) -> Result<usize> {
        let (a, b) = (self.section(r)?, self.section(s)?);
        Ok(self.g.mul(self.g.mul(a, g), self.g.inv(b)))
    }

    /// `ψ^γ_{r,s}` by orbit positions; no bounds checking beyond indexing.
    #[inline]
    pub fn psi_at(&self, ri: usize, si: usize, g: usize) -> usize {
        let gr = &self.g;
        gr.mul(gr.mul(self.section[ri], g), gr.inv(self.section[si]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> (Arc<FiniteGroup>, Vec<Vec<usize>>) {
        let (g, p) = FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        (Arc::new(g), p)
    }

    fn idx(perms: &[Vec<usize>], p: &[usize]) -> usize {
        perms.iter().position(|q| q == p).unwrap()
    }

    /// Γ = ⟨(123)⟩, G = ⟨(12)⟩
    fn z3_z2() -> MatchedPair {
        let (s3, p) = s3();
        let c = Subgroup::closure(&s3, &[idx(&p, &[1, 2, 0])]).unwrap();
        let t = Subgroup::closure(&s3, &[idx(&p, &[1, 0, 2])]).unwrap();
        MatchedPair::from_exact_factorization(&s3, &c, &t).unwrap()
    }

    /// Γ = ⟨(12)⟩, G = ⟨(123)⟩
    fn z2_z3() -> MatchedPair {
        let (s3, p) = s3();
        let c = Subgroup::closure(&s3, &[idx(&p, &[1, 2, 0])]).unwrap();
        let t = Subgroup::closure(&s3, &[idx(&p, &[1, 0, 2])]).unwrap();
        MatchedPair::from_exact_factorization(&s3, &t, &c).unwrap()
    }

    #[test]
    fn trivial_pair_validates() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        assert!(MatchedPair::trivial(z2.clone(), z2).validate().is_ok());
    }

    #[test]
    fn s3_factorizations_validate() {
        assert!(z3_z2().validate().is_ok());
        assert!(z2_z3().validate().is_ok());
    }

    #[test]
    fn s3_action_shapes() {
        // Γ = Z2 acting on G = Z3 by inversion, β trivial
        let mp = z2_z3();
        assert!(mp.beta_is_trivial());
        for x in 0..3 {
            assert_eq!(mp.alpha(1, x), mp.g().inv(x));
        }
        // Γ = Z3, G = Z2: α trivial, β_s swaps the two 3-cycles
        let mp = z3_z2();
        assert!(mp.alpha_is_trivial());
        assert_eq!(mp.beta(1, 1), 2);
        assert_eq!(mp.beta(1, 2), 1);
    }

    #[test]
    fn direct_product_has_trivial_actions() {
        let z6 = Arc::new(FiniteGroup::cyclic(6));
        let two = Subgroup::closure(&z6, &[3]).unwrap();
        let three = Subgroup::closure(&z6, &[2]).unwrap();
        let mp = MatchedPair::from_exact_factorization(&z6, &two, &three).unwrap();
        assert!(mp.alpha_is_trivial() && mp.beta_is_trivial());
    }

    #[test]
    fn bad_factorization_rejected() {
        let z6 = Arc::new(FiniteGroup::cyclic(6));
        let two = Subgroup::closure(&z6, &[3]).unwrap();
        assert!(matches!(
            MatchedPair::from_exact_factorization(&z6, &two, &two),
            Err(Error::NotExactFactorization(_))
        ));
    }

    #[test]
    fn corrupted_alpha_is_reported() {
        let mp = z2_z3();
        let mut alpha = mp.alpha_table().to_vec();
        // swapping two entries of α_s = inversion would give the valid direct product
        alpha[1][1] = alpha[1][2];
        let bad = MatchedPair::new(mp.gamma().clone(), mp.g().clone(), alpha, mp.beta_table().to_vec()).unwrap();
        let rep = bad.validate();
        assert!(!rep.is_ok());
        assert!(!rep.violations.is_empty());
    }

    #[test]
    fn orbit_data_examples() {
        let mp = z3_z2();
        let od = mp.orbit_data(1);
        assert_eq!(od.orbit(), &[1, 2]);
        assert_eq!(od.stabilizer().elements(), &[0]);
        assert_eq!(od.block(1, 2).unwrap(), &[1]);
        assert_eq!(od.section(1).unwrap(), 0);
        let od = mp.orbit_data(0);
        assert_eq!(od.orbit(), &[0]);
        assert_eq!(od.stabilizer().order(), 2);

        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let triv = MatchedPair::trivial(z2.clone(), z2);
        let od = triv.orbit_data(1);
        assert_eq!(od.orbit(), &[1]);
        assert_eq!(od.stabilizer().order(), 2);
    }

    fn check_orbit_invariants(mp: &MatchedPair) {
        let (ga, g) = (mp.gamma(), mp.g());
        for c in 0..ga.order() {
            let od = mp.orbit_data(c);
            assert_eq!(od.stabilizer().order() * od.len(), g.order());
            assert_eq!(od.section(c).unwrap(), 0);
            for &r in od.orbit() {
                assert_eq!(mp.beta(od.section(r).unwrap(), c), r);
                let total: usize = od.orbit().iter().map(|&s| od.block(r, s).unwrap().len()).sum();
                assert_eq!(total, g.order());
                for &s in od.orbit() {
                    for x in 0..g.order() {
                        let p = od.psi(r, s, x).unwrap();
                        assert_eq!(od.stabilizer().contains(p), od.block(r, s).unwrap().contains(&x));
                    }
                }
                // ψ_{r,r}: G_r → G_γ is an isomorphism
                let gr = mp.orbit_data(r);
                for &a in gr.stabilizer().elements() {
                    for &b in gr.stabilizer().elements() {
                        let ab = g.mul(a, b);
                        assert_eq!(
                            od.psi(r, r, ab).unwrap(),
                            g.mul(od.psi(r, r, a).unwrap(), od.psi(r, r, b).unwrap())
                        );
                    }
                }
            }
            for x in 0..g.order() {
                assert_eq!(od.psi(c, c, x).unwrap(), x);
            }
            // (γ·G)^{-1} = γ^{-1}·G and β_{α_γ(g)}(γ^{-1}) = (β_g(γ))^{-1}
            let inv_orbit: std::collections::BTreeSet<usize> = od.orbit().iter().map(|&r| ga.inv(r)).collect();
            let orbit_inv: std::collections::BTreeSet<usize> = mp.orbit(ga.inv(c)).into_iter().collect();
            assert_eq!(inv_orbit, orbit_inv);
            for x in 0..g.order() {
                assert_eq!(mp.beta(mp.alpha(c, x), ga.inv(c)), ga.inv(mp.beta(x, c)));
            }
        }
    }

    #[test]
    fn orbit_invariants_hold_exhaustively() {
        check_orbit_invariants(&z3_z2());
        check_orbit_invariants(&z2_z3());
    }

    #[test]
    fn psi_rejects_points_outside_orbit() {
        let mp = z3_z2();
        assert!(matches!(mp.psi(0, 1, 0, 0), Err(Error::OrbitMismatch { .. })));
    }
}

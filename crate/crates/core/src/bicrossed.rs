//! Irreducible representations of the bicrossed product.
//!
//! For `γ ∈ Γ` and a representation `u` of the stabilizer `G_γ`, the
//! representation `γ(u)` acts on `l²(γ·G) ⊗ H_u` with entries
//! `γ(u)_{(r,i),(s,j)} = u_r · 1_{G_{r,s}} · u(ψ^γ_{r,s}(·))_{ij}`.
//! Every irreducible class is `γ(x)` for a unique orbit representative `γ`
//! and `x ∈ Irr(G_γ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement, Tensor};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::matched_pair::{MatchedPair, OrbitData};
use crate::rep::{self, Character, IrrepTable, UnitaryRep};
use crate::Tolerances;

/// Index into [`Bicrossed::classes`].
pub type ClassId = usize;

/// One irreducible class `γ(x)` with `γ` an orbit representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrClass {
    pub gamma: usize,
    pub x: usize,
    pub orbit_len: usize,
    pub base_dim: usize,
    pub dim: usize,
}

/// Matrix of algebra elements realizing `γ(u)`.
#[derive(Debug, Clone)]
pub struct BicrossedRep {
    gamma: usize,
    orbit_len: usize,
    base_dim: usize,
    dim: usize,
    /// row-major, index `(r_pos·dim u + i)·dim + s_pos·dim u + j`
    entries: Vec<AlgebraElement>,
}

impl BicrossedRep {
    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit_len
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn entry(&self, p: usize, q: usize) -> &AlgebraElement {
        &self.entries[p * self.dim + q]
    }

    pub fn trace(&self) -> AlgebraElement {
        let mut t = self.entries[0].clone();
        for p in 1..self.dim {
            t.add_assign(self.entry(p, p));
        }
        t
    }

    /// The scalar matrix of coordinate `c = γ·|G| + g` of every entry.
    pub fn coordinate_matrix(&self, c: usize) -> CMat {
        CMat::from_fn(self.dim, self.dim, |p, q| self.entry(p, q).coeffs()[c])
    }

    /// `max(|V V* − 1|, |V* V − 1|)` entrywise in coefficients.
    pub fn unitarity_residual(&self, alg: &Algebra) -> f64 {
        let d = self.dim;
        let adj: Vec<AlgebraElement> = (0..d * d)
            .map(|k| alg.adjoint(self.entry(k % d, k / d)))
            .collect();
        let adj_at = |p: usize, q: usize| &adj[p * d + q];
        let mut r: f64 = 0.0;
        for p in 0..d {
            for q in 0..d {
                let mut vv = alg.zero();
                let mut v_v = alg.zero();
                for k in 0..d {
                    vv.add_assign(&alg.mul(self.entry(p, k), adj_at(k, q)));
                    v_v.add_assign(&alg.mul(adj_at(p, k), self.entry(k, q)));
                }
                let want = if p == q { alg.unit() } else { alg.zero() };
                r = r.max(vv.max_diff(&want)).max(v_v.max_diff(&want));
            }
        }
        r
    }

    /// `max_{p,q} |Δ(V_pq) − Σ_k V_pk ⊗ V_kq|`
    pub fn comodule_residual(&self, alg: &Algebra) -> f64 {
        let d = self.dim;
        let mut r: f64 = 0.0;
        for p in 0..d {
            for q in 0..d {
                let lhs = alg.comultiply(self.entry(p, q));
                let mut rhs = Tensor::zero(2, alg.dim());
                for k in 0..d {
                    rhs.add_assign(&alg.tensor2(self.entry(p, k), self.entry(k, q)));
                }
                r = r.max(lhs.max_diff(&rhs));
            }
        }
        r
    }
}

/// A matched pair together with every stabilizer irrep table and the
/// resulting classification of `Irr(𝔾)`.
#[derive(Debug, Clone)]
pub struct Bicrossed {
    mp: Arc<MatchedPair>,
    alg: Algebra,
    tol: Tolerances,
    seed: u64,
    orbits: Vec<OrbitData>,
    /// irrep table of `G_γ` for every `γ`; non-representatives carry the
    /// representative's table transported along `ψ^ρ_{γ,γ}`, so indices agree
    tables: Vec<Arc<IrrepTable>>,
    representatives: Vec<usize>,
    rep_of: Vec<usize>,
    classes: Vec<IrrClass>,
    class_index: BTreeMap<(usize, usize), ClassId>,
    characters: Vec<AlgebraElement>,
}

impl Bicrossed {
    pub fn new(mp: Arc<MatchedPair>, seed: u64, tol: Tolerances) -> Result<Self> {
        Self::with_table_source(mp, seed, tol, &|g: &Arc<FiniteGroup>| rep::irreps(g, seed, &tol))
    }

    /// Builds the context, obtaining stabilizer irrep tables from `source`
    /// (used by the CLI to route through the on-disk cache).
    pub fn with_table_source(
        mp: Arc<MatchedPair>,
        seed: u64,
        tol: Tolerances,
        source: &(dyn Fn(&Arc<FiniteGroup>) -> Result<IrrepTable> + Sync),
    ) -> Result<Self> {
        let n_gamma = mp.gamma().order();
        let orbits: Vec<OrbitData> = (0..n_gamma).map(|c| mp.orbit_data(c)).collect();
        let representatives = mp.orbit_representatives();
        let rep_of: Vec<usize> = (0..n_gamma).map(|c| orbits[c].orbit()[0]).collect();

        let rep_tables: Vec<Arc<IrrepTable>> = representatives
            .par_iter()
            .map(|&rho| source(orbits[rho].stabilizer().view()).map(Arc::new))
            .collect::<Result<_>>()?;
        let mut by_rep = BTreeMap::new();
        for (&rho, t) in representatives.iter().zip(&rep_tables) {
            by_rep.insert(rho, t.clone());
        }

        let mut tables = Vec::with_capacity(n_gamma);
        for c in 0..n_gamma {
            let rho = rep_of[c];
            let base = by_rep[&rho].clone();
            if c == rho {
                tables.push(base);
            } else {
                let phi = stabilizer_map(&orbits[rho], orbits[rho].stabilizer(), orbits[c].stabilizer(), c);
                tables.push(Arc::new(base.transport(orbits[c].stabilizer().view(), &phi)?));
            }
        }

        let mut classes = Vec::new();
        let mut class_index = BTreeMap::new();
        for &rho in &representatives {
            let od = &orbits[rho];
            for x in 0..tables[rho].len() {
                class_index.insert((rho, x), classes.len());
                let base_dim = tables[rho].dim(x);
                classes.push(IrrClass {
                    gamma: rho,
                    x,
                    orbit_len: od.len(),
                    base_dim,
                    dim: od.len() * base_dim,
                });
            }
        }

        let alg = Algebra::new(mp.clone());
        let mut ctx = Bicrossed {
            mp,
            alg,
            tol,
            seed,
            orbits,
            tables,
            representatives,
            rep_of,
            classes,
            class_index,
            characters: Vec::new(),
        };
        ctx.characters = (0..ctx.classes.len())
            .map(|i| {
                let c = &ctx.classes[i];
                ctx.character_of(c.gamma, ctx.tables[c.gamma].irrep(c.x))
            })
            .collect::<Result<_>>()?;
        ctx.check_completeness()?;
        Ok(ctx)
    }

    pub fn pair(&self) -> &Arc<MatchedPair> {
        &self.mp
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn orbit(&self, gamma: usize) -> &OrbitData {
        &self.orbits[gamma]
    }

    pub fn stabilizer(&self, gamma: usize) -> &Subgroup {
        self.orbits[gamma].stabilizer()
    }

    pub fn table(&self, gamma: usize) -> &IrrepTable {
        &self.tables[gamma]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative_of(&self, gamma: usize) -> usize {
        self.rep_of[gamma]
    }

    pub fn classes(&self) -> &[IrrClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &IrrClass {
        &self.classes[id]
    }

    pub fn class_id(&self, rho: usize, x: usize) -> Option<ClassId> {
        self.class_index.get(&(rho, x)).copied()
    }

    /// The class `γ(ε_{G_γ})` of the trivial representation of the stabilizer.
    pub fn epsilon_class(&self, gamma: usize) -> ClassId {
        let rho = self.rep_of[gamma];
        self.class_index[&(rho, self.tables[rho].trivial_index())]
    }

    pub fn trivial_class(&self) -> ClassId {
        self.epsilon_class(0)
    }

    /// `"<Γ label>:<irrep index>"`
    pub fn label(&self, id: ClassId) -> String {
        let c = &self.classes[id];
        format!("{}:{}", self.mp.gamma().label(c.gamma), c.x)
    }

    pub fn find_label(&self, label: &str) -> Option<ClassId> {
        (0..self.classes.len()).find(|&i| self.label(i) == label)
    }

    pub fn class_character(&self, id: ClassId) -> &AlgebraElement {
        &self.characters[id]
    }

    pub fn class_rep(&self, id: ClassId) -> BicrossedRep {
        let c = &self.classes[id];
        self.build_rep(c.gamma, self.tables[c.gamma].irrep(c.x))
            .expect("table irreps live on the stabilizer")
    }

    fn check_stabilizer(&self, gamma: usize, u: &UnitaryRep) -> Result<()> {
        let stab = self.orbits[gamma].stabilizer().view();
        if Arc::ptr_eq(stab, u.group()) || stab.table() == u.group().table() {
            Ok(())
        } else {
            Err(Error::StabilizerMismatch {
                expected: stab.order(),
                found: u.group().order(),
            })
        }
    }

    /// `γ(u)`
    pub fn build_rep(&self, gamma: usize, u: &UnitaryRep) -> Result<BicrossedRep> {
        self.check_stabilizer(gamma, u)?;
        let od = &self.orbits[gamma];
        let stab = od.stabilizer();
        let du = u.dim();
        let k = od.len();
        let dim = k * du;
        let mut entries = vec![self.alg.zero(); dim * dim];
        for (ri, &r) in od.orbit().iter().enumerate() {
            for (si, &s) in od.orbit().iter().enumerate() {
                for &g in od.block(r, s)? {
                    let h = stab.to_local(od.psi_at(ri, si, g)).expect("ψ maps G_{r,s} into G_γ");
                    let m = u.matrix(h);
                    for i in 0..du {
                        for j in 0..du {
                            let z = m[(i, j)];
                            if z != ZERO {
                                entries[(ri * du + i) * dim + si * du + j].set(r, g, z);
                            }
                        }
                    }
                }
            }
        }
        Ok(BicrossedRep {
            gamma,
            orbit_len: k,
            base_dim: du,
            dim,
            entries,
        })
    }

    /// `χ(γ(u)) = Σ_{r ∈ γ·G} u_r v_{rr} (χ_u ∘ ψ^γ_{r,r})`
    pub fn character_of(&self, gamma: usize, u: &UnitaryRep) -> Result<AlgebraElement> {
        self.check_stabilizer(gamma, u)?;
        Ok(self.character_from_class_function(gamma, &u.character()))
    }

    fn character_from_class_function(&self, gamma: usize, chi: &Character) -> AlgebraElement {
        let od = &self.orbits[gamma];
        let stab = od.stabilizer();
        let mut out = self.alg.zero();
        for (ri, &r) in od.orbit().iter().enumerate() {
            for &g in od.block(r, r).expect("r in orbit") {
                let h = stab.to_local(od.psi_at(ri, ri, g)).expect("ψ maps G_r into G_γ");
                out.set(r, g, chi.values[h]);
            }
        }
        out
    }

    /// The representation `w ∘ ψ^μ_{γ,γ}` of `G_γ`, for `w` a representation of
    /// `G_μ` and `γ ∈ μ·G`.
    pub fn transport_to(&self, mu: usize, w: &UnitaryRep, gamma: usize) -> Result<UnitaryRep> {
        self.check_stabilizer(mu, w)?;
        let od = &self.orbits[mu];
        od.position(gamma)?;
        let phi = stabilizer_map(od, od.stabilizer(), self.orbits[gamma].stabilizer(), gamma);
        w.transport(self.orbits[gamma].stabilizer().view(), &phi)
    }

    /// The class of `γ(u)` for an irreducible `u` of `G_γ` and any `γ ∈ Γ`.
    pub fn classify(&self, gamma: usize, u: &UnitaryRep) -> Result<ClassId> {
        let rho = self.rep_of[gamma];
        let w = self.transport_to(gamma, u, rho)?;
        let x = self.tables[rho].find(&w.character(), self.tol.int).ok_or_else(|| {
            Error::FormulaMismatch(format!(
                "representation over Γ-element {gamma} is not irreducible"
            ))
        })?;
        Ok(self.class_index[&(rho, x)])
    }

    /// `dim Mor(γ(u), μ(w))`, evaluated both through the Haar state on
    /// characters and through the classical Mor space of `u` and
    /// `w ∘ ψ^μ_{γ,γ}`. Disagreement is an error.
    pub fn mor_dim_classes(&self, gamma: usize, u: &UnitaryRep, mu: usize, w: &UnitaryRep) -> Result<usize> {
        let c1 = self.character_of(gamma, u)?;
        let c2 = self.character_of(mu, w)?;
        let h = self.alg.haar(&self.alg.mul(&c1, &self.alg.adjoint(&c2)));
        let lhs = linalg::round_count(h.re, self.tol.int)?;
        if h.im.abs() >= self.tol.int {
            return Err(Error::NonIntegral { value: h.im, tol: self.tol.int });
        }
        let rhs = if self.orbits[mu].contains(gamma) {
            let wt = self.transport_to(mu, w, gamma)?;
            rep::mor_dim_char(u, &wt, self.tol.int)?
        } else {
            0
        };
        if lhs != rhs {
            return Err(Error::FormulaMismatch(format!(
                "Haar pairing gives {lhs}, stabilizer Mor space gives {rhs} (Γ-elements {gamma}, {mu})"
            )));
        }
        Ok(lhs)
    }

    /// Brute-force `dim Mor(U, V)`: solves `T U^c = V^c T` for every
    /// coordinate `c` of `C(𝔾)`.
    pub fn mor_dim_gns(&self, u: &BicrossedRep, v: &BicrossedRep) -> usize {
        let n = self.alg.dim();
        let us: Vec<CMat> = (0..n).map(|c| u.coordinate_matrix(c)).collect();
        let vs: Vec<CMat> = (0..n).map(|c| v.coordinate_matrix(c)).collect();
        linalg::solve_intertwiners(us.iter().zip(&vs), u.dim(), v.dim(), 1e-8).len()
    }

    /// `(γ⁻¹, ū ∘ α_{γ⁻¹})`, with the character identity
    /// `χ(output) = χ(γ(u))*` verified.
    pub fn contragredient_class(&self, gamma: usize, u: &UnitaryRep) -> Result<(usize, UnitaryRep)> {
        self.check_stabilizer(gamma, u)?;
        let gi = self.mp.gamma().inv(gamma);
        let src = self.orbits[gi].stabilizer();
        let dst = self.orbits[gamma].stabilizer();
        let phi: Vec<usize> = (0..src.order())
            .map(|k| {
                dst.to_local(self.mp.alpha(gi, src.to_parent(k)))
                    .expect("α_{γ⁻¹} maps G_{γ⁻¹} onto G_γ")
            })
            .collect();
        let out = u.contragredient().transport(src.view(), &phi)?;
        let residual = self.contragredient_residual(gamma, u, gi, &out)?;
        if residual >= self.tol.alg {
            return Err(Error::FormulaMismatch(format!(
                "contragredient character differs from the adjoint by {residual:e}"
            )));
        }
        Ok((gi, out))
    }

    fn contragredient_residual(&self, gamma: usize, u: &UnitaryRep, gi: usize, out: &UnitaryRep) -> Result<f64> {
        let lhs = self.character_of(gi, out)?;
        let rhs = self.alg.adjoint(&self.character_of(gamma, u)?);
        Ok(lhs.max_diff(&rhs))
    }

    /// Largest `|χ(contragredient) − χ*|` over all classes.
    pub fn contragredient_max_residual(&self) -> Result<f64> {
        let mut r: f64 = 0.0;
        for c in &self.classes {
            let u = self.tables[c.gamma].irrep(c.x);
            let (gi, out) = self.contragredient_class(c.gamma, u)?;
            r = r.max(self.contragredient_residual(c.gamma, u, gi, &out)?);
        }
        Ok(r)
    }

    /// The class of the contragredient of `id`.
    pub fn dual_class(&self, id: ClassId) -> Result<ClassId> {
        let c = &self.classes[id];
        let (gi, u) = self.contragredient_class(c.gamma, self.tables[c.gamma].irrep(c.x))?;
        self.classify(gi, &u)
    }

    /// `Σ dim² = |Γ|·|G|`
    pub fn check_completeness(&self) -> Result<usize> {
        let total: usize = self.classes.iter().map(|c| c.dim * c.dim).sum();
        let expected = self.mp.gamma().order() * self.mp.g().order();
        if total != expected {
            return Err(Error::CompletenessFailed { expected, found: total });
        }
        Ok(total)
    }

    /// `max |h(χ_i χ_j*) − δ_ij|` over the whole table.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.classes.len();
        let adj: Vec<AlgebraElement> = self.characters.iter().map(|c| self.alg.adjoint(c)).collect();
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let h = self.alg.haar(&self.alg.mul(&self.characters[i], &adj[j]));
                        let want = if i == j { 1.0 } else { 0.0 };
                        (h - C64::new(want, 0.0)).norm()
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// `ψ^ρ_{γ,γ}` as a map from local indices of `G_γ` to local indices of
/// `G_ρ`, where `od` is the orbit data of `ρ` and `γ ∈ ρ·G`.
fn stabilizer_map(od: &OrbitData, target: &Subgroup, source: &Subgroup, gamma: usize) -> Vec<usize> {
    (0..source.order())
        .map(|k| {
            let g = od.psi(gamma, gamma, source.to_parent(k)).expect("γ in orbit");
            target.to_local(g).expect("ψ^ρ_{γ,γ} maps G_γ onto G_ρ")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Subgroup;

    fn s3() -> (Arc<FiniteGroup>, Vec<Vec<usize>>) {
        let (g, p) = FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        (Arc::new(g), p)
    }

    fn z3_z2() -> Bicrossed {
        let (g, p) = s3();
        let idx = |q: &[usize]| p.iter().position(|x| x == q).unwrap();
        let c = Subgroup::closure(&g, &[idx(&[1, 2, 0])]).unwrap();
        let t = Subgroup::closure(&g, &[idx(&[1, 0, 2])]).unwrap();
        let mp = MatchedPair::from_exact_factorization(&g, &c, &t).unwrap();
        Bicrossed::new(Arc::new(mp), 0, Tolerances::default()).unwrap()
    }

    fn z2_z3() -> Bicrossed {
        let (g, p) = s3();
        let idx = |q: &[usize]| p.iter().position(|x| x == q).unwrap();
        let c = Subgroup::closure(&g, &[idx(&[1, 2, 0])]).unwrap();
        let t = Subgroup::closure(&g, &[idx(&[1, 0, 2])]).unwrap();
        let mp = MatchedPair::from_exact_factorization(&g, &t, &c).unwrap();
        Bicrossed::new(Arc::new(mp), 0, Tolerances::default()).unwrap()
    }

    fn trivial_z2z2() -> Bicrossed {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        Bicrossed::new(Arc::new(MatchedPair::trivial(z2.clone(), z2)), 0, Tolerances::default()).unwrap()
    }

    #[test]
    fn class_tables() {
        let b = trivial_z2z2();
        assert_eq!(b.classes().len(), 4);
        assert!(b.classes().iter().all(|c| c.dim == 1));
        let b = z2_z3();
        assert_eq!(b.classes().len(), 6);
        let b = z3_z2();
        let mut dims: Vec<usize> = b.classes().iter().map(|c| c.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2]);
        assert!(b.orthogonality_residual() < 1e-9);
    }

    #[test]
    fn built_reps_are_unitary_comodules_with_matching_trace() {
        for b in [trivial_z2z2(), z2_z3(), z3_z2()] {
            for id in 0..b.classes().len() {
                let r = b.class_rep(id);
                assert_eq!(r.dim(), b.class(id).dim);
                assert!(r.unitarity_residual(b.algebra()) < 1e-9);
                assert!(r.comodule_residual(b.algebra()) < 1e-9);
                assert!(r.trace().max_diff(b.class_character(id)) < 1e-9);
            }
        }
    }

    #[test]
    fn trivial_pair_sign_class_character() {
        let b = trivial_z2z2();
        let id = b.class_id(1, 1).unwrap();
        let chi = b.class_character(id);
        assert_eq!(chi.get(1, 0), C64::new(1.0, 0.0));
        assert_eq!(chi.get(1, 1), C64::new(-1.0, 0.0));
        assert_eq!(chi.get(0, 0), ZERO);
    }

    #[test]
    fn two_dim_class_character_is_indicator_supported() {
        let b = z3_z2();
        let id = b.classes().iter().position(|c| c.dim == 2).unwrap();
        let chi = b.class_character(id);
        let alg = b.algebra();
        let want = alg.mul(&alg.u(1), &alg.v(1, 1)).add(&alg.mul(&alg.u(2), &alg.v(2, 2)));
        assert!(chi.max_diff(&want) < 1e-12);
        assert!(alg.haar(chi).norm() < 1e-12);
        let r = b.class_rep(id);
        assert_eq!(b.mor_dim_gns(&r, &r), 1);
    }

    #[test]
    fn trivial_class_character_is_unit() {
        for b in [z2_z3(), z3_z2()] {
            assert!(b.class_character(b.trivial_class()).max_diff(&b.algebra().unit()) < 1e-12);
        }
    }

    #[test]
    fn identity_orbit_embeds_irr_g() {
        let b = z2_z3();
        for x in 0..b.table(0).len() {
            let id = b.class_id(0, x).unwrap();
            assert_eq!(b.class(id).dim, b.table(0).dim(x));
        }
    }

    #[test]
    fn mor_dims_agree_three_ways() {
        for b in [trivial_z2z2(), z2_z3(), z3_z2()] {
            let n = b.classes().len();
            for i in 0..n {
                for j in 0..n {
                    let (ci, cj) = (b.class(i), b.class(j));
                    let u = b.table(ci.gamma).irrep(ci.x);
                    let w = b.table(cj.gamma).irrep(cj.x);
                    let m = b.mor_dim_classes(ci.gamma, u, cj.gamma, w).unwrap();
                    assert_eq!(m, usize::from(i == j));
                    assert_eq!(b.mor_dim_gns(&b.class_rep(i), &b.class_rep(j)), m);
                }
            }
        }
    }

    #[test]
    fn non_representative_points_classify_to_their_orbit() {
        let b = z3_z2();
        let u = b.table(2).irrep(0);
        let id = b.classify(2, u).unwrap();
        assert_eq!(b.class(id).gamma, 1);
        let r2 = b.build_rep(2, u).unwrap();
        assert_eq!(b.mor_dim_gns(&r2, &b.class_rep(id)), 1);
    }

    #[test]
    fn contragredients() {
        let b = z3_z2();
        let two = b.classes().iter().position(|c| c.dim == 2).unwrap();
        assert_eq!(b.dual_class(two).unwrap(), two);
        let b = trivial_z2z2();
        let id = b.class_id(1, 1).unwrap();
        assert_eq!(b.dual_class(id).unwrap(), id);
        for b in [z2_z3(), z3_z2()] {
            assert!(b.contragredient_max_residual().unwrap() < 1e-9);
            for id in 0..b.classes().len() {
                assert_eq!(b.dual_class(b.dual_class(id).unwrap()).unwrap(), id);
            }
        }
    }

    #[test]
    fn wrong_group_is_rejected() {
        let b = z3_z2();
        let u = UnitaryRep::trivial(b.pair().g());
        assert!(matches!(b.build_rep(1, &u), Err(Error::StabilizerMismatch { .. })));
    }
}

//! Twisted tensor products with their fusion multiplicities, plus induction to G.

use rayon::prelude::*;
use serde::Serialize;

use crate::bicrossed::{Bicrossed, ClassId};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ZERO};
use crate::rep::{self, Character, UnitaryRep};

/// `u ⊗_r v`, a representation of `G_r` on `K_r ⊗ H_u ⊗ H_v`.
#[derive(Debug, Clone)]
pub struct TwistedTensorRep {
    pub r: usize,
    /// the pairs `(s, t)` with `st = r`, in the order used for `K_r`
    pub pairs: Vec<(usize, usize)>,
    pub rep: UnitaryRep,
}

/// `(γ·G)(μ·G)` as a sorted list of Γ-indices.
pub fn product_of_orbits(b: &Bicrossed, gamma: usize, mu: usize) -> Vec<usize> {
    let gm = b.pair().gamma();
    let mut out: Vec<usize> = b
        .orbit(gamma)
        .orbit()
        .iter()
        .flat_map(|&s| b.orbit(mu).orbit().iter().map(move |&t| gm.mul(s, t)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn factor_pairs(b: &Bicrossed, gamma: usize, mu: usize, r: usize) -> Vec<(usize, usize)> {
    let gm = b.pair().gamma();
    let mut pairs = Vec::new();
    for &s in b.orbit(gamma).orbit() {
        for &t in b.orbit(mu).orbit() {
            if gm.mul(s, t) == r {
                pairs.push((s, t));
            }
        }
    }
    pairs
}

/// Builds `u ⊗_r v` for `u ∈ Rep(G_γ)`, `v ∈ Rep(G_μ)`.
pub fn twisted_tensor(
    b: &Bicrossed,
    gamma: usize,
    u: &UnitaryRep,
    mu: usize,
    v: &UnitaryRep,
    r: usize,
) -> Result<TwistedTensorRep> {
    let pairs = factor_pairs(b, gamma, mu, r);
    if pairs.is_empty() {
        return Err(Error::PointNotInProductOfOrbits { r });
    }
    check_group(b, gamma, u)?;
    check_group(b, mu, v)?;
    let mp = b.pair();
    let (og, om) = (b.orbit(gamma), b.orbit(mu));
    let (sg, sm) = (og.stabilizer(), om.stabilizer());
    let stab_r = b.stabilizer(r);
    let (du, dv) = (u.dim(), v.dim());
    let blk = du * dv;
    let dim = pairs.len() * blk;
    let position = |s: usize, t: usize| pairs.iter().position(|&p| p == (s, t));

    let matrices = (0..stab_r.order())
        .map(|k| {
            let g = stab_r.to_parent(k);
            let mut m = CMat::zeros(dim, dim);
            for (p, &(s, t)) in pairs.iter().enumerate() {
                let ag = mp.alpha(t, g);
                let s2 = mp.beta(ag, s);
                let t2 = mp.beta(g, t);
                let q = position(s2, t2).expect("g ∈ G_r preserves st = r");
                let hu = sg.to_local(og.psi(s, s2, ag).expect("s in orbit")).expect("ψ lands in G_γ");
                let hv = sm.to_local(om.psi(t, t2, g).expect("t in orbit")).expect("ψ lands in G_μ");
                let block = u.matrix(hu).kronecker(v.matrix(hv));
                m.view_mut((p * blk, q * blk), (blk, blk)).copy_from(&block);
            }
            m
        })
        .collect();
    let rep = UnitaryRep::new(stab_r.view().clone(), matrices)?;
    Ok(TwistedTensorRep { r, pairs, rep })
}

/// `χ(u ⊗_r v)(g) = Σ_{st=r} [s·α_t(g) = s][t·g = t] χ_u(ψ^γ_{s,s}(α_t(g))) χ_v(ψ^μ_{t,t}(g))`
/// as a class function on `G_r`.
pub fn twisted_character(
    b: &Bicrossed,
    gamma: usize,
    chi_u: &Character,
    mu: usize,
    chi_v: &Character,
    r: usize,
) -> Result<Character> {
    let pairs = factor_pairs(b, gamma, mu, r);
    if pairs.is_empty() {
        return Err(Error::PointNotInProductOfOrbits { r });
    }
    let mp = b.pair();
    let (og, om) = (b.orbit(gamma), b.orbit(mu));
    let (sg, sm) = (og.stabilizer(), om.stabilizer());
    let stab_r = b.stabilizer(r);
    let values = (0..stab_r.order())
        .map(|k| {
            let g = stab_r.to_parent(k);
            let mut z = ZERO;
            for &(s, t) in &pairs {
                let ag = mp.alpha(t, g);
                if mp.beta(ag, s) != s || mp.beta(g, t) != t {
                    continue;
                }
                let hu = sg.to_local(og.psi(s, s, ag).expect("s in orbit")).expect("ψ lands in G_γ");
                let hv = sm.to_local(om.psi(t, t, g).expect("t in orbit")).expect("ψ lands in G_μ");
                z += chi_u.values[hu] * chi_v.values[hv];
            }
            z
        })
        .collect();
    Ok(Character { values })
}

fn check_group(b: &Bicrossed, gamma: usize, u: &UnitaryRep) -> Result<()> {
    let stab = b.stabilizer(gamma).view();
    if stab.table() == u.group().table() {
        Ok(())
    } else {
        Err(Error::StabilizerMismatch {
            expected: stab.order(),
            found: u.group().order(),
        })
    }
}

/// `dim Mor(γ₁(u), γ₂(v) ⊗ γ₃(w))` from the orbit-averaged stabilizer formula alone.
pub fn fusion_dim_formula(b: &Bicrossed, z: ClassId, x: ClassId, y: ClassId) -> Result<usize> {
    let (c1, c2, c3) = (b.class(z), b.class(x), b.class(y));
    let prod = product_of_orbits(b, c2.gamma, c3.gamma);
    let chi_v = b.table(c2.gamma).character(c2.x);
    let chi_w = b.table(c3.gamma).character(c3.x);
    let chi_u = b.table(c1.gamma).character(c1.x);
    let od1 = b.orbit(c1.gamma);
    let mut total = 0.0;
    for &r in od1.orbit() {
        if prod.binary_search(&r).is_err() {
            continue;
        }
        let tw = twisted_character(b, c2.gamma, chi_v, c3.gamma, chi_w, r)?;
        // u ∘ ψ^{γ₁}_{r,r} on G_r
        let stab_r = b.stabilizer(r);
        let s1 = od1.stabilizer();
        let moved = Character {
            values: (0..stab_r.order())
                .map(|k| {
                    let g = od1.psi(r, r, stab_r.to_parent(k)).expect("r in orbit");
                    chi_u.values[s1.to_local(g).expect("ψ lands in G_γ")]
                })
                .collect(),
        };
        total += linalg::round_count(moved.inner(&tw), b.tol().int)? as f64;
    }
    linalg::round_count(total / od1.len() as f64, b.tol().int)
}

/// `h(χ_z* χ_x χ_y)` rounded.
pub fn fusion_dim_oracle(b: &Bicrossed, z: ClassId, x: ClassId, y: ClassId) -> Result<usize> {
    let alg = b.algebra();
    let p = alg.mul(
        &alg.mul(&alg.adjoint(b.class_character(z)), b.class_character(x)),
        b.class_character(y),
    );
    let h = alg.haar(&p);
    if h.im.abs() >= b.tol().int {
        return Err(Error::NonIntegral { value: h.im, tol: b.tol().int });
    }
    linalg::round_count(h.re, b.tol().int)
}

/// Multiplicity of `z` in `x ⊗ y`, with the formula and the concrete-model
/// oracle required to agree.
pub fn fusion_dim(b: &Bicrossed, z: ClassId, x: ClassId, y: ClassId) -> Result<usize> {
    let f = fusion_dim_formula(b, z, x, y)?;
    let o = fusion_dim_oracle(b, z, x, y)?;
    if f != o {
        return Err(Error::FormulaMismatch(format!(
            "fusion of {} into {} ⊗ {}: averaged formula {f}, Haar oracle {o}",
            b.label(z),
            b.label(x),
            b.label(y)
        )));
    }
    Ok(f)
}

/// `N[z][x][y] = dim Mor(z, x ⊗ y)` over the whole class table.
#[derive(Debug, Clone, Serialize)]
pub struct FusionTable {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub n: Vec<Vec<Vec<usize>>>,
}

impl FusionTable {
    pub fn compute(b: &Bicrossed) -> Result<Self> {
        let k = b.classes().len();
        let n = (0..k)
            .into_par_iter()
            .map(|z| {
                (0..k)
                    .map(|x| (0..k).map(|y| fusion_dim(b, z, x, y)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FusionTable {
            labels: (0..k).map(|i| b.label(i)).collect(),
            dims: b.classes().iter().map(|c| c.dim).collect(),
            n,
        })
    }

    /// Pairs `(x, y)` where `Σ_z dim(z) N^z_{xy} ≠ dim(x) dim(y)`.
    pub fn dimension_count_failures(&self) -> Vec<(usize, usize)> {
        let k = self.dims.len();
        let mut bad = Vec::new();
        for x in 0..k {
            for y in 0..k {
                let s: usize = (0..k).map(|z| self.dims[z] * self.n[z][x][y]).sum();
                if s != self.dims[x] * self.dims[y] {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    /// Pairs violating `N^{trivial}_{xy} = [y = x̄]`.
    pub fn duality_failures(&self, trivial: ClassId, dual: &[ClassId]) -> Vec<(usize, usize)> {
        let k = self.dims.len();
        let mut bad = Vec::new();
        for x in 0..k {
            for y in 0..k {
                if self.n[trivial][x][y] != usize::from(dual[x] == y) {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    /// Quadruples `(x, y, t, w)` where `(x ⊗ y) ⊗ t` and `x ⊗ (y ⊗ t)` disagree on `w`.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize, usize)> {
        let k = self.dims.len();
        let mut bad = Vec::new();
        for x in 0..k {
            for y in 0..k {
                for t in 0..k {
                    for w in 0..k {
                        let l: usize = (0..k).map(|z| self.n[z][x][y] * self.n[w][z][t]).sum();
                        let r: usize = (0..k).map(|z| self.n[z][y][t] * self.n[w][x][z]).sum();
                        if l != r {
                            bad.push((x, y, t, w));
                        }
                    }
                }
            }
        }
        bad
    }
}

/// `Ind_γ^G(u)(g) = Σ_{r,s} e_{rs} v_{rs}(g) u(ψ^γ_{r,s}(g))`
pub fn induce(b: &Bicrossed, gamma: usize, u: &UnitaryRep) -> Result<UnitaryRep> {
    check_group(b, gamma, u)?;
    let od = b.orbit(gamma);
    let stab = od.stabilizer();
    let g = b.pair().g();
    let du = u.dim();
    let dim = od.len() * du;
    let matrices = (0..g.order())
        .map(|x| {
            let mut m = CMat::zeros(dim, dim);
            for (ri, &r) in od.orbit().iter().enumerate() {
                let s = b.pair().beta(x, r);
                let si = od.position(s).expect("orbit is β-stable");
                let h = stab.to_local(od.psi_at(ri, si, x)).expect("ψ lands in G_γ");
                m.view_mut((ri * du, si * du), (du, du)).copy_from(u.matrix(h));
            }
            m
        })
        .collect();
    UnitaryRep::new(g.clone(), matrices)
}

/// `χ(Ind_γ^G(u))(g) = Σ_r [r·g = r] χ_u(ψ^γ_{r,r}(g))`
pub fn induced_character(b: &Bicrossed, gamma: usize, chi: &Character) -> Character {
    let od = b.orbit(gamma);
    let stab = od.stabilizer();
    let g = b.pair().g();
    let values = (0..g.order())
        .map(|x| {
            od.orbit()
                .iter()
                .enumerate()
                .filter(|(_, &r)| b.pair().beta(x, r) == r)
                .map(|(ri, _)| chi.values[stab.to_local(od.psi_at(ri, ri, x)).expect("ψ lands in G_γ")])
                .sum()
        })
        .collect();
    Character { values }
}

/// `(dim Mor_G(u, Ind v), dim Mor_{G_γ}(Res u, v))`
pub fn frobenius_check(b: &Bicrossed, gamma: usize, u: &UnitaryRep, v: &UnitaryRep) -> Result<(usize, usize)> {
    let ind = induce(b, gamma, v)?;
    let lhs = rep::mor_dim_char(u, &ind, b.tol().int)?;
    let res = u.restrict(b.stabilizer(gamma))?;
    let rhs = rep::mor_dim_char(&res, v, b.tol().int)?;
    Ok((lhs, rhs))
}

/// Max residual of the twisted character formula against the trace of the
/// constructed matrices, plus the homomorphism/unitarity residual of the
/// matrices, over all class pairs and all admissible `r`.
pub fn twisted_tensor_residuals(b: &Bicrossed) -> Result<f64> {
    let k = b.classes().len();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let (ci, cj) = (b.class(i), b.class(j));
            let u = b.table(ci.gamma).irrep(ci.x);
            let v = b.table(cj.gamma).irrep(cj.x);
            for r in product_of_orbits(b, ci.gamma, cj.gamma) {
                let tw = twisted_tensor(b, ci.gamma, u, cj.gamma, v, r)?;
                let ch = twisted_character(b, ci.gamma, &u.character(), cj.gamma, &v.character(), r)?;
                worst = worst
                    .max(tw.rep.character().max_diff(&ch))
                    .max(tw.rep.homomorphism_residual())
                    .max(tw.rep.unitarity_residual());
            }
        }
    }
    Ok(worst)
}

//! Numerical representation theory of finite groups.
//!
//! Irreducible representations are found by splitting the regular
//! representation: averaging a random Hermitian matrix over the group gives a
//! self-adjoint element of the commutant, whose eigenspaces are invariant.
//! Pieces that are still reducible (detected by `⟨χ, χ⟩ > 1`) are split again
//! with fresh randomness.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, CMat, C64, ONE};
use crate::{Tolerances, DEFAULT_ORDER_CAP, SPLIT_RETRIES};

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.table() == b.table()
}

/// Unitary matrices indexed by group element.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMat>,
}

impl UnitaryRep {
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<CMat>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Shape(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Shape("matrices are not square of a common size".into()));
        }
        Ok(UnitaryRep { group, dim, matrices })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, dim: usize, f: impl Fn(usize) -> CMat) -> Self {
        let matrices = (0..group.order()).map(f).collect();
        UnitaryRep { group, dim, matrices }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_fn(group.clone(), 1, |_| CMat::identity(1, 1))
    }

    /// Left translation on `ℂ[G]`: `λ(g) e_x = e_{gx}`.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Self::from_fn(group.clone(), n, |g| {
            let mut m = CMat::zeros(n, n);
            for x in 0..n {
                m[(group.mul(g, x), x)] = ONE;
            }
            m
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn character(&self) -> Character {
        Character {
            values: self.matrices.iter().map(|m| m.trace()).collect(),
        }
    }

    /// `max_{g,h} |ρ(gh) − ρ(g)ρ(h)|` together with `|ρ(e) − 1|`.
    pub fn homomorphism_residual(&self) -> f64 {
        let id = CMat::identity(self.dim, self.dim);
        let mut r = linalg::max_abs_diff(&self.matrices[0], &id);
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let prod = &self.matrices[g] * &self.matrices[h];
                r = r.max(linalg::max_abs_diff(&self.matrices[self.group.mul(g, h)], &prod));
            }
        }
        r
    }

    pub fn unitarity_residual(&self) -> f64 {
        let id = CMat::identity(self.dim, self.dim);
        self.matrices
            .iter()
            .map(|m| linalg::max_abs_diff(&(m.adjoint() * m), &id))
            .fold(0.0, f64::max)
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        let residual = self.homomorphism_residual().max(self.unitarity_residual());
        if residual < tol {
            Ok(())
        } else {
            Err(Error::NotUnitaryRep { residual })
        }
    }

    pub fn is_irreducible(&self, tol_int: f64) -> bool {
        let c = self.character();
        matches!(linalg::round_count(c.inner(&c), tol_int), Ok(1))
    }

    /// Entrywise complex conjugate.
    pub fn contragredient(&self) -> Self {
        Self::from_fn(self.group.clone(), self.dim, |g| self.matrices[g].map(|z| z.conj()))
    }

    /// Restriction to a subgroup of this representation's group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        if !same_group(sub.parent(), &self.group) {
            return Err(Error::StabilizerMismatch {
                expected: self.group.order(),
                found: sub.parent().order(),
            });
        }
        Ok(Self::from_fn(sub.view().clone(), self.dim, |h| {
            self.matrices[sub.to_parent(h)].clone()
        }))
    }

    /// `u ∘ φ` for a bijective homomorphism `φ: source → self.group()`.
    pub fn transport(&self, source: &Arc<FiniteGroup>, phi: &[usize]) -> Result<Self> {
        self.group.check_isomorphism(source, phi)?;
        Ok(Self::from_fn(source.clone(), self.dim, |k| self.matrices[phi[k]].clone()))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::Shape("direct sum of representations of different groups".into()));
        }
        let d = self.dim + other.dim;
        Ok(Self::from_fn(self.group.clone(), d, |g| {
            let mut m = CMat::zeros(d, d);
            m.view_mut((0, 0), (self.dim, self.dim)).copy_from(&self.matrices[g]);
            m.view_mut((self.dim, self.dim), (other.dim, other.dim))
                .copy_from(&other.matrices[g]);
            m
        }))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::Shape("tensor product of representations of different groups".into()));
        }
        Ok(Self::from_fn(self.group.clone(), self.dim * other.dim, |g| {
            self.matrices[g].kronecker(&other.matrices[g])
        }))
    }
}

/// Class function given by its values on every element.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub values: Vec<C64>,
}

impl Character {
    /// `(1/|G|) Σ_g χ(g) conj(ψ(g))`
    pub fn inner(&self, other: &Character) -> f64 {
        let n = self.values.len() as f64;
        let s: C64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        s.re / n
    }

    pub fn dim(&self) -> f64 {
        self.values[0].re
    }

    pub fn conj(&self) -> Character {
        Character {
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transport(&self, phi: &[usize]) -> Character {
        Character {
            values: phi.iter().map(|&p| self.values[p]).collect(),
        }
    }

    pub fn product(&self, other: &Character) -> Character {
        Character {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn max_diff(&self, other: &Character) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `dim Mor(u, v)` from the character pairing.
pub fn mor_dim_char(u: &UnitaryRep, v: &UnitaryRep, tol_int: f64) -> Result<usize> {
    if !same_group(u.group(), v.group()) {
        return Err(Error::Shape("representations of different groups".into()));
    }
    linalg::round_count(u.character().inner(&v.character()), tol_int)
}

/// Orthonormal basis of `{T : v(g) T = T u(g) ∀g}`; each `T` is `dim v × dim u`.
pub fn intertwiner_basis(u: &UnitaryRep, v: &UnitaryRep) -> Result<Vec<CMat>> {
    if !same_group(u.group(), v.group()) {
        return Err(Error::Shape("representations of different groups".into()));
    }
    Ok(linalg::solve_intertwiners(
        u.matrices().iter().zip(v.matrices()),
        u.dim(),
        v.dim(),
        1e-8,
    ))
}

/// A complete list of pairwise inequivalent irreducible representations.
#[derive(Debug, Clone)]
pub struct IrrepTable {
    group: Arc<FiniteGroup>,
    irreps: Vec<UnitaryRep>,
    characters: Vec<Character>,
}

impl IrrepTable {
    /// Wraps already computed irreps, checking completeness and orthonormality.
    pub fn from_irreps(group: Arc<FiniteGroup>, irreps: Vec<UnitaryRep>, tol: &Tolerances) -> Result<Self> {
        let characters: Vec<Character> = irreps.iter().map(|r| r.character()).collect();
        let table = IrrepTable { group, irreps, characters };
        table.check(tol)?;
        Ok(table)
    }

    pub fn check(&self, tol: &Tolerances) -> Result<()> {
        let sum: usize = self.irreps.iter().map(|r| r.dim() * r.dim()).sum();
        if sum != self.group.order() {
            return Err(Error::CompletenessFailed {
                expected: self.group.order(),
                found: sum,
            });
        }
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = a.inner(b);
                if (got - want).abs() > tol.alg.max(1e-9) * 10.0 {
                    return Err(Error::FormulaMismatch(format!(
                        "character rows {i},{j} have inner product {got}"
                    )));
                }
            }
        }
        for r in &self.irreps {
            r.check(tol.alg)?;
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn irrep(&self, i: usize) -> &UnitaryRep {
        &self.irreps[i]
    }

    pub fn irreps(&self) -> &[UnitaryRep] {
        &self.irreps
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.characters[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim()).collect()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.irreps[i].dim()
    }

    /// Index of the trivial representation.
    pub fn trivial_index(&self) -> usize {
        self.characters
            .iter()
            .position(|c| c.values.iter().all(|z| (z - ONE).norm() < 1e-6))
            .expect("trivial representation present")
    }

    /// Multiplicity of every irrep in a representation with character `chi`.
    pub fn decompose_character(&self, chi: &Character, tol_int: f64) -> Result<Vec<usize>> {
        self.characters
            .iter()
            .map(|c| linalg::round_count(chi.inner(c), tol_int))
            .collect()
    }

    /// The irrep whose character is `chi`, if `chi` is irreducible.
    pub fn find(&self, chi: &Character, tol_int: f64) -> Option<usize> {
        let m = self.decompose_character(chi, tol_int).ok()?;
        let nonzero: Vec<usize> = (0..m.len()).filter(|&i| m[i] != 0).collect();
        match nonzero.as_slice() {
            [i] if m[*i] == 1 => Some(*i),
            _ => None,
        }
    }

    /// Index of the contragredient of irrep `i`.
    pub fn dual_index(&self, i: usize, tol_int: f64) -> usize {
        self.find(&self.characters[i].conj(), tol_int)
            .expect("conjugate of an irreducible character is irreducible")
    }

    /// The table of `source` obtained by composing every irrep with the
    /// isomorphism `phi: source → group`. Indices are preserved.
    pub fn transport(&self, source: &Arc<FiniteGroup>, phi: &[usize]) -> Result<Self> {
        let irreps = self
            .irreps
            .iter()
            .map(|r| r.transport(source, phi))
            .collect::<Result<Vec<_>>>()?;
        let characters = irreps.iter().map(|r| r.character()).collect();
        Ok(IrrepTable {
            group: source.clone(),
            irreps,
            characters,
        })
    }
}

/// Computes a complete irrep table for `group`.
pub fn irreps(group: &Arc<FiniteGroup>, seed: u64, tol: &Tolerances) -> Result<IrrepTable> {
    irreps_with_cap(group, seed, tol, DEFAULT_ORDER_CAP)
}

pub fn irreps_with_cap(
    group: &Arc<FiniteGroup>,
    seed: u64,
    tol: &Tolerances,
    cap: usize,
) -> Result<IrrepTable> {
    let n = group.order();
    if n > cap {
        return Err(Error::OrderCap { order: n, cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut found: Vec<(UnitaryRep, Character)> = Vec::new();
    let mut total = 0usize;
    for basis in split_regular(group, &mut rng, tol) {
        let piece = restrict_regular(group, &basis);
        for mats in split_generic(group, piece, &mut rng, tol, seed)? {
            let rep = UnitaryRep {
                group: group.clone(),
                dim: mats[0].nrows(),
                matrices: mats,
            };
            let chi = rep.character();
            let known = found
                .iter()
                .any(|(_, c)| linalg::round_count(c.inner(&chi), tol.int).is_ok_and(|m| m == 1));
            if !known {
                total += rep.dim() * rep.dim();
                found.push((rep, chi));
            }
        }
        if total == n {
            break;
        }
    }
    if total != n {
        return Err(Error::CompletenessFailed { expected: n, found: total });
    }

    let class_reps: Vec<usize> = group.conjugacy_classes().iter().map(|c| c[0]).collect();
    found.sort_by(|(a, ca), (b, cb)| {
        a.dim().cmp(&b.dim()).then_with(|| {
            for &g in &class_reps {
                let ord = cmp_desc(ca.values[g], cb.values[g]);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    });
    let (irreps, characters) = found.into_iter().unzip();
    let table = IrrepTable {
        group: group.clone(),
        irreps,
        characters,
    };
    table.check(tol)?;
    Ok(table)
}

/// Descending by real part, then imaginary part, with a 1e-6 dead band.
fn cmp_desc(a: C64, b: C64) -> Ordering {
    const EPS: f64 = 1e-6;
    if (a.re - b.re).abs() > EPS {
        return b.re.total_cmp(&a.re);
    }
    if (a.im - b.im).abs() > EPS {
        return b.im.total_cmp(&a.im);
    }
    Ordering::Equal
}

/// Orthonormal bases of the eigenspaces of a random self-adjoint element of
/// the commutant of the regular representation.
fn split_regular(group: &FiniteGroup, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Vec<CMat> {
    let n = group.order();
    let h = linalg::random_hermitian(n, rng);
    let mut avg = CMat::zeros(n, n);
    for g in 0..n {
        let gi = group.inv(g);
        for a in 0..n {
            let ga = group.mul(gi, a);
            for b in 0..n {
                avg[(a, b)] += h[(ga, group.mul(gi, b))];
            }
        }
    }
    avg /= C64::new(n as f64, 0.0);
    let (values, vectors) = linalg::hermitian_eigen(&avg);
    linalg::cluster(&values, tol.split)
        .into_iter()
        .map(|r| linalg::columns(&vectors, r))
        .collect()
}

/// `Q* λ(g) Q` for every g, using that `λ(g)` permutes rows.
fn restrict_regular(group: &FiniteGroup, q: &CMat) -> Vec<CMat> {
    let n = group.order();
    let qa = q.adjoint();
    (0..n)
        .map(|g| {
            let gi = group.inv(g);
            let shifted = CMat::from_fn(n, q.ncols(), |a, c| q[(group.mul(gi, a), c)]);
            &qa * shifted
        })
        .collect()
}

fn split_generic(
    group: &FiniteGroup,
    mats: Vec<CMat>,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
    seed: u64,
) -> Result<Vec<Vec<CMat>>> {
    let n = group.order() as f64;
    let d = mats[0].nrows();
    let norm: C64 = mats.iter().map(|m| m.trace() * m.trace().conj()).sum();
    if linalg::round_count(norm.re / n, tol.int)? == 1 {
        return Ok(vec![mats]);
    }
    for _ in 0..SPLIT_RETRIES {
        let h = linalg::random_hermitian(d, rng);
        let mut avg = CMat::zeros(d, d);
        for m in &mats {
            avg += m * &h * m.adjoint();
        }
        avg /= C64::new(n, 0.0);
        let (values, vectors) = linalg::hermitian_eigen(&avg);
        let clusters = linalg::cluster(&values, tol.split);
        if clusters.len() < 2 {
            continue;
        }
        let mut out = Vec::new();
        for r in clusters {
            let q = linalg::columns(&vectors, r);
            let qa = q.adjoint();
            let sub: Vec<CMat> = mats.iter().map(|m| &qa * m * &q).collect();
            out.extend(split_generic(group, sub, rng, tol, seed)?);
        }
        return Ok(out);
    }
    Err(Error::SplitFailed { seed })
}

/// Isotypic decomposition into isometries `S: H_y → H_rep` with pairwise
/// orthogonal ranges.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    /// `multiplicities[y]` for every irrep of the table.
    pub multiplicities: Vec<usize>,
    /// `isometries[y]` holds `multiplicities[y]` matrices of shape `dim(rep) × dim(y)`.
    pub isometries: Vec<Vec<CMat>>,
}

impl DecompositionResult {
    /// `max |S_i* S_j − δ_ij I|` and `|Σ S S* − I|`.
    pub fn residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        let mut total: Option<CMat> = None;
        for isos in &self.isometries {
            for (i, a) in isos.iter().enumerate() {
                for (j, b) in isos.iter().enumerate() {
                    let p = a.adjoint() * b;
                    let want = if i == j {
                        CMat::identity(p.nrows(), p.ncols())
                    } else {
                        CMat::zeros(p.nrows(), p.ncols())
                    };
                    r = r.max(linalg::max_abs_diff(&p, &want));
                }
                let proj = a * a.adjoint();
                total = Some(match total {
                    Some(t) => t + proj,
                    None => proj,
                });
            }
        }
        if let Some(t) = total {
            let id = CMat::identity(t.nrows(), t.ncols());
            r = r.max(linalg::max_abs_diff(&t, &id));
        }
        r
    }
}

pub fn decompose(rep: &UnitaryRep, table: &IrrepTable, tol: &Tolerances) -> Result<DecompositionResult> {
    let mut multiplicities = Vec::with_capacity(table.len());
    let mut isometries = Vec::with_capacity(table.len());
    let chi = rep.character();
    for (y, irrep) in table.irreps().iter().enumerate() {
        let expected = linalg::round_count(chi.inner(table.character(y)), tol.int)?;
        let basis = intertwiner_basis(irrep, rep)?;
        if basis.len() != expected {
            return Err(Error::MultiplicityMismatch {
                irrep: y,
                expected,
                found: basis.len(),
            });
        }
        let scale = C64::new((irrep.dim() as f64).sqrt(), 0.0);
        isometries.push(basis.into_iter().map(|t| t * scale).collect());
        multiplicities.push(expected);
    }
    Ok(DecompositionResult { multiplicities, isometries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutations(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap().0)
    }

    fn s4() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])
                .unwrap()
                .0,
        )
    }

    #[test]
    fn regular_rep_of_z2() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let r = UnitaryRep::regular(&z2);
        assert_eq!(r.matrix(0), &CMat::identity(2, 2));
        assert_eq!(r.matrix(1)[(0, 1)], ONE);
        assert_eq!(r.matrix(1)[(0, 0)], linalg::ZERO);
    }

    #[test]
    fn regular_character_is_delta() {
        for g in [s3(), s4(), Arc::new(FiniteGroup::cyclic(5))] {
            let chi = UnitaryRep::regular(&g).character();
            assert_eq!(chi.values[0].re, g.order() as f64);
            assert!(chi.values[1..].iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn z3_characters_are_cube_roots() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let t = irreps(&z3, 0, &tol()).unwrap();
        assert_eq!(t.dims(), vec![1, 1, 1]);
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut seen: Vec<C64> = (0..3).map(|i| t.character(i).values[1]).collect();
        seen.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        let mut want = vec![ONE, w, w * w];
        want.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        for (a, b) in seen.iter().zip(&want) {
            assert!((a - b).norm() < 1e-9);
        }
        assert_eq!(t.trivial_index(), 0);
    }

    #[test]
    fn s3_and_s4_tables() {
        let t = irreps(&s3(), 0, &tol()).unwrap();
        assert_eq!(t.dims(), vec![1, 1, 2]);
        let t = irreps(&s4(), 0, &tol()).unwrap();
        assert_eq!(t.dims(), vec![1, 1, 2, 3, 3]);
        assert_eq!(t.trivial_index(), 0);
        for r in t.irreps() {
            assert!(r.homomorphism_residual() < 1e-9);
            assert!(r.unitarity_residual() < 1e-9);
        }
    }

    #[test]
    fn trivial_group_has_one_irrep() {
        let t = irreps(&Arc::new(FiniteGroup::trivial()), 0, &tol()).unwrap();
        assert_eq!(t.dims(), vec![1]);
    }

    #[test]
    fn order_cap_is_enforced() {
        let z = Arc::new(FiniteGroup::cyclic(12));
        assert!(matches!(irreps_with_cap(&z, 0, &tol(), 10), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn mor_dim_examples() {
        let g = s3();
        let t = irreps(&g, 0, &tol()).unwrap();
        let triv = UnitaryRep::trivial(&g);
        assert_eq!(mor_dim_char(&triv, &triv, 1e-6).unwrap(), 1);
        let reg = UnitaryRep::regular(&g);
        assert_eq!(mor_dim_char(&reg, t.irrep(2), 1e-6).unwrap(), 2);
        assert_eq!(mor_dim_char(t.irrep(2), t.irrep(1), 1e-6).unwrap(), 0);
    }

    #[test]
    fn intertwiner_counts_match_characters_on_s4() {
        let g = s4();
        let t = irreps(&g, 0, &tol()).unwrap();
        for a in t.irreps() {
            for b in t.irreps() {
                let basis = intertwiner_basis(a, b).unwrap();
                assert_eq!(basis.len(), mor_dim_char(a, b, 1e-6).unwrap());
            }
        }
        // Schur: End(u) is the scalars
        let u = t.irrep(3);
        let basis = intertwiner_basis(u, u).unwrap();
        assert_eq!(basis.len(), 1);
        let m = &basis[0];
        let c = m[(0, 0)];
        assert!(linalg::max_abs_diff(m, &(CMat::identity(3, 3) * c)) < 1e-9);
    }

    #[test]
    fn averaging_intertwiner_of_regular_to_trivial() {
        let g = s3();
        let basis = intertwiner_basis(&UnitaryRep::regular(&g), &UnitaryRep::trivial(&g)).unwrap();
        assert_eq!(basis.len(), 1);
        let row = &basis[0];
        let phase = row[(0, 0)] / row[(0, 0)].norm();
        for x in 0..6 {
            assert!((row[(0, x)] / phase - C64::new(1.0 / 6f64.sqrt(), 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn decompose_regular_s3() {
        let g = s3();
        let t = irreps(&g, 0, &tol()).unwrap();
        let d = decompose(&UnitaryRep::regular(&g), &t, &tol()).unwrap();
        assert_eq!(d.multiplicities, vec![1, 1, 2]);
        assert!(d.residual() < 1e-9);
        let d = decompose(&UnitaryRep::trivial(&g), &t, &tol()).unwrap();
        assert_eq!(d.multiplicities, vec![1, 0, 0]);
    }

    #[test]
    fn decompose_direct_sum_has_orthogonal_copies() {
        let g = s3();
        let t = irreps(&g, 0, &tol()).unwrap();
        let u = t.irrep(2);
        let uu = u.direct_sum(u).unwrap();
        let d = decompose(&uu, &t, &tol()).unwrap();
        assert_eq!(d.multiplicities[2], 2);
        let s = &d.isometries[2];
        assert!(linalg::max_abs(&(s[0].adjoint() * &s[1])) < 1e-9);
        assert!(d.residual() < 1e-9);
    }

    #[test]
    fn transport_examples() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let t = irreps(&z3, 0, &tol()).unwrap();
        let id: Vec<usize> = (0..3).collect();
        let inv: Vec<usize> = (0..3).map(|x| z3.inv(x)).collect();
        for i in 0..3 {
            let u = t.irrep(i);
            assert_eq!(u.transport(&z3, &id).unwrap().character(), u.character());
            let w = u.transport(&z3, &inv).unwrap().character();
            assert!(w.max_diff(&u.character().conj()) < 1e-12);
        }
        let bad = vec![0, 1, 1];
        assert!(t.irrep(1).transport(&z3, &bad).is_err());
        let not_hom = vec![0, 2, 1, 3];
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        let t4 = irreps(&z4, 0, &tol()).unwrap();
        assert!(matches!(
            t4.irrep(1).transport(&z4, &[0, 1, 3, 2]),
            Err(Error::NotHomomorphism { .. })
        ));
        let _ = not_hom;
    }

    #[test]
    fn contragredient_and_restriction() {
        let g = s3();
        let t = irreps(&g, 0, &tol()).unwrap();
        // permutation-type (real) reps are self-conjugate
        let reg = UnitaryRep::regular(&g);
        assert_eq!(reg.contragredient().character(), reg.character());
        // Res of the 2-dim irrep to Z3 is ω ⊕ ω²
        let z3 = crate::group::Subgroup::closure(&g, &[3]).unwrap();
        assert_eq!(z3.order(), 3);
        let res = t.irrep(2).restrict(&z3).unwrap();
        let tz = irreps(z3.view(), 0, &tol()).unwrap();
        let m = tz.decompose_character(&res.character(), 1e-6).unwrap();
        assert_eq!(m, vec![0, 1, 1]);
        let triv = UnitaryRep::trivial(&g).restrict(&z3).unwrap();
        assert_eq!(tz.find(&triv.character(), 1e-6), Some(tz.trivial_index()));
        // contragredient is involutive up to equivalence
        for u in t.irreps() {
            let cc = u.contragredient().contragredient();
            assert!(mor_dim_char(u, &cc, 1e-6).unwrap() >= 1);
        }
    }

    #[test]
    fn seeds_change_bases_not_characters() {
        let g = s4();
        let a = irreps(&g, 0, &tol()).unwrap();
        let b = irreps(&g, 17, &tol()).unwrap();
        for i in 0..a.len() {
            assert!(a.character(i).max_diff(b.character(i)) < 1e-9);
        }
    }
}

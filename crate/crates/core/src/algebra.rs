//! The finite-dimensional algebra `C(𝔾) = Γ ⋉ C(G)`.
//!
//! An element is stored in the basis `u_γ δ_g` as a dense table of
//! `|Γ|·|G|` coefficients, flat index `γ·|G| + g`. The covariance relation is
//! `u_μ* F u_μ = F∘α_μ`, giving
//! `(u_γ δ_a)(u_μ δ_b) = [α_μ(b) = a] u_{γμ} δ_b`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::matched_pair::MatchedPair;

/// Element of `C(𝔾)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    n_gamma: usize,
    n_g: usize,
    coeffs: Vec<C64>,
}

impl AlgebraElement {
    pub fn zero(n_gamma: usize, n_g: usize) -> Self {
        AlgebraElement {
            n_gamma,
            n_g,
            coeffs: vec![ZERO; n_gamma * n_g],
        }
    }

    pub fn from_coeffs(n_gamma: usize, n_g: usize, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != n_gamma * n_g {
            return Err(Error::Shape(format!(
                "{} coefficients for a {}x{} table",
                coeffs.len(),
                n_gamma,
                n_g
            )));
        }
        Ok(AlgebraElement { n_gamma, n_g, coeffs })
    }

    pub fn n_gamma(&self) -> usize {
        self.n_gamma
    }

    pub fn n_g(&self) -> usize {
        self.n_g
    }

    #[inline]
    pub fn get(&self, gamma: usize, g: usize) -> C64 {
        self.coeffs[gamma * self.n_g + g]
    }

    #[inline]
    pub fn set(&mut self, gamma: usize, g: usize, z: C64) {
        self.coeffs[gamma * self.n_g + g] = z;
    }

    #[inline]
    pub fn add_at(&mut self, gamma: usize, g: usize, z: C64) {
        self.coeffs[gamma * self.n_g + g] += z;
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= z);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Nonzero coefficients as `(γ, g, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(i, z)| (i / self.n_g, i % self.n_g, *z))
    }

    /// Sparse form `{γ: {g: [re, im]}}` keyed by element labels.
    pub fn to_sparse(&self, gamma_label: impl Fn(usize) -> String, g_label: impl Fn(usize) -> String) -> SparseElement {
        let mut out: SparseElement = BTreeMap::new();
        for (c, g, z) in self.nonzeros() {
            out.entry(gamma_label(c)).or_default().insert(g_label(g), [z.re, z.im]);
        }
        out
    }
}

/// Serialized algebra element.
pub type SparseElement = BTreeMap<String, BTreeMap<String, [f64; 2]>>;

/// Element of `C(𝔾)^{⊗ legs}`, dense, leg 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    legs: usize,
    n: usize,
    coeffs: Vec<C64>,
}

impl Tensor {
    pub fn zero(legs: usize, n: usize) -> Self {
        Tensor {
            legs,
            n,
            coeffs: vec![ZERO; n.pow(legs as u32)],
        }
    }

    pub fn from_element(a: &AlgebraElement) -> Self {
        Tensor {
            legs: 1,
            n: a.coeffs.len(),
            coeffs: a.coeffs.clone(),
        }
    }

    /// `a ⊗ b`
    pub fn outer(a: &Tensor, b: &Tensor) -> Self {
        assert_eq!(a.n, b.n);
        let mut coeffs = Vec::with_capacity(a.coeffs.len() * b.coeffs.len());
        for x in &a.coeffs {
            for y in &b.coeffs {
                coeffs.push(x * y);
            }
        }
        Tensor {
            legs: a.legs + b.legs,
            n: a.n,
            coeffs,
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn max_diff(&self, other: &Tensor) -> f64 {
        if self.legs != other.legs {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut d = vec![0; self.legs];
        for k in (0..self.legs).rev() {
            d[k] = flat % self.n;
            flat /= self.n;
        }
        d
    }

    fn flat(n: usize, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * n + d)
    }

    fn nonzeros(&self) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|(_, z)| *z != ZERO)
    }

    pub fn into_element(self, n_gamma: usize, n_g: usize) -> Result<AlgebraElement> {
        if self.legs != 1 {
            return Err(Error::Shape(format!("tensor has {} legs, expected 1", self.legs)));
        }
        AlgebraElement::from_coeffs(n_gamma, n_g, self.coeffs)
    }
}

/// Operations of `C(𝔾)` that depend on the matched pair.
#[derive(Debug, Clone)]
pub struct Algebra {
    mp: Arc<MatchedPair>,
    n_gamma: usize,
    n_g: usize,
}

impl Algebra {
    pub fn new(mp: Arc<MatchedPair>) -> Self {
        let n_gamma = mp.gamma().order();
        let n_g = mp.g().order();
        Algebra { mp, n_gamma, n_g }
    }

    pub fn pair(&self) -> &Arc<MatchedPair> {
        &self.mp
    }

    /// Dimension `|Γ|·|G|`.
    pub fn dim(&self) -> usize {
        self.n_gamma * self.n_g
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.n_gamma, self.n_g)
    }

    pub fn unit(&self) -> AlgebraElement {
        self.u(0)
    }

    /// `u_γ`
    pub fn u(&self, gamma: usize) -> AlgebraElement {
        let mut a = self.zero();
        for g in 0..self.n_g {
            a.set(gamma, g, ONE);
        }
        a
    }

    /// `u_γ δ_g`
    pub fn basis(&self, gamma: usize, g: usize) -> AlgebraElement {
        let mut a = self.zero();
        a.set(gamma, g, ONE);
        a
    }

    /// The indicator of `G_{r,s}` as an element of `C(G) ⊂ C(𝔾)`.
    pub fn v(&self, r: usize, s: usize) -> AlgebraElement {
        let mut a = self.zero();
        for g in 0..self.n_g {
            if self.mp.beta(g, r) == s {
                a.set(0, g, ONE);
            }
        }
        a
    }

    /// `u_γ F` for a function `F` on `G`.
    pub fn u_times(&self, gamma: usize, f: &[C64]) -> AlgebraElement {
        let mut a = self.zero();
        for (g, &z) in f.iter().enumerate() {
            a.set(gamma, g, z);
        }
        a
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement {
            n_gamma: self.n_gamma,
            n_g: self.n_g,
            coeffs: (0..self.dim()).map(|_| linalg::complex_gaussian(rng)).collect(),
        }
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for mu in 0..self.n_gamma {
            let bmu = &b.coeffs[mu * self.n_g..(mu + 1) * self.n_g];
            if bmu.iter().all(|z| *z == ZERO) {
                continue;
            }
            for gamma in 0..self.n_gamma {
                let target = self.mp.gamma().mul(gamma, mu);
                for (bi, &bz) in bmu.iter().enumerate() {
                    if bz == ZERO {
                        continue;
                    }
                    let az = a.get(gamma, self.mp.alpha(mu, bi));
                    if az != ZERO {
                        out.add_at(target, bi, az * bz);
                    }
                }
            }
        }
        out
    }

    /// `(u_γ δ_g)* = u_{γ⁻¹} δ_{α_γ(g)}`
    pub fn adjoint(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (gamma, g, z) in a.nonzeros() {
            out.add_at(self.mp.gamma().inv(gamma), self.mp.alpha(gamma, g), z.conj());
        }
        out
    }

    /// `h(u_γ F) = δ_{γ,e} (1/|G|) Σ_g F(g)`
    pub fn haar(&self, a: &AlgebraElement) -> C64 {
        let s: C64 = (0..self.n_g).map(|g| a.get(0, g)).sum();
        s / self.n_g as f64
    }

    /// `ε(u_γ δ_g) = [g = e]`
    pub fn counit(&self, a: &AlgebraElement) -> C64 {
        (0..self.n_gamma).map(|c| a.get(c, 0)).sum()
    }

    /// `sqrt(h(a*a))`
    pub fn l2_norm(&self, a: &AlgebraElement) -> f64 {
        let s: f64 = a.coeffs.iter().map(|z| z.norm_sqr()).sum();
        (s / self.n_g as f64).sqrt()
    }

    /// Matrix of left multiplication by `a` in the orthonormal basis
    /// `√|G| u_γ δ_g` of the GNS space.
    pub fn left_mult_matrix(&self, a: &AlgebraElement) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for mu in 0..self.n_gamma {
            for b in 0..self.n_g {
                let col = mu * self.n_g + b;
                for gamma in 0..self.n_gamma {
                    let z = a.get(gamma, self.mp.alpha(mu, b));
                    if z != ZERO {
                        let row = self.mp.gamma().mul(gamma, mu) * self.n_g + b;
                        m[(row, col)] += z;
                    }
                }
            }
        }
        m
    }

    pub fn operator_norm(&self, a: &AlgebraElement) -> f64 {
        linalg::spectral_norm(&self.left_mult_matrix(a))
    }

    /// `Δ(u_γ δ_g) = Σ_a u_γ δ_a ⊗ u_{γ·a} δ_{a⁻¹g}`
    pub fn comultiply(&self, a: &AlgebraElement) -> Tensor {
        self.comultiply_leg(&Tensor::from_element(a), 0)
    }

    /// Applies `Δ` to one leg, producing a tensor with one more leg.
    pub fn comultiply_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        let g = self.mp.g();
        let mut out = Tensor::zero(t.legs + 1, t.n);
        for (flat, z) in t.nonzeros() {
            let d = t.digits(flat);
            let (gamma, x) = (d[leg] / self.n_g, d[leg] % self.n_g);
            let mut nd = Vec::with_capacity(t.legs + 1);
            nd.extend_from_slice(&d[..leg]);
            nd.push(0);
            nd.push(0);
            nd.extend_from_slice(&d[leg + 1..]);
            for a in 0..self.n_g {
                nd[leg] = gamma * self.n_g + a;
                nd[leg + 1] = self.mp.beta(a, gamma) * self.n_g + g.mul(g.inv(a), x);
                out.coeffs[Tensor::flat(t.n, &nd)] += z;
            }
        }
        out
    }

    /// Applies a linear functional to one leg.
    fn slice_leg(&self, t: &Tensor, leg: usize, f: impl Fn(usize, usize) -> C64) -> Tensor {
        let mut out = Tensor::zero(t.legs - 1, t.n);
        for (flat, z) in t.nonzeros() {
            let mut d = t.digits(flat);
            let w = f(d[leg] / self.n_g, d[leg] % self.n_g);
            if w == ZERO {
                continue;
            }
            d.remove(leg);
            out.coeffs[Tensor::flat(t.n, &d)] += z * w;
        }
        out
    }

    pub fn haar_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        let w = C64::new(1.0 / self.n_g as f64, 0.0);
        self.slice_leg(t, leg, |gamma, _| if gamma == 0 { w } else { ZERO })
    }

    pub fn counit_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        self.slice_leg(t, leg, |_, g| if g == 0 { ONE } else { ZERO })
    }

    /// Legwise product in `C(𝔾)^{⊗ legs}`.
    pub fn mul_tensor(&self, a: &Tensor, b: &Tensor) -> Tensor {
        assert_eq!(a.legs, b.legs);
        let mut out = Tensor::zero(a.legs, a.n);
        let bnz: Vec<(Vec<usize>, C64)> = b.nonzeros().map(|(f, z)| (b.digits(f), z)).collect();
        let mut nd = vec![0; a.legs];
        for (fa, za) in a.nonzeros() {
            let da = a.digits(fa);
            'pairs: for (db, zb) in &bnz {
                for k in 0..a.legs {
                    let (gamma, x) = (da[k] / self.n_g, da[k] % self.n_g);
                    let (mu, y) = (db[k] / self.n_g, db[k] % self.n_g);
                    if self.mp.alpha(mu, y) != x {
                        continue 'pairs;
                    }
                    nd[k] = self.mp.gamma().mul(gamma, mu) * self.n_g + y;
                }
                out.coeffs[Tensor::flat(a.n, &nd)] += za * zb;
            }
        }
        out
    }

    pub fn tensor2(&self, a: &AlgebraElement, b: &AlgebraElement) -> Tensor {
        Tensor::outer(&Tensor::from_element(a), &Tensor::from_element(b))
    }

    /// `max |Δ(b)| residuals` over the spanning set `u_γ δ_g` of
    /// coassociativity, both counit laws and both Haar invariances.
    pub fn hopf_residuals(&self) -> HopfResiduals {
        let mut res = HopfResiduals::default();
        for gamma in 0..self.n_gamma {
            for g in 0..self.n_g {
                let b = self.basis(gamma, g);
                let d = self.comultiply(&b);
                let left = self.comultiply_leg(&d, 0);
                let right = self.comultiply_leg(&d, 1);
                res.coassociativity = res.coassociativity.max(left.max_diff(&right));
                let bt = Tensor::from_element(&b);
                res.counit = res
                    .counit
                    .max(self.counit_leg(&d, 0).max_diff(&bt))
                    .max(self.counit_leg(&d, 1).max_diff(&bt));
                let hb = self.haar(&b);
                let want = Tensor::from_element(&self.unit().scale(hb));
                res.haar_invariance = res
                    .haar_invariance
                    .max(self.haar_leg(&d, 0).max_diff(&want))
                    .max(self.haar_leg(&d, 1).max_diff(&want));
            }
        }
        res
    }

    /// `max |Δ(ab) − Δ(a)Δ(b)|` over the given pairs.
    pub fn multiplicativity_residual(&self, pairs: &[(AlgebraElement, AlgebraElement)]) -> f64 {
        pairs
            .iter()
            .map(|(a, b)| {
                let lhs = self.comultiply(&self.mul(a, b));
                let rhs = self.mul_tensor(&self.comultiply(a), &self.comultiply(b));
                lhs.max_diff(&rhs)
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `(v_{rs})_{r,s ∈ γ·G}` from a magic unitary, over every orbit.
    pub fn magic_unitary_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        let one = self.unit();
        for rep in self.mp.orbit_representatives() {
            let orbit = self.mp.orbit(rep);
            for &a in &orbit {
                let mut row = self.zero();
                let mut col = self.zero();
                for &b in &orbit {
                    let v = self.v(a, b);
                    r = r.max(self.mul(&v, &v).max_diff(&v));
                    r = r.max(self.adjoint(&v).max_diff(&v));
                    row.add_assign(&v);
                    col.add_assign(&self.v(b, a));
                }
                r = r.max(row.max_diff(&one)).max(col.max_diff(&one));
            }
        }
        r
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct HopfResiduals {
    pub coassociativity: f64,
    pub counit: f64,
    pub haar_invariance: f64,
}

impl HopfResiduals {
    pub fn max(&self) -> f64 {
        self.coassociativity.max(self.counit).max(self.haar_invariance)
    }
}

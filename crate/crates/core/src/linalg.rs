//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let m = random_matrix(d, d, rng);
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending with
/// eigenvectors as matching columns.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Splits sorted values into maximal runs whose consecutive gaps are `<= gap`.
pub fn cluster(sorted: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > gap {
            if start < i {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

pub fn columns(m: &CMat, range: std::ops::Range<usize>) -> CMat {
    m.columns(range.start, range.len()).into_owned()
}

/// Largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Orthonormal basis (Frobenius inner product) of
/// `{T ∈ ℂ^{rows×cols} : B T = T A for every (A, B)}`, computed as the null
/// space of the stacked system `(I ⊗ B − Aᵀ ⊗ I) vec(T) = 0`.
pub fn solve_intertwiners<'a, I>(pairs: I, cols: usize, rows: usize, tol: f64) -> Vec<CMat>
where
    I: IntoIterator<Item = (&'a CMat, &'a CMat)>,
{
    let m = rows * cols;
    if m == 0 {
        return Vec::new();
    }
    let mut gram = CMat::zeros(m, m);
    let id_rows = CMat::identity(rows, rows);
    let id_cols = CMat::identity(cols, cols);
    let mut count = 0usize;
    for (a, b) in pairs {
        let k = id_cols.kronecker(b) - a.transpose().kronecker(&id_rows);
        gram += k.adjoint() * &k;
        count += 1;
    }
    if count == 0 {
        return (0..m)
            .map(|i| {
                let mut t = CMat::zeros(rows, cols);
                t[(i % rows, i / rows)] = ONE;
                t
            })
            .collect();
    }
    let (values, vectors) = hermitian_eigen(&gram);
    let scale = values.last().copied().unwrap_or(0.0).max(1.0);
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < tol * scale)
        .map(|(c, _)| CMat::from_fn(rows, cols, |r, k| vectors[(k * rows + r, c)]))
        .collect()
}

/// Rounds to the nearest non-negative integer, failing when the residue is at least `tol`.
pub fn round_count(value: f64, tol: f64) -> crate::Result<usize> {
    let r = value.round();
    if (value - r).abs() >= tol || r < 0.0 {
        return Err(crate::Error::NonIntegral { value, tol });
    }
    Ok(r as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn cluster_runs() {
        let v = [0.0, 1e-9, 1.0, 2.0, 2.0 + 1e-10];
        let c = cluster(&v, 1e-7);
        assert_eq!(c, vec![0..2, 2..3, 3..5]);
    }

    #[test]
    fn eigen_reconstructs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(5, &mut rng);
        let (vals, vecs) = hermitian_eigen(&h);
        let d = CMat::from_diagonal(&nalgebra::DVector::from_iterator(5, vals.iter().map(|&x| C64::new(x, 0.0))));
        let rebuilt = &vecs * d * vecs.adjoint();
        assert!(max_abs_diff(&rebuilt, &h) < 1e-10);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn commuting_with_nothing_is_everything() {
        let a = CMat::identity(2, 2);
        let sols = solve_intertwiners([(&a, &a)], 2, 2, 1e-9);
        assert_eq!(sols.len(), 4);
    }

    #[test]
    fn rounding() {
        assert_eq!(round_count(2.0000001, 1e-6).unwrap(), 2);
        assert!(round_count(1.5, 1e-6).is_err());
    }
}

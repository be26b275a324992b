use nalgebra::{DMatrix, RealField, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Scalar};

use super::assembly::KernelMatrix;

/// Weighted asymmetry above which [`spectrum`] refuses to symmetrize.
pub const SYMMETRY_LIMIT: f64 = 1e-8;

/// `max_{ij} |⟨A e_i, e_j⟩ - ⟨e_i, A e_j⟩| / max_{ij} |⟨A e_i, e_j⟩|` in the
/// inner product `⟨u, v⟩ = Σ w_i u_i v_i / φ_i`.
pub fn selfadjointness_check<T: Scalar>(m: &KernelMatrix<T>) -> T {
    let d: Vec<T> = m.weights().iter().zip(m.field()).map(|(&w, &f)| w / f).collect();
    let a = m.entries();
    let n = m.len();
    let mut scale = T::zero();
    let mut gap = T::zero();
    for i in 0..n {
        for j in 0..n {
            let ij = d[j] * a[(j, i)];
            scale = scale.max(ij.abs());
            if j > i {
                gap = gap.max((ij - d[i] * a[(i, j)]).abs());
            }
        }
    }
    if scale == T::zero() {
        T::zero()
    } else {
        gap / scale
    }
}

/// Eigenvalues in ascending order, from the symmetric matrix
/// `D^{1/2} A D^{-1/2}` with `D = diag(w_i / φ_i)`.
pub fn spectrum<T: Scalar + RealField>(m: &KernelMatrix<T>) -> Result<Vec<T>> {
    let asym = selfadjointness_check(m);
    if !(asym <= lit(SYMMETRY_LIMIT)) {
        return Err(Error::Asymmetric(to_f64(asym)));
    }
    let n = m.len();
    let s: Vec<T> = m.weights().iter().zip(m.field()).map(|(&w, &f)| num_traits::Float::sqrt(w / f)).collect();
    let a = m.entries();
    let half = lit::<T>(0.5);
    let b = DMatrix::<T>::from_fn(n, n, |i, j| half * (s[i] * a[(i, j)] / s[j] + s[j] * a[(j, i)] / s[i]));
    let mut eig = SymmetricEigen::new(b).eigenvalues.iter().copied().collect::<Vec<T>>();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eig)
}

/// Largest relative change among the top `count` eigenvalues between two
/// resolutions, relative to the largest magnitude of the finer spectrum.
pub fn spectral_drift<T: Scalar>(coarse: &[T], fine: &[T], count: usize) -> T {
    let count = count.min(coarse.len()).min(fine.len());
    let scale = fine.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() || count == 0 {
        return T::zero();
    }
    (1..=count).fold(T::zero(), |m, i| m.max((coarse[coarse.len() - i] - fine[fine.len() - i]).abs())) / scale
}

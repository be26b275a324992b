use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypcore::default_tolerance;
use crate::oracle::{gauss_legendre, graded_breaks, integrate_1d_on, QuadratureSpec, XiOrder};
use crate::scalar::{from_i64, from_usize, lit, to_f64, Scalar};
use crate::xi1::{xi1_series, Normalization};
use crate::xi2::xi2_series;

use super::domain::{Convention, KernelDomain};
use super::field::RadialField;

/// Relative tolerance of the diagonal integrals.
const DIAGONAL_TOLERANCE: f64 = 1e-12;
/// Geometric grading levels on each side of the diagonal: rank-1 kernels
/// diverge logarithmically there, rank-2 kernels stay bounded with a kink.
const DIAGONAL_GRADING: [u32; 2] = [14, 3];
const MIN_NODES: usize = 8;

/// `Z_N(r, ρ) = 2N Ξ_N(min/max) / max(r, ρ)` from the series evaluators.
pub fn z_eval<T: Scalar>(order: XiOrder, r: T, rho: T, norm: &Normalization<T>) -> Result<T> {
    if !(r >= T::zero() && rho >= T::zero()) {
        return Err(Error::Domain(format!("radii must be non-negative, got r = {r:?}, rho = {rho:?}")));
    }
    if r == rho {
        return Err(if r == T::zero() { Error::Undefined } else { Error::SingularDiagonal(to_f64(r)) });
    }
    let (lo, hi) = if r < rho { (r, rho) } else { (rho, r) };
    let x = lo / hi;
    let tol = default_tolerance::<T>();
    let xi = match order {
        XiOrder::Rank1(k) => xi1_series(k, x, tol, norm)?.value,
        XiOrder::Rank2(o) => xi2_series(o, x, tol)?.value * norm.scale_for_rank(2)?,
    };
    Ok(from_i64::<T>(2 * order.rank() as i64) * xi / hi)
}

/// Dense Nyström discretization of a partial relaxation operator.
///
/// With mesh nodes `r_i` and weights `w_i` (which include the convention's
/// constant and radial measure) the matrix is symmetric in
/// `⟨u, v⟩ = Σ w_i u_i v_i / φ(r_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix<T: Scalar> {
    domain: KernelDomain<T>,
    order: XiOrder,
    nodes: Vec<T>,
    weights: Vec<T>,
    field: Vec<T>,
    entries: DMatrix<T>,
    tolerance: T,
}

impl<T: Scalar> KernelMatrix<T> {
    /// Builds a matrix from its parts; lengths must agree.
    pub fn from_parts(
        domain: KernelDomain<T>,
        order: XiOrder,
        nodes: Vec<T>,
        weights: Vec<T>,
        field: Vec<T>,
        entries: DMatrix<T>,
        tolerance: T,
    ) -> Result<Self> {
        let n = nodes.len();
        if weights.len() != n || field.len() != n || entries.nrows() != n || entries.ncols() != n {
            return Err(Error::Parameter("kernel matrix parts have inconsistent sizes".into()));
        }
        if order.rank() != domain.rank() {
            return Err(Error::Parameter(format!("order {order} does not match domain rank {}", domain.rank())));
        }
        Ok(Self { domain, order, nodes, weights, field, entries, tolerance })
    }

    pub fn domain(&self) -> &KernelDomain<T> {
        &self.domain
    }

    pub fn order(&self) -> XiOrder {
        self.order
    }

    pub fn rank(&self) -> u32 {
        self.domain.rank()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `φ(r_i)`.
    pub fn field(&self) -> &[T] {
        &self.field
    }

    pub fn entries(&self) -> &DMatrix<T> {
        &self.entries
    }

    /// Relative accuracy the diagonal integrals were computed to.
    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    /// Matrix-vector product.
    pub fn apply(&self, u: &[T]) -> Result<Vec<T>> {
        if u.len() != self.len() {
            return Err(Error::Parameter(format!("vector length {} does not match {} nodes", u.len(), self.len())));
        }
        Ok((0..self.len())
            .map(|i| (0..self.len()).fold(T::zero(), |acc, j| acc + self.entries[(i, j)] * u[j]))
            .collect())
    }

    /// `max_i |(M u)_i| / max_{ij} |M_ij|` for `u ≡ 1`.
    pub fn constant_vector_residual(&self) -> T {
        let ones = vec![T::one(); self.len()];
        let mu = self.apply(&ones).expect("matching length");
        let scale = self.entries.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if scale == T::zero() {
            return T::zero();
        }
        mu.iter().fold(T::zero(), |m, v| m.max(v.abs())) / scale
    }
}

/// Number of Gauss nodes per panel: the divisor of `n` closest to 8 within
/// `[4, 16]`, else a single panel.
fn panel_order(n: usize) -> usize {
    (4..=16).filter(|p| n % p == 0).min_by_key(|&p| (p as i64 - 8).abs()).unwrap_or(n)
}

/// Composite Gauss–Legendre nodes and plain weights on `[a, b]`.
pub(crate) fn composite_mesh<T: Scalar>(a: T, b: T, n: usize) -> (Vec<T>, Vec<T>) {
    let p = panel_order(n);
    let panels = n / p;
    let (x, w) = gauss_legendre::<T>(p);
    let h = (b - a) / from_usize(panels);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for m in 0..panels {
        let left = a + h * from_usize(m);
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(left + h * (*xi + T::one()) * lit(0.5));
            weights.push(h * *wi * lit(0.5));
        }
    }
    (nodes, weights)
}

fn breaks_around<T: Scalar>(a: T, c: T, b: T, levels: u32) -> Vec<T> {
    let mut left: Vec<T> = graded_breaks(a, c, levels).into_iter().map(|t| a + c - t).rev().collect();
    left.pop();
    left.extend(graded_breaks(c, b, levels));
    left
}

/// Nyström matrix of
/// `u ↦ c ∫_{R₀}^{R} ρ^p [u(r)φ(ρ)Z^0(r,ρ) - u(ρ)φ(r)Z^k(r,ρ)] dρ`
/// with constant `c` and power `p` from the domain's [`Convention`].
///
/// Off-diagonal entries are `-φ_i w_j Z^k_ij`. The logarithmic diagonal
/// singularity is handled by subtracting `u(r_i)` under the integral: the
/// diagonal entry is `q_i - φ_i (G_i - Σ_{j≠i} w_j Z^k_ij)` with
/// `q_i = ∫ cρ^p φ Z^0(r_i, ·)` and `G_i = ∫ cρ^p Z^k(r_i, ·)` computed by
/// adaptive quadrature graded toward `r_i`.
pub fn assemble_operator<T: Scalar>(
    domain: &KernelDomain<T>,
    order: XiOrder,
    field: &RadialField<T>,
    n_nodes: usize,
    norm: &Normalization<T>,
) -> Result<KernelMatrix<T>> {
    if n_nodes < MIN_NODES {
        return Err(Error::Parameter(format!("need at least {MIN_NODES} nodes, got {n_nodes}")));
    }
    if order.rank() != domain.rank() {
        return Err(Error::Parameter(format!("order {order} does not match domain rank {}", domain.rank())));
    }
    norm.scale_for_rank(domain.rank())?;
    field.validate(domain)?;
    let rank = domain.rank();
    let convention: Convention = domain.convention();
    let c = convention.constant::<T>(rank);
    let p = convention.measure_power(rank) as i32;
    let measure = move |rho: T| c * rho.powi(p);

    let (nodes, plain) = composite_mesh(domain.inner(), domain.outer(), n_nodes);
    let weights: Vec<T> = nodes.iter().zip(&plain).map(|(&r, &w)| w * measure(r)).collect();
    let phi: Vec<T> = nodes.iter().map(|&r| field.eval(r)).collect();
    let zero_order = order.zero_of_rank();

    // Upper triangle of Z^k, rows in parallel.
    let rows: Vec<Vec<T>> = (0..n_nodes)
        .into_par_iter()
        .map(|i| ((i + 1)..n_nodes).map(|j| z_eval(order, nodes[i], nodes[j], norm)).collect::<Result<Vec<T>>>())
        .collect::<Result<_>>()?;
    let mut z = DMatrix::<T>::zeros(n_nodes, n_nodes);
    for (i, row) in rows.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            let j = i + 1 + off;
            z[(i, j)] = v;
            z[(j, i)] = v;
        }
    }

    let spec = QuadratureSpec::new(12, 1, lit(DIAGONAL_TOLERANCE), 30)?;
    let diagonal: Vec<(T, T)> = (0..n_nodes)
        .into_par_iter()
        .map(|i| {
            let r = nodes[i];
            let breaks = breaks_around(domain.inner(), r, domain.outer(), DIAGONAL_GRADING[rank as usize - 1]);
            let mut failure = None;
            let mut kernel = |o: XiOrder, rho: T| match z_eval(o, r, rho, norm) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    T::nan()
                }
            };
            let q = integrate_1d_on(|rho| measure(rho) * field.eval(rho) * kernel(zero_order, rho), &breaks, &spec)?;
            let g = if zero_order == order && matches!(field, RadialField::Constant(_)) {
                // q = φ G when the field is constant and k = 0.
                q.scaled(T::one() / phi[i])
            } else {
                integrate_1d_on(|rho| measure(rho) * kernel(order, rho), &breaks, &spec)?
            };
            if let Some(e) = failure {
                return Err(e);
            }
            Ok((q.value, g.value))
        })
        .collect::<Result<_>>()?;

    let mut entries = DMatrix::<T>::zeros(n_nodes, n_nodes);
    for i in 0..n_nodes {
        let mut off_sum = T::zero();
        for j in 0..n_nodes {
            if i != j {
                let wz = weights[j] * z[(i, j)];
                entries[(i, j)] = -phi[i] * wz;
                off_sum = off_sum + wz;
            }
        }
        let (q, g) = diagonal[i];
        entries[(i, i)] = q - phi[i] * (g - off_sum);
    }
    KernelMatrix::from_parts(*domain, order, nodes, weights, phi, entries, lit(DIAGONAL_TOLERANCE))
}

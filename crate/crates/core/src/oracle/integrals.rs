use super::order::{CylindricalParams, XiOrder};
use super::quadrature::{graded_breaks, grading_levels, integrate_1d_on, integrate_2d_on, QuadratureSpec, TensorIntegrand};
use crate::error::{Error, Result};
use crate::hypcore::EvalResult;
use crate::scalar::{lit, Scalar};

/// `cos(kθ)` from `cos θ` by the Chebyshev recurrence.
pub(crate) fn cos_multiple<T: Scalar>(k: u32, c: T) -> T {
    match k {
        0 => T::one(),
        1 => c,
        _ => {
            let two_c = c + c;
            let (mut prev, mut cur) = (T::one(), c);
            for _ in 1..k {
                let next = two_c * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Breakpoints on `[0, π]`, graded toward the end where a peak of relative
/// width `width` sits (`at_zero` selects θ = 0, otherwise θ = π).
fn angle_breaks<T: Scalar>(width: T, at_zero: bool) -> Vec<T> {
    if width >= lit(0.5) {
        return vec![T::zero(), T::PI()];
    }
    let levels = grading_levels(width);
    let b = graded_breaks(T::zero(), T::PI(), levels);
    if at_zero {
        b
    } else {
        b.iter().rev().map(|&t| T::PI() - t).collect()
    }
}

/// Direct quadrature of the defining integral
/// `Ξ_N^k(x) = (1/2N) ∫_{[0,π]^N} Π cos(k_m θ_m) / sqrt(1 + x² - (2x/N) Σ cos θ_l) dθ`.
///
/// Accepts `-1 < x < 1`; negative arguments feed the parity checks.
pub fn xi_direct<T: Scalar>(order: XiOrder, x: T, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    if !(x.abs() < T::one()) {
        return Err(Error::Domain(format!("defining integral needs |x| < 1, got {x:?}")));
    }
    // 1 + x² - 2x cos θ = (1 - |x|)² + 4|x| t, with t = sin²(θ/2) for x ≥ 0 and
    // cos²(θ/2) for x < 0; this form has no cancellation near the peak.
    let ax = x.abs();
    let gap = (T::one() - ax) * (T::one() - ax);
    let positive = x >= T::zero();
    let half_angle = move |theta: T| {
        let h = theta * lit(0.5);
        if positive {
            let s = h.sin();
            s * s
        } else {
            let c = h.cos();
            c * c
        }
    };
    let breaks = angle_breaks(T::one() - ax, positive);
    match order {
        XiOrder::Rank1(k) => {
            let four_ax = lit::<T>(4.0) * ax;
            let f = |theta: T| cos_multiple(k, theta.cos()) / (gap + four_ax * half_angle(theta)).sqrt();
            Ok(integrate_1d_on(f, &breaks, spec)?.scaled(lit(0.5)))
        }
        XiOrder::Rank2(o) => {
            let integrand = ProductKernel { k: [o.k1(), o.k2()], gap, coupling: lit::<T>(2.0) * ax, half_angle };
            Ok(integrate_2d_on(integrand, &breaks, &breaks, spec)?.scaled(lit(0.25)))
        }
    }
}

/// `Π cos(k_i θ_i) / sqrt(gap + coupling (t(θ₁) + t(θ₂)))` with per-axis precompute.
struct ProductKernel<T, H> {
    k: [u32; 2],
    gap: T,
    coupling: T,
    half_angle: H,
}

impl<T: Scalar, H: FnMut(T) -> T> TensorIntegrand<T> for ProductKernel<T, H> {
    type Axis = (T, T);

    fn axis_x(&mut self, theta: T) -> (T, T) {
        (cos_multiple(self.k[0], theta.cos()), (self.half_angle)(theta))
    }

    fn axis_y(&mut self, theta: T) -> (T, T) {
        (cos_multiple(self.k[1], theta.cos()), (self.half_angle)(theta))
    }

    fn eval(&mut self, a: &(T, T), b: &(T, T)) -> T {
        a.0 * b.0 / (self.gap + self.coupling * (a.1 + b.1)).sqrt()
    }
}

/// Direct quadrature of the kernel
/// `Z_N^k(r, ρ) = ∫_{[0,π]^N} Π cos(k_m θ_m) / sqrt(r² + ρ² - (2rρ/N) Σ cos θ_l) dθ`.
pub fn z_direct<T: Scalar>(order: XiOrder, r: T, rho: T, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    if !(r >= T::zero()) || !(rho >= T::zero()) || !r.is_finite() || !rho.is_finite() {
        return Err(Error::Domain(format!("radii must be finite and non-negative, got r={r:?}, ρ={rho:?}")));
    }
    if r == rho {
        return Err(if r == T::zero() { Error::Undefined } else { Error::SingularDiagonal(crate::scalar::to_f64(r)) });
    }
    let diff = (r - rho) * (r - rho);
    let width = (r - rho).abs() / r.max(rho);
    let breaks = angle_breaks(width, true);
    let half_angle = |theta: T| {
        let s = (theta * lit(0.5)).sin();
        s * s
    };
    match order {
        XiOrder::Rank1(k) => {
            let c = lit::<T>(4.0) * r * rho;
            let f = |theta: T| cos_multiple(k, theta.cos()) / (diff + c * half_angle(theta)).sqrt();
            integrate_1d_on(f, &breaks, spec)
        }
        XiOrder::Rank2(o) => {
            let integrand = ProductKernel { k: [o.k1(), o.k2()], gap: diff, coupling: lit::<T>(2.0) * r * rho, half_angle };
            integrate_2d_on(integrand, &breaks, &breaks, spec)
        }
    }
}

/// Direct quadrature of `A_l(k1, k2) = ∫∫_{[0,π]²} (cos θ₁ + cos θ₂)^l cos(k1 θ₁) cos(k2 θ₂) dθ`.
pub fn a_direct<T: Scalar>(l: u32, k1: u32, k2: u32, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    struct Moment {
        l: i32,
        k: [u32; 2],
    }
    impl<T: Scalar> TensorIntegrand<T> for Moment {
        type Axis = (T, T);
        fn axis_x(&mut self, t: T) -> (T, T) {
            let c = t.cos();
            (c, cos_multiple(self.k[0], c))
        }
        fn axis_y(&mut self, t: T) -> (T, T) {
            let c = t.cos();
            (c, cos_multiple(self.k[1], c))
        }
        fn eval(&mut self, a: &(T, T), b: &(T, T)) -> T {
            (a.0 + b.0).powi(self.l) * a.1 * b.1
        }
    }
    let l = i32::try_from(l).map_err(|_| Error::Parameter(format!("power {l} too large")))?;
    let pi = T::PI();
    integrate_2d_on(Moment { l, k: [k1, k2] }, &[T::zero(), pi], &[T::zero(), pi], spec)
}

/// Direct quadrature of the cylindrical-domain function
/// `ψ_ζ^k(x) = ∫₀^{2π} cos(kθ) / sqrt(1 + ζ² + x² - 2x cos θ) dθ`.
pub fn psi_cyl<T: Scalar>(p: &CylindricalParams<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    let gap = p.gap_squared();
    let four_x = lit::<T>(4.0) * p.x();
    let k = p.k();
    let f = |theta: T| {
        let s = (theta * lit(0.5)).sin();
        cos_multiple(k, theta.cos()) / (gap + four_x * s * s).sqrt()
    };
    let breaks = angle_breaks(gap.sqrt(), true);
    // The integrand is even about θ = π.
    Ok(integrate_1d_on(f, &breaks, spec)?.scaled(lit(2.0)))
}

use super::integrals::cos_multiple;
use super::order::XiOrder;
use super::quadrature::{graded_breaks, grading_levels, integrate_1d_on, integrate_2d_on, QuadratureSpec};
use crate::error::{Error, Result};
use crate::hypcore::EvalResult;
use crate::scalar::{lit, Scalar};

/// Applies the full relaxation operator
/// `(K_φ U)(X) = U(X) ∫ φ(S)/|X-S| dS - φ(X) ∫ U(S)/|X-S| dS`
/// to the angular mode `U = e^{i⟨k,Θ⟩} u(radius)` and evaluates it at the
/// point with radius `r` and all angles zero, which equals the radial
/// partial operator applied to `u` at `r`.
///
/// Rank 1 integrates over the disk of radius `outer` in Cartesian
/// coordinates (polar about `X`, which removes the `1/|X-S|` singularity);
/// `inner` must be zero. Rank 2 uses the isometric embedding
/// `X(r, θ₁, θ₂) = (r/√2)(cos θ₁, sin θ₁, cos θ₂, sin θ₂)` of the
/// pseudo-toroidal coordinates, whose Euclidean distance is the kernel's
/// distance and whose volume element is `ρ²/2 dρ dθ₁ dθ₂`.
pub fn partial_wave_direct<T: Scalar>(
    order: XiOrder,
    inner: T,
    outer: T,
    r: T,
    field: &dyn Fn(T) -> T,
    mode: &dyn Fn(T) -> T,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    if !(inner >= T::zero() && inner < r && r < outer) {
        return Err(Error::Domain(format!(
            "evaluation radius must lie strictly inside ({inner:?}, {outer:?}), got {r:?}"
        )));
    }
    match order {
        XiOrder::Rank1(k) => {
            if inner != T::zero() {
                return Err(Error::Parameter("rank-1 direct operator is implemented for the full disk only".into()));
            }
            disk(k, outer, r, field, mode, spec)
        }
        XiOrder::Rank2(o) => embedded_ring([o.k1(), o.k2()], inner, outer, r, field, mode, spec),
    }
}

fn disk<T: Scalar>(
    k: u32,
    outer: T,
    r: T,
    field: &dyn Fn(T) -> T,
    mode: &dyn Fn(T) -> T,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    let u_r = mode(r);
    let phi_r = field(r);
    let reach = outer * outer - r * r;
    // S = X + t e(α); dS / |X - S| = dt dα. Mirror symmetry in α halves the range.
    let f = |alpha: T, tau: T| {
        let (s, c) = alpha.sin_cos();
        let proj = r * c;
        let t_max = -proj + (proj * proj + reach).sqrt();
        let t = t_max * tau;
        let sx = r + t * c;
        let sy = t * s;
        let rho = (sx * sx + sy * sy).sqrt();
        let angular = if rho > T::zero() { cos_multiple(k, sx / rho) } else { T::one() };
        (u_r * field(rho) - phi_r * angular * mode(rho)) * t_max
    };
    let pi = T::PI();
    Ok(integrate_2d_on(f, &[T::zero(), pi], &[T::zero(), T::one()], spec)?.scaled(lit(2.0)))
}

fn embedded_ring<T: Scalar>(
    k: [u32; 2],
    inner: T,
    outer: T,
    r: T,
    field: &dyn Fn(T) -> T,
    mode: &dyn Fn(T) -> T,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    let u_r = mode(r);
    let phi_r = field(r);
    let scale = T::one() / lit::<T>(2.0).sqrt();
    let pi = T::PI();
    let mut converged = true;
    let mut panels = 0;
    let mut radial = |rho: T| -> T {
        // Components of X - S in R⁴ with X = (r/√2)(1, 0, 1, 0).
        let f = |a: T, b: T| {
            let (sa, ca) = a.sin_cos();
            let (sb, cb) = b.sin_cos();
            let ha = (a * lit(0.5)).sin();
            let hb = (b * lit(0.5)).sin();
            // r - ρ cos σ = (r - ρ) + 2ρ sin²(σ/2) avoids cancellation near the diagonal.
            let d1 = ((r - rho) + lit::<T>(2.0) * rho * ha * ha) * scale;
            let d2 = rho * sa * scale;
            let d3 = ((r - rho) + lit::<T>(2.0) * rho * hb * hb) * scale;
            let d4 = rho * sb * scale;
            let dist = (d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4).sqrt();
            let angular = cos_multiple(k[0], ca) * cos_multiple(k[1], cb);
            (u_r * field(rho) - phi_r * angular * mode(rho)) / dist
        };
        let width = (r - rho).abs() / r.max(rho);
        let breaks = if width < lit(0.5) { graded_breaks(T::zero(), pi, grading_levels(width)) } else { vec![T::zero(), pi] };
        match integrate_2d_on(f, &breaks, &breaks, spec) {
            Ok(res) => {
                converged &= res.converged;
                panels += res.terms_used;
                // Four mirror images of [0, π]², volume element ρ²/2.
                res.value * lit(4.0) * rho * rho * lit(0.5)
            }
            Err(_) => {
                converged = false;
                T::nan()
            }
        }
    };
    // The radial integrand is bounded with a kink at ρ = r.
    let levels = 4;
    let mut breaks = graded_breaks(inner, r, levels).into_iter().rev().map(|t| inner + r - t).collect::<Vec<_>>();
    breaks.pop();
    breaks.extend(graded_breaks(r, outer, levels));
    let mut res = integrate_1d_on(&mut radial, &breaks, spec)?;
    res.converged &= converged;
    res.terms_used += panels;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_kills_constant_mode() {
        // For k = 0 and u = φ the two terms cancel pointwise.
        let spec = QuadratureSpec::new(8, 1, 1e-8, 30).unwrap();
        let one = |_: f64| 1.0;
        let v = partial_wave_direct(XiOrder::Rank1(0), 0.0, 1.0, 0.4, &one, &one, &spec).unwrap();
        assert!(v.value.abs() < 1e-12);
    }

    #[test]
    fn disk_potential_of_quadratic_at_centre() {
        // ∫_disk ρ² / |S| dS = 2π/3, and u(0) = 0 removes the multiplier term.
        let spec = QuadratureSpec::new(10, 1, 1e-10, 30).unwrap();
        let one = |_: f64| 1.0;
        let sq = |t: f64| t * t;
        let v = partial_wave_direct(XiOrder::Rank1(0), 0.0, 1.0, 1e-7, &one, &sq, &spec).unwrap();
        assert!((v.value + 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-8, "{}", v.value);
    }

    #[test]
    fn rejects_bad_geometry() {
        let spec = QuadratureSpec::<f64>::default();
        let one = |_: f64| 1.0;
        assert!(partial_wave_direct(XiOrder::Rank1(0), 0.1, 1.0, 0.5, &one, &one, &spec).is_err());
        assert!(partial_wave_direct(XiOrder::Rank1(0), 0.0, 1.0, 1.0, &one, &one, &spec).is_err());
    }
}

use crate::scalar::{lit, Scalar};

/// A function value together with its first three derivatives and their
/// error estimates. Unused higher slots are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub values: [T; 4],
    pub abs_error: [T; 4],
    pub converged: bool,
    pub terms_used: usize,
}

impl<T: Scalar> Jet<T> {
    pub fn zero() -> Self {
        Self { values: [T::zero(); 4], abs_error: [T::zero(); 4], converged: true, terms_used: 0 }
    }

    pub fn scaled(mut self, factor: T) -> Self {
        for i in 0..4 {
            self.values[i] = self.values[i] * factor;
            self.abs_error[i] = self.abs_error[i] * factor.abs();
        }
        self
    }

    pub fn add(mut self, other: &Self) -> Self {
        for i in 0..4 {
            self.values[i] = self.values[i] + other.values[i];
            self.abs_error[i] = self.abs_error[i] + other.abs_error[i];
        }
        self.converged &= other.converged;
        self.terms_used += other.terms_used;
        self
    }
}

const BINOMIAL: [[u32; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];

fn chain<T: Scalar>(s: T, x: T, f: &[T; 4]) -> [T; 4] {
    let two = lit::<T>(2.0);
    [
        f[0],
        two * s * x * f[1],
        two * s * f[1] + lit::<T>(4.0) * s * s * x * x * f[2],
        lit::<T>(12.0) * s * s * x * f[2] + lit::<T>(8.0) * s * s * s * x * x * x * f[3],
    ]
}

/// Derivatives in `x` of `x^alpha · F(s x²)`, given the derivatives of `F`
/// at `s x²`.
pub fn power_composite_jet<T: Scalar>(alpha: u32, s: T, x: T, inner: &Jet<T>) -> Jet<T> {
    let h = chain(s, x, &inner.values);
    let h_err = chain(s.abs(), x.abs(), &inner.abs_error);
    // (x^α)^(j) = α (α-1) ... (α-j+1) x^(α-j).
    let mut power = [T::zero(); 4];
    for (j, slot) in power.iter_mut().enumerate() {
        if j as u32 <= alpha {
            let falling = (0..j as u32).fold(1u64, |acc, i| acc * (alpha - i) as u64);
            *slot = T::from_u64(falling).expect("small integer") * x.powi((alpha - j as u32) as i32);
        }
    }
    let mut out = Jet { converged: inner.converged, terms_used: inner.terms_used, ..Jet::zero() };
    for n in 0..4 {
        for j in 0..=n {
            let c = T::from_u32(BINOMIAL[n][j]).expect("small integer") * power[j];
            out.values[n] = out.values[n] + c * h[n - j];
            out.abs_error[n] = out.abs_error[n] + c.abs() * h_err[n - j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_closed_form_derivatives() {
        // F = exp, α = 3, s = -0.7: g(x) = x³ exp(-0.7 x²).
        let (s, x) = (-0.7f64, 0.8f64);
        let e = (s * x * x).exp();
        let inner = Jet { values: [e; 4], ..Jet::zero() };
        let jet = power_composite_jet(3, s, x, &inner);
        let g = |t: f64| t.powi(3) * (s * t * t).exp();
        let h = 1e-3;
        let d1 = (g(x + h) - g(x - h)) / (2.0 * h);
        let d2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        let d3 = (g(x + 2.0 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2.0 * h)) / (2.0 * h * h * h);
        assert!((jet.values[0] - g(x)).abs() < 1e-15);
        assert!((jet.values[1] - d1).abs() < 1e-5);
        assert!((jet.values[2] - d2).abs() < 1e-5);
        assert!((jet.values[3] - d3).abs() < 1e-4);
    }

    #[test]
    fn low_power_kills_high_prefactor_derivatives() {
        let inner = Jet { values: [1.0, 0.0, 0.0, 0.0], ..Jet::zero() };
        let jet = power_composite_jet(1, 1.0, 2.0, &inner);
        assert_eq!(jet.values, [2.0, 1.0, 0.0, 0.0]);
    }
}

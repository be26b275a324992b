use std::ops::{Add, Mul};

use num_traits::One;

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
///
/// Generic over anything with ring arithmetic so the same routine serves the
/// floating-point series and the exact rational combinatorics.
pub fn pochhammer<T>(a: T, n: u32) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = a;
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

use crate::scalar::{from_usize, Scalar};

/// Legendre polynomial `P_n(z)` by the Bonnet three-term recurrence.
pub fn legendre_p<T: Scalar>(n: usize, z: T) -> T {
    if n == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut cur = z;
    for m in 1..n {
        let mf = from_usize::<T>(m);
        let next = ((mf + mf + T::one()) * z * cur - mf * prev) / (mf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

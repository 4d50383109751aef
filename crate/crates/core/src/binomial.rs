//! Exact binomial coefficients under the zero convention.

use crate::{Error, Result};

/// `C(n, k)` over the integers, with `C(n, k) = 0` whenever `n < 0`, `k < 0`
/// or `n < k`.
///
/// Arguments are signed because the redundancy formulas routinely produce
/// negative upper arguments for small `t`; those terms vanish.
pub fn binomial(n: i64, k: i64) -> Result<u128> {
    if n < 0 || k < 0 || n < k {
        return Ok(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc = C(n, i), and C(n, i) * (n - i) = C(n, i + 1) * (i + 1)
        acc = acc
            .checked_mul(n - i)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i + 1);
    }
    Ok(acc)
}

/// Narrows a widened intermediate to the external `u64` type.
pub(crate) fn narrow(value: u128, what: &'static str) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::Overflow(what))
}

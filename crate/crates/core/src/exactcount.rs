//! Exact counting: orbit counts, integer logarithms, `gamma_q(n)`, `#S_q(n)`
//! and the `F_3` defect.
//!
//! Nothing in this module touches floating point. Every logarithm comparison
//! is rewritten as a comparison of integer powers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{param, Error, Result};
use crate::esym::index_set_nq;

/// Arbitrary-precision nonnegative integer.
pub type Nat = BigUint;

/// `binom(n, k)`, exact. Zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let k = k.min(n - k);
    let mut acc = Nat::one();
    for i in 1..=k {
        // acc * (n - k + i) is divisible by i since acc = binom(n - k + i - 1, i - 1).
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Number of `S_n`-orbits on `F_q^n`: `binom(n + q - 1, q - 1)`.
pub fn orbit_count(q: u64, n: u64) -> Nat {
    binomial(n + q - 1, q - 1)
}

/// Largest `k` with `base^k <= m`.
pub fn floor_log(base: &Nat, m: &Nat) -> Result<u64> {
    if base < &Nat::from(2u8) {
        return param("logarithm base must be at least 2");
    }
    if m.is_zero() {
        return param("logarithm of zero");
    }
    // Start from a bit-length estimate and correct it; the estimate is within
    // one of the answer.
    let (mb, bb) = (m.bits(), base.bits());
    let mut k = (mb - 1) / bb;
    let mut pow = base.pow(k as u32);
    while &pow * base <= *m {
        pow *= base;
        k += 1;
    }
    while &pow > m {
        pow /= base;
        k -= 1;
    }
    Ok(k)
}

pub fn floor_log_u64(base: u64, m: u64) -> Result<u64> {
    floor_log(&Nat::from(base), &Nat::from(m))
}

/// Smallest `k` with `base^k >= m`, i.e. `ceil(log_base m)`.
pub fn ceil_log(base: &Nat, m: &Nat) -> Result<u64> {
    if base < &Nat::from(2u8) {
        return param("logarithm base must be at least 2");
    }
    if m.is_zero() {
        return param("logarithm of zero");
    }
    let mut k = 0u64;
    let mut pow = Nat::one();
    while &pow < m {
        pow *= base;
        k += 1;
    }
    Ok(k)
}

/// `gamma_q(n)`: the least possible size of a separating set for the
/// symmetric polynomials on `F_q^n`, i.e. `ceil(log_q binom(n + q - 1, q - 1))`.
pub fn gamma(q: u64, n: u64) -> Result<u64> {
    check_qn(q, n)?;
    ceil_log(&Nat::from(q), &orbit_count(q, n))
}

/// `#S_q(n) = |[n]_q|`.
pub fn size_sq(q: u64, p: u64, n: u64) -> Result<u64> {
    Ok(index_set_nq(n, q, p)?.len() as u64)
}

/// `Delta(n) = #S_3(n) - gamma_3(n)`.
pub fn delta3(n: u64) -> Result<u64> {
    if n < 2 {
        return param("delta3 requires n >= 2");
    }
    let size = size_sq(3, 3, n)?;
    let g = gamma(3, n)?;
    size.checked_sub(g).ok_or_else(|| {
        Error::Internal(format!(
            "#S_3({n}) = {size} is smaller than gamma_3({n}) = {g}"
        ))
    })
}

/// Exact truth of `q^{n-1} < binom(n + q - 1, n)`, which holds exactly when
/// `s_1, ..., s_n` form a separating set of least possible size.
pub fn least_possible_criterion(q: u64, n: u64) -> Result<bool> {
    check_qn(q, n)?;
    Ok(Nat::from(q).pow((n - 1) as u32) < binomial(n + q - 1, n))
}

fn check_qn(q: u64, n: u64) -> Result<()> {
    if q < 2 {
        return param(format!("field order q = {q} must be at least 2"));
    }
    if n < 1 {
        return param("dimension n must be at least 1");
    }
    if n > u32::MAX as u64 {
        return param("dimension n too large");
    }
    Ok(())
}

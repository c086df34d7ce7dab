//! The threshold `chi_q` and the real root `x_0(q)` behind it.
//!
//! `x_0(q)` is the unique root in `[1, inf)` of
//!
//! ```text
//! g(x) = (x - 1) ln q - sum_{i=1}^{q-1} ln(x/i + 1)
//! ```
//!
//! and `chi_q` is the largest integer strictly below `x_0`. The integer is
//! found exactly by scanning `n` against `q^{n-1} < binom(n+q-1, n)`; the root
//! is then bracketed numerically inside `[chi_q, chi_q + 1]`.

use std::f64::consts::{E, PI};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::exactcount::{binomial, least_possible_criterion};

/// Smallest accepted bisection tolerance.
pub const MIN_TOLERANCE: f64 = 1e-12;

/// Default bisection tolerance used by [`chi_table`].
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Iteration cap for bisection.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Above this `q` the log-sum in `g` is evaluated through log-gamma differences.
const DIRECT_SUM_LIMIT: u64 = 256;

/// Distance from an integer below which the floating value of `ln ln q` is
/// not trusted and the exact threshold table decides instead.
pub const LNLN_GUARD: f64 = 1e-9;

/// `(k, ceil(e^{e^k}))`: for integer `q`, `floor(ln ln q) >= k` iff `q >= ceil(e^{e^k})`.
/// `e^{e^4} ~ 5.1e23` exceeds `u64`, so `k <= 3` covers every `u64`.
const LNLN_THRESHOLDS: [(i64, u64); 4] = [(0, 3), (1, 16), (2, 1619), (3, 528_491_312)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct X0Bracket {
    pub lo: f64,
    pub hi: f64,
    /// Decided by exact integer equality, never by float proximity.
    pub is_integer: bool,
}

impl X0Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `chi_q` read off the bracket: `x_0 - 1` for an integer root, otherwise
    /// `floor(x_0)`.
    pub fn chi(&self) -> u64 {
        if self.is_integer {
            (0.5 * (self.lo + self.hi)).round() as u64 - 1
        } else {
            self.lo.floor() as u64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiRecord {
    pub q: u64,
    pub chi: u64,
    pub x0_lo: f64,
    pub x0_hi: f64,
    pub x0_is_integer: bool,
    /// `floor(ln ln q)`; negative for `q = 2`.
    pub lower_bound: i64,
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return param(format!("q = {q} must be at least 2"));
    }
    Ok(())
}

/// Largest `n >= 1` with `q^{n-1} < binom(n+q-1, n)`, exact.
pub fn chi_exact(q: u64) -> Result<u64> {
    check_q(q)?;
    let cap = q.max(4);
    let mut n = 1;
    while least_possible_criterion(q, n + 1)? {
        n += 1;
        if n >= cap {
            return Err(Error::Internal(format!(
                "criterion still holds at n = {n} for q = {q}"
            )));
        }
    }
    Ok(n)
}

/// Whether `x = n` is an exact root: `q^{n-1} = binom(n+q-1, n)`.
pub fn is_integer_root(q: u64, n: u64) -> bool {
    n >= 1 && BigUint::from(q).pow((n - 1) as u32) == binomial(n + q - 1, n)
}

/// The same equality in its unreduced form
/// `q^{n-1} (q-1)! = (n+1)(n+2)...(n+q-1)`.
pub fn is_integer_root_unreduced(q: u64, n: u64) -> bool {
    let factorial: BigUint = (1..q).fold(BigUint::one(), |acc, i| acc * i);
    let rising: BigUint = (1..q).fold(BigUint::one(), |acc, i| acc * (n + i));
    BigUint::from(q).pow((n - 1) as u32) * factorial == rising
}

/// `sum_{i=1}^{q-1} ln(x/i + 1)` by direct summation.
pub fn log_sum_direct(q: u64, x: f64) -> f64 {
    (1..q).map(|i| (x / i as f64).ln_1p()).sum()
}

/// Tail of the Stirling series, `sum_k B_2k / (2k (2k-1) z^{2k-1})`.
fn stirling_tail(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))))
}

/// `ln Gamma(z)` for `z >= 1`, shifting the argument up before applying Stirling.
pub fn ln_gamma(z: f64) -> f64 {
    debug_assert!(z >= 1.0);
    let mut shift = 0.0;
    let mut w = z;
    while w < 20.0 {
        shift += w.ln();
        w += 1.0;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + stirling_tail(w) - shift
}

/// `ln Gamma(q + x) - ln Gamma(q)` without cancellation, for large `q`.
fn ln_gamma_shift(q: f64, x: f64) -> f64 {
    (q - 0.5) * (x / q).ln_1p() + x * (q + x).ln() - x + stirling_tail(q + x) - stirling_tail(q)
}

/// `sum_{i=1}^{q-1} ln(x/i + 1) = ln Gamma(x+q) - ln Gamma(q) - ln Gamma(x+1)`.
pub fn log_sum_gamma(q: u64, x: f64) -> f64 {
    ln_gamma_shift(q as f64, x) - ln_gamma(x + 1.0)
}

/// `g(x) = (x - 1) ln q - sum_{i=1}^{q-1} ln(x/i + 1)`; negative below `x_0`,
/// positive above.
pub fn root_gap(q: u64, x: f64) -> f64 {
    let sum = if q <= DIRECT_SUM_LIMIT {
        log_sum_direct(q, x)
    } else {
        log_sum_gamma(q, x)
    };
    (x - 1.0) * (q as f64).ln() - sum
}

/// Brackets `x_0(q)` to width at most `tol`.
pub fn x0_bracket(q: u64, tol: f64) -> Result<X0Bracket> {
    let chi = chi_exact(q)?;
    x0_bracket_from(q, chi, tol)
}

fn x0_bracket_from(q: u64, chi: u64, tol: f64) -> Result<X0Bracket> {
    if !tol.is_finite() || tol < MIN_TOLERANCE {
        return param(format!("tolerance {tol} is below {MIN_TOLERANCE:e}"));
    }
    let next = chi + 1;
    if is_integer_root(q, next) {
        let root = next as f64;
        return Ok(X0Bracket {
            lo: root - 0.45 * tol,
            hi: root + 0.45 * tol,
            is_integer: true,
        });
    }
    let (mut lo, mut hi) = (chi as f64, next as f64);
    if !(root_gap(q, lo) < 0.0 && root_gap(q, hi) > 0.0) {
        return Err(Error::Internal(format!(
            "no sign change of g on [{chi}, {next}] for q = {q}"
        )));
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if root_gap(q, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(X0Bracket {
        lo,
        hi,
        is_integer: false,
    })
}

/// Full record for one `q`.
pub fn chi_record(q: u64, tol: f64) -> Result<ChiRecord> {
    let chi = chi_exact(q)?;
    let b = x0_bracket_from(q, chi, tol)?;
    Ok(ChiRecord {
        q,
        chi,
        x0_lo: b.lo,
        x0_hi: b.hi,
        x0_is_integer: b.is_integer,
        lower_bound: lnln_floor(q)?,
    })
}

/// Records for every `q` in `[q_min, q_max]`, in order of `q`.
///
/// Work is spread over the current rayon pool; the output order does not
/// depend on scheduling.
pub fn chi_table(q_min: u64, q_max: u64) -> Result<Vec<ChiRecord>> {
    chi_table_with_tol(q_min, q_max, DEFAULT_TOLERANCE)
}

pub fn chi_table_with_tol(q_min: u64, q_max: u64, tol: f64) -> Result<Vec<ChiRecord>> {
    if q_min < 2 || q_min > q_max {
        return param(format!("invalid q range [{q_min}, {q_max}]"));
    }
    (q_min..=q_max)
        .into_par_iter()
        .map(|q| chi_record(q, tol))
        .collect()
}

/// Pairs `(q, q')` with `q < q'` adjacent in `records` but `chi_q > chi_q'`.
pub fn monotonicity_violations(records: &[ChiRecord]) -> Vec<(u64, u64)> {
    records
        .windows(2)
        .filter(|w| w[0].chi > w[1].chi)
        .map(|w| (w[0].q, w[1].q))
        .collect()
}

/// `floor(ln ln q)` from the exact threshold table.
pub fn lnln_floor_exact(q: u64) -> Result<i64> {
    check_q(q)?;
    Ok(LNLN_THRESHOLDS
        .iter()
        .filter(|&&(_, t)| q >= t)
        .map(|&(k, _)| k)
        .next_back()
        .unwrap_or(-1))
}

/// `floor(ln ln q)`, in floating point away from integers and exactly near them.
pub fn lnln_floor(q: u64) -> Result<i64> {
    check_q(q)?;
    let v = (q as f64).ln().ln();
    if (v - v.round()).abs() < LNLN_GUARD {
        return lnln_floor_exact(q);
    }
    Ok(v.floor() as i64)
}

/// `chi_q >= floor(ln ln q)`.
pub fn lnln_bound_check(q: u64) -> Result<bool> {
    Ok(chi_exact(q)? as i64 >= lnln_floor(q)?)
}

/// `e^{e^2}`, the start of the range of the technical inequality.
pub fn technical_threshold() -> f64 {
    (E * E).exp()
}

/// `ln q - (2 ln ln q + 1) ln ln ln q` for `q >= e^{e^2}`.
pub fn technical_inequality(q: f64) -> Result<f64> {
    if q.is_nan() || q < technical_threshold() {
        return param(format!("q = {q} is below e^(e^2)"));
    }
    let l = q.ln();
    Ok(l - (2.0 * l.ln() + 1.0) * l.ln().ln())
}

/// Positivity of [`technical_inequality`] at each grid point.
pub fn technical_inequality_check(grid: &[f64]) -> Result<Vec<bool>> {
    grid.iter()
        .map(|&q| technical_inequality(q).map(|v| v > 0.0))
        .collect()
}

/// `count` logarithmically spaced points from `lo` to `hi`, endpoints exact.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            let mut out: Vec<f64> = (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect();
            out[0] = lo;
            out[count - 1] = hi;
            out
        }
    }
}

//! Interval classification of the defect `#S_3(n) - gamma_3(n)` over `F_3`.
//!
//! The boundaries are `a_r = 3^{r/2}` and `b_r = (-3 + sqrt(8 * 3^r + 1)) / 2`.
//! Both are irrational for most `r`, so every comparison with them is done by
//! squaring: `n` vs `a_r` is `n^2` vs `3^r`, and `n` vs `b_r` is `(2n+3)^2`
//! vs `8 * 3^r + 1`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{param, Result};
use crate::exactcount::floor_log_u64;

fn pow3(r: u32) -> BigUint {
    BigUint::from(3u8).pow(r)
}

/// Ordering of `n` against `a_r = 3^{r/2}`.
pub fn cmp_ar(n: u64, r: u32) -> Ordering {
    (BigUint::from(n) * n).cmp(&pow3(r))
}

/// Ordering of `n` against `b_r = (-3 + sqrt(8 * 3^r + 1)) / 2`.
pub fn cmp_br(n: u64, r: u32) -> Ordering {
    let lhs = BigUint::from(2 * n + 3).pow(2);
    lhs.cmp(&(pow3(r) * 8u8 + 1u8))
}

/// Ordering of `a_r` against `b_r`.
pub fn cmp_ar_br(r: u32) -> Ordering {
    // a_r < b_r  <=>  (2a_r + 3)^2 < 8 * 3^r + 1  <=>  12 a_r < 4 * 3^r - 8
    let rhs = pow3(r) * 4u8;
    if rhs <= BigUint::from(8u8) {
        return Ordering::Greater;
    }
    let rhs = rhs - 8u8;
    (pow3(r) * 144u8).cmp(&(&rhs * &rhs))
}

/// Ordering of `b_r` against `a_{r+1}`.
pub fn cmp_br_next_ar(r: u32) -> Ordering {
    // b_r < a_{r+1}  <=>  sqrt(8*3^r+1) < 2*3^{(r+1)/2} + 3
    //                <=>  8*3^r + 1 < 4*3^{r+1} + 9 + 12*3^{(r+1)/2}
    // which always holds since 8*3^r < 12*3^r.
    let lhs = pow3(r) * 8u8 + 1u8;
    let rhs = pow3(r + 1) * 4u8 + 9u8;
    if lhs < rhs {
        Ordering::Less
    } else {
        // lhs - rhs vs 12 * a_{r+1}  <=>  (lhs - rhs)^2 vs 144 * 3^{r+1}
        let d = lhs - rhs;
        (&d * &d).cmp(&(pow3(r + 1) * 144u8))
    }
}

/// `alpha(n)`: 0 if `n` lies in some `[a_{2r}, a_{2r+1})`, else -1.
pub fn alpha_of(n: u64) -> Result<i32> {
    if n < 1 {
        return param("alpha requires n >= 1");
    }
    let r = floor_log_u64(3, n)? as u32;
    Ok(if cmp_ar(n, 2 * r + 1) == Ordering::Less {
        0
    } else {
        -1
    })
}

/// `beta(n)`, `n >= 6`: 0 if `n` lies in some `[a_r, b_r)`, else -1.
pub fn beta_of(n: u64) -> Result<i32> {
    if n < 6 {
        return param(format!("beta requires n >= 6, got {n}"));
    }
    // a_r <= n < a_{r+1}  <=>  3^r <= n^2 < 3^{r+1}
    let r = floor_log_u64(3, n * n)? as u32;
    Ok(if cmp_br(n, r) == Ordering::Less {
        0
    } else {
        -1
    })
}

/// `delta(n)`: 1 if `n` lies in some `[3^r, 2 * 3^r)`, else 2.
pub fn delta_small_of(n: u64) -> Result<i32> {
    if n < 1 {
        return param("delta requires n >= 1");
    }
    let r = floor_log_u64(3, n)? as u32;
    Ok(if n < 2 * 3u64.pow(r) { 1 } else { 2 })
}

/// Interval of `[a_{2r}, a_{2r+2})` containing `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `[a_{2r}, b_{2r})`
    A,
    /// `[b_{2r}, a_{2r+1})`
    B,
    /// `[a_{2r+1}, 2 a_{2r})`
    C,
    /// `[2 a_{2r}, b_{2r+1})`
    D,
    /// `[b_{2r+1}, a_{2r+2})`
    E,
}

impl Kind {
    /// `(alpha, beta, delta)` on this interval.
    pub fn terms(self) -> (i32, i32, i32) {
        match self {
            Kind::A => (0, 0, 1),
            Kind::B => (0, -1, 1),
            Kind::C => (-1, 0, 1),
            Kind::D => (-1, 0, 2),
            Kind::E => (-1, -1, 2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
            Kind::D => "D",
            Kind::E => "E",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct F3Class {
    pub n: u64,
    /// `n` lies in `[a_{2r}, a_{2r+2}) = [3^r, 3^{r+1})`.
    pub r: u32,
    pub kind: Kind,
    pub alpha: i32,
    pub beta: i32,
    pub delta: i32,
    pub predicted_delta: i32,
}

/// Locates `n >= 9` among the intervals `A`..`E` and attaches the correction terms.
pub fn classify3(n: u64) -> Result<F3Class> {
    if n < 9 {
        return param(format!(
            "interval classification needs n >= 9, got {n}; the defect is 0 for 2 <= n <= 8"
        ));
    }
    let r = floor_log_u64(3, n)? as u32;
    let kind = if cmp_br(n, 2 * r) == Ordering::Less {
        Kind::A
    } else if cmp_ar(n, 2 * r + 1) == Ordering::Less {
        Kind::B
    } else if n < 2 * 3u64.pow(r) {
        Kind::C
    } else if cmp_br(n, 2 * r + 1) == Ordering::Less {
        Kind::D
    } else {
        Kind::E
    };
    let (alpha, beta, delta) = kind.terms();
    Ok(F3Class {
        n,
        r,
        kind,
        alpha,
        beta,
        delta,
        predicted_delta: alpha + beta + delta,
    })
}

/// Predicted defect for any `n >= 2`: 0 up to 8, the interval formula beyond.
pub fn predicted_delta3(n: u64) -> Result<i32> {
    match n {
        0 | 1 => param("defect is defined for n >= 2"),
        2..=8 => Ok(0),
        _ => Ok(classify3(n)?.predicted_delta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmp_examples() {
        assert_eq!(cmp_ar(9, 4), Ordering::Equal);
        assert_eq!(cmp_ar(5, 3), Ordering::Less);
        assert_eq!(cmp_ar(6, 3), Ordering::Greater);
        assert_eq!(cmp_br(11, 4), Ordering::Less);
        assert_eq!(cmp_br(12, 4), Ordering::Greater);
        // 8 * 9 + 1 = 73 is not a square, so b_2 ~ 2.772 lies strictly below 3.
        assert_eq!(cmp_br(3, 2), Ordering::Greater);
        assert_eq!(cmp_br(2, 2), Ordering::Less);
        // b_1 = (-3 + 5) / 2 = 1 and b_0 = 0 are the integral boundaries.
        assert_eq!(cmp_br(1, 1), Ordering::Equal);
    }

    #[test]
    fn chain_ordering_small_r() {
        // Float reference values for the chain a_r < b_r < a_{r+1}.
        for r in 0..=30u32 {
            let a = 3f64.powf(r as f64 / 2.0);
            let b = (-3.0 + (8.0 * 3f64.powi(r as i32) + 1.0).sqrt()) / 2.0;
            let expected = a.partial_cmp(&b).unwrap();
            if (a - b).abs() > 1e-6 * a {
                assert_eq!(cmp_ar_br(r), expected, "r={r}");
            }
            assert_eq!(cmp_br_next_ar(r), Ordering::Less);
        }
        // For r <= 2 the chain fails: b_r <= a_r.
        assert_ne!(cmp_ar_br(2), Ordering::Less);
        assert_eq!(cmp_ar_br(3), Ordering::Less);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_of(5).unwrap(), 0);
        assert_eq!(alpha_of(6).unwrap(), -1);
        assert_eq!(alpha_of(9).unwrap(), 0);
        assert_eq!(alpha_of(1).unwrap(), 0);
        assert!(alpha_of(0).is_err());
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_of(9).unwrap(), 0);
        assert_eq!(beta_of(12).unwrap(), -1);
        assert_eq!(beta_of(6).unwrap(), -1);
        assert!(beta_of(5).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_small_of(9).unwrap(), 1);
        assert_eq!(delta_small_of(6).unwrap(), 2);
        assert_eq!(delta_small_of(1).unwrap(), 1);
        assert_eq!(delta_small_of(2).unwrap(), 2);
    }

    #[test]
    fn classify_examples() {
        let c = classify3(9).unwrap();
        assert_eq!((c.kind, c.predicted_delta, c.r), (Kind::A, 1, 2));
        let c = classify3(12).unwrap();
        assert_eq!((c.kind, c.predicted_delta), (Kind::B, 0));
        let c = classify3(20).unwrap();
        assert_eq!((c.kind, c.predicted_delta), (Kind::D, 1));
        assert!(classify3(8).is_err());
    }

    #[test]
    fn kind_terms_match_separate_functions() {
        for n in 9..=20_000 {
            let c = classify3(n).unwrap();
            assert_eq!(c.alpha, alpha_of(n).unwrap(), "n={n}");
            assert_eq!(c.beta, beta_of(n).unwrap(), "n={n}");
            assert_eq!(c.delta, delta_small_of(n).unwrap(), "n={n}");
        }
    }
}

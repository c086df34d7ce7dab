//! Finite fields `F_q`, `q = p^k`, small enough for exhaustive work.
//!
//! An element is stored as a dense index in `[0, q)`: the coefficient vector
//! `(c_0, ..., c_{k-1})` of its polynomial representative, read as a base-`p`
//! number `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Index 0 is zero, index 1 is one.

use std::fmt;

use crate::error::{param, Error, Result};

/// Default upper bound on `q` accepted by [`make_field`].
pub const DEFAULT_FIELD_BOUND: u64 = 1024;

/// Fields up to this order get precomputed addition and multiplication tables.
pub const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_index(index: u32) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Description of `F_q` together with its arithmetic.
///
/// Immutable after construction and `Sync`, so a single spec can be shared
/// by any number of threads.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("tabulated", &self.tables.is_some())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// If `q = p^k` for a prime `p` and `k >= 1`, returns `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1));
    }
    let (mut m, mut k) = (q, 0u32);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Builds `F_{p^k}` with the default bound on `q`.
pub fn make_field(p: u64, k: u32) -> Result<FieldSpec> {
    make_field_bounded(p, k, DEFAULT_FIELD_BOUND)
}

/// Builds `F_{p^k}`, rejecting `p^k > bound`.
///
/// The modulus is the first monic irreducible polynomial of degree `k` when the
/// non-leading coefficients are ordered by their base-`p` index. For `k = 1`
/// this is `x` itself, so arithmetic reduces to residues mod `p`.
pub fn make_field_bounded(p: u64, k: u32, bound: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return param(format!("characteristic {p} is not prime"));
    }
    if k == 0 {
        return param("extension degree must be at least 1");
    }
    let q = match p.checked_pow(k) {
        Some(q) if q <= bound => q,
        other => {
            return Err(Error::Scale {
                what: "field order",
                value: other.map_or_else(|| format!("{p}^{k}"), |q| q.to_string()),
                bound: bound.to_string(),
            })
        }
    };
    if q > u32::MAX as u64 {
        return Err(Error::Scale {
            what: "field order",
            value: q.to_string(),
            bound: u32::MAX.to_string(),
        });
    }
    let (p, q) = (p as u32, q as u32);
    let modulus = (0..q)
        .map(|idx| {
            let mut poly = digits(idx, p, k as usize);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .ok_or_else(|| {
            Error::Internal(format!(
                "no irreducible polynomial of degree {k} over F_{p}"
            ))
        })?;

    let mut spec = FieldSpec {
        p,
        k,
        q,
        modulus,
        tables: None,
    };
    if q <= TABLE_LIMIT {
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..q {
            for b in 0..q {
                add[a as usize * n + b as usize] = spec.add_raw(a, b) as u16;
                mul[a as usize * n + b as usize] = spec.mul_raw(a, b) as u16;
            }
        }
        spec.tables = Some(Tables { add, mul });
    }
    Ok(spec)
}

/// Base-`p` digits of `idx`, least significant first, padded to `len`.
fn digits(mut idx: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn degree(poly: &[u32]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Remainder of `num` modulo a monic `den` over `F_p`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let dd = degree(den).expect("nonzero divisor");
    debug_assert_eq!(den[dd], 1);
    let mut r = num.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < dd {
            break;
        }
        let c = r[dr];
        let shift = dr - dd;
        for (i, &d) in den[..=dd].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * d) % p;
        }
    }
    r
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with
/// every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let Some(deg) = degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count as u32 {
            let mut divisor = digits(idx, p, d);
            divisor.push(1);
            if degree(&poly_rem(poly, &divisor, p)).is_none() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_tabulated(&self) -> bool {
        self.tables.is_some()
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            param(format!("index {index} out of range for F_{}", self.q))
        }
    }

    /// All `q` elements in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// Coefficient vector of an element, constant term first.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0, self.p, self.k as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return param("coefficient vector does not describe a field element");
        }
        Ok(FieldElement(undigits(coeffs, self.p)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_idx(a.0, b.0))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_idx(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let c: Vec<u32> = self
            .coefficients(a)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        FieldElement(undigits(&c, self.p))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse, found by scanning the multiplication row of `a`.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        self.elements().find(|&b| self.mul_idx(a.0, b.0) == 1)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a.0, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        FieldElement(acc)
    }

    #[inline]
    pub(crate) fn add_idx(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as u32,
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub(crate) fn mul_idx(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as u32,
            None => self.mul_raw(a, b),
        }
    }

    fn add_raw(&self, mut a: u32, mut b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.k == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let k = self.k as usize;
        let (ca, cb) = (digits(a, p, k), digits(b, p, k));
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        undigits(&poly_rem(&prod, &self.modulus, p)[..k.min(prod.len())], p)
    }
}

/// All elements of `spec` in canonical order.
pub fn enumerate_elements(spec: &FieldSpec) -> Vec<FieldElement> {
    spec.elements().collect()
}

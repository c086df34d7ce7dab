//! `S_n`-orbits on `F_q^n`, represented by their sorted index vectors.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{param, Error, Result};
use crate::exactcount::orbit_count;
use crate::gf::{FieldElement, FieldSpec};

/// Default bound on the number of orbits an enumeration may visit.
pub const DEFAULT_ORBIT_BOUND: u64 = 10_000_000;

/// Canonical representative of an orbit: a weakly increasing vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRep(Vec<FieldElement>);

impl OrbitRep {
    /// Sorts `v` into the canonical representative of its orbit.
    pub fn canonicalize(v: &[FieldElement]) -> Self {
        let mut entries = v.to_vec();
        entries.sort_unstable();
        OrbitRep(entries)
    }

    /// Wraps an already sorted vector; `None` if it is not weakly increasing or empty.
    pub fn from_sorted(entries: Vec<FieldElement>) -> Option<Self> {
        (!entries.is_empty() && entries.windows(2).all(|w| w[0] <= w[1]))
            .then_some(OrbitRep(entries))
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OrbitRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic stream of all weakly increasing vectors of length `n` over
/// `{0, ..., q-1}`.
#[derive(Debug, Clone)]
pub struct Orbits {
    q: u32,
    current: Vec<u32>,
    done: bool,
}

impl Orbits {
    fn new(q: u32, n: usize) -> Self {
        Orbits {
            q,
            current: vec![0; n],
            done: false,
        }
    }

    /// Advances `current` to its lexicographic successor, returning `false`
    /// once every entry is `q - 1`.
    fn advance(&mut self) -> bool {
        let top = self.q - 1;
        let Some(i) = self.current.iter().rposition(|&x| x < top) else {
            return false;
        };
        let next = self.current[i] + 1;
        self.current[i..].fill(next);
        true
    }

    /// Visits each representative as a raw index slice without allocating.
    pub fn for_each_raw(mut self, mut f: impl FnMut(&[u32])) {
        if self.done {
            return;
        }
        loop {
            f(&self.current);
            if !self.advance() {
                break;
            }
        }
        self.done = true;
    }
}

impl Iterator for Orbits {
    type Item = OrbitRep;

    fn next(&mut self) -> Option<OrbitRep> {
        if self.done {
            return None;
        }
        let out = OrbitRep(
            self.current
                .iter()
                .map(|&i| FieldElement::from_index(i))
                .collect(),
        );
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

/// Streams every orbit representative of `F_q^n` with the default bound.
pub fn enumerate_orbits(spec: &FieldSpec, n: usize) -> Result<Orbits> {
    enumerate_orbits_bounded(spec, n, DEFAULT_ORBIT_BOUND)
}

/// Streams every orbit representative of `F_q^n`, refusing when there are
/// more than `bound` of them.
pub fn enumerate_orbits_bounded(spec: &FieldSpec, n: usize, bound: u64) -> Result<Orbits> {
    check_orbit_bound(spec.q() as u64, n, bound)?;
    Ok(Orbits::new(spec.q(), n))
}

/// Fails with a scale error when `binom(n + q - 1, q - 1) > bound`.
pub fn check_orbit_bound(q: u64, n: usize, bound: u64) -> Result<BigUint> {
    if n == 0 {
        return param("dimension n must be at least 1");
    }
    let count = orbit_count(q, n as u64);
    if count > BigUint::from(bound) {
        return Err(Error::Scale {
            what: "orbit count",
            value: count.to_string(),
            bound: bound.to_string(),
        });
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn els(v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&i| FieldElement::from_index(i)).collect()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            OrbitRep::canonicalize(&els(&[1, 0, 1])).entries(),
            els(&[0, 1, 1])
        );
        assert_eq!(
            OrbitRep::canonicalize(&els(&[2, 2, 2])).entries(),
            els(&[2, 2, 2])
        );
        // F_4: (z+1, 0, z) = indices (3, 0, 2)
        assert_eq!(
            OrbitRep::canonicalize(&els(&[3, 0, 2])).entries(),
            els(&[0, 2, 3])
        );
        let r = OrbitRep::canonicalize(&els(&[3, 0, 2]));
        assert_eq!(OrbitRep::canonicalize(r.entries()), r);
    }

    #[test]
    fn enumerate_q2_n3() {
        let f2 = make_field(2, 1).unwrap();
        let all: Vec<String> = enumerate_orbits(&f2, 3)
            .unwrap()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(all, ["(0,0,0)", "(0,0,1)", "(0,1,1)", "(1,1,1)"]);
    }

    #[test]
    fn enumerate_counts() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(enumerate_orbits(&f3, 2).unwrap().count(), 6);
        assert_eq!(enumerate_orbits(&f3, 9).unwrap().count(), 55);
        let mut raw = 0;
        enumerate_orbits(&f3, 9).unwrap().for_each_raw(|_| raw += 1);
        assert_eq!(raw, 55);
    }

    #[test]
    fn scale_bound() {
        let f4 = make_field(2, 2).unwrap();
        // binom(6, 3) = 20
        assert!(enumerate_orbits_bounded(&f4, 3, 20).is_ok());
        assert!(matches!(
            enumerate_orbits_bounded(&f4, 3, 19),
            Err(Error::Scale { .. })
        ));
        assert!(enumerate_orbits(&f4, 0).is_err());
    }

    #[test]
    fn from_sorted_rejects_unsorted() {
        assert!(OrbitRep::from_sorted(els(&[0, 2, 1])).is_none());
        assert!(OrbitRep::from_sorted(vec![]).is_none());
        assert!(OrbitRep::from_sorted(els(&[0, 1, 1])).is_some());
    }
}

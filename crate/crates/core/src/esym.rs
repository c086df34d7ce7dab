//! Elementary symmetric polynomials evaluated at points of `F_q^n`, and the
//! index sets `[n]_q` naming the sparse separating family `S_q(n)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{param, Result};
use crate::gf::{is_prime, FieldElement, FieldSpec};
use crate::orbits::OrbitRep;

/// Set of indices `t` naming the polynomials `{s_t : t in T}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds an index set for dimension `n`. Indices are sorted and
    /// deduplicated; every index must lie in `[1, n]`.
    pub fn new(indices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&t) = set.iter().find(|&&t| t == 0 || t > n) {
            return param(format!("index {t} outside [1, {n}]"));
        }
        Ok(IndexSet(set.into_iter().collect()))
    }

    /// `{1, ..., n}`, naming the full set `S(n)`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: usize) -> bool {
        self.0.binary_search(&t).is_ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&t| other.contains(t))
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Copy of `self` with `t` removed.
    pub fn without(&self, t: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&s| s != t).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// Values `(s_t(v))_{t in T}`, ascending in `t`.
pub type Fingerprint = Vec<FieldElement>;

/// `(s_1(v), ..., s_n(v))`: the coefficients of `prod_i (1 + v_i z)`.
pub fn esym_all(v: &[FieldElement], spec: &FieldSpec) -> Vec<FieldElement> {
    let mut raw = vec![0u32; v.len() + 1];
    esym_into(v.iter().map(|e| e.index()), spec, &mut raw);
    raw[1..]
        .iter()
        .map(|&i| FieldElement::from_index(i))
        .collect()
}

/// Writes the coefficients of `prod_i (1 + v_i z)` into `coeffs`
/// (`coeffs[t] = s_t`, `coeffs[0] = 1`). `coeffs` must have length `n + 1`.
pub(crate) fn esym_into(v: impl Iterator<Item = u32>, spec: &FieldSpec, coeffs: &mut [u32]) {
    coeffs.fill(0);
    coeffs[0] = 1;
    let mut deg = 0;
    for x in v {
        deg += 1;
        if x == 0 {
            continue;
        }
        // Multiply by (1 + x z), highest coefficient first so updates use old values.
        for t in (1..=deg).rev() {
            let term = spec.mul_idx(coeffs[t - 1], x);
            coeffs[t] = spec.add_idx(coeffs[t], term);
        }
    }
}

/// Restriction of [`esym_all`] to the indices in `t`.
pub fn fingerprint(v: &OrbitRep, t: &IndexSet, spec: &FieldSpec) -> Fingerprint {
    let all = esym_all(v.entries(), spec);
    t.indices().iter().map(|&i| all[i - 1]).collect()
}

/// `[n]_q = { j p^m <= n : 1 <= j < q, m >= 0 }`.
pub fn index_set_nq(n: u64, q: u64, p: u64) -> Result<IndexSet> {
    if n < 1 {
        return param("dimension n must be at least 1");
    }
    if !is_prime(p) {
        return param(format!("characteristic {p} is not prime"));
    }
    let mut m = q;
    while m.is_multiple_of(p) && m > 1 {
        m /= p;
    }
    if m != 1 || q < p {
        return param(format!("{q} is not a power of {p}"));
    }
    let mut set = BTreeSet::new();
    for j in 1..q.min(n + 1) {
        let mut v = j;
        while v <= n {
            set.insert(v as usize);
            match v.checked_mul(p) {
                Some(next) => v = next,
                None => break,
            }
        }
    }
    Ok(IndexSet(set.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn els(v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&i| FieldElement::from_index(i)).collect()
    }

    fn idx(v: &[FieldElement]) -> Vec<u32> {
        v.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn esym_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(idx(&esym_all(&els(&[0, 1, 1]), &f2)), vec![0, 1, 0]);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(idx(&esym_all(&els(&[1, 1, 1]), &f3)), vec![0, 0, 1]);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(idx(&esym_all(&els(&[0; 6]), &f9)), vec![0; 6]);
    }

    #[test]
    fn esym_matches_direct_subset_sums() {
        // s_t as an explicit sum over t-subsets, over F_5 and F_8.
        for spec in [make_field(5, 1).unwrap(), make_field(2, 3).unwrap()] {
            let q = spec.q();
            let v = els(&[1 % q, 3 % q, 4 % q, 2 % q, 0]);
            let all = esym_all(&v, &spec);
            for t in 1..=v.len() {
                let mut sum = FieldElement::ZERO;
                for mask in 0u32..(1 << v.len()) {
                    if mask.count_ones() as usize != t {
                        continue;
                    }
                    let prod = (0..v.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(FieldElement::ONE, |acc, i| spec.mul(acc, v[i]));
                    sum = spec.add(sum, prod);
                }
                assert_eq!(all[t - 1], sum, "q={q} t={t}");
            }
        }
    }

    #[test]
    fn fingerprint_examples() {
        let f2 = make_field(2, 1).unwrap();
        let v = OrbitRep::canonicalize(&els(&[0, 0, 1]));
        let t = IndexSet::new([1, 2], 3).unwrap();
        assert_eq!(idx(&fingerprint(&v, &t, &f2)), vec![1, 0]);
        assert_eq!(
            fingerprint(&v, &IndexSet::full(3), &f2),
            esym_all(v.entries(), &f2)
        );
        let f3 = make_field(3, 1).unwrap();
        let zero = OrbitRep::canonicalize(&els(&[0; 9]));
        let t9 = index_set_nq(9, 3, 3).unwrap();
        assert_eq!(idx(&fingerprint(&zero, &t9, &f3)), vec![0; 5]);
    }

    #[test]
    fn index_set_examples() {
        assert_eq!(index_set_nq(4, 2, 2).unwrap().indices(), &[1, 2, 4]);
        assert_eq!(index_set_nq(9, 3, 3).unwrap().indices(), &[1, 2, 3, 6, 9]);
        assert_eq!(index_set_nq(5, 3, 3).unwrap().indices(), &[1, 2, 3]);
        assert_eq!(
            index_set_nq(10, 4, 2).unwrap().indices(),
            &[1, 2, 3, 4, 6, 8]
        );
        assert!(index_set_nq(4, 6, 2).is_err());
        assert!(index_set_nq(4, 8, 4).is_err());
        assert!(index_set_nq(0, 2, 2).is_err());
        assert!(index_set_nq(4, 1, 2).is_err());
    }

    #[test]
    fn index_set_nested_in_n() {
        for (q, p) in [(2, 2), (3, 3), (4, 2), (8, 2), (9, 3), (25, 5)] {
            let mut prev = index_set_nq(1, q, p).unwrap();
            for n in 2..=300 {
                let cur = index_set_nq(n, q, p).unwrap();
                assert!(prev.is_subset(&cur));
                assert!(prev.len() <= cur.len());
                prev = cur;
            }
        }
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new([0, 1], 3).is_err());
        assert!(IndexSet::new([4], 3).is_err());
        let t = IndexSet::new([3, 1, 3], 3).unwrap();
        assert_eq!(t.indices(), &[1, 3]);
        assert_eq!(t.to_string(), "{1,3}");
        assert_eq!(t.without(1).indices(), &[3]);
    }
}

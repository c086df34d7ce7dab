//! Brute-force separation checks.
//!
//! Over a finite field every function on `V = F_q^n` is a polynomial, so two
//! points are separated by the full invariant ring exactly when they lie in
//! different `S_n`-orbits. A set `{s_t : t in T}` is therefore separating iff
//! the fingerprint map `orbit -> (s_t)_{t in T}` is injective.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::esym::{esym_all, esym_into, IndexSet};
use crate::exactcount::{gamma, Nat};
use crate::gf::{FieldElement, FieldSpec};
use crate::orbits::{check_orbit_bound, enumerate_orbits_bounded, OrbitRep, DEFAULT_ORBIT_BOUND};

/// Largest `n` accepted by the subset searches by default.
pub const DEFAULT_SUBSET_DIM_BOUND: usize = 16;

/// `(q, largest n)` cells small enough for exhaustive checks in well under a second each.
pub const DESK_GRID: [(u64, usize); 7] = [(2, 16), (3, 12), (4, 9), (5, 8), (7, 6), (8, 5), (9, 5)];

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationVerdict {
    pub separating: bool,
    /// First colliding pair in lexicographic orbit order: the second entry is
    /// the first orbit whose fingerprint was already seen, the first entry is
    /// the earlier orbit carrying that fingerprint.
    pub witness: Option<(OrbitRep, OrbitRep)>,
    pub orbit_count: Nat,
    pub fingerprint_count: Nat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub orbit_bound: u64,
    pub subset_dim_bound: usize,
    /// Worker threads for fingerprinting; 1 runs inline.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            orbit_bound: DEFAULT_ORBIT_BOUND,
            subset_dim_bound: DEFAULT_SUBSET_DIM_BOUND,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum FpKey {
    Packed(u128),
    Wide(Box<[u16]>),
}

/// Encodes fingerprints as hash keys, packing into a `u128` when they fit.
struct KeyCodec {
    bits: u32,
    packed: bool,
}

impl KeyCodec {
    fn new(q: u32, width: usize) -> Self {
        let bits = 32 - (q - 1).leading_zeros();
        KeyCodec {
            bits,
            packed: bits as usize * width <= 128,
        }
    }

    fn key(&self, values: impl Iterator<Item = u32>) -> FpKey {
        if self.packed {
            FpKey::Packed(values.fold(0u128, |acc, v| (acc << self.bits) | v as u128))
        } else {
            FpKey::Wide(values.map(|v| v as u16).collect())
        }
    }
}

fn validate(n: usize, t: &IndexSet) -> Result<()> {
    if n == 0 {
        return param("dimension n must be at least 1");
    }
    if t.max().is_some_and(|m| m > n) {
        return param(format!("index set {t} is not contained in [1, {n}]"));
    }
    Ok(())
}

fn to_rep(raw: &[u32]) -> OrbitRep {
    OrbitRep::from_sorted(raw.iter().map(|&i| FieldElement::from_index(i)).collect())
        .expect("enumerated orbits are sorted")
}

/// Decides whether `{s_t : t in T}` separates the orbits on `F_q^n`, with the
/// default configuration.
pub fn check_separating(spec: &FieldSpec, n: usize, t: &IndexSet) -> Result<SeparationVerdict> {
    check_separating_with(spec, n, t, &SearchConfig::default())
}

pub fn check_separating_with(
    spec: &FieldSpec,
    n: usize,
    t: &IndexSet,
    cfg: &SearchConfig,
) -> Result<SeparationVerdict> {
    validate(n, t)?;
    let orbit_count = check_orbit_bound(spec.q() as u64, n, cfg.orbit_bound)?;
    let codec = KeyCodec::new(spec.q(), t.len());
    let mut seen: HashMap<FpKey, u64> = HashMap::new();
    let mut collision: Option<(u64, Vec<u32>)> = None;
    let mut ordinal = 0u64;

    let mut absorb = |keys: Vec<FpKey>, block: &[u32]| {
        for (key, raw) in keys.into_iter().zip(block.chunks_exact(n)) {
            match seen.entry(key) {
                Entry::Occupied(e) => {
                    if collision.is_none() {
                        collision = Some((*e.get(), raw.to_vec()));
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(ordinal);
                }
            }
            ordinal += 1;
        }
    };

    let fingerprint_block = |block: &[u32]| -> Vec<FpKey> {
        let mut coeffs = vec![0u32; n + 1];
        block
            .chunks_exact(n)
            .map(|raw| {
                esym_into(raw.iter().copied(), spec, &mut coeffs);
                codec.key(t.indices().iter().map(|&i| coeffs[i]))
            })
            .collect()
    };

    let pool = if cfg.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.jobs)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut block: Vec<u32> = Vec::with_capacity(CHUNK * n);
    let mut flush = |block: &mut Vec<u32>| {
        let keys = match &pool {
            Some(pool) => pool.install(|| {
                block
                    .par_chunks(n * 256)
                    .flat_map_iter(&fingerprint_block)
                    .collect()
            }),
            None => fingerprint_block(block),
        };
        absorb(keys, block);
        block.clear();
    };
    enumerate_orbits_bounded(spec, n, cfg.orbit_bound)?.for_each_raw(|raw| {
        block.extend_from_slice(raw);
        if block.len() == CHUNK * n {
            flush(&mut block);
        }
    });
    flush(&mut block);

    let fingerprint_count = Nat::from(seen.len());
    let witness = match collision {
        None => None,
        Some((first, second)) => {
            let first = enumerate_orbits_bounded(spec, n, cfg.orbit_bound)?
                .nth(first as usize)
                .expect("ordinal within orbit stream");
            let second = to_rep(&second);
            // Exact recheck of the colliding pair.
            let (a, b) = (
                esym_all(first.entries(), spec),
                esym_all(second.entries(), spec),
            );
            if first == second || t.indices().iter().any(|&i| a[i - 1] != b[i - 1]) {
                return Err(Error::Internal(format!(
                    "spurious fingerprint collision between {first} and {second}"
                )));
            }
            Some((first, second))
        }
    };
    Ok(SeparationVerdict {
        separating: witness.is_none(),
        witness,
        orbit_count,
        fingerprint_count,
    })
}

/// All elementary symmetric values of every orbit on `F_q^n`, precomputed for
/// repeated separation queries against different index sets.
#[derive(Debug, Clone)]
pub struct EsymTable {
    n: usize,
    q: u32,
    /// Row-major: `values[o * n + (t - 1)] = s_t(orbit o)`.
    values: Vec<u32>,
    orbits: usize,
}

impl EsymTable {
    pub fn build(spec: &FieldSpec, n: usize, orbit_bound: u64) -> Result<Self> {
        let mut values = Vec::new();
        let mut coeffs = vec![0u32; n + 1];
        let mut orbits = 0;
        enumerate_orbits_bounded(spec, n, orbit_bound)?.for_each_raw(|raw| {
            esym_into(raw.iter().copied(), spec, &mut coeffs);
            values.extend_from_slice(&coeffs[1..]);
            orbits += 1;
        });
        Ok(EsymTable {
            n,
            q: spec.q(),
            values,
            orbits,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits
    }

    /// Ordinals `(first, second)` of the first fingerprint collision, if any.
    pub fn first_collision(&self, t: &IndexSet) -> Option<(usize, usize)> {
        let codec = KeyCodec::new(self.q, t.len());
        let mut seen = HashMap::with_capacity(self.orbits);
        for (o, row) in self.values.chunks_exact(self.n).enumerate() {
            let key = codec.key(t.indices().iter().map(|&i| row[i - 1]));
            if let Some(&first) = seen.get(&key) {
                return Some((first, o));
            }
            seen.insert(key, o);
        }
        None
    }

    pub fn separates(&self, t: &IndexSet) -> bool {
        self.first_collision(t).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// Every `t` whose removal leaves a separating set.
    pub redundant: Vec<usize>,
}

/// Whether a separating `T` is minimal under inclusion.
pub fn check_minimal(spec: &FieldSpec, n: usize, t: &IndexSet) -> Result<MinimalityReport> {
    check_minimal_with(spec, n, t, &SearchConfig::default())
}

pub fn check_minimal_with(
    spec: &FieldSpec,
    n: usize,
    t: &IndexSet,
    cfg: &SearchConfig,
) -> Result<MinimalityReport> {
    validate(n, t)?;
    let table = EsymTable::build(spec, n, cfg.orbit_bound)?;
    if !table.separates(t) {
        return param(format!(
            "index set {t} is not separating for q = {}, n = {n}",
            spec.q()
        ));
    }
    let redundant: Vec<usize> = t
        .indices()
        .iter()
        .copied()
        .filter(|&i| table.separates(&t.without(i)))
        .collect();
    Ok(MinimalityReport {
        minimal: redundant.is_empty(),
        redundant,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinSeparating {
    pub size: usize,
    /// Lexicographically first separating subset of that size.
    pub witness: IndexSet,
}

/// Smallest separating subset of `S(n)`, searching sizes upward from `gamma_q(n)`.
pub fn min_separating_size(spec: &FieldSpec, n: usize) -> Result<MinSeparating> {
    min_separating_size_with(spec, n, &SearchConfig::default())
}

pub fn min_separating_size_with(
    spec: &FieldSpec,
    n: usize,
    cfg: &SearchConfig,
) -> Result<MinSeparating> {
    if n == 0 {
        return param("dimension n must be at least 1");
    }
    if n > cfg.subset_dim_bound {
        return Err(Error::Scale {
            what: "subset search dimension",
            value: n.to_string(),
            bound: cfg.subset_dim_bound.to_string(),
        });
    }
    let table = EsymTable::build(spec, n, cfg.orbit_bound)?;
    let start = gamma(spec.q() as u64, n as u64)? as usize;
    for size in start..=n {
        for combo in (1..=n).combinations(size) {
            let t = IndexSet::new(combo, n)?;
            if table.separates(&t) {
                return Ok(MinSeparating { size, witness: t });
            }
        }
    }
    Err(Error::Internal(format!(
        "S({n}) does not separate the orbits of F_{}^{n}",
        spec.q()
    )))
}

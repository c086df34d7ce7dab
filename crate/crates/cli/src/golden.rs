//! The shipped reference table of `chi_q` ranges.

use anyhow::{bail, Context, Result};

pub const CHI_GOLDEN: &str = include_str!("../data/chi_golden.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenRange {
    pub q_lo: u64,
    pub q_hi: u64,
    pub chi: u64,
}

pub fn parse(text: &str) -> Result<Vec<GoldenRange>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(l) if l.trim() == crate::output::CSV_VERSION_LINE => {}
        other => bail!("golden table: expected version line, got {other:?}"),
    }
    match lines.next() {
        Some(l) if l.trim() == "q_lo,q_hi,chi" => {}
        other => bail!("golden table: unexpected header {other:?}"),
    }
    let mut out: Vec<GoldenRange> = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 3 {
            bail!("golden table: malformed row {line:?}");
        }
        let num = |s: &str| {
            s.parse::<u64>()
                .with_context(|| format!("golden table: bad number {s:?}"))
        };
        let r = GoldenRange {
            q_lo: num(f[0])?,
            q_hi: num(f[1])?,
            chi: num(f[2])?,
        };
        if r.q_lo > r.q_hi || out.last().is_some_and(|p| p.q_hi >= r.q_lo) {
            bail!("golden table: ranges must be ordered and disjoint at {line:?}");
        }
        out.push(r);
    }
    Ok(out)
}

pub fn lookup(table: &[GoldenRange], q: u64) -> Option<u64> {
    table
        .iter()
        .find(|r| r.q_lo <= q && q <= r.q_hi)
        .map(|r| r.chi)
}

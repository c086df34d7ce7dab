use std::io::Write;

use rayon::prelude::*;
use serde_json::{json, Value};

use sepsym::chi::{chi_record, chi_table_with_tol, monotonicity_violations, ChiRecord};
use sepsym::esym::{esym_all, index_set_nq, IndexSet};
use sepsym::exactcount::{delta3, gamma, orbit_count, size_sq};
use sepsym::f3::{classify3, predicted_delta3};
use sepsym::gf::{make_field, prime_power, FieldSpec};
use sepsym::orbits::enumerate_orbits_bounded;
use sepsym::separating::{
    check_minimal_with, check_separating_with, min_separating_size_with, SearchConfig,
};

use crate::golden;
use crate::output::{big, Format, TableWriter};
use crate::{CliError, Command, Outcome, Preset};

/// Largest `q` accepted by `chi-table`.
pub const CHI_TABLE_Q_CAP: u64 = 1_000_000;

const DELTA3_CHUNK: u64 = 1 << 16;

pub struct Context {
    pub format: Format,
    pub jobs: usize,
    pub orbit_bound: u64,
}

impl Context {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            orbit_bound: self.orbit_bound,
            jobs: self.jobs,
            ..SearchConfig::default()
        }
    }
}

pub fn dispatch(cmd: Command, ctx: &Context, sink: Box<dyn Write>) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gamma { q, n, with_sq } => cmd_gamma(ctx, sink, q, n, with_sq),
        Command::Chi { q, tol } => cmd_chi(ctx, sink, q, tol),
        Command::ChiTable {
            q_min,
            q_max,
            tol,
            verify_golden,
        } => cmd_chi_table(ctx, sink, q_min, q_max, tol, verify_golden),
        Command::Delta3 {
            n_min,
            n_max,
            verify,
        } => cmd_delta3(ctx, sink, n_min, n_max, verify),
        Command::Classify3 { n, n_min, n_max } => {
            let (lo, hi) = match (n, n_min, n_max) {
                (Some(n), _, _) => (n, n),
                (None, Some(lo), Some(hi)) => (lo, hi),
                _ => {
                    return Err(CliError::Usage(
                        "give --n or both --n-min and --n-max".into(),
                    ))
                }
            };
            cmd_classify3(ctx, sink, lo, hi)
        }
        Command::CheckSep { q, n, t, preset } => cmd_check_sep(ctx, sink, q, n, t, preset),
        Command::Minsep { q, n } => cmd_minsep(ctx, sink, q, n),
        Command::Orbits { q, n } => cmd_orbits(ctx, sink, q, n),
    }
}

fn field_for(q: u64) -> Result<FieldSpec, CliError> {
    let (p, k) =
        prime_power(q).ok_or_else(|| CliError::Usage(format!("q = {q} is not a prime power")))?;
    Ok(make_field(p, k)?)
}

fn cmd_gamma(
    ctx: &Context,
    sink: Box<dyn Write>,
    q: u64,
    n: u64,
    with_sq: bool,
) -> Result<Outcome, CliError> {
    let g = gamma(q, n)?;
    let sq = match prime_power(q) {
        Some((p, _)) => Some(size_sq(q, p, n)?),
        None if with_sq => return Err(CliError::Usage(format!("q = {q} is not a prime power"))),
        None => None,
    };
    let mut w = TableWriter::new(
        sink,
        ctx.format,
        &[
            "q",
            "n",
            "orbits",
            "gamma",
            "size_S",
            "size_Sq",
            "delta",
            "s_n_optimal",
        ],
    );
    w.row(vec![
        json!(q),
        json!(n),
        big(&orbit_count(q, n)),
        json!(g),
        json!(n),
        sq.map_or(Value::Null, Value::from),
        sq.map_or(Value::Null, |s| Value::from(s as i64 - g as i64)),
        json!(g == n),
    ])?;
    w.finish()?;
    Ok(Outcome::Ok)
}

const CHI_COLUMNS: &[&str] = &["q", "chi", "x0_lo", "x0_hi", "x0_is_integer", "lnln_floor"];

fn chi_row(r: &ChiRecord) -> Vec<Value> {
    vec![
        json!(r.q),
        json!(r.chi),
        json!(r.x0_lo),
        json!(r.x0_hi),
        json!(r.x0_is_integer),
        json!(r.lower_bound),
    ]
}

fn cmd_chi(ctx: &Context, sink: Box<dyn Write>, q: u64, tol: f64) -> Result<Outcome, CliError> {
    let r = chi_record(q, tol)?;
    let mut w = TableWriter::new(sink, ctx.format, CHI_COLUMNS);
    w.row(chi_row(&r))?;
    w.finish()?;
    Ok(Outcome::Ok)
}

fn cmd_chi_table(
    ctx: &Context,
    sink: Box<dyn Write>,
    q_min: u64,
    q_max: u64,
    tol: f64,
    verify_golden: bool,
) -> Result<Outcome, CliError> {
    if q_max > CHI_TABLE_Q_CAP {
        return Err(CliError::Usage(format!(
            "--q-max {q_max} exceeds the cap {CHI_TABLE_Q_CAP}"
        )));
    }
    let records = chi_table_with_tol(q_min, q_max, tol)?;
    let mut w = TableWriter::new(sink, ctx.format, CHI_COLUMNS);
    for r in &records {
        w.row(chi_row(r))?;
    }
    w.finish()?;

    for (a, b) in monotonicity_violations(&records) {
        eprintln!("# finding: chi decreases between q = {a} and q = {b}");
    }
    let bound_failures: Vec<u64> = records
        .iter()
        .filter(|r| (r.chi as i64) < r.lower_bound)
        .map(|r| r.q)
        .collect();

    let mut outcome = Outcome::Ok;
    if !bound_failures.is_empty() {
        eprintln!("# lnln bound violated at q = {bound_failures:?}");
        outcome = Outcome::VerificationFailed;
    }
    if verify_golden {
        let table = golden::parse(golden::CHI_GOLDEN)?;
        let mut mismatches = Vec::new();
        let mut unchecked = 0usize;
        for r in &records {
            match golden::lookup(&table, r.q) {
                Some(chi) if chi != r.chi => mismatches.push((r.q, chi, r.chi)),
                Some(_) => {}
                None => unchecked += 1,
            }
        }
        if unchecked > 0 {
            eprintln!(
                "# {unchecked} values of q lie outside the golden table and were not verified"
            );
        }
        if mismatches.is_empty() {
            eprintln!("# golden: {} values verified", records.len() - unchecked);
        } else {
            eprintln!("# golden mismatches");
            eprintln!("q,expected_chi,actual_chi");
            for (q, expected, actual) in &mismatches {
                eprintln!("{q},{expected},{actual}");
            }
            outcome = Outcome::VerificationFailed;
        }
    }
    Ok(outcome)
}

fn cmd_delta3(
    ctx: &Context,
    sink: Box<dyn Write>,
    n_min: u64,
    n_max: u64,
    verify: bool,
) -> Result<Outcome, CliError> {
    if n_min < 2 || n_min > n_max {
        return Err(CliError::Usage(format!(
            "invalid n range [{n_min}, {n_max}]; need 2 <= n_min <= n_max"
        )));
    }
    let mut w = TableWriter::new(
        sink,
        ctx.format,
        &["n", "delta_exact", "delta_predicted", "kind"],
    );
    let (mut zeros, mut ones) = (0u64, 0u64);
    let mut mismatches = Vec::new();
    let mut start = n_min;
    while start <= n_max {
        let end = n_max.min(start.saturating_add(DELTA3_CHUNK - 1));
        let rows: Vec<(u64, u64, i32, &'static str)> = (start..=end)
            .into_par_iter()
            .map(|n| -> sepsym::Result<_> {
                let exact = delta3(n)?;
                let predicted = predicted_delta3(n)?;
                let kind = if n >= 9 {
                    classify3(n)?.kind.as_str()
                } else {
                    "small"
                };
                Ok((n, exact, predicted, kind))
            })
            .collect::<sepsym::Result<_>>()?;
        for (n, exact, predicted, kind) in rows {
            match exact {
                0 => zeros += 1,
                _ => ones += 1,
            }
            if exact as i64 != predicted as i64 {
                mismatches.push((n, exact, predicted));
            }
            w.row(vec![json!(n), json!(exact), json!(predicted), json!(kind)])?;
        }
        if end == n_max {
            break;
        }
        start = end + 1;
    }
    w.finish()?;
    eprintln!(
        "# delta3 summary: n in [{n_min}, {n_max}], delta=0: {zeros}, delta=1: {ones}, mismatches: {}",
        mismatches.len()
    );
    if verify && !mismatches.is_empty() {
        eprintln!("n,delta_exact,delta_predicted");
        for (n, e, p) in &mismatches {
            eprintln!("{n},{e},{p}");
        }
        return Ok(Outcome::VerificationFailed);
    }
    Ok(Outcome::Ok)
}

fn cmd_classify3(
    ctx: &Context,
    sink: Box<dyn Write>,
    lo: u64,
    hi: u64,
) -> Result<Outcome, CliError> {
    if lo > hi {
        return Err(CliError::Usage(format!("invalid n range [{lo}, {hi}]")));
    }
    let mut w = TableWriter::new(
        sink,
        ctx.format,
        &[
            "n",
            "r",
            "kind",
            "alpha",
            "beta",
            "delta",
            "predicted_delta",
        ],
    );
    for n in lo..=hi {
        let c = classify3(n)?;
        w.row(vec![
            json!(c.n),
            json!(c.r),
            json!(c.kind.as_str()),
            json!(c.alpha),
            json!(c.beta),
            json!(c.delta),
            json!(c.predicted_delta),
        ])?;
    }
    w.finish()?;
    Ok(Outcome::Ok)
}

fn cmd_check_sep(
    ctx: &Context,
    sink: Box<dyn Write>,
    q: u64,
    n: usize,
    t: Vec<usize>,
    preset: Option<Preset>,
) -> Result<Outcome, CliError> {
    let spec = field_for(q)?;
    let set = match preset {
        Some(Preset::Sq) => index_set_nq(n as u64, q, spec.p() as u64)?,
        Some(Preset::Full) => IndexSet::full(n),
        None => IndexSet::new(t, n)?,
    };
    let v = check_separating_with(&spec, n, &set, &ctx.search())?;
    let (wa, wb) = match &v.witness {
        Some((a, b)) => (json!(a.to_string()), json!(b.to_string())),
        None => (Value::Null, Value::Null),
    };
    let mut w = TableWriter::new(
        sink,
        ctx.format,
        &[
            "q",
            "n",
            "T",
            "separating",
            "orbit_count",
            "fingerprint_count",
            "witness_a",
            "witness_b",
        ],
    );
    w.row(vec![
        json!(q),
        json!(n),
        json!(set.to_string()),
        json!(v.separating),
        big(&v.orbit_count),
        big(&v.fingerprint_count),
        wa,
        wb,
    ])?;
    w.finish()?;
    Ok(if v.separating {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn cmd_minsep(ctx: &Context, sink: Box<dyn Write>, q: u64, n: usize) -> Result<Outcome, CliError> {
    let spec = field_for(q)?;
    let cfg = ctx.search();
    let m = min_separating_size_with(&spec, n, &cfg)?;
    let g = gamma(q, n as u64)?;
    let sq = index_set_nq(n as u64, q, spec.p() as u64)?;
    let report = check_minimal_with(&spec, n, &sq, &cfg)?;
    let mut w = TableWriter::new(
        sink,
        ctx.format,
        &[
            "q",
            "n",
            "min_size",
            "gamma",
            "equal",
            "witness",
            "sq",
            "sq_minimal",
            "sq_redundant",
        ],
    );
    let redundant = IndexSet::new(report.redundant.iter().copied(), n)?;
    w.row(vec![
        json!(q),
        json!(n),
        json!(m.size),
        json!(g),
        json!(m.size as u64 == g),
        json!(m.witness.to_string()),
        json!(sq.to_string()),
        json!(report.minimal),
        json!(redundant.to_string()),
    ])?;
    w.finish()?;
    Ok(Outcome::Ok)
}

fn cmd_orbits(ctx: &Context, sink: Box<dyn Write>, q: u64, n: usize) -> Result<Outcome, CliError> {
    let spec = field_for(q)?;
    let mut w = TableWriter::new(sink, ctx.format, &["orbit", "esym"]);
    for o in enumerate_orbits_bounded(&spec, n, ctx.orbit_bound)? {
        let s: Vec<String> = esym_all(o.entries(), &spec)
            .iter()
            .map(|e| e.to_string())
            .collect();
        w.row(vec![
            json!(o.to_string()),
            json!(format!("({})", s.join(","))),
        ])?;
    }
    w.finish()?;
    Ok(Outcome::Ok)
}

//! Cross-checks: enumerate normal-form patterns for the built-in families
//! and compare the zero-pattern sets against the closed-form predictors.
//! Sweeps run case-parallel with rayon when the `parallel` feature is on;
//! a sequential runner is always available for comparison.

use std::collections::BTreeSet;
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::diagram::build_diagram;
use crate::exact::scalar::{format_scalar, frac, int, Scalar};
use crate::families;
use crate::normal_form::enumerate_normal_forms;
use crate::Result;

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub ok: bool,
    /// Pattern counts and, on mismatch, the differing zero-patterns.
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.cases.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> usize {
        self.cases.iter().filter(|c| !c.ok).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let status = if c.ok { "ok" } else { "MISMATCH" };
            writeln!(f, "{:8} {}: {}", status, c.name, c.detail)?;
        }
        write!(
            f,
            "{} cases, {} mismatches",
            self.cases.len(),
            self.mismatches()
        )
    }
}

/// Caps rayon's global pool to $LIEDIAG_THREADS when set. A no-op once any
/// rayon work has run, so call it first.
#[cfg(feature = "parallel")]
pub fn init_thread_pool() {
    if let Some(n) = std::env::var("LIEDIAG_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
pub fn init_thread_pool() {}

fn run_cases<I, F>(inputs: &[I], f: F, parallel: bool) -> Result<Vec<CaseResult>>
where
    I: Sync,
    F: Fn(&I) -> Result<CaseResult> + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return inputs.par_iter().map(&f).collect();
    }
    let _ = parallel;
    inputs.iter().map(&f).collect()
}

/// Renders a zero-pattern as its 1-based free coordinate set, e.g. "{1,5}".
fn fmt_mask(mask: &BTreeSet<usize>) -> String {
    let inner: Vec<String> = mask.iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn compare_sets(
    name: String,
    got: &BTreeSet<BTreeSet<usize>>,
    expected: &BTreeSet<BTreeSet<usize>>,
    conditioned: usize,
) -> CaseResult {
    if got == expected {
        // Some large cases attach a genericity condition to a pattern (its
        // vanishing locus reduces into another listed pattern); the
        // predictors speak about the zero-pattern sets, which must agree.
        let detail = if conditioned == 0 {
            format!("{} patterns", got.len())
        } else {
            format!("{} patterns ({conditioned} with genericity conditions)", got.len())
        };
        return CaseResult {
            name,
            ok: true,
            detail,
        };
    }
    let missing: Vec<String> = expected.difference(got).map(fmt_mask).collect();
    let extra: Vec<String> = got.difference(expected).map(fmt_mask).collect();
    let mut parts = vec![format!(
        "{} enumerated vs {} predicted",
        got.len(),
        expected.len()
    )];
    if !missing.is_empty() {
        parts.push(format!("missing: {}", missing.join(" ")));
    }
    if !extra.is_empty() {
        parts.push(format!("extra: {}", extra.join(" ")));
    }
    if conditioned != 0 {
        parts.push(format!("{conditioned} patterns carry conditions"));
    }
    CaseResult {
        name,
        ok: false,
        detail: parts.join("; "),
    }
}

/// Enumerates one family diagram and compares against a predicted set of
/// zero-patterns. The predictors describe condition-free patterns, so any
/// attached genericity condition is itself a mismatch.
fn check_against(
    name: String,
    d: &crate::diagram::Diagram,
    expected: &BTreeSet<BTreeSet<usize>>,
) -> Result<CaseResult> {
    let patterns = enumerate_normal_forms(d, false)?;
    let mut got = BTreeSet::new();
    let mut conditioned = 0;
    for p in &patterns {
        if !p.conditions.is_empty() {
            conditioned += 1;
        }
        got.insert(p.free_mask());
    }
    Ok(compare_sets(name, &got, expected, conditioned))
}

pub fn verify_witt(m_max: usize, n_max: usize, parallel: bool) -> Result<Report> {
    let mut inputs = Vec::new();
    for m in 0..=m_max {
        for n in (m + 1)..=n_max {
            inputs.push((m, n));
        }
    }
    let cases = run_cases(
        &inputs,
        |&(m, n)| {
            let d = build_diagram(&families::witt_coadjoint(m, n)?, None);
            let expected = families::predicted_witt_patterns(m, n);
            check_against(format!("witt m={m} n={n}"), &d, &expected)
        },
        parallel,
    )?;
    Ok(Report { cases })
}

/// The standard sweep grid: lambda in {-1, 0, 1/2, 1, 2}, mu in {-2..4},
/// m up to 1, truncation length N up to 8.
pub fn default_tensor_grid() -> (Vec<Scalar>, Vec<Scalar>, usize, usize) {
    let lambdas = vec![int(-1), int(0), frac(1, 2), int(1), int(2)];
    let mus = (-2..=4).map(int).collect();
    (lambdas, mus, 1, 8)
}

pub fn verify_tensor(
    lambdas: &[Scalar],
    mus: &[Scalar],
    m_max: usize,
    n_max: usize,
    parallel: bool,
) -> Result<Report> {
    let mut inputs = Vec::new();
    for lambda in lambdas {
        for mu in mus {
            for m in 0..=m_max {
                for cap in 1..=n_max {
                    inputs.push((lambda.clone(), mu.clone(), m, cap));
                }
            }
        }
    }
    let cases = run_cases(
        &inputs,
        |(lambda, mu, m, cap)| {
            let d = build_diagram(&families::tensor_field(lambda, mu, *m, *cap)?, None);
            let expected = families::predicted_tensor_patterns(lambda, mu, *m, *cap);
            let name = format!(
                "tensor lambda={} mu={} m={m} N={cap}",
                format_scalar(lambda),
                format_scalar(mu)
            );
            check_against(name, &d, &expected)
        },
        parallel,
    )?;
    Ok(Report { cases })
}

/// The complete list of normal-form zero-patterns for the coadjoint module
/// of strictly upper triangular 4x4 matrices, as free coordinate sets in the
/// canonical order (x_1 = position 0).
pub fn upper4_expected_masks() -> BTreeSet<BTreeSet<usize>> {
    let one_based: [&[usize]; 16] = [
        &[1, 5],
        &[1],
        &[2, 4, 6],
        &[2, 4],
        &[2, 6],
        &[2],
        &[3, 4],
        &[3, 5, 6],
        &[3, 5],
        &[3, 6],
        &[3],
        &[4],
        &[5, 6],
        &[5],
        &[6],
        &[],
    ];
    one_based
        .iter()
        .map(|m| m.iter().map(|p| p - 1).collect())
        .collect()
}

/// Checks the coadjoint enumeration for strictly upper triangular (n+... )
/// matrices: n=4 against the known 16-pattern list, larger n against the
/// claim that no pattern needs a polynomial condition.
pub fn verify_upper(n: usize) -> Result<Report> {
    let d = build_diagram(&families::upper_coadjoint(n)?, None);
    let patterns = enumerate_normal_forms(&d, false)?;
    let mut got = BTreeSet::new();
    let mut conditioned = 0;
    for p in &patterns {
        if !p.conditions.is_empty() {
            conditioned += 1;
        }
        got.insert(p.free_mask());
    }
    let case = if n == 4 {
        let expected = upper4_expected_masks();
        let mut c = compare_sets("upper n=4".into(), &got, &expected, conditioned);
        if c.ok {
            c.detail = format!("{}/{} patterns matched", got.len(), expected.len());
        }
        c
    } else if conditioned == 0 {
        CaseResult {
            name: format!("upper n={n}"),
            ok: true,
            detail: format!("{} patterns, all condition-free", got.len()),
        }
    } else {
        CaseResult {
            name: format!("upper n={n}"),
            ok: false,
            detail: format!(
                "{} of {} patterns carry polynomial conditions",
                conditioned,
                got.len()
            ),
        }
    };
    Ok(Report { cases: vec![case] })
}

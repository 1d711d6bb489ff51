//! Self-verification suites run by `gctlab verify`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::Value;

use gctlab_core::gct::{find_separating_rho_n2, verify_certificate};
use gctlab_core::kron::{kronecker, rw_four_row, rw_two_row, Method};
use gctlab_core::lrbranch::{gl_branch, levi_restrict};
use gctlab_core::schar::kronecker_oracle;
use gctlab_core::{Error, Partition, Result};

use crate::cache::CachedCharacters;
use crate::output::{CertificateOutput, Check, SuiteReport};

pub const SUITES: [&str; 7] = ["rw", "four-row", "parity", "psl2", "plethysm", "branching", "symmetry"];

/// Failure messages kept per check.
const MAX_REPORTED: usize = 20;

/// `Ok(None)` is a pass, `Ok(Some(msg))` a mismatch; errors count as failures.
fn run_check<T, F>(name: String, items: &[T], f: F) -> Check
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync,
{
    let outcomes: Vec<Option<String>> = items
        .par_iter()
        .map(|item| match f(item) {
            Ok(r) => r,
            Err(e) => Some(e.to_string()),
        })
        .collect();
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    let mut reported = failures.clone();
    if reported.len() > MAX_REPORTED {
        reported.truncate(MAX_REPORTED);
        reported.push(format!("... {} more", failures.len() - MAX_REPORTED));
    }
    Check {
        name,
        passed: failures.is_empty(),
        cases: items.len() as u64,
        failures: reported,
        details: Vec::new(),
    }
}

fn report(suite: &str, checks: Vec<Check>) -> SuiteReport {
    SuiteReport {
        suite: suite.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn triples(parts: &[Partition]) -> Vec<(Partition, Partition, Partition)> {
    let mut out = Vec::with_capacity(parts.len().pow(3));
    for a in parts {
        for b in parts {
            for c in parts {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// Two-row closed form against the oracle, every ordered triple, `m ≤ 12`.
pub fn rw(src: &CachedCharacters) -> SuiteReport {
    let checks = (1..=12)
        .map(|m| {
            let items = triples(&Partition::enumerate(m, Some(2)));
            run_check(format!("two_row_m{m}"), &items, |(a, b, c)| {
                let closed = rw_two_row(a, b, c)?;
                let oracle = kronecker_oracle(src, a, b, c)?;
                Ok((closed != oracle).then(|| format!("({a}) ({b}) ({c}): closed form {closed}, oracle {oracle}")))
            })
        })
        .collect();
    report("rw", checks)
}

/// Four-row closed form against the oracle on every in-domain instance, `m ≤ 12`.
pub fn four_row(src: &CachedCharacters) -> SuiteReport {
    let checks = (4..=12)
        .map(|m| {
            let two = Partition::enumerate(m, Some(2));
            let mut items = Vec::new();
            for four in Partition::enumerate(m, Some(4)).into_iter().filter(|p| p.height() == 4 && p.part(2) == p.part(3)) {
                for a in &two {
                    for b in &two {
                        let raw = rw_four_row(a, b, &four);
                        if !matches!(raw, Err(Error::ClosedFormInapplicable(_))) {
                            items.push((a.clone(), b.clone(), four.clone(), raw));
                        }
                    }
                }
            }
            run_check(format!("four_row_m{m}"), &items, |(a, b, c, raw)| {
                let raw = raw.clone()?;
                let oracle = kronecker_oracle(src, a, b, c)?;
                Ok((raw != oracle as i64).then(|| format!("({a}) ({b}) ({c}): closed form {raw}, oracle {oracle}")))
            })
        })
        .collect();
    report("four-row", checks)
}

/// `W_ρ ⊂ W_δ ⊗ W_δ` for `δ = (m/2, m/2)` and two-row `ρ` iff `ρ₂` is even.
pub fn parity(src: &CachedCharacters) -> SuiteReport {
    let checks = (4..=12)
        .step_by(2)
        .map(|m| {
            let delta = Partition::rectangle(m / 2, 2);
            let items = Partition::enumerate(m, Some(2));
            run_check(format!("parity_m{m}"), &items, |rho| {
                let occurs = kronecker_oracle(src, &delta, &delta, rho)? > 0;
                let expected = rho.part(1) % 2 == 0;
                Ok((occurs != expected).then(|| format!("ρ = ({rho}): occurs = {occurs}, ρ₂ even = {expected}")))
            })
        })
        .collect();
    report("parity", checks)
}

/// Nontrivial pairs of even row shapes with `|λ| + |μ| ≤ limit`.
pub fn even_row_pairs(limit: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for a in (0..=limit).step_by(2) {
        for b in (0..=limit - a).step_by(2) {
            if a + b > 0 {
                out.push((Partition::row(a), Partition::row(b)));
            }
        }
    }
    out
}

/// `n = 2` separability certificates for every even row pair, `|λ|+|μ| ≤ 8`.
pub fn psl2(src: &CachedCharacters) -> SuiteReport {
    let pairs = even_row_pairs(8);
    let results: Vec<Result<CertificateOutput>> = pairs
        .par_iter()
        .map(|(l, m)| {
            let cert = find_separating_rho_n2(src, l, m)?;
            verify_certificate(src, &cert)?;
            Ok(CertificateOutput::from(&cert))
        })
        .collect();
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for ((l, m), r) in pairs.iter().zip(results) {
        match r {
            Ok(c) => details.push(serde_json::to_value(c).expect("certificate serializes")),
            Err(e) => failures.push(format!("λ = ({l}), μ = ({m}): {e}")),
        }
    }
    let check = Check {
        name: "certificates".into(),
        passed: failures.is_empty(),
        cases: pairs.len() as u64,
        failures,
        details,
    };
    report("psl2", vec![check])
}

fn expected_sym2(m: usize) -> Vec<(Partition, u64)> {
    (0..=m)
        .step_by(2)
        .map(|i| (Partition::new(vec![2 * m - i, i]).expect("two-row shape"), 1))
        .collect()
}

/// `Sym²(Sym^m)` for `m ≤ 6` and the dimension identity for `d·m ≤ 12`.
pub fn plethysm(src: &CachedCharacters) -> SuiteReport {
    let ms: Vec<usize> = (1..=6).collect();
    let sym2 = run_check("sym2_m1_to_m6".into(), &ms, |&m| {
        let got: Vec<(Partition, u64)> = src.plethysm(2, m)?.iter().map(|(p, c)| (p.clone(), c)).collect();
        let mut want = expected_sym2(m);
        want.sort_by(|a, b| b.0.cmp(&a.0));
        Ok((got != want).then(|| format!("Sym^2(Sym^{m}) = {got:?}")))
    });
    let dm: Vec<(usize, usize)> = (1..=12usize)
        .flat_map(|d| (1..=12 / d).map(move |m| (d, m)))
        .collect();
    let dims = run_check("dimension_identity_dm_le_12".into(), &dm, |&(d, m)| {
        let n = d * m;
        let lhs: BigUint = src
            .plethysm(d, m)?
            .iter()
            .map(|(p, c)| p.gl_dimension(n) * BigUint::from(c))
            .sum();
        let inner = usize::try_from(&Partition::row(m).gl_dimension(n)).map_err(|_| Error::Overflow("dim Sym^m"))?;
        let rhs = Partition::row(d).gl_dimension(inner);
        Ok((lhs != rhs).then(|| format!("d={d} m={m}: Σ coeff·dim = {lhs}, binomial = {rhs}")))
    });
    report("plethysm", vec![sym2, dims])
}

/// `Σ mult·dim = dim(source)` for sizes `≤ 8` and ranks `≤ 4`.
pub fn branching(_src: &CachedCharacters) -> SuiteReport {
    let mut gl_items = Vec::new();
    let mut levi_items = Vec::new();
    for size in 0..=8 {
        for rank in 1..=4 {
            for lam in Partition::enumerate(size, Some(rank)) {
                gl_items.push((lam.clone(), rank));
                for k in 1..rank {
                    levi_items.push((lam.clone(), k, rank - k));
                }
            }
        }
    }
    let gl = run_check("gl_branch".into(), &gl_items, |(lam, rank)| {
        let r = gl_branch(lam, *rank, rank - 1)?;
        let total: BigUint = r.entries.iter().map(|(p, m)| p.gl_dimension(rank - 1) * BigUint::from(*m)).sum();
        let want = lam.gl_dimension(*rank);
        Ok((total != want).then(|| format!("({lam}) GL_{rank} -> GL_{}: {total} != {want}", rank - 1)))
    });
    let levi = run_check("levi_restrict".into(), &levi_items, |(lam, k, l)| {
        let r = levi_restrict(lam, *k, *l)?;
        let total: BigUint = r
            .entries
            .iter()
            .map(|((a, b), m)| a.gl_dimension(*k) * b.gl_dimension(*l) * BigUint::from(*m))
            .sum();
        let want = lam.gl_dimension(k + l);
        Ok((total != want).then(|| format!("({lam}) GL_{} -> GL_{k} x GL_{l}: {total} != {want}", k + l)))
    });
    report("branching", vec![gl, levi])
}

/// Kronecker symmetry under all argument permutations and the sign twist
/// `c(α', β', γ) = c(α, β, γ)`, every triple with `m ≤ 8`.
pub fn symmetry(src: &CachedCharacters) -> SuiteReport {
    let checks = (1..=8)
        .map(|m| {
            let parts = Partition::enumerate(m, None);
            let items = triples(&parts);
            run_check(format!("symmetry_m{m}"), &items, |(a, b, c)| {
                let k = |x: &Partition, y: &Partition, z: &Partition| -> Result<u64> {
                    Ok(kronecker(src, x, y, z, Method::Auto, false)?.value)
                };
                let base = k(a, b, c)?;
                let others = [
                    k(a, c, b)?,
                    k(b, a, c)?,
                    k(b, c, a)?,
                    k(c, a, b)?,
                    k(c, b, a)?,
                    k(&a.conjugate(), &b.conjugate(), c)?,
                ];
                Ok(others
                    .iter()
                    .any(|&v| v != base)
                    .then(|| format!("({a}) ({b}) ({c}): {base} vs {others:?}")))
            })
        })
        .collect();
    report("symmetry", checks)
}

pub fn run(name: &str, src: &CachedCharacters) -> Option<SuiteReport> {
    Some(match name {
        "rw" => rw(src),
        "four-row" => four_row(src),
        "parity" => parity(src),
        "psl2" => psl2(src),
        "plethysm" => plethysm(src),
        "branching" => branching(src),
        "symmetry" => symmetry(src),
        _ => return None,
    })
}

/// Suite reports for `name`, which may be `all`.
pub fn run_named(name: &str, src: &CachedCharacters) -> Option<Vec<SuiteReport>> {
    if name == "all" {
        Some(SUITES.iter().map(|s| run(s, src).expect("known suite")).collect())
    } else {
        run(name, src).map(|r| vec![r])
    }
}

/// Certificates from a psl2 report, in pair order.
pub fn certificates(report: &SuiteReport) -> Vec<Value> {
    report.checks.iter().flat_map(|c| c.details.iter().cloned()).collect()
}

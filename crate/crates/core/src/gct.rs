//! Obstruction filters for the determinant orbit closure and
//! `G`-separability certificates.
//!
//! Only necessary conditions are implemented: a partition that survives
//! [`strong_obstruction_candidates`] is a candidate, not a proven
//! obstruction. Occurrence in the coordinate ring of the orbit closure
//! itself is approximated by occurrence in the ambient `Sym^d(Sym^m)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::kron::{kronecker, Method};
use crate::lrbranch::{gl_branch, is_sl_trivial};
use crate::partition::Partition;
use crate::plethysm::{plethysm_sym_sym, SchurExpansion, PLETHYSM_CEILING};
use crate::schar::{kronecker_oracle, CharacterSource, ORACLE_CEILING};

/// Classification of one `λ ⊢ m·d` against the implemented filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCandidate {
    pub lambda: Partition,
    pub d: usize,
    pub m: usize,
    pub n: usize,
    /// `λ` occurs in `Sym^d(Sym^m)` and fits in `GL_{m²}`.
    pub passes_ambient: bool,
    /// `height(λ) ≤ n² + 1`.
    pub passes_height: bool,
    /// `k^λ_{(d^m),(d^m)}`; zero means no `det^d`-line under `GL_m × GL_m`.
    pub det_coefficient: u64,
    pub is_candidate: bool,
}

/// Multiplicity of the `det^d` line type of `GL_m × GL_m` inside
/// `V_λ(GL_{m²})`, i.e. the Kronecker coefficient `c_{(d^m),(d^m),λ}`.
pub fn det_admissible_coefficient<S: CharacterSource + ?Sized>(
    src: &S,
    lambda: &Partition,
    d: usize,
    m: usize,
) -> Result<u64> {
    if lambda.size() != m * d {
        return Err(Error::size(format!(
            "|({lambda})| = {} but m·d = {}",
            lambda.size(),
            m * d
        )));
    }
    let block = Partition::rectangle(d, m);
    Ok(kronecker(src, &block, &block, lambda, Method::Auto, false)?.value)
}

/// Height bound for the permanent side: at most `n² + 1` rows.
pub fn perm_side_height_ok(lambda: &Partition, n: usize, m: usize, d: usize) -> bool {
    lambda.size() == m * d && lambda.height() <= n * n + 1
}

fn check_driver_args(n: usize, m: usize, d: usize) -> Result<()> {
    if n == 0 || m == 0 || d == 0 {
        return Err(Error::invalid("n, m and d must be positive"));
    }
    if m * d > PLETHYSM_CEILING {
        return Err(Error::ResourceLimit {
            what: "obstruction degree m*d",
            value: m * d,
            limit: PLETHYSM_CEILING,
        });
    }
    Ok(())
}

/// Runs every filter on a single `λ`, given the ambient expansion.
pub fn classify<S: CharacterSource + ?Sized>(
    src: &S,
    lambda: &Partition,
    n: usize,
    m: usize,
    d: usize,
    ambient: &SchurExpansion,
) -> Result<ObstructionCandidate> {
    let passes_ambient = ambient.contains(lambda) && lambda.height() <= m * m;
    let passes_height = perm_side_height_ok(lambda, n, m, d);
    let det_coefficient = det_admissible_coefficient(src, lambda, d, m)?;
    Ok(ObstructionCandidate {
        lambda: lambda.clone(),
        d,
        m,
        n,
        passes_ambient,
        passes_height,
        det_coefficient,
        is_candidate: passes_ambient && passes_height && det_coefficient == 0,
    })
}

/// Classifies every `λ ⊢ m·d`, in decreasing lex order.
pub fn classify_all<S: CharacterSource + ?Sized>(
    src: &S,
    n: usize,
    m: usize,
    d: usize,
) -> Result<Vec<ObstructionCandidate>> {
    check_driver_args(n, m, d)?;
    let ambient = plethysm_sym_sym(src, d, m)?;
    Partition::enumerate(m * d, None)
        .iter()
        .map(|lambda| classify(src, lambda, n, m, d, &ambient))
        .collect()
}

/// Partitions passing every implemented necessary condition for a strong
/// obstruction separating the `n×n` permanent from the `m×m` determinant
/// orbit closure in degree `d`.
pub fn strong_obstruction_candidates<S: CharacterSource + ?Sized>(
    src: &S,
    n: usize,
    m: usize,
    d: usize,
) -> Result<Vec<ObstructionCandidate>> {
    Ok(classify_all(src, n, m, d)?
        .into_iter()
        .filter(|c| c.is_candidate)
        .collect())
}

/// Which construction produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CaseTag {
    /// Both rows nonzero: a two-row `ρ` with odd second row.
    Case1,
    /// One row empty, half the other odd: `ρ = (m - λ/2, λ/2)`.
    Case2,
    /// One row empty, half the other even.
    Case3,
    /// `|λ| ≢ 0 (mod n)`: no rectangle of height `n` has size `m`.
    NonzeroModN,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::NonzeroModN => "nonzero_mod_n",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Witness that `V_ρ(SL_{n²})` contains `V_λ(SL_n) ⊗ V_μ(SL_n)` but no
/// `SL_n × SL_n` invariant: `c_{λ(m),μ(m),ρ} ≥ 1` and `c_{δ,δ,ρ} = 0` for
/// the height-`n` rectangle `δ ⊢ m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityCertificate {
    pub lambda: Partition,
    pub mu: Partition,
    pub n: usize,
    pub m_used: usize,
    pub rho: Partition,
    pub coeff_target: u64,
    pub coeff_rect: u64,
    pub case_tag: CaseTag,
}

/// Extra even degrees tried beyond the first admissible one.
const MAX_RETRIES: usize = 4;

/// Recomputes both coefficients with the character oracle and checks every
/// structural invariant of the certificate.
pub fn verify_certificate<S: CharacterSource + ?Sized>(src: &S, cert: &SeparabilityCertificate) -> Result<()> {
    let fail = |msg: alloc::string::String| Err(Error::VerificationFailed(msg));
    let n = cert.n;
    let m = cert.m_used;
    let (a, b) = (cert.lambda.size(), cert.mu.size());
    if n < 2 || a % n != m % n || b % n != m % n {
        return fail(format!("m = {m} is not congruent to |λ| = {a}, |μ| = {b} mod {n}"));
    }
    if cert.case_tag != CaseTag::NonzeroModN && m < 4 * (a + b) {
        return fail(format!("m = {m} is below 4(|λ|+|μ|) = {}", 4 * (a + b)));
    }
    if cert.rho.size() != m || cert.rho.height() > n * n {
        return fail(format!("ρ = ({}) is not a GL_{} weight of size {m}", cert.rho, n * n));
    }
    let lam = cert.lambda.pad_columns(n, m)?;
    let mu = cert.mu.pad_columns(n, m)?;
    let target = kronecker_oracle(src, &lam, &mu, &cert.rho)?;
    if target == 0 || target != cert.coeff_target {
        return fail(format!(
            "c(({lam}),({mu}),({})) = {target}, certificate claims {}",
            cert.rho, cert.coeff_target
        ));
    }
    let rect = if m.is_multiple_of(n) {
        let delta = Partition::rectangle(m / n, n);
        kronecker_oracle(src, &delta, &delta, &cert.rho)?
    } else {
        0
    };
    if rect != 0 || rect != cert.coeff_rect {
        return fail(format!(
            "rectangle coefficient for ρ = ({}) is {rect}, certificate claims {}",
            cert.rho, cert.coeff_rect
        ));
    }
    Ok(())
}

fn row_length(p: &Partition, name: &str) -> Result<usize> {
    if p.height() > 1 {
        return Err(Error::invalid(format!("{name} = ({p}) is not a row shape")));
    }
    if !p.size().is_multiple_of(2) {
        return Err(Error::invalid(format!("{name} = ({p}) has odd size")));
    }
    Ok(p.size())
}

fn check_oracle_degree(m: usize) -> Result<()> {
    if m > ORACLE_CEILING {
        return Err(Error::ResourceLimit {
            what: "certificate degree m",
            value: m,
            limit: ORACLE_CEILING,
        });
    }
    Ok(())
}

/// `ρ` candidates for case 3 at degree `m`: first the four-row region
/// `(ρ₁,ρ₂,ρ₃,ρ₃)` with `ρ₂ - ρ₃` odd, `⌈(m/2+1)/2⌉ ≤ m/2 - ρ₂` and
/// `ρ₂ + ρ₃ < m/2`, in increasing `ρ₃` then `ρ₂`; then every other
/// `ρ ⊢ m` with at most four rows, decreasing lex.
fn case3_candidates(m: usize) -> Vec<Partition> {
    let half = m / 2;
    let bound = (half + 2) / 2; // ⌈(m/2 + 1)/2⌉
    let mut region = Vec::new();
    for r3 in 1..=m / 4 {
        let mut r2 = r3 + 1;
        while r2 + bound <= half && r2 + r3 < half {
            if let Some(r1) = m.checked_sub(r2 + 2 * r3) {
                if r1 >= r2 {
                    region.push(Partition::from_sorted_unchecked(vec![r1, r2, r3, r3]));
                }
            }
            r2 += 2;
        }
    }
    let rest: Vec<Partition> = Partition::enumerate(m, Some(4))
        .into_iter()
        .filter(|p| !region.contains(p))
        .collect();
    region.extend(rest);
    region
}

/// Certificate for the `n = 2` separability statement.
///
/// `λ` and `μ` are row shapes of even size, not both empty. The degree
/// starts at `m = 4(|λ| + |μ|)` and grows by 2 if no `ρ` verifies.
pub fn find_separating_rho_n2<S: CharacterSource + ?Sized>(
    src: &S,
    lambda: &Partition,
    mu: &Partition,
) -> Result<SeparabilityCertificate> {
    let a = row_length(lambda, "λ")?;
    let b = row_length(mu, "μ")?;
    if a == 0 && b == 0 {
        return Err(Error::invalid("(λ, μ) must be nontrivial"));
    }
    // c is symmetric, so normalise to |big| ≥ |small|
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    let case_tag = if small > 0 {
        CaseTag::Case1
    } else if (big / 2) % 2 == 1 {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    };
    let m0 = 4 * (a + b);
    for attempt in 0..=MAX_RETRIES {
        let m = m0 + 2 * attempt;
        check_oracle_degree(m)?;
        let candidates: Vec<Partition> = match case_tag {
            CaseTag::Case1 => {
                let lo = (big + small) / 2;
                let lo = if lo % 2 == 0 { lo + 1 } else { lo };
                let hi = m / 2 - big / 2;
                (lo..=hi)
                    .step_by(2)
                    .map(|r2| Partition::from_sorted_unchecked(vec![m - r2, r2]))
                    .collect()
            }
            CaseTag::Case2 => vec![Partition::from_sorted_unchecked(vec![m - big / 2, big / 2])],
            CaseTag::Case3 => case3_candidates(m),
            CaseTag::NonzeroModN => unreachable!(),
        };
        let lam = lambda.pad_columns(2, m)?;
        let mu_bar = mu.pad_columns(2, m)?;
        let delta = Partition::rectangle(m / 2, 2);
        for rho in candidates {
            let target = kronecker_oracle(src, &lam, &mu_bar, &rho)?;
            if target == 0 {
                continue;
            }
            let rect = kronecker_oracle(src, &delta, &delta, &rho)?;
            if rect != 0 {
                continue;
            }
            let cert = SeparabilityCertificate {
                lambda: lambda.clone(),
                mu: mu.clone(),
                n: 2,
                m_used: m,
                rho,
                coeff_target: target,
                coeff_rect: rect,
                case_tag,
            };
            verify_certificate(src, &cert)?;
            return Ok(cert);
        }
    }
    Err(Error::VerificationFailed(format!(
        "no separating ρ for λ = ({lambda}), μ = ({mu}) up to m = {}",
        m0 + 2 * MAX_RETRIES
    )))
}

/// Certificate when `|λ| ≡ |μ| ≢ 0 (mod n)`; the rectangle side is vacuous.
pub fn nonzero_mod_case<S: CharacterSource + ?Sized>(
    src: &S,
    lambda: &Partition,
    mu: &Partition,
    n: usize,
) -> Result<SeparabilityCertificate> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if lambda.height() >= n || mu.height() >= n {
        return Err(Error::invalid(format!("λ and μ must have fewer than {n} rows")));
    }
    let (a, b) = (lambda.size(), mu.size());
    if a % n != b % n || a % n == 0 {
        return Err(Error::invalid(format!(
            "need |λ| ≡ |μ| ≢ 0 (mod {n}), got {a} and {b}"
        )));
    }
    let mut m0 = a.max(b).max(n);
    while m0 % n != a % n {
        m0 += 1;
    }
    for attempt in 0..=MAX_RETRIES {
        let m = m0 + n * attempt;
        check_oracle_degree(m)?;
        let lam = lambda.pad_columns(n, m)?;
        let mu_bar = mu.pad_columns(n, m)?;
        for rho in Partition::enumerate(m, Some(n * n)) {
            let target = kronecker_oracle(src, &lam, &mu_bar, &rho)?;
            if target == 0 {
                continue;
            }
            let cert = SeparabilityCertificate {
                lambda: lambda.clone(),
                mu: mu.clone(),
                n,
                m_used: m,
                rho,
                coeff_target: target,
                coeff_rect: 0,
                case_tag: CaseTag::NonzeroModN,
            };
            verify_certificate(src, &cert)?;
            return Ok(cert);
        }
    }
    Err(Error::VerificationFailed(format!(
        "no ρ found for λ = ({lambda}), μ = ({mu}), n = {n}"
    )))
}

/// Restriction `GL_from ↓ GL_to` by repeated interlacing, with multiplicities.
pub fn restrict_gl(lambda: &Partition, from_rank: usize, to_rank: usize) -> Result<BTreeMap<Partition, u64>> {
    if to_rank > from_rank {
        return Err(Error::invalid(format!("cannot restrict GL_{from_rank} to GL_{to_rank}")));
    }
    let mut current: BTreeMap<Partition, u64> = BTreeMap::new();
    current.insert(lambda.clone(), 1);
    for r in ((to_rank + 1)..=from_rank).rev() {
        let mut next = BTreeMap::new();
        for (p, mult) in current {
            for (q, k) in gl_branch(&p, r, r - 1)?.entries {
                *next.entry(q).or_insert(0) += mult * k;
            }
        }
        current = next;
    }
    Ok(current)
}

/// A weight `μ` of `SL_n` whose restriction to `SL_k` contains `V_λ` but no
/// invariant, for `k > (n+1)/2`.
pub fn separating_weight_slk_in_sln(lambda: &Partition, k: usize, n: usize) -> Result<Partition> {
    if 2 * k <= n + 1 || k > n {
        return Err(Error::invalid(format!("need (n+1)/2 < k ≤ n, got k = {k}, n = {n}")));
    }
    let h = lambda.height();
    if lambda.is_empty() || h >= k {
        return Err(Error::invalid(format!(
            "λ = ({lambda}) must be nontrivial with height < {k}"
        )));
    }
    let mu = if h > n - k {
        lambda.clone()
    } else {
        let mut parts = lambda.parts().to_vec();
        parts.extend(core::iter::repeat_n(1, n - k - h + 1));
        Partition::new(parts)?
    };
    let restricted = restrict_gl(&mu, n, k)?;
    let has_lambda = restricted
        .keys()
        .any(|p| p.strip_full_columns(k).map(|q| &q == lambda).unwrap_or(false));
    let has_trivial = restricted.keys().any(|p| is_sl_trivial(p, k));
    if !has_lambda || has_trivial {
        return Err(Error::VerificationFailed(format!(
            "V_({mu})(SL_{n}) ↓ SL_{k}: contains λ = {has_lambda}, contains trivial = {has_trivial}"
        )));
    }
    Ok(mu)
}

/// The `H × H` module `V_λ ⊗ 1`: contains `V_λ` diagonally, no diagonal
/// invariant.
pub fn diagonal_separating_module(lambda: &Partition) -> Result<(Partition, Partition)> {
    if lambda.is_empty() {
        return Err(Error::invalid("λ must be nontrivial"));
    }
    Ok((lambda.clone(), Partition::empty()))
}

/// The family `V_{λ+β} ⊗ V_{β*}` for `H = SL_rank`, which also contains
/// `V_λ` diagonally.
pub fn diagonal_separating_module_with(
    lambda: &Partition,
    beta: &Partition,
    rank: usize,
) -> Result<(Partition, Partition)> {
    if lambda.is_empty() {
        return Err(Error::invalid("λ must be nontrivial"));
    }
    let delta = lambda.add_rows(beta);
    if delta.height() > rank {
        return Err(Error::invalid(format!("({delta}) does not fit in rank {rank}")));
    }
    Ok((delta, beta.sl_dual(rank)?))
}

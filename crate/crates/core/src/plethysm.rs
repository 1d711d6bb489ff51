//! Schur expansion of `h_d ∘ h_m`, the character of `Sym^d(Sym^m(Y))`.
//!
//! The plethysm is first expanded in power sums,
//!
//! ```text
//! h_d ∘ h_m = Σ_{μ ⊢ d} z_μ⁻¹ Π_i (p_{μ_i} ∘ h_m),   p_k ∘ h_m = Σ_{ν ⊢ m} z_ν⁻¹ p_{kν},
//! ```
//!
//! and then converted to Schur functions with `p_ρ = Σ_λ χ_λ(ρ) s_λ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schar::CharacterSource;

/// Largest `d·m` accepted by [`plethysm_sym_sym`].
pub const PLETHYSM_CEILING: usize = 18;

/// A finite non-negative combination of Schur functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    entries: BTreeMap<Partition, u64>,
}

impl SchurExpansion {
    /// Builds an expansion, dropping zero coefficients.
    pub fn from_entries(entries: impl IntoIterator<Item = (Partition, u64)>) -> Self {
        SchurExpansion {
            entries: entries.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    pub fn coefficient(&self, lambda: &Partition) -> u64 {
        self.entries.get(lambda).copied().unwrap_or(0)
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        self.coefficient(lambda) > 0
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in decreasing lexicographic order of the index.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> + '_ {
        self.entries.iter().rev().map(|(p, &c)| (p, c))
    }
}

type PowerSumPoly = BTreeMap<Partition, BigRational>;

fn merge_parts(a: &Partition, b: &Partition) -> Partition {
    let mut parts = a.parts().to_vec();
    parts.extend_from_slice(b.parts());
    Partition::from_unsorted(parts)
}

fn multiply(x: &PowerSumPoly, y: &PowerSumPoly) -> PowerSumPoly {
    let mut out = PowerSumPoly::new();
    for (px, cx) in x {
        for (py, cy) in y {
            let key = merge_parts(px, py);
            let entry = out.entry(key).or_insert_with(BigRational::zero);
            *entry += cx * cy;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn inv_z(p: &Partition) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p.z_factor()))
}

/// `p_k ∘ h_m` in power sums.
fn power_sum_of_h(k: usize, m: usize) -> PowerSumPoly {
    Partition::enumerate(m, None)
        .into_iter()
        .map(|nu| {
            let scaled = Partition::from_unsorted(nu.parts().iter().map(|&p| p * k).collect());
            (scaled, inv_z(&nu))
        })
        .collect()
}

/// Power-sum coefficients of `h_d ∘ h_m` (rational in general).
pub fn power_sum_expansion(d: usize, m: usize) -> BTreeMap<Partition, BigRational> {
    let mut factors: BTreeMap<usize, PowerSumPoly> = BTreeMap::new();
    let mut total = PowerSumPoly::new();
    for mu in Partition::enumerate(d, None) {
        let mut term = PowerSumPoly::new();
        term.insert(Partition::empty(), inv_z(&mu));
        for &k in mu.parts() {
            let factor = factors.entry(k).or_insert_with(|| power_sum_of_h(k, m));
            term = multiply(&term, factor);
        }
        for (p, c) in term {
            *total.entry(p).or_insert_with(BigRational::zero) += c;
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

/// Schur expansion of `Sym^d(Sym^m)`.
pub fn plethysm_sym_sym<S: CharacterSource + ?Sized>(src: &S, d: usize, m: usize) -> Result<SchurExpansion> {
    if d == 0 || m == 0 {
        return Err(Error::invalid("plethysm needs d >= 1 and m >= 1"));
    }
    let n = d * m;
    if n > PLETHYSM_CEILING {
        return Err(Error::ResourceLimit {
            what: "plethysm degree d*m",
            value: n,
            limit: PLETHYSM_CEILING,
        });
    }
    let info = src.class_info(n)?;
    let coeffs: Vec<(usize, BigRational)> = power_sum_expansion(d, m)
        .into_iter()
        .map(|(rho, c)| {
            let i = info.index_of(&rho).expect("power-sum index is a partition of d*m");
            (i, c)
        })
        .collect();
    let mut entries = Vec::new();
    for lambda in Partition::enumerate(n, None) {
        let row = src.row(&lambda)?;
        let mut acc = BigRational::zero();
        for (i, c) in &coeffs {
            if row[*i] != 0 {
                acc += c * BigRational::from_integer(BigInt::from(row[*i]));
            }
        }
        if !acc.is_integer() {
            return Err(Error::VerificationFailed(format!(
                "Schur coefficient of ({lambda}) in Sym^{d}(Sym^{m}) is not an integer"
            )));
        }
        let value = acc.to_integer();
        if value.is_negative() {
            return Err(Error::VerificationFailed(format!(
                "Schur coefficient of ({lambda}) in Sym^{d}(Sym^{m}) is negative"
            )));
        }
        let value = value.to_u64().ok_or(Error::Overflow("plethysm coefficient"))?;
        if value > 0 {
            entries.push((lambda, value));
        }
    }
    Ok(SchurExpansion::from_entries(entries))
}

/// Whether `λ` occurs in `Sym^d(Sym^m)`; partitions of the wrong size never do.
pub fn occurs_in_ambient<S: CharacterSource + ?Sized>(src: &S, lambda: &Partition, d: usize, m: usize) -> Result<bool> {
    if lambda.size() != d * m {
        return Ok(false);
    }
    Ok(plethysm_sym_sym(src, d, m)?.contains(lambda))
}

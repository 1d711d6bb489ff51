//! Characters of the symmetric group.
//!
//! Values come from the Murnaghan–Nakayama rule on beta-sets (abacus
//! positions): removing a border strip of length `r` moves one bead down by
//! `r`, with sign `(-1)^(beads jumped)`. The recursion is memoised on
//! `(beta-set, remaining cycle lengths)`.
//!
//! [`kronecker_oracle`] is the triple inner product
//! `(1/m!) Σ_μ |C_μ| χ_α(μ) χ_β(μ) χ_γ(μ)`, the reference every closed form
//! in the crate is checked against.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest `n` for which a whole [`CharacterTable`] is built (class sizes
/// must fit in `u64`).
pub const TABLE_CEILING: usize = 20;

/// Largest degree the row-based oracle accepts.
pub const ORACLE_CEILING: usize = 40;

/// Conjugacy classes of `S_n` in decreasing lexicographic order, with their
/// sizes `n!/z_μ`.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    degree: usize,
    classes: Vec<Partition>,
    sizes: Vec<BigUint>,
    factorial: BigUint,
    index: BTreeMap<Partition, usize>,
}

impl ClassInfo {
    pub fn new(degree: usize) -> Result<Self> {
        if degree > ORACLE_CEILING {
            return Err(Error::ResourceLimit {
                what: "symmetric group degree",
                value: degree,
                limit: ORACLE_CEILING,
            });
        }
        let classes = Partition::enumerate(degree, None);
        let factorial = (1..=degree).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
        let sizes = classes.iter().map(|mu| &factorial / mu.z_factor()).collect();
        let index = classes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(ClassInfo {
            degree,
            classes,
            sizes,
            factorial,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn factorial(&self) -> &BigUint {
        &self.factorial
    }

    pub fn index_of(&self, class: &Partition) -> Option<usize> {
        self.index.get(class).copied()
    }
}

/// Anything that can hand out character rows `μ ↦ χ_λ(μ)` indexed like
/// [`ClassInfo::classes`].
pub trait CharacterSource {
    fn class_info(&self, degree: usize) -> Result<Arc<ClassInfo>>;

    fn row(&self, shape: &Partition) -> Result<Arc<[i64]>>;
}

impl<S: CharacterSource + ?Sized> CharacterSource for &S {
    fn class_info(&self, degree: usize) -> Result<Arc<ClassInfo>> {
        (**self).class_info(degree)
    }

    fn row(&self, shape: &Partition) -> Result<Arc<[i64]>> {
        (**self).row(shape)
    }
}

/// Single-threaded in-memory [`CharacterSource`].
#[derive(Default)]
pub struct LocalCharacters {
    classes: RefCell<BTreeMap<usize, Arc<ClassInfo>>>,
    rows: RefCell<BTreeMap<Partition, Arc<[i64]>>>,
}

impl LocalCharacters {
    pub fn new() -> Self {
        Self::default()
    }
}

impl CharacterSource for LocalCharacters {
    fn class_info(&self, degree: usize) -> Result<Arc<ClassInfo>> {
        if let Some(info) = self.classes.borrow().get(&degree) {
            return Ok(info.clone());
        }
        let info = Arc::new(ClassInfo::new(degree)?);
        self.classes.borrow_mut().insert(degree, info.clone());
        Ok(info)
    }

    fn row(&self, shape: &Partition) -> Result<Arc<[i64]>> {
        if let Some(row) = self.rows.borrow().get(shape) {
            return Ok(row.clone());
        }
        let info = self.class_info(shape.size())?;
        let row: Arc<[i64]> = character_row(shape, &info)?.into();
        self.rows.borrow_mut().insert(shape.clone(), row.clone());
        Ok(row)
    }
}

/// Memo for the MN recursion; keys are `beta-set ++ [SEP] ++ cycles`.
#[derive(Default)]
struct MnMemo {
    map: BTreeMap<Vec<u8>, i64>,
}

const SEP: u8 = u8::MAX;

fn beta_set(shape: &Partition) -> Vec<u8> {
    let k = shape.height();
    shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| (p + k - 1 - i) as u8)
        .collect()
}

/// Drops beads sitting at position 0 (empty rows), keeping the key canonical.
fn normalize(beta: &mut Vec<u8>) {
    while beta.last() == Some(&0) {
        beta.pop();
        for b in beta.iter_mut() {
            *b -= 1;
        }
    }
}

fn mn_rec(beta: &[u8], cycles: &[u8], memo: &mut MnMemo) -> Result<i64> {
    let Some((&r, rest)) = cycles.split_first() else {
        return Ok(if beta.is_empty() { 1 } else { 0 });
    };
    let mut key = Vec::with_capacity(beta.len() + 1 + cycles.len());
    key.extend_from_slice(beta);
    key.push(SEP);
    key.extend_from_slice(cycles);
    if let Some(&v) = memo.map.get(&key) {
        return Ok(v);
    }

    let mut total: i64 = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        // beads strictly between target and b; beta is strictly decreasing
        let jumped = beta[i + 1..].iter().take_while(|&&c| c > target).count();
        let mut next: Vec<u8> = beta.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        normalize(&mut next);
        let sub = mn_rec(&next, rest, memo)?;
        let term = if jumped % 2 == 0 { sub } else { -sub };
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("Murnaghan-Nakayama recursion"))?;
    }
    memo.map.insert(key, total);
    Ok(total)
}

fn cycles_of(mu: &Partition) -> Vec<u8> {
    mu.parts().iter().map(|&p| p as u8).collect()
}

fn check_degree(n: usize) -> Result<()> {
    if n > ORACLE_CEILING {
        Err(Error::ResourceLimit {
            what: "symmetric group degree",
            value: n,
            limit: ORACLE_CEILING,
        })
    } else {
        Ok(())
    }
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::size(format!(
            "|({lambda})| = {} but |({mu})| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    check_degree(lambda.size())?;
    let mut beta = beta_set(lambda);
    normalize(&mut beta);
    mn_rec(&beta, &cycles_of(mu), &mut MnMemo::default())
}

/// `χ_λ` on every class of `S_{|λ|}`, in the order of `classes`.
pub fn character_row(lambda: &Partition, classes: &ClassInfo) -> Result<Vec<i64>> {
    let mut memo = MnMemo::default();
    character_row_with(lambda, classes, &mut memo)
}

fn character_row_with(lambda: &Partition, classes: &ClassInfo, memo: &mut MnMemo) -> Result<Vec<i64>> {
    if lambda.size() != classes.degree() {
        return Err(Error::size(format!(
            "({lambda}) is not a partition of {}",
            classes.degree()
        )));
    }
    let mut beta = beta_set(lambda);
    normalize(&mut beta);
    classes
        .classes()
        .iter()
        .map(|mu| mn_rec(&beta, &cycles_of(mu), memo))
        .collect()
}

/// Full character table of `S_n`.
///
/// Irreducibles run in decreasing lexicographic order (trivial first) and
/// classes in increasing order (identity first), so
/// `values[i][j] = χ_{irreducibles[i]}(classes[j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    irreducibles: Vec<Partition>,
    classes: Vec<Partition>,
    class_sizes: Vec<u64>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("character tables need n >= 1"));
        }
        if n > TABLE_CEILING {
            return Err(Error::ResourceLimit {
                what: "character table degree",
                value: n,
                limit: TABLE_CEILING,
            });
        }
        let info = ClassInfo::new(n)?;
        let mut memo = MnMemo::default();
        let values = info
            .classes()
            .iter()
            .map(|lambda| {
                let mut row = character_row_with(lambda, &info, &mut memo)?;
                row.reverse();
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let class_sizes = info
            .sizes()
            .iter()
            .rev()
            .map(|s| s.to_u64().ok_or(Error::Overflow("class size")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            n,
            irreducibles: info.classes().to_vec(),
            classes: info.classes().iter().rev().cloned().collect(),
            class_sizes,
            values,
        })
    }

    /// Reassembles a table (e.g. from a cache file) and checks every
    /// structural invariant before accepting it.
    pub fn from_parts(
        n: usize,
        classes: Vec<Partition>,
        class_sizes: Vec<u64>,
        values: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let irreducibles = Partition::enumerate(n, None);
        let table = CharacterTable {
            n,
            irreducibles,
            classes,
            class_sizes,
            values,
        };
        table.check_invariants()?;
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreducibles(&self) -> &[Partition] {
        &self.irreducibles
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    fn irrep_position(&self, p: &Partition) -> Option<usize> {
        self.irreducibles.binary_search_by(|q| p.cmp(q)).ok()
    }

    fn class_position(&self, p: &Partition) -> Option<usize> {
        self.classes.binary_search(p).ok()
    }

    /// `χ_λ` on [`classes`](Self::classes).
    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        self.irrep_position(lambda).map(|i| self.values[i].as_slice())
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        Some(self.values[self.irrep_position(lambda)?][self.class_position(mu)?])
    }

    /// Class sizes sum to `n!`, rows and columns are orthogonal, and the
    /// identity column holds the hook-length dimensions.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::VerificationFailed(msg));
        let mut expected = Partition::enumerate(self.n, None);
        if self.irreducibles != expected {
            return fail(format!("irreducible list of S_{} is not canonical", self.n));
        }
        expected.reverse();
        if self.classes != expected {
            return fail(format!("class list of S_{} is not canonical", self.n));
        }
        let k = self.classes.len();
        if self.class_sizes.len() != k || self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return fail(format!("table of S_{} has inconsistent dimensions", self.n));
        }
        let fact: u128 = (1..=self.n as u128).product();
        let total: u128 = self.class_sizes.iter().map(|&s| s as u128).sum();
        if total != fact {
            return fail(format!("class sizes of S_{} sum to {total}, not {fact}", self.n));
        }
        for (mu, &size) in self.classes.iter().zip(&self.class_sizes) {
            if BigUint::from(size) * mu.z_factor() != BigUint::from(fact) {
                return fail(format!("class ({mu}) has the wrong size {size}"));
            }
        }
        for i in 0..k {
            for j in i..k {
                let mut acc: i128 = 0;
                for c in 0..k {
                    acc += self.class_sizes[c] as i128
                        * self.values[i][c] as i128
                        * self.values[j][c] as i128;
                }
                let want = if i == j { fact as i128 } else { 0 };
                if acc != want {
                    return fail(format!(
                        "rows ({}) and ({}) are not orthogonal",
                        self.irreducibles[i], self.irreducibles[j]
                    ));
                }
            }
        }
        for a in 0..k {
            let z = self.classes[a].z_factor().to_i128().ok_or(Error::Overflow("z factor"))?;
            for b in a..k {
                let acc: i128 = (0..k)
                    .map(|r| self.values[r][a] as i128 * self.values[r][b] as i128)
                    .sum();
                let want = if a == b { z } else { 0 };
                if acc != want {
                    return fail(format!(
                        "columns ({}) and ({}) are not orthogonal",
                        self.classes[a], self.classes[b]
                    ));
                }
            }
        }
        for (lambda, row) in self.irreducibles.iter().zip(&self.values) {
            if row[0] <= 0 || BigUint::from(row[0] as u64) != lambda.syt_count() {
                return fail(format!("χ_({lambda})(1^n) is not the hook-length dimension"));
            }
        }
        Ok(())
    }
}

/// Builds the whole table of `S_n`.
pub fn character_table(n: usize) -> Result<CharacterTable> {
    CharacterTable::build(n)
}

/// Kronecker coefficient `c_{α,β,γ}` as a character inner product.
pub fn kronecker_oracle<S: CharacterSource + ?Sized>(
    src: &S,
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
) -> Result<u64> {
    let m = alpha.size();
    if beta.size() != m || gamma.size() != m {
        return Err(Error::size(format!(
            "sizes of ({alpha}), ({beta}), ({gamma}) differ"
        )));
    }
    if m == 0 {
        return Ok(1);
    }
    check_degree(m)?;
    let info = src.class_info(m)?;
    let (ra, rb, rc) = (src.row(alpha)?, src.row(beta)?, src.row(gamma)?);
    let mut acc = BigInt::zero();
    for (i, size) in info.sizes().iter().enumerate() {
        let (a, b, c) = (ra[i], rb[i], rc[i]);
        if a == 0 || b == 0 || c == 0 {
            continue;
        }
        let ab = a as i128 * b as i128;
        let term = BigInt::from(ab) * BigInt::from(c) * BigInt::from(size.clone());
        acc += term;
    }
    let (q, r) = acc.div_rem(&BigInt::from(info.factorial().clone()));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::VerificationFailed(format!(
            "character inner product of ({alpha}), ({beta}), ({gamma}) is not a non-negative integer"
        )));
    }
    q.to_u64().ok_or(Error::Overflow("Kronecker coefficient"))
}

/// `(1/m!) Σ_μ |C_μ| χ_α χ_β χ_γ` with a throwaway in-memory source.
pub fn inner_product_triple(alpha: &Partition, beta: &Partition, gamma: &Partition) -> Result<u64> {
    kronecker_oracle(&LocalCharacters::new(), alpha, beta, gamma)
}

//! Partitions and Young diagrams.
//!
//! A [`Partition`] is stored without trailing zeros; the rank of the ambient
//! `GL`/`SL` group is always passed explicitly where it matters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<usize>", into = "Vec<usize>"))]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping trailing zeros. Rejects sequences that
    /// increase anywhere or contain an interior zero.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::invalid(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row shape `(len)`; empty when `len == 0`.
    pub fn row(len: usize) -> Self {
        if len == 0 {
            Partition::empty()
        } else {
            Partition(vec![len])
        }
    }

    /// The `height × width` rectangle.
    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 || height == 0 {
            Partition::empty()
        } else {
            Partition(vec![width; height])
        }
    }

    /// Sorts arbitrary non-negative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last() != Some(&0));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i` (0-based); zero beyond the height.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to exactly `len` entries. Panics if the
    /// partition is taller than `len`.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        assert!(self.height() <= len, "partition taller than {len}");
        let mut v = self.0.clone();
        v.resize(len, 0);
        v
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition(parts)
    }

    /// True when `other` fits inside `self` as a diagram.
    pub fn contains(&self, other: &Partition) -> bool {
        other.height() <= self.height() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }

    /// Row-wise sum `self + other`.
    pub fn add_rows(&self, other: &Partition) -> Partition {
        let h = self.height().max(other.height());
        Partition((0..h).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// Prepends `(m - size) / n` columns of length `n`, producing the unique
    /// partition of size `m` that reduces to `self` modulo full columns.
    pub fn pad_columns(&self, n: usize, m: usize) -> Result<Partition> {
        if n == 0 {
            return Err(Error::invalid("column length must be positive"));
        }
        if self.height() >= n {
            return Err(Error::invalid(format!(
                "({self}) has height {} but must be shorter than {n}",
                self.height()
            )));
        }
        let size = self.size();
        if m < size || !(m - size).is_multiple_of(n) {
            return Err(Error::invalid(format!(
                "cannot pad ({self}) of size {size} to {m} with columns of length {n}"
            )));
        }
        let cols = (m - size) / n;
        let parts = (0..n).map(|i| self.part(i) + cols).collect();
        Ok(Partition::new(parts).expect("padding preserves monotonicity"))
    }

    /// Removes every full column of length `n`; the `SL_n` reduction of a
    /// `GL_n` weight.
    pub fn strip_full_columns(&self, n: usize) -> Result<Partition> {
        if self.height() > n {
            return Err(Error::invalid(format!(
                "({self}) has height {} > {n}",
                self.height()
            )));
        }
        let cols = if self.height() == n && n > 0 { self.0[n - 1] } else { 0 };
        Ok(Partition::new(self.0.iter().map(|p| p - cols).collect())
            .expect("stripping preserves monotonicity"))
    }

    /// Highest weight of the dual `SL_l` module: the complement of `self`
    /// inside the `l × self[0]` box with rows reversed, reduced modulo full
    /// columns.
    pub fn sl_dual(&self, l: usize) -> Result<Partition> {
        if l == 0 {
            return Err(Error::invalid("rank must be positive"));
        }
        if self.height() > l {
            return Err(Error::invalid(format!(
                "({self}) has height {} > rank {l}",
                self.height()
            )));
        }
        let width = self.part(0);
        let comp = (0..l).rev().map(|i| width - self.part(i)).collect();
        Partition::new(comp)?.strip_full_columns(l)
    }

    /// True iff nonempty, of exactly `height` rows, all equal.
    pub fn is_rectangle(&self, height: usize) -> bool {
        !self.is_empty() && self.height() == height && self.0.iter().all(|&p| p == self.0[0])
    }

    /// All partitions of `n` with at most `max_height` rows, in decreasing
    /// lexicographic order.
    pub fn enumerate(n: usize, max_height: Option<usize>) -> Vec<Partition> {
        fn go(
            rest: usize,
            max_part: usize,
            rows_left: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for p in (1..=rest.min(max_part)).rev() {
                // the remaining rows cannot absorb more than p each
                if p * rows_left < rest {
                    break;
                }
                cur.push(p);
                go(rest - p, p, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let rows = max_height.unwrap_or(n).min(n.max(1));
        go(n, n, rows, &mut Vec::new(), &mut out);
        out
    }

    /// Hook lengths in row-major order.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.part(j) - i - 1);
            }
        }
        hooks
    }

    /// Number of standard Young tableaux, i.e. `dim W_λ`.
    pub fn syt_count(&self) -> BigUint {
        let mut num = BigUint::one();
        for k in 2..=self.size() {
            num *= BigUint::from(k);
        }
        let den = self
            .hook_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
        num / den
    }

    /// Dimension of the `GL_rank` Weyl module (hook-content formula); zero
    /// when the partition is taller than `rank`.
    pub fn gl_dimension(&self, rank: usize) -> BigUint {
        if self.height() > rank {
            return BigUint::zero();
        }
        let mut num = BigUint::one();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                num *= BigUint::from(rank + j - i);
            }
        }
        let den = self
            .hook_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
        num / den
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of the class `λ`.
    pub fn z_factor(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.0.len() {
            let part = self.0[i];
            let mut mult = 0usize;
            while i < self.0.len() && self.0[i] == part {
                mult += 1;
                i += 1;
                z *= BigUint::from(part) * BigUint::from(mult);
            }
        }
        z
    }
}

impl fmt::Display for Partition {
    /// The comma-separated text form, e.g. `4,2,1`; the empty partition
    /// prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: usize = tok
                .parse()
                .map_err(|_| Error::invalid(format!("`{tok}` is not a positive integer")))?;
            if v == 0 {
                return Err(Error::invalid("partition parts must be positive"));
            }
            parts.push(v);
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Shorthand used throughout the tests: `part(&[3, 1])`.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("literal partition")
}

pub(crate) fn fmt_list(ps: &[&Partition]) -> String {
    let mut s = String::new();
    for (i, p) in ps.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push('(');
        s.push_str(&format!("{p}"));
        s.push(')');
    }
    s
}

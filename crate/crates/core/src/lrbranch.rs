//! Littlewood–Richardson coefficients and `GL` branching.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Decomposition of a restricted module: `(index, multiplicity)` pairs,
/// multiplicities positive, indices distinct and in decreasing lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingResult<K> {
    pub source: Partition,
    pub entries: Vec<(K, u64)>,
}

impl<K: PartialEq> BranchingResult<K> {
    pub fn multiplicity(&self, key: &K) -> u64 {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map_or(0, |&(_, m)| m)
    }
}

/// `N^λ_{μ,ν}`: the number of LR tableaux of shape `λ/μ` and content `ν`.
///
/// Cells are filled in reading order (rows top to bottom, each row right to
/// left); rows weakly increase, columns strictly increase, and every prefix
/// of the reading word must be a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    let rows = lambda.height();
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (mu.part(i)..lambda.part(i)).rev().map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = (0..rows).map(|i| vec![0; lambda.part(i)]).collect();
    let mut counts = vec![0usize; nu.height() + 1];

    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        grid: &mut [Vec<usize>],
        counts: &mut [usize],
    ) -> u64 {
        let Some(&(i, j)) = cells.get(k) else {
            return 1;
        };
        // right neighbour already filled (reading right to left)
        let hi = if j + 1 < lambda.part(i) { grid[i][j + 1] } else { nu.height() };
        let lo = if i > 0 && j >= mu.part(i - 1) { grid[i - 1][j] + 1 } else { 1 };
        let mut total = 0;
        for v in lo..=hi.min(nu.height()) {
            if counts[v] >= nu.part(v - 1) {
                continue;
            }
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            counts[v] += 1;
            grid[i][j] = v;
            total += fill(k + 1, cells, lambda, mu, nu, grid, counts);
            counts[v] -= 1;
        }
        grid[i][j] = 0;
        total
    }

    fill(0, &cells, lambda, mu, nu, &mut grid, &mut counts)
}

/// One interlacing step `GL_r ↓ GL_{r-1}`: every `μ` with
/// `λ_i ≥ μ_i ≥ λ_{i+1}`, each once.
pub fn gl_branch(lambda: &Partition, from_rank: usize, to_rank: usize) -> Result<BranchingResult<Partition>> {
    if from_rank == 0 || to_rank + 1 != from_rank {
        return Err(Error::invalid(format!(
            "gl_branch restricts one rank at a time, got {from_rank} -> {to_rank}"
        )));
    }
    if lambda.height() > from_rank {
        return Err(Error::invalid(format!(
            "({lambda}) has height {} > rank {from_rank}",
            lambda.height()
        )));
    }
    let ranges: Vec<(usize, usize)> = (0..to_rank)
        .map(|i| (lambda.part(i + 1), lambda.part(i)))
        .collect();
    let mut entries = Vec::new();
    let mut cur = vec![0usize; to_rank];
    fn go(i: usize, ranges: &[(usize, usize)], cur: &mut Vec<usize>, out: &mut Vec<(Partition, u64)>) {
        if i == ranges.len() {
            out.push((Partition::new(cur.clone()).expect("interlacing is monotone"), 1));
            return;
        }
        let (lo, hi) = ranges[i];
        for v in (lo..=hi).rev() {
            cur[i] = v;
            go(i + 1, ranges, cur, out);
        }
    }
    go(0, &ranges, &mut cur, &mut entries);
    Ok(BranchingResult {
        source: lambda.clone(),
        entries,
    })
}

/// Sub-diagrams of `lambda` with at most `max_height` rows, decreasing lex.
fn subdiagrams(lambda: &Partition, max_height: usize) -> Vec<Partition> {
    let rows = lambda.height().min(max_height);
    let mut out = Vec::new();
    fn go(i: usize, rows: usize, lambda: &Partition, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rows {
            out.push(Partition::new(cur.clone()).expect("monotone by construction"));
            return;
        }
        for v in (0..=lambda.part(i).min(cap)).rev() {
            cur.push(v);
            go(i + 1, rows, lambda, v, cur, out);
            cur.pop();
        }
    }
    go(0, rows, lambda, usize::MAX, &mut Vec::new(), &mut out);
    out
}

/// Levi restriction `GL_{k+l} ↓ GL_k × GL_l`, with LR multiplicities.
pub fn levi_restrict(lambda: &Partition, k: usize, l: usize) -> Result<BranchingResult<(Partition, Partition)>> {
    if lambda.height() > k + l {
        return Err(Error::invalid(format!(
            "({lambda}) has height {} > k + l = {}",
            lambda.height(),
            k + l
        )));
    }
    let mut entries = Vec::new();
    for rho in subdiagrams(lambda, k) {
        let rest = lambda.size() - rho.size();
        for delta in Partition::enumerate(rest, Some(l)) {
            if l == 0 && !delta.is_empty() {
                continue;
            }
            let n = lr_coefficient(lambda, &rho, &delta);
            if n > 0 {
                entries.push(((rho.clone(), delta), n));
            }
        }
    }
    Ok(BranchingResult {
        source: lambda.clone(),
        entries,
    })
}

/// Trivial as an `SL_rank` module: empty, or a rectangle of full height.
pub fn is_sl_trivial(p: &Partition, rank: usize) -> bool {
    p.is_empty() || p.is_rectangle(rank)
}

/// Whether `V_λ(SL_{k+l})` contains the trivial `SL_k × SL_l` module.
pub fn contains_trivial_levi(lambda: &Partition, k: usize, l: usize) -> Result<bool> {
    Ok(levi_restrict(lambda, k, l)?
        .entries
        .iter()
        .any(|((rho, delta), _)| is_sl_trivial(rho, k) && is_sl_trivial(delta, l)))
}

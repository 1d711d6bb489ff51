//! Brute-force oracles on plain `Vec<usize>` partitions, independent of the
//! library code paths they check.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Shape = Vec<usize>;

/// Partitions of `n` in decreasing lex order.
pub fn partitions(n: usize) -> Vec<Shape> {
    fn go(rest: usize, cap: usize, cur: &mut Shape, out: &mut Vec<Shape>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn trim(mut v: Shape) -> Shape {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Number of SSYT of shape `lambda` and content `mu` (any composition),
/// by peeling off horizontal strips for the largest letter.
pub fn kostka(lambda: &[usize], mu: &[usize]) -> u64 {
    fn rec(lambda: &[usize], mu: &[usize], memo: &mut BTreeMap<(Shape, usize), u64>) -> u64 {
        let total: usize = lambda.iter().sum();
        if mu.is_empty() {
            return u64::from(total == 0);
        }
        let key = (lambda.to_vec(), mu.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let last = mu[mu.len() - 1];
        let rest = &mu[..mu.len() - 1];
        // inner shapes nu with lambda/nu a horizontal strip of size `last`
        let mut count = 0;
        let k = lambda.len();
        let mut nu = vec![0usize; k];
        fn strips(
            i: usize,
            lambda: &[usize],
            nu: &mut Shape,
            left: usize,
            rest: &[usize],
            memo: &mut BTreeMap<(Shape, usize), u64>,
            count: &mut u64,
        ) {
            if i == lambda.len() {
                if left == 0 {
                    *count += rec(&trim(nu.clone()), rest, memo);
                }
                return;
            }
            let lo = lambda.get(i + 1).copied().unwrap_or(0);
            for v in lo..=lambda[i] {
                let removed = lambda[i] - v;
                if removed > left {
                    continue;
                }
                nu[i] = v;
                strips(i + 1, lambda, nu, left - removed, rest, memo, count);
            }
        }
        strips(0, lambda, &mut nu, last, rest, memo, &mut count);
        memo.insert(key, count);
        count
    }
    if lambda.iter().sum::<usize>() != mu.iter().sum::<usize>() {
        return 0;
    }
    rec(lambda, mu, &mut BTreeMap::new())
}

/// Exponent vectors of degree `m` in `vars` variables.
fn monomials(m: usize, vars: usize) -> Vec<Shape> {
    fn go(i: usize, left: usize, vars: usize, cur: &mut Shape, out: &mut Vec<Shape>) {
        if i + 1 == vars {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, vars, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, m, vars, &mut vec![0; vars], &mut out);
    out
}

/// Multiplicities of the dominant weights of `Sym^d(Sym^m(C^N))`, `N = d·m`,
/// by enumerating every multiset of `d` monomials.
pub fn sym_sym_dominant_weights(d: usize, m: usize) -> BTreeMap<Shape, u64> {
    let vars = d * m;
    let monos = monomials(m, vars);
    let mut weights = BTreeMap::new();
    fn go(
        start: usize,
        left: usize,
        monos: &[Shape],
        acc: &mut Shape,
        weights: &mut BTreeMap<Shape, u64>,
    ) {
        if left == 0 {
            if acc.windows(2).all(|w| w[0] >= w[1]) {
                *weights.entry(trim(acc.clone())).or_insert(0) += 1;
            }
            return;
        }
        for i in start..monos.len() {
            for (a, e) in acc.iter_mut().zip(&monos[i]) {
                *a += e;
            }
            go(i, left - 1, monos, acc, weights);
            for (a, e) in acc.iter_mut().zip(&monos[i]) {
                *a -= e;
            }
        }
    }
    go(0, d, &monos, &mut vec![0; vars], &mut weights);
    weights
}

/// Schur expansion recovered from dominant weight multiplicities by
/// repeatedly removing the lex-largest surviving weight.
pub fn extract_schur(weights: &BTreeMap<Shape, u64>, n: usize) -> BTreeMap<Shape, u64> {
    let mut remaining: BTreeMap<Shape, i64> = weights.iter().map(|(k, &v)| (k.clone(), v as i64)).collect();
    let mut out = BTreeMap::new();
    for lambda in partitions(n) {
        let c = remaining.get(&lambda).copied().unwrap_or(0);
        assert!(c >= 0, "negative remainder at {lambda:?}");
        if c == 0 {
            continue;
        }
        out.insert(lambda.clone(), c as u64);
        for mu in partitions(n) {
            let k = kostka(&lambda, &mu) as i64;
            if k > 0 {
                *remaining.entry(mu).or_insert(0) -= c * k;
            }
        }
    }
    assert!(remaining.values().all(|&v| v == 0), "weights are not a Schur-positive character");
    out
}

/// `Sym^d(Sym^m)` by brute force.
pub fn plethysm_brute(d: usize, m: usize) -> BTreeMap<Shape, u64> {
    extract_schur(&sym_sym_dominant_weights(d, m), d * m)
}

type Poly = BTreeMap<Shape, i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Shape = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `χ_λ(μ)` as the coefficient of `x^{λ+δ}` in `a_δ · p_μ` (Frobenius).
pub fn frobenius_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let k = lambda.len().max(1);
    let mut acc: Poly = BTreeMap::from([(vec![0; k], 1)]);
    for &r in mu {
        let p: Poly = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = r;
                (e, 1)
            })
            .collect();
        acc = poly_mul(&acc, &p);
    }
    // a_δ = Σ_σ sgn(σ) x^{σ(δ)}; only the term matching λ+δ is needed
    let target: Shape = (0..k).map(|i| lambda.get(i).copied().unwrap_or(0) + k - 1 - i).collect();
    let mut total = 0;
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p: &[usize]| {
        let sign = permutation_sign(p);
        let delta: Shape = p.iter().map(|&j| k - 1 - j).collect();
        if delta.iter().zip(&target).all(|(d, t)| d <= t) {
            let rest: Shape = target.iter().zip(&delta).map(|(t, d)| t - d).collect();
            total += sign * acc.get(&rest).copied().unwrap_or(0);
        }
    });
    total
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

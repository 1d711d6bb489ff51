mod common;

use std::collections::BTreeMap;

use gctlab_core::gct::restrict_gl;
use gctlab_core::kron::{kronecker, rw_two_row, Method};
use gctlab_core::lrbranch::{gl_branch, lr_coefficient};
use gctlab_core::plethysm::plethysm_sym_sym;
use gctlab_core::schar::{character_table, inner_product_triple, kronecker_oracle, mn_character};
use gctlab_core::{LocalCharacters, Partition};
use num_bigint::BigUint;
use proptest::prelude::*;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn characters_match_frobenius_formula() {
    for n in 1..=8 {
        for lam in common::partitions(n) {
            for mu in common::partitions(n) {
                let want = common::frobenius_character(&lam, &mu);
                assert_eq!(mn_character(&p(&lam), &p(&mu)).unwrap(), want, "χ_{lam:?}({mu:?})");
            }
        }
    }
}

#[test]
fn tables_satisfy_orthogonality() {
    for n in 1..=12 {
        let t = character_table(n).unwrap();
        t.check_invariants().unwrap();
        assert_eq!(t.classes().len(), common::partitions(n).len());
    }
}

#[test]
fn partition_counts() {
    for n in 0..=20 {
        assert_eq!(Partition::enumerate(n, None).len(), common::partitions(n).len());
        let ours: Vec<Vec<usize>> = Partition::enumerate(n, None).into_iter().map(|p| p.into_parts()).collect();
        assert_eq!(ours, common::partitions(n));
    }
}

#[test]
fn plethysm_matches_brute_force() {
    let src = LocalCharacters::new();
    for d in 1..=10 {
        for m in 1..=10 / d {
            let ours: BTreeMap<Vec<usize>, u64> = plethysm_sym_sym(&src, d, m)
                .unwrap()
                .iter()
                .map(|(p, c)| (p.parts().to_vec(), c))
                .collect();
            assert_eq!(ours, common::plethysm_brute(d, m), "Sym^{d}(Sym^{m})");
        }
    }
}

#[test]
fn sym2_against_weight_oracle() {
    for m in 1..=6 {
        let want: BTreeMap<Vec<usize>, u64> = (0..=m)
            .step_by(2)
            .map(|i| {
                let mut v = vec![2 * m - i, i];
                if i == 0 {
                    v.pop();
                }
                (v, 1)
            })
            .collect();
        assert_eq!(common::plethysm_brute(2, m), want, "m={m}");
    }
}

/// Iterated interlacing `GL_r ↓ GL_0` counts SSYT: chains whose successive
/// size drops are `μ_r, …, μ_1` number `K_{λμ}`.
#[test]
fn iterated_branching_gives_kostka_numbers() {
    fn chains(lam: &Partition, rank: usize, content: &[usize]) -> u64 {
        if rank == 0 {
            return u64::from(lam.is_empty());
        }
        let step = content[rank - 1];
        gl_branch(lam, rank, rank - 1)
            .unwrap()
            .entries
            .iter()
            .filter(|(nu, _)| nu.size() + step == lam.size())
            .map(|(nu, m)| m * chains(nu, rank - 1, content))
            .sum()
    }
    for n in 1..=7 {
        for lam in common::partitions(n) {
            for mu in common::partitions(n) {
                let rank = mu.len().max(lam.len());
                let mut content = mu.clone();
                content.resize(rank, 0);
                assert_eq!(chains(&p(&lam), rank, &content), common::kostka(&lam, &mu), "K_{lam:?},{mu:?}");
            }
        }
    }
}

#[test]
fn restrict_gl_preserves_dimension() {
    for n in 0..=6 {
        for lam in Partition::enumerate(n, Some(4)) {
            for to in 0..=4 {
                let r = restrict_gl(&lam, 4, to).unwrap();
                let total: BigUint = r.iter().map(|(q, m)| q.gl_dimension(to) * BigUint::from(*m)).sum();
                assert_eq!(total, lam.gl_dimension(4), "({lam}) GL_4 -> GL_{to}");
            }
        }
    }
}

/// `dim V_μ · dim V_ν = Σ_λ N^λ_{μν} dim V_λ` in ranks 3 and 4.
#[test]
fn lr_products_preserve_dimension() {
    for a in 0..=4 {
        for b in 0..=4 {
            for mu in Partition::enumerate(a, None) {
                for nu in Partition::enumerate(b, None) {
                    for rank in [3usize, 4] {
                        let lhs = mu.gl_dimension(rank) * nu.gl_dimension(rank);
                        let rhs: BigUint = Partition::enumerate(a + b, Some(rank))
                            .iter()
                            .map(|lam| lam.gl_dimension(rank) * BigUint::from(lr_coefficient(lam, &mu, &nu)))
                            .sum();
                        assert_eq!(lhs, rhs, "({mu}) x ({nu}) rank {rank}");
                    }
                }
            }
        }
    }
}

/// The SL dual has the negated weights: `K_{λ*,ν} = K_{λ, λ₁ - rev(ν)}`.
#[test]
fn sl_dual_negates_weights() {
    for l in 1..=4 {
        for n in 0..=7 {
            for lam in Partition::enumerate(n, Some(l)) {
                let dual = lam.sl_dual(l).unwrap();
                let top = lam.part(0);
                for nu in Partition::enumerate(dual.size(), Some(l)) {
                    let padded: Vec<usize> = (0..l).map(|i| nu.part(i)).collect();
                    let mut neg: Vec<usize> = padded.iter().rev().map(|&x| top - x.min(top)).collect();
                    if padded.iter().any(|&x| x > top) {
                        assert_eq!(common::kostka(dual.parts(), nu.parts()), 0);
                        continue;
                    }
                    neg.sort_unstable_by(|a, b| b.cmp(a));
                    while neg.last() == Some(&0) {
                        neg.pop();
                    }
                    assert_eq!(
                        common::kostka(dual.parts(), nu.parts()),
                        common::kostka(lam.parts(), &neg),
                        "({lam}) l={l} ν=({nu})"
                    );
                }
            }
        }
    }
}

#[test]
fn kronecker_sign_twist_and_symmetry() {
    let src = LocalCharacters::new();
    for m in 1..=7 {
        let parts = Partition::enumerate(m, None);
        for a in &parts {
            for b in &parts {
                for c in &parts {
                    let v = kronecker_oracle(&src, a, b, c).unwrap();
                    assert_eq!(v, inner_product_triple(b, c, a).unwrap());
                    assert_eq!(v, kronecker_oracle(&src, &a.conjugate(), &b.conjugate(), c).unwrap());
                    assert_eq!(v, kronecker(&src, a, b, c, Method::Auto, true).unwrap().value);
                }
            }
        }
    }
}

fn two_row(m: usize) -> impl Strategy<Value = Partition> {
    (0..=m / 2).prop_map(move |s| Partition::new(vec![m - s, s]).unwrap())
}

proptest! {
    #[test]
    fn two_row_formula_random(
        (a, b, c) in (1usize..=16).prop_flat_map(|m| (two_row(m), two_row(m), two_row(m)))
    ) {
        let src = LocalCharacters::new();
        prop_assert_eq!(rw_two_row(&a, &b, &c).unwrap(), kronecker_oracle(&src, &a, &b, &c).unwrap());
    }
}

//! Brute-force H-kernels: enumerate every normal subgroup and test quotients
//! directly against the defining property of each variety.

use std::collections::BTreeSet;

use super::kernel::for_each_tuple;
use super::{evaluate_group_word, FiniteGroup, GroupError, KernelFunctor};

pub const DEFAULT_ORACLE_CAP: usize = 24;

fn closure(g: &FiniteGroup, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    set.insert(g.identity());
    loop {
        let mut grown = set.clone();
        for &a in &set {
            for &b in &set {
                grown.insert(g.mul(a, b));
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// All subgroups, each as a sorted index list, sorted by (size, members).
pub fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let trivial: BTreeSet<usize> = [g.identity()].into();
    let mut found: BTreeSet<BTreeSet<usize>> = [trivial.clone()].into();
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.contains(&x) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(x);
            let bigger = closure(g, &seed);
            if found.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().map(|s| s.into_iter().collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    subgroups(g)
        .into_iter()
        .filter(|h| {
            h.iter().all(|&x| {
                g.elements()
                    .all(|y| h.binary_search(&g.mul(g.mul(y, x), g.inv(y))).is_ok())
            })
        })
        .collect()
}

fn prime_factors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// A finite group is nilpotent iff it has a single Sylow p-subgroup for each
/// p, i.e. the p-power-order elements number exactly the p-part of |G|.
fn is_nilpotent(q: &FiniteGroup) -> bool {
    let n = q.order();
    prime_factors(n).into_iter().all(|p| {
        let p = p as usize;
        let mut part = 1;
        while n.is_multiple_of(part * p) {
            part *= p;
        }
        let count = q
            .elements()
            .filter(|&x| part % q.element_order(x) == 0)
            .count();
        count == part
    })
}

fn is_solvable(q: &FiniteGroup) -> bool {
    if q.order() == 1 {
        return true;
    }
    normal_subgroups(q)
        .into_iter()
        .filter(|n| n.len() < q.order())
        .any(|n| {
            let (quot, _) = q.quotient(&n);
            quot.is_abelian() && is_solvable(&q.subgroup(&n))
        })
}

fn in_variety(q: &FiniteGroup, k: &KernelFunctor) -> bool {
    match k {
        KernelFunctor::Trivial => q.order() == 1,
        KernelFunctor::All => true,
        KernelFunctor::Abelian => q
            .elements()
            .all(|a| q.elements().all(|b| q.mul(a, b) == q.mul(b, a))),
        KernelFunctor::PGroup(p) => prime_factors(q.order()).iter().all(|f| f == p),
        KernelFunctor::PiGroup(ps) => prime_factors(q.order()).iter().all(|f| ps.contains(f)),
        KernelFunctor::Nilpotent => is_nilpotent(q),
        KernelFunctor::Solvable => is_solvable(q),
        KernelFunctor::Verbal(words) => words.iter().all(|w| {
            let mut ok = true;
            for_each_tuple(q.order(), w.arity(), |args| {
                ok &= evaluate_group_word(q, w, args).expect("arity matches") == q.identity();
            });
            ok
        }),
    }
}

/// The least normal subgroup `N` with `G/N` in the variety, by exhaustive
/// search. Errors if `|G|` exceeds `cap`.
pub fn kernel_minimality_oracle(
    g: &FiniteGroup,
    k: &KernelFunctor,
    cap: usize,
) -> Result<Vec<usize>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let qualifying: Vec<Vec<usize>> = normal_subgroups(g)
        .into_iter()
        .filter(|n| in_variety(&g.quotient(n).0, k))
        .collect();
    let smallest = qualifying
        .first()
        .cloned()
        .expect("G/G is trivial and lies in every variety");
    // varieties are closed under subdirect products, so the least one is unique
    debug_assert!(qualifying
        .iter()
        .all(|n| smallest.iter().all(|x| n.binary_search(x).is_ok())));
    Ok(smallest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::{kernel_indices, GroupWord};

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups(&corpus::group_s3()).len(), 6);
        assert_eq!(normal_subgroups(&corpus::group_s3()).len(), 3);
        assert_eq!(subgroups(&corpus::group_v4()).len(), 5);
        assert_eq!(subgroups(&corpus::group_cyclic(6)).len(), 4);
    }

    #[test]
    fn oracle_examples() {
        let s3 = corpus::group_s3();
        let a3: Vec<usize> = s3
            .elements()
            .filter(|&a| s3.element_order(a) != 2)
            .collect();
        assert_eq!(
            kernel_minimality_oracle(&s3, &KernelFunctor::Abelian, 24).unwrap(),
            a3
        );
        let v4 = corpus::group_v4();
        assert_eq!(
            kernel_minimality_oracle(&v4, &KernelFunctor::Trivial, 24).unwrap(),
            vec![0, 1, 2, 3]
        );
        let z6 = corpus::group_cyclic(6);
        assert_eq!(
            kernel_minimality_oracle(&z6, &KernelFunctor::PGroup(2), 24).unwrap(),
            vec![0, 2, 4]
        );
    }

    #[test]
    fn oracle_cap() {
        let s4 = corpus::group_s4();
        assert!(kernel_minimality_oracle(&s4, &KernelFunctor::Abelian, 23).is_err());
    }

    #[test]
    fn oracle_agrees_with_kernel_on_small_groups() {
        let functors = [
            KernelFunctor::Trivial,
            KernelFunctor::All,
            KernelFunctor::Abelian,
            KernelFunctor::PGroup(2),
            KernelFunctor::PGroup(3),
            KernelFunctor::PiGroup(vec![2, 3]),
            KernelFunctor::Nilpotent,
            KernelFunctor::Solvable,
            KernelFunctor::Verbal(vec![GroupWord::variable()]),
            KernelFunctor::Verbal(vec![GroupWord::commutator()]),
            KernelFunctor::Verbal(vec![GroupWord::parse("x1 x1").unwrap()]),
        ];
        for (name, g) in corpus::groups() {
            if g.order() > DEFAULT_ORACLE_CAP {
                continue;
            }
            for k in &functors {
                assert_eq!(
                    kernel_indices(&g, k),
                    kernel_minimality_oracle(&g, k, DEFAULT_ORACLE_CAP).unwrap(),
                    "{name} {k}"
                );
            }
        }
    }

    #[test]
    fn solvability_and_nilpotence_tests() {
        assert!(is_solvable(&corpus::group_s4()));
        assert!(!is_nilpotent(&corpus::group_s3()));
        assert!(is_nilpotent(&corpus::group_d4()));
        assert!(is_nilpotent(&corpus::group_q8()));
        assert!(is_nilpotent(&corpus::group_cyclic(6)));
    }
}

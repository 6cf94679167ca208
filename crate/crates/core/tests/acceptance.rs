//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion with
//! its running time and budget, and exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hbar::corpus;
use hbar::flow::{
    build_blowup, is_l_chain, is_strict, materialize_downclosure, rho, verify_all, SatSemigroup,
};
use hbar::group::{kernel_indices, kernel_minimality_oracle, GroupWord, KernelFunctor};
use hbar::languages::{alphabet_from_str, decide_separation, regex_to_dfa, Dfa, Verdict};
use hbar::saturation::{
    is_member, power_product, saturate, saturate_from, SaturationOptions, Strategy, SubsetElt,
};
use hbar::semigroup::{schutzenberger_right, FiniteSemigroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn functors() -> Vec<KernelFunctor> {
    vec![
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
    ]
}

fn set(xs: &[usize]) -> SubsetElt {
    SubsetElt::from_elements(xs).unwrap()
}

fn maximal(t: &FiniteSemigroup, k: &KernelFunctor, strategy: Strategy) -> Vec<SubsetElt> {
    saturate(t, k, strategy).unwrap().maximal().to_vec()
}

fn kernels_match_oracle() {
    for (name, g) in corpus::groups() {
        if !["z2", "z3", "z4", "v4", "z6", "s3"].contains(&name) {
            continue;
        }
        for k in functors() {
            let mut oracle = kernel_minimality_oracle(&g, &k, 24).unwrap();
            oracle.sort_unstable();
            assert_eq!(kernel_indices(&g, &k), oracle, "{name} {k}");
        }
    }
}

fn membership_equivalence() {
    for (name, t) in corpus::semigroups() {
        for k in functors() {
            let c = saturate(&t, &k, Strategy::Kernel).unwrap();
            assert_eq!(c.only_singletons(), is_member(&t, &k), "{name} {k}");
        }
    }
}

fn strategies_agree() {
    let cases = [
        (KernelFunctor::Trivial, GroupWord::variable()),
        (KernelFunctor::Abelian, GroupWord::commutator()),
    ];
    for (name, t) in corpus::semigroups() {
        for (k, w) in &cases {
            let kernel = maximal(&t, k, Strategy::Kernel);
            let opts = SaturationOptions {
                words: Some(vec![w.clone()]),
                ..SaturationOptions::default()
            };
            let seed: Vec<SubsetElt> = t.elements().map(SubsetElt::singleton).collect();
            let pseudo = saturate_from(&t, k, Strategy::Pseudoidentity, &seed, &opts).unwrap();
            assert_eq!(kernel, pseudo.maximal(), "{name} {k}");
        }
    }
}

fn named_instances() {
    let z2 = corpus::cyclic_group(2);
    assert_eq!(
        maximal(&z2, &KernelFunctor::Trivial, Strategy::Kernel),
        vec![set(&[0, 1])]
    );

    // A3 and its coset, found from permutation parity.
    let parity = |p: &[usize]| {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        inversions % 2
    };
    let perms = corpus::s3_permutations();
    let even: Vec<usize> = (0..6).filter(|&i| parity(&perms[i]) == 0).collect();
    let odd: Vec<usize> = (0..6).filter(|&i| parity(&perms[i]) == 1).collect();
    let mut expected = vec![set(&even), set(&odd)];
    expected.sort_unstable();
    let s3 = corpus::s3();
    for strategy in [Strategy::Kernel, Strategy::Pseudoidentity] {
        assert_eq!(maximal(&s3, &KernelFunctor::Abelian, strategy), expected);
        assert_eq!(
            maximal(&s3, &KernelFunctor::Trivial, strategy),
            vec![set(&[0, 1, 2, 3, 4, 5])]
        );
    }

    let rz2 = corpus::right_zero(2);
    for k in functors() {
        assert_eq!(
            maximal(&rz2, &k, Strategy::Kernel),
            vec![set(&[0]), set(&[1])],
            "{k}"
        );
    }
}

fn flow_verifier() {
    let varieties = [
        KernelFunctor::Trivial,
        KernelFunctor::Abelian,
        KernelFunctor::PGroup(2),
        KernelFunctor::All,
    ];
    for (name, t) in corpus::semigroups() {
        if t.size() > 6 {
            continue;
        }
        for k in &varieties {
            let c = saturate(&t, k, Strategy::Kernel).unwrap();
            let report = verify_all(&t, k, &c).unwrap();
            for check in [
                "FLOW",
                "HBAR",
                "COMPLETE",
                "BLOWUP",
                "RHO-RESPECT",
                "ZEIGER",
            ] {
                let r = report
                    .check(check)
                    .unwrap_or_else(|| panic!("{check} missing"));
                assert!(r.passed, "{name} {k} {check}: {:?}", r.witness);
            }
        }
    }
}

fn separation() {
    let a = alphabet_from_str("a").unwrap();
    let ab = alphabet_from_str("ab").unwrap();
    let even = regex_to_dfa("(aa)+", &a).unwrap();
    let odd = regex_to_dfa("a(aa)*", &a).unwrap();
    let (v, data) = decide_separation(&even, &odd, &KernelFunctor::Trivial).unwrap();
    let Verdict::NotSeparable { witness: (x, y) } = v else {
        panic!("(aa)+ and a(aa)* separated by an aperiodic language");
    };
    assert_eq!(even.spell(&data.words[x]), "aa");
    assert_eq!(even.spell(&data.words[y]), "a");
    let (v, _) = decide_separation(&even, &odd, &KernelFunctor::Abelian).unwrap();
    assert_eq!(v, Verdict::Separable);

    let l1 = regex_to_dfa("(ab)+", &ab).unwrap();
    let l2 = regex_to_dfa("(ba)+", &ab).unwrap();
    let (v, _) = decide_separation(&l1, &l2, &KernelFunctor::Trivial).unwrap();
    assert_eq!(v, Verdict::Separable);

    let pairs: Vec<(Dfa, Dfa)> = vec![
        (even.clone(), odd.clone()),
        (l1.clone(), l2.clone()),
        (l1.clone(), l1.complement_plus()),
        (
            regex_to_dfa("(aaa)+", &a).unwrap(),
            regex_to_dfa("a(aaa)*", &a).unwrap(),
        ),
        (
            regex_to_dfa("b*a(b*ab*a)*b*", &ab).unwrap(),
            regex_to_dfa("(b*ab*a)+b*|b+", &ab).unwrap(),
        ),
    ];
    for (d1, d2) in &pairs {
        let (v, _) = decide_separation(d1, d2, &KernelFunctor::All).unwrap();
        assert_eq!(v, Verdict::Separable);
    }
}

fn monotonicity() {
    let chains = [
        vec![
            KernelFunctor::Trivial,
            KernelFunctor::Abelian,
            KernelFunctor::Nilpotent,
            KernelFunctor::Solvable,
            KernelFunctor::All,
        ],
        vec![
            KernelFunctor::Trivial,
            KernelFunctor::PGroup(2),
            KernelFunctor::Solvable,
        ],
    ];
    for (name, t) in corpus::semigroups() {
        for chain in &chains {
            for w in chain.windows(2) {
                let small = maximal(&t, &w[0], Strategy::Kernel);
                let large = maximal(&t, &w[1], Strategy::Kernel);
                for x in &large {
                    assert!(
                        small.iter().any(|m| x.is_subset_of(*m)),
                        "{name}: {x} under {} not below {}",
                        w[1],
                        w[0]
                    );
                }
            }
        }
    }
}

/// A few transformation semigroups on three points, beyond the corpus.
fn structural_samples() -> Vec<FiniteSemigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out: Vec<FiniteSemigroup> = corpus::semigroups().into_iter().map(|(_, s)| s).collect();
    while out.len() < 25 {
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..3).map(|_| rng.gen_range(0..3)).collect())
            .collect();
        if let Ok(s) = FiniteSemigroup::from_transformations(3, &gens) {
            if s.size() <= 12 {
                out.push(s);
            }
        }
    }
    out
}

fn green_and_schutzenberger(t: &FiniteSemigroup) {
    let g = t.green();
    let n = t.size();
    let in_right_ideal = |x: usize, y: usize| x == y || t.elements().any(|s| t.mul(y, s) == x);
    let in_left_ideal = |x: usize, y: usize| x == y || t.elements().any(|s| t.mul(s, y) == x);
    let in_ideal = |x: usize, y: usize| {
        in_right_ideal(x, y)
            || in_left_ideal(x, y)
            || t.elements()
                .any(|a| t.elements().any(|b| t.mul(t.mul(a, y), b) == x))
    };
    for x in 0..n {
        for y in 0..n {
            assert_eq!(g.leq_r(x, y), in_right_ideal(x, y));
            assert_eq!(g.leq_l(x, y), in_left_ideal(x, y));
            assert_eq!(g.leq_j(x, y), in_ideal(x, y));
            if g.j_equiv(x, y) {
                assert!(!g.leq_r(x, y) || g.r_equiv(x, y), "stability R");
                assert!(!g.leq_l(x, y) || g.l_equiv(x, y), "stability L");
            }
        }
    }
    for h in g.h_classes() {
        let view = schutzenberger_right(t, h);
        assert_eq!(view.order(), h.len());
        let orbit: std::collections::BTreeSet<usize> =
            view.permutations.iter().map(|p| p[0]).collect();
        assert_eq!(orbit.len(), h.len(), "transitive");
        for p in &view.permutations {
            let fixes = (0..p.len()).any(|i| p[i] == i);
            assert!(
                !fixes || p.iter().enumerate().all(|(i, &j)| i == j),
                "regular action"
            );
        }
    }
}

/// L-chains of length at most `len` over `s`.
fn chains(s: &SatSemigroup, len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for q in &frontier {
            for x in 0..s.size() {
                let mut w: Vec<usize> = q.clone();
                w.push(x);
                if is_l_chain(s, &w) {
                    next.push(w);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Deletes one letter L-equivalent to its successor, at a random position,
/// until none is left.
fn reduce_randomly(s: &SatSemigroup, q: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut q = q.to_vec();
    loop {
        let spots: Vec<usize> = (0..q.len().saturating_sub(1))
            .filter(|&i| s.green().l_equiv(q[i], q[i + 1]))
            .collect();
        match spots.choose(rng) {
            Some(&i) => {
                q.remove(i);
            }
            None => return q,
        }
    }
}

fn rho_and_blowup(t: &FiniteSemigroup, k: &KernelFunctor, rng: &mut ChaCha8Rng) {
    let c = saturate(t, k, Strategy::Kernel).unwrap();
    let s = materialize_downclosure(t, &c, k, 6).unwrap();
    let b = build_blowup(&s, k).unwrap();
    let qs = chains(&s, 4);
    for q in &qs {
        let r = rho(&s, q).unwrap();
        assert_eq!(reduce_randomly(&s, q, rng), r, "confluence");
        assert_eq!(r == *q, is_strict(&s, q));
        assert_eq!(r.last(), q.last());
        assert_eq!(rho(&s, &r).unwrap(), r);
        if q.iter().all(|&x| s.is_h_element(x)) {
            assert!(is_strict(&s, &r) && r.iter().all(|&x| s.is_h_element(x)));
        }

        let bq = b.big_b(&s, q).unwrap();
        assert_eq!(bq.len(), q.len());
        assert!(is_l_chain(&s, &bq));
        assert!(bq.iter().all(|&x| s.is_h_element(x)));
        assert_eq!(b.big_b(&s, &bq).unwrap(), bq, "B idempotent");
        for (&x, &y) in q.iter().zip(&bq) {
            assert!(s.contains(x, y), "coordinatewise containment");
        }
    }
    // Concatenations that stay chains.
    for _ in 0..300 {
        let a = qs.choose(rng).unwrap();
        let b = qs.choose(rng).unwrap();
        let ab: Vec<usize> = a.iter().chain(b).copied().collect();
        if !is_l_chain(&s, &ab) {
            continue;
        }
        let whole = rho(&s, &ab).unwrap();
        let ra: Vec<usize> = rho(&s, a)
            .unwrap()
            .into_iter()
            .chain(b.iter().copied())
            .collect();
        let rb: Vec<usize> = a.iter().copied().chain(rho(&s, b).unwrap()).collect();
        assert_eq!(rho(&s, &ra).unwrap(), whole);
        assert_eq!(rho(&s, &rb).unwrap(), whole);
    }
}

fn power_closure(t: &FiniteSemigroup, k: &KernelFunctor) {
    let c = saturate(t, k, Strategy::Kernel).unwrap();
    for &x in c.members() {
        for &y in c.members() {
            assert!(c.index_of(power_product(t, x, y).unwrap()).is_some());
        }
    }
    let again = saturate_from(
        t,
        k,
        Strategy::Kernel,
        c.members(),
        &SaturationOptions::default(),
    )
    .unwrap();
    assert_eq!(again.members(), c.members());
}

fn structural_suites() {
    let samples = structural_samples();
    for t in &samples {
        green_and_schutzenberger(t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let varieties = [
        KernelFunctor::Trivial,
        KernelFunctor::Abelian,
        KernelFunctor::All,
    ];
    for (_, t) in corpus::semigroups() {
        for k in &varieties {
            rho_and_blowup(&t, k, &mut rng);
        }
    }
    for t in samples.iter().filter(|t| t.size() <= 8) {
        for k in functors() {
            power_closure(t, &k);
        }
    }
}

fn main() {
    let criteria: [(&str, fn(), u64); 8] = [
        ("1 kernel == oracle", kernels_match_oracle, 5),
        ("2 membership equivalence", membership_equivalence, 30),
        ("3 strategy agreement", strategies_agree, 60),
        ("4 named instances", named_instances, 60),
        ("5 flow verifier", flow_verifier, 300),
        ("6 separation verdicts", separation, 10),
        ("7 monotonicity", monotonicity, 60),
        ("8 structural suites", structural_suites, 60),
    ];
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(run)).is_ok();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let verdict = if ok && in_time { "PASS" } else { "FAIL" };
        let note = if ok && !in_time { " (over budget)" } else { "" };
        println!(
            "{verdict} {name} [{:.2}s / {budget}s]{note}",
            took.as_secs_f64()
        );
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

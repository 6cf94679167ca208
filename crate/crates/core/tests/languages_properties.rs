use hbar::group::KernelFunctor;
use hbar::languages::{
    alphabet_from_str, decide_separation, regex_to_dfa, transition_semigroup_of_dfa, Dfa, Verdict,
    DEFAULT_TRANSITION_CAP,
};
use hbar::saturation::{is_member, SubsetElt};
use proptest::prelude::*;

const REGEXES: &[(&str, &str)] = &[
    ("(aa)+", "a"),
    ("a(aa)*", "a"),
    ("(aaa)+", "a"),
    ("(ab)+", "ab"),
    ("(ba)+", "ab"),
    ("a(a|b)*", "ab"),
    ("(a|b)*b", "ab"),
    ("(a|b)*a(a|b)", "ab"),
    ("((a|b)(a|b))+", "ab"),
    ("b*a(b*ab*a)*b*", "ab"),
];

fn dfa(r: &str, letters: &str) -> Dfa {
    regex_to_dfa(r, &alphabet_from_str(letters).unwrap()).unwrap()
}

fn varieties() -> Vec<KernelFunctor> {
    vec![
        KernelFunctor::Trivial,
        KernelFunctor::Abelian,
        KernelFunctor::PGroup(2),
        KernelFunctor::Solvable,
        KernelFunctor::All,
    ]
}

proptest! {
    #[test]
    fn images_recognize_the_languages(
        which in 0..REGEXES.len(),
        word in proptest::collection::vec(0usize..2, 1..=8),
    ) {
        let (r, letters) = REGEXES[which];
        let d = dfa(r, letters);
        let c = d.complement_plus();
        let word: Vec<usize> = word.into_iter().map(|a| a % d.alphabet.len()).collect();
        let (_, data) = decide_separation(&d, &c, &KernelFunctor::Trivial).unwrap();
        let s = &data.semigroup;
        let x = word[1..]
            .iter()
            .fold(data.letter_map[word[0]], |acc, &a| s.mul(acc, data.letter_map[a]));
        prop_assert_eq!(data.image1.contains(&x), d.accepts(&word));
        prop_assert_eq!(data.image2.contains(&x), c.accepts(&word));
        prop_assert!(d.accepts(&word) != c.accepts(&word));
    }

    #[test]
    fn equal_elements_have_equal_acceptance(
        which in 0..REGEXES.len(),
        u in proptest::collection::vec(0usize..2, 1..=8),
        v in proptest::collection::vec(0usize..2, 1..=8),
    ) {
        let (r, letters) = REGEXES[which];
        let d = dfa(r, letters);
        let n = d.alphabet.len();
        let (u, v): (Vec<usize>, Vec<usize>) =
            (u.into_iter().map(|a| a % n).collect(), v.into_iter().map(|a| a % n).collect());
        let (s, map) = transition_semigroup_of_dfa(&d, DEFAULT_TRANSITION_CAP).unwrap();
        let elt = |w: &[usize]| w[1..].iter().fold(map[w[0]], |acc, &a| s.mul(acc, map[a]));
        if elt(&u) == elt(&v) {
            prop_assert_eq!(d.accepts(&u), d.accepts(&v));
        }
    }
}

/// Separability of a language from its complement is membership of its
/// syntactic semigroup.
#[test]
fn complement_separation_is_membership() {
    for &(r, letters) in REGEXES {
        let d = dfa(r, letters);
        let c = d.complement_plus();
        let (syntactic, _) = transition_semigroup_of_dfa(&d, DEFAULT_TRANSITION_CAP).unwrap();
        for k in varieties() {
            let (v, _) = decide_separation(&d, &c, &k).unwrap();
            assert_eq!(
                v == Verdict::Separable,
                is_member(&syntactic, &k),
                "{r} {k}"
            );
        }
    }
}

#[test]
fn separation_is_symmetric() {
    let pairs = [
        (("(aa)+", "a"), ("a(aa)*", "a")),
        (("(ab)+", "ab"), ("(ba)+", "ab")),
        (("a(a|b)*", "ab"), ("b(a|b)*", "ab")),
        (("(aaa)+", "a"), ("a(aaa)*", "a")),
    ];
    for ((r1, a1), (r2, a2)) in pairs {
        let (d1, d2) = (dfa(r1, a1), dfa(r2, a2));
        for k in varieties() {
            let (v12, data12) = decide_separation(&d1, &d2, &k).unwrap();
            let (v21, data21) = decide_separation(&d2, &d1, &k).unwrap();
            assert_eq!(
                matches!(v12, Verdict::Separable),
                matches!(v21, Verdict::Separable),
                "{r1} {r2} {k}"
            );
            for (v, data) in [(v12, &data12), (v21, &data21)] {
                if let Verdict::NotSeparable { witness: (x, y) } = v {
                    assert!(data.image1.contains(&x) && data.image2.contains(&y));
                }
            }
        }
    }
}

#[test]
fn everything_separates_under_all() {
    for &(r, letters) in REGEXES {
        let d = dfa(r, letters);
        let (v, _) = decide_separation(&d, &d.complement_plus(), &KernelFunctor::All).unwrap();
        assert_eq!(v, Verdict::Separable, "{r}");
    }
}

#[test]
fn witness_pair_is_pointlike_and_crosses_images() {
    let (d1, d2) = (dfa("(aa)+", "a"), dfa("a(aa)*", "a"));
    let (v, data) = decide_separation(&d1, &d2, &KernelFunctor::Trivial).unwrap();
    let Verdict::NotSeparable { witness: (x, y) } = v else {
        panic!("not separable expected");
    };
    let c = hbar::saturation::saturate(
        &data.semigroup,
        &KernelFunctor::Trivial,
        hbar::saturation::Strategy::Kernel,
    )
    .unwrap();
    assert!(c.is_pointlike(SubsetElt::from_elements(&[x, y]).unwrap()));
}

//! Built-in small semigroups and groups.
//!
//! Groups list their identity first. Permutations compose left to right.

use crate::group::FiniteGroup;
use crate::semigroup::FiniteSemigroup;

fn table<F: Fn(usize, usize) -> usize>(n: usize, f: F) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

fn semigroup<F: Fn(usize, usize) -> usize>(n: usize, f: F) -> FiniteSemigroup {
    FiniteSemigroup::from_table(table(n, f)).expect("corpus tables are associative")
}

/// The six permutations of `{0,1,2}` in lexicographic order.
pub fn s3_permutations() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ]
}

pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    semigroup(n, |i, j| (i + j) % n)
}

/// Klein four-group as bitwise xor on `0..4`.
pub fn klein_four() -> FiniteSemigroup {
    semigroup(4, |i, j| i ^ j)
}

/// S3 on the lexicographically ordered permutations; index 0 is the identity,
/// `{0, 3, 4}` is A3 and `{1, 2, 5}` the odd coset.
pub fn s3() -> FiniteSemigroup {
    let perms = s3_permutations();
    semigroup(6, |i, j| {
        let c: Vec<usize> = perms[i].iter().map(|&q| perms[j][q]).collect();
        perms.iter().position(|p| *p == c).unwrap()
    })
}

/// `x * y = y`.
pub fn right_zero(n: usize) -> FiniteSemigroup {
    semigroup(n, |_, j| j)
}

/// `x * y = x`.
pub fn left_zero(n: usize) -> FiniteSemigroup {
    semigroup(n, |i, _| i)
}

/// `{0, n}` with every product equal to `0`.
pub fn null_semigroup() -> FiniteSemigroup {
    semigroup(2, |_, _| 0)
}

/// Brandt semigroup B2: `0` is zero and `1..=4` are the matrix units
/// `E11, E12, E21, E22`.
pub fn brandt_b2() -> FiniteSemigroup {
    let unit = [(0, 0), (0, 1), (1, 0), (1, 1)];
    semigroup(5, |i, j| {
        if i == 0 || j == 0 {
            return 0;
        }
        let (a, b) = unit[i - 1];
        let (c, d) = unit[j - 1];
        if b == c {
            1 + unit.iter().position(|&u| u == (a, d)).unwrap()
        } else {
            0
        }
    })
}

/// Full transformation monoid on two points: identity, swap, constant 0,
/// constant 1.
pub fn full_transformations_2() -> FiniteSemigroup {
    let maps = [[0, 1], [1, 0], [0, 0], [1, 1]];
    semigroup(4, |i, j| {
        let c = [maps[j][maps[i][0]], maps[j][maps[i][1]]];
        maps.iter().position(|m| *m == c).unwrap()
    })
}

/// Z2 × RZ2; the pair `(i, j)` has index `2i + j`.
pub fn right_group_z2_rz2() -> FiniteSemigroup {
    cyclic_group(2).direct_product(&right_zero(2))
}

/// The bundled corpus, in a fixed order.
pub fn semigroups() -> Vec<(&'static str, FiniteSemigroup)> {
    vec![
        ("z2", cyclic_group(2)),
        ("z3", cyclic_group(3)),
        ("z4", cyclic_group(4)),
        ("v4", klein_four()),
        ("z6", cyclic_group(6)),
        ("s3", s3()),
        ("rz2", right_zero(2)),
        ("lz2", left_zero(2)),
        ("null2", null_semigroup()),
        ("b2", brandt_b2()),
        ("t2", full_transformations_2()),
    ]
}

/// Looks up a corpus semigroup by name.
pub fn semigroup_by_name(name: &str) -> Option<FiniteSemigroup> {
    semigroups()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s)
}

pub fn group_cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_table(table(n, |i, j| (i + j) % n)).unwrap()
}

pub fn group_v4() -> FiniteGroup {
    FiniteGroup::from_table(table(4, |i, j| i ^ j)).unwrap()
}

pub fn group_s3() -> FiniteGroup {
    FiniteGroup::from_permutations(&s3_permutations()).unwrap()
}

pub fn group_d4() -> FiniteGroup {
    FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap()
}

/// Quaternion group; element `4s + u` is `(-1)^s` times the unit `u` of
/// `1, i, j, k`.
pub fn group_q8() -> FiniteGroup {
    // unit products as (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_table(table(8, |x, y| {
        let (s, u) = UNIT[x % 4][y % 4];
        4 * ((x / 4 + y / 4 + s) % 2) + u
    }))
    .unwrap()
}

pub fn group_a4() -> FiniteGroup {
    FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]).unwrap()
}

pub fn group_s4() -> FiniteGroup {
    FiniteGroup::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap()
}

/// Small groups for kernel tests.
pub fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("z1", group_cyclic(1)),
        ("z2", group_cyclic(2)),
        ("z3", group_cyclic(3)),
        ("z4", group_cyclic(4)),
        ("v4", group_v4()),
        ("z6", group_cyclic(6)),
        ("s3", group_s3()),
        ("d4", group_d4()),
        ("q8", group_q8()),
        ("a4", group_a4()),
        ("s4", group_s4()),
    ]
}

use super::{BlowupOp, FlowError, Multiplier, SatSemigroup};
use crate::semigroup::Elt;

/// A word over `S`, first letter at index 0.
pub type Chain = Vec<Elt>;

/// `true` iff every letter is L-below the one before it.
pub fn is_l_chain(s: &SatSemigroup, q: &[Elt]) -> bool {
    q.windows(2).all(|w| s.green().leq_l(w[1], w[0]))
}

/// `true` iff consecutive letters are strictly L-decreasing.
pub fn is_strict(s: &SatSemigroup, q: &[Elt]) -> bool {
    q.windows(2).all(|w| s.green().lt_l(w[1], w[0]))
}

/// The retraction to strict chains: of each run of L-equivalent letters only
/// the last survives.
pub fn rho(s: &SatSemigroup, q: &[Elt]) -> Result<Chain, FlowError> {
    if !is_l_chain(s, q) {
        return Err(FlowError::NotAChain(format_chain(s, q)));
    }
    Ok(q.iter()
        .enumerate()
        .filter(|&(i, &x)| i + 1 == q.len() || !s.green().l_equiv(x, q[i + 1]))
        .map(|(_, &x)| x)
        .collect())
}

/// `Δ_m`: right multiplication of every letter by `m`.
pub fn delta(s: &SatSemigroup, q: &[Elt], m: Multiplier) -> Chain {
    q.iter().map(|&x| s.mul_by(x, m)).collect()
}

/// Shows a word last letter first, e.g. `({0,1}, {0})`; `ε` when empty.
pub fn format_chain(s: &SatSemigroup, q: &[Elt]) -> String {
    if q.is_empty() {
        return "ε".to_string();
    }
    let parts: Vec<String> = q.iter().rev().map(|&x| s.member(x).to_string()).collect();
    format!("({})", parts.join(", "))
}

impl BlowupOp {
    /// `B` on an arbitrary word: `(q · s)B = (q Δ_{m_{L_s}})B · sb`.
    pub fn big_b_word(&self, s: &SatSemigroup, q: &[Elt]) -> Chain {
        let mut out = Vec::with_capacity(q.len());
        let mut cur = q.to_vec();
        while let Some((&first, rest)) = cur.split_first() {
            out.push(self.apply(first));
            cur = delta(s, rest, self.multiplier_of(s, first));
        }
        out
    }

    /// `B` on an L-chain.
    pub fn big_b(&self, s: &SatSemigroup, q: &[Elt]) -> Result<Chain, FlowError> {
        if !is_l_chain(s, q) {
            return Err(FlowError::NotAChain(format_chain(s, q)));
        }
        Ok(self.big_b_word(s, q))
    }

    /// `τ̄_t`: `(q Δ_t · t)B`, with `t` an element of `T`.
    pub fn tau_bar(&self, s: &SatSemigroup, q: &[Elt], t: Elt) -> Chain {
        let letter = s.singleton(t);
        let mut w = Vec::with_capacity(q.len() + 1);
        w.push(letter);
        w.extend(delta(s, q, Some(letter)));
        self.big_b_word(s, &w)
    }

    /// `τ_t = τ̄_t ρ` on a chain.
    pub fn tau_step(&self, s: &SatSemigroup, q: &[Elt], t: Elt) -> Result<Chain, FlowError> {
        rho(s, &self.tau_bar(s, q, t))
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_blowup;
    use super::super::tests::sat;
    use super::*;
    use crate::corpus;
    use crate::group::KernelFunctor;
    use crate::saturation::SubsetElt;

    fn idx(s: &SatSemigroup, xs: &[Elt]) -> Elt {
        s.index_of(SubsetElt::from_elements(xs).unwrap()).unwrap()
    }

    #[test]
    fn rho_examples() {
        // in T2 the identity and the swap form one L-class above the constants
        let t2 = corpus::full_transformations_2();
        let s = sat(&t2, &KernelFunctor::All);
        let (id, swap, c0) = (idx(&s, &[0]), idx(&s, &[1]), idx(&s, &[2]));
        assert!(s.green().l_equiv(id, swap));
        assert_eq!(rho(&s, &[id, swap, c0]).unwrap(), vec![swap, c0]);
        assert_eq!(rho(&s, &[id, c0]).unwrap(), vec![id, c0]);
        assert_eq!(rho(&s, &[]).unwrap(), Vec::<Elt>::new());
        assert!(matches!(rho(&s, &[c0, id]), Err(FlowError::NotAChain(_))));
    }

    #[test]
    fn big_b_small_words() {
        let z2 = corpus::cyclic_group(2);
        let k = KernelFunctor::Trivial;
        let s = sat(&z2, &k);
        let b = build_blowup(&s, &k).unwrap();
        let (e, g, full) = (idx(&s, &[0]), idx(&s, &[1]), idx(&s, &[0, 1]));
        assert_eq!(b.big_b(&s, &[]).unwrap(), Vec::<Elt>::new());
        assert_eq!(b.big_b(&s, &[g]).unwrap(), vec![full]);
        // (q2, q1) B = (q2 m1 m2, q1 m1)
        let m1 = b.multiplier_of(&s, e);
        let m2 = b.multiplier_of(&s, s.mul_by(g, m1));
        let expected = vec![s.mul_by(e, m1), s.mul_by(s.mul_by(g, m1), m2)];
        assert_eq!(b.big_b(&s, &[e, g]).unwrap(), expected);
    }

    #[test]
    fn z2_trivial_transitions() {
        let z2 = corpus::cyclic_group(2);
        let k = KernelFunctor::Trivial;
        let s = sat(&z2, &k);
        let b = build_blowup(&s, &k).unwrap();
        let full = idx(&s, &[0, 1]);
        assert_eq!(b.tau_step(&s, &[], 1).unwrap(), vec![full]);
        assert_eq!(b.tau_bar(&s, &[full], 1), vec![full, full]);
        assert_eq!(b.tau_step(&s, &[full], 1).unwrap(), vec![full]);
        assert_eq!(format_chain(&s, &[full]), "({0,1})");
    }

    #[test]
    fn identity_blowup_transitions_are_rho_of_product() {
        let k = KernelFunctor::All;
        for (name, t) in corpus::semigroups() {
            let s = sat(&t, &k);
            let b = build_blowup(&s, &k).unwrap();
            for x in 0..s.size() {
                for a in t.elements() {
                    let letter = s.singleton(a);
                    let mut w = vec![letter];
                    w.push(s.mul(x, letter));
                    assert_eq!(
                        b.tau_step(&s, &[x], a).unwrap(),
                        rho(&s, &w).unwrap(),
                        "{name}"
                    );
                }
            }
        }
    }
}

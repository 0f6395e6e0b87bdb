//! Local actions `β(t,i)` and the canonical action on rational points.

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::forest::Tree;
use crate::generators::{apply_word, invert_word, Generator};
use crate::point::RationalPoint;
use crate::transducer::{Equivalence, Transducer};

/// The four generator machines for one `n`.
#[derive(Clone, Debug)]
pub struct Machines {
    n: usize,
    a0: Transducer,
    a1: Transducer,
    b0: Transducer,
    b1: Transducer,
}

impl Machines {
    pub fn new(n: usize) -> Result<Machines> {
        Ok(Machines {
            n,
            a0: Generator::A0.transducer(n)?,
            a1: Generator::A1.transducer(n)?,
            b0: Generator::B0.transducer(n)?,
            b1: Generator::B1.transducer(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, g: Generator) -> &Transducer {
        match g {
            Generator::A0 => &self.a0,
            Generator::A1 => &self.a1,
            Generator::B0 => &self.b0,
            Generator::B1 => &self.b1,
        }
    }

    /// Machine for `C¹∘⋯∘C^l`.
    pub fn word(&self, word: &[Generator]) -> Transducer {
        let mut acc = Transducer::identity();
        for g in word.iter().rev() {
            acc = Transducer::compose(&acc, self.get(*g));
        }
        acc
    }

    /// `β(t,i)` for the 0-based leaf `i`.
    pub fn leaf(&self, t: &Tree, i: usize) -> Result<Transducer> {
        Ok(self.word(&leaf_word(t, i)?))
    }
}

/// Generator word `C¹⋯C^l` read along the path to leaf `i` (0-based).
pub fn leaf_word(t: &Tree, i: usize) -> Result<Vec<Generator>> {
    let path = t
        .leaf_path(i)
        .ok_or(Error::LeafIndex { index: i + 1, leaves: t.leaves() })?;
    Ok(path.into_iter().map(|(c, d)| Generator::for_step(c, d)).collect())
}

/// `β(t,i)` with `1 ≤ i ≤ leaves(t)`.
pub fn local_action(n: usize, t: &Tree, i: usize) -> Result<Transducer> {
    if i == 0 {
        return Err(Error::LeafIndex { index: 0, leaves: t.leaves() });
    }
    Machines::new(n)?.leaf(t, i - 1)
}

/// An element prepared for evaluation: one `(prefix, machine)` pair per leaf
/// of an a-tree denominator.
#[derive(Clone, Debug)]
pub struct CanonicalAction {
    pieces: Vec<(Vec<u8>, Transducer)>,
}

impl CanonicalAction {
    pub fn new(g: &GroupElement) -> Result<CanonicalAction> {
        let m = Machines::new(g.n())?;
        let (t, pi, s) = g.with_a_tree_denominator()?;
        let pieces = s
            .leaf_addresses()
            .into_iter()
            .enumerate()
            .map(|(i, addr)| Ok((addr.0, m.leaf(&t, pi.apply(i))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CanonicalAction { pieces })
    }

    /// Like [`CanonicalAction::moved_point`], but builds one leaf machine at
    /// a time and stops at the first leaf that moves something.
    pub fn first_moved_point(g: &GroupElement) -> Result<Option<Option<RationalPoint>>> {
        let m = Machines::new(g.n())?;
        let (t, pi, s) = g.with_a_tree_denominator()?;
        for (i, addr) in s.leaf_addresses().into_iter().enumerate() {
            let machine = m.leaf(&t, pi.apply(i))?;
            if let Equivalence::Different { witness } = machine.equivalent(&Transducer::prefix(&addr.0)) {
                return Ok(Some(witness.map(|w| w.prepend(&addr.0))));
            }
        }
        Ok(None)
    }

    pub fn pieces(&self) -> &[(Vec<u8>, Transducer)] {
        &self.pieces
    }

    pub fn apply(&self, x: &RationalPoint) -> RationalPoint {
        for (prefix, machine) in &self.pieces {
            if let Some(rest) = x.strip_prefix(prefix) {
                return machine.eval(&rest);
            }
        }
        unreachable!("leaf cones of an a-tree cover the Cantor space")
    }

    /// `None` if the action is trivial, otherwise `Some(witness)` where a
    /// moved point was found.
    pub fn moved_point(&self) -> Option<Option<RationalPoint>> {
        for (prefix, machine) in &self.pieces {
            match machine.equivalent(&Transducer::prefix(prefix)) {
                Equivalence::Equal => {}
                Equivalence::Different { witness } => {
                    // the machine and the prefix map differ on `witness`; both
                    // act on the same leaf cone, so prefix it back
                    let w = witness.map(|w| w.prepend(prefix));
                    return Some(w);
                }
            }
        }
        None
    }
}

/// Canonical action computed without transducers: find the unique leaf of
/// the denominator whose local action hits `x`, invert it step by step and
/// apply the numerator's generator word directly.
pub fn act_direct(g: &GroupElement, x: &RationalPoint) -> RationalPoint {
    let n = g.n();
    let s = g.denominator();
    let mut hits = (0..s.leaves()).filter_map(|i| {
        let w = leaf_word(s, i).expect("leaf in range");
        invert_word(n, &w, x).map(|y| (i, y))
    });
    let (i, y) = hits.next().expect("leaf images partition the Cantor space");
    debug_assert!(hits.next().is_none());
    let w = leaf_word(g.numerator(), g.permutation().apply(i)).expect("leaf in range");
    apply_word(n, &w, &y)
}

/// How many leaves of `t` have `x` in the image of their local action.
pub fn leaf_image_count(n: usize, t: &Tree, x: &RationalPoint) -> usize {
    (0..t.leaves())
        .filter(|&i| invert_word(n, &leaf_word(t, i).expect("leaf in range"), x).is_some())
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::Colour;
    use crate::syntax::parse_tree;
    use Generator::*;

    #[test]
    fn words_of_example_tree() {
        let t = parse_tree("a(b(I,a(I,I)),I)").unwrap();
        assert_eq!(leaf_word(&t, 0).unwrap(), vec![A0, B0]);
        assert_eq!(leaf_word(&t, 1).unwrap(), vec![A0, B1, A0]);
        assert_eq!(leaf_word(&t, 2).unwrap(), vec![A0, B1, A1]);
        assert_eq!(leaf_word(&t, 3).unwrap(), vec![A1]);
        assert!(local_action(3, &t, 5).is_err());
        assert!(local_action(3, &t, 0).is_err());
    }

    #[test]
    fn trivial_tree_is_identity() {
        assert!(local_action(3, &Tree::Leaf, 1).unwrap().equal(&Transducer::identity()));
    }

    #[test]
    fn skein_invariance() {
        for n in 3..=6 {
            let m = Machines::new(n).unwrap();
            let tau = Tree::tau(n, Colour::A).unwrap();
            let rho = Tree::right_vine(n, Colour::B);
            for i in 0..=n {
                assert!(m.leaf(&tau, i).unwrap().equal(&m.leaf(&rho, i).unwrap()), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn partition_of_small_tree() {
        let t = parse_tree("b(a(I,b(I,I)),b(I,I))").unwrap();
        for x in ["(0)", "(1)", "1(0)", "01(10)", "11(0)", "0(1)"] {
            let x = RationalPoint::parse(x).unwrap();
            assert_eq!(leaf_image_count(3, &t, &x), 1, "{x}");
        }
    }
}

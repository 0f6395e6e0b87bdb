//! The maps `A₀, A₁, B₀, B₁` of the Cantor space and the partition `(μ_i)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::Colour;
use crate::point::RationalPoint;
use crate::transducer::{Edge, Transducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A0,
    A1,
    B0,
    B1,
}

impl Generator {
    /// The map attached to a caret of colour `c` when the path turns `bit`.
    pub fn for_step(c: Colour, bit: u8) -> Generator {
        match (c, bit) {
            (Colour::A, 0) => Generator::A0,
            (Colour::A, _) => Generator::A1,
            (Colour::B, 0) => Generator::B0,
            (Colour::B, _) => Generator::B1,
        }
    }

    pub fn transducer(self, n: usize) -> Result<Transducer> {
        let table = PartitionTable::new(n)?;
        Ok(match self {
            Generator::A0 => Transducer::prefix(&[0]),
            Generator::A1 => Transducer::prefix(&[1]),
            Generator::B0 => Transducer::prefix(&vec![0; n - 1]),
            Generator::B1 => b1_machine(&table),
        })
    }

    /// Direct evaluation, independent of the transducer.
    pub fn apply(self, n: usize, x: &RationalPoint) -> RationalPoint {
        match self {
            Generator::A0 => x.prepend(&[0]),
            Generator::A1 => x.prepend(&[1]),
            Generator::B0 => x.prepend(&vec![0; n - 1]),
            Generator::B1 => {
                let table = PartitionTable::new(n).expect("n >= 3");
                if *x == RationalPoint::ones() {
                    return x.clone();
                }
                let (m, rest) = strip_pairs(x);
                let j = table.code_index(&rest);
                let (mut head, tail) = if j == n {
                    let mut h = vec![1, 1];
                    h.extend_from_slice(table.leaf(1));
                    (h, rest.shift(table.leaf(n).len()))
                } else {
                    (table.leaf(j + 1).to_vec(), rest.shift(table.leaf(j).len()))
                };
                let mut pre = vec![1; 2 * m];
                pre.append(&mut head);
                tail.prepend(&pre)
            }
        }
    }

    /// The preimage of `y`, or `None` when `y` lies outside the image.
    pub fn invert(self, n: usize, y: &RationalPoint) -> Option<RationalPoint> {
        match self {
            Generator::A0 => y.strip_prefix(&[0]),
            Generator::A1 => y.strip_prefix(&[1]),
            Generator::B0 => y.strip_prefix(&vec![0; n - 1]),
            Generator::B1 => {
                let table = PartitionTable::new(n).expect("n >= 3");
                if *y == RationalPoint::ones() {
                    return Some(y.clone());
                }
                let (m, rest) = strip_pairs(y);
                let j = table.code_index(&rest);
                let tail = rest.shift(table.leaf(j).len());
                let pre = if j == 1 {
                    if m == 0 {
                        return None;
                    }
                    let mut p = vec![1; 2 * (m - 1)];
                    p.extend_from_slice(table.leaf(n));
                    p
                } else {
                    let mut p = vec![1; 2 * m];
                    p.extend_from_slice(table.leaf(j - 1));
                    p
                };
                Some(tail.prepend(&pre))
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::A0 => "A0",
            Generator::A1 => "A1",
            Generator::B0 => "B0",
            Generator::B1 => "B1",
        };
        f.write_str(s)
    }
}

/// Count and remove leading `11` pairs. Not to be called on `1̄`.
fn strip_pairs(x: &RationalPoint) -> (usize, RationalPoint) {
    let mut m = 0;
    let mut x = x.clone();
    while x.starts_with(&[1, 1]) {
        x = x.shift(2);
        m += 1;
    }
    (m, x)
}

/// Leaf addresses `ℓ₁..ℓ_{n+1}` of `τ_n` and the derived addresses `μ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    n: usize,
    leaves: Vec<Vec<u8>>,
}

impl PartitionTable {
    pub fn new(n: usize) -> Result<PartitionTable> {
        if n < 3 {
            return Err(Error::InvalidIndex(n));
        }
        let mut leaves = vec![vec![0; n - 1]];
        for j in 2..n {
            let mut w = vec![0; n - j];
            w.push(1);
            leaves.push(w);
        }
        leaves.push(vec![1, 0]);
        leaves.push(vec![1, 1]);
        Ok(PartitionTable { n, leaves })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ℓ_j`, 1-based, `1 ≤ j ≤ n+1`.
    pub fn leaf(&self, j: usize) -> &[u8] {
        &self.leaves[j - 1]
    }

    /// `μ_i = 1^{2m}·ℓ_j` where `i = mn + j`, `1 ≤ j ≤ n`.
    pub fn mu(&self, i: usize) -> Vec<u8> {
        assert!(i >= 1);
        let m = (i - 1) / self.n;
        let j = i - m * self.n;
        let mut w = vec![1; 2 * m];
        w.extend_from_slice(self.leaf(j));
        w
    }

    /// Index `j ≤ n` of the code word `ℓ_j` starting `x`; `x` must not start
    /// with `11`.
    fn code_index(&self, x: &RationalPoint) -> usize {
        (1..=self.n)
            .find(|&j| x.starts_with(self.leaf(j)))
            .expect("{ℓ_1..ℓ_n, 11} is a complete prefix code")
    }
}

/// Trie over the prefix code `{ℓ₁, …, ℓ_n, 11}` followed by a copy state.
fn b1_machine(table: &PartitionTable) -> Transducer {
    let n = table.n;
    // states: 0 root, 1 after "1", 2..=n-1 after 0^k (k = state - 1), n copy
    let root = 0;
    let one = 1;
    let zeros = |k: usize| k + 1;
    let copy = n;
    let copy_edges = [Edge { output: vec![0], next: copy }, Edge { output: vec![1], next: copy }];
    let emit = |j: usize| -> Edge {
        if j == n {
            let mut o = vec![1, 1];
            o.extend_from_slice(table.leaf(1));
            Edge { output: o, next: copy }
        } else {
            Edge { output: table.leaf(j + 1).to_vec(), next: copy }
        }
    };
    let mut edges = vec![Vec::new(); n + 1];
    edges[root] = vec![Edge { output: vec![], next: zeros(1) }, Edge { output: vec![], next: one }];
    edges[one] = vec![emit(n), Edge { output: vec![1, 1], next: root }];
    for k in 1..=n - 2 {
        let on0 = if k + 1 == n - 1 { emit(1) } else { Edge { output: vec![], next: zeros(k + 1) } };
        edges[zeros(k)] = vec![on0, emit(n - k)];
    }
    edges[copy] = copy_edges.to_vec();
    let edges = edges
        .into_iter()
        .map(|v| <[Edge; 2]>::try_from(v).expect("two edges per state"))
        .collect();
    Transducer::new(root, vec![], edges).expect("trie has no silent cycle")
}

/// Apply a word of generators, rightmost first (composition order).
pub fn apply_word(n: usize, word: &[Generator], x: &RationalPoint) -> RationalPoint {
    word.iter().rev().fold(x.clone(), |acc, g| g.apply(n, &acc))
}

/// Preimage under a word of generators, leftmost inverted first.
pub fn invert_word(n: usize, word: &[Generator], y: &RationalPoint) -> Option<RationalPoint> {
    word.iter().try_fold(y.clone(), |acc, g| g.invert(n, &acc))
}

/// The machine for a word `C¹∘C²∘⋯∘C^l`.
pub fn word_machine(n: usize, word: &[Generator]) -> Result<Transducer> {
    let mut acc = Transducer::identity();
    for g in word.iter().rev() {
        acc = Transducer::compose(&acc, &g.transducer(n)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Generator::*;

    fn pt(s: &str) -> RationalPoint {
        RationalPoint::parse(s).unwrap()
    }

    #[test]
    fn b1_small_cases() {
        let b1 = B1.transducer(3).unwrap();
        assert_eq!(b1.eval(&pt("00(10)")), pt("01(10)"));
        assert_eq!(b1.eval(&pt("01(0)")), pt("10(0)"));
        assert_eq!(b1.eval(&pt("10(0)")), pt("1100(0)"));
        assert_eq!(b1.eval(&RationalPoint::ones()), RationalPoint::ones());
        assert_eq!(b1.states(), 4);
    }

    #[test]
    fn mu_recurrence() {
        for n in 3..=6 {
            let t = PartitionTable::new(n).unwrap();
            assert_eq!(t.mu(1), vec![0; n - 1]);
            for i in 1..=50 {
                let mut w = vec![1, 1];
                w.extend(t.mu(i));
                assert_eq!(t.mu(i + n), w);
            }
        }
        assert!(PartitionTable::new(2).is_err());
    }

    #[test]
    fn b1_advances_mu() {
        for n in 3..=5 {
            let t = PartitionTable::new(n).unwrap();
            let b1 = B1.transducer(n).unwrap();
            let b1n = word_machine(n, &vec![B1; n]).unwrap();
            for i in 1..=20 {
                for x in ["(0)", "(1)", "1(01)", "0110(001)"] {
                    let x = pt(x);
                    assert_eq!(b1.eval(&x.prepend(&t.mu(i))), x.prepend(&t.mu(i + 1)));
                    let mut w = vec![1, 1];
                    w.extend(t.mu(i));
                    assert_eq!(b1n.eval(&x.prepend(&t.mu(i))), x.prepend(&w));
                }
            }
        }
    }

    #[test]
    fn mu_cones_partition() {
        // every point other than 1̄ lies in exactly one cone μ_i·𝔠
        for n in 3..=5 {
            let t = PartitionTable::new(n).unwrap();
            for x in ["(0)", "0(1)", "1110(1)", "(110)", "111111(0)"] {
                let x = pt(x);
                let hits = (1..=40).filter(|&i| x.starts_with(&t.mu(i))).count();
                assert_eq!(hits, 1, "{x}");
            }
            assert!((1..=40).all(|i| !RationalPoint::ones().starts_with(&t.mu(i))));
        }
    }

    fn point() -> impl Strategy<Value = RationalPoint> {
        (prop::collection::vec(0u8..2, 0..8), prop::collection::vec(0u8..2, 1..4))
            .prop_map(|(u, p)| RationalPoint::new(u, p).unwrap())
    }

    proptest! {
        #[test]
        fn machine_matches_direct(n in 3usize..7, x in point()) {
            for g in [A0, A1, B0, B1] {
                prop_assert_eq!(g.transducer(n).unwrap().eval(&x), g.apply(n, &x));
                prop_assert_eq!(g.invert(n, &g.apply(n, &x)), Some(x.clone()));
            }
        }

        #[test]
        fn b1_image_misses_first_cone(n in 3usize..7, x in point()) {
            let y = x.prepend(&vec![0; n - 1]);
            prop_assert_eq!(B1.invert(n, &y), None);
        }
    }
}

//! Coloured binary trees and forests.
//!
//! Trees are immutable values. Two trees are equal here iff they are equal as
//! *free* trees; identification under the skein relation lives in
//! [`crate::skein`].

use std::fmt;

use crate::error::{Error, Result};

/// Vertex colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    A,
    B,
}

impl Colour {
    pub fn as_char(self) -> char {
        match self {
            Colour::A => 'a',
            Colour::B => 'b',
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A vertex address: a word over {0,1}, most significant turn first.
/// The empty word is the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<u8>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Address(bits.to_vec())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: u8) -> Self {
        let mut v = self.0.clone();
        v.push(bit);
        Address(v)
    }

    pub fn join(&self, rest: &[u8]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(rest);
        Address(v)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A word over {a, b}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColourWord(pub Vec<Colour>);

impl ColourWord {
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'a' => Ok(Colour::A),
                'b' => Ok(Colour::B),
                _ => Err(Error::Parse {
                    pos: i,
                    msg: format!("expected 'a' or 'b', found {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(ColourWord)
    }

    pub fn letters(&self) -> &[Colour] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ColourWord) -> ColourWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ColourWord(v)
    }
}

impl fmt::Display for ColourWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Which outer edge of a forest to read colours along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

/// A rooted full binary tree with coloured interior vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Colour, Box<Tree>, Box<Tree>),
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "I"),
            Tree::Node(c, l, r) => write!(f, "{c}({l},{r})"),
        }
    }
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree::Leaf
    }

    pub fn node(c: Colour, left: Tree, right: Tree) -> Tree {
        Tree::Node(c, Box::new(left), Box::new(right))
    }

    /// The single caret `Y_c`.
    pub fn caret(c: Colour) -> Tree {
        Tree::node(c, Tree::Leaf, Tree::Leaf)
    }

    /// Left vine `λ_k(c)`. `k = 0` gives the trivial tree.
    pub fn left_vine(k: usize, c: Colour) -> Tree {
        (0..k).fold(Tree::Leaf, |acc, _| Tree::node(c, acc, Tree::Leaf))
    }

    /// Right vine `ρ_k(c)`. `k = 0` gives the trivial tree.
    pub fn right_vine(k: usize, c: Colour) -> Tree {
        (0..k).fold(Tree::Leaf, |acc, _| Tree::node(c, Tree::Leaf, acc))
    }

    /// Right vine whose spine carries the given colours, root first.
    pub fn coloured_right_vine(colours: &[Colour]) -> Tree {
        colours
            .iter()
            .rev()
            .fold(Tree::Leaf, |acc, &c| Tree::node(c, Tree::Leaf, acc))
    }

    /// `τ_n(c) = Y∘(λ_{n-2} ⊗ Y)`, a tree with `n` carets.
    pub fn tau(n: usize, c: Colour) -> Result<Tree> {
        if n < 3 {
            return Err(Error::InvalidIndex(n));
        }
        Ok(Tree::node(c, Tree::left_vine(n - 2, c), Tree::caret(c)))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn colour(&self) -> Option<Colour> {
        match self {
            Tree::Leaf => None,
            Tree::Node(c, _, _) => Some(*c),
        }
    }

    pub fn left(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Node(_, l, _) => Some(l),
        }
    }

    pub fn right(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Node(_, _, r) => Some(r),
        }
    }

    pub fn carets(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(_, l, r) => 1 + l.carets() + r.carets(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.carets() + 1
    }

    pub fn count_colour(&self, colour: Colour) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c, l, r) => {
                usize::from(*c == colour) + l.count_colour(colour) + r.count_colour(colour)
            }
        }
    }

    pub fn is_monochrome(&self, colour: Colour) -> bool {
        self.count_colour(colour) == self.carets()
    }

    /// True when every interior vertex is coloured `a`.
    pub fn is_a_tree(&self) -> bool {
        self.count_colour(Colour::B) == 0
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Leaf addresses, left to right.
    pub fn leaf_addresses(&self) -> Vec<Address> {
        let mut out = Vec::with_capacity(self.leaves());
        let mut path = Vec::new();
        fn walk(t: &Tree, path: &mut Vec<u8>, out: &mut Vec<Address>) {
            match t {
                Tree::Leaf => out.push(Address(path.clone())),
                Tree::Node(_, l, r) => {
                    path.push(0);
                    walk(l, path, out);
                    path.pop();
                    path.push(1);
                    walk(r, path, out);
                    path.pop();
                }
            }
        }
        walk(self, &mut path, &mut out);
        out
    }

    /// Interior vertices in pre-order, with their addresses.
    pub fn interior_vertices(&self) -> Vec<(Address, Colour)> {
        let mut out = Vec::with_capacity(self.carets());
        let mut path = Vec::new();
        fn walk(t: &Tree, path: &mut Vec<u8>, out: &mut Vec<(Address, Colour)>) {
            if let Tree::Node(c, l, r) = t {
                out.push((Address(path.clone()), *c));
                path.push(0);
                walk(l, path, out);
                path.pop();
                path.push(1);
                walk(r, path, out);
                path.pop();
            }
        }
        walk(self, &mut path, &mut out);
        out
    }

    /// Colours and turns along the root-to-leaf path of leaf `i` (0-based).
    pub fn leaf_path(&self, i: usize) -> Option<Vec<(Colour, u8)>> {
        let mut out = Vec::new();
        let mut node = self;
        let mut i = i;
        loop {
            match node {
                Tree::Leaf => return (i == 0).then_some(out),
                Tree::Node(c, l, r) => {
                    let ll = l.leaves();
                    if i < ll {
                        out.push((*c, 0));
                        node = l;
                    } else {
                        out.push((*c, 1));
                        i -= ll;
                        node = r;
                    }
                }
            }
        }
    }

    pub fn subtree(&self, at: &Address) -> Option<&Tree> {
        let mut node = self;
        for &b in at.bits() {
            node = match node {
                Tree::Leaf => return None,
                Tree::Node(_, l, r) => {
                    if b == 0 {
                        l
                    } else {
                        r
                    }
                }
            };
        }
        Some(node)
    }

    /// Index (0-based) of the leaf at `at`, if `at` is a leaf.
    pub fn leaf_index(&self, at: &Address) -> Option<usize> {
        let mut node = self;
        let mut idx = 0;
        for &b in at.bits() {
            match node {
                Tree::Leaf => return None,
                Tree::Node(_, l, r) => {
                    if b == 0 {
                        node = l;
                    } else {
                        idx += l.leaves();
                        node = r;
                    }
                }
            }
        }
        node.is_leaf().then_some(idx)
    }

    /// Replace the subtree rooted at `at` with `new`.
    pub fn with_subtree(&self, at: &Address, new: Tree) -> Result<Tree> {
        fn go(t: &Tree, bits: &[u8], new: Tree) -> Option<Tree> {
            match bits.split_first() {
                None => Some(new),
                Some((&b, rest)) => match t {
                    Tree::Leaf => None,
                    Tree::Node(c, l, r) => {
                        if b == 0 {
                            Some(Tree::Node(*c, Box::new(go(l, rest, new)?), r.clone()))
                        } else {
                            Some(Tree::Node(*c, l.clone(), Box::new(go(r, rest, new)?)))
                        }
                    }
                },
            }
        }
        go(self, at.bits(), new).ok_or_else(|| Error::NoVertex(at.to_string()))
    }

    /// Graft `trees[i]` onto the i-th leaf. Requires `trees.len() == leaves()`.
    pub fn graft(&self, trees: &[Tree]) -> Result<Tree> {
        if trees.len() != self.leaves() {
            return Err(Error::Arity {
                expected: self.leaves(),
                found: trees.len(),
            });
        }
        let mut it = trees.iter();
        Ok(self.graft_iter(&mut it))
    }

    fn graft_iter<'a>(&self, it: &mut impl Iterator<Item = &'a Tree>) -> Tree {
        match self {
            Tree::Leaf => it.next().expect("arity checked").clone(),
            Tree::Node(c, l, r) => {
                let l = l.graft_iter(it);
                let r = r.graft_iter(it);
                Tree::node(*c, l, r)
            }
        }
    }

    /// Graft `tree` onto the leaf with index `leaf` (0-based).
    pub fn graft_at_leaf(&self, leaf: usize, tree: &Tree) -> Result<Tree> {
        let n = self.leaves();
        if leaf >= n {
            return Err(Error::LeafIndex { index: leaf + 1, leaves: n });
        }
        let trees: Vec<Tree> = (0..n)
            .map(|i| if i == leaf { tree.clone() } else { Tree::Leaf })
            .collect();
        self.graft(&trees)
    }

    /// Interpreting `self` as a prefix of `bigger` (same shape above its
    /// leaves), return the subtrees of `bigger` hanging at each leaf.
    pub fn growth_into(&self, bigger: &Tree) -> Option<Vec<Tree>> {
        let mut out = Vec::with_capacity(self.leaves());
        fn go(small: &Tree, big: &Tree, out: &mut Vec<Tree>) -> bool {
            match (small, big) {
                (Tree::Leaf, b) => {
                    out.push(b.clone());
                    true
                }
                (Tree::Node(c1, l1, r1), Tree::Node(c2, l2, r2)) if c1 == c2 => {
                    go(l1, l2, out) && go(r1, r2, out)
                }
                _ => false,
            }
        }
        go(self, bigger, &mut out).then_some(out)
    }

    /// True if every interior vertex of `pattern` sits, offset by `at`, on an
    /// identically coloured interior vertex of `self`.
    pub fn subtree_match(&self, at: &Address, pattern: &Tree) -> bool {
        fn go(t: &Tree, p: &Tree) -> bool {
            match (t, p) {
                (_, Tree::Leaf) => true,
                (Tree::Node(c1, l1, r1), Tree::Node(c2, l2, r2)) => {
                    c1 == c2 && go(l1, l2) && go(r1, r2)
                }
                (Tree::Leaf, Tree::Node(..)) => false,
            }
        }
        self.subtree(at).is_some_and(|s| go(s, pattern))
    }

    /// Subtrees of `self` hanging below the leaves of `pattern` placed at `at`.
    pub fn hanging_below(&self, at: &Address, pattern: &Tree) -> Option<Vec<Tree>> {
        let sub = self.subtree(at)?;
        let mut out = Vec::with_capacity(pattern.leaves());
        fn go(t: &Tree, p: &Tree, out: &mut Vec<Tree>) -> bool {
            match (t, p) {
                (t, Tree::Leaf) => {
                    out.push(t.clone());
                    true
                }
                (Tree::Node(c1, l1, r1), Tree::Node(c2, l2, r2)) => {
                    c1 == c2 && go(l1, l2, out) && go(r1, r2, out)
                }
                (Tree::Leaf, Tree::Node(..)) => false,
            }
        }
        go(sub, pattern, &mut out).then_some(out)
    }

    /// Replace an occurrence of `pattern` at `at` by `replacement`, carrying
    /// the hanging subtrees across in leaf order.
    pub fn replace_at(&self, at: &Address, pattern: &Tree, replacement: &Tree) -> Result<Tree> {
        if pattern.leaves() != replacement.leaves() {
            return Err(Error::Arity {
                expected: pattern.leaves(),
                found: replacement.leaves(),
            });
        }
        let hanging = self
            .hanging_below(at, pattern)
            .ok_or_else(|| Error::NoMatch(at.to_string()))?;
        let new = replacement.graft(&hanging)?;
        self.with_subtree(at, new)
    }

    /// Colours read along the root-to-first-leaf (minus) or root-to-last-leaf
    /// (plus) path.
    pub fn colour_word(&self, side: Side) -> ColourWord {
        let mut out = Vec::new();
        let mut node = self;
        while let Tree::Node(c, l, r) = node {
            out.push(*c);
            node = match side {
                Side::Minus => l,
                Side::Plus => r,
            };
        }
        ColourWord(out)
    }

    /// Right-vine decomposition: factors `I^i ⊗ ρ ⊗ I^k` whose composite is
    /// `self`. The root vine comes first; afterwards vines are emitted in
    /// pre-order, so carets further left come earlier.
    pub fn right_vine_decomposition(&self) -> Vec<Forest> {
        let mut starts = Vec::new();
        fn collect(t: &Tree, at: Address, starts: &mut Vec<(Address, Vec<Colour>)>) {
            let mut colours = Vec::new();
            let mut node = t;
            let mut spine = at.clone();
            let mut lefts = Vec::new();
            while let Tree::Node(c, l, r) = node {
                colours.push(*c);
                lefts.push((spine.child(0), l.as_ref()));
                spine = spine.child(1);
                node = r;
            }
            if colours.is_empty() {
                return;
            }
            starts.push((at, colours));
            for (addr, sub) in lefts {
                collect(sub, addr, starts);
            }
        }
        collect(self, Address::root(), &mut starts);

        let mut partial = Tree::Leaf;
        let mut factors = Vec::with_capacity(starts.len());
        for (addr, colours) in starts {
            let idx = partial
                .leaf_index(&addr)
                .expect("pre-order start is a leaf of the partial composite");
            let vine = Tree::coloured_right_vine(&colours);
            let width = partial.leaves();
            let mut trees = vec![Tree::Leaf; width];
            trees[idx] = vine.clone();
            factors.push(Forest::new(trees.clone()));
            partial = partial.graft(&trees).expect("width matches");
        }
        factors
    }

    /// Colour words of every right-vine of the tree, root vine first.
    pub fn vine_words(&self) -> Vec<ColourWord> {
        self.right_vine_decomposition()
            .into_iter()
            .map(|f| {
                let t = f.trees().iter().find(|t| !t.is_leaf()).expect("non-trivial factor");
                t.colour_word(Side::Plus)
            })
            .collect()
    }
}

/// An ordered tuple of trees (at least one).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Forest {
        assert!(!trees.is_empty(), "a forest has at least one root");
        Forest { trees }
    }

    /// The trivial forest `I^{⊗k}`.
    pub fn trivial(k: usize) -> Forest {
        Forest::new(vec![Tree::Leaf; k])
    }

    pub fn single(t: Tree) -> Forest {
        Forest::new(vec![t])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaves).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    pub fn count_colour(&self, c: Colour) -> usize {
        self.trees.iter().map(|t| t.count_colour(c)).sum()
    }

    /// Stack `g` on top of `self`: the i-th root of `g` is grafted onto the
    /// i-th leaf of `self`.
    pub fn compose(&self, g: &Forest) -> Result<Forest> {
        if self.leaves() != g.roots() {
            return Err(Error::Arity {
                expected: self.leaves(),
                found: g.roots(),
            });
        }
        let mut offset = 0;
        let trees = self
            .trees
            .iter()
            .map(|t| {
                let k = t.leaves();
                let grafted = t.graft(&g.trees[offset..offset + k]);
                offset += k;
                grafted
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Forest::new(trees))
    }

    /// Horizontal concatenation.
    pub fn tensor(&self, g: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend_from_slice(&g.trees);
        Forest::new(trees)
    }

    pub fn colour_word(&self, side: Side) -> ColourWord {
        match side {
            Side::Minus => self.trees[0].colour_word(side),
            Side::Plus => self.trees[self.trees.len() - 1].colour_word(side),
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest::single(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Colour::{A, B};

    fn addrs(t: &Tree) -> Vec<String> {
        t.leaf_addresses().iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn trivial_forest_is_neutral() {
        let ya = Forest::single(Tree::caret(A));
        assert_eq!(ya.compose(&Forest::trivial(2)).unwrap(), ya);
        assert_eq!(Forest::trivial(1).compose(&ya).unwrap(), ya);
    }

    #[test]
    fn vines_from_composition() {
        for c in [A, B] {
            let y = Forest::single(Tree::caret(c));
            let y_i = Forest::single(Tree::caret(c)).tensor(&Forest::trivial(1));
            let i_y = Forest::trivial(1).tensor(&Forest::single(Tree::caret(c)));
            assert_eq!(y.compose(&y_i).unwrap().trees()[0], Tree::left_vine(2, c));
            assert_eq!(y.compose(&i_y).unwrap().trees()[0], Tree::right_vine(2, c));
        }
    }

    #[test]
    fn compose_arity_mismatch() {
        let ya = Forest::single(Tree::caret(A));
        assert!(matches!(
            ya.compose(&Forest::trivial(3)),
            Err(Error::Arity { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn tensor_concatenates() {
        let f = Forest::trivial(1).tensor(&Forest::single(Tree::caret(A)));
        assert_eq!(f.to_string(), "I,a(I,I)");
        assert_eq!(f.roots(), 2);
        assert_eq!(f.leaves(), 3);
    }

    #[test]
    fn leaf_addresses_small() {
        assert_eq!(addrs(&Tree::Leaf), vec!["-"]);
        assert_eq!(addrs(&Tree::caret(A)), vec!["0", "1"]);
        assert_eq!(addrs(&Tree::tau(3, A).unwrap()), vec!["00", "01", "10", "11"]);
        assert_eq!(addrs(&Tree::right_vine(3, B)), vec!["0", "10", "110", "111"]);
    }

    #[test]
    fn tau_shape() {
        for n in 3..=8 {
            let t = Tree::tau(n, A).unwrap();
            assert_eq!(t.carets(), n);
            let a = addrs(&t);
            assert_eq!(a[0], "0".repeat(n - 1));
            for i in 2..n {
                assert_eq!(a[i - 1], format!("{}1", "0".repeat(n - i)));
            }
            assert_eq!(a[n - 1], "10");
            assert_eq!(a[n], "11");
        }
        assert!(matches!(Tree::tau(2, A), Err(Error::InvalidIndex(2))));
    }

    #[test]
    fn pattern_match_and_replace() {
        let rho = Tree::right_vine(3, B);
        let tau = Tree::tau(3, A).unwrap();
        assert!(rho.subtree_match(&Address::root(), &rho));
        assert_eq!(rho.replace_at(&Address::root(), &rho, &tau).unwrap(), tau);
        assert!(!Tree::caret(A).subtree_match(&Address::root(), &Tree::caret(B)));
        // hanging subtrees follow leaf order
        let t = Tree::node(B, Tree::caret(A), Tree::right_vine(2, B));
        let r = t.replace_at(&Address::root(), &rho, &tau).unwrap();
        assert_eq!(r.subtree(&Address::from_bits(&[0, 0])).unwrap(), &Tree::caret(A));
        assert_eq!(r.carets(), t.carets());
    }

    #[test]
    fn decomposition_of_left_vine() {
        let d = Tree::left_vine(2, A).right_vine_decomposition();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], Forest::single(Tree::caret(A)));
        assert_eq!(d[1], Forest::single(Tree::caret(A)).tensor(&Forest::trivial(1)));
    }

    #[test]
    fn decomposition_of_right_vine_is_single() {
        let d = Tree::right_vine(4, B).right_vine_decomposition();
        assert_eq!(d, vec![Forest::single(Tree::right_vine(4, B))]);
    }

    #[test]
    fn colour_words() {
        let t = Tree::node(A, Tree::caret(B), Tree::Leaf);
        assert_eq!(t.colour_word(Side::Minus).to_string(), "ab");
        assert_eq!(t.colour_word(Side::Plus).to_string(), "a");
        for n in 3..8 {
            assert_eq!(Tree::tau(n, A).unwrap().colour_word(Side::Plus).to_string(), "aa");
            assert_eq!(
                Tree::right_vine(n, B).colour_word(Side::Plus).to_string(),
                "b".repeat(n)
            );
            assert_eq!(
                Tree::tau(n, A).unwrap().colour_word(Side::Minus).to_string(),
                "a".repeat(n - 1)
            );
        }
    }
}

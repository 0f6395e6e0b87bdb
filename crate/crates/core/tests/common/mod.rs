#![allow(dead_code)]

use fsg_core::forest::{Colour, Forest, Tree};
use proptest::prelude::*;

pub fn colour() -> impl Strategy<Value = Colour> {
    prop_oneof![Just(Colour::A), Just(Colour::B)]
}

pub fn tree(max_carets: u32) -> impl Strategy<Value = Tree> {
    Just(Tree::Leaf).prop_recursive(5, max_carets, 2, |inner| {
        (colour(), inner.clone(), inner).prop_map(|(c, l, r)| Tree::node(c, l, r))
    })
}

/// A forest with exactly `roots` trees.
pub fn forest(roots: usize, max_carets: u32) -> impl Strategy<Value = Forest> {
    prop::collection::vec(tree(max_carets), roots).prop_map(Forest::new)
}

/// `(f, g, h)` with matching arities for `f∘g∘h`.
pub fn composable_triple() -> impl Strategy<Value = (Forest, Forest, Forest)> {
    (1usize..4)
        .prop_flat_map(|k| forest(k, 4))
        .prop_flat_map(|f| {
            let m = f.leaves();
            (Just(f), forest(m, 3))
        })
        .prop_flat_map(|(f, g)| {
            let m = g.leaves();
            (Just(f), Just(g), forest(m, 3))
        })
}

pub fn point() -> impl Strategy<Value = fsg_core::RationalPoint> {
    (prop::collection::vec(0u8..2, 0..8), prop::collection::vec(0u8..2, 1..5))
        .prop_map(|(u, p)| fsg_core::RationalPoint::new(u, p).expect("non-empty period"))
}

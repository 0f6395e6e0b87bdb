//! Seeded generators for trees, elements and points.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::element::{GroupElement, TypeTag};
use crate::forest::{Colour, Forest, Tree};
use crate::perm::Permutation;
use crate::point::RationalPoint;
use crate::skein::SkeinContext;


/// A tree with exactly `carets` carets; each is `b` with probability `p_b`.
pub fn tree<R: Rng + ?Sized>(rng: &mut R, carets: usize, p_b: f64) -> Tree {
    if carets == 0 {
        return Tree::Leaf;
    }
    let left = rng.gen_range(0..carets);
    let c = if rng.gen_bool(p_b) { Colour::B } else { Colour::A };
    let l = tree(rng, left, p_b);
    let r = tree(rng, carets - 1 - left, p_b);
    Tree::node(c, l, r)
}

pub fn colour<R: Rng + ?Sized>(rng: &mut R) -> Colour {
    if rng.gen_bool(0.5) {
        Colour::A
    } else {
        Colour::B
    }
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, m: usize, tag: TypeTag) -> Permutation {
    match tag {
        TypeTag::F => Permutation::identity(m),
        TypeTag::T => Permutation::rotation(m, rng.gen_range(0..m as i64)),
        TypeTag::V => {
            let mut images: Vec<usize> = (0..m).collect();
            images.shuffle(rng);
            Permutation::from_images(images).expect("shuffle is a bijection")
        }
    }
}

/// A random element with `1..=max_carets` carets on each side.
pub fn element<R: Rng + ?Sized>(rng: &mut R, ctx: SkeinContext, tag: TypeTag, max_carets: usize) -> GroupElement {
    let k = rng.gen_range(1..=max_carets.max(1));
    let t = tree(rng, k, 0.5);
    let s = tree(rng, k, 0.5);
    let pi = permutation(rng, k + 1, tag);
    GroupElement::new(ctx, t, pi, s, tag).expect("consistent sizes")
}

pub fn tag<R: Rng + ?Sized>(rng: &mut R) -> TypeTag {
    *[TypeTag::F, TypeTag::T, TypeTag::V].choose(rng).expect("non-empty")
}

pub fn bits<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2)).collect()
}

/// A point with preperiod of length `< max_pre` and period of length
/// `1..=max_period`.
pub fn point<R: Rng + ?Sized>(rng: &mut R, max_pre: usize, max_period: usize) -> RationalPoint {
    let u = rng.gen_range(0..max_pre.max(1));
    let p = rng.gen_range(1..=max_period.max(1));
    RationalPoint::new(bits(rng, u), bits(rng, p)).expect("non-empty period")
}

/// Split `total` into `parts` non-negative summands.
pub fn composition<R: Rng + ?Sized>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut out = vec![0; parts.max(1)];
    for _ in 0..total {
        let i = rng.gen_range(0..out.len());
        out[i] += 1;
    }
    out.truncate(parts);
    out
}

/// A forest of `roots` trees with `carets` carets in total.
pub fn forest<R: Rng + ?Sized>(rng: &mut R, roots: usize, carets: usize, p_b: f64) -> Forest {
    let sizes = composition(rng, carets, roots);
    Forest::new(sizes.into_iter().map(|k| tree(rng, k, p_b)).collect())
}

/// Same element, different representative: grow by a forest holding one
/// skein pattern, then flip it on both sides.
pub fn mutate<R: Rng + ?Sized>(rng: &mut R, x: &GroupElement) -> GroupElement {
    let ctx = x.ctx();
    let m = x.denominator().leaves();
    let extra = rng.gen_range(0..3);
    let mut trees: Vec<Tree> = forest(rng, m, extra, 0.5).into_trees();
    let slot = rng.gen_range(0..m);
    let pattern = if rng.gen_bool(0.5) { ctx.tau() } else { ctx.rho() };
    trees[slot] = trees[slot].graft_at_leaf(0, &pattern).expect("leaf 0 exists");
    let y = x
        .grow(&Forest::new(trees))
        .expect("forest matches the denominator");
    let flip_side = |t: &Tree, rng: &mut R| -> Tree {
        let spots: Vec<_> = t
            .interior_vertices()
            .into_iter()
            .filter(|(a, _)| t.subtree_match(a, &ctx.tau()) || t.subtree_match(a, &ctx.rho()))
            .map(|(a, _)| a)
            .collect();
        match spots.choose(rng) {
            Some(a) => ctx.skein_flip(t, a).expect("pattern matched"),
            None => t.clone(),
        }
    };
    let t = flip_side(y.numerator(), rng);
    let s = flip_side(y.denominator(), rng);
    GroupElement::new(ctx, t, y.permutation().clone(), s, y.tag()).expect("flips keep leaf counts")
}

/// A random element of the subgroup with trivial permutation.
pub fn l_element<R: Rng + ?Sized>(rng: &mut R, ctx: SkeinContext, max_carets: usize) -> GroupElement {
    element(rng, ctx, TypeTag::F, max_carets)
}

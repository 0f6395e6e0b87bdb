//! Elements `[t/π/s]` of the groups `L_n ⊂ G_n ⊂ M_n`.

use std::fmt;

use crate::action::CanonicalAction;
use crate::error::{Error, Result};
use crate::forest::{Colour, Forest, Side, Tree};
use crate::gamma::{GammaMinus, GammaPlus};
use crate::perm::Permutation;
use crate::point::RationalPoint;
use crate::skein::{Move, MoveTrace, SkeinContext};

/// `F ⊂ T ⊂ V`: trivial, cyclic or arbitrary leaf permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    F,
    T,
    V,
}

impl TypeTag {
    /// Smallest tag admitting `pi`.
    pub fn of(pi: &Permutation) -> TypeTag {
        if pi.is_identity() {
            TypeTag::F
        } else if pi.rotation_amount().is_some() {
            TypeTag::T
        } else {
            TypeTag::V
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::F => "F",
            TypeTag::T => "T",
            TypeTag::V => "V",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for TypeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<TypeTag> {
        match s {
            "F" | "f" => Ok(TypeTag::F),
            "T" | "t" => Ok(TypeTag::T),
            "V" | "v" => Ok(TypeTag::V),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown type {s:?}, expected F, T or V") }),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    ctx: SkeinContext,
    t: Tree,
    pi: Permutation,
    s: Tree,
    tag: TypeTag,
}

/// Outcome of the word-problem decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Identity,
    /// Not the identity. The point, when present, is moved by the action.
    Moves(Option<RationalPoint>),
}

/// A seminormal representative with certificates for both trees.
#[derive(Clone, Debug)]
pub struct Seminormal {
    pub element: GroupElement,
    /// Rewrites the original numerator into the new one.
    pub numerator_trace: MoveTrace,
    /// Rewrites the original denominator into the new one.
    pub denominator_trace: MoveTrace,
}

impl GroupElement {
    pub fn new(ctx: SkeinContext, t: Tree, pi: Permutation, s: Tree, tag: TypeTag) -> Result<GroupElement> {
        if t.leaves() != s.leaves() {
            return Err(Error::Arity { expected: s.leaves(), found: t.leaves() });
        }
        if pi.size() != s.leaves() {
            return Err(Error::Arity { expected: s.leaves(), found: pi.size() });
        }
        if TypeTag::of(&pi) > tag {
            return Err(Error::BadPermutation { tag: tag.to_string(), msg: pi.to_string() });
        }
        Ok(GroupElement { ctx, t, pi, s, tag })
    }

    /// Tag inferred from the permutation.
    pub fn from_parts(ctx: SkeinContext, t: Tree, pi: Permutation, s: Tree) -> Result<GroupElement> {
        let tag = TypeTag::of(&pi);
        Self::new(ctx, t, pi, s, tag)
    }

    /// `[t/s]` in `L_n`.
    pub fn fraction(ctx: SkeinContext, t: Tree, s: Tree) -> Result<GroupElement> {
        let m = s.leaves();
        Self::new(ctx, t, Permutation::identity(m), s, TypeTag::F)
    }

    pub fn identity(ctx: SkeinContext) -> GroupElement {
        GroupElement { ctx, t: Tree::Leaf, pi: Permutation::identity(1), s: Tree::Leaf, tag: TypeTag::F }
    }

    pub fn ctx(&self) -> SkeinContext {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn numerator(&self) -> &Tree {
        &self.t
    }

    pub fn denominator(&self) -> &Tree {
        &self.s
    }

    pub fn permutation(&self) -> &Permutation {
        &self.pi
    }

    pub fn tag(&self) -> TypeTag {
        self.tag
    }

    pub fn with_tag(&self, tag: TypeTag) -> Result<GroupElement> {
        Self::new(self.ctx, self.t.clone(), self.pi.clone(), self.s.clone(), tag)
    }

    fn same_ctx(&self, other: &GroupElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            ctx: self.ctx,
            t: self.s.clone(),
            pi: self.pi.inverse(),
            s: self.t.clone(),
            tag: self.tag,
        }
    }

    /// `[t∘p^π / π^p / s∘p]`.
    pub fn grow(&self, p: &Forest) -> Result<GroupElement> {
        let (p_pi, pi_p) = self.pi.drag(p)?;
        Ok(GroupElement {
            ctx: self.ctx,
            t: self.t.graft(p_pi.trees())?,
            pi: pi_p,
            s: self.s.graft(p.trees())?,
            tag: self.tag,
        })
    }

    /// Cancel carets that match on both sides over adjacent, adjacently
    /// mapped leaves.
    pub fn reduce(&self) -> GroupElement {
        let mut x = self.clone();
        'outer: loop {
            let t_addrs = x.t.leaf_addresses();
            let s_addrs = x.s.leaf_addresses();
            for i in 0..s_addrs.len().saturating_sub(1) {
                let (u0, u1) = (&s_addrs[i], &s_addrs[i + 1]);
                if u0.len() != u1.len() || u0.bits().last() != Some(&0) || u0.bits()[..u0.len() - 1] != u1.bits()[..u1.len() - 1] {
                    continue;
                }
                let j = x.pi.apply(i);
                if x.pi.apply(i + 1) != j + 1 {
                    continue;
                }
                let (v0, v1) = (&t_addrs[j], &t_addrs[j + 1]);
                if v0.len() != v1.len() || v0.bits().last() != Some(&0) || v0.bits()[..v0.len() - 1] != v1.bits()[..v1.len() - 1] {
                    continue;
                }
                let su = crate::forest::Address::from_bits(&u0.bits()[..u0.len() - 1]);
                let tv = crate::forest::Address::from_bits(&v0.bits()[..v0.len() - 1]);
                if x.s.subtree(&su).and_then(Tree::colour) != x.t.subtree(&tv).and_then(Tree::colour) {
                    continue;
                }
                let images = (0..x.pi.size())
                    .filter(|&k| k != i + 1)
                    .map(|k| {
                        let y = x.pi.apply(k);
                        if y > j {
                            y - 1
                        } else {
                            y
                        }
                    })
                    .collect();
                x.pi = Permutation::from_images(images).expect("merging adjacent strands");
                x.s = x.s.with_subtree(&su, Tree::Leaf).expect("vertex exists");
                x.t = x.t.with_subtree(&tv, Tree::Leaf).expect("vertex exists");
                continue 'outer;
            }
            return x;
        }
    }

    pub fn multiply(&self, y: &GroupElement) -> Result<GroupElement> {
        self.same_ctx(y)?;
        let cm = self.ctx.right_common_multiple(&self.s, &y.t)?;
        let (p_pi, pi_x_p) = self.pi.drag(&cm.p)?;
        let q_trees: Vec<Tree> = (0..y.pi.size()).map(|j| cm.q.trees()[y.pi.apply(j)].clone()).collect();
        let q = Forest::new(q_trees);
        let (q_pi, pi_y_q) = y.pi.drag(&q)?;
        debug_assert_eq!(q_pi, cm.q);
        let prod = GroupElement {
            ctx: self.ctx,
            t: self.t.graft(p_pi.trees())?,
            pi: pi_x_p.compose(&pi_y_q)?,
            s: y.s.graft(q.trees())?,
            tag: self.tag.max(y.tag),
        };
        Ok(prod.reduce())
    }

    pub fn pow(&self, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement::identity(self.ctx).with_tag(self.tag)?;
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, y: &GroupElement) -> Result<GroupElement> {
        self.multiply(y)?.multiply(&self.inverse())?.multiply(&y.inverse())
    }

    /// An equal representative `(t', π', s')` with `s'` an a-tree.
    pub fn with_a_tree_denominator(&self) -> Result<(Tree, Permutation, Tree)> {
        let r = self.ctx.grow_to_a_tree(&self.s)?;
        let (f_pi, pi_f) = self.pi.drag(&r.growth)?;
        Ok((self.t.graft(f_pi.trees())?, pi_f, r.tree))
    }

    pub fn identity_check(&self) -> Result<IdentityCheck> {
        let x = self.reduce();
        if x.t == x.s && x.pi.is_identity() {
            return Ok(IdentityCheck::Identity);
        }
        Ok(match CanonicalAction::first_moved_point(&x)? {
            None => IdentityCheck::Identity,
            Some(w) => IdentityCheck::Moves(w),
        })
    }

    pub fn is_identity(&self) -> Result<bool> {
        Ok(self.identity_check()? == IdentityCheck::Identity)
    }

    pub fn equals(&self, y: &GroupElement) -> Result<bool> {
        self.multiply(&y.inverse())?.is_identity()
    }

    /// Image of a point under the canonical action.
    pub fn act(&self, x: &RationalPoint) -> Result<RationalPoint> {
        Ok(CanonicalAction::new(self)?.apply(x))
    }

    fn require_not_v(&self) -> Result<()> {
        if self.tag == TypeTag::V {
            return Err(Error::TypeTag { expected: "F or T".into(), found: "V".into() });
        }
        Ok(())
    }

    fn require_trivial_perm(&self) -> Result<()> {
        if !self.pi.is_identity() {
            return Err(Error::BadPermutation { tag: self.tag.to_string(), msg: format!("{} is not the identity", self.pi) });
        }
        Ok(())
    }

    /// `χ(t) − χ(s) mod n`, counting b-vertices.
    pub fn abelianise(&self) -> Result<usize> {
        self.require_not_v()?;
        let n = self.n() as i64;
        let d = self.t.count_colour(Colour::B) as i64 - self.s.count_colour(Colour::B) as i64;
        Ok(d.rem_euclid(n) as usize)
    }

    pub fn c_bar_plus(&self) -> Result<GammaPlus> {
        self.require_trivial_perm()?;
        let n = self.n();
        let t = GammaPlus::from_colour_word(n, &self.t.colour_word(Side::Plus));
        let s = GammaPlus::from_colour_word(n, &self.s.colour_word(Side::Plus));
        Ok(t.mul(&s.inverse()))
    }

    pub fn c_bar_minus(&self) -> Result<GammaMinus> {
        self.require_trivial_perm()?;
        let n = self.n();
        let t = GammaMinus::from_colour_word(n, &self.t.colour_word(Side::Minus));
        let s = GammaMinus::from_colour_word(n, &self.s.colour_word(Side::Minus));
        Ok(GammaMinus(t.0 - s.0))
    }

    /// `(c̄⁺, c̄⁻)` for an element fixing the circle point `0`.
    pub fn germ_at_zero(&self) -> Result<(GammaPlus, GammaMinus)> {
        self.require_not_v()?;
        // leaf cones partition the space and only the first leaf's cone
        // contains 0̄, so 0 is fixed exactly when no rotation is present
        if !self.pi.is_identity() {
            return Err(Error::NotFixingZero);
        }
        Ok((self.c_bar_plus()?, self.c_bar_minus()?))
    }

    /// Whether the action is the identity near `1̄` (`plus`) or `0̄`
    /// (`minus`). Requires a trivial permutation.
    pub fn acts_trivially_near_end(&self, side: Side) -> Result<bool> {
        self.require_trivial_perm()?;
        let m = crate::action::Machines::new(self.n())?;
        let (i, e) = match side {
            Side::Plus => (self.s.leaves() - 1, 1),
            Side::Minus => (0, 0),
        };
        Ok(m.leaf(&self.t, i)?.same_germ_at(&m.leaf(&self.s, i)?, e))
    }

    /// `s` an a-tree and `t` good, representing the same element.
    pub fn seminormal_form(&self) -> Result<Seminormal> {
        let r = self.ctx.grow_to_a_tree(&self.s)?;
        let (f_pi, pi1) = self.pi.drag(&r.growth)?;
        let t1 = self.t.graft(f_pi.trees())?;
        let mut num = MoveTrace::default();
        for (addr, g) in self.t.leaf_addresses().into_iter().zip(f_pi.trees()) {
            if !g.is_leaf() {
                num.moves.push(Move::Grow(addr, g.clone()));
            }
        }
        let good = self.ctx.make_good(&t1)?;
        num.moves.extend(good.trace.moves.iter().cloned());

        let p_trees: Vec<Tree> = (0..pi1.size()).map(|i| good.growth.trees()[pi1.apply(i)].clone()).collect();
        let (_, pi2) = pi1.drag(&Forest::new(p_trees.clone()))?;
        let mut den = r.trace.clone();
        for (addr, g) in r.tree.leaf_addresses().into_iter().zip(&p_trees) {
            if !g.is_leaf() {
                den.moves.push(Move::Grow(addr, g.clone()));
            }
        }
        let s2 = r.tree.graft(&p_trees)?;
        let element = GroupElement { ctx: self.ctx, t: good.tree, pi: pi2, s: s2, tag: self.tag };
        Ok(Seminormal { element, numerator_trace: num, denominator_trace: den })
    }

    /// `[ι(t)/ι(s)]` with `ι(t) = Y_a(Y_a⊗I)(I⊗t⊗I)`.
    pub fn iota_embed(&self) -> Result<GroupElement> {
        self.require_trivial_perm()?;
        GroupElement::fraction(self.ctx, iota(&self.t), iota(&self.s))
    }
}

pub fn iota(t: &Tree) -> Tree {
    Tree::left_vine(2, Colour::A)
        .graft(&[Tree::Leaf, t.clone(), Tree::Leaf])
        .expect("three leaves")
}

/// `σ(c) = [ρ₂(c)/λ₂(c)]`.
pub fn sigma_generator(ctx: SkeinContext, c: Colour) -> GroupElement {
    GroupElement::fraction(ctx, Tree::right_vine(2, c), Tree::left_vine(2, c)).expect("same leaf count")
}

/// Image of the free generator `[a, b^i]`: the commutator of `σ(a)` and
/// `σ(b)^i`.
pub fn free_generator(ctx: SkeinContext, i: usize) -> Result<GroupElement> {
    let n = ctx.n();
    if i == 0 || i >= n {
        return Err(Error::GeneratorIndex { i, n });
    }
    let a = sigma_generator(ctx, Colour::A);
    let b = sigma_generator(ctx, Colour::B).pow(i as i64)?;
    a.commutator(&b)
}

/// A word in the free generators: `(i, inverted)` letters.
pub type FreeWord = Vec<(usize, bool)>;

pub fn free_word_image(ctx: SkeinContext, word: &[(usize, bool)]) -> Result<GroupElement> {
    let mut acc = GroupElement::identity(ctx);
    for &(i, inv) in word {
        let g = free_generator(ctx, i)?;
        acc = acc.multiply(&if inv { g.inverse() } else { g })?;
    }
    Ok(acc)
}

/// All freely reduced words of length `1..=len` over the generators and their
/// inverses, in length-lexicographic order.
pub fn reduced_free_words(n: usize, len: usize) -> Vec<FreeWord> {
    let letters: Vec<(usize, bool)> = (1..n).flat_map(|i| [(i, false), (i, true)]).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<FreeWord> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() == Some(&(l.0, !l.1)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}|{}]", self.t, self.pi, self.s)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (n={}, {})", self.n(), self.tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_element;

    fn ctx(n: usize) -> SkeinContext {
        SkeinContext::new(n).unwrap()
    }

    fn el(n: usize, s: &str) -> GroupElement {
        parse_element(ctx(n), s).unwrap()
    }

    fn x0(n: usize) -> GroupElement {
        el(n, "[b(I,I)|id|a(I,I)]")
    }

    #[test]
    fn skein_pair_is_identity() {
        for n in 3..=6 {
            let c = ctx(n);
            let g = GroupElement::fraction(c, c.tau(), c.rho()).unwrap();
            assert!(g.is_identity().unwrap());
        }
    }

    #[test]
    fn generator_is_not_identity() {
        match x0(3).identity_check().unwrap() {
            IdentityCheck::Moves(Some(w)) => assert_ne!(x0(3).act(&w).unwrap(), w),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverse_formula() {
        assert_eq!(x0(3).inverse(), el(3, "[a(I,I)|id|b(I,I)]"));
        assert_eq!(x0(3).inverse().inverse(), x0(3));
        assert_eq!(GroupElement::identity(ctx(3)).inverse(), GroupElement::identity(ctx(3)));
    }

    #[test]
    fn products() {
        let g = x0(3);
        assert!(g.multiply(&g.inverse()).unwrap().is_identity().unwrap());
        assert!(g.multiply(&GroupElement::identity(ctx(3))).unwrap().equals(&g).unwrap());
        assert_eq!(g.pow(2).unwrap().abelianise().unwrap(), 2);
        assert!(!g.pow(2).unwrap().equals(&g).unwrap());
    }

    #[test]
    fn abelianisation_of_powers() {
        for n in 3..=5 {
            for k in 0..=2 * n as i64 {
                assert_eq!(x0(n).pow(k).unwrap().abelianise().unwrap(), k as usize % n);
            }
        }
    }

    #[test]
    fn germ_quotients() {
        for c in [Colour::A, Colour::B] {
            let g = GroupElement::fraction(ctx(3), Tree::left_vine(2, c), Tree::right_vine(2, c)).unwrap();
            let expect = GammaMinus::from_colour_word(3, &crate::forest::ColourWord(vec![c]));
            assert_eq!(g.c_bar_minus().unwrap(), expect);
            assert_eq!(
                sigma_generator(ctx(3), c).c_bar_plus().unwrap(),
                GammaPlus::from_colour_word(3, &crate::forest::ColourWord(vec![c]))
            );
        }
        for n in 3..=5 {
            assert_eq!(x0(n).c_bar_plus().unwrap(), GammaPlus::parse(n, "bA").unwrap());
            assert_eq!(x0(n).c_bar_minus().unwrap(), GammaMinus(n as i64 - 2));
            let (p, m) = x0(n).germ_at_zero().unwrap();
            assert_eq!(p.to_string(), "z^-1 b a");
            assert_eq!(m, GammaMinus(n as i64 - 2));
        }
        let (p, m) = GroupElement::identity(ctx(3)).germ_at_zero().unwrap();
        assert!(p.is_identity() && m.is_identity());
        let rot = el(3, "[a(I,I)|rot(1)|a(I,I)]");
        assert_eq!(rot.germ_at_zero(), Err(Error::NotFixingZero));
        assert!(rot.c_bar_plus().is_err());
    }

    #[test]
    fn reduction_cancels() {
        let g = el(3, "[a(b(I,I),a(I,I))|id|a(b(I,I),a(I,I))]");
        assert_eq!(g.reduce(), GroupElement::identity(ctx(3)));
    }

    #[test]
    fn type_tags() {
        assert!(GroupElement::new(ctx(3), Tree::caret(Colour::A), Permutation::rotation(2, 1), Tree::caret(Colour::A), TypeTag::F).is_err());
        let v = el(3, "[a(a(I,I),I)|perm(2 1 3)|a(a(I,I),I)]");
        assert_eq!(v.tag(), TypeTag::V);
        assert!(v.abelianise().is_err());
        let t = el(3, "[a(I,I)|rot(1)|a(I,I)]");
        assert_eq!(t.multiply(&t).unwrap().tag(), TypeTag::T);
        assert!(t.multiply(&t).unwrap().is_identity().unwrap());
    }

    #[test]
    fn sigma_section() {
        let c = ctx(4);
        for i in 1..4 {
            let g = free_generator(c, i).unwrap();
            let expect = GammaPlus::parse(4, &format!("a{}A{}", "b".repeat(i), "B".repeat(i))).unwrap();
            assert_eq!(g.c_bar_plus().unwrap(), expect);
        }
        assert!(free_generator(c, 4).is_err());
        assert!(free_word_image(c, &[]).unwrap().is_identity().unwrap());
    }

    #[test]
    fn free_word_counts() {
        assert_eq!(reduced_free_words(3, 4).len(), 4 + 12 + 36 + 108);
        assert_eq!(reduced_free_words(4, 4).len(), 6 + 30 + 150 + 750);
    }

    #[test]
    fn iota_fixes_outer_cones() {
        let g = x0(3).iota_embed().unwrap();
        for x in ["00(1)", "001(0)", "1(0)", "1(01)", "11(0)"] {
            let x = RationalPoint::parse(x).unwrap();
            assert_eq!(g.act(&x).unwrap(), x);
        }
        assert!(GroupElement::identity(ctx(3)).iota_embed().unwrap().is_identity().unwrap());
    }

    #[test]
    fn seminormal_of_generator() {
        let c = ctx(3);
        let g = x0(3);
        let sn = g.seminormal_form().unwrap();
        assert!(sn.element.denominator().is_a_tree());
        assert!(c.is_good_tree(sn.element.numerator()));
        assert_eq!(sn.numerator_trace.replay(c, g.numerator()).unwrap(), *sn.element.numerator());
        assert_eq!(sn.denominator_trace.replay(c, g.denominator()).unwrap(), *sn.element.denominator());
        assert!(sn.element.equals(&g).unwrap());
        let id = el(3, "[a(I,I)|id|a(I,I)]").seminormal_form().unwrap();
        assert_eq!(id.element, el(3, "[a(I,I)|id|a(I,I)]"));
    }
}

//! Skein moves for `τ_n(a) = ρ_n(b)`, growing, and the rewriting procedures
//! built on them. Every procedure returns a [`MoveTrace`] that
//! [`MoveTrace::replay`] re-checks move by move.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{Address, Colour, ColourWord, Forest, Side, Tree};

/// The category `F_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SkeinContext {
    n: usize,
}

impl SkeinContext {
    pub fn new(n: usize) -> Result<SkeinContext> {
        if n < 3 {
            return Err(Error::InvalidIndex(n));
        }
        Ok(SkeinContext { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> Tree {
        Tree::tau(self.n, Colour::A).expect("n >= 3")
    }

    pub fn rho(&self) -> Tree {
        Tree::right_vine(self.n, Colour::B)
    }

    pub fn flip(&self, t: &Tree, at: &Address, dir: FlipDir) -> Result<Tree> {
        let (from, to) = match dir {
            FlipDir::TauToRho => (self.tau(), self.rho()),
            FlipDir::RhoToTau => (self.rho(), self.tau()),
        };
        t.replace_at(at, &from, &to)
    }

    /// Flip whichever of the two patterns matches at `at`.
    pub fn skein_flip(&self, t: &Tree, at: &Address) -> Result<Tree> {
        if t.subtree_match(at, &self.rho()) {
            self.flip(t, at, FlipDir::RhoToTau)
        } else {
            self.flip(t, at, FlipDir::TauToRho)
        }
    }

    pub fn good_word_check(&self, w: &ColourWord) -> bool {
        let letters = w.letters();
        let i = letters.iter().take_while(|&&c| c == Colour::A).count();
        let rest = &letters[i..];
        let aa = rest.windows(2).any(|p| p == [Colour::A, Colour::A]);
        let bn = rest.windows(self.n).any(|p| p.iter().all(|&c| c == Colour::B));
        !aa && !bn
    }

    /// Good and a-rooted on every right-vine.
    pub fn is_good_tree(&self, t: &Tree) -> bool {
        t.vine_words()
            .iter()
            .all(|w| self.good_word_check(w) && w.letters()[0] == Colour::A)
    }

    /// Grow `t` to a tree with no `b`-vertex.
    pub fn grow_to_a_tree(&self, t: &Tree) -> Result<Rewrite> {
        let mut rw = Rewriter::new(*self, t.clone(), grow_budget(self.n, t));
        loop {
            let rho = self.rho();
            let site = rw
                .tree
                .interior_vertices()
                .into_iter()
                .map(|(a, _)| a)
                .find(|a| rw.tree.subtree_match(a, &rho));
            if let Some(a) = site {
                rw.flip(&a, FlipDir::RhoToTau)?;
                continue;
            }
            let Some(v) = deepest_b(&rw.tree) else { break };
            let v1 = v.child(1);
            if rw.tree.subtree(&v1).is_some_and(Tree::is_leaf) {
                rw.grow(&v1, Tree::right_vine(self.n - 1, Colour::B))?;
                rw.flip(&v, FlipDir::RhoToTau)?;
            } else {
                let mut need = Vec::with_capacity(self.n);
                for k in 0..=self.n - 2 {
                    need.push(v1.join(&vec![0; k]));
                }
                need.push(v1.child(1));
                for u in need {
                    if rw.tree.subtree(&u).is_some_and(Tree::is_leaf) {
                        rw.grow(&u, Tree::caret(Colour::A))?;
                    }
                }
                rw.flip(&v1, FlipDir::TauToRho)?;
                rw.flip(&v, FlipDir::RhoToTau)?;
            }
        }
        Ok(rw.finish(t))
    }

    /// Common right multiple: `u∘p = v∘q` in `F_n`, with both sides grown to
    /// the same a-tree.
    pub fn right_common_multiple(&self, u: &Tree, v: &Tree) -> Result<CommonMultiple> {
        let gu = self.grow_to_a_tree(u)?;
        let gv = self.grow_to_a_tree(v)?;
        let join = a_join(&gu.tree, &gv.tree);
        let finish = |g: Rewrite, src: &Tree| -> Result<(Forest, MoveTrace)> {
            let extra = g.tree.growth_into(&join).expect("join contains both shapes");
            let mut trace = g.trace;
            for (addr, h) in g.tree.leaf_addresses().into_iter().zip(&extra) {
                if !h.is_leaf() {
                    trace.moves.push(Move::Grow(addr, h.clone()));
                }
            }
            let p = g.growth.compose(&Forest::new(extra))?;
            debug_assert_eq!(trace.replay(*self, src).as_ref(), Ok(&join));
            Ok((p, trace))
        };
        let (p, trace_u) = finish(gu, u)?;
        let (q, trace_v) = finish(gv, v)?;
        Ok(CommonMultiple { p, q, common: join, trace_u, trace_v })
    }

    /// Grow `t` with a-trees to a good tree whose right-vines are all
    /// a-rooted.
    pub fn make_good(&self, t: &Tree) -> Result<Rewrite> {
        let budget = 400 * (t.carets() + 1) * self.n * self.n;
        let mut rw = Rewriter::new(*self, t.clone(), budget);
        rw.fix(&Address::root())?;
        Ok(rw.finish(t))
    }

    /// [`make_good`](Self::make_good) restricted to right-vines.
    pub fn make_good_vine(&self, r: &Tree) -> Result<Rewrite> {
        if r.interior_vertices().iter().any(|(a, _)| a.bits().contains(&0)) {
            return Err(Error::NotAVine(r.to_string()));
        }
        self.make_good(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlipDir {
    TauToRho,
    RhoToTau,
}

impl fmt::Display for FlipDir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlipDir::TauToRho => "tau2rho",
            FlipDir::RhoToTau => "rho2tau",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Graft a tree onto the leaf at the address.
    Grow(Address, Tree),
    Flip(Address, FlipDir),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Grow(a, t) => write!(f, "grow {a} {t}"),
            Move::Flip(a, d) => write!(f, "flip {a} {d}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Re-apply every move from `source`, checking each site.
    pub fn replay(&self, ctx: SkeinContext, source: &Tree) -> Result<Tree> {
        let mut t = source.clone();
        for (index, m) in self.moves.iter().enumerate() {
            t = match m {
                Move::Grow(a, g) => {
                    if !t.subtree(a).is_some_and(Tree::is_leaf) {
                        return Err(Error::Replay { index, msg: format!("{a} is not a leaf") });
                    }
                    t.with_subtree(a, g.clone())
                }
                Move::Flip(a, d) => ctx.flip(&t, a, *d),
            }
            .map_err(|e| Error::Replay { index, msg: e.to_string() })?;
        }
        Ok(t)
    }

    /// The free-forest growth of `source` performed by the trace: grows are
    /// applied at matching leaf indices and flips are ignored.
    pub fn growth(&self, ctx: SkeinContext, source: &Tree) -> Result<Forest> {
        let mut t = source.clone();
        let mut free = source.clone();
        for (index, m) in self.moves.iter().enumerate() {
            let err = |e: Error| Error::Replay { index, msg: e.to_string() };
            match m {
                Move::Grow(a, g) => {
                    let i = t
                        .leaf_index(a)
                        .ok_or_else(|| Error::Replay { index, msg: format!("{a} is not a leaf") })?;
                    t = t.with_subtree(a, g.clone()).map_err(err)?;
                    free = free.graft_at_leaf(i, g).map_err(err)?;
                }
                Move::Flip(a, d) => t = ctx.flip(&t, a, *d).map_err(err)?,
            }
        }
        Ok(Forest::new(source.growth_into(&free).expect("free growth extends source")))
    }

    pub fn parse(s: &str) -> Result<MoveTrace> {
        crate::syntax::parse_trace(s)
    }
}

impl fmt::Display for MoveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Outcome of a rewriting procedure on a single tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    /// The rewritten tree, equal in `F_n` to `source ∘ growth`.
    pub tree: Tree,
    pub growth: Forest,
    pub trace: MoveTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonMultiple {
    pub p: Forest,
    pub q: Forest,
    /// The a-tree both `u∘p` and `v∘q` rewrite to.
    pub common: Tree,
    pub trace_u: MoveTrace,
    pub trace_v: MoveTrace,
}

/// Smallest a-tree containing the shapes of both inputs.
pub fn a_join(s: &Tree, t: &Tree) -> Tree {
    match (s, t) {
        (Tree::Leaf, Tree::Leaf) => Tree::Leaf,
        (Tree::Leaf, Tree::Node(_, l, r)) | (Tree::Node(_, l, r), Tree::Leaf) => {
            Tree::node(Colour::A, a_join(l, &Tree::Leaf), a_join(r, &Tree::Leaf))
        }
        (Tree::Node(_, l1, r1), Tree::Node(_, l2, r2)) => {
            Tree::node(Colour::A, a_join(l1, l2), a_join(r1, r2))
        }
    }
}

/// Hard cap on moves for [`SkeinContext::grow_to_a_tree`].
pub fn grow_budget(n: usize, t: &Tree) -> usize {
    10 * n * t.carets().max(1)
}

fn deepest_b(t: &Tree) -> Option<Address> {
    t.interior_vertices()
        .into_iter()
        .filter(|(_, c)| *c == Colour::B)
        .map(|(a, _)| a)
        .min_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)))
}

struct Rewriter {
    ctx: SkeinContext,
    tree: Tree,
    trace: MoveTrace,
    budget: usize,
}

impl Rewriter {
    fn new(ctx: SkeinContext, tree: Tree, budget: usize) -> Rewriter {
        Rewriter { ctx, tree, trace: MoveTrace::default(), budget }
    }

    fn spend(&mut self) -> Result<()> {
        if self.trace.len() >= self.budget {
            return Err(Error::MoveBudget(self.budget));
        }
        Ok(())
    }

    fn grow(&mut self, at: &Address, g: Tree) -> Result<()> {
        self.spend()?;
        if !self.tree.subtree(at).is_some_and(Tree::is_leaf) {
            return Err(Error::NoVertex(at.to_string()));
        }
        self.tree = self.tree.with_subtree(at, g.clone())?;
        self.trace.moves.push(Move::Grow(at.clone(), g));
        Ok(())
    }

    fn flip(&mut self, at: &Address, dir: FlipDir) -> Result<()> {
        self.spend()?;
        self.tree = self.ctx.flip(&self.tree, at, dir)?;
        self.trace.moves.push(Move::Flip(at.clone(), dir));
        Ok(())
    }

    fn finish(self, source: &Tree) -> Rewrite {
        let growth = self.trace.growth(self.ctx, source).expect("own trace replays");
        Rewrite { tree: self.tree, growth, trace: self.trace }
    }

    fn colour(&self, at: &Address) -> Option<Colour> {
        self.tree.subtree(at).and_then(Tree::colour)
    }

    /// Colours along the right spine from `at`.
    fn spine(&self, at: &Address) -> Vec<Colour> {
        self.tree
            .subtree(at)
            .map(|t| t.colour_word(Side::Plus).0)
            .unwrap_or_default()
    }

    fn spine_end(&self, at: &Address) -> Address {
        at.join(&vec![1; self.spine(at).len()])
    }

    /// Make every right-vine below `at` good and a-rooted.
    fn fix(&mut self, at: &Address) -> Result<()> {
        let len = self.spine(at).len();
        for k in 0..len {
            let left = at.join(&vec![1; k]).child(0);
            self.fix(&left)?;
        }
        self.normalise_spine(at)?;
        if self.colour(at) == Some(Colour::B) {
            let end = self.spine_end(at);
            self.grow(&end, self.ctx.tau())?;
            self.normalise_spine(at)?;
        }
        Ok(())
    }

    /// Rewrite the spine word at `at` to a good word. All vines hanging off
    /// the spine must already be good and a-rooted.
    fn normalise_spine(&mut self, at: &Address) -> Result<()> {
        use Colour::{A, B};
        let n = self.ctx.n;
        loop {
            let w = self.spine(at);
            let pos_bn = w.windows(n).position(|p| p.iter().all(|&c| c == B));
            let pos_baa = w.windows(3).position(|p| p == [B, A, A]);
            match (pos_bn, pos_baa) {
                (Some(i), _) => {
                    let p = at.join(&vec![1; i]);
                    self.flip(&p, FlipDir::RhoToTau)?;
                }
                (None, Some(i)) => {
                    let p = at.join(&vec![1; i]);
                    let p1 = p.child(1);
                    let p10 = p1.child(0);
                    self.make_lambda_able(&p10)?;
                    self.flip(&p1, FlipDir::TauToRho)?;
                    self.flip(&p, FlipDir::RhoToTau)?;
                }
                (None, None) => return Ok(()),
            }
        }
    }

    /// Prepare `h` to carry the `λ_{n-2}(a)` part of a `τ_n(a)` pattern: its
    /// left spine gets at least `n-2` vertices, and its own vine is made to
    /// start with `aa` so the tail left behind by the flip is a-rooted.
    fn make_lambda_able(&mut self, h: &Address) -> Result<()> {
        let n = self.ctx.n;
        for k in 0..n - 2 {
            let u = h.join(&vec![0; k]);
            if self.tree.subtree(&u).is_some_and(Tree::is_leaf) {
                self.grow(&u, Tree::caret(Colour::A))?;
            }
        }
        let w = self.spine(h);
        if w.len() >= 2 && w[1] == Colour::B {
            self.strengthen(h)?;
        }
        Ok(())
    }

    fn strengthen(&mut self, v: &Address) -> Result<()> {
        let end = self.spine_end(v);
        self.grow(&end, self.ctx.tau())?;
        self.normalise_spine(v)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::syntax::parse_tree;
    use proptest::prelude::*;
    use Colour::{A, B};

    fn ctx(n: usize) -> SkeinContext {
        SkeinContext::new(n).unwrap()
    }

    #[test]
    fn flip_rho_to_tau() {
        let c = ctx(3);
        let t = c.skein_flip(&c.rho(), &Address::root()).unwrap();
        assert_eq!(t, c.tau());
        assert_eq!(c.skein_flip(&t, &Address::root()).unwrap(), c.rho());
        assert!(c.skein_flip(&Tree::caret(A), &Address::root()).is_err());
    }

    #[test]
    fn disjoint_flips_commute() {
        let c = ctx(3);
        let t = Tree::node(A, c.rho(), c.tau());
        let (l, r) = (Address::from_bits(&[0]), Address::from_bits(&[1]));
        let x = c.skein_flip(&c.skein_flip(&t, &l).unwrap(), &r).unwrap();
        let y = c.skein_flip(&c.skein_flip(&t, &r).unwrap(), &l).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn grow_yb() {
        let c = ctx(3);
        let r = c.grow_to_a_tree(&Tree::caret(B)).unwrap();
        assert_eq!(r.tree, c.tau());
        assert_eq!(r.growth, Forest::new(vec![Tree::Leaf, Tree::right_vine(2, B)]));
        assert_eq!(r.trace.replay(c, &Tree::caret(B)).unwrap(), r.tree);
    }

    #[test]
    fn grow_a_tree_is_noop() {
        let c = ctx(4);
        let t = parse_tree("a(a(I,I),a(I,a(I,I)))").unwrap();
        let r = c.grow_to_a_tree(&t).unwrap();
        assert_eq!(r.tree, t);
        assert!(r.growth.is_trivial());
        assert!(r.trace.is_empty());
    }

    #[test]
    fn rcm_trivial_cases() {
        let c = ctx(3);
        let t = Tree::caret(A);
        let m = c.right_common_multiple(&t, &t).unwrap();
        assert!(m.p.is_trivial() && m.q.is_trivial());
        let m = c.right_common_multiple(&c.tau(), &c.rho()).unwrap();
        assert!(m.p.is_trivial() && m.q.is_trivial());
    }

    #[test]
    fn good_words() {
        let c = ctx(3);
        let g = |s: &str| c.good_word_check(&ColourWord::parse(s).unwrap());
        assert!(g("a") && g("") && g("ab") && g("aaabab") && g("bbabb"));
        assert!(!g("abbb") && !g("baa") && !g("abaa"));
    }

    #[test]
    fn good_vine_small() {
        let c = ctx(3);
        let r = c.make_good_vine(&Tree::right_vine(3, A)).unwrap();
        assert_eq!(r.tree, Tree::right_vine(3, A));
        assert!(r.trace.is_empty());

        let r = c.make_good_vine(&Tree::caret(B)).unwrap();
        assert_eq!(r.tree.colour_word(Side::Plus).to_string(), "aab");
        assert_eq!(r.tree.count_colour(B) % 3, 1);
        assert!(c.is_good_tree(&r.tree));
        assert!(r.growth.count_colour(B) == 0);
        assert_eq!(r.trace.replay(c, &Tree::caret(B)).unwrap(), r.tree);
        assert!(c.make_good_vine(&Tree::left_vine(2, A)).is_err());
    }

    #[test]
    fn trace_text_round_trip() {
        let c = ctx(3);
        let t = parse_tree("b(a(b(I,I),I),b(I,I))").unwrap();
        let r = c.grow_to_a_tree(&t).unwrap();
        let parsed = MoveTrace::parse(&r.trace.to_string()).unwrap();
        assert_eq!(parsed, r.trace);
    }

    pub(crate) fn tree_strategy(max_carets: usize) -> impl Strategy<Value = Tree> {
        let leaf = Just(Tree::Leaf).boxed();
        leaf.prop_recursive(max_carets as u32, max_carets as u32, 2, |inner| {
            (prop_oneof![Just(A), Just(B)], inner.clone(), inner)
                .prop_map(|(c, l, r)| Tree::node(c, l, r))
        })
        .prop_filter("caret bound", move |t| t.carets() <= max_carets)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn grow_yields_a_tree(t in tree_strategy(10), n in 3usize..6) {
            let c = ctx(n);
            let r = c.grow_to_a_tree(&t).unwrap();
            prop_assert!(r.tree.is_a_tree());
            prop_assert_eq!(r.trace.replay(c, &t).unwrap(), r.tree.clone());
            // b-count changes by a multiple of n between t∘growth and result
            let grown = t.graft(r.growth.trees()).unwrap();
            prop_assert_eq!(grown.count_colour(B) % n, 0);
        }

        #[test]
        fn make_good_is_good(t in tree_strategy(8), n in 3usize..6) {
            let c = ctx(n);
            let r = c.make_good(&t).unwrap();
            prop_assert!(c.is_good_tree(&r.tree), "{}", r.tree);
            prop_assert_eq!(r.growth.count_colour(B), 0);
            prop_assert_eq!(r.trace.replay(c, &t).unwrap(), r.tree.clone());
            prop_assert_eq!(r.tree.count_colour(B) % n, t.count_colour(B) % n);
        }

        #[test]
        fn vines_become_good(cols in prop::collection::vec(prop_oneof![Just(A), Just(B)], 1..=8), n in 3usize..6) {
            let c = ctx(n);
            let v = Tree::coloured_right_vine(&cols);
            let r = c.make_good_vine(&v).unwrap();
            prop_assert!(c.is_good_tree(&r.tree));
            prop_assert_eq!(r.trace.replay(c, &v).unwrap(), r.tree);
        }
    }
}

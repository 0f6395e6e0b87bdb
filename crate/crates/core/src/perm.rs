//! Leaf permutations and the drag `π∘g = g^π∘π^g`.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::Forest;

/// A bijection of `{1..m}` (stored 0-based). `π(i)` is the numerator leaf
/// joined to denominator leaf `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation { images: (0..m).collect() }
    }

    /// `i ↦ i + r mod m`.
    pub fn rotation(m: usize, r: i64) -> Permutation {
        let r = r.rem_euclid(m as i64) as usize;
        Permutation { images: (0..m).map(|i| (i + r) % m).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &j in &images {
            if j >= m || seen[j] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[j] = true;
        }
        if m == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, as written in the element syntax.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("images are 1-based".into()));
        }
        Self::from_images(images.iter().map(|&j| j - 1).collect())
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// 0-based image.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `Some(r)` with `0 ≤ r < m` when the permutation is `i ↦ i + r`.
    pub fn rotation_amount(&self) -> Option<usize> {
        let m = self.size();
        let r = self.images[0];
        (0..m).all(|i| self.images[i] == (i + r) % m).then_some(r)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::Arity { expected: self.size(), found: other.size() });
        }
        Ok(Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() })
    }

    /// Drag a forest through the permutation. Returns `(g^π, π^g)` with
    /// `g^π_{π(r)} = g_r`; `π^g` carries the leaves of `g_r` in order onto
    /// those of `g^π_{π(r)}`.
    pub fn drag(&self, g: &Forest) -> Result<(Forest, Permutation)> {
        let m = self.size();
        if g.roots() != m {
            return Err(Error::Arity { expected: m, found: g.roots() });
        }
        let inv = self.inverse();
        let trees = g.trees();
        let dragged: Vec<_> = (0..m).map(|i| trees[inv.apply(i)].clone()).collect();
        let mut offset_new = vec![0; m + 1];
        for i in 0..m {
            offset_new[i + 1] = offset_new[i] + dragged[i].leaves();
        }
        let mut images = Vec::with_capacity(g.leaves());
        for (r, t) in trees.iter().enumerate() {
            let base = offset_new[self.apply(r)];
            images.extend((0..t.leaves()).map(|k| base + k));
        }
        Ok((Forest::new(dragged), Permutation { images }))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        if let Some(r) = self.rotation_amount() {
            return write!(f, "rot({r})");
        }
        write!(f, "perm(")?;
        for (i, j) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{Colour, Tree};
    use proptest::prelude::*;

    fn ya() -> Tree {
        Tree::caret(Colour::A)
    }

    #[test]
    fn drag_transposition() {
        let pi = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        let g = Forest::new(vec![ya(), Tree::Leaf, Tree::Leaf]);
        let (gp, pg) = pi.drag(&g).unwrap();
        assert_eq!(gp, Forest::new(vec![Tree::Leaf, ya(), Tree::Leaf]));
        assert_eq!(pg, Permutation::from_one_based(&[2, 3, 1, 4]).unwrap());
    }

    #[test]
    fn drag_identity() {
        let g = Forest::new(vec![ya(), Tree::Leaf, Tree::right_vine(3, Colour::B)]);
        let (gp, pg) = Permutation::identity(3).drag(&g).unwrap();
        assert_eq!(gp, g);
        assert!(pg.is_identity());
        assert_eq!(pg.size(), g.leaves());
    }

    #[test]
    fn drag_arity() {
        assert!(Permutation::identity(2).drag(&Forest::trivial(3)).is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(Permutation::identity(3).to_string(), "id");
        assert_eq!(Permutation::rotation(4, -1).to_string(), "rot(3)");
        assert_eq!(Permutation::from_one_based(&[2, 1, 3]).unwrap().to_string(), "perm(2 1 3)");
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
    }

    proptest! {
        #[test]
        fn rotation_drags_to_rotation(m in 1usize..6, r in 0i64..6, shapes in prop::collection::vec(0usize..4, 6)) {
            let trees: Vec<Tree> = (0..m).map(|i| Tree::right_vine(shapes[i], Colour::A)).collect();
            let g = Forest::new(trees);
            let (_, pg) = Permutation::rotation(m, r).drag(&g).unwrap();
            prop_assert!(pg.rotation_amount().is_some());
        }

        #[test]
        fn inverse_composes_to_identity(images in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
            let p = Permutation::from_images(images).unwrap();
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }
}

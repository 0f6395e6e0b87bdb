mod common;

use fsg_core::element::GroupElement;
use fsg_core::forest::Side;
use fsg_core::random;
use fsg_core::{SkeinContext, TypeTag};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(n: usize) -> SkeinContext {
    SkeinContext::new(n).unwrap()
}

#[test]
fn group_axioms() {
    for n in 3..=5 {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let e = GroupElement::identity(ctx(n));
        for _ in 0..100 {
            let tag = random::tag(&mut rng);
            let [x, y, z] = [0; 3].map(|_| random::element(&mut rng, ctx(n), tag, 3));
            let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
            let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
            assert!(left.equals(&right).unwrap(), "({x}·{y})·{z}");
            assert!(x.multiply(&e).unwrap().equals(&x).unwrap());
            assert!(e.multiply(&x).unwrap().equals(&x).unwrap());
            assert!(x.multiply(&x.inverse()).unwrap().is_identity().unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn abelianisation_is_a_homomorphism(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tag = if seed % 2 == 0 { TypeTag::F } else { TypeTag::T };
        let x = random::element(&mut rng, ctx(n), tag, 5);
        let y = random::element(&mut rng, ctx(n), tag, 5);
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.abelianise().unwrap(), (x.abelianise().unwrap() + y.abelianise().unwrap()) % n);
        prop_assert_eq!(random::mutate(&mut rng, &x).abelianise().unwrap(), x.abelianise().unwrap());
    }

    #[test]
    fn germ_quotients_are_homomorphisms(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random::l_element(&mut rng, ctx(n), 5);
        let y = random::l_element(&mut rng, ctx(n), 5);
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.c_bar_plus().unwrap(), x.c_bar_plus().unwrap().mul(&y.c_bar_plus().unwrap()));
        prop_assert_eq!(xy.c_bar_minus().unwrap().0, x.c_bar_minus().unwrap().0 + y.c_bar_minus().unwrap().0);
        // kernel membership matches the dynamics on both sides
        for side in [Side::Plus, Side::Minus] {
            let algebraic = match side {
                Side::Plus => xy.c_bar_plus().unwrap().is_identity(),
                Side::Minus => xy.c_bar_minus().unwrap().is_identity(),
            };
            prop_assert_eq!(algebraic, xy.acts_trivially_near_end(side).unwrap());
        }
    }

    #[test]
    fn rotations_stay_rotations(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random::element(&mut rng, ctx(n), TypeTag::T, 5);
        let y = random::element(&mut rng, ctx(n), TypeTag::T, 5);
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.tag(), TypeTag::T);
        prop_assert!(xy.permutation().rotation_amount().is_some());
        prop_assert!(xy.reduce().permutation().rotation_amount().is_some());
    }

    #[test]
    fn equality_is_an_equivalence(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tag = random::tag(&mut rng);
        let x = random::element(&mut rng, ctx(n), tag, 4);
        let y = random::mutate(&mut rng, &x);
        let z = random::mutate(&mut rng, &y);
        let w = random::element(&mut rng, ctx(n), tag, 4);
        prop_assert!(x.equals(&x).unwrap());
        prop_assert!(x.equals(&y).unwrap() && y.equals(&x).unwrap());
        prop_assert!(y.equals(&z).unwrap() && x.equals(&z).unwrap());
        prop_assert_eq!(x.equals(&w).unwrap(), w.equals(&x).unwrap());
    }

    #[test]
    fn seminormal_form_is_the_same_element(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tag = random::tag(&mut rng);
        let x = random::element(&mut rng, ctx(n), tag, 6);
        let sn = x.seminormal_form().unwrap();
        prop_assert!(sn.element.denominator().is_a_tree());
        prop_assert!(sn.element.equals(&x).unwrap());
        prop_assert_eq!(sn.element.tag(), x.tag());
    }
}

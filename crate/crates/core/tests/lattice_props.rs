mod common;

use common::gen;
use nestlab::lattice::{lattice_distance, perspectivity_witness, Subspace};
use nestlab::rank::rho;
use nestlab::rational::Q;
use proptest::prelude::*;

fn d(x: &Subspace, y: &Subspace) -> Q {
    lattice_distance(x, y).unwrap()
}

proptest! {
    #[test]
    fn modular_law((_, _, ss) in gen::subspaces(3)) {
        let (x, y0, z) = (&ss[0], &ss[1], &ss[2]);
        let y = x.join(y0);
        prop_assert_eq!(x.join(&y.meet(z)), y.meet(&x.join(z)));
    }

    #[test]
    fn delta_is_modular_and_strict((_, _, ss) in gen::subspaces(2)) {
        let (i, j) = (&ss[0], &ss[1]);
        prop_assert_eq!(i.join(j).delta() + i.meet(j).delta(), i.delta() + j.delta());
        let m = i.meet(j);
        if m != *i {
            prop_assert!(m.delta() < i.delta());
            prop_assert!(d(&m, i) > Q::from_integer(0.into()));
        }
    }

    #[test]
    fn distance_is_a_metric((_, _, ss) in gen::subspaces(3)) {
        let (a, b, c) = (&ss[0], &ss[1], &ss[2]);
        prop_assert!(d(a, c) <= d(a, b) + d(b, c));
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert_eq!(d(a, b) == Q::from_integer(0.into()), a == b);
    }

    #[test]
    fn meet_and_join_are_lipschitz((_, _, ss) in gen::subspaces(3)) {
        let (a, x, y) = (&ss[0], &ss[1], &ss[2]);
        prop_assert!(d(&a.meet(x), &a.meet(y)) + d(&a.join(x), &a.join(y)) <= d(x, y));
    }

    #[test]
    fn images_move_by_rank((f, n, ss) in gen::subspaces(1), seed in any::<u64>()) {
        let mut rng = nestlab::parallel::trial_rng(seed, 0);
        let a = nestlab::MatrixFp::random(f, n, &mut rng);
        let b = nestlab::MatrixFp::random(f, n, &mut rng);
        let i = &ss[0];
        let bound = rho(&(&a - &b)).min(i.delta());
        prop_assert!(d(&i.image_under(&a), &i.image_under(&b)) <= Q::from_integer(2.into()) * bound);
    }

    #[test]
    fn perspectivity_iff_equal_dimension((f, n, ss) in gen::subspaces(2)) {
        let (i, j) = (&ss[0], &ss[1]);
        let w = perspectivity_witness(i, j).unwrap();
        prop_assert_eq!(w.is_some(), i.dim() == j.dim());
        if let Some(z) = w {
            for x in [i, j] {
                prop_assert_eq!(x.meet(&z).dim(), 0);
                prop_assert_eq!(x.join(&z), Subspace::full(f, n));
            }
        }
    }
}

mod common;

use common::gen;
use common::{leibniz_char_poly, raw};
use nestlab::nest::Idempotent;
use nestlab::poly::char_poly;
use nestlab::rank::{rank_distance, rho, unit_from_polynomial_relation};
use nestlab::rational::Q;
use nestlab::{Error, MatrixFp, PolyFp};
use num_traits::Signed;
use proptest::prelude::*;

proptest! {
    #[test]
    fn subadditive_and_submultiplicative((_, _, ms) in gen::matrices(2)) {
        let (a, b) = (&ms[0], &ms[1]);
        prop_assert!(rho(&(a + b)) <= rho(a) + rho(b));
        let ab = rho(&(a * b));
        prop_assert!(ab <= rho(a) && ab <= rho(b));
    }

    #[test]
    fn metric_laws((_, _, ms) in gen::matrices(4)) {
        let (a, b, c, d) = (&ms[0], &ms[1], &ms[2], &ms[3]);
        let dist = |x: &MatrixFp, y: &MatrixFp| rank_distance(x, y).unwrap();
        prop_assert!(dist(a, c) <= dist(a, b) + dist(b, c));
        prop_assert_eq!(dist(a, b), dist(b, a));
        prop_assert!(dist(&(a + b), &(c + d)) <= dist(a, c) + dist(b, d));
        prop_assert!(dist(&(a * b), &(c * d)) <= dist(a, c) + dist(b, d));
        prop_assert!((rho(a) - rho(b)).abs() <= dist(a, b));
    }

    #[test]
    fn orthogonal_idempotents_add(f in gen::field(), n in 1usize..=4, k in 0usize..=4, g in any::<u64>()) {
        let k = k.min(n);
        let mut rng = nestlab::parallel::trial_rng(g, 0);
        let p = std::iter::repeat_with(|| MatrixFp::random(f, n, &mut rng)).find(MatrixFp::is_invertible).unwrap();
        let pinv = p.inverse().unwrap();
        let e = Idempotent::new(&(&p * Idempotent::leading(f, n, k).matrix()) * &pinv).unwrap();
        let fo = Idempotent::new(&(&p * &(&MatrixFp::identity(f, n) - Idempotent::leading(f, n, k).matrix())) * &pinv).unwrap();
        prop_assert!(e.is_orthogonal(&fo));
        prop_assert_eq!(rho(&(e.matrix() + fo.matrix())), rho(e.matrix()) + rho(fo.matrix()));
    }

    #[test]
    fn char_poly_matches_leibniz((f, _, ms) in gen::matrices(1)) {
        let a = &ms[0];
        let oracle: Vec<u8> = leibniz_char_poly(f.p(), &raw(a)).iter().map(|&c| c as u8).collect();
        let cp = char_poly(a);
        prop_assert_eq!(cp.coeffs(), &oracle[..]);
    }

    #[test]
    fn unit_from_char_poly_is_two_sided((_, _, ms) in gen::matrices(1)) {
        let a = &ms[0];
        let cp = char_poly(a);
        match unit_from_polynomial_relation(a, &cp) {
            Ok(u) => {
                prop_assert!(a.is_invertible());
                prop_assert!((a * &u).is_identity() && (&u * a).is_identity());
            }
            Err(Error::NotApplicable(_)) => prop_assert!(!a.is_invertible()),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn relation_must_annihilate() {
    let f = nestlab::FieldSpec::new(5).unwrap();
    let a = MatrixFp::new(f, &[vec![2, 1], vec![0, 3]]).unwrap();
    let wrong = PolyFp::new(f, &[1, 1]);
    assert_eq!(unit_from_polynomial_relation(&a, &wrong), Err(Error::RelationViolated));
    assert_eq!(rho(&a), Q::from_integer(1.into()));
}

mod common;

use common::gen;
use nestlab::nest::{complete_to_maximal_nest, is_maximal, lambda_map, nest_from_flag, Flag, Idempotent, Nest};
use nestlab::rank::rho;
use nestlab::rational::q;
use nestlab::FieldSpec;
use proptest::prelude::*;

fn field_and_side() -> impl Strategy<Value = (FieldSpec, usize)> {
    (gen::field(), 1usize..=4)
}

fn idempotents(k: usize) -> impl Strategy<Value = Vec<Idempotent>> {
    field_and_side().prop_flat_map(move |(f, n)| prop::collection::vec(gen::idempotent_in(f, n), k))
}

proptest! {
    #[test]
    fn idempotent_order_is_partial(es in idempotents(3)) {
        let (a, b, c) = (&es[0], &es[1], &es[2]);
        prop_assert!(a.le(a));
        if a.le(b) && b.le(a) {
            prop_assert_eq!(a, b);
        }
        if a.le(b) && b.le(c) {
            prop_assert!(a.le(c));
        }
    }

    #[test]
    fn differences_below_are_orthogonal_idempotents(es in idempotents(1), seed in any::<u64>()) {
        let e = &es[0];
        let (f, n) = (e.field(), e.n());
        let nest = complete_to_maximal_nest(&Nest::new(f, n, vec![e.clone()]).unwrap()).unwrap();
        let mut rng = nestlab::parallel::trial_rng(seed, 0);
        use rand::Rng;
        let closed = nest.with_endpoints();
        let below: Vec<&Idempotent> = closed.elements().iter().filter(|x| Idempotent::le(x, e)).collect();
        let small = below[rng.gen_range(0..below.len())];
        let diff = Idempotent::new(e.matrix() - small.matrix()).unwrap();
        prop_assert!(diff.le(e));
        prop_assert!(small.is_orthogonal(&diff));
        prop_assert_eq!(rho(diff.matrix()), rho(e.matrix()) - rho(small.matrix()));
    }

    #[test]
    fn maximal_nests_give_maximal_flags(es in idempotents(2)) {
        let (f, n) = (es[0].field(), es[0].n());
        let seed = if es[0].le(&es[1]) || es[1].le(&es[0]) { es.clone() } else { vec![es[0].clone()] };
        let nest = Nest::new(f, n, seed.into_iter().fold(Vec::new(), |mut v, e| { if !v.contains(&e) { v.push(e); } v })).unwrap();
        let done = complete_to_maximal_nest(&nest).unwrap();
        prop_assert!(is_maximal(&done));
        prop_assert!(nest.elements().iter().all(|e| done.contains(e)));
        let closed = done.with_endpoints();
        let expected: Vec<_> = (0..=n as i64).map(|k| q(k, n as i64)).collect();
        prop_assert_eq!(closed.rho_values(), expected);
        let flag = lambda_map(&closed);
        prop_assert!(is_maximal(&flag));
        let subs = &flag;
        for (w, s) in closed.elements().windows(2).zip(subs.subspaces().windows(2)) {
            prop_assert!(w[0].le(&w[1]));
            prop_assert!(s[0].is_subspace_of(&s[1]) && s[0] != s[1]);
        }
        prop_assert_eq!(lambda_map(&nest_from_flag(&flag).unwrap()), flag);
    }

    #[test]
    fn greedy_nests_are_fixed((f, n) in field_and_side(), vs in prop::collection::vec(prop::collection::vec(0u8..7, 4), 0..=4)) {
        let vs: Vec<Vec<u8>> = vs.into_iter().map(|v| v[..n].iter().map(|x| x % f.p() as u8).collect()).collect();
        let mut chain = vec![nestlab::lattice::Subspace::zero(f, n)];
        let mut acc = Vec::new();
        for v in vs {
            acc.push(v);
            let s = nestlab::lattice::Subspace::span(f, n, &acc).unwrap();
            if s.dim() > chain.last().unwrap().dim() {
                chain.push(s);
            }
        }
        let flag = Flag::new(f, n, chain).unwrap();
        let nest = nest_from_flag(&flag).unwrap();
        prop_assert_eq!(lambda_map(&nest), flag.clone());
        prop_assert_eq!(nest_from_flag(&lambda_map(&nest)).unwrap(), nest);
    }
}

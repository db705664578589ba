mod common;

use common::{generated_group, lower_central_orders, raw};
use nestlab::group::{commutator, FiniteMatrixGroup};
use nestlab::nilpotency::{
    geometric_inverse, levitzki_radical, nilpotency_order, nilpotent_group_class, power_span, radical_by_composition_series,
    radical_elementwise, SubringSpan,
};
use nestlab::parallel::trial_rng;
use nestlab::span::MatrixSpan;
use nestlab::{FieldSpec, MatrixFp};
use proptest::prelude::*;
use rand::Rng;

/// A random subspace of the strictly upper triangular matrices, closed
/// under products.
fn nil_subring(f: FieldSpec, n: usize, rng: &mut impl Rng) -> SubringSpan {
    let gens: Vec<MatrixFp> = (0..rng.gen_range(1..=3))
        .map(|_| MatrixFp::from_fn(f, n, |i, j| if j > i { rng.gen_range(0..f.p() as u8) } else { 0 }))
        .collect();
    let span = MatrixSpan::new(f, n, &gens).unwrap().multiplicative_closure();
    SubringSpan::from_span(span, false).unwrap()
}

fn params() -> impl Strategy<Value = (FieldSpec, usize, u64)> {
    (prop::sample::select(vec![2u32, 3]), 2usize..=4, any::<u64>()).prop_map(|(p, n, s)| (FieldSpec::new(p).unwrap(), n, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn one_plus_nil_is_a_nilpotent_group((f, n, seed) in params()) {
        let mut rng = trial_rng(seed, 0);
        let nil = nil_subring(f, n, &mut rng);
        let order = nilpotency_order(&nil).unwrap();
        let size = (f.p() as usize).pow(nil.dim() as u32);
        prop_assume!(size <= 81);
        let id = MatrixFp::identity(f, n);
        let els: Vec<MatrixFp> = nil.span().elements().unwrap().iter().map(|x| &id + x).collect();
        let g = FiniteMatrixGroup::from_elements(f, n, els.clone());
        prop_assert!(g.is_ok());
        for x in nil.span().elements().unwrap() {
            let inv = geometric_inverse(&x.scale(f.p() as u8 - 1)).unwrap();
            prop_assert!((&(&id + &x) * &inv).is_identity());
        }
        let gc = nilpotent_group_class(&nil).unwrap();
        prop_assert!(gc.class < order.max(1));
        let oracle = lower_central_orders(f.p(), &els.iter().map(raw).collect());
        prop_assert_eq!(&gc.lower_central_orders, &oracle);
        for k in 1..=order {
            let nk = power_span(&nil, k).unwrap();
            let sub: Vec<MatrixFp> = nk.span().elements().unwrap().iter().map(|x| &id + x).collect();
            for (a, x) in els.iter().zip(nil.span().elements().unwrap()) {
                let ainv = geometric_inverse(&x.scale(f.p() as u8 - 1)).unwrap();
                for s in &sub {
                    prop_assert!(nk.contains(&(&(&(a * s) * &ainv) - &id)));
                }
            }
        }
    }

    #[test]
    fn commutator_depth((f, n, seed) in params()) {
        let mut rng = trial_rng(seed, 0);
        let nil = nil_subring(f, n, &mut rng);
        let order = nilpotency_order(&nil).unwrap();
        let id = MatrixFp::identity(f, n);
        let powers: Vec<SubringSpan> = (1..=order).map(|k| power_span(&nil, k).unwrap()).collect();
        let pick = |s: &SubringSpan, rng: &mut rand_chacha::ChaCha8Rng| {
            s.basis().iter().fold(MatrixFp::zero(f, n), |acc, b| &acc + &b.scale(rng.gen_range(0..f.p() as u8)))
        };
        for k in 1..=order {
            for l in 1..=order {
                let (a, b) = (pick(&powers[k - 1], &mut rng), pick(&powers[l - 1], &mut rng));
                let lhs = &(&(&id + &a) * &(&id + &b)) * &(&(&id + &a) + &b).inverse().unwrap();
                let target = if k + l <= order { powers[k + l - 1].clone() } else { power_span(&nil, k + l).unwrap() };
                prop_assert!(target.contains(&(&lhs - &id)));
                let c = commutator(&(&id + &a), &(&id + &b));
                prop_assert!(target.contains(&(&c - &id)));
            }
        }
    }

    #[test]
    fn radical_routes_agree((f, n, seed) in params()) {
        let mut rng = trial_rng(seed, 1);
        let n = n.min(3);
        let gens: Vec<MatrixFp> = (0..rng.gen_range(1..=2)).map(|_| MatrixFp::random(f, n, &mut rng)).collect();
        let span = MatrixSpan::new(f, n, &gens).unwrap().multiplicative_closure();
        let alg = SubringSpan::from_span(span, rng.gen_bool(0.5)).unwrap();
        prop_assume!((f.p() as u64).pow(alg.dim() as u32) <= 4096);
        let a = radical_elementwise(&alg).unwrap();
        let b = radical_by_composition_series(&alg);
        prop_assert_eq!(&a, &b);
        let lev = levitzki_radical(&alg).unwrap();
        prop_assert!(lev.span().is_two_sided_ideal_of(alg.span()));
        prop_assert!(lev.span().nilpotency_order().is_some());
    }
}

#[test]
fn class_of_full_unipotent_group() {
    for n in 2..=4 {
        let f = FieldSpec::new(2).unwrap();
        let strict: Vec<MatrixFp> = (0..n).flat_map(|i| (i + 1..n).map(move |j| MatrixFp::unit(f, n, i, j))).collect();
        let nil = SubringSpan::new(f, n, &strict, false).unwrap();
        assert_eq!(nilpotent_group_class(&nil).unwrap().class, n - 1);
        let id = common::identity(n);
        let gens: Vec<common::Raw> = strict.iter().map(|e| common::add(2, &id, &raw(e))).collect();
        assert_eq!(generated_group(2, n, &gens).len(), 1 << (n * (n - 1) / 2));
    }
}

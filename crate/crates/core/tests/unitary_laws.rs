use combs_core::comb::{braid_eval, CombRep};
use combs_core::decision::Witness;
use combs_core::instances::unitary::UnitaryBackend;
use combs_core::object::ObjectWord;
use combs_core::optic::{replay_factorization, unitary_comb_factor};
use combs_core::sample;
use combs_core::Backend;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(s: &str) -> ObjectWord {
    ObjectWord::new(s.split_whitespace())
}

fn backend() -> UnitaryBackend {
    UnitaryBackend::new([("Q", 2), ("T", 3)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inserted_environment_unitary_is_recovered(seed in any::<u64>()) {
        let b = backend();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, t) = (w("Q"), w("T"));
        // (A, A′) = (T Q, T Q), (B, B′) = (Q, Q), E = T
        let a = t.tensor(&q);
        let f = b.unitary(&a, &t.tensor(&q), sample::unitary(&mut rng, 6)).unwrap();
        let g = b.unitary(&t.tensor(&q), &a, sample::unitary(&mut rng, 6)).unwrap();
        let up = b.unitary(&t, &t, sample::unitary(&mut rng, 3)).unwrap();
        let upd = b.dagger(&up).unwrap();
        let c1 = CombRep::new(&b, t.clone(), f.clone(), g.clone()).unwrap();
        let f2 = b.compose(&f, &b.tensor(&up, &b.identity(&q))).unwrap();
        let g2 = b.compose(&b.tensor(&upd, &b.identity(&q)), &g).unwrap();
        let c2 = CombRep::new(&b, t.clone(), f2, g2).unwrap();

        let d = unitary_comb_factor(&b, &c1, &c2).unwrap();
        prop_assert!(d.is_equivalent() && d.certified);
        let Some(Witness::Factorization { u, .. }) = d.witness else { panic!("factorization witness expected") };
        prop_assert!(u.matrix().frobenius_distance(up.matrix()) <= 1e-8);
        prop_assert!(replay_factorization(&b, &c1, &c2, &u).unwrap());
        // the names agree, as they must for equivalent optics
        prop_assert!(b.equal(&braid_eval(&b, &c1).unwrap(), &braid_eval(&b, &c2).unwrap()));
    }

    #[test]
    fn swapping_environment_and_hole_is_detected(seed in any::<u64>()) {
        let b = backend();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = w("Q");
        let qq = q.tensor(&q);
        let f = b.unitary(&qq, &qq, sample::unitary(&mut rng, 4)).unwrap();
        let g = b.unitary(&qq, &qq, sample::unitary(&mut rng, 4)).unwrap();
        let swap = b.symmetry(&q, &q);
        let c1 = CombRep::new(&b, q.clone(), f.clone(), g.clone()).unwrap();
        let c2 = CombRep::new(&b, q.clone(), b.compose(&f, &swap).unwrap(), b.compose(&swap, &g).unwrap()).unwrap();
        let d = unitary_comb_factor(&b, &c1, &c2).unwrap();
        prop_assert!(d.is_distinct());
    }
}

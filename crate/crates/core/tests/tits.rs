use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylb::roots::{levi_root_subset, simple_root, Root};
use weylb::sperm::SignedPermutation;
use weylb::tits::supplement::*;
use weylb::tits::verify::*;
use weylb::tits::*;

fn sp(n: usize, cycles: &[&[i32]]) -> SignedPermutation {
    SignedPermutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn supplement(d0: usize, t: usize, m: usize, d: usize) -> Supplement {
    build_supplement(CaseTwoParams::new(d0, t, m, d).unwrap(), 3, DEFAULT_BUDGET).unwrap()
}

#[test]
fn simple_lift_squares() {
    for n in 1..=6 {
        let g = TitsGroup::new(n);
        for i in 1..=n {
            let m = g.simple_lift(i);
            assert_eq!(m.weyl, SignedPermutation::simple_reflection(n, i));
            let mut want = vec![0i64; n];
            want[i - 1] = 2;
            assert_eq!(g.mul(&m, &m), g.torus(TorusTorsionElement::from_coords(want, 4)));
        }
    }
}

#[test]
fn b2_braid() {
    let g = TitsGroup::new(2);
    assert_eq!(g.word(&[1, 2, 1, 2]), g.word(&[2, 1, 2, 1]));
}

#[test]
fn closure_orders() {
    for (n, want) in [(1usize, 4usize), (2, 32), (3, 384)] {
        let g = TitsGroup::new(n);
        let s = simple_lift_subgroup(&g, 1, n, DEFAULT_BUDGET).unwrap();
        let w_order: usize = (1..=n).product::<usize>() << n;
        assert_eq!(s.order(), want);
        assert_eq!(s.order(), (1 << n) * w_order);
    }
}

#[test]
fn associativity_on_generator_triples() {
    let g = TitsGroup::new(3);
    let gens: Vec<_> = (1..=3).map(|i| g.simple_lift(i)).collect();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
            }
        }
    }
}

#[test]
fn default_core_suite_passes() {
    let cfg = CoreConfig { random_triples: 2000, ..CoreConfig::default() };
    let r = tits_core_suite(&TitsGroup::new, cfg);
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn cocycle_mutation_is_detected() {
    let cfg = CoreConfig { max_rank: 3, random_triples: 200, ..CoreConfig::default() };
    for i in 1..=3 {
        let r = tits_core_suite(&|n| TitsGroup::new(n).with_mutation((i <= n).then_some(CocycleMutation { generator: i })), cfg);
        assert!(!r.all_passed(), "mutation at m_{i} went unnoticed");
        assert!(r.failures().all(|c| !c.counterexample.is_empty()));
    }
}

#[test]
fn frobenius_examples() {
    let g = TitsGroup::new(4);
    let h0 = g.torus(TorusTorsionElement::h_e(4, 1, 2, 4));
    for q in [3, 5, 7, 9] {
        assert_eq!(g.frobenius_untwisted(&h0, q), h0);
        for i in 1..=4 {
            assert_eq!(g.frobenius_untwisted(&g.simple_lift(i), q), g.simple_lift(i));
        }
    }
}

#[test]
fn h_k_under_twist() {
    for (l, d) in [(2, 1), (2, 2), (6, 3), (6, 6), (4, 1), (4, 2)] {
        let g = TitsGroup::new(l);
        let tw = TwistData::new(&g, l, d).unwrap();
        let (h0, hs) = build_h_elements(&g, &tw.orbits);
        for h in &hs {
            let conj = g.conj(&g.torus(h.clone()), &tw.v_l);
            let want = if d % 2 == 1 { h.clone() } else { h0.add(h) };
            assert_eq!(conj, g.torus(want), "l = {l}, d = {d}");
            assert_eq!(h.add(h), h0.scale(tw.d0 as i64));
        }
        assert!(h0.add(&h0).is_zero());
    }
}

#[test]
fn d0_one_h_elements() {
    let g = TitsGroup::new(2);
    let tw = TwistData::new(&g, 2, 1).unwrap();
    let (_, hs) = build_h_elements(&g, &tw.orbits);
    assert!(!hs[0].is_in_h());
    assert!(hs[0].add(&hs[1]).is_in_h());
}

#[test]
fn fixed_subgroup_examples() {
    let g = TitsGroup::new(2);
    let h = torus_two_torsion(&g);
    let v = build_twist(&g, 2, 1).unwrap();
    let hl = fixed_subgroup(&g, &h, 3, &v);
    assert_eq!(hl.order(), 4);
    assert!(is_elementary_abelian(&g, &hl));
    let trivial = fixed_subgroup(&g, &h, 3, &g.identity());
    assert_eq!(trivial.order(), h.order());
}

#[test]
fn h_l_rank_small() {
    for d0 in [1usize, 3, 5] {
        for t in 1..=5 {
            let l = 2 * d0 * t;
            if l > 10 {
                continue;
            }
            for d in [d0, 2 * d0] {
                let r = h_l_suite(&TitsGroup::new(l), d, 3);
                assert!(r.all_passed(), "l = {l}, d = {d}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn twist_examples() {
    let g = TitsGroup::new(2);
    assert_eq!(build_twist(&g, 2, 4).unwrap().weyl, sp(2, &[&[1, 2, -1, -2]]));
    for l in 1..=5 {
        assert!(build_twist(&TitsGroup::new(l), l, 1).unwrap().weyl.is_identity());
    }
    assert!(build_twist(&TitsGroup::new(3), 3, 4).is_err());
}

#[test]
fn supplement_orders() {
    let s = supplement(1, 1, 1, 1);
    assert_eq!((s.c_group.order(), s.p_group.order(), s.v_group.order()), (4, 1, 4));
    let s = supplement(1, 2, 0, 1);
    assert_eq!((s.c_group.order(), s.p_group.order(), s.v_group.order()), (8, 4, 32));
}

#[test]
fn c_prime_power_at_d0_three() {
    for d in [3, 6] {
        let s = supplement(3, 1, 0, d);
        let g = &s.group;
        assert_eq!(g.pow(&s.c_primes[0], 6), g.torus(s.h0.clone()));
    }
}

#[test]
fn c1_examples() {
    let g = TitsGroup::new(2);
    let tw = TwistData::new(&g, 2, 2).unwrap();
    let c1 = find_c1(&g, &tw, 3, C1Choice::Displayed).unwrap();
    assert_eq!(c1.weyl, sp(2, &[&[1, -1]]));
    assert_eq!(g.frobenius(&c1, 3, &tw.v_l), c1);
    assert!(c1.torus.is_in_h());
}

#[test]
fn p_elements() {
    let g = TitsGroup::new(4);
    let tw = TwistData::new(&g, 4, 1).unwrap();
    let (h0, hs) = build_h_elements(&g, &tw.orbits);
    let ps: Vec<_> = (1..4).map(|k| build_p(&g, &tw, k)).collect();
    for (k, p) in ps.iter().enumerate() {
        let want = hs[k].add(&hs[k + 1]).add(&h0.scale(tw.d0 as i64));
        assert_eq!(g.mul(p, p), g.torus(want));
        assert_eq!(g.frobenius(p, 3, &tw.v_l), *p);
    }
    assert_eq!(g.product([&ps[0], &ps[1], &ps[0]]), g.product([&ps[1], &ps[0], &ps[1]]));
}

#[test]
fn iota1_on_generators() {
    let g = TitsGroup::new(6);
    let tw = TwistData::new(&g, 6, 3).unwrap();
    assert_eq!(iota1(&g, &tw, &g.simple_lift(2)), build_p(&g, &tw, 1));
}

#[test]
fn p_prime_braid_at_t3() {
    let s = supplement(1, 3, 0, 1);
    let g = &s.group;
    let (a, b) = (&s.p_primes[0], &s.p_primes[1]);
    assert_eq!(g.product([a, b, a]), g.product([b, a, b]));
    let h = |k: usize| s.h(k).clone();
    assert_eq!(g.mul(a, a), g.torus(h(1).add(&h(2)).add(&h(3)).add(&h(4))));
}

#[test]
fn g_images_for_t1() {
    let s = supplement(1, 1, 0, 1);
    let (w1, w2) = predicted_g_images(s.group.n, 1, 1);
    assert_eq!((s.g1.weyl.clone(), s.g2.weyl.clone()), (w1, w2));
}

#[test]
fn root_character_examples() {
    let s = supplement(1, 2, 1, 1);
    let phi = levi_root_subset(5, 1, 1, 2).unwrap();
    for i in 1..=3 {
        let t = s.h(i).add(s.h(i + 1));
        let central = phi.iter().all(|a| root_character_eval(a, &t) == 0);
        assert_eq!(central, i % 2 == 1, "h_{i} h_{}", i + 1);
    }
    assert_eq!(root_character_eval(&Root::e(5, 1, 1), &s.group.zero_torus()), 0);
    for i in 2..=5 {
        assert_eq!(root_character_eval(&simple_root(5, i), &s.h0), 0);
    }
}

#[test]
fn supplement_sweep_small() {
    for (d0, t, m) in [(1, 1, 0), (1, 1, 1), (1, 2, 0), (1, 2, 2), (3, 1, 0), (3, 1, 2)] {
        for d in [d0, 2 * d0] {
            let s = supplement(d0, t, m, d);
            let r = verify_supplement(&s, 8);
            assert!(r.all_passed(), "{d0} {t} {m} {d}: {:?}", r.failures().collect::<Vec<_>>());
            let r = verify_extmap_hypotheses(&s);
            assert!(r.all_passed(), "{d0} {t} {m} {d}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn supplement_rejects_even_d0() {
    assert!(CaseTwoParams::new(2, 1, 0, 2).is_err());
    assert!(CaseTwoParams::new(1, 1, 0, 3).is_err());
}

fn rng_element(n: usize, seed: u64) -> MonomialElement {
    random_element(&TitsGroup::new(n), &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms(n in 1usize..=6, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let g = TitsGroup::new(n);
        let (x, y, z) = (rng_element(n, a), rng_element(n, b), rng_element(n, c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert!(g.mul(&x, &g.inverse(&x)).is_identity());
        prop_assert_eq!(g.mul(&g.identity(), &x), x.clone());
        prop_assert_eq!(g.mul(&x, &y).weyl, x.weyl.compose(&y.weyl));
    }

    #[test]
    fn reduced_words_agree(seed in any::<u64>()) {
        let g = TitsGroup::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_signed_permutation(4, &mut rng);
        let word = random_reduced_word(&w, &mut rng);
        prop_assert_eq!(g.word(&word), g.canonical_lift(&w));
    }

    #[test]
    fn frobenius_is_a_homomorphism(n in 1usize..=5, a in any::<u64>(), b in any::<u64>(), q in prop::sample::select(vec![3u64, 5, 7, 9])) {
        let g = TitsGroup::new(n);
        let (x, y) = (rng_element(n, a), rng_element(n, b));
        let v = g.word(&(1..=n).collect::<Vec<_>>());
        prop_assert_eq!(g.frobenius(&g.mul(&x, &y), q, &v), g.mul(&g.frobenius(&x, q, &v), &g.frobenius(&y, q, &v)));
    }
}

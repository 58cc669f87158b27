use proptest::prelude::*;
use weylb::roots::{levi_root_subset, Root};
use weylb::sperm::*;

fn sp(n: usize, cycles: &[&[i32]]) -> SignedPermutation {
    SignedPermutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn case2_twist(d0: usize, t: usize, m: usize, d: usize) -> SignedPermutation {
    let l = 2 * d0 * t;
    coxeter_cycle(l, l + m).pow((2 * l / d) as i64)
}

#[test]
fn group_law_examples() {
    let s = sp(2, &[&[1, 2, -1, -2]]);
    assert_eq!(s.act_on_root(&Root::e(2, 1, 1)), Root::e(2, 2, 1));
    assert!(s.compose(&s.inverse()).is_identity());
    let sq = s.compose(&s);
    assert_eq!(sq.images(), &[-1, -2]);
    assert!(SignedPermutation::from_images(vec![1, 1]).is_err());
    assert!(SignedPermutation::from_images(vec![0, 2]).is_err());
}

#[test]
fn sylow_twist_examples() {
    assert_eq!(sylow_twist(2, 4, 2).unwrap(), sp(2, &[&[1, 2, -1, -2]]));
    assert!(sylow_twist(2, 1, 2).unwrap().is_identity());
    assert_eq!(sylow_twist(3, 2, 3).unwrap().images(), &[-1, -2, -3]);
    assert!(sylow_twist(3, 4, 3).is_err());
}

#[test]
fn twist_orders() {
    for np in 1..=8 {
        assert_eq!(coxeter_cycle(np, np).order(), 2 * np);
        for d in (1..=2 * np).filter(|d| (2 * np) % d == 0) {
            assert_eq!(sylow_twist(np, d, np).unwrap().order(), d, "n' = {np}, d = {d}");
        }
    }
}

#[test]
fn orbit_examples() {
    assert_eq!(case2_twist(1, 1, 0, 1).orbits_on_support(2).unwrap(), vec![vec![1], vec![2]]);
    let o = case2_twist(3, 1, 0, 3).orbits_on_support(6).unwrap();
    assert_eq!(o.len(), 2);
    assert!(o.iter().all(|x| x.len() == 3));
    assert_eq!(SignedPermutation::identity(3).orbits_on_support(3).unwrap(), vec![vec![1], vec![2], vec![3]]);
}

#[test]
fn orbits_have_size_d0() {
    for d0 in [1usize, 3, 5] {
        for t in 1..=6 {
            let l = 2 * d0 * t;
            if l > 12 {
                continue;
            }
            for d in [d0, 2 * d0] {
                let o = case2_twist(d0, t, 0, d).orbits_on_support(l).unwrap();
                assert_eq!(o.len(), 2 * t);
                assert!(o.iter().all(|x| x.len() == d0));
            }
        }
    }
}

#[test]
fn w_prime_examples() {
    let p = w_l_prime_parts(2, 1, 1, 2).unwrap();
    assert_eq!(p.w_parts, vec![sp(2, &[&[1, -1], &[2, -2]])]);
    assert!(p.taus.is_empty());
    let p = w_l_prime_parts(4, 1, 2, 4).unwrap();
    assert_eq!(p.taus, vec![sp(4, &[&[1, 3], &[2, 4]])]);
    assert!(p.taus[0].compose(&p.taus[0]).is_identity());
    assert!(w_l_prime_parts(5, 1, 2, 5).is_err());
}

#[test]
fn w_prime_factorization() {
    for (d0, t) in [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2), (5, 1)] {
        let l = 2 * d0 * t;
        let p = w_l_prime_parts(l, d0, t, l).unwrap();
        let prod = p.w_parts.iter().fold(SignedPermutation::identity(l), |acc, x| acc.compose(x));
        assert_eq!(prod, p.w_prime);
        for tau in &p.taus {
            assert!(tau.compose(tau).is_identity());
            assert_eq!(tau.compose(&p.w_prime), p.w_prime.compose(tau));
        }
    }
}

#[test]
fn relative_weyl_orders() {
    for (d0, t, m, want) in [(1, 1, 1, 2), (1, 2, 0, 8), (3, 1, 0, 6)] {
        let n = 2 * d0 * t + m;
        let phi = levi_root_subset(n, m, d0, t).unwrap();
        for d in [d0, 2 * d0] {
            let g = relative_weyl_centralizer(n, &phi, &case2_twist(d0, t, m, d)).unwrap();
            assert_eq!(g.order(), want, "d0 = {d0}, t = {t}, m = {m}, d = {d}");
            let parts = w_l_prime_parts(2 * d0 * t, d0, t, n).unwrap();
            check_wreath_relations(&g, &parts, d0).unwrap();
        }
    }
}

#[test]
fn relative_weyl_budget() {
    let phi = levi_root_subset(9, 1, 1, 4).unwrap();
    assert!(matches!(
        relative_weyl_centralizer(9, &phi, &case2_twist(1, 4, 1, 1)),
        Err(weylb::Error::BudgetExceeded { .. })
    ));
}

#[test]
fn wd_membership() {
    assert!(SignedPermutation::identity(3).is_in_wd());
    assert!(!sp(3, &[&[1, -1]]).is_in_wd());
    assert!(sp(3, &[&[1, -1], &[2, -2]]).is_in_wd());
}

fn any_sperm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(|(p, s)| {
        SignedPermutation::from_images(p.into_iter().zip(s).map(|(x, neg)| if neg { -x } else { x }).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn composition_is_associative(a in any_sperm(6), b in any_sperm(6), c in any_sperm(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn compose_applies_right_first(a in any_sperm(5), b in any_sperm(5), i in 1i32..=5) {
        prop_assert_eq!(a.compose(&b).apply(i), a.apply(b.apply(i)));
        prop_assert_eq!(a.apply(-i), -a.apply(i));
    }

    #[test]
    fn inverse_and_cycles_round_trip(a in any_sperm(7)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(SignedPermutation::from_cycles(7, &a.cycles()).unwrap(), a.clone());
    }

    #[test]
    fn reduced_word_has_length(a in any_sperm(5)) {
        let w = a.reduced_word();
        prop_assert_eq!(w.len(), a.length());
        let prod = w.iter().fold(SignedPermutation::identity(5), |acc, &i| acc.compose(&SignedPermutation::simple_reflection(5, i)));
        prop_assert_eq!(prod, a);
    }

    #[test]
    fn wd_is_a_subgroup_of_index_two(a in any_sperm(4), b in any_sperm(4)) {
        prop_assert_eq!(a.compose(&b).is_in_wd(), a.is_in_wd() == b.is_in_wd());
    }
}

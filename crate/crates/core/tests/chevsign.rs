use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylb::chevsign::*;
use weylb::roots::{are_orthogonal_long, simple_root, Root};
use weylb::tits::supplement::{build_supplement, CaseTwoParams};
use weylb::tits::verify::random_element;
use weylb::tits::{TitsGroup, TorusTorsionElement, DEFAULT_BUDGET};

#[test]
fn orthogonal_long_pair() {
    let t = SignTable::full(4);
    let b = Root::pair(4, 1, -1, 2, 1);
    let a = Root::pair(4, 3, -1, 4, 1);
    assert_eq!(t.eta(&b, &a), Some(1));
    assert_eq!(t.eta(&a, &b), Some(1));
}

#[test]
fn orthogonal_long_rule_everywhere() {
    for n in 2..=5 {
        let t = SignTable::full(n);
        for (b, a) in t.entries() {
            if are_orthogonal_long(&b, &a) {
                assert_eq!(t.eta(&b, &a), Some(1), "n = {n}, {b:?}, {a:?}");
            }
        }
    }
}

#[test]
fn rank_one_relation() {
    for n in 1..=5 {
        let t = SignTable::full(n);
        for b in t.roots() {
            let prod = t.eta(b, b).unwrap() * t.eta(b, &b.neg()).unwrap();
            assert_eq!(prod, 1, "n = {n}, {b:?}");
        }
    }
}

#[test]
fn simple_rows_match_full() {
    let full = SignTable::full(6);
    let simple = SignTable::simple_rows(6);
    assert!(!simple.has_row(&Root::pair(6, 1, 1, 2, 1)));
    for i in 1..=6 {
        let b = simple_root(6, i);
        for a in full.roots() {
            assert_eq!(full.eta(&b, a), simple.eta(&b, a));
        }
    }
}

#[test]
fn simple_lift_conjugation_uses_table() {
    let n = 4;
    let g = TitsGroup::new(n);
    let t = SignTable::full(n);
    for i in 1..=n {
        let s = simple_root(n, i);
        for a in t.roots() {
            let img = conjugate_left(&t, &g.simple_lift(i), &FormalRootTerm::new(a.clone()));
            assert_eq!(img.root, reflect(&s, a));
            assert_eq!(img.sign(), t.eta(&s, a));
        }
    }
}

#[test]
fn torus_conjugation_is_character() {
    let n = 3;
    let g = TitsGroup::new(n);
    let t = SignTable::full(n);
    let h0 = TorusTorsionElement::h_e(n, 1, 2, 4);
    let x = g.torus(h0.clone());
    for a in t.roots() {
        let img = conjugate_left(&t, &x, &FormalRootTerm::new(a.clone()));
        assert_eq!(img.root, *a);
        assert_eq!(img.coeff, h0.root_character(a));
    }
    let b = Root::pair(n, 1, -1, 2, 1);
    assert_eq!(conjugate_left(&t, &x, &FormalRootTerm::new(b.clone())).sign(), Some(1));
}

#[test]
fn identity_conjugation() {
    let g = TitsGroup::new(3);
    let t = SignTable::full(3);
    for a in t.roots() {
        let term = FormalRootTerm::new(a.clone()).with_coeff(1);
        assert_eq!(conjugate(&g, &t, &term, &g.identity()), term);
    }
}

#[test]
fn eps_values() {
    for d in 1..10 {
        assert_eq!(eps_table(d), if d % 2 == 0 { 1 } else { -1 });
        assert_eq!(eps_sl2(d), -eps_table(d));
    }
}

#[test]
fn frobenius_examples() {
    for (d0, t, m, d) in [(1, 1, 0, 1), (1, 1, 0, 2), (1, 2, 1, 2), (3, 1, 0, 3), (3, 1, 1, 6)] {
        let s = build_supplement(CaseTwoParams::new(d0, t, m, d).unwrap(), 3, DEFAULT_BUDGET).unwrap();
        let table = SignTable::build(s.group.n);
        let base = FormalRootTerm::new(Root::pair(s.group.n, 1, 1, 2, -1));
        let got = twisted_frobenius_power(&table, &base, 3, &s.twist.v_l, d0);
        let eps = eps_sl2(d);
        assert_eq!(got.frob_exponent, d0 as u32);
        assert_eq!(got.sign(), Some(eps));
        assert_eq!(got.root, if eps == 1 { base.root.clone() } else { base.root.neg() });
        assert_eq!(twisted_frobenius_power(&table, &base, 3, &s.twist.v_l, 0), base);
        let r = verify_twisted_frobenius(&s, &table);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn commutator_and_graph_lemmas() {
    for (d0, t, m, d) in [(1, 1, 1, 1), (1, 2, 1, 1), (1, 2, 1, 2), (3, 1, 0, 3), (3, 1, 0, 6), (1, 3, 0, 2)] {
        let s = build_supplement(CaseTwoParams::new(d0, t, m, d).unwrap(), 3, DEFAULT_BUDGET).unwrap();
        let table = SignTable::build(s.group.n);
        let r = verify_commutator_lemmas(&s, &table);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = verify_graph_action(&s, &table);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn validation_passes_and_flips_fail() {
    let g = TitsGroup::new(3);
    let table = SignTable::full(3);
    let cfg = ValidationConfig { random_cases: 200, ..ValidationConfig::default() };
    assert!(validate_sign_table(&g, &table, cfg).all_passed());
    let (b, a) = (simple_root(3, 2), Root::pair(3, 1, 1, 3, -1));
    let bad = table.with_flipped(&b, &a);
    assert_eq!(bad.eta(&b, &a), table.eta(&b, &a).map(|e| -e));
    assert!(!validate_sign_table(&g, &bad, cfg).all_passed());
}

fn elem(n: usize, seed: u64) -> weylb::tits::MonomialElement {
    random_element(&TitsGroup::new(n), &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn round_trip(n in 1usize..=5, seed in any::<u64>(), k in any::<prop::sample::Index>(), c in 0u8..4) {
        let g = TitsGroup::new(n);
        let t = SignTable::full(n);
        let x = elem(n, seed);
        let term = FormalRootTerm::new(k.get(t.roots()).clone()).with_coeff(c);
        let there = conjugate(&g, &t, &term, &x);
        prop_assert_eq!(conjugate(&g, &t, &there, &g.inverse(&x)), term);
    }

    #[test]
    fn conjugation_is_an_action(n in 1usize..=5, a in any::<u64>(), b in any::<u64>(), k in any::<prop::sample::Index>()) {
        let g = TitsGroup::new(n);
        let t = SignTable::full(n);
        let (x, y) = (elem(n, a), elem(n, b));
        let term = FormalRootTerm::new(k.get(t.roots()).clone());
        let step = conjugate(&g, &t, &conjugate(&g, &t, &term, &x), &y);
        prop_assert_eq!(conjugate(&g, &t, &term, &g.mul(&x, &y)), step);
    }
}

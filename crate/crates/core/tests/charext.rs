use proptest::prelude::*;
use std::collections::HashSet;
use weylb::charext::*;
use weylb::tits::supplement::{build_supplement, CaseTwoParams, Supplement};
use weylb::tits::DEFAULT_BUDGET;

fn supplement(d0: usize, t: usize, m: usize, d: usize) -> Supplement {
    build_supplement(CaseTwoParams::new(d0, t, m, d).unwrap(), 3, DEFAULT_BUDGET).unwrap()
}

fn restricts_to(ctx: &ExtensionContext, chi: &LinearCharacter, lam: &SignCharacter) -> bool {
    (0..ctx.group.order()).filter_map(|h| ctx.eval(lam, h).map(|e| (h, e))).all(|(h, e)| chi.value(h) == Some(e))
}

#[test]
fn irr_h_prime_counts() {
    for (t, want) in [(1, 2), (2, 4), (3, 8)] {
        let s = supplement(1, t, 0, 1);
        let ctx = ExtensionContext::new(&s).unwrap();
        assert_eq!(ctx.rank(), t);
        assert_eq!(ctx.irr_h_prime().len(), want);
    }
}

#[test]
fn trivial_character_has_full_inertia() {
    let s = supplement(1, 2, 0, 1);
    let ctx = ExtensionContext::new(&s).unwrap();
    let lam = SignCharacter { signs: vec![0, 0] };
    let inertia = ctx.inertia(&lam).unwrap();
    assert_eq!(inertia.stabilizer.len(), ctx.group.order());
    assert!(ctx.extend(&lam).unwrap().is_trivial());
}

#[test]
fn inertia_for_p_square_character() {
    let s = supplement(1, 2, 0, 1);
    let ctx = ExtensionContext::new(&s).unwrap();
    let lam = SignCharacter { signs: vec![0, 1] };
    let inertia = ctx.inertia(&lam).unwrap();
    let p: Vec<usize> = s.p_group.elements().iter().map(|x| ctx.group.position(x).unwrap()).collect();
    let want: HashSet<usize> = p.into_iter().filter(|&x| ctx.act(&lam, x) == lam).collect();
    assert_eq!(inertia.p_lambda.iter().copied().collect::<HashSet<_>>(), want);
    ctx.check_inertia_decomposition(&inertia).unwrap();
}

#[test]
fn c_prime_takes_primitive_fourth_root() {
    let s = supplement(1, 1, 0, 1);
    let ctx = ExtensionContext::new(&s).unwrap();
    assert_eq!((ctx.modulus, ctx.group.order()), (4, 4));
    let lam = SignCharacter { signs: vec![1] };
    let chi = ctx.extend(&lam).unwrap();
    let c = ctx.group.position(&s.c_primes[0]).unwrap();
    let v = chi.value(c).unwrap();
    assert!(v == 1 || v == 3);
    assert_eq!(ctx.group.mul(c, c), ctx.basis()[0]);
    assert_eq!(chi.value(ctx.basis()[0]), Some(2 * v % 4));
}

#[test]
fn restriction_sweep() {
    for d0 in [1usize, 3] {
        for t in 1..=3 {
            if d0 == 3 && t == 3 {
                continue;
            }
            for d in [d0, 2 * d0] {
                let s = supplement(d0, t, 0, d);
                let ctx = ExtensionContext::new(&s).unwrap();
                let map = ctx.extension_map().unwrap();
                assert_eq!(map.entries.len(), 1 << t);
                for (lam, (_, _, chi)) in &map.entries {
                    assert!(restricts_to(&ctx, chi, lam), "d0 = {d0}, t = {t}, {lam:?}");
                }
            }
        }
    }
}

#[test]
fn c_prime_fixes_every_character() {
    let s = supplement(1, 2, 1, 2);
    let ctx = ExtensionContext::new(&s).unwrap();
    for lam in ctx.irr_h_prime() {
        for c in &s.c_primes {
            assert_eq!(ctx.act(&lam, ctx.group.position(c).unwrap()), lam);
        }
    }
}

#[test]
fn transport_by_identity_is_trivial() {
    let s = supplement(1, 2, 0, 1);
    let ctx = ExtensionContext::new(&s).unwrap();
    for lam in ctx.irr_h_prime() {
        let chi = ctx.extend(&lam).unwrap();
        let moved = ctx.transport(&chi, ctx.group.identity());
        assert_eq!(moved.members, chi.members);
        for &x in &chi.members {
            assert_eq!(moved.value(x), chi.value(x));
        }
    }
}

#[test]
fn exhaustive_equivariance_small() {
    for (d0, t, d) in [(1, 2, 1), (1, 2, 2), (1, 3, 1), (3, 1, 3)] {
        let s = supplement(d0, t, 0, d);
        let ctx = ExtensionContext::new(&s).unwrap();
        let map = ctx.extension_map().unwrap();
        let all: Vec<usize> = (0..ctx.group.order()).collect();
        verify_equivariance(&ctx, &map, &all).unwrap();
    }
}

#[test]
fn orbit_members_get_conjugate_extensions() {
    let s = supplement(1, 2, 0, 1);
    let ctx = ExtensionContext::new(&s).unwrap();
    let map = ctx.extension_map().unwrap();
    for (lam, (rep, x, chi)) in &map.entries {
        assert_eq!(ctx.act(rep, *x), *lam);
        let moved = ctx.transport(map.get(rep).unwrap(), *x);
        for &y in &moved.members {
            assert_eq!(moved.value(y), chi.value(y));
        }
    }
}

#[test]
fn full_verification_passes() {
    for (d0, t, m, d) in [(1, 1, 0, 1), (1, 2, 1, 2), (3, 2, 0, 3), (5, 1, 0, 10)] {
        let r = verify_extension_map(&supplement(d0, t, m, d));
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn report_serializes() {
    let r = charext_report(&supplement(1, 2, 0, 1)).unwrap();
    assert!(r.equivariant);
    assert_eq!(r.characters.len(), 4);
    let back: CharextReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn wreath_examples() {
    assert_eq!(wreath_character_degrees(2, 1).unwrap(), vec![1, 1]);
    let mut got: Vec<u64> = wreath_irreducibles(2, 2).unwrap().into_iter().map(|(_, d)| d).collect();
    got.sort_unstable();
    assert_eq!(got, vec![1, 1, 1, 1, 2]);
    assert_eq!(wreath_character_degrees(1, 3).unwrap(), vec![1, 1, 2]);
    assert_eq!(multipartitions(2, 2).len(), 5);
    assert_eq!(partitions(5).len(), 7);
}

#[test]
fn wreath_budget() {
    assert!(wreath_irreducibles(6, 8).is_err());
    assert!(wreath_irreducibles(0, 2).is_err());
}

proptest! {
    #[test]
    fn wreath_sum_of_squares(m in 1usize..=6, t in 1usize..=5) {
        let irr = wreath_irreducibles(m, t).unwrap();
        let sum: u128 = irr.iter().map(|(_, d)| (*d as u128).pow(2)).sum();
        let order = (m as u128).pow(t as u32) * (1..=t as u128).product::<u128>();
        prop_assert_eq!(sum, order);
        prop_assert!(irr.iter().all(|(mp, _)| mp.size() == t && mp.components.len() == m));
    }

    #[test]
    fn hook_length_sum(t in 1usize..=8) {
        let parts = partitions(t);
        let sum: u128 = parts.iter().map(|p| (standard_tableaux(p) as u128).pow(2)).sum();
        prop_assert_eq!(sum, (1..=t as u128).product::<u128>());
    }
}

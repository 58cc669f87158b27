use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;
use weylb::cyclo::*;

fn brute_order(q: u64, ell: u64) -> u64 {
    let mut x = q % ell;
    let mut d = 1;
    while x != 1 {
        x = x * q % ell;
        d += 1;
    }
    d
}

fn mobius(mut n: u64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `Φ_e(x) = Π_{f | e} (x^f - 1)^{μ(e/f)}` evaluated at an integer.
fn phi_mobius(e: u64, x: u64) -> BigInt {
    let x = BigInt::from(x);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for f in 1..=e {
        if e.is_multiple_of(f) {
            let v: BigInt = Pow::pow(&x, f as u32) - 1;
            match mobius(e / f) {
                1 => num *= v,
                -1 => den *= v,
                _ => {}
            }
        }
    }
    num / den
}

#[test]
fn multiplicative_order_examples() {
    assert_eq!(multiplicative_order(4, 3).unwrap(), 1);
    assert_eq!(multiplicative_order(3, 5).unwrap(), 4);
    assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
}

#[test]
fn multiplicative_order_rejects() {
    assert!(multiplicative_order(3, 2).is_err());
    assert!(multiplicative_order(10, 5).is_err());
    assert!(multiplicative_order(2, 15).is_err());
}

#[test]
fn cyclotomic_examples() {
    assert_eq!(cyclotomic_poly(1).to_string(), "x - 1");
    assert_eq!(cyclotomic_poly(4).to_string(), "x^2 + 1");
    assert_eq!(cyclotomic_poly(12).to_string(), "x^4 - x^2 + 1");
}

#[test]
fn cyclotomic_matches_mobius_values() {
    for e in 1..=40 {
        for x in [2u64, 3, 5] {
            assert_eq!(cyclotomic_poly(e).eval(&BigInt::from(x)), phi_mobius(e, x), "e = {e}, x = {x}");
        }
    }
}

#[test]
fn divisor_products_are_x_pow_minus_one() {
    for e in 1..=60u64 {
        let prod = divisors(e).iter().fold(CycloPoly { coefficients: vec![BigInt::one()] }, |acc, &f| acc.mul(&cyclotomic_poly(f)));
        assert_eq!(prod, CycloPoly::x_pow_minus_one(e as usize), "e = {e}");
        assert_eq!(cyclotomic_poly(e).degree() as u64, euler_phi(e));
    }
}

#[test]
fn valuation_examples() {
    let ctx = EllContext::new(3, 5).unwrap();
    assert_eq!(ell_valuation_phi(4, &ctx), 1);
    assert_eq!(ell_valuation_phi(1, &ctx), 0);
    assert_eq!(ell_valuation_phi(20, &ctx), 1);
}

#[test]
fn e_set_examples() {
    assert_eq!(e_set(&EllContext::new(3, 5).unwrap(), 25), vec![4, 20]);
    assert_eq!(e_set(&EllContext::new(4, 3).unwrap(), 9), vec![1, 3, 9]);
    assert_eq!(e_set(&EllContext::new(2, 7).unwrap(), 3), vec![3]);
}

#[test]
fn e_set_matches_prediction() {
    for ell in [3u64, 5, 7, 11] {
        for q in (2..40).filter(|&q| prime_power(q).is_some() && q % ell != 0) {
            let ctx = EllContext::new(q, ell).unwrap();
            let bound = ctx.d * ell * ell;
            assert_eq!(e_set(&ctx, bound), e_set_predicted(&ctx, bound), "q = {q}, ell = {ell}");
        }
    }
}

#[test]
fn split_degree_descent_examples() {
    assert_eq!(split_degree_descent(4, 2), 2);
    assert_eq!(split_degree_descent(7, 1), 7);
    assert_eq!(split_degree_descent(6, 4), 3);
}

#[test]
fn generic_order_examples() {
    let ctx = EllContext::new(3, 5).unwrap();
    assert_eq!(generic_order_eval_ell_part(&GenericOrder::phi(4, 2), &ctx), 2);
    assert_eq!(generic_order_eval_ell_part(&GenericOrder::q_pow(16), &ctx), 0);
    assert_eq!(generic_order_eval_ell_part(&GenericOrder::phi(1, 1).mul(&GenericOrder::phi(2, 1)), &ctx), 0);
}

#[test]
fn eps_and_d0() {
    let ctx = EllContext::new(3, 5).unwrap();
    assert_eq!((ctx.d, ctx.d0, ctx.eps()), (4, 2, 1));
    let ctx = EllContext::new(2, 7).unwrap();
    assert_eq!((ctx.d, ctx.d0, ctx.eps()), (3, 3, -1));
}

proptest! {
    #[test]
    fn order_matches_loop(q in 2u64..200, ell in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19])) {
        prop_assume!(q % ell != 0);
        prop_assert_eq!(multiplicative_order(q, ell).unwrap(), brute_order(q, ell));
    }

    #[test]
    fn generic_order_ell_part_matches_evaluation(
        factors in prop::collection::btree_map(1u64..25, 0u64..4, 0..5),
        qpow in 0u64..5,
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13]),
        ell in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
    ) {
        prop_assume!(q % ell != 0);
        let ctx = EllContext::new(q, ell).unwrap();
        let g = factors.iter().fold(GenericOrder::q_pow(qpow), |acc, (&e, &m)| acc.mul(&GenericOrder::phi(e, m)));
        let value = g.eval(q);
        prop_assert!(value > BigInt::zero());
        prop_assert_eq!(g.eval_ell_part(&ctx), valuation(&value, ell));
    }

    #[test]
    fn generic_order_multiplication_adds(a in 1u64..20, b in 1u64..20, q in 2u64..10) {
        let x = GenericOrder::phi(a, 1);
        let y = GenericOrder::phi(b, 2);
        prop_assert_eq!(x.mul(&y).eval(q), x.eval(q) * y.eval(q));
    }

    #[test]
    fn valuation_matches_u64(x in 1u64..1_000_000, ell in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assert_eq!(valuation(&BigInt::from(x), ell), valuation_u64(x, ell));
    }
}

use weylb::atlas::{
    atlas, case13_levi, center_component_torsion, center_generic_order, check_isolated_center_ell_part,
    defect_order, enumerate_rows, has_even_torsion, levi_datum, levi_rational_type, relative_weyl_order,
};
use weylb::cyclo::{gcd, prime_power, EllContext};
use weylb::error::Error;

fn sweep_contexts() -> Vec<EllContext> {
    let mut out = Vec::new();
    for ell in [5u64, 7, 11, 13] {
        for q in 2..=13u64 {
            if prime_power(q).is_some() && gcd(q, ell) == 1 {
                out.push(EllContext::new(q, ell).unwrap());
            }
        }
    }
    out
}

#[test]
fn rows_satisfy_footnote_identities() {
    for ctx in sweep_contexts() {
        for n in 2..=12 {
            for row in enumerate_rows(n, &ctx).unwrap() {
                let p = &row.params;
                assert_eq!(p.a * p.d0 as usize + p.m, n, "{row:?}");
                assert_eq!(p.eps, if ctx.d % 2 == 0 { 1 } else { -1 });
                match row.case_no {
                    2 => assert!(p.d0 % 2 == 1 && (n - p.m) % (2 * p.d0 as usize) == 0),
                    3 => assert!(p.d0 % 2 == 0),
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn rational_types_and_ell_parts_over_sweep() {
    let mut types = std::collections::HashMap::new();
    for ctx in sweep_contexts() {
        for n in 2..=12 {
            for row in enumerate_rows(n, &ctx).unwrap() {
                let datum = levi_datum(&row).unwrap();
                let key = (row.case_no, n, row.params.m, row.params.d);
                let ty = types.entry(key).or_insert_with(|| {
                    assert!(datum.root_subset.is_stable_under(&datum.twist));
                    levi_rational_type(&datum).unwrap()
                });
                assert_eq!(*ty, row.levi_type, "{row:?}");
                assert!(check_isolated_center_ell_part(&datum, &ctx), "{row:?} q={}", ctx.q);
                if row.case_no == 2 {
                    assert!(has_even_torsion(&center_component_torsion(&datum).unwrap()), "{row:?}");
                }
            }
        }
    }
}

#[test]
fn n4_q3_ell5_has_no_case_two() {
    let ctx = EllContext::new(3, 5).unwrap();
    assert_eq!((ctx.d, ctx.d0), (4, 2));
    let cases: std::collections::BTreeSet<u8> = enumerate_rows(4, &ctx).unwrap().iter().map(|r| r.case_no).collect();
    assert_eq!(cases, [1, 3].into_iter().collect());
}

#[test]
fn ell_below_five_rejected() {
    let ctx = EllContext::new(4, 3).unwrap();
    assert_eq!(enumerate_rows(2, &ctx).unwrap_err(), Error::EllTooSmall(3));
}

#[test]
fn n2_d0_one_case_two_row() {
    let ctx = EllContext::new(4, 5).unwrap();
    assert_eq!(ctx.d0, 1);
    let rows = enumerate_rows(2, &ctx).unwrap();
    let r = rows.iter().find(|r| r.case_no == 2 && r.params.m == 0).unwrap();
    assert_eq!((r.params.a, r.params.t_l), (2, Some(1)));
}

#[test]
fn case_two_type_string() {
    let ctx = EllContext::new(4, 5).unwrap();
    let rows = enumerate_rows(6, &ctx).unwrap();
    let r = rows.iter().find(|r| r.case_no == 2 && r.params.m == 2).unwrap();
    assert_eq!(r.levi_template, "B_m(q) A_1(q^{d_0})^{a/2}(q^{d_0}+\\varepsilon )^{a/2}");
    assert_eq!(levi_rational_type(&levi_datum(r).unwrap()).unwrap(), "A_1(q)^2 B_2(q) (q+1)^2");
}

#[test]
fn center_orders() {
    let ctx = EllContext::new(4, 5).unwrap();
    let r2 = enumerate_rows(2, &ctx).unwrap().into_iter().find(|r| r.case_no == 2 && r.params.m == 0).unwrap();
    assert_eq!(center_generic_order(&levi_datum(&r2).unwrap()).to_string(), "Phi1 Phi2");

    let ctx = EllContext::new(11, 5).unwrap();
    assert_eq!((ctx.d, ctx.d0), (1, 1));
    let r1 = enumerate_rows(2, &ctx).unwrap().into_iter().find(|r| r.case_no == 1 && r.params.m == 0).unwrap();
    assert_eq!(center_generic_order(&levi_datum(&r1).unwrap()).to_string(), "Phi1^2");

    let ctx = EllContext::new(2, 5).unwrap();
    assert_eq!(ctx.d0, 2);
    let r3 = enumerate_rows(2, &ctx).unwrap().into_iter().find(|r| r.case_no == 3 && r.params.m == 0).unwrap();
    assert_eq!(center_generic_order(&levi_datum(&r3).unwrap()).to_string(), "Phi4");
}

#[test]
fn case13_levi_examples() {
    let d = case13_levi(3, 1, 2).unwrap();
    assert_eq!(levi_rational_type(&d).unwrap(), "B_1(q) (q+1)^2");
    assert_eq!(levi_rational_type(&case13_levi(5, 5, 3).unwrap()).unwrap(), "B_5(q)");
    for (n, m, d) in [(6, 0, 3), (6, 2, 4), (7, 1, 6), (5, 1, 1)] {
        let d = case13_levi(n, m, d).unwrap();
        assert!(d.root_subset.is_stable_under(&d.twist));
    }
    assert!(case13_levi(4, 1, 2).is_ok());
    assert!(case13_levi(4, 1, 4).is_err());
}

#[test]
fn defect_valuation_examples() {
    // d0 = 1 and ℓ = 5 | q - 1 = 10: W_rel = C_2 ≀ S_5 contributes v_5(5!) = 1.
    let ctx = EllContext::new(11, 5).unwrap();
    let rows = enumerate_rows(10, &ctx).unwrap();
    let r = rows.iter().find(|r| r.case_no == 2 && r.params.m == 0).unwrap();
    assert_eq!(relative_weyl_order(r), num_bigint::BigInt::from(32 * 120));
    let datum = levi_datum(r).unwrap();
    assert_eq!(defect_order(&datum, &ctx), 1 + 5);

    let full = rows.iter().find(|r| r.case_no == 2 && r.params.m == 10).unwrap();
    assert_eq!(defect_order(&levi_datum(full).unwrap(), &ctx), 0);
}

#[test]
fn defect_monotone_in_m() {
    for ctx in sweep_contexts() {
        for n in 2..=12 {
            let rows = enumerate_rows(n, &ctx).unwrap();
            for case in [2u8, 3] {
                let vals: Vec<u32> = rows
                    .iter()
                    .filter(|r| r.case_no == case)
                    .map(|r| defect_order(&levi_datum(r).unwrap(), &ctx))
                    .collect();
                assert!(vals.windows(2).all(|w| w[0] >= w[1]), "case {case} n={n} {vals:?}");
            }
        }
    }
}

#[test]
fn atlas_json_round_trip() {
    let ctx = EllContext::new(3, 7).unwrap();
    let entries = atlas(6, &ctx).unwrap();
    let json = serde_json::to_string(&entries).unwrap();
    let back: Vec<weylb::atlas::AtlasEntry> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, entries);
    assert!(entries.iter().all(|e| e.ell_part_identity && e.levi_type == e.levi_type_computed));
}

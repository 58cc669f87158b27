//! Verification suites for the multiplication, the groups `H_l`, and the
//! hypotheses of the extension-map criterion for `V'`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::supplement::{build_h_elements, Supplement, TwistData};
use super::{
    f2_rank, fixed_subgroup, torus_two_torsion, MonomialElement, TitsGroup, TorusTorsionElement,
    DEFAULT_BUDGET,
};
use crate::report::{Check, CheckList};
use crate::roots::{levi_root_subset, simple_root, RootSubset};
use crate::sperm::{reflection_group, SignedPermutation};

/// Settings for the multiplication suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoreConfig {
    /// Largest rank for the per-generator and randomized checks.
    pub max_rank: usize,
    /// Largest rank for which the full closure of the simple lifts is enumerated.
    pub closure_rank: usize,
    pub random_triples: usize,
    pub seed: u64,
}

impl Default for CoreConfig {
    fn default() -> Self {
        Self { max_rank: 6, closure_rank: 3, random_triples: 10_000, seed: 0x5eed }
    }
}

pub fn random_signed_permutation<R: Rng>(n: usize, rng: &mut R) -> SignedPermutation {
    let mut images: Vec<i32> = (1..=n as i32).collect();
    images.shuffle(rng);
    for x in images.iter_mut() {
        if rng.gen_bool(0.5) {
            *x = -*x;
        }
    }
    SignedPermutation::from_images(images).expect("shuffled signed images")
}

pub fn random_element<R: Rng>(g: &TitsGroup, rng: &mut R) -> MonomialElement {
    let coords = (0..g.n).map(|_| rng.gen_range(0..g.modulus as i64)).collect();
    MonomialElement {
        torus: TorusTorsionElement::from_coords(coords, g.modulus),
        weyl: random_signed_permutation(g.n, rng),
    }
}

/// Every element `(t, w)` with `t ∈ Y ⊗ μ_{modulus}`.
pub fn all_elements(g: &TitsGroup) -> Vec<MonomialElement> {
    let weyl = all_signed_permutations(g.n);
    let m = g.modulus as usize;
    let mut tori = Vec::new();
    for k in 0..m.pow(g.n as u32) {
        let coords = (0..g.n).map(|i| ((k / m.pow(i as u32)) % m) as i64).collect();
        tori.push(TorusTorsionElement::from_coords(coords, g.modulus));
    }
    let mut out = Vec::with_capacity(weyl.len() * tori.len());
    for w in &weyl {
        for t in &tori {
            out.push(MonomialElement { torus: t.clone(), weyl: w.clone() });
        }
    }
    out
}

pub fn all_signed_permutations(n: usize) -> Vec<SignedPermutation> {
    let all = RootSubset::new(n, (1..=n).map(|i| simple_root(n, i)).flat_map(|r| [r.neg(), r]));
    reflection_group(n, &all)
}

/// All reduced words of `w`, each read left to right.
pub fn reduced_words(w: &SignedPermutation) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let n = w.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        if w.has_right_descent(i) {
            let shorter = w.compose(&SignedPermutation::simple_reflection(n, i));
            for mut word in reduced_words(&shorter) {
                word.push(i);
                out.push(word);
            }
        }
    }
    out
}

/// A reduced word of `w` obtained by choosing a uniformly random right descent at each step.
pub fn random_reduced_word<R: Rng>(w: &SignedPermutation, rng: &mut R) -> Vec<usize> {
    let n = w.rank();
    let mut cur = w.clone();
    let mut word = Vec::new();
    while !cur.is_identity() {
        let descents: Vec<usize> = (1..=n).filter(|&i| cur.has_right_descent(i)).collect();
        let i = *descents.choose(rng).expect("nonidentity has a descent");
        cur = cur.compose(&SignedPermutation::simple_reflection(n, i));
        word.push(i);
    }
    word.reverse();
    word
}

/// Multiplies the simple lifts along `word` one generator at a time.
fn word_by_products(g: &TitsGroup, word: &[usize]) -> MonomialElement {
    word.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &g.simple_lift(i)))
}

fn braid_exponent(i: usize, j: usize) -> usize {
    match (i.min(j), i.abs_diff(j)) {
        (1, 1) => 4,
        (_, 1) => 3,
        _ => 2,
    }
}

/// Squares, braid relations, closure order, group axioms and the Matsumoto property.
pub fn tits_core_suite(group_for: &dyn Fn(usize) -> TitsGroup, cfg: CoreConfig) -> CheckList {
    let mut out = CheckList::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    out.push(Check::from_result("core.square", "m_i^2 = h_{alpha_i}(-1)", (|| {
        for n in 1..=cfg.max_rank {
            let g = group_for(n);
            for i in 1..=n {
                let sq = g.mul(&g.simple_lift(i), &g.simple_lift(i));
                let want = g.torus(g.h_alpha_minus_one(&simple_root(n, i)));
                if sq != want {
                    return Err(format!("n = {n}, i = {i}: m_i^2 = {sq:?}, expected {want:?}"));
                }
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("core.braid", "(m_i m_j)^{m_ij} = 1 up to the braid relation m_i m_j m_i ... = m_j m_i m_j ...", (|| {
        for n in 2..=cfg.max_rank {
            let g = group_for(n);
            for i in 1..=n {
                for j in i + 1..=n {
                    let k = braid_exponent(i, j);
                    let left: Vec<usize> = (0..k).map(|r| if r % 2 == 0 { i } else { j }).collect();
                    let right: Vec<usize> = (0..k).map(|r| if r % 2 == 0 { j } else { i }).collect();
                    let (a, b) = (word_by_products(&g, &left), word_by_products(&g, &right));
                    if a != b {
                        return Err(format!("n = {n}, (i, j) = ({i}, {j}): {a:?} != {b:?}"));
                    }
                }
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("core.closure", "|<m_1, ..., m_n>| = 2^n |W(B_n)| and V cap T = Y (x) mu_2", (|| {
        for n in 1..=cfg.closure_rank {
            let g = group_for(n);
            let v = super::supplement::simple_lift_subgroup(&g, 1, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let want = (1usize << n) * (1usize << n) * (1..=n).product::<usize>();
            if v.order() != want {
                return Err(format!("n = {n}: order {} != {want}", v.order()));
            }
            let h = torus_two_torsion(&g);
            let torus: HashSet<_> = v.elements().iter().filter(|x| x.weyl.is_identity()).collect();
            if torus.len() != h.order() || !h.elements().iter().all(|x| torus.contains(x)) {
                return Err(format!("n = {n}: V cap T has {} elements, expected {}", torus.len(), h.order()));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("core.axioms_exhaustive", "(xy)z = x(yz), x 1 = 1 x = x, x x^{-1} = 1 on all of T[4] W(B_2)", (|| {
        let g = group_for(2);
        let all = all_elements(&g);
        let id = g.identity();
        for x in &all {
            let inv = g.inverse(x);
            if !g.mul(x, &inv).is_identity() || !g.mul(&inv, x).is_identity() {
                return Err(format!("inverse fails for {x:?}"));
            }
            if g.mul(x, &id) != *x || g.mul(&id, x) != *x {
                return Err(format!("identity fails for {x:?}"));
            }
        }
        for x in &all {
            for y in &all {
                let xy = g.mul(x, y);
                for z in &all {
                    if g.mul(&xy, z) != g.mul(x, &g.mul(y, z)) {
                        return Err(format!("associativity fails for {x:?}, {y:?}, {z:?}"));
                    }
                }
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("core.axioms_random", "(xy)z = x(yz) and x x^{-1} = 1 on random triples, n <= 6", (|| {
        for n in 1..=cfg.max_rank {
            let g = group_for(n);
            for _ in 0..cfg.random_triples {
                let (x, y, z) = (random_element(&g, &mut rng), random_element(&g, &mut rng), random_element(&g, &mut rng));
                if g.mul(&g.mul(&x, &y), &z) != g.mul(&x, &g.mul(&y, &z)) {
                    return Err(format!("associativity fails for {x:?}, {y:?}, {z:?}"));
                }
                if !g.mul(&x, &g.inverse(&x)).is_identity() {
                    return Err(format!("x x^-1 != 1 for {x:?}"));
                }
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("core.matsumoto", "m_{i_1} ... m_{i_k} is independent of the reduced word of w", (|| {
        let max = cfg.max_rank.min(4);
        for n in 1..=max {
            let g = group_for(n);
            for w in all_signed_permutations(n) {
                let lift = g.canonical_lift(&w);
                let words = if n <= 3 || w.length() <= 8 {
                    reduced_words(&w)
                } else {
                    (0..8).map(|_| random_reduced_word(&w, &mut rng)).collect()
                };
                for word in words {
                    let x = word_by_products(&g, &word);
                    if x != lift {
                        return Err(format!("n = {n}, w = {w}, word {word:?}: {x:?} != {lift:?}"));
                    }
                }
            }
        }
        Ok(())
    })()));

    out
}

/// Which twisted Frobenius convention to use for fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusConvention {
    /// `x ↦ v F_q(x) v⁻¹`.
    Left,
    /// `x ↦ v⁻¹ F_q(x) v`.
    Right,
}

fn apply_convention(g: &TitsGroup, x: &MonomialElement, q: u64, v: &MonomialElement, c: FrobeniusConvention) -> MonomialElement {
    match c {
        FrobeniusConvention::Left => g.frobenius(x, q, v),
        FrobeniusConvention::Right => g.frobenius_opposite(x, q, v),
    }
}

fn two_torsion_bits(t: &TorusTorsionElement) -> u128 {
    let half = t.modulus() / 2;
    t.coords().iter().enumerate().fold(0u128, |acc, (i, &c)| acc | (((c / half) as u128 & 1) << i))
}

fn from_two_torsion_bits(g: &TitsGroup, bits: u128) -> TorusTorsionElement {
    let half = g.modulus as i64 / 2;
    TorusTorsionElement::from_coords((0..g.n).map(|i| (bits >> i & 1) as i64 * half).collect(), g.modulus)
}

/// A basis of the fixed points of the twisted Frobenius on `H`, computed as the kernel of
/// `F - 1` over `𝔽_2` from the images of the basis `h_{α_i}(-1)`.
pub fn fixed_two_torsion_basis(g: &TitsGroup, q: u64, v: &MonomialElement, c: FrobeniusConvention) -> Vec<TorusTorsionElement> {
    assert!(g.n <= 128, "rank above 128 is not supported");
    let mut rows: Vec<(u128, u128)> = (0..g.n)
        .map(|i| {
            let e = 1u128 << i;
            let image = apply_convention(g, &g.torus(from_two_torsion_bits(g, e)), q, v, c);
            debug_assert!(image.weyl.is_identity());
            (two_torsion_bits(&image.torus) ^ e, e)
        })
        .collect();
    let mut pivot_row = 0;
    for bit in 0..g.n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].0 >> bit & 1 == 1) else { continue };
        rows.swap(pivot_row, p);
        let pivot = rows[pivot_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row.0 >> bit & 1 == 1 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        pivot_row += 1;
    }
    rows[pivot_row..].iter().map(|&(_, tag)| from_two_torsion_bits(g, tag)).collect()
}

/// Largest rank for which `H` is enumerated element by element.
pub const H_L_ENUMERATION_CAP: usize = 12;

/// Structure of `H_l = H^{v_l F_q}` in rank `l`.
pub fn h_l_suite(g: &TitsGroup, d: usize, q: u64) -> CheckList {
    let l = g.n;
    let mut out = CheckList::new();
    let tw = match TwistData::new(g, l, d) {
        Ok(t) => t,
        Err(e) => {
            out.push(Check::fail("hl.twist", "d | 2l", e.to_string()));
            return out;
        }
    };
    let a = tw.a_l;
    let mut ranks = Vec::new();
    let mut fixed_sets = Vec::new();
    for conv in [FrobeniusConvention::Left, FrobeniusConvention::Right] {
        let basis = fixed_two_torsion_basis(g, q, &tw.v_l, conv);
        let all_fixed = basis.iter().all(|t| apply_convention(g, &g.torus(t.clone()), q, &tw.v_l, conv).torus == *t);
        ranks.push(if all_fixed { Some(basis.len()) } else { None });
        fixed_sets.push(span_two_torsion(&basis));
    }

    if l <= H_L_ENUMERATION_CAP {
        let h = torus_two_torsion(g);
        let fixed: Vec<TorusTorsionElement> = fixed_subgroup(g, &h, q, &tw.v_l).elements().iter().map(|x| x.torus.clone()).collect();
        let rank = f2_rank(&fixed);
        let set: HashSet<TorusTorsionElement> = fixed.iter().cloned().collect();
        out.push(if fixed.len() == 1usize << rank && set == fixed_sets[0] {
            Check::pass("hl.elementary_abelian", "H_l is an elementary abelian 2-group")
        } else {
            Check::fail(
                "hl.elementary_abelian",
                "H_l is an elementary abelian 2-group",
                format!("{} fixed points, F_2-rank {rank}, kernel of F - 1 has {} elements", fixed.len(), fixed_sets[0].len()),
            )
        });
    } else {
        out.push(match ranks[0] {
            Some(_) => Check::pass("hl.elementary_abelian", "H_l is an elementary abelian 2-group")
                .with_note("fixed points computed as the kernel of F - 1 on H"),
            None => Check::fail("hl.elementary_abelian", "H_l is an elementary abelian 2-group", "kernel basis not fixed"),
        });
    }

    let rank_check = Check::expect_eq("hl.rank", "rank H_l = a_l = l / d0", &ranks[0], &Some(a));
    out.push(match (ranks[0] == Some(a), ranks[1] == Some(a)) {
        (_, true) => rank_check.with_note("both Frobenius conventions give rank a_l"),
        (_, false) => rank_check.with_note(format!("the convention v^-1 F_q(x) v gives rank {:?}", ranks[1])),
    });

    let (h0, hs) = build_h_elements(g, &tw.orbits);
    let mut gens = vec![h0.clone()];
    gens.extend((1..a).map(|k| hs[k - 1].add(&hs[k])));
    let span = span_two_torsion(&gens);
    out.push(if span == fixed_sets[0] && f2_rank(&gens) == a {
        Check::pass("hl.generators", "H_l = <h_0> x <h_1 h_2> x ... x <h_{a_l-1} h_{a_l}>")
    } else {
        Check::fail(
            "hl.generators",
            "H_l = <h_0> x <h_1 h_2> x ... x <h_{a_l-1} h_{a_l}>",
            format!("span has {} elements (rank {}), H_l has {}", span.len(), f2_rank(&gens), fixed_sets[0].len()),
        )
    });

    out.push(Check::from_result("hl.h_conjugation", "h_k^v = h_k if d odd, h_0 h_k if d even", (|| {
        for (k, hk) in hs.iter().enumerate() {
            let got = g.conj(&g.torus(hk.clone()), &tw.v_l).torus;
            let want = if d % 2 == 1 { hk.clone() } else { h0.add(hk) };
            if got != want {
                return Err(format!("k = {}: h_k^v = {got:?}, expected {want:?}", k + 1));
            }
        }
        Ok(())
    })()));
    out
}

fn span_two_torsion(gens: &[TorusTorsionElement]) -> HashSet<TorusTorsionElement> {
    let mut elems: HashSet<TorusTorsionElement> = gens.first().map(|x| x.scale(0)).into_iter().collect();
    for x in gens {
        let more: Vec<_> = elems.iter().map(|y| y.add(x)).collect();
        elems.extend(more);
    }
    elems
}

/// True iff `α(t) = 1` for every `α ∈ Φ_L`.
pub fn is_central_in(t: &TorusTorsionElement, phi_l: &RootSubset) -> bool {
    phi_l.iter().all(|a| t.root_character(a) == 0)
}

/// Hypotheses of the extension-map criterion at the level of monomial elements.
pub fn verify_extmap_hypotheses(s: &Supplement) -> CheckList {
    let g = &s.group;
    let p = s.params;
    let n = g.n;
    let mut out = CheckList::new();
    let phi_l = match levi_root_subset(n, p.m, p.d0, p.t_l) {
        Ok(x) => x,
        Err(e) => {
            out.push(Check::fail("extmap.levi", "Phi_L", e.to_string()));
            return out;
        }
    };

    out.push(Check::from_result("extmap.h_prime_abelian", "H' is an elementary abelian subgroup of H", (|| {
        for x in s.h_prime.elements() {
            if !x.weyl.is_identity() || !x.torus.is_in_h() {
                return Err(format!("{x:?} is not in H"));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("extmap.h_prime_central", "H' <= Z(L): alpha(h) = 1 for h in H', alpha in Phi_L", (|| {
        for x in s.h_prime.elements() {
            if let Some(a) = phi_l.iter().find(|a| x.torus.root_character(a) != 0) {
                return Err(format!("{x:?} pairs nontrivially with {a}"));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("extmap.hh_central", "h_i h_{i+1} is central in L iff i is odd", (|| {
        for i in 1..s.twist.a_l {
            let t = s.h(i).add(s.h(i + 1));
            if is_central_in(&t, &phi_l) != (i % 2 == 1) {
                return Err(format!("i = {i}: central = {}", !(i % 2 == 1)));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("extmap.normalises", "rho(V') stabilises Phi_L, so V' <= N and M = K V'", (|| {
        for x in &s.v_group.generators {
            if !phi_l.is_stable_under(&x.weyl) {
                return Err(format!("{x:?} does not stabilise Phi_L"));
            }
        }
        Ok(())
    })()));

    let wl: HashSet<SignedPermutation> = reflection_group(n, &phi_l).into_iter().collect();
    out.push(Check::from_result("extmap.k_cap_v", "K cap V' = {x in V' : rho(x) in W_L} = H'", (|| {
        let inside: Vec<&MonomialElement> = s.v_group.elements().iter().filter(|x| wl.contains(&x.weyl)).collect();
        if inside.len() != s.h_prime.order() || !inside.iter().all(|x| s.h_prime.contains(x)) {
            return Err(format!("{} elements of V' lie over W_L, |H'| = {}", inside.len(), s.h_prime.order()));
        }
        Ok(())
    })()));

    let want = (2 * p.d0).pow(p.t_l as u32) * (1..=p.t_l).product::<usize>();
    let index = s.v_group.order() / s.h_prime.order().max(1);
    out.push(if s.v_group.order() % s.h_prime.order().max(1) == 0 && index == want {
        Check::pass("extmap.index", "|M/K| = |V'/H'| = (2 d0)^{t_l} t_l!")
    } else {
        Check::fail(
            "extmap.index",
            "|M/K| = |V'/H'| = (2 d0)^{t_l} t_l!",
            format!("|V'| = {}, |H'| = {}, expected index {want}", s.v_group.order(), s.h_prime.order()),
        )
    });

    out.push(Check::from_result("extmap.e_stable", "field automorphisms F_p fix V' elementwise", (|| {
        for x in &s.v_group.generators {
            for p in [3u64, 5, 7] {
                if g.frobenius_untwisted(x, p) != *x {
                    return Err(format!("F_{p} moves {x:?}"));
                }
            }
        }
        Ok(())
    })()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_counts() {
        let w0 = SignedPermutation::from_images(vec![-1, -2]).unwrap();
        assert_eq!(reduced_words(&w0).len(), 2);
        assert_eq!(all_signed_permutations(3).len(), 48);
    }

    #[test]
    fn h_l_small() {
        let g = TitsGroup::new(2);
        assert!(h_l_suite(&g, 1, 3).all_passed());
        assert!(h_l_suite(&g, 2, 3).all_passed());
    }
}

//! Twists, the elements `h_k`, `p_k`, `c_1`, the maps `ι_1`, `ι_2`, and the
//! supplement `V' = C' ⋊ P'` of the relative Weyl group.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{GeneratedSubgroup, MonomialElement, TitsGroup, TorusTorsionElement, DEFAULT_BUDGET};
use crate::report::{Check, CheckList};
use crate::error::{Error, Result};
use crate::roots::Root;
use crate::sperm::{coxeter_cycle, SignedPermutation};

/// Parameters of a case-2 Levi datum: `l = 2 d_0 t_l`, `n = l + m`, `d ∈ {d_0, 2d_0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseTwoParams {
    pub d0: usize,
    pub t_l: usize,
    pub m: usize,
    pub d: usize,
}

impl CaseTwoParams {
    pub fn new(d0: usize, t_l: usize, m: usize, d: usize) -> Result<Self> {
        let p = Self { d0, t_l, m, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d0 == 0 || self.t_l == 0 {
            return Err(Error::InvalidParameters("d0 and t_l must be positive".into()));
        }
        if self.d0 % 2 == 0 {
            return Err(Error::InvalidParameters(format!("d0 = {} must be odd", self.d0)));
        }
        if self.d != self.d0 && self.d != 2 * self.d0 {
            return Err(Error::InvalidParameters(format!("d = {} must be d0 or 2 d0", self.d)));
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        2 * self.d0 * self.t_l
    }

    pub fn n(&self) -> usize {
        self.l() + self.m
    }

    pub fn a_l(&self) -> usize {
        2 * self.t_l
    }
}

/// The twist `v_l = v_{l,0}^{2l/d}` together with derived data.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub l: usize,
    pub d: usize,
    pub d0: usize,
    pub a_l: usize,
    pub v_l0: MonomialElement,
    pub v_l: MonomialElement,
    /// `v'_l = v_{l,0}^{a_l}`.
    pub v_l_prime: MonomialElement,
    /// Orbits `O_1, …, O_{a_l}` of `ρ̄(v_l)` on `{1, …, l}`.
    pub orbits: Vec<Vec<usize>>,
    powers: Vec<MonomialElement>,
    inverse_powers: Vec<MonomialElement>,
}

impl TwistData {
    pub fn new(g: &TitsGroup, l: usize, d: usize) -> Result<Self> {
        if l == 0 || l > g.n || d == 0 || (2 * l) % d != 0 {
            return Err(Error::InvalidParameters(format!("d = {d} must divide 2l = {}", 2 * l)));
        }
        let d0 = if d % 2 == 0 { d / 2 } else { d };
        let a_l = l / d0;
        let v_l0 = g.word(&(1..=l).collect::<Vec<_>>());
        let v_l = g.pow(&v_l0, (2 * l / d) as i64);
        let v_l_prime = g.pow(&v_l0, a_l as i64);
        let orbits = v_l.weyl.orbits_on_support(l)?;
        let mut powers = vec![g.identity()];
        for k in 1..d0 {
            powers.push(g.mul(&powers[k - 1], &v_l));
        }
        let inverse_powers = powers.iter().map(|x| g.inverse(x)).collect();
        Ok(Self { l, d, d0, a_l, v_l0, v_l, v_l_prime, orbits, powers, inverse_powers })
    }

    /// `x^{v_l^k} = v_l^{-k} x v_l^k` for `0 ≤ k < d_0`.
    pub fn conj_power(&self, g: &TitsGroup, x: &MonomialElement, k: usize) -> MonomialElement {
        g.mul(&g.mul(&self.inverse_powers[k], x), &self.powers[k])
    }

    pub fn orbit(&self, k: usize) -> &[usize] {
        &self.orbits[k - 1]
    }
}

pub fn build_twist(g: &TitsGroup, l: usize, d: usize) -> Result<MonomialElement> {
    Ok(TwistData::new(g, l, d)?.v_l)
}

/// `h_0 = h_{e_1}(-1)` and `h_k = Π_{i ∈ O_k} h_{e_i}(ϖ)` for `k = 1, …, a_l`.
pub fn build_h_elements(g: &TitsGroup, orbits: &[Vec<usize>]) -> (TorusTorsionElement, Vec<TorusTorsionElement>) {
    let h0 = TorusTorsionElement::h_e(g.n, 1, 2, g.modulus);
    let hs = orbits
        .iter()
        .map(|o| o.iter().fold(g.zero_torus(), |acc, &i| acc.add(&TorusTorsionElement::h_e(g.n, i, 1, g.modulus))))
        .collect();
    (h0, hs)
}

/// `p_k = Π_{i<d_0} m_{k+1}^{v_l^i}`.
pub fn build_p(g: &TitsGroup, tw: &TwistData, k: usize) -> MonomialElement {
    let m = g.simple_lift(k + 1);
    let factors: Vec<_> = (0..tw.d0).map(|i| tw.conj_power(g, &m, i)).collect();
    g.product(&factors)
}

/// The deterministic lift `n_β(±1)` of the reflection `s_β`, obtained by conjugating
/// the simple lift of the same length by a canonical Weyl lift.
pub fn root_lift(g: &TitsGroup, beta: &Root) -> MonomialElement {
    let n = g.n;
    let supp = beta.support();
    let c = beta.coords();
    let mut images = vec![0i32; n];
    let i = if supp.len() == 1 {
        let a = supp[0];
        images[0] = c[a - 1] as i32 * a as i32;
        1
    } else {
        let (a, b) = (supp[0], supp[1]);
        images[1] = c[b - 1] as i32 * b as i32;
        images[0] = -(c[a - 1] as i32) * a as i32;
        2
    };
    let used: BTreeSet<u32> = images.iter().filter(|&&x| x != 0).map(|x| x.unsigned_abs()).collect();
    let mut free = (1..=n as u32).filter(|x| !used.contains(x));
    for img in images.iter_mut() {
        if *img == 0 {
            *img = free.next().expect("enough letters") as i32;
        }
    }
    let w = SignedPermutation::from_images(images).expect("valid permutation");
    debug_assert_eq!(w.act_on_root(&crate::roots::simple_root(n, i)), *beta);
    let u = g.canonical_lift(&w);
    g.conj_left(&u, &g.simple_lift(i))
}

/// Local simple roots `e_{o_1}`, `e_{o_j} - e_{o_{j-1}}` of the B-system on a set of letters.
pub fn local_simple_roots(n: usize, letters: &[usize]) -> Vec<Root> {
    let mut s = vec![Root::e(n, letters[0], 1)];
    for j in 1..letters.len() {
        s.push(Root::pair(n, letters[j - 1], -1, letters[j], 1));
    }
    s
}

/// A lift in `V_O` of a signed permutation supported on the letters `O`.
pub fn local_lift(g: &TitsGroup, letters: &[usize], w: &SignedPermutation) -> MonomialElement {
    let r = letters.len();
    let pos = |x: usize| letters.iter().position(|&y| y == x).expect("letter in O") as i32 + 1;
    let local: Vec<i32> = letters
        .iter()
        .map(|&o| {
            let img = w.apply(o as i32);
            img.signum() * pos(img.unsigned_abs() as usize)
        })
        .collect();
    let local = SignedPermutation::from_images(local).expect("w stabilises O");
    let simple = local_simple_roots(g.n, letters);
    let lifts: Vec<_> = simple.iter().map(|b| root_lift(g, b)).collect();
    let word = local.reduced_word();
    debug_assert!(word.iter().all(|&j| j <= r));
    g.product(word.iter().map(|&j| &lifts[j - 1]))
}

/// The torus part `H_O`: span of `h_β(-1)` for `β` in the local B-system on `O`.
pub fn local_two_torsion(g: &TitsGroup, letters: &[usize]) -> Vec<TorusTorsionElement> {
    let gens: Vec<_> = local_simple_roots(g.n, letters).iter().map(|b| g.h_alpha_minus_one(b)).collect();
    span(g, &gens)
}

fn span(g: &TitsGroup, gens: &[TorusTorsionElement]) -> Vec<TorusTorsionElement> {
    let mut set: BTreeSet<TorusTorsionElement> = BTreeSet::from([g.zero_torus()]);
    let mut frontier: Vec<_> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for h in gens {
                let y = x.add(h);
                if set.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    set.into_iter().collect()
}

/// Which element of `C_{W_l}(ρ(v_l))` is lifted to `c_1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum C1Choice {
    /// `ρ(v'_l)` restricted to `O_1`; agrees with `Displayed` for `d` even.
    #[default]
    Normalised,
    /// The cycle of `w_l` through 1 for `d` even, `c̄'_1` times the negation of `O_1` for `d` odd.
    Displayed,
}

/// `c̄_1` for the chosen convention.
pub fn c1_bar(tw: &TwistData, choice: C1Choice) -> SignedPermutation {
    match choice {
        C1Choice::Normalised => tw.v_l_prime.weyl.restrict(tw.orbit(1)),
        C1Choice::Displayed => c1_bar_displayed(tw),
    }
}

/// `c̄_1`: the cycle of `w_l` through 1 when `d` is even; when `d` is odd the
/// restriction of `w_l` to `O_1` composed with the negation of `O_1`.
pub fn c1_bar_displayed(tw: &TwistData) -> SignedPermutation {
    let o1 = tw.orbit(1);
    let restricted = tw.v_l.weyl.restrict(o1);
    if tw.d % 2 == 0 {
        restricted
    } else {
        let mut neg: Vec<i32> = (1..=restricted.rank() as i32).collect();
        for &i in o1 {
            neg[i - 1] = -(i as i32);
        }
        restricted.compose(&SignedPermutation::from_images(neg).expect("negation"))
    }
}

/// A lift `c_1 ∈ V_{O_1}` of `c̄_1` fixed by `v_l F_q`, with lexicographically least
/// torus part among the `|H_{O_1}|` candidates.
pub fn find_c1(g: &TitsGroup, tw: &TwistData, q: u64, choice: C1Choice) -> Result<MonomialElement> {
    let o1 = tw.orbit(1).to_vec();
    let target = c1_bar(tw, choice);
    let v0 = local_lift(g, &o1, &target);
    debug_assert_eq!(v0.weyl, target);
    let mut best: Option<MonomialElement> = None;
    for h in local_two_torsion(g, &o1) {
        let c = g.mul(&g.torus(h), &v0);
        if g.frobenius(&c, q, &tw.v_l) == c && best.as_ref().map_or(true, |b| c.torus < b.torus) {
            best = Some(c);
        }
    }
    best.ok_or(Error::NoFixedLift { l: tw.l, d: tw.d })
}

/// `ι_1(x) = Π_{k<d_0} x^{v_l^k}`.
pub fn iota1(g: &TitsGroup, tw: &TwistData, x: &MonomialElement) -> MonomialElement {
    let factors: Vec<_> = (0..tw.d0).map(|k| tw.conj_power(g, x, k)).collect();
    g.product(&factors)
}

pub fn iota1_word(g: &TitsGroup, tw: &TwistData, word: &[usize]) -> MonomialElement {
    iota1(g, tw, &g.word(word))
}

/// `g_1 = Π_i p_i^{p_{i+1} ⋯ p_{2i-2}}` and `g_2 = Π_i p_i^{p_{i+1} ⋯ p_{2i-1}}`.
pub fn build_g1_g2(g: &TitsGroup, ps: &[MonomialElement], t_l: usize) -> (MonomialElement, MonomialElement) {
    let p = |k: usize| &ps[k - 1];
    let conj_range = |i: usize, last: usize| {
        if last < i {
            return g.identity();
        }
        let c = g.product((i + 1..=last).map(p));
        g.conj(p(i), &c)
    };
    let g1 = g.product(&(1..=t_l).map(|i| conj_range(i, 2 * i - 2)).collect::<Vec<_>>());
    let g2 = g.product(&(1..=t_l).map(|i| conj_range(i, 2 * i - 1)).collect::<Vec<_>>());
    (g1, g2)
}

/// `ι_2(p) = (g_1 p g_1⁻¹)(g_2 p g_2⁻¹)`.
pub fn iota2(g: &TitsGroup, p: &MonomialElement, g1: &MonomialElement, g2: &MonomialElement) -> MonomialElement {
    g.mul(&g.conj_left(g1, p), &g.conj_left(g2, p))
}

/// All constructed objects of the supplement for one parameter tuple.
#[derive(Clone, Debug)]
pub struct Supplement {
    pub params: CaseTwoParams,
    pub q: u64,
    pub c1_choice: C1Choice,
    pub group: TitsGroup,
    pub twist: TwistData,
    pub h0: TorusTorsionElement,
    /// `h_1, …, h_{a_l}`.
    pub hs: Vec<TorusTorsionElement>,
    /// `p_1, …, p_{a_l - 1}`.
    pub ps: Vec<MonomialElement>,
    pub c1: MonomialElement,
    pub g1: MonomialElement,
    pub g2: MonomialElement,
    /// `p'_1, …, p'_{t_l - 1}`.
    pub p_primes: Vec<MonomialElement>,
    /// `c'_1, …, c'_{t_l}`.
    pub c_primes: Vec<MonomialElement>,
    pub c_group: GeneratedSubgroup,
    pub p_group: GeneratedSubgroup,
    pub v_group: GeneratedSubgroup,
    pub h_prime: GeneratedSubgroup,
}

impl Supplement {
    pub fn h(&self, k: usize) -> &TorusTorsionElement {
        if k == 0 {
            &self.h0
        } else {
            &self.hs[k - 1]
        }
    }

    pub fn p(&self, k: usize) -> &MonomialElement {
        &self.ps[k - 1]
    }

    /// The generators `c_1 c_1^{p_1}` and `p'_i` of `V'`.
    pub fn v_generators(&self) -> Vec<MonomialElement> {
        let mut gens = vec![self.c_primes[0].clone()];
        gens.extend(self.p_primes.iter().cloned());
        gens
    }
}

pub fn build_supplement(params: CaseTwoParams, q: u64, budget: usize) -> Result<Supplement> {
    build_supplement_in(&TitsGroup::new(params.n()), params, q, budget, C1Choice::default())
}

pub fn build_supplement_in(
    g: &TitsGroup,
    params: CaseTwoParams,
    q: u64,
    budget: usize,
    choice: C1Choice,
) -> Result<Supplement> {
    params.validate()?;
    if g.n != params.n() {
        return Err(Error::RankMismatch(g.n, params.n()));
    }
    let t = params.t_l;
    let twist = TwistData::new(g, params.l(), params.d)?;
    let (h0, hs) = build_h_elements(g, &twist.orbits);
    let ps: Vec<_> = (1..twist.a_l).map(|k| build_p(g, &twist, k)).collect();
    let c1 = find_c1(g, &twist, q, choice)?;
    let (g1, g2) = build_g1_g2(g, &ps, t);
    let p_primes: Vec<_> = (1..t).map(|i| iota2(g, &ps[i - 1], &g1, &g2)).collect();
    let c1_prime = g.mul(&c1, &g.conj(&c1, &ps[0]));
    let mut c_primes = vec![c1_prime.clone()];
    for i in 2..=t {
        let conj = g.product(&p_primes[..i - 1]);
        c_primes.push(g.conj(&c1_prime, &conj));
    }
    let c_group = GeneratedSubgroup::generate(g, c_primes.clone(), budget)?;
    let p_group = GeneratedSubgroup::generate(g, p_primes.clone(), budget)?;
    let mut v_gens = vec![c1_prime];
    v_gens.extend(p_primes.iter().cloned());
    let v_group = GeneratedSubgroup::generate(g, v_gens, budget)?;
    let mut h_gens = vec![g.torus(h0.clone())];
    h_gens.extend(p_primes.iter().map(|p| g.mul(p, p)));
    let h_prime = GeneratedSubgroup::generate(g, h_gens, budget)?;
    Ok(Supplement {
        params,
        q,
        c1_choice: choice,
        group: g.clone(),
        twist,
        h0,
        hs,
        ps,
        c1,
        g1,
        g2,
        p_primes,
        c_primes,
        c_group,
        p_group,
        v_group,
        h_prime,
    })
}

/// `ρ(g_1)` and `ρ(g_2)` as predicted: `Π_i Π_k (k a_l + i, k a_l + 2i - 1)` and
/// `Π_i Π_k (k a_l + i, k a_l + 2i)`, composed left to right in `i`.
pub fn predicted_g_images(n: usize, d0: usize, t_l: usize) -> (SignedPermutation, SignedPermutation) {
    let a = 2 * t_l;
    let build = |shift: usize| {
        let mut acc = SignedPermutation::identity(n);
        for i in 1..=t_l {
            let mut cycles = Vec::new();
            for k in 0..d0 {
                let (x, y) = (k * a + i, k * a + 2 * i - 1 + shift);
                if x != y {
                    cycles.push(vec![x as i32, y as i32]);
                }
            }
            let f = SignedPermutation::from_cycles(n, &cycles).expect("disjoint transpositions");
            acc = acc.compose(&f);
        }
        acc
    };
    (build(0), build(1))
}

/// Closure of `⟨m_{first}, …, m_{last}⟩`.
pub fn simple_lift_subgroup(g: &TitsGroup, first: usize, last: usize, budget: usize) -> Result<GeneratedSubgroup> {
    GeneratedSubgroup::generate(g, (first..=last).map(|i| g.simple_lift(i)).collect(), budget)
}

/// Checks that `f` is an injective homomorphism on the subgroup `s`, using
/// `f(g x) = f(g) f(x)` for every element `x` and generator `g`.
pub fn check_injective_homomorphism(
    g: &TitsGroup,
    s: &GeneratedSubgroup,
    f: &dyn Fn(&MonomialElement) -> MonomialElement,
) -> std::result::Result<(), String> {
    let images: Vec<MonomialElement> = s.elements().iter().map(f).collect();
    let gen_images: Vec<MonomialElement> = s.generators.iter().map(f).collect();
    for (x, fx) in s.elements().iter().zip(&images) {
        for (gen, fg) in s.generators.iter().zip(&gen_images) {
            let y = g.mul(gen, x);
            let k = s.position(&y).ok_or_else(|| format!("{y:?} escaped the subgroup"))?;
            if images[k] != g.mul(fg, fx) {
                return Err(format!("f(g x) != f(g) f(x) for g = {gen:?}, x = {x:?}"));
            }
        }
    }
    let distinct: HashSet<&MonomialElement> = images.iter().collect();
    if distinct.len() != images.len() {
        return Err(format!("not injective: {} elements map to {} images", images.len(), distinct.len()));
    }
    Ok(())
}

/// `w'_{l}` and the restrictions `w'_{l,i}` in rank `n`.
pub fn w_prime(n: usize, l: usize, a_l: usize) -> SignedPermutation {
    coxeter_cycle(l, n).pow(a_l as i64)
}

/// Every identity of the supplement construction, one check per statement.
pub fn verify_supplement(s: &Supplement, relative_weyl_cap: usize) -> CheckList {
    let g = &s.group;
    let tw = &s.twist;
    let p = s.params;
    let (t, d0, a) = (p.t_l, p.d0, tw.a_l);
    let n = g.n;
    let mut out = CheckList::new();
    let fixed = |x: &MonomialElement| g.frobenius(x, s.q, &tw.v_l) == *x;
    let tor = |x: &TorusTorsionElement| g.torus(x.clone());
    let h0 = tor(&s.h0);

    // twist and h_k
    out.push(Check::from_result(
        "twist.center",
        "v_l^{d0} commutes with m_1, ..., m_l",
        {
            let c = g.pow(&tw.v_l, d0 as i64);
            (1..=tw.l)
                .find(|&i| g.mul(&c, &g.simple_lift(i)) != g.mul(&g.simple_lift(i), &c))
                .map_or(Ok(()), |i| Err(format!("v_l^d0 does not commute with m_{i}")))
        },
    ));
    out.push(Check::from_result("twist.orbits", "a_l orbits of size d0 on {1..l}", {
        if tw.orbits.len() == a && tw.orbits.iter().all(|o| o.len() == d0) {
            Ok(())
        } else {
            Err(format!("orbits {:?}", tw.orbits))
        }
    }));
    out.push(Check::from_result("h.square", "h_k^2 = h_0^{|O_k|}", {
        (1..=a)
            .find(|&k| s.h(k).add(s.h(k)) != s.h0.scale(tw.orbit(k).len() as i64))
            .map_or(Ok(()), |k| Err(format!("h_{k}^2 = {:?}", s.h(k).add(s.h(k)))))
    }));
    out.push(Check::from_result("h.twist_action", "h_k^{v_l} = h_k (d odd), h_0 h_k (d even)", {
        (1..=a)
            .find_map(|k| {
                let got = g.conj(&tor(s.h(k)), &tw.v_l).torus;
                let want = if p.d % 2 == 1 { s.h(k).clone() } else { s.h0.add(s.h(k)) };
                (got != want).then(|| format!("k = {k}: got {got:?}, expected {want:?}"))
            })
            .map_or(Ok(()), Err)
    }));

    // p_k
    out.push(Check::from_result("p.fixed", "p_k fixed by v_l F_q", {
        (1..a).find(|&k| !fixed(s.p(k))).map_or(Ok(()), |k| Err(format!("p_{k} = {:?} not fixed", s.p(k))))
    }));
    out.push(Check::from_result("p.square", "p_k^2 = h_k h_{k+1} h_0^{|O_k|}", {
        (1..a)
            .find_map(|k| {
                let sq = g.mul(s.p(k), s.p(k));
                let want = s.h(k).add(s.h(k + 1)).add(&s.h0.scale(tw.orbit(k).len() as i64));
                (sq != tor(&want)).then(|| format!("p_{k}^2 = {sq:?}, expected torus {want:?}"))
            })
            .map_or(Ok(()), Err)
    }));
    out.push(Check::from_result("p.swaps_orbits", "rho(p_k) swaps O_k and O_{k+1}", {
        (1..a)
            .find_map(|k| {
                let w = &s.p(k).weyl;
                let img = |o: &[usize]| -> BTreeSet<usize> { o.iter().map(|&i| w.apply(i as i32).unsigned_abs() as usize).collect() };
                let ok = img(tw.orbit(k)) == tw.orbit(k + 1).iter().copied().collect()
                    && img(tw.orbit(k + 1)) == tw.orbit(k).iter().copied().collect();
                (!ok).then(|| format!("rho(p_{k}) = {w}"))
            })
            .map_or(Ok(()), Err)
    }));
    out.push(Check::from_result("p.braid", "p_k p_{k+1} p_k = p_{k+1} p_k p_{k+1}, [p_j, p_k] = 1 for |j-k| > 1", {
        braid_check(g, &s.ps)
    }));

    // c_1
    out.push(Check::from_result("c1.lift", "rho(c_1) = c1bar, c_1 in V_{O_1}, fixed by v_l F_q", {
        let o1: HashSet<usize> = tw.orbit(1).iter().copied().collect();
        let support_ok = (1..=n).all(|i| o1.contains(&i) || s.c1.weyl.apply(i as i32) == i as i32);
        let torus_ok = s.c1.torus.is_in_h();
        if s.c1.weyl != c1_bar(tw, s.c1_choice) {
            Err(format!("rho(c_1) = {}", s.c1.weyl))
        } else if !support_ok || !torus_ok {
            Err(format!("c_1 = {:?} is not in V_(O_1)", s.c1))
        } else if !fixed(&s.c1) {
            Err("c_1 not fixed".into())
        } else {
            Ok(())
        }
    }));
    out.push(Check::from_result("c1.power", "c_1^{2 d0} in <h_0>", {
        let x = g.pow(&s.c1, 2 * d0 as i64);
        if x.is_identity() || x == h0 {
            Ok(())
        } else {
            Err(format!("c_1^(2d0) = {x:?}"))
        }
    }));
    out.push(c1_local_identity(s));
    out.push(c1_branches(s));

    // iota_1
    out.push(Check::from_result("iota1.generators", "iota_1(m_k) = p_{k-1} for 2 <= k <= a_l", {
        (2..=a)
            .find(|&k| iota1(g, tw, &g.simple_lift(k)) != *s.p(k - 1))
            .map_or(Ok(()), |k| Err(format!("iota_1(m_{k}) != p_{}", k - 1)))
    }));
    out.push(Check::from_result("iota1.injective_hom", "iota_1 is an injective homomorphism on <m_2, ..., m_{a_l}>", {
        match simple_lift_subgroup(g, 2, a, DEFAULT_BUDGET) {
            Ok(dom) => check_injective_homomorphism(g, &dom, &|x| iota1(g, tw, x)),
            Err(e) => Err(e.to_string()),
        }
    }));

    // g_1, g_2, iota_2
    let (pg1, pg2) = predicted_g_images(n, d0, t);
    out.push(Check::from_result("g.images", "rho(g_1), rho(g_2) are the displayed transposition products", {
        if s.g1.weyl != pg1 {
            Err(format!("rho(g_1) = {}, expected {pg1}", s.g1.weyl))
        } else if s.g2.weyl != pg2 {
            Err(format!("rho(g_2) = {}, expected {pg2}", s.g2.weyl))
        } else {
            Ok(())
        }
    }));
    out.push(Check::from_result("g.fixed", "g_1, g_2 fixed by v_l F_q", {
        if fixed(&s.g1) && fixed(&s.g2) {
            Ok(())
        } else {
            Err("g_1 or g_2 not fixed".into())
        }
    }));
    out.push(Check::from_result("iota2.injective_hom", "iota_2 is an injective homomorphism on <p_1, ..., p_{t_l-1}>", {
        if t < 2 {
            Ok(())
        } else {
            match GeneratedSubgroup::generate(g, s.ps[..t - 1].to_vec(), DEFAULT_BUDGET) {
                Ok(dom) => check_injective_homomorphism(g, &dom, &|x| iota2(g, x, &s.g1, &s.g2)),
                Err(e) => Err(e.to_string()),
            }
        }
    }));
    out.push(Check::from_result("p_prime.square", "(p'_i)^2 = h_{2i-1} h_{2i} h_{2i+1} h_{2i+2}", {
        (1..t)
            .find_map(|i| {
                let sq = g.mul(&s.p_primes[i - 1], &s.p_primes[i - 1]);
                let want = s.h(2 * i - 1).add(s.h(2 * i)).add(s.h(2 * i + 1)).add(s.h(2 * i + 2));
                (sq != tor(&want)).then(|| format!("(p'_{i})^2 = {sq:?}, expected {want:?}"))
            })
            .map_or(Ok(()), Err)
    }));
    out.push(Check::from_result("p_prime.braid", "p'_i satisfy the type A braid relations", braid_check(g, &s.p_primes)));
    out.push(Check::from_result("p_prime.tau", "rho(p'_i) = tau_i", {
        match crate::sperm::w_l_prime_parts(tw.l, d0, t, n) {
            Ok(parts) => (1..t)
                .find(|&i| s.p_primes[i - 1].weyl != parts.taus[i - 1])
                .map_or(Ok(()), |i| Err(format!("rho(p'_{i}) = {}, tau_{i} = {}", s.p_primes[i - 1].weyl, parts.taus[i - 1]))),
            Err(e) => Err(e.to_string()),
        }
    }));

    // c'_i
    out.push(c_prime_images(s));
    out.push(Check::from_result("c_prime.conjugation", "(c'_i)^{p'_j} = c'_i, c'_{i+1}, c'_{i-1} for j not in {i-1, i}, j = i, j = i-1", {
        let mut r = Ok(());
        'outer: for i in 1..=t {
            for j in 1..t {
                let got = g.conj(&s.c_primes[i - 1], &s.p_primes[j - 1]);
                let want = if j == i {
                    &s.c_primes[i]
                } else if j + 1 == i {
                    &s.c_primes[i - 2]
                } else {
                    &s.c_primes[i - 1]
                };
                if got != *want {
                    r = Err(format!("(c'_{i})^(p'_{j}) = {got:?}, expected {want:?}"));
                    break 'outer;
                }
            }
        }
        r
    }));
    out.push(Check::from_result("c_prime.abelian", "C' is abelian", {
        if s.c_group.is_abelian(g) {
            Ok(())
        } else {
            Err("two c'_i do not commute".into())
        }
    }));
    out.push(Check::from_result("c_prime.power", "(c'_i)^{2 d0} = h_0", {
        (1..=t)
            .find_map(|i| {
                let x = g.pow(&s.c_primes[i - 1], 2 * d0 as i64);
                (x != h0).then(|| format!("(c'_{i})^(2d0) = {x:?}"))
            })
            .map_or(Ok(()), Err)
    }));
    out.push(Check::from_result("c_prime.central_product", "|C'| = 2 (2 d0)^{t_l}, <c'_i> cap <c'_j> = <h_0>", {
        let want = 2 * (2 * d0).pow(t as u32);
        if s.c_group.order() != want {
            Err(format!("|C'| = {}, expected {want}", s.c_group.order()))
        } else {
            let cyc: Vec<HashSet<MonomialElement>> =
                s.c_primes.iter().map(|c| (0..4 * d0).map(|k| g.pow(c, k as i64)).collect()).collect();
            let hset: HashSet<MonomialElement> = [g.identity(), h0.clone()].into_iter().collect();
            let mut r = Ok(());
            for i in 0..t {
                for j in i + 1..t {
                    let inter: HashSet<_> = cyc[i].intersection(&cyc[j]).cloned().collect();
                    if inter != hset {
                        r = Err(format!("<c'_{}> cap <c'_{}> has order {}", i + 1, j + 1, inter.len()));
                    }
                }
            }
            r
        }
    }));

    // V' = C' x| P', H'
    let want_p = 2usize.pow(t as u32 - 1) * factorial(t);
    let want_v = 2 * (2 * d0).pow(t as u32) * want_p;
    out.push(Check::from_result("v_prime.semidirect", "V' = C' x| P', C' cap P' = 1, |V'| = 2 (2 d0)^{t_l} 2^{t_l-1} t_l!", {
        let normal = s.v_group.generators.iter().all(|x| s.c_primes.iter().all(|c| s.c_group.contains(&g.conj(c, x))));
        let inter = s.c_group.intersection(&s.p_group);
        if !normal {
            Err("C' is not normalised by V'".into())
        } else if inter.len() != 1 {
            Err(format!("|C' cap P'| = {}", inter.len()))
        } else if s.p_group.order() != want_p {
            Err(format!("|P'| = {}, expected {want_p}", s.p_group.order()))
        } else if s.v_group.order() != want_v || s.v_group.order() != s.c_group.order() * s.p_group.order() {
            Err(format!("|V'| = {}, expected {want_v}", s.v_group.order()))
        } else {
            Ok(())
        }
    }));
    out.push(Check::from_result("h_prime.intersection", "H' = <h_0> x <(p'_k)^2> equals V' cap H", {
        let v_cap_h: BTreeSet<_> = s.v_group.elements().iter().filter(|x| x.is_torus()).cloned().collect();
        let hp: BTreeSet<_> = s.h_prime.elements().iter().cloned().collect();
        if v_cap_h != hp {
            Err(format!("|V' cap H| = {}, |H'| = {}", v_cap_h.len(), hp.len()))
        } else if hp.len() != 2usize.pow(t as u32) {
            Err(format!("|H'| = {}, expected 2^t_l", hp.len()))
        } else {
            Ok(())
        }
    }));
    out.push(Check::from_result("v_prime.fixed", "V' is fixed by v_l F_q", {
        s.v_group.generators.iter().find(|x| !fixed(x)).map_or(Ok(()), |x| Err(format!("{x:?} not fixed")))
    }));
    if n <= relative_weyl_cap {
        out.push(relative_weyl_check(s));
    }
    out
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn braid_check(g: &TitsGroup, xs: &[MonomialElement]) -> std::result::Result<(), String> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let (a, b) = (&xs[i], &xs[j]);
            if j == i + 1 {
                let lhs = g.product([a, b, a]);
                let rhs = g.product([b, a, b]);
                if lhs != rhs {
                    return Err(format!("braid relation fails for generators {} and {}", i + 1, j + 1));
                }
            } else if g.mul(a, b) != g.mul(b, a) {
                return Err(format!("generators {} and {} do not commute", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

fn c1_local_identity(s: &Supplement) -> Check {
    let id = "c1.local_group";
    let anchor = "<h_1, h_0, c_1> = (V_{O_1} cap V_l) C_{H_{O_1}}(v_l)";
    let g = &s.group;
    let tw = &s.twist;
    let o1 = tw.orbit(1).to_vec();
    let gens = vec![g.torus(s.h(1).clone()), g.torus(s.h0.clone()), s.c1.clone()];
    let lhs = match GeneratedSubgroup::generate(g, gens, DEFAULT_BUDGET) {
        Ok(x) => x,
        Err(e) => return Check::fail(id, anchor, e.to_string()),
    };
    let local = local_simple_roots(g.n, &o1);
    let weyl_o = crate::sperm::CosetGroup::generated(
        g.n,
        vec![SignedPermutation::identity(g.n)],
        local.iter().map(SignedPermutation::reflection).collect(),
    );
    let vw = &tw.v_l.weyl;
    let torus_gens: Vec<_> = local.iter().map(|b| TorusTorsionElement::h_alpha(b, 1, g.modulus)).collect();
    let torus_o = span(g, &torus_gens);
    let mut v_o_fixed = Vec::new();
    for w in weyl_o.elements.iter().filter(|w| w.compose(vw) == vw.compose(w)) {
        let u = local_lift(g, &o1, w);
        for h in &torus_o {
            let x = g.mul(&g.torus(h.clone()), &u);
            if g.frobenius(&x, s.q, &tw.v_l) == x {
                v_o_fixed.push(x);
            }
        }
    }
    let centralised: Vec<_> = torus_o.iter().filter(|h| h.act(vw) == **h).cloned().collect();
    let mut rhs: BTreeSet<MonomialElement> = BTreeSet::new();
    for x in &v_o_fixed {
        for h in &centralised {
            rhs.insert(g.mul(x, &g.torus(h.clone())));
        }
    }
    let lhs_set: BTreeSet<_> = lhs.elements().iter().cloned().collect();
    if lhs_set == rhs {
        Check::pass(id, anchor)
    } else {
        Check::fail(
            id,
            anchor,
            format!(
                "|<h_1, h_0, c_1>| = {}, |(V_O1 cap V_l) C_(H_O1)(v_l)| = {} (|V_O1 cap V_l| = {}, |C_(H_O1)(v_l)| = {})",
                lhs_set.len(),
                rhs.len(),
                v_o_fixed.len(),
                centralised.len()
            ),
        )
    }
}

fn c_prime_images(s: &Supplement) -> Check {
    let id = "c_prime.images";
    let anchor = "rho(c'_i) = w'_{l,i}";
    let d0 = s.params.d0;
    let parts = match crate::sperm::w_l_prime_parts(s.twist.l, d0, s.params.t_l, s.group.n) {
        Ok(p) => p,
        Err(e) => return Check::fail(id, anchor, e.to_string()),
    };
    for (i, c) in s.c_primes.iter().enumerate() {
        let w = &parts.w_parts[i];
        if c.weyl != *w {
            let k = (1..2 * d0).find(|&k| w.pow(k as i64) == c.weyl);
            return Check::fail(
                id,
                anchor,
                format!(
                    "rho(c'_{}) = {}, w'_(l,{}) = {w}, rho(c'_{}) = w'_(l,{})^{}",
                    i + 1,
                    c.weyl,
                    i + 1,
                    i + 1,
                    i + 1,
                    k.map_or("?".to_string(), |k| k.to_string())
                ),
            );
        }
    }
    Check::pass(id, anchor)
}

/// Compares the displayed `c̄_1` with `ρ(v'_l)|_{O_1}`: both generate the same cyclic group.
fn c1_branches(s: &Supplement) -> Check {
    let id = "c1.branches";
    let anchor = "<c1bar (displayed)> = <w'_l restricted to O_1>";
    let tw = &s.twist;
    let shown = c1_bar_displayed(tw);
    let norm = c1_bar(tw, C1Choice::Normalised);
    let order = 2 * s.params.d0;
    match (1..order).find(|&k| norm.pow(k as i64) == shown) {
        Some(k) if crate::cyclo::gcd(k as u64, order as u64) == 1 => {
            let c = Check::pass(id, anchor);
            if k == 1 {
                c
            } else {
                c.with_note(format!("displayed c1bar = (w'_l|O_1)^{k}"))
            }
        }
        Some(k) => Check::fail(id, anchor, format!("displayed c1bar = (w'_l|O_1)^{k}, not a generator")),
        None => Check::fail(id, anchor, format!("displayed c1bar = {shown} not in <{norm}>")),
    }
}

fn relative_weyl_check(s: &Supplement) -> Check {
    let id = "v_prime.relative_weyl";
    let anchor = "rho(V') W_L / W_L = C_{W_G(L)}(w_l W_L) of order (2 d0)^{t_l} t_l!";
    let p = s.params;
    let n = p.n();
    let phi_l = match crate::roots::levi_root_subset(n, p.m, p.d0, p.t_l) {
        Ok(x) => x,
        Err(e) => return Check::fail(id, anchor, e.to_string()),
    };
    let cent = match crate::sperm::relative_weyl_centralizer(n, &phi_l, &s.twist.v_l.weyl) {
        Ok(x) => x,
        Err(e) => return Check::fail(id, anchor, e.to_string()),
    };
    let want = (2 * p.d0).pow(p.t_l as u32) * factorial(p.t_l);
    if cent.order() != want {
        return Check::fail(id, anchor, format!("centraliser order {} != {want}", cent.order()));
    }
    let image = crate::sperm::CosetGroup::generated(
        n,
        cent.levi_weyl_group().to_vec(),
        s.v_group.generators.iter().map(|x| x.weyl.clone()).collect(),
    );
    if image.elements != cent.elements {
        return Check::fail(id, anchor, format!("image of V' has {} cosets, centraliser {}", image.order(), cent.order()));
    }
    match crate::sperm::w_l_prime_parts(s.twist.l, p.d0, p.t_l, n) {
        Ok(parts) => match crate::sperm::check_wreath_relations(&cent, &parts, p.d0) {
            Ok(()) => Check::pass(id, anchor),
            Err(e) => Check::fail(id, anchor, e),
        },
        Err(e) => Check::fail(id, anchor, e.to_string()),
    }
}

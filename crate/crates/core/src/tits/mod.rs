//! The extended Weyl group of type B_n with torus torsion.
//!
//! Elements are normal forms `t·ẇ` where `t ∈ Y ⊗ μ_{2^k}` is stored in the
//! coroot basis `α_1^∨ = 2e_1`, `α_j^∨ = e_j - e_{j-1}` and `ẇ` is the product
//! of the lifts `m_i = n_{α_i}(1)` along a reduced word of `w`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::Root;
use crate::sperm::SignedPermutation;

/// Default torsion modulus `2^2`.
pub const DEFAULT_MODULUS: u8 = 4;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusTorsionElement {
    coords: Vec<u8>,
    modulus: u8,
}

impl TorusTorsionElement {
    pub fn zero(n: usize, modulus: u8) -> Self {
        assert!(modulus >= 2 && modulus.is_power_of_two(), "modulus must be a power of two");
        Self { coords: vec![0; n], modulus }
    }

    pub fn from_coords(coords: Vec<i64>, modulus: u8) -> Self {
        let m = modulus as i64;
        Self { coords: coords.into_iter().map(|c| c.rem_euclid(m) as u8).collect(), modulus }
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| (a + b) % self.modulus).collect(),
            modulus: self.modulus,
        }
    }

    pub fn neg(&self) -> Self {
        Self { coords: self.coords.iter().map(|a| (self.modulus - a) % self.modulus).collect(), modulus: self.modulus }
    }

    pub fn scale(&self, k: i64) -> Self {
        let m = self.modulus as i64;
        Self {
            coords: self.coords.iter().map(|&a| (a as i64 * k).rem_euclid(m) as u8).collect(),
            modulus: self.modulus,
        }
    }

    /// Membership in `H = Y ⊗ μ_2`.
    pub fn is_in_h(&self) -> bool {
        let half = self.modulus / 2;
        self.coords.iter().all(|c| c % half == 0)
    }

    /// A representative in `Y ⊂ ℤ^n` (the `e`-basis).
    pub fn to_e_coords(&self) -> Vec<i64> {
        e_coords_of(&self.coords.iter().map(|&c| c as i64).collect::<Vec<_>>())
    }

    /// Reduction of a coroot-lattice vector given in the `e`-basis.
    pub fn from_e_coords(y: &[i64], modulus: u8) -> Self {
        Self::from_coords(coroot_coords_of(y), modulus)
    }

    /// `h_{e_i}(ϖ^exponent)`, i.e. the coweight `2e_i` tensored with `ϖ^exponent`.
    pub fn h_e(n: usize, i: usize, exponent: i64, modulus: u8) -> Self {
        let mut y = vec![0i64; n];
        y[i - 1] = 2;
        Self::from_e_coords(&y, modulus).scale(exponent * modulus as i64 / 4)
    }

    /// `h_α(ϖ^exponent)` for a root `α`.
    pub fn h_alpha(alpha: &Root, exponent: i64, modulus: u8) -> Self {
        let y = crate::roots::coroot(alpha);
        Self::from_e_coords(&y, modulus).scale(exponent * modulus as i64 / 4)
    }

    pub fn act(&self, w: &SignedPermutation) -> Self {
        Self::from_e_coords(&w.act_on_vector(&self.to_e_coords()), self.modulus)
    }

    /// Exponent `e` with `α(t) = ϖ^e` where `ϖ` has order `modulus`.
    pub fn root_character(&self, alpha: &Root) -> u8 {
        (alpha.pair_with(&self.to_e_coords()).rem_euclid(self.modulus as i64)) as u8
    }
}

impl fmt::Debug for TorusTorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

pub fn root_character_eval(alpha: &Root, t: &TorusTorsionElement) -> u8 {
    t.root_character(alpha)
}

fn e_coords_of(c: &[i64]) -> Vec<i64> {
    let n = c.len();
    let mut y = vec![0i64; n];
    if n == 0 {
        return y;
    }
    y[0] = 2 * c[0];
    for j in 2..=n {
        y[j - 1] += c[j - 1];
        y[j - 2] -= c[j - 1];
    }
    y
}

fn coroot_coords_of(y: &[i64]) -> Vec<i64> {
    let n = y.len();
    let mut c = vec![0i64; n];
    let mut tail = 0;
    for j in (1..=n).rev() {
        tail += y[j - 1];
        if j >= 2 {
            c[j - 1] = tail;
        }
    }
    assert!(tail % 2 == 0, "vector is not in the coroot lattice");
    if n > 0 {
        c[0] = tail / 2;
    }
    c
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialElement {
    pub torus: TorusTorsionElement,
    pub weyl: SignedPermutation,
}

impl MonomialElement {
    pub fn rank(&self) -> usize {
        self.weyl.rank()
    }

    pub fn is_torus(&self) -> bool {
        self.weyl.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.weyl.is_identity() && self.torus.is_zero()
    }
}

impl fmt::Debug for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} | {}]", self.torus, self.weyl)
    }
}

impl fmt::Display for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Flips the descent branch of the cocycle rule for one generator. Only used
/// to check that the verification suites detect a wrong multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleMutation {
    pub generator: usize,
}

/// Multiplication context for the extended Weyl group of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsGroup {
    pub n: usize,
    pub modulus: u8,
    pub mutation: Option<CocycleMutation>,
}

impl TitsGroup {
    pub fn new(n: usize) -> Self {
        Self { n, modulus: DEFAULT_MODULUS, mutation: None }
    }

    pub fn with_modulus(n: usize, modulus: u8) -> Self {
        TorusTorsionElement::zero(n, modulus);
        Self { n, modulus, mutation: None }
    }

    pub fn with_mutation(mut self, mutation: Option<CocycleMutation>) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn identity(&self) -> MonomialElement {
        MonomialElement { torus: self.zero_torus(), weyl: SignedPermutation::identity(self.n) }
    }

    pub fn zero_torus(&self) -> TorusTorsionElement {
        TorusTorsionElement::zero(self.n, self.modulus)
    }

    pub fn torus(&self, t: TorusTorsionElement) -> MonomialElement {
        MonomialElement { torus: t, weyl: SignedPermutation::identity(self.n) }
    }

    /// `m_i = n_{α_i}(1)`.
    pub fn simple_lift(&self, i: usize) -> MonomialElement {
        MonomialElement { torus: self.zero_torus(), weyl: SignedPermutation::simple_reflection(self.n, i) }
    }

    /// The canonical lift `ẇ`.
    pub fn canonical_lift(&self, w: &SignedPermutation) -> MonomialElement {
        self.word(&w.reduced_word())
    }

    /// `m_{i_1} ⋯ m_{i_k}`.
    pub fn word(&self, word: &[usize]) -> MonomialElement {
        let mut st = FoldState::new(&self.identity());
        for &i in word.iter().rev() {
            self.prepend(&mut st, i);
        }
        st.finish(self.modulus)
    }

    /// `h_α(-1) = α^∨ ⊗ ϖ²`.
    pub fn h_alpha_minus_one(&self, alpha: &Root) -> TorusTorsionElement {
        TorusTorsionElement::h_alpha(alpha, 2, self.modulus)
    }

    fn prepend(&self, st: &mut FoldState, i: usize) {
        let n = self.n;
        let m = self.modulus as i64;
        let descent = if i == 1 {
            st.inv[0] < 0
        } else {
            let (a, b) = (st.inv[i - 1], -st.inv[i - 2]);
            if a.unsigned_abs() > b.unsigned_abs() {
                a < 0
            } else {
                b < 0
            }
        };
        // s_i acts on the coroot coordinates by changing coordinate i only
        let t = &mut st.torus;
        let mut s = -t[i - 1];
        if i == 1 {
            if n >= 2 {
                s += t[1];
            }
        } else {
            s += if i == 2 { 2 * t[0] } else { t[i - 2] };
            if i < n {
                s += t[i];
            }
        }
        t[i - 1] = s.rem_euclid(m);
        let flip = self.mutation.is_some_and(|mu| mu.generator == i);
        if descent != flip {
            t[i - 1] = (t[i - 1] + m / 2).rem_euclid(m);
        }
        if i == 1 {
            st.inv[0] = -st.inv[0];
        } else {
            st.inv.swap(i - 2, i - 1);
        }
    }

    pub fn mul(&self, x: &MonomialElement, y: &MonomialElement) -> MonomialElement {
        self.mul_word(&x.weyl.reduced_word(), &x.torus, y)
    }

    /// `(torus · m_{word}) · y`.
    pub fn mul_word(&self, word: &[usize], torus: &TorusTorsionElement, y: &MonomialElement) -> MonomialElement {
        let mut st = FoldState::new(y);
        for &i in word.iter().rev() {
            self.prepend(&mut st, i);
        }
        let mut out = st.finish(self.modulus);
        out.torus = out.torus.add(torus);
        out
    }

    pub fn inverse(&self, x: &MonomialElement) -> MonomialElement {
        let a = MonomialElement { torus: self.zero_torus(), weyl: x.weyl.inverse() };
        let z = self.mul(x, &a);
        debug_assert!(z.weyl.is_identity());
        self.mul(&a, &self.torus(z.torus.neg()))
    }

    pub fn pow(&self, x: &MonomialElement, e: i64) -> MonomialElement {
        let base = if e < 0 { self.inverse(x) } else { x.clone() };
        let word = base.weyl.reduced_word();
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul_word(&word, &base.torus, &acc);
        }
        acc
    }

    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a MonomialElement>) -> MonomialElement {
        xs.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// `x^g = g⁻¹ x g`.
    pub fn conj(&self, x: &MonomialElement, g: &MonomialElement) -> MonomialElement {
        self.mul(&self.mul(&self.inverse(g), x), g)
    }

    /// `g x g⁻¹`.
    pub fn conj_left(&self, g: &MonomialElement, x: &MonomialElement) -> MonomialElement {
        self.mul(&self.mul(g, x), &self.inverse(g))
    }

    pub fn commutator(&self, x: &MonomialElement, y: &MonomialElement) -> MonomialElement {
        // [x, y] = x⁻¹ y⁻¹ x y
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&self.inverse(&yx), &xy)
    }

    pub fn order(&self, x: &MonomialElement) -> usize {
        let word = x.weyl.reduced_word();
        let mut acc = x.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.mul_word(&word, &x.torus, &acc);
            k += 1;
        }
        k
    }

    /// `F_q`: multiplies torus coordinates by `q` and fixes every `m_i`.
    pub fn frobenius_untwisted(&self, x: &MonomialElement, q: u64) -> MonomialElement {
        MonomialElement { torus: x.torus.scale(q as i64), weyl: x.weyl.clone() }
    }

    /// `v F_q(x) v⁻¹`.
    pub fn frobenius(&self, x: &MonomialElement, q: u64, v: &MonomialElement) -> MonomialElement {
        assert!(q % 2 == 1, "q must be odd");
        self.conj_left(v, &self.frobenius_untwisted(x, q))
    }

    /// `v⁻¹ F_q(x) v`, the opposite convention.
    pub fn frobenius_opposite(&self, x: &MonomialElement, q: u64, v: &MonomialElement) -> MonomialElement {
        assert!(q % 2 == 1, "q must be odd");
        self.conj(&self.frobenius_untwisted(x, q), v)
    }
}

struct FoldState {
    torus: Vec<i64>,
    inv: Vec<i32>,
}

impl FoldState {
    fn new(y: &MonomialElement) -> Self {
        Self { torus: y.torus.coords().iter().map(|&c| c as i64).collect(), inv: y.weyl.inverse().images().to_vec() }
    }

    fn finish(self, modulus: u8) -> MonomialElement {
        let inv = SignedPermutation::from_images(self.inv).expect("fold keeps a signed permutation");
        MonomialElement { torus: TorusTorsionElement::from_coords(self.torus, modulus), weyl: inv.inverse() }
    }
}

/// Default cap on subgroup enumeration.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A finite subgroup given by generators, with its elements enumerated.
#[derive(Clone, Debug)]
pub struct GeneratedSubgroup {
    pub generators: Vec<MonomialElement>,
    elements: Vec<MonomialElement>,
    index: HashMap<MonomialElement, usize>,
}

impl GeneratedSubgroup {
    pub fn generate(g: &TitsGroup, generators: Vec<MonomialElement>, budget: usize) -> Result<Self> {
        let prepared: Vec<(Vec<usize>, TorusTorsionElement)> =
            generators.iter().map(|x| (x.weyl.reduced_word(), x.torus.clone())).collect();
        let id = g.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (word, torus) in &prepared {
                let y = g.mul_word(word, torus, &elements[k]);
                if !index.contains_key(&y) {
                    if elements.len() >= budget {
                        return Err(Error::BudgetExceeded { what: "subgroup closure".into(), limit: budget });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(Self { generators, elements, index })
    }

    pub fn from_elements(generators: Vec<MonomialElement>, elements: Vec<MonomialElement>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Self { generators, elements, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MonomialElement] {
        &self.elements
    }

    pub fn contains(&self, x: &MonomialElement) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &MonomialElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn is_abelian(&self, g: &TitsGroup) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..].iter().all(|b| g.mul(a, b) == g.mul(b, a))
        })
    }

    pub fn intersection(&self, other: &GeneratedSubgroup) -> Vec<MonomialElement> {
        self.elements.iter().filter(|x| other.contains(x)).cloned().collect()
    }
}

/// The elements of `S` fixed by `x ↦ v F_q(x) v⁻¹`.
pub fn fixed_subgroup(g: &TitsGroup, s: &GeneratedSubgroup, q: u64, v: &MonomialElement) -> GeneratedSubgroup {
    let fixed: Vec<_> = s.elements().iter().filter(|x| &g.frobenius(x, q, v) == *x).cloned().collect();
    GeneratedSubgroup::from_elements(Vec::new(), fixed)
}

/// The torus subgroup `H = Y ⊗ μ_2` of rank `n`, as a set of `2^n` elements.
pub fn torus_two_torsion(g: &TitsGroup) -> GeneratedSubgroup {
    let gens: Vec<_> = (1..=g.n)
        .map(|i| {
            let mut c = vec![0i64; g.n];
            c[i - 1] = g.modulus as i64 / 2;
            g.torus(TorusTorsionElement::from_coords(c, g.modulus))
        })
        .collect();
    let mut elements = vec![g.identity()];
    for gen in &gens {
        let more: Vec<_> = elements.iter().map(|x| g.torus(x.torus.add(&gen.torus))).collect();
        elements.extend(more);
    }
    GeneratedSubgroup::from_elements(gens, elements)
}

/// Rank over `𝔽_2` of a set of torus elements of `H`.
pub fn f2_rank(elements: &[TorusTorsionElement]) -> usize {
    let mut rows: Vec<u128> = elements
        .iter()
        .map(|t| {
            let half = t.modulus() / 2;
            t.coords().iter().enumerate().fold(0u128, |acc, (i, &c)| acc | (((c / half) as u128 & 1) << i))
        })
        .collect();
    let mut rank = 0;
    for bit in 0..128 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// True iff every element has order dividing 2 and the set is closed and commutative.
pub fn is_elementary_abelian(g: &TitsGroup, s: &GeneratedSubgroup) -> bool {
    let set: HashSet<_> = s.elements().iter().collect();
    s.elements().iter().all(|x| g.mul(x, x).is_identity())
        && s.elements().iter().all(|x| s.elements().iter().all(|y| set.contains(&g.mul(x, y))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_conversion_round_trip() {
        let t = TorusTorsionElement::from_coords(vec![1, 3, 2, 1], 4);
        assert_eq!(TorusTorsionElement::from_e_coords(&t.to_e_coords(), 4), t);
    }

    #[test]
    fn h_e_coordinates() {
        assert_eq!(TorusTorsionElement::h_e(3, 1, 1, 4).coords(), &[1, 0, 0]);
        assert_eq!(TorusTorsionElement::h_e(3, 3, 1, 4).coords(), &[1, 2, 2]);
    }

    #[test]
    fn fast_reflection_matches_e_basis_action() {
        let g = TitsGroup::new(4);
        let t = TorusTorsionElement::from_coords(vec![1, 2, 3, 1], 4);
        for i in 1..=4 {
            let x = g.mul(&g.simple_lift(i), &g.torus(t.clone()));
            let s = SignedPermutation::simple_reflection(4, i);
            assert_eq!(x.torus, t.act(&s));
        }
    }
}
pub mod supplement;
pub mod verify;

//! Signed permutations: the Weyl group of type B_n.
//!
//! A signed permutation is stored one-line on the positive letters,
//! `images[i - 1] = σ(i)`, with `σ(-i) = -σ(i)`. Composition applies the
//! right factor first: `a.compose(&b)` is `a ∘ b`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{Root, RootSubset};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n as i32).collect() }
    }

    pub fn from_images(images: Vec<i32>) -> Result<Self> {
        let n = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x.abs() > n || seen[(x.abs() - 1) as usize] {
                return Err(Error::NotSignedPermutation(images));
            }
            seen[(x.abs() - 1) as usize] = true;
        }
        Ok(Self { images })
    }

    /// Builds a signed permutation from signed cycles such as `[1, 2, -1, -2]`.
    /// Each cycle `(a b c ...)` sends `a ↦ b ↦ c ↦ ... ↦ a`; the images of the
    /// negated letters are implied. Letters not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<i32>]) -> Result<Self> {
        let mut images: Vec<Option<i32>> = vec![None; n];
        let mut set = |from: i32, to: i32| -> Result<()> {
            if from == 0 || to == 0 || from.unsigned_abs() as usize > n || to.unsigned_abs() as usize > n {
                return Err(Error::InvalidParameters(format!("letter out of range in cycle ({from} -> {to})")));
            }
            let (idx, val) = if from > 0 { (from as usize - 1, to) } else { ((-from) as usize - 1, -to) };
            match images[idx] {
                Some(old) if old != val => Err(Error::InvalidParameters(format!(
                    "inconsistent cycles at letter {}",
                    idx + 1
                ))),
                _ => {
                    images[idx] = Some(val);
                    Ok(())
                }
            }
        };
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                set(a, b)?;
            }
        }
        let images: Vec<i32> = images.iter().enumerate().map(|(i, v)| v.unwrap_or(i as i32 + 1)).collect();
        Self::from_images(images)
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Image of a signed letter.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.images[(i.unsigned_abs() - 1) as usize];
        if i > 0 {
            v
        } else {
            -v
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.rank()];
        for (i, &x) in self.images.iter().enumerate() {
            let j = x.unsigned_abs() as usize - 1;
            inv[j] = if x > 0 { i as i32 + 1 } else { -(i as i32 + 1) };
        }
        Self { images: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.rank());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }

    /// The simple reflection `s_i`: `s_1` negates the first letter and `s_i`
    /// (i ≥ 2) swaps letters `i - 1` and `i`.
    pub fn simple_reflection(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n, "simple reflection index out of range");
        let mut images: Vec<i32> = (1..=n as i32).collect();
        if i == 1 {
            images[0] = -1;
        } else {
            images.swap(i - 2, i - 1);
        }
        Self { images }
    }

    /// The reflection in the hyperplane orthogonal to `alpha`.
    pub fn reflection(alpha: &Root) -> Self {
        let n = alpha.rank();
        let norm = alpha.norm2();
        let images = (1..=n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i - 1] = 1;
                let p: i64 = alpha.coords().iter().zip(&v).map(|(&a, &b)| a as i64 * b).sum();
                for (vk, &ak) in v.iter_mut().zip(alpha.coords()) {
                    *vk -= 2 * p * ak as i64 / norm;
                }
                let j = v.iter().position(|&x| x != 0).expect("reflection of a unit vector");
                if v[j] > 0 {
                    j as i32 + 1
                } else {
                    -(j as i32 + 1)
                }
            })
            .collect();
        Self { images }
    }

    /// Action on a vector in the `e`-basis.
    pub fn act_on_vector(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let img = self.images[i];
            let j = img.unsigned_abs() as usize - 1;
            out[j] += if img > 0 { x } else { -x };
        }
        out
    }

    pub fn act_on_root(&self, alpha: &Root) -> Root {
        let mut out = vec![0i8; alpha.rank()];
        for (i, &x) in alpha.coords().iter().enumerate() {
            let img = self.images[i];
            let j = img.unsigned_abs() as usize - 1;
            out[j] += if img > 0 { x } else { -x };
        }
        Root::new(out)
    }

    pub fn sign_changes(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    /// Membership in the index-two subgroup `W(D_n)`.
    pub fn is_in_wd(&self) -> bool {
        self.sign_changes() % 2 == 0
    }

    /// Coxeter length: the number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut len = 0;
        for i in 1..=n {
            if self.images[i - 1] < 0 {
                len += 1;
            }
        }
        for j in 1..=n {
            for i in 1..j {
                // e_j - e_i and e_j + e_i, i < j
                let (a, b) = (self.images[j - 1], self.images[i - 1]);
                for s in [-1, 1] {
                    if !signed_pair_positive(a, s * b) {
                        len += 1;
                    }
                }
            }
        }
        len
    }

    /// True iff `s_i` is a left descent, i.e. `σ⁻¹(α_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// True iff `s_i` is a right descent, i.e. `σ(α_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        if i == 1 {
            self.images[0] < 0
        } else {
            !signed_pair_positive(self.images[i - 1], -self.images[i - 2])
        }
    }

    /// A reduced word `[i_1, …, i_k]` with `σ = s_{i_1} ⋯ s_{i_k}`, obtained by
    /// repeatedly stripping the least left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut inv = self.inverse();
        let mut word = Vec::new();
        'outer: loop {
            for i in 1..=n {
                if inv.has_right_descent(i) {
                    word.push(i);
                    // σ ← s_i σ, so σ⁻¹ ← σ⁻¹ s_i
                    inv = inv.compose(&Self::simple_reflection(n, i));
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// Orbits of the underlying unsigned permutation on `{1, …, l}`, ordered by
    /// least element.
    pub fn orbits_on_support(&self, l: usize) -> Result<Vec<Vec<usize>>> {
        if l > self.rank() || self.images[..l].iter().any(|&x| x.unsigned_abs() as usize > l) {
            return Err(Error::InvalidParameters(format!("permutation does not stabilise {{±1..±{l}}}")));
        }
        let mut seen = vec![false; l + 1];
        let mut orbits = Vec::new();
        for start in 1..=l {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.images[x - 1].unsigned_abs() as usize;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Extends a permutation of rank `k` to rank `n ≥ k` by fixing the new letters.
    pub fn extend_to(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.rank() as i32 + 1..=n as i32);
        Self { images }
    }

    /// Restriction to a stable set of letters; letters outside are fixed.
    pub fn restrict(&self, letters: &[usize]) -> Self {
        let mut images: Vec<i32> = (1..=self.rank() as i32).collect();
        for &i in letters {
            images[i - 1] = self.images[i - 1];
        }
        Self { images }
    }

    /// Signed cycle decomposition, each cycle starting at its least positive letter.
    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start as i32;
            loop {
                cyc.push(x);
                seen[x.unsigned_abs() as usize] = true;
                x = self.apply(x);
                if x == start as i32 {
                    break;
                }
                if x == -(start as i32) {
                    // negative cycle: continue through the negated letters
                    let half = cyc.clone();
                    cyc.extend(half.iter().map(|y| -y));
                    break;
                }
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

/// Positivity of `e_a + e_b`-type vectors given as signed letters `a`, `b`
/// (with `|a| ≠ |b|`): the coefficient at the larger index decides.
fn signed_pair_positive(a: i32, b: i32) -> bool {
    if a.unsigned_abs() > b.unsigned_abs() {
        a > 0
    } else {
        b > 0
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// The Sylow twist `w_0^{2n'/d}` where `w_0 = (1, 2, …, n', -1, …, -n')`,
/// embedded in rank `n ≥ n'`.
pub fn sylow_twist(nprime: usize, d: usize, n: usize) -> Result<SignedPermutation> {
    if nprime == 0 || d == 0 || (2 * nprime) % d != 0 || n < nprime {
        return Err(Error::InvalidParameters(format!("d = {d} does not divide 2n' = {}", 2 * nprime)));
    }
    Ok(coxeter_cycle(nprime, n).pow((2 * nprime / d) as i64))
}

/// `w_{l,0} = (1, 2, …, l, -1, …, -l)` in rank `n`.
pub fn coxeter_cycle(l: usize, n: usize) -> SignedPermutation {
    let mut images: Vec<i32> = (1..=n as i32).collect();
    for i in 1..l {
        images[i - 1] = i as i32 + 1;
    }
    if l >= 1 {
        images[l - 1] = -1;
    }
    SignedPermutation { images }
}

/// The pieces `w'_l`, `w'_{l,i}` and `τ_i` of the relative Weyl group, in rank `n`.
#[derive(Clone, Debug)]
pub struct WPrimeParts {
    pub w_prime: SignedPermutation,
    pub w_parts: Vec<SignedPermutation>,
    pub taus: Vec<SignedPermutation>,
}

pub fn w_l_prime_parts(l: usize, d0: usize, t_l: usize, n: usize) -> Result<WPrimeParts> {
    if d0 == 0 || t_l == 0 || l != 2 * d0 * t_l || n < l {
        return Err(Error::InvalidParameters(format!("need l = 2 d0 t_l, got l={l}, d0={d0}, t_l={t_l}")));
    }
    let a_l = 2 * t_l;
    let w_prime = coxeter_cycle(l, n).pow(a_l as i64);
    let w_parts: Vec<_> = (1..=t_l)
        .map(|i| {
            let mut letters: Vec<usize> = Vec::new();
            for k in 0..d0 {
                letters.push(k * a_l + 2 * i - 1);
                letters.push(k * a_l + 2 * i);
            }
            w_prime.restrict(&letters)
        })
        .collect();
    let taus = (1..t_l)
        .map(|i| {
            let base = SignedPermutation::from_cycles(
                n,
                &[vec![2 * i as i32 - 1, 2 * i as i32 + 1], vec![2 * i as i32, 2 * i as i32 + 2]],
            )
            .expect("valid transpositions");
            let mut acc = SignedPermutation::identity(n);
            for k in 0..d0 {
                let g = w_prime.pow(k as i64);
                // x^g = g⁻¹ x g; the factors commute, so the order is irrelevant
                acc = acc.compose(&g.inverse().compose(&base).compose(&g));
            }
            acc
        })
        .collect();
    Ok(WPrimeParts { w_prime, w_parts, taus })
}

/// A subgroup of `N_W(W_L)/W_L`, stored as canonical coset representatives.
#[derive(Clone, Debug)]
pub struct CosetGroup {
    pub rank: usize,
    pub generators: Vec<SignedPermutation>,
    pub elements: Vec<SignedPermutation>,
    wl: Vec<SignedPermutation>,
}

impl CosetGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn levi_weyl_group(&self) -> &[SignedPermutation] {
        &self.wl
    }

    pub fn canonical(&self, x: &SignedPermutation) -> SignedPermutation {
        canonical_rep(x, &self.wl)
    }

    pub fn contains(&self, x: &SignedPermutation) -> bool {
        self.elements.binary_search(&self.canonical(x)).is_ok()
    }

    /// Closure of the given generators modulo `W_L`.
    pub fn generated(rank: usize, wl: Vec<SignedPermutation>, generators: Vec<SignedPermutation>) -> Self {
        let id = SignedPermutation::identity(rank);
        let mut seen: BTreeSet<SignedPermutation> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let start = canonical_rep(&id, &wl);
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = canonical_rep(&x.compose(g), &wl);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Self { rank, generators, elements: seen.into_iter().collect(), wl }
    }
}

fn canonical_rep(x: &SignedPermutation, wl: &[SignedPermutation]) -> SignedPermutation {
    wl.iter().map(|u| x.compose(u)).min().expect("W_L contains the identity")
}

/// The finite group generated by the reflections in `roots`.
pub fn reflection_group(rank: usize, roots: &RootSubset) -> Vec<SignedPermutation> {
    let gens: Vec<_> = roots.iter().filter(|r| r.is_positive()).map(SignedPermutation::reflection).collect();
    let id = SignedPermutation::identity(rank);
    let mut seen: HashSet<SignedPermutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Maximum rank for the brute-force centraliser computation.
pub const RELATIVE_WEYL_MAX_RANK: usize = 8;

/// `C_{W_G(L)}(w W_L)` computed by enumerating all signed permutations that
/// stabilise `Φ_L` and centralise `w` modulo `W_L`.
pub fn relative_weyl_centralizer(n: usize, phi_l: &RootSubset, w: &SignedPermutation) -> Result<CosetGroup> {
    if n > RELATIVE_WEYL_MAX_RANK {
        return Err(Error::BudgetExceeded { what: "relative Weyl enumeration rank".into(), limit: RELATIVE_WEYL_MAX_RANK });
    }
    let wl = reflection_group(n, phi_l);
    let wl_set: HashSet<_> = wl.iter().cloned().collect();
    let roots: Vec<Root> = phi_l.iter().cloned().collect();
    let root_set: HashSet<Root> = roots.iter().cloned().collect();
    let w_inv = w.inverse();
    let mut found: BTreeSet<SignedPermutation> = BTreeSet::new();
    let mut images = vec![0i32; n];
    let mut used = vec![false; n + 1];
    // depth-first over partial images, pruning on roots whose support is assigned
    fn dfs(
        depth: usize,
        n: usize,
        images: &mut Vec<i32>,
        used: &mut Vec<bool>,
        roots: &[Root],
        root_set: &HashSet<Root>,
        visit: &mut dyn FnMut(&SignedPermutation),
    ) {
        if depth == n {
            let s = SignedPermutation { images: images.clone() };
            visit(&s);
            return;
        }
        for j in 1..=n {
            if used[j] {
                continue;
            }
            for sign in [1, -1] {
                images[depth] = sign * j as i32;
                used[j] = true;
                let ok = roots.iter().all(|r| {
                    let top = r.support().into_iter().max().unwrap_or(0);
                    if top != depth + 1 {
                        return true;
                    }
                    let mut out = vec![0i8; n];
                    for (i, &x) in r.coords().iter().enumerate() {
                        if x != 0 {
                            let img = images[i];
                            let k = img.unsigned_abs() as usize - 1;
                            out[k] += if img > 0 { x } else { -x };
                        }
                    }
                    root_set.contains(&Root::new(out))
                });
                if ok {
                    dfs(depth + 1, n, images, used, roots, root_set, visit);
                }
                used[j] = false;
            }
        }
    }
    let mut visit = |s: &SignedPermutation| {
        let comm = s.compose(w).compose(&s.inverse()).compose(&w_inv);
        if wl_set.contains(&comm) {
            found.insert(canonical_rep(s, &wl));
        }
    };
    dfs(0, n, &mut images, &mut used, &roots, &root_set, &mut visit);
    Ok(CosetGroup { rank: n, generators: Vec::new(), elements: found.into_iter().collect(), wl })
}

/// Relation check for the wreath product `C_{2d_0} ≀ S_t` on the images of
/// `w'_{l,i}` and `τ_i` modulo `W_L`. Returns the first failing relation.
pub fn check_wreath_relations(group: &CosetGroup, parts: &WPrimeParts, d0: usize) -> std::result::Result<(), String> {
    let canon = |x: &SignedPermutation| group.canonical(x);
    let id = canon(&SignedPermutation::identity(group.rank));
    let order_mod = |x: &SignedPermutation| {
        let mut y = x.clone();
        let mut k = 1;
        while canon(&y) != id {
            y = y.compose(x);
            k += 1;
            if k > 10_000 {
                break;
            }
        }
        k
    };
    for (i, c) in parts.w_parts.iter().enumerate() {
        let o = order_mod(c);
        if o != 2 * d0 {
            return Err(format!("w'_(l,{}) has order {o} modulo W_L, expected {}", i + 1, 2 * d0));
        }
        for (j, c2) in parts.w_parts.iter().enumerate().skip(i + 1) {
            if canon(&c.compose(c2)) != canon(&c2.compose(c)) {
                return Err(format!("w'_(l,{}) and w'_(l,{}) do not commute modulo W_L", i + 1, j + 1));
            }
        }
    }
    let t = parts.taus.len();
    for (i, s) in parts.taus.iter().enumerate() {
        if canon(&s.compose(s)) != id {
            return Err(format!("tau_{} is not an involution modulo W_L", i + 1));
        }
        for (j, s2) in parts.taus.iter().enumerate().skip(i + 1) {
            let expected = if j == i + 1 { 3 } else { 2 };
            if order_mod(&s.compose(s2)) != expected {
                return Err(format!("tau_{} tau_{} does not have order {expected}", i + 1, j + 1));
            }
        }
        // τ_i swaps the i-th and (i+1)-th cyclic factors and fixes the others
        for (k, c) in parts.w_parts.iter().enumerate() {
            let conj = s.compose(c).compose(&s.inverse());
            let target = if k == i {
                &parts.w_parts[i + 1]
            } else if k == i + 1 {
                &parts.w_parts[i]
            } else {
                c
            };
            if canon(&conj) != canon(target) {
                return Err(format!("tau_{} does not permute w'_(l,{}) as expected", i + 1, k + 1));
            }
        }
    }
    let _ = t;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_reflections_have_length_one() {
        for i in 1..=5 {
            let s = SignedPermutation::simple_reflection(5, i);
            assert_eq!(s.length(), 1);
            assert_eq!(s.reduced_word(), vec![i]);
        }
    }

    #[test]
    fn longest_element() {
        let w0 = SignedPermutation::from_images(vec![-1, -2, -3]).unwrap();
        assert_eq!(w0.length(), 9);
        assert_eq!(w0.reduced_word().len(), 9);
    }

    #[test]
    fn cycles_round_trip() {
        let s = SignedPermutation::from_cycles(4, &[vec![1, 2, -1, -2], vec![3, 4]]).unwrap();
        assert_eq!(s.apply(1), 2);
        assert_eq!(s.apply(2), -1);
        assert_eq!(SignedPermutation::from_cycles(4, &s.cycles()).unwrap(), s);
    }

    #[test]
    fn reduced_word_reconstructs() {
        let s = SignedPermutation::from_images(vec![3, -1, -4, 2]).unwrap();
        let w = s.reduced_word();
        assert_eq!(w.len(), s.length());
        let mut acc = SignedPermutation::identity(4);
        for &i in &w {
            acc = acc.compose(&SignedPermutation::simple_reflection(4, i));
        }
        assert_eq!(acc, s);
    }
}

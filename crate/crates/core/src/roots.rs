//! Root systems of types B, C and D in the standard coordinates, Levi root
//! subsets, and lattice quotients.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    coords: Vec<i8>,
}

impl Root {
    pub fn new(coords: Vec<i8>) -> Self {
        Self { coords }
    }

    /// `±e_i` (1-based).
    pub fn e(n: usize, i: usize, sign: i8) -> Self {
        let mut c = vec![0; n];
        c[i - 1] = sign;
        Self { coords: c }
    }

    /// `s_i e_i + s_j e_j` (1-based).
    pub fn pair(n: usize, i: usize, si: i8, j: usize, sj: i8) -> Self {
        let mut c = vec![0; n];
        c[i - 1] += si;
        c[j - 1] += sj;
        Self { coords: c }
    }

    pub fn coords(&self) -> &[i8] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn norm2(&self) -> i64 {
        self.coords.iter().map(|&x| (x as i64) * (x as i64)).sum()
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.coords.iter().zip(&other.coords).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Root) -> Vec<i8> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()
    }

    /// Positive iff the nonzero coordinate of largest index is positive.
    pub fn is_positive(&self) -> bool {
        self.coords.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// 1-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i + 1).collect()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.coords.iter().map(|&x| x as i64).collect()
    }

    /// Pairing `⟨self, v⟩` with an integer vector in the `e`-basis.
    pub fn pair_with(&self, v: &[i64]) -> i64 {
        self.coords.iter().zip(v).map(|(&a, &b)| a as i64 * b).sum()
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c > 0 { if s.is_empty() { "" } else { "+" } } else { "-" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}e{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

/// The coroot `2α/(α, α)` as an integer vector.
pub fn coroot(alpha: &Root) -> Vec<i64> {
    let n = alpha.norm2();
    alpha.coords.iter().map(|&x| 2 * x as i64 / n).collect()
}

pub fn are_orthogonal_long(alpha: &Root, beta: &Root) -> bool {
    alpha.dot(beta) == 0 && alpha.norm2() == 2 && beta.norm2() == 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// An irreducible component type such as `A_1` or `B_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSubset {
    pub ambient_rank: usize,
    roots: BTreeSet<Root>,
}

impl RootSubset {
    pub fn new(ambient_rank: usize, roots: impl IntoIterator<Item = Root>) -> Self {
        Self { ambient_rank, roots: roots.into_iter().collect() }
    }

    pub fn empty(ambient_rank: usize) -> Self {
        Self { ambient_rank, roots: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn positive(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn is_negation_closed(&self) -> bool {
        self.roots.iter().all(|r| self.roots.contains(&r.neg()))
    }

    /// Closure inside `ambient`: `α, β ∈ S` and `α + β ∈ ambient` imply `α + β ∈ S`.
    pub fn is_closed_in(&self, ambient: &RootSubset) -> bool {
        for a in &self.roots {
            for b in &self.roots {
                let s = Root::new(a.add(b));
                if ambient.contains(&s) && !self.roots.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_stable_under(&self, w: &crate::sperm::SignedPermutation) -> bool {
        self.roots.iter().all(|r| self.roots.contains(&w.act_on_root(r)))
    }

    /// Decomposition into irreducible components, each with its type.
    pub fn components(&self) -> Vec<(ComponentType, RootSubset)> {
        let roots: Vec<&Root> = self.roots.iter().collect();
        let mut comp = vec![usize::MAX; roots.len()];
        let mut out = Vec::new();
        for start in 0..roots.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(roots[i].clone());
                for j in 0..roots.len() {
                    if comp[j] == usize::MAX && roots[i].dot(roots[j]) != 0 {
                        comp[j] = id;
                        stack.push(j);
                    }
                }
            }
            let sub = RootSubset::new(self.ambient_rank, members);
            out.push((sub.irreducible_type(), sub));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.roots.cmp(&b.1.roots)));
        out
    }

    fn irreducible_type(&self) -> ComponentType {
        let rank = span_rank(self.roots.iter().map(|r| r.as_i64()).collect());
        let lengths: BTreeSet<i64> = self.roots.iter().map(|r| r.norm2()).collect();
        let count = self.roots.len();
        let family = if lengths.len() == 2 {
            let min = *lengths.iter().next().unwrap();
            let short = self.roots.iter().filter(|r| r.norm2() == min).count();
            if short == 2 * rank {
                Family::B
            } else {
                Family::C
            }
        } else if lengths.contains(&1) && count == 2 {
            Family::B
        } else if count == rank * (rank + 1) {
            Family::A
        } else {
            Family::D
        };
        ComponentType { family, rank }
    }

    pub fn component_types(&self) -> Vec<ComponentType> {
        self.components().into_iter().map(|c| c.0).collect()
    }
}

/// Rank by incremental fraction-free elimination against an echelon basis.
fn span_rank(rows: Vec<Vec<i64>>) -> usize {
    let mut basis: Vec<(usize, Vec<i64>)> = Vec::new();
    for mut v in rows {
        for (c, b) in &basis {
            if v[*c] != 0 {
                let (x, y) = (b[*c], v[*c]);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = *vi * x - bi * y;
                }
                let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            basis.push((c, v));
        }
    }
    basis.len()
}

fn rank_in_place(m: &mut [Vec<BigRational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// A root system together with its simple roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub roots: RootSubset,
    pub simple: Vec<Root>,
}

/// The root system of type B, C or D and rank `n ≥ 2`. Simple roots are
/// `α_1 ∈ {e_1, 2e_1, e_1 + e_2}` (B, C, D) and `α_i = e_i - e_{i-1}` for `i ≥ 2`.
pub fn build_root_system(family: Family, n: usize) -> Result<RootSystem> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("rank {n} < 2")));
    }
    let mut roots = BTreeSet::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    roots.insert(Root::pair(n, i, si, j, sj));
                }
            }
        }
        match family {
            Family::B => {
                roots.insert(Root::e(n, i, 1));
                roots.insert(Root::e(n, i, -1));
            }
            Family::C => {
                roots.insert(Root::e(n, i, 2));
                roots.insert(Root::e(n, i, -2));
            }
            Family::D => {}
            Family::A => return Err(Error::InvalidParameters("type A is not supported here".into())),
        }
    }
    let first = match family {
        Family::B => Root::e(n, 1, 1),
        Family::C => Root::e(n, 1, 2),
        _ => Root::pair(n, 1, 1, 2, 1),
    };
    let mut simple = vec![first];
    simple.extend((2..=n).map(|i| Root::pair(n, i - 1, -1, i, 1)));
    Ok(RootSystem { family, rank: n, roots: RootSubset::new(n, roots), simple })
}

/// Full root set of type B_n (any `n ≥ 1`).
pub fn type_b_roots(n: usize) -> RootSubset {
    let mut roots = BTreeSet::new();
    for i in 1..=n {
        roots.insert(Root::e(n, i, 1));
        roots.insert(Root::e(n, i, -1));
        for j in (i + 1)..=n {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    roots.insert(Root::pair(n, i, si, j, sj));
                }
            }
        }
    }
    RootSubset::new(n, roots)
}

/// Simple roots of B_n: `α_1 = e_1`, `α_i = e_i - e_{i-1}`.
pub fn simple_root(n: usize, i: usize) -> Root {
    if i == 1 {
        Root::e(n, 1, 1)
    } else {
        Root::pair(n, i - 1, -1, i, 1)
    }
}

/// The Levi root subset: type `B_m` on the letters `l+1, …, n` together with
/// the `A_1` blocks `±(e_{2i} - e_{2i-1})`, `1 ≤ i ≤ l/2`, where `l = n - m`.
///
/// The `l/2 = d_0 t_l` blocks form `t_l` orbits of length `d_0` under the
/// twist, which is what makes the subset twist-stable.
pub fn levi_root_subset(n: usize, m: usize, d0: usize, t_l: usize) -> Result<RootSubset> {
    if m > n || d0 == 0 || t_l == 0 || n - m != 2 * d0 * t_l {
        return Err(Error::InvalidParameters(format!(
            "need n - m = 2 d0 t_l (n={n}, m={m}, d0={d0}, t_l={t_l})"
        )));
    }
    let l = n - m;
    let mut roots = BTreeSet::new();
    for i in (l + 1)..=n {
        roots.insert(Root::e(n, i, 1));
        roots.insert(Root::e(n, i, -1));
        for j in (i + 1)..=n {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    roots.insert(Root::pair(n, i, si, j, sj));
                }
            }
        }
    }
    for i in 1..=(l / 2) {
        roots.insert(Root::pair(n, 2 * i - 1, -1, 2 * i, 1));
        roots.insert(Root::pair(n, 2 * i - 1, 1, 2 * i, -1));
    }
    Ok(RootSubset::new(n, roots))
}

/// A sublattice of `ℤ^n` given by generator rows, in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let basis: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let l = Self { basis };
        if l.rank() != l.basis.len() {
            return Err(Error::InvalidParameters("lattice basis rows are linearly dependent".into()));
        }
        Ok(l)
    }

    /// Spanned by generators that may be dependent; an independent basis is extracted
    /// through the Hermite normal form.
    pub fn spanned_by(rows: Vec<Vec<i64>>) -> Self {
        let m: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        Self { basis: hermite_rows(m) }
    }

    pub fn dim(&self) -> usize {
        self.basis.first().map_or(0, |r| r.len())
    }

    fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> =
            self.basis.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        rank_in_place(&mut m)
    }

    /// Coordinates of `v` in the basis, if `v` lies in the rational span.
    fn rational_coords(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let r = self.basis.len();
        let n = self.dim();
        // solve c · B = v, i.e. Bᵀ cᵀ = vᵀ
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|j| {
                let mut row: Vec<BigRational> =
                    (0..r).map(|i| BigRational::from_integer(self.basis[i][j].clone())).collect();
                row.push(BigRational::from_integer(v[j].clone()));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..r {
            let Some(p) = (row..n).find(|&i| !aug[i][c].is_zero()) else { continue };
            aug.swap(row, p);
            let pv = aug[row][c].clone();
            for k in 0..=r {
                aug[row][k] = &aug[row][k] / &pv;
            }
            for i in 0..n {
                if i != row && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for k in 0..=r {
                        let t = &f * &aug[row][k];
                        aug[i][k] -= t;
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        if aug[row..].iter().any(|rw| !rw[r].is_zero()) {
            return None;
        }
        let mut c = vec![BigRational::zero(); r];
        for (i, &p) in pivots.iter().enumerate() {
            c[p] = aug[i][r].clone();
        }
        Some(c)
    }

    /// Integer coordinates of `v` if it lies in the lattice.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.rational_coords(v)?;
        if c.iter().all(|x| x.is_integer()) {
            Some(c.into_iter().map(|x| x.to_integer()).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.coords_of(&v).is_some()
    }
}

fn hermite_rows(mut m: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            let mut done = true;
            for i in (r + 1)..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for k in 0..cols {
                        let t = &q * &m[r][k];
                        m[i][k] -= t;
                    }
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                r += 1;
                break;
            }
        }
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

/// Smith normal form diagonal of an integer matrix (nonnegative, divisibility chain).
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in (t + 1)..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for k in t..cols {
                    let v = &q * &a[t][k];
                    a[i][k] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in (t + 1)..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = bad {
            for k in t..cols {
                let v = a[i][k].clone();
                a[t][k] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Elementary divisors `> 1` of `X / S`, plus the number of free summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

pub fn quotient_torsion(x: &Lattice, s: &Lattice) -> Result<QuotientStructure> {
    let mut rows = Vec::new();
    for g in &s.basis {
        rows.push(x.coords_of(g).ok_or(Error::NotASublattice)?);
    }
    let diag = smith_diagonal(rows);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    Ok(QuotientStructure { torsion, free_rank: x.basis.len() - nonzero })
}

/// The weight lattice of the simply connected group of type B_n, doubled:
/// spanned by `(1, …, 1)` and `2e_2, …, 2e_n`.
pub fn spin_weight_lattice(n: usize) -> Lattice {
    let mut rows = vec![vec![1i64; n]];
    for i in 2..=n {
        let mut r = vec![0; n];
        r[i - 1] = 2;
        rows.push(r);
    }
    Lattice::new(rows).expect("independent rows")
}

/// The lattice spanned by a root subset, doubled.
pub fn root_lattice(roots: &RootSubset) -> Lattice {
    Lattice::spanned_by(roots.iter().map(|r| r.as_i64().iter().map(|x| 2 * x).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_display() {
        assert_eq!(Root::pair(3, 1, -1, 2, 1).to_string(), "e2-e1");
        assert_eq!(Root::e(3, 3, -1).to_string(), "-e3");
    }

    #[test]
    fn smith_of_diagonal() {
        let m = vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(3)]];
        assert_eq!(smith_diagonal(m), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn hermite_reduces_dependent_rows() {
        let l = Lattice::spanned_by(vec![vec![2, 0], vec![4, 0], vec![0, 2]]);
        assert_eq!(l.basis.len(), 2);
    }
}

//! Formal root-subgroup calculus: the signs `η(β, α)` in
//! `n_β(1) x_α(u) n_β(1)⁻¹ = x_{s_β α}(η u)` for type `B_n`, and the action of
//! monomial elements and twisted Frobenius maps on symbolic terms `x_α(c u^{q^j})`.
//!
//! Signs are computed from the Chevalley basis of `so_{2n+1}` in its natural
//! representation and checked against an independent computation through
//! `exp(ad)` in the Lie algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::report::{Check, CheckList};
use crate::roots::{coroot, simple_root, type_b_roots, Root};
use crate::tits::supplement::Supplement;
use crate::tits::verify::random_element;
use crate::tits::{MonomialElement, TitsGroup};

/// Largest rank for which the full table (all rows `β ∈ Φ`) is built by default.
pub const FULL_TABLE_MAX_RANK: usize = 12;

/// `ε` of the isolated-block table: `(-1)^d`.
pub fn eps_table(d: usize) -> i8 {
    if d % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ε` of the twisted `SL_2(ε q^{d_0})` factors: `(-1)^{d+1}`.
pub fn eps_sl2(d: usize) -> i8 {
    -eps_table(d)
}

/// `s_β(α) = α - ⟨α, β^∨⟩ β`.
pub fn reflect(beta: &Root, alpha: &Root) -> Root {
    let k = alpha.pair_with(&coroot(beta)) as i8;
    Root::new(alpha.coords().iter().zip(beta.coords()).map(|(&a, &b)| a - k * b).collect())
}

/// The symbolic element `x_root(ϖ^coeff · u^{q^frob_exponent})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormalRootTerm {
    pub root: Root,
    /// Exponent of the fourth root of unity `ϖ`; `0` and `2` are the signs `±1`.
    pub coeff: u8,
    pub frob_exponent: u32,
}

impl FormalRootTerm {
    pub fn new(root: Root) -> Self {
        Self { root, coeff: 0, frob_exponent: 0 }
    }

    pub fn with_coeff(mut self, coeff: u8) -> Self {
        self.coeff = coeff % 4;
        self
    }

    /// `±1` when the coefficient is a sign.
    pub fn sign(&self) -> Option<i8> {
        match self.coeff {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Debug for FormalRootTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{{{}}}(w^{} u^(q^{}))", self.root, self.coeff, self.frob_exponent)
    }
}

type Sparse = Vec<(usize, usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat {
    dim: usize,
    a: Vec<i64>,
}

impl Mat {
    fn identity(dim: usize) -> Self {
        let mut a = vec![0; dim * dim];
        for i in 0..dim {
            a[i * dim + i] = 1;
        }
        Self { dim, a }
    }

    fn from_sparse(dim: usize, s: &Sparse) -> Self {
        let mut a = vec![0; dim * dim];
        for &(r, c, v) in s {
            a[r * dim + c] += v;
        }
        Self { dim, a }
    }

    fn get(&self, r: usize, c: usize) -> i64 {
        self.a[r * self.dim + c]
    }

    fn mul(&self, o: &Mat) -> Mat {
        let n = self.dim;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x != 0 {
                    for j in 0..n {
                        a[i * n + j] += x * o.a[k * n + j];
                    }
                }
            }
        }
        Mat { dim: n, a }
    }

    fn neg(&self) -> Mat {
        Mat { dim: self.dim, a: self.a.iter().map(|x| -x).collect() }
    }

    /// `M X M⁻¹` for sparse `X`.
    fn conj_sparse(&self, inv: &Mat, x: &Sparse) -> Mat {
        let n = self.dim;
        let mut a = vec![0; n * n];
        for &(r, c, v) in x {
            for i in 0..n {
                let left = self.a[i * n + r] * v;
                if left != 0 {
                    for j in 0..n {
                        a[i * n + j] += left * inv.a[c * n + j];
                    }
                }
            }
        }
        Mat { dim: n, a }
    }
}

fn sparse_mul(x: &Sparse, y: &Sparse) -> Sparse {
    let mut out: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &(r, k, a) in x {
        for &(k2, c, b) in y {
            if k == k2 {
                *out.entry((r, c)).or_default() += a * b;
            }
        }
    }
    out.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect()
}

fn sparse_bracket(x: &Sparse, y: &Sparse) -> Sparse {
    let mut out: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (r, c, v) in sparse_mul(x, y) {
        *out.entry((r, c)).or_default() += v;
    }
    for (r, c, v) in sparse_mul(y, x) {
        *out.entry((r, c)).or_default() -= v;
    }
    out.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect()
}

/// A Chevalley basis of `so_{2n+1}` acting on `v_1, …, v_n, v_0, v_{-1}, …, v_{-n}`,
/// with bilinear form `B(v_i, v_{-i}) = 1`, `B(v_0, v_0) = 2`.
#[derive(Clone, Debug)]
struct ChevalleyBasis {
    n: usize,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    x: Vec<Sparse>,
}

impl ChevalleyBasis {
    fn new(n: usize) -> Self {
        let roots: Vec<Root> = type_b_roots(n).iter().cloned().collect();
        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut x: Vec<Sparse> = roots.iter().map(|r| Self::formula(n, r)).collect();
        for (k, r) in roots.iter().enumerate() {
            if r.is_positive() {
                continue;
            }
            let pos = index[&r.neg()];
            let h = sparse_bracket(&x[pos], &x[k]);
            let letter = r.support()[0];
            let want = coroot(&r.neg())[letter - 1];
            let p = Self::position(n, letter as i32);
            let got: i64 = h.iter().filter(|&&(a, b, _)| a == p && b == p).map(|e| e.2).sum();
            if got == -want {
                for e in x[k].iter_mut() {
                    e.2 = -e.2;
                }
            } else {
                assert_eq!(got, want, "Chevalley normalisation for {r}");
            }
        }
        Self { n, roots, index, x }
    }

    fn dim(&self) -> usize {
        2 * self.n + 1
    }

    fn position(n: usize, k: i32) -> usize {
        match k.signum() {
            1 => k as usize - 1,
            0 => n,
            _ => n + k.unsigned_abs() as usize,
        }
    }

    fn formula(n: usize, r: &Root) -> Sparse {
        let supp = r.support();
        let c = r.coords();
        let p = |k: i32| Self::position(n, k);
        if supp.len() == 1 {
            let si = c[supp[0] - 1] as i32 * supp[0] as i32;
            vec![(p(si), p(0), 2), (p(0), p(-si), -1)]
        } else {
            let (i, j) = (supp[0] as i32, supp[1] as i32);
            let (s, t) = (c[supp[0] - 1] as i32, c[supp[1] - 1] as i32);
            vec![(p(s * i), p(-t * j), 1), (p(t * j), p(-s * i), -1)]
        }
    }

    /// Action of `[X_γ, X_{-γ}]` on weight vectors matches the coroot `γ^∨`.
    fn check_coroots(&self) -> std::result::Result<(), String> {
        for (k, r) in self.roots.iter().enumerate() {
            let h = Mat::from_sparse(self.dim(), &sparse_bracket(&self.x[k], &self.x[self.index[&r.neg()]]));
            let cr = coroot(r);
            let mut want = Mat::identity(self.dim());
            for i in 0..self.dim() {
                want.a[i * self.dim() + i] = 0;
            }
            for l in 1..=self.n {
                let a = Self::position(self.n, l as i32);
                let b = Self::position(self.n, -(l as i32));
                want.a[a * self.dim() + a] = cr[l - 1];
                want.a[b * self.dim() + b] = -cr[l - 1];
            }
            if h != want {
                return Err(format!("[X_{r}, X_-{r}] is not the coroot"));
            }
        }
        Ok(())
    }

    /// `N_{γ,δ}` with `[X_γ, X_δ] = N_{γ,δ} X_{γ+δ}`, or `None` if `γ + δ` is not a root.
    fn structure_constant(&self, g: usize, d: usize) -> Option<i64> {
        let sum = Root::new(self.roots[g].add(&self.roots[d]));
        let target = *self.index.get(&sum)?;
        let br = Mat::from_sparse(self.dim(), &sparse_bracket(&self.x[g], &self.x[d]));
        let t = Mat::from_sparse(self.dim(), &self.x[target]);
        let &(r, c, v) = self.x[target].first()?;
        let k = br.get(r, c) / v;
        let scaled = Mat { dim: t.dim, a: t.a.iter().map(|e| e * k).collect() };
        assert_eq!(br, scaled, "bracket is a multiple of the root vector");
        Some(k)
    }

    fn check_structure_constants(&self) -> std::result::Result<(), String> {
        for g in 0..self.roots.len() {
            for d in 0..self.roots.len() {
                let Some(k) = self.structure_constant(g, d) else { continue };
                let (gr, dr) = (&self.roots[g], &self.roots[d]);
                let mut p = 0;
                let mut cur = dr.clone();
                loop {
                    let next = Root::new(cur.coords().iter().zip(gr.coords()).map(|(a, b)| a - b).collect());
                    if !self.index.contains_key(&next) {
                        break;
                    }
                    p += 1;
                    cur = next;
                }
                if k.abs() != p + 1 {
                    return Err(format!("N({gr}, {dr}) = {k}, expected +-{}", p + 1));
                }
            }
        }
        Ok(())
    }

    fn exp(&self, k: usize, u: i64) -> Mat {
        let x = Mat::from_sparse(self.dim(), &self.x[k]);
        let x2 = x.mul(&x);
        let mut m = Mat::identity(self.dim());
        for i in 0..m.a.len() {
            debug_assert!(x2.a[i] % 2 == 0);
            m.a[i] += u * x.a[i] + u * u * x2.a[i] / 2;
        }
        m
    }

    /// `n_β(1) = x_β(1) x_{-β}(-1) x_β(1)` and its inverse.
    fn n_matrix(&self, beta: usize) -> (Mat, Mat) {
        let minus = self.index[&self.roots[beta].neg()];
        let n = self.exp(beta, 1).mul(&self.exp(minus, -1)).mul(&self.exp(beta, 1));
        let inv = self.exp(beta, -1).mul(&self.exp(minus, 1)).mul(&self.exp(beta, -1));
        debug_assert_eq!(n.mul(&inv), Mat::identity(self.dim()));
        (n, inv)
    }

    /// `η(β, α)` read off `n_β X_α n_β⁻¹` in the natural representation.
    fn eta_row_matrix(&self, beta: usize) -> Vec<Option<i8>> {
        let (nb, inv) = self.n_matrix(beta);
        (0..self.roots.len())
            .map(|a| {
                let res = nb.conj_sparse(&inv, &self.x[a]);
                let image = self.index[&reflect(&self.roots[beta], &self.roots[a])];
                let want = Mat::from_sparse(self.dim(), &self.x[image]);
                if res == want {
                    Some(1)
                } else if res == want.neg() {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// An element of the Lie algebra in the Chevalley basis: root coordinates and a
/// Cartan part in the `e`-basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct LieVec {
    roots: BTreeMap<usize, i64>,
    cartan: BTreeMap<usize, i64>,
}

impl LieVec {
    fn root(k: usize) -> Self {
        Self { roots: BTreeMap::from([(k, 1)]), cartan: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.roots.values().all(|&v| v == 0) && self.cartan.values().all(|&v| v == 0)
    }

    fn add_scaled(&mut self, o: &LieVec, num: i64, den: i64) {
        for (&k, &v) in &o.roots {
            assert!((v * num) % den == 0, "exact division");
            *self.roots.entry(k).or_default() += v * num / den;
        }
        for (&k, &v) in &o.cartan {
            assert!((v * num) % den == 0, "exact division");
            *self.cartan.entry(k).or_default() += v * num / den;
        }
        self.roots.retain(|_, v| *v != 0);
        self.cartan.retain(|_, v| *v != 0);
    }
}

/// The adjoint route: `Ad(n_β) = exp(ad X_β) exp(-ad X_{-β}) exp(ad X_β)`, using only
/// structure constants and coroots.
struct Adjoint<'a> {
    basis: &'a ChevalleyBasis,
    constants: HashMap<(usize, usize), i64>,
}

impl<'a> Adjoint<'a> {
    fn new(basis: &'a ChevalleyBasis) -> Self {
        let mut constants = HashMap::new();
        for g in 0..basis.roots.len() {
            for d in 0..basis.roots.len() {
                if let Some(k) = basis.structure_constant(g, d) {
                    constants.insert((g, d), k);
                }
            }
        }
        Self { basis, constants }
    }

    /// `[X_γ, v]`.
    fn ad(&self, g: usize, v: &LieVec) -> LieVec {
        let gr = &self.basis.roots[g];
        let mut out = LieVec::default();
        for (&d, &c) in &v.roots {
            if self.basis.roots[d] == gr.neg() {
                for (i, &h) in coroot(gr).iter().enumerate() {
                    if h != 0 {
                        *out.cartan.entry(i).or_default() += c * h;
                    }
                }
            } else if let Some(&k) = self.constants.get(&(g, d)) {
                *out.roots.entry(self.basis.index[&Root::new(gr.add(&self.basis.roots[d]))]).or_default() += c * k;
            }
        }
        let pairing: i64 = v.cartan.iter().map(|(&i, &h)| gr.coords()[i] as i64 * h).sum();
        if pairing != 0 {
            *out.roots.entry(g).or_default() -= pairing;
        }
        out.roots.retain(|_, v| *v != 0);
        out.cartan.retain(|_, v| *v != 0);
        out
    }

    fn exp_ad(&self, g: usize, u: i64, v: &LieVec) -> LieVec {
        let mut out = v.clone();
        let mut term = v.clone();
        let mut k = 1i64;
        let mut fact = 1i64;
        loop {
            term = self.ad(g, &term);
            if term.is_zero() {
                break;
            }
            fact *= k;
            out.add_scaled(&term, u.pow(k as u32), fact);
            k += 1;
        }
        out
    }

    fn eta(&self, beta: usize, alpha: usize) -> Option<i8> {
        let minus = self.basis.index[&self.basis.roots[beta].neg()];
        let v = self.exp_ad(beta, 1, &LieVec::root(alpha));
        let v = self.exp_ad(minus, -1, &v);
        let v = self.exp_ad(beta, 1, &v);
        let image = self.basis.index[&reflect(&self.basis.roots[beta], &self.basis.roots[alpha])];
        if !v.cartan.is_empty() || v.roots.len() != 1 {
            return None;
        }
        match v.roots.get(&image) {
            Some(1) => Some(1),
            Some(-1) => Some(-1),
            _ => None,
        }
    }
}

/// The signs `η(β, α)` for a set of rows `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTable {
    n: usize,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    /// `row_of[k]` is the row of `roots[k]` if present.
    row_of: Vec<Option<usize>>,
    eta: Vec<Vec<i8>>,
    /// `simple_image[i - 1][a]` is the index of `s_i(roots[a])`.
    simple_image: Vec<Vec<usize>>,
}

impl SignTable {
    /// Full table for `n ≤ FULL_TABLE_MAX_RANK`, simple rows otherwise.
    pub fn build(n: usize) -> Self {
        if n <= FULL_TABLE_MAX_RANK {
            Self::full(n)
        } else {
            Self::simple_rows(n)
        }
    }

    pub fn full(n: usize) -> Self {
        let basis = ChevalleyBasis::new(n);
        let rows = (0..basis.roots.len()).collect();
        Self::from_rows(basis, rows)
    }

    /// Only the rows of the simple roots, which is all `conjugate` needs.
    pub fn simple_rows(n: usize) -> Self {
        let basis = ChevalleyBasis::new(n);
        let rows = (1..=n).map(|i| basis.index[&simple_root(n, i)]).collect();
        Self::from_rows(basis, rows)
    }

    fn from_rows(basis: ChevalleyBasis, rows: Vec<usize>) -> Self {
        let mut row_of = vec![None; basis.roots.len()];
        let mut eta = Vec::new();
        for (r, &b) in rows.iter().enumerate() {
            row_of[b] = Some(r);
            let row = basis.eta_row_matrix(b);
            eta.push(row.into_iter().map(|e| e.expect("n_beta permutes root vectors up to sign")).collect());
        }
        let n = basis.n;
        let simple_image = (1..=n)
            .map(|i| {
                let s = simple_root(n, i);
                basis.roots.iter().map(|a| basis.index[&reflect(&s, a)]).collect()
            })
            .collect();
        Self { n, roots: basis.roots, index: basis.index, row_of, eta, simple_image }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn has_row(&self, beta: &Root) -> bool {
        self.index.get(beta).is_some_and(|&k| self.row_of[k].is_some())
    }

    pub fn eta(&self, beta: &Root, alpha: &Root) -> Option<i8> {
        let row = self.row_of[*self.index.get(beta)?]?;
        Some(self.eta[row][*self.index.get(alpha)?])
    }

    /// The `(β, α)` pairs stored, row by row.
    pub fn entries(&self) -> Vec<(Root, Root)> {
        let mut out = Vec::new();
        for (k, row) in self.row_of.iter().enumerate() {
            if row.is_some() {
                out.extend(self.roots.iter().map(|a| (self.roots[k].clone(), a.clone())));
            }
        }
        out
    }

    /// A copy with the entry `η(β, α)` negated.
    pub fn with_flipped(&self, beta: &Root, alpha: &Root) -> Self {
        let mut t = self.clone();
        if let (Some(Some(row)), Some(&a)) = (self.index.get(beta).map(|&k| self.row_of[k]), self.index.get(alpha)) {
            t.eta[row][a] = -t.eta[row][a];
        }
        t
    }

    fn simple_eta(&self, i: usize, a: usize) -> i8 {
        let b = self.index[&simple_root(self.n, i)];
        let row = self.row_of[b].expect("simple rows are always present");
        self.eta[row][a]
    }
}

/// `x · t · x⁻¹`, folding the reduced word of `ρ(x)` from the right and then the torus part.
pub fn conjugate_left(table: &SignTable, x: &MonomialElement, t: &FormalRootTerm) -> FormalRootTerm {
    assert_eq!(table.n, x.rank(), "rank mismatch between sign table and element");
    assert_eq!(x.torus.modulus(), 4, "coefficients are fourth roots of unity");
    let mut a = table.index[&t.root];
    let mut coeff = t.coeff as u32;
    for &i in x.weyl.reduced_word().iter().rev() {
        if table.simple_eta(i, a) < 0 {
            coeff += 2;
        }
        a = table.simple_image[i - 1][a];
    }
    let root = table.roots[a].clone();
    coeff += x.torus.root_character(&root) as u32;
    FormalRootTerm { root, coeff: (coeff % 4) as u8, frob_exponent: t.frob_exponent }
}

/// `t^x = x⁻¹ · t · x`.
pub fn conjugate(g: &TitsGroup, table: &SignTable, t: &FormalRootTerm, x: &MonomialElement) -> FormalRootTerm {
    conjugate_left(table, &g.inverse(x), t)
}

/// `(ad v ∘ F_q)^j`: each step raises the coefficient to the `q`-th power,
/// increments the Frobenius exponent and conjugates by `v`.
pub fn twisted_frobenius_power(table: &SignTable, t: &FormalRootTerm, q: u64, v: &MonomialElement, j: usize) -> FormalRootTerm {
    assert!(q % 2 == 1, "q must be odd");
    let mut cur = t.clone();
    for _ in 0..j {
        cur.coeff = ((cur.coeff as u64 * q) % 4) as u8;
        cur.frob_exponent += 1;
        cur = conjugate_left(table, v, &cur);
    }
    cur
}

/// Settings for the sign-table validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationConfig {
    pub random_cases: usize,
    pub seed: u64,
    /// Largest rank for the comparison between the multiplication and matrix products.
    pub matrix_rank: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self { random_cases: 1000, seed: 0xc0ffee, matrix_rank: 4 }
    }
}

/// Checks a sign table against the Lie-algebra route, the rank-1 relations and
/// the multiplication in `g`.
pub fn validate_sign_table(g: &TitsGroup, table: &SignTable, cfg: ValidationConfig) -> CheckList {
    let n = table.n;
    let mut out = CheckList::new();
    let basis = ChevalleyBasis::new(n);
    let roots = &table.roots;

    out.push(Check::from_result(
        "chevsign.chevalley_basis",
        "[X_a, X_-a] = H_a and N_{a,b} = +-(p+1)",
        basis.check_coroots().and_then(|_| basis.check_structure_constants()),
    ));

    let adjoint = Adjoint::new(&basis);
    out.push(Check::from_result("chevsign.adjoint", "n_b(1) X_a n_b(1)^-1 = eta(b,a) X_{s_b a} via exp(ad)", (|| {
        for (b, row) in table.row_of.iter().enumerate() {
            let Some(row) = row else { continue };
            for a in 0..roots.len() {
                let want = adjoint.eta(b, a);
                if want != Some(table.eta[*row][a]) {
                    return Err(format!("eta({}, {}) = {}, exp(ad) gives {want:?}", roots[b], roots[a], table.eta[*row][a]));
                }
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("chevsign.orthogonal_long", "x_a(u)^{n_b(1)} = x_a(u) for orthogonal long a, b", (|| {
        for (b, row) in table.row_of.iter().enumerate() {
            let Some(row) = row else { continue };
            for a in 0..roots.len() {
                let (ar, br) = (&roots[a], &roots[b]);
                let commuting = ar.dot(br) == 0
                    && !table.index.contains_key(&Root::new(ar.add(br)))
                    && !table.index.contains_key(&Root::new(ar.add(&br.neg())));
                if commuting && table.eta[*row][a] != 1 {
                    return Err(format!("eta({br}, {ar}) = -1 for a commuting pair"));
                }
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("chevsign.sl2", "n X_b n^-1 = -X_-b and n X_-b n^-1 = -X_b with n = [[0,1],[-1,0]]", (|| {
        let (e, f) = ([[0i64, 1], [0, 0]], [[0i64, 0], [1, 0]]);
        let nm = [[0i64, 1], [-1, 0]];
        let ni = [[0i64, -1], [1, 0]];
        let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
            let mut z = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            z
        };
        let on_e = mul(mul(nm, e), ni);
        let on_f = mul(mul(nm, f), ni);
        let sign_e = if on_e == f { 1 } else if on_e == [[0, 0], [-1, 0]] { -1 } else { 0 };
        let sign_f = if on_f == e { 1 } else if on_f == [[0, -1], [0, 0]] { -1 } else { 0 };
        for (b, row) in table.row_of.iter().enumerate() {
            let Some(row) = row else { continue };
            let minus = table.index[&roots[b].neg()];
            if table.eta[*row][b] != sign_e || table.eta[*row][minus] != sign_f {
                return Err(format!("row {}: eta(b, b) = {}, eta(b, -b) = {}", roots[b], table.eta[*row][b], table.eta[*row][minus]));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("chevsign.torus", "eta(b,a) eta(b,s_b a) = a(h_b(-1)) with h_b(-1) from the multiplication", (|| {
        for (b, row) in table.row_of.iter().enumerate() {
            let Some(row) = row else { continue };
            let h = g.h_alpha_minus_one(&roots[b]);
            for a in 0..roots.len() {
                let image = table.index[&reflect(&roots[b], &roots[a])];
                let prod = table.eta[*row][a] * table.eta[*row][image];
                let want = if h.root_character(&roots[a]) == 0 { 1 } else { -1 };
                if prod != want {
                    return Err(format!("beta = {}, alpha = {}: product {prod}, character {want}", roots[b], roots[a]));
                }
            }
        }
        Ok(())
    })()));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random_term = |rng: &mut ChaCha8Rng| {
        let r = roots[rng.gen_range(0..roots.len())].clone();
        FormalRootTerm::new(r).with_coeff(rng.gen_range(0..4))
    };
    out.push(Check::from_result("chevsign.composition", "(x y) t (x y)^-1 = x (y t y^-1) x^-1", (|| {
        for _ in 0..cfg.random_cases {
            let (x, y, t) = (random_element(g, &mut rng), random_element(g, &mut rng), random_term(&mut rng));
            let lhs = conjugate_left(table, &g.mul(&x, &y), &t);
            let rhs = conjugate_left(table, &x, &conjugate_left(table, &y, &t));
            if lhs != rhs {
                return Err(format!("x = {x:?}, y = {y:?}, t = {t:?}: {lhs:?} != {rhs:?}"));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("chevsign.round_trip", "x^-1 (x t x^-1) x = t", (|| {
        for _ in 0..cfg.random_cases {
            let (x, t) = (random_element(g, &mut rng), random_term(&mut rng));
            let back = conjugate_left(table, &g.inverse(&x), &conjugate_left(table, &x, &t));
            if back != t {
                return Err(format!("x = {x:?}, t = {t:?}: {back:?}"));
            }
        }
        Ok(())
    })()));

    if n <= cfg.matrix_rank {
        out.push(Check::from_result("chevsign.matrix_products", "m_{i_1} ... m_{i_k} = t w in the natural representation", (|| {
            let lifts: Vec<(Mat, Mat)> = (1..=n).map(|i| basis.n_matrix(basis.index[&simple_root(n, i)])).collect();
            let to_matrix = |x: &MonomialElement| {
                let mut m = Mat::identity(basis.dim());
                for (i, &c) in x.torus.coords().iter().enumerate() {
                    if c % 2 != 0 {
                        return None;
                    }
                    if c == 2 {
                        m = m.mul(&lifts[i].0).mul(&lifts[i].0);
                    }
                }
                for &i in &x.weyl.reduced_word() {
                    m = m.mul(&lifts[i - 1].0);
                }
                Some(m)
            };
            for _ in 0..cfg.random_cases / 4 {
                let len = rng.gen_range(1..=12);
                let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
                let x = word.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &g.simple_lift(i)));
                let direct = word.iter().fold(Mat::identity(basis.dim()), |m, &i| m.mul(&lifts[i - 1].0));
                if to_matrix(&x) != Some(direct) {
                    return Err(format!("word {word:?} gives {x:?}, which differs from the matrix product"));
                }
            }
            Ok(())
        })()));
    }
    out
}

fn b_m_terms(table: &SignTable, l: usize) -> Vec<FormalRootTerm> {
    table
        .roots
        .iter()
        .filter(|r| r.support().iter().all(|&i| i > l))
        .map(|r| FormalRootTerm::new(r.clone()))
        .collect()
}

/// `F^j(x_{±(e_2-e_1)}(u))` for `0 ≤ j < count`, with `F = ad(v_l) ∘ F_q`.
pub fn l1_terms(s: &Supplement, table: &SignTable, count: usize) -> Vec<FormalRootTerm> {
    let n = s.group.n;
    let base = Root::pair(n, 1, -1, 2, 1);
    let mut out = Vec::new();
    for r in [base.clone(), base.neg()] {
        let t = FormalRootTerm::new(r);
        for j in 0..count {
            out.push(twisted_frobenius_power(table, &t, s.q, &s.twist.v_l, j));
        }
    }
    out
}

fn fixes_all(g: &TitsGroup, table: &SignTable, terms: &[FormalRootTerm], x: &MonomialElement) -> Option<(FormalRootTerm, FormalRootTerm)> {
    terms.iter().find_map(|t| {
        let img = conjugate(g, table, t, x);
        (img != *t).then(|| (t.clone(), img))
    })
}

/// `[L_i, c'_j] = 1` for `i ≠ j` and `[B_m(q), V'] = 1`.
pub fn verify_commutator_lemmas(s: &Supplement, table: &SignTable) -> CheckList {
    let g = &s.group;
    let p = s.params;
    let mut out = CheckList::new();
    let l1 = l1_terms(s, table, 2 * p.d0);
    let blocks: Vec<Vec<FormalRootTerm>> = (1..=p.t_l)
        .map(|i| {
            let shift = g.product(&s.p_primes[..i - 1]);
            l1.iter().map(|t| conjugate(g, table, t, &shift)).collect()
        })
        .collect();

    out.push(Check::from_result("commutator.l_c", "[L_i, c'_j] = 1 for i != j", (|| {
        for (i, terms) in blocks.iter().enumerate() {
            for (j, c) in s.c_primes.iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some((t, img)) = fixes_all(g, table, terms, c) {
                    return Err(format!("i = {}, j = {}: {t:?} -> {img:?}", i + 1, j + 1));
                }
            }
        }
        Ok(())
    })()));

    let bm = b_m_terms(table, s.twist.l);
    out.push(Check::from_result("commutator.b_m", "[B_m(q), V'] = 1", (|| {
        for (k, x) in s.v_generators().iter().enumerate() {
            if let Some((t, img)) = fixes_all(g, table, &bm, x) {
                return Err(format!("generator {k}: {t:?} -> {img:?}"));
            }
        }
        Ok(())
    })()));

    out.push(Check::from_result("commutator.b_m_p1", "[B_m(q), p_1] = 1", (|| {
        let Some(p1) = s.ps.first() else { return Ok(()) };
        match fixes_all(g, table, &bm, p1) {
            Some((t, img)) => Err(format!("{t:?} -> {img:?}")),
            None => Ok(()),
        }
    })()));

    out.push(Check::from_result("commutator.b_m_three_step", "x_a(u)^{c'_1} = x_a(u)^{c_1 p_1^-1 c_1 p_1} = x_a(u)", (|| {
        let Some(p1) = s.ps.first() else { return Ok(()) };
        let steps = [s.c1.clone(), g.inverse(p1), s.c1.clone(), p1.clone()];
        for t in &bm {
            let stepped = steps.iter().fold(t.clone(), |acc, x| conjugate(g, table, &acc, x));
            let direct = conjugate(g, table, t, &s.c_primes[0]);
            if stepped != direct || direct != *t {
                return Err(format!("{t:?}: three steps {stepped:?}, c'_1 {direct:?}"));
            }
        }
        Ok(())
    })()));
    out
}

/// `c'_1` acts as `v'_l` on `L_1` and trivially on `B_m(q)`.
pub fn verify_graph_action(s: &Supplement, table: &SignTable) -> CheckList {
    let g = &s.group;
    let n = g.n;
    let p = s.params;
    let mut out = CheckList::new();
    let prod = g.product(&s.c_primes);
    let x = g.mul(&s.twist.v_l_prime, &g.inverse(&prod));
    let root = Root::pair(n, 1, 1, 2, -1);

    out.push(if x.weyl.is_identity() {
        Check::pass("graph.x_torus", "x = v'_l (c'_1 ... c'_{t_l})^-1 lies in H_l")
    } else {
        Check::fail("graph.x_torus", "x = v'_l (c'_1 ... c'_{t_l})^-1 lies in H_l", format!("rho(x) = {}", x.weyl))
    });
    out.push(if x.torus.root_character(&root) == 0 && x.torus.root_character(&root.neg()) == 0 {
        Check::pass("graph.x_centralises", "x centralises X_{+-(e_1 - e_2)}")
    } else {
        Check::fail(
            "graph.x_centralises",
            "x centralises X_{+-(e_1 - e_2)}",
            format!("(e_1 - e_2)(x) = w^{}", x.torus.root_character(&root)),
        )
    });

    let l1 = l1_terms(s, table, 2 * p.d0);
    out.push(Check::from_result("graph.others_centralise", "c'_j centralises L_1 for j >= 2", (|| {
        for (j, c) in s.c_primes.iter().enumerate().skip(1) {
            if let Some((t, img)) = fixes_all(g, table, &l1, c) {
                return Err(format!("j = {}: {t:?} -> {img:?}", j + 1));
            }
        }
        Ok(())
    })()));
    out.push(Check::from_result("graph.action", "c'_1 acts as v'_l on L_1", (|| {
        for t in &l1 {
            let (a, b) = (conjugate(g, table, t, &s.c_primes[0]), conjugate(g, table, t, &s.twist.v_l_prime));
            if a != b {
                return Err(format!("{t:?}: c'_1 gives {a:?}, v'_l gives {b:?}"));
            }
        }
        Ok(())
    })()));
    out.push(Check::from_result("graph.b_m", "c'_1 acts trivially on B_m(q)", (|| {
        match fixes_all(g, table, &b_m_terms(table, s.twist.l), &s.c_primes[0]) {
            Some((t, img)) => Err(format!("{t:?} -> {img:?}")),
            None => Ok(()),
        }
    })()));
    out
}

/// `F^{d_0}(x_{e_1-e_2}(u)) = x_{ε(e_1-e_2)}(ε u^{q^{d_0}})` with `ε = (-1)^{d+1}`, and `F^{2d_0}` fixes the term.
pub fn verify_twisted_frobenius(s: &Supplement, table: &SignTable) -> CheckList {
    let p = s.params;
    let n = s.group.n;
    let mut out = CheckList::new();
    let base = FormalRootTerm::new(Root::pair(n, 1, 1, 2, -1));
    let eps = eps_sl2(p.d);
    let got = twisted_frobenius_power(table, &base, s.q, &s.twist.v_l, p.d0);
    let want = FormalRootTerm {
        root: if eps == 1 { base.root.clone() } else { base.root.neg() },
        coeff: if eps == 1 { 0 } else { 2 },
        frob_exponent: p.d0 as u32,
    };
    out.push(Check::expect_eq("frobenius.d0", "F^{d0}(x_{e1-e2}(u)) = x_{eps(e1-e2)}(eps u^{q^d0}), eps = (-1)^{d+1}", &got, &want));
    let twice = twisted_frobenius_power(table, &base, s.q, &s.twist.v_l, 2 * p.d0);
    let want2 = FormalRootTerm { frob_exponent: 2 * p.d0 as u32, ..base.clone() };
    out.push(Check::expect_eq("frobenius.2d0", "F^{2 d0}(x_{e1-e2}(u)) = x_{e1-e2}(u^{q^{2 d0}})", &twice, &want2));
    let zero = twisted_frobenius_power(table, &base, s.q, &s.twist.v_l, 0);
    out.push(Check::expect_eq("frobenius.zero", "F^0 = id", &zero, &base));
    out
}

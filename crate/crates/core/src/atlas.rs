//! The isolated `ℓ`-block atlas of `B_n(q)`: the three families of
//! `d`-cuspidal Levi data, their rational types and generic center orders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cyclo::{valuation, EllContext, GenericOrder};
use crate::error::{Error, Result};
use crate::roots::{
    levi_root_subset, quotient_torsion, root_lattice, spin_weight_lattice, type_b_roots, ComponentType, Family,
    QuotientStructure, Root, RootSubset,
};
use crate::sperm::{coxeter_cycle, reflection_group, sylow_twist, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowParams {
    pub n: usize,
    pub m: usize,
    /// Rank of the first symplectic factor of the centralizer (case 1).
    pub k: Option<usize>,
    /// Rank of the first symplectic factor of `C_{L*}(s)` (case 1).
    pub l: Option<usize>,
    pub a: usize,
    /// `a / 2` (case 2).
    pub t_l: Option<usize>,
    pub d: u64,
    pub d0: u64,
    pub eps: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedBlockRow {
    pub case_no: u8,
    pub centralizer_type: String,
    pub d0_parity_constraint: Option<Parity>,
    /// The table template for `L^F`.
    pub levi_template: String,
    /// The template instantiated in the canonical grammar.
    pub levi_type: String,
    pub levi_centralizer_template: String,
    pub levi_centralizer_type: String,
    pub params: RowParams,
}

impl IsolatedBlockRow {
    pub fn key(&self) -> (u8, usize, Option<usize>, Option<usize>) {
        (self.case_no, self.params.m, self.params.k, self.params.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDatum {
    pub row: IsolatedBlockRow,
    pub root_subset: RootSubset,
    pub twist: SignedPermutation,
    pub center_order: GenericOrder,
}

const CASE1_TEMPLATE: &str = "B_m(q) (q^{d_0}+\\varepsilon)^{a}";
const CASE2_TEMPLATE: &str = "B_m(q) A_1(q^{d_0})^{a/2}(q^{d_0}+\\varepsilon )^{a/2}";
const CASE3_TEMPLATE: &str = "B_{m}(q) (q^{d_0}+1)^{a}";
const CASE1_CENT_TEMPLATE: &str = "C_l(q) C_{m-l}(q) (q^{d_0}+\\varepsilon)^{a}";
const CASE2_CENT_TEMPLATE: &str = "C_{m/2}(q^2) (q^{2d_0}-1)^{a/2}";
const CASE3_CENT_TEMPLATE: &str = "C_{m/2}(q^2) (q^{d_0}+1)^{a}";

fn q_power(j: u64) -> String {
    if j == 1 {
        "q".into()
    } else {
        format!("q^{j}")
    }
}

fn with_mult(s: String, mult: usize) -> String {
    if mult == 1 {
        s
    } else {
        format!("{s}^{mult}")
    }
}

/// A semisimple factor `X_r(q^j)`, possibly twisted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SemisimpleFactor {
    ty: ComponentType,
    j: u64,
    twisted: bool,
}

/// A torus factor `q^j - s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TorusFactor {
    j: u64,
    s: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct RationalType {
    semisimple: BTreeMap<SemisimpleFactor, usize>,
    torus: BTreeMap<TorusFactor, usize>,
}

impl RationalType {
    fn add_semisimple(&mut self, ty: ComponentType, j: u64, twisted: bool, mult: usize) {
        if mult > 0 && ty.rank > 0 {
            *self.semisimple.entry(SemisimpleFactor { ty, j, twisted }).or_insert(0) += mult;
        }
    }

    fn add_torus(&mut self, j: u64, s: i64, mult: usize) {
        if mult > 0 {
            *self.torus.entry(TorusFactor { j, s }).or_insert(0) += mult;
        }
    }

    fn torus_order(&self) -> GenericOrder {
        let mut g = GenericOrder::one();
        for (t, &mult) in &self.torus {
            let f = if t.s == 1 {
                GenericOrder::x_pow_minus_one(t.j, mult as u64)
            } else {
                GenericOrder::x_pow_plus_one(t.j, mult as u64)
            };
            g = g.mul(&f);
        }
        g
    }
}

impl fmt::Display for RationalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, &mult) in &self.semisimple {
            let pre = if s.twisted { "^2" } else { "" };
            parts.push(with_mult(format!("{pre}{}({})", s.ty, q_power(s.j)), mult));
        }
        for (t, &mult) in &self.torus {
            let sign = if t.s == 1 { "-" } else { "+" };
            parts.push(with_mult(format!("({}{sign}1)", q_power(t.j)), mult));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

fn ty(family: Family, rank: usize) -> ComponentType {
    ComponentType { family, rank }
}

/// The canonical string predicted by the table for a row.
pub fn expected_levi_type(row: &IsolatedBlockRow) -> String {
    let p = &row.params;
    let mut r = RationalType::default();
    r.add_semisimple(ty(Family::B, p.m), 1, false, 1);
    match row.case_no {
        2 => {
            r.add_semisimple(ty(Family::A, 1), p.d0, false, p.a / 2);
            r.add_torus(p.d0, -p.eps, p.a / 2);
        }
        3 => r.add_torus(p.d0, -1, p.a),
        _ => r.add_torus(p.d0, -p.eps, p.a),
    }
    r.to_string()
}

fn symplectic(k: usize, j: u64) -> String {
    format!("C_{k}({})", q_power(j))
}

fn join_nonempty(parts: Vec<String>) -> String {
    let v: Vec<String> = parts.into_iter().filter(|s| !s.is_empty()).collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.join(" ")
    }
}

fn torus_string(j: u64, s: i64, mult: usize) -> String {
    if mult == 0 {
        return String::new();
    }
    let sign = if s == 1 { "-" } else { "+" };
    with_mult(format!("({}{sign}1)", q_power(j)), mult)
}

fn nonzero(k: usize, s: String) -> String {
    if k == 0 {
        String::new()
    } else {
        s
    }
}

fn base_params(n: usize, m: usize, a: usize, ctx: &EllContext) -> RowParams {
    RowParams { n, m, k: None, l: None, a, t_l: None, d: ctx.d, d0: ctx.d0, eps: ctx.eps() }
}

fn build_row(case_no: u8, params: RowParams) -> IsolatedBlockRow {
    let (n, m, a, d0, eps) = (params.n, params.m, params.a, params.d0, params.eps);
    let (centralizer_type, parity, levi_template, cent_template, cent_type) = match case_no {
        1 => {
            let k = params.k.unwrap_or(0);
            let l = params.l.unwrap_or(0);
            (
                join_nonempty(vec![nonzero(k, symplectic(k, 1)), nonzero(n - k, symplectic(n - k, 1))]),
                None,
                CASE1_TEMPLATE,
                CASE1_CENT_TEMPLATE,
                join_nonempty(vec![
                    nonzero(l, symplectic(l, 1)),
                    nonzero(m - l, symplectic(m - l, 1)),
                    torus_string(d0, -eps, a),
                ]),
            )
        }
        2 => (
            symplectic(n / 2, 2),
            Some(Parity::Odd),
            CASE2_TEMPLATE,
            CASE2_CENT_TEMPLATE,
            join_nonempty(vec![nonzero(m / 2, symplectic(m / 2, 2)), torus_string(2 * d0, 1, a / 2)]),
        ),
        _ => (
            symplectic(n / 2, 2),
            Some(Parity::Even),
            CASE3_TEMPLATE,
            CASE3_CENT_TEMPLATE,
            join_nonempty(vec![nonzero(m / 2, symplectic(m / 2, 2)), torus_string(d0, -1, a)]),
        ),
    };
    let mut row = IsolatedBlockRow {
        case_no,
        centralizer_type,
        d0_parity_constraint: parity,
        levi_template: levi_template.into(),
        levi_type: String::new(),
        levi_centralizer_template: cent_template.into(),
        levi_centralizer_type: cent_type,
        params,
    };
    row.levi_type = expected_levi_type(&row);
    row
}

/// All admissible rows for `B_n(q)` and the given `ℓ`, ordered by row key.
pub fn enumerate_rows(n: usize, ctx: &EllContext) -> Result<Vec<IsolatedBlockRow>> {
    if ctx.ell < 5 {
        return Err(Error::EllTooSmall(ctx.ell));
    }
    if n < 2 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 2")));
    }
    let d0 = ctx.d0 as usize;
    let mut rows = Vec::new();
    for m in 0..=n {
        if (n - m) % d0 != 0 {
            continue;
        }
        let a = (n - m) / d0;
        for k in 0..=n / 2 {
            for l in 0..=m.min(k) {
                if m - l > n - k || (k - l) % d0 != 0 || ((n - k) - (m - l)) % d0 != 0 {
                    continue;
                }
                let mut p = base_params(n, m, a, ctx);
                p.k = Some(k);
                p.l = Some(l);
                rows.push(build_row(1, p));
            }
        }
        if n % 2 == 0 && m % 2 == 0 {
            if d0 % 2 == 1 && a % 2 == 0 {
                let mut p = base_params(n, m, a, ctx);
                p.t_l = Some(a / 2);
                rows.push(build_row(2, p));
            }
            if d0 % 2 == 0 {
                rows.push(build_row(3, base_params(n, m, a, ctx)));
            }
        }
    }
    rows.sort_by_key(|r| r.key());
    Ok(rows)
}

/// Type `B_m` on the letters `n - m + 1, …, n`.
fn type_b_on_tail(n: usize, m: usize) -> RootSubset {
    let mut roots = BTreeSet::new();
    for i in (n - m + 1)..=n {
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

fn datum_from(row: IsolatedBlockRow, root_subset: RootSubset, twist: SignedPermutation) -> LeviDatum {
    let mut datum = LeviDatum { row, root_subset, twist, center_order: GenericOrder::one() };
    datum.center_order = center_generic_order(&datum);
    datum
}

/// The Levi datum for cases 1 and 3: `B_m` on the tail letters, twisted by
/// the Sylow twist `w_0^{2n'/d}` built on the first `n' = n - m` letters.
pub fn case13_levi(n: usize, m: usize, d: usize) -> Result<LeviDatum> {
    if m > n || d == 0 || (2 * (n - m)) % d != 0 {
        return Err(Error::InvalidParameters(format!("d = {d} must divide 2(n - m) (n={n}, m={m})")));
    }
    let d = d as u64;
    let d0 = if d % 2 == 0 { d / 2 } else { d };
    let eps = if d % 2 == 0 { 1 } else { -1 };
    let nprime = n - m;
    let a = nprime / d0 as usize;
    let params = RowParams { n, m, k: Some(0), l: Some(0), a, t_l: None, d, d0, eps };
    let twist = if nprime == 0 {
        SignedPermutation::identity(n)
    } else {
        sylow_twist(nprime, d as usize, n)?
    };
    Ok(datum_from(build_row(1, params), type_b_on_tail(n, m), twist))
}

/// The Levi datum attached to a row.
pub fn levi_datum(row: &IsolatedBlockRow) -> Result<LeviDatum> {
    let p = &row.params;
    match row.case_no {
        2 => {
            let l = p.n - p.m;
            let (subset, twist) = if l == 0 {
                (type_b_roots(p.n), SignedPermutation::identity(p.n))
            } else {
                let t_l = p.a / 2;
                let subset = levi_root_subset(p.n, p.m, p.d0 as usize, t_l)?;
                (subset, coxeter_cycle(l, p.n).pow((2 * l as u64 / p.d) as i64))
            };
            Ok(datum_from(row.clone(), subset, twist))
        }
        _ => {
            let base = case13_levi(p.n, p.m, p.d as usize)?;
            Ok(datum_from(row.clone(), base.root_subset, base.twist))
        }
    }
}

/// Orthogonal complement vector of an `A_r` component supported on `r + 1`
/// letters: `Σ σ_i e_i` with `σ_i e_i - σ_j e_j` spanning the component.
fn a_type_complement(n: usize, comp: &RootSubset) -> Option<Vec<i64>> {
    let support: BTreeSet<usize> = comp.iter().flat_map(|r| r.support()).map(|i| i - 1).collect();
    let rank = comp.component_types().first().map(|t| t.rank).unwrap_or(0);
    if support.len() != rank + 1 {
        return None;
    }
    let mut sigma = vec![0i64; n];
    let first = *support.iter().next()?;
    sigma[first] = 1;
    let mut changed = true;
    while changed {
        changed = false;
        for r in comp.iter() {
            let s = r.support();
            if s.len() != 2 {
                continue;
            }
            let (i, j) = (s[0] - 1, s[1] - 1);
            let (a, b) = (r.coords()[i] as i64, r.coords()[j] as i64);
            if sigma[i] != 0 && sigma[j] == 0 {
                sigma[j] = -sigma[i] * a * b;
                changed = true;
            } else if sigma[j] != 0 && sigma[i] == 0 {
                sigma[i] = -sigma[j] * a * b;
                changed = true;
            }
        }
    }
    Some(sigma)
}

fn same_or_negated(x: &[i64], y: &[i64]) -> Option<i64> {
    if x == y {
        Some(1)
    } else if x.iter().zip(y).all(|(a, b)| *a == -*b) {
        Some(-1)
    } else {
        None
    }
}

/// Lengths and sign products of the cycles of a signed permutation of
/// basis vectors, given as `image[i] = (index, sign)`.
fn signed_cycles(image: &[(usize, i64)]) -> Vec<(u64, i64)> {
    let mut seen = vec![false; image.len()];
    let mut out = Vec::new();
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let (mut i, mut sign, mut len) = (start, 1i64, 0u64);
        loop {
            seen[i] = true;
            let (j, s) = image[i];
            sign *= s;
            len += 1;
            i = j;
            if i == start {
                break;
            }
        }
        out.push((len, sign));
    }
    out
}

fn acts_as_inner(n: usize, comp: &RootSubset, sigma: &SignedPermutation) -> bool {
    reflection_group(n, comp).iter().any(|u| comp.iter().all(|r| u.act_on_root(r) == sigma.act_on_root(r)))
}

fn rational_type(datum: &LeviDatum) -> Result<RationalType> {
    let n = datum.root_subset.ambient_rank;
    let w = &datum.twist;
    let comps = datum.root_subset.components();
    let image_of = |c: &RootSubset| -> Result<usize> {
        let img = RootSubset::new(n, c.iter().map(|r| w.act_on_root(r)));
        comps
            .iter()
            .position(|(_, s)| *s == img)
            .ok_or_else(|| Error::InvalidParameters("root subset is not stable under the twist".into()))
    };
    let perm: Vec<usize> = comps.iter().map(|(_, c)| image_of(c)).collect::<Result<_>>()?;

    let mut out = RationalType::default();
    let mut seen = vec![false; comps.len()];
    for start in 0..comps.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = perm[i];
        }
        let (ct, comp) = &comps[start];
        let outer_possible = matches!(ct.family, Family::A) && ct.rank >= 2 || matches!(ct.family, Family::D) && ct.rank >= 4;
        let twisted = outer_possible && !acts_as_inner(n, comp, &w.pow(len as i64));
        out.add_semisimple(*ct, len, twisted, 1);
    }

    let covered: BTreeSet<usize> = datum.root_subset.iter().flat_map(|r| r.support()).map(|i| i - 1).collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        if !covered.contains(&i) {
            let mut v = vec![0; n];
            v[i] = 1;
            basis.push(v);
        }
    }
    for (ct, comp) in &comps {
        if ct.family == Family::A {
            if let Some(v) = a_type_complement(n, comp) {
                basis.push(v);
            }
        }
    }
    let mut image = Vec::with_capacity(basis.len());
    for v in &basis {
        let wv = w.act_on_vector(v);
        let hit = basis.iter().enumerate().find_map(|(j, b)| same_or_negated(&wv, b).map(|s| (j, s)));
        image.push(hit.ok_or_else(|| Error::InvalidParameters("twist does not permute the torus basis".into()))?);
    }
    for (j, s) in signed_cycles(&image) {
        out.add_torus(j, s, 1);
    }
    Ok(out)
}

/// The rational type of `L^F`, read off from the twist orbits on the
/// components of the root subset and on a basis of the complement.
pub fn levi_rational_type(datum: &LeviDatum) -> Result<String> {
    Ok(rational_type(datum)?.to_string())
}

/// The generic order of `Z°(L)^F`, computed from the twist action.
pub fn levi_center_generic_order(datum: &LeviDatum) -> Result<GenericOrder> {
    Ok(rational_type(datum)?.torus_order())
}

/// The torus part of `C°_{L*}(s)^F` from the last table column.
pub fn center_generic_order(datum: &LeviDatum) -> GenericOrder {
    let p = &datum.row.params;
    let a = p.a as u64;
    match datum.row.case_no {
        2 => GenericOrder::x_pow_minus_one(2 * p.d0, a / 2),
        3 => GenericOrder::x_pow_plus_one(p.d0, a),
        _ if p.eps == -1 => GenericOrder::x_pow_minus_one(p.d0, a),
        _ => GenericOrder::x_pow_plus_one(p.d0, a),
    }
}

/// `v_ℓ` of both center orders, by big-integer evaluation and by summing
/// per-factor valuations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterEllParts {
    pub centralizer_side: u32,
    pub levi_side: u32,
    pub centralizer_side_factorwise: u32,
    pub levi_side_factorwise: u32,
}

impl CenterEllParts {
    pub fn consistent(&self) -> bool {
        self.centralizer_side == self.levi_side
            && self.centralizer_side == self.centralizer_side_factorwise
            && self.levi_side == self.levi_side_factorwise
    }
}

pub fn center_ell_parts(datum: &LeviDatum, ctx: &EllContext) -> Result<CenterEllParts> {
    let levi = levi_center_generic_order(datum)?;
    Ok(CenterEllParts {
        centralizer_side: valuation(&datum.center_order.eval(ctx.q), ctx.ell),
        levi_side: valuation(&levi.eval(ctx.q), ctx.ell),
        centralizer_side_factorwise: datum.center_order.eval_ell_part(ctx),
        levi_side_factorwise: levi.eval_ell_part(ctx),
    })
}

pub fn check_isolated_center_ell_part(datum: &LeviDatum, ctx: &EllContext) -> bool {
    center_ell_parts(datum, ctx).map(|p| p.consistent()).unwrap_or(false)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `|W_{C_{G*}(s)}(C_{L*}(s))|` from the wreath-product formulas.
pub fn relative_weyl_order(row: &IsolatedBlockRow) -> BigInt {
    let p = &row.params;
    let d0 = p.d0 as usize;
    let wreath = |base: usize, t: usize| num_traits::Pow::pow(BigInt::from(base), t) * factorial(t);
    match row.case_no {
        1 => {
            let (k, l) = (p.k.unwrap_or(0), p.l.unwrap_or(0));
            let a1 = (k - l) / d0;
            let a2 = ((p.n - k) - (p.m - l)) / d0;
            wreath(2 * d0, a1) * wreath(2 * d0, a2)
        }
        2 => wreath(2 * d0, p.a / 2),
        _ => wreath(d0, p.a),
    }
}

/// `v_ℓ` of the defect group order.
pub fn defect_order(datum: &LeviDatum, ctx: &EllContext) -> u32 {
    valuation(&relative_weyl_order(&datum.row), ctx.ell) + valuation(&datum.center_order.eval(ctx.q), ctx.ell)
}

/// `X(T) / ℤΦ_L` for the simply connected weight lattice.
pub fn center_component_torsion(datum: &LeviDatum) -> Result<QuotientStructure> {
    quotient_torsion(&spin_weight_lattice(datum.root_subset.ambient_rank), &root_lattice(&datum.root_subset))
}

pub fn has_even_torsion(q: &QuotientStructure) -> bool {
    q.torsion.iter().any(|t| (t % 2u32) == BigInt::from(0))
}

/// One atlas line with every derived quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub case: u8,
    pub params: RowParams,
    pub centralizer_type: String,
    pub levi_template: String,
    pub levi_type: String,
    pub levi_type_computed: String,
    pub levi_centralizer_type: String,
    pub center_order: String,
    pub center_order_factors: BTreeMap<u64, u64>,
    pub levi_center_order: String,
    pub ell_part: u32,
    pub ell_part_identity: bool,
    pub relative_weyl_order: String,
    pub defect_valuation: u32,
    pub center_torsion: Vec<String>,
}

pub fn atlas_entry(row: &IsolatedBlockRow, ctx: &EllContext) -> Result<AtlasEntry> {
    let datum = levi_datum(row)?;
    let parts = center_ell_parts(&datum, ctx)?;
    let torsion = center_component_torsion(&datum)?;
    Ok(AtlasEntry {
        case: row.case_no,
        params: row.params.clone(),
        centralizer_type: row.centralizer_type.clone(),
        levi_template: row.levi_template.clone(),
        levi_type: row.levi_type.clone(),
        levi_type_computed: levi_rational_type(&datum)?,
        levi_centralizer_type: row.levi_centralizer_type.clone(),
        center_order: datum.center_order.to_string(),
        center_order_factors: datum.center_order.cyclo_factors.clone(),
        levi_center_order: levi_center_generic_order(&datum)?.to_string(),
        ell_part: parts.centralizer_side,
        ell_part_identity: parts.consistent(),
        relative_weyl_order: relative_weyl_order(row).to_string(),
        defect_valuation: defect_order(&datum, ctx),
        center_torsion: torsion.torsion.iter().map(|t| t.to_string()).collect(),
    })
}

pub fn atlas(n: usize, ctx: &EllContext) -> Result<Vec<AtlasEntry>> {
    enumerate_rows(n, ctx)?.iter().map(|r| atlas_entry(r, ctx)).collect()
}

/// Aligned markdown table with the table's column layout.
pub fn atlas_markdown(entries: &[AtlasEntry]) -> String {
    let header = [
        "No.", "C°(s)", "d0", "params", "L^F", "C°_L*(s)", "Z°(C) order", "v_l(Z)", "v_l(D)",
    ];
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            let p = &e.params;
            let mut params = format!("m={} a={}", p.m, p.a);
            if let (Some(k), Some(l)) = (p.k, p.l) {
                params.push_str(&format!(" k={k} l={l}"));
            }
            if let Some(t) = p.t_l {
                params.push_str(&format!(" t_l={t}"));
            }
            vec![
                e.case.to_string(),
                e.centralizer_type.clone(),
                p.d0.to_string(),
                params,
                e.levi_type_computed.clone(),
                e.levi_centralizer_type.clone(),
                e.center_order.clone(),
                e.ell_part.to_string(),
                e.defect_valuation.to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    out.push_str(&format!("|{}|\n", widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("|")));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

//! Parameter sweeps over the verification suites, with deterministic report
//! ordering, and the mutation harness that checks the suites can fail.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::{atlas_entry, enumerate_rows, Parity};
use crate::charext::verify_extension_map;
use crate::chevsign::{
    validate_sign_table, verify_commutator_lemmas, verify_graph_action, verify_twisted_frobenius, SignTable,
    ValidationConfig,
};
use crate::cyclo::{
    cyclotomic_poly, e_set, e_set_predicted, is_prime, multiplicative_order, prime_power, valuation, EllContext,
};
use crate::error::{Error, Result};
use crate::params;
use crate::report::{Check, CheckList, VerificationReport};
use crate::tits::supplement::{build_supplement_in, verify_supplement, C1Choice, CaseTwoParams, Supplement};
use crate::tits::verify::{h_l_suite, tits_core_suite, verify_extmap_hypotheses, CoreConfig};
use crate::tits::{CocycleMutation, TitsGroup, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    CycloLemma,
    TitsCore,
    HL,
    Supplement,
    Commutators,
    GraphAction,
    ExtmapHypotheses,
    Charext,
    AtlasEllparts,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::CycloLemma,
        Suite::TitsCore,
        Suite::HL,
        Suite::Supplement,
        Suite::Commutators,
        Suite::GraphAction,
        Suite::ExtmapHypotheses,
        Suite::Charext,
        Suite::AtlasEllparts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CycloLemma => "cyclo-lemma",
            Suite::TitsCore => "tits-core",
            Suite::HL => "h-l",
            Suite::Supplement => "supplement",
            Suite::Commutators => "commutators",
            Suite::GraphAction => "graph-action",
            Suite::ExtmapHypotheses => "extmap-hypotheses",
            Suite::Charext => "charext",
            Suite::AtlasEllparts => "atlas-ellparts",
        }
    }

    fn needs_supplement(self) -> bool {
        matches!(
            self,
            Suite::Supplement | Suite::Commutators | Suite::GraphAction | Suite::ExtmapHypotheses | Suite::Charext
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
}

/// A deliberate defect injected into the objects the suites consume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    /// Negate entry `entry` (in [`SignTable::entries`] order) of the rank-`n` table.
    Sign { n: usize, entry: usize },
    /// Perturb the cocycle of the simple lift `m_generator`.
    Cocycle { generator: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub suites: Vec<Suite>,
    pub d0_values: Vec<usize>,
    pub t_l_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub d_parities: Vec<Parity>,
    pub ell_values: Vec<u64>,
    pub q_values: Vec<u64>,
    /// Ranks for the atlas suite.
    pub n_values: Vec<usize>,
    /// Element cap for subgroup enumeration.
    pub budget: usize,
    /// Largest `l = 2 d_0 t_l` dispatched.
    pub max_l: usize,
    /// Largest `n` for the brute-force relative Weyl group.
    pub relative_weyl_cap: usize,
    /// Largest `k` in the cyclotomic sweep.
    pub k_max: u64,
    pub core: CoreConfig,
    pub validation: ValidationConfig,
    pub format: OutputFormat,
    pub mutation: Option<Mutation>,
    pub timing: bool,
    /// Worker threads; the global pool when `None`.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            d0_values: vec![1, 3],
            t_l_values: vec![1, 2],
            m_values: vec![0, 1],
            d_parities: vec![Parity::Odd, Parity::Even],
            ell_values: vec![5, 7],
            q_values: vec![2, 3, 4],
            n_values: (2..=8).collect(),
            budget: DEFAULT_BUDGET,
            max_l: 18,
            relative_weyl_cap: 8,
            k_max: 30,
            core: CoreConfig::default(),
            validation: ValidationConfig { random_cases: 200, ..ValidationConfig::default() },
            format: OutputFormat::Json,
            mutation: None,
            timing: false,
            jobs: None,
        }
    }
}

/// A case-2 tuple with the prime power `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupTuple {
    pub params: CaseTwoParams,
    pub q: u64,
}

impl SweepConfig {
    /// Rejects values that no filtering can make meaningful.
    pub fn validate(&self) -> Result<()> {
        for &ell in &self.ell_values {
            if !is_prime(ell) || ell == 2 {
                return Err(Error::NotOddPrime(ell));
            }
            if ell < 5 {
                return Err(Error::EllTooSmall(ell));
            }
        }
        for &q in &self.q_values {
            if prime_power(q).is_none() {
                return Err(Error::NotPrimePower(q));
            }
        }
        if self.d0_values.contains(&0) || self.t_l_values.contains(&0) {
            return Err(Error::InvalidParameters("d0 and t_l must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidParameters("jobs must be positive".into()));
        }
        if self.budget == 0 {
            return Err(Error::InvalidParameters("budget must be positive".into()));
        }
        Ok(())
    }

    /// Admissible case-2 tuples: `d_0` odd, `l ≤ max_l` and `q` odd.
    pub fn group_tuples(&self) -> Vec<GroupTuple> {
        let mut out = Vec::new();
        for &d0 in sorted(&self.d0_values).iter().filter(|&&d0| d0 % 2 == 1) {
            for &t_l in sorted(&self.t_l_values).iter().filter(|&&t| 2 * d0 * t <= self.max_l) {
                for &m in &sorted(&self.m_values) {
                    for &parity in &sorted(&self.d_parities) {
                        let d = if parity == Parity::Odd { d0 } else { 2 * d0 };
                        for &q in sorted(&self.q_values).iter().filter(|&&q| q % 2 == 1) {
                            if let Ok(params) = CaseTwoParams::new(d0, t_l, m, d) {
                                out.push(GroupTuple { params, q });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Distinct `(l, d, q)` for the `H_l` suite.
    pub fn h_l_tuples(&self) -> Vec<(usize, usize, u64)> {
        let mut out: Vec<_> = self.group_tuples().iter().map(|t| (t.params.l(), t.params.d, t.q)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// `(ℓ, q)` with `ℓ ∤ q`.
    pub fn ell_q_pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for &ell in &sorted(&self.ell_values) {
            for &q in sorted(&self.q_values).iter().filter(|&&q| q % ell != 0) {
                out.push((ell, q));
            }
        }
        out
    }

    pub fn atlas_tuples(&self) -> Vec<(usize, u64, u64)> {
        let mut out = Vec::new();
        for (ell, q) in self.ell_q_pairs() {
            for &n in sorted(&self.n_values).iter().filter(|&&n| n >= 2) {
                out.push((n, q, ell));
            }
        }
        out
    }

    fn group_for(&self, n: usize) -> TitsGroup {
        let mutation = match self.mutation {
            Some(Mutation::Cocycle { generator }) if generator <= n => Some(CocycleMutation { generator }),
            _ => None,
        };
        TitsGroup::new(n).with_mutation(mutation)
    }
}

fn sorted<T: Ord + Clone>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort();
    v.dedup();
    v
}

fn timed(cfg: &SweepConfig, suite: Suite, params: Vec<(String, String)>, f: impl FnOnce() -> CheckList) -> VerificationReport {
    let start = Instant::now();
    let checks = f();
    let r = VerificationReport::new(suite.name(), params, checks);
    if cfg.timing {
        r.with_timing(start.elapsed())
    } else {
        r
    }
}

fn group_params(t: &GroupTuple) -> Vec<(String, String)> {
    let p = t.params;
    params!(d0 = p.d0, t_l = p.t_l, m = p.m, d = p.d, q = t.q)
}

/// `v_ℓ(q^k ∓ 1) ≤ v_ℓ(Φ_d(q))` with the equality cases, and `E_{q,ℓ}`.
pub fn cyclo_lemma_checks(ell: u64, q: u64, k_max: u64) -> CheckList {
    let mut out = CheckList::new();
    let ctx = match EllContext::new(q, ell) {
        Ok(c) => c,
        Err(e) => {
            out.push(Check::fail("cyclo.context", "d = ord_l(q)", e.to_string()));
            return out;
        }
    };
    let d = ctx.d;
    let phi_d = valuation(&cyclotomic_poly(d).eval(&BigInt::from(q)), ell);
    let qb = BigInt::from(q);
    let mut minus = Ok(());
    let mut plus = Ok(());
    for k in (1..=k_max).filter(|k| k % ell != 0) {
        let qk: BigInt = Pow::pow(&qb, k as u32);
        let vm = valuation(&(&qk - BigInt::one()), ell);
        let vp = valuation(&(&qk + BigInt::one()), ell);
        let eq_m = k % d == 0;
        let eq_p = (2 * k) % d == 0 && k % d != 0;
        if minus.is_ok() && (vm > phi_d || (vm == phi_d) != eq_m) {
            minus = Err(format!("k = {k}: v(q^k - 1) = {vm}, v(Phi_d(q)) = {phi_d}, d = {d}"));
        }
        if plus.is_ok() && (vp > phi_d || (vp == phi_d) != eq_p) {
            plus = Err(format!("k = {k}: v(q^k + 1) = {vp}, v(Phi_d(q)) = {phi_d}, d = {d}"));
        }
    }
    out.push(Check::from_result(
        "cyclo.lemma_minus",
        "(q^k - 1)_l <= Phi_d(q)_l for (k, l) = 1, equality iff d | k",
        minus,
    ));
    out.push(Check::from_result(
        "cyclo.lemma_plus",
        "(q^k + 1)_l <= Phi_d(q)_l for (k, l) = 1, equality iff d | 2k and d does not divide k",
        plus,
    ));
    let order = multiplicative_order(q, ell).ok();
    out.push(Check::expect_eq("cyclo.order", "d = min { j : l | q^j - 1 }", &order, &Some(d)));
    let bound = d * ell * ell;
    let got = e_set(&ctx, bound);
    out.push(
        Check::expect_eq("cyclo.e_set", "E_{q,l} = { d l^i : i >= 0 }", &got, &e_set_predicted(&ctx, bound))
            .with_note(format!("e = d = {d} belongs to E_{{q,l}}; the exponent i starts at 0")),
    );
    out
}

/// Cross-checks of every atlas row at `(n, q, ℓ)`.
pub fn atlas_checks(n: usize, q: u64, ell: u64) -> CheckList {
    let mut out = CheckList::new();
    let ctx = match EllContext::new(q, ell) {
        Ok(c) => c,
        Err(e) => {
            out.push(Check::fail("atlas.context", "d = ord_l(q)", e.to_string()));
            return out;
        }
    };
    let rows = match enumerate_rows(n, &ctx) {
        Ok(r) => r,
        Err(e) => {
            out.push(Check::fail("atlas.rows", "rows of the isolated block table", e.to_string()));
            return out;
        }
    };
    let eps = if ctx.d % 2 == 0 { 1 } else { -1 };
    let mut footnote = Ok(());
    let mut types = Ok(());
    let mut ell_part = Ok(());
    let mut torsion = Ok(());
    for row in &rows {
        let p = &row.params;
        if footnote.is_ok() && (p.a * p.d0 as usize + p.m != n || p.eps != eps) {
            footnote = Err(format!("{:?}: a = {}, eps = {}", row.key(), p.a, p.eps));
        }
        match atlas_entry(row, &ctx) {
            Ok(e) => {
                if types.is_ok() && e.levi_type_computed != e.levi_type {
                    types = Err(format!("{:?}: computed {} vs {}", row.key(), e.levi_type_computed, e.levi_type));
                }
                if ell_part.is_ok() && !e.ell_part_identity {
                    ell_part = Err(format!("{:?}: centre orders {} vs {}", row.key(), e.center_order, e.levi_center_order));
                }
                let even = e.center_torsion.iter().any(|t| t.parse::<BigInt>().is_ok_and(|v| v % 2 == BigInt::from(0)));
                if torsion.is_ok() && row.case_no == 2 && !even {
                    torsion = Err(format!("{:?}: torsion {:?}", row.key(), e.center_torsion));
                }
            }
            Err(err) => {
                types = Err(format!("{:?}: {err}", row.key()));
            }
        }
    }
    out.push(
        Check::from_result("atlas.footnote", "a = (n - m)/d0, eps = (-1)^d", footnote)
            .with_note(format!("{} rows", rows.len())),
    );
    out.push(Check::from_result("atlas.levi_type", "computed L^F matches the table template", types));
    out.push(Check::from_result("atlas.ell_part", "Z(C_{L*}(s))_l = Z(L*)_l", ell_part));
    out.push(Check::from_result(
        "atlas.disconnected_center",
        "case 2: X(T)/ZPhi_L has even torsion",
        torsion,
    ));
    out
}

/// Builds the per-rank sign tables once, applying a sign mutation if present.
fn sign_tables(cfg: &SweepConfig, tuples: &[GroupTuple]) -> BTreeMap<usize, Arc<SignTable>> {
    let mut ns: Vec<usize> = tuples.iter().map(|t| t.params.n()).collect();
    ns.sort();
    ns.dedup();
    ns.into_par_iter()
        .map(|n| {
            let mut table = SignTable::build(n);
            if let Some(Mutation::Sign { n: mn, entry }) = cfg.mutation {
                if mn == n {
                    if let Some((b, a)) = table.entries().get(entry) {
                        table = table.with_flipped(b, a);
                    }
                }
            }
            (n, Arc::new(table))
        })
        .collect()
}

/// Sign-table validation plus the commutator identities.
pub fn commutator_checks(s: &Supplement, table: &SignTable, validation: ValidationConfig) -> CheckList {
    let mut out = validate_sign_table(&s.group, table, validation);
    out.extend(verify_commutator_lemmas(s, table));
    out
}

pub fn graph_action_checks(s: &Supplement, table: &SignTable) -> CheckList {
    let mut out = verify_graph_action(s, table);
    out.extend(verify_twisted_frobenius(s, table));
    out
}

fn supplement_reports(cfg: &SweepConfig, t: &GroupTuple, table: &SignTable) -> Vec<(Suite, VerificationReport)> {
    let suites: Vec<Suite> = cfg.suites.iter().copied().filter(|s| s.needs_supplement()).collect();
    if suites.is_empty() {
        return Vec::new();
    }
    let params = group_params(t);
    let g = cfg.group_for(t.params.n());
    let s = match build_supplement_in(&g, t.params, t.q, cfg.budget, C1Choice::default()) {
        Ok(s) => s,
        Err(e) => {
            return suites
                .into_iter()
                .map(|suite| {
                    let mut c = CheckList::new();
                    c.push(Check::fail("supplement.build", "V' = <c'_1, p'_1, ..., p'_{t_l-1}>", e.to_string()));
                    (suite, VerificationReport::new(suite.name(), params.clone(), c))
                })
                .collect();
        }
    };
    suites
        .into_iter()
        .map(|suite| {
            let r = timed(cfg, suite, params.clone(), || match suite {
                Suite::Supplement => verify_supplement(&s, cfg.relative_weyl_cap),
                Suite::Commutators => commutator_checks(&s, table, cfg.validation),
                Suite::GraphAction => graph_action_checks(&s, table),
                Suite::ExtmapHypotheses => verify_extmap_hypotheses(&s),
                Suite::Charext => verify_extension_map(&s),
                _ => unreachable!("only supplement suites are dispatched here"),
            });
            (suite, r)
        })
        .collect()
}

/// Runs the configured suites; reports are ordered by suite, then tuple.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(|| Ok(sweep(cfg))),
        None => Ok(sweep(cfg)),
    }
}

fn sweep(cfg: &SweepConfig) -> Vec<VerificationReport> {
    let has = |s: Suite| cfg.suites.contains(&s);
    let mut by_suite: BTreeMap<Suite, Vec<VerificationReport>> = BTreeMap::new();

    if has(Suite::CycloLemma) {
        let reports = cfg
            .ell_q_pairs()
            .into_par_iter()
            .map(|(ell, q)| timed(cfg, Suite::CycloLemma, params!(ell = ell, q = q), || cyclo_lemma_checks(ell, q, cfg.k_max)))
            .collect();
        by_suite.insert(Suite::CycloLemma, reports);
    }
    if has(Suite::TitsCore) {
        let core = cfg.core;
        let r = timed(cfg, Suite::TitsCore, params!(max_rank = core.max_rank, closure_rank = core.closure_rank), || {
            tits_core_suite(&|n| cfg.group_for(n), core)
        });
        by_suite.insert(Suite::TitsCore, vec![r]);
    }
    if has(Suite::HL) {
        let reports = cfg
            .h_l_tuples()
            .into_par_iter()
            .map(|(l, d, q)| timed(cfg, Suite::HL, params!(l = l, d = d, q = q), || h_l_suite(&cfg.group_for(l), d, q)))
            .collect();
        by_suite.insert(Suite::HL, reports);
    }

    let tuples = cfg.group_tuples();
    if cfg.suites.iter().any(|s| s.needs_supplement()) {
        let tables = sign_tables(cfg, &tuples);
        let per_tuple: Vec<Vec<(Suite, VerificationReport)>> =
            tuples.par_iter().map(|t| supplement_reports(cfg, t, &tables[&t.params.n()])).collect();
        for (suite, r) in per_tuple.into_iter().flatten() {
            by_suite.entry(suite).or_default().push(r);
        }
    }

    if has(Suite::AtlasEllparts) {
        let reports = cfg
            .atlas_tuples()
            .into_par_iter()
            .map(|(n, q, ell)| timed(cfg, Suite::AtlasEllparts, params!(n = n, q = q, ell = ell), || atlas_checks(n, q, ell)))
            .collect();
        by_suite.insert(Suite::AtlasEllparts, reports);
    }

    let mut out = Vec::new();
    for suite in &cfg.suites {
        if let Some(rs) = by_suite.remove(suite) {
            out.extend(rs);
        }
    }
    out
}

/// Outcome of one injected mutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationOutcome {
    pub mutation: Mutation,
    pub detected: bool,
    /// Failing check id and its counterexample.
    pub witness: Option<(String, String)>,
}

fn first_failure(c: &CheckList) -> Option<(String, String)> {
    c.failures().next().map(|f| (f.id.clone(), f.counterexample.clone()))
}

/// Flips each entry of the rank-`n` sign table and runs the commutator suite
/// on the supplement at `params`.
pub fn sign_flip_harness(params: CaseTwoParams, q: u64, validation: ValidationConfig) -> Result<Vec<MutationOutcome>> {
    let n = params.n();
    let s = build_supplement_in(&TitsGroup::new(n), params, q, DEFAULT_BUDGET, C1Choice::default())?;
    let table = SignTable::full(n);
    let entries = table.entries();
    Ok(entries
        .par_iter()
        .enumerate()
        .map(|(k, (b, a))| {
            let flipped = table.with_flipped(b, a);
            let witness = first_failure(&commutator_checks(&s, &flipped, validation));
            MutationOutcome { mutation: Mutation::Sign { n, entry: k }, detected: witness.is_some(), witness }
        })
        .collect())
}

/// Perturbs the cocycle of each simple lift `m_1, …, m_{core.max_rank}` and
/// runs the multiplication suite.
pub fn cocycle_harness(core: CoreConfig) -> Vec<MutationOutcome> {
    (1..=core.max_rank)
        .into_par_iter()
        .map(|i| {
            let group_for = |n: usize| TitsGroup::new(n).with_mutation((i <= n).then_some(CocycleMutation { generator: i }));
            let witness = first_failure(&tits_core_suite(&group_for, core));
            MutationOutcome { mutation: Mutation::Cocycle { generator: i }, detected: witness.is_some(), witness }
        })
        .collect()
}

/// Structure of `V'` for one case-2 tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub params: CaseTwoParams,
    pub n: usize,
    pub v_order: usize,
    pub c_order: usize,
    pub p_order: usize,
    pub h_order: usize,
    /// `c'_1, …, c'_{t_l}` in normal form `[torus | signed permutation]`.
    pub c_primes: Vec<String>,
    pub p_primes: Vec<String>,
    /// `(i, j, k)` with `(c'_i)^{p'_j} = c'_k`, or `k = 0` when the conjugate
    /// is not one of the `c'`.
    pub conjugation: Vec<(usize, usize, usize)>,
}

pub fn group_summary(params: CaseTwoParams, q: u64, budget: usize) -> Result<GroupSummary> {
    let g = TitsGroup::new(params.n());
    let s = build_supplement_in(&g, params, q, budget, C1Choice::default())?;
    let mut conjugation = Vec::new();
    for (j, p) in s.p_primes.iter().enumerate() {
        for (i, c) in s.c_primes.iter().enumerate() {
            let x = g.conj(c, p);
            let k = s.c_primes.iter().position(|y| *y == x).map_or(0, |k| k + 1);
            conjugation.push((i + 1, j + 1, k));
        }
    }
    Ok(GroupSummary {
        params,
        n: params.n(),
        v_order: s.v_group.order(),
        c_order: s.c_group.order(),
        p_order: s.p_group.order(),
        h_order: s.h_prime.order(),
        c_primes: s.c_primes.iter().map(|x| x.to_string()).collect(),
        p_primes: s.p_primes.iter().map(|x| x.to_string()).collect(),
        conjugation,
    })
}

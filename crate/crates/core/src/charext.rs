//! Linear characters of `H'`, their inertia groups in `V'`, an equivariant
//! extension map for `H' ⊲ V'`, and character degrees of `C_m ≀ 𝔖_t`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::prime_power;
use crate::error::{Error, Result};
use crate::report::{Check, CheckList};
use crate::tits::supplement::Supplement;
use crate::tits::{GeneratedSubgroup, MonomialElement, TitsGroup};

/// An enumerated finite group with left multiplication tables for its
/// generators; elements are addressed by index.
#[derive(Clone, Debug)]
pub struct IndexedGroup {
    elements: Vec<MonomialElement>,
    index: HashMap<MonomialElement, usize>,
    tables: Vec<Vec<usize>>,
    /// `x = g_{w_0} g_{w_1} ⋯` for `w = words[x]`.
    words: Vec<Vec<u16>>,
    inverse: Vec<usize>,
}

impl IndexedGroup {
    pub fn new(g: &TitsGroup, s: &GeneratedSubgroup) -> Result<Self> {
        let elements = s.elements().to_vec();
        let index: HashMap<MonomialElement, usize> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let find = |x: &MonomialElement| {
            index.get(x).copied().ok_or_else(|| Error::InvalidParameters(format!("{x:?} escaped the group")))
        };
        let mut tables = Vec::with_capacity(s.generators.len());
        for gen in &s.generators {
            tables.push(elements.iter().map(|y| find(&g.mul(gen, y))).collect::<Result<Vec<_>>>()?);
        }
        let id = find(&g.identity())?;
        let mut words: Vec<Option<Vec<u16>>> = vec![None; elements.len()];
        words[id] = Some(Vec::new());
        let mut queue = VecDeque::from([id]);
        while let Some(y) = queue.pop_front() {
            for (j, t) in tables.iter().enumerate() {
                let x = t[y];
                if words[x].is_none() {
                    let mut w = vec![j as u16];
                    w.extend(words[y].as_ref().expect("visited"));
                    words[x] = Some(w);
                    queue.push_back(x);
                }
            }
        }
        let words: Vec<Vec<u16>> = words
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::InvalidParameters("generators do not generate the group".into())))
            .collect::<Result<_>>()?;
        let inverse = elements.iter().map(|x| find(&g.inverse(x))).collect::<Result<Vec<_>>>()?;
        Ok(Self { elements, index, tables, words, inverse })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &MonomialElement {
        &self.elements[i]
    }

    pub fn position(&self, x: &MonomialElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn identity(&self) -> usize {
        self.words.iter().position(|w| w.is_empty()).expect("identity")
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.words[x].iter().rev().fold(y, |acc, &j| self.tables[j as usize][acc])
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, e: usize) -> usize {
        (0..e).fold(self.identity(), |acc, _| self.mul(x, acc))
    }

    /// `x⁻¹ y x`.
    pub fn conj(&self, y: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), y), x)
    }

    /// `x y x⁻¹`.
    pub fn conj_left(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// Closure of the given elements, in breadth-first order.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let id = self.identity();
        let mut seen = vec![false; self.order()];
        seen[id] = true;
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let y = out[k];
            for &gen in gens {
                let x = self.mul(gen, y);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            k += 1;
        }
        out
    }
}

/// A character of the elementary abelian group `H'`, given by its signs on
/// the basis `h_0, (p'_1)^2, …, (p'_{t_l-1})^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignCharacter {
    pub signs: Vec<u8>,
}

impl SignCharacter {
    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 0)
    }
}

/// A linear character of a subgroup of an [`IndexedGroup`], with values
/// `ζ_M^{e}` stored as exponents `e mod M`.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    pub modulus: u32,
    pub generators: Vec<usize>,
    pub generator_values: Vec<u32>,
    /// Elements of the subgroup in closure order.
    pub members: Vec<usize>,
    values: Vec<Option<u32>>,
}

impl LinearCharacter {
    pub fn value(&self, x: usize) -> Option<u32> {
        self.values.get(x).copied().flatten()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.iter().all(|&x| self.values[x] == Some(0))
    }
}

/// Builds the homomorphism determined by generator values on the closure of
/// the generators, checking consistency on every edge of the Cayley graph.
pub fn character_from_generators(
    grp: &IndexedGroup,
    generators: Vec<usize>,
    generator_values: Vec<u32>,
    modulus: u32,
) -> Result<LinearCharacter> {
    let id = grp.identity();
    let mut values: Vec<Option<u32>> = vec![None; grp.order()];
    values[id] = Some(0);
    let mut members = vec![id];
    let mut k = 0;
    while k < members.len() {
        let y = members[k];
        let vy = values[y].expect("visited");
        for (&gen, &gv) in generators.iter().zip(&generator_values) {
            let x = grp.mul(gen, y);
            let v = (gv + vy) % modulus;
            match values[x] {
                Some(prev) if prev != v => {
                    return Err(Error::NoExtension(format!(
                        "inconsistent value at {:?}: {prev} vs {v} (mod {modulus})",
                        grp.element(x)
                    )));
                }
                Some(_) => {}
                None => {
                    values[x] = Some(v);
                    members.push(x);
                }
            }
        }
        k += 1;
    }
    Ok(LinearCharacter { modulus, generators, generator_values, members, values })
}

/// The inertia group `V'_λ` and its pieces, as element indices.
#[derive(Clone, Debug)]
pub struct Inertia {
    pub character: SignCharacter,
    /// Brute-force stabilizer of `λ` in `V'`.
    pub stabilizer: Vec<usize>,
    pub p_lambda: Vec<usize>,
    pub p_lambda_generators: Vec<usize>,
}

/// Orbit data of the transported extension map.
#[derive(Clone, Debug)]
pub struct ExtensionMap {
    pub representatives: Vec<SignCharacter>,
    /// For each character: its representative, a transporting element `x`
    /// with `rep^x = λ`, and the extension.
    pub entries: BTreeMap<SignCharacter, (SignCharacter, usize, LinearCharacter)>,
}

impl ExtensionMap {
    pub fn get(&self, lam: &SignCharacter) -> Option<&LinearCharacter> {
        self.entries.get(lam).map(|e| &e.2)
    }
}

pub struct ExtensionContext<'a> {
    pub supplement: &'a Supplement,
    /// `V'` with indexed elements.
    pub group: IndexedGroup,
    /// `lcm(4 d_0, 2)`.
    pub modulus: u32,
    basis: Vec<usize>,
    coords: Vec<Option<u32>>,
    c_primes: Vec<usize>,
    c_members: Vec<usize>,
    p_members: Vec<usize>,
    h0: usize,
}

impl<'a> ExtensionContext<'a> {
    pub fn new(s: &'a Supplement) -> Result<Self> {
        let g = &s.group;
        let group = IndexedGroup::new(g, &s.v_group)?;
        let locate = |x: &MonomialElement| {
            group.position(x).ok_or_else(|| Error::InvalidParameters(format!("{x:?} is not in V'")))
        };
        let h0 = locate(&g.torus(s.h0.clone()))?;
        let mut basis = vec![h0];
        for p in &s.p_primes {
            basis.push(locate(&g.mul(p, p))?);
        }
        let r = basis.len();
        let mut coords = vec![None; group.order()];
        let mut hits = 0;
        for mask in 0u32..(1 << r) {
            let x = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(group.identity(), |acc, (_, &b)| group.mul(b, acc));
            if coords[x].is_none() {
                hits += 1;
            }
            coords[x] = Some(mask);
        }
        if hits != 1 << r || s.h_prime.order() != 1 << r {
            return Err(Error::InvalidParameters(format!(
                "H' is not elementary abelian of rank {r} (order {})",
                s.h_prime.order()
            )));
        }
        let c_primes = s.c_primes.iter().map(locate).collect::<Result<Vec<_>>>()?;
        let c_members = s.c_group.elements().iter().map(locate).collect::<Result<Vec<_>>>()?;
        let p_members = s.p_group.elements().iter().map(locate).collect::<Result<Vec<_>>>()?;
        let modulus = (4 * s.params.d0 as u32).lcm(&2);
        Ok(Self { supplement: s, group, modulus, basis, coords, c_primes, c_members, p_members, h0 })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// All `2^{rank}` characters in lexicographic order of sign vectors.
    pub fn irr_h_prime(&self) -> Vec<SignCharacter> {
        let r = self.rank();
        let mut out: Vec<SignCharacter> = (0u32..(1 << r))
            .map(|mask| SignCharacter { signs: (0..r).map(|i| (mask >> i & 1) as u8).collect() })
            .collect();
        out.sort();
        out
    }

    /// `λ(h)` as an exponent mod the modulus; `None` off `H'`.
    pub fn eval(&self, lam: &SignCharacter, h: usize) -> Option<u32> {
        let mask = self.coords[h]?;
        let parity = lam.signs.iter().enumerate().filter(|(i, &s)| s == 1 && mask >> i & 1 == 1).count() % 2;
        Some(parity as u32 * self.modulus / 2)
    }

    /// `λ^x(h) = λ(x h x⁻¹)`.
    pub fn act(&self, lam: &SignCharacter, x: usize) -> SignCharacter {
        let signs = self
            .basis
            .iter()
            .map(|&b| {
                let e = self.eval(lam, self.group.conj_left(x, b)).expect("V' normalises H'");
                (e / (self.modulus / 2)) as u8
            })
            .collect();
        SignCharacter { signs }
    }

    fn fixes(&self, lam: &SignCharacter, x: usize) -> bool {
        self.basis.iter().all(|&b| self.eval(lam, self.group.conj_left(x, b)) == self.eval(lam, b))
    }

    /// Stabilizer of `λ` in `V'` by brute force, and `P'_λ` inside `P'`.
    pub fn inertia(&self, lam: &SignCharacter) -> Result<Inertia> {
        let stabilizer: Vec<usize> = (0..self.group.order()).filter(|&x| self.fixes(lam, x)).collect();
        let p_elems: Vec<usize> = self.p_members.iter().copied().filter(|&x| self.fixes(lam, x)).collect();
        let mut gens: Vec<usize> = Vec::new();
        let mut closure: HashSet<usize> = HashSet::from([self.group.identity()]);
        for &x in &p_elems {
            if !closure.contains(&x) {
                gens.push(x);
                closure = self.group.closure(&gens).into_iter().collect();
            }
        }
        if closure.len() != p_elems.len() {
            return Err(Error::InvalidParameters("stabilizer in P' is not a subgroup".into()));
        }
        Ok(Inertia {
            character: lam.clone(),
            stabilizer,
            p_lambda: self.group.closure(&gens),
            p_lambda_generators: gens,
        })
    }

    /// `V'_λ = C' ⋊ P'_λ` as sets.
    pub fn check_inertia_decomposition(&self, inertia: &Inertia) -> std::result::Result<(), String> {
        let stab: HashSet<usize> = inertia.stabilizer.iter().copied().collect();
        let mut products = HashSet::new();
        for &x in &self.c_members {
            for &p in &inertia.p_lambda {
                products.insert(self.group.mul(x, p));
            }
        }
        if products.len() != self.c_members.len() * inertia.p_lambda.len() {
            return Err(format!("C' ∩ P'_λ is nontrivial for λ = {:?}", inertia.character.signs));
        }
        if products != stab {
            return Err(format!(
                "|V'_λ| = {} but |C'||P'_λ| = {} for λ = {:?}",
                stab.len(),
                products.len(),
                inertia.character.signs
            ));
        }
        Ok(())
    }

    /// The value exponent on every `c'_i`.
    pub fn c_prime_exponent(&self, lam: &SignCharacter) -> u32 {
        u32::from(lam.signs[0] == 1)
    }

    /// The least exponent vector on the generators of `P'_λ` that extends
    /// `λ` restricted to `P'_λ ∩ H'`.
    fn solve_p_lambda(&self, lam: &SignCharacter, inertia: &Inertia) -> Result<Vec<u32>> {
        let gens = &inertia.p_lambda_generators;
        let k = gens.len();
        if k == 0 {
            return Ok(Vec::new());
        }
        let m = self.modulus as i64;
        let grp = &self.group;
        let mut word: HashMap<usize, Vec<i64>> = HashMap::from([(grp.identity(), vec![0; k])]);
        let mut relations: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::from([grp.identity()]);
        while let Some(y) = queue.pop_front() {
            let wy = word[&y].clone();
            for (j, &gen) in gens.iter().enumerate() {
                let x = grp.mul(gen, y);
                let mut wx = wy.clone();
                wx[j] += 1;
                match word.get(&x) {
                    Some(prev) => {
                        let rel: Vec<i64> = prev.iter().zip(&wx).map(|(a, b)| (a - b).rem_euclid(m)).collect();
                        if rel.iter().any(|&r| r != 0) {
                            relations.insert(rel);
                        }
                    }
                    None => {
                        word.insert(x, wx);
                        queue.push_back(x);
                    }
                }
            }
        }
        let mut relations: Vec<Vec<i64>> = relations.into_iter().collect();
        relations.sort();
        let mut targets: Vec<(Vec<i64>, i64)> = Vec::new();
        for &x in &inertia.p_lambda {
            if let Some(e) = self.eval(lam, x) {
                targets.push((word[&x].clone(), e as i64));
            }
        }
        let total = (m as u64).pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let x: Vec<i64> = (0..k)
                .map(|_| {
                    let d = (c % m as u64) as i64;
                    c /= m as u64;
                    d
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect();
            let dot = |v: &[i64]| v.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m);
            if relations.iter().all(|r| dot(r) == 0) && targets.iter().all(|(w, e)| dot(w) == *e) {
                return Ok(x.into_iter().map(|v| v as u32).collect());
            }
        }
        Err(Error::NoExtension(format!("no character of P'_λ extends λ = {:?}", lam.signs)))
    }

    /// A linear character of `V'_λ` restricting to `λ`: equal values on the
    /// `c'_i`, `λ` on `H'`, and the least solution on `P'_λ`.
    pub fn extend(&self, lam: &SignCharacter) -> Result<LinearCharacter> {
        let inertia = self.inertia(lam)?;
        self.extend_with(lam, &inertia)
    }

    pub fn extend_with(&self, lam: &SignCharacter, inertia: &Inertia) -> Result<LinearCharacter> {
        let e = self.c_prime_exponent(lam);
        let mut gens: Vec<usize> = self.c_primes.clone();
        let mut vals: Vec<u32> = vec![e; gens.len()];
        for &b in &self.basis {
            gens.push(b);
            vals.push(self.eval(lam, b).expect("basis element"));
        }
        let p_vals = self.solve_p_lambda(lam, inertia)?;
        gens.extend(inertia.p_lambda_generators.iter().copied());
        vals.extend(p_vals);
        character_from_generators(&self.group, gens, vals, self.modulus)
    }

    /// Conjugated character `χ^x(y) = χ(x y x⁻¹)` on `x⁻¹ V'_λ x`.
    pub fn transport(&self, chi: &LinearCharacter, x: usize) -> LinearCharacter {
        let grp = &self.group;
        let mut values = vec![None; grp.order()];
        let members: Vec<usize> = chi.members.iter().map(|&y| grp.conj(y, x)).collect();
        for (&y, &z) in chi.members.iter().zip(&members) {
            values[z] = chi.values[y];
        }
        LinearCharacter {
            modulus: chi.modulus,
            generators: chi.generators.iter().map(|&y| grp.conj(y, x)).collect(),
            generator_values: chi.generator_values.clone(),
            members,
            values,
        }
    }

    /// Extends lexicographically least orbit representatives and transports
    /// along the first element of `V'` reaching each orbit member.
    pub fn extension_map(&self) -> Result<ExtensionMap> {
        let mut entries = BTreeMap::new();
        let mut reps = Vec::new();
        for lam in self.irr_h_prime() {
            if entries.contains_key(&lam) {
                continue;
            }
            let ext = self.extend(&lam)?;
            reps.push(lam.clone());
            for x in 0..self.group.order() {
                let mu = self.act(&lam, x);
                if !entries.contains_key(&mu) {
                    let chi = if mu == lam { ext.clone() } else { self.transport(&ext, x) };
                    entries.insert(mu, (lam.clone(), x, chi));
                }
            }
        }
        Ok(ExtensionMap { representatives: reps, entries })
    }
}

/// Checks `Λ(λ^x) = Λ(λ)^x` for the given elements `x`.
pub fn verify_equivariance(ctx: &ExtensionContext, map: &ExtensionMap, xs: &[usize]) -> std::result::Result<(), String> {
    let grp = &ctx.group;
    for (lam, (_, _, chi)) in &map.entries {
        for &x in xs {
            let mu = ctx.act(lam, x);
            let target = map.get(&mu).ok_or_else(|| format!("no extension for {:?}", mu.signs))?;
            if target.order() != chi.order() {
                return Err(format!("|V'_λ^x| != |V'_λ| for λ = {:?}", lam.signs));
            }
            for &y in &target.members {
                let val = target.value(y);
                let other = chi.value(grp.conj_left(x, y));
                if other != val {
                    return Err(format!(
                        "Λ(λ^x)({:?}) = {val:?} but Λ(λ)(x y x⁻¹) = {other:?} for λ = {:?}, x = {:?}",
                        grp.element(y),
                        lam.signs,
                        grp.element(x)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Exhaustive when `|V'| ≤` this bound; generators only otherwise.
pub const EQUIVARIANCE_EXHAUSTIVE_CAP: usize = 1000;
pub const RANDOM_PAIRS: usize = 1000;

/// Summary of one extension, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSummary {
    pub signs: Vec<u8>,
    pub representative: Vec<u8>,
    pub inertia_order: usize,
    pub p_lambda_order: usize,
    /// Exponents mod `modulus` on `c'_1, …, c'_{t_l}`, the basis of `H'`
    /// and the generators of `P'_λ`.
    pub generator_values: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharextReport {
    pub d0: usize,
    pub t_l: usize,
    pub modulus: u32,
    pub characters: Vec<ExtensionSummary>,
    pub equivariant: bool,
}

fn v_generators(ctx: &ExtensionContext) -> Vec<usize> {
    ctx.supplement.v_group.generators.iter().filter_map(|x| ctx.group.position(x)).collect()
}

pub fn charext_report(s: &Supplement) -> Result<CharextReport> {
    let ctx = ExtensionContext::new(s)?;
    let map = ctx.extension_map()?;
    let mut characters = Vec::new();
    for (lam, (rep, _, chi)) in &map.entries {
        let inertia = ctx.inertia(lam)?;
        characters.push(ExtensionSummary {
            signs: lam.signs.clone(),
            representative: rep.signs.clone(),
            inertia_order: inertia.stabilizer.len(),
            p_lambda_order: inertia.p_lambda.len(),
            generator_values: chi.generator_values.clone(),
        });
    }
    let equivariant = verify_equivariance(&ctx, &map, &v_generators(&ctx)).is_ok();
    Ok(CharextReport { d0: s.params.d0, t_l: s.params.t_l, modulus: ctx.modulus, characters, equivariant })
}

fn check_multiplicative(
    grp: &IndexedGroup,
    chi: &LinearCharacter,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(), String> {
    let m = chi.modulus;
    for (&gen, &gv) in chi.generators.iter().zip(&chi.generator_values) {
        for &x in &chi.members {
            let xv = chi.value(x).expect("member");
            if chi.value(grp.mul(gen, x)) != Some((gv + xv) % m) {
                return Err(format!("χ(g x) != χ(g) χ(x) for g = {:?}, x = {:?}", grp.element(gen), grp.element(x)));
            }
        }
    }
    let els = &chi.members;
    for _ in 0..RANDOM_PAIRS {
        let (x, y) = (els[rng.gen_range(0..els.len())], els[rng.gen_range(0..els.len())]);
        let (vx, vy) = (chi.value(x).expect("member"), chi.value(y).expect("member"));
        if chi.value(grp.mul(x, y)) != Some((vx + vy) % m) {
            return Err(format!("χ(x y) != χ(x) χ(y) for x = {:?}, y = {:?}", grp.element(x), grp.element(y)));
        }
    }
    Ok(())
}

/// Every statement about the extension map for `H' ⊲ V'`.
pub fn verify_extension_map(s: &Supplement) -> CheckList {
    let mut out = CheckList::new();
    let ctx = match ExtensionContext::new(s) {
        Ok(c) => c,
        Err(e) => {
            out.push(Check::fail("charext.context", "H' = <h_0> x <(p'_k)^2>", e.to_string()));
            return out;
        }
    };
    let grp = &ctx.group;
    let t = s.params.t_l;
    let irr = ctx.irr_h_prime();

    out.push(Check::from_result(
        "charext.irr_count",
        "|Irr(H')| = 2^{t_l}",
        if irr.len() == 1 << t && irr.iter().any(|l| l.is_trivial()) {
            Ok(())
        } else {
            Err(format!("{} characters for t_l = {t}", irr.len()))
        },
    ));

    out.push(Check::from_result(
        "charext.c_fixes",
        "λ^c = λ for c ∈ C'",
        irr.iter()
            .find_map(|l| {
                ctx.c_members
                    .iter()
                    .find(|&&c| !ctx.fixes(l, c))
                    .map(|&c| format!("{:?} moves {:?}", grp.element(c), l.signs))
            })
            .map_or(Ok(()), Err),
    ));

    let mut inertias = Vec::new();
    let mut decomposition = Ok(());
    for l in &irr {
        match ctx.inertia(l) {
            Ok(i) => {
                if decomposition.is_ok() {
                    decomposition = ctx.check_inertia_decomposition(&i);
                }
                inertias.push(i);
            }
            Err(e) => {
                decomposition = Err(e.to_string());
                break;
            }
        }
    }
    out.push(Check::from_result("charext.inertia", "V'_λ = C' ⋊ P'_λ", decomposition));
    if inertias.len() != irr.len() {
        return out;
    }

    let mut direct = Vec::new();
    let mut exist = Ok(());
    for (l, i) in irr.iter().zip(&inertias) {
        match ctx.extend_with(l, i) {
            Ok(chi) => direct.push(chi),
            Err(e) => {
                exist = Err(format!("λ = {:?}: {e}", l.signs));
                break;
            }
        }
    }
    out.push(Check::from_result("charext.extension_exists", "λ extends to V'_λ", exist));
    if direct.len() != irr.len() {
        return out;
    }

    let m = ctx.modulus;
    let two_d0 = 2 * s.params.d0;
    let c1 = ctx.c_primes[0];
    let mut c_value = Ok(());
    let mut stable = Ok(());
    for ((l, chi), i) in irr.iter().zip(&direct).zip(&inertias) {
        let e = chi.value(c1).unwrap_or(u32::MAX);
        let ok = if l.signs[0] == 1 { e.gcd(&m) == 1 } else { (two_d0 as u32 * e) % m == 0 };
        if !ok && c_value.is_ok() {
            c_value = Err(format!("Λ(λ)(c'_1) = ζ^{e} (mod {m}) for λ = {:?}", l.signs));
        }
        let sq = chi.value(grp.pow(c1, two_d0));
        if sq != ctx.eval(l, ctx.h0) && c_value.is_ok() {
            c_value = Err(format!("Λ(λ)((c'_1)^{{2d_0}}) = {sq:?} differs from λ(h_0) for λ = {:?}", l.signs));
        }
        if ctx.c_primes.iter().any(|&c| chi.value(c) != Some(e)) && c_value.is_ok() {
            c_value = Err(format!("values on the c'_i differ for λ = {:?}", l.signs));
        }
        for &p in &i.p_lambda_generators {
            for &c in &ctx.c_primes {
                if chi.value(grp.conj(c, p)) != chi.value(c) && stable.is_ok() {
                    stable = Err(format!("θ̂ not stable under {:?} at {:?}", grp.element(p), grp.element(c)));
                }
            }
        }
    }
    out.push(Check::from_result(
        "charext.c_value",
        "θ̂(c'_i) = θ̂(c'_1); primitive 4d_0-th root iff λ(h_0) = -1",
        c_value,
    ));
    out.push(Check::from_result("charext.theta_stable", "θ̂ is P'_λ-stable", stable));
    out.push(Check::from_result(
        "charext.trivial",
        "Λ(1) = 1",
        if direct[0].is_trivial() { Ok(()) } else { Err("extension of the trivial character is not trivial".into()) },
    ));

    let map = match ctx.extension_map() {
        Ok(m) => m,
        Err(e) => {
            out.push(Check::fail("charext.extension_map", "Λ defined on Irr(H')", e.to_string()));
            return out;
        }
    };

    let h_members: Vec<usize> = (0..grp.order()).filter(|&x| ctx.coords[x].is_some()).collect();
    let mut restriction = Ok(());
    let mut mult = Ok(());
    let mut rng = ChaCha8Rng::seed_from_u64(0xe47);
    for (l, (_, _, chi)) in &map.entries {
        for &h in &h_members {
            if chi.value(h) != ctx.eval(l, h) && restriction.is_ok() {
                restriction =
                    Err(format!("Λ(λ)({:?}) = {:?} != λ(h) for λ = {:?}", grp.element(h), chi.value(h), l.signs));
            }
        }
        if mult.is_ok() {
            mult = check_multiplicative(grp, chi, &mut rng);
        }
    }
    out.push(Check::from_result("charext.restriction", "Res_{H'} Λ(λ) = λ", restriction));
    out.push(Check::from_result("charext.multiplicative", "Λ(λ)(xy) = Λ(λ)(x) Λ(λ)(y)", mult));

    let xs: Vec<usize> =
        if grp.order() <= EQUIVARIANCE_EXHAUSTIVE_CAP { (0..grp.order()).collect() } else { v_generators(&ctx) };
    out.push(
        Check::from_result("charext.equivariance", "Λ(λ^x) = Λ(λ)^x for x ∈ V'", verify_equivariance(&ctx, &map, &xs))
            .with_note(format!("{} orbit representatives, {} elements x", map.representatives.len(), xs.len())),
    );

    let g = &s.group;
    let p = prime_power(s.q).map(|(p, _)| p).unwrap_or(s.q);
    out.push(
        Check::from_result(
            "charext.e_centralizes",
            "E centralizes V'",
            s.v_group
                .elements()
                .iter()
                .find(|x| g.frobenius_untwisted(x, p) != **x)
                .map_or(Ok(()), |x| Err(format!("F_{p} moves {x:?}"))),
        )
        .with_note("E acts through F_p; other E-actions were not exercised"),
    );
    out
}

/// A tuple of partitions, each weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multipartition {
    pub components: Vec<Vec<usize>>,
}

impl Multipartition {
    pub fn size(&self) -> usize {
        self.components.iter().flatten().sum()
    }
}

/// Partitions of `t` in reverse lexicographic order.
pub fn partitions(t: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(t, t, &mut Vec::new(), &mut out);
    out
}

pub fn multipartitions(m: usize, t: usize) -> Vec<Multipartition> {
    fn go(m: usize, rest: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Multipartition>) {
        if cur.len() == m {
            if rest == 0 {
                out.push(Multipartition { components: cur.clone() });
            }
            return;
        }
        let upper = if cur.len() + 1 == m { rest } else { 0 };
        for size in (upper..=rest).rev() {
            for p in partitions(size) {
                cur.push(p);
                go(m, rest - size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, t, &mut Vec::new(), &mut out);
    out
}

/// Number of standard tableaux by the hook length formula.
pub fn standard_tableaux(shape: &[usize]) -> u64 {
    let n: usize = shape.iter().sum();
    let mut hooks: u128 = 1;
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u128;
        }
    }
    (factorial(n) / hooks) as u64
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

pub const WREATH_BUDGET: u128 = 10_000_000;

/// Irreducible degrees of `C_m ≀ 𝔖_t`, one per `m`-multipartition of `t`.
pub fn wreath_irreducibles(m: usize, t: usize) -> Result<Vec<(Multipartition, u64)>> {
    if m == 0 || t == 0 {
        return Err(Error::InvalidParameters("m and t must be positive".into()));
    }
    let order = (m as u128).checked_pow(t as u32).and_then(|x| x.checked_mul(factorial(t)));
    if order.map_or(true, |o| o > WREATH_BUDGET) {
        return Err(Error::BudgetExceeded { what: "wreath product order".into(), limit: WREATH_BUDGET as usize });
    }
    Ok(multipartitions(m, t)
        .into_iter()
        .map(|mp| {
            let mut deg = factorial(t);
            for c in &mp.components {
                deg /= factorial(c.iter().sum());
            }
            let deg = deg as u64 * mp.components.iter().map(|c| standard_tableaux(c)).product::<u64>();
            (mp, deg)
        })
        .collect())
}

pub fn wreath_character_degrees(m: usize, t: usize) -> Result<Vec<u64>> {
    let mut d: Vec<u64> = wreath_irreducibles(m, t)?.into_iter().map(|(_, d)| d).collect();
    d.sort_unstable();
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_wreath() {
        assert_eq!(wreath_character_degrees(2, 1).unwrap(), vec![1, 1]);
        assert_eq!(wreath_character_degrees(2, 2).unwrap(), vec![1, 1, 1, 1, 2]);
        assert_eq!(wreath_character_degrees(1, 3).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(standard_tableaux(&[3, 2]), 5);
        assert_eq!(standard_tableaux(&[2, 2, 1]), 5);
        assert_eq!(standard_tableaux(&[]), 1);
    }
}

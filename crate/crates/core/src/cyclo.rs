//! Cyclotomic polynomials, multiplicative orders and ℓ-adic valuations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Returns `(p, f)` with `q = p^f` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q % p == 0)?;
    let mut r = q;
    let mut f = 0;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Order of `q` modulo the odd prime `ell`.
pub fn multiplicative_order(q: u64, ell: u64) -> Result<u64> {
    if ell % 2 == 0 || !is_prime(ell) {
        return Err(Error::NotOddPrime(ell));
    }
    if q % ell == 0 {
        return Err(Error::EllDividesQ { ell, q });
    }
    let r = q % ell;
    let mut x = r;
    let mut d = 1;
    while x != 1 {
        x = x * r % ell;
        d += 1;
    }
    Ok(d)
}

/// `ℓ`-adic valuation of a nonzero integer.
pub fn valuation(x: &BigInt, ell: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let ell = BigInt::from(ell);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&ell);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

pub fn valuation_u64(x: u64, ell: u64) -> u32 {
    valuation(&BigInt::from(x), ell)
}

/// A monic integer polynomial, coefficients listed from degree zero.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloPoly {
    pub coefficients: Vec<BigInt>,
}

impl CycloPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &CycloPoly) -> CycloPoly {
        let mut c = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CycloPoly { coefficients: c }
    }

    /// `x^e - 1`.
    pub fn x_pow_minus_one(e: usize) -> CycloPoly {
        let mut c = vec![BigInt::zero(); e + 1];
        c[0] = BigInt::from(-1);
        c[e] = BigInt::one();
        CycloPoly { coefficients: c }
    }

    /// Exact division by a monic polynomial; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &CycloPoly) -> Option<CycloPoly> {
        let mut r = self.coefficients.clone();
        let dd = divisor.degree();
        if r.len() < divisor.coefficients.len() {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone();
            if !c.is_zero() {
                for (j, b) in divisor.coefficients.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.iter().all(|x| x.is_zero()).then_some(CycloPoly { coefficients: q })
    }
}

impl fmt::Debug for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "x".to_string(),
                (1, false) => format!("{mag}x"),
                (_, true) => format!("x^{k}"),
                (_, false) => format!("{mag}x^{k}"),
            };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (i, (sign, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(body);
        }
        f.write_str(&s)
    }
}

pub fn divisors(e: u64) -> Vec<u64> {
    (1..=e).filter(|f| e % f == 0).collect()
}

pub fn euler_phi(e: u64) -> u64 {
    (1..=e).filter(|&k| k.gcd(&e) == 1).count() as u64
}

/// `Φ_e`, computed by dividing `x^e - 1` by `Φ_f` for the proper divisors `f`.
pub fn cyclotomic_poly(e: u64) -> CycloPoly {
    assert!(e >= 1, "cyclotomic index must be positive");
    let mut cache: BTreeMap<u64, CycloPoly> = BTreeMap::new();
    cyclotomic_cached(e, &mut cache)
}

fn cyclotomic_cached(e: u64, cache: &mut BTreeMap<u64, CycloPoly>) -> CycloPoly {
    if let Some(p) = cache.get(&e) {
        return p.clone();
    }
    let mut p = CycloPoly::x_pow_minus_one(e as usize);
    for f in divisors(e) {
        if f < e {
            let phi_f = cyclotomic_cached(f, cache);
            p = p.div_exact(&phi_f).expect("Φ_f divides x^e - 1");
        }
    }
    cache.insert(e, p.clone());
    p
}

/// The arithmetic data attached to a pair `(q, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllContext {
    pub ell: u64,
    pub q: u64,
    pub d: u64,
    pub d0: u64,
}

impl EllContext {
    /// Any integer `q ≥ 2` coprime to the odd prime `ℓ`.
    pub fn new(q: u64, ell: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameters(format!("q = {q} must be at least 2")));
        }
        let d = multiplicative_order(q, ell)?;
        let d0 = if d % 2 == 0 { d / 2 } else { d };
        Ok(Self { ell, q, d, d0 })
    }

    /// Single-letter sign `(-1)^d`.
    pub fn eps(&self) -> i64 {
        if self.d % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn mobius(mut n: u64) -> i8 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        -mu
    } else {
        mu
    }
}

/// `Φ_e(x) = Π_{f | e} (x^f - 1)^{μ(e/f)}` at an integer `x ≥ 2`.
pub fn cyclotomic_value(e: u64, x: u64) -> BigInt {
    assert!(e >= 1 && x >= 2);
    let base = BigInt::from(x);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for f in divisors(e) {
        let v: BigInt = Pow::pow(&base, f as u32) - 1u32;
        match mobius(e / f) {
            1 => num *= v,
            -1 => den *= v,
            _ => {}
        }
    }
    num / den
}

pub fn ell_valuation_phi(e: u64, ctx: &EllContext) -> u32 {
    valuation(&cyclotomic_value(e, ctx.q), ctx.ell)
}

/// All `e ≤ bound` with `ℓ | Φ_e(q)`.
pub fn e_set(ctx: &EllContext, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&e| ell_valuation_phi(e, ctx) > 0).collect()
}

/// The predicted set `{d ℓ^i | i ≥ 0} ∩ [1, bound]`.
pub fn e_set_predicted(ctx: &EllContext, bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut e = ctx.d;
    while e <= bound {
        out.push(e);
        e *= ctx.ell;
    }
    out
}

pub fn split_degree_descent(d: u64, k: u64) -> u64 {
    assert!(d >= 1 && k >= 1);
    d / d.gcd(&k)
}

/// `q^{q_power} · Π Φ_e(q)^{mult_e}`.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GenericOrder {
    pub q_power: u64,
    pub cyclo_factors: BTreeMap<u64, u64>,
}

impl GenericOrder {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn phi(e: u64, mult: u64) -> Self {
        let mut g = Self::default();
        if mult > 0 {
            g.cyclo_factors.insert(e, mult);
        }
        g
    }

    pub fn q_pow(k: u64) -> Self {
        Self { q_power: k, cyclo_factors: BTreeMap::new() }
    }

    /// `(x^k - 1)^mult` as a product of cyclotomic factors.
    pub fn x_pow_minus_one(k: u64, mult: u64) -> Self {
        let mut g = Self::default();
        if mult > 0 {
            for f in divisors(k) {
                g.cyclo_factors.insert(f, mult);
            }
        }
        g
    }

    /// `(x^k + 1)^mult`: the `Φ_f` with `f | 2k`, `f ∤ k`.
    pub fn x_pow_plus_one(k: u64, mult: u64) -> Self {
        let mut g = Self::default();
        if mult > 0 {
            for f in divisors(2 * k) {
                if k % f != 0 {
                    g.cyclo_factors.insert(f, mult);
                }
            }
        }
        g
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut g = self.clone();
        g.q_power += other.q_power;
        for (&e, &m) in &other.cyclo_factors {
            *g.cyclo_factors.entry(e).or_insert(0) += m;
        }
        g.cyclo_factors.retain(|_, m| *m > 0);
        g
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut g = Self::one();
        for _ in 0..k {
            g = g.mul(self);
        }
        g
    }

    pub fn eval(&self, q: u64) -> BigInt {
        let qb = BigInt::from(q);
        let mut acc: BigInt = Pow::pow(&qb, self.q_power);
        for (&e, &m) in &self.cyclo_factors {
            let v = cyclotomic_poly(e).eval(&qb);
            acc *= Pow::pow(&v, m);
        }
        acc
    }

    /// ℓ-adic valuation via the per-factor valuations.
    pub fn eval_ell_part(&self, ctx: &EllContext) -> u32 {
        self.cyclo_factors.iter().map(|(&e, &m)| m as u32 * ell_valuation_phi(e, ctx)).sum()
    }
}

impl fmt::Debug for GenericOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GenericOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.q_power > 0 {
            parts.push(if self.q_power == 1 { "q".to_string() } else { format!("q^{}", self.q_power) });
        }
        for (&e, &m) in &self.cyclo_factors {
            parts.push(if m == 1 { format!("Phi{e}") } else { format!("Phi{e}^{m}") });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

pub fn generic_order_eval_ell_part(g: &GenericOrder, ctx: &EllContext) -> u32 {
    g.eval_ell_part(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1).to_string(), "x - 1");
        assert_eq!(cyclotomic_poly(4).to_string(), "x^2 + 1");
        assert_eq!(cyclotomic_poly(12).to_string(), "x^4 - x^2 + 1");
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }

    #[test]
    fn order_errors() {
        assert!(multiplicative_order(3, 4).is_err());
        assert!(multiplicative_order(10, 5).is_err());
        assert!(multiplicative_order(3, 9).is_err());
    }
}

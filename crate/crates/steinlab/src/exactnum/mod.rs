//! Exact scalar arithmetic underneath everything else: arbitrary-precision
//! rationals, prime-exponent vectors, membership in finitely generated
//! multiplicative subgroups of Q^×, and sign-exact evaluation of numbers of
//! the form r + u·ln2 + v·ln3.
//!
//! Nothing in this module (or this crate) touches floating point.

mod logcoord;
pub(crate) mod zlin;

pub use logcoord::{cmp_b_ln2_minus_a_ln3, rational_ratio, LogCoord};

use crate::error::Error;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Arbitrary-precision rational, always reduced with positive denominator.
///
/// Those invariants are exactly `BigRational`'s canonical form, so the alias
/// is the whole type; the helpers below add the string conventions used at
/// the serialization boundary ("num/den", or "num" for integers).
pub type Rational = num_rational::BigRational;

/// The reduced rational n/d. Panics if `d == 0`; meant for literals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer n as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse "num/den" or "num" (optionally signed, whitespace-tolerant).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = |reason: String| Error::ParseRational {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|e| bad(format!("bad numerator: {e}")))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|e| bad(format!("bad denominator: {e}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad("denominator is zero".into()));
    }
    Ok(Rational::new(n, d))
}

/// Serde adapter: rationals as `"num/den"` strings (`"num"` when integral).
pub mod ratio_string {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// A positive rational as a finite prime ↦ exponent map (nonzero exponents
/// only, so equal rationals have equal maps).
///
/// This is the exact logarithm of Q_{>0}: multiplying rationals adds exponent
/// vectors, which turns multiplicative questions — membership in the subgroup
/// generated by a slope set, say — into integer linear algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeExpVec {
    exps: BTreeMap<BigUint, i64>,
}

impl PrimeExpVec {
    /// The empty vector, i.e. the rational 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, p: &BigUint) -> i64 {
        self.exps.get(p).copied().unwrap_or(0)
    }

    /// (prime, exponent) pairs in increasing prime order.
    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, i64)> {
        self.exps.iter().map(|(p, &e)| (p, e))
    }

    /// Factor a positive rational; zero and negatives are rejected.
    pub fn factor_rational(q: &Rational) -> Result<Self, Error> {
        if !q.is_positive() {
            return Err(Error::NonPositive {
                what: "factorization input",
                value: q.to_string(),
            });
        }
        let num = Self::factor_natural(q.numer().magnitude().clone());
        let den = Self::factor_natural(q.denom().magnitude().clone());
        Ok(num.mul(&den.inverse()))
    }

    /// Factor n ≥ 1 by trial division. Once the divisor's square exceeds the
    /// remaining cofactor, that cofactor is prime, so no primality test is
    /// needed for termination.
    pub fn factor_natural(mut n: BigUint) -> Self {
        assert!(!n.is_zero(), "factor_natural(0)");
        let two = BigUint::from(2u32);
        let mut exps = BTreeMap::new();
        let mut d = two.clone();
        while !n.is_one() {
            if &d * &d > n {
                *exps.entry(n.clone()).or_insert(0) += 1;
                break;
            }
            let mut e = 0i64;
            loop {
                let (q, r) = n.div_rem(&d);
                if r.is_zero() {
                    n = q;
                    e += 1;
                } else {
                    break;
                }
            }
            if e != 0 {
                exps.insert(d.clone(), e);
            }
            d += if d == two { 1u32 } else { 2u32 };
        }
        PrimeExpVec { exps }
    }

    pub fn inverse(&self) -> Self {
        PrimeExpVec {
            exps: self.exps.iter().map(|(p, &e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps.clone();
        for (p, &e) in &other.exps {
            let v = exps.entry(p.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                exps.remove(p);
            }
        }
        PrimeExpVec { exps }
    }

    /// Multiply the vector back out; exact inverse of `factor_rational`.
    pub fn to_rational(&self) -> Rational {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, &e) in &self.exps {
            let pw = p.pow(u32::try_from(e.unsigned_abs()).expect("exponent fits u32"));
            if e > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Does x lie in Z[1/p₁…pₖ], i.e. does its reduced denominator factor
/// completely over `primes`? The entries must be prime.
pub fn in_break_module(x: &Rational, primes: &[u64]) -> bool {
    let mut den = x.denom().magnitude().clone();
    for &p in primes {
        let p = BigUint::from(p);
        loop {
            let (q, r) = den.div_rem(&p);
            if r.is_zero() {
                den = q;
            } else {
                break;
            }
        }
    }
    den.is_one()
}

/// Express q as a product of integer powers of `gens`, if possible.
///
/// Returns one exponent vector (an entry per generator, in input order) with
/// ∏ gensᵢ^eᵢ = q, or `None` when q lies outside the subgroup of Q^× the
/// generators span. Decided exactly: everything is factored over the primes
/// dividing the generators and the resulting integer linear system is solved
/// in Hermite form — no exponent search, no bounds.
pub fn in_slope_group(q: &Rational, gens: &[u64]) -> Result<Option<Vec<i64>>, Error> {
    if gens.is_empty() {
        return Err(Error::EmptySlopeSet);
    }
    if let Some(&g) = gens.iter().find(|&&g| g < 2) {
        return Err(Error::BadSlopeGenerator { value: g });
    }
    if !q.is_positive() {
        return Err(Error::NonPositive {
            what: "slope",
            value: q.to_string(),
        });
    }

    let factored: Vec<PrimeExpVec> = gens
        .iter()
        .map(|&g| PrimeExpVec::factor_natural(BigUint::from(g)))
        .collect();
    let mut primes: Vec<BigUint> = factored
        .iter()
        .flat_map(|f| f.iter().map(|(p, _)| p.clone()))
        .collect();
    primes.sort();
    primes.dedup();

    // q must factor over the same primes; strip them and check the residue,
    // rather than fully factoring q (whose cofactors we never need).
    let target = match exponents_over(q, &primes) {
        Some(v) => v,
        None => return Ok(None),
    };

    // Solve A·e = target over Z, where column j of A is generator j's
    // exponent vector over `primes`.
    let a: Vec<Vec<BigInt>> = primes
        .iter()
        .map(|p| factored.iter().map(|f| BigInt::from(f.exponent(p))).collect())
        .collect();
    let b: Vec<BigInt> = target.iter().map(|&e| BigInt::from(e)).collect();
    Ok(zlin::solve(&a, &b).map(|e| {
        e.iter()
            .map(|x| i64::try_from(x).expect("slope exponent fits i64"))
            .collect()
    }))
}

/// Exponent vector of q over exactly the given primes, or `None` if other
/// prime factors remain.
fn exponents_over(q: &Rational, primes: &[BigUint]) -> Option<Vec<i64>> {
    let mut num = q.numer().magnitude().clone();
    let mut den = q.denom().magnitude().clone();
    let mut exps = Vec::with_capacity(primes.len());
    for p in primes {
        let mut e = 0i64;
        loop {
            let (qt, r) = num.div_rem(p);
            if r.is_zero() {
                num = qt;
                e += 1;
            } else {
                break;
            }
        }
        loop {
            let (qt, r) = den.div_rem(p);
            if r.is_zero() {
                den = qt;
                e -= 1;
            } else {
                break;
            }
        }
        exps.push(e);
    }
    (num.is_one() && den.is_one()).then_some(exps)
}

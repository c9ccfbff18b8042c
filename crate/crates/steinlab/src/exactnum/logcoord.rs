//! Exact signs for numbers of the form r + u·ln2 + v·ln3 (r, u, v rational).
//!
//! Since 1, ln2 and ln3 are linearly independent over Q, such a number is
//! zero exactly when all three coordinates are zero, and otherwise has a
//! decidable sign: pure rational and pure logarithmic values reduce to
//! integer comparisons (2^m·3^n against 1), and genuinely mixed values are
//! squeezed between rational interval enclosures of ln2 and ln3 whose
//! precision doubles until the interval misses zero — which it must, the
//! value being provably nonzero.

use super::{rat, rat_int, ratio_string, Rational};
use crate::error::Error;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Mutex;

/// The coordinates (r, u, v) of r + u·ln2 + v·ln3 in the Q-vector space
/// spanned by 1, ln2, ln3. Equality of coordinates is equality of the real
/// numbers they denote, so `PartialEq` is exact value equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogCoord {
    /// Coefficient of 1.
    #[serde(rename = "one", with = "ratio_string")]
    pub r: Rational,
    /// Coefficient of ln2.
    #[serde(rename = "ln2", with = "ratio_string")]
    pub u: Rational,
    /// Coefficient of ln3.
    #[serde(rename = "ln3", with = "ratio_string")]
    pub v: Rational,
}

impl LogCoord {
    pub fn new(r: Rational, u: Rational, v: Rational) -> Self {
        LogCoord { r, u, v }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero())
    }

    /// u·ln2 + v·ln3 — the form log-slopes take.
    pub fn pure_log(u: Rational, v: Rational) -> Self {
        Self::new(Rational::zero(), u, v)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.r * c, &self.u * c, &self.v * c)
    }

    /// Exact sign of the real number: `Less`/`Equal`/`Greater` against zero.
    ///
    /// Starts interval refinement at the precision given by the
    /// `STEINLAB_PRECISION_BITS` environment variable (default 64).
    pub fn sign(&self) -> Ordering {
        self.sign_from_bits(initial_precision_bits())
    }

    /// Like [`LogCoord::sign`] with an explicit starting precision.
    pub fn sign_from_bits(&self, initial_bits: u32) -> Ordering {
        if self.u.is_zero() && self.v.is_zero() {
            return rational_sign(&self.r);
        }
        if self.r.is_zero() {
            if let Some(ord) = pure_log_sign(&self.u, &self.v) {
                return ord;
            }
            // Exponents too large to compare as integer powers; intervals
            // below handle the pure-log shape just as well.
        }
        self.interval_sign(initial_bits.clamp(8, 1 << 26))
    }

    /// Interval refinement: evaluate r + u·ln2 + v·ln3 over rational
    /// enclosures of the logarithms, doubling precision until zero is
    /// excluded. Terminates for every nonzero value; the cap only guards
    /// against an astronomically tiny (mathematically impossible: the value
    /// is provably irrational here) near-zero escape.
    fn interval_sign(&self, initial_bits: u32) -> Ordering {
        let mut bits = initial_bits;
        loop {
            let ln2 = ln2_enclosure(bits);
            let ln3 = ln3_enclosure(bits);
            let t2 = scale_interval(&self.u, &ln2);
            let t3 = scale_interval(&self.v, &ln3);
            let lo = &self.r + &t2.0 + &t3.0;
            let hi = &self.r + &t2.1 + &t3.1;
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            assert!(
                bits < (1 << 26),
                "sign refinement exhausted 2^26 bits on {self}"
            );
            bits = bits.saturating_mul(2);
        }
    }
}

impl Add for &LogCoord {
    type Output = LogCoord;
    fn add(self, rhs: &LogCoord) -> LogCoord {
        LogCoord::new(&self.r + &rhs.r, &self.u + &rhs.u, &self.v + &rhs.v)
    }
}

impl Sub for &LogCoord {
    type Output = LogCoord;
    fn sub(self, rhs: &LogCoord) -> LogCoord {
        LogCoord::new(&self.r - &rhs.r, &self.u - &rhs.u, &self.v - &rhs.v)
    }
}

impl Neg for &LogCoord {
    type Output = LogCoord;
    fn neg(self) -> LogCoord {
        LogCoord::new(-&self.r, -&self.u, -&self.v)
    }
}

impl fmt::Display for LogCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, name) in [(&self.r, ""), (&self.u, "*ln2"), (&self.v, "*ln3")] {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}{name}")?;
                first = false;
            } else {
                let connective = if c.is_negative() { " - " } else { " + " };
                write!(f, "{connective}{}{name}", c.abs())?;
            }
        }
        Ok(())
    }
}

/// Exact sign of b·ln2 − a·ln3, as `Ordering` against zero.
///
/// Equivalent to comparing 2^b with 3^a; with the signs folded into the
/// exponents this is the integer comparison 2^{b⁺}·3^{a⁻} vs 2^{b⁻}·3^{a⁺},
/// and equality happens only at a = b = 0 (unique factorization).
pub fn cmp_b_ln2_minus_a_ln3(a: i64, b: i64) -> Ordering {
    LogCoord::pure_log(rat_int(b), -rat_int(a)).sign()
}

/// c with x = c·y (componentwise, hence as real values), if any. Rejects
/// y = 0, where proportionality is meaningless.
pub fn rational_ratio(x: &LogCoord, y: &LogCoord) -> Result<Option<Rational>, Error> {
    if y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let c = if !y.r.is_zero() {
        &x.r / &y.r
    } else if !y.u.is_zero() {
        &x.u / &y.u
    } else {
        &x.v / &y.v
    };
    Ok((*x == y.scale(&c)).then_some(c))
}

fn rational_sign(q: &Rational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of u·ln2 + v·ln3 by pure integer arithmetic: clear denominators to
/// m·ln2 + n·ln3 and compare 2^{m⁺}·3^{n⁺} with 2^{m⁻}·3^{n⁻}. Returns
/// `None` when the exponents are too large to exponentiate comfortably (the
/// interval path then decides instead).
fn pure_log_sign(u: &Rational, v: &Rational) -> Option<Ordering> {
    use num_integer::Integer;
    let l = u.denom().lcm(v.denom());
    let m: BigInt = u.numer() * (&l / u.denom());
    let n: BigInt = v.numer() * (&l / v.denom());
    let big = BigInt::from(1u64 << 20);
    if m.abs() > big || n.abs() > big {
        return None;
    }
    let exp = |x: &BigInt| u32::try_from(x.max(&BigInt::zero())).expect("checked above");
    let lhs = BigUint::from(2u32).pow(exp(&m)) * BigUint::from(3u32).pow(exp(&n));
    let rhs = BigUint::from(2u32).pow(exp(&(-&m))) * BigUint::from(3u32).pow(exp(&(-&n)));
    Some(lhs.cmp(&rhs))
}

/// c·[lo, hi] with the endpoint swap for negative c.
fn scale_interval(c: &Rational, iv: &(Rational, Rational)) -> (Rational, Rational) {
    if c.is_negative() {
        (c * &iv.1, c * &iv.0)
    } else {
        (c * &iv.0, c * &iv.1)
    }
}

/// Initial precision for interval refinement, from STEINLAB_PRECISION_BITS
/// (default 64; unparsable or out-of-range values fall back to the default).
fn initial_precision_bits() -> u32 {
    static BITS: Lazy<u32> = Lazy::new(|| {
        std::env::var("STEINLAB_PRECISION_BITS")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .filter(|b| (8..=65536).contains(b))
            .unwrap_or(64)
    });
    *BITS
}

static LN2_CACHE: Lazy<Mutex<BTreeMap<u32, (Rational, Rational)>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));
static LN3_CACHE: Lazy<Mutex<BTreeMap<u32, (Rational, Rational)>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Rational enclosure of ln2 with width below 2^−bits: ln2 = 2·atanh(1/3).
pub(crate) fn ln2_enclosure(bits: u32) -> (Rational, Rational) {
    cached(&LN2_CACHE, bits, || atanh_enclosure(3, bits))
}

/// Rational enclosure of ln3 with width below 2^−bits: ln3 = 2·atanh(1/2).
pub(crate) fn ln3_enclosure(bits: u32) -> (Rational, Rational) {
    cached(&LN3_CACHE, bits, || atanh_enclosure(2, bits))
}

fn cached(
    cache: &Mutex<BTreeMap<u32, (Rational, Rational)>>,
    bits: u32,
    compute: impl FnOnce() -> (Rational, Rational),
) -> (Rational, Rational) {
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let v = compute();
    cache
        .lock()
        .unwrap()
        .insert(bits, v.clone());
    v
}

/// Exact-rational enclosure of 2·atanh(1/w) = 2·Σ_{k≥0} w^−(2k+1)/(2k+1).
///
/// The series is alternating-free with terms shrinking by w², so after N
/// terms the tail is at most t_N · w²/(w²−1) where t_N is the first omitted
/// term — a rigorous (not merely heuristic) bracket.
fn atanh_enclosure(w: u32, bits: u32) -> (Rational, Rational) {
    let wi = i64::from(w);
    let x2 = rat(1, wi * wi);
    let bits_per_term = (w * w).ilog2(); // ≥ 2, a safe underestimate
    let terms = i64::from(bits / bits_per_term + 2);
    let mut sum = Rational::zero();
    let mut power = rat(1, wi); // w^−(2k+1)
    for k in 0..terms {
        sum += &power / rat_int(2 * k + 1);
        power *= &x2;
    }
    sum *= rat_int(2);
    let tail =
        rat_int(2) * &power / rat_int(2 * terms + 1) * rat(wi * wi, wi * wi - 1);
    (sum.clone(), sum + tail)
}

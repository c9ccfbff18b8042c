//! The groups F_S[lo, hi] and their character theory.
//!
//! For a finite set S of integers ≥ 2, F_S[lo, hi] is the group of
//! orientation-preserving PL homeomorphisms of [lo, hi] whose slopes lie in
//! the multiplicative group ⟨S⟩ ≤ Q₊ and whose breakpoints lie in the
//! module Z[1/N], N = ∏S. The classical cases are Thompson's group F
//! (S = {2}) and the Stein group F_{2,3} (S = {2, 3}), whose
//! abelianization is Z⁴ with coordinates
//!
//!   χ₀²(f), χ₀³(f) = exponents of 2 and 3 in the initial slope f′(lo⁺),
//!   χ₁²(f), χ₁³(f) = exponents of 2 and 3 in the final slope f′(hi⁻).
//!
//! Real characters are spanned by those four together with
//! λ = ln2·χ₀² + ln3·χ₀³ (log of the initial slope) and
//! ρ = ln2·χ₁² + ln3·χ₁³ (log of the final slope). A [`Character`] here is
//! a rational combination q1χ₀² + q2χ₀³ + q3χ₁² + q4χ₁³ + sλ + tρ: that
//! domain contains every classification boundary, and on it all value
//! comparisons are exactly decidable as [`LogCoord`] signs.

use crate::error::Error;
use crate::exactnum::{
    in_break_module, in_slope_group, rat_int, rational_ratio, LogCoord, PrimeExpVec, Rational,
};
use crate::plmap::PLMap;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A concrete group F_S[lo, hi]: slope generators, derived break primes,
/// and the supporting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    slopes: Vec<u64>,
    break_primes: Vec<u64>,
    lo: Rational,
    hi: Rational,
}

impl GroupSpec {
    /// F_S[lo, hi]. The generators must be ≥ 2; the endpoints must lie in
    /// the break module Z[1/∏S].
    pub fn new(mut slopes: Vec<u64>, lo: Rational, hi: Rational) -> Result<Self, Error> {
        if slopes.is_empty() {
            return Err(Error::EmptySlopeSet);
        }
        for &s in &slopes {
            if s < 2 {
                return Err(Error::BadSlopeGenerator { value: s });
            }
        }
        slopes.sort_unstable();
        slopes.dedup();
        if lo >= hi {
            return Err(Error::BadConfig {
                reason: format!("empty interval [{lo}, {hi}]"),
            });
        }
        let mut break_primes: Vec<u64> = Vec::new();
        for &s in &slopes {
            for (p, _) in PrimeExpVec::factor_natural(BigUint::from(s)).iter() {
                let p: u64 = p.try_into().expect("prime factor of a u64 fits in u64");
                if !break_primes.contains(&p) {
                    break_primes.push(p);
                }
            }
        }
        break_primes.sort_unstable();
        for x in [&lo, &hi] {
            if !in_break_module(x, &break_primes) {
                return Err(Error::EndpointNotInModule { x: x.to_string() });
            }
        }
        Ok(GroupSpec {
            slopes,
            break_primes,
            lo,
            hi,
        })
    }

    /// Thompson's group F = F_{2}[0, 1].
    pub fn f() -> Self {
        Self::f_n(2).expect("2 is a valid slope generator")
    }

    /// F_n = F_{n}[0, 1].
    pub fn f_n(n: u64) -> Result<Self, Error> {
        Self::new(vec![n], rat_int(0), rat_int(1))
    }

    /// The Stein group F_{2,3}[0, 1].
    pub fn f23() -> Self {
        Self::new(vec![2, 3], rat_int(0), rat_int(1)).expect("unit interval is in Z[1/6]")
    }

    /// F_{2,3}[u, v] on an arbitrary Z[1/6] interval.
    pub fn f23_on(lo: Rational, hi: Rational) -> Result<Self, Error> {
        Self::new(vec![2, 3], lo, hi)
    }

    /// F_S^r = F_S[0, r].
    pub fn f_s_r(slopes: Vec<u64>, r: Rational) -> Result<Self, Error> {
        Self::new(slopes, rat_int(0), r)
    }

    pub fn slopes(&self) -> &[u64] {
        &self.slopes
    }

    pub fn break_primes(&self) -> &[u64] {
        &self.break_primes
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// ∏ of the break primes: the break module is Z[1/N].
    fn break_denominator(&self) -> u64 {
        self.break_primes.iter().product()
    }

    /// Decide membership of f in this group, with a diagnosis naming the
    /// first violation in left-to-right order: a slope violation lives on
    /// the open interval of its piece, so it precedes the breakpoint at the
    /// piece's right end. A map on the wrong interval is an error, not a
    /// non-member.
    pub fn is_member(&self, f: &PLMap) -> Result<MembershipReport, Error> {
        if *f.lo() != self.lo || *f.hi() != self.hi {
            return Err(Error::IntervalMismatch {
                expected_lo: self.lo.to_string(),
                expected_hi: self.hi.to_string(),
                found_lo: f.lo().to_string(),
                found_hi: f.hi().to_string(),
            });
        }
        if !f.is_self_map() {
            let (clo, chi) = f.codomain();
            return Ok(MembershipReport::violation(format!(
                "endpoints not fixed: the map sends [{}, {}] onto [{clo}, {chi}]",
                self.lo, self.hi
            )));
        }
        let n = self.break_denominator();
        let points = f.points();
        for i in 0..points.len() - 1 {
            if i > 0 {
                // The y-coordinate is checked for completeness, but when
                // everything to the left already passed it is automatically
                // in the module (y = lo + Σ slopeⱼ·Δxⱼ over good pieces),
                // so only x-coordinates can actually be named first.
                let (x, y) = &points[i];
                for (label, v) in [("x", x), ("y", y)] {
                    if !in_break_module(v, &self.break_primes) {
                        return Ok(MembershipReport::violation(format!(
                            "breakpoint ({x}, {y}): {label}-coordinate {v} is not in Z[1/{n}]"
                        )));
                    }
                }
            }
            let (x0, y0) = &points[i];
            let (x1, y1) = &points[i + 1];
            let slope = (y1 - y0) / (x1 - x0);
            if in_slope_group(&slope, &self.slopes)?.is_none() {
                return Ok(MembershipReport::violation(format!(
                    "slope {slope} on [{x0}, {x1}] is not in the group generated by {:?}",
                    self.slopes
                )));
            }
        }
        Ok(MembershipReport::member())
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupSpecJson {
            slopes: self.slopes.clone(),
            interval: [self.lo.to_string(), self.hi.to_string()],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GroupSpecJson::deserialize(d)?;
        let lo = crate::exactnum::parse_rational(&raw.interval[0]).map_err(D::Error::custom)?;
        let hi = crate::exactnum::parse_rational(&raw.interval[1]).map_err(D::Error::custom)?;
        GroupSpec::new(raw.slopes, lo, hi).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupSpecJson {
    slopes: Vec<u64>,
    interval: [String; 2],
}

/// Outcome of a membership test: either a member, or the first violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub is_member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<String>,
}

impl MembershipReport {
    fn member() -> Self {
        MembershipReport {
            is_member: true,
            diagnosis: None,
        }
    }

    fn violation(diagnosis: String) -> Self {
        MembershipReport {
            is_member: false,
            diagnosis: Some(diagnosis),
        }
    }
}

/// Abelianization coordinates of an element of F_{2,3}[lo, hi]:
/// (χ₀², χ₀³, χ₁², χ₁³) = exponents of 2 and 3 in the initial slope,
/// then in the final slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AbVector {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    pub m4: i64,
}

impl AbVector {
    pub fn new(m1: i64, m2: i64, m3: i64, m4: i64) -> Self {
        AbVector { m1, m2, m3, m4 }
    }

    pub fn zero() -> Self {
        AbVector::new(0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        *self == AbVector::zero()
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.m1, self.m2, self.m3, self.m4]
    }
}

impl Add for AbVector {
    type Output = AbVector;
    fn add(self, o: AbVector) -> AbVector {
        AbVector::new(self.m1 + o.m1, self.m2 + o.m2, self.m3 + o.m3, self.m4 + o.m4)
    }
}

impl Neg for AbVector {
    type Output = AbVector;
    fn neg(self) -> AbVector {
        AbVector::new(-self.m1, -self.m2, -self.m3, -self.m4)
    }
}

impl fmt::Display for AbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.m1, self.m2, self.m3, self.m4)
    }
}

impl Serialize for AbVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [m1, m2, m3, m4] = <[i64; 4]>::deserialize(d)?;
        Ok(AbVector::new(m1, m2, m3, m4))
    }
}

/// Require f ∈ F_{2,3}[f.lo, f.hi], turning a violation into an error.
fn require_f23_member(f: &PLMap) -> Result<(), Error> {
    let spec = GroupSpec::f23_on(f.lo().clone(), f.hi().clone())?;
    let report = spec.is_member(f)?;
    if report.is_member {
        Ok(())
    } else {
        Err(Error::NotAMember {
            diagnosis: report.diagnosis.unwrap_or_default(),
        })
    }
}

/// Exponents of 2 and 3 in a slope already known to lie in ⟨2, 3⟩.
fn slope_exponents(slope: &Rational) -> (i64, i64) {
    let vec = PrimeExpVec::factor_rational(slope).expect("slopes are positive");
    (vec.exponent(&BigUint::from(2u32)), vec.exponent(&BigUint::from(3u32)))
}

/// The four abelianization coordinates of f ∈ F_{2,3}[lo, hi]: exponents of
/// the initial slope, then of the final slope.
pub fn chi_endpoints(f: &PLMap) -> Result<AbVector, Error> {
    require_f23_member(f)?;
    let (m1, m2) = slope_exponents(&f.initial_slope());
    let (m3, m4) = slope_exponents(&f.final_slope());
    Ok(AbVector::new(m1, m2, m3, m4))
}

/// λ(f) = ln f′(lo⁺) and ρ(f) = ln f′(hi⁻) as exact log-linear values.
pub fn lambda_rho(f: &PLMap) -> Result<(LogCoord, LogCoord), Error> {
    let m = chi_endpoints(f)?;
    Ok((
        LogCoord::new(Rational::zero(), rat_int(m.m1), rat_int(m.m2)),
        LogCoord::new(Rational::zero(), rat_int(m.m3), rat_int(m.m4)),
    ))
}

/// The abelianization Z⁴ of F_{2,3}[0, 1]. Identical coordinates to
/// [`chi_endpoints`], but only the unit-interval group carries the
/// abelianization statement, so other intervals are rejected.
pub fn ab(f: &PLMap) -> Result<AbVector, Error> {
    if *f.lo() != rat_int(0) || *f.hi() != rat_int(1) {
        return Err(Error::IntervalMismatch {
            expected_lo: "0".into(),
            expected_hi: "1".into(),
            found_lo: f.lo().to_string(),
            found_hi: f.hi().to_string(),
        });
    }
    chi_endpoints(f)
}

/// A rational character q1χ₀² + q2χ₀³ + q3χ₁² + q4χ₁³ + sλ + tρ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub q1: Rational,
    pub q2: Rational,
    pub q3: Rational,
    pub q4: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Character {
    pub fn new(
        q1: Rational,
        q2: Rational,
        q3: Rational,
        q4: Rational,
        s: Rational,
        t: Rational,
    ) -> Self {
        Character { q1, q2, q3, q4, s, t }
    }

    pub fn zero() -> Self {
        Self::new(
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// χ₀²: exponent of 2 in the initial slope.
    pub fn chi02() -> Self {
        let mut c = Self::zero();
        c.q1 = Rational::one();
        c
    }

    /// χ₀³: exponent of 3 in the initial slope.
    pub fn chi03() -> Self {
        let mut c = Self::zero();
        c.q2 = Rational::one();
        c
    }

    /// χ₁²: exponent of 2 in the final slope.
    pub fn chi12() -> Self {
        let mut c = Self::zero();
        c.q3 = Rational::one();
        c
    }

    /// χ₁³: exponent of 3 in the final slope.
    pub fn chi13() -> Self {
        let mut c = Self::zero();
        c.q4 = Rational::one();
        c
    }

    /// λ = ln2·χ₀² + ln3·χ₀³, the log of the initial slope.
    pub fn lambda() -> Self {
        let mut c = Self::zero();
        c.s = Rational::one();
        c
    }

    /// ρ = ln2·χ₁² + ln3·χ₁³, the log of the final slope.
    pub fn rho() -> Self {
        let mut c = Self::zero();
        c.t = Rational::one();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.q1.is_zero()
            && self.q2.is_zero()
            && self.q3.is_zero()
            && self.q4.is_zero()
            && self.s.is_zero()
            && self.t.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Character {
        Character::new(
            c * &self.q1,
            c * &self.q2,
            c * &self.q3,
            c * &self.q4,
            c * &self.s,
            c * &self.t,
        )
    }

    /// Value on an element with abelianization vector m:
    /// (q·m) + (s·m1 + t·m3)·ln2 + (s·m2 + t·m4)·ln3.
    pub fn eval_ab(&self, m: &AbVector) -> LogCoord {
        let [m1, m2, m3, m4] = m.as_array().map(rat_int);
        LogCoord::new(
            &self.q1 * &m1 + &self.q2 * &m2 + &self.q3 * &m3 + &self.q4 * &m4,
            &self.s * &m1 + &self.t * &m3,
            &self.s * &m2 + &self.t * &m4,
        )
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, o: &Character) -> Character {
        Character::new(
            &self.q1 + &o.q1,
            &self.q2 + &o.q2,
            &self.q3 + &o.q3,
            &self.q4 + &o.q4,
            &self.s + &o.s,
            &self.t + &o.t,
        )
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, o: &Character) -> Character {
        Character::new(
            &self.q1 - &o.q1,
            &self.q2 - &o.q2,
            &self.q3 - &o.q3,
            &self.q4 - &o.q4,
            &self.s - &o.s,
            &self.t - &o.t,
        )
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        &Character::zero() - self
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, coeff: &Rational, name: &str| -> fmt::Result {
            if coeff.is_zero() {
                return Ok(());
            }
            if first {
                first = false;
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if mag.is_one() {
                write!(f, "{name}")
            } else {
                write!(f, "{mag}*{name}")
            }
        };
        term(f, &self.q1, "chi02")?;
        term(f, &self.q2, "chi03")?;
        term(f, &self.q3, "chi12")?;
        term(f, &self.q4, "chi13")?;
        term(f, &self.s, "lambda")?;
        term(f, &self.t, "rho")?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    q: [String; 4],
    s: String,
    t: String,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CharacterJson {
            q: [
                self.q1.to_string(),
                self.q2.to_string(),
                self.q3.to_string(),
                self.q4.to_string(),
            ],
            s: self.s.to_string(),
            t: self.t.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CharacterJson::deserialize(d)?;
        let parse = |s: &str| crate::exactnum::parse_rational(s).map_err(D::Error::custom);
        Ok(Character::new(
            parse(&raw.q[0])?,
            parse(&raw.q[1])?,
            parse(&raw.q[2])?,
            parse(&raw.q[3])?,
            parse(&raw.s)?,
            parse(&raw.t)?,
        ))
    }
}

/// χ(f) as an exact log-linear value.
pub fn char_eval(chi: &Character, f: &PLMap) -> Result<LogCoord, Error> {
    Ok(chi.eval_ab(&chi_endpoints(f)?))
}

/// Split χ into its left-based part q1χ₀² + q2χ₀³ + sλ (depending only on
/// the initial slope) and right-based part q3χ₁² + q4χ₁³ + tρ. The split is
/// unique and the parts re-sum to χ.
pub fn decompose_lr(chi: &Character) -> (Character, Character) {
    let left = Character::new(
        chi.q1.clone(),
        chi.q2.clone(),
        Rational::zero(),
        Rational::zero(),
        chi.s.clone(),
        Rational::zero(),
    );
    let right = Character::new(
        Rational::zero(),
        Rational::zero(),
        chi.q3.clone(),
        chi.q4.clone(),
        Rational::zero(),
        chi.t.clone(),
    );
    (left, right)
}

/// gcd over Q: the positive generator of Z·a + Z·b.
fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    // gcd(a/b, c/d) = gcd(a·d, c·b) / (b·d)
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(num, a.denom() * b.denom())
}

/// Is the image χ(F_{2,3}) ≤ (R, +) discrete? The image is generated by
/// the values of χ on the four abelianization basis vectors:
///
///   v₁ = q1 + s·ln2,  v₂ = q2 + s·ln3,  v₃ = q3 + t·ln2,  v₄ = q4 + t·ln3.
///
/// It is discrete iff the nonzero vᵢ are pairwise commensurable (rational
/// ratios): then they span a finitely generated subgroup of a rational
/// line, which is cyclic, and the positive generator is returned. One
/// incommensurable pair already generates a dense subgroup.
pub fn is_discrete(chi: &Character) -> Result<Option<LogCoord>, Error> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let zero = Rational::zero;
    let values = [
        LogCoord::new(chi.q1.clone(), chi.s.clone(), zero()),
        LogCoord::new(chi.q2.clone(), zero(), chi.s.clone()),
        LogCoord::new(chi.q3.clone(), chi.t.clone(), zero()),
        LogCoord::new(chi.q4.clone(), zero(), chi.t.clone()),
    ];
    let nonzero: Vec<&LogCoord> = values.iter().filter(|v| !v.is_zero()).collect();
    let base = nonzero[0];
    let mut ratios = vec![Rational::one()];
    for v in &nonzero[1..] {
        match rational_ratio(v, base)? {
            Some(c) => ratios.push(c),
            None => return Ok(None),
        }
    }
    let gcd = ratios
        .iter()
        .skip(1)
        .fold(ratios[0].clone(), |acc, r| gcd_rational(&acc, r));
    let mut generator = base.scale(&gcd);
    if generator.sign() == std::cmp::Ordering::Less {
        generator = -&generator;
    }
    Ok(Some(generator))
}

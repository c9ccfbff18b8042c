//! Constructive witnesses in F_{2,3}.
//!
//! Each builder realizes an existence statement by an explicit breakpoint
//! list, and each comes with a certificate function that re-checks the
//! claimed postconditions through the public membership / character /
//! support oracles — the builder computes, the certificate verifies.
//!
//! - [`special_element`]: f with prescribed initial-slope exponents
//!   (χ₀², χ₀³) = (p, q), trivial final slope (ρ = 0), and support exactly
//!   (0, c) containing a requested (0, r);
//! - [`special_element_right`]: the mirror image, prescribing (χ₁², χ₁³)
//!   with λ = 0 and support (1 − c, 1);
//! - [`conjugator_half`]: the fixed two-piece map of [−1, 1] carrying
//!   [0, 1] onto [1/2, 1];
//! - [`stable_letter`]: t ∈ ker(aχ₀² + bχ₀³) with λ(t) < 0 and support
//!   reaching past 3/4, the HNN stable letter for a rational point of the
//!   character sphere;
//! - [`witness_basis`]: four elements whose abelianization vectors form
//!   the identity matrix — a dual basis to (χ₀², χ₀³, χ₁², χ₁³);
//! - [`connect`]: a PL homeomorphism [0, L] → [0, L′] with slopes in
//!   ⟨2, 3⟩ and breaks in Z[1/6], for any positive L, L′ ∈ Z[1/6].

use crate::error::Error;
use crate::exactnum::{
    cmp_b_ln2_minus_a_ln3, in_break_module, in_slope_group, rat, rat_int, Rational,
};
use crate::plmap::PLMap;
use crate::stein::{ab, char_eval, lambda_rho, AbVector, Character, GroupSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use std::cmp::Ordering;

/// Shape parameters for special elements: the support cap c (the built
/// support is exactly (0, c)) and the slope of the descent piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuilderConfig {
    support_cap: Rational,
    shrink_slope: Rational,
}

impl BuilderConfig {
    /// c must lie in (0, 1) ∩ Z[1/6]; m must be 1/2 or 1/3.
    pub fn new(support_cap: Rational, shrink_slope: Rational) -> Result<Self, Error> {
        if support_cap <= rat_int(0) || support_cap >= rat_int(1) {
            return Err(Error::BadConfig {
                reason: format!("support cap {support_cap} must lie strictly between 0 and 1"),
            });
        }
        if !in_break_module(&support_cap, &[2, 3]) {
            return Err(Error::BadConfig {
                reason: format!("support cap {support_cap} is not in Z[1/6]"),
            });
        }
        if shrink_slope != rat(1, 2) && shrink_slope != rat(1, 3) {
            return Err(Error::BadConfig {
                reason: format!("shrink slope {shrink_slope} must be 1/2 or 1/3"),
            });
        }
        Ok(BuilderConfig {
            support_cap,
            shrink_slope,
        })
    }

    /// Default configuration for a requested support (0, r) ⊆ Supp(f):
    /// c = max(3/4, smallest 6-adic number above r), m = 1/2.
    pub fn for_anchor(r: &Rational) -> Result<Self, Error> {
        if *r <= rat_int(0) || *r >= rat_int(1) {
            return Err(Error::AnchorOutOfRange { r: r.to_string() });
        }
        let c = smallest_sixadic_above(r).max(rat(3, 4));
        Self::new(c, rat(1, 2))
    }

    pub fn support_cap(&self) -> &Rational {
        &self.support_cap
    }

    pub fn shrink_slope(&self) -> &Rational {
        &self.shrink_slope
    }
}

/// The smallest number of the form j/6^k that is strictly above r and
/// strictly below 1 (scanning k = 1, 2, …; exists for any r ∈ (0, 1)).
fn smallest_sixadic_above(r: &Rational) -> Rational {
    let mut denom = BigInt::one();
    loop {
        denom *= 6;
        let scaled = r * Rational::from_integer(denom.clone());
        let cand = Rational::new(scaled.floor().to_integer() + 1, denom.clone());
        if cand < rat_int(1) {
            return cand;
        }
    }
}

/// 2^p·3^q as an exact rational.
fn pow23(p: i64, q: i64) -> Result<Rational, Error> {
    let exp = |e: i64| -> Result<u32, Error> {
        u32::try_from(e.unsigned_abs()).map_err(|_| Error::BadConfig {
            reason: format!("exponent {e} is out of range"),
        })
    };
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for (base, e) in [(2, p), (3, q)] {
        let power = BigInt::from(base).pow(exp(e)?);
        if e >= 0 {
            numer *= power;
        } else {
            denom *= power;
        }
    }
    Ok(Rational::new(numer, denom))
}

/// The ascending special element for σ > 1: slope σ on [0, a], slope 1 on
/// [a, x₂], slope m on [x₂, c], identity on [c, 1], where d = (σ−1)·a is
/// the height gained on the first piece, x₂ = c − d/(1−m) is where the
/// descent must start to land back on the diagonal exactly at c, and
/// a = c·6^{−k} with k ≥ 1 minimal such that a ≤ x₂. All breakpoints are
/// automatically in Z[1/6] because σ, m, and 6^{−k} are units of Z[1/6].
fn ascending_special(sigma: &Rational, config: &BuilderConfig) -> PLMap {
    debug_assert!(*sigma > rat_int(1));
    let c = &config.support_cap;
    let m = &config.shrink_slope;
    // a ≤ x₂  ⟺  6^k ≥ (σ − m)/(1 − m).
    let bound = (sigma - m) / (rat_int(1) - m);
    let mut six_k = rat_int(6);
    while six_k < bound {
        six_k *= rat_int(6);
    }
    let a = c / &six_k;
    let d = (sigma - rat_int(1)) * &a;
    let x2 = c - &d / (rat_int(1) - m);
    let mut pts = vec![(rat_int(0), rat_int(0)), (a.clone(), sigma * &a)];
    if x2 > a {
        let y2 = &x2 + &d;
        pts.push((x2, y2));
    }
    pts.push((c.clone(), c.clone()));
    pts.push((rat_int(1), rat_int(1)));
    PLMap::new(pts).expect("special-element breakpoints are strictly monotone")
}

/// Conjugation by the reflection x ↦ 1 − x of [0, 1]: the mirror image of
/// a self-map of the unit interval.
fn reflect_unit(f: &PLMap) -> PLMap {
    let one = rat_int(1);
    let pts = f
        .points()
        .iter()
        .rev()
        .map(|(x, y)| (&one - x, &one - y))
        .collect();
    PLMap::new(pts).expect("reflection preserves strict monotonicity")
}

/// An element f ∈ F_{2,3}[0, 1] with initial-slope exponents
/// (χ₀², χ₀³)(f) = (p, q), final slope 1 (so ρ(f) = 0), and support
/// exactly (0, c) ⊇ (0, r). With σ = 2^p·3^q > 1 the map is above the
/// diagonal on its whole support; for σ < 1 the σ⁻¹ build is inverted, so
/// the map is below it. (p, q) = (0, 0) would force σ = 1 and an identity
/// germ at 0, contradicting the support requirement, so it is rejected.
pub fn special_element(p: i64, q: i64, r: &Rational) -> Result<PLMap, Error> {
    special_element_with(p, q, &BuilderConfig::for_anchor(r)?)
}

/// [`special_element`] with an explicit configuration.
pub fn special_element_with(p: i64, q: i64, config: &BuilderConfig) -> Result<PLMap, Error> {
    if (p, q) == (0, 0) {
        return Err(Error::ZeroExponentPair);
    }
    let sigma = pow23(p, q)?;
    if sigma > rat_int(1) {
        Ok(ascending_special(&sigma, config))
    } else {
        let inv = pow23(-p, -q)?;
        Ok(ascending_special(&inv, config).invert())
    }
}

/// The mirror image: (χ₁², χ₁³)(f) = (p, q), initial slope 1 (λ(f) = 0),
/// support exactly (1 − c, 1) ⊇ (1 − r, 1).
pub fn special_element_right(p: i64, q: i64, r: &Rational) -> Result<PLMap, Error> {
    special_element_right_with(p, q, &BuilderConfig::for_anchor(r)?)
}

/// [`special_element_right`] with an explicit configuration.
pub fn special_element_right_with(
    p: i64,
    q: i64,
    config: &BuilderConfig,
) -> Result<PLMap, Error> {
    Ok(reflect_unit(&special_element_with(p, q, config)?))
}

/// The two-piece self-map of [−1, 1] with breakpoints (−1, −1), (0, 1/2),
/// (1, 1): slope 3/2 then 1/2. It carries [0, 1] onto [1/2, 1], so
/// conjugation by it transports any element supported in (0, 1) to one
/// supported in (1/2, 1).
pub fn conjugator_half() -> PLMap {
    PLMap::new(vec![
        (rat_int(-1), rat_int(-1)),
        (rat_int(0), rat(1, 2)),
        (rat_int(1), rat_int(1)),
    ])
    .expect("fixed breakpoints are monotone")
}

/// A stable letter for the rational character point χ = aχ₀² + bχ₀³ with
/// gcd(a, b) = 1: an element t with χ(t) = 0 and λ(t) < 0, built as the
/// special element for exponents ±(b, −a) — the sign chosen to make
/// λ(t) = ±(b·ln2 − a·ln3) negative — with support cap 5/6. Since
/// λ(t) < 0 means σ < 1, t is below the diagonal on (0, 5/6), so
/// t(1/2) < 1/2.
pub fn stable_letter(a: i64, b: i64) -> Result<PLMap, Error> {
    if (a, b) == (0, 0) {
        return Err(Error::ZeroExponentPair);
    }
    if a.unsigned_abs().gcd(&b.unsigned_abs()) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let (p, q) = if cmp_b_ln2_minus_a_ln3(a, b) == Ordering::Less {
        (b, -a)
    } else {
        (-b, a)
    };
    // r = 3/4 defaults to support cap c = 5/6: support strictly past 3/4.
    special_element_with(p, q, &BuilderConfig::for_anchor(&rat(3, 4))?)
}

/// Four elements of F_{2,3}[0, 1] whose abelianization vectors are the
/// standard basis of Z⁴, in order: left specials for (1, 0) and (0, 1),
/// then right specials for (1, 0) and (0, 1).
pub fn witness_basis() -> [PLMap; 4] {
    let r = rat(1, 2);
    [
        special_element(1, 0, &r).expect("fixed valid input"),
        special_element(0, 1, &r).expect("fixed valid input"),
        special_element_right(1, 0, &r).expect("fixed valid input"),
        special_element_right(0, 1, &r).expect("fixed valid input"),
    ]
}

/// A PL homeomorphism [0, L] → [0, L′] with slopes in ⟨2, 3⟩ and breaks in
/// Z[1/6], for positive L, L′ in Z[1/6]. Both lengths are scaled to
/// integers by a common power of 6; the integer core doubles [0, A] by
/// slope-2 pieces while B > 2A, finishes with a slope-2-then-1 two-piece
/// map once A ≤ B ≤ 2A, and inverts for B < A.
pub fn connect(len_from: &Rational, len_to: &Rational) -> Result<PLMap, Error> {
    for len in [len_from, len_to] {
        if *len <= rat_int(0) || !in_break_module(len, &[2, 3]) {
            return Err(Error::BadLength {
                value: len.to_string(),
            });
        }
    }
    // Common denominator exponent: smallest j with 6^j·L and 6^j·L′ integral.
    let mut six_j = rat_int(1);
    while !(len_from * &six_j).is_integer() || !(len_to * &six_j).is_integer() {
        six_j *= rat_int(6);
    }
    let a = (len_from * &six_j).to_integer();
    let b = (len_to * &six_j).to_integer();
    let core = integer_connect(&a, &b);
    // result = unscale_to ∘ core ∘ scale_from, all exact compositions.
    let scale_from = PLMap::new(vec![
        (rat_int(0), rat_int(0)),
        (len_from.clone(), Rational::from_integer(a)),
    ])
    .expect("scaling map is monotone");
    let unscale_to = PLMap::new(vec![
        (rat_int(0), rat_int(0)),
        (Rational::from_integer(b), len_to.clone()),
    ])
    .expect("scaling map is monotone");
    Ok(unscale_to
        .compose(&core)
        .expect("codomains chain by construction")
        .compose(&scale_from)
        .expect("codomains chain by construction"))
}

/// The integer core of [`connect`]: [0, a] → [0, b] for positive integers.
fn integer_connect(a: &BigInt, b: &BigInt) -> PLMap {
    let two_a = a * 2;
    if *b > two_a {
        // Grow by a slope-2 piece, then connect [0, 2a] to [0, b].
        let doubler = PLMap::new(vec![
            (rat_int(0), rat_int(0)),
            (
                Rational::from_integer(a.clone()),
                Rational::from_integer(two_a.clone()),
            ),
        ])
        .expect("doubling map is monotone");
        integer_connect(&two_a, b)
            .compose(&doubler)
            .expect("codomains chain by construction")
    } else if *b >= *a {
        // Slope 2 on [0, b−a], slope 1 on [b−a, a] (either piece may be
        // empty; canonicalization and point dedup handle the ends).
        let mid = b - a;
        let mut pts = vec![(rat_int(0), rat_int(0))];
        if mid.is_positive() && mid < *a {
            pts.push((
                Rational::from_integer(mid.clone()),
                Rational::from_integer(&mid * 2),
            ));
        }
        pts.push((
            Rational::from_integer(a.clone()),
            Rational::from_integer(b.clone()),
        ));
        PLMap::new(pts).expect("connect core points are monotone")
    } else {
        integer_connect(b, a).invert()
    }
}

/// One named postcondition check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check {
            name: name.to_string(),
            ok: true,
            detail: None,
        }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        Check {
            name: name.to_string(),
            ok: false,
            detail: Some(detail),
        }
    }

    pub fn from_bool(name: &str, ok: bool, detail_on_fail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail_on_fail())
        }
    }
}

/// A builder's postconditions, re-checked through the public oracles.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub ok: bool,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        Certificate {
            ok: checks.iter().all(|c| c.ok),
            checks,
        }
    }
}

/// Sample points that determine the sign pattern of f(x) − x on a PL map:
/// all breakpoints plus the midpoint of every piece, restricted to the
/// open interval (lo, hi).
fn sign_samples(f: &PLMap, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut xs = Vec::new();
    let pts = f.points();
    for w in pts.windows(2) {
        xs.push(w[0].0.clone());
        xs.push((&w[0].0 + &w[1].0) / rat_int(2));
    }
    xs.push(pts[pts.len() - 1].0.clone());
    xs.retain(|x| x > lo && x < hi);
    xs
}

/// Does f(x) − x keep one strict sign on (lo, hi)? Checked at breakpoints
/// and piece midpoints, which determines the sign pattern of a PL map.
fn displacement_sign_constant(f: &PLMap, lo: &Rational, hi: &Rational) -> bool {
    let mut seen: Option<Ordering> = None;
    for x in sign_samples(f, lo, hi) {
        let y = f.evaluate(&x).expect("sample points lie in the domain");
        let s = y.cmp(&x);
        if s == Ordering::Equal {
            return false;
        }
        if let Some(prev) = seen {
            if prev != s {
                return false;
            }
        }
        seen = Some(s);
    }
    seen.is_some()
}

/// Re-check the postconditions of [`special_element`]\(p, q, r).
pub fn special_certificate(p: i64, q: i64, r: &Rational, f: &PLMap) -> Certificate {
    let mut checks = Vec::new();
    let member = GroupSpec::f23()
        .is_member(f)
        .map(|rep| rep.is_member)
        .unwrap_or(false);
    checks.push(Check::from_bool("member_f23", member, || {
        "map is not an element of F_{2,3}[0,1]".into()
    }));
    if !member {
        return Certificate::from_checks(checks);
    }
    let abv = ab(f).expect("membership was just verified");
    let expected = AbVector::new(p, q, 0, 0);
    checks.push(Check::from_bool("ab_vector", abv == expected, || {
        format!("ab = {abv}, expected {expected}")
    }));
    let (_, rho) = lambda_rho(f).expect("membership was just verified");
    checks.push(Check::from_bool("rho_zero", rho.is_zero(), || {
        format!("rho = {rho}")
    }));
    let supp = f.support().expect("members are self-maps");
    let covers = supp
        .intervals()
        .iter()
        .any(|(s, e)| *s <= rat_int(0) && *e >= *r);
    checks.push(Check::from_bool("support_covers_anchor", covers, || {
        format!("support {supp} does not contain (0, {r})")
    }));
    let exact = supp.intervals().len() == 1 && supp.intervals()[0].0 == rat_int(0);
    checks.push(Check::from_bool("support_from_zero", exact, || {
        format!("support {supp} is not a single interval (0, c)")
    }));
    let sign_ok = match supp.intervals().first() {
        Some((s, e)) => displacement_sign_constant(f, s, e),
        None => false,
    };
    checks.push(Check::from_bool(
        "displacement_sign_constant",
        sign_ok,
        || "f(x) − x changes sign or vanishes inside the support".into(),
    ));
    Certificate::from_checks(checks)
}

/// Re-check the postconditions of [`special_element_right`]\(p, q, r).
pub fn special_right_certificate(p: i64, q: i64, r: &Rational, f: &PLMap) -> Certificate {
    let mut checks = Vec::new();
    let member = GroupSpec::f23()
        .is_member(f)
        .map(|rep| rep.is_member)
        .unwrap_or(false);
    checks.push(Check::from_bool("member_f23", member, || {
        "map is not an element of F_{2,3}[0,1]".into()
    }));
    if !member {
        return Certificate::from_checks(checks);
    }
    let abv = ab(f).expect("membership was just verified");
    let expected = AbVector::new(0, 0, p, q);
    checks.push(Check::from_bool("ab_vector", abv == expected, || {
        format!("ab = {abv}, expected {expected}")
    }));
    let (lambda, _) = lambda_rho(f).expect("membership was just verified");
    checks.push(Check::from_bool("lambda_zero", lambda.is_zero(), || {
        format!("lambda = {lambda}")
    }));
    let supp = f.support().expect("members are self-maps");
    let mirror_anchor = rat_int(1) - r;
    let covers = supp
        .intervals()
        .iter()
        .any(|(s, e)| *s <= mirror_anchor && *e >= rat_int(1));
    checks.push(Check::from_bool("support_covers_anchor", covers, || {
        format!("support {supp} does not contain ({mirror_anchor}, 1)")
    }));
    let exact = supp.intervals().len() == 1 && supp.intervals()[0].1 == rat_int(1);
    checks.push(Check::from_bool("support_to_one", exact, || {
        format!("support {supp} is not a single interval (c, 1)")
    }));
    let sign_ok = match supp.intervals().first() {
        Some((s, e)) => displacement_sign_constant(f, s, e),
        None => false,
    };
    checks.push(Check::from_bool(
        "displacement_sign_constant",
        sign_ok,
        || "f(x) − x changes sign or vanishes inside the support".into(),
    ));
    Certificate::from_checks(checks)
}

/// Re-check the postconditions of [`stable_letter`]\(a, b).
pub fn stable_certificate(a: i64, b: i64, t: &PLMap) -> Certificate {
    let mut checks = Vec::new();
    let member = GroupSpec::f23()
        .is_member(t)
        .map(|rep| rep.is_member)
        .unwrap_or(false);
    checks.push(Check::from_bool("member_f23", member, || {
        "map is not an element of F_{2,3}[0,1]".into()
    }));
    if !member {
        return Certificate::from_checks(checks);
    }
    let chi = Character::new(
        rat_int(a),
        rat_int(b),
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat_int(0),
    );
    let value = char_eval(&chi, t).expect("membership was just verified");
    checks.push(Check::from_bool("chi_zero", value.is_zero(), || {
        format!("chi(t) = {value}")
    }));
    let (lambda, _) = lambda_rho(t).expect("membership was just verified");
    checks.push(Check::from_bool(
        "lambda_negative",
        lambda.sign() == Ordering::Less,
        || format!("lambda(t) = {lambda}"),
    ));
    let supp = t.support().expect("members are self-maps");
    let covers = supp
        .intervals()
        .iter()
        .any(|(s, e)| *s <= rat_int(0) && *e >= rat(3, 4));
    checks.push(Check::from_bool("support_covers_3_4", covers, || {
        format!("support {supp} does not contain (0, 3/4)")
    }));
    let half = rat(1, 2);
    let t_half = t.evaluate(&half).expect("1/2 is in the domain");
    checks.push(Check::from_bool("moves_half_left", t_half < half, || {
        format!("t(1/2) = {t_half} is not < 1/2")
    }));
    Certificate::from_checks(checks)
}

/// Re-check the postconditions of [`conjugator_half`].
pub fn conjugator_certificate(h: &PLMap) -> Certificate {
    let mut checks = Vec::new();
    let spec = GroupSpec::f23_on(rat_int(-1), rat_int(1)).expect("±1 lie in Z[1/6]");
    let member = spec
        .is_member(h)
        .map(|rep| rep.is_member)
        .unwrap_or(false);
    checks.push(Check::from_bool("member_f23_sym", member, || {
        "map is not an element of F_{2,3}[-1,1]".into()
    }));
    let at_zero = h.evaluate(&rat_int(0));
    checks.push(Check::from_bool(
        "maps_zero_to_half",
        at_zero.as_ref().map(|v| *v == rat(1, 2)).unwrap_or(false),
        || "h(0) ≠ 1/2".into(),
    ));
    let at_one = h.evaluate(&rat_int(1));
    checks.push(Check::from_bool(
        "fixes_one",
        at_one.as_ref().map(|v| *v == rat_int(1)).unwrap_or(false),
        || "h(1) ≠ 1".into(),
    ));
    Certificate::from_checks(checks)
}

/// Re-check the postconditions of [`connect`]\(L, L′).
pub fn connect_certificate(len_from: &Rational, len_to: &Rational, f: &PLMap) -> Certificate {
    let zero = rat_int(0);
    let mut checks = Vec::new();
    let intervals_ok = *f.lo() == zero
        && f.hi() == len_from
        && *f.codomain().0 == zero
        && f.codomain().1 == len_to;
    checks.push(Check::from_bool("maps_interval", intervals_ok, || {
        format!(
            "maps [{}, {}] onto [{}, {}], expected [0, {len_from}] onto [0, {len_to}]",
            f.lo(),
            f.hi(),
            f.codomain().0,
            f.codomain().1
        )
    }));
    let pts = f.points();
    let breaks_ok = pts[1..pts.len() - 1]
        .iter()
        .all(|(x, y)| in_break_module(x, &[2, 3]) && in_break_module(y, &[2, 3]));
    checks.push(Check::from_bool("breaks_in_module", breaks_ok, || {
        "an interior breakpoint coordinate is outside Z[1/6]".into()
    }));
    let slopes_ok = f.slopes().iter().all(|s| {
        in_slope_group(s, &[2, 3])
            .map(|w| w.is_some())
            .unwrap_or(false)
    });
    checks.push(Check::from_bool("slopes_in_group", slopes_ok, || {
        "a slope is outside the group generated by 2 and 3".into()
    }));
    let roundtrip = connect(len_to, len_from)
        .ok()
        .and_then(|back| back.compose(f).ok())
        .map(|comp| comp.is_identity())
        .unwrap_or(false);
    checks.push(Check::from_bool("roundtrip_identity", roundtrip, || {
        "connect(L', L) ∘ connect(L, L') is not the identity".into()
    }));
    Certificate::from_checks(checks)
}

/// Determinant of a small integer matrix by cofactor expansion.
fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0i64;
    for (j, &entry) in m[0].iter().enumerate() {
        if entry == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(jj, &v)| (jj != j).then_some(v))
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * entry * det_i64(&minor);
    }
    det
}

/// Re-check the postconditions of [`witness_basis`]: all four are members
/// and their ab vectors form the identity matrix (determinant 1).
pub fn basis_certificate(basis: &[PLMap; 4]) -> Certificate {
    let mut checks = Vec::new();
    let spec = GroupSpec::f23();
    let members = basis
        .iter()
        .all(|f| spec.is_member(f).map(|r| r.is_member).unwrap_or(false));
    checks.push(Check::from_bool("members_f23", members, || {
        "a witness is not an element of F_{2,3}[0,1]".into()
    }));
    if !members {
        return Certificate::from_checks(checks);
    }
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|f| ab(f).expect("membership was just verified").as_array().to_vec())
        .collect();
    let identity = (0..4).all(|i| (0..4).all(|j| rows[i][j] == i64::from(i == j)));
    checks.push(Check::from_bool("ab_matrix_identity", identity, || {
        format!("ab matrix rows are {rows:?}")
    }));
    let det = det_i64(&rows);
    checks.push(Check::from_bool("det_one", det == 1, || {
        format!("det = {det}")
    }));
    Certificate::from_checks(checks)
}

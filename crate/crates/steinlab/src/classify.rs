//! Decision procedures: BNSR tiers of characters and finiteness
//! properties of normal subgroups of F_{2,3}.
//!
//! Everything here evaluates proven classification statements exactly; no
//! filtration of complexes is ever computed.
//!
//! - [`classify_character`] places a rational character on the three-tier
//!   ladder Σ¹ ∌ [χ], Σ¹ ∋ [χ] ∉ Σ², or Σ^∞ ∋ [χ]: the only rays below
//!   the top tier are [λ], [ρ] (not in Σ¹) and [aλ + bρ] with a, b > 0
//!   (in Σ¹ but not Σ²).
//! - Normal subgroups containing the commutator subgroup correspond to
//!   subgroups L ≤ Z⁴ of the abelianization. [`normal_subgroup_finiteness`]
//!   decides: finitely generated ⟺ λ(L) ≠ 0 and ρ(L) ≠ 0; finitely
//!   presented (⟺ type F_∞) ⟺ no (a, b) ≥ 0, (a, b) ≠ (0, 0) makes
//!   aλ + bρ vanish on L.
//!
//! The fp test quantifies over *real* (a, b), so it is not a rational
//! linear-algebra problem: each nonzero generator v imposes one real
//! linear constraint a·λ(v) + b·ρ(v) = 0 on (a, b), with λ(v), ρ(v) in
//! Z·ln2 + Z·ln3. Two such constraints coincide or are independent
//! according to whether λ(v)ρ(w) − λ(w)ρ(v) vanishes; expanding in powers
//! of τ = ln3/ln2 turns that into three integer coefficients which vanish
//! simultaneously iff the constraints are parallel, because τ is
//! transcendental (were it algebraic, 2^τ = 3 would be transcendental by
//! Gelfond–Schneider) and so {1, τ, τ²} is Q-linearly independent. One
//! constraint line meets the closed positive quadrant away from the origin
//! iff sign λ(v) · sign ρ(v) ≤ 0, decided by exact log-linear signs.

use crate::builders::{conjugator_half, special_element, special_element_right, stable_letter};
use crate::error::Error;
use crate::exactnum::{rat_int, rational_ratio, zlin, LogCoord, Rational};
use crate::plmap::{conjugate, PLMap};
use crate::stein::{ab, char_eval, lambda_rho, Character};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Position of a character class on the BNSR ladder. The order matches
/// the nesting Σ¹ ⊇ Σ² ⊇ ⋯ ⊇ Σ^∞: a later tier is a stronger property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SigmaTier {
    /// [χ] ∉ Σ¹: exactly the rays [λ] and [ρ].
    NotInSigma1,
    /// [χ] ∈ Σ¹ \ Σ²: exactly the rays [aλ + bρ] with a, b > 0.
    Sigma1NotSigma2,
    /// [χ] ∈ Σ^m for every m.
    SigmaInfinity,
}

impl fmt::Display for SigmaTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaTier::NotInSigma1 => "NotInSigma1",
            SigmaTier::Sigma1NotSigma2 => "Sigma1NotSigma2",
            SigmaTier::SigmaInfinity => "SigmaInfinity",
        })
    }
}

/// Tier of a nonzero rational character. Exact on the whole input domain:
/// a nonzero rational coordinate can never equal a nonzero multiple of
/// ln2 or ln3, so [χ] lies on one of the special rays iff its χ-basis
/// part q vanishes identically and (s, t) has the matching sign pattern.
pub fn classify_character(chi: &Character) -> Result<SigmaTier, Error> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let zero = Rational::zero();
    let q_zero =
        chi.q1.is_zero() && chi.q2.is_zero() && chi.q3.is_zero() && chi.q4.is_zero();
    if q_zero {
        if chi.s > zero && chi.t.is_zero() {
            return Ok(SigmaTier::NotInSigma1); // [λ]
        }
        if chi.s.is_zero() && chi.t > zero {
            return Ok(SigmaTier::NotInSigma1); // [ρ]
        }
        if chi.s > zero && chi.t > zero {
            return Ok(SigmaTier::Sigma1NotSigma2); // [aλ + bρ], a, b > 0
        }
    }
    Ok(SigmaTier::SigmaInfinity)
}

/// A subgroup of the abelianization Z⁴, given by an arbitrary (possibly
/// redundant, possibly empty) list of integer generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeSubgroup {
    pub generators: Vec<[i64; 4]>,
}

impl LatticeSubgroup {
    pub fn new(generators: Vec<[i64; 4]>) -> Self {
        LatticeSubgroup { generators }
    }

    fn nonzero_generators(&self) -> impl Iterator<Item = &[i64; 4]> {
        self.generators.iter().filter(|v| **v != [0, 0, 0, 0])
    }
}

/// The image in Z⁴ of ker(χ) ∩ (everything above the commutator
/// subgroup): the integer kernel of the three rational linear forms
/// q·v, s·v₁ + t·v₃, s·v₂ + t·v₄ — the rational, ln2-, and ln3-components
/// of χ(v). Input may be the zero character (kernel Z⁴).
pub fn kernel_lattice(chi: &Character) -> LatticeSubgroup {
    let clear_row = |row: [&Rational; 4]| -> Vec<BigInt> {
        let lcm = row
            .iter()
            .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        row.iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect()
    };
    let zero = Rational::zero();
    let rows = vec![
        clear_row([&chi.q1, &chi.q2, &chi.q3, &chi.q4]),
        clear_row([&chi.s, &zero, &chi.t, &zero]),
        clear_row([&zero, &chi.s, &zero, &chi.t]),
    ];
    let basis = zlin::kernel(&rows);
    let generators = basis
        .into_iter()
        .map(|v| {
            let mut out = [0i64; 4];
            for (slot, entry) in out.iter_mut().zip(v.iter()) {
                *slot = i64::try_from(entry).expect("kernel basis entry fits in i64");
            }
            out
        })
        .collect();
    LatticeSubgroup::new(generators)
}

/// A point or direction (a, b) ≥ 0 on which some aλ + bρ annihilates the
/// subgroup — the witness that finite presentation fails. The direction is
/// a rational pair when the annihilating ray is rational; otherwise its
/// coordinates are integer combinations x·ln2 + y·ln3, given as (x, y).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    Rational {
        #[serde(with = "crate::exactnum::ratio_string")]
        a: Rational,
        #[serde(with = "crate::exactnum::ratio_string")]
        b: Rational,
    },
    LogLinear { a: [i64; 2], b: [i64; 2] },
}

/// Finiteness properties of the normal subgroup with abelianization
/// image L: finitely generated, finitely presented, and type F_∞
/// (the last two coincide). The chain f_infinity ⇒ fp ⇒ fg always holds;
/// when fp fails, `obstruction` carries a witnessing (a, b) ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    #[serde(rename = "finitely_generated")]
    pub fg: bool,
    #[serde(rename = "finitely_presented")]
    pub fp: bool,
    pub f_infinity: bool,
    pub obstruction: Option<Obstruction>,
}

/// sign(v₁·ln2 + v₂·ln3) for integers, via the exact pure-log comparison.
fn log_sign(v1: i64, v2: i64) -> Ordering {
    LogCoord::pure_log(rat_int(v1), rat_int(v2)).sign()
}

/// Are the real constraint lines of generators m and n parallel — i.e.
/// λ(m)ρ(n) − λ(n)ρ(m) = 0? Expanding in ln2, ln3 gives the quadratic
/// C₀·ln2² + C₁·ln2·ln3 + C₂·ln3², which vanishes iff C₀ = C₁ = C₂ = 0
/// by the transcendence of ln3/ln2.
fn constraints_parallel(m: &[i64; 4], n: &[i64; 4]) -> bool {
    let [m1, m2, m3, m4] = m.map(i128::from);
    let [n1, n2, n3, n4] = n.map(i128::from);
    let c0 = m1 * n3 - n1 * m3;
    let c1 = m1 * n4 + m2 * n3 - n1 * m4 - n2 * m3;
    let c2 = m2 * n4 - n2 * m4;
    c0 == 0 && c1 == 0 && c2 == 0
}

/// The normalized obstruction direction for a single constraint line
/// a·λ(v) + b·ρ(v) = 0 that meets the closed positive quadrant: the
/// direction is (ρ(v), −λ(v)), negated if needed so both components
/// are ≥ 0, and expressed rationally whenever the ray is rational
/// (⟺ the log-linear pair is Q-proportional).
fn obstruction_from_line(v: &[i64; 4]) -> Obstruction {
    let [v1, v2, v3, v4] = *v;
    let beta = LogCoord::pure_log(rat_int(v3), rat_int(v4));
    let neg_alpha = LogCoord::pure_log(rat_int(-v1), rat_int(-v2));
    let s_beta = log_sign(v3, v4);
    let s_alpha = log_sign(v1, v2);
    // d = (β, −α); negate when β < 0, or β = 0 with −α < 0.
    let negate = s_beta == Ordering::Less || (s_beta == Ordering::Equal && s_alpha == Ordering::Greater);
    if neg_alpha.is_zero() {
        // Line {b = 0}: direction (1, 0).
        return Obstruction::Rational {
            a: rat_int(1),
            b: rat_int(0),
        };
    }
    if beta.is_zero() {
        // Line {a = 0}: direction (0, 1).
        return Obstruction::Rational {
            a: rat_int(0),
            b: rat_int(1),
        };
    }
    match rational_ratio(&beta, &neg_alpha).expect("checked neg_alpha nonzero") {
        Some(c) => {
            // d ∝ (c, 1) with c ≥ 0 because the line meets the quadrant.
            debug_assert!(c >= Rational::zero());
            Obstruction::Rational { a: c, b: rat_int(1) }
        }
        None => {
            let (a_pair, b_pair) = if negate {
                ([-v3, -v4], [v1, v2])
            } else {
                ([v3, v4], [-v1, -v2])
            };
            Obstruction::LogLinear { a: a_pair, b: b_pair }
        }
    }
}

/// Finiteness classification of the normal subgroup N ≥ [F_{2,3}, F_{2,3}]
/// whose abelianization image is L.
///
/// - fg ⟺ λ(L) ≠ 0 and ρ(L) ≠ 0 ⟺ some generator has (v₁, v₂) ≠ 0 and
///   some generator has (v₃, v₄) ≠ 0.
/// - fp (= F_∞) ⟺ no (a, b) ≥ 0, ≠ 0 with a·λ(v) + b·ρ(v) = 0 for every
///   generator. The solution set in the (a, b)-plane is an intersection of
///   real lines through the origin: two non-parallel constraints cut it to
///   {0} (fp holds); otherwise all constraints give one common line, which
///   avoids the quadrant iff sign λ(v) · sign ρ(v) > 0; no constraints at
///   all (L = 0) leave the whole plane (fp fails).
pub fn normal_subgroup_finiteness(lattice: &LatticeSubgroup) -> FinitenessReport {
    let gens: Vec<&[i64; 4]> = lattice.nonzero_generators().collect();
    let fg = gens.iter().any(|v| (v[0], v[1]) != (0, 0))
        && gens.iter().any(|v| (v[2], v[3]) != (0, 0));
    let (fp, obstruction) = match gens.split_first() {
        None => {
            // L = 0: every (a, b) annihilates it; (1, 0) is the canonical witness.
            (
                false,
                Some(Obstruction::Rational {
                    a: rat_int(1),
                    b: rat_int(0),
                }),
            )
        }
        Some((first, rest)) => {
            if rest.iter().any(|v| !constraints_parallel(first, v)) {
                // Two independent constraints: only (0, 0) annihilates.
                (true, None)
            } else {
                // One common line: fp iff it avoids the closed quadrant.
                let product = log_sign(first[0], first[1]) as i8 * log_sign(first[2], first[3]) as i8;
                if product > 0 {
                    (true, None)
                } else {
                    (false, Some(obstruction_from_line(first)))
                }
            }
        }
    };
    debug_assert!(!fp || fg, "fp must imply fg");
    FinitenessReport {
        fg,
        fp,
        f_infinity: fp,
        obstruction,
    }
}

/// Finiteness classification of ker(χ) for a nonzero character.
pub fn kernel_finiteness(chi: &Character) -> Result<FinitenessReport, Error> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    Ok(normal_subgroup_finiteness(&kernel_lattice(chi)))
}

/// Finiteness classification of the normal closure of a set of elements
/// of F_{2,3}[0, 1]. The closure contains the commutator subgroup as soon
/// as one element is nontrivial, so its abelianization image is the
/// lattice generated by the elements' ab-vectors. All-identity input is
/// outside the classification's scope and rejected.
pub fn normal_closure_classification(elems: &[PLMap]) -> Result<FinitenessReport, Error> {
    if elems.iter().all(|f| f.is_identity()) {
        return Err(Error::AllIdentity);
    }
    let mut generators = Vec::with_capacity(elems.len());
    for f in elems {
        generators.push(ab(f)?.as_array());
    }
    Ok(normal_subgroup_finiteness(&LatticeSubgroup::new(generators)))
}

/// Machine-checked evidence that t = stable_letter(a, b) realizes an
/// ascending HNN-extension over the base B = {g : supp(g) ⊆ [1/2, 1]}:
/// χ(t) = 0 and λ(t) < 0 (the defining equations), conjugation by t
/// carries sampled base elements into {g : supp(g) ⊆ [t⁻¹(1/2), 1]} ⊆ B
/// (base mapped into itself), t(1/2) < 1/2 (no nonzero power of t lies in
/// the base), and t⁻¹(1/2) > 1/2 with a base element supported across
/// (1/2, t⁻¹(1/2)) (the extension is properly ascending).
#[derive(Clone, Debug, Serialize)]
pub struct HnnCertificate {
    pub t: PLMap,
    pub chi_zero: bool,
    pub lambda_negative: bool,
    pub base_mapped_in: bool,
    pub intersection_trivial: bool,
    pub proper: bool,
}

impl HnnCertificate {
    /// A certificate is valid iff every check passed.
    pub fn all_true(&self) -> bool {
        self.chi_zero
            && self.lambda_negative
            && self.base_mapped_in
            && self.intersection_trivial
            && self.proper
    }
}

/// A deterministic pseudorandom element supported in [1/2, 1]: a
/// right-based special element transported by the half-interval
/// conjugator (the transport is a conjugation inside F_{2,3}[−1, 1], so
/// membership is preserved).
fn sampled_base_element(rng: &mut ChaCha8Rng) -> PLMap {
    let (p, q) = loop {
        let p = rng.gen_range(-3i64..=3);
        let q = rng.gen_range(-3i64..=3);
        if (p, q) != (0, 0) {
            break (p, q);
        }
    };
    let r = Rational::new(BigInt::from(rng.gen_range(1i64..=11)), BigInt::from(12));
    let g = special_element_right(p, q, &r).expect("valid sampled builder input");
    transport_into_right_half(&g)
}

/// Conjugate a self-map of [0, 1] by the half-interval conjugator and
/// restrict back to [0, 1]: the support lands in [1/2, 1].
fn transport_into_right_half(g: &PLMap) -> PLMap {
    let h = conjugator_half();
    let extended = g
        .extend(rat_int(-1), rat_int(1))
        .expect("extension from the unit interval");
    conjugate(&h, &extended)
        .expect("conjugation on matching intervals")
        .restrict(rat_int(0), rat_int(1))
        .expect("transported support lies in (1/2, 1)")
}

/// Build and check the HNN certificate for coprime (a, b) with the default
/// sampling seed.
pub fn verify_hnn(a: i64, b: i64, sample_size: usize) -> Result<HnnCertificate, Error> {
    // Mix the inputs so different (a, b) draw different samples.
    let seed = 0x5EED_0000_0000_0000u64
        ^ ((a as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        ^ (b as u64).rotate_left(32);
    verify_hnn_seeded(a, b, sample_size, seed)
}

/// [`verify_hnn`] with an explicit sampling seed.
pub fn verify_hnn_seeded(
    a: i64,
    b: i64,
    sample_size: usize,
    seed: u64,
) -> Result<HnnCertificate, Error> {
    let t = stable_letter(a, b)?;
    let chi = Character::new(
        rat_int(a),
        rat_int(b),
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat_int(0),
    );
    let chi_zero = char_eval(&chi, &t)?.is_zero();
    let (lambda, _) = lambda_rho(&t)?;
    let lambda_negative = lambda.sign() == Ordering::Less;

    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let t_half = t.evaluate(&half).expect("1/2 lies in [0, 1]");
    let intersection_trivial = t_half < half;
    let t_inv = t.invert();
    let t_inv_half = t_inv.evaluate(&half).expect("1/2 lies in [0, 1]");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base_mapped_in = true;
    for _ in 0..sample_size {
        let g = sampled_base_element(&mut rng);
        let conj = conjugate(&t_inv, &g).expect("conjugation on matching intervals");
        let supp = conj.support().expect("conjugates are self-maps");
        if !supp.contained_in(&t_inv_half, &rat_int(1)) {
            base_mapped_in = false;
            break;
        }
    }

    // Properness: t⁻¹(1/2) > 1/2, and some base element's support meets
    // the gap (1/2, t⁻¹(1/2)) — a left-based special element transported
    // into [1/2, 1] has support starting exactly at 1/2, so it does.
    let witness = transport_into_right_half(
        &special_element(1, 0, &half).expect("valid fixed builder input"),
    );
    let witness_meets_gap = t_inv_half > half
        && witness
            .support()
            .expect("witness is a self-map")
            .meets(&half, &t_inv_half);
    let proper = t_inv_half > half && witness_meets_gap;

    Ok(HnnCertificate {
        t,
        chi_zero,
        lambda_negative,
        base_mapped_in,
        intersection_trivial,
        proper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn chi(q1: i64, q2: i64, q3: i64, q4: i64, s: (i64, i64), t: (i64, i64)) -> Character {
        Character::new(
            rat_int(q1),
            rat_int(q2),
            rat_int(q3),
            rat_int(q4),
            rat(s.0, s.1),
            rat(t.0, t.1),
        )
    }

    #[test]
    fn tier_order_matches_nesting() {
        assert!(SigmaTier::NotInSigma1 < SigmaTier::Sigma1NotSigma2);
        assert!(SigmaTier::Sigma1NotSigma2 < SigmaTier::SigmaInfinity);
        assert_eq!(SigmaTier::SigmaInfinity.to_string(), "SigmaInfinity");
        assert_eq!(
            serde_json::to_string(&SigmaTier::Sigma1NotSigma2).unwrap(),
            "\"Sigma1NotSigma2\""
        );
    }

    #[test]
    fn classify_character_table() {
        use SigmaTier::*;
        let lambda = Character::lambda;
        let rho = Character::rho;
        // The twelve-row decision table.
        let cases: Vec<(Character, SigmaTier)> = vec![
            (lambda(), NotInSigma1),
            (rho(), NotInSigma1),
            (&lambda() + &rho(), Sigma1NotSigma2),
            (&lambda().scale(&rat_int(2)) + &rho().scale(&rat_int(3)), Sigma1NotSigma2),
            (&lambda().scale(&rat(1, 5)) + &rho(), Sigma1NotSigma2),
            (&Character::zero() - &lambda(), SigmaInfinity),
            (&Character::zero() - &rho(), SigmaInfinity),
            (Character::chi02(), SigmaInfinity),
            (&Character::chi03() - &Character::chi12(), SigmaInfinity),
            (&lambda() - &rho(), SigmaInfinity),
            (&Character::chi02() + &lambda(), SigmaInfinity),
            (Character::chi13().scale(&rat_int(3)), SigmaInfinity),
        ];
        for (c, expected) in cases {
            assert_eq!(classify_character(&c).unwrap(), expected, "χ = {c}");
        }
        // λ + 2ρ from the worked examples.
        assert_eq!(
            classify_character(&(&lambda() + &rho().scale(&rat_int(2)))).unwrap(),
            Sigma1NotSigma2
        );
        // χ₀² − 7χ₁³.
        assert_eq!(
            classify_character(&(&Character::chi02() - &Character::chi13().scale(&rat_int(7))))
                .unwrap(),
            SigmaInfinity
        );
        assert!(matches!(
            classify_character(&Character::zero()),
            Err(Error::ZeroCharacter)
        ));
    }

    #[test]
    fn kernel_lattice_examples() {
        // λ: kernel is the right-hand coordinate plane.
        let l = kernel_lattice(&Character::lambda());
        assert_eq!(l.generators, vec![[0, 0, 1, 0], [0, 0, 0, 1]]);

        // χ₀²: kernel drops only the first coordinate.
        let l = kernel_lattice(&Character::chi02());
        assert_eq!(
            l.generators,
            vec![[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        );

        // Zero character: all of Z⁴.
        let l = kernel_lattice(&Character::zero());
        assert_eq!(
            l.generators,
            vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        );

        // λ + ρ: the anti-diagonal plane (up to sign of the basis).
        let l = kernel_lattice(&(&Character::lambda() + &Character::rho()));
        assert_eq!(l.generators, vec![[-1, 0, 1, 0], [0, -1, 0, 1]]);
    }

    /// χ evaluated on a lattice vector must vanish for kernel generators.
    #[test]
    fn kernel_lattice_annihilates() {
        let chis = [
            Character::lambda(),
            Character::rho(),
            &Character::lambda() + &Character::rho(),
            chi(1, 0, 0, -7, (0, 1), (0, 1)),
            chi(2, -3, 5, 1, (1, 2), (-4, 3)),
        ];
        for c in &chis {
            for v in &kernel_lattice(c).generators {
                let value = c.eval_ab(&crate::stein::AbVector::new(v[0], v[1], v[2], v[3]));
                assert!(value.is_zero(), "χ = {c}, v = {v:?}, χ(v) = {value}");
            }
        }
    }

    #[test]
    fn finiteness_full_lattice() {
        let full = LatticeSubgroup::new(vec![
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ]);
        let rep = normal_subgroup_finiteness(&full);
        assert!(rep.fg && rep.fp && rep.f_infinity);
        assert!(rep.obstruction.is_none());
    }

    #[test]
    fn finiteness_kernel_of_lambda() {
        let l = LatticeSubgroup::new(vec![[0, 0, 1, 0], [0, 0, 0, 1]]);
        let rep = normal_subgroup_finiteness(&l);
        assert!(!rep.fg && !rep.fp && !rep.f_infinity);
        // λ itself annihilates: obstruction (1, 0).
        assert_eq!(
            rep.obstruction,
            Some(Obstruction::Rational {
                a: rat_int(1),
                b: rat_int(0)
            })
        );
    }

    #[test]
    fn finiteness_fg_not_fp() {
        let l = LatticeSubgroup::new(vec![[1, 0, -1, 0], [0, 1, 0, -1]]);
        let rep = normal_subgroup_finiteness(&l);
        assert!(rep.fg);
        assert!(!rep.fp && !rep.f_infinity);
        // λ + ρ annihilates: obstruction (1, 1).
        assert_eq!(
            rep.obstruction,
            Some(Obstruction::Rational {
                a: rat_int(1),
                b: rat_int(1)
            })
        );
    }

    #[test]
    fn finiteness_irrational_obstruction() {
        // L = span{(1, 0, 0, −1)}: the only annihilating ray is
        // a·ln2 = b·ln3, i.e. (a, b) ∝ (ln3, ln2) — irrational. fg holds,
        // fp fails — a rational-only feasibility test would wrongly pass it.
        let l = LatticeSubgroup::new(vec![[1, 0, 0, -1]]);
        let rep = normal_subgroup_finiteness(&l);
        assert!(rep.fg);
        assert!(!rep.fp && !rep.f_infinity);
        assert_eq!(
            rep.obstruction,
            Some(Obstruction::LogLinear {
                a: [0, 1], // ln3
                b: [1, 0], // ln2
            })
        );
    }

    #[test]
    fn finiteness_trivial_lattice() {
        let rep = normal_subgroup_finiteness(&LatticeSubgroup::new(vec![]));
        assert!(!rep.fg && !rep.fp);
        assert!(rep.obstruction.is_some());
        // Zero generators count as absent.
        let rep2 = normal_subgroup_finiteness(&LatticeSubgroup::new(vec![[0, 0, 0, 0]]));
        assert_eq!(rep, rep2);
    }

    #[test]
    fn finiteness_one_sided_lattices() {
        // ρ vanishes: not fg, obstruction (0, 1).
        let l = LatticeSubgroup::new(vec![[1, 0, 0, 0], [0, 1, 0, 0]]);
        let rep = normal_subgroup_finiteness(&l);
        assert!(!rep.fg && !rep.fp);
        assert_eq!(
            rep.obstruction,
            Some(Obstruction::Rational {
                a: rat_int(0),
                b: rat_int(1)
            })
        );
    }

    #[test]
    fn finiteness_same_signs_is_fp() {
        // Single generator with λ, ρ both positive: the annihilating line
        // has a < 0 < b or b < 0 < a only — misses the quadrant → fp.
        let l = LatticeSubgroup::new(vec![[1, 0, 1, 0]]);
        let rep = normal_subgroup_finiteness(&l);
        assert!(rep.fg && rep.fp && rep.f_infinity);

        // Both negative works the same way.
        let l = LatticeSubgroup::new(vec![[-1, 0, 0, -1]]);
        assert!(normal_subgroup_finiteness(&l).fp);

        // Opposite signs: the line passes through the open quadrant.
        let l = LatticeSubgroup::new(vec![[1, 0, 0, -1]]);
        assert!(!normal_subgroup_finiteness(&l).fp);
    }

    #[test]
    fn kernel_finiteness_examples() {
        // λ: not even finitely generated.
        let rep = kernel_finiteness(&Character::lambda()).unwrap();
        assert!(!rep.fg);

        // λ + ρ: fg but not fp, obstruction (1, 1).
        let rep = kernel_finiteness(&(&Character::lambda() + &Character::rho())).unwrap();
        assert!(rep.fg && !rep.fp);
        assert_eq!(
            rep.obstruction,
            Some(Obstruction::Rational {
                a: rat_int(1),
                b: rat_int(1)
            })
        );

        // Discrete characters: always F_∞.
        for c in [
            Character::chi02(),
            chi(3, -2, 5, 7, (0, 1), (0, 1)),
            chi(0, 0, 1, 1, (0, 1), (0, 1)),
        ] {
            let rep = kernel_finiteness(&c).unwrap();
            assert!(rep.f_infinity, "χ = {c}");
        }

        assert!(matches!(
            kernel_finiteness(&Character::zero()),
            Err(Error::ZeroCharacter)
        ));
    }

    #[test]
    fn normal_closure_examples() {
        let f2 = crate::builders::special_element(1, 0, &rat(1, 2)).unwrap();
        // Single element with ab = e1: ρ vanishes on the closure → not fg.
        let rep = normal_closure_classification(std::slice::from_ref(&f2)).unwrap();
        assert!(!rep.fg);

        // Adding the right-based mirror makes both sides nonzero and the
        // constraints independent → F_∞.
        let g2 = crate::builders::special_element_right(1, 0, &rat(1, 2)).unwrap();
        let rep = normal_closure_classification(&[f2.clone(), g2]).unwrap();
        assert!(rep.fg && rep.fp && rep.f_infinity);

        // A commutator has zero ab-vector: closure lattice {0} → not fg.
        let d = crate::builders::special_element(0, 1, &rat(1, 2)).unwrap();
        let comm = f2
            .compose(&d)
            .unwrap()
            .compose(&f2.invert())
            .unwrap()
            .compose(&d.invert())
            .unwrap();
        assert!(!comm.is_identity());
        let rep = normal_closure_classification(&[comm]).unwrap();
        assert!(!rep.fg);

        // All-identity input is rejected.
        let id = PLMap::identity(rat_int(0), rat_int(1)).unwrap();
        assert!(matches!(
            normal_closure_classification(&[id]),
            Err(Error::AllIdentity)
        ));
        assert!(matches!(
            normal_closure_classification(&[]),
            Err(Error::AllIdentity)
        ));
    }

    #[test]
    fn hnn_certificates_for_named_pairs() {
        for (a, b) in [(1, 0), (1, 1)] {
            let cert = verify_hnn(a, b, 20).unwrap();
            assert!(cert.all_true(), "({a}, {b}): {cert:?}");
        }
        assert!(matches!(
            verify_hnn(2, 4, 5),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn hnn_certificates_all_coprime_pairs() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                if (a, b) == (0, 0) || a.unsigned_abs().gcd(&b.unsigned_abs()) != 1 {
                    continue;
                }
                let cert = verify_hnn(a, b, 5).unwrap();
                assert!(cert.all_true(), "({a}, {b}): {cert:?}");
            }
        }
    }

    #[test]
    fn hnn_certificate_is_seed_stable() {
        let c1 = verify_hnn_seeded(1, 0, 10, 42).unwrap();
        let c2 = verify_hnn_seeded(1, 0, 10, 42).unwrap();
        assert_eq!(
            serde_json::to_string(&c1).unwrap(),
            serde_json::to_string(&c2).unwrap()
        );
    }

    #[test]
    fn finiteness_report_serialization() {
        let rep = normal_subgroup_finiteness(&LatticeSubgroup::new(vec![[1, 0, -1, 0]]));
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(
            json,
            r#"{"finitely_generated":true,"finitely_presented":false,"f_infinity":false,"obstruction":{"kind":"rational","a":"1","b":"1"}}"#
        );

        let rep = normal_subgroup_finiteness(&LatticeSubgroup::new(vec![[1, 0, 0, -1]]));
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains(r#""kind":"log_linear","a":[0,1],"b":[1,0]"#), "{json}");
    }

    fn arb_character() -> impl Strategy<Value = Character> {
        let coeff = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d));
        [coeff.clone(), coeff.clone(), coeff.clone(), coeff.clone(), coeff.clone(), coeff]
            .prop_map(|[q1, q2, q3, q4, s, t]| Character::new(q1, q2, q3, q4, s, t))
    }

    fn arb_lattice() -> impl Strategy<Value = LatticeSubgroup> {
        proptest::collection::vec(
            [-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5],
            0..4,
        )
        .prop_map(|gens| LatticeSubgroup::new(gens.into_iter().collect()))
    }

    proptest! {
        #[test]
        fn classification_is_scaling_invariant(
            c in arb_character(),
            num in 1i64..=20,
            den in 1i64..=20,
        ) {
            prop_assume!(!c.is_zero());
            let scaled = c.scale(&rat(num, den));
            prop_assert_eq!(
                classify_character(&c).unwrap(),
                classify_character(&scaled).unwrap()
            );
        }

        #[test]
        fn discrete_characters_sit_in_the_top_tier(c in arb_character()) {
            prop_assume!(!c.is_zero());
            if crate::stein::is_discrete(&c).unwrap().is_some() {
                prop_assert_eq!(classify_character(&c).unwrap(), SigmaTier::SigmaInfinity);
                prop_assert!(kernel_finiteness(&c).unwrap().f_infinity);
            }
        }

        #[test]
        fn finiteness_chain_holds(l in arb_lattice()) {
            let rep = normal_subgroup_finiteness(&l);
            prop_assert!(!rep.f_infinity || rep.fp);
            prop_assert!(!rep.fp || rep.fg);
            prop_assert_eq!(rep.fp, rep.f_infinity);
            // Obstruction present exactly when fp fails.
            prop_assert_eq!(rep.obstruction.is_some(), !rep.fp);
        }

        #[test]
        fn fg_matches_direct_annihilator_test(l in arb_lattice()) {
            let rep = normal_subgroup_finiteness(&l);
            let lambda_nonzero = l.generators.iter().any(|v| (v[0], v[1]) != (0, 0));
            let rho_nonzero = l.generators.iter().any(|v| (v[2], v[3]) != (0, 0));
            prop_assert_eq!(rep.fg, lambda_nonzero && rho_nonzero);
        }

        #[test]
        fn kernel_lattice_generators_annihilate(c in arb_character()) {
            for v in &kernel_lattice(&c).generators {
                let value = c.eval_ab(&crate::stein::AbVector::new(v[0], v[1], v[2], v[3]));
                prop_assert!(value.is_zero());
            }
        }

        #[test]
        fn rational_obstructions_annihilate(l in arb_lattice()) {
            let rep = normal_subgroup_finiteness(&l);
            if let Some(Obstruction::Rational { a, b }) = rep.obstruction {
                prop_assert!(a >= rat_int(0) && b >= rat_int(0));
                prop_assert!(!(a.is_zero() && b.is_zero()));
                // aλ + bρ really vanishes on every generator.
                let chi = &Character::lambda().scale(&a) + &Character::rho().scale(&b);
                for v in &l.generators {
                    let value = chi.eval_ab(&crate::stein::AbVector::new(v[0], v[1], v[2], v[3]));
                    prop_assert!(value.is_zero(), "gen {v:?}");
                }
            }
        }
    }
}

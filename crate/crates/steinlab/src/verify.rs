//! Seeded verification suites: batch re-checks of the builders' and
//! classifiers' postconditions, reported as structured pass/fail JSON.
//!
//! Every suite is deterministic under a fixed seed: per-case randomness is
//! derived from (seed, case index) alone, and cases are independent, so a
//! run produces byte-identical reports whether it executes sequentially or
//! on a thread pool.

use crate::builders::{
    basis_certificate, conjugator_half, special_certificate, special_element,
    special_element_right, witness_basis, Certificate, Check,
};
use crate::classify::verify_hnn_seeded;
use crate::error::Error;
use crate::exactnum::{rat, rat_int};
use crate::exec::run_cases;
use crate::plmap::{conjugate, PLMap};
use crate::stein::{char_eval, Character, GroupSpec};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Which suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Character/witness duality: the four witness elements and the four
    /// basis characters pair off as an identity matrix.
    Basis,
    /// Special-element postconditions over the whole builder grid.
    Lemma32,
    /// The half-interval conjugator transports random elements into
    /// elements supported in [1/2, 1].
    Lemma24,
    /// HNN certificates for every coprime exponent pair in [−6, 6]².
    Lemma41,
    /// All of the above, in the order listed.
    All,
}

/// Knobs shared by all suites. `samples` controls per-case sampling where
/// a suite draws random elements; `parallel` requests the thread pool
/// (ignored when the crate is built without the `parallel` feature).
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            samples: 20,
            parallel: true,
        }
    }
}

/// One verified case: a named object and the checks run against it.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub ok: bool,
    pub checks: Vec<Check>,
}

impl CaseReport {
    fn from_certificate(name: String, cert: Certificate) -> Self {
        CaseReport {
            name,
            ok: cert.ok,
            checks: cert.checks,
        }
    }

    fn from_checks(name: String, checks: Vec<Check>) -> Self {
        Self::from_certificate(name, Certificate::from_checks(checks))
    }

    fn build_failure(name: String, err: Error) -> Self {
        Self::from_checks(name, vec![Check::fail("builds", err.to_string())])
    }
}

/// All cases of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub ok: bool,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    fn from_cases(suite: &str, cases: Vec<CaseReport>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ok: cases.iter().all(|c| c.ok),
            cases,
        }
    }
}

/// Top-level result of a `verify` invocation.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub suites: Vec<SuiteReport>,
}

/// Run one suite (or all of them) under the given options.
pub fn run(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let suites = match suite {
        Suite::Basis => vec![basis_suite(opts)],
        Suite::Lemma32 => vec![lemma32_suite(opts)],
        Suite::Lemma24 => vec![lemma24_suite(opts)],
        Suite::Lemma41 => vec![lemma41_suite(opts)],
        Suite::All => vec![
            basis_suite(opts),
            lemma32_suite(opts),
            lemma24_suite(opts),
            lemma41_suite(opts),
        ],
    };
    VerifyReport {
        ok: suites.iter().all(|s| s.ok),
        suites,
    }
}

/// splitmix64-style mix of (seed, suite tag, case index) into a per-case
/// stream seed, so cases are decorrelated and order-independent.
fn case_seed(seed: u64, tag: u64, index: u64) -> u64 {
    let mut z = seed
        ^ tag.rotate_left(17)
        ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const TAG_LEMMA24: u64 = 0x24C4;
const TAG_LEMMA41: u64 = 0x41C4;

/// Witness basis and character duality (no randomness involved).
pub fn basis_suite(_opts: &VerifyOptions) -> SuiteReport {
    let basis = witness_basis();
    let mut cases = vec![CaseReport::from_certificate(
        "witness_basis".to_string(),
        basis_certificate(&basis),
    )];

    let chars = [
        ("chi02", Character::chi02()),
        ("chi03", Character::chi03()),
        ("chi12", Character::chi12()),
        ("chi13", Character::chi13()),
    ];
    let mut checks = Vec::new();
    for (i, (chi_name, chi)) in chars.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            let value = char_eval(chi, w).expect("witnesses are members");
            let want_nonzero = i == j;
            let name = format!(
                "{chi_name}(w{}) {}",
                j + 1,
                if want_nonzero { "nonzero" } else { "zero" }
            );
            checks.push(Check::from_bool(&name, value.is_zero() != want_nonzero, || {
                format!("value = {value}")
            }));
        }
    }
    cases.push(CaseReport::from_checks("character_duality".to_string(), checks));

    SuiteReport::from_cases("basis", cases)
}

/// Special-element postconditions for every exponent pair in [−4, 4]²
/// except (0, 0) and every anchor in {1/4, 1/2, 2/3, 17/24}.
pub fn lemma32_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut pairs = Vec::new();
    for p in -4i64..=4 {
        for q in -4i64..=4 {
            if (p, q) != (0, 0) {
                pairs.push((p, q));
            }
        }
    }
    let anchors = [rat(1, 4), rat(1, 2), rat(2, 3), rat(17, 24)];
    let n = pairs.len() * anchors.len();
    let cases = run_cases(n, opts.parallel, |i| {
        let (p, q) = pairs[i / anchors.len()];
        let r = &anchors[i % anchors.len()];
        let name = format!("special p={p} q={q} r={r}");
        match special_element(p, q, r) {
            Ok(f) => CaseReport::from_certificate(name, special_certificate(p, q, r, &f)),
            Err(e) => CaseReport::build_failure(name, e),
        }
    });
    SuiteReport::from_cases("lemma32", cases)
}

/// A pseudorandom element of F_{2,3}[0, 1]: a word of length ≤ 8 in a
/// fixed pool of builder elements and their inverses.
fn random_element(rng: &mut ChaCha8Rng, pool: &[PLMap]) -> PLMap {
    let len = rng.gen_range(1..=8);
    let mut word = PLMap::identity(rat_int(0), rat_int(1)).expect("unit interval");
    for _ in 0..len {
        let g = &pool[rng.gen_range(0..pool.len())];
        let factor = if rng.gen_bool(0.5) { g.invert() } else { g.clone() };
        word = word.compose(&factor).expect("self-maps compose");
    }
    word
}

/// The fixed generator pool used by the random-element sampler.
fn element_pool() -> Vec<PLMap> {
    vec![
        special_element(1, 0, &rat(1, 2)).expect("valid builder input"),
        special_element(0, 1, &rat(1, 2)).expect("valid builder input"),
        special_element(1, 0, &rat(1, 4)).expect("valid builder input"),
        special_element(2, -1, &rat(1, 2)).expect("valid builder input"),
        special_element_right(1, 0, &rat(1, 2)).expect("valid builder input"),
        special_element_right(0, 1, &rat(2, 3)).expect("valid builder input"),
    ]
}

/// Conjugation by the half-interval element sends `samples` random
/// elements of F_{2,3}[0, 1] (extended to [−1, 1]) to members supported
/// in [1/2, 1].
pub fn lemma24_suite(opts: &VerifyOptions) -> SuiteReport {
    let h = conjugator_half();
    let pool = element_pool();
    let spec_sym = GroupSpec::f23_on(rat_int(-1), rat_int(1)).expect("valid interval");
    let half = rat(1, 2);
    let one = rat_int(1);

    let cases = run_cases(opts.samples, opts.parallel, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(opts.seed, TAG_LEMMA24, i as u64));
        let g = random_element(&mut rng, &pool);
        let name = format!("transport sample {i}");
        let extended = g
            .extend(rat_int(-1), rat_int(1))
            .expect("extension from the unit interval");
        let moved = conjugate(&h, &extended).expect("conjugation on matching intervals");

        let membership = spec_sym.is_member(&moved).expect("intervals match");
        let member_check = Check::from_bool("member_f23_sym", membership.is_member, || {
            membership.diagnosis.clone().unwrap_or_default()
        });
        let supp = moved.support().expect("conjugates are self-maps");
        let support_check = Check::from_bool(
            "support_in_right_half",
            supp.contained_in(&half, &one),
            || format!("support = {supp}"),
        );
        CaseReport::from_checks(name, vec![member_check, support_check])
    });
    SuiteReport::from_cases("lemma24", cases)
}

/// Fully-true HNN certificates for every coprime (a, b) ∈ [−6, 6]².
pub fn lemma41_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut pairs = Vec::new();
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            if (a, b) != (0, 0) && a.unsigned_abs().gcd(&b.unsigned_abs()) == 1 {
                pairs.push((a, b));
            }
        }
    }
    let cases = run_cases(pairs.len(), opts.parallel, |i| {
        let (a, b) = pairs[i];
        let name = format!("hnn a={a} b={b}");
        let seed = case_seed(opts.seed, TAG_LEMMA41, i as u64);
        match verify_hnn_seeded(a, b, opts.samples, seed) {
            Ok(cert) => CaseReport::from_checks(
                name,
                vec![
                    Check::from_bool("chi_zero", cert.chi_zero, || "χ(t) ≠ 0".to_string()),
                    Check::from_bool("lambda_negative", cert.lambda_negative, || {
                        "λ(t) ≥ 0".to_string()
                    }),
                    Check::from_bool("base_mapped_in", cert.base_mapped_in, || {
                        "a sampled conjugate escaped [t⁻¹(1/2), 1]".to_string()
                    }),
                    Check::from_bool("intersection_trivial", cert.intersection_trivial, || {
                        "t(1/2) ≥ 1/2".to_string()
                    }),
                    Check::from_bool("proper", cert.proper, || {
                        "t⁻¹(1/2) ≤ 1/2 or no witness in the gap".to_string()
                    }),
                ],
            ),
            Err(e) => CaseReport::build_failure(name, e),
        }
    });
    SuiteReport::from_cases("lemma41", cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_opts() -> VerifyOptions {
        VerifyOptions {
            seed: 7,
            samples: 3,
            parallel: true,
        }
    }

    #[test]
    fn basis_suite_passes() {
        let report = basis_suite(&small_opts());
        assert!(report.ok, "{report:?}");
        assert_eq!(report.cases.len(), 2);
        // 1 certificate case + 16 duality checks.
        assert_eq!(report.cases[1].checks.len(), 16);
    }

    #[test]
    fn lemma32_suite_passes() {
        let report = lemma32_suite(&small_opts());
        assert!(report.ok);
        assert_eq!(report.cases.len(), 80 * 4);
    }

    #[test]
    fn lemma24_suite_passes() {
        let opts = VerifyOptions {
            samples: 10,
            ..small_opts()
        };
        let report = lemma24_suite(&opts);
        assert!(report.ok, "{report:?}");
        assert_eq!(report.cases.len(), 10);
    }

    #[test]
    fn lemma41_suite_passes() {
        let opts = VerifyOptions {
            samples: 2,
            ..small_opts()
        };
        let report = lemma41_suite(&opts);
        assert!(report.ok, "{report:?}");
        // Coprime pairs in [−6, 6]² — symmetric, and includes the axes.
        assert!(report.cases.iter().any(|c| c.name == "hnn a=1 b=0"));
        assert!(report.cases.iter().any(|c| c.name == "hnn a=-5 b=6"));
    }

    #[test]
    fn parallel_and_sequential_reports_are_identical() {
        let par = run(Suite::All, &VerifyOptions { seed: 7, samples: 3, parallel: true });
        let seq = run(Suite::All, &VerifyOptions { seed: 7, samples: 3, parallel: false });
        assert_eq!(
            serde_json::to_string(&par).unwrap(),
            serde_json::to_string(&seq).unwrap()
        );
        assert!(par.ok);
    }

    #[test]
    fn reports_are_seed_deterministic() {
        let a = run(Suite::Lemma24, &small_opts());
        let b = run(Suite::Lemma24, &small_opts());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        // A different seed draws different elements (the report text may
        // coincide only if every sampled case happens to look the same;
        // the sampled words differ, so sizes of diagnostics could match,
        // but the run must still pass).
        let c = run(
            Suite::Lemma24,
            &VerifyOptions {
                seed: 8,
                ..small_opts()
            },
        );
        assert!(c.ok);
    }

    #[test]
    fn single_suite_selection() {
        let report = run(Suite::Basis, &small_opts());
        assert_eq!(report.suites.len(), 1);
        assert_eq!(report.suites[0].suite, "basis");
        let report = run(Suite::All, &small_opts());
        assert_eq!(
            report.suites.iter().map(|s| s.suite.as_str()).collect::<Vec<_>>(),
            vec!["basis", "lemma32", "lemma24", "lemma41"]
        );
        assert!(report.ok);
    }
}

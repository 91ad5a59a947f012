//! The acceptance criteria, one function each, shared by the `selftest`
//! command and the `acceptance` test target.

use std::time::Instant;

use serde::Serialize;

use crate::arith;
use crate::block::{self, verify_converse_tilde};
use crate::characters::{has_cuspidal_lift, AddChar};
use crate::ellreg::verify_converse_ellreg;
use crate::fe;
use crate::gl2::{self, whittaker_space, FunctionModule, InducedModule, MatGroup};
use crate::instance::Instance;
use crate::search;

#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} ({:.1}s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn timed(id: u8, name: &'static str, run: impl FnOnce() -> (bool, String)) -> Criterion {
    let start = Instant::now();
    let (pass, detail) = run();
    Criterion {
        id,
        name,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub const SCAN_ELLS: [u64; 5] = [2, 3, 5, 7, 11];
pub const SCAN_Q_MAX: u64 = 23;
pub const COUNTEREXAMPLES: [(u64, u64); 8] = [(2, 5), (2, 17), (3, 7), (3, 19), (5, 11), (11, 23), (23, 47), (29, 59)];
pub const ORACLE_GRID: [(u64, u64); 8] = [(2, 3), (3, 2), (2, 5), (3, 5), (2, 7), (3, 7), (5, 3), (5, 7)];

fn scan_pairs() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for ell in SCAN_ELLS {
        for q in arith::primes_up_to(SCAN_Q_MAX) {
            if q != ell {
                out.push((ell, q));
            }
        }
    }
    out
}

fn inst(ell: u64, q: u64) -> Instance {
    Instance::new(ell, q).expect("acceptance instances are valid")
}

pub fn counterexamples() -> Criterion {
    timed(1, "counterexample reproduction", || {
        let mut wrong = Vec::new();
        let mut found = Vec::new();
        let mut alt_mismatch = Vec::new();
        let mut pairs = scan_pairs();
        pairs.extend([(23, 47), (29, 59)]);
        for (ell, q) in pairs {
            let expected = COUNTEREXAMPLES.contains(&(ell, q));
            let r = search::search(ell, q, expected).expect("valid pair");
            if r.has_duplicates() != expected {
                wrong.push((ell, q));
            }
            if r.has_duplicates() {
                found.push(format!("({ell},{q}):{}", r.duplicates.len()));
            }
            if r.alternate_discrepancy() {
                alt_mismatch.push((ell, q));
            }
        }
        let pass = wrong.is_empty() && alt_mismatch.is_empty();
        (
            pass,
            format!(
                "duplicates at {}; mismatches {:?}; alternate-choice discrepancies {:?}",
                found.join(" "),
                wrong,
                alt_mismatch
            ),
        )
    })
}

pub fn conjecture() -> Criterion {
    timed(2, "conjecture consistency", || {
        let mut entries = Vec::new();
        for (ell, q) in scan_pairs() {
            let r = search::search(ell, q, false).expect("valid pair");
            entries.push((ell, q, r.has_duplicates()));
        }
        let bad: Vec<(u64, u64)> = entries
            .iter()
            .filter(|(ell, q, d)| *d && search::conjecture_exponent(*ell, *q).is_none())
            .map(|&(l, q, _)| (l, q))
            .collect();
        let predicted_clean: Vec<(u64, u64)> = entries
            .iter()
            .filter(|(ell, q, d)| !*d && search::conjecture_exponent(*ell, *q).is_some())
            .map(|&(l, q, _)| (l, q))
            .collect();
        (
            bad.is_empty(),
            format!(
                "{} pairs; duplicates off q = 2l^i+1: {:?}; q = 2l^i+1 without duplicates: {:?}",
                entries.len(),
                bad,
                predicted_clean
            ),
        )
    })
}

pub fn oracle_equivalence() -> Criterion {
    timed(3, "oracle equivalence", || {
        let mut pass = true;
        let mut parts = Vec::new();
        for (ell, q) in ORACLE_GRID {
            let r = fe::oracle_grid(&inst(ell, q));
            pass &= r.all_agree();
            parts.push(format!(
                "({ell},{q}) {}/{} agree{}{}",
                r.agreements(),
                r.entries.len(),
                if r.no_model.is_empty() {
                    String::new()
                } else {
                    format!(", {} without model", r.no_model.len())
                },
                if r.dual_identity_holds() {
                    ", oracle = -omega(-1)nu(-1)gauss(-i,-j) everywhere"
                } else {
                    ", dual identity fails"
                }
            ));
        }
        (pass, parts.join("; "))
    })
}

pub fn rank_one() -> Criterion {
    timed(4, "rank-one bilinear space", || {
        let mut pass = true;
        let mut parts = Vec::new();
        for (ell, q) in [(2, 3), (2, 5), (3, 5), (3, 7)] {
            let inst = inst(ell, q);
            let group = MatGroup::gl2(inst.tower());
            let ind = whittaker_space(&inst, &group, AddChar::PSI);
            let mut checked = 0;
            let mut bad = 0;
            for (_, m) in fe::class_models(&inst, &ind, AddChar::PSI) {
                let Ok(m) = m else { continue };
                for j in 0..inst.n_prime() {
                    checked += 1;
                    if fe::bil_dim_21(&inst, &m.module, j) != 1 || !fe::detect_exceptional_21(&inst, &m.module, j).is_empty() {
                        bad += 1;
                    }
                }
            }
            pass &= bad == 0 && checked > 0;
            parts.push(format!("({ell},{q}) {checked} pairs, {bad} bad"));
        }
        (pass, parts.join("; "))
    })
}

pub fn fe_identities() -> Criterion {
    timed(5, "functional-equation identities", || {
        let mut pass = true;
        let mut parts = Vec::new();
        for (ell, q) in ORACLE_GRID {
            let inst = inst(ell, q);
            let d = fe::duality_check(&inst);
            let g = fe::gauss_duality_check(&inst).expect("valid pair");
            let b = fe::base_change_check(&inst).expect("valid pair");
            let ok = d.holds() && g.holds() && b.holds();
            pass &= ok;
            if !ok {
                parts.push(format!(
                    "({ell},{q}) duality {:?} gauss duality {:?} base change {:?}",
                    d.failures, g.failures, b.failures
                ));
            }
        }
        let mut fourier = Vec::new();
        for (ell, q) in [(3, 2), (2, 3), (2, 5)] {
            let inst = inst(ell, q);
            for n in [1, 2] {
                if !fe::fourier_involution_holds(&inst, n) {
                    fourier.push((q, n));
                }
            }
        }
        pass &= fourier.is_empty();
        parts.push(format!(
            "duality, gauss duality and base change on {} instances; Fourier involution failures {:?}",
            ORACLE_GRID.len(),
            fourier
        ));
        (pass, parts.join("; "))
    })
}

pub fn new_gamma_separation() -> Criterion {
    timed(6, "new gamma factor separates", || {
        let mut pass = true;
        let mut parts = Vec::new();
        for (ell, q) in [(2, 5), (3, 7)] {
            let r = verify_converse_tilde(&inst(ell, q), true).expect("cuspidal models exist");
            let m = r.model.as_ref().expect("requested");
            let ok = !r.norm_fiber.naive_collisions.is_empty() && r.norm_fiber.holds() && m.holds();
            pass &= ok;
            parts.push(format!(
                "({ell},{q}) naive collisions {:?}, unseparated {:?}/{:?}, augmentation {}/{}, units {}/{}, FE over R {:?}",
                r.norm_fiber.naive_collisions,
                r.norm_fiber.unseparated,
                m.unseparated,
                r.norm_fiber.augmentation_ok,
                m.augmentation_ok,
                r.norm_fiber.units_ok,
                m.units_ok,
                m.fe_ok
            ));
        }
        (pass, parts.join("; "))
    })
}

pub fn ell_regular_separation() -> Criterion {
    timed(7, "l-regular gamma factor", || {
        let mut pass = true;
        let mut parts = Vec::new();
        for (ell, q) in [(2, 5), (3, 7)] {
            let r = verify_converse_ellreg(&inst(ell, q), true).expect("cuspidal models exist");
            let c = r.checks.as_ref().expect("requested");
            let bil_ok = c.bil_dims.iter().all(|&d| d == 1);
            pass &= r.separates() && bil_ok;
            parts.push(format!(
                "({ell},{q}) naive collisions {:?}, unseparated {:?}/{:?}, bil dims {:?}, model dims {:?} (n' = {}), FE over model {}",
                r.naive_collisions,
                r.norm_fiber.unseparated,
                r.model.as_ref().map(|m| m.unseparated.clone()).unwrap_or_default(),
                dedup(&c.bil_dims),
                dedup(&c.dims),
                r.context.order(),
                if c.fe_ok { "consistent" } else { "inconsistent" }
            ));
        }
        let mut naive_bad = Vec::new();
        for (ell, q) in ORACLE_GRID.into_iter().filter(|(l, q)| (q - 1) % l != 0) {
            let r = verify_converse_ellreg(&inst(ell, q), false).expect("valid pair");
            if r.norm_fiber.matches_naive != Some(true) {
                naive_bad.push((ell, q));
            }
        }
        pass &= naive_bad.is_empty();
        parts.push(format!("equal to naive gamma when l does not divide q-1, failures {naive_bad:?}"));
        (pass, parts.join("; "))
    })
}

fn dedup(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn structural() -> Criterion {
    timed(8, "structural invariants", || {
        let mut bad = Vec::new();
        let mut envelopes = 0;
        for (ell, q) in scan_pairs() {
            let inst = inst(ell, q);
            for j in 0..inst.n_prime() {
                envelopes += 1;
                if !block::projective_envelope(&inst, j).holds() {
                    bad.push(format!("envelope ({ell},{q},{j})"));
                }
            }
            if !block::completeness_check_g1(&inst) {
                bad.push(format!("completeness ({ell},{q})"));
            }
        }
        let mut models = 0;
        for ell in [2u64, 3, 5, 7] {
            for q in [2u64, 3, 4, 5, 7] {
                if q % ell == 0 {
                    continue;
                }
                let inst = inst(ell, q);
                let group = MatGroup::gl2(inst.tower());
                let ind = whittaker_space(&inst, &group, AddChar::PSI);
                for (i, m) in fe::class_models(&inst, &ind, AddChar::PSI) {
                    models += 1;
                    if m.is_ok() != has_cuspidal_lift(i, q, inst.m_prime(), ell) {
                        bad.push(format!("model ({ell},{q},{i})"));
                    }
                    if let Ok(m) = m {
                        if !gl2::is_cuspidal(&inst, &m.module) {
                            bad.push(format!("cuspidality ({ell},{q},{i})"));
                        }
                    }
                }
                let f = inst.field();
                let borel = InducedModule::new(&group, f, |h| h[2] == 0, |_| f.one());
                if gl2::is_cuspidal(&inst, &FunctionModule::full(&borel)) {
                    bad.push(format!("principal series ({ell},{q})"));
                }
            }
        }
        (
            bad.is_empty(),
            format!("{envelopes} envelopes and completeness on {} pairs, {models} Whittaker models; failures {bad:?}", scan_pairs().len()),
        )
    })
}

pub fn run_all() -> Vec<Criterion> {
    vec![
        counterexamples(),
        conjecture(),
        oracle_equivalence(),
        rank_one(),
        fe_identities(),
        new_gamma_separation(),
        ell_regular_separation(),
        structural(),
    ]
}

//! Multiplicative characters `nu_i` of `F_{q^2}^×` and `omega_j` of `F_q^×`,
//! the additive character `psi`, and bookkeeping for conjugation classes of
//! exponents.
//!
//! Characters are exponents against the active generator. Values are kept as
//! exponents of the anchor root `zeta_L` until a field element is needed.

use serde::Serialize;

use crate::field::Fe;
use crate::instance::Instance;

pub use crate::arith::ell_regular_part;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Group {
    #[serde(rename = "Fq2*")]
    Fq2,
    #[serde(rename = "Fq*")]
    Fq,
}

/// `g^k -> zeta^{i k}` on a cyclic group; for `Fq*` the generator is
/// `g1 = w^{q+1}` and `zeta` has order `n'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MultChar {
    pub group: Group,
    pub exponent: u64,
    pub m_prime: u64,
}

impl MultChar {
    /// `nu_i` on `F_{q^2}^×`.
    pub fn nu(inst: &Instance, i: u64) -> MultChar {
        MultChar {
            group: Group::Fq2,
            exponent: i % inst.m_prime(),
            m_prime: inst.m_prime(),
        }
    }

    /// `omega_j` on `F_q^×`.
    pub fn omega(inst: &Instance, j: u64) -> MultChar {
        MultChar {
            group: Group::Fq,
            exponent: j % inst.n_prime(),
            m_prime: inst.n_prime(),
        }
    }

    pub fn inverse(self) -> MultChar {
        MultChar {
            exponent: (self.m_prime - self.exponent) % self.m_prime,
            ..self
        }
    }

    /// Exponent of `zeta_{m'}` (of `F_{q^2}`) for the value at `w^k`; for
    /// `Fq*` characters `k` must be a multiple of `q+1`.
    pub fn exp_at_w_power(&self, inst: &Instance, k: u64) -> u64 {
        let k = inst.w_log(k);
        match self.group {
            Group::Fq2 => self.exponent * (k % inst.m_prime()) % inst.m_prime(),
            Group::Fq => {
                let q1 = inst.q() + 1;
                debug_assert!(k % q1 == 0);
                let scale = inst.m_prime() / inst.n_prime();
                self.exponent * scale % inst.m_prime() * ((k / q1) % inst.n_prime()) % inst.m_prime()
            }
        }
    }

    /// Exponent of `zeta_L` for the value at the `F_q` label `x`.
    pub fn exp_at_label(&self, inst: &Instance, x: u32) -> u64 {
        let k = inst.tower().dlog_ext_of_label(x);
        inst.exp_m(self.exp_at_w_power(inst, k))
    }

    /// Value at `w^k` (or at an `F_q` element given by its `w`-exponent).
    pub fn eval_w_power(&self, inst: &Instance, k: u64) -> Fe {
        inst.root_power(inst.exp_m(self.exp_at_w_power(inst, k)))
    }

    /// Value at a nonzero element of `F_{q^2}`; `None` at zero.
    pub fn eval(&self, inst: &Instance, x: &Fe) -> Option<Fe> {
        let k = inst.tower().ext().dlog(x)?;
        Some(self.eval_w_power(inst, k))
    }

    /// Value at a nonzero `F_q` label.
    pub fn eval_label(&self, inst: &Instance, x: u32) -> Option<Fe> {
        (x != 0).then(|| inst.root_power(self.exp_at_label(inst, x)))
    }
}

/// `psi(a) = zeta_p^{s Tr(a)}` with `Tr` the absolute trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AddChar {
    /// `+1` for the fixed `psi`, `-1` for `psi^{-1}`.
    pub sign: i8,
}

impl AddChar {
    pub const PSI: AddChar = AddChar { sign: 1 };

    pub fn inverse(self) -> AddChar {
        AddChar { sign: -self.sign }
    }

    pub fn exp(&self, inst: &Instance, a: u32) -> u64 {
        let c = inst.exp_psi(a);
        if self.sign > 0 {
            c
        } else {
            (inst.big_l() - c) % inst.big_l()
        }
    }

    pub fn eval(&self, inst: &Instance, a: u32) -> Fe {
        inst.root_power(self.exp(inst, a))
    }

    /// All values, indexed by label.
    pub fn table(&self, inst: &Instance) -> Vec<Fe> {
        (0..inst.q() as u32).map(|a| self.eval(inst, a)).collect()
    }
}

pub fn conjugate_exponent(i: u64, q: u64, m_prime: u64) -> u64 {
    (q % m_prime) * (i % m_prime) % m_prime
}

pub fn is_regular(i: u64, q: u64, m_prime: u64) -> bool {
    i % m_prime != conjugate_exponent(i, q, m_prime)
}

pub fn class_representative(i: u64, q: u64, m_prime: u64) -> u64 {
    (i % m_prime).min(conjugate_exponent(i, q, m_prime))
}

/// Whether the class of `nu_i` is the reduction of a cuspidal representation
/// in characteristic zero: `nu_i` regular, or `l | q+1` so that a regular
/// lift with nontrivial `l`-part exists.
pub fn has_cuspidal_lift(i: u64, q: u64, m_prime: u64, ell: u64) -> bool {
    is_regular(i, q, m_prime) || (q + 1) % ell == 0
}

/// Class representatives of `[0, m')` under `i ~ q i`, in increasing order.
pub fn class_representatives(q: u64, m_prime: u64) -> Vec<u64> {
    (0..m_prime)
        .filter(|&i| class_representative(i, q, m_prime) == i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use proptest::prelude::*;

    #[test]
    fn conjugation_examples() {
        assert_eq!(conjugate_exponent(1, 5, 3), 2);
        assert!(is_regular(1, 5, 3));
        assert_eq!(class_representative(1, 5, 3), 1);
        assert!(!is_regular(0, 7, 16));
        assert_eq!(conjugate_exponent(3, 7, 16), 5);
        assert!(is_regular(3, 7, 16));
        assert_eq!(class_representatives(5, 3), vec![0, 1]);
        assert_eq!(class_representatives(7, 16).len(), 9);
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 17, 19, 23]),
                                         ell in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
                                         i in 0u64..10_000) {
            let mp = ell_regular_part(q * q - 1, ell);
            let i = i % mp;
            prop_assert_eq!(conjugate_exponent(conjugate_exponent(i, q, mp), q, mp), i);
        }
    }

    #[test]
    fn nu_values() {
        let inst = Instance::new(3, 7).unwrap();
        let nu0 = MultChar::nu(&inst, 0);
        let nu1 = MultChar::nu(&inst, 1);
        let f = inst.field();
        for k in 0..inst.m() {
            assert!(f.is_one(&nu0.eval_w_power(&inst, k)));
        }
        assert_eq!(nu1.eval(&inst, inst.tower().w()).unwrap(), inst.zeta_m());
        assert!(nu1.eval(&inst, &inst.tower().ext().zero()).is_none());
    }

    #[test]
    fn characters_are_homomorphisms_and_distinct() {
        for (ell, q) in [(2, 3), (3, 5), (2, 5), (5, 7), (3, 4)] {
            let inst = Instance::new(ell, q).unwrap();
            let f = inst.field();
            let ext = inst.tower().ext();
            let m = inst.m();
            let mut seen = std::collections::HashSet::new();
            for i in 0..inst.m_prime() {
                let nu = MultChar::nu(&inst, i);
                let vals: Vec<Fe> = (0..m).map(|k| nu.eval_w_power(&inst, k)).collect();
                for a in 0..m {
                    for b in 0..m {
                        let x = ext.exp(a).unwrap();
                        let y = ext.exp(b).unwrap();
                        let xy = nu.eval(&inst, &ext.mul(&x, &y)).unwrap();
                        assert_eq!(xy, f.mul(&vals[a as usize], &vals[b as usize]));
                    }
                }
                assert!(seen.insert(vals), "nu_{i} repeated");
            }
        }
    }

    #[test]
    fn psi_is_a_nontrivial_additive_character() {
        for (ell, q) in [(3, 2), (2, 3), (2, 5), (3, 4), (2, 9)] {
            let inst = Instance::new(ell, q).unwrap();
            let f = inst.field();
            let t = inst.tower();
            let psi = AddChar::PSI;
            assert!(f.is_one(&psi.eval(&inst, 0)));
            let mut sum = f.zero();
            for a in 0..q as u32 {
                sum = f.add(&sum, &psi.eval(&inst, a));
                for b in 0..q as u32 {
                    assert_eq!(psi.eval(&inst, t.add(a, b)), f.mul(&psi.eval(&inst, a), &psi.eval(&inst, b)));
                }
            }
            assert!(f.is_zero(&sum));
            assert!((0..q as u32).any(|a| !f.is_one(&psi.eval(&inst, a))));
        }
        let inst = Instance::new(3, 2).unwrap();
        assert_eq!(AddChar::PSI.eval(&inst, 1), inst.field().from_int(2));
    }

    #[test]
    fn omega_matrix_has_full_rank() {
        // dual of linear independence of characters on the l-regular subgroup
        for (ell, q) in [(2, 5), (3, 7), (5, 7), (2, 7), (3, 13)] {
            let inst = Instance::new(ell, q).unwrap();
            let np = inst.n_prime();
            let r = inst.ell_part();
            let t = inst.tower();
            let m: linalg::Matrix = (0..np)
                .map(|j| {
                    let om = MultChar::omega(&inst, j);
                    (0..np).map(|k| om.eval_label(&inst, t.exp1(k * r)).unwrap()).collect()
                })
                .collect();
            assert_eq!(linalg::rank(inst.field(), &m), np as usize);
        }
    }
}
